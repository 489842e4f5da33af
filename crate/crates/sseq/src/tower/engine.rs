use serde::{Deserialize, Serialize};

use crate::fgab::{fiber_product, image_of, kernel, AdditiveRelation, Hom, Matrix, Quotient, RelationFunction, Submodule};

use super::datum::TowerDatum;
use super::TowerError;

/// The relation `D_r^{s,t} ⊆ π_s F(t) × π_{s−1} F(t+r−1)`: pairs
/// `(a, bdry(y))` with `y ∈ π_s X(t+r−2)` projecting to `incl(a)`.
pub fn d_relation(tower: &TowerDatum, r: u32, s: i64, t: i64) -> Result<AdditiveRelation, TowerError> {
    let (fp, bd) = lifting_data(tower, r, s, t)?;
    let ring = tower.ring;
    let values = bd.matrix.mul(&fp.right.matrix, &ring)?;
    let pairs = (0..fp.module.ngens())
        .map(|j| (fp.left.matrix.column(j), values.column(j)))
        .collect();
    Ok(AdditiveRelation::new(fp.left.target.clone(), bd.target.clone(), pairs)?)
}

/// The fiber product of `incl(s,t)` with the projection from level
/// `t+r−2`, and the boundary out of that level.
fn lifting_data(tower: &TowerDatum, r: u32, s: i64, t: i64) -> Result<(crate::fgab::FiberProduct, Hom), TowerError> {
    if r < 2 {
        return Err(TowerError::BadPage(r));
    }
    let top = t + r as i64 - 2;
    let chain = tower.proj_chain(s, top, t)?;
    let incl = tower.incl_map(s, t)?;
    let fp = fiber_product(&incl, &chain)?;
    let bd = tower.bdry_map(s, top)?;
    Ok((fp, bd))
}

/// `Z_r^{s,t}`: elements surviving to `E_{r+1}`, as a subgroup of `π_s F(t)`.
/// `Z_1` is everything.
pub fn cycles(tower: &TowerDatum, r: u32, s: i64, t: i64) -> Result<Submodule, TowerError> {
    if r == 0 {
        return Err(TowerError::BadPage(r));
    }
    if r == 1 {
        return Ok(Submodule::whole(&tower.fiber(s, t)?)?);
    }
    let (fp, bd) = lifting_data(tower, r, s, t)?;
    let silent = kernel(&bd.compose_after(&fp.right)?)?;
    Ok(image_of(&fp.left, &silent)?)
}

/// `B_r^{s,t}`: the image of the differentials `d_2, …, d_r` landing at
/// `(s,t)`, as a subgroup of `π_s F(t)`. `B_1` is zero.
pub fn boundaries(tower: &TowerDatum, r: u32, s: i64, t: i64) -> Result<Submodule, TowerError> {
    if r == 0 {
        return Err(TowerError::BadPage(r));
    }
    let here = tower.fiber(s, t)?;
    if r == 1 {
        return Ok(Submodule::zero(&here)?);
    }
    let rel = d_relation(tower, r, s + 1, t - r as i64 + 1)?;
    Ok(Submodule::generated(&here, &rel.right_gens())?)
}

/// `E_r^{s,t} = Z_{r−1} / B_{r−1}` for `r ≥ 2`.
#[derive(Clone, Debug)]
pub struct Page {
    pub r: u32,
    pub s: i64,
    pub t: i64,
    pub cycles: Submodule,
    pub boundaries: Submodule,
    pub quotient: Quotient,
}

impl Page {
    pub fn module(&self) -> &crate::fgab::FgModule {
        &self.quotient.module
    }
}

pub fn page(tower: &TowerDatum, r: u32, s: i64, t: i64) -> Result<Page, TowerError> {
    if r < 2 {
        return Err(TowerError::BadPage(r));
    }
    let z = cycles(tower, r - 1, s, t)?;
    let b = boundaries(tower, r - 1, s, t)?;
    let quotient = z.quotient_by(&b)?;
    Ok(Page { r, s, t, cycles: z, boundaries: b, quotient })
}

/// `d_r: E_r^{s,t} → E_r^{s−1,t+r−1}`, both as a relation function on
/// representatives and as a homomorphism of pages.
#[derive(Clone, Debug)]
pub struct Differential {
    pub function: RelationFunction,
    pub source: Page,
    pub target: Page,
    pub map: Hom,
}

impl Differential {
    /// Value of `d_r` on a representative in `π_s F(t)`, as a class of the
    /// target page.
    pub fn apply_rep(&self, a: &[i128]) -> Result<Vec<i128>, TowerError> {
        let n = self.function.lift(a)?;
        Ok(self.target.quotient.class_of(&n)?)
    }
}

pub fn differential(tower: &TowerDatum, r: u32, s: i64, t: i64) -> Result<Differential, TowerError> {
    let rel = d_relation(tower, r, s, t)?;
    let function = rel.function()?;
    let source = page(tower, r, s, t)?;
    let target = page(tower, r, s - 1, t + r as i64 - 1)?;
    let cols = source
        .quotient
        .reps
        .columns()
        .map(|a| {
            let n = function.lift(&a)?;
            target.quotient.class_of(&n)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let map = Hom::new(
        source.module().clone(),
        target.module().clone(),
        Matrix::from_columns(target.module().ngens(), &cols),
    )?;
    Ok(Differential { function, source, target, map })
}

/// Page index from which `E_r^{s,t}` no longer changes, available when both
/// flags are set.
pub fn stable_page(tower: &TowerDatum, t: i64) -> Option<u32> {
    if !(tower.grounded && tower.stable_above) {
        return None;
    }
    let (t0, t1) = tower.t_range;
    Some((t1 - t + 2).max(t - t0 + 2).max(2) as u32)
}

/// `E_∞^{s,t}`, computed as the stable page.
pub fn e_infinity_page(tower: &TowerDatum, s: i64, t: i64) -> Result<Page, TowerError> {
    let r = stable_page(tower, t)
        .ok_or_else(|| TowerError::ConvergenceUnverifiable("the tower is not marked grounded and stable above".into()))?;
    page(tower, r, s, t)
}

/// One entry of a page-by-page summary.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PageEntry {
    pub r: u32,
    pub s: i64,
    pub t: i64,
    pub factors: Vec<i128>,
    /// Matrix of `d_r` out of this position, when its target is in range.
    pub differential: Option<Vec<Vec<i128>>>,
}

/// Every page `E_2 … E_{r_max}` at positions where it is determined by the
/// window.
pub fn run_pages(tower: &TowerDatum, r_max: u32) -> Result<Vec<PageEntry>, TowerError> {
    let mut out = Vec::new();
    for r in 2..=r_max {
        for s in tower.s_range.0..=tower.s_range.1 {
            for t in tower.t_range.0..=tower.t_range.1 {
                let p = match page(tower, r, s, t) {
                    Ok(p) => p,
                    Err(TowerError::WindowExceeded { .. }) => continue,
                    Err(e) => return Err(e),
                };
                let differential = match differential(tower, r, s, t) {
                    Ok(d) => Some(d.map.matrix.to_nested()),
                    Err(TowerError::WindowExceeded { .. }) => None,
                    Err(e) => return Err(e),
                };
                out.push(PageEntry { r, s, t, factors: p.module().factors().to_vec(), differential });
            }
        }
    }
    Ok(out)
}
