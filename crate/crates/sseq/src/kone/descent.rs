use std::collections::BTreeMap;

use crate::fgab::{cokernel, kernel, Cokernel, DirectSum, Elem, FgModule, Hom, Matrix, Submodule};
use crate::tower::{two_stage_graded, LimitData, TowerDatum};

use super::KoneError;

/// One degree of a theory with an Adams operation: a module with named
/// generators and the action of `ψ^k`.
#[derive(Clone, Debug)]
pub struct Piece {
    pub module: FgModule,
    pub names: Vec<String>,
    pub psi: Hom,
}

impl Piece {
    pub fn zero(ring: crate::fgab::CoeffRing) -> Self {
        let module = FgModule::zero(ring);
        Piece { psi: Hom::identity(module.clone()), module, names: vec![] }
    }

    /// `ψ^k − 1`.
    pub fn psi_minus_one(&self) -> Result<Hom, KoneError> {
        Ok(self.psi.sub(&Hom::identity(self.module.clone()))?)
    }

    pub fn describe(&self, v: &[Elem]) -> String {
        combination(&self.names, v, &self.module)
    }
}

/// Which half of the split descent group a generator comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum Side {
    /// `[y]` for `y` in the cokernel of `ψ − 1` one degree up.
    Bracket,
    /// A class of the kernel of `ψ − 1`.
    Kernel,
}

/// Write `Σ v_i·name_i` with symmetric residues.
pub(crate) fn combination(names: &[String], v: &[Elem], module: &FgModule) -> String {
    let ring = module.ring;
    let mut parts = Vec::new();
    for (i, (&c, name)) in v.iter().zip(names).enumerate() {
        let f = module.factors()[i];
        let c = match ring.modulus() {
            Some(q) => {
                let bound = if f == 0 { q } else { f };
                let r = c.rem_euclid(bound);
                if r > bound / 2 {
                    r - bound
                } else {
                    r
                }
            }
            None => c,
        };
        if c == 0 {
            continue;
        }
        parts.push(match c {
            1 => name.clone(),
            -1 => format!("-{name}"),
            _ => format!("{c}·{name}"),
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ").replace("+ -", "- ")
    }
}

/// Replace each generator represented by `c·e_j` with `c` a unit by the
/// class of `e_j`, rescaling the projection to match.
fn normalize_units(coker: &mut Cokernel) -> Result<(), KoneError> {
    let ring = coker.module.ring;
    let mut reps: Vec<Vec<Elem>> = coker.quotient.reps.columns().collect();
    let mut rows: Vec<Vec<Elem>> = (0..coker.projection.matrix.rows())
        .map(|i| coker.projection.matrix.row(i).to_vec())
        .collect();
    for (i, rep) in reps.iter_mut().enumerate() {
        let mut nonzero = rep.iter().enumerate().filter(|(_, &c)| c != 0);
        let (Some((j, &c)), None) = (nonzero.next(), nonzero.next()) else { continue };
        if c == 1 || !ring.is_unit(c) {
            continue;
        }
        rep[j] = 1;
        for v in rows[i].iter_mut() {
            *v = ring.mul(*v, c)?;
        }
    }
    let height = coker.quotient.reps.rows();
    coker.quotient.reps = Matrix::from_columns(height, &reps);
    let matrix = Matrix::from_nested(&rows, coker.projection.matrix.cols())?;
    coker.projection = Hom::new(coker.projection.source.clone(), coker.projection.target.clone(), matrix)?;
    Ok(())
}

/// `π_s` of the fiber of `ψ − 1`, split as `coker(ψ − 1 on π_{s+1}) ⊕ ker(ψ − 1 on π_s)`.
///
/// The bracket half is the part of filtration 1 in the two-stage tower.
#[derive(Clone, Debug)]
pub struct DescentGroup {
    pub above: Piece,
    pub here: Piece,
    pub coker: Cokernel,
    pub kernel: Submodule,
    pub sum: DirectSum,
    pub names: Vec<String>,
    pub sides: Vec<Side>,
    /// Representatives: in `above` for brackets, in `here` for kernel classes.
    pub reps: Vec<Vec<Elem>>,
}

impl DescentGroup {
    pub fn new(above: Piece, here: Piece) -> Result<Self, KoneError> {
        let mut coker = cokernel(&above.psi_minus_one()?)?;
        normalize_units(&mut coker)?;
        let kernel = kernel(&here.psi_minus_one()?)?;
        let sum = coker.module.direct_sum(&kernel.module)?;
        let mut names = Vec::new();
        let mut sides = Vec::new();
        let mut reps = Vec::new();
        for rep in coker.quotient.reps.columns() {
            names.push(format!("[{}]", above.describe(&rep)));
            sides.push(Side::Bracket);
            reps.push(rep);
        }
        for rep in kernel.gens().columns() {
            names.push(here.describe(&rep));
            sides.push(Side::Kernel);
            reps.push(rep);
        }
        Ok(DescentGroup { above, here, coker, kernel, sum, names, sides, reps })
    }

    pub fn module(&self) -> &FgModule {
        &self.sum.sum
    }

    pub fn ngens(&self) -> usize {
        self.names.len()
    }

    pub fn zero_element(&self) -> Vec<Elem> {
        self.module().zero_element()
    }

    /// `[y]` for `y ∈ π_{s+1}`.
    pub fn bracket(&self, y: &[Elem]) -> Result<Vec<Elem>, KoneError> {
        Ok(self.sum.inc_left.apply(&self.coker.projection.apply(y)?)?)
    }

    /// The image in `π_s` of the theory.
    pub fn restrict(&self, x: &[Elem]) -> Result<Vec<Elem>, KoneError> {
        Ok(self.kernel.inclusion.apply(&self.sum.proj_right.apply(x)?)?)
    }

    /// The split lift of a `ψ`-fixed class.
    pub fn lift_fixed(&self, v: &[Elem]) -> Result<Vec<Elem>, KoneError> {
        let coords = self.kernel.coords(v)?;
        Ok(self.sum.inc_right.apply(&coords)?)
    }

    /// Every element restricting to `v`: the split lift plus all brackets.
    /// Needs a finite bracket part.
    pub fn preimage_coset(&self, v: &[Elem]) -> Result<Vec<Vec<Elem>>, KoneError> {
        let base = self.lift_fixed(v)?;
        self.coker
            .module
            .elements()?
            .into_iter()
            .map(|c| Ok(self.module().add(&base, &self.sum.inc_left.apply(&c)?)?))
            .collect()
    }

    /// Subgroup of filtration 1 (the brackets).
    pub fn higher_filtration(&self) -> Result<Submodule, KoneError> {
        Ok(Submodule::generated(self.module(), &self.sum.inc_left.matrix)?)
    }

    pub fn describe(&self, x: &[Elem]) -> String {
        combination(&self.names, x, self.module())
    }

    pub fn rename(&mut self, idx: usize, name: String) {
        self.names[idx] = name;
    }

    /// The same group read off the two-stage tower of `ψ − 1` at stem `s`,
    /// with the limit data identifying it with level 1.
    pub fn tower(&self, s: i64) -> Result<(TowerDatum, LimitData), KoneError> {
        let maps = BTreeMap::from([(s, self.here.psi_minus_one()?), (s + 1, self.above.psi_minus_one()?)]);
        let tower = two_stage_graded(&maps)?;
        let top = tower.stage(s, 1)?;
        if &top != self.module() {
            return Err(KoneError::Tower(crate::tower::TowerError::LimitInconsistent(format!(
                "two-stage tower gives {} but the split descent gives {}",
                top.describe(),
                self.module().describe()
            ))));
        }
        let to_bottom = tower.proj_map(s, 1)?;
        let limit = LimitData {
            module: top.clone(),
            maps: BTreeMap::from([(0, to_bottom), (1, Hom::identity(top))]),
        };
        Ok((tower, limit))
    }

    /// Column matrix of the bracket representatives, for callers that need it.
    pub fn bracket_reps(&self) -> Matrix {
        self.coker.quotient.reps.clone()
    }
}
