use std::collections::BTreeMap;

use serde::Serialize;

use crate::fgab::{image, is_injective, is_surjective, kernel, FgModule, Hom, Matrix, Quotient, Submodule};

use super::datum::TowerDatum;
use super::engine::{e_infinity_page, Page};
use super::TowerError;

/// A candidate for `π_s lim X` with its maps to each level of the window.
#[derive(Clone, Debug)]
pub struct LimitData {
    pub module: FgModule,
    /// `L → π_s X(t)` for every `t` in the window.
    pub maps: BTreeMap<i64, Hom>,
}

/// One graded piece `F^t / F^{t+1}` compared against `E_∞^{s,t}`.
#[derive(Clone, Debug, Serialize)]
pub struct Layer {
    pub t: i64,
    pub graded: Vec<i128>,
    pub e_infinity: Vec<i128>,
    /// Matrix of the detection map from the graded piece to `E_∞`.
    pub detection: Vec<Vec<i128>>,
}

#[derive(Clone, Debug)]
pub struct Convergence {
    pub s: i64,
    pub layers: Vec<Layer>,
    /// `F^t = ker(L → π_s X(t−1))`, for `t` from `t_min` to `t_max + 1`.
    filtration: Vec<(i64, Submodule)>,
    pages: Vec<Page>,
    limit: LimitData,
    incl_images: Vec<Submodule>,
}

/// Compare the filtration of a limit with the `E_∞` page in column `s`.
///
/// Fails with `ConvergenceUnverifiable` unless the tower is grounded and
/// stable above, and with `LimitInconsistent` when the data disagree.
pub fn einfinity(tower: &TowerDatum, s: i64, limit: &LimitData) -> Result<Convergence, TowerError> {
    if !(tower.grounded && tower.stable_above) {
        return Err(TowerError::ConvergenceUnverifiable(
            "convergence needs X(t) = 0 below the window and F(t) = 0 above it".into(),
        ));
    }
    let (t0, t1) = tower.t_range;
    let inconsistent = |msg: String| TowerError::LimitInconsistent(msg);
    for t in t0..=t1 {
        let m = limit.maps.get(&t).ok_or_else(|| TowerError::Schema(format!("no limit map to level {t}")))?;
        if m.source != limit.module || m.target != tower.stage(s, t)? {
            return Err(TowerError::Schema(format!("limit map to level {t} has wrong endpoints")));
        }
        if t > t0 {
            let down = tower.proj_map(s, t)?.compose_after(m)?;
            if !down.sub(&limit.maps[&(t - 1)])?.is_zero() {
                return Err(inconsistent(format!("limit maps at levels {t} and {} do not commute", t - 1)));
            }
        }
    }
    let top = &limit.maps[&t1];
    if !is_injective(top)? || !is_surjective(top)? {
        return Err(inconsistent(format!("the limit does not map isomorphically to level {t1}")));
    }

    let mut filtration = vec![(t0, Submodule::whole(&limit.module)?)];
    for t in t0 + 1..=t1 + 1 {
        filtration.push((t, kernel(&limit.maps[&(t - 1)])?));
    }
    let mut layers = Vec::new();
    let mut pages = Vec::new();
    let mut incl_images = Vec::new();
    for t in t0..=t1 {
        let upper = &filtration[(t - t0) as usize].1;
        let lower = &filtration[(t - t0 + 1) as usize].1;
        let graded = Quotient::new(&limit.module, upper.gens(), lower.gens())?;
        let einf = e_infinity_page(tower, s, t)?;
        let incl_im = image(&tower.incl_map(s, t)?)?;
        let cols = graded
            .reps
            .columns()
            .map(|x| detect_in(&limit.maps[&t], &incl_im, &einf, &x))
            .collect::<Result<Vec<_>, _>>()?;
        let detection = Hom::new(
            graded.module.clone(),
            einf.module().clone(),
            Matrix::from_columns(einf.module().ngens(), &cols),
        )?;
        if !is_injective(&detection)? || !is_surjective(&detection)? {
            return Err(inconsistent(format!(
                "filtration quotient {} differs from E_infinity {} at ({s},{t})",
                graded.module.describe(),
                einf.module().describe()
            )));
        }
        layers.push(Layer {
            t,
            graded: graded.module.factors().to_vec(),
            e_infinity: einf.module().factors().to_vec(),
            detection: detection.matrix.to_nested(),
        });
        pages.push(einf);
        incl_images.push(incl_im);
    }
    Ok(Convergence { s, layers, filtration, pages, limit: limit.clone(), incl_images })
}

fn detect_in(map: &Hom, incl_im: &Submodule, page: &Page, x: &[i128]) -> Result<Vec<i128>, TowerError> {
    let w = map.apply(x)?;
    let a = incl_im
        .combination(&w)?
        .ok_or_else(|| TowerError::LimitInconsistent("element does not come from the fiber".into()))?;
    Ok(page.quotient.class_of(&a)?)
}

impl Convergence {
    /// `F^t = ker(L → π_s X(t−1))`; `F^{t_min}` is everything and the stage
    /// past the window is zero.
    pub fn filtration_stage(&self, t: i64) -> Option<&Submodule> {
        self.filtration.iter().find(|(u, _)| *u == t).map(|(_, sub)| sub)
    }

    /// Filtration and `E_∞` class of a nonzero element of the limit;
    /// `None` for zero.
    pub fn detect(&self, x: &[i128]) -> Result<Option<(i64, Vec<i128>)>, TowerError> {
        if self.limit.module.is_zero_element(x)? {
            return Ok(None);
        }
        let t0 = self.filtration[0].0;
        for (i, (t, _)) in self.filtration.iter().enumerate().skip(1) {
            if !self.filtration[i].1.contains(x)? {
                let level = t - 1;
                let idx = (level - t0) as usize;
                let class = detect_in(&self.limit.maps[&level], &self.incl_images[idx], &self.pages[idx], x)?;
                return Ok(Some((level, class)));
            }
        }
        unreachable!("the last filtration stage is zero")
    }
}
