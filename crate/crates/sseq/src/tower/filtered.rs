use std::collections::BTreeMap;

use crate::fgab::{smith_normal_form, CoeffRing, Elem, FgModule, Hom, Matrix, Presentation, Subquotient};

use super::datum::TowerDatum;
use super::TowerError;

/// A cyclic summand `ℤ/order` (order 0 for `ℤ`) of a chain complex, sitting
/// in a homological degree with a filtration weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Generator {
    pub degree: i64,
    pub weight: i64,
    pub order: Elem,
}

/// A chain complex of cyclic summands whose differential never lowers weight.
///
/// `X(t)` is the quotient by everything of weight above `t` and `F(t)` the
/// weight-`t` layer, so `F(t) → X(t) → X(t−1)` is a short exact sequence of
/// complexes and its homology long exact sequence gives a tower datum.
#[derive(Clone, Debug)]
pub struct FilteredComplex {
    pub generators: Vec<Generator>,
    /// `(target, source, coefficient)` entries of the differential.
    pub differential: Vec<(usize, usize, Elem)>,
}

/// Homology of one weight band `[lo, hi]` in one degree.
struct BandHomology {
    sq: Subquotient,
    /// Representatives with every coordinate outside the band set to zero.
    reps: Matrix,
}

impl BandHomology {
    fn module(&self) -> &FgModule {
        &self.sq.module
    }

    fn class(&self, v: &[Elem]) -> Result<Vec<Elem>, TowerError> {
        Ok(self.sq.coords(v)?)
    }

    fn reps(&self) -> impl Iterator<Item = Vec<Elem>> + '_ {
        self.reps.columns()
    }
}

impl FilteredComplex {
    fn in_degree(&self, s: i64) -> Vec<usize> {
        (0..self.generators.len()).filter(|&i| self.generators[i].degree == s).collect()
    }

    /// Matrix of `d` from degree `s` to degree `s − 1`, in the generator
    /// orderings of `in_degree`.
    fn d_matrix(&self, s: i64) -> Matrix {
        let src = self.in_degree(s);
        let tgt = self.in_degree(s - 1);
        let mut m = Matrix::zeros(tgt.len(), src.len());
        for &(i, j, c) in &self.differential {
            if let (Some(r), Some(col)) = (tgt.iter().position(|&x| x == i), src.iter().position(|&x| x == j)) {
                m[(r, col)] += c;
            }
        }
        m
    }

    /// Relations cutting degree `s` down to the weight band `[lo, hi]`.
    fn band_relations(&self, s: i64, lo: i64, hi: i64) -> Matrix {
        let gens = self.in_degree(s);
        let cols: Vec<Vec<Elem>> = gens
            .iter()
            .enumerate()
            .map(|(k, &g)| {
                let gen = self.generators[g];
                let mut v = vec![0; gens.len()];
                v[k] = if (lo..=hi).contains(&gen.weight) { gen.order } else { 1 };
                v
            })
            .collect();
        Matrix::from_columns(gens.len(), &cols)
    }

    /// Check degrees, weights, well-definedness and `d² = 0`.
    pub fn check(&self) -> Result<(), TowerError> {
        let n = self.generators.len();
        for &(i, j, c) in &self.differential {
            if i >= n || j >= n {
                return Err(TowerError::Schema("differential entry out of range".into()));
            }
            let (a, b) = (self.generators[i], self.generators[j]);
            if a.degree != b.degree - 1 || a.weight < b.weight {
                return Err(TowerError::Schema(format!("differential {j} -> {i} breaks degree or weight")));
            }
            let ok = if a.order == 0 { b.order == 0 || c == 0 } else { (b.order * c) % a.order == 0 };
            if !ok {
                return Err(TowerError::Schema(format!("differential {j} -> {i} is not well defined")));
            }
        }
        let degrees: std::collections::BTreeSet<i64> = self.generators.iter().map(|g| g.degree).collect();
        let z = CoeffRing::Integers;
        for &s in &degrees {
            let dd = self.d_matrix(s - 1).mul(&self.d_matrix(s), &z)?;
            let orders: Vec<Elem> = self.in_degree(s - 2).iter().map(|&g| self.generators[g].order).collect();
            for j in 0..dd.cols() {
                for (i, &o) in orders.iter().enumerate() {
                    let v = dd[(i, j)];
                    if (o == 0 && v != 0) || (o != 0 && v % o != 0) {
                        return Err(TowerError::Schema("the differential does not square to zero".into()));
                    }
                }
            }
        }
        Ok(())
    }

    fn band(&self, s: i64, lo: i64, hi: i64) -> Result<BandHomology, TowerError> {
        let z = CoeffRing::Integers;
        let below = self.band_relations(s - 1, lo, hi);
        let gens = self.in_degree(s);
        let dim = gens.len();
        let outside: Vec<usize> =
            (0..gens.len()).filter(|&k| !(lo..=hi).contains(&self.generators[gens[k]].weight)).collect();
        // chains of the band have no component on killed generators
        let mut d_out = self.d_matrix(s);
        for &k in &outside {
            for i in 0..d_out.rows() {
                d_out[(i, k)] = 0;
            }
        }
        let stacked = Matrix::hcat(&[&d_out, &below], self.in_degree(s - 1).len());
        let cyc = smith_normal_form(&stacked, &z)?.kernel_basis().select_rows(0..dim);
        let above: Vec<usize> = self.in_degree(s + 1);
        let keep: Vec<usize> = (0..above.len()).filter(|&k| (lo..=hi).contains(&self.generators[above[k]].weight)).collect();
        let bounds = self.d_matrix(s + 1).select_columns(&keep);
        let pres = Presentation { ring: z, relations: self.band_relations(s, lo, hi) };
        let sq = Subquotient::new(&pres, &cyc, &bounds)?;
        let mut reps = sq.reps.clone();
        for &k in &outside {
            for j in 0..reps.cols() {
                reps[(k, j)] = 0;
            }
        }
        Ok(BandHomology { sq, reps })
    }

    /// The tower datum on the window, grounded at the lowest weight and
    /// stable above the highest. All weights must lie in `t_range`.
    pub fn tower(&self, s_range: (i64, i64), t_range: (i64, i64)) -> Result<TowerDatum, TowerError> {
        self.check()?;
        if self.generators.iter().any(|g| !(t_range.0..=t_range.1).contains(&g.weight)) {
            return Err(TowerError::Schema("generator weight outside the window".into()));
        }
        let ring = CoeffRing::Integers;
        let (t0, t1) = t_range;
        let mut fib: BTreeMap<(i64, i64), BandHomology> = BTreeMap::new();
        let mut stage: BTreeMap<(i64, i64), BandHomology> = BTreeMap::new();
        for s in s_range.0..=s_range.1 {
            for t in t0..=t1 {
                fib.insert((s, t), self.band(s, t, t)?);
                stage.insert((s, t), self.band(s, t0, t)?);
            }
        }
        let mut tower = TowerDatum::zero(ring, s_range, t_range);
        tower.grounded = true;
        tower.stable_above = true;
        tower.incl.clear();
        tower.proj.clear();
        tower.bdry.clear();
        for (&p, h) in &fib {
            tower.pi_f.insert(p, h.module().clone());
        }
        for (&p, h) in &stage {
            tower.pi_x.insert(p, h.module().clone());
        }
        let induced = |from: &BandHomology, to: &BandHomology, f: &dyn Fn(Vec<Elem>) -> Vec<Elem>| -> Result<Hom, TowerError> {
            let cols = from.reps().map(|v| to.class(&f(v))).collect::<Result<Vec<_>, _>>()?;
            Ok(Hom::new(from.module().clone(), to.module().clone(), Matrix::from_columns(to.module().ngens(), &cols))?)
        };
        let same = |v: Vec<Elem>| v;
        for s in s_range.0..=s_range.1 {
            for t in t0..=t1 {
                tower.incl.insert((s, t), induced(&fib[&(s, t)], &stage[&(s, t)], &same)?);
                if t > t0 {
                    tower.proj.insert((s, t), induced(&stage[&(s, t)], &stage[&(s, t - 1)], &same)?);
                }
                if s > s_range.0 && t < t1 {
                    let d = self.d_matrix(s);
                    let apply = |v: Vec<Elem>| d.apply(&v, &ring).expect("sizes match");
                    tower.bdry.insert((s, t), induced(&stage[&(s, t)], &fib[&(s - 1, t + 1)], &apply)?);
                }
            }
        }
        tower.check_schema()?;
        Ok(tower)
    }
}
