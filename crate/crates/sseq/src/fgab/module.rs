use std::fmt;

use serde::{Deserialize, Serialize};

use super::matrix::Matrix;
use super::ring::{CoeffRing, Elem};
use super::smith::{smith_normal_form, SmithForm};
use super::FgError;

/// A finitely generated module in invariant-factor form.
///
/// `factors` is a divisibility chain of nonunits: finite torsion orders in
/// ascending order, then zeros for free summands. Generator `i` has order
/// `factors[i]`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FgModule {
    pub ring: CoeffRing,
    factors: Vec<Elem>,
}

impl FgModule {
    pub fn zero(ring: CoeffRing) -> Self {
        FgModule { ring, factors: vec![] }
    }

    pub fn free(ring: CoeffRing, rank: usize) -> Self {
        FgModule { ring, factors: vec![0; rank] }
    }

    pub fn cyclic(ring: CoeffRing, order: Elem) -> Result<Self, FgError> {
        Self::from_factors(ring, &[order])
    }

    /// Normalize an arbitrary list of cyclic orders into invariant-factor form.
    pub fn from_factors(ring: CoeffRing, orders: &[Elem]) -> Result<Self, FgError> {
        let orders: Vec<Elem> = orders.iter().map(|&o| ring.ingest(o)).collect::<Result<_, _>>()?;
        let mut d = Matrix::zeros(orders.len(), orders.len());
        for (i, &o) in orders.iter().enumerate() {
            d[(i, i)] = o;
        }
        let snf = smith_normal_form(&d, &ring)?;
        let factors = snf.diagonal.into_iter().filter(|&f| !ring.is_unit(f)).collect();
        Ok(FgModule { ring, factors })
    }

    /// Rebuild from an already normalized factor list, checking the chain.
    pub fn from_normal_factors(ring: CoeffRing, factors: Vec<Elem>) -> Result<Self, FgError> {
        let m = FgModule { ring, factors };
        m.check_normal()?;
        Ok(m)
    }

    fn check_normal(&self) -> Result<(), FgError> {
        let r = &self.ring;
        for w in self.factors.windows(2) {
            if !r.divides(w[0], w[1]) {
                return Err(FgError::IllDefined(format!("factors {} and {} break the divisibility chain", w[0], w[1])));
            }
        }
        for &f in &self.factors {
            if r.is_unit(f) || r.split_unit(f).1 != f {
                return Err(FgError::IllDefined(format!("factor {f} is not a normalized nonunit")));
            }
        }
        Ok(())
    }

    pub fn factors(&self) -> &[Elem] {
        &self.factors
    }

    pub fn ngens(&self) -> usize {
        self.factors.len()
    }

    pub fn is_zero(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.factors.iter().filter(|&&f| f == 0).count()
    }

    pub fn torsion(&self) -> Vec<Elem> {
        self.factors.iter().copied().filter(|&f| f != 0).collect()
    }

    /// Cardinality, `None` if infinite.
    pub fn order(&self) -> Option<u128> {
        self.factors.iter().try_fold(1u128, |acc, &f| self.ring.cyclic_order(f).and_then(|o| acc.checked_mul(o)))
    }

    pub fn is_finite(&self) -> bool {
        self.rank() == 0
    }

    /// Relation matrix: column `i` is `factors[i] * e_i` for torsion generators.
    pub fn relation_matrix(&self) -> Matrix {
        let torsion: Vec<usize> = (0..self.ngens()).filter(|&i| self.factors[i] != 0).collect();
        let mut d = Matrix::zeros(self.ngens(), torsion.len());
        for (k, &i) in torsion.iter().enumerate() {
            d[(i, k)] = self.factors[i];
        }
        d
    }

    pub fn presentation(&self) -> Presentation {
        Presentation { ring: self.ring, relations: self.relation_matrix() }
    }

    /// Canonical coordinates of an element.
    pub fn reduce(&self, v: &[Elem]) -> Result<Vec<Elem>, FgError> {
        if v.len() != self.ngens() {
            return Err(FgError::DimensionMismatch(format!(
                "element of length {} in a module with {} generators",
                v.len(),
                self.ngens()
            )));
        }
        Ok(v.iter().zip(&self.factors).map(|(&x, &f)| self.ring.reduce_mod(x, f)).collect())
    }

    pub fn zero_element(&self) -> Vec<Elem> {
        vec![0; self.ngens()]
    }

    pub fn basis_element(&self, i: usize) -> Vec<Elem> {
        let mut v = self.zero_element();
        v[i] = 1;
        v
    }

    pub fn add(&self, a: &[Elem], b: &[Elem]) -> Result<Vec<Elem>, FgError> {
        let s: Vec<Elem> = a.iter().zip(b).map(|(&x, &y)| self.ring.add(x, y)).collect::<Result<_, _>>()?;
        self.reduce(&s)
    }

    pub fn sub(&self, a: &[Elem], b: &[Elem]) -> Result<Vec<Elem>, FgError> {
        let s: Vec<Elem> = a.iter().zip(b).map(|(&x, &y)| self.ring.sub(x, y)).collect::<Result<_, _>>()?;
        self.reduce(&s)
    }

    pub fn scale(&self, c: Elem, a: &[Elem]) -> Result<Vec<Elem>, FgError> {
        let s: Vec<Elem> = a.iter().map(|&x| self.ring.mul(c, x)).collect::<Result<_, _>>()?;
        self.reduce(&s)
    }

    pub fn is_zero_element(&self, v: &[Elem]) -> Result<bool, FgError> {
        Ok(self.reduce(v)?.iter().all(|&x| x == 0))
    }

    /// All elements of a finite module, in canonical coordinates.
    pub fn elements(&self) -> Result<Vec<Vec<Elem>>, FgError> {
        if !self.is_finite() {
            return Err(FgError::Infinite);
        }
        let mut out = vec![vec![]];
        for &f in &self.factors {
            let n = f.abs();
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<Elem>| {
                    (0..n).map(move |x| {
                        let mut v = prefix.clone();
                        v.push(x);
                        v
                    })
                })
                .collect();
        }
        Ok(out)
    }

    /// Direct sum, returned with its inclusions and projections.
    pub fn direct_sum(&self, other: &FgModule) -> Result<DirectSum, FgError> {
        if self.ring != other.ring {
            return Err(FgError::RingMismatch);
        }
        if let Some(sum) = self.permuted_sum(other)? {
            return Ok(sum);
        }
        let pres = Presentation {
            ring: self.ring,
            relations: Matrix::block_diag(&self.relation_matrix(), &other.relation_matrix()),
        };
        let n = self.ngens() + other.ngens();
        let sq = Subquotient::new(&pres, &Matrix::identity(n), &Matrix::zeros(n, 0))?;
        let sum = sq.module.clone();
        let top = sq.reps.select_rows(0..self.ngens());
        let bottom = sq.reps.select_rows(self.ngens()..n);
        let proj = [Hom::new(sum.clone(), self.clone(), top)?, Hom::new(sum.clone(), other.clone(), bottom)?];
        let mut inc = Vec::new();
        for (off, m) in [(0, self), (self.ngens(), other)] {
            let cols: Vec<Vec<Elem>> = (0..m.ngens())
                .map(|i| {
                    let mut e = vec![0; n];
                    e[off + i] = 1;
                    sq.coords(&e)
                })
                .collect::<Result<_, _>>()?;
            inc.push(Hom::new(m.clone(), sum.clone(), Matrix::from_columns(sum.ngens(), &cols))?);
        }
        let [inc_left, inc_right]: [Hom; 2] = inc.try_into().expect("two inclusions");
        let [proj_left, proj_right] = proj;
        Ok(DirectSum { sum, inc_left, inc_right, proj_left, proj_right })
    }

    /// The direct sum with generators merely reordered, when the combined
    /// factors can be sorted into a chain.
    fn permuted_sum(&self, other: &FgModule) -> Result<Option<DirectSum>, FgError> {
        let all: Vec<Elem> = self.factors.iter().chain(&other.factors).copied().collect();
        let mut order: Vec<usize> = (0..all.len()).collect();
        order.sort_by_key(|&i| (all[i] == 0, all[i].unsigned_abs()));
        let Ok(sum) = FgModule::from_normal_factors(self.ring, order.iter().map(|&i| all[i]).collect()) else {
            return Ok(None);
        };
        let n = all.len();
        let mut place = vec![0; n];
        for (pos, &i) in order.iter().enumerate() {
            place[i] = pos;
        }
        let unit = |rows: usize, cols: usize, hit: &dyn Fn(usize, usize) -> bool| {
            let mut m = Matrix::zeros(rows, cols);
            for r in 0..rows {
                for c in 0..cols {
                    if hit(r, c) {
                        m[(r, c)] = 1;
                    }
                }
            }
            m
        };
        let k = self.ngens();
        let inc_left = Hom::new(self.clone(), sum.clone(), unit(n, k, &|r, c| place[c] == r))?;
        let inc_right = Hom::new(other.clone(), sum.clone(), unit(n, n - k, &|r, c| place[k + c] == r))?;
        let proj_left = Hom::new(sum.clone(), self.clone(), unit(k, n, &|r, c| place[r] == c))?;
        let proj_right = Hom::new(sum.clone(), other.clone(), unit(n - k, n, &|r, c| place[k + r] == c))?;
        Ok(Some(DirectSum { sum, inc_left, inc_right, proj_left, proj_right }))
    }

    pub fn describe(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let ring_name = match self.ring {
            CoeffRing::Integers => "Z".to_string(),
            CoeffRing::Padic { p, .. } => format!("Z_{p}"),
        };
        self.factors
            .iter()
            .map(|&f| if f == 0 { ring_name.clone() } else { format!("Z/{f}") })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Debug for FgModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FgModule[{}]({})", self.ring.describe(), self.describe())
    }
}

impl fmt::Display for FgModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

#[derive(Clone, Debug)]
pub struct DirectSum {
    pub sum: FgModule,
    pub inc_left: Hom,
    pub inc_right: Hom,
    pub proj_left: Hom,
    pub proj_right: Hom,
}

/// `R^k / im(relations)` with arbitrary relation columns.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub ring: CoeffRing,
    pub relations: Matrix,
}

impl Presentation {
    pub fn dim(&self) -> usize {
        self.relations.rows()
    }
}

/// The module `(im G + im R + D) / (im R + D)` inside a presented ambient,
/// with explicit generators and a coordinate solver.
#[derive(Clone, Debug)]
pub struct Subquotient {
    pub module: FgModule,
    /// Ambient representatives of the generators of `module`, as columns.
    pub reps: Matrix,
    /// Coefficients expressing each generator as a combination of the columns of `G`.
    pub combo: Matrix,
    ngens_in: usize,
    solver: SmithForm,
    change: Matrix,
    kept: Vec<usize>,
}

impl Subquotient {
    pub fn new(ambient: &Presentation, gens: &Matrix, rels: &Matrix) -> Result<Self, FgError> {
        let ring = ambient.ring;
        let k = ambient.dim();
        if gens.rows() != k || rels.rows() != k {
            return Err(FgError::DimensionMismatch(format!(
                "generators ({} rows) or relations ({} rows) against ambient of dimension {k}",
                gens.rows(),
                rels.rows()
            )));
        }
        let g = gens.cols();
        let stacked = Matrix::hcat(&[gens, rels, &ambient.relations], k);
        let solver = smith_normal_form(&stacked, &ring)?;
        let lattice = solver.kernel_basis().select_rows(0..g);
        let snf = smith_normal_form(&lattice, &ring)?;
        let diag = |i: usize| snf.diagonal.get(i).copied().unwrap_or(0);
        let kept: Vec<usize> = (0..g).filter(|&i| !ring.is_unit(diag(i))).collect();
        let factors: Vec<Elem> = kept.iter().map(|&i| diag(i)).collect();
        let module = FgModule::from_normal_factors(ring, factors)?;
        let combo = snf.u_inv.select_columns(&kept);
        let reps = gens.mul(&combo, &ring)?;
        let reps = reps.map_entries(|v| ring.reduce(v));
        Ok(Subquotient { module, reps, combo, ngens_in: g, solver, change: snf.u, kept })
    }

    /// Coefficients `c` with `G c` congruent to `v`, if `v` lies in the span.
    pub fn solve_combination(&self, v: &[Elem]) -> Result<Option<Vec<Elem>>, FgError> {
        Ok(self.solver.solve(v)?.map(|x| x[..self.ngens_in].to_vec()))
    }

    pub fn contains(&self, v: &[Elem]) -> Result<bool, FgError> {
        Ok(self.solver.solve(v)?.is_some())
    }

    /// Coordinates of the class of `v` in `module`.
    pub fn coords(&self, v: &[Elem]) -> Result<Vec<Elem>, FgError> {
        let c = self.solve_combination(v)?.ok_or(FgError::NotInDomain)?;
        self.coords_of_combination(&c)
    }

    pub fn coords_of_combination(&self, c: &[Elem]) -> Result<Vec<Elem>, FgError> {
        let y = self.change.apply(c, &self.module.ring)?;
        let picked: Vec<Elem> = self.kept.iter().map(|&i| y[i]).collect();
        self.module.reduce(&picked)
    }
}

/// Homomorphism between normalized modules; column `j` is the image of the
/// `j`-th source generator.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hom {
    pub source: FgModule,
    pub target: FgModule,
    pub matrix: Matrix,
}

impl Hom {
    pub fn new(source: FgModule, target: FgModule, matrix: Matrix) -> Result<Self, FgError> {
        let ring = source.ring;
        if target.ring != ring {
            return Err(FgError::RingMismatch);
        }
        if matrix.rows() != target.ngens() || matrix.cols() != source.ngens() {
            return Err(FgError::DimensionMismatch(format!(
                "matrix {}x{} for a map from {} to {} generators",
                matrix.rows(),
                matrix.cols(),
                source.ngens(),
                target.ngens()
            )));
        }
        let mut reduced = Matrix::zeros(matrix.rows(), matrix.cols());
        for j in 0..matrix.cols() {
            let s = source.factors()[j];
            for i in 0..matrix.rows() {
                let t = target.factors()[i];
                let a = ring.reduce(matrix[(i, j)]);
                if s != 0 && !ring.product_divisible(t, s, a)? {
                    return Err(FgError::IllDefined(format!(
                        "generator {j} of order {s} cannot map to {a} in a summand of order {t}"
                    )));
                }
                reduced[(i, j)] = ring.reduce_mod(a, t);
            }
        }
        Ok(Hom { source, target, matrix: reduced })
    }

    pub fn zero(source: FgModule, target: FgModule) -> Self {
        let matrix = Matrix::zeros(target.ngens(), source.ngens());
        Hom { source, target, matrix }
    }

    pub fn identity(m: FgModule) -> Self {
        let matrix = Matrix::identity(m.ngens());
        Hom { source: m.clone(), target: m, matrix }
    }

    pub fn ring(&self) -> CoeffRing {
        self.source.ring
    }

    pub fn apply(&self, v: &[Elem]) -> Result<Vec<Elem>, FgError> {
        let w = self.matrix.apply(v, &self.ring())?;
        self.target.reduce(&w)
    }

    /// `self ∘ first`
    pub fn compose_after(&self, first: &Hom) -> Result<Hom, FgError> {
        if first.target != self.source {
            return Err(FgError::DimensionMismatch("composition of incompatible maps".into()));
        }
        let m = self.matrix.mul(&first.matrix, &self.ring())?;
        Hom::new(first.source.clone(), self.target.clone(), m)
    }

    pub fn add(&self, other: &Hom) -> Result<Hom, FgError> {
        self.combine(other, 1)
    }

    pub fn sub(&self, other: &Hom) -> Result<Hom, FgError> {
        self.combine(other, -1)
    }

    fn combine(&self, other: &Hom, sign: Elem) -> Result<Hom, FgError> {
        if self.source != other.source || self.target != other.target {
            return Err(FgError::DimensionMismatch("adding maps with different endpoints".into()));
        }
        let ring = self.ring();
        let mut m = self.matrix.clone();
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let o = ring.mul(sign, other.matrix[(i, j)])?;
                m[(i, j)] = ring.add(m[(i, j)], o)?;
            }
        }
        Hom::new(self.source.clone(), self.target.clone(), m)
    }

    pub fn scale(&self, c: Elem) -> Result<Hom, FgError> {
        Hom::new(self.source.clone(), self.target.clone(), self.matrix.scale(c, &self.ring())?)
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }
}

impl fmt::Debug for Hom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hom({} -> {}, {:?})", self.source.describe(), self.target.describe(), self.matrix.to_nested())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_normalization() {
        let m = FgModule::from_factors(CoeffRing::Integers, &[6, 4, 0, 1]).unwrap();
        assert_eq!(m.factors(), &[2, 12, 0]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn padic_factors_are_prime_powers() {
        let ring = CoeffRing::padic(3, 6).unwrap();
        let m = FgModule::from_factors(ring, &[6, 9, 2]).unwrap();
        assert_eq!(m.factors(), &[3, 9]);
    }

    #[test]
    fn hom_rejects_ill_defined() {
        let z2 = FgModule::cyclic(CoeffRing::Integers, 2).unwrap();
        let z3 = FgModule::cyclic(CoeffRing::Integers, 3).unwrap();
        assert!(Hom::new(z2.clone(), z3, Matrix::from_rows(1, 1, vec![1])).is_err());
        let z4 = FgModule::cyclic(CoeffRing::Integers, 4).unwrap();
        assert!(Hom::new(z2, z4, Matrix::from_rows(1, 1, vec![2])).is_ok());
    }

    #[test]
    fn direct_sum_of_coprime_cyclics() {
        let r = CoeffRing::Integers;
        let ds = FgModule::cyclic(r, 2).unwrap().direct_sum(&FgModule::cyclic(r, 3).unwrap()).unwrap();
        assert_eq!(ds.sum.factors(), &[6]);
        let x = ds.inc_left.apply(&[1]).unwrap();
        assert_eq!(ds.proj_left.apply(&x).unwrap(), vec![1]);
        assert_eq!(ds.proj_right.apply(&x).unwrap(), vec![0]);
    }
}
