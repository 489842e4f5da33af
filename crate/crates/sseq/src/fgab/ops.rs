use super::matrix::Matrix;
use super::module::{FgModule, Hom, Presentation, Subquotient};
use super::ring::Elem;
use super::FgError;

/// A subgroup presented by its normal form and the inclusion into the ambient.
#[derive(Clone, Debug)]
pub struct Submodule {
    pub module: FgModule,
    pub inclusion: Hom,
    sq: Subquotient,
}

impl Submodule {
    /// The subgroup of `ambient` generated by the columns of `gens`.
    pub fn generated(ambient: &FgModule, gens: &Matrix) -> Result<Self, FgError> {
        let sq = Subquotient::new(&ambient.presentation(), gens, &Matrix::zeros(ambient.ngens(), 0))?;
        let inclusion = Hom::new(sq.module.clone(), ambient.clone(), sq.reps.clone())?;
        Ok(Submodule { module: sq.module.clone(), inclusion, sq })
    }

    pub fn zero(ambient: &FgModule) -> Result<Self, FgError> {
        Self::generated(ambient, &Matrix::zeros(ambient.ngens(), 0))
    }

    pub fn whole(ambient: &FgModule) -> Result<Self, FgError> {
        Self::generated(ambient, &Matrix::identity(ambient.ngens()))
    }

    pub fn ambient(&self) -> &FgModule {
        &self.inclusion.target
    }

    /// Ambient representatives of the generators, as columns.
    pub fn gens(&self) -> &Matrix {
        &self.inclusion.matrix
    }

    pub fn contains(&self, v: &[Elem]) -> Result<bool, FgError> {
        self.sq.contains(v)
    }

    /// Coefficients of `v` against the generating columns this subgroup was
    /// built from (not the normalized generators).
    pub fn combination(&self, v: &[Elem]) -> Result<Option<Vec<Elem>>, FgError> {
        self.sq.solve_combination(v)
    }

    /// Coordinates in `module` of an ambient element lying in the subgroup.
    pub fn coords(&self, v: &[Elem]) -> Result<Vec<Elem>, FgError> {
        self.sq.coords(v)
    }

    pub fn contains_submodule(&self, other: &Submodule) -> Result<bool, FgError> {
        for c in other.gens().columns() {
            if !self.contains(&c)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn same_as(&self, other: &Submodule) -> Result<bool, FgError> {
        Ok(self.contains_submodule(other)? && other.contains_submodule(self)?)
    }

    pub fn sum(&self, other: &Submodule) -> Result<Submodule, FgError> {
        let k = self.ambient().ngens();
        Submodule::generated(self.ambient(), &Matrix::hcat(&[self.gens(), other.gens()], k))
    }

    pub fn intersection(&self, other: &Submodule) -> Result<Submodule, FgError> {
        let ring = self.ambient().ring;
        let k = self.ambient().ngens();
        let neg = other.gens().map_entries(|v| ring.neg(v));
        let stacked = Matrix::hcat(&[self.gens(), &neg, &self.ambient().relation_matrix()], k);
        let snf = super::smith::smith_normal_form(&stacked, &ring)?;
        let lattice = snf.kernel_basis().select_rows(0..self.gens().cols());
        let gens = self.gens().mul(&lattice, &ring)?;
        Submodule::generated(self.ambient(), &gens)
    }

    /// `self / below`, assuming `below ⊆ self`.
    pub fn quotient_by(&self, below: &Submodule) -> Result<Quotient, FgError> {
        Quotient::new(self.ambient(), self.gens(), below.gens())
    }
}

/// A subquotient `A / B` of an ambient module, with element-level access.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub module: FgModule,
    pub ambient: FgModule,
    /// Ambient representatives of the generators of `module`.
    pub reps: Matrix,
    sq: Subquotient,
}

impl Quotient {
    pub fn new(ambient: &FgModule, top: &Matrix, bottom: &Matrix) -> Result<Self, FgError> {
        let sq = Subquotient::new(&ambient.presentation(), top, bottom)?;
        Ok(Quotient { module: sq.module.clone(), ambient: ambient.clone(), reps: sq.reps.clone(), sq })
    }

    /// Class of an ambient element of the top subgroup.
    pub fn class_of(&self, v: &[Elem]) -> Result<Vec<Elem>, FgError> {
        self.sq.coords(v)
    }

    pub fn in_top(&self, v: &[Elem]) -> Result<bool, FgError> {
        self.sq.contains(v)
    }

    pub fn representative(&self, class: &[Elem]) -> Result<Vec<Elem>, FgError> {
        let v = self.reps.apply(class, &self.ambient.ring)?;
        self.ambient.reduce(&v)
    }
}

/// Kernel of `f` with its inclusion into the source.
pub fn kernel(f: &Hom) -> Result<Submodule, FgError> {
    let ring = f.ring();
    let n = f.source.ngens();
    let stacked = Matrix::hcat(&[&f.matrix, &f.target.relation_matrix()], f.target.ngens());
    let snf = super::smith::smith_normal_form(&stacked, &ring)?;
    let lattice = snf.kernel_basis().select_rows(0..n);
    Submodule::generated(&f.source, &lattice)
}

/// Image of `f` as a subgroup of the target.
pub fn image(f: &Hom) -> Result<Submodule, FgError> {
    Submodule::generated(&f.target, &f.matrix)
}

/// Cokernel of `f` with its projection from the target.
#[derive(Clone, Debug)]
pub struct Cokernel {
    pub module: FgModule,
    pub projection: Hom,
    pub quotient: Quotient,
}

pub fn cokernel(f: &Hom) -> Result<Cokernel, FgError> {
    let t = &f.target;
    let quotient = Quotient::new(t, &Matrix::identity(t.ngens()), &f.matrix)?;
    let cols: Vec<Vec<Elem>> = (0..t.ngens()).map(|j| quotient.class_of(&t.basis_element(j))).collect::<Result<_, _>>()?;
    let projection = Hom::new(t.clone(), quotient.module.clone(), Matrix::from_columns(quotient.module.ngens(), &cols))?;
    Ok(Cokernel { module: quotient.module.clone(), projection, quotient })
}

/// Preimage of a subgroup of the target.
pub fn preimage(f: &Hom, sub: &Submodule) -> Result<Submodule, FgError> {
    let ring = f.ring();
    let n = f.source.ngens();
    let k = f.target.ngens();
    let neg = sub.gens().map_entries(|v| ring.neg(v));
    let stacked = Matrix::hcat(&[&f.matrix, &neg, &f.target.relation_matrix()], k);
    let snf = super::smith::smith_normal_form(&stacked, &ring)?;
    let lattice = snf.kernel_basis().select_rows(0..n);
    Submodule::generated(&f.source, &lattice)
}

/// Image of a subgroup of the source.
pub fn image_of(f: &Hom, sub: &Submodule) -> Result<Submodule, FgError> {
    let gens = f.matrix.mul(sub.gens(), &f.ring())?;
    Submodule::generated(&f.target, &gens)
}

/// Fiber product `A ×_C B` with its two projections.
#[derive(Clone, Debug)]
pub struct FiberProduct {
    pub module: FgModule,
    pub left: Hom,
    pub right: Hom,
}

pub fn fiber_product(f: &Hom, g: &Hom) -> Result<FiberProduct, FgError> {
    if f.target != g.target {
        return Err(FgError::DimensionMismatch("fiber product needs a common target".into()));
    }
    let ring = f.ring();
    let (a, b) = (f.source.ngens(), g.source.ngens());
    let c = f.target.ngens();
    let pres = Presentation {
        ring,
        relations: Matrix::block_diag(&f.source.relation_matrix(), &g.source.relation_matrix()),
    };
    let neg_g = g.matrix.map_entries(|v| ring.neg(v));
    let map = Matrix::hcat(&[&f.matrix, &neg_g], c);
    let stacked = Matrix::hcat(&[&map, &f.target.relation_matrix()], c);
    let snf = super::smith::smith_normal_form(&stacked, &ring)?;
    let lattice = snf.kernel_basis().select_rows(0..a + b);
    let sq = Subquotient::new(&pres, &lattice, &Matrix::zeros(a + b, 0))?;
    let left = Hom::new(sq.module.clone(), f.source.clone(), sq.reps.select_rows(0..a))?;
    let right = Hom::new(sq.module.clone(), g.source.clone(), sq.reps.select_rows(a..a + b))?;
    Ok(FiberProduct { module: sq.module, left, right })
}

/// Is `f` injective?
pub fn is_injective(f: &Hom) -> Result<bool, FgError> {
    Ok(kernel(f)?.module.is_zero())
}

pub fn is_surjective(f: &Hom) -> Result<bool, FgError> {
    Ok(cokernel(f)?.module.is_zero())
}

/// Is `f` followed by `g` exact at the middle term?
pub fn is_exact(f: &Hom, g: &Hom) -> Result<bool, FgError> {
    let im = image(f)?;
    let ker = kernel(g)?;
    im.same_as(&ker)
}

#[cfg(test)]
mod tests {
    use super::super::ring::CoeffRing;
    use super::*;

    fn z() -> FgModule {
        FgModule::free(CoeffRing::Integers, 1)
    }

    #[test]
    fn kernel_of_doubling_is_zero() {
        let f = Hom::new(z(), z(), Matrix::from_rows(1, 1, vec![2])).unwrap();
        assert!(kernel(&f).unwrap().module.is_zero());
        assert_eq!(cokernel(&f).unwrap().module.factors(), &[2]);
    }

    #[test]
    fn padic_cokernel_of_three() {
        let ring = CoeffRing::padic(3, 12).unwrap();
        let m = FgModule::free(ring, 1);
        let f = Hom::new(m.clone(), m.clone(), Matrix::from_rows(1, 1, vec![3])).unwrap();
        assert_eq!(cokernel(&f).unwrap().module.factors(), &[3]);
        assert!(kernel(&f).unwrap().module.is_zero());
    }

    #[test]
    fn torsion_kernel() {
        let z4 = FgModule::cyclic(CoeffRing::Integers, 4).unwrap();
        let f = Hom::new(z4.clone(), z4.clone(), Matrix::from_rows(1, 1, vec![2])).unwrap();
        let k = kernel(&f).unwrap();
        assert_eq!(k.module.factors(), &[2]);
        assert!(k.contains(&[2]).unwrap());
        assert!(!k.contains(&[1]).unwrap());
    }

    #[test]
    fn fiber_product_over_reduction() {
        let z2 = FgModule::cyclic(CoeffRing::Integers, 2).unwrap();
        let red = Hom::new(z(), z2, Matrix::from_rows(1, 1, vec![1])).unwrap();
        let fp = fiber_product(&red, &red).unwrap();
        assert_eq!(fp.module.rank(), 2);
        assert!(fp.module.is_zero() == false && fp.module.torsion().is_empty());
    }
}
