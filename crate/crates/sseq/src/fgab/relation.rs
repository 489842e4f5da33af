use super::matrix::Matrix;
use super::module::{FgModule, Hom};
use super::ops::{Quotient, Submodule};
use super::ring::Elem;
use super::FgError;

/// A subgroup `R ⊆ M × N` given by generating pairs.
#[derive(Clone, Debug)]
pub struct AdditiveRelation {
    pub left: FgModule,
    pub right: FgModule,
    pub pairs: Vec<(Vec<Elem>, Vec<Elem>)>,
}

impl AdditiveRelation {
    pub fn new(left: FgModule, right: FgModule, pairs: Vec<(Vec<Elem>, Vec<Elem>)>) -> Result<Self, FgError> {
        if left.ring != right.ring {
            return Err(FgError::RingMismatch);
        }
        let pairs = pairs
            .into_iter()
            .map(|(m, n)| Ok((left.reduce(&m)?, right.reduce(&n)?)))
            .collect::<Result<_, FgError>>()?;
        Ok(AdditiveRelation { left, right, pairs })
    }

    /// The graph of a homomorphism.
    pub fn graph(f: &Hom) -> Result<Self, FgError> {
        let pairs = (0..f.source.ngens())
            .map(|j| {
                let e = f.source.basis_element(j);
                Ok((e.clone(), f.apply(&e)?))
            })
            .collect::<Result<_, FgError>>()?;
        Self::new(f.source.clone(), f.target.clone(), pairs)
    }

    pub fn left_gens(&self) -> Matrix {
        let cols: Vec<Vec<Elem>> = self.pairs.iter().map(|(m, _)| m.clone()).collect();
        Matrix::from_columns(self.left.ngens(), &cols)
    }

    pub fn right_gens(&self) -> Matrix {
        let cols: Vec<Vec<Elem>> = self.pairs.iter().map(|(_, n)| n.clone()).collect();
        Matrix::from_columns(self.right.ngens(), &cols)
    }

    /// Does the pair `(m, n)` lie in `R`?
    pub fn contains(&self, m: &[Elem], n: &[Elem]) -> Result<bool, FgError> {
        let ds = self.left.direct_sum(&self.right)?;
        let ring = self.left.ring;
        let gens = ds.inc_left.matrix.mul(&self.left_gens(), &ring)?;
        let gens_r = ds.inc_right.matrix.mul(&self.right_gens(), &ring)?;
        let mut all = gens.clone();
        for i in 0..all.rows() {
            for j in 0..all.cols() {
                all[(i, j)] = ring.add(all[(i, j)], gens_r[(i, j)])?;
            }
        }
        let sub = Submodule::generated(&ds.sum, &all)?;
        let v = ds.sum.add(&ds.inc_left.apply(m)?, &ds.inc_right.apply(n)?)?;
        sub.contains(&v)
    }

    pub fn function(&self) -> Result<RelationFunction, FgError> {
        relation_to_function(self)
    }
}

/// The partial function `Z → N/B` induced by an additive relation.
#[derive(Clone, Debug)]
pub struct RelationFunction {
    /// `Z = Im(R → M)`.
    pub domain: Submodule,
    /// `B = Im(ker(R → M) → N)`.
    pub indeterminacy: Submodule,
    /// `C = N / B`.
    pub codomain: Quotient,
    /// `Z → C` on the generators of `domain`.
    pub value_map: Hom,
    relation: AdditiveRelation,
    domain_solver: Submodule,
}

pub fn relation_to_function(rel: &AdditiveRelation) -> Result<RelationFunction, FgError> {
    let ring = rel.left.ring;
    let mgens = rel.left_gens();
    let ngens = rel.right_gens();
    let domain = Submodule::generated(&rel.left, &mgens)?;

    // ker(R → M): combinations c of the generating pairs with Σ c_j m_j = 0 in M.
    let stacked = Matrix::hcat(&[&mgens, &rel.left.relation_matrix()], rel.left.ngens());
    let snf = super::smith::smith_normal_form(&stacked, &ring)?;
    let combos = snf.kernel_basis().select_rows(0..rel.pairs.len());
    let b_gens = ngens.mul(&combos, &ring)?;
    let indeterminacy = Submodule::generated(&rel.right, &b_gens)?;
    let codomain = Quotient::new(&rel.right, &Matrix::identity(rel.right.ngens()), indeterminacy.gens())?;

    let domain_solver = domain.clone();
    let mut cols = Vec::with_capacity(domain.module.ngens());
    for z in domain.gens().columns() {
        let n = value_on(&domain_solver, &ngens, &rel.right, &z)?;
        cols.push(codomain.class_of(&n)?);
    }
    let value_map = Hom::new(domain.module.clone(), codomain.module.clone(), Matrix::from_columns(codomain.module.ngens(), &cols))?;
    Ok(RelationFunction { domain, indeterminacy, codomain, value_map, relation: rel.clone(), domain_solver })
}

fn value_on(solver: &Submodule, ngens: &Matrix, right: &FgModule, m: &[Elem]) -> Result<Vec<Elem>, FgError> {
    let c = solver_combination(solver, m)?;
    let n = ngens.apply(&c, &right.ring)?;
    right.reduce(&n)
}

fn solver_combination(solver: &Submodule, m: &[Elem]) -> Result<Vec<Elem>, FgError> {
    solver.combination(m)?.ok_or(FgError::NotInDomain)
}

impl RelationFunction {
    pub fn in_domain(&self, m: &[Elem]) -> Result<bool, FgError> {
        self.domain.contains(m)
    }

    /// Some `n` with `(m, n) ∈ R`.
    pub fn lift(&self, m: &[Elem]) -> Result<Vec<Elem>, FgError> {
        value_on(&self.domain_solver, &self.relation.right_gens(), &self.relation.right, m)
    }

    /// Class of the value in `N / B`.
    pub fn evaluate(&self, m: &[Elem]) -> Result<Vec<Elem>, FgError> {
        let n = self.lift(m)?;
        self.codomain.class_of(&n)
    }

    /// Is `n` a value at `m`, i.e. does `n` lie in the coset of the value?
    pub fn is_value(&self, m: &[Elem], n: &[Elem]) -> Result<bool, FgError> {
        let lifted = self.lift(m)?;
        let diff = self.relation.right.sub(n, &lifted)?;
        self.indeterminacy.contains(&diff)
    }

    pub fn relation(&self) -> &AdditiveRelation {
        &self.relation
    }
}
