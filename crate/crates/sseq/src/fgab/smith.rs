use super::matrix::Matrix;
use super::ring::{CoeffRing, Elem};
use super::FgError;

/// Smith normal form `U * M * V = S` together with the inverse transforms.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub ring: CoeffRing,
    /// Diagonal of `S`, length `min(rows, cols)`; nonzero entries come first
    /// and form a divisibility chain.
    pub diagonal: Vec<Elem>,
    pub s: Matrix,
    pub u: Matrix,
    pub u_inv: Matrix,
    pub v: Matrix,
    pub v_inv: Matrix,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diagonal.iter().take_while(|&&d| d != 0).count()
    }

    /// Columns of `V` spanning the kernel of the input matrix.
    pub fn kernel_basis(&self) -> Matrix {
        let idx: Vec<usize> = (self.rank()..self.v.cols()).collect();
        self.v.select_columns(&idx)
    }

    /// Solve `M x = b`; `None` when no solution exists.
    pub fn solve(&self, b: &[Elem]) -> Result<Option<Vec<Elem>>, FgError> {
        let ring = &self.ring;
        let y = self.u.apply(b, ring)?;
        let rank = self.rank();
        if y[rank..].iter().any(|&v| v != 0) {
            return Ok(None);
        }
        let mut z = vec![0; self.v.cols()];
        for i in 0..rank {
            if !ring.divides(self.diagonal[i], y[i]) {
                return Ok(None);
            }
            z[i] = ring.div_exact(y[i], self.diagonal[i])?;
        }
        Ok(Some(self.v.apply(&z, ring)?))
    }
}

struct Reducer<'a> {
    ring: &'a CoeffRing,
    a: Matrix,
    u: Matrix,
    u_inv: Matrix,
    v: Matrix,
    v_inv: Matrix,
}

impl Reducer<'_> {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    fn add_row(&mut self, dst: usize, src: usize, c: Elem) -> Result<(), FgError> {
        let ring = self.ring;
        self.a.add_row(dst, src, c, ring)?;
        self.u.add_row(dst, src, c, ring)?;
        self.u_inv.add_col(src, dst, ring.neg(c), ring)
    }

    fn add_col(&mut self, dst: usize, src: usize, c: Elem) -> Result<(), FgError> {
        let ring = self.ring;
        self.a.add_col(dst, src, c, ring)?;
        self.v.add_col(dst, src, c, ring)?;
        self.v_inv.add_row(src, dst, ring.neg(c), ring)
    }

    fn scale_row(&mut self, i: usize, unit: Elem) -> Result<(), FgError> {
        let ring = self.ring;
        let inv = ring.unit_inverse(unit)?;
        self.a.scale_row(i, unit, ring)?;
        self.u.scale_row(i, unit, ring)?;
        self.u_inv.scale_col(i, inv, ring)
    }

    fn min_entry(&self, k: usize) -> Option<(usize, usize)> {
        let mut best: Option<(u128, usize, usize)> = None;
        for i in k..self.a.rows() {
            for j in k..self.a.cols() {
                let v = self.a[(i, j)];
                if v != 0 {
                    let n = self.ring.norm(v);
                    if best.map_or(true, |(b, _, _)| n < b) {
                        best = Some((n, i, j));
                    }
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }

    fn reduce(&mut self) -> Result<(), FgError> {
        let (m, n) = (self.a.rows(), self.a.cols());
        for k in 0..m.min(n) {
            loop {
                let Some((pi, pj)) = self.min_entry(k) else { return Ok(()) };
                self.swap_rows(k, pi);
                self.swap_cols(k, pj);
                let pivot = self.a[(k, k)];
                let mut clean = true;
                for i in k + 1..m {
                    let (q, r) = self.ring.quot_rem(self.a[(i, k)], pivot)?;
                    self.add_row(i, k, self.ring.neg(q))?;
                    clean &= r == 0;
                }
                for j in k + 1..n {
                    let (q, r) = self.ring.quot_rem(self.a[(k, j)], pivot)?;
                    self.add_col(j, k, self.ring.neg(q))?;
                    clean &= r == 0;
                }
                if !clean {
                    continue;
                }
                let bad = (k + 1..m)
                    .find(|&i| (k + 1..n).any(|j| !self.ring.divides(pivot, self.a[(i, j)])));
                match bad {
                    Some(i) => self.add_row(k, i, 1)?,
                    None => break,
                }
            }
            let (unit, _) = self.ring.split_unit(self.a[(k, k)]);
            if unit != 1 {
                let inv = self.ring.unit_inverse(unit)?;
                self.scale_row(k, inv)?;
            }
        }
        Ok(())
    }
}

/// Smith normal form over Z or the truncated p-adic integers.
pub fn smith_normal_form(m: &Matrix, ring: &CoeffRing) -> Result<SmithForm, FgError> {
    let mut red = Reducer {
        ring,
        a: m.map_entries(|v| ring.reduce(v)),
        u: Matrix::identity(m.rows()),
        u_inv: Matrix::identity(m.rows()),
        v: Matrix::identity(m.cols()),
        v_inv: Matrix::identity(m.cols()),
    };
    red.reduce()?;
    let diagonal = (0..m.rows().min(m.cols())).map(|i| red.a[(i, i)]).collect();
    Ok(SmithForm {
        ring: *ring,
        diagonal,
        s: red.a,
        u: red.u,
        u_inv: red.u_inv,
        v: red.v,
        v_inv: red.v_inv,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &Matrix, ring: &CoeffRing) -> SmithForm {
        let snf = smith_normal_form(m, ring).unwrap();
        let lhs = snf.u.mul(m, ring).unwrap().mul(&snf.v, ring).unwrap();
        assert_eq!(lhs, snf.s);
        assert_eq!(snf.u.mul(&snf.u_inv, ring).unwrap(), Matrix::identity(m.rows()));
        assert_eq!(snf.v.mul(&snf.v_inv, ring).unwrap(), Matrix::identity(m.cols()));
        snf
    }

    #[test]
    fn diag_two_three() {
        let m = Matrix::from_rows(2, 2, vec![2, 0, 0, 3]);
        assert_eq!(check(&m, &CoeffRing::Integers).diagonal, vec![1, 6]);
    }

    #[test]
    fn identity_is_fixed() {
        let snf = check(&Matrix::identity(3), &CoeffRing::Integers);
        assert_eq!(snf.u, Matrix::identity(3));
        assert_eq!(snf.v, Matrix::identity(3));
        assert_eq!(snf.diagonal, vec![1, 1, 1]);
    }

    #[test]
    fn padic_single_entry() {
        let ring = CoeffRing::padic(2, 3).unwrap();
        let snf = check(&Matrix::from_rows(1, 1, vec![4]), &ring);
        assert_eq!(snf.diagonal, vec![4]);
        assert_eq!(ring.valuation(4), Some(2));
    }

    #[test]
    fn padic_unit_part_is_stripped() {
        let ring = CoeffRing::padic(3, 4).unwrap();
        let snf = check(&Matrix::from_rows(2, 2, vec![6, 1, 3, 9]), &ring);
        assert_eq!(snf.diagonal, vec![1, 3]); // det = 51 = 3 * 17
    }

    #[test]
    fn rank_deficient() {
        let m = Matrix::from_rows(2, 3, vec![1, 2, 3, 2, 4, 6]);
        let snf = check(&m, &CoeffRing::Integers);
        assert_eq!(snf.rank(), 1);
        let k = snf.kernel_basis();
        assert!(m.mul(&k, &CoeffRing::Integers).unwrap().is_zero());
    }
}
