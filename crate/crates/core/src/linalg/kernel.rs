use super::snf::{snf, SnfDecomposition};
use super::{IntMatrix, LinalgError};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Basis of the integer kernel lattice of `m`, returned as matrix columns.
///
/// Column operations only, tracking the transform: the kernel columns of
/// the unimodular transform are a saturated basis (the quotient of the
/// ambient lattice by the kernel is torsion-free).
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let rows = m.rows();
    let cols = m.cols();
    let mut b: Vec<Vec<BigInt>> = (0..rows)
        .map(|r| (0..cols).map(|c| m.get(r, c).clone()).collect())
        .collect();
    let mut v: Vec<Vec<BigInt>> = (0..cols)
        .map(|r| {
            (0..cols)
                .map(|c| {
                    if r == c {
                        BigInt::from(1)
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect();

    let mut pivot_col = 0usize;
    for row in 0..rows {
        if pivot_col == cols {
            break;
        }
        loop {
            let mut best: Option<(BigInt, usize)> = None;
            for (j, val) in b[row].iter().enumerate().skip(pivot_col) {
                if val.is_zero() {
                    continue;
                }
                let a = val.abs();
                match &best {
                    Some((cur, _)) if *cur <= a => {}
                    _ => best = Some((a, j)),
                }
            }
            let j = match best {
                Some((_, j)) => j,
                None => break,
            };
            if j != pivot_col {
                swap_cols(&mut b, pivot_col, j);
                swap_cols(&mut v, pivot_col, j);
            }
            let mut clear = true;
            for j2 in pivot_col + 1..cols {
                if b[row][j2].is_zero() {
                    continue;
                }
                let q = &b[row][j2] / &b[row][pivot_col];
                if !q.is_zero() {
                    col_sub(&mut b, j2, pivot_col, &q);
                    col_sub(&mut v, j2, pivot_col, &q);
                }
                if !b[row][j2].is_zero() {
                    clear = false;
                }
            }
            if clear {
                pivot_col += 1;
                break;
            }
        }
    }

    let mut out = IntMatrix::zeros(cols, cols - pivot_col);
    for (k, j) in (pivot_col..cols).enumerate() {
        for (r, row) in v.iter().enumerate() {
            out.set(r, k, row[j].clone());
        }
    }
    out
}

fn swap_cols(b: &mut [Vec<BigInt>], a: usize, c: usize) {
    for row in b.iter_mut() {
        row.swap(a, c);
    }
}

fn col_sub(b: &mut [Vec<BigInt>], j: usize, k: usize, q: &BigInt) {
    for row in b.iter_mut() {
        if !row[k].is_zero() {
            let delta = q * &row[k];
            row[j] -= delta;
        }
    }
}

/// Repeated exact solves `B * c = x` against a fixed full-column-rank `B`.
pub struct LatticeSolver {
    dec: SnfDecomposition,
    cols: usize,
}

impl LatticeSolver {
    pub fn new(basis: &IntMatrix) -> Result<Self, LinalgError> {
        let dec = snf(basis);
        if dec.rank() != basis.cols() {
            return Err(LinalgError::DependentColumns);
        }
        Ok(LatticeSolver {
            dec,
            cols: basis.cols(),
        })
    }

    /// Coordinates of `x` in the column lattice, or `NotInLattice`.
    pub fn solve(&self, x: &[BigInt]) -> Result<Vec<BigInt>, LinalgError> {
        if x.len() != self.dec.u.cols() {
            return Err(LinalgError::DimensionMismatch(format!(
                "vector length {} vs {} rows",
                x.len(),
                self.dec.u.cols()
            )));
        }
        let w = self.dec.u.mul_vec(x);
        let mut y = vec![BigInt::zero(); self.cols];
        for (i, wi) in w.iter().enumerate() {
            if i < self.cols {
                let d = self.dec.d.get(i, i);
                if (wi % d).is_zero() {
                    y[i] = wi / d;
                } else {
                    return Err(LinalgError::NotInLattice);
                }
            } else if !wi.is_zero() {
                return Err(LinalgError::NotInLattice);
            }
        }
        Ok(self.dec.v.mul_vec(&y))
    }
}

/// One-shot form of [`LatticeSolver`].
pub fn coords_in_lattice(basis: &IntMatrix, x: &[BigInt]) -> Result<Vec<BigInt>, LinalgError> {
    LatticeSolver::new(basis)?.solve(x)
}

/// Whether `x` lies in the column lattice of an arbitrary matrix `m`.
pub fn in_column_lattice(m: &IntMatrix, x: &[BigInt]) -> bool {
    let dec = snf(m);
    let r = dec.rank();
    let w = dec.u.mul_vec(x);
    w.iter().enumerate().all(|(i, wi)| {
        if i < r {
            (wi % dec.d.get(i, i)).is_zero()
        } else {
            wi.is_zero()
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_identity_is_empty() {
        let k = kernel_basis(&IntMatrix::identity(3));
        assert_eq!(k.cols(), 0);
        assert_eq!(k.rows(), 3);
    }

    #[test]
    fn kernel_of_zero_map_is_everything() {
        let k = kernel_basis(&IntMatrix::zeros(2, 3));
        assert_eq!(k.cols(), 3);
        assert!(
            IntMatrix::from_columns(3, &(0..3).map(|c| k.column(c)).collect::<Vec<_>>())
                .is_unimodular()
        );
    }

    #[test]
    fn kernel_of_sum_functional() {
        let m = IntMatrix::from_rows(vec![vec![1, 1, 1]]);
        let k = kernel_basis(&m);
        assert_eq!(k.cols(), 2);
        for c in 0..2 {
            let col = k.column(c);
            let sum: BigInt = col.iter().sum();
            assert!(sum.is_zero(), "kernel vector must have coordinate sum 0");
            assert!(m.mul_vec(&col).iter().all(|v| v.is_zero()));
        }
    }

    #[test]
    fn coords_identity_and_scaled() {
        let b = IntMatrix::identity(2);
        let x = [BigInt::from(7), BigInt::from(-3)];
        assert_eq!(coords_in_lattice(&b, &x).unwrap(), x.to_vec());

        let b = IntMatrix::from_rows(vec![vec![2], vec![0]]);
        let ok = coords_in_lattice(&b, &[BigInt::from(4), BigInt::zero()]).unwrap();
        assert_eq!(ok, vec![BigInt::from(2)]);
        let err = coords_in_lattice(&b, &[BigInt::from(3), BigInt::zero()]);
        assert_eq!(err, Err(LinalgError::NotInLattice));
        let err = coords_in_lattice(&b, &[BigInt::from(4), BigInt::from(1)]);
        assert_eq!(err, Err(LinalgError::NotInLattice));
    }

    #[test]
    fn solver_rejects_dependent_columns() {
        let b = IntMatrix::from_rows(vec![vec![1, 2], vec![2, 4]]);
        assert!(matches!(
            LatticeSolver::new(&b),
            Err(LinalgError::DependentColumns)
        ));
    }
}
