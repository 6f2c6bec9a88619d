use super::IntMatrix;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Unimodular factorization `U * M * V = D` with `D` diagonal,
/// nonnegative, and satisfying the divisibility chain d1 | d2 | ...
#[derive(Clone, Debug)]
pub struct SnfDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SnfDecomposition {
    /// Nonzero diagonal entries, in chain order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let n = self.d.rows().min(self.d.cols());
        (0..n)
            .map(|i| self.d.get(i, i).clone())
            .take_while(|v| !v.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

pub fn snf(m: &IntMatrix) -> SnfDecomposition {
    let (b, u, v) = engine(m, true, true);
    SnfDecomposition {
        u: to_matrix(&u.expect("u tracked"), m.rows(), m.rows()),
        d: to_matrix(&b, m.rows(), m.cols()),
        v: to_matrix(&v.expect("v tracked"), m.cols(), m.cols()),
    }
}

fn to_matrix(w: &Work, rows: usize, cols: usize) -> IntMatrix {
    let mut m = IntMatrix::zeros(rows, cols);
    for (i, row) in w.iter().enumerate() {
        for (j, val) in row.iter().enumerate() {
            if !val.is_zero() {
                m.set(i, j, val.clone());
            }
        }
    }
    m
}

/// Diagonal of the Smith form without transform tracking.
pub fn diagonal(m: &IntMatrix) -> Vec<BigInt> {
    let (b, _, _) = engine(m, false, false);
    let n = m.rows().min(m.cols());
    (0..n)
        .map(|i| b[i][i].clone())
        .take_while(|v| !v.is_zero())
        .collect()
}

pub fn diagonal_rank(m: &IntMatrix) -> usize {
    diagonal(m).len()
}

/// Smith form with only the row transform: `U * M * V = D` for some
/// untracked `V`. Enough for cokernel coordinates.
pub fn snf_row_transform(m: &IntMatrix) -> (Vec<BigInt>, IntMatrix) {
    let (b, u, _) = engine(m, true, false);
    let n = m.rows().min(m.cols());
    let diag = (0..n)
        .map(|i| b[i][i].clone())
        .take_while(|v| !v.is_zero())
        .collect();
    (diag, to_matrix(&u.expect("u tracked"), m.rows(), m.rows()))
}

type Work = Vec<Vec<BigInt>>;

/// Brings a copy of `m` to Smith form by unimodular row and column
/// operations. Pivot rule: smallest nonzero absolute value in the
/// trailing submatrix, ties broken by lowest (row, col).
fn engine(m: &IntMatrix, want_u: bool, want_v: bool) -> (Work, Option<Work>, Option<Work>) {
    let rows = m.rows();
    let cols = m.cols();
    let mut b: Work = (0..rows)
        .map(|r| (0..cols).map(|c| m.get(r, c).clone()).collect())
        .collect();
    let mut u: Option<Work> = want_u.then(|| ident(rows));
    let mut v: Option<Work> = want_v.then(|| ident(cols));

    for k in 0..rows.min(cols) {
        if find_pivot(&b, k).is_none() {
            break;
        }
        while let Some((pr, pc)) = find_pivot(&b, k) {
            if pr != k {
                b.swap(k, pr);
                if let Some(u) = u.as_mut() {
                    u.swap(k, pr);
                }
            }
            if pc != k {
                swap_cols(&mut b, k, pc);
                if let Some(v) = v.as_mut() {
                    swap_cols(v, k, pc);
                }
            }

            // Clear column k below the pivot.
            let mut residue = false;
            for i in k + 1..rows {
                if b[i][k].is_zero() {
                    continue;
                }
                let q = &b[i][k] / &b[k][k];
                if !q.is_zero() {
                    row_sub(&mut b, i, k, &q, k);
                    if let Some(u) = u.as_mut() {
                        row_sub(u, i, k, &q, 0);
                    }
                }
                if !b[i][k].is_zero() {
                    residue = true;
                }
            }
            if residue {
                continue; // a remainder smaller than the pivot exists
            }

            // Clear row k to the right of the pivot; column k stays clear
            // because it is zero below the pivot.
            let mut residue = false;
            for j in k + 1..cols {
                if b[k][j].is_zero() {
                    continue;
                }
                let q = &b[k][j] / &b[k][k];
                if !q.is_zero() {
                    col_sub(&mut b, j, k, &q, k);
                    if let Some(v) = v.as_mut() {
                        col_sub(v, j, k, &q, 0);
                    }
                }
                if !b[k][j].is_zero() {
                    residue = true;
                }
            }
            if residue {
                continue;
            }

            // Pivot must divide the trailing submatrix for the chain.
            match find_nondivisible(&b, k) {
                Some(i) => {
                    row_add(&mut b, k, i, k);
                    if let Some(u) = u.as_mut() {
                        row_add(u, k, i, 0);
                    }
                }
                None => break,
            }
        }
        if b[k][k].is_negative() {
            for x in b[k].iter_mut() {
                *x = -std::mem::take(x);
            }
            if let Some(u) = u.as_mut() {
                for x in u[k].iter_mut() {
                    *x = -std::mem::take(x);
                }
            }
        }
    }
    (b, u, v)
}

fn ident(n: usize) -> Work {
    (0..n)
        .map(|r| {
            (0..n)
                .map(|c| {
                    if r == c {
                        BigInt::from(1)
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect()
}

fn find_pivot(b: &Work, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(BigInt, usize, usize)> = None;
    for (i, row) in b.iter().enumerate().skip(k) {
        for (j, val) in row.iter().enumerate().skip(k) {
            if val.is_zero() {
                continue;
            }
            let a = val.abs();
            match &best {
                Some((cur, _, _)) if *cur <= a => {}
                _ => best = Some((a, i, j)),
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

fn find_nondivisible(b: &Work, k: usize) -> Option<usize> {
    let d = &b[k][k];
    for (i, row) in b.iter().enumerate().skip(k + 1) {
        for val in row.iter().skip(k + 1) {
            if !(val % d).is_zero() {
                return Some(i);
            }
        }
    }
    None
}

/// row_i -= q * row_k, starting from column `from`.
fn row_sub(b: &mut Work, i: usize, k: usize, q: &BigInt, from: usize) {
    let (ri, rk) = two_rows(b, i, k);
    for (x, y) in ri.iter_mut().zip(rk.iter()).skip(from) {
        if !y.is_zero() {
            *x -= q * y;
        }
    }
}

/// row_k += row_i, starting from column `from`.
fn row_add(b: &mut Work, k: usize, i: usize, from: usize) {
    let (rk, ri) = two_rows(b, k, i);
    for (x, y) in rk.iter_mut().zip(ri.iter()).skip(from) {
        if !y.is_zero() {
            *x += y;
        }
    }
}

/// col_j -= q * col_k, starting from row `from`.
fn col_sub(b: &mut Work, j: usize, k: usize, q: &BigInt, from: usize) {
    for row in b.iter_mut().skip(from) {
        if !row[k].is_zero() {
            let delta = q * &row[k];
            row[j] -= delta;
        }
    }
}

fn swap_cols(b: &mut Work, a: usize, c: usize) {
    for row in b.iter_mut() {
        row.swap(a, c);
    }
}

fn two_rows(b: &mut Work, i: usize, j: usize) -> (&mut Vec<BigInt>, &Vec<BigInt>) {
    assert_ne!(i, j);
    if i < j {
        let (lo, hi) = b.split_at_mut(j);
        (&mut lo[i], &hi[0])
    } else {
        let (lo, hi) = b.split_at_mut(i);
        (&mut hi[0], &lo[j])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn check(m: &IntMatrix) -> SnfDecomposition {
        let s = snf(m);
        assert_eq!(s.u.mul(m).mul(&s.v), s.d, "U*M*V != D");
        assert!(s.u.is_unimodular(), "U not unimodular");
        assert!(s.v.is_unimodular(), "V not unimodular");
        let factors = s.invariant_factors();
        for w in factors.windows(2) {
            assert!((&w[1] % &w[0]).is_zero(), "divisibility chain broken");
        }
        for f in &factors {
            assert!(f.is_positive());
        }
        s
    }

    #[test]
    fn snf_identity() {
        let s = check(&IntMatrix::identity(3));
        assert_eq!(s.d, IntMatrix::identity(3));
    }

    #[test]
    fn snf_zero() {
        let s = check(&IntMatrix::zeros(2, 3));
        assert!(s.d.is_zero());
        assert_eq!(s.rank(), 0);
    }

    #[test]
    fn snf_two_by_two() {
        // Hand reduction: [[2,4],[6,8]] -> row2 -= 3*row1 -> [[2,4],[0,-4]]
        // -> col2 -= 2*col1 -> [[2,0],[0,-4]] -> diag(2,4).
        let m = IntMatrix::from_rows(vec![vec![2, 4], vec![6, 8]]);
        let s = check(&m);
        assert_eq!(
            s.invariant_factors(),
            vec![BigInt::from(2), BigInt::from(4)]
        );
    }

    #[test]
    fn snf_needs_divisibility_fix() {
        let m = IntMatrix::from_rows(vec![vec![2, 0], vec![0, 3]]);
        let s = check(&m);
        assert_eq!(s.invariant_factors(), vec![BigInt::one(), BigInt::from(6)]);
    }

    #[test]
    fn degenerate_dimensions() {
        for m in [
            IntMatrix::zeros(0, 3),
            IntMatrix::zeros(3, 0),
            IntMatrix::zeros(0, 0),
        ] {
            let s = snf(&m);
            assert_eq!(s.rank(), 0);
            assert_eq!(s.d.rows(), m.rows());
            assert_eq!(s.d.cols(), m.cols());
            let k = crate::linalg::kernel_basis(&m);
            assert_eq!(k.cols(), m.cols());
        }
    }

    #[test]
    fn row_transform_matches_full() {
        let m = IntMatrix::from_rows(vec![vec![4, 6, 2], vec![2, 8, 10], vec![0, 12, 6]]);
        let full = snf(&m);
        let (diag, _u) = snf_row_transform(&m);
        assert_eq!(diag, full.invariant_factors());
    }
}
