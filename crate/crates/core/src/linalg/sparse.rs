use super::IntMatrix;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, BTreeSet};

/// Sparse integer matrix for large boundary operators. Elimination runs a
/// unit-pivot (±1) phase with Markowitz fill ordering, then finishes the
/// residue with the dense Smith routine; boundary matrices almost always
/// reduce entirely in the unit phase.
#[derive(Clone, Debug)]
pub struct SparseIntMatrix {
    rows: usize,
    cols: usize,
    by_row: Vec<BTreeMap<usize, BigInt>>,
}

impl SparseIntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseIntMatrix {
            rows,
            cols,
            by_row: vec![BTreeMap::new(); rows],
        }
    }

    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, BigInt)>,
    ) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "triplet out of range");
            let e = m.by_row[r].entry(c).or_insert_with(BigInt::zero);
            *e += v;
            if e.is_zero() {
                m.by_row[r].remove(&c);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.by_row.iter().map(|r| r.len()).sum()
    }

    pub fn get(&self, r: usize, c: usize) -> BigInt {
        self.by_row[r].get(&c).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn row(&self, r: usize) -> &BTreeMap<usize, BigInt> {
        &self.by_row[r]
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        self.by_row
            .iter()
            .map(|row| {
                let mut acc = BigInt::zero();
                for (c, a) in row {
                    if !v[*c].is_zero() {
                        acc += a * &v[*c];
                    }
                }
                acc
            })
            .collect()
    }

    pub fn to_dense(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows, self.cols);
        for (r, row) in self.by_row.iter().enumerate() {
            for (c, v) in row {
                m.set(r, *c, v.clone());
            }
        }
        m
    }

    pub fn rank(&self) -> usize {
        let (units, residual) = self.clone().eliminate_units();
        units + residual.rank()
    }

    /// Nonzero invariant factors in divisibility order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let (units, residual) = self.clone().eliminate_units();
        let mut factors = vec![BigInt::one(); units];
        factors.extend(super::snf::diagonal(&residual));
        factors
    }

    /// Torsion invariant factors (those exceeding 1).
    pub fn torsion_factors(&self) -> Vec<BigInt> {
        self.invariant_factors()
            .into_iter()
            .filter(|f| !f.is_one())
            .collect()
    }

    /// Runs the unit-pivot phase; returns how many ±1 pivots were
    /// eliminated and the remaining submatrix, densely.
    fn eliminate_units(mut self) -> (usize, IntMatrix) {
        let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); self.cols];
        for (r, row) in self.by_row.iter().enumerate() {
            for c in row.keys() {
                col_rows[*c].insert(r);
            }
        }
        let mut row_active = vec![true; self.rows];
        let mut col_active = vec![true; self.cols];
        let mut units = 0usize;

        loop {
            let mut best: Option<(usize, usize, usize)> = None; // (cost, r, c)
            'scan: for (r, row) in self.by_row.iter().enumerate() {
                if !row_active[r] {
                    continue;
                }
                for (c, v) in row {
                    if !col_active[*c] || !v.magnitude().is_one() {
                        continue;
                    }
                    let cost = (row.len() - 1) * (col_rows[*c].len() - 1);
                    if best.as_ref().is_none_or(|(bc, _, _)| cost < *bc) {
                        best = Some((cost, r, *c));
                        if cost == 0 {
                            break 'scan;
                        }
                    }
                }
            }
            let (_, pr, pc) = match best {
                Some(b) => b,
                None => break,
            };

            let pivot_row = std::mem::take(&mut self.by_row[pr]);
            let sign = pivot_row[&pc].clone(); // ±1
            let targets: Vec<usize> = col_rows[pc]
                .iter()
                .copied()
                .filter(|&r| r != pr && row_active[r])
                .collect();
            for r in targets {
                let coeff = self.by_row[r]
                    .get(&pc)
                    .cloned()
                    .unwrap_or_else(BigInt::zero);
                if coeff.is_zero() {
                    continue;
                }
                let q = &coeff * &sign; // coeff / sign for sign = ±1
                for (c, v) in &pivot_row {
                    if !col_active[*c] {
                        continue;
                    }
                    let e = self.by_row[r].entry(*c).or_insert_with(BigInt::zero);
                    *e -= &q * v;
                    if e.is_zero() {
                        self.by_row[r].remove(c);
                        col_rows[*c].remove(&r);
                    } else {
                        col_rows[*c].insert(r);
                    }
                }
            }
            for c in pivot_row.keys() {
                col_rows[*c].remove(&pr);
            }
            row_active[pr] = false;
            col_active[pc] = false;
            units += 1;
        }

        let live_rows: Vec<usize> = (0..self.rows).filter(|&r| row_active[r]).collect();
        let live_cols: Vec<usize> = (0..self.cols).filter(|&c| col_active[c]).collect();
        let col_pos: BTreeMap<usize, usize> =
            live_cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut residual = IntMatrix::zeros(live_rows.len(), live_cols.len());
        for (i, &r) in live_rows.iter().enumerate() {
            for (c, v) in &self.by_row[r] {
                if let Some(&j) = col_pos.get(c) {
                    residual.set(i, j, v.clone());
                }
            }
        }
        (units, residual)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::snf;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn sparse_matches_dense_on_fixed_cases() {
        let cases = vec![
            vec![vec![2, 4], vec![6, 8]],
            vec![vec![1, 0, 0], vec![0, 2, 0], vec![0, 0, 6]],
            vec![vec![0, 0], vec![0, 0]],
            vec![vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]],
            vec![vec![2, 3], vec![5, 7]],
        ];
        for rows in cases {
            let dense = IntMatrix::from_rows(rows.clone());
            let sparse = SparseIntMatrix::from_triplets(
                dense.rows(),
                dense.cols(),
                rows.iter()
                    .enumerate()
                    .flat_map(|(r, row)| row.iter().enumerate().map(move |(c, &v)| (r, c, big(v)))),
            );
            let want = snf::diagonal(&dense);
            assert_eq!(sparse.invariant_factors(), want, "case {rows:?}");
            assert_eq!(sparse.rank(), want.len());
        }
    }

    #[test]
    fn triplets_accumulate_and_cancel() {
        let m = SparseIntMatrix::from_triplets(
            2,
            2,
            vec![(0, 0, big(1)), (0, 0, big(-1)), (1, 1, big(3))],
        );
        assert_eq!(m.nnz(), 1);
        assert_eq!(m.get(0, 0), BigInt::zero());
        assert_eq!(m.get(1, 1), big(3));
    }
}
