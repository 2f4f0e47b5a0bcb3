//! Smith normal form of small integer matrices with overflow-checked
//! arithmetic.

use crate::error::Overflow;

/// Dense row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(rows: &[Vec<i64>], cols: usize) -> Self {
        let mut m = IntMatrix::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix row {i}");
            for (j, &v) in row.iter().enumerate() {
                m[(i, j)] = v;
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

    pub fn checked_mul(&self, other: &IntMatrix) -> Result<IntMatrix, Overflow> {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = 0i64;
                for k in 0..self.cols {
                    let p = self[(i, k)].checked_mul(other[(k, j)]).ok_or(Overflow)?;
                    acc = acc.checked_add(p).ok_or(Overflow)?;
                }
                out[(i, j)] = acc;
            }
        }
        Ok(out)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += factor * row[src]
    fn add_row(&mut self, dst: usize, src: usize, factor: i64) -> Result<(), Overflow> {
        for j in 0..self.cols {
            let v = self[(src, j)].checked_mul(factor).ok_or(Overflow)?;
            self[(dst, j)] = self[(dst, j)].checked_add(v).ok_or(Overflow)?;
        }
        Ok(())
    }

    /// col[dst] += factor * col[src]
    fn add_col(&mut self, dst: usize, src: usize, factor: i64) -> Result<(), Overflow> {
        for i in 0..self.rows {
            let v = self[(i, src)].checked_mul(factor).ok_or(Overflow)?;
            self[(i, dst)] = self[(i, dst)].checked_add(v).ok_or(Overflow)?;
        }
        Ok(())
    }

    fn negate_row(&mut self, r: usize) -> Result<(), Overflow> {
        for j in 0..self.cols {
            self[(r, j)] = self[(r, j)].checked_neg().ok_or(Overflow)?;
        }
        Ok(())
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

/// `diagonal == left * input * right` with `left`, `right` unimodular.
#[derive(Clone, Debug)]
pub struct SmithForm {
    /// Diagonal entries `d_0 | d_1 | ...`, nonnegative, length `min(rows, cols)`.
    pub diagonal: Vec<i64>,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|&&d| d != 0).count()
    }
}

pub fn smith_normal_form(input: &IntMatrix) -> Result<SmithForm, Overflow> {
    let (m, n) = (input.rows, input.cols);
    let mut a = input.clone();
    let mut left = IntMatrix::identity(m);
    let mut right = IntMatrix::identity(n);

    for t in 0..m.min(n) {
        'pivot: loop {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    let v = a[(i, j)];
                    if v != 0
                        && best.is_none_or(|(bi, bj)| v.unsigned_abs() < a[(bi, bj)].unsigned_abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break 'pivot;
            };
            a.swap_rows(t, pi);
            left.swap_rows(t, pi);
            a.swap_cols(t, pj);
            right.swap_cols(t, pj);

            let p = a[(t, t)];
            let mut dirty = false;
            for i in t + 1..m {
                let q = a[(i, t)] / p;
                if q != 0 {
                    a.add_row(i, t, -q)?;
                    left.add_row(i, t, -q)?;
                }
                dirty |= a[(i, t)] != 0;
            }
            for j in t + 1..n {
                let q = a[(t, j)] / p;
                if q != 0 {
                    a.add_col(j, t, -q)?;
                    right.add_col(j, t, -q)?;
                }
                dirty |= a[(t, j)] != 0;
            }
            if dirty {
                continue 'pivot;
            }

            // Enforce divisibility of the remaining block by the pivot.
            let mut offender = None;
            'scan: for i in t + 1..m {
                for j in t + 1..n {
                    if a[(i, j)] % p != 0 {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => {
                    a.add_row(t, i, 1)?;
                    left.add_row(t, i, 1)?;
                }
                None => break 'pivot,
            }
        }
        if a[(t, t)] < 0 {
            a.negate_row(t)?;
            left.negate_row(t)?;
        }
    }

    let diagonal = (0..m.min(n)).map(|i| a[(i, i)]).collect();
    Ok(SmithForm {
        diagonal,
        left,
        right,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn det(m: &IntMatrix) -> i128 {
        assert_eq!(m.rows(), m.cols());
        let n = m.rows();
        if n == 0 {
            return 1;
        }
        (0..n)
            .map(|j| {
                let minor = IntMatrix::from_rows(
                    &(1..n)
                        .map(|i| (0..n).filter(|&c| c != j).map(|c| m[(i, c)]).collect())
                        .collect::<Vec<_>>(),
                    n - 1,
                );
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[(0, j)] as i128 * det(&minor)
            })
            .sum()
    }

    #[test]
    fn family_relation_matrix() {
        let m = IntMatrix::from_rows(&[vec![-1, 1, 0], vec![-1, 0, 1]], 3);
        let s = smith_normal_form(&m).unwrap();
        assert_eq!(s.diagonal, vec![1, 1]);
        assert_eq!(s.rank(), 2);
    }

    #[test]
    fn torsion_example() {
        let m = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]], 3);
        let s = smith_normal_form(&m).unwrap();
        assert_eq!(s.diagonal, vec![2, 6, 12]);
    }

    #[test]
    fn overflow_is_reported() {
        let m = IntMatrix::from_rows(&[vec![i64::MAX, 3], vec![i64::MIN, 7]], 2);
        assert_eq!(smith_normal_form(&m).unwrap_err(), Overflow);
    }

    proptest! {
        #[test]
        fn smith_form_is_correct(rows in 1usize..4, cols in 1usize..4, seed in prop::collection::vec(-9i64..10, 16)) {
            let data: Vec<Vec<i64>> = (0..rows).map(|i| (0..cols).map(|j| seed[i * 4 + j]).collect()).collect();
            let m = IntMatrix::from_rows(&data, cols);
            let s = smith_normal_form(&m).unwrap();
            let product = s.left.checked_mul(&m).unwrap().checked_mul(&s.right).unwrap();
            for i in 0..rows {
                for j in 0..cols {
                    let want = if i == j { s.diagonal[i] } else { 0 };
                    prop_assert_eq!(product[(i, j)], want);
                }
            }
            prop_assert_eq!(det(&s.left).abs(), 1);
            prop_assert_eq!(det(&s.right).abs(), 1);
            for w in s.diagonal.windows(2) {
                prop_assert!(w[0] >= 0);
                if w[0] == 0 {
                    prop_assert_eq!(w[1], 0);
                } else {
                    prop_assert_eq!(w[1] % w[0], 0);
                }
            }
        }
    }
}
