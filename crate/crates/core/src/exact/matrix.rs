use num_traits::{One, Zero};

use super::{rat, Rational};

/// Dense matrix of exact rationals, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<Rational>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "row length mismatch");
            data.extend(r);
        }
        RatMatrix { rows: n, cols, data }
    }

    pub fn from_int_rows<R: AsRef<[i64]>>(cols: usize, rows: &[R]) -> Self {
        Self::from_rows(
            cols,
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&x| rat(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    /// Appends a row, returning a new matrix.
    pub fn with_row(&self, row: &[Rational]) -> Self {
        assert_eq!(row.len(), self.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(row);
        RatMatrix {
            rows: self.rows + 1,
            cols: self.cols,
            data,
        }
    }

    /// Reduced row-echelon form with zero rows dropped. Two matrices with the
    /// same row space have identical rref, so this is the canonical key of a
    /// subspace.
    pub fn rref(&self) -> RatMatrix {
        self.rref_with_pivots().0
    }

    pub fn rref_with_pivots(&self) -> (RatMatrix, Vec<usize>) {
        let mut m: Vec<Vec<Rational>> = self.row_vecs();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == m.len() {
                break;
            }
            let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            let inv = m[r][c].recip();
            for x in m[r].iter_mut() {
                *x *= &inv;
            }
            for i in 0..m.len() {
                if i != r && !m[i][c].is_zero() {
                    let f = m[i][c].clone();
                    for j in c..self.cols {
                        let d = &f * &m[r][j];
                        m[i][j] -= d;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        m.truncate(r);
        (RatMatrix::from_rows(self.cols, m), pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref_with_pivots().1.len()
    }

    /// Basis of the right null space `{x : M x = 0}`, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref_with_pivots();
        let mut basis = Vec::new();
        let mut pi = 0;
        for free in 0..self.cols {
            if pi < pivots.len() && pivots[pi] == free {
                pi += 1;
                continue;
            }
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.get(row, free).clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Some solution of `M x = b`, if one exists.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(b.len(), self.rows);
        let aug = RatMatrix::from_rows(
            self.cols + 1,
            (0..self.rows)
                .map(|i| {
                    let mut row = self.row(i).to_vec();
                    row.push(b[i].clone());
                    row
                })
                .collect(),
        );
        let (r, pivots) = aug.rref_with_pivots();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(row, self.cols).clone();
        }
        Some(x)
    }

    /// Row-space membership. Requires `self` to be in rref.
    pub fn rref_contains(&self, v: &[Rational]) -> bool {
        let mut w = v.to_vec();
        for r in 0..self.rows {
            let row = self.row(r);
            let Some(p) = row.iter().position(|x| !x.is_zero()) else {
                continue;
            };
            if !w[p].is_zero() {
                let f = w[p].clone();
                for (wj, rj) in w.iter_mut().zip(row) {
                    *wj -= &f * rj;
                }
            }
        }
        w.iter().all(Zero::is_zero)
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Vec<Rational> {
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(x)
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }
}
