use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{FieldError, Rational};

/// Dense row-major matrix over ℚ.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl ExactMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self, FieldError> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(FieldError::Shape { rows, cols, len: entries.len() });
        }
        Ok(ExactMatrix { rows, cols, entries })
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, FieldError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(FieldError::Shape { rows: r, cols: c, len: rows.iter().map(Vec::len).sum() });
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, entries: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn diagonal(diag: &[Rational]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, d) in diag.iter().enumerate() {
            m.set(i, i, d.clone());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix, FieldError> {
        if self.cols != other.rows {
            return Err(FieldError::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let s: Rational = (0..self.cols).map(|k| self.get(i, k) * other.get(k, j)).sum();
                out.set(i, j, s);
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>, FieldError> {
        if self.cols != v.len() {
            return Err(FieldError::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Rational::is_zero)
    }

    pub fn determinant(&self) -> Result<Rational, FieldError> {
        if !self.is_square() {
            return Err(FieldError::DimensionMismatch { expected: self.rows, found: self.cols });
        }
        let echelon = FractionFree::eliminate(self, None);
        if echelon.rank < self.rows {
            return Ok(Rational::zero());
        }
        // The last Bareiss pivot is the determinant of the row-scaled matrix.
        let last = echelon.rows[self.rows - 1][self.cols - 1].clone();
        let sign = if echelon.swaps % 2 == 0 { 1 } else { -1 };
        Ok(Rational::from_big(last * sign) / &echelon.row_scale)
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            write!(f, "{}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Outcome of an exact linear solve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearSolution {
    Unique(Vec<Rational>),
    /// Consistent but rank deficient; `particular` sets every free variable to zero.
    Underdetermined { rank: usize, particular: Vec<Rational> },
    /// Some row reduces to `0 = nonzero`.
    NoSolution { rank: usize },
}

/// Integer echelon form of `[A | b]` after fraction-free (Bareiss) elimination.
struct FractionFree {
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
    rank: usize,
    swaps: usize,
    /// Product of the per-row integer scalings applied before elimination.
    row_scale: Rational,
}

impl FractionFree {
    /// Clears denominators row by row, then eliminates over ℤ. With `rhs`
    /// present the augmented column is carried along but never pivoted on.
    fn eliminate(a: &ExactMatrix, rhs: Option<&[Rational]>) -> FractionFree {
        let n = a.rows;
        let m = a.cols;
        let mut row_scale = Rational::one();
        let mut rows: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                let mut vals: Vec<Rational> = a.row(i).to_vec();
                vals.push(rhs.map_or_else(Rational::zero, |b| b[i].clone()));
                let l = vals.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
                row_scale *= &Rational::from_big(l.clone());
                vals.iter()
                    .map(|v| v.numer() * (&l / v.denom()))
                    .collect()
            })
            .collect();

        let mut prev = BigInt::one();
        let mut r = 0;
        let mut swaps = 0;
        let mut pivots = Vec::new();
        for c in 0..m {
            if r == n {
                break;
            }
            let Some(p) = (r..n).find(|&i| !rows[i][c].is_zero()) else {
                continue;
            };
            if p != r {
                rows.swap(p, r);
                swaps += 1;
            }
            for i in r + 1..n {
                for j in c + 1..=m {
                    let num = &rows[r][c] * &rows[i][j] - &rows[i][c] * &rows[r][j];
                    let (quo, rem) = num.div_rem(&prev);
                    assert!(rem.is_zero(), "Bareiss step must divide exactly");
                    rows[i][j] = quo;
                }
                rows[i][c] = BigInt::zero();
            }
            prev = rows[r][c].clone();
            pivots.push(c);
            r += 1;
        }
        FractionFree { rows, pivots, rank: r, swaps, row_scale }
    }
}

/// Solves `A x = b` exactly by fraction-free Gaussian elimination.
pub fn linear_solve(a: &ExactMatrix, b: &[Rational]) -> Result<LinearSolution, FieldError> {
    if a.rows != b.len() {
        return Err(FieldError::DimensionMismatch { expected: a.rows, found: b.len() });
    }
    let ff = FractionFree::eliminate(a, Some(b));
    let m = a.cols;
    if ff.rows[ff.rank..].iter().any(|row| !row[m].is_zero()) {
        return Ok(LinearSolution::NoSolution { rank: ff.rank });
    }
    let mut x = vec![Rational::zero(); m];
    for (k, &c) in ff.pivots.iter().enumerate().rev() {
        let row = &ff.rows[k];
        let mut acc = Rational::from_big(row[m].clone());
        for j in c + 1..m {
            if !row[j].is_zero() {
                acc -= &(Rational::from_big(row[j].clone()) * &x[j]);
            }
        }
        x[c] = acc / Rational::from_big(row[c].clone());
    }
    if ff.rank < m {
        Ok(LinearSolution::Underdetermined { rank: ff.rank, particular: x })
    } else {
        Ok(LinearSolution::Unique(x))
    }
}

/// Sylvester inertia of a symmetric matrix: counts of negative, positive and zero squares.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Inertia {
    pub negative: usize,
    pub positive: usize,
    pub zero: usize,
}

impl ExactMatrix {
    /// Inertia by symmetric Gaussian elimination (congruence `A ↦ PᵀAP`) over ℚ.
    pub fn inertia(&self) -> Result<Inertia, FieldError> {
        if !self.is_symmetric() {
            return Err(FieldError::NotSymmetric);
        }
        let n = self.rows;
        let mut a: Vec<Vec<Rational>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut out = Inertia { negative: 0, positive: 0, zero: 0 };
        for k in 0..n {
            if a[k][k].is_zero() {
                if let Some(p) = (k + 1..n).find(|&i| !a[i][i].is_zero()) {
                    a.swap(k, p);
                    for row in a.iter_mut() {
                        row.swap(k, p);
                    }
                } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                    // a_kk = 0 = a_jj: adding e_j to e_k makes the new a_kk = 2 a_kj.
                    for i in 0..n {
                        let v = a[j][i].clone();
                        a[k][i] += &v;
                    }
                    for i in 0..n {
                        let v = a[i][j].clone();
                        a[i][k] += &v;
                    }
                }
            }
            let pivot = a[k][k].clone();
            match pivot.signum() {
                0 => {
                    // Row k vanishes beyond the diagonal: a null direction.
                    out.zero += 1;
                    continue;
                }
                s if s < 0 => out.negative += 1,
                _ => out.positive += 1,
            }
            for i in k + 1..n {
                if a[i][k].is_zero() {
                    continue;
                }
                let factor = &a[i][k] / &pivot;
                for j in k..n {
                    let v = &factor * &a[k][j];
                    a[i][j] -= &v;
                }
                for j in k..n {
                    let v = &factor * &a[j][k];
                    a[j][i] -= &v;
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_field::q;

    fn col(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| q(x, 1)).collect()
    }

    #[test]
    fn identity_system() {
        let sol = linear_solve(&ExactMatrix::identity(3), &col(&[1, 2, 3])).unwrap();
        assert_eq!(sol, LinearSolution::Unique(col(&[1, 2, 3])));
    }

    #[test]
    fn scalar_division() {
        let a = ExactMatrix::from_rows(vec![col(&[2])]).unwrap();
        assert_eq!(linear_solve(&a, &col(&[1])).unwrap(), LinearSolution::Unique(vec![q(1, 2)]));
    }

    #[test]
    fn inconsistent_rows() {
        let a = ExactMatrix::from_rows(vec![col(&[1, 1]), col(&[2, 2])]).unwrap();
        assert!(matches!(linear_solve(&a, &col(&[1, 3])).unwrap(), LinearSolution::NoSolution { rank: 1 }));
    }

    #[test]
    fn rank_deficiency_is_reported() {
        let a = ExactMatrix::from_rows(vec![col(&[1, 1]), col(&[2, 2])]).unwrap();
        match linear_solve(&a, &col(&[1, 2])).unwrap() {
            LinearSolution::Underdetermined { rank, particular } => {
                assert_eq!(rank, 1);
                assert_eq!(a.mul_vec(&particular).unwrap(), col(&[1, 2]));
            }
            other => panic!("expected underdetermined, got {other:?}"),
        }
    }

    #[test]
    fn overdetermined_consistent() {
        let a = ExactMatrix::from_rows(vec![
            vec![q(1, 2), q(0, 1)],
            vec![q(0, 1), q(3, 1)],
            vec![q(1, 1), q(1, 1)],
        ])
        .unwrap();
        let b = vec![q(1, 4), q(1, 1), q(5, 6)];
        assert_eq!(linear_solve(&a, &b).unwrap(), LinearSolution::Unique(vec![q(1, 2), q(1, 3)]));
    }

    #[test]
    fn rhs_length_mismatch() {
        assert!(linear_solve(&ExactMatrix::identity(2), &col(&[1])).is_err());
    }

    #[test]
    fn determinants() {
        let a = ExactMatrix::from_rows(vec![
            vec![q(0, 1), q(1, 2), q(2, 1)],
            vec![q(1, 1), q(0, 1), q(0, 1)],
            vec![q(3, 1), q(1, 1), q(1, 3)],
        ])
        .unwrap();
        // cofactor expansion along row 2: -1 * (1/2 * 1/3 - 2 * 1) = 11/6
        assert_eq!(a.determinant().unwrap(), q(11, 6));
        let sing = ExactMatrix::from_rows(vec![col(&[1, 2]), col(&[2, 4])]).unwrap();
        assert_eq!(sing.determinant().unwrap(), Rational::zero());
        assert_eq!(ExactMatrix::identity(4).determinant().unwrap(), q(1, 1));
    }

    #[test]
    fn inertia_examples() {
        let m = |rows: Vec<Vec<i64>>| {
            ExactMatrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(Rational::from_int).collect()).collect())
                .unwrap()
        };
        let i = |n, p, z| Inertia { negative: n, positive: p, zero: z };
        assert_eq!(ExactMatrix::identity(3).inertia().unwrap(), i(0, 3, 0));
        assert_eq!(m(vec![vec![0, -1, 0], vec![-1, 0, 0], vec![0, 0, 1]]).inertia().unwrap(), i(1, 2, 0));
        assert_eq!(m(vec![vec![0, 4, 0, 0], vec![4, 0, 0, 0], vec![0, 0, 8, 0], vec![0, 0, 0, 0]]).inertia().unwrap(), i(1, 2, 1));
        assert_eq!(m(vec![vec![1, 1], vec![1, 1]]).inertia().unwrap(), i(0, 1, 1));
        assert_eq!(m(vec![vec![-2, 0, 0], vec![0, -2, 0], vec![0, 0, -2]]).inertia().unwrap(), i(3, 0, 0));
        assert_eq!(m(vec![vec![1, 2], vec![2, 1]]).inertia().unwrap(), i(1, 1, 0));
        assert!(m(vec![vec![1, 2], vec![3, 1]]).inertia().is_err());
    }
}
