use crate::exact_field::{vec_is_zero, ExactMatrix, FieldError, QuadExt, Rational};

/// Structure constants `c^k_{ij}` of an `n`-dimensional algebra.
///
/// Only the pairs `i < j` are stored; `[e_j, e_i] = -[e_i, e_j]` and
/// `[e_i, e_i] = 0` are synthesized on read.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BracketTable {
    dim: usize,
    upper: Vec<Vec<Rational>>,
}

/// Nonzero cyclic sum `[[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct JacobiResidual {
    pub triple: (usize, usize, usize),
    pub residual: Vec<Rational>,
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct JacobiReport {
    pub residuals: Vec<JacobiResidual>,
}

impl JacobiReport {
    pub fn is_ok(&self) -> bool {
        self.residuals.is_empty()
    }
}

fn pair_index(dim: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < dim);
    // pairs (0,1), (0,2), ..., (0,n-1), (1,2), ...
    i * dim - i * (i + 1) / 2 + (j - i - 1)
}

impl BracketTable {
    /// The abelian algebra of dimension `dim`.
    pub fn zero(dim: usize) -> Self {
        let pairs = dim * dim.saturating_sub(1) / 2;
        BracketTable { dim, upper: vec![vec![Rational::zero(); dim]; pairs] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Sets `[e_i, e_j] = value`; the reversed pair is stored negated.
    pub fn set(&mut self, i: usize, j: usize, value: Vec<Rational>) -> Result<(), FieldError> {
        if value.len() != self.dim {
            return Err(FieldError::DimensionMismatch { expected: self.dim, found: value.len() });
        }
        if i == j || i >= self.dim || j >= self.dim {
            return Err(FieldError::DimensionMismatch { expected: self.dim, found: i.max(j) });
        }
        if i < j {
            self.upper[pair_index(self.dim, i, j)] = value;
        } else {
            self.upper[pair_index(self.dim, j, i)] = value.iter().map(|x| -x).collect();
        }
        Ok(())
    }

    /// Coefficient vector of `[e_i, e_j]`.
    pub fn basis_bracket(&self, i: usize, j: usize) -> Vec<Rational> {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => vec![Rational::zero(); self.dim],
            Less => self.upper[pair_index(self.dim, i, j)].clone(),
            Greater => self.upper[pair_index(self.dim, j, i)].iter().map(|x| -x).collect(),
        }
    }

    /// `c^k_{ij}`.
    pub fn constant(&self, k: usize, i: usize, j: usize) -> Rational {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => Rational::zero(),
            Less => self.upper[pair_index(self.dim, i, j)][k].clone(),
            Greater => -&self.upper[pair_index(self.dim, j, i)][k],
        }
    }

    /// `[u,v]^k = Σ c^k_{ij} u^i v^j`.
    pub fn bracket(&self, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim];
        for i in 0..self.dim {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if i == j || v[j].is_zero() {
                    continue;
                }
                let coef = &u[i] * &v[j];
                for (k, c) in self.basis_bracket(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        out[k] += &(&coef * c);
                    }
                }
            }
        }
        out
    }

    /// The same bilinear extension for coefficient vectors over ℚ(√m).
    pub fn bracket_quad(
        &self,
        u: &[QuadExt],
        v: &[QuadExt],
        m: &Rational,
    ) -> Result<Vec<QuadExt>, FieldError> {
        let mut out = vec![QuadExt::zero(m)?; self.dim];
        for i in 0..self.dim {
            for j in 0..self.dim {
                if i == j || u[i].is_zero() || v[j].is_zero() {
                    continue;
                }
                let coef = u[i].mul(&v[j])?;
                for (k, c) in self.basis_bracket(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        out[k] = out[k].add(&coef.scale(c))?;
                    }
                }
            }
        }
        Ok(out)
    }

    fn unit(&self, i: usize) -> Vec<Rational> {
        let mut e = vec![Rational::zero(); self.dim];
        e[i] = Rational::one();
        e
    }

    /// Cyclic Jacobi sums over every basis triple `i < j < k`, keeping the nonzero ones.
    pub fn jacobi_residuals(&self) -> Vec<JacobiResidual> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                for k in j + 1..self.dim {
                    let (ei, ej, ek) = (self.unit(i), self.unit(j), self.unit(k));
                    let t1 = self.bracket(&self.basis_bracket(i, j), &ek);
                    let t2 = self.bracket(&self.basis_bracket(j, k), &ei);
                    let t3 = self.bracket(&self.basis_bracket(k, i), &ej);
                    let residual: Vec<Rational> =
                        (0..self.dim).map(|n| &t1[n] + &t2[n] + &t3[n]).collect();
                    if !vec_is_zero(&residual) {
                        out.push(JacobiResidual { triple: (i, j, k), residual });
                    }
                }
            }
        }
        out
    }

    /// Matrix of `ad(u) = [u, ·]`; column `j` holds `[u, e_j]`.
    pub fn adjoint(&self, u: &[Rational]) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(self.dim, self.dim);
        for j in 0..self.dim {
            let col = self.bracket(u, &self.unit(j));
            for (i, v) in col.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    /// `B(e_i, e_j) = tr(ad e_i ∘ ad e_j)`.
    pub fn killing(&self) -> ExactMatrix {
        let ads: Vec<ExactMatrix> = (0..self.dim).map(|i| self.adjoint(&self.unit(i))).collect();
        let mut b = ExactMatrix::zeros(self.dim, self.dim);
        for i in 0..self.dim {
            for j in i..self.dim {
                let t = ads[i].mul(&ads[j]).expect("square adjoint matrices").trace();
                b.set(i, j, t.clone());
                b.set(j, i, t);
            }
        }
        b
    }
}

/// Jacobi check over all basis triples.
pub fn validate_jacobi(c: &BracketTable) -> JacobiReport {
    JacobiReport { residuals: c.jacobi_residuals() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_field::q;

    #[test]
    fn pair_indices_are_dense() {
        for dim in 2..6 {
            let mut seen = Vec::new();
            for i in 0..dim {
                for j in i + 1..dim {
                    seen.push(pair_index(dim, i, j));
                }
            }
            let expected: Vec<usize> = (0..dim * (dim - 1) / 2).collect();
            assert_eq!(seen, expected);
        }
    }

    #[test]
    fn reversed_set_is_antisymmetric() {
        let mut t = BracketTable::zero(3);
        t.set(2, 0, vec![q(2, 1), q(0, 1), q(0, 1)]).unwrap();
        assert_eq!(t.basis_bracket(0, 2), vec![q(-2, 1), q(0, 1), q(0, 1)]);
        assert_eq!(t.constant(0, 2, 0), q(2, 1));
        assert!(t.set(1, 1, vec![q(1, 1), q(0, 1), q(0, 1)]).is_err());
    }

    #[test]
    fn four_dimensional_jacobi_lists_every_bad_triple() {
        // [e0,e1] = e2, [e2,e0] = e0 in dimension 4: only triple (0,1,2) fails.
        let mut t = BracketTable::zero(4);
        t.set(0, 1, vec![q(0, 1), q(0, 1), q(1, 1), q(0, 1)]).unwrap();
        t.set(2, 0, vec![q(1, 1), q(0, 1), q(0, 1), q(0, 1)]).unwrap();
        let report = validate_jacobi(&t);
        assert_eq!(report.residuals.len(), 1);
        assert_eq!(report.residuals[0].triple, (0, 1, 2));
    }
}
