//! Three-dimensional Lie algebras by structure constants.
//!
//! Sign convention for left-invariant forms (Chevalley–Eilenberg):
//! `dα(u, v) = −α([u, v])`. With it the Maurer–Cartan equations of the
//! Heisenberg model read `dω = ω²∧ω¹`, and every structure equation in this
//! crate is relative to this choice.

mod forms;
mod table;

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use serde::Serialize;
use thiserror::Error;

use crate::exact_field::{ExactMatrix, Rational};

pub use forms::{OneFormCE, TwoFormCE, TWO_FORM_SLOTS};
pub use table::{validate_jacobi, BracketTable, JacobiReport, JacobiResidual};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("basis names must be three distinct non-empty identifiers")]
    BadBasis,
    #[error("bracket of a basis vector with itself: [{0}, {0}]")]
    SelfBracket(String),
    #[error("duplicate bracket for pair ({0}, {1})")]
    DuplicatePair(String, String),
    #[error("Jacobi identity fails, residual {residual:?}")]
    Jacobi { residual: Vec<Rational> },
    #[error("elements belong to different algebras")]
    MixedAlgebras,
}

/// A three-dimensional Lie algebra over ℚ.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LieAlgebra3 {
    name: String,
    basis_names: [String; 3],
    table: BracketTable,
    fingerprint: u64,
}

/// Element of a specific [`LieAlgebra3`].
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct AlgElement {
    pub coeffs: [Rational; 3],
    #[serde(skip)]
    algebra: u64,
}

impl AlgElement {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }
}

impl LieAlgebra3 {
    /// Builds the algebra from bracket entries `[e_i, e_j] = v` (any order of `i, j`);
    /// unlisted pairs are zero. Fails on self-brackets, repeated pairs and Jacobi violations.
    pub fn new(
        name: impl Into<String>,
        basis_names: [&str; 3],
        brackets: &[(usize, usize, [Rational; 3])],
    ) -> Result<Self, LieError> {
        let mut table = BracketTable::zero(3);
        let mut seen = Vec::new();
        for (i, j, v) in brackets {
            if i == j {
                return Err(LieError::SelfBracket(basis_names[*i].to_string()));
            }
            let key = ((*i).min(*j), (*i).max(*j));
            if seen.contains(&key) {
                return Err(LieError::DuplicatePair(
                    basis_names[*i].to_string(),
                    basis_names[*j].to_string(),
                ));
            }
            seen.push(key);
            table.set(*i, *j, v.to_vec()).map_err(|_| LieError::BadBasis)?;
        }
        Self::from_table(name, basis_names.map(String::from), table)
    }

    pub fn from_table(
        name: impl Into<String>,
        basis_names: [String; 3],
        table: BracketTable,
    ) -> Result<Self, LieError> {
        let report = validate_jacobi(&table);
        if let Some(bad) = report.residuals.first() {
            return Err(LieError::Jacobi { residual: bad.residual.clone() });
        }
        Self::from_table_unchecked(name, basis_names, table)
    }

    /// Skips the Jacobi check. Used to exercise downstream invariant checks on non-Lie input.
    pub(crate) fn from_table_unchecked(
        name: impl Into<String>,
        basis_names: [String; 3],
        table: BracketTable,
    ) -> Result<Self, LieError> {
        if table.dim() != 3
            || basis_names.iter().any(String::is_empty)
            || basis_names[0] == basis_names[1]
            || basis_names[0] == basis_names[2]
            || basis_names[1] == basis_names[2]
        {
            return Err(LieError::BadBasis);
        }
        let name = name.into();
        let mut h = DefaultHasher::new();
        name.hash(&mut h);
        basis_names.hash(&mut h);
        table.hash(&mut h);
        Ok(LieAlgebra3 { name, basis_names, table, fingerprint: h.finish() })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn basis_names(&self) -> &[String; 3] {
        &self.basis_names
    }

    pub fn table(&self) -> &BracketTable {
        &self.table
    }

    /// `c^k_{ij}` (zero-based indices).
    pub fn c(&self, k: usize, i: usize, j: usize) -> Rational {
        self.table.constant(k, i, j)
    }

    pub fn element(&self, coeffs: [Rational; 3]) -> AlgElement {
        AlgElement { coeffs, algebra: self.fingerprint }
    }

    pub fn basis(&self, i: usize) -> AlgElement {
        let mut coeffs = [Rational::zero(), Rational::zero(), Rational::zero()];
        coeffs[i] = Rational::one();
        self.element(coeffs)
    }

    fn owns(&self, u: &AlgElement) -> Result<(), LieError> {
        if u.algebra == self.fingerprint {
            Ok(())
        } else {
            Err(LieError::MixedAlgebras)
        }
    }

    pub fn bracket(&self, u: &AlgElement, v: &AlgElement) -> Result<AlgElement, LieError> {
        self.owns(u)?;
        self.owns(v)?;
        let w = self.table.bracket(&u.coeffs, &v.coeffs);
        Ok(self.element(to_array(w)))
    }

    pub fn validate_jacobi(&self) -> JacobiReport {
        validate_jacobi(&self.table)
    }

    pub fn adjoint_matrix(&self, u: &AlgElement) -> Result<ExactMatrix, LieError> {
        self.owns(u)?;
        Ok(self.table.adjoint(&u.coeffs))
    }

    pub fn killing_form(&self) -> ExactMatrix {
        self.table.killing()
    }

    /// `dα(e_i, e_j) = −α([e_i, e_j])`, expanded on `θ¹∧θ²`, `θ∧θ¹`, `θ∧θ²`.
    pub fn ce_differential(&self, alpha: &OneFormCE) -> TwoFormCE {
        let d = |i: usize, j: usize| -alpha.eval(&self.table.basis_bracket(i, j));
        TwoFormCE::new(d(0, 1), d(2, 0), d(2, 1))
    }

    /// `dβ(e₁, e₂, e₃)`, the coefficient of the volume form `θ¹∧θ²∧θ`.
    pub fn ce_differential_2(&self, beta: &TwoFormCE) -> Rational {
        let e = |i: usize| self.basis(i).coeffs.to_vec();
        let br = |i: usize, j: usize| self.table.basis_bracket(i, j);
        -beta.eval(&br(0, 1), &e(2)) + beta.eval(&br(0, 2), &e(1)) - beta.eval(&br(1, 2), &e(0))
    }

    /// Canonical one-line-per-entry description, used for report echoes.
    pub fn nonzero_brackets(&self) -> Vec<(usize, usize, Vec<Rational>)> {
        let mut out = Vec::new();
        for i in 0..3 {
            for j in i + 1..3 {
                let v = self.table.basis_bracket(i, j);
                if v.iter().any(|x| !x.is_zero()) {
                    out.push((i, j, v));
                }
            }
        }
        out
    }
}

pub(crate) fn to_array(v: Vec<Rational>) -> [Rational; 3] {
    v.try_into().expect("three coefficients")
}
