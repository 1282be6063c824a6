//! The normal Cartan connection on the identity section.
//!
//! Unknowns are the coefficients of `w = w₁θ¹ + w₂θ² + w₃θ`, `τ¹ = τ¹₂θ²`,
//! `τ² = τ²₁θ¹`, fixed by matching
//!
//! ```text
//! dθ¹ =  3 θ¹∧w + θ∧τ¹
//! dθ² = −3 θ²∧w + θ∧τ²
//! ```
//!
//! slot by slot: six equations in five unknowns, with `w₃` determined twice.

use serde::Serialize;
use thiserror::Error;

use crate::exact_field::{linear_solve, ExactMatrix, LinearSolution, Rational};
use crate::lie_algebra::{OneFormCE, TwoFormCE};
use crate::path_structure::AdaptedFrame;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConnectionError {
    #[error("frame is not normalized")]
    NotNormalized,
    #[error(
        "structure equations are inconsistent: w3 = {w3_from_first} from dθ¹ but {w3_from_second} from dθ² (residual {residual})"
    )]
    InvariantViolation { w3_from_first: Rational, w3_from_second: Rational, residual: Rational },
    #[error("structure equations do not determine the connection (rank {0})")]
    Underdetermined(usize),
}

#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize)]
pub struct ConnectionData {
    pub w1: Rational,
    pub w2: Rational,
    pub w3: Rational,
    pub tau12: Rational,
    pub tau21: Rational,
}

impl ConnectionData {
    pub fn from_vec(x: &[Rational]) -> Self {
        ConnectionData {
            w1: x[0].clone(),
            w2: x[1].clone(),
            w3: x[2].clone(),
            tau12: x[3].clone(),
            tau21: x[4].clone(),
        }
    }

    pub fn to_vec(&self) -> Vec<Rational> {
        vec![self.w1.clone(), self.w2.clone(), self.w3.clone(), self.tau12.clone(), self.tau21.clone()]
    }

    pub fn w(&self) -> OneFormCE {
        OneFormCE::new(self.w1.clone(), self.w2.clone(), self.w3.clone())
    }

    /// `τ¹ = τ¹₂ θ²`.
    pub fn tau1(&self) -> OneFormCE {
        OneFormCE::dual(1).scale(&self.tau12)
    }

    /// `τ² = τ²₁ θ¹`.
    pub fn tau2(&self) -> OneFormCE {
        OneFormCE::dual(0).scale(&self.tau21)
    }

    /// Right-hand sides `(3θ¹∧w + θ∧τ¹, −3θ²∧w + θ∧τ²)`.
    pub fn structure_rhs(&self) -> (TwoFormCE, TwoFormCE) {
        let three = Rational::from_int(3);
        let theta = OneFormCE::dual(2);
        let w = self.w();
        let first = OneFormCE::dual(0).wedge(&w).scale(&three) + theta.wedge(&self.tau1());
        let second = OneFormCE::dual(1).wedge(&w).scale(&-&three) + theta.wedge(&self.tau2());
        (first, second)
    }
}

/// Residuals `dθⁱ − rhsⁱ` of both structure equations.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct StructureReport {
    pub dtheta1_residual: TwoFormCE,
    pub dtheta2_residual: TwoFormCE,
}

impl StructureReport {
    pub fn is_ok(&self) -> bool {
        self.dtheta1_residual.is_zero() && self.dtheta2_residual.is_zero()
    }
}

fn frame_differentials(f: &AdaptedFrame) -> (TwoFormCE, TwoFormCE) {
    let g = f.algebra();
    (g.ce_differential(&OneFormCE::dual(0)), g.ce_differential(&OneFormCE::dual(1)))
}

pub fn solve_connection(f: &AdaptedFrame) -> Result<ConnectionData, ConnectionError> {
    if !f.is_normalized() {
        return Err(ConnectionError::NotNormalized);
    }
    // The right-hand side is linear in the unknowns: its columns are the images of unit vectors.
    let mut a = ExactMatrix::zeros(6, 5);
    for u in 0..5 {
        let mut unit = vec![Rational::zero(); 5];
        unit[u] = Rational::one();
        let (first, second) = ConnectionData::from_vec(&unit).structure_rhs();
        for (row, v) in first.coeffs.iter().chain(second.coeffs.iter()).enumerate() {
            a.set(row, u, v.clone());
        }
    }
    let (d1, d2) = frame_differentials(f);
    let b: Vec<Rational> = d1.coeffs.iter().chain(d2.coeffs.iter()).cloned().collect();
    match linear_solve(&a, &b).expect("6x5 system with 6 right-hand entries") {
        LinearSolution::Unique(x) => Ok(ConnectionData::from_vec(&x)),
        LinearSolution::NoSolution { .. } => {
            // The θ∧θ¹ slot of the first equation reads −3w₃, the θ∧θ² slot of the second +3w₃.
            let three = Rational::from_int(3);
            let w3_from_first = -&d1.coeffs[1] / &three;
            let w3_from_second = &d2.coeffs[2] / &three;
            let residual = &w3_from_first - &w3_from_second;
            Err(ConnectionError::InvariantViolation { w3_from_first, w3_from_second, residual })
        }
        LinearSolution::Underdetermined { rank, .. } => Err(ConnectionError::Underdetermined(rank)),
    }
}

pub fn verify_structure_equations(f: &AdaptedFrame, conn: &ConnectionData) -> StructureReport {
    let (d1, d2) = frame_differentials(f);
    let (first, second) = conn.structure_rhs();
    StructureReport { dtheta1_residual: &d1 - &first, dtheta2_residual: &d2 - &second }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_field::q;
    use crate::lie_algebra::{BracketTable, LieAlgebra3};
    use crate::models_dynamics::{builtin_model, corpus, BuiltinModel};
    use crate::path_structure::{scale_frame, validate_adapted_frame};

    fn r(n: i64) -> Rational {
        q(n, 1)
    }

    fn model(m: BuiltinModel) -> AdaptedFrame {
        builtin_model(&m).unwrap().1
    }

    /// Hand-derived closed form, independent of the matching solver.
    fn closed_form(f: &AdaptedFrame) -> ConnectionData {
        let three = r(3);
        ConnectionData {
            w1: -f.c(1, 0, 1) / &three,
            w2: -f.c(0, 0, 1) / &three,
            w3: -f.c(0, 0, 2) / &three,
            tau12: f.c(0, 1, 2),
            tau21: f.c(1, 0, 2),
        }
    }

    #[test]
    fn sl2_connection() {
        let c = solve_connection(&model(BuiltinModel::Sl2)).unwrap();
        assert_eq!(c, ConnectionData { w3: q(2, 3), ..Default::default() });
    }

    #[test]
    fn su2_connection() {
        let c = solve_connection(&model(BuiltinModel::Su2)).unwrap();
        assert_eq!(c, ConnectionData { tau12: r(1), tau21: r(-1), ..Default::default() });
    }

    #[test]
    fn heis3_connection_is_zero() {
        let f = model(BuiltinModel::Heis3);
        assert_eq!(solve_connection(&f).unwrap(), ConnectionData::default());
        assert!(verify_structure_equations(&f, &ConnectionData::default()).is_ok());
    }

    #[test]
    fn perturbed_w3_leaves_residual() {
        let f = model(BuiltinModel::Sl2);
        let mut c = solve_connection(&f).unwrap();
        assert!(verify_structure_equations(&f, &c).is_ok());
        c.w3 = r(1);
        let rep = verify_structure_equations(&f, &c);
        assert!(!rep.is_ok());
        // −3·(2/3) vs −3·1 in the θ∧θ¹ slot of the first equation
        assert_eq!(rep.dtheta1_residual, TwoFormCE::new(r(0), r(1), r(0)));
    }

    #[test]
    fn matches_closed_form_on_corpus() {
        for (_, f) in corpus(40, 7) {
            let c = solve_connection(&f).unwrap();
            assert_eq!(c, closed_form(&f));
            assert!(verify_structure_equations(&f, &c).is_ok());
            let s = scale_frame(&f, &q(-3, 2)).unwrap();
            assert_eq!(solve_connection(&s).unwrap(), closed_form(&s));
        }
    }

    #[test]
    fn non_lie_input_is_caught() {
        // Passes the contact and Reeb tests but violates Jacobi: c¹₁₃ + c²₂₃ = 2 ≠ 0.
        let mut t = BracketTable::zero(3);
        t.set(0, 1, vec![r(0), r(0), r(1)]).unwrap();
        t.set(0, 2, vec![r(1), r(0), r(0)]).unwrap();
        t.set(1, 2, vec![r(0), r(1), r(0)]).unwrap();
        let g = LieAlgebra3::from_table_unchecked("bad", ["a", "b", "c"].map(String::from), t).unwrap();
        let f = validate_adapted_frame(&g, [0, 1, 2]).unwrap();
        match solve_connection(&f) {
            Err(ConnectionError::InvariantViolation { residual, .. }) => assert_eq!(residual, q(-2, 3)),
            other => panic!("unexpected {other:?}"),
        }
    }
}
