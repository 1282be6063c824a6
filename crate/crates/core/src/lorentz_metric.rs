//! The Lorentzian metric induced by a strict path structure: `E¹` and `E²`
//! isotropic, `g(e₁,e₂) = dθ(e₁,e₂)`, and the Reeb field a unit vector
//! orthogonal to the contact plane.

use serde::Serialize;
use thiserror::Error;

use crate::exact_field::{ExactMatrix, FieldError, Rational};
use crate::lie_algebra::OneFormCE;
use crate::path_structure::AdaptedFrame;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricError {
    #[error("frame is not normalized (c3_12 = {0})")]
    NotNormalized(Rational),
    #[error("metric is degenerate ({0} null directions)")]
    Degenerate(usize),
    #[error("frame does not carry the Heisenberg constants [e1,e2] = e3")]
    NotHeisenberg,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Symmetric 3×3 matrix of the metric in the frame `(e₁, e₂, e₃)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MetricMatrix(ExactMatrix);

impl MetricMatrix {
    pub fn new(m: ExactMatrix) -> Result<Self, MetricError> {
        if m.rows() != 3 || m.cols() != 3 {
            return Err(FieldError::DimensionMismatch { expected: 3, found: m.rows() }.into());
        }
        if !m.is_symmetric() {
            return Err(FieldError::NotSymmetric.into());
        }
        Ok(MetricMatrix(m))
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.0
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        self.0.get(i, j)
    }
}

pub fn induced_metric(f: &AdaptedFrame) -> Result<MetricMatrix, MetricError> {
    if !f.is_normalized() {
        return Err(MetricError::NotNormalized(f.c(2, 0, 1)));
    }
    let dtheta = f.algebra().ce_differential(&OneFormCE::dual(2));
    let unit = |i: usize| {
        let mut v = vec![Rational::zero(); 3];
        v[i] = Rational::one();
        v
    };
    let g12 = dtheta.eval(&unit(0), &unit(1));
    let mut m = ExactMatrix::zeros(3, 3);
    m.set(0, 1, g12.clone());
    m.set(1, 0, g12);
    m.set(2, 2, Rational::one());
    MetricMatrix::new(m)
}

/// `(negative, positive)` counts; degenerate metrics are rejected.
pub fn signature(m: &MetricMatrix) -> Result<(usize, usize), MetricError> {
    let inertia = m.0.inertia()?;
    if inertia.zero > 0 {
        return Err(MetricError::Degenerate(inertia.zero));
    }
    Ok((inertia.negative, inertia.positive))
}

/// Comparison with the Lorentz-Heisenberg metric: `Z` unit, `X` and `Y`
/// isotropic, `span(X, Y)` orthogonal to `Z`, `g(X, Y) = ±1`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct LorentzHeisenbergReport {
    pub ok: bool,
    pub reeb_norm: Rational,
    pub isotropic: bool,
    pub orthogonal_to_reeb: bool,
    pub g12: Rational,
    pub abs_g12_is_one: bool,
    pub sign_note: String,
    pub discrepancies: Vec<String>,
}

fn is_heisenberg_frame(f: &AdaptedFrame) -> bool {
    (0..3).all(|k| {
        (0..3).all(|i| {
            (i + 1..3).all(|j| {
                let c = f.c(k, i, j);
                if (k, i, j) == (2, 0, 1) {
                    c.is_one()
                } else {
                    c.is_zero()
                }
            })
        })
    })
}

pub fn check_lorentz_heisenberg(f: &AdaptedFrame) -> Result<LorentzHeisenbergReport, MetricError> {
    if !is_heisenberg_frame(f) {
        return Err(MetricError::NotHeisenberg);
    }
    let g = induced_metric(f)?;
    let mut discrepancies = Vec::new();
    let reeb_norm = g.get(2, 2).clone();
    if !reeb_norm.is_one() {
        discrepancies.push(format!("g(Z,Z) = {reeb_norm}, expected 1"));
    }
    let isotropic = g.get(0, 0).is_zero() && g.get(1, 1).is_zero();
    if !isotropic {
        discrepancies.push(format!("g(X,X) = {}, g(Y,Y) = {}", g.get(0, 0), g.get(1, 1)));
    }
    let orthogonal_to_reeb = g.get(0, 2).is_zero() && g.get(1, 2).is_zero();
    if !orthogonal_to_reeb {
        discrepancies.push(format!("g(X,Z) = {}, g(Y,Z) = {}", g.get(0, 2), g.get(1, 2)));
    }
    let g12 = g.get(0, 1).clone();
    let abs_g12_is_one = g12.abs().is_one();
    if !abs_g12_is_one {
        discrepancies.push(format!("|g(X,Y)| = {}, expected 1", g12.abs()));
    }
    let sign_note = if g12.is_one() {
        "g(X,Y) = 1".to_string()
    } else {
        format!("g(X,Y) = {g12} = dθ(X,Y) = -θ([X,Y]); the reference description uses +1, an orientation choice")
    };
    Ok(LorentzHeisenbergReport {
        ok: discrepancies.is_empty(),
        reeb_norm,
        isotropic,
        orthogonal_to_reeb,
        g12,
        abs_g12_is_one,
        sign_note,
        discrepancies,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_field::q;
    use crate::models_dynamics::{builtin_model, corpus, BuiltinModel};
    use crate::path_structure::{rescale_contact_form, scale_frame};

    fn r(n: i64) -> Rational {
        q(n, 1)
    }

    fn frame(m: BuiltinModel) -> AdaptedFrame {
        builtin_model(&m).unwrap().1
    }

    fn expected() -> ExactMatrix {
        ExactMatrix::from_rows(vec![vec![r(0), r(-1), r(0)], vec![r(-1), r(0), r(0)], vec![r(0), r(0), r(1)]]).unwrap()
    }

    #[test]
    fn heis_and_sl2_metrics() {
        for m in [BuiltinModel::Heis3, BuiltinModel::Sl2, BuiltinModel::Su2] {
            assert_eq!(induced_metric(&frame(m)).unwrap().matrix(), &expected());
        }
    }

    #[test]
    fn signatures() {
        assert_eq!(signature(&induced_metric(&frame(BuiltinModel::Heis3)).unwrap()).unwrap(), (1, 2));
        let id = MetricMatrix::new(ExactMatrix::identity(3)).unwrap();
        assert_eq!(signature(&id).unwrap(), (0, 3));
        let neg = MetricMatrix::new(ExactMatrix::diagonal(&[r(-1), r(-1), r(-1)])).unwrap();
        assert_eq!(signature(&neg).unwrap(), (3, 0));
        let deg = MetricMatrix::new(ExactMatrix::diagonal(&[r(1), r(0), r(1)])).unwrap();
        assert_eq!(signature(&deg), Err(MetricError::Degenerate(1)));
    }

    #[test]
    fn corpus_metrics_are_lorentzian() {
        for (_, f) in corpus(20, 3) {
            let g = induced_metric(&f).unwrap();
            assert_eq!(g.matrix(), &expected());
            assert_eq!(signature(&g).unwrap(), (1, 2));
            assert_eq!(induced_metric(&scale_frame(&f, &q(3, 5)).unwrap()).unwrap(), g);
        }
    }

    #[test]
    fn lorentz_heisenberg() {
        let f = frame(BuiltinModel::Heis3);
        let rep = check_lorentz_heisenberg(&f).unwrap();
        assert!(rep.ok);
        assert_eq!(rep.g12, r(-1));
        assert!(rep.sign_note.contains("+1"));
        let scaled = check_lorentz_heisenberg(&scale_frame(&f, &r(2)).unwrap()).unwrap();
        assert_eq!(scaled.g12, r(-1));
        assert_eq!(check_lorentz_heisenberg(&frame(BuiltinModel::Sl2)), Err(MetricError::NotHeisenberg));
        // heis3 with a rescaled contact form still has [e1,e2] = e3.
        assert!(check_lorentz_heisenberg(&rescale_contact_form(&f, &r(5)).unwrap()).unwrap().ok);
    }
}
