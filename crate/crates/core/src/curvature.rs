//! Curvature coordinates `(R, W¹, W², τ¹₂, τ²₁)`, the Bianchi terms `Sⁱⱼ`,
//! the action of the structure group on them, and the type classification.
//!
//! On the identity section the Bianchi identities are read off from
//!
//! ```text
//! dw            = R θ¹∧θ² + W¹ θ∧θ¹ + W² θ∧θ²
//! dτ¹ − 3τ¹∧w   = 3W² θ¹∧θ² + S¹₁ θ∧θ¹ + S¹₂ θ∧θ²
//! dτ² + 3τ²∧w   = 3W¹ θ¹∧θ² + S²₁ θ∧θ¹ + S²₂ θ∧θ²
//! ```
//!
//! The signs in front of `τⁱ∧w` are the ones forced by `d² = 0` applied to
//! the structure equations of [`crate::cartan_connection`].

use serde::Serialize;
use thiserror::Error;

use crate::cartan_connection::{solve_connection, verify_structure_equations, ConnectionData, ConnectionError};
use crate::exact_field::{ExactMatrix, Rational};
use crate::lie_algebra::OneFormCE;
use crate::path_structure::{rescale_contact_form, AdaptedFrame, FrameError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurvatureError {
    #[error("scaling factor must be nonzero")]
    ZeroFactor,
    #[error("connection does not satisfy the structure equations of this frame")]
    ConnectionMismatch,
    #[error("Bianchi cross-check failed in {equation}: expected {expected}, found {found}")]
    BianchiMismatch { equation: &'static str, expected: Rational, found: Rational },
    #[error(transparent)]
    Connection(#[from] ConnectionError),
    #[error(transparent)]
    Frame(#[from] FrameError),
}

#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize)]
pub struct CurvatureData {
    #[serde(rename = "R")]
    pub r: Rational,
    #[serde(rename = "W1")]
    pub w1: Rational,
    #[serde(rename = "W2")]
    pub w2: Rational,
    pub tau12: Rational,
    pub tau21: Rational,
    #[serde(rename = "S11")]
    pub s11: Rational,
    #[serde(rename = "S12")]
    pub s12: Rational,
    #[serde(rename = "S21")]
    pub s21: Rational,
    #[serde(rename = "S22")]
    pub s22: Rational,
}

impl CurvatureData {
    /// All nine coordinates in the order R, W¹, W², τ¹₂, τ²₁, S¹₁, S¹₂, S²₁, S²₂.
    pub fn coordinates(&self) -> [&Rational; 9] {
        [
            &self.r, &self.w1, &self.w2, &self.tau12, &self.tau21, &self.s11, &self.s12, &self.s21,
            &self.s22,
        ]
    }

    pub fn is_type_d(&self) -> bool {
        self.w1.is_zero() && self.w2.is_zero() && self.tau12.is_zero() && self.tau21.is_zero()
    }

    /// The curvature map on `(Z̄,X̄)`, `(Z̄,Ȳ)`, `(X̄,Ȳ)` as 3×3 matrices in the model algebra.
    pub fn curvature_map(&self) -> [ExactMatrix; 3] {
        let z = Rational::zero();
        let m2 = Rational::from_int(-2);
        let mat = |rows: [[Rational; 3]; 3]| {
            ExactMatrix::from_rows(rows.into_iter().map(Vec::from).collect()).expect("3x3")
        };
        [
            mat([
                [self.w1.clone(), z.clone(), z.clone()],
                [self.tau21.clone(), &m2 * &self.w1, z.clone()],
                [z.clone(), z.clone(), self.w1.clone()],
            ]),
            mat([
                [self.w2.clone(), z.clone(), z.clone()],
                [z.clone(), &m2 * &self.w2, z.clone()],
                [z.clone(), self.tau12.clone(), self.w2.clone()],
            ]),
            mat([
                [self.r.clone(), z.clone(), z.clone()],
                [z.clone(), &m2 * &self.r, z.clone()],
                [z.clone(), z, self.r.clone()],
            ]),
        ]
    }
}

pub fn compute_curvature(f: &AdaptedFrame, conn: &ConnectionData) -> Result<CurvatureData, CurvatureError> {
    if !verify_structure_equations(f, conn).is_ok() {
        return Err(CurvatureError::ConnectionMismatch);
    }
    let g = f.algebra();
    let three = Rational::from_int(3);
    let w = conn.w();
    let dw = g.ce_differential(&w);
    let [r, w1, w2] = dw.coeffs;

    let tau1: OneFormCE = conn.tau1();
    let tau2: OneFormCE = conn.tau2();
    let b1 = g.ce_differential(&tau1) - tau1.wedge(&w).scale(&three);
    let b2 = g.ce_differential(&tau2) + tau2.wedge(&w).scale(&three);

    let [b1_12, s11, s12] = b1.coeffs;
    let [b2_12, s21, s22] = b2.coeffs;
    let check = |equation, expected: Rational, found: Rational| {
        if expected == found {
            Ok(())
        } else {
            Err(CurvatureError::BianchiMismatch { equation, expected, found })
        }
    };
    check("dτ¹ − 3τ¹∧w", &three * &w2, b1_12)?;
    check("dτ² + 3τ²∧w", &three * &w1, b2_12)?;

    Ok(CurvatureData {
        r,
        w1,
        w2,
        tau12: conn.tau12.clone(),
        tau21: conn.tau21.clone(),
        s11,
        s12,
        s21,
        s22,
    })
}

/// Solves the connection and computes its curvature.
pub fn curvature_of(f: &AdaptedFrame) -> Result<(ConnectionData, CurvatureData), CurvatureError> {
    let conn = solve_connection(f)?;
    let k = compute_curvature(f, &conn)?;
    Ok((conn, k))
}

/// Curvature at the point of the fibre reached by `scale_frame(·, b)`.
///
/// `b` is the factor on `e₁`; for the diagonal element `diag(a, a⁻², a)` of
/// the structure group, `b = a³`.
pub fn transform_curvature(k: &CurvatureData, b: &Rational) -> Result<CurvatureData, CurvatureError> {
    let inv = b.recip().map_err(|_| CurvatureError::ZeroFactor)?;
    let b2 = b * b;
    let inv2 = &inv * &inv;
    Ok(CurvatureData {
        r: k.r.clone(),
        w1: &k.w1 * b,
        w2: &k.w2 * &inv,
        tau12: &k.tau12 * &inv2,
        tau21: &k.tau21 * &b2,
        s11: k.s11.clone(),
        s12: &k.s12 * &inv2,
        s21: &k.s21 * &b2,
        s22: k.s22.clone(),
    })
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CurvatureClass {
    NotTypeD,
    Flat,
    /// Type 𝒟 with `R ≠ 0`; `r = 3R/2` and `epsilon` is its sign.
    ConstantCurvature { r_coord: Rational, r: Rational, epsilon: i8 },
}

impl CurvatureClass {
    pub fn label(&self) -> &'static str {
        match self {
            CurvatureClass::NotTypeD => "not_type_D",
            CurvatureClass::Flat => "flat",
            CurvatureClass::ConstantCurvature { .. } => "constant_curvature",
        }
    }

    pub fn local_model(&self) -> &'static str {
        match self {
            CurvatureClass::NotTypeD => "none",
            CurvatureClass::Flat => "Heis(3)",
            CurvatureClass::ConstantCurvature { .. } => "SL(2,R)",
        }
    }

    pub fn description(&self) -> String {
        match self {
            CurvatureClass::Flat => "flat: locally the Heis(3) model".to_string(),
            CurvatureClass::ConstantCurvature { r, .. } => format!(
                "constant curvature: locally the SL(2,R) model after multiplying the contact form by {}",
                -r
            ),
            CurvatureClass::NotTypeD => "not of type D: no compact quotient with non-compact automorphism \
                group and dense local orbit admits this curvature"
                .to_string(),
        }
    }
}

pub fn classify(k: &CurvatureData) -> CurvatureClass {
    if !k.is_type_d() {
        CurvatureClass::NotTypeD
    } else if k.r.is_zero() {
        CurvatureClass::Flat
    } else {
        let r = &k.r * &Rational::frac(3, 2);
        CurvatureClass::ConstantCurvature { r_coord: k.r.clone(), epsilon: r.signum(), r }
    }
}

/// Curvature before and after `θ ↦ c·θ`.
pub fn rescaling_effect(
    f: &AdaptedFrame,
    c: &Rational,
) -> Result<(CurvatureData, CurvatureData), CurvatureError> {
    if c.is_zero() {
        return Err(CurvatureError::ZeroFactor);
    }
    let (_, before) = curvature_of(f)?;
    let g = rescale_contact_form(f, c)?;
    let (_, after) = curvature_of(&g)?;
    Ok((before, after))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_field::q;
    use crate::models_dynamics::{builtin_model, corpus, BuiltinModel};
    use crate::path_structure::scale_frame;

    fn r(n: i64) -> Rational {
        q(n, 1)
    }

    fn curv(m: BuiltinModel) -> CurvatureData {
        curvature_of(&builtin_model(&m).unwrap().1).unwrap().1
    }

    #[test]
    fn sl2_curvature() {
        let k = curv(BuiltinModel::Sl2);
        assert_eq!(k, CurvatureData { r: q(-2, 3), ..Default::default() });
        assert_eq!(
            classify(&k),
            CurvatureClass::ConstantCurvature { r_coord: q(-2, 3), r: r(-1), epsilon: -1 }
        );
    }

    #[test]
    fn su2_curvature() {
        let k = curv(BuiltinModel::Su2);
        let expected = CurvatureData { tau12: r(1), tau21: r(-1), s11: r(-1), s22: r(-1), ..Default::default() };
        assert_eq!(k, expected);
        assert_eq!(classify(&k), CurvatureClass::NotTypeD);
    }

    #[test]
    fn heis3_is_flat() {
        let k = curv(BuiltinModel::Heis3);
        assert!(k.coordinates().iter().all(|x| x.is_zero()));
        assert_eq!(classify(&k), CurvatureClass::Flat);
    }

    #[test]
    fn curvature_map_diagonal_for_sl2() {
        let k = curv(BuiltinModel::Sl2);
        let [zx, zy, xy] = k.curvature_map();
        assert!(zx.is_zero() && zy.is_zero());
        assert_eq!(xy, ExactMatrix::diagonal(&[q(-2, 3), q(4, 3), q(-2, 3)]));
    }

    #[test]
    fn transform_examples() {
        let k = curv(BuiltinModel::Su2);
        assert_eq!(transform_curvature(&k, &r(1)).unwrap(), k);
        let t = transform_curvature(&k, &r(2)).unwrap();
        assert_eq!((t.tau12.clone(), t.tau21.clone()), (q(1, 4), r(-4)));
        assert!(t.r.is_zero() && t.w1.is_zero() && t.w2.is_zero());
        let f = builtin_model(&BuiltinModel::Su2).unwrap().1;
        assert_eq!(curvature_of(&scale_frame(&f, &r(2)).unwrap()).unwrap().1, t);
        let back = transform_curvature(&t, &q(1, 2)).unwrap();
        assert_eq!(back, k);
        assert_eq!(transform_curvature(&k, &r(0)), Err(CurvatureError::ZeroFactor));
    }

    #[test]
    fn rescaling_examples() {
        let f = builtin_model(&BuiltinModel::Sl2).unwrap().1;
        let (b, a) = rescaling_effect(&f, &r(1)).unwrap();
        assert_eq!((b.r.clone(), a.r), (q(-2, 3), q(-2, 3)));
        let (_, a) = rescaling_effect(&f, &q(1, 2)).unwrap();
        assert_eq!(a.r, q(-4, 3));
        let (_, a) = rescaling_effect(&f, &r(-1)).unwrap();
        assert_eq!(a.r, q(2, 3));
        match classify(&a) {
            CurvatureClass::ConstantCurvature { epsilon, .. } => assert_eq!(epsilon, 1),
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(rescaling_effect(&f, &r(0)), Err(CurvatureError::ZeroFactor));
    }

    #[test]
    fn corpus_identities() {
        for (_, f) in corpus(60, 11) {
            let (_, k) = curvature_of(&f).unwrap();
            let prod = &k.tau12 * &k.tau21;
            assert_eq!(k.s11, prod);
            assert_eq!(k.s22, prod);
            if k.tau12.is_zero() {
                assert!(k.w2.is_zero());
            }
            if k.tau21.is_zero() {
                assert!(k.w1.is_zero());
            }
            for b in [r(2), r(3), q(1, 2), r(-1)] {
                let (_, ks) = curvature_of(&scale_frame(&f, &b).unwrap()).unwrap();
                assert_eq!(ks, transform_curvature(&k, &b).unwrap());
                assert_eq!(classify(&ks), classify(&k).clone());
            }
        }
    }

    #[test]
    fn corpus_contains_nonzero_w_terms() {
        // The Bianchi cross-check is only meaningful if some inputs have W ≠ 0.
        let n = corpus(60, 11)
            .iter()
            .filter(|(_, f)| {
                let k = curvature_of(f).unwrap().1;
                !k.w1.is_zero() || !k.w2.is_zero()
            })
            .count();
        assert!(n > 0);
    }

    #[test]
    fn mismatched_connection_rejected() {
        let f = builtin_model(&BuiltinModel::Sl2).unwrap().1;
        let c = ConnectionData::default();
        assert_eq!(compute_curvature(&f, &c), Err(CurvatureError::ConnectionMismatch));
    }
}
