//! Adapted frames `(e₁, e₂, e₃)` of left-invariant strict path structures:
//! `e₁` spans `E¹`, `e₂` spans `E²`, `e₃` is the Reeb field of `θ = e₃*`.

use thiserror::Error;

use crate::exact_field::Rational;
use crate::lie_algebra::{BracketTable, LieAlgebra3, LieError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrameError {
    #[error("frame assignment is not a bijection onto the basis")]
    NotBijection,
    #[error("contact condition fails: the Reeb component of [e1, e2] is zero")]
    NonContact,
    #[error("Reeb condition fails: c3_13 = {c313}, c3_23 = {c323} (both must vanish)")]
    ReebFailure { c313: Rational, c323: Rational },
    #[error("frame is not normalized (c3_12 = {0}); normalize it first")]
    NotNormalized(Rational),
    #[error("scaling factor must be nonzero")]
    ZeroFactor,
    #[error(transparent)]
    Lie(#[from] LieError),
}

/// A basis of the algebra adapted to a strict path structure.
///
/// Role vector `k` is `scales[k] · e_{assignment[k]}` of the source algebra;
/// `frame` carries the structure constants in the role basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AdaptedFrame {
    source: LieAlgebra3,
    assignment: [usize; 3],
    scales: [Rational; 3],
    frame: LieAlgebra3,
    normalized: bool,
}

fn role_name(name: &str, scale: &Rational) -> String {
    if scale.is_one() {
        name.to_string()
    } else {
        format!("{scale}*{name}")
    }
}

impl AdaptedFrame {
    fn build(
        source: &LieAlgebra3,
        assignment: [usize; 3],
        scales: [Rational; 3],
    ) -> Result<Self, FrameError> {
        if scales.iter().any(Rational::is_zero) {
            return Err(FrameError::ZeroFactor);
        }
        let mut table = BracketTable::zero(3);
        for i in 0..3 {
            for j in i + 1..3 {
                let coef = &scales[i] * &scales[j];
                let v = (0..3)
                    .map(|k| {
                        source.c(assignment[k], assignment[i], assignment[j]) * &coef / &scales[k]
                    })
                    .collect();
                table.set(i, j, v).expect("3x3 table");
            }
        }
        let names = [0, 1, 2].map(|k| role_name(&source.basis_names()[assignment[k]], &scales[k]));
        let frame = LieAlgebra3::from_table_unchecked(source.name(), names, table)?;

        let contact = frame.c(2, 0, 1);
        if contact.is_zero() {
            return Err(FrameError::NonContact);
        }
        let (c313, c323) = (frame.c(2, 0, 2), frame.c(2, 1, 2));
        if !c313.is_zero() || !c323.is_zero() {
            return Err(FrameError::ReebFailure { c313, c323 });
        }
        Ok(AdaptedFrame {
            source: source.clone(),
            assignment,
            scales,
            normalized: contact.is_one(),
            frame,
        })
    }

    fn rescaled(&self, factors: [Rational; 3]) -> Result<Self, FrameError> {
        let scales = [0, 1, 2].map(|k| &self.scales[k] * &factors[k]);
        Self::build(&self.source, self.assignment, scales)
    }

    pub fn source(&self) -> &LieAlgebra3 {
        &self.source
    }

    /// Structure constants in the role basis `(e₁, e₂, e₃)`.
    pub fn algebra(&self) -> &LieAlgebra3 {
        &self.frame
    }

    pub fn assignment(&self) -> [usize; 3] {
        self.assignment
    }

    pub fn scales(&self) -> &[Rational; 3] {
        &self.scales
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    /// `c^k_{ij}` in the role basis (zero-based).
    pub fn c(&self, k: usize, i: usize, j: usize) -> Rational {
        self.frame.c(k, i, j)
    }

    pub fn role_names(&self) -> &[String; 3] {
        self.frame.basis_names()
    }
}

/// Checks the contact and Reeb conditions for the roles `assignment = [E¹, E², Reeb]`.
pub fn validate_adapted_frame(
    g: &LieAlgebra3,
    assignment: [usize; 3],
) -> Result<AdaptedFrame, FrameError> {
    let mut sorted = assignment;
    sorted.sort_unstable();
    if sorted != [0, 1, 2] {
        return Err(FrameError::NotBijection);
    }
    AdaptedFrame::build(g, assignment, [Rational::one(), Rational::one(), Rational::one()])
}

/// Rescales `e₁` by `1/c³₁₂` so that `[e₁, e₂]` has Reeb component 1.
pub fn normalize_frame(f: &AdaptedFrame) -> AdaptedFrame {
    if f.normalized {
        return f.clone();
    }
    let s = f.c(2, 0, 1);
    f.rescaled([s.recip().expect("contact frames have c3_12 != 0"), Rational::one(), Rational::one()])
        .expect("normalizing a valid frame keeps it valid")
}

fn require_normalized(f: &AdaptedFrame) -> Result<(), FrameError> {
    if f.normalized {
        Ok(())
    } else {
        Err(FrameError::NotNormalized(f.c(2, 0, 1)))
    }
}

/// The structure-group action: `(e₁, e₂, e₃) ↦ (b·e₁, e₂/b, e₃)`.
pub fn scale_frame(f: &AdaptedFrame, b: &Rational) -> Result<AdaptedFrame, FrameError> {
    require_normalized(f)?;
    let inv = b.recip().map_err(|_| FrameError::ZeroFactor)?;
    f.rescaled([b.clone(), inv, Rational::one()])
}

/// `θ ↦ c·θ`: the Reeb field becomes `e₃/c` and `e₂/c` restores normalization.
pub fn rescale_contact_form(f: &AdaptedFrame, c: &Rational) -> Result<AdaptedFrame, FrameError> {
    require_normalized(f)?;
    let inv = c.recip().map_err(|_| FrameError::ZeroFactor)?;
    f.rescaled([Rational::one(), inv.clone(), inv])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_field::q;
    use crate::models_dynamics::{builtin_model, BuiltinModel};

    fn r(n: i64) -> Rational {
        q(n, 1)
    }

    fn model(m: BuiltinModel) -> AdaptedFrame {
        builtin_model(&m).unwrap().1
    }

    #[test]
    fn models_are_valid_and_normalized() {
        for m in [BuiltinModel::Heis3, BuiltinModel::Sl2, BuiltinModel::Su2] {
            let f = model(m);
            assert!(f.is_normalized());
            assert_eq!(f.c(2, 0, 1), r(1));
        }
    }

    #[test]
    fn abelian_is_not_contact() {
        let g = LieAlgebra3::new("abelian", ["a", "b", "c"], &[]).unwrap();
        for assignment in [[0, 1, 2], [2, 0, 1], [1, 2, 0]] {
            assert_eq!(validate_adapted_frame(&g, assignment), Err(FrameError::NonContact));
        }
    }

    #[test]
    fn reeb_failure_names_constants() {
        // [a,b] = c, [a,c] = c: contact, but [e₁, e₃] has a Reeb component.
        let g = LieAlgebra3::new("r", ["a", "b", "c"], &[(0, 1, [r(0), r(0), r(1)]), (0, 2, [r(0), r(0), r(1)])])
            .unwrap();
        assert_eq!(
            validate_adapted_frame(&g, [0, 1, 2]),
            Err(FrameError::ReebFailure { c313: r(1), c323: r(0) })
        );
        assert_eq!(validate_adapted_frame(&g, [0, 0, 2]), Err(FrameError::NotBijection));
        // sl2 only admits H as Reeb field among basis permutations.
        let (s, _) = builtin_model(&BuiltinModel::Sl2).unwrap();
        assert_eq!(validate_adapted_frame(&s, [2, 1, 0]), Err(FrameError::NonContact));
    }

    #[test]
    fn permuted_assignment_reorders_constants() {
        // Declaring sl2 in basis order (H, E, F) with frame (E, F, H) must give the same frame constants.
        let g = LieAlgebra3::new(
            "sl2",
            ["H", "E", "F"],
            &[(1, 2, [r(1), r(0), r(0)]), (0, 1, [r(0), r(2), r(0)]), (0, 2, [r(0), r(0), r(-2)])],
        )
        .unwrap();
        let f = validate_adapted_frame(&g, [1, 2, 0]).unwrap();
        let sl2 = model(BuiltinModel::Sl2);
        assert_eq!(f.algebra().table(), sl2.algebra().table());
    }

    #[test]
    fn normalize_scaled_heisenberg() {
        let g = LieAlgebra3::new("heis5", ["X", "Y", "Z"], &[(0, 1, [r(0), r(0), r(5)])]).unwrap();
        let f = validate_adapted_frame(&g, [0, 1, 2]).unwrap();
        assert!(!f.is_normalized());
        let n = normalize_frame(&f);
        assert!(n.is_normalized());
        assert_eq!(n.scales(), &[q(1, 5), r(1), r(1)]);
        assert_eq!(n.c(2, 0, 1), r(1));
        assert_eq!(normalize_frame(&n), n);
        assert_eq!(scale_frame(&f, &r(2)), Err(FrameError::NotNormalized(r(5))));
    }

    #[test]
    fn normalize_is_identity_on_normalized_models() {
        let s = model(BuiltinModel::Sl2);
        assert_eq!(normalize_frame(&s), s);
        let u = model(BuiltinModel::Su2);
        assert_eq!(normalize_frame(&u), u);
    }

    #[test]
    fn scale_frame_examples() {
        let u = model(BuiltinModel::Su2);
        assert_eq!(scale_frame(&u, &r(1)).unwrap(), u);
        let s2 = scale_frame(&u, &r(2)).unwrap();
        assert_eq!(s2.c(0, 1, 2), u.c(0, 1, 2) * q(1, 4));
        assert_eq!(s2.c(1, 0, 2), u.c(1, 0, 2) * r(4));
        assert_eq!(s2.c(2, 0, 1), r(1));
        assert_eq!(scale_frame(&s2, &q(1, 2)).unwrap(), u);
        assert_eq!(scale_frame(&u, &r(0)), Err(FrameError::ZeroFactor));
    }

    #[test]
    fn scale_action_law() {
        let u = model(BuiltinModel::Sl2);
        let (b1, b2) = (q(3, 2), q(-5, 7));
        let lhs = scale_frame(&scale_frame(&u, &b2).unwrap(), &b1).unwrap();
        let rhs = scale_frame(&u, &(&b1 * &b2)).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn contact_rescaling_examples() {
        let s = model(BuiltinModel::Sl2);
        assert_eq!(rescale_contact_form(&s, &r(1)).unwrap(), s);
        let k = rescale_contact_form(&s, &q(1, 3)).unwrap();
        assert_eq!(k.scales(), &[r(1), r(3), r(3)]);
        assert_eq!(k.role_names()[2], "3*H");
        assert!(k.is_normalized());
        let back = rescale_contact_form(&k, &q(3, 1)).unwrap();
        assert_eq!(back, s);
        assert_eq!(rescale_contact_form(&s, &r(0)), Err(FrameError::ZeroFactor));
    }
}
