use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::ModelError;
use crate::exact_field::Rational;
use crate::lie_algebra::{BracketTable, LieAlgebra3};
use crate::path_structure::{normalize_frame, rescale_contact_form, validate_adapted_frame, AdaptedFrame};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum BuiltinModel {
    Heis3,
    Sl2,
    /// SL(2,ℝ) with Reeb field `k·H`.
    Sl2Scaled(Rational),
    Su2,
}

impl BuiltinModel {
    pub const NAMES: [&'static str; 4] = ["heis3", "sl2", "sl2_k:<k>", "su2"];
}

impl FromStr for BuiltinModel {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "heis3" => Ok(BuiltinModel::Heis3),
            "sl2" => Ok(BuiltinModel::Sl2),
            "su2" => Ok(BuiltinModel::Su2),
            _ => {
                let k = s
                    .strip_prefix("sl2_k:")
                    .and_then(|k| k.parse::<Rational>().ok())
                    .filter(|k| !k.is_zero())
                    .ok_or_else(|| ModelError::UnknownModel(s.to_string()))?;
                Ok(BuiltinModel::Sl2Scaled(k))
            }
        }
    }
}

impl fmt::Display for BuiltinModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BuiltinModel::Heis3 => write!(f, "heis3"),
            BuiltinModel::Sl2 => write!(f, "sl2"),
            BuiltinModel::Sl2Scaled(k) => write!(f, "sl2_k:{k}"),
            BuiltinModel::Su2 => write!(f, "su2"),
        }
    }
}

fn r(n: i64) -> Rational {
    Rational::from_int(n)
}

fn v(a: i64, b: i64, c: i64) -> [Rational; 3] {
    [r(a), r(b), r(c)]
}

/// Named algebra with its standard adapted frame.
pub fn builtin_model(model: &BuiltinModel) -> Result<(LieAlgebra3, AdaptedFrame), ModelError> {
    let algebra = match model {
        BuiltinModel::Heis3 => LieAlgebra3::new("heis3", ["X", "Y", "Z"], &[(0, 1, v(0, 0, 1))])?,
        BuiltinModel::Sl2 | BuiltinModel::Sl2Scaled(_) => LieAlgebra3::new(
            "sl2",
            ["E", "F", "H"],
            &[(0, 1, v(0, 0, 1)), (2, 0, v(2, 0, 0)), (2, 1, v(0, -2, 0))],
        )?,
        BuiltinModel::Su2 => LieAlgebra3::new(
            "su2",
            ["X1", "X2", "R"],
            &[(0, 1, v(0, 0, 1)), (1, 2, v(1, 0, 0)), (2, 0, v(0, 1, 0))],
        )?,
    };
    let mut frame = validate_adapted_frame(&algebra, [0, 1, 2])?;
    if let BuiltinModel::Sl2Scaled(k) = model {
        let c = k.recip().map_err(|_| ModelError::UnknownModel(model.to_string()))?;
        frame = rescale_contact_form(&frame, &c)?;
    }
    Ok((algebra, frame))
}

/// Parameters of the family
/// `[e₁,e₂] = e₃ + p e₁ + q e₂`, `[e₃,e₁] = A e₁ + B e₂`, `[e₃,e₂] = C e₁ − A e₂`,
/// which satisfies Jacobi exactly when `A p + C q = 0` and `B p − A q = 0`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct FamilyParams {
    pub p: Rational,
    pub q: Rational,
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
}

pub fn family_member(params: &FamilyParams) -> Result<(LieAlgebra3, AdaptedFrame), ModelError> {
    let FamilyParams { p, q, a, b, c } = params;
    let g = LieAlgebra3::new(
        "family",
        ["e1", "e2", "e3"],
        &[
            (0, 1, [p.clone(), q.clone(), Rational::one()]),
            (2, 0, [a.clone(), b.clone(), Rational::zero()]),
            (2, 1, [c.clone(), -a, Rational::zero()]),
        ],
    )?;
    let f = validate_adapted_frame(&g, [0, 1, 2])?;
    Ok((g, f))
}

fn small_rational(rng: &mut ChaCha8Rng, allow_zero: bool) -> Rational {
    loop {
        let n: i64 = rng.gen_range(-4..=4);
        let d: i64 = rng.gen_range(1..=3);
        if allow_zero || n != 0 {
            return Rational::frac(n, d);
        }
    }
}

fn draw_params(rng: &mut ChaCha8Rng) -> FamilyParams {
    match rng.gen_range(0..3) {
        // Generic (A, B, C): the constraint matrix is usually invertible, forcing p = q = 0.
        0 => FamilyParams {
            p: Rational::zero(),
            q: Rational::zero(),
            a: small_rational(rng, true),
            b: small_rational(rng, true),
            c: small_rational(rng, true),
        },
        // Degenerate (A, B, C) = s(uv, v², −u²) with (p, q) = t(u, v) in its kernel.
        _ => {
            let (u, w) = (small_rational(rng, true), small_rational(rng, true));
            let s = small_rational(rng, true);
            let t = small_rational(rng, true);
            FamilyParams {
                p: &t * &u,
                q: &t * &w,
                a: &s * &u * &w,
                b: &s * &w * &w,
                c: -(&s * &u * &u),
            }
        }
    }
}

/// Deterministic sample of adapted algebras from the family above.
///
/// Uses ChaCha8 seeded with `seed`, so the output is identical on every platform.
/// Each member is also presented with its basis shuffled and `[e₁,e₂]` scaled
/// by a random nonzero factor before normalization, so frames exercise the
/// permutation and normalization paths.
pub fn corpus(count: usize, seed: u64) -> Vec<(LieAlgebra3, AdaptedFrame)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let params = draw_params(&mut rng);
        let (base, _) = family_member(&params).expect("family members satisfy Jacobi");

        let mut slots = [0usize, 1, 2];
        slots.shuffle(&mut rng);
        let kappa = small_rational(&mut rng, false);
        // Role k sits at basis position slots[k]; e₁ is stored as κ·e₁ so c³₁₂ becomes κ.
        let role_scale = [kappa.clone(), Rational::one(), Rational::one()];
        let mut table = BracketTable::zero(3);
        for i in 0..3 {
            for j in i + 1..3 {
                let coef = &role_scale[i] * &role_scale[j];
                let mut value = vec![Rational::zero(); 3];
                for (k, slot) in slots.iter().enumerate() {
                    value[*slot] = base.c(k, i, j) * &coef / &role_scale[k];
                }
                table.set(slots[i], slots[j], value).expect("3x3 table");
            }
        }
        let mut names = [String::new(), String::new(), String::new()];
        for (k, slot) in slots.iter().enumerate() {
            names[*slot] = format!("e{}", k + 1);
        }
        let name = format!("corpus{}", out.len());
        let g = LieAlgebra3::from_table(name, names, table).expect("relabeling preserves Jacobi");
        let f = validate_adapted_frame(&g, slots).expect("relabeling preserves the frame conditions");
        out.push((g, normalize_frame(&f)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_field::q;

    #[test]
    fn builtin_examples() {
        let (h, hf) = builtin_model(&BuiltinModel::Heis3).unwrap();
        assert_eq!(h.c(2, 0, 1), r(1));
        assert_eq!(hf.role_names(), &["X", "Y", "Z"].map(String::from));
        let (s, _) = builtin_model(&BuiltinModel::Su2).unwrap();
        assert_eq!(s.c(2, 0, 1), r(1));
        assert_eq!(s.c(0, 1, 2), r(1));
        assert_eq!(s.c(1, 2, 0), r(1));
        let plain = builtin_model(&BuiltinModel::Sl2).unwrap();
        assert_eq!(builtin_model(&BuiltinModel::Sl2Scaled(r(1))).unwrap(), plain);
    }

    #[test]
    fn names_parse() {
        assert_eq!("sl2_k:3/2".parse::<BuiltinModel>().unwrap(), BuiltinModel::Sl2Scaled(q(3, 2)));
        assert!("sl2_k:0".parse::<BuiltinModel>().is_err());
        assert!("so3".parse::<BuiltinModel>().is_err());
        for m in [BuiltinModel::Heis3, BuiltinModel::Sl2Scaled(q(-1, 3)), BuiltinModel::Su2] {
            assert_eq!(m.to_string().parse::<BuiltinModel>().unwrap(), m);
        }
    }

    #[test]
    fn family_specializations() {
        let (_, sl2) = builtin_model(&BuiltinModel::Sl2).unwrap();
        let (_, f) = family_member(&FamilyParams { a: r(2), ..Default::default() }).unwrap();
        assert_eq!(f.algebra().table(), sl2.algebra().table());

        let (_, heis) = builtin_model(&BuiltinModel::Heis3).unwrap();
        let (_, f) = family_member(&FamilyParams::default()).unwrap();
        assert_eq!(f.algebra().table(), heis.algebra().table());

        let (_, su2) = builtin_model(&BuiltinModel::Su2).unwrap();
        let (_, f) = family_member(&FamilyParams { b: r(1), c: r(-1), ..Default::default() }).unwrap();
        assert_eq!(f.algebra().table(), su2.algebra().table());
    }

    #[test]
    fn family_rejects_broken_constraints() {
        let bad = FamilyParams { p: r(1), a: r(1), ..Default::default() };
        assert!(family_member(&bad).is_err());
    }

    #[test]
    fn corpus_is_deterministic_and_valid() {
        let a = corpus(30, 42);
        let b = corpus(30, 42);
        assert_eq!(a, b);
        assert_ne!(a, corpus(30, 43));
        for (g, f) in &a {
            assert!(g.validate_jacobi().is_ok());
            assert!(f.is_normalized());
            assert!(validate_adapted_frame(g, f.assignment()).is_ok());
        }
        assert!(a.iter().any(|(_, f)| f.assignment() != [0, 1, 2]));
        assert!(a.iter().any(|(_, f)| !f.c(0, 0, 1).is_zero()), "some p ≠ 0");
    }
}
