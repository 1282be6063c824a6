//! The mutation of a constant-curvature structure: the Heisenberg model
//! algebra `heis(3) ⋊ p` with bracket `[u,v]′ = [u,v] − K(u,v)`, and its
//! identification with `sl(2) ⊕ a` through the linear map `λ`.
//!
//! Everything here is exact over ℚ(√|r|), `r = 3R/2`.

use serde::Serialize;
use thiserror::Error;

use crate::curvature::CurvatureClass;
use crate::exact_field::{ExactMatrix, FieldError, Inertia, QuadExt, Rational};
use crate::lie_algebra::{BracketTable, JacobiReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MutationError {
    #[error("R must be nonzero to build λ")]
    ZeroCurvature,
    #[error("λ was built for r = {lambda} but the mutated algebra has r = {algebra}")]
    MismatchedR { lambda: Rational, algebra: Rational },
    #[error("group parameter a must be positive, got {0}")]
    NonPositiveParameter(Rational),
    #[error(transparent)]
    Field(#[from] FieldError),
}

const X: usize = 0;
const Y: usize = 1;
const Z: usize = 2;
const D: usize = 3;

const E: usize = 0;
const F: usize = 1;
const H: usize = 2;
const T: usize = 3;

fn vec4(a: i64, b: i64, c: i64, d: i64) -> Vec<Rational> {
    vec![a.into(), b.into(), c.into(), d.into()]
}

/// One of the two fixed four-dimensional model algebras.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ModelAlgebra4 {
    name: &'static str,
    labels: [&'static str; 4],
    table: BracketTable,
}

impl ModelAlgebra4 {
    fn build(name: &'static str, labels: [&'static str; 4], brackets: &[(usize, usize, Vec<Rational>)]) -> Self {
        let mut table = BracketTable::zero(4);
        for (i, j, v) in brackets {
            table.set(*i, *j, v.clone()).expect("fixed table has dimension 4");
        }
        assert!(table.jacobi_residuals().is_empty(), "{name} must satisfy Jacobi");
        ModelAlgebra4 { name, labels, table }
    }

    /// `heis(3) ⋊ p` on `(X, Y, Z, D)`: `[X,Y] = Z`, `[D,X] = X`, `[D,Y] = −Y`.
    pub fn heis_p() -> Self {
        Self::build(
            "heis3_x_p",
            ["X", "Y", "Z", "D"],
            &[(X, Y, vec4(0, 0, 1, 0)), (D, X, vec4(1, 0, 0, 0)), (D, Y, vec4(0, -1, 0, 0))],
        )
    }

    /// `sl(2) ⊕ a` on `(E, F, H, T)` with `T` central.
    pub fn sl2_a() -> Self {
        Self::build(
            "sl2_plus_a",
            ["E", "F", "H", "T"],
            &[(E, F, vec4(0, 0, 1, 0)), (H, E, vec4(2, 0, 0, 0)), (H, F, vec4(0, -2, 0, 0))],
        )
    }

    pub fn name(&self) -> &str {
        self.name
    }

    pub fn labels(&self) -> [&'static str; 4] {
        self.labels
    }

    pub fn table(&self) -> &BracketTable {
        &self.table
    }

    pub fn killing_form(&self) -> ExactMatrix {
        self.table.killing()
    }
}

/// The algebra `g′`: `heis(3) ⋊ p` with `[X,Y]′ = Z − 2rD`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MutatedAlgebra {
    base: ModelAlgebra4,
    r_coord: Rational,
    r: Rational,
    table: BracketTable,
}

impl MutatedAlgebra {
    pub fn base(&self) -> &ModelAlgebra4 {
        &self.base
    }

    /// The curvature coordinate `R`.
    pub fn r_coord(&self) -> &Rational {
        &self.r_coord
    }

    /// `r = 3R/2`.
    pub fn r(&self) -> &Rational {
        &self.r
    }

    pub fn table(&self) -> &BracketTable {
        &self.table
    }

    /// `R = 0`: the bracket is unchanged.
    pub fn is_trivial(&self) -> bool {
        self.r.is_zero()
    }

    pub fn bracket(&self, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        self.table.bracket(u, v)
    }
}

/// The curvature `K(u,v)` of the type-𝒟 geometry with coordinate `r`, as an
/// element of `heis(3) ⋊ p`: only the `(X, Y)` slot is nonzero, `K(X,Y) = 2rD`.
pub fn curvature_element(r: &Rational, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
    let xy = &u[X] * &v[Y] - &u[Y] * &v[X];
    let mut out = vec![Rational::zero(); 4];
    out[D] = Rational::from_int(2) * r * &xy;
    out
}

pub fn mutated_bracket(r_coord: &Rational) -> MutatedAlgebra {
    let base = ModelAlgebra4::heis_p();
    let r = r_coord * &Rational::frac(3, 2);
    let mut table = base.table.clone();
    for i in 0..4 {
        for j in i + 1..4 {
            let (ei, ej) = (unit(i), unit(j));
            let k = curvature_element(&r, &ei, &ej);
            let value: Vec<Rational> = base.table.basis_bracket(i, j).iter().zip(&k).map(|(a, b)| a - b).collect();
            table.set(i, j, value).expect("dimension 4");
        }
    }
    MutatedAlgebra { base, r_coord: r_coord.clone(), r, table }
}

/// A deliberately broken variant: the mutated table with `[D,Z]′ = X` added.
pub fn adversarial_mutation(r_coord: &Rational) -> MutatedAlgebra {
    let mut m = mutated_bracket(r_coord);
    m.table.set(D, Z, vec4(1, 0, 0, 0)).expect("dimension 4");
    m
}

pub fn verify_mutation_jacobi(m: &MutatedAlgebra) -> JacobiReport {
    crate::lie_algebra::validate_jacobi(&m.table)
}

fn unit(i: usize) -> Vec<Rational> {
    let mut e = vec![Rational::zero(); 4];
    e[i] = Rational::one();
    e
}

/// The linear map `λ : g′ → sl(2) ⊕ a`, with images as coefficient vectors over `(E, F, H, T)`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct LambdaMap {
    pub r: Rational,
    pub epsilon: i8,
    /// The radicand `|r|` of the working field.
    pub field: Rational,
    pub images: [[QuadExt; 4]; 4],
}

pub fn build_lambda(r_coord: &Rational) -> Result<LambdaMap, MutationError> {
    if r_coord.is_zero() {
        return Err(MutationError::ZeroCurvature);
    }
    let r = r_coord * &Rational::frac(3, 2);
    lambda_with_sign(&r, r.signum())
}

fn lambda_with_sign(r: &Rational, epsilon: i8) -> Result<LambdaMap, MutationError> {
    let m = r.abs();
    let zero = QuadExt::zero(&m)?;
    let rat = |v: Rational| QuadExt::rational(v, &m);
    let half = Rational::frac(1, 2);
    let mut images: [[QuadExt; 4]; 4] = std::array::from_fn(|_| std::array::from_fn(|_| zero.clone()));
    images[X][E] = QuadExt::radical(Rational::one(), &m)?;
    images[Y][F] = QuadExt::radical(Rational::from_int(-i64::from(epsilon)), &m)?;
    images[Z][T] = rat(r.clone())?;
    images[D][H] = rat(half.clone())?;
    images[D][T] = rat(half)?;
    Ok(LambdaMap { r: r.clone(), epsilon, field: m, images })
}

impl LambdaMap {
    /// `λ` with the sign `ε` reversed; not an isomorphism.
    pub fn with_flipped_epsilon(&self) -> LambdaMap {
        lambda_with_sign(&self.r, -self.epsilon).expect("same field as self")
    }

    pub fn apply(&self, v: &[Rational]) -> Result<Vec<QuadExt>, MutationError> {
        let mut out = vec![QuadExt::zero(&self.field)?; 4];
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for k in 0..4 {
                out[k] = out[k].add(&self.images[i][k].scale(c))?;
            }
        }
        Ok(out)
    }

    /// Determinant of the 4×4 matrix whose columns are the images.
    pub fn determinant(&self) -> Result<QuadExt, MutationError> {
        let cols: Vec<Vec<QuadExt>> = self.images.iter().map(|c| c.to_vec()).collect();
        Ok(quad_det(&cols, &self.field)?)
    }
}

/// Laplace expansion along the first column; `cols[j][i]` is entry `(i, j)`.
fn quad_det(cols: &[Vec<QuadExt>], m: &Rational) -> Result<QuadExt, FieldError> {
    let n = cols.len();
    if n == 1 {
        return Ok(cols[0][0].clone());
    }
    let mut acc = QuadExt::zero(m)?;
    for i in 0..n {
        if cols[0][i].is_zero() {
            continue;
        }
        let minor: Vec<Vec<QuadExt>> = cols[1..]
            .iter()
            .map(|c| c.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = cols[0][i].mul(&quad_det(&minor, m)?)?;
        acc = if i % 2 == 0 { acc.add(&term)? } else { acc.sub(&term)? };
    }
    Ok(acc)
}

fn quad_vec_sub(a: &[QuadExt], b: &[QuadExt]) -> Result<Vec<QuadExt>, FieldError> {
    a.iter().zip(b).map(|(x, y)| x.sub(y)).collect()
}

fn quad_vec_is_zero(v: &[QuadExt]) -> bool {
    v.iter().all(QuadExt::is_zero)
}

/// A basis pair and the vector that should have vanished for it.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct PairResidual {
    pub pair: (String, String),
    pub residual: Vec<QuadExt>,
}

fn pair_labels(i: usize, j: usize) -> (String, String) {
    let l = ModelAlgebra4::heis_p().labels;
    (l[i].to_string(), l[j].to_string())
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct IsoReport {
    pub ok: bool,
    pub determinant: QuadExt,
    pub failing_pairs: Vec<PairResidual>,
}

/// Checks `λ([u,v]′) = [λu, λv]` on all six basis pairs and `det λ ≠ 0`.
pub fn verify_lambda_iso(m: &MutatedAlgebra, lambda: &LambdaMap) -> Result<IsoReport, MutationError> {
    if m.r != lambda.r {
        return Err(MutationError::MismatchedR { lambda: lambda.r.clone(), algebra: m.r.clone() });
    }
    let target = ModelAlgebra4::sl2_a();
    let mut failing_pairs = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            let lhs = lambda.apply(&m.table.basis_bracket(i, j))?;
            let rhs = target.table.bracket_quad(&lambda.images[i], &lambda.images[j], &lambda.field)?;
            let residual = quad_vec_sub(&lhs, &rhs)?;
            if !quad_vec_is_zero(&residual) {
                failing_pairs.push(PairResidual { pair: pair_labels(i, j), residual });
            }
        }
    }
    let determinant = lambda.determinant()?;
    Ok(IsoReport { ok: failing_pairs.is_empty() && !determinant.is_zero(), determinant, failing_pairs })
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ModAPair {
    pub pair: (String, String),
    /// `[λu, λv] − λ([u,v])` with the unmutated bracket.
    pub difference: Vec<QuadExt>,
    /// The difference equals `−λ(K(u,v))`.
    pub matches_curvature: bool,
    /// The difference lies in `λ(p) = span(H + T)`.
    pub in_isotropy: bool,
    /// The difference lies in `span(T)`.
    pub in_a: bool,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ModAReport {
    pub ok: bool,
    /// Every difference already lies in `span(T)`.
    pub strictly_in_a: bool,
    pub pairs: Vec<ModAPair>,
}

/// Compares `[λu, λv]` with `λ([u,v])` for the unmutated bracket.
///
/// The two differ by `−λ(K(u,v))`, which lies in `λ(p) = span(H+T)`; that is
/// what is required for `ok`. Whether the difference is even inside `span(T)`
/// is reported separately: for the pair `(X, Y)` it is `−r(H+T)`, which is not.
pub fn verify_mod_a_compatibility(lambda: &LambdaMap) -> Result<ModAReport, MutationError> {
    let base = ModelAlgebra4::heis_p();
    let target = ModelAlgebra4::sl2_a();
    let mut pairs = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            let lhs = target.table.bracket_quad(&lambda.images[i], &lambda.images[j], &lambda.field)?;
            let rhs = lambda.apply(&base.table.basis_bracket(i, j))?;
            let difference = quad_vec_sub(&lhs, &rhs)?;
            let k = lambda.apply(&curvature_element(&lambda.r, &unit(i), &unit(j)))?;
            let sum: Vec<QuadExt> = difference.iter().zip(&k).map(|(a, b)| a.add(b)).collect::<Result<_, _>>()?;
            let in_a = [E, F, H].iter().all(|&c| difference[c].is_zero());
            let in_isotropy = difference[E].is_zero()
                && difference[F].is_zero()
                && difference[H].sub(&difference[T])?.is_zero();
            pairs.push(ModAPair {
                pair: pair_labels(i, j),
                difference,
                matches_curvature: quad_vec_is_zero(&sum),
                in_isotropy,
                in_a,
            });
        }
    }
    let ok = pairs.iter().all(|p| p.matches_curvature && p.in_isotropy);
    let strictly_in_a = pairs.iter().all(|p| p.in_a);
    Ok(ModAReport { ok, strictly_in_a, pairs })
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct AdReport {
    pub ok: bool,
    pub a: Rational,
    pub failing: Vec<(String, Vec<QuadExt>)>,
}

/// Checks `λ ∘ Ad_p = Ad_{Λ(p)} ∘ λ` with both adjoint actions `diag(a, 1/a, 1, 1)`.
pub fn verify_ad_equivariance(lambda: &LambdaMap, a: &Rational) -> Result<AdReport, MutationError> {
    if a.signum() <= 0 {
        return Err(MutationError::NonPositiveParameter(a.clone()));
    }
    let ad = [a.clone(), a.recip()?, Rational::one(), Rational::one()];
    let labels = ModelAlgebra4::heis_p().labels;
    let mut failing = Vec::new();
    for i in 0..4 {
        let mut v = unit(i);
        v[i] = ad[i].clone();
        let lhs = lambda.apply(&v)?;
        let rhs: Vec<QuadExt> = lambda.images[i].iter().zip(&ad).map(|(c, s)| c.scale(s)).collect();
        let residual = quad_vec_sub(&lhs, &rhs)?;
        if !quad_vec_is_zero(&residual) {
            failing.push((labels[i].to_string(), residual));
        }
    }
    Ok(AdReport { ok: failing.is_empty(), a: a.clone(), failing })
}

/// Local model attached to a curvature class.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ModelIdentification {
    pub class: &'static str,
    pub local_model: &'static str,
    pub automorphism_group: &'static str,
    /// Factor `−r` by which the contact form is multiplied to reach the model.
    pub contact_rescaling: Option<Rational>,
    /// `(negative, positive, zero)` inertia of the Killing form of `sl(2) ⊕ a`.
    pub killing_signature: Option<(usize, usize, usize)>,
    pub note: String,
}

pub fn identify_model(class: &CurvatureClass) -> ModelIdentification {
    match class {
        CurvatureClass::Flat => ModelIdentification {
            class: class.label(),
            local_model: "Heis(3)",
            automorphism_group: "Heis(3) x P",
            contact_rescaling: None,
            killing_signature: None,
            note: "flat: locally isomorphic to the Heisenberg model".into(),
        },
        CurvatureClass::ConstantCurvature { r, .. } => {
            let Inertia { negative, positive, zero } =
                ModelAlgebra4::sl2_a().killing_form().inertia().expect("Killing forms are symmetric");
            ModelIdentification {
                class: class.label(),
                local_model: "SL(2,R)",
                automorphism_group: "SL(2,R) x A",
                contact_rescaling: Some(-r),
                killing_signature: Some((negative, positive, zero)),
                note: format!("locally the SL(2,R) model after multiplying the contact form by {}", -r),
            }
        }
        CurvatureClass::NotTypeD => ModelIdentification {
            class: class.label(),
            local_model: "none",
            automorphism_group: "none",
            contact_rescaling: None,
            killing_signature: None,
            note: "outside theorem scope: curvature is not of type D".into(),
        },
    }
}

/// Outcome of the four mutation checks for one value of `R`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct MutationSuite {
    pub r_coord: Rational,
    pub r: Rational,
    pub jacobi: bool,
    pub lambda_iso: IsoReport,
    pub mod_a: ModAReport,
    pub ad_equivariance: Vec<AdReport>,
}

impl MutationSuite {
    pub fn is_ok(&self) -> bool {
        self.jacobi && self.lambda_iso.ok && self.mod_a.ok && self.ad_equivariance.iter().all(|r| r.ok)
    }
}

pub fn run_mutation_suite(r_coord: &Rational, params: &[Rational]) -> Result<MutationSuite, MutationError> {
    let m = mutated_bracket(r_coord);
    let lambda = build_lambda(r_coord)?;
    let ad_equivariance = params.iter().map(|a| verify_ad_equivariance(&lambda, a)).collect::<Result<_, _>>()?;
    Ok(MutationSuite {
        r_coord: r_coord.clone(),
        r: m.r.clone(),
        jacobi: verify_mutation_jacobi(&m).is_ok(),
        lambda_iso: verify_lambda_iso(&m, &lambda)?,
        mod_a: verify_mod_a_compatibility(&lambda)?,
        ad_equivariance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_field::q;
    use proptest::prelude::*;

    fn r(n: i64) -> Rational {
        q(n, 1)
    }

    fn qv(v: &[QuadExt]) -> Vec<(Rational, Rational)> {
        v.iter().map(|x| (x.a().clone(), x.b().clone())).collect()
    }

    #[test]
    fn model_algebras() {
        let h = ModelAlgebra4::heis_p();
        assert_eq!(h.table().basis_bracket(D, Z), vec4(0, 0, 0, 0));
        assert_eq!(h.table().basis_bracket(Y, D), vec4(0, 1, 0, 0));
        let s = ModelAlgebra4::sl2_a();
        let k = s.killing_form();
        assert_eq!((k.get(E, F), k.get(H, H), k.get(T, T)), (&r(4), &r(8), &r(0)));
        assert_eq!(k.inertia().unwrap(), Inertia { negative: 1, positive: 2, zero: 1 });
    }

    #[test]
    fn mutated_tables() {
        let m = mutated_bracket(&q(-2, 3));
        assert_eq!(m.r(), &r(-1));
        assert_eq!(m.table().basis_bracket(X, Y), vec4(0, 0, 1, 2));
        assert_eq!(m.table().basis_bracket(D, X), vec4(1, 0, 0, 0));
        assert_eq!(m.table().basis_bracket(D, Y), vec4(0, -1, 0, 0));
        for j in 0..4 {
            assert!(m.table().basis_bracket(Z, j).iter().all(Rational::is_zero));
        }
        let m = mutated_bracket(&q(2, 3));
        assert_eq!(m.table().basis_bracket(X, Y), vec4(0, 0, 1, -2));
        let m = mutated_bracket(&r(0));
        assert!(m.is_trivial());
        assert_eq!(m.table(), ModelAlgebra4::heis_p().table());
    }

    #[test]
    fn jacobi_and_negative_control() {
        for rc in [q(-2, 3), q(5, 7), r(1)] {
            assert!(verify_mutation_jacobi(&mutated_bracket(&rc)).is_ok());
        }
        let bad = verify_mutation_jacobi(&adversarial_mutation(&q(-2, 3)));
        assert!(!bad.is_ok());
        // triple (Y, Z, D): [[Y,Z],D] + [[Z,D],Y] + [[D,Y],Z] = [−X, Y]′ = −(Z + 2D)
        let t = bad.residuals.iter().find(|x| x.triple == (Y, Z, D)).unwrap();
        assert_eq!(t.residual, vec4(0, 0, -1, -2));
    }

    #[test]
    fn lambda_images() {
        let l = build_lambda(&q(-2, 3)).unwrap();
        assert_eq!((l.r.clone(), l.epsilon), (r(-1), -1));
        assert_eq!(l.apply(&vec4(1, 0, 0, 0)).unwrap()[E].collapse(), Some(r(1)));
        assert_eq!(l.apply(&vec4(0, 1, 0, 0)).unwrap()[F].collapse(), Some(r(1)));
        assert_eq!(l.apply(&vec4(0, 0, 1, 0)).unwrap()[T].collapse(), Some(r(-1)));
        let l = build_lambda(&q(2, 3)).unwrap();
        assert_eq!(l.apply(&vec4(0, 1, 0, 0)).unwrap()[F].collapse(), Some(r(-1)));
        let l = build_lambda(&r(2)).unwrap();
        assert_eq!(l.field, r(3));
        assert_eq!(qv(&l.images[X])[E], (r(0), r(1)));
        assert_eq!(build_lambda(&r(0)), Err(MutationError::ZeroCurvature));
    }

    #[test]
    fn key_pair_maps_to_h() {
        let m = mutated_bracket(&q(-2, 3));
        let l = build_lambda(&q(-2, 3)).unwrap();
        let image = l.apply(&m.table().basis_bracket(X, Y)).unwrap();
        let vals: Vec<Option<Rational>> = image.iter().map(QuadExt::collapse).collect();
        assert_eq!(vals, vec![Some(r(0)), Some(r(0)), Some(r(1)), Some(r(0))]);
    }

    #[test]
    fn determinant_is_half_r_squared() {
        for rc in [q(-2, 3), q(5, 7), r(2), q(-9, 4)] {
            let l = build_lambda(&rc).unwrap();
            let det = l.determinant().unwrap();
            let rr = &rc * &q(3, 2);
            assert!(det.sub(&QuadExt::rational(&rr * &rr * &q(1, 2), &l.field).unwrap()).unwrap().is_zero());
        }
    }

    #[test]
    fn iso_and_flipped_sign() {
        for rc in [q(-2, 3), q(5, 7), q(2, 3)] {
            let m = mutated_bracket(&rc);
            let l = build_lambda(&rc).unwrap();
            assert!(verify_lambda_iso(&m, &l).unwrap().ok);
            let bad = verify_lambda_iso(&m, &l.with_flipped_epsilon()).unwrap();
            assert!(!bad.ok);
            assert_eq!(bad.failing_pairs.len(), 1);
            assert_eq!(bad.failing_pairs[0].pair, ("X".to_string(), "Y".to_string()));
        }
        let m = mutated_bracket(&r(1));
        let l = build_lambda(&r(2)).unwrap();
        assert!(matches!(verify_lambda_iso(&m, &l), Err(MutationError::MismatchedR { .. })));
    }

    #[test]
    fn mod_a_report() {
        let rep = verify_mod_a_compatibility(&build_lambda(&q(-2, 3)).unwrap()).unwrap();
        assert!(rep.ok);
        assert!(!rep.strictly_in_a);
        let xy = &rep.pairs[0];
        // [E,F] − λ(Z) = H + T when r = −1
        assert_eq!(xy.difference.iter().map(QuadExt::collapse).collect::<Vec<_>>(), vec![Some(r(0)), Some(r(0)), Some(r(1)), Some(r(1))]);
        assert!(rep.pairs[1..].iter().all(|p| p.in_a && p.difference.iter().all(QuadExt::is_zero)));
        assert!(verify_mod_a_compatibility(&build_lambda(&r(1)).unwrap()).unwrap().ok);
    }

    #[test]
    fn ad_equivariance() {
        let l = build_lambda(&q(5, 7)).unwrap();
        for a in [r(1), r(4), q(9, 2)] {
            assert!(verify_ad_equivariance(&l, &a).unwrap().ok);
        }
        assert!(verify_ad_equivariance(&l, &r(0)).is_err());
        assert!(verify_ad_equivariance(&l, &r(-2)).is_err());
    }

    #[test]
    fn identification() {
        let c = CurvatureClass::ConstantCurvature { r_coord: q(-2, 3), r: r(-1), epsilon: -1 };
        let id = identify_model(&c);
        assert_eq!((id.local_model, id.contact_rescaling.clone()), ("SL(2,R)", Some(r(1))));
        assert_eq!(id.killing_signature, Some((1, 2, 1)));
        assert_eq!(identify_model(&CurvatureClass::Flat).local_model, "Heis(3)");
        assert_eq!(identify_model(&CurvatureClass::NotTypeD).local_model, "none");
    }

    #[test]
    fn mutated_killing_matches_target() {
        // g′ ≅ sl(2) ⊕ a, so the Killing forms have the same inertia.
        let m = mutated_bracket(&q(5, 7));
        assert_eq!(m.table().killing().inertia().unwrap(), ModelAlgebra4::sl2_a().killing_form().inertia().unwrap());
    }

    proptest! {
        #[test]
        fn suite_holds_for_random_r(n in -50i64..50, d in 1i64..30, an in 1i64..20, ad in 1i64..20) {
            prop_assume!(n != 0);
            let suite = run_mutation_suite(&q(n, d), &[q(an, ad)]).unwrap();
            prop_assert!(suite.is_ok(), "{:?}", suite);
        }
    }
}
