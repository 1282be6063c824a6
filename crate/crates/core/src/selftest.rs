//! The acceptance checks, runnable from the binary with `cartanpath selftest`.

use std::fmt::Display;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cartan_connection::{solve_connection, verify_structure_equations, ConnectionData};
use crate::cli_io::{cli_dispatch, frame_echo, parse_algebra_spec, random_heis_point};
use crate::curvature::{classify, curvature_of, transform_curvature, CurvatureClass, CurvatureData};
use crate::exact_field::{q, QuadExt, Rational};
use crate::lorentz_metric::{check_lorentz_heisenberg, induced_metric, signature};
use crate::models_dynamics::{
    builtin_model, central_flow_period, cocycle_defect, corpus, diagonal_flow_differential, verify_anosov_estimate,
    BuiltinModel, REL_TOL_COMPOSED, REL_TOL_SINGLE,
};
use crate::mutation::{build_lambda, mutated_bracket, run_mutation_suite};
use crate::path_structure::{rescale_contact_form, scale_frame, AdaptedFrame};

const CORPUS_SEED: u64 = 20;
const CORPUS_SIZE: usize = 50;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CriterionResult {
    pub id: u8,
    pub title: &'static str,
    pub ok: bool,
    pub detail: String,
}

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<E: Display>(err: E) -> String {
    err.to_string()
}

fn model(m: BuiltinModel) -> Result<AdaptedFrame, String> {
    builtin_model(&m).map(|(_, f)| f).map_err(e)
}

fn curv(f: &AdaptedFrame) -> Result<(ConnectionData, CurvatureData), String> {
    curvature_of(f).map_err(e)
}

fn test_frames() -> Result<Vec<AdaptedFrame>, String> {
    let mut out: Vec<AdaptedFrame> = corpus(CORPUS_SIZE, CORPUS_SEED).into_iter().map(|(_, f)| f).collect();
    for m in [BuiltinModel::Heis3, BuiltinModel::Sl2, BuiltinModel::Su2] {
        out.push(model(m)?);
    }
    Ok(out)
}

fn c1_sl2() -> Check {
    let f = model(BuiltinModel::Sl2)?;
    let (conn, k) = curv(&f)?;
    let expected = ConnectionData { w3: q(2, 3), ..Default::default() };
    ensure(conn == expected, || format!("connection {conn:?}"))?;
    ensure(k.r.abs() == q(2, 3), || format!("R = {}", k.r))?;
    let class = classify(&k);
    let want = CurvatureClass::ConstantCurvature { r_coord: q(-2, 3), r: q(-1, 1), epsilon: -1 };
    ensure(class == want, || format!("class {class:?}"))?;
    Ok(format!("w = (0, 0, 2/3), R = {}, r = -1, epsilon = -1", k.r))
}

fn c2_su2() -> Check {
    let (conn, k) = curv(&model(BuiltinModel::Su2)?)?;
    ensure(conn.tau12 == q(1, 1) && conn.tau21 == q(-1, 1), || format!("tau = ({}, {})", conn.tau12, conn.tau21))?;
    ensure(k.w1.is_zero() && k.w2.is_zero() && k.r.is_zero(), || format!("{k:?}"))?;
    ensure(k.s11 == q(-1, 1) && k.s22 == q(-1, 1), || format!("S11 = {}, S22 = {}", k.s11, k.s22))?;
    ensure(classify(&k) == CurvatureClass::NotTypeD, || "expected not_type_D".into())?;
    Ok("tau12 = 1, tau21 = -1, S11 = S22 = -1, not type D".into())
}

fn c3_heis() -> Check {
    let (_, k) = curv(&model(BuiltinModel::Heis3)?)?;
    ensure(k.coordinates().iter().all(|c| c.is_zero()), || format!("{k:?}"))?;
    ensure(classify(&k) == CurvatureClass::Flat, || "expected flat".into())?;
    Ok("all nine coordinates vanish".into())
}

fn c4_bianchi() -> Check {
    let frames = test_frames()?;
    for f in &frames {
        let (_, k) = curv(f)?;
        let t = &k.tau12 * &k.tau21;
        ensure(k.s11 == t && k.s22 == t, || format!("{}: S11 = {}, S22 = {}, tau12 tau21 = {t}", f.source().name(), k.s11, k.s22))?;
    }
    Ok(format!("{} algebras", frames.len()))
}

fn c5_remark() -> Check {
    let frames = test_frames()?;
    let mut hits = 0;
    for f in &frames {
        let (_, k) = curv(f)?;
        if k.tau12.is_zero() {
            hits += 1;
            ensure(k.w2.is_zero(), || format!("{}: tau12 = 0 but W2 = {}", f.source().name(), k.w2))?;
        }
        if k.tau21.is_zero() {
            hits += 1;
            ensure(k.w1.is_zero(), || format!("{}: tau21 = 0 but W1 = {}", f.source().name(), k.w1))?;
        }
    }
    Ok(format!("{} algebras, {hits} vanishing torsion coefficients", frames.len()))
}

fn c6_equivariance() -> Check {
    let frames = test_frames()?;
    for f in &frames {
        let (_, k) = curv(f)?;
        for b in [q(2, 1), q(3, 1), q(1, 2), q(-1, 1)] {
            let (_, kb) = curv(&scale_frame(f, &b).map_err(e)?)?;
            let predicted = transform_curvature(&k, &b).map_err(e)?;
            ensure(kb == predicted, || format!("{} b = {b}: {kb:?} vs {predicted:?}", f.source().name()))?;
            ensure(kb.r == k.r, || format!("R changed under b = {b}"))?;
        }
    }
    Ok(format!("{} algebras x 4 values of b", frames.len()))
}

fn c7_rescaling() -> Check {
    let mut frames = vec![model(BuiltinModel::Sl2)?];
    frames.extend(corpus(CORPUS_SIZE, CORPUS_SEED).into_iter().map(|(_, f)| f));
    for f in &frames {
        let (_, k) = curv(f)?;
        for c in [q(2, 1), q(1, 2), q(-1, 1), q(5, 7)] {
            let (_, kc) = curv(&rescale_contact_form(f, &c).map_err(e)?)?;
            ensure(kc.r == &k.r / &c, || format!("{} c = {c}: R = {} vs {}", f.source().name(), kc.r, &k.r / &c))?;
        }
    }
    for k in [q(1, 1), q(2, 1), q(-3, 1), q(1, 2), q(5, 7)] {
        let (_, kd) = curv(&model(BuiltinModel::Sl2Scaled(k.clone()))?)?;
        ensure(kd.r == &k * &q(-2, 3), || format!("Reeb {k}H: R = {}", kd.r))?;
    }
    Ok(format!("{} frames x 4 values of c; Reeb kH gives R = -2k/3", frames.len()))
}

fn c8_mutation() -> Check {
    let params = [q(1, 1), q(4, 1), q(9, 2)];
    for rc in [q(-2, 3), q(2, 3), q(1, 1), q(5, 7), q(-9, 4)] {
        let suite = run_mutation_suite(&rc, &params).map_err(e)?;
        ensure(suite.is_ok(), || format!("R = {rc}: {suite:?}"))?;
    }
    let m = mutated_bracket(&q(-2, 3));
    let lambda = build_lambda(&q(-2, 3)).map_err(e)?;
    let image = lambda.apply(&m.table().basis_bracket(0, 1)).map_err(e)?;
    let h: Vec<QuadExt> = [0, 0, 1, 0]
        .iter()
        .map(|&c| QuadExt::rational(Rational::from_int(c), &lambda.field))
        .collect::<Result<_, _>>()
        .map_err(e)?;
    let same = image.iter().zip(&h).all(|(a, b)| a.sub(b).map(|d| d.is_zero()).unwrap_or(false));
    ensure(same, || format!("lambda([X,Y]') = {image:?}"))?;
    Ok("5 values of R x 3 values of a; lambda([X,Y]') = H at R = -2/3".into())
}

fn c9_uniqueness() -> Check {
    let mut count = 0;
    for (_, f) in corpus(10, CORPUS_SEED) {
        let conn = solve_connection(&f).map_err(e)?;
        ensure(verify_structure_equations(&f, &conn).is_ok(), || "solved connection fails".into())?;
        let base = conn.to_vec();
        for i in 0..base.len() {
            let mut v = base.clone();
            v[i] += &Rational::one();
            let perturbed = ConnectionData::from_vec(&v);
            ensure(!verify_structure_equations(&f, &perturbed).is_ok(), || format!("perturbing slot {i} still solves"))?;
            count += 1;
        }
    }
    Ok(format!("{count} perturbations rejected"))
}

fn c10_anosov() -> Check {
    let grid = [0.1, 0.5, 1.0, 2.0, 5.0];
    for &t in &grid {
        let (s, _) = diagonal_flow_differential(t).map_err(e)?;
        let rel = (s.measured_norm - (-2.0 * t).exp()).abs() / (-2.0 * t).exp();
        ensure(rel <= REL_TOL_SINGLE, || format!("t = {t}: relative error {rel:e}"))?;
    }
    let rep = verify_anosov_estimate(&grid).map_err(e)?;
    ensure(rep.ok, || format!("worst ratio {}", rep.worst_ratio))?;
    for (s, t) in [(0.1, 0.5), (1.0, 2.0), (2.0, 5.0)] {
        let d = cocycle_defect(s, t).map_err(e)?;
        ensure(d <= REL_TOL_COMPOSED, || format!("cocycle defect {d:e} at ({s}, {t})"))?;
    }
    Ok(format!("worst ratio {:.12}", rep.worst_ratio))
}

fn c11_central() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED);
    for _ in 0..20 {
        let g = random_heis_point(&mut rng);
        let t = central_flow_period(&g);
        ensure(t.is_one(), || format!("period {t} at {g:?}"))?;
    }
    Ok("20 basepoints, period 1".into())
}

fn c12_metric() -> Check {
    let frames = test_frames()?;
    for f in &frames {
        let sig = signature(&induced_metric(f).map_err(e)?).map_err(e)?;
        ensure(sig == (1, 2), || format!("{}: signature {sig:?}", f.source().name()))?;
    }
    let rep = check_lorentz_heisenberg(&model(BuiltinModel::Heis3)?).map_err(e)?;
    ensure(rep.ok, || format!("{:?}", rep.discrepancies))?;
    Ok(format!("{} frames of signature (1,2); {}", frames.len(), rep.sign_note))
}

fn run_cli(args: &[&str], input: &str) -> crate::cli_io::CliOutcome {
    let mut stdin = input.as_bytes();
    cli_dispatch(std::iter::once("cartanpath").chain(args.iter().copied()), &mut stdin)
}

fn c13_interface() -> Check {
    let mut texts: Vec<String> = test_frames()?.iter().map(frame_echo).collect();
    texts.push("algebra g  # hand written\nbasis a b c\nbracket b a = -2 c\nbracket c a = 1/2 b\n\nbracket c b = 3 a\nframe b a c\n".into());
    let mut round_trips = 0;
    for text in &texts {
        let p = parse_algebra_spec(text).map_err(|err| format!("{text:?}: {err}"))?;
        let echo = p.canonical();
        let again = parse_algebra_spec(&echo).map_err(e)?;
        ensure(again == p, || format!("round trip changed {echo:?}"))?;
        let first = run_cli(&["classify"], text);
        ensure(first.code == 0, || first.stderr.clone())?;
        let report: serde_json::Value = serde_json::from_str(&first.stdout).map_err(e)?;
        let echoed = report["input"].as_str().unwrap_or_default();
        ensure(parse_algebra_spec(echoed).map_err(e)? == p, || "report input echo does not round-trip".into())?;
        ensure(run_cli(&["classify"], text) == first, || "classify output differs between runs".into())?;
        round_trips += 1;
    }
    let m = run_cli(&["mutate", "--R", "-2/3"], "");
    ensure(m.code == 0 && run_cli(&["mutate", "--R", "-2/3"], "") == m, || "mutate output unstable".into())?;
    Ok(format!("{round_trips} specs round-trip with byte-identical reports"))
}

const CRITERIA: [(u8, &str, fn() -> Check); 13] = [
    (1, "SL(2,R) model oracle", c1_sl2),
    (2, "SU(2) model oracle", c2_su2),
    (3, "Heis(3) flatness", c3_heis),
    (4, "Bianchi relation S11 = S22 = tau12 tau21", c4_bianchi),
    (5, "vanishing torsion kills W", c5_remark),
    (6, "structure-group equivariance", c6_equivariance),
    (7, "contact rescaling", c7_rescaling),
    (8, "mutation suite", c8_mutation),
    (9, "connection uniqueness", c9_uniqueness),
    (10, "Anosov contraction of the diagonal flow", c10_anosov),
    (11, "central flow periodicity", c11_central),
    (12, "induced Lorentzian metric", c12_metric),
    (13, "interface round trip and determinism", c13_interface),
];

/// Runs all criteria on scoped threads; results come back ordered by id.
pub fn run_selftest() -> Vec<CriterionResult> {
    std::thread::scope(|s| {
        let handles: Vec<_> = CRITERIA
            .iter()
            .map(|&(id, title, check)| {
                s.spawn(move || {
                    let (ok, detail) = match check() {
                        Ok(d) => (true, d),
                        Err(d) => (false, d),
                    };
                    CriterionResult { id, title, ok, detail }
                })
            })
            .collect();
        handles
            .into_iter()
            .zip(CRITERIA.iter())
            .map(|(h, &(id, title, _))| {
                h.join().unwrap_or_else(|_| CriterionResult { id, title, ok: false, detail: "panicked".into() })
            })
            .collect()
    })
}

pub fn render_results(results: &[CriterionResult]) -> String {
    let mut out = String::new();
    for r in results {
        let tag = if r.ok { "PASS" } else { "FAIL" };
        out.push_str(&format!("[{tag}] {:>2} {}: {}\n", r.id, r.title, r.detail));
    }
    let passed = results.iter().filter(|r| r.ok).count();
    out.push_str(&format!("{passed}/{} criteria passed\n", results.len()));
    out
}
