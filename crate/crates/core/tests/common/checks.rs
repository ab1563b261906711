//! One randomized case per call. `Ok(true)` means the case exercised the
//! property, `Ok(false)` means the sample fell outside its hypothesis.

use adhm_core::adhm::{
    act, du_decompose, find_isomorphism, is_adhm, is_fj_semistable, is_regular, is_stable,
    moment_components, try_polystable_split, SplitOutcome,
};
use adhm_core::deform::{cohomology_dims, deformation_complex, hypersymplectic_check, surjectivity_criterion};
use adhm_core::hermite::HermiteBasis;
use adhm_core::io::{parse_datum, print_datum};
use adhm_core::monad::{build_monad, framing_on_linf, monad_identity_iff_moment, Monad};
use adhm_core::rank0::{
    charge1_classify, charge1_classify_general, datum_to_module, default_trace_len, trace_invariants,
    Charge1Datum,
};
use adhm_core::{closure, gcd_univariate, AdhmDatum, Matrix, Poly, PolyMatrix, Scalar, Subspace, UniPoly, Var};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::*;

pub type Check = fn(&mut ChaCha8Rng) -> Result<bool, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

pub fn moment_equivariance(rng: &mut ChaCha8Rng) -> Result<bool, String> {
    let (c, r) = shape(rng);
    let x = raw_datum(rng, c, r);
    let g = group_element(rng, c);
    let gx = act(&g, &x).map_err(|e| e.to_string())?;
    let before = moment_components(&x);
    let after = moment_components(&gx);
    for k in 0..3 {
        let expected = &(g.matrix() * &before[k]) * g.inverse_matrix();
        ensure!(after[k] == expected, "μ̃ component {k} is not equivariant for {x:?}");
    }
    let monad = Monad::assemble(&x).act(&g);
    ensure!(monad == Monad::assemble(&gx), "monad is not equivariant");
    Ok(true)
}

pub fn monad_iff_moment(rng: &mut ChaCha8Rng) -> Result<bool, String> {
    let x = if rng.gen() {
        any_adhm(rng)
    } else {
        let (c, r) = shape(rng);
        raw_datum(rng, c, r)
    };
    let (composite_zero, moment_zero) = monad_identity_iff_moment(&x);
    ensure!(composite_zero == moment_zero, "βα = 0 is {composite_zero} but μ̃ = 0 is {moment_zero}");
    Ok(true)
}

pub fn framing(rng: &mut ChaCha8Rng) -> Result<bool, String> {
    let x = any_adhm(rng);
    let m = build_monad(&x).map_err(|e| e.to_string())?;
    let report = framing_on_linf(&m).map_err(|e| format!("{e} for {}", print_datum(&x)))?;
    ensure!(report.rank == x.r(), "framing rank {} for r = {}", report.rank, x.r());
    Ok(true)
}

pub fn euler_characteristic(rng: &mut ChaCha8Rng) -> Result<bool, String> {
    let x = any_adhm(rng);
    let k = deformation_complex(&x).map_err(|e| e.to_string())?;
    ensure!((&k.d1 * &k.d0).is_zero(), "d1·d0 ≠ 0");
    let h = cohomology_dims(&x).map_err(|e| e.to_string())?;
    let expected = -4 * (x.r() * x.c()) as i64;
    ensure!(h.euler_characteristic() == expected, "χ = {} ≠ {expected}", h.euler_characteristic());
    Ok(true)
}

pub fn h0_vanishes_when_stable(rng: &mut ChaCha8Rng) -> Result<bool, String> {
    let x = stable_candidate(rng);
    if !is_stable(&x) {
        return Ok(false);
    }
    let h = cohomology_dims(&x).map_err(|e| e.to_string())?;
    ensure!(h.h0 == 0, "h0 = {} on a stable datum", h.h0);
    Ok(true)
}

pub fn hypersymplectic(rng: &mut ChaCha8Rng) -> Result<bool, String> {
    let x = any_adhm(rng);
    let (c, r) = (x.c(), x.r());
    let v = tangent(rng, c, r);
    let w = tangent(rng, c, r);
    let xi = matrix(rng, c, c);
    let check = hypersymplectic_check(&x, &v, &w, &xi).map_err(|e| e.to_string())?;
    ensure!(check.all_pass(), "hypersymplectic identities fail: {check:?}");
    Ok(true)
}

pub fn fj_semistable_implies_stable(rng: &mut ChaCha8Rng) -> Result<bool, String> {
    let x = if rng.gen() { any_adhm(rng) } else { stable_candidate(rng) };
    if !is_fj_semistable(&x) {
        return Ok(false);
    }
    ensure!(is_stable(&x), "FJ-semistable but not stable: {}", print_datum(&x));
    Ok(true)
}

pub fn du_reconstruction(rng: &mut ChaCha8Rng) -> Result<bool, String> {
    let x = stable_candidate(rng);
    if !is_stable(&x) {
        return Ok(false);
    }
    let du = du_decompose(&x).map_err(|e| e.to_string())?;
    let back = du.reassemble().map_err(|e| e.to_string())?;
    ensure!(back == x, "reassembled datum differs");
    ensure!(du.c_prime + du.rank0_part.c() == x.c(), "charges do not add up");
    ensure!(is_adhm(&du.rank0_part) && is_adhm(&du.regular_part), "parts are not ADHM");
    ensure!(is_regular(&du.regular_part), "regular part is not regular");
    Ok(true)
}

pub fn trace_conjugation(rng: &mut ChaCha8Rng) -> Result<bool, String> {
    let c = rng.gen_range(1..=3);
    let x = match rng.gen_range(0..3) {
        0 => lines_datum(rng, c),
        1 => adhm_datum(rng, c, 0),
        _ => commuting_datum(rng, c, 0, true),
    };
    let y = conjugate(rng, &x);
    let mx = datum_to_module(&x).map_err(|e| e.to_string())?;
    let my = datum_to_module(&y).map_err(|e| e.to_string())?;
    let len = default_trace_len(c).min(4);
    ensure!(trace_invariants(&mx, len) == trace_invariants(&my, len), "traces changed under conjugation");
    Ok(true)
}

pub fn surjectivity_matches_h2(rng: &mut ChaCha8Rng) -> Result<bool, String> {
    let x = stable_candidate(rng);
    if !is_stable(&x) {
        return Ok(false);
    }
    let criterion = surjectivity_criterion(&x).map_err(|e| e.to_string())?;
    let h2 = cohomology_dims(&x).map_err(|e| e.to_string())?.h2;
    ensure!(criterion == (h2 == 0), "criterion {criterion} but h2 = {h2} for {}", print_datum(&x));
    Ok(true)
}

pub fn closure_idempotent(rng: &mut ChaCha8Rng) -> Result<bool, String> {
    let n = rng.gen_range(1..=4);
    let ops: Vec<Matrix> = (0..rng.gen_range(1..=3)).map(|_| sparse_matrix(rng, n)).collect();
    let k = rng.gen_range(0..=2);
    let gens = Subspace::column_span(&matrix(rng, n, k));
    let once = closure(&gens, &ops).map_err(|e| e.to_string())?;
    let twice = closure(&once, &ops).map_err(|e| e.to_string())?;
    ensure!(once == twice, "closure is not idempotent");
    ensure!(once.contains(&gens), "closure lost a generator");
    ensure!(ops.iter().all(|m| once.is_invariant_under(m)), "closure is not invariant");
    Ok(true)
}

pub fn rank_matches_rref(rng: &mut ChaCha8Rng) -> Result<bool, String> {
    let (n, m) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
    let base = sparse_matrix(rng, n.max(m)).block(0, n, 0, m);
    let k = rng.gen_range(1..=3);
    let a = &matrix(rng, n, k) * &matrix(rng, k, m);
    let x = if rng.gen() { &a + &base } else { a };
    let scaled = Matrix::from_fn(n, m, |a, b| &x[(a, b)] * &Scalar::ratio(1, rng.gen_range(1..=5)));
    ensure!(scaled.rank() == scaled.rref().1.len(), "rank disagrees with RREF on {scaled:?}");
    Ok(true)
}

pub fn hermite_matches_minors(rng: &mut ChaCha8Rng) -> Result<bool, String> {
    let rows = rng.gen_range(1..=3);
    let cols = rng.gen_range(rows..=rows + 2);
    let root = Scalar::from_int(rng.gen_range(-2..=2));
    let shared = rng.gen_range(0..rows + 1);
    let columns: Vec<Vec<UniPoly>> = (0..cols)
        .map(|_| {
            (0..rows)
                .map(|k| {
                    let p = uni_poly(rng);
                    if k == shared { &p * &UniPoly::linear_root(&root) } else { p }
                })
                .collect()
        })
        .collect();
    let basis = HermiteBasis::new(rows, columns.clone());
    let pm = PolyMatrix::from_fn(rows, cols, |a, b| Poly::from_univariate(&columns[b][a], Var::T));
    let minors = pm.minors(rows).map_err(|e| e.to_string())?;
    let oracle = gcd_univariate(&minors)
        .and_then(|g| g.to_univariate(Var::T))
        .map_err(|e| e.to_string())?;
    match basis.maximal_minor_gcd() {
        None => ensure!(oracle.is_zero(), "full-rank module reported as deficient"),
        Some(g) => ensure!(g == oracle.monic(), "pivot product {g:?} ≠ minor gcd {oracle:?}"),
    }
    Ok(true)
}

pub fn polystable_split_of_sum(rng: &mut ChaCha8Rng) -> Result<bool, String> {
    let (c, r) = (rng.gen_range(1..=2), rng.gen_range(1..=2));
    let regular = adhm_datum(rng, c, r);
    if !is_regular(&regular) {
        return Ok(false);
    }
    let c0 = rng.gen_range(1..=2);
    let lines = lines_datum(rng, c0);
    let x = conjugate(rng, &regular.direct_sum(&lines));
    let SplitOutcome::Split(split) = try_polystable_split(&x).map_err(|e| e.to_string())? else {
        return Err("sum of regular and rank-0 data did not split".into());
    };
    ensure!(split.reassemble().map_err(|e| e.to_string())? == x, "split does not reassemble");
    ensure!(find_isomorphism(&split.x1, &regular).is_some(), "regular summand not recovered");
    let len = default_trace_len(c0);
    let traces = |d: &AdhmDatum| datum_to_module(d).map(|m| trace_invariants(&m, len));
    ensure!(
        traces(&split.x2).map_err(|e| e.to_string())? == traces(&lines).map_err(|e| e.to_string())?,
        "rank-0 summand has different traces"
    );
    Ok(true)
}

pub fn charge1_agreement(rng: &mut ChaCha8Rng) -> Result<bool, String> {
    let r = rng.gen_range(1..=3);
    let mut v = || (0..r).map(|_| Scalar::from_int(rng.gen_range(-1..=1))).collect::<Vec<_>>();
    let d = Charge1Datum::new(v(), v(), v(), v()).map_err(|e| e.to_string())?;
    ensure!(charge1_classify(&d) == charge1_classify_general(&d), "charge-1 verdicts disagree on {d:?}");
    Ok(true)
}

pub fn json_round_trip(rng: &mut ChaCha8Rng) -> Result<bool, String> {
    let c = rng.gen_range(0..=3);
    let r = rng.gen_range(0..=2);
    let x = raw_datum(rng, c, r);
    let back = parse_datum(&print_datum(&x)).map_err(|e| e.to_string())?;
    ensure!(back == x, "round trip changed the datum");
    Ok(true)
}

/// Data that are stable most of the time, with both regular and non-costable
/// members.
fn stable_candidate(rng: &mut ChaCha8Rng) -> AdhmDatum {
    let (c, r) = shape(rng);
    let x = match rng.gen_range(0..3) {
        0 | 1 => adhm_datum(rng, c, r),
        _ => commuting_datum(rng, c, r, false),
    };
    conjugate(rng, &x)
}

fn sparse_matrix(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    Matrix::from_fn(n, n, |_, _| {
        if rng.gen_ratio(1, 3) { Scalar::from_int(rng.gen_range(-2..=2)) } else { Scalar::zero() }
    })
}

fn uni_poly(rng: &mut ChaCha8Rng) -> UniPoly {
    let deg = rng.gen_range(0..=2);
    UniPoly::new((0..=deg).map(|_| Scalar::from_int(rng.gen_range(-2..=2))).collect())
}

pub const ALL: [(&str, Check); 16] = [
    ("moment-map equivariance", moment_equivariance),
    ("βα = 0 iff μ̃ = 0", monad_iff_moment),
    ("framing on l∞", framing),
    ("Euler characteristic −4rc", euler_characteristic),
    ("h0 = 0 for stable data", h0_vanishes_when_stable),
    ("quaternion and moment identities", hypersymplectic),
    ("FJ-semistable implies stable", fj_semistable_implies_stable),
    ("du_decompose reconstruction", du_reconstruction),
    ("trace conjugation invariance", trace_conjugation),
    ("surjectivity criterion iff h2 = 0", surjectivity_matches_h2),
    ("closure idempotence", closure_idempotent),
    ("rank agrees with RREF", rank_matches_rref),
    ("Hermite pivots vs maximal minors", hermite_matches_minors),
    ("polystable split of a sum", polystable_split_of_sum),
    ("charge-1 classification agreement", charge1_agreement),
    ("JSON round trip", json_round_trip),
];

/// Runs `check` until `cases` samples satisfy its hypothesis.
pub fn run(check: Check, seed: u64, cases: usize) -> Result<usize, String> {
    let mut rng = super::rng(seed);
    let mut hit = 0;
    let mut tries = 0;
    while hit < cases {
        tries += 1;
        if tries > 20 * cases {
            return Err(format!("only {hit} of {cases} samples met the hypothesis"));
        }
        if check(&mut rng).map_err(|e| format!("sample {tries}: {e}"))? {
            hit += 1;
        }
    }
    Ok(tries)
}
