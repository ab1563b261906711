//! Acceptance run: one PASS/FAIL line per criterion with its wall-clock
//! time against the limit. Exits non-zero if any criterion fails.

mod common;

use std::time::{Duration, Instant};

use adhm_core::adhm::{
    is_adhm, is_costable, is_fj_semistable, is_fj_stable, is_stable, unstable_locus,
};
use adhm_core::deform::{cohomology_dims, surjectivity_criterion};
use adhm_core::fixtures;
use adhm_core::monad::{
    alpha_degeneracy_minors, build_monad, eval_monad, vanishes_on, Line, LinearSubspaceParam, P3Point,
    beta_locus_on_line,
};
use adhm_core::rank0::{c2_fixture_checks, charge1_dmu_rank, charge1_residuals, Charge1Datum};
use adhm_core::{Matrix, Scalar};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn regular_not_fj_semistable() -> Outcome {
    let x = fixtures::gitvsfj();
    ensure!(is_adhm(&x), "μ̃ ≠ 0");
    ensure!(is_stable(&x), "not stable");
    ensure!(is_costable(&x), "not costable");
    ensure!(!is_fj_semistable(&x), "FJ-semistable");
    ensure!(unstable_locus(&x).is_whole_line(), "unstable locus is not the whole line");
    Ok("stable, costable, not FJ-semistable, unstable everywhere".into())
}

fn monad_loci() -> Outcome {
    let m = build_monad(&fixtures::gitvsfj()).map_err(|e| e.to_string())?;
    let planes = LinearSubspaceParam::from_equations(&Matrix::from_ints(&[&[1, 1, 1, 0], &[1, -1, 0, 1]]))
        .map_err(|e| e.to_string())?;
    let minors = alpha_degeneracy_minors(&m);
    ensure!(minors.iter().all(|p| vanishes_on(p, &planes)), "a minor of α survives on the plane pair");
    let off_planes = P3Point::from_ints([1, 0, 0, 0]).map_err(|e| e.to_string())?;
    ensure!(eval_monad(&m, &off_planes).rank_alpha == 2, "α drops rank off the plane pair");
    let p0 = P3Point::from_ints([1, 0, 0, 0]).map_err(|e| e.to_string())?;
    let p1 = P3Point::from_ints([0, 1, 0, 0]).map_err(|e| e.to_string())?;
    let line = Line::new(p0, p1).map_err(|e| e.to_string())?;
    ensure!(beta_locus_on_line(&m, &line).is_whole_line(), "β keeps full rank somewhere on x2 = x3 = 0");
    let off_line = P3Point::from_ints([0, 0, 1, 0]).map_err(|e| e.to_string())?;
    ensure!(eval_monad(&m, &off_line).rank_beta == 2, "β drops rank off the line");
    Ok(format!("{} minors of α vanish on the planes; β degenerates along x2 = x3 = 0", minors.len()))
}

fn fj_counterexample() -> Outcome {
    let x = fixtures::fj_counterexample();
    ensure!(is_fj_stable(&x), "not FJ-stable");
    let h = cohomology_dims(&x).map_err(|e| e.to_string())?;
    let (c, r) = (x.c() as i64, x.r() as i64);
    ensure!(h.h2 == 3, "h2 = {}", h.h2);
    ensure!(h.h1 == 51, "h1 = {}", h.h1);
    ensure!(h.euler_characteristic() == -4 * r * c, "χ = {}", h.euler_characteristic());
    ensure!(h.h0 == 0, "h0 = {}", h.h0);
    let criterion = surjectivity_criterion(&x).map_err(|e| e.to_string())?;
    ensure!(!criterion, "surjectivity criterion holds");
    Ok(format!("h0 = {}, h1 = {}, h2 = {}, χ = {}", h.h0, h.h1, h.h2, h.euler_characteristic()))
}

fn staircase_family() -> Outcome {
    let mut notes = Vec::new();
    for (r, c) in [(4, 3), (5, 4)] {
        let x = fixtures::staircase(c, r);
        ensure!(is_adhm(&x), "staircase({c}, {r}) is not ADHM");
        let h = cohomology_dims(&x).map_err(|e| e.to_string())?;
        ensure!(h.rank_dmu <= 2 * c * r, "rank dμ̃ = {} > 2cr for c = {c}", h.rank_dmu);
        ensure!(2 * c * r < 3 * c * c, "2cr ≥ 3c² for c = {c}");
        ensure!(h.h2 >= 3 * c * c - 2 * c * r, "h2 = {} below the bound for c = {c}", h.h2);
        notes.push(format!("(r, c) = ({r}, {c}): rank dμ̃ = {}, h2 = {}", h.rank_dmu, h.h2));
    }
    Ok(notes.join("; "))
}

fn charge1_suite() -> Outcome {
    let nonsingular = Charge1Datum::from_ints(&[1, 0], &[2, 0], &[0, 0], &[0, 1]).map_err(|e| e.to_string())?;
    ensure!(charge1_residuals(&nonsingular).iter().all(Scalar::is_zero), "residuals do not vanish");
    ensure!(charge1_dmu_rank(&nonsingular) == 3, "Dμ rank {} at the nonsingular point", charge1_dmu_rank(&nonsingular));
    let dependent = Charge1Datum::from_ints(&[1, 0], &[2, 0], &[0, 0], &[0, 0]).map_err(|e| e.to_string())?;
    ensure!(charge1_dmu_rank(&dependent) == 2, "Dμ rank {} for dependent i and j = 0", charge1_dmu_rank(&dependent));
    let mut rng = common::rng(5);
    let mut sampled = 0;
    while sampled < 20 {
        let (x, y) = (common::scalar(&mut rng), common::scalar(&mut rng));
        if x.is_zero() && y.is_zero() {
            continue;
        }
        let d = Charge1Datum::new(vec![x], vec![y], vec![Scalar::zero()], vec![Scalar::zero()])
            .map_err(|e| e.to_string())?;
        ensure!(is_stable(&d.to_datum()), "sample {sampled} is not stable");
        ensure!(charge1_dmu_rank(&d) == 2, "Dμ rank {} on stable r = 1 sample {d:?}", charge1_dmu_rank(&d));
        sampled += 1;
    }
    Ok(format!("nonsingular point rank 3, dependent rank 2, {sampled} stable r = 1 samples rank 2"))
}

fn c2_components() -> Outcome {
    let report = c2_fixture_checks();
    ensure!(report.symbolic_commutators, "[B1k, B2k] = 0 fails symbolically");
    for ideal in &report.ideals {
        ensure!(ideal.samples == 50, "{:?}: {} samples", ideal.ideal, ideal.samples);
        ensure!(
            ideal.in_ideal == 50 && ideal.commuting_pairs == 50 && ideal.mixed_equation == 50,
            "{:?}: {ideal:?}",
            ideal.ideal
        );
    }
    ensure!(
        report.intersection_samples == 20 && report.intersection_relation == 20,
        "intersection relation held on {} of {}",
        report.intersection_relation,
        report.intersection_samples
    );
    ensure!(report.isotropy_fixes == report.isotropy_samples, "isotropy failed");
    ensure!(report.all_pass, "report flags a failure");
    Ok(format!(
        "3 × 50 ideal samples, {} intersection samples, {} isotropy samples",
        report.intersection_samples, report.isotropy_samples
    ))
}

fn property_suites() -> Outcome {
    let mut slowest = (Duration::ZERO, "");
    for (k, (name, check)) in common::checks::ALL.iter().enumerate() {
        let start = Instant::now();
        common::checks::run(*check, 4000 + k as u64, common::CASES).map_err(|e| format!("{name}: {e}"))?;
        let took = start.elapsed();
        if took > slowest.0 {
            slowest = (took, name);
        }
    }
    Ok(format!(
        "{} suites × {} cases; slowest {} ({:.2} s)",
        common::checks::ALL.len(),
        common::CASES,
        slowest.1,
        slowest.0.as_secs_f64()
    ))
}

fn main() {
    let criteria: [(&str, u64, fn() -> Outcome); 7] = [
        ("regular datum that is not FJ-semistable", 1, regular_not_fj_semistable),
        ("monad degeneracy loci of that datum", 5, monad_loci),
        ("FJ-stable datum with h2 = 3", 5, fj_counterexample),
        ("staircase family bound on rank dμ̃", 60, staircase_family),
        ("charge-1 suite", 1, charge1_suite),
        ("c = 2 component fixtures", 10, c2_components),
        ("property suites", 60, property_suites),
    ];
    let mut failed = 0;
    for (k, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        let in_time = secs < *limit as f64;
        let (verdict, detail) = match (&outcome, in_time) {
            (Ok(note), true) => ("PASS", note.clone()),
            (Ok(note), false) => ("FAIL", format!("over the time limit; {note}")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if verdict == "FAIL" {
            failed += 1;
        }
        println!("{verdict} [{}] {name} ({secs:.2} s, limit {limit} s): {detail}", k + 1);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
