use std::fmt;
use std::io::Read;
use std::path::PathBuf;
use std::str::FromStr;

use adhm_core::adhm::{
    chern, du_decompose, is_adhm, is_costable, is_fj_costable, is_fj_regular, is_fj_semistable, is_fj_stable,
    is_regular, is_stable, try_polystable_split, uncostable_locus, unstable_locus, SplitOutcome, UnstableLocus,
};
use adhm_core::deform::{cohomology_dims, deformation_complex, surjectivity_criterion};
use adhm_core::fixtures::FixtureId;
use adhm_core::io::{datum_to_value, parse_datum, MonadJson};
use adhm_core::monad::{
    alpha_locus_on_line, beta_locus_on_line, build_monad, eval_monad, framing_on_linf, Line, LineLocus, P3Point,
};
use adhm_core::rank0::{
    c2_fixture_checks, charge1_classify, charge1_classify_general, charge1_dmu_rank, charge1_residuals,
    datum_to_module, default_trace_len, lines_to_datum, trace_invariants, Charge1Datum, LineConfig,
};
use adhm_core::{AdhmDatum, Error, Scalar, Subspace};
use serde_json::{json, Value};

/// Longest trace word accepted; the number of words grows like `4^N`.
const MAX_TRACE_LEN: usize = 8;

#[derive(Debug)]
pub enum Failure {
    Input(String),
    Invariant(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Invariant(_) => 3,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(m) => write!(f, "{m}"),
            Failure::Invariant(m) => write!(f, "invariant violated: {m}"),
        }
    }
}

fn input(e: impl fmt::Display) -> Failure {
    Failure::Input(e.to_string())
}

/// Precondition failures of the core operations are input errors; anything
/// else reaching the front end is an invariant violation.
fn classify(e: Error) -> Failure {
    match e {
        Error::NotAdhm
        | Error::NotStable
        | Error::NonzeroRank(_)
        | Error::RelationsFail
        | Error::ZeroPoint
        | Error::CoincidentPoints
        | Error::SizeGuard { .. } => Failure::Input(e.to_string()),
        _ => Failure::Invariant(e.to_string()),
    }
}

fn guard(c: usize, max: usize) -> Result<(), Failure> {
    if c > max {
        return Err(input(Error::SizeGuard { c, max }));
    }
    Ok(())
}

pub fn load(path: &Option<PathBuf>, fixture: &Option<String>, max_c: usize) -> Result<AdhmDatum, Failure> {
    let x = match (path, fixture) {
        (Some(path), _) => {
            let (name, text) = if path.as_os_str() == "-" {
                let mut text = String::new();
                std::io::stdin().read_to_string(&mut text).map_err(input)?;
                ("<stdin>".to_string(), text)
            } else {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
                (path.display().to_string(), text)
            };
            parse_datum(&text).map_err(|e| Failure::Input(format!("{name}: {e}")))?
        }
        (None, Some(id)) => FixtureId::from_str(id).map_err(input)?.datum(),
        (None, None) => return Err(input("one of --input or --fixture is required")),
    };
    guard(x.c(), max_c)?;
    Ok(x)
}

fn locus(l: &UnstableLocus) -> Value {
    json!({
        "kind": l.kind,
        "points": l.points.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "chart_polynomial": l.chart_polynomial.as_ref().map(ToString::to_string),
        "unsplit_factor": l.unsplit_factor.as_ref().map(ToString::to_string),
    })
}

fn line_locus(l: &LineLocus) -> Value {
    json!({
        "kind": l.kind,
        "parameters": l.parameters.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "points": l.points.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "chart_polynomial": l.chart_polynomial.as_ref().map(ToString::to_string),
        "unsplit_factor": l.unsplit_factor.as_ref().map(ToString::to_string),
    })
}

fn basis(s: &Subspace) -> Value {
    json!(s.basis_vectors())
}

pub fn check(x: &AdhmDatum) -> Result<Value, Failure> {
    let (rank, charge) = chern(x);
    Ok(json!({
        "c": x.c(),
        "r": x.r(),
        "chern": { "rank": rank, "charge": charge },
        "adhm": is_adhm(x),
        "stable": is_stable(x),
        "costable": is_costable(x),
        "regular": is_regular(x),
        "fj_stable": is_fj_stable(x),
        "fj_semistable": is_fj_semistable(x),
        "fj_costable": is_fj_costable(x),
        "fj_regular": is_fj_regular(x),
        "unstable_locus": locus(&unstable_locus(x)),
        "uncostable_locus": locus(&uncostable_locus(x)),
    }))
}

fn parse_point(spec: &str) -> Result<P3Point, Failure> {
    let coords: Vec<Scalar> = spec
        .split(',')
        .map(|s| s.trim().parse::<Scalar>())
        .collect::<Result<_, _>>()
        .map_err(input)?;
    let coords: [Scalar; 4] = coords
        .try_into()
        .map_err(|v: Vec<Scalar>| Failure::Input(format!("a point needs 4 coordinates, got {}", v.len())))?;
    P3Point::new(coords).map_err(classify)
}

pub fn monad(x: &AdhmDatum, point: Option<&str>, line: Option<&str>) -> Result<Value, Failure> {
    let m = build_monad(x).map_err(classify)?;
    let framing = framing_on_linf(&m).map_err(|e| Failure::Invariant(e.to_string()))?;
    let mut report = json!({
        "c": m.c,
        "r": m.r,
        "monad": MonadJson::from(&m),
        "framing": {
            "rank": framing.rank,
            "alpha_certificate": framing.alpha_certificate.to_string(),
            "beta_certificate": framing.beta_certificate.to_string(),
        },
    });
    if let Some(spec) = point {
        let p = parse_point(spec)?;
        let fiber = eval_monad(&m, &p);
        report["point"] = json!({
            "at": p.to_string(),
            "rank_alpha": fiber.rank_alpha,
            "rank_beta": fiber.rank_beta,
            "dim_ker_alpha": fiber.dim_ker_alpha,
            "corank_beta": fiber.corank_beta,
            "fiber_dim": fiber.fiber_dim,
        });
    }
    if let Some(spec) = line {
        let (a, b) = spec
            .split_once(';')
            .ok_or_else(|| input("--line expects two points separated by ';'"))?;
        let l = Line::new(parse_point(a)?, parse_point(b)?).map_err(classify)?;
        report["line"] = json!({
            "p0": l.p0.to_string(),
            "p1": l.p1.to_string(),
            "alpha_locus": line_locus(&alpha_locus_on_line(&m, &l)),
            "beta_locus": line_locus(&beta_locus_on_line(&m, &l)),
        });
    }
    Ok(report)
}

pub fn deform(x: &AdhmDatum, complex: bool) -> Result<Value, Failure> {
    let h = cohomology_dims(x).map_err(classify)?;
    let criterion = if is_stable(x) { Some(surjectivity_criterion(x).map_err(classify)?) } else { None };
    if criterion.is_some_and(|c| c != (h.h2 == 0)) {
        return Err(Failure::Invariant(format!("surjectivity criterion disagrees with h2 = {}", h.h2)));
    }
    let mut report = json!({
        "c": x.c(),
        "r": x.r(),
        "h0": h.h0,
        "h1": h.h1,
        "h2": h.h2,
        "rank_d0": h.rank_d0,
        "rank_dmu": h.rank_dmu,
        "euler_characteristic": h.euler_characteristic(),
        "expected_dim": h.expected_dim,
        "smooth_point": h.smooth_point,
        "surjectivity_criterion": criterion,
    });
    if complex {
        let k = deformation_complex(x).map_err(classify)?;
        report["d0"] = json!(k.d0);
        report["d1"] = json!(k.d1);
    }
    Ok(report)
}

pub fn du(x: &AdhmDatum) -> Result<Value, Failure> {
    let d = du_decompose(x).map_err(classify)?;
    let back = d.reassemble().map_err(classify)?;
    if back != *x {
        return Err(Failure::Invariant("decomposition does not reassemble the datum".into()));
    }
    let split = match try_polystable_split(x).map_err(classify)? {
        SplitOutcome::Split(s) => json!({
            "splits": true,
            "regular_summand": datum_to_value(&s.x1),
            "rank0_summand": datum_to_value(&s.x2),
        }),
        SplitOutcome::NotSplit { v1, v2 } => json!({
            "splits": false,
            "reachable_dim": v1.dim(),
            "unobservable_dim": v2.dim(),
        }),
    };
    Ok(json!({
        "c": x.c(),
        "r": x.r(),
        "c_prime": d.c_prime,
        "rank0_charge": d.rank0_part.c(),
        "unobservable_basis": basis(&d.v2),
        "basis_change": d.basis_change.matrix(),
        "regular_part": datum_to_value(&d.regular_part),
        "rank0_part": datum_to_value(&d.rank0_part),
        "connecting": {
            "B1": datum_blocks(&d.connecting.b1),
            "B2": datum_blocks(&d.connecting.b2),
            "i": datum_blocks(&d.connecting.i),
        },
        "polystable_split": split,
    }))
}

fn datum_blocks(p: &adhm_core::Pencil) -> Value {
    json!({ "x0": p.at_x0, "x1": p.at_x1 })
}

fn trace_len(requested: Option<usize>, c: usize) -> Result<usize, Failure> {
    let n = requested.unwrap_or_else(|| default_trace_len(c));
    if n == 0 || n > MAX_TRACE_LEN {
        return Err(Failure::Input(format!("--traces must be between 1 and {MAX_TRACE_LEN}, got {n}")));
    }
    Ok(n)
}

pub fn traces(x: &AdhmDatum, requested: Option<usize>) -> Result<Value, Failure> {
    let module = datum_to_module(x).map_err(classify)?;
    let len = trace_len(requested, x.c())?;
    let tv = trace_invariants(&module, len);
    Ok(json!({
        "c": x.c(),
        "relations_hold": module.relations_hold(),
        "max_len": tv.max_len,
        "traces": tv.entries,
    }))
}

fn parse_scalars(spec: &str) -> Result<Vec<Scalar>, Failure> {
    if spec.trim().is_empty() {
        return Ok(Vec::new());
    }
    spec.split(',').map(|s| s.trim().parse::<Scalar>().map_err(input)).collect()
}

pub fn lines(spec: &str, requested: Option<usize>, max_c: usize) -> Result<Value, Failure> {
    let mut quads = Vec::new();
    for (k, part) in spec.split(';').filter(|s| !s.trim().is_empty()).enumerate() {
        let v = parse_scalars(part)?;
        let q: [Scalar; 4] = v
            .try_into()
            .map_err(|v: Vec<Scalar>| Failure::Input(format!("line {}: expected 4 entries, got {}", k + 1, v.len())))?;
        quads.push(q);
    }
    guard(quads.len(), max_c)?;
    let x = lines_to_datum(&LineConfig::new(quads));
    let mut report = traces(&x, requested)?;
    report["datum"] = datum_to_value(&x);
    Ok(report)
}

pub fn charge1(spec: &str) -> Result<Value, Failure> {
    let mut parts: [Option<Vec<Scalar>>; 4] = Default::default();
    for item in spec.split(';').filter(|s| !s.trim().is_empty()) {
        let (key, values) = item
            .split_once('=')
            .ok_or_else(|| Failure::Input(format!("expected key=values, got {item:?}")))?;
        let slot = match key.trim() {
            "x" => 0,
            "y" => 1,
            "z" => 2,
            "w" => 3,
            other => return Err(Failure::Input(format!("unknown charge-1 key {other:?}"))),
        };
        parts[slot] = Some(parse_scalars(values)?);
    }
    let [x, y, z, w] = parts.map(|p| p.ok_or_else(|| input("--charge1 needs x, y, z and w")));
    let d = Charge1Datum::new(x?, y?, z?, w?).map_err(classify)?;
    let flags = charge1_classify(&d);
    if flags != charge1_classify_general(&d) {
        return Err(Failure::Invariant("charge-1 classification disagrees with the general checks".into()));
    }
    Ok(json!({
        "r": d.r(),
        "residuals": charge1_residuals(&d),
        "adhm": charge1_residuals(&d).iter().all(Scalar::is_zero),
        "dmu_rank": charge1_dmu_rank(&d),
        "stable": flags.stable,
        "costable": flags.costable,
        "fj_stable": flags.fj_stable,
    }))
}

pub fn c2_fixtures() -> Result<Value, Failure> {
    let report = c2_fixture_checks();
    if !report.all_pass {
        return Err(Failure::Invariant(format!(
            "c = 2 fixture identities fail: {}",
            serde_json::to_string(&report).expect("serializable")
        )));
    }
    Ok(json!(report))
}

pub fn fixtures(id: Option<&str>) -> Result<Value, Failure> {
    match id {
        Some(id) => Ok(datum_to_value(&FixtureId::from_str(id).map_err(input)?.datum())),
        None => Ok(json!(FixtureId::ALL
            .iter()
            .map(|f| {
                let x = f.datum();
                json!({ "id": f.id(), "c": x.c(), "r": x.r(), "description": f.description() })
            })
            .collect::<Vec<_>>())),
    }
}
