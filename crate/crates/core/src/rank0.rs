//! Rank-0 data as modules over `R = k⟨y1, y2, z1, z2⟩` modulo
//! `[y1, y2]`, `[z1, z2]` and `[y1, z2] + [y2, z1]`, together with the
//! charge-1 equations and the `c = 2` component fixtures.
//!
//! A rank-0 datum gives the module `y1 = B10`, `y2 = B20`, `z1 = −B11`,
//! `z2 = B21`; the three relations are then the three coefficients of `μ̃`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::adhm::{is_adhm, is_fj_stable, is_stable, is_costable, AdhmDatum, GroupElement, Pencil};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Generator {
    Y1,
    Y2,
    Z1,
    Z2,
}

impl Generator {
    pub const ALL: [Generator; 4] = [Generator::Y1, Generator::Y2, Generator::Z1, Generator::Z2];

    pub fn name(self) -> &'static str {
        match self {
            Generator::Y1 => "y1",
            Generator::Y2 => "y2",
            Generator::Z1 => "z1",
            Generator::Z2 => "z2",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RModule {
    dim: usize,
    y1: Matrix,
    y2: Matrix,
    z1: Matrix,
    z2: Matrix,
}

impl RModule {
    pub fn new(y1: Matrix, y2: Matrix, z1: Matrix, z2: Matrix) -> Result<Self> {
        let dim = y1.rows();
        if [&y1, &y2, &z1, &z2].iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::Dimension("generator actions must be square of one size".into()));
        }
        let m = RModule { dim, y1, y2, z1, z2 };
        if !m.relations_hold() {
            return Err(Error::RelationsFail);
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self, g: Generator) -> &Matrix {
        match g {
            Generator::Y1 => &self.y1,
            Generator::Y2 => &self.y2,
            Generator::Z1 => &self.z1,
            Generator::Z2 => &self.z2,
        }
    }

    /// `[y1, y2]`, `[z1, z2]` and `[y1, z2] + [y2, z1]`.
    pub fn relations(&self) -> [Matrix; 3] {
        [
            self.y1.commutator(&self.y2),
            self.z1.commutator(&self.z2),
            &self.y1.commutator(&self.z2) + &self.y2.commutator(&self.z1),
        ]
    }

    pub fn relations_hold(&self) -> bool {
        self.relations().iter().all(Matrix::is_zero)
    }

    /// `g·m·g⁻¹` on all four actions.
    pub fn conjugate(&self, g: &GroupElement) -> Result<RModule> {
        if g.size() != self.dim {
            return Err(Error::Dimension("group element size differs from module dimension".into()));
        }
        let conj = |m: &Matrix| &(g.matrix() * m) * g.inverse_matrix();
        Ok(RModule {
            dim: self.dim,
            y1: conj(&self.y1),
            y2: conj(&self.y2),
            z1: conj(&self.z1),
            z2: conj(&self.z2),
        })
    }

    /// The rank-0 datum with this module structure.
    pub fn to_datum(&self) -> AdhmDatum {
        let c = self.dim;
        AdhmDatum::new(
            c,
            0,
            Pencil::new(self.y1.clone(), -&self.z1).expect("same shape"),
            Pencil::new(self.y2.clone(), self.z2.clone()).expect("same shape"),
            Pencil::zeros(c, 0),
            Pencil::zeros(0, c),
        )
        .expect("consistent shapes")
    }
}

pub fn datum_to_module(x: &AdhmDatum) -> Result<RModule> {
    if x.r() != 0 {
        return Err(Error::NonzeroRank(x.r()));
    }
    let m = RModule {
        dim: x.c(),
        y1: x.b1().at_x0.clone(),
        y2: x.b2().at_x0.clone(),
        z1: -&x.b1().at_x1,
        z2: x.b2().at_x1.clone(),
    };
    if !m.relations_hold() || !is_adhm(x) {
        return Err(Error::RelationsFail);
    }
    Ok(m)
}

/// Word over the generators, printed as e.g. `y1z2y1`; the empty word is `1`.
pub type Word = Vec<Generator>;

pub fn word_name(w: &[Generator]) -> String {
    if w.is_empty() {
        "1".to_string()
    } else {
        w.iter().map(|g| g.name()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceEntry {
    pub word: String,
    pub trace: Scalar,
}

/// Traces of all words of length `≤ max_len`, ordered by length and then
/// lexicographically in `y1 < y2 < z1 < z2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceVector {
    pub max_len: usize,
    pub entries: Vec<TraceEntry>,
}

impl TraceVector {
    pub fn get(&self, word: &str) -> Option<&Scalar> {
        self.entries.iter().find(|e| e.word == word).map(|e| &e.trace)
    }
}

/// Default word-length cap: `min(c², 8)`, at least 1.
pub fn default_trace_len(c: usize) -> usize {
    (c * c).clamp(1, 8)
}

pub fn trace_invariants(m: &RModule, max_len: usize) -> TraceVector {
    let mut entries = vec![TraceEntry {
        word: "1".to_string(),
        trace: Scalar::from_int(m.dim as i64),
    }];
    let mut level: Vec<(Word, Matrix)> = vec![(Vec::new(), Matrix::identity(m.dim))];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(level.len() * 4);
        for (w, prod) in &level {
            for g in Generator::ALL {
                let mut word = w.clone();
                word.push(g);
                next.push((word, prod * m.action(g)));
            }
        }
        for (w, prod) in &next {
            entries.push(TraceEntry {
                word: word_name(w),
                trace: prod.trace(),
            });
        }
        level = next;
    }
    TraceVector { max_len, entries }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Separation {
    DistinctOrbitsCertified { word: String, left: Scalar, right: Scalar },
    /// Equal traces do not certify isomorphism: non-closed orbits share the
    /// traces of their closed limit.
    Indistinguishable,
}

pub fn separate_by_traces(m1: &RModule, m2: &RModule, max_len: usize) -> Result<Separation> {
    if m1.dim != m2.dim {
        return Err(Error::Dimension(format!("modules of dimension {} and {}", m1.dim, m2.dim)));
    }
    let t1 = trace_invariants(m1, max_len);
    let t2 = trace_invariants(m2, max_len);
    Ok(t1
        .entries
        .into_iter()
        .zip(t2.entries)
        .find(|(a, b)| a.trace != b.trace)
        .map_or(Separation::Indistinguishable, |(a, b)| Separation::DistinctOrbitsCertified {
            word: a.word,
            left: a.trace,
            right: b.trace,
        }))
}

/// Lines `x2 = a·x0 + b·x1`, `x3 = c·x0 + d·x1`, one per summand.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LineConfig {
    pub lines: Vec<[Scalar; 4]>,
}

impl LineConfig {
    pub fn new(lines: Vec<[Scalar; 4]>) -> Self {
        LineConfig { lines }
    }

    pub fn from_ints(lines: &[[i64; 4]]) -> Self {
        LineConfig {
            lines: lines.iter().map(|l| l.map(Scalar::from_int)).collect(),
        }
    }
}

/// Block-diagonal rank-0 datum with `B̃₁ = −(a·x0 + b·x1)`,
/// `B̃₂ = −(c·x0 + d·x1)` on the summand of each line.
pub fn lines_to_datum(l: &LineConfig) -> AdhmDatum {
    let c = l.lines.len();
    let diag = |k: usize| Matrix::from_fn(c, c, |a, b| if a == b { -&l.lines[a][k] } else { Scalar::zero() });
    AdhmDatum::new(
        c,
        0,
        Pencil::new(diag(0), diag(1)).expect("same shape"),
        Pencil::new(diag(2), diag(3)).expect("same shape"),
        Pencil::zeros(c, 0),
        Pencil::zeros(0, c),
    )
    .expect("consistent shapes")
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let root = |n: &BigInt| {
        let s = n.sqrt();
        (&s * &s == *n).then_some(s)
    };
    Some(BigRational::new(root(q.numer())?, root(q.denom())?))
}

/// Joint eigenvalue pairs `{(λ, μ)}` of a commuting pair of `2 × 2` matrices
/// `(y1, y2)`, read off from the traces of `y1, y2, y1², y1y2, y2²`. Returns
/// `None` when the eigenvalues are not rational.
pub fn joint_spectrum_2x2(t: &TraceVector) -> Option<Vec<(Scalar, Scalar)>> {
    let get = |w: &str| t.get(w).cloned();
    let (s1, s2) = (get("y1")?, get("y2")?);
    let (p11, p12, p22) = (get("y1y1")?, get("y1y2")?, get("y2y2")?);
    if !(s1.is_real() && s2.is_real() && p11.is_real() && p12.is_real() && p22.is_real()) {
        return None;
    }
    let two = Scalar::from_int(2);
    let half = Scalar::ratio(1, 2);
    // (λ1 − λ2)² = 2·Tr(y1²) − Tr(y1)²
    let roots = |s: &Scalar, p: &Scalar| -> Option<(Scalar, Scalar)> {
        let disc = &(&two * p) - &(s * s);
        let d = Scalar::from_rational(rational_sqrt(disc.re())?);
        Some(((s + &d) * &half, (s - &d) * &half))
    };
    let (l1, l2) = roots(&s1, &p11)?;
    if l1 != l2 {
        // μ1 + μ2 = Tr(y2), λ1·μ1 + λ2·μ2 = Tr(y1y2)
        let diff = &l1 - &l2;
        let mu1 = &(&p12 - &(&l2 * &s2)) * &diff.inv()?;
        let mu2 = &s2 - &mu1;
        let mut pairs = vec![(l1, mu1), (l2, mu2)];
        pairs.sort_by_key(|p| format!("{} {}", p.0, p.1));
        Some(pairs)
    } else {
        let (m1, m2) = roots(&s2, &p22)?;
        let mut pairs = vec![(l1.clone(), m1), (l1, m2)];
        pairs.sort_by_key(|p| format!("{} {}", p.0, p.1));
        Some(pairs)
    }
}

/// `c = 1` data: `i = x·x0 + y·x1` as a row, `j = z·x0 + w·x1` as a column.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Charge1Datum {
    pub x: Vec<Scalar>,
    pub y: Vec<Scalar>,
    pub z: Vec<Scalar>,
    pub w: Vec<Scalar>,
}

impl Charge1Datum {
    pub fn new(x: Vec<Scalar>, y: Vec<Scalar>, z: Vec<Scalar>, w: Vec<Scalar>) -> Result<Self> {
        let r = x.len();
        if y.len() != r || z.len() != r || w.len() != r {
            return Err(Error::Dimension("x, y, z, w must have equal length".into()));
        }
        Ok(Charge1Datum { x, y, z, w })
    }

    pub fn from_ints(x: &[i64], y: &[i64], z: &[i64], w: &[i64]) -> Result<Self> {
        let v = |s: &[i64]| s.iter().map(|&k| Scalar::from_int(k)).collect();
        Self::new(v(x), v(y), v(z), v(w))
    }

    pub fn r(&self) -> usize {
        self.x.len()
    }

    /// The `c = 1` datum with `B̃ = 0`.
    pub fn to_datum(&self) -> AdhmDatum {
        let r = self.r();
        let row = |v: &[Scalar]| Matrix::from_fn(1, r, |_, k| v[k].clone());
        let col = |v: &[Scalar]| Matrix::from_fn(r, 1, |k, _| v[k].clone());
        AdhmDatum::new(
            1,
            r,
            Pencil::zeros(1, 1),
            Pencil::zeros(1, 1),
            Pencil::new(row(&self.x), row(&self.y)).expect("same shape"),
            Pencil::new(col(&self.z), col(&self.w)).expect("same shape"),
        )
        .expect("consistent shapes")
    }
}

fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter().zip(b).map(|(p, q)| p * q).sum()
}

/// `(Σ x_k z_k, Σ y_k w_k, Σ x_k w_k + y_k z_k)`.
pub fn charge1_residuals(d: &Charge1Datum) -> [Scalar; 3] {
    [
        dot(&d.x, &d.z),
        dot(&d.y, &d.w),
        &dot(&d.x, &d.w) + &dot(&d.y, &d.z),
    ]
}

/// The `3 × 4r` Jacobian of the residuals in the variables `(x, y, z, w)`.
pub fn charge1_dmu(d: &Charge1Datum) -> Matrix {
    let zero = vec![Scalar::zero(); d.r()];
    let rows: [[&Vec<Scalar>; 4]; 3] = [
        [&d.z, &zero, &d.x, &zero],
        [&zero, &d.w, &zero, &d.y],
        [&d.w, &d.z, &d.y, &d.x],
    ];
    let rows: Vec<Vec<Scalar>> = rows
        .iter()
        .map(|blocks| blocks.iter().flat_map(|b| b.iter().cloned()).collect())
        .collect();
    Matrix::from_rows(rows, 4 * d.r()).expect("4r columns")
}

pub fn charge1_dmu_rank(d: &Charge1Datum) -> usize {
    charge1_dmu(d).rank()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Charge1Flags {
    pub stable: bool,
    pub costable: bool,
    pub fj_stable: bool,
}

fn is_nonzero(v: &[Scalar]) -> bool {
    v.iter().any(|s| !s.is_zero())
}

/// Stable iff `i1` or `i2` is nonzero, costable iff `j ≠ 0`, FJ-stable iff
/// `i1, i2` are independent.
pub fn charge1_classify(d: &Charge1Datum) -> Charge1Flags {
    let rows = Matrix::from_rows(vec![d.x.clone(), d.y.clone()], d.r()).expect("r columns");
    Charge1Flags {
        stable: is_nonzero(&d.x) || is_nonzero(&d.y),
        costable: is_nonzero(&d.z) || is_nonzero(&d.w),
        fj_stable: rows.rank() == 2,
    }
}

/// The same flags computed by the general stability routines.
pub fn charge1_classify_general(d: &Charge1Datum) -> Charge1Flags {
    let x = d.to_datum();
    Charge1Flags {
        stable: is_stable(&x),
        costable: is_costable(&x),
        fj_stable: is_fj_stable(&x),
    }
}

/// Parameters `y_{ik}` of the `c = 2` family, `i = 1..6`, `k = 1, 2`,
/// stored as `params[i − 1][k − 1]`.
pub type C2Params = [[Scalar; 2]; 6];

fn lower(a: &Scalar) -> Matrix {
    Matrix::from_fn(2, 2, |r, c| match (r, c) {
        (0, 0) | (1, 1) => Scalar::one(),
        (1, 0) => a.clone(),
        _ => Scalar::zero(),
    })
}

/// `L(s)·[[a, t(a − b)], [0, b]]·L(−s)` with `L(s) = [[1, 0], [s, 1]]`.
pub fn conjugated_triangular(s: &Scalar, t: &Scalar, a: &Scalar, b: &Scalar) -> Matrix {
    let u = Matrix::from_rows(
        vec![
            vec![a.clone(), t * &(a - b)],
            vec![Scalar::zero(), b.clone()],
        ],
        2,
    )
    .expect("2x2");
    &(&lower(s) * &u) * &lower(&-s)
}

/// The commuting pair `(B_{1k}, B_{2k})` from `(y1, …, y6)`.
pub fn psi_pair(y: [&Scalar; 6]) -> (Matrix, Matrix) {
    (
        conjugated_triangular(y[0], y[1], y[2], y[3]),
        conjugated_triangular(y[0], y[1], y[4], y[5]),
    )
}

/// The rank-0, `c = 2` datum with `B̃₁ = B_{11}·x0 + B_{12}·x1` and
/// `B̃₂ = B_{21}·x0 + B_{22}·x1`.
pub fn psi(p: &C2Params) -> AdhmDatum {
    let col = |k: usize| std::array::from_fn(|i| &p[i][k]);
    let (b11, b21) = psi_pair(col(0));
    let (b12, b22) = psi_pair(col(1));
    AdhmDatum::new(
        2,
        0,
        Pencil::new(b11, b12).expect("2x2"),
        Pencil::new(b21, b22).expect("2x2"),
        Pencil::zeros(2, 0),
        Pencil::zeros(0, 2),
    )
    .expect("consistent shapes")
}

/// `(y31 − y41)(y52 − y62) − (y51 − y61)(y32 − y42)`
pub fn eigenvalue_relation(p: &C2Params) -> Scalar {
    let d = |i: usize, j: usize, k: usize| &p[i - 1][k - 1] - &p[j - 1][k - 1];
    &(&d(3, 4, 1) * &d(5, 6, 2)) - &(&d(5, 6, 1) * &d(3, 4, 2))
}

/// The eigenvalue relation read from the matrices alone. With
/// `D(P, Q) = 2·Tr(PQ) − Tr(P)·Tr(Q)` it is
/// `D(B11,B11)·D(B22,B22) − 2·D(B11,B21)·D(B12,B22) + D(B21,B21)·D(B12,B12)`,
/// the square of the parametric relation.
pub fn eigenvalue_relation_from_matrices(x: &AdhmDatum) -> Scalar {
    let d = |p: &Matrix, q: &Matrix| &(&Scalar::from_int(2) * &(p * q).trace()) - &(&p.trace() * &q.trace());
    let (b11, b12) = (&x.b1().at_x0, &x.b1().at_x1);
    let (b21, b22) = (&x.b2().at_x0, &x.b2().at_x1);
    let a = &d(b11, b11) * &d(b22, b22);
    let b = &(&Scalar::from_int(2) * &d(b11, b21)) * &d(b12, b22);
    let c = &d(b21, b21) * &d(b12, b12);
    &(&a - &b) + &c
}

/// `L(y11)·[[t1, y21(t1 − t2)], [0, t2]]·L(−y11)`.
pub fn isotropy_element(p: &C2Params, t1: &Scalar, t2: &Scalar) -> Result<GroupElement> {
    GroupElement::new(conjugated_triangular(&p[0][0], &p[1][0], t1, t2))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Ideal {
    I1,
    I2,
    I3,
}

impl Ideal {
    pub const ALL: [Ideal; 3] = [Ideal::I1, Ideal::I2, Ideal::I3];

    /// Generators evaluated at `p`.
    pub fn generators(self, p: &C2Params) -> Vec<Scalar> {
        let y = |i: usize, k: usize| &p[i - 1][k - 1];
        match self {
            Ideal::I1 => vec![eigenvalue_relation(p)],
            Ideal::I2 => vec![y(1, 1) - y(1, 2), y(2, 1) - y(2, 2)],
            Ideal::I3 => vec![
                &(&(y(2, 1) * y(1, 2)) - &(y(2, 1) * y(1, 1))) + &Scalar::one(),
                y(2, 1) + y(2, 2),
            ],
        }
    }

    pub fn contains(self, p: &C2Params) -> bool {
        self.generators(p).iter().all(Scalar::is_zero)
    }
}

fn random_scalar(rng: &mut ChaCha8Rng) -> Scalar {
    Scalar::ratio(rng.gen_range(-9..=9), rng.gen_range(1..=4))
}

fn random_nonzero(rng: &mut ChaCha8Rng) -> Scalar {
    loop {
        let s = random_scalar(rng);
        if !s.is_zero() {
            return s;
        }
    }
}

fn random_params(rng: &mut ChaCha8Rng) -> C2Params {
    std::array::from_fn(|_| [random_scalar(rng), random_scalar(rng)])
}

/// Replaces `y62` so that the eigenvalue relation holds; `y31 ≠ y41` is
/// arranged first.
fn impose_i1(p: &mut C2Params, rng: &mut ChaCha8Rng) {
    while p[2][0] == p[3][0] {
        p[3][0] = random_scalar(rng);
    }
    let d = |p: &C2Params, i: usize, j: usize, k: usize| &p[i - 1][k - 1] - &p[j - 1][k - 1];
    let rhs = &(&d(p, 5, 6, 1) * &d(p, 3, 4, 2)) * &d(p, 3, 4, 1).inv().expect("nonzero");
    p[5][1] = &p[4][1] - &rhs;
}

fn impose_i2(p: &mut C2Params) {
    p[0][1] = p[0][0].clone();
    p[1][1] = p[1][0].clone();
}

/// `y22 = −y21` with `y21 ≠ 0`, and `y12 = y11 − 1/y21`.
fn impose_i3(p: &mut C2Params, rng: &mut ChaCha8Rng) {
    if p[1][0].is_zero() {
        p[1][0] = random_nonzero(rng);
    }
    p[1][1] = -&p[1][0];
    p[0][1] = &p[0][0] - &p[1][0].inv().expect("nonzero");
}

pub fn sample_ideal(ideal: Ideal, rng: &mut ChaCha8Rng) -> C2Params {
    let mut p = random_params(rng);
    match ideal {
        Ideal::I1 => impose_i1(&mut p, rng),
        Ideal::I2 => impose_i2(&mut p),
        Ideal::I3 => impose_i3(&mut p, rng),
    }
    p
}

/// A point of `Y1 ∩ Y2`.
pub fn sample_intersection(rng: &mut ChaCha8Rng) -> C2Params {
    let mut p = random_params(rng);
    impose_i2(&mut p);
    impose_i1(&mut p, rng);
    p
}

/// Checks `[B1, B2] = 0` for the pair from `psi_pair` as a polynomial identity.
///
/// Each entry of the commutator has degree at most 4 in `y1`, 2 in `y2` and 1
/// in each of `y3..y6`. A polynomial with these degree bounds that vanishes on
/// a product grid with one more point than the bound in every coordinate is
/// zero, so the grid `{0..4} × {0..2} × {0, 1}⁴` suffices.
pub fn psi_commutator_identity() -> bool {
    const SIZES: [usize; 6] = [5, 3, 2, 2, 2, 2];
    let mut idx = [0usize; 6];
    loop {
        let values: [Scalar; 6] = std::array::from_fn(|k| Scalar::from_int(idx[k] as i64));
        let (b1, b2) = psi_pair(std::array::from_fn(|k| &values[k]));
        if !b1.commutator(&b2).is_zero() {
            return false;
        }
        let mut k = 0;
        loop {
            if k == 6 {
                return true;
            }
            idx[k] += 1;
            if idx[k] < SIZES[k] {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdealReport {
    pub ideal: Ideal,
    pub samples: usize,
    pub in_ideal: usize,
    pub commuting_pairs: usize,
    pub mixed_equation: usize,
}

impl IdealReport {
    pub fn passes(&self) -> bool {
        [self.in_ideal, self.commuting_pairs, self.mixed_equation]
            .iter()
            .all(|&n| n == self.samples)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct C2Report {
    pub seed: u64,
    pub symbolic_commutators: bool,
    pub ideals: Vec<IdealReport>,
    pub intersection_samples: usize,
    pub intersection_relation: usize,
    pub isotropy_samples: usize,
    pub isotropy_fixes: usize,
    pub all_pass: bool,
}

/// Runs the `c = 2` fixture identities on seeded random samples.
pub fn c2_fixture_checks_with(seed: u64, per_ideal: usize, on_intersection: usize) -> C2Report {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let symbolic_commutators = psi_commutator_identity();
    let ideals: Vec<IdealReport> = Ideal::ALL
        .iter()
        .map(|&ideal| {
            let mut rep = IdealReport {
                ideal,
                samples: per_ideal,
                in_ideal: 0,
                commuting_pairs: 0,
                mixed_equation: 0,
            };
            for _ in 0..per_ideal {
                let p = sample_ideal(ideal, &mut rng);
                let x = psi(&p);
                let b = x.operators();
                rep.in_ideal += ideal.contains(&p) as usize;
                rep.commuting_pairs +=
                    (b[0].commutator(&b[2]).is_zero() && b[1].commutator(&b[3]).is_zero()) as usize;
                rep.mixed_equation +=
                    (&b[0].commutator(&b[3]) + &b[1].commutator(&b[2])).is_zero() as usize;
            }
            rep
        })
        .collect();
    let mut intersection_relation = 0;
    for _ in 0..on_intersection {
        let p = sample_intersection(&mut rng);
        let x = psi(&p);
        let ok = Ideal::I1.contains(&p)
            && Ideal::I2.contains(&p)
            && is_adhm(&x)
            && eigenvalue_relation_from_matrices(&x).is_zero();
        intersection_relation += ok as usize;
    }
    let mut isotropy_fixes = 0;
    for _ in 0..on_intersection {
        let p = sample_ideal(Ideal::I2, &mut rng);
        let x = psi(&p);
        let (t1, t2) = (random_nonzero(&mut rng), random_nonzero(&mut rng));
        let fixed = isotropy_element(&p, &t1, &t2)
            .is_ok_and(|g| crate::adhm::act(&g, &x).is_ok_and(|y| y == x));
        isotropy_fixes += fixed as usize;
    }
    let all_pass = symbolic_commutators
        && ideals.iter().all(IdealReport::passes)
        && intersection_relation == on_intersection
        && isotropy_fixes == on_intersection;
    C2Report {
        seed,
        symbolic_commutators,
        ideals,
        intersection_samples: on_intersection,
        intersection_relation,
        isotropy_samples: on_intersection,
        isotropy_fixes,
        all_pass,
    }
}

/// 50 samples per ideal and 20 on `Y1 ∩ Y2`, seed 0.
pub fn c2_fixture_checks() -> C2Report {
    c2_fixture_checks_with(0, 50, 20)
}
