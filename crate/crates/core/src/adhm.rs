//! ADHM data on P¹: matrices of linear forms in `(x0, x1)`, the moment map,
//! the `GL(V)` action and the stability notions built on them.
//!
//! A datum `x = (B̃₁, B̃₂, ĩ, j̃)` is stored through its pencil coefficients,
//! `B̃₁ = B10·x0 + B11·x1` and likewise for the other three maps.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hermite::{HermiteBasis, PolyColumn};
use crate::matrix::Matrix;
use crate::poly::{Monomial, Poly, Var};
use crate::polymatrix::PolyMatrix;
use crate::scalar::Scalar;
use crate::subspace::{closure, largest_invariant, Subspace};
use crate::unipoly::UniPoly;

/// A matrix of linear forms `at_x0·x0 + at_x1·x1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Pencil {
    pub at_x0: Matrix,
    pub at_x1: Matrix,
}

impl Pencil {
    pub fn new(at_x0: Matrix, at_x1: Matrix) -> Result<Self> {
        if (at_x0.rows(), at_x0.cols()) != (at_x1.rows(), at_x1.cols()) {
            return Err(Error::Dimension(format!(
                "pencil coefficients are {}x{} and {}x{}",
                at_x0.rows(),
                at_x0.cols(),
                at_x1.rows(),
                at_x1.cols()
            )));
        }
        Ok(Pencil { at_x0, at_x1 })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Pencil {
            at_x0: Matrix::zeros(rows, cols),
            at_x1: Matrix::zeros(rows, cols),
        }
    }

    /// Integer coefficient literal helper.
    pub fn from_ints(at_x0: &[&[i64]], at_x1: &[&[i64]]) -> Self {
        Pencil::new(Matrix::from_ints(at_x0), Matrix::from_ints(at_x1)).expect("same shape")
    }

    pub fn rows(&self) -> usize {
        self.at_x0.rows()
    }

    pub fn cols(&self) -> usize {
        self.at_x0.cols()
    }

    pub fn coefficients(&self) -> [&Matrix; 2] {
        [&self.at_x0, &self.at_x1]
    }

    pub fn is_zero(&self) -> bool {
        self.at_x0.is_zero() && self.at_x1.is_zero()
    }

    pub fn to_poly(&self) -> PolyMatrix {
        PolyMatrix::linear_combination(&[(&self.at_x0, Var::X0), (&self.at_x1, Var::X1)])
    }

    /// Reads a matrix of linear forms in `x0, x1`.
    pub fn from_poly(m: &PolyMatrix) -> Result<Self> {
        for p in m.entries() {
            let ok = p.is_homogeneous_of(1) && !p.uses(Var::X2) && !p.uses(Var::X3) && !p.uses(Var::T);
            if !ok {
                return Err(Error::Dimension(format!(
                    "entry {p} is not a linear form in x0, x1"
                )));
            }
        }
        Ok(Pencil {
            at_x0: m.coefficient(&Monomial::var(Var::X0)),
            at_x1: m.coefficient(&Monomial::var(Var::X1)),
        })
    }

    /// Value at `(x0, x1) = (a, b)`.
    pub fn at(&self, a: &Scalar, b: &Scalar) -> Matrix {
        &self.at_x0.scale(a) + &self.at_x1.scale(b)
    }

    /// Entries on the affine chart `[1 : t]` as polynomials in `t`.
    pub fn on_chart(&self) -> Vec<Vec<UniPoly>> {
        (0..self.rows())
            .map(|i| {
                (0..self.cols())
                    .map(|j| UniPoly::linear(self.at_x0[(i, j)].clone(), self.at_x1[(i, j)].clone()))
                    .collect()
            })
            .collect()
    }

    pub fn map(&self, f: impl Fn(&Matrix) -> Matrix) -> Pencil {
        Pencil {
            at_x0: f(&self.at_x0),
            at_x1: f(&self.at_x1),
        }
    }

    pub fn transpose(&self) -> Pencil {
        self.map(Matrix::transpose)
    }

    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Pencil {
        self.map(|m| m.block(r0, r1, c0, c1))
    }
}

/// `x = (B̃₁, B̃₂, ĩ, j̃)` with `dim V = c`, `dim W = r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdhmDatum {
    c: usize,
    r: usize,
    b1: Pencil,
    b2: Pencil,
    i: Pencil,
    j: Pencil,
}

impl AdhmDatum {
    pub fn new(c: usize, r: usize, b1: Pencil, b2: Pencil, i: Pencil, j: Pencil) -> Result<Self> {
        let shapes = [
            ("B1", &b1, (c, c)),
            ("B2", &b2, (c, c)),
            ("i", &i, (c, r)),
            ("j", &j, (r, c)),
        ];
        for (name, p, want) in shapes {
            if (p.rows(), p.cols()) != want {
                return Err(Error::Dimension(format!(
                    "{name} is {}x{}, expected {}x{}",
                    p.rows(),
                    p.cols(),
                    want.0,
                    want.1
                )));
            }
        }
        Ok(AdhmDatum { c, r, b1, b2, i, j })
    }

    pub fn zero(c: usize, r: usize) -> Self {
        AdhmDatum {
            c,
            r,
            b1: Pencil::zeros(c, c),
            b2: Pencil::zeros(c, c),
            i: Pencil::zeros(c, r),
            j: Pencil::zeros(r, c),
        }
    }

    pub fn from_poly_matrices(
        c: usize,
        r: usize,
        b1: &PolyMatrix,
        b2: &PolyMatrix,
        i: &PolyMatrix,
        j: &PolyMatrix,
    ) -> Result<Self> {
        Self::new(
            c,
            r,
            Pencil::from_poly(b1)?,
            Pencil::from_poly(b2)?,
            Pencil::from_poly(i)?,
            Pencil::from_poly(j)?,
        )
    }

    pub fn c(&self) -> usize {
        self.c
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn b1(&self) -> &Pencil {
        &self.b1
    }

    pub fn b2(&self) -> &Pencil {
        &self.b2
    }

    pub fn i(&self) -> &Pencil {
        &self.i
    }

    pub fn j(&self) -> &Pencil {
        &self.j
    }

    /// `[B10, B11, B20, B21]`, the operators stability is taken against.
    pub fn operators(&self) -> [Matrix; 4] {
        [
            self.b1.at_x0.clone(),
            self.b1.at_x1.clone(),
            self.b2.at_x0.clone(),
            self.b2.at_x1.clone(),
        ]
    }

    /// Block sum `x ⊕ y` on `V ⊕ V'` and `W ⊕ W'`.
    pub fn direct_sum(&self, other: &AdhmDatum) -> AdhmDatum {
        let sum = |a: &Pencil, b: &Pencil| Pencil {
            at_x0: a.at_x0.direct_sum(&b.at_x0),
            at_x1: a.at_x1.direct_sum(&b.at_x1),
        };
        AdhmDatum {
            c: self.c + other.c,
            r: self.r + other.r,
            b1: sum(&self.b1, &other.b1),
            b2: sum(&self.b2, &other.b2),
            i: sum(&self.i, &other.i),
            j: sum(&self.j, &other.j),
        }
    }

    /// The dual datum `(B̃₁ᵀ, B̃₂ᵀ, j̃ᵀ, ĩᵀ)`: costability of `x` is stability of
    /// its dual.
    pub fn dual(&self) -> AdhmDatum {
        AdhmDatum {
            c: self.c,
            r: self.r,
            b1: self.b1.transpose(),
            b2: self.b2.transpose(),
            i: self.j.transpose(),
            j: self.i.transpose(),
        }
    }
}

/// ADHM data for a point: the value of a datum at some `p ∈ P¹`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstantDatum {
    pub b1: Matrix,
    pub b2: Matrix,
    pub i: Matrix,
    pub j: Matrix,
}

impl ConstantDatum {
    pub fn c(&self) -> usize {
        self.b1.rows()
    }

    /// `[B₁, B₂] + i·j`
    pub fn moment(&self) -> Matrix {
        &self.b1.commutator(&self.b2) + &(&self.i * &self.j)
    }

    pub fn reachable_subspace(&self) -> Subspace {
        closure(
            &Subspace::column_span(&self.i),
            &[self.b1.clone(), self.b2.clone()],
        )
        .expect("square operators")
    }

    pub fn unobservable_subspace(&self) -> Subspace {
        largest_invariant(&self.j.kernel(), &[self.b1.clone(), self.b2.clone()])
            .expect("square operators")
    }

    pub fn is_stable(&self) -> bool {
        self.reachable_subspace().is_full()
    }

    pub fn is_costable(&self) -> bool {
        self.unobservable_subspace().is_zero()
    }

    pub fn act(&self, g: &GroupElement) -> ConstantDatum {
        ConstantDatum {
            b1: &(&g.g * &self.b1) * &g.g_inv,
            b2: &(&g.g * &self.b2) * &g.g_inv,
            i: &g.g * &self.i,
            j: &self.j * &g.g_inv,
        }
    }
}

/// `μ̃(x) = [B̃₁, B̃₂] + ĩ·j̃ = μ1·x0² + μ2·x0x1 + μ3·x1²`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MomentValue {
    pub entries: PolyMatrix,
    pub components: [Matrix; 3],
}

impl MomentValue {
    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Matrix::is_zero)
    }

    /// Rebuilds the quadratic forms from the component triple.
    pub fn from_components(components: &[Matrix; 3]) -> PolyMatrix {
        let x0 = Poly::var(Var::X0);
        let x1 = Poly::var(Var::X1);
        let monos = [&x0 * &x0, &x0 * &x1, &x1 * &x1];
        let (n, m) = (components[0].rows(), components[0].cols());
        PolyMatrix::from_fn(n, m, |a, b| {
            components
                .iter()
                .zip(&monos)
                .fold(Poly::zero(), |acc, (comp, mono)| &acc + &mono.scale(&comp[(a, b)]))
        })
    }
}

/// Coefficients of `μ̃` in the basis `x0², x0x1, x1²`.
pub fn moment_components(x: &AdhmDatum) -> [Matrix; 3] {
    moment_pairing(x, x)
}

/// The bilinear form `(x, y) ↦ [B̃₁(x), B̃₂(y)] + ĩ(x)·j̃(y)` whose diagonal is
/// `μ̃`, as coefficients of `x0², x0x1, x1²`.
pub fn moment_pairing(x: &AdhmDatum, y: &AdhmDatum) -> [Matrix; 3] {
    let (b10, b11) = (&x.b1.at_x0, &x.b1.at_x1);
    let (b20, b21) = (&y.b2.at_x0, &y.b2.at_x1);
    let (i0, i1) = (&x.i.at_x0, &x.i.at_x1);
    let (j0, j1) = (&y.j.at_x0, &y.j.at_x1);
    let mu1 = &b10.commutator(b20) + &(i0 * j0);
    let mu2 = &(&(&b10.commutator(b21) + &b11.commutator(b20)) + &(i0 * j1)) + &(i1 * j0);
    let mu3 = &b11.commutator(b21) + &(i1 * j1);
    [mu1, mu2, mu3]
}

pub fn moment_map(x: &AdhmDatum) -> MomentValue {
    let b1 = x.b1.to_poly();
    let b2 = x.b2.to_poly();
    let entries = &(&(&b1 * &b2) - &(&b2 * &b1)) + &(&x.i.to_poly() * &x.j.to_poly());
    MomentValue {
        entries,
        components: moment_components(x),
    }
}

pub fn is_adhm(x: &AdhmDatum) -> bool {
    moment_components(x).iter().all(Matrix::is_zero)
}

/// An element of `GL(V)` together with its inverse.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupElement {
    g: Matrix,
    g_inv: Matrix,
}

impl GroupElement {
    pub fn new(g: Matrix) -> Result<Self> {
        let g_inv = g.inverse()?;
        Ok(GroupElement { g, g_inv })
    }

    pub fn identity(n: usize) -> Self {
        GroupElement {
            g: Matrix::identity(n),
            g_inv: Matrix::identity(n),
        }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.g
    }

    pub fn inverse_matrix(&self) -> &Matrix {
        &self.g_inv
    }

    pub fn size(&self) -> usize {
        self.g.rows()
    }

    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        GroupElement {
            g: &self.g * &other.g,
            g_inv: &other.g_inv * &self.g_inv,
        }
    }

    pub fn inverse(&self) -> GroupElement {
        GroupElement {
            g: self.g_inv.clone(),
            g_inv: self.g.clone(),
        }
    }
}

/// `g·(B̃₁, B̃₂, ĩ, j̃) = (gB̃₁g⁻¹, gB̃₂g⁻¹, gĩ, j̃g⁻¹)`.
pub fn act(g: &GroupElement, x: &AdhmDatum) -> Result<AdhmDatum> {
    if g.size() != x.c {
        return Err(Error::Dimension(format!(
            "group element of size {} acting on a datum with c = {}",
            g.size(),
            x.c
        )));
    }
    let conj = |m: &Matrix| &(&g.g * m) * &g.g_inv;
    Ok(AdhmDatum {
        c: x.c,
        r: x.r,
        b1: x.b1.map(conj),
        b2: x.b2.map(conj),
        i: x.i.map(|m| &g.g * m),
        j: x.j.map(|m| m * &g.g_inv),
    })
}

/// A point `[a : b]` of P¹, normalized so the first nonzero coordinate is 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct P1Point {
    pub a: Scalar,
    pub b: Scalar,
}

impl P1Point {
    pub fn new(a: Scalar, b: Scalar) -> Result<Self> {
        if !a.is_zero() {
            let inv = a.inv().expect("nonzero");
            Ok(P1Point {
                b: &b * &inv,
                a: Scalar::one(),
            })
        } else if !b.is_zero() {
            Ok(P1Point {
                a: Scalar::zero(),
                b: Scalar::one(),
            })
        } else {
            Err(Error::ZeroPoint)
        }
    }

    /// `[1 : t]`
    pub fn on_chart(t: Scalar) -> Self {
        P1Point {
            a: Scalar::one(),
            b: t,
        }
    }

    /// `[0 : 1]`
    pub fn infinity() -> Self {
        P1Point {
            a: Scalar::zero(),
            b: Scalar::one(),
        }
    }
}

impl std::fmt::Display for P1Point {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}:{}]", self.a, self.b)
    }
}

pub fn evaluate(x: &AdhmDatum, p: &P1Point) -> ConstantDatum {
    ConstantDatum {
        b1: x.b1.at(&p.a, &p.b),
        b2: x.b2.at(&p.a, &p.b),
        i: x.i.at(&p.a, &p.b),
        j: x.j.at(&p.a, &p.b),
    }
}

/// Smallest subspace `S` with `B̃ₖ(S) ⊂ S⊗H⁰(O(1))` and `im ĩ ⊂ S⊗H⁰(O(1))`.
pub fn reachable_subspace(x: &AdhmDatum) -> Subspace {
    let gens = Matrix::hstack(&[&x.i.at_x0, &x.i.at_x1]).expect("same row count");
    closure(&Subspace::column_span(&gens), &x.operators()).expect("square operators")
}

/// Largest subspace inside `ker j0 ∩ ker j1` invariant under all four `Bₖₗ`.
pub fn unobservable_subspace(x: &AdhmDatum) -> Subspace {
    let stacked = Matrix::vstack(&[&x.j.at_x0, &x.j.at_x1]).expect("same column count");
    largest_invariant(&stacked.kernel(), &x.operators()).expect("square operators")
}

pub fn is_stable(x: &AdhmDatum) -> bool {
    reachable_subspace(x).is_full()
}

pub fn is_costable(x: &AdhmDatum) -> bool {
    unobservable_subspace(x).is_zero()
}

pub fn is_regular(x: &AdhmDatum) -> bool {
    is_stable(x) && is_costable(x)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LocusKind {
    WholeLine,
    FiniteSet,
}

/// The points `p ∈ P¹` where a pointwise condition fails.
///
/// For a finite locus, `chart_polynomial` is the squarefree polynomial in `t`
/// whose roots are the failing points `[1 : t]`; `points` lists the ones with
/// coordinates in the base field (rational roots, then `[0:1]` if it fails),
/// and `unsplit_factor` is the remaining factor without rational roots.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnstableLocus {
    pub kind: LocusKind,
    pub points: Vec<P1Point>,
    pub chart_polynomial: Option<Poly>,
    pub unsplit_factor: Option<Poly>,
}

impl UnstableLocus {
    pub fn whole_line() -> Self {
        UnstableLocus {
            kind: LocusKind::WholeLine,
            points: Vec::new(),
            chart_polynomial: None,
            unsplit_factor: None,
        }
    }

    pub fn empty() -> Self {
        UnstableLocus {
            kind: LocusKind::FiniteSet,
            points: Vec::new(),
            chart_polynomial: Some(Poly::one()),
            unsplit_factor: None,
        }
    }

    pub fn is_whole_line(&self) -> bool {
        self.kind == LocusKind::WholeLine
    }

    pub fn is_empty(&self) -> bool {
        self.kind == LocusKind::FiniteSet && self.points.is_empty() && self.unsplit_factor.is_none()
    }

    /// Membership test for an arbitrary point.
    pub fn contains(&self, p: &P1Point) -> bool {
        match self.kind {
            LocusKind::WholeLine => true,
            LocusKind::FiniteSet => {
                if p.a.is_zero() {
                    return self.points.iter().any(|q| q.a.is_zero());
                }
                self.chart_polynomial
                    .as_ref()
                    .is_some_and(|f| f.to_univariate(Var::T).is_ok_and(|u| u.eval(&p.b).is_zero()))
            }
        }
    }
}

/// Generators of the `k[t]`-module spanned by the Krylov vectors
/// `w(B(t))·g(t)` over words `w` of length `< n`, on the chart `[1:t]`.
pub fn krylov_module(n: usize, operators: &[&Pencil], gens: &Pencil) -> HermiteBasis {
    let columns = |m: &Vec<Vec<UniPoly>>, cols: usize| -> Vec<PolyColumn> {
        (0..cols)
            .map(|j| (0..n).map(|i| m[i][j].clone()).collect())
            .collect()
    };
    let base = columns(&gens.on_chart(), gens.cols());
    let ops: Vec<Vec<Vec<UniPoly>>> = operators.iter().map(|p| p.on_chart()).collect();
    let mut module = HermiteBasis::new(n, base.clone());
    for _ in 1..n.max(1) {
        let mut next = base.clone();
        for g in module.generators() {
            next.push(g.clone());
            for op in &ops {
                let image: PolyColumn = (0..n)
                    .map(|i| {
                        (0..n).fold(UniPoly::zero(), |acc, k| {
                            if op[i][k].is_zero() || g[k].is_zero() {
                                acc
                            } else {
                                &acc + &(&op[i][k] * &g[k])
                            }
                        })
                    })
                    .collect();
                next.push(image);
            }
        }
        let grown = HermiteBasis::new(n, next);
        if grown == module {
            break;
        }
        module = grown;
    }
    module
}

fn rank_drop_locus(
    n: usize,
    operators: &[&Pencil],
    gens: &Pencil,
    fails_at: impl Fn(&P1Point) -> bool,
) -> UnstableLocus {
    if n == 0 {
        return UnstableLocus::empty();
    }
    let module = krylov_module(n, operators, gens);
    let Some(det) = module.maximal_minor_gcd() else {
        return UnstableLocus::whole_line();
    };
    let squarefree = det.squarefree();
    let (roots, rest) = squarefree.split_rational_roots();
    let mut points: Vec<P1Point> = roots
        .into_iter()
        .map(|t| P1Point::on_chart(Scalar::from_rational(t)))
        .collect();
    if fails_at(&P1Point::infinity()) {
        points.push(P1Point::infinity());
    }
    UnstableLocus {
        kind: LocusKind::FiniteSet,
        points,
        chart_polynomial: Some(Poly::from_univariate(&squarefree, Var::T)),
        unsplit_factor: (!rest.is_constant()).then(|| Poly::from_univariate(&rest, Var::T)),
    }
}

/// Points where `x(p)` is not stable.
pub fn unstable_locus(x: &AdhmDatum) -> UnstableLocus {
    rank_drop_locus(x.c, &[&x.b1, &x.b2], &x.i, |p| !evaluate(x, p).is_stable())
}

/// Points where `x(p)` is not costable.
pub fn uncostable_locus(x: &AdhmDatum) -> UnstableLocus {
    let d = x.dual();
    rank_drop_locus(d.c, &[&d.b1, &d.b2], &d.i, |p| !evaluate(x, p).is_costable())
}

pub fn is_fj_stable(x: &AdhmDatum) -> bool {
    unstable_locus(x).is_empty()
}

pub fn is_fj_semistable(x: &AdhmDatum) -> bool {
    !unstable_locus(x).is_whole_line()
}

pub fn is_fj_costable(x: &AdhmDatum) -> bool {
    uncostable_locus(x).is_empty()
}

pub fn is_fj_regular(x: &AdhmDatum) -> bool {
    is_fj_stable(x) && is_fj_costable(x)
}

/// `(rank, charge) = (r, c)` from `ch = r − c[H]²`.
pub fn chern(x: &AdhmDatum) -> (usize, usize) {
    (x.r, x.c)
}

/// Matrix whose columns are the basis vectors of the given subspaces, in order.
fn adapted_basis(parts: &[&Subspace], n: usize) -> Result<GroupElement> {
    let rows: Vec<Vec<Scalar>> = parts.iter().flat_map(|s| s.basis_vectors()).collect();
    let m = Matrix::from_rows(rows, n)?.transpose();
    GroupElement::new(m)
}

/// Coordinate complement of a subspace: the standard basis vectors at the
/// non-pivot columns of its echelon basis.
fn coordinate_complement(s: &Subspace) -> Subspace {
    let n = s.ambient_dim();
    let pivots: Vec<usize> = s
        .basis_vectors()
        .iter()
        .filter_map(|v| v.iter().position(|e| !e.is_zero()))
        .collect();
    let vectors = (0..n)
        .filter(|j| !pivots.contains(j))
        .map(|j| (0..n).map(|k| if k == j { Scalar::one() } else { Scalar::zero() }).collect())
        .collect();
    Subspace::from_vectors(n, vectors)
}

/// Orbit closedness of the rank-0 summand is not decided here.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OrbitVerdict {
    Undetermined,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PolystableSplit {
    pub v1: Subspace,
    pub v2: Subspace,
    /// Columns: basis of `V1`, then basis of `V2`.
    pub basis_change: GroupElement,
    pub x1: AdhmDatum,
    pub x2: AdhmDatum,
    pub rank0_closed_orbit: OrbitVerdict,
}

impl PolystableSplit {
    /// `x1 ⊕ x2` taken back to the original basis.
    pub fn reassemble(&self) -> Result<AdhmDatum> {
        act(&self.basis_change, &self.x1.direct_sum(&self.x2))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum SplitOutcome {
    Split(PolystableSplit),
    NotSplit { v1: Subspace, v2: Subspace },
}

fn blocks(x: &AdhmDatum, g: &GroupElement, cut: usize) -> [AdhmDatum; 4] {
    let y = act(&g.inverse(), x).expect("matching size");
    let c = x.c;
    let r = x.r;
    let part = |r0, r1, c0, c1, with_framing: bool| {
        let (ri, rj) = if with_framing { (r, r) } else { (0, 0) };
        AdhmDatum {
            c: r1 - r0,
            r: ri,
            b1: y.b1.block(r0, r1, c0, c1),
            b2: y.b2.block(r0, r1, c0, c1),
            i: if with_framing { y.i.block(r0, r1, 0, r) } else { Pencil::zeros(r1 - r0, 0) },
            j: if with_framing { y.j.block(0, rj, c0, c1) } else { Pencil::zeros(0, c1 - c0) },
        }
    };
    [
        part(0, cut, 0, cut, true),
        part(cut, c, cut, c, true),
        part(0, cut, cut, c, false),
        part(cut, c, 0, cut, false),
    ]
}

/// Splits `x = x1 ⊕ x2` with `x1` regular on `V1 = reachable_subspace(x)` and
/// `x2` of rank 0 on `V2 = unobservable_subspace(x)`, when `V1 ⊕ V2 = V`.
pub fn try_polystable_split(x: &AdhmDatum) -> Result<SplitOutcome> {
    if !is_adhm(x) {
        return Err(Error::NotAdhm);
    }
    let v1 = reachable_subspace(x);
    let v2 = unobservable_subspace(x);
    if !v1.is_complement_of(&v2) {
        return Ok(SplitOutcome::NotSplit { v1, v2 });
    }
    let g = adapted_basis(&[&v1, &v2], x.c)?;
    let d1 = v1.dim();
    let [top, bottom, _, _] = blocks(x, &g, d1);
    let x1 = top;
    let x2 = AdhmDatum {
        c: bottom.c,
        r: 0,
        b1: bottom.b1,
        b2: bottom.b2,
        i: Pencil::zeros(bottom.c, 0),
        j: Pencil::zeros(0, bottom.c),
    };
    let split = PolystableSplit {
        v1,
        v2,
        basis_change: g,
        x1,
        x2,
        rank0_closed_orbit: OrbitVerdict::Undetermined,
    };
    if split.reassemble()? != *x {
        return Err(Error::Dimension("polystable split does not reassemble".into()));
    }
    Ok(SplitOutcome::Split(split))
}

/// The off-diagonal data tying the rank-0 part to the regular part in the
/// adapted basis: `B̃ₖ` blocks `V/V2 → V2` and the `V2` component of `ĩ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConnectingBlocks {
    pub b1: Pencil,
    pub b2: Pencil,
    pub i: Pencil,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DuDecomposition {
    pub v2: Subspace,
    /// Columns: basis of `V2`, then a coordinate complement.
    pub basis_change: GroupElement,
    pub regular_part: AdhmDatum,
    pub rank0_part: AdhmDatum,
    pub connecting: ConnectingBlocks,
    pub c_prime: usize,
}

impl DuDecomposition {
    /// Rebuilds the block-triangular datum and conjugates it back.
    pub fn reassemble(&self) -> Result<AdhmDatum> {
        let d2 = self.rank0_part.c;
        let cp = self.regular_part.c;
        let r = self.regular_part.r;
        let join = |a: &Matrix, b: &Matrix, c: &Matrix, d: &Matrix| -> Result<Matrix> {
            let top = Matrix::hstack(&[a, b])?;
            let bottom = Matrix::hstack(&[c, d])?;
            Matrix::vstack(&[&top, &bottom])
        };
        let square = |rank0: &Pencil, conn: &Pencil, reg: &Pencil| -> Result<Pencil> {
            Pencil::new(
                join(&rank0.at_x0, &conn.at_x0, &Matrix::zeros(cp, d2), &reg.at_x0)?,
                join(&rank0.at_x1, &conn.at_x1, &Matrix::zeros(cp, d2), &reg.at_x1)?,
            )
        };
        let b1 = square(&self.rank0_part.b1, &self.connecting.b1, &self.regular_part.b1)?;
        let b2 = square(&self.rank0_part.b2, &self.connecting.b2, &self.regular_part.b2)?;
        let i = Pencil::new(
            Matrix::vstack(&[&self.connecting.i.at_x0, &self.regular_part.i.at_x0])?,
            Matrix::vstack(&[&self.connecting.i.at_x1, &self.regular_part.i.at_x1])?,
        )?;
        let j = Pencil::new(
            Matrix::hstack(&[&Matrix::zeros(r, d2), &self.regular_part.j.at_x0])?,
            Matrix::hstack(&[&Matrix::zeros(r, d2), &self.regular_part.j.at_x1])?,
        )?;
        let adapted = AdhmDatum::new(d2 + cp, r, b1, b2, i, j)?;
        act(&self.basis_change, &adapted)
    }
}

/// Splits a stable datum into its regular quotient on `V/V2` and the rank-0
/// datum on `V2 = unobservable_subspace(x)`.
pub fn du_decompose(x: &AdhmDatum) -> Result<DuDecomposition> {
    if !is_adhm(x) {
        return Err(Error::NotAdhm);
    }
    if !is_stable(x) {
        return Err(Error::NotStable);
    }
    let v2 = unobservable_subspace(x);
    let complement = coordinate_complement(&v2);
    let g = adapted_basis(&[&v2, &complement], x.c)?;
    let d2 = v2.dim();
    let [rank0, regular, connecting, lower] = blocks(x, &g, d2);
    debug_assert!(lower.b1.is_zero() && lower.b2.is_zero());
    let y = act(&g.inverse(), x)?;
    let rank0_part = AdhmDatum {
        c: d2,
        r: 0,
        b1: rank0.b1,
        b2: rank0.b2,
        i: Pencil::zeros(d2, 0),
        j: Pencil::zeros(0, d2),
    };
    let connecting = ConnectingBlocks {
        b1: connecting.b1,
        b2: connecting.b2,
        i: y.i.block(0, d2, 0, x.r),
    };
    Ok(DuDecomposition {
        v2,
        basis_change: g,
        c_prime: regular.c,
        regular_part: regular,
        rank0_part,
        connecting,
    })
}

/// Solves `g·y = x` for `g ∈ GL(V)`. Returns `None` when no invertible
/// solution is found; for stable data the solution is unique when it exists.
pub fn find_isomorphism(x: &AdhmDatum, y: &AdhmDatum) -> Option<GroupElement> {
    if (x.c, x.r) != (y.c, y.r) {
        return None;
    }
    let c = x.c;
    let r = x.r;
    let unknowns = c * c;
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let idx = |a: usize, b: usize| a * c + b;
    // g·By − Bx·g = 0
    for (by, bx) in [
        (&y.b1.at_x0, &x.b1.at_x0),
        (&y.b1.at_x1, &x.b1.at_x1),
        (&y.b2.at_x0, &x.b2.at_x0),
        (&y.b2.at_x1, &x.b2.at_x1),
    ] {
        for p in 0..c {
            for q in 0..c {
                let mut row = vec![Scalar::zero(); unknowns + 1];
                for b in 0..c {
                    row[idx(p, b)] += &by[(b, q)];
                }
                for a in 0..c {
                    row[idx(a, q)] -= &bx[(p, a)];
                }
                rows.push(row);
            }
        }
    }
    // g·iy = ix
    for (iy, ix) in [(&y.i.at_x0, &x.i.at_x0), (&y.i.at_x1, &x.i.at_x1)] {
        for p in 0..c {
            for q in 0..r {
                let mut row = vec![Scalar::zero(); unknowns + 1];
                for b in 0..c {
                    row[idx(p, b)] += &iy[(b, q)];
                }
                row[unknowns] = ix[(p, q)].clone();
                rows.push(row);
            }
        }
    }
    // jx·g = jy
    for (jx, jy) in [(&x.j.at_x0, &y.j.at_x0), (&x.j.at_x1, &y.j.at_x1)] {
        for p in 0..r {
            for q in 0..c {
                let mut row = vec![Scalar::zero(); unknowns + 1];
                for a in 0..c {
                    row[idx(a, q)] += &jx[(p, a)];
                }
                row[unknowns] = jy[(p, q)].clone();
                rows.push(row);
            }
        }
    }
    let system = Matrix::from_rows(rows, unknowns + 1).ok()?;
    let (rref, pivots) = system.rref();
    if pivots.contains(&unknowns) {
        return None;
    }
    let mut sol = vec![Scalar::zero(); unknowns];
    for (k, &p) in pivots.iter().enumerate() {
        sol[p] = rref[(k, unknowns)].clone();
    }
    let g = Matrix::from_fn(c, c, |a, b| sol[idx(a, b)].clone());
    let g = GroupElement::new(g).ok()?;
    (act(&g, y).ok()? == *x).then_some(g)
}
