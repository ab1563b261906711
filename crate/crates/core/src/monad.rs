//! The monad `V⊗O(−1) → W̃⊗O → V⊗O(1)` on P³ attached to an ADHM datum, with
//! `W̃ = V ⊕ V ⊕ W`, and the rank-drop loci of its two maps.

use serde::Serialize;

use crate::adhm::{is_adhm, AdhmDatum, GroupElement, LocusKind, P1Point};
use crate::error::{Error, Result};
use crate::hermite::{HermiteBasis, PolyColumn};
use crate::matrix::Matrix;
use crate::poly::{Poly, Var, NVARS};
use crate::polymatrix::PolyMatrix;
use crate::scalar::Scalar;
use crate::unipoly::UniPoly;

/// `α = [B̃₁ + x2; B̃₂ + x3; j̃]` and `β = [−B̃₂ − x3, B̃₁ + x2, ĩ]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Monad {
    pub c: usize,
    pub r: usize,
    pub alpha: PolyMatrix,
    pub beta: PolyMatrix,
}

impl Monad {
    /// Assembles `α` and `β` without checking the ADHM equation.
    pub fn assemble(x: &AdhmDatum) -> Monad {
        let c = x.c();
        let id = Matrix::identity(c);
        let x2 = PolyMatrix::from_constant(&id, Some(Var::X2));
        let x3 = PolyMatrix::from_constant(&id, Some(Var::X3));
        let b1 = &x.b1().to_poly() + &x2;
        let b2 = &x.b2().to_poly() + &x3;
        let alpha = PolyMatrix::vstack(&[&b1, &b2, &x.j().to_poly()]).expect("c columns");
        let beta = PolyMatrix::hstack(&[&-&b2, &b1, &x.i().to_poly()]).expect("c rows");
        Monad {
            c,
            r: x.r(),
            alpha,
            beta,
        }
    }

    pub fn composite(&self) -> PolyMatrix {
        &self.beta * &self.alpha
    }

    /// The monad of `g·x`: `α ↦ diag(g, g, 1)·α·g⁻¹` and `β ↦ g·β·diag(g⁻¹, g⁻¹, 1)`.
    pub fn act(&self, g: &GroupElement) -> Monad {
        let w = Matrix::identity(self.r);
        let outer = g.matrix().direct_sum(g.matrix()).direct_sum(&w);
        let outer_inv = g.inverse_matrix().direct_sum(g.inverse_matrix()).direct_sum(&w);
        let constant = |m: &Matrix| PolyMatrix::from_constant(m, None);
        Monad {
            c: self.c,
            r: self.r,
            alpha: &(&constant(&outer) * &self.alpha) * &constant(g.inverse_matrix()),
            beta: &(&constant(g.matrix()) * &self.beta) * &constant(&outer_inv),
        }
    }
}

pub fn build_monad(x: &AdhmDatum) -> Result<Monad> {
    if !is_adhm(x) {
        return Err(Error::NotAdhm);
    }
    let m = Monad::assemble(x);
    if !m.composite().is_zero() {
        return Err(Error::NotAdhm);
    }
    Ok(m)
}

/// `(βα = 0, μ̃ = 0)`; the two always agree.
pub fn monad_identity_iff_moment(x: &AdhmDatum) -> (bool, bool) {
    (Monad::assemble(x).composite().is_zero(), is_adhm(x))
}

/// A point of P³, normalized so the first nonzero coordinate is 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct P3Point {
    coords: [Scalar; 4],
}

impl P3Point {
    pub fn new(coords: [Scalar; 4]) -> Result<Self> {
        let Some(lead) = coords.iter().find(|c| !c.is_zero()) else {
            return Err(Error::ZeroPoint);
        };
        let inv = lead.inv().expect("nonzero");
        Ok(P3Point {
            coords: coords.map(|c| &c * &inv),
        })
    }

    pub fn from_ints(coords: [i64; 4]) -> Result<Self> {
        Self::new(coords.map(Scalar::from_int))
    }

    pub fn coords(&self) -> &[Scalar; 4] {
        &self.coords
    }

    fn values(&self) -> [Scalar; NVARS] {
        let [a, b, c, d] = self.coords.clone();
        [a, b, c, d, Scalar::zero()]
    }
}

impl std::fmt::Display for P3Point {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let [a, b, c, d] = &self.coords;
        write!(f, "[{a}:{b}:{c}:{d}]")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonadFiber {
    pub alpha: Matrix,
    pub beta: Matrix,
    pub rank_alpha: usize,
    pub rank_beta: usize,
    pub dim_ker_alpha: usize,
    pub corank_beta: usize,
    /// `dim ker β(p) − rank α(p)`, recorded when `α(p)` is injective.
    pub fiber_dim: Option<usize>,
}

pub fn eval_monad(m: &Monad, p: &P3Point) -> MonadFiber {
    let values = p.values();
    let alpha = m.alpha.eval(&values);
    let beta = m.beta.eval(&values);
    let rank_alpha = alpha.rank();
    let rank_beta = beta.rank();
    let dim_ker_alpha = m.c - rank_alpha;
    let dim_ker_beta = beta.cols() - rank_beta;
    MonadFiber {
        rank_alpha,
        rank_beta,
        dim_ker_alpha,
        corank_beta: m.c - rank_beta,
        fiber_dim: (dim_ker_alpha == 0).then(|| dim_ker_beta - rank_alpha),
        alpha,
        beta,
    }
}

/// All `c × c` minors of `α`, in lexicographic row-subset order.
pub fn alpha_degeneracy_minors(m: &Monad) -> Vec<Poly> {
    m.alpha.minors(m.c).expect("c ≤ 2c + r")
}

/// All `c × c` minors of `β`, in lexicographic column-subset order.
pub fn beta_degeneracy_minors(m: &Monad) -> Vec<Poly> {
    m.beta.minors(m.c).expect("c ≤ 2c + r")
}

/// A projective linear subspace given by `x_a = Σ_b M[a][b]·s_b`.
///
/// The parameters `s_0, …, s_k` are carried by the variables `x0, …, xk`
/// after substitution.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinearSubspaceParam {
    matrix: Matrix,
}

impl LinearSubspaceParam {
    pub fn new(matrix: Matrix) -> Result<Self> {
        if matrix.rows() != 4 || matrix.cols() == 0 || matrix.cols() > 4 {
            return Err(Error::Dimension(format!(
                "parametrization must be 4xk with 1 ≤ k ≤ 4, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        if matrix.rank() != matrix.cols() {
            return Err(Error::Dimension("parametrization is not of full rank".into()));
        }
        Ok(LinearSubspaceParam { matrix })
    }

    /// The subspace cut out by the rows of `equations` (linear forms in `x0..x3`).
    pub fn from_equations(equations: &Matrix) -> Result<Self> {
        let kernel = equations.kernel();
        Self::new(kernel.basis().transpose())
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.cols() - 1
    }

    /// The point with parameters `s`.
    pub fn point(&self, s: &[Scalar]) -> Result<P3Point> {
        let v = self.matrix.mul_vec(s);
        P3Point::new([v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()])
    }

    fn images(&self) -> [Option<Poly>; NVARS] {
        let mut images: [Option<Poly>; NVARS] = Default::default();
        for (a, slot) in images.iter_mut().take(4).enumerate() {
            let terms: Vec<(Var, Scalar)> = (0..self.matrix.cols())
                .map(|b| (Var::PROJECTIVE[b], self.matrix[(a, b)].clone()))
                .collect();
            *slot = Some(Poly::linear(&terms));
        }
        images
    }

    pub fn pull_back(&self, p: &Poly) -> Poly {
        p.substitute(&self.images())
    }
}

pub fn vanishes_on(p: &Poly, l: &LinearSubspaceParam) -> bool {
    l.pull_back(p).is_zero()
}

/// Rank-drop points along a line `p(t) = p0 + t·p1`, with `[0:1]` standing for `p1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LineLocus {
    pub kind: LocusKind,
    pub parameters: Vec<P1Point>,
    pub points: Vec<P3Point>,
    /// Squarefree polynomial in `t` whose roots are the failing chart parameters.
    pub chart_polynomial: Option<Poly>,
    /// Factor of `chart_polynomial` without rational roots.
    pub unsplit_factor: Option<Poly>,
}

impl LineLocus {
    pub fn is_whole_line(&self) -> bool {
        self.kind == LocusKind::WholeLine
    }

    pub fn is_empty(&self) -> bool {
        self.kind == LocusKind::FiniteSet && self.points.is_empty() && self.unsplit_factor.is_none()
    }
}

/// A line through two distinct points of P³.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Line {
    pub p0: P3Point,
    pub p1: P3Point,
}

impl Line {
    pub fn new(p0: P3Point, p1: P3Point) -> Result<Self> {
        let m = Matrix::from_rows(vec![p0.coords.to_vec(), p1.coords.to_vec()], 4)?;
        if m.rank() < 2 {
            return Err(Error::CoincidentPoints);
        }
        Ok(Line { p0, p1 })
    }

    /// `l∞ = {x0 = x1 = 0}`.
    pub fn at_infinity() -> Self {
        Line {
            p0: P3Point::from_ints([0, 0, 1, 0]).expect("nonzero"),
            p1: P3Point::from_ints([0, 0, 0, 1]).expect("nonzero"),
        }
    }

    pub fn point(&self, param: &P1Point) -> P3Point {
        let coords = std::array::from_fn(|k| {
            &(&param.a * &self.p0.coords[k]) + &(&param.b * &self.p1.coords[k])
        });
        P3Point::new(coords).expect("distinct points span a line")
    }

    /// Substitutes `x_a = p0_a + t·p1_a` and reads entries as polynomials in `t`.
    pub fn restrict(&self, m: &PolyMatrix) -> Vec<Vec<UniPoly>> {
        let mut images: [Option<Poly>; NVARS] = Default::default();
        for (a, slot) in images.iter_mut().take(4).enumerate() {
            *slot = Some(Poly::linear(&[
                (Var::T, self.p1.coords[a].clone()),
            ]) + Poly::constant(self.p0.coords[a].clone()));
        }
        let s = m.substitute(&images);
        (0..s.rows())
            .map(|i| {
                (0..s.cols())
                    .map(|j| s[(i, j)].to_univariate(Var::T).expect("only t remains"))
                    .collect()
            })
            .collect()
    }
}

/// Points of `line` where the columns of `m` fail to span `k^rows`.
fn column_rank_drop(line: &Line, m: &PolyMatrix) -> LineLocus {
    let n = m.rows();
    let on_line = line.restrict(m);
    let columns: Vec<PolyColumn> = (0..m.cols())
        .map(|j| (0..n).map(|i| on_line[i][j].clone()).collect())
        .collect();
    let module = HermiteBasis::new(n, columns);
    let Some(det) = module.maximal_minor_gcd() else {
        return LineLocus {
            kind: LocusKind::WholeLine,
            parameters: Vec::new(),
            points: Vec::new(),
            chart_polynomial: None,
            unsplit_factor: None,
        };
    };
    let squarefree = det.squarefree();
    let (roots, rest) = squarefree.split_rational_roots();
    let mut parameters: Vec<P1Point> = roots
        .into_iter()
        .map(|t| P1Point::on_chart(Scalar::from_rational(t)))
        .collect();
    if m.eval(&line.p1.values()).rank() < n {
        parameters.push(P1Point::infinity());
    }
    LineLocus {
        kind: LocusKind::FiniteSet,
        points: parameters.iter().map(|p| line.point(p)).collect(),
        parameters,
        chart_polynomial: Some(Poly::from_univariate(&squarefree, Var::T)),
        unsplit_factor: (!rest.is_constant()).then(|| Poly::from_univariate(&rest, Var::T)),
    }
}

/// Points of `line` where `α(p)` is not injective.
pub fn alpha_locus_on_line(m: &Monad, line: &Line) -> LineLocus {
    column_rank_drop(line, &m.alpha.transpose())
}

/// Points of `line` where `β(p)` is not surjective.
pub fn beta_locus_on_line(m: &Monad, line: &Line) -> LineLocus {
    column_rank_drop(line, &m.beta)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LineRestriction {
    pub line: Line,
    pub alpha: PolyMatrix,
    pub beta: PolyMatrix,
    pub alpha_locus: LineLocus,
    pub beta_locus: LineLocus,
}

pub fn restriction_pencil(m: &Monad, p0: &P3Point, p1: &P3Point) -> Result<LineRestriction> {
    let line = Line::new(p0.clone(), p1.clone())?;
    let to_poly = |rows: Vec<Vec<UniPoly>>, n: usize, k: usize| {
        PolyMatrix::from_fn(n, k, |i, j| Poly::from_univariate(&rows[i][j], Var::T))
    };
    Ok(LineRestriction {
        alpha: to_poly(line.restrict(&m.alpha), m.alpha.rows(), m.alpha.cols()),
        beta: to_poly(line.restrict(&m.beta), m.beta.rows(), m.beta.cols()),
        alpha_locus: alpha_locus_on_line(m, &line),
        beta_locus: beta_locus_on_line(m, &line),
        line,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FramingReport {
    pub rank: usize,
    /// Monic gcd of the maximal minors of `α` along `l∞` on the chart `x2 = 1`.
    pub alpha_certificate: Poly,
    pub beta_certificate: Poly,
    /// The inclusion `W → W̃`, whose image is a complement of `im α(p)` in
    /// `ker β(p)` at every `p ∈ l∞`.
    pub w_inclusion: Matrix,
}

pub fn framing_on_linf(m: &Monad) -> Result<FramingReport> {
    let line = Line::at_infinity();
    let alpha = alpha_locus_on_line(m, &line);
    let beta = beta_locus_on_line(m, &line);
    for (name, locus) in [("alpha", &alpha), ("beta", &beta)] {
        if !locus.is_empty() {
            let at: Vec<String> = locus.points.iter().map(ToString::to_string).collect();
            return Err(Error::Framing(format!(
                "{name} drops rank on l∞ at {}",
                if locus.is_whole_line() { "every point".to_string() } else { at.join(", ") }
            )));
        }
    }
    let n = 2 * m.c + m.r;
    let w_inclusion = Matrix::from_fn(n, m.r, |a, b| {
        if a == 2 * m.c + b { Scalar::one() } else { Scalar::zero() }
    });
    for p in [line.p0.clone(), line.p1.clone(), line.point(&P1Point::on_chart(Scalar::one()))] {
        let fiber = eval_monad(m, &p);
        let ker_beta = fiber.beta.kernel();
        let both = Matrix::hstack(&[&fiber.alpha, &w_inclusion])?;
        let span = crate::subspace::Subspace::column_span(&both);
        if span != ker_beta || both.rank() != m.c + m.r {
            return Err(Error::Framing(format!("W is not a complement of im α in ker β at {p}")));
        }
    }
    Ok(FramingReport {
        rank: m.r,
        alpha_certificate: alpha.chart_polynomial.unwrap_or_else(Poly::one),
        beta_certificate: beta.chart_polynomial.unwrap_or_else(Poly::one),
        w_inclusion,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn gitvsfj_matrices_match_display() {
        let m = build_monad(&fixtures::gitvsfj()).unwrap();
        let rows = |pm: &PolyMatrix| -> Vec<String> {
            (0..pm.rows())
                .map(|i| {
                    (0..pm.cols()).map(|j| pm[(i, j)].to_string()).collect::<Vec<_>>().join(", ")
                })
                .collect()
        };
        assert_eq!(
            rows(&m.alpha),
            ["x0 + x2, x0", "x1, x1 + x2", "x0 + x3, -x0", "x1, -x1 + x3", "-2*x1, 2*x0"]
        );
        assert_eq!(
            rows(&m.beta),
            ["-x0 - x3, x0, x0 + x2, x0, x0", "-x1, x1 - x3, x1, x1 + x2, x1"]
        );
        assert_eq!(alpha_degeneracy_minors(&m).len(), 10);
    }

    #[test]
    fn identity_matches_moment() {
        assert_eq!(monad_identity_iff_moment(&fixtures::gitvsfj()), (true, true));
        let x = fixtures::gitvsfj();
        let mut b1 = x.b1().clone();
        b1.at_x0[(0, 0)] += &s(1);
        let y = AdhmDatum::new(2, 1, b1, x.b2().clone(), x.i().clone(), x.j().clone()).unwrap();
        assert_eq!(monad_identity_iff_moment(&y), (false, false));
        assert_eq!(build_monad(&y).unwrap_err(), Error::NotAdhm);
        let empty = build_monad(&AdhmDatum::zero(0, 2)).unwrap();
        assert_eq!((empty.alpha.rows(), empty.alpha.cols()), (2, 0));
        assert_eq!((empty.beta.rows(), empty.beta.cols()), (0, 2));
    }

    #[test]
    fn fibers_of_gitvsfj() {
        let m = build_monad(&fixtures::gitvsfj()).unwrap();
        let on_planes = eval_monad(&m, &P3Point::from_ints([1, 1, -2, 0]).unwrap());
        assert_eq!(on_planes.rank_alpha, 1);
        let on_line = eval_monad(&m, &P3Point::from_ints([1, 0, 0, 0]).unwrap());
        assert_eq!(on_line.rank_beta, 1);
        let generic = eval_monad(&m, &P3Point::from_ints([1, 2, 5, 7]).unwrap());
        assert_eq!((generic.rank_alpha, generic.rank_beta, generic.fiber_dim), (2, 2, Some(1)));
        assert_eq!(eval_monad(&m, &P3Point::from_ints([0, 0, 1, 0]).unwrap()).rank_beta, 2);
    }

    #[test]
    fn minors_vanish_on_plane_pair() {
        let m = build_monad(&fixtures::gitvsfj()).unwrap();
        let planes =
            LinearSubspaceParam::from_equations(&Matrix::from_ints(&[&[1, 1, 1, 0], &[1, -1, 0, 1]]))
                .unwrap();
        assert_eq!(planes.dim(), 1);
        let minors = alpha_degeneracy_minors(&m);
        assert!(minors.iter().all(|p| vanishes_on(p, &planes)));
        let witness = P3Point::from_ints([1, 0, 0, 0]).unwrap();
        assert!(minors.iter().any(|p| !p.eval(&witness.values()).is_zero()));
        assert!(vanishes_on(&Poly::zero(), &planes));
    }

    #[test]
    fn framing_holds_on_fixtures() {
        for x in [fixtures::gitvsfj(), fixtures::fj_counterexample(), AdhmDatum::zero(0, 3)] {
            let m = build_monad(&x).unwrap();
            let f = framing_on_linf(&m).unwrap();
            assert_eq!(f.rank, x.r());
            assert_eq!(f.alpha_certificate, Poly::one());
            assert_eq!(f.beta_certificate, Poly::one());
        }
    }

    #[test]
    fn beta_degenerates_along_x2_x3_line() {
        let m = build_monad(&fixtures::gitvsfj()).unwrap();
        let p0 = P3Point::from_ints([1, 0, 0, 0]).unwrap();
        let p1 = P3Point::from_ints([0, 1, 0, 0]).unwrap();
        let res = restriction_pencil(&m, &p0, &p1).unwrap();
        assert!(res.beta_locus.is_whole_line());
        let linf = restriction_pencil(&m, &Line::at_infinity().p0, &Line::at_infinity().p1).unwrap();
        assert!(linf.alpha_locus.is_empty() && linf.beta_locus.is_empty());
        assert_eq!(restriction_pencil(&m, &p0, &p0).unwrap_err(), Error::CoincidentPoints);
    }

    #[test]
    fn alpha_locus_on_a_line_through_the_planes() {
        // the line from [1:1:-2:0] to [0:0:1:0] meets the plane pair at t = 0 only
        let m = build_monad(&fixtures::gitvsfj()).unwrap();
        let p0 = P3Point::from_ints([1, 1, -2, 0]).unwrap();
        let p1 = P3Point::from_ints([0, 0, 1, 0]).unwrap();
        let res = restriction_pencil(&m, &p0, &p1).unwrap();
        assert_eq!(res.alpha_locus.parameters, vec![P1Point::on_chart(Scalar::zero())]);
        assert_eq!(res.alpha_locus.points, vec![p0]);
    }
}
