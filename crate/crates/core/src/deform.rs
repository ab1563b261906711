//! The deformation complex `End(V) → T → End(V)⊗H⁰(O(2))` at an ADHM datum and
//! the hypersymplectic structure on the space of data.
//!
//! Tangent vectors have the shape of a datum and are stored as [`AdhmDatum`]
//! values. They are flattened in the block order
//! `B10, B11, B20, B21, i0, i1, j0, j1`, each block row-major; the target of
//! `d1` is flattened as `(x0², x0x1, x1²)` coefficient blocks.

use serde::Serialize;

use crate::adhm::{is_adhm, is_stable, moment_pairing, AdhmDatum, Pencil};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

pub fn tangent_dim(c: usize, r: usize) -> usize {
    4 * c * c + 4 * r * c
}

fn blocks(v: &AdhmDatum) -> [&Matrix; 8] {
    [
        &v.b1().at_x0,
        &v.b1().at_x1,
        &v.b2().at_x0,
        &v.b2().at_x1,
        &v.i().at_x0,
        &v.i().at_x1,
        &v.j().at_x0,
        &v.j().at_x1,
    ]
}

pub fn flatten(v: &AdhmDatum) -> Vec<Scalar> {
    blocks(v)
        .iter()
        .flat_map(|m| m.entries().iter().cloned())
        .collect()
}

pub fn unflatten(c: usize, r: usize, coords: &[Scalar]) -> Result<AdhmDatum> {
    if coords.len() != tangent_dim(c, r) {
        return Err(Error::Dimension(format!(
            "tangent vector has {} coordinates, expected {}",
            coords.len(),
            tangent_dim(c, r)
        )));
    }
    let shapes = [(c, c), (c, c), (c, c), (c, c), (c, r), (c, r), (r, c), (r, c)];
    let mut rest = coords;
    let mut ms = Vec::with_capacity(8);
    for (rows, cols) in shapes {
        let (head, tail) = rest.split_at(rows * cols);
        ms.push(Matrix::from_fn(rows, cols, |a, b| head[a * cols + b].clone()));
        rest = tail;
    }
    let mut it = ms.into_iter();
    let mut pencil = || Pencil::new(it.next().unwrap(), it.next().unwrap()).expect("same shape");
    let (b1, b2, i, j) = (pencil(), pencil(), pencil(), pencil());
    AdhmDatum::new(c, r, b1, b2, i, j)
}

fn elementary(n: usize, k: usize) -> Matrix {
    Matrix::from_fn(n, n, |a, b| {
        if a * n + b == k { Scalar::one() } else { Scalar::zero() }
    })
}

fn flatten_components(ms: &[Matrix; 3]) -> Vec<Scalar> {
    ms.iter().flat_map(|m| m.entries().iter().cloned()).collect()
}

/// `ξ_x = ([ξ, B̃₁], [ξ, B̃₂], ξĩ, −j̃ξ)`, the infinitesimal action of `ξ ∈ End(V)`.
pub fn infinitesimal_action(x: &AdhmDatum, xi: &Matrix) -> AdhmDatum {
    let comm = |p: &Pencil| p.map(|b| xi.commutator(b));
    AdhmDatum::new(
        x.c(),
        x.r(),
        comm(x.b1()),
        comm(x.b2()),
        x.i().map(|i| xi * i),
        x.j().map(|j| -&(j * xi)),
    )
    .expect("same shapes")
}

/// `dμ̃_x(v)` as the three coefficient matrices: `P(x, v) + P(v, x)` for the
/// bilinear form `P` with `μ̃(x) = P(x, x)`.
pub fn moment_differential(x: &AdhmDatum, v: &AdhmDatum) -> [Matrix; 3] {
    let a = moment_pairing(x, v);
    let b = moment_pairing(v, x);
    std::array::from_fn(|k| &a[k] + &b[k])
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeformationComplex {
    pub c: usize,
    pub r: usize,
    pub d0: Matrix,
    pub d1: Matrix,
}

/// The two differentials as matrices, without checking the ADHM equation.
pub fn assemble_complex(x: &AdhmDatum) -> DeformationComplex {
    let (c, r) = (x.c(), x.r());
    let n = tangent_dim(c, r);
    let d0_cols: Vec<Vec<Scalar>> = (0..c * c)
        .map(|k| flatten(&infinitesimal_action(x, &elementary(c, k))))
        .collect();
    let d1_cols: Vec<Vec<Scalar>> = (0..n)
        .map(|k| {
            let mut e = vec![Scalar::zero(); n];
            e[k] = Scalar::one();
            let v = unflatten(c, r, &e).expect("tangent dimension");
            flatten_components(&moment_differential(x, &v))
        })
        .collect();
    DeformationComplex {
        c,
        r,
        d0: Matrix::from_rows(d0_cols, n).expect("tangent dimension").transpose(),
        d1: Matrix::from_rows(d1_cols, 3 * c * c).expect("target dimension").transpose(),
    }
}

pub fn deformation_complex(x: &AdhmDatum) -> Result<DeformationComplex> {
    if !is_adhm(x) {
        return Err(Error::NotAdhm);
    }
    Ok(assemble_complex(x))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeformationReport {
    pub h0: usize,
    pub h1: usize,
    pub h2: usize,
    pub rank_d0: usize,
    pub rank_dmu: usize,
    pub smooth_point: bool,
    pub expected_dim: usize,
}

impl DeformationReport {
    /// `h0 − h1 + h2`
    pub fn euler_characteristic(&self) -> i64 {
        self.h0 as i64 - self.h1 as i64 + self.h2 as i64
    }
}

pub fn cohomology_dims(x: &AdhmDatum) -> Result<DeformationReport> {
    let k = deformation_complex(x)?;
    let (c, r) = (x.c(), x.r());
    let rank_d0 = k.d0.rank();
    let rank_dmu = k.d1.rank();
    let h2 = 3 * c * c - rank_dmu;
    Ok(DeformationReport {
        h0: c * c - rank_d0,
        h1: tangent_dim(c, r) - rank_dmu - rank_d0,
        h2,
        rank_d0,
        rank_dmu,
        smooth_point: h2 == 0 && is_stable(x),
        expected_dim: 4 * r * c,
    })
}

/// The hypersymplectic structure: a tangent vector splits into the `x0` slot
/// `v1 = (B10, B20, i0, j0)` and the `x1` slot `v2 = (B11, B21, i1, j1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Quaternion {
    I,
    J,
    K,
}

impl Quaternion {
    pub const ALL: [Quaternion; 3] = [Quaternion::I, Quaternion::J, Quaternion::K];

    /// `I(v1, v2) = (√−1·v1, −√−1·v2)`, `J(v1, v2) = (v2, −v1)`,
    /// `K(v1, v2) = (√−1·v2, √−1·v1)`.
    pub fn apply(self, v: &AdhmDatum) -> AdhmDatum {
        let i = Scalar::i();
        let neg_i = -&i;
        let minus_one = -&Scalar::one();
        let (s1, s2, swap) = match self {
            Quaternion::I => (&i, &neg_i, false),
            Quaternion::J => (&Scalar::one(), &minus_one, true),
            Quaternion::K => (&i, &i, true),
        };
        let slot = |p: &Pencil| {
            let (first, second) = if swap { (&p.at_x1, &p.at_x0) } else { (&p.at_x0, &p.at_x1) };
            Pencil::new(first.scale(s1), second.scale(s2)).expect("same shape")
        };
        AdhmDatum::new(v.c(), v.r(), slot(v.b1()), slot(v.b2()), slot(v.i()), slot(v.j()))
            .expect("same shapes")
    }
}

/// `Tr(a_B1·b_B2 − a_B2·b_B1 + a_i·b_j − a_j·b_i)` for slot data `(B1, B2, i, j)`.
fn slot_pairing(a: [&Matrix; 4], b: [&Matrix; 4]) -> Scalar {
    let [ab1, ab2, ai, aj] = a;
    let [bb1, bb2, bi, bj] = b;
    &(&(&(ab1 * bb2) - &(ab2 * bb1)) + &(ai * bj)).trace() - &(aj * bi).trace()
}

fn slot(v: &AdhmDatum, k: usize) -> [&Matrix; 4] {
    if k == 0 {
        [&v.b1().at_x0, &v.b2().at_x0, &v.i().at_x0, &v.j().at_x0]
    } else {
        [&v.b1().at_x1, &v.b2().at_x1, &v.i().at_x1, &v.j().at_x1]
    }
}

/// The symmetric form `g(v, w) = P(v1, w2) − P(v2, w1)`.
pub fn metric(v: &AdhmDatum, w: &AdhmDatum) -> Scalar {
    &slot_pairing(slot(v, 0), slot(w, 1)) - &slot_pairing(slot(v, 1), slot(w, 0))
}

/// `ω_L(a, b) = g(L·a, b)`.
pub fn symplectic_form(l: Quaternion, a: &AdhmDatum, b: &AdhmDatum) -> Scalar {
    metric(&l.apply(a), b)
}

/// `(μ̃1, μ̃2, μ̃3) = (√−1·μ2, μ1 + μ3, √−1·(μ3 − μ1))` from `(μ1, μ2, μ3)`.
pub fn hypersymplectic_components(mu: &[Matrix; 3]) -> [Matrix; 3] {
    let i = Scalar::i();
    [
        mu[1].scale(&i),
        &mu[0] + &mu[2],
        (&mu[2] - &mu[0]).scale(&i),
    ]
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HypersymplecticCheck {
    pub g_vw: Scalar,
    pub g_symmetric: bool,
    /// `g(Lv, Lw) = g(v, w)` for `L = I, J, K`.
    pub invariant: [bool; 3],
    /// `I² = J² = K² = IJK = −1` on `v` and `w`.
    pub quaternion_relations: bool,
    /// `ω_L(ξ_x, v) = Tr(ξ·dμ̃_L(v))` for `L = I, J, K`.
    pub moment_identity: [bool; 3],
}

impl HypersymplecticCheck {
    pub fn all_pass(&self) -> bool {
        self.g_symmetric
            && self.invariant.iter().all(|&b| b)
            && self.quaternion_relations
            && self.moment_identity.iter().all(|&b| b)
    }
}

fn negate(v: &AdhmDatum) -> AdhmDatum {
    let coords: Vec<Scalar> = flatten(v).iter().map(|s| -s).collect();
    unflatten(v.c(), v.r(), &coords).expect("same shape")
}

pub fn hypersymplectic_check(
    x: &AdhmDatum,
    v: &AdhmDatum,
    w: &AdhmDatum,
    xi: &Matrix,
) -> Result<HypersymplecticCheck> {
    let shape = (x.c(), x.r());
    if (v.c(), v.r()) != shape || (w.c(), w.r()) != shape {
        return Err(Error::Dimension("tangent vectors do not match the datum".into()));
    }
    if (xi.rows(), xi.cols()) != (x.c(), x.c()) {
        return Err(Error::Dimension(format!(
            "ξ is {}x{}, expected {}x{}",
            xi.rows(),
            xi.cols(),
            x.c(),
            x.c()
        )));
    }
    use Quaternion::{I, J, K};
    let g_vw = metric(v, w);
    let invariant = Quaternion::ALL.map(|l| metric(&l.apply(v), &l.apply(w)) == g_vw);
    let quaternion_relations = [v, w].iter().all(|u| {
        let minus = negate(u);
        I.apply(&I.apply(u)) == minus
            && J.apply(&J.apply(u)) == minus
            && K.apply(&K.apply(u)) == minus
            && I.apply(&J.apply(&K.apply(u))) == minus
    });
    let xi_x = infinitesimal_action(x, xi);
    let dmu = hypersymplectic_components(&moment_differential(x, v));
    let moment_identity: [bool; 3] = std::array::from_fn(|k| {
        symplectic_form(Quaternion::ALL[k], &xi_x, v) == (xi * &dmu[k]).trace()
    });
    Ok(HypersymplecticCheck {
        g_symmetric: metric(w, v) == g_vw,
        g_vw,
        invariant,
        quaternion_relations,
        moment_identity,
    })
}

/// Whether `(ξ1, ξ2, ξ3) ↦ ξ1_x + I·ξ2_x + J·ξ3_x` is injective on `End(V)³`.
pub fn surjectivity_criterion(x: &AdhmDatum) -> Result<bool> {
    if !is_stable(x) {
        return Err(Error::NotStable);
    }
    let c = x.c();
    let n = tangent_dim(c, x.r());
    let mut columns: Vec<Vec<Scalar>> = Vec::with_capacity(3 * c * c);
    for twist in [None, Some(Quaternion::I), Some(Quaternion::J)] {
        for k in 0..c * c {
            let xi_x = infinitesimal_action(x, &elementary(c, k));
            let image = match twist {
                None => xi_x,
                Some(l) => l.apply(&xi_x),
            };
            columns.push(flatten(&image));
        }
    }
    let m = Matrix::from_rows(columns, n)?;
    Ok(m.rank() == 3 * c * c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn counterexample_cohomology() {
        let x = fixtures::fj_counterexample();
        let rep = cohomology_dims(&x).unwrap();
        assert_eq!((rep.h0, rep.h1, rep.h2), (0, 51, 3));
        assert!(!rep.smooth_point);
        assert_eq!(rep.euler_characteristic(), -48);
        assert!(!surjectivity_criterion(&x).unwrap());
    }

    #[test]
    fn zero_datum_has_full_stabilizer() {
        let rep = cohomology_dims(&AdhmDatum::zero(1, 1)).unwrap();
        assert_eq!(rep.h0, 1);
        assert_eq!(rep.euler_characteristic(), -4);
        assert_eq!(surjectivity_criterion(&AdhmDatum::zero(1, 1)), Err(Error::NotStable));
    }

    #[test]
    fn gitvsfj_paths_agree() {
        let x = fixtures::gitvsfj();
        let k = deformation_complex(&x).unwrap();
        assert_eq!(k.d0.rank(), 4);
        assert!((&k.d1 * &k.d0).is_zero());
        let rep = cohomology_dims(&x).unwrap();
        assert_eq!(rep.h0, 0);
        assert_eq!(surjectivity_criterion(&x).unwrap(), rep.h2 == 0);
    }

    #[test]
    fn flatten_round_trip() {
        let x = fixtures::gitvsfj();
        assert_eq!(unflatten(2, 1, &flatten(&x)).unwrap(), x);
        assert!(unflatten(2, 1, &[]).is_err());
    }

    #[test]
    fn structure_identities_on_fixture() {
        let x = fixtures::gitvsfj();
        let n = tangent_dim(2, 1);
        let v = unflatten(2, 1, &(0..n as i64).map(Scalar::from_int).collect::<Vec<_>>()).unwrap();
        let w = unflatten(2, 1, &(0..n as i64).map(|k| Scalar::from_int(k * k - 7)).collect::<Vec<_>>())
            .unwrap();
        let xi = Matrix::from_ints(&[&[1, 2], &[3, 4]]);
        let check = hypersymplectic_check(&x, &v, &w, &xi).unwrap();
        assert!(check.all_pass(), "{check:?}");
        let zero = AdhmDatum::zero(2, 1);
        let check = hypersymplectic_check(&x, &zero, &zero, &xi).unwrap();
        assert!(check.all_pass() && check.g_vw.is_zero());
    }
}
