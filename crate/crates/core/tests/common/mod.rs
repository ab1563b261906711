#![allow(dead_code)]

pub mod checks;

use adhm_core::adhm::moment_components;
use adhm_core::deform::{flatten, tangent_dim, unflatten};
use adhm_core::rank0::{lines_to_datum, LineConfig};
use adhm_core::{AdhmDatum, GroupElement, Matrix, Pencil, Scalar};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const CASES: usize = 100;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small integers, with a Gaussian imaginary part one time in four.
pub fn scalar(rng: &mut impl Rng) -> Scalar {
    let re = Scalar::from_int(rng.gen_range(-2..=2));
    if rng.gen_ratio(1, 4) {
        &re + &(&Scalar::i() * &Scalar::from_int(rng.gen_range(-1..=1)))
    } else {
        re
    }
}

pub fn matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| scalar(rng))
}

pub fn pencil(rng: &mut impl Rng, rows: usize, cols: usize) -> Pencil {
    Pencil::new(matrix(rng, rows, cols), matrix(rng, rows, cols)).unwrap()
}

/// Any datum of the given shape; usually not ADHM.
pub fn raw_datum(rng: &mut impl Rng, c: usize, r: usize) -> AdhmDatum {
    AdhmDatum::new(c, r, pencil(rng, c, c), pencil(rng, c, c), pencil(rng, c, r), pencil(rng, r, c)).unwrap()
}

pub fn tangent(rng: &mut impl Rng, c: usize, r: usize) -> AdhmDatum {
    raw_datum(rng, c, r)
}

pub fn group_element(rng: &mut impl Rng, c: usize) -> GroupElement {
    loop {
        if let Ok(g) = GroupElement::new(matrix(rng, c, c)) {
            return g;
        }
    }
}

/// Random `(B̃₁, ĩ)`, then `(B̃₂, j̃)` drawn from the kernel of the linear map
/// `(B̃₂, j̃) ↦ μ̃`.
pub fn adhm_datum(rng: &mut impl Rng, c: usize, r: usize) -> AdhmDatum {
    let b1 = pencil(rng, c, c);
    let i = pencil(rng, c, r);
    let n = tangent_dim(c, r);
    let b2_start = 2 * c * c;
    let i_range = 4 * c * c..4 * c * c + 2 * c * r;
    let unknowns: Vec<usize> = (b2_start..n).filter(|k| !i_range.contains(k)).collect();
    let base = AdhmDatum::new(c, r, b1, Pencil::zeros(c, c), i, Pencil::zeros(r, c)).unwrap();
    let base_coords = flatten(&base);
    let columns: Vec<Vec<Scalar>> = unknowns
        .iter()
        .map(|&k| {
            let mut coords = base_coords.clone();
            coords[k] = Scalar::one();
            let m = moment_components(&unflatten(c, r, &coords).unwrap());
            m.iter().flat_map(|x| x.entries().to_vec()).collect()
        })
        .collect();
    let system = Matrix::from_rows(columns, 3 * c * c).unwrap().transpose();
    let kernel = system.kernel().basis_vectors();
    let mut coords = base_coords;
    for v in &kernel {
        let w = Scalar::from_int(rng.gen_range(-2..=2));
        for (slot, value) in unknowns.iter().zip(v) {
            coords[*slot] += &(&w * value);
        }
    }
    unflatten(c, r, &coords).unwrap()
}

/// Commuting pencils built from polynomials in one matrix, with `ĩ = 0` or `j̃ = 0`.
pub fn commuting_datum<R: Rng>(rng: &mut R, c: usize, r: usize, zero_i: bool) -> AdhmDatum {
    let m = matrix(rng, c, c);
    let poly_in_m = |rng: &mut R| &Matrix::identity(c).scale(&scalar(rng)) + &m.scale(&scalar(rng));
    let p = |rng: &mut R| Pencil::new(poly_in_m(rng), poly_in_m(rng)).unwrap();
    let (b1, b2) = (p(rng), p(rng));
    let (i, j) = if zero_i {
        (Pencil::zeros(c, r), pencil(rng, r, c))
    } else {
        (pencil(rng, c, r), Pencil::zeros(r, c))
    };
    AdhmDatum::new(c, r, b1, b2, i, j).unwrap()
}

pub fn line_config(rng: &mut impl Rng, c: usize) -> LineConfig {
    LineConfig::new((0..c).map(|_| std::array::from_fn(|_| scalar(rng))).collect())
}

pub fn lines_datum(rng: &mut impl Rng, c: usize) -> AdhmDatum {
    lines_to_datum(&line_config(rng, c))
}

/// Charge and rank small enough for exact arithmetic to stay fast.
pub fn shape(rng: &mut impl Rng) -> (usize, usize) {
    (rng.gen_range(1..=3), rng.gen_range(1..=2))
}

/// A mix of the generators above, always ADHM.
pub fn any_adhm(rng: &mut impl Rng) -> AdhmDatum {
    let (c, r) = shape(rng);
    match rng.gen_range(0..5) {
        0 | 1 => adhm_datum(rng, c, r),
        2 => {
            let zero_i = rng.gen();
            commuting_datum(rng, c, r, zero_i)
        }
        3 => lines_datum(rng, c),
        _ => {
            let c1 = rng.gen_range(1..=2);
            adhm_datum(rng, c1, r).direct_sum(&lines_datum(rng, 1))
        }
    }
}

pub fn conjugate(rng: &mut impl Rng, x: &AdhmDatum) -> AdhmDatum {
    let g = group_element(rng, x.c());
    adhm_core::adhm::act(&g, x).unwrap()
}
