//! Built-in ADHM data used as regression fixtures.

use serde::Serialize;

use crate::adhm::{AdhmDatum, Pencil};
use crate::matrix::Matrix;
use crate::rank0::{lines_to_datum, psi, C2Params, Charge1Datum, LineConfig};
use crate::scalar::Scalar;

/// `c = 2, r = 1`: `B̃₁ = [[x0, x0], [x1, x1]]`, `B̃₂ = [[x0, −x0], [x1, −x1]]`,
/// `ĩ = [x0; x1]`, `j̃ = [−2x1, 2x0]`. Regular, yet unstable at every point.
pub fn gitvsfj() -> AdhmDatum {
    AdhmDatum::new(
        2,
        1,
        Pencil::from_ints(&[&[1, 1], &[0, 0]], &[&[0, 0], &[1, 1]]),
        Pencil::from_ints(&[&[1, -1], &[0, 0]], &[&[0, 0], &[1, -1]]),
        Pencil::from_ints(&[&[1], &[0]], &[&[0], &[1]]),
        Pencil::from_ints(&[&[0, 2]], &[&[-2, 0]]),
    )
    .expect("consistent shapes")
}

/// `B̃ = 0`, `j̃ = 0` and `ĩ` the `c × r` staircase with `x0` at `(k, k)` and
/// `x1` at `(k, k + 1)`. Requires `r ≥ c + 1`.
pub fn staircase(c: usize, r: usize) -> AdhmDatum {
    assert!(r > c, "staircase needs r > c");
    let i0 = Matrix::from_fn(c, r, |a, b| Scalar::from_int((a == b) as i64));
    let i1 = Matrix::from_fn(c, r, |a, b| Scalar::from_int((b == a + 1) as i64));
    AdhmDatum::new(
        c,
        r,
        Pencil::zeros(c, c),
        Pencil::zeros(c, c),
        Pencil::new(i0, i1).expect("same shape"),
        Pencil::zeros(r, c),
    )
    .expect("consistent shapes")
}

/// The `c = 3, r = 4` staircase: FJ-stable with a three-dimensional `ext²`.
pub fn fj_counterexample() -> AdhmDatum {
    staircase(3, 4)
}

/// `x = (1, 0)`, `y = (2, 0)`, `z = (0, 1)`, `w = (0, 1)`: stable, not FJ-stable,
/// with a surjective moment differential.
pub fn charge1_nonsingular() -> Charge1Datum {
    Charge1Datum::from_ints(&[1, 0], &[2, 0], &[0, 1], &[0, 1]).expect("equal lengths")
}

/// `i1, i2` dependent and `j = 0`: the moment differential has rank 2.
pub fn charge1_rank2() -> Charge1Datum {
    Charge1Datum::from_ints(&[1, 0], &[2, 0], &[0, 0], &[0, 0]).expect("equal lengths")
}

/// Parameters of an integer point on `Y2` for the `c = 2` family.
pub fn c2_point() -> C2Params {
    let rows = [[1, 1], [2, 2], [3, 2], [0, 5], [1, 0], [-1, 4]];
    rows.map(|r| r.map(Scalar::from_int))
}

/// The `c = 2`, `r = 0` datum at [`c2_point`].
pub fn c2_components() -> AdhmDatum {
    psi(&c2_point())
}

/// Two disjoint lines `{x2 = x3 = 0}` and `{x2 = x0, x3 = x1}`.
pub fn lines_demo_config() -> LineConfig {
    LineConfig::from_ints(&[[0, 0, 0, 0], [1, 0, 0, 1]])
}

pub fn lines_demo() -> AdhmDatum {
    lines_to_datum(&lines_demo_config())
}

/// Identifiers of the built-in data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FixtureId {
    #[serde(rename = "gitvsfj")]
    GitVsFj,
    #[serde(rename = "fj-counterexample")]
    FjCounterexample,
    #[serde(rename = "charge1-nonsingular")]
    Charge1Nonsingular,
    #[serde(rename = "charge1-rank2")]
    Charge1Rank2,
    #[serde(rename = "c2-components")]
    C2Components,
    #[serde(rename = "lines-demo")]
    LinesDemo,
}

impl FixtureId {
    pub const ALL: [FixtureId; 6] = [
        FixtureId::GitVsFj,
        FixtureId::FjCounterexample,
        FixtureId::Charge1Nonsingular,
        FixtureId::Charge1Rank2,
        FixtureId::C2Components,
        FixtureId::LinesDemo,
    ];

    pub fn id(self) -> &'static str {
        match self {
            FixtureId::GitVsFj => "gitvsfj",
            FixtureId::FjCounterexample => "fj-counterexample",
            FixtureId::Charge1Nonsingular => "charge1-nonsingular",
            FixtureId::Charge1Rank2 => "charge1-rank2",
            FixtureId::C2Components => "c2-components",
            FixtureId::LinesDemo => "lines-demo",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            FixtureId::GitVsFj => "c=2, r=1: regular but not FJ-semistable",
            FixtureId::FjCounterexample => "c=3, r=4: FJ-stable with ext^2 of dimension 3",
            FixtureId::Charge1Nonsingular => {
                "c=1, r=2: stable, not FJ-stable, nonsingular point of the moduli space"
            }
            FixtureId::Charge1Rank2 => "c=1, r=2: dependent i1, i2 and j=0, singular point",
            FixtureId::C2Components => "c=2, r=0: image of a point of Y2 in the rank-0 family",
            FixtureId::LinesDemo => "c=2, r=0: two disjoint lines missing l_inf",
        }
    }

    pub fn datum(self) -> AdhmDatum {
        match self {
            FixtureId::GitVsFj => gitvsfj(),
            FixtureId::FjCounterexample => fj_counterexample(),
            FixtureId::Charge1Nonsingular => charge1_nonsingular().to_datum(),
            FixtureId::Charge1Rank2 => charge1_rank2().to_datum(),
            FixtureId::C2Components => c2_components(),
            FixtureId::LinesDemo => lines_demo(),
        }
    }
}

impl std::str::FromStr for FixtureId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        FixtureId::ALL
            .into_iter()
            .find(|f| f.id() == s)
            .ok_or_else(|| {
                let ids: Vec<&str> = FixtureId::ALL.iter().map(|f| f.id()).collect();
                format!("unknown fixture {s:?}; expected one of {}", ids.join(", "))
            })
    }
}
