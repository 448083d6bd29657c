//! Built-in worked examples with their reference data.
//!
//! Reference polynomial lists are written in lexicographic display form.

use crate::error::Result;
use crate::field::Rationals;
use crate::groebner::IdealGens;
use crate::monomial_curve::ToricFixture;
use crate::polyring::{Polynomial, RingExt, VariableSet};
use crate::schmitt_vogel::{SvFile, SvSystem};
use crate::scroll::BarredMatrix;

pub const EX1_MATRIX: &str = include_str!("../fixtures/ex1_matrix.json");
pub const EX3_LAYERS: &str = include_str!("../fixtures/ex3_layers.json");
pub const EX4_MATRIX: &str = include_str!("../fixtures/ex4_matrix.json");
pub const EX4_CURVE: &str = include_str!("../fixtures/ex4_curve.json");
pub const EX4PRIME_MATRIX: &str = include_str!("../fixtures/ex4prime_matrix.json");
pub const EX5_MATRIX: &str = include_str!("../fixtures/ex5_matrix.json");

/// Generators of `J` for the four-block matrix in `X1..X11`: the five
/// minors, then the 23 cross products.
pub const EX1_J: [&str; 28] = [
    "X3*X5 - X4^2",
    "X5*X7 - X6^2",
    "X6*X8 - X7^2",
    "X5*X8 - X6*X7",
    "X9*X11 - X10^2",
    "X1*X4",
    "X1*X5",
    "X1*X6",
    "X1*X7",
    "X1*X8",
    "X1*X10",
    "X1*X11",
    "X3*X6",
    "X3*X7",
    "X3*X8",
    "X3*X10",
    "X3*X11",
    "X4*X6",
    "X4*X7",
    "X4*X8",
    "X4*X10",
    "X4*X11",
    "X5*X10",
    "X5*X11",
    "X6*X10",
    "X6*X11",
    "X7*X10",
    "X7*X11",
];

/// The seven cutting polynomials for the same matrix, by name.
pub const EX1_SYSTEM: [(&str, &str); 7] = [
    ("F^2_1", "X3*X5 - X4^2"),
    ("F^3_1", "X5*X7 - X6^2"),
    ("F^3_2", "X5*X8^2 - 2*X6*X7*X8 + X7^3"),
    ("F^4_1", "X9*X11 - X10^2"),
    ("G_3", "X1*X11"),
    ("G_2", "X1*X8 + X3*X11"),
    ("G_1", "X1*X5 + X3*X8 + X5*X11"),
];

pub const EX4_J: [&str; 6] = ["T3*T5 - T4^2", "T1*T4", "T1*T5", "T1*T6", "T3*T6", "T4*T6"];

pub const EX4_SYSTEM: [(&str, &str); 3] = [
    ("F^2_1", "T3*T5 - T4^2"),
    ("G_2", "T1*T6"),
    ("G_1", "T1*T5 + T3*T6"),
];

pub const EX4PRIME_J: [&str; 3] = ["X1*X4 - X2*X3", "X1*X5", "X3*X5"];

/// `P_i = M * m_i + t_i` with `M` the minor of the first big block.
pub const EX4PRIME_MINOR: &str = "X1*X4 - X2*X3";
pub const EX4PRIME_P_PARTS: [(&str, &str); 2] = [("X2", "X1*X5"), ("X4", "X3*X5")];

/// Expanded forms of `P1`, `P2`.
pub const EX4PRIME_P: [&str; 2] = [
    "X1*X2*X4 - X2^2*X3 + X1*X5",
    "X1*X4^2 - X2*X3*X4 + X3*X5",
];

/// `lhs = c1*P1 + c2*P2`.
pub struct Certificate {
    pub lhs: &'static str,
    pub cofactors: [&'static str; 2],
}

pub const EX4PRIME_CERTIFICATES: [Certificate; 2] = [
    Certificate {
        lhs: "X1^2*X5^2",
        cofactors: ["X1*X5 - X1*X2*X4", "X1*X2^2"],
    },
    Certificate {
        lhs: "X3^2*X5^2",
        cofactors: ["-X3*X4^2", "X3*X5 + X2*X3*X4"],
    },
];

pub const EX5_J: [&str; 6] = [
    "X1*X4 - X2*X3",
    "X3*X6 - X4*X5",
    "X1*X6 - X2*X5",
    "X1*X7",
    "X3*X7",
    "X5*X7",
];

/// Five equations cutting out the zero set of [`EX5_J`].
pub const EX5_EQUATIONS: [&str; 5] = [
    "X1*X4 - X2*X3",
    "X3*X6 - X4*X5",
    "X1*X6 - X2*X5 + X3*X7",
    "X1*X7",
    "X5*X7",
];

pub fn ex1_matrix() -> BarredMatrix {
    BarredMatrix::from_json(EX1_MATRIX).expect("built-in fixture")
}

pub fn ex3_layers() -> SvSystem<Rationals> {
    SvFile::from_json(EX3_LAYERS)
        .and_then(|f| f.load())
        .expect("built-in fixture")
}

pub fn ex4_matrix() -> BarredMatrix {
    BarredMatrix::from_json(EX4_MATRIX).expect("built-in fixture")
}

pub fn ex4_curve() -> ToricFixture {
    ToricFixture::from_json(EX4_CURVE).expect("built-in fixture")
}

pub fn ex4prime_matrix() -> BarredMatrix {
    BarredMatrix::from_json(EX4PRIME_MATRIX).expect("built-in fixture")
}

pub fn ex5_matrix() -> BarredMatrix {
    BarredMatrix::from_json(EX5_MATRIX).expect("built-in fixture")
}

/// One scroll block of width `c` in `X1..X_{c+1}`.
pub fn scroll_block(c: usize) -> Result<BarredMatrix> {
    BarredMatrix::simple(VariableSet::indexed("X", c + 1)?, vec![(0..=c).collect()])
}

/// `P1`, `P2` assembled from [`EX4PRIME_MINOR`] and [`EX4PRIME_P_PARTS`].
pub fn ex4prime_p(m: &BarredMatrix) -> Result<IdealGens<Rationals>> {
    let r = m.ring();
    let minor = r.parse(EX4PRIME_MINOR)?;
    let polys = EX4PRIME_P_PARTS
        .iter()
        .map(|(mult, tail)| minor.try_mul(&r.parse(mult)?)?.try_add(&r.parse(tail)?))
        .collect::<Result<Vec<_>>>()?;
    IdealGens::new(r, "P", polys)
}

/// Parses a reference list into the matrix's ring.
pub fn parse_in(m: &BarredMatrix, label: &str, polys: &[&str]) -> Result<IdealGens<Rationals>> {
    IdealGens::parse(m.ring(), label, polys)
}

/// Parses `(name, text)` pairs into the matrix's ring.
pub fn parse_named(m: &BarredMatrix, polys: &[(&str, &str)]) -> Result<Vec<(String, Polynomial<Rationals>)>> {
    polys
        .iter()
        .map(|(n, s)| Ok((n.to_string(), m.ring().parse(s)?)))
        .collect()
}
