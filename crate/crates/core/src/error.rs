use core::fmt;

use crate::HalfInt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Clone, Debug, PartialEq)]
#[non_exhaustive]
pub enum Error {
    /// Matrix is not Hermitian; carries the largest `|a_pq - conj(a_qp)|`.
    NotHermitian { max_asymmetry: f64 },
    NotNormalized { norm: f64 },
    NotUnitary { deviation: f64 },
    InvalidDensity(&'static str),
    DimensionMismatch { expected: usize, found: usize },
    InvalidLayout(&'static str),
    NoConvergence { sweeps: usize, off_norm: f64 },
    FactorialCap { n: u32, cap: u32 },
    InvalidQuantumNumbers { j: HalfInt, m: HalfInt },
    SpinCap { j: HalfInt, cap: HalfInt },
    NegativeJacobiParameter { alpha: i64, beta: i64 },
    /// Both the detuning and the coupling vanish, so the mixing angle is undefined.
    DegenerateModes,
    UnsupportedSpin(HalfInt),
    SpaceTooLarge { dim: usize, cap: usize },
    /// Population reached the truncation boundary of an oracle space.
    Leakage { population: f64 },
    /// A conserved quantity drifted past its bound during integration.
    ResidualExceeded { residual: f64, bound: f64 },
    InvalidArgument(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotHermitian { max_asymmetry } => {
                write!(f, "matrix is not Hermitian (max asymmetry {max_asymmetry:e})")
            }
            Error::NotNormalized { norm } => write!(f, "state is not normalized (norm {norm})"),
            Error::NotUnitary { deviation } => {
                write!(f, "matrix is not unitary (max |U U^+ - I| = {deviation:e})")
            }
            Error::InvalidDensity(why) => write!(f, "invalid density matrix: {why}"),
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::InvalidLayout(why) => write!(f, "invalid bipartite layout: {why}"),
            Error::NoConvergence { sweeps, off_norm } => write!(
                f,
                "Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})"
            ),
            Error::FactorialCap { n, cap } => write!(f, "factorial argument {n} exceeds cap {cap}"),
            Error::InvalidQuantumNumbers { j, m } => {
                write!(f, "invalid angular momentum labels j = {j}, m = {m}")
            }
            Error::SpinCap { j, cap } => write!(f, "angular momentum {j} exceeds cap {cap}"),
            Error::NegativeJacobiParameter { alpha, beta } => {
                write!(f, "Jacobi parameters must be non-negative (alpha = {alpha}, beta = {beta})")
            }
            Error::DegenerateModes => {
                f.write_str("mixing angle undefined: equal frequencies and zero coupling")
            }
            Error::UnsupportedSpin(j) => write!(f, "no closed form available for j = {j}"),
            Error::SpaceTooLarge { dim, cap } => {
                write!(f, "truncated space of dimension {dim} exceeds cap {cap}")
            }
            Error::Leakage { population } => {
                write!(f, "population {population:e} reached the truncation boundary")
            }
            Error::ResidualExceeded { residual, bound } => {
                write!(f, "first-integral residual {residual:e} exceeds {bound:e}")
            }
            Error::InvalidArgument(why) => write!(f, "invalid argument: {why}"),
        }
    }
}

impl core::error::Error for Error {}
