use alloc::vec;
use alloc::vec::Vec;

use num_traits::Float;

use crate::algebra::HermitianMatrix;
use crate::{Error, HalfInt, Result};

/// One excitation block of the resonant linear-oscillator / spin Hamiltonian.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct BlockSpec {
    n1: u32,
    j: HalfInt,
    kappa: f64,
    omega: f64,
}

impl BlockSpec {
    /// `n1` is the photon number of the topmost basis state `|n1, j>`.
    pub fn new(n1: u32, j: HalfInt, kappa: f64, omega: f64) -> Result<Self> {
        if j.twice() < 1 {
            return Err(Error::UnsupportedSpin(j));
        }
        if !(kappa.is_finite() && kappa >= 0.0) {
            return Err(Error::InvalidArgument("kappa must be finite and non-negative"));
        }
        if !(omega.is_finite() && omega >= 0.0) {
            return Err(Error::InvalidArgument("omega must be finite and non-negative"));
        }
        Ok(BlockSpec { n1, j, kappa, omega })
    }

    pub fn n1(&self) -> u32 {
        self.n1
    }

    pub fn j(&self) -> HalfInt {
        self.j
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    /// Block dimension `2j + 1`.
    pub fn dim(&self) -> usize {
        (self.j.twice() + 1) as usize
    }

    /// Conserved `n1 + J_z`, identical for every basis state.
    pub fn energy_label(&self) -> HalfInt {
        HalfInt::integer(self.n1 as i32) + self.j
    }

    /// The common diagonal entry `omega (n1 + j + 1/2)`.
    pub fn diagonal_energy(&self) -> f64 {
        self.omega * (f64::from(self.n1) + self.j.to_f64() + 0.5)
    }

    pub fn basis(&self) -> BlockBasis {
        let n = self.dim() as u32;
        let labels = (0..n)
            .map(|p| (self.n1 + n - 1 - p, HalfInt::from_twice(2 * p as i32) - self.j))
            .collect();
        BlockBasis { labels }
    }

    /// Index of the initial state `|n1, j>`.
    pub fn top_index(&self) -> usize {
        self.dim() - 1
    }
}

/// Ordered `(photons, m)` labels, `p = 0` holding the most photons and `m = -j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockBasis {
    labels: Vec<(u32, HalfInt)>,
}

impl BlockBasis {
    pub fn labels(&self) -> &[(u32, HalfInt)] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn position(&self, photons: u32, m: HalfInt) -> Option<usize> {
        self.labels.iter().position(|&l| l == (photons, m))
    }
}

/// Off-diagonal element `<b_p|H|b_{p+1}>`.
pub(crate) fn hop(spec: &BlockSpec, p: usize) -> f64 {
    let n = spec.dim() as f64;
    let j = spec.j.to_f64();
    let m = -j + p as f64;
    let photons = f64::from(spec.n1) + n - 1.0 - p as f64;
    spec.kappa * photons.sqrt() * ((j - m) * (j + m + 1.0) / 2.0).sqrt()
}

/// Real symmetric tridiagonal block Hamiltonian.
pub fn build_block(spec: &BlockSpec) -> HermitianMatrix {
    let diag = spec.diagonal_energy();
    HermitianMatrix::from_real_upper(spec.dim(), |r, c| {
        if r == c {
            diag
        } else if c == r + 1 {
            hop(spec, r)
        } else {
            0.0
        }
    })
    .expect("block dimension is at least two")
}

/// Eigenvalues ascending; eigenvectors (as columns, in the block basis) for `j <= 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct ClosedFormSpectrum {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Option<Vec<Vec<f64>>>,
}

/// Closed-form spectrum for `j` in `{1/2, 1, 3/2}`.
pub fn closed_form_spectrum(spec: &BlockSpec) -> Result<ClosedFormSpectrum> {
    let e0 = spec.diagonal_energy();
    let k = spec.kappa;
    let n1 = f64::from(spec.n1);
    match spec.j.twice() {
        1 => {
            let b = k * (n1 + 1.0).sqrt() / 2f64.sqrt();
            let r = 1.0 / 2f64.sqrt();
            Ok(ClosedFormSpectrum {
                eigenvalues: vec![e0 - b, e0 + b],
                eigenvectors: Some(vec![vec![r, -r], vec![r, r]]),
            })
        }
        2 => {
            let beta = (2.0 * n1 + 3.0).sqrt();
            let (a, c) = ((n1 + 2.0).sqrt(), (n1 + 1.0).sqrt());
            let norm = 1.0 / (2f64.sqrt() * beta);
            Ok(ClosedFormSpectrum {
                eigenvalues: vec![e0 - k * beta, e0, e0 + k * beta],
                eigenvectors: Some(vec![
                    vec![a * norm, -beta * norm, c * norm],
                    vec![-c / beta, 0.0, a / beta],
                    vec![a * norm, beta * norm, c * norm],
                ]),
            })
        }
        3 => {
            let theta1 = 20.0 + 10.0 * n1;
            let theta2 = 2.0 * (73.0 + 64.0 * n1 + 16.0 * n1 * n1).sqrt();
            let outer = 0.5 * k * (theta1 + theta2).sqrt();
            let inner = 0.5 * k * (theta1 - theta2).sqrt();
            Ok(ClosedFormSpectrum {
                eigenvalues: vec![e0 - outer, e0 - inner, e0 + inner, e0 + outer],
                eigenvectors: None,
            })
        }
        _ => Err(Error::UnsupportedSpin(spec.j)),
    }
}

/// Spectrum of the large-`n1` approximation `(n1 + 3/2) omega + sqrt(2(n1 + 2)) kappa J_x` for `j = 1`.
pub fn approximate_spectrum_j1(n1: u32, kappa: f64, omega: f64) -> [f64; 3] {
    let e0 = omega * (f64::from(n1) + 1.5);
    let b = kappa * (2.0 * (f64::from(n1) + 2.0)).sqrt();
    [e0 - b, e0, e0 + b]
}

/// Half-splittings `beta_m` (in units of `kappa`) of the paired eigenvalues,
/// ordered by descending magnitude; the zero offset of odd dimensions is dropped.
pub fn pair_splittings(spec: &BlockSpec, eigenvalues: &[f64]) -> Vec<f64> {
    let e0 = spec.diagonal_energy();
    let mut offsets: Vec<f64> = eigenvalues.iter().map(|e| e - e0).filter(|d| *d > 0.0).collect();
    offsets.sort_by(|a, b| b.partial_cmp(a).expect("finite eigenvalues"));
    let n = spec.dim();
    offsets.truncate(n / 2);
    if spec.kappa > 0.0 {
        offsets.iter_mut().for_each(|o| *o /= spec.kappa);
    }
    offsets
}
