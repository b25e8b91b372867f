//! Generators of SU(n) in the defining representation, expansion of
//! propagators on them, and periodicity by commensurability of splittings.

use core::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;

use crate::algebra::{eig_hermitian, CMatrix, HermitianMatrix};
use crate::spin_boson::{build_block, BlockSpec};
use crate::{Error, HalfInt, Result, C64};

/// One-based generator labels.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum GeneratorLabel {
    U(usize, usize),
    V(usize, usize),
    W(usize),
}

/// The `n^2 - 1` generators ordered `u_kl`, then `v_kl` (pairs `(1,2), (1,3), (2,3), (1,4), ...`), then `w_m`.
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    n: usize,
    labels: Vec<GeneratorLabel>,
    lambdas: Vec<HermitianMatrix>,
}

impl GeneratorSet {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.lambdas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lambdas.is_empty()
    }

    pub fn lambdas(&self) -> &[HermitianMatrix] {
        &self.lambdas
    }

    pub fn labels(&self) -> &[GeneratorLabel] {
        &self.labels
    }

    pub fn get(&self, label: GeneratorLabel) -> Option<&HermitianMatrix> {
        self.labels.iter().position(|&l| l == label).map(|p| &self.lambdas[p])
    }
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (2..=n).flat_map(|l| (1..l).map(move |k| (k, l)))
}

pub fn generators(n: usize) -> Result<GeneratorSet> {
    if n < 2 {
        return Err(Error::InvalidArgument("SU(n) needs n >= 2"));
    }
    let zero = C64::new(0.0, 0.0);
    let mut labels = Vec::with_capacity(n * n - 1);
    let mut lambdas = Vec::with_capacity(n * n - 1);
    for (k, l) in pairs(n) {
        labels.push(GeneratorLabel::U(k, l));
        lambdas.push(CMatrix::from_fn(n, |r, c| {
            if (r + 1, c + 1) == (k, l) || (r + 1, c + 1) == (l, k) {
                C64::new(1.0, 0.0)
            } else {
                zero
            }
        }));
    }
    for (k, l) in pairs(n) {
        labels.push(GeneratorLabel::V(k, l));
        lambdas.push(CMatrix::from_fn(n, |r, c| match (r + 1, c + 1) {
            (a, b) if (a, b) == (k, l) => C64::new(0.0, 1.0),
            (a, b) if (a, b) == (l, k) => C64::new(0.0, -1.0),
            _ => zero,
        }));
    }
    for m in 1..n {
        labels.push(GeneratorLabel::W(m));
        let scale = -(2.0 / (m * (m + 1)) as f64).sqrt();
        lambdas.push(CMatrix::from_fn(n, |r, c| {
            if r != c {
                zero
            } else if r < m {
                C64::new(scale, 0.0)
            } else if r == m {
                C64::new(-scale * m as f64, 0.0)
            } else {
                zero
            }
        }));
    }
    let lambdas = lambdas.into_iter().map(HermitianMatrix::new).collect::<Result<Vec<_>>>()?;
    Ok(GeneratorSet { n, labels, lambdas })
}

/// `U = identity_coeff I + sum_p coeffs_p lambda_p`.
#[derive(Clone, Debug, PartialEq)]
pub struct PropagatorDecomposition {
    pub identity_coeff: C64,
    pub coeffs: Vec<C64>,
}

impl PropagatorDecomposition {
    pub fn reconstruct(&self, gens: &GeneratorSet) -> CMatrix {
        let mut out = CMatrix::identity(gens.n).scale(self.identity_coeff);
        for (c, l) in self.coeffs.iter().zip(gens.lambdas()) {
            out = out.add(&l.matrix().scale(*c));
        }
        out
    }

    /// Largest `|coeffs_p|`; zero exactly when `U` is a multiple of the identity.
    pub fn max_generator_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

/// Expansion with `identity_coeff = Tr U / n` and `coeffs_p = Tr(U lambda_p) / 2`.
pub fn decompose_unitary(u: &CMatrix, gens: &GeneratorSet) -> Result<PropagatorDecomposition> {
    decompose_checked(u, gens, true)
}

/// Same expansion for any square matrix of matching dimension.
pub fn decompose_matrix(m: &CMatrix, gens: &GeneratorSet) -> Result<PropagatorDecomposition> {
    decompose_checked(m, gens, false)
}

fn decompose_checked(u: &CMatrix, gens: &GeneratorSet, unitary: bool) -> Result<PropagatorDecomposition> {
    if u.dim() != gens.n {
        return Err(Error::DimensionMismatch { expected: gens.n, found: u.dim() });
    }
    if unitary {
        let deviation = u.unitarity_deviation();
        if !(deviation <= 1e-10) {
            return Err(Error::NotUnitary { deviation });
        }
    }
    let identity_coeff = u.trace() / gens.n as f64;
    let coeffs = gens.lambdas().iter().map(|l| u.matmul(l.matrix()).trace() * 0.5).collect();
    Ok(PropagatorDecomposition { identity_coeff, coeffs })
}

/// Default denominator bound for rational ratio detection.
pub const DEFAULT_MAX_DENOMINATOR: u64 = 1_000_000;

/// Threshold on `|q r - p|` for accepting a ratio as `p / q`.
pub const RATIO_RESIDUAL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub enum Commensurability {
    /// Every `beta_m T` is a multiple of `2 pi`; ratios `beta_m / beta_1 = p / q`.
    Commensurable { period: f64, ratios: Vec<(u64, u64)> },
    /// Some ratio has no rational form with denominator up to the bound.
    Incommensurable { max_denominator: u64 },
}

impl Commensurability {
    pub fn period(&self) -> Option<f64> {
        match self {
            Commensurability::Commensurable { period, .. } => Some(*period),
            Commensurability::Incommensurable { .. } => None,
        }
    }
}

/// Continued-fraction search for `p / q ~ r` with `|q r - p| < RATIO_RESIDUAL`, `q <= max_den`.
pub fn rational_ratio(r: f64, max_den: u64) -> Option<(u64, u64)> {
    if !(r.is_finite() && r > 0.0) {
        return None;
    }
    let (mut p0, mut q0, mut p1, mut q1) = (0u64, 1u64, 1u64, 0u64);
    let mut x = r;
    loop {
        let a = x.floor();
        if a > 1e18 {
            return None;
        }
        let a = a as u64;
        let p2 = a.checked_mul(p1)?.checked_add(p0)?;
        let q2 = a.checked_mul(q1)?.checked_add(q0)?;
        if q2 > max_den {
            return None;
        }
        if (q2 as f64 * r - p2 as f64).abs() < RATIO_RESIDUAL {
            return Some((p2, q2));
        }
        let frac = x - a as f64;
        if frac <= 0.0 {
            return None;
        }
        x = 1.0 / frac;
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Classify positive angular rates `betas` by their ratios to `betas[0]`.
pub fn commensurability(betas: &[f64], max_denominator: u64) -> Result<Commensurability> {
    if betas.is_empty() || betas.iter().any(|b| !(b.is_finite() && *b > 0.0)) {
        return Err(Error::InvalidArgument("rates must be a non-empty list of positive numbers"));
    }
    let mut ratios = Vec::with_capacity(betas.len());
    let mut lcm = 1u64;
    for &b in betas {
        match rational_ratio(b / betas[0], max_denominator) {
            Some((p, q)) => {
                ratios.push((p, q));
                lcm = match (lcm / gcd(lcm, q)).checked_mul(q) {
                    Some(v) => v,
                    None => return Ok(Commensurability::Incommensurable { max_denominator }),
                };
            }
            None => return Ok(Commensurability::Incommensurable { max_denominator }),
        }
    }
    Ok(Commensurability::Commensurable { period: 2.0 * PI * lcm as f64 / betas[0], ratios })
}

/// Smallest `T` with `exp(-i H T)` proportional to the identity, from the
/// eigenvalue gaps `E_p - E_0`; `None` when the gaps are incommensurable.
pub fn spectrum_period(eigenvalues: &[f64], max_denominator: u64) -> Result<Option<f64>> {
    let scale = eigenvalues.iter().map(|e| e.abs()).fold(1.0, f64::max);
    let base = eigenvalues.first().ok_or(Error::InvalidArgument("empty spectrum"))?;
    let gaps: Vec<f64> = eigenvalues
        .iter()
        .map(|e| (e - base).abs())
        .filter(|g| *g > 1e-12 * scale)
        .collect();
    if gaps.is_empty() {
        return Ok(None);
    }
    Ok(commensurability(&gaps, max_denominator)?.period())
}

/// `exp(i alpha G)` for Hermitian `G`, through its spectral decomposition.
pub fn exp_i(alpha: f64, g: &HermitianMatrix) -> Result<CMatrix> {
    Ok(eig_hermitian(g)?.map_spectrum(|e| Complex64::from_polar(1.0, alpha * e)))
}

/// Apply `W = e^{i a3 v13} e^{i a2 v23} e^{i a1 v12}` to the `j = 1` block and
/// return `max |W H W^dagger - diag(E0 + kappa b, E0, E0 - kappa b)|`, `b = sqrt(2 n1 + 3)`.
pub fn euler_diagonalize_check_j1(n1: u32, kappa: f64, omega: f64) -> Result<f64> {
    let spec = BlockSpec::new(n1, HalfInt::ONE, kappa, omega)?;
    let h = build_block(&spec);
    let gens = generators(3)?;
    let x = f64::from(n1);
    let b = (2.0 * x + 3.0).sqrt();
    let alpha1 = -FRAC_PI_2;
    let alpha2 = (-(x + 2.0).sqrt() / b).atan2((x + 1.0).sqrt() / b);
    let alpha3 = -FRAC_PI_4;
    let v = |k, l| gens.get(GeneratorLabel::V(k, l)).expect("label exists for n = 3");
    let w = exp_i(alpha3, v(1, 3))?
        .matmul(&exp_i(alpha2, v(2, 3))?)
        .matmul(&exp_i(alpha1, v(1, 2))?);
    let hd = w.matmul(h.matrix()).matmul(&w.adjoint());
    let e0 = spec.diagonal_energy();
    let target = CMatrix::diagonal(&[
        C64::new(e0 + kappa * b, 0.0),
        C64::new(e0, 0.0),
        C64::new(e0 - kappa * b, 0.0),
    ]);
    Ok(hd.sub(&target).max_abs())
}
