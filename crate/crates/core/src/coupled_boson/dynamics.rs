use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;

use super::params::{energy_eigenvalue, ModeParams};
use super::wigner::{check_cap, check_label, wigner_matrix, wigner_u_jacobi, WignerMatrix};
use crate::algebra::{
    binomial, log_factorial, partial_trace_bipartite, BipartiteLayout, DensityMatrix, StateVector,
    Subsystem,
};
use crate::{Error, HalfInt, Result, C64};

/// Diagonal reduced density matrix of one oscillator, `w[k]` for `k = -J..=J`.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagonalReducedDensity {
    j: HalfInt,
    weights: Vec<f64>,
}

impl DiagonalReducedDensity {
    pub fn j(&self) -> HalfInt {
        self.j
    }

    /// Weights in ascending `k`.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn weight(&self, k: HalfInt) -> Option<f64> {
        check_label(self.j, k).ok()?;
        Some(self.weights[((k + self.j).twice() / 2) as usize])
    }

    /// `1 - sum_k w_k^2`.
    pub fn measure(&self) -> f64 {
        1.0 - self.weights.iter().map(|w| w * w).sum::<f64>()
    }

    pub fn to_density(&self) -> DensityMatrix {
        DensityMatrix::diagonal(&self.weights).expect("weights form a valid distribution")
    }
}

fn phase(m: HalfInt, omega_bar: f64, t: f64) -> C64 {
    Complex64::from_polar(1.0, -m.to_f64() * omega_bar * t)
}

fn check_jmk(j: HalfInt, m: HalfInt, k: HalfInt) -> Result<()> {
    check_label(j, m)?;
    check_label(j, k)?;
    check_cap(j)
}

/// Amplitude on `|J; k>` at time `t` for the product start `|J; M>`:
/// `f_k(t) = sum_m U_{mM} U_{mk} exp(-i m omega_bar t)`.
pub fn f1_k(k: HalfInt, j: HalfInt, m0: HalfInt, gamma: f64, omega_bar: f64, t: f64) -> Result<C64> {
    check_jmk(j, m0, k)?;
    let u = wigner_matrix(j, gamma)?;
    Ok(f1_from_matrix(&u, k, m0, omega_bar, t))
}

fn f1_from_matrix(u: &WignerMatrix, k: HalfInt, m0: HalfInt, omega_bar: f64, t: f64) -> C64 {
    HalfInt::ladder(u.j())
        .map(|m| phase(m, omega_bar, t) * (u.get(m, m0) * u.get(m, k)))
        .sum()
}

/// All components `f_k`, ascending in `k`.
pub fn f1_all(j: HalfInt, m0: HalfInt, gamma: f64, omega_bar: f64, t: f64) -> Result<Vec<C64>> {
    check_jmk(j, m0, j)?;
    let u = wigner_matrix(j, gamma)?;
    Ok(HalfInt::ladder(j).map(|k| f1_from_matrix(&u, k, m0, omega_bar, t)).collect())
}

/// `f_k` assembled from Jacobi-polynomial matrix elements.
pub fn f1_k_appendix(
    k: HalfInt,
    j: HalfInt,
    m0: HalfInt,
    gamma: f64,
    omega_bar: f64,
    t: f64,
) -> Result<C64> {
    check_jmk(j, m0, k)?;
    let mut acc = C64::new(0.0, 0.0);
    for m in HalfInt::ladder(j) {
        let a = wigner_u_jacobi(j, m, m0, gamma)?;
        let b = wigner_u_jacobi(j, m, k, gamma)?;
        acc += phase(m, omega_bar, t) * (a * b);
    }
    Ok(acc)
}

/// `f_k` for equal frequencies (`gamma = pi/2`) as a double binomial sum.
pub fn f1_k_double_binomial(k: HalfInt, j: HalfInt, m0: HalfInt, omega_bar: f64, t: f64) -> Result<C64> {
    check_jmk(j, m0, k)?;
    let int = |x: HalfInt| (x.twice() / 2) as u32;
    let lf = |x: HalfInt| log_factorial(int(x));
    let prefactor = (0.5 * (lf(j + m0)? + lf(j - m0)? - lf(j + k)? - lf(j - k)?)).exp()
        / 2f64.powi(j.twice());
    let choose = |n: u32, r: i64| -> Result<f64> {
        if r < 0 || r > i64::from(n) {
            Ok(0.0)
        } else {
            binomial(n, r as u32)
        }
    };
    let mut acc = C64::new(0.0, 0.0);
    for m in HalfInt::ladder(j) {
        let mut inner = 0.0;
        for p in 0..=int(j - m0) {
            for q in 0..=int(j - m) {
                let sign = if (p + q) % 2 == 0 { 1.0 } else { -1.0 };
                inner += sign
                    * choose(int(j - m), i64::from(p))?
                    * choose(int(j + m), i64::from(int(j - m0)) - i64::from(p))?
                    * choose(int(j - k), i64::from(q))?
                    * choose(int(j + k), i64::from(int(j - m)) - i64::from(q))?;
            }
        }
        acc += phase(m, omega_bar, t) * inner;
    }
    Ok(acc * prefactor)
}

/// Reduced state of oscillator 1 for the product start `|J; M>`.
pub fn rho1_case1(j: HalfInt, m0: HalfInt, params: &ModeParams, t: f64) -> Result<DiagonalReducedDensity> {
    let f = f1_all(j, m0, params.gamma, params.omega_bar, t)?;
    Ok(DiagonalReducedDensity { j, weights: f.iter().map(|z| z.norm_sqr()).collect() })
}

pub fn measure_case1(j: HalfInt, m0: HalfInt, params: &ModeParams, t: f64) -> Result<f64> {
    Ok(rho1_case1(j, m0, params, t)?.measure())
}

/// Time-independent amplitude on `|J; k>` for the normal-mode start `|J; M>_H`.
pub fn f2_k(k: HalfInt, j: HalfInt, m0: HalfInt, gamma: f64) -> Result<f64> {
    check_jmk(j, m0, k)?;
    super::wigner_u(j, m0, k, gamma)
}

/// Reduced state of oscillator 1 for the normal-mode start `|J; M>_H`.
pub fn rho1_case2(j: HalfInt, m0: HalfInt, gamma: f64) -> Result<DiagonalReducedDensity> {
    check_jmk(j, m0, j)?;
    let u = wigner_matrix(j, gamma)?;
    let weights = HalfInt::ladder(j).map(|k| u.get(m0, k).powi(2)).collect();
    Ok(DiagonalReducedDensity { j, weights })
}

pub fn measure_case2(j: HalfInt, m0: HalfInt, gamma: f64) -> Result<f64> {
    Ok(rho1_case2(j, m0, gamma)?.measure())
}

/// A pure state expanded in the normal-mode basis `|j; m>_H`.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenAmplitudes {
    terms: BTreeMap<(HalfInt, HalfInt), C64>,
}

impl EigenAmplitudes {
    /// Coefficients `c_{j,m}`; must be normalized within `1e-10`.
    pub fn new(terms: impl IntoIterator<Item = (HalfInt, HalfInt, C64)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (j, m, c) in terms {
            check_label(j, m)?;
            check_cap(j)?;
            if !(c.re.is_finite() && c.im.is_finite()) {
                return Err(Error::InvalidArgument("non-finite amplitude"));
            }
            *map.entry((j, m)).or_insert(C64::new(0.0, 0.0)) += c;
        }
        let norm: f64 = map.values().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(Error::NotNormalized { norm });
        }
        Ok(EigenAmplitudes { terms: map })
    }

    /// The normal-mode eigenstate `|j; m>_H`.
    pub fn eigenstate(j: HalfInt, m: HalfInt) -> Result<Self> {
        Self::new([(j, m, C64::new(1.0, 0.0))])
    }

    /// Normal-mode expansion of a product-basis state `sum b_{j,m} |j; m>`,
    /// using `<j; m|_H |j; m'> = U_{m m'}(gamma)`.
    pub fn from_product(
        product: impl IntoIterator<Item = (HalfInt, HalfInt, C64)>,
        gamma: f64,
    ) -> Result<Self> {
        let mut out: Vec<(HalfInt, HalfInt, C64)> = Vec::new();
        let mut cache: BTreeMap<HalfInt, WignerMatrix> = BTreeMap::new();
        for (j, mp, b) in product {
            check_label(j, mp)?;
            check_cap(j)?;
            if !cache.contains_key(&j) {
                cache.insert(j, wigner_matrix(j, gamma)?);
            }
            let u = &cache[&j];
            out.extend(HalfInt::ladder(j).map(|m| (j, m, b * u.get(m, mp))));
        }
        Self::new(out)
    }

    pub fn iter(&self) -> impl Iterator<Item = (HalfInt, HalfInt, C64)> + '_ {
        self.terms.iter().map(|(&(j, m), &c)| (j, m, c))
    }

    fn max_j(&self) -> HalfInt {
        self.terms.keys().map(|&(j, _)| j).max().unwrap_or(HalfInt::ZERO)
    }
}

/// The evolved state in the product number basis `|n1>|n2>`, restricted to
/// the `j` shells present in `amps`, with its bipartite layout.
pub fn evolve_in_number_basis(
    amps: &EigenAmplitudes,
    params: &ModeParams,
    t: f64,
) -> Result<(StateVector, BipartiteLayout)> {
    let mut shells: BTreeMap<HalfInt, Vec<C64>> = BTreeMap::new();
    for (j, m, c) in amps.iter() {
        let n1 = ((j + m).twice() / 2) as u32;
        let n2 = ((j - m).twice() / 2) as u32;
        let evolved = c * Complex64::from_polar(1.0, -energy_eigenvalue(n1, n2, params) * t);
        let slot = shells.entry(j).or_insert_with(|| alloc::vec![C64::new(0.0, 0.0); (j.twice() + 1) as usize]);
        slot[((m + j).twice() / 2) as usize] = evolved;
    }
    let side = (amps.max_j().twice() + 1) as usize;
    let mut labels = Vec::new();
    let mut values = Vec::new();
    for (&j, coeffs) in &shells {
        let u = wigner_matrix(j, params.gamma)?;
        for k in HalfInt::ladder(j) {
            // <j; k| e^{-iHt} |psi> with <j; k|j; m>_H = U_{mk}
            let a: C64 = HalfInt::ladder(j)
                .zip(coeffs)
                .map(|(m, c)| c * u.get(m, k))
                .sum();
            labels.push((((j + k).twice() / 2) as usize, ((j - k).twice() / 2) as usize));
            values.push(a);
        }
    }
    let layout = BipartiteLayout::new((side, side), labels)?;
    Ok((StateVector::new(values)?, layout))
}

/// Reduced density matrix of oscillator 1 over `n1 = 0..=2 j_max`.
pub fn rho1_general(amps: &EigenAmplitudes, params: &ModeParams, t: f64) -> Result<DensityMatrix> {
    let (psi, layout) = evolve_in_number_basis(amps, params, t)?;
    partial_trace_bipartite(&psi, &layout, Subsystem::First)
}

/// Reduced density matrix of oscillator 2 over `n2 = 0..=2 j_max`.
pub fn rho2_general(amps: &EigenAmplitudes, params: &ModeParams, t: f64) -> Result<DensityMatrix> {
    let (psi, layout) = evolve_in_number_basis(amps, params, t)?;
    partial_trace_bipartite(&psi, &layout, Subsystem::Second)
}
