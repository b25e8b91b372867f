use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Float;

use super::eigen::eig_hermitian;
use super::matrix::{CMatrix, HermitianMatrix, C64};
use crate::{Error, Result, CONSTRUCTION_TOL};

/// Normalized pure state.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    amps: Vec<C64>,
}

impl StateVector {
    pub fn new(amps: Vec<C64>) -> Result<Self> {
        if amps.is_empty() {
            return Err(Error::InvalidArgument("state vector must have dim >= 1"));
        }
        if amps.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidArgument("state vector has non-finite amplitudes"));
        }
        let norm = norm_of(&amps);
        if (norm - 1.0).abs() > CONSTRUCTION_TOL {
            return Err(Error::NotNormalized { norm });
        }
        Ok(StateVector { amps })
    }

    /// Normalize arbitrary nonzero amplitudes.
    pub fn normalize(mut amps: Vec<C64>) -> Result<Self> {
        let norm = norm_of(&amps);
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::NotNormalized { norm });
        }
        for z in amps.iter_mut() {
            *z /= norm;
        }
        Self::new(amps)
    }

    pub fn basis(dim: usize, index: usize) -> Self {
        let mut amps = vec![C64::new(0.0, 0.0); dim];
        amps[index] = C64::new(1.0, 0.0);
        StateVector { amps }
    }

    /// Wrap amplitudes that are normalized by construction (unitary images).
    pub(crate) fn from_normalized(amps: Vec<C64>) -> Self {
        debug_assert!((norm_of(&amps) - 1.0).abs() < 1e-8, "norm drifted to {}", norm_of(&amps));
        StateVector { amps }
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amps
    }

    pub fn norm(&self) -> f64 {
        norm_of(&self.amps)
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &StateVector) -> C64 {
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn projector(&self) -> DensityMatrix {
        let n = self.dim();
        DensityMatrix(CMatrix::from_fn(n, |r, c| self.amps[r] * self.amps[c].conj()))
    }
}

fn norm_of(amps: &[C64]) -> f64 {
    amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Hermitian, unit-trace, positive semidefinite matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix(CMatrix);

impl DensityMatrix {
    /// Validate Hermiticity, unit trace and positivity (eigenvalues `>= -1e-10`).
    pub fn new(m: CMatrix) -> Result<Self> {
        let h = HermitianMatrix::new(m).map_err(|_| Error::InvalidDensity("not Hermitian"))?;
        let tr = h.matrix().trace().re;
        if (tr - 1.0).abs() > CONSTRUCTION_TOL {
            return Err(Error::InvalidDensity("trace differs from 1"));
        }
        let sd = eig_hermitian(&h)?;
        if sd.eigenvalues()[0] < -CONSTRUCTION_TOL {
            return Err(Error::InvalidDensity("negative eigenvalue"));
        }
        Ok(DensityMatrix(h.into_matrix()))
    }

    pub fn diagonal(weights: &[f64]) -> Result<Self> {
        let diag: Vec<C64> = weights.iter().map(|&w| C64::new(w, 0.0)).collect();
        Self::new(CMatrix::diagonal(&diag))
    }

    /// Gram-type matrices (sums of `|a><a|`) are PSD and Hermitian by
    /// construction; only the trace is checked.
    pub(crate) fn from_gram(m: CMatrix) -> Self {
        debug_assert!((m.trace().re - 1.0).abs() < 1e-8);
        DensityMatrix(m)
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn populations(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.0[(i, i)].re).collect()
    }

    /// Largest off-diagonal modulus.
    pub fn max_coherence(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0f64;
        for r in 0..n {
            for c in 0..n {
                if r != c {
                    worst = worst.max(self.0[(r, c)].norm());
                }
            }
        }
        worst
    }
}

/// Which factor of a bipartite space to keep.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Subsystem {
    First,
    Second,
}

/// Maps each basis index of a composite space to its pair of factor labels.
///
/// Labels need not fill the full product `d1 x d2`; sector-restricted
/// spaces simply omit unreachable pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteLayout {
    dims: (usize, usize),
    labels: Vec<(usize, usize)>,
}

impl BipartiteLayout {
    pub fn new(dims: (usize, usize), labels: Vec<(usize, usize)>) -> Result<Self> {
        let mut seen = BTreeMap::new();
        for (i, &(a, b)) in labels.iter().enumerate() {
            if a >= dims.0 || b >= dims.1 {
                return Err(Error::InvalidLayout("label outside factor dimensions"));
            }
            if seen.insert((a, b), i).is_some() {
                return Err(Error::InvalidLayout("label pair used twice"));
            }
        }
        Ok(BipartiteLayout { dims, labels })
    }

    /// Full product layout, index `a * d2 + b`.
    pub fn product(d1: usize, d2: usize) -> Self {
        let labels = (0..d1).flat_map(|a| (0..d2).map(move |b| (a, b))).collect();
        BipartiteLayout { dims: (d1, d2), labels }
    }

    pub fn dims(&self) -> (usize, usize) {
        self.dims
    }

    pub fn labels(&self) -> &[(usize, usize)] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

/// Reduced density matrix of `keep` for the pure state `psi`.
pub fn partial_trace_bipartite(
    psi: &StateVector,
    layout: &BipartiteLayout,
    keep: Subsystem,
) -> Result<DensityMatrix> {
    if layout.len() != psi.dim() {
        return Err(Error::InvalidLayout("layout does not cover every basis index"));
    }
    let (kept_dim, split): (usize, fn(&(usize, usize)) -> (usize, usize)) = match keep {
        Subsystem::First => (layout.dims.0, |&(a, b)| (a, b)),
        Subsystem::Second => (layout.dims.1, |&(a, b)| (b, a)),
    };
    // group basis indices by the traced-out label
    let mut groups: BTreeMap<usize, Vec<(usize, C64)>> = BTreeMap::new();
    for (label, amp) in layout.labels.iter().zip(psi.amplitudes()) {
        let (kept, traced) = split(label);
        groups.entry(traced).or_default().push((kept, *amp));
    }
    let mut rho = CMatrix::zeros(kept_dim);
    for members in groups.values() {
        for &(k, a) in members {
            for &(l, b) in members {
                rho[(k, l)] += a * b.conj();
            }
        }
    }
    Ok(DensityMatrix::from_gram(rho))
}

/// `Tr rho^2`.
pub fn purity(rho: &DensityMatrix) -> f64 {
    rho.0.as_slice().iter().map(|z| z.norm_sqr()).sum()
}

/// `1 - Tr rho^2`: zero for product states, `(M - 1) / M` when maximally mixed over `M` states.
pub fn entanglement_measure(rho: &DensityMatrix) -> f64 {
    1.0 - purity(rho)
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn product_state_reduces_to_pure_projector() {
        // |a> = (0.6, 0.8i), |b> = (0, 1, 0)
        let a = [c(0.6), C64::new(0.0, 0.8)];
        let b = [c(0.0), c(1.0), c(0.0)];
        let amps = a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect();
        let psi = StateVector::new(amps).unwrap();
        let rho = partial_trace_bipartite(&psi, &BipartiteLayout::product(2, 3), Subsystem::First).unwrap();
        assert!((purity(&rho) - 1.0).abs() < 1e-15);
        assert!((rho.matrix()[(0, 1)] - C64::new(0.0, -0.48)).norm() < 1e-15);
    }

    #[test]
    fn bell_state_is_maximally_mixed() {
        let psi = StateVector::new(vec![c(FRAC_1_SQRT_2), c(0.0), c(0.0), c(FRAC_1_SQRT_2)]).unwrap();
        let layout = BipartiteLayout::product(2, 2);
        for keep in [Subsystem::First, Subsystem::Second] {
            let rho = partial_trace_bipartite(&psi, &layout, keep).unwrap();
            assert!((rho.populations()[0] - 0.5).abs() < 1e-15);
            assert_eq!(rho.max_coherence(), 0.0);
            assert!((entanglement_measure(&rho) - 0.5).abs() < 1e-15);
        }
    }

    #[test]
    fn purity_examples() {
        assert!((purity(&DensityMatrix::diagonal(&[0.25; 4]).unwrap()) - 0.25).abs() < 1e-15);
        let rho = DensityMatrix::diagonal(&[1.0 / 3.0, 2.0 / 3.0]).unwrap();
        assert!((entanglement_measure(&rho) - 4.0 / 9.0).abs() < 1e-15);
        assert_eq!(entanglement_measure(&StateVector::basis(3, 1).projector()), 0.0);
    }

    #[test]
    fn incomplete_layout_is_rejected() {
        let psi = StateVector::basis(4, 0);
        let layout = BipartiteLayout::new((2, 2), vec![(0, 0), (0, 1), (1, 0)]).unwrap();
        assert!(matches!(
            partial_trace_bipartite(&psi, &layout, Subsystem::First),
            Err(Error::InvalidLayout(_))
        ));
        assert!(BipartiteLayout::new((2, 2), vec![(0, 0), (0, 0)]).is_err());
        assert!(BipartiteLayout::new((2, 2), vec![(2, 0)]).is_err());
    }

    #[test]
    fn density_validation() {
        assert!(DensityMatrix::diagonal(&[0.5, 0.6]).is_err());
        assert!(DensityMatrix::diagonal(&[1.2, -0.2]).is_err());
        assert!(StateVector::new(vec![c(1.0), c(1.0)]).is_err());
        assert!(StateVector::normalize(vec![c(0.0)]).is_err());
    }
}
