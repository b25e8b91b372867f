//! Brute-force reference: dense Hamiltonians on truncated tensor-product
//! spaces, exact spectral evolution and partial traces.

use alloc::vec::Vec;

use num_traits::Float;

use crate::algebra::{
    eig_hermitian, partial_trace_bipartite, BipartiteLayout, CMatrix, DensityMatrix,
    HermitianMatrix, SpectralDecomposition, StateVector, Subsystem,
};
use crate::coupled_boson::ModeParams;
use crate::{Error, HalfInt, Result, C64};

pub const DEFAULT_DIM_CAP: usize = 4096;

/// Population on cutoff states above which a run is rejected.
pub const LEAKAGE_TOL: f64 = 1e-12;

fn real(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// Boson annihilation operator on occupations `0..dim`.
pub fn annihilation(dim: usize) -> CMatrix {
    CMatrix::from_real_fn(dim, |r, c| if c == r + 1 { (c as f64).sqrt() } else { 0.0 })
}

pub fn number(dim: usize) -> CMatrix {
    CMatrix::from_real_fn(dim, |r, c| if r == c { r as f64 } else { 0.0 })
}

/// `J_z` on `m = -j..=j` (index `m + j`).
pub fn spin_z(j: HalfInt) -> CMatrix {
    let n = (j.twice() + 1) as usize;
    CMatrix::from_real_fn(n, |r, c| if r == c { r as f64 - j.to_f64() } else { 0.0 })
}

/// `J_+ = (J_x + i J_y) / sqrt(2)`.
pub fn spin_raise(j: HalfInt) -> CMatrix {
    let n = (j.twice() + 1) as usize;
    let jf = j.to_f64();
    CMatrix::from_real_fn(n, |r, c| {
        if r == c + 1 {
            let m = c as f64 - jf;
            ((jf - m) * (jf + m + 1.0) / 2.0).sqrt()
        } else {
            0.0
        }
    })
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scenario {
    LinearLinear,
    SpinBoson,
}

/// A truncated two-factor space with its Hamiltonian.
#[derive(Clone, Debug)]
pub struct TruncatedSpace {
    scenario: Scenario,
    dims: (usize, usize),
    labels: Vec<(usize, usize)>,
    hamiltonian: HermitianMatrix,
    /// Labels whose boson occupation sits at the cutoff; empty for closed sectors.
    boundary: Vec<usize>,
}

fn check_cap(dim: usize, cap: usize) -> Result<()> {
    if dim > cap {
        return Err(Error::SpaceTooLarge { dim, cap });
    }
    Ok(())
}

/// `omega1 (n1 + 1/2) + omega2 (n2 + 1/2) + kappa (a1^dag a2 + a1 a2^dag)` with occupations up to `n_max`.
pub fn build_full_h_linear_linear(params: &ModeParams, n_max: usize) -> Result<HermitianMatrix> {
    Ok(TruncatedSpace::linear_linear(params, n_max, DEFAULT_DIM_CAP)?.hamiltonian)
}

/// `omega (n1 + 1/2) + omega J_z + kappa (A J_+ + A^dag J_-)` with photons up to `n_max`.
pub fn build_full_h_spin_boson(omega: f64, kappa: f64, j: HalfInt, n_max: usize) -> Result<HermitianMatrix> {
    Ok(TruncatedSpace::spin_boson(omega, kappa, j, n_max, DEFAULT_DIM_CAP)?.hamiltonian)
}

impl TruncatedSpace {
    pub fn linear_linear(params: &ModeParams, n_max: usize, cap: usize) -> Result<Self> {
        let d = n_max + 1;
        check_cap(d * d, cap)?;
        let id = CMatrix::identity(d);
        let a = annihilation(d);
        let ad = a.adjoint();
        let half = id.scale(real(0.5));
        let h = number(d).add(&half).scale(real(params.omega1)).kron(&id)
            .add(&id.kron(&number(d).add(&half).scale(real(params.omega2))))
            .add(&ad.kron(&a).add(&a.kron(&ad)).scale(real(params.kappa)));
        let layout = BipartiteLayout::product(d, d);
        let boundary = (0..d * d).filter(|&i| i / d == n_max || i % d == n_max).collect();
        Ok(TruncatedSpace {
            scenario: Scenario::LinearLinear,
            dims: (d, d),
            labels: layout.labels().to_vec(),
            hamiltonian: HermitianMatrix::new(h)?,
            boundary,
        })
    }

    pub fn spin_boson(omega: f64, kappa: f64, j: HalfInt, n_max: usize, cap: usize) -> Result<Self> {
        if j.twice() < 1 {
            return Err(Error::UnsupportedSpin(j));
        }
        let d = n_max + 1;
        let s = (j.twice() + 1) as usize;
        check_cap(d * s, cap)?;
        let (idb, ids) = (CMatrix::identity(d), CMatrix::identity(s));
        let a = annihilation(d);
        let jp = spin_raise(j);
        let h = number(d).add(&idb.scale(real(0.5))).scale(real(omega)).kron(&ids)
            .add(&idb.kron(&spin_z(j).scale(real(omega))))
            .add(&a.kron(&jp).add(&a.adjoint().kron(&jp.adjoint())).scale(real(kappa)));
        let layout = BipartiteLayout::product(d, s);
        let boundary = (0..d * s).filter(|&i| i / s == n_max).collect();
        Ok(TruncatedSpace {
            scenario: Scenario::SpinBoson,
            dims: (d, s),
            labels: layout.labels().to_vec(),
            hamiltonian: HermitianMatrix::new(h)?,
            boundary,
        })
    }

    /// The closed sector `n1 + n2 = total`.
    pub fn linear_sector(params: &ModeParams, total: usize) -> Result<Self> {
        Self::linear_linear(params, total, DEFAULT_DIM_CAP)?.restrict(|(a, b)| a + b == total)
    }

    /// The closed sector with `photons + m + j = excitations` (all states reachable from `|n1>|j, m>`).
    pub fn spin_boson_sector(omega: f64, kappa: f64, j: HalfInt, excitations: usize) -> Result<Self> {
        Self::spin_boson(omega, kappa, j, excitations, DEFAULT_DIM_CAP)?
            .restrict(|(a, b)| a + b == excitations)
    }

    /// Keep only labels satisfying `keep`; the selection must be invariant under `H`.
    pub fn restrict(&self, keep: impl Fn((usize, usize)) -> bool) -> Result<Self> {
        let chosen: Vec<usize> = (0..self.labels.len()).filter(|&i| keep(self.labels[i])).collect();
        if chosen.is_empty() {
            return Err(Error::InvalidArgument("empty sector"));
        }
        let h = self.hamiltonian.matrix();
        for &r in &chosen {
            for c in 0..self.labels.len() {
                if !keep(self.labels[c]) && h[(r, c)].norm() > 0.0 {
                    return Err(Error::InvalidArgument("selection is not closed under the Hamiltonian"));
                }
            }
        }
        let sub = CMatrix::from_fn(chosen.len(), |r, c| h[(chosen[r], chosen[c])]);
        Ok(TruncatedSpace {
            scenario: self.scenario,
            dims: self.dims,
            labels: chosen.iter().map(|&i| self.labels[i]).collect(),
            hamiltonian: HermitianMatrix::new(sub)?,
            boundary: Vec::new(),
        })
    }

    pub fn scenario(&self) -> Scenario {
        self.scenario
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn factor_dims(&self) -> (usize, usize) {
        self.dims
    }

    pub fn labels(&self) -> &[(usize, usize)] {
        &self.labels
    }

    pub fn hamiltonian(&self) -> &HermitianMatrix {
        &self.hamiltonian
    }

    pub fn layout(&self) -> BipartiteLayout {
        BipartiteLayout::new(self.dims, self.labels.clone()).expect("labels are in range and unique")
    }

    pub fn index_of(&self, first: usize, second: usize) -> Option<usize> {
        self.labels.iter().position(|&l| l == (first, second))
    }

    /// The conserved excitation number as a diagonal matrix on this space.
    pub fn excitation_operator(&self) -> CMatrix {
        let values: Vec<C64> = self.labels.iter().map(|&(a, b)| real((a + b) as f64)).collect();
        CMatrix::diagonal(&values)
    }

    fn boundary_population(&self, psi: &StateVector) -> f64 {
        self.boundary.iter().map(|&i| psi.amplitudes()[i].norm_sqr()).sum()
    }
}

/// Initial pure state on a truncated space.
#[derive(Clone, Debug, PartialEq)]
pub enum InitialState {
    /// `|first>|second>`; for the spin the second index is `m + j`.
    Product(usize, usize),
    Superposition(Vec<((usize, usize), C64)>),
}

impl InitialState {
    fn vector(&self, space: &TruncatedSpace) -> Result<StateVector> {
        let pairs: Vec<((usize, usize), C64)> = match self {
            InitialState::Product(a, b) => alloc::vec![((*a, *b), real(1.0))],
            InitialState::Superposition(terms) => terms.clone(),
        };
        let mut amps = alloc::vec![C64::new(0.0, 0.0); space.dim()];
        for ((a, b), c) in pairs {
            let i = space.index_of(a, b).ok_or(Error::InvalidArgument("initial state outside the truncated space"))?;
            amps[i] += c;
        }
        StateVector::new(amps)
    }
}

/// Dense evolution from a fixed initial state.
#[derive(Clone, Debug)]
pub struct OracleEvolution {
    space: TruncatedSpace,
    eig: SpectralDecomposition,
    coeffs: Vec<C64>,
}

impl OracleEvolution {
    pub fn new(space: TruncatedSpace, initial: &InitialState) -> Result<Self> {
        let psi0 = initial.vector(&space)?;
        let population = space.boundary_population(&psi0);
        if population > LEAKAGE_TOL {
            return Err(Error::Leakage { population });
        }
        let eig = eig_hermitian(space.hamiltonian())?;
        let coeffs = eig.coefficients(psi0.amplitudes());
        Ok(OracleEvolution { space, eig, coeffs })
    }

    pub fn space(&self) -> &TruncatedSpace {
        &self.space
    }

    /// State at `t`; fails if population reaches the cutoff.
    pub fn state(&self, t: f64) -> Result<StateVector> {
        let psi = StateVector::normalize(self.eig.evolve_coefficients(&self.coeffs, t))?;
        let population = self.space.boundary_population(&psi);
        if population > LEAKAGE_TOL {
            return Err(Error::Leakage { population });
        }
        Ok(psi)
    }

    pub fn reduce(&self, t: f64, keep: Subsystem) -> Result<DensityMatrix> {
        partial_trace_bipartite(&self.state(t)?, &self.space.layout(), keep)
    }
}

/// Reduced density matrix of `keep` at time `t`.
pub fn oracle_reduce(space: &TruncatedSpace, initial: &InitialState, t: f64, keep: Subsystem) -> Result<DensityMatrix> {
    OracleEvolution::new(space.clone(), initial)?.reduce(t, keep)
}
