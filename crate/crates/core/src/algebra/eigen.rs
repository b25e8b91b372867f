use alloc::vec::Vec;

use num_traits::Float;

use super::matrix::{CMatrix, HermitianMatrix, C64};
use super::state::StateVector;
use crate::{Error, Result};

const MAX_SWEEPS: usize = 100;
/// Convergence when the off-diagonal Frobenius norm drops below this times `‖H‖_F`.
const OFF_DIAGONAL_TOL: f64 = 1e-13;
/// Eigenvalues closer than this times `‖H‖_F` form one degenerate cluster.
const DEGENERACY_TOL: f64 = 1e-9;

/// Eigenpairs of a Hermitian matrix, eigenvalues ascending.
///
/// Eigenvectors are stored as the columns of a unitary matrix. Each vector is
/// phase-fixed so that its first largest-magnitude component is real and
/// positive, which makes the decomposition reproducible bit for bit.
#[derive(Clone, Debug)]
pub struct SpectralDecomposition {
    eigenvalues: Vec<f64>,
    vectors: CMatrix,
}

impl SpectralDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Unitary whose column `p` is the `p`-th eigenvector.
    pub fn vectors(&self) -> &CMatrix {
        &self.vectors
    }

    pub fn eigenvector(&self, p: usize) -> StateVector {
        let n = self.dim();
        StateVector::from_normalized((0..n).map(|r| self.vectors[(r, p)]).collect())
    }

    /// `sum_p f(E_p) |v_p><v_p|`.
    pub fn map_spectrum(&self, mut f: impl FnMut(f64) -> C64) -> CMatrix {
        let n = self.dim();
        let weights: Vec<C64> = self.eigenvalues.iter().map(|&e| f(e)).collect();
        CMatrix::from_fn(n, |r, c| {
            (0..n).map(|p| self.vectors[(r, p)] * weights[p] * self.vectors[(c, p)].conj()).sum()
        })
    }

    /// Reconstruct `sum_p E_p |v_p><v_p|`.
    pub fn reconstruct(&self) -> CMatrix {
        self.map_spectrum(|e| C64::new(e, 0.0))
    }

    /// The propagator `exp(-i H t)`.
    pub fn propagator(&self, t: f64) -> CMatrix {
        self.map_spectrum(|e| C64::from_polar(1.0, -e * t))
    }

    /// Coefficients `<v_p|psi>`.
    pub fn coefficients(&self, psi: &[C64]) -> Vec<C64> {
        let n = self.dim();
        (0..n)
            .map(|p| (0..n).map(|r| self.vectors[(r, p)].conj() * psi[r]).sum())
            .collect()
    }

    /// Evolve a state given by its eigenbasis coefficients.
    pub fn evolve_coefficients(&self, coeffs: &[C64], t: f64) -> Vec<C64> {
        let n = self.dim();
        let phased: Vec<C64> = coeffs
            .iter()
            .zip(&self.eigenvalues)
            .map(|(c, &e)| c * C64::from_polar(1.0, -e * t))
            .collect();
        (0..n)
            .map(|r| (0..n).map(|p| self.vectors[(r, p)] * phased[p]).sum())
            .collect()
    }
}

/// Diagonalize a Hermitian matrix by cyclic complex Jacobi rotations.
///
/// Within a numerically degenerate cluster the eigenvectors are
/// re-orthonormalized by Gram-Schmidt in ascending original column order.
pub fn eig_hermitian(h: &HermitianMatrix) -> Result<SpectralDecomposition> {
    let n = h.dim();
    let mut a = h.matrix().clone();
    let mut v = CMatrix::identity(n);
    let norm = a.frobenius();
    let threshold = OFF_DIAGONAL_TOL * norm;

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) <= threshold {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if !converged {
        let off_norm = off_diagonal_norm(&a);
        if off_norm > threshold {
            return Err(Error::NoConvergence { sweeps: MAX_SWEEPS, off_norm });
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re).then(i.cmp(&j)));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut columns: Vec<Vec<C64>> =
        order.iter().map(|&i| (0..n).map(|r| v[(r, i)]).collect()).collect();

    // degenerate clusters: Gram-Schmidt in ascending original column index
    let gap = DEGENERACY_TOL * norm;
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && eigenvalues[end] - eigenvalues[end - 1] < gap {
            end += 1;
        }
        if end - start > 1 {
            let mut members: Vec<usize> = (start..end).collect();
            members.sort_by_key(|&k| order[k]);
            let originals: Vec<Vec<C64>> = members.iter().map(|&k| columns[k].clone()).collect();
            let mut basis: Vec<Vec<C64>> = Vec::with_capacity(originals.len());
            for mut col in originals {
                for b in &basis {
                    let overlap: C64 = b.iter().zip(&col).map(|(x, y)| x.conj() * y).sum();
                    for (c, x) in col.iter_mut().zip(b) {
                        *c -= overlap * x;
                    }
                }
                let nrm = col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                for c in col.iter_mut() {
                    *c /= nrm;
                }
                basis.push(col);
            }
            let mut slots = members.clone();
            slots.sort_unstable();
            for (slot, col) in slots.into_iter().zip(basis) {
                columns[slot] = col;
            }
        }
        start = end;
    }

    for col in columns.iter_mut() {
        fix_phase(col);
    }
    let vectors = CMatrix::from_fn(n, |r, c| columns[c][r]);
    Ok(SpectralDecomposition { eigenvalues, vectors })
}

/// Evolve `psi0` for time `t` under the Hamiltonian behind `sd`.
pub fn spectral_evolve(sd: &SpectralDecomposition, psi0: &StateVector, t: f64) -> Result<StateVector> {
    if psi0.dim() != sd.dim() {
        return Err(Error::DimensionMismatch { expected: sd.dim(), found: psi0.dim() });
    }
    if t == 0.0 {
        return Ok(psi0.clone());
    }
    let coeffs = sd.coefficients(psi0.amplitudes());
    Ok(StateVector::from_normalized(sd.evolve_coefficients(&coeffs, t)))
}

fn off_diagonal_norm(a: &CMatrix) -> f64 {
    let n = a.dim();
    let mut s = 0.0;
    for r in 0..n {
        for c in 0..n {
            if r != c {
                s += a[(r, c)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// One complex Jacobi rotation annihilating `a[(p, q)]`.
///
/// With `a_pq = |b| e^{i phi}` the rotation is `J = D R`, where
/// `D = diag(1, e^{-i phi})` on `(p, q)` makes the pivot real and `R` is the
/// usual real symmetric Jacobi rotation.
fn rotate(a: &mut CMatrix, v: &mut CMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let b = apq.norm();
    if b == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let phase = apq / b; // e^{i phi}
    let tau = (aqq - app) / (2.0 * b);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let ph_conj = phase.conj();
    let n = a.dim();

    // A <- A J
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * c - akq * ph_conj * s;
        a[(k, q)] = akp * s + akq * ph_conj * c;
    }
    // A <- J^+ A
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * c - aqk * phase * s;
        a[(q, k)] = apk * s + aqk * phase * c;
    }
    a[(p, q)] = C64::new(0.0, 0.0);
    a[(q, p)] = C64::new(0.0, 0.0);
    a[(p, p)] = C64::new(app - t * b, 0.0);
    a[(q, q)] = C64::new(aqq + t * b, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c - vkq * ph_conj * s;
        v[(k, q)] = vkp * s + vkq * ph_conj * c;
    }
}

fn fix_phase(col: &mut [C64]) {
    let mut best = 0;
    let mut best_norm = -1.0;
    for (i, z) in col.iter().enumerate() {
        // prefer the earliest index among near-equal magnitudes
        if z.norm() > best_norm * (1.0 + 1e-12) {
            best_norm = z.norm();
            best = i;
        }
    }
    if best_norm <= 0.0 {
        return;
    }
    let rot = col[best].conj() / best_norm;
    for z in col.iter_mut() {
        *z *= rot;
    }
    col[best] = C64::new(col[best].re, 0.0);
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn herm(rows: &[&[f64]]) -> HermitianMatrix {
        let n = rows.len();
        HermitianMatrix::new(CMatrix::from_real_fn(n, |r, c| rows[r][c])).unwrap()
    }

    #[test]
    fn identity_spectrum() {
        let sd = eig_hermitian(&HermitianMatrix::new(CMatrix::identity(3)).unwrap()).unwrap();
        assert_eq!(sd.eigenvalues(), &[1.0, 1.0, 1.0]);
        assert!(sd.vectors().unitarity_deviation() < 1e-14);
    }

    #[test]
    fn pauli_x_spectrum() {
        let sd = eig_hermitian(&herm(&[&[0.0, 1.0], &[1.0, 0.0]])).unwrap();
        assert!((sd.eigenvalues()[0] + 1.0).abs() < 1e-15);
        assert!((sd.eigenvalues()[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn complex_pivot() {
        // sigma_y has eigenvalues -1, +1 and complex eigenvectors
        let mut m = CMatrix::zeros(2);
        m[(0, 1)] = C64::new(0.0, -1.0);
        m[(1, 0)] = C64::new(0.0, 1.0);
        let h = HermitianMatrix::new(m).unwrap();
        let sd = eig_hermitian(&h).unwrap();
        assert!((sd.eigenvalues()[0] + 1.0).abs() < 1e-15);
        assert!(sd.reconstruct().sub(h.matrix()).max_abs() < 1e-15);
    }

    #[test]
    fn zero_matrix() {
        let sd = eig_hermitian(&HermitianMatrix::new(CMatrix::zeros(4)).unwrap()).unwrap();
        assert_eq!(sd.eigenvalues(), &[0.0; 4]);
        assert_eq!(*sd.vectors(), CMatrix::identity(4));
    }

    #[test]
    fn evolve_rejects_dim_mismatch() {
        let sd = eig_hermitian(&herm(&[&[1.0, 0.0], &[0.0, 2.0]])).unwrap();
        let psi = StateVector::basis(3, 0);
        assert_eq!(
            spectral_evolve(&sd, &psi, 1.0).unwrap_err(),
            Error::DimensionMismatch { expected: 2, found: 3 }
        );
    }

    #[test]
    fn phase_only_evolution() {
        let (e1, e2, t) = (0.7, -1.3, 2.5);
        let sd = eig_hermitian(&herm(&[&[e1, 0.0], &[0.0, e2]])).unwrap();
        let psi = spectral_evolve(&sd, &StateVector::new(vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0)]).unwrap(), t)
            .unwrap();
        let want = C64::from_polar(1.0, -e1 * t);
        assert!((psi.amplitudes()[0] - want).norm() < 1e-15);
        assert_eq!(psi.amplitudes()[1].norm(), 0.0);
    }
}
