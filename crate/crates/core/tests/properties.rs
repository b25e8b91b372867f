use std::f64::consts::PI;

use entangle_core::algebra::{
    eig_hermitian, entanglement_measure, partial_trace_bipartite, purity, BipartiteLayout,
    CMatrix, HermitianMatrix, StateVector, Subsystem,
};
use entangle_core::coupled_boson::{
    derive_params, f1_all, measure_case1, rho1_case2, rho1_general, wigner_matrix,
    EigenAmplitudes,
};
use entangle_core::heisenberg::{jz_acceleration, jz_rate_squared, LambdaFlags};
use entangle_core::spin_boson::{BlockDynamics, BlockSpec};
use entangle_core::su_n::{decompose_matrix, decompose_unitary, exp_i, generators};
use entangle_core::{HalfInt, C64};
use proptest::prelude::*;

fn hermitian(dim: usize, entries: &[(f64, f64)]) -> HermitianMatrix {
    let m = CMatrix::from_fn(dim, |r, c| {
        let (a, b) = entries[r * dim + c];
        let (a2, b2) = entries[c * dim + r];
        if r == c {
            C64::new(a, 0.0)
        } else {
            C64::new(0.5 * (a + a2), 0.5 * (b - b2))
        }
    });
    HermitianMatrix::new(m).unwrap()
}

fn hermitian_strategy(max_dim: usize) -> impl Strategy<Value = HermitianMatrix> {
    (1..=max_dim).prop_flat_map(|dim| {
        prop::collection::vec((-2.0..2.0f64, -2.0..2.0f64), dim * dim)
            .prop_map(move |e| hermitian(dim, &e))
    })
}

fn spin(max_twice: i32) -> impl Strategy<Value = HalfInt> {
    (0..=max_twice).prop_map(HalfInt::from_twice)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn eigen_reconstruction(h in hermitian_strategy(16)) {
        let eig = eig_hermitian(&h).unwrap();
        let scale = h.matrix().max_abs().max(1.0);
        prop_assert!(eig.reconstruct().sub(h.matrix()).max_abs() < 1e-10 * scale);
        prop_assert!(eig.vectors().unitarity_deviation() < 1e-10);
        prop_assert!(eig.eigenvalues().windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn propagator_is_a_unitary_group(h in hermitian_strategy(8), t1 in -3.0..3.0f64, t2 in -3.0..3.0f64) {
        let eig = eig_hermitian(&h).unwrap();
        let (u1, u2) = (eig.propagator(t1), eig.propagator(t2));
        prop_assert!(u1.unitarity_deviation() < 1e-10);
        prop_assert!(u1.matmul(&u2).sub(&eig.propagator(t1 + t2)).max_abs() < 1e-10);
        prop_assert!(eig.propagator(0.0).sub(&CMatrix::identity(h.dim())).max_abs() < 1e-12);
    }

    #[test]
    fn purity_agrees_across_subsystems(
        d1 in 1usize..=5,
        d2 in 1usize..=5,
        seed in prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 25),
    ) {
        let amps: Vec<C64> = seed.iter().take(d1 * d2).map(|&(a, b)| C64::new(a, b)).collect();
        prop_assume!(amps.iter().map(|z| z.norm_sqr()).sum::<f64>() > 1e-3);
        let psi = StateVector::normalize(amps).unwrap();
        let layout = BipartiteLayout::product(d1, d2);
        let r1 = partial_trace_bipartite(&psi, &layout, Subsystem::First).unwrap();
        let r2 = partial_trace_bipartite(&psi, &layout, Subsystem::Second).unwrap();
        prop_assert!((purity(&r1) - purity(&r2)).abs() < 1e-12);
        let m = entanglement_measure(&r1);
        let bound = 1.0 - 1.0 / d1.min(d2) as f64;
        prop_assert!(m >= -1e-12 && m <= bound + 1e-12);
    }

    #[test]
    fn wigner_orthogonal_and_transposed_by_negation(j in spin(20), gamma in -PI..PI) {
        let u = wigner_matrix(j, gamma).unwrap();
        let v = wigner_matrix(j, -gamma).unwrap();
        prop_assert!(u.orthogonality_defect() < 1e-10);
        for p in 0..u.dim() {
            for q in 0..u.dim() {
                prop_assert!((u.at(p, q) - v.at(q, p)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn case_one_normalized_bounded_periodic(
        j in spin(10),
        m_pick in 0usize..11,
        w1 in 1.0..3.0f64,
        dw in 0.0..2.0f64,
        kappa in 0.05..1.5f64,
        t in 0.0..20.0f64,
    ) {
        let m0 = HalfInt::ladder(j).nth(m_pick % (j.twice() as usize + 1)).unwrap();
        let p = derive_params(w1 + dw, w1, kappa).unwrap();
        let f = f1_all(j, m0, p.gamma, p.omega_bar, t).unwrap();
        prop_assert!((f.iter().map(|z| z.norm_sqr()).sum::<f64>() - 1.0).abs() < 1e-10);
        let m = measure_case1(j, m0, &p, t).unwrap();
        let n = f64::from(j.twice() + 1);
        prop_assert!(m >= -1e-12 && m <= (n - 1.0) / n + 1e-10);
        let later = measure_case1(j, m0, &p, t + 2.0 * PI / p.omega_bar).unwrap();
        prop_assert!((later - m).abs() < 1e-9);
    }

    #[test]
    fn case_two_is_stationary(j in spin(8), gamma in 0.0..(PI / 2.0), t in 0.0..30.0f64) {
        let p = entangle_core::coupled_boson::ModeParams::with_gamma(1.0, 0.6, gamma.max(1e-3)).unwrap();
        let eigen = EigenAmplitudes::eigenstate(j, j).unwrap();
        let rho = rho1_general(&eigen, &p, t).unwrap();
        let diag = rho1_case2(j, j, p.gamma).unwrap();
        for (i, w) in diag.weights().iter().enumerate() {
            prop_assert!((rho.matrix()[(i, i)].re - w).abs() < 1e-12);
        }
        prop_assert!(rho.max_coherence() < 1e-12);
    }

    #[test]
    fn general_state_gives_valid_density(
        a in (-1.0..1.0f64, -1.0..1.0f64),
        b in (-1.0..1.0f64, -1.0..1.0f64),
        t in 0.0..10.0f64,
    ) {
        let (ca, cb) = (C64::new(a.0, a.1), C64::new(b.0, b.1));
        let norm = (ca.norm_sqr() + cb.norm_sqr()).sqrt();
        prop_assume!(norm > 1e-3);
        let amps = EigenAmplitudes::new([
            (HalfInt::HALF, HalfInt::HALF, ca / norm),
            (HalfInt::ONE, HalfInt::ZERO, cb / norm),
        ]).unwrap();
        let p = derive_params(1.7, 1.1, 0.4).unwrap();
        let rho = rho1_general(&amps, &p, t).unwrap();
        prop_assert!(rho.matrix().max_asymmetry() < 1e-14);
        prop_assert!((rho.matrix().trace().re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn spin_boson_weights_normalized(
        twice in 1i32..=9,
        n1 in 0u32..30,
        kappa in 0.1..2.0f64,
        t in 0.0..15.0f64,
    ) {
        let spec = BlockSpec::new(n1, HalfInt::from_twice(twice), kappa, 1.0).unwrap();
        let rho = BlockDynamics::new(spec).unwrap().reduced(t);
        prop_assert!((rho.weights().iter().sum::<f64>() - 1.0).abs() < 1e-10);
        prop_assert!(rho.weights().iter().all(|w| *w >= -1e-12));
        let n = f64::from(twice + 1);
        prop_assert!(rho.measure() <= (n - 1.0) / n + 1e-10);
    }

    #[test]
    fn classical_chain_rule(j in 0.5..6.0f64, frac in -0.99..0.99f64, e in -3.0..3.0f64, k in 0.0..1.0f64, kappa in 0.1..2.0f64) {
        let x = frac * j;
        let f = |y: f64| jz_rate_squared(y, LambdaFlags::CLASSICAL, e, j, k, kappa);
        let h = 1e-5;
        let derivative = (f(x + h) - f(x - h)) / (2.0 * h);
        let scale = (kappa * kappa * j * j).max(1.0);
        prop_assert!((derivative - 2.0 * jz_acceleration(x, LambdaFlags::CLASSICAL, e, j, kappa)).abs() < 1e-8 * scale);
    }

    #[test]
    fn unitary_decomposition_roundtrip(h in hermitian_strategy(6), alpha in -3.0..3.0f64) {
        prop_assume!(h.dim() >= 2);
        let gens = generators(h.dim()).unwrap();
        let u = exp_i(alpha, &h).unwrap();
        let d = decompose_unitary(&u, &gens).unwrap();
        prop_assert!(d.reconstruct(&gens).sub(&u).max_abs() < 1e-10);
    }
}

#[test]
fn generator_commutators_close() {
    for n in 2..=5 {
        let gens = generators(n).unwrap();
        for a in gens.lambdas() {
            for b in gens.lambdas() {
                let c = a.matrix().commutator(b.matrix());
                assert!(c.add(&c.adjoint()).max_abs() < 1e-14);
                assert!(c.trace().norm() < 1e-14);
                let d = decompose_matrix(&c, &gens).unwrap();
                assert!(d.identity_coeff.norm() < 1e-14);
                assert!(d.reconstruct(&gens).sub(&c).max_abs() < 1e-10);
            }
        }
    }
}

#[test]
fn two_dimensional_generators_are_conjugate_paulis() {
    let gens = generators(2).unwrap();
    let z = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    let i = C64::new(0.0, 1.0);
    let sx = CMatrix::from_rows(&[&[z, one], &[one, z]]).unwrap();
    let sy = CMatrix::from_rows(&[&[z, -i], &[i, z]]).unwrap();
    let sz = CMatrix::from_rows(&[&[one, z], &[z, -one]]).unwrap();
    let paulis = [&sx, &sy, &sz];
    for (g, s) in gens.lambdas().iter().zip(paulis) {
        let conj = sx.matmul(g.matrix()).matmul(&sx);
        assert!(conj.sub(s).max_abs() < 1e-15);
    }
    // same structure constants: [l1, l2] = 2i l3
    let l = gens.lambdas();
    let c = l[0].matrix().commutator(l[1].matrix());
    assert!(c.sub(&l[2].matrix().scale(C64::new(0.0, 2.0))).max_abs() < 1e-15);
}
