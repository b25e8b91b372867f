//! Rotation matrix elements `U^{(J)}_{mu1 mu2}(gamma) = <J; mu2| exp(-i gamma J_y) |J; mu1>`.
//!
//! In the usual small-d notation this is `d^J_{mu2 mu1}(gamma)`. Three
//! independent routes are provided: the finite alternating sum (primary),
//! the Jacobi-polynomial form reached through symmetry relations, and the
//! closed form of the highest-weight row.

use alloc::vec::Vec;

use num_traits::Float;

use twofloat::TwoFloat;

use crate::algebra::combinatorics::binomial_exact;
use crate::algebra::{binomial, log_factorial};
use crate::{Error, HalfInt, Result};

/// Largest `J` accepted by the rotation-matrix routines.
pub const MAX_J: HalfInt = HalfInt::integer(40);

pub(crate) fn check_label(j: HalfInt, m: HalfInt) -> Result<()> {
    if j.twice() < 0 || m.abs() > j || (j.twice() - m.twice()) % 2 != 0 {
        return Err(Error::InvalidQuantumNumbers { j, m });
    }
    Ok(())
}

pub(crate) fn check_cap(j: HalfInt) -> Result<()> {
    if j > MAX_J {
        return Err(Error::SpinCap { j, cap: MAX_J });
    }
    Ok(())
}

fn lf(n: i32) -> f64 {
    // callers guarantee 0 <= n <= 2 * MAX_J
    log_factorial(n as u32).expect("factorial argument within cap")
}

/// Rotation matrix element by the finite binomial sum.
pub fn wigner_u(j: HalfInt, mu1: HalfInt, mu2: HalfInt, gamma: f64) -> Result<f64> {
    check_label(j, mu1)?;
    check_label(j, mu2)?;
    check_cap(j)?;
    Ok(small_d_sum(j, mu2, mu1, gamma))
}

/// `d^j_{mp m}(beta)` as the alternating sum over `s`, written as
/// `sqrt[(j+mp)!(j-mp)! / ((j+m)!(j-m)!)] sum_s (-1)^(mp-m+s) C(j+m, s) C(j-m, j-mp-s) c^. s^.`
/// and accumulated in double-double: the terms cancel by many orders of
/// magnitude once `j` reaches the tens.
fn small_d_sum(j: HalfInt, mp: HalfInt, m: HalfInt, beta: f64) -> f64 {
    let jpm = (j + m).twice() / 2;
    let jmm = (j - m).twice() / 2;
    let jpmp = (j + mp).twice() / 2;
    let jmmp = (j - mp).twice() / 2;
    let e = (mp - m).twice() / 2;
    let c = TwoFloat::from((beta / 2.0).cos());
    let s = TwoFloat::from((beta / 2.0).sin());
    let lo = (-e).max(0);
    let hi = jpm.min(jmmp);
    let mut acc = TwoFloat::from(0.0);
    for k in lo..=hi {
        let b1 = binomial_exact(jpm as u32, k as u32).expect("fits u128 below the spin cap");
        let b2 = binomial_exact(jmm as u32, (jmmp - k) as u32).expect("fits u128 below the spin cap");
        let term = TwoFloat::from(b1) * TwoFloat::from(b2)
            * dd_pow(c, jpm + jmmp - 2 * k)
            * dd_pow(s, e + 2 * k);
        if (e + k) % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    let prefactor = (0.5 * (lf(jpmp) + lf(jmmp) - lf(jpm) - lf(jmm))).exp();
    prefactor * acc.hi()
}

fn dd_pow(x: TwoFloat, n: i32) -> TwoFloat {
    (0..n).fold(TwoFloat::from(1.0), |acc, _| acc * x)
}

/// Rotation matrix element through a Jacobi polynomial with non-negative
/// parameters, selected by the smallest of `J +- mu1`, `J +- mu2`.
pub fn wigner_u_jacobi(j: HalfInt, mu1: HalfInt, mu2: HalfInt, gamma: f64) -> Result<f64> {
    check_label(j, mu1)?;
    check_label(j, mu2)?;
    check_cap(j)?;
    // d^j_{mp m} with mp = mu2, m = mu1
    let (mp, m) = (mu2, mu1);
    let candidates = [
        ((j + m).twice() / 2, (mp - m).twice() / 2, (mp - m).twice() / 2),
        ((j - m).twice() / 2, (m - mp).twice() / 2, 0),
        ((j + mp).twice() / 2, (m - mp).twice() / 2, 0),
        ((j - mp).twice() / 2, (mp - m).twice() / 2, (mp - m).twice() / 2),
    ];
    let &(k, a, lambda) = candidates.iter().min_by_key(|c| c.0).expect("four candidates");
    let b = j.twice() - 2 * k - a;
    let sign = if lambda.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    let ratio = binomial((j.twice() - k) as u32, (k + a) as u32)? / binomial((k + b) as u32, b as u32)?;
    let p = jacobi_poly(k as u32, i64::from(a), i64::from(b), gamma.cos())?;
    Ok(sign * ratio.sqrt() * (gamma / 2.0).sin().powi(a) * (gamma / 2.0).cos().powi(b) * p)
}

/// Closed form of the column `U^{(J)}_{mu, J}(gamma)`.
pub fn wigner_u_highest(j: HalfInt, mu: HalfInt, gamma: f64) -> Result<f64> {
    check_label(j, mu)?;
    check_cap(j)?;
    let jpm = (j + mu).twice() / 2;
    let jmm = (j - mu).twice() / 2;
    let coeff = (0.5 * (lf(j.twice()) - lf(jpm) - lf(jmm))).exp();
    Ok(coeff * (-(gamma / 2.0).sin()).powi(jmm) * (gamma / 2.0).cos().powi(jpm))
}

/// Jacobi polynomial `P_n^{(alpha, beta)}(x)` by the three-term recurrence.
pub fn jacobi_poly(n: u32, alpha: i64, beta: i64, x: f64) -> Result<f64> {
    if alpha < 0 || beta < 0 {
        return Err(Error::NegativeJacobiParameter { alpha, beta });
    }
    let (a, b) = (alpha as f64, beta as f64);
    let mut prev = 1.0;
    if n == 0 {
        return Ok(prev);
    }
    let mut cur = 0.5 * ((a - b) + (a + b + 2.0) * x);
    for k in 2..=n {
        let k = f64::from(k);
        let s = 2.0 * k + a + b;
        let c1 = 2.0 * k * (k + a + b) * (s - 2.0);
        let c2 = (s - 1.0) * (s * (s - 2.0) * x + a * a - b * b);
        let c3 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * s;
        let next = (c2 * cur - c3 * prev) / c1;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Real orthogonal `(2J + 1) x (2J + 1)` rotation matrix, indices ascending in `mu`.
#[derive(Clone, Debug, PartialEq)]
pub struct WignerMatrix {
    j: HalfInt,
    gamma: f64,
    entries: Vec<f64>,
}

impl WignerMatrix {
    pub fn j(&self) -> HalfInt {
        self.j
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn dim(&self) -> usize {
        (self.j.twice() + 1) as usize
    }

    /// `U_{mu1 mu2}`; labels must be valid for this `J`.
    pub fn get(&self, mu1: HalfInt, mu2: HalfInt) -> f64 {
        self.entries[self.index(mu1) * self.dim() + self.index(mu2)]
    }

    /// Entry by zero-based positions (`position = mu + J`).
    pub fn at(&self, row: usize, col: usize) -> f64 {
        self.entries[row * self.dim() + col]
    }

    fn index(&self, mu: HalfInt) -> usize {
        debug_assert!(check_label(self.j, mu).is_ok());
        ((mu + self.j).twice() / 2) as usize
    }

    /// `max |(U^T U - I)_{pq}|`.
    pub fn orthogonality_defect(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0f64;
        for p in 0..n {
            for q in 0..n {
                let dot: f64 = (0..n).map(|r| self.at(r, p) * self.at(r, q)).sum();
                let target = if p == q { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).abs());
            }
        }
        worst
    }
}

/// The full rotation matrix for angular momentum `j`.
pub fn wigner_matrix(j: HalfInt, gamma: f64) -> Result<WignerMatrix> {
    check_label(j, j)?;
    check_cap(j)?;
    let labels: Vec<HalfInt> = HalfInt::ladder(j).collect();
    let mut entries = Vec::with_capacity(labels.len() * labels.len());
    for &mu1 in &labels {
        for &mu2 in &labels {
            entries.push(small_d_sum(j, mu2, mu1, gamma));
        }
    }
    Ok(WignerMatrix { j, gamma, entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_6, PI};

    fn h(twice: i32) -> HalfInt {
        HalfInt::from_twice(twice)
    }

    /// Exact explicit-sum Jacobi polynomial over rationals, `x = num / den`.
    /// `P_n(x) = sum_s C(n+a, n-s) C(n+b, s) ((x-1)/2)^s ((x+1)/2)^(n-s)`.
    fn jacobi_rational(n: i64, a: i64, b: i64, num: i64, den: i64) -> (i128, i128) {
        fn c(n: i64, k: i64) -> i128 {
            if k < 0 || k > n {
                return 0;
            }
            (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128)
        }
        // common denominator (2 den)^n
        let mut total: i128 = 0;
        for s in 0..=n {
            let minus = (num - den) as i128;
            let plus = (num + den) as i128;
            total += c(n + a, n - s) * c(n + b, s) * minus.pow(s as u32) * plus.pow((n - s) as u32);
        }
        (total, (2 * den as i128).pow(n as u32))
    }

    #[test]
    fn jacobi_matches_exact_rationals() {
        assert_eq!(jacobi_poly(0, 3, 1, 0.3).unwrap(), 1.0);
        assert_eq!(jacobi_poly(1, 0, 0, 0.3).unwrap(), 0.3);
        let (num, den) = jacobi_rational(2, 1, 1, 1, 2);
        assert_eq!((num, den), (3, 16));
        assert!((jacobi_poly(2, 1, 1, 0.5).unwrap() - 3.0 / 16.0).abs() < 1e-15);
        for &(n, a, b) in &[(3, 0, 2), (5, 2, 3), (7, 1, 0), (6, 4, 4)] {
            let (num, den) = jacobi_rational(n, a, b, -3, 10);
            let exact = num as f64 / den as f64;
            let got = jacobi_poly(n as u32, a, b, -0.3).unwrap();
            assert!((got - exact).abs() < 1e-13, "P_{n}^({a},{b}): {got} vs {exact}");
        }
        assert!(jacobi_poly(2, -1, 0, 0.1).is_err());
    }

    #[test]
    fn spin_half_elements() {
        let g = 0.83;
        assert!((wigner_u(h(1), h(1), h(1), g).unwrap() - (g / 2.0).cos()).abs() < 1e-15);
        assert!((wigner_u(h(1), h(-1), h(1), g).unwrap() + (g / 2.0).sin()).abs() < 1e-15);
    }

    #[test]
    fn zero_angle_is_identity() {
        for twice in 0..12 {
            let u = wigner_matrix(h(twice), 0.0).unwrap();
            for r in 0..u.dim() {
                for c in 0..u.dim() {
                    assert!((u.at(r, c) - if r == c { 1.0 } else { 0.0 }).abs() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn orthogonal_and_inverse_by_negated_angle() {
        for twice in (0..=40).chain([61, 80]) {
            for &g in &[0.0, FRAC_PI_6, FRAC_PI_4, FRAC_PI_2] {
                let u = wigner_matrix(h(twice), g).unwrap();
                assert!(u.orthogonality_defect() < 1e-10, "J={twice}/2 gamma={g}");
                let v = wigner_matrix(h(twice), -g).unwrap();
                let n = u.dim();
                for p in 0..n {
                    for q in 0..n {
                        let prod: f64 = (0..n).map(|r| u.at(p, r) * v.at(r, q)).sum();
                        let want = if p == q { 1.0 } else { 0.0 };
                        assert!((prod - want).abs() < 1e-10);
                        // U_{mu2 mu1}(gamma) = U_{mu1 mu2}(-gamma)
                        assert!((u.at(q, p) - v.at(p, q)).abs() < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn three_routes_agree() {
        for twice in 0..=14 {
            let j = h(twice);
            for &g in &[0.37, FRAC_PI_4, FRAC_PI_2, 2.9, PI] {
                for mu1 in HalfInt::ladder(j) {
                    for mu2 in HalfInt::ladder(j) {
                        let sum = wigner_u(j, mu1, mu2, g).unwrap();
                        let jac = wigner_u_jacobi(j, mu1, mu2, g).unwrap();
                        assert!((sum - jac).abs() < 1e-11, "J={j} {mu1} {mu2} g={g}: {sum} vs {jac}");
                    }
                    let top = wigner_u_highest(j, mu1, g).unwrap();
                    assert!((top - wigner_u(j, mu1, j, g).unwrap()).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn invalid_labels() {
        assert!(wigner_u(h(2), h(1), h(0), 0.1).is_err());
        assert!(wigner_u(h(2), h(4), h(0), 0.1).is_err());
        assert!(matches!(wigner_matrix(h(82), 0.1), Err(Error::SpinCap { .. })));
    }
}
