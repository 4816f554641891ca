//! Chebyshev polynomials of the first kind on [-1, 1].
//!
//! Series carry scalar, vector, quaternion or matrix coefficients through one
//! generic container. The three workhorse operations are Clenshaw evaluation,
//! indefinite integration from -1 (every integrated basis polynomial is again
//! a short combination of basis polynomials), and the product reduction
//! `F_j F_k = (F_{j+k} + F_{|j-k|}) / 2`, which keeps polynomial arithmetic
//! closed in coefficient space.

use crate::error::{Error, Result};
use crate::quat::{Mat3, Quaternion, Vec3};

/// Coefficient types a [`ChebSeries`] can carry.
pub trait Coeff: Copy {
    /// Number of scalar entries, used for RMS normalization.
    const DIMS: usize;
    fn zero() -> Self;
    fn add(self, other: Self) -> Self;
    fn sub(self, other: Self) -> Self;
    fn scale(self, k: f64) -> Self;
    fn norm_sq(self) -> f64;
    fn is_finite(self) -> bool;
}

impl Coeff for f64 {
    const DIMS: usize = 1;
    fn zero() -> Self {
        0.0
    }
    fn add(self, other: Self) -> Self {
        self + other
    }
    fn sub(self, other: Self) -> Self {
        self - other
    }
    fn scale(self, k: f64) -> Self {
        self * k
    }
    fn norm_sq(self) -> f64 {
        self * self
    }
    fn is_finite(self) -> bool {
        f64::is_finite(self)
    }
}

impl Coeff for Vec3 {
    const DIMS: usize = 3;
    fn zero() -> Self {
        Vec3::zero()
    }
    fn add(self, other: Self) -> Self {
        self + other
    }
    fn sub(self, other: Self) -> Self {
        self - other
    }
    fn scale(self, k: f64) -> Self {
        self * k
    }
    fn norm_sq(self) -> f64 {
        Vec3::norm_sq(self)
    }
    fn is_finite(self) -> bool {
        Vec3::is_finite(self)
    }
}

impl Coeff for Quaternion {
    const DIMS: usize = 4;
    fn zero() -> Self {
        Quaternion::zero()
    }
    fn add(self, other: Self) -> Self {
        self + other
    }
    fn sub(self, other: Self) -> Self {
        self - other
    }
    fn scale(self, k: f64) -> Self {
        Quaternion::scale(self, k)
    }
    fn norm_sq(self) -> f64 {
        Quaternion::norm_sq(self)
    }
    fn is_finite(self) -> bool {
        Quaternion::is_finite(self)
    }
}

impl Coeff for Mat3 {
    const DIMS: usize = 9;
    fn zero() -> Self {
        Mat3::zero()
    }
    fn add(self, other: Self) -> Self {
        let mut m = self.0;
        for (row, orow) in m.iter_mut().zip(other.0.iter()) {
            for (a, b) in row.iter_mut().zip(orow.iter()) {
                *a += b;
            }
        }
        Mat3(m)
    }
    fn sub(self, other: Self) -> Self {
        self.add(other.scale(-1.0))
    }
    fn scale(self, k: f64) -> Self {
        let mut m = self.0;
        for row in m.iter_mut() {
            for a in row.iter_mut() {
                *a *= k;
            }
        }
        Mat3(m)
    }
    fn norm_sq(self) -> f64 {
        self.0.iter().flatten().map(|a| a * a).sum()
    }
    fn is_finite(self) -> bool {
        self.0.iter().flatten().all(|a| a.is_finite())
    }
}

/// A truncated Chebyshev expansion: `coeffs[i]` weights the degree-i basis
/// polynomial. Dense storage, index = degree.
#[derive(Debug, Clone, PartialEq)]
pub struct ChebSeries<T> {
    coeffs: Vec<T>,
}

impl<T: Coeff> ChebSeries<T> {
    /// Build from coefficients ordered by degree. Must be non-empty.
    pub fn new(coeffs: Vec<T>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least one coefficient");
        Self { coeffs }
    }

    /// The constant series with a single degree-0 coefficient.
    pub fn constant(c: T) -> Self {
        Self { coeffs: vec![c] }
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of the degree-i polynomial; zero past the stored degree.
    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).copied().unwrap_or_else(T::zero)
    }

    /// Mutable access to a stored coefficient.
    pub fn coeff_mut(&mut self, i: usize) -> &mut T {
        &mut self.coeffs[i]
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_finite())
    }

    /// Evaluate at `tau` by the backward (Clenshaw) recurrence.
    ///
    /// Arguments outside [-1, 1] are accepted for diagnostics; the recurrence
    /// still evaluates the polynomial, it just no longer enjoys the bounded
    /// basis.
    pub fn eval(&self, tau: f64) -> T {
        let n = self.coeffs.len();
        if n == 1 {
            return self.coeffs[0];
        }
        let mut b1 = T::zero();
        let mut b2 = T::zero();
        for k in (1..n).rev() {
            let next = self.coeffs[k].add(b1.scale(2.0 * tau)).sub(b2);
            b2 = b1;
            b1 = next;
        }
        self.coeffs[0].add(b1.scale(tau)).sub(b2)
    }

    /// Coefficients of `tau -> integral of self from -1 to tau`.
    ///
    /// Per-degree rule: the degree-1 input splits between degrees 2 and 0;
    /// degree i >= 2 feeds degrees i+1 and i-1 plus a constant correction
    /// (-1)^i / (i^2 - 1) that zeroes the value at tau = -1; the degree-0
    /// input integrates to F_0 + F_1 (the i = 0 instance of the same rule
    /// with F_{-1} read as F_1). Output degree is input degree + 1.
    pub fn integrate(&self) -> ChebSeries<T> {
        let mut out = vec![T::zero(); self.coeffs.len() + 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            match i {
                0 => {
                    out[0] = out[0].add(a);
                    out[1] = out[1].add(a);
                }
                1 => {
                    out[2] = out[2].add(a.scale(0.25));
                    out[0] = out[0].sub(a.scale(0.25));
                }
                _ => {
                    let deg = i as f64;
                    out[i + 1] = out[i + 1].add(a.scale(1.0 / (2.0 * (deg + 1.0))));
                    out[i - 1] = out[i - 1].sub(a.scale(1.0 / (2.0 * (deg - 1.0))));
                    let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
                    out[0] = out[0].sub(a.scale(sign / (deg * deg - 1.0)));
                }
            }
        }
        ChebSeries { coeffs: out }
    }

    /// Keep degrees 0..=max_degree.
    pub fn truncated(&self, max_degree: usize) -> ChebSeries<T> {
        let keep = self.coeffs.len().min(max_degree + 1);
        ChebSeries {
            coeffs: self.coeffs[..keep].to_vec(),
        }
    }

    pub fn scaled(&self, k: f64) -> ChebSeries<T> {
        ChebSeries {
            coeffs: self.coeffs.iter().map(|c| c.scale(k)).collect(),
        }
    }

    /// Coefficient-wise sum, zero-padding the shorter series.
    pub fn add_series(&self, other: &ChebSeries<T>) -> ChebSeries<T> {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|i| self.coeff(i).add(other.coeff(i))).collect();
        ChebSeries { coeffs }
    }
}

/// Series of the pointwise product `combine(a(tau), b(tau))` for any bilinear
/// `combine`, via the basis reduction `F_j F_k = (F_{j+k} + F_{|j-k|}) / 2`.
///
/// Output degree is exactly deg(a) + deg(b).
pub fn product<A, B, C>(
    a: &ChebSeries<A>,
    b: &ChebSeries<B>,
    combine: impl Fn(A, B) -> C,
) -> ChebSeries<C>
where
    A: Coeff,
    B: Coeff,
    C: Coeff,
{
    let mut out = vec![C::zero(); a.coeffs.len() + b.coeffs.len() - 1];
    for (i, &ai) in a.coeffs.iter().enumerate() {
        for (j, &bj) in b.coeffs.iter().enumerate() {
            let half = combine(ai, bj).scale(0.5);
            out[i + j] = out[i + j].add(half);
            out[i.abs_diff(j)] = out[i.abs_diff(j)].add(half);
        }
    }
    ChebSeries { coeffs: out }
}

/// RMS over all scalar entries of the coefficient-wise difference, with the
/// shorter series zero-padded to the longer degree.
pub fn coeff_rms_diff<T: Coeff>(a: &ChebSeries<T>, b: &ChebSeries<T>) -> f64 {
    let len = a.coeffs.len().max(b.coeffs.len());
    let sum: f64 = (0..len)
        .map(|i| a.coeff(i).sub(b.coeff(i)).norm_sq())
        .sum();
    (sum / (len * T::DIMS) as f64).sqrt()
}

/// Affine map between an update interval [0, t_N] and the Chebyshev domain
/// [-1, 1], via t = t_N (1 + tau) / 2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntervalMap {
    length: f64,
}

impl IntervalMap {
    pub fn new(length: f64) -> Result<Self> {
        if !(length > 0.0 && length.is_finite()) {
            return Err(Error::invalid(
                "interval length",
                format!("{length} s is not a positive finite duration"),
            ));
        }
        Ok(Self { length })
    }

    /// Interval length t_N in seconds.
    pub fn length(&self) -> f64 {
        self.length
    }

    /// Map a time in [0, t_N] to [-1, 1].
    pub fn to_tau(&self, t: f64) -> Result<f64> {
        if !(0.0..=self.length).contains(&t) {
            return Err(Error::TimeOutOfInterval {
                t,
                interval: self.length,
            });
        }
        Ok(2.0 * t / self.length - 1.0)
    }

    /// Inverse map; total, for diagnostics outside the nominal domain too.
    pub fn to_time(&self, tau: f64) -> f64 {
        self.length * (1.0 + tau) / 2.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    /// Composite 5-point Gauss-Legendre quadrature; machine-exact for the
    /// polynomial degrees used in these tests.
    fn quad(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
        const NODES: [f64; 5] = [
            -0.906179845938664,
            -0.5384693101056831,
            0.0,
            0.5384693101056831,
            0.906179845938664,
        ];
        const WEIGHTS: [f64; 5] = [
            0.23692688505618908,
            0.47862867049936647,
            0.5688888888888889,
            0.47862867049936647,
            0.23692688505618908,
        ];
        let h = (b - a) / panels as f64;
        let mut total = 0.0;
        for p in 0..panels {
            let mid = a + (p as f64 + 0.5) * h;
            for (x, w) in NODES.iter().zip(WEIGHTS.iter()) {
                total += w * f(mid + 0.5 * h * x);
            }
        }
        total * 0.5 * h
    }

    fn deterministic_series(degree: usize, seed: u64) -> ChebSeries<f64> {
        let mut x = seed as f64 * 0.137 + 0.41;
        let coeffs = (0..=degree)
            .map(|_| {
                x = (x * 53.7 + 1.3).sin();
                2.0 * x
            })
            .collect();
        ChebSeries::new(coeffs)
    }

    #[test]
    fn eval_examples() {
        // Pure F_2 at 0.5 is 2 * 0.25 - 1.
        let f2 = ChebSeries::new(vec![0.0, 0.0, 1.0]);
        assert_close(f2.eval(0.5), -0.5, 1e-15);
        // A constant series is constant.
        let c = ChebSeries::constant(3.25);
        for tau in [-1.0, -0.3, 0.0, 0.9, 1.0] {
            assert_close(c.eval(tau), 3.25, 0.0);
        }
        // Every basis polynomial is 1 at tau = 1.
        let s = ChebSeries::new(vec![1.0, 2.0, 3.0]);
        assert_close(s.eval(1.0), 6.0, 1e-15);
    }

    #[test]
    fn integrate_examples() {
        // Odd integrand over the symmetric interval.
        let f1 = ChebSeries::new(vec![0.0, 1.0]);
        assert_close(f1.integrate().eval(1.0), 0.0, 1e-15);
        // Quadrature value of the full-interval integral of F_2.
        let f2 = ChebSeries::new(vec![0.0, 0.0, 1.0]);
        assert_close(f2.integrate().eval(1.0), -2.0 / 3.0, 1e-15);
        // The i = 0 index handling: integral of 1 from -1 to 0.
        let f0 = ChebSeries::constant(1.0);
        assert_close(f0.integrate().eval(0.0), 1.0, 1e-15);
    }

    #[test]
    fn integrate_starts_at_zero_and_raises_degree() {
        for degree in 0..=12 {
            let s = deterministic_series(degree, degree as u64);
            let integral = s.integrate();
            assert_eq!(integral.degree(), degree + 1);
            assert_close(integral.eval(-1.0), 0.0, 1e-13);
        }
    }

    #[test]
    fn integrate_matches_quadrature() {
        let taus: Vec<f64> = (0..20).map(|k| -0.975 + 0.1 * k as f64).collect();
        for degree in [0, 1, 2, 3, 5, 8, 12] {
            let s = deterministic_series(degree, 7 + degree as u64);
            let integral = s.integrate();
            for &tau in &taus {
                let expected = quad(|x| s.eval(x), -1.0, tau, 64);
                assert_close(integral.eval(tau), expected, 1e-12);
            }
        }
    }

    #[test]
    fn integral_derivative_recovers_integrand() {
        let s = deterministic_series(9, 3);
        let integral = s.integrate();
        let h = 1e-6;
        for k in 0..20 {
            let tau = -0.9 + 0.09 * k as f64;
            let fd = (integral.eval(tau + h) - integral.eval(tau - h)) / (2.0 * h);
            assert_close(fd, s.eval(tau), 1e-7);
        }
    }

    #[test]
    fn product_examples() {
        // F_1 * F_1 = (F_2 + F_0) / 2.
        let f1 = ChebSeries::new(vec![0.0, 1.0]);
        let sq = product(&f1, &f1, |a, b| a * b);
        assert_eq!(sq.coeffs(), &[0.5, 0.0, 0.5]);
        // A constant factor scales the other series.
        let k = ChebSeries::constant(2.5);
        let s = deterministic_series(4, 11);
        let scaled = product(&k, &s, |a, b| a * b);
        for (got, want) in scaled.coeffs().iter().zip(s.coeffs()) {
            assert_close(*got, 2.5 * want, 1e-15);
        }
    }

    #[test]
    fn product_degree_bookkeeping_is_exact() {
        for (da, db) in [(0, 0), (0, 5), (3, 3), (7, 2), (12, 9)] {
            let a = deterministic_series(da, 21);
            let b = deterministic_series(db, 22);
            assert_eq!(product(&a, &b, |x, y| x * y).degree(), da + db);
        }
    }

    #[test]
    fn product_evaluates_to_pointwise_product() {
        let a = deterministic_series(3, 31);
        let b = deterministic_series(3, 32);
        let ab = product(&a, &b, |x, y| x * y);
        assert_close(ab.eval(0.3), a.eval(0.3) * b.eval(0.3), 1e-13);
    }

    #[test]
    fn triple_product_matches_direct_evaluation() {
        let a = deterministic_series(4, 41);
        let b = deterministic_series(3, 42);
        let c = deterministic_series(2, 43);
        let abc = product(&product(&a, &b, |x, y| x * y), &c, |x, y| x * y);
        for k in 0..15 {
            let tau = -0.95 + 0.13 * k as f64;
            assert_close(abc.eval(tau), a.eval(tau) * b.eval(tau) * c.eval(tau), 1e-12);
        }
    }

    #[test]
    fn time_map_endpoints() {
        let m = IntervalMap::new(0.08).unwrap();
        assert_close(m.to_tau(0.0).unwrap(), -1.0, 0.0);
        assert_close(m.to_tau(0.08).unwrap(), 1.0, 0.0);
        assert_close(m.to_tau(0.04).unwrap(), 0.0, 0.0);
        assert!(m.to_tau(-0.01).is_err());
        assert!(m.to_tau(0.09).is_err());
        assert!(IntervalMap::new(0.0).is_err());
        assert!(IntervalMap::new(-1.0).is_err());
    }

    #[test]
    fn rms_diff_zero_pads() {
        let a = ChebSeries::new(vec![1.0, 2.0]);
        let b = ChebSeries::new(vec![1.0, 2.0, 3.0]);
        // Difference is (0, 0, 3) over 3 entries.
        assert_close(coeff_rms_diff(&a, &b), (9.0_f64 / 3.0).sqrt(), 1e-15);
        assert_close(coeff_rms_diff(&a, &a), 0.0, 0.0);
    }

    proptest! {
        #[test]
        fn prop_product_homomorphism(
            a in proptest::collection::vec(-2.0..2.0f64, 1..6),
            b in proptest::collection::vec(-2.0..2.0f64, 1..6),
            tau in -1.0..1.0f64,
        ) {
            let sa = ChebSeries::new(a);
            let sb = ChebSeries::new(b);
            let ab = product(&sa, &sb, |x, y| x * y);
            let direct = sa.eval(tau) * sb.eval(tau);
            prop_assert!((ab.eval(tau) - direct).abs() <= 1e-12);
        }

        #[test]
        fn prop_time_map_roundtrip(length in 1e-3..10.0f64, frac in 0.0..1.0f64) {
            let m = IntervalMap::new(length).unwrap();
            let t = length * frac;
            let tau = m.to_tau(t).unwrap();
            prop_assert!((m.to_time(tau) - t).abs() <= 1e-12 * length.max(1.0));
            prop_assert!((-1.0..=1.0).contains(&tau));
        }
    }
}
