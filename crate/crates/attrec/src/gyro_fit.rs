//! Least-squares fit of the angular velocity as a Chebyshev polynomial from
//! one update interval's worth of gyro output.
//!
//! Both gyro output conventions are supported: rate samples (the measurement
//! is omega at the sub-interval end) and angular increments (the measurement
//! is the integral of omega over the sub-interval, which is what integrating
//! gyros deliver). In the increment path the design matrix rows are built
//! from integrated basis polynomials, so the fitted polynomial's *predicted
//! increments* are what gets matched in the least-squares sense.
//!
//! The solve goes through an SVD rather than normal equations: near-square
//! Chebyshev designs are mildly ill-conditioned and the orthogonal route
//! keeps the interpolation cases clean to machine precision.

use nalgebra::DMatrix;

use crate::cheb::{ChebSeries, IntervalMap};
use crate::error::{Error, Result};
use crate::quat::Vec3;

/// What a gyro sample means.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeasurementMode {
    /// Angular velocity sampled at the sub-interval end time (rad/s).
    Rate,
    /// Integral of angular velocity over the sub-interval (rad).
    Increment,
}

/// N gyro measurements covering one update interval of length t_N.
///
/// Sample times are interval-relative and strictly increasing in (0, t_N];
/// measurements arrive at sub-interval ends. In increment mode the times are
/// the sub-interval end boundaries and the sub-intervals partition [0, t_N].
#[derive(Debug, Clone)]
pub struct GyroBatch {
    interval_len: f64,
    mode: MeasurementMode,
    samples: Vec<(f64, Vec3)>,
}

impl GyroBatch {
    pub fn rates(interval_len: f64, samples: Vec<(f64, Vec3)>) -> Result<Self> {
        Self::validated(interval_len, MeasurementMode::Rate, samples)
    }

    pub fn increments(interval_len: f64, samples: Vec<(f64, Vec3)>) -> Result<Self> {
        let batch = Self::validated(interval_len, MeasurementMode::Increment, samples)?;
        let last = batch.samples.last().expect("validated non-empty").0;
        if (last - interval_len).abs() > 1e-9 * interval_len {
            return Err(Error::invalid(
                "gyro batch",
                format!("increments must partition [0, {interval_len}]; last boundary is {last}"),
            ));
        }
        Ok(batch)
    }

    fn validated(
        interval_len: f64,
        mode: MeasurementMode,
        samples: Vec<(f64, Vec3)>,
    ) -> Result<Self> {
        IntervalMap::new(interval_len)?;
        if samples.is_empty() {
            return Err(Error::invalid("gyro batch", "no samples"));
        }
        let mut prev = 0.0;
        for &(t, v) in &samples {
            if !(t > prev && t <= interval_len * (1.0 + 1e-12)) {
                return Err(Error::invalid(
                    "gyro batch",
                    format!("sample times must be strictly increasing within (0, {interval_len}]"),
                ));
            }
            if !v.is_finite() {
                return Err(Error::invalid("gyro batch", "non-finite sample"));
            }
            prev = t;
        }
        Ok(Self {
            interval_len,
            mode,
            samples,
        })
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn mode(&self) -> MeasurementMode {
        self.mode
    }

    pub fn interval_len(&self) -> f64 {
        self.interval_len
    }

    pub fn samples(&self) -> &[(f64, Vec3)] {
        &self.samples
    }
}

/// Fitted angular velocity: Chebyshev coefficients over the mapped interval
/// plus the interval length that defines the mapping.
#[derive(Debug, Clone)]
pub struct OmegaFit {
    coeffs: ChebSeries<Vec3>,
    interval_len: f64,
}

impl OmegaFit {
    /// Wrap existing coefficients; mainly for tests with analytic fits.
    pub fn from_coeffs(coeffs: ChebSeries<Vec3>, interval_len: f64) -> Result<Self> {
        IntervalMap::new(interval_len)?;
        Ok(Self {
            coeffs,
            interval_len,
        })
    }

    pub fn coeffs(&self) -> &ChebSeries<Vec3> {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.degree()
    }

    pub fn interval_len(&self) -> f64 {
        self.interval_len
    }

    /// Evaluate the fitted angular velocity at a time in [0, t_N].
    pub fn eval_omega(&self, t: f64) -> Result<Vec3> {
        let tau = IntervalMap::new(self.interval_len)?.to_tau(t)?;
        Ok(self.coeffs.eval(tau))
    }

    /// Max |omega| over a uniform grid; a practical stand-in for the sup over
    /// the interval.
    pub fn sup_norm(&self, grid: usize) -> f64 {
        (0..=grid)
            .map(|k| {
                let tau = -1.0 + 2.0 * k as f64 / grid as f64;
                self.coeffs.eval(tau).norm()
            })
            .fold(0.0, f64::max)
    }
}

/// Basis values F_0..F_degree at one point, by the forward recurrence.
fn basis_row(tau: f64, degree: usize) -> Vec<f64> {
    let mut row = Vec::with_capacity(degree + 1);
    row.push(1.0);
    if degree >= 1 {
        row.push(tau);
    }
    for i in 2..=degree {
        row.push(2.0 * tau * row[i - 1] - row[i - 2]);
    }
    row
}

/// Least-squares fit to rate samples. `degree` must be at most N - 1; when it
/// equals N - 1 the system is square and the fit interpolates the samples.
pub fn fit_rates(batch: &GyroBatch, degree: usize) -> Result<OmegaFit> {
    if batch.mode() != MeasurementMode::Rate {
        return Err(Error::invalid("gyro batch", "fit_rates needs rate samples"));
    }
    let map = IntervalMap::new(batch.interval_len())?;
    let design: Vec<Vec<f64>> = batch
        .samples()
        .iter()
        .map(|&(t, _)| Ok(basis_row(map.to_tau(t.min(batch.interval_len()))?, degree)))
        .collect::<Result<_>>()?;
    solve(batch, degree, design)
}

/// Least-squares fit to angular increments: the fitted polynomial's predicted
/// increment over each sub-interval matches the measured one.
pub fn fit_increments(batch: &GyroBatch, degree: usize) -> Result<OmegaFit> {
    if batch.mode() != MeasurementMode::Increment {
        return Err(Error::invalid(
            "gyro batch",
            "fit_increments needs increment samples",
        ));
    }
    let map = IntervalMap::new(batch.interval_len())?;
    // Integrated basis polynomials; the predicted increment over
    // [t_{k-1}, t_k] is (t_N / 2) * sum_i c_i (G_i(tau_k) - G_i(tau_{k-1})).
    let integrated: Vec<ChebSeries<f64>> = (0..=degree)
        .map(|i| {
            let mut unit = vec![0.0; i + 1];
            unit[i] = 1.0;
            ChebSeries::new(unit).integrate()
        })
        .collect();
    let half_len = batch.interval_len() / 2.0;
    let mut prev_tau = -1.0;
    let mut design = Vec::with_capacity(batch.len());
    for &(t, _) in batch.samples() {
        let tau = map.to_tau(t.min(batch.interval_len()))?;
        design.push(
            integrated
                .iter()
                .map(|g| half_len * (g.eval(tau) - g.eval(prev_tau)))
                .collect::<Vec<f64>>(),
        );
        prev_tau = tau;
    }
    solve(batch, degree, design)
}

fn solve(batch: &GyroBatch, degree: usize, design: Vec<Vec<f64>>) -> Result<OmegaFit> {
    let n_samples = batch.len();
    if degree > n_samples - 1 {
        return Err(Error::FitDegreeTooHigh {
            degree,
            max: n_samples - 1,
            n_samples,
        });
    }
    let cols = degree + 1;
    let a = DMatrix::from_fn(n_samples, cols, |r, c| design[r][c]);
    let rhs = DMatrix::from_fn(n_samples, 3, |r, axis| {
        let v = batch.samples()[r].1;
        match axis {
            0 => v.x,
            1 => v.y,
            _ => v.z,
        }
    });
    let svd = a.svd(true, true);
    let tol = svd.singular_values.max() * f64::EPSILON * n_samples.max(cols) as f64;
    let rank = svd.rank(tol);
    if rank < cols {
        return Err(Error::RankDeficientFit { rank, cols });
    }
    let sol = svd
        .solve(&rhs, tol)
        .expect("SVD was computed with both factors");
    let coeffs = (0..cols)
        .map(|i| Vec3::new(sol[(i, 0)], sol[(i, 1)], sol[(i, 2)]))
        .collect();
    Ok(OmegaFit {
        coeffs: ChebSeries::new(coeffs),
        interval_len: batch.interval_len(),
    })
}

/// Predicted increments of a fit over sub-intervals ending at `boundaries`;
/// used by tests and the rate/increment consistency checks.
pub fn predicted_increments(fit: &OmegaFit, boundaries: &[f64]) -> Result<Vec<Vec3>> {
    let map = IntervalMap::new(fit.interval_len())?;
    let integral: ChebSeries<Vec3> = fit.coeffs().integrate();
    let mut prev_tau = -1.0;
    let mut out = Vec::with_capacity(boundaries.len());
    for &t in boundaries {
        let tau = map.to_tau(t)?;
        let delta = integral.eval(tau) - integral.eval(prev_tau);
        out.push(delta * (fit.interval_len() / 2.0));
        prev_tau = tau;
    }
    Ok(out)
}
