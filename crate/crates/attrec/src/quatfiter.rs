//! Functional iterative integration of the quaternion kinematics in
//! Chebyshev coefficient space.
//!
//! One update interval's fitted angular velocity is substituted into the
//! integral form of the kinematic equation,
//!
//! ```text
//! q_{l+1}(t) = 1 + 1/2 * integral_0^t q_l o omega
//! ```
//!
//! and the whole iteration is carried out on Chebyshev coefficients: the
//! quaternion-times-rate product reduces degree pairs through the basis
//! product identity, the integral maps basis polynomials to basis
//! polynomials, and the identity quaternion lands on the degree-0
//! coefficient. Each iterate is a finite polynomial; truncation to a
//! prescribed degree caps the per-iteration cost, and the first neglected
//! coefficient both bounds the truncation error and feeds the run's error
//! estimate. Normalization is deliberately *not* part of the iteration - a
//! normalized iterate would no longer be a polynomial - and happens only
//! when an attitude is evaluated out of the converged solution.
//!
//! The iterates form exactly the Picard successive-approximation sequence of
//! the integral equation, which converges for any bounded
//! `interval * sup|omega|`; the tail of the sequence shrinks like
//! `(interval * sup|omega|)^l / l!`.

use crate::cheb::{self, ChebSeries, Coeff, IntervalMap};
use crate::error::{Error, Result};
use crate::gyro_fit::OmegaFit;
use crate::quat::{Quaternion, Vec3};

/// One iterate of the coefficient-space iteration.
#[derive(Debug, Clone)]
pub struct QuatIterState {
    coeffs: ChebSeries<Quaternion>,
    iteration: usize,
    truncation: Option<usize>,
    interval_len: f64,
    spill: Quaternion,
}

impl QuatIterState {
    /// The iteration's starting point: the constant identity quaternion.
    pub fn initial(interval_len: f64, truncation: Option<usize>) -> Result<Self> {
        IntervalMap::new(interval_len)?;
        Ok(Self {
            coeffs: ChebSeries::constant(Quaternion::identity()),
            iteration: 0,
            truncation,
            interval_len,
            spill: Quaternion::zero(),
        })
    }

    /// Start from an arbitrary coefficient series instead of the identity;
    /// the iteration forgets the starting point anyway.
    pub fn from_series(
        coeffs: ChebSeries<Quaternion>,
        interval_len: f64,
        truncation: Option<usize>,
    ) -> Result<Self> {
        IntervalMap::new(interval_len)?;
        Ok(Self {
            coeffs,
            iteration: 0,
            truncation,
            interval_len,
            spill: Quaternion::zero(),
        })
    }

    pub fn coeffs(&self) -> &ChebSeries<Quaternion> {
        &self.coeffs
    }

    pub fn iteration(&self) -> usize {
        self.iteration
    }

    pub fn truncation(&self) -> Option<usize> {
        self.truncation
    }

    pub fn interval_len(&self) -> f64 {
        self.interval_len
    }

    /// Pre-truncation coefficient of degree `truncation + 1` from the most
    /// recent step; zero when nothing has been cut.
    pub fn spill(&self) -> Quaternion {
        self.spill
    }
}

/// Promote the fitted rate coefficients to zero-scalar quaternions once per
/// run, so the inner loop multiplies quaternions directly.
fn promote(fit: &OmegaFit) -> ChebSeries<Quaternion> {
    ChebSeries::new(
        fit.coeffs()
            .coeffs()
            .iter()
            .map(|&v| Quaternion::pure(v))
            .collect(),
    )
}

fn step_promoted(state: &QuatIterState, omega: &ChebSeries<Quaternion>) -> QuatIterState {
    let integrand = cheb::product(&state.coeffs, omega, |q, w| q * w);
    let mut next = integrand.integrate().scaled(state.interval_len / 4.0);
    *next.coeff_mut(0) = next.coeff(0) + Quaternion::identity();
    let (coeffs, spill) = match state.truncation {
        Some(limit) => (next.truncated(limit), next.coeff(limit + 1)),
        None => (next, Quaternion::zero()),
    };
    QuatIterState {
        coeffs,
        iteration: state.iteration + 1,
        truncation: state.truncation,
        interval_len: state.interval_len,
        spill,
    }
}

/// One iteration: multiply the current iterate by the fitted rate in
/// coefficient space, integrate from the interval start, scale by
/// `interval / 4` (the mapped-time half plus the kinematic half), add the
/// identity, then truncate. The untruncated degree grows by exactly
/// `fit degree + 1` per step.
pub fn quatfiter_step(state: &QuatIterState, fit: &OmegaFit) -> Result<QuatIterState> {
    if state.interval_len != fit.interval_len() {
        return Err(Error::IntervalMismatch {
            state: state.interval_len,
            fit: fit.interval_len(),
        });
    }
    Ok(step_promoted(state, &promote(fit)))
}

/// Run the iteration from the identity until `max_iter` steps or until the
/// RMS of the coefficient change between successive iterates drops below
/// `stop_rms` (RMS over all scalar entries, zero-padded to common degree).
pub fn quatfiter_run(
    fit: &OmegaFit,
    max_iter: usize,
    truncation: Option<usize>,
    stop_rms: f64,
) -> Result<QuatSolution> {
    if max_iter < 1 {
        return Err(Error::invalid("max_iter", "need at least one iteration"));
    }
    let omega = promote(fit);
    let mut state = QuatIterState::initial(fit.interval_len(), truncation)?;
    let mut rms_history = Vec::new();
    let mut converged = false;
    for l in 1..=max_iter {
        let next = step_promoted(&state, &omega);
        if !next.coeffs.is_finite() {
            return Err(Error::Diverged { iteration: l });
        }
        let rms = cheb::coeff_rms_diff(&state.coeffs, &next.coeffs);
        rms_history.push(rms);
        state = next;
        if rms < stop_rms {
            converged = true;
            break;
        }
    }
    Ok(QuatSolution {
        repr: SolutionCoeffs::Quaternion(state.coeffs),
        interval_len: state.interval_len,
        iterations_run: state.iteration,
        converged,
        rms_history,
        spill_norm: state.spill.norm(),
    })
}

pub(crate) enum SolutionCoeffs {
    Quaternion(ChebSeries<Quaternion>),
    Rodrigues(ChebSeries<Vec3>),
}

/// A converged (or max-iteration) attitude solution over one update
/// interval, evaluable at any time inside it.
pub struct QuatSolution {
    pub(crate) repr: SolutionCoeffs,
    pub(crate) interval_len: f64,
    pub(crate) iterations_run: usize,
    pub(crate) converged: bool,
    pub(crate) rms_history: Vec<f64>,
    pub(crate) spill_norm: f64,
}

impl QuatSolution {
    /// Evaluate the attitude quaternion at `t`. For quaternion coefficients
    /// this is where normalization happens; Rodrigues coefficients convert
    /// through the closed form, which is unit by construction.
    pub fn eval_attitude(&self, t: f64) -> Result<Quaternion> {
        match &self.repr {
            SolutionCoeffs::Quaternion(_) => self.eval_raw(t)?.normalized(),
            SolutionCoeffs::Rodrigues(_) => self.eval_raw(t),
        }
    }

    /// Evaluate without the final normalization; exposes the iterate's norm
    /// drift from unity for diagnostics.
    pub fn eval_raw(&self, t: f64) -> Result<Quaternion> {
        let tau = IntervalMap::new(self.interval_len)?.to_tau(t)?;
        Ok(match &self.repr {
            SolutionCoeffs::Quaternion(series) => series.eval(tau),
            SolutionCoeffs::Rodrigues(series) => Quaternion::from_rodrigues(series.eval(tau)),
        })
    }

    /// Error magnitude estimate for the converged iterate:
    /// `interval * sup|domega| + |first neglected coefficient|`, the rate-fit
    /// error term plus the final truncation term. A diagnostic
    /// approximation, tight only after enough iterations.
    pub fn error_bound_estimate(&self, sup_domega: f64) -> f64 {
        self.interval_len * sup_domega + self.spill_norm
    }

    /// The quaternion coefficient series, when this solution came from the
    /// quaternion-space iteration.
    pub fn quat_coeffs(&self) -> Option<&ChebSeries<Quaternion>> {
        match &self.repr {
            SolutionCoeffs::Quaternion(series) => Some(series),
            SolutionCoeffs::Rodrigues(_) => None,
        }
    }

    pub fn interval_len(&self) -> f64 {
        self.interval_len
    }

    pub fn iterations_run(&self) -> usize {
        self.iterations_run
    }

    pub fn converged(&self) -> bool {
        self.converged
    }

    /// Per-iteration RMS of the coefficient change.
    pub fn rms_history(&self) -> &[f64] {
        &self.rms_history
    }

    /// Norm of the first neglected coefficient of the last step.
    pub fn spill_norm(&self) -> f64 {
        self.spill_norm
    }
}
