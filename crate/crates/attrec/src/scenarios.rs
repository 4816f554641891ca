//! Ground-truth motion generators and exact gyro measurement synthesis.
//!
//! Both scenarios have closed forms for the attitude, the body angular
//! velocity, and the angular increment over any sub-interval, so measurement
//! synthesis introduces no quadrature error of its own: whatever error a
//! solver shows is the solver's.

use crate::error::{Error, Result};
use crate::gyro_fit::{GyroBatch, MeasurementMode};
use crate::quat::{Quaternion, Vec3};

/// Coning motion: the rotation axis sweeps a cone of full angle `angle` at
/// `freq` rad/s. The standard worst case for non-commutativity error.
#[derive(Debug, Clone, Copy)]
pub struct ConingSpec {
    angle: f64,
    freq: f64,
}

impl ConingSpec {
    /// `angle` in radians, in [0, pi); `freq` in rad/s.
    pub fn new(angle: f64, freq: f64) -> Result<Self> {
        if !(0.0..std::f64::consts::PI).contains(&angle) || !angle.is_finite() {
            return Err(Error::invalid(
                "coning spec",
                format!("coning angle {angle} rad outside [0, pi)"),
            ));
        }
        if !freq.is_finite() {
            return Err(Error::invalid("coning spec", "non-finite frequency"));
        }
        Ok(Self { angle, freq })
    }

    pub fn angle(&self) -> f64 {
        self.angle
    }

    pub fn freq(&self) -> f64 {
        self.freq
    }

    /// Body angular velocity
    /// `omega = freq * [-2 sin^2(angle/2), -sin(angle) sin(freq t), sin(angle) cos(freq t)]`.
    pub fn omega(&self, t: f64) -> Vec3 {
        let half = self.angle / 2.0;
        let phase = self.freq * t;
        Vec3::new(
            -2.0 * self.freq * half.sin().powi(2),
            -self.freq * self.angle.sin() * phase.sin(),
            self.freq * self.angle.sin() * phase.cos(),
        )
    }

    /// True attitude via the Rodrigues vector
    /// `g = 2 tan(angle/2) [0, cos(freq t), sin(freq t)]`.
    pub fn truth(&self, t: f64) -> Quaternion {
        let k = 2.0 * (self.angle / 2.0).tan();
        let phase = self.freq * t;
        Quaternion::from_rodrigues(Vec3::new(0.0, k * phase.cos(), k * phase.sin()))
    }

    /// Exact integral of omega over [t0, t1]: the first channel is constant,
    /// the other two integrate to sine/cosine differences.
    pub fn increment(&self, t0: f64, t1: f64) -> Vec3 {
        let half = self.angle / 2.0;
        let s = self.angle.sin();
        Vec3::new(
            -2.0 * self.freq * half.sin().powi(2) * (t1 - t0),
            s * ((self.freq * t1).cos() - (self.freq * t0).cos()),
            s * ((self.freq * t1).sin() - (self.freq * t0).sin()),
        )
    }
}

/// Rotation at a fixed angular velocity; non-commutativity vanishes and the
/// attitude is the plain exponential of `omega * t`.
#[derive(Debug, Clone, Copy)]
pub struct ConstantRateSpec {
    omega: Vec3,
}

impl ConstantRateSpec {
    pub fn new(omega: Vec3) -> Result<Self> {
        if !omega.is_finite() {
            return Err(Error::invalid("constant rate spec", "non-finite omega"));
        }
        Ok(Self { omega })
    }

    pub fn omega(&self) -> Vec3 {
        self.omega
    }

    pub fn truth(&self, t: f64) -> Quaternion {
        Quaternion::from_rotation_vector(self.omega * t)
    }

    pub fn increment(&self, t0: f64, t1: f64) -> Vec3 {
        self.omega * (t1 - t0)
    }
}

/// One of the two test motions.
#[derive(Debug, Clone, Copy)]
pub enum Scenario {
    Coning(ConingSpec),
    Constant(ConstantRateSpec),
}

impl Scenario {
    pub fn omega(&self, t: f64) -> Vec3 {
        match self {
            Scenario::Coning(c) => c.omega(t),
            Scenario::Constant(c) => c.omega(),
        }
    }

    /// Absolute attitude at time t. Note the coning truth is not the identity
    /// at t = 0; relative attitudes over [t0, t] are
    /// `truth(t0).conjugate() * truth(t)`.
    pub fn truth(&self, t: f64) -> Quaternion {
        match self {
            Scenario::Coning(c) => c.truth(t),
            Scenario::Constant(c) => c.truth(t),
        }
    }

    pub fn increment(&self, t0: f64, t1: f64) -> Vec3 {
        match self {
            Scenario::Coning(c) => c.increment(t0, t1),
            Scenario::Constant(c) => c.increment(t0, t1),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Scenario::Coning(_) => "coning",
            Scenario::Constant(_) => "constant",
        }
    }
}

/// Sampling layout: gyro rate, samples per update interval, total duration,
/// and whether samples are rates or increments.
#[derive(Debug, Clone, Copy)]
pub struct SamplingSpec {
    rate_hz: f64,
    samples_per_interval: usize,
    duration_s: f64,
    mode: MeasurementMode,
}

impl SamplingSpec {
    pub fn new(
        rate_hz: f64,
        samples_per_interval: usize,
        duration_s: f64,
        mode: MeasurementMode,
    ) -> Result<Self> {
        if !(rate_hz > 0.0 && rate_hz.is_finite()) {
            return Err(Error::invalid("sampling spec", "rate must be positive"));
        }
        if samples_per_interval < 2 {
            return Err(Error::invalid(
                "sampling spec",
                "need at least 2 samples per update interval",
            ));
        }
        let interval_len = samples_per_interval as f64 / rate_hz;
        let intervals = (duration_s / interval_len).round();
        if intervals < 1.0 || (intervals * interval_len - duration_s).abs() > 1e-9 * duration_s {
            return Err(Error::invalid(
                "sampling spec",
                format!(
                    "duration {duration_s} s is not a whole number of {interval_len} s intervals"
                ),
            ));
        }
        Ok(Self {
            rate_hz,
            samples_per_interval,
            duration_s,
            mode,
        })
    }

    pub fn rate_hz(&self) -> f64 {
        self.rate_hz
    }

    pub fn samples_per_interval(&self) -> usize {
        self.samples_per_interval
    }

    pub fn duration_s(&self) -> f64 {
        self.duration_s
    }

    pub fn mode(&self) -> MeasurementMode {
        self.mode
    }

    /// Update interval length t_N = N / rate.
    pub fn interval_len(&self) -> f64 {
        self.samples_per_interval as f64 / self.rate_hz
    }

    pub fn num_intervals(&self) -> usize {
        (self.duration_s / self.interval_len()).round() as usize
    }
}

/// Synthesize the gyro batch for one update interval, with interval-relative
/// sample times. Rate samples are exact omega values at sub-interval ends;
/// increments are exact closed-form integrals over each sub-interval.
pub fn generate_gyro_batch(
    scenario: &Scenario,
    sampling: &SamplingSpec,
    interval_index: usize,
) -> Result<GyroBatch> {
    if interval_index >= sampling.num_intervals() {
        return Err(Error::invalid(
            "interval index",
            format!(
                "interval {interval_index} does not fit in {} intervals",
                sampling.num_intervals()
            ),
        ));
    }
    let n = sampling.samples_per_interval;
    let interval_len = sampling.interval_len();
    let start = interval_index as f64 * interval_len;
    let local = |k: usize| interval_len * k as f64 / n as f64;
    match sampling.mode {
        MeasurementMode::Rate => GyroBatch::rates(
            interval_len,
            (1..=n)
                .map(|k| (local(k), scenario.omega(start + local(k))))
                .collect(),
        ),
        MeasurementMode::Increment => GyroBatch::increments(
            interval_len,
            (1..=n)
                .map(|k| {
                    (
                        local(k),
                        scenario.increment(start + local(k - 1), start + local(k)),
                    )
                })
                .collect(),
        ),
    }
}
