//! Per-snapshot link-level evaluation: thermal noise, NOMA power fractions,
//! matched-filter beams, SIC-aware SINR, and Shannon capacity.
//!
//! Users are ranked by effective terrestrial channel gain. A user's receiver
//! cancels the superposed streams of every stronger-ranked user and keeps
//! the weaker-ranked streams as interference, which together with the
//! inverse-gain power fractions puts the system firmly in the
//! interference-limited regime.

use nalgebra::DVector;
use num_complex::Complex64;

use crate::channel::{
    effective_satellite_channel, effective_terrestrial_channel, ChannelSnapshot, RisConfig,
};
use crate::error::{Error, Result};

/// Boltzmann constant in J/K (2019 SI exact value).
pub const BOLTZMANN: f64 = 1.380649e-23;

/// Weight cap standing in for an infinite inverse gain when a user's
/// effective channel is exactly zero.
const ZERO_GAIN_WEIGHT: f64 = 1.0e30;

/// Thermal noise power over `bandwidth_hz` at `temperature_k`, in watts.
pub fn noise_variance(bandwidth_hz: f64, temperature_k: f64) -> Result<f64> {
    if !(bandwidth_hz > 0.0) || !bandwidth_hz.is_finite() {
        return Err(Error::domain(format!(
            "bandwidth must be positive, got {bandwidth_hz}"
        )));
    }
    if !(temperature_k > 0.0) || !temperature_k.is_finite() {
        return Err(Error::domain(format!(
            "noise temperature must be positive, got {temperature_k}"
        )));
    }
    Ok(bandwidth_hz * BOLTZMANN * temperature_k)
}

/// User indices sorted by decreasing power gain; ties keep the original
/// index order.
pub fn sic_order(power_gains: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..power_gains.len()).collect();
    order.sort_by(|&a, &b| {
        power_gains[b]
            .partial_cmp(&power_gains[a])
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.cmp(&b))
    });
    order
}

/// NOMA power fractions proportional to the inverse power gain, so weaker
/// users receive larger shares. Zero-gain users absorb essentially the whole
/// budget (split evenly among themselves if several).
pub fn noma_fractions(power_gains: &[f64]) -> Result<Vec<f64>> {
    if power_gains.is_empty() {
        return Err(Error::dimension("power fractions need at least one user"));
    }
    if power_gains.iter().any(|g| !g.is_finite() || *g < 0.0) {
        return Err(Error::domain("power gains must be finite and >= 0"));
    }
    let weights: Vec<f64> = power_gains
        .iter()
        .map(|&g| {
            if g > 0.0 {
                (1.0 / g).min(ZERO_GAIN_WEIGHT)
            } else {
                ZERO_GAIN_WEIGHT
            }
        })
        .collect();
    let total: f64 = weights.iter().sum();
    Ok(weights.into_iter().map(|w| w / total).collect())
}

/// Effective channels of every user for one snapshot and RIS setting.
#[derive(Debug, Clone, PartialEq)]
pub struct EffectiveChannels {
    /// BS-side vectors `t_u`; a beam `w` reaches user `u` as the plain dot
    /// product `t_u . w`.
    pub terrestrial: Vec<DVector<Complex64>>,
    /// Satellite-side scalars `h_u`.
    pub satellite: Vec<Complex64>,
}

impl EffectiveChannels {
    pub fn from_snapshot(snapshot: &ChannelSnapshot, ris: &RisConfig) -> Result<Self> {
        let users = snapshot.users();
        let mut terrestrial = Vec::with_capacity(users);
        let mut satellite = Vec::with_capacity(users);
        for u in 0..users {
            terrestrial.push(effective_terrestrial_channel(snapshot, ris, u)?);
            satellite.push(effective_satellite_channel(snapshot, ris, u)?);
        }
        Ok(EffectiveChannels {
            terrestrial,
            satellite,
        })
    }

    pub fn users(&self) -> usize {
        self.terrestrial.len()
    }

    /// Per-user power gains `|t_u|^2`.
    pub fn power_gains(&self) -> Vec<f64> {
        self.terrestrial.iter().map(|t| t.norm_squared()).collect()
    }
}

/// Matched-filter beams: `w_u = sqrt(frac_u P) conj(t_u)/|t_u|`, spending
/// the whole budget (`sum |w_u|^2 = p_total`). A zero effective channel
/// falls back to a uniform direction.
pub fn design_beamformers(
    effective: &EffectiveChannels,
    p_total_w: f64,
) -> Result<Vec<DVector<Complex64>>> {
    if !(p_total_w >= 0.0) || !p_total_w.is_finite() {
        return Err(Error::domain(format!(
            "beam power budget must be finite and non-negative, got {p_total_w}"
        )));
    }
    let gains = effective.power_gains();
    let fractions = noma_fractions(&gains)?;
    let beams = effective
        .terrestrial
        .iter()
        .zip(fractions.iter())
        .map(|(t, &frac)| {
            let scale = (frac * p_total_w).sqrt();
            let norm = t.norm();
            if norm > 0.0 {
                t.map(|v| v.conj() * (scale / norm))
            } else {
                let m = t.len();
                DVector::from_element(m, Complex64::from(scale / (m as f64).sqrt()))
            }
        })
        .collect();
    Ok(beams)
}

/// How the split weight enters the satellite terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AlphaMode {
    /// Weight applied to powers: desired `alpha p |h|^2`, residual
    /// `(1 - alpha) p |h|^2`.
    #[default]
    Power,
    /// Weight applied to amplitudes, so the powers see `alpha^2` and
    /// `(1 - alpha)^2`.
    Amplitude,
}

impl AlphaMode {
    fn desired_weight(self, alpha: f64) -> f64 {
        match self {
            AlphaMode::Power => alpha,
            AlphaMode::Amplitude => alpha * alpha,
        }
    }

    fn residual_weight(self, alpha: f64) -> f64 {
        match self {
            AlphaMode::Power => 1.0 - alpha,
            AlphaMode::Amplitude => (1.0 - alpha) * (1.0 - alpha),
        }
    }
}

/// Inputs shared by every user's SINR for one snapshot.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SinrParams {
    /// Fraction of the satellite waveform carrying each user's stream.
    pub alpha: f64,
    /// Satellite transmit power in watts.
    pub p_sat_w: f64,
    /// Thermal noise power in watts.
    pub noise_w: f64,
    pub alpha_mode: AlphaMode,
}

impl SinrParams {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.alpha) {
            return Err(Error::domain(format!(
                "split weight must lie in [0, 1], got {}",
                self.alpha
            )));
        }
        if !(self.p_sat_w >= 0.0) || !self.p_sat_w.is_finite() {
            return Err(Error::domain(format!(
                "satellite power must be finite and >= 0, got {}",
                self.p_sat_w
            )));
        }
        if !(self.noise_w > 0.0) || !self.noise_w.is_finite() {
            return Err(Error::domain(format!(
                "noise power must be positive, got {}",
                self.noise_w
            )));
        }
        Ok(())
    }
}

/// Per-user SINR under SIC. User `u` keeps the streams of users ranked
/// after it (weaker gains) as interference:
///
/// `SINR_u = (|t_u . w_u|^2 + d(alpha) p |h_u|^2)
///           / (sum_{rank k > rank u} |t_u . w_k|^2 + r(alpha) p |h_u|^2 + noise)`
pub fn sinr_per_user(
    effective: &EffectiveChannels,
    beams: &[DVector<Complex64>],
    params: &SinrParams,
) -> Result<Vec<f64>> {
    params.validate()?;
    let users = effective.users();
    if beams.len() != users {
        return Err(Error::dimension(format!(
            "{} beams for {users} users",
            beams.len()
        )));
    }
    for (u, (t, w)) in effective.terrestrial.iter().zip(beams.iter()).enumerate() {
        if t.len() != w.len() {
            return Err(Error::dimension(format!(
                "user {u} beam length {} does not match channel length {}",
                w.len(),
                t.len()
            )));
        }
    }
    let order = sic_order(&effective.power_gains());
    let mut rank = vec![0usize; users];
    for (pos, &u) in order.iter().enumerate() {
        rank[u] = pos;
    }
    let desired_sat = params.alpha_mode.desired_weight(params.alpha) * params.p_sat_w;
    let residual_sat = params.alpha_mode.residual_weight(params.alpha) * params.p_sat_w;

    let mut out = Vec::with_capacity(users);
    for u in 0..users {
        let t = &effective.terrestrial[u];
        let own = t.dot(&beams[u]).norm_sqr();
        let sat_power = effective.satellite[u].norm_sqr();
        let mut interference = 0.0;
        for k in 0..users {
            if rank[k] > rank[u] {
                interference += t.dot(&beams[k]).norm_sqr();
            }
        }
        let desired = own + desired_sat * sat_power;
        let denom = interference + residual_sat * sat_power + params.noise_w;
        out.push(desired / denom);
    }
    Ok(out)
}

/// Shannon capacity `B log2(1 + sinr)` in bit/s.
pub fn capacity_bps(bandwidth_hz: f64, sinr: f64) -> f64 {
    bandwidth_hz * (1.0 + sinr).log2()
}

/// Everything the Monte Carlo reducers need from one snapshot evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct SnapshotMetrics {
    pub sinr: Vec<f64>,
    pub capacity_bps: Vec<f64>,
    pub sum_capacity_bps: f64,
    pub mean_capacity_bps: f64,
}

/// Scenario-level knobs for one evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvaluationParams {
    /// Total transmit budget; `alpha` sends its satellite share to the
    /// waveform and the remainder to the beams.
    pub p_total_w: f64,
    pub alpha: f64,
    pub bandwidth_hz: f64,
    pub noise_w: f64,
    pub alpha_mode: AlphaMode,
}

/// Composes effective channels, beams, SINR, and capacity for one snapshot.
pub fn evaluate_snapshot(
    snapshot: &ChannelSnapshot,
    ris: &RisConfig,
    params: &EvaluationParams,
) -> Result<SnapshotMetrics> {
    if !(params.bandwidth_hz > 0.0) || !params.bandwidth_hz.is_finite() {
        return Err(Error::domain(format!(
            "bandwidth must be positive, got {}",
            params.bandwidth_hz
        )));
    }
    let effective = EffectiveChannels::from_snapshot(snapshot, ris)?;
    let (p_sat_w, p_bs_w) = crate::controller::power_split(params.alpha, params.p_total_w)?;
    let beams = design_beamformers(&effective, p_bs_w)?;
    let sinr = sinr_per_user(
        &effective,
        &beams,
        &SinrParams {
            alpha: params.alpha,
            p_sat_w,
            noise_w: params.noise_w,
            alpha_mode: params.alpha_mode,
        },
    )?;
    let capacity: Vec<f64> = sinr
        .iter()
        .map(|&s| capacity_bps(params.bandwidth_hz, s))
        .collect();
    let sum: f64 = capacity.iter().sum();
    let mean = sum / capacity.len() as f64;
    Ok(SnapshotMetrics {
        sinr,
        capacity_bps: capacity,
        sum_capacity_bps: sum,
        mean_capacity_bps: mean,
    })
}
