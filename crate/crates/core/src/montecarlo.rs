//! Monte Carlo experiment drivers: elevation sweeps, SINR histograms,
//! user-count sweeps, closed-loop feedback sessions, and the steepness
//! range curve.
//!
//! Every trial draws its channels from counter-based streams keyed by
//! `(seed, trial, link)`, so results do not depend on evaluation order.
//! Parallel trial results are collected in trial order and reduced
//! sequentially, which keeps outputs byte-identical across thread counts.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::channel::{
    ris_phases, sample_rayleigh, sample_shadowed_rician, ChannelSnapshot, RisConfig,
    ShadowedRicianParams,
};
use crate::config::ScenarioConfig;
use crate::controller::{
    alpha_adaptive, k_init, k_update, power_split, r_from_k, ControllerParams, FeedbackState,
    R_MAX, R_MIN,
};
use crate::environment::{sample_gmm, sample_lognormal, EnvironmentModel, TransitionParams};
use crate::error::{Error, Result};
use crate::linklevel::{
    capacity_bps, design_beamformers, sinr_per_user, EffectiveChannels, SinrParams, SnapshotMetrics,
};
use crate::pathloss::{LinkBudget, LinkPathLosses};
use crate::rng::{trial_stream, StreamKind};

/// Trials spent calibrating the capacity swing and the default target
/// before a feedback session starts.
const CALIBRATION_TRIALS: u64 = 100;

/// Fixed weight of the equal-split baseline.
pub const ALPHA_EQUAL: f64 = 0.5;

// ---------------------------------------------------------------------------
// Results
// ---------------------------------------------------------------------------

/// Any driver output plus the provenance needed to reproduce it.
#[derive(Debug, Clone, PartialEq)]
pub struct RunResult<T> {
    pub data: T,
    pub seed: u64,
    pub config_hash: String,
    pub warnings: Vec<String>,
}

/// Paired dynamic-versus-equal metrics at one elevation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ElevationPoint {
    pub theta_deg: f64,
    /// Split weight of the dynamic policy at this elevation.
    pub alpha_dynamic: f64,
    pub p_sat_w: f64,
    pub p_bs_w: f64,
    pub cap_dynamic_mean_bps: f64,
    pub cap_dynamic_std_bps: f64,
    pub cap_equal_mean_bps: f64,
    pub cap_equal_std_bps: f64,
    pub sinr_dynamic_mean: f64,
    pub sinr_equal_mean: f64,
    /// Dynamic-over-equal mean capacity advantage in percent.
    pub gain_percent: f64,
}

/// Location and spread of one strategy's pooled per-user SINR samples.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StrategySummary {
    pub mean: f64,
    pub std: f64,
    pub p10: f64,
    pub p90: f64,
    pub samples: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HistogramBin {
    pub lo: f64,
    pub hi: f64,
    pub count_dynamic: u64,
    pub count_equal: u64,
}

/// Pooled SINR distributions for both policies at one elevation, with
/// shared-range bin counts.
#[derive(Debug, Clone, PartialEq)]
pub struct SinrHistogram {
    pub theta_deg: f64,
    pub alpha_dynamic: f64,
    pub dynamic: StrategySummary,
    pub equal: StrategySummary,
    pub bins: Vec<HistogramBin>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UserSweepPoint {
    pub users: usize,
    pub r: f64,
    pub alpha: f64,
    pub cap_mean_bps: f64,
    pub cap_std_bps: f64,
    pub sinr_mean: f64,
}

/// One closed-loop iteration with the allocation it produced.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeedbackStepRecord {
    pub t: usize,
    pub k_prime: f64,
    pub gamma: f64,
    pub error_bps: f64,
    pub c_obs_bps: f64,
    pub r: f64,
    pub alpha: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FeedbackSession {
    pub theta_deg: f64,
    pub c_target_bps: f64,
    pub delta_c_max_bps: f64,
    pub k_init: f64,
    pub k_min: f64,
    pub k_max: f64,
    pub records: Vec<FeedbackStepRecord>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RRangePoint {
    pub k_prime: f64,
    pub r_min_flag: bool,
    pub r_max_flag: bool,
    pub r: f64,
}

// ---------------------------------------------------------------------------
// Simulation
// ---------------------------------------------------------------------------

/// A validated scenario with its derived models, ready to run experiments.
#[derive(Debug, Clone)]
pub struct Simulation {
    config: ScenarioConfig,
    budget: LinkBudget,
    fading: ShadowedRicianParams,
    environment: EnvironmentModel,
    transition: TransitionParams,
    noise_w: f64,
    theta0_deg: f64,
    config_hash: String,
}

impl Simulation {
    pub fn new(config: ScenarioConfig) -> Result<Self> {
        config.validate()?;
        let budget = config.link_budget()?;
        let fading = config.fading_params()?;
        let environment = config.environment_model()?;
        let transition = config.transition_params()?;
        let noise_w = config.noise_w()?;
        let theta0_deg = config.theta0_deg();
        let config_hash = config.hash_hex()?;
        Ok(Simulation {
            config,
            budget,
            fading,
            environment,
            transition,
            noise_w,
            theta0_deg,
            config_hash,
        })
    }

    pub fn config(&self) -> &ScenarioConfig {
        &self.config
    }

    pub fn transition(&self) -> &TransitionParams {
        &self.transition
    }

    pub fn noise_w(&self) -> f64 {
        self.noise_w
    }

    /// Dynamic-policy split weight at `theta_deg` with the configured
    /// open-loop steepness.
    pub fn alpha_dynamic(&self, theta_deg: f64) -> f64 {
        alpha_adaptive(theta_deg, self.config.controller.r, &self.transition)
    }

    /// The configured elevation grid, checked against the controller span.
    pub fn elevation_grid(&self) -> Result<Vec<f64>> {
        let sweep = &self.config.sweeps.elevation;
        let c = &self.config.controller;
        if sweep.points < 2 {
            return Err(Error::domain("elevation sweep needs at least 2 points"));
        }
        if !(sweep.start_deg < sweep.stop_deg) {
            return Err(Error::domain(format!(
                "elevation sweep needs start < stop, got {} and {}",
                sweep.start_deg, sweep.stop_deg
            )));
        }
        if sweep.start_deg < c.theta_low_deg || sweep.stop_deg > c.theta_high_deg {
            return Err(Error::domain(format!(
                "elevation sweep [{}, {}] leaves the controller span [{}, {}]",
                sweep.start_deg, sweep.stop_deg, c.theta_low_deg, c.theta_high_deg
            )));
        }
        Ok(linspace(sweep.start_deg, sweep.stop_deg, sweep.points))
    }

    // -- drivers ------------------------------------------------------------

    /// Paired dynamic/equal capacity and SINR over the configured grid.
    pub fn run_elevation_sweep(&self) -> Result<RunResult<Vec<ElevationPoint>>> {
        let grid = self.elevation_grid()?;
        let mut warnings = Vec::new();
        let mut points = Vec::with_capacity(grid.len());
        for &theta in &grid {
            points.push(self.elevation_point(theta, self.config.trials, &mut warnings)?);
        }
        Ok(self.wrap(points, warnings))
    }

    /// One paired evaluation at `theta_deg` over `trials` snapshots.
    pub fn elevation_point(
        &self,
        theta_deg: f64,
        trials: usize,
        warnings: &mut Vec<String>,
    ) -> Result<ElevationPoint> {
        let base = self.base_losses(theta_deg, warnings)?;
        let alpha_dynamic = self.alpha_dynamic(theta_deg);
        let alphas = [alpha_dynamic, ALPHA_EQUAL];
        let users = self.config.users;

        let per_trial: Vec<[SnapshotMetrics; 2]> = (0..trials as u64)
            .into_par_iter()
            .map(|trial| {
                let m = self.trial_eval(theta_deg, trial, users, &base, &alphas)?;
                let [d, e]: [SnapshotMetrics; 2] = m.try_into().expect("two alphas in, two out");
                Ok::<_, Error>([d, e])
            })
            .collect::<Result<_>>()?;

        let cap_dyn: Vec<f64> = per_trial.iter().map(|m| m[0].mean_capacity_bps).collect();
        let cap_eq: Vec<f64> = per_trial.iter().map(|m| m[1].mean_capacity_bps).collect();
        let sinr_dyn: Vec<f64> = per_trial.iter().map(|m| mean(&m[0].sinr)).collect();
        let sinr_eq: Vec<f64> = per_trial.iter().map(|m| mean(&m[1].sinr)).collect();

        let (cap_dynamic_mean_bps, cap_dynamic_std_bps) = mean_and_std(&cap_dyn);
        let (cap_equal_mean_bps, cap_equal_std_bps) = mean_and_std(&cap_eq);
        let (p_sat_w, p_bs_w) = power_split(alpha_dynamic, self.config.p_total_w)?;
        let gain_percent = 100.0 * (cap_dynamic_mean_bps - cap_equal_mean_bps) / cap_equal_mean_bps;

        Ok(ElevationPoint {
            theta_deg,
            alpha_dynamic,
            p_sat_w,
            p_bs_w,
            cap_dynamic_mean_bps,
            cap_dynamic_std_bps,
            cap_equal_mean_bps,
            cap_equal_std_bps,
            sinr_dynamic_mean: mean(&sinr_dyn),
            sinr_equal_mean: mean(&sinr_eq),
            gain_percent,
        })
    }

    /// Pooled per-user SINR distributions for both policies at the
    /// configured histogram elevation.
    pub fn run_sinr_histogram(&self) -> Result<RunResult<SinrHistogram>> {
        let section = self.config.sweeps.histogram;
        if self.config.trials < 1000 {
            return Err(Error::domain(format!(
                "distribution estimates need at least 1000 trials, got {}",
                self.config.trials
            )));
        }
        if section.bins == 0 {
            return Err(Error::domain("histogram needs at least one bin"));
        }
        let mut warnings = Vec::new();
        let theta = section.theta_deg;
        let base = self.base_losses(theta, &mut warnings)?;
        let alpha_dynamic = self.alpha_dynamic(theta);
        let alphas = [alpha_dynamic, ALPHA_EQUAL];
        let users = self.config.users;

        let per_trial: Vec<(Vec<f64>, Vec<f64>)> = (0..self.config.trials as u64)
            .into_par_iter()
            .map(|trial| {
                let mut m = self.trial_eval(theta, trial, users, &base, &alphas)?;
                let equal = std::mem::take(&mut m[1].sinr);
                let dynamic = std::mem::take(&mut m[0].sinr);
                Ok::<_, Error>((dynamic, equal))
            })
            .collect::<Result<_>>()?;

        let mut pooled_dynamic = Vec::with_capacity(per_trial.len() * users);
        let mut pooled_equal = Vec::with_capacity(per_trial.len() * users);
        for (d, e) in per_trial {
            pooled_dynamic.extend(d);
            pooled_equal.extend(e);
        }

        let dynamic = summarize(&pooled_dynamic);
        let equal = summarize(&pooled_equal);
        let bins = bin_counts(&pooled_dynamic, &pooled_equal, section.bins);

        Ok(self.wrap(
            SinrHistogram {
                theta_deg: theta,
                alpha_dynamic,
                dynamic,
                equal,
                bins,
            },
            warnings,
        ))
    }

    /// Mean capacity against user count for each configured steepness.
    pub fn run_user_sweep(&self) -> Result<RunResult<Vec<UserSweepPoint>>> {
        let section = self.config.sweeps.users.clone();
        if section.counts.is_empty() || section.r_values.is_empty() {
            return Err(Error::domain(
                "user sweep needs at least one count and one steepness",
            ));
        }
        if section.counts.contains(&0) {
            return Err(Error::domain("user sweep counts must be >= 1"));
        }
        for &r in &section.r_values {
            if !(R_MIN..=R_MAX).contains(&r) {
                return Err(Error::domain(format!(
                    "steepness {r} outside the supported range [{R_MIN}, {R_MAX}]"
                )));
            }
        }
        let theta = section.theta_deg;
        let mut warnings = Vec::new();
        let base = self.base_losses(theta, &mut warnings)?;
        let alphas: Vec<f64> = section
            .r_values
            .iter()
            .map(|&r| alpha_adaptive(theta, r, &self.transition))
            .collect();

        let mut points = Vec::with_capacity(section.counts.len() * section.r_values.len());
        for &users in &section.counts {
            let per_trial: Vec<Vec<SnapshotMetrics>> = (0..self.config.trials as u64)
                .into_par_iter()
                .map(|trial| self.trial_eval(theta, trial, users, &base, &alphas))
                .collect::<Result<_>>()?;
            for (i, (&r, &alpha)) in section.r_values.iter().zip(alphas.iter()).enumerate() {
                let caps: Vec<f64> = per_trial.iter().map(|m| m[i].mean_capacity_bps).collect();
                let sinrs: Vec<f64> = per_trial.iter().map(|m| mean(&m[i].sinr)).collect();
                let (cap_mean_bps, cap_std_bps) = mean_and_std(&caps);
                points.push(UserSweepPoint {
                    users,
                    r,
                    alpha,
                    cap_mean_bps,
                    cap_std_bps,
                    sinr_mean: mean(&sinrs),
                });
            }
        }
        Ok(self.wrap(points, warnings))
    }

    /// Closed-loop steepness tuning against a capacity target, with the
    /// swing and target calibrated from held-out trials when unset.
    pub fn run_feedback_session(&self) -> Result<RunResult<FeedbackSession>> {
        let section = self.config.sweeps.feedback;
        if section.steps == 0 || section.trials_per_step == 0 {
            return Err(Error::domain(
                "feedback session needs steps >= 1 and trials_per_step >= 1",
            ));
        }
        let theta = section.theta_deg;
        let mut warnings = Vec::new();
        let base = self.base_losses(theta, &mut warnings)?;
        let users = self.config.users;

        // Calibration: capacity at full-satellite, full-terrestrial, and
        // equal split over a held-out batch of trials.
        let cal: Vec<Vec<SnapshotMetrics>> = (0..CALIBRATION_TRIALS)
            .into_par_iter()
            .map(|trial| self.trial_eval(theta, trial, users, &base, &[1.0, 0.0, ALPHA_EQUAL]))
            .collect::<Result<_>>()?;
        let swing = mean(
            &cal.iter()
                .map(|m| m[0].mean_capacity_bps - m[1].mean_capacity_bps)
                .collect::<Vec<_>>(),
        );
        let equal_mean = mean(
            &cal.iter()
                .map(|m| m[2].mean_capacity_bps)
                .collect::<Vec<_>>(),
        );

        let controller = &self.config.controller;
        let delta_c_max = controller.delta_c_max_bps.unwrap_or(swing);
        if !(delta_c_max > 0.0) {
            return Err(Error::domain(format!(
                "capacity swing must be positive to size the feedback gain, got {delta_c_max}"
            )));
        }
        let c_target = controller.c_target_bps.unwrap_or(equal_mean * 1.2);

        let params = ControllerParams::new(
            controller.theta_low_deg,
            controller.theta_high_deg,
            self.theta0_deg,
            controller.r,
            0.0,
            c_target,
            delta_c_max,
            controller.vartheta,
            controller.beta,
            self.transition,
        )?;
        let (k_min, k_max) = params.k_bounds()?;
        let k0 = k_init(delta_c_max, c_target, (k_min, k_max))?;

        let mut state = FeedbackState::new(k0);
        let mut records = Vec::with_capacity(section.steps);
        for step in 0..section.steps {
            let r = r_from_k(
                state.k_prime,
                self.transition.delta_mu,
                self.transition.sigma_c,
                controller.theta_low_deg,
                controller.theta_high_deg,
            )?;
            let alpha = alpha_adaptive(theta, r, &self.transition);
            let offset = CALIBRATION_TRIALS + (step * section.trials_per_step) as u64;
            let batch: Vec<SnapshotMetrics> = (0..section.trials_per_step as u64)
                .into_par_iter()
                .map(|i| {
                    let mut m = self.trial_eval(theta, offset + i, users, &base, &[alpha])?;
                    Ok::<_, Error>(m.pop().expect("one alpha in, one metric out"))
                })
                .collect::<Result<_>>()?;
            let c_obs = mean(
                &batch
                    .iter()
                    .map(|m| m.mean_capacity_bps)
                    .collect::<Vec<_>>(),
            );
            k_update(&mut state, c_obs, &params)?;
            let last = state.history.last().expect("update just pushed a record");
            records.push(FeedbackStepRecord {
                t: last.step,
                k_prime: last.k_prime,
                gamma: last.gamma,
                error_bps: last.error_bps,
                c_obs_bps: last.c_obs_bps,
                r,
                alpha,
            });
        }

        Ok(self.wrap(
            FeedbackSession {
                theta_deg: theta,
                c_target_bps: c_target,
                delta_c_max_bps: delta_c_max,
                k_init: k0,
                k_min,
                k_max,
                records,
            },
            warnings,
        ))
    }

    /// Steepness against feedback gain across the admissible gain interval,
    /// endpoints included.
    pub fn r_range_curve(&self) -> Result<RunResult<Vec<RRangePoint>>> {
        let points = self.config.sweeps.r_range.points;
        if points < 2 {
            return Err(Error::domain(
                "steepness range curve needs at least 2 points",
            ));
        }
        let c = &self.config.controller;
        let (k_min, k_max) = crate::controller::k_bounds(
            self.transition.sigma_c,
            c.theta_low_deg,
            c.theta_high_deg,
            self.transition.delta_mu,
        )?;
        let grid = linspace(k_min, k_max, points);
        let curve = grid
            .into_iter()
            .map(|k| {
                let r = r_from_k(
                    k,
                    self.transition.delta_mu,
                    self.transition.sigma_c,
                    c.theta_low_deg,
                    c.theta_high_deg,
                )?;
                Ok(RRangePoint {
                    k_prime: k,
                    r_min_flag: (r - R_MIN).abs() < 1e-12,
                    r_max_flag: (r - R_MAX).abs() < 1e-12,
                    r,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(self.wrap(curve, Vec::new()))
    }

    // -- internals ----------------------------------------------------------

    fn wrap<T>(&self, data: T, warnings: Vec<String>) -> RunResult<T> {
        RunResult {
            data,
            seed: self.config.seed,
            config_hash: self.config_hash.clone(),
            warnings,
        }
    }

    fn base_losses(&self, theta_deg: f64, warnings: &mut Vec<String>) -> Result<LinkPathLosses> {
        let losses = self.budget.compute_link_losses(theta_deg)?;
        if losses.clamped {
            warnings.push(format!(
                "a loss table was clamped at elevation {theta_deg} deg; extend its breakpoints"
            ));
        }
        Ok(losses)
    }

    /// Draws the snapshot for `trial` and evaluates it at every requested
    /// split weight, reusing the effective channels. Each weight rebudgets
    /// the beams with its terrestrial share and sends the rest to the
    /// satellite waveform.
    fn trial_eval(
        &self,
        theta_deg: f64,
        trial: u64,
        users: usize,
        base: &LinkPathLosses,
        alphas: &[f64],
    ) -> Result<Vec<SnapshotMetrics>> {
        let snapshot = self.draw_snapshot(theta_deg, trial, users, base)?;
        let mut phase_rng = trial_stream(self.config.seed, trial, StreamKind::RisPhase);
        let phases = ris_phases(self.config.ris.strategy(), &snapshot, &mut phase_rng)?;
        let ris = RisConfig::new(phases, self.config.ris.amplitude)?;
        let effective = EffectiveChannels::from_snapshot(&snapshot, &ris)?;
        let mode = self.config.alpha_mode.to_mode();

        alphas
            .iter()
            .map(|&alpha| {
                let (p_sat_w, p_bs_w) = power_split(alpha, self.config.p_total_w)?;
                let beams = design_beamformers(&effective, p_bs_w)?;
                let sinr = sinr_per_user(
                    &effective,
                    &beams,
                    &SinrParams {
                        alpha,
                        p_sat_w,
                        noise_w: self.noise_w,
                        alpha_mode: mode,
                    },
                )?;
                let capacity: Vec<f64> = sinr
                    .iter()
                    .map(|&s| capacity_bps(self.config.bandwidth_hz, s))
                    .collect();
                let sum: f64 = capacity.iter().sum();
                let mean_cap = sum / capacity.len() as f64;
                Ok(SnapshotMetrics {
                    sinr,
                    capacity_bps: capacity,
                    sum_capacity_bps: sum,
                    mean_capacity_bps: mean_cap,
                })
            })
            .collect()
    }

    /// All small-scale channels for one trial, with the per-user excess
    /// attenuation folded into the link losses when injection is enabled.
    fn draw_snapshot(
        &self,
        theta_deg: f64,
        trial: u64,
        users: usize,
        base: &LinkPathLosses,
    ) -> Result<ChannelSnapshot> {
        let seed = self.config.seed;
        let m = self.config.bs_antennas;
        let n = self.config.ris_elements;

        let mut rng = trial_stream(seed, trial, StreamKind::SatUser);
        let sat_user: Vec<Complex64> = (0..users)
            .map(|_| sample_shadowed_rician(&self.fading, &mut rng))
            .collect();

        let mut rng = trial_stream(seed, trial, StreamKind::SatRis);
        let sat_ris = DVector::from_iterator(
            n,
            (0..n).map(|_| sample_shadowed_rician(&self.fading, &mut rng)),
        );

        let mut rng = trial_stream(seed, trial, StreamKind::BsUser);
        let bs_user: Vec<DVector<Complex64>> = (0..users)
            .map(|_| DVector::from_iterator(m, (0..m).map(|_| sample_rayleigh(&mut rng))))
            .collect();

        let mut rng = trial_stream(seed, trial, StreamKind::BsRis);
        let flat: Vec<Complex64> = (0..n * m).map(|_| sample_rayleigh(&mut rng)).collect();
        let bs_ris = DMatrix::from_row_slice(n, m, &flat);

        let mut rng = trial_stream(seed, trial, StreamKind::RisUser);
        let ris_user: Vec<DVector<Complex64>> = (0..users)
            .map(|_| DVector::from_iterator(n, (0..n).map(|_| sample_rayleigh(&mut rng))))
            .collect();

        let mut losses = vec![*base; users];
        if self.config.environment.inject_attenuation {
            let mut rng = trial_stream(seed, trial, StreamKind::Environment);
            for l in &mut losses {
                if theta_deg < self.theta0_deg {
                    // Low regime: log-normal excess on the terrestrial side.
                    let linear = sample_lognormal(&self.environment.lognormal, &mut rng);
                    let extra_db = 10.0 * linear.log10();
                    l.pl_bs_user_db += extra_db;
                    l.pl_ris_user_db += extra_db;
                } else {
                    // High regime: mixture-driven excess on the space-ground
                    // path, drawn in the same log domain.
                    let g = sample_gmm(&self.environment.gmm, &mut rng);
                    let extra_db = 10.0 * g / std::f64::consts::LN_10;
                    l.pl_sat_user_db += extra_db;
                }
            }
        }

        ChannelSnapshot::new(sat_user, sat_ris, bs_user, bs_ris, ris_user, losses)
    }
}

// ---------------------------------------------------------------------------
// Reductions
// ---------------------------------------------------------------------------

/// Evenly spaced grid with exact endpoints.
pub fn linspace(start: f64, stop: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![start],
        _ => {
            let step = (stop - start) / (points - 1) as f64;
            let mut grid: Vec<f64> = (0..points).map(|i| start + step * i as f64).collect();
            grid[points - 1] = stop;
            grid
        }
    }
}

fn mean(samples: &[f64]) -> f64 {
    samples.iter().sum::<f64>() / samples.len() as f64
}

/// Mean and sample standard deviation; a single sample has zero spread.
fn mean_and_std(samples: &[f64]) -> (f64, f64) {
    let m = mean(samples);
    if samples.len() < 2 {
        return (m, 0.0);
    }
    let var = samples.iter().map(|s| (s - m).powi(2)).sum::<f64>() / (samples.len() - 1) as f64;
    (m, var.sqrt())
}

/// Linear-interpolation quantile on a sorted slice (the common spreadsheet
/// definition): `h = (n - 1) p`, interpolating between the straddling
/// order statistics.
fn quantile_sorted(sorted: &[f64], p: f64) -> f64 {
    debug_assert!(!sorted.is_empty());
    let h = (sorted.len() - 1) as f64 * p;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    if lo == hi {
        sorted[lo]
    } else {
        sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
    }
}

fn summarize(samples: &[f64]) -> StrategySummary {
    let mut sorted = samples.to_vec();
    sorted.sort_unstable_by(f64::total_cmp);
    let (mean, std) = mean_and_std(samples);
    StrategySummary {
        mean,
        std,
        p10: quantile_sorted(&sorted, 0.10),
        p90: quantile_sorted(&sorted, 0.90),
        samples: samples.len(),
    }
}

/// Shared-range histogram of the two pooled sample sets. Integer counts
/// keep the output exact regardless of summation order.
fn bin_counts(dynamic: &[f64], equal: &[f64], bins: usize) -> Vec<HistogramBin> {
    let lo = dynamic
        .iter()
        .chain(equal)
        .fold(f64::INFINITY, |a, &b| a.min(b));
    let hi = dynamic
        .iter()
        .chain(equal)
        .fold(f64::NEG_INFINITY, |a, &b| a.max(b));
    let hi = if hi > lo { hi } else { lo + 1.0 };
    let width = (hi - lo) / bins as f64;
    let index = |x: f64| (((x - lo) / width) as usize).min(bins - 1);

    let mut rows: Vec<HistogramBin> = (0..bins)
        .map(|i| HistogramBin {
            lo: lo + width * i as f64,
            hi: lo + width * (i + 1) as f64,
            count_dynamic: 0,
            count_equal: 0,
        })
        .collect();
    rows[bins - 1].hi = hi;
    for &x in dynamic {
        rows[index(x)].count_dynamic += 1;
    }
    for &x in equal {
        rows[index(x)].count_equal += 1;
    }
    rows
}
