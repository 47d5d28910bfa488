//! Elevation-driven power allocation: a sigmoid splits the total budget
//! between the satellite and terrestrial signals, an environment-derived tanh
//! correction reshapes the handover region, and a feedback loop retunes the
//! steepness from observed capacity.

use crate::environment::TransitionParams;
use crate::error::{Error, Result};

/// Lower bound on the feedback-implied sigmoid steepness (1/deg).
pub const R_MIN: f64 = 0.02;
/// Upper bound on the feedback-implied sigmoid steepness (1/deg).
pub const R_MAX: f64 = 0.08;

// ---------------------------------------------------------------------------
// Allocation curves
// ---------------------------------------------------------------------------

/// Plain logistic allocation `1 / (1 + exp(-r (theta - theta0)))`.
pub fn alpha_basic(theta_deg: f64, r: f64, theta0_deg: f64) -> f64 {
    1.0 / (1.0 + (-r * (theta_deg - theta0_deg)).exp())
}

/// Allocation with the environment correction folded into the exponent:
/// `1 / (1 + exp(-(r (theta - theta0) - A tanh(B (theta - theta0)))))`.
///
/// The crossover elevation is taken from `transition`.
pub fn alpha_adaptive(theta_deg: f64, r: f64, transition: &TransitionParams) -> f64 {
    let d = theta_deg - transition.theta0_deg;
    let z = r * d - transition.amplitude * (transition.steepness * d).tanh();
    1.0 / (1.0 + (-z).exp())
}

/// Steepness that threads the sigmoid through `alpha_low` at `theta_low` and
/// `alpha_high` at `theta_high`:
/// `(ln((1-a)/a) - ln((1-b)/b)) / (theta_high - theta_low)`.
pub fn r_from_endpoints(
    alpha_low: f64,
    alpha_high: f64,
    theta_low_deg: f64,
    theta_high_deg: f64,
) -> Result<f64> {
    for (v, name) in [(alpha_low, "alpha_low"), (alpha_high, "alpha_high")] {
        if !(v > 0.0 && v < 1.0) {
            return Err(Error::domain(format!(
                "{name} must lie strictly inside (0, 1), got {v}"
            )));
        }
    }
    if !(theta_high_deg > theta_low_deg) {
        return Err(Error::domain(format!(
            "endpoint elevations must satisfy theta_low < theta_high, got {theta_low_deg} >= {theta_high_deg}"
        )));
    }
    if alpha_high <= alpha_low {
        return Err(Error::domain(format!(
            "endpoint targets must increase, got alpha_low {alpha_low} >= alpha_high {alpha_high}"
        )));
    }
    let logit = |a: f64| ((1.0 - a) / a).ln();
    Ok((logit(alpha_low) - logit(alpha_high)) / (theta_high_deg - theta_low_deg))
}

/// Steepness from the feedback gain: `k' * delta_mu / (sigma_c * span)`.
pub fn r_from_k(
    k_prime: f64,
    delta_mu: f64,
    sigma_c: f64,
    theta_low_deg: f64,
    theta_high_deg: f64,
) -> Result<f64> {
    if !(theta_high_deg > theta_low_deg) {
        return Err(Error::domain(format!(
            "steepness span must be positive, got [{theta_low_deg}, {theta_high_deg}]"
        )));
    }
    if !(sigma_c > 0.0) || !(delta_mu > 0.0) {
        return Err(Error::domain(format!(
            "r_from_k needs sigma_c > 0 and delta_mu > 0, got ({sigma_c}, {delta_mu})"
        )));
    }
    if !(k_prime >= 0.0) {
        return Err(Error::domain(format!(
            "k' must be nonnegative, got {k_prime}"
        )));
    }
    Ok(k_prime * delta_mu / (sigma_c * (theta_high_deg - theta_low_deg)))
}

/// The `k'` interval that maps onto steepness `[R_MIN, R_MAX]` through
/// `r_from_k`.
pub fn k_bounds(
    sigma_c: f64,
    theta_low_deg: f64,
    theta_high_deg: f64,
    delta_mu: f64,
) -> Result<(f64, f64)> {
    if !(theta_high_deg > theta_low_deg) {
        return Err(Error::domain(format!(
            "k bounds span must be positive, got [{theta_low_deg}, {theta_high_deg}]"
        )));
    }
    if !(sigma_c > 0.0) || !(delta_mu > 0.0) {
        return Err(Error::domain(format!(
            "k_bounds needs sigma_c > 0 and delta_mu > 0, got ({sigma_c}, {delta_mu})"
        )));
    }
    let scale = sigma_c * (theta_high_deg - theta_low_deg) / delta_mu;
    Ok((R_MIN * scale, R_MAX * scale))
}

/// Initial feedback gain `delta_c_max / c_target`, clamped into `bounds`.
pub fn k_init(delta_c_max: f64, c_target: f64, bounds: (f64, f64)) -> Result<f64> {
    if !(c_target > 0.0) {
        return Err(Error::domain(format!(
            "capacity target must be positive, got {c_target}"
        )));
    }
    if !(delta_c_max >= 0.0) || !delta_c_max.is_finite() {
        return Err(Error::domain(format!(
            "capacity swing must be finite and >= 0, got {delta_c_max}"
        )));
    }
    Ok((delta_c_max / c_target).clamp(bounds.0, bounds.1))
}

/// Error-normalized learning rate `vartheta / (1 + beta |error|)`.
pub fn learning_rate(vartheta: f64, beta: f64, error: f64) -> f64 {
    vartheta / (1.0 + beta * error.abs())
}

/// Sends `alpha * p_total` to the satellite signal; the terrestrial share is
/// computed as the difference so the two always sum to `p_total` exactly.
pub fn power_split(alpha: f64, p_total_w: f64) -> Result<(f64, f64)> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::domain(format!(
            "power split fraction must lie in [0, 1], got {alpha}"
        )));
    }
    if !(p_total_w > 0.0) {
        return Err(Error::domain(format!(
            "total power must be positive, got {p_total_w}"
        )));
    }
    let p_sat = alpha * p_total_w;
    let p_bs = p_total_w - p_sat;
    // Recomputing the satellite share from the rounded remainder makes the
    // two shares reassemble to the exact budget (the larger operand of each
    // subtraction is within a factor of two of the total, so the final
    // subtraction is exact).
    let p_sat = p_total_w - p_bs;
    Ok((p_sat, p_bs))
}

// ---------------------------------------------------------------------------
// Controller state
// ---------------------------------------------------------------------------

/// Static controller configuration plus the environment-derived transition.
#[derive(Debug, Clone)]
pub struct ControllerParams {
    pub theta_low_deg: f64,
    pub theta_high_deg: f64,
    pub theta0_deg: f64,
    /// Sigmoid steepness used by open-loop sweeps.
    pub r: f64,
    /// Current feedback gain.
    pub k_prime: f64,
    pub c_target_bps: f64,
    pub delta_c_max_bps: f64,
    pub vartheta: f64,
    pub beta: f64,
    /// Most recent learning rate (starts at `vartheta`).
    pub gamma_current: f64,
    pub transition: TransitionParams,
}

impl ControllerParams {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        theta_low_deg: f64,
        theta_high_deg: f64,
        theta0_deg: f64,
        r: f64,
        k_prime: f64,
        c_target_bps: f64,
        delta_c_max_bps: f64,
        vartheta: f64,
        beta: f64,
        transition: TransitionParams,
    ) -> Result<Self> {
        if !(theta_low_deg < theta0_deg && theta0_deg < theta_high_deg) {
            return Err(Error::domain(format!(
                "need theta_low < theta0 < theta_high, got {theta_low_deg} / {theta0_deg} / {theta_high_deg}"
            )));
        }
        if !(r > 0.0) {
            return Err(Error::domain(format!(
                "steepness r must be positive, got {r}"
            )));
        }
        if !(k_prime >= 0.0) {
            return Err(Error::domain(format!(
                "k' must be nonnegative, got {k_prime}"
            )));
        }
        if !(c_target_bps > 0.0) {
            return Err(Error::domain(format!(
                "capacity target must be positive, got {c_target_bps}"
            )));
        }
        if !(vartheta > 0.0) || !(beta >= 0.0) {
            return Err(Error::domain(format!(
                "need vartheta > 0 and beta >= 0, got ({vartheta}, {beta})"
            )));
        }
        Ok(ControllerParams {
            theta_low_deg,
            theta_high_deg,
            theta0_deg,
            r,
            k_prime,
            c_target_bps,
            delta_c_max_bps,
            vartheta,
            beta,
            gamma_current: vartheta,
            transition,
        })
    }

    /// The `k'` interval consistent with the steepness limits.
    pub fn k_bounds(&self) -> Result<(f64, f64)> {
        k_bounds(
            self.transition.sigma_c,
            self.theta_low_deg,
            self.theta_high_deg,
            self.transition.delta_mu,
        )
    }

    /// Steepness implied by the current feedback gain.
    pub fn r_current(&self) -> Result<f64> {
        r_from_k(
            self.k_prime,
            self.transition.delta_mu,
            self.transition.sigma_c,
            self.theta_low_deg,
            self.theta_high_deg,
        )
    }
}

/// One feedback iteration as recorded in the session history.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeedbackRecord {
    pub step: usize,
    pub k_prime: f64,
    pub gamma: f64,
    pub error_bps: f64,
    pub c_obs_bps: f64,
}

/// Evolving feedback state: the gain, the step counter, and the history.
#[derive(Debug, Clone, Default)]
pub struct FeedbackState {
    pub k_prime: f64,
    pub time_step: usize,
    pub last_error_bps: f64,
    pub history: Vec<FeedbackRecord>,
}

impl FeedbackState {
    pub fn new(k_prime: f64) -> Self {
        FeedbackState {
            k_prime,
            time_step: 0,
            last_error_bps: 0.0,
            history: Vec::new(),
        }
    }
}

/// One closed-loop update: error against the target, error-normalized
/// learning rate, gain step, then a clamp that keeps the implied steepness
/// inside `[R_MIN, R_MAX]`. Returns the new gain.
pub fn k_update(
    state: &mut FeedbackState,
    c_obs_bps: f64,
    params: &ControllerParams,
) -> Result<f64> {
    if !c_obs_bps.is_finite() {
        return Err(Error::domain(format!(
            "observed capacity must be finite, got {c_obs_bps}"
        )));
    }
    let error = params.c_target_bps - c_obs_bps;
    let gamma = learning_rate(params.vartheta, params.beta, error);
    let (k_min, k_max) = params.k_bounds()?;
    let k_new = (state.k_prime + gamma * error).clamp(k_min, k_max);
    state.time_step += 1;
    state.last_error_bps = error;
    state.k_prime = k_new;
    state.history.push(FeedbackRecord {
        step: state.time_step,
        k_prime: k_new,
        gamma,
        error_bps: error,
        c_obs_bps,
    });
    Ok(k_new)
}

// ---------------------------------------------------------------------------
// Stability
// ---------------------------------------------------------------------------

/// Midpoint slope report for the allocation curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StabilityReport {
    /// Slope of the plain sigmoid at theta0, `r / 4`.
    pub midpoint_slope: f64,
    /// Exact midpoint slope with the correction active, `(r - A B) / 4`;
    /// present when transition parameters were supplied.
    pub adaptive_midpoint_slope: Option<f64>,
    /// Whether the loop satisfies `r <= 4 gamma`.
    pub stable: bool,
}

/// Checks the steepness against the learning rate and reports the midpoint
/// slopes of both allocation forms.
pub fn stability_check(
    r: f64,
    gamma: f64,
    transition: Option<&TransitionParams>,
) -> StabilityReport {
    StabilityReport {
        midpoint_slope: r / 4.0,
        adaptive_midpoint_slope: transition.map(|t| (r - t.amplitude * t.steepness) / 4.0),
        stable: r <= 4.0 * gamma,
    }
}

#[cfg(test)]
// Frozen reference values appear at full decimal precision on purpose.
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;
    use crate::environment::TransitionParams;

    fn fig_transition() -> TransitionParams {
        TransitionParams::from_moments(0.5, 0.2, 0.9, 0.1, 45.0, None, 1.0, 1.0).unwrap()
    }

    fn fig_controller(r: f64) -> ControllerParams {
        ControllerParams::new(
            10.0,
            80.0,
            45.0,
            r,
            1.0,
            2.0e6,
            1.0e6,
            0.02,
            1.0,
            fig_transition(),
        )
        .unwrap()
    }

    #[test]
    fn test_alpha_basic_values() {
        // 1/(1 + e^-0.8), 30-digit oracle.
        let a = alpha_basic(55.0, 0.08, 45.0);
        assert!(
            (a - 0.689_974_481_127_612_44).abs() < 1e-12,
            "alpha(theta0 + 10) at r = 0.08 should be 0.6899745, got {a}"
        );
        assert_eq!(
            alpha_basic(45.0, 0.08, 45.0),
            0.5,
            "midpoint is exactly one half"
        );
        // Endpoint values of the span-70 configuration.
        let low = alpha_basic(10.0, 0.08, 45.0);
        let high = alpha_basic(80.0, 0.08, 45.0);
        assert!((low - 0.057_324_175_898_868_746).abs() < 1e-12);
        assert!((high - 0.942_675_824_101_131_25).abs() < 1e-12);
        // Complementary around the midpoint.
        assert!((low + high - 1.0).abs() < 1e-12);
    }

    #[test]
    fn test_r_from_endpoints_value() {
        // (ln 9 - ln(1/9)) / 70 = 2 ln 9 / 70.
        let r = r_from_endpoints(0.1, 0.9, 10.0, 80.0).unwrap();
        assert!(
            (r - 0.062_777_845_066_749_125).abs() < 1e-12,
            "symmetric 10/90 endpoints over 70 deg give r = 0.0627778, got {r}"
        );
    }

    #[test]
    fn test_r_from_endpoints_round_trip() {
        let r = 0.08;
        let a = alpha_basic(10.0, r, 45.0);
        let b = alpha_basic(80.0, r, 45.0);
        let recovered = r_from_endpoints(a, b, 10.0, 80.0).unwrap();
        assert!(
            (recovered - r).abs() < 1e-12,
            "recovering r through the endpoints drifted: {recovered}"
        );
    }

    #[test]
    fn test_r_from_endpoints_rejects_bad_targets() {
        assert!(r_from_endpoints(0.0, 0.9, 10.0, 80.0).is_err());
        assert!(r_from_endpoints(0.1, 1.0, 10.0, 80.0).is_err());
        assert!(r_from_endpoints(0.9, 0.1, 10.0, 80.0).is_err());
        assert!(r_from_endpoints(0.1, 0.9, 80.0, 10.0).is_err());
    }

    #[test]
    fn test_alpha_adaptive_value() {
        // z = 0.8 - A tanh(10 B) with the regime-moment A, B; exact oracle.
        let a = alpha_adaptive(55.0, 0.08, &fig_transition());
        assert!(
            (a - 0.632_609_522_607_033_42).abs() < 1e-12,
            "corrected alpha at theta0 + 10 should be 0.6326095, got {a}"
        );
    }

    #[test]
    fn test_alpha_adaptive_midpoint_and_dip() {
        let t = fig_transition();
        assert_eq!(
            alpha_adaptive(45.0, 0.08, &t),
            0.5,
            "correction vanishes at theta0"
        );
        // With A*B > r the corrected curve dips below the plain sigmoid just
        // above theta0.
        let plain = alpha_basic(50.0, 0.08, 45.0);
        let corrected = alpha_adaptive(50.0, 0.08, &t);
        assert!(
            corrected < plain,
            "correction should pull the curve down above theta0: {corrected} vs {plain}"
        );
        // And mirror above it below theta0.
        assert!(alpha_adaptive(40.0, 0.08, &t) > alpha_basic(40.0, 0.08, 45.0));
    }

    #[test]
    fn test_alpha_adaptive_approaches_basic_far_out() {
        let t = fig_transition();
        // tanh saturates, so far from theta0 the curves differ by a constant
        // shift A in the exponent; both saturate to the same limits.
        assert!((alpha_adaptive(1000.0, 0.08, &t) - 1.0).abs() < 1e-9);
        assert!(alpha_adaptive(-1000.0, 0.08, &t) < 1e-9);
    }

    #[test]
    fn test_midpoint_slope_matches_finite_difference() {
        let r = 0.05;
        let h = 1e-3;
        let slope = (alpha_basic(45.0 + h, r, 45.0) - alpha_basic(45.0 - h, r, 45.0)) / (2.0 * h);
        assert!(
            ((slope - r / 4.0) / (r / 4.0)).abs() < 1e-6,
            "central difference {slope} should match r/4 = {}",
            r / 4.0
        );
    }

    #[test]
    fn test_adaptive_midpoint_slope_matches_finite_difference() {
        let t = fig_transition();
        let r = 0.08;
        let h = 1e-3;
        let slope = (alpha_adaptive(45.0 + h, r, &t) - alpha_adaptive(45.0 - h, r, &t)) / (2.0 * h);
        let exact = (r - t.amplitude * t.steepness) / 4.0;
        assert!(
            (slope - exact).abs() < 1e-6 * exact.abs().max(1.0),
            "adaptive midpoint slope {slope} should match (r - AB)/4 = {exact}"
        );
    }

    #[test]
    fn test_r_from_k_value() {
        let sigma_c = fig_transition().sigma_c;
        let r = r_from_k(1.0, 0.4, sigma_c, 10.0, 80.0).unwrap();
        assert!(
            (r - 0.025_555_062_599_997_597).abs() < 1e-12,
            "unit gain over the span-70 set should give r = 0.0255551, got {r}"
        );
    }

    #[test]
    fn test_k_bounds_values_and_inverse() {
        let sigma_c = fig_transition().sigma_c;
        let (k_min, k_max) = k_bounds(sigma_c, 10.0, 80.0, 0.4).unwrap();
        assert!(
            (k_min - 0.782_623_792_124_926_39).abs() < 1e-12,
            "lower k bound should be 0.7826238, got {k_min}"
        );
        assert!(
            (k_max - 3.130_495_168_499_705_57).abs() < 1e-12,
            "upper k bound should be 3.1304952, got {k_max}"
        );
        // The bounds map back onto the steepness limits exactly.
        let r_lo = r_from_k(k_min, 0.4, sigma_c, 10.0, 80.0).unwrap();
        let r_hi = r_from_k(k_max, 0.4, sigma_c, 10.0, 80.0).unwrap();
        assert!((r_lo - R_MIN).abs() < 1e-12, "r at the lower bound: {r_lo}");
        assert!((r_hi - R_MAX).abs() < 1e-12, "r at the upper bound: {r_hi}");
    }

    #[test]
    fn test_k_init_clamps() {
        let bounds = (0.7826, 3.1305);
        // 1e6 / 2e6 = 0.5 sits below the band and clamps up.
        let k = k_init(1.0e6, 2.0e6, bounds).unwrap();
        assert_eq!(k, bounds.0);
        // A huge swing clamps down.
        let k = k_init(1.0e9, 2.0e6, bounds).unwrap();
        assert_eq!(k, bounds.1);
        // Inside the band passes through.
        let k = k_init(4.0e6, 2.0e6, bounds).unwrap();
        assert!((k - 2.0).abs() < 1e-15);
        assert!(k_init(1.0, 0.0, bounds).is_err());
    }

    #[test]
    fn test_learning_rate_value() {
        let g = learning_rate(0.02, 1.0, 3.0);
        assert!(
            (g - 0.005).abs() < 1e-15,
            "0.02/(1+3) should be 0.005, got {g}"
        );
        assert_eq!(
            learning_rate(0.02, 1.0, -3.0),
            g,
            "learning rate depends on |error| only"
        );
        assert_eq!(learning_rate(0.02, 1.0, 0.0), 0.02);
    }

    #[test]
    fn test_power_split_sums_exactly() {
        let (ps, pb) = power_split(0.3, 10.0).unwrap();
        assert!((ps - 3.0).abs() < 1e-15);
        assert_eq!(
            ps + pb,
            10.0,
            "split must reassemble to the total bit for bit"
        );
        assert!(power_split(1.2, 10.0).is_err());
        assert!(power_split(0.5, 0.0).is_err());
    }

    #[test]
    fn test_stability_check_examples() {
        let ok = stability_check(0.08, 0.02, None);
        assert!(
            ok.stable,
            "r = 0.08 with gamma = 0.02 sits exactly on the bound"
        );
        assert!((ok.midpoint_slope - 0.02).abs() < 1e-15);
        assert!(ok.adaptive_midpoint_slope.is_none());

        let edge = stability_check(0.02, 0.005, None);
        assert!(edge.stable);

        let bad = stability_check(0.09, 0.02, None);
        assert!(!bad.stable);

        let t = fig_transition();
        let with_adaptive = stability_check(0.08, 0.02, Some(&t));
        let exact = (0.08 - t.amplitude * t.steepness) / 4.0;
        assert!((with_adaptive.adaptive_midpoint_slope.unwrap() - exact).abs() < 1e-15);
    }

    #[test]
    fn test_k_update_moves_toward_target() {
        let params = fig_controller(0.08);
        let mut state = FeedbackState::new(1.0);
        // Observed capacity below target: positive error, gain must grow.
        let k = k_update(&mut state, 1.0e6, &params).unwrap();
        assert!(k > 1.0, "undershooting capacity should raise k', got {k}");
        // Observed above target: gain shrinks.
        let mut state2 = FeedbackState::new(1.0);
        let k2 = k_update(&mut state2, 3.0e6, &params).unwrap();
        assert!(k2 < 1.0, "overshooting capacity should lower k', got {k2}");
        assert_eq!(state.time_step, 1);
        assert_eq!(state.history.len(), 1);
        let rec = state.history[0];
        assert_eq!(rec.step, 1);
        assert!((rec.error_bps - 1.0e6).abs() < 1e-9);
        assert!((rec.c_obs_bps - 1.0e6).abs() < 1e-9);
    }

    #[test]
    fn test_k_update_clamps_implied_r() {
        let params = fig_controller(0.08);
        let (k_min, k_max) = params.k_bounds().unwrap();
        // A flat plant far below target drifts the gain up until the clamp.
        let mut state = FeedbackState::new(k_min);
        for _ in 0..400 {
            k_update(&mut state, 0.0, &params).unwrap();
        }
        assert_eq!(state.k_prime, k_max, "gain should pin at the upper bound");
        let r = params_with_k(&params, state.k_prime).r_current().unwrap();
        assert!((r - R_MAX).abs() < 1e-12);
        // And a plant far above target pins at the lower bound.
        let mut state = FeedbackState::new(k_max);
        for _ in 0..400 {
            k_update(&mut state, 1.0e9, &params).unwrap();
        }
        assert_eq!(state.k_prime, k_min);
    }

    fn params_with_k(p: &ControllerParams, k: f64) -> ControllerParams {
        let mut q = p.clone();
        q.k_prime = k;
        q
    }

    #[test]
    fn test_k_update_converges_on_linear_plant() {
        // Plant: C_obs = c * k', with the target reachable inside the k band.
        let c_target = 2.0e6;
        let plant_gain = c_target / 2.8;
        let params = fig_controller(0.08);
        let (k_min, k_max) = params.k_bounds().unwrap();
        assert!(
            k_min < 2.8 && 2.8 < k_max,
            "plant target must sit inside the band"
        );

        let mut state = FeedbackState::new(k_init(1.0e6, c_target, (k_min, k_max)).unwrap());
        let mut converged_at = None;
        for step in 0..200 {
            let c_obs = plant_gain * state.k_prime;
            k_update(&mut state, c_obs, &params).unwrap();
            if (state.last_error_bps / c_target).abs() < 0.01 {
                converged_at = Some(step);
                break;
            }
        }
        assert!(
            converged_at.is_some(),
            "loop should reach 1% of target within 200 steps, last error {}",
            state.last_error_bps
        );
    }

    #[test]
    fn test_controller_params_validation() {
        let t = fig_transition();
        // theta0 outside the span.
        assert!(
            ControllerParams::new(10.0, 80.0, 5.0, 0.08, 1.0, 1.0e6, 1.0e6, 0.02, 1.0, t).is_err()
        );
        assert!(
            ControllerParams::new(10.0, 80.0, 45.0, 0.0, 1.0, 1.0e6, 1.0e6, 0.02, 1.0, t).is_err()
        );
        assert!(
            ControllerParams::new(10.0, 80.0, 45.0, 0.08, 1.0, 0.0, 1.0e6, 0.02, 1.0, t).is_err()
        );
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn alpha_stays_in_unit_interval(
                theta in -90.0f64..180.0,
                r in 0.001f64..0.5,
                theta0 in 10.0f64..80.0,
            ) {
                let a = alpha_basic(theta, r, theta0);
                prop_assert!(a > 0.0 && a <= 1.0);
                // Strict inequality holds until the sigmoid tail drops
                // below float resolution.
                if (r * (theta - theta0)).abs() < 30.0 {
                    prop_assert!(a < 1.0);
                }
            }

            #[test]
            fn endpoints_round_trip_recovers_r(
                r in 0.005f64..0.3,
                theta_low in 1.0f64..40.0,
                span in 5.0f64..85.0,
                mid_frac in 0.1f64..0.9,
            ) {
                // Keep the endpoint weights away from saturation, where the
                // logit becomes ill conditioned.
                prop_assume!(r * span <= 8.0);
                let theta_high = theta_low + span;
                let theta0 = theta_low + mid_frac * span;
                let a = alpha_basic(theta_low, r, theta0);
                let b = alpha_basic(theta_high, r, theta0);
                let recovered = r_from_endpoints(a, b, theta_low, theta_high).unwrap();
                prop_assert!(
                    ((recovered - r) / r).abs() < 1e-9,
                    "recovered {} from r {}", recovered, r
                );
            }

            #[test]
            fn adaptive_monotone_when_r_dominates(
                r in 0.01f64..0.5,
                amp in 0.0f64..0.5,
                steep in 0.05f64..2.0,
                theta in -20.0f64..110.0,
                h in 0.01f64..5.0,
            ) {
                prop_assume!(r > amp * steep + 1e-6);
                let t = TransitionParams {
                    theta0_deg: 45.0,
                    amplitude: amp,
                    steepness: steep,
                    psi: 1.0,
                    sigma_c: 0.1,
                    delta_mu: amp.max(1e-6),
                    energy: 1.0,
                    lambda: 1.0,
                    c_const: 1.0,
                };
                let lo = alpha_adaptive(theta, r, &t);
                let hi = alpha_adaptive(theta + h, r, &t);
                prop_assert!(hi >= lo - 1e-12, "curve fell from {} to {}", lo, hi);
            }

            #[test]
            fn learning_rate_never_exceeds_vartheta(
                vartheta in 0.001f64..0.5,
                beta in 0.0f64..10.0,
                error in -1.0e9f64..1.0e9,
            ) {
                let g = learning_rate(vartheta, beta, error);
                prop_assert!(g > 0.0 && g <= vartheta + 1e-18);
            }

            #[test]
            fn k_update_stays_in_bounds(
                k0 in 0.0f64..5.0,
                c_obs in 0.0f64..1.0e8,
            ) {
                let t = TransitionParams::from_moments(0.5, 0.2, 0.9, 0.1, 45.0, None, 1.0, 1.0).unwrap();
                let params = ControllerParams::new(
                    10.0, 80.0, 45.0, 0.08, k0, 2.0e6, 1.0e6, 0.02, 1.0, t,
                ).unwrap();
                let (k_min, k_max) = params.k_bounds().unwrap();
                let mut state = FeedbackState::new(k0.clamp(k_min, k_max));
                for _ in 0..16 {
                    let k = k_update(&mut state, c_obs, &params).unwrap();
                    prop_assert!(k >= k_min && k <= k_max);
                }
            }

            #[test]
            fn power_split_reassembles(
                alpha in 0.0f64..=1.0,
                p in 0.001f64..1.0e3,
            ) {
                let (ps, pb) = power_split(alpha, p).unwrap();
                prop_assert!(ps >= 0.0 && pb >= 0.0);
                prop_assert_eq!(ps + pb, p);
            }
        }
    }
}
