//! Environmental attenuation models for the two elevation regimes and the
//! smooth transition between them.
//!
//! Low elevations see ground clutter whose log-domain impact is modeled as a
//! normal draw (hence log-normal attenuation); high elevations see a Gaussian
//! mixture capturing distinct sky conditions. The moments of the two models
//! at the crossover elevation shape a bounded tanh transition term that the
//! controller superimposes on its sigmoid.

use rand::Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};

// ---------------------------------------------------------------------------
// Attenuation models
// ---------------------------------------------------------------------------

/// Log-normal attenuation: draws are `exp(g)` with `g ~ N(mu_log, sigma_log^2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogNormalModel {
    pub mu_log: f64,
    pub sigma_log: f64,
}

impl LogNormalModel {
    pub fn new(mu_log: f64, sigma_log: f64) -> Result<Self> {
        if !mu_log.is_finite() || !sigma_log.is_finite() || sigma_log < 0.0 {
            return Err(Error::domain(format!(
                "log-normal model needs finite mu and sigma >= 0, got ({mu_log}, {sigma_log})"
            )));
        }
        Ok(LogNormalModel { mu_log, sigma_log })
    }

    /// Mean of the linear attenuation, `exp(mu + sigma^2/2)`.
    pub fn linear_mean(&self) -> f64 {
        (self.mu_log + 0.5 * self.sigma_log * self.sigma_log).exp()
    }

    /// Variance of the linear attenuation.
    pub fn linear_variance(&self) -> f64 {
        let s2 = self.sigma_log * self.sigma_log;
        (s2.exp() - 1.0) * (2.0 * self.mu_log + s2).exp()
    }
}

/// Draws one linear attenuation sample `exp(g)`.
pub fn sample_lognormal<R: Rng + ?Sized>(model: &LogNormalModel, rng: &mut R) -> f64 {
    let normal =
        Normal::new(model.mu_log, model.sigma_log).expect("validated sigma is never negative");
    normal.sample(rng).exp()
}

/// One Gaussian mixture component.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GmmComponent {
    pub weight: f64,
    pub mean: f64,
    pub std: f64,
}

/// Gaussian mixture over the log-domain environmental impact.
#[derive(Debug, Clone, PartialEq)]
pub struct GmmModel {
    components: Vec<GmmComponent>,
}

impl GmmModel {
    /// Weights must be nonnegative and sum to 1 within 1e-12; component
    /// standard deviations must be positive.
    pub fn new(components: Vec<GmmComponent>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::domain("GMM needs at least one component"));
        }
        let mut weight_sum = 0.0;
        for (i, c) in components.iter().enumerate() {
            if !(c.weight >= 0.0) {
                return Err(Error::domain(format!(
                    "GMM component {i} has negative weight {}",
                    c.weight
                )));
            }
            if !(c.std > 0.0) || !c.std.is_finite() {
                return Err(Error::domain(format!(
                    "GMM component {i} needs std > 0, got {}",
                    c.std
                )));
            }
            if !c.mean.is_finite() {
                return Err(Error::domain(format!(
                    "GMM component {i} has non-finite mean"
                )));
            }
            weight_sum += c.weight;
        }
        if (weight_sum - 1.0).abs() > 1e-12 {
            return Err(Error::domain(format!(
                "GMM weights must sum to 1 within 1e-12, got {weight_sum}"
            )));
        }
        Ok(GmmModel { components })
    }

    pub fn components(&self) -> &[GmmComponent] {
        &self.components
    }

    /// Mixture mean, sum of weighted component means.
    pub fn mean(&self) -> f64 {
        self.components.iter().map(|c| c.weight * c.mean).sum()
    }

    /// Mixture variance: `sum w (sigma^2 + mu^2) - mean^2`.
    pub fn variance(&self) -> f64 {
        let mean = self.mean();
        let second: f64 = self
            .components
            .iter()
            .map(|c| c.weight * (c.std * c.std + c.mean * c.mean))
            .sum();
        second - mean * mean
    }

    pub fn std(&self) -> f64 {
        self.variance().sqrt()
    }
}

/// Draws one log-domain sample from the mixture: picks a component by weight,
/// then draws from its normal.
pub fn sample_gmm<R: Rng + ?Sized>(model: &GmmModel, rng: &mut R) -> f64 {
    let u: f64 = rng.random();
    let mut acc = 0.0;
    let mut chosen = model.components.len() - 1;
    for (i, c) in model.components.iter().enumerate() {
        acc += c.weight;
        if u < acc {
            chosen = i;
            break;
        }
    }
    let c = &model.components[chosen];
    Normal::new(c.mean, c.std)
        .expect("validated component std is positive")
        .sample(rng)
}

// ---------------------------------------------------------------------------
// Transition shaping
// ---------------------------------------------------------------------------

/// Pooled spread of the two regimes at the crossover, `sqrt(sl^2 + sh^2)`.
pub fn combined_sigma(sigma_low: f64, sigma_high: f64) -> Result<f64> {
    if sigma_low < 0.0 || sigma_high < 0.0 || !sigma_low.is_finite() || !sigma_high.is_finite() {
        return Err(Error::domain(format!(
            "combined sigma needs nonnegative finite spreads, got ({sigma_low}, {sigma_high})"
        )));
    }
    Ok((sigma_low * sigma_low + sigma_high * sigma_high).sqrt())
}

/// Normalization factor `E / (delta_mu + lambda * sigma_c)`.
pub fn psi(energy: f64, delta_mu: f64, lambda: f64, sigma_c: f64) -> Result<f64> {
    if energy < 0.0 || delta_mu < 0.0 || lambda < 0.0 || sigma_c < 0.0 {
        return Err(Error::domain(
            "psi arguments must be nonnegative".to_string(),
        ));
    }
    let denom = delta_mu + lambda * sigma_c;
    if !(denom > 0.0) {
        return Err(Error::domain(
            "psi denominator delta_mu + lambda*sigma_c must be positive".to_string(),
        ));
    }
    Ok(energy / denom)
}

/// Transition amplitude `psi * delta_mu`.
pub fn transition_amplitude(psi: f64, delta_mu: f64) -> f64 {
    psi * delta_mu
}

/// Transition steepness `1 / (c_const + sigma_c)`.
pub fn transition_steepness(c_const: f64, sigma_c: f64) -> Result<f64> {
    let denom = c_const + sigma_c;
    if !(denom > 0.0) {
        return Err(Error::domain(format!(
            "transition steepness denominator must be positive, got {denom}"
        )));
    }
    Ok(1.0 / denom)
}

/// Bounded correction `A * tanh(B * (theta - theta0))`.
pub fn transition_term(theta_deg: f64, theta0_deg: f64, amplitude: f64, steepness: f64) -> f64 {
    amplitude * (steepness * (theta_deg - theta0_deg)).tanh()
}

/// Transition shape derived from the regime moments at the crossover
/// elevation. All derived fields are fixed at construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransitionParams {
    pub theta0_deg: f64,
    /// Correction amplitude `A = psi * delta_mu`.
    pub amplitude: f64,
    /// Correction steepness `B = 1 / (c_const + sigma_c)`.
    pub steepness: f64,
    pub psi: f64,
    pub sigma_c: f64,
    pub delta_mu: f64,
    pub energy: f64,
    pub lambda: f64,
    pub c_const: f64,
}

impl TransitionParams {
    /// Builds the transition from regime moments. `energy` defaults to
    /// `delta_mu` when not given.
    #[allow(clippy::too_many_arguments)]
    pub fn from_moments(
        mu_low: f64,
        sigma_low: f64,
        mu_high: f64,
        sigma_high: f64,
        theta0_deg: f64,
        energy: Option<f64>,
        lambda: f64,
        c_const: f64,
    ) -> Result<Self> {
        if !theta0_deg.is_finite() {
            return Err(Error::domain("theta0 must be finite"));
        }
        let delta_mu = (mu_high - mu_low).abs();
        let sigma_c = combined_sigma(sigma_low, sigma_high)?;
        let energy = energy.unwrap_or(delta_mu);
        let psi = psi(energy, delta_mu, lambda, sigma_c)?;
        let amplitude = transition_amplitude(psi, delta_mu);
        let steepness = transition_steepness(c_const, sigma_c)?;
        Ok(TransitionParams {
            theta0_deg,
            amplitude,
            steepness,
            psi,
            sigma_c,
            delta_mu,
            energy,
            lambda,
            c_const,
        })
    }

    /// The correction at `theta_deg`.
    pub fn term(&self, theta_deg: f64) -> f64 {
        transition_term(theta_deg, self.theta0_deg, self.amplitude, self.steepness)
    }
}

/// The full environment description: one model per elevation regime plus the
/// transition-shaping constants.
#[derive(Debug, Clone, PartialEq)]
pub struct EnvironmentModel {
    pub lognormal: LogNormalModel,
    pub gmm: GmmModel,
    /// Spread weighting in the psi denominator.
    pub lambda: f64,
    /// Offset in the steepness denominator.
    pub c_const: f64,
    /// Normalization energy; `None` falls back to `delta_mu`.
    pub energy: Option<f64>,
}

impl EnvironmentModel {
    /// Derives the transition shape at the crossover elevation from the two
    /// models' moments (log-normal log-domain moments against the mixture
    /// moments).
    pub fn transition_params(&self, theta0_deg: f64) -> Result<TransitionParams> {
        TransitionParams::from_moments(
            self.lognormal.mu_log,
            self.lognormal.sigma_log,
            self.gmm.mean(),
            self.gmm.std(),
            theta0_deg,
            self.energy,
            self.lambda,
            self.c_const,
        )
    }
}
