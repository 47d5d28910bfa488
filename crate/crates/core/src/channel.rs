//! Small-scale fading, the RIS reflection operator, and composition of the
//! effective end-to-end channels.
//!
//! Satellite links fade per a shadowed Rician model (Nakagami-m line of
//! sight over a Gaussian scatter floor); terrestrial links are Rayleigh. The
//! RIS applies a per-element phase shift with a common amplitude, and the
//! effective channels fold large-scale losses in on the amplitude scale.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, Gamma, Normal};

use crate::error::{Error, Result};
use crate::pathloss::{amplitude_attenuation, LinkPathLosses};

// ---------------------------------------------------------------------------
// Fading samplers
// ---------------------------------------------------------------------------

/// Shadowed Rician fading: the line-of-sight power is Nakagami-m (Gamma with
/// shape `m_shadow`, mean `omega_los`), its phase uniform, and the scatter
/// component circular Gaussian with power `2 b_scatter`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShadowedRicianParams {
    /// Half the scatter power per complex dimension.
    pub b_scatter: f64,
    /// Nakagami shape of the line-of-sight power.
    pub m_shadow: f64,
    /// Mean line-of-sight power.
    pub omega_los: f64,
}

impl ShadowedRicianParams {
    pub fn new(b_scatter: f64, m_shadow: f64, omega_los: f64) -> Result<Self> {
        if !(b_scatter >= 0.0) || !b_scatter.is_finite() {
            return Err(Error::domain(format!(
                "scatter power must be finite and >= 0, got {b_scatter}"
            )));
        }
        if !(m_shadow > 0.0) || !m_shadow.is_finite() {
            return Err(Error::domain(format!(
                "shadowing shape must be positive, got {m_shadow}"
            )));
        }
        if !(omega_los >= 0.0) || !omega_los.is_finite() {
            return Err(Error::domain(format!(
                "line-of-sight power must be finite and >= 0, got {omega_los}"
            )));
        }
        Ok(ShadowedRicianParams {
            b_scatter,
            m_shadow,
            omega_los,
        })
    }

    /// Second moment of the envelope, `omega_los + 2 b_scatter`.
    pub fn mean_power(&self) -> f64 {
        self.omega_los + 2.0 * self.b_scatter
    }
}

impl Default for ShadowedRicianParams {
    /// Frequently used average-shadowing parameter set.
    fn default() -> Self {
        ShadowedRicianParams {
            b_scatter: 0.126,
            m_shadow: 10.1,
            omega_los: 0.835,
        }
    }
}

fn normal_draw<R: Rng + ?Sized>(rng: &mut R, std: f64) -> f64 {
    if std == 0.0 {
        return 0.0;
    }
    Normal::new(0.0, std)
        .expect("validated std is finite and positive")
        .sample(rng)
}

/// One shadowed Rician draw. Consumes, in order: the line-of-sight power,
/// the line-of-sight phase, then the two scatter components.
pub fn sample_shadowed_rician<R: Rng + ?Sized>(
    params: &ShadowedRicianParams,
    rng: &mut R,
) -> Complex64 {
    let los = if params.omega_los > 0.0 {
        let power = Gamma::new(params.m_shadow, params.omega_los / params.m_shadow)
            .expect("validated shape and scale are positive")
            .sample(rng);
        let phase: f64 = rng.random_range(0.0..std::f64::consts::TAU);
        Complex64::from_polar(power.sqrt(), phase)
    } else {
        Complex64::ZERO
    };
    let scatter_std = params.b_scatter.sqrt();
    los + Complex64::new(normal_draw(rng, scatter_std), normal_draw(rng, scatter_std))
}

/// One unit-power Rayleigh draw (circular Gaussian, E|x|^2 = 1).
pub fn sample_rayleigh<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let std = std::f64::consts::FRAC_1_SQRT_2;
    Complex64::new(normal_draw(rng, std), normal_draw(rng, std))
}

// ---------------------------------------------------------------------------
// RIS reflection
// ---------------------------------------------------------------------------

/// How the RIS phases are chosen for a snapshot.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RisStrategy {
    /// Co-phase the BS-RIS-user cascade for the user with the strongest
    /// direct link.
    AlignStrongest,
    /// Co-phase the cascade for one specific user.
    AlignUser(usize),
    /// Independent uniform phases.
    Random,
}

/// Per-element phase shifts with a common reflection amplitude.
#[derive(Debug, Clone, PartialEq)]
pub struct RisConfig {
    pub phases: Vec<f64>,
    pub amplitude: f64,
}

impl RisConfig {
    pub fn new(phases: Vec<f64>, amplitude: f64) -> Result<Self> {
        if !(amplitude > 0.0 && amplitude <= 1.0) {
            return Err(Error::domain(format!(
                "reflection amplitude must lie in (0, 1], got {amplitude}"
            )));
        }
        if phases.iter().any(|p| !p.is_finite()) {
            return Err(Error::domain("RIS phases must be finite"));
        }
        Ok(RisConfig { phases, amplitude })
    }

    pub fn elements(&self) -> usize {
        self.phases.len()
    }

    /// Diagonal of the reflection operator: `amplitude * exp(j phase_n)`.
    pub fn reflection(&self) -> DVector<Complex64> {
        DVector::from_iterator(
            self.phases.len(),
            self.phases
                .iter()
                .map(|&p| Complex64::from_polar(self.amplitude, p)),
        )
    }
}

// ---------------------------------------------------------------------------
// Channel snapshot
// ---------------------------------------------------------------------------

/// All small-scale channels plus per-user link losses for one trial.
///
/// Dimensions: `U` users, `M` BS antennas, `N` RIS elements. The satellite
/// carries a single antenna, so its user links are scalars and its RIS link
/// is a length-`N` vector.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelSnapshot {
    /// Satellite to user, one scalar per user.
    pub sat_user: Vec<Complex64>,
    /// Satellite to RIS, length `N`.
    pub sat_ris: DVector<Complex64>,
    /// BS to user, one length-`M` vector per user.
    pub bs_user: Vec<DVector<Complex64>>,
    /// BS to RIS, `N x M`.
    pub bs_ris: DMatrix<Complex64>,
    /// RIS to user, one length-`N` vector per user.
    pub ris_user: Vec<DVector<Complex64>>,
    /// Net link losses per user (environment injection makes these differ
    /// across users).
    pub losses: Vec<LinkPathLosses>,
}

impl ChannelSnapshot {
    pub fn new(
        sat_user: Vec<Complex64>,
        sat_ris: DVector<Complex64>,
        bs_user: Vec<DVector<Complex64>>,
        bs_ris: DMatrix<Complex64>,
        ris_user: Vec<DVector<Complex64>>,
        losses: Vec<LinkPathLosses>,
    ) -> Result<Self> {
        let users = sat_user.len();
        if users == 0 {
            return Err(Error::dimension("snapshot needs at least one user"));
        }
        let elements = sat_ris.len();
        let antennas = bs_ris.ncols();
        if bs_ris.nrows() != elements {
            return Err(Error::dimension(format!(
                "BS-RIS matrix has {} rows but the RIS has {elements} elements",
                bs_ris.nrows()
            )));
        }
        if antennas == 0 {
            return Err(Error::dimension("snapshot needs at least one BS antenna"));
        }
        if bs_user.len() != users || ris_user.len() != users || losses.len() != users {
            return Err(Error::dimension(format!(
                "per-user arrays disagree: {} sat, {} bs, {} ris, {} losses",
                users,
                bs_user.len(),
                ris_user.len(),
                losses.len()
            )));
        }
        for (u, g) in bs_user.iter().enumerate() {
            if g.len() != antennas {
                return Err(Error::dimension(format!(
                    "user {u} BS vector has length {} but the BS has {antennas} antennas",
                    g.len()
                )));
            }
        }
        for (u, f) in ris_user.iter().enumerate() {
            if f.len() != elements {
                return Err(Error::dimension(format!(
                    "user {u} RIS vector has length {} but the RIS has {elements} elements",
                    f.len()
                )));
            }
        }
        Ok(ChannelSnapshot {
            sat_user,
            sat_ris,
            bs_user,
            bs_ris,
            ris_user,
            losses,
        })
    }

    pub fn users(&self) -> usize {
        self.sat_user.len()
    }

    pub fn antennas(&self) -> usize {
        self.bs_ris.ncols()
    }

    pub fn elements(&self) -> usize {
        self.sat_ris.len()
    }

    /// Writes every complex entry as `link,user,index,re,im`. Links without a
    /// user dimension leave the user column empty; the BS-RIS matrix is
    /// flattened row-major (`index = n * M + m`).
    pub fn dump_csv<W: std::io::Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(["link", "user", "index", "re", "im"])
            .map_err(csv_io)?;
        let mut row = |link: &str, user: Option<usize>, index: usize, v: Complex64| {
            let user = user.map(|u| u.to_string()).unwrap_or_default();
            w.write_record([
                link.to_string(),
                user,
                index.to_string(),
                v.re.to_string(),
                v.im.to_string(),
            ])
            .map_err(csv_io)
        };
        for (u, v) in self.sat_user.iter().enumerate() {
            row("sat_user", Some(u), 0, *v)?;
        }
        for (n, v) in self.sat_ris.iter().enumerate() {
            row("sat_ris", None, n, *v)?;
        }
        for (u, g) in self.bs_user.iter().enumerate() {
            for (m, v) in g.iter().enumerate() {
                row("bs_user", Some(u), m, *v)?;
            }
        }
        let antennas = self.antennas();
        for n in 0..self.elements() {
            for m in 0..antennas {
                row("bs_ris", None, n * antennas + m, self.bs_ris[(n, m)])?;
            }
        }
        for (u, f) in self.ris_user.iter().enumerate() {
            for (n, v) in f.iter().enumerate() {
                row("ris_user", Some(u), n, *v)?;
            }
        }
        Ok(())
    }
}

fn csv_io(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::config(format!("csv write failed: {other:?}")),
    }
}

// ---------------------------------------------------------------------------
// Effective channels
// ---------------------------------------------------------------------------

/// Beam direction matched to the direct BS channel of `user`; uniform when
/// that channel is exactly zero.
fn direct_beam_direction(snapshot: &ChannelSnapshot, user: usize) -> DVector<Complex64> {
    let g = &snapshot.bs_user[user];
    let norm = g.norm();
    if norm > 0.0 {
        g / Complex64::from(norm)
    } else {
        let m = g.len();
        DVector::from_element(m, Complex64::from(1.0 / (m as f64).sqrt()))
    }
}

/// Phases for the chosen strategy. `Random` draws from `rng`; the align
/// strategies co-phase the per-element BS-RIS-user cascade, composed along
/// the target user's direct beam direction, onto the direct path.
pub fn ris_phases<R: Rng + ?Sized>(
    strategy: RisStrategy,
    snapshot: &ChannelSnapshot,
    rng: &mut R,
) -> Result<Vec<f64>> {
    let n = snapshot.elements();
    match strategy {
        RisStrategy::Random => Ok((0..n)
            .map(|_| rng.random_range(0.0..std::f64::consts::TAU))
            .collect()),
        RisStrategy::AlignStrongest => {
            let user = strongest_user(snapshot);
            align_phases(snapshot, user)
        }
        RisStrategy::AlignUser(user) => {
            if user >= snapshot.users() {
                return Err(Error::dimension(format!(
                    "align target user {user} out of range for {} users",
                    snapshot.users()
                )));
            }
            align_phases(snapshot, user)
        }
    }
}

/// User with the largest direct-link effective power `|g|^2 / PL`.
fn strongest_user(snapshot: &ChannelSnapshot) -> usize {
    let mut best = 0usize;
    let mut best_gain = f64::NEG_INFINITY;
    for u in 0..snapshot.users() {
        let att = amplitude_attenuation(snapshot.losses[u].pl_bs_user_db);
        let gain = snapshot.bs_user[u].norm_squared() * att * att;
        if gain > best_gain {
            best_gain = gain;
            best = u;
        }
    }
    best
}

fn align_phases(snapshot: &ChannelSnapshot, user: usize) -> Result<Vec<f64>> {
    let a = direct_beam_direction(snapshot, user);
    let f = &snapshot.ris_user[user];
    let mut phases = Vec::with_capacity(snapshot.elements());
    for elem in 0..snapshot.elements() {
        let row_dot_a: Complex64 = (0..snapshot.antennas())
            .map(|m| snapshot.bs_ris[(elem, m)] * a[m])
            .sum();
        let cascade = f[elem].conj() * row_dot_a;
        // Rotate each element term onto the (real, positive) direct term.
        let phase = if cascade.norm() > 0.0 {
            -cascade.arg()
        } else {
            0.0
        };
        phases.push(phase);
    }
    Ok(phases)
}

/// Effective BS-side channel of `user` as the length-`M` vector `t` with the
/// conjugations folded in, so a beam `w` produces the scalar `t . w`
/// (plain, non-conjugating dot product):
///
/// `t = conj(g_u)/sqrt(PL_bs_user) + (Theta f_u)^* G / sqrt(PL_ris_user * PL_bs_ris)`
pub fn effective_terrestrial_channel(
    snapshot: &ChannelSnapshot,
    ris: &RisConfig,
    user: usize,
) -> Result<DVector<Complex64>> {
    check_user_and_ris(snapshot, ris, user)?;
    let losses = &snapshot.losses[user];
    let att_direct = amplitude_attenuation(losses.pl_bs_user_db);
    let att_cascade =
        amplitude_attenuation(losses.pl_ris_user_db) * amplitude_attenuation(losses.pl_bs_ris_db);

    let mut t = snapshot.bs_user[user].map(|g| g.conj() * att_direct);
    if snapshot.elements() > 0 {
        let reflection = ris.reflection();
        // s_n = conj(f_n) * theta_n; cascade = G^T s.
        let s = DVector::from_iterator(
            snapshot.elements(),
            snapshot.ris_user[user]
                .iter()
                .zip(reflection.iter())
                .map(|(f, th)| f.conj() * th),
        );
        let cascade = snapshot.bs_ris.tr_mul(&s);
        t += cascade * Complex64::from(att_cascade);
    }
    Ok(t)
}

/// Effective satellite channel of `user`, a scalar:
///
/// `h = conj(h_u)/sqrt(PL_sat_user) + sum_n conj(f_n) theta_n H_n / sqrt(PL_ris_user * PL_sat_ris)`
pub fn effective_satellite_channel(
    snapshot: &ChannelSnapshot,
    ris: &RisConfig,
    user: usize,
) -> Result<Complex64> {
    check_user_and_ris(snapshot, ris, user)?;
    let losses = &snapshot.losses[user];
    let att_direct = amplitude_attenuation(losses.pl_sat_user_db);
    let att_cascade =
        amplitude_attenuation(losses.pl_ris_user_db) * amplitude_attenuation(losses.pl_sat_ris_db);

    let direct = snapshot.sat_user[user].conj() * att_direct;
    let reflection = ris.reflection();
    let cascade: Complex64 = snapshot.ris_user[user]
        .iter()
        .zip(reflection.iter())
        .zip(snapshot.sat_ris.iter())
        .map(|((f, th), h)| f.conj() * th * h)
        .sum();
    Ok(direct + cascade * att_cascade)
}

fn check_user_and_ris(snapshot: &ChannelSnapshot, ris: &RisConfig, user: usize) -> Result<()> {
    if user >= snapshot.users() {
        return Err(Error::dimension(format!(
            "user {user} out of range for {} users",
            snapshot.users()
        )));
    }
    if ris.elements() != snapshot.elements() {
        return Err(Error::dimension(format!(
            "RIS config has {} phases but the snapshot has {} elements",
            ris.elements(),
            snapshot.elements()
        )));
    }
    Ok(())
}
