//! Link-budget terms: free-space spreading, elevation-scaled atmospheric
//! absorption, and table-driven excess losses.
//!
//! All losses are positive dB values. Conversion helpers at the bottom move
//! between dB and linear power / amplitude scales.
//!
//! # Example
//!
//! ```
//! use noma_ris::pathloss::{free_space_loss, PathLossTable};
//!
//! let fsl = free_space_loss(2.0e9, 1000.0).unwrap();
//! assert!((fsl - 98.4706).abs() < 1e-4);
//!
//! let clutter = PathLossTable::new(vec![10.0, 30.0, 90.0], vec![34.3, 25.0, 12.0]).unwrap();
//! assert!((clutter.loss_db(20.0).value_db - 29.65).abs() < 1e-12);
//! ```

use std::io::Read;
use std::path::Path;

use crate::error::{Error, Result};

/// Constant term of the free-space loss formula when frequency is in Hz and
/// distance in meters (20 log10(4 pi / c)).
pub const FREE_SPACE_CONSTANT_DB: f64 = -147.55;

// ---------------------------------------------------------------------------
// Free functions
// ---------------------------------------------------------------------------

/// Free-space path loss in dB for a carrier at `frequency_hz` over
/// `distance_m` meters: `20 log10(f) + 20 log10(d) - 147.55`.
pub fn free_space_loss(frequency_hz: f64, distance_m: f64) -> Result<f64> {
    if !(frequency_hz > 0.0) || !frequency_hz.is_finite() {
        return Err(Error::domain(format!(
            "free-space loss needs frequency > 0 Hz, got {frequency_hz}"
        )));
    }
    if !(distance_m > 0.0) || !distance_m.is_finite() {
        return Err(Error::domain(format!(
            "free-space loss needs distance > 0 m, got {distance_m}"
        )));
    }
    Ok(20.0 * frequency_hz.log10() + 20.0 * distance_m.log10() + FREE_SPACE_CONSTANT_DB)
}

/// Slant-path atmospheric absorption in dB: the zenith value for the carrier
/// scaled by the cosecant of the elevation angle.
///
/// Elevation must lie in (0, 90] degrees; the cosecant model diverges at the
/// horizon. The `clamped` flag reports whether the carrier fell outside the
/// zenith table range.
pub fn atmospheric_loss(
    table: &ZenithAttenuationTable,
    frequency_hz: f64,
    elevation_deg: f64,
) -> Result<Interpolated> {
    if !(elevation_deg > 0.0 && elevation_deg <= 90.0) {
        return Err(Error::domain(format!(
            "atmospheric loss needs elevation in (0, 90] deg, got {elevation_deg}"
        )));
    }
    let zenith = table.zenith_db(frequency_hz)?;
    let sin_e = elevation_deg.to_radians().sin();
    Ok(Interpolated {
        value_db: zenith.value_db / sin_e,
        clamped: zenith.clamped,
    })
}

/// Piecewise-linear lookup into an elevation/loss table, clamping outside the
/// covered range.
pub fn table_loss(table: &PathLossTable, elevation_deg: f64) -> Interpolated {
    table.loss_db(elevation_deg)
}

// ---------------------------------------------------------------------------
// Interpolation tables
// ---------------------------------------------------------------------------

/// An interpolated value along with whether the query point was outside the
/// table and got clamped to the nearest endpoint.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interpolated {
    pub value_db: f64,
    pub clamped: bool,
}

fn interp_clamped(xs: &[f64], ys: &[f64], x: f64) -> Interpolated {
    debug_assert_eq!(xs.len(), ys.len());
    debug_assert!(!xs.is_empty());
    if x <= xs[0] {
        return Interpolated {
            value_db: ys[0],
            clamped: x < xs[0],
        };
    }
    if x >= xs[xs.len() - 1] {
        return Interpolated {
            value_db: ys[ys.len() - 1],
            clamped: x > xs[xs.len() - 1],
        };
    }
    for i in 1..xs.len() {
        if x <= xs[i] {
            let t = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
            return Interpolated {
                value_db: ys[i - 1] + t * (ys[i] - ys[i - 1]),
                clamped: false,
            };
        }
    }
    unreachable!("query fell through a sorted table");
}

fn validate_table(xs: &[f64], ys: &[f64], what: &str, x_name: &str) -> Result<()> {
    if xs.is_empty() {
        return Err(Error::domain(format!("{what} table has no entries")));
    }
    if xs.len() != ys.len() {
        return Err(Error::dimension(format!(
            "{what} table has {} {x_name} values but {} losses",
            xs.len(),
            ys.len()
        )));
    }
    if !xs.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::domain(format!(
            "{what} table {x_name} values must be strictly increasing"
        )));
    }
    if xs.iter().chain(ys.iter()).any(|v| !v.is_finite()) {
        return Err(Error::domain(format!(
            "{what} table contains non-finite values"
        )));
    }
    Ok(())
}

/// Elevation-indexed excess loss in dB, linearly interpolated between
/// breakpoints and clamped outside the covered elevation range.
#[derive(Debug, Clone, PartialEq)]
pub struct PathLossTable {
    elevation_deg: Vec<f64>,
    loss_db: Vec<f64>,
}

impl PathLossTable {
    pub fn new(elevation_deg: Vec<f64>, loss_db: Vec<f64>) -> Result<Self> {
        validate_table(&elevation_deg, &loss_db, "path loss", "elevation")?;
        Ok(PathLossTable {
            elevation_deg,
            loss_db,
        })
    }

    /// Loads a table from CSV with the exact header `elevation_deg,loss_db`.
    pub fn from_csv_reader<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::Reader::from_reader(reader);
        let headers = rdr
            .headers()
            .map_err(|e| Error::config(format!("path loss CSV: {e}")))?
            .clone();
        let expected = ["elevation_deg", "loss_db"];
        let got: Vec<&str> = headers.iter().map(str::trim).collect();
        if got != expected {
            return Err(Error::config(format!(
                "path loss CSV header must be `elevation_deg,loss_db`, got `{}`",
                got.join(",")
            )));
        }
        let mut elevation = Vec::new();
        let mut loss = Vec::new();
        for (i, record) in rdr.records().enumerate() {
            let record =
                record.map_err(|e| Error::config(format!("path loss CSV row {}: {e}", i + 2)))?;
            let parse = |field: &str, name: &str| -> Result<f64> {
                field.trim().parse::<f64>().map_err(|_| {
                    Error::config(format!(
                        "path loss CSV row {}: bad {name} value `{field}`",
                        i + 2
                    ))
                })
            };
            elevation.push(parse(&record[0], "elevation_deg")?);
            loss.push(parse(&record[1], "loss_db")?);
        }
        PathLossTable::new(elevation, loss)
    }

    pub fn from_csv_path(path: impl AsRef<Path>) -> Result<Self> {
        let file = std::fs::File::open(path.as_ref())?;
        Self::from_csv_reader(file)
    }

    pub fn loss_db(&self, elevation_deg: f64) -> Interpolated {
        interp_clamped(&self.elevation_deg, &self.loss_db, elevation_deg)
    }

    pub fn breakpoints(&self) -> (&[f64], &[f64]) {
        (&self.elevation_deg, &self.loss_db)
    }
}

/// Zenith atmospheric absorption in dB indexed by carrier frequency,
/// linearly interpolated and clamped outside the covered band.
#[derive(Debug, Clone, PartialEq)]
pub struct ZenithAttenuationTable {
    frequency_hz: Vec<f64>,
    loss_db: Vec<f64>,
}

impl ZenithAttenuationTable {
    pub fn new(frequency_hz: Vec<f64>, loss_db: Vec<f64>) -> Result<Self> {
        validate_table(&frequency_hz, &loss_db, "zenith attenuation", "frequency")?;
        Ok(ZenithAttenuationTable {
            frequency_hz,
            loss_db,
        })
    }

    /// Zenith absorption for a carrier, before elevation scaling.
    pub fn zenith_db(&self, frequency_hz: f64) -> Result<Interpolated> {
        if !(frequency_hz > 0.0) || !frequency_hz.is_finite() {
            return Err(Error::domain(format!(
                "zenith attenuation needs frequency > 0 Hz, got {frequency_hz}"
            )));
        }
        Ok(interp_clamped(
            &self.frequency_hz,
            &self.loss_db,
            frequency_hz,
        ))
    }

    pub fn breakpoints(&self) -> (&[f64], &[f64]) {
        (&self.frequency_hz, &self.loss_db)
    }
}

impl Default for ZenithAttenuationTable {
    /// Clear-sky gaseous absorption magnitudes for the low microwave bands.
    /// Only the 2 GHz entry is load-bearing for the default scenario.
    fn default() -> Self {
        ZenithAttenuationTable {
            frequency_hz: vec![1.0e9, 2.0e9, 4.0e9, 12.0e9, 20.0e9, 30.0e9],
            loss_db: vec![0.04, 0.07, 0.10, 0.18, 0.60, 1.20],
        }
    }
}

// ---------------------------------------------------------------------------
// Per-link budget composition
// ---------------------------------------------------------------------------

/// Straight-line distances for the five links of the topology, in meters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Distances {
    pub sat_user_m: f64,
    pub sat_ris_m: f64,
    pub bs_user_m: f64,
    pub bs_ris_m: f64,
    pub ris_user_m: f64,
}

impl Distances {
    fn validate(&self) -> Result<()> {
        let named = [
            (self.sat_user_m, "sat_user"),
            (self.sat_ris_m, "sat_ris"),
            (self.bs_user_m, "bs_user"),
            (self.bs_ris_m, "bs_ris"),
            (self.ris_user_m, "ris_user"),
        ];
        for (d, name) in named {
            if !(d > 0.0) || !d.is_finite() {
                return Err(Error::domain(format!(
                    "distance {name} must be > 0 m, got {d}"
                )));
            }
        }
        Ok(())
    }
}

/// Everything needed to evaluate the five link losses at one elevation.
///
/// `sat_gain_db` folds the combined satellite EIRP advantage and ground
/// receive gain into the space links; it is subtracted from the
/// satellite-to-user and satellite-to-RIS budgets.
#[derive(Debug, Clone)]
pub struct LinkBudget {
    pub frequency_hz: f64,
    pub distances: Distances,
    pub zenith: ZenithAttenuationTable,
    /// Excess loss on the satellite-to-user path (clutter and blockage).
    pub clutter: PathLossTable,
    /// Elevation-dependent shadowing on the terrestrial-side paths.
    pub shadow: PathLossTable,
    pub sat_gain_db: f64,
}

/// Net loss of each link at one elevation, in dB. `clamped` is set when any
/// table lookup fell outside its covered range.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkPathLosses {
    pub pl_sat_user_db: f64,
    pub pl_sat_ris_db: f64,
    pub pl_bs_user_db: f64,
    pub pl_bs_ris_db: f64,
    pub pl_ris_user_db: f64,
    pub clamped: bool,
}

impl LinkBudget {
    pub fn new(
        frequency_hz: f64,
        distances: Distances,
        zenith: ZenithAttenuationTable,
        clutter: PathLossTable,
        shadow: PathLossTable,
        sat_gain_db: f64,
    ) -> Result<Self> {
        if !(frequency_hz > 0.0) || !frequency_hz.is_finite() {
            return Err(Error::domain(format!(
                "link budget needs frequency > 0 Hz, got {frequency_hz}"
            )));
        }
        if !sat_gain_db.is_finite() || sat_gain_db < 0.0 {
            return Err(Error::domain(format!(
                "satellite gain must be finite and >= 0 dB, got {sat_gain_db}"
            )));
        }
        distances.validate()?;
        Ok(LinkBudget {
            frequency_hz,
            distances,
            zenith,
            clutter,
            shadow,
            sat_gain_db,
        })
    }

    /// Composes the five link losses at `elevation_deg`:
    ///
    /// * satellite-to-user: free space + atmosphere + clutter - satellite gain
    /// * satellite-to-RIS:  free space + atmosphere - satellite gain
    /// * BS-to-user and RIS-to-user: free space + shadowing
    /// * BS-to-RIS: free space only
    pub fn compute_link_losses(&self, elevation_deg: f64) -> Result<LinkPathLosses> {
        let atm = atmospheric_loss(&self.zenith, self.frequency_hz, elevation_deg)?;
        let clutter = self.clutter.loss_db(elevation_deg);
        let shadow = self.shadow.loss_db(elevation_deg);

        let fsl = |d: f64| free_space_loss(self.frequency_hz, d);
        let pl_sat_user_db =
            fsl(self.distances.sat_user_m)? + atm.value_db + clutter.value_db - self.sat_gain_db;
        let pl_sat_ris_db = fsl(self.distances.sat_ris_m)? + atm.value_db - self.sat_gain_db;
        let pl_bs_user_db = fsl(self.distances.bs_user_m)? + shadow.value_db;
        let pl_bs_ris_db = fsl(self.distances.bs_ris_m)?;
        let pl_ris_user_db = fsl(self.distances.ris_user_m)? + shadow.value_db;

        let losses = LinkPathLosses {
            pl_sat_user_db,
            pl_sat_ris_db,
            pl_bs_user_db,
            pl_bs_ris_db,
            pl_ris_user_db,
            clamped: atm.clamped || clutter.clamped || shadow.clamped,
        };
        for (v, name) in [
            (losses.pl_sat_user_db, "sat_user"),
            (losses.pl_sat_ris_db, "sat_ris"),
            (losses.pl_bs_user_db, "bs_user"),
            (losses.pl_bs_ris_db, "bs_ris"),
            (losses.pl_ris_user_db, "ris_user"),
        ] {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::domain(format!(
                    "net {name} path loss is {v} dB; losses must stay finite and >= 0 \
                     (is sat_gain_db larger than the link budget?)"
                )));
            }
        }
        Ok(losses)
    }
}

// ---------------------------------------------------------------------------
// Scale conversions
// ---------------------------------------------------------------------------

/// dB loss to linear power ratio (>= 1 for positive dB).
pub fn db_to_linear_power(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// dB loss to the multiplicative amplitude attenuation `1/sqrt(10^(dB/10))`.
pub fn amplitude_attenuation(db: f64) -> f64 {
    10f64.powf(-db / 20.0)
}
