use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evolution::CartesianGrid;
use crate::numerics::{ExtrapolationSpec, QuadratureSpec};
use crate::schrodinger::{Dimension, PhysicalParams, RadialGrid};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Evolve,
    Green,
    Dalembert,
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

/// Ring packet parameters; the dimension comes from the run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PacketSpec {
    pub r0: f64,
    pub sigma: f64,
}

impl Default for PacketSpec {
    fn default() -> Self {
        Self { r0: 10.0, sigma: 1.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum GridSpec {
    Radial { r_min: f64, r_max: f64, points: usize },
    /// `points × points` nodes on `[0, extent]²`.
    Cartesian { extent: f64, points: usize },
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec::Radial {
            r_min: 0.0,
            r_max: 20.0,
            points: 2048,
        }
    }
}

impl GridSpec {
    pub fn radial(&self) -> Result<RadialGrid> {
        match *self {
            GridSpec::Radial { r_min, r_max, points } => RadialGrid::new(r_min, r_max, points),
            GridSpec::Cartesian { .. } => Err(Error::InvalidInput("this command needs a radial grid".into())),
        }
    }

    pub fn cartesian(&self) -> Result<CartesianGrid> {
        match *self {
            GridSpec::Cartesian { extent, points } => CartesianGrid::quarter_plane(extent, points),
            GridSpec::Radial { .. } => Err(Error::InvalidInput("expected a Cartesian grid".into())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GreenSection {
    /// Source radius ρ; the field point r runs over the grid.
    pub rho: f64,
}

impl Default for GreenSection {
    fn default() -> Self {
        Self { rho: 10.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DalembertSection {
    pub r_min: f64,
    pub r_max: f64,
    pub r_step: f64,
    pub extrapolation: ExtrapolationSpec,
    /// Center and width of the Gaussian test function for the 3D smeared
    /// evaluation.
    pub gaussian_center: f64,
    pub gaussian_width: f64,
}

impl Default for DalembertSection {
    fn default() -> Self {
        Self {
            r_min: 0.0,
            r_max: 3.0,
            r_step: 0.1,
            extrapolation: ExtrapolationSpec::default(),
            gaussian_center: 3.0,
            gaussian_width: 0.5,
        }
    }
}

impl DalembertSection {
    pub fn radii(&self) -> Result<Vec<f64>> {
        if !(self.r_min >= 0.0) || !(self.r_max >= self.r_min) || !(self.r_step > 0.0) {
            return Err(Error::InvalidInput(
                "dalembert radii need 0 <= r_min <= r_max and r_step > 0".into(),
            ));
        }
        let n = ((self.r_max - self.r_min) / self.r_step + 1e-9).floor() as usize;
        Ok((0..=n).map(|i| self.r_min + self.r_step * i as f64).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VerifySection {
    /// Replaces the tolerance of every check.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
}

/// Everything one invocation needs. Every field except `command` has a
/// default, so an empty file is a valid configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub command: Option<Command>,
    pub dimension: Dimension,
    pub times: Vec<f64>,
    pub output_path: PathBuf,
    pub format: OutputFormat,
    pub params: PhysicalParams,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub packet: Option<PacketSpec>,
    pub grid: GridSpec,
    pub quadrature: QuadratureSpec,
    pub green: GreenSection,
    pub dalembert: DalembertSection,
    pub verify: VerifySection,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            command: None,
            dimension: Dimension::Two,
            times: vec![0.25, 0.5, 1.0],
            output_path: PathBuf::from("radialprop_out"),
            format: OutputFormat::Csv,
            params: PhysicalParams::default(),
            packet: None,
            grid: GridSpec::default(),
            quadrature: QuadratureSpec::default(),
            green: GreenSection::default(),
            dalembert: DalembertSection::default(),
            verify: VerifySection::default(),
        }
    }
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::InvalidInput(format!("config: {}", e.message())))
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::InvalidInput(format!("config: {e}")))
    }

    pub fn packet(&self) -> PacketSpec {
        self.packet.unwrap_or_default()
    }

    /// Times must be non-empty, finite, positive and strictly increasing.
    pub fn validate_evolution_times(&self) -> Result<()> {
        if self.times.is_empty() {
            return Err(Error::InvalidInput("times must not be empty".into()));
        }
        if self.times.iter().any(|t| !(t.is_finite() && *t > 0.0)) {
            return Err(Error::InvalidInput("times must be finite and > 0".into()));
        }
        if self.times.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidInput("times must be strictly increasing".into()));
        }
        Ok(())
    }

    pub fn validate_common(&self) -> Result<()> {
        self.params.validate()?;
        self.quadrature.validate()?;
        if self.times.iter().any(|t| !t.is_finite()) {
            return Err(Error::InvalidInput("times must be finite".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn empty_file_is_default() {
        assert_eq!(RunConfig::from_toml("").unwrap(), RunConfig::default());
    }

    #[test]
    fn full_file_parses() {
        let cfg = RunConfig::from_toml(
            r#"
            command = "evolve"
            dimension = 3
            times = [0.5]
            output_path = "out"
            format = "json"
            [params]
            mass = 2.0
            hbar = 1.0
            c = 1.0
            [packet]
            r0 = 8.0
            sigma = 0.5
            [grid]
            kind = "cartesian"
            extent = 20.0
            points = 64
            [verify]
            tolerance = 1e-20
            "#,
        )
        .unwrap();
        assert_eq!(cfg.command, Some(Command::Evolve));
        assert_eq!(cfg.dimension, Dimension::Three);
        assert_eq!(cfg.format, OutputFormat::Json);
        assert_eq!(cfg.packet().r0, 8.0);
        assert_eq!(cfg.grid, GridSpec::Cartesian { extent: 20.0, points: 64 });
        assert_eq!(cfg.verify.tolerance, Some(1e-20));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(RunConfig::from_toml("dimension = 4").is_err());
        assert!(RunConfig::from_toml("unknown_key = 1").is_err());
        assert!(RunConfig::from_toml("command = \"fly\"").is_err());
        let cfg = RunConfig {
            times: vec![],
            ..RunConfig::default()
        };
        assert!(cfg.validate_evolution_times().is_err());
        let cfg = RunConfig {
            times: vec![0.5, 0.25],
            ..RunConfig::default()
        };
        assert!(cfg.validate_evolution_times().is_err());
    }

    #[test]
    fn dalembert_radii() {
        let r = DalembertSection::default().radii().unwrap();
        assert_eq!(r.len(), 31);
        assert!((r[30] - 3.0).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn round_trip(
            times in prop::collection::vec(0.001f64..100.0, 0..5),
            mass in 0.1f64..10.0,
            r0 in 1.0f64..50.0,
            points in 3usize..5000,
            three in any::<bool>(),
            tol in prop::option::of(1e-30f64..1.0),
        ) {
            let cfg = RunConfig {
                command: Some(Command::Verify),
                dimension: if three { Dimension::Three } else { Dimension::Two },
                times,
                params: PhysicalParams { mass, ..PhysicalParams::default() },
                packet: Some(PacketSpec { r0, sigma: r0 / 7.0 }),
                grid: GridSpec::Cartesian { extent: r0 * 2.0, points },
                verify: VerifySection { tolerance: tol },
                ..RunConfig::default()
            };
            let text = cfg.to_toml().unwrap();
            prop_assert_eq!(RunConfig::from_toml(&text).unwrap(), cfg);
        }
    }
}
