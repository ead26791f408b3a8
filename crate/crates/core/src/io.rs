//! File formats: polynomial systems (`.psys.json`), slices (`.slice.json`),
//! point sets (`.pts.json`), single points (`.pt.json`), models
//! (`.model.json`), and pseudowitness sets (`.pwset.json`). Every output
//! embeds the run configuration that produced it.

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{LinearSlice, PolynomialSystem, Rng};
use crate::error::{CoreError, Result};
use crate::realness::normalize_projective;
use crate::solver::SolutionSet;
use crate::tracker::TrackOptions;
use crate::varieties::{
    build_abstract_join, AbstractJoin, Factor, JoinMode, Parameterization, PseudoWitnessSet,
};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunConfig {
    pub seed: u64,
    pub tolerances: TrackOptions,
    pub threads: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 0,
            tolerances: TrackOptions::default(),
            threads: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PointSpace {
    Affine,
    Projective,
}

/// A single point file. Projective points are normalized on ingest to unit
/// norm with the first nonzero coordinate real-positive.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PointFile {
    #[serde(with = "crate::algebra::poly::cpair_vec")]
    pub coords: Vec<Complex64>,
    pub space: PointSpace,
}

impl PointFile {
    pub fn affine(coords: Vec<Complex64>) -> Self {
        PointFile {
            coords,
            space: PointSpace::Affine,
        }
    }

    pub fn ingest(self) -> Vec<Complex64> {
        match self.space {
            PointSpace::Affine => self.coords,
            PointSpace::Projective => normalize_projective(&self.coords),
        }
    }
}

/// Declarative factor description for `.model.json`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FactorSpec {
    Veronese { n: usize, d: u32 },
    Segre { dims: Vec<usize> },
    Wedge { k: usize, n: usize },
    /// `q -> q^power` on degree-`base_deg` forms in `nvars` variables.
    PowerForm { nvars: usize, base_deg: u32, power: u32 },
    Custom { map: PolynomialSystem },
    Implicit { system: PolynomialSystem, dim: usize },
}

impl FactorSpec {
    pub fn build(&self) -> Result<Factor> {
        Ok(match self {
            FactorSpec::Veronese { n, d } => Factor::Param(Parameterization::veronese(*n, *d)),
            FactorSpec::Segre { dims } => Factor::Param(Parameterization::segre(dims.clone())),
            FactorSpec::Wedge { k, n } => Factor::Param(Parameterization::wedge(*k, *n)),
            FactorSpec::PowerForm {
                nvars,
                base_deg,
                power,
            } => Factor::Param(crate::models::form_power_map(*nvars, *base_deg, *power)?),
            FactorSpec::Custom { map } => Factor::Param(Parameterization::custom(map.clone())),
            FactorSpec::Implicit { system, dim } => Factor::Implicit {
                system: system.clone(),
                dim: *dim,
            },
        })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModelSpec {
    pub seed: u64,
    pub mode: JoinMode,
    pub factors: Vec<FactorSpec>,
}

impl ModelSpec {
    /// Rebuild the join deterministically from the recorded seed.
    pub fn build(&self) -> Result<AbstractJoin> {
        let mut rng = Rng::from_seed(self.seed);
        let factors: Vec<Factor> = self
            .factors
            .iter()
            .map(FactorSpec::build)
            .collect::<Result<_>>()?;
        build_abstract_join(factors, self.mode, &mut rng)
    }
}

/// On-disk form of a pseudowitness set; everything needed to reuse it for
/// later membership queries.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PwsetFile {
    pub config: RunConfig,
    pub system: PolynomialSystem,
    pub proj: Vec<usize>,
    pub slice_image: LinearSlice,
    pub slice_fiber: LinearSlice,
    pub points: SolutionSet,
    pub dim_total: usize,
    pub image_dim: usize,
    pub image_deg: usize,
    pub fiber_dim: usize,
    pub fiber_deg: usize,
    pub warnings: Vec<String>,
}

impl PwsetFile {
    pub fn from_pwset(pw: &PseudoWitnessSet, config: RunConfig) -> Self {
        PwsetFile {
            config,
            system: pw.system.clone(),
            proj: pw.proj.clone(),
            slice_image: pw.slice_image.clone(),
            slice_fiber: pw.slice_fiber.clone(),
            points: pw.points.clone(),
            dim_total: pw.dim_total,
            image_dim: pw.image_dim,
            image_deg: pw.image_deg,
            fiber_dim: pw.fiber_dim,
            fiber_deg: pw.fiber_deg,
            warnings: pw.warnings.clone(),
        }
    }

    pub fn into_pwset(self) -> PseudoWitnessSet {
        PseudoWitnessSet {
            system: self.system,
            proj: self.proj,
            slice_image: self.slice_image,
            slice_fiber: self.slice_fiber,
            points: self.points,
            dim_total: self.dim_total,
            image_dim: self.image_dim,
            image_deg: self.image_deg,
            fiber_dim: self.fiber_dim,
            fiber_deg: self.fiber_deg,
            warnings: self.warnings,
        }
    }
}

pub fn save_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    std::fs::write(path, text)?;
    Ok(())
}

pub fn load_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CoreError::Input(format!("cannot read {}: {e}", path.display())))?;
    Ok(serde_json::from_str(&text)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn model_spec_round_trip_is_deterministic() {
        let spec = ModelSpec {
            seed: 99,
            mode: JoinMode::AffineCone,
            factors: vec![
                FactorSpec::Veronese { n: 1, d: 3 },
                FactorSpec::Veronese { n: 1, d: 3 },
            ],
        };
        let a = spec.build().unwrap();
        let json = serde_json::to_string(&spec).unwrap();
        let spec2: ModelSpec = serde_json::from_str(&json).unwrap();
        let b = spec2.build().unwrap();
        assert_eq!(a.system, b.system);
    }

    #[test]
    fn projective_points_are_normalized_on_ingest() {
        let p = PointFile {
            coords: vec![Complex64::new(0.0, 2.0), Complex64::new(2.0, 0.0)],
            space: PointSpace::Projective,
        };
        let v = p.ingest();
        let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        assert!((norm - 1.0).abs() < 1e-12);
        // first nonzero coordinate is real-positive
        assert!(v[0].re > 0.0 && v[0].im.abs() < 1e-12);
    }
}
