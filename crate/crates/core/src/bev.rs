//! Altitude-aware reduction: compress a feature volume into per-pillar BEV
//! planes plus a normalized mean-altitude plane, and the analytic expansion
//! used at fusion time.
//!
//! A pillar's valid voxels are those whose occupancy probability clears the
//! threshold. Class planes hold the per-pillar channel sums divided by Z;
//! the altitude plane holds the mean valid level normalized by (Z-1), with
//! -1 marking pillars that have no valid voxel at all.

use thiserror::Error;

use crate::grid::{FeatureVolume, GridSpec, SemanticClass, FEATURE_CHANNELS};
use crate::mask::Mask3D;

/// Number of class planes in the reference layout.
pub const BEV_PLANES: usize = SemanticClass::COUNT;

/// Sentinel altitude for pillars with no valid voxels.
pub const EMPTY_PILLAR: f32 = -1.0;

#[inline]
pub fn sigmoid(x: f64) -> f64 {
    1.0 / (1.0 + (-x).exp())
}

#[derive(Debug, Error)]
pub enum CodecError {
    #[error("theta must be inside (0,1), got {0}")]
    ThetaOutOfRange(f64),
    #[error("bad projection matrix: {0}")]
    BadPsi(String),
}

/// Compressed BEV representation of a feature volume.
#[derive(Debug, Clone, PartialEq)]
pub struct BevFeature {
    spec: GridSpec,
    c_out: usize,
    /// X*Y mean-altitude plane; [`EMPTY_PILLAR`] marks empty pillars.
    altitude: Vec<f32>,
    /// X*Y*c_out class planes, pillar-contiguous.
    planes: Vec<f32>,
    /// Validity threshold the volume was compressed with.
    theta: f64,
}

impl BevFeature {
    pub fn new_empty(spec: GridSpec, c_out: usize, theta: f64) -> Self {
        Self {
            altitude: vec![EMPTY_PILLAR; spec.cell_count()],
            planes: vec![0.0; spec.cell_count() * c_out],
            c_out,
            spec,
            theta,
        }
    }

    pub fn spec(&self) -> &GridSpec {
        &self.spec
    }

    pub fn c_out(&self) -> usize {
        self.c_out
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    #[inline]
    pub fn altitude(&self, x: usize, y: usize) -> f32 {
        self.altitude[self.spec.cell_index(x, y)]
    }

    #[inline]
    pub fn planes_at(&self, x: usize, y: usize) -> &[f32] {
        let i = self.spec.cell_index(x, y) * self.c_out;
        &self.planes[i..i + self.c_out]
    }

    pub fn set_cell(&mut self, x: usize, y: usize, altitude: f32, planes: &[f32]) {
        assert_eq!(planes.len(), self.c_out, "plane count mismatch");
        let ci = self.spec.cell_index(x, y);
        self.altitude[ci] = altitude;
        self.planes[ci * self.c_out..(ci + 1) * self.c_out].copy_from_slice(planes);
    }

    pub fn is_empty_pillar(&self, x: usize, y: usize) -> bool {
        self.altitude(x, y) == EMPTY_PILLAR
    }

    /// Check the sentinel coupling: altitude in {-1} union [0,1], and empty
    /// pillars carry all-zero planes.
    pub fn check_invariants(&self) -> Result<(), String> {
        let (nx, ny) = (self.spec.dims.0, self.spec.dims.1);
        for x in 0..nx {
            for y in 0..ny {
                let a = self.altitude(x, y);
                if a != EMPTY_PILLAR && !(0.0..=1.0).contains(&a) {
                    return Err(format!("altitude({x},{y}) = {a} outside {{-1}} u [0,1]"));
                }
                if a == EMPTY_PILLAR && self.planes_at(x, y).iter().any(|&v| v != 0.0) {
                    return Err(format!("empty pillar ({x},{y}) has nonzero planes"));
                }
            }
        }
        Ok(())
    }
}

fn check_theta(theta: f64) -> Result<(), CodecError> {
    if !(theta > 0.0 && theta < 1.0) {
        return Err(CodecError::ThetaOutOfRange(theta));
    }
    Ok(())
}

/// Voxels whose occupancy probability strictly clears the threshold.
pub fn valid_mask(vol: &FeatureVolume, theta: f64) -> Result<Mask3D, CodecError> {
    check_theta(theta)?;
    let (nx, ny, nz) = vol.spec().dims;
    let mut mask = Mask3D::new(nx, ny, nz);
    for x in 0..nx {
        for y in 0..ny {
            for z in 0..nz {
                if sigmoid(vol.occupancy_logit(x, y, z) as f64) > theta {
                    mask.set(x, y, z, true);
                }
            }
        }
    }
    Ok(mask)
}

/// Per-pillar normalized mean altitude of the set voxels; empty pillars get
/// the -1 sentinel. Level z carries embedding value z, normalized by (Z-1).
pub fn altitude_encode(mask: &Mask3D) -> Vec<f32> {
    let (nx, ny, nz) = mask.dims();
    let mut plane = vec![EMPTY_PILLAR; nx * ny];
    for x in 0..nx {
        for y in 0..ny {
            let mut sum = 0.0f64;
            let mut count = 0usize;
            for z in 0..nz {
                if mask.get(x, y, z) {
                    sum += z as f64;
                    count += 1;
                }
            }
            if count > 0 {
                let a = if nz == 1 {
                    0.0
                } else {
                    (sum / count as f64) / (nz - 1) as f64
                };
                plane[x * ny + y] = a.clamp(0.0, 1.0) as f32;
            }
        }
    }
    plane
}

/// Fixed linear map from the 8 concatenated planes (7 class means plus the
/// altitude plane) to the output planes. The default routes the class means
/// through unchanged and keeps altitude in its dedicated field.
#[derive(Debug, Clone, PartialEq)]
pub struct Psi {
    rows: Vec<[f64; BEV_PLANES + 1]>,
}

impl Psi {
    pub fn identity_routing() -> Self {
        let mut rows = Vec::with_capacity(BEV_PLANES);
        for c in 0..BEV_PLANES {
            let mut row = [0.0; BEV_PLANES + 1];
            row[c] = 1.0;
            rows.push(row);
        }
        Self { rows }
    }

    /// Load a projection matrix from a text file.
    pub fn from_file(path: &std::path::Path) -> Result<Self, CodecError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CodecError::BadPsi(format!("reading {}: {e}", path.display())))?;
        Self::from_text(&text)
    }

    /// Parse a text matrix: one row per output plane, 8 floats per row.
    pub fn from_text(text: &str) -> Result<Self, CodecError> {
        let mut rows = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let vals: Result<Vec<f64>, _> = line.split_whitespace().map(str::parse).collect();
            let vals = vals.map_err(|e| CodecError::BadPsi(format!("row {}: {e}", i + 1)))?;
            if vals.len() != BEV_PLANES + 1 {
                return Err(CodecError::BadPsi(format!(
                    "row {} has {} values, expected {}",
                    i + 1,
                    vals.len(),
                    BEV_PLANES + 1
                )));
            }
            if vals.iter().any(|v| !v.is_finite()) {
                return Err(CodecError::BadPsi(format!(
                    "row {} has non-finite values",
                    i + 1
                )));
            }
            let mut row = [0.0; BEV_PLANES + 1];
            row.copy_from_slice(&vals);
            rows.push(row);
        }
        if rows.is_empty() {
            return Err(CodecError::BadPsi("matrix has no rows".to_string()));
        }
        Ok(Self { rows })
    }

    pub fn c_out(&self) -> usize {
        self.rows.len()
    }

    fn apply(&self, means: &[f64; BEV_PLANES], altitude: f64) -> Vec<f64> {
        self.rows
            .iter()
            .map(|row| {
                let mut acc = row[BEV_PLANES] * altitude;
                for c in 0..BEV_PLANES {
                    acc += row[c] * means[c];
                }
                acc
            })
            .collect()
    }
}

/// Compress with the default identity-routing projection.
pub fn compress(vol: &FeatureVolume, theta: f64) -> Result<BevFeature, CodecError> {
    compress_with(vol, theta, &Psi::identity_routing())
}

/// Compress a feature volume: per pillar, class-channel sums over the valid
/// voxels divided by Z, plus the normalized mean altitude.
pub fn compress_with(vol: &FeatureVolume, theta: f64, psi: &Psi) -> Result<BevFeature, CodecError> {
    assert_eq!(
        vol.channels(),
        FEATURE_CHANNELS,
        "compress expects the reference channel layout"
    );
    let mask = valid_mask(vol, theta)?;
    let spec = *vol.spec();
    let (nx, ny, nz) = spec.dims;
    let mut bev = BevFeature::new_empty(spec, psi.c_out(), theta);
    let altitude = altitude_encode(&mask);
    let zero = vec![0.0f32; psi.c_out()];
    for x in 0..nx {
        for y in 0..ny {
            let a = altitude[x * ny + y];
            if a == EMPTY_PILLAR {
                bev.set_cell(x, y, EMPTY_PILLAR, &zero);
                continue;
            }
            let mut sums = [0.0f64; BEV_PLANES];
            for z in 0..nz {
                if mask.get(x, y, z) {
                    for (c, sum) in sums.iter_mut().enumerate() {
                        *sum += vol.get(x, y, z, 1 + c) as f64;
                    }
                }
            }
            let means = sums.map(|s| s / nz as f64);
            let planes: Vec<f32> = psi
                .apply(&means, a as f64)
                .into_iter()
                .map(|v| v as f32)
                .collect();
            bev.set_cell(x, y, a, &planes);
        }
    }
    Ok(bev)
}

/// Analytic inverse of [`compress`] for the default projection: each
/// nonempty pillar's class logits are rescaled by Z and placed at the level
/// the altitude plane decodes to (round half to even), with the occupancy
/// logit set to `g_expand`.
pub fn expand(bev: &BevFeature, g_expand: f64) -> FeatureVolume {
    assert_eq!(
        bev.c_out(),
        BEV_PLANES,
        "expand requires the 7-plane reference layout"
    );
    let spec = *bev.spec();
    let (nx, ny, nz) = spec.dims;
    let mut vol = FeatureVolume::zeros(spec);
    for x in 0..nx {
        for y in 0..ny {
            let a = bev.altitude(x, y);
            if a == EMPTY_PILLAR {
                continue;
            }
            let zhat = decode_altitude(a, nz);
            let planes = bev.planes_at(x, y);
            let vox = vol.voxel_mut(x, y, zhat);
            vox[0] = g_expand as f32;
            for c in 0..BEV_PLANES {
                vox[1 + c] = (planes[c] as f64 * nz as f64) as f32;
            }
        }
    }
    vol
}

/// Level a normalized altitude decodes to, rounding halves to even.
pub fn decode_altitude(altitude: f32, z_dim: usize) -> usize {
    let z = (altitude as f64 * (z_dim - 1) as f64).round_ties_even();
    (z.max(0.0) as usize).min(z_dim - 1)
}

/// Raw float payload bytes of a full volume (headers excluded).
pub fn volume_payload_bytes(spec: &GridSpec, channels: usize) -> u64 {
    spec.voxel_count() as u64 * channels as u64 * 4
}

/// Raw float payload bytes of the BEV form: c_out planes plus altitude.
pub fn bev_payload_bytes(spec: &GridSpec, c_out: usize) -> u64 {
    spec.cell_count() as u64 * (c_out as u64 + 1) * 4
}

/// Exact float-count compression ratio of the codec.
pub fn compression_ratio(z_dim: usize, channels: usize, c_out: usize) -> f64 {
    (z_dim * channels) as f64 / (c_out + 1) as f64
}
