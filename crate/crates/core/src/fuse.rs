//! Cross-agent integration: decode received BEV cells into voxel
//! contributions and merge them into the ego volume by a
//! confidence-weighted mean, leaving untouched voxels bit-identical.

use serde::{Deserialize, Serialize};

use crate::bev::{decode_altitude, sigmoid, BEV_PLANES};
use crate::dmpg::SparseCellSet;
use crate::grid::{argmax_labels, FeatureVolume, OccupancyGrid, FEATURE_CHANNELS};

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FusionParams {
    /// Occupancy logit assigned to decoded cells.
    pub g_expand: f64,
    /// Minimum per-source weight in the fusion mean.
    pub ego_floor: f64,
}

impl Default for FusionParams {
    fn default() -> Self {
        Self {
            g_expand: 4.0,
            ego_floor: 0.1,
        }
    }
}

impl FusionParams {
    pub fn validate(&self) -> Result<(), String> {
        if self.g_expand <= 0.0 || self.g_expand.is_nan() {
            return Err(format!("g_expand must be positive, got {}", self.g_expand));
        }
        if !(0.0..=1.0).contains(&self.ego_floor) {
            return Err(format!(
                "ego_floor must be in [0,1], got {}",
                self.ego_floor
            ));
        }
        Ok(())
    }
}

/// Merge received cell sets (already in ego grid coordinates) into the ego
/// volume. Each cell contributes a full channel vector at the level its
/// altitude decodes to; per voxel the result is the confidence-weighted
/// mean of the ego vector and all contributions. Voxels nobody contributed
/// to are returned bit-identical to the ego input.
pub fn integrate(
    ego: &FeatureVolume,
    received: &[SparseCellSet],
    params: &FusionParams,
) -> FeatureVolume {
    params.validate().expect("invalid fusion params");
    let spec = *ego.spec();
    let (nx, ny, nz) = spec.dims;
    let mut fused = ego.clone();
    if received.is_empty() {
        return fused;
    }

    // Contributions per voxel, keyed by linear index.
    let mut contributions: std::collections::BTreeMap<usize, Vec<[f32; FEATURE_CHANNELS]>> =
        std::collections::BTreeMap::new();
    for set in received {
        for cell in set.cells() {
            let (x, y) = (cell.x as usize, cell.y as usize);
            assert!(x < nx && y < ny, "received cell ({x},{y}) outside ego grid");
            assert_eq!(cell.payload.len(), BEV_PLANES, "payload plane count");
            let z = decode_altitude(cell.altitude, nz);
            let mut vec = [0.0f32; FEATURE_CHANNELS];
            vec[0] = params.g_expand as f32;
            for c in 0..BEV_PLANES {
                vec[1 + c] = (cell.payload[c] as f64 * nz as f64) as f32;
            }
            contributions
                .entry(spec.linear_index(x, y, z))
                .or_default()
                .push(vec);
        }
    }

    let w_recv = params.ego_floor.max(sigmoid(params.g_expand));
    for (index, mut vecs) in contributions {
        // Canonical summation order makes the result independent of the
        // order the messages arrived in.
        vecs.sort_by(|a, b| {
            a.iter()
                .map(|v| v.to_bits())
                .cmp(b.iter().map(|v| v.to_bits()))
        });
        let z = index % nz;
        let y = (index / nz) % ny;
        let x = index / (nz * ny);
        let ego_vec = ego.voxel(x, y, z);
        let w_ego = params.ego_floor.max(sigmoid(ego_vec[0] as f64));
        let mut acc = [0.0f64; FEATURE_CHANNELS];
        for (c, a) in acc.iter_mut().enumerate() {
            *a = w_ego * ego_vec[c] as f64;
        }
        let mut weight = w_ego;
        for vec in &vecs {
            for (c, a) in acc.iter_mut().enumerate() {
                *a += w_recv * vec[c] as f64;
            }
            weight += w_recv;
        }
        let out = fused.voxel_mut(x, y, z);
        for (c, a) in acc.iter().enumerate() {
            out[c] = (a / weight) as f32;
        }
    }
    fused
}

/// Task head: fused features to semantic labels.
pub fn predict(fused: &FeatureVolume) -> OccupancyGrid {
    argmax_labels(fused)
}
