//! Dual-mask perceptual guidance: per-cell quality scores, support and
//! request masks, planar warping between agent grids, and
//! intersection-gated cell selection for transmission.
//!
//! A cell's quality is `alpha * h/sqrt(h^2+d^2) + beta * |G|/epsilon` where
//! h is the agent's height over the grid floor, d the horizontal distance
//! from the agent's ground projection to the cell center, |G| the gradient
//! magnitude of the BEV feature norm, and epsilon the per-map gradient
//! normalizer. Cells scoring strictly above xi form the support mask; the
//! request mask is its complement.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bev::{BevFeature, EMPTY_PILLAR};
use crate::grid::{GridSpec, Pose};
use crate::mask::Mask2D;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct QualityParams {
    pub alpha: f64,
    pub beta: f64,
    /// Quality threshold for the support mask.
    pub xi: f64,
    /// Floor for the per-map gradient normalizer.
    pub epsilon_floor: f64,
}

impl Default for QualityParams {
    fn default() -> Self {
        Self {
            alpha: 0.5,
            beta: 0.5,
            xi: 0.8,
            epsilon_floor: 1e-6,
        }
    }
}

impl QualityParams {
    pub fn validate(&self) -> Result<(), String> {
        if self.alpha < 0.0 || !self.alpha.is_finite() {
            return Err(format!("alpha must be nonnegative, got {}", self.alpha));
        }
        if self.beta < 0.0 || !self.beta.is_finite() {
            return Err(format!("beta must be nonnegative, got {}", self.beta));
        }
        if !(0.0..=1.0).contains(&self.xi) {
            return Err(format!("xi must be in [0,1], got {}", self.xi));
        }
        if self.epsilon_floor <= 0.0 || self.epsilon_floor.is_nan() {
            return Err(format!(
                "epsilon_floor must be positive, got {}",
                self.epsilon_floor
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum DmpgError {
    #[error("agent must be above the grid floor (h = {0})")]
    AgentBelowGround(f64),
    #[error("invalid quality parameters: {0}")]
    BadParams(String),
}

/// L2 norm of each pillar's planes (empty pillars score zero).
fn norm_map(bev: &BevFeature) -> Vec<f64> {
    let (nx, ny) = (bev.spec().dims.0, bev.spec().dims.1);
    let mut out = vec![0.0; nx * ny];
    for x in 0..nx {
        for y in 0..ny {
            let sq: f64 = bev
                .planes_at(x, y)
                .iter()
                .map(|&v| (v as f64) * (v as f64))
                .sum();
            out[x * ny + y] = sq.sqrt();
        }
    }
    out
}

/// Gradient magnitude of the BEV feature norm: central differences with
/// edge replication.
pub fn gradient_map(bev: &BevFeature) -> Vec<f64> {
    let (nx, ny) = (bev.spec().dims.0, bev.spec().dims.1);
    let n = norm_map(bev);
    let at = |x: isize, y: isize| -> f64 {
        let x = x.clamp(0, nx as isize - 1) as usize;
        let y = y.clamp(0, ny as isize - 1) as usize;
        n[x * ny + y]
    };
    let mut out = vec![0.0; nx * ny];
    for x in 0..nx {
        for y in 0..ny {
            let gx = (at(x as isize + 1, y as isize) - at(x as isize - 1, y as isize)) / 2.0;
            let gy = (at(x as isize, y as isize + 1) - at(x as isize, y as isize - 1)) / 2.0;
            out[x * ny + y] = (gx * gx + gy * gy).sqrt();
        }
    }
    out
}

/// Per-cell quality scores for one agent's BEV map.
///
/// `grid_pose` anchors the BEV grid in the world (identity when the grid is
/// world-aligned); `agent_pose` is the observing agent's pose.
pub fn quality_map(
    bev: &BevFeature,
    grid_pose: &Pose,
    agent_pose: &Pose,
    qp: &QualityParams,
) -> Result<Vec<f64>, DmpgError> {
    qp.validate().map_err(DmpgError::BadParams)?;
    let spec = bev.spec();
    let ground_z = grid_pose.translation[2] + spec.ground_z();
    let h = agent_pose.translation[2] - ground_z;
    if h <= 0.0 {
        return Err(DmpgError::AgentBelowGround(h));
    }
    let grad = gradient_map(bev);
    let eps = grad
        .iter()
        .fold(0.0f64, |a, &b| a.max(b))
        .max(qp.epsilon_floor);
    let (nx, ny) = (spec.dims.0, spec.dims.1);
    let vs = spec.voxel_size;
    let mut scores = vec![0.0; nx * ny];
    for x in 0..nx {
        for y in 0..ny {
            let local = [
                spec.origin[0] + (x as f64 + 0.5) * vs,
                spec.origin[1] + (y as f64 + 0.5) * vs,
                0.0,
            ];
            let world = grid_pose.transform(local);
            let dx = world[0] - agent_pose.translation[0];
            let dy = world[1] - agent_pose.translation[1];
            let d = (dx * dx + dy * dy).sqrt();
            let geom = h / (h * h + d * d).sqrt();
            scores[x * ny + y] = qp.alpha * geom + qp.beta * grad[x * ny + y] / eps;
        }
    }
    Ok(scores)
}

/// Cells whose quality score strictly exceeds xi.
pub fn support_from_scores(scores: &[f64], dims: (usize, usize), xi: f64) -> Mask2D {
    assert_eq!(scores.len(), dims.0 * dims.1, "score plane size mismatch");
    let mut mask = Mask2D::new(dims.0, dims.1);
    for x in 0..dims.0 {
        for y in 0..dims.1 {
            if scores[x * dims.1 + y] > xi {
                mask.set(x, y, true);
            }
        }
    }
    mask
}

/// Support mask straight from a BEV map.
pub fn support_mask(
    bev: &BevFeature,
    grid_pose: &Pose,
    agent_pose: &Pose,
    qp: &QualityParams,
) -> Result<Mask2D, DmpgError> {
    let scores = quality_map(bev, grid_pose, agent_pose, qp)?;
    Ok(support_from_scores(
        &scores,
        (bev.spec().dims.0, bev.spec().dims.1),
        qp.xi,
    ))
}

/// The request mask is the exact complement of the support mask.
pub fn request_mask(sup: &Mask2D) -> Mask2D {
    sup.complement()
}

/// Nearest-neighbor cell mapping from an ego grid into a source grid via
/// the planar (yaw plus horizontal translation) components of the two
/// anchoring poses.
pub struct PlanarMap {
    src_dims: (usize, usize),
    src_origin: [f64; 2],
    src_vs: f64,
    ego_spec: GridSpec,
    ego_cos: f64,
    ego_sin: f64,
    ego_t: [f64; 2],
    inv_cos: f64,
    inv_sin: f64,
    src_t: [f64; 2],
}

impl PlanarMap {
    pub fn new(src_spec: &GridSpec, src_pose: &Pose, ego_spec: &GridSpec, ego_pose: &Pose) -> Self {
        let ego_yaw = ego_pose.yaw();
        let src_yaw = src_pose.yaw();
        Self {
            src_dims: (src_spec.dims.0, src_spec.dims.1),
            src_origin: [src_spec.origin[0], src_spec.origin[1]],
            src_vs: src_spec.voxel_size,
            ego_spec: *ego_spec,
            ego_cos: ego_yaw.cos(),
            ego_sin: ego_yaw.sin(),
            ego_t: [ego_pose.translation[0], ego_pose.translation[1]],
            inv_cos: src_yaw.cos(),
            inv_sin: src_yaw.sin(),
            src_t: [src_pose.translation[0], src_pose.translation[1]],
        }
    }

    /// Source cell the center of ego cell (ex, ey) lands in, if any.
    pub fn src_cell(&self, ex: usize, ey: usize) -> Option<(usize, usize)> {
        let vs = self.ego_spec.voxel_size;
        let lx = self.ego_spec.origin[0] + (ex as f64 + 0.5) * vs;
        let ly = self.ego_spec.origin[1] + (ey as f64 + 0.5) * vs;
        // ego local -> world
        let wx = self.ego_cos * lx - self.ego_sin * ly + self.ego_t[0];
        let wy = self.ego_sin * lx + self.ego_cos * ly + self.ego_t[1];
        // world -> src local (inverse rotation)
        let rx = wx - self.src_t[0];
        let ry = wy - self.src_t[1];
        let sx = self.inv_cos * rx + self.inv_sin * ry;
        let sy = -self.inv_sin * rx + self.inv_cos * ry;
        let ix = axis_index(sx, self.src_origin[0], self.src_vs, self.src_dims.0)?;
        let iy = axis_index(sy, self.src_origin[1], self.src_vs, self.src_dims.1)?;
        Some((ix, iy))
    }
}

/// Same floor-with-boundary-snap rule as [`crate::grid::world_to_voxel`].
fn axis_index(coord: f64, origin: f64, vs: f64, dim: usize) -> Option<usize> {
    let raw = (coord - origin) / vs;
    let snapped = raw.round();
    let v = if (raw - snapped).abs() < 1e-9 {
        snapped
    } else {
        raw.floor()
    };
    if v < 0.0 || v >= dim as f64 {
        None
    } else {
        Some(v as usize)
    }
}

/// Resample a neighbor's BEV map onto the ego grid; ego cells falling
/// outside the source grid become empty pillars.
pub fn warp_bev(
    src: &BevFeature,
    src_pose: &Pose,
    ego_spec: &GridSpec,
    ego_pose: &Pose,
) -> BevFeature {
    let map = PlanarMap::new(src.spec(), src_pose, ego_spec, ego_pose);
    let mut out = BevFeature::new_empty(*ego_spec, src.c_out(), src.theta());
    for ex in 0..ego_spec.dims.0 {
        for ey in 0..ego_spec.dims.1 {
            if let Some((sx, sy)) = map.src_cell(ex, ey) {
                out.set_cell(ex, ey, src.altitude(sx, sy), src.planes_at(sx, sy));
            }
        }
    }
    out
}

/// Resample a neighbor's 2D mask onto the ego grid; out-of-source cells
/// come back clear.
pub fn warp_mask(
    src: &Mask2D,
    src_spec: &GridSpec,
    src_pose: &Pose,
    ego_spec: &GridSpec,
    ego_pose: &Pose,
) -> Mask2D {
    assert_eq!(
        src.dims(),
        (src_spec.dims.0, src_spec.dims.1),
        "mask does not match its grid spec"
    );
    let map = PlanarMap::new(src_spec, src_pose, ego_spec, ego_pose);
    let mut out = Mask2D::new(ego_spec.dims.0, ego_spec.dims.1);
    for ex in 0..ego_spec.dims.0 {
        for ey in 0..ego_spec.dims.1 {
            if let Some((sx, sy)) = map.src_cell(ex, ey) {
                if src.get(sx, sy) {
                    out.set(ex, ey, true);
                }
            }
        }
    }
    out
}

/// One BEV cell extracted for transmission, in ego grid coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseCell {
    pub x: u16,
    pub y: u16,
    pub altitude: f32,
    pub payload: Vec<f32>,
}

/// Cells sorted by (x, y) with no duplicates.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SparseCellSet {
    cells: Vec<SparseCell>,
}

impl SparseCellSet {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Wrap a cell list, enforcing (x, y) order and uniqueness.
    pub fn from_cells(mut cells: Vec<SparseCell>) -> Result<Self, String> {
        cells.sort_by_key(|c| (c.x, c.y));
        for pair in cells.windows(2) {
            if (pair[0].x, pair[0].y) == (pair[1].x, pair[1].y) {
                return Err(format!("duplicate cell ({}, {})", pair[0].x, pair[0].y));
            }
        }
        Ok(Self { cells })
    }

    pub fn cells(&self) -> &[SparseCell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }
}

/// A selected cell together with the sender-side quality score used for
/// budget-priority ordering.
#[derive(Debug, Clone)]
pub struct ScoredCell {
    pub cell: SparseCell,
    pub score: f64,
}

/// Cells a neighbor offers an ego agent: ego cells that the ego requested,
/// that map into the neighbor's support mask, and whose warped pillar is
/// nonempty. Output is in (x, y) order with the neighbor's quality score
/// attached to each cell.
#[allow(clippy::too_many_arguments)]
pub fn select_transmit(
    nbr_bev: &BevFeature,
    nbr_scores: &[f64],
    nbr_sup: &Mask2D,
    nbr_pose: &Pose,
    ego_req: &Mask2D,
    ego_spec: &GridSpec,
    ego_pose: &Pose,
) -> Vec<ScoredCell> {
    let src_spec = nbr_bev.spec();
    assert_eq!(
        nbr_sup.dims(),
        (src_spec.dims.0, src_spec.dims.1),
        "support mask does not match the neighbor grid"
    );
    assert_eq!(
        ego_req.dims(),
        (ego_spec.dims.0, ego_spec.dims.1),
        "request mask does not match the ego grid"
    );
    assert_eq!(
        nbr_scores.len(),
        src_spec.cell_count(),
        "score plane does not match the neighbor grid"
    );
    let map = PlanarMap::new(src_spec, nbr_pose, ego_spec, ego_pose);
    let mut out = Vec::new();
    for ex in 0..ego_spec.dims.0 {
        for ey in 0..ego_spec.dims.1 {
            if !ego_req.get(ex, ey) {
                continue;
            }
            let Some((sx, sy)) = map.src_cell(ex, ey) else {
                continue;
            };
            if !nbr_sup.get(sx, sy) {
                continue;
            }
            let altitude = nbr_bev.altitude(sx, sy);
            if altitude == EMPTY_PILLAR {
                continue;
            }
            out.push(ScoredCell {
                cell: SparseCell {
                    x: ex as u16,
                    y: ey as u16,
                    altitude,
                    payload: nbr_bev.planes_at(sx, sy).to_vec(),
                },
                score: nbr_scores[sx * src_spec.dims.1 + sy],
            });
        }
    }
    out
}
