//! Ground-truth production: procedural urban scenes and labeled point-cloud
//! ingestion.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grid::{GridSpec, OccupancyGrid, SemanticClass};
use crate::rng::SplitMix64;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SceneParams {
    pub seed: u64,
    /// Buildings per 1000 m^2 of ground area.
    pub building_density: f64,
    /// Vegetation blobs per 1000 m^2 of ground area.
    pub vegetation_density: f64,
    pub vehicle_count: u32,
    /// Spacing of the road lattice in meters.
    pub road_grid_pitch: f64,
    /// Occupied-voxel fraction the generator fills toward.
    pub target_occupancy_fraction: f64,
}

impl Default for SceneParams {
    fn default() -> Self {
        Self {
            seed: 0,
            building_density: 10.0,
            vegetation_density: 6.0,
            vehicle_count: 12,
            road_grid_pitch: 20.0,
            target_occupancy_fraction: 0.05,
        }
    }
}

impl SceneParams {
    pub fn validate(&self) -> Result<(), String> {
        if self.building_density < 0.0 || !self.building_density.is_finite() {
            return Err(format!(
                "building_density must be nonnegative, got {}",
                self.building_density
            ));
        }
        if self.vegetation_density < 0.0 || !self.vegetation_density.is_finite() {
            return Err(format!(
                "vegetation_density must be nonnegative, got {}",
                self.vegetation_density
            ));
        }
        if self.road_grid_pitch <= 0.0 || self.road_grid_pitch.is_nan() {
            return Err(format!(
                "road_grid_pitch must be positive, got {}",
                self.road_grid_pitch
            ));
        }
        if !(self.target_occupancy_fraction > 0.0 && self.target_occupancy_fraction < 1.0) {
            return Err(format!(
                "target_occupancy_fraction must be in (0,1), got {}",
                self.target_occupancy_fraction
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum SceneError {
    #[error("grid {0:?} is too small for scene generation (need X,Y >= 4 and Z >= 2)")]
    GridTooSmall((usize, usize, usize)),
    #[error("invalid scene parameters: {0}")]
    BadParams(String),
}

struct SceneBuilder {
    grid: OccupancyGrid,
    occupied: usize,
    total: usize,
}

impl SceneBuilder {
    fn put(&mut self, x: usize, y: usize, z: usize, class: SemanticClass) {
        if self.grid.get(x, y, z) == SemanticClass::Free && class != SemanticClass::Free {
            self.occupied += 1;
        }
        self.grid.set(x, y, z, class);
    }

    fn fraction(&self) -> f64 {
        self.occupied as f64 / self.total as f64
    }
}

/// Deterministic procedural city block: a ground plane with a road lattice,
/// solid building boxes, vegetation domes, and vehicles on the roads.
///
/// Content is added until the density-derived object budget runs out or the
/// occupied fraction would overshoot the target.
pub fn generate_scene(spec: &GridSpec, params: &SceneParams) -> Result<OccupancyGrid, SceneError> {
    params.validate().map_err(SceneError::BadParams)?;
    let (nx, ny, nz) = spec.dims;
    if nx < 4 || ny < 4 || nz < 2 {
        return Err(SceneError::GridTooSmall(spec.dims));
    }
    let vs = spec.voxel_size;
    let mut rng = SplitMix64::new(params.seed);

    let mut b = SceneBuilder {
        grid: OccupancyGrid::new(*spec),
        occupied: 0,
        total: spec.voxel_count(),
    };

    // Ground plane with a road lattice on z = 0.
    let pitch_vox = ((params.road_grid_pitch / vs).round() as usize).max(2);
    let road_w = ((4.0 / vs).round() as usize).clamp(1, pitch_vox - 1);
    let on_road = |i: usize| -> bool {
        let phase = (i + pitch_vox / 2) % pitch_vox;
        phase < road_w
    };
    let mut road_cells = Vec::new();
    for x in 0..nx {
        for y in 0..ny {
            let road = on_road(x) || on_road(y);
            let class = if road {
                road_cells.push((x, y));
                SemanticClass::UrbanRoad
            } else {
                SemanticClass::Ground
            };
            b.put(x, y, 0, class);
        }
    }

    let area_m2 = (nx as f64 * vs) * (ny as f64 * vs);
    // Stop adding objects once the target is reached; no single object may
    // push the fill more than 2.5% of the grid past it.
    let fill_stop = params.target_occupancy_fraction;
    let hard_cap = ((params.target_occupancy_fraction + 0.025) * b.total as f64) as usize;

    let mut buildings_left = (params.building_density * area_m2 / 1000.0).ceil() as usize;
    let mut veg_left = (params.vegetation_density * area_m2 / 1000.0).ceil() as usize;
    let mut place_building = true;
    while buildings_left + veg_left > 0 && b.fraction() <= fill_stop {
        if place_building && buildings_left == 0 {
            place_building = false;
        }
        if !place_building && veg_left == 0 {
            place_building = true;
        }
        if place_building {
            buildings_left -= 1;
            try_place_building(&mut b, &mut rng, hard_cap);
        } else {
            veg_left -= 1;
            try_place_vegetation(&mut b, &mut rng, hard_cap);
        }
        place_building = !place_building;
    }

    // Vehicles: small boxes sitting on road cells.
    if !road_cells.is_empty() {
        let len = ((4.4 / vs).round() as usize).max(1);
        let wid = ((1.8 / vs).round() as usize).max(1);
        let hgt = ((1.6 / vs).round() as usize).clamp(1, nz - 1);
        for _ in 0..params.vehicle_count {
            for _attempt in 0..20 {
                let (cx, cy) = road_cells[rng.next_bounded(road_cells.len() as u64) as usize];
                let along_x = rng.next_u64() & 1 == 0;
                let (lx, ly) = if along_x { (len, wid) } else { (wid, len) };
                if cx + lx > nx || cy + ly > ny {
                    continue;
                }
                let fits = (cx..cx + lx).all(|x| {
                    (cy..cy + ly).all(|y| {
                        b.grid.get(x, y, 0) == SemanticClass::UrbanRoad
                            && (1..=hgt).all(|z| b.grid.get(x, y, z) == SemanticClass::Free)
                    })
                });
                if !fits {
                    continue;
                }
                for x in cx..cx + lx {
                    for y in cy..cy + ly {
                        for z in 1..=hgt {
                            b.put(x, y, z, SemanticClass::Vehicle);
                        }
                    }
                }
                break;
            }
        }
    }

    Ok(b.grid)
}

/// Axis-aligned solid box rising from the ground, kept off roads.
fn try_place_building(b: &mut SceneBuilder, rng: &mut SplitMix64, hard_cap: usize) {
    let (nx, ny, nz) = b.grid.spec().dims;
    let vs = b.grid.spec().voxel_size;
    for _attempt in 0..20 {
        let wx = ((rng.next_range(6.0, 16.0) / vs).round() as usize).clamp(1, nx - 1);
        let wy = ((rng.next_range(6.0, 16.0) / vs).round() as usize).clamp(1, ny - 1);
        let h = ((rng.next_range(6.0, 18.0) / vs).round() as usize).clamp(1, nz - 1);
        if b.occupied + wx * wy * h > hard_cap {
            continue;
        }
        let bx = rng.next_bounded((nx - wx) as u64) as usize;
        let by = rng.next_bounded((ny - wy) as u64) as usize;
        let clear = (bx..bx + wx)
            .all(|x| (by..by + wy).all(|y| b.grid.get(x, y, 0) == SemanticClass::Ground));
        if !clear {
            continue;
        }
        for x in bx..bx + wx {
            for y in by..by + wy {
                for z in 1..=h {
                    b.put(x, y, z, SemanticClass::Building);
                }
            }
        }
        return;
    }
}

/// Dome-shaped canopy filled from the ground up, only into free space.
fn try_place_vegetation(b: &mut SceneBuilder, rng: &mut SplitMix64, hard_cap: usize) {
    let (nx, ny, nz) = b.grid.spec().dims;
    let vs = b.grid.spec().voxel_size;
    let r = (rng.next_range(1.5, 4.0) / vs).max(1.0);
    let h = ((rng.next_range(2.0, 6.0) / vs).round() as usize).clamp(1, nz - 1);
    let cx = rng.next_bounded(nx as u64) as usize;
    let cy = rng.next_bounded(ny as u64) as usize;
    let ri = r.ceil() as isize;
    let mut cells = Vec::new();
    for dx in -ri..=ri {
        for dy in -ri..=ri {
            let x = cx as isize + dx;
            let y = cy as isize + dy;
            if x < 0 || y < 0 || x >= nx as isize || y >= ny as isize {
                continue;
            }
            let d2 = (dx * dx + dy * dy) as f64 / (r * r);
            if d2 > 1.0 {
                continue;
            }
            let top = ((h as f64) * (1.0 - d2).sqrt()).round() as usize;
            for z in 1..=top.min(nz - 1) {
                if b.grid.get(x as usize, y as usize, z) == SemanticClass::Free {
                    cells.push((x as usize, y as usize, z));
                }
            }
        }
    }
    if b.occupied + cells.len() > hard_cap {
        return;
    }
    for (x, y, z) in cells {
        b.put(x, y, z, SemanticClass::Vegetation);
    }
}

/// One labeled point of an ingested cloud.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointRecord {
    pub position: [f64; 3],
    pub label: u8,
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct PointCloudParseError {
    pub line: usize,
    pub message: String,
}

/// Parse the `x y z label` line format; `#` starts a comment.
pub fn parse_point_cloud(text: &str) -> Result<Vec<PointRecord>, PointCloudParseError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.is_empty() {
            continue;
        }
        if fields.len() != 4 {
            return Err(PointCloudParseError {
                line: line_no,
                message: format!("expected 4 fields `x y z label`, got {}", fields.len()),
            });
        }
        let mut pos = [0.0f64; 3];
        for (a, f) in fields[..3].iter().enumerate() {
            pos[a] = f.parse::<f64>().map_err(|e| PointCloudParseError {
                line: line_no,
                message: format!("bad coordinate {f:?}: {e}"),
            })?;
            if !pos[a].is_finite() {
                return Err(PointCloudParseError {
                    line: line_no,
                    message: format!("coordinate {f:?} is not finite"),
                });
            }
        }
        let label = fields[3].parse::<u8>().map_err(|e| PointCloudParseError {
            line: line_no,
            message: format!("bad label {:?}: {e}", fields[3]),
        })?;
        if label as usize >= SemanticClass::COUNT {
            return Err(PointCloudParseError {
                line: line_no,
                message: format!("label {label} out of range 0..6"),
            });
        }
        out.push(PointRecord {
            position: pos,
            label,
        });
    }
    Ok(out)
}

/// Majority-vote voxelization: each voxel takes the most frequent label of
/// the points inside it (ties to the lowest class id); voxels without
/// points stay free. Points outside the grid are ignored.
pub fn voxelize_point_cloud(points: &[PointRecord], spec: &GridSpec) -> OccupancyGrid {
    let mut counts: HashMap<usize, [u32; SemanticClass::COUNT]> = HashMap::new();
    for p in points {
        if let Some((x, y, z)) = crate::grid::world_to_voxel(p.position, spec) {
            counts.entry(spec.linear_index(x, y, z)).or_default()[p.label as usize] += 1;
        }
    }
    let mut labels = vec![SemanticClass::Free.id(); spec.voxel_count()];
    for (idx, tally) in counts {
        let mut best = 0usize;
        for c in 1..SemanticClass::COUNT {
            if tally[c] > tally[best] {
                best = c;
            }
        }
        labels[idx] = best as u8;
    }
    OccupancyGrid::from_labels(*spec, labels).expect("labels constructed in range")
}
