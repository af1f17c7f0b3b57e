//! Shared test oracles and fixtures, kept independent of the library's
//! traversal and codec paths they are used to check.
#![allow(dead_code)] // each test binary uses a different subset

use mcop_core::camera::CameraModel;
use mcop_core::grid::{GridSpec, OccupancyGrid, SemanticClass};
use mcop_core::mask::Mask3D;
use mcop_core::rng::SplitMix64;

/// Brute-force visibility: march every camera ray in 0.05-voxel steps,
/// marking each voxel the samples fall into until the first occupied one.
/// Unlike the exact traversal, samples can step over voxels the ray only
/// clips at a corner; agreement is therefore near-exact, not exact.
pub fn raycast_visibility_oracle(grid: &OccupancyGrid, cam: &CameraModel) -> Mask3D {
    let spec = grid.spec();
    let (nx, ny, nz) = spec.dims;
    let mut mask = Mask3D::new(nx, ny, nz);
    let o = cam.position();
    let step = 0.05 * spec.voxel_size;
    let lo = spec.origin;
    let hi = [
        spec.origin[0] + nx as f64 * spec.voxel_size,
        spec.origin[1] + ny as f64 * spec.voxel_size,
        spec.origin[2] + nz as f64 * spec.voxel_size,
    ];
    for i in 0..cam.rays_x {
        for j in 0..cam.rays_y {
            let d = cam.ray_direction(i, j);
            // Clip to the grid box in world space.
            let mut t0 = 0.0f64;
            let mut t1 = f64::INFINITY;
            let mut miss = false;
            for a in 0..3 {
                if d[a] == 0.0 {
                    if o[a] < lo[a] || o[a] > hi[a] {
                        miss = true;
                        break;
                    }
                } else {
                    let ta = (lo[a] - o[a]) / d[a];
                    let tb = (hi[a] - o[a]) / d[a];
                    t0 = t0.max(ta.min(tb));
                    t1 = t1.min(ta.max(tb));
                }
            }
            if miss || t0 > t1 {
                continue;
            }
            let mut t = t0 + step * 0.5;
            let mut last = None;
            while t <= t1 {
                let p = [o[0] + t * d[0], o[1] + t * d[1], o[2] + t * d[2]];
                if let Some(v) = mcop_core::grid::world_to_voxel(p, spec) {
                    if last != Some(v) {
                        last = Some(v);
                        mask.set(v.0, v.1, v.2, true);
                        if grid.get(v.0, v.1, v.2) != SemanticClass::Free {
                            break;
                        }
                    }
                }
                t += step;
            }
        }
    }
    mask
}

/// Jaccard-style agreement between two masks: 1 - |xor| / |union|.
/// Two empty masks agree perfectly.
pub fn mask_agreement(a: &Mask3D, b: &Mask3D) -> f64 {
    let union = a.union(b).count_ones();
    if union == 0 {
        return 1.0;
    }
    1.0 - a.xor_count(b) as f64 / union as f64
}

/// Random occupancy grid with roughly the given occupied fraction.
pub fn random_grid(spec: &GridSpec, fraction: f64, rng: &mut SplitMix64) -> OccupancyGrid {
    let (nx, ny, nz) = spec.dims;
    let mut grid = OccupancyGrid::new(*spec);
    for x in 0..nx {
        for y in 0..ny {
            for z in 0..nz {
                if rng.next_f64() < fraction {
                    let id = 1 + rng.next_bounded(6) as u8;
                    grid.set(x, y, z, SemanticClass::from_id(id).unwrap());
                }
            }
        }
    }
    grid
}

/// Path to a file shipped in the repository's configs directory.
pub fn repo_config(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../configs")
        .join(name)
}
