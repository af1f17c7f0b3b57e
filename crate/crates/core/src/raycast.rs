//! Exact voxel traversal and frustum visibility.
//!
//! Rays step cell-to-cell with the Amanatides-Woo algorithm so no voxel on
//! the ray path is skipped. A voxel is visible when some sampled ray reaches
//! it before hitting occupied space; the first occupied voxel on a ray is
//! itself visible, and free voxels crossed before the hit count as observed
//! free space.

use crate::camera::CameraModel;
use crate::grid::{GridSpec, OccupancyGrid, SemanticClass};
use crate::mask::Mask3D;

/// Walk every voxel a ray passes through, in order, starting from where the
/// ray enters the grid. The visitor returns `false` to stop the ray.
pub fn walk_ray<F>(origin: [f64; 3], dir: [f64; 3], spec: &GridSpec, mut visit: F)
where
    F: FnMut(usize, usize, usize) -> bool,
{
    let dims = [
        spec.dims.0 as isize,
        spec.dims.1 as isize,
        spec.dims.2 as isize,
    ];
    // Work in grid units: voxel edges at integers.
    let g = [
        (origin[0] - spec.origin[0]) / spec.voxel_size,
        (origin[1] - spec.origin[1]) / spec.voxel_size,
        (origin[2] - spec.origin[2]) / spec.voxel_size,
    ];

    // Clip the ray to the grid box [0, dims].
    let mut t_entry = 0.0f64;
    let mut t_exit = f64::INFINITY;
    for a in 0..3 {
        if dir[a] == 0.0 {
            if g[a] < 0.0 || g[a] > dims[a] as f64 {
                return;
            }
        } else {
            let t1 = (0.0 - g[a]) / dir[a];
            let t2 = (dims[a] as f64 - g[a]) / dir[a];
            let (lo, hi) = if t1 < t2 { (t1, t2) } else { (t2, t1) };
            t_entry = t_entry.max(lo);
            t_exit = t_exit.min(hi);
        }
    }
    if t_entry > t_exit {
        return;
    }

    let start = [
        g[0] + t_entry * dir[0],
        g[1] + t_entry * dir[1],
        g[2] + t_entry * dir[2],
    ];
    let mut idx = [0isize; 3];
    let mut step = [0isize; 3];
    let mut t_max = [f64::INFINITY; 3];
    let mut t_delta = [f64::INFINITY; 3];
    for a in 0..3 {
        // Entering exactly on the far face still lands inside the grid.
        idx[a] = (start[a].floor() as isize).clamp(0, dims[a] - 1);
        if dir[a] > 0.0 {
            step[a] = 1;
            t_delta[a] = 1.0 / dir[a];
            t_max[a] = t_entry + ((idx[a] + 1) as f64 - start[a]) / dir[a];
        } else if dir[a] < 0.0 {
            step[a] = -1;
            t_delta[a] = -1.0 / dir[a];
            t_max[a] = t_entry + (idx[a] as f64 - start[a]) / dir[a];
        }
    }

    loop {
        if !visit(idx[0] as usize, idx[1] as usize, idx[2] as usize) {
            return;
        }
        let axis = if t_max[0] < t_max[1] {
            if t_max[0] < t_max[2] {
                0
            } else {
                2
            }
        } else if t_max[1] < t_max[2] {
            1
        } else {
            2
        };
        idx[axis] += step[axis];
        if idx[axis] < 0 || idx[axis] >= dims[axis] {
            return;
        }
        t_max[axis] += t_delta[axis];
    }
}

/// Visibility mask for one camera: each frustum ray marks the free voxels it
/// crosses plus the first occupied voxel it hits.
pub fn raycast_visibility(grid: &OccupancyGrid, cam: &CameraModel) -> Mask3D {
    assert!(
        cam.rays_x > 0 && cam.rays_y > 0,
        "ray budget must be positive"
    );
    let spec = grid.spec();
    let mut mask = Mask3D::new(spec.dims.0, spec.dims.1, spec.dims.2);
    let origin = cam.position();
    for i in 0..cam.rays_x {
        for j in 0..cam.rays_y {
            let dir = cam.ray_direction(i, j);
            walk_ray(origin, dir, spec, |x, y, z| {
                mask.set(x, y, z, true);
                grid.get(x, y, z) == SemanticClass::Free
            });
        }
    }
    mask
}
