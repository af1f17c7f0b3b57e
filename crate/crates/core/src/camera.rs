//! Viewing-frustum camera model used for visibility sampling.
//!
//! Body-frame convention: the boresight is -z, so an identity pose looks
//! straight down at the grid; yaw spins the footprint about vertical.

use serde::{Deserialize, Serialize};

use crate::grid::Pose;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CameraModel {
    pub pose: Pose,
    /// Horizontal field of view in radians, in (0, pi).
    pub fov_h: f64,
    /// Vertical field of view in radians, in (0, pi).
    pub fov_v: f64,
    /// Rays sampled along each frustum axis.
    pub rays_x: u32,
    pub rays_y: u32,
}

impl CameraModel {
    pub fn new(pose: Pose, fov_h: f64, fov_v: f64, rays_x: u32, rays_y: u32) -> Self {
        let cam = Self {
            pose,
            fov_h,
            fov_v,
            rays_x,
            rays_y,
        };
        cam.validate().expect("invalid camera model");
        cam
    }

    pub fn validate(&self) -> Result<(), String> {
        for (name, fov) in [("fov_h", self.fov_h), ("fov_v", self.fov_v)] {
            if !(fov > 0.0 && fov < std::f64::consts::PI) {
                return Err(format!("{name} must be in (0, pi), got {fov}"));
            }
        }
        self.pose.validate()?;
        Ok(())
    }

    pub fn position(&self) -> [f64; 3] {
        self.pose.translation
    }

    /// Boresight direction in the world frame.
    pub fn axis(&self) -> [f64; 3] {
        self.pose.rotate([0.0, 0.0, -1.0])
    }

    /// World-frame unit direction for frustum sample (i, j); samples sit at
    /// pixel centers of a rays_x by rays_y raster.
    pub fn ray_direction(&self, i: u32, j: u32) -> [f64; 3] {
        debug_assert!(i < self.rays_x && j < self.rays_y);
        let au = -self.fov_h / 2.0 + (i as f64 + 0.5) * self.fov_h / self.rays_x as f64;
        let av = -self.fov_v / 2.0 + (j as f64 + 0.5) * self.fov_v / self.rays_y as f64;
        let body = [au.tan(), av.tan(), -1.0];
        let norm = (body[0] * body[0] + body[1] * body[1] + 1.0).sqrt();
        self.pose
            .rotate([body[0] / norm, body[1] / norm, body[2] / norm])
    }

    /// Angle in radians between the boresight and the direction to a point.
    pub fn angle_off_axis(&self, p: [f64; 3]) -> f64 {
        let o = self.position();
        let v = [p[0] - o[0], p[1] - o[1], p[2] - o[2]];
        let len = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if len == 0.0 {
            return 0.0;
        }
        let a = self.axis();
        let dot = (v[0] * a[0] + v[1] * a[1] + v[2] * a[2]) / len;
        dot.clamp(-1.0, 1.0).acos()
    }
}
