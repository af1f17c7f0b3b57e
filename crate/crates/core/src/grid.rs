//! Grid geometry and the core array types: semantic classes, grid
//! specification, rigid poses, occupancy grids, and feature volumes.

use serde::{Deserialize, Serialize};

use crate::mask::Mask3D;

/// The seven semantic categories. Ids are dense and stable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(u8)]
pub enum SemanticClass {
    Free = 0,
    Others = 1,
    Ground = 2,
    Building = 3,
    Vegetation = 4,
    Vehicle = 5,
    UrbanRoad = 6,
}

impl SemanticClass {
    pub const COUNT: usize = 7;

    pub const ALL: [SemanticClass; 7] = [
        SemanticClass::Free,
        SemanticClass::Others,
        SemanticClass::Ground,
        SemanticClass::Building,
        SemanticClass::Vegetation,
        SemanticClass::Vehicle,
        SemanticClass::UrbanRoad,
    ];

    #[inline]
    pub fn id(self) -> u8 {
        self as u8
    }

    pub fn from_id(id: u8) -> Option<Self> {
        Self::ALL.get(id as usize).copied()
    }

    pub fn name(self) -> &'static str {
        match self {
            SemanticClass::Free => "free",
            SemanticClass::Others => "others",
            SemanticClass::Ground => "ground",
            SemanticClass::Building => "building",
            SemanticClass::Vegetation => "vegetation",
            SemanticClass::Vehicle => "vehicle",
            SemanticClass::UrbanRoad => "urban_road",
        }
    }
}

/// Cubic-voxel lattice: dimensions, edge length in meters, and the world
/// position of the (0,0,0) voxel corner.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub dims: (usize, usize, usize),
    pub voxel_size: f64,
    pub origin: [f64; 3],
}

impl GridSpec {
    pub fn new(dims: (usize, usize, usize), voxel_size: f64, origin: [f64; 3]) -> Self {
        let spec = Self {
            dims,
            voxel_size,
            origin,
        };
        spec.validate().expect("invalid grid spec");
        spec
    }

    pub fn validate(&self) -> Result<(), String> {
        let (x, y, z) = self.dims;
        if x == 0 || y == 0 || z == 0 {
            return Err(format!("grid dims must all be >= 1, got {:?}", self.dims));
        }
        if self.voxel_size <= 0.0 || !self.voxel_size.is_finite() {
            return Err(format!(
                "voxel_size must be positive, got {}",
                self.voxel_size
            ));
        }
        if self.origin.iter().any(|v| !v.is_finite()) {
            return Err(format!("origin must be finite, got {:?}", self.origin));
        }
        Ok(())
    }

    pub fn voxel_count(&self) -> usize {
        self.dims.0 * self.dims.1 * self.dims.2
    }

    pub fn cell_count(&self) -> usize {
        self.dims.0 * self.dims.1
    }

    /// World z of the lattice floor; UAV height is measured from here.
    pub fn ground_z(&self) -> f64 {
        self.origin[2]
    }

    #[inline]
    pub fn linear_index(&self, x: usize, y: usize, z: usize) -> usize {
        (x * self.dims.1 + y) * self.dims.2 + z
    }

    #[inline]
    pub fn cell_index(&self, x: usize, y: usize) -> usize {
        x * self.dims.1 + y
    }
}

/// Rigid transform: an orthonormal rotation (det +1) plus a translation in
/// meters, mapping body-frame points into the world frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Pose {
    /// Row-major rotation matrix.
    pub rotation: [[f64; 3]; 3],
    pub translation: [f64; 3],
}

impl Pose {
    pub const ORTHONORMALITY_TOL: f64 = 1e-9;

    pub fn identity() -> Self {
        Self {
            rotation: [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
            translation: [0.0, 0.0, 0.0],
        }
    }

    /// Rotation about the world z axis plus translation.
    pub fn from_yaw_translation(yaw: f64, translation: [f64; 3]) -> Self {
        let (s, c) = yaw.sin_cos();
        Self {
            rotation: [[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]],
            translation,
        }
    }

    pub fn validate(&self) -> Result<(), String> {
        let r = &self.rotation;
        // R^T R == I within tolerance.
        for i in 0..3 {
            for j in 0..3 {
                let dot: f64 = (0..3).map(|k| r[k][i] * r[k][j]).sum();
                let expect = if i == j { 1.0 } else { 0.0 };
                if (dot - expect).abs() > Self::ORTHONORMALITY_TOL {
                    return Err(format!(
                        "rotation is not orthonormal: column dot ({i},{j}) = {dot}"
                    ));
                }
            }
        }
        let det = r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1])
            - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0])
            + r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0]);
        if (det - 1.0).abs() > Self::ORTHONORMALITY_TOL {
            return Err(format!("rotation determinant must be +1, got {det}"));
        }
        if self.translation.iter().any(|v| !v.is_finite()) {
            return Err("translation must be finite".to_string());
        }
        Ok(())
    }

    /// Apply the pose to a body-frame point.
    pub fn transform(&self, p: [f64; 3]) -> [f64; 3] {
        let r = &self.rotation;
        [
            r[0][0] * p[0] + r[0][1] * p[1] + r[0][2] * p[2] + self.translation[0],
            r[1][0] * p[0] + r[1][1] * p[1] + r[1][2] * p[2] + self.translation[1],
            r[2][0] * p[0] + r[2][1] * p[1] + r[2][2] * p[2] + self.translation[2],
        ]
    }

    /// Rotate a body-frame direction into the world frame.
    pub fn rotate(&self, d: [f64; 3]) -> [f64; 3] {
        let r = &self.rotation;
        [
            r[0][0] * d[0] + r[0][1] * d[1] + r[0][2] * d[2],
            r[1][0] * d[0] + r[1][1] * d[1] + r[1][2] * d[2],
            r[2][0] * d[0] + r[2][1] * d[1] + r[2][2] * d[2],
        ]
    }

    /// Heading extracted from the rotation's action on the body x axis.
    pub fn yaw(&self) -> f64 {
        self.rotation[1][0].atan2(self.rotation[0][0])
    }

    /// Height above the grid floor.
    pub fn height_above(&self, spec: &GridSpec) -> f64 {
        self.translation[2] - spec.ground_z()
    }
}

/// Per-voxel semantic labels over a lattice.
#[derive(Debug, Clone, PartialEq)]
pub struct OccupancyGrid {
    spec: GridSpec,
    labels: Vec<u8>,
}

impl OccupancyGrid {
    /// All-free grid.
    pub fn new(spec: GridSpec) -> Self {
        Self {
            labels: vec![SemanticClass::Free.id(); spec.voxel_count()],
            spec,
        }
    }

    pub fn from_labels(spec: GridSpec, labels: Vec<u8>) -> Result<Self, String> {
        if labels.len() != spec.voxel_count() {
            return Err(format!(
                "label buffer has {} entries, grid needs {}",
                labels.len(),
                spec.voxel_count()
            ));
        }
        if let Some(bad) = labels.iter().find(|&&l| l as usize >= SemanticClass::COUNT) {
            return Err(format!("label id {bad} out of range 0..6"));
        }
        Ok(Self { spec, labels })
    }

    pub fn spec(&self) -> &GridSpec {
        &self.spec
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize, z: usize) -> SemanticClass {
        SemanticClass::from_id(self.labels[self.spec.linear_index(x, y, z)])
            .expect("stored label in range")
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, z: usize, class: SemanticClass) {
        let i = self.spec.linear_index(x, y, z);
        self.labels[i] = class.id();
    }

    /// Fraction of voxels with a label other than free.
    pub fn occupied_fraction(&self) -> f64 {
        let occupied = self
            .labels
            .iter()
            .filter(|&&l| l != SemanticClass::Free.id())
            .count();
        occupied as f64 / self.labels.len() as f64
    }
}

/// Per-voxel real feature channels. Channel 0 is the occupancy logit;
/// channels 1..=7 are class logits for ids 0..=6.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureVolume {
    spec: GridSpec,
    channels: usize,
    data: Vec<f32>,
}

/// Channel count of the reference feature layout.
pub const FEATURE_CHANNELS: usize = 8;

impl FeatureVolume {
    /// All-zero volume with the reference channel layout.
    pub fn zeros(spec: GridSpec) -> Self {
        Self {
            data: vec![0.0; spec.voxel_count() * FEATURE_CHANNELS],
            channels: FEATURE_CHANNELS,
            spec,
        }
    }

    pub fn from_data(spec: GridSpec, channels: usize, data: Vec<f32>) -> Result<Self, String> {
        if data.len() != spec.voxel_count() * channels {
            return Err(format!(
                "feature buffer has {} entries, expected {}",
                data.len(),
                spec.voxel_count() * channels
            ));
        }
        if data.iter().any(|v| !v.is_finite()) {
            return Err("feature volume contains non-finite values".to_string());
        }
        Ok(Self {
            spec,
            channels,
            data,
        })
    }

    pub fn spec(&self) -> &GridSpec {
        &self.spec
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    pub fn data(&self) -> &[f32] {
        &self.data
    }

    #[inline]
    fn offset(&self, x: usize, y: usize, z: usize) -> usize {
        self.spec.linear_index(x, y, z) * self.channels
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize, z: usize, c: usize) -> f32 {
        debug_assert!(c < self.channels);
        self.data[self.offset(x, y, z) + c]
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, z: usize, c: usize, v: f32) {
        debug_assert!(c < self.channels);
        let i = self.offset(x, y, z) + c;
        self.data[i] = v;
    }

    /// All channels of one voxel.
    #[inline]
    pub fn voxel(&self, x: usize, y: usize, z: usize) -> &[f32] {
        let o = self.offset(x, y, z);
        &self.data[o..o + self.channels]
    }

    #[inline]
    pub fn voxel_mut(&mut self, x: usize, y: usize, z: usize) -> &mut [f32] {
        let o = self.offset(x, y, z);
        let c = self.channels;
        &mut self.data[o..o + c]
    }

    pub fn occupancy_logit(&self, x: usize, y: usize, z: usize) -> f32 {
        self.get(x, y, z, 0)
    }
}

/// Map a world point to its voxel index, or `None` when outside the grid.
///
/// Coordinates within 1e-9 voxel of a boundary snap to it, so points placed
/// by exact arithmetic land in the cell the arithmetic says despite binary
/// rounding (a boundary belongs to the upper cell).
pub fn world_to_voxel(p: [f64; 3], spec: &GridSpec) -> Option<(usize, usize, usize)> {
    let mut idx = [0usize; 3];
    let dims = [spec.dims.0, spec.dims.1, spec.dims.2];
    for a in 0..3 {
        let raw = (p[a] - spec.origin[a]) / spec.voxel_size;
        let snapped = raw.round();
        let v = if (raw - snapped).abs() < 1e-9 {
            snapped
        } else {
            raw.floor()
        };
        if v < 0.0 || v >= dims[a] as f64 {
            return None;
        }
        idx[a] = v as usize;
    }
    Some((idx[0], idx[1], idx[2]))
}

/// World coordinates of a voxel's center. The index must be in range.
pub fn voxel_center(idx: (usize, usize, usize), spec: &GridSpec) -> [f64; 3] {
    let (x, y, z) = idx;
    assert!(
        x < spec.dims.0 && y < spec.dims.1 && z < spec.dims.2,
        "voxel index {idx:?} out of range {:?}",
        spec.dims
    );
    [
        spec.origin[0] + (x as f64 + 0.5) * spec.voxel_size,
        spec.origin[1] + (y as f64 + 0.5) * spec.voxel_size,
        spec.origin[2] + (z as f64 + 0.5) * spec.voxel_size,
    ]
}

/// Ideal-encoder helper: one-hot class logits at +/- `margin` with the
/// occupancy logit signed by occupancy.
pub fn one_hot_logits(grid: &OccupancyGrid, margin: f64, occ_logit: f64) -> FeatureVolume {
    assert!(margin > 0.0, "margin must be positive");
    let spec = *grid.spec();
    let mut vol = FeatureVolume::zeros(spec);
    let (nx, ny, nz) = spec.dims;
    for x in 0..nx {
        for y in 0..ny {
            for z in 0..nz {
                let label = grid.get(x, y, z);
                let vox = vol.voxel_mut(x, y, z);
                vox[0] = if label == SemanticClass::Free {
                    -occ_logit as f32
                } else {
                    occ_logit as f32
                };
                for c in 0..SemanticClass::COUNT {
                    vox[1 + c] = if c as u8 == label.id() {
                        margin as f32
                    } else {
                        -margin as f32
                    };
                }
            }
        }
    }
    vol
}

/// Segmentation head: per voxel, the class with the largest logit; ties go
/// to the lowest class id.
pub fn argmax_labels(vol: &FeatureVolume) -> OccupancyGrid {
    let spec = *vol.spec();
    let mut grid = OccupancyGrid::new(spec);
    let (nx, ny, nz) = spec.dims;
    for x in 0..nx {
        for y in 0..ny {
            for z in 0..nz {
                let vox = vol.voxel(x, y, z);
                let mut best = 0usize;
                let mut best_v = vox[1];
                for c in 1..SemanticClass::COUNT {
                    let v = vox[1 + c];
                    if v > best_v {
                        best_v = v;
                        best = c;
                    }
                }
                grid.set(x, y, z, SemanticClass::from_id(best as u8).unwrap());
            }
        }
    }
    grid
}

/// Visibility mask with the same dims as a grid, all bits set.
pub fn full_visibility(spec: &GridSpec) -> Mask3D {
    Mask3D::filled(spec.dims.0, spec.dims.1, spec.dims.2)
}
