//! Collaborative occupancy prediction for agent swarms: deterministic
//! perception, altitude-aware BEV compression, dual-mask selective
//! transmission under a byte budget, cross-agent fusion, and
//! occupancy-segmentation evaluation.

pub mod bev;
pub mod camera;
pub mod container;
pub mod dmpg;
pub mod encode;
pub mod fuse;
pub mod grid;
pub mod mask;
pub mod metrics;
pub mod raycast;
pub mod rng;
pub mod scenario;
pub mod scene;
pub mod swarm;
pub mod wire;

pub use bev::{compress, expand, valid_mask, BevFeature};
pub use camera::CameraModel;
pub use dmpg::{gradient_map, quality_map, request_mask, support_mask, SparseCellSet};
pub use encode::{encode_local, EncoderParams};
pub use fuse::{integrate, predict, FusionParams};
pub use grid::{
    argmax_labels, one_hot_logits, voxel_center, world_to_voxel, FeatureVolume, GridSpec,
    OccupancyGrid, Pose, SemanticClass,
};
pub use mask::{Mask2D, Mask3D};
pub use metrics::{accuracy_loss, iou_per_class, miou};
pub use raycast::raycast_visibility;
pub use scenario::{run_scenario, sweep, RunReport, ScenarioConfig, SweepAxis, SweepPoint};
pub use scene::{generate_scene, voxelize_point_cloud, SceneParams};
pub use swarm::{run_round, total_bytes, ByteScope, CommGraph, DeliveryLog, LinkBudget};
