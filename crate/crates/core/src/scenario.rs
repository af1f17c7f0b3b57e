//! Scenario configuration, the end-to-end evaluation loop, and parameter
//! sweeps.
//!
//! A scenario is one JSON file: grid, scene, cameras, per-round agent
//! poses, the communication graph, codec and guidance parameters, the byte
//! budget, and the master seed. A run is fully deterministic given the
//! file: sub-seeds for the scene and for each agent's encoder noise are
//! derived by hashing the master seed, so overriding `seed` reshuffles
//! everything reproducibly.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bev::{
    bev_payload_bytes, compress, compression_ratio, volume_payload_bytes, BEV_PLANES,
};
use crate::camera::CameraModel;
use crate::dmpg::{quality_map, support_from_scores, QualityParams, SparseCellSet};
use crate::encode::{encode_local, EncoderParams};
use crate::fuse::{integrate, predict, FusionParams};
use crate::grid::{FeatureVolume, GridSpec, OccupancyGrid, Pose, SemanticClass, FEATURE_CHANNELS};
use crate::metrics::{accuracy_loss, iou_per_class, miou, AccuracyLoss};
use crate::raycast::raycast_visibility;
use crate::rng::hash_mix;
use crate::scene::{generate_scene, SceneParams};
use crate::swarm::{
    bytes_to_mb, run_round_impaired, total_bytes, AgentRoundState, ByteScope, CommGraph,
    DeliveryLog, LinkBudget, LinkImpairments, MsgKind,
};

const SCENE_SALT: u64 = 0x5ce4_e5ee;
const NOISE_SALT: u64 = 0x4015_e5ee;
const LINK_SALT: u64 = 0x114b_e5ee;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CameraConfig {
    pub fov_h_deg: f64,
    pub fov_v_deg: f64,
    pub rays_x: u32,
    pub rays_y: u32,
}

impl Default for CameraConfig {
    fn default() -> Self {
        Self {
            fov_h_deg: 70.0,
            fov_v_deg: 70.0,
            rays_x: 160,
            rays_y: 160,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PoseConfig {
    pub position: [f64; 3],
    #[serde(default)]
    pub yaw_deg: f64,
    #[serde(default)]
    pub pitch_deg: f64,
}

impl PoseConfig {
    /// Yaw about the world vertical, then pitch tilting the boresight away
    /// from straight down.
    pub fn to_pose(&self) -> Pose {
        let yaw = self.yaw_deg.to_radians();
        let pitch = self.pitch_deg.to_radians();
        let (sy, cy) = yaw.sin_cos();
        let (sp, cp) = pitch.sin_cos();
        // Rz(yaw) * Rx(pitch)
        let rotation = [
            [cy, -sy * cp, sy * sp],
            [sy, cy * cp, -cy * sp],
            [0.0, sp, cp],
        ];
        Pose {
            rotation,
            translation: self.position,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UavConfig {
    /// One pose per round; the last pose repeats when rounds run longer.
    pub poses: Vec<PoseConfig>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GraphConfig {
    pub full: bool,
    pub edges: Vec<(u16, u16)>,
}

/// Link impairment knobs; both default to off.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ImpairmentsConfig {
    pub drop_probability: f64,
    pub per_link_cap: Option<u64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioConfig {
    pub grid: GridSpec,
    pub scene: SceneParams,
    pub camera: CameraConfig,
    pub uavs: Vec<UavConfig>,
    pub graph: GraphConfig,
    pub encoder: EncoderParams,
    /// Validity threshold for the BEV compression.
    pub theta: f64,
    pub quality: QualityParams,
    pub fusion: FusionParams,
    /// Per-agent egress byte cap per round; absent or null = unlimited.
    pub budget: Option<u64>,
    /// Optional lossy-link model; absent = ideal links.
    pub impairments: Option<ImpairmentsConfig>,
    pub rounds: u32,
    pub seed: u64,
    pub include_free: bool,
    pub output_dir: Option<String>,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            grid: GridSpec {
                dims: (64, 64, 16),
                voxel_size: 0.5,
                origin: [0.0, 0.0, 0.0],
            },
            scene: SceneParams::default(),
            camera: CameraConfig::default(),
            uavs: Vec::new(),
            graph: GraphConfig::default(),
            encoder: EncoderParams::default(),
            theta: 0.5,
            quality: QualityParams::default(),
            fusion: FusionParams::default(),
            budget: None,
            impairments: None,
            rounds: 1,
            seed: 0,
            include_free: false,
            output_dir: None,
        }
    }
}

/// Configuration rejection listing every violated field.
#[derive(Debug, Error)]
#[error("invalid configuration:{}", violations.iter().map(|v| format!("\n  - {v}")).collect::<String>())]
pub struct ConfigError {
    pub violations: Vec<String>,
}

impl ConfigError {
    fn one(v: impl Into<String>) -> Self {
        Self {
            violations: vec![v.into()],
        }
    }
}

impl ScenarioConfig {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        let cfg: ScenarioConfig = serde_json::from_str(text)
            .map_err(|e| ConfigError::one(format!("config parse error: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let mut v = Vec::new();
        if let Err(e) = self.grid.validate() {
            v.push(format!("grid: {e}"));
        }
        let (nx, ny, nz) = self.grid.dims;
        if nx > u16::MAX as usize || ny > u16::MAX as usize {
            v.push(format!(
                "grid: horizontal dims must fit 16 bits for the wire format, got {nx}x{ny}"
            ));
        }
        if nx < 4 || ny < 4 || nz < 2 {
            v.push(format!(
                "grid: scene generation needs X,Y >= 4 and Z >= 2, got {nx}x{ny}x{nz}"
            ));
        }
        if let Err(e) = self.scene.validate() {
            v.push(format!("scene: {e}"));
        }
        for (name, fov) in [
            ("camera.fov_h_deg", self.camera.fov_h_deg),
            ("camera.fov_v_deg", self.camera.fov_v_deg),
        ] {
            if !(fov > 0.0 && fov < 180.0) {
                v.push(format!("{name}: must be in (0, 180), got {fov}"));
            }
        }
        if self.camera.rays_x == 0 || self.camera.rays_y == 0 {
            v.push("camera: ray budget must be positive on both axes".to_string());
        }
        if self.uavs.is_empty() {
            v.push("uavs: at least one agent is required".to_string());
        }
        for (u, uav) in self.uavs.iter().enumerate() {
            if uav.poses.is_empty() {
                v.push(format!("uavs[{u}]: needs at least one pose"));
                continue;
            }
            for (r, p) in uav.poses.iter().enumerate() {
                if p.position.iter().any(|c| !c.is_finite()) {
                    v.push(format!("uavs[{u}].poses[{r}]: position must be finite"));
                }
                if p.position[2] <= self.grid.ground_z() {
                    v.push(format!(
                        "uavs[{u}].poses[{r}]: agent must fly above the grid floor z = {}",
                        self.grid.ground_z()
                    ));
                }
            }
        }
        if self.graph.full && !self.graph.edges.is_empty() {
            v.push("graph: give either full=true or an edge list, not both".to_string());
        }
        if !self.graph.full {
            if let Err(e) = CommGraph::new(self.uavs.len(), self.graph.edges.iter().copied()) {
                v.push(format!("graph: {e}"));
            }
        }
        if let Err(e) = self.encoder.validate() {
            v.push(format!("encoder: {e}"));
        }
        if !(self.theta > 0.0 && self.theta < 1.0) {
            v.push(format!("theta: must be inside (0,1), got {}", self.theta));
        }
        if let Err(e) = self.quality.validate() {
            v.push(format!("quality: {e}"));
        }
        if let Err(e) = self.fusion.validate() {
            v.push(format!("fusion: {e}"));
        }
        if let Some(li) = &self.impairments {
            if !(0.0..=1.0).contains(&li.drop_probability) {
                v.push(format!(
                    "impairments.drop_probability: must be in [0,1], got {}",
                    li.drop_probability
                ));
            }
        }
        if self.rounds == 0 {
            v.push("rounds: must be at least 1".to_string());
        }
        if v.is_empty() {
            Ok(())
        } else {
            Err(ConfigError { violations: v })
        }
    }

    pub fn comm_graph(&self) -> CommGraph {
        if self.graph.full {
            CommGraph::full(self.uavs.len())
        } else {
            CommGraph::new(self.uavs.len(), self.graph.edges.iter().copied())
                .expect("validated edges")
        }
    }

    pub fn link_budget(&self) -> LinkBudget {
        match self.budget {
            None => LinkBudget::unlimited(),
            Some(b) => LinkBudget::bytes(b),
        }
    }

    /// Impairments with their drop-draw seed derived from the master seed.
    pub fn link_impairments(&self) -> Option<LinkImpairments> {
        self.impairments.as_ref().map(|li| LinkImpairments {
            drop_probability: li.drop_probability,
            per_link_cap: li.per_link_cap,
            seed: hash_mix(&[self.seed, LINK_SALT]),
        })
    }
}

/// Scene parameters with the effective seed derived from the master seed.
pub fn effective_scene_params(cfg: &ScenarioConfig) -> SceneParams {
    let mut p = cfg.scene.clone();
    p.seed = hash_mix(&[cfg.seed, cfg.scene.seed, SCENE_SALT]);
    p
}

/// Encoder parameters with the per-agent noise seed derived from the
/// master seed.
pub fn uav_encoder_params(cfg: &ScenarioConfig, uav: usize) -> EncoderParams {
    let mut p = cfg.encoder.clone();
    p.noise_seed = hash_mix(&[cfg.seed, cfg.encoder.noise_seed, uav as u64, NOISE_SALT]);
    p
}

/// The pose an agent holds in a given round (the last pose repeats).
pub fn uav_pose(cfg: &ScenarioConfig, uav: usize, round: u32) -> Pose {
    let poses = &cfg.uavs[uav].poses;
    let idx = (round as usize).min(poses.len() - 1);
    poses[idx].to_pose()
}

pub fn uav_camera(cfg: &ScenarioConfig, uav: usize, round: u32) -> CameraModel {
    CameraModel::new(
        uav_pose(cfg, uav, round),
        cfg.camera.fov_h_deg.to_radians(),
        cfg.camera.fov_v_deg.to_radians(),
        cfg.camera.rays_x,
        cfg.camera.rays_y,
    )
}

/// Per-agent metrics of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct UavRunMetrics {
    pub id: u16,
    pub solo_iou: [Option<f64>; SemanticClass::COUNT],
    pub solo_miou: f64,
    pub fused_iou: [Option<f64>; SemanticClass::COUNT],
    pub fused_miou: f64,
}

/// Everything a finished run reports.
#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub uavs: Vec<UavRunMetrics>,
    pub mean_solo_miou: f64,
    pub mean_fused_miou: f64,
    /// Fused per-class IoU averaged over the agents where defined.
    pub mean_fused_iou: [Option<f64>; SemanticClass::COUNT],
    /// Loss of the fused result against the named baseline; negative
    /// values are gains.
    pub baselines: Vec<(String, AccuracyLoss)>,
    pub total_bytes: u64,
    pub bytes_per_round: Vec<u64>,
    pub request_bytes: u64,
    pub feature_bytes: u64,
    pub feature_msgs: u64,
    pub mean_feature_msg_bytes: f64,
    pub truncated_cells: u64,
    /// Communication volume in MB (bytes / 2^20).
    pub cv_mb: f64,
    /// Float-payload byte accounting of the codec on this grid.
    pub volume_payload_bytes: u64,
    pub bev_payload_bytes: u64,
    pub compression_ratio: f64,
    pub rounds: u32,
    pub include_free: bool,
    /// The configuration the run executed, as JSON.
    pub config_json: String,
    /// Excluded from CSV so reports stay byte-reproducible.
    pub wall_clock_ms: u128,
}

impl RunReport {
    /// Per-agent CSV table with a trailing mean row; wall clock excluded.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("uav,solo_miou,fused_miou");
        for c in SemanticClass::ALL {
            out.push_str(&format!(",iou_{}", c.name()));
        }
        out.push('\n');
        let fmt_opt = |v: &Option<f64>| match v {
            Some(x) => format!("{x:.6}"),
            None => String::new(),
        };
        for u in &self.uavs {
            out.push_str(&format!("{},{:.6},{:.6}", u.id, u.solo_miou, u.fused_miou));
            for c in &u.fused_iou {
                out.push(',');
                out.push_str(&fmt_opt(c));
            }
            out.push('\n');
        }
        out.push_str(&format!(
            "mean,{:.6},{:.6}",
            self.mean_solo_miou, self.mean_fused_miou
        ));
        for c in &self.mean_fused_iou {
            out.push(',');
            out.push_str(&fmt_opt(c));
        }
        out.push('\n');
        out
    }

    /// Human-readable summary.
    pub fn summary(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!(
            "agents: {}   rounds: {}   include_free: {}\n",
            self.uavs.len(),
            self.rounds,
            self.include_free
        ));
        s.push_str(&format!(
            "mIoU   solo: {:.4}   fused: {:.4}\n",
            self.mean_solo_miou, self.mean_fused_miou
        ));
        for (name, loss) in &self.baselines {
            s.push_str(&format!(
                "loss vs {name}: {:+.2}% ({:+.3} points)\n",
                loss.ratio_pct, loss.points
            ));
        }
        s.push_str(&format!(
            "communication: {} bytes ({:.4} MB), {} feature msgs, mean {:.1} B/msg, {} cells truncated\n",
            self.total_bytes,
            self.cv_mb,
            self.feature_msgs,
            self.mean_feature_msg_bytes,
            self.truncated_cells
        ));
        s.push_str(&format!(
            "codec accounting: {} B (volume) vs {} B (bev) = {:.1}x\n",
            self.volume_payload_bytes, self.bev_payload_bytes, self.compression_ratio
        ));
        s.push_str(&format!("wall clock: {} ms\n", self.wall_clock_ms));
        s
    }
}

/// A finished scenario run with its artifacts.
#[derive(Debug, Clone)]
pub struct ScenarioRun {
    pub report: RunReport,
    pub log: DeliveryLog,
    pub gt: OccupancyGrid,
    pub solo_predictions: Vec<OccupancyGrid>,
    pub fused_predictions: Vec<OccupancyGrid>,
}

/// Execute the full pipeline: scene, per-agent perception, masks, the
/// communication rounds, fusion, and metrics (taken on the final round).
pub fn run_scenario(cfg: &ScenarioConfig) -> Result<ScenarioRun, ConfigError> {
    cfg.validate()?;
    let t0 = Instant::now();
    let gt = generate_scene(&cfg.grid, &effective_scene_params(cfg))
        .map_err(|e| ConfigError::one(format!("scene: {e}")))?;
    let n = cfg.uavs.len();
    let graph = cfg.comm_graph();
    let budget = cfg.link_budget();
    let impairments = cfg.link_impairments();

    let mut log = DeliveryLog::default();
    let mut bytes_per_round = Vec::with_capacity(cfg.rounds as usize);
    let mut solo_predictions = Vec::new();
    let mut fused_predictions = Vec::new();

    for round in 0..cfg.rounds {
        // Per-agent perception is independent; results collect in agent
        // order so worker count cannot change anything downstream.
        let per_agent: Vec<(FeatureVolume, AgentRoundState)> = (0..n)
            .into_par_iter()
            .map(|u| {
                let cam = uav_camera(cfg, u, round);
                let vis = raycast_visibility(&gt, &cam);
                let vol = encode_local(&gt, &vis, &cam, &uav_encoder_params(cfg, u));
                let bev = compress(&vol, cfg.theta).expect("theta validated");
                let grid_pose = Pose::identity();
                let scores = quality_map(&bev, &grid_pose, &cam.pose, &cfg.quality)
                    .expect("pose heights validated");
                let support = support_from_scores(
                    &scores,
                    (cfg.grid.dims.0, cfg.grid.dims.1),
                    cfg.quality.xi,
                );
                let request = support.complement();
                let state = AgentRoundState {
                    id: u as u16,
                    agent_pose: cam.pose,
                    grid_pose,
                    bev,
                    scores,
                    support,
                    request,
                };
                (vol, state)
            })
            .collect();

        let states: Vec<AgentRoundState> = per_agent.iter().map(|(_, s)| s.clone()).collect();
        let outcome = run_round_impaired(&states, &graph, &budget, impairments.as_ref(), round);
        bytes_per_round.push(total_bytes(&outcome.log, ByteScope::Round(round)));

        if round + 1 == cfg.rounds {
            for (u, (vol, _)) in per_agent.iter().enumerate() {
                let received: Vec<SparseCellSet> = outcome.inbox[u]
                    .iter()
                    .map(|(_, set)| set.clone())
                    .collect();
                let fused = integrate(vol, &received, &cfg.fusion);
                solo_predictions.push(predict(vol));
                fused_predictions.push(predict(&fused));
            }
        }
        log.extend(outcome.log);
    }

    // Metrics on the final round's predictions.
    let mut uav_metrics = Vec::with_capacity(n);
    for u in 0..n {
        let solo_iou = iou_per_class(&solo_predictions[u], &gt, None);
        let fused_iou = iou_per_class(&fused_predictions[u], &gt, None);
        let solo_miou = miou(&solo_iou, cfg.include_free)
            .map_err(|e| ConfigError::one(format!("metrics (agent {u}): {e}")))?;
        let fused_miou = miou(&fused_iou, cfg.include_free)
            .map_err(|e| ConfigError::one(format!("metrics (agent {u}): {e}")))?;
        uav_metrics.push(UavRunMetrics {
            id: u as u16,
            solo_iou,
            solo_miou,
            fused_iou,
            fused_miou,
        });
    }
    let mean_solo_miou = uav_metrics.iter().map(|m| m.solo_miou).sum::<f64>() / n as f64;
    let mean_fused_miou = uav_metrics.iter().map(|m| m.fused_miou).sum::<f64>() / n as f64;
    let mut mean_fused_iou = [None; SemanticClass::COUNT];
    for (c, slot) in mean_fused_iou.iter_mut().enumerate() {
        let vals: Vec<f64> = uav_metrics.iter().filter_map(|m| m.fused_iou[c]).collect();
        if !vals.is_empty() {
            *slot = Some(vals.iter().sum::<f64>() / vals.len() as f64);
        }
    }
    let baselines = vec![(
        "solo".to_string(),
        accuracy_loss(mean_solo_miou.max(f64::MIN_POSITIVE), mean_fused_miou)
            .expect("positive baseline"),
    )];

    let request_bytes: u64 = log
        .entries
        .iter()
        .filter(|e| e.kind == MsgKind::Request)
        .map(|e| e.bytes)
        .sum();
    let feature_entries: Vec<_> = log
        .entries
        .iter()
        .filter(|e| e.kind == MsgKind::Feature)
        .collect();
    let feature_bytes: u64 = feature_entries.iter().map(|e| e.bytes).sum();
    let feature_msgs = feature_entries.len() as u64;
    let truncated_cells: u64 = feature_entries
        .iter()
        .map(|e| e.truncated_cells as u64)
        .sum();
    let total = total_bytes(&log, ByteScope::Global);

    let report = RunReport {
        uavs: uav_metrics,
        mean_solo_miou,
        mean_fused_miou,
        mean_fused_iou,
        baselines,
        total_bytes: total,
        bytes_per_round,
        request_bytes,
        feature_bytes,
        feature_msgs,
        mean_feature_msg_bytes: if feature_msgs > 0 {
            feature_bytes as f64 / feature_msgs as f64
        } else {
            0.0
        },
        truncated_cells,
        cv_mb: bytes_to_mb(total),
        volume_payload_bytes: volume_payload_bytes(&cfg.grid, FEATURE_CHANNELS),
        bev_payload_bytes: bev_payload_bytes(&cfg.grid, BEV_PLANES),
        compression_ratio: compression_ratio(cfg.grid.dims.2, FEATURE_CHANNELS, BEV_PLANES),
        rounds: cfg.rounds,
        include_free: cfg.include_free,
        config_json: cfg.to_json(),
        wall_clock_ms: t0.elapsed().as_millis(),
    };

    Ok(ScenarioRun {
        report,
        log,
        gt,
        solo_predictions,
        fused_predictions,
    })
}

/// Sweepable configuration axes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxis {
    UavCount,
    Xi,
    Theta,
    Budget,
}

impl SweepAxis {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "uav_count" | "uavs" => Some(Self::UavCount),
            "xi" => Some(Self::Xi),
            "theta" => Some(Self::Theta),
            "budget" => Some(Self::Budget),
            _ => None,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Self::UavCount => "uav_count",
            Self::Xi => "xi",
            Self::Theta => "theta",
            Self::Budget => "budget",
        }
    }
}

/// One value along a sweep axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SweepPoint {
    Count(usize),
    Real(f64),
    /// `None` = unlimited.
    Budget(Option<u64>),
}

impl std::fmt::Display for SweepPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SweepPoint::Count(k) => write!(f, "{k}"),
            SweepPoint::Real(v) => write!(f, "{v}"),
            SweepPoint::Budget(Some(b)) => write!(f, "{b}"),
            SweepPoint::Budget(None) => write!(f, "inf"),
        }
    }
}

/// Parse one sweep value for an axis (`inf` = unlimited budget).
pub fn parse_sweep_point(axis: SweepAxis, s: &str) -> Result<SweepPoint, ConfigError> {
    let s = s.trim();
    match axis {
        SweepAxis::UavCount => s
            .parse::<usize>()
            .map(SweepPoint::Count)
            .map_err(|e| ConfigError::one(format!("bad agent count {s:?}: {e}"))),
        SweepAxis::Xi | SweepAxis::Theta => s
            .parse::<f64>()
            .map(SweepPoint::Real)
            .map_err(|e| ConfigError::one(format!("bad value {s:?}: {e}"))),
        SweepAxis::Budget => {
            if s == "inf" || s == "unlimited" {
                Ok(SweepPoint::Budget(None))
            } else {
                s.parse::<u64>()
                    .map(|b| SweepPoint::Budget(Some(b)))
                    .map_err(|e| ConfigError::one(format!("bad budget {s:?}: {e}")))
            }
        }
    }
}

/// Derive the configuration for one sweep point.
pub fn apply_sweep_point(
    cfg: &ScenarioConfig,
    axis: SweepAxis,
    point: SweepPoint,
) -> Result<ScenarioConfig, ConfigError> {
    let mut out = cfg.clone();
    match (axis, point) {
        (SweepAxis::UavCount, SweepPoint::Count(k)) => {
            if k == 0 || k > cfg.uavs.len() {
                return Err(ConfigError::one(format!(
                    "agent count {k} outside 1..={}",
                    cfg.uavs.len()
                )));
            }
            out.uavs.truncate(k);
            if !out.graph.full {
                out.graph
                    .edges
                    .retain(|&(a, b)| (a as usize) < k && (b as usize) < k);
            }
        }
        (SweepAxis::Xi, SweepPoint::Real(v)) => out.quality.xi = v,
        (SweepAxis::Theta, SweepPoint::Real(v)) => out.theta = v,
        (SweepAxis::Budget, SweepPoint::Budget(b)) => out.budget = b,
        _ => {
            return Err(ConfigError::one(format!(
                "value {point} does not fit axis {}",
                axis.as_str()
            )))
        }
    }
    out.validate()?;
    Ok(out)
}

/// Run the scenario once per value, sharing the master seed.
pub fn sweep(
    cfg: &ScenarioConfig,
    axis: SweepAxis,
    points: &[SweepPoint],
) -> Result<Vec<(SweepPoint, RunReport)>, ConfigError> {
    let mut out = Vec::with_capacity(points.len());
    for &p in points {
        let run_cfg = apply_sweep_point(cfg, axis, p)?;
        let run = run_scenario(&run_cfg)?;
        out.push((p, run.report));
    }
    Ok(out)
}

/// CSV table for a finished sweep.
pub fn sweep_csv(axis: SweepAxis, rows: &[(SweepPoint, RunReport)]) -> String {
    let mut out = format!(
        "{},mean_solo_miou,mean_fused_miou,total_bytes,cv_mb,request_bytes,feature_bytes,feature_msgs,truncated_cells\n",
        axis.as_str()
    );
    for (p, r) in rows {
        out.push_str(&format!(
            "{},{:.6},{:.6},{},{:.6},{},{},{},{}\n",
            p,
            r.mean_solo_miou,
            r.mean_fused_miou,
            r.total_bytes,
            r.cv_mb,
            r.request_bytes,
            r.feature_bytes,
            r.feature_msgs,
            r.truncated_cells
        ));
    }
    out
}
