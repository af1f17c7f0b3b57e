//! Occupancy-segmentation metrics: per-class IoU, mIoU, and the two
//! accuracy-loss readings (relative percentage and absolute points).

use thiserror::Error;

use crate::grid::{OccupancyGrid, SemanticClass};
use crate::mask::Mask3D;

#[derive(Debug, Error, PartialEq)]
pub enum MetricsError {
    #[error("no class is defined in either grid within the scope")]
    NoDefinedClass,
    #[error("baseline mIoU must be positive, got {0}")]
    NonPositiveBaseline(f64),
}

/// Per-class intersection-over-union. A class absent from both grids (in
/// scope) is undefined and reported as `None`.
pub fn iou_per_class(
    pred: &OccupancyGrid,
    gt: &OccupancyGrid,
    scope: Option<&Mask3D>,
) -> [Option<f64>; SemanticClass::COUNT] {
    assert_eq!(pred.spec().dims, gt.spec().dims, "grid dims mismatch");
    if let Some(m) = scope {
        assert_eq!(m.dims(), gt.spec().dims, "scope mask dims mismatch");
    }
    let mut inter = [0u64; SemanticClass::COUNT];
    let mut union = [0u64; SemanticClass::COUNT];
    let (nx, ny, nz) = gt.spec().dims;
    for x in 0..nx {
        for y in 0..ny {
            for z in 0..nz {
                if let Some(m) = scope {
                    if !m.get(x, y, z) {
                        continue;
                    }
                }
                let p = pred.get(x, y, z).id() as usize;
                let g = gt.get(x, y, z).id() as usize;
                if p == g {
                    inter[p] += 1;
                    union[p] += 1;
                } else {
                    union[p] += 1;
                    union[g] += 1;
                }
            }
        }
    }
    let mut out = [None; SemanticClass::COUNT];
    for c in 0..SemanticClass::COUNT {
        if union[c] > 0 {
            out[c] = Some(inter[c] as f64 / union[c] as f64);
        }
    }
    out
}

/// Mean IoU over the defined classes; `include_free` controls whether the
/// free class joins the average (per-class values are unaffected).
pub fn miou(
    per_class: &[Option<f64>; SemanticClass::COUNT],
    include_free: bool,
) -> Result<f64, MetricsError> {
    let start = if include_free { 0 } else { 1 };
    let defined: Vec<f64> = per_class[start..].iter().flatten().copied().collect();
    if defined.is_empty() {
        return Err(MetricsError::NoDefinedClass);
    }
    Ok(defined.iter().sum::<f64>() / defined.len() as f64)
}

/// Both accuracy-loss readings for a baseline/variant mIoU pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AccuracyLoss {
    /// (baseline - variant) / baseline * 100.
    pub ratio_pct: f64,
    /// (baseline - variant) * 100: the drop in mIoU points for mIoU values
    /// on the [0, 1] scale.
    pub points: f64,
}

pub fn accuracy_loss(baseline_miou: f64, variant_miou: f64) -> Result<AccuracyLoss, MetricsError> {
    if baseline_miou <= 0.0 {
        return Err(MetricsError::NonPositiveBaseline(baseline_miou));
    }
    Ok(AccuracyLoss {
        ratio_pct: (baseline_miou - variant_miou) / baseline_miou * 100.0,
        points: (baseline_miou - variant_miou) * 100.0,
    })
}
