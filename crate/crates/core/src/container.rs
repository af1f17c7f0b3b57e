//! Flat binary container for occupancy grids and feature volumes.
//!
//! Layout, all little-endian:
//! - 16-byte header: 8-byte magic `MCOPVOX\0`, version byte, kind byte
//!   (1 = labels, 2 = features), 6 zero bytes.
//! - grid spec: dims as three u64, voxel size as f64, origin as three f64.
//! - features only: channel count as u64.
//! - payload in row-major (x, y, z[, c]) order: labels as u8, features as
//!   f32.

use std::io::{Read, Write};

use thiserror::Error;

use crate::grid::{FeatureVolume, GridSpec, OccupancyGrid};

const MAGIC: [u8; 8] = *b"MCOPVOX\0";
const VERSION: u8 = 1;
const KIND_LABELS: u8 = 1;
const KIND_FEATURES: u8 = 2;

#[derive(Debug, Error)]
pub enum ContainerError {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("bad magic bytes (not a container file)")]
    BadMagic,
    #[error("unsupported container version {0}")]
    BadVersion(u8),
    #[error("unexpected payload kind {found} (wanted {wanted})")]
    WrongKind { wanted: u8, found: u8 },
    #[error("invalid grid spec in container: {0}")]
    BadSpec(String),
    #[error("invalid payload: {0}")]
    BadPayload(String),
}

fn write_header<W: Write>(w: &mut W, kind: u8) -> Result<(), ContainerError> {
    w.write_all(&MAGIC)?;
    w.write_all(&[VERSION, kind, 0, 0, 0, 0, 0, 0])?;
    Ok(())
}

fn write_spec<W: Write>(w: &mut W, spec: &GridSpec) -> Result<(), ContainerError> {
    for d in [spec.dims.0, spec.dims.1, spec.dims.2] {
        w.write_all(&(d as u64).to_le_bytes())?;
    }
    w.write_all(&spec.voxel_size.to_le_bytes())?;
    for o in spec.origin {
        w.write_all(&o.to_le_bytes())?;
    }
    Ok(())
}

fn read_exact<R: Read, const N: usize>(r: &mut R) -> Result<[u8; N], ContainerError> {
    let mut buf = [0u8; N];
    r.read_exact(&mut buf)?;
    Ok(buf)
}

fn read_header<R: Read>(r: &mut R, wanted_kind: u8) -> Result<(), ContainerError> {
    let magic: [u8; 8] = read_exact(r)?;
    if magic != MAGIC {
        return Err(ContainerError::BadMagic);
    }
    let rest: [u8; 8] = read_exact(r)?;
    if rest[0] != VERSION {
        return Err(ContainerError::BadVersion(rest[0]));
    }
    if rest[1] != wanted_kind {
        return Err(ContainerError::WrongKind {
            wanted: wanted_kind,
            found: rest[1],
        });
    }
    Ok(())
}

fn read_spec<R: Read>(r: &mut R) -> Result<GridSpec, ContainerError> {
    let x = u64::from_le_bytes(read_exact(r)?) as usize;
    let y = u64::from_le_bytes(read_exact(r)?) as usize;
    let z = u64::from_le_bytes(read_exact(r)?) as usize;
    let voxel_size = f64::from_le_bytes(read_exact(r)?);
    let origin = [
        f64::from_le_bytes(read_exact(r)?),
        f64::from_le_bytes(read_exact(r)?),
        f64::from_le_bytes(read_exact(r)?),
    ];
    let spec = GridSpec {
        dims: (x, y, z),
        voxel_size,
        origin,
    };
    spec.validate().map_err(ContainerError::BadSpec)?;
    Ok(spec)
}

pub fn write_grid<W: Write>(grid: &OccupancyGrid, w: &mut W) -> Result<(), ContainerError> {
    write_header(w, KIND_LABELS)?;
    write_spec(w, grid.spec())?;
    w.write_all(grid.labels())?;
    Ok(())
}

pub fn read_grid<R: Read>(r: &mut R) -> Result<OccupancyGrid, ContainerError> {
    read_header(r, KIND_LABELS)?;
    let spec = read_spec(r)?;
    let mut labels = vec![0u8; spec.voxel_count()];
    r.read_exact(&mut labels)?;
    OccupancyGrid::from_labels(spec, labels).map_err(ContainerError::BadPayload)
}

pub fn write_volume<W: Write>(vol: &FeatureVolume, w: &mut W) -> Result<(), ContainerError> {
    write_header(w, KIND_FEATURES)?;
    write_spec(w, vol.spec())?;
    w.write_all(&(vol.channels() as u64).to_le_bytes())?;
    let mut buf = Vec::with_capacity(vol.data().len() * 4);
    for v in vol.data() {
        buf.extend_from_slice(&v.to_le_bytes());
    }
    w.write_all(&buf)?;
    Ok(())
}

pub fn read_volume<R: Read>(r: &mut R) -> Result<FeatureVolume, ContainerError> {
    read_header(r, KIND_FEATURES)?;
    let spec = read_spec(r)?;
    let channels = u64::from_le_bytes(read_exact(r)?) as usize;
    if channels == 0 || channels > 64 {
        return Err(ContainerError::BadPayload(format!(
            "implausible channel count {channels}"
        )));
    }
    let n = spec.voxel_count() * channels;
    let mut bytes = vec![0u8; n * 4];
    r.read_exact(&mut bytes)?;
    let data: Vec<f32> = bytes
        .chunks_exact(4)
        .map(|c| f32::from_le_bytes([c[0], c[1], c[2], c[3]]))
        .collect();
    FeatureVolume::from_data(spec, channels, data).map_err(ContainerError::BadPayload)
}
