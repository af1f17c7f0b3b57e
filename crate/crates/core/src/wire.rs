//! Bit-exact little-endian wire format for the two message kinds.
//!
//! Every frame starts with the 4-byte magic `MCOP`, a version byte, and a
//! kind byte. Request frames carry the sender's pose (twelve f32: a
//! row-major rotation then the translation) and its request mask as
//! alternating clear/set RLE runs starting with clear. Feature frames carry
//! sorted sparse cells of `u16 x, u16 y, f32 altitude, c_out * f32`, so one
//! cell costs `8 + 4 * c_out` bytes on the wire.

use thiserror::Error;

use crate::dmpg::{SparseCell, SparseCellSet};
use crate::grid::Pose;
use crate::mask::Mask2D;

pub const MAGIC: [u8; 4] = *b"MCOP";
pub const VERSION: u8 = 1;
pub const KIND_REQUEST: u8 = 1;
pub const KIND_FEATURE: u8 = 2;

/// Receiver id marking a broadcast transmission.
pub const BROADCAST: u16 = u16::MAX;

/// Fixed bytes of a feature frame before the cell array.
pub const FEATURE_HEADER_BYTES: u64 = 20;

/// Wire bytes of one sparse cell.
pub fn feature_cell_bytes(c_out: usize) -> u64 {
    8 + 4 * c_out as u64
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WireError {
    #[error("buffer truncated")]
    Truncated,
    #[error("bad magic bytes")]
    BadMagic,
    #[error("unsupported wire version {0}")]
    BadVersion(u8),
    #[error("unexpected message kind {0}")]
    BadKind(u8),
    #[error("mask runs invalid: {0}")]
    RleSum(String),
    #[error("{0} unexpected trailing bytes")]
    TrailingBytes(usize),
    #[error("cell list not sorted by (x, y) or has duplicates")]
    UnsortedCells,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RequestMsg {
    pub sender: u16,
    pub round: u32,
    /// Row-major rotation of the sender pose, stored at wire precision.
    pub rotation: [f32; 9],
    pub translation: [f32; 3],
    pub mask: Mask2D,
}

impl RequestMsg {
    pub fn from_pose(sender: u16, round: u32, pose: &Pose, mask: Mask2D) -> Self {
        let mut rotation = [0.0f32; 9];
        for (r, row) in pose.rotation.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                rotation[r * 3 + c] = *v as f32;
            }
        }
        Self {
            sender,
            round,
            rotation,
            translation: [
                pose.translation[0] as f32,
                pose.translation[1] as f32,
                pose.translation[2] as f32,
            ],
            mask,
        }
    }

    /// Reconstruct the pose at wire precision. The f32 rounding can leave
    /// the rotation slightly off orthonormal, so no validation is applied.
    pub fn pose_lossy(&self) -> Pose {
        let mut rotation = [[0.0f64; 3]; 3];
        for (i, v) in self.rotation.iter().enumerate() {
            rotation[i / 3][i % 3] = *v as f64;
        }
        Pose {
            rotation,
            translation: [
                self.translation[0] as f64,
                self.translation[1] as f64,
                self.translation[2] as f64,
            ],
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FeatureMsg {
    pub sender: u16,
    pub receiver: u16,
    pub round: u32,
    pub c_out: u16,
    pub cells: SparseCellSet,
}

struct Cursor<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(buf: &'a [u8]) -> Self {
        Self { buf, pos: 0 }
    }

    fn take(&mut self, n: usize) -> Result<&'a [u8], WireError> {
        if self.pos + n > self.buf.len() {
            return Err(WireError::Truncated);
        }
        let s = &self.buf[self.pos..self.pos + n];
        self.pos += n;
        Ok(s)
    }

    fn u8(&mut self) -> Result<u8, WireError> {
        Ok(self.take(1)?[0])
    }

    fn u16(&mut self) -> Result<u16, WireError> {
        let b = self.take(2)?;
        Ok(u16::from_le_bytes([b[0], b[1]]))
    }

    fn u32(&mut self) -> Result<u32, WireError> {
        let b = self.take(4)?;
        Ok(u32::from_le_bytes([b[0], b[1], b[2], b[3]]))
    }

    fn f32(&mut self) -> Result<f32, WireError> {
        let b = self.take(4)?;
        Ok(f32::from_le_bytes([b[0], b[1], b[2], b[3]]))
    }

    fn remaining(&self) -> usize {
        self.buf.len() - self.pos
    }

    fn finish(self) -> Result<(), WireError> {
        if self.remaining() != 0 {
            return Err(WireError::TrailingBytes(self.remaining()));
        }
        Ok(())
    }
}

fn read_header(c: &mut Cursor, wanted_kind: u8) -> Result<(), WireError> {
    if c.take(4)? != MAGIC {
        return Err(WireError::BadMagic);
    }
    let version = c.u8()?;
    if version != VERSION {
        return Err(WireError::BadVersion(version));
    }
    let kind = c.u8()?;
    if kind != wanted_kind {
        return Err(WireError::BadKind(kind));
    }
    Ok(())
}

pub fn encode_request(msg: &RequestMsg) -> Vec<u8> {
    let runs = msg.mask.to_runs();
    let (mx, my) = msg.mask.dims();
    let mut out = Vec::with_capacity(68 + 4 * runs.len());
    out.extend_from_slice(&MAGIC);
    out.push(VERSION);
    out.push(KIND_REQUEST);
    out.extend_from_slice(&msg.sender.to_le_bytes());
    out.extend_from_slice(&msg.round.to_le_bytes());
    for v in msg.rotation {
        out.extend_from_slice(&v.to_le_bytes());
    }
    for v in msg.translation {
        out.extend_from_slice(&v.to_le_bytes());
    }
    out.extend_from_slice(&(mx as u16).to_le_bytes());
    out.extend_from_slice(&(my as u16).to_le_bytes());
    out.extend_from_slice(&(runs.len() as u32).to_le_bytes());
    for r in runs {
        out.extend_from_slice(&r.to_le_bytes());
    }
    out
}

pub fn decode_request(buf: &[u8]) -> Result<RequestMsg, WireError> {
    let mut c = Cursor::new(buf);
    read_header(&mut c, KIND_REQUEST)?;
    let sender = c.u16()?;
    let round = c.u32()?;
    let mut rotation = [0.0f32; 9];
    for v in rotation.iter_mut() {
        *v = c.f32()?;
    }
    let mut translation = [0.0f32; 3];
    for v in translation.iter_mut() {
        *v = c.f32()?;
    }
    let mx = c.u16()? as usize;
    let my = c.u16()? as usize;
    let run_count = c.u32()? as usize;
    if c.remaining() < run_count * 4 {
        return Err(WireError::Truncated);
    }
    let mut runs = Vec::with_capacity(run_count);
    for _ in 0..run_count {
        runs.push(c.u32()?);
    }
    c.finish()?;
    let mask = Mask2D::from_runs(mx, my, &runs).map_err(|e| WireError::RleSum(e.to_string()))?;
    Ok(RequestMsg {
        sender,
        round,
        rotation,
        translation,
        mask,
    })
}

pub fn encode_feature(msg: &FeatureMsg) -> Vec<u8> {
    let cells = msg.cells.cells();
    let cell_bytes = feature_cell_bytes(msg.c_out as usize) as usize;
    let mut out = Vec::with_capacity(FEATURE_HEADER_BYTES as usize + cells.len() * cell_bytes);
    out.extend_from_slice(&MAGIC);
    out.push(VERSION);
    out.push(KIND_FEATURE);
    out.extend_from_slice(&msg.sender.to_le_bytes());
    out.extend_from_slice(&msg.receiver.to_le_bytes());
    out.extend_from_slice(&msg.round.to_le_bytes());
    out.extend_from_slice(&msg.c_out.to_le_bytes());
    out.extend_from_slice(&(cells.len() as u32).to_le_bytes());
    for cell in cells {
        debug_assert_eq!(cell.payload.len(), msg.c_out as usize);
        out.extend_from_slice(&cell.x.to_le_bytes());
        out.extend_from_slice(&cell.y.to_le_bytes());
        out.extend_from_slice(&cell.altitude.to_le_bytes());
        for v in &cell.payload {
            out.extend_from_slice(&v.to_le_bytes());
        }
    }
    out
}

pub fn decode_feature(buf: &[u8]) -> Result<FeatureMsg, WireError> {
    let mut c = Cursor::new(buf);
    read_header(&mut c, KIND_FEATURE)?;
    let sender = c.u16()?;
    let receiver = c.u16()?;
    let round = c.u32()?;
    let c_out = c.u16()?;
    let cell_count = c.u32()? as usize;
    let cell_bytes = feature_cell_bytes(c_out as usize) as usize;
    if c.remaining() < cell_count * cell_bytes {
        return Err(WireError::Truncated);
    }
    let mut cells = Vec::with_capacity(cell_count);
    for _ in 0..cell_count {
        let x = c.u16()?;
        let y = c.u16()?;
        let altitude = c.f32()?;
        let mut payload = Vec::with_capacity(c_out as usize);
        for _ in 0..c_out {
            payload.push(c.f32()?);
        }
        cells.push(SparseCell {
            x,
            y,
            altitude,
            payload,
        });
    }
    c.finish()?;
    // Order is part of the format; reject rather than repair.
    for pair in cells.windows(2) {
        if (pair[1].x, pair[1].y) <= (pair[0].x, pair[0].y) {
            return Err(WireError::UnsortedCells);
        }
    }
    let cells = SparseCellSet::from_cells(cells).map_err(|_| WireError::UnsortedCells)?;
    Ok(FeatureMsg {
        sender,
        receiver,
        round,
        c_out,
        cells,
    })
}
