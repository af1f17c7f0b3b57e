//! Packed bit arrays over 2D (BEV) and 3D (voxel) grids.
//!
//! Linear indexing matches the array types in [`crate::grid`]: for 2D the
//! cell (x, y) lives at `x * Y + y`; for 3D the voxel (x, y, z) lives at
//! `(x * Y + y) * Z + z`, so a vertical pillar is contiguous.

#[derive(Debug, Clone, PartialEq, Eq)]
struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    fn new(len: usize) -> Self {
        Self {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    #[inline]
    fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    fn set(&mut self, i: usize, v: bool) {
        debug_assert!(i < self.len);
        let w = &mut self.words[i / 64];
        if v {
            *w |= 1 << (i % 64);
        } else {
            *w &= !(1 << (i % 64));
        }
    }

    fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn complement(&self) -> Self {
        let mut out = Self {
            len: self.len,
            words: self.words.iter().map(|w| !w).collect(),
        };
        out.clear_tail();
        out
    }

    /// Zero the unused bits of the last word so popcounts stay exact.
    fn clear_tail(&mut self) {
        let tail = self.len % 64;
        if tail != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
    }

    fn union(&self, other: &Self) -> Self {
        assert_eq!(self.len, other.len, "bit length mismatch");
        Self {
            len: self.len,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a | b)
                .collect(),
        }
    }

    fn intersection(&self, other: &Self) -> Self {
        assert_eq!(self.len, other.len, "bit length mismatch");
        Self {
            len: self.len,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    fn is_subset_of(&self, other: &Self) -> bool {
        assert_eq!(self.len, other.len, "bit length mismatch");
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }
}

/// Bit array over an X x Y BEV grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mask2D {
    dims: (usize, usize),
    bits: BitVec,
}

impl Mask2D {
    pub fn new(x: usize, y: usize) -> Self {
        Self {
            dims: (x, y),
            bits: BitVec::new(x * y),
        }
    }

    pub fn filled(x: usize, y: usize) -> Self {
        Self::new(x, y).complement()
    }

    pub fn dims(&self) -> (usize, usize) {
        self.dims
    }

    #[inline]
    fn index(&self, x: usize, y: usize) -> usize {
        assert!(x < self.dims.0 && y < self.dims.1, "cell out of range");
        x * self.dims.1 + y
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> bool {
        self.bits.get(self.index(x, y))
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, v: bool) {
        let i = self.index(x, y);
        self.bits.set(i, v);
    }

    pub fn count_ones(&self) -> usize {
        self.bits.count_ones()
    }

    pub fn complement(&self) -> Self {
        Self {
            dims: self.dims,
            bits: self.bits.complement(),
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        assert_eq!(self.dims, other.dims, "mask dims mismatch");
        Self {
            dims: self.dims,
            bits: self.bits.union(&other.bits),
        }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        assert_eq!(self.dims, other.dims, "mask dims mismatch");
        Self {
            dims: self.dims,
            bits: self.bits.intersection(&other.bits),
        }
    }

    /// Iterate set cells in (x, y) lexicographic order.
    pub fn iter_set(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let (_, ny) = self.dims;
        (0..self.dims.0)
            .flat_map(move |x| (0..ny).map(move |y| (x, y)))
            .filter(move |&(x, y)| self.get(x, y))
    }

    /// Run-length encode in linear index order: alternating clear/set run
    /// lengths, starting with a clear run (which may be zero).
    pub fn to_runs(&self) -> Vec<u32> {
        let total = self.dims.0 * self.dims.1;
        let mut runs = Vec::new();
        let mut current = false; // runs start with clear
        let mut len: u32 = 0;
        for i in 0..total {
            let bit = self.bits.get(i);
            if bit == current {
                len += 1;
            } else {
                runs.push(len);
                current = bit;
                len = 1;
            }
        }
        runs.push(len);
        if runs.is_empty() {
            runs.push(0);
        }
        runs
    }

    /// Rebuild a mask from alternating clear/set runs. Fails if the run
    /// lengths do not sum to exactly X*Y.
    pub fn from_runs(x: usize, y: usize, runs: &[u32]) -> Result<Self, RunSumMismatch> {
        let total = x * y;
        let sum: u64 = runs.iter().map(|&r| r as u64).sum();
        if sum != total as u64 {
            return Err(RunSumMismatch {
                expected: total as u64,
                actual: sum,
            });
        }
        let mut mask = Self::new(x, y);
        let mut i = 0usize;
        let mut set = false;
        for &run in runs {
            if set {
                for j in i..i + run as usize {
                    mask.bits.set(j, true);
                }
            }
            i += run as usize;
            set = !set;
        }
        Ok(mask)
    }
}

/// RLE run lengths did not sum to the grid cell count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunSumMismatch {
    pub expected: u64,
    pub actual: u64,
}

impl std::fmt::Display for RunSumMismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "run lengths sum to {} but the grid has {} cells",
            self.actual, self.expected
        )
    }
}

impl std::error::Error for RunSumMismatch {}

/// Bit array over an X x Y x Z voxel grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mask3D {
    dims: (usize, usize, usize),
    bits: BitVec,
}

impl Mask3D {
    pub fn new(x: usize, y: usize, z: usize) -> Self {
        Self {
            dims: (x, y, z),
            bits: BitVec::new(x * y * z),
        }
    }

    pub fn filled(x: usize, y: usize, z: usize) -> Self {
        let mut m = Self::new(x, y, z);
        for w in &mut m.bits.words {
            *w = !0;
        }
        m.bits.clear_tail();
        m
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        self.dims
    }

    #[inline]
    fn index(&self, x: usize, y: usize, z: usize) -> usize {
        assert!(
            x < self.dims.0 && y < self.dims.1 && z < self.dims.2,
            "voxel out of range"
        );
        (x * self.dims.1 + y) * self.dims.2 + z
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize, z: usize) -> bool {
        self.bits.get(self.index(x, y, z))
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, z: usize, v: bool) {
        let i = self.index(x, y, z);
        self.bits.set(i, v);
    }

    pub fn count_ones(&self) -> usize {
        self.bits.count_ones()
    }

    pub fn union(&self, other: &Self) -> Self {
        assert_eq!(self.dims, other.dims, "mask dims mismatch");
        Self {
            dims: self.dims,
            bits: self.bits.union(&other.bits),
        }
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        assert_eq!(self.dims, other.dims, "mask dims mismatch");
        self.bits.is_subset_of(&other.bits)
    }

    /// Count of positions where the two masks disagree.
    pub fn xor_count(&self, other: &Self) -> usize {
        assert_eq!(self.dims, other.dims, "mask dims mismatch");
        self.bits
            .words
            .iter()
            .zip(&other.bits.words)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum()
    }
}
