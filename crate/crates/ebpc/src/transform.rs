//! The invertible delta -> delta-bit-plane (DBP) -> XOR (DBX) transform and
//! its inverse.
//!
//! A block of n words becomes a base plus d delta patterns, each viewed as P
//! bit-planes of d bits. Adjacent planes are XOR-ed (the MSB plane is taken
//! directly) so that small negative two's-complement deltas also map to
//! mostly-zero planes. Plane bit i corresponds to delta index i, oldest first.

use crate::config::{BaseMode, CodecConfig, DtypeMode};
use crate::f16;

/// A block after the delta stage: optional in-block base plus d delta patterns.
///
/// Fixed-point and float-bitwise deltas are (m+1)-bit two's-complement
/// differences; float-arithmetic deltas are 16-bit binary16 patterns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaBlock {
    /// Raw m-bit base word; absent in implicit mode.
    pub base: Option<u64>,
    pub deltas: Vec<u64>,
}

/// The two bit-plane views of one delta block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneSet {
    /// dbp[j] holds bit j of every delta; bit i of a plane = delta index i.
    /// Index 0 is the LSB plane.
    pub dbp: Vec<u64>,
    /// dbx[P-1] = dbp[P-1]; dbx[j] = dbp[j] ^ dbp[j+1] for j < P-1.
    pub dbx: Vec<u64>,
}

fn fixed_delta(cur: u64, prev: u64, config: &CodecConfig) -> u64 {
    let diff = cur as i64 - prev as i64;
    (diff as u64) & config.delta_mask()
}

fn fixed_undelta(prev: u64, delta: u64, config: &CodecConfig) -> u64 {
    let w = config.delta_width();
    // sign-extend the (m+1)-bit pattern
    let shift = 64 - w;
    let diff = ((delta << shift) as i64) >> shift;
    (prev as i64).wrapping_add(diff) as u64 & config.word_mask()
}

/// Compute the delta block for `words`. `prev` is the last word of the
/// preceding block (implicit mode) and is ignored in explicit mode.
pub fn delta_forward(words: &[u64], prev: u64, config: &CodecConfig) -> DeltaBlock {
    debug_assert_eq!(words.len(), config.block_size);
    let (base, first_prev, tail) = match config.base_mode {
        BaseMode::Explicit => (Some(words[0]), words[0], &words[1..]),
        BaseMode::Implicit => (None, prev, &words[..]),
    };
    let mut deltas = Vec::with_capacity(config.deltas_per_block());
    let mut p = first_prev;
    for &w in tail {
        let d = match config.dtype_mode {
            DtypeMode::FixedPoint | DtypeMode::FloatBitwise => fixed_delta(w, p, config),
            DtypeMode::FloatArithmetic => u64::from(f16::f16_sub(w as u16, p as u16)),
        };
        deltas.push(d);
        p = w;
    }
    DeltaBlock { base, deltas }
}

/// Reconstruct the block's words from its delta block.
pub fn delta_inverse(block: &DeltaBlock, prev: u64, config: &CodecConfig) -> Vec<u64> {
    let mut words = Vec::with_capacity(config.block_size);
    let mut p = match config.base_mode {
        BaseMode::Explicit => {
            let base = block.base.expect("explicit mode requires a base");
            words.push(base);
            base
        }
        BaseMode::Implicit => prev,
    };
    for &d in &block.deltas {
        let w = match config.dtype_mode {
            DtypeMode::FixedPoint | DtypeMode::FloatBitwise => fixed_undelta(p, d, config),
            DtypeMode::FloatArithmetic => u64::from(f16::f16_add(p as u16, d as u16)),
        };
        words.push(w);
        p = w;
    }
    words
}

/// View the deltas as P bit-planes and XOR adjacent planes.
pub fn dbp_dbx_forward(block: &DeltaBlock, config: &CodecConfig) -> PlaneSet {
    let planes = config.plane_count();
    let d = config.deltas_per_block();
    debug_assert_eq!(block.deltas.len(), d);
    let mut dbp = vec![0u64; planes];
    for (i, &delta) in block.deltas.iter().enumerate() {
        for (j, plane) in dbp.iter_mut().enumerate() {
            *plane |= ((delta >> j) & 1) << i;
        }
    }
    let mut dbx = vec![0u64; planes];
    dbx[planes - 1] = dbp[planes - 1];
    for j in 0..planes - 1 {
        dbx[j] = dbp[j] ^ dbp[j + 1];
    }
    PlaneSet { dbp, dbx }
}

/// Undo the XOR chain: given DBX planes, reconstruct the DBP planes.
pub fn dbp_from_dbx(dbx: &[u64]) -> Vec<u64> {
    let planes = dbx.len();
    let mut dbp = vec![0u64; planes];
    let mut prev = 0u64;
    for j in (0..planes).rev() {
        dbp[j] = dbx[j] ^ prev;
        prev = dbp[j];
    }
    dbp
}

/// Reconstruct the delta patterns from DBP planes (deltas only; the base is
/// carried separately).
pub fn deltas_from_dbp(dbp: &[u64], config: &CodecConfig) -> Vec<u64> {
    let d = config.deltas_per_block();
    let mut deltas = vec![0u64; d];
    for (j, &plane) in dbp.iter().enumerate() {
        for (i, delta) in deltas.iter_mut().enumerate() {
            *delta |= ((plane >> i) & 1) << j;
        }
    }
    deltas
}

/// Inverse of [`dbp_dbx_forward`] over the DBX view.
pub fn dbp_dbx_inverse(dbx: &[u64], base: Option<u64>, config: &CodecConfig) -> DeltaBlock {
    let dbp = dbp_from_dbx(dbx);
    DeltaBlock {
        base,
        deltas: deltas_from_dbp(&dbp, config),
    }
}
