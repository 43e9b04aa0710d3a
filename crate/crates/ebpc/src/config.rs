//! Codec configuration and the field widths derived from it.

use crate::error::{EbpcError, Result};

/// How the word payload is interpreted by the delta stage.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DtypeMode {
    /// Integer words; deltas are exact (m+1)-bit two's-complement differences.
    FixedPoint,
    /// 16-bit float patterns reinterpreted as unsigned integers and run
    /// through the fixed-point path. Lossless.
    FloatBitwise,
    /// True IEEE binary16 subtraction, m planes. Not bit-exact.
    FloatArithmetic,
}

/// Where the block base comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BaseMode {
    /// First word of each block is transmitted raw; deltas cover the rest.
    Explicit,
    /// Base is the last word of the previous block (zero for the first);
    /// deltas cover all n words.
    Implicit,
}

/// Parameters that govern every bit of the encoded format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CodecConfig {
    /// Bits per input word (8, 16, or 32).
    pub word_width: u8,
    /// Words per bit-plane block (2..=64).
    pub block_size: usize,
    /// Width of the zero-run length field (1..=7).
    pub burst_len_bits: u8,
    pub dtype_mode: DtypeMode,
    pub base_mode: BaseMode,
}

/// Bits needed to address values 0..x-1 (0 for x <= 1).
pub(crate) fn ceil_log2(x: u64) -> u8 {
    if x <= 1 {
        0
    } else {
        64 - (x - 1).leading_zeros() as u8
    }
}

impl CodecConfig {
    pub fn new(
        word_width: u8,
        block_size: usize,
        burst_len_bits: u8,
        dtype_mode: DtypeMode,
        base_mode: BaseMode,
    ) -> Result<Self> {
        if !matches!(word_width, 8 | 16 | 32) {
            return Err(EbpcError::InvalidConfig(format!(
                "word width must be 8, 16, or 32 (got {word_width})"
            )));
        }
        if !matches!(dtype_mode, DtypeMode::FixedPoint) && word_width != 16 {
            return Err(EbpcError::InvalidConfig(
                "float modes require a 16-bit word width".into(),
            ));
        }
        if !(2..=64).contains(&block_size) {
            return Err(EbpcError::InvalidConfig(format!(
                "block size must be in 2..=64 (got {block_size})"
            )));
        }
        if !(1..=7).contains(&burst_len_bits) {
            return Err(EbpcError::InvalidConfig(format!(
                "burst length field width must be in 1..=7 (got {burst_len_bits})"
            )));
        }
        Ok(Self {
            word_width,
            block_size,
            burst_len_bits,
            dtype_mode,
            base_mode,
        })
    }

    /// Default parameters: 8-bit fixed-point, block size 8, k = 4, explicit base.
    pub fn default_u8() -> Self {
        Self::new(8, 8, 4, DtypeMode::FixedPoint, BaseMode::Explicit).unwrap()
    }

    /// Deltas per block: n-1 with an in-block base, n when the base is carried.
    pub fn deltas_per_block(&self) -> usize {
        match self.base_mode {
            BaseMode::Explicit => self.block_size - 1,
            BaseMode::Implicit => self.block_size,
        }
    }

    /// Bit-planes per block: m+1 for integer-pattern deltas, m for float deltas.
    pub fn plane_count(&self) -> usize {
        match self.dtype_mode {
            DtypeMode::FixedPoint | DtypeMode::FloatBitwise => self.word_width as usize + 1,
            DtypeMode::FloatArithmetic => self.word_width as usize,
        }
    }

    /// Bits per delta pattern (equals the plane count).
    pub fn delta_width(&self) -> u8 {
        self.plane_count() as u8
    }

    /// Width of the zero-plane run-length field: ceil(log2 m).
    pub fn run_len_field_bits(&self) -> u8 {
        ceil_log2(u64::from(self.word_width))
    }

    /// Maximum run of all-zero DBX planes a single symbol can encode.
    pub fn max_zero_plane_run(&self) -> usize {
        let by_field = (1usize << self.run_len_field_bits()) + 1;
        by_field.min(self.plane_count())
    }

    /// Width of the single-1 position field: ceil(log2 d).
    pub fn single_one_pos_bits(&self) -> u8 {
        ceil_log2(self.deltas_per_block() as u64)
    }

    /// Width of the 2-consecutive-1s position field: ceil(log2(d-1)).
    pub fn two_consec_pos_bits(&self) -> u8 {
        ceil_log2(self.deltas_per_block() as u64 - 1)
    }

    /// Mask covering one m-bit word.
    pub fn word_mask(&self) -> u64 {
        if self.word_width == 64 {
            u64::MAX
        } else {
            (1u64 << self.word_width) - 1
        }
    }

    /// Mask covering one delta pattern.
    pub fn delta_mask(&self) -> u64 {
        (1u64 << self.delta_width()) - 1
    }

    /// Maximum zero-burst length one RLE symbol covers: 2^k.
    pub fn max_zero_burst(&self) -> u64 {
        1u64 << self.burst_len_bits
    }
}
