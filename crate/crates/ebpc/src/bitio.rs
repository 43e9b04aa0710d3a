//! Bit-level reading and writing with a fixed MSB-first order.
//!
//! Every field is appended most-significant-bit first, and within each byte
//! earlier bits occupy more significant positions. The final partial byte is
//! zero-padded on finish; decoders terminate on word counts, never on stream
//! exhaustion.

use crate::error::{EbpcError, Result};

/// Accumulates bit fields into a growing byte buffer.
#[derive(Debug, Default, Clone)]
pub struct BitWriter {
    buffer: Vec<u8>,
    pending: u8,
    pending_bits: u8,
    bits_written: u64,
}

impl BitWriter {
    pub fn new() -> Self {
        Self::default()
    }

    /// Append the low `width` bits of `value`, MSB first.
    pub fn write_bits(&mut self, value: u64, width: u8) -> Result<()> {
        if width > 64 {
            return Err(EbpcError::Contract(format!("bit width {width} > 64")));
        }
        if width < 64 && value >> width != 0 {
            return Err(EbpcError::Contract(format!(
                "value {value:#x} does not fit in {width} bit(s)"
            )));
        }
        for i in (0..width).rev() {
            let bit = ((value >> i) & 1) as u8;
            self.pending = (self.pending << 1) | bit;
            self.pending_bits += 1;
            if self.pending_bits == 8 {
                self.buffer.push(self.pending);
                self.pending = 0;
                self.pending_bits = 0;
            }
        }
        self.bits_written += u64::from(width);
        Ok(())
    }

    pub fn bits_written(&self) -> u64 {
        self.bits_written
    }

    /// Zero-pad the last partial byte and return the buffer.
    pub fn finish(mut self) -> Vec<u8> {
        if self.pending_bits > 0 {
            self.buffer.push(self.pending << (8 - self.pending_bits));
        }
        self.buffer
    }
}

/// Reads bit fields from a byte slice, tracking the bit offset.
#[derive(Debug, Clone)]
pub struct BitReader<'a> {
    source: &'a [u8],
    cursor: u64,
}

impl<'a> BitReader<'a> {
    pub fn new(source: &'a [u8]) -> Self {
        Self { source, cursor: 0 }
    }

    /// Current position in bits from the start of the stream.
    pub fn bit_pos(&self) -> u64 {
        self.cursor
    }

    pub fn bits_remaining(&self) -> u64 {
        (self.source.len() as u64 * 8).saturating_sub(self.cursor)
    }

    /// Read `width` bits, MSB first. Reading past the end is an error.
    pub fn read_bits(&mut self, width: u8) -> Result<u64> {
        if width > 64 {
            return Err(EbpcError::Contract(format!("bit width {width} > 64")));
        }
        if u64::from(width) > self.bits_remaining() {
            return Err(EbpcError::TruncatedStream {
                bit_offset: self.cursor,
                needed: u64::from(width) - self.bits_remaining(),
            });
        }
        let mut value = 0u64;
        for _ in 0..width {
            let byte = self.source[(self.cursor / 8) as usize];
            let bit = (byte >> (7 - (self.cursor % 8))) & 1;
            value = (value << 1) | u64::from(bit);
            self.cursor += 1;
        }
        Ok(value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn msb_first_packing() {
        let mut w = BitWriter::new();
        w.write_bits(0b101, 3).unwrap();
        assert_eq!(w.finish(), vec![0xA0]);
    }

    #[test]
    fn zero_width_identity() {
        let mut w = BitWriter::new();
        w.write_bits(0, 0).unwrap();
        assert_eq!(w.bits_written(), 0);
        assert!(w.finish().is_empty());
    }

    #[test]
    fn concatenation_fills_byte() {
        let mut w = BitWriter::new();
        w.write_bits(0b001, 3).unwrap();
        w.write_bits(0b111, 3).unwrap();
        w.write_bits(0b11, 2).unwrap();
        assert_eq!(w.finish(), vec![0x3F]);
    }

    #[test]
    fn read_inverse_of_write() {
        let mut r = BitReader::new(&[0xA0]);
        assert_eq!(r.read_bits(3).unwrap(), 0b101);
    }

    #[test]
    fn read_zero_width() {
        let mut r = BitReader::new(&[0xFF]);
        assert_eq!(r.read_bits(0).unwrap(), 0);
        assert_eq!(r.bit_pos(), 0);
    }

    #[test]
    fn read_past_end_errors() {
        let mut r = BitReader::new(&[0xAB]);
        r.read_bits(8).unwrap();
        let err = r.read_bits(1).unwrap_err();
        match err {
            EbpcError::TruncatedStream { bit_offset, .. } => assert_eq!(bit_offset, 8),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn value_out_of_range_rejected() {
        let mut w = BitWriter::new();
        assert!(w.write_bits(0b100, 2).is_err());
        assert!(w.write_bits(0, 65).is_err());
    }

    proptest! {
        #[test]
        fn roundtrip_random_fields(fields in prop::collection::vec((any::<u64>(), 0u8..=64), 0..64)) {
            let mut w = BitWriter::new();
            let mut expected = Vec::new();
            for &(value, width) in &fields {
                let masked = if width == 64 { value } else { value & ((1u64 << width) - 1) };
                w.write_bits(masked, width).unwrap();
                expected.push((masked, width));
            }
            let total: u64 = fields.iter().map(|&(_, w)| u64::from(w)).sum();
            prop_assert_eq!(w.bits_written(), total);
            let bytes = w.finish();
            prop_assert_eq!(bytes.len() as u64, total.div_ceil(8));
            let mut r = BitReader::new(&bytes);
            for (value, width) in expected {
                prop_assert_eq!(r.read_bits(width).unwrap(), value);
            }
        }

        #[test]
        fn roundtrip_full_64(value in any::<u64>()) {
            let mut w = BitWriter::new();
            w.write_bits(value, 64).unwrap();
            let bytes = w.finish();
            let mut r = BitReader::new(&bytes);
            prop_assert_eq!(r.read_bits(64).unwrap(), value);
        }
    }
}
