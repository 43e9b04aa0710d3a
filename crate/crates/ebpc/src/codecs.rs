//! Complete stream codecs over word streams: Zero-RLE, ZVC, plain BPC, and
//! the combined EBPC scheme.
//!
//! Every codec produces an [`EncodedStreams`] pair: a zero-stream carrying
//! the zero/non-zero structure and a data-stream carrying the values. The two
//! streams are physically separate; the container concatenates them with
//! recorded lengths.

use crate::bitio::{BitReader, BitWriter};
use crate::config::{BaseMode, CodecConfig};
use crate::error::{EbpcError, Result};
use crate::symbol::{decode_plane_symbols, encode_planes, symbolize_planes, PlaneSymbol};
use crate::transform::{delta_forward, delta_inverse, dbp_dbx_forward, deltas_from_dbp, DeltaBlock};

/// Which codec encoded a stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Codec {
    Ebpc,
    Zvc,
    ZeroRle,
    Bpc,
}

impl Codec {
    pub const ALL: [Codec; 4] = [Codec::Ebpc, Codec::Zvc, Codec::ZeroRle, Codec::Bpc];

    pub fn name(&self) -> &'static str {
        match self {
            Codec::Ebpc => "ebpc",
            Codec::Zvc => "zvc",
            Codec::ZeroRle => "zero-rle",
            Codec::Bpc => "bpc",
        }
    }
}

impl std::str::FromStr for Codec {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "ebpc" => Ok(Codec::Ebpc),
            "zvc" => Ok(Codec::Zvc),
            "zero-rle" | "zero_rle" | "zrle" => Ok(Codec::ZeroRle),
            "bpc" => Ok(Codec::Bpc),
            other => Err(format!("unknown codec '{other}'")),
        }
    }
}

/// The encoded pair of streams plus the word counts the decoder relies on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncodedStreams {
    pub zero_stream: Vec<u8>,
    pub zero_bits: u64,
    pub data_stream: Vec<u8>,
    pub data_bits: u64,
    /// Total input words N.
    pub word_count: u64,
    /// Number of non-zero words.
    pub nonzero_count: u64,
}

impl EncodedStreams {
    /// Payload size in bits, headers excluded.
    pub fn compressed_bits(&self) -> u64 {
        self.zero_bits + self.data_bits
    }
}

/// Uncompressed bits / compressed payload bits. `None` when undefined (N = 0).
pub fn compression_ratio(streams: &EncodedStreams, config: &CodecConfig) -> Option<f64> {
    let bits = streams.compressed_bits();
    if streams.word_count == 0 || bits == 0 {
        return None;
    }
    Some((streams.word_count * u64::from(config.word_width)) as f64 / bits as f64)
}

/// Encode the zero/non-zero structure of `words`: each non-zero word emits a
/// '1' flag, each maximal zero burst of length b emits ceil(b / 2^k) symbols
/// of '0' followed by k bits holding (chunk length - 1).
pub fn zero_rle_encode(words: &[u64], config: &CodecConfig, writer: &mut BitWriter) -> Result<()> {
    let k = config.burst_len_bits;
    let max_burst = config.max_zero_burst();
    let mut run = 0u64;
    let flush = |run: &mut u64, w: &mut BitWriter| -> Result<()> {
        while *run > 0 {
            let chunk = (*run).min(max_burst);
            w.write_bits(0, 1)?;
            w.write_bits(chunk - 1, k)?;
            *run -= chunk;
        }
        Ok(())
    };
    for &word in words {
        if word == 0 {
            run += 1;
        } else {
            flush(&mut run, writer)?;
            writer.write_bits(1, 1)?;
        }
    }
    flush(&mut run, writer)
}

/// Decode exactly `word_count` zero/non-zero flags (true = non-zero).
pub fn zero_rle_decode(
    reader: &mut BitReader<'_>,
    word_count: u64,
    config: &CodecConfig,
) -> Result<Vec<bool>> {
    let k = config.burst_len_bits;
    // capacity is only a hint: word_count may come from a hostile header
    let mut flags = Vec::with_capacity(word_count.min(1 << 20) as usize);
    while (flags.len() as u64) < word_count {
        let offset = reader.bit_pos();
        if reader.read_bits(1)? == 1 {
            flags.push(true);
        } else {
            let chunk = reader.read_bits(k)? + 1;
            if flags.len() as u64 + chunk > word_count {
                return Err(EbpcError::MalformedStream {
                    bit_offset: offset,
                    reason: format!(
                        "zero burst of {chunk} exceeds the {} word(s) left",
                        word_count - flags.len() as u64
                    ),
                });
            }
            flags.extend(std::iter::repeat(false).take(chunk as usize));
        }
    }
    Ok(flags)
}

fn finish_streams(
    zero: BitWriter,
    data: BitWriter,
    word_count: u64,
    nonzero_count: u64,
) -> EncodedStreams {
    let zero_bits = zero.bits_written();
    let data_bits = data.bits_written();
    EncodedStreams {
        zero_stream: zero.finish(),
        zero_bits,
        data_stream: data.finish(),
        data_bits,
        word_count,
        nonzero_count,
    }
}

/// ZVC: one flag bit per word plus the raw non-zero words.
pub fn zvc_encode(words: &[u64], config: &CodecConfig) -> Result<EncodedStreams> {
    let mut zero = BitWriter::new();
    let mut data = BitWriter::new();
    let mut nonzero = 0u64;
    for &w in words {
        if w == 0 {
            zero.write_bits(0, 1)?;
        } else {
            zero.write_bits(1, 1)?;
            data.write_bits(w, config.word_width)?;
            nonzero += 1;
        }
    }
    Ok(finish_streams(zero, data, words.len() as u64, nonzero))
}

pub fn zvc_decode(streams: &EncodedStreams, config: &CodecConfig) -> Result<Vec<u64>> {
    let mut mask = BitReader::new(&streams.zero_stream);
    let mut data = BitReader::new(&streams.data_stream);
    // capacity is only a hint: word_count may come from a hostile header
    let mut words = Vec::with_capacity(streams.word_count.min(1 << 20) as usize);
    for _ in 0..streams.word_count {
        if mask.read_bits(1)? == 1 {
            words.push(data.read_bits(config.word_width)?);
        } else {
            words.push(0);
        }
    }
    Ok(words)
}

/// Zero-RLE codec: RLE flags plus the raw non-zero words.
pub fn zero_rle_codec_encode(words: &[u64], config: &CodecConfig) -> Result<EncodedStreams> {
    let mut zero = BitWriter::new();
    zero_rle_encode(words, config, &mut zero)?;
    let mut data = BitWriter::new();
    let mut nonzero = 0u64;
    for &w in words {
        if w != 0 {
            data.write_bits(w, config.word_width)?;
            nonzero += 1;
        }
    }
    Ok(finish_streams(zero, data, words.len() as u64, nonzero))
}

pub fn zero_rle_codec_decode(streams: &EncodedStreams, config: &CodecConfig) -> Result<Vec<u64>> {
    let mut flags_reader = BitReader::new(&streams.zero_stream);
    let flags = zero_rle_decode(&mut flags_reader, streams.word_count, config)?;
    let mut data = BitReader::new(&streams.data_stream);
    flags
        .iter()
        .map(|&nz| {
            if nz {
                data.read_bits(config.word_width)
            } else {
                Ok(0)
            }
        })
        .collect()
}

/// Encode `words` (all of them, zeros included) as BPC blocks onto `writer`.
/// The tail block is padded by repeating the final word.
fn bpc_encode_words(words: &[u64], config: &CodecConfig, writer: &mut BitWriter) -> Result<()> {
    if words.is_empty() {
        return Ok(());
    }
    let n = config.block_size;
    let mut prev = 0u64; // implicit-mode carry, initialized to zero
    let mut block = Vec::with_capacity(n);
    for chunk in words.chunks(n) {
        block.clear();
        block.extend_from_slice(chunk);
        while block.len() < n {
            block.push(*block.last().unwrap()); // pad: all-zero deltas
        }
        let delta_block = delta_forward(&block, prev, config);
        if let Some(base) = delta_block.base {
            writer.write_bits(base, config.word_width)?;
        }
        let planes = dbp_dbx_forward(&delta_block, config);
        encode_planes(&planes, writer, config)?;
        prev = *block.last().unwrap();
    }
    Ok(())
}

/// Decode `word_count` words from a BPC bit-stream (pad words discarded).
fn bpc_decode_words(
    reader: &mut BitReader<'_>,
    word_count: u64,
    config: &CodecConfig,
) -> Result<Vec<u64>> {
    let n = config.block_size as u64;
    // capacity is only a hint: word_count may come from a hostile header
    let mut words = Vec::with_capacity(word_count.min(1 << 20) as usize);
    let mut prev = 0u64;
    while (words.len() as u64) < word_count {
        let base = match config.base_mode {
            BaseMode::Explicit => Some(reader.read_bits(config.word_width)?),
            BaseMode::Implicit => None,
        };
        let dbp = decode_plane_symbols(reader, config)?;
        let block = DeltaBlock {
            base,
            deltas: deltas_from_dbp(&dbp, config),
        };
        let decoded = delta_inverse(&block, prev, config);
        prev = *decoded.last().unwrap();
        let take = ((word_count - words.len() as u64).min(n)) as usize;
        words.extend_from_slice(&decoded[..take]);
    }
    Ok(words)
}

/// Plain BPC over the whole stream, zeros included. The zero-stream is empty.
pub fn bpc_encode_stream(words: &[u64], config: &CodecConfig) -> Result<EncodedStreams> {
    let mut data = BitWriter::new();
    bpc_encode_words(words, config, &mut data)?;
    let nonzero = words.iter().filter(|&&w| w != 0).count() as u64;
    Ok(finish_streams(
        BitWriter::new(),
        data,
        words.len() as u64,
        nonzero,
    ))
}

pub fn bpc_decode_stream(streams: &EncodedStreams, config: &CodecConfig) -> Result<Vec<u64>> {
    let mut reader = BitReader::new(&streams.data_stream);
    bpc_decode_words(&mut reader, streams.word_count, config)
}

/// EBPC: Zero-RLE on the flag stream, BPC on the non-zero subsequence.
pub fn ebpc_encode(words: &[u64], config: &CodecConfig) -> Result<EncodedStreams> {
    let mut zero = BitWriter::new();
    zero_rle_encode(words, config, &mut zero)?;
    let nonzeros: Vec<u64> = words.iter().copied().filter(|&w| w != 0).collect();
    let mut data = BitWriter::new();
    bpc_encode_words(&nonzeros, config, &mut data)?;
    Ok(finish_streams(
        zero,
        data,
        words.len() as u64,
        nonzeros.len() as u64,
    ))
}

pub fn ebpc_decode(streams: &EncodedStreams, config: &CodecConfig) -> Result<Vec<u64>> {
    let mut flags_reader = BitReader::new(&streams.zero_stream);
    let flags = zero_rle_decode(&mut flags_reader, streams.word_count, config)?;
    let nonzero_count = flags.iter().filter(|&&f| f).count() as u64;
    let mut data_reader = BitReader::new(&streams.data_stream);
    let nonzeros = bpc_decode_words(&mut data_reader, nonzero_count, config)?;
    let mut it = nonzeros.into_iter();
    let words = flags
        .iter()
        .map(|&nz| if nz { it.next().unwrap() } else { 0 })
        .collect();
    Ok(words)
}

/// Encode with the selected codec.
pub fn encode(codec: Codec, words: &[u64], config: &CodecConfig) -> Result<EncodedStreams> {
    match codec {
        Codec::Ebpc => ebpc_encode(words, config),
        Codec::Zvc => zvc_encode(words, config),
        Codec::ZeroRle => zero_rle_codec_encode(words, config),
        Codec::Bpc => bpc_encode_stream(words, config),
    }
}

/// Decode with the selected codec.
pub fn decode(codec: Codec, streams: &EncodedStreams, config: &CodecConfig) -> Result<Vec<u64>> {
    match codec {
        Codec::Ebpc => ebpc_decode(streams, config),
        Codec::Zvc => zvc_decode(streams, config),
        Codec::ZeroRle => zero_rle_codec_decode(streams, config),
        Codec::Bpc => bpc_decode_stream(streams, config),
    }
}

/// Per-symbol tallies gathered while running the EBPC non-zero path.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SymbolCounts {
    pub multi_all_zero_dbx: u64,
    pub all_zero_dbx: u64,
    pub all_one_dbx: u64,
    pub all_zero_dbp: u64,
    pub two_consec_ones: u64,
    pub single_one: u64,
    pub uncompressed: u64,
    pub block_count: u64,
    /// Total planes covered, counting a run symbol as its run length.
    pub plane_coverage: u64,
}

impl SymbolCounts {
    pub fn total_symbols(&self) -> u64 {
        self.multi_all_zero_dbx
            + self.all_zero_dbx
            + self.all_one_dbx
            + self.all_zero_dbp
            + self.two_consec_ones
            + self.single_one
            + self.uncompressed
    }

    fn record(&mut self, sym: &PlaneSymbol) {
        self.plane_coverage += sym.plane_coverage() as u64;
        match sym {
            PlaneSymbol::MultiAllZeroDbx { .. } => self.multi_all_zero_dbx += 1,
            PlaneSymbol::AllZeroDbx => self.all_zero_dbx += 1,
            PlaneSymbol::AllOneDbx => self.all_one_dbx += 1,
            PlaneSymbol::AllZeroDbp => self.all_zero_dbp += 1,
            PlaneSymbol::TwoConsecOnes { .. } => self.two_consec_ones += 1,
            PlaneSymbol::SingleOne { .. } => self.single_one += 1,
            PlaneSymbol::Uncompressed { .. } => self.uncompressed += 1,
        }
    }
}

/// Tally the plane symbols EBPC would emit for `words` (non-zero path only).
pub fn tally_symbols(words: &[u64], config: &CodecConfig) -> SymbolCounts {
    let nonzeros: Vec<u64> = words.iter().copied().filter(|&w| w != 0).collect();
    let n = config.block_size;
    let mut counts = SymbolCounts::default();
    if nonzeros.is_empty() {
        return counts;
    }
    let mut prev = 0u64;
    let mut block = Vec::with_capacity(n);
    for chunk in nonzeros.chunks(n) {
        block.clear();
        block.extend_from_slice(chunk);
        while block.len() < n {
            block.push(*block.last().unwrap());
        }
        let delta_block = delta_forward(&block, prev, config);
        let planes = dbp_dbx_forward(&delta_block, config);
        for sym in symbolize_planes(&planes, config) {
            counts.record(&sym);
        }
        counts.block_count += 1;
        prev = *block.last().unwrap();
    }
    counts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::DtypeMode;
    use proptest::prelude::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn bits_of(bytes: &[u8], n: u64) -> String {
        (0..n)
            .map(|i| {
                let b = (bytes[(i / 8) as usize] >> (7 - i % 8)) & 1;
                char::from(b'0' + b)
            })
            .collect()
    }

    #[test]
    fn zero_rle_burst_then_nonzero() {
        let c = CodecConfig::default_u8(); // k = 4
        let mut w = BitWriter::new();
        zero_rle_encode(&[0, 0, 0, 9], &c, &mut w).unwrap();
        let n = w.bits_written();
        assert_eq!(bits_of(&w.finish(), n), "000101");
    }

    #[test]
    fn zero_rle_splits_long_bursts() {
        let c = CodecConfig::default_u8();
        let mut w = BitWriter::new();
        zero_rle_encode(&[0u64; 20], &c, &mut w).unwrap();
        let n = w.bits_written();
        assert_eq!(n, 10);
        assert_eq!(bits_of(&w.finish(), n), "0111100011");
    }

    #[test]
    fn zero_rle_all_nonzero() {
        let c = CodecConfig::default_u8();
        let mut w = BitWriter::new();
        zero_rle_encode(&[1u64; 12], &c, &mut w).unwrap();
        let n = w.bits_written();
        assert_eq!(bits_of(&w.finish(), n), "1".repeat(12));
    }

    #[test]
    fn zero_rle_decode_inverse() {
        let c = CodecConfig::default_u8();
        let mut w = BitWriter::new();
        w.write_bits(0b01111, 5).unwrap();
        w.write_bits(0b00011, 5).unwrap();
        let bytes = w.finish();
        let mut r = BitReader::new(&bytes);
        let flags = zero_rle_decode(&mut r, 20, &c).unwrap();
        assert_eq!(flags, vec![false; 20]);
    }

    #[test]
    fn zero_rle_decode_overshoot_is_malformed() {
        let c = CodecConfig::default_u8();
        let mut w = BitWriter::new();
        w.write_bits(0b01111, 5).unwrap(); // burst of 16 but only 10 words
        let bytes = w.finish();
        let mut r = BitReader::new(&bytes);
        match zero_rle_decode(&mut r, 10, &c) {
            Err(EbpcError::MalformedStream { bit_offset, .. }) => assert_eq!(bit_offset, 0),
            other => panic!("expected malformed, got {other:?}"),
        }
    }

    #[test]
    fn zero_rle_truncated() {
        let c = CodecConfig::default_u8();
        let mut r = BitReader::new(&[]);
        assert!(matches!(
            zero_rle_decode(&mut r, 4, &c),
            Err(EbpcError::TruncatedStream { .. })
        ));
    }

    #[test]
    fn zvc_example() {
        let c = CodecConfig::default_u8();
        let s = zvc_encode(&[0, 3, 0, 0], &c).unwrap();
        assert_eq!(s.zero_bits, 4);
        assert_eq!(s.data_bits, 8);
        assert_eq!(bits_of(&s.zero_stream, 4), "0100");
        assert_eq!(bits_of(&s.data_stream, 8), "00000011");
        assert_eq!(s.compressed_bits(), 12);
    }

    #[test]
    fn zvc_ratio_arithmetic() {
        let c = CodecConfig::default_u8();
        let mut words = vec![0u64; 16];
        words.extend(std::iter::repeat(5).take(16));
        let s = zvc_encode(&words, &c).unwrap();
        assert_eq!(s.compressed_bits(), 32 + 16 * 8);
        assert_eq!(compression_ratio(&s, &c), Some(1.6));
    }

    #[test]
    fn zvc_all_zero() {
        let c = CodecConfig::default_u8();
        let s = zvc_encode(&[0u64; 64], &c).unwrap();
        assert_eq!(s.zero_bits, 64);
        assert_eq!(s.data_bits, 0);
    }

    #[test]
    fn bpc_constant_block_14_bits() {
        let c = CodecConfig::default_u8();
        let s = bpc_encode_stream(&[7u64; 8], &c).unwrap();
        assert_eq!(s.data_bits, 14);
        assert_eq!(bits_of(&s.data_stream, 14), "00000111001111");
    }

    #[test]
    fn bpc_implicit_all_zero_block_6_bits() {
        let c = CodecConfig::new(8, 8, 4, DtypeMode::FixedPoint, BaseMode::Implicit).unwrap();
        let s = bpc_encode_stream(&[0u64; 8], &c).unwrap();
        assert_eq!(s.data_bits, 6);
        assert_eq!(bits_of(&s.data_stream, 6), "001111");
    }

    #[test]
    fn ebpc_all_zero_16_words() {
        let c = CodecConfig::default_u8();
        let s = ebpc_encode(&[0u64; 16], &c).unwrap();
        assert_eq!(s.zero_bits, 5);
        assert_eq!(s.data_bits, 0);
        assert_eq!(compression_ratio(&s, &c), Some(25.6));
    }

    #[test]
    fn ebpc_constant_nonzero_22_bits_per_block() {
        let c = CodecConfig::default_u8();
        let s = ebpc_encode(&[7u64; 8], &c).unwrap();
        assert_eq!(s.zero_bits, 8);
        assert_eq!(s.data_bits, 14);
        let ratio = compression_ratio(&s, &c).unwrap();
        assert!((ratio - 64.0 / 22.0).abs() < 1e-12);
    }

    #[test]
    fn ebpc_empty_input() {
        let c = CodecConfig::default_u8();
        let s = ebpc_encode(&[], &c).unwrap();
        assert_eq!(s.compressed_bits(), 0);
        assert_eq!(compression_ratio(&s, &c), None);
        assert_eq!(ebpc_decode(&s, &c).unwrap(), Vec::<u64>::new());
    }

    #[test]
    fn ebpc_roundtrip_mixed() {
        let c = CodecConfig::default_u8();
        let words = vec![0, 0, 0, 5, 7, 4, 4, 0, 9, 200, 0, 0, 1, 2, 3, 4, 5, 6, 7, 8];
        let s = ebpc_encode(&words, &c).unwrap();
        assert_eq!(ebpc_decode(&s, &c).unwrap(), words);
    }

    #[test]
    fn determinism() {
        let c = CodecConfig::default_u8();
        let mut rng = StdRng::seed_from_u64(7);
        let words: Vec<u64> = (0..500)
            .map(|_| if rng.gen_bool(0.6) { 0 } else { rng.gen_range(1..256) })
            .collect();
        for codec in Codec::ALL {
            let a = encode(codec, &words, &c).unwrap();
            let b = encode(codec, &words, &c).unwrap();
            assert_eq!(a, b, "{}", codec.name());
        }
    }

    #[test]
    fn large_random_sparse_roundtrip() {
        let c = CodecConfig::default_u8();
        let mut rng = StdRng::seed_from_u64(42);
        let words: Vec<u64> = (0..1_000_000)
            .map(|_| if rng.gen_bool(0.7) { 0 } else { rng.gen_range(1..256) })
            .collect();
        let s = ebpc_encode(&words, &c).unwrap();
        assert_eq!(ebpc_decode(&s, &c).unwrap(), words);
    }

    #[test]
    fn flag_conservation() {
        let c = CodecConfig::default_u8();
        let words = vec![0, 1, 0, 2, 3, 0, 0, 0, 4];
        let s = ebpc_encode(&words, &c).unwrap();
        assert_eq!(s.nonzero_count, 4);
        let mut r = BitReader::new(&s.zero_stream);
        let flags = zero_rle_decode(&mut r, s.word_count, &c).unwrap();
        assert_eq!(flags.iter().filter(|&&f| f).count() as u64, s.nonzero_count);
    }

    #[test]
    fn zvc_never_worse_than_k1_zero_rle() {
        // ZVC dominance at the shortest max burst length
        let c1 = CodecConfig::new(8, 8, 1, DtypeMode::FixedPoint, BaseMode::Explicit).unwrap();
        let mut rng = StdRng::seed_from_u64(99);
        for _ in 0..200 {
            let len = rng.gen_range(0..200);
            let words: Vec<u64> = (0..len)
                .map(|_| if rng.gen_bool(0.5) { 0 } else { rng.gen_range(1..256) })
                .collect();
            let zvc = zvc_encode(&words, &c1).unwrap();
            let rle = zero_rle_codec_encode(&words, &c1).unwrap();
            assert!(zvc.compressed_bits() <= rle.compressed_bits());
        }
    }

    #[test]
    fn tally_constant_stream_only_runs() {
        let c = CodecConfig::default_u8();
        let counts = tally_symbols(&[9u64; 64], &c);
        assert_eq!(counts.block_count, 8);
        assert_eq!(counts.multi_all_zero_dbx, 8);
        assert_eq!(counts.total_symbols(), 8);
        assert_eq!(counts.plane_coverage, 8 * 9);
    }

    proptest! {
        #[test]
        fn all_codecs_roundtrip(
            words in prop::collection::vec(
                prop_oneof![3 => Just(0u64), 2 => 1u64..256],
                0..300
            )
        ) {
            let c = CodecConfig::default_u8();
            for codec in Codec::ALL {
                let s = encode(codec, &words, &c).unwrap();
                prop_assert_eq!(decode(codec, &s, &c).unwrap(), words.clone(), "{}", codec.name());
            }
        }

        #[test]
        fn ebpc_roundtrip_implicit_16(
            words in prop::collection::vec(
                prop_oneof![1 => Just(0u64), 1 => 1u64..65536],
                0..200
            )
        ) {
            let c = CodecConfig::new(16, 8, 3, DtypeMode::FixedPoint, BaseMode::Implicit).unwrap();
            let s = ebpc_encode(&words, &c).unwrap();
            prop_assert_eq!(ebpc_decode(&s, &c).unwrap(), words);
        }

        #[test]
        fn rle_flag_roundtrip(words in prop::collection::vec(prop_oneof![Just(0u64), Just(1u64)], 0..400), k in 1u8..=6) {
            let c = CodecConfig::new(8, 8, k, DtypeMode::FixedPoint, BaseMode::Explicit).unwrap();
            let mut w = BitWriter::new();
            zero_rle_encode(&words, &c, &mut w).unwrap();
            let bytes = w.finish();
            let mut r = BitReader::new(&bytes);
            let flags = zero_rle_decode(&mut r, words.len() as u64, &c).unwrap();
            let expect: Vec<bool> = words.iter().map(|&w| w != 0).collect();
            prop_assert_eq!(flags, expect);
        }
    }
}
