//! Bit-exact file formats for compressed streams and raw tensors, plus 4-D
//! layout permutation for ingestion.
//!
//! All multi-byte header integers are little-endian; the two payload streams
//! are opaque byte blobs whose bit order is defined by `bitio`.

use crate::codecs::{Codec, EncodedStreams};
use crate::config::{BaseMode, CodecConfig, DtypeMode};
use crate::error::{EbpcError, Result};

pub const EBPC_MAGIC: [u8; 4] = *b"EBPC";
pub const TENSOR_MAGIC: [u8; 4] = *b"TNSR";
pub const FORMAT_VERSION: u8 = 1;
pub const EBPC_HEADER_LEN: usize = 32;
pub const TENSOR_HEADER_LEN: usize = 24;

/// Storage data type of a word stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dtype {
    U8,
    S8,
    U16,
    S16,
    U32,
    S32,
    F16Bitwise,
    F16Arithmetic,
}

impl Dtype {
    pub fn code(&self) -> u8 {
        match self {
            Dtype::U8 => 0,
            Dtype::S8 => 1,
            Dtype::U16 => 2,
            Dtype::S16 => 3,
            Dtype::U32 => 4,
            Dtype::S32 => 5,
            Dtype::F16Bitwise => 6,
            Dtype::F16Arithmetic => 7,
        }
    }

    pub fn from_code(code: u8) -> Result<Self> {
        Ok(match code {
            0 => Dtype::U8,
            1 => Dtype::S8,
            2 => Dtype::U16,
            3 => Dtype::S16,
            4 => Dtype::U32,
            5 => Dtype::S32,
            6 => Dtype::F16Bitwise,
            7 => Dtype::F16Arithmetic,
            other => return Err(EbpcError::UnknownDtype(other)),
        })
    }

    pub fn word_width(&self) -> u8 {
        match self {
            Dtype::U8 | Dtype::S8 => 8,
            Dtype::U16 | Dtype::S16 | Dtype::F16Bitwise | Dtype::F16Arithmetic => 16,
            Dtype::U32 | Dtype::S32 => 32,
        }
    }

    pub fn mode(&self) -> DtypeMode {
        match self {
            Dtype::F16Bitwise => DtypeMode::FloatBitwise,
            Dtype::F16Arithmetic => DtypeMode::FloatArithmetic,
            _ => DtypeMode::FixedPoint,
        }
    }

    pub fn bytes_per_word(&self) -> usize {
        self.word_width() as usize / 8
    }

    pub fn name(&self) -> &'static str {
        match self {
            Dtype::U8 => "u8",
            Dtype::S8 => "s8",
            Dtype::U16 => "u16",
            Dtype::S16 => "s16",
            Dtype::U32 => "u32",
            Dtype::S32 => "s32",
            Dtype::F16Bitwise => "f16",
            Dtype::F16Arithmetic => "f16-arith",
        }
    }
}

impl std::str::FromStr for Dtype {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "u8" => Ok(Dtype::U8),
            "s8" | "i8" => Ok(Dtype::S8),
            "u16" => Ok(Dtype::U16),
            "s16" | "i16" => Ok(Dtype::S16),
            "u32" => Ok(Dtype::U32),
            "s32" | "i32" => Ok(Dtype::S32),
            "f16" | "f16-bitwise" => Ok(Dtype::F16Bitwise),
            "f16-arith" | "f16-arithmetic" => Ok(Dtype::F16Arithmetic),
            other => Err(format!("unknown dtype '{other}'")),
        }
    }
}

/// Memory ordering of a rank-4 tensor with logical dims (N, C, H, W).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Layout {
    Nchw,
    Nhwc,
    Chwn,
    Hwcn,
}

impl Layout {
    pub const ALL: [Layout; 4] = [Layout::Nchw, Layout::Nhwc, Layout::Chwn, Layout::Hwcn];

    pub fn code(&self) -> u8 {
        match self {
            Layout::Nchw => 0,
            Layout::Nhwc => 1,
            Layout::Chwn => 2,
            Layout::Hwcn => 3,
        }
    }

    pub fn from_code(code: u8) -> Result<Self> {
        Ok(match code {
            0 => Layout::Nchw,
            1 => Layout::Nhwc,
            2 => Layout::Chwn,
            3 => Layout::Hwcn,
            other => return Err(EbpcError::UnknownLayout(other)),
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Layout::Nchw => "nchw",
            Layout::Nhwc => "nhwc",
            Layout::Chwn => "chwn",
            Layout::Hwcn => "hwcn",
        }
    }

    /// Axis order, slowest first, as indices into the logical (N,C,H,W) tuple.
    fn axes(&self) -> [usize; 4] {
        match self {
            Layout::Nchw => [0, 1, 2, 3],
            Layout::Nhwc => [0, 2, 3, 1],
            Layout::Chwn => [1, 2, 3, 0],
            Layout::Hwcn => [2, 3, 1, 0],
        }
    }

    /// Memory offset of logical index (n,c,h,w) within dims (N,C,H,W).
    pub fn offset(&self, idx: [usize; 4], dims: [usize; 4]) -> usize {
        let axes = self.axes();
        let mut off = 0;
        for &a in &axes {
            off = off * dims[a] + idx[a];
        }
        off
    }
}

impl std::str::FromStr for Layout {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "nchw" => Ok(Layout::Nchw),
            "nhwc" => Ok(Layout::Nhwc),
            "chwn" => Ok(Layout::Chwn),
            "hwcn" => Ok(Layout::Hwcn),
            other => Err(format!("unknown layout '{other}'")),
        }
    }
}

/// A rank-4 word tensor with logical dims (N,C,H,W) and a memory layout tag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorFile {
    pub dtype: Dtype,
    pub layout: Layout,
    /// Logical dims (N, C, H, W), independent of layout.
    pub dims: [u32; 4],
    /// Words in the declared memory layout.
    pub payload: Vec<u64>,
}

impl TensorFile {
    pub fn word_count(&self) -> u64 {
        self.dims.iter().map(|&d| u64::from(d)).product()
    }

    /// The words in declared memory order, unmodified.
    pub fn flatten_for_compression(&self) -> &[u64] {
        &self.payload
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let bpw = self.dtype.bytes_per_word();
        let mut out = Vec::with_capacity(TENSOR_HEADER_LEN + self.payload.len() * bpw);
        out.extend_from_slice(&TENSOR_MAGIC);
        out.push(FORMAT_VERSION);
        out.push(self.dtype.code());
        out.push(self.layout.code());
        out.push(4); // rank
        for &d in &self.dims {
            out.extend_from_slice(&d.to_le_bytes());
        }
        for &w in &self.payload {
            out.extend_from_slice(&w.to_le_bytes()[..bpw]);
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        if bytes.len() < TENSOR_HEADER_LEN {
            return Err(EbpcError::LengthMismatch {
                expected: TENSOR_HEADER_LEN as u64,
                actual: bytes.len() as u64,
            });
        }
        let magic: [u8; 4] = bytes[0..4].try_into().unwrap();
        if magic != TENSOR_MAGIC {
            return Err(EbpcError::BadMagic {
                expected: TENSOR_MAGIC,
                found: magic,
            });
        }
        if bytes[4] != FORMAT_VERSION {
            return Err(EbpcError::UnsupportedVersion(bytes[4]));
        }
        let dtype = Dtype::from_code(bytes[5])?;
        if matches!(dtype, Dtype::F16Arithmetic) {
            // tensors store patterns; codes 0-6 only
            return Err(EbpcError::UnknownDtype(bytes[5]));
        }
        let layout = Layout::from_code(bytes[6])?;
        if bytes[7] != 4 {
            return Err(EbpcError::MalformedStream {
                bit_offset: 7 * 8,
                reason: format!("rank must be 4 (got {})", bytes[7]),
            });
        }
        let mut dims = [0u32; 4];
        for (i, d) in dims.iter_mut().enumerate() {
            *d = u32::from_le_bytes(bytes[8 + 4 * i..12 + 4 * i].try_into().unwrap());
        }
        let count: u64 = dims.iter().map(|&d| u64::from(d)).product();
        let bpw = dtype.bytes_per_word();
        let expected = TENSOR_HEADER_LEN as u64 + count * bpw as u64;
        if bytes.len() as u64 != expected {
            return Err(EbpcError::LengthMismatch {
                expected,
                actual: bytes.len() as u64,
            });
        }
        let mut payload = Vec::with_capacity(count as usize);
        let mut off = TENSOR_HEADER_LEN;
        for _ in 0..count {
            let mut buf = [0u8; 8];
            buf[..bpw].copy_from_slice(&bytes[off..off + bpw]);
            payload.push(u64::from_le_bytes(buf));
            off += bpw;
        }
        Ok(Self {
            dtype,
            layout,
            dims,
            payload,
        })
    }

    pub fn write_to(&self, path: &std::path::Path) -> Result<()> {
        Ok(std::fs::write(path, self.to_bytes())?)
    }

    pub fn read_from(path: &std::path::Path) -> Result<Self> {
        Self::from_bytes(&std::fs::read(path)?)
    }
}

/// Reorder the payload so memory order follows `target`; logical values are
/// unchanged.
pub fn permute_layout(tensor: &TensorFile, target: Layout) -> TensorFile {
    let dims = [
        tensor.dims[0] as usize,
        tensor.dims[1] as usize,
        tensor.dims[2] as usize,
        tensor.dims[3] as usize,
    ];
    let mut payload = vec![0u64; tensor.payload.len()];
    for n in 0..dims[0] {
        for c in 0..dims[1] {
            for h in 0..dims[2] {
                for w in 0..dims[3] {
                    let idx = [n, c, h, w];
                    let src = tensor.layout.offset(idx, dims);
                    let dst = target.offset(idx, dims);
                    payload[dst] = tensor.payload[src];
                }
            }
        }
    }
    TensorFile {
        dtype: tensor.dtype,
        layout: target,
        dims: tensor.dims,
        payload,
    }
}

/// Everything needed to reconstruct a compressed stream from its file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EbpcFileMeta {
    pub dtype: Dtype,
    pub config: CodecConfig,
    pub codec: Codec,
}

fn codec_to_bits(codec: Codec) -> u8 {
    match codec {
        Codec::Ebpc => 0,
        Codec::Zvc => 1,
        Codec::ZeroRle => 2,
        Codec::Bpc => 3,
    }
}

fn codec_from_bits(bits: u8) -> Codec {
    match bits {
        1 => Codec::Zvc,
        2 => Codec::ZeroRle,
        3 => Codec::Bpc,
        _ => Codec::Ebpc,
    }
}

/// Serialize streams into the EBPC container: a 32-byte header followed by
/// the zero-stream bytes, then the data-stream bytes.
///
/// Flags byte: bit 0 = base mode (0 explicit, 1 implicit), bits 1-3 = burst
/// length field width k, bits 4-5 = codec (0 ebpc, 1 zvc, 2 zero-rle, 3 bpc).
pub fn write_ebpc(
    streams: &EncodedStreams,
    config: &CodecConfig,
    dtype: Dtype,
    codec: Codec,
) -> Result<Vec<u8>> {
    if dtype.word_width() != config.word_width || dtype.mode() != config.dtype_mode {
        return Err(EbpcError::InvalidConfig(format!(
            "dtype {} is inconsistent with the codec config",
            dtype.name()
        )));
    }
    let mut out = Vec::with_capacity(
        EBPC_HEADER_LEN + streams.zero_stream.len() + streams.data_stream.len(),
    );
    out.extend_from_slice(&EBPC_MAGIC);
    out.push(FORMAT_VERSION);
    out.push(dtype.code());
    out.push(config.block_size as u8);
    let base_bit = match config.base_mode {
        BaseMode::Explicit => 0,
        BaseMode::Implicit => 1,
    };
    out.push(base_bit | (config.burst_len_bits << 1) | (codec_to_bits(codec) << 4));
    out.extend_from_slice(&streams.word_count.to_le_bytes());
    out.extend_from_slice(&(streams.zero_stream.len() as u64).to_le_bytes());
    out.extend_from_slice(&(streams.data_stream.len() as u64).to_le_bytes());
    out.extend_from_slice(&streams.zero_stream);
    out.extend_from_slice(&streams.data_stream);
    Ok(out)
}

/// Parse and validate an EBPC container.
pub fn read_ebpc(bytes: &[u8]) -> Result<(EncodedStreams, EbpcFileMeta)> {
    if bytes.len() < EBPC_HEADER_LEN {
        return Err(EbpcError::LengthMismatch {
            expected: EBPC_HEADER_LEN as u64,
            actual: bytes.len() as u64,
        });
    }
    let magic: [u8; 4] = bytes[0..4].try_into().unwrap();
    if magic != EBPC_MAGIC {
        return Err(EbpcError::BadMagic {
            expected: EBPC_MAGIC,
            found: magic,
        });
    }
    if bytes[4] != FORMAT_VERSION {
        return Err(EbpcError::UnsupportedVersion(bytes[4]));
    }
    let dtype = Dtype::from_code(bytes[5])?;
    let block_size = bytes[6] as usize;
    let flags = bytes[7];
    let base_mode = if flags & 1 == 0 {
        BaseMode::Explicit
    } else {
        BaseMode::Implicit
    };
    let burst_len_bits = (flags >> 1) & 0b111;
    let codec = codec_from_bits((flags >> 4) & 0b11);
    let config = CodecConfig::new(
        dtype.word_width(),
        block_size,
        burst_len_bits,
        dtype.mode(),
        base_mode,
    )?;
    let word_count = u64::from_le_bytes(bytes[8..16].try_into().unwrap());
    let zero_len = u64::from_le_bytes(bytes[16..24].try_into().unwrap());
    let data_len = u64::from_le_bytes(bytes[24..32].try_into().unwrap());
    let expected = EBPC_HEADER_LEN as u64 + zero_len + data_len;
    if bytes.len() as u64 != expected {
        return Err(EbpcError::LengthMismatch {
            expected,
            actual: bytes.len() as u64,
        });
    }
    // Every codec spends at least one stream bit per 16 words (the cheapest
    // case is a max-length zero burst: 2^k <= 128 words for 1+k >= 8 bits),
    // so a larger word count cannot come from a valid encoder and must be
    // rejected before it sizes any allocation.
    let max_words = (zero_len + data_len).saturating_mul(8 * 16);
    if word_count > max_words {
        return Err(EbpcError::MalformedStream {
            bit_offset: 0,
            reason: format!(
                "word count {word_count} is implausible for {} payload byte(s)",
                zero_len + data_len
            ),
        });
    }
    let zero_end = EBPC_HEADER_LEN + zero_len as usize;
    let zero_stream = bytes[EBPC_HEADER_LEN..zero_end].to_vec();
    let data_stream = bytes[zero_end..zero_end + data_len as usize].to_vec();
    let streams = EncodedStreams {
        zero_bits: zero_len * 8,
        data_bits: data_len * 8,
        zero_stream,
        data_stream,
        word_count,
        // not persisted; decoders derive it from the zero stream
        nonzero_count: 0,
    };
    Ok((streams, EbpcFileMeta { dtype, config, codec }))
}

/// Ratio as reported by the tools: header excluded, byte padding included.
pub fn container_ratio(streams: &EncodedStreams, config: &CodecConfig) -> Option<f64> {
    let bytes = streams.zero_stream.len() as u64 + streams.data_stream.len() as u64;
    if streams.word_count == 0 || bytes == 0 {
        return None;
    }
    Some((streams.word_count * u64::from(config.word_width)) as f64 / (bytes * 8) as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codecs::ebpc_encode;
    use proptest::prelude::*;

    fn tiny_tensor() -> TensorFile {
        TensorFile {
            dtype: Dtype::U8,
            layout: Layout::Nchw,
            dims: [1, 2, 2, 2],
            payload: (0..8).collect(),
        }
    }

    #[test]
    fn empty_stream_is_header_only() {
        let c = CodecConfig::default_u8();
        let s = ebpc_encode(&[], &c).unwrap();
        let bytes = write_ebpc(&s, &c, Dtype::U8, Codec::Ebpc).unwrap();
        assert_eq!(bytes.len(), 32);
    }

    #[test]
    fn ebpc_file_roundtrip() {
        let c = CodecConfig::default_u8();
        let s = ebpc_encode(&[0, 0, 5, 7, 0, 4, 4, 9, 0, 0], &c).unwrap();
        let bytes = write_ebpc(&s, &c, Dtype::U8, Codec::Ebpc).unwrap();
        let (s2, meta) = read_ebpc(&bytes).unwrap();
        assert_eq!(meta.config, c);
        assert_eq!(meta.dtype, Dtype::U8);
        assert_eq!(meta.codec, Codec::Ebpc);
        assert_eq!(s2.word_count, 10);
        assert_eq!(s2.zero_stream, s.zero_stream);
        assert_eq!(s2.data_stream, s.data_stream);
        let rebytes = write_ebpc(&s2, &meta.config, meta.dtype, meta.codec).unwrap();
        assert_eq!(rebytes, bytes);
    }

    #[test]
    fn truncated_file_reports_lengths() {
        let c = CodecConfig::default_u8();
        let s = ebpc_encode(&[1, 2, 3, 4], &c).unwrap();
        let mut bytes = write_ebpc(&s, &c, Dtype::U8, Codec::Ebpc).unwrap();
        let full = bytes.len() as u64;
        bytes.pop();
        match read_ebpc(&bytes) {
            Err(EbpcError::LengthMismatch { expected, actual }) => {
                assert_eq!(expected, full);
                assert_eq!(actual, full - 1);
            }
            other => panic!("expected length mismatch, got {other:?}"),
        }
    }

    #[test]
    fn bad_magic_detected() {
        let c = CodecConfig::default_u8();
        let s = ebpc_encode(&[1], &c).unwrap();
        let mut bytes = write_ebpc(&s, &c, Dtype::U8, Codec::Ebpc).unwrap();
        bytes[0] = b'X';
        assert!(matches!(read_ebpc(&bytes), Err(EbpcError::BadMagic { .. })));
    }

    #[test]
    fn unknown_dtype_and_version() {
        let c = CodecConfig::default_u8();
        let s = ebpc_encode(&[1], &c).unwrap();
        let mut bytes = write_ebpc(&s, &c, Dtype::U8, Codec::Ebpc).unwrap();
        bytes[5] = 99;
        assert!(matches!(read_ebpc(&bytes), Err(EbpcError::UnknownDtype(99))));
        bytes[5] = 0;
        bytes[4] = 2;
        assert!(matches!(
            read_ebpc(&bytes),
            Err(EbpcError::UnsupportedVersion(2))
        ));
    }

    #[test]
    fn dtype_config_consistency_enforced() {
        let c = CodecConfig::default_u8();
        let s = ebpc_encode(&[1], &c).unwrap();
        assert!(write_ebpc(&s, &c, Dtype::U16, Codec::Ebpc).is_err());
    }

    #[test]
    fn single_element_tensor_identical_under_all_layouts() {
        let t = TensorFile {
            dtype: Dtype::U8,
            layout: Layout::Nchw,
            dims: [1, 1, 1, 1],
            payload: vec![42],
        };
        for layout in Layout::ALL {
            assert_eq!(permute_layout(&t, layout).payload, vec![42]);
        }
    }

    #[test]
    fn nchw_to_nhwc_example() {
        let t = tiny_tensor();
        let p = permute_layout(&t, Layout::Nhwc);
        assert_eq!(p.payload, vec![0, 4, 1, 5, 2, 6, 3, 7]);
    }

    #[test]
    fn tensor_file_roundtrip() {
        let t = tiny_tensor();
        let bytes = t.to_bytes();
        assert_eq!(bytes.len(), 24 + 8);
        assert_eq!(TensorFile::from_bytes(&bytes).unwrap(), t);
    }

    #[test]
    fn tensor_payload_length_validated() {
        let t = tiny_tensor();
        let mut bytes = t.to_bytes();
        bytes.pop();
        assert!(matches!(
            TensorFile::from_bytes(&bytes),
            Err(EbpcError::LengthMismatch { .. })
        ));
    }

    proptest! {
        #[test]
        fn double_permutation_is_identity(
            payload in prop::collection::vec(0u64..256, 24),
            target_idx in 0usize..4,
            src_idx in 0usize..4,
        ) {
            let t = TensorFile {
                dtype: Dtype::U8,
                layout: Layout::ALL[src_idx],
                dims: [2, 3, 2, 2],
                payload,
            };
            let there = permute_layout(&t, Layout::ALL[target_idx]);
            let back = permute_layout(&there, t.layout);
            prop_assert_eq!(back, t);
        }

        #[test]
        fn container_roundtrip_random(
            words in prop::collection::vec(prop_oneof![Just(0u64), 1u64..256], 0..200)
        ) {
            let c = CodecConfig::default_u8();
            let s = ebpc_encode(&words, &c).unwrap();
            let bytes = write_ebpc(&s, &c, Dtype::U8, Codec::Ebpc).unwrap();
            let (s2, meta) = read_ebpc(&bytes).unwrap();
            let decoded = crate::codecs::ebpc_decode(&s2, &meta.config).unwrap();
            prop_assert_eq!(decoded, words);
        }
    }
}
