//! Synthetic corpus generation and the statistics and parameter sweeps used
//! to study codec behavior at desk scale.
//!
//! Corpora are ReLU-style thresholded smoothed noise: spatially correlated,
//! mostly-zero tensors with smooth non-zero regions, standing in for real
//! feature-map dumps (which are supported through `TensorFile`).

use crate::codecs::{self, Codec, SymbolCounts};
use crate::config::{BaseMode, CodecConfig, DtypeMode};
use crate::container::{Dtype, Layout, TensorFile};
use crate::error::{EbpcError, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Histogram of plane symbols emitted for a stream (EBPC non-zero path).
pub type SymbolHistogram = SymbolCounts;

/// Recipe for a deterministic synthetic tensor.
#[derive(Debug, Clone, PartialEq)]
pub struct CorpusSpec {
    /// Logical dims (N, C, H, W).
    pub dims: [u32; 4],
    /// Fraction of zero words to aim for, in [0, 1].
    pub target_sparsity: f64,
    /// Spatial moving-average radius; 0 = white noise.
    pub smoothness: u32,
    pub dtype: Dtype,
    pub seed: u64,
}

fn box_smooth(values: &mut Vec<f64>, h: usize, w: usize, radius: usize) {
    if radius == 0 {
        return;
    }
    // separable moving average over the H and W axes of one (n, c) slice
    let mut tmp = vec![0.0f64; h * w];
    for row in 0..h {
        for col in 0..w {
            let lo = col.saturating_sub(radius);
            let hi = (col + radius).min(w - 1);
            let sum: f64 = (lo..=hi).map(|x| values[row * w + x]).sum();
            tmp[row * w + col] = sum / (hi - lo + 1) as f64;
        }
    }
    for col in 0..w {
        for row in 0..h {
            let lo = row.saturating_sub(radius);
            let hi = (row + radius).min(h - 1);
            let sum: f64 = (lo..=hi).map(|y| tmp[y * w + col]).sum();
            values[row * w + col] = sum / (hi - lo + 1) as f64;
        }
    }
}

/// Generate a deterministic NCHW tensor per `spec`. The achieved sparsity is
/// checked against the target with a 1% tolerance.
pub fn generate_corpus(spec: &CorpusSpec) -> Result<TensorFile> {
    if !(0.0..=1.0).contains(&spec.target_sparsity) {
        return Err(EbpcError::InvalidConfig(format!(
            "target sparsity {} outside [0, 1]",
            spec.target_sparsity
        )));
    }
    let [n, c, h, w] = spec.dims.map(|d| d as usize);
    let total = n * c * h * w;
    if total == 0 {
        return Err(EbpcError::InvalidConfig("empty tensor shape".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut values = Vec::with_capacity(total);
    for _ in 0..n * c {
        let mut slice: Vec<f64> = (0..h * w).map(|_| rng.gen::<f64>()).collect();
        box_smooth(&mut slice, h, w, spec.smoothness as usize);
        values.extend(slice);
    }

    // empirical-quantile threshold: exactly round(target * total) values fall
    // at or below it (ties have measure zero on continuous noise)
    let num_zero = (spec.target_sparsity * total as f64).round() as usize;
    let threshold = if num_zero == 0 {
        f64::NEG_INFINITY
    } else {
        let mut sorted = values.clone();
        sorted.sort_by(|a, b| a.total_cmp(b));
        sorted[num_zero.min(total) - 1]
    };

    let peak = values
        .iter()
        .map(|&v| v - threshold)
        .fold(0.0f64, f64::max)
        .max(f64::MIN_POSITIVE);
    let m = spec.dtype.word_width();
    let full_scale = match spec.dtype.mode() {
        // span 80% of the unsigned range, like normalized fixed-point dumps
        DtypeMode::FixedPoint => ((1u64 << m) - 1) as f64 * 0.8,
        DtypeMode::FloatBitwise | DtypeMode::FloatArithmetic => 8.0,
    };

    let payload: Vec<u64> = values
        .iter()
        .map(|&v| {
            let x = v - threshold;
            if x <= 0.0 {
                return 0;
            }
            // squaring skews the value histogram toward small magnitudes,
            // like post-ReLU activation histograms
            let y = (x / peak).powi(2);
            match spec.dtype.mode() {
                DtypeMode::FixedPoint => {
                    // non-zero inputs stay non-zero after quantization
                    ((y * full_scale).round() as u64).max(1)
                }
                _ => u64::from(crate::f16::f32_to_f16((y * full_scale) as f32)),
            }
        })
        .collect();

    let achieved = sparsity(&payload);
    if (achieved - spec.target_sparsity).abs() > 0.01 {
        return Err(EbpcError::UnsatisfiableSparsity {
            target: spec.target_sparsity,
            achieved,
        });
    }
    Ok(TensorFile {
        dtype: spec.dtype,
        layout: Layout::Nchw,
        dims: spec.dims,
        payload,
    })
}

/// Fraction of words whose entire bit pattern is zero.
pub fn sparsity(words: &[u64]) -> f64 {
    if words.is_empty() {
        return 0.0;
    }
    words.iter().filter(|&&w| w == 0).count() as f64 / words.len() as f64
}

/// Per-channel sparsity, aggregated over batch and spatial dims.
pub fn sparsity_per_channel(tensor: &TensorFile) -> Vec<f64> {
    let dims = tensor.dims.map(|d| d as usize);
    let mut zero = vec![0u64; dims[1]];
    let mut total = vec![0u64; dims[1]];
    for n in 0..dims[0] {
        for c in 0..dims[1] {
            for h in 0..dims[2] {
                for w in 0..dims[3] {
                    let off = tensor.layout.offset([n, c, h, w], dims);
                    total[c] += 1;
                    if tensor.payload[off] == 0 {
                        zero[c] += 1;
                    }
                }
            }
        }
    }
    zero.iter()
        .zip(&total)
        .map(|(&z, &t)| if t == 0 { 0.0 } else { z as f64 / t as f64 })
        .collect()
}

/// Cumulative distribution of maximal zero and non-zero burst lengths.
#[derive(Debug, Clone, PartialEq)]
pub struct BurstCdf {
    /// (length, cumulative probability), ascending lengths; empty if no bursts.
    pub zero: Vec<(u64, f64)>,
    pub nonzero: Vec<(u64, f64)>,
}

fn cdf_from_bursts(lengths: &[u64]) -> Vec<(u64, f64)> {
    if lengths.is_empty() {
        return Vec::new();
    }
    let mut sorted = lengths.to_vec();
    sorted.sort_unstable();
    let total = sorted.len() as f64;
    let mut out: Vec<(u64, f64)> = Vec::new();
    let mut seen = 0u64;
    for &len in &sorted {
        seen += 1;
        match out.last_mut() {
            Some(last) if last.0 == len => last.1 = seen as f64 / total,
            _ => out.push((len, seen as f64 / total)),
        }
    }
    out
}

/// Decompose `words` into maximal bursts and build the two CDFs.
pub fn burst_cdf(words: &[u64]) -> BurstCdf {
    let mut zero_bursts = Vec::new();
    let mut nonzero_bursts = Vec::new();
    let mut run_len = 0u64;
    let mut run_zero = false;
    for &w in words {
        let is_zero = w == 0;
        if run_len > 0 && is_zero == run_zero {
            run_len += 1;
        } else {
            if run_len > 0 {
                if run_zero {
                    zero_bursts.push(run_len);
                } else {
                    nonzero_bursts.push(run_len);
                }
            }
            run_zero = is_zero;
            run_len = 1;
        }
    }
    if run_len > 0 {
        if run_zero {
            zero_bursts.push(run_len);
        } else {
            nonzero_bursts.push(run_len);
        }
    }
    BurstCdf {
        zero: cdf_from_bursts(&zero_bursts),
        nonzero: cdf_from_bursts(&nonzero_bursts),
    }
}

/// Symbol tallies for the EBPC plane coding of `words`.
pub fn symbol_histogram(words: &[u64], config: &CodecConfig) -> SymbolHistogram {
    codecs::tally_symbols(words, config)
}

/// One row of a sweep result table.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub codec: Codec,
    pub config: CodecConfig,
    pub word_count: u64,
    pub compressed_bits: u64,
    pub ratio: Option<f64>,
}

fn run_config(codec: Codec, words: &[u64], config: &CodecConfig) -> Result<SweepRow> {
    let streams = codecs::encode(codec, words, config)?;
    Ok(SweepRow {
        codec,
        config: *config,
        word_count: streams.word_count,
        compressed_bits: streams.compressed_bits(),
        ratio: codecs::compression_ratio(&streams, config),
    })
}

/// Zero-RLE ratio for each burst-length field width k in 1..=6.
pub fn sweep_max_burst(words: &[u64], base: &CodecConfig) -> Result<Vec<SweepRow>> {
    (1..=6u8)
        .map(|k| {
            let config = CodecConfig::new(
                base.word_width,
                base.block_size,
                k,
                base.dtype_mode,
                base.base_mode,
            )?;
            run_config(Codec::ZeroRle, words, &config)
        })
        .collect()
}

/// EBPC ratio for each block size in {2, 4, 8, 16, 32, 64}.
pub fn sweep_block_size(words: &[u64], base: &CodecConfig) -> Result<Vec<SweepRow>> {
    [2usize, 4, 8, 16, 32, 64]
        .iter()
        .map(|&n| {
            let config = CodecConfig::new(
                base.word_width,
                n,
                base.burst_len_bits,
                base.dtype_mode,
                base.base_mode,
            )?;
            run_config(Codec::Ebpc, words, &config)
        })
        .collect()
}

/// Ratio of every codec under one shared config.
pub fn compare_codecs(words: &[u64], config: &CodecConfig) -> Result<Vec<SweepRow>> {
    Codec::ALL
        .iter()
        .map(|&codec| run_config(codec, words, config))
        .collect()
}

fn base_mode_name(mode: BaseMode) -> &'static str {
    match mode {
        BaseMode::Explicit => "explicit",
        BaseMode::Implicit => "implicit",
    }
}

/// CSV schema: codec,word_width,block_size,burst_bits,base_mode,words,compressed_bits,ratio
pub fn write_sweep_csv<W: std::io::Write>(rows: &[SweepRow], out: &mut W) -> Result<()> {
    writeln!(
        out,
        "codec,word_width,block_size,burst_bits,base_mode,words,compressed_bits,ratio"
    )?;
    for row in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            row.codec.name(),
            row.config.word_width,
            row.config.block_size,
            row.config.burst_len_bits,
            base_mode_name(row.config.base_mode),
            row.word_count,
            row.compressed_bits,
            row.ratio.map_or(String::new(), |r| format!("{r:.6}")),
        )?;
    }
    Ok(())
}

/// CSV schema: kind,length,cum_prob
pub fn write_burst_cdf_csv<W: std::io::Write>(cdf: &BurstCdf, out: &mut W) -> Result<()> {
    writeln!(out, "kind,length,cum_prob")?;
    for &(len, p) in &cdf.zero {
        writeln!(out, "zero,{len},{p:.6}")?;
    }
    for &(len, p) in &cdf.nonzero {
        writeln!(out, "nonzero,{len},{p:.6}")?;
    }
    Ok(())
}

/// CSV schema: symbol,count
pub fn write_histogram_csv<W: std::io::Write>(h: &SymbolHistogram, out: &mut W) -> Result<()> {
    writeln!(out, "symbol,count")?;
    writeln!(out, "multi_all_zero_dbx,{}", h.multi_all_zero_dbx)?;
    writeln!(out, "all_zero_dbx,{}", h.all_zero_dbx)?;
    writeln!(out, "all_one_dbx,{}", h.all_one_dbx)?;
    writeln!(out, "all_zero_dbp,{}", h.all_zero_dbp)?;
    writeln!(out, "two_consec_ones,{}", h.two_consec_ones)?;
    writeln!(out, "single_one,{}", h.single_one)?;
    writeln!(out, "uncompressed,{}", h.uncompressed)?;
    writeln!(out, "block_count,{}", h.block_count)?;
    writeln!(out, "plane_coverage,{}", h.plane_coverage)?;
    Ok(())
}
