//! Command-line front end: compress/decompress/stats/sweep/gen/bench/verify.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use ebpc::analysis::{
    burst_cdf, compare_codecs, generate_corpus, sparsity, sparsity_per_channel, sweep_block_size,
    sweep_max_burst, symbol_histogram, write_burst_cdf_csv, write_histogram_csv, write_sweep_csv,
    CorpusSpec,
};
use ebpc::codecs::{compression_ratio, decode, encode};
use ebpc::container::{container_ratio, permute_layout, read_ebpc, write_ebpc};
use ebpc::{BaseMode, Codec, CodecConfig, Dtype, DtypeMode, EbpcError, Layout, TensorFile};

#[derive(Parser)]
#[command(name = "ebpc", about = "Lossless compression for sparse, smooth word streams", version)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CodecFlags {
    /// Codec: ebpc, zvc, zero-rle, or bpc
    #[arg(long, default_value = "ebpc")]
    codec: Codec,
    /// Words per bit-plane block (2..=64)
    #[arg(long, default_value_t = 8)]
    block_size: usize,
    /// Zero-run length field width in bits (1..=7)
    #[arg(long, default_value_t = 4)]
    burst_bits: u8,
    /// Block base handling: explicit or implicit
    #[arg(long, default_value = "explicit", value_parser = parse_base_mode)]
    base_mode: BaseMode,
}

fn parse_base_mode(s: &str) -> Result<BaseMode, String> {
    match s {
        "explicit" => Ok(BaseMode::Explicit),
        "implicit" => Ok(BaseMode::Implicit),
        other => Err(format!("unknown base mode '{other}' (explicit|implicit)")),
    }
}

fn parse_shape(s: &str) -> Result<[u32; 4], String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 4 {
        return Err("shape must be N,C,H,W".into());
    }
    let mut dims = [0u32; 4];
    for (d, p) in dims.iter_mut().zip(parts) {
        *d = p.trim().parse().map_err(|e| format!("bad dim '{p}': {e}"))?;
    }
    Ok(dims)
}

#[derive(Subcommand)]
enum Command {
    /// Compress a tensor (or raw words) into an .ebpc file
    Compress {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[command(flatten)]
        codec: CodecFlags,
        /// Treat the input as raw little-endian words instead of a tensor file
        #[arg(long)]
        raw: bool,
        /// Word type for --raw input, or an override for tensor input
        #[arg(long)]
        dtype: Option<Dtype>,
        /// Number of words to take from --raw input (default: whole file)
        #[arg(long)]
        count: Option<u64>,
        /// Permute the tensor to this memory layout before compressing
        #[arg(long)]
        layout: Option<Layout>,
    },
    /// Decompress an .ebpc file
    Decompress {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Write raw little-endian words instead of a flat tensor file
        #[arg(long)]
        raw: bool,
    },
    /// Compress, decompress, and compare bitwise
    Verify {
        #[arg(short, long)]
        input: PathBuf,
        #[command(flatten)]
        codec: CodecFlags,
    },
    /// Sparsity, burst CDF, and symbol histogram of a tensor
    Stats {
        #[arg(short, long)]
        input: PathBuf,
        /// Write machine-readable output to this CSV file
        #[arg(long)]
        csv: Option<PathBuf>,
        #[command(flatten)]
        codec: CodecFlags,
        /// Permute the tensor to this layout before analyzing
        #[arg(long)]
        layout: Option<Layout>,
    },
    /// Parameter sweeps: zero-burst field width, block size, codec comparison
    Sweep {
        #[arg(short, long)]
        input: PathBuf,
        /// burst (k in 1..=6), block (n in 2..=64), or codecs
        #[arg(long, default_value = "burst")]
        kind: String,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[command(flatten)]
        codec: CodecFlags,
    },
    /// Generate a deterministic synthetic tensor
    Gen {
        #[arg(short, long)]
        output: PathBuf,
        /// Logical shape N,C,H,W
        #[arg(long, value_parser = parse_shape, default_value = "1,16,32,32")]
        shape: [u32; 4],
        #[arg(long, default_value_t = 0.7)]
        sparsity: f64,
        /// Spatial moving-average radius (0 = white noise)
        #[arg(long, default_value_t = 2)]
        smoothness: u32,
        #[arg(long, default_value = "u8")]
        dtype: Dtype,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Encode/decode throughput in words per second
    Bench {
        #[arg(short, long)]
        input: PathBuf,
        #[command(flatten)]
        codec: CodecFlags,
        /// Minimum measurement time per direction, milliseconds
        #[arg(long, default_value_t = 500)]
        min_ms: u64,
    },
}

fn config_for(dtype: Dtype, flags: &CodecFlags) -> ebpc::Result<CodecConfig> {
    CodecConfig::new(
        dtype.word_width(),
        flags.block_size,
        flags.burst_bits,
        dtype.mode(),
        flags.base_mode,
    )
}

fn read_raw_words(path: &PathBuf, dtype: Dtype, count: Option<u64>) -> ebpc::Result<Vec<u64>> {
    let bytes = std::fs::read(path)?;
    let bpw = dtype.bytes_per_word();
    let available = (bytes.len() / bpw) as u64;
    let take = count.unwrap_or(available);
    if take > available {
        return Err(EbpcError::LengthMismatch {
            expected: take * bpw as u64,
            actual: bytes.len() as u64,
        });
    }
    Ok(bytes
        .chunks_exact(bpw)
        .take(take as usize)
        .map(|chunk| {
            let mut buf = [0u8; 8];
            buf[..bpw].copy_from_slice(chunk);
            u64::from_le_bytes(buf)
        })
        .collect())
}

/// Load the words to compress plus their effective dtype.
fn load_input(
    input: &PathBuf,
    raw: bool,
    dtype_flag: Option<Dtype>,
    count: Option<u64>,
    layout: Option<Layout>,
) -> ebpc::Result<(Vec<u64>, Dtype)> {
    if raw {
        let dtype = dtype_flag.ok_or_else(|| {
            EbpcError::InvalidConfig("--raw input requires --dtype".into())
        })?;
        let mask = if dtype.word_width() == 64 {
            u64::MAX
        } else {
            (1u64 << dtype.word_width()) - 1
        };
        let words = read_raw_words(input, dtype, count)?
            .into_iter()
            .map(|w| w & mask)
            .collect();
        return Ok((words, dtype));
    }
    let mut tensor = TensorFile::read_from(input)?;
    if let Some(target) = layout {
        tensor = permute_layout(&tensor, target);
    }
    let dtype = match dtype_flag {
        Some(d) if d.word_width() != tensor.dtype.word_width() => {
            return Err(EbpcError::InvalidConfig(format!(
                "--dtype {} does not match the tensor's {}-bit words",
                d.name(),
                tensor.dtype.word_width()
            )));
        }
        Some(d) => d,
        None => tensor.dtype,
    };
    Ok((tensor.payload, dtype))
}

fn write_csv_or_stdout(csv: &Option<PathBuf>, body: Vec<u8>) -> ebpc::Result<()> {
    match csv {
        Some(path) => Ok(std::fs::write(path, body)?),
        None => {
            print!("{}", String::from_utf8_lossy(&body));
            Ok(())
        }
    }
}

pub fn run(cli: Cli) -> ebpc::Result<()> {
    match cli.command {
        Command::Compress {
            input,
            output,
            codec,
            raw,
            dtype,
            count,
            layout,
        } => {
            let (words, dtype) = load_input(&input, raw, dtype, count, layout)?;
            let config = config_for(dtype, &codec)?;
            let streams = encode(codec.codec, &words, &config)?;
            let bytes = write_ebpc(&streams, &config, dtype, codec.codec)?;
            std::fs::write(&output, bytes)?;
            match container_ratio(&streams, &config) {
                Some(r) => println!(
                    "{} words, {} payload bits, ratio {:.4}",
                    streams.word_count,
                    streams.compressed_bits(),
                    r
                ),
                None => println!("{} words, ratio undefined", streams.word_count),
            }
        }
        Command::Decompress { input, output, raw } => {
            let bytes = std::fs::read(&input)?;
            let (streams, meta) = read_ebpc(&bytes)?;
            let words = decode(meta.codec, &streams, &meta.config)?;
            if raw {
                let bpw = meta.dtype.bytes_per_word();
                let mut out = Vec::with_capacity(words.len() * bpw);
                for w in &words {
                    out.extend_from_slice(&w.to_le_bytes()[..bpw]);
                }
                std::fs::write(&output, out)?;
            } else {
                // flat shape; the container does not store tensor dims
                let dtype = match meta.dtype {
                    Dtype::F16Arithmetic => Dtype::F16Bitwise,
                    d => d,
                };
                let tensor = TensorFile {
                    dtype,
                    layout: Layout::Nchw,
                    dims: [1, 1, 1, words.len() as u32],
                    payload: words,
                };
                tensor.write_to(&output)?;
            }
            println!("{} words written", streams.word_count);
        }
        Command::Verify { input, codec } => {
            let (words, dtype) = load_input(&input, false, None, None, None)?;
            let config = config_for(dtype, &codec)?;
            let streams = encode(codec.codec, &words, &config)?;
            let decoded = decode(codec.codec, &streams, &config)?;
            let lossy = config.dtype_mode == DtypeMode::FloatArithmetic;
            if decoded == words {
                match compression_ratio(&streams, &config) {
                    Some(r) => println!("PASS ratio {r:.4}"),
                    None => println!("PASS (empty input)"),
                }
            } else if lossy {
                println!("FAIL (note: f16-arith mode is documented as not bit-exact)");
                std::process::exit(1);
            } else {
                println!("FAIL");
                std::process::exit(1);
            }
        }
        Command::Stats {
            input,
            csv,
            codec,
            layout,
        } => {
            let mut tensor = TensorFile::read_from(&input)?;
            if let Some(target) = layout {
                tensor = permute_layout(&tensor, target);
            }
            let config = config_for(tensor.dtype, &codec)?;
            let words = tensor.flatten_for_compression();
            let overall = sparsity(words);
            let cdf = burst_cdf(words);
            let hist = symbol_histogram(words, &config);
            let mut body = Vec::new();
            {
                use std::io::Write;
                writeln!(&mut body, "stat,value").map_err(EbpcError::Io)?;
                writeln!(&mut body, "words,{}", words.len()).map_err(EbpcError::Io)?;
                writeln!(&mut body, "sparsity,{overall:.6}").map_err(EbpcError::Io)?;
                for (c, s) in sparsity_per_channel(&tensor).iter().enumerate() {
                    writeln!(&mut body, "sparsity_c{c},{s:.6}").map_err(EbpcError::Io)?;
                }
            }
            write_burst_cdf_csv(&cdf, &mut body)?;
            write_histogram_csv(&hist, &mut body)?;
            write_csv_or_stdout(&csv, body)?;
        }
        Command::Sweep {
            input,
            kind,
            csv,
            codec,
        } => {
            let (words, dtype) = load_input(&input, false, None, None, None)?;
            let config = config_for(dtype, &codec)?;
            let rows = match kind.as_str() {
                "burst" => sweep_max_burst(&words, &config)?,
                "block" => sweep_block_size(&words, &config)?,
                "codecs" => compare_codecs(&words, &config)?,
                other => {
                    return Err(EbpcError::InvalidConfig(format!(
                        "unknown sweep kind '{other}' (burst|block|codecs)"
                    )))
                }
            };
            let mut body = Vec::new();
            write_sweep_csv(&rows, &mut body)?;
            write_csv_or_stdout(&csv, body)?;
        }
        Command::Gen {
            output,
            shape,
            sparsity: target,
            smoothness,
            dtype,
            seed,
        } => {
            let spec = CorpusSpec {
                dims: shape,
                target_sparsity: target,
                smoothness,
                dtype,
                seed,
            };
            let tensor = generate_corpus(&spec)?;
            tensor.write_to(&output)?;
            println!(
                "generated {} words, sparsity {:.4}",
                tensor.word_count(),
                sparsity(&tensor.payload)
            );
        }
        Command::Bench {
            input,
            codec,
            min_ms,
        } => {
            let (words, dtype) = load_input(&input, false, None, None, None)?;
            let config = config_for(dtype, &codec)?;
            let streams = encode(codec.codec, &words, &config)?;

            let measure = |mut f: Box<dyn FnMut()>| -> f64 {
                let start = Instant::now();
                let mut iters = 0u64;
                while start.elapsed().as_millis() < u128::from(min_ms) {
                    f();
                    iters += 1;
                }
                (iters * words.len() as u64) as f64 / start.elapsed().as_secs_f64()
            };

            let enc_words = {
                let words = words.clone();
                let config = config;
                measure(Box::new(move || {
                    std::hint::black_box(encode(codec.codec, &words, &config).unwrap());
                }))
            };
            let dec_words = {
                let streams = streams.clone();
                let config = config;
                measure(Box::new(move || {
                    std::hint::black_box(decode(codec.codec, &streams, &config).unwrap());
                }))
            };
            println!(
                "{}: encode {:.2} Mwords/s, decode {:.2} Mwords/s ({} words)",
                codec.codec.name(),
                enc_words / 1e6,
                dec_words / 1e6,
                words.len()
            );
        }
    }
    Ok(())
}
