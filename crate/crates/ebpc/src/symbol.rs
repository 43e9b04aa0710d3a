//! The variable-length prefix code over DBX/DBP bit-planes and its decoder.
//!
//! Planes are scanned MSB to LSB. At each plane the first matching rule wins:
//!
//! 1. run of >= 2 consecutive all-zero DBX planes   -> `001` + (run-2)
//! 2. single all-zero DBX plane                     -> `01`
//! 3. all-ones DBX plane                            -> `00000`
//! 4. all-zero DBP plane                            -> `00001`
//! 5. exactly two adjacent ones in DBX              -> `00010` + posOfFirstOne
//! 6. exactly one one in DBX                        -> `00011` + posOfOne
//! 7. anything else                                 -> `1` + raw DBX plane
//!
//! Runs longer than the maximum are split; a remainder of one plane falls to
//! rule 2. Positions count from delta index 0 (the oldest delta), and raw
//! plane payloads are emitted bit 0 first.

use crate::bitio::{BitReader, BitWriter};
use crate::config::CodecConfig;
use crate::error::{EbpcError, Result};
use crate::transform::PlaneSet;

/// One entry of the plane prefix code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PlaneSymbol {
    /// `run_length` consecutive all-zero DBX planes (2..=R).
    MultiAllZeroDbx { run_length: usize },
    AllZeroDbx,
    AllOneDbx,
    AllZeroDbp,
    /// Two adjacent ones; `pos` is the lower delta index.
    TwoConsecOnes { pos: u64 },
    SingleOne { pos: u64 },
    /// Raw DBX plane payload (d bits).
    Uncompressed { dbx: u64 },
}

impl PlaneSymbol {
    /// Number of planes this symbol covers.
    pub fn plane_coverage(&self) -> usize {
        match self {
            PlaneSymbol::MultiAllZeroDbx { run_length } => *run_length,
            _ => 1,
        }
    }

    /// Encoded length in bits under `config`.
    pub fn code_len(&self, config: &CodecConfig) -> u64 {
        match self {
            PlaneSymbol::MultiAllZeroDbx { .. } => 3 + u64::from(config.run_len_field_bits()),
            PlaneSymbol::AllZeroDbx => 2,
            PlaneSymbol::AllOneDbx | PlaneSymbol::AllZeroDbp => 5,
            PlaneSymbol::TwoConsecOnes { .. } => 5 + u64::from(config.two_consec_pos_bits()),
            PlaneSymbol::SingleOne { .. } => 5 + u64::from(config.single_one_pos_bits()),
            PlaneSymbol::Uncompressed { .. } => 1 + config.deltas_per_block() as u64,
        }
    }
}

fn all_ones_mask(d: usize) -> u64 {
    if d == 64 {
        u64::MAX
    } else {
        (1u64 << d) - 1
    }
}

/// Reverse the low `d` bits of `plane` so bit i = 0 is emitted first when the
/// result is written MSB-first.
fn plane_payload(plane: u64, d: usize) -> u64 {
    let mut out = 0u64;
    for i in 0..d {
        out |= ((plane >> i) & 1) << (d - 1 - i);
    }
    out
}

fn payload_plane(payload: u64, d: usize) -> u64 {
    plane_payload(payload, d) // bit reversal is an involution
}

/// Classify a single plane against rules 2..7 (run detection happens in the
/// scan loop).
fn classify_single(dbx: u64, dbp: u64, d: usize) -> PlaneSymbol {
    if dbx == 0 {
        return PlaneSymbol::AllZeroDbx;
    }
    if dbx == all_ones_mask(d) {
        return PlaneSymbol::AllOneDbx;
    }
    if dbp == 0 {
        return PlaneSymbol::AllZeroDbp;
    }
    if dbx.count_ones() == 2 {
        let pos = dbx.trailing_zeros() as u64;
        if (dbx >> pos) == 0b11 {
            return PlaneSymbol::TwoConsecOnes { pos };
        }
    }
    if dbx.count_ones() == 1 {
        return PlaneSymbol::SingleOne {
            pos: u64::from(dbx.trailing_zeros()),
        };
    }
    PlaneSymbol::Uncompressed { dbx }
}

/// Scan a plane set MSB to LSB and produce its symbol sequence.
pub fn symbolize_planes(planes: &PlaneSet, config: &CodecConfig) -> Vec<PlaneSymbol> {
    let p = config.plane_count();
    let d = config.deltas_per_block();
    let max_run = config.max_zero_plane_run();
    debug_assert_eq!(planes.dbx.len(), p);
    let mut symbols = Vec::new();
    let mut j = p; // planes [0, j) still unencoded; scan downward
    while j > 0 {
        // length of the all-zero DBX run starting at the current plane
        let mut run = 0;
        while run < j && planes.dbx[j - 1 - run] == 0 {
            run += 1;
        }
        if run >= 2 {
            let taken = run.min(max_run);
            symbols.push(PlaneSymbol::MultiAllZeroDbx { run_length: taken });
            j -= taken;
            continue;
        }
        symbols.push(classify_single(planes.dbx[j - 1], planes.dbp[j - 1], d));
        j -= 1;
    }
    symbols
}

/// Append one symbol's codeword to the writer.
pub fn write_symbol(sym: &PlaneSymbol, writer: &mut BitWriter, config: &CodecConfig) -> Result<()> {
    let d = config.deltas_per_block();
    match sym {
        PlaneSymbol::MultiAllZeroDbx { run_length } => {
            writer.write_bits(0b001, 3)?;
            writer.write_bits(*run_length as u64 - 2, config.run_len_field_bits())?;
        }
        PlaneSymbol::AllZeroDbx => writer.write_bits(0b01, 2)?,
        PlaneSymbol::AllOneDbx => writer.write_bits(0b00000, 5)?,
        PlaneSymbol::AllZeroDbp => writer.write_bits(0b00001, 5)?,
        PlaneSymbol::TwoConsecOnes { pos } => {
            writer.write_bits(0b00010, 5)?;
            writer.write_bits(*pos, config.two_consec_pos_bits())?;
        }
        PlaneSymbol::SingleOne { pos } => {
            writer.write_bits(0b00011, 5)?;
            writer.write_bits(*pos, config.single_one_pos_bits())?;
        }
        PlaneSymbol::Uncompressed { dbx } => {
            writer.write_bits(1, 1)?;
            writer.write_bits(plane_payload(*dbx, d), d as u8)?;
        }
    }
    Ok(())
}

/// Encode a plane set's symbols onto the writer.
pub fn encode_planes(planes: &PlaneSet, writer: &mut BitWriter, config: &CodecConfig) -> Result<()> {
    for sym in symbolize_planes(planes, config) {
        write_symbol(&sym, writer, config)?;
    }
    Ok(())
}

/// Read one symbol from the stream.
pub fn read_symbol(reader: &mut BitReader<'_>, config: &CodecConfig) -> Result<PlaneSymbol> {
    let d = config.deltas_per_block();
    if reader.read_bits(1)? == 1 {
        let payload = reader.read_bits(d as u8)?;
        return Ok(PlaneSymbol::Uncompressed {
            dbx: payload_plane(payload, d),
        });
    }
    if reader.read_bits(1)? == 1 {
        return Ok(PlaneSymbol::AllZeroDbx);
    }
    if reader.read_bits(1)? == 1 {
        let run = reader.read_bits(config.run_len_field_bits())? as usize + 2;
        return Ok(PlaneSymbol::MultiAllZeroDbx { run_length: run });
    }
    match reader.read_bits(2)? {
        0b00 => Ok(PlaneSymbol::AllOneDbx),
        0b01 => Ok(PlaneSymbol::AllZeroDbp),
        0b10 => Ok(PlaneSymbol::TwoConsecOnes {
            pos: reader.read_bits(config.two_consec_pos_bits())?,
        }),
        _ => Ok(PlaneSymbol::SingleOne {
            pos: reader.read_bits(config.single_one_pos_bits())?,
        }),
    }
}

/// Decode symbols until exactly P planes are reconstructed; returns DBP
/// planes, index 0 = LSB.
pub fn decode_plane_symbols(reader: &mut BitReader<'_>, config: &CodecConfig) -> Result<Vec<u64>> {
    let p = config.plane_count();
    let d = config.deltas_per_block();
    let mask = all_ones_mask(d);
    let mut dbp = vec![0u64; p];
    let mut remaining = p;
    let mut prev = 0u64;
    while remaining > 0 {
        let offset = reader.bit_pos();
        let sym = read_symbol(reader, config)?;
        let coverage = sym.plane_coverage();
        if coverage > remaining {
            return Err(EbpcError::MalformedStream {
                bit_offset: offset,
                reason: format!(
                    "zero-plane run of {coverage} overshoots the {remaining} plane(s) left"
                ),
            });
        }
        match sym {
            PlaneSymbol::MultiAllZeroDbx { run_length } => {
                // dbx = 0 repeats the previous dbp
                for _ in 0..run_length {
                    dbp[remaining - 1] = prev;
                    remaining -= 1;
                }
            }
            PlaneSymbol::AllZeroDbp => {
                dbp[remaining - 1] = 0;
                prev = 0;
                remaining -= 1;
            }
            other => {
                let dbx = match other {
                    PlaneSymbol::AllZeroDbx => 0,
                    PlaneSymbol::AllOneDbx => mask,
                    PlaneSymbol::TwoConsecOnes { pos } => {
                        if pos + 1 >= d as u64 {
                            return Err(EbpcError::MalformedStream {
                                bit_offset: offset,
                                reason: format!("2-consec-1s position {pos} out of range"),
                            });
                        }
                        0b11 << pos
                    }
                    PlaneSymbol::SingleOne { pos } => {
                        if pos >= d as u64 {
                            return Err(EbpcError::MalformedStream {
                                bit_offset: offset,
                                reason: format!("single-1 position {pos} out of range"),
                            });
                        }
                        1 << pos
                    }
                    PlaneSymbol::Uncompressed { dbx } => dbx,
                    _ => unreachable!(),
                };
                dbp[remaining - 1] = dbx ^ prev;
                prev = dbp[remaining - 1];
                remaining -= 1;
            }
        }
    }
    Ok(dbp)
}
