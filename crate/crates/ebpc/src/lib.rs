//! Extended bit-plane compression (EBPC) for sparse, spatially smooth word
//! streams such as DNN feature maps and gradient maps.
//!
//! The combined scheme splits a word stream into a run-length-coded
//! zero/non-zero flag stream and a bit-plane-compressed stream of the
//! non-zero values. The baseline codecs (Zero-RLE, ZVC, plain BPC) and the
//! analysis tooling for parameter sweeps live here as well.

pub mod analysis;
pub mod bitio;
pub mod codecs;
pub mod config;
pub mod container;
pub mod error;
pub mod f16;
pub mod symbol;
pub mod transform;

pub use codecs::{Codec, EncodedStreams};
pub use config::{BaseMode, CodecConfig, DtypeMode};
pub use container::{Dtype, Layout, TensorFile};
pub use error::{EbpcError, Result};
