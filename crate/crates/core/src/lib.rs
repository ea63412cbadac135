pub mod bitlin;
pub mod build;
pub mod css;
pub mod decode;
pub mod error;
pub mod meta;
pub mod sim;
pub mod zoo;

pub use bitlin::{BitMatrix, BitVector};
pub use css::{CodeStats, CssCode, DistanceReport, Pauli, PauliVector};
pub use decode::{BpConfig, BpDecoder, BpResult, TannerGraph};
pub use error::{Error, Result};

/// Double-precision belief propagation.
pub type BpDecoder64 = BpDecoder<f64>;
/// Single-precision belief propagation.
pub type BpDecoder32 = BpDecoder<f32>;
