//! Biquaternion spin algebra with exact and floating backends.
//!
//! The crate is `no_std` with `alloc`; the `std` feature only adds
//! `std::error::Error` for [`Error`].

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod biquaternion;
pub mod conventions;
pub mod covariants;
pub mod diffop;
pub mod equations;
pub mod error;
pub mod field;
pub mod frame;
pub mod linalg;
pub mod linop;
pub mod rarita_schwinger;
pub mod sample;
pub mod scalar;
pub mod lorentz;
pub mod spin;

pub use biquaternion::{product, Biquaternion, Classification};
pub use error::{Error, Result};
pub use frame::{make_frame, Frame, PeirceCoords};
pub use linop::{Flavor, RealLinearOp};
pub use scalar::{Rational, Scalar, C};

/// Floating biquaternion.
pub type Bq = Biquaternion<f64>;
/// Exact biquaternion.
pub type BqQ = Biquaternion<Rational>;
