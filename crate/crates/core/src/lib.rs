pub mod cli;
pub mod error;
pub mod frame;
pub mod matrix;
pub mod reconstruct;
pub mod verify;

pub use error::{Error, Result};
pub use frame::{FrameBounds, FrameClassification, FrameSequence, OperatorBundle};
pub use matrix::{Matrix, Tolerance, C64};
