//! Sums of squares in hyperelliptic function fields over iterated real
//! Laurent series fields `K_n = R((t1))...((tn))`.
//!
//! The crate counts the valuations of `F = K_n(X)(sqrt f)` whose residue
//! field is nonreal of level 2, which gives `|S(F)/S2(F)| = 2^m`, decides
//! membership of elements in `S2(F)`, and builds explicit generators.

pub mod analyzer;
pub mod cli;
pub mod curve;
pub mod error;
pub mod expr;
pub mod funfield;
pub mod kn;
pub mod lexgroup;
pub mod mpoly;
pub mod quadform;
pub mod report;
pub mod scalar;
pub mod upoly;

pub use error::{Error, Result};
pub use kn::{KnElem, SquareClass};
pub use lexgroup::LexVec;
pub use mpoly::MPoly;
pub use scalar::{Scalar, Tower};
pub use analyzer::{analyze, Analysis, AnalyzeOptions, Kind};
pub use curve::{CurveData, NormalizeOptions, QuadFactor};
pub use funfield::{phi, FunElem, GaussStep, ValChain};
pub use upoly::{RatFun, UPoly};
