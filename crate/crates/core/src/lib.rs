//! Exact-arithmetic construction and verification of the octonionic N=8
//! superconformal quantum mechanics with F(4) dynamical symmetry and its
//! deformed oscillator.

pub mod clifford;
pub mod check;
pub mod error;
pub mod f4;
pub mod frame;
pub mod linalg;
pub mod matrix;
pub mod octonion;
pub mod oscillator;
pub mod poly;
pub mod roots;
pub mod scalar;
pub mod spectrum;
pub mod susy;
pub mod wave;

pub mod diffop;

pub use error::{CoreError, Result};
