//! Shared octonionic data: structure constants and both families of gamma
//! matrices, built once and passed around read-only.

use crate::clifford::{GammaBig, GammaSmall, RealMatrix};
use crate::diffop::{DiffPoly, OperatorMatrix};
use crate::error::Result;
use crate::octonion::OctonionTensors;

/// Number of components of the wavefunction (8 bosons, 8 fermions).
pub const DIM: usize = 16;

#[derive(Clone, Debug)]
pub struct Frame {
    pub tensors: OctonionTensors,
    pub small: GammaSmall,
    pub big: GammaBig,
}

impl Frame {
    pub fn new() -> Result<Self> {
        let tensors = OctonionTensors::build();
        let small = GammaSmall::build(&tensors)?;
        let big = GammaBig::build(&small);
        Ok(Self {
            tensors,
            small,
            big,
        })
    }

    pub fn gamma(&self, a: usize) -> &RealMatrix {
        self.big.get(a)
    }

    pub fn product(&self, indices: &[usize]) -> RealMatrix {
        self.big.product(indices)
    }

    /// Constant matrix `Gamma_{A_1}...Gamma_{A_n}` times the scalar operator `p`.
    pub fn op(&self, indices: &[usize], p: &DiffPoly) -> OperatorMatrix {
        OperatorMatrix::from_matrix(&self.product(indices), p)
    }

    /// Constant matrix as an operator.
    pub fn constant(&self, m: &RealMatrix) -> OperatorMatrix {
        OperatorMatrix::from_matrix(m, &DiffPoly::x_pow(0))
    }
}
