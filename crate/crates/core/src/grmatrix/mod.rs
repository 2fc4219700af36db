//! Graded free modules, characteristic functions and graded polynomial
//! matrices.

mod charfn;
mod hypersurface;
mod io;
mod matrix;
mod minors;
mod rank;

pub use charfn::CharFunction;
pub use io::MatrixFile;
pub use matrix::GradedMatrix;
pub use minors::{binomial, MinorIndex, MinorSelection};
pub use rank::{bareiss_det, bareiss_rank, GRID_BUDGET};

#[cfg(test)]
mod tests;
