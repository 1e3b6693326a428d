//! Exact linear algebra and the homology of the derivation complex.

mod homology;
mod matrix;

pub use homology::{
    gottlieb, gottlieb_of, homology, homology_of, restriction_functional, top_degree_law,
    DegreeHomology, GottliebDegree, GottliebReport, HomologyReport,
};
pub use matrix::{kernel_basis, rank, rref, solve, EchelonSpan, RationalMatrix, Rref};
