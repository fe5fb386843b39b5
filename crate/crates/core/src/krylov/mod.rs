//! Walk matrices, block-Krylov matrices and sparse recovery.

mod block;
mod prony;
mod walk;

pub use block::{block_krylov_fullrank, gram_identity, support_distances, BlockKrylovSpec, BlockKrylovVerdict, DistanceViolation, GramCheck};
pub use prony::{prony_recover, sparse_recover, spectral_samples, unit_eigenvectors, walk_samples, Recovery, RESIDUAL_TOLERANCE};
pub use walk::{
    krylov_columns, spectral_sparsity, walk_matrix, walk_rank, walk_rank_laplacian, walk_rank_with, SpectralCoefficient,
    SpectralSparsity, WalkClaim, WalkMatrixReport,
};

#[cfg(test)]
mod tests;
