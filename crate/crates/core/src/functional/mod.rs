//! Truncated moment functionals, the sesquilinear form `<f, g> = L(f conj(g))`,
//! and moment/localizing matrices.

mod gram;
mod moments;

pub use gram::{
    kernel_contains, localizing_matrix, min_eigenvalue, moment_matrix, HermitianGram, KernelCheck,
};
pub use moments::{MomentEntry, MomentFile, MomentSequence};
