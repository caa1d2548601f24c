//! Field-generic dense linear algebra, sparse structure tensors and the
//! complex spectral tools used by the C* layer.

mod mat;
mod solve;
pub mod spectral;
mod tensor;
pub mod vector;

pub use mat::Mat;
pub use solve::{
    independent_subset, invertible_in_span, kernel_of, row_reduce, solve_affine, AffineSolution, InvertibleSearch,
    Subspace, EXHAUSTIVE_LIMIT, INVERTIBLE_ATTEMPTS,
};
pub use spectral::{hermitian_eigen, hermitian_sqrt, split_commutative};
pub use tensor::Tensor3;
pub use vector::Vector;
