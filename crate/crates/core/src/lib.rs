//! SVD-based graph clustering and latent semantic indexing.
//!
//! * [`matrix`]: dense/sparse values, Jacobi eigensolver, truncated SVD,
//!   NMF, k-means and Matrix Market IO.
//! * [`graphs`]: affinity construction and normalization for unipartite,
//!   bipartite and directed graphs.
//! * [`cluster`]: spectral, bipartite-SVD and NMF clustering plus external
//!   quality metrics.
//! * [`lsi`]: similarity-based matrix completion.
//! * [`retrieval`]: cosine ranking and interpolated average precision.
//! * [`corpus`]: SMART collection parsing and term-document construction.
//! * [`experiment`]: end-to-end retrieval runs over a collection.

pub mod cluster;
pub mod corpus;
pub mod error;
pub mod experiment;
pub mod fixtures;
pub mod graphs;
pub mod lsi;
pub mod matrix;
pub mod retrieval;

pub use error::{Error, Result};
pub use matrix::{ClusterLabels, DenseMatrix, SparseMatrix, SvdFactors};
