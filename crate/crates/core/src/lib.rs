//! Exact computations with bimodules over finite-dimensional algebras.
//!
//! The library implements the two tensor products of bimodules (the
//! coequalizer `⊗_A` and the equalizer `⊗^A`), the linear duality functor,
//! internal Homs and coHoms, the distributor maps relating the two tensor
//! products, and checks of their coherence. All arithmetic is exact.
//!
//! Everything is generic over [`Scalar`]; the aliases at the crate root fix
//! the rationals.

pub mod algebra;
pub mod corpus;
pub mod bimodule;
pub mod diagnostics;
pub mod distributor;
pub mod duality;
pub mod error;
pub mod ew;
pub mod linalg;
pub mod scalar;
pub mod tensor;

pub use algebra::{Algebra, AlgebraMorphism, AlgebraRef};
pub use bimodule::{Bimodule, BimoduleMap, IsoResult};
pub use error::{GvError, Result};
pub use linalg::{Matrix, Quotient, Subspace};
pub use scalar::{Fp, Rational, Scalar};

pub type QMatrix = Matrix<Rational>;
pub type QSubspace = Subspace<Rational>;
pub type QAlgebra = Algebra<Rational>;
pub type QBimodule = Bimodule<Rational>;
pub type QBimoduleMap = BimoduleMap<Rational>;
