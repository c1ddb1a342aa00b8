//! Exact arithmetic for Hopf algebras in braided monoidal categories: the
//! paracocyclic object attached to a modular pair, traces of module coalgebras,
//! and cyclic homology of truncated (co)cyclic vector spaces.
//!
//! Everything is generic over [`scalar::Field`]; the aliases below fix the two
//! shipped fields.

pub mod braided;
pub mod builtins;
pub mod cm;
pub mod error;
pub mod homology;
pub mod hopf;
pub mod lemmas;
pub mod linalg;
pub mod report;
pub mod scalar;
pub mod simplicial;
pub mod tensor;
pub mod traces;

pub use error::{Error, Result};
pub use scalar::{Cyclotomic, Field, FieldSpec, Rational};

pub type QMor = tensor::Mor<Rational>;
pub type QHopf = hopf::HopfAlgebra<Rational>;
pub type QPair = cm::ModularPair<Rational>;
pub type CycMor = tensor::Mor<Cyclotomic>;
pub type CycHopf = hopf::HopfAlgebra<Cyclotomic>;
pub type CycPair = cm::ModularPair<Cyclotomic>;
pub type CycParaCocyclic = simplicial::ParaCocyclicData<Cyclotomic>;
pub type CycModule = simplicial::CyclicModuleData<Cyclotomic>;
