//! Littlewood–Richardson coefficients equal to 0 or 1, Horn inequalities and
//! the eigencones of compact groups of types A, B and C.

pub mod cli;
pub mod eigencone;
pub mod error;
pub mod islr01;
pub mod lp;
pub mod lr_oracle;
pub mod quiver;
pub mod schubert;
pub mod weights;

pub use eigencone::{DominantSpectrum, EigenconeInequality};
pub use error::{Error, Result};
pub use islr01::{is_lr_01, Classifier, HornWitness, TraceStep};
pub use lr_oracle::{lr_coefficient, triple_coefficient, LrClass};
pub use quiver::{dense_orbit, OrbitDecision, QuiverInstance};
pub use schubert::GroupType;
pub use weights::{GlWeight, IndexSet, WeightTriple};
