//! Pairs of nested finite equivalence relations on a common ground set, the
//! shape invariants that classify them up to simultaneous reduction,
//! embedding and isomorphism, and brute-force oracles to check against.

pub mod cardinal;
pub mod construct;
pub mod decide;
pub mod error;
pub mod oracle;
pub mod relation;
pub mod shapes;
pub mod witness;
pub mod wpo;

pub use cardinal::Cardinal;
pub use construct::{build_shape_pair, orbit_pair, random_pair, Permutation, Profile};
pub use decide::{decide_embedding, decide_isomorphism, decide_reduction, Decision};
pub use error::{Error, Result};
pub use relation::{FinEqRel, FinPair};
pub use shapes::{LocalCoarseShape, LocalFineShape, Position, ShapeSeq};
pub use witness::{verify_witness, Witness, WitnessMode};
