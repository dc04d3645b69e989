//! Finite racks and quandles: validation, structure, canonical forms,
//! isomorph-free enumeration, morphism counting and arithmetic in the
//! Burnside ring of racks.

pub mod burnside;
pub mod canonical;
pub mod cli;
pub mod crossed;
pub mod cycles;
pub mod enumerate;
pub mod error;
pub mod group;
pub mod io;
pub mod marks;
pub mod perm;
pub mod permgroup;
pub mod rack;
pub mod structure;

pub use burnside::{BurnsideElement, ClassId, ClassRegistry};
pub use canonical::{are_isomorphic, canonical_form, canonical_key, CanonicalKey};
pub use crossed::{CrossedAction, CrossedGSet};
pub use cycles::CycleVector;
pub use error::{Error, Result};
pub use group::FinGroup;
pub use perm::Perm;
pub use permgroup::PermGroup;
pub use rack::{RackTable, Subset};
