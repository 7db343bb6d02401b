//! Griffiths-Dwork reduction on the Cox ring: Jacobian-ideal membership,
//! pole-order reduction of rational forms and the Picard-Fuchs operator.

pub mod engine;
pub mod form;
pub mod orbits;
pub mod picard_fuchs;
pub mod system;
pub mod witness;

pub use engine::{jacobian_partials, Engine};
pub use form::{reduce_fully, reduce_pole_order, RationalForm};
pub use picard_fuchs::{picard_fuchs, picard_fuchs_for, PicardFuchsOptions, PicardFuchsResult, TraceStep};
pub use witness::{ideal_membership, MembershipWitness};
