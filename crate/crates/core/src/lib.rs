//! Exact symbolic calculator for the combinatorics of Harris-Taylor local
//! systems: Zelevinsky multisegments, mod-l reduction rules, the transfer maps
//! red_tau, the cohomology diagrams m and n, Grothendieck-group cohomology
//! tables, and a congruence/torsion certificate engine over symbolic spectra.

pub mod coeff;
pub mod cohomology;
pub mod diagrams;
pub mod error;
pub mod geometry;
pub mod halfint;
pub mod io;
pub mod jl_red;
pub mod label;
pub mod lin;
pub mod modl;
pub mod render;
pub mod segments;
pub mod sym;
pub mod verify;

pub use coeff::Coeff;
pub use error::{Error, Result};
pub use halfint::HalfInt;
pub use label::{GrothElement, IrreducibleLabel, Term};
pub use segments::{CuspidalLabel, Cusps, Multisegment, Segment, Twist};
