//! Exact symbolic machinery for constructing candidate set-theoretic defining
//! equations of Segre products and certifying, by Gröbner-basis radical
//! membership plus finite-field zero-locus enumeration, that each candidate
//! set cuts out the right variety.

pub mod field;
pub mod poly;
pub mod textform;
pub mod groebner;
pub mod segre;
pub mod flex;
pub mod verify;
pub mod cli;
