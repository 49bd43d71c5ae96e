pub mod error;
pub mod interval;
pub mod rational;
pub mod gamma;
pub mod series;
pub mod lemmas;
pub mod sums;
pub mod par;
pub mod eval;
pub mod verify;
pub mod suite;
