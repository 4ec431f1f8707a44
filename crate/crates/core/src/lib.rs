//! Exact computations around approximate and exact power-series solutions
//! of textile maps.

pub mod exactfield;
pub mod multipoly;
pub mod groebner;
pub mod textile;
pub mod approxchain;
