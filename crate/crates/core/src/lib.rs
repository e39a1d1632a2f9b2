//! Seifert surface genus and fibredness for the three-component links obtained
//! by doubling one component of a two-bridge link, and for their satellites.

pub mod analysis;
pub mod check;
pub mod derivation;
pub mod gen;
pub mod linkword;
pub mod surface;
pub mod sutured;
