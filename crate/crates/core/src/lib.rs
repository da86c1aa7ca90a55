pub mod catalogue;
pub mod group;
pub mod standard;
pub mod xmod;
pub mod limits;
pub mod free;
pub mod embedding;
pub mod session;
