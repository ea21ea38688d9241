pub mod exact;
pub mod udg;
pub mod bounds;
pub mod constructions;
pub mod drawings;
pub mod case15;
