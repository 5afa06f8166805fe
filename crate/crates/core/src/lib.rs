pub mod construct;
pub mod diagram;
pub mod dt;
pub mod identify;
pub mod invariant;
pub mod moves;
pub mod poly;
pub mod sample;
pub mod spectrum;
pub mod table;
pub mod trace;
pub mod word;
