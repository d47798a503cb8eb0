pub mod cli;
pub mod discrepancies;
pub mod expr;
pub mod geometry;
pub mod jet;
pub mod numeric;
pub mod operator;
pub mod reductions;
pub mod symmetry;
