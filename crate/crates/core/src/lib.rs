pub mod cd_algebra;
pub mod cli;
pub mod codes;
pub mod harness;
pub mod numeric;
pub mod residue;
pub mod search;
pub mod vring;
