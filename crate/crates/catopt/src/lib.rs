pub mod boxes;
pub mod catalog;
pub mod cli;
pub mod contract;
pub mod expr;
pub mod interval;
pub mod parse;
pub mod plot;
pub mod probfile;
pub mod problem;
pub mod solver;
pub mod trace;
