pub mod budget;
pub mod catalog;
pub mod discharge;
pub mod embed;
pub mod generators;
pub mod reducer;
pub mod solvers;
