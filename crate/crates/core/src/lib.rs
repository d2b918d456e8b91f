pub mod catalogue;
pub mod checkers;
pub mod cli;
pub mod domains;
pub mod error;
pub mod factorization;
pub mod generators;
pub mod hierarchy;
pub mod words;
