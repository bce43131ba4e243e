pub mod cli;
pub mod identities;
pub mod mellin;
pub mod primes;
pub mod series;
pub mod specfun;
