//! Exact computations for the Z3 orbifold of the local CY3 `C^3/Z3`.

use std::fmt;

pub mod algebra;
pub mod anomaly;
pub mod arith;
pub mod cli;
pub mod hodge;
pub mod mirror;
pub mod picard_fuchs;
pub mod reference;
pub mod series;

/// A quantity this crate can state but not evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Unsupported {
    /// `lambda_{g-1,w}^3` survives the eigenbundle relations.
    NonzeroZ3HodgeIntegral { genus: u32 },
    /// The reduced disc integrand is not a multiple of the top basis class.
    NonProportionalReduction { genus: u32 },
    /// The anomaly recursion is only implemented at genus 2.
    HigherGenusAnomaly { genus: u32 },
}

impl fmt::Display for Unsupported {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Unsupported::NonzeroZ3HodgeIntegral { .. } => write!(f, "nonzero Z3-Hodge integral"),
            Unsupported::NonProportionalReduction { genus } => {
                write!(f, "disc reduction at genus {genus} not proportional to lambda_g lambda_(g-1) lambda_(g-2)")
            }
            Unsupported::HigherGenusAnomaly { genus } => {
                write!(f, "anomaly recursion at genus {genus}")
            }
        }
    }
}
