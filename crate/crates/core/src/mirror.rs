//! Orbifold mirror map `(sigma1, sigma2) = (B_1(psi), B_2(psi))`, its
//! inversion, the genus-0 prepotential and the invariants `N_{0,k}`.
//!
//! The prepotential is fixed by `sigma2 = -3 dF0/dsigma1` with zero
//! integration constant, and
//!
//! ```text
//! F0(sigma1) = sum_k N_{0,k} sigma1^(3k) / (3k)!
//! ```
//!
//! The map is used at unit scale; `N_{0,1} = 1/3` is the normalization check.

use thiserror::Error;

use crate::arith::{factorial, Rational};
use crate::picard_fuchs::{bk_series, PicardFuchsError, PSI};
use crate::series::{Series, SeriesError};

pub const SIGMA1: &str = "sigma1";
pub const DEFAULT_WORKING_ORDER: usize = 60;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MirrorError {
    #[error("working order {order} too low: need at least {needed}")]
    InsufficientOrder { order: usize, needed: usize },
    #[error("invalid mirror frame: {0}")]
    InvalidFrame(&'static str),
    #[error(transparent)]
    PicardFuchs(#[from] PicardFuchsError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// The flat coordinates `sigma1`, `sigma2` as series in `psi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MirrorFrame {
    sigma1_of_psi: Series,
    sigma2_of_psi: Series,
    working_order: usize,
}

impl MirrorFrame {
    pub fn new(working_order: usize) -> Result<Self, MirrorError> {
        if working_order < 2 {
            return Err(MirrorError::InsufficientOrder {
                order: working_order,
                needed: 2,
            });
        }
        MirrorFrame::from_series(bk_series(1, working_order)?, bk_series(2, working_order)?)
    }

    /// Validates the frame invariants: `sigma1 = psi + O(psi^2)`, both in
    /// `psi`, same order, graded by `1` resp. `2 (mod 3)`.
    pub fn from_series(sigma1_of_psi: Series, sigma2_of_psi: Series) -> Result<Self, MirrorError> {
        if sigma1_of_psi.var() != PSI || sigma2_of_psi.var() != PSI {
            return Err(MirrorError::InvalidFrame(
                "both components must be series in psi",
            ));
        }
        if sigma1_of_psi.order() != sigma2_of_psi.order() {
            return Err(MirrorError::InvalidFrame(
                "components have different orders",
            ));
        }
        let lead = (sigma1_of_psi.coeff(0), sigma1_of_psi.coeff(1));
        if !(lead.0.is_some_and(Rational::is_zero) && lead.1.is_some_and(Rational::is_one)) {
            return Err(MirrorError::InvalidFrame(
                "sigma1 must start psi + O(psi^2)",
            ));
        }
        if sigma1_of_psi.terms().any(|(e, _)| e % 3 != 1) {
            return Err(MirrorError::InvalidFrame(
                "sigma1 must be supported on 1 mod 3",
            ));
        }
        if sigma2_of_psi.terms().any(|(e, _)| e % 3 != 2) {
            return Err(MirrorError::InvalidFrame(
                "sigma2 must be supported on 2 mod 3",
            ));
        }
        let working_order = sigma1_of_psi.order();
        Ok(MirrorFrame {
            sigma1_of_psi,
            sigma2_of_psi,
            working_order,
        })
    }

    pub fn sigma1_of_psi(&self) -> &Series {
        &self.sigma1_of_psi
    }

    pub fn sigma2_of_psi(&self) -> &Series {
        &self.sigma2_of_psi
    }

    pub fn working_order(&self) -> usize {
        self.working_order
    }

    /// `psi` as a series in `sigma1`.
    pub fn psi_of_sigma1(&self) -> Result<Series, MirrorError> {
        Ok(self.sigma1_of_psi.revert()?.rename(SIGMA1))
    }

    /// `sigma2` re-expanded in `sigma1`.
    pub fn sigma2_of_sigma1(&self) -> Result<Series, MirrorError> {
        Ok(self.sigma2_of_psi.compose(&self.psi_of_sigma1()?)?)
    }

    /// Genus-0 prepotential `F0(sigma1)`, certified through `working_order + 1`.
    pub fn prepotential(&self) -> Result<Series, MirrorError> {
        Ok(self
            .sigma2_of_sigma1()?
            .scale(&Rational::new(-1, 3))
            .integrate())
    }

    /// `N_{0,1..=kmax}` from `N_{0,k} = (3k)! [sigma1^{3k}] F0`.
    pub fn genus0_invariants(&self, kmax: usize) -> Result<Vec<Rational>, MirrorError> {
        let needed = 3 * kmax;
        if self.working_order < needed {
            return Err(MirrorError::InsufficientOrder {
                order: self.working_order,
                needed,
            });
        }
        let f0 = self.prepotential()?;
        Ok((1..=kmax)
            .map(|k| {
                let c = f0.coeff(3 * k).expect("order checked");
                c * Rational::from_integer(factorial(3 * k as u64))
            })
            .collect())
    }
}

/// One-modulus period matrix `tau = d^2 F0 / dsigma1^2`.
pub fn period_matrix_1d(f0: &Series) -> Result<Series, SeriesError> {
    f0.differentiate()?.differentiate()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn inversion_leading_terms() {
        let frame = MirrorFrame::new(12).unwrap();
        let psi = frame.psi_of_sigma1().unwrap();
        assert_eq!(psi.var(), SIGMA1);
        assert_eq!(psi.coeff(1), Some(&q("1")));
        assert!(psi.coeff(2).unwrap().is_zero());
        assert!(psi.coeff(3).unwrap().is_zero());
        assert_eq!(psi.coeff(4), Some(&q("1/648")));
    }

    #[test]
    fn inversion_is_two_sided() {
        let frame = MirrorFrame::new(40).unwrap();
        let psi = frame.psi_of_sigma1().unwrap();
        let id = frame.sigma1_of_psi().compose(&psi).unwrap();
        assert_eq!(id, Series::variable(SIGMA1, 40));
        let id = psi.rename(PSI).compose(frame.sigma1_of_psi()).unwrap();
        assert_eq!(id, Series::variable(PSI, 40));
    }

    #[test]
    fn prepotential_shape() {
        let frame = MirrorFrame::new(30).unwrap();
        let f0 = frame.prepotential().unwrap();
        assert_eq!(f0.order(), 31);
        assert_eq!(f0.coeff(3), Some(&q("1/18")));
        assert!(f0.terms().all(|(e, _)| e % 3 == 0));
        assert!(f0.coeff(0).unwrap().is_zero());
    }

    #[test]
    fn genus0_first_four() {
        let frame = MirrorFrame::new(DEFAULT_WORKING_ORDER).unwrap();
        let n = frame.genus0_invariants(4).unwrap();
        assert_eq!(n, vec![q("1/3"), q("-1/27"), q("1/9"), q("-1093/729")]);
    }

    #[test]
    fn genus0_needs_order() {
        let frame = MirrorFrame::new(10).unwrap();
        assert_eq!(
            frame.genus0_invariants(4),
            Err(MirrorError::InsufficientOrder {
                order: 10,
                needed: 12
            })
        );
        assert!(frame.genus0_invariants(3).is_ok());
    }

    #[test]
    fn frame_validation() {
        let b1 = bk_series(1, 10).unwrap();
        let b2 = bk_series(2, 10).unwrap();
        assert!(MirrorFrame::from_series(b1.clone(), b2.clone()).is_ok());
        assert!(MirrorFrame::from_series(b1.scale(&q("2")), b2.clone()).is_err());
        assert!(MirrorFrame::from_series(b2.clone(), b1.clone()).is_err());
        assert!(MirrorFrame::from_series(b1.rename("x"), b2.clone()).is_err());
        assert!(MirrorFrame::from_series(b1.truncate(8), b2).is_err());
    }

    #[test]
    fn period_matrix_examples() {
        let f0 = Series::monomial(SIGMA1, q("1/18"), 3, 10);
        assert_eq!(
            period_matrix_1d(&f0).unwrap(),
            Series::monomial(SIGMA1, q("1/3"), 1, 8)
        );
        assert!(period_matrix_1d(&Series::zero(SIGMA1, 5))
            .unwrap()
            .is_zero());
        let f0 = MirrorFrame::new(15).unwrap().prepotential().unwrap();
        assert_eq!(
            period_matrix_1d(&f0).unwrap(),
            f0.differentiate().unwrap().differentiate().unwrap()
        );
    }
}
