//! Picard-Fuchs operator at the orbifold point and its two nonconstant
//! holomorphic solutions `B_1`, `B_2`.
//!
//! The solutions are taken in the normalization
//!
//! ```text
//! B_k(psi) = sum_n (-1)^(n+k+1) psi^(3n+k) / (3n+k)! * prod_{j<n} ((3j+k)/3)^3
//! ```
//!
//! In this coordinate the annihilating operator is
//! `psi^3 T^3 + 27 (T-2)(T-1) T` with `T = psi d/dpsi`. The same operator
//! written as `x^3 T^3 - (T-2)(T-1) T` lives in `x = -psi/3`; both forms are
//! available and the tests check each against the solutions in its own
//! coordinate.
//!
//! Under the monodromy `psi -> e^{2 pi i/3} psi` each `B_k` picks up
//! `e^{2 pi i k/3}`: it is supported on exponents `= k (mod 3)`.

use thiserror::Error;

use crate::arith::{factorial, rising_cubed_ratio, Rational};
use crate::series::Series;

pub const PSI: &str = "psi";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PicardFuchsError {
    #[error("solution index k must be 1 or 2, got {0}")]
    BadIndex(i64),
    #[error("truncation order {order} is below the leading exponent {k}")]
    OrderTooLow { k: i64, order: usize },
}

fn check_k(k: i64) -> Result<(), PicardFuchsError> {
    if k == 1 || k == 2 {
        Ok(())
    } else {
        Err(PicardFuchsError::BadIndex(k))
    }
}

/// `B_k(psi)` through `psi^order`, straight from the closed form.
pub fn bk_series(k: i64, order: usize) -> Result<Series, PicardFuchsError> {
    check_k(k)?;
    if order < k as usize {
        return Err(PicardFuchsError::OrderTooLow { k, order });
    }
    let terms = (0u64..)
        .map(|n| (n, 3 * n as usize + k as usize))
        .take_while(|&(_, e)| e <= order)
        .map(|(n, e)| {
            let ratio = rising_cubed_ratio(n, k).expect("k checked above");
            let c = Rational::sign_power(n as i64 + k + 1) * ratio
                / Rational::from_integer(factorial(e as u64));
            (e, c)
        });
    Ok(Series::from_terms(PSI, order, terms))
}

/// `psi^3 T^3 f + 27 (T-2)(T-1) T f`, truncated at the order of `f`.
pub fn apply_pf_operator(f: &Series) -> Series {
    let t1 = f.theta();
    let t2 = t1.theta();
    let t3 = t2.theta();
    let lifted = t3.shift_up(3);
    lowering_part(&t1, &t2, &t3)
        .scale(&Rational::from(27))
        .add(&lifted)
        .expect("same variable")
}

/// The operator as displayed in the `x = -psi/3` coordinate:
/// `x^3 T^3 f - (T-2)(T-1) T f`.
pub fn apply_displayed_pf_operator(f: &Series) -> Series {
    let t1 = f.theta();
    let t2 = t1.theta();
    let t3 = t2.theta();
    t3.shift_up(3)
        .sub(&lowering_part(&t1, &t2, &t3))
        .expect("same variable")
}

// (T-2)(T-1)T = T^3 - 3T^2 + 2T
fn lowering_part(t1: &Series, t2: &Series, t3: &Series) -> Series {
    t3.sub(&t2.scale(&Rational::from(3)))
        .and_then(|s| s.add(&t1.scale(&Rational::from(2))))
        .expect("same variable")
}

/// `B_k` rebuilt from the coefficient recurrence of [`apply_pf_operator`]:
///
/// `27 m(m-1)(m-2) a_m + (m-3)^3 a_{m-3} = 0`, seeded with
/// `a_k = (-1)^(k+1)/k!` and zero elsewhere below `k + 3`.
pub fn bk_via_recurrence(k: i64, order: usize) -> Result<Series, PicardFuchsError> {
    check_k(k)?;
    let k = k as usize;
    if order < k {
        return Err(PicardFuchsError::OrderTooLow { k: k as i64, order });
    }
    let mut a = vec![Rational::zero(); order + 1];
    a[k] = Rational::sign_power(k as i64 + 1) / Rational::from_integer(factorial(k as u64));
    for m in (k + 3..=order).step_by(3) {
        let denom = 27 * m * (m - 1) * (m - 2);
        debug_assert!(denom != 0);
        let lift = Rational::from(m - 3).pow(3);
        a[m] = -(&a[m - 3] * lift) / Rational::from(denom);
    }
    Ok(Series::new(PSI, a))
}
