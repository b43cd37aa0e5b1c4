//! Strategies and property bodies shared by the property suite and the
//! acceptance target.

#![allow(dead_code)]

use c3z3::algebra::{reduce, Generator, LambdaPoly, Monomial, RelationSet};
use c3z3::arith::{binomial, Rational};
use c3z3::series::Series;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=6).prop_map(|(p, q)| Rational::new(p, q))
}

pub fn nonzero_rational() -> impl Strategy<Value = Rational> {
    small_rational().prop_filter("nonzero", |r| !r.is_zero())
}

/// Dense series with small rational coefficients.
pub fn series(var: &'static str, order: usize) -> impl Strategy<Value = Series> {
    proptest::collection::vec(small_rational(), order + 1).prop_map(move |c| Series::new(var, c))
}

/// `a x + (a few sparse higher terms)`, `a != 0`, through `x^order`.
pub fn invertible_series(order: usize) -> impl Strategy<Value = Series> {
    (
        nonzero_rational(),
        proptest::collection::vec((2..=order, small_rational()), 0..4),
    )
        .prop_map(move |(a, rest)| {
            let mut c = vec![Rational::zero(); order + 1];
            c[1] = a;
            for (e, v) in rest {
                c[e] = v;
            }
            Series::new("x", c)
        })
}

/// Random polynomial in `gens` with at most `terms` terms and exponents below `max_exp`.
pub fn lambda_poly(
    gens: Vec<Generator>,
    terms: usize,
    max_exp: u32,
) -> impl Strategy<Value = LambdaPoly> {
    let n = gens.len();
    proptest::collection::vec(
        (nonzero_rational(), proptest::collection::vec(0..max_exp, n)),
        1..=terms,
    )
    .prop_map(move |ts| {
        LambdaPoly::from_terms(
            ts.into_iter()
                .map(|(c, exps)| (Monomial::from_powers(gens.iter().copied().zip(exps)), c)),
        )
    })
}

pub fn revert_round_trip(f: &Series) -> Result<(), TestCaseError> {
    let g = f.revert().map_err(|e| TestCaseError::fail(e.to_string()))?;
    let id = Series::variable("x", f.order());
    prop_assert_eq!(f.compose(&g).unwrap(), id.clone());
    prop_assert_eq!(g.compose(f).unwrap(), id);
    Ok(())
}

pub fn theta_leibniz(f: &Series, g: &Series) -> Result<(), TestCaseError> {
    let lhs = f.mul(g).unwrap().theta();
    let rhs = f
        .theta()
        .mul(g)
        .unwrap()
        .add(&f.mul(&g.theta()).unwrap())
        .unwrap();
    prop_assert_eq!(lhs, rhs);
    Ok(())
}

/// Normal form does not depend on the order the relations are listed in.
pub fn reduction_order_independent(
    p: &LambdaPoly,
    rel: &RelationSet,
    perm: &[usize],
) -> Result<(), TestCaseError> {
    prop_assert_eq!(reduce(p, rel), reduce(p, &rel.with_relation_order(perm)));
    Ok(())
}

/// The eigenbundle ideal is stable under `w <-> wb`.
pub fn swap_symmetry(p: &LambdaPoly, rel: &RelationSet) -> Result<(), TestCaseError> {
    // same ideal, so same normal form
    prop_assert_eq!(reduce(p, &rel.swap_families()), reduce(p, rel));
    // membership is swap invariant
    let diff = p.sub(&reduce(p, rel));
    prop_assert!(reduce(&diff.swap_families(), rel).is_zero());
    prop_assert_eq!(
        reduce(p, rel).is_zero(),
        reduce(&p.swap_families(), rel).is_zero()
    );
    Ok(())
}

/// Akiyama-Tanigawa algorithm; yields `B_1 = +1/2`.
pub fn akiyama_tanigawa(n: usize) -> Rational {
    let mut a: Vec<Rational> = (0..=n).map(|m| Rational::new(1, m as i64 + 1)).collect();
    for m in 0..=n {
        a[m] = Rational::new(1, m as i64 + 1);
        for j in (1..=m).rev() {
            a[j - 1] = Rational::from(j) * (&a[j - 1] - &a[j]);
        }
    }
    a[0].clone()
}

/// Bernoulli numbers in the `B_1 = -1/2` convention from the oracle above.
pub fn bernoulli_oracle(n: usize) -> Rational {
    let b = akiyama_tanigawa(n);
    if n == 1 {
        -b
    } else {
        b
    }
}

/// Independent check that `b` satisfies the defining recurrence up to `n`.
pub fn bernoulli_recurrence_holds(b: &[Rational]) -> bool {
    (1..b.len()).all(|m| {
        let s: Rational = (0..=m)
            .map(|j| Rational::from_integer(binomial(m as u64 + 1, j as u64)) * &b[j])
            .sum();
        s.is_zero()
    })
}
