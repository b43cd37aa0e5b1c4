//! Hodge-integral route to the unpointed invariants of `[C^3/Z3]`.
//!
//! The unpointed invariant splits as a disconnected-cover part, an
//! equivariant integral over `M_g` of `prod_i Lambda^vee(t_i)` divided by
//! `3 t1 t2 t3`, plus a connected-cover part proportional to
//! `int lambda_{g-1,w}^3`. With `Lambda^vee(t) = sum_j (-1)^j lambda_j t^(g-j)`
//! and Calabi-Yau weights (`e1 = t1 + t2 + t3 = 0`) the disc integrand reduces
//! to a multiple of `lambda_g lambda_{g-1} lambda_{g-2}`, whose integral is
//! known in closed form.

use std::collections::BTreeMap;

use log::debug;
use thiserror::Error;

use crate::algebra::{
    g_mumford_relations, is_zero_in_quotient, mumford_relations, reduce, Generator, LambdaPoly,
    Monomial,
};
use crate::arith::{bernoulli, factorial, Rational};
use crate::Unsupported;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HodgeError {
    #[error("genus {0} out of range (need g >= 2)")]
    GenusOutOfRange(u32),
    #[error("weight-dependent disc integrand at genus {0}")]
    WeightDependent(u32),
    #[error("input is not a symmetric polynomial in t1, t2, t3")]
    NonSymmetric,
}

/// Either an exact value or a typed reason the value is out of reach.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Exact(Rational),
    Unsupported(Unsupported),
}

impl Outcome {
    pub fn exact(&self) -> Option<&Rational> {
        match self {
            Outcome::Exact(v) => Some(v),
            Outcome::Unsupported(_) => None,
        }
    }
}

fn check_genus(g: u32) -> Result<(), HodgeError> {
    if g < 2 {
        Err(HodgeError::GenusOutOfRange(g))
    } else {
        Ok(())
    }
}

type TExp = [u32; 3];

/// Polynomial in the torus weights `t1, t2, t3` with lambda-class coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WeightedClassPoly {
    terms: BTreeMap<TExp, LambdaPoly>,
}

impl WeightedClassPoly {
    pub fn from_terms(terms: impl IntoIterator<Item = (TExp, LambdaPoly)>) -> Self {
        let mut out = WeightedClassPoly::default();
        for (e, p) in terms {
            out.add_term(e, &p);
        }
        out
    }

    fn add_term(&mut self, e: TExp, p: &LambdaPoly) {
        let sum = self.terms.get(&e).map_or_else(|| p.clone(), |q| q.add(p));
        if sum.is_zero() {
            self.terms.remove(&e);
        } else {
            self.terms.insert(e, sum);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TExp, &LambdaPoly)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn mul(&self, other: &WeightedClassPoly) -> WeightedClassPoly {
        let mut out = WeightedClassPoly::default();
        for (e1, p1) in &self.terms {
            for (e2, p2) in &other.terms {
                let e = [e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]];
                out.add_term(e, &p1.mul(p2));
            }
        }
        out
    }

    /// Keep only the lambda-degree `d` part of every coefficient.
    pub fn lambda_degree_part(&self, d: u32) -> WeightedClassPoly {
        WeightedClassPoly::from_terms(self.terms.iter().map(|(e, p)| (*e, p.homogeneous_part(d))))
    }

    /// `Lambda^vee(t_i) = sum_j (-1)^j lambda_j t_i^(g-j)` with `lambda_0 = 1`.
    pub fn dual_chern(g: u32, i: usize) -> WeightedClassPoly {
        WeightedClassPoly::from_terms((0..=g).map(|j| {
            let mut e = [0; 3];
            e[i] = g - j;
            let class = if j == 0 {
                LambdaPoly::constant(Rational::one())
            } else {
                LambdaPoly::generator(Generator::Lambda(j))
            };
            (e, class.scale(&Rational::sign_power(j as i64)))
        }))
    }

    /// `prod_{i=1..3} Lambda^vee(t_i)` at genus `g`.
    pub fn disc_integrand(g: u32) -> WeightedClassPoly {
        (0..3)
            .map(|i| WeightedClassPoly::dual_chern(g, i))
            .reduce(|a, b| a.mul(&b))
            .expect("three factors")
    }
}

/// Coefficients in the basis `e1^a e2^b e3^c`, keyed by `[a, b, c]`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SymmetricDecomposition {
    coefficients: BTreeMap<TExp, LambdaPoly>,
}

fn elementary_monomial(key: TExp) -> BTreeMap<TExp, Rational> {
    let e1 = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    let e2 = [[1, 1, 0], [1, 0, 1], [0, 1, 1]];
    let e3 = [[1, 1, 1]];
    let mut acc: BTreeMap<TExp, Rational> = BTreeMap::from([([0, 0, 0], Rational::one())]);
    let factors: [&[TExp]; 3] = [&e1, &e2, &e3];
    for (factor, &power) in factors.iter().zip(key.iter()) {
        for _ in 0..power {
            let mut next: BTreeMap<TExp, Rational> = BTreeMap::new();
            for (e, c) in &acc {
                for f in factor.iter() {
                    let k = [e[0] + f[0], e[1] + f[1], e[2] + f[2]];
                    *next.entry(k).or_insert_with(Rational::zero) += c;
                }
            }
            acc = next;
        }
    }
    acc
}

impl SymmetricDecomposition {
    /// Iterated leading-term subtraction in lex order on `(t1, t2, t3)`.
    pub fn decompose(poly: &WeightedClassPoly) -> Result<Self, HodgeError> {
        let mut rest = poly.clone();
        let mut coefficients = BTreeMap::new();
        // each step removes the lex-leading monomial and adds only smaller ones
        let budget = poly.terms.len() * poly.terms.len() + 16;
        for _ in 0..budget {
            let Some((&lead, c)) = rest.terms.iter().next_back() else {
                return Ok(SymmetricDecomposition { coefficients });
            };
            let c = c.clone();
            let [a, b, d] = lead;
            if !(a >= b && b >= d) {
                return Err(HodgeError::NonSymmetric);
            }
            let key = [a - b, b - d, d];
            for (e, k) in elementary_monomial(key) {
                rest.add_term(e, &c.scale(&-k));
            }
            coefficients.insert(key, c);
        }
        Err(HodgeError::NonSymmetric)
    }

    pub fn coefficients(&self) -> impl Iterator<Item = (&TExp, &LambdaPoly)> {
        self.coefficients.iter()
    }

    pub fn coefficient(&self, key: TExp) -> LambdaPoly {
        self.coefficients.get(&key).cloned().unwrap_or_default()
    }

    pub fn recompose(&self) -> WeightedClassPoly {
        let mut out = WeightedClassPoly::default();
        for (key, c) in &self.coefficients {
            for (e, k) in elementary_monomial(*key) {
                out.add_term(e, &c.scale(&k));
            }
        }
        out
    }

    /// Drop every basis element containing `e1`.
    pub fn calabi_yau(&self) -> SymmetricDecomposition {
        SymmetricDecomposition {
            coefficients: self
                .coefficients
                .iter()
                .filter(|(k, _)| k[0] == 0)
                .map(|(k, c)| (*k, c.clone()))
                .collect(),
        }
    }
}

/// `int_{M_g} lambda_g lambda_{g-1} lambda_{g-2}`.
pub fn fp_integral(g: u32) -> Result<Rational, HodgeError> {
    check_genus(g)?;
    let g = g as usize;
    let b_low = bernoulli(2 * g - 2).abs() / Rational::from(2 * g - 2);
    let b_top = bernoulli(2 * g).abs() / Rational::from(2 * g);
    let pre = Rational::from_integer(factorial(2 * g as u64 - 2) * 2u32).recip();
    Ok(pre * b_low * b_top)
}

/// Disc integrand after CY specialization, division by `e3` and Mumford reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscReduction {
    pub genus: u32,
    pub pre_reduction: LambdaPoly,
    pub reduced: LambdaPoly,
    pub weight_check: bool,
    /// `reduced = c * NF(lambda_g lambda_{g-1} lambda_{g-2})`, when proportional.
    pub coefficient: Option<Rational>,
}

fn top_monomial(g: u32) -> LambdaPoly {
    LambdaPoly::term(
        Rational::one(),
        Monomial::from_powers(
            (g - 2..=g)
                .filter(|&i| i > 0)
                .map(|i| (Generator::Lambda(i), 1)),
        ),
    )
}

fn proportionality(p: &LambdaPoly, basis: &LambdaPoly) -> Option<Rational> {
    if p.is_zero() {
        return Some(Rational::zero());
    }
    let (m, b) = basis.leading()?;
    let c = p.coeff(m) / b.clone();
    (basis.scale(&c) == *p).then_some(c)
}

pub fn disc_integrand_reduction(g: u32) -> Result<DiscReduction, HodgeError> {
    check_genus(g)?;
    let top = 3 * g - 3;
    let full = WeightedClassPoly::disc_integrand(g);
    let (mut above, mut below) = (0usize, 0usize);
    for (_, p) in full.terms() {
        for (m, _) in p.terms() {
            match m.degree().cmp(&top) {
                std::cmp::Ordering::Greater => above += 1,
                std::cmp::Ordering::Less => below += 1,
                std::cmp::Ordering::Equal => {}
            }
        }
    }
    debug!("genus {g}: discarded {above} terms above and {below} below lambda-degree {top}");
    let piece = full.lambda_degree_part(top);
    debug_assert!(piece.terms().all(|(e, _)| e.iter().sum::<u32>() == 3));

    let cy = SymmetricDecomposition::decompose(&piece)?.calabi_yau();
    let weight_check = cy.coefficients().all(|(k, _)| *k == [0, 0, 1]);
    if !weight_check {
        return Err(HodgeError::WeightDependent(g));
    }
    let pre_reduction = cy.coefficient([0, 0, 1]);
    let rel = mumford_relations(g).expect("g >= 2");
    let reduced = reduce(&pre_reduction, &rel);
    let coefficient = proportionality(&reduced, &reduce(&top_monomial(g), &rel));
    Ok(DiscReduction {
        genus: g,
        pre_reduction,
        reduced,
        weight_check,
        coefficient,
    })
}

/// Connected-cover part: zero when `lambda_{g-1,w}^3` vanishes in the
/// G-Mumford quotient, otherwise out of reach.
pub fn conn_contribution(g: u32) -> Result<Outcome, HodgeError> {
    check_genus(g)?;
    let cube = LambdaPoly::generator(Generator::Omega(g - 1)).pow(3);
    let rel = g_mumford_relations(g).expect("g >= 2");
    if is_zero_in_quotient(&cube, &rel) {
        Ok(Outcome::Exact(Rational::zero()))
    } else {
        Ok(Outcome::Unsupported(Unsupported::NonzeroZ3HodgeIntegral {
            genus: g,
        }))
    }
}

/// `(1/3) c fp(g) + conn(g)`.
pub fn unpointed_invariant(g: u32) -> Result<Outcome, HodgeError> {
    let conn = match conn_contribution(g)? {
        Outcome::Exact(v) => v,
        unsupported => return Ok(unsupported),
    };
    let disc = disc_integrand_reduction(g)?;
    let Some(c) = disc.coefficient else {
        return Ok(Outcome::Unsupported(
            Unsupported::NonProportionalReduction { genus: g },
        ));
    };
    Ok(Outcome::Exact(
        Rational::new(1, 3) * c * fp_integral(g)? + conn,
    ))
}

/// Constant-map contribution `(-1)^g chi int lambda_g lambda_{g-1} lambda_{g-2}`.
pub fn constant_map_invariant(g: u32, chi: &Rational) -> Result<Rational, HodgeError> {
    Ok(Rational::sign_power(g as i64) * chi * fp_integral(g)?)
}

/// `(1 - g)(dim X - 3) - K_X . beta + n`.
pub fn expected_dimension(g: i64, n: i64, dim_x: i64, k_dot_beta: i64) -> i64 {
    (1 - g) * (dim_x - 3) - k_dot_beta + n
}

/// Degree `3^(2g) / 3` of the forgetful map from Z3-covers.
pub fn cover_map_degree(g: u32) -> Rational {
    Rational::from(3).pow(2 * g as i32) / Rational::from(3)
}
