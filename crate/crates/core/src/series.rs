//! Truncated univariate power series over [`Rational`].
//!
//! A [`Series`] of order `N` stores exactly the coefficients of `x^0..=x^N`;
//! everything above `N` is unknown (not zero). Operations propagate the
//! order so that a result never claims a coefficient it cannot certify:
//!
//! * `add`, `sub`, `scale`, `mul`: `min(N1, N2)`
//! * `theta`: unchanged; `differentiate`: `N - 1`; `integrate`: `N + 1`
//! * `compose(f, g)`: `min(N_f, N_g)`; `revert(f)`: `N_f`
//!
//! Variable tags are compared, never inferred. Binary operations require
//! equal tags; `compose` and `revert` leave relabelling to [`Series::rename`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{ArithError, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("variable mismatch: {left:?} vs {right:?}")]
    VariableMismatch { left: String, right: String },
    #[error("inner series has nonzero constant term {0}")]
    NonzeroConstant(Rational),
    #[error("series has zero linear coefficient and cannot be reverted")]
    ZeroLinearCoefficient,
    #[error("series of order 0 has no certified derivative")]
    OrderExhausted,
    #[error("malformed series text: {0}")]
    Parse(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

#[derive(Clone, PartialEq, Eq)]
pub struct Series {
    var: String,
    coeffs: Vec<Rational>,
}

impl Series {
    /// Series from dense coefficients `a_0..=a_N`; the order is `len - 1`.
    ///
    /// # Panics
    /// If `coeffs` is empty.
    pub fn new(var: impl Into<String>, coeffs: Vec<Rational>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a series needs at least the constant coefficient"
        );
        Series {
            var: var.into(),
            coeffs,
        }
    }

    pub fn zero(var: impl Into<String>, order: usize) -> Self {
        Series::new(var, vec![Rational::zero(); order + 1])
    }

    pub fn constant(var: impl Into<String>, c: Rational, order: usize) -> Self {
        let mut s = Series::zero(var, order);
        s.coeffs[0] = c;
        s
    }

    /// `c * x^exp + O(x^{order+1})`; the monomial is dropped if `exp > order`.
    pub fn monomial(var: impl Into<String>, c: Rational, exp: usize, order: usize) -> Self {
        let mut s = Series::zero(var, order);
        if exp <= order {
            s.coeffs[exp] = c;
        }
        s
    }

    /// The identity series `x` at the given order (`order >= 1`).
    pub fn variable(var: impl Into<String>, order: usize) -> Self {
        Series::monomial(var, Rational::one(), 1, order)
    }

    /// Sparse construction from `(exponent, coefficient)` pairs.
    pub fn from_terms(
        var: impl Into<String>,
        order: usize,
        terms: impl IntoIterator<Item = (usize, Rational)>,
    ) -> Self {
        let mut s = Series::zero(var, order);
        for (e, c) in terms {
            if e <= order {
                s.coeffs[e] += c;
            }
        }
        s
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^exp`, or `None` beyond the certified order.
    pub fn coeff(&self, exp: usize) -> Option<&Rational> {
        self.coeffs.get(exp)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Nonzero `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn rename(&self, var: impl Into<String>) -> Series {
        Series {
            var: var.into(),
            coeffs: self.coeffs.clone(),
        }
    }

    /// Forget coefficients above `order` (no-op if already lower).
    pub fn truncate(&self, order: usize) -> Series {
        let n = order.min(self.order());
        Series {
            var: self.var.clone(),
            coeffs: self.coeffs[..=n].to_vec(),
        }
    }

    fn check_var(&self, other: &Series) -> Result<(), SeriesError> {
        if self.var != other.var {
            return Err(SeriesError::VariableMismatch {
                left: self.var.clone(),
                right: other.var.clone(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Series) -> Result<Series, SeriesError> {
        self.check_var(other)?;
        let n = self.order().min(other.order());
        let coeffs = (0..=n)
            .map(|i| &self.coeffs[i] + &other.coeffs[i])
            .collect();
        Ok(Series {
            var: self.var.clone(),
            coeffs,
        })
    }

    pub fn sub(&self, other: &Series) -> Result<Series, SeriesError> {
        self.check_var(other)?;
        let n = self.order().min(other.order());
        let coeffs = (0..=n)
            .map(|i| &self.coeffs[i] - &other.coeffs[i])
            .collect();
        Ok(Series {
            var: self.var.clone(),
            coeffs,
        })
    }

    pub fn scale(&self, c: &Rational) -> Series {
        Series {
            var: self.var.clone(),
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn neg(&self) -> Series {
        Series {
            var: self.var.clone(),
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    /// Cauchy product.
    pub fn mul(&self, other: &Series) -> Result<Series, SeriesError> {
        self.check_var(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Series) -> Series {
        let n = self.order().min(other.order());
        let mut out = vec![Rational::zero(); n + 1];
        for (i, a) in self.coeffs[..=n].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Series {
            var: self.var.clone(),
            coeffs: out,
        }
    }

    /// Multiply by `x^k`; the order is kept, so the top `k` coefficients fall off.
    pub fn shift_up(&self, k: usize) -> Series {
        let n = self.order();
        let coeffs = (0..=n)
            .map(|i| {
                if i >= k {
                    self.coeffs[i - k].clone()
                } else {
                    Rational::zero()
                }
            })
            .collect();
        Series {
            var: self.var.clone(),
            coeffs,
        }
    }

    /// `x d/dx`: `a_m -> m a_m`.
    pub fn theta(&self) -> Series {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(m, a)| a * Rational::from(m))
            .collect();
        Series {
            var: self.var.clone(),
            coeffs,
        }
    }

    pub fn differentiate(&self) -> Result<Series, SeriesError> {
        if self.order() == 0 {
            return Err(SeriesError::OrderExhausted);
        }
        let coeffs = self.coeffs[1..]
            .iter()
            .enumerate()
            .map(|(i, a)| a * Rational::from(i + 1))
            .collect();
        Ok(Series {
            var: self.var.clone(),
            coeffs,
        })
    }

    /// Antiderivative with zero constant term.
    pub fn integrate(&self) -> Series {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Rational::zero());
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, a)| a / &Rational::from(i + 1)),
        );
        Series {
            var: self.var.clone(),
            coeffs,
        }
    }

    /// `self(inner(y))`, a series in `inner`'s variable.
    pub fn compose(&self, inner: &Series) -> Result<Series, SeriesError> {
        if !inner.coeffs[0].is_zero() {
            return Err(SeriesError::NonzeroConstant(inner.coeffs[0].clone()));
        }
        let n = self.order().min(inner.order());
        let inner = inner.truncate(n);
        // Horner from the top; a_m g^m only reaches x^m and above, so a_m with m > n is irrelevant.
        let mut acc = Series::zero(inner.var.clone(), n);
        for a in self.coeffs[..=n].iter().rev() {
            acc = acc.mul_unchecked(&inner);
            acc.coeffs[0] += a;
        }
        Ok(acc)
    }

    /// Compositional inverse `g` with `g(f(x)) = x` through the order of `f`,
    /// solved coefficient by coefficient (the system is triangular in `a_1`).
    ///
    /// The result keeps `self`'s variable tag.
    pub fn revert(&self) -> Result<Series, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::NonzeroConstant(self.coeffs[0].clone()));
        }
        let n = self.order();
        if n == 0 {
            return Ok(self.clone());
        }
        let a1 = &self.coeffs[1];
        if a1.is_zero() {
            return Err(SeriesError::ZeroLinearCoefficient);
        }
        // powers[j] = f^j; [x^m] f^m = a1^m and [x^m] f^j = 0 for j > m.
        let mut powers: Vec<Series> = Vec::with_capacity(n + 1);
        powers.push(Series::constant(self.var.clone(), Rational::one(), n));
        for j in 1..=n {
            let next = powers[j - 1].mul_unchecked(self);
            powers.push(next);
        }
        let mut g = vec![Rational::zero(); n + 1];
        g[1] = a1.recip();
        for m in 2..=n {
            let s: Rational = (1..m)
                .filter(|&j| !g[j].is_zero())
                .map(|j| &g[j] * &powers[j].coeffs[m])
                .sum();
            g[m] = -s / &powers[m].coeffs[m];
        }
        Ok(Series {
            var: self.var.clone(),
            coeffs: g,
        })
    }

    /// Evaluate the polynomial part at a rational point (test helper).
    pub fn eval_truncated(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, a| acc * x + a)
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Series({}; ", self.var)?;
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}*{}^{e}", self.var)?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O({}^{}))", self.var, self.order() + 1)
    }
}

/// Line-oriented text form:
///
/// ```text
/// series psi order 4
/// 1 1
/// 4 -1/648
/// ```
///
/// The header names the variable and truncation order; each following line
/// is one nonzero `exponent coefficient` pair in increasing exponent order.
impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "series {} order {}", self.var, self.order())?;
        for (e, c) in self.terms() {
            write!(f, "\n{e} {c}")?;
        }
        Ok(())
    }
}

impl FromStr for Series {
    type Err = SeriesError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| SeriesError::Parse("empty input".into()))?;
        let parts: Vec<&str> = header.split_whitespace().collect();
        let (var, order) = match parts.as_slice() {
            ["series", var, "order", n] => (
                var.to_string(),
                n.parse::<usize>()
                    .map_err(|_| SeriesError::Parse(format!("bad order {n:?}")))?,
            ),
            _ => return Err(SeriesError::Parse(format!("bad header {header:?}"))),
        };
        let mut out = Series::zero(var, order);
        let mut last: Option<usize> = None;
        for line in lines {
            let (e, c) = line
                .split_once(char::is_whitespace)
                .ok_or_else(|| SeriesError::Parse(format!("bad term line {line:?}")))?;
            let e: usize = e
                .parse()
                .map_err(|_| SeriesError::Parse(format!("bad exponent {e:?}")))?;
            if e > order {
                return Err(SeriesError::Parse(format!(
                    "exponent {e} above order {order}"
                )));
            }
            if last.is_some_and(|l| l >= e) {
                return Err(SeriesError::Parse("exponents must increase".into()));
            }
            last = Some(e);
            out.coeffs[e] = c.parse()?;
        }
        Ok(out)
    }
}

/// Structured form used by the CLI's JSON output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesDoc {
    pub variable: String,
    pub order: usize,
    pub terms: Vec<(usize, Rational)>,
}

impl From<&Series> for SeriesDoc {
    fn from(s: &Series) -> Self {
        SeriesDoc {
            variable: s.var.clone(),
            order: s.order(),
            terms: s.terms().map(|(e, c)| (e, c.clone())).collect(),
        }
    }
}

impl From<SeriesDoc> for Series {
    fn from(d: SeriesDoc) -> Self {
        Series::from_terms(d.variable, d.order, d.terms)
    }
}

impl Serialize for Series {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        SeriesDoc::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Series {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        SeriesDoc::deserialize(deserializer).map(Series::from)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn poly(order: usize, cs: &[&str]) -> Series {
        Series::from_terms("x", order, cs.iter().enumerate().map(|(i, c)| (i, q(c))))
    }

    #[test]
    fn mul_add_scale_examples() {
        let a = poly(6, &["1", "1"]);
        let b = poly(6, &["1", "-1"]);
        assert_eq!(a.mul(&b).unwrap(), poly(6, &["1", "0", "-1"]));

        let f = poly(6, &["3", "1/2", "0", "-7"]);
        assert!(f.add(&f.scale(&q("-1"))).unwrap().is_zero());

        // direct convolution: (x + x^2) * x
        let lhs = poly(6, &["0", "1", "1"])
            .mul(&Series::variable("x", 6))
            .unwrap();
        let mut oracle = vec![Rational::zero(); 7];
        let (u, v) = ([0, 1, 1], [0, 1]);
        for (i, ui) in u.iter().enumerate() {
            for (j, vj) in v.iter().enumerate() {
                oracle[i + j] += Rational::from(ui * vj);
            }
        }
        assert_eq!(lhs, Series::new("x", oracle));
        assert_eq!(lhs, poly(6, &["0", "0", "1", "1"]));
    }

    #[test]
    fn orders_propagate_conservatively() {
        let a = poly(5, &["1", "1"]);
        let b = poly(3, &["1", "2"]);
        assert_eq!(a.add(&b).unwrap().order(), 3);
        assert_eq!(a.mul(&b).unwrap().order(), 3);
        assert_eq!(a.theta().order(), 5);
        assert_eq!(a.differentiate().unwrap().order(), 4);
        assert_eq!(a.integrate().order(), 6);
        assert_eq!(a.compose(&poly(2, &["0", "1"])).unwrap().order(), 2);
    }

    #[test]
    fn variable_mismatch_is_rejected() {
        let a = Series::variable("psi", 4);
        let b = Series::variable("sigma1", 4);
        assert!(matches!(
            a.add(&b),
            Err(SeriesError::VariableMismatch { .. })
        ));
        assert!(matches!(
            a.mul(&b),
            Err(SeriesError::VariableMismatch { .. })
        ));
        assert!(a.add(&b.rename("psi")).is_ok());
    }

    #[test]
    fn theta_examples() {
        assert!(Series::constant("x", Rational::one(), 5).theta().is_zero());
        let p3 = Series::monomial("x", Rational::one(), 3, 5);
        assert_eq!(p3.theta(), p3.scale(&q("3")));
        let f = Series::from_terms("x", 6, [(1, q("1")), (5, q("2"))]);
        assert_eq!(
            f.theta(),
            Series::from_terms("x", 6, [(1, q("1")), (5, q("10"))])
        );
    }

    #[test]
    fn calculus_examples() {
        let x2 = Series::monomial("x", Rational::one(), 2, 5);
        assert_eq!(x2.integrate(), Series::monomial("x", q("1/3"), 3, 6));
        assert_eq!(
            poly(4, &["1", "1"]).integrate(),
            poly(5, &["0", "1", "1/2"])
        );
        assert_eq!(
            Series::constant("x", q("5"), 0).differentiate(),
            Err(SeriesError::OrderExhausted)
        );
    }

    #[test]
    fn compose_examples() {
        let f = poly(8, &["2", "-1", "1/3", "4"]);
        assert_eq!(f.compose(&Series::variable("x", 8)).unwrap(), f);
        let x2 = Series::monomial("x", Rational::one(), 2, 8);
        assert_eq!(
            x2.compose(&poly(8, &["0", "1", "1"])).unwrap(),
            poly(8, &["0", "0", "1", "2", "1"])
        );
        assert_eq!(
            poly(8, &["1", "1"]).compose(&poly(8, &["0", "2"])).unwrap(),
            poly(8, &["1", "2"])
        );
        assert_eq!(
            f.compose(&poly(8, &["1", "1"])),
            Err(SeriesError::NonzeroConstant(q("1")))
        );
        // result lives in the inner variable
        let inner = Series::variable("y", 8);
        assert_eq!(f.compose(&inner).unwrap().var(), "y");
    }

    /// Lagrange inversion: [x^n] f^{-1} = (1/n) [w^{n-1}] (w / f(w))^n.
    fn lagrange_oracle(f: &Series, n: usize) -> Rational {
        let order = f.order();
        // h(w) = f(w)/w, then (w/f)^n = h^{-n}
        let h = Series::new("x", f.coeffs()[1..].to_vec());
        let mut inv = vec![Rational::zero(); order];
        inv[0] = h.coeff(0).unwrap().recip();
        for m in 1..order {
            let s: Rational = (1..=m).map(|i| h.coeff(i).unwrap() * &inv[m - i]).sum();
            inv[m] = -s * &inv[0];
        }
        let inv = Series::new("x", inv);
        let mut p = Series::constant("x", Rational::one(), order - 1);
        for _ in 0..n {
            p = p.mul(&inv).unwrap();
        }
        p.coeff(n - 1).unwrap() / &Rational::from(n)
    }

    #[test]
    fn revert_examples() {
        let x = Series::variable("x", 6);
        assert_eq!(x.revert().unwrap(), x);
        let two_x = poly(6, &["0", "2"]);
        assert_eq!(two_x.revert().unwrap(), poly(6, &["0", "1/2"]));

        let f = poly(6, &["0", "1", "-1"]);
        let g = f.revert().unwrap();
        for n in 1..=5 {
            assert_eq!(
                g.coeff(n).unwrap(),
                &lagrange_oracle(&f, n),
                "coefficient {n}"
            );
        }
        // Catalan numbers
        assert_eq!(g, poly(6, &["0", "1", "1", "2", "5", "14", "42"]));

        assert_eq!(
            poly(6, &["0", "0", "1"]).revert(),
            Err(SeriesError::ZeroLinearCoefficient)
        );
    }

    #[test]
    fn text_form_round_trip() {
        let f = Series::from_terms("psi", 4, [(1, q("1")), (4, q("-1/648"))]);
        let text = f.to_string();
        assert_eq!(text, "series psi order 4\n1 1\n4 -1/648");
        assert_eq!(text.parse::<Series>().unwrap(), f);
        assert!("series psi order 2\n3 1".parse::<Series>().is_err());
        assert!("series psi order 4\n2 1\n1 1".parse::<Series>().is_err());
        assert!("nonsense".parse::<Series>().is_err());
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(
            json,
            r#"{"variable":"psi","order":4,"terms":[[1,"1"],[4,"-1/648"]]}"#
        );
        assert_eq!(serde_json::from_str::<Series>(&json).unwrap(), f);
    }
}
