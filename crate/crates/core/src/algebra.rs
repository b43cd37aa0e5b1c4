//! Graded polynomial algebra in lambda classes and normal forms modulo
//! ideals generated by Chern-polynomial identities.
//!
//! Generators are `lambda_i` (Hodge bundle), `lambda_{i,w}` and
//! `lambda_{i,wb}` (the two nontrivial eigenbundles of a Z3 cover), each of
//! cohomological degree `i`. They are ordered
//!
//! ```text
//! l1 < l2 < ... < l1w < l2w < ... < l1wb < l2wb < ...
//! ```
//!
//! and monomials are compared by degree first, then reverse
//! lexicographically: scanning from the largest generator down, the
//! monomial with the larger exponent is the smaller one. Normal forms are
//! therefore bit-stable across runs and independent of relation order.
//!
//! Ideal membership is decided degree by degree with exact linear algebra:
//! the degree-`d` piece of an ideal is spanned by `r * m` for relations `r`
//! and monomials `m` of complementary degree.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("cannot parse lambda polynomial: {0}")]
    Parse(String),
    #[error("genus {genus} out of range for {kind} relations (need >= {min})")]
    GenusOutOfRange {
        kind: &'static str,
        genus: u32,
        min: u32,
    },
}

/// A lambda-class generator; the derived order is the fixed generator order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    Lambda(u32),
    Omega(u32),
    OmegaBar(u32),
}

impl Generator {
    pub fn degree(self) -> u32 {
        match self {
            Generator::Lambda(i) | Generator::Omega(i) | Generator::OmegaBar(i) => i,
        }
    }

    /// Exchange the `w` and `wb` eigenbundle families.
    pub fn swap_families(self) -> Generator {
        match self {
            Generator::Lambda(i) => Generator::Lambda(i),
            Generator::Omega(i) => Generator::OmegaBar(i),
            Generator::OmegaBar(i) => Generator::Omega(i),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Lambda(i) => write!(f, "l{i}"),
            Generator::Omega(i) => write!(f, "l{i}w"),
            Generator::OmegaBar(i) => write!(f, "l{i}wb"),
        }
    }
}

impl FromStr for Generator {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || AlgebraError::Parse(format!("unknown generator {s:?}"));
        let rest = s.strip_prefix('l').ok_or_else(bad)?;
        let digits: String = rest.chars().take_while(char::is_ascii_digit).collect();
        let index: u32 = digits.parse().map_err(|_| bad())?;
        if index == 0 {
            return Err(bad());
        }
        match &rest[digits.len()..] {
            "" => Ok(Generator::Lambda(index)),
            "w" => Ok(Generator::Omega(index)),
            "wb" => Ok(Generator::OmegaBar(index)),
            _ => Err(bad()),
        }
    }
}

/// A product of generators with positive exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(BTreeMap<Generator, u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn generator(g: Generator) -> Self {
        Monomial::from_powers([(g, 1)])
    }

    pub fn from_powers(powers: impl IntoIterator<Item = (Generator, u32)>) -> Self {
        let mut m = BTreeMap::new();
        for (g, e) in powers {
            if e > 0 {
                *m.entry(g).or_insert(0) += e;
            }
        }
        Monomial(m)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(g, e)| g.degree() * e).sum()
    }

    pub fn exponent(&self, g: Generator) -> u32 {
        self.0.get(&g).copied().unwrap_or(0)
    }

    pub fn powers(&self) -> impl Iterator<Item = (Generator, u32)> + '_ {
        self.0.iter().map(|(g, e)| (*g, *e))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::from_powers(self.powers().chain(other.powers()))
    }

    fn swap_families(&self) -> Monomial {
        Monomial::from_powers(self.powers().map(|(g, e)| (g.swap_families(), e)))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let gens: BTreeSet<Generator> = self.0.keys().chain(other.0.keys()).copied().collect();
            for g in gens.into_iter().rev() {
                match self.exponent(g).cmp(&other.exponent(g)) {
                    Ordering::Equal => continue,
                    ord => return ord.reverse(),
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (g, e) in self.powers() {
            if !first {
                write!(f, " * ")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{g}")?;
            } else {
                write!(f, "{g}^{e}")?;
            }
        }
        Ok(())
    }
}

/// All monomials of exactly `degree` in the given (positive-degree) generators.
pub fn monomials_of_degree(gens: &[Generator], degree: u32) -> Vec<Monomial> {
    fn go(gens: &[Generator], left: u32, acc: &mut Vec<(Generator, u32)>, out: &mut Vec<Monomial>) {
        let Some((&g, rest)) = gens.split_first() else {
            if left == 0 {
                out.push(Monomial::from_powers(acc.iter().copied()));
            }
            return;
        };
        let d = g.degree();
        for e in 0..=left / d {
            acc.push((g, e));
            go(rest, left - e * d, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(gens, degree, &mut Vec::new(), &mut out);
    out
}

/// Rational linear combination of monomials; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LambdaPoly(BTreeMap<Monomial, Rational>);

impl LambdaPoly {
    pub fn zero() -> Self {
        LambdaPoly::default()
    }

    pub fn constant(c: Rational) -> Self {
        LambdaPoly::term(c, Monomial::one())
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut p = LambdaPoly::zero();
        p.add_term(m, c);
        p
    }

    pub fn generator(g: Generator) -> Self {
        LambdaPoly::term(Rational::one(), Monomial::generator(g))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = LambdaPoly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.0.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.0.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms in increasing monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.0.iter()
    }

    /// Largest monomial with its coefficient.
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.0.iter().next_back()
    }

    pub fn add(&self, other: &LambdaPoly) -> LambdaPoly {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &LambdaPoly) -> LambdaPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> LambdaPoly {
        LambdaPoly(self.0.iter().map(|(m, c)| (m.clone(), -c)).collect())
    }

    pub fn scale(&self, c: &Rational) -> LambdaPoly {
        if c.is_zero() {
            return LambdaPoly::zero();
        }
        LambdaPoly(self.0.iter().map(|(m, a)| (m.clone(), a * c)).collect())
    }

    pub fn mul(&self, other: &LambdaPoly) -> LambdaPoly {
        let mut out = LambdaPoly::zero();
        for (m1, c1) in self.terms() {
            for (m2, c2) in other.terms() {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial) -> LambdaPoly {
        LambdaPoly(self.0.iter().map(|(k, c)| (k.mul(m), c.clone())).collect())
    }

    pub fn pow(&self, e: u32) -> LambdaPoly {
        (0..e).fold(LambdaPoly::constant(Rational::one()), |acc, _| {
            acc.mul(self)
        })
    }

    /// Degrees present, ascending.
    pub fn degrees(&self) -> BTreeSet<u32> {
        self.0.keys().map(Monomial::degree).collect()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degrees().len() <= 1
    }

    /// The part of cohomological degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> LambdaPoly {
        LambdaPoly(
            self.0
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        )
    }

    pub fn generators(&self) -> BTreeSet<Generator> {
        self.0.keys().flat_map(|m| m.0.keys().copied()).collect()
    }

    pub fn swap_families(&self) -> LambdaPoly {
        LambdaPoly(
            self.0
                .iter()
                .map(|(m, c)| (m.swap_families(), c.clone()))
                .collect(),
        )
    }

    fn subtract_multiple(&mut self, c: &Rational, row: &LambdaPoly) {
        for (m, a) in row.terms() {
            self.add_term(m.clone(), -(c * a));
        }
    }
}

/// Sorted term list, leading term first: `-1 * l1^3 + 3 * l1 * l2`.
impl fmt::Display for LambdaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if m.0.is_empty() {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c} * {m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LambdaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LambdaPoly({self})")
    }
}

impl FromStr for LambdaPoly {
    type Err = AlgebraError;

    /// Accepts the display form and the obvious variations: terms joined by
    /// `+` or `-`, factors joined by `*` in any order, optional coefficient.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |msg: &str| AlgebraError::Parse(format!("{msg} in {s:?}"));
        let mut out = LambdaPoly::zero();
        // split into signed terms at top-level + / - that are not part of an exponent
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut current = String::new();
        let mut negative = false;
        let mut expect_term = true;
        for ch in s.chars() {
            match ch {
                '+' | '-' if expect_term || current.trim().is_empty() => {
                    if !current.trim().is_empty() {
                        return Err(err("misplaced sign"));
                    }
                    if ch == '-' {
                        negative = !negative;
                    }
                }
                '+' | '-' => {
                    terms.push((negative, std::mem::take(&mut current)));
                    negative = ch == '-';
                    expect_term = true;
                }
                c => {
                    if !c.is_whitespace() {
                        expect_term = false;
                    }
                    current.push(c);
                }
            }
        }
        if current.trim().is_empty() {
            return Err(err("dangling sign or empty input"));
        }
        terms.push((negative, current));

        for (negative, text) in terms {
            let mut coeff = Rational::one();
            let mut powers = Vec::new();
            for factor in text.split('*').map(str::trim) {
                if factor.is_empty() {
                    return Err(err("empty factor"));
                }
                if factor.starts_with(|c: char| c.is_ascii_digit()) {
                    coeff *= factor
                        .parse::<Rational>()
                        .map_err(|_| err("bad coefficient"))?;
                } else {
                    let (name, exp) = match factor.split_once('^') {
                        Some((n, e)) => (
                            n.trim(),
                            e.trim().parse::<u32>().map_err(|_| err("bad exponent"))?,
                        ),
                        None => (factor, 1),
                    };
                    powers.push((name.parse::<Generator>()?, exp));
                }
            }
            if negative {
                coeff = -coeff;
            }
            out.add_term(Monomial::from_powers(powers), coeff);
        }
        Ok(out)
    }
}

impl Serialize for LambdaPoly {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for LambdaPoly {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        String::deserialize(deserializer)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// Generators plus homogeneous relations generating an ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationSet {
    generators: Vec<Generator>,
    relations: Vec<LambdaPoly>,
}

impl RelationSet {
    /// # Panics
    /// If any relation is not homogeneous.
    pub fn new(mut generators: Vec<Generator>, relations: Vec<LambdaPoly>) -> Self {
        generators.sort();
        generators.dedup();
        for r in &relations {
            assert!(r.is_homogeneous(), "relation {r} is not homogeneous");
        }
        let relations = relations.into_iter().filter(|r| !r.is_zero()).collect();
        RelationSet {
            generators,
            relations,
        }
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn relations(&self) -> &[LambdaPoly] {
        &self.relations
    }

    pub fn swap_families(&self) -> RelationSet {
        RelationSet::new(
            self.generators.iter().map(|g| g.swap_families()).collect(),
            self.relations
                .iter()
                .map(LambdaPoly::swap_families)
                .collect(),
        )
    }

    /// Same ideal generators listed in a different order.
    pub fn with_relation_order(&self, order: &[usize]) -> RelationSet {
        RelationSet::new(
            self.generators.clone(),
            order.iter().map(|&i| self.relations[i].clone()).collect(),
        )
    }
}

impl fmt::Display for RelationSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "generators:")?;
        for g in &self.generators {
            write!(f, " {g}")?;
        }
        write!(f, "\nrelations:")?;
        for r in &self.relations {
            write!(f, "\n{r}")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct GeneratorDoc {
    name: String,
    degree: u32,
}

#[derive(Serialize, Deserialize)]
struct RelationSetDoc {
    generators: Vec<GeneratorDoc>,
    relations: Vec<LambdaPoly>,
}

impl Serialize for RelationSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        RelationSetDoc {
            generators: self
                .generators
                .iter()
                .map(|g| GeneratorDoc {
                    name: g.to_string(),
                    degree: g.degree(),
                })
                .collect(),
            relations: self.relations.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RelationSet {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let doc = RelationSetDoc::deserialize(deserializer)?;
        let generators = doc
            .generators
            .iter()
            .map(|g| {
                g.name
                    .parse::<Generator>()
                    .map_err(serde::de::Error::custom)
            })
            .collect::<Result<Vec<_>, _>>()?;
        if doc.relations.iter().any(|r| !r.is_homogeneous()) {
            return Err(serde::de::Error::custom("relations must be homogeneous"));
        }
        Ok(RelationSet::new(generators, doc.relations))
    }
}

/// Positive-degree pieces of `(sum_i a_i t^i)(sum_j (-1)^j b_j t^j) - 1`.
fn chern_product_relations(a: &[LambdaPoly], b: &[LambdaPoly]) -> Vec<LambdaPoly> {
    let top = (a.len() - 1) + (b.len() - 1);
    (1..=top)
        .map(|d| {
            let mut piece = LambdaPoly::zero();
            for (i, ai) in a.iter().enumerate() {
                if d < i || d - i >= b.len() {
                    continue;
                }
                let j = d - i;
                piece = piece.add(&ai.mul(&b[j]).scale(&Rational::sign_power(j as i64)));
            }
            piece
        })
        .filter(|p| !p.is_zero())
        .collect()
}

fn chern_classes(rank: u32, family: fn(u32) -> Generator) -> Vec<LambdaPoly> {
    std::iter::once(LambdaPoly::constant(Rational::one()))
        .chain((1..=rank).map(|i| LambdaPoly::generator(family(i))))
        .collect()
}

/// Mumford relation `c_t(E + E^vee) = 1` for the rank-`g` Hodge bundle.
pub fn mumford_relations(g: u32) -> Result<RelationSet, AlgebraError> {
    if g < 1 {
        return Err(AlgebraError::GenusOutOfRange {
            kind: "Mumford",
            genus: g,
            min: 1,
        });
    }
    let c = chern_classes(g, Generator::Lambda);
    Ok(RelationSet::new(
        (1..=g).map(Generator::Lambda).collect(),
        chern_product_relations(&c, &c),
    ))
}

/// Eigenbundle relation `c_t(E_w + (E_wb)^vee) = 1`, both of rank `g - 1`.
pub fn g_mumford_relations(g: u32) -> Result<RelationSet, AlgebraError> {
    if g < 2 {
        return Err(AlgebraError::GenusOutOfRange {
            kind: "G-Mumford",
            genus: g,
            min: 2,
        });
    }
    let w = chern_classes(g - 1, Generator::Omega);
    let wb = chern_classes(g - 1, Generator::OmegaBar);
    let generators = (1..g)
        .map(Generator::Omega)
        .chain((1..g).map(Generator::OmegaBar))
        .collect();
    Ok(RelationSet::new(
        generators,
        chern_product_relations(&w, &wb),
    ))
}

/// Row-echelon basis of one graded piece of an ideal, keyed by leading monomial.
struct EchelonBasis {
    rows: BTreeMap<Monomial, LambdaPoly>,
}

impl EchelonBasis {
    fn new() -> Self {
        EchelonBasis {
            rows: BTreeMap::new(),
        }
    }

    fn insert(&mut self, mut row: LambdaPoly) {
        while let Some((lead, c)) = row.leading() {
            let Some(pivot) = self.rows.get(lead) else {
                let lead = lead.clone();
                let inv = c.recip();
                self.rows.insert(lead, row.scale(&inv));
                return;
            };
            let c = c.clone();
            row.subtract_multiple(&c, pivot);
        }
    }

    /// Remove every pivot monomial from `p`, largest first.
    fn normal_form(&self, mut p: LambdaPoly) -> LambdaPoly {
        loop {
            let hit = p
                .terms()
                .rev()
                .find(|(m, _)| self.rows.contains_key(*m))
                .map(|(m, c)| (m.clone(), c.clone()));
            let Some((m, c)) = hit else { return p };
            p.subtract_multiple(&c, &self.rows[&m]);
        }
    }
}

fn ideal_piece(rel: &RelationSet, extra: &BTreeSet<Generator>, degree: u32) -> EchelonBasis {
    let gens: Vec<Generator> = rel
        .generators
        .iter()
        .copied()
        .chain(extra.iter().copied())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut basis = EchelonBasis::new();
    for r in &rel.relations {
        let dr = r.degrees().into_iter().next().unwrap_or(0);
        if dr > degree {
            continue;
        }
        for m in monomials_of_degree(&gens, degree - dr) {
            basis.insert(r.mul_monomial(&m));
        }
    }
    basis
}

/// Canonical representative of `p` modulo the ideal generated by `rel`.
///
/// Mixed-degree input is reduced one homogeneous piece at a time. The result
/// is zero exactly when `p` lies in the ideal.
pub fn reduce(p: &LambdaPoly, rel: &RelationSet) -> LambdaPoly {
    let extra = p.generators();
    p.degrees()
        .into_iter()
        .map(|d| ideal_piece(rel, &extra, d).normal_form(p.homogeneous_part(d)))
        .fold(LambdaPoly::zero(), |acc, piece| acc.add(&piece))
}

pub fn is_zero_in_quotient(p: &LambdaPoly, rel: &RelationSet) -> bool {
    reduce(p, rel).is_zero()
}
