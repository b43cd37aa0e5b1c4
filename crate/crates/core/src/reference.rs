//! Published exact values: `N_{g,k}` for `g = 0..=6`, `k = 1..=4`, and the
//! unmarked `N_{g,0}` as `constant + chi * coefficient` for `g = 2..=5`.
//!
//! Marked entries are kept in their printed factored form and evaluated
//! once on first use.

use std::fmt;
use std::sync::LazyLock;

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::arith::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReferenceError {
    #[error("no table entry for g={g}, k={k}")]
    OutOfRange { g: u32, k: u32 },
    #[error("no unmarked formula for g={0}")]
    NoFormula(u32),
}

/// (g, k, signed numerator, denominator factors)
const MARKED: [(u32, u32, &str, &str); 28] = [
    (0, 1, "1", "3"),
    (0, 2, "-1", "3^3"),
    (0, 3, "1", "3^2"),
    (0, 4, "-1093", "3^6"),
    (1, 1, "0", "1"),
    (1, 2, "1", "3^5"),
    (1, 3, "-14", "3^5"),
    (1, 4, "13007", "3^8"),
    (2, 1, "1", "2^4 3^4 5"),
    (2, 2, "-13", "2^4 3^6"),
    (2, 3, "20693", "2^4 3^8 5"),
    (2, 4, "-12803923", "2^4 3^10 5"),
    (3, 1, "-31", "2^5 3^5 5 7"),
    (3, 2, "11569", "2^5 3^9 5 7"),
    (3, 3, "-2429003", "2^5 3^10 5 7"),
    (3, 4, "871749323", "2^4 3^11 5 7"),
    (4, 1, "313", "2^7 3^9 5^2"),
    (4, 2, "-1889", "2^7 3^9"),
    (4, 3, "115647179", "2^6 3^13 5^2"),
    (4, 4, "-29321809247", "2^8 3^12 5^2"),
    (5, 1, "-519961", "2^9 3^11 5^2 7 11"),
    (5, 2, "196898123", "2^9 3^12 5^2 7 11"),
    (5, 3, "-339157983781", "2^9 3^14 5^2 7 11"),
    (5, 4, "78658947782147", "2^9 3^16 5 7"),
    (6, 1, "14609730607", "2^12 3^13 5^3 7^2 11"),
    (6, 2, "-258703053013", "2^10 3^15 5 7^2 11"),
    (6, 3, "2453678654644313", "2^12 3^14 5^3 7^2 11"),
    (6, 4, "-40015774193969601803", "2^11 3^18 5^3 7^2 11"),
];

/// (g, constant term, chi coefficient)
const UNMARKED: [(u32, &str, &str); 4] = [
    (2, "-1/2160", "1/5760"),
    (3, "1/544320", "-1/1451520"),
    (4, "-7/41990400", "1/87091200"),
    (5, "3161/77598259200", "-1/2554675200"),
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MarkedEntry {
    pub g: u32,
    pub k: u32,
    pub value: Rational,
    /// Printed factored form, e.g. `-13/(2^4 3^6)`.
    pub source: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnmarkedFormula {
    pub g: u32,
    pub constant_term: Rational,
    pub chi_coefficient: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantTable {
    pub marked: Vec<MarkedEntry>,
    pub unmarked_formulas: Vec<UnmarkedFormula>,
}

fn eval_factored(numer: &str, denom: &str) -> Rational {
    let n: BigInt = numer.parse().expect("table numerator");
    let d = denom
        .split_whitespace()
        .map(|f| match f.split_once('^') {
            Some((b, e)) => BigInt::from(b.parse::<u32>().unwrap()).pow(e.parse().unwrap()),
            None => BigInt::from(f.parse::<u32>().unwrap()),
        })
        .product::<BigInt>();
    Rational::new(n, d)
}

static TABLE: LazyLock<InvariantTable> = LazyLock::new(|| InvariantTable {
    marked: MARKED
        .iter()
        .map(|&(g, k, n, d)| MarkedEntry {
            g,
            k,
            value: eval_factored(n, d),
            source: if d.contains(' ') {
                format!("{n}/({d})")
            } else {
                format!("{n}/{d}")
            },
        })
        .collect(),
    unmarked_formulas: UNMARKED
        .iter()
        .map(|&(g, c, x)| UnmarkedFormula {
            g,
            constant_term: c.parse().unwrap(),
            chi_coefficient: x.parse().unwrap(),
        })
        .collect(),
});

pub fn table() -> &'static InvariantTable {
    &TABLE
}

pub fn ngk(g: u32, k: u32) -> Result<Rational, ReferenceError> {
    table()
        .marked
        .iter()
        .find(|e| e.g == g && e.k == k)
        .map(|e| e.value.clone())
        .ok_or(ReferenceError::OutOfRange { g, k })
}

pub fn unmarked_formula(g: u32) -> Result<&'static UnmarkedFormula, ReferenceError> {
    table()
        .unmarked_formulas
        .iter()
        .find(|f| f.g == g)
        .ok_or(ReferenceError::NoFormula(g))
}

/// `N_{g,0} = constant + chi * coefficient`.
pub fn n_g0_formula(g: u32, chi: &Rational) -> Result<Rational, ReferenceError> {
    let f = unmarked_formula(g)?;
    Ok(&f.constant_term + &(&f.chi_coefficient * chi))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub g: u32,
    pub k: u32,
    pub computed: Rational,
    pub expected: Option<Rational>,
    pub pass: bool,
}

pub fn compare(computed: &Rational, g: u32, k: u32) -> Comparison {
    let expected = ngk(g, k).ok();
    let pass = expected.as_ref() == Some(computed);
    Comparison {
        g,
        k,
        computed: computed.clone(),
        expected,
        pass,
    }
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (g, k) = (self.g, self.k);
        match (&self.expected, self.pass) {
            (_, true) => write!(f, "PASS N_{{{g},{k}}} = {}", self.computed),
            (Some(e), false) => {
                write!(
                    f,
                    "FAIL N_{{{g},{k}}}: computed {}, expected {e}",
                    self.computed
                )
            }
            (None, false) => write!(
                f,
                "FAIL N_{{{g},{k}}}: computed {}, no reference",
                self.computed
            ),
        }
    }
}

/// Table layout: one row per genus, columns `k = 1..4`.
pub fn plain_table() -> String {
    let t = table();
    let rows: Vec<Vec<String>> = (0..=6)
        .map(|g| {
            std::iter::once(g.to_string())
                .chain(
                    t.marked
                        .iter()
                        .filter(|e| e.g == g)
                        .map(|e| e.value.to_string()),
                )
                .collect()
        })
        .collect();
    let header: Vec<String> = ["g", "k=1", "k=2", "k=3", "k=4"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let widths: Vec<usize> = (0..5)
        .map(|c| {
            rows.iter()
                .chain([&header])
                .map(|r| r[c].len())
                .max()
                .unwrap()
        })
        .collect();
    let fmt_row = |r: &Vec<String>| {
        r.iter()
            .zip(&widths)
            .map(|(s, w)| format!("{s:>w$}"))
            .collect::<Vec<_>>()
            .join("  ")
    };
    std::iter::once(fmt_row(&header))
        .chain(rows.iter().map(fmt_row))
        .collect::<Vec<_>>()
        .join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn lookups() {
        assert_eq!(ngk(0, 4).unwrap(), q("-1093/729"));
        assert_eq!(ngk(1, 2).unwrap(), q("1/243"));
        assert_eq!(ngk(2, 1).unwrap(), q("1/6480"));
        assert_eq!(ngk(1, 1).unwrap(), q("0"));
        assert_eq!(ngk(7, 1), Err(ReferenceError::OutOfRange { g: 7, k: 1 }));
        assert_eq!(ngk(0, 0), Err(ReferenceError::OutOfRange { g: 0, k: 0 }));
    }

    /// Frozen sums over all 28 entries in row-major order; the weighted sum
    /// also catches swapped cells.
    #[test]
    fn table_checksum() {
        let marked = &table().marked;
        assert_eq!(marked.len(), 28);
        let sum: Rational = marked.iter().map(|e| &e.value).sum();
        let weighted: Rational = marked
            .iter()
            .enumerate()
            .map(|(i, e)| Rational::from(i + 1) * &e.value)
            .sum();
        assert_eq!(sum, q("-2468446379844091249/3818416339584000"));
        assert_eq!(weighted, q("-247473048980126995079/13364457188544000"));
    }

    #[test]
    fn sources_kept() {
        let e = &table().marked[9];
        assert_eq!((e.g, e.k), (2, 2));
        assert_eq!(e.source, "-13/(2^4 3^6)");
        assert_eq!(table().marked[0].source, "1/3");
    }

    #[test]
    fn unmarked_at_chi_three() {
        assert_eq!(n_g0_formula(2, &q("3")).unwrap(), q("1/17280"));
        assert_eq!(n_g0_formula(3, &q("3")).unwrap(), q("-1/4354560"));
        assert_eq!(
            n_g0_formula(4, &q("3")).unwrap(),
            q("-7/41990400") + q("3/87091200")
        );
        assert_eq!(n_g0_formula(4, &q("3")).unwrap(), q("-311/2351462400"));
        assert_eq!(n_g0_formula(6, &q("3")), Err(ReferenceError::NoFormula(6)));
        assert_eq!(n_g0_formula(2, &q("0")).unwrap(), q("-1/2160"));
    }

    #[test]
    fn chi_coefficient_is_signed_hodge_integral() {
        for g in 2..=5 {
            let f = unmarked_formula(g).unwrap();
            assert_eq!(
                f.chi_coefficient,
                Rational::sign_power(g as i64) * crate::hodge::fp_integral(g).unwrap()
            );
        }
    }

    #[test]
    fn comparisons() {
        assert!(compare(&q("1/3"), 0, 1).pass);
        assert!(compare(&q("1/9"), 0, 3).pass);
        let c = compare(&q("1/4"), 0, 1);
        assert!(!c.pass);
        assert_eq!(c.to_string(), "FAIL N_{0,1}: computed 1/4, expected 1/3");
        assert_eq!(compare(&q("1/3"), 0, 1).to_string(), "PASS N_{0,1} = 1/3");
        assert!(!compare(&q("1"), 9, 9).pass);
    }

    #[test]
    fn plain_layout() {
        let t = plain_table();
        let lines: Vec<&str> = t.lines().collect();
        assert_eq!(lines.len(), 8);
        assert!(lines[0].trim_start().starts_with("g"));
        assert!(lines[1].contains("-1093/729"));
        assert_eq!(
            lines[2].split_whitespace().collect::<Vec<_>>(),
            ["1", "0", "1/243", "-14/243", "13007/6561"]
        );
    }
}
