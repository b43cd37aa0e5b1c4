//! Genus-2 holomorphic-anomaly functional and one recursion step.
//!
//! ```text
//! Gamma_2 = E^ij (1/2 F1_ij + 1/2 F1_i F1_j)
//!         + E^ij E^kl (1/2 F1_i F0_jkl + 1/8 F0_ijkl)
//!         + E^ij E^kl E^mn (1/8 F0_ijk F0_lmn + 1/12 F0_ikm F0_jln)
//! ```
//!
//! Index sums are taken naively over every tuple. The two cubic terms keep
//! their distinct wirings.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::Rational;
use crate::series::{Series, SeriesError};
use crate::Unsupported;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AnomalyError {
    #[error("{name} has shape mismatch for {r} moduli")]
    Shape { name: &'static str, r: usize },
    #[error("{name} is not symmetric under index permutation")]
    Asymmetric { name: &'static str },
    #[error("modulus count must be positive")]
    NoModuli,
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("unsupported: {0}")]
    Unsupported(Unsupported),
}

/// Coefficient ring for the index sums.
pub trait Scalar: Clone + PartialEq {
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, c: &Rational) -> Self;
}

impl Scalar for Rational {
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, c: &Rational) -> Self {
        self * c
    }
}

/// Series slots must share a variable; [`recursion_step_genus2`] checks this
/// before any arithmetic happens.
impl Scalar for Series {
    fn add(&self, other: &Self) -> Self {
        Series::add(self, other).expect("variables checked")
    }
    fn mul(&self, other: &Self) -> Self {
        Series::mul(self, other).expect("variables checked")
    }
    fn scale(&self, c: &Rational) -> Self {
        Series::scale(self, c)
    }
}

/// Dense symmetric tensor of rank `rank` over `r` indices, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymTensor<T> {
    rank: u32,
    r: usize,
    data: Vec<T>,
}

fn multi_indices(rank: u32, r: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..r.pow(rank)).map(move |mut flat| {
        let mut idx = vec![0; rank as usize];
        for slot in idx.iter_mut().rev() {
            *slot = flat % r;
            flat /= r;
        }
        idx
    })
}

fn permutations(v: &[usize]) -> Vec<Vec<usize>> {
    if v.len() <= 1 {
        return vec![v.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..v.len() {
        let mut rest = v.to_vec();
        let head = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, head);
            out.push(p);
        }
    }
    out
}

impl<T: Clone + PartialEq> SymTensor<T> {
    pub fn new(
        name: &'static str,
        rank: u32,
        r: usize,
        data: Vec<T>,
    ) -> Result<Self, AnomalyError> {
        if data.len() != r.pow(rank) {
            return Err(AnomalyError::Shape { name, r });
        }
        let t = SymTensor { rank, r, data };
        for idx in multi_indices(rank, r) {
            let v = t.get(&idx);
            if permutations(&idx).iter().any(|p| t.get(p) != v) {
                return Err(AnomalyError::Asymmetric { name });
            }
        }
        Ok(t)
    }

    pub fn get(&self, idx: &[usize]) -> &T {
        debug_assert_eq!(idx.len(), self.rank as usize);
        let flat = idx.iter().fold(0, |acc, &i| acc * self.r + i);
        &self.data[flat]
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }
}

/// Propagator and derivative tensors entering `Gamma_2`.
#[derive(Debug, Clone, PartialEq)]
pub struct AmplitudeData<T> {
    pub r: usize,
    pub e: SymTensor<T>,
    pub df1: SymTensor<T>,
    pub ddf1: SymTensor<T>,
    pub d3f0: SymTensor<T>,
    pub d4f0: SymTensor<T>,
}

impl<T: Clone + PartialEq> AmplitudeData<T> {
    pub fn new(
        r: usize,
        e: Vec<T>,
        df1: Vec<T>,
        ddf1: Vec<T>,
        d3f0: Vec<T>,
        d4f0: Vec<T>,
    ) -> Result<Self, AnomalyError> {
        if r == 0 {
            return Err(AnomalyError::NoModuli);
        }
        Ok(AmplitudeData {
            r,
            e: SymTensor::new("E", 2, r, e)?,
            df1: SymTensor::new("dF1", 1, r, df1)?,
            ddf1: SymTensor::new("ddF1", 2, r, ddf1)?,
            d3f0: SymTensor::new("d3F0", 3, r, d3f0)?,
            d4f0: SymTensor::new("d4F0", 4, r, d4f0)?,
        })
    }
}

fn sum<T: Scalar>(zero: &T, terms: impl Iterator<Item = T>) -> T {
    terms.fold(zero.clone(), |acc, t| acc.add(&t))
}

/// Naive evaluation of `Gamma_2`.
pub fn gamma2<T: Scalar>(d: &AmplitudeData<T>) -> T {
    let zero = d.e.data()[0].scale(&Rational::zero());
    let half = Rational::new(1, 2);
    let eighth = Rational::new(1, 8);
    let twelfth = Rational::new(1, 12);
    let e = |i: usize, j: usize| d.e.get(&[i, j]);

    let quadratic = sum(
        &zero,
        multi_indices(2, d.r).map(|ix| {
            let [i, j] = [ix[0], ix[1]];
            let inner = d
                .ddf1
                .get(&[i, j])
                .scale(&half)
                .add(&d.df1.get(&[i]).mul(d.df1.get(&[j])).scale(&half));
            e(i, j).mul(&inner)
        }),
    );
    let quartic = sum(
        &zero,
        multi_indices(4, d.r).map(|ix| {
            let [i, j, k, l] = [ix[0], ix[1], ix[2], ix[3]];
            let inner = d
                .df1
                .get(&[i])
                .mul(d.d3f0.get(&[j, k, l]))
                .scale(&half)
                .add(&d.d4f0.get(&[i, j, k, l]).scale(&eighth));
            e(i, j).mul(e(k, l)).mul(&inner)
        }),
    );
    let sextic = sum(
        &zero,
        multi_indices(6, d.r).map(|ix| {
            let [i, j, k, l, m, n] = [ix[0], ix[1], ix[2], ix[3], ix[4], ix[5]];
            let first = d
                .d3f0
                .get(&[i, j, k])
                .mul(d.d3f0.get(&[l, m, n]))
                .scale(&eighth);
            let second = d
                .d3f0
                .get(&[i, k, m])
                .mul(d.d3f0.get(&[j, l, n]))
                .scale(&twelfth);
            e(i, j).mul(e(k, l)).mul(e(m, n)).mul(&first.add(&second))
        }),
    );
    quadratic.add(&quartic).add(&sextic)
}

/// `F2 = h2 - Gamma_2[E, F0, F1]` for one modulus, all in the same variable.
///
/// `F1`, `E` and `h2` are inputs; nothing here determines them.
pub fn recursion_step_genus2(
    f0: &Series,
    f1: &Series,
    e: &Series,
    h2: &Series,
) -> Result<Series, AnomalyError> {
    for s in [f1, e, h2] {
        if s.var() != f0.var() {
            return Err(SeriesError::VariableMismatch {
                left: f0.var().to_string(),
                right: s.var().to_string(),
            }
            .into());
        }
    }
    let df1 = f1.differentiate()?;
    let ddf1 = df1.differentiate()?;
    let d3f0 = f0.differentiate()?.differentiate()?.differentiate()?;
    let d4f0 = d3f0.differentiate()?;
    let data = AmplitudeData::new(
        1,
        vec![e.clone()],
        vec![df1],
        vec![ddf1],
        vec![d3f0],
        vec![d4f0],
    )?;
    Ok(h2.sub(&gamma2(&data))?)
}

/// `F_g` for `g >= 3` needs `Gamma_g`, which is not implemented.
pub fn recursion_step(
    genus: u32,
    f0: &Series,
    f1: &Series,
    e: &Series,
    h: &Series,
) -> Result<Series, AnomalyError> {
    match genus {
        2 => recursion_step_genus2(f0, f1, e, h),
        g => Err(AnomalyError::Unsupported(Unsupported::HigherGenusAnomaly {
            genus: g,
        })),
    }
}

/// On-disk form: nested arrays of `"p/q"` strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AmplitudeDoc {
    pub modulus_count: usize,
    #[serde(rename = "E")]
    pub e: Vec<Vec<Rational>>,
    #[serde(rename = "dF1")]
    pub df1: Vec<Rational>,
    #[serde(rename = "ddF1")]
    pub ddf1: Vec<Vec<Rational>>,
    #[serde(rename = "d3F0")]
    pub d3f0: Vec<Vec<Vec<Rational>>>,
    #[serde(rename = "d4F0")]
    pub d4f0: Vec<Vec<Vec<Vec<Rational>>>>,
}

impl AmplitudeDoc {
    pub fn into_data(self) -> Result<AmplitudeData<Rational>, AnomalyError> {
        let r = self.modulus_count;
        let check = |name: &'static str, ok: bool| {
            if ok {
                Ok(())
            } else {
                Err(AnomalyError::Shape { name, r })
            }
        };
        check(
            "E",
            self.e.len() == r && self.e.iter().all(|v| v.len() == r),
        )?;
        check("dF1", self.df1.len() == r)?;
        check(
            "ddF1",
            self.ddf1.len() == r && self.ddf1.iter().all(|v| v.len() == r),
        )?;
        check(
            "d3F0",
            self.d3f0.len() == r && self.d3f0.iter().flatten().all(|v| v.len() == r),
        )?;
        check(
            "d4F0",
            self.d4f0.len() == r && self.d4f0.iter().flatten().flatten().all(|v| v.len() == r),
        )?;
        AmplitudeData::new(
            r,
            self.e.into_iter().flatten().collect(),
            self.df1,
            self.ddf1.into_iter().flatten().collect(),
            self.d3f0.into_iter().flatten().flatten().collect(),
            self.d4f0
                .into_iter()
                .flatten()
                .flatten()
                .flatten()
                .collect(),
        )
    }

    pub fn from_data(d: &AmplitudeData<Rational>) -> AmplitudeDoc {
        let r = d.r;
        let chunk = |v: &[Rational]| v.chunks(r).map(<[Rational]>::to_vec).collect::<Vec<_>>();
        AmplitudeDoc {
            modulus_count: r,
            e: chunk(d.e.data()),
            df1: d.df1.data().to_vec(),
            ddf1: chunk(d.ddf1.data()),
            d3f0: d.d3f0.data().chunks(r * r).map(chunk).collect(),
            d4f0: d
                .d4f0
                .data()
                .chunks(r * r * r)
                .map(|c| c.chunks(r * r).map(chunk).collect())
                .collect(),
        }
    }
}
