//! Acceptance gate: one PASS/FAIL line per criterion, exact equality only.
//! Run with `cargo test -p c3z3 --test acceptance -- --nocapture`.

mod common;

use std::collections::HashMap;

use c3z3::algebra::{
    g_mumford_relations, is_zero_in_quotient, mumford_relations, reduce, Generator, LambdaPoly,
};
use c3z3::anomaly::{gamma2, AmplitudeData};
use c3z3::arith::{bernoulli, Rational};
use c3z3::hodge::{self, disc_integrand_reduction, fp_integral, unpointed_invariant, Outcome};
use c3z3::mirror::MirrorFrame;
use c3z3::picard_fuchs::{
    apply_displayed_pf_operator, apply_pf_operator, bk_series, bk_via_recurrence,
};
use c3z3::reference::n_g0_formula;
use c3z3::series::Series;
use common::*;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use Generator::*;

const ORDER: usize = 60;

fn q(s: &str) -> Rational {
    s.parse().unwrap()
}

fn poly(s: &str) -> LambdaPoly {
    s.parse().unwrap()
}

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c1_annihilation() -> Check {
    for k in 1..=2 {
        let r = apply_pf_operator(&bk_series(k, ORDER).unwrap());
        ensure(r.is_zero() && r.order() == ORDER, || {
            format!("D B_{k} = {r}")
        })?;
    }
    // the operator in x = -psi/3 on B_k(-3x)
    let x = Series::from_terms("x", ORDER, [(1, q("-3"))]);
    for k in 1..=2 {
        let b = bk_series(k, ORDER).unwrap().compose(&x).unwrap();
        ensure(apply_displayed_pf_operator(&b).is_zero(), || {
            format!("displayed operator does not kill B_{k}(-3x)")
        })?;
    }
    Ok(())
}

fn c2_recurrence() -> Check {
    for k in 1..=2 {
        let a = bk_series(k, ORDER).unwrap();
        let b = bk_via_recurrence(k, ORDER).unwrap();
        ensure(a == b, || {
            format!("B_{k} closed form and recurrence differ")
        })?;
    }
    Ok(())
}

fn c3_genus0() -> Check {
    let n = MirrorFrame::new(ORDER)
        .unwrap()
        .genus0_invariants(4)
        .unwrap();
    let want = [q("1/3"), q("-1/27"), q("1/9"), q("-1093/729")];
    ensure(n == want, || format!("got {n:?}"))
}

fn c4_grading() -> Check {
    let f0 = MirrorFrame::new(ORDER).unwrap().prepotential().unwrap();
    let bad: Vec<usize> = f0.terms().map(|(e, _)| e).filter(|e| e % 3 != 0).collect();
    ensure(bad.is_empty(), || format!("nonzero exponents {bad:?}"))?;
    ensure(f0.terms().count() == (ORDER + 1) / 3, || {
        "missing multiples of 3".into()
    })
}

fn c5_fp() -> Check {
    let want = ["1/5760", "1/1451520", "1/87091200", "1/2554675200"];
    for (g, w) in (2..=5).zip(want) {
        let v = fp_integral(g).unwrap();
        ensure(v == q(w), || format!("fp({g}) = {v}"))?;
        let chi_coeff = n_g0_formula(g, &q("1")).unwrap() - n_g0_formula(g, &q("0")).unwrap();
        ensure(chi_coeff == Rational::sign_power(g as i64) * v, || {
            format!("chi coefficient at g={g} is {chi_coeff}")
        })?;
    }
    Ok(())
}

fn c6_disc() -> Check {
    let d2 = disc_integrand_reduction(2).unwrap();
    ensure(d2.pre_reduction == poly("-l1^3 + 3 * l2 * l1"), || {
        format!("pre(2) = {}", d2.pre_reduction)
    })?;
    ensure(d2.reduced == poly("l2 * l1"), || {
        format!("NF(2) = {}", d2.reduced)
    })?;
    let d3 = disc_integrand_reduction(3).unwrap();
    ensure(d3.reduced == poly("-l3 * l2 * l1"), || {
        format!("NF(3) = {}", d3.reduced)
    })?;
    for g in 2..=6 {
        let d = disc_integrand_reduction(g).map_err(|e| e.to_string())?;
        ensure(d.weight_check, || format!("weight check fails at g={g}"))?;
    }
    Ok(())
}

fn c7_connected() -> Check {
    let w2 = g_mumford_relations(2).unwrap();
    ensure(reduce(&poly("l1w^3"), &w2).is_zero(), || {
        "l1w^3 survives at g=2".into()
    })?;
    let w3 = g_mumford_relations(3).unwrap();
    ensure(reduce(&poly("l2w^3"), &w3).is_zero(), || {
        "l2w^3 survives at g=3".into()
    })?;
    let listed = [
        "l1w - l1wb",
        "l2w - l1w * l1wb + l2wb",
        "-l2w * l1wb + l1w * l2wb",
        "l2w * l2wb",
    ];
    for r in listed {
        ensure(is_zero_in_quotient(&poly(r), &w3), || {
            format!("{r} not in the ideal")
        })?;
    }
    Ok(())
}

fn c8_headline() -> Check {
    for (g, want) in [(2, "1/17280"), (3, "-1/4354560")] {
        let v = unpointed_invariant(g).unwrap();
        ensure(v == Outcome::Exact(q(want)), || format!("<>^{g} = {v:?}"))?;
        let phys = n_g0_formula(g, &q("3")).unwrap();
        ensure(phys == q(want), || format!("N_{{{g},0}}(3) = {phys}"))?;
    }
    Ok(())
}

/// Brute-force index sum on hash-mapped tensors keyed by sorted index tuples.
fn gamma2_oracle(
    r: usize,
    e: &HashMap<Vec<usize>, Rational>,
    df1: &HashMap<Vec<usize>, Rational>,
    ddf1: &HashMap<Vec<usize>, Rational>,
    d3: &HashMap<Vec<usize>, Rational>,
    d4: &HashMap<Vec<usize>, Rational>,
) -> Rational {
    let at = |t: &HashMap<Vec<usize>, Rational>, idx: &[usize]| {
        let mut k = idx.to_vec();
        k.sort();
        t[&k].clone()
    };
    let (h, o, tw) = (q("1/2"), q("1/8"), q("1/12"));
    let mut total = Rational::zero();
    for i in 0..r {
        for j in 0..r {
            let eij = at(e, &[i, j]);
            total += &eij * &(&h * &at(ddf1, &[i, j]) + &h * &(at(df1, &[i]) * at(df1, &[j])));
            for k in 0..r {
                for l in 0..r {
                    let ekl = at(e, &[k, l]);
                    total += &eij
                        * &ekl
                        * (&h * &(at(df1, &[i]) * at(d3, &[j, k, l]))
                            + &o * &at(d4, &[i, j, k, l]));
                    for m in 0..r {
                        for n in 0..r {
                            let emn = at(e, &[m, n]);
                            let a = &o * &(at(d3, &[i, j, k]) * at(d3, &[l, m, n]));
                            let b = &tw * &(at(d3, &[i, k, m]) * at(d3, &[j, l, n]));
                            total += &eij * &ekl * &emn * (a + b);
                        }
                    }
                }
            }
        }
    }
    total
}

fn sorted_tuples(rank: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|t: Vec<usize>| {
                let lo = t.last().copied().unwrap_or(0);
                (lo..r).map(move |i| {
                    let mut t = t.clone();
                    t.push(i);
                    t
                })
            })
            .collect();
    }
    out
}

fn dense(t: &HashMap<Vec<usize>, Rational>, rank: usize, r: usize) -> Vec<Rational> {
    (0..r.pow(rank as u32))
        .map(|mut flat| {
            let mut idx = vec![0; rank];
            for s in idx.iter_mut().rev() {
                *s = flat % r;
                flat /= r;
            }
            idx.sort();
            t[&idx].clone()
        })
        .collect()
}

fn c9_gamma2() -> Check {
    let one = |e: &str, df1: &str, ddf1: &str, d3: &str, d4: &str| {
        let d = AmplitudeData::new(
            1,
            vec![q(e)],
            vec![q(df1)],
            vec![q(ddf1)],
            vec![q(d3)],
            vec![q(d4)],
        );
        gamma2(&d.unwrap())
    };
    ensure(one("1", "0", "0", "1", "0") == q("5/24"), || {
        "d3F0 slot".into()
    })?;
    ensure(one("1", "0", "0", "0", "1") == q("1/8"), || {
        "d4F0 slot".into()
    })?;
    ensure(one("1", "1", "0", "0", "0") == q("1/2"), || {
        "dF1 slot".into()
    })?;

    let mut rng = ChaCha8Rng::seed_from_u64(0x6a2);
    let r = 2;
    for trial in 0..20 {
        let mut rand_tensor = |rank| -> HashMap<Vec<usize>, Rational> {
            sorted_tuples(rank, r)
                .into_iter()
                .map(|t| {
                    (
                        t,
                        Rational::new(rng.gen_range(-7..=7), rng.gen_range(1..=5)),
                    )
                })
                .collect()
        };
        let (e, df1, ddf1, d3, d4) = (
            rand_tensor(2),
            rand_tensor(1),
            rand_tensor(2),
            rand_tensor(3),
            rand_tensor(4),
        );
        let data = AmplitudeData::new(
            r,
            dense(&e, 2, r),
            dense(&df1, 1, r),
            dense(&ddf1, 2, r),
            dense(&d3, 3, r),
            dense(&d4, 4, r),
        )
        .map_err(|err| err.to_string())?;
        let got = gamma2(&data);
        let want = gamma2_oracle(r, &e, &df1, &ddf1, &d3, &d4);
        ensure(got == want, || format!("trial {trial}: {got} != {want}"))?;
    }
    Ok(())
}

fn run_property<S: Strategy>(
    name: &str,
    cases: u32,
    strategy: S,
    body: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Check {
    let mut runner = TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    });
    runner
        .run(&strategy, body)
        .map_err(|e| format!("{name}: {e}"))
}

fn c10_properties() -> Check {
    run_property("revert round trip", 16, invertible_series(50), |f| {
        revert_round_trip(&f)
    })?;
    run_property(
        "theta Leibniz",
        32,
        (series("x", 12), series("x", 12)),
        |(f, g)| theta_leibniz(&f, &g),
    )?;
    let m3 = mumford_relations(3).unwrap();
    run_property(
        "Mumford order independence",
        16,
        (
            lambda_poly(vec![Lambda(1), Lambda(2), Lambda(3)], 4, 3),
            Just(vec![0usize, 1, 2]).prop_shuffle(),
        ),
        |(p, perm)| reduction_order_independent(&p, &m3, &perm),
    )?;
    let w3 = g_mumford_relations(3).unwrap();
    let eigen = vec![Omega(1), Omega(2), OmegaBar(1), OmegaBar(2)];
    run_property(
        "G-Mumford order independence",
        16,
        (
            lambda_poly(eigen.clone(), 3, 3),
            Just(vec![0usize, 1, 2, 3]).prop_shuffle(),
        ),
        |(p, perm)| reduction_order_independent(&p, &w3, &perm),
    )?;
    run_property("w/wb symmetry", 16, lambda_poly(eigen, 3, 3), |p| {
        swap_symmetry(&p, &w3)
    })?;
    for n in 0..=40 {
        ensure(bernoulli(n) == bernoulli_oracle(n), || {
            format!("B_{n} disagrees with oracle")
        })?;
    }
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        ("Picard-Fuchs annihilation at order 60", c1_annihilation),
        ("closed form equals recurrence at order 60", c2_recurrence),
        ("N_{0,1..4} = 1/3, -1/27, 1/9, -1093/729", c3_genus0),
        ("F0 supported on multiples of 3", c4_grading),
        ("Faber-Pandharipande values g=2..5", c5_fp),
        ("disc reduction and weight independence", c6_disc),
        ("connected contribution vanishes at g=2,3", c7_connected),
        (
            "unpointed invariants agree with the physics formula",
            c8_headline,
        ),
        ("Gamma_2 examples and brute-force oracle", c9_gamma2),
        ("property suites", c10_properties),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(()) => println!("criterion {:>2}: PASS {name}", i + 1),
            Err(why) => {
                println!("criterion {:>2}: FAIL {name}: {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    // reported, not a criterion
    match hodge::unpointed_invariant(4).unwrap() {
        Outcome::Unsupported(u) => println!("note: g=4 unpointed invariant is Unsupported ({u})"),
        Outcome::Exact(v) => println!("note: g=4 unpointed invariant = {v}"),
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
