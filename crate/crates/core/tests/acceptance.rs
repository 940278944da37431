//! One test per acceptance criterion. Each prints a single PASS/FAIL line
//! (visible with `--nocapture`, or in the failure report).

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qzeta::arith::lambda_seq;
use qzeta::asympt::{displayed_expansion, displayed_residual, lemma1_holds, limit_theorem_check, prop2_limit, LimitKind};
use qzeta::brackets::{enumerate_indices, eval_zeta, evaluate, BracketIndex, ExpansionCache, Model};
use qzeta::relations::{depth1_independence, dims};
use qzeta::series::{f_poly_series, QPolynomial, QSeries};
use qzeta::words::{
    dual_stuffle, enumerate_words, eval_poly, phi, phi_inv, stuffle, tau, word_weight, EvalMap, Letter, WordPoly,
};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn report(n: u32, ok: bool, started: Instant, budget: Duration, detail: String) {
    let t = started.elapsed();
    let in_time = t <= budget;
    println!(
        "criterion {n:>2}: {}  {detail}  ({:.2}s, budget {}s)",
        if ok && in_time { "PASS" } else { "FAIL" },
        t.as_secs_f64(),
        budget.as_secs()
    );
    assert!(ok, "criterion {n} failed: {detail}");
    assert!(in_time, "criterion {n} exceeded its runtime budget");
}

/// `Σ c·ζ[s; r]` through `q^order`.
fn combination(terms: &[(BigRational, &[u32], &[u32])], order: usize) -> QSeries {
    let mut acc = QSeries::zero(order);
    for (c, s, r) in terms {
        acc = &acc + &eval_zeta(s, r, order).unwrap().scale(c);
    }
    acc
}

#[test]
fn criterion_01_weight_three_relation() {
    let t = Instant::now();
    let res = combination(
        &[
            (q(1, 1), &[2], &[2]),
            (q(-1, 2), &[2], &[1]),
            (q(-1, 1), &[3], &[1]),
            (q(1, 1), &[2, 1], &[1, 1]),
        ],
        500,
    );
    let ok = res.order() == 500 && res.is_zero();
    report(1, ok, t, Duration::from_secs(10), "ζ[2;2] − ½ζ[2;1] − ζ[3;1] + ζ[2,1;1,1] ≡ 0 through q^500".into());
}

#[test]
fn criterion_02_weight_four_relations() {
    let t = Instant::now();
    // each reduction written as left side minus right side
    let relations: Vec<(&str, Vec<(BigRational, &[u32], &[u32])>)> = vec![
        (
            "ζ[3;2]",
            vec![(q(1, 1), &[3], &[2]), (q(-1, 4), &[2], &[1]), (q(-3, 2), &[4], &[1]), (q(2, 1), &[2, 2], &[1, 1])],
        ),
        (
            "ζ[2,1;2,1]",
            vec![
                (q(1, 1), &[2, 1], &[2, 1]),
                (q(-1, 1), &[2, 1], &[1, 1]),
                (q(-1, 2), &[1, 2], &[1, 1]),
                (q(1, 1), &[2, 2], &[1, 1]),
                (q(-1, 1), &[1, 3], &[1, 1]),
                (q(1, 1), &[2, 1, 1], &[1, 1, 1]),
                (q(1, 1), &[1, 2, 1], &[1, 1, 1]),
            ],
        ),
        (
            "ζ[2,1;1,2]",
            vec![
                (q(1, 1), &[2, 1], &[1, 2]),
                (q(1, 2), &[2, 1], &[1, 1]),
                (q(1, 2), &[1, 2], &[1, 1]),
                (q(-2, 1), &[2, 2], &[1, 1]),
                (q(-1, 1), &[3, 1], &[1, 1]),
                (q(1, 1), &[1, 3], &[1, 1]),
                (q(-1, 1), &[1, 2, 1], &[1, 1, 1]),
            ],
        ),
        (
            "ζ[1,2;2,1]",
            vec![
                (q(1, 1), &[1, 2], &[2, 1]),
                (q(1, 1), &[2, 1], &[1, 1]),
                (q(-2, 1), &[2, 2], &[1, 1]),
                (q(-1, 1), &[2, 1, 1], &[1, 1, 1]),
            ],
        ),
        (
            "mono",
            vec![
                (q(1, 3), &[2], &[1]),
                (q(-1, 1), &[3], &[1]),
                (q(1, 1), &[4], &[1]),
                (q(-2, 1), &[2, 2], &[1, 1]),
                (q(2, 1), &[3, 1], &[1, 1]),
            ],
        ),
    ];
    let bad: Vec<&str> = relations
        .iter()
        .filter(|(_, terms)| !combination(terms, 500).is_zero())
        .map(|(name, _)| *name)
        .collect();
    report(
        2,
        bad.is_empty(),
        t,
        Duration::from_secs(60),
        format!("5 relations through q^500, nonvanishing: {bad:?}"),
    );
}

#[test]
fn criterion_03_dimensions() {
    let t = Instant::now();
    let mut cache = ExpansionCache::in_memory();
    let zeta = dims(Model::Zeta, 6, 500, &mut cache);
    let mono = dims(Model::Mono, 6, 500, &mut cache);
    let ok = [&zeta, &mono].iter().all(|d| d[4] == 15 && d[5] == 28 && d[6] == 51);
    report(3, ok, t, Duration::from_secs(900), format!("zeta {zeta:?}, mono {mono:?}"));
}

#[test]
fn criterion_04_counting() {
    let t = Instant::now();
    let mut ok = true;
    // (1 − x)/(1 − 3x + x²) = 1, 2, 5, 13, 34, …
    let mut fib = vec![1usize, 2];
    for n in 2..=8 {
        fib.push(3 * fib[n - 1] - fib[n - 2]);
    }
    for n in 0..=8u32 {
        ok &= enumerate_indices(Model::Mono, n).len() == 1 << n;
        ok &= enumerate_indices(Model::Bi, n).len() == fib[n as usize];
        ok &= enumerate_indices(Model::Zeta, n).len() == fib[n as usize];
    }
    let family = enumerate_indices(Model::Zeta, 4);
    ok &= family.len() == 34;
    let classes: BTreeSet<(Vec<u32>, Vec<u32>)> = family
        .iter()
        .map(|i| {
            let d: (Vec<u32>, Vec<u32>) = (i.r.iter().rev().copied().collect(), i.s.iter().rev().copied().collect());
            std::cmp::max((i.s.clone(), i.r.clone()), d)
        })
        .collect();
    ok &= classes.len() == 21;
    report(
        4,
        ok,
        t,
        Duration::from_secs(1),
        format!("2^n and 1,2,5,13,34,… through n = 8; {} duality classes at weight 4", classes.len()),
    );
}

#[test]
fn criterion_05_homomorphisms() {
    let t = Instant::now();
    let order = 150;
    let mut cache = ExpansionCache::in_memory();
    let words = enumerate_words(6);
    let mut pairs: Vec<(&Vec<Letter>, &Vec<Letter>)> = Vec::new();
    for w in &words {
        for v in &words {
            if word_weight(w) + word_weight(v) <= 4 {
                pairs.push((w, v));
            }
        }
    }
    let exhaustive = pairs.len();
    let mut rng = ChaCha8Rng::seed_from_u64(20_161_015);
    let mut sampled = 0;
    while sampled < 60 {
        let (w, v) = (words.choose(&mut rng).unwrap(), words.choose(&mut rng).unwrap());
        if (5..=6).contains(&(word_weight(w) + word_weight(v))) {
            pairs.push((w, v));
            sampled += 1;
        }
    }
    let mut failures = Vec::new();
    for (w, v) in &pairs {
        let (w, v) = (WordPoly::word((*w).clone()), WordPoly::word((*v).clone()));
        let want = &eval_poly(&w, EvalMap::Bracket, order, &mut cache) * &eval_poly(&v, EvalMap::Bracket, order, &mut cache);
        if eval_poly(&stuffle(&w, &v), EvalMap::Bracket, order, &mut cache) != want {
            failures.push(format!("stuffle {w} {v}"));
        }
        if eval_poly(&dual_stuffle(&w, &v), EvalMap::Bracket, order, &mut cache) != want {
            failures.push(format!("dual stuffle {w} {v}"));
        }
    }
    report(
        5,
        failures.is_empty(),
        t,
        Duration::from_secs(300),
        format!("{exhaustive} exhaustive + {sampled} random pairs at q^{order}, failures {failures:?}"),
    );
}

#[test]
fn criterion_06_duality() {
    let t = Instant::now();
    let order = 150;
    let mut cache = ExpansionCache::in_memory();
    let words = enumerate_words(6);
    let mut failures = Vec::new();
    for w in &words {
        let p = WordPoly::word(w.clone());
        let tw = tau(&p);
        if eval_poly(&tw, EvalMap::Zeta, order, &mut cache) != eval_poly(&p, EvalMap::Zeta, order, &mut cache) {
            failures.push(format!("value of τ {p}"));
        }
        if tau(&tw) != p {
            failures.push(format!("τ² {p}"));
        }
        if phi(&phi_inv(&p)) != p || phi_inv(&phi(&p)) != p {
            failures.push(format!("φ inverse {p}"));
        }
        if w.iter().all(|l| l.r == 1) && phi(&p) != p {
            failures.push(format!("φ on Z′ {p}"));
        }
    }
    report(
        6,
        failures.is_empty(),
        t,
        Duration::from_secs(300),
        format!("{} words of weight ≤ 6 at q^{order}, failures {failures:?}", words.len()),
    );
}

#[test]
fn criterion_07_single_factor_expansions() {
    let t = Instant::now();
    let mut bad = Vec::new();
    for n in 1..=6 {
        for s in 1..=6 {
            if !lemma1_holds(n, s).unwrap() {
                bad.push(format!("grid ({n},{s})"));
            }
        }
        for s in 1..=4 {
            if !displayed_residual(n, s).unwrap().is_zero() {
                bad.push(format!("shifted form ({n},{s})"));
            }
        }
    }
    let (c2, _) = displayed_expansion(2).unwrap();
    let (c4, d4) = displayed_expansion(4).unwrap();
    let constants = c2 == q(1, 12) && c4 == q(-1, 720) && d4.coeff(0) == q(-1, 720);
    let display = (-4..=0).map(|e| d4.coeff(e)).collect::<Vec<_>>() == vec![q(1, 1), q(-2, 1), q(7, 6), q(-1, 6), q(-1, 720)];
    report(
        7,
        bad.is_empty() && constants && display,
        t,
        Duration::from_secs(10),
        format!("36 residuals and 24 shifted forms, constants {constants}, display {display}, bad {bad:?}"),
    );
}

#[test]
fn criterion_08_f_polynomials_and_lambda() {
    let t = Instant::now();
    let f = f_poly_series(5);
    let display: [Vec<BigRational>; 6] = [
        vec![q(1, 1)],
        vec![q(1, 1)],
        vec![q(1, 1), q(-1, 2)],
        vec![q(1, 1), q(-1, 1), q(1, 6)],
        vec![q(1, 1), q(-3, 2), q(7, 12), q(-1, 24)],
        vec![q(1, 1), q(-2, 1), q(5, 4), q(-1, 4), q(1, 120)],
    ];
    let f_ok = display.iter().enumerate().all(|(k, c)| *f.coeff(k) == QPolynomial::new(c.clone()));
    let b = common::bernoulli(20);
    let table = lambda_seq(20);
    let mut fact = BigRational::from_integer(1.into());
    let mut lambda_ok = table.lambda[1] == q(-1, 2) && table.lambda_hat[1] == q(1, 2);
    for s in 1..=20usize {
        fact *= BigRational::from_integer(s.into());
        let want = &b[s] / &fact;
        lambda_ok &= table.lambda[s] == want;
        if s >= 2 {
            lambda_ok &= table.lambda_hat[s] == want;
        }
    }
    report(
        8,
        f_ok && lambda_ok,
        t,
        Duration::from_secs(1),
        format!("F_0..F_5 verbatim {f_ok}, λ and λ̂ against Bernoulli numbers {lambda_ok}"),
    );
}

#[test]
fn criterion_09_depth_one_independence() {
    let t = Instant::now();
    let mut cache = ExpansionCache::in_memory();
    let reports: Vec<_> = (1..=6).map(|n| depth1_independence(n, 500, &mut cache)).collect();
    let ok = reports.iter().all(|r| r.certified && r.rank == r.count);
    report(
        9,
        ok,
        t,
        Duration::from_secs(60),
        format!("rank/count for n = 1..6: {:?}", reports.iter().map(|r| (r.rank, r.count)).collect::<Vec<_>>()),
    );
}

#[test]
fn criterion_10_radial_limits() {
    let t = Instant::now();
    let mut parts = Vec::new();
    let mut ok = true;
    for (s, r) in [(2, 0), (3, 1)] {
        let rows = prop2_limit(&BracketIndex::bi(&[s], &[r]).unwrap(), &[0.1, 0.05, 0.02]).unwrap();
        let good = rows.iter().all(|x| (x.ratio - 1.0).abs() <= 2.0 * x.eps);
        ok &= good;
        parts.push(format!(
            "[{s};{r}] |ratio−1| = {:?} {}",
            rows.iter().map(|x| format!("{:.4}", (x.ratio - 1.0).abs())).collect::<Vec<_>>(),
            if good { "ok" } else { "over 2ε" }
        ));
    }
    let z1 = [Letter::z(1)];
    let z2 = [Letter::z(2)];
    for (kind, w, tol) in [(LimitKind::StuffleT, &z2, 0.05), (LimitKind::ShuffleS, &z2, 0.05), (LimitKind::MixedTS, &z1, 0.10)] {
        let c = limit_theorem_check(kind, w, w, 0.02).unwrap();
        let good = c.relative_error() <= tol;
        ok &= good;
        parts.push(format!(
            "{kind}: lhs {:.5} rhs {:.5} rel {:.4} (tol {tol}) {}",
            c.lhs,
            c.rhs,
            c.relative_error(),
            if good { "ok" } else { "over" }
        ));
    }
    report(10, ok, t, Duration::from_secs(60), parts.join("; "));
}

#[test]
fn criterion_11_oracle_equivalence() {
    let t = Instant::now();
    let mut checked = 0;
    let mut bad = Vec::new();
    for model in [Model::Mono, Model::Bi, Model::Zeta] {
        for idx in enumerate_indices(model, 4) {
            checked += 1;
            if evaluate(&idx, 30).coeffs() != &common::naive_expansion(&idx, 30)[..] {
                bad.push(idx.to_string());
            }
        }
    }
    let zero_free = bad.is_empty() && evaluate(&BracketIndex::empty(Model::Bi), 30).coeffs()[1..].iter().all(Zero::is_zero);
    report(
        11,
        zero_free,
        t,
        Duration::from_secs(60),
        format!("{checked} indices of weight ≤ 4 at q^30, mismatches {bad:?}"),
    );
}
