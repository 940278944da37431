//! The fixed reproduction checklist behind `qzeta verify --suite paper`.

use std::time::Instant;

use num_traits::Zero;
use serde::Serialize;

use crate::arith::{factorial, lambda_seq, rat, Rational};
use crate::asympt::{lemma1_holds, limit_theorem_check, LimitKind};
use crate::brackets::{enumerate_indices, eval_mono, BracketIndex, ExpansionCache, Model};
use crate::relations::{
    bracket_counts, depth1_independence, dims, dual_class_count, find_relations,
    find_relations_mod_duality,
};
use crate::series::{eulerian, f_poly_series, QPolynomial, QSeries};
use crate::words::{
    dual_stuffle, eval_poly, parse_word, phi, stuffle, tau, EvalMap, WordPoly,
};

#[derive(Clone, Debug, Serialize)]
pub struct SuiteItem {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

/// `Σ c·ζ[s; r] = 0` as (coefficient, top row, bottom row) triples.
pub type KnownRelation = (&'static str, Vec<(Rational, Vec<u32>, Vec<u32>)>);

/// The stated zeta-bracket relations of weight 3 and 4, each moved to one side.
pub fn known_relations() -> Vec<KnownRelation> {
    let t = |c: Rational, s: &[u32], r: &[u32]| (c, s.to_vec(), r.to_vec());
    vec![
        (
            "ζ[2;2]",
            vec![
                t(rat(1, 1), &[2], &[2]),
                t(rat(-1, 2), &[2], &[1]),
                t(rat(-1, 1), &[3], &[1]),
                t(rat(1, 1), &[2, 1], &[1, 1]),
            ],
        ),
        (
            "ζ[3;2]",
            vec![
                t(rat(1, 1), &[3], &[2]),
                t(rat(-1, 4), &[2], &[1]),
                t(rat(-3, 2), &[4], &[1]),
                t(rat(2, 1), &[2, 2], &[1, 1]),
            ],
        ),
        (
            "ζ[2,1;2,1]",
            vec![
                t(rat(1, 1), &[2, 1], &[2, 1]),
                t(rat(-1, 1), &[2, 1], &[1, 1]),
                t(rat(-1, 2), &[1, 2], &[1, 1]),
                t(rat(1, 1), &[2, 2], &[1, 1]),
                t(rat(-1, 1), &[1, 3], &[1, 1]),
                t(rat(1, 1), &[2, 1, 1], &[1, 1, 1]),
                t(rat(1, 1), &[1, 2, 1], &[1, 1, 1]),
            ],
        ),
        (
            "ζ[2,1;1,2]",
            vec![
                t(rat(1, 1), &[2, 1], &[1, 2]),
                t(rat(1, 2), &[2, 1], &[1, 1]),
                t(rat(1, 2), &[1, 2], &[1, 1]),
                t(rat(-2, 1), &[2, 2], &[1, 1]),
                t(rat(-1, 1), &[3, 1], &[1, 1]),
                t(rat(1, 1), &[1, 3], &[1, 1]),
                t(rat(-1, 1), &[1, 2, 1], &[1, 1, 1]),
            ],
        ),
        (
            "ζ[1,2;2,1]",
            vec![
                t(rat(1, 1), &[1, 2], &[2, 1]),
                t(rat(1, 1), &[2, 1], &[1, 1]),
                t(rat(-2, 1), &[2, 2], &[1, 1]),
                t(rat(-1, 1), &[2, 1, 1], &[1, 1, 1]),
            ],
        ),
        (
            "mono weight 4",
            vec![
                t(rat(1, 3), &[2], &[1]),
                t(rat(-1, 1), &[3], &[1]),
                t(rat(1, 1), &[4], &[1]),
                t(rat(-2, 1), &[2, 2], &[1, 1]),
                t(rat(2, 1), &[3, 1], &[1, 1]),
            ],
        ),
    ]
}

/// `Σ c·ζ[s; r]` through `q^order`.
pub fn relation_residual(rel: &KnownRelation, order: usize, cache: &mut ExpansionCache) -> QSeries {
    let mut total = QSeries::zero(order);
    for (c, s, r) in &rel.1 {
        let idx = BracketIndex::zeta(s, r).expect("valid index");
        total = &total + &cache.get_or_compute(&idx, order).scale(c);
    }
    total
}

struct Runner {
    items: Vec<SuiteItem>,
}

impl Runner {
    fn run(&mut self, name: &str, f: impl FnOnce() -> (bool, String)) {
        let start = Instant::now();
        let (passed, detail) = f();
        self.items.push(SuiteItem {
            name: name.to_string(),
            passed,
            detail,
            seconds: start.elapsed().as_secs_f64(),
        });
    }
}

fn f_and_lambda() -> (bool, String) {
    let f = f_poly_series(5);
    let want: [&[(i64, i64)]; 6] = [
        &[(1, 1)],
        &[(1, 1)],
        &[(1, 1), (-1, 2)],
        &[(1, 1), (-1, 1), (1, 6)],
        &[(1, 1), (-3, 2), (7, 12), (-1, 24)],
        &[(1, 1), (-2, 1), (5, 4), (-1, 4), (1, 120)],
    ];
    let f_ok = want.iter().enumerate().all(|(k, c)| {
        *f.coeff(k) == QPolynomial::new(c.iter().map(|&(p, q)| rat(p, q)).collect())
    });
    let t = lambda_seq(20);
    let first = t.lambda_hat[1] == rat(1, 2) && t.lambda[1] == rat(-1, 2);
    let rest = (2..=20).all(|s| t.lambda[s] == t.lambda_hat[s]);
    (
        f_ok && first && rest,
        format!("F_0..F_5 {f_ok}, λ̂_1 = −λ_1 = 1/2 {first}, λ̂_s = λ_s (2 ≤ s ≤ 20) {rest}"),
    )
}

fn eulerian_checks() -> (bool, String) {
    let shapes = [(1, vec![0, 1]), (3, vec![0, 1, 1]), (4, vec![0, 1, 4, 1])];
    let shapes_ok = shapes
        .iter()
        .all(|(s, c)| eulerian(*s).map(|p| p == QPolynomial::from_ints(c)).unwrap_or(false));
    let at_one = (1..=8u32).all(|s| {
        eulerian(s).map(|p| p.eval(&rat(1, 1)) == Rational::from_integer(factorial(s as usize - 1).into()))
            .unwrap_or(false)
    });
    // P_{s-1}(q)/(1-q)^s against Σ d^{s-1} q^d
    let order = 30;
    let series_ok = (1..=6u32).all(|s| {
        let p = eulerian(s).expect("s ≥ 1");
        let num = p.at_power(1, order);
        let den = QSeries::from_coeffs(
            QPolynomial::from_ints(&[1, -1]).pow(s).at_power(1, order).coeffs().to_vec(),
        );
        let lhs = num.div(&den).expect("invertible");
        (0..=order).all(|d| {
            let want = if d == 0 { Rational::zero() } else { rat((d as i64).pow(s - 1), 1) };
            *lhs.coeff(d) == want
        })
    });
    (
        shapes_ok && at_one && series_ok,
        format!("P_0, P_2, P_3 {shapes_ok}; P_(s−1)(1) = (s−1)! for s ≤ 8 {at_one}; Σ d^(s−1) q^d for s ≤ 6 {series_ok}"),
    )
}

fn lemma_grid() -> (bool, String) {
    let bad: Vec<String> = (1..=4)
        .flat_map(|n| (1..=4).map(move |s| (n, s)))
        .filter(|&(n, s)| !lemma1_holds(n, s).unwrap_or(false))
        .map(|(n, s)| format!("(n={n}, s={s})"))
        .collect();
    (bad.is_empty(), if bad.is_empty() { "16 of 16 residuals vanish through ε^0".into() } else { format!("nonzero: {}", bad.join(" ")) })
}

fn property_samples(cache: &mut ExpansionCache) -> (bool, String) {
    let order = 100;
    let w = |t: &str| WordPoly::word(parse_word(t).expect("valid word"));
    let pairs = [
        ("z(1,1)", "z(1,1)"),
        ("z(2,1)", "z(2,1)"),
        ("z(1,2)", "z(2,1)"),
        ("z(2,1)z(1,1)", "z(1,2)"),
        ("z(1,1)z(1,2)", "z(2,2)"),
    ];
    let mut stuffle_ok = true;
    let mut dual_ok = true;
    for (a, b) in pairs {
        let (a, b) = (w(a), w(b));
        let want = &eval_poly(&a, EvalMap::Bracket, order, cache) * &eval_poly(&b, EvalMap::Bracket, order, cache);
        stuffle_ok &= eval_poly(&stuffle(&a, &b), EvalMap::Bracket, order, cache) == want;
        dual_ok &= eval_poly(&dual_stuffle(&a, &b), EvalMap::Bracket, order, cache) == want;
    }
    let mut duality_ok = true;
    let mut phi_ok = true;
    for idx in enumerate_indices(Model::Zeta, 4) {
        let p = WordPoly::word(crate::words::index_word(&idx));
        let z = eval_poly(&p, EvalMap::Zeta, order, cache);
        duality_ok &= eval_poly(&tau(&p), EvalMap::Zeta, order, cache) == z;
        phi_ok &= eval_poly(&p, EvalMap::Bracket, order, cache) == eval_poly(&phi(&p), EvalMap::Zeta, order, cache);
    }
    let square = eval_mono(&[2], order).expect("valid");
    let z21 = w("z(2,1)");
    let example = eval_poly(&dual_stuffle(&z21, &z21), EvalMap::Bracket, order, cache) == &square * &square;
    (
        stuffle_ok && dual_ok && duality_ok && phi_ok && example,
        format!(
            "stuffle {stuffle_ok}, dual stuffle {dual_ok}, duality on weight ≤ 4 {duality_ok}, [w] = ζ[φw] {phi_ok}, [2]² example {example}"
        ),
    )
}

fn known_relation_items(r: &mut Runner, cache: &mut ExpansionCache) {
    let rels = known_relations();
    r.run("weight-3 relation through q^500", || {
        let ok = relation_residual(&rels[0], 500, cache).is_zero();
        (ok, format!("{} relation residual {}", rels[0].0, if ok { "vanishes" } else { "nonzero" }))
    });
    r.run("weight-4 relations through q^500", || {
        let bad: Vec<&str> = rels[1..]
            .iter()
            .filter(|rel| !relation_residual(rel, 500, cache).is_zero())
            .map(|rel| rel.0)
            .collect();
        (bad.is_empty(), if bad.is_empty() { "5 of 5 vanish".into() } else { format!("nonzero: {}", bad.join(", ")) })
    });
    r.run("discovered kernels contain the stated relations", || {
        let (Ok(w3), Ok(w4)) = (
            find_relations_mod_duality(Model::Zeta, 3, 200, 500, cache),
            find_relations(Model::Zeta, 4, 200, 500, cache),
        ) else {
            return (false, "relation search failed".into());
        };
        let terms = |rel: &KnownRelation| -> Vec<(BracketIndex, Rational)> {
            rel.1.iter().map(|(c, s, r)| (BracketIndex::zeta(s, r).expect("valid"), c.clone())).collect()
        };
        let one_class = w3.kernel_basis.len() == 1 && w3.all_verified();
        let members = rels.iter().all(|rel| w4.contains(&terms(rel))) && w4.all_verified();
        (
            one_class && members,
            format!(
                "weight 3: {} relation(s) beyond duality; weight 4: kernel dimension {}, all stated relations in span {members}",
                w3.kernel_basis.len(),
                w4.kernel_basis.len()
            ),
        )
    });
}

/// Runs every item in order; a panic inside an item is not caught.
pub fn run_paper_suite(cache: &mut ExpansionCache) -> Vec<SuiteItem> {
    let mut r = Runner { items: Vec::new() };
    r.run("λ and F-polynomial tables", f_and_lambda);
    r.run("Eulerian numerators", eulerian_checks);
    r.run("ε-expansion grid n, s ≤ 4", lemma_grid);
    r.run("product and duality samples", || property_samples(cache));
    known_relation_items(&mut r, cache);
    r.run("counts and duality classes", || {
        let count = enumerate_indices(Model::Zeta, 4).len();
        let gf = bracket_counts(Model::Zeta, 4)[4];
        let classes = dual_class_count(4);
        (
            count == 34 && gf == 34 && classes == 21,
            format!("{count} zeta indices of weight ≤ 4 (generating function {gf}), {classes} duality classes"),
        )
    });
    for model in [Model::Zeta, Model::Mono] {
        r.run(&format!("dimensions d_4, d_5, d_6 ({model})"), || {
            let d = dims(model, 6, 500, cache);
            (
                d[4] == 15 && d[5] == 28 && d[6] == 51,
                format!("d_0..d_6 = {}", d.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")),
            )
        });
    }
    r.run("depth-one independence n ≤ 6", || {
        let reports: Vec<_> = (1..=6).map(|n| depth1_independence(n, 500, cache)).collect();
        let ok = reports.iter().all(|x| x.certified);
        let floor_ok = reports
            .iter()
            .zip(1u32..)
            .all(|(x, n)| x.count == ((n + 1) * (n + 1) / 4) as usize);
        (
            ok && floor_ok,
            reports
                .iter()
                .zip(1..)
                .map(|(x, n)| format!("n={n}: {}/{}", x.rank, x.count))
                .collect::<Vec<_>>()
                .join(", "),
        )
    });
    let z1 = parse_word("z(1,1)").expect("valid");
    let z2 = parse_word("z(2,1)").expect("valid");
    for (kind, w, tol) in [
        (LimitKind::StuffleT, &z2, 0.05),
        (LimitKind::ShuffleS, &z2, 0.05),
        (LimitKind::MixedTS, &z1, 0.10),
    ] {
        r.run(&format!("radial limit {kind} at ε = 0.02"), || match limit_theorem_check(kind, w, w, 0.02) {
            Ok(c) => (
                c.relative_error() <= tol,
                format!(
                    "lhs {:.6}, rhs {:.6}, relative error {:.4} (tolerance {tol})",
                    c.lhs,
                    c.rhs,
                    c.relative_error()
                ),
            ),
            Err(e) => (false, e.to_string()),
        });
    }
    r.items
}

/// Plain-text pass/fail table.
pub fn format_table(items: &[SuiteItem]) -> String {
    let width = items.iter().map(|i| i.name.chars().count()).max().unwrap_or(0);
    let mut out = String::new();
    for i in items {
        let pad = width - i.name.chars().count();
        out.push_str(&format!(
            "{} {}{}  {:>7.2}s  {}\n",
            if i.passed { "PASS" } else { "FAIL" },
            i.name,
            " ".repeat(pad),
            i.seconds,
            i.detail
        ));
    }
    let failed = items.iter().filter(|i| !i.passed).count();
    out.push_str(&format!("{} passed, {} failed\n", items.len() - failed, failed));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stated_relations_hold_at_low_order() {
        let mut cache = ExpansionCache::in_memory();
        for rel in known_relations() {
            assert!(relation_residual(&rel, 80, &mut cache).is_zero(), "{}", rel.0);
        }
    }

    #[test]
    fn fast_items_pass() {
        assert!(f_and_lambda().0);
        assert!(eulerian_checks().0);
        assert!(lemma_grid().0);
    }

    #[test]
    fn table_layout() {
        let items = vec![
            SuiteItem { name: "a".into(), passed: true, detail: "x".into(), seconds: 0.0 },
            SuiteItem { name: "bbb".into(), passed: false, detail: "y".into(), seconds: 1.5 },
        ];
        let t = format_table(&items);
        assert!(t.starts_with("PASS a  "));
        assert!(t.contains("FAIL bbb"));
        assert!(t.ends_with("1 passed, 1 failed\n"));
    }
}
