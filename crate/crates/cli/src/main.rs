use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qzeta::arith::format_rational;
use qzeta::asympt::{
    displayed_residual, lemma1_check, limit_theorem_check, mzv_numeric, prop2_limit, LimitKind,
    DEFAULT_MZV_CUTOFF,
};
use qzeta::brackets::{eval_float, BracketIndex, ExpansionCache, Model, DEFAULT_TERM_BUDGET};
use qzeta::relations::{
    conjectural_dims, dims, find_relations, find_relations_mod_duality, DISCOVER_ORDER, VERIFY_ORDER,
};
use qzeta::suite::{format_table, run_paper_suite};
use qzeta::words::{
    dual_stuffle, eval_poly, mzv_shuffle, mzv_stuffle, parse_word, parse_xy, phi, phi_inv, stuffle,
    tau, EvalMap, WordPoly, XyPoly,
};
use qzeta::Error;

const CACHE_FILE: &str = "expansions.qzc";

#[derive(Parser)]
#[command(name = "qzeta", version, about = "Exact q-series of multiple divisor sums and q-zeta brackets")]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Keep expansions in memory only.
    #[arg(long, global = true)]
    no_cache: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// q-expansion of one bracket.
    Expand(ExpandArgs),
    /// Product of two words.
    Product(ProductArgs),
    /// Partition dual of a zeta index or word.
    Dual(DualArgs),
    /// The change of basis from bi-bracket words to zeta-bracket words.
    Phi(PhiArgs),
    /// Linear relations among all brackets up to a weight.
    Relations(RelationsArgs),
    /// Dimensions of the weight-filtered spans.
    Dims(DimsArgs),
    /// Checks as q → 1.
    Asympt {
        #[command(subcommand)]
        command: AsymptCommand,
    },
    /// Run a fixed reproduction suite.
    Verify(VerifyArgs),
    /// Inspect or reset the expansion cache.
    Cache {
        #[command(subcommand)]
        command: CacheCommand,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Mono,
    Bi,
    Zeta,
}

impl From<ModelArg> for Model {
    fn from(m: ModelArg) -> Model {
        match m {
            ModelArg::Mono => Model::Mono,
            ModelArg::Bi => Model::Bi,
            ModelArg::Zeta => Model::Zeta,
        }
    }
}

#[derive(Args)]
struct ExpandArgs {
    /// `s1,s2,…;r1,r2,…`
    index: String,
    #[arg(long, value_enum, default_value = "zeta")]
    model: ModelArg,
    #[arg(long, default_value_t = 20)]
    order: usize,
    /// Insist on a top row only; the bottom row takes the model default.
    #[arg(long)]
    as_mono: bool,
    /// Also print the float value at this q.
    #[arg(long)]
    at: Option<f64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ProductKind {
    Stuffle,
    DualStuffle,
    MzvStuffle,
    Shuffle,
}

#[derive(Args)]
struct ProductArgs {
    w: String,
    v: String,
    #[arg(long, value_enum, default_value = "stuffle")]
    kind: ProductKind,
    /// Check that the bracket value of the product is the product of values.
    #[arg(long)]
    check_order: Option<usize>,
}

#[derive(Args)]
struct DualArgs {
    /// A word such as `z(2,1)z(1,3)`, or a zeta index `s;r`.
    input: String,
    /// Check equality of the zeta-bracket values through this order.
    #[arg(long)]
    check_order: Option<usize>,
}

#[derive(Args)]
struct PhiArgs {
    word: String,
    #[arg(long)]
    inverse: bool,
    /// Check that the value is preserved through this order.
    #[arg(long)]
    check_order: Option<usize>,
}

#[derive(Args)]
struct RelationsArgs {
    #[arg(long, value_enum, default_value = "zeta")]
    model: ModelArg,
    /// Largest weight in the family.
    #[arg(long)]
    weight: u32,
    #[arg(long, default_value_t = DISCOVER_ORDER)]
    discover: usize,
    #[arg(long, default_value_t = VERIFY_ORDER)]
    verify: usize,
    /// Keep both members of each duality pair (zeta model only).
    #[arg(long)]
    with_duality: bool,
}

#[derive(Args)]
struct DimsArgs {
    #[arg(long, value_enum, default_value = "zeta")]
    model: ModelArg,
    #[arg(long, default_value_t = 4)]
    max_weight: u32,
    #[arg(long, default_value_t = VERIFY_ORDER)]
    order: usize,
}

#[derive(Subcommand)]
enum AsymptCommand {
    /// ε-expansion of one single factor against the closed form.
    Lemma1 {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        s: u32,
        #[arg(long, default_value_t = 2)]
        eps_order: i64,
    },
    /// Scaled bi-bracket against its MZV limit.
    Prop2 {
        index: String,
        #[arg(long, value_delimiter = ',', default_values_t = vec![0.1, 0.05, 0.02])]
        eps: Vec<f64>,
        /// Fail when |ratio − 1| exceeds this multiple of ε.
        #[arg(long, default_value_t = 2.0)]
        factor: f64,
    },
    /// A word product at q = 1 − ε against the classical product.
    Limit {
        w: String,
        v: String,
        #[arg(long, default_value = "stuffle_T")]
        kind: String,
        #[arg(long, default_value_t = 0.02)]
        eps: f64,
        /// Fail when the relative error exceeds this.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Truncated multiple zeta value.
    Mzv {
        /// `s1,s2,…`
        row: String,
        #[arg(long, default_value_t = DEFAULT_MZV_CUTOFF)]
        cutoff: usize,
    },
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value = "paper")]
    suite: String,
}

#[derive(Subcommand)]
enum CacheCommand {
    /// Print the cache file location.
    Path,
    /// Entry count and orders.
    Info,
    /// Delete every stored expansion.
    Clear,
    /// Recompute a sample of entries and compare.
    Audit {
        #[arg(long, default_value_t = 20)]
        sample: usize,
    },
}

/// Success, a failed check, or an error already reported.
enum Outcome {
    Ok,
    CheckFailed,
}

fn cache_path() -> Option<PathBuf> {
    if let Some(dir) = std::env::var_os("QZETA_CACHE_DIR") {
        return Some(PathBuf::from(dir).join(CACHE_FILE));
    }
    let base = std::env::var_os("XDG_CACHE_HOME")
        .map(PathBuf::from)
        .or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache")))?;
    Some(base.join("qzeta").join(CACHE_FILE))
}

fn open_cache(no_cache: bool) -> qzeta::Result<ExpansionCache> {
    match cache_path() {
        Some(p) if !no_cache => ExpansionCache::open(p),
        _ => Ok(ExpansionCache::in_memory()),
    }
}

fn parse_index(model: Model, text: &str, as_mono: bool) -> qzeta::Result<BracketIndex> {
    if as_mono && text.contains(';') {
        return Err(Error::InvalidArgument("--as-mono takes a top row only".into()));
    }
    BracketIndex::parse(model, text)
}

fn word_poly(text: &str) -> qzeta::Result<WordPoly> {
    Ok(WordPoly::word(parse_word(text)?))
}

fn emit(json: bool, value: Value, text: impl FnOnce() -> String) {
    if json {
        println!("{value}");
    } else {
        print!("{}", text());
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

fn outcome(ok: bool) -> Outcome {
    if ok {
        Outcome::Ok
    } else {
        Outcome::CheckFailed
    }
}

fn poly_terms<L: qzeta::words::Symbol>(p: &qzeta::words::Poly<L>) -> Value {
    Value::Array(
        p.sorted_terms()
            .into_iter()
            .map(|(w, c)| json!({"word": qzeta::words::format_word(w), "coeff": format_rational(c)}))
            .collect(),
    )
}

fn cmd_expand(a: &ExpandArgs, json: bool, cache: &mut ExpansionCache) -> qzeta::Result<Outcome> {
    let idx = parse_index(a.model.into(), &a.index, a.as_mono)?;
    let float = a.at.map(|q| eval_float(&idx, q, DEFAULT_TERM_BUDGET)).transpose()?;
    let s = cache.get_or_compute(&idx, a.order);
    let coeffs: Vec<String> = s.coeffs().iter().map(format_rational).collect();
    emit(
        json,
        json!({
            "model": idx.model,
            "s": idx.s,
            "r": idx.r,
            "order": a.order,
            "coefficients": coeffs,
            "value": float.map(|v| json!({"q": a.at, "value": v})),
        }),
        || {
            let mut out = format!("{}\n", coeffs.join(", "));
            if let (Some(q), Some(v)) = (a.at, float) {
                out.push_str(&format!("{idx}(q = {q}) ≈ {v:.15e}\n"));
            }
            out
        },
    );
    Ok(Outcome::Ok)
}

fn cmd_product(a: &ProductArgs, json: bool, cache: &mut ExpansionCache) -> qzeta::Result<Outcome> {
    if a.check_order.is_some() && !matches!(a.kind, ProductKind::Stuffle | ProductKind::DualStuffle) {
        return Err(Error::InvalidArgument(
            "--check-order applies to stuffle and dual-stuffle only".into(),
        ));
    }
    let (text, terms, check) = if a.kind == ProductKind::Shuffle {
        let p = mzv_shuffle(&XyPoly::word(parse_xy(&a.w)?), &XyPoly::word(parse_xy(&a.v)?));
        (p.to_string(), poly_terms(&p), None)
    } else {
        let (w, v) = (word_poly(&a.w)?, word_poly(&a.v)?);
        let p = match a.kind {
            ProductKind::Stuffle => stuffle(&w, &v),
            ProductKind::DualStuffle => dual_stuffle(&w, &v),
            _ => mzv_stuffle(&w, &v)?,
        };
        let check = a.check_order.map(|n| {
            let lhs = eval_poly(&p, EvalMap::Bracket, n, cache);
            let rhs = &eval_poly(&w, EvalMap::Bracket, n, cache) * &eval_poly(&v, EvalMap::Bracket, n, cache);
            (n, lhs == rhs)
        });
        (p.to_string(), poly_terms(&p), check)
    };
    emit(
        json,
        json!({
            "product": text,
            "terms": terms,
            "check": check.map(|(n, ok)| json!({"order": n, "passed": ok})),
        }),
        || {
            let mut out = format!("{text}\n");
            if let Some((n, ok)) = check {
                out.push_str(&format!("homomorphism through q^{n}: {}\n", verdict(ok)));
            }
            out
        },
    );
    Ok(outcome(check.is_none_or(|c| c.1)))
}

fn cmd_dual(a: &DualArgs, json: bool, cache: &mut ExpansionCache) -> qzeta::Result<Outcome> {
    let t = a.input.trim();
    let is_word = t.is_empty() || t == "1" || t.starts_with('z') || t.starts_with('x');
    let (w, d) = if is_word {
        let w = word_poly(t)?;
        let d = tau(&w);
        (w, d)
    } else {
        let idx = BracketIndex::parse(Model::Zeta, t)?;
        let w = WordPoly::word(qzeta::words::index_word(&idx));
        let d = tau(&w);
        (w, d)
    };
    let shown = if is_word {
        d.to_string()
    } else {
        let (dw, _) = d.terms().next().expect("τ maps a word to a word");
        qzeta::words::word_index(dw, EvalMap::Zeta).to_string()
    };
    let check = a.check_order.map(|n| {
        (n, eval_poly(&w, EvalMap::Zeta, n, cache) == eval_poly(&d, EvalMap::Zeta, n, cache))
    });
    emit(
        json,
        json!({"dual": shown, "check": check.map(|(n, ok)| json!({"order": n, "passed": ok}))}),
        || {
            let mut out = format!("{shown}\n");
            if let Some((n, ok)) = check {
                out.push_str(&format!("equal zeta-bracket values through q^{n}: {}\n", verdict(ok)));
            }
            out
        },
    );
    Ok(outcome(check.is_none_or(|c| c.1)))
}

fn cmd_phi(a: &PhiArgs, json: bool, cache: &mut ExpansionCache) -> qzeta::Result<Outcome> {
    let w = word_poly(&a.word)?;
    let (image, from, to) = if a.inverse {
        (phi_inv(&w), EvalMap::Zeta, EvalMap::Bracket)
    } else {
        (phi(&w), EvalMap::Bracket, EvalMap::Zeta)
    };
    let check = a
        .check_order
        .map(|n| (n, eval_poly(&w, from, n, cache) == eval_poly(&image, to, n, cache)));
    emit(
        json,
        json!({
            "image": image.to_string(),
            "terms": poly_terms(&image),
            "check": check.map(|(n, ok)| json!({"order": n, "passed": ok})),
        }),
        || {
            let mut out = format!("{image}\n");
            if let Some((n, ok)) = check {
                out.push_str(&format!("{from} value of the word = {to} value of the image through q^{n}: {}\n", verdict(ok)));
            }
            out
        },
    );
    Ok(outcome(check.is_none_or(|c| c.1)))
}

fn cmd_relations(a: &RelationsArgs, json: bool, cache: &mut ExpansionCache) -> qzeta::Result<Outcome> {
    let model: Model = a.model.into();
    let mod_duality = model == Model::Zeta && !a.with_duality;
    let set = if mod_duality {
        find_relations_mod_duality(model, a.weight, a.discover, a.verify, cache)?
    } else {
        find_relations(model, a.weight, a.discover, a.verify, cache)?
    };
    if json {
        println!("{}", set.to_json());
    } else {
        println!(
            "{} {} brackets of weight ≤ {}{}: rank {}, {} relations (found at q^{}, checked at q^{})",
            set.family.len(),
            model,
            a.weight,
            if mod_duality { " up to duality" } else { "" },
            set.rank(),
            set.kernel_basis.len(),
            set.discover_order,
            set.verify_order
        );
        for k in 0..set.kernel_basis.len() {
            let mark = if set.verified[k] { "" } else { "  [NOT VERIFIED]" };
            println!("{}{mark}", set.format_relation(k));
        }
    }
    Ok(outcome(set.all_verified()))
}

fn cmd_dims(a: &DimsArgs, json: bool, cache: &mut ExpansionCache) -> qzeta::Result<Outcome> {
    let model: Model = a.model.into();
    let d = dims(model, a.max_weight, a.order, cache);
    let conj = conjectural_dims(a.max_weight as usize);
    emit(
        json,
        json!({"model": model, "order": a.order, "dims": d, "conjectural": conj}),
        || {
            let row = d.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
            format!("d_0..d_{} = {row}\n", a.max_weight)
        },
    );
    Ok(Outcome::Ok)
}

fn cmd_asympt(c: &AsymptCommand, json: bool) -> qzeta::Result<Outcome> {
    match c {
        AsymptCommand::Lemma1 { n, s, eps_order } => {
            let residual = lemma1_check(*n, *s, *eps_order)?;
            // the closed form is exact through ε^0 only
            let ok = residual.truncate(0).is_zero();
            let lhs = qzeta::series::laurent_single_factor(*s, *n, *eps_order)?;
            let shifted = displayed_residual(*n, *s).ok();
            emit(
                json,
                json!({
                    "n": n,
                    "s": s,
                    "expansion": lhs.to_string(),
                    "residual": residual.to_string(),
                    "holds": ok,
                    "shifted_form_residual": shifted.as_ref().map(ToString::to_string),
                }),
                || {
                    let mut out = format!("expansion: {lhs}\nresidual:  {residual}\nthrough ε^0: {}\n", verdict(ok));
                    if let Some(r) = &shifted {
                        out.push_str(&format!("shifted form residual: {r}\n"));
                    }
                    out
                },
            );
            Ok(outcome(ok))
        }
        AsymptCommand::Prop2 { index, eps, factor } => {
            let idx = BracketIndex::parse(Model::Bi, index)?;
            let rows = prop2_limit(&idx, eps)?;
            let ok = rows.iter().all(|r| (r.ratio - 1.0).abs() <= factor * r.eps);
            emit(json, json!({"index": idx.to_string(), "rows": rows, "passed": ok}), || {
                let mut out = String::from("ε          scaled          target          ratio − 1\n");
                for r in &rows {
                    out.push_str(&format!(
                        "{:<10} {:<15.10} {:<15.10} {:+.6}\n",
                        r.eps,
                        r.scaled,
                        r.target,
                        r.ratio - 1.0
                    ));
                }
                out.push_str(&format!("|ratio − 1| ≤ {factor}ε: {}\n", verdict(ok)));
                out
            });
            Ok(outcome(ok))
        }
        AsymptCommand::Limit { w, v, kind, eps, tol } => {
            let kind: LimitKind = kind.parse()?;
            let c = limit_theorem_check(kind, &parse_word(w)?, &parse_word(v)?, *eps)?;
            let ok = tol.is_none_or(|t| c.relative_error() <= t);
            emit(
                json,
                json!({"check": c, "relative_error": c.relative_error(), "passed": ok}),
                || {
                    let mut out = format!(
                        "bracket side: {}\nMZV side:     {}\nlhs {:.10}  rhs {:.10}  relative error {:.6}\n",
                        c.bracket_word,
                        c.mzv_word,
                        c.lhs,
                        c.rhs,
                        c.relative_error()
                    );
                    if let Some(t) = tol {
                        out.push_str(&format!("within {t}: {}\n", verdict(ok)));
                    }
                    out
                },
            );
            Ok(outcome(ok))
        }
        AsymptCommand::Mzv { row, cutoff } => {
            let s: Vec<u32> = row
                .split(',')
                .filter(|x| !x.trim().is_empty())
                .map(|x| {
                    x.trim().parse::<u32>().map_err(|_| Error::Parse {
                        what: "MZV row",
                        detail: format!("not a positive integer: {x:?}"),
                    })
                })
                .collect::<qzeta::Result<_>>()?;
            let m = mzv_numeric(&s, *cutoff)?;
            emit(json, json!(m), || {
                format!("ζ({row}) ≈ {:.15} (cutoff {}, tail ≲ {:.2e})\n", m.value, m.cutoff, m.error_estimate)
            });
            Ok(Outcome::Ok)
        }
    }
}

fn cmd_verify(a: &VerifyArgs, json: bool, no_cache: bool) -> qzeta::Result<Outcome> {
    if a.suite != "paper" {
        return Err(Error::InvalidArgument(format!("unknown suite {:?} (available: paper)", a.suite)));
    }
    // a cache that already exists (or an explicit directory) is reused;
    // otherwise expansions go to a scratch directory that is removed afterwards
    let existing = cache_path().filter(|p| !no_cache && (p.exists() || std::env::var_os("QZETA_CACHE_DIR").is_some()));
    let scratch;
    let mut cache = match existing {
        Some(p) => ExpansionCache::open(p)?,
        None => {
            scratch = tempfile::tempdir()?;
            ExpansionCache::open(scratch.path().join(CACHE_FILE))?
        }
    };
    let items = run_paper_suite(&mut cache);
    cache.save()?;
    let ok = items.iter().all(|i| i.passed);
    emit(json, json!({"items": items, "passed": ok}), || format_table(&items));
    Ok(outcome(ok))
}

fn cmd_cache(c: &CacheCommand, json: bool) -> qzeta::Result<Outcome> {
    let path = cache_path().ok_or_else(|| Error::Cache("no cache location (set QZETA_CACHE_DIR)".into()))?;
    let mut cache = ExpansionCache::open(&path)?;
    match c {
        CacheCommand::Path => {
            emit(json, json!({"path": path}), || format!("{}\n", path.display()));
        }
        CacheCommand::Info => {
            let orders: Vec<usize> = cache.entries().map(|(_, s)| s.order()).collect();
            let (lo, hi) = (orders.iter().min().copied(), orders.iter().max().copied());
            emit(
                json,
                json!({"path": path, "entries": cache.len(), "min_order": lo, "max_order": hi}),
                || match (lo, hi) {
                    (Some(lo), Some(hi)) => format!(
                        "{}: {} expansions, orders {lo}..{hi}\n",
                        path.display(),
                        cache.len()
                    ),
                    _ => format!("{}: empty\n", path.display()),
                },
            );
        }
        CacheCommand::Clear => {
            let n = cache.len();
            cache.clear();
            cache.save()?;
            emit(json, json!({"removed": n}), || format!("removed {n} expansions\n"));
        }
        CacheCommand::Audit { sample } => {
            let bad = cache.audit(*sample);
            let shown: Vec<String> = bad.iter().map(ToString::to_string).collect();
            emit(json, json!({"mismatches": shown}), || {
                if shown.is_empty() {
                    "audit: no mismatches\n".to_string()
                } else {
                    format!("audit: stale entries {}\n", shown.join(", "))
                }
            });
            return Ok(outcome(bad.is_empty()));
        }
    }
    Ok(Outcome::Ok)
}

fn run(cli: &Cli) -> qzeta::Result<Outcome> {
    let json = cli.json;
    let with_cache = |f: &dyn Fn(&mut ExpansionCache) -> qzeta::Result<Outcome>| -> qzeta::Result<Outcome> {
        let mut cache = open_cache(cli.no_cache)?;
        let r = f(&mut cache)?;
        cache.save()?;
        Ok(r)
    };
    match &cli.command {
        Command::Expand(a) => with_cache(&|c| cmd_expand(a, json, c)),
        Command::Product(a) => with_cache(&|c| cmd_product(a, json, c)),
        Command::Dual(a) => with_cache(&|c| cmd_dual(a, json, c)),
        Command::Phi(a) => with_cache(&|c| cmd_phi(a, json, c)),
        Command::Relations(a) => with_cache(&|c| cmd_relations(a, json, c)),
        Command::Dims(a) => with_cache(&|c| cmd_dims(a, json, c)),
        Command::Asympt { command } => cmd_asympt(command, json),
        Command::Verify(a) => cmd_verify(a, json, cli.no_cache),
        Command::Cache { command } => cmd_cache(command, json),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::CheckFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Cache(_) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}
