//! One function per verb.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use rectlab::bijection::{self, Convention};
use rectlab::generators::oracle::{self, DEFAULT_CEILING};
use rectlab::generators::{count_class, default_method, gen_class, whirl, Method, BIJECTIVE_CEILING};
use rectlab::oeis::{self, Transport};
use rectlab::patterns::PatternSet;
use rectlab::perm::{count_avoiders, generate_separable};
use rectlab::series::cases::{case_counts, solve_system, CaseData};
use rectlab::series::pipeline::{calibrate_offset, integers, residual};
use rectlab::series::{asymptotic_ratio, catalan, closed_form, solve_funceq, tree_census, verify_case, whirl_pipeline, QSeries};
use rectlab::table::{self, ROWS};
use rectlab::{canonicalize, SegmentStructure};
use serde_json::json;

use crate::config::RunConfig;
use crate::output::{render, Table};
use crate::transport::{HttpTransport, Layered};
use crate::{CliError, Command, CountMethod, Gf, GenMethod, Outcome, Suite, EXIT_MISMATCH, EXIT_PASS, EXIT_RESOURCE};

type Res<T> = Result<T, CliError>;

pub fn dispatch(cmd: &Command, cfg: &RunConfig) -> Res<Outcome> {
    match cmd {
        Command::Count { row, max_n, method } => count(row, *max_n, *method, cfg),
        Command::Verify { suite, order, n } => verify(*suite, *order, *n, cfg),
        Command::VerifyBijection { n } => verify_bijection(*n, cfg),
        Command::WhirlTree { depth } => whirl_tree(*depth, cfg),
        Command::Series { case, gf, order } => series(case.as_deref(), *gf, *order, cfg),
        Command::Oeis { ids, all } => oeis_cmd(ids, *all, cfg),
        Command::Generate { row, n, method } => generate(row, *n, *method),
    }
}

fn dash(v: Option<u64>) -> String {
    v.map_or_else(|| "-".into(), |x| x.to_string())
}

/// Series coefficients `[t^1..t^max_n]` for a pattern set, if some series counts it.
fn series_counts(entry: &str, max_n: usize) -> Res<Option<Vec<u64>>> {
    let to_u64 = |v: &[BigInt]| -> Res<Vec<u64>> {
        v.iter().map(|x| u64::try_from(x).map_err(|_| CliError::Resource(format!("coefficient {x} exceeds 64 bits")))).collect()
    };
    if let Some(row) = table::row_by_entry(entry) {
        let data = CaseData::bundled();
        return Ok(Some(to_u64(&case_counts(data.case(row.case)?, max_n)?)?));
    }
    if entry == table::VORTEX_ENTRY {
        let v = integers(&whirl_pipeline(max_n)?.v)?;
        return Ok(Some(to_u64(&v[1..=max_n])?));
    }
    Ok(None)
}

fn count(entry: &str, max_n: usize, method: CountMethod, cfg: &RunConfig) -> Res<Outcome> {
    let set = table::parse_entry(entry)?;
    if max_n == 0 {
        return Err(CliError::Usage("--max-n must be at least 1".into()));
    }
    let bij_ok = set.is_superset(PatternSet::BASE);
    let want = |m: CountMethod| method == CountMethod::Auto || method == m;
    if method == CountMethod::Bijective && !bij_ok {
        return Err(CliError::Usage(format!("the bijective route needs P1..P4 in the set, got {entry}")));
    }
    let series = if want(CountMethod::Series) { series_counts(entry, max_n)? } else { None };
    if method == CountMethod::Series && series.is_none() {
        return Err(CliError::Usage(format!("no series counts {entry}")));
    }
    let mut t = Table::new(format!("count {entry}"), &["n", "bijective", "oracle", "series", "agree"]);
    let mut all_agree = true;
    for n in 1..=max_n {
        let auto = method == CountMethod::Auto;
        let b = if want(CountMethod::Bijective) && bij_ok && (!auto || n <= BIJECTIVE_CEILING) {
            Some(count_class(n, set, Method::Bijective)?)
        } else {
            None
        };
        let o = if want(CountMethod::Oracle) && (!auto || n <= DEFAULT_CEILING) { Some(count_class(n, set, Method::Oracle)?) } else { None };
        let s = series.as_ref().map(|v| v[n - 1]);
        let vals: BTreeSet<u64> = [b, o, s].into_iter().flatten().collect();
        let agree = vals.len() <= 1;
        all_agree &= agree;
        t.push(vec![n.to_string(), dash(b), dash(o), dash(s), if agree { "yes" } else { "NO" }.into()]);
    }
    Ok(Outcome::new(render(&[t], cfg.format), all_agree))
}

type Check = Result<String, String>;

fn core<T>(r: rectlab::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn check(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn suite_theorem1(order: usize) -> Check {
    let data = CaseData::bundled();
    for row in &ROWS {
        let spec = core(data.case(row.case))?;
        let r = core(verify_case(spec, order))?;
        check(r.passed(), || format!("case {}: {} check fails at t^{}", row.case, r.kind, r.mismatch.unwrap_or(0)))?;
        let m = order.min(10);
        let gf: Vec<u64> = core(case_counts(spec, m))?.iter().map(|x| u64::try_from(x).unwrap_or(u64::MAX)).collect();
        let perms: Vec<u64> = (1..=m).map(|n| count_avoiders(n, &row.vincular())).collect();
        check(gf == perms, || format!("case {}: series {gf:?}, permutations {perms:?}", row.case))?;
    }
    Ok(format!("ten cases at order {order}; permutation counts n <= {}", order.min(10)))
}

fn suite_bijection(n: usize) -> Check {
    for k in 1..=n {
        let gd = core(bijection::guillotine_diagonal_classes(k))?;
        check(core(bijection::is_bijective_on(&gd, Convention::FROZEN))?, || format!("not bijective at n={k}"))?;
    }
    for k in 1..=n + 1 {
        for p in generate_separable(k) {
            let back = core(bijection::delta_inv(&p).and_then(|d| bijection::delta(&d)))?;
            check(back == p, || format!("round trip {p} -> {back}"))?;
        }
    }
    Ok(format!("bijective n <= {n}, round trip n <= {}", n + 1))
}

fn suite_translation(n: usize) -> Check {
    for k in 1..=n {
        for row in &ROWS {
            if let Some(c) = core(bijection::check_translation(row, k))? {
                return Err(format!("case {} at {}: geometric {}, permutation {}", row.case, c.perm, c.avoids_geometric, c.avoids_perm));
            }
        }
    }
    Ok(format!("ten rows, n <= {n}"))
}

/// `[t^n] C^k = k/(2n+k) binom(2n+k, n)`.
pub fn catalan_power(k: u64, n: u64) -> BigInt {
    let m = 2 * n + k;
    let mut b = BigInt::from(1);
    for i in 0..n {
        b = b * (m - i) / (i + 1);
    }
    b * k / m
}

fn suite_whirl_tree() -> Check {
    let sizes = whirl::level_sizes(9);
    let want: Vec<u64> = (0..=9).map(|d| u64::try_from(catalan_power(4, d)).unwrap_or(0)).collect();
    check(sizes == want, || format!("level sizes {sizes:?}, expected {want:?}"))?;
    for depth in 0..=3 {
        let paths = whirl::paths(depth);
        let built: BTreeSet<_> = core(paths.iter().map(|(p, _)| whirl::build_simple_whirl(p).map(|d| canonicalize(&d))).collect())?;
        let found: BTreeSet<_> = core(oracle::all_rectangulations(5 + depth))?
            .into_iter()
            .filter(|c| whirl::is_simple_whirl(&c.drawing))
            .map(|c| c.code)
            .collect();
        check(built.len() == paths.len() && built == found, || format!("depth {depth}: {} built, {} found", built.len(), found.len()))?;
    }
    Ok("depths 0..9; builder = oracle for sizes 5..8".into())
}

fn suite_funceq(order: usize) -> Check {
    let f = core(solve_funceq(order))?;
    check(f == core(closed_form(order))?, || format!("closed form differs at order {order}"))?;
    check(core(solve_funceq(order + 2))? == tree_census(order + 2), || format!("tree census differs at order {}", order + 2))?;
    let n = 2 * order;
    let spec = core(solve_funceq(n))?.at_all_ones();
    let c4 = catalan(n.saturating_sub(5)).pow(4).shift_up(5);
    check(spec == c4, || format!("x = 1 differs from t^5 C^4 at order {n}"))?;
    Ok(format!("closed form {order}, tree census {}, x = 1 at {n}", order + 2))
}

fn suite_pipeline(order: usize) -> Check {
    let p = core(whirl_pipeline(order))?;
    check(p.passed(), || format!("{:?}", p.checks))?;
    let v = core(integers(&p.v))?;
    let set = core(table::parse_entry(table::VORTEX_ENTRY))?;
    let m = order.min(7);
    for (n, vn) in v.iter().enumerate().take(m + 1).skip(1) {
        let o = core(count_class(n, set, Method::Oracle))?;
        check(*vn == BigInt::from(o), || format!("n={n}: V gives {vn}, oracle {o}"))?;
    }
    Ok(format!("identities at order {order}, oracle vortices n <= {m}"))
}

fn suite_recurrence(n: usize) -> Check {
    let v = core(integers(&core(whirl_pipeline(n + 5))?.v))?;
    let s = core(calibrate_offset(&v, n))?;
    let bad: Vec<usize> = (2..=n).filter(|&k| residual(&v[s..], k) != BigInt::from(0)).collect();
    check(bad.is_empty(), || format!("residual nonzero at {bad:?}"))?;
    let r = core(asymptotic_ratio(2000))?;
    check(r.within(15), || format!("ratio at 2000 in [{}, {}]", r.lower, r.upper))?;
    Ok(format!("offset {s}, 2 <= n <= {n}; ratio(2000) in [{}, {}]", r.lower, r.upper))
}

fn verify(suite: Suite, order: Option<usize>, n: Option<usize>, cfg: &RunConfig) -> Res<Outcome> {
    let suites: Vec<Suite> = if suite == Suite::All {
        vec![Suite::Theorem1, Suite::Bijection, Suite::Translation, Suite::WhirlTree, Suite::Funceq, Suite::Pipeline, Suite::Recurrence]
    } else {
        vec![suite]
    };
    let mut t = Table::new("verify", &["suite", "status", "detail"]);
    let mut ok = true;
    for s in suites {
        let (name, r) = match s {
            Suite::Theorem1 => ("theorem1", suite_theorem1(order.unwrap_or(30))),
            Suite::Bijection => ("bijection", suite_bijection(n.unwrap_or(7))),
            Suite::Translation => ("translation", suite_translation(n.unwrap_or(7))),
            Suite::WhirlTree => ("whirl-tree", suite_whirl_tree()),
            Suite::Funceq => ("funceq", suite_funceq(order.unwrap_or(10))),
            Suite::Pipeline => ("pipeline", suite_pipeline(order.unwrap_or(60))),
            Suite::Recurrence => ("recurrence", suite_recurrence(n.unwrap_or(200))),
            Suite::All => unreachable!(),
        };
        ok &= r.is_ok();
        let (status, detail) = match r {
            Ok(d) => ("pass", d),
            Err(d) => ("FAIL", d),
        };
        t.push(vec![name.into(), status.into(), detail]);
    }
    Ok(Outcome::new(render(&[t], cfg.format), ok))
}

fn verify_bijection(n: usize, cfg: &RunConfig) -> Res<Outcome> {
    let mut t = Table::new("verify-bijection", &["n", "classes", "separable", "bijective", "round_trip"]);
    let mut ok = true;
    for k in 1..=n {
        let gd = bijection::guillotine_diagonal_classes(k)?;
        let perms = generate_separable(k);
        let bij = bijection::is_bijective_on(&gd, Convention::FROZEN)?;
        let mut trip = true;
        for p in &perms {
            trip &= bijection::delta(&bijection::delta_inv(p)?)? == *p;
        }
        ok &= bij && trip;
        t.push(vec![k.to_string(), gd.len().to_string(), perms.len().to_string(), bij.to_string(), trip.to_string()]);
    }
    Ok(Outcome::new(render(&[t], cfg.format), ok))
}

fn whirl_tree(depth: usize, cfg: &RunConfig) -> Res<Outcome> {
    if depth > 12 {
        return Err(CliError::Resource(format!("depth {depth} is above the limit 12")));
    }
    let mut t = Table::new("whirl-tree", &["depth", "size", "nodes", "c4_coefficient"]);
    let mut ok = true;
    for (d, k) in whirl::level_sizes(depth).into_iter().enumerate() {
        let c = catalan_power(4, d as u64);
        ok &= BigInt::from(k) == c;
        t.push(vec![d.to_string(), (d + 5).to_string(), k.to_string(), c.to_string()]);
    }
    Ok(Outcome::new(render(&[t], cfg.format), ok))
}

fn coefficient_table(title: &str, s: &QSeries) -> Table {
    let mut t = Table::new(title, &["n", "coefficient"]);
    for (i, c) in s.coeffs().iter().enumerate() {
        t.push(vec![i.to_string(), c.to_string()]);
    }
    t
}

fn series(case: Option<&str>, gf: Option<Gf>, order: usize, cfg: &RunConfig) -> Res<Outcome> {
    if order == 0 {
        return Err(CliError::Usage("--order must be at least 1".into()));
    }
    if let Some(name) = case {
        let data = CaseData::bundled();
        let spec = data.by_name(name)?;
        let sol = solve_system(spec, order)?;
        let passed = match spec.target {
            Some(_) => verify_case(spec, order)?.passed(),
            None => true,
        };
        return Ok(Outcome::new(render(&[coefficient_table(&format!("case {name}: F"), &sol.f)], cfg.format), passed));
    }
    let table = match gf.expect("clap requires --case or --gf") {
        Gf::Catalan => coefficient_table("catalan", &catalan(order)),
        Gf::F4 => {
            let f = solve_funceq(order)?;
            let mut t = Table::new("F(t; x1, x2, x3, x4)", &["n", "exponents", "coefficient"]);
            for (n, p) in f.coeffs().iter().enumerate() {
                for (e, c) in p.terms() {
                    t.push(vec![n.to_string(), format!("{},{},{},{}", e[0], e[1], e[2], e[3]), c.to_string()]);
                }
            }
            t
        }
        g => {
            let p = whirl_pipeline(order)?;
            let (name, s) = match g {
                Gf::V => ("V", &p.v),
                Gf::P => ("P", &p.p),
                Gf::W => ("W", &p.w),
                _ => ("Z", &p.z),
            };
            coefficient_table(name, s)
        }
    };
    Ok(Outcome::new(render(&[table], cfg.format), true))
}

fn oeis_cmd(ids: &[String], all: bool, cfg: &RunConfig) -> Res<Outcome> {
    let mut list: Vec<String> = if ids.is_empty() { oeis::cited().into_iter().map(|(i, _)| i.to_string()).collect() } else { ids.to_vec() };
    if all && !list.iter().any(|i| i == table::ALL_OEIS) {
        list.push(table::ALL_OEIS.to_string());
    }
    for id in &list {
        oeis::source_of(id)?;
    }
    let t = Layered::new(cfg.network, cfg.cache.clone(), || Box::new(HttpTransport::new()))?;
    oeis_report(&t, &list, cfg)
}

/// Report over `ids`; exit 3 if a b-file is missing, 1 if one does not match.
pub fn oeis_report(t: &dyn Transport, ids: &[String], cfg: &RunConfig) -> Res<Outcome> {
    let mut table = Table::new("oeis", &["id", "source", "status", "shift", "local"]);
    let mut code = EXIT_PASS;
    for id in ids {
        let src = oeis::source_of(id)?;
        let local = oeis::local_values(src)?;
        let local_s = local.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ");
        let (status, shift) = match oeis::compare(t, id, &local, &src.to_string()) {
            Ok(c) if c.passed() => ("match".to_string(), c.shift().map_or_else(String::new, |s| s.to_string())),
            Ok(_) => {
                code = code.max(EXIT_MISMATCH);
                ("no shift matches".into(), "-".into())
            }
            Err(e) => {
                code = EXIT_RESOURCE;
                (format!("unavailable: {e}"), "-".into())
            }
        };
        table.push(vec![id.clone(), src.to_string(), status, shift, local_s]);
    }
    Ok(Outcome { body: render(&[table], cfg.format), code })
}

fn generate(entry: &str, n: usize, method: Option<GenMethod>) -> Res<Outcome> {
    let set = table::parse_entry(entry)?;
    let m = match method {
        Some(GenMethod::Bijective) => Method::Bijective,
        Some(GenMethod::Oracle) => Method::Oracle,
        None => default_method(n, set),
    };
    let mut body = String::new();
    for d in gen_class(n, set, m)? {
        let st = SegmentStructure::new(&d)?;
        let perm = if rectlab::patterns::is_guillotine(&d) && rectlab::patterns::is_diagonal(&st) {
            Some(bijection::delta(&d)?.to_string())
        } else {
            None
        };
        let line = json!({ "n": n, "code": canonicalize(&d).to_string(), "perm": perm, "drawing": d });
        body.push_str(&line.to_string());
        body.push('\n');
    }
    Ok(Outcome { body, code: EXIT_PASS })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalan_powers() {
        let v: Vec<String> = (0..6).map(|n| catalan_power(4, n).to_string()).collect();
        assert_eq!(v, ["1", "4", "14", "48", "165", "572"]);
        assert_eq!(catalan_power(1, 5), BigInt::from(42));
    }

    #[test]
    fn missing_fixture_exits_three() {
        let dir = tempfile::tempdir().unwrap();
        let t = rectlab::oeis::FixtureTransport::new(dir.path());
        let out = oeis_report(&t, &["A006318".into()], &RunConfig::default()).unwrap();
        assert_eq!(out.code, EXIT_RESOURCE);
        std::fs::write(dir.path().join("b006318.txt"), "0 1\n1 1\n2 2\n3 6\n4 22\n5 90\n6 394\n7 1806\n8 8558\n9 41586\n10 206098\n").unwrap();
        let out = oeis_report(&t, &["A006318".into()], &RunConfig::default()).unwrap();
        assert_eq!(out.code, EXIT_PASS, "{}", out.body);
        std::fs::write(dir.path().join("b006318.txt"), "0 1\n1 1\n2 2\n3 6\n4 22\n5 91\n6 394\n7 1806\n8 8558\n9 41586\n10 206098\n").unwrap();
        assert_eq!(oeis_report(&t, &["A006318".into()], &RunConfig::default()).unwrap().code, EXIT_MISMATCH);
    }
}
