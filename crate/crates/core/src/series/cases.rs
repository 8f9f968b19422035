//! The bundled case data and the fixed-point solver for the guillotine systems.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use serde::Serialize;

use super::expr::{parse, Expr};
use super::qseries::QSeries;
use crate::error::{Error, Result};

pub const BUNDLED: &str = include_str!("../../data/cases.txt");

/// Extra precision used when expanding closed forms that divide by powers of `t`.
const MARGIN: usize = 8;

#[derive(Clone, Debug, PartialEq)]
pub enum Target {
    Closed(Expr),
    /// `poly` must vanish when `var` is set to `def` (an expression in `F`).
    Poly { var: String, def: Expr, poly: Expr },
}

#[derive(Clone, Debug, PartialEq)]
pub struct CaseSpec {
    /// Section name after `case` or `variant`, e.g. "3" or "7-without-t".
    pub name: String,
    pub case: Option<u8>,
    pub entry: Option<String>,
    pub lets: Vec<(String, Expr)>,
    pub eqs: Vec<(String, Expr)>,
    pub target: Option<Target>,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct PipelineSpec {
    pub lets: Vec<(String, Expr)>,
    pub checks: Vec<(String, Expr)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CaseData {
    pub cases: Vec<CaseSpec>,
    pub pipeline: PipelineSpec,
}

fn split_def(s: &str, line: usize) -> Result<(String, Expr)> {
    let (name, rhs) = s.split_once('=').ok_or_else(|| Error::Parse(format!("line {line}: expected NAME = EXPR")))?;
    let name = name.trim();
    if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        return Err(Error::Parse(format!("line {line}: bad name {name:?}")));
    }
    Ok((name.to_string(), parse(rhs).map_err(|e| Error::Parse(format!("line {line}: {e}")))?))
}

impl CaseData {
    pub fn bundled() -> Self {
        Self::parse(BUNDLED).expect("bundled case data parses")
    }

    pub fn parse(text: &str) -> Result<Self> {
        enum Sec {
            None,
            Case(CaseSpec),
            Pipeline,
        }
        let mut data = CaseData { cases: Vec::new(), pipeline: PipelineSpec::default() };
        let mut cur = Sec::None;
        let flush = |cur: Sec, data: &mut CaseData| {
            if let Sec::Case(c) = cur {
                data.cases.push(c);
            }
        };
        for (i, raw) in text.lines().enumerate() {
            let ln = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(h) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
                flush(std::mem::replace(&mut cur, Sec::None), &mut data);
                let mut words = h.split_whitespace();
                cur = match (words.next(), words.next()) {
                    (Some("case"), Some(k)) => Sec::Case(CaseSpec {
                        name: k.to_string(),
                        case: Some(k.parse().map_err(|_| Error::Parse(format!("line {ln}: bad case number {k:?}")))?),
                        entry: None,
                        lets: Vec::new(),
                        eqs: Vec::new(),
                        target: None,
                    }),
                    (Some("variant"), Some(k)) => Sec::Case(CaseSpec {
                        name: k.to_string(),
                        case: None,
                        entry: None,
                        lets: Vec::new(),
                        eqs: Vec::new(),
                        target: None,
                    }),
                    (Some("pipeline"), None) => Sec::Pipeline,
                    _ => return Err(Error::Parse(format!("line {ln}: unknown section {h:?}"))),
                };
                continue;
            }
            let (kw, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            match (&mut cur, kw) {
                (Sec::Case(c), "entry") => c.entry = Some(rest.trim().to_string()),
                (Sec::Case(c), "let") => c.lets.push(split_def(rest, ln)?),
                (Sec::Case(c), "eq") => c.eqs.push(split_def(rest, ln)?),
                (Sec::Case(c), "closed") => {
                    let (name, e) = split_def(rest, ln)?;
                    if name != "F" {
                        return Err(Error::Parse(format!("line {ln}: closed forms are for F")));
                    }
                    c.target = Some(Target::Closed(e));
                }
                (Sec::Case(c), "poly") => {
                    let (def, poly) = rest.split_once(':').ok_or_else(|| Error::Parse(format!("line {ln}: expected VAR = EXPR : POLY")))?;
                    let (var, def) = split_def(def, ln)?;
                    c.target = Some(Target::Poly { var, def, poly: parse(poly)? });
                }
                (Sec::Pipeline, "let") => data.pipeline.lets.push(split_def(rest, ln)?),
                (Sec::Pipeline, "check") => data.pipeline.checks.push(split_def(rest, ln)?),
                _ => return Err(Error::Parse(format!("line {ln}: unexpected {kw:?}"))),
            }
        }
        flush(cur, &mut data);
        Ok(data)
    }

    pub fn case(&self, k: u8) -> Result<&CaseSpec> {
        self.cases.iter().find(|c| c.case == Some(k)).ok_or_else(|| Error::Series(format!("no case {k}")))
    }

    pub fn by_name(&self, name: &str) -> Result<&CaseSpec> {
        self.cases.iter().find(|c| c.name == name).ok_or_else(|| Error::Series(format!("no case or variant {name:?}")))
    }
}

/// `t` and `u = 1/(1-t)` plus the section's `let` definitions.
pub(crate) fn base_env(lets: &[(String, Expr)], order: usize) -> Result<HashMap<String, QSeries>> {
    let mut env = HashMap::new();
    env.insert("u".to_string(), QSeries::one(order).div(&QSeries::from_ints(&[1, -1], order))?);
    for (name, e) in lets {
        let v = e.eval(&env, order)?;
        env.insert(name.clone(), v);
    }
    Ok(env)
}

#[derive(Clone, Debug)]
pub struct Solution {
    pub values: BTreeMap<String, QSeries>,
    /// `t + A + D`.
    pub f: QSeries,
    pub steps: usize,
}

/// Gauss-Seidel iteration from zero, equations in file order. Each sweep must raise the
/// valuation of the change.
pub fn solve_system(spec: &CaseSpec, order: usize) -> Result<Solution> {
    if order == 0 {
        return Err(Error::Series("order must be at least 1".into()));
    }
    if spec.eqs.is_empty() {
        return Err(Error::Series(format!("{} has no equations", spec.name)));
    }
    let mut env = base_env(&spec.lets, order)?;
    for (n, _) in &spec.eqs {
        env.insert(n.clone(), QSeries::zero(order));
    }
    let mut last_val: Option<usize> = None;
    for step in 1..=4 * order + 16 {
        let mut val: Option<usize> = None;
        for (n, e) in &spec.eqs {
            let v = e.eval(&env, order)?;
            if let Some(k) = (&v - &env[n]).valuation() {
                val = Some(val.map_or(k, |m| m.min(k)));
            }
            env.insert(n.clone(), v);
        }
        match val {
            None => return finish(spec, env, order, step),
            Some(v) if last_val.is_some_and(|p| v <= p) => {
                return Err(Error::NonContraction { system: spec.name.clone(), step });
            }
            Some(v) => last_val = Some(v),
        }
    }
    Err(Error::NonContraction { system: spec.name.clone(), step: 4 * order + 16 })
}

fn finish(spec: &CaseSpec, env: HashMap<String, QSeries>, order: usize, steps: usize) -> Result<Solution> {
    let zero = QSeries::zero(order);
    let a = env.get("A").unwrap_or(&zero);
    let d = env.get("D").unwrap_or(&zero);
    let f = &(&QSeries::t(order) + a) + d;
    let values = spec.eqs.iter().map(|(n, _)| (n.clone(), env[n].clone())).collect();
    Ok(Solution { values, f, steps })
}

/// Expands a closed form at `order`, absorbing divisions by powers of `t`.
pub fn expand(e: &Expr, lets: &[(String, Expr)], order: usize) -> Result<QSeries> {
    let wide = order + MARGIN;
    let v = e.eval(&base_env(lets, wide)?, wide)?;
    if v.order() < order {
        return Err(Error::Series(format!("expansion of {e} only known to order {}", v.order())));
    }
    Ok(v.truncate(order))
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseReport {
    pub case: String,
    /// "closed" or "poly".
    pub kind: &'static str,
    pub order: usize,
    /// First coefficient where the system and the closed form differ, or where the residual is nonzero.
    pub mismatch: Option<usize>,
    /// Coefficients of F from the system, t^0..t^order.
    pub coefficients: Vec<String>,
}

impl CaseReport {
    pub fn passed(&self) -> bool {
        self.mismatch.is_none()
    }
}

pub fn verify_case(spec: &CaseSpec, order: usize) -> Result<CaseReport> {
    let sol = solve_system(spec, order)?;
    let coefficients = sol.f.coeffs().iter().map(|c| c.to_string()).collect();
    let (kind, mismatch) = match &spec.target {
        Some(Target::Closed(e)) => ("closed", expand(e, &spec.lets, order)?.first_difference(&sol.f)),
        Some(Target::Poly { var, def, poly }) => {
            let mut env = base_env(&spec.lets, order)?;
            env.insert("F".into(), sol.f.clone());
            let g = def.eval(&env, order)?;
            env.insert(var.clone(), g);
            ("poly", poly.eval(&env, order)?.valuation())
        }
        None => return Err(Error::Series(format!("{} has no closed form or polynomial", spec.name))),
    };
    Ok(CaseReport { case: spec.name.clone(), kind, order, mismatch, coefficients })
}

/// Coefficients `[t^1..t^n]` of the system solution as integers.
pub fn case_counts(spec: &CaseSpec, n: usize) -> Result<Vec<BigInt>> {
    let f = solve_system(spec, n)?.f;
    let ints = f.to_integers().ok_or_else(|| Error::Series(format!("case {} has non-integer coefficients", spec.name)))?;
    Ok(ints[1..].to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counts(k: u8, n: usize) -> Vec<i64> {
        let data = CaseData::bundled();
        case_counts(data.case(k).unwrap(), n).unwrap().iter().map(|x| i64::try_from(x).unwrap()).collect()
    }

    #[test]
    fn bundled_data_is_complete() {
        let data = CaseData::bundled();
        for k in 1..=10 {
            let c = data.case(k).unwrap();
            assert!(c.entry.is_some() && c.target.is_some() && !c.eqs.is_empty(), "case {k}");
            assert_eq!(c.entry.as_deref(), Some(crate::table::row_by_case(k).unwrap().entry));
        }
        assert_eq!(data.pipeline.checks.len(), 2);
    }

    #[test]
    fn small_expansions() {
        assert_eq!(counts(1, 6), [1, 2, 6, 22, 90, 394]);
        assert_eq!(counts(10, 6), [1, 2, 6, 20, 68, 232]);
    }

    #[test]
    fn every_case_agrees_at_low_order() {
        let data = CaseData::bundled();
        for k in 1..=10 {
            let r = verify_case(data.case(k).unwrap(), 12).unwrap();
            assert!(r.passed(), "case {k}: {r:?}");
        }
    }

    #[test]
    fn case_seven_without_t_is_not_contracting() {
        let data = CaseData::bundled();
        let err = solve_system(data.by_name("7-without-t").unwrap(), 10).unwrap_err();
        assert!(matches!(err, Error::NonContraction { .. }), "{err}");
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let e = CaseData::parse("[case 1]\neq A = (t\n").unwrap_err().to_string();
        assert!(e.contains("line 2"), "{e}");
        assert!(CaseData::parse("[nonsense]\n").is_err());
        assert!(CaseData::parse("[case 1]\nclosed G = t\n").is_err());
    }
}
