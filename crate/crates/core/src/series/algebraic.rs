use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::expr::{Dual, Expr};
use super::qseries::QSeries;
use crate::error::{Error, Result};

/// `C(t) = (1 - sqrt(1 - 4t)) / (2t)` to order `order`.
pub fn catalan(order: usize) -> QSeries {
    let w = order + 1;
    let s = QSeries::from_ints(&[1, -4], w).sqrt().expect("unit constant term");
    let num = &QSeries::one(w) - &s;
    num.shift_down(1).expect("no constant term").scale(&BigRational::new(1.into(), 2.into())).truncate(order)
}

/// Power-series root of `P(t, var) = 0` with constant term `c0`, by Newton iteration.
/// `P` is an expression in `t` and `var`; `env` supplies any other names.
pub fn algebraic_root_near(p: &Expr, var: &str, c0: i64, env: &HashMap<String, QSeries>, order: usize) -> Result<QSeries> {
    let lift = |f: &QSeries| -> HashMap<String, Dual> {
        let mut m: HashMap<String, Dual> =
            env.iter().map(|(k, v)| (k.clone(), Dual { v: v.clone(), d: QSeries::zero(order) })).collect();
        m.insert(var.to_string(), Dual { v: f.clone(), d: QSeries::one(order) });
        m
    };
    let mut f = QSeries::constant(BigRational::from_integer(BigInt::from(c0)), order);
    let at0 = p.eval(&lift(&f), order)?;
    if !at0.v.coeff(0).is_zero() {
        return Err(Error::Series(format!("{c0} is not a root of the constant term of {p}")));
    }
    if at0.d.coeff(0).is_zero() {
        return Err(Error::Series(format!("root {c0} of {p} is not simple; branch is ambiguous")));
    }
    // precision doubles each step
    let mut known = 1usize;
    loop {
        let r = p.eval(&lift(&f), order)?;
        match r.v.valuation() {
            None => return Ok(f),
            Some(v) if v < known => return Err(Error::Series(format!("Newton step lost precision at t^{v}"))),
            _ => {}
        }
        f = &f - &r.v.div(&r.d)?;
        known = (2 * known).min(order + 1);
    }
}

/// Root with zero constant term.
pub fn algebraic_root(p: &Expr, var: &str, order: usize) -> Result<QSeries> {
    algebraic_root_near(p, var, 0, &HashMap::new(), order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::cases::{solve_system, CaseData, Target};
    use crate::series::expr::parse;

    #[test]
    fn catalan_numbers() {
        assert_eq!(catalan(5), QSeries::from_ints(&[1, 1, 2, 5, 14, 42], 5));
        // convolution recurrence C_{n+1} = sum C_i C_{n-i}
        let c = catalan(15);
        for n in 0..15 {
            let s: BigRational = (0..=n).map(|i| c.coeff(i) * c.coeff(n - i)).sum();
            assert_eq!(&s, c.coeff(n + 1));
        }
    }

    #[test]
    fn shifted_catalan_root() {
        let f = algebraic_root(&parse("F^2 - F + t").unwrap(), "F", 12).unwrap();
        assert_eq!(f, catalan(11).shift_up(1));
    }

    #[test]
    fn case_two_cubic_matches_system() {
        let data = CaseData::bundled();
        let spec = data.case(2).unwrap();
        let Some(Target::Poly { poly, .. }) = &spec.target else { panic!() };
        let f = algebraic_root(poly, "F", 20).unwrap();
        assert_eq!(f, solve_system(spec, 20).unwrap().f);
    }

    #[test]
    fn quartic_roots_through_g() {
        let data = CaseData::bundled();
        for k in [3, 6] {
            let spec = data.case(k).unwrap();
            let Some(Target::Poly { var, poly, .. }) = &spec.target else { panic!() };
            let g = algebraic_root_near(poly, var, 1, &HashMap::new(), 15).unwrap();
            let f = &g - &QSeries::one(15);
            assert_eq!(f, solve_system(spec, 15).unwrap().f, "case {k}");
        }
    }

    #[test]
    fn rejects_bad_branches() {
        assert!(algebraic_root(&parse("F^2 + t").unwrap(), "F", 5).is_err());
        assert!(algebraic_root(&parse("F - 1").unwrap(), "F", 5).is_err());
    }
}
