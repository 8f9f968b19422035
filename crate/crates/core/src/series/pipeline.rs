//! Whirls and vortices: P, W, Z, V, the linear recurrence and the growth ratio.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::cases::{base_env, CaseData};
use super::qseries::QSeries;
use crate::error::{Error, Result};

const MARGIN: usize = 8;

#[derive(Clone, Debug)]
pub struct Pipeline {
    pub p: QSeries,
    pub w: QSeries,
    pub z: QSeries,
    pub v: QSeries,
    /// `(identity, first differing coefficient)` for each `check` line.
    pub checks: Vec<(String, Option<usize>)>,
}

impl Pipeline {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|(_, m)| m.is_none())
    }
}

pub fn whirl_pipeline(order: usize) -> Result<Pipeline> {
    let spec = CaseData::bundled().pipeline;
    let wide = order + MARGIN;
    let env = base_env(&spec.lets, wide)?;
    let get = |n: &str| -> Result<QSeries> {
        let s = env.get(n).ok_or_else(|| Error::Series(format!("pipeline does not define {n}")))?;
        if s.order() < order {
            return Err(Error::Series(format!("{n} only known to order {}", s.order())));
        }
        Ok(s.truncate(order))
    };
    let mut checks = Vec::new();
    for (name, e) in &spec.checks {
        let rhs = e.eval(&env, wide)?;
        if rhs.order() < order {
            return Err(Error::Series(format!("right side of the {name} check only known to order {}", rhs.order())));
        }
        checks.push((format!("{name} = {e}"), get(name)?.first_difference(&rhs.truncate(order))));
    }
    Ok(Pipeline { p: get("P")?, w: get("W")?, z: get("Z")?, v: get("V")?, checks })
}

/// Integer coefficients of `s` from `t^0`.
pub fn integers(s: &QSeries) -> Result<Vec<BigInt>> {
    s.to_integers().ok_or_else(|| Error::Series("non-integer coefficient".into()))
}

/// `(n+4) v_n - 6(n+2) v_{n-1} + 4(2n-1) v_{n-2}`.
pub fn residual(v: &[BigInt], n: usize) -> BigInt {
    let n_ = BigInt::from(n);
    (&n_ + 4) * &v[n] - BigInt::from(6) * (&n_ + 2) * &v[n - 1] + BigInt::from(4) * (BigInt::from(2) * &n_ - 1) * &v[n - 2]
}

/// The shift `s` in `v_n = [t^{n+s}] V` for which the recurrence holds at every `2 <= n <= k`,
/// among `0..=2`; an error unless exactly one shift works.
pub fn calibrate_offset(v_coeffs: &[BigInt], k: usize) -> Result<usize> {
    let ok: Vec<usize> = (0..=2)
        .filter(|&s| v_coeffs.len() > k + s && (2..=k).all(|n| residual(&v_coeffs[s..], n).is_zero()))
        .collect();
    match ok.as_slice() {
        [s] => Ok(*s),
        _ => Err(Error::Series(format!("recurrence offsets that work: {ok:?}"))),
    }
}

/// `v_0..=v_k` from `v_0 = 1, v_1 = 2` and the recurrence.
pub fn vortex_recurrence(k: usize) -> Result<Vec<BigInt>> {
    let mut v = vec![BigInt::one(), BigInt::from(2)];
    for n in 2..=k {
        let num = BigInt::from(6 * (n + 2)) * &v[n - 1] - BigInt::from(4 * (2 * n - 1)) * &v[n - 2];
        let (q, r) = num.div_rem(&BigInt::from(n + 4));
        if !r.is_zero() {
            return Err(Error::Series(format!("recurrence gives a non-integer at n = {n}")));
        }
        v.push(q);
    }
    v.truncate(k + 1);
    Ok(v)
}

/// Rational bounds on pi.
pub fn pi_bounds() -> (BigRational, BigRational) {
    let d = BigInt::from(10u64.pow(14));
    (BigRational::new(BigInt::from(314159265358979u64), d.clone()), BigRational::new(BigInt::from(314159265358980u64), d))
}

#[derive(Clone, Debug, Serialize)]
pub struct AsymptoticRatio {
    pub n: usize,
    /// Lower and upper bounds on `v_n sqrt(pi) n^{3/2} / 4^{n+2}`, as decimal strings with 12 digits.
    pub lower: String,
    pub upper: String,
    pub approx: f64,
    #[serde(skip)]
    pub bounds: (BigRational, BigRational),
}

impl AsymptoticRatio {
    /// Is the whole interval within `percent` % of 1?
    pub fn within(&self, percent: u32) -> bool {
        let tol = BigRational::new(BigInt::from(percent), BigInt::from(100));
        let one = BigRational::one();
        self.bounds.0 >= &one - &tol && self.bounds.1 <= &one + &tol
    }
}

/// Floor of `sqrt(x) * 10^digits` for a nonnegative rational `x`.
fn sqrt_scaled(x: &BigRational, digits: u32, round_up: bool) -> BigInt {
    let scale = BigInt::from(10).pow(2 * digits);
    let num = x.numer() * &scale;
    let (q, r) = num.div_rem(x.denom());
    let q = if round_up && !r.is_zero() { q + 1 } else { q };
    let s = q.sqrt();
    if round_up && &s * &s != q {
        s + 1
    } else {
        s
    }
}

/// `v_n sqrt(pi) n^{3/2} / 4^{n+2}` enclosed in an exact interval: the square is
/// `v_n^2 pi n^3 / 16^{n+2}`, bounded with [`pi_bounds`], then rooted.
pub fn asymptotic_ratio(n: usize) -> Result<AsymptoticRatio> {
    if n < 2 {
        return Err(Error::Series("asymptotic ratio needs n >= 2".into()));
    }
    let v = vortex_recurrence(n)?;
    let vn = &v[n];
    let (pl, ph) = pi_bounds();
    let base = BigRational::new(vn * vn * BigInt::from(n).pow(3), BigInt::from(16).pow(n as u32 + 2));
    let digits = 12;
    let lo = sqrt_scaled(&(&base * &pl), digits, false);
    let hi = sqrt_scaled(&(&base * &ph), digits, true);
    let fmt = |x: &BigInt| {
        let s = format!("{:0>13}", x.to_string());
        let (a, b) = s.split_at(s.len() - digits as usize);
        format!("{a}.{b}")
    };
    let approx = (lo.to_f64().unwrap_or(f64::NAN) + hi.to_f64().unwrap_or(f64::NAN)) / 2.0 / 1e12;
    let scale = BigInt::from(10).pow(digits);
    let bounds = (BigRational::new(lo.clone(), scale.clone()), BigRational::new(hi.clone(), scale));
    Ok(AsymptoticRatio { n, lower: fmt(&lo), upper: fmt(&hi), approx, bounds })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(v: &[BigInt]) -> Vec<i64> {
        v.iter().map(|x| x.to_i64().unwrap()).collect()
    }

    #[test]
    fn pipeline_identities() {
        let p = whirl_pipeline(20).unwrap();
        assert!(p.passed(), "{:?}", p.checks);
        assert_eq!(small(&integers(&p.v).unwrap()[..8]), [0, 1, 2, 6, 20, 69, 242, 858]);
        assert_eq!(small(&integers(&p.p).unwrap()[..8]), [0, 0, 0, 0, 0, 1, 8, 44]);
        // n = 5: 68 plain plus the pinwheel
        assert_eq!(small(&integers(&p.z).unwrap()[5..6]), [68]);
    }

    #[test]
    fn offset_is_one() {
        let p = whirl_pipeline(40).unwrap();
        let v = integers(&p.v).unwrap();
        assert_eq!(calibrate_offset(&v, 30).unwrap(), 1);
        let r = vortex_recurrence(38).unwrap();
        assert_eq!(&r[..], &v[1..40]);
        assert!(residual(&v[1..], 2).is_zero());
        assert!(!residual(&v, 2).is_zero());
    }

    #[test]
    fn ratio_interval_is_ordered() {
        let r = asymptotic_ratio(50).unwrap();
        assert!(r.bounds.0 <= r.bounds.1);
        assert!(r.bounds.1 - &r.bounds.0 < BigRational::new(BigInt::one(), BigInt::from(10u64.pow(9))));
        assert!(asymptotic_ratio(1).is_err());
    }
}
