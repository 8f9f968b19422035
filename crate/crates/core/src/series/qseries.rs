use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Power series in `t` with exact rational coefficients, known up to `t^order`.
#[derive(Clone, PartialEq, Eq)]
pub struct QSeries {
    c: Vec<BigRational>,
}

fn q(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

impl QSeries {
    pub fn zero(order: usize) -> Self {
        QSeries { c: vec![BigRational::zero(); order + 1] }
    }

    pub fn constant(v: BigRational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.c[0] = v;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(BigRational::one(), order)
    }

    /// The series `t`.
    pub fn t(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.c[1] = BigRational::one();
        }
        s
    }

    pub fn from_coeffs(c: Vec<BigRational>) -> Self {
        assert!(!c.is_empty(), "a series needs at least the constant term");
        QSeries { c }
    }

    pub fn from_ints(c: &[i64], order: usize) -> Self {
        let mut s = Self::zero(order);
        for (i, &v) in c.iter().enumerate().take(order + 1) {
            s.c[i] = q(v);
        }
        s
    }

    pub fn order(&self) -> usize {
        self.c.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.c
    }

    pub fn coeff(&self, k: usize) -> &BigRational {
        &self.c[k]
    }

    /// Integer coefficients, or `None` if some coefficient is not an integer.
    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.c.iter().map(|x| x.is_integer().then(|| x.to_integer())).collect()
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.c.iter().position(|x| !x.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.valuation().is_none()
    }

    pub fn truncate(&self, order: usize) -> Self {
        QSeries { c: self.c[..=order.min(self.order())].to_vec() }
    }

    /// Divides by `t^k`; the first `k` coefficients must vanish. The order drops by `k`.
    pub fn shift_down(&self, k: usize) -> Result<Self> {
        if k > self.order() {
            return Err(Error::Series(format!("cannot divide a series of order {} by t^{k}", self.order())));
        }
        if let Some(i) = self.c[..k].iter().position(|x| !x.is_zero()) {
            return Err(Error::Series(format!("division by t^{k}: coefficient of t^{i} is nonzero")));
        }
        Ok(QSeries { c: self.c[k..].to_vec() })
    }

    /// Multiplies by `t^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        let mut c = vec![BigRational::zero(); k];
        c.extend(self.c.iter().cloned());
        QSeries { c }
    }

    pub fn scale(&self, v: &BigRational) -> Self {
        QSeries { c: self.c.iter().map(|x| x * v).collect() }
    }

    /// Inverse of a series with nonzero constant term.
    pub fn inverse(&self) -> Result<Self> {
        let a0 = &self.c[0];
        if a0.is_zero() {
            return Err(Error::Series("inverse of a series without constant term".into()));
        }
        let n = self.order();
        let inv0 = a0.recip();
        let mut b = Vec::with_capacity(n + 1);
        b.push(inv0.clone());
        for k in 1..=n {
            let mut s = BigRational::zero();
            for i in 1..=k {
                if !self.c[i].is_zero() {
                    s += &self.c[i] * &b[k - i];
                }
            }
            b.push(-s * &inv0);
        }
        Ok(QSeries { c: b })
    }

    /// Quotient; common powers of `t` are cancelled first, lowering the order.
    pub fn div(&self, other: &Self) -> Result<Self> {
        let v = other.valuation().ok_or_else(|| Error::Series("division by the zero series".into()))?;
        let (a, b) = if v == 0 { (self.clone(), other.clone()) } else { (self.shift_down(v)?, other.shift_down(v)?) };
        let n = a.order().min(b.order());
        Ok(&a.truncate(n) * &b.truncate(n).inverse()?)
    }

    /// Square root with positive constant term; the constant term must be the square of a rational.
    pub fn sqrt(&self) -> Result<Self> {
        let a0 = &self.c[0];
        let r0 = rational_sqrt(a0).ok_or_else(|| Error::Series(format!("constant term {a0} is not a positive rational square")))?;
        let n = self.order();
        let two_r0 = &r0 * q(2);
        let mut s = Vec::with_capacity(n + 1);
        s.push(r0);
        for k in 1..=n {
            let mut acc = self.c[k].clone();
            for i in 1..k {
                acc -= &s[i] * &s[k - i];
            }
            s.push(acc / &two_r0);
        }
        Ok(QSeries { c: s })
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = QSeries::one(self.order());
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                out = &out * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        out
    }

    /// Value at `t = x` of the polynomial formed by the known coefficients.
    pub fn eval_polynomial(&self, x: &BigRational) -> BigRational {
        self.c.iter().rev().fold(BigRational::zero(), |acc, a| acc * x + a)
    }

    /// First index where the two series differ, within the common order.
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        let n = self.order().min(other.order());
        (0..=n).find(|&i| self.c[i] != other.c[i])
    }
}

/// Exact square root of a nonnegative rational square.
pub fn rational_sqrt(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let (n, d) = (x.numer(), x.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    (&rn * &rn == *n && &rd * &rd == *d && !rn.is_zero()).then(|| BigRational::new(rn, rd))
}

impl fmt::Debug for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QSeries{self}")
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, x) in self.c.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "; O(t^{})]", self.order() + 1)
    }
}

impl Add for &QSeries {
    type Output = QSeries;
    fn add(self, o: &QSeries) -> QSeries {
        let n = self.order().min(o.order());
        QSeries { c: (0..=n).map(|i| &self.c[i] + &o.c[i]).collect() }
    }
}

impl Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, o: &QSeries) -> QSeries {
        let n = self.order().min(o.order());
        QSeries { c: (0..=n).map(|i| &self.c[i] - &o.c[i]).collect() }
    }
}

impl Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, o: &QSeries) -> QSeries {
        let n = self.order().min(o.order());
        let mut c = vec![BigRational::zero(); n + 1];
        for (i, a) in self.c.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate().take(n + 1 - i) {
                if !b.is_zero() {
                    c[i + j] += a * b;
                }
            }
        }
        QSeries { c }
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries { c: self.c.iter().map(|x| -x).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(s: &QSeries) -> Vec<i64> {
        s.c.iter().map(|x| i64::try_from(x.to_integer()).unwrap()).collect()
    }

    #[test]
    fn geometric_series() {
        let g = QSeries::from_ints(&[1, -1], 6).inverse().unwrap();
        assert_eq!(ints(&g), [1; 7]);
    }

    #[test]
    fn sqrt_of_one_minus_four_t() {
        let s = QSeries::from_ints(&[1, -4], 6).sqrt().unwrap();
        assert_eq!(ints(&s), [1, -2, -2, -4, -10, -28, -84]);
        assert!(QSeries::from_ints(&[2, 1], 3).sqrt().is_err());
    }

    #[test]
    fn division_cancels_powers_of_t() {
        let a = QSeries::from_ints(&[0, 0, 3, 6], 5);
        let b = QSeries::from_ints(&[0, 0, 3], 5);
        let c = a.div(&b).unwrap();
        assert_eq!(c.order(), 3);
        assert_eq!(ints(&c), [1, 2, 0, 0]);
        assert!(QSeries::from_ints(&[1], 3).div(&QSeries::t(3)).is_err());
    }

    fn series() -> impl Strategy<Value = QSeries> {
        proptest::collection::vec(-20i64..20, 1..10).prop_map(|v| QSeries::from_ints(&v, 9))
    }

    proptest! {
        #[test]
        fn product_quotient(f in series(), g in series(), g0 in 1i64..5) {
            let mut g = g;
            g.c[0] = q(g0);
            let back = (&f * &g).div(&g).unwrap();
            prop_assert_eq!(back, f);
        }

        #[test]
        fn sqrt_squares_back(f in series(), a in 1i64..6) {
            let mut f = f;
            f.c[0] = q(a * a);
            let s = f.sqrt().unwrap();
            prop_assert_eq!(&s * &s, f);
        }

        #[test]
        fn ring_laws(f in series(), g in series(), h in series()) {
            prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
            prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
            prop_assert_eq!(&(&f - &g) + &g, f);
        }
    }
}
