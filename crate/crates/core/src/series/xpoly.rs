//! Series in `t` whose coefficients are integer polynomials in `x1..x4`, the simple-whirl
//! functional equation and its closed form.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use super::qseries::QSeries;
use crate::error::{Error, Result};
use crate::generators::whirl;

pub type Exp = [u8; 4];

/// Integer polynomial in `x1..x4`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MPoly(BTreeMap<Exp, BigInt>);

impl MPoly {
    pub fn zero() -> Self {
        MPoly(BTreeMap::new())
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial([0; 4], c)
    }

    pub fn monomial(e: Exp, c: i64) -> Self {
        let mut m = MPoly::zero();
        m.add_term(e, BigInt::from(c));
        m
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0; 4];
        e[i] = 1;
        Self::monomial(e, 1)
    }

    /// `e_m(x1..x4)`.
    pub fn elementary(m: usize) -> Self {
        let mut p = MPoly::zero();
        for mask in 0u8..16 {
            if mask.count_ones() as usize == m {
                let e = [mask & 1, mask >> 1 & 1, mask >> 2 & 1, mask >> 3 & 1];
                p.add_term(e, BigInt::one());
            }
        }
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &BigInt)> {
        self.0.iter()
    }

    /// Number of nonzero terms.
    pub fn term_count(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn add_term(&mut self, e: Exp, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.0.entry(e).or_default();
        *slot += c;
        if slot.is_zero() {
            self.0.remove(&e);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &o.0 {
            r.add_term(*e, c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &o.0 {
            r.add_term(*e, -c);
        }
        r
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut r = MPoly::zero();
        for (e, c) in &self.0 {
            r.add_term(*e, c * k);
        }
        r
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = MPoly::zero();
        for (a, c) in &self.0 {
            for (b, d) in &o.0 {
                r.add_term([a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]], c * d);
            }
        }
        r
    }

    /// `x_i = 1`.
    pub fn at_one(&self, i: usize) -> Self {
        let mut r = MPoly::zero();
        for (e, c) in &self.0 {
            let mut e = *e;
            e[i] = 0;
            r.add_term(e, c.clone());
        }
        r
    }

    /// Coefficient of `∏ x_i^{d_i}` over the variables in `vars`, as a polynomial in the others.
    pub fn coeff_of(&self, vars: &[(usize, u8)]) -> Self {
        let mut r = MPoly::zero();
        for (e, c) in &self.0 {
            if vars.iter().all(|&(i, d)| e[i] == d) {
                let mut e = *e;
                for &(i, _) in vars {
                    e[i] = 0;
                }
                r.add_term(e, c.clone());
            }
        }
        r
    }

    /// `(f - f|_{x_i=1}) / (x_i - 1)`, by synthetic division.
    pub fn divided_difference(&self, i: usize) -> Result<Self> {
        let num = self.sub(&self.at_one(i));
        // group by the other exponents
        let mut groups: BTreeMap<Exp, BTreeMap<u8, BigInt>> = BTreeMap::new();
        for (e, c) in &num.0 {
            let mut k = *e;
            k[i] = 0;
            groups.entry(k).or_default().insert(e[i], c.clone());
        }
        let mut r = MPoly::zero();
        for (k, g) in groups {
            let top = *g.keys().next_back().unwrap();
            let mut carry = BigInt::zero();
            for d in (1..=top).rev() {
                carry += g.get(&d).cloned().unwrap_or_default();
                let mut e = k;
                e[i] = d - 1;
                r.add_term(e, carry.clone());
            }
            if !(carry + g.get(&0).cloned().unwrap_or_default()).is_zero() {
                return Err(Error::Series(format!("divided difference in x{}: numerator does not vanish at 1", i + 1)));
            }
        }
        Ok(r)
    }

    /// Exact quotient, or an error if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Result<Self> {
        let (le, lc) = d.0.iter().next_back().ok_or_else(|| Error::Series("division by the zero polynomial".into()))?;
        let mut rem = self.clone();
        let mut q = MPoly::zero();
        while let Some((e, c)) = rem.0.iter().next_back().map(|(e, c)| (*e, c.clone())) {
            let (qc, r) = c.div_rem(lc);
            if !r.is_zero() || (0..4).any(|i| e[i] < le[i]) {
                return Err(Error::Series("inexact multivariate division".into()));
            }
            let qe = [e[0] - le[0], e[1] - le[1], e[2] - le[2], e[3] - le[3]];
            let term = MPoly::monomial(qe, 1).scale(&qc);
            rem = rem.sub(&term.mul(d));
            q = q.add(&term);
        }
        Ok(q)
    }

    /// Renames `x_i` to `x_{perm[i]}`.
    pub fn permute(&self, perm: [usize; 4]) -> Self {
        let mut r = MPoly::zero();
        for (e, c) in &self.0 {
            let mut f = [0; 4];
            for i in 0..4 {
                f[perm[i]] = e[i];
            }
            r.add_term(f, c.clone());
        }
        r
    }

    pub fn at_all_ones(&self) -> BigInt {
        self.0.values().sum()
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}")?;
            for (i, &d) in e.iter().enumerate() {
                match d {
                    0 => {}
                    1 => write!(f, "*x{}", i + 1)?,
                    _ => write!(f, "*x{}^{d}", i + 1)?,
                }
            }
        }
        Ok(())
    }
}

/// `Σ_k c_k t^k` with `c_k` in `Z[x1..x4]`, known up to `t^order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XPoly {
    c: Vec<MPoly>,
}

impl XPoly {
    pub fn zero(order: usize) -> Self {
        XPoly { c: vec![MPoly::zero(); order + 1] }
    }

    pub fn order(&self) -> usize {
        self.c.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &MPoly {
        &self.c[k]
    }

    pub fn coeffs(&self) -> &[MPoly] {
        &self.c
    }

    pub fn from_coeffs(c: Vec<MPoly>) -> Self {
        XPoly { c }
    }

    pub fn valuation(&self) -> Option<usize> {
        self.c.iter().position(|m| !m.is_zero())
    }

    pub fn sub(&self, o: &Self) -> Self {
        XPoly { c: self.c.iter().zip(&o.c).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        let mut c = vec![MPoly::zero(); n + 1];
        for i in 0..=n {
            if self.c[i].is_zero() {
                continue;
            }
            for j in 0..=n - i {
                if !o.c[j].is_zero() {
                    c[i + j] = c[i + j].add(&self.c[i].mul(&o.c[j]));
                }
            }
        }
        XPoly { c }
    }

    /// `F(t,1,1,1,1)`.
    pub fn at_all_ones(&self) -> QSeries {
        let c = self.c.iter().map(|m| num_rational::BigRational::from_integer(m.at_all_ones())).collect();
        QSeries::from_coeffs(c)
    }

    pub fn permute(&self, perm: [usize; 4]) -> Self {
        XPoly { c: self.c.iter().map(|m| m.permute(perm)).collect() }
    }

    /// Total number of monomials over all powers of `t`.
    pub fn size(&self) -> usize {
        self.c.iter().map(MPoly::term_count).sum()
    }
}

fn e4() -> MPoly {
    MPoly::elementary(4)
}

/// Right side of the functional equation, applied to `f`.
pub fn funceq_rhs(f: &XPoly) -> Result<XPoly> {
    let n = f.order();
    let mut out = XPoly::zero(n);
    if n >= 5 {
        out.c[5] = e4();
    }
    let x1x4 = MPoly::var(0).mul(&MPoly::var(3));
    let x1x3x4 = x1x4.mul(&MPoly::var(2));
    for m in 6..=n {
        let g = &f.c[m - 1];
        if g.is_zero() {
            continue;
        }
        let t1 = e4().mul(&g.at_one(0).coeff_of(&[(2, 1), (3, 1)]));
        let t2 = e4().mul(&g.coeff_of(&[(0, 1), (3, 1)]).divided_difference(1)?);
        let t3 = x1x3x4.mul(&g.coeff_of(&[(0, 1)]).divided_difference(2)?);
        let t4 = x1x4.mul(&g.divided_difference(3)?);
        out.c[m] = out.c[m].add(&t1).add(&t2).add(&t3).add(&t4);
    }
    Ok(out)
}

/// Fixed point of the functional equation to order `order`, iterating from zero.
pub fn solve_funceq(order: usize) -> Result<XPoly> {
    if order < 5 {
        return Err(Error::Series("functional equation needs order >= 5".into()));
    }
    let mut f = XPoly::zero(order);
    let mut last: Option<usize> = None;
    for step in 1..=order + 2 {
        let g = funceq_rhs(&f)?;
        let change = g.sub(&f).valuation();
        f = g;
        match change {
            None => return Ok(f),
            Some(v) if last.is_some_and(|p| v <= p) => {
                return Err(Error::NonContraction { system: "simple-whirl equation".into(), step });
            }
            Some(v) => last = Some(v),
        }
    }
    Err(Error::NonContraction { system: "simple-whirl equation".into(), step: order + 2 })
}

/// `F = t^5 (β - sqrt(β² - 4α e4²)) / (2α)` to order `order`; the root branch has constant term
/// `e4 (1 - α_0)`, so that `F` starts with `t^5 x1x2x3x4`.
pub fn closed_form(order: usize) -> Result<XPoly> {
    if order < 5 {
        return Err(Error::Series("closed form needs order >= 5".into()));
    }
    let m = order - 5;
    let (e1, e2, e3, e4) = (MPoly::elementary(1), MPoly::elementary(2), MPoly::elementary(3), MPoly::elementary(4));
    // α = ∏ (1 - x_i + t x_i²)
    let mut alpha = XPoly::zero(m);
    alpha.c[0] = MPoly::constant(1);
    for i in 0..4 {
        let mut f = XPoly::zero(m);
        f.c[0] = MPoly::constant(1).sub(&MPoly::var(i));
        if m >= 1 {
            f.c[1] = MPoly::var(i).mul(&MPoly::var(i));
        }
        alpha = alpha.mul(&f);
    }
    // β = (2 e4 t² - t (4e4 - 3e3 + 2e2) + e4 - e3 + e2 - e1 + 2) e4
    let mut beta = XPoly::zero(m);
    beta.c[0] = e4.sub(&e3).add(&e2).sub(&e1).add(&MPoly::constant(2)).mul(&e4);
    if m >= 1 {
        let k = e4.scale(&BigInt::from(4)).sub(&e3.scale(&BigInt::from(3))).add(&e2.scale(&BigInt::from(2)));
        beta.c[1] = k.mul(&e4).scale(&BigInt::from(-1));
    }
    if m >= 2 {
        beta.c[2] = e4.mul(&e4).scale(&BigInt::from(2));
    }
    let mut e4sq = XPoly::zero(m);
    e4sq.c[0] = e4.mul(&e4).scale(&BigInt::from(4));
    let disc = beta.mul(&beta).sub(&alpha.mul(&e4sq));
    // square root, term by term
    let s0 = e4.mul(&MPoly::constant(1).sub(&alpha.c[0]));
    if s0.mul(&s0) != disc.c[0] {
        return Err(Error::Series("discriminant constant term is not the expected square".into()));
    }
    let two_s0 = s0.scale(&BigInt::from(2));
    let mut s = vec![s0];
    for k in 1..=m {
        let mut acc = disc.c[k].clone();
        for i in 1..k {
            acc = acc.sub(&s[i].mul(&s[k - i]));
        }
        s.push(acc.div_exact(&two_s0)?);
    }
    let num: Vec<MPoly> = (0..=m).map(|k| beta.c[k].sub(&s[k])).collect();
    // G = num / (2α), term by term
    let two_a0 = alpha.c[0].scale(&BigInt::from(2));
    let mut g: Vec<MPoly> = Vec::with_capacity(m + 1);
    for k in 0..=m {
        let mut acc = num[k].clone();
        for i in 1..=k {
            acc = acc.sub(&alpha.c[i].scale(&BigInt::from(2)).mul(&g[k - i]));
        }
        g.push(acc.div_exact(&two_a0)?);
    }
    let mut f = XPoly::zero(order);
    for (k, gk) in g.into_iter().enumerate() {
        f.c[k + 5] = gk;
    }
    Ok(f)
}

/// `Σ t^{5+k} x^s` over the generating-tree nodes of depth `k <= order - 5`, with signature `s`.
pub fn tree_census(order: usize) -> XPoly {
    let mut f = XPoly::zero(order);
    if order < 5 {
        return f;
    }
    for (k, level) in whirl::whirl_tree(order - 5).into_iter().enumerate() {
        let mut p = MPoly::zero();
        for (sig, count) in level {
            let e = sig.0.map(|v| u8::try_from(v).expect("small signature"));
            p.add_term(e, BigInt::from(count));
        }
        f.c[k + 5] = p;
    }
    f
}

#[derive(Clone, Debug, Serialize)]
pub struct SymmetryReport {
    /// Invariant under `x1 -> x2 -> x3 -> x4 -> x1`.
    pub cyclic: bool,
    /// Invariant under `x1 <-> x2`.
    pub transposition: bool,
}

pub fn symmetry(f: &XPoly) -> SymmetryReport {
    SymmetryReport { cyclic: f.permute([1, 2, 3, 0]) == *f, transposition: f.permute([1, 0, 2, 3]) == *f }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::algebraic::catalan;
    use proptest::prelude::*;

    #[test]
    fn root_term() {
        let f = solve_funceq(6).unwrap();
        assert_eq!(f.coeff(5), &MPoly::monomial([1, 1, 1, 1], 1));
        assert_eq!(f.coeff(6).at_all_ones(), BigInt::from(4));
    }

    #[test]
    fn specialization_small() {
        let f = solve_funceq(9).unwrap().at_all_ones();
        let c4 = catalan(4).pow(4).shift_up(5);
        assert_eq!(f, c4);
    }

    #[test]
    fn agrees_with_tree_and_closed_form() {
        let f = solve_funceq(9).unwrap();
        assert_eq!(f, tree_census(9));
        assert_eq!(f, closed_form(9).unwrap());
        let s = symmetry(&f);
        assert!(s.cyclic);
    }

    #[test]
    fn inexact_division_is_reported() {
        let a = MPoly::var(0).add(&MPoly::constant(1));
        assert!(a.div_exact(&MPoly::var(1)).is_err());
        assert_eq!(a.mul(&MPoly::var(1)).div_exact(&MPoly::var(1)).unwrap(), a);
    }

    fn mpoly() -> impl Strategy<Value = MPoly> {
        proptest::collection::vec(((0u8..3, 0u8..3, 0u8..3, 0u8..3), -5i64..5), 0..6).prop_map(|ts| {
            let mut p = MPoly::zero();
            for ((a, b, c, d), k) in ts {
                p.add_term([a, b, c, d], BigInt::from(k));
            }
            p
        })
    }

    proptest! {
        #[test]
        fn divided_difference_inverts(p in mpoly(), i in 0usize..4) {
            // (x_i - 1) * DD(p) = p - p|_{x_i=1}
            let dd = p.divided_difference(i).unwrap();
            let back = dd.mul(&MPoly::var(i).sub(&MPoly::constant(1)));
            prop_assert_eq!(back, p.sub(&p.at_one(i)));
        }

        #[test]
        fn exact_division_round_trip(p in mpoly(), q in mpoly()) {
            prop_assume!(!q.is_zero());
            prop_assert_eq!(p.mul(&q).div_exact(&q).unwrap(), p);
        }
    }
}
