use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::{self, Write};
use core::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::Rational;
use crate::error::{Error, Result};

/// A Laurent polynomial in `q` and `t` with rational coefficients.
///
/// Keys are `(q exponent, t exponent)`, so iteration runs by lowest `q`
/// first and then lowest `t`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentQT {
    terms: BTreeMap<(i32, i32), Rational>,
}

impl LaurentQT {
    pub fn zero() -> Self {
        LaurentQT::default()
    }

    pub fn one() -> Self {
        Self::monomial(Rational::one(), 0, 0)
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0, 0)
    }

    /// `c * q^qe * t^te`
    pub fn monomial(c: Rational, qe: i32, te: i32) -> Self {
        let mut p = LaurentQT::zero();
        p.add_term(qe, te, c);
        p
    }

    pub fn q(e: i32) -> Self {
        Self::monomial(Rational::one(), e, 0)
    }

    pub fn t(e: i32) -> Self {
        Self::monomial(Rational::one(), 0, e)
    }

    /// Builds from `(coefficient, q exponent, t exponent)` triples.
    pub fn from_terms(terms: &[(i64, i32, i32)]) -> Self {
        let mut p = LaurentQT::zero();
        for &(c, qe, te) in terms {
            p.add_term(qe, te, super::rat(c));
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i32, i32), &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, qe: i32, te: i32) -> Rational {
        self.terms
            .get(&(qe, te))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, qe: i32, te: i32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((qe, te)).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(qe, te));
        }
    }

    pub fn min_q(&self) -> Option<i32> {
        self.terms.keys().map(|k| k.0).min()
    }

    pub fn max_q(&self) -> Option<i32> {
        self.terms.keys().map(|k| k.0).max()
    }

    pub fn min_t(&self) -> Option<i32> {
        self.terms.keys().map(|k| k.1).min()
    }

    /// The t-Laurent polynomial multiplying `q^qe`.
    pub fn q_coeff(&self, qe: i32) -> LaurentQT {
        let mut p = LaurentQT::zero();
        for (&(a, b), c) in self.terms.range((qe, i32::MIN)..=(qe, i32::MAX)) {
            debug_assert_eq!(a, qe);
            p.add_term(0, b, c.clone());
        }
        p
    }

    /// Multiplies by `q^dq * t^dt`.
    pub fn shift(&self, dq: i32, dt: i32) -> LaurentQT {
        LaurentQT {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), c)| ((a + dq, b + dt), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> LaurentQT {
        if c.is_zero() {
            return LaurentQT::zero();
        }
        LaurentQT {
            terms: self.terms.iter().map(|(k, a)| (*k, a * c)).collect(),
        }
    }

    /// Integer power; negative exponents only for single monomials.
    pub fn pow(&self, e: i32) -> Option<LaurentQT> {
        if e >= 0 {
            let mut out = LaurentQT::one();
            for _ in 0..e {
                out = &out * self;
            }
            return Some(out);
        }
        if self.terms.len() != 1 {
            return None;
        }
        let (&(a, b), c) = self.terms.iter().next().unwrap();
        let inv = LaurentQT::monomial(c.recip(), -a, -b);
        inv.pow(-e)
    }

    /// The only term if this is a single monomial.
    pub fn as_monomial(&self) -> Option<(Rational, i32, i32)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (&(a, b), c) = self.terms.iter().next().unwrap();
        Some((c.clone(), a, b))
    }

    /// Substitutes `q -> q^-1`.
    pub fn invert_q(&self) -> LaurentQT {
        LaurentQT {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), c)| ((-a, b), c.clone()))
                .collect(),
        }
    }
}

fn write_power(s: &mut String, var: char, e: i32) {
    match e {
        0 => {}
        1 => s.push(var),
        _ => {
            let _ = write!(s, "{var}^{e}");
        }
    }
}

impl fmt::Display for LaurentQT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut s = String::new();
        for (i, (&(qe, te), c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = qe != 0 || te != 0;
            if !a.is_one() || !mono {
                let _ = write!(s, "{a}");
                if mono {
                    s.push('*');
                }
            }
            write_power(&mut s, 'q', qe);
            if qe != 0 && te != 0 {
                s.push('*');
            }
            write_power(&mut s, 't', te);
        }
        f.write_str(&s)
    }
}

impl AddAssign<&LaurentQT> for LaurentQT {
    fn add_assign(&mut self, o: &LaurentQT) {
        for (&(a, b), c) in &o.terms {
            self.add_term(a, b, c.clone());
        }
    }
}

impl Add for &LaurentQT {
    type Output = LaurentQT;
    fn add(self, o: &LaurentQT) -> LaurentQT {
        let mut r = self.clone();
        r += o;
        r
    }
}

impl Sub for &LaurentQT {
    type Output = LaurentQT;
    fn sub(self, o: &LaurentQT) -> LaurentQT {
        let mut r = self.clone();
        for (&(a, b), c) in &o.terms {
            r.add_term(a, b, -c.clone());
        }
        r
    }
}

impl Neg for &LaurentQT {
    type Output = LaurentQT;
    fn neg(self) -> LaurentQT {
        LaurentQT {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl Mul for &LaurentQT {
    type Output = LaurentQT;
    fn mul(self, o: &LaurentQT) -> LaurentQT {
        let mut r = LaurentQT::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &o.terms {
                r.add_term(a1 + a2, b1 + b2, c1 * c2);
            }
        }
        r
    }
}

macro_rules! owned_ops {
    ($t:ty) => {
        impl Add for $t {
            type Output = $t;
            fn add(self, o: $t) -> $t {
                &self + &o
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, o: $t) -> $t {
                &self - &o
            }
        }
        impl Mul for $t {
            type Output = $t;
            fn mul(self, o: $t) -> $t {
                &self * &o
            }
        }
        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                -&self
            }
        }
    };
}

owned_ops!(LaurentQT);

/// A fraction of two [`LaurentQT`].
///
/// The denominator is normalized so that its lowest q- and t-exponents are
/// zero and its first term (lowest q, then lowest t) has coefficient 1.
/// Equality is decided by cross-multiplication.
#[derive(Clone, Debug)]
pub struct RationalQT {
    num: LaurentQT,
    den: LaurentQT,
}

impl RationalQT {
    pub fn new(num: LaurentQT, den: LaurentQT) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Invalid("zero denominator".into()));
        }
        let mut r = RationalQT { num, den };
        r.normalize();
        Ok(r)
    }

    pub fn from_laurent(p: LaurentQT) -> Self {
        RationalQT {
            num: p,
            den: LaurentQT::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_laurent(LaurentQT::zero())
    }

    pub fn one() -> Self {
        Self::from_laurent(LaurentQT::one())
    }

    fn normalize(&mut self) {
        let mq = self.den.min_q().unwrap();
        let mt = self.den.min_t().unwrap();
        let (_, lead) = self
            .den
            .terms
            .iter()
            .next()
            .map(|(k, c)| (*k, c.clone()))
            .unwrap();
        let inv = lead.recip();
        self.den = self.den.shift(-mq, -mt).scale(&inv);
        self.num = self.num.shift(-mq, -mt).scale(&inv);
    }

    pub fn num(&self) -> &LaurentQT {
        &self.num
    }

    pub fn den(&self) -> &LaurentQT {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn recip(&self) -> Result<RationalQT> {
        RationalQT::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &RationalQT) -> Result<RationalQT> {
        RationalQT::new(&self.num * &o.den, &self.den * &o.num)
    }

    pub fn pow(&self, e: i32) -> Result<RationalQT> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let mut out = RationalQT::one();
        for _ in 0..e.unsigned_abs() {
            out = &out * &base;
        }
        Ok(out)
    }

    /// The Laurent polynomial, if the denominator is 1 after normalization.
    pub fn as_laurent(&self) -> Option<LaurentQT> {
        (self.den == LaurentQT::one()).then(|| self.num.clone())
    }
}

impl PartialEq for RationalQT {
    fn eq(&self, o: &RationalQT) -> bool {
        &self.num * &o.den == &o.num * &self.den
    }
}

impl Eq for RationalQT {}

impl From<LaurentQT> for RationalQT {
    fn from(p: LaurentQT) -> Self {
        RationalQT::from_laurent(p)
    }
}

impl fmt::Display for RationalQT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == LaurentQT::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl Add for &RationalQT {
    type Output = RationalQT;
    fn add(self, o: &RationalQT) -> RationalQT {
        if self.den == o.den {
            return RationalQT::new(&self.num + &o.num, self.den.clone()).unwrap();
        }
        RationalQT::new(
            &(&self.num * &o.den) + &(&o.num * &self.den),
            &self.den * &o.den,
        )
        .unwrap()
    }
}

impl Sub for &RationalQT {
    type Output = RationalQT;
    fn sub(self, o: &RationalQT) -> RationalQT {
        self + &(-o)
    }
}

impl Neg for &RationalQT {
    type Output = RationalQT;
    fn neg(self) -> RationalQT {
        RationalQT {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &RationalQT {
    type Output = RationalQT;
    fn mul(self, o: &RationalQT) -> RationalQT {
        RationalQT::new(&self.num * &o.num, &self.den * &o.den).unwrap()
    }
}

owned_ops!(RationalQT);

/// A power series in `q` whose coefficients are Laurent polynomials in `t`,
/// exact for every q-exponent up to and including `qmax`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    pub coeffs: BTreeMap<i32, LaurentQT>,
    pub qmax: i32,
}

impl QSeries {
    pub fn new(qmax: i32) -> Self {
        QSeries {
            coeffs: BTreeMap::new(),
            qmax,
        }
    }

    /// The t-Laurent coefficient of `q^l` (zero when absent).
    pub fn coeff(&self, l: i32) -> LaurentQT {
        self.coeffs.get(&l).cloned().unwrap_or_default()
    }

    pub fn min_q(&self) -> Option<i32> {
        self.coeffs.keys().next().copied()
    }

    pub fn add_term(&mut self, l: i32, te: i32, c: Rational) {
        if l > self.qmax {
            return;
        }
        let e = self.coeffs.entry(l).or_default();
        e.add_term(0, te, c);
        if e.is_zero() {
            self.coeffs.remove(&l);
        }
    }

    /// Truncation of a Laurent polynomial.
    pub fn from_laurent(p: &LaurentQT, qmax: i32) -> Self {
        let mut s = QSeries::new(qmax);
        for (&(a, b), c) in p.terms() {
            s.add_term(a, b, c.clone());
        }
        s
    }

    /// Product with a Laurent polynomial, truncated at `qmax`. Only exact
    /// when the multiplier has no negative q-exponents.
    pub fn mul_laurent(&self, p: &LaurentQT) -> QSeries {
        let mut s = QSeries::new(self.qmax);
        for (&l, c) in &self.coeffs {
            for (&(a, b), d) in c.terms() {
                for (&(qe, te), e) in p.terms() {
                    debug_assert_eq!(a, 0);
                    s.add_term(l + qe, b + te, d * e);
                }
            }
        }
        s
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (l, c) in &self.coeffs {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({c})*q^{l}")?;
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(q^{})", self.qmax + 1)
    }
}

/// Expands a rational function as a power series in `q` up to `q^qmax`.
///
/// The lowest-q part of the denominator must be a single monomial `c*q^a*t^b`,
/// which is what makes the expansion unique.
pub fn qt_expand(f: &RationalQT, qmax: i32) -> Result<QSeries> {
    let den = f.den();
    let q0 = den.min_q().unwrap();
    let d0 = den.q_coeff(q0);
    let (c0, _, t0) = d0.as_monomial().ok_or_else(|| {
        Error::Invalid(alloc::format!(
            "lowest q-coefficient {d0} of the denominator is not a monomial"
        ))
    })?;
    let inv0 = LaurentQT::monomial(c0.recip(), 0, -t0);
    let d: Vec<(i32, LaurentQT)> = (q0..=den.max_q().unwrap())
        .map(|e| (e - q0, den.q_coeff(e)))
        .filter(|(_, c)| !c.is_zero())
        .collect();
    let mut out = QSeries::new(qmax);
    let num = f.num();
    let Some(nmin) = num.min_q() else {
        return Ok(out);
    };
    let smin = nmin - q0;
    let mut s: BTreeMap<i32, LaurentQT> = BTreeMap::new();
    for e in smin..=qmax {
        let mut acc = num.q_coeff(e + q0);
        for (i, di) in &d {
            if *i == 0 {
                continue;
            }
            if let Some(prev) = s.get(&(e - i)) {
                acc = &acc - &(prev * di);
            }
        }
        let se = &acc * &inv0;
        if !se.is_zero() {
            s.insert(e, se);
        }
    }
    for (e, c) in s {
        for (&(_, te), v) in c.terms() {
            out.add_term(e, te, v.clone());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn geometric_series() {
        // 1 / (1 - q^2) = 1 + q^2 + q^4 + ...
        let f = RationalQT::new(
            LaurentQT::one(),
            LaurentQT::from_terms(&[(1, 0, 0), (-1, 2, 0)]),
        )
        .unwrap();
        let s = qt_expand(&f, 6).unwrap();
        let keys: Vec<i32> = s.coeffs.keys().copied().collect();
        assert_eq!(keys, vec![0, 2, 4, 6]);
        assert_eq!(s.coeff(4), LaurentQT::one());
    }

    #[test]
    fn normalization_makes_denominator_monic() {
        let f = RationalQT::new(
            LaurentQT::q(3),
            LaurentQT::from_terms(&[(2, -1, 1), (2, 1, 1)]),
        )
        .unwrap();
        assert_eq!(f.den(), &LaurentQT::from_terms(&[(1, 0, 0), (1, 2, 0)]));
        assert_eq!(f.num().coeff(4, -1), crate::algebra::frac(1, 2));
    }

    #[test]
    fn cross_multiplied_equality() {
        let a = RationalQT::new(
            LaurentQT::from_terms(&[(1, 0, 0), (-1, 2, 0)]),
            LaurentQT::from_terms(&[(1, 0, 0), (-1, 1, 0)]),
        )
        .unwrap();
        let b = RationalQT::from(LaurentQT::from_terms(&[(1, 0, 0), (1, 1, 0)]));
        assert_eq!(a, b);
        assert_eq!(a.as_laurent(), None);
        assert_ne!(a, RationalQT::one());
        let _ = rat(0);
    }
}
