use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::{self, Write};
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};

use super::{Bidegree, Rational};

/// A polynomial variable together with its bidegree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Variable {
    pub name: String,
    pub degree: Bidegree,
}

/// An ordered list of graded variables. Variable `i` is the `i`-th exponent
/// of every [`Monomial`] over this ring.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Ring {
    vars: Vec<Variable>,
}

impl Ring {
    pub fn new() -> Self {
        Ring { vars: Vec::new() }
    }

    /// `a` of degree (2,0) followed by `x1..xn` of degree (0,2).
    pub fn standard(n: usize) -> Self {
        let mut r = Ring::new();
        r.push("a", Bidegree::new(2, 0));
        for i in 1..=n {
            r.push(&alloc::format!("x{i}"), Bidegree::new(0, 2));
        }
        r
    }

    pub fn push(&mut self, name: &str, degree: Bidegree) -> usize {
        self.vars.push(Variable {
            name: name.to_string(),
            degree,
        });
        self.vars.len() - 1
    }

    pub fn remove(&mut self, i: usize) -> Variable {
        self.vars.remove(i)
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn vars(&self) -> &[Variable] {
        &self.vars
    }

    pub fn name(&self, i: usize) -> &str {
        &self.vars[i].name
    }

    pub fn degree_of(&self, i: usize) -> Bidegree {
        self.vars[i].degree
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.name == name)
    }

    pub fn degree(&self, m: &Monomial) -> Bidegree {
        let mut d = Bidegree::ZERO;
        for (i, &e) in m.0.iter().enumerate() {
            if e > 0 {
                d += self.vars[i].degree.scale(e as i32);
            }
        }
        d
    }

    /// All monomials of the given bidegree, in increasing monomial order.
    ///
    /// Every variable must have a nonzero degree with nonnegative entries,
    /// which keeps the list finite.
    pub fn monomials_of_degree(&self, d: Bidegree) -> Vec<Monomial> {
        let mut out = Vec::new();
        if d.k < 0 || d.l < 0 {
            return out;
        }
        let mut exps = vec![0u16; self.vars.len()];
        self.enumerate(0, d, &mut exps, &mut out);
        out.sort();
        out
    }

    fn enumerate(&self, i: usize, rest: Bidegree, exps: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if i == self.vars.len() {
            if rest == Bidegree::ZERO {
                out.push(Monomial(exps.clone()));
            }
            return;
        }
        let dv = self.vars[i].degree;
        debug_assert!(dv.k >= 0 && dv.l >= 0 && dv != Bidegree::ZERO);
        let mut e = 0u16;
        let mut left = rest;
        while left.k >= 0 && left.l >= 0 {
            exps[i] = e;
            self.enumerate(i + 1, left, exps, out);
            e += 1;
            left = left - dv;
        }
        exps[i] = 0;
    }
}

/// Exponent vector of a monomial. Ordered lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub Vec<u16>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut m = Monomial::one(n);
        m.0[i] = 1;
        m
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), o.0.len());
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    /// `self / o` if `o` divides `self`.
    pub fn div(&self, o: &Monomial) -> Option<Monomial> {
        let mut v = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&o.0) {
            v.push(a.checked_sub(*b)?);
        }
        Some(Monomial(v))
    }

    pub fn display(&self, ring: &Ring) -> String {
        let mut s = String::new();
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !s.is_empty() {
                s.push('*');
            }
            s.push_str(ring.name(i));
            if e > 1 {
                let _ = write!(s, "^{e}");
            }
        }
        if s.is_empty() {
            s.push('1');
        }
        s
    }
}

/// A polynomial with rational coefficients in a fixed number of variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::term(Monomial::one(nvars), c)
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::term(Monomial::var(nvars, i), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut p = Polynomial::zero(m.nvars());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Sum of `c * x_i` over the given pairs.
    pub fn linear(nvars: usize, coeffs: &[(usize, i64)]) -> Self {
        let mut p = Polynomial::zero(nvars);
        for &(i, c) in coeffs {
            p.add_term(Monomial::var(nvars, i), super::rat(c));
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// The value if the polynomial is a constant (zero counts).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Nonzero constant, i.e. a unit of the polynomial ring.
    pub fn as_unit(&self) -> Option<Rational> {
        self.as_constant().filter(|c| !c.is_zero())
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        debug_assert_eq!(m.nvars(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(k, a)| (k.mul(m), a.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut out = Polynomial::one(self.nvars);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Highest exponent of variable `i`.
    pub fn degree_in(&self, i: usize) -> u16 {
        self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0)
    }

    pub fn involves(&self, i: usize) -> bool {
        self.terms.keys().any(|m| m.0[i] > 0)
    }

    /// If the polynomial is `c * x_i + rest` with `c` a nonzero rational and
    /// `rest` free of `x_i`, returns `c`.
    pub fn linear_coefficient(&self, i: usize) -> Option<Rational> {
        let mut found = None;
        for (m, c) in &self.terms {
            match m.0[i] {
                0 => {}
                1 if m.total_degree() == 1 => found = Some(c.clone()),
                _ => return None,
            }
        }
        found
    }

    /// Replaces `x_i` by `value`. The variable count is unchanged.
    pub fn substitute(&self, i: usize, value: &Polynomial) -> Polynomial {
        debug_assert_eq!(value.nvars, self.nvars);
        if !self.involves(i) {
            return self.clone();
        }
        let mut powers = vec![Polynomial::one(self.nvars)];
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i] as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            let mut rest = m.clone();
            rest.0[i] = 0;
            for (pm, pc) in &powers[e].terms {
                out.add_term(pm.mul(&rest), pc * c);
            }
        }
        out
    }

    /// Removes variable `i`, which must not occur.
    pub fn drop_var(&self, i: usize) -> Polynomial {
        assert!(!self.involves(i), "dropping a variable that still occurs");
        Polynomial {
            nvars: self.nvars - 1,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut v = m.0.clone();
                    v.remove(i);
                    (Monomial(v), c.clone())
                })
                .collect(),
        }
    }

    /// Inserts a fresh variable at position `i`.
    pub fn insert_var(&self, i: usize) -> Polynomial {
        Polynomial {
            nvars: self.nvars + 1,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut v = m.0.clone();
                    v.insert(i, 0);
                    (Monomial(v), c.clone())
                })
                .collect(),
        }
    }

    /// Re-indexes variables: variable `i` becomes `map[i]` in a ring with `nvars` variables.
    pub fn remap(&self, nvars: usize, map: &[usize]) -> Polynomial {
        let mut out = Polynomial::zero(nvars);
        for (m, c) in &self.terms {
            let mut v = vec![0u16; nvars];
            for (i, &e) in m.0.iter().enumerate() {
                v[map[i]] += e;
            }
            out.add_term(Monomial(v), c.clone());
        }
        out
    }

    /// The common bidegree of all terms, or `None` for zero or inhomogeneous input.
    pub fn bidegree(&self, ring: &Ring) -> Option<Bidegree> {
        let mut it = self.terms.keys().map(|m| ring.degree(m));
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn is_homogeneous(&self, ring: &Ring) -> bool {
        self.is_zero() || self.bidegree(ring).is_some()
    }

    pub fn display(&self, ring: &Ring) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                let _ = write!(s, "{a}");
            } else {
                if !a.is_one() {
                    let _ = write!(s, "{a}*");
                }
                s.push_str(&m.display(ring));
            }
        }
        s
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut ring = Ring::new();
        for i in 0..self.nvars {
            ring.push(&alloc::format!("v{i}"), Bidegree::new(0, 2));
        }
        f.write_str(&self.display(&ring))
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, o: &Polynomial) {
        for (m, c) in &o.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, o: &Polynomial) {
        for (m, c) in &o.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, o: &Polynomial) -> Polynomial {
        let mut r = self.clone();
        r += o;
        r
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, o: &Polynomial) -> Polynomial {
        let mut r = self.clone();
        r -= o;
        r
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(mut self, o: Polynomial) -> Polynomial {
        self += &o;
        self
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(mut self, o: Polynomial) -> Polynomial {
        self -= &o;
        self
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, o: &Polynomial) -> Polynomial {
        debug_assert_eq!(self.nvars, o.nvars);
        let mut r = Polynomial::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                r.add_term(m1.mul(m2), c1 * c2);
            }
        }
        r
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, o: Polynomial) -> Polynomial {
        &self * &o
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn x(i: usize) -> Polynomial {
        Polynomial::var(5, i)
    }

    #[test]
    fn substitution_expands_powers() {
        // (x1 + x2)^2 with x1 := x2 - x3
        let p = (&x(1) + &x(2)).pow(2);
        let v = &x(2) - &x(3);
        let got = p.substitute(1, &v);
        let want = (&(&x(2) * &Polynomial::constant(5, rat(2))) - &x(3)).pow(2);
        assert_eq!(got, want);
        assert!(!got.involves(1));
    }

    #[test]
    fn linear_coefficient_detects_linear_occurrence() {
        let p = &(&x(1) * &Polynomial::constant(5, rat(3))) - &(&x(2) * &x(3));
        assert_eq!(p.linear_coefficient(1), Some(rat(3)));
        assert_eq!(p.linear_coefficient(2), None);
        assert_eq!(p.linear_coefficient(4), None);
    }

    #[test]
    fn monomials_of_degree_counts() {
        let ring = Ring::standard(3);
        // degree (2,4): a * (x-monomials of degree 2) -> 6
        assert_eq!(ring.monomials_of_degree(Bidegree::new(2, 4)).len(), 6);
        assert_eq!(ring.monomials_of_degree(Bidegree::new(0, 0)).len(), 1);
        assert_eq!(ring.monomials_of_degree(Bidegree::new(1, 0)).len(), 0);
        assert!(ring.monomials_of_degree(Bidegree::new(-2, 0)).is_empty());
    }

    #[test]
    fn display_is_readable() {
        let ring = Ring::standard(4);
        let p = Polynomial::linear(5, &[(1, 1), (4, -1)]);
        assert_eq!(p.display(&ring), "x1 - x4");
        let q = &(&x(3) * &x(4)) - &(&x(1) * &x(2));
        assert_eq!(q.display(&ring), "-x1*x2 + x3*x4");
    }
}
