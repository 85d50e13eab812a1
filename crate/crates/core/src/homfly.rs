//! HOMFLYPT polynomial of a braid closure through the Hecke algebra and the
//! Ocneanu trace.
//!
//! Conventions: `T_i² = (1-q²) T_i + q²`, so `T_i⁻¹ = q⁻² T_i + (1-q⁻²)`.
//! With `δ = (1 + t⁻¹q)/(1 - q²)` and `z = 1/δ` the normalized Markov trace
//! `τ` reproduces `F(Dσ_n) = F(D)` and `F(Dσ_n⁻¹) = -t⁻¹q⁻¹ F(D)`, and
//! `F(b) = F(unknot) δ^(n-1) τ(T_b)` with `F(unknot) = t⁻¹/(q⁻¹ - q)`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::{rat, LaurentQT, RationalQT};
use crate::braid::BraidWord;
use crate::error::Result;

/// A permutation of `0..n` in one-line notation: entry `i` is the image of `i`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation(pub Vec<u8>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n as u8).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let w = &self.0;
        (0..w.len())
            .map(|i| (i + 1..w.len()).filter(|&j| w[i] > w[j]).count())
            .sum()
    }

    /// `w s_i`: swaps the entries at positions `i` and `i+1`.
    pub fn times_simple(&self, i: usize) -> Permutation {
        let mut w = self.0.clone();
        w.swap(i, i + 1);
        Permutation(w)
    }
}

/// An element of the Hecke algebra `H_n` in the basis `T_w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeElement {
    pub n: usize,
    pub coeffs: BTreeMap<Permutation, LaurentQT>,
}

impl HeckeElement {
    pub fn zero(n: usize) -> Self {
        HeckeElement {
            n,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::basis(Permutation::identity(n))
    }

    pub fn basis(w: Permutation) -> Self {
        let n = w.len();
        let mut e = Self::zero(n);
        e.coeffs.insert(w, LaurentQT::one());
        e
    }

    /// `T_{s_i}` for 0-based `i`.
    pub fn generator(n: usize, i: usize) -> Self {
        Self::basis(Permutation::identity(n).times_simple(i))
    }

    pub fn coeff(&self, w: &Permutation) -> LaurentQT {
        self.coeffs.get(w).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, w: Permutation, c: &LaurentQT) {
        let e = self.coeffs.entry(w.clone()).or_default();
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&w);
        }
    }

    pub fn add(&self, o: &HeckeElement) -> HeckeElement {
        let mut r = self.clone();
        for (w, c) in &o.coeffs {
            r.add_term(w.clone(), c);
        }
        r
    }

    pub fn scale(&self, c: &LaurentQT) -> HeckeElement {
        let mut r = Self::zero(self.n);
        for (w, x) in &self.coeffs {
            r.add_term(w.clone(), &(x * c));
        }
        r
    }

    /// Right multiplication by `T_{s_i}`.
    pub fn mul_generator(&self, i: usize) -> HeckeElement {
        let mut r = Self::zero(self.n);
        let one_minus_q2 = LaurentQT::from_terms(&[(1, 0, 0), (-1, 2, 0)]);
        let q2 = LaurentQT::q(2);
        for (w, c) in &self.coeffs {
            let ws = w.times_simple(i);
            if w.0[i] < w.0[i + 1] {
                r.add_term(ws, c);
            } else {
                r.add_term(w.clone(), &(c * &one_minus_q2));
                r.add_term(ws, &(c * &q2));
            }
        }
        r
    }

    /// Right multiplication by `T_{s_i}⁻¹ = q⁻² T_{s_i} + (1 - q⁻²)`.
    pub fn mul_generator_inverse(&self, i: usize) -> HeckeElement {
        let a = self.mul_generator(i).scale(&LaurentQT::q(-2));
        let b = self.scale(&LaurentQT::from_terms(&[(1, 0, 0), (-1, -2, 0)]));
        a.add(&b)
    }

    /// Right multiplication by a letter (`±(i+1)`).
    pub fn mul_letter(&self, letter: i32) -> HeckeElement {
        let i = letter.unsigned_abs() as usize - 1;
        if letter > 0 {
            self.mul_generator(i)
        } else {
            self.mul_generator_inverse(i)
        }
    }

    pub fn mul(&self, o: &HeckeElement) -> HeckeElement {
        let mut r = Self::zero(self.n);
        for (w, c) in &o.coeffs {
            let word = reduced_word(w);
            let mut x = self.clone();
            for i in word {
                x = x.mul_generator(i);
            }
            r = r.add(&x.scale(c));
        }
        r
    }
}

/// A reduced word `s_{i1} ... s_{ik}` for `w`, so `T_w = T_{i1} ... T_{ik}`.
pub fn reduced_word(w: &Permutation) -> Vec<usize> {
    // Sort w back to the identity by adjacent swaps; the swaps reversed build w.
    let mut v = w.0.clone();
    let mut swaps = Vec::new();
    loop {
        let Some(i) = (0..v.len().saturating_sub(1)).find(|&i| v[i] > v[i + 1]) else {
            break;
        };
        v.swap(i, i + 1);
        swaps.push(i);
    }
    swaps.reverse();
    swaps
}

impl fmt::Display for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let word: Vec<u8> = w.0.iter().map(|x| x + 1).collect();
            write!(f, "({c})*T{word:?}")?;
        }
        Ok(())
    }
}

/// The image of a braid word: `T_b = Π T_{letter}`, read from the bottom.
pub fn hecke_of_braid(b: &BraidWord) -> HeckeElement {
    b.letters()
        .iter()
        .fold(HeckeElement::identity(b.strands()), |acc, &l| {
            acc.mul_letter(l)
        })
}

/// Markov trace parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceParams {
    /// Ratio of `F` after adding a free strand.
    pub delta: RationalQT,
    /// Trace factor of a positive stabilization, `1/δ`.
    pub z: RationalQT,
}

/// `α = -t⁻¹q⁻¹`, the factor of a negative stabilization.
pub fn alpha() -> LaurentQT {
    LaurentQT::from_terms(&[(-1, -1, -1)])
}

/// Solves `δ z = 1` and `δ (q⁻² z + 1 - q⁻²) = α` for `(δ, z)`.
///
/// Substituting `z = 1/δ` turns the second equation into
/// `q⁻² + δ (1 - q⁻²) = α`.
pub fn solve_trace_params() -> TraceParams {
    let num = &alpha() - &LaurentQT::q(-2);
    let den = LaurentQT::from_terms(&[(1, 0, 0), (-1, -2, 0)]);
    let delta = RationalQT::new(num, den).expect("nonzero denominator");
    let z = delta.recip().expect("δ is nonzero");
    TraceParams { delta, z }
}

/// `F` of the unknot, `t⁻¹/(q⁻¹ - q)`.
pub fn unknot_value() -> RationalQT {
    RationalQT::new(
        LaurentQT::t(-1),
        LaurentQT::from_terms(&[(1, -1, 0), (-1, 1, 0)]),
    )
    .unwrap()
}

/// A polynomial in `z` with Laurent coefficients; entry `e` is the coefficient of `z^e`.
pub type ZPoly = Vec<LaurentQT>;

fn zpoly_add(acc: &mut ZPoly, p: &ZPoly, c: &LaurentQT, shift: usize) {
    if acc.len() < p.len() + shift {
        acc.resize(p.len() + shift, LaurentQT::zero());
    }
    for (e, x) in p.iter().enumerate() {
        acc[e + shift] += &(x * c);
    }
}

/// The normalized Ocneanu trace (`τ(1) = 1`) with memoized basis values.
#[derive(Clone, Debug, Default)]
pub struct OcneanuTrace {
    memo: BTreeMap<Permutation, ZPoly>,
}

impl OcneanuTrace {
    pub fn new() -> Self {
        Self::default()
    }

    /// `τ(x)` as a polynomial in `z`.
    pub fn trace(&mut self, x: &HeckeElement) -> ZPoly {
        let mut acc = ZPoly::new();
        for (w, c) in &x.coeffs {
            let t = self.basis_trace(w);
            zpoly_add(&mut acc, &t, c, 0);
        }
        acc
    }

    /// `τ(T_w)`: with the top value at 0-based position `k`, write
    /// `T_w = T_u T_{n-2} T_{n-3} ⋯ T_k` where `u` fixes the top value;
    /// then `τ(T_w) = z τ(T_u T_{n-3} ⋯ T_k)`.
    pub fn basis_trace(&mut self, w: &Permutation) -> ZPoly {
        if let Some(v) = self.memo.get(w) {
            return v.clone();
        }
        let n = w.len();
        let result = if n <= 1 {
            alloc::vec![LaurentQT::one()]
        } else {
            let top = (n - 1) as u8;
            let k = w.0.iter().position(|&x| x == top).unwrap();
            let mut u: Vec<u8> = w.0.clone();
            u.remove(k);
            let smaller = HeckeElement::basis(Permutation(u));
            if k == n - 1 {
                self.trace(&smaller)
            } else {
                let mut x = smaller;
                for i in (k..n - 2).rev() {
                    x = x.mul_generator(i);
                }
                let inner = self.trace(&x);
                let mut out = ZPoly::new();
                zpoly_add(&mut out, &inner, &LaurentQT::one(), 1);
                out
            }
        };
        self.memo.insert(w.clone(), result.clone());
        result
    }

    /// `τ` evaluated at the given `z`.
    pub fn evaluate(&mut self, x: &HeckeElement, params: &TraceParams) -> RationalQT {
        let p = self.trace(x);
        let mut acc = RationalQT::zero();
        let mut zp = RationalQT::one();
        for c in &p {
            acc = &acc + &(&zp * &RationalQT::from_laurent(c.clone()));
            zp = &zp * &params.z;
        }
        acc
    }
}

/// `F(b) = F(unknot) δ^(n-1) τ(T_b)`.
///
/// Since `δ z = 1`, a trace `Σ C_e z^e` contributes `Σ C_e δ^(n-1-e)`; this
/// is assembled over the common denominator `(1-q²)^n`.
pub fn homfly_f(b: &BraidWord) -> Result<RationalQT> {
    let n = b.strands();
    let tr = OcneanuTrace::new().trace(&hecke_of_braid(b));
    let dn = LaurentQT::from_terms(&[(1, 0, 0), (1, 1, -1)]);
    let dd = LaurentQT::from_terms(&[(1, 0, 0), (-1, 2, 0)]);
    let pow = |p: &LaurentQT, e: usize| (0..e).fold(LaurentQT::one(), |acc, _| &acc * p);
    let mut num = LaurentQT::zero();
    for (e, c) in tr.iter().enumerate() {
        debug_assert!(e < n);
        num += &(&(c * &pow(&dn, n - 1 - e)) * &pow(&dd, e));
    }
    // F(unknot) = t⁻¹ q / (1 - q²)
    let num = &num * &LaurentQT::monomial(rat(1), 1, -1);
    RationalQT::new(num, pow(&dd, n))
}

/// An element `even + A·odd` of the extension by `A` with `A² = α`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FTilde {
    pub even: RationalQT,
    pub odd: RationalQT,
}

impl FTilde {
    pub fn from_even(x: RationalQT) -> Self {
        FTilde {
            even: x,
            odd: RationalQT::zero(),
        }
    }

    /// Multiplication by `A`: `A (P + A Q) = α Q + A P`.
    pub fn mul_a(&self) -> FTilde {
        FTilde {
            even: &self.odd * &RationalQT::from_laurent(alpha()),
            odd: self.even.clone(),
        }
    }

    /// Multiplication by `A⁻¹ = A/α`.
    pub fn mul_a_inv(&self) -> FTilde {
        let inv = RationalQT::from_laurent(alpha()).recip().unwrap();
        let a = self.mul_a();
        FTilde {
            even: &a.even * &inv,
            odd: &a.odd * &inv,
        }
    }

    pub fn mul_a_pow(&self, e: i32) -> FTilde {
        (0..e.unsigned_abs()).fold(
            self.clone(),
            |x, _| if e > 0 { x.mul_a() } else { x.mul_a_inv() },
        )
    }

    pub fn scale(&self, c: &RationalQT) -> FTilde {
        FTilde {
            even: &self.even * c,
            odd: &self.odd * c,
        }
    }

    pub fn add(&self, o: &FTilde) -> FTilde {
        FTilde {
            even: &self.even + &o.even,
            odd: &self.odd + &o.odd,
        }
    }

    pub fn sub(&self, o: &FTilde) -> FTilde {
        FTilde {
            even: &self.even - &o.even,
            odd: &self.odd - &o.odd,
        }
    }
}

impl fmt::Display for FTilde {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.odd.is_zero() {
            write!(f, "{}", self.even)
        } else if self.even.is_zero() {
            write!(f, "A*{}", self.odd)
        } else {
            write!(f, "{} + A*{}", self.even, self.odd)
        }
    }
}

/// `F̃(b) = A^(writhe - n + 1) F(b)`, invariant under all Markov moves.
pub fn homfly_f_tilde(b: &BraidWord) -> Result<FTilde> {
    let e = b.writhe() - b.strands() as i32 + 1;
    Ok(FTilde::from_even(homfly_f(b)?).mul_a_pow(e))
}
