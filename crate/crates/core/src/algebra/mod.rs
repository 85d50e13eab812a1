//! Exact rational scalars, bigraded polynomial rings and (q,t)-Laurent series.

mod laurent;
mod poly;

pub use laurent::{qt_expand, LaurentQT, QSeries, RationalQT};
pub use poly::{Monomial, Polynomial, Ring, Variable};

use core::fmt;
use core::ops::{Add, AddAssign, Neg, Sub};

/// Arbitrary precision rational numbers.
pub type Rational = num_rational::BigRational;

/// Builds a rational from an integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Builds the fraction `n/d`.
pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// A `(k, l)` pair: `k` is the a-degree (t-grading), `l` the x-degree (q-grading).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bidegree {
    pub k: i32,
    pub l: i32,
}

impl Bidegree {
    pub const ZERO: Bidegree = Bidegree { k: 0, l: 0 };

    pub const fn new(k: i32, l: i32) -> Self {
        Bidegree { k, l }
    }

    pub fn scale(self, n: i32) -> Self {
        Bidegree::new(self.k * n, self.l * n)
    }
}

impl Add for Bidegree {
    type Output = Bidegree;
    fn add(self, o: Bidegree) -> Bidegree {
        Bidegree::new(self.k + o.k, self.l + o.l)
    }
}

impl AddAssign for Bidegree {
    fn add_assign(&mut self, o: Bidegree) {
        self.k += o.k;
        self.l += o.l;
    }
}

impl Sub for Bidegree {
    type Output = Bidegree;
    fn sub(self, o: Bidegree) -> Bidegree {
        Bidegree::new(self.k - o.k, self.l - o.l)
    }
}

impl Neg for Bidegree {
    type Output = Bidegree;
    fn neg(self) -> Bidegree {
        Bidegree::new(-self.k, -self.l)
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.k, self.l)
    }
}
