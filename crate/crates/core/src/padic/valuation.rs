use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Sub};

use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};

/// A value of the normalized valuation `v_p`, extended to algebraic
/// extensions: an exact rational, or `+inf` for zero.
///
/// `Finite` sorts before `Infinity`, so `min`/`max` behave as expected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(Rational64),
    Infinity,
}

impl Valuation {
    pub const ZERO: Valuation = Valuation::Finite(Rational64::new_raw(0, 1));

    pub fn int(n: i64) -> Self {
        Valuation::Finite(Rational64::from_integer(n))
    }

    pub fn frac(num: i64, den: i64) -> Self {
        Valuation::Finite(Rational64::new(num, den))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Valuation::Infinity)
    }

    pub fn finite(&self) -> Option<Rational64> {
        match self {
            Valuation::Finite(q) => Some(*q),
            Valuation::Infinity => None,
        }
    }

    pub fn is_integer(&self) -> bool {
        matches!(self, Valuation::Finite(q) if q.is_integer())
    }

    /// The integer value, if this is a finite integer.
    pub fn to_integer(&self) -> Option<i64> {
        match self {
            Valuation::Finite(q) if q.is_integer() => q.to_integer().to_i64(),
            _ => None,
        }
    }

    /// True if the value lies in `(1/e)Z` (or is infinite).
    pub fn has_denominator_dividing(&self, e: usize) -> bool {
        match self {
            Valuation::Finite(q) => (e as i64) % q.denom() == 0,
            Valuation::Infinity => true,
        }
    }
}

impl From<Rational64> for Valuation {
    fn from(q: Rational64) -> Self {
        Valuation::Finite(q)
    }
}

impl Add for Valuation {
    type Output = Valuation;

    fn add(self, rhs: Self) -> Self {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinity,
        }
    }
}

impl Add<Rational64> for Valuation {
    type Output = Valuation;

    fn add(self, rhs: Rational64) -> Self {
        self + Valuation::Finite(rhs)
    }
}

/// Subtraction of a finite amount; `inf - x = inf`.
impl Sub<Rational64> for Valuation {
    type Output = Valuation;

    fn sub(self, rhs: Rational64) -> Self {
        match self {
            Valuation::Finite(a) => Valuation::Finite(a - rhs),
            Valuation::Infinity => Valuation::Infinity,
        }
    }
}

impl PartialEq<Rational64> for Valuation {
    fn eq(&self, other: &Rational64) -> bool {
        matches!(self, Valuation::Finite(q) if q == other)
    }
}

impl PartialOrd<Rational64> for Valuation {
    fn partial_cmp(&self, other: &Rational64) -> Option<Ordering> {
        Some(match self {
            Valuation::Finite(q) => q.cmp(other),
            Valuation::Infinity => Ordering::Greater,
        })
    }
}

/// Exact rendering: `"inf"`, `"3"` or `"5/2"`.
impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(q) => write!(f, "{}", q),
            Valuation::Infinity => f.write_str("inf"),
        }
    }
}

impl Default for Valuation {
    fn default() -> Self {
        Valuation::Finite(Rational64::zero())
    }
}

/// A valuation read off a finite-precision representative.
///
/// `AtLeast(n)` is the certificate returned when the representative is zero
/// at its precision: the true value is `>= n` and nothing more is known.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Certified {
    Exact(Rational64),
    AtLeast(Rational64),
}

impl Certified {
    pub fn exact(&self) -> Option<Rational64> {
        match self {
            Certified::Exact(q) => Some(*q),
            Certified::AtLeast(_) => None,
        }
    }

    /// Lower bound on the true valuation (exact when certified).
    pub fn lower_bound(&self) -> Rational64 {
        match self {
            Certified::Exact(q) | Certified::AtLeast(q) => *q,
        }
    }

    /// Decides `value >= bound`, or `None` if the certificate cannot tell.
    pub fn at_least(&self, bound: Rational64) -> Option<bool> {
        match self {
            Certified::Exact(q) => Some(*q >= bound),
            Certified::AtLeast(q) if *q >= bound => Some(true),
            Certified::AtLeast(_) => None,
        }
    }
}

impl fmt::Display for Certified {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certified::Exact(q) => write!(f, "{}", q),
            Certified::AtLeast(q) => write!(f, ">={}", q),
        }
    }
}
