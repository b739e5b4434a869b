//! Arbitrary-precision reals with a fixed working precision.
//!
//! Thin wrapper over `dashu_float::FBig` in base 2 with round-half-even.
//! Every value carries its precision and binary operations round to the larger
//! of the operands' precisions, so a computation seeded at `p` bits stays at
//! `p` bits.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;

use crate::error::{Error, Result};

type Inner = FBig<HalfEven, 2>;

pub const MIN_PRECISION: usize = 64;

#[derive(Clone, PartialEq)]
pub struct BigReal(Inner);

impl BigReal {
    pub fn from_i64(v: i64, precision: usize) -> Self {
        BigReal(Inner::from(v).with_precision(precision).value())
    }

    pub fn from_u128(v: u128, precision: usize) -> Self {
        BigReal(Inner::from(v).with_precision(precision).value())
    }

    pub fn from_f64(v: f64, precision: usize) -> Result<Self> {
        let f = Inner::try_from(v).map_err(|_| Error::invalid("value", format!("{v} is not a finite real")))?;
        if !v.is_finite() {
            return Err(Error::invalid("value", format!("{v} is not a finite real")));
        }
        Ok(BigReal(f.with_precision(precision).value()))
    }

    pub fn zero(precision: usize) -> Self {
        Self::from_i64(0, precision)
    }

    pub fn one(precision: usize) -> Self {
        Self::from_i64(1, precision)
    }

    /// `2^e`.
    pub fn pow2(e: isize, precision: usize) -> Self {
        BigReal(Inner::from_parts(1.into(), e).with_precision(precision).value())
    }

    pub fn precision(&self) -> usize {
        self.0.precision()
    }

    /// Rounds to a new working precision.
    pub fn with_precision(&self, precision: usize) -> Self {
        BigReal(self.0.clone().with_precision(precision).value())
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().value()
    }

    pub fn exp(&self) -> Self {
        BigReal(self.0.exp())
    }

    pub fn is_zero(&self) -> bool {
        self.0.repr().is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0 < Inner::ZERO
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> Self {
        &Self::one(self.precision()) / self
    }

    /// `self * k` for a small integer `k`.
    pub fn mul_i64(&self, k: i64) -> Self {
        self * &Self::from_i64(k, self.precision())
    }

    pub fn div_i64(&self, k: i64) -> Self {
        self / &Self::from_i64(k, self.precision())
    }

    /// Number of leading bits on which `self` agrees with `reference`,
    /// `-log2(|self - reference| / |reference|)`, capped at `cap`.
    pub fn agreeing_bits(&self, reference: &BigReal, cap: f64) -> f64 {
        let diff = (self - reference).abs();
        if diff.is_zero() {
            return cap;
        }
        if reference.is_zero() {
            return 0.0;
        }
        let rel = (&diff / &reference.abs()).to_f64();
        if rel == 0.0 {
            cap
        } else {
            (-rel.log2()).min(cap)
        }
    }
}

impl fmt::Debug for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BigReal({:e} @ {} bits)", self.to_f64(), self.precision())
    }
}

impl fmt::Display for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl Ord for BigReal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }
}

impl PartialOrd for BigReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Eq for BigReal {}

macro_rules! binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&BigReal> for &BigReal {
            type Output = BigReal;
            fn $method(self, rhs: &BigReal) -> BigReal {
                BigReal($trait::$method(&self.0, &rhs.0))
            }
        }
        impl $trait<BigReal> for BigReal {
            type Output = BigReal;
            fn $method(self, rhs: BigReal) -> BigReal {
                BigReal($trait::$method(self.0, rhs.0))
            }
        }
        impl $trait<&BigReal> for BigReal {
            type Output = BigReal;
            fn $method(self, rhs: &BigReal) -> BigReal {
                BigReal($trait::$method(self.0, &rhs.0))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl Neg for &BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        BigReal(-self.0.clone())
    }
}

impl Neg for BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        BigReal(-self.0)
    }
}
