//! Truncated formal power series in q with exact rational coefficients.
//!
//! Exponents live on the half-integer grid, so an exponent e is stored as the
//! integer 2e (`exp_x2`). A series carries `trunc_x2`: it is exact for every
//! exponent strictly below `trunc_x2 / 2` and says nothing beyond.
//!
//! Invariants maintained by every constructor and operation:
//! - all stored keys k satisfy 0 <= k < trunc_x2,
//! - no stored coefficient is zero (querying an absent exponent returns 0),
//! - arithmetic results carry trunc_x2 = min of the operands' bounds.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

/// Exact rational from a machine integer.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    trunc_x2: i64,
    coeffs: BTreeMap<i64, Rat>,
}

impl QSeries {
    pub fn zero(trunc_x2: i64) -> Self {
        assert!(trunc_x2 > 0, "truncation bound must be positive");
        QSeries { trunc_x2, coeffs: BTreeMap::new() }
    }

    pub fn one(trunc_x2: i64) -> Self {
        Self::monomial(rat(1), 0, trunc_x2)
    }

    /// c * q^(exp_x2 / 2), or the zero series if the exponent is out of range.
    pub fn monomial(c: Rat, exp_x2: i64, trunc_x2: i64) -> Self {
        assert!(exp_x2 >= 0, "exponents must be nonnegative");
        let mut s = Self::zero(trunc_x2);
        if exp_x2 < trunc_x2 && !c.is_zero() {
            s.coeffs.insert(exp_x2, c);
        }
        s
    }

    pub fn from_coeffs<I>(pairs: I, trunc_x2: i64) -> Self
    where
        I: IntoIterator<Item = (i64, Rat)>,
    {
        let mut s = Self::zero(trunc_x2);
        for (k, v) in pairs {
            assert!(k >= 0, "exponents must be nonnegative");
            if k < trunc_x2 && !v.is_zero() {
                let prev = s.coeffs.insert(k, v);
                assert!(prev.is_none(), "duplicate exponent {k}");
            }
        }
        s
    }

    /// Integer-coefficient series on the whole-exponent grid.
    pub fn from_integers<I>(pairs: I, order: i64) -> Self
    where
        I: IntoIterator<Item = (i64, BigInt)>,
    {
        Self::from_coeffs(
            pairs.into_iter().map(|(e, n)| (2 * e, Rat::from_integer(n))),
            2 * order,
        )
    }

    pub fn trunc_x2(&self) -> i64 {
        self.trunc_x2
    }

    /// Coefficient of q^(exp_x2 / 2). Panics for exponents at or beyond the
    /// truncation bound: those coefficients are unknown, not zero.
    pub fn coeff_x2(&self, exp_x2: i64) -> Rat {
        assert!(
            exp_x2 < self.trunc_x2,
            "coefficient of q^{}/2 requested beyond truncation {}",
            exp_x2,
            self.trunc_x2
        );
        self.coeffs.get(&exp_x2).cloned().unwrap_or_else(Rat::zero)
    }

    /// Coefficient of q^exp for a whole exponent.
    pub fn coeff(&self, exp: i64) -> Rat {
        self.coeff_x2(2 * exp)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Smallest stored exponent (doubled), if any coefficient is nonzero.
    pub fn min_exp_x2(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &Rat)> + '_ {
        self.coeffs.iter().map(|(&k, v)| (k, v))
    }

    pub fn scaled(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.trunc_x2);
        }
        let coeffs = self.coeffs.iter().map(|(&k, v)| (k, v * c)).collect();
        QSeries { trunc_x2: self.trunc_x2, coeffs }
    }

    /// Same series viewed at a lower (or equal) truncation bound.
    pub fn truncated(&self, trunc_x2: i64) -> Self {
        assert!(trunc_x2 > 0 && trunc_x2 <= self.trunc_x2);
        let coeffs = self
            .coeffs
            .range(..trunc_x2)
            .map(|(&k, v)| (k, v.clone()))
            .collect();
        QSeries { trunc_x2, coeffs }
    }

    /// The coefficients as exact integers on the whole-exponent grid.
    /// None if any coefficient is fractional or sits on a half exponent.
    pub fn to_integer_map(&self) -> Option<BTreeMap<i64, BigInt>> {
        let mut out = BTreeMap::new();
        for (&k, v) in &self.coeffs {
            if k % 2 != 0 || !v.is_integer() {
                return None;
            }
            out.insert(k / 2, v.to_integer());
        }
        Some(out)
    }
}

fn add_impl(a: &QSeries, b: &QSeries, negate_b: bool) -> QSeries {
    let trunc_x2 = a.trunc_x2.min(b.trunc_x2);
    let mut coeffs: BTreeMap<i64, Rat> = a
        .coeffs
        .range(..trunc_x2)
        .map(|(&k, v)| (k, v.clone()))
        .collect();
    for (&k, v) in b.coeffs.range(..trunc_x2) {
        let entry = coeffs.entry(k).or_insert_with(Rat::zero);
        if negate_b {
            *entry -= v;
        } else {
            *entry += v;
        }
        if entry.is_zero() {
            coeffs.remove(&k);
        }
    }
    QSeries { trunc_x2, coeffs }
}

impl Add for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        add_impl(self, rhs, false)
    }
}

impl Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        add_impl(self, rhs, true)
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        let coeffs = self.coeffs.iter().map(|(&k, v)| (k, -v)).collect();
        QSeries { trunc_x2: self.trunc_x2, coeffs }
    }
}

impl Mul for &QSeries {
    type Output = QSeries;

    /// Cauchy product, exact, truncated at the min of the operand bounds.
    /// Doubled exponents add directly: 2e_a + 2e_b = 2(e_a + e_b).
    fn mul(self, rhs: &QSeries) -> QSeries {
        let trunc_x2 = self.trunc_x2.min(rhs.trunc_x2);
        let mut coeffs: BTreeMap<i64, Rat> = BTreeMap::new();
        for (&ka, va) in &self.coeffs {
            if ka >= trunc_x2 {
                break;
            }
            for (&kb, vb) in &rhs.coeffs {
                if ka + kb >= trunc_x2 {
                    break;
                }
                let entry = coeffs.entry(ka + kb).or_insert_with(Rat::zero);
                *entry += va * vb;
            }
        }
        coeffs.retain(|_, v| !v.is_zero());
        QSeries { trunc_x2, coeffs }
    }
}

/// prod_{m >= 1} (1 - q^m), truncated below `order`. Factors with m >= order
/// contribute nothing below the truncation, so the product is finite.
pub fn eta_like_product(order: i64) -> Result<QSeries> {
    if order <= 0 {
        return Err(Error::InvalidArgument {
            name: "order",
            reason: format!("must be positive, got {order}"),
        });
    }
    let n = order as usize;
    let mut c: Vec<BigInt> = vec![BigInt::zero(); n];
    c[0] = BigInt::one();
    for m in 1..n {
        for e in (m..n).rev() {
            let lower = c[e - m].clone();
            c[e] -= lower;
        }
    }
    Ok(QSeries::from_integers(
        c.into_iter().enumerate().map(|(e, v)| (e as i64, v)),
        order,
    ))
}

impl fmt::Display for QSeries {
    /// Paper-style expansion line, e.g. `q^2 + 80q^3 + ... + O(q^9)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn power(exp_x2: i64) -> String {
            match exp_x2 {
                0 => String::new(),
                2 => "q".to_string(),
                e if e % 2 == 0 => format!("q^{}", e / 2),
                e => format!("q^({e}/2)"),
            }
        }
        let mut first = true;
        for (&k, v) in &self.coeffs {
            let sign_negative = v.is_negative();
            if first {
                if sign_negative {
                    write!(f, "-")?;
                }
                first = false;
            } else if sign_negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = v.abs();
            let pow = power(k);
            if pow.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{pow}")?;
            } else if mag.is_integer() {
                write!(f, "{}{pow}", mag.numer())?;
            } else {
                write!(f, "({mag}){pow}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        if self.trunc_x2 % 2 == 0 {
            write!(f, " + O(q^{})", self.trunc_x2 / 2)
        } else {
            write!(f, " + O(q^({}/2))", self.trunc_x2)
        }
    }
}
