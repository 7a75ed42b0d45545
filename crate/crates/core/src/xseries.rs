//! Bivariate truncated series: polynomials in X whose coefficients are
//! [`QSeries`]. X tracks the deformation direction, q the expansion variable.
//!
//! Stored densely as `coeffs[k]` = coefficient of X^k, every entry sharing
//! one q-truncation bound. `x_trunc` = `coeffs.len()`: exact for X-degrees
//! strictly below it.

use std::ops::{Add, Mul, Sub};

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::series::{QSeries, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XSeries {
    coeffs: Vec<QSeries>,
}

impl XSeries {
    pub fn zero(x_trunc: usize, trunc_x2: i64) -> Self {
        XSeries {
            coeffs: vec![QSeries::zero(trunc_x2); x_trunc],
        }
    }

    pub fn one(x_trunc: usize, trunc_x2: i64) -> Self {
        let mut s = Self::zero(x_trunc, trunc_x2);
        s.coeffs[0] = QSeries::one(trunc_x2);
        s
    }

    pub fn from_q_coeffs(coeffs: Vec<QSeries>) -> Self {
        assert!(!coeffs.is_empty(), "need at least the X^0 coefficient");
        let t = coeffs[0].trunc_x2();
        assert!(
            coeffs.iter().all(|c| c.trunc_x2() == t),
            "all X-coefficients must share one q-truncation"
        );
        XSeries { coeffs }
    }

    pub fn x_trunc(&self) -> usize {
        self.coeffs.len()
    }

    pub fn trunc_x2(&self) -> i64 {
        self.coeffs[0].trunc_x2()
    }

    /// Coefficient of X^k as a q-series. Panics at or beyond the X-truncation.
    pub fn q_coeff(&self, k: usize) -> &QSeries {
        assert!(
            k < self.coeffs.len(),
            "coefficient of X^{k} requested beyond truncation {}",
            self.coeffs.len()
        );
        &self.coeffs[k]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(QSeries::is_zero)
    }

    fn aligned(a: &XSeries, b: &XSeries) -> (usize, i64) {
        (
            a.coeffs.len().min(b.coeffs.len()),
            a.trunc_x2().min(b.trunc_x2()),
        )
    }

    /// X^0 q^0 coefficient; everything formal-log-shaped keys off it.
    fn constant_term(&self) -> Rat {
        self.coeffs[0].coeff_x2(0)
    }

    /// Formal logarithm. Requires constant term exactly 1: write the series
    /// as 1 + u with u vanishing at X^0 q^0, then
    ///   log(1 + u) = u - u^2/2 + u^3/3 - ...
    /// Each power of u raises the minimum total (X, q)-degree, so the sum
    /// terminates once m exceeds x_trunc + trunc_x2.
    pub fn log(&self) -> Result<XSeries> {
        if !self.constant_term().is_one() {
            return Err(Error::NonUnitLeadingCoefficient {
                found: self.constant_term().to_string(),
            });
        }
        let mut u = self.clone();
        u.coeffs[0] = &u.coeffs[0] - &QSeries::one(self.trunc_x2());
        let mut acc = XSeries::zero(self.x_trunc(), self.trunc_x2());
        let mut power = u.clone();
        let mut m: i64 = 1;
        while !power.is_zero() {
            let sign = if m % 2 == 1 { 1 } else { -1 };
            let term = power.scaled(&Rat::new(sign.into(), m.into()));
            acc = &acc + &term;
            power = &power * &u;
            m += 1;
        }
        Ok(acc)
    }

    /// Formal exponential of a series vanishing at X^0 q^0:
    ///   exp(u) = sum_m u^m / m!.
    /// Independent of [`XSeries::log`]; the two are round-trip checks on
    /// each other.
    pub fn exp(&self) -> Result<XSeries> {
        if !self.constant_term().is_zero() {
            return Err(Error::InvalidArgument {
                name: "series",
                reason: format!(
                    "exponential needs a vanishing constant term, got {}",
                    self.constant_term()
                ),
            });
        }
        let mut acc = XSeries::one(self.x_trunc(), self.trunc_x2());
        let mut power = self.clone();
        let mut factorial = Rat::one();
        let mut m: i64 = 1;
        while !power.is_zero() {
            factorial = factorial * Rat::from_integer(m.into());
            acc = &acc + &power.scaled(&(Rat::one() / &factorial));
            power = &power * self;
            m += 1;
        }
        Ok(acc)
    }

    pub fn scaled(&self, c: &Rat) -> Self {
        XSeries {
            coeffs: self.coeffs.iter().map(|q| q.scaled(c)).collect(),
        }
    }

    /// Multiply every X-coefficient by one q-series factor.
    pub fn scale_q(&self, factor: &QSeries) -> Self {
        XSeries {
            coeffs: self.coeffs.iter().map(|q| q * factor).collect(),
        }
    }
}

impl Add for &XSeries {
    type Output = XSeries;
    fn add(self, rhs: &XSeries) -> XSeries {
        let (xt, qt) = XSeries::aligned(self, rhs);
        let coeffs = (0..xt)
            .map(|k| {
                &self.coeffs[k].truncated(qt) + &rhs.coeffs[k].truncated(qt)
            })
            .collect();
        XSeries { coeffs }
    }
}

impl Sub for &XSeries {
    type Output = XSeries;
    fn sub(self, rhs: &XSeries) -> XSeries {
        let (xt, qt) = XSeries::aligned(self, rhs);
        let coeffs = (0..xt)
            .map(|k| {
                &self.coeffs[k].truncated(qt) - &rhs.coeffs[k].truncated(qt)
            })
            .collect();
        XSeries { coeffs }
    }
}

impl Mul for &XSeries {
    type Output = XSeries;
    fn mul(self, rhs: &XSeries) -> XSeries {
        let (xt, qt) = XSeries::aligned(self, rhs);
        let mut coeffs = vec![QSeries::zero(qt); xt];
        for (i, a) in self.coeffs.iter().enumerate().take(xt) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(xt - i) {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        XSeries { coeffs }
    }
}
