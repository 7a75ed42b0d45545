//! Laurent polynomials in an auxiliary variable z with series coefficients,
//! kept inside a finite degree band.
//!
//! The triple-product expansions built in [`crate::forms`] multiply factors
//! of the shape (1 - u z) and (1 - u z^-1) where every u carries a q-factor
//! q^(n/2) with the odd indices n all distinct. A term of z-degree c must use
//! |c| more factors of one sign than the other, so its q-exponent is at least
//! the sum of the |c| smallest distinct odd half-integers:
//!   (1 + 3 + ... + (2|c| - 1)) / 2 = c^2 / 2.
//! In doubled-exponent units that is c^2. Hence any z-degree with
//! c^2 >= trunc_x2 only carries terms at or beyond the q-truncation and can
//! be dropped. The bound does not depend on which distinct odd indices have
//! been multiplied in so far, so clipping is already safe for every partial
//! product, not just the full one.
//!
//! [`band_for`] returns the smallest b with b^2 >= trunc_x2; degrees with
//! |c| > b are clipped.

use std::collections::BTreeMap;

use crate::series::QSeries;
use crate::xseries::XSeries;

/// Coefficient ring for [`ZetaSeries`]. No zero constructor on purpose:
/// truncation parameters travel with a zero template held by the container.
pub trait BandCoeff: Clone + PartialEq {
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn is_zero(&self) -> bool;
}

impl BandCoeff for QSeries {
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn is_zero(&self) -> bool {
        QSeries::is_zero(self)
    }
}

impl BandCoeff for XSeries {
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn is_zero(&self) -> bool {
        XSeries::is_zero(self)
    }
}

/// Smallest b >= 0 with b * b >= trunc_x2.
pub fn band_for(trunc_x2: i64) -> i64 {
    let mut b = 0i64;
    while b * b < trunc_x2 {
        b += 1;
    }
    b
}

#[derive(Clone, Debug, PartialEq)]
pub struct ZetaSeries<C: BandCoeff> {
    zero: C,
    band: i64,
    coeffs: BTreeMap<i64, C>,
}

pub type ZetaLaurent = ZetaSeries<QSeries>;

impl<C: BandCoeff> ZetaSeries<C> {
    /// `zero` is a zero coefficient carrying the truncation parameters.
    pub fn new(zero: C, band: i64) -> Self {
        assert!(zero.is_zero(), "template must be a zero coefficient");
        assert!(band >= 0);
        ZetaSeries { zero, band, coeffs: BTreeMap::new() }
    }

    pub fn band(&self) -> i64 {
        self.band
    }

    /// Coefficient of z^degree. Degrees outside the band are zero by the
    /// clipping bound above.
    pub fn coefficient(&self, degree: i64) -> C {
        self.coeffs
            .get(&degree)
            .cloned()
            .unwrap_or_else(|| self.zero.clone())
    }

    pub fn set(&mut self, degree: i64, value: C) {
        assert!(degree.abs() <= self.band, "degree {degree} outside band");
        if value.is_zero() {
            self.coeffs.remove(&degree);
        } else {
            self.coeffs.insert(degree, value);
        }
    }

    /// Multiply by (1 - u z^shift), shift = +1 or -1, clipping to the band.
    pub fn mul_binomial(&self, u: &C, shift: i64) -> Self {
        assert!(shift == 1 || shift == -1);
        let mut out = Self::new(self.zero.clone(), self.band);
        for c in -self.band..=self.band {
            let mut v = self.coefficient(c);
            let lower = self.coefficient(c - shift);
            if !lower.is_zero() {
                v = v.sub(&u.mul(&lower));
            }
            if !v.is_zero() {
                out.coeffs.insert(c, v);
            }
        }
        out
    }

    /// Full convolution product; the result band is the sum of the operand
    /// bands, so nothing is clipped. Cross-check for [`Self::mul_binomial`].
    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::new(self.zero.clone(), self.band + rhs.band);
        for (&ca, va) in &self.coeffs {
            for (&cb, vb) in &rhs.coeffs {
                let c = ca + cb;
                let cur = out.coefficient(c);
                let next = cur.add(&va.mul(vb));
                out.set(c, next);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rat;

    fn zl(trunc_x2: i64, band: i64) -> ZetaLaurent {
        ZetaLaurent::new(QSeries::zero(trunc_x2), band)
    }

    #[test]
    fn band_bounds() {
        assert_eq!(band_for(1), 1);
        assert_eq!(band_for(4), 2);
        assert_eq!(band_for(5), 3);
        assert_eq!(band_for(60), 8);
        for t in 1..200 {
            let b = band_for(t);
            assert!(b * b >= t && (b - 1) * (b - 1) < t);
        }
    }

    #[test]
    fn antisymmetric_combination_has_zero_center() {
        let mut s = zl(10, 2);
        s.set(1, QSeries::one(10));
        s.set(-1, QSeries::one(10));
        assert!(s.coefficient(0).is_zero());
        assert_eq!(s.coefficient(1), QSeries::one(10));
    }

    #[test]
    fn center_coefficient_reads_back() {
        let mut s = zl(10, 1);
        s.set(0, QSeries::monomial(rat(3), 4, 10));
        assert_eq!(s.coefficient(0), QSeries::monomial(rat(3), 4, 10));
    }

    #[test]
    fn conjugate_binomial_pair_center_is_one_plus_q() {
        // (1 - q^(1/2) z)(1 - q^(1/2) z^-1) has center coefficient 1 + q
        let u = QSeries::monomial(rat(1), 1, 10);
        let mut s = zl(10, 4);
        s.set(0, QSeries::one(10));
        let s = s.mul_binomial(&u, 1).mul_binomial(&u, -1);
        let expect = QSeries::from_coeffs([(0, rat(1)), (2, rat(1))], 10);
        assert_eq!(s.coefficient(0), expect);
        assert_eq!(s.coefficient(1), QSeries::monomial(rat(-1), 1, 10));
        assert_eq!(s.coefficient(-1), QSeries::monomial(rat(-1), 1, 10));
    }

    #[test]
    fn mul_binomial_agrees_with_full_convolution() {
        let trunc = 16;
        let us: Vec<QSeries> = (0..4)
            .map(|r| QSeries::monomial(rat(r - 2), 2 * r as i64 + 1, trunc))
            .collect();
        let mut clipped = zl(trunc, band_for(trunc));
        clipped.set(0, QSeries::one(trunc));
        let mut full = clipped.clone();
        for (i, u) in us.iter().enumerate() {
            let shift = if i % 2 == 0 { 1 } else { -1 };
            clipped = clipped.mul_binomial(u, shift);
            let mut factor = zl(trunc, 1);
            factor.set(0, QSeries::one(trunc));
            factor.set(shift, -u);
            full = full.mul(&factor);
        }
        for c in -2..=2 {
            assert_eq!(clipped.coefficient(c), full.coefficient(c), "degree {c}");
        }
    }
}
