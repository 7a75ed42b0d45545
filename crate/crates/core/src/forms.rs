//! The weighted partition series Ā_n and A_n, the deformed theta kernel
//! Θ₀(X, q) they assemble into, and the log-coefficients F_g.
//!
//! Two genuinely independent construction routes live here on purpose:
//!
//! - the partition route: Ā_n = ½ ∏_{m>0}(1 - q^m) · Σ_d S_{2n}(d) q^d with
//!   S_k the balance-weight power sums from [`crate::partitions`];
//! - the product route ([`theta0_direct`]): expand the deformed triple
//!   product factor by factor, tracking the auxiliary Laurent variable in a
//!   banded window, and read off its center coefficient.
//!
//! Their agreement is the content of the underlying identity, so the tests
//! cross-check one against the other rather than sharing code.

use num::{BigInt, Integer, One, Zero};

use crate::error::{Error, Result};
use crate::partitions::{partition_counts, power_sum_sweep};
use crate::series::{eta_like_product, rat, QSeries, Rat};
use crate::xseries::XSeries;
use crate::zeta::{band_for, ZetaSeries};

/// Normalized form of index n: integer coefficients, gcd 1, leading term q².
#[derive(Clone, Debug)]
pub struct ABarForm {
    pub n: u32,
    pub series: QSeries,
}

impl ABarForm {
    pub fn weight(&self) -> u32 {
        6 * self.n
    }
}

/// Unnormalized form: A_0 = 1, A_n = (2/(2n)!) Ā_n for n >= 1.
#[derive(Clone, Debug)]
pub struct AForm {
    pub n: u32,
    pub series: QSeries,
}

fn factorial(m: u32) -> BigInt {
    (1..=m).fold(BigInt::one(), |acc, i| acc * i)
}

fn require_order(order: i64, at_least: i64) -> Result<()> {
    if order < at_least {
        return Err(Error::InvalidArgument {
            name: "order",
            reason: format!("must be at least {at_least}, got {order}"),
        });
    }
    Ok(())
}

/// Ā_n by the partition route. The power sums S_{2n}(d) are all even, so
/// the half stays integral; the q² coefficient must come out exactly 1,
/// which also certifies that the retained coefficients are coprime.
pub fn abar(n: u32, order: i64) -> Result<ABarForm> {
    if n == 0 {
        return Err(Error::InvalidArgument {
            name: "n",
            reason: "normalized forms start at n = 1; index 0 is the constant handled by a_form".into(),
        });
    }
    require_order(order, 3)?;
    let sums = power_sum_sweep(order as u32 - 1, &[2 * n]).pop().unwrap();
    let weighted = QSeries::from_integers(
        sums.into_iter().enumerate().map(|(d, s)| {
            assert!(s.is_even(), "S_{}({d}) must be even", 2 * n);
            (d as i64, s / 2)
        }),
        order,
    );
    let series = &eta_like_product(order)? * &weighted;
    assert!(series.coeff(0).is_zero() && series.coeff(1).is_zero());
    assert!(series.coeff(2).is_one(), "q^2 coefficient must be 1");
    Ok(ABarForm { n, series })
}

/// A_n by the partition route. A_0 multiplies the eta-like product against
/// the partition-count generating series (pentagonal recurrence, no
/// enumeration) and telescopes to 1 exactly.
pub fn a_form(n: u32, order: i64) -> Result<AForm> {
    require_order(order, 1)?;
    if n == 0 {
        let counts = QSeries::from_integers(
            partition_counts(order as u32 - 1)
                .into_iter()
                .enumerate()
                .map(|(d, p)| (d as i64, p)),
            order,
        );
        let series = &eta_like_product(order)? * &counts;
        assert_eq!(series, QSeries::one(2 * order), "A_0 must telescope to 1");
        return Ok(AForm { n: 0, series });
    }
    let ab = abar(n, order.max(3))?;
    let scale = Rat::new(2.into(), factorial(2 * n));
    Ok(AForm {
        n,
        series: ab.series.scaled(&scale).truncated(2 * order),
    })
}

/// Θ₀ through X^x_trunc by the product route: expand
///   ∏_{m>0}(1 - q^m) · ∏_{n odd>0}(1 - e^{n²X/8} q^{n/2} z)(1 - e^{-n²X/8} q^{n/2} z^{-1})
/// factor by factor and take the z⁰ coefficient. Factors with m >= order or
/// n/2 >= order differ from 1 only at or beyond the q-truncation, so the
/// products cut there; z-degrees are clipped to the band justified in
/// [`crate::zeta`].
pub fn theta0_direct(x_trunc: usize, order: i64) -> Result<XSeries> {
    if x_trunc % 2 != 0 {
        return Err(Error::InvalidArgument {
            name: "x_trunc",
            reason: format!("the kernel is even in X; expected an even bound, got {x_trunc}"),
        });
    }
    require_order(order, 1)?;
    let t2 = 2 * order;
    let xlen = x_trunc + 1;
    let mut state = ZetaSeries::new(XSeries::zero(xlen, t2), band_for(t2));
    state.set(0, XSeries::one(xlen, t2));
    let mut n = 1i64;
    while n < t2 {
        // e^{±n²X/8} q^{n/2}: X^k coefficient is (±n²/8)^k / k! times q^{n/2}
        let base = Rat::new((n * n).into(), 8.into());
        let mut plus = Vec::with_capacity(xlen);
        let mut minus = Vec::with_capacity(xlen);
        let mut c = Rat::one();
        for k in 0..xlen {
            if k > 0 {
                c = c * &base / rat(k as i64);
            }
            plus.push(QSeries::monomial(c.clone(), n, t2));
            let signed = if k % 2 == 1 { -c.clone() } else { c.clone() };
            minus.push(QSeries::monomial(signed, n, t2));
        }
        state = state
            .mul_binomial(&XSeries::from_q_coeffs(plus), 1)
            .mul_binomial(&XSeries::from_q_coeffs(minus), -1);
        n += 2;
    }
    Ok(state.coefficient(0).scale_q(&eta_like_product(order)?))
}

/// Θ₀ assembled from the partition route: Σ_n A_n(q) X^{2n}.
pub fn theta0_partition(x_trunc: usize, order: i64) -> Result<XSeries> {
    if x_trunc % 2 != 0 {
        return Err(Error::InvalidArgument {
            name: "x_trunc",
            reason: format!("the kernel is even in X; expected an even bound, got {x_trunc}"),
        });
    }
    require_order(order, 1)?;
    let mut coeffs = vec![QSeries::zero(2 * order); x_trunc + 1];
    for n in 0..=(x_trunc as u32 / 2) {
        coeffs[2 * n as usize] = a_form(n, order)?.series;
    }
    Ok(XSeries::from_q_coeffs(coeffs))
}

/// F_g: the coefficient of X^{2g-2} in log Θ₀, with Θ₀ built by the
/// partition route. The constant coefficient of Θ₀ is A_0 = 1, so the
/// formal log applies; its X² term is A_1 on the nose, hence F_2 = A_1.
pub fn f_g(g: u32, order: i64) -> Result<QSeries> {
    if g < 2 {
        return Err(Error::InvalidArgument {
            name: "g",
            reason: format!("log coefficients start at g = 2, got {g}"),
        });
    }
    require_order(order, 1)?;
    let theta = theta0_partition(2 * g as usize - 2, order)?;
    Ok(theta.log()?.q_coeff(2 * g as usize - 2).clone())
}
