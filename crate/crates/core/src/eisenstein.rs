//! Eisenstein expansions E₂, E₄, E₆ and exact decomposition of series into
//! the weight-graded monomial basis E₂^a E₄^b E₆^c, 2a + 4b + 6c = w.
//!
//! Normalization is the constant-term-1 convention:
//!   E₂ = 1 - 24 Σ σ₁(m) q^m,  E₄ = 1 + 240 Σ σ₃(m) q^m,
//!   E₆ = 1 - 504 Σ σ₅(m) q^m.
//! Decomposition solves the coefficient-matching system exactly over the
//! rationals (first-nonzero pivoting, fully deterministic) and then insists
//! the residual vanish through the entire available truncation, so a
//! successful return is a finite-order witness that the input lies in the
//! span.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Sub;

use num::{BigInt, Integer, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::series::{QSeries, Rat};

/// E_k to the given order, k in {2, 4, 6}. Divisor sums come from a sieve
/// over multiples, one pass per divisor.
pub fn eisenstein(k: u32, order: i64) -> Result<QSeries> {
    let mult: i64 = match k {
        2 => -24,
        4 => 240,
        6 => -504,
        _ => {
            return Err(Error::InvalidArgument {
                name: "k",
                reason: format!("weight must be 2, 4, or 6, got {k}"),
            })
        }
    };
    if order < 1 {
        return Err(Error::InvalidArgument {
            name: "order",
            reason: format!("must be positive, got {order}"),
        });
    }
    let n = order as usize;
    let mut sigma = vec![BigInt::zero(); n];
    for d in 1..n {
        let dk = BigInt::from(d).pow(k - 1);
        for m in (d..n).step_by(d) {
            sigma[m] += &dk;
        }
    }
    sigma[0] = BigInt::one();
    Ok(QSeries::from_integers(
        sigma.into_iter().enumerate().map(|(e, s)| {
            let v = if e == 0 { s } else { s * mult };
            (e as i64, v)
        }),
        order,
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EisensteinMonomial {
    pub a: u32,
    pub b: u32,
    pub c: u32,
}

impl EisensteinMonomial {
    pub fn new(a: u32, b: u32, c: u32) -> Self {
        EisensteinMonomial { a, b, c }
    }

    pub fn weight(&self) -> u32 {
        2 * self.a + 4 * self.b + 6 * self.c
    }
}

impl fmt::Display for EisensteinMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (sym, e) in [("E2", self.a), ("E4", self.b), ("E6", self.c)] {
            if e == 0 {
                continue;
            }
            if wrote {
                write!(f, " ")?;
            }
            wrote = true;
            if e == 1 {
                write!(f, "{sym}")?;
            } else {
                write!(f, "{sym}^{e}")?;
            }
        }
        if !wrote {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// All monomials of the given even weight, lexicographically descending in
/// (a, b, c). The order is part of the output contract: decompositions and
/// their serializations list terms in exactly this order.
pub fn monomial_basis(weight: u32) -> Result<Vec<EisensteinMonomial>> {
    if weight % 2 != 0 || weight == 0 {
        return Err(Error::InvalidArgument {
            name: "weight",
            reason: format!("must be even and positive, got {weight}"),
        });
    }
    let mut out = Vec::new();
    for a in (0..=weight / 2).rev() {
        let rem = weight - 2 * a;
        for b in (0..=rem / 4).rev() {
            let rest = rem - 4 * b;
            if rest % 6 == 0 {
                out.push(EisensteinMonomial::new(a, b, rest / 6));
            }
        }
    }
    Ok(out)
}

/// q-expansion of E₂^a E₄^b E₆^c.
pub fn monomial_series(m: &EisensteinMonomial, order: i64) -> Result<QSeries> {
    let mut acc = QSeries::one(2 * order);
    for (k, e) in [(2u32, m.a), (4, m.b), (6, m.c)] {
        if e == 0 {
            continue;
        }
        let base = eisenstein(k, order)?;
        for _ in 0..e {
            acc = &acc * &base;
        }
    }
    Ok(acc)
}

/// Coefficients of one series against the full monomial basis of one
/// weight, stored in basis order with every basis monomial present.
#[derive(Clone, Debug, PartialEq)]
pub struct EisensteinDecomposition {
    pub weight: u32,
    pub coeffs: Vec<(EisensteinMonomial, Rat)>,
}

impl EisensteinDecomposition {
    pub fn coefficient(&self, m: &EisensteinMonomial) -> Rat {
        self.coeffs
            .iter()
            .find(|(mono, _)| mono == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rat::zero)
    }

    /// Σ coeff · monomial expansion, at the requested order.
    pub fn evaluate(&self, order: i64) -> Result<QSeries> {
        let mut acc = QSeries::zero(2 * order);
        for (m, c) in &self.coeffs {
            acc = &acc + &monomial_series(m, order)?.scaled(c);
        }
        Ok(acc)
    }

    /// Common positive denominator and the matching integer numerators, in
    /// basis order. The denominator is the lcm of the coefficient
    /// denominators, so the numerators carry no common factor with it.
    pub fn cleared(&self) -> (BigInt, Vec<(EisensteinMonomial, BigInt)>) {
        let denom = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let nums = self
            .coeffs
            .iter()
            .map(|(m, c)| (*m, c.numer() * (&denom / c.denom())))
            .collect();
        (denom, nums)
    }

    pub fn to_polynomial(&self) -> EisensteinPolynomial {
        EisensteinPolynomial::from_terms(self.coeffs.iter().cloned())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|(_, c)| c.is_zero())
    }
}

impl fmt::Display for EisensteinDecomposition {
    /// Cleared form: `(n1 M1 + n2 M2 + ...) / D`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (denom, nums) = self.cleared();
        let mut wrote = false;
        write!(f, "(")?;
        for (m, n) in &nums {
            if n.is_zero() {
                continue;
            }
            if wrote {
                write!(f, " {} ", if n.is_negative() { "-" } else { "+" })?;
            } else if n.is_negative() {
                write!(f, "-")?;
            }
            wrote = true;
            write!(f, "{} {m}", n.abs())?;
        }
        if !wrote {
            write!(f, "0")?;
        }
        write!(f, ") / {denom}")
    }
}

fn solve_unique(mut mat: Vec<Vec<Rat>>, mut rhs: Vec<Rat>) -> Option<Vec<Rat>> {
    let n = rhs.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !mat[r][col].is_zero())?;
        mat.swap(col, pivot);
        rhs.swap(col, pivot);
        for r in col + 1..n {
            if mat[r][col].is_zero() {
                continue;
            }
            let factor = &mat[r][col] / &mat[col][col];
            for c in col..n {
                let t = &mat[col][c] * &factor;
                let cur = mat[r][c].clone();
                mat[r][c] = cur - t;
            }
            let t = &rhs[col] * &factor;
            let cur = rhs[r].clone();
            rhs[r] = cur - t;
        }
    }
    let mut x = vec![Rat::zero(); n];
    for col in (0..n).rev() {
        let mut acc = rhs[col].clone();
        for c in col + 1..n {
            acc = acc - &mat[col][c] * &x[c];
        }
        x[col] = acc / &mat[col][col];
    }
    Some(x)
}

/// Express f in the weight-w monomial basis. Solves the square system on
/// coefficients q^0..q^{m-1} (m = basis size), then demands the residual be
/// exactly zero through f's whole truncation. Requires f known to order at
/// least m + 2 so at least two rows stand watch beyond the solved block.
pub fn decompose(f: &QSeries, weight: u32) -> Result<EisensteinDecomposition> {
    let basis = monomial_basis(weight)?;
    let m = basis.len();
    let order = f.trunc_x2() / 2;
    if order < m as i64 + 2 {
        return Err(Error::OrderTooLow {
            needed: m as i64 + 2,
            available: order,
        });
    }
    let cols: Vec<QSeries> = basis
        .iter()
        .map(|b| monomial_series(b, order))
        .collect::<Result<_>>()?;
    let mat: Vec<Vec<Rat>> = (0..m as i64)
        .map(|e| cols.iter().map(|col| col.coeff(e)).collect())
        .collect();
    let rhs: Vec<Rat> = (0..m as i64).map(|e| f.coeff(e)).collect();
    let x = solve_unique(mat, rhs).ok_or(Error::SingularSystem { weight })?;
    let mut recon = QSeries::zero(2 * order);
    for (col, c) in cols.iter().zip(&x) {
        recon = &recon + &col.scaled(c);
    }
    let residual = f - &recon;
    if !residual.is_zero() {
        return Err(Error::NotInSpan {
            weight,
            exponent_x2: residual.min_exp_x2().unwrap(),
        });
    }
    Ok(EisensteinDecomposition {
        weight,
        coeffs: basis.into_iter().zip(x).collect(),
    })
}

/// Rational polynomial in E₂, E₄, E₆ with no weight constraint; mixed
/// weights arise when subtracting decompositions of different weights.
/// Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct EisensteinPolynomial {
    coeffs: BTreeMap<EisensteinMonomial, Rat>,
}

impl EisensteinPolynomial {
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (EisensteinMonomial, Rat)>,
    {
        let mut coeffs = BTreeMap::new();
        for (m, c) in terms {
            if c.is_zero() {
                continue;
            }
            let entry = coeffs.entry(m).or_insert_with(Rat::zero);
            *entry += c;
            if entry.is_zero() {
                coeffs.remove(&m);
            }
        }
        EisensteinPolynomial { coeffs }
    }

    pub fn coefficient(&self, m: &EisensteinMonomial) -> Rat {
        self.coeffs.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&EisensteinMonomial, &Rat)> + '_ {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Clear the common denominator, then divide by the positive integer
    /// content. The sign of each coefficient is preserved.
    pub fn renormalized(&self) -> EisensteinPolynomial {
        if self.coeffs.is_empty() {
            return self.clone();
        }
        let denom = self
            .coeffs
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<(EisensteinMonomial, BigInt)> = self
            .coeffs
            .iter()
            .map(|(m, c)| (*m, c.numer() * (&denom / c.denom())))
            .collect();
        let content = ints
            .iter()
            .fold(BigInt::zero(), |acc, (_, v)| acc.gcd(v));
        EisensteinPolynomial::from_terms(
            ints.into_iter()
                .map(|(m, v)| (m, Rat::from_integer(v / &content))),
        )
    }

    /// Reduce every coefficient modulo p into {0, .., p-1}, inverting
    /// denominators mod p. Coefficients whose denominator p divides have no
    /// residue and are rejected.
    pub fn reduce_mod(&self, p: u64) -> Result<EisensteinPolynomial> {
        let terms: Result<Vec<_>> = self
            .coeffs
            .iter()
            .map(|(m, c)| Ok((*m, Rat::from_integer(reduce_rat_mod(c, p)?.into()))))
            .collect();
        Ok(EisensteinPolynomial::from_terms(terms?))
    }
}

fn reduce_rat_mod(c: &Rat, p: u64) -> Result<u64> {
    let p_big = BigInt::from(p);
    let den = c.denom().mod_floor(&p_big);
    if den.is_zero() {
        return Err(Error::DenominatorDivisibleByP {
            p,
            coefficient: c.to_string(),
        });
    }
    let num = c.numer().mod_floor(&p_big);
    let num: u64 = num.try_into().unwrap();
    let den: u64 = den.try_into().unwrap();
    Ok((num as u128 * mod_inverse(den, p) as u128 % p as u128) as u64)
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // extended Euclid; p prime and a nonzero mod p
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    assert_eq!(r0, 1, "{a} is not invertible mod {p}");
    t0.rem_euclid(p as i128) as u64
}

impl Sub for &EisensteinPolynomial {
    type Output = EisensteinPolynomial;
    fn sub(self, rhs: &EisensteinPolynomial) -> EisensteinPolynomial {
        EisensteinPolynomial::from_terms(
            self.coeffs
                .iter()
                .map(|(m, c)| (*m, c.clone()))
                .chain(rhs.coeffs.iter().map(|(m, c)| (*m, -c))),
        )
    }
}

/// Renormalize (clear denominator, divide by content) and reduce mod p,
/// keeping the basis order of the input decomposition.
pub fn reduce_decomposition_mod(
    d: &EisensteinDecomposition,
    p: u64,
) -> Result<EisensteinDecomposition> {
    if p < 2 {
        return Err(Error::InvalidArgument {
            name: "p",
            reason: format!("modulus must be a prime, got {p}"),
        });
    }
    let reduced = d.to_polynomial().renormalized().reduce_mod(p)?;
    Ok(EisensteinDecomposition {
        weight: d.weight,
        coeffs: d
            .coeffs
            .iter()
            .map(|(m, _)| (*m, reduced.coefficient(m)))
            .collect(),
    })
}
