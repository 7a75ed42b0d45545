//! Coefficientwise congruences between normalized forms and p-adic
//! valuation tables of their coefficients at prime-power exponents.
//!
//! Everything here consumes the integer-coefficient Ā series from
//! [`crate::forms`]; the rational A series never enter a modulus.

use num::{BigInt, Integer, Zero};

use crate::error::{Error, Result};
use crate::forms::abar;

/// Euler's totient by trial factorization; the inputs in practice are small
/// prime powers.
pub fn totient(m: u64) -> Result<u64> {
    if m == 0 {
        return Err(Error::InvalidArgument {
            name: "m",
            reason: "totient needs a positive argument".into(),
        });
    }
    let mut phi = 1u64;
    let mut rem = m;
    let mut p = 2u64;
    while (p as u128) * (p as u128) <= rem as u128 {
        if rem % p == 0 {
            rem /= p;
            let mut pk = 1u64;
            while rem % p == 0 {
                rem /= p;
                pk *= p;
            }
            phi *= pk * (p - 1);
        }
        p += 1;
    }
    if rem > 1 {
        phi *= rem - 1;
    }
    Ok(phi)
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while (d as u128) * (d as u128) <= p as u128 {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn require_prime(p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::InvalidArgument {
            name: "p",
            reason: format!("must be prime, got {p}"),
        });
    }
    Ok(())
}

fn require_positive(v: u32, name: &'static str) -> Result<()> {
    if v == 0 {
        return Err(Error::InvalidArgument {
            name,
            reason: "must be at least 1".into(),
        });
    }
    Ok(())
}

/// All 1 <= i < j <= i_max with 2i ≡ 2j mod φ(p^s): the index pairs whose
/// forms are expected to be congruent mod p^s.
pub fn kummer_pairs(p: u64, s: u32, i_max: u32) -> Result<Vec<(u32, u32)>> {
    require_prime(p)?;
    require_positive(s, "s")?;
    let ps = p.checked_pow(s).ok_or(Error::InvalidArgument {
        name: "s",
        reason: format!("{p}^{s} overflows"),
    })?;
    let phi = totient(ps)?;
    let mut out = Vec::new();
    for i in 1..=i_max {
        for j in i + 1..=i_max {
            if (2 * u64::from(j - i)) % phi == 0 {
                out.push((i, j));
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceFailure {
    pub exponent: i64,
    pub residues: (BigInt, BigInt),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceReport {
    pub i: u32,
    pub j: u32,
    pub p: u64,
    pub s: u32,
    pub order: i64,
    pub holds: bool,
    pub first_failure: Option<CongruenceFailure>,
}

/// Compare Ā_i and Ā_j coefficientwise mod p^s through the truncation.
/// The pair need not come from [`kummer_pairs`]; this reports facts either
/// way. Indices start at 1: the index-0 constant form has no normalized
/// counterpart.
pub fn check_kummer(i: u32, j: u32, p: u64, s: u32, order: i64) -> Result<CongruenceReport> {
    require_positive(i, "i")?;
    require_positive(j, "j")?;
    require_prime(p)?;
    require_positive(s, "s")?;
    let modulus = BigInt::from(p).pow(s);
    let fi = abar(i, order)?.series;
    let fj = abar(j, order)?.series;
    let mut first_failure = None;
    for e in 0..order {
        let ri = fi.coeff(e).to_integer().mod_floor(&modulus);
        let rj = fj.coeff(e).to_integer().mod_floor(&modulus);
        if ri != rj {
            first_failure = Some(CongruenceFailure {
                exponent: e,
                residues: (ri, rj),
            });
            break;
        }
    }
    Ok(CongruenceReport {
        i,
        j,
        p,
        s,
        order,
        holds: first_failure.is_none(),
        first_failure,
    })
}

/// Hypothesis test for the valuation-growth statement: p < 7, or
/// 6k mod (p - 1) lands in {4, 6, 8, 10, 14}. The residue list is taken as
/// given; no derivation of it is attempted here.
pub fn theorem2_applicable(k: u32, p: u64) -> bool {
    debug_assert!(k >= 1);
    if p < 7 {
        return true;
    }
    matches!(6 * u64::from(k) % (p - 1), 4 | 6 | 8 | 10 | 14)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValuationRow {
    pub n: u32,
    pub coefficient: BigInt,
    /// None marks a zero coefficient: infinite valuation, distinct from any
    /// finite value.
    pub valuation: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValuationTable {
    pub k: u32,
    pub p: u64,
    pub rows: Vec<ValuationRow>,
}

/// Enumerating every partition of every d below the truncation is the cost
/// driver; past this order a single table would take hours.
pub const MAX_FEASIBLE_ORDER: i64 = 128;

fn p_adic_valuation(value: &BigInt, p: u64) -> u64 {
    let p = BigInt::from(p);
    let mut v = value.clone();
    let mut n = 0;
    while (&v % &p).is_zero() {
        v /= &p;
        n += 1;
    }
    n
}

/// Exact coefficients a_k(p^n) of Ā_k and their p-adic valuations for
/// n = 1..n_max. Needs Ā_k to order p^n_max + 1.
pub fn padic_valuations(k: u32, p: u64, n_max: u32) -> Result<ValuationTable> {
    require_positive(k, "k")?;
    require_prime(p)?;
    require_positive(n_max, "n_max")?;
    let needed = (p as i128)
        .checked_pow(n_max)
        .and_then(|v| v.checked_add(1))
        .unwrap_or(i128::MAX);
    if needed > MAX_FEASIBLE_ORDER as i128 {
        return Err(Error::OrderInfeasible {
            order: needed,
            bound: MAX_FEASIBLE_ORDER,
        });
    }
    let ab = abar(k, (needed as i64).max(3))?;
    let rows = (1..=n_max)
        .map(|n| {
            let e = (p as i64).pow(n);
            let coefficient = ab.series.coeff(e).to_integer();
            let valuation = if coefficient.is_zero() {
                None
            } else {
                Some(p_adic_valuation(&coefficient, p))
            };
            ValuationRow { n, coefficient, valuation }
        })
        .collect();
    Ok(ValuationTable { k, p, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;
    use std::str::FromStr;

    #[test]
    fn totient_values() {
        assert_eq!(totient(5).unwrap(), 4);
        assert_eq!(totient(9).unwrap(), 6);
        assert_eq!(totient(1).unwrap(), 1);
        assert_eq!(totient(12).unwrap(), 4);
        assert_eq!(totient(2).unwrap(), 1);
        assert!(totient(0).is_err());
    }

    #[test]
    fn pair_enumeration() {
        assert_eq!(kummer_pairs(5, 1, 4).unwrap(), vec![(1, 3), (2, 4)]);
        let mod_nine = kummer_pairs(3, 2, 6).unwrap();
        assert_eq!(mod_nine, vec![(1, 4), (2, 5), (3, 6)]);
        // φ(2) = 1, so every pair qualifies
        assert_eq!(kummer_pairs(2, 1, 4).unwrap().len(), 6);
        assert!(kummer_pairs(4, 1, 4).is_err());
        assert!(kummer_pairs(5, 0, 4).is_err());
    }

    fn residues_mod(series: &crate::series::QSeries, modulus: u64, order: i64) -> BTreeMap<i64, u64> {
        let m = BigInt::from(modulus);
        (0..order)
            .filter_map(|e| {
                let r: u64 = series
                    .coeff(e)
                    .to_integer()
                    .mod_floor(&m)
                    .try_into()
                    .unwrap();
                (r != 0).then_some((e, r))
            })
            .collect()
    }

    #[test]
    fn congruence_mod_five_matches_frozen_reduction() {
        let report = check_kummer(2, 4, 5, 1, 25).unwrap();
        assert!(report.holds);
        assert_eq!(report.first_failure, None);
        let reduced = residues_mod(&abar(2, 25).unwrap().series, 5, 25);
        let want: BTreeMap<i64, u64> = [
            (2, 1),
            (5, 3),
            (7, 4),
            (8, 4),
            (10, 3),
            (12, 3),
            (13, 2),
            (15, 1),
            (20, 4),
            (22, 2),
            (23, 4),
        ]
        .into_iter()
        .collect();
        assert_eq!(reduced, want);
    }

    #[test]
    fn congruence_mod_nine_matches_frozen_reduction() {
        let report = check_kummer(3, 6, 3, 2, 16).unwrap();
        assert!(report.holds);
        let reduced = residues_mod(&abar(3, 16).unwrap().series, 9, 16);
        let want: BTreeMap<i64, u64> = [
            (2, 1),
            (3, 8),
            (5, 2),
            (6, 6),
            (8, 5),
            (9, 3),
            (11, 1),
            (12, 5),
            (14, 2),
            (15, 3),
        ]
        .into_iter()
        .collect();
        assert_eq!(reduced, want);
    }

    #[test]
    fn congruence_is_reflexive() {
        let report = check_kummer(4, 4, 7, 1, 10).unwrap();
        assert!(report.holds);
    }

    #[test]
    fn non_hypothesis_pair_fails_and_is_reported() {
        // 2·1 = 2 and 2·2 = 4 differ mod φ(5) = 4, and indeed the series
        // part ways at q³: 8 vs 80 mod 5
        let report = check_kummer(1, 2, 5, 1, 20).unwrap();
        assert!(!report.holds);
        let failure = report.first_failure.unwrap();
        assert_eq!(failure.exponent, 3);
        assert_eq!(failure.residues, (BigInt::from(3), BigInt::from(0)));
    }

    #[test]
    fn small_hypothesis_sweep_holds() {
        for (i, j) in kummer_pairs(3, 1, 4).unwrap() {
            assert!(check_kummer(i, j, 3, 1, 12).unwrap().holds, "({i},{j})");
        }
    }

    #[test]
    fn rejects_index_zero() {
        assert!(matches!(
            check_kummer(0, 2, 5, 1, 10),
            Err(Error::InvalidArgument { name: "i", .. })
        ));
        assert!(matches!(
            check_kummer(2, 0, 5, 1, 10),
            Err(Error::InvalidArgument { name: "j", .. })
        ));
    }

    #[test]
    fn applicability_table() {
        assert!(theorem2_applicable(3, 3));
        for k in 1..=10 {
            assert!(theorem2_applicable(k, 2));
        }
        assert!(theorem2_applicable(1, 13)); // 6 mod 12
        assert!(theorem2_applicable(4, 11)); // 24 mod 10 = 4
        assert!(!theorem2_applicable(1, 7)); // 6 mod 6 = 0
        assert!(!theorem2_applicable(2, 13)); // 12 mod 12 = 0
    }

    #[test]
    fn valuation_table_for_three() {
        let table = padic_valuations(3, 3, 4).unwrap();
        assert_eq!(table.k, 3);
        assert_eq!(table.p, 3);
        let want = [
            (1u32, "728", 0u64),
            (2, "2028730080", 1),
            (3, "1747100845087920", 3),
            (4, "1249380857829754167840", 5),
        ];
        assert_eq!(table.rows.len(), want.len());
        for (row, (n, coeff, val)) in table.rows.iter().zip(want) {
            assert_eq!(row.n, n);
            assert_eq!(row.coefficient, BigInt::from_str(coeff).unwrap());
            assert_eq!(row.valuation, Some(val));
        }
    }

    #[test]
    fn valuation_table_for_two_mod_five() {
        let table = padic_valuations(2, 5, 2).unwrap();
        assert_eq!(table.rows[0].coefficient, BigInt::from(9248));
        assert_eq!(table.rows[0].valuation, Some(0));
        assert_eq!(table.rows[1].coefficient, BigInt::from(7421159040i64));
        assert_eq!(table.rows[1].valuation, Some(1));
    }

    #[test]
    fn infeasible_orders_are_rejected_up_front() {
        assert!(matches!(
            padic_valuations(3, 3, 5),
            Err(Error::OrderInfeasible { .. })
        ));
        assert!(matches!(
            padic_valuations(3, 2, 64),
            Err(Error::OrderInfeasible { .. })
        ));
    }

    #[test]
    fn padic_rejects_bad_arguments() {
        assert!(padic_valuations(0, 3, 2).is_err());
        assert!(padic_valuations(3, 4, 2).is_err());
        assert!(padic_valuations(3, 3, 0).is_err());
    }
}
