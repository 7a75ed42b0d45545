//! Integer partitions, their Frobenius coordinates, and the balance weight
//! lambda that drives all the weighted partition sums downstream.
//!
//! lambda is half the difference of the squared Frobenius coordinates:
//!   lambda = (sum a_i^2 - sum b_i^2) / 2
//! with a_i = l_i - i + 1/2 and b_i = l'_i - i + 1/2 along the diagonal of
//! the Young diagram. Equivalently it is the total content sum(j - i) over
//! cells (i, j); the content form needs no conjugation and is what the hot
//! enumeration loop uses, while the Frobenius form is the definition and the
//! cross-check.

use num::{BigInt, One, Zero};
use rayon::prelude::*;

/// Generates the partitions of d in descending lexicographic order using
/// constant work per step (Zoghbi-Stojmenovic style): x[1..=m] holds the
/// current parts, h points at the last part larger than 1, and everything
/// between h and m is a run of 1s.
pub struct PartitionGen {
    x: Vec<u32>,
    m: usize,
    h: usize,
    fresh: bool,
    done: bool,
}

impl PartitionGen {
    pub fn new(d: u32) -> Self {
        let n = d as usize;
        let mut x = vec![1u32; n + 1];
        if n > 0 {
            x[1] = d;
        }
        PartitionGen {
            x,
            m: if n == 0 { 0 } else { 1 },
            h: 1,
            fresh: true,
            done: false,
        }
    }

    /// The next partition as a slice of parts, largest first. The slice
    /// borrows internal state; copy it out if it must outlive the call.
    pub fn next_parts(&mut self) -> Option<&[u32]> {
        if self.done {
            return None;
        }
        if self.fresh {
            self.fresh = false;
            return Some(&self.x[1..=self.m]);
        }
        if self.m == 0 || self.x[1] == 1 {
            self.done = true;
            return None;
        }
        if self.x[self.h] == 2 {
            self.m += 1;
            self.x[self.h] = 1;
            self.h -= 1;
        } else {
            let r = self.x[self.h] - 1;
            let mut t = (self.m - self.h + 1) as u32;
            self.x[self.h] = r;
            while t >= r {
                self.h += 1;
                self.x[self.h] = r;
                t -= r;
            }
            if t == 0 {
                self.m = self.h;
            } else {
                self.m = self.h + 1;
                if t > 1 {
                    self.h += 1;
                    self.x[self.h] = t;
                }
            }
        }
        Some(&self.x[1..=self.m])
    }
}

pub struct Partitions(PartitionGen);

impl Iterator for Partitions {
    type Item = Vec<u32>;
    fn next(&mut self) -> Option<Vec<u32>> {
        self.0.next_parts().map(<[u32]>::to_vec)
    }
}

/// All partitions of d, largest part first within each partition,
/// descending lexicographic order across partitions.
pub fn partitions(d: u32) -> Partitions {
    Partitions(PartitionGen::new(d))
}

/// Conjugate partition (transpose of the Young diagram).
pub fn conjugate(parts: &[u32]) -> Vec<u32> {
    let Some(&first) = parts.first() else {
        return Vec::new();
    };
    let mut out = Vec::with_capacity(first as usize);
    let mut i = parts.len();
    for j in 1..=first {
        while i > 0 && parts[i - 1] < j {
            i -= 1;
        }
        out.push(i as u32);
    }
    out
}

/// Frobenius coordinates, doubled so they stay integral: entry 2a_i for
/// a_i = l_i - i + 1/2. Both legs are strictly decreasing odd positives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusCoords {
    pub a_x2: Vec<u64>,
    pub b_x2: Vec<u64>,
}

pub fn frobenius(parts: &[u32]) -> FrobeniusCoords {
    let conj = conjugate(parts);
    let mut a_x2 = Vec::new();
    let mut b_x2 = Vec::new();
    let mut i = 0usize;
    while i < parts.len() && parts[i] as usize >= i + 1 {
        a_x2.push(2 * parts[i] as u64 - 2 * i as u64 - 1);
        b_x2.push(2 * conj[i] as u64 - 2 * i as u64 - 1);
        i += 1;
    }
    FrobeniusCoords { a_x2, b_x2 }
}

impl FrobeniusCoords {
    /// Rebuild the partition: the arm leg gives the rows through the
    /// diagonal, the co-arm leg gives the columns, and rows below the
    /// diagonal are read off the column lengths.
    pub fn to_partition(&self) -> Vec<u32> {
        let r = self.a_x2.len();
        assert_eq!(r, self.b_x2.len());
        let mut parts: Vec<u32> = (0..r)
            .map(|i| ((self.a_x2[i] - 1) / 2) as u32 + i as u32 + 1)
            .collect();
        let cols: Vec<u32> = (0..r)
            .map(|i| ((self.b_x2[i] - 1) / 2) as u32 + i as u32 + 1)
            .collect();
        if r > 0 {
            for row in (r as u32 + 1)..=cols[0] {
                parts.push(cols.iter().filter(|&&c| c >= row).count() as u32);
            }
        }
        parts
    }
}

/// Balance weight via the Frobenius coordinates. Squares of odd integers
/// are 1 mod 8, so each a^2 - b^2 pair is divisible by 8 and the weight is
/// an integer; the assert keeps that invariant loud.
pub fn lambda_weight(parts: &[u32]) -> i64 {
    let fc = frobenius(parts);
    let sa: i64 = fc.a_x2.iter().map(|&x| (x * x) as i64).sum();
    let sb: i64 = fc.b_x2.iter().map(|&x| (x * x) as i64).sum();
    let num = sa - sb;
    assert_eq!(num.rem_euclid(8), 0, "weight must be integral");
    num / 8
}

/// Same weight as the content sum over rows: sum_i l_i (l_i + 1 - 2i) / 2
/// with 1-based i. One pass over the parts, no conjugation.
fn lambda_content(parts: &[u32]) -> i64 {
    let mut s = 0i64;
    for (i, &p) in parts.iter().enumerate() {
        let p = p as i64;
        s += p * (p - 1 - 2 * i as i64);
    }
    debug_assert_eq!(s % 2, 0);
    s / 2
}

/// p(0..=d_max) by the pentagonal-number recurrence; independent of the
/// enumerator above.
pub fn partition_counts(d_max: u32) -> Vec<BigInt> {
    let n = d_max as usize;
    let mut p = vec![BigInt::zero(); n + 1];
    p[0] = BigInt::one();
    for d in 1..=n {
        let mut total = BigInt::zero();
        let mut k = 1usize;
        loop {
            let g1 = k * (3 * k - 1) / 2;
            let g2 = k * (3 * k + 1) / 2;
            if g1 > d {
                break;
            }
            let negate = k % 2 == 0;
            let mut term = p[d - g1].clone();
            if g2 <= d {
                term += &p[d - g2];
            }
            if negate {
                total -= term;
            } else {
                total += term;
            }
            k += 1;
        }
        p[d] = total;
    }
    p
}

pub fn partition_count(d: u32) -> BigInt {
    partition_counts(d).pop().unwrap()
}

/// Power-sum accumulator. Fixed-width when k-th powers of the largest
/// possible weight, summed p(d) times, provably fit in an i128; exact big
/// integers otherwise.
enum Acc {
    Small(i128),
    Big(BigInt),
}

impl Acc {
    fn new(lam_max: i64, k: u32, count_bits: u64) -> Acc {
        let lam_bits = 64 - lam_max.max(1).leading_zeros() as u64;
        if u64::from(k) * lam_bits + count_bits + 2 <= 126 {
            Acc::Small(0)
        } else {
            Acc::Big(BigInt::zero())
        }
    }

    fn add_power(&mut self, lam: i64, k: u32) {
        match self {
            Acc::Small(s) => {
                let mut p: i128 = 1;
                for _ in 0..k {
                    p *= lam as i128;
                }
                *s += p;
            }
            Acc::Big(b) => *b += BigInt::from(lam).pow(k),
        }
    }

    fn into_big(self) -> BigInt {
        match self {
            Acc::Small(s) => BigInt::from(s),
            Acc::Big(b) => b,
        }
    }
}

fn power_sums_at(d: u32, ks: &[u32], count_bits: u64) -> Vec<BigInt> {
    let lam_max = (d as i64) * (d as i64 - 1) / 2;
    let mut accs: Vec<Acc> = ks
        .iter()
        .map(|&k| Acc::new(lam_max, k, count_bits))
        .collect();
    let mut gen = PartitionGen::new(d);
    while let Some(parts) = gen.next_parts() {
        let lam = lambda_content(parts);
        for (acc, &k) in accs.iter_mut().zip(ks) {
            acc.add_power(lam, k);
        }
    }
    accs.into_iter().map(Acc::into_big).collect()
}

/// S_k(d) = sum over partitions of d of lambda^k.
pub fn power_sum(d: u32, k: u32) -> BigInt {
    let count_bits = partition_count(d).bits();
    power_sums_at(d, &[k], count_bits).pop().unwrap()
}

/// One enumeration pass per d serving every requested k at once; the d-loop
/// fans out across threads. Row i of the result is S_{ks[i]}(0..=d_max).
pub fn power_sum_sweep(d_max: u32, ks: &[u32]) -> Vec<Vec<BigInt>> {
    let counts = partition_counts(d_max);
    let per_d: Vec<Vec<BigInt>> = (0..=d_max)
        .into_par_iter()
        .map(|d| power_sums_at(d, ks, counts[d as usize].bits()))
        .collect();
    (0..ks.len())
        .map(|i| per_d.iter().map(|row| row[i].clone()).collect())
        .collect()
}
