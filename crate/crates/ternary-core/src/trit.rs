//! Base-3 integers, F3 arithmetic, and the classical oracles every
//! verification in this crate checks circuits against.

use std::fmt;

/// An element of F3.
pub type Trit = u8;

/// Addition mod 3.
#[inline]
pub fn t_add(a: Trit, b: Trit) -> Trit {
    (a + b) % 3
}

/// Subtraction mod 3.
#[inline]
pub fn t_sub(a: Trit, b: Trit) -> Trit {
    (3 + a - b) % 3
}

/// Multiplication mod 3.
#[inline]
pub fn t_mul(a: Trit, b: Trit) -> Trit {
    (a * b) % 3
}

/// A little-endian base-3 digit string (index 0 = least significant trit).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TritString {
    pub trits: Vec<Trit>,
}

impl TritString {
    pub fn width(&self) -> usize {
        self.trits.len()
    }
}

impl fmt::Debug for TritString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // displayed most-significant-first, as in the tables
        for &t in self.trits.iter().rev() {
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RangeError {
    ZeroWidth,
    ValueTooWide { value: u64, width: usize },
    WidthTooLarge { width: usize },
    BadTrit { value: u8 },
    BadCarryIn { value: u8 },
}

impl fmt::Display for RangeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RangeError::ZeroWidth => write!(f, "width must be at least 1"),
            RangeError::ValueTooWide { value, width } => {
                write!(f, "{value} does not fit in {width} trits")
            }
            RangeError::WidthTooLarge { width } => {
                write!(f, "width {width} exceeds the 64-bit value range")
            }
            RangeError::BadTrit { value } => write!(f, "{value} is not a trit"),
            RangeError::BadCarryIn { value } => {
                write!(f, "carry-in {value} must be 0 or 1")
            }
        }
    }
}

impl std::error::Error for RangeError {}

/// 3^n as u64; errors out past the representable range (n <= 40).
pub fn pow3(n: usize) -> Result<u64, RangeError> {
    if n > 40 {
        return Err(RangeError::WidthTooLarge { width: n });
    }
    Ok(3u64.pow(n as u32))
}

/// Little-endian base-3 digits of `x`, exactly `n` of them.
pub fn to_trits(x: u64, n: usize) -> Result<TritString, RangeError> {
    if n == 0 {
        return Err(RangeError::ZeroWidth);
    }
    if x >= pow3(n)? {
        return Err(RangeError::ValueTooWide { value: x, width: n });
    }
    let mut v = x;
    let mut trits = Vec::with_capacity(n);
    for _ in 0..n {
        trits.push((v % 3) as Trit);
        v /= 3;
    }
    Ok(TritString { trits })
}

/// Inverse of [`to_trits`].
pub fn from_trits(t: &TritString) -> u64 {
    let mut acc = 0u64;
    for &d in t.trits.iter().rev() {
        acc = acc * 3 + d as u64;
    }
    acc
}

/// Number of 1s in the binary expansion of n.
pub fn binary_weight(n: u64) -> u32 {
    n.count_ones()
}

/// floor(log2 n); n must be positive.
pub fn floor_log2(n: u64) -> Result<u32, RangeError> {
    if n == 0 {
        return Err(RangeError::ZeroWidth);
    }
    Ok(63 - n.leading_zeros())
}

/// ceil(log2 n); n must be positive.
pub fn ceil_log2(n: u64) -> Result<u32, RangeError> {
    let f = floor_log2(n)?;
    Ok(if n.is_power_of_two() { f } else { f + 1 })
}

/// floor(log2(n/3)) as a signed value; negative for n < 3.
///
/// The carry look-ahead depth formulas use this with small n, where the
/// floor drops below zero (n=1 gives -2, n=2 gives -1).
pub fn floor_log2_div3(n: u64) -> i64 {
    assert!(n >= 1);
    // largest t with 2^t <= n/3
    if n >= 3 {
        let mut t = 0i64;
        while 3u64 << (t + 1) <= n {
            t += 1;
        }
        t
    } else if n == 2 {
        -1
    } else {
        -2
    }
}

/// Both sides of the first counting identity:
/// sum_{i>=1} floor(n/2^i) = n - omega(n).
pub fn identity_eq2(n: u64) -> (u64, u64) {
    let mut lhs = 0;
    let mut i = 1;
    while n >> i > 0 {
        lhs += n >> i;
        i += 1;
    }
    (lhs, n - binary_weight(n) as u64)
}

/// Both sides of the second identity:
/// sum_{i=1}^{floor(log n)+1} floor(n/2^i - 1/2) = n - floor(log n) - 1.
pub fn identity_eq3(n: u64) -> (u64, u64) {
    let log = floor_log2(n).expect("n >= 1");
    let mut lhs = 0;
    for i in 1..=(log + 1) {
        // n/2^i - 1/2 = (2n - 2^i) / 2^(i+1), nonnegative in this range
        lhs += (2 * n - (1 << i)) >> (i + 1);
    }
    (lhs, n - log as u64 - 1)
}

/// Ternary carry-out by integer threshold: 1 iff a + b + c >= 3.
///
/// Only defined for c in {0,1}; in an actual addition the carry can never
/// be 2.
pub fn carry_threshold(a: Trit, b: Trit, c: Trit) -> Result<Trit, RangeError> {
    if a > 2 || b > 2 {
        return Err(RangeError::BadTrit { value: a.max(b) });
    }
    if c > 1 {
        return Err(RangeError::BadCarryIn { value: c });
    }
    Ok(if a + b + c >= 3 { 1 } else { 0 })
}

/// Ternary carry-out by the mod-3 polynomial 2(1+a+b+c)(ab+ac+bc)+abc.
///
/// Defined for all of F3^3; agrees with [`carry_threshold`] whenever
/// c in {0,1}.
pub fn carry_polynomial(a: Trit, b: Trit, c: Trit) -> Trit {
    let (a, b, c) = (a as u32, b as u32, c as u32);
    let e2 = a * b + a * c + b * c;
    ((2 * (1 + a + b + c) * e2 + a * b * c) % 3) as Trit
}

/// Trit-wise complement 2 - a_i, so that a + a' = 3^n - 1.
pub fn complement(a: &TritString) -> TritString {
    TritString { trits: a.trits.iter().map(|&t| 2 - t).collect() }
}

/// Ground truth for addition: a + b + cin as n+1 little-endian trits.
pub fn add_oracle(a: u64, b: u64, cin: Trit, n: usize) -> Result<TritString, RangeError> {
    let limit = pow3(n)?;
    if a >= limit {
        return Err(RangeError::ValueTooWide { value: a, width: n });
    }
    if b >= limit {
        return Err(RangeError::ValueTooWide { value: b, width: n });
    }
    if cin > 1 {
        return Err(RangeError::BadCarryIn { value: cin });
    }
    to_trits(a + b + cin as u64, n + 1)
}

/// Ground truth for subtraction: ((a - b) mod 3^n, borrow), borrow = 1 iff a < b.
pub fn sub_oracle(a: u64, b: u64, n: usize) -> Result<(u64, bool), RangeError> {
    let limit = pow3(n)?;
    if a >= limit || b >= limit {
        return Err(RangeError::ValueTooWide { value: a.max(b), width: n });
    }
    Ok(((limit + a - b) % limit, a < b))
}

/// Ground truth for comparison: 1 iff a < b.
pub fn cmp_oracle(a: u64, b: u64) -> Trit {
    (a < b) as Trit
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trit_conversions() {
        assert_eq!(to_trits(0, 3).unwrap().trits, vec![0, 0, 0]);
        assert_eq!(to_trits(12, 3).unwrap().trits, vec![0, 1, 1]);
        assert_eq!(to_trits(26, 3).unwrap().trits, vec![2, 2, 2]);
        assert!(to_trits(27, 3).is_err());
        assert!(to_trits(0, 0).is_err());
        assert_eq!(from_trits(&TritString { trits: vec![0, 0, 0] }), 0);
        assert_eq!(from_trits(&TritString { trits: vec![1, 2] }), 7);
    }

    #[test]
    fn round_trip_all_small_widths() {
        for n in 1..=8usize {
            for x in 0..pow3(n).unwrap() {
                assert_eq!(from_trits(&to_trits(x, n).unwrap()), x);
            }
        }
    }

    #[test]
    fn weights_and_logs() {
        assert_eq!(binary_weight(10), 2);
        assert_eq!(binary_weight(0), 0);
        assert_eq!(binary_weight(7), 3);
        assert_eq!(floor_log2(10).unwrap(), 3);
        assert_eq!(ceil_log2(10).unwrap(), 4);
        assert_eq!(floor_log2(1).unwrap(), 0);
        assert!(floor_log2(0).is_err());
        assert_eq!(floor_log2_div3(1), -2);
        assert_eq!(floor_log2_div3(2), -1);
        assert_eq!(floor_log2_div3(3), 0);
        assert_eq!(floor_log2_div3(10), 1);
        assert_eq!(floor_log2_div3(12), 2);
    }

    #[test]
    fn counting_identities() {
        assert_eq!(identity_eq2(10), (8, 8));
        assert_eq!(identity_eq2(1), (0, 0));
        assert_eq!(identity_eq3(10), (6, 6));
        for n in 1..=64 {
            let (l2, r2) = identity_eq2(n);
            assert_eq!(l2, r2, "eq2 at n={n}");
            let (l3, r3) = identity_eq3(n);
            assert_eq!(l3, r3, "eq3 at n={n}");
        }
    }

    #[test]
    fn carry_table() {
        assert_eq!(carry_threshold(1, 2, 0).unwrap(), 1);
        assert_eq!(carry_threshold(0, 0, 0).unwrap(), 0);
        assert_eq!(carry_threshold(1, 1, 1).unwrap(), 1);
        assert!(carry_threshold(1, 1, 2).is_err());
        // polynomial and threshold forms agree on all 18 admissible cases
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..2 {
                    assert_eq!(
                        carry_polynomial(a, b, c),
                        carry_threshold(a, b, c).unwrap(),
                        "carry mismatch at ({a},{b},{c})"
                    );
                }
            }
        }
    }

    #[test]
    fn complement_is_involution() {
        assert_eq!(complement(&TritString { trits: vec![0, 0] }).trits, vec![2, 2]);
        assert_eq!(complement(&TritString { trits: vec![1, 2, 0] }).trits, vec![1, 0, 2]);
        for n in 1..=6usize {
            for x in 0..pow3(n).unwrap() {
                let t = to_trits(x, n).unwrap();
                assert_eq!(complement(&complement(&t)), t);
                assert_eq!(from_trits(&complement(&t)), pow3(n).unwrap() - 1 - x);
            }
        }
    }

    #[test]
    fn integer_oracles() {
        assert_eq!(from_trits(&add_oracle(5, 7, 0, 2).unwrap()), 12);
        assert_eq!(sub_oracle(3, 5, 2).unwrap(), (7, true));
        assert_eq!(cmp_oracle(5, 5), 0);
        // long addition with per-position carries matches the integer sum
        for n in 1..=5usize {
            let limit = pow3(n).unwrap();
            for a in 0..limit {
                for b in 0..limit {
                    let at = to_trits(a, n).unwrap();
                    let bt = to_trits(b, n).unwrap();
                    let mut c: Trit = 0;
                    let mut digits = Vec::new();
                    for i in 0..n {
                        digits.push(t_add(t_add(at.trits[i], bt.trits[i]), c));
                        c = carry_threshold(at.trits[i], bt.trits[i], c).unwrap();
                    }
                    digits.push(c);
                    assert_eq!(digits, add_oracle(a, b, 0, n).unwrap().trits);
                }
            }
        }
    }
}
