//! Exact integer and p-adic helpers: p-parts, binomials, Lucas and Kummer
//! evaluation, base-p digits and the consecutive-ones binary expansion.

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{integrity, invalid, Result};

/// Trial-division primality test.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d <= p / d {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub(crate) fn ensure_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        invalid(format!("{p} is not prime"))
    }
}

/// `p^n`, failing on overflow.
pub fn prime_power(p: u64, n: u32) -> Result<u64> {
    p.checked_pow(n)
        .map_or_else(|| invalid(format!("{p}^{n} overflows u64")), Ok)
}

/// If `q` is a power of `p` (including `p^0 = 1`), returns the exponent.
pub fn log_of_power(q: u64, p: u64) -> Option<u32> {
    if q == 0 || p < 2 {
        return None;
    }
    let mut q = q;
    let mut n = 0;
    while q.is_multiple_of(p) {
        q /= p;
        n += 1;
    }
    (q == 1).then_some(n)
}

/// The largest power of `p` dividing `n`.
pub fn p_part(n: u64, p: u64) -> Result<u64> {
    if n == 0 {
        return invalid("p-part of 0 is undefined");
    }
    ensure_prime(p)?;
    let mut n = n;
    let mut part = 1;
    while n.is_multiple_of(p) {
        n /= p;
        part *= p;
    }
    Ok(part)
}

/// Exponent of the largest power of `p` dividing `n`.
pub fn p_valuation(n: u64, p: u64) -> Result<u32> {
    let part = p_part(n, p)?;
    Ok(log_of_power(part, p).unwrap_or(0))
}

/// Exact binomial coefficient, zero outside `0 <= n <= m`.
pub fn binomial(m: u64, n: i64) -> BigUint {
    if n < 0 || n as u64 > m {
        return BigUint::from(0u32);
    }
    let n = (n as u64).min(m - n as u64);
    let mut acc = BigUint::one();
    for i in 0..n {
        // acc = C(m, i) here, so the division below is exact.
        acc *= m - i;
        acc /= i + 1;
    }
    acc
}

/// Base-`p` digits of `n`, least significant first. Empty for `n = 0`.
pub fn base_p_digits(n: u64, p: u64) -> Vec<u64> {
    assert!(p >= 2, "base must be at least 2");
    let mut digits = Vec::new();
    let mut n = n;
    while n > 0 {
        digits.push(n % p);
        n /= p;
    }
    digits
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

// C(a, b) mod p for digits 0 <= a, b < p.
fn small_binomial_mod(a: u64, b: u64, p: u64) -> u64 {
    if b > a {
        return 0;
    }
    let b = b.min(a - b);
    let mut num = 1;
    let mut den = 1;
    for i in 0..b {
        num = mul_mod(num, a - i, p);
        den = mul_mod(den, i + 1, p);
    }
    // den is a product of integers below p, hence a unit.
    mul_mod(num, pow_mod(den, p - 2, p), p)
}

/// `C(m, n) mod p` via Lucas' theorem, digit by digit. `p` must be prime.
pub fn binomial_mod_p(m: u64, n: u64, p: u64) -> u64 {
    debug_assert!(is_prime(p));
    if n > m {
        return 0;
    }
    let mut acc = 1 % p;
    let (mut m, mut n) = (m, n);
    while n > 0 {
        let term = small_binomial_mod(m % p, n % p, p);
        if term == 0 {
            return 0;
        }
        acc = mul_mod(acc, term, p);
        m /= p;
        n /= p;
    }
    acc
}

/// `v_p(C(m, n))`, counted as the number of carries when adding `n` and
/// `m - n` in base `p`.
pub fn kummer_valuation(m: u64, n: u64, p: u64) -> Result<u32> {
    if n > m {
        return invalid(format!("kummer_valuation needs n <= m, got n={n}, m={m}"));
    }
    ensure_prime(p)?;
    let (mut a, mut b) = (n, m - n);
    let mut carry = 0;
    let mut carries = 0;
    while a > 0 || b > 0 || carry > 0 {
        let digit_sum = a % p + b % p + carry;
        carry = u64::from(digit_sum >= p);
        carries += carry as u32;
        a /= p;
        b /= p;
    }
    Ok(carries)
}

/// Minimal alternating expansion `r = 2^{e_1} - 2^{e_2} + 2^{e_3} - ...`
/// with strictly decreasing exponents, together with its partial sums
/// `r_j = 2^{e_{j+1}} - r_{j+1}` (so `r_0 = r`, `r_k = 0`).
///
/// Each run of ones `1..10..0` in the binary expansion of `r` contributes a
/// difference of two powers of two; the minimal form merges a trailing
/// `2^{e+1} - 2^e` into `2^e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsOnesExpansion {
    pub exponents: Vec<u32>,
    pub partial_sums: Vec<u64>,
}

impl ConsOnesExpansion {
    /// Number of terms `k`.
    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    /// The value `r_0` being expanded.
    pub fn value(&self) -> u64 {
        self.partial_sums[0]
    }

    /// Evaluates the alternating sum from the exponents alone.
    pub fn evaluate(&self) -> i128 {
        self.exponents
            .iter()
            .enumerate()
            .map(|(i, &e)| {
                let term = 1i128 << e;
                if i % 2 == 0 {
                    term
                } else {
                    -term
                }
            })
            .sum()
    }

    fn validate(&self) -> Result<()> {
        let k = self.exponents.len();
        if self.partial_sums.len() != k + 1 || self.partial_sums[k] != 0 {
            return integrity("partial sums must have length k+1 and end in 0");
        }
        if self.exponents.windows(2).any(|w| w[0] <= w[1]) {
            return integrity("exponents must be strictly decreasing");
        }
        if k > 1 && self.exponents[k - 2] <= self.exponents[k - 1] + 1 {
            return integrity("expansion is not of minimal length");
        }
        for i in 0..k {
            let pow = 1u64 << self.exponents[i];
            let (ri, next) = (self.partial_sums[i], self.partial_sums[i + 1]);
            if pow < next || ri != pow - next {
                return integrity(format!("r_{i} != 2^e_{} - r_{}", i + 1, i + 1));
            }
            if ri == 0 || ri > pow {
                return integrity(format!("r_{i} = {ri} outside [1, {pow}]"));
            }
        }
        Ok(())
    }
}

/// Greedy construction: `e_1 = ceil(log2 r)`, then recurse on `2^{e_1} - r`.
pub fn cons_ones_expansion(r: u64) -> Result<ConsOnesExpansion> {
    if r == 0 {
        return invalid("consecutive-ones expansion needs r >= 1");
    }
    if r > 1 << 62 {
        return invalid(format!("{r} too large for consecutive-ones expansion"));
    }
    let mut exponents = Vec::new();
    let mut partial_sums = vec![r];
    let mut rest = r;
    while rest > 0 {
        let e = rest.next_power_of_two().trailing_zeros();
        exponents.push(e);
        rest = (1u64 << e) - rest;
        partial_sums.push(rest);
    }
    let expansion = ConsOnesExpansion {
        exponents,
        partial_sums,
    };
    expansion.validate()?;
    Ok(expansion)
}
