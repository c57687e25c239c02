//! Iima–Iwamatsu decomposition via binomial determinants.
//!
//! For `1 ≤ r ≤ s` and `0 ≤ k ≤ r`, `D_k(r, s)` is the determinant of the
//! `k × k` matrix with entries `C(r+s−2k, s+i−j−k)`; it has the product form
//!
//! ```text
//! D_k(r, s) = ∏_{i=0}^{k-1} C(r+s−2k+i, s−k) / C(s−k+i, s−k)
//! ```
//!
//! with `D_0 = D_r = 1`. Let `δ_k = 1` when `p ∤ D_k` and let
//! `0 = k_0 < k_1 < … < k_t = r` be the indices with `δ_k = 1`. Then
//!
//! ```text
//! V_r ⊗ V_s = ⊕_{i=1}^{t} (k_i − k_{i−1}) V_{r+s−k_i−k_{i−1}}
//! ```
//!
//! The multiplicities alone determine the parts and vice versa; see
//! [`mults_to_parts`] and [`parts_to_mults`]. The latter uses the recurrence
//! `m_1 = r + s − μ_1`, `m_i = μ_{i−1} − μ_i − m_{i−1}`. The non-recursive
//! form `m_i = (−1)^{i−1} [r + s + 2 Σ_{j<i} μ_j] − μ_i` does not agree with
//! it: for `λ(5, 5, 2) = 2V8 + 2V4 + V1` it gives `m_2 = −(10 + 16) − 4 = −30`
//! instead of 2, so it is not used.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{integrity, invalid, Result};
use crate::greenring::{Decomposition, Part, Partition};
use crate::numtheory::{binomial, ensure_prime, kummer_valuation};

fn check_range(r: u64, s: u64, k: u64) -> Result<()> {
    if r == 0 || r > s {
        return invalid(format!("need 1 <= r <= s, got r={r}, s={s}"));
    }
    if k > r {
        return invalid(format!("need 0 <= k <= r, got k={k}, r={r}"));
    }
    Ok(())
}

/// Exact `D_k(r, s)` from the product formula.
pub fn det_dk(r: u64, s: u64, k: u64) -> Result<BigUint> {
    check_range(r, s, k)?;
    if k == 0 || k == r {
        return Ok(BigUint::one());
    }
    let (m, n) = (r + s - 2 * k, s - k);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= binomial(m + i, n as i64);
        den *= binomial(n + i, n as i64);
    }
    let (q, rem) = num.div_rem(&den);
    if !rem.is_zero() {
        return integrity(format!("D_{k}({r}, {s}) is not an integer"));
    }
    Ok(q)
}

/// Whether `p ∤ D_k(r, s)`, from the p-adic valuations of the factors.
pub fn delta(r: u64, s: u64, k: u64, p: u64) -> Result<bool> {
    check_range(r, s, k)?;
    ensure_prime(p)?;
    if k == 0 || k == r {
        return Ok(true);
    }
    let (m, n) = (r + s - 2 * k, s - k);
    let mut valuation: i64 = 0;
    for i in 0..k {
        valuation += i64::from(kummer_valuation(m + i, n, p)?);
        valuation -= i64::from(kummer_valuation(n + i, n, p)?);
    }
    if valuation < 0 {
        return integrity(format!("v_{p}(D_{k}({r}, {s})) = {valuation} is negative"));
    }
    Ok(valuation == 0)
}

/// `δ_0, …, δ_r` together with the support `k_0 < … < k_t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaSequence {
    r: u64,
    s: u64,
    p: u64,
    bits: Vec<bool>,
    ones: Vec<u64>,
}

impl DeltaSequence {
    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn s(&self) -> u64 {
        self.s
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// Indices `k` with `δ_k = 1`, increasing.
    pub fn ones(&self) -> &[u64] {
        &self.ones
    }

    /// `ℓ(k)`: distance back to the previous index with `δ = 1`. Defined only
    /// for `1 ≤ k ≤ r` with `δ_k = 1`.
    pub fn gap(&self, k: u64) -> Option<u64> {
        let pos = self.ones.binary_search(&k).ok()?;
        (pos > 0).then(|| k - self.ones[pos - 1])
    }

    /// Bits as a `0`/`1` string, `δ_0` first.
    pub fn bit_string(&self) -> String {
        self.bits
            .iter()
            .map(|&b| if b { '1' } else { '0' })
            .collect()
    }
}

pub fn delta_sequence(r: u64, s: u64, p: u64) -> Result<DeltaSequence> {
    check_range(r, s, 0)?;
    ensure_prime(p)?;
    let bits = (0..=r)
        .map(|k| delta(r, s, k, p))
        .collect::<Result<Vec<_>>>()?;
    let ones = (0..=r).filter(|&k| bits[k as usize]).collect();
    Ok(DeltaSequence {
        r,
        s,
        p,
        bits,
        ones,
    })
}

/// `λ(r, s, p)` read off the δ-sequence.
pub fn decompose_iima(r: u64, s: u64, p: u64) -> Result<Decomposition> {
    if r == 0 || s == 0 {
        return invalid("decompose needs r, s >= 1");
    }
    let ds = delta_sequence(r.min(s), r.max(s), p)?;
    let parts = ds
        .ones
        .windows(2)
        .map(|w| Part::new(r + s - w[0] - w[1], w[1] - w[0]))
        .collect();
    Decomposition::new(r, s, p, parts)
}

/// Parts `λ_1 ≥ … ≥ λ_r` by the descending recurrence
/// `λ_k = r + s − 2k + ℓ(k)` if `δ_k = 1`, else `λ_k = λ_{k+1}`.
pub fn parts_recurrence(ds: &DeltaSequence) -> Partition {
    let (r, s) = (ds.r, ds.s);
    let mut parts = vec![0u64; r as usize];
    for k in (1..=r).rev() {
        parts[k as usize - 1] = match ds.gap(k) {
            Some(gap) => r + s - 2 * k + gap,
            None => parts[k as usize],
        };
    }
    Partition::new(parts).expect("recurrence yields a non-increasing partition")
}

/// Distinct parts from multiplicities: `μ_i = r + s − m_i − 2 Σ_{j<i} m_j`.
pub fn mults_to_parts(mults: &[u64], r: u64, s: u64) -> Result<Vec<u64>> {
    if mults.contains(&0) {
        return invalid(format!("multiplicities {mults:?} must be positive"));
    }
    if mults.iter().sum::<u64>() != r.min(s) {
        return invalid(format!(
            "multiplicities {mults:?} must sum to min({r}, {s})"
        ));
    }
    let mut parts = Vec::with_capacity(mults.len());
    let mut before: i64 = 0;
    for &m in mults {
        parts.push(r as i64 + s as i64 - m as i64 - 2 * before);
        before += m as i64;
    }
    if parts.iter().any(|&mu| mu <= 0) || parts.windows(2).any(|w| w[0] <= w[1]) {
        return integrity(format!("multiplicities {mults:?} give parts {parts:?}"));
    }
    Ok(parts.into_iter().map(|mu| mu as u64).collect())
}

/// Multiplicities from distinct parts: `m_1 = r + s − μ_1`,
/// `m_i = μ_{i−1} − μ_i − m_{i−1}`.
pub fn parts_to_mults(parts: &[u64], r: u64, s: u64) -> Result<Vec<u64>> {
    if parts.contains(&0) || parts.windows(2).any(|w| w[0] <= w[1]) {
        return invalid(format!(
            "parts {parts:?} must be positive and strictly decreasing"
        ));
    }
    let mut mults: Vec<i64> = Vec::with_capacity(parts.len());
    for (i, &mu) in parts.iter().enumerate() {
        let m = match i {
            0 => r as i64 + s as i64 - mu as i64,
            _ => parts[i - 1] as i64 - mu as i64 - mults[i - 1],
        };
        mults.push(m);
    }
    if mults.iter().any(|&m| m <= 0) {
        return integrity(format!("parts {parts:?} give multiplicities {mults:?}"));
    }
    Ok(mults.into_iter().map(|m| m as u64).collect())
}

/// The three binomial-determinant identities relating neighbouring `D_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lem2Variant {
    /// `C(s, s−k) D_{k+1}(r+1, s+1) = C(r+s−k, s−k) D_k(r, s)`, `0 ≤ k ≤ r`
    A,
    /// `C(s, s−k) D_{k+1}(r, s+1) = C(r+s−2k−1, s−k) D_k(r, s)`, `0 ≤ k < r`
    B,
    /// `C(r+s−k−1, k) D_{k+1}(r, s) = C(r+s−2k−2, s−k−1) D_k(r, s)`, `0 ≤ k < r`
    C,
}

/// Evaluates both sides of the chosen identity exactly.
pub fn lem2_identity_check(r: u64, s: u64, k: u64, variant: Lem2Variant) -> Result<bool> {
    check_range(r, s, k)?;
    if variant != Lem2Variant::A && k == r {
        return invalid(format!("variant {variant:?} needs k < r, got k={k}, r={r}"));
    }
    let rhs_det = det_dk(r, s, k)?;
    let (lhs, rhs) = match variant {
        Lem2Variant::A => (
            binomial(s, (s - k) as i64) * det_dk(r + 1, s + 1, k + 1)?,
            binomial(r + s - k, (s - k) as i64) * rhs_det,
        ),
        Lem2Variant::B => (
            binomial(s, (s - k) as i64) * det_dk(r, s + 1, k + 1)?,
            binomial(r + s - 2 * k - 1, (s - k) as i64) * rhs_det,
        ),
        Lem2Variant::C => (
            binomial(r + s - k - 1, k as i64) * det_dk(r, s, k + 1)?,
            binomial(r + s - 2 * k - 2, (s - k - 1) as i64) * rhs_det,
        ),
    };
    Ok(lhs == rhs)
}
