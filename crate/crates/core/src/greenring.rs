//! Green-ring data model for `V_r ⊗ V_s`.
//!
//! A [`Decomposition`] is a finished answer `⊕ m_i V_{μ_i}` with strictly
//! decreasing dimensions and positive multiplicities, tied to the `(r, s, p)`
//! it decomposes. A [`VirtualSum`] is the scratch space used while assembling
//! a reduction formula, where multiplicities may go negative before they
//! cancel. Only [`normalize`] turns one into the other.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{integrity, invalid, Error, Result};
use crate::numtheory::log_of_power;

/// One summand `mult · V_dim`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Part {
    pub dim: u64,
    pub mult: u64,
}

impl Part {
    pub fn new(dim: u64, mult: u64) -> Self {
        Part { dim, mult }
    }
}

/// `V_r ⊗ V_s = ⊕ m_i V_{μ_i}` in characteristic `p` (`p = 0` for
/// characteristic zero), with `μ_1 > … > μ_t > 0` and every `m_i ≥ 1`.
///
/// Construction checks `Σ m_i μ_i = rs` and `Σ m_i = min(r, s)`. The empty
/// decomposition is valid exactly when `rs = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawDecomposition")]
pub struct Decomposition {
    r: u64,
    s: u64,
    p: u64,
    parts: Vec<Part>,
}

#[derive(Deserialize)]
struct RawDecomposition {
    r: u64,
    s: u64,
    p: u64,
    parts: Vec<Part>,
}

impl TryFrom<RawDecomposition> for Decomposition {
    type Error = Error;

    fn try_from(raw: RawDecomposition) -> Result<Self> {
        Decomposition::new(raw.r, raw.s, raw.p, raw.parts)
    }
}

impl Decomposition {
    pub fn new(r: u64, s: u64, p: u64, parts: Vec<Part>) -> Result<Self> {
        let d = Decomposition { r, s, p, parts };
        d.validate()?;
        Ok(d)
    }

    /// The zero module, as the decomposition of `V_r ⊗ V_s` with `rs = 0`.
    pub fn empty(r: u64, s: u64, p: u64) -> Result<Self> {
        Self::new(r, s, p, Vec::new())
    }

    fn validate(&self) -> Result<()> {
        let ctx = format!("({}, {}, {})", self.r, self.s, self.p);
        for w in self.parts.windows(2) {
            if w[0].dim <= w[1].dim {
                return integrity(format!("{ctx}: dims not strictly decreasing in {self}"));
            }
        }
        if self
            .parts
            .iter()
            .any(|part| part.dim == 0 || part.mult == 0)
        {
            return integrity(format!("{ctx}: zero dim or multiplicity in {self}"));
        }
        let total: u128 = self
            .parts
            .iter()
            .map(|part| part.dim as u128 * part.mult as u128)
            .sum();
        if total != self.r as u128 * self.s as u128 {
            return integrity(format!("{ctx}: dimensions of {self} sum to {total}"));
        }
        let count: u128 = self.parts.iter().map(|part| part.mult as u128).sum();
        if count != self.r.min(self.s) as u128 {
            return integrity(format!("{ctx}: {self} has {count} parts"));
        }
        Ok(())
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn s(&self) -> u64 {
        self.s
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn parts(&self) -> &[Part] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Distinct dimensions `μ_1 > … > μ_t`.
    pub fn dims(&self) -> Vec<u64> {
        self.parts.iter().map(|part| part.dim).collect()
    }

    /// Multiplicities `m_1, …, m_t`, aligned with [`Decomposition::dims`].
    pub fn mults(&self) -> Vec<u64> {
        self.parts.iter().map(|part| part.mult).collect()
    }

    pub fn largest(&self) -> Option<Part> {
        self.parts.first().copied()
    }

    pub fn smallest(&self) -> Option<Part> {
        self.parts.last().copied()
    }

    /// Same summands, relabelled as the decomposition of `(s, r)`.
    pub fn swapped(&self) -> Self {
        Decomposition {
            r: self.s,
            s: self.r,
            p: self.p,
            parts: self.parts.clone(),
        }
    }

    /// Compares summands only, ignoring the `(r, s, p)` labels.
    pub fn same_parts(&self, other: &Decomposition) -> bool {
        self.parts == other.parts
    }

    pub fn to_virtual(&self) -> VirtualSum {
        let mut v = VirtualSum::new();
        for part in &self.parts {
            v.add(part.dim, part.mult as i64);
        }
        v
    }

    pub fn to_partition(&self) -> Partition {
        Partition(
            self.parts
                .iter()
                .flat_map(|part| std::iter::repeat_n(part.dim, part.mult as usize))
                .collect(),
        )
    }

    pub fn from_partition(partition: &Partition, r: u64, s: u64, p: u64) -> Result<Self> {
        let mut parts: Vec<Part> = Vec::new();
        for &dim in partition.parts() {
            match parts.last_mut() {
                Some(last) if last.dim == dim => last.mult += 1,
                _ => parts.push(Part::new(dim, 1)),
            }
        }
        Self::new(r, s, p, parts)
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "0");
        }
        for (i, part) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if part.mult != 1 {
                write!(f, "{}", part.mult)?;
            }
            write!(f, "V{}", part.dim)?;
        }
        Ok(())
    }
}

/// Non-increasing list of positive parts `λ_1 ≥ … ≥ λ_b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize)]
pub struct Partition(Vec<u64>);

impl Partition {
    pub fn new(parts: Vec<u64>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return invalid(format!("partition {parts:?} is not non-increasing"));
        }
        if parts.contains(&0) {
            return invalid(format!("partition {parts:?} has a zero part"));
        }
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> u64 {
        self.0.iter().sum()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, part) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{part}")?;
        }
        Ok(())
    }
}

/// Green-ring element `Σ c_d V_d` with integer (possibly negative) coefficients.
///
/// `V_0` terms and zero coefficients are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VirtualSum {
    terms: BTreeMap<u64, i64>,
}

impl VirtualSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (u64, i64)>) -> Self {
        let mut v = Self::new();
        for (dim, mult) in terms {
            v.add(dim, mult);
        }
        v
    }

    /// Adds `mult · V_dim`.
    pub fn add(&mut self, dim: u64, mult: i64) {
        if dim == 0 || mult == 0 {
            return;
        }
        let entry = self.terms.entry(dim).or_insert(0);
        *entry += mult;
        if *entry == 0 {
            self.terms.remove(&dim);
        }
    }

    pub fn get(&self, dim: u64) -> i64 {
        self.terms.get(&dim).copied().unwrap_or(0)
    }

    /// Terms in increasing dimension order.
    pub fn terms(&self) -> impl Iterator<Item = (u64, i64)> + '_ {
        self.terms.iter().map(|(&d, &m)| (d, m))
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn direct_sum(&self, other: &VirtualSum) -> VirtualSum {
        let mut out = self.clone();
        for (dim, mult) in other.terms() {
            out.add(dim, mult);
        }
        out
    }

    pub fn scale(&self, c: i64) -> VirtualSum {
        VirtualSum::from_terms(self.terms().map(|(dim, mult)| (dim, c * mult)))
    }
}

/// Turns a fully cancelled virtual sum into the decomposition of `(r, s, p)`.
pub fn normalize(v: &VirtualSum, r: u64, s: u64, p: u64) -> Result<Decomposition> {
    let mut parts = Vec::with_capacity(v.terms.len());
    for (&dim, &mult) in v.terms.iter().rev() {
        if mult < 0 {
            return Err(Error::CancellationFailure { dim, mult });
        }
        parts.push(Part::new(dim, mult as u64));
    }
    Decomposition::new(r, s, p, parts)
}

fn check_p_power(d: &Decomposition, pn: u64) -> Result<()> {
    if d.p < 2 || log_of_power(pn, d.p).is_none() {
        return invalid(format!("{pn} is not a power of the characteristic {}", d.p));
    }
    Ok(())
}

/// Complements `λ(r, s, p)` in `p^n`, giving `λ(p^n − r, s, p)`:
/// `(s − b) V_{p^n} ⊕ V_{p^n − λ_b} ⊕ … ⊕ V_{p^n − λ_1}` with `b = min(r, s)`.
pub fn dual(d: &Decomposition, pn: u64) -> Result<Decomposition> {
    check_p_power(d, pn)?;
    let largest = d.largest().map_or(0, |part| part.dim);
    if pn < d.r.max(d.s).max(largest) {
        return invalid(format!(
            "dual needs p^n = {pn} >= max(r, s, μ_1) = {}",
            d.r.max(d.s).max(largest)
        ));
    }
    let b = d.r.min(d.s);
    let mut v = VirtualSum::new();
    v.add(pn, (d.s - b) as i64);
    for part in &d.parts {
        v.add(pn - part.dim, part.mult as i64);
    }
    normalize(&v, pn - d.r, d.s, d.p)
}

/// `λ(p^n − r, p^n − s, p)` from `λ(r, s, p)` for `1 ≤ r, s ≤ p^n`, via the
/// Green-ring identity `V_{p^n−r} ⊗ V_{p^n−s} = (p^n − r − s) V_{p^n} ⊕ V_r ⊗ V_s`.
///
/// For `r + s ≤ p^n` this adds `p^n − r − s` free summands. For `r + s > p^n`
/// the coefficient is negative and cancels against the largest part of
/// `λ(r, s, p)`, which is `p^n` with multiplicity `r + s − p^n`; the form
/// `max(p^n − r − s, 0) V_{p^n} ⊕ V_r ⊗ V_s` would be wrong there (it does not
/// even have the right dimension unless `r + s = p^n`).
pub fn reflect(d: &Decomposition, pn: u64) -> Result<Decomposition> {
    check_p_power(d, pn)?;
    if d.r == 0 || d.s == 0 || d.r > pn || d.s > pn {
        return invalid(format!("reflect needs 1 <= r, s <= p^n = {pn}"));
    }
    let mut v = d.to_virtual();
    v.add(pn, pn as i64 - d.r as i64 - d.s as i64);
    normalize(&v, pn - d.r, pn - d.s, d.p)
}
