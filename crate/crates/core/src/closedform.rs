//! Closed forms and fast paths.
//!
//! In characteristic 2, write `r = 2^{e_1} − 2^{e_2} + …` as its
//! consecutive-ones expansion with partial sums `r_j`. Then
//! `V_r ⊗ V_r = ⊕ (2^{e_i} − 2r_i) V_{2^{e_i}}`, which follows by peeling off
//! one term at a time: `λ(r, r) = (2^{e_1} − 2r_1) V_{2^{e_1}} ⊕ λ(r_1, r_1)`.
//!
//! For `V_r ⊗ V_{r+1}` two terms are peeled per step:
//! `λ(r, r+1) = (2^{e_1} − 2r_1 + 1) V_{2^{e_1}} ⊕ (2^{e_2} − 2r_2 − 1) V_{2^{e_2}} ⊕ λ(r_2, r_2+1)`,
//! ending at `λ(0, 1) = 0` or `λ(2^e, 2^e + 1) = V_{2^{e+1}} ⊕ (2^e − 1) V_{2^e}`.
//! The tempting one-shot form with multiplicities `2^{e_i} − 2r_i + (−1)^{i−1}`
//! is wrong: at `r = 1` it predicts `2V1` instead of `V2`, and at `r = 5` it
//! predicts `3V8 + V4 + 2V1` instead of `3V8 + V4 + V2`.

use crate::error::{integrity, invalid, Result};
use crate::greenring::{normalize, Decomposition, Part, VirtualSum};
use crate::numtheory::{cons_ones_expansion, ensure_prime, p_part, prime_power};

/// `λ(r, s, p)` when `p = 0` or `p ≥ r + s − 1`: parts `r + s + 1 − 2i`.
pub fn decompose_large_p(r: u64, s: u64, p: u64) -> Result<Decomposition> {
    if r == 0 || s == 0 {
        return invalid("decompose needs r, s >= 1");
    }
    if p != 0 {
        ensure_prime(p)?;
        if p + 1 < r + s {
            return invalid(format!("p = {p} is below r + s - 1 = {}", r + s - 1));
        }
    }
    let parts = (1..=r.min(s))
        .map(|i| Part::new(r + s + 1 - 2 * i, 1))
        .collect();
    Decomposition::new(r, s, p, parts)
}

/// `λ(r, r, 2)`.
pub fn decompose_rr_char2(r: u64) -> Result<Decomposition> {
    let expansion = cons_ones_expansion(r)?;
    let mut v = VirtualSum::new();
    for (i, &e) in expansion.exponents.iter().enumerate() {
        let pow = 1u64 << e;
        let mult = pow as i64 - 2 * expansion.partial_sums[i + 1] as i64;
        if mult < 0 {
            return integrity(format!(
                "negative multiplicity {mult} on V{pow} for r = {r}"
            ));
        }
        v.add(pow, mult);
    }
    normalize(&v, r, r, 2)
}

fn rr1_terms(r: u64, acc: &mut VirtualSum) -> Result<()> {
    if r == 0 {
        return Ok(());
    }
    let expansion = cons_ones_expansion(r)?;
    let e = &expansion.exponents;
    let sums = &expansion.partial_sums;
    if e.len() == 1 {
        let pow = 1u64 << e[0];
        acc.add(2 * pow, 1);
        acc.add(pow, pow as i64 - 1);
        return Ok(());
    }
    let (pow1, pow2) = (1u64 << e[0], 1u64 << e[1]);
    let first = pow1 as i64 - 2 * sums[1] as i64 + 1;
    let second = pow2 as i64 - 2 * sums[2] as i64 - 1;
    if first < 0 || second < 0 {
        return integrity(format!("negative multiplicity while peeling r = {r}"));
    }
    acc.add(pow1, first);
    acc.add(pow2, second);
    rr1_terms(sums[2], acc)
}

/// `λ(r, r + 1, 2)`.
pub fn decompose_rr1_char2(r: u64) -> Result<Decomposition> {
    if r == 0 {
        return invalid("r must be at least 1");
    }
    let mut v = VirtualSum::new();
    rr1_terms(r, &mut v)?;
    normalize(&v, r, r + 1, 2)
}

/// Smallest part of `λ(r, r, p)` and its multiplicity; both equal `r_p`.
pub fn smallest_part(r: u64, p: u64) -> Result<(u64, u64)> {
    let rp = p_part(r, p)?;
    Ok((rp, rp))
}

/// Largest part of `λ(r_1, s_1, p)` and its multiplicity when
/// `r_1, s_1 ≤ p^n < r_1 + s_1`: it is `p^n`, `r_1 + s_1 − p^n` times.
pub fn largest_part_overflow(r1: u64, s1: u64, p: u64, n: u32) -> Result<(u64, u64)> {
    ensure_prime(p)?;
    let pn = prime_power(p, n)?;
    if r1 == 0 || s1 == 0 || r1 > pn || s1 > pn || r1 + s1 <= pn {
        return invalid(format!("need r1, s1 <= {pn} < r1 + s1, got ({r1}, {s1})"));
    }
    Ok((pn, r1 + s1 - pn))
}

/// Which closed form covers `(r, s, p)`, if any.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedForm {
    LargeP,
    SquareChar2,
    AdjacentChar2,
}

impl ClosedForm {
    pub fn name(self) -> &'static str {
        match self {
            ClosedForm::LargeP => "large_p",
            ClosedForm::SquareChar2 => "char2_rr",
            ClosedForm::AdjacentChar2 => "char2_rr1",
        }
    }
}

/// Closed forms that apply to `(r, s, p)`, in order of preference.
pub fn applicable(r: u64, s: u64, p: u64) -> Vec<ClosedForm> {
    let mut forms = Vec::new();
    if r == 0 || s == 0 {
        return forms;
    }
    if p + 1 >= r + s {
        forms.push(ClosedForm::LargeP);
    }
    if p == 2 && r == s {
        forms.push(ClosedForm::SquareChar2);
    }
    if p == 2 && r.abs_diff(s) == 1 {
        forms.push(ClosedForm::AdjacentChar2);
    }
    forms
}

/// Evaluates `form` for `(r, s, p)`, keeping the caller's order of `r, s`.
pub fn decompose_closed(form: ClosedForm, r: u64, s: u64, p: u64) -> Result<Decomposition> {
    if !applicable(r, s, p).contains(&form) {
        return invalid(format!("{} does not apply to ({r}, {s}, {p})", form.name()));
    }
    let d = match form {
        ClosedForm::LargeP => return decompose_large_p(r, s, p),
        ClosedForm::SquareChar2 => decompose_rr_char2(r)?,
        ClosedForm::AdjacentChar2 => decompose_rr1_char2(r.min(s))?,
    };
    Ok(if d.r() == r { d } else { d.swapped() })
}
