//! Renaud's recursive decomposition.
//!
//! For `r ≤ s ≤ p` the answer is explicit ([`base_case`]). Otherwise pick the
//! level `n` with `p^n ≤ s < p^{n+1}`, split `r = r_0 p^n + r_1` and
//! `s = s_0 p^n + s_1`, decompose `V_{r_1} ⊗ V_{s_1}` recursively and expand
//! it with [`reduce`]. The expansion can carry a negative coefficient on the
//! odd multiples of `p^n`; those terms always cancel against the shifted copies
//! of the largest sub-part, which is `p^n` whenever `r_1 + s_1 > p^n`.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use crate::error::{invalid, Result};
use crate::greenring::{normalize, Decomposition, Part, VirtualSum};
use crate::numtheory::{ensure_prime, prime_power};

/// Constants of one reduction step at level `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReductionParams {
    pub p: u64,
    pub n: u32,
    /// `p^n`
    pub pn: u64,
    pub r0: u64,
    pub r1: u64,
    pub s0: u64,
    pub s1: u64,
    pub c: u64,
    pub d1: u64,
    pub d2: u64,
}

/// Splits `r ≤ s < p^{n+1}` at `p^n` and computes `(c, d_1, d_2)`.
pub fn reduction_params(r: u64, s: u64, p: u64, n: u32) -> Result<ReductionParams> {
    ensure_prime(p)?;
    if n == 0 {
        return invalid("reduction level n must be at least 1");
    }
    if r == 0 || r > s {
        return invalid(format!("reduction needs 1 <= r <= s, got r={r}, s={s}"));
    }
    let pn = prime_power(p, n)?;
    let next = prime_power(p, n + 1)?;
    if s >= next {
        return invalid(format!("s = {s} is not below p^(n+1) = {next}"));
    }
    let (r0, r1) = (r / pn, r % pn);
    let (s0, s1) = (s / pn, s % pn);
    let (c, d1, d2) = if r0 + s0 < p {
        (0, r0, r0)
    } else {
        (r + s - next, p - s0 - 1, p - s0)
    };
    Ok(ReductionParams {
        p,
        n,
        pn,
        r0,
        r1,
        s0,
        s1,
        c,
        d1,
        d2,
    })
}

/// `V_r ⊗ V_s` for `1 ≤ r, s ≤ p`.
pub fn base_case(r: u64, s: u64, p: u64) -> Result<Decomposition> {
    ensure_prime(p)?;
    if r == 0 || s == 0 || r > p || s > p {
        return invalid(format!(
            "base case needs 1 <= r, s <= p, got ({r}, {s}, {p})"
        ));
    }
    let mut v = VirtualSum::new();
    if r + s <= p {
        for j in 1..=r.min(s) {
            v.add(r + s - 2 * j + 1, 1);
        }
    } else {
        v.add(p, (r + s - p) as i64);
        for j in 1..=p - r.max(s) {
            v.add(2 * p + 1 - r - s - 2 * j, 1);
        }
    }
    normalize(&v, r, s, p)
}

/// Assembles the (uncancelled) expansion of `V_r ⊗ V_s` from the
/// decomposition `sub` of `V_{r_1} ⊗ V_{s_1}`.
pub fn reduce(params: &ReductionParams, sub: &Decomposition) -> Result<VirtualSum> {
    let ReductionParams {
        p,
        pn,
        r0,
        r1,
        s0,
        s1,
        c,
        d1,
        d2,
        ..
    } = *params;
    let matches = (sub.r(), sub.s()) == (r1, s1) || (sub.r(), sub.s()) == (s1, r1);
    if !matches || sub.p() != p {
        return invalid(format!(
            "sub-decomposition is for ({}, {}, {}), expected ({r1}, {s1}, {p})",
            sub.r(),
            sub.s(),
            sub.p()
        ));
    }
    let offset = s0 - r0;
    let mut v = VirtualSum::new();
    v.add(pn * p, c as i64);
    for i in 1..=d1 {
        v.add((offset + 2 * i) * pn, r1.abs_diff(s1) as i64);
    }
    v.add(offset * pn, r1.saturating_sub(s1) as i64);
    let middle = pn as i64 - r1 as i64 - s1 as i64;
    for i in 1..=d2 {
        v.add((offset + 2 * i - 1) * pn, middle);
    }
    for &Part { dim: nu, mult } in sub.parts() {
        for i in 0..=d1 {
            v.add((offset + 2 * i) * pn + nu, mult as i64);
        }
        for i in 1..=d1 {
            v.add((offset + 2 * i) * pn - nu, mult as i64);
        }
    }
    Ok(v)
}

/// `V_{r_0 p^n} ⊗ V_{s_0 p^n}` from `sub = V_{r_0} ⊗ V_{s_0}`: every part is
/// scaled by `p^n` and every multiplicity by `p^n`.
pub fn scale_case(r: u64, s: u64, p: u64, n: u32, sub: &Decomposition) -> Result<Decomposition> {
    ensure_prime(p)?;
    let pn = prime_power(p, n)?;
    if !r.is_multiple_of(pn) || !s.is_multiple_of(pn) {
        return invalid(format!("{pn} does not divide both {r} and {s}"));
    }
    let (r0, s0) = (r / pn, s / pn);
    if r0 == 0 || s0 == 0 || r0 >= p || s0 >= p {
        return invalid(format!("quotients ({r0}, {s0}) must lie in 1..{p}"));
    }
    if (sub.r(), sub.s(), sub.p()) != (r0, s0, p) && (sub.s(), sub.r(), sub.p()) != (r0, s0, p) {
        return invalid("sub-decomposition context does not match the quotients");
    }
    let parts = sub
        .parts()
        .iter()
        .map(|part| Part::new(part.dim * pn, part.mult * pn))
        .collect();
    Decomposition::new(r, s, p, parts)
}

/// Memoizing Renaud solver. Results are cached on `(min(r, s), max(r, s), p)`.
#[derive(Debug, Default)]
pub struct Renaud {
    cache: RwLock<HashMap<(u64, u64, u64), Vec<Part>>>,
}

impl Renaud {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn decompose(&self, r: u64, s: u64, p: u64) -> Result<Decomposition> {
        ensure_prime(p)?;
        self.solve(r, s, p)
    }

    fn solve(&self, r: u64, s: u64, p: u64) -> Result<Decomposition> {
        if r == 0 || s == 0 {
            return Decomposition::empty(r, s, p);
        }
        let key = (r.min(s), r.max(s), p);
        let cached = self.cache.read().unwrap().get(&key).cloned();
        let parts = match cached {
            Some(parts) => parts,
            None => {
                let parts = self.solve_sorted(key.0, key.1, p)?.parts().to_vec();
                self.cache.write().unwrap().insert(key, parts.clone());
                parts
            }
        };
        Decomposition::new(r, s, p, parts)
    }

    fn solve_sorted(&self, r: u64, s: u64, p: u64) -> Result<Decomposition> {
        if s <= p {
            return base_case(r, s, p);
        }
        let mut n = 1;
        while prime_power(p, n + 1)? <= s {
            n += 1;
        }
        let params = reduction_params(r, s, p, n)?;
        let sub = self.solve(params.r1, params.s1, p)?;
        normalize(&reduce(&params, &sub)?, r, s, p)
    }
}

fn shared() -> &'static Renaud {
    static SOLVER: OnceLock<Renaud> = OnceLock::new();
    SOLVER.get_or_init(Renaud::new)
}

/// `λ(r, s, p)` by Renaud's algorithm, using a process-wide cache.
pub fn decompose_renaud(r: u64, s: u64, p: u64) -> Result<Decomposition> {
    if r == 0 || s == 0 {
        return invalid("decompose needs r, s >= 1");
    }
    shared().decompose(r, s, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn text(d: Result<Decomposition>) -> String {
        d.unwrap().to_string()
    }

    #[test]
    fn base_case_examples() {
        assert_eq!(text(base_case(2, 3, 7)), "V4 + V2");
        assert_eq!(text(base_case(2, 2, 3)), "V3 + V1");
        assert_eq!(text(base_case(3, 4, 5)), "2V5 + V2");
        assert_eq!(text(base_case(4, 3, 5)), "2V5 + V2");
        assert_eq!(text(base_case(5, 5, 5)), "5V5");
        assert!(base_case(6, 2, 5).is_err());
    }

    #[test]
    fn params_examples() {
        let q = reduction_params(7, 7, 2, 2).unwrap();
        assert_eq!((q.r0, q.s0, q.r1, q.s1), (1, 1, 3, 3));
        assert_eq!((q.c, q.d1, q.d2), (6, 0, 1));
        let q = reduction_params(3, 6, 2, 2).unwrap();
        assert_eq!((q.r0, q.s0, q.r1, q.s1), (0, 1, 3, 2));
        assert_eq!((q.c, q.d1, q.d2), (0, 0, 0));
        let q = reduction_params(5, 6, 2, 2).unwrap();
        assert_eq!((q.r0, q.s0, q.r1, q.s1), (1, 1, 1, 2));
        assert_eq!((q.c, q.d1, q.d2), (3, 0, 1));
        assert!(reduction_params(6, 5, 2, 2).is_err());
        assert!(reduction_params(3, 8, 2, 2).is_err());
        assert!(reduction_params(1, 1, 2, 0).is_err());
    }

    #[test]
    fn reduce_examples() {
        let sub = base_case(3, 3, 5).unwrap();
        let q = reduction_params(7, 7, 2, 2).unwrap();
        assert!(reduce(&q, &sub).is_err());

        let sub = Renaud::new().decompose(3, 3, 2).unwrap();
        assert_eq!(sub.to_string(), "2V4 + V1");
        let v = reduce(&q, &sub).unwrap();
        assert_eq!(v, VirtualSum::from_terms([(8, 6), (1, 1)]));
        assert_eq!(normalize(&v, 7, 7, 2).unwrap().to_string(), "6V8 + V1");

        let q = reduction_params(5, 6, 2, 2).unwrap();
        let sub = base_case(1, 2, 2).unwrap();
        assert_eq!(
            text(normalize(&reduce(&q, &sub).unwrap(), 5, 6, 2)),
            "3V8 + V4 + V2"
        );

        let q = reduction_params(2, 3, 2, 1).unwrap();
        let sub = Decomposition::empty(0, 1, 2).unwrap();
        assert_eq!(
            text(normalize(&reduce(&q, &sub).unwrap(), 2, 3, 2)),
            "V4 + V2"
        );
    }

    #[test]
    fn scale_case_examples() {
        let v1 = base_case(1, 1, 2).unwrap();
        assert_eq!(text(scale_case(4, 4, 2, 2, &v1)), "4V4");
        let v1 = base_case(1, 1, 3).unwrap();
        assert_eq!(text(scale_case(9, 9, 3, 2, &v1)), "9V9");
        let sub = base_case(2, 2, 3).unwrap();
        assert_eq!(text(scale_case(6, 6, 3, 1, &sub)), "3V9 + 3V3");
        assert!(scale_case(6, 5, 3, 1, &sub).is_err());
    }

    #[test]
    fn renaud_examples() {
        assert_eq!(text(decompose_renaud(5, 5, 2)), "2V8 + 2V4 + V1");
        assert_eq!(text(decompose_renaud(1, 13, 3)), "V13");
        assert_eq!(text(decompose_renaud(3, 6, 2)), "V8 + V6 + V4");
        assert_eq!(text(decompose_renaud(6, 3, 2)), "V8 + V6 + V4");
        assert_eq!(decompose_renaud(6, 3, 2).unwrap().r(), 6);
        assert!(decompose_renaud(0, 3, 2).is_err());
        assert!(decompose_renaud(2, 3, 6).is_err());
    }

    #[test]
    fn large_characteristic_shape() {
        for r in 1..=8u64 {
            for s in r..=8 {
                let p = [2u64, 3, 5, 7, 11, 13, 17]
                    .into_iter()
                    .find(|&p| p + 1 >= r + s)
                    .unwrap();
                let d = decompose_renaud(r, s, p).unwrap();
                let expected: Vec<u64> = (1..=r).map(|i| r + s + 1 - 2 * i).collect();
                assert_eq!(d.to_partition().parts(), &expected[..]);
            }
        }
    }

    #[test]
    fn fresh_solver_matches_shared_cache() {
        let fresh = Renaud::new();
        for p in [2, 3, 5] {
            for r in 1..=30 {
                for s in 1..=30 {
                    assert_eq!(fresh.decompose(r, s, p), decompose_renaud(r, s, p));
                }
            }
        }
    }
}
