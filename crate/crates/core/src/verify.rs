//! Structural checks on finished decompositions and cross-algorithm sweeps.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::closedform::{applicable, decompose_closed, largest_part_overflow, smallest_part};
use crate::error::{Error, Result};
use crate::greenring::{dual, reflect, Decomposition};
use crate::iima::{
    decompose_iima, delta_sequence, mults_to_parts, parts_recurrence, parts_to_mults,
};
use crate::numtheory::{p_part, prime_power};
use crate::oracle::decompose_oracle_with_cap;
use crate::renaud::{decompose_renaud, scale_case};

/// `λ(r, s, p)` by Renaud, with the zero module for `rs = 0`.
fn lambda(r: u64, s: u64, p: u64) -> Result<Decomposition> {
    if r == 0 || s == 0 {
        Decomposition::empty(r, s, p)
    } else {
        decompose_renaud(r, s, p)
    }
}

/// `max(r_p, s_p) = min_i (μ_i)_p`.
pub fn check_thm1(d: &Decomposition) -> bool {
    let p = d.p();
    let lhs = match (p_part(d.r(), p), p_part(d.s(), p)) {
        (Ok(a), Ok(b)) => a.max(b),
        _ => return false,
    };
    let rhs: Result<Vec<u64>> = d.parts().iter().map(|part| p_part(part.dim, p)).collect();
    matches!(rhs.map(|parts| parts.into_iter().min()), Ok(Some(x)) if x == lhs)
}

/// Every part occurring more than once is divisible by `p`.
pub fn check_thm2(d: &Decomposition) -> bool {
    d.p() >= 2
        && d.parts()
            .iter()
            .all(|part| part.mult == 1 || part.dim % d.p() == 0)
}

/// Multiplicities and parts determine each other.
pub fn check_thm5_roundtrip(d: &Decomposition) -> bool {
    let (dims, mults) = (d.dims(), d.mults());
    let forward = mults_to_parts(&mults, d.r(), d.s());
    let backward = parts_to_mults(&dims, d.r(), d.s());
    matches!((forward, backward), (Ok(f), Ok(b)) if f == dims && b == mults)
}

/// `p ∤ μ_1` implies `r + s ≢ 1 (mod p)`.
pub fn check_consequence_thm2_thm5(d: &Decomposition) -> bool {
    let p = d.p();
    match d.largest() {
        Some(first) if p >= 2 => first.dim % p == 0 || (d.r() + d.s()) % p != 1,
        _ => false,
    }
}

fn same(a: &Result<Decomposition>, b: &Result<Decomposition>) -> bool {
    matches!((a, b), (Ok(x), Ok(y)) if x == y)
}

/// Complementing `λ(r, s, p)` in `p^n` gives `λ(p^n − r, s, p)`.
pub fn check_duality(r: u64, s: u64, p: u64, n: u32) -> bool {
    let Ok(pn) = prime_power(p, n) else {
        return false;
    };
    if r == 0 || s == 0 || r > pn || s > pn {
        return false;
    }
    let lhs = lambda(r, s, p).and_then(|d| dual(&d, pn));
    same(&lhs, &lambda(pn - r, s, p))
}

/// [`reflect`] of `λ(r, s, p)` equals `λ(p^n − r, p^n − s, p)`, and so does
/// dualising in each argument in turn.
pub fn check_reflection(r: u64, s: u64, p: u64, n: u32) -> bool {
    let Ok(pn) = prime_power(p, n) else {
        return false;
    };
    if r == 0 || s == 0 || r > pn || s > pn {
        return false;
    }
    let Ok(d) = lambda(r, s, p) else {
        return false;
    };
    let expected = lambda(pn - r, pn - s, p);
    let reflected = reflect(&d, pn);
    // dual in r, swap, dual in s, swap back
    let twice = dual(&d, pn).and_then(|half| {
        if half.is_empty() {
            Decomposition::empty(pn - r, pn - s, p)
        } else {
            dual(&half.swapped(), pn).map(|full| full.swapped())
        }
    });
    same(&reflected, &expected) && same(&twice, &expected)
}

/// Smallest `n ≥ 0` with `p^n ≥ m`.
fn covering_level(m: u64, p: u64) -> Result<u32> {
    let mut n = 0;
    while prime_power(p, n)? < m {
        n += 1;
    }
    Ok(n)
}

#[derive(Debug, Clone, Copy, Default)]
pub struct CrossCheckOptions {
    /// Run the matrix oracle when `r·s` is at most this.
    pub oracle_cap: Option<u64>,
}

/// Outcome of [`cross_check`] for one `(r, s, p)`.
#[derive(Debug, Clone, Serialize)]
pub struct CrossCheckReport {
    pub r: u64,
    pub s: u64,
    pub p: u64,
    /// Partition produced by each algorithm that ran.
    pub algorithms: BTreeMap<String, Vec<u64>>,
    pub checks: BTreeMap<String, bool>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub diagnostics: Vec<String>,
    #[serde(skip)]
    pub value: Option<Decomposition>,
}

impl CrossCheckReport {
    pub fn passed(&self) -> bool {
        self.diagnostics.is_empty() && self.checks.values().all(|&ok| ok)
    }

    pub fn failed_checks(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|(_, &ok)| !ok)
            .map(|(name, _)| name.as_str())
            .collect()
    }

    pub fn ensure_ok(&self) -> Result<()> {
        if self.passed() {
            return Ok(());
        }
        let mut msg = format!(
            "({}, {}, {}) failed {:?}",
            self.r,
            self.s,
            self.p,
            self.failed_checks()
        );
        for line in &self.diagnostics {
            msg.push_str("; ");
            msg.push_str(line);
        }
        Err(Error::IntegrityFailure(msg))
    }

    fn record(&mut self, name: &str, ok: bool) {
        self.checks.insert(name.to_string(), ok);
    }
}

/// Runs every applicable algorithm on `(r, s, p)`, compares each against
/// Renaud, and applies every structural checker to the result.
pub fn cross_check(r: u64, s: u64, p: u64, options: &CrossCheckOptions) -> CrossCheckReport {
    let mut report = CrossCheckReport {
        r,
        s,
        p,
        algorithms: BTreeMap::new(),
        checks: BTreeMap::new(),
        diagnostics: Vec::new(),
        value: None,
    };
    let reference = match decompose_renaud(r, s, p) {
        Ok(d) => d,
        Err(e) => {
            report.record("renaud", false);
            report.diagnostics.push(format!("renaud: {e}"));
            return report;
        }
    };
    report
        .algorithms
        .insert("renaud".into(), reference.to_partition().parts().to_vec());

    let (lo, hi) = (r.min(s), r.max(s));
    let mut others: Vec<(String, Result<Decomposition>)> = vec![
        ("iima".into(), decompose_iima(r, s, p)),
        (
            "iima_recurrence".into(),
            delta_sequence(lo, hi, p)
                .and_then(|ds| Decomposition::from_partition(&parts_recurrence(&ds), r, s, p)),
        ),
    ];
    for form in applicable(r, s, p) {
        others.push((form.name().into(), decompose_closed(form, r, s, p)));
    }
    if let Some((n, r0, s0)) = scaled_split(r, s, p) {
        let scaled = decompose_renaud(r0, s0, p).and_then(|sub| scale_case(r, s, p, n, &sub));
        others.push(("scaled".into(), scaled));
    }
    if let Some(cap) = options.oracle_cap {
        if r.saturating_mul(s) <= cap {
            others.push(("oracle".into(), decompose_oracle_with_cap(r, s, p, cap)));
        }
    }
    for (name, result) in others {
        match result {
            Ok(d) => {
                let agree = d == reference;
                if !agree {
                    report
                        .diagnostics
                        .push(format!("{name} gave {d}, renaud gave {reference}"));
                }
                report
                    .algorithms
                    .insert(name.clone(), d.to_partition().parts().to_vec());
                report.record(&format!("renaud={name}"), agree);
            }
            Err(e) => {
                report.record(&format!("renaud={name}"), false);
                report.diagnostics.push(format!("{name}: {e}"));
            }
        }
    }

    report.record("thm1", check_thm1(&reference));
    report.record("thm2", check_thm2(&reference));
    report.record("thm5_roundtrip", check_thm5_roundtrip(&reference));
    report.record("consequence", check_consequence_thm2_thm5(&reference));

    match covering_level(hi, p) {
        Ok(n) if n >= 1 => {
            report.record("duality", check_duality(r, s, p, n));
            report.record("reflection", check_reflection(r, s, p, n));
            let pn = p.pow(n);
            if r + s > pn {
                let expected = largest_part_overflow(r, s, p, n).ok();
                let actual = reference.largest().map(|part| (part.dim, part.mult));
                report.record("largest_part", expected.is_some() && expected == actual);
            }
        }
        Ok(_) => {}
        Err(e) => report.diagnostics.push(format!("level: {e}")),
    }
    if r == s {
        let expected = smallest_part(r, p).ok();
        let actual = reference.smallest().map(|part| (part.dim, part.mult));
        report.record("smallest_part", expected.is_some() && expected == actual);
    }

    report.value = Some(reference);
    report
}

// (n, r/p^n, s/p^n) when both quotients lie in 1..p for some n >= 1.
fn scaled_split(r: u64, s: u64, p: u64) -> Option<(u32, u64, u64)> {
    let mut n = 1;
    let mut pn = p;
    while pn <= r.max(s) {
        if r.is_multiple_of(pn) && s.is_multiple_of(pn) && r / pn < p && s / pn < p {
            return Some((n, r / pn, s / pn));
        }
        n += 1;
        pn = pn.checked_mul(p)?;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::greenring::Part;

    fn dec(r: u64, s: u64, p: u64, parts: &[(u64, u64)]) -> Decomposition {
        Decomposition::new(
            r,
            s,
            p,
            parts.iter().map(|&(d, m)| Part::new(d, m)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn theorem_checkers_on_examples() {
        let d55 = dec(5, 5, 2, &[(8, 2), (4, 2), (1, 1)]);
        let d232 = dec(2, 3, 2, &[(4, 1), (2, 1)]);
        let d11 = dec(1, 1, 5, &[(1, 1)]);
        let d77 = dec(7, 7, 2, &[(8, 6), (1, 1)]);
        let d1s = dec(1, 9, 3, &[(9, 1)]);
        let d56 = dec(5, 6, 2, &[(8, 3), (4, 1), (2, 1)]);
        let d237 = dec(2, 3, 7, &[(4, 1), (2, 1)]);
        for d in [&d55, &d232, &d11, &d77, &d1s, &d56, &d237] {
            assert!(check_thm1(d), "{d}");
            assert!(check_thm2(d), "{d}");
            assert!(check_thm5_roundtrip(d), "{d}");
            assert!(check_consequence_thm2_thm5(d), "{d}");
        }
        for p in [2, 3, 5, 7] {
            assert!(check_consequence_thm2_thm5(&dec(1, 1, p, &[(1, 1)])));
        }
    }

    #[test]
    fn checkers_reject_wrong_decompositions() {
        // A valid-shaped but wrong answer for (2, 2, 2): the char-0 value.
        let wrong = dec(2, 2, 2, &[(3, 1), (1, 1)]);
        assert!(!check_thm1(&wrong));
        // (3, 3, 2) with 3 copies of an odd part
        let wrong = dec(3, 3, 2, &[(3, 3)]);
        assert!(!check_thm2(&wrong));
        let wrong = dec(3, 3, 2, &[(4, 1), (3, 1), (2, 1)]);
        assert!(!check_thm5_roundtrip(&wrong));
    }

    #[test]
    fn duality_examples() {
        assert!(check_duality(5, 5, 2, 3));
        assert!(check_duality(3, 3, 5, 1));
        assert!(check_duality(8, 3, 2, 3));
        assert!(!check_duality(9, 3, 2, 3));
        assert!(check_reflection(1, 2, 2, 3));
        assert!(check_reflection(4, 2, 2, 2));
    }

    #[test]
    fn cross_check_examples() {
        let opts = CrossCheckOptions {
            oracle_cap: Some(4096),
        };
        let report = cross_check(5, 6, 2, &opts);
        assert!(report.passed(), "{:?}", report);
        assert_eq!(report.value.as_ref().unwrap().to_string(), "3V8 + V4 + V2");
        assert!(report.algorithms.contains_key("oracle"));
        assert!(report.algorithms.contains_key("char2_rr1"));

        let report = cross_check(1, 1, 2, &opts);
        assert!(report.passed());
        assert_eq!(report.value.unwrap().to_string(), "V1");

        let report = cross_check(2, 3, 7, &opts);
        assert!(report.passed());
        assert_eq!(report.algorithms["large_p"], vec![4, 2]);

        let report = cross_check(6, 6, 3, &opts);
        assert!(report.passed());
        assert_eq!(report.algorithms["scaled"], vec![9, 9, 9, 3, 3, 3]);
    }

    #[test]
    fn report_is_deterministic_json() {
        let opts = CrossCheckOptions::default();
        let a = serde_json::to_string(&cross_check(7, 9, 3, &opts)).unwrap();
        let b = serde_json::to_string(&cross_check(7, 9, 3, &opts)).unwrap();
        assert_eq!(a, b);
        assert!(a.starts_with(r#"{"r":7,"s":9,"p":3,"algorithms":{"#));
    }

    #[test]
    fn failing_report_carries_diagnostics() {
        let report = cross_check(3, 3, 4, &CrossCheckOptions::default());
        assert!(!report.passed());
        assert!(report.ensure_ok().is_err());
    }
}
