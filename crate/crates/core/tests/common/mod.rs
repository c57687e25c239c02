use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

/// Direct fraction-free elimination of the `k × k` matrix `C(r+s−2k, s+i−j−k)`.
pub fn bareiss_det(r: u64, s: u64, k: u64) -> BigUint {
    let k = k as usize;
    let binom = |m: i64, n: i64| -> BigInt {
        if n < 0 || n > m {
            return BigInt::zero();
        }
        let mut acc = BigInt::one();
        for i in 0..n {
            acc = acc * (m - i) / (i + 1);
        }
        acc
    };
    let m = (r + s) as i64 - 2 * k as i64;
    let mut a: Vec<Vec<BigInt>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| binom(m, s as i64 + i as i64 - j as i64 - k as i64))
                .collect()
        })
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for c in 0..k {
        if a[c][c].is_zero() {
            match (c + 1..k).find(|&i| !a[i][c].is_zero()) {
                Some(i) => {
                    a.swap(c, i);
                    sign = -sign;
                }
                None => return BigUint::zero(),
            }
        }
        for i in c + 1..k {
            for j in c + 1..k {
                a[i][j] = (&a[i][j] * &a[c][c] - &a[i][c] * &a[c][j]) / &prev;
            }
        }
        prev = a[c][c].clone();
    }
    let det = if k == 0 {
        BigInt::one()
    } else {
        sign * &a[k - 1][k - 1]
    };
    assert!(!det.is_negative());
    det.to_biguint().unwrap()
}
