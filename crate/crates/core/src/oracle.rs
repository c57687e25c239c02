//! Brute-force ground truth: build `N = J_r(1) ⊗ J_s(1) − I` over `F_p` and
//! read the Jordan block sizes off the ranks of its powers.
//!
//! The number of blocks of size at least `k` is `rank(N^{k−1}) − rank(N^k)`.

use crate::error::{integrity, invalid, Error, Result};
use crate::greenring::{Decomposition, Part};
use crate::numtheory::ensure_prime;

/// Default bound on `r·s`, the side length of the dense matrices.
pub const DEFAULT_CAP: u64 = 4096;

/// Dense matrix over the prime field `F_p`, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixModP {
    rows: usize,
    cols: usize,
    p: u64,
    data: Vec<u64>,
}

impl MatrixModP {
    pub fn zeros(rows: usize, cols: usize, p: u64) -> Self {
        MatrixModP {
            rows,
            cols,
            p,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize, p: u64) -> Self {
        let mut m = Self::zeros(n, n, p);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from rows, reducing every entry mod `p`.
    pub fn from_rows(rows: &[Vec<u64>], p: u64) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != cols) {
            return invalid("ragged rows");
        }
        Ok(MatrixModP {
            rows: rows.len(),
            cols,
            p,
            data: rows.iter().flatten().map(|&x| x % p).collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: u64) {
        self.data[i * self.cols + j] = value % self.p;
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        self.data
            .chunks(self.cols.max(1))
            .map(<[u64]>::to_vec)
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    fn check_same_field(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            return invalid(format!("moduli differ: {} vs {}", self.p, other.p));
        }
        Ok(())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_field(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return invalid("dimension mismatch in subtraction");
        }
        let p = self.p;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| (a + p - b) % p)
            .collect();
        Ok(MatrixModP { data, ..*self })
    }
}

/// `J_r(1)`: ones on the diagonal and superdiagonal.
pub fn jordan_block(r: usize, p: u64) -> MatrixModP {
    let mut m = MatrixModP::identity(r, p);
    for i in 1..r {
        m.set(i - 1, i, 1);
    }
    m
}

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &MatrixModP, b: &MatrixModP) -> Result<MatrixModP> {
    a.check_same_field(b)?;
    let p = a.p;
    let mut out = MatrixModP::zeros(a.rows * b.rows, a.cols * b.cols, p);
    for i in 0..a.rows {
        for j in 0..a.cols {
            let x = a.get(i, j);
            if x == 0 {
                continue;
            }
            for k in 0..b.rows {
                for l in 0..b.cols {
                    let y = b.get(k, l);
                    out.data[(i * b.rows + k) * out.cols + j * b.cols + l] =
                        ((x as u128 * y as u128) % p as u128) as u64;
                }
            }
        }
    }
    Ok(out)
}

/// `a · b`. Zero entries of `a` are skipped, so a sparse left factor is cheap.
pub fn mat_mul(a: &MatrixModP, b: &MatrixModP) -> Result<MatrixModP> {
    a.check_same_field(b)?;
    if a.cols != b.rows {
        return invalid(format!(
            "cannot multiply {}x{} by {}x{}",
            a.rows, a.cols, b.rows, b.cols
        ));
    }
    let p = a.p as u128;
    let mut out = MatrixModP::zeros(a.rows, b.cols, a.p);
    let mut acc = vec![0u128; b.cols];
    for i in 0..a.rows {
        acc.iter_mut().for_each(|x| *x = 0);
        for k in 0..a.cols {
            let x = a.get(i, k) as u128;
            if x == 0 {
                continue;
            }
            let row = &b.data[k * b.cols..(k + 1) * b.cols];
            for (slot, &y) in acc.iter_mut().zip(row) {
                *slot = (*slot + x * y as u128) % p;
            }
        }
        for (j, &x) in acc.iter().enumerate() {
            out.data[i * b.cols + j] = x as u64;
        }
    }
    Ok(out)
}

fn inverse_mod(a: u64, p: u64) -> u64 {
    let (mut base, mut exp, mut acc) = (a as u128, p - 2, 1u128);
    let p = p as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc as u64
}

/// Rank over `F_p` by Gaussian elimination on a copy of `m`.
pub fn rank_mod_p(m: &MatrixModP) -> usize {
    let p = m.p;
    let cols = m.cols;
    let mut rows: Vec<Vec<u64>> = m
        .data
        .chunks(cols.max(1))
        .filter(|row| row.iter().any(|&x| x != 0))
        .map(<[u64]>::to_vec)
        .collect();
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = inverse_mod(rows[rank][col], p);
        for x in rows[rank][col..].iter_mut() {
            *x = ((*x as u128 * inv as u128) % p as u128) as u64;
        }
        let (head, tail) = rows.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        for row in tail.iter_mut() {
            let factor = row[col];
            if factor == 0 {
                continue;
            }
            for (x, &y) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                let sub = ((factor as u128 * y as u128) % p as u128) as u64;
                *x = (*x + p - sub) % p;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// `rank(N^0), rank(N^1), …` down to the first zero, for
/// `N = J_r(1) ⊗ J_s(1) − I` over `F_p`.
pub fn rank_sequence(r: u64, s: u64, p: u64, cap: u64) -> Result<Vec<usize>> {
    ensure_prime(p)?;
    if r == 0 || s == 0 {
        return invalid("oracle needs r, s >= 1");
    }
    let size = r.saturating_mul(s);
    if size > cap {
        return Err(Error::ResourceLimit { size, cap });
    }
    let tensor = kron(&jordan_block(r as usize, p), &jordan_block(s as usize, p))?;
    let n = tensor.sub(&MatrixModP::identity(size as usize, p))?;
    let mut ranks = vec![size as usize];
    let mut power = n.clone();
    loop {
        let rank = rank_mod_p(&power);
        let previous = *ranks.last().unwrap();
        if rank >= previous {
            return integrity(format!(
                "rank sequence stalled at {rank} for ({r}, {s}, {p})"
            ));
        }
        ranks.push(rank);
        if rank == 0 {
            return Ok(ranks);
        }
        power = mat_mul(&n, &power)?;
    }
}

/// Jordan partition of `J_r(1) ⊗ J_s(1)` over `F_p`, from the rank sequence.
pub fn decompose_oracle_with_cap(r: u64, s: u64, p: u64, cap: u64) -> Result<Decomposition> {
    let ranks = rank_sequence(r, s, p, cap)?;
    // at_least[k - 1] = number of blocks of size >= k
    let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    if at_least.windows(2).any(|w| w[0] < w[1]) {
        return integrity(format!(
            "block counts {at_least:?} increase for ({r}, {s}, {p})"
        ));
    }
    let mut parts = Vec::new();
    for size in (1..=at_least.len()).rev() {
        let bigger = at_least.get(size).copied().unwrap_or(0);
        let exact = at_least[size - 1] - bigger;
        if exact > 0 {
            parts.push(Part::new(size as u64, exact as u64));
        }
    }
    Decomposition::new(r, s, p, parts)
}

pub fn decompose_oracle(r: u64, s: u64, p: u64) -> Result<Decomposition> {
    decompose_oracle_with_cap(r, s, p, DEFAULT_CAP)
}
