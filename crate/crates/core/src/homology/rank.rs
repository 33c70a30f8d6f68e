//! Exact linear algebra: fraction-free rank, modular rank probes, and
//! rational reduced row echelon form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Primes below `2^61` for rank probes.
pub const DEFAULT_PRIMES: [u64; 3] = [2_305_843_009_213_693_951, 2_305_843_009_213_693_921, 1_152_921_504_606_846_883];

/// Rank by Bareiss elimination; every intermediate entry is a minor, so
/// divisions are exact.
pub fn bareiss_rank(m: &[Vec<BigInt>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| !a[r][col].is_zero()) else { continue };
        a.swap(rank, pivot);
        for r in rank + 1..rows {
            for c in col + 1..cols {
                let v = &a[rank][col] * &a[r][c] - &a[r][col] * &a[rank][c];
                a[r][c] = v / &prev;
            }
            a[r][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

/// Rank over `Z/p`. Never exceeds the rational rank.
pub fn modular_rank(m: &[Vec<BigInt>], p: u64) -> usize {
    let pb = BigInt::from(p);
    let mut a: Vec<Vec<u64>> = m
        .iter()
        .map(|row| row.iter().map(|x| x.mod_floor(&pb).to_u64().expect("reduced below p")).collect())
        .collect();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| a[r][col] != 0) else { continue };
        a.swap(rank, pivot);
        let inv = pow_mod(a[rank][col], p - 2, p);
        for r in rank + 1..rows {
            if a[r][col] == 0 {
                continue;
            }
            let f = mul_mod(a[r][col], inv, p);
            for c in col..cols {
                let sub = mul_mod(f, a[rank][c], p);
                a[r][c] = (a[r][c] + p - sub) % p;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Reduced row echelon form over the rationals; returns pivot columns.
pub fn rref(m: &mut [Vec<BigRational>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][col].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][col].recip();
        for c in col..cols {
            m[r][c] = &m[r][c] * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for c in col..cols {
                    let sub = &f * &m[r][c];
                    m[i][c] -= sub;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

fn to_rational(m: &[Vec<BigInt>]) -> Vec<Vec<BigRational>> {
    m.iter().map(|row| row.iter().map(|x| BigRational::from_integer(x.clone())).collect()).collect()
}

/// Basis of the null space `{x : m x = 0}`, one vector per free column,
/// scaled to coprime integers with a positive leading entry.
pub fn kernel(m: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    let mut a = to_rational(m);
    let pivots = rref(&mut a);
    let mut out = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut x = vec![BigRational::zero(); cols];
        x[free] = BigRational::one();
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = -a[row][free].clone();
        }
        out.push(primitive(&x));
    }
    out
}

/// Clears denominators and common factors.
pub fn primitive(x: &[BigRational]) -> Vec<BigInt> {
    let lcm = x.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = x.iter().map(|q| (q * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if g.is_zero() {
        return ints;
    }
    let lead_negative = ints.iter().find(|v| !v.is_zero()).is_some_and(|v| v.is_negative());
    ints.into_iter().map(|v| if lead_negative { -v / &g } else { v / &g }).collect()
}

/// Some `x` with `m x = b`, or `None` if the system is inconsistent.
pub fn solve(m: &[Vec<BigInt>], cols: usize, b: &[BigRational]) -> Option<Vec<BigRational>> {
    let mut aug: Vec<Vec<BigRational>> = to_rational(m)
        .into_iter()
        .zip(b)
        .map(|(mut row, rhs)| {
            row.push(rhs.clone());
            row
        })
        .collect();
    if aug.is_empty() {
        return Some(vec![BigRational::zero(); cols]);
    }
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![BigRational::zero(); cols];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[row][cols].clone();
    }
    Some(x)
}
