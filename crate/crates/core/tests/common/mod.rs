//! Dense reference implementations that share nothing with the library's
//! sparse elimination: scalars are re-read from their printed form.

#![allow(dead_code)]

use std::str::FromStr;

use comonoid::exactla::homology::betti;
use comonoid::{ChainComplex, Field, Matrix};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

pub fn fields() -> impl Strategy<Value = Field> {
    prop_oneof![
        Just(Field::Rationals),
        Just(Field::Prime(2)),
        Just(Field::Prime(3)),
        Just(Field::Prime(5))
    ]
}

pub fn prime_fields() -> impl Strategy<Value = Field> {
    prop_oneof![
        Just(Field::Prime(2)),
        Just(Field::Prime(3)),
        Just(Field::Prime(5))
    ]
}

#[derive(Clone, Debug)]
pub enum Dense {
    Q(Vec<Vec<BigRational>>),
    P(u64, Vec<Vec<u64>>),
}

pub fn residue(p: u64, s: &str) -> u64 {
    let v = i64::from_str(s).expect("residue");
    v.rem_euclid(p as i64) as u64
}

pub fn dense(m: &Matrix) -> Dense {
    let field = m.field();
    let (r, c) = (m.rows(), m.cols());
    match field {
        Field::Rationals => {
            let mut out = vec![vec![BigRational::zero(); c]; r];
            for (i, j, s) in m.triplets() {
                out[i][j] = BigRational::from_str(&field.format(s)).expect("rational");
            }
            Dense::Q(out)
        }
        Field::Prime(p) => {
            let p = p as u64;
            let mut out = vec![vec![0u64; c]; r];
            for (i, j, s) in m.triplets() {
                out[i][j] = residue(p, &field.format(s));
            }
            Dense::P(p, out)
        }
    }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

pub fn rank_mod(p: u64, mut a: Vec<Vec<u64>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..rows).find(|&i| a[i][col] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = pow_mod(a[rank][col], p - 2, p);
        for i in 0..rows {
            if i != rank && a[i][col] != 0 {
                let f = a[i][col] * inv % p;
                for j in 0..cols {
                    a[i][j] = (a[i][j] + p * p - f * a[rank][j] % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn rank_q(mut a: Vec<Vec<BigRational>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(rank, piv);
        let pivot = a[rank][col].clone();
        for i in 0..rows {
            if i != rank && !a[i][col].is_zero() {
                let f = &a[i][col] / &pivot;
                for j in 0..cols {
                    let t = &f * &a[rank][j];
                    a[i][j] -= t;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn dense_rank(m: &Matrix) -> usize {
    match dense(m) {
        Dense::Q(a) => rank_q(a),
        Dense::P(p, a) => rank_mod(p, a),
    }
}

/// `dim X_n − rank d_n − rank d_{n+1}` from dense ranks.
pub fn dense_betti(x: &ChainComplex, n: i32) -> usize {
    x.dim(n) - dense_rank(&x.differential(n)) - dense_rank(&x.differential(n + 1))
}

pub fn dense_is_zero(m: &Matrix) -> bool {
    match dense(m) {
        Dense::Q(a) => a.iter().flatten().all(|v| v.is_zero()),
        Dense::P(_, a) => a.iter().flatten().all(|v| *v == 0),
    }
}

/// Every vector of the span of `basis` over `F_p`, by enumerating all
/// coefficient tuples.
pub fn enumerate_span(p: u64, basis: &[Vec<u64>], len: usize) -> Vec<Vec<u64>> {
    let k = basis.len() as u32;
    let mut out = Vec::new();
    for code in 0..p.pow(k) {
        let mut v = vec![0u64; len];
        let mut c = code;
        for b in basis {
            let coeff = c % p;
            c /= p;
            for (x, y) in v.iter_mut().zip(b) {
                *x = (*x + coeff * y) % p;
            }
        }
        out.push(v);
    }
    out.sort();
    out.dedup();
    out
}

/// Dimension of `span(a) ∩ span(b)` over `F_p`, by listing both spans.
pub fn brute_intersection_dim(p: u64, a: &[Vec<u64>], b: &[Vec<u64>], len: usize) -> usize {
    let sa = enumerate_span(p, a, len);
    let sb: std::collections::BTreeSet<_> = enumerate_span(p, b, len).into_iter().collect();
    let common = sa.into_iter().filter(|v| sb.contains(v)).count() as u64;
    let mut d = 0;
    while p.pow(d) < common {
        d += 1;
    }
    assert_eq!(
        p.pow(d),
        common,
        "an intersection of subspaces has p^k elements"
    );
    d as usize
}

/// Columns of a matrix as dense residue vectors.
pub fn columns_mod(m: &Matrix) -> Vec<Vec<u64>> {
    match dense(m) {
        Dense::P(_, a) => (0..m.cols())
            .map(|j| a.iter().map(|row| row[j]).collect())
            .collect(),
        Dense::Q(_) => panic!("rational matrix"),
    }
}

pub fn rational(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn one() -> BigRational {
    BigRational::one()
}

/// Homology of a complex read from the library next to the dense oracle.
pub fn betti_pairs(x: &ChainComplex) -> Vec<(i32, usize, usize)> {
    let mut degrees: Vec<i32> = x.degrees().collect();
    if let (Some(&lo), Some(&hi)) = (degrees.first(), degrees.last()) {
        degrees = (lo - 1..=hi + 1).collect();
    }
    degrees
        .into_iter()
        .map(|n| (n, betti(x, n), dense_betti(x, n)))
        .collect()
}
