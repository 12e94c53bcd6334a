//! Binary finite fields `GF(2^m)` and Galois rings `GR(2^e, t)`.
//!
//! Field elements are bit vectors: bit `i` is the coefficient of `X^i` in
//! the polynomial basis. Galois-ring elements are coefficient vectors
//! `c_0 + c_1 X + ... + c_{t-1} X^{t-1}` with `c_i` taken mod `2^e`.

use crate::error::{invalid, Result};

/// `GF(2^m)` modulo the numerically smallest irreducible polynomial of degree `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Gf2m {
    m: u32,
    poly: u32,
}

fn clmul(a: u32, b: u32) -> u64 {
    let mut acc = 0u64;
    for i in 0..32 {
        if b >> i & 1 == 1 {
            acc ^= (a as u64) << i;
        }
    }
    acc
}

fn degree(p: u64) -> i32 {
    63 - p.leading_zeros() as i32
}

fn poly_mod(mut a: u64, p: u64) -> u64 {
    let dp = degree(p);
    while a != 0 && degree(a) >= dp {
        a ^= p << (degree(a) - dp);
    }
    a
}

/// Irreducibility over GF(2) by trial division.
pub fn is_irreducible(p: u32) -> bool {
    let d = degree(p as u64);
    if d < 1 {
        return false;
    }
    for q in 2u64..(1u64 << (d / 2 + 1)) {
        if degree(q) >= 1 && degree(q) <= d / 2 && poly_mod(p as u64, q) == 0 {
            return false;
        }
    }
    true
}

/// Smallest irreducible binary polynomial of degree `m` (bit `m` set).
pub fn smallest_irreducible(m: u32) -> Result<u32> {
    if !(1..=16).contains(&m) {
        return Err(invalid(format!("field degree {m} outside 1..=16")));
    }
    (1u32 << m..1u32 << (m + 1))
        .find(|&p| is_irreducible(p))
        .ok_or_else(|| invalid("no irreducible polynomial found"))
}

impl Gf2m {
    pub fn new(m: u32) -> Result<Self> {
        Ok(Gf2m {
            m,
            poly: smallest_irreducible(m)?,
        })
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn modulus(&self) -> u32 {
        self.poly
    }

    pub fn size(&self) -> u32 {
        1 << self.m
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        poly_mod(clmul(a, b), self.poly as u64) as u32
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Absolute trace to `GF(2)`.
    pub fn trace(&self, a: u32) -> u32 {
        let mut t = 0;
        let mut x = a;
        for _ in 0..self.m {
            t ^= x;
            x = self.mul(x, x);
        }
        debug_assert!(t <= 1);
        t
    }
}

/// Galois ring `GR(2^e, t) = Z_{2^e}[X] / (f)` where `f` is the smallest
/// binary irreducible of degree `t` read with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisRing {
    e: u32,
    t: u32,
    modulus: u32,
    /// Coefficients of `f` below the leading term.
    low: Vec<u64>,
}

pub type RingElem = Vec<u64>;

impl GaloisRing {
    pub fn new(e: u32, t: u32) -> Result<Self> {
        if e == 0 || e > 16 {
            return Err(invalid(format!("ring exponent {e} outside 1..=16")));
        }
        let f = smallest_irreducible(t)?;
        let low = (0..t).map(|i| (f >> i & 1) as u64).collect();
        Ok(GaloisRing {
            e,
            t,
            modulus: 1 << e,
            low,
        })
    }

    pub fn size(&self) -> usize {
        1usize << (self.e * self.t)
    }

    pub fn degree(&self) -> u32 {
        self.t
    }

    pub fn characteristic(&self) -> u32 {
        self.modulus
    }

    /// Element with coefficient `c_i` in base-`2^e` digit `i` of `code`.
    pub fn decode(&self, mut code: usize) -> RingElem {
        let q = self.modulus as usize;
        (0..self.t)
            .map(|_| {
                let c = (code % q) as u64;
                code /= q;
                c
            })
            .collect()
    }

    pub fn encode(&self, a: &[u64]) -> usize {
        let q = self.modulus as usize;
        a.iter().rev().fold(0, |acc, &c| acc * q + c as usize)
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> RingElem {
        let t = self.t as usize;
        let q = self.modulus as u64;
        let mut prod = vec![0u64; 2 * t];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % q;
            }
        }
        // X^t = -(low part of f)
        for k in (t..2 * t).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for (i, &f) in self.low.iter().enumerate() {
                prod[k - t + i] = (prod[k - t + i] + (q - c) * f) % q;
            }
        }
        prod.truncate(t);
        prod
    }

    pub fn pow(&self, a: &[u64], mut n: u64) -> RingElem {
        let mut acc = self.decode(1);
        let mut base = a.to_vec();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            n >>= 1;
        }
        acc
    }

    /// Teichmüller representatives indexed by residue: entry `r` is the
    /// unique `u` with `u^(2^t) = u` reducing to the field element `r`.
    pub fn teichmuller(&self) -> Vec<RingElem> {
        let q = 1u64 << self.t;
        (0..q as usize)
            .map(|r| {
                let mut u: RingElem = (0..self.t).map(|i| (r >> i & 1) as u64).collect();
                loop {
                    let next = self.pow(&u, q);
                    if next == u {
                        break u;
                    }
                    u = next;
                }
            })
            .collect()
    }
}
