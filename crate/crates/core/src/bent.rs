//! Boolean functions, the Walsh-Hadamard transform, bent sets and the
//! linking systems they induce in `Z_2^n`.
//!
//! Input index `y` encodes `(y_1, ..., y_n)` with `y_i` in bit `i - 1`; the
//! corresponding group element is `x_1^{y_1} ... x_n^{y_n}`.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{invalid, Error, Result};
use crate::field::Gf2m;
use crate::group::{Elem, FiniteGroup};
use crate::linking::{verify_reduced, ReducedLinkingSystem};

/// Largest supported arity.
pub const MAX_ARITY: u32 = 20;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BooleanFunction {
    arity: u32,
    table: Vec<bool>,
}

impl fmt::Debug for BooleanFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BooleanFunction({}, {})", self.arity, self.to_hex())
    }
}

impl BooleanFunction {
    pub fn new(arity: u32, table: Vec<bool>) -> Result<Self> {
        if arity > MAX_ARITY {
            return Err(Error::InvalidArity(format!("arity {arity} exceeds {MAX_ARITY}")));
        }
        if table.len() != 1 << arity {
            return Err(Error::InvalidArity(format!(
                "truth table of length {} for arity {arity}",
                table.len()
            )));
        }
        Ok(BooleanFunction { arity, table })
    }

    pub fn zero(arity: u32) -> Self {
        BooleanFunction {
            arity,
            table: vec![false; 1 << arity],
        }
    }

    pub fn from_fn(arity: u32, f: impl Fn(usize) -> bool) -> Self {
        BooleanFunction {
            arity,
            table: (0..1usize << arity).map(f).collect(),
        }
    }

    /// Function whose truth table is the bits of `bits` (input `y` at bit `y`).
    pub fn from_bits(arity: u32, bits: u64) -> Result<Self> {
        if arity > 6 {
            return Err(Error::InvalidArity("use from_hex above arity 6".into()));
        }
        Ok(Self::from_fn(arity, |y| bits >> y & 1 == 1))
    }

    pub fn arity(&self) -> u32 {
        self.arity
    }

    pub fn table(&self) -> &[bool] {
        &self.table
    }

    pub fn eval(&self, y: usize) -> bool {
        self.table[y]
    }

    pub fn weight(&self) -> usize {
        self.table.iter().filter(|&&b| b).count()
    }

    pub fn is_zero(&self) -> bool {
        self.table.iter().all(|&b| !b)
    }

    /// Pointwise sum mod 2.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.arity != other.arity {
            return Err(Error::InvalidArity(format!(
                "arities {} and {} differ",
                self.arity, other.arity
            )));
        }
        Ok(BooleanFunction {
            arity: self.arity,
            table: self.table.iter().zip(&other.table).map(|(&a, &b)| a ^ b).collect(),
        })
    }

    /// Truth table as a hexadecimal integer, bit `y` holding `f(y)`, most
    /// significant digit first.
    pub fn to_hex(&self) -> String {
        let digits = (self.table.len() / 4).max(1);
        (0..digits)
            .rev()
            .map(|d| {
                let nibble = (0..4)
                    .filter(|&b| self.table.get(4 * d + b).copied().unwrap_or(false))
                    .fold(0u32, |acc, b| acc | 1 << b);
                char::from_digit(nibble, 16).unwrap()
            })
            .collect()
    }

    pub fn from_hex(arity: u32, hex: &str) -> Result<Self> {
        if arity > MAX_ARITY {
            return Err(Error::InvalidArity(format!("arity {arity} exceeds {MAX_ARITY}")));
        }
        let len = 1usize << arity;
        let digits = (len / 4).max(1);
        let hex = hex.trim().trim_start_matches("0x");
        if hex.len() != digits {
            return Err(invalid(format!(
                "expected {digits} hex digits for arity {arity}, got {}",
                hex.len()
            )));
        }
        let mut table = vec![false; len];
        for (pos, ch) in hex.chars().rev().enumerate() {
            let nibble = ch
                .to_digit(16)
                .ok_or_else(|| invalid(format!("bad hex digit `{ch}`")))?;
            for b in 0..4 {
                if nibble >> b & 1 == 1 {
                    let idx = 4 * pos + b;
                    if idx >= len {
                        return Err(invalid("hex value exceeds the truth table"));
                    }
                    table[idx] = true;
                }
            }
        }
        Ok(BooleanFunction { arity, table })
    }
}

/// `f^(u) = sum_x (-1)^(f(x) + u.x)` by the in-place butterfly.
pub fn wht(f: &BooleanFunction) -> Vec<i64> {
    let mut a: Vec<i64> = f.table.iter().map(|&b| if b { -1 } else { 1 }).collect();
    let mut h = 1;
    while h < a.len() {
        for block in a.chunks_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (x, y) in lo.iter_mut().zip(hi.iter_mut()) {
                let (s, t) = (*x + *y, *x - *y);
                *x = s;
                *y = t;
            }
        }
        h *= 2;
    }
    a
}

pub fn is_bent(f: &BooleanFunction) -> Result<bool> {
    if f.arity % 2 == 1 {
        return Err(Error::InvalidArity(format!(
            "bent functions need even arity, got {}",
            f.arity
        )));
    }
    let target = 1i64 << (f.arity / 2);
    Ok(wht(f).iter().all(|&w| w.abs() == target))
}

/// `S(f)` in an elementary abelian group of order `2^n` with basis
/// `x_1..x_n`.
pub fn subset_of(f: &BooleanFunction, group: &FiniteGroup, basis: &[Elem]) -> Result<Vec<Elem>> {
    let n = f.arity as usize;
    if basis.len() != n || group.order() != 1 << n {
        return Err(invalid(format!(
            "need a basis of {n} elements in a group of order 2^{n}"
        )));
    }
    let images: Vec<Elem> = (0..1usize << n)
        .map(|y| {
            (0..n)
                .filter(|i| y >> i & 1 == 1)
                .fold(0, |acc, i| group.mul(acc, basis[i]))
        })
        .collect();
    let mut seen = vec![false; group.order()];
    for &g in &images {
        if std::mem::replace(&mut seen[g as usize], true) {
            return Err(invalid("basis does not span the group"));
        }
    }
    if basis.iter().any(|&b| group.pow(b, 2) != 0) {
        return Err(invalid("basis elements must have order 2"));
    }
    let mut out: Vec<Elem> = (0..1usize << n).filter(|&y| f.table[y]).map(|y| images[y]).collect();
    out.sort_unstable();
    Ok(out)
}

/// `Z_2^n` with generators `x1..xn`.
pub fn standard_group(n: u32) -> Result<Arc<FiniteGroup>> {
    Ok(FiniteGroup::make_abelian(&vec![2; n as usize])?.into_ref())
}

fn common_arity(fns: &[BooleanFunction]) -> Result<u32> {
    let arity = fns.first().map_or(0, |f| f.arity);
    if fns.iter().any(|f| f.arity != arity) {
        return Err(Error::InvalidArity("functions have different arities".into()));
    }
    if arity % 2 == 1 {
        return Err(Error::InvalidArity(format!(
            "bent functions need even arity, got {arity}"
        )));
    }
    Ok(arity)
}

/// All pairwise sums bent.
pub fn is_bent_set(fns: &[BooleanFunction]) -> Result<bool> {
    common_arity(fns)?;
    let pairs: Vec<(usize, usize)> = (0..fns.len())
        .flat_map(|i| (i + 1..fns.len()).map(move |j| (i, j)))
        .collect();
    Ok(pairs
        .par_iter()
        .all(|&(i, j)| is_bent(&fns[i].add(&fns[j]).expect("equal arity")).expect("even arity")))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BentSet {
    pub arity: u32,
    pub functions: Vec<BooleanFunction>,
}

impl BentSet {
    pub fn new(functions: Vec<BooleanFunction>) -> Result<Self> {
        let arity = common_arity(&functions)?;
        if !is_bent_set(&functions)? {
            return Err(Error::Verification("some pairwise sum is not bent".into()));
        }
        Ok(BentSet { arity, functions })
    }

    pub fn len(&self) -> usize {
        self.functions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functions.is_empty()
    }
}

/// Adds the first function to every function.
pub fn translate_to_zero(fns: &[BooleanFunction]) -> Result<Vec<BooleanFunction>> {
    let first = fns.first().ok_or_else(|| invalid("empty function list"))?;
    fns.iter().map(|f| f.add(first)).collect()
}

/// Quadratic forms `Q_u(x, a) = sum_{j=1}^{d} Tr((ux)^(2^j+1)) + a Tr(ux)`
/// on `GF(2^(2d+1)) x GF(2)`, one per `u`, with `x` in the low `2d+1` input
/// bits and `a` in the top bit.
fn kerdock_forms(d: u32) -> Result<Vec<BooleanFunction>> {
    let m = 2 * d + 1;
    let field = Gf2m::new(m)?;
    let mask = (1usize << m) - 1;
    let forms = (0..field.size())
        .map(|u| {
            BooleanFunction::from_fn(m + 1, |idx| {
                let x = (idx & mask) as u32;
                let a = (idx >> m) as u32;
                let ux = field.mul(u, x);
                let mut acc = a & field.trace(ux);
                for j in 1..=d {
                    acc ^= field.trace(field.pow(ux, (1u64 << j) + 1));
                }
                acc == 1
            })
        })
        .collect();
    Ok(forms)
}

/// Bent set of size `2^(2d+1)` on `Z_2^(2d+2)` containing the zero function
/// first. Every result is checked with [`is_bent_set`]; for `d = 1` a clique
/// search replaces the formula should the check fail.
pub fn kerdock_bent_set(d: u32) -> Result<BentSet> {
    if 2 * d + 2 > MAX_ARITY {
        return Err(Error::Unsupported(format!("d = {d} exceeds the supported arity")));
    }
    let forms = kerdock_forms(d)?;
    if is_bent_set(&forms)? {
        return Ok(BentSet {
            arity: 2 * d + 2,
            functions: forms,
        });
    }
    if d == 1 {
        if let Some(clique) = crate::search::bent_clique(8)? {
            return BentSet::new(clique);
        }
    }
    Err(Error::Verification("quadratic forms do not give a bent set".into()))
}

/// `{S(f) : f != 0}` from a bent set containing the zero function.
pub fn bent_linking(set: &BentSet) -> Result<ReducedLinkingSystem> {
    let zeros = set.functions.iter().filter(|f| f.is_zero()).count();
    if zeros != 1 {
        return Err(invalid(
            "bent set must contain the zero function exactly once (translate first)",
        ));
    }
    if set.len() < 3 {
        return Err(invalid("a reduced linking system needs at least 2 nonzero functions"));
    }
    let group = standard_group(set.arity)?;
    let basis = group_basis(&group);
    let sets = set
        .functions
        .iter()
        .filter(|f| !f.is_zero())
        .map(|f| subset_of(f, &group, &basis))
        .collect::<Result<Vec<_>>>()?;
    verify_reduced(&group, &sets).ok_or_else(|| Error::Verification("subsets do not form a linking system".into()))
}

/// `x_1..x_n` of [`standard_group`].
pub fn group_basis(group: &FiniteGroup) -> Vec<Elem> {
    group.generators()
}
