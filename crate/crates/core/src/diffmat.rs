//! Difference matrices and the linking systems built from them.
//!
//! A `(G, m, 1)` difference matrix `(b_ij)` lifted along a central
//! `E ~ Z_2^(d+1)` gives difference sets `D_i = sum_j b_ij e_ij H_j`
//! (columns `j = 1..s`, `H_j` the hyperplanes of `E`) which pairwise link
//! with `D_i D_r^(-1) = -2^d D + 2^(d-1) s G`.

use std::sync::Arc;

use crate::designs::{coset_union, two_group_params, HyperplaneFamily};
use crate::error::{invalid, Error, Result};
use crate::field::{GaloisRing, Gf2m};
use crate::group::{Elem, FiniteGroup, Quotient, Subgroup};
use crate::linking::{verify_reduced, ReducedLinkingSystem};

/// Default node budget for the backtracking search.
pub const SEARCH_BUDGET: u64 = 100_000_000;

/// Largest group order handled by the backtracking search.
pub const SEARCH_MAX_ORDER: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferenceMatrix {
    pub group: Arc<FiniteGroup>,
    pub lambda: usize,
    pub rows: Vec<Vec<Elem>>,
}

impl DifferenceMatrix {
    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.rows.first().map_or(self.lambda * self.group.order(), Vec::len)
    }

    /// First `m` rows.
    pub fn truncate(&self, m: usize) -> DifferenceMatrix {
        DifferenceMatrix {
            group: self.group.clone(),
            lambda: self.lambda,
            rows: self.rows[..m.min(self.rows.len())].to_vec(),
        }
    }

    /// Row 0 and column 0 are all identity.
    pub fn is_normalized(&self) -> bool {
        self.rows.first().is_none_or(|r| r.iter().all(|&x| x == 0)) && self.rows.iter().all(|r| r[0] == 0)
    }

    /// Image under an injective homomorphism given as an id map.
    pub fn map_into(&self, target: Arc<FiniteGroup>, map: &[Elem]) -> DifferenceMatrix {
        DifferenceMatrix {
            group: target,
            lambda: self.lambda,
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(|&x| map[x as usize]).collect())
                .collect(),
        }
    }
}

/// Row-pair quotient check: every `{b_ij b_rj^-1}` covers `G` exactly
/// `lambda` times.
pub fn verify_dm(m: &DifferenceMatrix) -> bool {
    let g = &m.group;
    let v = g.order();
    let cols = m.lambda * v;
    if m.lambda == 0
        || m.rows
            .iter()
            .any(|r| r.len() != cols || r.iter().any(|&x| x as usize >= v))
    {
        return false;
    }
    let mut counts = vec![0usize; v];
    for i in 0..m.rows.len() {
        for r in i + 1..m.rows.len() {
            counts.fill(0);
            for (&a, &b) in m.rows[i].iter().zip(&m.rows[r]) {
                counts[g.mul(a, g.inv(b)) as usize] += 1;
            }
            if counts.iter().any(|&c| c != m.lambda) {
                return false;
            }
        }
    }
    true
}

/// Right-multiplies column `j` by `b_0j^-1`, then left-multiplies row `i`
/// by `b_i0^-1`. Row 0 and column 0 become identity.
pub fn normalize(m: &DifferenceMatrix) -> Result<DifferenceMatrix> {
    if !verify_dm(m) {
        return Err(Error::Verification("not a difference matrix".into()));
    }
    let g = &m.group;
    let Some(top) = m.rows.first() else {
        return Ok(m.clone());
    };
    let top = top.clone();
    let rows = m
        .rows
        .iter()
        .map(|row| {
            let shifted: Vec<Elem> = row.iter().zip(&top).map(|(&x, &t)| g.mul(x, g.inv(t))).collect();
            let lead = g.inv(shifted[0]);
            shifted.iter().map(|&x| g.mul(lead, x)).collect()
        })
        .collect();
    Ok(DifferenceMatrix {
        group: g.clone(),
        lambda: m.lambda,
        rows,
    })
}

/// Group id in `Z_q^t` (generator `x1` most significant) of a coefficient
/// vector whose entry `i` multiplies `x_{i+1}`.
fn coeffs_to_id(coeffs: &[u64], q: u64) -> Elem {
    coeffs.iter().fold(0u64, |acc, &c| acc * q + c) as Elem
}

/// `b_ij = a_i a_j` in `GF(2^t)`; rows and columns indexed by field
/// elements, bit `i` of a field element mapping to generator `x_{i+1}`.
pub fn dm_field_elementary(t: u32) -> Result<DifferenceMatrix> {
    if t == 0 {
        return Err(invalid("field degree must be at least 1"));
    }
    let f = Gf2m::new(t)?;
    let group = FiniteGroup::make_abelian(&vec![2; t as usize])?.into_ref();
    let id = |a: u32| coeffs_to_id(&(0..t).map(|i| (a >> i & 1) as u64).collect::<Vec<_>>(), 2);
    let rows = (0..f.size())
        .map(|a| (0..f.size()).map(|b| id(f.mul(a, b))).collect())
        .collect();
    Ok(DifferenceMatrix { group, lambda: 1, rows })
}

/// `b_ij = tau_i r_j` in `GR(2^e, t)` over its additive group `Z_{2^e}^t`.
pub fn dm_galois_ring(e: u32, t: u32) -> Result<DifferenceMatrix> {
    if t == 0 {
        return Err(invalid("ring degree must be at least 1"));
    }
    let ring = GaloisRing::new(e, t)?;
    let q = ring.characteristic();
    let group = FiniteGroup::make_abelian(&vec![q; t as usize])?.into_ref();
    let elems: Vec<Vec<u64>> = (0..ring.size()).map(|c| ring.decode(c)).collect();
    let rows = ring
        .teichmuller()
        .iter()
        .map(|tau| {
            elems
                .iter()
                .map(|r| coeffs_to_id(&ring.mul(tau, r), q as u64))
                .collect()
        })
        .collect();
    Ok(DifferenceMatrix { group, lambda: 1, rows })
}

/// Entry `(i, (j1, j2)) = (b1_{i,j1}, b2_{i,j2})` over `G1 x G2`.
pub fn dm_product(m1: &DifferenceMatrix, m2: &DifferenceMatrix) -> Result<DifferenceMatrix> {
    if m1.lambda != 1 || m2.lambda != 1 {
        return Err(invalid("product construction needs lambda = 1"));
    }
    let group = FiniteGroup::direct_product(&m1.group, &m2.group)?.into_ref();
    let v2 = m2.group.order() as Elem;
    let rows = m1
        .rows
        .iter()
        .zip(&m2.rows)
        .map(|(r1, r2)| r1.iter().flat_map(|&a| r2.iter().map(move |&b| a * v2 + b)).collect())
        .collect();
    Ok(DifferenceMatrix { group, lambda: 1, rows })
}

/// A `(G, m', 1)` matrix with `m' >= m` rows: Galois-ring construction for
/// homogeneous abelian 2-groups, products over homogeneous blocks, then a
/// bounded backtracking search. The result is normalized.
pub fn dm_auto(group: &Arc<FiniteGroup>, m: usize) -> Option<DifferenceMatrix> {
    dm_auto_with_budget(group, m, SEARCH_BUDGET)
}

pub fn dm_auto_with_budget(group: &Arc<FiniteGroup>, m: usize, budget: u64) -> Option<DifferenceMatrix> {
    let v = group.order();
    if m > v {
        return None;
    }
    if m <= 1 {
        return Some(DifferenceMatrix {
            group: group.clone(),
            lambda: 1,
            rows: vec![vec![0; v]],
        });
    }
    if group.is_abelian() && v.is_power_of_two() {
        if let Some(found) = structured_dm(group) {
            if found.num_rows() >= m && verify_dm(&found) {
                return normalize(&found).ok();
            }
        }
    }
    search_dm(group, m, budget)
}

fn structured_dm(group: &Arc<FiniteGroup>) -> Option<DifferenceMatrix> {
    let basis = group.abelian_basis().ok()?;
    let mut blocks: Vec<(u32, u32)> = Vec::new();
    for &f in &basis.factors {
        match blocks.last_mut() {
            Some((q, t)) if *q == f => *t += 1,
            _ => blocks.push((f, 1)),
        }
    }
    let mut acc: Option<DifferenceMatrix> = None;
    for (q, t) in blocks {
        let block = dm_galois_ring(q.trailing_zeros(), t).ok()?;
        acc = Some(match acc {
            None => block,
            Some(prev) => dm_product(&prev, &block).ok()?,
        });
    }
    let std = acc?;
    Some(std.map_into(group.clone(), &basis.map))
}

/// Backtracking over normalized matrices, row by row and column by column,
/// with rows ordered by their column-1 entry. Returns the first solution in
/// that order.
pub fn search_dm(group: &Arc<FiniteGroup>, m: usize, budget: u64) -> Option<DifferenceMatrix> {
    let v = group.order();
    if v > SEARCH_MAX_ORDER || m > v {
        return None;
    }
    let mut s = Search {
        g: group,
        v,
        m,
        rows: vec![vec![0; v]; m],
        row_used: vec![1u64; m],
        pair_used: vec![vec![1u64; m]; m],
        nodes: 0,
        budget,
    };
    if m <= 1 || s.fill(1, 1) {
        Some(DifferenceMatrix {
            group: group.clone(),
            lambda: 1,
            rows: s.rows,
        })
    } else {
        None
    }
}

struct Search<'a> {
    g: &'a FiniteGroup,
    v: usize,
    m: usize,
    rows: Vec<Vec<Elem>>,
    row_used: Vec<u64>,
    pair_used: Vec<Vec<u64>>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn fill(&mut self, i: usize, j: usize) -> bool {
        if i == self.m {
            return true;
        }
        if j == self.v {
            return self.fill(i + 1, 1);
        }
        let lo = if j == 1 && i > 1 { self.rows[i - 1][1] + 1 } else { 1 };
        for c in lo..self.v as Elem {
            if self.row_used[i] >> c & 1 == 1 {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return false;
            }
            let quots: Vec<Elem> = (1..i).map(|r| self.g.mul(c, self.g.inv(self.rows[r][j]))).collect();
            if quots
                .iter()
                .enumerate()
                .any(|(k, &q)| self.pair_used[i][k + 1] >> q & 1 == 1)
            {
                continue;
            }
            self.rows[i][j] = c;
            self.row_used[i] |= 1 << c;
            for (k, &q) in quots.iter().enumerate() {
                self.pair_used[i][k + 1] |= 1 << q;
            }
            if self.fill(i, j + 1) {
                return true;
            }
            self.row_used[i] &= !(1 << c);
            for (k, &q) in quots.iter().enumerate() {
                self.pair_used[i][k + 1] &= !(1 << q);
            }
        }
        self.rows[i][j] = 0;
        false
    }
}

/// Elements `e_ij` of `E` for rows `1..m` and columns `1..=s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftChoice {
    pub entries: Vec<Vec<Elem>>,
}

impl LiftChoice {
    pub fn identity(rows: usize, s: usize) -> Self {
        LiftChoice {
            entries: vec![vec![0; s]; rows],
        }
    }
}

/// Data shared by every system built from one central subgroup.
#[derive(Clone, Debug)]
pub struct LinkedFrame {
    pub group: Arc<FiniteGroup>,
    pub family: HyperplaneFamily,
    pub quotient: Quotient,
}

impl LinkedFrame {
    /// Checks the hypotheses on `G` and `E`: `|G| = 2^(2d+2)`, `E` central,
    /// elementary abelian of order `2^(d+1)`.
    pub fn new(group: &Arc<FiniteGroup>, e: &Subgroup, basis: &[Elem]) -> Result<Self> {
        let v = group.order();
        if !v.is_power_of_two() || v.trailing_zeros() % 2 == 1 || v < 4 {
            return Err(Error::Hypothesis(format!("group order {v} is not 2^(2d+2)")));
        }
        let dim = (v.trailing_zeros() / 2) as usize;
        if e.order() != 1 << dim {
            return Err(Error::Hypothesis(format!("E must have order 2^{dim}")));
        }
        if !group.is_central(e.elements()) {
            return Err(Error::Hypothesis("subgroup E is not central".into()));
        }
        let family = HyperplaneFamily::new(group, e, 2, basis)?;
        let quotient = group.quotient(e)?;
        Ok(LinkedFrame {
            group: group.clone(),
            family,
            quotient,
        })
    }

    pub fn s(&self) -> usize {
        self.family.len()
    }

    pub fn d(&self) -> u32 {
        self.family.dimension() as u32 - 1
    }

    /// `(mu, nu) = (2^(d-1) s - 2^d, 2^(d-1) s)` scaled to integers.
    pub fn expected_mu_nu(&self) -> (i64, i64) {
        let p = two_group_params(2 * self.d() + 2).expect("even exponent");
        let root = 1i64 << self.d();
        let nu = p.k * (p.k + root) / p.v;
        (nu - root, nu)
    }

    /// Lifts a matrix over `G/E` to coset representatives in `G`.
    pub fn lift_matrix(&self, m: &DifferenceMatrix) -> Result<Vec<Vec<Elem>>> {
        if !crate::group_ring::same_group(&m.group, &self.quotient.group) {
            return Err(Error::GroupMismatch);
        }
        Ok(m.rows
            .iter()
            .map(|r| r.iter().map(|&c| self.quotient.lift(c)).collect())
            .collect())
    }

    /// Checks that `(b_ij E)` is a difference matrix over `G/E` with row 0
    /// all identity.
    pub fn check_lifted(&self, b: &[Vec<Elem>]) -> Result<()> {
        let cols = self.s() + 1;
        if b.len() < 3 {
            return Err(invalid("at least 3 matrix rows are needed"));
        }
        if b.iter().any(|r| r.len() != cols) {
            return Err(invalid(format!("matrix rows must have {cols} entries")));
        }
        if b.iter().flatten().any(|&x| x as usize >= self.group.order()) {
            return Err(invalid("matrix entry out of range"));
        }
        let projected = DifferenceMatrix {
            group: self.quotient.group.clone(),
            lambda: 1,
            rows: b
                .iter()
                .map(|r| r.iter().map(|&x| self.quotient.project(x)).collect())
                .collect(),
        };
        if !verify_dm(&projected) {
            return Err(Error::Hypothesis("(b_ij E) is not a difference matrix over G/E".into()));
        }
        if projected.rows[0].iter().any(|&x| x != 0) {
            return Err(Error::Hypothesis("row 0 of the matrix must be the identity row".into()));
        }
        Ok(())
    }

    fn check_lifts(&self, rows: usize, lifts: &LiftChoice) -> Result<()> {
        if lifts.entries.len() != rows || lifts.entries.iter().any(|r| r.len() != self.s()) {
            return Err(invalid(format!("lift choice must be {rows} x {}", self.s())));
        }
        if lifts.entries.iter().flatten().any(|&x| !self.family.e.contains(x)) {
            return Err(invalid("lift entry outside E"));
        }
        Ok(())
    }

    /// `D_i = sum_{j=1}^s b_ij e_ij H_j` for `i = 1..m-1`, without checks.
    pub fn assemble(&self, b: &[Vec<Elem>], lifts: &LiftChoice) -> Vec<Vec<Elem>> {
        let g = &self.group;
        b[1..]
            .iter()
            .zip(&lifts.entries)
            .map(|(row, e)| {
                let reps: Vec<Elem> = row[1..].iter().zip(e).map(|(&x, &y)| g.mul(x, y)).collect();
                coset_union(g, &self.family, &reps)
            })
            .collect()
    }

    /// Builds and verifies the system from a matrix already lifted to `G`.
    pub fn linked_from_lifted(&self, b: &[Vec<Elem>], lifts: &LiftChoice) -> Result<ReducedLinkingSystem> {
        self.check_lifted(b)?;
        self.check_lifts(b.len() - 1, lifts)?;
        let sets = self.assemble(b, lifts);
        let sys = verify_reduced(&self.group, &sets)
            .ok_or_else(|| Error::Verification("constructed sets do not form a linking system".into()))?;
        if (sys.munu.mu, sys.munu.nu) != self.expected_mu_nu() {
            return Err(Error::Verification("system links with unexpected (mu,nu)".into()));
        }
        Ok(sys)
    }

    /// Builds the system from a normalized matrix over `G/E`.
    pub fn linked_from_dm(&self, m: &DifferenceMatrix, lifts: &LiftChoice) -> Result<ReducedLinkingSystem> {
        if !verify_dm(m) {
            return Err(Error::Verification("not a difference matrix".into()));
        }
        if !m.is_normalized() {
            return Err(invalid("matrix must be normalized"));
        }
        let b = self.lift_matrix(m)?;
        self.linked_from_lifted(&b, lifts)
    }

    /// `D = sum_{i=1}^s f_i g_i^-1 (E - H_i)` for transversals `f`, `g`. When
    /// the quotients `f_i g_i^-1` also form a transversal, `D` is the witness
    /// of `F G^(-1)` for `F = sum f_i H_i`, `G = sum g_i H_i`.
    pub fn witness_direct(&self, f: &[Elem], g: &[Elem]) -> Result<Vec<Elem>> {
        let grp = &self.group;
        let s = self.s();
        if f.len() != s + 1 || g.len() != s + 1 {
            return Err(invalid(format!("need {} representatives on each side", s + 1)));
        }
        let q: Vec<Elem> = f.iter().zip(g).map(|(&a, &b)| grp.mul(a, grp.inv(b))).collect();
        for (name, reps) in [("f", f), ("g", g)] {
            let mut seen = vec![false; s + 1];
            for &x in reps {
                if std::mem::replace(&mut seen[self.quotient.project(x) as usize], true) {
                    return Err(Error::Hypothesis(format!("{name} is not a transversal of E")));
                }
            }
        }
        let mut out = Vec::new();
        for (i, &x) in q[1..].iter().enumerate() {
            out.extend(self.family.plane_complement(i).into_iter().map(|h| grp.mul(x, h)));
        }
        out.sort_unstable();
        Ok(out)
    }
}

fn abelian_two_group_shape(group: &FiniteGroup) -> Result<(u32, Vec<u32>)> {
    if !group.is_abelian() {
        return Err(Error::Hypothesis("group must be abelian".into()));
    }
    let v = group.order();
    if !v.is_power_of_two() || v < 4 || v.trailing_zeros() % 2 == 1 {
        return Err(Error::Hypothesis(format!("group order {v} is not 2^(2d+2)")));
    }
    let d = v.trailing_zeros() / 2 - 1;
    Ok((d, group.primary_invariants()?))
}

/// `E` inside the first `d+1` cyclic factors, with its basis.
fn leading_elementary(group: &Arc<FiniteGroup>, d: u32) -> Result<(Subgroup, Vec<Elem>)> {
    let basis = group.abelian_basis()?;
    let gens: Vec<Elem> = basis.basis[..d as usize + 1]
        .iter()
        .zip(&basis.factors)
        .map(|(&b, &f)| group.pow(b, f as i64 / 2))
        .collect();
    Ok((group.subgroup_generated(&gens), gens))
}

fn build_with_rows(frame: &LinkedFrame, m: usize) -> Result<ReducedLinkingSystem> {
    let dm = dm_auto(&frame.quotient.group, m)
        .ok_or_else(|| Error::Verification(format!("no ({m}-row) difference matrix found over G/E")))?
        .truncate(m);
    frame.linked_from_dm(&dm, &LiftChoice::identity(m - 1, frame.s()))
}

/// Size-3 system in an abelian group of order `2^(2d+2)`, rank at least
/// `d+1` and exponent at most `2^(d+1)`.
pub fn build_general(group: &Arc<FiniteGroup>) -> Result<ReducedLinkingSystem> {
    let (d, factors) = abelian_two_group_shape(group)?;
    if factors.len() < d as usize + 1 {
        return Err(Error::Hypothesis(format!(
            "rank {} is below d+1 = {}",
            factors.len(),
            d + 1
        )));
    }
    if group.exponent() > 1 << (d + 1) {
        return Err(Error::Hypothesis(format!(
            "exponent {} exceeds 2^(d+1)",
            group.exponent()
        )));
    }
    let (e, basis) = leading_elementary(group, d)?;
    build_with_rows(&LinkedFrame::new(group, &e, &basis)?, 4)
}

/// Row target `2^floor((d+1)/(e-1))` of the improved construction.
pub fn improved_rows(d: u32, e: u32) -> usize {
    1 << ((d + 1) / (e - 1))
}

/// System of size `2^floor((d+1)/(e-1)) - 1` in an abelian group of order
/// `2^(2d+2)`, rank at least `d+1` and exponent `2^e`, `2 <= e <= (d+3)/2`.
pub fn build_improved(group: &Arc<FiniteGroup>) -> Result<ReducedLinkingSystem> {
    let (d, factors) = abelian_two_group_shape(group)?;
    if factors.len() < d as usize + 1 {
        return Err(Error::Hypothesis(format!(
            "rank {} is below d+1 = {}",
            factors.len(),
            d + 1
        )));
    }
    let e = group.exponent().trailing_zeros();
    if e < 2 || 2 * e > d + 3 {
        return Err(Error::Hypothesis(format!("exponent 2^{e} outside 2 <= e <= (d+3)/2")));
    }
    let (sub, basis) = leading_elementary(group, d)?;
    build_with_rows(&LinkedFrame::new(group, &sub, &basis)?, improved_rows(d, e))
}

/// System of size `2^(d+1) - 1` in `D4 x K`, `K` abelian of order
/// `2^(2d-1)` and exponent at most 4.
pub fn build_tyken(d: u32, k: &FiniteGroup) -> Result<ReducedLinkingSystem> {
    if d == 0 {
        return Err(Error::Hypothesis("d must be positive".into()));
    }
    if !k.is_abelian() || k.order() != 1 << (2 * d - 1) || k.exponent() > 4 {
        return Err(Error::Hypothesis(format!(
            "K must be abelian of order 2^{} and exponent at most 4",
            2 * d - 1
        )));
    }
    let d4 = FiniteGroup::make_dihedral8();
    let a2_local = d4.parse_element("a^2")?;
    let group = FiniteGroup::direct_product(&d4, k)?.into_ref();
    let kv = k.order() as Elem;
    let kb = k.abelian_basis()?;
    let fours = kb.factors.iter().filter(|&&f| f == 4).count();
    let mut basis = vec![a2_local * kv];
    for (i, (&b, &f)) in kb.basis.iter().zip(&kb.factors).enumerate() {
        if f == 4 {
            basis.push(k.pow(b, 2));
        } else if i < d as usize {
            basis.push(b);
        }
    }
    debug_assert!(fours <= d as usize);
    let e = group.subgroup_generated(&basis);
    let frame = LinkedFrame::new(&group, &e, &basis)?;
    build_with_rows(&frame, 1 << (d + 1))
}

/// System of size `2^(d+1) - 1` in `Z_4^(d+1)` whose first set contains
/// `x1` but not `x1^3`.
pub fn build_nonreversible(d: u32) -> Result<ReducedLinkingSystem> {
    if d == 0 {
        return Err(Error::Hypothesis("d must be positive".into()));
    }
    let rank = d as usize + 1;
    let group = FiniteGroup::make_abelian(&vec![4; rank])?.into_ref();
    let gens = group.generators();
    let squares: Vec<Elem> = gens.iter().map(|&x| group.pow(x, 2)).collect();
    let e = group.subgroup_generated(&squares);
    // reversed basis puts H_1 = <x2^2, ..., x_{d+1}^2> first
    let basis: Vec<Elem> = squares.iter().rev().copied().collect();
    let frame = LinkedFrame::new(&group, &e, &basis)?;
    let field = dm_field_elementary(d + 1)?;
    let images: Vec<Elem> = gens.iter().map(|&x| frame.quotient.project(x)).collect();
    let iso = frame.quotient.group.hom_from_images(&vec![2; rank], &images)?;
    let dm = field.map_into(frame.quotient.group.clone(), &iso);
    let b = frame.lift_matrix(&dm)?;
    if b[1][1] != gens[0] {
        return Err(Error::Verification("row 1 does not start with x1".into()));
    }
    frame.linked_from_lifted(&b, &LiftChoice::identity(b.len() - 1, frame.s()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(g: &FiniteGroup, rows: &[&[&str]]) -> Vec<Vec<Elem>> {
        rows.iter()
            .map(|r| r.iter().map(|n| g.parse_element(n).unwrap()).collect())
            .collect()
    }

    fn example_dm() -> DifferenceMatrix {
        let g = FiniteGroup::make_abelian_named(&[2, 2], &["x", "y"])
            .unwrap()
            .into_ref();
        let rows = names(
            &g,
            &[
                &["1", "1", "1", "1"],
                &["1", "x", "y", "x*y"],
                &["1", "y", "x*y", "x"],
                &["1", "x*y", "x", "y"],
            ],
        );
        DifferenceMatrix {
            group: g,
            lambda: 1,
            rows,
        }
    }

    #[test]
    fn example_matrix() {
        let m = example_dm();
        assert!(verify_dm(&m));
        assert!(m.is_normalized());
        assert_eq!(normalize(&m).unwrap(), m);
        let mut dup = m.clone();
        dup.rows[2] = dup.rows[1].clone();
        assert!(!verify_dm(&dup));
        let single = DifferenceMatrix {
            group: m.group.clone(),
            lambda: 1,
            rows: vec![vec![0; 4]],
        };
        assert!(verify_dm(&single));
    }

    #[test]
    fn normalize_scrambled() {
        let m = example_dm();
        let g = m.group.clone();
        let mut s = m.clone();
        for (j, a) in [(0usize, 3), (1, 1), (2, 2), (3, 1)] {
            for row in s.rows.iter_mut() {
                row[j] = g.mul(row[j], a);
            }
        }
        s.rows.swap(0, 2);
        assert!(verify_dm(&s));
        let n = normalize(&s).unwrap();
        assert!(verify_dm(&n) && n.is_normalized());
        for row in &n.rows[1..] {
            let mut r = row.clone();
            r.sort_unstable();
            assert_eq!(r, vec![0, 1, 2, 3]);
        }
    }

    #[test]
    fn normalize_nonabelian() {
        let d4 = FiniteGroup::make_dihedral8().into_ref();
        let m = search_dm(&d4, 2, SEARCH_BUDGET).unwrap();
        let mut s = m.clone();
        for row in s.rows.iter_mut() {
            row[0] = d4.mul(5, row[0]);
            row[3] = d4.mul(row[3], 6);
        }
        for x in s.rows[1].iter_mut() {
            *x = d4.mul(3, *x);
        }
        assert!(verify_dm(&s));
        assert!(verify_dm(&normalize(&s).unwrap()));
    }

    #[test]
    fn field_and_ring_constructions() {
        for t in 1..=4 {
            let m = dm_field_elementary(t).unwrap();
            assert_eq!(m.num_rows(), 1 << t);
            assert!(verify_dm(&m) && m.is_normalized());
            assert_eq!(dm_galois_ring(1, t).unwrap(), m);
        }
        let z4 = dm_galois_ring(2, 1).unwrap();
        assert_eq!(z4.rows, vec![vec![0, 0, 0, 0], vec![0, 1, 2, 3]]);
        for (e, t) in [(2, 2), (3, 1), (2, 3), (3, 2)] {
            let m = dm_galois_ring(e, t).unwrap();
            assert_eq!(m.num_rows(), 1 << t);
            assert!(verify_dm(&m), "GR(2^{e},{t})");
        }
    }

    #[test]
    fn products() {
        let a = dm_field_elementary(2).unwrap();
        let b = dm_galois_ring(2, 1).unwrap();
        let p = dm_product(&a, &b).unwrap();
        assert_eq!(p.num_rows(), 2);
        assert!(verify_dm(&p));
        let pp = dm_product(&a, &a).unwrap();
        assert_eq!((pp.num_rows(), pp.group.order()), (4, 16));
        assert!(verify_dm(&pp));
        let one = a.truncate(1);
        assert_eq!(dm_product(&one, &a).unwrap().num_rows(), 1);
    }

    #[test]
    fn auto_pipeline() {
        let g = FiniteGroup::make_abelian(&[4, 2]).unwrap().into_ref();
        let m = dm_auto(&g, 4).unwrap();
        assert!(m.num_rows() >= 4 && verify_dm(&m));
        let z4 = FiniteGroup::make_abelian(&[4]).unwrap().into_ref();
        assert!(dm_auto(&z4, 3).is_none());
        assert!(dm_auto(&z4, 5).is_none());
        for t in 1..=5u32 {
            let g = FiniteGroup::make_abelian(&vec![2; t as usize]).unwrap().into_ref();
            let m = dm_auto(&g, 1 << t).unwrap();
            assert_eq!(m.num_rows(), 1 << t);
            assert!(verify_dm(&m));
        }
    }

    fn z422() -> (Arc<FiniteGroup>, LinkedFrame) {
        let g = FiniteGroup::make_abelian_named(&[4, 2, 2], &["x", "y", "z"])
            .unwrap()
            .into_ref();
        let x2 = g.parse_element("x^2").unwrap();
        let z = g.parse_element("z").unwrap();
        let e = g.subgroup_generated(&[x2, z]);
        let frame = LinkedFrame::new(&g, &e, &[x2, z]).unwrap();
        (g, frame)
    }

    #[test]
    fn worked_example() {
        let (g, frame) = z422();
        let b = names(
            &g,
            &[
                &["1", "1", "1", "1"],
                &["1", "x", "y", "x*y"],
                &["1", "y", "x*y", "x"],
                &["1", "x*y", "x", "y"],
            ],
        );
        let e = LiftChoice {
            entries: names(&g, &[&["1", "1", "1"], &["z", "x^2", "x^2"], &["z", "1", "1"]]),
        };
        let sys = frame.linked_from_lifted(&b, &e).unwrap();
        let expect = |reps: [&str; 3]| {
            let r: Vec<Elem> = reps.iter().map(|n| g.parse_element(n).unwrap()).collect();
            coset_union(&g, &frame.family, &r)
        };
        assert_eq!(sys.set(1), expect(["x", "y", "x*y"]).as_slice());
        assert_eq!(sys.set(2), expect(["y*z", "x^3*y", "x^3"]).as_slice());
        assert_eq!(sys.set(3), expect(["x*y*z", "x", "y"]).as_slice());
        assert_eq!(sys.witness(2, 3).unwrap(), expect(["x*z", "y", "x*y"]).as_slice());
        let f: Vec<Elem> = names(&g, &[&["1", "y*z", "x^3*y", "x^3"]]).remove(0);
        let h: Vec<Elem> = names(&g, &[&["1", "x*y*z", "x", "y"]]).remove(0);
        assert_eq!(frame.witness_direct(&f, &h).unwrap(), expect(["x*z", "y", "x*y"]));
    }

    #[test]
    fn witness_direct_diagonal_and_errors() {
        let (g, frame) = z422();
        let f = names(&g, &[&["1", "x", "y", "x*y"]]).remove(0);
        let d = frame.witness_direct(&f, &f).unwrap();
        let mut all = Vec::new();
        for i in 0..3 {
            all.extend(frame.family.plane_complement(i));
        }
        all.sort_unstable();
        assert_eq!(d, all);
        let bad = names(&g, &[&["1", "x", "x^3", "x*y"]]).remove(0);
        assert!(matches!(frame.witness_direct(&bad, &f), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn elementary_group_all_identity_lifts() {
        let g = FiniteGroup::make_abelian(&[2; 4]).unwrap().into_ref();
        let gens = g.generators();
        let e = g.subgroup_generated(&gens[2..]);
        let frame = LinkedFrame::new(&g, &e, &gens[2..]).unwrap();
        let dm = dm_auto(&frame.quotient.group, 4).unwrap();
        let sys = frame.linked_from_dm(&dm, &LiftChoice::identity(3, 3)).unwrap();
        assert_eq!(sys.len(), 3);
    }

    #[test]
    fn drivers_small() {
        let z44 = FiniteGroup::make_abelian(&[4, 4]).unwrap().into_ref();
        assert_eq!(build_general(&z44).unwrap().len(), 3);
        let z2 = FiniteGroup::make_abelian(&[2]).unwrap();
        assert_eq!(build_tyken(1, &z2).unwrap().len(), 3);
        let sys = build_nonreversible(1).unwrap();
        assert_eq!(sys.len(), 3);
        assert!(!sys.reversibility_profile()[0]);
        let z16 = FiniteGroup::make_abelian(&[16]).unwrap().into_ref();
        assert!(matches!(build_general(&z16), Err(Error::Hypothesis(_))));
        let d4 = FiniteGroup::make_dihedral8();
        assert!(matches!(build_tyken(1, &d4), Err(Error::Hypothesis(_))));
    }
}
