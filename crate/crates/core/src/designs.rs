//! Difference sets: verification, parameter arithmetic, hyperplane families
//! and the McFarland and Spence constructions.

use std::fmt;
use std::sync::Arc;

use crate::error::{invalid, Error, Result};
use crate::group::{Elem, FiniteGroup, Subgroup};
use crate::group_ring::quotient_counts;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DSParams {
    pub v: i64,
    pub k: i64,
    pub lambda: i64,
    pub n: i64,
}

impl DSParams {
    pub fn new(v: i64, k: i64, lambda: i64) -> Result<Self> {
        if v < 1 || k < 0 || k > v || lambda < 0 || k * (k - 1) != lambda * (v - 1) {
            return Err(Error::NoValidParameters(format!(
                "({v},{k},{lambda}) violates k(k-1) = lambda(v-1)"
            )));
        }
        Ok(DSParams {
            v,
            k,
            lambda,
            n: k - lambda,
        })
    }

    pub fn complement(&self) -> DSParams {
        DSParams {
            v: self.v,
            k: self.v - self.k,
            lambda: self.v - 2 * self.k + self.lambda,
            n: self.n,
        }
    }

    pub fn as_array(&self) -> [i64; 4] {
        [self.v, self.k, self.lambda, self.n]
    }
}

impl fmt::Display for DSParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.v, self.k, self.lambda, self.n)
    }
}

/// Parameters when `S` is a difference set in `G`, computed from `S S^(-1)`.
pub fn is_difference_set(group: &FiniteGroup, set: &[Elem]) -> Option<DSParams> {
    let v = group.order();
    if set.iter().any(|&g| g as usize >= v) {
        return None;
    }
    let mut s = set.to_vec();
    s.sort_unstable();
    s.dedup();
    let counts = quotient_counts(group, &s, &s);
    let k = s.len() as i64;
    let lambda = counts.get(1).copied().unwrap_or(0);
    if counts[1..].iter().any(|&c| c != lambda) {
        return None;
    }
    Some(DSParams {
        v: v as i64,
        k,
        lambda,
        n: k - lambda,
    })
}

/// Checks `S S^(-1) = n 1 + lambda G` against known parameters.
pub fn has_params(group: &FiniteGroup, set: &[Elem], params: &DSParams) -> bool {
    set.len() as i64 == params.k && is_difference_set(group, set).as_ref() == Some(params)
}

/// A verified difference set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferenceSetRecord {
    pub group: Arc<FiniteGroup>,
    pub set: Vec<Elem>,
    pub params: DSParams,
}

impl DifferenceSetRecord {
    pub fn new(group: Arc<FiniteGroup>, set: &[Elem]) -> Result<Self> {
        let mut s = set.to_vec();
        s.sort_unstable();
        s.dedup();
        let params =
            is_difference_set(&group, &s).ok_or_else(|| Error::Verification("set is not a difference set".into()))?;
        Ok(DifferenceSetRecord { group, set: s, params })
    }

    pub fn complement(&self) -> DifferenceSetRecord {
        DifferenceSetRecord {
            group: self.group.clone(),
            set: complement_set(self.group.order(), &self.set),
            params: self.params.complement(),
        }
    }

    pub fn is_reversible(&self) -> bool {
        is_reversible_set(&self.group, &self.set)
    }

    pub fn names(&self) -> Vec<String> {
        self.group.set_names(&self.set)
    }
}

pub fn complement_set(v: usize, set: &[Elem]) -> Vec<Elem> {
    let mut member = vec![false; v];
    for &g in set {
        member[g as usize] = true;
    }
    (0..v as Elem).filter(|&g| !member[g as usize]).collect()
}

pub fn is_reversible_set(group: &FiniteGroup, set: &[Elem]) -> bool {
    let member = group.membership(set);
    set.iter().all(|&g| member[group.inv(g) as usize])
}

/// Parameters `(2^(2d+2), 2^d(2^(d+1)-1), 2^d(2^d-1), 2^(2d))` for `v = 2^r`.
pub fn two_group_params(r: u32) -> Result<DSParams> {
    if r < 2 || r % 2 == 1 || r > 40 {
        return Err(Error::NoValidParameters(format!(
            "order 2^{r} admits no nontrivial difference set parameters of this family"
        )));
    }
    let d = (r - 2) / 2;
    let p = |e: u32| 1i64 << e;
    Ok(DSParams {
        v: p(2 * d + 2),
        k: p(d) * (p(d + 1) - 1),
        lambda: p(d) * (p(d) - 1),
        n: p(2 * d),
    })
}

fn log2_exact(v: usize) -> Option<u32> {
    v.is_power_of_two().then(|| v.trailing_zeros())
}

/// Existence criterion for difference sets in an abelian group of order
/// `2^(2d+2)`: the exponent is at most `2^(d+2)`.
pub fn kraemer_exists(group: &FiniteGroup) -> Result<bool> {
    let r = log2_exact(group.order())
        .filter(|r| *r >= 2 && r % 2 == 0)
        .ok_or_else(|| invalid(format!("order {} is not 2^(2d+2)", group.order())))?;
    if !group.is_abelian() {
        return Err(Error::Unsupported(
            "existence criterion applies to abelian groups".into(),
        ));
    }
    let d = (r - 2) / 2;
    Ok(group.exponent() <= 1usize << (d + 2))
}

pub fn mcfarland_params(q: i64, d: u32) -> DSParams {
    let qd = q.pow(d);
    let s = (q.pow(d + 1) - 1) / (q - 1);
    DSParams {
        v: q.pow(d + 1) * (s + 1),
        k: qd * s,
        lambda: qd * (s - qd),
        n: qd * qd,
    }
}

pub fn spence_params(d: u32) -> DSParams {
    let td = 3i64.pow(d);
    let s = (3i64.pow(d + 1) - 1) / 2;
    DSParams {
        v: 3 * td * s,
        k: td * (s + 1),
        lambda: td * (s + 1 - td),
        n: td * td,
    }
}

/// All index-`p` subgroups of an elementary abelian `E`, as kernels of the
/// nonzero functionals normalised to leading coefficient 1, ordered
/// lexicographically by coefficient vector relative to `basis`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperplaneFamily {
    pub e: Subgroup,
    pub p: u32,
    pub basis: Vec<Elem>,
    pub planes: Vec<Subgroup>,
    /// `coords[i]` is the coordinate vector of `e.elements()[i]`.
    coords: Vec<Vec<u32>>,
}

impl HyperplaneFamily {
    pub fn new(group: &FiniteGroup, e: &Subgroup, p: u32, basis: &[Elem]) -> Result<Self> {
        if p < 2 || !(2..p).all(|f| !p.is_multiple_of(f)) {
            return Err(invalid(format!("{p} is not prime")));
        }
        let dim = basis.len();
        if dim == 0 || p.checked_pow(dim as u32) != Some(e.order() as u32) {
            return Err(Error::InvalidSubgroup(format!(
                "subgroup of order {} is not spanned by {} basis vectors over GF({p})",
                e.order(),
                dim
            )));
        }
        if basis.iter().any(|&b| !e.contains(b)) {
            return Err(Error::InvalidSubgroup("basis element outside the subgroup".into()));
        }
        for &a in e.elements() {
            if group.pow(a, p as i64) != 0 {
                return Err(Error::InvalidSubgroup("subgroup is not elementary abelian".into()));
            }
            for &b in e.elements() {
                if group.mul(a, b) != group.mul(b, a) {
                    return Err(Error::InvalidSubgroup("subgroup is not abelian".into()));
                }
            }
        }
        let mut coords = vec![Vec::new(); e.order()];
        let mut hit = vec![false; e.order()];
        for idx in 0..e.order() {
            let vec: Vec<u32> = {
                let mut x = idx;
                let mut c = vec![0; dim];
                for slot in c.iter_mut().rev() {
                    *slot = (x % p as usize) as u32;
                    x /= p as usize;
                }
                c
            };
            let g = vec
                .iter()
                .zip(basis)
                .fold(0, |acc, (&a, &b)| group.mul(acc, group.pow(b, a as i64)));
            let pos = e.elements().binary_search(&g).expect("closed subgroup");
            if std::mem::replace(&mut hit[pos], true) {
                return Err(Error::InvalidSubgroup("basis is linearly dependent".into()));
            }
            coords[pos] = vec;
        }
        let mut planes = Vec::new();
        let total = (p as usize).pow(dim as u32);
        for idx in 1..total {
            let mut x = idx;
            let mut c = vec![0u32; dim];
            for slot in c.iter_mut().rev() {
                *slot = (x % p as usize) as u32;
                x /= p as usize;
            }
            if c.iter().find(|&&a| a != 0) != Some(&1) {
                continue;
            }
            let kernel: Vec<Elem> = e
                .elements()
                .iter()
                .zip(&coords)
                .filter(|(_, a)| a.iter().zip(&c).map(|(&x, &y)| x * y).sum::<u32>() % p == 0)
                .map(|(&g, _)| g)
                .collect();
            planes.push(group.subgroup_from_set(&kernel)?);
        }
        Ok(HyperplaneFamily {
            e: e.clone(),
            p,
            basis: basis.to_vec(),
            planes,
            coords,
        })
    }

    /// Family relative to the greedy basis of `e`.
    pub fn with_default_basis(group: &FiniteGroup, e: &Subgroup, p: u32) -> Result<Self> {
        let basis = e.elementary_basis(group, p)?;
        Self::new(group, e, p, &basis)
    }

    pub fn len(&self) -> usize {
        self.planes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.planes.is_empty()
    }

    /// Dimension `d + 1` of `E`.
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of `g` in `E` relative to the basis.
    pub fn coordinates(&self, g: Elem) -> Option<&[u32]> {
        self.e
            .elements()
            .binary_search(&g)
            .ok()
            .map(|i| self.coords[i].as_slice())
    }

    /// `E \ H_i` for a 0-based plane index.
    pub fn plane_complement(&self, i: usize) -> Vec<Elem> {
        let h = &self.planes[i];
        self.e.elements().iter().copied().filter(|&g| !h.contains(g)).collect()
    }
}

/// `sum_i g_i H_i` over 0-based slots; no verification.
pub fn coset_union(group: &FiniteGroup, family: &HyperplaneFamily, slot_reps: &[Elem]) -> Vec<Elem> {
    let mut out = Vec::with_capacity(slot_reps.len() * family.planes.first().map_or(0, Subgroup::order));
    for (&g, h) in slot_reps.iter().zip(&family.planes) {
        out.extend(h.elements().iter().map(|&x| group.mul(g, x)));
    }
    out.sort_unstable();
    out
}

/// `g_m (E - H_m) + sum_{i != m} g_i H_i` with `m` a 0-based slot; no verification.
pub fn spence_union(
    group: &FiniteGroup,
    family: &HyperplaneFamily,
    slot_reps: &[Elem],
    complemented: usize,
) -> Vec<Elem> {
    let mut out = Vec::new();
    for (i, (&g, h)) in slot_reps.iter().zip(&family.planes).enumerate() {
        if i == complemented {
            out.extend(family.plane_complement(i).into_iter().map(|x| group.mul(g, x)));
        } else {
            out.extend(h.elements().iter().map(|&x| group.mul(g, x)));
        }
    }
    out.sort_unstable();
    out
}

fn check_central_family(group: &FiniteGroup, family: &HyperplaneFamily, index: usize) -> Result<()> {
    if !group.is_central(family.e.elements()) {
        return Err(Error::Hypothesis("subgroup E is not central".into()));
    }
    if family.e.order() * index != group.order() {
        return Err(Error::Hypothesis(format!(
            "E has index {} but the construction needs index {index}",
            group.order() / family.e.order()
        )));
    }
    Ok(())
}

fn check_distinct_cosets(group: &FiniteGroup, family: &HyperplaneFamily, reps: &[Elem]) -> Result<()> {
    let tr = group.coset_transversal(&family.e);
    let mut seen = vec![false; tr.index()];
    for &g in reps {
        if g as usize >= group.order() {
            return Err(invalid(format!("element id {g} out of range")));
        }
        if std::mem::replace(&mut seen[tr.coset_of(g)], true) {
            return Err(Error::Hypothesis("representatives share a coset of E".into()));
        }
    }
    Ok(())
}

/// `D = sum_{i=1}^s g_{a(i)} H_i` with `transversal = g_0..g_s` and
/// `assignment[i-1] = a(i)` injective.
pub fn mcfarland_construct(
    group: &Arc<FiniteGroup>,
    family: &HyperplaneFamily,
    transversal: &[Elem],
    assignment: &[usize],
) -> Result<DifferenceSetRecord> {
    let s = family.len();
    check_central_family(group, family, s + 1)?;
    if transversal.len() != s + 1 || assignment.len() != s {
        return Err(invalid(format!(
            "need {} representatives and {s} slot assignments",
            s + 1
        )));
    }
    check_distinct_cosets(group, family, transversal)?;
    let mut used = vec![false; s + 1];
    let mut reps = Vec::with_capacity(s);
    for &a in assignment {
        if a > s || std::mem::replace(&mut used[a], true) {
            return Err(invalid("slot assignment must be injective into 0..=s"));
        }
        reps.push(transversal[a]);
    }
    let set = coset_union(group, family, &reps);
    let q = family.p as i64;
    let expect = mcfarland_params(q, family.dimension() as u32 - 1);
    finish(group, set, expect)
}

/// `D = g_m (E - H_m) + sum_{i != m} g_i H_i` with `reps = g_1..g_s` and
/// 1-based `m`.
pub fn spence_construct(
    group: &Arc<FiniteGroup>,
    family: &HyperplaneFamily,
    reps: &[Elem],
    m: usize,
) -> Result<DifferenceSetRecord> {
    if family.p != 3 {
        return Err(Error::Hypothesis(
            "construction needs E elementary abelian of exponent 3".into(),
        ));
    }
    let s = family.len();
    check_central_family(group, family, s)?;
    if reps.len() != s || m == 0 || m > s {
        return Err(invalid(format!("need {s} representatives and a slot in 1..={s}")));
    }
    check_distinct_cosets(group, family, reps)?;
    let set = spence_union(group, family, reps, m - 1);
    finish(group, set, spence_params(family.dimension() as u32 - 1))
}

fn finish(group: &Arc<FiniteGroup>, set: Vec<Elem>, expect: DSParams) -> Result<DifferenceSetRecord> {
    if !has_params(group, &set, &expect) {
        return Err(Error::Verification(format!(
            "constructed set does not have parameters {expect}"
        )));
    }
    Ok(DifferenceSetRecord {
        group: group.clone(),
        set,
        params: expect,
    })
}
