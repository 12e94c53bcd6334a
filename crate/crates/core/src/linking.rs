//! Reduced and full linking systems of difference sets.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::designs::{complement_set, has_params, is_difference_set, is_reversible_set, DSParams, DifferenceSetRecord};
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup};
use crate::group_ring::{decompose_coeffs, quotient_counts, quotient_counts_into};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Branch {
    /// `nu = k(k + sqrt n)/v`, `mu = nu - sqrt n`.
    Upper,
    /// `nu = k(k - sqrt n)/v`, `mu = nu + sqrt n`.
    Lower,
}

/// The two coefficients of a linked product `D_i D_j^(-1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MuNu {
    pub mu: i64,
    pub nu: i64,
    pub branch: Branch,
}

fn isqrt(n: i64) -> Option<i64> {
    if n < 0 {
        return None;
    }
    let r = (n as f64).sqrt().round() as i64;
    (r - 1..=r + 1).find(|&x| x >= 0 && x * x == n)
}

/// Integral `(mu, nu)` pairs permitted by the parameters, upper branch first.
pub fn mu_nu_candidates(p: &DSParams) -> Vec<MuNu> {
    let Some(root) = isqrt(p.n) else {
        return Vec::new();
    };
    if root == 0 || p.v == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for (branch, sign) in [(Branch::Upper, 1), (Branch::Lower, -1)] {
        let num = p.k * (p.k + sign * root);
        if num % p.v == 0 {
            let nu = num / p.v;
            out.push(MuNu {
                mu: nu - sign * root,
                nu,
                branch,
            });
        }
    }
    out
}

/// Witness `W` with `A B^(-1) = (mu - nu) W + nu G`, when `W` is a
/// difference set with parameters `params`.
pub fn link_witness(group: &FiniteGroup, a: &[Elem], b: &[Elem], munu: &MuNu, params: &DSParams) -> Option<Vec<Elem>> {
    let mut buf = vec![0; group.order()];
    link_witness_with(group, a, b, munu, params, &mut buf)
}

/// [`link_witness`] with a caller-provided scratch buffer of length `v`.
pub fn link_witness_with(
    group: &FiniteGroup,
    a: &[Elem],
    b: &[Elem],
    munu: &MuNu,
    params: &DSParams,
    buf: &mut [i64],
) -> Option<Vec<Elem>> {
    quotient_counts_into(group, a, b, buf);
    let w = decompose_coeffs(buf, munu.mu, munu.nu).ok()??;
    has_params(group, &w, params).then_some(w)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedLinkingSystem {
    pub group: Arc<FiniteGroup>,
    pub params: DSParams,
    pub munu: MuNu,
    sets: Vec<Vec<Elem>>,
    /// Keyed by 1-based `(i, j)`, `i != j`.
    witnesses: BTreeMap<(usize, usize), Vec<Elem>>,
}

fn normalize_sets(group: &FiniteGroup, sets: &[Vec<Elem>]) -> Option<Vec<Vec<Elem>>> {
    sets.iter()
        .map(|s| {
            let mut s = s.clone();
            s.sort_unstable();
            s.dedup();
            s.iter().all(|&g| (g as usize) < group.order()).then_some(s)
        })
        .collect()
}

fn common_params(group: &FiniteGroup, sets: &[Vec<Elem>]) -> Option<DSParams> {
    let params = is_difference_set(group, sets.first()?)?;
    sets[1..]
        .iter()
        .all(|s| has_params(group, s, &params))
        .then_some(params)
}

fn ordered_pairs(l: usize) -> Vec<(usize, usize)> {
    (1..=l)
        .flat_map(|i| (1..=l).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect()
}

/// Decides whether `sets` is a reduced linking system; one `(mu, nu)` must
/// work for every ordered pair.
pub fn verify_reduced(group: &Arc<FiniteGroup>, sets: &[Vec<Elem>]) -> Option<ReducedLinkingSystem> {
    if sets.len() < 2 {
        return None;
    }
    let sets = normalize_sets(group, sets)?;
    let params = common_params(group, &sets)?;
    let pairs = ordered_pairs(sets.len());
    for munu in mu_nu_candidates(&params) {
        let found: Vec<Option<Vec<Elem>>> = pairs
            .par_iter()
            .map(|&(i, j)| link_witness(group, &sets[i - 1], &sets[j - 1], &munu, &params))
            .collect();
        if found.iter().all(Option::is_some) {
            let witnesses = pairs.iter().copied().zip(found.into_iter().flatten()).collect();
            return Some(ReducedLinkingSystem {
                group: group.clone(),
                params,
                munu,
                sets,
                witnesses,
            });
        }
    }
    None
}

impl ReducedLinkingSystem {
    /// Rebuilds a system from stored data, recomputing every product and
    /// requiring the stored witnesses and `(mu, nu)` to match.
    pub fn from_parts(
        group: &Arc<FiniteGroup>,
        sets: &[Vec<Elem>],
        mu: i64,
        nu: i64,
        witnesses: &BTreeMap<(usize, usize), Vec<Elem>>,
    ) -> Result<Self> {
        let sys = verify_reduced(group, sets)
            .ok_or_else(|| Error::Verification("sets do not form a reduced linking system".into()))?;
        if (sys.munu.mu, sys.munu.nu) != (mu, nu) {
            return Err(Error::Verification(format!(
                "stated (mu,nu) = ({mu},{nu}) but the system links with ({},{})",
                sys.munu.mu, sys.munu.nu
            )));
        }
        let mut keys: Vec<_> = witnesses.keys().copied().collect();
        keys.sort_unstable();
        if keys != ordered_pairs(sets.len()) {
            return Err(Error::Malformed(
                "witness map must cover every ordered pair (i,j), i != j".into(),
            ));
        }
        for (key, stored) in witnesses {
            let mut s = stored.clone();
            s.sort_unstable();
            if sys.witnesses[key] != s {
                return Err(Error::Verification(format!("stored witness for {key:?} is wrong")));
            }
        }
        Ok(sys)
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn sets(&self) -> &[Vec<Elem>] {
        &self.sets
    }

    /// `D_i` for 1-based `i`.
    pub fn set(&self, i: usize) -> &[Elem] {
        &self.sets[i - 1]
    }

    pub fn records(&self) -> Vec<DifferenceSetRecord> {
        self.sets
            .iter()
            .map(|s| DifferenceSetRecord {
                group: self.group.clone(),
                set: s.clone(),
                params: self.params,
            })
            .collect()
    }

    /// `D(i, j)` for 1-based distinct `i`, `j`.
    pub fn witness(&self, i: usize, j: usize) -> Option<&[Elem]> {
        self.witnesses.get(&(i, j)).map(Vec::as_slice)
    }

    pub fn witnesses(&self) -> &BTreeMap<(usize, usize), Vec<Elem>> {
        &self.witnesses
    }

    pub fn reversibility_profile(&self) -> Vec<bool> {
        self.sets.iter().map(|s| is_reversible_set(&self.group, s)).collect()
    }

    /// Whether every set of the expanded system is inverse-closed.
    pub fn is_reversible_system(&self) -> bool {
        self.reversibility_profile().into_iter().all(|r| r)
            && self.witnesses.values().all(|w| is_reversible_set(&self.group, w))
    }

    /// `{G - D_i}` with `(mu', nu') = (v - 2k + nu, v - 2k + mu)`.
    pub fn complement_system(&self) -> ReducedLinkingSystem {
        let v = self.group.order();
        let shift = self.params.v - 2 * self.params.k;
        let (mu, nu) = (shift + self.munu.nu, shift + self.munu.mu);
        let branch = match self.munu.branch {
            Branch::Upper => Branch::Lower,
            Branch::Lower => Branch::Upper,
        };
        ReducedLinkingSystem {
            group: self.group.clone(),
            params: self.params.complement(),
            munu: MuNu { mu, nu, branch },
            sets: self.sets.iter().map(|s| complement_set(v, s)).collect(),
            witnesses: self.witnesses.iter().map(|(&k, w)| (k, complement_set(v, w))).collect(),
        }
    }

    /// Full system on indices `0..=l`.
    pub fn expand(&self) -> LinkingSystem {
        let mut sets = BTreeMap::new();
        for (i, d) in self.sets.iter().enumerate() {
            sets.insert((i + 1, 0), d.clone());
            let mut inv: Vec<Elem> = d.iter().map(|&g| self.group.inv(g)).collect();
            inv.sort_unstable();
            sets.insert((0, i + 1), inv);
        }
        for (&k, w) in &self.witnesses {
            sets.insert(k, w.clone());
        }
        LinkingSystem {
            group: self.group.clone(),
            size: self.len() + 1,
            params: self.params,
            munu: self.munu,
            sets,
        }
    }
}

/// Sets `D_{i,j}` for `0 <= i != j < size`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkingSystem {
    pub group: Arc<FiniteGroup>,
    /// Number of indices, `l + 1`.
    pub size: usize,
    pub params: DSParams,
    pub munu: MuNu,
    pub sets: BTreeMap<(usize, usize), Vec<Elem>>,
}

impl LinkingSystem {
    pub fn get(&self, i: usize, j: usize) -> Result<&[Elem]> {
        self.sets
            .get(&(i, j))
            .map(Vec::as_slice)
            .ok_or_else(|| Error::Malformed(format!("missing set D({i},{j})")))
    }

    /// Checks `D_{h,i} D_{i,j} = (mu - nu) D_{h,j} + nu G` for distinct
    /// `h, i, j`, `D_{i,j} = D_{j,i}^(-1)`, and the common parameters.
    pub fn verify_full(&self) -> Result<bool> {
        if self.size < 3 {
            return Err(Error::Malformed(format!(
                "a full system needs at least 3 indices, got {}",
                self.size
            )));
        }
        let g = &self.group;
        for i in 0..self.size {
            for j in 0..self.size {
                if i != j {
                    self.get(i, j)?;
                }
            }
        }
        let expected = self.sets.len();
        if expected != self.size * (self.size - 1) {
            return Err(Error::Malformed("index outside 0..size".into()));
        }
        for s in self.sets.values() {
            if s.iter().any(|&x| x as usize >= g.order()) || !has_params(g, s, &self.params) {
                return Ok(false);
            }
        }
        for i in 0..self.size {
            for j in 0..self.size {
                if i == j {
                    continue;
                }
                let mut inv: Vec<Elem> = self.get(j, i)?.iter().map(|&x| g.inv(x)).collect();
                inv.sort_unstable();
                if self.get(i, j)? != inv.as_slice() {
                    return Ok(false);
                }
            }
        }
        let triples: Vec<(usize, usize, usize)> = (0..self.size)
            .flat_map(|h| (0..self.size).flat_map(move |i| (0..self.size).map(move |j| (h, i, j))))
            .filter(|&(h, i, j)| h != i && i != j && h != j)
            .collect();
        let (mu, nu) = (self.munu.mu, self.munu.nu);
        let ok = triples.par_iter().all(|&(h, i, j)| {
            let dhi = &self.sets[&(h, i)];
            // D_{h,i} D_{i,j} = D_{h,i} (D_{j,i})^(-1)
            let counts = quotient_counts(g, dhi, &self.sets[&(j, i)]);
            let member = g.membership(&self.sets[&(h, j)]);
            counts.iter().zip(member).all(|(&c, m)| c == if m { mu } else { nu })
        });
        Ok(ok)
    }

    /// `D_i = D_{i,0}`; the result is re-verified.
    pub fn reduce(&self) -> Result<ReducedLinkingSystem> {
        if !self.verify_full()? {
            return Err(Error::Verification("full system does not verify".into()));
        }
        let sets: Vec<Vec<Elem>> = (1..self.size).map(|i| self.sets[&(i, 0)].clone()).collect();
        let sys = verify_reduced(&self.group, &sets)
            .ok_or_else(|| Error::Verification("reduced sets do not verify".into()))?;
        if sys.munu.mu != self.munu.mu || sys.munu.nu != self.munu.nu {
            return Err(Error::Verification(
                "reduced system links with different (mu,nu)".into(),
            ));
        }
        Ok(sys)
    }

    pub fn is_reversible(&self) -> bool {
        self.sets.values().all(|s| is_reversible_set(&self.group, s))
    }
}
