//! Exhaustive searches: difference-set enumeration, linking graphs and
//! their cliques, pair sweeps over McFarland and Spence constructions, and
//! maximum bent sets on four variables.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::bent::{is_bent, BooleanFunction};
use crate::designs::{
    mcfarland_construct, mcfarland_params, spence_construct, spence_params, DSParams, DifferenceSetRecord,
    HyperplaneFamily,
};
use crate::error::{invalid, Error, Result};
use crate::group::{Elem, FiniteGroup, Subgroup};
use crate::linking::{link_witness_with, mu_nu_candidates, verify_reduced, MuNu, ReducedLinkingSystem};

/// Every `k`-subset of `G` that is a difference set, in lexicographic order
/// of sorted element ids.
pub fn enumerate_difference_sets(group: &Arc<FiniteGroup>, k: usize) -> Vec<DifferenceSetRecord> {
    let v = group.order();
    if k > v {
        return Vec::new();
    }
    if k <= 1 {
        let sets: Vec<Vec<Elem>> = if k == 0 {
            vec![Vec::new()]
        } else {
            (0..v as Elem).map(|g| vec![g]).collect()
        };
        return sets
            .iter()
            .filter_map(|s| DifferenceSetRecord::new(group.clone(), s).ok())
            .collect();
    }
    if !(k * (k - 1)).is_multiple_of(v - 1) {
        return Vec::new();
    }
    let lambda = (k * (k - 1) / (v - 1)) as u32;
    let mut found: Vec<Vec<Vec<Elem>>> = (0..=(v - k) as Elem)
        .into_par_iter()
        .map(|first| {
            let mut st = DsSearch {
                group,
                k,
                lambda,
                counts: vec![0; v],
                chosen: vec![first],
                out: Vec::new(),
            };
            st.extend(first + 1);
            st.out
        })
        .collect();
    found
        .iter_mut()
        .flat_map(std::mem::take)
        .map(|s| DifferenceSetRecord::new(group.clone(), &s).expect("search emits difference sets"))
        .collect()
}

struct DsSearch<'a> {
    group: &'a FiniteGroup,
    k: usize,
    lambda: u32,
    counts: Vec<u32>,
    chosen: Vec<Elem>,
    out: Vec<Vec<Elem>>,
}

impl DsSearch<'_> {
    fn extend(&mut self, start: Elem) {
        if self.chosen.len() == self.k {
            self.out.push(self.chosen.clone());
            return;
        }
        let v = self.group.order() as Elem;
        let remaining = (self.k - self.chosen.len()) as Elem;
        for x in start..=v - remaining {
            if self.add(x) {
                self.chosen.push(x);
                self.extend(x + 1);
                self.chosen.pop();
            }
            self.remove(x);
        }
    }

    /// Counts the new quotients of `x`; false if some count exceeds lambda.
    /// Always undone by [`Self::remove`].
    fn add(&mut self, x: Elem) -> bool {
        let g = self.group;
        let mut ok = true;
        for &y in &self.chosen {
            for q in [g.mul(x, g.inv(y)), g.mul(y, g.inv(x))] {
                self.counts[q as usize] += 1;
                ok &= self.counts[q as usize] <= self.lambda;
            }
        }
        ok
    }

    fn remove(&mut self, x: Elem) {
        let g = self.group;
        for &y in &self.chosen {
            for q in [g.mul(x, g.inv(y)), g.mul(y, g.inv(x))] {
                self.counts[q as usize] -= 1;
            }
        }
    }
}

/// Dense symmetric adjacency stored as one bitset per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
struct BitGraph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

impl BitGraph {
    fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        BitGraph {
            n,
            words,
            rows: vec![0; n * words],
        }
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.rows[i * self.words..(i + 1) * self.words]
    }

    fn set(&mut self, i: usize, j: usize) {
        self.rows[i * self.words + j / 64] |= 1 << (j % 64);
    }

    fn has(&self, i: usize, j: usize) -> bool {
        self.rows[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.has(i, j) == self.has(j, i)))
    }

    fn edge_count(&self) -> usize {
        let twice: usize = self.rows.iter().map(|w| w.count_ones() as usize).sum();
        twice / 2
    }

    /// Bitset of the neighbours of `i` above `i`.
    fn forward(&self, i: usize) -> Vec<u64> {
        self.row(i)
            .iter()
            .enumerate()
            .map(|(w, &r)| r & above_mask(w, i))
            .collect()
    }

    /// All `size`-cliques as increasing vertex lists, in lexicographic order.
    fn cliques(&self, size: usize) -> Vec<Vec<usize>> {
        if size == 0 {
            return vec![Vec::new()];
        }
        let mut per_root: Vec<Vec<Vec<usize>>> = (0..self.n)
            .into_par_iter()
            .map(|root| {
                let mut out = Vec::new();
                let mut stack = vec![root];
                self.grow(&self.forward(root), size, &mut stack, &mut out);
                out
            })
            .collect();
        per_root.iter_mut().flat_map(std::mem::take).collect()
    }

    fn grow(&self, cand: &[u64], size: usize, stack: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if stack.len() == size {
            out.push(stack.clone());
            return;
        }
        for v in bits(cand) {
            let next: Vec<u64> = cand
                .iter()
                .zip(self.row(v))
                .enumerate()
                .map(|(w, (&c, &r))| c & r & above_mask(w, v))
                .collect();
            stack.push(v);
            self.grow(&next, size, stack, out);
            stack.pop();
        }
    }

    /// A maximum clique (empty for the empty graph), by branch and bound
    /// with a greedy colouring bound.
    fn max_clique(&self, target: Option<usize>) -> Vec<usize> {
        let mut best = Vec::new();
        let mut cand = vec![0u64; self.words];
        for v in 0..self.n {
            cand[v / 64] |= 1 << (v % 64);
        }
        let mut current = Vec::new();
        self.expand(&cand, &mut current, &mut best, target);
        best
    }

    fn expand(&self, cand: &[u64], current: &mut Vec<usize>, best: &mut Vec<usize>, target: Option<usize>) {
        if target.is_some_and(|t| best.len() >= t) {
            return;
        }
        let (order, colours) = self.colour_sort(cand);
        let mut cand = cand.to_vec();
        for (&v, &c) in order.iter().zip(&colours).rev() {
            if current.len() + c <= best.len() {
                return;
            }
            current.push(v);
            let next: Vec<u64> = cand.iter().zip(self.row(v)).map(|(&a, &b)| a & b).collect();
            if next.iter().all(|&w| w == 0) {
                if current.len() > best.len() {
                    *best = current.clone();
                }
            } else {
                self.expand(&next, current, best, target);
            }
            current.pop();
            cand[v / 64] &= !(1 << (v % 64));
            if target.is_some_and(|t| best.len() >= t) {
                return;
            }
        }
    }

    /// Greedy colouring of `cand`; vertices listed by nondecreasing colour
    /// with the colour count up to each vertex.
    fn colour_sort(&self, cand: &[u64]) -> (Vec<usize>, Vec<usize>) {
        let mut uncoloured = cand.to_vec();
        let mut order = Vec::new();
        let mut colours = Vec::new();
        let mut colour = 0;
        while uncoloured.iter().any(|&w| w != 0) {
            colour += 1;
            let mut avail = uncoloured.clone();
            while let Some(v) = first_bit(&avail) {
                avail[v / 64] &= !(1 << (v % 64));
                uncoloured[v / 64] &= !(1 << (v % 64));
                for (a, &r) in avail.iter_mut().zip(self.row(v)) {
                    *a &= !r;
                }
                order.push(v);
                colours.push(colour);
            }
        }
        (order, colours)
    }
}

fn above_mask(word: usize, v: usize) -> u64 {
    let lo = word * 64;
    if lo > v {
        !0
    } else if lo + 64 <= v + 1 {
        0
    } else {
        !0u64 << (v + 1 - lo)
    }
}

fn first_bit(words: &[u64]) -> Option<usize> {
    words
        .iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(i, &w)| i * 64 + w.trailing_zeros() as usize)
}

fn bits(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(w, &word)| {
        let mut x = word;
        std::iter::from_fn(move || {
            (x != 0).then(|| {
                let b = x.trailing_zeros() as usize;
                x &= x - 1;
                w * 64 + b
            })
        })
    })
}

/// Difference sets joined when both ordered products decompose with the
/// given `(mu, nu)` and a valid witness.
#[derive(Clone, Debug)]
pub struct LinkingGraph {
    pub group: Arc<FiniteGroup>,
    pub vertices: Vec<DifferenceSetRecord>,
    pub munu: MuNu,
    adj: BitGraph,
}

impl LinkingGraph {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_adjacent(&self, i: usize, j: usize) -> bool {
        self.adj.has(i, j)
    }

    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        bits(self.adj.row(i)).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.edge_count()
    }

    pub fn is_symmetric(&self) -> bool {
        self.adj.is_symmetric()
    }
}

/// Tests each ordered pair separately; an edge needs both directions.
pub fn build_linking_graph(
    group: &Arc<FiniteGroup>,
    records: &[DifferenceSetRecord],
    munu: MuNu,
) -> Result<LinkingGraph> {
    if let Some(first) = records.first() {
        if records.iter().any(|r| r.params != first.params || *r.group != **group) {
            return Err(invalid("records must share the group and parameters"));
        }
    }
    let n = records.len();
    let linked: Vec<Vec<bool>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut buf = vec![0; group.order()];
            (0..n)
                .map(|j| {
                    i != j
                        && link_witness_with(
                            group,
                            &records[i].set,
                            &records[j].set,
                            &munu,
                            &records[i].params,
                            &mut buf,
                        )
                        .is_some()
                })
                .collect()
        })
        .collect();
    let mut adj = BitGraph::new(n);
    for (i, row) in linked.iter().enumerate() {
        for (j, &forward) in row.iter().enumerate() {
            if forward && linked[j][i] {
                adj.set(i, j);
            }
        }
    }
    Ok(LinkingGraph {
        group: group.clone(),
        vertices: records.to_vec(),
        munu,
        adj,
    })
}

/// All reduced linking systems of `size` sets from the graph, each
/// re-verified. Sizes below 2 give nothing.
pub fn enumerate_systems(graph: &LinkingGraph, size: usize) -> Result<Vec<ReducedLinkingSystem>> {
    if size < 2 {
        return Ok(Vec::new());
    }
    let cliques = graph.adj.cliques(size);
    let systems: Vec<Option<ReducedLinkingSystem>> = cliques
        .par_iter()
        .map(|c| {
            let sets: Vec<Vec<Elem>> = c.iter().map(|&i| graph.vertices[i].set.clone()).collect();
            verify_reduced(&graph.group, &sets)
        })
        .collect();
    let mut out: Vec<ReducedLinkingSystem> = systems
        .into_iter()
        .map(|s| s.ok_or_else(|| Error::Verification("clique failed re-verification".into())))
        .collect::<Result<_>>()?;
    out.sort_by_key(system_key);
    out.dedup_by(|a, b| system_key(a) == system_key(b));
    Ok(out)
}

/// Sorted list of sorted sets.
pub fn system_key(sys: &ReducedLinkingSystem) -> Vec<Vec<Elem>> {
    let mut key = sys.sets().to_vec();
    key.sort();
    key
}

/// Largest clique size, or 0 when the graph has no edge.
pub fn max_system_size(graph: &LinkingGraph) -> usize {
    if graph.edge_count() == 0 {
        return 0;
    }
    graph.adj.max_clique(None).len()
}

/// SHA-256 of the canonical JSON list of system keys, hex encoded.
pub fn systems_digest(systems: &[ReducedLinkingSystem]) -> String {
    let mut keys: Vec<Vec<Vec<Elem>>> = systems.iter().map(system_key).collect();
    keys.sort();
    let text = serde_json::to_string(&keys).expect("integers serialize");
    hex::encode(Sha256::digest(text.as_bytes()))
}

#[derive(Clone, Debug)]
pub struct BranchCensus {
    pub munu: MuNu,
    pub edges: usize,
    pub max_system_size: usize,
    pub systems: Vec<ReducedLinkingSystem>,
}

/// Linking systems of a given size among all `k`-element difference sets.
#[derive(Clone, Debug)]
pub struct Census {
    pub group: Arc<FiniteGroup>,
    pub k: usize,
    pub size: usize,
    pub params: Option<DSParams>,
    pub difference_sets: usize,
    pub branches: Vec<BranchCensus>,
    pub elapsed: Duration,
}

impl Census {
    pub fn system_count(&self) -> usize {
        self.branches.iter().map(|b| b.systems.len()).sum()
    }

    pub fn max_system_size(&self) -> usize {
        self.branches.iter().map(|b| b.max_system_size).max().unwrap_or(0)
    }

    pub fn digest(&self) -> String {
        let all: Vec<ReducedLinkingSystem> = self.branches.iter().flat_map(|b| b.systems.clone()).collect();
        systems_digest(&all)
    }
}

pub fn census(group: &Arc<FiniteGroup>, k: usize, size: usize) -> Result<Census> {
    let start = Instant::now();
    let records = enumerate_difference_sets(group, k);
    let params = records.first().map(|r| r.params);
    let mut branches = Vec::new();
    if let Some(p) = &params {
        for munu in mu_nu_candidates(p) {
            let graph = build_linking_graph(group, &records, munu)?;
            branches.push(BranchCensus {
                munu,
                edges: graph.edge_count(),
                max_system_size: max_system_size(&graph),
                systems: enumerate_systems(&graph, size)?,
            });
        }
    }
    Ok(Census {
        group: group.clone(),
        k,
        size,
        params,
        difference_sets: records.len(),
        branches,
        elapsed: start.elapsed(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SweepMode {
    /// One set per translation class on the left, every set on the right.
    Pruned,
    /// Every ordered pair of distinct sets.
    Full,
}

#[derive(Clone, Debug)]
pub struct SweepReport {
    pub group_order: usize,
    pub params: DSParams,
    pub candidates: Vec<MuNu>,
    pub mode: SweepMode,
    /// Sets produced before deduplication.
    pub constructed: usize,
    pub distinct: usize,
    pub translation_classes: usize,
    pub closed_under_translation: bool,
    pub pairs_tested: u64,
    pub linked_pairs: u64,
    /// Tested pairs whose complemented slots agree and differ.
    pub slot_cases: Option<[u64; 2]>,
    pub invariance_samples: usize,
    pub invariance_holds: bool,
    pub elapsed: Duration,
}

/// Pair test against every admissible `(mu, nu)`, with a bitmask prefilter
/// when `v <= 64`.
struct PairTester<'a> {
    group: &'a FiniteGroup,
    params: DSParams,
    candidates: Vec<MuNu>,
    /// `translates[s][g]` is the mask of `g S` when `v <= 64`.
    translates: Vec<Vec<u64>>,
    masks: Vec<u64>,
}

impl<'a> PairTester<'a> {
    fn new(group: &'a FiniteGroup, params: DSParams, sets: &[Vec<Elem>]) -> Self {
        let candidates = mu_nu_candidates(&params);
        let (masks, translates) = if group.order() <= 64 {
            let mask = |s: &[Elem]| s.iter().fold(0u64, |m, &x| m | 1 << x);
            let masks = sets.iter().map(|s| mask(s)).collect();
            let translates = sets
                .iter()
                .map(|s| {
                    group
                        .elements()
                        .map(|g| s.iter().fold(0u64, |m, &x| m | 1 << group.mul(g, x)))
                        .collect()
                })
                .collect();
            (masks, translates)
        } else {
            (Vec::new(), Vec::new())
        };
        PairTester {
            group,
            params,
            candidates,
            translates,
            masks,
        }
    }

    /// Coefficient of `g` in `A B^(-1)` is `|A ∩ g B|`.
    fn links(&self, sets: &[Vec<Elem>], a: usize, b: usize, buf: &mut [i64]) -> bool {
        self.candidates.iter().any(|munu| {
            if !self.masks.is_empty() {
                let ma = self.masks[a];
                let ok = self.translates[b].iter().all(|&t| {
                    let c = (ma & t).count_ones() as i64;
                    c == munu.mu || c == munu.nu
                });
                if !ok {
                    return false;
                }
            }
            link_witness_with(self.group, &sets[a], &sets[b], munu, &self.params, buf).is_some()
        })
    }
}

fn translate(group: &FiniteGroup, g: Elem, set: &[Elem]) -> Vec<Elem> {
    let mut out: Vec<Elem> = set.iter().map(|&x| group.mul(g, x)).collect();
    out.sort_unstable();
    out
}

fn right_translate(group: &FiniteGroup, set: &[Elem], g: Elem) -> Vec<Elem> {
    let mut out: Vec<Elem> = set.iter().map(|&x| group.mul(x, g)).collect();
    out.sort_unstable();
    out
}

/// Pair sweep over an explicit family of sets with attached slot labels.
fn sweep(
    group: &Arc<FiniteGroup>,
    params: DSParams,
    constructed: Vec<(Vec<Elem>, usize)>,
    track_slots: bool,
    mode: SweepMode,
    start: Instant,
) -> Result<SweepReport> {
    let total = constructed.len();
    let mut index: HashMap<Vec<Elem>, usize> = HashMap::new();
    let mut sets = Vec::new();
    let mut slots = Vec::new();
    for (s, slot) in constructed {
        if !index.contains_key(&s) {
            index.insert(s.clone(), sets.len());
            sets.push(s);
            slots.push(slot);
        }
    }
    let gens = group.generators();
    let closed = sets
        .iter()
        .all(|s| gens.iter().all(|&g| index.contains_key(&translate(group, g, s))));
    let mut class_reps = Vec::new();
    let mut seen: HashSet<usize> = HashSet::new();
    for (i, set) in sets.iter().enumerate() {
        if seen.contains(&i) {
            continue;
        }
        class_reps.push(i);
        for g in group.elements() {
            if let Some(&j) = index.get(&translate(group, g, set)) {
                seen.insert(j);
            }
        }
    }
    let tester = PairTester::new(group, params, &sets);
    let left: Vec<usize> = match mode {
        SweepMode::Pruned => class_reps.clone(),
        SweepMode::Full => (0..sets.len()).collect(),
    };
    let n = sets.len();
    let (pairs, linked, same, diff) = left
        .par_iter()
        .map(|&a| {
            let mut buf = vec![0; group.order()];
            let (mut pairs, mut linked, mut same, mut diff) = (0u64, 0u64, 0u64, 0u64);
            for b in (0..n).filter(|&b| b != a) {
                pairs += 1;
                if slots[a] == slots[b] {
                    same += 1;
                } else {
                    diff += 1;
                }
                if tester.links(&sets, a, b, &mut buf) {
                    linked += 1;
                }
            }
            (pairs, linked, same, diff)
        })
        .reduce(|| (0, 0, 0, 0), |x, y| (x.0 + y.0, x.1 + y.1, x.2 + y.2, x.3 + y.3));
    let (samples, invariance) = check_translation_invariance(group, &tester, &sets, 200, 0x5eed);
    Ok(SweepReport {
        group_order: group.order(),
        params,
        candidates: tester.candidates.clone(),
        mode,
        constructed: total,
        distinct: n,
        translation_classes: class_reps.len(),
        closed_under_translation: closed,
        pairs_tested: pairs,
        linked_pairs: linked,
        slot_cases: track_slots.then_some([same, diff]),
        invariance_samples: samples,
        invariance_holds: invariance,
        elapsed: start.elapsed(),
    })
}

/// Compares the pair test on `(D1, D2)` and `(a D1, D2 b)` for seeded random
/// pairs and translations.
fn check_translation_invariance(
    group: &FiniteGroup,
    tester: &PairTester,
    sets: &[Vec<Elem>],
    samples: usize,
    seed: u64,
) -> (usize, bool) {
    if sets.len() < 2 || !group.is_abelian() {
        return (0, true);
    }
    let mut rng = StdRng::seed_from_u64(seed);
    let mut buf = vec![0; group.order()];
    let v = group.order() as Elem;
    let ok = (0..samples).all(|_| {
        let i = rng.gen_range(0..sets.len());
        let j = rng.gen_range(0..sets.len());
        let a = rng.gen_range(0..v);
        let b = rng.gen_range(0..v);
        let moved = [translate(group, a, &sets[i]), right_translate(group, &sets[j], b)];
        let local = PairTester::new(group, tester.params, &moved);
        tester.links(sets, i, j, &mut buf) == local.links(&moved, 0, 1, &mut buf)
    });
    (samples, ok)
}

/// Translates of `E` modulo `H`: the least element of each coset of `H` in `E`.
fn plane_translates(e: &Subgroup, h: &Subgroup, group: &FiniteGroup) -> Vec<Elem> {
    let mut covered: HashSet<Elem> = HashSet::new();
    let mut reps = Vec::new();
    for &x in e.elements() {
        if covered.insert(x) {
            reps.push(x);
            covered.extend(h.elements().iter().map(|&y| group.mul(x, y)));
        }
    }
    reps
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Cartesian product of index ranges `0..sizes[i]`.
fn product_indices(sizes: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &n in sizes {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..n).map(move |i| {
                    let mut q = p.clone();
                    q.push(i);
                    q
                })
            })
            .collect();
    }
    out
}

/// Upper bound on constructed sets in a sweep.
pub const SWEEP_MAX_SETS: usize = 200_000;

fn central_family(group: &FiniteGroup, p: u32, rank: usize, index: usize) -> Result<HyperplaneFamily> {
    let e = group
        .find_central_elementary_abelian_p(p, rank)
        .into_iter()
        .next()
        .ok_or_else(|| Error::Hypothesis(format!("no central subgroup isomorphic to Z_{p}^{rank}")))?;
    if e.order() * index != group.order() {
        return Err(Error::Hypothesis(format!(
            "group order {} is not {} times {index}",
            group.order(),
            e.order()
        )));
    }
    HyperplaneFamily::with_default_basis(group, &e, p)
}

/// Tests all pairs of McFarland difference sets built over one central
/// `E = Z_q^(d+1)` (`q` prime): every omitted coset, slot assignment and
/// within-coset translate.
pub fn mcfarland_pair_sweep(group: &Arc<FiniteGroup>, q: u32, d: u32, mode: SweepMode) -> Result<SweepReport> {
    let start = Instant::now();
    if d == 0 {
        return Err(invalid("d must be positive"));
    }
    let params = mcfarland_params(q as i64, d);
    let s = ((q as usize).pow(d + 1) - 1) / (q as usize - 1).max(1);
    let family = central_family(group, q, d as usize + 1, s + 1)?;
    let count = (s + 1) * (1..=s).product::<usize>() * (q as usize).pow(s as u32);
    if count > SWEEP_MAX_SETS {
        return Err(Error::Unsupported(format!(
            "{count} constructed sets exceed the sweep limit"
        )));
    }
    let cosets = group.coset_transversal(&family.e).reps().to_vec();
    let translates: Vec<Vec<Elem>> = family
        .planes
        .iter()
        .map(|h| plane_translates(&family.e, h, group))
        .collect();
    let choices = product_indices(&vec![q as usize; s]);
    let mut constructed = Vec::with_capacity(count);
    for omitted in 0..=s {
        let rest: Vec<usize> = (0..=s).filter(|&c| c != omitted).collect();
        for perm in permutations(&rest) {
            for pick in &choices {
                let mut transversal = cosets.clone();
                for (slot, (&c, &t)) in perm.iter().zip(pick).enumerate() {
                    transversal[c] = group.mul(cosets[c], translates[slot][t]);
                }
                let rec = mcfarland_construct(group, &family, &transversal, &perm)?;
                constructed.push((rec.set, 0));
            }
        }
    }
    sweep(group, params, constructed, false, mode, start)
}

/// Tests all pairs of Spence difference sets built over one central
/// `E = Z_3^(d+1)`: every complemented slot, slot assignment and translate.
pub fn spence_pair_sweep(group: &Arc<FiniteGroup>, d: u32, mode: SweepMode) -> Result<SweepReport> {
    let start = Instant::now();
    if d == 0 {
        return Err(invalid("d must be positive"));
    }
    let params = spence_params(d);
    let s = (3usize.pow(d + 1) - 1) / 2;
    let family = central_family(group, 3, d as usize + 1, s)?;
    let count = s * (1..=s).product::<usize>() * 3usize.pow(s as u32);
    if count > SWEEP_MAX_SETS {
        return Err(Error::Unsupported(format!(
            "{count} constructed sets exceed the sweep limit"
        )));
    }
    let cosets = group.coset_transversal(&family.e).reps().to_vec();
    let translates: Vec<Vec<Elem>> = family
        .planes
        .iter()
        .map(|h| plane_translates(&family.e, h, group))
        .collect();
    let choices = product_indices(&vec![3; s]);
    let mut constructed = Vec::with_capacity(count);
    for m in 1..=s {
        for perm in permutations(&(0..s).collect::<Vec<_>>()) {
            for pick in &choices {
                let reps: Vec<Elem> = perm
                    .iter()
                    .zip(pick)
                    .enumerate()
                    .map(|(slot, (&c, &t))| group.mul(cosets[c], translates[slot][t]))
                    .collect();
                let rec = spence_construct(group, &family, &reps, m)?;
                constructed.push((rec.set, m));
            }
        }
    }
    sweep(group, params, constructed, true, mode, start)
}

/// All bent functions of arity 2 or 4, ordered by truth table value.
pub fn enumerate_bent(arity: u32) -> Result<Vec<BooleanFunction>> {
    if arity != 2 && arity != 4 {
        return Err(Error::Unsupported(format!(
            "exhaustive bent enumeration needs arity 2 or 4, got {arity}"
        )));
    }
    let size = 1u64 << (1u32 << arity);
    Ok((0..size)
        .into_par_iter()
        .map(|bits| BooleanFunction::from_bits(arity, bits).expect("small arity"))
        .filter(|f| is_bent(f).expect("even arity"))
        .collect())
}

#[derive(Clone, Debug)]
pub struct BentCliqueReport {
    /// Number of bent functions of arity 4.
    pub vertices: usize,
    pub edges: usize,
    /// Largest bent set containing the zero function.
    pub max_size: usize,
    /// Zero function first.
    pub clique: Vec<BooleanFunction>,
    pub elapsed: Duration,
}

fn bent_graph(d: u32) -> Result<(Vec<BooleanFunction>, BitGraph)> {
    if d != 1 {
        return Err(Error::Unsupported(format!(
            "bent clique search is limited to d = 1, got {d}"
        )));
    }
    let bent = enumerate_bent(4)?;
    let mut is_bent_table = vec![false; 1 << 16];
    for f in &bent {
        is_bent_table[table_bits(f) as usize] = true;
    }
    let codes: Vec<u64> = bent.iter().map(table_bits).collect();
    let mut g = BitGraph::new(bent.len());
    for i in 0..codes.len() {
        for j in 0..codes.len() {
            if i != j && is_bent_table[(codes[i] ^ codes[j]) as usize] {
                g.set(i, j);
            }
        }
    }
    Ok((bent, g))
}

fn table_bits(f: &BooleanFunction) -> u64 {
    f.table()
        .iter()
        .enumerate()
        .fold(0, |acc, (i, &b)| acc | (b as u64) << i)
}

/// Maximum bent set on `Z_2^(2d+2)` containing zero, by clique search over
/// every bent function (every bent function is adjacent to zero).
pub fn bent_max_clique(d: u32) -> Result<BentCliqueReport> {
    let start = Instant::now();
    let (bent, graph) = bent_graph(d)?;
    let clique = graph.max_clique(None);
    Ok(report_clique(bent, &graph, clique, start))
}

fn report_clique(bent: Vec<BooleanFunction>, graph: &BitGraph, clique: Vec<usize>, start: Instant) -> BentCliqueReport {
    let mut fns = vec![BooleanFunction::zero(4)];
    fns.extend(clique.iter().map(|&i| bent[i].clone()));
    BentCliqueReport {
        vertices: bent.len(),
        edges: graph.edge_count(),
        max_size: fns.len(),
        clique: fns,
        elapsed: start.elapsed(),
    }
}

/// A bent set of `size` functions on four variables containing zero, found
/// by clique search.
pub fn bent_clique(size: usize) -> Result<Option<Vec<BooleanFunction>>> {
    let (bent, graph) = bent_graph(1)?;
    if size == 0 {
        return Ok(Some(Vec::new()));
    }
    let clique = graph.max_clique(Some(size - 1));
    let report = report_clique(bent, &graph, clique, Instant::now());
    Ok((report.max_size >= size).then(|| report.clique.into_iter().take(size).collect()))
}
