//! Finite groups given by dense multiplication tables.
//!
//! Elements are ids `0..v` with `0` the identity. Groups built from
//! generators (abelian groups, `D4`, `Q8` and their direct products) carry a
//! normal form: id `i` is the mixed-radix encoding of an exponent vector over
//! the generator list, first generator most significant, and the element is
//! the word `g1^e1 * g2^e2 * ...`. Quotient groups have no generator list and
//! are named after their coset representatives.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::error::{invalid, Error, Result};

/// Element id inside a [`FiniteGroup`].
pub type Elem = u32;

/// Largest order for which a multiplication table is materialised.
pub const MAX_TABLE_ORDER: usize = 4096;

/// Serializable description of a built-in group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Abelian {
        factors: Vec<u32>,
        names: Option<Vec<String>>,
    },
    Dihedral8,
    Quaternion8,
    Product(Vec<GroupSpec>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Generator {
    name: String,
    radix: u32,
}

#[derive(Clone)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<Elem>,
    inverse: Vec<Elem>,
    abelian: bool,
    gens: Vec<Generator>,
    names: Vec<String>,
    lookup: HashMap<String, Elem>,
    spec: Option<GroupSpec>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.table == other.table
    }
}

impl Eq for FiniteGroup {}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order)
            .field("abelian", &self.abelian)
            .field("generators", &self.gens.iter().map(|g| &g.name).collect::<Vec<_>>())
            .finish()
    }
}

/// Sorted list of element ids closed under products and inverses.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subgroup {
    elements: Vec<Elem>,
}

impl Subgroup {
    fn from_sorted(elements: Vec<Elem>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        Subgroup { elements }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn contains(&self, g: Elem) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    /// A basis of an elementary abelian `p`-subgroup, chosen greedily by
    /// smallest element id.
    pub fn elementary_basis(&self, group: &FiniteGroup, p: u32) -> Result<Vec<Elem>> {
        if !group.is_elementary_abelian_set(&self.elements, p) {
            return Err(Error::InvalidSubgroup(format!(
                "subgroup of order {} is not elementary abelian of exponent {p}",
                self.order()
            )));
        }
        let mut basis = Vec::new();
        let mut span = vec![0];
        for &g in &self.elements {
            if span.binary_search(&g).is_ok() {
                continue;
            }
            basis.push(g);
            span = group.subgroup_generated(&basis).elements;
            if span.len() == self.order() {
                break;
            }
        }
        Ok(basis)
    }
}

/// One representative per left coset `rep * H`, the minimum id of each coset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTransversal {
    reps: Vec<Elem>,
    coset_of: Vec<u32>,
}

impl CosetTransversal {
    pub fn reps(&self) -> &[Elem] {
        &self.reps
    }

    pub fn index(&self) -> usize {
        self.reps.len()
    }

    /// Index (into `reps`) of the coset containing `g`.
    pub fn coset_of(&self, g: Elem) -> usize {
        self.coset_of[g as usize] as usize
    }
}

/// `G/N` together with the projection and the coset representatives used to
/// lift quotient elements back into `G`.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: Arc<FiniteGroup>,
    pub projection: Vec<Elem>,
    pub transversal: Vec<Elem>,
}

impl Quotient {
    pub fn project(&self, g: Elem) -> Elem {
        self.projection[g as usize]
    }

    pub fn lift(&self, coset: Elem) -> Elem {
        self.transversal[coset as usize]
    }
}

/// Explicit isomorphism from `make_abelian(factors)` onto an abelian group.
#[derive(Clone, Debug)]
pub struct AbelianBasis {
    pub factors: Vec<u32>,
    pub basis: Vec<Elem>,
    /// `map[std_id]` is the image in the target group.
    pub map: Vec<Elem>,
}

fn mixed_radix_decode(mut id: usize, radices: &[u32]) -> Vec<u32> {
    let mut exps = vec![0; radices.len()];
    for (slot, &r) in exps.iter_mut().zip(radices).rev() {
        *slot = (id % r as usize) as u32;
        id /= r as usize;
    }
    exps
}

fn mixed_radix_encode(exps: &[u32], radices: &[u32]) -> usize {
    exps.iter()
        .zip(radices)
        .fold(0usize, |acc, (&e, &r)| acc * r as usize + e as usize)
}

fn word_name(exps: &[u32], gens: &[Generator]) -> String {
    let parts: Vec<String> = exps
        .iter()
        .zip(gens)
        .filter(|(&e, _)| e != 0)
        .map(|(&e, g)| {
            if e == 1 {
                g.name.clone()
            } else {
                format!("{}^{}", g.name, e)
            }
        })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

fn default_abelian_names(count: usize) -> Vec<String> {
    (1..=count).map(|i| format!("x{i}")).collect()
}

fn primes_of(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl FiniteGroup {
    fn from_parts(table: Vec<Elem>, gens: Vec<Generator>, names: Vec<String>, spec: Option<GroupSpec>) -> Self {
        let order = names.len();
        debug_assert_eq!(table.len(), order * order);
        let mut inverse = vec![0; order];
        for a in 0..order {
            let row = &table[a * order..(a + 1) * order];
            let b = row
                .iter()
                .position(|&x| x == 0)
                .expect("every row contains the identity");
            inverse[a] = b as Elem;
        }
        let abelian = (0..order).all(|a| (0..a).all(|b| table[a * order + b] == table[b * order + a]));
        let lookup = names.iter().enumerate().map(|(i, n)| (n.clone(), i as Elem)).collect();
        FiniteGroup {
            order,
            table,
            inverse,
            abelian,
            gens,
            names,
            lookup,
            spec,
        }
    }

    fn from_normal_form(
        gens: Vec<Generator>,
        spec: Option<GroupSpec>,
        product: impl Fn(&[u32], &[u32]) -> Vec<u32>,
    ) -> Result<Self> {
        let radices: Vec<u32> = gens.iter().map(|g| g.radix).collect();
        let order: usize = radices.iter().map(|&r| r as usize).product();
        if order > MAX_TABLE_ORDER {
            return Err(Error::Unsupported(format!(
                "group order {order} exceeds the table limit {MAX_TABLE_ORDER}"
            )));
        }
        let words: Vec<Vec<u32>> = (0..order).map(|i| mixed_radix_decode(i, &radices)).collect();
        let mut table = vec![0; order * order];
        for a in 0..order {
            for b in 0..order {
                table[a * order + b] = mixed_radix_encode(&product(&words[a], &words[b]), &radices) as Elem;
            }
        }
        let names = words.iter().map(|w| word_name(w, &gens)).collect();
        Ok(Self::from_parts(table, gens, names, spec))
    }

    /// Abelian group `Z_{f1} x Z_{f2} x ...` with generators `x1, x2, ...`.
    /// An empty factor list gives the trivial group.
    pub fn make_abelian(factors: &[u32]) -> Result<Self> {
        Self::build_abelian(factors, None)
    }

    /// As [`FiniteGroup::make_abelian`] with caller-chosen generator names.
    pub fn make_abelian_named(factors: &[u32], names: &[&str]) -> Result<Self> {
        let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        Self::build_abelian(factors, Some(names))
    }

    fn build_abelian(factors: &[u32], names: Option<Vec<String>>) -> Result<Self> {
        if let Some(&bad) = factors.iter().find(|&&f| f < 2) {
            return Err(invalid(format!("cyclic factor {bad} must be at least 2")));
        }
        let gen_names = match &names {
            Some(n) if n.len() != factors.len() => {
                return Err(invalid(format!(
                    "{} generator names for {} factors",
                    n.len(),
                    factors.len()
                )))
            }
            Some(n) => {
                let distinct: BTreeSet<&String> = n.iter().collect();
                if distinct.len() != n.len() || n.iter().any(|s| s.is_empty() || s.contains(['*', '^'])) {
                    return Err(invalid("generator names must be distinct and free of `*`/`^`"));
                }
                n.clone()
            }
            None => default_abelian_names(factors.len()),
        };
        let gens: Vec<Generator> = gen_names
            .into_iter()
            .zip(factors)
            .map(|(name, &radix)| Generator { name, radix })
            .collect();
        let spec = GroupSpec::Abelian {
            factors: factors.to_vec(),
            names,
        };
        let factors = factors.to_vec();
        Self::from_normal_form(gens, Some(spec), move |a, b| {
            a.iter()
                .zip(b)
                .zip(&factors)
                .map(|((&x, &y), &f)| (x + y) % f)
                .collect()
        })
    }

    /// Dihedral group of order 8, `<a, b | a^4 = b^2 = 1, b a b^-1 = a^-1>`.
    pub fn make_dihedral8() -> Self {
        let gens = vec![
            Generator {
                name: "a".into(),
                radix: 4,
            },
            Generator {
                name: "b".into(),
                radix: 2,
            },
        ];
        // (a^i b^j)(a^k b^l) = a^(i + (-1)^j k) b^(j + l)
        Self::from_normal_form(gens, Some(GroupSpec::Dihedral8), |x, y| {
            let k = if x[1] == 0 { y[0] } else { (4 - y[0]) % 4 };
            vec![(x[0] + k) % 4, (x[1] + y[1]) % 2]
        })
        .expect("order 8 fits in a table")
    }

    /// Quaternion group of order 8, `<a, b | a^4 = 1, b^2 = a^2, b a b^-1 = a^-1>`.
    pub fn make_quaternion8() -> Self {
        let gens = vec![
            Generator {
                name: "a".into(),
                radix: 4,
            },
            Generator {
                name: "b".into(),
                radix: 2,
            },
        ];
        Self::from_normal_form(gens, Some(GroupSpec::Quaternion8), |x, y| {
            let k = if x[1] == 0 { y[0] } else { (4 - y[0]) % 4 };
            let mut i = x[0] + k;
            let j = x[1] + y[1];
            if j == 2 {
                i += 2;
            }
            vec![i % 4, j % 2]
        })
        .expect("order 8 fits in a table")
    }

    /// Direct product; element `(g1, g2)` has id `g1 * |G2| + g2`. Two
    /// abelian factors give the abelian group on the concatenated factors.
    pub fn direct_product(g1: &FiniteGroup, g2: &FiniteGroup) -> Result<Self> {
        if g1.order * g2.order > MAX_TABLE_ORDER {
            return Err(Error::Unsupported(format!(
                "group order {} exceeds the table limit {MAX_TABLE_ORDER}",
                g1.order * g2.order
            )));
        }
        let spec = match (&g1.spec, &g2.spec) {
            (Some(a), Some(b)) => Some(GroupSpec::product_of(a, b)),
            _ => None,
        };
        let mut gens = g1.gens.clone();
        let default_names = |g: &FiniteGroup| matches!(g.spec, Some(GroupSpec::Abelian { names: None, .. }));
        let renumber = default_names(g1) && default_names(g2);
        for (idx, gen) in g2.gens.iter().enumerate() {
            let mut name = if renumber {
                format!("x{}", g1.gens.len() + idx + 1)
            } else {
                gen.name.clone()
            };
            while gens.iter().any(|g| g.name == name) {
                name.push('\'');
            }
            gens.push(Generator { name, radix: gen.radix });
        }
        let order = g1.order * g2.order;
        let mut table = vec![0; order * order];
        for a in 0..order {
            let (a1, a2) = (a / g2.order, a % g2.order);
            for b in 0..order {
                let (b1, b2) = (b / g2.order, b % g2.order);
                let c1 = g1.table[a1 * g1.order + b1] as usize;
                let c2 = g2.table[a2 * g2.order + b2] as usize;
                table[a * order + b] = (c1 * g2.order + c2) as Elem;
            }
        }
        let names = if g1.gens.is_empty() && g1.order > 1 || g2.gens.is_empty() && g2.order > 1 {
            (0..order)
                .map(|a| {
                    let (a1, a2) = (a / g2.order, a % g2.order);
                    match (a1, a2) {
                        (0, 0) => "1".to_string(),
                        (0, _) => g2.names[a2].clone(),
                        (_, 0) => g1.names[a1].clone(),
                        _ => format!("{}*{}", g1.names[a1], g2.names[a2]),
                    }
                })
                .collect()
        } else {
            let radices: Vec<u32> = gens.iter().map(|g| g.radix).collect();
            (0..order)
                .map(|a| word_name(&mixed_radix_decode(a, &radices), &gens))
                .collect()
        };
        let mut group = Self::from_parts(table, gens, names, spec);
        if group.abelian && g1.abelian && g2.abelian {
            group.normalize_abelian_spec();
        }
        Ok(group)
    }

    fn normalize_abelian_spec(&mut self) {
        if let Some(GroupSpec::Product(parts)) = &self.spec {
            let mut factors = Vec::new();
            let mut names = Vec::new();
            let mut custom = false;
            for p in parts {
                match p {
                    GroupSpec::Abelian { factors: f, names: n } => {
                        factors.extend_from_slice(f);
                        custom |= n.is_some();
                    }
                    _ => return,
                }
            }
            for g in &self.gens {
                names.push(g.name.clone());
            }
            self.spec = Some(GroupSpec::Abelian {
                factors,
                names: custom.then_some(names),
            });
        }
    }

    /// Builds the group described by `spec`.
    pub fn from_spec(spec: &GroupSpec) -> Result<Self> {
        match spec {
            GroupSpec::Abelian { factors, names: None } => Self::make_abelian(factors),
            GroupSpec::Abelian {
                factors,
                names: Some(n),
            } => {
                let refs: Vec<&str> = n.iter().map(String::as_str).collect();
                Self::make_abelian_named(factors, &refs)
            }
            GroupSpec::Dihedral8 => Ok(Self::make_dihedral8()),
            GroupSpec::Quaternion8 => Ok(Self::make_quaternion8()),
            GroupSpec::Product(parts) => {
                let mut acc = Self::make_abelian(&[])?;
                for part in parts {
                    acc = Self::direct_product(&acc, &Self::from_spec(part)?)?;
                }
                acc.spec = Some(spec.clone());
                if acc.abelian {
                    acc.normalize_abelian_spec();
                }
                Ok(acc)
            }
        }
    }

    pub fn into_ref(self) -> Arc<FiniteGroup> {
        Arc::new(self)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Elem {
        0
    }

    pub fn is_abelian(&self) -> bool {
        self.abelian
    }

    pub fn spec(&self) -> Option<&GroupSpec> {
        self.spec.as_ref()
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.order as Elem
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inverse[a as usize]
    }

    /// Row-major multiplication table.
    pub fn table(&self) -> &[Elem] {
        &self.table
    }

    pub fn inverses(&self) -> &[Elem] {
        &self.inverse
    }

    pub fn pow(&self, a: Elem, n: i64) -> Elem {
        let base = if n < 0 { self.inv(a) } else { a };
        let mut acc = 0;
        for _ in 0..n.unsigned_abs() {
            acc = self.mul(acc, base);
        }
        acc
    }

    pub fn element_order(&self, a: Elem) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        self.elements()
            .map(|a| self.element_order(a))
            .fold(1, |acc, o| acc / gcd(acc, o) * o)
    }

    /// Generator names, empty for groups without a normal form.
    pub fn generator_names(&self) -> Vec<&str> {
        self.gens.iter().map(|g| g.name.as_str()).collect()
    }

    /// Element ids of the generators, in order.
    pub fn generators(&self) -> Vec<Elem> {
        let radices: Vec<u32> = self.gens.iter().map(|g| g.radix).collect();
        (0..self.gens.len())
            .map(|i| {
                let mut exps = vec![0; radices.len()];
                exps[i] = 1;
                mixed_radix_encode(&exps, &radices) as Elem
            })
            .collect()
    }

    pub fn name(&self, a: Elem) -> &str {
        &self.names[a as usize]
    }

    /// Parses a canonical element name or any `*`-separated word in the
    /// generators (`"x^3*y"`, `"y*x^-1"`, `"1"`).
    pub fn parse_element(&self, s: &str) -> Result<Elem> {
        let s = s.trim();
        if let Some(&e) = self.lookup.get(s) {
            return Ok(e);
        }
        if self.gens.is_empty() {
            return Err(invalid(format!("unknown element `{s}`")));
        }
        let gen_ids = self.generators();
        let mut acc = 0;
        for token in s.split('*').map(str::trim) {
            if token == "1" || token == "e" {
                continue;
            }
            let (base, exp) = match token.split_once('^') {
                Some((b, e)) => {
                    let e: i64 = e
                        .trim()
                        .parse()
                        .map_err(|_| invalid(format!("bad exponent in `{token}`")))?;
                    (b.trim(), e)
                }
                None => (token, 1),
            };
            let idx = self
                .gens
                .iter()
                .position(|g| g.name == base)
                .ok_or_else(|| invalid(format!("unknown generator `{base}` in `{s}`")))?;
            acc = self.mul(acc, self.pow(gen_ids[idx], exp));
        }
        Ok(acc)
    }

    pub fn parse_set(&self, names: &[impl AsRef<str>]) -> Result<Vec<Elem>> {
        let mut out = names
            .iter()
            .map(|n| self.parse_element(n.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        out.sort_unstable();
        let before = out.len();
        out.dedup();
        if out.len() != before {
            return Err(invalid("set lists an element twice"));
        }
        Ok(out)
    }

    pub fn set_names(&self, set: &[Elem]) -> Vec<String> {
        set.iter().map(|&e| self.name(e).to_string()).collect()
    }

    pub fn subgroup_generated(&self, gens: &[Elem]) -> Subgroup {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    queue.push_back(y);
                }
            }
        }
        Subgroup::from_sorted((0..self.order as Elem).filter(|&g| seen[g as usize]).collect())
    }

    /// Checks closure and wraps a set as a subgroup.
    pub fn subgroup_from_set(&self, set: &[Elem]) -> Result<Subgroup> {
        let mut elements = set.to_vec();
        elements.sort_unstable();
        elements.dedup();
        if elements.first() != Some(&0) {
            return Err(Error::InvalidSubgroup("set does not contain the identity".into()));
        }
        let member = self.membership(&elements);
        for &a in &elements {
            for &b in &elements {
                if !member[self.mul(a, self.inv(b)) as usize] {
                    return Err(Error::InvalidSubgroup("set is not closed".into()));
                }
            }
        }
        Ok(Subgroup::from_sorted(elements))
    }

    pub fn membership(&self, set: &[Elem]) -> Vec<bool> {
        let mut m = vec![false; self.order];
        for &g in set {
            m[g as usize] = true;
        }
        m
    }

    pub fn center(&self) -> Subgroup {
        Subgroup::from_sorted(
            self.elements()
                .filter(|&z| self.elements().all(|g| self.mul(z, g) == self.mul(g, z)))
                .collect(),
        )
    }

    pub fn is_central(&self, set: &[Elem]) -> bool {
        set.iter()
            .all(|&s| self.elements().all(|g| self.mul(s, g) == self.mul(g, s)))
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        let member = self.membership(h.elements());
        self.elements().all(|g| {
            h.elements()
                .iter()
                .all(|&n| member[self.mul(self.mul(g, n), self.inv(g)) as usize])
        })
    }

    fn is_elementary_abelian_set(&self, set: &[Elem], p: u32) -> bool {
        set.iter()
            .all(|&a| self.pow(a, p as i64) == 0 && set.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Left cosets `rep * H`, each represented by its smallest id.
    pub fn coset_transversal(&self, h: &Subgroup) -> CosetTransversal {
        let mut coset_of = vec![u32::MAX; self.order];
        let mut reps = Vec::new();
        for g in self.elements() {
            if coset_of[g as usize] != u32::MAX {
                continue;
            }
            let idx = reps.len() as u32;
            reps.push(g);
            for &x in h.elements() {
                coset_of[self.mul(g, x) as usize] = idx;
            }
        }
        CosetTransversal { reps, coset_of }
    }

    /// `G/N` on coset ids ordered like [`FiniteGroup::coset_transversal`].
    pub fn quotient(&self, n: &Subgroup) -> Result<Quotient> {
        if !self.is_normal(n) {
            return Err(Error::InvalidSubgroup("subgroup is not normal".into()));
        }
        let tr = self.coset_transversal(n);
        let index = tr.index();
        let mut table = vec![0; index * index];
        for (i, &a) in tr.reps.iter().enumerate() {
            for (j, &b) in tr.reps.iter().enumerate() {
                table[i * index + j] = tr.coset_of(self.mul(a, b)) as Elem;
            }
        }
        let names = tr.reps.iter().map(|&r| self.names[r as usize].clone()).collect();
        let group = FiniteGroup::from_parts(table, Vec::new(), names, None);
        let projection = self.elements().map(|g| tr.coset_of(g) as Elem).collect();
        Ok(Quotient {
            group: Arc::new(group),
            projection,
            transversal: tr.reps,
        })
    }

    fn require_abelian(&self, what: &str) -> Result<()> {
        if self.abelian {
            Ok(())
        } else {
            Err(Error::Unsupported(format!("{what} requires an abelian group")))
        }
    }

    /// Orders of the cyclic prime-power factors (elementary divisors),
    /// grouped by prime ascending and descending within each prime.
    pub fn primary_invariants(&self) -> Result<Vec<u32>> {
        self.require_abelian("primary decomposition")?;
        let mut out = Vec::new();
        for p in primes_of(self.order) {
            // counts[k] = #{g : g^(p^k) = 1}
            let mut counts = vec![1usize];
            let mut pk = 1usize;
            loop {
                pk *= p;
                let c = self.elements().filter(|&g| self.pow(g, pk as i64) == 0).count();
                if c == *counts.last().unwrap() {
                    break;
                }
                counts.push(c);
            }
            // rank_k = number of factors of order >= p^k
            let ranks: Vec<u32> = counts
                .windows(2)
                .map(|w| {
                    let mut ratio = w[1] / w[0];
                    let mut r = 0;
                    while ratio > 1 {
                        ratio /= p;
                        r += 1;
                    }
                    r
                })
                .collect();
            let mut factors = Vec::new();
            for k in (1..=ranks.len()).rev() {
                let here = ranks[k - 1] - ranks.get(k).copied().unwrap_or(0);
                for _ in 0..here {
                    factors.push(p.pow(k as u32) as u32);
                }
            }
            out.extend(factors);
        }
        Ok(out)
    }

    /// Invariant factors `d1, d2, ...` with `d_{i+1} | d_i`.
    pub fn invariant_factors(&self) -> Result<Vec<u32>> {
        let primary = self.primary_invariants()?;
        let mut by_prime: Vec<Vec<u32>> = Vec::new();
        for p in primes_of(self.order) {
            by_prime.push(
                primary
                    .iter()
                    .copied()
                    .filter(|&f| (f as usize).is_multiple_of(p))
                    .collect(),
            );
        }
        let len = by_prime.iter().map(Vec::len).max().unwrap_or(0);
        Ok((0..len)
            .map(|i| by_prime.iter().map(|fs| fs.get(i).copied().unwrap_or(1)).product())
            .collect())
    }

    /// Number of invariant factors; the minimal number of generators.
    pub fn abelian_rank(&self) -> Result<usize> {
        Ok(self.invariant_factors()?.len())
    }

    /// Finds generators `b_i` of the orders in [`FiniteGroup::primary_invariants`]
    /// giving an explicit isomorphism from the standard abelian group.
    pub fn abelian_basis(&self) -> Result<AbelianBasis> {
        let factors = self.primary_invariants()?;
        let mut basis = Vec::new();
        let mut span = vec![0];
        if !self.extend_basis(&factors, &mut basis, &mut span) {
            return Err(Error::Verification("no basis found for abelian group".into()));
        }
        let map = self.hom_from_images(&factors, &basis)?;
        Ok(AbelianBasis { factors, basis, map })
    }

    fn extend_basis(&self, factors: &[u32], basis: &mut Vec<Elem>, span: &mut Vec<Elem>) -> bool {
        let depth = basis.len();
        if depth == factors.len() {
            return true;
        }
        let target = factors[depth] as usize;
        for g in self.elements() {
            if self.element_order(g) != target || span.binary_search(&g).is_ok() {
                continue;
            }
            basis.push(g);
            let next = self.subgroup_generated(basis);
            if next.order() == span.len() * target {
                let saved = std::mem::replace(span, next.elements);
                if self.extend_basis(factors, basis, span) {
                    return true;
                }
                *span = saved;
            }
            basis.pop();
        }
        false
    }

    /// Homomorphism `make_abelian(factors) -> self` sending the i-th
    /// generator to `images[i]`; must be a bijection.
    pub fn hom_from_images(&self, factors: &[u32], images: &[Elem]) -> Result<Vec<Elem>> {
        if factors.len() != images.len() {
            return Err(invalid("one image per cyclic factor required"));
        }
        let size: usize = factors.iter().map(|&f| f as usize).product();
        if size != self.order {
            return Err(invalid("source and target orders differ"));
        }
        for (i, &a) in images.iter().enumerate() {
            if self.pow(a, factors[i] as i64) != 0 {
                return Err(invalid(format!("image {} has order not dividing {}", i, factors[i])));
            }
            for &b in &images[..i] {
                if self.mul(a, b) != self.mul(b, a) {
                    return Err(invalid("generator images do not commute"));
                }
            }
        }
        let mut map = Vec::with_capacity(size);
        let mut seen = vec![false; self.order];
        for id in 0..size {
            let exps = mixed_radix_decode(id, factors);
            let g = exps
                .iter()
                .zip(images)
                .fold(0, |acc, (&e, &img)| self.mul(acc, self.pow(img, e as i64)));
            if std::mem::replace(&mut seen[g as usize], true) {
                return Err(invalid("generator images do not give a bijection"));
            }
            map.push(g);
        }
        Ok(map)
    }

    /// All central subgroups isomorphic to `Z_2^rank`.
    pub fn find_central_elementary_abelian(&self, rank: usize) -> Vec<Subgroup> {
        self.find_central_elementary_abelian_p(2, rank)
    }

    /// All central subgroups isomorphic to `Z_p^rank`, sorted by element list.
    pub fn find_central_elementary_abelian_p(&self, p: u32, rank: usize) -> Vec<Subgroup> {
        let omega: Vec<Elem> = self
            .center()
            .elements()
            .iter()
            .copied()
            .filter(|&z| self.pow(z, p as i64) == 0)
            .collect();
        let mut found = BTreeSet::new();
        let mut gens = Vec::new();
        self.collect_elementary(&omega, rank, &mut gens, &mut found);
        found.into_iter().map(Subgroup::from_sorted).collect()
    }

    fn collect_elementary(&self, omega: &[Elem], rank: usize, gens: &mut Vec<Elem>, found: &mut BTreeSet<Vec<Elem>>) {
        let span = self.subgroup_generated(gens);
        if gens.len() == rank {
            found.insert(span.elements);
            return;
        }
        let start = gens.last().map_or(1, |&g| g + 1);
        for &z in omega.iter().filter(|&&z| z >= start) {
            if span.contains(z) {
                continue;
            }
            gens.push(z);
            self.collect_elementary(omega, rank, gens, found);
            gens.pop();
        }
    }
}

impl GroupSpec {
    fn product_of(a: &GroupSpec, b: &GroupSpec) -> GroupSpec {
        let mut parts = Vec::new();
        for s in [a, b] {
            match s {
                GroupSpec::Product(p) => parts.extend(p.iter().cloned()),
                GroupSpec::Abelian { factors, .. } if factors.is_empty() => {}
                other => parts.push(other.clone()),
            }
        }
        if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            GroupSpec::Product(parts)
        }
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
