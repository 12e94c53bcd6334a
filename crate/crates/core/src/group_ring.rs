//! Integer group ring `Z[G]`.

use std::ops::{Add, Mul, Sub};
use std::sync::Arc;

use crate::error::{invalid, Error, Result};
use crate::group::{Elem, FiniteGroup};

#[derive(Clone, Debug)]
pub struct GroupRingElement {
    group: Arc<FiniteGroup>,
    coeffs: Vec<i64>,
}

impl PartialEq for GroupRingElement {
    fn eq(&self, other: &Self) -> bool {
        same_group(&self.group, &other.group) && self.coeffs == other.coeffs
    }
}

impl Eq for GroupRingElement {}

pub(crate) fn same_group(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Coefficients of `A * B^(-1)` for sets `A`, `B`, written into `out`.
pub fn quotient_counts_into(group: &FiniteGroup, a: &[Elem], b: &[Elem], out: &mut [i64]) {
    out.fill(0);
    let inv = group.inverses();
    let v = group.order();
    let table = group.table();
    for &x in a {
        let row = &table[x as usize * v..(x as usize + 1) * v];
        for &y in b {
            out[row[inv[y as usize] as usize] as usize] += 1;
        }
    }
}

/// Coefficients of `A * B^(-1)`.
pub fn quotient_counts(group: &FiniteGroup, a: &[Elem], b: &[Elem]) -> Vec<i64> {
    let mut out = vec![0; group.order()];
    quotient_counts_into(group, a, b, &mut out);
    out
}

impl GroupRingElement {
    pub fn zero(group: Arc<FiniteGroup>) -> Self {
        let v = group.order();
        GroupRingElement {
            group,
            coeffs: vec![0; v],
        }
    }

    /// The identity element `1_G` of the ring.
    pub fn one(group: Arc<FiniteGroup>) -> Self {
        let mut x = Self::zero(group);
        x.coeffs[0] = 1;
        x
    }

    /// The sum of all group elements, written `G`.
    pub fn all_ones(group: Arc<FiniteGroup>) -> Self {
        let v = group.order();
        GroupRingElement {
            group,
            coeffs: vec![1; v],
        }
    }

    pub fn from_subset(group: Arc<FiniteGroup>, set: &[Elem]) -> Result<Self> {
        let mut x = Self::zero(group);
        for &g in set {
            let slot = x
                .coeffs
                .get_mut(g as usize)
                .ok_or_else(|| invalid(format!("element id {g} out of range")))?;
            *slot += 1;
        }
        Ok(x)
    }

    pub fn from_coeffs(group: Arc<FiniteGroup>, coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.len() != group.order() {
            return Err(invalid(format!(
                "{} coefficients for a group of order {}",
                coeffs.len(),
                group.order()
            )));
        }
        Ok(GroupRingElement { group, coeffs })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, g: Elem) -> i64 {
        self.coeffs[g as usize]
    }

    /// Support, when every coefficient is 0 or 1.
    pub fn as_subset(&self) -> Option<Vec<Elem>> {
        if self.coeffs.iter().any(|&c| c != 0 && c != 1) {
            return None;
        }
        Some(support(&self.coeffs, 1))
    }

    fn check(&self, other: &Self) -> Result<()> {
        if same_group(&self.group, &other.group) {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    /// `self * other`, products taken as `g * h` with `g` from `self`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let g = &self.group;
        let mut out = vec![0i64; g.order()];
        for (a, &ca) in self.coeffs.iter().enumerate() {
            if ca == 0 {
                continue;
            }
            for (b, &cb) in other.coeffs.iter().enumerate() {
                if cb != 0 {
                    out[g.mul(a as Elem, b as Elem) as usize] += ca * cb;
                }
            }
        }
        Ok(GroupRingElement {
            group: g.clone(),
            coeffs: out,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(i64, i64) -> i64) -> Self {
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| f(a, b)).collect();
        GroupRingElement {
            group: self.group.clone(),
            coeffs,
        }
    }

    pub fn scale(&self, c: i64) -> Self {
        GroupRingElement {
            group: self.group.clone(),
            coeffs: self.coeffs.iter().map(|&a| a * c).collect(),
        }
    }

    /// `x^(-1)`: the coefficient of `g` moves to `g^-1`.
    pub fn involution(&self) -> Self {
        let mut coeffs = vec![0; self.coeffs.len()];
        for (g, &c) in self.coeffs.iter().enumerate() {
            coeffs[self.group.inv(g as Elem) as usize] = c;
        }
        GroupRingElement {
            group: self.group.clone(),
            coeffs,
        }
    }

    /// Solves `self = (mu - nu) D + nu G` for a set `D`; `None` unless every
    /// coefficient is `mu` or `nu`.
    pub fn decompose_two_valued(&self, mu: i64, nu: i64) -> Result<Option<Vec<Elem>>> {
        decompose_coeffs(&self.coeffs, mu, nu)
    }
}

/// Slice form of [`GroupRingElement::decompose_two_valued`].
pub fn decompose_coeffs(coeffs: &[i64], mu: i64, nu: i64) -> Result<Option<Vec<Elem>>> {
    if mu == nu {
        return Err(invalid("two-valued decomposition needs mu != nu"));
    }
    if coeffs.iter().any(|&c| c != mu && c != nu) {
        return Ok(None);
    }
    Ok(Some(support(coeffs, mu)))
}

fn support(coeffs: &[i64], value: i64) -> Vec<Elem> {
    coeffs
        .iter()
        .enumerate()
        .filter(|(_, &c)| c == value)
        .map(|(g, _)| g as Elem)
        .collect()
}

impl Add for &GroupRingElement {
    type Output = GroupRingElement;
    fn add(self, rhs: Self) -> GroupRingElement {
        GroupRingElement::add(self, rhs).expect("operands in the same group")
    }
}

impl Sub for &GroupRingElement {
    type Output = GroupRingElement;
    fn sub(self, rhs: Self) -> GroupRingElement {
        GroupRingElement::sub(self, rhs).expect("operands in the same group")
    }
}

impl Mul for &GroupRingElement {
    type Output = GroupRingElement;
    fn mul(self, rhs: Self) -> GroupRingElement {
        GroupRingElement::mul(self, rhs).expect("operands in the same group")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z44() -> Arc<FiniteGroup> {
        FiniteGroup::make_abelian_named(&[4, 4], &["x", "y"])
            .unwrap()
            .into_ref()
    }

    fn set(g: &FiniteGroup, names: &[&str]) -> Vec<Elem> {
        g.parse_set(names).unwrap()
    }

    #[test]
    fn subset_round_trips() {
        let g = z44();
        let s = set(&g, &["x", "y^3", "x^2*y"]);
        let x = GroupRingElement::from_subset(g.clone(), &s).unwrap();
        assert_eq!(x.coeffs().iter().sum::<i64>(), 3);
        assert_eq!(x.as_subset().unwrap(), s);
        let all = GroupRingElement::all_ones(g.clone());
        assert_eq!(all.as_subset().unwrap().len(), 16);
        assert_eq!(GroupRingElement::one(g).scale(2).as_subset(), None);
    }

    #[test]
    fn design_identity_for_example_set() {
        let g = z44();
        let d1 = set(&g, &["x", "x^3*y", "y^3", "x^3", "x*y^3", "y"]);
        let d = GroupRingElement::from_subset(g.clone(), &d1).unwrap();
        let lhs = &d * &d.involution();
        let rhs = &GroupRingElement::one(g.clone()).scale(4) + &GroupRingElement::all_ones(g.clone()).scale(2);
        assert_eq!(lhs, rhs);
        let all = GroupRingElement::all_ones(g);
        assert_eq!(&d * &all, all.scale(6));
    }

    #[test]
    fn linked_product_decomposes() {
        let g = z44();
        let d1 =
            GroupRingElement::from_subset(g.clone(), &set(&g, &["x", "x^3*y", "y^3", "x^3", "x*y^3", "y"])).unwrap();
        let d2 = GroupRingElement::from_subset(g.clone(), &set(&g, &["x", "x^3*y", "y^3", "x*y^2", "x*y", "x^2*y"]))
            .unwrap();
        let w = set(&g, &["y^3", "x", "x^2*y^3", "x^3*y", "x^3*y^2", "x^3*y^3"]);
        let wd = GroupRingElement::from_subset(g.clone(), &w).unwrap();
        let prod = &d2 * &d1.involution();
        let expect = &GroupRingElement::all_ones(g.clone()).scale(3) - &wd.scale(2);
        assert_eq!(prod, expect);
        assert_eq!(prod.decompose_two_valued(1, 3).unwrap(), Some(w));
        let bad = &GroupRingElement::one(g.clone()).scale(4) + &GroupRingElement::all_ones(g.clone()).scale(2);
        assert_eq!(bad.decompose_two_valued(1, 3).unwrap(), None);
        let flat = GroupRingElement::all_ones(g.clone()).scale(3);
        assert_eq!(flat.decompose_two_valued(1, 3).unwrap(), Some(vec![]));
        assert!(flat.decompose_two_valued(2, 2).is_err());
    }

    #[test]
    fn involution_examples() {
        let g = z44();
        let x = GroupRingElement::from_subset(g.clone(), &set(&g, &["x*y^3"])).unwrap();
        assert_eq!(x.involution().as_subset().unwrap(), set(&g, &["x^3*y"]));
        assert_eq!(x.involution().involution(), x);
    }

    #[test]
    fn mismatched_groups_rejected() {
        let a = GroupRingElement::one(z44());
        let b = GroupRingElement::one(FiniteGroup::make_abelian(&[8, 2]).unwrap().into_ref());
        assert_eq!(a.mul(&b), Err(Error::GroupMismatch));
        assert_eq!(a.add(&b), Err(Error::GroupMismatch));
    }

    #[test]
    fn quotient_counts_match_ring_product() {
        let g = FiniteGroup::make_dihedral8().into_ref();
        let a = vec![1, 2, 5];
        let b = vec![0, 3, 6, 7];
        let ra = GroupRingElement::from_subset(g.clone(), &a).unwrap();
        let rb = GroupRingElement::from_subset(g.clone(), &b).unwrap();
        assert_eq!(quotient_counts(&g, &a, &b), (&ra * &rb.involution()).coeffs());
    }
}
