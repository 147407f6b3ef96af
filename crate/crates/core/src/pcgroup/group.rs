use std::collections::VecDeque;

use num_bigint::BigInt;
use rand::Rng;

use super::collect::GroupElement;
use super::presentation::PcPresentation;
use crate::error::{Error, Result};
use crate::intlattice::{snf, unimodular_inverse, IntMatrix, InvariantList};

/// Default cap on the number of elements an enumeration may touch.
pub const DEFAULT_ELEMENT_BOUND: usize = 5000;

/// A consistent presentation together with an indexing of its elements.
///
/// Element indices follow the lexicographic order of exponent vectors, so
/// index 0 is the identity and smaller indices are lexicographically smaller.
#[derive(Clone, Debug)]
pub struct PcGroup {
    pres: PcPresentation,
    order: usize,
    weights: Vec<usize>,
}

/// A subgroup as a membership mask plus the generators used to build it.
#[derive(Clone, Debug)]
pub struct Subgroup {
    mask: Vec<bool>,
    members: Vec<usize>,
    gens: Vec<usize>,
}

impl Subgroup {
    pub fn contains(&self, x: usize) -> bool {
        self.mask[x]
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    /// Member indices in increasing order.
    pub fn members(&self) -> Vec<usize> {
        let mut m = self.members.clone();
        m.sort_unstable();
        m
    }

    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }
}

/// A conjugacy class by its lexicographically least member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub representative: usize,
    pub size: usize,
}

impl PcGroup {
    pub fn new(pres: PcPresentation, bound: usize) -> Result<Self> {
        let order = pres.order();
        if order > bound as u128 {
            return Err(Error::BoundExceeded {
                what: "group order",
                size: order,
                bound: bound as u128,
            });
        }
        let n = pres.n();
        let mut weights = vec![1usize; n];
        for i in (0..n.saturating_sub(1)).rev() {
            weights[i] = weights[i + 1] * pres.orders()[i + 1] as usize;
        }
        Ok(PcGroup {
            pres,
            order: order as usize,
            weights,
        })
    }

    pub fn presentation(&self) -> &PcPresentation {
        &self.pres
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn index_of(&self, g: &GroupElement) -> usize {
        g.0.iter()
            .zip(&self.weights)
            .map(|(&e, &w)| e as usize * w)
            .sum()
    }

    pub fn element(&self, mut idx: usize) -> GroupElement {
        let e = self
            .weights
            .iter()
            .zip(self.pres.orders())
            .map(|(&w, _)| {
                let e = idx / w;
                idx %= w;
                e as u32
            })
            .collect();
        GroupElement(e)
    }

    /// All elements in lexicographic exponent order.
    pub fn elements(&self) -> Vec<GroupElement> {
        (0..self.order).map(|i| self.element(i)).collect()
    }

    pub fn generator_indices(&self) -> Vec<usize> {
        self.weights.clone()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        let mut e = self.element(a).0;
        self.pres.mul_into(&mut e, None, &self.element(b).0);
        self.index_of(&GroupElement(e))
    }

    pub fn inv(&self, a: usize) -> usize {
        self.index_of(&self.pres.inverse(&self.element(a)))
    }

    pub fn comm(&self, a: usize, b: usize) -> usize {
        self.index_of(&self.pres.commutator(&self.element(a), &self.element(b)))
    }

    /// `a b a^{-1}`
    pub fn conj(&self, a: usize, b: usize) -> usize {
        self.index_of(&self.pres.conjugate(&self.element(a), &self.element(b)))
    }

    pub fn commute(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn random_element<R: Rng>(&self, rng: &mut R) -> usize {
        rng.gen_range(0..self.order)
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        let mut mask = vec![false; self.order];
        mask[0] = true;
        Subgroup {
            mask,
            members: vec![0],
            gens: Vec::new(),
        }
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup {
            mask: vec![true; self.order],
            members: (0..self.order).collect(),
            gens: self.generator_indices(),
        }
    }

    /// The subgroup generated by `gens`.
    pub fn closure(&self, gens: &[usize]) -> Subgroup {
        let mut h = self.trivial_subgroup();
        for &g in gens {
            if !h.contains(g) {
                h = self.extend(&h, g);
            }
        }
        h
    }

    /// `<h, g>`.
    pub fn extend(&self, h: &Subgroup, g: usize) -> Subgroup {
        let mut mask = h.mask.clone();
        let mut members = h.members.clone();
        let mut gens = h.gens.clone();
        gens.push(g);
        let mut queue: VecDeque<usize> = members.iter().copied().collect();
        while let Some(x) = queue.pop_front() {
            for &s in &gens {
                let y = self.mul(x, s);
                if !mask[y] {
                    mask[y] = true;
                    members.push(y);
                    queue.push_back(y);
                }
            }
        }
        Subgroup {
            mask,
            members,
            gens,
        }
    }

    /// Smallest normal subgroup containing `gens`.
    pub fn normal_closure(&self, gens: &[usize]) -> Subgroup {
        let mut h = self.closure(gens);
        let pcgens = self.generator_indices();
        loop {
            let mut grew = false;
            let current: Vec<usize> = h.gens.clone();
            for &x in &current {
                for &g in &pcgens {
                    let c = self.conj(g, x);
                    if !h.contains(c) {
                        h = self.extend(&h, c);
                        grew = true;
                    }
                }
            }
            if !grew {
                return h;
            }
        }
    }

    /// Builds a subgroup from an explicit element set after checking closure.
    pub fn subgroup_from_set(&self, set: &[usize]) -> Result<Subgroup> {
        let mut mask = vec![false; self.order];
        for &x in set {
            mask[x] = true;
        }
        if !mask[0] {
            return Err(Error::NotClosed);
        }
        let members: Vec<usize> = (0..self.order).filter(|&x| mask[x]).collect();
        for &a in &members {
            for &b in &members {
                if !mask[self.mul(a, b)] {
                    return Err(Error::NotClosed);
                }
            }
        }
        let h = self.closure(&members);
        Ok(Subgroup {
            mask,
            members,
            gens: h.gens,
        })
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        let pcgens = self.generator_indices();
        h.members
            .iter()
            .all(|&x| pcgens.iter().all(|&g| h.contains(self.conj(g, x))))
    }

    pub fn intersection(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let set: Vec<usize> = a
            .members
            .iter()
            .copied()
            .filter(|&x| b.contains(x))
            .collect();
        let mut mask = vec![false; self.order];
        for &x in &set {
            mask[x] = true;
        }
        let h = self.closure(&set);
        Subgroup {
            mask,
            members: set,
            gens: h.gens,
        }
    }

    pub fn conjugacy_classes(&self) -> Vec<ConjugacyClass> {
        let mut seen = vec![false; self.order];
        let pcgens = self.generator_indices();
        let mut classes = Vec::new();
        for x in 0..self.order {
            if seen[x] {
                continue;
            }
            seen[x] = true;
            let mut queue = vec![x];
            let mut size = 0;
            while let Some(y) = queue.pop() {
                size += 1;
                for &g in &pcgens {
                    let z = self.conj(g, y);
                    if !seen[z] {
                        seen[z] = true;
                        queue.push(z);
                    }
                }
            }
            classes.push(ConjugacyClass {
                representative: x,
                size,
            });
        }
        classes
    }

    /// `C_G(x)` as an explicit set.
    pub fn centralizer(&self, x: usize) -> Subgroup {
        let members: Vec<usize> = (0..self.order).filter(|&y| self.commute(x, y)).collect();
        let mut mask = vec![false; self.order];
        for &y in &members {
            mask[y] = true;
        }
        let gens = self.reduce_generators(&members);
        Subgroup {
            mask,
            members,
            gens,
        }
    }

    /// A generating set of `C_G(x)`, reduced greedily: an element is kept only
    /// if it is not already in the closure of the kept ones.
    pub fn centralizer_generators(&self, x: usize) -> Vec<usize> {
        self.centralizer(x).gens
    }

    fn reduce_generators(&self, set: &[usize]) -> Vec<usize> {
        let mut h = self.trivial_subgroup();
        for &y in set {
            if !h.contains(y) {
                h = self.extend(&h, y);
            }
        }
        h.gens
    }

    pub fn center(&self) -> Subgroup {
        let pcgens = self.generator_indices();
        let set: Vec<usize> = (0..self.order)
            .filter(|&z| pcgens.iter().all(|&g| self.commute(z, g)))
            .collect();
        self.closure(&set)
    }

    /// `γ_2(G)`: normal closure of the commutators of pc generators.
    pub fn derived_subgroup(&self) -> Subgroup {
        let g = self.generator_indices();
        let mut comms = Vec::new();
        for i in 0..g.len() {
            for j in i + 1..g.len() {
                comms.push(self.comm(g[i], g[j]));
            }
        }
        self.normal_closure(&comms)
    }

    /// `[H, G]` for normal `H`.
    pub fn commutator_with_group(&self, h: &Subgroup) -> Subgroup {
        let pcgens = self.generator_indices();
        let mut comms = Vec::new();
        for &x in &h.gens {
            for &g in &pcgens {
                comms.push(self.comm(x, g));
            }
        }
        self.normal_closure(&comms)
    }

    /// Lower central series `G = γ_1 > γ_2 > ...` until it stabilizes.
    pub fn lower_central_series(&self) -> Vec<Subgroup> {
        let mut series = vec![self.whole()];
        loop {
            let next = self.commutator_with_group(series.last().unwrap());
            if next.order() == series.last().unwrap().order() {
                return series;
            }
            let done = next.order() == 1;
            series.push(next);
            if done {
                return series;
            }
        }
    }

    /// Nilpotency class, or `None` if the group is not nilpotent.
    pub fn nilpotency_class(&self) -> Option<usize> {
        let series = self.lower_central_series();
        (series.last().unwrap().order() == 1).then(|| series.len() - 1)
    }

    /// Derived series `G = D_0 > D_1 > ... > 1`.
    pub fn derived_series(&self) -> Vec<Subgroup> {
        let mut series = vec![self.whole()];
        loop {
            let d = series.last().unwrap();
            if d.order() == 1 {
                return series;
            }
            let mut comms = Vec::new();
            for (a, &x) in d.gens.iter().enumerate() {
                for &y in &d.gens[a + 1..] {
                    comms.push(self.comm(x, y));
                }
            }
            // normal closure inside D, which is the same as in G for D = D_k
            let next = self.closure_under_conjugation_by(&comms, &d.members);
            if next.order() == d.order() {
                return series;
            }
            series.push(next);
        }
    }

    fn closure_under_conjugation_by(&self, gens: &[usize], conjugators: &[usize]) -> Subgroup {
        let mut h = self.closure(gens);
        loop {
            let mut grew = false;
            let current = h.gens.clone();
            for &x in &current {
                for &g in conjugators {
                    let c = self.conj(g, x);
                    if !h.contains(c) {
                        h = self.extend(&h, c);
                        grew = true;
                    }
                }
            }
            if !grew {
                return h;
            }
        }
    }

    /// The set `K(G)` of all commutators, via class representatives:
    /// `[gxg^{-1}, y] = g [x, g^{-1} y g] g^{-1}`.
    pub fn commutator_set(&self) -> Vec<bool> {
        let mut seeds = vec![false; self.order];
        for c in self.conjugacy_classes() {
            for y in 0..self.order {
                seeds[self.comm(c.representative, y)] = true;
            }
        }
        // close under conjugation
        let pcgens = self.generator_indices();
        let mut out = seeds.clone();
        let mut stack: Vec<usize> = (0..self.order).filter(|&x| seeds[x]).collect();
        while let Some(x) = stack.pop() {
            for &g in &pcgens {
                let c = self.conj(g, x);
                if !out[c] {
                    out[c] = true;
                    stack.push(c);
                }
            }
        }
        out
    }
}

/// Abelianization data: invariants and, for each invariant, an element whose
/// image generates the corresponding cyclic factor.
#[derive(Clone, Debug)]
pub struct Abelianization {
    pub invariants: InvariantList,
    pub basis: Vec<GroupElement>,
}

impl PcPresentation {
    /// Exponent-sum relation matrix: one row per power and conjugation relation.
    pub fn abelian_relation_matrix(&self) -> IntMatrix {
        let n = self.n();
        let mut rows = Vec::new();
        for i in 0..n {
            let mut r = vec![BigInt::from(0); n];
            r[i] += self.orders[i];
            for &(g, e) in &self.powers[i] {
                r[g] -= e;
            }
            rows.push(r);
        }
        for i in 0..n {
            for j in i + 1..n {
                let mut r = vec![BigInt::from(0); n];
                r[j] += 1;
                for &(g, e) in self.conjugate_word(i, j) {
                    r[g] -= e;
                }
                rows.push(r);
            }
        }
        IntMatrix::from_rows(n, &rows)
    }

    pub fn abelianization(&self) -> InvariantList {
        self.abelianization_basis().invariants
    }

    /// Smith basis of `G^ab`.
    pub fn abelianization_basis(&self) -> Abelianization {
        let rel = self.abelian_relation_matrix();
        let (s, _, v) = snf(&rel);
        let vinv = unimodular_inverse(&v).expect("SNF column transform is unimodular");
        let mut invariants = Vec::new();
        let mut basis = Vec::new();
        for i in 0..self.n() {
            let d = s[(i, i)].clone();
            if d == BigInt::from(1) {
                continue;
            }
            let mut w = super::Word::new();
            for g in 0..self.n() {
                let c: i64 = (&vinv[(i, g)]).try_into().expect("small exponent");
                if c != 0 {
                    w.push(g, c);
                }
            }
            basis.push(self.collect(&w));
            invariants.push(d);
        }
        Abelianization {
            invariants: InvariantList::from_diagonal(invariants)
                .expect("finite group has finite abelianization"),
            basis,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pcgroup::parse_presentation;

    fn group(src: &str) -> PcGroup {
        PcGroup::new(parse_presentation(src).unwrap(), DEFAULT_ELEMENT_BOUND).unwrap()
    }

    const D4: &str = "name D4\norders 2 4\nconj 2 1 = g2^3\n";
    const Q8: &str = "name Q8\norders 2 2 2\npow 1 = g3^1\npow 2 = g3^1\nconj 2 1 = g2^1 g3^1\n";

    #[test]
    fn indexing_round_trips() {
        let g = group(D4);
        for i in 0..g.order() {
            assert_eq!(g.index_of(&g.element(i)), i);
        }
        assert_eq!(g.elements().len(), 8);
        assert_eq!(g.element(0), g.presentation().identity());
    }

    #[test]
    fn classes() {
        let g = group(D4);
        let mut sizes: Vec<usize> = g.conjugacy_classes().iter().map(|c| c.size).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 1, 2, 2, 2]);
        assert_eq!(group(Q8).conjugacy_classes().len(), 5);
        let c5 = group("name C5\norders 5\n");
        assert_eq!(c5.conjugacy_classes().len(), 5);
    }

    #[test]
    fn centralizers() {
        let g = group(D4);
        let g2 = g.index_of(&g.presentation().generator(1));
        let gens = g.centralizer_generators(g2);
        let mut c = g.closure(&gens).members();
        c.sort();
        let mut expect: Vec<usize> = (0..4)
            .map(|k| g.index_of(&g.presentation().power(&g.presentation().generator(1), k)))
            .collect();
        expect.sort();
        assert_eq!(c, expect);
        assert_eq!(g.closure(&g.centralizer_generators(0)).order(), 8);
    }

    #[test]
    fn derived_and_class() {
        let g = group(D4);
        assert_eq!(g.derived_subgroup().order(), 2);
        assert_eq!(g.nilpotency_class(), Some(2));
        assert_eq!(
            g.presentation().abelianization(),
            InvariantList::from_u64(&[2, 2])
        );
        let s3 = group("name S3\norders 2 3\nconj 2 1 = g2^2\n");
        assert_eq!(s3.nilpotency_class(), None);
        assert_eq!(s3.derived_subgroup().order(), 3);
        assert_eq!(s3.derived_series().len(), 3);
        let ab = group("name C4xC2\norders 4 2\n");
        assert_eq!(ab.derived_subgroup().order(), 1);
        assert_eq!(ab.nilpotency_class(), Some(1));
    }

    #[test]
    fn abelianization_basis_generates() {
        let z = group("name C12\norders 12\n");
        let ab = z.presentation().abelianization_basis();
        assert_eq!(ab.invariants, InvariantList::from_u64(&[12]));
        assert_eq!(z.element_order(z.index_of(&ab.basis[0])), 12);
    }

    #[test]
    fn bound_is_enforced() {
        let p = parse_presentation("name C7\norders 7\n").unwrap();
        assert!(matches!(
            PcGroup::new(p, 5),
            Err(Error::BoundExceeded {
                size: 7,
                bound: 5,
                ..
            })
        ));
    }

    #[test]
    fn commutator_set_of_d4() {
        let g = group(D4);
        let k = g.commutator_set();
        assert_eq!(k.iter().filter(|&&b| b).count(), 2);
    }
}
