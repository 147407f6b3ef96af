use super::collect::GroupElement;
use super::group::{PcGroup, Subgroup};
use super::presentation::{normal_word, PcPresentation};
use crate::error::{Error, Result};

/// `G/N` as a polycyclic presentation together with the projection from `G`.
///
/// The quotient generators are coset representatives `q_1, ..., q_s` in `G`.
/// Level `k` of the series is the preimage `<q_k, ..., q_s> N`.
#[derive(Clone, Debug)]
pub struct Quotient {
    group: PcGroup,
    presentation: PcPresentation,
    reps: Vec<usize>,
    levels: Vec<Vec<bool>>,
    kernel: Subgroup,
}

impl Quotient {
    pub fn presentation(&self) -> &PcPresentation {
        &self.presentation
    }

    pub fn kernel(&self) -> &Subgroup {
        &self.kernel
    }

    /// Representatives in `G` of the quotient's pc generators.
    pub fn generator_representatives(&self) -> Vec<GroupElement> {
        self.reps.iter().map(|&r| self.group.element(r)).collect()
    }

    /// Image of `x` in `G/N`.
    pub fn project(&self, x: &GroupElement) -> GroupElement {
        GroupElement(self.sift(self.group.index_of(x), 0))
    }

    pub fn project_index(&self, x: usize) -> GroupElement {
        GroupElement(self.sift(x, 0))
    }

    /// A preimage in `G` of a quotient element.
    pub fn lift(&self, q: &GroupElement) -> GroupElement {
        let g = &self.group;
        let mut x = 0;
        for (k, &e) in q.exponents().iter().enumerate() {
            for _ in 0..e {
                x = g.mul(x, self.reps[k]);
            }
        }
        g.element(x)
    }

    /// Exponents of `x` with respect to the series from level `from` on;
    /// `x` must lie in level `from`.
    fn sift(&self, mut x: usize, from: usize) -> Vec<u32> {
        let g = &self.group;
        let s = self.reps.len();
        let mut exps = vec![0u32; s];
        for k in from..s {
            let r = self.presentation.orders()[k];
            let inv = g.inv(self.reps[k]);
            let mut e = 0;
            while !self.levels[k + 1][x] {
                x = g.mul(inv, x);
                e += 1;
                assert!(e < r, "element escaped the quotient series");
            }
            exps[k] = e;
        }
        debug_assert!(self.kernel.contains(x));
        exps
    }
}

impl PcGroup {
    /// Builds `G/N` for a normal subgroup given as an element set.
    ///
    /// The series refines the images of the derived series of `G` by prime
    /// steps: inside each abelian section the lexicographically least element
    /// outside the current subgroup is powered down until its next power falls
    /// in, which adds exactly one cyclic factor of prime order.
    pub fn quotient_presentation(&self, n_set: &[usize]) -> Result<Quotient> {
        let kernel = self.subgroup_from_set(n_set)?;
        if !self.is_normal(&kernel) {
            return Err(Error::NotNormal);
        }
        let derived = self.derived_series();
        // preimages D_k N, top to bottom, ending at N
        let mut sections: Vec<Subgroup> = Vec::new();
        for d in &derived {
            let mut h = kernel.clone();
            for &x in d.generators() {
                if !h.contains(x) {
                    h = self.extend(&h, x);
                }
            }
            if sections.last().is_none_or(|s| s.order() != h.order()) {
                sections.push(h);
            }
        }
        if sections.last().is_none_or(|s| s.order() != kernel.order()) {
            sections.push(kernel.clone());
        }

        // Build the chain bottom-up; each step has prime index.
        let mut reps_rev = Vec::new();
        let mut orders_rev = Vec::new();
        let mut levels_rev = vec![kernel.mask().to_vec()];
        let mut current = kernel.clone();
        for top in sections.iter().rev().skip(1) {
            while current.order() < top.order() {
                let x = top
                    .members()
                    .into_iter()
                    .find(|&x| !current.contains(x))
                    .expect("section is strictly larger");
                let m = self.relative_order(x, &current);
                let p = smallest_prime_factor(m);
                let y = self.pow_index(x, m / p);
                current = self.extend(&current, y);
                reps_rev.push(y);
                orders_rev.push(p as u32);
                levels_rev.push(current.mask().to_vec());
            }
        }
        reps_rev.reverse();
        orders_rev.reverse();
        levels_rev.reverse();
        let reps = reps_rev;
        let orders = orders_rev;
        let levels = levels_rev;

        let name = format!("{}/N", self.presentation().name());
        let mut partial = Quotient {
            group: self.clone(),
            presentation: PcPresentation::from_parts(
                name.clone(),
                orders.clone(),
                vec![Vec::new(); orders.len()],
                trivial_conjugates(orders.len()),
            )?,
            reps,
            levels,
            kernel,
        };
        let s = orders.len();
        let mut powers = Vec::with_capacity(s);
        for i in 0..s {
            let x = self.pow_index(partial.reps[i], orders[i] as usize);
            powers.push(normal_word(&partial.sift(x, i + 1)));
        }
        let mut conjugates = Vec::with_capacity(s * (s.saturating_sub(1)) / 2);
        for i in 0..s {
            for j in i + 1..s {
                // g_i^{-1} g_j g_i
                let qi = partial.reps[i];
                let x = self.mul(self.mul(self.inv(qi), partial.reps[j]), qi);
                conjugates.push(normal_word(&partial.sift(x, i + 1)));
            }
        }
        partial.presentation = PcPresentation::new(name, orders, powers, conjugates)?;
        Ok(partial)
    }

    /// Least `m >= 1` with `x^m` in `h`.
    fn relative_order(&self, x: usize, h: &Subgroup) -> usize {
        let mut y = x;
        let mut m = 1;
        while !h.contains(y) {
            y = self.mul(y, x);
            m += 1;
        }
        m
    }

    pub(crate) fn pow_index(&self, x: usize, k: usize) -> usize {
        let p = self.presentation();
        self.index_of(&p.power(&self.element(x), k as i64))
    }
}

fn trivial_conjugates(s: usize) -> Vec<super::NormalWord> {
    let mut out = Vec::new();
    for i in 0..s {
        out.extend((i + 1..s).map(|j| vec![(j, 1)]));
    }
    out
}

fn smallest_prime_factor(m: usize) -> usize {
    (2..=m).find(|d| m.is_multiple_of(*d)).expect("m >= 2")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intlattice::InvariantList;
    use crate::pcgroup::{parse_presentation, DEFAULT_ELEMENT_BOUND};

    fn group(src: &str) -> PcGroup {
        PcGroup::new(parse_presentation(src).unwrap(), DEFAULT_ELEMENT_BOUND).unwrap()
    }

    const D4: &str = "name D4\norders 2 4\nconj 2 1 = g2^3\n";

    #[test]
    fn trivial_kernel_gives_isomorphic_copy() {
        let g = group(D4);
        let q = g.quotient_presentation(&[0]).unwrap();
        assert_eq!(q.presentation().order(), 8);
        assert_eq!(
            q.presentation().abelianization(),
            InvariantList::from_u64(&[2, 2])
        );
    }

    #[test]
    fn d4_mod_center_is_klein() {
        let g = group(D4);
        let z = g.center().members();
        assert_eq!(z.len(), 2);
        let q = g.quotient_presentation(&z).unwrap();
        assert_eq!(q.presentation().order(), 4);
        assert_eq!(
            q.presentation().abelianization(),
            InvariantList::from_u64(&[2, 2])
        );
        // projection is a homomorphism
        let qp = q.presentation();
        for a in 0..8 {
            for b in 0..8 {
                let lhs = q.project_index(g.mul(a, b));
                let rhs = qp.multiply(&q.project_index(a), &q.project_index(b));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn rejects_bad_subsets() {
        let g = group(D4);
        let g1 = g.generator_indices()[0];
        assert!(matches!(
            g.quotient_presentation(&[0, g1]),
            Err(Error::NotNormal)
        ));
        let g2 = g.generator_indices()[1];
        assert!(matches!(
            g.quotient_presentation(&[0, g2]),
            Err(Error::NotClosed)
        ));
    }

    #[test]
    fn whole_group_gives_trivial_quotient() {
        let g = group(D4);
        let all: Vec<usize> = (0..8).collect();
        let q = g.quotient_presentation(&all).unwrap();
        assert_eq!(q.presentation().n(), 0);
        assert_eq!(q.presentation().order(), 1);
        assert!(q.project_index(5).is_identity());
    }
}
