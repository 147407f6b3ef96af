use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::intlattice::IntegerLattice;
use crate::pcgroup::{GroupElement, PcPresentation, Word};

/// The presentation extended by one central tail per relation.
///
/// Tails `0..n` belong to the power relations in generator order; tail
/// `n + k` belongs to the `k`-th conjugation relation, pairs `(i, j)` with
/// `i < j` taken lexicographically.
#[derive(Clone, Debug)]
pub struct TailedCover {
    base: PcPresentation,
}

/// An element of the cover: a normal form of `G` and an exact tail vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CoverElement {
    pub gpart: GroupElement,
    pub tails: Vec<BigInt>,
}

impl fmt::Debug for CoverElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t: Vec<String> = self.tails.iter().map(|t| t.to_string()).collect();
        write!(f, "({}; [{}])", self.gpart, t.join(","))
    }
}

fn add_scratch(acc: &mut [BigInt], scratch: &[i64]) {
    for (a, &s) in acc.iter_mut().zip(scratch) {
        if s != 0 {
            *a += s;
        }
    }
}

/// Builds the cover of a consistent presentation.
pub fn build_cover(p: &PcPresentation) -> TailedCover {
    TailedCover { base: p.clone() }
}

impl TailedCover {
    pub fn base(&self) -> &PcPresentation {
        &self.base
    }

    /// Number of tails, `n + n(n-1)/2`.
    pub fn m(&self) -> usize {
        self.base.tail_count()
    }

    pub fn identity(&self) -> CoverElement {
        self.lift(&self.base.identity())
    }

    /// The lift with zero tails.
    pub fn lift(&self, g: &GroupElement) -> CoverElement {
        CoverElement {
            gpart: g.clone(),
            tails: vec![BigInt::zero(); self.m()],
        }
    }

    pub fn lift_with(&self, g: &GroupElement, tails: Vec<BigInt>) -> CoverElement {
        assert_eq!(tails.len(), self.m());
        CoverElement {
            gpart: g.clone(),
            tails,
        }
    }

    /// Collects an arbitrary word in the cover, starting from zero tails.
    pub fn collect_with_tails(&self, w: &Word) -> CoverElement {
        let mut e = self.base.identity().exponents().to_vec();
        let mut t = vec![0i64; self.m()];
        self.base
            .collect_into(&mut e, Some(&mut t), w.0.iter().map(|l| (l.gen, l.exp)));
        CoverElement {
            gpart: GroupElement::from_exponents(e),
            tails: t.into_iter().map(BigInt::from).collect(),
        }
    }

    pub fn multiply(&self, a: &CoverElement, b: &CoverElement) -> CoverElement {
        let mut e = a.gpart.exponents().to_vec();
        let mut t = vec![0i64; self.m()];
        self.base
            .mul_into(&mut e, Some(&mut t), b.gpart.exponents());
        let mut tails: Vec<BigInt> = a.tails.iter().zip(&b.tails).map(|(x, y)| x + y).collect();
        add_scratch(&mut tails, &t);
        CoverElement {
            gpart: GroupElement::from_exponents(e),
            tails,
        }
    }

    pub fn inverse(&self, a: &CoverElement) -> CoverElement {
        let mut e = a.gpart.exponents().to_vec();
        let mut t = vec![0i64; self.m()];
        let inv = self.base.invert_into(&mut e, Some(&mut t));
        // lift(a) * lift(a^{-1}) = (1, t)
        let tails = a.tails.iter().zip(&t).map(|(s, &u)| -s - u).collect();
        CoverElement {
            gpart: GroupElement::from_exponents(inv),
            tails,
        }
    }

    /// `x y x^{-1} y^{-1}`.
    pub fn commutator(&self, x: &CoverElement, y: &CoverElement) -> CoverElement {
        let xy = self.multiply(x, y);
        let xi = self.inverse(x);
        let yi = self.inverse(y);
        self.multiply(&self.multiply(&xy, &xi), &yi)
    }

    /// `x y x^{-1}`.
    pub fn conjugate(&self, x: &CoverElement, y: &CoverElement) -> CoverElement {
        let xy = self.multiply(x, y);
        self.multiply(&xy, &self.inverse(x))
    }

    /// The commutator of zero-tail lifts, which realizes `x ∧ y`.
    pub fn wedge(&self, x: &GroupElement, y: &GroupElement) -> CoverElement {
        self.commutator(&self.lift(x), &self.lift(y))
    }

    /// The lattice `C` spanned by the tail differences of all overlap tests.
    /// Fails if some overlap disagrees on the group part.
    pub fn consistency_lattice(&self) -> Result<IntegerLattice> {
        let mut failing = Vec::new();
        let mut gens = Vec::new();
        for ev in self.base.overlap_evaluations() {
            if ev.lhs.0 != ev.rhs.0 {
                failing.push(ev.overlap);
                continue;
            }
            let d: Vec<BigInt> = ev
                .lhs
                .1
                .iter()
                .zip(&ev.rhs.1)
                .map(|(a, b)| BigInt::from(a - b))
                .collect();
            if d.iter().any(|x| !x.is_zero()) {
                gens.push(d);
            }
        }
        if !failing.is_empty() {
            return Err(Error::Inconsistent(failing));
        }
        Ok(IntegerLattice::from_generators(self.m(), &gens))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intlattice::{quotient_invariants, InvariantList};
    use crate::pcgroup::parse_presentation;

    fn cover(src: &str) -> TailedCover {
        build_cover(&parse_presentation(src).unwrap())
    }

    fn multiplier(src: &str) -> InvariantList {
        let c = cover(src).consistency_lattice().unwrap();
        quotient_invariants(&c.saturation(), &c).unwrap()
    }

    #[test]
    fn tail_counts() {
        assert_eq!(cover("name C5\norders 5\n").m(), 1);
        assert_eq!(cover("name D4\norders 2 4\nconj 2 1 = g2^3\n").m(), 3);
    }

    #[test]
    fn cyclic_has_no_relations() {
        let c = cover("name C5\norders 5\n").consistency_lattice().unwrap();
        assert_eq!(c.rank(), 0);
        assert!(multiplier("name C5\norders 5\n").is_trivial());
    }

    #[test]
    fn small_multipliers() {
        assert_eq!(
            multiplier("name V4\norders 2 2\n"),
            InvariantList::from_u64(&[2])
        );
        assert_eq!(
            multiplier("name D4\norders 2 4\nconj 2 1 = g2^3\n"),
            InvariantList::from_u64(&[2])
        );
        let q8 = "name Q8\norders 2 2 2\npow 1 = g3^1\npow 2 = g3^1\nconj 2 1 = g2^1 g3^1\n";
        assert!(multiplier(q8).is_trivial());
        assert!(
            multiplier("name C4xC2\norders 2 2 2\npow 2 = g3^1\n")
                .divisors()
                .len()
                == 1
        );
    }

    #[test]
    fn power_of_generator_hits_its_tail() {
        let c = cover("name C5\norders 5\n");
        let w = Word::gen(0, 5);
        let e = c.collect_with_tails(&w);
        assert!(e.gpart.is_identity());
        assert_eq!(e.tails, vec![BigInt::from(1)]);
    }

    #[test]
    fn inverse_and_lift_independence() {
        let c = cover("name D4\norders 2 4\nconj 2 1 = g2^3\n");
        let p = c.base().clone();
        let x = c.lift_with(&p.generator(0), vec![3.into(), (-2).into(), 7.into()]);
        let y = c.lift_with(&p.generator(1), vec![1.into(), 1.into(), (-5).into()]);
        let prod = c.multiply(&x, &c.inverse(&x));
        assert_eq!(prod, c.identity());
        assert_eq!(c.commutator(&x, &y), c.wedge(&x.gpart, &y.gpart));
    }
}
