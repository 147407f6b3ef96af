use num_bigint::BigInt;

use super::cover::{build_cover, CoverElement, TailedCover};
use super::table::WedgeTable;
use crate::error::{Error, Result};
use crate::intlattice::{quotient_invariants, IntegerLattice, InvariantList};
use crate::pcgroup::{GroupElement, PcGroup};

/// Default cap on `|G ∧ G|` for breadth-first wedge-word searches.
pub const DEFAULT_COVER_BOUND: usize = 200_000;

/// Everything derived from the tails cover: `C`, `sat(C)`, `M(G)`, the
/// wedges of pc generators and `|G ∧ G|`.
#[derive(Clone, Debug)]
pub struct ExtSquareData {
    group: PcGroup,
    cover: TailedCover,
    c: IntegerLattice,
    sat_c: IntegerLattice,
    multiplier: InvariantList,
    generator_wedges: Vec<Vec<CoverElement>>,
    derived_order: usize,
}

impl ExtSquareData {
    pub fn new(group: &PcGroup) -> Result<Self> {
        let p = group.presentation();
        let cover = build_cover(p);
        let c = cover.consistency_lattice()?;
        let n = p.n();
        // Z^m / C is M(G) plus a free part of rank n.
        if cover.m() - c.rank() != n {
            return Err(Error::CrossCheck(format!(
                "tail quotient has free rank {}, expected {n}",
                cover.m() - c.rank()
            )));
        }
        let sat_c = c.saturation();
        let multiplier = quotient_invariants(&sat_c, &c)?;
        let generator_wedges = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| cover.wedge(&p.generator(i), &p.generator(j)))
                    .collect()
            })
            .collect();
        let derived_order = group.derived_subgroup().order();
        Ok(ExtSquareData {
            group: group.clone(),
            cover,
            c,
            sat_c,
            multiplier,
            generator_wedges,
            derived_order,
        })
    }

    pub fn group(&self) -> &PcGroup {
        &self.group
    }

    pub fn cover(&self) -> &TailedCover {
        &self.cover
    }

    pub fn consistency_lattice(&self) -> &IntegerLattice {
        &self.c
    }

    pub fn saturated_lattice(&self) -> &IntegerLattice {
        &self.sat_c
    }

    /// `M(G) = sat(C) / C`.
    pub fn multiplier(&self) -> &InvariantList {
        &self.multiplier
    }

    /// `g_i ∧ g_j` for 0-based pc generator indices.
    pub fn generator_wedge(&self, i: usize, j: usize) -> &CoverElement {
        &self.generator_wedges[i][j]
    }

    pub fn derived_order(&self) -> usize {
        self.derived_order
    }

    pub fn wedge(&self, x: &GroupElement, y: &GroupElement) -> CoverElement {
        self.cover.wedge(x, y)
    }

    /// Wedge by element indices of the underlying enumeration.
    pub fn wedge_indices(&self, x: usize, y: usize) -> CoverElement {
        self.wedge(&self.group.element(x), &self.group.element(y))
    }

    /// `|G ∧ G| = |γ_2(G)| |M(G)|`.
    pub fn exterior_square_order(&self) -> BigInt {
        BigInt::from(self.derived_order) * self.multiplier.order()
    }

    /// `|G ⋏ G| = |γ_2(G)| |B̃_0(G)|`.
    pub fn curly_wedge_order(&self, b0: &InvariantList) -> BigInt {
        BigInt::from(self.derived_order) * b0.order()
    }

    /// Equality modulo `C`.
    pub fn congruent(&self, a: &[BigInt], b: &[BigInt]) -> bool {
        let d: Vec<BigInt> = a.iter().zip(b).map(|(x, y)| x - y).collect();
        self.c.contains(&d)
    }

    /// Breadth-first table of `G ∧ G` inside the cover, capped at `bound`.
    pub fn wedge_table(&self, bound: usize) -> Result<WedgeTable> {
        WedgeTable::build(self, bound)
    }
}
