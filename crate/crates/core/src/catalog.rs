//! Built-in presentations with frozen expected invariants.

use std::fmt;

use crate::error::{Error, Result};
use crate::intlattice::InvariantList;
use crate::pcgroup::{parse_presentation, GroupElement, PcPresentation};

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// Stated in the published computation for this group.
    Published,
    /// Computed once by an independent oracle (all-pairs enumeration or
    /// Blackburn–Evens) and frozen.
    Oracle,
    /// Immediate from the structure, e.g. cyclic or abelian.
    Trivial,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Published => "published",
            Provenance::Oracle => "oracle",
            Provenance::Trivial => "trivial",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tagged<T> {
    pub value: T,
    pub provenance: Provenance,
}

/// Which commutator convention the stored relations were written in.
///
/// The library computes with `[x,y] = x y x^{-1} y^{-1}` throughout. Entries
/// transcribed from sources using `[x,y] = x^{-1} y^{-1} x y` record that so
/// their displayed relations can be checked literally.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Convention {
    Left,
    Right,
}

#[derive(Clone, Debug)]
pub struct Expected {
    pub order: Tagged<u128>,
    pub abelianization: Tagged<InvariantList>,
    pub derived_order: Tagged<usize>,
    pub multiplier: Tagged<InvariantList>,
    pub bogomolov: Tagged<InvariantList>,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub source: &'static str,
    pub convention: Convention,
    pub note: &'static str,
    pub expected: Expected,
}

impl CatalogEntry {
    pub fn presentation(&self) -> PcPresentation {
        parse_presentation(self.source).expect("catalog entries are validated by tests")
    }

    /// The commutator in the entry's own convention.
    pub fn source_commutator(
        &self,
        p: &PcPresentation,
        x: &GroupElement,
        y: &GroupElement,
    ) -> GroupElement {
        match self.convention {
            Convention::Left => p.commutator(x, y),
            Convention::Right => p.commutator(&p.inverse(x), &p.inverse(y)),
        }
    }
}

struct Raw {
    name: &'static str,
    source: &'static str,
    convention: Convention,
    note: &'static str,
    order: (u128, Provenance),
    abelianization: (&'static [u64], Provenance),
    derived_order: (usize, Provenance),
    multiplier: (&'static [u64], Provenance),
    bogomolov: (&'static [u64], Provenance),
}

use Provenance::{Oracle, Published, Trivial};

const RAW: &[Raw] = &[
    Raw {
        name: "A4",
        source: "name A4\norders 3 2 2\nconj 2 1 = g3^1\nconj 3 1 = g2^1 g3^1\n",
        convention: Convention::Left,
        note: "alternating group of degree 4, Frobenius with kernel <g2, g3>",
        order: (12, Trivial),
        abelianization: (&[3], Oracle),
        derived_order: (4, Oracle),
        multiplier: (&[2], Oracle),
        bogomolov: (&[], Oracle),
    },
    Raw {
        name: "C12",
        source: "name C12\norders 2 2 3\npow 1 = g2^1\npow 2 = g3^1\n",
        convention: Convention::Left,
        note: "cyclic of order 12",
        order: (12, Trivial),
        abelianization: (&[12], Trivial),
        derived_order: (1, Trivial),
        multiplier: (&[], Trivial),
        bogomolov: (&[], Trivial),
    },
    Raw {
        name: "C2",
        source: "name C2\norders 2\n",
        convention: Convention::Left,
        note: "cyclic of order 2",
        order: (2, Trivial),
        abelianization: (&[2], Trivial),
        derived_order: (1, Trivial),
        multiplier: (&[], Trivial),
        bogomolov: (&[], Trivial),
    },
    Raw {
        name: "C2xC2",
        source: "name C2xC2\norders 2 2\n",
        convention: Convention::Left,
        note: "Klein four-group",
        order: (4, Trivial),
        abelianization: (&[2, 2], Trivial),
        derived_order: (1, Trivial),
        multiplier: (&[2], Oracle),
        bogomolov: (&[], Trivial),
    },
    Raw {
        name: "C3",
        source: "name C3\norders 3\n",
        convention: Convention::Left,
        note: "cyclic of order 3",
        order: (3, Trivial),
        abelianization: (&[3], Trivial),
        derived_order: (1, Trivial),
        multiplier: (&[], Trivial),
        bogomolov: (&[], Trivial),
    },
    Raw {
        name: "C3xC3xC3",
        source: "name C3xC3xC3\norders 3 3 3\n",
        convention: Convention::Left,
        note: "elementary abelian of order 27",
        order: (27, Trivial),
        abelianization: (&[3, 3, 3], Trivial),
        derived_order: (1, Trivial),
        multiplier: (&[3, 3, 3], Oracle),
        bogomolov: (&[], Trivial),
    },
    Raw {
        name: "C4xC2",
        source: "name C4xC2\norders 2 2 2\npow 1 = g3^1\n",
        convention: Convention::Left,
        note: "g1 has order 4",
        order: (8, Trivial),
        abelianization: (&[2, 4], Trivial),
        derived_order: (1, Trivial),
        multiplier: (&[2], Oracle),
        bogomolov: (&[], Trivial),
    },
    Raw {
        name: "C5",
        source: "name C5\norders 5\n",
        convention: Convention::Left,
        note: "cyclic of order 5",
        order: (5, Trivial),
        abelianization: (&[5], Trivial),
        derived_order: (1, Trivial),
        multiplier: (&[], Trivial),
        bogomolov: (&[], Trivial),
    },
    Raw {
        name: "D4",
        source: "name D4\norders 2 4\nconj 2 1 = g2^3\n",
        convention: Convention::Left,
        note: "dihedral of order 8; g1 a reflection, g2 a rotation",
        order: (8, Trivial),
        abelianization: (&[2, 2], Oracle),
        derived_order: (2, Oracle),
        multiplier: (&[2], Oracle),
        bogomolov: (&[], Oracle),
    },
    Raw {
        name: "G243_28",
        source: "name G243_28\norders 3 3 3 3 3\npow 2 = g4^2\npow 3 = g5^2\n\
                 conj 2 1 = g2^1 g3^1\nconj 3 1 = g3^1 g4^1\nconj 3 2 = g3^1 g5^1\n\
                 conj 4 1 = g4^1 g5^1\n",
        convention: Convention::Right,
        note: "relations [g2,g1]=g3, [g3,g1]=g4, [g3,g2]=g5, [g4,g1]=g5 read with \
               [x,y] = x^-1 y^-1 x y, so g_i^-1 g_j g_i = g_j [g_j,g_i]",
        order: (243, Published),
        abelianization: (&[3, 3], Published),
        derived_order: (27, Published),
        multiplier: (&[9], Published),
        bogomolov: (&[3], Published),
    },
    Raw {
        name: "Heis3",
        source: "name Heis3\norders 3 3 3\nconj 2 1 = g2^1 g3^1\n",
        convention: Convention::Left,
        note: "Heisenberg group of order 27 and exponent 3",
        order: (27, Trivial),
        abelianization: (&[3, 3], Oracle),
        derived_order: (3, Oracle),
        multiplier: (&[3, 3], Oracle),
        bogomolov: (&[], Oracle),
    },
    Raw {
        name: "Heis5",
        source: "name Heis5\norders 5 5 5\nconj 2 1 = g2^1 g3^1\n",
        convention: Convention::Left,
        note: "Heisenberg group of order 125 and exponent 5",
        order: (125, Trivial),
        abelianization: (&[5, 5], Oracle),
        derived_order: (5, Oracle),
        multiplier: (&[5, 5], Oracle),
        bogomolov: (&[], Oracle),
    },
    Raw {
        name: "Q8",
        source: "name Q8\norders 2 2 2\npow 1 = g3^1\npow 2 = g3^1\nconj 2 1 = g2^1 g3^1\n",
        convention: Convention::Left,
        note: "quaternion group",
        order: (8, Trivial),
        abelianization: (&[2, 2], Oracle),
        derived_order: (2, Oracle),
        multiplier: (&[], Oracle),
        bogomolov: (&[], Oracle),
    },
    Raw {
        name: "S3",
        source: "name S3\norders 2 3\nconj 2 1 = g2^2\n",
        convention: Convention::Left,
        note: "symmetric group of degree 3, Frobenius with kernel <g2>",
        order: (6, Trivial),
        abelianization: (&[2], Oracle),
        derived_order: (3, Oracle),
        multiplier: (&[], Oracle),
        bogomolov: (&[], Oracle),
    },
    Raw {
        name: "SD16",
        source: "name SD16\norders 2 2 2 2\npow 2 = g3^1\npow 3 = g4^1\n\
                 conj 2 1 = g2^1 g3^1\nconj 3 1 = g3^1 g4^1\n",
        convention: Convention::Left,
        note: "semidihedral of order 16; g2 has order 8 and g1^-1 g2 g1 = g2^3",
        order: (16, Trivial),
        abelianization: (&[2, 2], Oracle),
        derived_order: (4, Oracle),
        multiplier: (&[], Oracle),
        bogomolov: (&[], Oracle),
    },
];

fn entry(r: &Raw) -> CatalogEntry {
    let tag = |v: &[u64], p| Tagged {
        value: InvariantList::from_u64(v),
        provenance: p,
    };
    CatalogEntry {
        name: r.name,
        source: r.source,
        convention: r.convention,
        note: r.note,
        expected: Expected {
            order: Tagged {
                value: r.order.0,
                provenance: r.order.1,
            },
            abelianization: tag(r.abelianization.0, r.abelianization.1),
            derived_order: Tagged {
                value: r.derived_order.0,
                provenance: r.derived_order.1,
            },
            multiplier: tag(r.multiplier.0, r.multiplier.1),
            bogomolov: tag(r.bogomolov.0, r.bogomolov.1),
        },
    }
}

/// Entry names, sorted.
pub fn list() -> Vec<&'static str> {
    let mut names: Vec<&'static str> = RAW.iter().map(|r| r.name).collect();
    names.sort_unstable();
    names
}

pub fn all() -> Vec<CatalogEntry> {
    list()
        .into_iter()
        .map(|n| get(n).expect("listed"))
        .collect()
}

/// Looks up an entry; unknown names report the closest matches.
pub fn get(name: &str) -> Result<CatalogEntry> {
    if let Some(r) = RAW.iter().find(|r| r.name == name) {
        return Ok(entry(r));
    }
    let lower = name.to_lowercase();
    let mut scored: Vec<(usize, &'static str)> = RAW
        .iter()
        .map(|r| (strsim::levenshtein(&lower, &r.name.to_lowercase()), r.name))
        .filter(|&(d, n)| d <= 2 || n.to_lowercase().contains(&lower))
        .collect();
    scored.sort();
    Err(Error::UnknownCatalogEntry {
        name: name.to_string(),
        suggestions: scored.into_iter().map(|(_, n)| n.to_string()).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sources_are_canonical_and_consistent() {
        for e in all() {
            let p = e.presentation();
            assert_eq!(p.render(), e.source, "{}", e.name);
            assert_eq!(p.order(), e.expected.order.value, "{}", e.name);
            assert_eq!(p.name(), e.name);
        }
    }

    #[test]
    fn listing_is_sorted() {
        let l = list();
        let mut s = l.clone();
        s.sort();
        assert_eq!(l, s);
        assert!(l.contains(&"G243_28"));
    }

    #[test]
    fn near_matches() {
        match get("heis3") {
            Err(Error::UnknownCatalogEntry { suggestions, .. }) => {
                assert_eq!(suggestions[0], "Heis3")
            }
            other => panic!("{other:?}"),
        }
        assert!(get("D4").is_ok());
    }

    #[test]
    fn g243_relations_hold_in_source_convention() {
        let e = get("G243_28").unwrap();
        let p = e.presentation();
        let g = |i| p.generator(i);
        let c = |i, j| e.source_commutator(&p, &g(i), &g(j));
        assert_eq!(c(1, 0), g(2));
        assert_eq!(c(2, 0), g(3));
        assert_eq!(c(2, 1), g(4));
        assert_eq!(c(3, 0), g(4));
        assert!(c(3, 2).is_identity());
        assert_eq!(p.power(&g(1), 3), p.power(&g(3), 2));
        assert_eq!(p.power(&g(2), 3), p.power(&g(4), 2));
    }
}
