use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::intlattice::{quotient_invariants, IntegerLattice, InvariantList};
use crate::wedgecover::ExtSquareData;

/// How `M_0(G)` is generated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Class representatives against generators of their centralizers.
    Classes,
    /// Every commuting pair; the brute-force oracle.
    Pairs,
    /// Both, with a hard failure if the lattices differ.
    Both,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Classes => "classes",
            Method::Pairs => "pairs",
            Method::Both => "both",
        })
    }
}

impl FromStr for Method {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "classes" => Ok(Method::Classes),
            "pairs" => Ok(Method::Pairs),
            "both" => Ok(Method::Both),
            _ => Err(format!(
                "unknown method `{s}` (expected classes, pairs or both)"
            )),
        }
    }
}

/// The outcome of a Bogomolov multiplier computation.
#[derive(Clone, Debug)]
pub struct BogomolovReport {
    pub name: String,
    pub order: usize,
    pub abelianization: InvariantList,
    pub derived_order: usize,
    pub multiplier: InvariantList,
    /// `[M_0 : C]`, the order of `M_0(G)`.
    pub m0_order: BigInt,
    /// `[sat(C) : M_0]`, the order of `B̃_0(G)`.
    pub m0_index: BigInt,
    /// Number of wedge generators fed into the `M_0` lattice.
    pub m0_generators: usize,
    pub bogomolov: InvariantList,
    pub exterior_square_order: BigInt,
    pub curly_wedge_order: BigInt,
    pub method: Method,
    pub elapsed: Duration,
}

fn ensure_in_saturation(e: &ExtSquareData, v: &[BigInt]) -> Result<()> {
    if e.saturated_lattice().contains(v) {
        Ok(())
    } else {
        Err(Error::CrossCheck(
            "wedge of a commuting pair left sat(C)".into(),
        ))
    }
}

/// `C + <c ∧ x>` over class representatives `c` and generators `x` of
/// `C_G(c)`.
pub fn m0_lattice_classes(e: &ExtSquareData) -> Result<IntegerLattice> {
    Ok(m0_classes_with_count(e)?.0)
}

fn m0_classes_with_count(e: &ExtSquareData) -> Result<(IntegerLattice, usize)> {
    let g = e.group();
    let classes = g.conjugacy_classes();
    let per_class: Vec<Vec<Vec<BigInt>>> = classes
        .par_iter()
        .map(|c| {
            g.centralizer_generators(c.representative)
                .into_iter()
                .map(|x| {
                    let v = e.wedge_indices(c.representative, x).tails;
                    ensure_in_saturation(e, &v)?;
                    Ok(e.consistency_lattice().reduce(&v))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let gens: BTreeSet<Vec<BigInt>> = per_class.into_iter().flatten().collect();
    let count = gens.len();
    let gens: Vec<Vec<BigInt>> = gens.into_iter().collect();
    Ok((e.consistency_lattice().extend(&gens), count))
}

/// `C + <x ∧ y>` over all commuting pairs; `bound` caps `|G|^2`.
pub fn m0_lattice_pairs(e: &ExtSquareData, bound: u128) -> Result<IntegerLattice> {
    Ok(m0_pairs_with_count(e, bound)?.0)
}

fn m0_pairs_with_count(e: &ExtSquareData, bound: u128) -> Result<(IntegerLattice, usize)> {
    let g = e.group();
    let n = g.order();
    let pairs = (n as u128) * (n as u128);
    if pairs > bound {
        return Err(Error::BoundExceeded {
            what: "commuting-pair enumeration",
            size: pairs,
            bound,
        });
    }
    // Residues mod C repeat heavily, so deduplicate before the HNF.
    let gens: BTreeSet<Vec<BigInt>> = (0..n)
        .into_par_iter()
        .map(|x| {
            let mut local = BTreeSet::new();
            for y in 0..n {
                if g.commute(x, y) {
                    let v = e.wedge_indices(x, y).tails;
                    ensure_in_saturation(e, &v)?;
                    local.insert(e.consistency_lattice().reduce(&v));
                }
            }
            Ok(local)
        })
        .try_reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            Ok(a)
        })?;
    let count = gens.len();
    let gens: Vec<Vec<BigInt>> = gens.into_iter().collect();
    Ok((e.consistency_lattice().extend(&gens), count))
}

/// `M_0` by the chosen method, plus the number of distinct generators.
pub fn m0_lattice(
    e: &ExtSquareData,
    method: Method,
    pair_bound: u128,
) -> Result<(IntegerLattice, usize)> {
    match method {
        Method::Classes => m0_classes_with_count(e),
        Method::Pairs => m0_pairs_with_count(e, pair_bound),
        Method::Both => {
            let (a, count) = m0_classes_with_count(e)?;
            let (b, _) = m0_pairs_with_count(e, pair_bound)?;
            if a != b {
                return Err(Error::CrossCheck(
                    "class-representative and all-pairs M0 lattices differ".into(),
                ));
            }
            Ok((a, count))
        }
    }
}

/// `B̃_0(G) = sat(C) / M_0`.
pub fn bogomolov_multiplier(
    e: &ExtSquareData,
    method: Method,
    pair_bound: u128,
) -> Result<BogomolovReport> {
    let start = Instant::now();
    let (m0, m0_generators) = m0_lattice(e, method, pair_bound)?;
    let bogomolov = quotient_invariants(e.saturated_lattice(), &m0)?;
    let m0_order = quotient_invariants(&m0, e.consistency_lattice())?.order();
    let g = e.group();
    let report = BogomolovReport {
        name: g.presentation().name().to_string(),
        order: g.order(),
        abelianization: g.presentation().abelianization(),
        derived_order: e.derived_order(),
        multiplier: e.multiplier().clone(),
        m0_order,
        m0_index: bogomolov.order(),
        m0_generators,
        exterior_square_order: e.exterior_square_order(),
        curly_wedge_order: e.curly_wedge_order(&bogomolov),
        bogomolov,
        method,
        elapsed: start.elapsed(),
    };
    Ok(report)
}
