use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;

use super::cover::CoverElement;
use super::exterior::ExtSquareData;
use crate::error::{Error, Result};
use crate::pcgroup::GroupElement;

/// One factor `(x ∧ y)^sign` of a wedge word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedgeFactor {
    pub x: GroupElement,
    pub y: GroupElement,
    pub sign: i8,
}

type Key = (usize, Vec<BigInt>);

struct Node {
    value: CoverElement,
    parent: Option<(usize, usize)>,
}

/// All elements of `G ∧ G`, stored as (element of `γ_2(G)`, tail residue
/// modulo `C`), each with a shortest word in the wedge generators.
pub struct WedgeTable {
    gens: Vec<(GroupElement, GroupElement, CoverElement)>,
    nodes: Vec<Node>,
    index: HashMap<Key, usize>,
}

impl WedgeTable {
    pub(crate) fn build(e: &ExtSquareData, bound: usize) -> Result<Self> {
        let p = e.group().presentation();
        let cover = e.cover();
        let n = p.n();
        let mut gens = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let (x, y) = (p.generator(i), p.generator(j));
                let w = e.generator_wedge(i, j).clone();
                gens.push((x, y, w));
            }
        }
        loop {
            let table = Self::search(e, &gens, bound)?;
            // G ∧ G is the normal closure; add conjugates until it is normal.
            let mut added = false;
            for k in 0..n {
                let g = cover.lift(&p.generator(k));
                let mut fresh = Vec::new();
                for (x, y, w) in &gens {
                    let c = cover.conjugate(&g, w);
                    if table.lookup(e, &c).is_none() {
                        let gx = p.conjugate(&g.gpart, x);
                        let gy = p.conjugate(&g.gpart, y);
                        let wv = cover.wedge(&gx, &gy);
                        fresh.push((gx, gy, wv));
                    }
                }
                if let Some(f) = fresh.into_iter().next() {
                    gens.push(f);
                    added = true;
                    break;
                }
            }
            if !added {
                return Ok(table);
            }
        }
    }

    fn key(e: &ExtSquareData, v: &CoverElement) -> Key {
        (
            e.group().index_of(&v.gpart),
            e.consistency_lattice().reduce(&v.tails),
        )
    }

    fn search(
        e: &ExtSquareData,
        gens: &[(GroupElement, GroupElement, CoverElement)],
        bound: usize,
    ) -> Result<Self> {
        let cover = e.cover();
        let root = cover.identity();
        let mut index = HashMap::new();
        index.insert(Self::key(e, &root), 0);
        let mut nodes = vec![Node {
            value: root,
            parent: None,
        }];
        let mut queue = VecDeque::from([0usize]);
        while let Some(id) = queue.pop_front() {
            for (gi, (_, _, w)) in gens.iter().enumerate() {
                let mut v = cover.multiply(&nodes[id].value, w);
                v.tails = e.consistency_lattice().reduce(&v.tails);
                let key = Self::key(e, &v);
                if index.contains_key(&key) {
                    continue;
                }
                if nodes.len() >= bound {
                    return Err(Error::BoundExceeded {
                        what: "exterior square",
                        size: nodes.len() as u128 + 1,
                        bound: bound as u128,
                    });
                }
                index.insert(key, nodes.len());
                nodes.push(Node {
                    value: v,
                    parent: Some((id, gi)),
                });
                queue.push_back(nodes.len() - 1);
            }
        }
        Ok(WedgeTable {
            gens: gens.to_vec(),
            nodes,
            index,
        })
    }

    fn lookup(&self, e: &ExtSquareData, v: &CoverElement) -> Option<usize> {
        self.index.get(&Self::key(e, v)).copied()
    }

    /// `|G ∧ G|`.
    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// Pairs whose wedges generate `G ∧ G` in this table.
    pub fn generator_pairs(&self) -> Vec<(GroupElement, GroupElement)> {
        self.gens
            .iter()
            .map(|(x, y, _)| (x.clone(), y.clone()))
            .collect()
    }

    /// A wedge word with trivial group part whose tail is congruent to
    /// `target` modulo `C`.
    pub fn express(&self, e: &ExtSquareData, target: &[BigInt]) -> Result<Vec<WedgeFactor>> {
        if !e.saturated_lattice().contains(target) {
            return Err(Error::Hypothesis(
                "target tail vector is not in sat(C)".into(),
            ));
        }
        let v = e
            .cover()
            .lift_with(&e.group().presentation().identity(), target.to_vec());
        let mut id = self
            .lookup(e, &v)
            .ok_or_else(|| Error::CrossCheck("multiplier element missing from G ∧ G".into()))?;
        let mut word = Vec::new();
        while let Some((parent, gi)) = self.nodes[id].parent {
            let (x, y, _) = &self.gens[gi];
            word.push(WedgeFactor {
                x: x.clone(),
                y: y.clone(),
                sign: 1,
            });
            id = parent;
        }
        word.reverse();
        Ok(word)
    }
}

/// Evaluates `∏ (x_i ∧ y_i)^{s_i}` in the cover.
pub fn evaluate_wedge_word(e: &ExtSquareData, word: &[WedgeFactor]) -> CoverElement {
    let cover = e.cover();
    let mut acc = cover.identity();
    for f in word {
        let w = cover.wedge(&f.x, &f.y);
        let w = if f.sign < 0 { cover.inverse(&w) } else { w };
        acc = cover.multiply(&acc, &w);
    }
    acc
}
