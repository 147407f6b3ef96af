use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::{diagonal, hnf, snf, IntMatrix};
use crate::error::{Error, Result};

/// A subgroup of `Z^m` stored by its row Hermite basis (zero rows removed).
///
/// The basis is canonical, so derived equality is lattice equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntegerLattice {
    dim: usize,
    basis: IntMatrix,
    pivots: Vec<usize>,
}

impl IntegerLattice {
    pub fn zero(dim: usize) -> Self {
        IntegerLattice {
            dim,
            basis: IntMatrix::zeros(0, dim),
            pivots: Vec::new(),
        }
    }

    pub fn full(dim: usize) -> Self {
        Self::from_matrix(&IntMatrix::identity(dim))
    }

    pub fn from_generators(dim: usize, gens: &[Vec<BigInt>]) -> Self {
        Self::from_matrix(&IntMatrix::from_rows(dim, gens))
    }

    pub fn from_matrix(m: &IntMatrix) -> Self {
        let (h, _) = hnf(m);
        let mut rows = Vec::new();
        let mut pivots = Vec::new();
        for i in 0..h.nrows() {
            let r = h.row(i);
            if let Some(p) = r.iter().position(|x| !x.is_zero()) {
                rows.push(r.to_vec());
                pivots.push(p);
            }
        }
        IntegerLattice {
            dim: m.ncols(),
            basis: IntMatrix::from_rows(m.ncols(), &rows),
            pivots,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.nrows()
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn basis_rows(&self) -> Vec<Vec<BigInt>> {
        self.basis.rows_vec()
    }

    /// Canonical representative of `v + L`: entries in pivot columns are
    /// reduced into `[0, pivot)`.
    pub fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.dim, "vector has wrong dimension");
        let mut out = v.to_vec();
        for (i, &c) in self.pivots.iter().enumerate() {
            let p = &self.basis[(i, c)];
            let q = out[c].div_floor(p);
            if q.is_zero() {
                continue;
            }
            for (o, b) in out.iter_mut().zip(self.basis.row(i)).skip(c) {
                *o -= &q * b;
            }
        }
        out
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    pub fn contains_lattice(&self, other: &IntegerLattice) -> bool {
        other.dim == self.dim && (0..other.rank()).all(|i| self.contains(other.basis.row(i)))
    }

    /// Coordinates of `v` in this lattice's basis, if `v` is a member.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let mut rest = v.to_vec();
        let mut coords = Vec::with_capacity(self.rank());
        for (i, &c) in self.pivots.iter().enumerate() {
            let p = &self.basis[(i, c)];
            let (q, r) = rest[c].div_rem(p);
            if !r.is_zero() {
                return None;
            }
            for (o, b) in rest.iter_mut().zip(self.basis.row(i)).skip(c) {
                *o -= &q * b;
            }
            coords.push(q);
        }
        rest.iter().all(Zero::is_zero).then_some(coords)
    }

    pub fn sum(&self, other: &IntegerLattice) -> Result<IntegerLattice> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        let mut rows = self.basis_rows();
        rows.extend(other.basis_rows());
        Ok(Self::from_generators(self.dim, &rows))
    }

    /// Adds generators; vectors already in the lattice are skipped.
    pub fn extend(&self, gens: &[Vec<BigInt>]) -> IntegerLattice {
        let fresh: Vec<&Vec<BigInt>> = gens.iter().filter(|g| !self.contains(g)).collect();
        if fresh.is_empty() {
            return self.clone();
        }
        let mut rows = self.basis_rows();
        rows.extend(fresh.into_iter().cloned());
        Self::from_generators(self.dim, &rows)
    }

    /// The smallest lattice containing `self` with torsion-free quotient in `Z^m`,
    /// i.e. `(L ⊗ Q) ∩ Z^m`.
    pub fn saturation(&self) -> IntegerLattice {
        if self.rank() == 0 {
            return self.clone();
        }
        // Integer kernel of x ↦ B x, then the integer annihilator of that kernel.
        let null = left_kernel(&self.basis.transpose());
        if null.nrows() == 0 {
            return Self::full(self.dim);
        }
        Self::from_matrix(&left_kernel(&null.transpose()))
    }
}

impl fmt::Debug for IntegerLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lattice(dim={}, basis={:?})", self.dim, self.basis)
    }
}

/// Basis of `{u : u M = 0}` as rows; the basis is saturated.
pub fn left_kernel(m: &IntMatrix) -> IntMatrix {
    let (h, u) = hnf(m);
    let zero_rows: Vec<usize> = (0..h.nrows())
        .filter(|&i| h.row(i).iter().all(Zero::is_zero))
        .collect();
    u.select_rows(&zero_rows)
}

/// `[A : B]` for `B ⊆ A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeIndex {
    Finite(BigInt),
    Infinite,
}

fn coordinate_matrix(a: &IntegerLattice, b: &IntegerLattice) -> Result<IntMatrix> {
    if a.dim != b.dim {
        return Err(Error::DimensionMismatch(a.dim, b.dim));
    }
    let mut rows = Vec::with_capacity(b.rank());
    for i in 0..b.rank() {
        rows.push(a.coordinates(b.basis.row(i)).ok_or(Error::NotSublattice)?);
    }
    Ok(IntMatrix::from_rows(a.rank(), &rows))
}

pub fn index(a: &IntegerLattice, b: &IntegerLattice) -> Result<LatticeIndex> {
    let coords = coordinate_matrix(a, b)?;
    if b.rank() < a.rank() {
        return Ok(LatticeIndex::Infinite);
    }
    let (s, _, _) = snf(&coords);
    let mut prod = BigInt::one();
    for d in diagonal(&s) {
        prod *= d;
    }
    Ok(LatticeIndex::Finite(prod))
}

/// Elementary divisors of `A/B`; fails if the quotient is infinite.
pub fn quotient_invariants(a: &IntegerLattice, b: &IntegerLattice) -> Result<InvariantList> {
    let coords = coordinate_matrix(a, b)?;
    if b.rank() < a.rank() {
        return Err(Error::InfiniteIndex);
    }
    let (s, _, _) = snf(&coords);
    InvariantList::from_diagonal(diagonal(&s))
}

/// Elementary divisors `d_1 | d_2 | ...`, each at least 2, of a finite abelian group.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct InvariantList(Vec<BigInt>);

impl InvariantList {
    pub fn trivial() -> Self {
        InvariantList(Vec::new())
    }

    /// From a Smith diagonal: drops units, rejects zeros.
    pub fn from_diagonal(diag: Vec<BigInt>) -> Result<Self> {
        let mut out = Vec::new();
        for d in diag {
            let d = d.abs();
            if d.is_zero() {
                return Err(Error::InfiniteIndex);
            }
            if !d.is_one() {
                out.push(d);
            }
        }
        debug_assert!(out.windows(2).all(|w| w[1].is_multiple_of(&w[0])));
        Ok(InvariantList(out))
    }

    /// Invariants of `Z^k / rowspace(rel)`, `rel` having `k` columns.
    pub fn of_relations(rel: &IntMatrix) -> Result<Self> {
        if rel.nrows() < rel.ncols() {
            return Err(Error::InfiniteIndex);
        }
        Self::from_diagonal(diagonal(&snf(rel).0))
    }

    pub fn from_u64(v: &[u64]) -> Self {
        InvariantList(v.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn divisors(&self) -> &[BigInt] {
        &self.0
    }

    pub fn order(&self) -> BigInt {
        self.0.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for InvariantList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for InvariantList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn lat(dim: usize, gens: &[&[i64]]) -> IntegerLattice {
        let rows: Vec<Vec<BigInt>> = gens.iter().map(|g| v(g)).collect();
        IntegerLattice::from_generators(dim, &rows)
    }

    #[test]
    fn sum_with_zero() {
        let l = lat(2, &[&[2, 0], &[0, 3]]);
        assert_eq!(l.sum(&IntegerLattice::zero(2)).unwrap(), l);
        assert!(matches!(
            l.sum(&IntegerLattice::zero(3)),
            Err(Error::DimensionMismatch(2, 3))
        ));
    }

    #[test]
    fn membership() {
        let l = lat(2, &[&[2, 0], &[0, 3]]);
        assert!(l.contains(&v(&[2, 3])));
        assert!(!l.contains(&v(&[1, 0])));
    }

    #[test]
    fn index_and_invariants() {
        let full = IntegerLattice::full(2);
        let l = lat(2, &[&[2, 0], &[0, 3]]);
        assert_eq!(
            index(&full, &l).unwrap(),
            LatticeIndex::Finite(BigInt::from(6))
        );
        assert_eq!(
            quotient_invariants(&full, &l).unwrap(),
            InvariantList::from_u64(&[6])
        );
        let l2 = lat(2, &[&[2, 0], &[0, 2]]);
        assert_eq!(
            quotient_invariants(&full, &l2).unwrap(),
            InvariantList::from_u64(&[2, 2])
        );
        assert!(quotient_invariants(&l, &l).unwrap().is_trivial());
        let line = lat(2, &[&[2, 0]]);
        assert_eq!(index(&full, &line).unwrap(), LatticeIndex::Infinite);
        assert!(matches!(
            quotient_invariants(&full, &line),
            Err(Error::InfiniteIndex)
        ));
        assert!(matches!(index(&line, &full), Err(Error::NotSublattice)));
    }

    #[test]
    fn saturation_examples() {
        let l = lat(2, &[&[2, 0], &[0, 3]]);
        assert_eq!(l.saturation(), IntegerLattice::full(2));
        let z = IntegerLattice::zero(3);
        assert_eq!(z.saturation(), z);
        let line = lat(3, &[&[2, 4, 6]]);
        assert_eq!(line.saturation(), lat(3, &[&[1, 2, 3]]));
        assert_eq!(line.saturation().saturation(), line.saturation());
    }

    #[test]
    fn canonical_equality() {
        let a = lat(2, &[&[2, 0], &[0, 3]]);
        let b = lat(2, &[&[2, 3], &[4, 3], &[0, 6]]);
        assert_eq!(a, b);
    }

    #[test]
    fn reduce_is_canonical() {
        let l = lat(3, &[&[2, 1, 0], &[0, 3, 0]]);
        let x = v(&[5, 7, 1]);
        let y = v(&[5 - 4, 7 - 2 + 6, 1]);
        assert_eq!(l.reduce(&x), l.reduce(&y));
    }
}
