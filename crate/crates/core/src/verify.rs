//! Randomized property suites shared by the test targets and `verify`.

use num_bigint::BigInt;
use num_traits::Signed;
use rand::Rng;

use crate::intlattice::{
    det, index, quotient_invariants, snf, IntMatrix, IntegerLattice, LatticeIndex,
};
use crate::pcgroup::{PcGroup, Word};
use crate::wedgecover::ExtSquareData;

/// Counts for one property.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PropertyCount {
    pub name: &'static str,
    pub checked: usize,
    pub failures: usize,
}

impl PropertyCount {
    fn new(name: &'static str) -> Self {
        PropertyCount {
            name,
            ..Default::default()
        }
    }

    fn record(&mut self, ok: bool) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
        }
    }
}

pub fn all_passed(counts: &[PropertyCount]) -> bool {
    counts.iter().all(|c| c.failures == 0)
}

/// Associativity, inverses, identity, power relations and idempotent
/// collection, on random samples.
pub fn group_laws<R: Rng>(g: &PcGroup, samples: usize, rng: &mut R) -> Vec<PropertyCount> {
    let p = g.presentation();
    let mut assoc = PropertyCount::new("associativity");
    let mut inverse = PropertyCount::new("inverse");
    let mut identity = PropertyCount::new("identity");
    let mut powers = PropertyCount::new("generator powers");
    let mut collect = PropertyCount::new("collection idempotent");
    for _ in 0..samples {
        let (a, b, c) = (
            g.random_element(rng),
            g.random_element(rng),
            g.random_element(rng),
        );
        assoc.record(g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c)));
        inverse.record(g.mul(a, g.inv(a)) == 0 && g.mul(g.inv(a), a) == 0);
        identity.record(g.mul(0, a) == a && g.mul(a, 0) == a);

        if p.n() > 0 {
            let i = rng.gen_range(0..p.n());
            let k = rng.gen_range(-3i64..=3);
            let r = p.orders()[i] as i64;
            let w = p.normal_word_element(p.power_word(i));
            powers.record(p.power(&p.generator(i), r * k) == p.power(&w, k));
        }

        let mut w = Word::new();
        for _ in 0..rng.gen_range(0..8) {
            if p.n() == 0 {
                break;
            }
            w.push(rng.gen_range(0..p.n()), rng.gen_range(-6i64..=6));
        }
        let once = p.collect(&w);
        collect.record(p.collect(&once.to_word()) == once);
    }
    vec![assoc, inverse, identity, powers, collect]
}

/// The wedge identities, each on `samples` random draws.
pub fn wedge_identities<R: Rng>(
    e: &ExtSquareData,
    samples: usize,
    rng: &mut R,
) -> Vec<PropertyCount> {
    let g = e.group();
    let p = g.presentation();
    let cover = e.cover();
    let m = cover.m();
    let centralizers: Vec<Vec<usize>> =
        (0..g.order()).map(|x| g.centralizer(x).members()).collect();
    let pick = |rng: &mut R, set: &[usize]| set[rng.gen_range(0..set.len())];
    let sat = e.saturated_lattice();
    let sum = |a: &[BigInt], b: &[BigInt]| -> Vec<BigInt> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    };

    let mut lift = PropertyCount::new("lift independence");
    let mut kappa = PropertyCount::new("kappa compatibility");
    let mut landing = PropertyCount::new("commuting pairs land in sat(C)");
    let mut antisym = PropertyCount::new("antisymmetry mod C");
    let mut conj = PropertyCount::new("conjugation invariance mod C");
    let mut hom = PropertyCount::new("centralizer homomorphism mod C");
    for _ in 0..samples {
        let x = g.random_element(rng);
        let y = g.random_element(rng);
        let (xe, ye) = (g.element(x), g.element(y));
        let w = e.wedge(&xe, &ye);

        let offs = |rng: &mut R| -> Vec<BigInt> {
            (0..m)
                .map(|_| BigInt::from(rng.gen_range(-50i64..=50)))
                .collect()
        };
        let xs = cover.lift_with(&xe, offs(rng));
        let yt = cover.lift_with(&ye, offs(rng));
        lift.record(cover.commutator(&xs, &yt) == w);
        kappa.record(w.gpart == p.commutator(&xe, &ye));

        // commuting pair
        let y = pick(rng, &centralizers[x]);
        let ye = g.element(y);
        let w = e.wedge(&xe, &ye);
        landing.record(w.gpart.is_identity() && sat.contains(&w.tails));
        let wr = e.wedge(&ye, &xe);
        antisym.record(e.consistency_lattice().contains(&sum(&w.tails, &wr.tails)));
        let z = g.random_element(rng);
        let wz = e.wedge(&g.element(g.conj(z, x)), &g.element(g.conj(z, y)));
        conj.record(e.congruent(&wz.tails, &w.tails));
        let y2 = pick(rng, &centralizers[x]);
        let w2 = e.wedge(&xe, &g.element(y2));
        let w12 = e.wedge(&xe, &g.element(g.mul(y, y2)));
        hom.record(e.congruent(&w12.tails, &sum(&w.tails, &w2.tails)));
    }
    vec![lift, kappa, landing, antisym, conj, hom]
}

/// A random matrix with `1..=max_dim` rows and columns and entries in
/// `-max_entry..=max_entry`.
pub fn random_matrix<R: Rng>(rng: &mut R, max_dim: usize, max_entry: i64) -> IntMatrix {
    let r = rng.gen_range(1..=max_dim);
    let c = rng.gen_range(1..=max_dim);
    let rows: Vec<Vec<BigInt>> = (0..r)
        .map(|_| {
            (0..c)
                .map(|_| BigInt::from(rng.gen_range(-max_entry..=max_entry)))
                .collect()
        })
        .collect();
    IntMatrix::from_rows(c, &rows)
}

/// Smith form identity and unimodularity, the divisibility chain,
/// saturation idempotence and monotonicity, and index against invariants.
pub fn lattice_kernel(m: &IntMatrix) -> Vec<PropertyCount> {
    let mut identity = PropertyCount::new("U M V = S");
    let mut unimodular = PropertyCount::new("U, V unimodular");
    let mut chain = PropertyCount::new("divisibility chain");
    let mut saturation = PropertyCount::new("saturation idempotent and monotone");
    let mut idx = PropertyCount::new("index = product of invariants");

    let (s, u, v) = snf(m);
    identity.record(u.mul(m).mul(&v) == s);
    unimodular.record(det(&u).abs() == BigInt::from(1) && det(&v).abs() == BigInt::from(1));
    let k = s.nrows().min(s.ncols());
    let diag: Vec<BigInt> = (0..k).map(|i| s[(i, i)].clone()).collect();
    let off_diagonal_zero =
        (0..s.nrows()).all(|i| (0..s.ncols()).all(|j| i == j || s[(i, j)] == BigInt::from(0)));
    let divides = diag.windows(2).all(|w| {
        let (a, b) = (&w[0], &w[1]);
        if a == &BigInt::from(0) {
            b == &BigInt::from(0)
        } else {
            b % a == BigInt::from(0)
        }
    });
    chain.record(off_diagonal_zero && divides && diag.iter().all(|d| !d.is_negative()));

    let l = IntegerLattice::from_matrix(m);
    let sat = l.saturation();
    saturation.record(sat.contains_lattice(&l) && sat.saturation() == sat);

    let ok = match (index(&sat, &l), quotient_invariants(&sat, &l)) {
        (Ok(LatticeIndex::Finite(i)), Ok(inv)) => i == inv.order(),
        _ => false,
    };
    idx.record(ok);
    vec![identity, unimodular, chain, saturation, idx]
}

/// Merges per-sample counts by property name.
pub fn merge(into: &mut Vec<PropertyCount>, more: Vec<PropertyCount>) {
    for c in more {
        match into.iter_mut().find(|x| x.name == c.name) {
            Some(x) => {
                x.checked += c.checked;
                x.failures += c.failures;
            }
            None => into.push(c),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::pcgroup::DEFAULT_ELEMENT_BOUND;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn suites_pass_on_d4() {
        let g = PcGroup::new(
            catalog::get("D4").unwrap().presentation(),
            DEFAULT_ELEMENT_BOUND,
        )
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(all_passed(&group_laws(&g, 100, &mut rng)));
        let e = ExtSquareData::new(&g).unwrap();
        let counts = wedge_identities(&e, 100, &mut rng);
        assert!(all_passed(&counts));
        assert!(counts.iter().all(|c| c.checked == 100));
    }

    #[test]
    fn lattice_suite_on_fixed_matrices() {
        let mut all = Vec::new();
        merge(
            &mut all,
            lattice_kernel(&IntMatrix::from_i64(&[&[2, 4], &[6, 8]])),
        );
        merge(&mut all, lattice_kernel(&IntMatrix::from_i64(&[&[0]])));
        merge(
            &mut all,
            lattice_kernel(&IntMatrix::from_i64(&[&[1, 0], &[0, 0]])),
        );
        assert!(all_passed(&all));
        assert_eq!(all[0].checked, 3);
    }
}
