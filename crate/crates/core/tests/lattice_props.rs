use num_bigint::BigInt;
use pcmult::intlattice::*;
use pcmult::verify::{all_passed, lattice_kernel};
use proptest::prelude::*;

fn matrix(max_dim: usize, max_entry: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(move |(r, c)| {
        prop::collection::vec(prop::collection::vec(-max_entry..=max_entry, c), r).prop_map(
            move |rows| {
                let rows: Vec<Vec<BigInt>> = rows
                    .into_iter()
                    .map(|r| r.into_iter().map(BigInt::from).collect())
                    .collect();
                IntMatrix::from_rows(c, &rows)
            },
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn smith_form_and_lattice_kernel(m in matrix(20, 100)) {
        let counts = lattice_kernel(&m);
        prop_assert!(all_passed(&counts), "{:?}", counts);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn hermite_form_identity(m in matrix(8, 30)) {
        let (h, u) = hnf(&m);
        prop_assert_eq!(u.mul(&m), h);
        prop_assert_eq!(det(&u).magnitude().clone(), 1u32.into());
    }

    #[test]
    fn canonical_form_ignores_generating_set(m in matrix(6, 20), k in 0usize..6, f in -3i64..=3) {
        let rows = m.rows_vec();
        let a = IntegerLattice::from_generators(m.ncols(), &rows);
        // add a multiple of one row to another and append a redundant combination
        let mut other = rows.clone();
        if other.len() > 1 {
            let i = k % other.len();
            let j = (i + 1) % other.len();
            let add: Vec<BigInt> = other[j].iter().map(|x| x * f).collect();
            for (x, y) in other[i].iter_mut().zip(add) {
                *x += y;
            }
        }
        let extra: Vec<BigInt> = rows[0].iter().map(|x| x * 2).collect();
        other.push(extra);
        other.reverse();
        let b = IntegerLattice::from_generators(m.ncols(), &other);
        prop_assert_eq!(a, b);
    }

    #[test]
    fn membership_and_sum(m in matrix(6, 20), coeffs in prop::collection::vec(-5i64..=5, 6)) {
        let rows = m.rows_vec();
        let l = IntegerLattice::from_generators(m.ncols(), &rows);
        let mut v = vec![BigInt::from(0); m.ncols()];
        for (r, c) in rows.iter().zip(&coeffs) {
            for (x, y) in v.iter_mut().zip(r) {
                *x += y * c;
            }
        }
        prop_assert!(l.contains(&v));
        let zero = IntegerLattice::zero(m.ncols());
        prop_assert_eq!(l.sum(&zero).unwrap(), l.clone());
        let s = l.saturation();
        prop_assert!(s.contains_lattice(&l));
    }
}
