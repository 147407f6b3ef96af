use pcmult::catalog;
use pcmult::pcgroup::*;
use pcmult::verify::{all_passed, group_laws, wedge_identities};
use pcmult::wedgecover::ExtSquareData;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn wedge_identities_on_every_entry() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for e in catalog::all() {
        let g = PcGroup::new(e.presentation(), DEFAULT_ELEMENT_BOUND).unwrap();
        assert!(all_passed(&group_laws(&g, 200, &mut rng)), "{}", e.name);
        let x = ExtSquareData::new(&g).unwrap();
        let counts = wedge_identities(&x, 1000, &mut rng);
        assert!(all_passed(&counts), "{}: {:?}", e.name, counts);
        assert!(counts.iter().all(|c| c.checked == 1000));
    }
}
