use std::collections::BTreeSet;

use qformlab::etasearch::{bruteforce_box, census_all};
use qformlab::spaces::build_basis;
use qformlab::{DirichletChar, EtaQuotient};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn in_box(f: &EtaQuotient, lo: &[i64; 8], hi: &[i64; 8]) -> bool {
    f.exponent_list().iter().zip(lo.iter().zip(hi)).all(|(r, (a, b))| a <= r && r <= b)
}

#[test]
fn census_matches_box_enumeration() {
    let groups = census_all();
    let counts: Vec<usize> = DirichletChar::NEBENTYPES.iter().map(|c| groups[c].len()).collect();
    assert_eq!(counts, vec![6332, 6288, 2424, 2424]);

    let all: BTreeSet<EtaQuotient> = groups.values().flatten().cloned().collect();
    for chi in DirichletChar::NEBENTYPES {
        let members = &groups[&chi];
        assert!(members.windows(2).all(|w| w[0] < w[1]), "sorted and deduplicated");
        for f in build_basis(chi).unwrap().cusp_part {
            assert!(members.binary_search(&f).is_ok(), "{f} missing for {chi}");
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(24);
    let pool: Vec<&EtaQuotient> = all.iter().collect();
    for round in 0..6 {
        let centre = pool[rng.random_range(0..pool.len())].exponent_list();
        let radius = if round < 2 { 2 } else { 1 };
        let lo: [i64; 8] = std::array::from_fn(|i| centre[i] - radius - if radius == 1 { rng.random_range(0..=1) } else { 0 });
        let hi: [i64; 8] = std::array::from_fn(|i| centre[i] + radius);
        let brute: BTreeSet<EtaQuotient> = bruteforce_box(lo, hi).into_iter().collect();
        let walked: BTreeSet<EtaQuotient> = all.iter().filter(|f| in_box(f, &lo, &hi)).cloned().collect();
        assert!(!brute.is_empty());
        assert_eq!(brute, walked, "box {lo:?}..{hi:?}");
    }
}
