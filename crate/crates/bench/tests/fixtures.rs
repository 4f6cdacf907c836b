use qformlab::etaq::ligozat_check;
use qformlab_bench::{cusp_quotients, sample_vectors};

#[test]
fn cusp_quotients_are_cusp_forms() {
    let quotients = cusp_quotients();
    assert_eq!(quotients.len(), 4 + 4 + 6 + 6);
    assert!(quotients.iter().all(|f| ligozat_check(f).is_cusp));
}

#[test]
fn sample_covers_every_character() {
    let mut chars: Vec<_> = sample_vectors().into_iter().map(qformlab::quadforms::classify).collect();
    chars.sort();
    chars.dedup();
    assert_eq!(chars.len(), 4);
}
