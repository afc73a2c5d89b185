use acss::ctm::symmetry_class;
use acss::turmite::{enumerate_counts, machine_count};
use acss::CtmTable;

fn build(k: u32, budget: u32) -> CtmTable {
    let counts = enumerate_counts(k, budget, 0..machine_count(k).unwrap()).unwrap();
    CtmTable::build(counts, k, budget).unwrap()
}

#[test]
fn two_state_table_survives_save_and_load() {
    let dir = tempfile::tempdir().unwrap();
    let table = build(2, 500);
    for t in [table.clone(), table.symmetrize()] {
        let path = dir.path().join("t.ctm");
        t.save(&path).unwrap();
        let back = CtmTable::load(&path).unwrap();
        assert_eq!(back, t);
        for (m, _, v) in t.entries() {
            assert_eq!(back.lookup(m).to_bits(), v.to_bits());
        }
        // the text form is canonical
        assert_eq!(back.to_text(), t.to_text());
    }
}

#[test]
fn sharded_build_matches_full_build() {
    let total = machine_count(2).unwrap();
    let cut = total / 3;
    let a = enumerate_counts(2, 100, 0..cut).unwrap();
    let b = enumerate_counts(2, 100, cut..total).unwrap();
    let merged = CtmTable::build(a.merge(b), 2, 100).unwrap();
    assert_eq!(merged, build(2, 100));
}

#[test]
fn symmetrized_lookup_is_constant_on_classes() {
    let sym = build(2, 500).symmetrize();
    assert!(sym.meta().symmetrized);
    for (m, _, v) in sym.entries() {
        for image in symmetry_class(m) {
            assert_eq!(sym.lookup(&image).to_bits(), v.to_bits());
        }
    }
}
