use greenseq_core::quiver::{Quiver, QuiverClass};
use greenseq_core::weyl::{count_maximal_chains, enumerate_maximal_chains, staircase_syt_count, WeylGroup};
use std::collections::HashSet;

fn group(name: &str) -> WeylGroup {
    WeylGroup::generate(&Quiver::builtin(name).unwrap()).unwrap()
}

fn check_covers(g: &WeylGroup, sources: impl Iterator<Item = usize>) {
    for k in sources {
        let w = g.element(k);
        for c in g.covers(k) {
            let gamma = c.root;
            assert!(gamma < g.roots().len());
            assert_eq!(w.image_of_simple(c.simple), *g.roots().get(gamma));
            assert!(!w.inversions().contains(gamma));
            let mut expected = w.inversions().clone();
            expected.insert(gamma);
            assert_eq!(g.element(c.target).inversions(), &expected);
            assert_eq!(g.element(c.target).length(), w.length() + 1);
        }
    }
}

#[test]
fn covers_add_one_inversion() {
    for name in ["A2", "A3", "A4", "D4"] {
        let g = group(name);
        check_covers(&g, 0..g.len());
    }
    for name in ["A5", "A6"] {
        let g = group(name);
        check_covers(&g, (0..g.len()).step_by(37));
    }
}

#[test]
fn inversion_sets_are_injective() {
    for name in ["A2", "A3", "A4", "D4", "A5"] {
        let g = group(name);
        let sets: HashSet<_> = g.elements().iter().map(|e| e.inversions().clone()).collect();
        assert_eq!(sets.len(), g.len(), "{name}");
    }
}

#[test]
fn longest_length_is_root_count() {
    for name in ["A1", "A2", "A3", "A4", "A5", "A6", "D4", "D5", "D6", "E6"] {
        let g = group(name);
        assert_eq!(g.longest_length(), g.roots().len(), "{name}");
    }
}

#[test]
fn group_orders() {
    let orders = [("A2", 6), ("A3", 24), ("A4", 120), ("D4", 192), ("A5", 720), ("D5", 1920)];
    for (name, order) in orders {
        assert_eq!(group(name).len(), order, "{name}");
        let QuiverClass::Dynkin(t) = Quiver::builtin(name).unwrap().classify() else { panic!() };
        assert_eq!(t.weyl_order(), (order as u64).into(), "{name}");
    }
    let two_a1 = Quiver::parse("vertices 2").unwrap();
    let QuiverClass::Dynkin(t) = two_a1.classify() else { panic!() };
    assert_eq!(t.weyl_order(), 4u64.into());
    assert_eq!(WeylGroup::generate(&two_a1).unwrap().len(), 4);
}

#[test]
fn chain_count_matches_hook_length() {
    for n in 2..=6 {
        let g = group(&format!("A{n}"));
        assert_eq!(count_maximal_chains(&g), staircase_syt_count(n), "A{n}");
    }
}

#[test]
fn enumeration_matches_count() {
    for name in ["A2", "A3", "A4", "D4"] {
        let g = group(name);
        let mut seen = HashSet::new();
        let mut stream = enumerate_maximal_chains(&g, None);
        for chain in stream.by_ref() {
            assert_eq!(chain.len(), g.longest_length());
            assert!(seen.insert(chain.word()));
        }
        assert!(!stream.truncated());
        assert_eq!(count_maximal_chains(&g).0, (seen.len() as u64).into(), "{name}");
    }
}

#[test]
fn reduced_words_reach_their_element() {
    let g = group("D4");
    for k in (0..g.len()).step_by(7) {
        let word = g.reduced_word(k);
        assert_eq!(word.len(), g.element(k).length());
        let mut cur = g.identity();
        for &i in &word {
            cur = g.step(cur, i).expect("reduced word steps up").target;
        }
        assert_eq!(cur, k);
    }
}
