use greenseq_core::quiver::Quiver;
use greenseq_core::torsion::{all_torsion_classes, check_opposite, decompose_torsion_class, exchange_quiver, hasse_of_inclusion, TorsionClass};
use greenseq_core::weyl::{count_maximal_chains, RootSet, WeylGroup};

fn group(name: &str) -> WeylGroup {
    WeylGroup::generate(&Quiver::builtin(name).unwrap()).unwrap()
}

#[test]
fn class_counts_equal_group_order() {
    for (name, order) in [("A2", 6), ("A3", 24), ("A4", 120), ("D4", 192)] {
        let g = group(name);
        assert_eq!(all_torsion_classes(&g).len(), order, "{name}");
    }
}

#[test]
fn inclusion_hasse_properties() {
    for name in ["A2", "A3", "A4", "D4"] {
        let g = group(name);
        let rs = g.roots();
        let classes = all_torsion_classes(&g);
        let hasse = hasse_of_inclusion(&classes, rs).unwrap();
        assert_eq!(hasse.arcs.len(), g.cover_count(), "{name}");
        for arc in &hasse.arcs {
            let (big, small) = (&hasse.vertices[arc.from], &hasse.vertices[arc.to]);
            let diff = big.labels.difference(&small.labels);
            assert_eq!(diff.len(), 1);
            assert_eq!(rs.get(diff[0]), &arc.label);
        }
        let exchange = exchange_quiver(&g);
        let report = check_opposite(&hasse, &exchange, rs).unwrap();
        assert!(report.coincide, "{name}: {report:?}");

        let width = rs.len();
        let top = hasse.position(&TorsionClass { labels: RootSet::full(width) }).unwrap();
        let bottom = hasse.position(&TorsionClass { labels: RootSet::empty(width) }).unwrap();
        assert_eq!(hasse.count_paths(top, bottom), count_maximal_chains(&g).0, "{name}");
        let n = g.quiver().vertex_count();
        assert_eq!(hasse.out_degree(top), n, "{name}");
        assert_eq!(hasse.in_degree(bottom), n, "{name}");
        for arc in hasse.arcs.iter().filter(|a| a.to == bottom) {
            assert_eq!(hasse.vertices[arc.from].len(), 1);
            assert_eq!(arc.label.height(), 1);
        }
    }
}

#[test]
fn tampered_graph_is_not_opposite() {
    let g = group("A3");
    let rs = g.roots();
    let mut hasse = hasse_of_inclusion(&all_torsion_classes(&g), rs).unwrap();
    hasse.arcs.pop();
    let report = check_opposite(&hasse, &exchange_quiver(&g), rs).unwrap();
    assert!(!report.coincide);
    assert_eq!(report.missing_in_hasse.len(), 1);
    assert!(report.extra_in_hasse.is_empty());
}

#[test]
fn decompositions_rebuild_classes() {
    for name in ["A3", "D4"] {
        let g = group(name);
        let rs = g.roots();
        for t in all_torsion_classes(&g) {
            let steps = decompose_torsion_class(&g, &t).unwrap();
            assert_eq!(steps.len(), t.len());
            let mut rebuilt = RootSet::empty(rs.len());
            for r in &steps {
                let k = rs.position(r).unwrap();
                assert!(!rebuilt.contains(k));
                rebuilt.insert(k);
            }
            assert_eq!(rebuilt, t.labels);
        }
    }
}
