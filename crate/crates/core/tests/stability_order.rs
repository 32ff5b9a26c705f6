use greenseq_core::green::{validate_mgs, ValidationMode};
use greenseq_core::quiver::Quiver;
use greenseq_core::roots::positive_roots;
use greenseq_core::stability::{induced_mgs, is_discrete, phase_gt, rational, sample_charge, Charge};
use greenseq_core::Error;
use proptest::prelude::*;

fn charge() -> impl Strategy<Value = Charge> {
    (-30i64..=30, 1i64..=12, 0i64..=30, 1i64..=12)
        .prop_filter_map("outside the closed half-plane", |(a, d, b, e)| {
            let c = Charge::new(rational(a, d), rational(b, e));
            (c.in_half_plane() && !c.is_zero()).then_some(c)
        })
}

fn proportional(z: &Charge, w: &Charge) -> bool {
    z.re.clone() * w.im.clone() == z.im.clone() * w.re.clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn phase_is_a_strict_weak_order(a in charge(), b in charge(), c in charge()) {
        prop_assert!(!phase_gt(&a, &a).unwrap());
        let (ab, ba) = (phase_gt(&a, &b).unwrap(), phase_gt(&b, &a).unwrap());
        prop_assert!(!(ab && ba));
        prop_assert_eq!(!ab && !ba, proportional(&a, &b));
        if ab && phase_gt(&b, &c).unwrap() {
            prop_assert!(phase_gt(&a, &c).unwrap());
        }
    }
}

#[test]
fn induced_sequences_are_green() {
    for name in ["A2", "A3", "D4"] {
        let q = Quiver::builtin(name).unwrap();
        let rs = positive_roots(&q).unwrap();
        let mut discrete = 0;
        for seed in 0..1000 {
            let z = sample_charge(&q, seed, 5);
            match induced_mgs(&rs, &z) {
                Ok(s) => {
                    assert!(is_discrete(&z, &rs).unwrap());
                    discrete += 1;
                    let report = validate_mgs(&rs, &s.roots, ValidationMode::Maximal).unwrap();
                    assert!(report.valid, "{name} seed {seed}: {report:?}");
                    let mut sorted = s.roots.clone();
                    sorted.sort();
                    let mut all = rs.roots().to_vec();
                    all.sort();
                    assert_eq!(sorted, all);
                    let first = z.charge_of(&s.roots[0]).unwrap();
                    for r in &s.roots[1..] {
                        assert!(phase_gt(&first, &z.charge_of(r).unwrap()).unwrap());
                    }
                }
                Err(Error::NotDiscrete(a, b)) => {
                    assert!(!is_discrete(&z, &rs).unwrap());
                    let (za, zb) = (z.charge_of(&a).unwrap(), z.charge_of(&b).unwrap());
                    assert!(proportional(&za, &zb));
                }
                Err(e) => panic!("{name} seed {seed}: {e}"),
            }
        }
        assert!(discrete > 500, "{name}: only {discrete} discrete samples");
    }
}
