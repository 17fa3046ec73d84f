use std::collections::BTreeMap;

use tiltlab::functor::{inverse_simple, multiplicity_in_inverse, schur_functor_simple_factors};
use tiltlab::part;
use tiltlab::partition::Partition;
use tiltlab::schur::Engine;
use tiltlab::tilting::{partial_steinberg_report, tilting_socle};

fn set(labels: &[Partition]) -> BTreeMap<Partition, u64> {
    labels.iter().map(|l| (l.clone(), 1)).collect()
}

#[test]
fn inverse_images_over_gl4() {
    let e = Engine::default();
    let cases = [
        (part![12], vec![part![12]]),
        (part![10, 2], vec![part![10, 2], part![7, 2, 2, 1]]),
        (part![6, 6], vec![part![6, 6], part![3, 3, 3, 3]]),
        (part![7, 3, 2], vec![part![7, 3, 2], part![6, 2, 2, 2], part![3, 3, 3, 3]]),
    ];
    for (sigma, expect) in cases {
        let r = inverse_simple(&e, &sigma, 3, 4, 3).unwrap();
        assert_eq!(r.factor_map(), set(&expect), "{sigma}");
    }
    assert_eq!(multiplicity_in_inverse(&e, &part![4, 4, 4], &part![4, 4, 2, 2], 3, 4, 3).unwrap(), 1);
    assert_eq!(multiplicity_in_inverse(&e, &part![9, 3], &part![4, 4, 2, 2], 3, 4, 3).unwrap(), 0);
    assert_eq!(multiplicity_in_inverse(&e, &part![9, 3], &part![9, 3], 3, 4, 3).unwrap(), 1);
}

#[test]
fn schur_functor_labels() {
    let e = Engine::default();
    // neither (6,6) nor (3,3,3,3) is 3-restricted
    assert!(schur_functor_simple_factors(&e, &part![6, 6], 3, 3, Some(4)).unwrap().is_empty());
    let f = schur_functor_simple_factors(&e, &part![2, 1, 1], 3, 3, None).unwrap();
    assert_eq!(f.get(&part![2, 1, 1]), Some(&1));
    assert!(schur_functor_simple_factors(&e, &part![12], 3, 3, Some(4)).unwrap().is_empty());
}

#[test]
fn worked_socles() {
    let e = Engine::default();
    let cases = [
        (part![5], 3, set(&[part![2, 2, 1]]), true),
        (part![8, 4], 3, set(&[part![4, 4, 4]]), false),
        (part![3, 2, 1], 4, set(&[part![2, 2, 2], part![3, 1, 1, 1]]), false),
        (part![3, 2, 1], 3, set(&[part![2, 2, 2]]), false),
        (part![3, 2, 1], 5, set(&[part![2, 1, 1, 1, 1]]), true),
    ];
    for (mu, n, expect, fast) in cases {
        let r = tilting_socle(&e, &mu, n, 3).unwrap();
        assert_eq!(r.socle_map(), expect, "T({mu}) over S({n},{})", mu.size());
        assert_eq!(r.fastpath_used, fast);
    }
    assert!(tilting_socle(&e, &part![4, 4, 4], 3, 3).is_err());
}

#[test]
fn partial_steinberg() {
    let e = Engine::default();
    let r = partial_steinberg_report(&e, &part![2], 3, 1).unwrap();
    assert!(r.is_simple_tilting);
    assert_eq!(r.socle_label, part![2]);
    let r = partial_steinberg_report(&e, &part![6, 4, 2], 3, 3).unwrap();
    assert!(r.is_simple_tilting);
    assert_eq!(r.nabla_simple, Some(true));
    let r = partial_steinberg_report(&e, &part![8, 4], 3, 4).unwrap();
    assert_eq!(r.socle_label, part![4, 4, 2, 2]);
    assert!(!r.is_simple_tilting);
    assert!(partial_steinberg_report(&e, &part![8, 4], 3, 3).is_err());
    assert!(partial_steinberg_report(&e, &part![5, 4], 3, 3).is_err());
}
