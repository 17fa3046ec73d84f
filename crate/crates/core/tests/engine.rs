use std::collections::BTreeMap;

use tiltlab::character::{weyl_dim, Character};
use tiltlab::part;
use tiltlab::partition::{enumerate_partitions, Partition};
use tiltlab::schur::decomp::{decomposition_row, simple_characters, socle};
use tiltlab::schur::module::OpSet;
use tiltlab::schur::{decomposition_numbers, Engine};

fn digits_dim(mut m: u32, p: u32) -> u64 {
    let mut d = 1;
    while m > 0 {
        d *= (m % p + 1) as u64;
        m /= p;
    }
    d
}

#[test]
fn identity_when_p_exceeds_degree() {
    let e = Engine::default();
    for (n, d, p) in [(3, 4, 5), (2, 4, 7), (4, 3, 5)] {
        let t = decomposition_numbers(&e, n, d, p).unwrap();
        for row in &t.rows {
            assert_eq!(row.factors.len(), 1, "{}", row.lambda);
        }
    }
}

#[test]
fn sl2_simple_dimensions() {
    let e = Engine::default();
    for p in [2u32, 3, 5] {
        for d in 1..=12u32 {
            for lam in enumerate_partitions(2, d) {
                let s = e.simple(&lam, 2, p).unwrap();
                let m = lam.part(0) - lam.part(1);
                assert_eq!(s.dim() as u64, digits_dim(m, p), "p={p} {lam}");
            }
        }
    }
}

#[test]
fn gl3_degree_three() {
    let e = Engine::default();
    let ch = e.simple_character(&part![2, 1], 3, 3).unwrap();
    assert_eq!(Character::from_dominant(3, &ch).dim(), 7);
    let ch = e.simple_character(&part![3], 3, 3).unwrap();
    assert_eq!(Character::from_dominant(3, &ch).dim(), 3);
    let row = decomposition_row(&e, &part![3], 3, 3).unwrap();
    assert_eq!(row, BTreeMap::from([(part![3], 1), (part![2, 1], 1)]));
}

#[test]
fn prime_powers_match_all_divided_powers() {
    let a = Engine::default();
    let b = Engine::default().with_opset(OpSet::All);
    for (n, d, p) in [(3usize, 6u32, 2u32), (3, 6, 3), (2, 9, 3)] {
        for lam in enumerate_partitions(n, d) {
            assert_eq!(a.simple_character(&lam, n, p).unwrap(), b.simple_character(&lam, n, p).unwrap(), "{lam}");
        }
    }
}

#[test]
fn table_consistency() {
    let e = Engine::default();
    for (n, d, p) in [(3usize, 6u32, 2u32), (3, 6, 3), (4, 5, 2)] {
        let t = decomposition_numbers(&e, n, d, p).unwrap();
        t.check(&simple_characters(&e, n, d, p).unwrap()).unwrap();
    }
}

#[test]
fn gram_matrices_are_symmetric() {
    let e = Engine::default();
    for lam in [part![3, 2, 1], part![4, 2], part![5, 1]] {
        let s = e.simple(&lam, 3, 3).unwrap();
        for (w, (ids, g)) in &s.gram {
            assert_eq!(g, &g.transpose(), "{lam} at {w:?}");
            let k = s.weights.iter().position(|x| x == w).unwrap();
            assert_eq!(g.rank(), s.simple_dims[k]);
            assert!(ids.len() >= g.rank());
        }
    }
}

#[test]
fn socle_of_costandard_is_simple() {
    let e = Engine::default();
    for (n, d, p) in [(3usize, 6u32, 3u32), (3, 5, 2)] {
        for lam in enumerate_partitions(n, d) {
            let m = e.nabla(&lam, n, p).unwrap();
            assert_eq!(socle(&e, &m, None).unwrap(), BTreeMap::from([(lam.clone(), 1)]), "{lam}");
        }
    }
}

#[test]
fn row_8_4() {
    let e = Engine::default();
    let row = decomposition_row(&e, &part![8, 4], 4, 3).unwrap();
    let expect: BTreeMap<Partition, u64> = [
        (part![8, 4], 1),
        (part![7, 4, 1], 1),
        (part![6, 6], 1),
        (part![5, 4, 3], 1),
        (part![8, 2, 2], 1),
        (part![5, 5, 2], 1),
        (part![6, 3, 3], 1),
        (part![4, 4, 4], 2),
        (part![3, 3, 3, 3], 2),
        (part![6, 5, 1], 1),
        (part![7, 3, 2], 1),
        (part![6, 2, 2, 2], 1),
        (part![4, 4, 2, 2], 1),
    ]
    .into();
    assert_eq!(row, expect);
    assert!(weyl_dim(&part![8, 4], 4) > 0);
}

#[test]
fn form_adjointness() {
    use tiltlab::schur::simple::check_form_adjointness;
    let e = Engine::default();
    for (n, d, p) in [(3usize, 6u32, 3u32), (3, 5, 2), (4, 4, 2)] {
        for lam in enumerate_partitions(n, d) {
            check_form_adjointness(&e.nabla(&lam, n, p).unwrap()).unwrap();
        }
    }
}
