use std::collections::BTreeMap;

use tiltlab::character::Character;
use tiltlab::gf::FpMatrix;
use tiltlab::part;
use tiltlab::partition::enumerate_partitions;
use tiltlab::schur::decomp::decomposition_row;
use tiltlab::schur::Engine;
use tiltlab::Partition;

fn simple(e: &Engine, l: &Partition, n: usize, p: u32) -> Character {
    if l.is_empty() {
        let mut c = Character::zero(n);
        c.add_scaled(&Character::weyl(l, n).unwrap(), 1);
        return c;
    }
    Character::from_dominant(n, &e.simple_character(l, n, p).unwrap())
}

fn split_restricted(l: &Partition, n: usize, p: u32) -> (Partition, Partition) {
    let w = l.padded(n);
    let mut low = vec![0; n];
    low[n - 1] = w[n - 1] % p;
    for i in (0..n - 1).rev() {
        low[i] = low[i + 1] + (w[i] - w[i + 1]) % p;
    }
    let high: Vec<u32> = w.iter().zip(&low).map(|(a, b)| (a - b) / p).collect();
    (Partition::from_composition(&low), Partition::from_composition(&high))
}

#[test]
fn steinberg_tensor_product_gl4_p3() {
    let e = Engine::default();
    let (n, p) = (4, 3);
    for d in [9, 12] {
        for l in enumerate_partitions(n, d) {
            let (low, high) = split_restricted(&l, n, p);
            if high.is_empty() {
                continue;
            }
            let expected = simple(&e, &low, n, p).mul(&simple(&e, &high, n, p).frobenius(p));
            assert_eq!(simple(&e, &l, n, p), expected, "L{l} = L{low} ⊗ L{high}^F");
        }
    }
}

// Every partition of 12 dominated by (9,1,1,1) has four parts, so a vector of that
// weight which is maximal modulo the socle forces G^4_3(L(9,2,1)) past the socle.
#[test]
fn socle_of_9_2_1_is_not_the_whole_inverse_image() {
    let e = Engine::default();
    let nab = e.nabla(&part![9, 2, 1], 4, 3).unwrap();
    let (top, h) = nab.highest().unwrap();
    let s = nab.generated_submodule(&[(top, h.to_vec())]);
    let w = nab.weight_index(&[9, 1, 1, 1]).unwrap();
    let mut cons = FpMatrix::zeros(3, 0, nab.dim_at(w));
    for &op in nab.ops().iter().filter(|o| o.raise) {
        if let Some((t, b)) = nab.op_matrix(w, op) {
            cons = cons.vstack(&s.spaces[t].quotient_projection().mul(&b));
        }
    }
    let k = cons.kernel();
    let fresh: Vec<_> = (0..k.rows()).filter(|&r| !s.spaces[w].contains(k.row(r))).map(|r| (w, k.row(r).to_vec())).collect();
    assert!(!fresh.is_empty());
    let mut m = s.clone();
    nab.close(&mut m, &fresh);
    assert!(m.dim() > s.dim());
    for l in enumerate_partitions(4, 12) {
        if part![9, 1, 1, 1].dominates(&l).unwrap() {
            assert_eq!(l.len(), 4);
        }
    }
}

#[test]
fn row_7_4_1_dimension_count() {
    let e = Engine::default();
    let row = decomposition_row(&e, &part![7, 4, 1], 4, 3).unwrap();
    let total = |r: &BTreeMap<Partition, u64>| r.iter().map(|(l, k)| k * simple(&e, l, 4, 3).dim()).sum::<u64>();
    let weyl = Character::weyl(&part![7, 4, 1], 4).unwrap();
    assert_eq!(total(&row), weyl.dim());
    assert_eq!(row[&part![4, 4, 4]], 2);
    let mut once = row.clone();
    once.insert(part![4, 4, 4], 1);
    assert_ne!(total(&once), weyl.dim());
    let at_444: u64 = row.iter().map(|(l, k)| k * simple(&e, l, 4, 3).get(&[4, 4, 4, 0])).sum();
    assert_eq!(at_444, weyl.get(&[4, 4, 4, 0]));
}
