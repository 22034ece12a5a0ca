//! Property tests over randomized inputs.

use proptest::prelude::*;
use starcomb::bits::{BitString, MidString};
use starcomb::{
    ell, f_apply, f_inv, flip_path, is_dyck, lambda_of, mov, necklace_of, rev, rotate, tree_of,
    verify_ordering, RootedTree,
};

/// A random middle-levels vertex for n in 2..=8.
fn mid_string() -> impl Strategy<Value = MidString> {
    (2usize..=8).prop_flat_map(|n| {
        let m = 2 * n + 1;
        (
            proptest::sample::subsequence((1..=m).collect::<Vec<_>>(), n..=n + 1),
            Just(m),
        )
            .prop_map(move |(ones, m)| {
                let mut b = BitString::zeros(m);
                for p in ones {
                    b.set(p, true);
                }
                MidString::new(b).unwrap()
            })
    })
}

/// A random Dyck word with 1..=8 edges.
fn dyck_word() -> impl Strategy<Value = Vec<u8>> {
    (1usize..=8, any::<u64>()).prop_map(|(n, seed)| {
        // random balanced word by a seeded ballot walk
        let mut s = seed | 1;
        let mut next = move || {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            s
        };
        let mut out = Vec::with_capacity(2 * n);
        let (mut ones, mut zeros, mut excess) = (n, n, 0usize);
        while ones + zeros > 0 {
            let take_one = ones > 0 && (excess == 0 || next() % 2 == 0);
            if take_one {
                out.push(1);
                ones -= 1;
                excess += 1;
            } else {
                out.push(0);
                zeros -= 1;
                excess -= 1;
            }
        }
        out
    })
}

proptest! {
    #[test]
    fn rotations_preserve_trees_and_necklaces(v in mid_string(), k in 0isize..40) {
        let r = rotate(&v, k);
        prop_assert_eq!(tree_of(&r), tree_of(&v));
        prop_assert_eq!(necklace_of(&r), necklace_of(&v));
        prop_assert_eq!(rotate(&r, -k), v);
    }

    #[test]
    fn ell_normalizes(v in mid_string()) {
        let l = ell(&v) as isize;
        let norm = rotate(&v, l);
        let bits: Vec<u8> = (1..=norm.bits().len()).map(|p| norm.get(p) as u8).collect();
        if v.is_lower() {
            prop_assert!(is_dyck(&bits[..bits.len() - 1]));
            prop_assert_eq!(bits[bits.len() - 1], 0);
        } else {
            prop_assert_eq!(bits[0], 1);
            prop_assert!(is_dyck(&bits[1..]));
        }
    }

    #[test]
    fn factor_map_round_trips(v in mid_string()) {
        let w = f_apply(&v);
        prop_assert_eq!(v.is_lower(), w.is_upper());
        prop_assert_eq!(f_inv(&w), v.clone());
        // the map commutes with rotation
        let r = rotate(&v, 3);
        prop_assert_eq!(f_apply(&r), rotate(&w, 3));
    }

    #[test]
    fn tree_rotation_round_trips(bits in dyck_word()) {
        let t = RootedTree::from_bits(bits).unwrap();
        prop_assert_eq!(t.rho().rho_inv(), t.clone());
        let lambda = lambda_of(&t);
        prop_assert_eq!(t.rho_pow(lambda as isize), t.clone());
        prop_assert_eq!(2 * t.edges() % lambda, 0);
    }

    #[test]
    fn pull_is_inverted_by_push(bits in dyck_word()) {
        let t = RootedTree::from_bits(bits).unwrap();
        if let Ok(y) = t.pull() {
            prop_assert_eq!(y.push().unwrap(), t);
        }
    }

    #[test]
    fn path_operations_preserve_validity(v in mid_string(), moves in 0usize..6) {
        // rev and mov keep flip sequences consistent with their paths
        let pp = starcomb::periodic_path(&v);
        let mut p = flip_path(&pp.flips, &v).unwrap();
        for _ in 0..moves {
            p = mov(&p);
        }
        let again = flip_path(&p.seq, &p.verts[0]).unwrap();
        prop_assert_eq!(again.shift, p.shift);
        let r = rev(&p);
        let back = flip_path(&r.seq, &r.verts[0]).unwrap();
        prop_assert_eq!(back.shift, (p.modulus() - p.shift) % p.modulus());
    }

    #[test]
    fn corrupted_orderings_are_rejected(seed in any::<u64>()) {
        // flip one random suffix bit pair in the n = 3 golden ordering
        let combos = starcomb::oracle::expand_blocks(
            "11110000",
            &[6, 2, 5, 3, 4, 6, 2, 1, 3, 5],
            1,
        );
        let mut combos = combos;
        let t = (seed % 69 + 1) as usize;
        let p = (seed / 97 % 7 + 2) as usize;
        let mut w = combos[t].clone();
        w.flip(p);
        w.flip(p % 7 + 2);
        if w != combos[t] {
            combos[t] = w;
            prop_assert!(!verify_ordering(combos, 3, 1).ok);
        }
    }
}
