//! The bijection f on the middle levels, its first return time kappa to a
//! necklace, the periodic paths P(x), and the induced cycle factor of the
//! necklace graph (one cycle per plane tree).

use std::collections::HashSet;

use crate::bits::{ell, necklace_of, pos_mod, tree_of, tree_of_with_ell, MidString, Necklace};
use crate::error::Error;
use crate::flipseq::FlipSequence;
use crate::trees::{canon_plane, lambda_of, match_close, rho_inv_slice, RootedTree};

/// The position flipped by f at `v`.
pub fn f_position(v: &MidString) -> usize {
    f_position_with_ell(v, ell(v))
}

pub(crate) fn f_position_with_ell(v: &MidString, l: usize) -> usize {
    let m = v.modulus();
    let t = tree_of_with_ell(v, l);
    if v.is_lower() {
        // sigma^l(v) = 1u0w 0; flip the 0 closing u
        pos_mod(l as i64 + match_close(&t) as i64 + 1, m)
    } else {
        // sigma^l(v) = 1 t; flip the leading 1
        pos_mod(l as i64 + 1, m)
    }
}

/// The position flipped by the inverse of f at `v`.
pub fn f_inv_position(v: &MidString) -> usize {
    f_inv_position_with_ell(v, ell(v))
}

pub(crate) fn f_inv_position_with_ell(v: &MidString, l: usize) -> usize {
    let m = v.modulus();
    if v.is_upper() {
        // v = f(x) with t(x) = rho^(-1)(t(v)); undo the u -> u1w0 flip
        let t = tree_of_with_ell(v, l);
        let prev = rho_inv_slice(&t);
        pos_mod(l as i64 + match_close(&prev) as i64 + 1, m)
    } else {
        // v = f(y) with ell(y) = ell(v) - 1; undo the leading-1 flip
        pos_mod(l as i64, m)
    }
}

/// Applies f.
pub fn f_apply(v: &MidString) -> MidString {
    v.flipped(f_position(v))
}

/// Applies the inverse of f.
pub fn f_inv(v: &MidString) -> MidString {
    v.flipped(f_inv_position(v))
}

/// First return time of the f-orbit of `v` to the necklace of `v`; equals
/// twice the plane-tree period of t(v).
pub fn kappa(v: &MidString) -> usize {
    2 * lambda_of(&RootedTree::from_bits(tree_of(v)).expect("tree of a vertex"))
}

/// A periodic path: kappa(start) vertices of the f-orbit, together with
/// the flip sequence closing it into the starting necklace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicPath {
    pub start: MidString,
    pub vertices: Vec<MidString>,
    pub flips: FlipSequence,
}

/// The periodic path P(v).
pub fn periodic_path(v: &MidString) -> PeriodicPath {
    let k = kappa(v);
    let mut vertices = Vec::with_capacity(k);
    let mut flips = Vec::with_capacity(k);
    let mut cur = v.clone();
    for _ in 0..k {
        let p = f_position(&cur);
        vertices.push(cur.clone());
        flips.push(p as u32);
        cur = cur.flipped(p);
    }
    debug_assert_eq!(necklace_of(&cur), necklace_of(v));
    PeriodicPath {
        start: v.clone(),
        vertices,
        flips: FlipSequence::new(flips, v.n()).expect("flip positions in range"),
    }
}

/// Enumeration bound for the cycle factor.
pub const FACTOR_BOUND: usize = 12;

/// The cycle factor of the necklace graph: one necklace cycle per plane
/// tree with n edges. Test and export machinery, not on the generation
/// path.
pub fn enumerate_factor(n: usize) -> Result<Vec<Vec<Necklace>>, Error> {
    if n == 0 || n > FACTOR_BOUND {
        return Err(Error::BoundExceeded {
            n,
            bound: FACTOR_BOUND,
        });
    }
    let mut seen: HashSet<RootedTree> = HashSet::new();
    let mut cycles = Vec::new();
    let mut word = Vec::with_capacity(2 * n);
    enumerate_dyck(n, n, 0, &mut word, &mut |bits| {
        let t = RootedTree::from_bits(bits.to_vec()).expect("dyck word");
        let plane = canon_plane(&t);
        if seen.insert(plane.canon().clone()) {
            let mut start_bits = bits.to_vec();
            start_bits.push(0);
            let start =
                MidString::new(crate::bits::BitString::from_bits(&start_bits)).expect("vertex");
            let path = periodic_path(&start);
            cycles.push(path.vertices.iter().map(necklace_of).collect());
        }
    });
    Ok(cycles)
}

/// Calls `visit` on every Dyck word with `ones` + `zeros` remaining bits.
pub(crate) fn enumerate_dyck(
    ones: usize,
    zeros: usize,
    excess: usize,
    cur: &mut Vec<u8>,
    visit: &mut impl FnMut(&[u8]),
) {
    if ones == 0 && zeros == 0 {
        visit(cur);
        return;
    }
    if ones > 0 {
        cur.push(1);
        enumerate_dyck(ones - 1, zeros, excess + 1, cur, visit);
        cur.pop();
    }
    if zeros > 0 && excess > 0 {
        cur.push(0);
        enumerate_dyck(ones, zeros - 1, excess - 1, cur, visit);
        cur.pop();
    }
}

/// All middle-levels vertices for small n, in lexicographic mask order.
pub fn all_vertices(n: usize) -> Vec<MidString> {
    let m = 2 * n + 1;
    assert!(m <= 31, "all_vertices is exponential; n too large");
    let mut out = Vec::new();
    for mask in 0u32..1 << m {
        let w = mask.count_ones() as usize;
        if w == n || w == n + 1 {
            let bits: Vec<u8> = (0..m).map(|i| (mask >> i & 1) as u8).collect();
            out.push(MidString::new(crate::bits::BitString::from_bits(&bits)).unwrap());
        }
    }
    out
}
