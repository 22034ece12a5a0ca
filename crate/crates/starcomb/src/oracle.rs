//! Independent brute-force verification: validity checking of emitted
//! orderings and definitional recomputation of the quantities the fast
//! paths derive by formula. Nothing here shares code with the generator.

use std::collections::HashSet;

use crate::bits::{least_rotation, BitString, MidString};
use crate::error::Error;

/// Why an ordering failed verification.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Violation {
    NotStarTransposition,
    Duplicate,
    Missing,
    NotCyclic,
    BlockSymmetryBroken,
    NecklaceRepeatInBlock,
}

/// Outcome of [`verify_ordering`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub ok: bool,
    pub first_violation: Option<(u64, Violation)>,
}

impl VerifyReport {
    fn fail(step: u64, why: Violation) -> Self {
        VerifyReport {
            ok: false,
            first_violation: Some((step, why)),
        }
    }

    fn pass() -> Self {
        VerifyReport {
            ok: true,
            first_violation: None,
        }
    }
}

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k.min(n - k) {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

/// Colex rank of a combination among all with the same weight.
fn rank_combination(bits: &BitString) -> u64 {
    let mut rank = 0u64;
    let mut seen = 0usize;
    for p in 1..=bits.len() {
        if bits.get(p) {
            seen += 1;
            rank += binomial(p - 1, seen);
        }
    }
    rank
}

/// 64-bit key of a combination (exact for lengths up to 64).
fn combo_key(bits: &BitString) -> u64 {
    let mut key = 0u64;
    for p in 1..=bits.len() {
        key = key << 1 | bits.get(p) as u64;
    }
    key
}

/// Canonical key of the rotation class of the suffix (positions 2..).
fn suffix_necklace_key(bits: &BitString) -> u64 {
    let m = bits.len() - 1;
    let suffix: Vec<u8> = (2..=bits.len()).map(|p| bits.get(p) as u8).collect();
    let r = least_rotation(&suffix);
    let mut key = 1u64;
    for t in 0..m {
        key = key << 1 | suffix[(r + t) % m] as u64;
    }
    key
}

/// The flip position between two consecutive combinations of a star
/// transposition ordering, or None if the step is invalid.
fn star_step(a: &BitString, b: &BitString) -> Option<usize> {
    if a.get(1) == b.get(1) {
        return None;
    }
    let mut flip = 0usize;
    for p in 2..=a.len() {
        if a.get(p) != b.get(p) {
            if flip != 0 {
                return None;
            }
            flip = p - 1;
        }
    }
    // the swapped bits must be complementary
    if flip == 0 || a.get(1) == a.get(1 + flip) {
        return None;
    }
    Some(flip)
}

/// Checks a full cyclic ordering of all (n+1,n+1)-combinations:
/// star-transposition steps, no duplicates, complete coverage, exact
/// block symmetry with the given shift, and per-block necklace coverage.
pub fn verify_ordering<I>(stream: I, n: usize, shift: usize) -> VerifyReport
where
    I: IntoIterator<Item = BitString>,
{
    let m = 2 * n + 1;
    let total = binomial(2 * n + 2, n + 1);
    let block = total / m as u64;
    let mut iter = stream.into_iter();

    let Some(first) = iter.next() else {
        return VerifyReport::fail(0, Violation::Missing);
    };
    if first.len() != 2 * n + 2 || first.weight() != n + 1 {
        return VerifyReport::fail(0, Violation::NotStarTransposition);
    }

    let mut dedupe_bits: Option<Vec<u64>> =
        (n <= 12).then(|| vec![0u64; total.div_ceil(64) as usize]);
    let mut dedupe_set: Option<HashSet<u64>> = (n > 12).then(HashSet::new);
    let mut mark = |c: &BitString| -> bool {
        if let Some(bitset) = dedupe_bits.as_mut() {
            let r = rank_combination(c);
            let (w, b) = (r as usize / 64, r % 64);
            let hit = bitset[w] >> b & 1 == 1;
            bitset[w] |= 1 << b;
            !hit
        } else {
            dedupe_set.as_mut().unwrap().insert(combo_key(c))
        }
    };

    let mut block0: Vec<u32> = Vec::with_capacity(block as usize);
    let mut necklaces: HashSet<u64> = HashSet::with_capacity(block as usize);
    let mut prev = first.clone();
    mark(&prev);
    if !necklaces.insert(suffix_necklace_key(&prev)) {
        return VerifyReport::fail(0, Violation::NecklaceRepeatInBlock);
    }
    let mut count: u64 = 1;

    let mut handle_flip = |flip: usize, at: u64| -> Option<(u64, Violation)> {
        let j = at % block;
        let b = at / block;
        if b == 0 {
            block0.push(flip as u32);
        } else {
            let want = (block0[j as usize] as u64 + b * shift as u64 - 1) % m as u64 + 1;
            if flip as u64 != want {
                return Some((at, Violation::BlockSymmetryBroken));
            }
        }
        None
    };

    for cur in iter {
        let at = count - 1; // index of the flip between prev and cur
        let Some(flip) = star_step(&prev, &cur) else {
            return VerifyReport::fail(at, Violation::NotStarTransposition);
        };
        if let Some((s, v)) = handle_flip(flip, at) {
            return VerifyReport::fail(s, v);
        }
        if !mark(&cur) {
            return VerifyReport::fail(count, Violation::Duplicate);
        }
        // necklace tracking only within the first block
        if count < block && !necklaces.insert(suffix_necklace_key(&cur)) {
            return VerifyReport::fail(count, Violation::NecklaceRepeatInBlock);
        }
        prev = cur;
        count += 1;
        if count > total {
            return VerifyReport::fail(count - 1, Violation::Duplicate);
        }
    }

    if count != total {
        return VerifyReport::fail(count, Violation::Missing);
    }
    if necklaces.len() as u64 != block {
        return VerifyReport::fail(block, Violation::NecklaceRepeatInBlock);
    }
    // closing step back to the first combination
    let Some(flip) = star_step(&prev, &first) else {
        return VerifyReport::fail(total - 1, Violation::NotCyclic);
    };
    if let Some((s, v)) = handle_flip(flip, total - 1) {
        return VerifyReport::fail(s, v);
    }
    VerifyReport::pass()
}

/// Definitional first return time: iterate the rotation-equivariant flip
/// rule literally until the necklace of the start reappears.
pub fn brute_kappa(v: &MidString) -> usize {
    let start = necklace_canon_string(v);
    let mut cur = v.clone();
    let mut steps = 0usize;
    loop {
        cur = naive_f(&cur);
        steps += 1;
        if necklace_canon_string(&cur) == start {
            return steps;
        }
        assert!(steps <= 2 * (2 * v.n() + 1), "runaway orbit");
    }
}

fn necklace_canon_string(v: &MidString) -> String {
    let bits = v.bits().to_bits();
    let r = least_rotation(&bits);
    let mm = bits.len();
    (0..mm)
        .map(|t| char::from(b'0' + bits[(r + t) % mm]))
        .collect()
}

/// A from-the-definition implementation of the flip rule: normalize by
/// trying every rotation, rewrite 1u0v0 -> 1u1v0 or 1t -> 0t, rotate back.
fn naive_f(v: &MidString) -> MidString {
    let m = v.modulus();
    let bits = v.bits().to_bits();
    let lower = v.is_lower();
    for l in 0..m {
        let rot: Vec<u8> = (0..m).map(|t| bits[(t + l) % m]).collect();
        if lower {
            if is_dyck_naive(&rot[..m - 1]) && rot[m - 1] == 0 {
                let mut out = rot.clone();
                let d = close_of_first(&rot);
                out[d] = 1;
                return unrotate(&out, l);
            }
        } else if rot[0] == 1 && is_dyck_naive(&rot[1..]) {
            let mut out = rot.clone();
            out[0] = 0;
            return unrotate(&out, l);
        }
    }
    unreachable!("every vertex has a tree rotation");
}

fn is_dyck_naive(w: &[u8]) -> bool {
    let mut e = 0i64;
    for &b in w {
        e += if b == 1 { 1 } else { -1 };
        if e < 0 {
            return false;
        }
    }
    e == 0
}

fn close_of_first(w: &[u8]) -> usize {
    let mut e = 0i64;
    for (i, &b) in w.iter().enumerate() {
        e += if b == 1 { 1 } else { -1 };
        if e == 0 {
            return i;
        }
    }
    unreachable!("unbalanced word");
}

fn unrotate(bits: &[u8], l: usize) -> MidString {
    let m = bits.len();
    let orig: Vec<u8> = (0..m).map(|t| bits[(t + m - l % m) % m]).collect();
    MidString::new(BitString::from_bits(&orig)).expect("weight preserved")
}

/// Definitional plane-tree period: iterate the rotation rule on the Dyck
/// word until it recurs.
pub fn brute_lambda(t: &[u8]) -> usize {
    let mut cur = naive_rho(t);
    let mut steps = 1usize;
    while cur != t {
        cur = naive_rho(&cur);
        steps += 1;
        assert!(steps <= t.len(), "runaway rotation");
    }
    steps
}

fn naive_rho(t: &[u8]) -> Vec<u8> {
    let d = close_of_first(t);
    let mut out = Vec::with_capacity(t.len());
    out.extend_from_slice(&t[1..d]);
    out.push(1);
    out.extend_from_slice(&t[d + 1..]);
    out.push(0);
    out
}

/// Definitional centroids: all-pairs distances by BFS over an adjacency
/// list parsed directly from the Dyck word.
pub fn brute_centroids(t: &[u8]) -> (Vec<usize>, u64) {
    let v = t.len() / 2 + 1;
    let mut adj = vec![Vec::new(); v];
    let mut stack = vec![0usize];
    let mut next = 1usize;
    for &b in t {
        if b == 1 {
            let p = *stack.last().unwrap();
            adj[p].push(next);
            adj[next].push(p);
            stack.push(next);
            next += 1;
        } else {
            stack.pop();
        }
    }
    let mut phis = vec![0u64; v];
    for s in 0..v {
        let mut dist = vec![u64::MAX; v];
        dist[s] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if dist[w] == u64::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        phis[s] = dist.iter().sum();
    }
    let best = *phis.iter().min().unwrap();
    let centroids = (0..v).filter(|&s| phis[s] == best).collect();
    (centroids, best)
}

/// Fully independent confirmation that the hardcoded small sequences are
/// valid cyclic orderings with the required symmetry.
pub fn exhaustive_hamilton_check(n: usize) -> Result<bool, Error> {
    if !(1..=3).contains(&n) {
        return Err(Error::OutOfRange(
            "hardcoded sequences exist for n <= 3".into(),
        ));
    }
    let (start, alpha): (&str, &[usize]) = match n {
        1 => ("1100", &[2, 1]),
        2 => ("111000", &[5, 1, 3, 5]),
        _ => ("11110000", &[6, 2, 5, 3, 4, 6, 2, 1, 3, 5]),
    };
    let combos = expand_blocks(start, alpha, 1);
    Ok(verify_ordering(combos, n, 1).ok)
}

/// Expands an initial block into the full ordering by repeated addition of
/// the shift, applying the flips to the start combination.
pub fn expand_blocks(start: &str, alpha0: &[usize], shift: usize) -> Vec<BitString> {
    let cur = BitString::parse(start).expect("valid start");
    let m = cur.len() - 1;
    let mut out = Vec::new();
    let mut cur = cur;
    for b in 0..m {
        for &a in alpha0 {
            out.push(cur.clone());
            let q = (a + b * shift - 1) % m + 1;
            cur.flip(1);
            cur.flip(1 + q);
        }
    }
    out
}
