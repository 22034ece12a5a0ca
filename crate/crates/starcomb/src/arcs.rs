//! The spanning-tree arc rule: every plane tree other than the star maps
//! to one gluing pair, chosen so that the resulting set of pairs is both
//! interleaving-free and nesting-free. The selection fixes a centroid and
//! a canonical ccw subtree ordering, picks one subtree by a waterfall of
//! pattern conditions, and pulls or pushes one of its leaves.

use std::collections::HashMap;

use crate::bits::least_rotation_by;
use crate::error::Error;
use crate::flipseq::GluingPair;
use crate::trees::{canon_plane, RootedTree, TreeIndex};

/// The ten small reference trees driving the subtree-selection rules.
pub fn q(j: usize) -> RootedTree {
    const Q: [&str; 10] = [
        "10",
        "1100",
        "110100",
        "11100100",
        "11010100",
        "1110100100",
        "1110010100",
        "1110011000",
        "1101011000",
        "1101010100",
    ];
    RootedTree::parse(Q[j]).expect("q tree")
}

/// The star with n edges rooted at a leaf: 1(10)^(n-1)0.
pub fn star_tree(n: usize) -> RootedTree {
    assert!(n >= 3);
    let mut bits = Vec::with_capacity(2 * n);
    bits.push(1);
    for _ in 0..n - 1 {
        bits.extend_from_slice(&[1, 0]);
    }
    bits.push(0);
    RootedTree::from_bits(bits).expect("star")
}

/// The star with an extra edge appended to one leaf: 10 s_(n-1).
pub fn star_plus_edge(n: usize) -> RootedTree {
    assert!(n >= 4);
    let mut bits = vec![1, 0];
    bits.extend_from_slice(star_tree(n - 1).as_slice());
    RootedTree::from_bits(bits).expect("star plus edge")
}

/// The dumbbell 1(10)^((n-1)/2) 0 (10)^((n-1)/2) for odd n >= 5: two
/// adjacent centers whose other neighbors are all leaves.
pub fn dumbbell(n: usize) -> RootedTree {
    assert!(n >= 5 && n % 2 == 1);
    let half = (n - 1) / 2;
    let mut bits = Vec::with_capacity(2 * n);
    bits.push(1);
    for _ in 0..half {
        bits.extend_from_slice(&[1, 0]);
    }
    bits.push(0);
    for _ in 0..half {
        bits.extend_from_slice(&[1, 0]);
    }
    RootedTree::from_bits(bits).expect("dumbbell")
}

/// The pushable rooting of the dumbbell: rho^(-2) of [`dumbbell`].
pub fn dumbbell_shifted(n: usize) -> RootedTree {
    dumbbell(n).rho_pow(-2)
}

/// The special trees referenced by the arc rules, bundled for one size.
#[derive(Clone, Debug)]
pub struct SpecialTrees {
    pub q: [RootedTree; 10],
    pub star: RootedTree,
    pub star_plus: RootedTree,
    pub dumbbell: Option<RootedTree>,
    pub dumbbell_shifted: Option<RootedTree>,
}

impl SpecialTrees {
    pub fn for_edges(n: usize) -> Self {
        let qs: [RootedTree; 10] = std::array::from_fn(q);
        let odd = n >= 5 && n % 2 == 1;
        SpecialTrees {
            q: qs,
            star: star_tree(n),
            star_plus: star_plus_edge(n),
            dumbbell: odd.then(|| dumbbell(n)),
            dumbbell_shifted: odd.then(|| dumbbell_shifted(n)),
        }
    }
}

/// Whether the arc roots its plane tree at the pullable or pushable side.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArcDirection {
    /// The tree is the x-side: a leaf was pulled toward the centroid.
    PullAtTail,
    /// The tree is the y-side: a leaf was pushed toward the centroid.
    PushAtHead,
}

/// The gluing pair assigned to a plane tree, with the selection data.
#[derive(Clone, Debug)]
pub struct Arc {
    pub pair: GluingPair,
    pub direction: ArcDirection,
    pub chosen_centroid: usize,
    pub chosen_subtree_index: usize,
    pub chosen_leaf: usize,
}

/// Internal: which of the selection rules fired.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Rule {
    Q137,
    Q24,
    Q5,
    Q8,
    Even,
    OddThin,
    OddThick,
}

impl Rule {
    fn is_pull(self) -> bool {
        matches!(self, Rule::Q137 | Rule::Q8 | Rule::Even | Rule::OddThin)
    }
}

/// Computes the gluing pair of the plane tree represented by `r`.
///
/// Any rooted representative of the class yields the same pair. The star
/// is the root of the spanning tree and has no arc.
pub fn arc_of(r: &RootedTree) -> Result<Arc, Error> {
    let n = r.edges();
    if n < 4 {
        return Err(Error::SmallN(n));
    }
    let idx = TreeIndex::new(r.as_slice());
    let info = idx.centroid_info();

    if info.centroids.len() == 1 && idx.degree(info.centroids[0]) == n {
        return Err(Error::IsStar);
    }

    if info.centroids.len() == 2 && n % 2 == 1 && is_dumbbell_shape(&idx, &info.centroids) {
        return apply_dumbbell_rule(&idx, &info.centroids);
    }

    let (c, order, bicentroid) = fix_centroid_and_order(&idx, &info.centroids);
    let (slot, subtree) = select_subtree(&idx, c, &order, bicentroid);
    let b = order[slot];
    let rule = select_rule(&subtree, info.potential);
    let a = select_leaf(&idx, c, b, rule);
    build_arc(&idx, c, slot, a, rule)
}

/// True iff the two-centroid tree is the dumbbell: all other vertices are
/// leaves.
fn is_dumbbell_shape(idx: &TreeIndex, centroids: &[usize]) -> bool {
    (0..idx.vertices()).all(|v| centroids.contains(&v) || idx.is_leaf(v))
}

fn apply_dumbbell_rule(idx: &TreeIndex, centroids: &[usize]) -> Result<Arc, Error> {
    // Either centroid works by symmetry; take the first. Its one subtree
    // that is not a single edge hangs at the other centroid, and the
    // pushed leaf is the ccw-last child of that vertex.
    let c = centroids[0];
    let c2 = centroids[1];
    let d2 = idx.degree(c2);
    let kc = idx.cycle_pos(c2, c);
    let a = idx.nbr(c2, (kc + d2 - 1) % d2);
    let y = RootedTree::from_bits(idx.encode_rooted(c2, a)).expect("dumbbell rooting");
    let x = y.push()?;
    let pair = GluingPair::new(x)?;
    debug_assert_eq!(pair.y(), &y);
    Ok(Arc {
        pair,
        direction: ArcDirection::PushAtHead,
        chosen_centroid: c,
        chosen_subtree_index: 0,
        chosen_leaf: a,
    })
}

/// Step one: pick the centroid and the ccw ordering of its subtrees,
/// returning the subtree roots in order plus the two-centroid flag.
fn fix_centroid_and_order(idx: &TreeIndex, centroids: &[usize]) -> (usize, Vec<usize>, bool) {
    if centroids.len() == 1 {
        let c = centroids[0];
        let d = idx.degree(c);
        let roots: Vec<usize> = (0..d).map(|k| idx.nbr(c, k)).collect();
        let encs: Vec<Vec<u8>> = idx.subtrees_at(c);
        // Lexicographically minimal cyclic rotation of the subtree list,
        // computed over the separator-augmented token string.
        let mut tokens: Vec<i8> = Vec::with_capacity(2 * idx.edges() + d);
        let mut starts: Vec<usize> = Vec::with_capacity(d);
        for e in &encs {
            starts.push(tokens.len());
            tokens.push(-1);
            tokens.extend(e.iter().map(|&b| b as i8));
        }
        let begin = least_rotation_by(tokens.len(), |i, j| tokens[i].cmp(&tokens[j]));
        let first = starts
            .iter()
            .position(|&s| s == begin)
            .expect("least rotation starts at a separator");
        let order: Vec<usize> = (0..d).map(|t| roots[(first + t) % d]).collect();
        (c, order, false)
    } else {
        // Two centroids: order each centroid's active subtrees ccw starting
        // after the subtree holding the other centroid; prefer a centroid
        // whose active subtrees are not all single edges, breaking ties by
        // the lexicographically smaller concatenation.
        let actives = |c: usize, c2: usize| -> Vec<usize> {
            let d = idx.degree(c);
            let kc = idx.cycle_pos(c, c2);
            (1..d).map(|t| idx.nbr(c, (kc + t) % d)).collect()
        };
        let concat = |c: usize, roots: &[usize]| -> Vec<u8> {
            let mut out = Vec::new();
            for &b in roots {
                out.push(1);
                out.extend(idx.encode_subtree_away(b, c));
                out.push(0);
            }
            out
        };
        let (c1, c2) = (centroids[0], centroids[1]);
        let r1 = actives(c1, c2);
        let r2 = actives(c2, c1);
        let s1 = concat(c1, &r1);
        let s2 = concat(c2, &r2);
        let big1 = r1.iter().any(|&b| !idx.is_leaf(b));
        let big2 = r2.iter().any(|&b| !idx.is_leaf(b));
        if big1 && !big2 {
            (c1, r1, true)
        } else if big2 && !big1 {
            (c2, r2, true)
        } else if s1 <= s2 {
            (c1, r1, true)
        } else {
            (c2, r2, true)
        }
    }
}

/// Step two: choose the subtree the rule acts on; returns its slot in the
/// ordering and its wrapped encoding.
fn select_subtree(
    idx: &TreeIndex,
    c: usize,
    order: &[usize],
    bicentroid: bool,
) -> (usize, Vec<u8>) {
    let enc = |b: usize| -> Vec<u8> { wrap(idx.encode_subtree_away(b, c)) };
    let k = order.len();
    let q0 = q(0);
    let q1 = q(1);
    let q2 = q(2);
    let q4 = q(4);
    let is = |e: &[u8], t: &RootedTree| e == t.as_slice();
    if bicentroid {
        // two centroids: the first active subtree distinct from a single edge
        for (i, &b) in order.iter().enumerate() {
            let e = enc(b);
            if !is(&e, &q0) {
                return (i, e);
            }
        }
        unreachable!("a qualifying centroid has a non-edge active subtree");
    }
    let encs: Vec<Vec<u8>> = order.iter().map(|&b| enc(b)).collect();
    // condition (i)
    #[allow(clippy::needless_range_loop)]
    for i in 0..k {
        if is(&encs[i], &q1) && is(&encs[(i + k - 1) % k], &q0) {
            return (i, encs[i].clone());
        }
    }
    // condition (ii)
    #[allow(clippy::needless_range_loop)]
    for i in 0..k {
        if is(&encs[i], &q2) || is(&encs[i], &q4) {
            let nx = &encs[(i + 1) % k];
            if is(nx, &q0) || is(nx, &q1) || is(nx, &q2) {
                return (i, encs[i].clone());
            }
        }
    }
    // condition (iii)
    if let Some(i) = encs
        .iter()
        .position(|e| !is(e, &q0) && !is(e, &q1) && !is(e, &q2) && !is(e, &q4))
    {
        return (i, encs[i].clone());
    }
    // condition (iv)
    if let Some(i) = encs.iter().position(|e| !is(e, &q0)) {
        return (i, encs[i].clone());
    }
    unreachable!("the star was excluded earlier");
}

fn wrap(mut inner: Vec<u8>) -> Vec<u8> {
    let mut out = Vec::with_capacity(inner.len() + 2);
    out.push(1);
    out.append(&mut inner);
    out.push(0);
    out
}

/// Step three: decide pull vs push from the subtree pattern and potential.
fn select_rule(subtree: &[u8], potential: u64) -> Rule {
    if let Some(j) = wrapped_q_match(subtree) {
        return match j {
            1 | 3 | 7 => Rule::Q137,
            2 | 4 => Rule::Q24,
            5 => Rule::Q5,
            8 => Rule::Q8,
            _ => unreachable!(),
        };
    }
    if potential.is_multiple_of(2) {
        Rule::Even
    } else {
        // thin/thick of the rightmost leaf decides; resolved by the caller
        Rule::OddThin
    }
}

/// Matches 1^l q_j 0^l for j in {1..5, 7, 8}; returns j.
fn wrapped_q_match(subtree: &[u8]) -> Option<usize> {
    let js = [1usize, 2, 3, 4, 5, 7, 8];
    let mut cur = subtree;
    loop {
        for &j in &js {
            if cur == q(j).as_slice() {
                return Some(j);
            }
        }
        if cur.len() < 4 || crate::trees::match_close(cur) != cur.len() - 1 {
            return None;
        }
        cur = &cur[1..cur.len() - 1];
    }
}

/// Leftmost or rightmost leaf of the subtree hanging at `b` away from `c`,
/// or the middle leaf for the three-leaf pattern.
#[derive(Clone, Copy)]
enum LeafPick {
    Leftmost,
    Rightmost,
    Middle,
}

fn pick_leaf(idx: &TreeIndex, c: usize, b: usize, which: LeafPick) -> usize {
    match which {
        LeafPick::Leftmost => {
            let (mut v, mut p) = (b, c);
            while !idx.is_leaf(v) {
                let next = idx.ccw_next(v, p);
                p = v;
                v = next;
            }
            v
        }
        LeafPick::Rightmost => {
            let (mut v, mut p) = (b, c);
            while !idx.is_leaf(v) {
                let d = idx.degree(v);
                let next = idx.nbr(v, (idx.cycle_pos(v, p) + d - 1) % d);
                p = v;
                v = next;
            }
            v
        }
        LeafPick::Middle => {
            let leaves = subtree_leaves(idx, c, b);
            assert_eq!(leaves.len(), 3, "middle leaf needs exactly three leaves");
            leaves[1]
        }
    }
}

/// Leaves of the subtree at `b` away from `c`, in ccw depth-first order.
fn subtree_leaves(idx: &TreeIndex, c: usize, b: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut stack = vec![(b, c)];
    while let Some((v, p)) = stack.pop() {
        if idx.is_leaf(v) {
            out.push(v);
            continue;
        }
        let d = idx.degree(v);
        let kp = idx.cycle_pos(v, p);
        // push children in reverse ccw order so that ccw-first pops first
        for t in (1..d).rev() {
            stack.push((idx.nbr(v, (kp + t) % d), v));
        }
    }
    out
}

fn select_leaf(idx: &TreeIndex, c: usize, b: usize, rule: Rule) -> usize {
    match rule {
        Rule::Q137 | Rule::Even => pick_leaf(idx, c, b, LeafPick::Leftmost),
        Rule::Q24 | Rule::Q8 | Rule::OddThin | Rule::OddThick => {
            pick_leaf(idx, c, b, LeafPick::Rightmost)
        }
        Rule::Q5 => pick_leaf(idx, c, b, LeafPick::Middle),
    }
}

fn build_arc(idx: &TreeIndex, c: usize, slot: usize, a: usize, rule: Rule) -> Result<Arc, Error> {
    let toward = idx.parents_toward(c);
    let a1 = toward[a] as usize;
    // The odd-potential rule splits on the thickness of the chosen leaf.
    let rule = if rule == Rule::OddThin && idx.degree(a1) > 2 {
        Rule::OddThick
    } else {
        rule
    };
    if rule.is_pull() {
        let a2 = toward[a1] as usize;
        let x = RootedTree::from_bits(idx.encode_rooted(a2, a1)).expect("pull rooting");
        let pair = GluingPair::new(x)?;
        Ok(Arc {
            pair,
            direction: ArcDirection::PullAtTail,
            chosen_centroid: c,
            chosen_subtree_index: slot,
            chosen_leaf: a,
        })
    } else {
        let y = RootedTree::from_bits(idx.encode_rooted(a1, a)).expect("push rooting");
        let x = y.push()?;
        let pair = GluingPair::new(x)?;
        debug_assert_eq!(pair.y(), &y);
        Ok(Arc {
            pair,
            direction: ArcDirection::PushAtHead,
            chosen_centroid: c,
            chosen_subtree_index: slot,
            chosen_leaf: a,
        })
    }
}

/// Enumeration bound for explicit spanning trees.
pub const TREE_BOUND: usize = 9;

/// The explicit spanning tree at test scale: one arc per non-star plane
/// tree with n edges.
pub fn build_tree(n: usize) -> Result<Vec<Arc>, Error> {
    if !(4..=TREE_BOUND).contains(&n) {
        return Err(Error::BoundExceeded {
            n,
            bound: TREE_BOUND,
        });
    }
    let mut reps: HashMap<RootedTree, RootedTree> = HashMap::new();
    let mut cur = Vec::new();
    crate::factor::enumerate_dyck(n, n, 0, &mut cur, &mut |bits| {
        let t = RootedTree::from_bits(bits.to_vec()).expect("dyck word");
        let plane = canon_plane(&t);
        reps.entry(plane.canon().clone()).or_insert(t);
    });
    let mut arcs = Vec::new();
    let mut keys: Vec<&RootedTree> = reps.keys().collect();
    keys.sort();
    for k in keys {
        match arc_of(&reps[k]) {
            Ok(a) => arcs.push(a),
            Err(Error::IsStar) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(arcs)
}

/// Verifies the circular neighbor conditions of the selected subtree for a
/// tree with a unique centroid (test helper).
pub fn circular_property(r: &RootedTree) -> bool {
    let idx = TreeIndex::new(r.as_slice());
    let info = idx.centroid_info();
    if info.centroids.len() != 1 || idx.degree(info.centroids[0]) == r.edges() {
        return true;
    }
    let (c, order, bicentroid) = fix_centroid_and_order(&idx, &info.centroids);
    let (slot, subtree) = select_subtree(&idx, c, &order, bicentroid);
    let k = order.len();
    let enc = |b: usize| wrap(idx.encode_subtree_away(b, c));
    if subtree == q(1).as_slice() {
        let prev = enc(order[(slot + k - 1) % k]);
        let all_q1 = order.iter().all(|&b| enc(b) == q(1).as_slice());
        return prev == q(0).as_slice() || all_q1;
    }
    if subtree == q(2).as_slice() || subtree == q(4).as_slice() {
        let next = enc(order[(slot + 1) % k]);
        let all_q4 = order.iter().all(|&b| enc(b) == q(4).as_slice());
        return next == q(0).as_slice()
            || next == q(1).as_slice()
            || next == q(2).as_slice()
            || all_q4;
    }
    true
}

/// Groups all rooted trees with n edges by plane-tree class (test scale).
pub fn plane_classes(n: usize) -> Vec<Vec<RootedTree>> {
    let mut groups: HashMap<RootedTree, Vec<RootedTree>> = HashMap::new();
    let mut cur = Vec::new();
    crate::factor::enumerate_dyck(n, n, 0, &mut cur, &mut |bits| {
        let t = RootedTree::from_bits(bits.to_vec()).expect("dyck word");
        let plane = canon_plane(&t);
        groups.entry(plane.canon().clone()).or_default().push(t);
    });
    let mut keys: Vec<RootedTree> = groups.keys().cloned().collect();
    keys.sort();
    keys.into_iter()
        .map(|k| groups.remove(&k).unwrap())
        .collect()
}
