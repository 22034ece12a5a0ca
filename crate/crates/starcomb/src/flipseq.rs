//! Flip-sequence algebra: shifts, the rev/mov/translate operations, gluing
//! pairs and their 6-cycles, the join of two periodic paths, and the
//! compatible/nested/interleaved classifier for pairs of gluing cycles.

use std::fmt;

use crate::bits::{ell, necklace_of, pos_mod, rotate, BitString, MidString};
use crate::error::Error;
use crate::trees::{canon_plane, pullable_decomp, DyckWord, RootedTree};

/// A sequence of flip positions in 1..=2n+1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlipSequence {
    entries: Vec<u32>,
    n: usize,
}

impl FlipSequence {
    pub fn new(entries: Vec<u32>, n: usize) -> Result<Self, Error> {
        let m = 2 * n + 1;
        if entries.is_empty() || entries.iter().any(|&e| e == 0 || e as usize > m) {
            return Err(Error::OutOfRange(format!(
                "flip entries must lie in 1..={m}"
            )));
        }
        Ok(FlipSequence { entries, n })
    }

    pub fn from_digits(digits: &str, n: usize) -> Result<Self, Error> {
        let entries = digits
            .chars()
            .map(|c| c.to_digit(10).ok_or(Error::BadBitChar(c)))
            .collect::<Result<Vec<_>, _>>()?;
        FlipSequence::new(entries, n)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> usize {
        2 * self.n + 1
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    /// Element-wise addition of `i` modulo 2n+1, representatives 1..=2n+1.
    pub fn plus(&self, i: i64) -> FlipSequence {
        let m = self.modulus();
        FlipSequence {
            entries: self
                .entries
                .iter()
                .map(|&e| pos_mod(e as i64 + i, m) as u32)
                .collect(),
            n: self.n,
        }
    }
}

impl fmt::Display for FlipSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

/// A flip sequence with its shift.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftedFlip {
    pub seq: FlipSequence,
    /// The shift lambda(alpha), reduced into 0..2n.
    pub shift: usize,
}

/// A periodic path in the middle levels graph, materialized together with
/// its flip sequence and shift. Test-scale machinery; the generator never
/// materializes paths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlipPath {
    pub verts: Vec<MidString>,
    pub seq: FlipSequence,
    pub shift: usize,
}

impl FlipPath {
    pub fn n(&self) -> usize {
        self.seq.n()
    }

    pub fn modulus(&self) -> usize {
        self.seq.modulus()
    }

    /// The vertex reached by the final flip; lies in the necklace of the
    /// start, rotated by the shift.
    pub fn end(&self) -> MidString {
        let last = self.verts.last().unwrap();
        last.flipped(*self.seq.entries().last().unwrap() as usize)
    }
}

/// Applies `seq` starting from `start`, validating that every intermediate
/// string stays inside the middle levels.
fn walk(seq: &FlipSequence, start: &MidString) -> Result<(Vec<MidString>, MidString), Error> {
    let n = start.n();
    let mut verts = Vec::with_capacity(seq.len());
    let mut cur = start.clone();
    for (i, &p) in seq.entries().iter().enumerate() {
        verts.push(cur.clone());
        cur.flip_in_place(p as usize);
        let w = cur.weight();
        if w != n && w != n + 1 {
            return Err(Error::WeightViolation(i));
        }
    }
    Ok((verts, cur))
}

/// The shift of a flip sequence for the periodic path starting at `start`.
pub fn shift_of(seq: &FlipSequence, start: &MidString) -> Result<ShiftedFlip, Error> {
    let (_, end) = walk(seq, start)?;
    if necklace_of(&end) != necklace_of(start) {
        return Err(Error::NotPeriodic);
    }
    let m = start.modulus();
    let shift = (ell(&end) + m - ell(start)) % m;
    Ok(ShiftedFlip {
        seq: seq.clone(),
        shift,
    })
}

/// Builds the full path record for `seq` from `start`.
pub fn flip_path(seq: &FlipSequence, start: &MidString) -> Result<FlipPath, Error> {
    let sf = shift_of(seq, start)?;
    let (verts, _) = walk(seq, start)?;
    Ok(FlipPath {
        verts,
        seq: sf.seq,
        shift: sf.shift,
    })
}

/// rev: reverse the traversal direction; the shift negates.
pub fn rev(p: &FlipPath) -> FlipPath {
    let m = p.modulus();
    let k = p.verts.len();
    let mut verts = Vec::with_capacity(k);
    verts.push(p.verts[0].clone());
    for t in (1..k).rev() {
        verts.push(rotate(&p.verts[t], p.shift as isize));
    }
    let entries: Vec<u32> = p
        .seq
        .entries()
        .iter()
        .rev()
        .map(|&a| pos_mod(a as i64 - p.shift as i64, m) as u32)
        .collect();
    FlipPath {
        verts,
        seq: FlipSequence {
            entries,
            n: p.seq.n(),
        },
        shift: (m - p.shift) % m,
    }
}

/// mov: advance the starting vertex along the path; the shift is unchanged.
pub fn mov(p: &FlipPath) -> FlipPath {
    let k = p.verts.len();
    let mut verts = Vec::with_capacity(k);
    verts.extend_from_slice(&p.verts[1..]);
    verts.push(rotate(&p.verts[0], -(p.shift as isize)));
    let mut entries: Vec<u32> = p.seq.entries()[1..].to_vec();
    entries.push(pos_mod(p.seq.entries()[0] as i64 + p.shift as i64, p.modulus()) as u32);
    FlipPath {
        verts,
        seq: FlipSequence {
            entries,
            n: p.seq.n(),
        },
        shift: p.shift,
    }
}

/// translate: add `i` to every entry; the path rotates by sigma^(-i).
pub fn translate(p: &FlipPath, i: i64) -> FlipPath {
    FlipPath {
        verts: p.verts.iter().map(|v| rotate(v, -(i as isize))).collect(),
        seq: p.seq.plus(i),
        shift: p.shift,
    }
}

/// A gluing pair (x, y) with x = 110u0v and y = pull(x) = 101u0v.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GluingPair {
    x: RootedTree,
    y: RootedTree,
    u: DyckWord,
    v: DyckWord,
}

impl GluingPair {
    /// Builds the pair from its pullable tree.
    pub fn new(x: RootedTree) -> Result<Self, Error> {
        let y = x.pull()?;
        let (_, u, v) = pullable_decomp(x.as_slice());
        let u = DyckWord::new(u.to_vec())?;
        let v = DyckWord::new(v.to_vec())?;
        Ok(GluingPair { x, y, u, v })
    }

    pub fn from_xy(x: RootedTree, y: RootedTree) -> Result<Self, Error> {
        let pair = GluingPair::new(x)?;
        if pair.y != y {
            return Err(Error::NotPushable(y.to_string()));
        }
        Ok(pair)
    }

    pub fn x(&self) -> &RootedTree {
        &self.x
    }

    pub fn y(&self) -> &RootedTree {
        &self.y
    }

    pub fn u(&self) -> &DyckWord {
        &self.u
    }

    pub fn v(&self) -> &DyckWord {
        &self.v
    }

    pub fn edges(&self) -> usize {
        self.x.edges()
    }

    /// Position |u|+4, where the gluing cycle flips between the two paths.
    pub fn bridge_position(&self) -> usize {
        self.u.len() + 4
    }
}

impl fmt::Display for GluingPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// The 6-cycle C(x,y) = (x^0, x^1, x^6, x^5, y^0, y^1) of a gluing pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluingCycle {
    pub pair: GluingPair,
    pub vertices: [MidString; 6],
    pub flips: [u32; 6],
}

/// Builds the gluing cycle of a pair.
pub fn gluing_cycle(pair: &GluingPair) -> GluingCycle {
    let u = pair.u().as_slice();
    let v = pair.v().as_slice();
    let mk = |a: u8, b: u8, c: u8, mid: u8| -> MidString {
        let mut bits = Vec::with_capacity(u.len() + v.len() + 4);
        bits.extend_from_slice(&[a, b, c]);
        bits.extend_from_slice(u);
        bits.push(mid);
        bits.extend_from_slice(v);
        bits.push(0);
        MidString::new(BitString::from_bits(&bits)).expect("gluing cycle vertex")
    };
    let x0 = mk(1, 1, 0, 0);
    let x1 = mk(1, 1, 0, 1);
    let x6 = mk(1, 0, 0, 1);
    let x5 = mk(1, 0, 1, 1);
    let y0 = mk(1, 0, 1, 0);
    let y1 = mk(1, 1, 1, 0);
    let p = pair.bridge_position() as u32;
    GluingCycle {
        pair: pair.clone(),
        vertices: [x0, x1, x6, x5, y0, y1],
        flips: [p, 2, 3, p, 2, 3],
    }
}

/// Joins two periodic paths along a gluing cycle.
///
/// `p1` must start with the seven vertices x^0..x^6 of the pair and `p2`
/// with y^0, y^1. The shifts add.
pub fn glue(p1: &FlipPath, p2: &FlipPath, pair: &GluingPair) -> Result<FlipPath, Error> {
    let m = p1.modulus();
    let cyc = gluing_cycle(pair);
    let [x0, x1, x6, x5, y0, y1] = &cyc.vertices;
    if p1.verts.len() < 8 || p2.verts.len() < 2 {
        return Err(Error::PrefixMismatch);
    }
    // p1 must expose x^0, x^1, x^2, x^3, x^4, x^5, x^6 in order
    let expect1: Vec<MidString> = {
        // x^2 = 010u1v0, x^3 = 011u1v0, x^4 = 001u1v0 from the same template
        let u = pair.u().as_slice();
        let v = pair.v().as_slice();
        let mk = |a: u8, b: u8, c: u8, mid: u8| -> MidString {
            let mut bits = Vec::with_capacity(u.len() + v.len() + 4);
            bits.extend_from_slice(&[a, b, c]);
            bits.extend_from_slice(u);
            bits.push(mid);
            bits.extend_from_slice(v);
            bits.push(0);
            MidString::new(BitString::from_bits(&bits)).expect("path vertex")
        };
        vec![
            x0.clone(),
            x1.clone(),
            mk(0, 1, 0, 1),
            mk(0, 1, 1, 1),
            mk(0, 0, 1, 1),
            x5.clone(),
            x6.clone(),
        ]
    };
    if p1.verts[..7] != expect1[..] || p2.verts[0] != *y0 || p2.verts[1] != *y1 {
        return Err(Error::PrefixMismatch);
    }

    let a = p1.seq.entries();
    let b = p2.seq.entries();
    let l2 = p2.shift as i64;
    let bridge = pair.bridge_position() as i64;

    let mut entries: Vec<u32> = Vec::with_capacity(a.len() + b.len());
    entries.push(3);
    for &bi in &b[1..] {
        entries.push(bi);
    }
    let tail: Vec<i64> = {
        let mut t = Vec::with_capacity(a.len() - 1);
        t.push(bridge);
        t.push(a[4] as i64);
        t.push(a[3] as i64);
        t.push(a[2] as i64);
        t.push(a[1] as i64);
        t.push(2);
        for &ai in &a[6..] {
            t.push(ai as i64);
        }
        t
    };
    for e in tail {
        entries.push(pos_mod(e + l2, m) as u32);
    }

    let mut verts: Vec<MidString> = Vec::with_capacity(p1.verts.len() + p2.verts.len());
    verts.push(p1.verts[0].clone());
    verts.extend(p2.verts[1..].iter().cloned());
    let rot = |z: &MidString| rotate(z, -(l2 as isize));
    verts.push(rot(&p2.verts[0]));
    for t in [5usize, 4, 3, 2, 1] {
        verts.push(rot(&p1.verts[t]));
    }
    for t in 6..p1.verts.len() {
        verts.push(rot(&p1.verts[t]));
    }

    let seq = FlipSequence {
        entries,
        n: p1.seq.n(),
    };
    let shift = (p1.shift + p2.shift) % m;
    Ok(FlipPath { verts, seq, shift })
}

/// Relation between two gluing cycles sigma^i(C(p)) and sigma^j(C(q)).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Compatible,
    Nested,
    Interleaved,
}

/// Classifies the relation between the rotated gluing cycles of two pairs.
pub fn classify_relation(
    p: &GluingPair,
    q: &GluingPair,
    i: usize,
    j: usize,
) -> Result<Relation, Error> {
    let px = canon_plane(p.x());
    let py = canon_plane(p.y());
    let qx = canon_plane(q.x());
    let qy = canon_plane(q.y());
    if px == py || qx == qy || (px == qx && py == qy) || (px == qy && py == qx) {
        return Err(Error::PreconditionViolated);
    }
    let m = 2 * p.edges() + 1;
    let diff = (i as i64 - j as i64).rem_euclid(m as i64);
    if diff == (m as i64) - 1 && *q.x() == p.y().rho_inv() {
        return Ok(Relation::Nested);
    }
    if diff == 2 && *q.x() == p.x().rho_pow(2) {
        return Ok(Relation::Interleaved);
    }
    Ok(Relation::Compatible)
}
