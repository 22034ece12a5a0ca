//! Bitstring substrate: packed bitstrings, cyclic rotations, necklace
//! canonicalization, Dyck-word recognition, and the rotation offset `ell`
//! that exposes the rooted tree inside a middle-levels vertex.
//!
//! Positions are 1-based (1..=len) in the public API, matching the usual
//! convention for flip sequences. Internally bits are packed into `u64`
//! words with bit 0 of word 0 holding position 1.

use std::fmt;

use crate::error::Error;

/// A packed bitstring of fixed length with 1-based positions.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitString {
    len: usize,
    words: Vec<u64>,
}

impl BitString {
    pub fn zeros(len: usize) -> Self {
        BitString {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    /// Parse from ASCII '0'/'1', most significant character = position 1.
    pub fn parse(s: &str) -> Result<Self, Error> {
        let mut b = BitString::zeros(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => b.set(i + 1, true),
                other => return Err(Error::BadBitChar(other)),
            }
        }
        Ok(b)
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        let mut b = BitString::zeros(bits.len());
        for (i, &v) in bits.iter().enumerate() {
            if v != 0 {
                b.set(i + 1, true);
            }
        }
        b
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, pos: usize) -> bool {
        debug_assert!(pos >= 1 && pos <= self.len);
        let i = pos - 1;
        self.words[i >> 6] >> (i & 63) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, pos: usize, value: bool) {
        debug_assert!(pos >= 1 && pos <= self.len);
        let i = pos - 1;
        if value {
            self.words[i >> 6] |= 1u64 << (i & 63);
        } else {
            self.words[i >> 6] &= !(1u64 << (i & 63));
        }
    }

    #[inline]
    pub fn flip(&mut self, pos: usize) {
        debug_assert!(pos >= 1 && pos <= self.len);
        let i = pos - 1;
        self.words[i >> 6] ^= 1u64 << (i & 63);
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Cyclic left-rotation by `i`: position j of the result is position
    /// j + i of the input. Negative `i` rotates right.
    pub fn rotate_left(&self, i: isize) -> Self {
        let n = self.len as isize;
        if n == 0 {
            return self.clone();
        }
        let shift = i.rem_euclid(n) as usize;
        let mut out = BitString::zeros(self.len);
        for p in 1..=self.len {
            let src = (p - 1 + shift) % self.len + 1;
            if self.get(src) {
                out.set(p, true);
            }
        }
        out
    }

    /// The bits as a 0/1 byte vector.
    pub fn to_bits(&self) -> Vec<u8> {
        (1..=self.len).map(|p| self.get(p) as u8).collect()
    }

    /// Cyclic window of `count` bits starting at 1-based position `start`.
    pub fn window(&self, start: usize, count: usize) -> Vec<u8> {
        let mut out = Vec::with_capacity(count);
        let mut p = start;
        for _ in 0..count {
            out.push(self.get(p) as u8);
            p += 1;
            if p > self.len {
                p = 1;
            }
        }
        out
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in 1..=self.len {
            f.write_str(if self.get(p) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString({self})")
    }
}

/// A vertex of the middle levels graph: 2n+1 bits with weight n or n+1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MidString {
    n: usize,
    bits: BitString,
}

impl MidString {
    pub fn new(bits: BitString) -> Result<Self, Error> {
        let len = bits.len();
        if len.is_multiple_of(2) || len < 3 {
            return Err(Error::InvalidWeight {
                len,
                weight: bits.weight(),
                expected: [0, 0],
            });
        }
        let n = (len - 1) / 2;
        let w = bits.weight();
        if w != n && w != n + 1 {
            return Err(Error::InvalidWeight {
                len,
                weight: w,
                expected: [n, n + 1],
            });
        }
        Ok(MidString { n, bits })
    }

    pub fn parse(s: &str) -> Result<Self, Error> {
        MidString::new(BitString::parse(s)?)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// 2n+1, the string length and the rotation modulus.
    pub fn modulus(&self) -> usize {
        2 * self.n + 1
    }

    pub fn bits(&self) -> &BitString {
        &self.bits
    }

    pub fn weight(&self) -> usize {
        self.bits.weight()
    }

    /// True for weight n (the lower level A_n).
    pub fn is_lower(&self) -> bool {
        self.weight() == self.n
    }

    /// True for weight n+1 (the upper level B_n).
    pub fn is_upper(&self) -> bool {
        !self.is_lower()
    }

    pub fn get(&self, pos: usize) -> bool {
        self.bits.get(pos)
    }

    /// Flip one bit, staying inside the middle levels.
    pub fn flipped(&self, pos: usize) -> MidString {
        let mut b = self.bits.clone();
        b.flip(pos);
        MidString { n: self.n, bits: b }
    }

    pub fn flip_in_place(&mut self, pos: usize) {
        self.bits.flip(pos);
    }
}

impl fmt::Display for MidString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.bits.fmt(f)
    }
}

impl fmt::Debug for MidString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MidString({})", self.bits)
    }
}

/// Cyclic left-rotation by `i` positions (sigma^i).
pub fn rotate(x: &MidString, i: isize) -> MidString {
    MidString {
        n: x.n,
        bits: x.bits.rotate_left(i),
    }
}

/// The rotation-equivalence class of a middle-levels vertex, stored by its
/// lexicographically least rotation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Necklace {
    canon: MidString,
}

impl Necklace {
    pub fn canon(&self) -> &MidString {
        &self.canon
    }

    pub fn n(&self) -> usize {
        self.canon.n()
    }
}

impl fmt::Display for Necklace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.canon.fmt(f)
    }
}

impl fmt::Debug for Necklace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Necklace({})", self.canon)
    }
}

/// Index of the lexicographically least rotation (Booth's algorithm).
pub fn least_rotation(s: &[u8]) -> usize {
    least_rotation_by(s.len(), |i, j| s[i].cmp(&s[j]))
}

/// Booth's least-rotation over any indexed sequence of length `n`.
pub fn least_rotation_by<F>(n: usize, cmp: F) -> usize
where
    F: Fn(usize, usize) -> std::cmp::Ordering,
{
    if n <= 1 {
        return 0;
    }
    let (mut i, mut j, mut k) = (0usize, 1usize, 0usize);
    while i < n && j < n && k < n {
        match cmp((i + k) % n, (j + k) % n) {
            std::cmp::Ordering::Equal => k += 1,
            std::cmp::Ordering::Greater => {
                i += k + 1;
                if i == j {
                    i += 1;
                }
                k = 0;
            }
            std::cmp::Ordering::Less => {
                j += k + 1;
                if i == j {
                    j += 1;
                }
                k = 0;
            }
        }
    }
    i.min(j)
}

/// Canonical necklace of a middle-levels vertex.
pub fn necklace_of(x: &MidString) -> Necklace {
    let bits = x.bits.to_bits();
    let r = least_rotation(&bits);
    Necklace {
        canon: rotate(x, r as isize),
    }
}

/// A 64-bit key identifying the necklace of `x`; exact for 2n+1 <= 63.
pub fn necklace_key(x: &MidString) -> u64 {
    assert!(x.modulus() <= 63, "necklace_key needs 2n+1 <= 63");
    let bits = x.bits.to_bits();
    let r = least_rotation(&bits);
    let m = bits.len();
    let mut key = 1u64; // leading marker so that lengths disambiguate
    for t in 0..m {
        key = key << 1 | bits[(r + t) % m] as u64;
    }
    key
}

/// True iff `w` is a Dyck word: balanced, with non-negative prefix excess.
pub fn is_dyck(w: &[u8]) -> bool {
    let mut excess: i64 = 0;
    for &b in w {
        excess += if b != 0 { 1 } else { -1 };
        if excess < 0 {
            return false;
        }
    }
    excess == 0
}

/// The unique rotation offset exposing the rooted tree of `x`.
///
/// For weight n the first 2n bits of `sigma^ell(x)` form a Dyck word; for
/// weight n+1 the last 2n bits do.
pub fn ell(x: &MidString) -> usize {
    let m = x.modulus();
    let bits = x.bits.to_bits();
    // Prefix sums of +-1; by the cycle lemma the valid start is pinned by
    // the first (weight n) or last (weight n+1) minimum of the prefix sums.
    let mut sum: i64 = 0;
    let mut min: i64 = i64::MAX;
    let mut first_min = 0usize;
    let mut last_min = 0usize;
    for (k, &b) in bits.iter().enumerate() {
        sum += if b != 0 { 1 } else { -1 };
        if sum < min {
            min = sum;
            first_min = k + 1;
            last_min = k + 1;
        } else if sum == min {
            last_min = k + 1;
        }
    }
    let l = if x.is_lower() {
        first_min % m
    } else {
        last_min % m
    };
    debug_assert!(check_ell(x, l));
    l
}

fn check_ell(x: &MidString, l: usize) -> bool {
    let m = x.modulus();
    let w = if x.is_lower() {
        x.bits.window(l % m + 1, m - 1)
    } else {
        x.bits.window((l + 1) % m + 1, m - 1)
    };
    is_dyck(&w)
}

/// The rooted tree of `x` as a Dyck word of length 2n.
pub fn tree_of(x: &MidString) -> Vec<u8> {
    tree_of_with_ell(x, ell(x))
}

/// As [`tree_of`], with `ell(x)` already known.
pub fn tree_of_with_ell(x: &MidString, l: usize) -> Vec<u8> {
    let m = x.modulus();
    if x.is_lower() {
        // sigma^l(x) = t(x) 0
        x.bits.window(l % m + 1, m - 1)
    } else {
        // sigma^l(x) = 1 t(x)
        x.bits.window((l + 1) % m + 1, m - 1)
    }
}

/// Position representative in 1..=m of an integer.
#[inline]
pub fn pos_mod(value: i64, m: usize) -> usize {
    (value - 1).rem_euclid(m as i64) as usize + 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ms(s: &str) -> MidString {
        MidString::parse(s).unwrap()
    }

    #[test]
    fn rotate_basics() {
        let x = ms("1110000");
        assert_eq!(rotate(&x, 1).to_string(), "1100001");
        assert_eq!(rotate(&x, 0), x);
        assert_eq!(rotate(&rotate(&x, 3), -3), x);
        assert_eq!(rotate(&x, 7), x);
    }

    #[test]
    fn necklace_canonical() {
        let x = ms("11000");
        assert_eq!(necklace_of(&x).canon().to_string(), "00011");
        for i in 0..5 {
            assert_eq!(necklace_of(&rotate(&x, i)), necklace_of(&x));
        }
    }

    #[test]
    fn necklace_counts_small() {
        // 10 necklaces for n = 3, and in general 2 * Catalan(n).
        for (n, expect) in [(1usize, 2usize), (2, 4), (3, 10), (4, 28)] {
            let mut canons = std::collections::HashSet::new();
            for x in all_mid_strings(n) {
                canons.insert(necklace_of(&x).canon().to_string());
            }
            assert_eq!(canons.len(), expect, "n = {n}");
            // every necklace has exactly 2n+1 distinct rotations
            assert_eq!(canons.len() * (2 * n + 1), count_mid_strings(n));
        }
    }

    fn all_mid_strings(n: usize) -> Vec<MidString> {
        let m = 2 * n + 1;
        (0u32..1 << m)
            .filter_map(|mask| {
                let w = mask.count_ones() as usize;
                if w == n || w == n + 1 {
                    let bits: Vec<u8> = (0..m).map(|i| (mask >> i & 1) as u8).collect();
                    Some(MidString::new(BitString::from_bits(&bits)).unwrap())
                } else {
                    None
                }
            })
            .collect()
    }

    fn count_mid_strings(n: usize) -> usize {
        all_mid_strings(n).len()
    }

    #[test]
    fn ell_examples() {
        assert_eq!(ell(&ms("1110000")), 0);
        assert_eq!(ell(&ms("0000111")), 4);
        assert_eq!(ell(&ms("1110100")), 0);
        assert_eq!(tree_of(&ms("1110100")), vec![1, 1, 0, 1, 0, 0]);
        assert_eq!(tree_of(&ms("1110000")), vec![1, 1, 1, 0, 0, 0]);
    }

    #[test]
    fn ell_matches_naive_scan() {
        for n in 1..=8 {
            for x in all_mid_strings(n) {
                let m = x.modulus();
                let fast = ell(&x);
                let mut found = Vec::new();
                for l in 0..m {
                    if check_ell(&x, l) {
                        found.push(l);
                    }
                }
                assert_eq!(found, vec![fast], "x = {x}");
            }
        }
    }

    #[test]
    fn tree_of_is_rotation_invariant() {
        for n in 2..=5 {
            for x in all_mid_strings(n) {
                let t = tree_of(&x);
                assert!(is_dyck(&t));
                for k in 0..x.modulus() {
                    assert_eq!(tree_of(&rotate(&x, k as isize)), t);
                }
            }
        }
    }

    #[test]
    fn dyck_recognition() {
        assert!(is_dyck(&[]));
        assert!(is_dyck(&[1, 1, 0, 1, 0, 0]));
        assert!(!is_dyck(&[1, 0, 1]));
        assert!(!is_dyck(&[0, 1]));
    }

    #[test]
    fn booth_matches_naive() {
        // compare against the naive minimum over all rotations
        let mut s = 0x12345678u64;
        let mut next = || {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            s
        };
        for len in 1..=24usize {
            for _ in 0..50 {
                let bits: Vec<u8> = (0..len).map(|_| (next() & 1) as u8).collect();
                let idx = least_rotation(&bits);
                let rot = |r: usize| -> Vec<u8> { (0..len).map(|t| bits[(r + t) % len]).collect() };
                let best = (0..len).map(&rot).min().unwrap();
                assert_eq!(rot(idx), best);
            }
        }
    }

    #[test]
    fn weight_validation() {
        assert!(MidString::parse("1111100").is_err());
        assert!(MidString::parse("110").is_ok());
        assert!(MidString::parse("1100").is_err());
    }
}
