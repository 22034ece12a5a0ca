//! Switches: pairs of single-bit flips from one vertex landing in the same
//! necklace. The three constructions used by the planner change the shift
//! of a flip sequence by +1, +2, or -d, and the planner combines at most
//! two of them to repair a shift that is not coprime to 2n+1.

use crate::arcs::Arc;
use crate::bits::{necklace_of, rotate, tree_of, BitString, MidString};
use crate::error::Error;
use crate::factor::f_apply;

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Multiplicative inverse modulo odd m (requires gcd(a, m) = 1).
pub fn mod_inverse(a: usize, m: usize) -> usize {
    let (mut old_r, mut r) = (a as i64, m as i64);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    assert_eq!(old_r, 1, "not coprime");
    old_s.rem_euclid(m as i64) as usize
}

/// Prime factors of m without multiplicity, by trial division.
pub fn prime_factors(mut m: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2usize;
    while p * p <= m {
        if m.is_multiple_of(p) {
            out.push(p);
            while m.is_multiple_of(p) {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// The (s,d)-orbit: the maximal prefix of s, s+d, s+2d, ... modulo 2n+1
/// (representatives 1..=2n+1) with pairwise distinct entries.
pub fn orbit(s: usize, d: usize, n: usize) -> Vec<usize> {
    let m = 2 * n + 1;
    let len = m / gcd(m, d);
    let mut out = Vec::with_capacity(len);
    let mut cur = s;
    for _ in 0..len {
        out.push(cur);
        cur = (cur + d - 1) % m + 1;
    }
    out
}

/// Which of the two f-edges of a switch lies on the factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Conformality {
    /// x = f(y'): the edge (y', x) follows f.
    PlusF,
    /// x = f(y): the edge (y, x) follows f, so the inverted switch is the
    /// conformal one.
    MinusF,
}

/// The switch constructions usable by the planner.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SwitchKind {
    /// Shift +1: all ones first, flip targets at the last and middle zero.
    Tau1,
    /// Shift +2: the alternating string, flip targets in the last two bits.
    Tau2,
    /// Shift d for a divisor d of 2n+1, built on the (1,d)-orbit.
    TauDz { d: usize },
}

/// A switch (x, y, y'): flipping x at either recorded position lands in
/// the same necklace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Switch {
    pub kind: SwitchKind,
    pub x: MidString,
    pub p_y: usize,
    pub p_y_alt: usize,
    /// lambda(tau): y = sigma^shift(y').
    pub shift: usize,
    pub conformality: Conformality,
    /// Whether the f-edge lies on a subpath reversed by a gluing cycle of
    /// the spanning-tree pairs.
    pub reversed: bool,
    /// Signed change of the flip-sequence shift when this switch fires.
    pub effective_shift: i64,
}

impl Switch {
    pub fn y(&self) -> MidString {
        self.x.flipped(self.p_y)
    }

    pub fn y_alt(&self) -> MidString {
        self.x.flipped(self.p_y_alt)
    }

    /// The tree form of the vertex from which the switch is detected while
    /// generating (the upper endpoint of its f-edge).
    pub fn detect_tree(&self) -> Vec<u8> {
        match self.conformality {
            Conformality::MinusF => tree_of(&self.y()),
            Conformality::PlusF => tree_of(&self.y_alt()),
        }
    }
}

/// Builds one of the switch constructions.
pub fn make_switch(n: usize, kind: SwitchKind) -> Result<Switch, Error> {
    let m = 2 * n + 1;
    let sw = match kind {
        SwitchKind::Tau1 => {
            if n < 1 {
                return Err(Error::OutOfRange("tau1 needs n >= 1".into()));
            }
            let mut bits = vec![1u8; n];
            bits.extend(std::iter::repeat_n(0, n + 1));
            Switch {
                kind,
                x: MidString::new(BitString::from_bits(&bits))?,
                p_y: m,
                p_y_alt: n + 1,
                shift: 1,
                conformality: Conformality::MinusF,
                reversed: true,
                effective_shift: 1,
            }
        }
        SwitchKind::Tau2 => {
            if n < 2 {
                return Err(Error::OutOfRange("tau2 needs n >= 2".into()));
            }
            let mut bits = Vec::with_capacity(m);
            for _ in 0..n - 1 {
                bits.extend_from_slice(&[1, 0]);
            }
            bits.extend_from_slice(&[1, 0, 0]);
            Switch {
                kind,
                x: MidString::new(BitString::from_bits(&bits))?,
                p_y: m - 1,
                p_y_alt: m,
                shift: 2,
                conformality: Conformality::PlusF,
                reversed: false,
                effective_shift: 2,
            }
        }
        SwitchKind::TauDz { d } => {
            if n < 11 {
                return Err(Error::OutOfRange("taudz needs n >= 11".into()));
            }
            if d < 3 || !m.is_multiple_of(d) || m / d < 3 {
                return Err(Error::OutOfRange(format!(
                    "taudz needs 2n+1 = c*d with c, d >= 3, got d = {d}"
                )));
            }
            let c = m / d;
            let half = (d - 1) / 2;
            let z = |bits: &mut Vec<u8>| {
                bits.extend(std::iter::repeat_n(1, half));
                bits.extend(std::iter::repeat_n(0, half));
            };
            let mut bits = Vec::with_capacity(m);
            for _ in 0..(c - 1) / 2 {
                bits.push(1);
                z(&mut bits);
            }
            bits.push(0);
            z(&mut bits);
            for _ in 0..(c - 3) / 2 {
                bits.push(0);
                z(&mut bits);
            }
            bits.push(0);
            z(&mut bits);
            Switch {
                kind,
                x: MidString::new(BitString::from_bits(&bits))?,
                p_y: d * (c - 1) + 1,
                p_y_alt: d * (c - 1) / 2 + 1,
                shift: d,
                conformality: Conformality::MinusF,
                reversed: false,
                effective_shift: -(d as i64),
            }
        }
    };
    debug_assert!(check_switch(&sw));
    Ok(sw)
}

/// Definitional validation: both flips land in one necklace, the shift
/// matches, and the declared f-edge follows f.
pub fn check_switch(sw: &Switch) -> bool {
    let y = sw.y();
    let ya = sw.y_alt();
    if necklace_of(&y) != necklace_of(&ya) || y == ya {
        return false;
    }
    let edge_ok = match sw.conformality {
        Conformality::MinusF => f_apply(&y) == sw.x,
        Conformality::PlusF => f_apply(&ya) == sw.x,
    };
    edge_ok && rotate(&ya, sw.shift as isize) == y
}

/// A repair plan: at most two switches whose effective shifts move the
/// initial shift to one coprime to 2n+1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SwitchPlan {
    pub switches: Vec<Switch>,
    pub s_before: usize,
    pub s_after: usize,
}

impl SwitchPlan {
    pub fn is_empty(&self) -> bool {
        self.switches.is_empty()
    }
}

/// Chooses switches making the shift coprime to 2n+1.
pub fn plan_switches(n: usize, s: usize) -> Result<SwitchPlan, Error> {
    if n <= 3 {
        return Err(Error::SmallN(n));
    }
    let m = 2 * n + 1;
    let s = s % m;
    if gcd(s, m) == 1 {
        return Ok(SwitchPlan {
            switches: Vec::new(),
            s_before: s,
            s_after: s,
        });
    }
    if n <= 10 {
        for delta in 1..=3usize {
            if gcd((s + delta) % m, m) == 1 {
                let switches = match delta {
                    1 => vec![make_switch(n, SwitchKind::Tau1)?],
                    2 => vec![make_switch(n, SwitchKind::Tau2)?],
                    _ => vec![
                        make_switch(n, SwitchKind::Tau1)?,
                        make_switch(n, SwitchKind::Tau2)?,
                    ],
                };
                return Ok(SwitchPlan {
                    switches,
                    s_before: s,
                    s_after: (s + delta) % m,
                });
            }
        }
        unreachable!("some delta in 1..=3 repairs every non-coprime shift for n <= 10");
    }
    let factors = prime_factors(m);
    if factors.len() == 1 {
        // prime power: s is a power of the same prime, so s+1 is coprime
        return Ok(SwitchPlan {
            switches: vec![make_switch(n, SwitchKind::Tau1)?],
            s_before: s,
            s_after: (s + 1) % m,
        });
    }
    let missing: Vec<usize> = factors
        .iter()
        .copied()
        .filter(|&p| !s.is_multiple_of(p))
        .collect();
    if !missing.is_empty() && s != 0 {
        let d: usize = missing.iter().product();
        let s_after = (s as i64 - d as i64).rem_euclid(m as i64) as usize;
        return Ok(SwitchPlan {
            switches: vec![make_switch(n, SwitchKind::TauDz { d })?],
            s_before: s,
            s_after,
        });
    }
    // every prime of 2n+1 divides s: use the smallest prime first, which
    // leaves the remaining primes missing for a second switch
    let d = factors[0];
    let s1 = (s as i64 - d as i64).rem_euclid(m as i64) as usize;
    let d2: usize = factors
        .iter()
        .copied()
        .filter(|&p| !s1.is_multiple_of(p))
        .product();
    debug_assert_ne!(d, d2);
    let s_after = (s1 as i64 - d2 as i64).rem_euclid(m as i64) as usize;
    Ok(SwitchPlan {
        switches: vec![
            make_switch(n, SwitchKind::TauDz { d })?,
            make_switch(n, SwitchKind::TauDz { d: d2 })?,
        ],
        s_before: s,
        s_after,
    })
}

/// True iff no gluing cycle of any arc removes the switch's f-edge.
pub fn usable_wrt(sw: &Switch, arcs: &[Arc]) -> bool {
    // The f-edge's upper endpoint determines the edge; it collides only
    // with the (x^5, x^6) edges of gluing cycles, whose upper endpoint has
    // tree rho^3 of the pair's pullable tree.
    let source_tree = sw.detect_tree();
    arcs.iter().all(|arc| {
        let r3 = arc.pair.x().rho_pow(3);
        r3.as_slice() != &source_tree[..]
    })
}

/// Catalan number modulo 2n+1 by the additive convolution recurrence;
/// division-free since the modulus is composite in general.
pub fn catalan_mod(n: usize) -> usize {
    let m = (2 * n + 1) as u64;
    let mut c = vec![0u64; n + 1];
    c[0] = 1 % m;
    for k in 1..=n {
        let mut acc = 0u64;
        for i in 0..k {
            acc += c[i] * c[k - 1 - i];
            if acc >= (1 << 62) {
                acc %= m;
            }
        }
        c[k] = acc % m;
    }
    c[n] as usize
}
