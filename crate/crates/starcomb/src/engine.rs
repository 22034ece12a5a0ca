//! The streaming generator: walks the glued Hamilton structure with O(n)
//! work per combination and O(n) memory, supports an arbitrary start
//! combination, and realizes any target shift coprime to 2n+1 by scaling
//! all emitted positions.

use crate::arcs::arc_of;
use crate::bits::{ell, pos_mod, BitString, MidString};
use crate::error::Error;
pub use crate::switching::catalan_mod;
use crate::switching::{gcd, mod_inverse, plan_switches, SwitchKind, SwitchPlan};
use crate::trees::{
    match_close, pull_slice, pullable_decomp, pullable_form, push_slice, pushable_form,
    rho_inv_slice, RootedTree,
};

/// Traversal direction along the factor paths.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Reversed,
}

/// The decision taken for one generation step.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepKind {
    /// Apply the factor bijection.
    FStep,
    /// Apply its inverse (on a subpath reversed by a gluing cycle).
    FInvStep,
    /// Take a non-factor edge of a gluing cycle: 0 joins the pullable
    /// vertex to the pushed path, 1 bridges between the two paths, 2
    /// short-cuts across the reversed subpath.
    GlueEdge(u8),
    /// Fire the k-th planned switch.
    SwitchFlip(u8),
}

/// One generated combination and the swap position leading to the next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Emission {
    /// Position in 1..=2n+1 whose bit is swapped with the first bit.
    pub flip_position: usize,
    /// The current combination, length 2n+2.
    pub combination: BitString,
}

/// A planned switch in detection form.
#[derive(Clone, Debug)]
struct PlannedSwitch {
    detect: Vec<u8>,
    fires_forward: bool,
    source_upper: bool,
    emit_offset: i64,
    dl: i64,
}

impl PlannedSwitch {
    fn new(kind: SwitchKind, n: usize) -> Self {
        let m = 2 * n + 1;
        match kind {
            SwitchKind::Tau1 => {
                let mut detect = vec![1u8; n];
                detect.extend(std::iter::repeat_n(0, n));
                PlannedSwitch {
                    detect,
                    fires_forward: false,
                    source_upper: false,
                    emit_offset: n as i64 + 1,
                    dl: 0,
                }
            }
            SwitchKind::Tau2 => {
                let mut detect = Vec::with_capacity(2 * n);
                for _ in 0..n {
                    detect.extend_from_slice(&[1, 0]);
                }
                PlannedSwitch {
                    detect,
                    fires_forward: true,
                    source_upper: true,
                    emit_offset: 2,
                    dl: 3,
                }
            }
            SwitchKind::TauDz { d } => {
                let c = m / d;
                let half = (d - 1) / 2;
                let mut detect = Vec::with_capacity(2 * n);
                let z = |out: &mut Vec<u8>| {
                    out.extend(std::iter::repeat_n(1, half));
                    out.extend(std::iter::repeat_n(0, half));
                };
                z(&mut detect);
                for _ in 0..(c - 1) / 2 {
                    detect.push(1);
                    z(&mut detect);
                }
                for _ in 0..(c - 1) / 2 {
                    detect.push(0);
                    z(&mut detect);
                }
                PlannedSwitch {
                    detect,
                    fires_forward: true,
                    source_upper: true,
                    emit_offset: (d * (c - 1) / 2 + 1) as i64,
                    dl: 1 - d as i64,
                }
            }
        }
    }
}

/// Precomputed table for n <= 3, where the construction is hardcoded.
#[derive(Clone, Debug)]
struct SmallCycle {
    table: Vec<(BitString, usize)>,
    cursor: usize,
}

/// How the cached pair of the current plane-tree class changes.
enum PairUpdate {
    Keep,
    Set(Option<(Vec<u8>, Vec<u8>)>),
    Recompute,
}

struct Action {
    kind: StepKind,
    q: usize,
    dl: i64,
    new_dir: Direction,
    pair_update: PairUpdate,
}

enum Member {
    No,
    ViaCurrent,
    ViaOther,
}

/// The generator state.
pub struct GenState {
    n: usize,
    m: usize,
    x: MidString,
    ell: usize,
    dir: Direction,
    cur_pair: Option<(Vec<u8>, Vec<u8>)>,
    plan: SwitchPlan,
    planned: Vec<PlannedSwitch>,
    scale: usize,
    out: BitString,
    emitted: u64,
    small: Option<SmallCycle>,
}

impl GenState {
    /// Prepares generation for the given size and target shift, optionally
    /// from an arbitrary start combination.
    ///
    /// Without a start the ordering begins at a block boundary (the
    /// column-scaled image of the canonical start); with one, it is the
    /// same cyclic ordering rotated to begin at the given combination.
    pub fn init(n: usize, target_shift: usize, start: Option<&BitString>) -> Result<Self, Error> {
        if n == 0 {
            return Err(Error::OutOfRange("n must be positive".into()));
        }
        let m = 2 * n + 1;
        let sh = target_shift % m;
        if sh == 0 || gcd(sh, m) != 1 {
            return Err(Error::NotCoprime {
                shift: target_shift,
                modulus: m,
            });
        }
        if let Some(b) = start {
            if b.len() != 2 * n + 2 || b.weight() != n + 1 {
                return Err(Error::BadStart(format!(
                    "need length {} and weight {}, got length {} weight {}",
                    2 * n + 2,
                    n + 1,
                    b.len(),
                    b.weight()
                )));
            }
        }

        if n <= 3 {
            let small = build_small(n, sh, start)?;
            let mut v = BitString::zeros(m);
            for p in 1..=n {
                v.set(p, true);
            }
            let out = small.table[small.cursor].0.clone();
            return Ok(GenState {
                n,
                m,
                x: MidString::new(v)?,
                ell: 0,
                dir: Direction::Forward,
                cur_pair: None,
                plan: SwitchPlan {
                    switches: Vec::new(),
                    s_before: 1,
                    s_after: 1,
                },
                planned: Vec::new(),
                scale: sh,
                out,
                emitted: 0,
                small: Some(small),
            });
        }

        let s = catalan_mod(n);
        let plan = plan_switches(n, s)?;
        Self::init_with_plan(n, sh, start, plan)
    }

    /// Core initialization once the switch plan is fixed. Separated so
    /// that tests can force specific switches onto sizes that would not
    /// otherwise need them.
    pub(crate) fn init_with_plan(
        n: usize,
        sh: usize,
        start: Option<&BitString>,
        plan: SwitchPlan,
    ) -> Result<Self, Error> {
        let m = 2 * n + 1;
        let s_after = plan.s_after;
        let scale = mod_inverse(s_after % m, m) * sh % m;
        let planned: Vec<PlannedSwitch> = plan
            .switches
            .iter()
            .map(|sw| {
                let ps = PlannedSwitch::new(sw.kind, n);
                debug_assert_eq!(ps.detect, sw.detect_tree());
                ps
            })
            .collect();

        // internal start: the canonical start vertex, or the preimage of
        // the requested combination under the column scaling
        let (x, start_bits) = match start {
            Some(b) => {
                let mut v_bits = BitString::zeros(m);
                for q in 1..=m {
                    let col = pos_mod(q as i64 * scale as i64, m);
                    if b.get(1 + col) {
                        v_bits.set(q, true);
                    }
                }
                (MidString::new(v_bits)?, b.clone())
            }
            None => {
                let mut v_bits = BitString::zeros(m);
                for p in 1..=n {
                    v_bits.set(p, true);
                }
                let v = MidString::new(v_bits)?;
                let mut out = BitString::zeros(2 * n + 2);
                out.set(1, true); // the suffix has weight n
                for q in 1..=m {
                    if v.get(q) {
                        out.set(1 + pos_mod(q as i64 * scale as i64, m), true);
                    }
                }
                (v, out)
            }
        };
        let ell0 = ell(&x);
        let mut state = GenState {
            n,
            m,
            x,
            ell: ell0,
            dir: Direction::Forward,
            cur_pair: None,
            plan,
            planned,
            scale,
            out: start_bits,
            emitted: 0,
            small: None,
        };
        let r = state.tree_view();
        state.cur_pair = arc_of_slice(&r);
        state.dir = state.initial_direction(&r);
        Ok(state)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> usize {
        self.m
    }

    pub fn emitted(&self) -> u64 {
        self.emitted
    }

    pub fn plan(&self) -> &SwitchPlan {
        &self.plan
    }

    /// The column-permutation factor applied to all emitted positions.
    pub fn scale(&self) -> usize {
        self.scale
    }

    /// The realized internal shift after switching.
    pub fn realized_shift(&self) -> usize {
        self.plan.s_after
    }

    /// Total number of combinations in one full cycle, if it fits in u64.
    pub fn total_count(n: usize) -> Option<u64> {
        let mut acc: u128 = 1;
        for i in 0..n + 1 {
            acc = acc.checked_mul((2 * n + 2 - i) as u128)?;
            acc /= (i + 1) as u128;
            if acc > u64::MAX as u128 {
                return None;
            }
        }
        u64::try_from(acc).ok()
    }

    /// Heap footprint in bytes (grows linearly with n).
    pub fn heap_bytes(&self) -> usize {
        let bitstring = |b: &BitString| b.len().div_ceil(64) * 8;
        let mut total = bitstring(self.x.bits()) + bitstring(&self.out);
        if let Some((a, b)) = &self.cur_pair {
            total += a.capacity() + b.capacity();
        }
        for ps in &self.planned {
            total += ps.detect.capacity();
        }
        for sw in &self.plan.switches {
            total += bitstring(sw.x.bits());
        }
        if let Some(sm) = &self.small {
            total += sm.table.len() * (bitstring(&sm.table[0].0) + 8);
        }
        total
    }

    /// The rooted-tree view of the current vertex.
    fn tree_view(&self) -> Vec<u8> {
        let start = if self.x.is_lower() {
            self.ell % self.m + 1
        } else {
            (self.ell + 1) % self.m + 1
        };
        self.x.bits().window(start, self.m - 1)
    }

    /// Membership of the candidate pair in the spanning-tree pair set. The
    /// candidate always has one side in the current class; `other` is a
    /// representative of the other side's class.
    fn membership(&self, px: &[u8], py: &[u8], other: &[u8]) -> Member {
        if let Some((cx, cy)) = &self.cur_pair {
            if cx == px && cy == py {
                return Member::ViaCurrent;
            }
        }
        match arc_of_slice(other) {
            Some((ax, ay)) if ax == px && ay == py => Member::ViaOther,
            _ => Member::No,
        }
    }

    fn pair_update_for(member: Member, px: &[u8], py: &[u8]) -> PairUpdate {
        match member {
            Member::No => unreachable!("only called on members"),
            Member::ViaCurrent => PairUpdate::Recompute,
            Member::ViaOther => PairUpdate::Set(Some((px.to_vec(), py.to_vec()))),
        }
    }

    /// Decides the next step without advancing.
    fn resolve(&self) -> Action {
        let m = self.m;
        let l = self.ell as i64;
        let r = self.tree_view();
        match (self.dir, self.x.is_lower()) {
            (Direction::Forward, true) => {
                if pullable_form(&r) {
                    let py = pull_slice(&r);
                    match self.membership(&r, &py, &py) {
                        Member::No => {}
                        via => {
                            return Action {
                                kind: StepKind::GlueEdge(0),
                                q: pos_mod(l + 3, m),
                                dl: 0,
                                new_dir: Direction::Forward,
                                pair_update: Self::pair_update_for(via, &r, &py),
                            }
                        }
                    }
                } else if pushable_form(&r) {
                    let px = push_slice(&r);
                    match self.membership(&px, &r, &px) {
                        Member::No => {}
                        via => {
                            let ulen = pullable_decomp(&px).0 as i64;
                            return Action {
                                kind: StepKind::GlueEdge(1),
                                q: pos_mod(l + ulen + 4, m),
                                dl: 2,
                                new_dir: Direction::Reversed,
                                pair_update: Self::pair_update_for(via, &px, &r),
                            };
                        }
                    }
                }
                Action {
                    kind: StepKind::FStep,
                    q: pos_mod(l + match_close(&r) as i64 + 1, m),
                    dl: 0,
                    new_dir: Direction::Forward,
                    pair_update: PairUpdate::Keep,
                }
            }
            (Direction::Forward, false) => {
                if ends_in_one_zero(&r) {
                    let xm3 = rho_inv3(&r);
                    if pullable_form(&xm3) {
                        let py = pull_slice(&xm3);
                        match self.membership(&xm3, &py, &py) {
                            Member::No => {}
                            via => {
                                let ulen = pullable_decomp(&xm3).0 as i64;
                                return Action {
                                    kind: StepKind::GlueEdge(1),
                                    q: pos_mod(l + ulen + 2, m),
                                    dl: -2,
                                    new_dir: Direction::Reversed,
                                    pair_update: Self::pair_update_for(via, &xm3, &py),
                                };
                            }
                        }
                    }
                }
                for (i, ps) in self.planned.iter().enumerate() {
                    if ps.fires_forward && ps.source_upper && r == ps.detect {
                        return Action {
                            kind: StepKind::SwitchFlip(i as u8),
                            q: pos_mod(l + ps.emit_offset, m),
                            dl: ps.dl,
                            new_dir: Direction::Forward,
                            pair_update: PairUpdate::Keep,
                        };
                    }
                }
                Action {
                    kind: StepKind::FStep,
                    q: pos_mod(l + 1, m),
                    dl: 1,
                    new_dir: Direction::Forward,
                    pair_update: PairUpdate::Keep,
                }
            }
            (Direction::Reversed, true) => {
                if ends_in_one_zero(&r) {
                    let xm3 = rho_inv3(&r);
                    if pullable_form(&xm3) {
                        let py = pull_slice(&xm3);
                        if !matches!(self.membership(&xm3, &py, &py), Member::No) {
                            return Action {
                                kind: StepKind::GlueEdge(2),
                                q: pos_mod(l - 1, m),
                                dl: -3,
                                new_dir: Direction::Forward,
                                pair_update: PairUpdate::Keep,
                            };
                        }
                    }
                }
                for (i, ps) in self.planned.iter().enumerate() {
                    if !ps.fires_forward && !ps.source_upper && r == ps.detect {
                        return Action {
                            kind: StepKind::SwitchFlip(i as u8),
                            q: pos_mod(l + ps.emit_offset, m),
                            dl: ps.dl,
                            new_dir: Direction::Reversed,
                            pair_update: PairUpdate::Keep,
                        };
                    }
                }
                Action {
                    kind: StepKind::FInvStep,
                    q: pos_mod(l, m),
                    dl: -1,
                    new_dir: Direction::Reversed,
                    pair_update: PairUpdate::Keep,
                }
            }
            (Direction::Reversed, false) => {
                let w = rho_inv_slice(&r);
                if pullable_form(&w) {
                    let py = pull_slice(&w);
                    if !matches!(self.membership(&w, &py, &py), Member::No) {
                        return Action {
                            kind: StepKind::GlueEdge(2),
                            q: pos_mod(l + 2, m),
                            dl: 3,
                            new_dir: Direction::Forward,
                            pair_update: PairUpdate::Keep,
                        };
                    }
                } else if pushable_form(&w) {
                    let px = push_slice(&w);
                    match self.membership(&px, &w, &px) {
                        Member::No => {}
                        via => {
                            return Action {
                                kind: StepKind::GlueEdge(0),
                                q: pos_mod(l + 3, m),
                                dl: 0,
                                new_dir: Direction::Reversed,
                                pair_update: Self::pair_update_for(via, &px, &w),
                            };
                        }
                    }
                }
                Action {
                    kind: StepKind::FInvStep,
                    q: pos_mod(l + match_close(&w) as i64 + 1, m),
                    dl: 0,
                    new_dir: Direction::Reversed,
                    pair_update: PairUpdate::Keep,
                }
            }
        }
    }

    /// The kind of the next step (does not advance the generator).
    pub fn classify_step(&self) -> StepKind {
        if self.small.is_some() {
            return StepKind::FStep;
        }
        self.resolve().kind
    }

    fn apply(&mut self, act: &Action) {
        self.x.flip_in_place(act.q);
        self.ell = (self.ell as i64 + act.dl).rem_euclid(self.m as i64) as usize;
        self.dir = act.new_dir;
        match &act.pair_update {
            PairUpdate::Keep => {}
            PairUpdate::Set(p) => self.cur_pair = p.clone(),
            PairUpdate::Recompute => {
                let r = self.tree_view();
                self.cur_pair = arc_of_slice(&r);
            }
        }
    }

    /// Emits the current combination and advances one step.
    pub fn next_emission(&mut self) -> Emission {
        if let Some(small) = &mut self.small {
            let (combination, flip_position) = small.table[small.cursor].clone();
            small.cursor = (small.cursor + 1) % small.table.len();
            self.emitted += 1;
            return Emission {
                flip_position,
                combination,
            };
        }
        let combination = self.out.clone();
        let act = self.resolve();
        let flip_position = pos_mod(act.q as i64 * self.scale as i64, self.m);
        self.apply(&act);
        self.out.flip(1);
        self.out.flip(1 + flip_position);
        self.emitted += 1;
        Emission {
            flip_position,
            combination,
        }
    }

    /// Direction reconstruction at an arbitrary start vertex: reversed iff
    /// the vertex lies strictly inside a reversed subpath of a gluing
    /// cycle of the pair set.
    fn initial_direction(&self, r: &[u8]) -> Direction {
        let hops = if self.x.is_lower() { 2 } else { 3 };
        let mut cur = r.to_vec();
        for _ in 0..hops {
            cur = rho_inv_slice(&cur);
            if pullable_form(&cur) {
                let py = pull_slice(&cur);
                if !matches!(self.membership(&cur, &py, &py), Member::No) {
                    return Direction::Reversed;
                }
            }
        }
        Direction::Forward
    }
}

fn ends_in_one_zero(r: &[u8]) -> bool {
    r.len() >= 2 && r[r.len() - 2] == 1 && r[r.len() - 1] == 0
}

fn rho_inv3(r: &[u8]) -> Vec<u8> {
    rho_inv_slice(&rho_inv_slice(&rho_inv_slice(r)))
}

/// The pair of the class of `r`, as raw encodings; None for the star.
fn arc_of_slice(r: &[u8]) -> Option<(Vec<u8>, Vec<u8>)> {
    let t = RootedTree::from_bits(r.to_vec()).expect("valid tree view");
    match arc_of(&t) {
        Ok(a) => Some((
            a.pair.x().as_slice().to_vec(),
            a.pair.y().as_slice().to_vec(),
        )),
        Err(Error::IsStar) => None,
        Err(e) => panic!("arc computation failed: {e}"),
    }
}

/// Builds the full table for n <= 3 from the hardcoded initial blocks.
fn build_small(n: usize, sh: usize, start: Option<&BitString>) -> Result<SmallCycle, Error> {
    let m = 2 * n + 1;
    let (w0, alpha): (&str, &[usize]) = match n {
        1 => ("100", &[2, 1]),
        2 => ("11000", &[5, 1, 3, 5]),
        3 => ("1110000", &[6, 2, 5, 3, 4, 6, 2, 1, 3, 5]),
        _ => unreachable!("small table only for n <= 3"),
    };
    let scale = sh; // the hardcoded blocks have shift 1
    let v0 = MidString::parse(w0)?;
    let mut out = BitString::zeros(2 * n + 2);
    out.set(1, v0.is_lower());
    for q in 1..=m {
        if v0.get(q) {
            out.set(1 + pos_mod(q as i64 * scale as i64, m), true);
        }
    }
    let total = GenState::total_count(n).expect("tiny count");
    let mut table = Vec::with_capacity(total as usize);
    let mut combo = out;
    for b in 0..m {
        for &a in alpha {
            let q = pos_mod(a as i64 + b as i64, m);
            let qh = pos_mod(q as i64 * scale as i64, m);
            table.push((combo.clone(), qh));
            combo.flip(1);
            combo.flip(1 + qh);
        }
    }
    debug_assert_eq!(table.len() as u64, total);
    debug_assert_eq!(&combo, &table[0].0, "hardcoded cycle must close");
    let cursor = match start {
        None => 0,
        Some(s) => table
            .iter()
            .position(|(c, _)| c == s)
            .ok_or_else(|| Error::BadStart(s.to_string()))?,
    };
    Ok(SmallCycle { table, cursor })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn run(n: usize, shift: usize, start: Option<&BitString>, steps: u64) -> Vec<Emission> {
        let mut g = GenState::init(n, shift, start).unwrap();
        (0..steps).map(|_| g.next_emission()).collect()
    }

    fn check_star_steps(ems: &[Emission]) {
        for w in ems.windows(2) {
            let a = &w[0].combination;
            let b = &w[1].combination;
            let p = w[0].flip_position;
            assert_ne!(a.get(1), a.get(1 + p), "swapped bits are complementary");
            assert_eq!(a.get(1), b.get(1 + p));
            assert_eq!(a.get(1 + p), b.get(1));
            for r in 1..=a.len() {
                if r != 1 && r != 1 + p {
                    assert_eq!(a.get(r), b.get(r));
                }
            }
        }
    }

    #[test]
    fn small_tables_cycle() {
        for n in 1..=3usize {
            let total = GenState::total_count(n).unwrap();
            let ems = run(n, 1, None, total + 1);
            assert_eq!(ems[0].combination.to_string(), {
                let mut s = "1".repeat(n + 1);
                s.push_str(&"0".repeat(n + 1));
                s
            });
            check_star_steps(&ems);
            let all: HashSet<String> = ems[..total as usize]
                .iter()
                .map(|e| e.combination.to_string())
                .collect();
            assert_eq!(all.len(), total as usize, "n = {n}");
            assert_eq!(ems[total as usize].combination, ems[0].combination);
        }
    }

    #[test]
    fn full_cycles_small_n() {
        for n in 4..=7usize {
            let m = 2 * n + 1;
            let total = GenState::total_count(n).unwrap();
            for shift in 1..m {
                if crate::switching::gcd(shift, m) != 1 {
                    assert!(GenState::init(n, shift, None).is_err());
                    continue;
                }
                let ems = run(n, shift, None, total + 1);
                check_star_steps(&ems);
                let all: HashSet<String> = ems[..total as usize]
                    .iter()
                    .map(|e| e.combination.to_string())
                    .collect();
                assert_eq!(all.len(), total as usize, "n = {n}, shift = {shift}");
                assert_eq!(
                    ems[total as usize].combination, ems[0].combination,
                    "cyclic at n = {n}, shift = {shift}"
                );
            }
        }
    }

    #[test]
    fn block_symmetry() {
        for n in 4..=7usize {
            let m = 2 * n + 1;
            let block = 2 * catalan_number(n);
            for shift in [1usize, 2] {
                if crate::switching::gcd(shift, m) != 1 {
                    continue;
                }
                let ems = run(n, shift, None, (block * m) as u64);
                for b in 1..m {
                    for j in 0..block {
                        let want = pos_mod(ems[j].flip_position as i64 + (b * shift) as i64, m);
                        assert_eq!(
                            ems[b * block + j].flip_position,
                            want,
                            "n = {n}, shift = {shift}, block {b}, entry {j}"
                        );
                    }
                }
            }
        }
    }

    fn catalan_number(n: usize) -> usize {
        let mut c = vec![0usize; n + 1];
        c[0] = 1;
        for k in 1..=n {
            for i in 0..k {
                c[k] += c[i] * c[k - 1 - i];
            }
        }
        c[n]
    }

    #[test]
    fn arbitrary_start_rotates_the_cycle() {
        let n = 5usize;
        let total = GenState::total_count(n).unwrap() as usize;
        let base = run(n, 1, None, total as u64);
        // start from the combination 100 steps in
        let s = base[100].combination.clone();
        let rotated = run(n, 1, Some(&s), total as u64);
        for t in 0..total {
            assert_eq!(rotated[t].combination, base[(100 + t) % total].combination);
            assert_eq!(
                rotated[t].flip_position,
                base[(100 + t) % total].flip_position
            );
        }
    }

    #[test]
    fn every_start_is_valid() {
        // direction reconstruction must work from every vertex
        let n = 5usize;
        let total = GenState::total_count(n).unwrap() as usize;
        let base = run(n, 1, None, total as u64);
        for t in 0..total {
            let s = base[t].combination.clone();
            let mut g = GenState::init(n, 1, Some(&s)).unwrap();
            let first = g.next_emission();
            assert_eq!(first.combination, base[t].combination, "t = {t}");
            assert_eq!(first.flip_position, base[t].flip_position, "t = {t}");
        }
    }

    #[test]
    fn every_start_is_valid_with_switches() {
        // the same reconstruction in a landscape where a switch fires
        let n = 7usize;
        let total = GenState::total_count(n).unwrap() as usize;
        let base = run(n, 1, None, total as u64);
        for t in 0..total {
            let s = base[t].combination.clone();
            let mut g = GenState::init(n, 1, Some(&s)).unwrap();
            for k in 0..3 {
                let e = g.next_emission();
                let want = &base[(t + k) % total];
                assert_eq!(e.combination, want.combination, "t = {t}, k = {k}");
                assert_eq!(e.flip_position, want.flip_position, "t = {t}, k = {k}");
            }
        }
    }

    #[test]
    fn switched_case_n7() {
        // n = 7 needs a switch (Catalan shift 9 with 2n+1 = 15)
        let n = 7usize;
        let g = GenState::init(n, 1, None).unwrap();
        assert_eq!(g.plan().s_before, 9);
        assert_eq!(g.plan().s_after, 11);
        assert_eq!(g.plan().switches.len(), 1);
        let total = GenState::total_count(n).unwrap();
        let ems = run(n, 1, None, total + 1);
        check_star_steps(&ems);
        let all: HashSet<String> = ems[..total as usize]
            .iter()
            .map(|e| e.combination.to_string())
            .collect();
        assert_eq!(all.len(), total as usize);
        assert_eq!(ems[total as usize].combination, ems[0].combination);
    }

    #[test]
    fn injected_switches_still_yield_valid_cycles() {
        // Switches change the realized shift whether or not the repair was
        // needed, so forcing them onto small sizes exercises the reversed
        // firing pattern and multi-switch plans under full verification.
        use crate::switching::{catalan_mod, make_switch, SwitchKind, SwitchPlan};
        for n in [4usize, 5, 6] {
            let m = 2 * n + 1;
            let s = catalan_mod(n);
            let plans = [
                vec![SwitchKind::Tau1],
                vec![SwitchKind::Tau2],
                vec![SwitchKind::Tau1, SwitchKind::Tau2],
            ];
            for kinds in plans {
                let switches: Vec<_> = kinds.iter().map(|&k| make_switch(n, k).unwrap()).collect();
                let total_eff: i64 = switches.iter().map(|sw| sw.effective_shift).sum();
                let s_after = (s as i64 + total_eff).rem_euclid(m as i64) as usize;
                if crate::switching::gcd(s_after, m) != 1 {
                    continue;
                }
                let plan = SwitchPlan {
                    switches,
                    s_before: s,
                    s_after,
                };
                let mut g = GenState::init_with_plan(n, 1, None, plan).unwrap();
                let total = GenState::total_count(n).unwrap();
                let combos: Vec<_> = (0..total).map(|_| g.next_emission().combination).collect();
                let report = crate::oracle::verify_ordering(combos, n, 1);
                assert!(
                    report.ok,
                    "n = {n}, plan {kinds:?}: {:?}",
                    report.first_violation
                );
            }
        }
    }

    #[test]
    fn step_kinds_all_occur() {
        use std::collections::HashMap;
        let mut seen: HashMap<&'static str, u64> = HashMap::new();
        let mut g = GenState::init(7, 1, None).unwrap();
        let total = GenState::total_count(7).unwrap();
        for _ in 0..total {
            let label = match g.classify_step() {
                StepKind::FStep => "f",
                StepKind::FInvStep => "finv",
                StepKind::GlueEdge(0) => "glue0",
                StepKind::GlueEdge(1) => "glue1",
                StepKind::GlueEdge(_) => "glue2",
                StepKind::SwitchFlip(_) => "switch",
            };
            *seen.entry(label).or_default() += 1;
            g.next_emission();
        }
        // every glue edge fires once per gluing cycle rotation; the switch
        // fires once per block
        let m = 15u64;
        assert_eq!(seen["glue0"], seen["glue1"]);
        assert_eq!(seen["glue0"], seen["glue2"]);
        assert_eq!(seen["glue0"] % m, 0);
        assert_eq!(seen["switch"], m);
        assert!(seen["f"] > 0 && seen["finv"] > 0);
    }

    #[test]
    fn init_examples() {
        // n = 5: Catalan shift 9 is coprime to 11, no switches, and the
        // target 3 is reached by scaling with the inverse of 9
        let g = GenState::init(5, 3, None).unwrap();
        assert!(g.plan().is_empty());
        assert_eq!(g.plan().s_before, 9);
        assert_eq!(g.scale(), 4); // 9^(-1) * 3 = 5 * 3 = 15 = 4 mod 11

        let g = GenState::init(16, 1, None).unwrap();
        assert_eq!(g.plan().s_before, 18);
        assert_eq!(g.plan().s_after, 7);
        assert_eq!(g.scale(), 19);
    }

    #[test]
    fn bad_inputs() {
        assert!(matches!(
            GenState::init(4, 3, None),
            Err(Error::NotCoprime { .. })
        ));
        let short = BitString::parse("1100").unwrap();
        assert!(matches!(
            GenState::init(4, 1, Some(&short)),
            Err(Error::BadStart(_))
        ));
    }

    #[test]
    fn state_is_send() {
        fn assert_send<T: Send>() {}
        assert_send::<GenState>();
        assert_send::<Emission>();
    }

    #[test]
    fn random_starts_verify_at_n8() {
        use crate::oracle::verify_ordering;
        let n = 8usize;
        let total = GenState::total_count(n).unwrap();
        let base = run(n, 3, None, total);
        for pick in [7usize, 4861, 20011, 48619] {
            let s = base[pick % total as usize].combination.clone();
            let mut g = GenState::init(n, 3, Some(&s)).unwrap();
            let combos: Vec<BitString> =
                (0..total).map(|_| g.next_emission().combination).collect();
            assert_eq!(combos[0], s);
            // a rotated start breaks block alignment, so check the cycle
            // property directly: all distinct, consecutive star steps
            let mut seen = std::collections::HashSet::new();
            for c in &combos {
                assert!(seen.insert(c.to_string()));
            }
            drop(seen);
            // rotating back to the block boundary must verify fully
            let boundary = combos
                .iter()
                .position(|c| *c == base[0].combination)
                .unwrap();
            let rotated: Vec<BitString> = (0..total as usize)
                .map(|t| combos[(boundary + t) % total as usize].clone())
                .collect();
            assert!(verify_ordering(rotated, n, 3).ok);
        }
    }

    #[test]
    fn emission_count_bounds() {
        assert_eq!(GenState::total_count(1), Some(6));
        assert_eq!(GenState::total_count(2), Some(20));
        assert_eq!(GenState::total_count(3), Some(70));
        assert_eq!(GenState::total_count(10), Some(705_432));
    }
}
