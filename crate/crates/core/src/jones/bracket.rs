//! Kauffman-bracket computations on the standard pretzel diagram.
//!
//! Both routes work in the bracket variable `A`, normalise by `(-A^3)^{-w}`
//! and substitute `A = s^{-1/2}` (so `A^4 = t^{-1}`).

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::laurent::LaurentPoly;
use crate::pretzel::PretzelParams;

use super::diagram::{pattern_writhe, PretzelDiagram};
use super::JonesError;

pub const DEFAULT_BRACKET_CAP: u64 = 24;

/// Environment variable overriding the state-sum crossing cap.
pub const BRACKET_CAP_ENV: &str = "PRETZEL_BRACKET_CAP";

pub fn bracket_cap_from_env() -> u64 {
    std::env::var(BRACKET_CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_BRACKET_CAP)
}

/// `-A^2 - A^{-2}`.
fn delta() -> LaurentPoly {
    LaurentPoly::from_terms([(2, -1), (-2, -1)])
}

/// `(-A^3)^{-w} * bracket`, rewritten in `s`.
fn normalise(bracket: &LaurentPoly, writhe: i64) -> Result<LaurentPoly, JonesError> {
    let sign = if writhe.rem_euclid(2) == 0 { 1 } else { -1 };
    let v = &LaurentPoly::monomial(-3 * writhe, sign) * bracket;
    let mut out = LaurentPoly::zero();
    for (e, c) in v.terms() {
        if e % 2 != 0 {
            return Err(JonesError::OddBracketExponent(e));
        }
        out.add_term(-e / 2, c.clone());
    }
    Ok(out)
}

/// Union-find over arc ids with union by size and no path compression, so
/// that unions can be undone in reverse order.
struct Arcs {
    parent: Vec<u16>,
    size: Vec<u16>,
    history: Vec<(u16, u16)>,
}

impl Arcs {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n as u16).collect(),
            size: vec![1; n],
            history: Vec::with_capacity(2 * n),
        }
    }

    fn find(&self, mut x: u16) -> u16 {
        while self.parent[x as usize] != x {
            x = self.parent[x as usize];
        }
        x
    }

    /// Returns true when two distinct classes were merged.
    fn union(&mut self, a: u16, b: u16) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra as usize] > self.size[rb as usize] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[ra as usize] = rb;
        self.size[rb as usize] += self.size[ra as usize];
        self.history.push((ra, rb));
        true
    }

    fn rollback(&mut self, mark: usize) {
        while self.history.len() > mark {
            let (ra, rb) = self.history.pop().expect("history above mark");
            self.parent[ra as usize] = ra;
            self.size[rb as usize] -= self.size[ra as usize];
        }
    }
}

/// Per-crossing arc pairs joined by each smoothing.
struct Smoothings {
    /// `(arc, arc, arc, arc)` joined by the A-smoothing (two unions).
    a: Vec<[u16; 4]>,
    b: Vec<[u16; 4]>,
    arcs: usize,
}

impl Smoothings {
    fn new(d: &PretzelDiagram) -> Self {
        use super::diagram::{NE, NW, SE, SW};
        let mut a = Vec::with_capacity(d.crossings());
        let mut b = Vec::with_capacity(d.crossings());
        for c in 0..d.crossings() {
            let arc = |q| d.arc(c, q) as u16;
            let vertical = [arc(NW), arc(SW), arc(NE), arc(SE)];
            let horizontal = [arc(NW), arc(NE), arc(SW), arc(SE)];
            if d.a_smoothing_is_vertical(c) {
                a.push(vertical);
                b.push(horizontal);
            } else {
                a.push(horizontal);
                b.push(vertical);
            }
        }
        Self {
            a,
            b,
            arcs: d.arcs(),
        }
    }

    fn pairs(&self, k: usize, b: bool) -> &[u16; 4] {
        if b {
            &self.b[k]
        } else {
            &self.a[k]
        }
    }

    /// Tallies `(number of B-smoothings, loops)` over all states whose first
    /// `fixed` crossings are smoothed as the bits of `prefix` say.
    fn tally(&self, prefix: u64, fixed: usize) -> Vec<Vec<u64>> {
        let mut counts = vec![vec![0u64; self.arcs + 1]; self.a.len() + 1];
        let mut uf = Arcs::new(self.arcs);
        let mut merges = 0;
        for k in 0..fixed {
            let j = self.pairs(k, (prefix >> k) & 1 == 1);
            merges += usize::from(uf.union(j[0], j[1])) + usize::from(uf.union(j[2], j[3]));
        }
        self.walk(fixed, &mut uf, merges, prefix.count_ones() as usize, &mut counts);
        counts
    }

    /// Depth-first over the remaining crossings, undoing unions on the way
    /// back up.
    fn walk(&self, k: usize, uf: &mut Arcs, merges: usize, bs: usize, counts: &mut [Vec<u64>]) {
        if k == self.a.len() {
            counts[bs][self.arcs - merges] += 1;
            return;
        }
        for b in [false, true] {
            let mark = uf.history.len();
            let j = self.pairs(k, b);
            let m = merges + usize::from(uf.union(j[0], j[1])) + usize::from(uf.union(j[2], j[3]));
            self.walk(k + 1, uf, m, bs + usize::from(b), counts);
            uf.rollback(mark);
        }
    }
}

/// Jones polynomial by enumerating all `2^c` bracket states of the standard
/// diagram. Loops are counted with a union-find over arcs; the writhe comes
/// from walking the diagram.
///
/// Results are cached per process on the dihedral canonical form, since
/// rotating or reflecting the parameters does not change the knot.
pub fn bracket_jones(p: &PretzelParams, cap: u64) -> Result<LaurentPoly, JonesError> {
    static CACHE: OnceLock<Mutex<HashMap<PretzelParams, LaurentPoly>>> = OnceLock::new();
    let crossings = p.crossing_bound();
    if crossings > cap {
        return Err(JonesError::CapExceeded { crossings, cap });
    }
    if !p.classify().is_knot() {
        return Err(JonesError::NotAKnot);
    }
    let key = p.dihedral_canonical();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.lock().ok().and_then(|c| c.get(&key).cloned()) {
        return Ok(v);
    }
    let v = state_sum(p)?;
    if let Ok(mut c) = cache.lock() {
        c.insert(key, v.clone());
    }
    Ok(v)
}

fn state_sum(p: &PretzelParams) -> Result<LaurentPoly, JonesError> {
    let d = PretzelDiagram::new(p);
    if d.components() != 1 {
        return Err(JonesError::NotAKnot);
    }
    let smoothings = Smoothings::new(&d);
    let c = d.crossings();
    // Split on the first few crossings for parallelism.
    let fixed = c.min(6);
    let counts = (0..1u64 << fixed)
        .into_par_iter()
        .map(|prefix| smoothings.tally(prefix, fixed))
        .reduce(
            || vec![vec![0u64; smoothings.arcs + 1]; c + 1],
            |mut acc, part| {
                for (row, prow) in acc.iter_mut().zip(part) {
                    for (x, y) in row.iter_mut().zip(prow) {
                        *x += y;
                    }
                }
                acc
            },
        );

    let delta = delta();
    let mut delta_pows = vec![LaurentPoly::one()];
    let mut bracket = LaurentPoly::zero();
    for (bs, row) in counts.iter().enumerate() {
        let a_exp = c as i64 - 2 * bs as i64;
        for (loops, &n) in row.iter().enumerate() {
            if n == 0 {
                continue;
            }
            while delta_pows.len() < loops {
                let next = delta_pows.last().unwrap() * &delta;
                delta_pows.push(next);
            }
            let term = delta_pows[loops - 1].shift(a_exp).scale(&BigInt::from(n));
            bracket = &bracket + &term;
        }
    }
    normalise(&bracket, d.traced_writhe())
}

fn binomial(n: u64, k: u64) -> BigInt {
    (0..k).fold(BigInt::from(1), |acc, i| acc * (n - i) / (i + 1))
}

/// Bracket of a single twist region as `(coefficient of the vertical
/// tangle, coefficient of the horizontal tangle)`.
///
/// Stacking `m >= 1` horizontal smoothings leaves the horizontal tangle and
/// `m - 1` closed loops; no horizontal smoothing leaves two vertical strands.
fn twist_region(a: i64) -> (LaurentPoly, LaurentPoly) {
    let k = a.unsigned_abs();
    // Positive regions: the A-smoothing is vertical.
    let sign = a.signum();
    let vertical = LaurentPoly::monomial(sign * k as i64, 1);
    let delta = delta();
    let mut horizontal = LaurentPoly::zero();
    let mut dpow = LaurentPoly::one();
    for m in 1..=k {
        // m horizontal smoothings: these are B-smoothings when sign > 0.
        let a_exp = sign * (k as i64 - 2 * m as i64);
        horizontal = &horizontal + &dpow.shift(a_exp).scale(&binomial(k, m));
        dpow = &dpow * &delta;
    }
    (vertical, horizontal)
}

/// Jones polynomial of any pretzel knot from the twist-region decomposition
/// of the bracket. A choice of tangle per region with `j >= 1` vertical
/// regions closes to `j` loops, and to two loops when `j = 0`. The writhe
/// comes from the orientation pattern of the parity class.
pub fn jones_twist_regions(p: &PretzelParams) -> Result<LaurentPoly, JonesError> {
    if !p.classify().is_knot() {
        return Err(JonesError::NotAKnot);
    }
    let writhe = pattern_writhe(p).ok_or(JonesError::NotAKnot)?;
    // by_vertical[j]: sum over choices with exactly j vertical regions.
    let mut by_vertical = vec![LaurentPoly::one()];
    for &a in p.as_slice() {
        let (v, h) = twist_region(a);
        let mut next = vec![LaurentPoly::zero(); by_vertical.len() + 1];
        for (j, poly) in by_vertical.iter().enumerate() {
            next[j] = &next[j] + &(poly * &h);
            next[j + 1] = &next[j + 1] + &(poly * &v);
        }
        by_vertical = next;
    }
    let delta = delta();
    let mut bracket = LaurentPoly::zero();
    for (j, poly) in by_vertical.iter().enumerate() {
        let loops = if j == 0 { 2 } else { j };
        bracket = &bracket + &(poly * &delta.pow(loops as u32 - 1));
    }
    normalise(&bracket, writhe)
}
