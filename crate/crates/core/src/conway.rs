//! Conway polynomials of pretzel knots and two-component pretzel links.
//!
//! Everything reduces to one skein engine over *oriented* pretzel diagrams:
//! a sequence of twist regions, each with its twist and a parallel or
//! antiparallel orientation. Changing a crossing in a region moves its twist
//! two steps towards zero. The oriented smoothing deletes an antiparallel
//! region and lowers a parallel region's twist by one. The engine is
//! memoised on the dihedral/mirror canonical form of the oriented diagram.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::jones::{jones_derived, oracle_jones, JonesError, JonesRoute};
use crate::laurent::{bigint_to_json, Rational};
use crate::pretzel::{ParityClass, PretzelParams, StrandOrientation};

use StrandOrientation::{Antiparallel, Parallel};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConwayError {
    #[error("parameters {params} do not have the required shape: {expected}")]
    BadShape { params: String, expected: &'static str },
    #[error("computed a1 = {computed} for {params}, expected -1/2 * sum = {expected}")]
    LinkingNumber {
        params: String,
        computed: BigInt,
        expected: i64,
    },
    #[error("no skein reduction applies to {0}")]
    Unreduced(String),
    #[error(transparent)]
    Jones(#[from] JonesError),
}

/// Polynomial in `z` with big-integer coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ConwayPoly {
    coeffs: BTreeMap<u32, BigInt>,
}

impl ConwayPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_terms([(0, 1)])
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (u32, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    fn add_term(&mut self, exp: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(exp).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn coeff(&self, exp: u32) -> BigInt {
        self.coeffs.get(&exp).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &BigInt)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    /// Multiplies by `k * z`.
    pub fn times_z(&self, k: &BigInt) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.coeffs {
            out.add_term(e + 1, c * k);
        }
        out
    }

    /// `z -> -z`.
    pub fn negate_z(&self) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, c)| (*e, if e % 2 == 1 { -c } else { c.clone() }))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.coeffs {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &other.coeffs {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }

    pub fn only_even_exponents(&self) -> bool {
        self.coeffs.keys().all(|e| e % 2 == 0)
    }

    pub fn only_odd_exponents(&self) -> bool {
        self.coeffs.keys().all(|e| e % 2 == 1)
    }
}

impl fmt::Debug for ConwayPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .map(|(e, c)| format!("{c}*z^{e}"))
            .collect();
        if terms.is_empty() {
            write!(f, "ConwayPoly(0)")
        } else {
            write!(f, "ConwayPoly({})", terms.join(" + "))
        }
    }
}

impl Serialize for ConwayPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for (e, c) in &self.coeffs {
            seq.serialize_element(&(e, bigint_to_json(c)))?;
        }
        seq.end()
    }
}

type Region = (i64, StrandOrientation);

fn crossing_sign(a: i64, o: StrandOrientation) -> i64 {
    crate::jones::diagram::region_crossing_sign(a, o)
}

/// `T(2, a)` obtained by joining the left ends and the right ends of a
/// single twist region with the given orientation.
fn closed_region(a: i64, o: StrandOrientation) -> ConwayPoly {
    // Iterate from the base cases up to |a| along the skein recursion.
    let k = a.unsigned_abs() as usize;
    if k == 0 {
        return ConwayPoly::zero();
    }
    let sigma = BigInt::from(crossing_sign(a, o));
    let mut vals = vec![ConwayPoly::zero(), ConwayPoly::one()];
    for m in 2..=k {
        let smoothed = match o {
            Parallel => vals[m - 1].clone(),
            Antiparallel => ConwayPoly::one(),
        };
        let next = vals[m - 2].add(&smoothed.times_z(&sigma));
        vals.push(next);
    }
    vals.swap_remove(k)
}

/// Memoised skein engine. Safe to share between threads; concurrent inserts
/// of the same key store the same value.
#[derive(Default)]
pub struct ConwayEngine {
    memo: RwLock<HashMap<Vec<Region>, ConwayPoly>>,
}

fn canonical(state: &[Region]) -> (Vec<Region>, bool) {
    let n = state.len();
    let mut best: Option<(Vec<Region>, bool)> = None;
    for mirrored in [false, true] {
        for start in 0..n {
            for reflect in [false, true] {
                let cand: Vec<Region> = (0..n)
                    .map(|k| {
                        let idx = if reflect {
                            (start + n - k) % n
                        } else {
                            (start + k) % n
                        };
                        let (a, o) = state[idx];
                        (if mirrored { -a } else { a }, o)
                    })
                    .collect();
                if best.as_ref().is_none_or(|(b, _)| cand < *b) {
                    best = Some((cand, mirrored));
                }
            }
        }
    }
    best.unwrap_or_default()
}

impl ConwayEngine {
    pub fn new() -> Self {
        Self::default()
    }

    /// Process-wide engine used by the free functions of this module.
    pub fn global() -> &'static ConwayEngine {
        static ENGINE: OnceLock<ConwayEngine> = OnceLock::new();
        ENGINE.get_or_init(ConwayEngine::new)
    }

    pub fn cached_states(&self) -> usize {
        self.memo.read().map(|m| m.len()).unwrap_or(0)
    }

    /// Conway polynomial of the oriented pretzel diagram `state`.
    pub fn oriented(&self, state: &[Region]) -> Result<ConwayPoly, ConwayError> {
        if state.len() <= 1 {
            return Ok(if state.is_empty() {
                ConwayPoly::zero()
            } else {
                ConwayPoly::one()
            });
        }
        let (key, mirrored) = canonical(state);
        if let Some(hit) = self.memo.read().ok().and_then(|m| m.get(&key).cloned()) {
            return Ok(if mirrored { hit.negate_z() } else { hit });
        }
        let value = self.reduce(&key)?;
        if let Ok(mut m) = self.memo.write() {
            m.entry(key).or_insert_with(|| value.clone());
        }
        Ok(if mirrored { value.negate_z() } else { value })
    }

    fn reduce(&self, state: &[Region]) -> Result<ConwayPoly, ConwayError> {
        if let Some(i) = state.iter().position(|r| r.0 == 0) {
            // A region without crossings splits the diagram into the
            // connected sum of the other regions, each closed off.
            return Ok(state
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .fold(ConwayPoly::one(), |acc, (_, &(a, o))| {
                    acc.mul(&closed_region(a, o))
                }));
        }
        let mut i = (0..state.len())
            .max_by_key(|&k| (state[k].0.abs(), std::cmp::Reverse(k)))
            .unwrap_or(0);
        if state[i].0.abs() == 1 {
            // Adjacent +1 and -1 regions of the same orientation cancel by a
            // Reidemeister II move once commuted next to each other.
            for o in [Antiparallel, Parallel] {
                let pos = state.iter().position(|&r| r == (1, o));
                let neg = state.iter().position(|&r| r == (-1, o));
                if let (Some(x), Some(y)) = (pos, neg) {
                    let rest: Vec<Region> = state
                        .iter()
                        .enumerate()
                        .filter(|(k, _)| *k != x && *k != y)
                        .map(|(_, r)| *r)
                        .collect();
                    return self.oriented(&rest);
                }
            }
            if state.iter().any(|r| r.1 != state[0].1) {
                return Err(ConwayError::Unreduced(format!("{state:?}")));
            }
            i = 0;
        }
        let (a, o) = state[i];
        let s = a.signum();
        let sigma = BigInt::from(crossing_sign(a, o));
        let mut changed = state.to_vec();
        changed[i].0 = a - 2 * s;
        let smoothed: Vec<Region> = match o {
            Antiparallel => state
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != i)
                .map(|(_, r)| *r)
                .collect(),
            Parallel => {
                let mut v = state.to_vec();
                v[i].0 = a - s;
                v
            }
        };
        let base = self.oriented(&changed)?;
        let l0 = self.oriented(&smoothed)?;
        Ok(base.add(&l0.times_z(&sigma)))
    }

    /// Conway polynomial of a knot or two-component link in its standard
    /// orientation (see [`PretzelParams::strand_orientations`]).
    pub fn polynomial(&self, p: &PretzelParams) -> Result<ConwayPoly, ConwayError> {
        let orient = p.strand_orientations().ok_or_else(|| ConwayError::BadShape {
            params: p.to_string(),
            expected: "at most one even parameter",
        })?;
        let state: Vec<Region> = p.as_slice().iter().copied().zip(orient).collect();
        self.oriented(&state)
    }
}

/// `T(2, m)` with its braid orientation:
/// `C(m) = z C(m-1) + C(m-2)`, `C(1) = 1`, `C(0) = 0`, and `C(-m)(z) = C(m)(-z)`.
pub fn torus_conway(m: i64) -> ConwayPoly {
    let k = m.unsigned_abs() as usize;
    let mut vals = vec![ConwayPoly::zero(), ConwayPoly::one()];
    for j in 2..=k.max(1) {
        let next = vals[j - 1].times_z(&BigInt::one()).add(&vals[j - 2]);
        vals.push(next);
    }
    let c = vals.swap_remove(k);
    if m < 0 {
        c.negate_z()
    } else {
        c
    }
}

fn all_odd(p: &PretzelParams) -> bool {
    p.as_slice().iter().all(|a| a % 2 != 0)
}

/// Conway polynomial of an all-odd pretzel (knot for odd `n`, link for even
/// `n`) in the two-disk Seifert surface orientation.
pub fn conway_all_odd(p: &PretzelParams) -> Result<ConwayPoly, ConwayError> {
    if !all_odd(p) {
        return Err(ConwayError::BadShape {
            params: p.to_string(),
            expected: "all parameters odd",
        });
    }
    if p.len().is_multiple_of(2) {
        return conway_link(p);
    }
    ConwayEngine::global().polynomial(p)
}

/// Conway polynomial of the two-component link `P(a1, ..., an)`, `n` even,
/// all odd. Its `z` coefficient is checked against `-1/2 * sum a_i`.
pub fn conway_link(p: &PretzelParams) -> Result<ConwayPoly, ConwayError> {
    if p.classify() != ParityClass::TwoComponentAllOddEvenN {
        return Err(ConwayError::BadShape {
            params: p.to_string(),
            expected: "all parameters odd and an even number of strands",
        });
    }
    let c = ConwayEngine::global().polynomial(p)?;
    let expected = -p.as_slice().iter().sum::<i64>() / 2;
    if c.coeff(1) != BigInt::from(expected) {
        return Err(ConwayError::LinkingNumber {
            params: p.to_string(),
            computed: c.coeff(1),
            expected,
        });
    }
    Ok(c)
}

/// Conway polynomial of `P(2l, a2, ..., an)` with `a2, ..., an` odd, from
/// repeated skein moves on the even region down to `P(0, a2, ..., an)`,
/// which is the connected sum of the `T(2, a_i)`.
///
/// For odd `n` every step smooths to the same link `P(a2, ..., an)`:
/// `C = prod C(T(2,a_i)) - sign(l) |l| z C(P(a2, ..., an))`.
/// For even `n` the `i`-th step smooths to `P(2l - sign(l)(2i - 1), a2, ...)`.
/// The links carry the orientation induced from the knot, in which every
/// odd region is parallel.
pub fn conway_even_first(p: &PretzelParams) -> Result<ConwayPoly, ConwayError> {
    let a = p.as_slice();
    let shape_ok = a.len() >= 2 && a[0] % 2 == 0 && a[1..].iter().all(|x| x % 2 != 0);
    if !shape_ok {
        return Err(ConwayError::BadShape {
            params: p.to_string(),
            expected: "even first parameter, odd others, at least two strands",
        });
    }
    let engine = ConwayEngine::global();
    let ell = a[0] / 2;
    let s = ell.signum();
    let tail = &a[1..];
    let connected_sum = tail
        .iter()
        .fold(ConwayPoly::one(), |acc, &x| acc.mul(&torus_conway(x)));
    let parallel_tail = |first: Option<i64>| -> Vec<Region> {
        first
            .into_iter()
            .chain(tail.iter().copied())
            .map(|x| (x, Parallel))
            .collect()
    };
    if a.len() % 2 == 1 {
        let link = engine.oriented(&parallel_tail(None))?;
        let eps = BigInt::from(-s * ell.abs());
        Ok(connected_sum.add(&link.times_z(&eps)))
    } else {
        let mut total = connected_sum;
        let sigma = BigInt::from(s);
        for i in 1..=ell.abs() {
            let first = 2 * ell - s * (2 * i - 1);
            let link = engine.oriented(&parallel_tail(Some(first)))?;
            total = total.add(&link.times_z(&sigma));
        }
        Ok(total)
    }
}

/// Conway polynomial of any supported pretzel knot or link.
pub fn conway_polynomial(p: &PretzelParams) -> Result<ConwayPoly, ConwayError> {
    match p.classify() {
        ParityClass::AllOddOddN | ParityClass::TwoComponentAllOddEvenN => conway_all_odd(p),
        ParityClass::OneEvenOddN | ParityClass::OneEvenEvenN => {
            let rotated = p.even_first().expect("class guarantees one even entry");
            conway_even_first(&rotated)
        }
        ParityClass::Unsupported => Err(ConwayError::BadShape {
            params: p.to_string(),
            expected: "at most one even parameter",
        }),
    }
}

/// `a2` of a knot: the `z^2` coefficient of its Conway polynomial.
pub fn conway_a2(p: &PretzelParams) -> Result<BigInt, ConwayError> {
    Ok(conway_polynomial(p)?.coeff(2))
}

/// Elementary symmetric values of `k_i` where `a_i = 2 k_i + 1`, five strands.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymmetricValues {
    pub k: [i64; 5],
    pub s1: i64,
    pub s2: i64,
    pub s3: i64,
}

impl SymmetricValues {
    pub fn from_k(k: [i64; 5]) -> Self {
        let mut s1 = 0;
        let mut s2 = 0;
        let mut s3 = 0;
        for i in 0..5 {
            s1 += k[i];
            for j in i + 1..5 {
                s2 += k[i] * k[j];
                for l in j + 1..5 {
                    s3 += k[i] * k[j] * k[l];
                }
            }
        }
        Self { k, s1, s2, s3 }
    }

    pub fn from_params(p: &PretzelParams) -> Result<Self, ConwayError> {
        let a = p.as_slice();
        if a.len() != 5 || !all_odd(p) {
            return Err(ConwayError::BadShape {
                params: p.to_string(),
                expected: "five odd parameters",
            });
        }
        let mut k = [0; 5];
        for (ki, ai) in k.iter_mut().zip(a) {
            *ki = (ai - 1).div_euclid(2);
        }
        Ok(Self::from_k(k))
    }

    pub fn params(&self) -> PretzelParams {
        PretzelParams::new(self.k.iter().map(|k| 2 * k + 1).collect())
            .expect("2k + 1 is never zero")
    }
}

/// `a2 = s2 + 2 s1 + 3` for five-strand all-odd pretzel knots.
pub fn five_strand_a2(k: &SymmetricValues) -> i64 {
    k.s2 + 2 * k.s1 + 3
}

/// The printed five-strand `w3` expression
/// `1/2 (5 + 3 s1 + s1^2 + s2 + 1/2 (s3 + s1 s2))`.
pub fn printed_five_strand_w3(k: &SymmetricValues) -> Rational {
    let (s1, s2, s3) = (k.s1, k.s2, k.s3);
    let twice_inner = 2 * (5 + 3 * s1 + s1 * s1 + s2) + (s3 + s1 * s2);
    Rational::new(BigInt::from(twice_inner), BigInt::from(4))
}

/// Printed closed form next to the Jones-derivative value of `w3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiveStrandW3 {
    pub printed: Rational,
    pub oracle: Rational,
    pub oracle_route: JonesRoute,
}

impl FiveStrandW3 {
    pub fn printed_agrees(&self) -> bool {
        self.printed == self.oracle
    }
}

/// Evaluates the printed `w3` formula and the Jones-derivative `w3`
/// (state sum up to `cap` crossings, twist-region bracket above).
pub fn five_strand_w3(k: &SymmetricValues, cap: u64) -> Result<FiveStrandW3, ConwayError> {
    let p = k.params();
    let (v, route) = oracle_jones(&p, cap)?;
    let d = jones_derived(&v)?;
    Ok(FiveStrandW3 {
        printed: printed_five_strand_w3(k),
        oracle: d.w3,
        oracle_route: route,
    })
}

/// Whether a symmetric-value triple lies on the reduced locus `s3 = s1 + 2`.
pub fn on_reduced_w3_locus(k: &SymmetricValues) -> bool {
    k.s3 == k.s1 + 2
}

/// `|Conway coefficient|`, used for degree and leading-term checks.
pub fn leading_coefficient(c: &ConwayPoly) -> Option<BigInt> {
    c.degree().map(|d| c.coeff(d).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jones::{jones_closed, jones_polynomial};

    fn pp(v: &[i64]) -> PretzelParams {
        PretzelParams::new(v.to_vec()).unwrap()
    }

    fn cp(terms: &[(u32, i64)]) -> ConwayPoly {
        ConwayPoly::from_terms(terms.iter().copied())
    }

    #[test]
    fn torus_examples() {
        assert_eq!(torus_conway(3), cp(&[(0, 1), (2, 1)]));
        assert_eq!(torus_conway(2), cp(&[(1, 1)]));
        assert_eq!(torus_conway(0), ConwayPoly::zero());
        assert_eq!(torus_conway(-2), cp(&[(1, -1)]));
        assert_eq!(torus_conway(4), cp(&[(1, 2), (3, 1)]));
        for n in 1..8i64 {
            // a2(T(2, 2n+1)) = C(n+1, 2), a1(T(2, 2n)) = n.
            assert_eq!(torus_conway(2 * n + 1).coeff(2), BigInt::from((n + 1) * n / 2));
            assert_eq!(torus_conway(2 * n).coeff(1), BigInt::from(n));
        }
    }

    #[test]
    fn closed_region_matches_torus_for_parallel() {
        for m in -9..=9 {
            assert_eq!(closed_region(m, Parallel), torus_conway(m), "m = {m}");
        }
    }

    #[test]
    fn all_odd_examples() {
        assert_eq!(conway_all_odd(&pp(&[1, 1, 1])).unwrap(), cp(&[(0, 1), (2, 1)]));
        assert_eq!(conway_all_odd(&pp(&[1, 1, 1, 1, 1])).unwrap().coeff(2), BigInt::from(3));
        assert_eq!(conway_all_odd(&pp(&[1, 1, 1, -1, -1])).unwrap(), ConwayPoly::one());
        assert!(conway_all_odd(&pp(&[2, 3, 3])).is_err());
    }

    #[test]
    fn link_examples() {
        let c = conway_link(&pp(&[3, 3])).unwrap();
        assert_eq!(c.coeff(1), BigInt::from(-3));
        assert!(c.only_odd_exponents());
        assert!(conway_link(&pp(&[1, -1])).unwrap().is_zero());
        assert_eq!(conway_link(&pp(&[3, -3])).unwrap().coeff(1), BigInt::from(0));
        assert!(conway_link(&pp(&[3, 3, 3])).is_err());
    }

    #[test]
    fn even_first_examples() {
        // P(-2, 3, 3): a2 = a2(T(2,3)) + a2(T(2,3)) + |l| * a1(T(2,6)) = 2 + 3.
        let c = conway_even_first(&pp(&[-2, 3, 3])).unwrap();
        assert_eq!(c.coeff(2), BigInt::from(5));
        let (v, _) = jones_polynomial(&pp(&[-2, 3, 3])).unwrap();
        assert_eq!(jones_derived(&v).unwrap().a2, BigInt::from(5));
        // (2l, 3, 1): slope of a2 in l is -a1(T(2,4)) = -2.
        for ell in [-4i64, -3, -2, -1, 1, 2, 3, 4] {
            let a2 = conway_even_first(&pp(&[2 * ell, 3, 1])).unwrap().coeff(2);
            assert_eq!(a2, BigInt::from(1 - 2 * ell));
        }
        assert!(conway_even_first(&pp(&[3, 2, 3])).is_err());
    }

    #[test]
    fn even_first_matches_general_engine() {
        for v in [
            vec![4, 3, 5],
            vec![-6, 3, -5],
            vec![2, 3, 3, 3],
            vec![-4, 5, -3, 1],
            vec![6, -3, 3, 5, 1],
        ] {
            let p = pp(&v);
            let general = ConwayEngine::new().polynomial(&p).unwrap();
            assert_eq!(conway_even_first(&p).unwrap(), general, "{p}");
            assert!(general.only_even_exponents());
            assert_eq!(general.coeff(0), BigInt::one());
        }
    }

    #[test]
    fn five_strand_a2_examples() {
        assert_eq!(five_strand_a2(&SymmetricValues::from_k([0, 0, 0, -1, -1])), 0);
        assert_eq!(five_strand_a2(&SymmetricValues::from_k([0; 5])), 3);
        let k = SymmetricValues::from_k([1, 1, 1, -2, -2]);
        assert_eq!((k.s1, k.s2), (-1, -5));
        assert_eq!(five_strand_a2(&k), -4);
        assert_eq!(k.params(), pp(&[3, 3, 3, -3, -3]));
        let d = jones_derived(&jones_closed(&k.params()).unwrap()).unwrap();
        assert_eq!(d.a2, BigInt::from(-4));
    }

    #[test]
    fn printed_w3_fails_on_the_unknot() {
        let k = SymmetricValues::from_k([0, 0, 0, -1, -1]);
        assert_eq!((k.s1, k.s2, k.s3), (-2, 1, 0));
        let w = five_strand_w3(&k, 24).unwrap();
        assert_eq!(w.printed, Rational::new(BigInt::from(3), BigInt::from(2)));
        assert!(w.oracle.is_zero());
        assert!(!w.printed_agrees());
        assert_eq!(w.oracle_route, JonesRoute::StateSum);
    }

    #[test]
    fn torus_five_w3_from_oracle() {
        let k = SymmetricValues::from_k([0; 5]);
        let w = five_strand_w3(&k, 24).unwrap();
        let d = jones_derived(&jones_closed(&pp(&[1, 1, 1, 1, 1])).unwrap()).unwrap();
        assert_eq!(w.oracle, d.w3);
    }

    #[test]
    fn mirror_rule() {
        for v in [vec![3, 5, -7], vec![2, 3, 5], vec![3, 5], vec![4, -3, 5, 1]] {
            let p = pp(&v);
            let a = conway_polynomial(&p).unwrap();
            let b = conway_polynomial(&p.mirror()).unwrap();
            assert_eq!(b, a.negate_z(), "{p}");
        }
    }

    #[test]
    fn memo_is_shared_and_consistent() {
        let engine = ConwayEngine::new();
        let p = pp(&[5, 7, -3, 9, 3]);
        let first = engine.polynomial(&p).unwrap();
        let cached = engine.cached_states();
        assert!(cached > 0);
        assert_eq!(engine.polynomial(&p.dihedral_canonical()).unwrap(), first);
        assert_eq!(engine.cached_states(), cached);
    }
}
