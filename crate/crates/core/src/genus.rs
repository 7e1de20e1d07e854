//! Seifert genus formulas for pretzel knots, the genus-two exception lists
//! they imply, and the Floer-theoretic bookkeeping: delta-graded values of
//! Kauffman states, the tau certificate and the thickness bound on surgery
//! denominators.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::laurent::Rational;
use crate::pretzel::{ParityClass, PretzelParams};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenusError {
    #[error("{0} is not normalized; normalize it first")]
    Unnormalized(String),
    #[error("{0} is not a knot")]
    NotAKnot(String),
    #[error("parameters {params} do not have the required shape: {expected}")]
    BadShape { params: String, expected: &'static str },
    #[error("genus {0} is too small for the thickness bound (needs g >= 2)")]
    GenusTooSmall(i64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GenusSource {
    /// Three strands, closed formula.
    KimLee3,
    /// All parameters odd: `(n - 1) / 2`.
    Gabai,
    /// Even first parameter, four or more strands: lower bound from the
    /// leading Conway coefficient, exact without `+-1` entries.
    KimLeeEven,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusResult {
    pub value: i64,
    pub exact: bool,
    pub source: GenusSource,
    /// Sum of signs of the parameters after the even one (or after the
    /// first, when all are odd).
    pub alpha: i64,
    /// Sum of `|a_i| - 1` over the same parameters.
    pub delta_param: i64,
}

impl GenusResult {
    /// Whether this value comes from the even-first bound with `n` even and
    /// `alpha = -1`. That branch exceeds half the Alexander degree on every
    /// knot without unit entries we have checked, so callers should not rely
    /// on it.
    pub fn uncorroborated(&self, strands: usize) -> bool {
        self.source == GenusSource::KimLeeEven && strands.is_multiple_of(2) && self.alpha == -1
    }

    /// True when the genus is certainly not two.
    pub fn rules_out_two(&self) -> bool {
        if self.exact {
            self.value != 2
        } else {
            self.value > 2
        }
    }
}

fn alpha_delta(tail: &[i64]) -> (i64, i64) {
    let alpha = tail.iter().map(|a| a.signum()).sum();
    let delta = tail.iter().map(|a| a.abs() - 1).sum();
    (alpha, delta)
}

/// Kim-Lee bound for `P(a1, tail)`, `a1 > 0` even, tail odd.
/// Returns `(bound, alpha, delta)`.
pub fn kim_lee_even_bound(a1: i64, tail: &[i64]) -> (i64, i64, i64) {
    let (alpha, delta) = alpha_delta(tail);
    let n = tail.len() + 1;
    let bound = if n % 2 == 1 {
        if alpha != 0 {
            (delta + 2) / 2
        } else {
            delta / 2
        }
    } else if alpha != -1 {
        (a1 + delta) / 2
    } else {
        (a1 + delta) / 2 - 1
    };
    (bound, alpha, delta)
}

/// Three-strand genus with the even parameter `p` first.
fn kim_lee_three(q: i64, r: i64) -> i64 {
    if q.signum() == r.signum() {
        (q.abs() + r.abs()) / 2
    } else {
        (q.abs() + r.abs() - 2) / 2
    }
}

/// Seifert genus (or its lower bound) of a normalized pretzel knot.
pub fn genus(p: &PretzelParams) -> Result<GenusResult, GenusError> {
    if !p.is_normalized() {
        return Err(GenusError::Unnormalized(p.to_string()));
    }
    let class = p.classify();
    if !class.is_knot() {
        return Err(GenusError::NotAKnot(p.to_string()));
    }
    let n = p.len();
    match class {
        ParityClass::AllOddOddN => {
            let (alpha, delta_param) = alpha_delta(&p.as_slice()[1..]);
            Ok(GenusResult {
                value: (n as i64 - 1) / 2,
                exact: true,
                source: if n == 3 {
                    GenusSource::KimLee3
                } else {
                    GenusSource::Gabai
                },
                alpha,
                delta_param,
            })
        }
        _ => {
            let rotated = p.even_first().expect("knot class with an even entry");
            // The formulas assume a positive even parameter; mirroring
            // preserves the genus.
            let q = if rotated.as_slice()[0] < 0 {
                rotated.mirror()
            } else {
                rotated
            };
            let a = q.as_slice();
            let tail = &a[1..];
            let (bound, alpha, delta_param) = kim_lee_even_bound(a[0], tail);
            if n == 3 {
                return Ok(GenusResult {
                    value: kim_lee_three(tail[0], tail[1]),
                    exact: true,
                    source: GenusSource::KimLee3,
                    alpha,
                    delta_param,
                });
            }
            Ok(GenusResult {
                value: bound,
                exact: tail.iter().all(|x| x.abs() != 1),
                source: GenusSource::KimLeeEven,
                alpha,
                delta_param,
            })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExceptionFamily {
    ThreeStrand,
    EvenFirst,
}

/// Standing hypotheses under which the genus formulas are stated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Hypotheses {
    /// Exclude tails holding both `1` and `-1`.
    pub no_unit_pair: bool,
    /// Exclude `a1 = +-2` together with a `-+1` entry.
    pub no_two_unit: bool,
}

impl Hypotheses {
    pub const STANDARD: Self = Self {
        no_unit_pair: true,
        no_two_unit: true,
    };
}

/// The even parameter of a pattern: any `2l` (the bound does not depend
/// on it) or a fixed positive value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EvenSlot {
    Any,
    Fixed(i64),
}

/// A parameter pattern with genus at most two (three strands: exactly two).
/// `tail` holds the odd parameters sorted by decreasing absolute value, then
/// decreasing value.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ExceptionPattern {
    pub even: EvenSlot,
    pub tail: Vec<i64>,
    /// Item of the matching list entry (1-based), if any.
    pub item: Option<u8>,
}

impl ExceptionPattern {
    /// Non-unit entries of the tail.
    pub fn core(&self) -> Vec<i64> {
        self.tail.iter().copied().filter(|a| a.abs() != 1).collect()
    }

    pub fn strands(&self) -> usize {
        self.tail.len() + 1
    }
}

fn sort_tail(t: &mut [i64]) {
    t.sort_by(|x, y| y.abs().cmp(&x.abs()).then(y.cmp(x)));
}

/// Canonical representative of `(2l, tail)` up to mirroring: the even
/// slot is symbolic, so the tail may be negated.
fn mirror_canonical_tail(tail: &[i64]) -> Vec<i64> {
    let mut a = tail.to_vec();
    let mut b: Vec<i64> = tail.iter().map(|x| -x).collect();
    sort_tail(&mut a);
    sort_tail(&mut b);
    // Prefer the form whose largest entry is positive.
    a.max(b)
}

/// Which item of the even-first exception list a pattern falls under.
pub fn classify_even_first_item(even: EvenSlot, tail: &[i64]) -> Option<u8> {
    let n = tail.len() + 1;
    let core: Vec<i64> = tail.iter().copied().filter(|a| a.abs() != 1).collect();
    let units: Vec<i64> = tail.iter().copied().filter(|a| a.abs() == 1).collect();
    if units.windows(2).any(|w| w[0] != w[1]) {
        return None;
    }
    let (alpha, _) = alpha_delta(tail);
    let abs: Vec<i64> = core.iter().map(|a| a.abs()).collect();
    let a1 = match even {
        EvenSlot::Any => None,
        EvenSlot::Fixed(v) => Some(v),
    };
    if core.is_empty() {
        return Some(1);
    }
    if n % 2 == 1 {
        match (alpha != 0, abs.as_slice()) {
            (true, [3]) => Some(2),
            (false, [3, 3]) => Some(3),
            _ => None,
        }
    } else {
        match (alpha == -1, a1, abs.as_slice()) {
            (false, Some(2), [3]) => Some(4),
            (true, Some(4), [3]) => Some(5),
            (true, Some(2), [5]) => Some(6),
            (true, Some(2), [3, 3]) => Some(7),
            _ => None,
        }
    }
}

fn odd_values(max_abs: i64) -> Vec<i64> {
    (-max_abs..=max_abs).filter(|a| a % 2 != 0).collect()
}

/// Sorted multisets of `len` odd values with `|a| <= max_abs`.
fn odd_multisets(len: usize, max_abs: i64) -> Vec<Vec<i64>> {
    fn go(vals: &[i64], start: usize, len: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for i in start..vals.len() {
            cur.push(vals[i]);
            go(vals, i, len, cur, out);
            cur.pop();
        }
    }
    let vals = odd_values(max_abs);
    let mut out = Vec::new();
    go(&vals, 0, len, &mut Vec::new(), &mut out);
    out
}

/// Brute-force enumeration of low-genus patterns over odd entries with
/// `|a_i| <= max_abs` and at most `max_n` strands, up to mirroring.
///
/// Three strands: patterns of genus exactly two. Even first, `n >= 4`:
/// patterns whose genus bound is at most two. The genus formulas depend on
/// the tail only through `alpha` and `delta`, so tails are multisets; the
/// even slot is symbolic for odd `n` and ranges over the few positive
/// values compatible with the bound for even `n`.
pub fn enumerate_low_genus(
    family: ExceptionFamily,
    max_abs: i64,
    max_n: usize,
    hyp: Hypotheses,
) -> Vec<ExceptionPattern> {
    let mut out = BTreeSet::new();
    let unit_pair = |t: &[i64]| t.contains(&1) && t.contains(&-1);
    match family {
        ExceptionFamily::ThreeStrand => {
            for t in odd_multisets(2, max_abs) {
                if hyp.no_unit_pair && unit_pair(&t) {
                    continue;
                }
                if kim_lee_three(t[0], t[1]) == 2 {
                    out.insert(ExceptionPattern {
                        even: EvenSlot::Any,
                        tail: mirror_canonical_tail(&t),
                        item: None,
                    });
                }
            }
        }
        ExceptionFamily::EvenFirst => {
            for n in 4..=max_n {
                for t in odd_multisets(n - 1, max_abs) {
                    if hyp.no_unit_pair && unit_pair(&t) {
                        continue;
                    }
                    if n % 2 == 1 {
                        if kim_lee_even_bound(2, &t).0 <= 2 {
                            let tail = mirror_canonical_tail(&t);
                            let item = classify_even_first_item(EvenSlot::Any, &tail);
                            out.insert(ExceptionPattern {
                                even: EvenSlot::Any,
                                tail,
                                item,
                            });
                        }
                        continue;
                    }
                    // The bound grows with a1, so a1 <= 2 * (2 + 1) + 2 suffices.
                    for a1 in (2..=8).step_by(2) {
                        if hyp.no_two_unit && a1 == 2 && t.contains(&-1) {
                            continue;
                        }
                        if kim_lee_even_bound(a1, &t).0 <= 2 {
                            let mut tail = t.clone();
                            sort_tail(&mut tail);
                            let even = EvenSlot::Fixed(a1);
                            let item = classify_even_first_item(even, &tail);
                            out.insert(ExceptionPattern { even, tail, item });
                        }
                    }
                }
            }
        }
    }
    out.into_iter().collect()
}

/// Low-genus patterns under the standard hypotheses, `|a_i| <= 7`,
/// at most eight strands.
pub fn genus2_exceptions(family: ExceptionFamily) -> Vec<ExceptionPattern> {
    enumerate_low_genus(family, 7, 8, Hypotheses::STANDARD)
}

/// Which of the three orientation patterns a knot diagram carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CaseTag {
    I,
    II,
    III,
}

/// Possible delta-gradings of Kauffman states. Values are half-integers,
/// kept doubled.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaGradings {
    twice: BTreeSet<i64>,
    pub case_tag: CaseTag,
    pub neg_count: usize,
    pub pos_count: usize,
}

impl DeltaGradings {
    pub fn twice_values(&self) -> &BTreeSet<i64> {
        &self.twice
    }

    pub fn values(&self) -> Vec<Rational> {
        self.twice
            .iter()
            .map(|v| Rational::new(BigInt::from(*v), BigInt::from(2)))
            .collect()
    }

    pub fn thickness(&self) -> u32 {
        self.twice.len() as u32 - 1
    }

    pub fn contains_zero(&self) -> bool {
        self.twice.contains(&0)
    }

    /// At most two values, one apart.
    pub fn gap_at_most_one(&self) -> bool {
        let v: Vec<i64> = self.twice.iter().copied().collect();
        match v.as_slice() {
            [_] => true,
            [x, y] => y - x == 2,
            _ => false,
        }
    }
}

impl Serialize for DeltaGradings {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let values: Vec<f64> = self.twice.iter().map(|v| *v as f64 / 2.0).collect();
        let mut s = serializer.serialize_struct("DeltaGradings", 5)?;
        s.serialize_field("values", &values)?;
        s.serialize_field("thickness", &self.thickness())?;
        s.serialize_field("case_tag", &self.case_tag)?;
        s.serialize_field("neg_count", &self.neg_count)?;
        s.serialize_field("pos_count", &self.pos_count)?;
        s.end()
    }
}

/// Delta-gradings of the Kauffman-state generators on the standard
/// diagram, from the local contributions of bigons, the top domain and the
/// domains between strands.
pub fn delta_gradings(p: &PretzelParams) -> Result<DeltaGradings, GenusError> {
    if !p.is_normalized() {
        return Err(GenusError::Unnormalized(p.to_string()));
    }
    let class = p.classify();
    if !class.is_knot() {
        return Err(GenusError::NotAKnot(p.to_string()));
    }
    let (neg_count, pos_count) = p.sign_counts();
    let (k, l) = (neg_count as i64, pos_count as i64);
    // Each bigon of strand i contributes sign(a_i) / 2.
    let bigons = |a: &[i64]| -> i64 { a.iter().map(|x| x.signum() * (x.abs() - 1)).sum() };
    let (twice, case_tag) = match class {
        ParityClass::AllOddOddN => (BTreeSet::from([k - l - 1, k - l + 1]), CaseTag::I),
        ParityClass::OneEvenOddN => {
            let r = p.even_first().expect("one even entry");
            let a = r.as_slice();
            let b = bigons(&a[1..]);
            let c = a[0].signum();
            (BTreeSet::from([b, b - 1 + c, b + 1 + c]), CaseTag::II)
        }
        _ => {
            let b = bigons(p.as_slice());
            (BTreeSet::from([b - 1, b + 1]), CaseTag::III)
        }
    };
    Ok(DeltaGradings {
        twice,
        case_tag,
        neg_count,
        pos_count,
    })
}

/// Certificate that `tau != 0` for a five-strand all-odd knot: no
/// generator sits in delta-grading zero, i.e. `|k - l| >= 2`.
pub fn tau_nonzero(p: &PretzelParams) -> Result<bool, GenusError> {
    if p.len() != 5 || p.classify() != ParityClass::AllOddOddN {
        return Err(GenusError::BadShape {
            params: p.to_string(),
            expected: "five odd parameters",
        });
    }
    Ok(!delta_gradings(p)?.contains_zero())
}

/// `q <= (th + 2g) / (2g (g - 1))` and the positive integers below it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QBound {
    #[serde(serialize_with = "crate::laurent::serialize_rational")]
    pub bound: Rational,
    pub admissible_q: Vec<i64>,
}

pub fn hanselman_q_bound(th: i64, g: i64) -> Result<QBound, GenusError> {
    if g < 2 {
        return Err(GenusError::GenusTooSmall(g));
    }
    let bound = Rational::new(BigInt::from(th + 2 * g), BigInt::from(2 * g * (g - 1)));
    let max_q = (th + 2 * g).div_euclid(2 * g * (g - 1));
    Ok(QBound {
        bound,
        admissible_q: (1..=max_q).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pp(v: &[i64]) -> PretzelParams {
        PretzelParams::new(v.to_vec()).unwrap()
    }

    #[test]
    fn genus_examples() {
        let g = genus(&pp(&[3, 5, 7])).unwrap();
        assert_eq!((g.value, g.exact, g.source), (1, true, GenusSource::KimLee3));
        for ell in [-5i64, -2, -1, 1, 3] {
            let p = pp(&[2 * ell, 3, 1]);
            if p.is_normalized() {
                let g = genus(&p).unwrap();
                assert_eq!((g.value, g.exact), (2, true), "{p}");
            }
        }
        let g = genus(&pp(&[3, 3, 3, -3, -3])).unwrap();
        assert_eq!((g.value, g.source), (2, GenusSource::Gabai));
        assert_eq!(genus(&pp(&[-2, 3, 7])).unwrap().value, 5);
        assert_eq!(genus(&pp(&[-2, -3, 7])).unwrap().value, 4);
    }

    #[test]
    fn kim_lee_even_cases() {
        // n odd, alpha != 0; n odd, alpha = 0; n even with both alphas.
        assert_eq!(genus(&pp(&[4, 3, 5, 7, 9])).unwrap().value, (2 + 4 + 6 + 8 + 2) / 2);
        assert_eq!(genus(&pp(&[4, 3, -5, 7, -9])).unwrap().value, (2 + 4 + 6 + 8) / 2);
        assert_eq!(genus(&pp(&[4, 3, 5, 7])).unwrap().value, (4 + 2 + 4 + 6) / 2);
        assert_eq!(genus(&pp(&[4, 3, -5, -7])).unwrap().value, (4 + 2 + 4 + 6) / 2 - 1);
        // Mirroring to make a1 positive.
        assert_eq!(genus(&pp(&[-4, -3, 5, 7])).unwrap().value, (4 + 2 + 4 + 6) / 2 - 1);
        let g = genus(&pp(&[4, 3, 1, 1])).unwrap();
        assert!(!g.exact);
        assert_eq!((g.alpha, g.delta_param), (3, 2));
    }

    #[test]
    fn genus_errors() {
        assert!(matches!(genus(&pp(&[1, 1, 1, -1, -1])), Err(GenusError::Unnormalized(_))));
        assert!(matches!(genus(&pp(&[3, 3])), Err(GenusError::Unnormalized(_))));
        assert!(matches!(genus(&pp(&[3, 3, 3, 3])), Err(GenusError::NotAKnot(_))));
    }

    #[test]
    fn three_strand_exceptions() {
        let got: Vec<Vec<i64>> = genus2_exceptions(ExceptionFamily::ThreeStrand)
            .into_iter()
            .map(|e| e.tail)
            .collect();
        let want: BTreeSet<Vec<i64>> = [vec![3, 1], vec![3, -3], vec![-5, 1]]
            .iter()
            .map(|t| mirror_canonical_tail(t))
            .collect();
        assert_eq!(got.into_iter().collect::<BTreeSet<_>>(), want);
    }

    #[test]
    fn even_first_items() {
        let ex = genus2_exceptions(ExceptionFamily::EvenFirst);
        assert!(ex.iter().all(|e| e.item.is_some()), "{ex:?}");
        let items: BTreeSet<u8> = ex.iter().filter_map(|e| e.item).collect();
        assert_eq!(items, BTreeSet::from([1, 2, 3, 4, 5, 7]));
        assert!(ex.contains(&ExceptionPattern {
            even: EvenSlot::Fixed(4),
            tail: vec![3, -1, -1],
            item: Some(5),
        }));
    }

    #[test]
    fn relaxed_hypotheses_expose_item_six() {
        let hyp = Hypotheses {
            no_unit_pair: true,
            no_two_unit: false,
        };
        let ex = enumerate_low_genus(ExceptionFamily::EvenFirst, 7, 6, hyp);
        assert!(ex.iter().any(|e| e.item == Some(6)));
        // ... but also patterns outside every item.
        assert!(ex.iter().any(|e| e.item.is_none() && e.tail == vec![3, -1, -1]));
    }

    #[test]
    fn uncorroborated_branch() {
        assert!(genus(&pp(&[4, 3, -3, -3])).unwrap().uncorroborated(4));
        assert!(!genus(&pp(&[4, 3, 3, -3])).unwrap().uncorroborated(4));
        assert!(!genus(&pp(&[4, 3, -3, -3, 3])).unwrap().uncorroborated(5));
    }

    #[test]
    fn gradings_examples() {
        let d = delta_gradings(&pp(&[3, 5, 7])).unwrap();
        assert_eq!(d.twice_values(), &BTreeSet::from([-4, -2]));
        assert_eq!(d.thickness(), 1);
        let d = delta_gradings(&pp(&[3, 3, 3, 3, 3])).unwrap();
        assert_eq!(d.twice_values(), &BTreeSet::from([-6, -4]));
        assert!(delta_gradings(&pp(&[1, 1, 1, -1, -1])).is_err());
        for v in [vec![2, 3, 5], vec![-2, 3, -5], vec![4, 3, 5, 7], vec![-6, 3, -3, 5]] {
            let d = delta_gradings(&pp(&v)).unwrap();
            assert!(d.gap_at_most_one(), "{v:?}");
        }
    }

    #[test]
    fn tau_examples() {
        assert!(tau_nonzero(&pp(&[3, 5, 7, 9, 11])).unwrap());
        assert!(!tau_nonzero(&pp(&[3, 3, 3, -3, -3])).unwrap());
        assert!(tau_nonzero(&pp(&[-3, -5, -7, -9, 3])).unwrap());
        assert!(tau_nonzero(&pp(&[3, 5, 7])).is_err());
    }

    #[test]
    fn q_bound_examples() {
        let r = |a: i64, b: i64| Rational::new(BigInt::from(a), BigInt::from(b));
        let b = hanselman_q_bound(1, 3).unwrap();
        assert_eq!((b.bound, b.admissible_q.len()), (r(7, 12), 0));
        assert_eq!(hanselman_q_bound(5, 3).unwrap().bound, r(11, 12));
        assert_eq!(hanselman_q_bound(1, 2).unwrap().admissible_q, vec![1]);
        assert_eq!(hanselman_q_bound(1, 1), Err(GenusError::GenusTooSmall(1)));
    }
}
