//! Pretzel parameter sequences: validation, the strand-reducing moves,
//! parity classes, orientation patterns and dihedral canonical forms.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamError {
    #[error("a pretzel needs at least one strand")]
    Empty,
    #[error(
        "parameter {index} is zero; P(0, a2, ..., an) is the connected sum of the torus knots \
         T(2,a2) # ... # T(2,an) and is not stored as a pretzel"
    )]
    ZeroParameter { index: usize },
    #[error("cannot parse pretzel parameters {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

/// Ordered sequence of nonzero twist parameters `(a1, ..., an)`.
///
/// Equality is sequence equality; use [`PretzelParams::dihedral_canonical`]
/// to compare up to rotation and reflection.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct PretzelParams(Vec<i64>);

impl<'de> Deserialize<'de> for PretzelParams {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<i64>::deserialize(d)?;
        PretzelParams::new(v).map_err(serde::de::Error::custom)
    }
}

impl PretzelParams {
    pub fn new(params: Vec<i64>) -> Result<Self, ParamError> {
        if params.is_empty() {
            return Err(ParamError::Empty);
        }
        if let Some(index) = params.iter().position(|&a| a == 0) {
            return Err(ParamError::ZeroParameter { index });
        }
        Ok(Self(params))
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn classify(&self) -> ParityClass {
        ParityClass::of(&self.0)
    }

    pub fn mirror(&self) -> Self {
        Self(self.0.iter().map(|a| -a).collect())
    }

    /// Crossings of the standard diagram, `sum |a_i|`.
    pub fn crossing_bound(&self) -> u64 {
        self.0.iter().map(|a| a.unsigned_abs()).sum()
    }

    /// Lexicographically least sequence among all rotations and reflections.
    pub fn dihedral_canonical(&self) -> Self {
        Self(dihedral_min(&self.0))
    }

    /// Canonical representative up to dihedral symmetry and mirroring.
    pub fn search_key(&self) -> Self {
        let a = dihedral_min(&self.0);
        let b = dihedral_min(&self.mirror().0);
        Self(a.min(b))
    }

    pub fn normalize(&self) -> NormalizationTrace {
        normalize(&self.0)
    }

    /// True when no reduction move applies and at least three strands remain.
    pub fn is_normalized(&self) -> bool {
        self.0.len() >= 3 && forbidden_subset(&self.0).is_none()
    }

    /// Number of negative and positive entries.
    pub fn sign_counts(&self) -> (usize, usize) {
        let neg = self.0.iter().filter(|a| **a < 0).count();
        (neg, self.0.len() - neg)
    }

    /// Index of the unique even entry, if there is exactly one.
    pub fn even_index(&self) -> Option<usize> {
        let mut it = self.0.iter().enumerate().filter(|(_, a)| *a % 2 == 0);
        let first = it.next()?.0;
        it.next().is_none().then_some(first)
    }

    /// Rotation bringing the unique even entry to the front.
    pub fn even_first(&self) -> Option<Self> {
        let i = self.even_index()?;
        let mut v = self.0.clone();
        v.rotate_left(i);
        Some(Self(v))
    }

    /// Orientation pattern of the twist regions in the standard diagram.
    ///
    /// All-odd knots and links get the orientation induced by the two-disk
    /// Seifert surface (every region antiparallel). With one even entry and
    /// `n` odd the even region is antiparallel and the others parallel; with
    /// `n` even every region is parallel.
    pub fn strand_orientations(&self) -> Option<Vec<StrandOrientation>> {
        use StrandOrientation::*;
        match self.classify() {
            ParityClass::AllOddOddN | ParityClass::TwoComponentAllOddEvenN => {
                Some(vec![Antiparallel; self.len()])
            }
            ParityClass::OneEvenOddN => {
                let e = self.even_index()?;
                Some(
                    (0..self.len())
                        .map(|i| if i == e { Antiparallel } else { Parallel })
                        .collect(),
                )
            }
            ParityClass::OneEvenEvenN => Some(vec![Parallel; self.len()]),
            ParityClass::Unsupported => None,
        }
    }
}

impl fmt::Display for PretzelParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// Parses `"(-2,3,7)"`; whitespace is ignored.
impl FromStr for PretzelParams {
    type Err = ParamError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let parse_err = |reason: &str| ParamError::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let inner = compact
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| parse_err("expected parentheses around the parameter list"))?;
        if inner.is_empty() {
            return Err(ParamError::Empty);
        }
        let values = inner
            .split(',')
            .map(|tok| tok.parse::<i64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| parse_err(&e.to_string()))?;
        Self::new(values)
    }
}

impl TryFrom<Vec<i64>> for PretzelParams {
    type Error = ParamError;
    fn try_from(v: Vec<i64>) -> Result<Self, ParamError> {
        Self::new(v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ParityClass {
    /// All entries odd and `n` odd.
    AllOddOddN,
    /// Exactly one even entry, `n` odd.
    OneEvenOddN,
    /// Exactly one even entry, `n` even.
    OneEvenEvenN,
    /// All entries odd and `n` even: a two-component link.
    TwoComponentAllOddEvenN,
    /// Two or more even entries.
    Unsupported,
}

impl ParityClass {
    pub fn of(params: &[i64]) -> Self {
        let evens = params.iter().filter(|a| *a % 2 == 0).count();
        let odd_n = params.len() % 2 == 1;
        match (evens, odd_n) {
            (0, true) => Self::AllOddOddN,
            (0, false) => Self::TwoComponentAllOddEvenN,
            (1, true) => Self::OneEvenOddN,
            (1, false) => Self::OneEvenEvenN,
            _ => Self::Unsupported,
        }
    }

    pub fn components(self) -> Option<u32> {
        match self {
            Self::AllOddOddN | Self::OneEvenOddN | Self::OneEvenEvenN => Some(1),
            Self::TwoComponentAllOddEvenN => Some(2),
            Self::Unsupported => None,
        }
    }

    pub fn is_knot(self) -> bool {
        self.components() == Some(1)
    }

    /// Short tag used in reports: I, II, III, link, unsupported.
    pub fn case_tag(self) -> &'static str {
        match self {
            Self::AllOddOddN => "I",
            Self::OneEvenOddN => "II",
            Self::OneEvenEvenN => "III",
            Self::TwoComponentAllOddEvenN => "link",
            Self::Unsupported => "unsupported",
        }
    }
}

/// Whether the two strands of a twist region run the same vertical direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum StrandOrientation {
    Parallel,
    Antiparallel,
}

/// Knots that the reduction moves identify outside the pretzel family proper.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Terminal {
    Unknot,
    /// The torus knot or link `T(2, m)`.
    Torus { m: i64 },
    /// `T(2, a_1) # ... # T(2, a_k)`.
    ConnectedSum { summands: Vec<i64> },
}

impl fmt::Display for Terminal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Unknot => write!(f, "unknot"),
            Self::Torus { m } => write!(f, "T(2,{m})"),
            Self::ConnectedSum { summands } => {
                let parts: Vec<String> = summands.iter().map(|a| format!("T(2,{a})")).collect();
                write!(f, "{}", parts.join(" # "))
            }
        }
    }
}

/// Decomposes a raw sequence containing exactly one zero: `P(0, a2, ..., an)`
/// is the connected sum of the `T(2, a_i)`. Unknotted summands are dropped.
pub fn zero_entry_terminal(raw: &[i64]) -> Option<Terminal> {
    if raw.iter().filter(|a| **a == 0).count() != 1 {
        return None;
    }
    let summands: Vec<i64> = raw
        .iter()
        .copied()
        .filter(|a| *a != 0 && a.abs() != 1)
        .collect();
    Some(match summands.len() {
        0 => Terminal::Unknot,
        1 => Terminal::Torus { m: summands[0] },
        _ => Terminal::ConnectedSum { summands },
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "move", rename_all = "snake_case")]
pub enum NormalizationMove {
    /// Entries equal to +-1 moved to the end of the sequence.
    CollectUnits { result: Vec<i64> },
    /// A (1, -1) pair removed by a Reidemeister II move.
    CancelUnitPair { result: Vec<i64> },
    /// (2, -1) replaced by (-2), or (-2, 1) by (2).
    AbsorbUnit { even_from: i64, result: Vec<i64> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Normalized {
    Pretzel { params: PretzelParams },
    Terminal { terminal: Terminal },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalizationTrace {
    pub result: Normalized,
    pub moves: Vec<NormalizationMove>,
}

impl NormalizationTrace {
    pub fn pretzel(&self) -> Option<&PretzelParams> {
        match &self.result {
            Normalized::Pretzel { params } => Some(params),
            Normalized::Terminal { .. } => None,
        }
    }

    pub fn terminal(&self) -> Option<&Terminal> {
        match &self.result {
            Normalized::Terminal { terminal } => Some(terminal),
            Normalized::Pretzel { .. } => None,
        }
    }
}

fn forbidden_subset(v: &[i64]) -> Option<(i64, i64)> {
    let has = |x: i64| v.contains(&x);
    [(1, -1), (2, -1), (-2, 1)]
        .into_iter()
        .find(|&(a, b)| has(a) && has(b))
}

fn normalize(params: &[i64]) -> NormalizationTrace {
    let mut v = params.to_vec();
    let mut moves = Vec::new();
    loop {
        let (mut rest, units): (Vec<i64>, Vec<i64>) = v.iter().partition(|a| a.abs() != 1);
        rest.extend(units);
        if rest != v {
            v = rest;
            moves.push(NormalizationMove::CollectUnits { result: v.clone() });
        }
        if let (Some(i), Some(j)) = (v.iter().position(|&a| a == 1), v.iter().position(|&a| a == -1)) {
            let (lo, hi) = (i.min(j), i.max(j));
            v.remove(hi);
            v.remove(lo);
            moves.push(NormalizationMove::CancelUnitPair { result: v.clone() });
            continue;
        }
        let absorb = [(2, -1), (-2, 1)].into_iter().find_map(|(even, unit)| {
            let i = v.iter().position(|&a| a == even)?;
            let j = v.iter().position(|&a| a == unit)?;
            Some((even, i, j))
        });
        if let Some((even, i, j)) = absorb {
            v[i] = -even;
            v.remove(j);
            moves.push(NormalizationMove::AbsorbUnit {
                even_from: even,
                result: v.clone(),
            });
            continue;
        }
        break;
    }
    let result = match v.len() {
        // P() is two circles only when reached from a link; every knot input
        // that empties out is the unknot. A single twist region closes to an
        // unknot with kinks.
        0 | 1 => Normalized::Terminal {
            terminal: Terminal::Unknot,
        },
        2 => {
            let m = v[0] + v[1];
            let terminal = if m.abs() == 1 {
                Terminal::Unknot
            } else {
                Terminal::Torus { m }
            };
            Normalized::Terminal { terminal }
        }
        _ => Normalized::Pretzel {
            params: PretzelParams(v),
        },
    };
    NormalizationTrace { result, moves }
}

pub(crate) fn dihedral_min(v: &[i64]) -> Vec<i64> {
    let n = v.len();
    let mut best = v.to_vec();
    let mut cand = Vec::with_capacity(n);
    for start in 0..n {
        for reflect in [false, true] {
            cand.clear();
            for k in 0..n {
                let idx = if reflect {
                    (start + n - k) % n
                } else {
                    (start + k) % n
                };
                cand.push(v[idx]);
            }
            if cand < best {
                best.clone_from(&cand);
            }
        }
    }
    best
}

/// True when `v` is its own canonical representative under rotation,
/// reflection and mirroring. Cheaper than computing the minimum.
pub(crate) fn is_search_canonical(v: &[i64]) -> bool {
    let n = v.len();
    for sign in [1i64, -1] {
        for start in 0..n {
            for reflect in [false, true] {
                if sign == 1 && start == 0 && !reflect {
                    continue;
                }
                for k in 0..n {
                    let idx = if reflect {
                        (start + n - k) % n
                    } else {
                        (start + k) % n
                    };
                    let c = sign * v[idx];
                    if c < v[k] {
                        return false;
                    }
                    if c > v[k] {
                        break;
                    }
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pp(v: &[i64]) -> PretzelParams {
        PretzelParams::new(v.to_vec()).unwrap()
    }

    #[test]
    fn classify_examples() {
        assert_eq!(pp(&[3, 5, -7]).classify(), ParityClass::AllOddOddN);
        assert_eq!(pp(&[4, 3, 3]).classify(), ParityClass::OneEvenOddN);
        assert_eq!(pp(&[3, 3]).classify(), ParityClass::TwoComponentAllOddEvenN);
        assert_eq!(pp(&[2, 3, 3, 3]).classify(), ParityClass::OneEvenEvenN);
        assert_eq!(pp(&[4, 6, 8]).classify(), ParityClass::Unsupported);
        assert_eq!(pp(&[3, 3]).classify().components(), Some(2));
        assert_eq!(pp(&[4, 6, 8]).classify().components(), None);
    }

    #[test]
    fn construction_rejects_zero_and_empty() {
        assert_eq!(
            PretzelParams::new(vec![0, 3, 5]),
            Err(ParamError::ZeroParameter { index: 0 })
        );
        assert_eq!(PretzelParams::new(vec![]), Err(ParamError::Empty));
        let msg = PretzelParams::new(vec![0, 3, 5]).unwrap_err().to_string();
        assert!(msg.contains("connected sum"));
    }

    #[test]
    fn zero_entry_is_a_connected_sum() {
        assert_eq!(
            zero_entry_terminal(&[0, 3, 5]),
            Some(Terminal::ConnectedSum {
                summands: vec![3, 5]
            })
        );
        assert_eq!(zero_entry_terminal(&[0, 1, -3]), Some(Terminal::Torus { m: -3 }));
        assert_eq!(zero_entry_terminal(&[1, 3]), None);
    }

    #[test]
    fn parse_and_display() {
        let p: PretzelParams = " ( -2, 3 ,7 ) ".parse().unwrap();
        assert_eq!(p, pp(&[-2, 3, 7]));
        assert_eq!(p.to_string(), "(-2,3,7)");
        assert!(matches!(
            "(0,3,5)".parse::<PretzelParams>(),
            Err(ParamError::ZeroParameter { index: 0 })
        ));
        assert!(matches!("-2,3".parse::<PretzelParams>(), Err(ParamError::Parse { .. })));
        assert!(matches!("(2,x)".parse::<PretzelParams>(), Err(ParamError::Parse { .. })));
        assert_eq!("()".parse::<PretzelParams>(), Err(ParamError::Empty));
    }

    #[test]
    fn normalize_examples() {
        let t = pp(&[2, -1, 3]).normalize();
        assert_eq!(t.terminal(), Some(&Terminal::Unknot));
        assert!(t
            .moves
            .iter()
            .any(|m| matches!(m, NormalizationMove::AbsorbUnit { even_from: 2, .. })));

        let t = pp(&[1, 1, 1, -1, -1]).normalize();
        assert_eq!(t.terminal(), Some(&Terminal::Unknot));

        let t = pp(&[-2, 3, 7]).normalize();
        assert_eq!(t.pretzel(), Some(&pp(&[-2, 3, 7])));
        assert!(t.moves.is_empty());

        assert_eq!(
            pp(&[3, 5]).normalize().terminal(),
            Some(&Terminal::Torus { m: 8 })
        );
        assert_eq!(
            pp(&[1, 3, 5, -1, 7]).normalize().pretzel(),
            Some(&pp(&[3, 5, 7]))
        );
        assert_eq!(
            pp(&[1, 3, 5, 7]).normalize().pretzel(),
            Some(&pp(&[3, 5, 7, 1]))
        );
    }

    #[test]
    fn mirror_and_crossings() {
        assert_eq!(pp(&[3, 5, -7]).mirror(), pp(&[-3, -5, 7]));
        assert_eq!(pp(&[2, 3, 3]).mirror(), pp(&[-2, -3, -3]));
        assert_eq!(pp(&[-2, 3, 7]).crossing_bound(), 12);
        assert_eq!(pp(&[1]).crossing_bound(), 1);
        assert_eq!(pp(&[3, 3, 3, -3, -3]).crossing_bound(), 15);
    }

    #[test]
    fn dihedral_examples() {
        assert_eq!(pp(&[3, -5, 3]).dihedral_canonical(), pp(&[-5, 3, 3]));
        assert_eq!(pp(&[1, 1, 1]).dihedral_canonical(), pp(&[1, 1, 1]));
        assert_eq!(pp(&[7, 3, -2]).dihedral_canonical(), pp(&[-2, 3, 7]));
    }

    #[test]
    fn orientation_patterns() {
        use StrandOrientation::*;
        assert_eq!(
            pp(&[3, 4, 5]).strand_orientations(),
            Some(vec![Parallel, Antiparallel, Parallel])
        );
        assert_eq!(
            pp(&[3, 4, 5, 1]).strand_orientations(),
            Some(vec![Parallel; 4])
        );
        assert_eq!(pp(&[2, 4, 5]).strand_orientations(), None);
    }

    fn params(max_len: usize) -> impl Strategy<Value = PretzelParams> {
        prop::collection::vec(
            (-7i64..=7).prop_filter("nonzero", |a| *a != 0),
            1..=max_len,
        )
        .prop_map(|v| PretzelParams::new(v).unwrap())
    }

    proptest! {
        #[test]
        fn mirror_is_involution_and_keeps_class(p in params(7)) {
            prop_assert_eq!(p.mirror().mirror(), p.clone());
            prop_assert_eq!(p.mirror().classify(), p.classify());
        }

        #[test]
        fn normalize_is_idempotent(p in params(7)) {
            let t = p.normalize();
            if let Some(q) = t.pretzel() {
                prop_assert!(q.is_normalized());
                let again = q.normalize();
                prop_assert_eq!(again.pretzel(), Some(q));
                prop_assert!(again.moves.is_empty());
            }
        }

        #[test]
        fn canonical_is_dihedral_invariant(p in params(7)) {
            let c = p.dihedral_canonical();
            let v = p.as_slice().to_vec();
            for r in 0..v.len() {
                let mut w = v.clone();
                w.rotate_left(r);
                prop_assert_eq!(pp(&w).dihedral_canonical(), c.clone());
                w.reverse();
                prop_assert_eq!(pp(&w).dihedral_canonical(), c.clone());
            }
        }

        #[test]
        fn search_canonical_test_matches_minimum(p in params(6)) {
            let key = p.search_key();
            prop_assert_eq!(is_search_canonical(p.as_slice()), key == p);
            prop_assert!(is_search_canonical(key.as_slice()));
        }
    }
}
