use crate::laurent::LaurentPoly;
use crate::pretzel::PretzelParams;

use super::JonesError;

/// One factor of the closed form: `-s^{-2k}` for `bit = 0`, otherwise the
/// alternating geometric sum over `j = 1..|k|`.
pub fn term_p(bit: bool, k: i64) -> Result<LaurentPoly, JonesError> {
    if k == 0 {
        return Err(JonesError::ZeroTwist);
    }
    if !bit {
        return Ok(LaurentPoly::monomial(-2 * k, -1));
    }
    let sign = |j: i64| if j % 2 == 0 { 1 } else { -1 };
    Ok(if k > 0 {
        LaurentPoly::from_terms((1..=k).map(|j| (1 - 2 * j, sign(j))))
    } else {
        LaurentPoly::from_terms((1..=-k).map(|j| (-1 + 2 * j, sign(j))))
    })
}

/// Closed-form Jones polynomial `W_P(s)` of an all-odd pretzel:
/// the sum over `v in {0,1}^n` of `(-s - s^{-1})^{d(v)} * prod P_{v_i, a_i}`
/// with `d(v) = |(n - 1) - sum v_i|`.
pub fn jones_closed(p: &PretzelParams) -> Result<LaurentPoly, JonesError> {
    let a = p.as_slice();
    if a.iter().any(|x| x % 2 == 0) {
        return Err(JonesError::NotAllOdd);
    }
    let n = a.len();
    let factors: Vec<[LaurentPoly; 2]> = a
        .iter()
        .map(|&k| Ok([term_p(false, k)?, term_p(true, k)?]))
        .collect::<Result<_, JonesError>>()?;
    let loop_powers: Vec<LaurentPoly> = (0..=n)
        .scan(LaurentPoly::one(), |acc, _| {
            let cur = acc.clone();
            *acc = &*acc * &LaurentPoly::loop_value();
            Some(cur)
        })
        .collect();

    // The loop power depends on v only through its number of ones, so group
    // the products by that count: by_ones[m] sums prod P_{v_i, a_i} over v
    // with m ones.
    let mut by_ones = vec![LaurentPoly::one()];
    for f in &factors {
        let mut next = vec![LaurentPoly::zero(); by_ones.len() + 1];
        for (m, e) in by_ones.iter().enumerate() {
            next[m] = &next[m] + &(e * &f[0]);
            next[m + 1] = &next[m + 1] + &(e * &f[1]);
        }
        by_ones = next;
    }
    let mut total = LaurentPoly::zero();
    for (ones, e) in by_ones.iter().enumerate() {
        let d = (n as i64 - 1 - ones as i64).unsigned_abs() as usize;
        total = &total + &(&loop_powers[d] * e);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pp(v: &[i64]) -> PretzelParams {
        PretzelParams::new(v.to_vec()).unwrap()
    }

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    #[test]
    fn term_examples() {
        assert_eq!(term_p(false, 1).unwrap(), lp(&[(-2, -1)]));
        assert_eq!(term_p(true, 1).unwrap(), lp(&[(-1, -1)]));
        assert_eq!(term_p(true, -2).unwrap(), lp(&[(1, -1), (3, 1)]));
        assert_eq!(term_p(true, 0), Err(JonesError::ZeroTwist));
    }

    #[test]
    fn unknot_and_trefoils() {
        assert_eq!(jones_closed(&pp(&[1])).unwrap(), LaurentPoly::one());
        let left = lp(&[(-2, 1), (-6, 1), (-8, -1)]);
        assert_eq!(jones_closed(&pp(&[1, 1, 1])).unwrap(), left);
        assert_eq!(
            jones_closed(&pp(&[-1, -1, -1])).unwrap(),
            left.substitute_inverse()
        );
    }

    #[test]
    fn even_entry_is_rejected() {
        assert_eq!(jones_closed(&pp(&[2, 3, 3])), Err(JonesError::NotAllOdd));
    }
}
