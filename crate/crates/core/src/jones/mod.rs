//! Jones polynomials of pretzel knots and the derivative invariants read off
//! them.
//!
//! Three routes are available: the closed form for all-odd pretzels
//! ([`jones_closed`]), the full Kauffman-bracket state sum on the standard
//! diagram ([`bracket_jones`], capped by crossing count), and the twist-region
//! decomposition of the bracket ([`jones_twist_regions`]), which handles any
//! pretzel knot without a cap.

mod bracket;
mod closed;
pub mod diagram;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::laurent::{LaurentError, LaurentPoly, Rational};
use crate::pretzel::PretzelParams;

pub use bracket::{
    bracket_cap_from_env, bracket_jones, jones_twist_regions, BRACKET_CAP_ENV,
    DEFAULT_BRACKET_CAP,
};
pub use closed::{jones_closed, term_p};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JonesError {
    #[error("twist parameter must be nonzero")]
    ZeroTwist,
    #[error("closed form requires every parameter to be odd")]
    NotAllOdd,
    #[error("{crossings} crossings exceed the state-sum cap of {cap}")]
    CapExceeded { crossings: u64, cap: u64 },
    #[error("parameters describe a link or an unsupported pretzel, not a knot")]
    NotAKnot,
    #[error("bracket produced A-exponent {0}, not a multiple of two")]
    OddBracketExponent(i64),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
    #[error("V(1) = {0}, expected 1 for a knot")]
    NotAKnotPolynomial(BigInt),
    #[error("V''(1) = {0} is not divisible by 6")]
    NotDivisible(BigInt),
}

/// Which computation produced a Jones polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum JonesRoute {
    ClosedForm,
    StateSum,
    TwistRegions,
}

/// Jones polynomial with `V''(1)`, `V'''(1)`, `a2 = -V''(1)/6` and
/// `w3 = V'''(1)/72 + V''(1)/24`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JonesDerived {
    pub v: LaurentPoly,
    pub vpp1: BigInt,
    pub vppp1: BigInt,
    pub a2: BigInt,
    pub w3: Rational,
}

pub fn jones_derived(v: &LaurentPoly) -> Result<JonesDerived, JonesError> {
    let at_one = v.t_derivative_at_one(0)?;
    if !at_one.is_one() {
        return Err(JonesError::NotAKnotPolynomial(at_one));
    }
    let vpp1 = v.t_derivative_at_one(2)?;
    let vppp1 = v.t_derivative_at_one(3)?;
    let (q, r) = vpp1.div_rem(&BigInt::from(6));
    if !r.is_zero() {
        return Err(JonesError::NotDivisible(vpp1));
    }
    let w3 = Rational::new(vppp1.clone(), BigInt::from(72))
        + Rational::new(vpp1.clone(), BigInt::from(24));
    Ok(JonesDerived {
        v: v.clone(),
        a2: -q,
        vpp1,
        vppp1,
        w3,
    })
}

/// Jones polynomial by the cheapest exact route: the closed form for
/// all-odd knots, the twist-region bracket otherwise.
pub fn jones_polynomial(p: &PretzelParams) -> Result<(LaurentPoly, JonesRoute), JonesError> {
    if !p.classify().is_knot() {
        return Err(JonesError::NotAKnot);
    }
    match jones_closed(p) {
        Ok(v) => Ok((v, JonesRoute::ClosedForm)),
        Err(JonesError::NotAllOdd) => Ok((jones_twist_regions(p)?, JonesRoute::TwistRegions)),
        Err(e) => Err(e),
    }
}

/// Jones polynomial from the state-sum oracle when the diagram fits under
/// `cap`, falling back to the twist-region bracket above it.
pub fn oracle_jones(
    p: &PretzelParams,
    cap: u64,
) -> Result<(LaurentPoly, JonesRoute), JonesError> {
    match bracket_jones(p, cap) {
        Ok(v) => Ok((v, JonesRoute::StateSum)),
        Err(JonesError::CapExceeded { .. }) => {
            Ok((jones_twist_regions(p)?, JonesRoute::TwistRegions))
        }
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pp(v: &[i64]) -> PretzelParams {
        PretzelParams::new(v.to_vec()).unwrap()
    }

    #[test]
    fn trefoil_derived() {
        let d = jones_derived(&jones_closed(&pp(&[1, 1, 1])).unwrap()).unwrap();
        assert_eq!(d.vpp1, BigInt::from(-6));
        assert_eq!(d.vppp1, BigInt::from(54));
        assert_eq!(d.a2, BigInt::from(1));
        assert_eq!(d.w3, Rational::new(BigInt::from(1), BigInt::from(2)));
    }

    #[test]
    fn unknot_derived() {
        let d = jones_derived(&LaurentPoly::one()).unwrap();
        assert!(d.a2.is_zero());
        assert!(d.w3.is_zero());
    }

    #[test]
    fn torus_five_derived() {
        let d = jones_derived(&jones_closed(&pp(&[1, 1, 1, 1, 1])).unwrap()).unwrap();
        assert_eq!(d.a2, BigInt::from(3));
    }

    #[test]
    fn derived_errors() {
        let two = LaurentPoly::monomial(0, 2);
        assert!(matches!(jones_derived(&two), Err(JonesError::NotAKnotPolynomial(_))));
        let odd = LaurentPoly::from_terms([(1, 1), (0, 0)]);
        assert!(matches!(jones_derived(&odd), Err(JonesError::Laurent(_))));
        // 1 + (t - 1)^2 has V(1) = 1 and V''(1) = 2.
        let v = LaurentPoly::from_terms([(4, 1), (2, -2), (0, 2)]);
        assert_eq!(jones_derived(&v), Err(JonesError::NotDivisible(BigInt::from(2))));
    }

    #[test]
    fn routes_are_reported() {
        assert_eq!(jones_polynomial(&pp(&[3, 5, 7])).unwrap().1, JonesRoute::ClosedForm);
        assert_eq!(jones_polynomial(&pp(&[2, 5, 7])).unwrap().1, JonesRoute::TwistRegions);
        assert_eq!(oracle_jones(&pp(&[2, 5, 7]), 24).unwrap().1, JonesRoute::StateSum);
        assert_eq!(oracle_jones(&pp(&[9, 9, 9]), 24).unwrap().1, JonesRoute::TwistRegions);
    }
}
