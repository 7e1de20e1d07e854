//! Alexander polynomial of a pretzel knot from the Wirtinger presentation of
//! its standard diagram (Fox calculus), independent of the skein recursion
//! and of the genus formulas.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::conway::ConwayPoly;
use crate::jones::diagram::PretzelDiagram;
use crate::pretzel::PretzelParams;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlexanderError {
    #[error("{0} is not a knot")]
    NotAKnot(String),
    #[error("Alexander polynomial has a coefficient of degree {0} that is not an integer")]
    Inexact(usize),
}

/// Dense polynomial in `t`, lowest degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly(Vec<BigInt>);

impl Poly {
    fn from_i64(c: &[i64]) -> Self {
        Self(c.iter().map(|&x| BigInt::from(x)).collect()).trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.0.last().is_some_and(Zero::is_zero) {
            self.0.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::default();
        }
        let mut out = vec![BigInt::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self(out).trimmed()
    }

    fn add(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        let get = |v: &[BigInt], i: usize| v.get(i).cloned().unwrap_or_default();
        Self((0..n).map(|i| get(&self.0, i) + get(&o.0, i)).collect()).trimmed()
    }

    fn sub(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        let get = |v: &[BigInt], i: usize| v.get(i).cloned().unwrap_or_default();
        Self((0..n).map(|i| get(&self.0, i) - get(&o.0, i)).collect()).trimmed()
    }

    /// Exact quotient by `d`; fails if the division leaves a remainder.
    fn div_exact(&self, d: &Self) -> Result<Self, AlexanderError> {
        let mut rem = self.0.clone();
        let dl = d.0.len();
        if rem.len() < dl {
            return if self.is_zero() { Ok(Self::default()) } else { Err(AlexanderError::Inexact(0)) };
        }
        let lead = d.0.last().expect("nonzero divisor");
        let mut q = vec![BigInt::zero(); rem.len() - dl + 1];
        for k in (0..q.len()).rev() {
            let (c, r) = rem[k + dl - 1].div_rem(lead);
            if !r.is_zero() {
                return Err(AlexanderError::Inexact(k));
            }
            for (j, dc) in d.0.iter().enumerate() {
                rem[k + j] -= &c * dc;
            }
            q[k] = c;
        }
        if rem.iter().any(|r| !r.is_zero()) {
            return Err(AlexanderError::Inexact(0));
        }
        Ok(Self(q).trimmed())
    }

    /// Strips factors of `t` and fixes the sign so that `p(1) > 0`; two
    /// Alexander polynomials agree iff their normal forms are equal.
    pub fn normalized(&self) -> Self {
        let lo = self.0.iter().position(|c| !c.is_zero()).unwrap_or(0);
        let mut v: Vec<BigInt> = self.0[lo..].to_vec();
        let at_one: BigInt = v.iter().sum();
        if at_one.is_negative() || (at_one.is_zero() && v.last().is_some_and(Signed::is_negative)) {
            v.iter_mut().for_each(|c| *c = -c.clone());
        }
        Self(v).trimmed()
    }

    pub fn degree_span(&self) -> usize {
        let n = self.normalized();
        n.0.len().saturating_sub(1)
    }
}

/// Fraction-free determinant (Bareiss) over `Z[t]`.
fn determinant(mut m: Vec<Vec<Poly>>) -> Result<Poly, AlexanderError> {
    let n = m.len();
    if n == 0 {
        return Ok(Poly::from_i64(&[1]));
    }
    let mut sign = false;
    let mut prev = Poly::from_i64(&[1]);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = !sign;
                }
                None => return Ok(Poly::default()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = v.div_exact(&prev)?;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    Ok(if sign { Poly::default().sub(&d) } else { d })
}

/// Alexander polynomial of a pretzel knot, in normal form.
pub fn alexander_from_diagram(p: &PretzelParams) -> Result<Poly, AlexanderError> {
    if !p.classify().is_knot() {
        return Err(AlexanderError::NotAKnot(p.to_string()));
    }
    let d = PretzelDiagram::new(p);
    let (arcs, rels) = d.wirtinger();
    if arcs <= 1 {
        return Ok(Poly::from_i64(&[1]));
    }
    // Row of x_out = x_over^e x_in x_over^-e, times t for e = -1 so all
    // entries are polynomials.
    let mut m = vec![vec![Poly::default(); arcs]; rels.len()];
    for (row, r) in m.iter_mut().zip(&rels) {
        let (over, inc, out): (&[i64], &[i64], &[i64]) = if r.sign > 0 {
            (&[1, -1], &[0, 1], &[-1])
        } else {
            (&[-1, 1], &[1], &[0, -1])
        };
        let mut add = |col: usize, c: &[i64]| row[col] = row[col].add(&Poly::from_i64(c));
        add(r.over, over);
        add(r.under_in, inc);
        add(r.under_out, out);
    }
    // Delete one relation and one generator.
    let minor: Vec<Vec<Poly>> = m[..rels.len() - 1]
        .iter()
        .map(|row| row[..arcs - 1].to_vec())
        .collect();
    Ok(determinant(minor)?.normalized())
}

/// Alexander polynomial of a knot from its Conway polynomial, via
/// `z^2 = t - 2 + t^-1`, in normal form.
pub fn alexander_from_conway(c: &ConwayPoly) -> Poly {
    let half = c.degree().unwrap_or(0) / 2;
    let zsq = Poly::from_i64(&[1, -2, 1]);
    let mut total = Poly::default();
    for (e, k) in c.terms() {
        // c_e z^e t^half = c_e (t - 2 + t^-1)^(e/2) t^half
        let mut term = Poly(vec![k.clone()]);
        for _ in 0..e / 2 {
            term = term.mul(&zsq);
        }
        let shift = (half - e / 2) as usize;
        let mut shifted = vec![BigInt::zero(); shift];
        shifted.extend(term.0);
        total = total.add(&Poly(shifted).trimmed());
    }
    total.normalized()
}

impl Poly {
    pub fn eval_at_one(&self) -> BigInt {
        self.0.iter().sum()
    }

    pub fn one() -> Self {
        Self(vec![BigInt::one()])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conway::conway_polynomial;

    fn pp(v: &[i64]) -> PretzelParams {
        PretzelParams::new(v.to_vec()).unwrap()
    }

    #[test]
    fn trefoil() {
        assert_eq!(alexander_from_diagram(&pp(&[1, 1, 1])).unwrap(), Poly::from_i64(&[1, -1, 1]));
        assert_eq!(alexander_from_diagram(&pp(&[-1, -1, -1])).unwrap(), Poly::from_i64(&[1, -1, 1]));
    }

    #[test]
    fn unknots() {
        // A single region closes up to an unknot with kinks.
        for v in [vec![1, 1, -1], vec![1, -1, 1, -1, 1], vec![3]] {
            let a = alexander_from_diagram(&pp(&v)).unwrap();
            assert_eq!(a, Poly::one(), "{v:?}");
        }
    }

    #[test]
    fn matches_conway_on_small_knots() {
        for v in [vec![3, 5, 7], vec![-3, 5, 7], vec![1, 3, 3, 5, -3], vec![2, 3, 5], vec![2, 3, 5, 7]] {
            let p = pp(&v);
            let a = alexander_from_diagram(&p).unwrap();
            assert_eq!(a.eval_at_one(), BigInt::one(), "{v:?}");
            assert_eq!(a, alexander_from_conway(&conway_polynomial(&p).unwrap()), "{v:?}");
        }
    }
}
