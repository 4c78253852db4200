//! Points of the projective line over an extension field, cross-ratios and
//! Möbius maps.

use crate::field::{FieldContext, FieldElement};
use crate::{Error, Result};

/// A point of PG(1, F): a finite parameter `u` (the point `(1, u)`) or infinity `(0, 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LinePoint {
    Finite(FieldElement),
    Infinity,
}

impl LinePoint {
    /// Homogeneous representative.
    fn pair(self, f: &FieldContext) -> (FieldElement, FieldElement) {
        match self {
            LinePoint::Finite(u) => (f.one(), u),
            LinePoint::Infinity => (f.zero(), f.one()),
        }
    }

    fn from_pair(f: &FieldContext, x: FieldElement, y: FieldElement) -> Self {
        match f.inv(x) {
            Some(ix) => LinePoint::Finite(f.mul(y, ix)),
            None => LinePoint::Infinity,
        }
    }
}

fn det(f: &FieldContext, a: (FieldElement, FieldElement), b: (FieldElement, FieldElement)) -> FieldElement {
    f.sub(f.mul(a.0, b.1), f.mul(a.1, b.0))
}

/// `{u, v; w, z} = (u - w)(v - z) / ((u - z)(v - w))`, with infinity handled
/// through homogeneous coordinates. Repeated points are rejected.
pub fn cross_ratio(f: &FieldContext, u: LinePoint, v: LinePoint, w: LinePoint, z: LinePoint) -> Result<LinePoint> {
    let pts = [u, v, w, z];
    for i in 0..4 {
        for j in i + 1..4 {
            if pts[i] == pts[j] {
                return Err(Error::DegenerateCrossRatio);
            }
        }
    }
    let [u, v, w, z] = pts.map(|p| p.pair(f));
    let num = f.mul(det(f, u, w), det(f, v, z));
    let den = f.mul(det(f, u, z), det(f, v, w));
    Ok(LinePoint::from_pair(f, den, num))
}

/// True iff the four points lie on a common subline PG(1, q), i.e. their
/// cross-ratio lies in GF(q).
pub fn in_q_subline(f: &FieldContext, q: u64, u: LinePoint, v: LinePoint, w: LinePoint, z: LinePoint) -> Result<bool> {
    f.subfield_degree(q)?;
    match cross_ratio(f, u, v, w, z)? {
        LinePoint::Finite(x) => f.in_subfield(x, q),
        LinePoint::Infinity => Ok(true),
    }
}

/// The map `x -> (a x + b) / (c x + d)` with `a d - b c != 0`.
#[derive(Clone, Copy, Debug)]
pub struct Mobius {
    a: FieldElement,
    b: FieldElement,
    c: FieldElement,
    d: FieldElement,
}

impl Mobius {
    pub fn new(f: &FieldContext, a: FieldElement, b: FieldElement, c: FieldElement, d: FieldElement) -> Result<Self> {
        if f.sub(f.mul(a, d), f.mul(b, c)).is_zero() {
            return Err(Error::InvalidArgument("singular Möbius map".into()));
        }
        Ok(Mobius { a, b, c, d })
    }

    pub fn apply(&self, f: &FieldContext, p: LinePoint) -> LinePoint {
        let (x, y) = p.pair(f);
        // (x : y) in (1, u) form, so the image of u is (c u + d : a u + b)
        let nx = f.add(f.mul(self.c, y), f.mul(self.d, x));
        let ny = f.add(f.mul(self.a, y), f.mul(self.b, x));
        LinePoint::from_pair(f, nx, ny)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldContext;
    use LinePoint::{Finite, Infinity};

    #[test]
    fn direct_formula_over_gf7() {
        let f = FieldContext::new(7, 1).unwrap();
        let e = |n: i64| Finite(f.from_int(n));
        // lambda (1 - mu) / (mu (1 - lambda)) with lambda = 2, mu = 3
        assert_eq!(cross_ratio(&f, e(0), e(1), e(2), e(3)).unwrap(), e(6));
        assert!(cross_ratio(&f, e(0), e(1), e(1), e(3)).is_err());
    }

    #[test]
    fn infinity_limit() {
        let f = FieldContext::new(3, 3).unwrap();
        let t = f.generator();
        let cr = cross_ratio(&f, Finite(f.zero()), Finite(f.one()), Infinity, Finite(t)).unwrap();
        let expect = f.div(f.sub(t, f.one()), t).unwrap();
        assert_eq!(cr, Finite(expect));
        assert!(!in_q_subline(&f, 3, Finite(f.zero()), Finite(f.one()), Infinity, Finite(t)).unwrap());
    }

    #[test]
    fn base_field_quadruples_lie_on_a_subline() {
        let f = FieldContext::new(2, 6).unwrap();
        let sub: Vec<FieldElement> = f.elements().filter(|&x| f.in_subfield(x, 4).unwrap()).collect();
        assert_eq!(sub.len(), 4);
        let p: Vec<LinePoint> = sub.iter().map(|&x| Finite(x)).collect();
        assert!(in_q_subline(&f, 4, p[0], p[1], p[2], p[3]).unwrap());
        assert!(in_q_subline(&f, 4, p[0], p[1], p[2], Infinity).unwrap());
    }

    #[test]
    fn some_frobenius_quadruple_leaves_the_subfield() {
        let f = FieldContext::new(3, 3).unwrap();
        let hit = f.elements().filter(|&t| !f.in_subfield(t, 3).unwrap()).any(|t| {
            let tq = f.frob_unchecked(t, 1, 3);
            !in_q_subline(&f, 3, Finite(f.zero()), Finite(f.one()), Finite(t), Finite(tq)).unwrap()
        });
        assert!(hit);
    }

    #[test]
    fn mobius_preserves_cross_ratio() {
        let f = FieldContext::new(2, 6).unwrap();
        let g = f.generator();
        let m = Mobius::new(&f, g, f.one(), f.pow(g, 5), f.zero()).unwrap();
        let pts = [Finite(f.zero()), Finite(f.one()), Infinity, Finite(f.pow(g, 11))];
        let before = cross_ratio(&f, pts[0], pts[1], pts[2], pts[3]).unwrap();
        let img = pts.map(|p| m.apply(&f, p));
        assert_eq!(cross_ratio(&f, img[0], img[1], img[2], img[3]).unwrap(), before);
    }
}
