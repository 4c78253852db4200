//! Bilinear forms on intrinsic coordinates.

use crate::field::{FieldElement, FieldTower, SmallField};
use crate::{Error, Result};

use super::{Hyperplane, Matrix, ProjectivePoint};

/// A bilinear form `B(x, y) = x^T G y` over GF(q), stored by its Gram matrix.
#[derive(Clone, Debug)]
pub struct SymplecticForm {
    gram: Matrix,
}

impl SymplecticForm {
    pub fn from_gram(f: &SmallField, gram: Matrix) -> Result<Self> {
        let n = gram.rows();
        if gram.cols() != n {
            return Err(Error::InvalidArgument("Gram matrix must be square".into()));
        }
        for i in 0..n {
            if gram.get(i, i) != 0 {
                return Err(Error::InvalidArgument("form is not alternating".into()));
            }
            for j in 0..i {
                if gram.get(i, j) != f.neg(gram.get(j, i)) {
                    return Err(Error::InvalidArgument("form is not alternating".into()));
                }
            }
        }
        Ok(SymplecticForm { gram })
    }

    /// The form `J ⊗ J ⊗ J`, `J = [[0, 1], [-1, 0]]`, on
    /// `U = {(a, b^{q^2}, b^q, c, b, c^q, c^{q^2}, d)}` with `a, d` in GF(q) and
    /// `b, c` in GF(q^3), pulled back to the intrinsic coordinates
    /// `(a, b_0, b_1, b_2, c_0, c_1, c_2, d)` of `tower` = GF(q^3) over GF(q).
    ///
    /// On `U` it reads `B(u, v) = sum_i (-1)^{popcount(i)} u_i v_{7-i}`, which is
    /// `a d' - d a' + Tr(c b') - Tr(b c')`.
    pub fn ovoid(tower: &FieldTower) -> Result<Self> {
        if tower.degree() != 3 {
            return Err(Error::InvalidArgument("the ovoid form lives over GF(q^3)".into()));
        }
        let f = tower.ambient();
        let lift = |x: &[u8]| -> Result<[FieldElement; 8]> {
            let a = tower.from_base(x[0]);
            let b = tower.assemble(&x[1..4], 3)?;
            let c = tower.assemble(&x[4..7], 3)?;
            let d = tower.from_base(x[7]);
            Ok([a, tower.frob(b, 2), tower.frob(b, 1), c, b, tower.frob(c, 1), tower.frob(c, 2), d])
        };
        let mut gram = Matrix::zeros(8, 8);
        for i in 0..8 {
            for j in 0..8 {
                let mut ei = [0u8; 8];
                let mut ej = [0u8; 8];
                ei[i] = 1;
                ej[j] = 1;
                let (u, v) = (lift(&ei)?, lift(&ej)?);
                let mut acc = f.zero();
                for k in 0..8 {
                    let t = f.mul(u[k], v[7 - k]);
                    acc = if (k as u32).count_ones().is_multiple_of(2) { f.add(acc, t) } else { f.sub(acc, t) };
                }
                gram.set(i, j, tower.to_base(acc)?);
            }
        }
        Self::from_gram(tower.base(), gram)
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn eval(&self, f: &SmallField, x: &[u8], y: &[u8]) -> u8 {
        super::dot(f, x, &self.gram.apply(f, y))
    }

    /// `B(P, Q)` for points of the form's ambient space.
    pub fn eval_points(&self, f: &SmallField, p: &ProjectivePoint, q: &ProjectivePoint) -> Result<u8> {
        if p.coords().len() != self.dim() || q.coords().len() != self.dim() {
            return Err(Error::MixedAmbient(format!("form acts on PG({}, q)", self.dim() - 1)));
        }
        Ok(self.eval(f, p.coords(), q.coords()))
    }

    /// The hyperplane `P^⊥ = {X : B(X, P) = 0}`; `None` if `P` is in the radical.
    pub fn perp(&self, f: &SmallField, p: &[u8]) -> Option<Hyperplane> {
        Hyperplane::new(f, self.gram.apply(f, p)).ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ovoid_form_is_alternating_and_nondegenerate() {
        for q in [2u64, 3, 4] {
            let t = FieldTower::new(q, 3).unwrap();
            let form = SymplecticForm::ovoid(&t).unwrap();
            assert!(form.gram().is_invertible(t.base()), "q={q}");
        }
    }

    #[test]
    fn ovoid_form_matches_the_closed_trace_expression() {
        let t = FieldTower::new(3, 3).unwrap();
        let (f, base) = (t.ambient().clone(), t.base().clone());
        let form = SymplecticForm::ovoid(&t).unwrap();
        let g = f.generator();
        let vecs = [(1u8, g, f.pow(g, 4), 2u8), (0, f.pow(g, 7), f.one(), 1), (2, f.zero(), f.pow(g, 20), 0)];
        for &(a, b, c, d) in &vecs {
            for &(a2, b2, c2, d2) in &vecs {
                let mut x = vec![a];
                x.extend(t.expand(b, 3).unwrap());
                x.extend(t.expand(c, 3).unwrap());
                x.push(d);
                let mut y = vec![a2];
                y.extend(t.expand(b2, 3).unwrap());
                y.extend(t.expand(c2, 3).unwrap());
                y.push(d2);
                let ad = f.sub(
                    f.mul(t.from_base(a), t.from_base(d2)),
                    f.mul(t.from_base(d), t.from_base(a2)),
                );
                let tr = f.sub(t.trace(f.mul(c, b2), 3), t.trace(f.mul(b, c2), 3));
                let want = t.to_base(f.add(ad, tr)).unwrap();
                assert_eq!(form.eval(&base, &x, &y), want);
            }
        }
    }
}
