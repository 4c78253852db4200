use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::{nt, FieldContext, FieldElement, SmallField};
use crate::geometry::Matrix;
use crate::{Error, Result};

struct SubBasis {
    basis: Vec<FieldElement>,
    dual: Vec<FieldElement>,
}

/// An ambient field GF(q^n) together with its base field GF(q) and, for every
/// intermediate field GF(q^e), a fixed GF(q)-basis used to expand elements into
/// intrinsic coordinates.
///
/// The basis of GF(q^e) is the power basis `1, w, ..., w^(e-1)` of
/// `w = omega^((q^n - 1)/(q^e - 1))`, where `omega` is the ambient generator.
/// Base field values are translated to [`SmallField`] codes through a fixed
/// isomorphism (the smallest root of the base field modulus).
pub struct FieldTower {
    q: u64,
    n: u32,
    ambient: Arc<FieldContext>,
    base: Arc<SmallField>,
    to_ambient: Vec<FieldElement>,
    from_ambient: HashMap<FieldElement, u8>,
    bases: BTreeMap<u32, SubBasis>,
}

impl std::fmt::Debug for FieldTower {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GF({}^{}) over GF({})", self.q, self.n, self.q)
    }
}

impl FieldTower {
    /// GF(q^n) over GF(q) with the smallest ambient modulus.
    pub fn new(q: u64, n: u32) -> Result<Arc<Self>> {
        Self::with_modulus_index(q, n, 0)
    }

    /// GF(q^n) over GF(q), ambient modulus chosen by search index.
    pub fn with_modulus_index(q: u64, n: u32, index: usize) -> Result<Arc<Self>> {
        let (p, e0) = nt::prime_power(q)
            .ok_or_else(|| Error::InvalidField(format!("{q} is not a prime power")))?;
        let ambient = FieldContext::with_modulus_index(p, e0 * n, index)?;
        Self::from_ambient(q, n, ambient)
    }

    pub fn from_ambient(q: u64, n: u32, ambient: Arc<FieldContext>) -> Result<Arc<Self>> {
        if ambient.subfield_degree(q)? * n != ambient.degree() {
            return Err(Error::InvalidField("ambient degree mismatch".into()));
        }
        let base = SmallField::new(q)?;
        let group = ambient.group_order();
        let w1 = ambient.pow(ambient.generator(), group / (q - 1));
        let mut sub = vec![ambient.zero()];
        let mut x = ambient.one();
        for _ in 0..q - 1 {
            sub.push(x);
            x = ambient.mul(x, w1);
        }
        sub.sort();
        let bctx = base.context();
        let fmod = bctx.modulus();
        let root = sub
            .iter()
            .copied()
            .find(|&r| {
                let mut acc = ambient.zero();
                for &c in fmod.iter().rev() {
                    acc = ambient.add(ambient.mul(acc, r), ambient.from_int(c as i64));
                }
                acc.is_zero()
            })
            .ok_or_else(|| Error::Internal("base modulus has no root in the ambient field".into()))?;
        let mut to_ambient = Vec::with_capacity(q as usize);
        let mut from_ambient = HashMap::new();
        for code in 0..q {
            let coeffs = bctx.coeffs(bctx.from_code(code)?);
            let mut acc = ambient.zero();
            let mut rp = ambient.one();
            for &c in &coeffs {
                acc = ambient.add(acc, ambient.mul(ambient.from_int(c as i64), rp));
                rp = ambient.mul(rp, root);
            }
            to_ambient.push(acc);
            from_ambient.insert(acc, code as u8);
        }
        if from_ambient.len() != q as usize {
            return Err(Error::Internal("base field embedding is not injective".into()));
        }
        let mut tower = FieldTower {
            q,
            n,
            ambient,
            base,
            to_ambient,
            from_ambient,
            bases: BTreeMap::new(),
        };
        for e in (1..=n).filter(|e| n.is_multiple_of(*e)) {
            let sb = tower.build_basis(e)?;
            tower.bases.insert(e, sb);
        }
        Ok(Arc::new(tower))
    }

    fn build_basis(&self, e: u32) -> Result<SubBasis> {
        let f = &self.ambient;
        let qe = self.q.pow(e);
        let w = f.pow(f.generator(), f.group_order() / (qe - 1));
        let basis: Vec<FieldElement> = (0..e).map(|i| f.pow(w, i as u64)).collect();
        let k = e as usize;
        // Gram matrix of the trace form, inverted by Gauss-Jordan in the ambient field
        let mut aug = vec![vec![f.zero(); 2 * k]; k];
        for i in 0..k {
            for j in 0..k {
                aug[i][j] = self.trace(f.mul(basis[i], basis[j]), e);
            }
            aug[i][k + i] = f.one();
        }
        for col in 0..k {
            let piv = (col..k)
                .find(|&r| !aug[r][col].is_zero())
                .ok_or_else(|| Error::Internal("degenerate trace form".into()))?;
            aug.swap(col, piv);
            let inv = f.inv(aug[col][col]).expect("nonzero pivot");
            for c in 0..2 * k {
                aug[col][c] = f.mul(aug[col][c], inv);
            }
            for r in 0..k {
                if r != col && !aug[r][col].is_zero() {
                    let factor = aug[r][col];
                    for c in 0..2 * k {
                        let t = f.mul(factor, aug[col][c]);
                        aug[r][c] = f.sub(aug[r][c], t);
                    }
                }
            }
        }
        let dual = (0..k)
            .map(|j| {
                (0..k).fold(f.zero(), |acc, i| f.add(acc, f.mul(aug[i][k + j], basis[i])))
            })
            .collect();
        Ok(SubBasis { basis, dual })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Degree of the ambient field over GF(q).
    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn ambient(&self) -> &Arc<FieldContext> {
        &self.ambient
    }

    pub fn base(&self) -> &Arc<SmallField> {
        &self.base
    }

    /// `x^(q^k)`.
    pub fn frob(&self, x: FieldElement, k: u32) -> FieldElement {
        self.ambient.frob_unchecked(x, k, self.q)
    }

    /// True iff `x` lies in GF(q^e).
    pub fn in_subfield(&self, x: FieldElement, e: u32) -> bool {
        self.frob(x, e) == x
    }

    /// Relative trace GF(q^e) -> GF(q).
    pub fn trace(&self, x: FieldElement, e: u32) -> FieldElement {
        (0..e).fold(self.ambient.zero(), |acc, k| self.ambient.add(acc, self.frob(x, k)))
    }

    /// The GF(q)-basis of GF(q^e) used for intrinsic coordinates.
    pub fn basis(&self, e: u32) -> Result<&[FieldElement]> {
        Ok(&self.sub_basis(e)?.basis)
    }

    fn sub_basis(&self, e: u32) -> Result<&SubBasis> {
        self.bases
            .get(&e)
            .ok_or_else(|| Error::InvalidArgument(format!("GF(q^{e}) is not a subfield of GF(q^{})", self.n)))
    }

    /// Code of a base field element.
    pub fn to_base(&self, x: FieldElement) -> Result<u8> {
        self.from_ambient.get(&x).copied().ok_or(Error::NotInSubfield { q: self.q })
    }

    pub fn from_base(&self, c: u8) -> FieldElement {
        self.to_ambient[c as usize]
    }

    /// Coordinates of `x` in GF(q^e) with respect to the fixed basis.
    pub fn expand(&self, x: FieldElement, e: u32) -> Result<Vec<u8>> {
        let sb = self.sub_basis(e)?;
        if !self.in_subfield(x, e) {
            return Err(Error::NotInSubfield { q: self.q.pow(e) });
        }
        sb.dual
            .iter()
            .map(|&d| self.to_base(self.trace(self.ambient.mul(x, d), e)))
            .collect()
    }

    /// Inverse of [`FieldTower::expand`].
    pub fn assemble(&self, coords: &[u8], e: u32) -> Result<FieldElement> {
        let sb = self.sub_basis(e)?;
        if coords.len() != e as usize {
            return Err(Error::InvalidArgument("coordinate count mismatch".into()));
        }
        Ok(coords.iter().zip(&sb.basis).fold(self.ambient.zero(), |acc, (&c, &b)| {
            self.ambient.add(acc, self.ambient.mul(self.from_base(c), b))
        }))
    }

    /// Matrix over GF(q) of a GF(q)-linear map GF(q^e_in) -> GF(q^e_out),
    /// acting on coordinate column vectors.
    pub fn linear_map<F>(&self, e_in: u32, e_out: u32, map: F) -> Result<Matrix>
    where
        F: Fn(FieldElement) -> FieldElement,
    {
        let basis = self.basis(e_in)?.to_vec();
        let mut m = Matrix::zeros(e_out as usize, e_in as usize);
        for (j, &b) in basis.iter().enumerate() {
            let col = self.expand(map(b), e_out)?;
            for (i, &c) in col.iter().enumerate() {
                m.set(i, j, c);
            }
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expand_assemble_round_trip() {
        for (q, n) in [(2u64, 3u32), (3, 3), (4, 6), (9, 2)] {
            let t = FieldTower::new(q, n).unwrap();
            let f = t.ambient();
            for e in (1..=n).filter(|e| n % e == 0) {
                for x in f.elements().filter(|&x| t.in_subfield(x, e)) {
                    let c = t.expand(x, e).unwrap();
                    assert_eq!(c.len(), e as usize);
                    assert_eq!(t.assemble(&c, e).unwrap(), x);
                }
            }
        }
    }

    #[test]
    fn base_embedding_is_a_ring_map() {
        let t = FieldTower::new(9, 3).unwrap();
        let (f, b) = (t.ambient(), t.base());
        for x in b.elements() {
            for y in b.elements() {
                let s = f.add(t.from_base(x), t.from_base(y));
                let p = f.mul(t.from_base(x), t.from_base(y));
                assert_eq!(t.to_base(s).unwrap(), b.add(x, y));
                assert_eq!(t.to_base(p).unwrap(), b.mul(x, y));
            }
        }
    }

    #[test]
    fn expand_rejects_elements_outside_the_subfield() {
        let t = FieldTower::new(2, 6).unwrap();
        let w = t.ambient().generator();
        assert!(matches!(t.expand(w, 3), Err(Error::NotInSubfield { .. })));
        assert!(t.expand(w, 4).is_err());
    }

    #[test]
    fn multiplication_map_matches_field_product() {
        let t = FieldTower::new(3, 3).unwrap();
        let f = t.ambient().clone();
        let lambda = f.pow(f.generator(), 5);
        let m = t.linear_map(3, 3, |x| f.mul(lambda, x)).unwrap();
        for x in f.elements() {
            let v = t.expand(x, 3).unwrap();
            assert_eq!(m.apply(t.base(), &v), t.expand(f.mul(lambda, x), 3).unwrap());
        }
    }
}
