//! The orbit `V` of `v(1, 1, 1)` under `⟨φ_3⟩` in PG(13, q).
//!
//! `v(a, b, c)` with `a` in GF(q^2) and `b, c` in GF(q^6) is written as
//! `(a_0, a_1; b_0..b_5; c_0..c_5)`.

use std::sync::Arc;

use crate::field::{FieldElement, FieldTower};
use crate::geometry::{Matrix, PointSet};
use crate::{Error, Result};

/// Exponents `(q^4+q^2+1, q^3+q+1, q^4+q+1)` of `φ_3` on `(a, b, c)`.
pub fn phi3_exponents(q: u64) -> [u64; 3] {
    [q.pow(4) + q * q + 1, q.pow(3) + q + 1, q.pow(4) + q + 1]
}

/// Matrix of `φ_3 : v(a, b, c) -> v(ω^{e_0} a, ω^{e_1} b, ω^{e_2} c)`.
pub fn phi3_matrix(tower: &FieldTower) -> Result<Matrix> {
    let f = tower.ambient().clone();
    let [e0, e1, e2] = phi3_exponents(tower.q()).map(|e| f.pow(f.generator(), e));
    let ma = tower.linear_map(2, 2, |a| f.mul(e0, a))?;
    let mb = tower.linear_map(6, 6, |b| f.mul(e1, b))?;
    let mc = tower.linear_map(6, 6, |c| f.mul(e2, c))?;
    Ok(Matrix::block_diag(&[ma, mb, mc]))
}

/// `(q^6 - 1)/(q - 1)`.
pub fn pg13_size(q: u64) -> u64 {
    (q.pow(6) - 1) / (q - 1)
}

fn v_coords(tower: &FieldTower, a: FieldElement, b: FieldElement, c: FieldElement) -> Result<Vec<u8>> {
    let mut v = tower.expand(a, 2)?;
    v.extend(tower.expand(b, 6)?);
    v.extend(tower.expand(c, 6)?);
    Ok(v)
}

pub fn pg13_set_in(tower: &FieldTower) -> Result<PointSet> {
    if tower.degree() != 6 {
        return Err(Error::InvalidArgument("PG(13, q) construction lives over GF(q^6)".into()));
    }
    let f = tower.ambient();
    let q = tower.q();
    let [e0, e1, e2] = phi3_exponents(q);
    let size = pg13_size(q);
    let mut x = f.one();
    let mut vectors = Vec::with_capacity(size as usize);
    for _ in 0..size {
        vectors.push(v_coords(tower, f.pow(x, e0), f.pow(x, e1), f.pow(x, e2))?);
        x = f.mul(x, f.generator());
    }
    let set = PointSet::from_vectors(Arc::clone(tower.base()), 13, "pg13", vectors)?;
    if set.len() as u64 != size {
        return Err(Error::Internal(format!("orbit of v(1,1,1) has {} points, expected {size}", set.len())));
    }
    set.with_generators(vec![phi3_matrix(tower)?])
}

pub fn pg13_set(q: u64) -> Result<PointSet> {
    pg13_set_in(&*FieldTower::new(q, 6)?)
}
