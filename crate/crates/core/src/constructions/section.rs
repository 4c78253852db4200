//! The hyperplane section `H_2 ∩ O_2` of PG(6, q), its projection `Y` into
//! `Π = PG(5, q)`, the extension of `Y` by two points of the line `PG(V)`, and
//! the quotient quadric of `Π / PG(V)`.
//!
//! Coordinates: `u(a, b)` with `a` in GF(q) and `b` in GF(q^6) is written as
//! `(a; b_0..b_5)`, and points of `Π` (where `a = 0`) as `(b_0..b_5)`.

use std::sync::Arc;

use crate::field::{FieldElement, FieldTower};
use crate::geometry::{projective_points, Matrix, PointSet};
use crate::{Error, Result};

/// `ζ = ω^{(q+1)(q^2+q+1)(q-q^4)}`, a generator of the subgroup of order
/// `q^2 - q + 1` of GF(q^6)^*.
pub fn t_generator(tower: &FieldTower) -> FieldElement {
    let q = tower.q() as i128;
    tower.ambient().gen_pow((q + 1) * (q * q + q + 1) * (q - q.pow(4)))
}

/// The parameters `t = ζ^i`, `0 <= i < q^2 - q + 1`; index 0 is `t = 1`.
pub fn section_parameters(tower: &FieldTower) -> Vec<FieldElement> {
    let f = tower.ambient();
    let z = t_generator(tower);
    let d = tower.q() * tower.q() - tower.q() + 1;
    let mut out = Vec::with_capacity(d as usize);
    let mut t = f.one();
    for _ in 0..d {
        out.push(t);
        t = f.mul(t, z);
    }
    out
}

/// Matrix of `σ : u(a, b) -> u(a, ζ b)` on `(a; b_0..b_5)`.
pub fn sigma_matrix(tower: &FieldTower) -> Result<Matrix> {
    let f = tower.ambient().clone();
    let z = t_generator(tower);
    let mb = tower.linear_map(6, 6, |b| f.mul(z, b))?;
    Ok(Matrix::block_diag(&[Matrix::identity(1), mb]))
}

fn check_tower(tower: &FieldTower) -> Result<()> {
    if tower.degree() != 6 {
        return Err(Error::InvalidArgument("section constructions live over GF(q^6)".into()));
    }
    Ok(())
}

/// `{u(1, t) : t^{q^2-q+1} = 1}` in PG(6, q), with the generator of `T` attached.
pub fn hyperplane_section_in(tower: &FieldTower) -> Result<PointSet> {
    check_tower(tower)?;
    let vectors = section_parameters(tower)
        .into_iter()
        .map(|t| {
            let mut v = vec![1u8];
            v.extend(tower.expand(t, 6)?);
            Ok(v)
        })
        .collect::<Result<Vec<_>>>()?;
    let d = vectors.len();
    let set = PointSet::from_vectors(Arc::clone(tower.base()), 6, "hyp6", vectors)?;
    if set.len() != d {
        return Err(Error::Internal("section parameters are not distinct".into()));
    }
    set.with_generators(vec![sigma_matrix(tower)?])
}

pub fn hyperplane_section(q: u64) -> Result<PointSet> {
    hyperplane_section_in(&*FieldTower::new(q, 6)?)
}

/// `Y = {u(0, b - 1) : b^{q^2-q+1} = 1, b != 1}` in `Π = PG(5, q)`.
pub fn projected_set_in(tower: &FieldTower) -> Result<PointSet> {
    check_tower(tower)?;
    let f = tower.ambient();
    let vectors = section_parameters(tower)
        .into_iter()
        .skip(1)
        .map(|b| tower.expand(f.sub(b, f.one()), 6))
        .collect::<Result<Vec<_>>>()?;
    PointSet::from_vectors(Arc::clone(tower.base()), 5, "aff5", vectors)
}

pub fn projected_set(q: u64) -> Result<PointSet> {
    projected_set_in(&*FieldTower::new(q, 6)?)
}

/// Matrix of `F(X) = X^{q^2} - X^q + X` on GF(q^6).
pub fn f_matrix(tower: &FieldTower) -> Result<Matrix> {
    let f = tower.ambient().clone();
    tower.linear_map(6, 6, |x| f.add(f.sub(tower.frob(x, 2), tower.frob(x, 1)), x))
}

/// Basis `P_1, P_2` of `ker F` in reduced row echelon form.
pub fn kernel_line(tower: &FieldTower) -> Result<Vec<Vec<u8>>> {
    let ker = f_matrix(tower)?.nullspace(tower.base());
    if ker.len() != 2 {
        return Err(Error::Internal(format!("ker F has dimension {}, expected 2", ker.len())));
    }
    Ok(ker)
}

/// `Y ∪ {P_1, P_2}` of size `q^2 - q + 2`.
pub fn extended_projected_set_in(tower: &FieldTower) -> Result<PointSet> {
    let y = projected_set_in(tower)?;
    let extra = kernel_line(tower)?
        .into_iter()
        .map(|v| crate::geometry::ProjectivePoint::new(tower.base(), v))
        .collect::<Result<Vec<_>>>()?;
    y.extended("proj5", extra)
}

pub fn extended_projected_set(q: u64) -> Result<PointSet> {
    extended_projected_set_in(&*FieldTower::new(q, 6)?)
}

/// The quotient of `Π` by the line `PG(V)`, realized inside
/// `W = {z : z + z^q = z^{q^3} + z^{q^4}}`.
#[derive(Debug)]
pub struct QuotientQuadric {
    /// Points of `Φ(z) = 0` in PG(W) = PG(3, q).
    pub quadric: PointSet,
    /// `quadric ∩ {z in GF(q^3)}`.
    pub conic: PointSet,
    /// For each point of `Y` (in order), the index in `quadric` of its image `F(x)`.
    pub image: Vec<usize>,
    /// RREF basis of `W` inside GF(q^6)-coordinates.
    pub w_basis: Vec<Vec<u8>>,
}

pub fn quotient_quadric_in(tower: &FieldTower) -> Result<QuotientQuadric> {
    check_tower(tower)?;
    let f = tower.ambient().clone();
    let base = Arc::clone(tower.base());
    let l = tower.linear_map(6, 6, |z| {
        f.sub(f.add(z, tower.frob(z, 1)), f.add(tower.frob(z, 3), tower.frob(z, 4)))
    })?;
    let (w_basis, pivots) = {
        let ns = l.nullspace(&base);
        if ns.len() != 4 {
            return Err(Error::Internal(format!("W has dimension {}, expected 4", ns.len())));
        }
        let (r, piv) = Matrix::from_rows(&ns)?.rref(&base);
        ((0..4).map(|i| r.row(i).to_vec()).collect::<Vec<_>>(), piv)
    };
    let assemble = |c: &[u8]| -> Result<FieldElement> {
        let mut v = vec![0u8; 6];
        for (row, &ci) in w_basis.iter().zip(c) {
            for (vk, &rk) in v.iter_mut().zip(row) {
                *vk = base.add(*vk, base.mul(ci, rk));
            }
        }
        tower.assemble(&v, 6)
    };
    let phi = |z: FieldElement| {
        let (z1, z2, z3) = (tower.frob(z, 1), tower.frob(z, 2), tower.frob(z, 3));
        f.add(f.add(f.mul(z2, z), f.mul(z2, z1)), f.mul(z1, z3))
    };
    let mut quadric = Vec::new();
    let mut conic = Vec::new();
    for c in projective_points(&base, 3) {
        let z = assemble(&c)?;
        if phi(z).is_zero() {
            if tower.in_subfield(z, 3) {
                conic.push(c.clone());
            }
            quadric.push(c);
        }
    }
    let quadric = PointSet::from_vectors(base.clone(), 3, "quadric", quadric)?;
    let conic = PointSet::from_vectors(base.clone(), 3, "conic", conic)?;
    let index = quadric.index_map();
    let fm = f_matrix(tower)?;
    let y = projected_set_in(tower)?;
    let mut image = Vec::with_capacity(y.len());
    for p in y.points() {
        let fx = fm.apply(&base, p.coords());
        let w: Vec<u8> = pivots.iter().map(|&j| fx[j]).collect();
        let pt = crate::geometry::ProjectivePoint::new(&base, w)?;
        let i = index
            .get(&pt)
            .copied()
            .ok_or_else(|| Error::Internal("image of a point of Y is off the quadric".into()))?;
        image.push(i);
    }
    Ok(QuotientQuadric { quadric, conic, image, w_basis })
}

pub fn quotient_quadric(q: u64) -> Result<QuotientQuadric> {
    quotient_quadric_in(&*FieldTower::new(q, 6)?)
}
