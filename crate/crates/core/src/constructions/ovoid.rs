//! The Desarguesian partial ovoid of PG(7, q) and its twisted cubics.

use std::sync::Arc;

use crate::field::{FieldElement, FieldTower};
use crate::geometry::{LinePoint, PointSet};
use crate::Result;

/// Parameters of the ovoid points in construction order: every `t` in
/// GF(q^3) in encoding order, then infinity.
pub fn ovoid_parameters(tower: &FieldTower) -> Vec<LinePoint> {
    tower
        .ambient()
        .elements()
        .map(LinePoint::Finite)
        .chain(std::iter::once(LinePoint::Infinity))
        .collect()
}

/// Intrinsic coordinates `(a; b_0..b_2; c_0..c_2; d)` of
/// `P(1, t, t^{q^2+q}, t^{q^2+q+1})`, or of `P(0, 0, 0, 1)` for infinity.
pub fn ovoid_point(tower: &FieldTower, t: LinePoint) -> Result<Vec<u8>> {
    let f = tower.ambient();
    match t {
        LinePoint::Finite(t) => {
            let c = f.mul(tower.frob(t, 2), tower.frob(t, 1));
            let d = f.mul(c, t);
            let mut v = vec![1u8];
            v.extend(tower.expand(t, 3)?);
            v.extend(tower.expand(c, 3)?);
            v.push(tower.to_base(d)?);
            Ok(v)
        }
        LinePoint::Infinity => {
            let mut v = vec![0u8; 8];
            v[7] = 1;
            Ok(v)
        }
    }
}

/// The `q^3 + 1` points of the ovoid in PG(7, q), built over `tower` = GF(q^3).
pub fn desarguesian_ovoid_in(tower: &FieldTower) -> Result<PointSet> {
    let vectors = ovoid_parameters(tower)
        .into_iter()
        .map(|t| ovoid_point(tower, t))
        .collect::<Result<Vec<_>>>()?;
    PointSet::from_vectors(Arc::clone(tower.base()), 7, "ovoid7", vectors)
}

pub fn desarguesian_ovoid(q: u64) -> Result<PointSet> {
    desarguesian_ovoid_in(&*FieldTower::new(q, 3)?)
}

/// The twisted cubic `{P(1, t, t^2, t^3) : t in GF(q)} ∪ {P(0, 0, 0, 1)}`.
pub fn canonical_cubic_in(tower: &FieldTower) -> Result<PointSet> {
    let f = tower.ambient();
    let mut vectors = Vec::with_capacity(tower.q() as usize + 1);
    for code in tower.base().elements() {
        let t: FieldElement = tower.from_base(code);
        let t2 = f.mul(t, t);
        let mut v = vec![1u8];
        v.extend(tower.expand(t, 3)?);
        v.extend(tower.expand(t2, 3)?);
        v.push(tower.to_base(f.mul(t2, t))?);
        vectors.push(v);
    }
    let mut inf = vec![0u8; 8];
    inf[7] = 1;
    vectors.push(inf);
    PointSet::from_vectors(Arc::clone(tower.base()), 7, "cubic", vectors)
}

pub fn canonical_cubic(q: u64) -> Result<PointSet> {
    canonical_cubic_in(&*FieldTower::new(q, 3)?)
}

/// Number of twisted cubics on the ovoid, `q^2 (q^4 + q^2 + 1)`.
pub fn cubic_orbit_count(q: u64) -> u128 {
    let q = q as u128;
    q * q * (q.pow(4) + q * q + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ovoid_sizes() {
        for q in [2u64, 3, 4] {
            let o = desarguesian_ovoid(q).unwrap();
            assert_eq!(o.len() as u64, q.pow(3) + 1);
            assert!(o.spans());
        }
    }

    #[test]
    fn cubic_lies_on_the_ovoid() {
        for q in [2u64, 3, 4, 5] {
            let o = desarguesian_ovoid(q).unwrap();
            let c = canonical_cubic(q).unwrap();
            assert_eq!(c.len() as u64, q + 1);
            assert_eq!(c.rank(), (q as usize + 1).min(4));
            assert!(c.points().iter().all(|p| o.contains(p)));
        }
    }

    #[test]
    fn orbit_counts() {
        assert_eq!(cubic_orbit_count(2), 84);
        assert_eq!(cubic_orbit_count(3), 819);
        assert_eq!(cubic_orbit_count(4), 4368);
    }
}
