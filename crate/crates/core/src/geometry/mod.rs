//! Points, point sets, flats and hyperplanes of PG(n, q) in intrinsic
//! GF(q)-coordinates.

mod form;
pub mod io;
mod line;
mod linalg;

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use crate::field::SmallField;
use crate::{Error, Result};

pub use form::SymplecticForm;
pub use line::{cross_ratio, in_q_subline, LinePoint, Mobius};
pub use linalg::{dot, rank_of_rows, Matrix};

/// Scales `v` so that its first nonzero entry is 1. Returns false for the zero vector.
pub fn normalize(f: &SmallField, v: &mut [u8]) -> bool {
    let Some(&lead) = v.iter().find(|&&c| c != 0) else {
        return false;
    };
    if lead != 1 {
        let inv = f.inv(lead);
        for c in v.iter_mut() {
            *c = f.mul(inv, *c);
        }
    }
    true
}

/// A point of PG(n, q): a nonzero coordinate vector whose first nonzero entry is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjectivePoint {
    coords: Vec<u8>,
}

impl ProjectivePoint {
    pub fn new(f: &SmallField, mut coords: Vec<u8>) -> Result<Self> {
        if coords.iter().any(|&c| c as usize >= f.q()) {
            return Err(Error::InvalidArgument("coordinate outside GF(q)".into()));
        }
        if !normalize(f, &mut coords) {
            return Err(Error::InvalidArgument("the zero vector is not a point".into()));
        }
        Ok(ProjectivePoint { coords })
    }

    pub fn coords(&self) -> &[u8] {
        &self.coords
    }

    pub fn ambient_dim(&self) -> usize {
        self.coords.len() - 1
    }
}

/// Number of points of PG(n, q).
pub fn point_count(q: u64, n: usize) -> u128 {
    let q = q as u128;
    (0..=n).fold(0u128, |acc, _| acc * q + 1)
}

/// All points of PG(n, q) in canonical order: by position of the leading 1,
/// then by the remaining coordinates read as a base-q counter.
pub fn projective_points(f: &SmallField, n: usize) -> impl Iterator<Item = Vec<u8>> + '_ {
    let q = f.q() as u8;
    (0..=n).flat_map(move |lead| {
        let tail = n - lead;
        let count = (f.q() as u128).pow(tail as u32);
        (0..count).map(move |mut k| {
            let mut v = vec![0u8; n + 1];
            v[lead] = 1;
            for pos in (lead + 1..=n).rev() {
                v[pos] = (k % q as u128) as u8;
                k /= q as u128;
            }
            v
        })
    })
}

/// A hyperplane `{x : c . x = 0}` of PG(n, q), with `c` normalized.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hyperplane {
    covector: Vec<u8>,
}

impl Hyperplane {
    pub fn new(f: &SmallField, covector: Vec<u8>) -> Result<Self> {
        let p = ProjectivePoint::new(f, covector)?;
        Ok(Hyperplane { covector: p.coords })
    }

    pub fn covector(&self) -> &[u8] {
        &self.covector
    }

    pub fn contains(&self, f: &SmallField, coords: &[u8]) -> bool {
        dot(f, &self.covector, coords) == 0
    }

    pub fn flat(&self, f: &SmallField) -> Flat {
        let m = Matrix::from_rows(std::slice::from_ref(&self.covector)).expect("single row");
        Flat { basis: m.nullspace(f) }
    }
}

/// Each hyperplane of PG(n, q) exactly once; refuses enumerations larger than `cap`.
pub fn hyperplanes(f: &SmallField, n: usize, cap: u64) -> Result<impl Iterator<Item = Hyperplane> + '_> {
    let needed = point_count(f.q() as u64, n);
    if needed > cap as u128 {
        return Err(Error::BudgetExceeded { needed, budget: cap });
    }
    Ok(projective_points(f, n).map(|covector| Hyperplane { covector }))
}

/// A projective subspace given by a basis of its underlying vector space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flat {
    basis: Vec<Vec<u8>>,
}

impl Flat {
    pub fn new(f: &SmallField, basis: Vec<Vec<u8>>) -> Result<Self> {
        let refs: Vec<&[u8]> = basis.iter().map(Vec::as_slice).collect();
        if basis.is_empty() || rank_of_rows(f, &refs) != basis.len() {
            return Err(Error::InvalidArgument("flat basis must be nonempty and independent".into()));
        }
        Ok(Flat { basis })
    }

    /// The span of the given points.
    pub fn span(f: &SmallField, points: &[&[u8]]) -> Result<Self> {
        let owned: Vec<Vec<u8>> = points.iter().map(|p| p.to_vec()).collect();
        let m = Matrix::from_rows(&owned)?;
        let (r, piv) = m.rref(f);
        Self::new(f, (0..piv.len()).map(|i| r.row(i).to_vec()).collect())
    }

    pub fn basis(&self) -> &[Vec<u8>] {
        &self.basis
    }

    /// Projective dimension.
    pub fn dim(&self) -> isize {
        self.basis.len() as isize - 1
    }

    pub fn contains(&self, f: &SmallField, coords: &[u8]) -> bool {
        let mut rows: Vec<&[u8]> = self.basis.iter().map(Vec::as_slice).collect();
        rows.push(coords);
        rank_of_rows(f, &rows) == self.basis.len()
    }
}

/// Rank of the points' coordinate vectors.
pub fn rank(f: &SmallField, points: &[&ProjectivePoint]) -> Result<usize> {
    if let Some(first) = points.first() {
        if points.iter().any(|p| p.coords.len() != first.coords.len()) {
            return Err(Error::MixedAmbient("points of different dimensions".into()));
        }
    }
    let rows: Vec<&[u8]> = points.iter().map(|p| p.coords()).collect();
    Ok(rank_of_rows(f, &rows))
}

/// An ordered set of distinct points of PG(n, q), optionally with generators
/// of a collineation group stabilizing it.
#[derive(Clone, Debug)]
pub struct PointSet {
    field: Arc<SmallField>,
    ambient_dim: usize,
    label: String,
    points: Vec<ProjectivePoint>,
    generators: Vec<Matrix>,
}

impl PointSet {
    pub fn new(
        field: Arc<SmallField>,
        ambient_dim: usize,
        label: impl Into<String>,
        points: Vec<ProjectivePoint>,
    ) -> Result<Self> {
        if points.iter().any(|p| p.ambient_dim() != ambient_dim) {
            return Err(Error::MixedAmbient(format!("expected points of PG({ambient_dim}, q)")));
        }
        let mut seen = HashSet::with_capacity(points.len());
        for p in &points {
            if !seen.insert(p) {
                return Err(Error::InvalidArgument(format!("duplicate point {:?}", p.coords())));
            }
        }
        Ok(PointSet { field, ambient_dim, label: label.into(), points, generators: Vec::new() })
    }

    /// Builds a set from raw coordinate vectors, normalizing and removing repeats.
    pub fn from_vectors(
        field: Arc<SmallField>,
        ambient_dim: usize,
        label: impl Into<String>,
        vectors: impl IntoIterator<Item = Vec<u8>>,
    ) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut points = Vec::new();
        for v in vectors {
            let p = ProjectivePoint::new(&field, v)?;
            if seen.insert(p.clone()) {
                points.push(p);
            }
        }
        Self::new(field, ambient_dim, label, points)
    }

    /// Attaches collineation generators, checking that each one is invertible
    /// and maps the set onto itself.
    pub fn with_generators(mut self, generators: Vec<Matrix>) -> Result<Self> {
        let n = self.ambient_dim + 1;
        let index = self.index_map();
        for g in &generators {
            if g.rows() != n || g.cols() != n || !g.is_invertible(&self.field) {
                return Err(Error::InvalidArgument("generator must be an invertible square matrix".into()));
            }
            for p in &self.points {
                let img = self.apply(g, p);
                if !index.contains_key(&img) {
                    return Err(Error::InvalidArgument("generator does not stabilize the set".into()));
                }
            }
        }
        self.generators = generators;
        Ok(self)
    }

    pub fn field(&self) -> &Arc<SmallField> {
        &self.field
    }

    pub fn q(&self) -> usize {
        self.field.q()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn set_label(&mut self, label: impl Into<String>) {
        self.label = label.into();
    }

    pub fn points(&self) -> &[ProjectivePoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn generators(&self) -> &[Matrix] {
        &self.generators
    }

    pub fn rows(&self) -> Vec<&[u8]> {
        self.points.iter().map(|p| p.coords()).collect()
    }

    pub fn index_map(&self) -> HashMap<ProjectivePoint, usize> {
        self.points.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect()
    }

    pub fn contains(&self, p: &ProjectivePoint) -> bool {
        self.points.contains(p)
    }

    /// Image of a point under a matrix acting on column vectors.
    pub fn apply(&self, g: &Matrix, p: &ProjectivePoint) -> ProjectivePoint {
        let v = g.apply(&self.field, p.coords());
        ProjectivePoint::new(&self.field, v).expect("invertible image of a point is a point")
    }

    pub fn rank(&self) -> usize {
        rank_of_rows(&self.field, &self.rows())
    }

    pub fn spans(&self) -> bool {
        self.rank() == self.ambient_dim + 1
    }

    /// The set with extra points appended (generators are dropped).
    pub fn extended(&self, label: impl Into<String>, extra: Vec<ProjectivePoint>) -> Result<Self> {
        let mut points = self.points.clone();
        points.extend(extra);
        Self::new(self.field.clone(), self.ambient_dim, label, points)
    }

    /// The subset at the given indices, in the given order.
    pub fn subset(&self, label: impl Into<String>, indices: &[usize]) -> Result<Self> {
        let points = indices.iter().map(|&i| self.points[i].clone()).collect();
        Self::new(self.field.clone(), self.ambient_dim, label, points)
    }

    /// Projects every other point from `center` into PG(n-1, q).
    ///
    /// With `j` the position of the leading 1 of `center`, a point `x` maps to
    /// `x - x_j * center` with coordinate `j` deleted; this is a linear map with
    /// kernel spanned by `center`.
    pub fn project_from(&self, center: &ProjectivePoint, label: impl Into<String>) -> Result<Self> {
        if center.ambient_dim() != self.ambient_dim || self.ambient_dim == 0 {
            return Err(Error::MixedAmbient("projection center in a different space".into()));
        }
        let f = &self.field;
        let j = center.coords().iter().position(|&c| c != 0).expect("normalized point");
        let mut images = Vec::with_capacity(self.points.len());
        let mut seen = HashSet::new();
        for p in self.points.iter().filter(|p| *p != center) {
            let xj = p.coords()[j];
            let v: Vec<u8> = p
                .coords()
                .iter()
                .zip(center.coords())
                .enumerate()
                .filter(|&(k, _)| k != j)
                .map(|(_, (&x, &c))| f.sub(x, f.mul(xj, c)))
                .collect();
            let img = ProjectivePoint::new(f, v)?;
            if !seen.insert(img.clone()) {
                return Err(Error::InvalidArgument(
                    "projection identifies two points collinear with the center".into(),
                ));
            }
            images.push(img);
        }
        Self::new(f.clone(), self.ambient_dim - 1, label, images)
    }
}
