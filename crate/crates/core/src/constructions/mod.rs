//! Every point set used by the verifiers, in intrinsic GF(q)-coordinates.

mod ovoid;
mod pg13;
mod section;

use std::fmt;
use std::str::FromStr;

use crate::field::FieldTower;
use crate::geometry::PointSet;
use crate::{Error, Result};

pub use ovoid::{
    canonical_cubic, canonical_cubic_in, cubic_orbit_count, desarguesian_ovoid, desarguesian_ovoid_in,
    ovoid_parameters, ovoid_point,
};
pub use pg13::{pg13_set, pg13_set_in, pg13_size, phi3_exponents, phi3_matrix};
pub use section::{
    extended_projected_set, extended_projected_set_in, f_matrix, hyperplane_section, hyperplane_section_in,
    kernel_line, projected_set, projected_set_in, quotient_quadric, quotient_quadric_in, section_parameters,
    sigma_matrix, t_generator, QuotientQuadric,
};

/// The standard frame of PG(n, q): the `n + 1` unit points and the all-ones point.
pub fn frame(n: usize, q: u64) -> Result<PointSet> {
    let f = crate::field::SmallField::new(q)?;
    let units = (0..=n).map(|i| {
        let mut e = vec![0u8; n + 1];
        e[i] = 1;
        e
    });
    PointSet::from_vectors(f, n, "frame", units.chain(std::iter::once(vec![1u8; n + 1])))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// The partial ovoid `O_1` of PG(7, q), `q^3 + 1` points.
    Ovoid7,
    /// The canonical twisted cubic on `O_1`, `q + 1` points.
    Cubic,
    /// `H_2 ∩ O_2` in PG(6, q), `q^2 - q + 1` points.
    Hyp6,
    /// `Y` in PG(5, q), `q^2 - q` points.
    Aff5,
    /// `Y ∪ {P_1, P_2}` in PG(5, q), `q^2 - q + 2` points.
    Proj5,
    /// `V` in PG(13, q), `(q^6 - 1)/(q - 1)` points.
    Pg13,
}

impl Family {
    pub const ALL: [Family; 6] =
        [Family::Ovoid7, Family::Cubic, Family::Hyp6, Family::Aff5, Family::Proj5, Family::Pg13];

    pub fn name(self) -> &'static str {
        match self {
            Family::Ovoid7 => "ovoid7",
            Family::Cubic => "cubic",
            Family::Hyp6 => "hyp6",
            Family::Aff5 => "aff5",
            Family::Proj5 => "proj5",
            Family::Pg13 => "pg13",
        }
    }

    pub fn ambient_dim(self) -> usize {
        match self {
            Family::Ovoid7 | Family::Cubic => 7,
            Family::Hyp6 => 6,
            Family::Aff5 | Family::Proj5 => 5,
            Family::Pg13 => 13,
        }
    }

    /// Expected number of points.
    pub fn size(self, q: u64) -> u64 {
        match self {
            Family::Ovoid7 => q.pow(3) + 1,
            Family::Cubic => q + 1,
            Family::Hyp6 => q * q - q + 1,
            Family::Aff5 => q * q - q,
            Family::Proj5 => q * q - q + 2,
            Family::Pg13 => pg13_size(q),
        }
    }

    /// Degree over GF(q) of the field the construction works in.
    fn tower_degree(self) -> u32 {
        match self {
            Family::Ovoid7 | Family::Cubic => 3,
            _ => 6,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|fam| fam.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown family {s:?}")))
    }
}

/// A family, a field size and the index of the ambient modulus to build with.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionSpec {
    pub family: Family,
    pub q: u64,
    /// Which irreducible polynomial (in search order) defines the ambient field.
    pub modulus_index: usize,
    /// Keep the group generators on the output set.
    pub with_group: bool,
}

impl ConstructionSpec {
    pub fn new(family: Family, q: u64) -> Result<Self> {
        if q < 2 {
            return Err(Error::InvalidArgument("q must be at least 2".into()));
        }
        Ok(ConstructionSpec { family, q, modulus_index: 0, with_group: true })
    }

    pub fn modulus_index(mut self, index: usize) -> Self {
        self.modulus_index = index;
        self
    }

    pub fn with_group(mut self, keep: bool) -> Self {
        self.with_group = keep;
        self
    }

    /// Notes about parameters outside the range where the set's properties are guaranteed.
    pub fn warnings(&self) -> Vec<String> {
        match self.family {
            Family::Hyp6 | Family::Aff5 | Family::Proj5 if self.q < 4 => {
                vec![format!("{} is only guaranteed to have its properties for q >= 4", self.family)]
            }
            _ => Vec::new(),
        }
    }

    pub fn tower(&self) -> Result<std::sync::Arc<FieldTower>> {
        FieldTower::with_modulus_index(self.q, self.family.tower_degree(), self.modulus_index)
    }

    pub fn build(&self) -> Result<PointSet> {
        let tower = self.tower()?;
        let set = match self.family {
            Family::Ovoid7 => desarguesian_ovoid_in(&tower)?,
            Family::Cubic => canonical_cubic_in(&tower)?,
            Family::Hyp6 => hyperplane_section_in(&tower)?,
            Family::Aff5 => projected_set_in(&tower)?,
            Family::Proj5 => extended_projected_set_in(&tower)?,
            Family::Pg13 => pg13_set_in(&tower)?,
        };
        if set.len() as u64 != self.family.size(self.q) {
            return Err(Error::Internal(format!(
                "{} at q={} has {} points, expected {}",
                self.family,
                self.q,
                set.len(),
                self.family.size(self.q)
            )));
        }
        if self.with_group || set.generators().is_empty() {
            Ok(set)
        } else {
            set.subset(set.label().to_string(), &(0..set.len()).collect::<Vec<_>>())
        }
    }
}
