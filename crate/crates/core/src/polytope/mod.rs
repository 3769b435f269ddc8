//! Rational convex polytopes in dimensions 1 through 4.
//!
//! A body is held either as a vertex list ([`Polytope`]) or as a halfspace
//! list ([`HRep`]); [`Body`] caches both. Both representations are kept
//! irredundant so that two bodies are equal exactly when their sorted
//! vertex lists are.

mod body;
mod convert;
pub(crate) mod geometry;
mod hull2d;
mod json;
mod simplex;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{RatMatrix, RatVector, Rational};

pub use body::{centroid, halfspace_volume, triangulate, volume, Body};
pub use convert::{clip, intersect, is_bounded, to_hrep, vertex_enum, Clip, Section};
pub use hull2d::hull2d;
pub use json::BodySpec;
pub use simplex::Simplex;

/// Largest supported ambient dimension.
pub const MAX_DIM: usize = 4;

pub(crate) fn check_dim(dim: usize) -> Result<()> {
    if (1..=MAX_DIM).contains(&dim) {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension(dim))
    }
}

/// The closed halfspace `{ x : a·x ≤ b }`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct HalfSpace {
    #[serde(rename = "a")]
    pub normal: RatVector,
    #[serde(rename = "b")]
    pub offset: Rational,
}

impl HalfSpace {
    pub fn new(normal: RatVector, offset: Rational) -> Result<Self> {
        if normal.is_zero() {
            return Err(Error::degenerate("halfspace normal is the zero vector"));
        }
        Ok(HalfSpace { normal, offset })
    }

    pub fn dim(&self) -> usize {
        self.normal.dim()
    }

    /// `b - a·x`: positive inside, zero on the boundary hyperplane.
    pub fn slack(&self, x: &RatVector) -> Rational {
        &self.offset - self.normal.dot(x)
    }

    pub fn contains(&self, x: &RatVector) -> bool {
        !self.slack(x).is_negative()
    }

    /// The same halfspace with a primitive integer normal.
    pub fn normalized(&self) -> HalfSpace {
        use num_integer::Integer;
        use num_traits::{One, Zero};
        let lcm = self
            .normal
            .iter()
            .fold(num_bigint::BigInt::one(), |l, x| l.lcm(&x.denom()));
        let ints: Vec<num_bigint::BigInt> = self
            .normal
            .iter()
            .map(|x| x.numer() * (&lcm / x.denom()))
            .collect();
        let g = ints
            .iter()
            .fold(num_bigint::BigInt::zero(), |g, x| g.gcd(x));
        let factor = Rational::from_bigints(lcm, g).expect("nonzero normal");
        HalfSpace {
            normal: self.normal.scale(&factor),
            offset: &self.offset * &factor,
        }
    }

    /// The complementary closed halfspace `{ x : a·x ≥ b }`.
    pub fn flipped(&self) -> HalfSpace {
        HalfSpace {
            normal: self.normal.neg(),
            offset: -&self.offset,
        }
    }
}

/// A polyhedron given as an intersection of halfspaces.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct HRep {
    dim: usize,
    halfspaces: Vec<HalfSpace>,
}

impl HRep {
    pub fn new(dim: usize, halfspaces: Vec<HalfSpace>) -> Result<Self> {
        check_dim(dim)?;
        for h in &halfspaces {
            if h.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: h.dim(),
                });
            }
            if h.normal.is_zero() {
                return Err(Error::degenerate("halfspace normal is the zero vector"));
            }
        }
        Ok(HRep { dim, halfspaces })
    }

    pub(crate) fn new_unchecked(dim: usize, halfspaces: Vec<HalfSpace>) -> Self {
        HRep { dim, halfspaces }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn halfspaces(&self) -> &[HalfSpace] {
        &self.halfspaces
    }

    pub fn with(&self, extra: HalfSpace) -> Result<HRep> {
        let mut hs = self.halfspaces.clone();
        hs.push(extra);
        HRep::new(self.dim, hs)
    }

    /// `t·K` for `t > 0`.
    pub fn scaled(&self, t: &Rational) -> HRep {
        assert!(t.is_positive(), "scale factor must be positive");
        HRep {
            dim: self.dim,
            halfspaces: self
                .halfspaces
                .iter()
                .map(|h| HalfSpace {
                    normal: h.normal.clone(),
                    offset: &h.offset * t,
                })
                .collect(),
        }
    }

    /// `-K`.
    pub fn reflected(&self) -> HRep {
        HRep {
            dim: self.dim,
            halfspaces: self
                .halfspaces
                .iter()
                .map(|h| HalfSpace {
                    normal: h.normal.neg(),
                    offset: h.offset.clone(),
                })
                .collect(),
        }
    }

    /// `K ∩ -K`, directly from the halfspaces (possibly redundant).
    pub fn symmetrized(&self) -> HRep {
        let mut hs = self.halfspaces.clone();
        hs.extend(self.reflected().halfspaces);
        HRep {
            dim: self.dim,
            halfspaces: hs,
        }
    }

    pub fn origin_is_interior(&self) -> bool {
        self.halfspaces.iter().all(|h| h.offset.is_positive())
    }
}

/// Position of a point relative to a closed body.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Membership {
    Interior,
    Boundary,
    Outside,
}

impl Membership {
    pub fn is_inside(self) -> bool {
        !matches!(self, Membership::Outside)
    }
}

/// Classify `x` against every constraint of `h`.
///
/// For an irredundant, full-dimensional `h` the classes are the topological
/// interior, boundary and exterior.
pub fn membership(h: &HRep, x: &RatVector) -> Result<Membership> {
    if x.dim() != h.dim() {
        return Err(Error::DimensionMismatch {
            expected: h.dim(),
            found: x.dim(),
        });
    }
    let mut tight = false;
    for hs in &h.halfspaces {
        match hs.slack(x).signum() {
            -1 => return Ok(Membership::Outside),
            0 => tight = true,
            _ => {}
        }
    }
    Ok(if tight {
        Membership::Boundary
    } else {
        Membership::Interior
    })
}

/// Gauge (Minkowski functional) of `z` with respect to `K`:
/// `min { λ ≥ 0 : z ∈ λK }`.
///
/// Requires the origin strictly inside every constraint.
pub fn gauge(h: &HRep, z: &RatVector) -> Result<Rational> {
    if z.dim() != h.dim() {
        return Err(Error::DimensionMismatch {
            expected: h.dim(),
            found: z.dim(),
        });
    }
    if !h.origin_is_interior() {
        return Err(Error::precondition(
            "gauge requires the origin strictly inside every halfspace",
        ));
    }
    Ok(gauge_unchecked(h, z))
}

pub(crate) fn gauge_unchecked(h: &HRep, z: &RatVector) -> Rational {
    let mut best = Rational::zero();
    for hs in &h.halfspaces {
        let v = hs.normal.dot(z);
        if v.is_positive() {
            let r = v / &hs.offset;
            if r > best {
                best = r;
            }
        }
    }
    best
}

/// A convex polytope given by its vertices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<RatVector>,
}

impl Polytope {
    /// Validates that `vertices` are distinct, affinely span `R^dim` and
    /// that none lies in the hull of the others. The given order is kept.
    pub fn new(dim: usize, vertices: Vec<RatVector>) -> Result<Self> {
        let hull = Self::from_points(dim, vertices.clone())?;
        if hull.vertices.len() != vertices.len() {
            return Err(Error::degenerate(
                "vertex list is redundant or contains duplicates",
            ));
        }
        Ok(Polytope { dim, vertices })
    }

    /// Convex hull of a full-dimensional point set; vertices sorted
    /// lexicographically.
    pub fn from_points(dim: usize, points: Vec<RatVector>) -> Result<Self> {
        check_dim(dim)?;
        for p in &points {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: p.dim(),
                });
            }
        }
        let vertices = convert::hull_vertices(dim, points)?;
        Ok(Polytope { dim, vertices })
    }

    pub(crate) fn from_trusted(dim: usize, vertices: Vec<RatVector>) -> Self {
        Polytope { dim, vertices }
    }

    pub fn from_int_points(dim: usize, points: &[&[i64]]) -> Result<Self> {
        Self::from_points(
            dim,
            points.iter().map(|p| RatVector::from_ints(p)).collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[RatVector] {
        &self.vertices
    }

    /// Vertices in lexicographic order; equal bodies have equal canonical lists.
    pub fn canonical_vertices(&self) -> Vec<RatVector> {
        let mut v = self.vertices.clone();
        v.sort();
        v
    }

    pub fn same_body(&self, other: &Polytope) -> bool {
        self.dim == other.dim && self.canonical_vertices() == other.canonical_vertices()
    }

    pub fn is_lattice_polytope(&self) -> bool {
        self.vertices.iter().all(RatVector::is_integral)
    }

    pub fn translate(&self, t: &RatVector) -> Polytope {
        Polytope {
            dim: self.dim,
            vertices: self.vertices.iter().map(|v| v.add(t)).collect(),
        }
    }

    /// `s·P` for `s ≠ 0`.
    pub fn scale(&self, s: &Rational) -> Polytope {
        assert!(!s.is_zero(), "scale factor must be nonzero");
        Polytope {
            dim: self.dim,
            vertices: self.vertices.iter().map(|v| v.scale(s)).collect(),
        }
    }

    /// `U·P + t` for an invertible `U`.
    pub fn transform(&self, u: &RatMatrix, t: &RatVector) -> Result<Polytope> {
        if !u.is_square() || u.rows() != self.dim || u.det()?.is_zero() {
            return Err(Error::precondition(
                "transform requires an invertible dim×dim matrix",
            ));
        }
        let vertices = self
            .vertices
            .iter()
            .map(|v| Ok(u.mul_vec(v)?.add(t)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Polytope {
            dim: self.dim,
            vertices,
        })
    }

    /// The set is invariant under `x ↦ -x`.
    pub fn is_origin_symmetric(&self) -> bool {
        let mut neg: Vec<RatVector> = self.vertices.iter().map(RatVector::neg).collect();
        neg.sort();
        neg == self.canonical_vertices()
    }
}

/// `-P`.
pub fn reflect(p: &Polytope) -> Polytope {
    Polytope {
        dim: p.dim,
        vertices: p.vertices.iter().map(RatVector::neg).collect(),
    }
}

/// Translate `p` so that its centroid is the origin.
pub fn center(p: &Polytope) -> Result<Polytope> {
    let c = centroid(p)?;
    Ok(p.translate(&c.neg()))
}
