//! Conversions between vertex and halfspace descriptions.
//!
//! Both directions enumerate `dim`-subsets (of points or of facets) and
//! filter by exact feasibility. That is `O(m^dim)` work, which is fine for
//! the desk-scale bodies this crate targets.

use itertools::Itertools;

use super::geometry::{
    affine_rank, dedup_sorted, hyperplane_normal, intersect_hyperplanes, linear_rank,
};
use super::{check_dim, HRep, HalfSpace, Polytope};
use crate::error::{Error, Result};
use crate::exact::{RatVector, Rational};

/// Result of intersecting bodies: full-dimensional, flat, or empty.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Section {
    Full(Polytope),
    /// Nonempty but not full-dimensional; holds the vertices of the flat piece.
    Degenerate(Vec<RatVector>),
    Empty,
}

impl Section {
    pub fn polytope(&self) -> Option<&Polytope> {
        match self {
            Section::Full(p) => Some(p),
            _ => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, Section::Empty)
    }

    pub fn is_degenerate(&self) -> bool {
        matches!(self, Section::Degenerate(_))
    }

    /// Lebesgue measure; zero for flat and empty sections.
    pub fn volume(&self) -> Rational {
        match self {
            Section::Full(p) => super::volume(p),
            _ => Rational::zero(),
        }
    }
}

/// A clipped halfspace system together with its classified solution set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Clip {
    /// Irredundant when `section` is full-dimensional, otherwise the raw
    /// union of constraints.
    pub hrep: HRep,
    pub section: Section,
}

pub(crate) fn facets_from_points(dim: usize, points: &[RatVector]) -> Vec<HalfSpace> {
    if dim == 1 {
        let lo = points.iter().map(|p| &p[0]).min().expect("nonempty");
        let hi = points.iter().map(|p| &p[0]).max().expect("nonempty");
        return vec![
            HalfSpace {
                normal: RatVector::from_ints(&[-1]),
                offset: -lo,
            },
            HalfSpace {
                normal: RatVector::from_ints(&[1]),
                offset: hi.clone(),
            },
        ];
    }
    let mut facets = Vec::new();
    for combo in points.iter().combinations(dim) {
        let Some(normal) = hyperplane_normal(dim, &combo) else {
            continue;
        };
        let offset = normal.dot(combo[0]);
        let mut below = true;
        let mut above = true;
        for p in points {
            match (&offset - normal.dot(p)).signum() {
                1 => above = false,
                -1 => below = false,
                _ => {}
            }
            if !below && !above {
                break;
            }
        }
        if below {
            facets.push(HalfSpace { normal, offset }.normalized());
        } else if above {
            facets.push(HalfSpace { normal, offset }.flipped().normalized());
        }
    }
    facets.sort();
    facets.dedup();
    facets
}

/// Extreme points of a full-dimensional point set, sorted lexicographically.
pub(crate) fn hull_vertices(dim: usize, points: Vec<RatVector>) -> Result<Vec<RatVector>> {
    let points = dedup_sorted(points);
    let refs: Vec<&RatVector> = points.iter().collect();
    if affine_rank(&refs) != Some(dim) {
        return Err(Error::degenerate(format!(
            "points do not span a {dim}-dimensional body"
        )));
    }
    let facets = facets_from_points(dim, &points);
    Ok(points
        .into_iter()
        .filter(|p| {
            let tight: Vec<&RatVector> = facets
                .iter()
                .filter(|f| f.slack(p).is_zero())
                .map(|f| &f.normal)
                .collect();
            linear_rank(&tight) == dim
        })
        .collect())
}

/// Irredundant facet description of a full-dimensional polytope.
pub fn to_hrep(p: &Polytope) -> Result<HRep> {
    let refs: Vec<&RatVector> = p.vertices().iter().collect();
    if affine_rank(&refs) != Some(p.dim()) {
        return Err(Error::degenerate("polytope is not full-dimensional"));
    }
    Ok(HRep::new_unchecked(
        p.dim(),
        facets_from_points(p.dim(), p.vertices()),
    ))
}

/// Basic feasible points of a halfspace system, sorted and deduplicated.
pub(crate) fn raw_vertices(dim: usize, halfspaces: &[HalfSpace]) -> Vec<RatVector> {
    let mut out = Vec::new();
    for combo in (0..halfspaces.len()).combinations(dim) {
        let normals: Vec<&RatVector> = combo.iter().map(|&i| &halfspaces[i].normal).collect();
        let offsets: Vec<&Rational> = combo.iter().map(|&i| &halfspaces[i].offset).collect();
        let Some(x) = intersect_hyperplanes(&normals, &offsets) else {
            continue;
        };
        if halfspaces.iter().all(|h| h.contains(&x)) {
            out.push(x);
        }
    }
    dedup_sorted(out)
}

/// The system has a trivial recession cone.
///
/// The cone `{x : a_i·x ≤ 0}` is cut by the box `[-1, 1]^dim`; the cone is
/// `{0}` exactly when every vertex of that bounded piece is the origin.
pub fn is_bounded(h: &HRep) -> bool {
    let dim = h.dim();
    let mut cone: Vec<HalfSpace> = h
        .halfspaces()
        .iter()
        .map(|hs| HalfSpace {
            normal: hs.normal.clone(),
            offset: Rational::zero(),
        })
        .collect();
    for j in 0..dim {
        let e = RatVector::unit(dim, j);
        cone.push(HalfSpace {
            normal: e.neg(),
            offset: Rational::one(),
        });
        cone.push(HalfSpace {
            normal: e,
            offset: Rational::one(),
        });
    }
    raw_vertices(dim, &cone).iter().all(RatVector::is_zero)
}

/// Halfspaces of `halfspaces` that are facets of the polytope with the given
/// vertices, in primitive-integer normal form.
pub(crate) fn facets_among(
    dim: usize,
    halfspaces: &[HalfSpace],
    vertices: &[RatVector],
) -> Vec<HalfSpace> {
    let mut facets: Vec<HalfSpace> = halfspaces
        .iter()
        .filter(|h| {
            let tight: Vec<&RatVector> = vertices.iter().filter(|v| h.slack(v).is_zero()).collect();
            tight.len() >= dim && affine_rank(&tight) == Some(dim - 1)
        })
        .map(HalfSpace::normalized)
        .collect();
    facets.sort();
    facets.dedup();
    facets
}

fn classify(dim: usize, vertices: Vec<RatVector>) -> Section {
    if vertices.is_empty() {
        return Section::Empty;
    }
    let refs: Vec<&RatVector> = vertices.iter().collect();
    if affine_rank(&refs) == Some(dim) {
        Section::Full(Polytope::from_trusted(dim, vertices))
    } else {
        Section::Degenerate(vertices)
    }
}

/// Vertex description of a bounded, full-dimensional halfspace system.
pub fn vertex_enum(h: &HRep) -> Result<Polytope> {
    check_dim(h.dim())?;
    if !is_bounded(h) {
        return Err(Error::Unbounded);
    }
    match classify(h.dim(), raw_vertices(h.dim(), h.halfspaces())) {
        Section::Full(p) => Ok(p),
        Section::Degenerate(_) => Err(Error::degenerate(
            "halfspace system is not full-dimensional",
        )),
        Section::Empty => Err(Error::Empty),
    }
}

/// Intersection of a bounded system with one more halfspace, assuming the
/// input is already known to be bounded.
pub(crate) fn clip_bounded(h: &HRep, hs: &HalfSpace) -> Clip {
    let mut all = h.halfspaces().to_vec();
    all.push(hs.clone());
    let section = classify(h.dim(), raw_vertices(h.dim(), &all));
    let hrep = match &section {
        Section::Full(p) => HRep::new_unchecked(h.dim(), facets_among(h.dim(), &all, p.vertices())),
        _ => HRep::new_unchecked(h.dim(), all),
    };
    Clip { hrep, section }
}

/// `K ∩ H`. Empty and flat results are reported through [`Section`].
pub fn clip(h: &HRep, hs: &HalfSpace) -> Result<Clip> {
    if hs.dim() != h.dim() {
        return Err(Error::DimensionMismatch {
            expected: h.dim(),
            found: hs.dim(),
        });
    }
    let joined = h.with(hs.clone())?;
    if !is_bounded(&joined) {
        return Err(Error::Unbounded);
    }
    Ok(clip_bounded(h, hs))
}

/// `P ∩ Q` via the union of their facet systems.
pub fn intersect(p: &Polytope, q: &Polytope) -> Result<Section> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            found: q.dim(),
        });
    }
    let mut all = to_hrep(p)?.halfspaces().to_vec();
    all.extend(to_hrep(q)?.halfspaces().iter().cloned());
    Ok(classify(p.dim(), raw_vertices(p.dim(), &all)))
}

/// Vertices of a system already known to be bounded.
pub(crate) fn section_of(dim: usize, halfspaces: &[HalfSpace]) -> Section {
    classify(dim, raw_vertices(dim, halfspaces))
}
