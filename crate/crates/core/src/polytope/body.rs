use super::convert::{clip_bounded, facets_among, section_of, to_hrep, vertex_enum, Clip, Section};
use super::geometry::{affine_rank, edge_det, factorial};
use super::{HRep, HalfSpace, Polytope, Simplex};
use crate::error::{Error, Result};
use crate::exact::{RatVector, Rational};

/// A full-dimensional polytope with both descriptions cached.
///
/// Vertices are sorted lexicographically and facets are in primitive
/// integer normal form, so derived equality is equality of bodies.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Body {
    polytope: Polytope,
    hrep: HRep,
}

impl Body {
    pub fn from_polytope(p: &Polytope) -> Result<Body> {
        let hrep = to_hrep(p)?;
        Ok(Body {
            polytope: Polytope::from_trusted(p.dim(), p.canonical_vertices()),
            hrep,
        })
    }

    pub fn from_hrep(h: &HRep) -> Result<Body> {
        let polytope = vertex_enum(h)?;
        let facets = facets_among(h.dim(), h.halfspaces(), polytope.vertices());
        Ok(Body {
            hrep: HRep::new_unchecked(h.dim(), facets),
            polytope,
        })
    }

    pub fn from_simplex(s: &Simplex) -> Body {
        let dim = s.dim();
        let mut facets: Vec<HalfSpace> = s.facets().into_iter().map(|f| f.normalized()).collect();
        facets.sort();
        Body {
            polytope: Polytope::from_trusted(dim, s.to_polytope().canonical_vertices()),
            hrep: HRep::new_unchecked(dim, facets),
        }
    }

    pub fn dim(&self) -> usize {
        self.polytope.dim()
    }

    pub fn polytope(&self) -> &Polytope {
        &self.polytope
    }

    pub fn hrep(&self) -> &HRep {
        &self.hrep
    }

    pub fn vertices(&self) -> &[RatVector] {
        self.polytope.vertices()
    }

    /// Fan triangulation as vertex-index tuples.
    ///
    /// Every face is coned from its lexicographically smallest vertex over
    /// the triangulations of the subfaces not containing that vertex.
    pub fn triangulation_indices(&self) -> Vec<Vec<usize>> {
        let vertices = self.vertices();
        let incidence: Vec<Vec<usize>> = self
            .hrep
            .halfspaces()
            .iter()
            .map(|h| {
                (0..vertices.len())
                    .filter(|&i| h.slack(&vertices[i]).is_zero())
                    .collect()
            })
            .collect();
        let mut out = Vec::new();
        fan(
            vertices,
            &incidence,
            (0..vertices.len()).collect(),
            self.dim(),
            &mut out,
        );
        out
    }

    pub fn triangulate(&self) -> Vec<Simplex> {
        self.triangulation_indices()
            .into_iter()
            .map(|idx| {
                Simplex::from_trusted(idx.iter().map(|&i| self.vertices()[i].clone()).collect())
            })
            .collect()
    }

    pub fn volume(&self) -> Rational {
        let d = self.dim();
        let total: Rational = self
            .triangulation_indices()
            .iter()
            .map(|idx| {
                let pts: Vec<&RatVector> = idx.iter().map(|&i| &self.vertices()[i]).collect();
                edge_det(&pts).abs()
            })
            .sum();
        total / factorial(d)
    }

    /// Volume-weighted average of the simplex centroids.
    pub fn centroid(&self) -> RatVector {
        let d = self.dim();
        let mut weighted = RatVector::zeros(d);
        let mut total = Rational::zero();
        for idx in self.triangulation_indices() {
            let pts: Vec<&RatVector> = idx.iter().map(|&i| &self.vertices()[i]).collect();
            let w = edge_det(&pts).abs();
            let s = RatVector::sum(d, pts.iter().copied());
            weighted = weighted.add(&s.scale(&w));
            total += w;
        }
        let denom = total * Rational::from_integer(d as i64 + 1);
        weighted.scale(
            &denom
                .recip()
                .expect("full-dimensional body has positive volume"),
        )
    }

    pub fn is_centered(&self) -> bool {
        self.centroid().is_zero()
    }

    pub fn clip(&self, hs: &HalfSpace) -> Clip {
        clip_bounded(&self.hrep, hs)
    }

    /// `vol(K ∩ H)`, same value as clipping but computed piecewise over
    /// the triangulation.
    pub fn volume_in(&self, hs: &HalfSpace) -> Rational {
        halfspace_volume(&self.triangulate(), hs)
    }

    pub fn reflect(&self) -> Body {
        let mut vertices: Vec<RatVector> = self.vertices().iter().map(RatVector::neg).collect();
        vertices.sort();
        let mut facets = self.hrep.reflected().halfspaces().to_vec();
        facets.sort();
        Body {
            polytope: Polytope::from_trusted(self.dim(), vertices),
            hrep: HRep::new_unchecked(self.dim(), facets),
        }
    }

    /// `K ∩ -K`, built from the known facets of both bodies; fails when
    /// it has empty interior.
    pub fn symmetric_core(&self) -> Result<Body> {
        let h = self.hrep.symmetrized();
        let Section::Full(polytope) = section_of(self.dim(), h.halfspaces()) else {
            return Err(Error::degenerate("K ∩ -K has empty interior"));
        };
        let facets = facets_among(self.dim(), h.halfspaces(), polytope.vertices());
        Ok(Body {
            hrep: HRep::new_unchecked(self.dim(), facets),
            polytope,
        })
    }
}

fn fan(
    vertices: &[RatVector],
    incidence: &[Vec<usize>],
    face: Vec<usize>,
    k: usize,
    out: &mut Vec<Vec<usize>>,
) {
    if face.len() == k + 1 {
        out.push(face);
        return;
    }
    let root = face[0];
    let mut subfaces: Vec<Vec<usize>> = Vec::new();
    for inc in incidence {
        let sub: Vec<usize> = face
            .iter()
            .copied()
            .filter(|i| inc.binary_search(i).is_ok())
            .collect();
        if sub.len() < k || sub.len() == face.len() || sub.contains(&root) {
            continue;
        }
        let pts: Vec<&RatVector> = sub.iter().map(|&i| &vertices[i]).collect();
        if affine_rank(&pts) == Some(k - 1) {
            subfaces.push(sub);
        }
    }
    subfaces.sort();
    subfaces.dedup();
    for sub in subfaces {
        let mut cones = Vec::new();
        fan(vertices, incidence, sub, k - 1, &mut cones);
        for mut s in cones {
            s.insert(0, root);
            out.push(s);
        }
    }
}

/// Share of a simplex on which an affine function with vertex values `h`
/// is nonpositive, when a closed form applies.
fn share_below(h: &[Rational]) -> Option<Rational> {
    let pos: Vec<usize> = (0..h.len()).filter(|&i| h[i].is_positive()).collect();
    let neg: Vec<usize> = (0..h.len()).filter(|&i| h[i].is_negative()).collect();
    if pos.is_empty() {
        return Some(Rational::one());
    }
    if neg.is_empty() {
        return Some(Rational::zero());
    }
    // A lone vertex on one side cuts off a homothetic corner.
    let corner = |i: usize| -> Rational {
        (0..h.len())
            .filter(|&j| j != i)
            .map(|j| &h[i] / (&h[i] - &h[j]))
            .product()
    };
    if pos.len() == 1 {
        return Some(Rational::one() - corner(pos[0]));
    }
    if neg.len() == 1 {
        return Some(corner(neg[0]));
    }
    // Divided differences of t ↦ t_+^d; needs the positive values distinct
    // from every other value.
    let d = h.len() as u32 - 1;
    let mut above = Rational::zero();
    for &i in &pos {
        let mut denom = Rational::one();
        for j in (0..h.len()).filter(|&j| j != i) {
            let diff = &h[i] - &h[j];
            if diff.is_zero() {
                return None;
            }
            denom *= diff;
        }
        above += h[i].pow(d) / denom;
    }
    Some(Rational::one() - above)
}

/// `vol(K ∩ H)` given simplices that tile `K`.
pub fn halfspace_volume(pieces: &[Simplex], hs: &HalfSpace) -> Rational {
    pieces
        .iter()
        .map(|s| {
            let h: Vec<Rational> = s.vertices().iter().map(|v| -hs.slack(v)).collect();
            match share_below(&h) {
                Some(share) => share * s.volume(),
                None => clip_bounded(&s.hrep(), hs).section.volume(),
            }
        })
        .sum()
}

/// Simplices with disjoint interiors covering `p`.
pub fn triangulate(p: &Polytope) -> Result<Vec<Simplex>> {
    Ok(Body::from_polytope(p)?.triangulate())
}

/// Exact volume; zero for a flat vertex set.
pub fn volume(p: &Polytope) -> Rational {
    Body::from_polytope(p)
        .map(|b| b.volume())
        .unwrap_or_else(|_| Rational::zero())
}

/// Exact centroid (barycenter) of a full-dimensional polytope.
pub fn centroid(p: &Polytope) -> Result<RatVector> {
    Ok(Body::from_polytope(p)?.centroid())
}
