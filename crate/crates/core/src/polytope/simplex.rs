use super::geometry::{edge_det, factorial, hyperplane_normal};
use super::{check_dim, HRep, HalfSpace, Polytope};
use crate::error::{Error, Result};
use crate::exact::{RatMatrix, RatVector, Rational};

/// `d + 1` affinely independent points of `R^d`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Simplex {
    vertices: Vec<RatVector>,
}

impl Simplex {
    pub fn new(vertices: Vec<RatVector>) -> Result<Self> {
        let d = vertices.len().saturating_sub(1);
        check_dim(d)?;
        for v in &vertices {
            if v.dim() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: v.dim(),
                });
            }
        }
        let refs: Vec<&RatVector> = vertices.iter().collect();
        if edge_det(&refs).is_zero() {
            return Err(Error::degenerate("simplex vertices are affinely dependent"));
        }
        Ok(Simplex { vertices })
    }

    pub fn from_int_vertices(vertices: &[&[i64]]) -> Result<Self> {
        Self::new(vertices.iter().map(|v| RatVector::from_ints(v)).collect())
    }

    pub(crate) fn from_trusted(vertices: Vec<RatVector>) -> Self {
        Simplex { vertices }
    }

    /// `S_d = (d+1)·conv{0, e_1, …, e_d} − 1`: centroid at the origin and
    /// the origin as its only interior lattice point.
    pub fn ehrhart(d: usize) -> Simplex {
        Self::ehrhart_scaled(d, 1)
    }

    /// `m·S_d`.
    pub fn ehrhart_scaled(d: usize, m: i64) -> Simplex {
        let mut vertices = vec![RatVector::from_ints(&vec![-m; d])];
        for i in 0..d {
            let mut v = vec![-m; d];
            v[i] = m * d as i64;
            vertices.push(RatVector::from_ints(&v));
        }
        Simplex { vertices }
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn vertices(&self) -> &[RatVector] {
        &self.vertices
    }

    /// Columns `v_i − v_0`, `i = 1..=d`.
    pub fn edge_matrix(&self) -> RatMatrix {
        let cols: Vec<RatVector> = self.vertices[1..]
            .iter()
            .map(|v| v.sub(&self.vertices[0]))
            .collect();
        RatMatrix::from_cols(&cols).expect("consistent dimensions")
    }

    pub fn volume(&self) -> Rational {
        let refs: Vec<&RatVector> = self.vertices.iter().collect();
        edge_det(&refs).abs() / factorial(self.dim())
    }

    pub fn vertex_sum(&self) -> RatVector {
        RatVector::sum(self.dim(), &self.vertices)
    }

    /// Vertex average, which is the centroid of a simplex.
    pub fn centroid(&self) -> RatVector {
        self.vertex_sum()
            .scale(&Rational::new(1, self.vertices.len() as i64))
    }

    pub fn is_centered(&self) -> bool {
        self.vertex_sum().is_zero()
    }

    /// Facet `i` is the one opposite vertex `i`.
    pub fn facets(&self) -> Vec<HalfSpace> {
        let d = self.dim();
        (0..=d)
            .map(|i| {
                let others: Vec<&RatVector> = self
                    .vertices
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, v)| v)
                    .collect();
                let normal = hyperplane_normal(d, &others).expect("nondegenerate simplex");
                let offset = normal.dot(others[0]);
                let h = HalfSpace { normal, offset };
                if h.contains(&self.vertices[i]) {
                    h
                } else {
                    h.flipped()
                }
            })
            .collect()
    }

    pub fn hrep(&self) -> HRep {
        HRep::new_unchecked(self.dim(), self.facets())
    }

    pub fn to_polytope(&self) -> Polytope {
        Polytope::from_trusted(self.dim(), self.vertices.clone())
    }

    pub fn scale(&self, s: &Rational) -> Simplex {
        assert!(!s.is_zero(), "scale factor must be nonzero");
        Simplex {
            vertices: self.vertices.iter().map(|v| v.scale(s)).collect(),
        }
    }

    pub fn translate(&self, t: &RatVector) -> Simplex {
        Simplex {
            vertices: self.vertices.iter().map(|v| v.add(t)).collect(),
        }
    }

    /// `U·S + t` for an invertible `U`.
    pub fn transform(&self, u: &RatMatrix, t: &RatVector) -> Result<Simplex> {
        let p = self.to_polytope().transform(u, t)?;
        Ok(Simplex {
            vertices: p.vertices().to_vec(),
        })
    }

    pub fn is_lattice_simplex(&self) -> bool {
        self.vertices.iter().all(RatVector::is_integral)
    }
}
