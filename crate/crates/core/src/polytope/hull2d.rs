use super::geometry::dedup_sorted;
use super::Polytope;
use crate::error::{Error, Result};
use crate::exact::{RatVector, Rational};

fn cross(o: &RatVector, a: &RatVector, b: &RatVector) -> Rational {
    (&a[0] - &o[0]) * (&b[1] - &o[1]) - (&a[1] - &o[1]) * (&b[0] - &o[0])
}

/// Planar convex hull by Andrew's monotone chain.
///
/// Returns the irredundant vertices counterclockwise, starting from the
/// lexicographically smallest point. Collinear points are dropped.
pub fn hull2d(points: &[RatVector]) -> Result<Polytope> {
    for p in points {
        if p.dim() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: p.dim(),
            });
        }
    }
    let pts = dedup_sorted(points.iter().cloned());
    if pts.len() < 3 {
        return Err(Error::degenerate(
            "hull needs at least three distinct points",
        ));
    }
    let mut lower: Vec<RatVector> = Vec::new();
    for p in &pts {
        while lower.len() >= 2
            && !cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive()
        {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<RatVector> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2
            && !cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive()
        {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() < 3 {
        return Err(Error::degenerate("points are collinear"));
    }
    Ok(Polytope::from_trusted(2, lower))
}
