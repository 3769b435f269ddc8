//! Lattice polygons: Pick's identity, Scott's inequality, and the bound
//! `G(K) ≤ 10` for planar centroid-zero bodies with a single interior
//! lattice point, reproduced step by step.

use num_integer::Integer;
use serde::Serialize;

use crate::bounds::{
    gruenbaum_threshold, unimodular_equivalent, BoundResult, Status, UnimodularCertificate,
};
use crate::error::{Error, Result};
use crate::exact::{RatVector, Rational};
use crate::lattice::{enumerate_body, LatticePointSet};
use crate::polytope::{hull2d, membership, Body, HRep, HalfSpace, Membership, Polytope, Simplex};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlanarCounts {
    pub total: u64,
    pub boundary: u64,
    pub interior: u64,
    pub area: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PickCheck {
    #[serde(flatten)]
    pub counts: PlanarCounts,
    /// `Σ gcd(|Δx|, |Δy|)` over the edges.
    pub edge_gcd_sum: u64,
    /// `G = A + b/2 + 1` and the boundary count matches the edge sum.
    pub holds: bool,
}

fn require_lattice_polygon(p: &Polytope) -> Result<()> {
    if p.dim() != 2 {
        return Err(Error::precondition("expected a polygon"));
    }
    if !p.is_lattice_polytope() {
        return Err(Error::precondition("polygon vertices must be integral"));
    }
    Ok(())
}

/// Lattice points on the boundary of a lattice polygon, from its vertices
/// in cyclic order.
pub fn edge_gcd_sum(cyclic: &[RatVector]) -> u64 {
    let k = cyclic.len();
    (0..k)
        .map(|i| {
            let (a, b) = (&cyclic[i], &cyclic[(i + 1) % k]);
            let dx = (&b[0] - &a[0]).to_i64().expect("integral vertex");
            let dy = (&b[1] - &a[1]).to_i64().expect("integral vertex");
            dx.gcd(&dy) as u64
        })
        .sum()
}

fn counts_of(points: &LatticePointSet, area: Rational) -> PlanarCounts {
    PlanarCounts {
        total: points.count(),
        boundary: points.count() - points.interior_count(),
        interior: points.interior_count(),
        area,
    }
}

/// Counts lattice points of a lattice polygon by enumeration and checks
/// `G = A + b/2 + 1` exactly.
pub fn pick_identity(p: &Polytope) -> Result<PickCheck> {
    require_lattice_polygon(p)?;
    let body = Body::from_polytope(p)?;
    let counts = counts_of(&enumerate_body(&body)?, body.volume());
    let edge_gcd_sum = edge_gcd_sum(hull2d(p.vertices())?.vertices());
    let pick = &counts.area + Rational::new(counts.boundary as i64, 2) + Rational::one();
    Ok(PickCheck {
        holds: pick == Rational::from_integer(counts.total as i64)
            && edge_gcd_sum == counts.boundary,
        edge_gcd_sum,
        counts,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScottCheck {
    pub boundary: u64,
    pub interior: u64,
    /// `b − 2i`.
    pub deficit: i64,
    pub holds: bool,
    pub equality: bool,
    /// Map onto `S₂` when the deficit is 7 and the polygon is a triangle.
    pub certificate: Option<UnimodularCertificate>,
    /// Deficit 7 without a certificate; impossible by Scott's theorem, so
    /// it is reported rather than hidden.
    pub anomaly: bool,
}

/// `b − 2i ≤ 7` for a lattice polygon with an interior lattice point, with
/// equality only for images of `S₂`.
pub fn scott_deficit(p: &Polytope) -> Result<ScottCheck> {
    require_lattice_polygon(p)?;
    let pts = enumerate_body(&Body::from_polytope(p)?)?;
    let interior = pts.interior_count();
    if interior == 0 {
        return Err(Error::precondition("polygon has no interior lattice point"));
    }
    let boundary = pts.count() - interior;
    let deficit = boundary as i64 - 2 * interior as i64;
    let equality = deficit == 7;
    let certificate = if equality && p.vertices().len() == 3 {
        let t = Simplex::new(p.vertices().to_vec())?;
        unimodular_equivalent(&t, &Simplex::ehrhart(2))?
    } else {
        None
    };
    Ok(ScottCheck {
        boundary,
        interior,
        deficit,
        holds: deficit <= 7,
        equality,
        anomaly: equality && certificate.is_none(),
        certificate,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EhrhartPlanar {
    NotApplicable {
        reason: String,
    },
    Checked {
        volume: Rational,
        nonzero_points: u64,
        holds: bool,
    },
}

impl EhrhartPlanar {
    pub fn is_violated(&self) -> bool {
        matches!(self, EhrhartPlanar::Checked { holds: false, .. })
    }
}

/// A planar centroid-zero body of area at least 9/2 holds at least two
/// nonzero lattice points.
pub fn ehrhart_planar_check(p: &Polytope) -> Result<EhrhartPlanar> {
    if p.dim() != 2 {
        return Ok(EhrhartPlanar::NotApplicable {
            reason: format!("dimension {} is not 2", p.dim()),
        });
    }
    ehrhart_planar_body(&Body::from_polytope(p)?, None)
}

pub(crate) fn ehrhart_planar_body(
    body: &Body,
    points: Option<&LatticePointSet>,
) -> Result<EhrhartPlanar> {
    if !body.is_centered() {
        return Ok(EhrhartPlanar::NotApplicable {
            reason: "centroid is not the origin".into(),
        });
    }
    let volume = body.volume();
    if volume < Rational::new(9, 2) {
        return Ok(EhrhartPlanar::NotApplicable {
            reason: format!("area {volume} is below 9/2"),
        });
    }
    let total = match points {
        Some(pts) => pts.count(),
        None => enumerate_body(body)?.count(),
    };
    // The origin is a lattice point of every centroid-zero body.
    let nonzero_points = total - 1;
    Ok(EhrhartPlanar::Checked {
        volume,
        nonzero_points,
        holds: nonzero_points >= 2,
    })
}

/// The two cases of the argument, with every intermediate quantity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum Thm3Branch {
    /// `0 ∉ int P`: a halfspace `H` through the origin contains `P`.
    OriginNotInterior {
        halfspace: HalfSpace,
        volume_p: Rational,
        volume_k_cap_h: Rational,
        /// `(1 − (2/3)²)·vol K`.
        five_ninths_volume_k: Rational,
        /// `vol P ≤ vol(K∩H) ≤ 5/9·vol K ≤ 5/2`.
        chain_holds: bool,
        /// `vol P + G/2 + 1`, an upper bound for `G` by Pick; absent when
        /// `P` is not full-dimensional.
        pick_bound: Option<Rational>,
        /// `G ≤ 7`.
        conclusion_holds: bool,
    },
    /// `0 ∈ int P`: `9/2 ≥ vol K ≥ vol P = G − (G−1)/2 − 1`.
    OriginInterior {
        volume_p: Rational,
        /// `G(P) − b(P)/2 − 1`.
        pick_volume: Rational,
        /// `(G − 1)/2` from `b(P) = G − 1`.
        half_g_minus_half: Rational,
        chain_holds: bool,
        equality: Option<Thm3Equality>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Thm3Equality {
    pub volume_k_equals_volume_p: bool,
    pub p_equals_k: bool,
    pub certificate: Option<UnimodularCertificate>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Thm3Trace {
    pub volume_k: Rational,
    /// Vertices of `P = conv(K ∩ Z²)`.
    pub lattice_hull: Vec<RatVector>,
    pub branch: Thm3Branch,
}

/// `G(K) ≤ 10` for a planar centroid-zero body whose only interior lattice
/// point is the origin, with equality exactly for images of `S₂`.
pub fn verify_thm3(h: &HRep) -> Result<BoundResult<Thm3Trace>> {
    if h.dim() != 2 {
        return Err(Error::precondition("expected a planar body"));
    }
    let body = Body::from_hrep(h)?;
    let pts = enumerate_body(&body)?;
    verify_thm3_body(&body, &pts)
}

pub fn verify_thm3_body(body: &Body, pts: &LatticePointSet) -> Result<BoundResult<Thm3Trace>> {
    if body.dim() != 2 {
        return Err(Error::precondition("expected a planar body"));
    }
    if !body.is_centered() {
        return Err(Error::precondition("centroid is not the origin"));
    }
    if pts.interior_count() != 1 {
        return Err(Error::precondition(format!(
            "body has {} interior lattice points, expected exactly 1",
            pts.interior_count()
        )));
    }
    let g = pts.count();
    let g_rat = Rational::from_integer(g as i64);
    let volume_k = body.volume();
    let lattice_points = pts.as_rational();
    let hull = hull2d(&lattice_points).ok();
    let hull_body = hull.as_ref().map(Body::from_polytope).transpose()?;
    let origin = RatVector::zeros(2);
    let origin_interior = match &hull_body {
        Some(b) => membership(b.hrep(), &origin)? == Membership::Interior,
        None => false,
    };

    let bound = Rational::from_integer(10);
    let mut status = Status::of_le(&g_rat, &bound);
    let branch = if !origin_interior {
        let normal = match &hull_body {
            Some(b) => b
                .hrep()
                .halfspaces()
                .iter()
                .find(|f| !f.offset.is_positive())
                .map(|f| f.normal.clone())
                .expect("origin lies in P but not in its interior"),
            None => match lattice_points.iter().find(|p| !p.is_zero()) {
                Some(v) => RatVector::new(vec![-v[1].clone(), v[0].clone()]),
                None => RatVector::from_ints(&[1, 0]),
            },
        };
        let halfspace = HalfSpace::new(normal, Rational::zero())?;
        let volume_p = hull_body.as_ref().map_or_else(Rational::zero, Body::volume);
        let volume_k_cap_h = body.clip(&halfspace).section.volume();
        let five_ninths_volume_k = (Rational::one() - gruenbaum_threshold(2)) * &volume_k;
        let chain_holds = lattice_points.iter().all(|p| halfspace.contains(p))
            && volume_p <= volume_k_cap_h
            && volume_k_cap_h <= five_ninths_volume_k
            && five_ninths_volume_k <= Rational::new(5, 2);
        let pick_bound = hull_body
            .as_ref()
            .map(|_| &volume_p + &g_rat / Rational::from_integer(2) + Rational::one());
        let conclusion_holds = g <= 7;
        if !chain_holds || !conclusion_holds {
            status = Status::Violated;
        }
        Thm3Branch::OriginNotInterior {
            halfspace,
            volume_p,
            volume_k_cap_h,
            five_ninths_volume_k,
            chain_holds,
            pick_bound,
            conclusion_holds,
        }
    } else {
        let hb = hull_body.as_ref().expect("full-dimensional hull");
        let volume_p = hb.volume();
        let boundary_p = edge_gcd_sum(hull.as_ref().expect("hull").vertices());
        let pick_volume = &g_rat - Rational::new(boundary_p as i64, 2) - Rational::one();
        let half_g_minus_half = (&g_rat - Rational::one()) / Rational::from_integer(2);
        let chain_holds = Rational::new(9, 2) >= volume_k
            && volume_k >= volume_p
            && volume_p == pick_volume
            && pick_volume == half_g_minus_half;
        if !chain_holds {
            status = Status::Violated;
        }
        let equality = if g == 10 {
            let p_equals_k = hb.polytope().same_body(body.polytope());
            let certificate = if hb.vertices().len() == 3 {
                unimodular_equivalent(&Simplex::new(hb.vertices().to_vec())?, &Simplex::ehrhart(2))?
            } else {
                None
            };
            if !p_equals_k || certificate.is_none() {
                status = Status::Violated;
            }
            Some(Thm3Equality {
                volume_k_equals_volume_p: volume_k == volume_p,
                p_equals_k,
                certificate,
            })
        } else {
            None
        };
        Thm3Branch::OriginInterior {
            volume_p,
            pick_volume,
            half_g_minus_half,
            chain_holds,
            equality,
        }
    };
    Ok(BoundResult {
        bound,
        actual: g,
        status,
        evidence: Thm3Trace {
            volume_k,
            lattice_hull: hull.map(|h| h.vertices().to_vec()).unwrap_or_else(|| {
                let mut v = lattice_points.clone();
                v.sort();
                v
            }),
            branch,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{frac, int, RatMatrix};
    use proptest::prelude::*;

    fn poly(pts: &[&[i64]]) -> Polytope {
        Polytope::from_int_points(2, pts).unwrap()
    }

    /// Boundary and total counts by direct scan of the bounding box.
    fn brute(p: &Polytope) -> (u64, u64) {
        let h = crate::polytope::to_hrep(p).unwrap();
        let (mut total, mut boundary) = (0, 0);
        for x in -12..=12 {
            for y in -12..=12 {
                match membership(&h, &RatVector::from_ints(&[x, y])).unwrap() {
                    Membership::Interior => total += 1,
                    Membership::Boundary => {
                        total += 1;
                        boundary += 1
                    }
                    Membership::Outside => {}
                }
            }
        }
        (total, boundary)
    }

    #[test]
    fn pick_examples() {
        let r = pick_identity(&poly(&[&[0, 0], &[1, 0], &[1, 1], &[0, 1]])).unwrap();
        assert_eq!(
            (r.counts.total, r.counts.area.clone(), r.counts.boundary),
            (4, int(1), 4)
        );
        assert!(r.holds);
        let r = pick_identity(&Simplex::ehrhart(2).to_polytope()).unwrap();
        assert_eq!(
            (r.counts.total, r.counts.area.clone(), r.counts.boundary),
            (10, frac(9, 2), 9)
        );
        assert!(r.holds);
        let r = pick_identity(&poly(&[&[0, 0], &[2, 0], &[0, 2]])).unwrap();
        assert_eq!(
            (r.counts.total, r.counts.area.clone(), r.counts.boundary),
            (6, int(2), 6)
        );
        assert!(r.holds);
        let half = Polytope::from_points(
            2,
            vec![
                RatVector::from_ints(&[0, 0]),
                RatVector::from_ints(&[1, 0]),
                RatVector::new(vec![int(0), frac(1, 2)]),
            ],
        )
        .unwrap();
        assert!(matches!(pick_identity(&half), Err(Error::Precondition(_))));
    }

    #[test]
    fn scott_examples() {
        let r = scott_deficit(&Simplex::ehrhart(2).to_polytope()).unwrap();
        assert_eq!(r.deficit, 7);
        assert!(r.equality && r.certificate.is_some() && !r.anomaly);
        let r = scott_deficit(&poly(&[&[0, 0], &[2, 0], &[2, 2], &[0, 2]])).unwrap();
        assert_eq!(
            (r.boundary, r.interior, r.deficit, r.equality),
            (8, 1, 6, false)
        );
        let t = poly(&[&[0, 0], &[3, 0], &[0, 3]]);
        let r = scott_deficit(&t).unwrap();
        assert_eq!((r.boundary, r.interior, r.deficit), (9, 1, 7));
        let cert = r.certificate.unwrap();
        assert!(cert.verify(
            &Simplex::new(t.vertices().to_vec()).unwrap(),
            &Simplex::ehrhart(2)
        ));
        assert!(scott_deficit(&poly(&[&[0, 0], &[1, 0], &[0, 1]])).is_err());
    }

    #[test]
    fn ehrhart_planar_examples() {
        let s2 = Simplex::ehrhart(2);
        assert_eq!(
            ehrhart_planar_check(&s2.to_polytope()).unwrap(),
            EhrhartPlanar::Checked {
                volume: frac(9, 2),
                nonzero_points: 9,
                holds: true
            }
        );
        let big = ehrhart_planar_check(&s2.scale(&int(2)).to_polytope()).unwrap();
        assert!(matches!(big, EhrhartPlanar::Checked { holds: true, .. }));
        let small = poly(&[&[-1, 0], &[1, 0], &[0, 1], &[0, -1]]);
        assert!(matches!(
            ehrhart_planar_check(&small).unwrap(),
            EhrhartPlanar::NotApplicable { .. }
        ));
        let off = s2.translate(&RatVector::from_ints(&[1, 0])).to_polytope();
        assert!(matches!(
            ehrhart_planar_check(&off).unwrap(),
            EhrhartPlanar::NotApplicable { .. }
        ));
    }

    #[test]
    fn planar_bound_equality_on_s2() {
        let r = verify_thm3(&Simplex::ehrhart(2).hrep()).unwrap();
        assert_eq!((r.actual, r.status), (10, Status::Equal));
        let Thm3Branch::OriginInterior {
            equality: Some(eq),
            chain_holds,
            ..
        } = &r.evidence.branch
        else {
            panic!("expected the interior branch with equality");
        };
        assert!(*chain_holds);
        assert!(eq.volume_k_equals_volume_p && eq.p_equals_k);
        assert!(eq.certificate.is_some());
    }

    #[test]
    fn planar_bound_sheared_s2() {
        let shear = RatMatrix::from_ints(2, 2, &[1, 1, 0, 1]).unwrap();
        let t = Simplex::ehrhart(2)
            .transform(&shear, &RatVector::zeros(2))
            .unwrap();
        let r = verify_thm3(&t.hrep()).unwrap();
        assert_eq!((r.actual, r.status), (10, Status::Equal));
    }

    #[test]
    fn planar_bound_hexagon_strict() {
        let hex = poly(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1], &[1, 1], &[-1, -1]]);
        let r = verify_thm3(&crate::polytope::to_hrep(&hex).unwrap()).unwrap();
        assert_eq!((r.actual, r.status), (7, Status::Strict));
        assert!(matches!(
            r.evidence.branch,
            Thm3Branch::OriginInterior {
                chain_holds: true,
                equality: None,
                ..
            }
        ));
    }

    #[test]
    fn planar_bound_origin_on_hull_boundary() {
        // Thin centered triangle whose lattice points all lie on y = 0.
        let k = Polytope::from_points(
            2,
            vec![
                RatVector::new(vec![frac(-3, 2), frac(-1, 3)]),
                RatVector::new(vec![frac(3, 2), frac(-1, 3)]),
                RatVector::new(vec![int(0), frac(2, 3)]),
            ],
        )
        .unwrap();
        let r = verify_thm3(&crate::polytope::to_hrep(&k).unwrap()).unwrap();
        assert_eq!(r.actual, 3);
        assert_eq!(r.status, Status::Strict);
        let Thm3Branch::OriginNotInterior {
            chain_holds,
            conclusion_holds,
            pick_bound,
            ..
        } = &r.evidence.branch
        else {
            panic!("expected the halfspace branch");
        };
        assert!(*chain_holds && *conclusion_holds && pick_bound.is_none());
    }

    #[test]
    fn planar_bound_preconditions() {
        let off = Simplex::ehrhart(2).translate(&RatVector::from_ints(&[1, 0]));
        assert!(matches!(
            verify_thm3(&off.hrep()),
            Err(Error::Precondition(_))
        ));
        let two = Simplex::ehrhart_scaled(2, 2);
        assert!(matches!(
            verify_thm3(&two.hrep()),
            Err(Error::Precondition(_))
        ));
        assert!(verify_thm3(&Simplex::ehrhart(3).hrep()).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn pick_and_scott_on_random_polygons(c in prop::collection::vec(-6i64..=6, 12)) {
            let pts: Vec<&[i64]> = c.chunks(2).collect();
            if let Ok(p) = Polytope::from_int_points(2, &pts) {
                let r = pick_identity(&p).unwrap();
                prop_assert!(r.holds);
                let (total, boundary) = brute(&p);
                prop_assert_eq!((r.counts.total, r.counts.boundary), (total, boundary));
                if r.counts.interior > 0 {
                    let s = scott_deficit(&p).unwrap();
                    prop_assert!(s.holds && !s.anomaly);
                }
            }
        }
    }
}
