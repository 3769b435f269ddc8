//! Upper bounds on `G(K)` for bodies with centroid at the origin, and the
//! exact checks behind them: the symmetric-core volume ratio, the
//! halfspace-depth inequality, and unimodular equivalence of simplices.

use itertools::Itertools;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{binomial, is_unimodular, RatMatrix, RatVector, Rational};
use crate::lattice::{enumerate_body, lambda1_body, Lambda1};
use crate::polytope::{halfspace_volume, Body, HRep, HalfSpace, Polytope, Simplex};

/// How an observed count compares with a bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Strict,
    Equal,
    Violated,
}

impl Status {
    /// Classification for `actual ≤ bound`.
    pub fn of_le(actual: &Rational, bound: &Rational) -> Status {
        match actual.cmp(bound) {
            std::cmp::Ordering::Less => Status::Strict,
            std::cmp::Ordering::Equal => Status::Equal,
            std::cmp::Ordering::Greater => Status::Violated,
        }
    }

    /// Classification for `actual < bound`; a tie is a violation.
    pub fn of_lt(actual: &Rational, bound: &Rational) -> Status {
        if actual < bound {
            Status::Strict
        } else {
            Status::Violated
        }
    }

    pub fn is_violated(self) -> bool {
        self == Status::Violated
    }
}

/// A lattice-point count compared with a bound, plus the exact quantities
/// that justify the verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundResult<E> {
    pub bound: Rational,
    pub actual: u64,
    pub status: Status,
    pub evidence: E,
}

/// `2^d (2/λ₁ + 1)^d`.
pub fn prop1_bound(d: usize, lambda1: &Rational) -> Result<Rational> {
    if !lambda1.is_positive() {
        return Err(Error::precondition("lambda1 must be positive"));
    }
    let base = Rational::from_integer(2) * (Rational::from_integer(2) / lambda1 + Rational::one());
    Ok(base.pow(d as u32))
}

/// `⌈(d+1)/λ₁⌉`.
fn grid_n(d: usize, lambda1: &Rational) -> Result<u64> {
    crate::barycentric::n_of_rho(d, lambda1)
}

/// `C(d + ⌈(d+1)/λ₁⌉, d)`.
pub fn conjecture_bound(d: usize, lambda1: &Rational) -> Result<num_bigint::BigInt> {
    let n = grid_n(d, lambda1)?;
    Ok(binomial(d as u64 + n, d as u64))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Prop1Evidence {
    #[serde(flatten)]
    pub lambda1: Lambda1,
    pub volume: Rational,
    pub symmetric_volume: Rational,
    /// `vol((1+λ₁/2)K) / vol((λ₁/2)(K∩−K))`.
    pub volume_ratio: Rational,
    pub volume_ratio_holds: bool,
}

fn require_centered(body: &Body) -> Result<()> {
    if body.is_centered() {
        Ok(())
    } else {
        Err(Error::precondition(format!(
            "centroid is {:?}, not the origin; center the body first",
            body.centroid()
        )))
    }
}

/// `G(K) < 2^d (2/λ₁+1)^d`, together with the sharper volume-ratio
/// inequality `G(K) ≤ (2/λ₁+1)^d · vol K / vol(K∩−K)` it is derived from.
pub fn verify_prop1(h: &HRep) -> Result<BoundResult<Prop1Evidence>> {
    verify_prop1_body(&Body::from_hrep(h)?)
}

pub fn verify_prop1_body(body: &Body) -> Result<BoundResult<Prop1Evidence>> {
    require_centered(body)?;
    let actual = enumerate_body(body)?.count();
    let l1 = lambda1_body(body)?;
    prop1_with(body, actual, l1)
}

pub(crate) fn prop1_with(
    body: &Body,
    actual: u64,
    l1: Lambda1,
) -> Result<BoundResult<Prop1Evidence>> {
    let d = body.dim();
    let bound = prop1_bound(d, &l1.value)?;
    let volume = body.volume();
    let symmetric_volume = body.symmetric_core()?.volume();
    let two = Rational::from_integer(2);
    let volume_ratio =
        (&two / &l1.value + Rational::one()).pow(d as u32) * &volume / &symmetric_volume;
    let g = Rational::from_integer(actual as i64);
    let volume_ratio_holds = g <= volume_ratio;
    let mut status = Status::of_lt(&g, &bound);
    if !volume_ratio_holds {
        status = Status::Violated;
    }
    Ok(BoundResult {
        bound,
        actual,
        status,
        evidence: Prop1Evidence {
            lambda1: l1,
            volume,
            symmetric_volume,
            volume_ratio,
            volume_ratio_holds,
        },
    })
}

fn serialize_rows<S: Serializer>(m: &RatMatrix, s: S) -> std::result::Result<S::Ok, S::Error> {
    let rows: Vec<RatVector> = (0..m.rows()).map(|i| m.row(i)).collect();
    rows.serialize(s)
}

/// `s = U·t + z` with `U` integral unimodular and `z` integral; vertex `i`
/// of `s` is the image of vertex `matching[i]` of `t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnimodularCertificate {
    #[serde(serialize_with = "serialize_rows")]
    pub u: RatMatrix,
    pub z: RatVector,
    pub matching: Vec<usize>,
}

impl UnimodularCertificate {
    /// Re-derives the vertex correspondence from scratch.
    pub fn verify(&self, s: &Simplex, t: &Simplex) -> bool {
        if !is_unimodular(&self.u) || !self.z.is_integral() {
            return false;
        }
        self.matching.len() == s.vertices().len()
            && self.matching.iter().enumerate().all(|(i, &j)| {
                self.u
                    .mul_vec(&t.vertices()[j])
                    .map(|x| x.add(&self.z) == s.vertices()[i])
                    .unwrap_or(false)
            })
    }
}

/// Searches all `(d+1)!` vertex matchings for an affine unimodular map
/// taking `t` onto `s`.
pub fn unimodular_equivalent(s: &Simplex, t: &Simplex) -> Result<Option<UnimodularCertificate>> {
    let d = s.dim();
    if t.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: t.dim(),
        });
    }
    if s.volume() != t.volume() {
        return Ok(None);
    }
    let es = s.edge_matrix();
    let (sv, tv) = (s.vertices(), t.vertices());
    for perm in (0..=d).permutations(d + 1) {
        let cols: Vec<RatVector> = (1..=d).map(|i| tv[perm[i]].sub(&tv[perm[0]])).collect();
        let et_inv = RatMatrix::from_cols(&cols)?
            .inverse()?
            .ok_or_else(|| Error::degenerate("simplex vertices are affinely dependent"))?;
        let u = es.mul(&et_inv)?;
        if !is_unimodular(&u) {
            continue;
        }
        let z = sv[0].sub(&u.mul_vec(&tv[perm[0]])?);
        if z.is_integral() {
            return Ok(Some(UnimodularCertificate {
                u,
                z,
                matching: perm,
            }));
        }
    }
    Ok(None)
}

/// Outcome of testing a simplex against `λ₁⁻¹·S_d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EqualityCase {
    /// `λ₁⁻¹` is not an integer, so there is no scaled Ehrhart simplex to
    /// compare with.
    NotApplicable { lambda1: Rational },
    Checked {
        /// `m = λ₁⁻¹`.
        m: i64,
        certificate: Option<UnimodularCertificate>,
        /// Columns `(v_i − v_{d+1}) / n(λ₁)`.
        #[serde(serialize_with = "serialize_rows")]
        m_matrix: RatMatrix,
        m_unimodular: bool,
        /// `M·(n·e_i) + v_{d+1} = v_i` for every `i`.
        m_equation_holds: bool,
    },
}

impl EqualityCase {
    pub fn is_equivalent(&self) -> bool {
        matches!(
            self,
            EqualityCase::Checked {
                certificate: Some(_),
                ..
            }
        )
    }

    pub fn certificate(&self) -> Option<&UnimodularCertificate> {
        match self {
            EqualityCase::Checked { certificate, .. } => certificate.as_ref(),
            EqualityCase::NotApplicable { .. } => None,
        }
    }
}

/// Is `s` unimodularly equivalent to `λ₁(s)⁻¹·S_d`?
pub fn equality_case_check(s: &Simplex) -> Result<EqualityCase> {
    let body = Body::from_simplex(s);
    require_centered(&body)?;
    let l1 = lambda1_body(&body)?;
    equality_with(s, &l1.value)
}

pub(crate) fn equality_with(s: &Simplex, lambda1: &Rational) -> Result<EqualityCase> {
    let inv = lambda1.recip()?;
    let m = match inv.to_i64() {
        Some(m) => m,
        None => {
            return Ok(EqualityCase::NotApplicable {
                lambda1: lambda1.clone(),
            })
        }
    };
    let d = s.dim();
    let target = Simplex::ehrhart_scaled(d, m);
    let certificate = unimodular_equivalent(s, &target)?;

    let n = Rational::from_integer(grid_n(d, lambda1)? as i64);
    let v = s.vertices();
    let base = &v[d];
    let inv_n = n.recip()?;
    let cols: Vec<RatVector> = v[..d].iter().map(|vi| vi.sub(base).scale(&inv_n)).collect();
    let m_matrix = RatMatrix::from_cols(&cols)?;
    let m_unimodular = is_unimodular(&m_matrix);
    let m_equation_holds = (0..d).all(|i| {
        m_matrix
            .mul_vec(&RatVector::unit(d, i).scale(&n))
            .map(|x| x.add(base) == v[i])
            .unwrap_or(false)
    });
    Ok(EqualityCase::Checked {
        m,
        certificate,
        m_matrix,
        m_unimodular,
        m_equation_holds,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimplexEvidence {
    #[serde(flatten)]
    pub lambda1: Lambda1,
    pub n: u64,
    /// Present exactly when the bound is attained.
    pub equality: Option<EqualityCase>,
}

/// `G(S) ≤ C(d + ⌈(d+1)/λ₁⌉, d)`; when attained, the simplex must be
/// unimodularly equivalent to `λ₁⁻¹·S_d`, and a tie without such a
/// certificate is reported as a violation.
pub fn verify_simplex_bound(s: &Simplex) -> Result<BoundResult<SimplexEvidence>> {
    let body = Body::from_simplex(s);
    require_centered(&body)?;
    let actual = enumerate_body(&body)?.count();
    let l1 = lambda1_body(&body)?;
    simplex_bound_with(s, actual, l1)
}

pub(crate) fn simplex_bound_with(
    s: &Simplex,
    actual: u64,
    l1: Lambda1,
) -> Result<BoundResult<SimplexEvidence>> {
    let d = s.dim();
    let n = grid_n(d, &l1.value)?;
    let bound = Rational::from_bigint(binomial(d as u64 + n, d as u64));
    let mut status = Status::of_le(&Rational::from_integer(actual as i64), &bound);
    let equality = if status == Status::Equal {
        let eq = equality_with(s, &l1.value)?;
        if let EqualityCase::Checked {
            certificate: None, ..
        } = eq
        {
            status = Status::Violated;
        }
        Some(eq)
    } else {
        None
    };
    Ok(BoundResult {
        bound,
        actual,
        status,
        evidence: SimplexEvidence {
            lambda1: l1,
            n,
            equality,
        },
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MilmanPajor {
    /// `vol(K∩−K) / vol(K)`.
    pub ratio: Rational,
    /// `2^{-d}`.
    pub threshold: Rational,
    pub pass: bool,
    pub symmetric: bool,
}

/// `vol(K∩−K) ≥ 2^{-d} vol(K)` for centroid-zero `K`.
pub fn milman_pajor_check(p: &Polytope) -> Result<MilmanPajor> {
    milman_pajor_body(&Body::from_polytope(p)?)
}

pub fn milman_pajor_body(body: &Body) -> Result<MilmanPajor> {
    require_centered(body)?;
    let ratio = body.symmetric_core()?.volume() / body.volume();
    Ok(mp_from_ratio(body, ratio))
}

pub(crate) fn mp_from_ratio(body: &Body, ratio: Rational) -> MilmanPajor {
    let threshold = Rational::new(1, 1 << body.dim());
    MilmanPajor {
        pass: ratio >= threshold,
        symmetric: body.polytope().is_origin_symmetric(),
        ratio,
        threshold,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Gruenbaum {
    pub halfspace: HalfSpace,
    pub clipped_volume: Rational,
    /// `vol(K∩H) / vol(K)`.
    pub fraction: Rational,
    /// `(d/(d+1))^d`.
    pub threshold: Rational,
    pub pass: bool,
}

/// `(d/(d+1))^d`.
pub fn gruenbaum_threshold(d: usize) -> Rational {
    Rational::new(d as i64, d as i64 + 1).pow(d as u32)
}

/// `vol(K∩H) ≥ (d/(d+1))^d vol(K)` for a halfspace `H` containing the
/// centroid of `K`, which must be the origin.
pub fn gruenbaum_check(p: &Polytope, hs: &HalfSpace) -> Result<Gruenbaum> {
    let body = Body::from_polytope(p)?;
    require_centered(&body)?;
    gruenbaum_body(&body, &body.volume(), &body.triangulate(), hs)
}

/// [`gruenbaum_check`] with the volume and a triangulation of `body`
/// supplied by the caller.
pub(crate) fn gruenbaum_body(
    body: &Body,
    volume: &Rational,
    pieces: &[Simplex],
    hs: &HalfSpace,
) -> Result<Gruenbaum> {
    if hs.dim() != body.dim() {
        return Err(Error::DimensionMismatch {
            expected: body.dim(),
            found: hs.dim(),
        });
    }
    if hs.offset.is_negative() {
        return Err(Error::precondition("halfspace must contain the centroid"));
    }
    let clipped_volume = halfspace_volume(pieces, hs);
    let fraction = &clipped_volume / volume;
    let threshold = gruenbaum_threshold(body.dim());
    Ok(Gruenbaum {
        halfspace: hs.clone(),
        pass: fraction >= threshold,
        clipped_volume,
        fraction,
        threshold,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{frac, int};
    use crate::polytope::center;
    use proptest::prelude::*;

    fn square(r: i64) -> Polytope {
        Polytope::from_int_points(2, &[&[-r, -r], &[r, -r], &[r, r], &[-r, r]]).unwrap()
    }

    #[test]
    fn bound_formulas() {
        assert_eq!(prop1_bound(2, &int(1)).unwrap(), int(36));
        assert_eq!(prop1_bound(3, &int(1)).unwrap(), int(216));
        assert_eq!(prop1_bound(2, &int(2)).unwrap(), int(16));
        assert!(prop1_bound(2, &int(0)).is_err());
        assert_eq!(conjecture_bound(2, &int(1)).unwrap(), 10.into());
        assert_eq!(conjecture_bound(3, &int(1)).unwrap(), 35.into());
        assert_eq!(conjecture_bound(2, &frac(1, 2)).unwrap(), 28.into());
        assert!(conjecture_bound(2, &int(-1)).is_err());
    }

    #[test]
    fn volume_bound_examples() {
        let s2 = Simplex::ehrhart(2);
        let r = verify_prop1(&s2.hrep()).unwrap();
        assert_eq!(
            (r.actual, r.bound.clone(), r.status),
            (10, int(36), Status::Strict)
        );
        // (2/1+1)^2 · (9/2)/3
        assert_eq!(r.evidence.volume_ratio, frac(27, 2));
        assert!(r.evidence.volume_ratio_holds);

        let sq = Body::from_polytope(&square(1)).unwrap();
        let r = verify_prop1_body(&sq).unwrap();
        assert_eq!((r.actual, r.bound, r.status), (9, int(36), Status::Strict));

        let r = verify_prop1(&Simplex::ehrhart(3).hrep()).unwrap();
        assert_eq!(
            (r.actual, r.bound, r.status),
            (35, int(216), Status::Strict)
        );
    }

    #[test]
    fn volume_bound_rejects_off_center() {
        let off = Simplex::ehrhart(2).translate(&RatVector::from_ints(&[1, 0]));
        assert!(matches!(
            verify_prop1(&off.hrep()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn simplex_bound_examples() {
        let r = verify_simplex_bound(&Simplex::ehrhart(2)).unwrap();
        assert_eq!((r.actual, r.status), (10, Status::Equal));
        assert!(r.evidence.equality.as_ref().unwrap().is_equivalent());
        for m in 1..=3 {
            let r = verify_simplex_bound(&Simplex::ehrhart_scaled(2, m)).unwrap();
            let expect = binomial(2 + 3 * m as u64, 2);
            assert_eq!(r.bound, Rational::from_bigint(expect));
            assert_eq!(r.status, Status::Equal);
        }
        let t = Simplex::from_int_vertices(&[&[-1, -1], &[1, 0], &[0, 1]]).unwrap();
        let t = t.translate(&t.centroid().neg());
        let r = verify_simplex_bound(&t).unwrap();
        assert_eq!(r.status, Status::Strict);
        assert!(r.evidence.equality.is_none());
    }

    #[test]
    fn equivalence_examples() {
        let s2 = Simplex::ehrhart(2);
        let shear = RatMatrix::from_ints(2, 2, &[1, 1, 0, 1]).unwrap();
        let t = s2
            .transform(&shear, &RatVector::from_ints(&[1, 0]))
            .unwrap();
        let c = unimodular_equivalent(&s2, &t).unwrap().unwrap();
        assert!(c.verify(&s2, &t));

        let neg = s2.scale(&int(-1));
        let c = unimodular_equivalent(&s2, &neg).unwrap().unwrap();
        assert!(c.verify(&s2, &neg));
        assert_eq!(c.z, RatVector::zeros(2));

        assert!(unimodular_equivalent(&s2, &s2.scale(&int(2)))
            .unwrap()
            .is_none());
        assert!(unimodular_equivalent(&s2, &Simplex::ehrhart(3)).is_err());
    }

    #[test]
    fn equality_case_examples() {
        let eq = equality_case_check(&Simplex::ehrhart(2)).unwrap();
        assert!(eq.is_equivalent());
        let EqualityCase::Checked {
            m,
            m_unimodular,
            m_equation_holds,
            ..
        } = eq
        else {
            panic!("expected a checked case");
        };
        assert_eq!(m, 1);
        assert!(m_unimodular && m_equation_holds);

        let eq = equality_case_check(&Simplex::ehrhart_scaled(2, 2)).unwrap();
        assert!(eq.is_equivalent());

        let t = Simplex::from_int_vertices(&[&[-1, -1], &[1, 0], &[0, 1]]).unwrap();
        let t = t.translate(&t.centroid().neg());
        let eq = equality_case_check(&t).unwrap();
        assert!(!eq.is_equivalent());
    }

    #[test]
    fn equality_not_applicable() {
        let s = Simplex::ehrhart(2);
        let eq = equality_with(&s, &frac(2, 3)).unwrap();
        assert!(matches!(eq, EqualityCase::NotApplicable { .. }));
    }

    #[test]
    fn milman_pajor_examples() {
        let r = milman_pajor_check(&Simplex::ehrhart(2).to_polytope()).unwrap();
        assert_eq!(r.ratio, frac(2, 3));
        assert!(r.pass && !r.symmetric);
        let r = milman_pajor_check(&square(2)).unwrap();
        assert_eq!(r.ratio, int(1));
        assert!(r.symmetric);
        let r = milman_pajor_check(&Simplex::ehrhart(3).to_polytope()).unwrap();
        assert!(r.pass);
        assert!(r.ratio >= frac(1, 8) && r.ratio < int(1));
        let off = Simplex::ehrhart(2).translate(&RatVector::from_ints(&[1, 1]));
        assert!(milman_pajor_check(&off.to_polytope()).is_err());
    }

    #[test]
    fn gruenbaum_examples() {
        let s2 = Simplex::ehrhart(2).to_polytope();
        let h = HalfSpace::new(RatVector::from_ints(&[1, 0]), int(0)).unwrap();
        let r = gruenbaum_check(&s2, &h).unwrap();
        assert_eq!(r.fraction, frac(5, 9));
        assert!(r.pass);

        let all = HalfSpace::new(RatVector::from_ints(&[1, 0]), int(10)).unwrap();
        assert_eq!(gruenbaum_check(&s2, &all).unwrap().fraction, int(1));

        let bad = HalfSpace::new(RatVector::from_ints(&[1, 0]), int(-1)).unwrap();
        assert!(matches!(
            gruenbaum_check(&s2, &bad),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn gruenbaum_equality_on_simplices() {
        // The hyperplane through the centroid parallel to a facet cuts off a
        // homothetic copy with ratio d/(d+1) on the vertex side.
        for d in 1..=4 {
            let s = Simplex::ehrhart(d);
            let p = s.to_polytope();
            for f in s.facets() {
                let h = HalfSpace::new(f.normal.clone(), int(0)).unwrap();
                let r = gruenbaum_check(&p, &h).unwrap();
                assert_eq!(r.fraction, gruenbaum_threshold(d), "d={d}");
            }
        }
    }

    fn small_triangle() -> impl Strategy<Value = Simplex> {
        prop::collection::vec(-3i64..=3, 6).prop_filter_map("degenerate", |c| {
            Simplex::from_int_vertices(&[&c[0..2], &c[2..4], &c[4..6]]).ok()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn centered_triangles_obey_every_bound(t in small_triangle()) {
            let t = t.translate(&t.centroid().neg());
            let p1 = verify_prop1(&t.hrep()).unwrap();
            prop_assert_eq!(p1.status, Status::Strict);
            prop_assert!(p1.evidence.volume_ratio_holds);
            let sb = verify_simplex_bound(&t).unwrap();
            prop_assert!(!sb.status.is_violated());
            let mp = milman_pajor_check(&t.to_polytope()).unwrap();
            prop_assert!(mp.pass && mp.ratio < int(1));
        }

        #[test]
        fn equivalence_is_symmetric(t in small_triangle(), a in -2i64..=2, z in prop::collection::vec(-3i64..=3, 2)) {
            let u = RatMatrix::from_ints(2, 2, &[1, a, 0, 1]).unwrap()
                .mul(&RatMatrix::from_ints(2, 2, &[0, 1, 1, 0]).unwrap()).unwrap();
            let image = t.transform(&u, &RatVector::from_ints(&z)).unwrap();
            let fwd = unimodular_equivalent(&image, &t).unwrap();
            let back = unimodular_equivalent(&t, &image).unwrap();
            prop_assert!(fwd.as_ref().is_some_and(|c| c.verify(&image, &t)));
            prop_assert!(back.as_ref().is_some_and(|c| c.verify(&t, &image)));
        }

        #[test]
        fn recentered_quads_pass_halfspace_depth(c in prop::collection::vec(-4i64..=4, 8), n in prop::collection::vec(-9i64..=9, 2)) {
            let pts: Vec<&[i64]> = c.chunks(2).collect();
            prop_assume!(n.iter().any(|&x| x != 0));
            if let Ok(p) = Polytope::from_int_points(2, &pts) {
                let p = center(&p).unwrap();
                let h = HalfSpace::new(RatVector::from_ints(&n), int(0)).unwrap();
                let g = gruenbaum_check(&p, &h).unwrap();
                prop_assert!(g.pass);
                prop_assert!(milman_pajor_check(&p).unwrap().pass);
            }
        }
    }
}
