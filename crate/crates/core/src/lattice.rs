//! Integer points of rational polytopes and the first successive minimum.
//!
//! Points are found by scanning the integer bounding box of the vertex set
//! in lexicographic order (last coordinate fastest). Each point is tested
//! against the facets in primitive integer form, so the scan runs in
//! machine integers while staying exact.

use num_bigint::BigInt;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{RatVector, Rational};
use crate::polytope::{gauge_unchecked as gauge_of, Body, HRep, HalfSpace, Polytope};

/// Largest bounding box the scanner will walk.
pub const MAX_SCAN_POINTS: u128 = 200_000_000;

/// `K ∩ Z^d` with an interior flag per point, in scan order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePointSet {
    dim: usize,
    points: Vec<Vec<i64>>,
    interior: Vec<bool>,
}

impl LatticePointSet {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[Vec<i64>] {
        &self.points
    }

    pub fn is_interior(&self, i: usize) -> bool {
        self.interior[i]
    }

    /// `G(K)`.
    pub fn count(&self) -> u64 {
        self.points.len() as u64
    }

    /// `#(int K ∩ Z^d)`.
    pub fn interior_count(&self) -> u64 {
        self.interior.iter().filter(|&&b| b).count() as u64
    }

    pub fn interior_points(&self) -> impl Iterator<Item = &Vec<i64>> {
        self.points
            .iter()
            .zip(&self.interior)
            .filter(|(_, &i)| i)
            .map(|(p, _)| p)
    }

    pub fn boundary_points(&self) -> impl Iterator<Item = &Vec<i64>> {
        self.points
            .iter()
            .zip(&self.interior)
            .filter(|(_, &i)| !i)
            .map(|(p, _)| p)
    }

    pub fn as_rational(&self) -> Vec<RatVector> {
        self.points
            .iter()
            .map(|p| RatVector::from_ints(p))
            .collect()
    }
}

impl Serialize for LatticePointSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("LatticePointSet", 3)?;
        s.serialize_field("count", &self.count())?;
        s.serialize_field("interior", &self.interior_count())?;
        s.serialize_field("points", &self.points)?;
        s.end()
    }
}

/// A facet in integer form: for integer `x`, `a·x ≤ le` means inside and
/// `a·x ≤ lt` means strictly inside.
enum Constraint {
    Int { a: Vec<i64>, le: i128, lt: i128 },
    Exact(HalfSpace),
}

impl Constraint {
    fn new(h: &HalfSpace) -> Constraint {
        let n = h.normalized();
        let a: Option<Vec<i64>> = n.normal.iter().map(Rational::to_i64).collect();
        match (a, n.offset.floor_i64(), n.offset.ceil_i64()) {
            (Some(a), Some(fl), Some(ce)) => Constraint::Int {
                a,
                le: fl as i128,
                lt: ce as i128 - 1,
            },
            _ => Constraint::Exact(n),
        }
    }

    /// `Some(strict)` when `x` satisfies the constraint.
    fn test(&self, x: &[i64]) -> Option<bool> {
        match self {
            Constraint::Int { a, le, lt } => {
                let v: i128 = a.iter().zip(x).map(|(&c, &y)| c as i128 * y as i128).sum();
                if v > *le {
                    None
                } else {
                    Some(v <= *lt)
                }
            }
            Constraint::Exact(h) => {
                let s = h.slack(&RatVector::from_ints(x));
                match s.signum() {
                    -1 => None,
                    0 => Some(false),
                    _ => Some(true),
                }
            }
        }
    }
}

fn integer_box(vertices: &[RatVector], dim: usize) -> Result<Option<(Vec<i64>, Vec<i64>)>> {
    let mut lo = Vec::with_capacity(dim);
    let mut hi = Vec::with_capacity(dim);
    for j in 0..dim {
        let min = vertices
            .iter()
            .map(|v| &v[j])
            .min()
            .expect("nonempty vertex set");
        let max = vertices
            .iter()
            .map(|v| &v[j])
            .max()
            .expect("nonempty vertex set");
        let (Some(l), Some(h)) = (min.ceil_i64(), max.floor_i64()) else {
            return Err(Error::precondition("bounding box exceeds the i64 range"));
        };
        if l > h {
            return Ok(None);
        }
        lo.push(l);
        hi.push(h);
    }
    let size: u128 = lo
        .iter()
        .zip(&hi)
        .map(|(l, h)| (h - l + 1) as u128)
        .product();
    if size > MAX_SCAN_POINTS {
        return Err(Error::precondition(format!(
            "bounding box holds {size} lattice points, above the scan limit {MAX_SCAN_POINTS}"
        )));
    }
    Ok(Some((lo, hi)))
}

/// Scan `[lo, hi]` (inclusive) for integer points of `h`.
fn scan(h: &HRep, lo: &[i64], hi: &[i64]) -> LatticePointSet {
    let dim = h.dim();
    let constraints: Vec<Constraint> = h.halfspaces().iter().map(Constraint::new).collect();
    let mut points = Vec::new();
    let mut interior = Vec::new();
    let mut x = lo.to_vec();
    'outer: loop {
        let mut inside = true;
        let mut strict = true;
        for c in &constraints {
            match c.test(&x) {
                None => {
                    inside = false;
                    break;
                }
                Some(s) => strict &= s,
            }
        }
        if inside {
            points.push(x.clone());
            interior.push(strict);
        }
        let mut j = dim;
        loop {
            if j == 0 {
                break 'outer;
            }
            j -= 1;
            if x[j] < hi[j] {
                x[j] += 1;
                x[j + 1..].copy_from_slice(&lo[j + 1..]);
                break;
            }
        }
    }
    LatticePointSet {
        dim,
        points,
        interior,
    }
}

fn scan_vertices(h: &HRep, vertices: &[RatVector]) -> Result<LatticePointSet> {
    match integer_box(vertices, h.dim())? {
        Some((lo, hi)) => Ok(scan(h, &lo, &hi)),
        None => Ok(LatticePointSet {
            dim: h.dim(),
            points: Vec::new(),
            interior: Vec::new(),
        }),
    }
}

/// `K ∩ Z^d` for a bounded halfspace system.
pub fn enumerate_lattice_points(h: &HRep) -> Result<LatticePointSet> {
    let body = Body::from_hrep(h)?;
    enumerate_body(&body)
}

/// `K ∩ Z^d` using the cached vertex and facet lists of `body`.
pub fn enumerate_body(body: &Body) -> Result<LatticePointSet> {
    scan_vertices(body.hrep(), body.vertices())
}

/// `G(K)`.
pub fn count(h: &HRep) -> Result<u64> {
    Ok(enumerate_lattice_points(h)?.count())
}

/// `#(int K ∩ Z^d)`.
pub fn count_interior(h: &HRep) -> Result<u64> {
    Ok(enumerate_lattice_points(h)?.interior_count())
}

/// First successive minimum with a lattice vector attaining it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lambda1 {
    #[serde(rename = "lambda1")]
    pub value: Rational,
    pub witness: Vec<i64>,
}

/// `λ₁(K) = min { λ > 0 : λK ∩ Z^d ≠ {0} }`.
///
/// The smallest gauge `t₀` over `±e_j` bounds `λ₁` from above, so the
/// minimum is attained inside `t₀K` and a finite scan of that body finds it.
/// The witness is the minimizer of smallest `ℓ₁` norm, ties going to the
/// lexicographically largest vector (so `e_1` wins when it is a minimizer).
pub fn lambda1(h: &HRep) -> Result<Lambda1> {
    if !h.origin_is_interior() {
        return Err(Error::precondition(
            "successive minimum requires the origin in the interior",
        ));
    }
    lambda1_body(&Body::from_hrep(h)?)
}

pub fn lambda1_body(body: &Body) -> Result<Lambda1> {
    let h = body.hrep();
    if !h.origin_is_interior() {
        return Err(Error::precondition(
            "successive minimum requires the origin in the interior",
        ));
    }
    let dim = body.dim();
    let t0 = (0..dim)
        .flat_map(|j| {
            let e = RatVector::unit(dim, j);
            [gauge_of(h, &e), gauge_of(h, &e.neg())]
        })
        .min()
        .expect("dim ≥ 1");
    let scaled: Vec<RatVector> = body.vertices().iter().map(|v| v.scale(&t0)).collect();
    let candidates = scan_vertices(&h.scaled(&t0), &scaled)?;
    let l1 = |p: &[i64]| p.iter().map(|c| c.unsigned_abs()).sum::<u64>();
    let mut best: Option<(Rational, &Vec<i64>)> = None;
    for p in candidates.points() {
        if p.iter().all(|&c| c == 0) {
            continue;
        }
        let g = gauge_of(h, &RatVector::from_ints(p));
        let better = match &best {
            None => true,
            Some((b, q)) => {
                g < *b
                    || (g == *b && (l1(p), std::cmp::Reverse(p)) < (l1(q), std::cmp::Reverse(*q)))
            }
        };
        if better {
            best = Some((g, p));
        }
    }
    let (value, witness) = best.expect("a unit vector attains t0");
    Ok(Lambda1 {
        value,
        witness: witness.clone(),
    })
}

/// Whether the translates `u + (λ₁/2)(K ∩ −K)`, `u ∈ points`, have pairwise
/// disjoint interiors.
pub fn packing_check(h: &HRep, points: &[Vec<i64>]) -> Result<bool> {
    packing_check_scaled(h, points, &Rational::new(1, 2))
}

/// As [`packing_check`] with translates `u + factor·λ₁·(K ∩ −K)`.
///
/// Since `K ∩ −K` is convex and origin-symmetric, two translates overlap in
/// their interiors iff `u − v ∈ 2·factor·λ₁·int(K ∩ −K)`, i.e. iff the gauge
/// of `u − v` with respect to `K ∩ −K` is below `2·factor·λ₁`.
pub fn packing_check_scaled(h: &HRep, points: &[Vec<i64>], factor: &Rational) -> Result<bool> {
    for (i, p) in points.iter().enumerate() {
        if p.len() != h.dim() {
            return Err(Error::DimensionMismatch {
                expected: h.dim(),
                found: p.len(),
            });
        }
        if points[..i].contains(p) {
            return Err(Error::precondition("packing points must be distinct"));
        }
    }
    let l1 = lambda1(h)?;
    let sym = h.symmetrized();
    let threshold = Rational::from_integer(2) * factor * &l1.value;
    for (i, u) in points.iter().enumerate() {
        for w in &points[i + 1..] {
            let diff: Vec<i64> = u.iter().zip(w).map(|(a, b)| a - b).collect();
            if gauge_of(&sym, &RatVector::from_ints(&diff)) < threshold {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The triangle `conv{(−m,−1), (m,−1), (0, 1/(m−1))}`: one interior lattice
/// point for every `m ≥ 2`, yet at least `2m + 1` lattice points.
pub fn unbounded_family(m: i64) -> Result<Polytope> {
    if m < 2 {
        return Err(Error::precondition("family parameter m must be at least 2"));
    }
    Polytope::new(
        2,
        vec![
            RatVector::from_ints(&[-m, -1]),
            RatVector::from_ints(&[m, -1]),
            RatVector::new(vec![Rational::zero(), Rational::new(1, m - 1)]),
        ],
    )
}

/// `⌊2/λ₁ + 1⌋^d`, the lattice-point bound for origin-symmetric bodies.
pub fn symmetric_bound(dim: usize, lambda1: &Rational) -> Result<BigInt> {
    if !lambda1.is_positive() {
        return Err(Error::precondition("lambda1 must be positive"));
    }
    let base = (Rational::from_integer(2) / lambda1 + Rational::one()).floor();
    Ok(num_traits::pow(base, dim))
}
