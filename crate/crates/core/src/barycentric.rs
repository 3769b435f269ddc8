//! Barycentric coordinates and the residue-grid covering of the standard
//! simplex `B = { x ∈ R^{d+1}_{≥0} : Σ x_i = 1 }`.
//!
//! For `ρ > 0` let `n = ⌈(d+1)/ρ⌉`. The residue grid `R_ρ` is the set of
//! points of `B` with coordinates in `(1/n)·Z`, and each residue `r` owns
//! the half-open cell `{ x : r_i ≤ x_i < r_i + 1/n, i = 1..d }`. The cells
//! cover `B` and are pairwise disjoint; [`cell_of`] picks the owner.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{binomial, RatMatrix, RatVector, Rational};
use crate::lattice::lambda1_body;
use crate::polytope::{Body, Simplex};

/// Affine coordinates summing to one.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct BaryCoords(RatVector);

impl BaryCoords {
    pub fn new(coords: RatVector) -> Result<Self> {
        if coords.iter().sum::<Rational>() != Rational::one() {
            return Err(Error::precondition("barycentric coordinates must sum to 1"));
        }
        Ok(BaryCoords(coords))
    }

    pub fn coords(&self) -> &RatVector {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.dim()
    }

    pub fn is_empty(&self) -> bool {
        self.0.dim() == 0
    }

    /// Member of `B`: every coordinate nonnegative.
    pub fn in_standard_simplex(&self) -> bool {
        self.0.iter().all(|x| !x.is_negative())
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.0.iter().all(Rational::is_positive)
    }
}

/// Precomputed inverse of the affine system of a simplex, so that
/// `β(x) = M⁻¹ (x, 1)`.
#[derive(Clone, Debug)]
pub struct BarycentricFrame {
    simplex: Simplex,
    inverse: RatMatrix,
}

impl BarycentricFrame {
    pub fn new(s: &Simplex) -> Result<Self> {
        let d = s.dim();
        let cols: Vec<RatVector> = s
            .vertices()
            .iter()
            .map(|v| {
                let mut c = v.entries().to_vec();
                c.push(Rational::one());
                RatVector::new(c)
            })
            .collect();
        let m = RatMatrix::from_cols(&cols)?;
        let inverse = m.inverse()?.ok_or_else(|| {
            Error::degenerate(format!("{d}-simplex has affinely dependent vertices"))
        })?;
        Ok(BarycentricFrame {
            simplex: s.clone(),
            inverse,
        })
    }

    pub fn simplex(&self) -> &Simplex {
        &self.simplex
    }

    pub fn coords(&self, x: &RatVector) -> Result<BaryCoords> {
        let d = self.simplex.dim();
        if x.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: x.dim(),
            });
        }
        let mut rhs = x.entries().to_vec();
        rhs.push(Rational::one());
        Ok(BaryCoords(self.inverse.mul_vec(&RatVector::new(rhs))?))
    }

    pub fn point(&self, b: &BaryCoords) -> Result<RatVector> {
        point_of_bary(&self.simplex, b)
    }
}

/// `β_S(x)`: the unique weights with `Σ β_i v_i = x` and `Σ β_i = 1`.
pub fn bary_of_point(s: &Simplex, x: &RatVector) -> Result<BaryCoords> {
    BarycentricFrame::new(s)?.coords(x)
}

/// `Σ β_i v_i`.
pub fn point_of_bary(s: &Simplex, b: &BaryCoords) -> Result<RatVector> {
    if b.len() != s.dim() + 1 {
        return Err(Error::DimensionMismatch {
            expected: s.dim() + 1,
            found: b.len(),
        });
    }
    let mut x = RatVector::zeros(s.dim());
    for (w, v) in b.coords().iter().zip(s.vertices()) {
        x = x.add(&v.scale(w));
    }
    Ok(x)
}

/// `n(ρ) = ⌈(d+1)/ρ⌉`.
pub fn n_of_rho(d: usize, rho: &Rational) -> Result<u64> {
    if !rho.is_positive() {
        return Err(Error::precondition("rho must be positive"));
    }
    let q = Rational::from_integer(d as i64 + 1) / rho;
    q.ceil_i64()
        .and_then(|n| u64::try_from(n).ok())
        .ok_or_else(|| Error::precondition("n(rho) does not fit in 64 bits"))
}

/// The residue grid `R_ρ` together with its parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoveringGrid {
    pub d: usize,
    pub rho: Rational,
    pub n: u64,
    /// Sorted lexicographically.
    pub residues: Vec<BaryCoords>,
}

impl CoveringGrid {
    pub fn contains(&self, r: &BaryCoords) -> bool {
        self.residues.binary_search(r).is_ok()
    }

    /// `C(d + n, d)`.
    pub fn expected_size(&self) -> num_bigint::BigInt {
        binomial(self.d as u64 + self.n, self.d as u64)
    }
}

fn compositions(total: u64, parts: usize, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    if parts == 1 {
        prefix.push(total);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    for first in 0..=total {
        prefix.push(first);
        compositions(total - first, parts - 1, prefix, out);
        prefix.pop();
    }
}

/// Upper limit on `|R_ρ|` that [`build_grid`] will materialize.
pub const MAX_GRID_SIZE: u64 = 5_000_000;

/// All compositions of `n(ρ)` into `d + 1` nonnegative parts, scaled by `1/n`.
pub fn build_grid(d: usize, rho: &Rational) -> Result<CoveringGrid> {
    let n = n_of_rho(d, rho)?;
    let size = binomial(d as u64 + n, d as u64);
    if size > num_bigint::BigInt::from(MAX_GRID_SIZE) {
        return Err(Error::precondition(format!(
            "grid would hold {size} residues (limit {MAX_GRID_SIZE})"
        )));
    }
    let mut raw = Vec::new();
    compositions(n, d + 1, &mut Vec::with_capacity(d + 1), &mut raw);
    let scale = Rational::new(1, n as i64);
    let residues = raw
        .into_iter()
        .map(|a| {
            BaryCoords(RatVector::new(
                a.into_iter()
                    .map(|k| Rational::from_integer(k as i64) * &scale)
                    .collect(),
            ))
        })
        .collect();
    Ok(CoveringGrid {
        d,
        rho: rho.clone(),
        n,
        residues,
    })
}

/// The residue whose cell contains `b`: `r_i = ⌊n b_i⌋/n` for `i ≤ d` and
/// `r_{d+1} = 1 − Σ_{i≤d} r_i`.
pub fn cell_of(b: &BaryCoords, grid: &CoveringGrid) -> Result<BaryCoords> {
    if b.len() != grid.d + 1 {
        return Err(Error::DimensionMismatch {
            expected: grid.d + 1,
            found: b.len(),
        });
    }
    residue(b, grid.n)
}

/// [`cell_of`] without materializing the grid.
pub fn residue(b: &BaryCoords, n: u64) -> Result<BaryCoords> {
    if !b.in_standard_simplex() {
        return Err(Error::precondition(
            "cell_of requires nonnegative barycentric coordinates",
        ));
    }
    let d = b.len() - 1;
    let n = Rational::from_integer(n as i64);
    let mut r: Vec<Rational> = b.coords()[..d]
        .iter()
        .map(|x| Rational::from_bigint((x * &n).floor()) / &n)
        .collect();
    let head: Rational = r.iter().sum();
    r.push(Rational::one() - head);
    Ok(BaryCoords(RatVector::new(r)))
}

/// `0 ≤ b_i − r_i < 1/n` for the first `d` coordinates.
pub fn in_cell(b: &BaryCoords, r: &BaryCoords, n: u64) -> bool {
    let width = Rational::new(1, n as i64);
    let d = b.len() - 1;
    b.coords()[..d].iter().zip(&r.coords()[..d]).all(|(x, y)| {
        let diff = x - y;
        !diff.is_negative() && diff < width
    })
}

/// A coordinate on which two barycentric vectors are far apart.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Separation {
    /// Zero-based vertex index maximizing `β(u)_k − β(w)_k`.
    pub index: usize,
    pub value: Rational,
    /// `λ₁/(d+1)`.
    pub threshold: Rational,
    pub holds: bool,
}

/// Largest coordinate gap `β(u)_k − β(w)_k`, lowest index on ties, compared
/// against `λ₁/(d+1)`.
pub fn separation(beta_u: &BaryCoords, beta_w: &BaryCoords, lambda1: &Rational) -> Separation {
    let d = beta_u.len() - 1;
    let mut index = 0;
    let mut value: Option<Rational> = None;
    for (k, (a, b)) in beta_u
        .coords()
        .iter()
        .zip(beta_w.coords().iter())
        .enumerate()
    {
        let diff = a - b;
        if value.as_ref().is_none_or(|v| diff > *v) {
            index = k;
            value = Some(diff);
        }
    }
    let value = value.expect("nonempty coordinates");
    let threshold = lambda1 / Rational::from_integer(d as i64 + 1);
    Separation {
        index,
        holds: value >= threshold,
        value,
        threshold,
    }
}

/// For distinct lattice points `u, w` of a centroid-zero simplex, an index
/// `k` with `β(u)_k − β(w)_k ≥ λ₁(S)/(d+1)`.
pub fn lemma1_separation(s: &Simplex, u: &[i64], w: &[i64]) -> Result<Separation> {
    if !s.is_centered() {
        return Err(Error::precondition("simplex centroid must be the origin"));
    }
    if u == w {
        return Err(Error::precondition("lattice points must be distinct"));
    }
    let frame = BarycentricFrame::new(s)?;
    let bu = frame.coords(&RatVector::from_ints(u))?;
    let bw = frame.coords(&RatVector::from_ints(w))?;
    if !bu.in_standard_simplex() || !bw.in_standard_simplex() {
        return Err(Error::precondition("both points must lie in the simplex"));
    }
    let l1 = lambda1_body(&Body::from_simplex(s))?;
    Ok(separation(&bu, &bw, &l1.value))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{frac, int};
    use proptest::prelude::*;

    fn bc(v: &[Rational]) -> BaryCoords {
        BaryCoords::new(RatVector::new(v.to_vec())).unwrap()
    }

    #[test]
    fn bary_examples() {
        let s = Simplex::ehrhart(2);
        let third = frac(1, 3);
        assert_eq!(
            bary_of_point(&s, &RatVector::from_ints(&[0, 0])).unwrap(),
            bc(&[third.clone(), third.clone(), third.clone()])
        );
        assert_eq!(
            bary_of_point(&s, &RatVector::from_ints(&[2, -1])).unwrap(),
            bc(&[int(0), int(1), int(0)])
        );
        // (1,0) = 2/3·(2,-1) + 1/3·(-1,2)
        assert_eq!(
            bary_of_point(&s, &RatVector::from_ints(&[1, 0])).unwrap(),
            bc(&[int(0), frac(2, 3), frac(1, 3)])
        );
        assert!(bary_of_point(&s, &RatVector::from_ints(&[1])).is_err());
    }

    #[test]
    fn point_of_bary_examples() {
        let s = Simplex::ehrhart(2);
        let third = frac(1, 3);
        assert!(
            point_of_bary(&s, &bc(&[third.clone(), third.clone(), third]))
                .unwrap()
                .is_zero()
        );
        assert_eq!(
            point_of_bary(&s, &bc(&[int(0), int(1), int(0)])).unwrap(),
            RatVector::from_ints(&[2, -1])
        );
        assert!(BaryCoords::new(RatVector::from_ints(&[1, 1])).is_err());
    }

    #[test]
    fn n_of_rho_examples() {
        assert_eq!(n_of_rho(2, &int(1)).unwrap(), 3);
        assert_eq!(n_of_rho(2, &frac(1, 2)).unwrap(), 6);
        assert_eq!(n_of_rho(3, &frac(2, 3)).unwrap(), 6);
        assert!(n_of_rho(2, &int(0)).is_err());
        assert!(n_of_rho(2, &int(-1)).is_err());
    }

    #[test]
    fn grid_examples() {
        let g = build_grid(2, &int(1)).unwrap();
        assert_eq!(g.residues.len(), 10);
        let g1 = build_grid(1, &int(1)).unwrap();
        assert_eq!(g1.n, 2);
        assert_eq!(
            g1.residues,
            vec![
                bc(&[int(0), int(1)]),
                bc(&[frac(1, 2), frac(1, 2)]),
                bc(&[int(1), int(0)]),
            ]
        );
        assert_eq!(build_grid(3, &int(1)).unwrap().residues.len(), 35);
        for (d, rho) in [(2, frac(1, 2)), (4, frac(2, 3)), (4, frac(1, 2))] {
            let g = build_grid(d, &rho).unwrap();
            assert_eq!(
                num_bigint::BigInt::from(g.residues.len()),
                g.expected_size()
            );
            assert!(g.residues.windows(2).all(|w| w[0] < w[1]));
            assert!(g.residues.iter().all(BaryCoords::in_standard_simplex));
        }
    }

    #[test]
    fn cell_examples() {
        let g = build_grid(2, &int(1)).unwrap();
        let b = bc(&[frac(2, 5), frac(7, 20), frac(1, 4)]);
        let third = frac(1, 3);
        let r = cell_of(&b, &g).unwrap();
        assert_eq!(r, bc(&[third.clone(), third.clone(), third]));
        assert!(in_cell(&b, &r, g.n));
        for res in &g.residues {
            assert_eq!(&cell_of(res, &g).unwrap(), res);
        }
        let vertex = bc(&[int(1), int(0), int(0)]);
        assert_eq!(cell_of(&vertex, &g).unwrap(), vertex);
        let neg = bc(&[int(2), int(-1), int(0)]);
        assert!(cell_of(&neg, &g).is_err());
    }

    #[test]
    fn separation_examples() {
        let s = Simplex::ehrhart(2);
        let a = lemma1_separation(&s, &[1, 0], &[0, 0]).unwrap();
        assert_eq!((a.index, a.value.clone(), a.holds), (1, frac(1, 3), true));
        assert_eq!(a.threshold, frac(1, 3));
        let b = lemma1_separation(&s, &[0, 0], &[1, 0]).unwrap();
        assert_eq!((b.index, b.value), (0, frac(1, 3)));
        let c = lemma1_separation(&s, &[2, -1], &[-1, -1]).unwrap();
        assert_eq!((c.index, c.value), (1, int(1)));
    }

    #[test]
    fn separation_errors() {
        let s = Simplex::ehrhart(2);
        assert!(matches!(
            lemma1_separation(&s, &[0, 0], &[0, 0]),
            Err(Error::Precondition(_))
        ));
        let off = s.translate(&RatVector::from_ints(&[1, 0]));
        assert!(matches!(
            lemma1_separation(&off, &[0, 0], &[1, 0]),
            Err(Error::Precondition(_))
        ));
        assert!(lemma1_separation(&s, &[5, 5], &[0, 0]).is_err());
    }

    fn point_of_b(d: usize) -> impl Strategy<Value = BaryCoords> {
        prop::collection::vec(0i64..=60, d + 1)
            .prop_filter("nonzero", |w| w.iter().any(|&x| x > 0))
            .prop_map(|w| {
                let total: i64 = w.iter().sum();
                BaryCoords(RatVector::new(
                    w.into_iter().map(|x| frac(x, total)).collect(),
                ))
            })
    }

    proptest! {
        #[test]
        fn bary_roundtrip(b in point_of_b(2)) {
            let s = Simplex::ehrhart(2).translate(&RatVector::from_ints(&[1, -2]));
            let x = point_of_bary(&s, &b).unwrap();
            prop_assert_eq!(bary_of_point(&s, &x).unwrap(), b);
        }

        #[test]
        fn bary_is_affine(x in prop::collection::vec(-9i64..=9, 2), y in prop::collection::vec(-9i64..=9, 2), mu in -4i64..=4, la in -4i64..=4) {
            let s = Simplex::ehrhart(2);
            let f = BarycentricFrame::new(&s).unwrap();
            let (x, y) = (RatVector::from_ints(&x), RatVector::from_ints(&y));
            let (mu, la) = (int(mu), int(la));
            let lhs = f.coords(&x.scale(&mu).add(&y.scale(&la))).unwrap();
            let b0 = f.coords(&RatVector::zeros(2)).unwrap();
            let rest = int(1) - &mu - &la;
            let rhs = f.coords(&x).unwrap().coords().scale(&mu)
                .add(&f.coords(&y).unwrap().coords().scale(&la))
                .add(&b0.coords().scale(&rest));
            prop_assert_eq!(lhs.coords(), &rhs);
        }

        #[test]
        fn cells_cover_and_are_unique(b in point_of_b(3), rho_idx in 0usize..3) {
            let rho = [int(1), frac(1, 2), frac(2, 3)][rho_idx].clone();
            let g = build_grid(3, &rho).unwrap();
            let r = cell_of(&b, &g).unwrap();
            prop_assert!(g.contains(&r));
            prop_assert!(in_cell(&b, &r, g.n));
            let owners = g.residues.iter().filter(|res| in_cell(&b, res, g.n)).count();
            prop_assert_eq!(owners, 1);
        }
    }
}
