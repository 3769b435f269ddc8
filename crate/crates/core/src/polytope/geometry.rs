//! Small exact kernels shared by the conversion and measurement code.

use itertools::Itertools;

use crate::exact::{RatMatrix, RatVector, Rational};

/// Determinant by cofactor expansion; intended for matrices of order ≤ 4.
pub(crate) fn small_det(rows: &[Vec<Rational>]) -> Rational {
    match rows.len() {
        0 => Rational::one(),
        1 => rows[0][0].clone(),
        2 => &rows[0][0] * &rows[1][1] - &rows[0][1] * &rows[1][0],
        3 => {
            let m = rows;
            let a = &m[1][1] * &m[2][2] - &m[1][2] * &m[2][1];
            let b = &m[1][0] * &m[2][2] - &m[1][2] * &m[2][0];
            let c = &m[1][0] * &m[2][1] - &m[1][1] * &m[2][0];
            &m[0][0] * a - &m[0][1] * b + &m[0][2] * c
        }
        n => {
            let mut acc = Rational::zero();
            for j in 0..n {
                if rows[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Rational>> = rows[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|&(k, _)| k != j)
                            .map(|(_, x)| x.clone())
                            .collect()
                    })
                    .collect();
                let term = &rows[0][j] * small_det(&minor);
                if j % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        }
    }
}

/// Determinant of the edge matrix `[p_1 - p_0, ..., p_d - p_0]`.
pub(crate) fn edge_det(points: &[&RatVector]) -> Rational {
    let base = points[0];
    let rows: Vec<Vec<Rational>> = points[1..]
        .iter()
        .map(|p| p.sub(base).into_inner())
        .collect();
    small_det(&rows)
}

/// Normal of the hyperplane through `d` points of `R^d` (generalized cross
/// product of the difference vectors); `None` if the points are affinely
/// dependent.
pub(crate) fn hyperplane_normal(dim: usize, points: &[&RatVector]) -> Option<RatVector> {
    debug_assert_eq!(points.len(), dim);
    let base = points[0];
    let diffs: Vec<RatVector> = points[1..].iter().map(|p| p.sub(base)).collect();
    let mut normal = Vec::with_capacity(dim);
    for j in 0..dim {
        let minor: Vec<Vec<Rational>> = diffs
            .iter()
            .map(|d| {
                d.iter()
                    .enumerate()
                    .filter(|&(k, _)| k != j)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let c = small_det(&minor);
        normal.push(if j % 2 == 0 { c } else { -c });
    }
    let normal = RatVector::new(normal);
    if normal.is_zero() {
        None
    } else {
        Some(normal)
    }
}

/// Dimension of the affine hull of `points` (`-1` encoded as `None` for an
/// empty set).
pub(crate) fn affine_rank(points: &[&RatVector]) -> Option<usize> {
    let (first, rest) = points.split_first()?;
    if rest.is_empty() {
        return Some(0);
    }
    let rows: Vec<RatVector> = rest.iter().map(|p| p.sub(first)).collect();
    Some(RatMatrix::from_rows(&rows).expect("equal lengths").rank())
}

/// Linear rank of a set of vectors.
pub(crate) fn linear_rank(vectors: &[&RatVector]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let rows: Vec<RatVector> = vectors.iter().map(|v| (*v).clone()).collect();
    RatMatrix::from_rows(&rows).expect("equal lengths").rank()
}

pub(crate) fn factorial(n: usize) -> Rational {
    (1..=n as i64).fold(Rational::one(), |acc, k| acc * Rational::from_integer(k))
}

/// Solve the square system whose rows are `normals` with right-hand side
/// `offsets`; `None` when singular.
pub(crate) fn intersect_hyperplanes(
    normals: &[&RatVector],
    offsets: &[&Rational],
) -> Option<RatVector> {
    let rows: Vec<RatVector> = normals.iter().map(|v| (*v).clone()).collect();
    let m = RatMatrix::from_rows(&rows).ok()?;
    let b = RatVector::new(offsets.iter().map(|x| (*x).clone()).collect());
    m.solve(&b).ok().flatten()
}

/// Sorted, deduplicated copy.
pub(crate) fn dedup_sorted(points: impl IntoIterator<Item = RatVector>) -> Vec<RatVector> {
    points.into_iter().sorted().dedup().collect()
}
