//! Brute-force convex hull machinery for small, full-dimensional point sets:
//! facet enumeration, lattice-normalized volume and a pulling triangulation.
//!
//! All routines enumerate `d`-subsets of the input, so they are meant for
//! desk-scale inputs (a few dozen points in dimension at most five).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exactlin::{
    bareiss_determinant, coordinates_in_span, int_to_rat, kernel_lattice_basis, nullspace, rref,
    HyperplaneChart, LinAlgError, Rational, RationalVector,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HullError {
    #[error("points span an affine space of dimension {found}, expected {expected}")]
    DegenerateInput { expected: usize, found: usize },
    #[error("point has {found} coordinates, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("no points given")]
    Empty,
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

/// A facet `{x : <x, normal> = offset}` of a polytope lying in `<x, normal> >= offset`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    /// Primitive integer inner normal.
    pub normal: Vec<BigInt>,
    pub offset: Rational,
    /// Indices of the input points lying on the facet.
    pub members: Vec<usize>,
}

impl Facet {
    pub fn height(&self, p: &[Rational]) -> Rational {
        dot_int(p, &self.normal) - &self.offset
    }
}

fn dot_int(p: &[Rational], v: &[BigInt]) -> Rational {
    let mut acc = Rational::zero();
    for (x, y) in p.iter().zip(v) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * int_to_rat(y);
        }
    }
    acc
}

fn check_lengths(points: &[Vec<Rational>]) -> Result<usize, HullError> {
    let d = points.first().ok_or(HullError::Empty)?.len();
    for p in points {
        if p.len() != d {
            return Err(HullError::DimensionMismatch {
                expected: d,
                found: p.len(),
            });
        }
    }
    Ok(d)
}

/// Dimension of the affine hull.
pub fn affine_rank(points: &[Vec<Rational>]) -> usize {
    let Some(first) = points.first() else {
        return 0;
    };
    let mut diffs: Vec<Vec<Rational>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(first).map(|(a, b)| a - b).collect())
        .collect();
    rref(&mut diffs, first.len()).len()
}

/// Calls `f` on every `k`-subset of `0..n` in lexicographic order.
pub(crate) fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let mut i = k;
        while i > 0 && idx[i - 1] == i - 1 + n - k {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Facets of the convex hull of a full-dimensional point set in `Q^d`.
///
/// Facets are reported in order of their lexicographically first spanning
/// `d`-subset.
pub fn facets(points: &[Vec<Rational>]) -> Result<Vec<Facet>, HullError> {
    let d = check_lengths(points)?;
    let rank = affine_rank(points);
    if rank != d {
        return Err(HullError::DegenerateInput {
            expected: d,
            found: rank,
        });
    }
    let mut out: Vec<Facet> = Vec::new();
    for_each_subset(points.len(), d, |subset| {
        if out
            .iter()
            .any(|f| subset.iter().all(|i| f.members.contains(i)))
        {
            return;
        }
        let p0 = &points[subset[0]];
        let diffs: Vec<Vec<Rational>> = subset[1..]
            .iter()
            .map(|&i| points[i].iter().zip(p0).map(|(a, b)| a - b).collect())
            .collect();
        let ns = nullspace(&diffs, d);
        if ns.len() != 1 {
            return;
        }
        let mut normal = ns[0]
            .primitive_integer()
            .expect("nullspace basis vectors are nonzero");
        let c = dot_int(p0, &normal);
        let mut above = false;
        let mut below = false;
        for p in points {
            let h = dot_int(p, &normal) - &c;
            if h.is_positive() {
                above = true;
            } else if h.is_negative() {
                below = true;
            }
        }
        if above && below {
            return;
        }
        let offset = if below {
            normal = normal.into_iter().map(|x| -x).collect();
            -c
        } else {
            c
        };
        let members = points
            .iter()
            .enumerate()
            .filter(|(_, p)| dot_int(p, &normal) == offset)
            .map(|(i, _)| i)
            .collect();
        out.push(Facet {
            normal,
            offset,
            members,
        });
    });
    Ok(out)
}

fn dedup_points(points: &[Vec<Rational>]) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut uniq: Vec<Vec<Rational>> = Vec::new();
    let mut origin = Vec::new();
    for (i, p) in points.iter().enumerate() {
        if !uniq.contains(p) {
            uniq.push(p.clone());
            origin.push(i);
        }
    }
    (uniq, origin)
}

/// Points of a facet expressed in lattice coordinates of its hyperplane.
fn facet_chart_points(points: &[Vec<Rational>], facet: &Facet) -> Result<Vec<Vec<Rational>>, HullError> {
    let chart = HyperplaneChart::new(&facet.normal)?;
    let g0 = &points[facet.members[0]];
    Ok(facet
        .members
        .iter()
        .map(|&i| {
            let diff: Vec<Rational> = points[i].iter().zip(g0).map(|(a, b)| a - b).collect();
            chart.coordinates(&diff)
        })
        .collect())
}

/// Lattice-normalized volume of a full-dimensional point set in `Q^d`
/// (the unit simplex has volume 1), computed as a sum of pyramids over the
/// facets not containing a base point: `Σ_G dist(b, G) · vol(G)`.
pub fn lattice_volume_full(points: &[Vec<Rational>]) -> Result<Rational, HullError> {
    let d = check_lengths(points)?;
    let (pts, _) = dedup_points(points);
    match d {
        0 => return Ok(Rational::one()),
        1 => {
            let min = pts.iter().map(|p| &p[0]).min().unwrap();
            let max = pts.iter().map(|p| &p[0]).max().unwrap();
            if min == max {
                return Err(HullError::DegenerateInput {
                    expected: 1,
                    found: 0,
                });
            }
            return Ok(max - min);
        }
        _ => {}
    }
    let fs = facets(&pts)?;
    let base = &pts[0];
    let mut vol = Rational::zero();
    for f in &fs {
        let h = f.height(base);
        if h.is_zero() {
            continue;
        }
        let sub = facet_chart_points(&pts, f)?;
        vol += h * lattice_volume_full(&sub)?;
    }
    Ok(vol)
}

/// Pulling triangulation of a full-dimensional point set. Each simplex is a
/// list of `d + 1` indices into `points`.
pub fn triangulate_full(points: &[Vec<Rational>]) -> Result<Vec<Vec<usize>>, HullError> {
    let d = check_lengths(points)?;
    let (pts, origin) = dedup_points(points);
    let local = triangulate_unique(&pts, d)?;
    Ok(local
        .into_iter()
        .map(|s| s.into_iter().map(|i| origin[i]).collect())
        .collect())
}

fn triangulate_unique(pts: &[Vec<Rational>], d: usize) -> Result<Vec<Vec<usize>>, HullError> {
    match d {
        0 => return Ok(vec![vec![0]]),
        1 => {
            let lo = (0..pts.len()).min_by(|&a, &b| pts[a][0].cmp(&pts[b][0])).unwrap();
            let hi = (0..pts.len()).max_by(|&a, &b| pts[a][0].cmp(&pts[b][0])).unwrap();
            if lo == hi || pts[lo][0] == pts[hi][0] {
                return Err(HullError::DegenerateInput {
                    expected: 1,
                    found: 0,
                });
            }
            return Ok(vec![vec![lo, hi]]);
        }
        _ => {}
    }
    let fs = facets(pts)?;
    let mut out = Vec::new();
    for f in &fs {
        if f.height(&pts[0]).is_zero() {
            continue;
        }
        let sub = facet_chart_points(pts, f)?;
        for simplex in triangulate_unique(&sub, d - 1)? {
            let mut s = vec![0];
            s.extend(simplex.into_iter().map(|i| f.members[i]));
            out.push(s);
        }
    }
    Ok(out)
}

/// Normalized volume `|det(p_1 - p_0, …, p_d - p_0)|` of a full-dimensional simplex.
pub fn simplex_volume(vertices: &[&Vec<Rational>]) -> Rational {
    let p0 = vertices[0];
    let rows: Vec<Vec<Rational>> = vertices[1..]
        .iter()
        .map(|p| p.iter().zip(p0).map(|(a, b)| a - b).collect())
        .collect();
    rational_determinant(rows).abs()
}

fn rational_determinant(rows: Vec<Vec<Rational>>) -> Rational {
    let l = rows
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let n = rows.len();
    let ints: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|x| (x * int_to_rat(&l)).to_integer()).collect())
        .collect();
    let det = bareiss_determinant(ints);
    Rational::new(det, num_traits::pow(l, n))
}

/// Normalized lattice volume of the convex hull of `points`, which must span
/// a `d`-dimensional affine subspace of `Q^m`. The volume is measured in the
/// lattice `(affine span direction) ∩ Z^m`; rational inputs are handled by
/// scaling to integer points and dividing by the `d`-th power of the scale.
pub fn normalized_volume(points: &[RationalVector], d: usize) -> Result<Rational, HullError> {
    let raw: Vec<Vec<Rational>> = points.iter().map(|p| p.0.clone()).collect();
    let m = check_lengths(&raw)?;
    let rank = affine_rank(&raw);
    if rank != d {
        return Err(HullError::DegenerateInput {
            expected: d,
            found: rank,
        });
    }
    let scale = raw
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let scale_q = int_to_rat(&scale);
    let scaled: Vec<Vec<Rational>> = raw
        .iter()
        .map(|p| p.iter().map(|x| x * &scale_q).collect())
        .collect();
    let local = if d == m {
        scaled
    } else {
        let p0 = scaled[0].clone();
        let diffs: Vec<Vec<Rational>> = scaled
            .iter()
            .map(|p| p.iter().zip(&p0).map(|(a, b)| a - b).collect())
            .collect();
        let complement: Vec<Vec<BigInt>> = nullspace(&diffs, m)
            .iter()
            .map(|v| v.primitive_integer().expect("nonzero nullspace vector"))
            .collect();
        let lattice = kernel_lattice_basis(m, &complement)?;
        let basis: Vec<Vec<Rational>> = lattice
            .rows()
            .iter()
            .map(|r| r.iter().map(int_to_rat).collect())
            .collect();
        diffs
            .iter()
            .map(|x| coordinates_in_span(&basis, x).expect("difference lies in the direction space"))
            .collect()
    };
    let vol = lattice_volume_full(&local)?;
    Ok(vol / num_traits::pow(scale_q, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{frac, rat};

    fn pts(xs: &[&[i64]]) -> Vec<Vec<Rational>> {
        xs.iter().map(|p| p.iter().map(|&x| rat(x)).collect()).collect()
    }

    fn rvs(xs: &[&[i64]]) -> Vec<RationalVector> {
        xs.iter().map(|p| RationalVector::from_ints(p)).collect()
    }

    fn triangulated_volume(points: &[Vec<Rational>]) -> Rational {
        triangulate_full(points)
            .unwrap()
            .iter()
            .map(|s| simplex_volume(&s.iter().map(|&i| &points[i]).collect::<Vec<_>>()))
            .sum()
    }

    #[test]
    fn subsets_in_order() {
        let mut seen = Vec::new();
        for_each_subset(4, 2, |s| seen.push(s.to_vec()));
        assert_eq!(
            seen,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        let mut count = 0;
        for_each_subset(3, 0, |_| count += 1);
        assert_eq!(count, 1);
    }

    #[test]
    fn square_facets_and_volume() {
        let sq = pts(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        let fs = facets(&sq).unwrap();
        assert_eq!(fs.len(), 4);
        assert_eq!(lattice_volume_full(&sq).unwrap(), rat(2));
        assert_eq!(triangulated_volume(&sq), rat(2));
    }

    #[test]
    fn dilated_triangle() {
        let t = rvs(&[&[0, 0], &[3, 0], &[0, 3]]);
        assert_eq!(normalized_volume(&t, 2).unwrap(), rat(9));
    }

    #[test]
    fn cayley_trapezoid() {
        // 2Δ1 at height 0 and 3Δ1 at height 1.
        let t = rvs(&[&[0, 0], &[2, 0], &[0, 1], &[3, 1]]);
        assert_eq!(normalized_volume(&t, 2).unwrap(), rat(5));
    }

    #[test]
    fn lower_dimensional_input() {
        // The triangle conv{e1, e2, e3} has normalized volume 1 in its plane.
        let t = rvs(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(normalized_volume(&t, 2).unwrap(), rat(1));
        // A segment of lattice length 2 along (1, 1).
        let s = rvs(&[&[0, 0], &[2, 2]]);
        assert_eq!(normalized_volume(&s, 1).unwrap(), rat(2));
        assert!(matches!(
            normalized_volume(&s, 2),
            Err(HullError::DegenerateInput { .. })
        ));
    }

    #[test]
    fn rational_square() {
        let half = frac(1, 2);
        let sq = vec![
            RationalVector(vec![rat(0), rat(0)]),
            RationalVector(vec![half.clone(), rat(0)]),
            RationalVector(vec![rat(0), half.clone()]),
            RationalVector(vec![half.clone(), half]),
        ];
        assert_eq!(normalized_volume(&sq, 2).unwrap(), frac(1, 2));
    }

    #[test]
    fn cube_and_interior_points() {
        let mut cube = Vec::new();
        for x in 0..2 {
            for y in 0..2 {
                for z in 0..2 {
                    cube.push(vec![rat(x), rat(y), rat(z)]);
                }
            }
        }
        cube.push(vec![frac(1, 2), frac(1, 2), frac(1, 2)]);
        assert_eq!(facets(&cube).unwrap().len(), 6);
        assert_eq!(lattice_volume_full(&cube).unwrap(), rat(6));
        assert_eq!(triangulated_volume(&cube), rat(6));
    }
}
