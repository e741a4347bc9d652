//! Slope (semi)stability of the tangent bundle against ray-spanned
//! subspaces, plus grid scans over divisor slices and perturbation boxes.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::exactlin::{canonical_span_int, rref, Rational, SubspaceBasis};
use crate::fan::{ample_violation, is_ample, Divisor, Fan, FanError};
use crate::polytope::{vertices, FacetVolumeTable, Polytope, PolytopeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StabilityError {
    #[error("divisor is not ample: cone {cone} violates strict convexity at ray {ray}")]
    NotAmple { cone: usize, ray: usize },
    #[error("candidate enumeration exceeded the cap of {0} subspaces")]
    TooManyCandidates(usize),
    #[error("no ample divisor in the search box")]
    NoAmplePointInBox,
    #[error("search box has {points} points, cap is {cap}")]
    BoxTooLarge { points: u128, cap: u128 },
    #[error("slice directions must be linearly independent and match the number of rays")]
    DegenerateSlice,
    #[error("grid size must be positive")]
    EmptyGrid,
    #[error(transparent)]
    Fan(#[from] FanError),
    #[error(transparent)]
    Polytope(PolytopeError),
}

impl From<PolytopeError> for StabilityError {
    fn from(e: PolytopeError) -> Self {
        match e {
            PolytopeError::NotAmple { cone, ray } => StabilityError::NotAmple { cone, ray },
            PolytopeError::Fan(f) => StabilityError::Fan(f),
            other => StabilityError::Polytope(other),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StabilityStatus {
    Stable,
    SemistableNotStable,
    Unstable,
}

impl StabilityStatus {
    pub fn from_margin(m: &Rational) -> Self {
        if m.is_positive() {
            StabilityStatus::Stable
        } else if m.is_zero() {
            StabilityStatus::SemistableNotStable
        } else {
            StabilityStatus::Unstable
        }
    }

    pub fn is_semistable(self) -> bool {
        self != StabilityStatus::Unstable
    }
}

impl fmt::Display for StabilityStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StabilityStatus::Stable => "Stable",
            StabilityStatus::SemistableNotStable => "SemistableNotStable",
            StabilityStatus::Unstable => "Unstable",
        })
    }
}

/// A proper subspace spanned by rays, together with every ray it contains.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CandidateSubspace {
    pub basis: SubspaceBasis,
    pub rays_in: Vec<usize>,
}

impl CandidateSubspace {
    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    /// `rays_in` rendered as `0;2;5`.
    pub fn ray_label(&self) -> String {
        ray_label(&self.rays_in)
    }
}

pub fn ray_label(rays: &[usize]) -> String {
    rays.iter().map(ToString::to_string).collect::<Vec<_>>().join(";")
}

/// Left side `(1/dim F) Σ_{v_ρ ∈ F} vol(P^ρ)` and margin `rhs - lhs` of one candidate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateEvaluation {
    pub candidate: usize,
    pub lhs: Rational,
    pub margin: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub subspace: SubspaceBasis,
    pub rays: Vec<usize>,
    pub lhs: Rational,
    pub rhs: Rational,
}

impl Witness {
    pub fn margin(&self) -> Rational {
        &self.rhs - &self.lhs
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityVerdict {
    pub status: StabilityStatus,
    /// Minimum of `rhs - lhs` over all candidates.
    pub margin: Rational,
    /// Candidates with `lhs >= rhs`, sorted by margin, then by ray set.
    pub witnesses: Vec<Witness>,
    /// `(1/n) vol ∂P`.
    pub rhs: Rational,
    pub volumes: FacetVolumeTable,
    /// One entry per candidate, in candidate order.
    pub evaluations: Vec<CandidateEvaluation>,
}

/// Default cap on the number of subspaces visited during candidate enumeration.
pub const DEFAULT_CANDIDATE_CAP: usize = 1 << 20;

pub fn enumerate_candidates(fan: &Fan) -> Result<Vec<CandidateSubspace>, StabilityError> {
    enumerate_candidates_with_cap(fan, DEFAULT_CANDIDATE_CAP)
}

/// All proper subspaces spanned by rays, each closed under the rays it
/// contains, sorted by dimension and then ray set.
///
/// Subspaces are grown one ray at a time from single rays, so every span of
/// at most `n - 1` rays with dimension below `n` is reached through a chain
/// of such closures.
pub fn enumerate_candidates_with_cap(fan: &Fan, cap: usize) -> Result<Vec<CandidateSubspace>, StabilityError> {
    let n = fan.dim();
    let closure = |rays: &[usize]| -> CandidateSubspace {
        let vs: Vec<&[_]> = rays.iter().map(|&r| fan.ray(r)).collect();
        let span = canonical_span_int(n, &vs).expect("rays have ambient length");
        let rays_in = (0..fan.n_rays()).filter(|&r| span.contains_int(fan.ray(r))).collect();
        CandidateSubspace { basis: span, rays_in }
    };
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut layer: Vec<CandidateSubspace> = Vec::new();
    for r in 0..fan.n_rays() {
        let c = closure(&[r]);
        if c.dim() < n && seen.insert(c.rays_in.clone()) {
            layer.push(c);
        }
    }
    let mut out = Vec::new();
    let mut visited = 0usize;
    while !layer.is_empty() {
        let mut next = Vec::new();
        for c in &layer {
            if c.dim() + 1 >= n {
                continue;
            }
            for r in (0..fan.n_rays()).filter(|r| !c.rays_in.contains(r)) {
                visited += 1;
                if visited > cap {
                    return Err(StabilityError::TooManyCandidates(cap));
                }
                let mut rays = c.rays_in.clone();
                rays.push(r);
                let grown = closure(&rays);
                if grown.dim() < n && seen.insert(grown.rays_in.clone()) {
                    next.push(grown);
                }
            }
        }
        out.append(&mut layer);
        layer = next;
    }
    out.sort_by(|a, b| (a.dim(), &a.rays_in).cmp(&(b.dim(), &b.rays_in)));
    Ok(out)
}

/// Tangent-bundle checker for one fan; candidates are computed once.
#[derive(Clone, Debug)]
pub struct TangentChecker {
    fan: Fan,
    candidates: Vec<CandidateSubspace>,
}

impl TangentChecker {
    pub fn new(fan: &Fan) -> Result<Self, StabilityError> {
        fan.require_smooth_complete()?;
        let candidates = if fan.dim() >= 2 {
            enumerate_candidates(fan)?
        } else {
            Vec::new()
        };
        Ok(TangentChecker {
            fan: fan.clone(),
            candidates,
        })
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn candidates(&self) -> &[CandidateSubspace] {
        &self.candidates
    }

    pub fn check(&self, d: &Divisor) -> Result<StabilityVerdict, StabilityError> {
        let p = vertices(&self.fan, d)?;
        self.check_polytope(&p)
    }

    /// Verdict from a precomputed volume table.
    pub fn verdict_from_volumes(&self, volumes: FacetVolumeTable) -> StabilityVerdict {
        let n = self.fan.dim();
        let rhs = &volumes.total / Rational::from_integer(n.into());
        let evaluations: Vec<CandidateEvaluation> = self
            .candidates
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let sum: Rational = c.rays_in.iter().map(|&r| &volumes.volumes[r]).sum();
                let lhs = sum / Rational::from_integer(c.dim().into());
                let margin = &rhs - &lhs;
                CandidateEvaluation {
                    candidate: i,
                    lhs,
                    margin,
                }
            })
            .collect();
        // no proper nonzero subspaces in dimension one
        let margin = evaluations
            .iter()
            .map(|e| e.margin.clone())
            .min()
            .unwrap_or_else(|| rhs.clone());
        let mut witnesses: Vec<(Rational, Witness)> = evaluations
            .iter()
            .filter(|e| !e.margin.is_positive())
            .map(|e| {
                let c = &self.candidates[e.candidate];
                (
                    e.margin.clone(),
                    Witness {
                        subspace: c.basis.clone(),
                        rays: c.rays_in.clone(),
                        lhs: e.lhs.clone(),
                        rhs: rhs.clone(),
                    },
                )
            })
            .collect();
        witnesses.sort_by(|a, b| (&a.0, &a.1.rays).cmp(&(&b.0, &b.1.rays)));
        StabilityVerdict {
            status: StabilityStatus::from_margin(&margin),
            margin,
            witnesses: witnesses.into_iter().map(|(_, w)| w).collect(),
            rhs,
            volumes,
            evaluations,
        }
    }

    pub fn check_polytope(&self, p: &Polytope) -> Result<StabilityVerdict, StabilityError> {
        Ok(self.verdict_from_volumes(p.facet_volume_table()?))
    }
}

/// Decides (semi)stability of the tangent bundle with respect to an ample divisor.
pub fn check_tangent(fan: &Fan, d: &Divisor) -> Result<StabilityVerdict, StabilityError> {
    TangentChecker::new(fan)?.check(d)
}

/// Non-strict inequality for every ray-spanned proper subspace.
pub fn subspace_concentration_check(p: &Polytope) -> Result<bool, StabilityError> {
    let checker = TangentChecker::new(p.fan())?;
    Ok(!checker.check_polytope(p)?.margin.is_negative())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub divisor: Divisor,
    pub verdict: StabilityVerdict,
    /// Number of ample grid points examined.
    pub ample_points: usize,
}

/// Cap on the number of grid points in a perturbation search.
pub const DEFAULT_SEARCH_CAP: u128 = 2_000_000;

/// Scans `base + (radius/grid)·k` for `k ∈ {-grid..grid}^{#rays}` and returns
/// the ample point with the largest margin (first in scan order on ties).
pub fn search_stable_polarization(
    fan: &Fan,
    base: &Divisor,
    radius: &Rational,
    grid: u32,
) -> Result<SearchOutcome, StabilityError> {
    let axes: Vec<usize> = (0..fan.n_rays()).collect();
    search_stable_polarization_on_axes(fan, base, radius, grid, &axes)
}

/// As [`search_stable_polarization`], perturbing only the coefficients in `axes`.
pub fn search_stable_polarization_on_axes(
    fan: &Fan,
    base: &Divisor,
    radius: &Rational,
    grid: u32,
    axes: &[usize],
) -> Result<SearchOutcome, StabilityError> {
    if grid == 0 {
        return Err(StabilityError::EmptyGrid);
    }
    base.check_len(fan)?;
    let checker = TangentChecker::new(fan)?;
    let side = 2 * grid as u128 + 1;
    let points = side.checked_pow(axes.len() as u32).unwrap_or(u128::MAX);
    if points > DEFAULT_SEARCH_CAP {
        return Err(StabilityError::BoxTooLarge {
            points,
            cap: DEFAULT_SEARCH_CAP,
        });
    }
    let step = radius / Rational::from_integer(grid.into());
    let offsets: Vec<Rational> = (-(grid as i64)..=grid as i64)
        .map(|k| &step * Rational::from_integer(k.into()))
        .collect();
    let point = |idx: u128| -> Divisor {
        let mut coeffs = base.coeffs.clone();
        let mut rest = idx;
        for &a in axes.iter().rev() {
            coeffs[a] += &offsets[(rest % side) as usize];
            rest /= side;
        }
        Divisor::new(coeffs)
    };
    let results: Vec<Option<(Divisor, StabilityVerdict)>> = (0..points)
        .into_par_iter()
        .map(|idx| {
            let d = point(idx);
            match ample_violation(fan, &d) {
                Ok(None) => checker.check(&d).ok().map(|v| (d, v)),
                _ => None,
            }
        })
        .collect();
    let ample_points = results.iter().flatten().count();
    let mut best: Option<(Divisor, StabilityVerdict)> = None;
    for (d, v) in results.into_iter().flatten() {
        if best.as_ref().is_none_or(|(_, b)| v.margin > b.margin) {
            best = Some((d, v));
        }
    }
    let (divisor, verdict) = best.ok_or(StabilityError::NoAmplePointInBox)?;
    Ok(SearchOutcome {
        divisor,
        verdict,
        ample_points,
    })
}

/// Affine map `(t1, t2) ↦ base + t1·dir1 + t2·dir2` into divisor coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSlice {
    pub base: Vec<Rational>,
    pub dir1: Vec<Rational>,
    pub dir2: Vec<Rational>,
}

impl AffineSlice {
    pub fn at(&self, t1: &Rational, t2: &Rational) -> Divisor {
        Divisor::new(
            self.base
                .iter()
                .zip(&self.dir1)
                .zip(&self.dir2)
                .map(|((b, x), y)| b + t1 * x + t2 * y)
                .collect(),
        )
    }

    fn validate(&self, n_rays: usize) -> Result<(), StabilityError> {
        if [&self.base, &self.dir1, &self.dir2].iter().any(|v| v.len() != n_rays) {
            return Err(StabilityError::DegenerateSlice);
        }
        let mut m = vec![self.dir1.clone(), self.dir2.clone()];
        if rref(&mut m, n_rays).len() != 2 {
            return Err(StabilityError::DegenerateSlice);
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RegionStatus {
    Verdict(StabilityStatus),
    Outside,
}

impl fmt::Display for RegionStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RegionStatus::Verdict(s) => s.fmt(f),
            RegionStatus::Outside => f.write_str("outside"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionRow {
    pub t1: Rational,
    pub t2: Rational,
    pub status: RegionStatus,
    /// Empty outside the ample cone.
    pub margin: Option<Rational>,
    /// Ray set of the first witness, if any.
    pub witness: Option<String>,
}

/// Rectangle `(x0, x1] × (y0, y1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridBox {
    pub x0: Rational,
    pub x1: Rational,
    pub y0: Rational,
    pub y1: Rational,
}

/// Evaluates the slice at `t1 = x0 + i(x1-x0)/N`, `t2 = y0 + j(y1-y0)/M` for
/// `1 <= i <= N`, `1 <= j <= M`, with `t1` in the outer loop.
pub fn region_scan(
    fan: &Fan,
    slice: &AffineSlice,
    bx: &GridBox,
    steps: (u32, u32),
) -> Result<Vec<RegionRow>, StabilityError> {
    if steps.0 == 0 || steps.1 == 0 {
        return Err(StabilityError::EmptyGrid);
    }
    slice.validate(fan.n_rays())?;
    let checker = TangentChecker::new(fan)?;
    let (nx, ny) = (steps.0 as i64, steps.1 as i64);
    let dx = (&bx.x1 - &bx.x0) / Rational::from_integer(nx.into());
    let dy = (&bx.y1 - &bx.y0) / Rational::from_integer(ny.into());
    let coords: Vec<(Rational, Rational)> = (1..=nx)
        .flat_map(|i| {
            let t1 = &bx.x0 + &dx * Rational::from_integer(i.into());
            let dy = dy.clone();
            let y0 = bx.y0.clone();
            (1..=ny).map(move |j| (t1.clone(), &y0 + &dy * Rational::from_integer(j.into())))
        })
        .collect();
    coords
        .into_par_iter()
        .map(|(t1, t2)| {
            let d = slice.at(&t1, &t2);
            if !is_ample(fan, &d)? {
                return Ok(RegionRow {
                    t1,
                    t2,
                    status: RegionStatus::Outside,
                    margin: None,
                    witness: None,
                });
            }
            let v = checker.check(&d)?;
            Ok(RegionRow {
                t1,
                t2,
                status: RegionStatus::Verdict(v.status),
                witness: v.witnesses.first().map(|w| ray_label(&w.rays)),
                margin: Some(v.margin),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{frac, rat};

    fn p2() -> Fan {
        Fan::from_i64(2, &[vec![1, 0], vec![0, 1], vec![-1, -1]], &[vec![0, 1], vec![1, 2], vec![2, 0]]).unwrap()
    }

    fn p1xp1() -> Fan {
        Fan::from_i64(
            2,
            &[vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]],
            &[vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
        )
        .unwrap()
    }

    fn f1() -> Fan {
        p2().stellar_subdivide(&[0, 1]).unwrap()
    }

    #[test]
    fn candidate_counts() {
        assert_eq!(enumerate_candidates(&p2()).unwrap().len(), 3);
        let c = enumerate_candidates(&p1xp1()).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c[0].rays_in, vec![0, 2]);
        assert!(matches!(
            enumerate_candidates_with_cap(
                &Fan::from_i64(
                    3,
                    &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![-1, -1, -1]],
                    &[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
                )
                .unwrap(),
                2
            ),
            Err(StabilityError::TooManyCandidates(2))
        ));
    }

    #[test]
    fn product_of_lines() {
        let v = check_tangent(&p1xp1(), &Divisor::from_ints(&[1, 1, 1, 1])).unwrap();
        assert_eq!(v.status, StabilityStatus::SemistableNotStable);
        assert_eq!(v.witnesses.len(), 2);
        assert_eq!(v.rhs, rat(4));
        // rays are ordered e1, e2, -e1, -e2 here
        let v = check_tangent(&p1xp1(), &Divisor::from_ints(&[1, 2, 1, 2])).unwrap();
        assert_eq!(v.status, StabilityStatus::Unstable);
        assert_eq!(v.margin, rat(-2));
        assert_eq!(v.witnesses[0].rays, vec![0, 2]);
    }

    #[test]
    fn blowup_of_plane() {
        // anticanonical: edges 3,1,2,2 up to order, equality along the fiber direction
        let v = check_tangent(&f1(), &Divisor::anticanonical(&f1())).unwrap();
        assert_eq!(v.status, StabilityStatus::SemistableNotStable);
        // λ=3, μ=1 analogue: pullback of O(3) minus the exceptional curve
        let v = check_tangent(&f1(), &Divisor::from_ints(&[1, 1, 1, 1])).unwrap();
        assert_eq!(v.volumes.total, rat(8));
        let stable = check_tangent(&f1(), &Divisor::new(vec![rat(1), rat(1), rat(1), frac(3, 2)])).unwrap();
        assert_eq!(stable.status, StabilityStatus::Stable);
    }

    #[test]
    fn not_ample_is_an_error() {
        assert_eq!(
            check_tangent(&p2(), &Divisor::from_ints(&[0, 0, 0])).unwrap_err(),
            StabilityError::NotAmple { cone: 0, ray: 2 }
        );
    }

    #[test]
    fn one_dimensional_is_stable() {
        let p1 = Fan::from_i64(1, &[vec![1], vec![-1]], &[vec![0], vec![1]]).unwrap();
        let v = check_tangent(&p1, &Divisor::from_ints(&[1, 1])).unwrap();
        assert_eq!(v.status, StabilityStatus::Stable);
        assert!(v.witnesses.is_empty());
    }

    #[test]
    fn search_on_blowup() {
        let fine = f1();
        let base = crate::fan::pullback_divisor(&fine, &p2(), &Divisor::from_ints(&[1, 1, 1])).unwrap();
        let out = search_stable_polarization(&fine, &base, &frac(1, 2), 1).unwrap();
        assert_eq!(out.verdict.status, StabilityStatus::Stable);
        let p2_out = search_stable_polarization(&p2(), &Divisor::from_ints(&[1, 0, 0]), &rat(0), 1).unwrap();
        assert_eq!(p2_out.verdict.status, StabilityStatus::Stable);
        assert_eq!(p2_out.ample_points, 27);
        assert_eq!(
            search_stable_polarization(&p2(), &Divisor::from_ints(&[0, 0, 0]), &rat(0), 1),
            Err(StabilityError::NoAmplePointInBox)
        );
    }

    #[test]
    fn region_on_product() {
        // (λ, μ) ↦ λ(D_2) + μ(D_3); semistable exactly on the diagonal
        let slice = AffineSlice {
            base: vec![rat(0); 4],
            dir1: vec![rat(0), rat(0), rat(1), rat(0)],
            dir2: vec![rat(0), rat(0), rat(0), rat(1)],
        };
        let bx = GridBox {
            x0: rat(0),
            x1: rat(3),
            y0: rat(0),
            y1: rat(3),
        };
        let rows = region_scan(&p1xp1(), &slice, &bx, (3, 3)).unwrap();
        assert_eq!(rows.len(), 9);
        assert_eq!((rows[1].t1.clone(), rows[1].t2.clone()), (rat(1), rat(2)));
        for r in &rows {
            let expect = if r.t1 == r.t2 {
                StabilityStatus::SemistableNotStable
            } else {
                StabilityStatus::Unstable
            };
            assert_eq!(r.status, RegionStatus::Verdict(expect));
        }
        let flat = AffineSlice {
            dir2: slice.dir1.clone(),
            ..slice.clone()
        };
        assert_eq!(
            region_scan(&p1xp1(), &flat, &bx, (3, 3)),
            Err(StabilityError::DegenerateSlice)
        );
        let shifted = GridBox {
            x0: rat(-2),
            ..bx
        };
        let rows = region_scan(&p1xp1(), &slice, &shifted, (5, 3)).unwrap();
        assert_eq!(rows[0].status, RegionStatus::Outside);
        assert!(rows[0].margin.is_none());
    }
}
