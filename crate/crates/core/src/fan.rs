//! Complete fans with primitive integer rays, torus-invariant divisors,
//! ampleness, stellar subdivisions and the passage from vertices to fans.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use thiserror::Error;

use crate::exactlin::{
    bareiss_determinant, gcd_all, int_to_rat, inverse, nullspace, LinAlgError, Rational,
    RationalVector,
};
use crate::hull::{self, HullError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FanError {
    #[error("malformed fan: {0}")]
    MalformedFan(String),
    #[error("fan is not smooth")]
    NotSmooth,
    #[error("fan is not complete")]
    NotComplete,
    #[error("cone {0:?} is not a face of any maximal cone")]
    NotAFace(Vec<usize>),
    #[error("cannot subdivide a cone with fewer than two rays")]
    SubdivisionOfRay,
    #[error("ray {0} of the fine fan lies in no cone of the coarse fan")]
    NotARefinement(usize),
    #[error("divisor has {found} coefficients, fan has {expected} rays")]
    CoefficientMismatch { expected: usize, found: usize },
    #[error("maximal cone {0} is not simplicial and full-dimensional")]
    SingularCone(usize),
    #[error("points do not span the ambient space")]
    NotFullDimensional,
    #[error("{count} vertices exceed the brute-force cap of {cap}")]
    TooManyVerticesForBruteForce { count: usize, cap: usize },
    #[error("divisor is not ample: cone {cone} violates strict convexity at ray {ray}")]
    NotAmple { cone: usize, ray: usize },
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error(transparent)]
    Hull(#[from] HullError),
}

/// Per-cone inverses of the ray matrices, used for vertices and cone coordinates.
#[derive(Clone, Debug)]
pub struct ConeSolver {
    inverses: Vec<Vec<Vec<Rational>>>,
}

impl ConeSolver {
    fn new(fan: &Fan) -> Result<Self, FanError> {
        let mut inverses = Vec::with_capacity(fan.max_cones.len());
        for (c, cone) in fan.max_cones.iter().enumerate() {
            if cone.len() != fan.dim {
                return Err(FanError::SingularCone(c));
            }
            let m: Vec<Vec<Rational>> = cone
                .iter()
                .map(|&r| fan.rays[r].iter().map(int_to_rat).collect())
                .collect();
            inverses.push(inverse(&m).map_err(|_| FanError::SingularCone(c))?);
        }
        Ok(ConeSolver { inverses })
    }

    /// Solution of `<u, v_ρ> = -a_ρ` for the rays of maximal cone `cone`.
    pub fn vertex(&self, fan: &Fan, cone: usize, coeffs: &[Rational]) -> RationalVector {
        let inv = &self.inverses[cone];
        let rhs: Vec<Rational> = fan.max_cones[cone].iter().map(|&r| -&coeffs[r]).collect();
        RationalVector(
            inv.iter()
                .map(|row| {
                    row.iter()
                        .zip(&rhs)
                        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
                        .map(|(x, y)| x * y)
                        .sum()
                })
                .collect(),
        )
    }

    /// Coefficients `c` with `x = Σ c_j v_{cone[j]}`.
    pub fn cone_coordinates(&self, cone: usize, x: &[Rational]) -> Vec<Rational> {
        let inv = &self.inverses[cone];
        (0..x.len())
            .map(|j| {
                x.iter()
                    .enumerate()
                    .filter(|(i, xi)| !xi.is_zero() && !inv[*i][j].is_zero())
                    .map(|(i, xi)| xi * &inv[i][j])
                    .sum()
            })
            .collect()
    }
}

/// A fan in `N_Q = Q^dim` given by primitive ray generators and maximal cones.
#[derive(Clone, Debug)]
pub struct Fan {
    dim: usize,
    rays: Vec<Vec<BigInt>>,
    max_cones: Vec<Vec<usize>>,
    solver: OnceLock<Result<ConeSolver, FanError>>,
}

impl PartialEq for Fan {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.rays == other.rays && self.max_cones == other.max_cones
    }
}

impl Eq for Fan {}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FanValidation {
    pub smooth: bool,
    pub complete: bool,
}

impl Fan {
    /// Builds a fan after structural checks. Cone index lists are sorted;
    /// their order is kept.
    pub fn new(dim: usize, rays: Vec<Vec<BigInt>>, max_cones: Vec<Vec<usize>>) -> Result<Self, FanError> {
        if dim == 0 {
            return Err(FanError::MalformedFan("dimension must be positive".into()));
        }
        for (i, r) in rays.iter().enumerate() {
            if r.len() != dim {
                return Err(FanError::MalformedFan(format!(
                    "ray {i} has {} coordinates, expected {dim}",
                    r.len()
                )));
            }
            if r.iter().all(Zero::is_zero) {
                return Err(FanError::MalformedFan(format!("ray {i} is zero")));
            }
            if !gcd_all(r).is_one() {
                return Err(FanError::MalformedFan(format!("ray {i} is not primitive")));
            }
            if rays[..i].contains(r) {
                return Err(FanError::MalformedFan(format!("ray {i} is a duplicate")));
            }
        }
        let mut cones = Vec::with_capacity(max_cones.len());
        for (c, cone) in max_cones.into_iter().enumerate() {
            if cone.is_empty() {
                return Err(FanError::MalformedFan(format!("cone {c} is empty")));
            }
            let mut sorted = cone.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != cone.len() {
                return Err(FanError::MalformedFan(format!("cone {c} repeats a ray")));
            }
            if let Some(&bad) = sorted.iter().find(|&&r| r >= rays.len()) {
                return Err(FanError::MalformedFan(format!(
                    "cone {c} refers to ray {bad}, but there are {} rays",
                    rays.len()
                )));
            }
            if cones.contains(&sorted) {
                return Err(FanError::MalformedFan(format!("cone {c} is a duplicate")));
            }
            cones.push(sorted);
        }
        Ok(Fan {
            dim,
            rays,
            max_cones: cones,
            solver: OnceLock::new(),
        })
    }

    pub fn from_i64(dim: usize, rays: &[Vec<i64>], max_cones: &[Vec<usize>]) -> Result<Self, FanError> {
        let rays = rays
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        Fan::new(dim, rays, max_cones.to_vec())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Vec<BigInt>] {
        &self.rays
    }

    pub fn ray(&self, i: usize) -> &[BigInt] {
        &self.rays[i]
    }

    pub fn n_rays(&self) -> usize {
        self.rays.len()
    }

    pub fn max_cones(&self) -> &[Vec<usize>] {
        &self.max_cones
    }

    pub fn ray_rational(&self, i: usize) -> RationalVector {
        RationalVector::from_bigints(&self.rays[i])
    }

    /// Cached per-cone inverses; fails unless every maximal cone is simplicial
    /// and full-dimensional.
    pub fn solver(&self) -> Result<&ConeSolver, FanError> {
        self.solver
            .get_or_init(|| ConeSolver::new(self))
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn validate(&self) -> FanValidation {
        let smooth = self.max_cones.iter().all(|c| {
            c.len() == self.dim && bareiss_determinant(self.cone_matrix(c)).abs().is_one()
        });
        FanValidation {
            smooth,
            complete: self.is_complete(),
        }
    }

    pub fn is_smooth_complete(&self) -> bool {
        let v = self.validate();
        v.smooth && v.complete
    }

    pub(crate) fn require_smooth_complete(&self) -> Result<(), FanError> {
        let v = self.validate();
        if !v.smooth {
            return Err(FanError::NotSmooth);
        }
        if !v.complete {
            return Err(FanError::NotComplete);
        }
        Ok(())
    }

    fn cone_matrix(&self, cone: &[usize]) -> Vec<Vec<BigInt>> {
        cone.iter().map(|&r| self.rays[r].clone()).collect()
    }

    /// Ridge pairing with opposite sides, connectivity through ridges, and a
    /// covering-degree probe at one interior point.
    fn is_complete(&self) -> bool {
        let n = self.dim;
        if self.max_cones.is_empty() || self.solver().is_err() {
            return false;
        }
        let mut ridges: BTreeMap<Vec<usize>, Vec<(usize, usize)>> = BTreeMap::new();
        for (c, cone) in self.max_cones.iter().enumerate() {
            for (k, &apex) in cone.iter().enumerate() {
                let mut ridge = cone.clone();
                ridge.remove(k);
                ridges.entry(ridge).or_default().push((c, apex));
            }
        }
        let mut adjacency = vec![Vec::new(); self.max_cones.len()];
        for (ridge, owners) in &ridges {
            if owners.len() != 2 {
                return false;
            }
            let rows: Vec<Vec<Rational>> = ridge
                .iter()
                .map(|&r| self.rays[r].iter().map(int_to_rat).collect())
                .collect();
            let normal = if rows.is_empty() {
                RationalVector(vec![Rational::one(); n])
            } else {
                let ns = nullspace(&rows, n);
                if ns.len() != 1 {
                    return false;
                }
                ns.into_iter().next().unwrap()
            };
            let s0 = normal.dot_int(&self.rays[owners[0].1]);
            let s1 = normal.dot_int(&self.rays[owners[1].1]);
            if s0.is_zero() || s1.is_zero() || s0.is_positive() == s1.is_positive() {
                return false;
            }
            adjacency[owners[0].0].push(owners[1].0);
            adjacency[owners[1].0].push(owners[0].0);
        }
        let mut seen = vec![false; self.max_cones.len()];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(c) = queue.pop_front() {
            for &d in &adjacency[c] {
                if !seen[d] {
                    seen[d] = true;
                    queue.push_back(d);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return false;
        }
        // A pseudo-manifold of cones may still wrap around more than once.
        let solver = self.solver().expect("checked above");
        let probe: Vec<Rational> = (0..n)
            .map(|i| {
                self.max_cones[0]
                    .iter()
                    .map(|&r| int_to_rat(&self.rays[r][i]))
                    .sum()
            })
            .collect();
        let covering = (0..self.max_cones.len())
            .filter(|&c| {
                solver
                    .cone_coordinates(c, &probe)
                    .iter()
                    .all(|x| !x.is_negative())
            })
            .count();
        covering == 1
    }

    /// Index of a maximal cone containing `x`, with the cone coordinates of `x`.
    pub fn locate(&self, x: &[Rational]) -> Result<Option<(usize, Vec<Rational>)>, FanError> {
        let solver = self.solver()?;
        for c in 0..self.max_cones.len() {
            let coords = solver.cone_coordinates(c, x);
            if coords.iter().all(|v| !v.is_negative()) {
                return Ok(Some((c, coords)));
            }
        }
        Ok(None)
    }

    pub fn ray_index(&self, v: &[BigInt]) -> Option<usize> {
        self.rays.iter().position(|r| r.as_slice() == v)
    }

    /// Stellar subdivision at the cone spanned by `cone`: adds the ray
    /// `Σ v_ρ` (made primitive) and splits every maximal cone containing `cone`.
    pub fn stellar_subdivide(&self, cone: &[usize]) -> Result<Fan, FanError> {
        let mut face = cone.to_vec();
        face.sort_unstable();
        face.dedup();
        if face.len() < 2 {
            return Err(FanError::SubdivisionOfRay);
        }
        if face.iter().any(|&r| r >= self.rays.len())
            || !self
                .max_cones
                .iter()
                .any(|c| face.iter().all(|r| c.contains(r)))
        {
            return Err(FanError::NotAFace(face));
        }
        let mut sum = vec![BigInt::zero(); self.dim];
        for &r in &face {
            for (s, x) in sum.iter_mut().zip(&self.rays[r]) {
                *s += x;
            }
        }
        let g = gcd_all(&sum);
        let new_ray: Vec<BigInt> = sum.into_iter().map(|x| x / &g).collect();
        let new_index = self.rays.len();
        let mut rays = self.rays.clone();
        rays.push(new_ray);
        let mut cones = Vec::new();
        for c in &self.max_cones {
            if face.iter().all(|r| c.contains(r)) {
                for &drop in &face {
                    let mut nc: Vec<usize> = c.iter().copied().filter(|&r| r != drop).collect();
                    nc.push(new_index);
                    cones.push(nc);
                }
            } else {
                cones.push(c.clone());
            }
        }
        Fan::new(self.dim, rays, cones)
    }
}

impl fmt::Display for Fan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "fan in dimension {} with rays", self.dim)?;
        for r in &self.rays {
            let parts: Vec<String> = r.iter().map(ToString::to_string).collect();
            write!(f, " ({})", parts.join(","))?;
        }
        Ok(())
    }
}

/// A torus-invariant Q-divisor `Σ a_ρ D_ρ`, with polytope `{u : <u, v_ρ> >= -a_ρ}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Divisor {
    pub coeffs: Vec<Rational>,
}

impl Divisor {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        Divisor { coeffs }
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        Divisor {
            coeffs: xs.iter().map(|&x| Rational::from_integer(x.into())).collect(),
        }
    }

    pub fn anticanonical(fan: &Fan) -> Self {
        Divisor {
            coeffs: vec![Rational::one(); fan.n_rays()],
        }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> Divisor {
        Divisor {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn add(&self, other: &Divisor) -> Divisor {
        Divisor {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub(crate) fn check_len(&self, fan: &Fan) -> Result<(), FanError> {
        if self.coeffs.len() != fan.n_rays() {
            return Err(FanError::CoefficientMismatch {
                expected: fan.n_rays(),
                found: self.coeffs.len(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// Values `<u_σ, v_ρ> + a_ρ` for every maximal cone σ and ray ρ ∉ σ, in
/// cone-major order. The divisor is ample iff all are positive, nef iff all
/// are nonnegative.
pub fn convexity_margins(fan: &Fan, d: &Divisor) -> Result<Vec<(usize, usize, Rational)>, FanError> {
    d.check_len(fan)?;
    let solver = fan.solver()?;
    let mut out = Vec::new();
    for (c, cone) in fan.max_cones().iter().enumerate() {
        let u = solver.vertex(fan, c, &d.coeffs);
        for r in (0..fan.n_rays()).filter(|r| !cone.contains(r)) {
            out.push((c, r, u.dot_int(fan.ray(r)) + &d.coeffs[r]));
        }
    }
    Ok(out)
}

/// First `(cone, ray)` pair violating strict convexity, if any.
pub fn ample_violation(fan: &Fan, d: &Divisor) -> Result<Option<(usize, usize)>, FanError> {
    Ok(convexity_margins(fan, d)?
        .into_iter()
        .find(|(_, _, m)| !m.is_positive())
        .map(|(c, r, _)| (c, r)))
}

pub fn is_ample(fan: &Fan, d: &Divisor) -> Result<bool, FanError> {
    Ok(ample_violation(fan, d)?.is_none())
}

pub fn is_nef(fan: &Fan, d: &Divisor) -> Result<bool, FanError> {
    Ok(convexity_margins(fan, d)?
        .iter()
        .all(|(_, _, m)| !m.is_negative()))
}

/// The convexity margins as linear forms in the coefficients, one form per
/// (cone, outside ray) pair in the order of [`convexity_margins`].
pub fn ampleness_forms(fan: &Fan) -> Result<Vec<Vec<Rational>>, FanError> {
    let solver = fan.solver()?;
    let m = fan.n_rays();
    let mut forms = Vec::new();
    for (c, cone) in fan.max_cones().iter().enumerate() {
        // ρ outside σ: a_ρ - Σ_{τ∈σ} coeff_τ(v_ρ) a_τ, since -v_ρ's cone coordinates give u_σ.
        for r in (0..m).filter(|r| !cone.contains(r)) {
            let v: Vec<Rational> = fan.ray(r).iter().map(int_to_rat).collect();
            let coords = solver.cone_coordinates(c, &v);
            let mut form = vec![Rational::zero(); m];
            form[r] = Rational::one();
            for (t, x) in cone.iter().zip(coords) {
                form[*t] -= x;
            }
            forms.push(form);
        }
    }
    Ok(forms)
}

/// Pullback of `d` along the refinement `fine → coarse`: each fine ray gets
/// `-ψ_d(v)`, where `ψ_d` is the piecewise linear support function of `d`.
pub fn pullback_divisor(fine: &Fan, coarse: &Fan, d: &Divisor) -> Result<Divisor, FanError> {
    d.check_len(coarse)?;
    if fine.dim() != coarse.dim() {
        return Err(FanError::MalformedFan("fans live in different dimensions".into()));
    }
    let solver = coarse.solver()?;
    let mut coeffs = Vec::with_capacity(fine.n_rays());
    for i in 0..fine.n_rays() {
        let v: Vec<Rational> = fine.ray(i).iter().map(int_to_rat).collect();
        let (c, coords) = coarse.locate(&v)?.ok_or(FanError::NotARefinement(i))?;
        let value: Rational = coarse.max_cones()[c]
            .iter()
            .zip(&coords)
            .map(|(&t, x)| x * &d.coeffs[t])
            .sum();
        coeffs.push(value);
    }
    // every fine cone must sit inside a single coarse cone
    for (fc, cone) in fine.max_cones().iter().enumerate() {
        let inside = (0..coarse.max_cones().len()).any(|c| {
            cone.iter().all(|&r| {
                let v: Vec<Rational> = fine.ray(r).iter().map(int_to_rat).collect();
                solver
                    .cone_coordinates(c, &v)
                    .iter()
                    .all(|x| !x.is_negative())
            })
        });
        if !inside {
            return Err(FanError::NotARefinement(fine.max_cones()[fc][0]));
        }
    }
    Ok(Divisor::new(coeffs))
}

/// Default cap on the number of input points for [`normal_fan_from_vertices`].
pub const DEFAULT_VERTEX_CAP: usize = 40;

pub fn normal_fan_from_vertices(vertices: &[RationalVector]) -> Result<(Fan, Divisor), FanError> {
    normal_fan_from_vertices_with_cap(vertices, DEFAULT_VERTEX_CAP)
}

/// Facet normals and offsets of `conv(vertices)` as a fan with divisor, with
/// one maximal cone per vertex, listed in input order. Redundant input
/// points (non-vertices, repeats) are ignored.
pub fn normal_fan_from_vertices_with_cap(
    vertices: &[RationalVector],
    cap: usize,
) -> Result<(Fan, Divisor), FanError> {
    if vertices.len() > cap {
        return Err(FanError::TooManyVerticesForBruteForce {
            count: vertices.len(),
            cap,
        });
    }
    let pts: Vec<Vec<Rational>> = vertices.iter().map(|v| v.0.clone()).collect();
    let n = pts.first().map(Vec::len).ok_or(FanError::NotFullDimensional)?;
    if hull::affine_rank(&pts) != n || pts.iter().any(|p| p.len() != n) {
        return Err(FanError::NotFullDimensional);
    }
    let facets = hull::facets(&pts)?;
    let mut cones = Vec::new();
    let mut seen = BTreeSet::new();
    for i in 0..pts.len() {
        let cone: Vec<usize> = (0..facets.len())
            .filter(|&f| facets[f].members.contains(&i))
            .collect();
        let normals: Vec<Vec<Rational>> = cone
            .iter()
            .map(|&f| facets[f].normal.iter().map(int_to_rat).collect())
            .collect();
        let mut m = normals.clone();
        if crate::exactlin::rref(&mut m, n).len() == n && seen.insert(cone.clone()) {
            cones.push(cone);
        }
    }
    let coeffs = facets.iter().map(|f| -f.offset.clone()).collect();
    let rays = facets.into_iter().map(|f| f.normal).collect();
    Ok((Fan::new(n, rays, cones)?, Divisor::new(coeffs)))
}

/// Random walk on integer ample divisors of a fixed fan.
///
/// Each step moves along a random integer direction by a uniformly chosen
/// integer amount that keeps every convexity margin positive. When no
/// nonzero step fits, the current divisor is doubled first; stability is
/// invariant under positive scaling.
pub struct AmpleSampler {
    forms: Vec<Vec<Rational>>,
    current: Vec<BigInt>,
    steps_per_sample: usize,
}

impl AmpleSampler {
    pub fn new(fan: &Fan, start: &Divisor) -> Result<Self, FanError> {
        fan.require_smooth_complete()?;
        start.check_len(fan)?;
        if let Some((cone, ray)) = ample_violation(fan, start)? {
            return Err(FanError::NotAmple { cone, ray });
        }
        let l = start
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let current = start
            .coeffs
            .iter()
            .map(|x| (x * int_to_rat(&l)).to_integer())
            .collect();
        Ok(AmpleSampler {
            forms: ampleness_forms(fan)?,
            current,
            steps_per_sample: 3,
        })
    }

    fn values(&self, d: &[BigInt]) -> Vec<Rational> {
        self.forms
            .iter()
            .map(|f| f.iter().zip(d).map(|(x, y)| x * int_to_rat(y)).sum())
            .collect()
    }

    fn step<R: Rng + ?Sized>(&mut self, rng: &mut R) {
        let m = self.current.len();
        let dir: Vec<BigInt> = loop {
            let d: Vec<BigInt> = (0..m).map(|_| BigInt::from(rng.gen_range(-2i64..=2))).collect();
            if d.iter().any(|x| !x.is_zero()) {
                break d;
            }
        };
        for _ in 0..8 {
            let alpha = self.values(&self.current);
            let beta = self.values(&dir);
            let bound = self
                .current
                .iter()
                .map(|x| x.abs())
                .max()
                .unwrap_or_default()
                + BigInt::one();
            let mut lo = -int_to_rat(&bound);
            let mut hi = int_to_rat(&bound);
            for (a, b) in alpha.iter().zip(&beta) {
                if b.is_positive() {
                    lo = lo.max(-(a / b));
                } else if b.is_negative() {
                    hi = hi.min(-(a / b));
                }
            }
            // integers strictly inside (lo, hi)
            let first = lo.floor().to_integer() + BigInt::one();
            let last = hi.ceil().to_integer() - BigInt::one();
            if last > first {
                let span = (&last - &first + BigInt::one())
                    .try_into()
                    .unwrap_or(i64::MAX);
                let t = &first + BigInt::from(rng.gen_range(0..span));
                if !t.is_zero() {
                    for (c, d) in self.current.iter_mut().zip(&dir) {
                        *c += &t * d;
                    }
                }
                return;
            }
            for c in self.current.iter_mut() {
                *c *= 2;
            }
        }
    }

    /// Next sampled ample divisor.
    pub fn sample<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Divisor {
        for _ in 0..self.steps_per_sample {
            self.step(rng);
        }
        // keep coefficients small when the walk has drifted far out
        let g = gcd_all(&self.current);
        if !g.is_zero() && !g.is_one() {
            for c in self.current.iter_mut() {
                *c /= &g;
            }
        }
        Divisor::new(self.current.iter().map(int_to_rat).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{frac, rat};

    pub(crate) fn p2() -> Fan {
        Fan::from_i64(2, &[vec![1, 0], vec![0, 1], vec![-1, -1]], &[vec![0, 1], vec![1, 2], vec![2, 0]]).unwrap()
    }

    fn f2() -> Fan {
        Fan::from_i64(
            2,
            &[vec![1, 0], vec![0, 1], vec![-1, 2], vec![0, -1]],
            &[vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
        )
        .unwrap()
    }

    fn p1xp1() -> Fan {
        Fan::from_i64(
            2,
            &[vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]],
            &[vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
        )
        .unwrap()
    }

    fn p3() -> Fan {
        Fan::from_i64(
            3,
            &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![-1, -1, -1]],
            &[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
        )
        .unwrap()
    }

    #[test]
    fn validation_examples() {
        assert_eq!(p2().validate(), FanValidation { smooth: true, complete: true });
        assert_eq!(f2().validate(), FanValidation { smooth: true, complete: true });
        let partial = Fan::from_i64(2, &[vec![1, 0], vec![0, 1], vec![-1, -1]], &[vec![0, 1], vec![1, 2]]).unwrap();
        assert!(!partial.validate().complete);
        assert!(p3().is_smooth_complete());
        let p1 = Fan::from_i64(1, &[vec![1], vec![-1]], &[vec![0], vec![1]]).unwrap();
        assert!(p1.is_smooth_complete());
    }

    #[test]
    fn singular_and_wrapped_fans() {
        // weighted projective plane P(1,1,2): complete, not smooth
        let wp = Fan::from_i64(2, &[vec![1, 0], vec![0, 1], vec![-1, -2]], &[vec![0, 1], vec![1, 2], vec![2, 0]]).unwrap();
        assert_eq!(wp.validate(), FanValidation { smooth: false, complete: true });
        // six cones going twice around the origin
        let twice = Fan::from_i64(
            2,
            &[vec![1, 0], vec![-1, 2], vec![-1, -2], vec![1, 1], vec![-1, 0], vec![1, -2]],
            &[vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 4], vec![4, 5], vec![5, 0]],
        )
        .unwrap();
        assert!(!twice.validate().complete);
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(
            Fan::from_i64(2, &[vec![2, 0], vec![0, 1]], &[vec![0, 1]]),
            Err(FanError::MalformedFan(_))
        ));
        assert!(matches!(
            Fan::from_i64(2, &[vec![1, 0], vec![1, 0]], &[vec![0, 1]]),
            Err(FanError::MalformedFan(_))
        ));
        assert!(matches!(
            Fan::from_i64(2, &[vec![1, 0], vec![0, 1]], &[vec![0, 2]]),
            Err(FanError::MalformedFan(_))
        ));
        assert!(matches!(
            Fan::from_i64(2, &[vec![0, 0], vec![0, 1]], &[vec![0, 1]]),
            Err(FanError::MalformedFan(_))
        ));
    }

    #[test]
    fn ampleness_examples() {
        assert!(is_ample(&p2(), &Divisor::from_ints(&[1, 1, 1])).unwrap());
        assert!(!is_ample(&f2(), &Divisor::from_ints(&[0, 1, 0, 1])).unwrap());
        assert!(is_ample(&p1xp1(), &Divisor::from_ints(&[1, 1, 1, 1])).unwrap());
        assert!(!is_ample(&p2(), &Divisor::from_ints(&[0, 0, 0])).unwrap());
        assert!(is_nef(&p2(), &Divisor::from_ints(&[0, 0, 0])).unwrap());
    }

    #[test]
    fn forms_agree_with_margins() {
        let fan = f2();
        let d = Divisor::new(vec![frac(1, 3), rat(2), frac(-1, 2), rat(5)]);
        let forms = ampleness_forms(&fan).unwrap();
        let margins = convexity_margins(&fan, &d).unwrap();
        assert_eq!(forms.len(), margins.len());
        for (f, (_, _, m)) in forms.iter().zip(&margins) {
            let v: Rational = f.iter().zip(&d.coeffs).map(|(x, y)| x * y).sum();
            assert_eq!(&v, m);
        }
    }

    #[test]
    fn subdivision_examples() {
        let f1 = p2().stellar_subdivide(&[0, 1]).unwrap();
        assert_eq!(f1.n_rays(), 4);
        assert_eq!(f1.ray(3), &[BigInt::from(1), BigInt::from(1)]);
        assert!(f1.is_smooth_complete());
        let dp = f1.stellar_subdivide(&[1, 2]).unwrap();
        assert_eq!(dp.n_rays(), 5);
        assert!(dp.is_smooth_complete());
        let bl = p3().stellar_subdivide(&[0, 1, 2]).unwrap();
        assert_eq!(bl.n_rays(), 5);
        assert!(bl.is_smooth_complete());
        assert_eq!(p2().stellar_subdivide(&[0]), Err(FanError::SubdivisionOfRay));
        let f1_no_face = f1.stellar_subdivide(&[0, 1]);
        assert!(matches!(f1_no_face, Err(FanError::NotAFace(_))));
    }

    #[test]
    fn pullback_examples() {
        let coarse = p2();
        let fine = coarse.stellar_subdivide(&[0, 1]).unwrap();
        let d = Divisor::from_ints(&[1, 1, 1]);
        let pb = pullback_divisor(&fine, &coarse, &d).unwrap();
        assert_eq!(pb, Divisor::from_ints(&[1, 1, 1, 2]));
        assert!(is_nef(&fine, &pb).unwrap());
        assert!(!is_ample(&fine, &pb).unwrap());
        assert_eq!(pullback_divisor(&coarse, &coarse, &d).unwrap(), d);
        assert!(matches!(
            pullback_divisor(&coarse, &fine, &pb),
            Err(FanError::NotARefinement(_))
        ));
    }

    #[test]
    fn normal_fan_examples() {
        let tri = vec![
            RationalVector::from_ints(&[0, 0]),
            RationalVector::from_ints(&[3, 0]),
            RationalVector::from_ints(&[0, 3]),
        ];
        let (fan, d) = normal_fan_from_vertices(&tri).unwrap();
        assert!(fan.is_smooth_complete());
        let mut pairs: Vec<(Vec<BigInt>, Rational)> =
            fan.rays().iter().cloned().zip(d.coeffs.iter().cloned()).collect();
        pairs.sort();
        let expect = vec![
            (vec![BigInt::from(-1), BigInt::from(-1)], rat(3)),
            (vec![BigInt::from(0), BigInt::from(1)], rat(0)),
            (vec![BigInt::from(1), BigInt::from(0)], rat(0)),
        ];
        assert_eq!(pairs, expect);

        let square: Vec<RationalVector> = [[0, 0], [1, 0], [0, 1], [1, 1]]
            .iter()
            .map(|p| RationalVector::from_ints(p))
            .collect();
        let (fan, d) = normal_fan_from_vertices(&square).unwrap();
        assert_eq!(fan.n_rays(), 4);
        assert_eq!(fan.max_cones().len(), 4);
        let total: Rational = d.coeffs.iter().sum();
        assert_eq!(total, rat(2));

        let flat = vec![RationalVector::from_ints(&[0, 0]), RationalVector::from_ints(&[1, 1])];
        assert_eq!(normal_fan_from_vertices(&flat), Err(FanError::NotFullDimensional));
        assert!(matches!(
            normal_fan_from_vertices_with_cap(&square, 3),
            Err(FanError::TooManyVerticesForBruteForce { count: 4, cap: 3 })
        ));
    }

    #[test]
    fn sampler_stays_ample() {
        use rand::SeedableRng;
        let fan = p2().stellar_subdivide(&[0, 1]).unwrap();
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        let mut s = AmpleSampler::new(&fan, &Divisor::from_ints(&[1, 1, 1, 1])).unwrap();
        let mut distinct = BTreeSet::new();
        for _ in 0..50 {
            let d = s.sample(&mut rng);
            assert!(is_ample(&fan, &d).unwrap());
            distinct.insert(d.to_string());
        }
        assert!(distinct.len() > 10);
    }
}
