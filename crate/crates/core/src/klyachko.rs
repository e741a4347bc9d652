//! Equivariant reflexive sheaves as families of decreasing filtrations, one
//! per ray, of a fixed rational vector space; slopes and restricted slopes.

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::exactlin::{canonical_span_int, Rational, SubspaceBasis};
use crate::fan::Fan;
use crate::polytope::FacetVolumeTable;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KlyachkoError {
    #[error("filtration of ray {ray} is not strictly decreasing at step {step}")]
    NotDecreasing { ray: usize, step: i64 },
    #[error("filtration of ray {ray} leaves the filtered space at step {step}")]
    NotInSpace { ray: usize, step: i64 },
    #[error("filtration of ray {0} does not end in the zero subspace")]
    NotEventuallyZero(usize),
    #[error("subspace must be nonzero and proper")]
    TrivialSubspace,
    #[error("subspace is not contained in the filtered space")]
    SubspaceOutsideSpace,
    #[error("filtration family has {expected} rays, volume table has {found}")]
    RayMismatch { expected: usize, found: usize },
    #[error("step functions violate f >= g or differ outside their window")]
    HypothesisViolated,
}

/// Change points `(i, E(i))` of one decreasing filtration: `E(j)` equals the
/// subspace of the last change point `i <= j`, and the whole space before
/// the first one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filtration {
    steps: Vec<(i64, SubspaceBasis)>,
}

impl Filtration {
    pub fn steps(&self) -> &[(i64, SubspaceBasis)] {
        &self.steps
    }

    /// `Σ_i i · (dim E(i) - dim E(i+1))`.
    fn weighted_drop(&self, space_dim: usize) -> BigInt {
        let mut prev = space_dim;
        let mut acc = BigInt::zero();
        for (i, s) in &self.steps {
            acc += BigInt::from(i - 1) * BigInt::from(prev - s.dim());
            prev = s.dim();
        }
        acc
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationFamily {
    space: SubspaceBasis,
    filtrations: Vec<Filtration>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlopeReport {
    pub slope: Rational,
    /// Coefficient of each boundary divisor in the first Chern class.
    pub c1: Vec<BigInt>,
}

impl FiltrationFamily {
    /// Validates and compacts the given change points: steps are sorted,
    /// repeated subspaces are merged and an initial step equal to the whole
    /// space is dropped.
    pub fn new(space: SubspaceBasis, filtrations: Vec<Vec<(i64, SubspaceBasis)>>) -> Result<Self, KlyachkoError> {
        let mut out = Vec::with_capacity(filtrations.len());
        for (ray, mut steps) in filtrations.into_iter().enumerate() {
            steps.sort_by_key(|(i, _)| *i);
            let mut kept: Vec<(i64, SubspaceBasis)> = Vec::new();
            let mut prev = space.clone();
            for (i, s) in steps {
                if !s.is_subspace_of(&space) {
                    return Err(KlyachkoError::NotInSpace { ray, step: i });
                }
                if kept.last().is_some_and(|(j, _)| *j == i) || !s.is_subspace_of(&prev) {
                    return Err(KlyachkoError::NotDecreasing { ray, step: i });
                }
                if s == prev {
                    continue;
                }
                prev = s.clone();
                kept.push((i, s));
            }
            if !prev.is_zero() {
                return Err(KlyachkoError::NotEventuallyZero(ray));
            }
            out.push(Filtration { steps: kept });
        }
        Ok(FiltrationFamily {
            space,
            filtrations: out,
        })
    }

    pub fn space(&self) -> &SubspaceBasis {
        &self.space
    }

    pub fn rank(&self) -> usize {
        self.space.dim()
    }

    pub fn filtrations(&self) -> &[Filtration] {
        &self.filtrations
    }

    pub fn len(&self) -> usize {
        self.filtrations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.filtrations.is_empty()
    }

    pub fn c1(&self) -> Vec<BigInt> {
        self.filtrations
            .iter()
            .map(|f| f.weighted_drop(self.rank()))
            .collect()
    }

    /// The induced family on `w ⊆ E`, with filtrations `E(i) ∩ w`.
    pub fn saturate(&self, w: &SubspaceBasis) -> Result<FiltrationFamily, KlyachkoError> {
        if !w.is_subspace_of(&self.space) {
            return Err(KlyachkoError::SubspaceOutsideSpace);
        }
        let filtrations = self
            .filtrations
            .iter()
            .map(|f| {
                let mut steps: Vec<(i64, SubspaceBasis)> = f
                    .steps
                    .iter()
                    .map(|(i, s)| (*i, s.intersection(w)))
                    .collect();
                if steps.is_empty() {
                    // unreachable for a valid family of positive rank
                    steps.push((0, SubspaceBasis::zero(w.ambient())));
                }
                steps
            })
            .collect();
        FiltrationFamily::new(w.clone(), filtrations)
    }
}

/// Tangent bundle: `E = Q^n` and, for each ray, `E(1) = span(v_ρ)`, `E(2) = 0`.
pub fn tangent_filtrations(fan: &Fan) -> FiltrationFamily {
    let n = fan.dim();
    let filtrations = fan
        .rays()
        .iter()
        .map(|r| {
            let line = canonical_span_int(n, &[r.as_slice()]).expect("ray has ambient length");
            Filtration {
                steps: vec![(1, line), (2, SubspaceBasis::zero(n))],
            }
        })
        .collect();
    FiltrationFamily {
        space: SubspaceBasis::full(n),
        filtrations,
    }
}

pub fn slope(f: &FiltrationFamily, vols: &FacetVolumeTable) -> Result<SlopeReport, KlyachkoError> {
    if f.len() != vols.volumes.len() {
        return Err(KlyachkoError::RayMismatch {
            expected: f.len(),
            found: vols.volumes.len(),
        });
    }
    if f.rank() == 0 {
        return Err(KlyachkoError::TrivialSubspace);
    }
    let c1 = f.c1();
    let degree: Rational = c1
        .iter()
        .zip(&vols.volumes)
        .map(|(c, v)| Rational::from_integer(c.clone()) * v)
        .sum();
    Ok(SlopeReport {
        slope: degree / Rational::from_integer(f.rank().into()),
        c1,
    })
}

/// Slope of the saturated subsheaf determined by a nonzero proper subspace `w`.
pub fn restricted_slope(
    f: &FiltrationFamily,
    vols: &FacetVolumeTable,
    w: &SubspaceBasis,
) -> Result<Rational, KlyachkoError> {
    if w.dim() == 0 || w.dim() >= f.rank() {
        return Err(KlyachkoError::TrivialSubspace);
    }
    if f.len() != vols.volumes.len() {
        return Err(KlyachkoError::RayMismatch {
            expected: f.len(),
            found: vols.volumes.len(),
        });
    }
    Ok(slope(&f.saturate(w)?, vols)?.slope)
}

/// `slope(E) - slope(F_w)` for each caller-supplied candidate `w`. A negative
/// value refutes semistability; nonnegative values for a partial candidate
/// list prove nothing.
pub fn candidate_margins(
    f: &FiltrationFamily,
    vols: &FacetVolumeTable,
    candidates: &[SubspaceBasis],
) -> Result<Vec<Rational>, KlyachkoError> {
    let mu = slope(f, vols)?.slope;
    candidates
        .iter()
        .map(|w| Ok(&mu - restricted_slope(f, vols, w)?))
        .collect()
}

/// Integer function on `Z` that is constant to the left of `start` (value
/// `values[0]`) and from `start + values.len() - 1` on (value `values.last()`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepFunction {
    pub start: i64,
    pub values: Vec<i64>,
}

impl StepFunction {
    pub fn new(start: i64, values: Vec<i64>) -> Self {
        assert!(!values.is_empty(), "step function needs at least one value");
        StepFunction { start, values }
    }

    pub fn at(&self, i: i64) -> i64 {
        let k = (i - self.start).clamp(0, self.values.len() as i64 - 1);
        self.values[k as usize]
    }

    fn window(&self) -> (i64, i64) {
        (self.start, self.start + self.values.len() as i64 - 1)
    }

    /// `Σ_i i · (f(i) - f(i+1))`.
    pub fn weighted_drop(&self) -> i64 {
        let (lo, hi) = self.window();
        (lo..hi).map(|i| i * (self.at(i) - self.at(i + 1))).sum()
    }
}

/// For `f >= g` agreeing outside a finite window, checks
/// `Σ i(f(i) - f(i+1)) >= Σ i(g(i) - g(i+1))`.
pub fn monotone_step_inequality_check(f: &StepFunction, g: &StepFunction) -> Result<bool, KlyachkoError> {
    let (flo, fhi) = f.window();
    let (glo, ghi) = g.window();
    let lo = flo.min(glo) - 1;
    let hi = fhi.max(ghi) + 1;
    if f.at(lo) != g.at(lo) || f.at(hi) != g.at(hi) {
        return Err(KlyachkoError::HypothesisViolated);
    }
    if (lo..=hi).any(|i| f.at(i) < g.at(i)) {
        return Err(KlyachkoError::HypothesisViolated);
    }
    Ok(f.weighted_drop() >= g.weighted_drop())
}
