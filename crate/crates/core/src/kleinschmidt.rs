//! Picard rank two: projectivized split bundles `P(O ⊕ O(a_1) ⊕ … ⊕ O(a_r))`
//! over `P^s`, their Cayley polytopes and closed-form stability tests.
//!
//! The polarization `(λ, μ)` has polytope `λ · (νΔ_s * (a_1+ν)Δ_s * … * (a_r+ν)Δ_s)`
//! with `ν = μ/λ`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exactlin::{binomial, compositions, Rational, RationalVector};
use crate::fan::{Divisor, Fan};
use crate::stability::StabilityStatus;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Rank2Error {
    #[error("r and s must be positive")]
    ZeroRank,
    #[error("expected {expected} twist entries, found {found}")]
    WrongLength { expected: usize, found: usize },
    #[error("twists must be nonnegative and nondecreasing")]
    UnsortedTwists,
    #[error("all Cayley factors are zero")]
    AllZero,
    #[error("parameters must be positive")]
    NonPositive,
}

/// `P_{P^s}(O ⊕ O(a_1) ⊕ … ⊕ O(a_r))` with `0 <= a_1 <= … <= a_r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rank2Variety {
    r: usize,
    s: usize,
    a: Vec<u64>,
}

impl Rank2Variety {
    pub fn new(r: usize, s: usize, a: Vec<u64>) -> Result<Self, Rank2Error> {
        if r == 0 || s == 0 {
            return Err(Rank2Error::ZeroRank);
        }
        if a.len() != r {
            return Err(Rank2Error::WrongLength {
                expected: r,
                found: a.len(),
            });
        }
        if a.windows(2).any(|w| w[0] > w[1]) {
            return Err(Rank2Error::UnsortedTwists);
        }
        Ok(Rank2Variety { r, s, a })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn twists(&self) -> &[u64] {
        &self.a
    }

    /// Number of vanishing twists.
    pub fn z(&self) -> usize {
        self.a.iter().take_while(|&&x| x == 0).count()
    }

    pub fn is_fano(&self) -> bool {
        self.a.iter().sum::<u64>() <= self.s as u64
    }

    fn twists_rational(&self) -> Vec<Rational> {
        self.a.iter().map(|&x| Rational::from_integer(x.into())).collect()
    }

    /// Rays `v_0 = -Σe_i`, `v_i = e_i` in the first `r` coordinates, then
    /// `w_0 = (a, -Σe_j)`, `w_j = e_j` in the last `s`; every maximal cone
    /// omits exactly one `v` and one `w`.
    pub fn build_fan(&self) -> Fan {
        let (r, s) = (self.r, self.s);
        let n = r + s;
        let mut rays: Vec<Vec<BigInt>> = Vec::with_capacity(n + 2);
        rays.push((0..n).map(|k| BigInt::from(-((k < r) as i64))).collect());
        for i in 0..r {
            rays.push((0..n).map(|k| BigInt::from((k == i) as i64)).collect());
        }
        rays.push(
            (0..n)
                .map(|k| if k < r { BigInt::from(self.a[k]) } else { BigInt::from(-1) })
                .collect(),
        );
        for j in 0..s {
            rays.push((0..n).map(|k| BigInt::from((k == r + j) as i64)).collect());
        }
        let mut cones = Vec::with_capacity((r + 1) * (s + 1));
        for i in 0..=r {
            for j in 0..=s {
                cones.push((0..n + 2).filter(|&x| x != i && x != r + 1 + j).collect());
            }
        }
        Fan::new(n, rays, cones).expect("generators are primitive and distinct")
    }

    /// Divisor `λ D_{v_0} + μ D_{w_0}` on [`Rank2Variety::build_fan`].
    pub fn divisor(&self, lambda: &Rational, mu: &Rational) -> Divisor {
        let mut coeffs = vec![Rational::zero(); self.r + self.s + 2];
        coeffs[0] = lambda.clone();
        coeffs[self.r + 1] = mu.clone();
        Divisor::new(coeffs)
    }
}

/// Complete homogeneous symmetric polynomial `h_m(xs)`; `h_m()` is `0^m`.
pub fn complete_homogeneous(m: usize, xs: &[Rational]) -> Rational {
    let mut h = vec![Rational::zero(); m + 1];
    h[0] = Rational::one();
    for x in xs {
        for deg in 1..=m {
            let prev = h[deg - 1].clone();
            h[deg] += x * prev;
        }
    }
    h[m].clone()
}

/// Normalized volume of the Cayley sum `k_0Δ_s * … * k_rΔ_s`, as the sum of
/// all monomials of degree `s` in the `k_i`.
pub fn cayley_volume(k: &[Rational], s: usize) -> Result<Rational, Rank2Error> {
    if k.iter().all(Zero::is_zero) {
        return Err(Rank2Error::AllZero);
    }
    Ok(compositions(s, k.len())
        .iter()
        .map(|m| {
            k.iter()
                .zip(m)
                .map(|(x, &e)| num_traits::pow(x.clone(), e))
                .product::<Rational>()
        })
        .sum())
}

/// Vertices of `k_0Δ_s * … * k_rΔ_s` in `Q^{r+s}`: the first `r`
/// coordinates place the summand `i` at `e_i` (summand 0 at the origin).
pub fn cayley_polytope(k: &[Rational], s: usize) -> Vec<RationalVector> {
    let r = k.len() - 1;
    let mut out = Vec::new();
    for (i, ki) in k.iter().enumerate() {
        for j in 0..=s {
            let mut p = vec![Rational::zero(); r + s];
            if i > 0 {
                p[i - 1] = Rational::one();
            }
            if j > 0 {
                p[r + j - 1] = ki.clone();
            }
            out.push(RationalVector(p));
        }
    }
    out
}

/// Facet volumes of the polarization with `λ = 1`: `v[i]` for the facet of
/// `v_i`, `w` for any facet of a `w_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VolumeVector {
    pub v: Vec<Rational>,
    pub w: Rational,
    pub nu: Rational,
}

pub fn closed_form_volumes(var: &Rank2Variety, nu: &Rational) -> VolumeVector {
    let (r, s) = (var.r as u64, var.s);
    let a = var.twists_rational();
    let powers: Vec<Rational> = (0..=s).map(|k| num_traits::pow(nu.clone(), k)).collect();
    let series = |vars: &[Rational], top: usize| -> Rational {
        (0..=top)
            .map(|k| {
                Rational::from_integer(binomial(s as u64 + r - 1, k as u64))
                    * complete_homogeneous(top - k, vars)
                    * &powers[k]
            })
            .sum()
    };
    let mut v = vec![series(&a, s)];
    for i in 0..var.r {
        let mut rest = a.clone();
        rest.remove(i);
        v.push(series(&rest, s));
    }
    let w = series(&a, s - 1);
    VolumeVector {
        v,
        w,
        nu: nu.clone(),
    }
}

/// Volume of `(ν+c_0)Δ_s * … * (ν+c_r)Δ_s` by the binomial expansion in `ν`.
pub fn total_volume(c: &[Rational], s: usize, nu: &Rational) -> Rational {
    let r = c.len() as u64 - 1;
    (0..=s)
        .map(|k| {
            Rational::from_integer(binomial(s as u64 + r, k as u64))
                * complete_homogeneous(s - k, c)
                * num_traits::pow(nu.clone(), k)
        })
        .sum()
}

/// Which family of subspaces attains the maximum in the criterion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CriterionCase {
    /// The line through `v_0`.
    FirstRay,
    /// The base directions `R^r × 0`.
    Base,
    /// The line through `w_0`.
    FiberRay,
    /// `span(v_i : i ∈ I) × R^s`.
    Subset(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionReport {
    pub threshold: Rational,
    pub max_term: Rational,
    pub argmax: CriterionCase,
    pub status: StabilityStatus,
}

fn subset_admissible(var: &Rank2Variety, set: &[usize]) -> bool {
    let (r, z) = (var.r, var.z());
    let tail_in = (z + 1..=r).all(|k| set.contains(&k));
    if tail_in {
        return true;
    }
    let head_in = (0..=z).all(|k| set.contains(&k));
    let mut missing: Vec<u64> = (z + 1..=r)
        .filter(|k| !set.contains(k))
        .map(|k| var.a[k - 1])
        .collect();
    missing.sort_unstable();
    missing.dedup();
    head_in && missing.len() == 1
}

/// Compares the average `(ΣV_i + (s+1)W)/(r+s)` against the finitely many
/// subspace averages that can be maximal.
pub fn criterion_maximum(var: &Rank2Variety, nu: &Rational) -> CriterionReport {
    let vol = closed_form_volumes(var, nu);
    let (r, s) = (var.r, var.s);
    let q = |x: usize| Rational::from_integer(x.into());
    let sum_v: Rational = vol.v.iter().sum();
    let fiber = &vol.w * q(s + 1);
    let threshold = (&sum_v + &fiber) / q(r + s);
    let mut terms = vec![
        (vol.v[0].clone(), CriterionCase::FirstRay),
        (&sum_v / q(r), CriterionCase::Base),
        (vol.w.clone(), CriterionCase::FiberRay),
    ];
    for mask in 0u64..(1 << (r + 1)) {
        let set: Vec<usize> = (0..=r).filter(|i| mask >> i & 1 == 1).collect();
        if set.len() >= r || !subset_admissible(var, &set) {
            continue;
        }
        let partial: Rational = set.iter().map(|&i| &vol.v[i]).sum();
        terms.push(((partial + &fiber) / q(set.len() + s), CriterionCase::Subset(set)));
    }
    let mut best = 0;
    for (i, t) in terms.iter().enumerate() {
        if t.0 > terms[best].0 {
            best = i;
        }
    }
    let (max_term, argmax) = terms.swap_remove(best);
    CriterionReport {
        status: StabilityStatus::from_margin(&(&threshold - &max_term)),
        threshold,
        max_term,
        argmax,
    }
}

/// `p(x) = -Σ_{q<s} C(r+s-1, q) x^q + (s(r+1)/r) C(r+s-1, s) x^s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityPolynomial {
    /// Coefficient of `x^q` at index `q`.
    pub coeffs: Vec<Rational>,
}

impl StabilityPolynomial {
    pub fn new(r: usize, s: usize) -> Self {
        let n = (r + s - 1) as u64;
        let mut coeffs: Vec<Rational> = (0..s)
            .map(|q| -Rational::from_integer(binomial(n, q as u64)))
            .collect();
        coeffs.push(
            Rational::new(BigInt::from(s * (r + 1)), BigInt::from(r))
                * Rational::from_integer(binomial(n, s as u64)),
        );
        StabilityPolynomial { coeffs }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn sign_changes(&self) -> usize {
        let signs: Vec<bool> = self
            .coeffs
            .iter()
            .filter(|c| !c.is_zero())
            .map(Signed::is_positive)
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }
}

pub fn stability_polynomial(r: usize, s: usize) -> StabilityPolynomial {
    StabilityPolynomial::new(r, s)
}

/// Rational interval containing the positive root of the stability polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaBracket {
    pub lo: Rational,
    pub hi: Rational,
    pub exact: bool,
}

/// The root `γ` exactly when `s = 1`, otherwise a bisection bracket of
/// width at most `tol`.
pub fn gamma(r: usize, s: usize, tol: &Rational) -> Result<GammaBracket, Rank2Error> {
    if r == 0 || s == 0 {
        return Err(Rank2Error::ZeroRank);
    }
    if !tol.is_positive() {
        return Err(Rank2Error::NonPositive);
    }
    if s == 1 {
        let g = Rational::new(BigInt::one(), BigInt::from(r + 1));
        return Ok(GammaBracket {
            lo: g.clone(),
            hi: g,
            exact: true,
        });
    }
    let p = StabilityPolynomial::new(r, s);
    let mut hi = Rational::one();
    while !p.eval(&hi).is_positive() {
        hi *= Rational::from_integer(2.into());
    }
    let mut lo = Rational::zero();
    let two = Rational::from_integer(2.into());
    while &hi - &lo > *tol {
        let mid = (&lo + &hi) / &two;
        let v = p.eval(&mid);
        if v.is_zero() {
            return Ok(GammaBracket {
                lo: mid.clone(),
                hi: mid,
                exact: true,
            });
        }
        if v.is_positive() {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(GammaBracket {
        lo,
        hi,
        exact: false,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rank2Verdict {
    pub status: StabilityStatus,
    pub nu: Rational,
}

/// Status from the closed-form theorem: only `a = (0,…,0,1)` admits stable
/// polarizations (where `p(μ/λ) < 0`), and `a = 0` is semistable only along
/// the anticanonical ray `(λ, μ) ∝ (r+1, s+1)`.
pub fn classify(var: &Rank2Variety, lambda: &Rational, mu: &Rational) -> Result<Rank2Verdict, Rank2Error> {
    if !lambda.is_positive() || !mu.is_positive() {
        return Err(Rank2Error::NonPositive);
    }
    let nu = mu / lambda;
    let r = var.r;
    let status = if var.a.iter().all(|&x| x == 0) {
        if nu == Rational::new(BigInt::from(var.s + 1), BigInt::from(r + 1)) {
            StabilityStatus::SemistableNotStable
        } else {
            StabilityStatus::Unstable
        }
    } else if var.a[r - 1] == 1 && var.z() == r - 1 {
        let p = StabilityPolynomial::new(r, var.s).eval(&nu);
        StabilityStatus::from_margin(&-p)
    } else {
        StabilityStatus::Unstable
    };
    Ok(Rank2Verdict { status, nu })
}

/// `Σ_{k_0+…+k_r=k} Π C(d_i+k_i, d_i) = C(Σd_i + r + k, k)`, by enumeration.
pub fn binomial_identity_check(d: &[u64], k: usize) -> bool {
    if d.len() < 2 {
        return false;
    }
    let lhs: BigInt = compositions(k, d.len())
        .iter()
        .map(|ks| {
            d.iter()
                .zip(ks)
                .map(|(&di, &ki)| binomial(di + ki as u64, di))
                .product::<BigInt>()
        })
        .sum();
    let total = d.iter().sum::<u64>() + d.len() as u64 - 1 + k as u64;
    lhs == binomial(total, k as u64)
}
