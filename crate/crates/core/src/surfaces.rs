//! Smooth complete toric surfaces: blow-downs, minimal models, the normal
//! form of surfaces that are not blow-ups of the plane, and the resulting
//! classification of stable polarizations.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::exactlin::{solve, Rational};
use crate::fan::{Divisor, Fan, FanError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("a surface fan needs at least three rays")]
    TooFewRays,
    #[error("fan is not two-dimensional")]
    NotTwoDimensional,
    #[error("ray ({0}, {1}) is zero, repeated or not primitive")]
    BadRay(i64, i64),
    #[error("consecutive rays {0} and {1} do not form a positively oriented lattice basis")]
    NotSmoothComplete(usize, usize),
    #[error("coordinates do not fit in 64 bits")]
    Overflow,
    #[error("blow-down search is capped at {cap} rays, fan has {rays}")]
    SearchCapExceeded { rays: usize, cap: usize },
    #[error("ray {0} cannot be blown down")]
    NotContractible(usize),
    #[error("terminal fan with {0} rays has no (-1)-curve")]
    UnexpectedTerminal(usize),
    #[error(transparent)]
    Fan(#[from] FanError),
}

fn det(u: [i64; 2], v: [i64; 2]) -> i64 {
    u[0] * v[1] - u[1] * v[0]
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn half(v: [i64; 2]) -> u8 {
    if v[1] > 0 || (v[1] == 0 && v[0] > 0) {
        0
    } else {
        1
    }
}

/// Smooth complete fan in the plane, rays sorted counterclockwise by angle
/// from the positive first axis; cone `i` is spanned by rays `i` and `i+1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceFan {
    rays: Vec<[i64; 2]>,
    fan: Fan,
}

impl SurfaceFan {
    pub fn new(rays: &[[i64; 2]]) -> Result<Self, SurfaceError> {
        if rays.len() < 3 {
            return Err(SurfaceError::TooFewRays);
        }
        for (i, r) in rays.iter().enumerate() {
            if gcd(r[0], r[1]) != 1 || rays[..i].contains(r) {
                return Err(SurfaceError::BadRay(r[0], r[1]));
            }
        }
        let mut sorted = rays.to_vec();
        sorted.sort_by(|&u, &v| half(u).cmp(&half(v)).then_with(|| 0.cmp(&det(u, v))));
        let d = sorted.len();
        for i in 0..d {
            if det(sorted[i], sorted[(i + 1) % d]) != 1 {
                return Err(SurfaceError::NotSmoothComplete(i, (i + 1) % d));
            }
        }
        // positive consecutive determinants could still wind around twice
        let turns: i64 = (0..d).filter(|&i| half(sorted[i]) != half(sorted[(i + 1) % d])).count() as i64;
        if turns != 2 {
            return Err(SurfaceError::NotSmoothComplete(0, 1));
        }
        let fan = Fan::from_i64(
            2,
            &sorted.iter().map(|r| r.to_vec()).collect::<Vec<_>>(),
            &(0..d).map(|i| vec![i, (i + 1) % d]).collect::<Vec<_>>(),
        )?;
        Ok(SurfaceFan { rays: sorted, fan })
    }

    pub fn from_fan(fan: &Fan) -> Result<Self, SurfaceError> {
        if fan.dim() != 2 {
            return Err(SurfaceError::NotTwoDimensional);
        }
        fan.require_smooth_complete()?;
        let rays = fan
            .rays()
            .iter()
            .map(|r| {
                Some([r[0].to_i64()?, r[1].to_i64()?])
            })
            .collect::<Option<Vec<_>>>()
            .ok_or(SurfaceError::Overflow)?;
        SurfaceFan::new(&rays)
    }

    pub fn rays(&self) -> &[[i64; 2]] {
        &self.rays
    }

    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn index_of(&self, v: [i64; 2]) -> Option<usize> {
        self.rays.iter().position(|&r| r == v)
    }

    /// `b_i` with `v_{i-1} + v_{i+1} = b_i v_i`; the self-intersection of
    /// the corresponding curve is `-b_i`.
    pub fn b_sequence(&self) -> Vec<i64> {
        b_sequence(&self.rays)
    }

    /// Rays whose curve is a (-1)-curve, i.e. `v_{i-1} + v_{i+1} = v_i`.
    pub fn blow_down_candidates(&self) -> Vec<usize> {
        if self.len() < 4 {
            return Vec::new();
        }
        self.b_sequence()
            .iter()
            .enumerate()
            .filter(|(_, &b)| b == 1)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn blow_down(&self, i: usize) -> Result<SurfaceFan, SurfaceError> {
        if !self.blow_down_candidates().contains(&i) {
            return Err(SurfaceError::NotContractible(i));
        }
        let mut rays = self.rays.clone();
        rays.remove(i);
        SurfaceFan::new(&rays)
    }

    /// Blow-up of the fixed point of cone `i` (between rays `i` and `i+1`).
    pub fn blow_up(&self, i: usize) -> SurfaceFan {
        let (u, v) = (self.rays[i], self.rays[(i + 1) % self.len()]);
        let mut rays = self.rays.clone();
        rays.push([u[0] + v[0], u[1] + v[1]]);
        SurfaceFan::new(&rays).expect("blow-up of a smooth complete fan")
    }

    /// The `b`-sequence, minimized over rotations and reversal; equal for
    /// two fans exactly when they are lattice equivalent.
    pub fn canonical_form(&self) -> Vec<i64> {
        let b = self.b_sequence();
        let d = b.len();
        let mut best: Option<Vec<i64>> = None;
        for seq in [b.clone(), b.iter().rev().copied().collect()] {
            for k in 0..d {
                let rot: Vec<i64> = (0..d).map(|j| seq[(j + k) % d]).collect();
                if best.as_ref().is_none_or(|x| rot < *x) {
                    best = Some(rot);
                }
            }
        }
        best.unwrap()
    }

    /// `a` for a Hirzebruch surface `F_a`.
    pub fn hirzebruch_index(&self) -> Option<u64> {
        if self.len() != 4 {
            return None;
        }
        Some(self.b_sequence().iter().map(|b| b.unsigned_abs()).max().unwrap_or(0))
    }

    /// Intersection numbers `D · D_k`.
    pub fn intersection_numbers(&self, d: &Divisor) -> Vec<Rational> {
        let n = self.len();
        let b = self.b_sequence();
        (0..n)
            .map(|k| {
                &d.coeffs[(k + n - 1) % n] + &d.coeffs[(k + 1) % n]
                    - Rational::from_integer(b[k].into()) * &d.coeffs[k]
            })
            .collect()
    }

    /// An ample divisor: the class with `D · D_k = ℓ_k`, where `ℓ` sums the
    /// relations `v_i + α v_j + β v_{j+1} = 0` obtained by writing each `-v_i`
    /// in its cone. Every `ℓ_k` is positive, so `D` is ample.
    pub fn ample_seed(&self) -> Divisor {
        let n = self.len();
        let mut ell = vec![Rational::zero(); n];
        for i in 0..n {
            let target = [-self.rays[i][0], -self.rays[i][1]];
            for j in 0..n {
                let (u, v) = (self.rays[j], self.rays[(j + 1) % n]);
                // target = α u + β v with det(u, v) = 1
                let alpha = det(target, v);
                let beta = det(u, target);
                if alpha >= 0 && beta >= 0 {
                    ell[i] += Rational::from_integer(1.into());
                    ell[j] += Rational::from_integer(alpha.into());
                    ell[(j + 1) % n] += Rational::from_integer(beta.into());
                    break;
                }
            }
        }
        // D·D_k = a_{k-1} + a_{k+1} - b_k a_k, normalized by a_0 = a_1 = 0
        let b = self.b_sequence();
        let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(n);
        let mut rhs = Vec::with_capacity(n);
        for k in 2..n {
            let mut row = vec![Rational::zero(); n];
            row[(k + n - 1) % n] += Rational::from_integer(1.into());
            row[(k + 1) % n] += Rational::from_integer(1.into());
            row[k] -= Rational::from_integer(b[k].into());
            rows.push(row);
            rhs.push(ell[k].clone());
        }
        for k in 0..2 {
            let mut row = vec![Rational::zero(); n];
            row[k] = Rational::from_integer(1.into());
            rows.push(row);
            rhs.push(Rational::zero());
        }
        let a = solve(&rows, &rhs).expect("intersection form restricted to a complement of principal divisors is invertible");
        Divisor::new(a)
    }
}

impl fmt::Display for SurfaceFan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.rays.iter().map(|r| format!("({},{})", r[0], r[1])).collect();
        f.write_str(&parts.join(" "))
    }
}

fn b_sequence(rays: &[[i64; 2]]) -> Vec<i64> {
    let d = rays.len();
    (0..d)
        .map(|i| {
            let (p, v, q) = (rays[(i + d - 1) % d], rays[i], rays[(i + 1) % d]);
            let sum = [p[0] + q[0], p[1] + q[1]];
            if v[0] != 0 {
                sum[0] / v[0]
            } else {
                sum[1] / v[1]
            }
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Terminal {
    P2,
    Hirzebruch(u64),
}

impl fmt::Display for Terminal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Terminal::P2 => f.write_str("P2"),
            Terminal::Hirzebruch(a) => write!(f, "F{a}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalModels {
    pub terminals: BTreeSet<Terminal>,
    /// Rays removed (as indices of the input fan) along one route to `P2`.
    pub path_to_p2: Option<Vec<usize>>,
}

pub const DEFAULT_RAY_CAP: usize = 16;

pub fn minimal_models(sf: &SurfaceFan) -> Result<MinimalModels, SurfaceError> {
    minimal_models_with_cap(sf, DEFAULT_RAY_CAP)
}

/// Breadth-first search over all sequences of blow-downs, memoized on the
/// set of surviving rays.
pub fn minimal_models_with_cap(sf: &SurfaceFan, cap: usize) -> Result<MinimalModels, SurfaceError> {
    let d = sf.len();
    if d > cap || d > 63 {
        return Err(SurfaceError::SearchCapExceeded { rays: d, cap });
    }
    let full: u64 = (1u64 << d) - 1;
    let mut seen: HashSet<u64> = HashSet::from([full]);
    let mut queue: VecDeque<(u64, Vec<usize>)> = VecDeque::from([(full, Vec::new())]);
    let mut terminals = BTreeSet::new();
    let mut path_to_p2 = None;
    while let Some((mask, path)) = queue.pop_front() {
        let idx: Vec<usize> = (0..d).filter(|i| mask >> i & 1 == 1).collect();
        let rays: Vec<[i64; 2]> = idx.iter().map(|&i| sf.rays[i]).collect();
        let b = b_sequence(&rays);
        let contractible: Vec<usize> = if rays.len() >= 4 {
            (0..rays.len()).filter(|&k| b[k] == 1).collect()
        } else {
            Vec::new()
        };
        if contractible.is_empty() {
            let t = match rays.len() {
                3 => Terminal::P2,
                4 => Terminal::Hirzebruch(b.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0)),
                other => return Err(SurfaceError::UnexpectedTerminal(other)),
            };
            if t == Terminal::P2 && path_to_p2.is_none() {
                path_to_p2 = Some(path.clone());
            }
            terminals.insert(t);
            continue;
        }
        for k in contractible {
            let next = mask & !(1u64 << idx[k]);
            if seen.insert(next) {
                let mut p = path.clone();
                p.push(idx[k]);
                queue.push_back((next, p));
            }
        }
    }
    Ok(MinimalModels {
        terminals,
        path_to_p2,
    })
}

/// Normal form `(0,1), (1,0), …, (1,-e), (0,-1), (-1,c), …, (-1,a)` (clockwise).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lemma32Match {
    pub a: i64,
    pub c: i64,
    pub e: i64,
    /// Index of the ray sent to `(0,1)`.
    pub v1: usize,
    /// Index of the ray sent to `(1,0)`.
    pub v2: usize,
    /// Unimodular matrix `M` (rows) with `M v1 = (0,1)`, `M v2 = (1,0)`.
    pub basis: [[i64; 2]; 2],
}

fn apply(m: [[i64; 2]; 2], v: [i64; 2]) -> [i64; 2] {
    [m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]]
}

fn in_cone(x: [i64; 2], u: [i64; 2], v: [i64; 2]) -> bool {
    // x = α u + β v with α, β >= 0; u, v may coincide
    if u == v {
        return det(u, x) == 0 && u[0] * x[0] + u[1] * x[1] > 0;
    }
    let d = det(u, v);
    let alpha = det(x, v) * d.signum();
    let beta = det(u, x) * d.signum();
    alpha >= 0 && beta >= 0
}

/// Searches for the normal form of a surface that blows down to neither
/// `P^2` nor `P^1 × P^1`. Candidates for `(0,1)` are tried by ascending ray
/// index; for each, the clockwise neighbor is tried as `(1,0)` before the
/// counterclockwise one.
pub fn lemma32_match(sf: &SurfaceFan) -> Option<Lemma32Match> {
    let d = sf.len();
    if d < 4 {
        return None;
    }
    let r = &sf.rays;
    for i in 0..d {
        let Some(j) = sf.index_of([-r[i][0], -r[i][1]]) else {
            continue;
        };
        // step = -1 walks clockwise through the counterclockwise-sorted list
        for step in [d - 1, 1] {
            let back = d - step;
            let i2 = (i + step) % d;
            let (v1, v2) = (r[i], r[i2]);
            // M maps v2 ↦ e1, v1 ↦ e2: M = [v2 v1]^{-1}
            let dt = det(v2, v1);
            let m = [[v1[1] * dt, -v1[0] * dt], [-v2[1] * dt, v2[0] * dt]];
            let w = |k: usize| apply(m, r[k % d]);
            let w0 = w(i + back);
            let before_l = w(j + back);
            let after_l = w(j + step);
            if w0[0] != -1 || after_l[0] != -1 || before_l[0] != 1 {
                continue;
            }
            let (a, c, e) = (w0[1], after_l[1], -before_l[1]);
            if !(a >= c && c > e + 1 && e + 1 >= 1) {
                continue;
            }
            let special = [i, i2, j, (j + back) % d, (j + step) % d, (i + back) % d];
            let others_ok = (0..d).filter(|k| !special.contains(k)).all(|k| {
                let x = w(k);
                in_cone(x, [-1, c], [-1, a]) || in_cone(x, [1, 0], [1, -e])
            });
            if others_ok {
                return Some(Lemma32Match {
                    a,
                    c,
                    e,
                    v1: i,
                    v2: i2,
                    basis: m,
                });
            }
        }
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SurfaceKind {
    P2,
    P1xP1,
    BlowupOfP2,
    NotBlowupOfP2,
}

impl fmt::Display for SurfaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SurfaceKind::P2 => "P2",
            SurfaceKind::P1xP1 => "P1xP1",
            SurfaceKind::BlowupOfP2 => "BlowupOfP2",
            SurfaceKind::NotBlowupOfP2 => "NotBlowupOfP2",
        })
    }
}

/// Shape of the set of stabilizing ample classes inside the ample cone.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StabProfile {
    /// Stable for every ample class.
    StabAll,
    /// Never stable, semistable for some classes.
    SemistableOnly,
    /// Stable for some but not all ample classes.
    StabProperNonempty,
    /// Never stable.
    StabEmpty,
}

impl fmt::Display for StabProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StabProfile::StabAll => "StabAll",
            StabProfile::SemistableOnly => "SemistableOnly",
            StabProfile::StabProperNonempty => "StabProperNonempty",
            StabProfile::StabEmpty => "StabEmpty",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceClass {
    pub kind: SurfaceKind,
    pub stab_profile: StabProfile,
    pub lemma32: Option<Lemma32Match>,
    pub terminals: BTreeSet<Terminal>,
}

pub fn classify_surface(sf: &SurfaceFan) -> Result<SurfaceClass, SurfaceError> {
    let models = minimal_models(sf)?;
    let kind = if sf.len() == 3 {
        SurfaceKind::P2
    } else if sf.hirzebruch_index() == Some(0) {
        SurfaceKind::P1xP1
    } else if models.terminals.contains(&Terminal::P2) {
        SurfaceKind::BlowupOfP2
    } else {
        SurfaceKind::NotBlowupOfP2
    };
    let stab_profile = match kind {
        SurfaceKind::P2 => StabProfile::StabAll,
        SurfaceKind::P1xP1 => StabProfile::SemistableOnly,
        SurfaceKind::BlowupOfP2 => StabProfile::StabProperNonempty,
        SurfaceKind::NotBlowupOfP2 => StabProfile::StabEmpty,
    };
    let lemma32 = if kind == SurfaceKind::NotBlowupOfP2 {
        lemma32_match(sf)
    } else {
        None
    };
    Ok(SurfaceClass {
        kind,
        stab_profile,
        lemma32,
        terminals: models.terminals,
    })
}

/// Standard seeds.
pub fn projective_plane() -> SurfaceFan {
    SurfaceFan::new(&[[1, 0], [0, 1], [-1, -1]]).unwrap()
}

pub fn hirzebruch(a: i64) -> SurfaceFan {
    SurfaceFan::new(&[[1, 0], [0, 1], [-1, a], [0, -1]]).unwrap()
}

/// All surfaces with at most `max_rays` rays obtained from `seeds` by
/// repeated blow-ups of fixed points, one representative per lattice
/// equivalence class, in discovery order.
pub fn blowup_closure(seeds: &[SurfaceFan], max_rays: usize) -> Vec<SurfaceFan> {
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut out = Vec::new();
    let mut queue: VecDeque<SurfaceFan> = VecDeque::new();
    for s in seeds {
        if s.len() <= max_rays && seen.insert(s.canonical_form()) {
            queue.push_back(s.clone());
        }
    }
    while let Some(s) = queue.pop_front() {
        if s.len() < max_rays {
            for i in 0..s.len() {
                let t = s.blow_up(i);
                if seen.insert(t.canonical_form()) {
                    queue.push_back(t);
                }
            }
        }
        out.push(s);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::is_ample;

    fn bl2p2() -> SurfaceFan {
        SurfaceFan::new(&[[1, 0], [0, 1], [-1, 0], [-1, -1], [0, -1]]).unwrap()
    }

    #[test]
    fn sorting_and_validation() {
        let f1 = SurfaceFan::new(&[[-1, 0], [1, 0], [1, -1], [0, 1]]).unwrap();
        assert_eq!(f1.rays(), &[[1, 0], [0, 1], [-1, 0], [1, -1]]);
        assert_eq!(f1.b_sequence(), vec![1, 0, -1, 0]);
        let f1 = SurfaceFan::new(&[[1, 0], [0, 1], [-1, -1], [1, 1]]).unwrap();
        assert_eq!(f1.rays(), &[[1, 0], [1, 1], [0, 1], [-1, -1]]);
        assert!(f1.fan().is_smooth_complete());
        assert_eq!(SurfaceFan::new(&[[1, 0], [0, 1]]), Err(SurfaceError::TooFewRays));
        assert!(matches!(
            SurfaceFan::new(&[[1, 0], [0, 1], [-1, -2]]),
            Err(SurfaceError::NotSmoothComplete(..))
        ));
    }

    #[test]
    fn blow_down_examples() {
        let f1 = hirzebruch(1);
        let c = f1.blow_down_candidates();
        assert_eq!(c.len(), 1);
        assert_eq!(f1.rays()[c[0]], [0, 1]);
        let g = SurfaceFan::new(&[[-1, 0], [1, 0], [1, -1], [0, 1]]).unwrap();
        assert_eq!(g.blow_down_candidates(), vec![0]);
        assert_eq!(g.blow_down(0).unwrap().len(), 3);
        assert_eq!(g.blow_down(1), Err(SurfaceError::NotContractible(1)));
        assert!(hirzebruch(0).blow_down_candidates().is_empty());
        assert!(hirzebruch(2).blow_down_candidates().is_empty());
        assert!(projective_plane().blow_down_candidates().is_empty());
    }

    #[test]
    fn minimal_model_examples() {
        let m = minimal_models(&hirzebruch(1)).unwrap();
        assert_eq!(m.terminals, BTreeSet::from([Terminal::P2]));
        let m = minimal_models(&bl2p2()).unwrap();
        assert!(m.terminals.contains(&Terminal::P2));
        assert_eq!(m.path_to_p2.unwrap().len(), 2);
        let m = minimal_models(&hirzebruch(2)).unwrap();
        assert_eq!(m.terminals, BTreeSet::from([Terminal::Hirzebruch(2)]));
        let big = blowup_closure(&[projective_plane()], 6).pop().unwrap();
        assert!(matches!(
            minimal_models_with_cap(&big, 4),
            Err(SurfaceError::SearchCapExceeded { .. })
        ));
    }

    #[test]
    fn lemma32_examples() {
        let m = lemma32_match(&hirzebruch(2)).unwrap();
        assert_eq!((m.a, m.c, m.e), (2, 2, 0));
        assert_eq!(hirzebruch(2).rays()[m.v1], [0, 1]);
        assert!(lemma32_match(&hirzebruch(1)).is_none());
        assert!(lemma32_match(&bl2p2()).is_none());
        assert!(lemma32_match(&hirzebruch(0)).is_none());
        let m = lemma32_match(&hirzebruch(3)).unwrap();
        assert_eq!((m.a, m.c, m.e), (3, 3, 0));
    }

    #[test]
    fn classification_examples() {
        let c = classify_surface(&projective_plane()).unwrap();
        assert_eq!((c.kind, c.stab_profile), (SurfaceKind::P2, StabProfile::StabAll));
        let c = classify_surface(&hirzebruch(0)).unwrap();
        assert_eq!((c.kind, c.stab_profile), (SurfaceKind::P1xP1, StabProfile::SemistableOnly));
        let c = classify_surface(&hirzebruch(1)).unwrap();
        assert_eq!(c.kind, SurfaceKind::BlowupOfP2);
        for s in [hirzebruch(2), hirzebruch(2).blow_up(0)] {
            let c = classify_surface(&s).unwrap();
            assert_eq!((c.kind, c.stab_profile), (SurfaceKind::NotBlowupOfP2, StabProfile::StabEmpty));
            assert!(c.lemma32.is_some());
        }
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(hirzebruch(1).canonical_form(), vec![-1, 0, 1, 0]);
        assert_eq!(
            SurfaceFan::new(&[[1, 0], [0, 1], [-1, -1], [1, 1]]).unwrap().canonical_form(),
            hirzebruch(1).canonical_form()
        );
        assert_ne!(hirzebruch(2).canonical_form(), hirzebruch(0).canonical_form());
        // P2 has one class for each number of blow-ups up to 3 rays... 4: F1 only
        let four: Vec<_> = blowup_closure(&[projective_plane()], 4);
        assert_eq!(four.len(), 2);
    }

    #[test]
    fn seeds_are_ample() {
        for s in blowup_closure(&[projective_plane(), hirzebruch(0), hirzebruch(2), hirzebruch(3)], 7) {
            let d = s.ample_seed();
            assert!(is_ample(s.fan(), &d).unwrap(), "{s}");
            assert!(s.intersection_numbers(&d).iter().all(|x| x > &Rational::zero()));
        }
    }
}
