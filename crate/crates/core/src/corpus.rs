//! Built-in examples with known verdicts.

use num_traits::One;

use crate::exactlin::{frac, rat, Rational, RationalVector};
use crate::fan::{normal_fan_from_vertices, Divisor, Fan, FanError};
use crate::kleinschmidt::Rank2Variety;
use crate::polytope::{vertices, Polytope, PolytopeError};
use crate::stability::{check_tangent, AffineSlice, StabilityError, StabilityStatus, StabilityVerdict};

#[derive(Clone, Debug)]
pub enum ExampleInput {
    FanDivisor { fan: Fan, divisor: Divisor },
    Vertices(Vec<RationalVector>),
}

#[derive(Clone, Debug)]
pub struct ExampleRecord {
    pub name: String,
    pub note: String,
    pub input: ExampleInput,
    pub expected: StabilityStatus,
}

impl ExampleRecord {
    pub fn resolve(&self) -> Result<(Fan, Divisor), FanError> {
        match &self.input {
            ExampleInput::FanDivisor { fan, divisor } => Ok((fan.clone(), divisor.clone())),
            ExampleInput::Vertices(v) => normal_fan_from_vertices(v),
        }
    }

    pub fn polytope(&self) -> Result<Polytope, PolytopeError> {
        let (fan, d) = self.resolve()?;
        vertices(&fan, &d)
    }

    pub fn run(&self) -> Result<StabilityVerdict, StabilityError> {
        let (fan, d) = self.resolve()?;
        check_tangent(&fan, &d)
    }
}

/// `P^n` with rays `e_1, …, e_n, -(e_1+…+e_n)`; ray `i` is omitted from cone `i`.
pub fn projective_space(n: usize) -> Fan {
    let mut rays: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    rays.push(vec![-1; n]);
    let cones: Vec<Vec<usize>> = (0..=n).map(|k| (0..=n).filter(|&i| i != k).collect()).collect();
    Fan::from_i64(n, &rays, &cones).expect("standard fan")
}

/// `(P^1)^k` with rays `e_1, -e_1, e_2, -e_2, …`.
pub fn product_of_lines(k: usize) -> Fan {
    let mut rays = Vec::new();
    for i in 0..k {
        for sign in [1, -1] {
            rays.push((0..k).map(|j| if i == j { sign } else { 0 }).collect::<Vec<i64>>());
        }
    }
    let cones = (0..1usize << k)
        .map(|mask| (0..k).map(|i| 2 * i + (mask >> i & 1)).collect())
        .collect::<Vec<Vec<usize>>>();
    Fan::from_i64(k, &rays, &cones).expect("product fan")
}

fn surface(rays: &[[i64; 2]]) -> Fan {
    let d = rays.len();
    Fan::from_i64(
        2,
        &rays.iter().map(|r| r.to_vec()).collect::<Vec<_>>(),
        &(0..d).map(|i| vec![i, (i + 1) % d]).collect::<Vec<_>>(),
    )
    .expect("cyclic surface fan")
}

pub fn blowup_p2_one_point() -> Fan {
    surface(&[[1, 0], [1, 1], [0, 1], [-1, -1]])
}

pub fn blowup_p2_two_points() -> Fan {
    surface(&[[1, 0], [0, 1], [-1, 0], [-1, -1], [0, -1]])
}

pub fn hexagon_surface() -> Fan {
    surface(&[[1, 0], [1, 1], [0, 1], [-1, 0], [-1, -1], [0, -1]])
}

/// `F_2`, the smallest surface that is a blow-up of neither `P^2` nor
/// `P^1 × P^1`; rays `(1,0), (0,1), (-1,2), (0,-1)`.
pub fn normal_form_surface() -> Fan {
    surface(&[[1, 0], [0, 1], [-1, 2], [0, -1]])
}

/// Vertices of the anticanonical polytope of the blow-up of
/// `P_{P^1×P^1}(O ⊕ O(1,1))` along a line.
pub fn fano_threefold_vertices() -> Vec<RationalVector> {
    [
        [0, -1, -1],
        [-1, -1, -1],
        [-1, 0, -1],
        [0, 0, -1],
        [-1, -1, 0],
        [1, -1, 0],
        [-1, 2, 1],
        [-1, 0, 1],
        [2, 0, 1],
        [2, 2, 1],
    ]
    .iter()
    .map(|v| RationalVector::from_ints(v))
    .collect()
}

/// Blow-up of `P^3` in a point and then in the strict transform of a line
/// through it. Ray order: `ρ0 = (0,0,1)`, `-ρ0`, `ρ1 = (0,1,0)`,
/// `ρ2 = (0,-1,1)`, `ρ3 = (1,0,0)`, `ρ4 = (-1,1,0)`.
pub fn iterated_blowup_fan() -> Fan {
    Fan::from_i64(
        3,
        &[
            vec![0, 0, 1],
            vec![0, 0, -1],
            vec![0, 1, 0],
            vec![0, -1, 1],
            vec![1, 0, 0],
            vec![-1, 1, 0],
        ],
        &[
            vec![1, 3, 4],
            vec![1, 3, 5],
            vec![1, 4, 2],
            vec![1, 5, 2],
            vec![0, 3, 4],
            vec![0, 3, 5],
            vec![0, 4, 2],
            vec![0, 5, 2],
        ],
    )
    .expect("iterated blow-up fan")
}

/// `(ν1, ν2) ↦ H + ν1 (H - E1) - ν2 E2` on [`iterated_blowup_fan`]; ample
/// exactly when `ν1 > ν2 > 0`.
pub fn iterated_blowup_slice() -> AffineSlice {
    let ints = |v: [i64; 6]| v.iter().map(|&x| rat(x)).collect::<Vec<_>>();
    AffineSlice {
        base: ints([0, 1, 0, 0, 0, 0]),
        dir1: ints([-1, 1, 0, 0, 0, 0]),
        dir2: ints([0, 0, -1, 0, 0, 0]),
    }
}

/// Facet volumes of the iterated blow-up in ray order, as polynomials in `(ν1, ν2)`.
pub fn iterated_blowup_volumes(nu1: &Rational, nu2: &Rational) -> Vec<Rational> {
    let one = Rational::one();
    let two = rat(2);
    let big = (&one + nu1) * (&one + nu1);
    let side = &big - nu1 * nu1;
    vec![
        nu1 * nu1 - nu2 * nu2,
        &big - nu2 * nu2,
        &two * nu2,
        side.clone(),
        &side - &two * nu2,
        &side - &two * nu2,
    ]
}

/// The two quadrics whose positivity cuts out the stable region of the
/// iterated blow-up: the first governs `span(ρ0)`, the second
/// `span(ρ0, ρ1, ρ2)`.
pub fn iterated_blowup_inequalities(nu1: &Rational, nu2: &Rational) -> (Rational, Rational) {
    let third = frac(1, 3);
    let sq = (Rational::one() + nu1) * (Rational::one() + nu1);
    let f1 = &third * &sq - frac(5, 3) * nu1 * nu1 + frac(4, 3) * nu2 * nu2 - frac(2, 3) * nu2;
    let f2 = &third * &sq - frac(2, 3) * nu1 * nu1 + &third * nu2 * nu2 - frac(5, 3) * nu2;
    (f1, f2)
}

fn record(name: impl Into<String>, note: &str, fan: Fan, divisor: Divisor, expected: StabilityStatus) -> ExampleRecord {
    ExampleRecord {
        name: name.into(),
        note: note.into(),
        input: ExampleInput::FanDivisor { fan, divisor },
        expected,
    }
}

pub fn corpus() -> Vec<ExampleRecord> {
    use StabilityStatus::*;
    let mut out = Vec::new();
    for n in 1..=4 {
        let fan = projective_space(n);
        for d in 1..=3i64 {
            let mut coeffs = vec![0; n + 1];
            coeffs[n] = d;
            out.push(record(
                format!("p{n}-o{d}"),
                "projective space, hyperplane multiple",
                fan.clone(),
                Divisor::from_ints(&coeffs),
                Stable,
            ));
        }
    }
    // Hirzebruch surfaces through the rank-two construction, polarized by λ D_{v0} + μ D_{w0}
    let hirzebruch: [(u64, i64, i64, StabilityStatus); 9] = [
        (0, 1, 1, SemistableNotStable),
        (0, 2, 1, Unstable),
        (1, 3, 1, Stable),
        (1, 2, 1, SemistableNotStable),
        (1, 1, 1, Unstable),
        (2, 3, 1, Unstable),
        (2, 1, 2, Unstable),
        (3, 4, 1, Unstable),
        (3, 7, 2, Unstable),
    ];
    for (a, l, m, expected) in hirzebruch {
        let var = Rank2Variety::new(1, 1, vec![a]).expect("valid twist");
        out.push(record(
            format!("f{a}-l{l}-m{m}"),
            "Hirzebruch surface; stable iff a = 1 and 2μ < λ",
            var.build_fan(),
            var.divisor(&rat(l), &rat(m)),
            expected,
        ));
    }
    let p1xp1 = product_of_lines(2);
    out.push(record(
        "p1xp1",
        "anticanonical; equal slopes on both rulings",
        p1xp1.clone(),
        Divisor::anticanonical(&p1xp1),
        SemistableNotStable,
    ));
    out.push(record(
        "p1xp1-unbalanced",
        "the ruling with the smaller coefficient destabilizes",
        p1xp1,
        Divisor::from_ints(&[1, 1, 2, 2]),
        Unstable,
    ));
    let bl1 = blowup_p2_one_point();
    out.push(record(
        "bl1p2",
        "anticanonical blow-up of the plane in one point; on the boundary 2μ = λ",
        bl1.clone(),
        Divisor::anticanonical(&bl1),
        SemistableNotStable,
    ));
    let bl2 = blowup_p2_two_points();
    out.push(record(
        "bl2p2",
        "anticanonical blow-up of the plane in two points",
        bl2.clone(),
        Divisor::anticanonical(&bl2),
        Stable,
    ));
    let hex = hexagon_surface();
    out.push(record(
        "dp6",
        "anticanonical hexagon",
        hex.clone(),
        Divisor::anticanonical(&hex),
        Stable,
    ));
    out.push(record(
        "normal-form-220",
        "F_2 with an ample class; span of the (0,1) ray destabilizes",
        normal_form_surface(),
        Divisor::from_ints(&[0, 0, 1, 1]),
        Unstable,
    ));
    let cube = product_of_lines(3);
    out.push(record(
        "p1xp1xp1",
        "anticanonical triple product",
        cube.clone(),
        Divisor::anticanonical(&cube),
        SemistableNotStable,
    ));
    out.push(ExampleRecord {
        name: "fano3fold-10".into(),
        note: "anticanonical polytope with 10 vertices; blow-up of a line in a P^1-bundle over P^1×P^1. \
               The relative tangent sheaf of the projection to the first coordinate destabilizes (margin -1/3)"
            .into(),
        input: ExampleInput::Vertices(fano_threefold_vertices()),
        expected: Unstable,
    });
    let fan = iterated_blowup_fan();
    let slice = iterated_blowup_slice();
    out.push(record(
        "p3-point-line-unstable",
        "iterated blow-up of P^3 at (ν1, ν2) = (1, 1/2); both quadrics negative",
        fan.clone(),
        slice.at(&rat(1), &frac(1, 2)),
        Unstable,
    ));
    out.push(record(
        "p3-point-line-stable",
        "iterated blow-up of P^3 at (ν1, ν2) = (1/5, 1/10); both quadrics positive",
        fan,
        slice.at(&frac(1, 5), &frac(1, 10)),
        Stable,
    ));
    out
}

pub fn find(name: &str) -> Option<ExampleRecord> {
    corpus().into_iter().find(|r| r.name == name)
}
