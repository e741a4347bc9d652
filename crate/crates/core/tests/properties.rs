mod common;

use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use toric_stability::exactlin::{canonical_span, frac, int_to_rat, rat, Rational, RationalVector};
use toric_stability::fan::{normal_fan_from_vertices, pullback_divisor, AmpleSampler};
use toric_stability::formats::{fan_to_json, parse_fan};
use toric_stability::klyachko::{restricted_slope, tangent_filtrations};
use toric_stability::polytope::vertices;
use toric_stability::stability::{check_tangent, TangentChecker};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn subdivision_preserves_smooth_complete(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (mut fan, mut d) = common::seed(&mut r);
        for _ in 0..3 {
            (fan, d) = common::subdivide(&mut r, &fan, &d);
            let v = fan.validate();
            prop_assert!(v.smooth && v.complete, "{fan}");
        }
    }

    #[test]
    fn normal_fan_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (fan, d) = common::random_polarized(&mut r, 2);
        let p = vertices(&fan, &d).unwrap();
        let (back, a) = normal_fan_from_vertices(p.vertices()).unwrap();
        prop_assert_eq!(back.n_rays(), fan.n_rays());
        prop_assert_eq!(back.max_cones().len(), fan.max_cones().len());
        for i in 0..fan.n_rays() {
            let j = back.ray_index(fan.ray(i)).expect("ray survives");
            prop_assert_eq!(&a.coeffs[j], &d.coeffs[i]);
        }
    }

    #[test]
    fn pullback_keeps_the_polytope(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (fan, d) = common::random_polarized(&mut r, 1);
        let p = vertices(&fan, &d).unwrap();
        let cone = fan.max_cones()[r.gen_range(0..fan.max_cones().len())].clone();
        let fine = fan.stellar_subdivide(&cone[..2]).unwrap();
        let pulled = pullback_divisor(&fine, &fan, &d).unwrap();
        // every fine coefficient is the tight bound -min_{u ∈ P} <u, v>
        for i in 0..fine.n_rays() {
            let v: Vec<Rational> = fine.ray(i).iter().map(int_to_rat).collect();
            let v = RationalVector(v);
            let min = p.vertices().iter().map(|u| u.dot(&v)).min().unwrap();
            prop_assert_eq!(&pulled.coeffs[i], &-min);
        }
    }

    #[test]
    fn scale_invariance(seed in any::<u64>(), num in 1i64..7, den in 1i64..7) {
        let mut r = rng(seed);
        let (fan, d) = common::random_polarized(&mut r, 2);
        let c = frac(num, den);
        let a = check_tangent(&fan, &d).unwrap();
        let b = check_tangent(&fan, &d.scale(&c)).unwrap();
        prop_assert_eq!(a.status, b.status);
        let n = fan.dim() as i32;
        let factor = num_traits::pow::Pow::pow(&c, n - 1);
        prop_assert_eq!(&a.margin * &factor, b.margin.clone());
        let wa: Vec<_> = a.witnesses.iter().map(|w| w.rays.clone()).collect();
        let wb: Vec<_> = b.witnesses.iter().map(|w| w.rays.clone()).collect();
        prop_assert_eq!(wa, wb);
    }

    #[test]
    fn klyachko_route_agrees(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (fan, d) = common::random_polarized(&mut r, 2);
        let checker = TangentChecker::new(&fan).unwrap();
        let verdict = checker.check(&d).unwrap();
        let family = tangent_filtrations(&fan);
        for e in &verdict.evaluations {
            let w = &checker.candidates()[e.candidate].basis;
            let mu_w = restricted_slope(&family, &verdict.volumes, w).unwrap();
            prop_assert_eq!(&verdict.rhs - mu_w, e.margin.clone());
        }
    }

    #[test]
    fn sampled_ample_divisors_stay_consistent(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (fan, d) = common::random_polarized(&mut r, 1);
        let mut sampler = AmpleSampler::new(&fan, &d).unwrap();
        let family = tangent_filtrations(&fan);
        let checker = TangentChecker::new(&fan).unwrap();
        for _ in 0..3 {
            let s = sampler.sample(&mut r);
            let v = checker.check(&s).unwrap();
            for e in &v.evaluations {
                let w = &checker.candidates()[e.candidate].basis;
                prop_assert_eq!(&v.rhs - restricted_slope(&family, &v.volumes, w).unwrap(), e.margin.clone());
            }
        }
    }

    #[test]
    fn extra_subspaces_never_beat_their_ray_closure(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (fan, d) = common::random_polarized(&mut r, 2);
        let n = fan.dim();
        let v = check_tangent(&fan, &d).unwrap();
        let family = tangent_filtrations(&fan);
        for _ in 0..6 {
            let dim = r.gen_range(1..n);
            let mut gens = Vec::new();
            while gens.len() < dim {
                if r.gen_bool(0.5) {
                    gens.push(fan.ray_rational(r.gen_range(0..fan.n_rays())));
                } else {
                    gens.push(RationalVector((0..n).map(|_| rat(r.gen_range(-3..=3))).collect()));
                }
            }
            let w = canonical_span(n, &gens).unwrap();
            if w.dim() == 0 || w.dim() >= n {
                continue;
            }
            let inside: Vec<usize> = (0..fan.n_rays()).filter(|&i| w.contains_int(fan.ray(i))).collect();
            let lhs_w: Rational = inside.iter().map(|&i| v.volumes.volumes[i].clone()).sum::<Rational>()
                / rat(w.dim() as i64);
            prop_assert_eq!(restricted_slope(&family, &v.volumes, &w).unwrap(), lhs_w.clone());
            prop_assert!(&v.rhs - &lhs_w >= v.margin);
            let closure = canonical_span(n, &inside.iter().map(|&i| fan.ray_rational(i)).collect::<Vec<_>>()).unwrap();
            if closure.dim() > 0 {
                let lhs_c: Rational = inside.iter().map(|&i| v.volumes.volumes[i].clone()).sum::<Rational>()
                    / rat(closure.dim() as i64);
                prop_assert!(lhs_w <= lhs_c);
            } else {
                prop_assert!(lhs_w.is_zero());
            }
        }
    }

    #[test]
    fn witnesses_sorted_and_minimal(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (fan, d) = common::random_polarized(&mut r, 2);
        let v = check_tangent(&fan, &d).unwrap();
        let min = v.evaluations.iter().map(|e| e.margin.clone()).min();
        if let Some(min) = min {
            prop_assert_eq!(&v.margin, &min);
        }
        if let Some(first) = v.witnesses.first() {
            prop_assert_eq!(first.margin(), v.margin.clone());
        }
        for w in v.witnesses.windows(2) {
            prop_assert!((w[0].margin(), &w[0].rays) <= (w[1].margin(), &w[1].rays));
        }
        prop_assert!(v.witnesses.iter().all(|w| !w.margin().is_positive()));
    }

    #[test]
    fn fan_json_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (fan, _) = common::random_polarized(&mut r, 2);
        let once = parse_fan(&fan_to_json(&fan)).unwrap();
        prop_assert_eq!(&once, &fan);
        prop_assert_eq!(fan_to_json(&once), fan_to_json(&fan));
    }

    #[test]
    fn canonical_span_invariants(
        rows in prop::collection::vec(prop::collection::vec(-4i64..=4, 4), 0..6),
        scale in 1i64..5,
    ) {
        let vecs: Vec<RationalVector> = rows.iter().map(|r| RationalVector::from_ints(r)).collect();
        let s = canonical_span(4, &vecs).unwrap();
        let mut rev = vecs.clone();
        rev.reverse();
        prop_assert_eq!(&canonical_span(4, &rev).unwrap(), &s);
        let scaled: Vec<_> = vecs.iter().map(|v| v.scale(&frac(-scale, 3))).collect();
        prop_assert_eq!(&canonical_span(4, &scaled).unwrap(), &s);
        prop_assert_eq!(&canonical_span(4, s.basis()).unwrap(), &s);
        prop_assert!(vecs.iter().all(|v| s.contains(v)));
        let mut doubled = vecs.clone();
        doubled.extend(vecs.iter().cloned());
        prop_assert_eq!(&canonical_span(4, &doubled).unwrap(), &s);
        let perp = s.orthogonal_complement();
        prop_assert_eq!(perp.dim() + s.dim(), 4);
    }
}

#[test]
fn pullback_of_ample_is_nef_not_ample() {
    let mut r = rng(7);
    let (fan, d) = common::seed(&mut r);
    let cone = fan.max_cones()[0].clone();
    let fine = fan.stellar_subdivide(&cone[..2]).unwrap();
    let pulled = pullback_divisor(&fine, &fan, &d).unwrap();
    assert!(toric_stability::fan::is_nef(&fine, &pulled).unwrap());
    assert!(!toric_stability::fan::is_ample(&fine, &pulled).unwrap());
}
