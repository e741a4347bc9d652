#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use toric_stability::corpus::{product_of_lines, projective_space};
use toric_stability::exactlin::{rat, Rational};
use toric_stability::fan::{is_ample, pullback_divisor, Divisor, Fan};
use toric_stability::kleinschmidt::Rank2Variety;

/// A smooth projective seed fan with an ample divisor.
pub fn seed<R: Rng>(rng: &mut R) -> (Fan, Divisor) {
    match rng.gen_range(0..6) {
        0 => {
            let f = projective_space(2);
            (f, Divisor::from_ints(&[1, 1, 1]))
        }
        1 => {
            let f = projective_space(3);
            (f, Divisor::from_ints(&[1, 1, 1, 1]))
        }
        2 => {
            let f = product_of_lines(2);
            let d = Divisor::from_ints(&[1, 1, rng.gen_range(1..4), 1]);
            (f, d)
        }
        3 => {
            let f = product_of_lines(3);
            (f.clone(), Divisor::anticanonical(&f))
        }
        4 => {
            let a = rng.gen_range(0..4);
            let v = Rank2Variety::new(1, 1, vec![a]).unwrap();
            (v.build_fan(), v.divisor(&rat(rng.gen_range(a as i64 + 1..a as i64 + 4)), &rat(1)))
        }
        _ => {
            let v = Rank2Variety::new(2, 1, vec![0, rng.gen_range(0..3)]).unwrap();
            (v.build_fan(), v.divisor(&rat(3), &rat(1)))
        }
    }
}

/// Stellar subdivision of a random face of a random maximal cone, with the
/// divisor `k π*D - E`, `k` doubled until ample.
pub fn subdivide<R: Rng>(rng: &mut R, fan: &Fan, d: &Divisor) -> (Fan, Divisor) {
    let cone = fan.max_cones().choose(rng).unwrap().clone();
    let size = rng.gen_range(2..=cone.len());
    let face: Vec<usize> = cone.choose_multiple(rng, size).copied().collect();
    let fine = fan.stellar_subdivide(&face).unwrap();
    let pulled = pullback_divisor(&fine, fan, d).unwrap();
    let mut e = vec![Rational::from_integer(0.into()); fine.n_rays()];
    *e.last_mut().unwrap() = rat(-1);
    let e = Divisor::new(e);
    let mut k = rat(1);
    loop {
        let cand = pulled.scale(&k).add(&e);
        if is_ample(&fine, &cand).unwrap() {
            return (fine, cand);
        }
        k *= rat(2);
        assert!(k < rat(1 << 20), "no ample class found");
    }
}

pub fn random_polarized<R: Rng>(rng: &mut R, max_subdivisions: usize) -> (Fan, Divisor) {
    let (mut fan, mut d) = seed(rng);
    for _ in 0..rng.gen_range(0..=max_subdivisions) {
        (fan, d) = subdivide(rng, &fan, &d);
    }
    (fan, d)
}
