//! Polytopes of ample divisors: vertices, facet volumes, barycenter.

use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::exactlin::{HyperplaneChart, LinAlgError, Rational, RationalVector};
use crate::fan::{ample_violation, normal_fan_from_vertices, Divisor, Fan, FanError};
use crate::hull::{self, HullError};

pub use crate::hull::normalized_volume;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolytopeError {
    #[error("divisor is not ample: cone {cone} violates strict convexity at ray {ray}")]
    NotAmple { cone: usize, ray: usize },
    #[error(transparent)]
    Fan(#[from] FanError),
    #[error(transparent)]
    Hull(#[from] HullError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

/// The polytope `{u : <u, v_ρ> >= -a_ρ}` of an ample divisor on a smooth
/// complete fan, with one vertex per maximal cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polytope {
    fan: Fan,
    divisor: Divisor,
    vertices: Vec<RationalVector>,
}

/// Normalized lattice volume of each facet, indexed by ray, and their sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetVolumeTable {
    pub volumes: Vec<Rational>,
    pub total: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BarycenterReport {
    pub barycenter: RationalVector,
    pub reflexive: bool,
}

/// Vertices of the polytope of `d`. Fails unless the fan is smooth and
/// complete and `d` is ample.
pub fn vertices(fan: &Fan, d: &Divisor) -> Result<Polytope, PolytopeError> {
    fan.require_smooth_complete()?;
    d.check_len(fan)?;
    if let Some((cone, ray)) = ample_violation(fan, d)? {
        return Err(PolytopeError::NotAmple { cone, ray });
    }
    let solver = fan.solver()?;
    let vertices = (0..fan.max_cones().len())
        .map(|c| solver.vertex(fan, c, &d.coeffs))
        .collect();
    Ok(Polytope {
        fan: fan.clone(),
        divisor: d.clone(),
        vertices,
    })
}

impl Polytope {
    /// Polytope given by its vertices; the normal fan must be smooth.
    pub fn from_vertices(points: &[RationalVector]) -> Result<Polytope, PolytopeError> {
        let (fan, d) = normal_fan_from_vertices(points)?;
        vertices(&fan, &d)
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn divisor(&self) -> &Divisor {
        &self.divisor
    }

    pub fn dim(&self) -> usize {
        self.fan.dim()
    }

    /// Vertex of each maximal cone, in cone order.
    pub fn vertices(&self) -> &[RationalVector] {
        &self.vertices
    }

    /// Vertices of the facet orthogonal to ray `ray`.
    pub fn facet_vertices(&self, ray: usize) -> Vec<RationalVector> {
        let mut out: Vec<RationalVector> = Vec::new();
        for (c, cone) in self.fan.max_cones().iter().enumerate() {
            if cone.contains(&ray) && !out.contains(&self.vertices[c]) {
                out.push(self.vertices[c].clone());
            }
        }
        out
    }

    /// Normalized volume of the facet of `ray` in the lattice of its hyperplane.
    pub fn facet_volume(&self, ray: usize) -> Result<Rational, PolytopeError> {
        let pts = self.facet_vertices(ray);
        let chart = HyperplaneChart::new(self.fan.ray(ray))?;
        let local: Vec<Vec<Rational>> = pts
            .iter()
            .map(|p| chart.coordinates(&p.sub(&pts[0]).0))
            .collect();
        Ok(hull::lattice_volume_full(&local)?)
    }

    pub fn facet_volume_table(&self) -> Result<FacetVolumeTable, PolytopeError> {
        let volumes = (0..self.fan.n_rays())
            .into_par_iter()
            .map(|r| self.facet_volume(r))
            .collect::<Result<Vec<_>, _>>()?;
        let total = volumes.iter().sum();
        Ok(FacetVolumeTable { volumes, total })
    }

    pub fn volume(&self) -> Result<Rational, PolytopeError> {
        let pts: Vec<Vec<Rational>> = self.vertices.iter().map(|v| v.0.clone()).collect();
        Ok(hull::lattice_volume_full(&pts)?)
    }

    /// Barycenter from a triangulation, and whether the polytope is reflexive
    /// (every facet at lattice distance one from the origin).
    pub fn barycenter_and_reflexivity(&self) -> Result<BarycenterReport, PolytopeError> {
        let n = self.dim();
        let pts: Vec<Vec<Rational>> = self.vertices.iter().map(|v| v.0.clone()).collect();
        let mut weighted = vec![Rational::zero(); n];
        let mut total = Rational::zero();
        for simplex in hull::triangulate_full(&pts)? {
            let verts: Vec<&Vec<Rational>> = simplex.iter().map(|&i| &pts[i]).collect();
            let w = hull::simplex_volume(&verts);
            for v in &verts {
                for (acc, x) in weighted.iter_mut().zip(v.iter()) {
                    *acc += &w * x;
                }
            }
            total += w;
        }
        let denom = total * Rational::from_integer((n as i64 + 1).into());
        let barycenter = RationalVector(weighted.into_iter().map(|x| x / &denom).collect());
        let reflexive = self.divisor.coeffs.iter().all(One::is_one);
        Ok(BarycenterReport {
            barycenter,
            reflexive,
        })
    }
}

/// Facet volume table of `d` on `fan`.
pub fn facet_volume_table(fan: &Fan, d: &Divisor) -> Result<FacetVolumeTable, PolytopeError> {
    vertices(fan, d)?.facet_volume_table()
}
