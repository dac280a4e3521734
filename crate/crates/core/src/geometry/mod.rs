//! Varieties with parametrizations, tangent spaces, projections and secant ideals.

mod param;
mod secant;
mod space;

pub use param::{point_on_hypersurface, point_on_plane_curve, Parametrization, MAX_RETRIES};
pub use secant::{
    secant_ideal, secant_ideal_elim, secant_ideal_interp, terracini_codim, InterpOptions, InterpOutcome, SecantIdeal,
    SecantRoute, StopReason,
};
pub use space::{independent_prefix, Frame, LinearSpace};

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::ring::{PointProj, Ring};
use rand::Rng;

/// A projective variety given by its homogeneous ideal, optionally with a
/// parametrization for sampling general points.
#[derive(Clone, Debug)]
pub struct Variety {
    pub ideal: Ideal,
    pub param: Option<Parametrization>,
    pub label: String,
}

impl Variety {
    pub fn new(ideal: Ideal, param: Option<Parametrization>, label: impl Into<String>) -> Self {
        Variety { ideal, param, label: label.into() }
    }

    pub fn ring(&self) -> Ring {
        self.ideal.ring()
    }

    /// Number of homogeneous coordinates (r + 1).
    pub fn nvars(&self) -> usize {
        self.ring().nvars
    }

    fn param(&self) -> Result<&Parametrization> {
        self.param
            .as_ref()
            .ok_or_else(|| Error::InvalidInput(format!("{} has no parametrization", self.label)))
    }

    pub fn contains_point(&self, z: &[u32]) -> bool {
        self.ideal.gens().iter().all(|g| g.evaluate(z) == 0)
    }

    /// A general point; every generator is checked to vanish on it.
    pub fn sample_point<R: Rng>(&self, rng: &mut R) -> Result<PointProj> {
        self.sample_point_avoiding(rng, &|_| false)
    }

    pub fn sample_point_avoiding<R: Rng>(&self, rng: &mut R, reject: &dyn Fn(&[u32]) -> bool) -> Result<PointProj> {
        let v = self.param()?.sample(rng, reject)?;
        if !self.contains_point(&v) {
            return Err(Error::Mismatch(format!("sampled point of {} fails its ideal", self.label)));
        }
        PointProj::new(&self.ring().field, v)
    }

    /// A general point of the span of q general points.
    pub fn sample_secant_point<R: Rng>(&self, q: usize, rng: &mut R) -> Result<PointProj> {
        let f = self.ring().field;
        let n = self.nvars();
        for _ in 0..MAX_RETRIES {
            let mut w = vec![0u32; n];
            for _ in 0..q {
                let z = self.sample_point(rng)?;
                let c = rng.gen_range(1..f.p().max(2));
                for (wi, &zi) in w.iter_mut().zip(z.coords()) {
                    *wi = f.add(*wi, f.mul(c, zi));
                }
            }
            if w.iter().any(|&c| c != 0) {
                return PointProj::new(&f, w);
            }
        }
        Err(Error::RetryExhausted(MAX_RETRIES))
    }

    /// Projective tangent space V(Jac(gens)(z)·x).
    pub fn tangent_space(&self, z: &PointProj) -> Result<LinearSpace> {
        tangent_space(&self.ideal, z)
    }

    /// Projection from the span of the leading points of `frame`; the image lives
    /// in the trailing frame coordinates.
    pub fn project(&self, frame: &Frame, label: impl Into<String>) -> Result<Variety> {
        let ideal = linear_projection(&self.ideal, frame)?;
        let param = self.param.as_ref().map(|p| p.then(&self.ring().field, &frame.projection_rows()));
        Ok(Variety { ideal, param, label: label.into() })
    }
}

pub fn tangent_space(ideal: &Ideal, z: &PointProj) -> Result<LinearSpace> {
    let r = ideal.ring();
    if ideal.gens().iter().any(|g| g.evaluate(z.coords()) != 0) {
        return Err(Error::InvalidInput(format!("{z} does not lie on the variety")));
    }
    let rows: Vec<Vec<u32>> = ideal
        .gens()
        .iter()
        .map(|g| (0..r.nvars).map(|v| g.derivative(v).evaluate(z.coords())).collect())
        .collect();
    Ok(LinearSpace::from_forms(&r.field, r.nvars, &rows))
}

/// The ideal in frame coordinates y (x = P·y): f ↦ f(P·y).
pub fn ideal_in_frame(ideal: &Ideal, frame: &Frame) -> Result<Ideal> {
    ideal.apply_linear_change(&frame.p)
}

/// Ideal of the projection from the span of the leading frame points.
pub fn linear_projection(ideal: &Ideal, frame: &Frame) -> Result<Ideal> {
    if frame.lead >= ideal.ring().nvars {
        return Err(Error::InvalidInput("the center of projection is the whole space".into()));
    }
    let moved = ideal_in_frame(ideal, frame)?;
    let drop: Vec<usize> = (0..frame.lead).collect();
    moved.eliminate(&drop)
}
