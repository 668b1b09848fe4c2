//! Graded local cohomology `H^i_I(S)` of an invariant ring over a finite
//! window of internal degrees.
//!
//! `H^i_I(S)` is the colimit over `t` of the Koszul cohomology of
//! `(x_1^t, ..., x_m^t)`, with transition maps multiplying the component
//! indexed by `J` by `∏_{j ∈ J} x_j`. A cochain of truncation `t` is read as
//! a Čech cochain whose `J` component is `s_J / (∏_{j ∈ J} x_j)^t`, so the
//! Cartan operators on fractions apply component by component.
//!
//! Each graded piece is finite-dimensional linear algebra over GF(q). A
//! degree counts as stabilized once two consecutive transition maps are
//! isomorphisms; everything downstream is labeled as holding at window
//! precision only.

mod annihilator;
mod cech;
mod compare;
mod depth;
mod window;

pub use annihilator::{
    dickson_containment_probe, pstar_closure_check, window_annihilator, AnnihilatorPiece,
    ClosureReport, ClosureViolation, DicksonProbe, GeneratorContainment, WindowAnnihilator,
    DEFAULT_POWER_BOUND,
};
pub use cech::{koszul_cohomology, CechCocycle, CechComplex, CechComponent, KoszulPiece};
pub use compare::{
    compare_generator_sets, ComparisonEntry, ComparisonOutcome, GeneratorComparison,
};
pub use depth::{depth_probe, DepthReport, DepthStep, DepthVerdict};
pub use window::{
    colimit_window, induced_q, CohomologyClass, GradedCohomologyWindow, InducedQ, Instability,
    WindowDegree,
};

use crate::error::{Error, Result};
use crate::group_action::Group;
use crate::poly::{PolyRing, Polynomial};

/// Default cap on the polynomial degrees a cochain space may touch.
pub const DEFAULT_DEGREE_CAP: u32 = 40;

/// Default largest truncation power tried when looking for stabilization.
pub const DEFAULT_T_MAX: u32 = 10;

/// Homogeneous invariant generators `x_1, ..., x_m` of an ideal of `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealSpec {
    generators: Vec<Polynomial>,
    degrees: Vec<u32>,
}

impl IdealSpec {
    /// Checks that the generators are nonzero, homogeneous of positive
    /// degree and fixed by `group`.
    pub fn new(generators: Vec<Polynomial>, group: &Group) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::InvalidInput(
                "an ideal needs at least one generator".into(),
            ));
        }
        if generators.len() > 16 {
            return Err(Error::CapExceeded {
                what: "ideal generators",
                value: generators.len() as u64,
                cap: 16,
            });
        }
        let mut degrees = Vec::with_capacity(generators.len());
        for f in &generators {
            if f.ring() != group.ring() {
                return Err(Error::RingMismatch);
            }
            if f.is_zero() {
                return Err(Error::InvalidInput(
                    "ideal generators must be nonzero".into(),
                ));
            }
            let d = f.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
            if d == 0 {
                return Err(Error::InvalidInput(
                    "ideal generators must have positive degree".into(),
                ));
            }
            if !group.is_invariant(f)? {
                return Err(Error::NotInvariant);
            }
            degrees.push(d);
        }
        Ok(Self {
            generators,
            degrees,
        })
    }

    /// `(x_1, ..., x_d)`, the ideal of all variables.
    pub fn variables(ring: &PolyRing) -> Self {
        let generators = ring.vars();
        let degrees = vec![1; generators.len()];
        Self {
            generators,
            degrees,
        }
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn ring(&self) -> &PolyRing {
        self.generators[0].ring()
    }

    /// The concatenated generator list.
    pub fn union(&self, other: &IdealSpec) -> Result<IdealSpec> {
        if self.ring() != other.ring() {
            return Err(Error::RingMismatch);
        }
        let mut generators = self.generators.clone();
        generators.extend(other.generators.iter().cloned());
        let mut degrees = self.degrees.clone();
        degrees.extend(&other.degrees);
        Ok(IdealSpec {
            generators,
            degrees,
        })
    }
}
