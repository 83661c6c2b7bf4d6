//! Lee-Yang polynomials.
//!
//! `Ψ ∈ 𝒜_n` is Lee-Yang when neither `Ψ` nor `Ψ†` vanishes on the open
//! unit polydisk. Equivalently `Ψ = c Ψ_Φ` with `|c| = 1` and `r(Φ) ≥ 1`,
//! which is the characterisation the membership test runs on.

mod classify;
mod membership;
mod models;
mod temperature;

use num_complex::Complex;
use serde_json::json;

use crate::radius::{Certificate, RadiusBounds};
use crate::scalar::{to_c64, Scalar};

pub use classify::{classify_high_temperature, mobius_expand, Classification, PairDecomposition, RejectReason, Rejection};
pub use membership::{decompose_ly, is_interior, is_ly, MembershipOptions};
pub use models::{cardioid_contains, delta_model, pair_model, PairSpec};
pub use temperature::{
    sweep_membership, temperature_poly, Sweep, SweepConfig, SweepPoint, TemperatureModel, Transition,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    In,
    Out,
    BoundaryUndecided,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::In => "IN",
            Status::Out => "OUT",
            Status::BoundaryUndecided => "BOUNDARY_UNDECIDED",
        }
    }
}

/// Which of `Ψ`, `Ψ†` a witness is a zero of.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Psi,
    PsiDagger,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MembershipVerdict<T> {
    pub status: Status,
    /// For `Out`: a zero of `Ψ` or `Ψ†` in the open unit polydisk.
    pub witness: Option<(Target, Vec<Complex<T>>)>,
    /// Certificates gathered along the way, labelled by what they certify.
    pub certificates: Vec<(String, Certificate<T>)>,
    /// Radius bracket of the slice `Φ`, when one was computed.
    pub radius: Option<RadiusBounds<T>>,
}

impl<T: Scalar> MembershipVerdict<T> {
    pub(crate) fn new(status: Status) -> Self {
        Self { status, witness: None, certificates: Vec::new(), radius: None }
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "status": self.status.as_str(),
            "witness": self.witness.as_ref().map(|(t, w)| json!({
                "target": match t { Target::Psi => "psi", Target::PsiDagger => "psi_dagger" },
                "point": w.iter().map(|z| { let z = to_c64(*z); [z.re, z.im] }).collect::<Vec<_>>(),
            })),
            "certificates": self.certificates.iter().map(|(label, c)| json!({
                "label": label,
                "certificate": c.to_json(),
            })).collect::<Vec<_>>(),
            "radius": self.radius.as_ref().map(|r| r.to_json()),
        })
    }
}
