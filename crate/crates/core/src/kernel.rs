//! Dirichlet kernels, partial-sum projections, and dyadic blocks.
//!
//! The Dirichlet kernel at level `L` has Fourier coefficient `I_{k_xi}`
//! (padded to `d x d`) at every class with `<xi> <= L` and nothing else; on
//! group models that is the full identity `I_{d_xi}`, and right convolution
//! with it is exactly the partial-sum projector `S_L`.
//!
//! Boundary conventions, enforced with exact integer comparisons on the
//! stored eigenvalues: `S_L` keeps `<xi> <= L` (closed), while the dyadic
//! block `s` keeps `2^s <= <xi> < 2^{s+1}` (closed-open). On the four
//! shipped models no spectral parameter ever equals `2^s` for `s >= 1`
//! (`4^s - 1` is neither a square, a sum of two squares, nor of the form
//! `l(l+1)`, by the mod-4 obstruction), so `S_{2^{s+1}} - S_{2^s}` agrees
//! with block `s` exactly for `s >= 1`; at `s = 0` they differ precisely on
//! the trivial class, whose parameter sits on the boundary `2^0 = 1`.

use crate::error::{Error, Result};
use crate::field::CoefficientField;
use crate::linalg::CMatrix;
use crate::scalar::Real;
use crate::space::{enumerate_reps, Space};

/// Band-limited reproducing kernel: identity blocks through level `l`.
#[derive(Clone, Debug)]
pub struct DirichletKernel<T> {
    space: Space,
    level: f64,
    field: CoefficientField<T>,
}

impl<T: Real> DirichletKernel<T> {
    pub fn space(&self) -> Space {
        self.space
    }

    pub fn level(&self) -> f64 {
        self.level
    }

    pub fn field(&self) -> &CoefficientField<T> {
        &self.field
    }

    pub fn into_field(self) -> CoefficientField<T> {
        self.field
    }
}

/// Builds the Dirichlet kernel at level `l >= 1` (subject to the band cap).
pub fn dirichlet<T: Real>(space: Space, l: f64) -> Result<DirichletKernel<T>> {
    if !(l >= 1.0) {
        return Err(Error::InvalidIndex(format!(
            "Dirichlet kernel needs level >= 1, got {l}"
        )));
    }
    space.check_band("Dirichlet kernel level", l)?;
    let mut field = CoefficientField::new(space);
    for rep in enumerate_reps::<T>(space, l) {
        field
            .insert(rep.id, CMatrix::leading_identity(rep.dim, rep.class_dim))
            .expect("enumerated id");
    }
    Ok(DirichletKernel {
        space,
        level: l,
        field,
    })
}

/// The partial sum `S_L sigma`: restriction to `<xi> <= L`.
pub fn partial_sum<T: Real>(sigma: &CoefficientField<T>, l: f64) -> CoefficientField<T> {
    sigma.restricted(l)
}

/// The dyadic block: restriction to `2^s <= <xi> < 2^{s+1}`.
pub fn lp_block<T: Real>(sigma: &CoefficientField<T>, s: u32) -> CoefficientField<T> {
    let lo = 1u64 << (2 * s);
    let hi = lo << 2;
    let mut out = CoefficientField::new(sigma.space());
    for (id, m) in sigma.entries() {
        let a = 1 + id.lambda();
        if a >= lo && a < hi {
            out.insert(*id, m.clone()).expect("id from an existing field");
        }
    }
    out
}

/// Top dyadic level needed to cover a band limit: the smallest truncation
/// with `2^{s_max + 1} > degree`, computed as `ceil(log2 degree)`.
pub fn s_max_for(degree: f64) -> u32 {
    if degree <= 1.0 {
        0
    } else {
        degree.log2().ceil() as u32
    }
}
