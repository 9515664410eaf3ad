//! Deterministic band-limited function families.
//!
//! A family is described by `(kind, seed, degree, count)` and generates the
//! same coefficient fields on every run: member `j` draws from a ChaCha8
//! stream seeded with `seed XOR j * GOLDEN`, entries are visited in
//! spectral-then-row-major order, and all randomness flows through one
//! uniform-to-Gaussian map.

use num_complex::Complex;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};
use crate::field::CoefficientField;
use crate::kernel::{dirichlet, s_max_for};
use crate::linalg::CMatrix;
use crate::scalar::{real, Real};
use crate::space::{enumerate_reps, RepClass, Space};

/// SplitMix64 increment; decorrelates per-member streams.
const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    /// Independent standard complex Gaussians in the live rows `i < k_xi`,
    /// scaled by `d_xi^{-1/2}` so all norms stay O(1) across degrees.
    RandomGaussian,
    /// The Dirichlet kernel at the family degree; ignores seed and count.
    Dirichlet,
    /// Heat-flow profile `exp(-t <xi>)` on identity blocks; member `j` uses
    /// `t = (j+1)/count`, so a single member means `t = 1`. Ignores seed.
    HeatType,
    /// Gaussian entries on one nontrivial class per second dyadic annulus
    /// (`s = 0, 2, 4, ...`), the smallest eigenvalue in each; skipping every
    /// other annulus gives spectral gaps of ratio about 4.
    Lacunary,
    /// The single class of largest eigenvalue within the degree, with a unit
    /// entry at (0,0); ignores seed and count.
    SingleCoefficient,
}

impl FamilyKind {
    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::RandomGaussian => "random_gaussian",
            FamilyKind::Dirichlet => "dirichlet",
            FamilyKind::HeatType => "heat_type",
            FamilyKind::Lacunary => "lacunary",
            FamilyKind::SingleCoefficient => "single_coefficient",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        Ok(match name {
            "random_gaussian" => FamilyKind::RandomGaussian,
            "dirichlet" => FamilyKind::Dirichlet,
            "heat_type" => FamilyKind::HeatType,
            "lacunary" => FamilyKind::Lacunary,
            "single_coefficient" => FamilyKind::SingleCoefficient,
            other => {
                return Err(Error::Deserialize(format!(
                    "unknown family kind {other:?}"
                )))
            }
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FunctionFamily {
    pub kind: FamilyKind,
    pub seed: u64,
    pub degree: f64,
    pub count: usize,
}

/// One draw of a standard complex Gaussian: radius `sqrt(-ln u1)` with
/// `u1 in (0, 1]` (the `+1` below keeps the log finite), times a uniform
/// phase. `E |z|^2 = 1`.
fn gaussian<T: Real>(rng: &mut rand_chacha::ChaCha8Rng) -> Complex<T> {
    let u1 = ((rng.next_u64() >> 11) + 1) as f64 * (-53f64).exp2();
    let u2 = (rng.next_u64() >> 11) as f64 * (-53f64).exp2();
    let radius = (-u1.ln()).sqrt();
    let angle = std::f64::consts::TAU * u2;
    Complex::new(
        real::<T>(radius * angle.cos()),
        real::<T>(radius * angle.sin()),
    )
}

fn gaussian_matrix<T: Real>(
    rep: &RepClass<T>,
    rng: &mut rand_chacha::ChaCha8Rng,
) -> CMatrix<T> {
    let scale = real::<T>((rep.dim as f64).sqrt().recip());
    CMatrix::from_fn(rep.dim, |i, _| {
        if i < rep.class_dim {
            gaussian::<T>(rng) * scale
        } else {
            Complex::new(T::zero(), T::zero())
        }
    })
}

impl FunctionFamily {
    pub fn new(kind: FamilyKind, seed: u64, degree: f64, count: usize) -> Self {
        FunctionFamily {
            kind,
            seed,
            degree,
            count,
        }
    }

    /// The same family at another band limit (degree-doubling sweeps).
    pub fn with_degree(&self, degree: f64) -> Self {
        FunctionFamily { degree, ..*self }
    }

    fn member_rng(&self, j: usize) -> rand_chacha::ChaCha8Rng {
        rand_chacha::ChaCha8Rng::seed_from_u64(self.seed ^ (j as u64).wrapping_mul(GOLDEN))
    }

    /// How many members [`generate`](Self::generate) will yield; the
    /// deterministic kinds collapse to a single member.
    pub fn effective_count(&self) -> usize {
        match self.kind {
            FamilyKind::Dirichlet | FamilyKind::SingleCoefficient => 1,
            _ => self.count.max(1),
        }
    }

    pub fn generate<T: Real>(&self, space: Space) -> Result<Vec<CoefficientField<T>>> {
        if !(self.degree >= 1.0) {
            return Err(Error::InvalidIndex(format!(
                "family degree must be >= 1, got {}",
                self.degree
            )));
        }
        space.check_band("family band limit", self.degree)?;
        let reps = enumerate_reps::<T>(space, self.degree);
        let mut out = Vec::with_capacity(self.effective_count());
        for j in 0..self.effective_count() {
            out.push(self.member::<T>(space, &reps, j)?);
        }
        Ok(out)
    }

    fn member<T: Real>(
        &self,
        space: Space,
        reps: &[RepClass<T>],
        j: usize,
    ) -> Result<CoefficientField<T>> {
        let mut field = CoefficientField::new(space);
        match self.kind {
            FamilyKind::RandomGaussian => {
                let mut rng = self.member_rng(j);
                for rep in reps {
                    field.insert(rep.id, gaussian_matrix(rep, &mut rng))?;
                }
            }
            FamilyKind::Dirichlet => {
                field = dirichlet::<T>(space, self.degree)?.into_field();
            }
            FamilyKind::HeatType => {
                let t = (j + 1) as f64 / self.effective_count() as f64;
                for rep in reps {
                    let w = real::<T>((-t * (1.0 + rep.lambda as f64).sqrt()).exp());
                    field.insert(
                        rep.id,
                        CMatrix::leading_identity(rep.dim, rep.class_dim)
                            .scale(Complex::new(w, T::zero())),
                    )?;
                }
            }
            FamilyKind::Lacunary => {
                let mut rng = self.member_rng(j);
                for s in (0..=s_max_for(self.degree)).step_by(2) {
                    let lo = 1u64 << (2 * s);
                    let hi = lo << 2;
                    // Smallest nontrivial eigenvalue in the annulus; reps
                    // are sorted by eigenvalue.
                    if let Some(rep) = reps.iter().find(|r| {
                        r.lambda > 0 && (1 + r.lambda) >= lo && (1 + r.lambda) < hi
                    }) {
                        field.insert(rep.id, gaussian_matrix(rep, &mut rng))?;
                    }
                }
            }
            FamilyKind::SingleCoefficient => {
                let rep = reps
                    .iter()
                    .max_by_key(|r| r.lambda)
                    .ok_or_else(|| Error::InvalidIndex("empty band".into()))?;
                let mut m = CMatrix::zeros(rep.dim);
                m[(0, 0)] = Complex::new(T::one(), T::zero());
                field.insert(rep.id, m)?;
            }
        }
        Ok(field)
    }

    pub fn describe(&self) -> String {
        format!(
            "{}(seed={}, degree={}, count={})",
            self.kind.name(),
            self.seed,
            self.degree,
            self.effective_count()
        )
    }
}
