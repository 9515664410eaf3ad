//! Norms on the coefficient side, eigenvalue counting, and the empirical
//! Weyl constant.
//!
//! The `l^p` dual norm of a coefficient field is
//!
//! ```text
//! || sigma ||_p = ( sum_xi d_xi k_xi^{p (1/p - 1/2)} || sigma(xi) ||_HS^p )^{1/p}
//! || sigma ||_oo = sup_xi k_xi^{-1/2} || sigma(xi) ||_HS
//! ```
//!
//! equivalently the weighted sequence norm of `a_xi = k_xi^{-1/2} ||
//! sigma(xi) ||_HS` under the counting measure with masses `d_xi k_xi`.
//! Every mass is `>= 1`, which is why `|| . ||_q <= || . ||_p` holds with
//! constant exactly one for `p <= q`.
//!
//! `N(L) = sum_{<xi> <= L} d_xi k_xi` is the eigenvalue counting function;
//! `N(L) / L^n` approaches a constant (Weyl), estimated here by averaging
//! over the top octave of sampled band limits since the ratio oscillates
//! around its limit rather than converging monotonically.

use crate::error::{Error, Result};
use crate::field::CoefficientField;
use crate::scalar::{real, real_from_usize, Real};
use crate::space::{enumerate_reps, rep_class, Space};

/// The dual-space quasi-norm; `p` may be any positive real or infinity.
pub fn lp_dual_norm<T: Real>(sigma: &CoefficientField<T>, p: f64) -> Result<T> {
    if !(p > 0.0) {
        return Err(Error::InvalidIndex(format!(
            "dual norm exponent must be positive, got {p}"
        )));
    }
    let space = sigma.space();
    if p.is_infinite() {
        let mut best = T::zero();
        for (id, m) in sigma.entries() {
            let rep = rep_class::<T>(space, *id)?;
            let a = m.hs_norm() / real_from_usize::<T>(rep.class_dim).sqrt();
            best = best.max(a);
        }
        Ok(best)
    } else {
        let mut acc = T::zero();
        for (id, m) in sigma.entries() {
            let rep = rep_class::<T>(space, *id)?;
            // d k^{p(1/p - 1/2)} = d k^{1 - p/2}
            let weight =
                rep.dim as f64 * (rep.class_dim as f64).powf(1.0 - p / 2.0);
            acc += real::<T>(weight) * m.hs_norm().powf(real(p));
        }
        Ok(acc.powf(real(1.0 / p)))
    }
}

/// `N(L)`: eigenvalues with `<xi> <= L` counted with multiplicity `d k`.
pub fn counting_function(space: Space, l: f64) -> u64 {
    enumerate_reps::<f64>(space, l)
        .iter()
        .map(|r| (r.dim * r.class_dim) as u64)
        .sum()
}

/// Multiplicity-weighted count of the dyadic annulus `2^s <= <xi> <
/// 2^{s+1}`. The boundaries are exact (integer comparison on `1 + lambda`
/// against `4^s`).
pub fn dyadic_count(space: Space, s: u32) -> Result<u64> {
    let top = 2f64.powi(s as i32 + 1);
    space.check_band("dyadic annulus upper edge", top)?;
    let lo = 1u64 << (2 * s);
    let hi = lo << 2;
    Ok(enumerate_reps::<f64>(space, top)
        .iter()
        .filter(|r| {
            let a = 1 + r.lambda;
            a >= lo && a < hi
        })
        .map(|r| (r.dim * r.class_dim) as u64)
        .sum())
}

/// Sampled counting function with the averaged Weyl constant.
#[derive(Clone, Debug)]
pub struct CountingProfile {
    pub space: Space,
    /// `(L, N(L))` at the 32 fit samples, ascending in `L`.
    pub samples: Vec<(f64, u64)>,
    /// Mean of `N(L) / L^n` over the samples.
    pub fitted_c0: f64,
}

impl CountingProfile {
    pub fn dim(&self) -> u32 {
        self.space.dim()
    }

    /// CSV with columns `L,N,ratio` where `ratio = N / L^n`.
    pub fn to_csv(&self) -> String {
        let n = self.dim() as i32;
        let mut out = String::from("L,N,ratio\n");
        for &(l, count) in &self.samples {
            let ratio = count as f64 / l.powi(n);
            out.push_str(&format!("{l},{count},{ratio}\n"));
        }
        out
    }
}

/// Samples `N(L)` at 32 points of `[l_max/2, l_max]` and averages
/// `N(L) / L^n` there.
pub fn weyl_fit(space: Space, l_max: f64) -> Result<CountingProfile> {
    space.check_band("counting fit band limit", l_max)?;
    if !(l_max >= 2.0) {
        return Err(Error::InvalidIndex(format!(
            "counting fit needs l_max >= 2, got {l_max}"
        )));
    }
    let n = space.dim() as i32;
    let lo = l_max / 2.0;
    let count = 32usize;
    let mut samples = Vec::with_capacity(count);
    let mut ratio_sum = 0.0f64;
    for j in 0..count {
        let l = lo + (l_max - lo) * j as f64 / (count - 1) as f64;
        let c = counting_function(space, l);
        ratio_sum += c as f64 / l.powi(n);
        samples.push((l, c));
    }
    Ok(CountingProfile {
        space,
        samples,
        fitted_c0: ratio_sum / count as f64,
    })
}

/// Evaluates `(|| sigma ||_q, || sigma ||_p)` for `1 <= p <= q <= oo`; the
/// first component never exceeds the second (constant-one embedding of the
/// dual spaces).
pub fn dual_embedding_check<T: Real>(
    sigma: &CoefficientField<T>,
    p: f64,
    q: f64,
) -> Result<(T, T)> {
    if !(p >= 1.0) || !(q >= p) {
        return Err(Error::InvalidIndex(format!(
            "embedding requires 1 <= p <= q, got p = {p}, q = {q}"
        )));
    }
    Ok((lp_dual_norm(sigma, q)?, lp_dual_norm(sigma, p)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::CMatrix;
    use crate::space::RepId;
    use num_complex::Complex;
    use rand_core::{RngCore, SeedableRng};

    fn identity_field(space: Space, l: f64) -> CoefficientField<f64> {
        let mut f = CoefficientField::new(space);
        for rep in enumerate_reps::<f64>(space, l) {
            f.insert(rep.id, CMatrix::leading_identity(rep.dim, rep.class_dim))
                .unwrap();
        }
        f
    }

    fn random_field(space: Space, l: f64, seed: u64) -> CoefficientField<f64> {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut f = CoefficientField::new(space);
        for rep in enumerate_reps::<f64>(space, l) {
            let m = CMatrix::from_fn(rep.dim, |_, _| {
                Complex::new(
                    ((rng.next_u64() >> 11) as f64) / (1u64 << 53) as f64 - 0.5,
                    ((rng.next_u64() >> 11) as f64) / (1u64 << 53) as f64 - 0.5,
                )
            });
            f.insert(rep.id, m).unwrap();
        }
        f
    }

    #[test]
    fn identity_blocks_pin_the_endpoint_norms() {
        // Identity entries through the band: p = 1 counts eigenvalues,
        // p = oo normalizes to one, p = 2 is the square root.
        for (space, l, n) in [
            (Space::Torus1, 5.0, 9.0),
            (Space::Sphere2, 4.0, 16.0),
            (Space::Rotation3, 4.0, 84.0),
        ] {
            let f = identity_field(space, l);
            assert!((lp_dual_norm(&f, 1.0).unwrap() - n).abs() < 1e-9, "{space}");
            assert!((lp_dual_norm(&f, f64::INFINITY).unwrap() - 1.0).abs() < 1e-12);
            assert!((lp_dual_norm(&f, 2.0).unwrap() - n.sqrt()).abs() < 1e-10);
        }
    }

    #[test]
    fn single_trivial_entry_has_its_modulus_as_norm() {
        let mut f = CoefficientField::<f64>::new(Space::Torus2);
        let mut m = CMatrix::zeros(1);
        m[(0, 0)] = Complex::new(3.0, -4.0);
        f.insert(RepId::Freq2(0, 0), m).unwrap();
        for p in [0.4, 1.0, 2.0, 3.5, f64::INFINITY] {
            assert!((lp_dual_norm(&f, p).unwrap() - 5.0).abs() < 1e-12, "p = {p}");
        }
    }

    #[test]
    fn invalid_exponents_are_rejected() {
        let f = identity_field(Space::Torus1, 3.0);
        assert!(lp_dual_norm(&f, 0.0).is_err());
        assert!(lp_dual_norm(&f, -1.0).is_err());
        assert!(dual_embedding_check(&f, 0.5, 2.0).is_err());
        assert!(dual_embedding_check(&f, 2.0, 1.0).is_err());
    }

    #[test]
    fn counting_matches_frozen_enumerations() {
        assert_eq!(counting_function(Space::Torus1, 5.0), 9);
        assert_eq!(counting_function(Space::Sphere2, 4.0), 16);
        assert_eq!(counting_function(Space::Rotation3, 4.0), 84);
        // Lattice points of the disk 1 + k1^2 + k2^2 <= 25, counted by hand
        // shell by shell.
        assert_eq!(counting_function(Space::Torus2, 5.0), 69);
        assert_eq!(counting_function(Space::Torus1, 0.5), 0);
    }

    #[test]
    fn counting_matches_closed_forms_at_small_bands() {
        for l in 2..=12u32 {
            let lf = l as f64;
            let t1 = 2 * ((lf * lf - 1.0).sqrt().floor() as u64) + 1;
            assert_eq!(counting_function(Space::Torus1, lf), t1, "t1 L = {l}");
            let lstar = (0..).take_while(|&x| x * (x + 1) <= l as u64 * l as u64 - 1).last().unwrap();
            assert_eq!(
                counting_function(Space::Sphere2, lf),
                (lstar + 1) * (lstar + 1),
                "s2 L = {l}"
            );
            assert_eq!(
                counting_function(Space::Rotation3, lf),
                (lstar + 1) * (2 * lstar + 1) * (2 * lstar + 3) / 3,
                "so3 L = {l}"
            );
        }
    }

    #[test]
    fn dyadic_annuli_partition_the_band() {
        // Frozen case: on the circle, 4 <= sqrt(1 + k^2) < 8 holds exactly
        // for |k| in {4, ..., 7}.
        assert_eq!(dyadic_count(Space::Torus1, 2).unwrap(), 8);
        for space in Space::ALL {
            let s_top = if space.band_cap() >= 32.0 { 4 } else { 3 };
            let mut sum = 0;
            for s in 0..=s_top {
                let c = dyadic_count(space, s).unwrap();
                assert!(c > 0, "{space} annulus {s} must be nonempty");
                sum += c;
            }
            let below_top = counting_function(space, 2f64.powi(s_top as i32 + 1) - 1e-3);
            assert_eq!(sum, below_top, "{space}: annuli must telescope");
        }
    }

    #[test]
    fn annulus_above_the_cap_is_rejected() {
        assert!(matches!(
            dyadic_count(Space::Sphere2, 6),
            Err(Error::ResourceCap { .. })
        ));
    }

    #[test]
    fn weyl_constant_lands_in_the_expected_window() {
        let t1 = weyl_fit(Space::Torus1, 32.0).unwrap();
        assert!(t1.fitted_c0 > 1.8 && t1.fitted_c0 < 2.1, "{}", t1.fitted_c0);
        assert_eq!(t1.dim(), 1);
        let s2 = weyl_fit(Space::Sphere2, 24.0).unwrap();
        assert!(s2.fitted_c0 > 0.9 && s2.fitted_c0 < 1.1, "{}", s2.fitted_c0);
        assert!(s2.samples.windows(2).all(|w| w[0].1 <= w[1].1));
        assert!(weyl_fit(Space::Sphere2, 1000.0).is_err());
        let csv = s2.to_csv();
        assert!(csv.starts_with("L,N,ratio\n"));
        assert_eq!(csv.lines().count(), 33);
    }

    #[test]
    fn dual_embedding_never_exceeds_one() {
        for seed in 0..20u64 {
            let f = random_field(Space::Rotation3, 4.0, seed);
            for (p, q) in [(1.0, 2.0), (2.0, 4.0), (2.0, f64::INFINITY), (3.0, 3.0)] {
                let (nq, np) = dual_embedding_check(&f, p, q).unwrap();
                assert!(nq <= np, "seed {seed} (p, q) = ({p}, {q}): {nq} > {np}");
            }
        }
        let diri = identity_field(Space::Torus1, 5.0);
        let (nq, np) = dual_embedding_check(&diri, 1.0, f64::INFINITY).unwrap();
        assert!((nq - 1.0).abs() < 1e-12 && (np - 9.0).abs() < 1e-9);
    }
}
