//! The norm catalogue: Lebesgue, Sobolev, Besov, Triebel-Lizorkin norms on
//! the function side, and Wiener / Beurling norms on the coefficient side.
//!
//! Function-side norms are computed by synthesis on a quadrature grid
//! over-sampled by a factor of 4 relative to the field's degree, which makes
//! `|f|^p` integration exact for even integer `p` up to 8 and keeps the
//! relative quadrature error far below every test tolerance otherwise. The
//! sup norm is the maximum over an endpoint-inclusive mesh of the same
//! resolution; the mesh contains the identity coset, so suprema attained
//! there (Dirichlet kernels) are exact.
//!
//! Dyadic scales: the smoothness weight on block `s` is `2^{sr}` for the
//! Besov and Triebel-Lizorkin families and `2^{rns}` (with `n` the manifold
//! dimension) for the Beurling family, whose natural exponent couples to the
//! dimension. Blocks run over `0..=s_max` with `2^{s_max + 1}` beyond the
//! field's degree, so truncation is exact for band-limited fields.

use num_complex::Complex;
use serde_json::json;

use crate::dual::lp_dual_norm;
use crate::error::{Error, Result};
use crate::field::CoefficientField;
use crate::kernel::{lp_block, s_max_for};
use crate::scalar::{real, Real};
use crate::space::quadrature::{quadrature_grid, sup_mesh};
use crate::transform::synthesize;

/// Which norm a [`NormSpec`] denotes.
///
/// `WienerA` is the absolutely-convergent-series norm (`beta = 1` fixed);
/// `WienerABeta` is its `beta`-power variant. `Beurling` ties the dyadic
/// weight to the exponent (`r = 1/beta`); `BeurlingR` decouples them.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormFamily {
    Lp,
    Sobolev,
    Besov,
    TriebelLizorkin,
    BesovApprox,
    WienerA,
    WienerABeta,
    Beurling,
    BeurlingR,
}

impl NormFamily {
    pub fn name(self) -> &'static str {
        match self {
            NormFamily::Lp => "lp",
            NormFamily::Sobolev => "sobolev",
            NormFamily::Besov => "besov",
            NormFamily::TriebelLizorkin => "triebel_lizorkin",
            NormFamily::BesovApprox => "besov_approx",
            NormFamily::WienerA => "wiener_a",
            NormFamily::WienerABeta => "wiener_a_beta",
            NormFamily::Beurling => "beurling",
            NormFamily::BeurlingR => "beurling_r",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        Ok(match name {
            "lp" => NormFamily::Lp,
            "sobolev" => NormFamily::Sobolev,
            "besov" => NormFamily::Besov,
            "triebel_lizorkin" => NormFamily::TriebelLizorkin,
            "besov_approx" => NormFamily::BesovApprox,
            "wiener_a" => NormFamily::WienerA,
            "wiener_a_beta" => NormFamily::WienerABeta,
            "beurling" => NormFamily::Beurling,
            "beurling_r" => NormFamily::BeurlingR,
            other => {
                return Err(Error::Deserialize(format!("unknown norm family {other:?}")))
            }
        })
    }
}

/// A norm selector: family plus the exponents it reads.
///
/// `r` is the smoothness (Sobolev/Besov scales) or the dyadic weight rate
/// (Beurling scale); `p` the Lebesgue exponent; `q_or_beta` the fine index
/// `q` of the dyadic scales or the `beta` of the Wiener/Beurling scales.
/// Families ignore the exponents they do not read.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NormSpec {
    pub family: NormFamily,
    pub r: f64,
    pub p: f64,
    pub q_or_beta: f64,
}

fn exponent_to_json(x: f64) -> serde_json::Value {
    if x.is_infinite() {
        json!("inf")
    } else {
        json!(x)
    }
}

fn exponent_from_json(v: &serde_json::Value, what: &str) -> Result<f64> {
    if let Some(s) = v.as_str() {
        if s == "inf" {
            return Ok(f64::INFINITY);
        }
    }
    v.as_f64()
        .ok_or_else(|| Error::Deserialize(format!("{what}: expected a number or \"inf\"")))
}

impl NormSpec {
    pub fn lp(p: f64) -> Self {
        NormSpec {
            family: NormFamily::Lp,
            r: 0.0,
            p,
            q_or_beta: 0.0,
        }
    }

    pub fn sobolev(r: f64, p: f64) -> Self {
        NormSpec {
            family: NormFamily::Sobolev,
            r,
            p,
            q_or_beta: 0.0,
        }
    }

    pub fn besov(r: f64, p: f64, q: f64) -> Self {
        NormSpec {
            family: NormFamily::Besov,
            r,
            p,
            q_or_beta: q,
        }
    }

    pub fn triebel_lizorkin(r: f64, p: f64, q: f64) -> Self {
        NormSpec {
            family: NormFamily::TriebelLizorkin,
            r,
            p,
            q_or_beta: q,
        }
    }

    pub fn besov_approx(r: f64, p: f64, q: f64) -> Self {
        NormSpec {
            family: NormFamily::BesovApprox,
            r,
            p,
            q_or_beta: q,
        }
    }

    pub fn wiener_a() -> Self {
        NormSpec {
            family: NormFamily::WienerA,
            r: 0.0,
            p: 0.0,
            q_or_beta: 1.0,
        }
    }

    pub fn wiener_a_beta(beta: f64) -> Self {
        NormSpec {
            family: NormFamily::WienerABeta,
            r: 0.0,
            p: 0.0,
            q_or_beta: beta,
        }
    }

    pub fn beurling(beta: f64) -> Self {
        NormSpec {
            family: NormFamily::Beurling,
            r: 1.0 / beta,
            p: 0.0,
            q_or_beta: beta,
        }
    }

    pub fn beurling_r(r: f64, beta: f64) -> Self {
        NormSpec {
            family: NormFamily::BeurlingR,
            r,
            p: 0.0,
            q_or_beta: beta,
        }
    }

    /// Flat JSON record `{family, r, p, q}`; infinite exponents print as
    /// the string `"inf"`.
    pub fn to_json(&self) -> String {
        let v = json!({
            "family": self.family.name(),
            "r": exponent_to_json(self.r),
            "p": exponent_to_json(self.p),
            "q": exponent_to_json(self.q_or_beta),
        });
        v.to_string()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let v: serde_json::Value =
            serde_json::from_str(text).map_err(|e| Error::Deserialize(e.to_string()))?;
        let family = NormFamily::from_name(
            v.get("family")
                .and_then(|f| f.as_str())
                .ok_or_else(|| Error::Deserialize("missing norm family".into()))?,
        )?;
        let field = |k: &str| -> Result<f64> {
            v.get(k)
                .map(|x| exponent_from_json(x, k))
                .unwrap_or(Ok(0.0))
        };
        Ok(NormSpec {
            family,
            r: field("r")?,
            p: field("p")?,
            q_or_beta: field("q")?,
        })
    }
}

impl std::fmt::Display for NormSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{}(r={}, p={}, q={})",
            self.family.name(),
            self.r,
            self.p,
            self.q_or_beta
        )
    }
}

fn check_positive_exponent(what: &'static str, x: f64) -> Result<()> {
    if x > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidIndex(format!("{what} must be positive, got {x}")))
    }
}

/// `L^p` norm of the synthesized field, `0 < p <= inf`.
///
/// Finite `p` integrates `|f|^p` on the over-sampled quadrature grid;
/// `p = inf` takes the maximum over the matching sup mesh.
pub fn lp_function_norm<T: Real>(sigma: &CoefficientField<T>, p: f64) -> Result<T> {
    check_positive_exponent("Lebesgue exponent p", p)?;
    let grid_degree = 4.0 * sigma.degree().max(1.0);
    if p.is_infinite() {
        let mesh = sup_mesh::<T>(sigma.space(), grid_degree)?;
        let f = synthesize(sigma, &mesh)?;
        return Ok(f
            .values()
            .iter()
            .fold(T::zero(), |acc, z| acc.max(z.norm())));
    }
    let grid = quadrature_grid::<T>(sigma.space(), grid_degree)?;
    let f = synthesize(sigma, &grid)?;
    let pe = real::<T>(p);
    let mut acc = T::zero();
    for (i, z) in f.values().iter().enumerate() {
        acc += grid.weight(i) * z.norm().powf(pe);
    }
    Ok(acc.powf(pe.recip()))
}

/// Bessel-potential (Sobolev) norm: `L^p` norm of the field whose entry at
/// `xi` is scaled by `<xi>^r`.
pub fn sobolev_norm<T: Real>(sigma: &CoefficientField<T>, r: f64, p: f64) -> Result<T> {
    let mut weighted = CoefficientField::new(sigma.space());
    for (id, m) in sigma.entries() {
        let w = (1.0 + id.lambda() as f64).powf(0.5 * r);
        weighted
            .insert(*id, m.scale(Complex::new(real::<T>(w), T::zero())))
            .expect("id from an existing field");
    }
    lp_function_norm(&weighted, p)
}

fn dyadic_weight<T: Real>(rate: f64, s: u32) -> T {
    real::<T>(2f64.powf(rate * s as f64))
}

/// Composes dyadic terms in `l^q`, `0 < q <= inf`.
pub(crate) fn lq_compose<T: Real>(terms: &[T], q: f64) -> T {
    if q.is_infinite() {
        terms.iter().fold(T::zero(), |acc, t| acc.max(*t))
    } else {
        let qe = real::<T>(q);
        let sum = terms
            .iter()
            .fold(T::zero(), |acc, t| acc + t.powf(qe));
        sum.powf(qe.recip())
    }
}

/// Besov norm `( sum_s (2^{sr} |block_s f|_p)^q )^{1/q}` (sup over `s` when
/// `q = inf`).
pub fn besov_norm<T: Real>(sigma: &CoefficientField<T>, r: f64, p: f64, q: f64) -> Result<T> {
    check_positive_exponent("Besov fine index q", q)?;
    let mut terms = Vec::new();
    for s in 0..=s_max_for(sigma.degree()) {
        let block = lp_block(sigma, s);
        if block.is_empty() {
            continue;
        }
        terms.push(dyadic_weight::<T>(r, s) * lp_function_norm(&block, p)?);
    }
    Ok(lq_compose(&terms, q))
}

/// Approximation-error form of the Besov norm: the modulus of the mean plus
/// the `l^q` composition of weighted partial-sum errors `|f - S_{2^s} f|_p`.
pub fn besov_approx_norm<T: Real>(
    sigma: &CoefficientField<T>,
    r: f64,
    p: f64,
    q: f64,
) -> Result<T> {
    check_positive_exponent("Besov fine index q", q)?;
    let mean = sigma
        .get(sigma.space().trivial_id())
        .map(|m| m[(0, 0)].norm())
        .unwrap_or_else(T::zero);
    let mut terms = Vec::new();
    for s in 0..=s_max_for(sigma.degree()) {
        let tail = sigma.tail(2f64.powi(s as i32));
        if tail.is_empty() {
            continue;
        }
        terms.push(dyadic_weight::<T>(r, s) * lp_function_norm(&tail, p)?);
    }
    Ok(mean + lq_compose(&terms, q))
}

/// Triebel-Lizorkin norm: the `L^p` norm of the pointwise `l^q` composition
/// of weighted block functions. `p = inf` is not admitted on this scale.
pub fn triebel_lizorkin_norm<T: Real>(
    sigma: &CoefficientField<T>,
    r: f64,
    p: f64,
    q: f64,
) -> Result<T> {
    if p.is_infinite() {
        return Err(Error::InvalidIndex(
            "Triebel-Lizorkin with p = inf is not admitted; use the Besov scale".into(),
        ));
    }
    check_positive_exponent("Lebesgue exponent p", p)?;
    check_positive_exponent("fine index q", q)?;
    let grid = quadrature_grid::<T>(sigma.space(), 4.0 * sigma.degree().max(1.0))?;
    let mut blocks = Vec::new();
    for s in 0..=s_max_for(sigma.degree()) {
        let block = lp_block(sigma, s);
        if block.is_empty() {
            continue;
        }
        blocks.push((dyadic_weight::<T>(r, s), synthesize(&block, &grid)?));
    }
    let pe = real::<T>(p);
    let mut acc = T::zero();
    for i in 0..grid.len() {
        let composed = if q.is_infinite() {
            blocks
                .iter()
                .fold(T::zero(), |m, (w, b)| m.max(*w * b.values()[i].norm()))
        } else {
            let qe = real::<T>(q);
            blocks
                .iter()
                .fold(T::zero(), |m, (w, b)| {
                    m + (*w * b.values()[i].norm()).powf(qe)
                })
                .powf(qe.recip())
        };
        acc += grid.weight(i) * composed.powf(pe);
    }
    Ok(acc.powf(pe.recip()))
}

/// Wiener algebra norm: the `beta`-power coefficient norm. Shares its code
/// path with the dual `l^beta` norm by definition.
pub fn wiener_norm<T: Real>(sigma: &CoefficientField<T>, beta: f64) -> Result<T> {
    lp_dual_norm(sigma, beta)
}

fn beurling_terms<T: Real>(
    sigma: &CoefficientField<T>,
    r: f64,
    annulus: bool,
) -> Vec<T> {
    let n = sigma.space().dim() as f64;
    // Normalized amplitudes k^{-1/2} |sigma(xi)|_HS keyed by 1 + lambda.
    let amps: Vec<(u64, T)> = sigma
        .entries()
        .map(|(id, m)| {
            let k = crate::space::rep_class::<T>(sigma.space(), *id)
                .expect("id from an existing field")
                .class_dim;
            (
                1 + id.lambda(),
                m.hs_norm() / real::<T>(k as f64).sqrt(),
            )
        })
        .collect();
    let mut terms = Vec::new();
    for s in 0..=s_max_for(sigma.degree()) {
        let lo = 1u64 << (2 * s);
        let hi = lo << 2;
        let sup = amps
            .iter()
            .filter(|(a, _)| *a >= lo && (!annulus || *a < hi))
            .fold(T::zero(), |acc, (_, v)| acc.max(*v));
        if sup > T::zero() {
            terms.push(dyadic_weight::<T>(r * n, s) * sup);
        }
    }
    terms
}

/// Beurling norm `( sum_s (2^{rns} sup_{<xi> >= 2^s} k^{-1/2} |sigma(xi)|_HS)^beta )^{1/beta}`
/// with `n` the manifold dimension; sup over `s` when `beta = inf`.
pub fn beurling_norm<T: Real>(sigma: &CoefficientField<T>, beta: f64, r: f64) -> Result<T> {
    check_positive_exponent("Beurling exponent beta", beta)?;
    Ok(lq_compose(&beurling_terms(sigma, r, false), beta))
}

/// Variant of [`beurling_norm`] taking the sup over the dyadic annulus
/// `2^s <= <xi> < 2^{s+1}` instead of the full tail.
pub fn beurling_annulus_norm<T: Real>(
    sigma: &CoefficientField<T>,
    beta: f64,
    r: f64,
) -> Result<T> {
    check_positive_exponent("Beurling exponent beta", beta)?;
    Ok(lq_compose(&beurling_terms(sigma, r, true), beta))
}

/// Evaluates the norm a [`NormSpec`] denotes.
pub fn norm_eval<T: Real>(sigma: &CoefficientField<T>, spec: &NormSpec) -> Result<T> {
    match spec.family {
        NormFamily::Lp => lp_function_norm(sigma, spec.p),
        NormFamily::Sobolev => sobolev_norm(sigma, spec.r, spec.p),
        NormFamily::Besov => besov_norm(sigma, spec.r, spec.p, spec.q_or_beta),
        NormFamily::TriebelLizorkin => {
            triebel_lizorkin_norm(sigma, spec.r, spec.p, spec.q_or_beta)
        }
        NormFamily::BesovApprox => besov_approx_norm(sigma, spec.r, spec.p, spec.q_or_beta),
        NormFamily::WienerA => wiener_norm(sigma, 1.0),
        NormFamily::WienerABeta => wiener_norm(sigma, spec.q_or_beta),
        NormFamily::Beurling => beurling_norm(sigma, spec.q_or_beta, 1.0 / spec.q_or_beta),
        NormFamily::BeurlingR => beurling_norm(sigma, spec.q_or_beta, spec.r),
    }
}

/// Peetre K-functional `K(t; sigma) = min over truncations of
/// `|S sigma|_{spec0} + t |sigma - S sigma|_{spec1}`, where the truncations
/// range over the trivial splits and the dyadic partial sums `S_{2^l}`.
pub fn k_functional<T: Real>(
    sigma: &CoefficientField<T>,
    t: T,
    spec0: &NormSpec,
    spec1: &NormSpec,
) -> Result<T> {
    // f1 = 0 and f0 = 0 are always admissible splits.
    let mut best = norm_eval(sigma, spec0)?;
    best = best.min(t * norm_eval(sigma, spec1)?);
    for l in 0..=s_max_for(sigma.degree()) {
        let cut = 2f64.powi(l as i32);
        let head = sigma.restricted(cut);
        let tail = sigma.tail(cut);
        let v = norm_eval(&head, spec0)? + t * norm_eval(&tail, spec1)?;
        best = best.min(v);
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::dirichlet;
    use crate::linalg::CMatrix;
    use crate::space::{enumerate_reps, RepId, Space};
    use crate::transform::plancherel_l2;
    use num_complex::Complex;
    use rand_core::{RngCore, SeedableRng};

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

    fn single(space: Space, id: RepId, z: Complex<f64>) -> CoefficientField<f64> {
        let rep = crate::space::rep_class::<f64>(space, id).unwrap();
        let mut f = CoefficientField::new(space);
        let mut m = CMatrix::zeros(rep.dim);
        m[(0, 0)] = z;
        f.insert(id, m).unwrap();
        f
    }

    #[test]
    fn constant_fields_have_norm_abs_c_for_every_p() {
        let c = Complex::new(-3.0, 4.0);
        for space in [Space::Torus1, Space::Sphere2] {
            let f = single(space, space.trivial_id(), c);
            for p in [1.0, 2.0, 3.0, f64::INFINITY] {
                let n = lp_function_norm(&f, p).unwrap();
                assert!((n - 5.0).abs() < 1e-12, "{space} p={p}: {n}");
            }
        }
    }

    #[test]
    fn unimodular_characters_have_unit_norm_for_every_p() {
        let f = single(Space::Torus1, RepId::Freq1(3), Complex::new(1.0, 0.0));
        for p in [1.0, 2.0, 3.5, f64::INFINITY] {
            let n = lp_function_norm(&f, p).unwrap();
            assert!((n - 1.0).abs() < 1e-12, "p={p}: {n}");
        }
    }

    #[test]
    fn dirichlet_l2_norm_matches_plancherel() {
        let d = dirichlet::<f64>(Space::Torus1, 5.0).unwrap();
        let n = lp_function_norm(d.field(), 2.0).unwrap();
        assert!((n - 3.0).abs() < 1e-12);
        for space in [Space::Torus2, Space::Sphere2, Space::Rotation3] {
            let f = random_field(space, 5.0, 1);
            let n = lp_function_norm(&f, 2.0).unwrap();
            assert!((n - plancherel_l2(&f)).abs() < 1e-12 * n.max(1.0), "{space}");
        }
    }

    #[test]
    fn invalid_exponents_are_rejected() {
        let f = random_field(Space::Torus1, 3.0, 2);
        assert!(lp_function_norm(&f, 0.0).is_err());
        assert!(lp_function_norm(&f, -1.0).is_err());
        assert!(besov_norm(&f, 1.0, 2.0, 0.0).is_err());
        assert!(beurling_norm(&f, -2.0, 1.0).is_err());
        assert!(triebel_lizorkin_norm(&f, 1.0, f64::INFINITY, 2.0).is_err());
    }

    #[test]
    fn sobolev_weights_a_single_class_by_its_eigenvalue_power() {
        // <xi> = sqrt(1 + 12) on the sphere at l = 3.
        let f = single(Space::Sphere2, RepId::Level(3), Complex::new(0.0, 2.0));
        let e = 13f64.sqrt();
        for r in [0.5, 1.0, 2.0] {
            let n = sobolev_norm(&f, r, 2.0).unwrap();
            let expect = e.powf(r) * plancherel_l2(&f);
            assert!((n - expect).abs() < 1e-12 * expect, "r={r}");
        }
        // r = 0 reproduces the plain Lebesgue norm bit for bit.
        assert_eq!(
            sobolev_norm(&f, 0.0, 2.0).unwrap(),
            lp_function_norm(&f, 2.0).unwrap()
        );
    }

    #[test]
    fn sobolev_p2_matches_the_spectral_formula() {
        for space in Space::ALL {
            let f = random_field(space, 6.0, 7);
            let r = 1.5;
            let n = sobolev_norm(&f, r, 2.0).unwrap();
            let mut spectral = 0.0;
            for (id, m) in f.entries() {
                let rep = crate::space::rep_class::<f64>(space, *id).unwrap();
                spectral +=
                    rep.dim as f64 * (1.0 + id.lambda() as f64).powf(r) * m.hs_norm_sq();
            }
            let spectral = spectral.sqrt();
            assert!(
                (n - spectral).abs() < 1e-10 * spectral,
                "{space}: {n} vs {spectral}"
            );
        }
    }

    #[test]
    fn besov_of_a_single_annulus_is_one_weighted_block_norm() {
        // |k| = 5 sits in block 2 (4 <= sqrt(26) < 8).
        let f = single(Space::Torus1, RepId::Freq1(5), Complex::new(1.0, 1.0));
        let base = lp_function_norm(&f, 2.0).unwrap();
        for q in [1.0, 2.0, f64::INFINITY] {
            for r in [0.5, 1.0] {
                let n = besov_norm(&f, r, 2.0, q).unwrap();
                let expect = 2f64.powf(2.0 * r) * base;
                assert!((n - expect).abs() < 1e-12 * expect, "q={q} r={r}");
            }
        }
    }

    #[test]
    fn besov_scale_is_monotone_with_constant_one() {
        // |.|_{B^r_{p,inf}} <= |.|_{B^r_{p,q2}} <= |.|_{B^r_{p,q1}} <=
        // |.|_{B^{r+eps}_{p,q1}} for q1 <= q2, eps > 0.
        for space in Space::ALL {
            for seed in [3, 11] {
                let f = random_field(space, 7.0, seed);
                let (r, p, eps) = (1.0, 2.0, 0.5);
                let b_inf = besov_norm(&f, r, p, f64::INFINITY).unwrap();
                let b_q2 = besov_norm(&f, r, p, 2.0).unwrap();
                let b_q1 = besov_norm(&f, r, p, 1.0).unwrap();
                let b_up = besov_norm(&f, r + eps, p, 1.0).unwrap();
                assert!(b_inf <= b_q2, "{space} seed {seed}");
                assert!(b_q2 <= b_q1, "{space} seed {seed}");
                assert!(b_q1 <= b_up, "{space} seed {seed}");
            }
        }
    }

    #[test]
    fn triebel_lizorkin_diagonal_matches_besov() {
        for space in [Space::Torus1, Space::Sphere2] {
            let f = random_field(space, 6.0, 9);
            for p in [2.0, 4.0] {
                let tl = triebel_lizorkin_norm(&f, 1.0, p, p).unwrap();
                let b = besov_norm(&f, 1.0, p, p).unwrap();
                assert!(
                    (tl - b).abs() < 1e-10 * b,
                    "{space} p={p}: {tl} vs {b}"
                );
            }
        }
    }

    #[test]
    fn besov_2_2_brackets_the_sobolev_norm() {
        for space in [Space::Torus1, Space::Rotation3] {
            let f = random_field(space, 6.0, 4);
            for r in [0.5, 1.0, 2.0] {
                let h = sobolev_norm(&f, r, 2.0).unwrap();
                let b = besov_norm(&f, r, 2.0, 2.0).unwrap();
                let ratio = h / b;
                assert!(
                    ratio >= 1.0 - 1e-12 && ratio <= 2f64.powf(r) + 1e-12,
                    "{space} r={r}: {ratio}"
                );
            }
        }
    }

    #[test]
    fn besov_approx_form_of_a_single_annulus_sums_low_scales() {
        // Tails at s = 0, 1, 2 all equal the field; s >= 3 are empty.
        let f = single(Space::Torus1, RepId::Freq1(5), Complex::new(0.6, -0.8));
        let base = lp_function_norm(&f, 2.0).unwrap();
        let n = besov_approx_norm(&f, 1.0, 2.0, 1.0).unwrap();
        let expect = (1.0 + 2.0 + 4.0) * base;
        assert!((n - expect).abs() < 1e-12 * expect, "{n} vs {expect}");
        // The mean enters through the trivial coefficient.
        let c = single(Space::Torus1, RepId::Freq1(0), Complex::new(3.0, -4.0));
        assert!((besov_approx_norm(&c, 1.0, 2.0, 1.0).unwrap() - 5.0).abs() < 1e-12);
    }

    #[test]
    fn wiener_norm_shares_the_dual_norm_code_path() {
        let f = random_field(Space::Rotation3, 5.0, 6);
        for beta in [1.0, 1.5, 2.0] {
            assert_eq!(
                wiener_norm(&f, beta).unwrap(),
                lp_dual_norm(&f, beta).unwrap()
            );
        }
        // The algebra norm dominates the sup norm up to mesh slack.
        for seed in [1, 2, 3] {
            let f = random_field(Space::Torus1, 8.0, seed);
            let a = wiener_norm(&f, 1.0).unwrap();
            let sup = lp_function_norm(&f, f64::INFINITY).unwrap();
            assert!(sup <= a * (1.0 + 1e-9), "seed {seed}: {sup} vs {a}");
        }
    }

    #[test]
    fn beurling_norm_of_a_single_class_is_a_geometric_sum() {
        // |k| = 4 on the circle: 1 + lambda = 17, tails at s = 0, 1, 2.
        let f = single(Space::Torus1, RepId::Freq1(4), Complex::new(0.0, 2.5));
        let n = beurling_norm(&f, 1.0, 1.0).unwrap();
        assert!((n - 7.0 * 2.5).abs() < 1e-12);
        // beta = inf keeps the top weighted tail.
        let n = beurling_norm(&f, f64::INFINITY, 1.0).unwrap();
        assert!((n - 4.0 * 2.5).abs() < 1e-12);
        // The annulus variant sees the class only at s = 2.
        let n = beurling_annulus_norm(&f, 1.0, 1.0).unwrap();
        assert!((n - 4.0 * 2.5).abs() < 1e-12);
    }

    #[test]
    fn beurling_norm_of_the_dirichlet_field_has_a_closed_form() {
        // Identity entries give every class amplitude 1, so at beta = 1 and
        // r = n the norm is the sum of 2^{ns} over scales with nonempty
        // tails: on the circle at L = 8 that is s <= 2.
        let d = dirichlet::<f64>(Space::Torus1, 8.0).unwrap();
        let n = beurling_norm(d.field(), 1.0, 1.0).unwrap();
        assert!((n - 7.0).abs() < 1e-12, "{n}");
        // On the sphere at L = 4 (classes l <= 3, tails to s = 1, n = 2,
        // so the weights are 4^s): 4^0 + 4^1 = 5.
        let d = dirichlet::<f64>(Space::Sphere2, 4.0).unwrap();
        let n = beurling_norm(d.field(), 1.0, 1.0).unwrap();
        assert!((n - 5.0).abs() < 1e-12, "{n}");
    }

    #[test]
    fn k_functional_interpolates_between_its_endpoints() {
        let f = random_field(Space::Torus1, 8.0, 13);
        let s0 = NormSpec::wiener_a();
        let s1 = NormSpec::beurling_r(1.0, 2.0);
        let n0 = norm_eval(&f, &s0).unwrap();
        let n1 = norm_eval(&f, &s1).unwrap();
        assert_eq!(k_functional(&f, 0.0, &s0, &s1).unwrap(), 0.0);
        let big = k_functional(&f, 1e9, &s0, &s1).unwrap();
        assert!((big - n0).abs() < 1e-12 * n0);
        for t in [0.01, 0.1, 1.0, 10.0] {
            let k = k_functional(&f, t, &s0, &s1).unwrap();
            assert!(k <= n0 + 1e-12 && k <= t * n1 * (1.0 + 1e-12), "t={t}");
        }
        // Monotone in t.
        let a = k_functional(&f, 0.5, &s0, &s1).unwrap();
        let b = k_functional(&f, 1.5, &s0, &s1).unwrap();
        assert!(a <= b * (1.0 + 1e-12));
    }

    #[test]
    fn every_family_is_absolutely_homogeneous() {
        let specs = [
            NormSpec::lp(3.0),
            NormSpec::lp(f64::INFINITY),
            NormSpec::sobolev(1.5, 2.0),
            NormSpec::besov(1.0, 2.0, 1.5),
            NormSpec::triebel_lizorkin(0.5, 2.0, 3.0),
            NormSpec::besov_approx(1.0, f64::INFINITY, 2.0),
            NormSpec::wiener_a(),
            NormSpec::wiener_a_beta(1.5),
            NormSpec::beurling(2.0),
            NormSpec::beurling_r(1.5, 0.7),
        ];
        let c = Complex::new(2.0, -1.0);
        let abs_c = c.norm();
        for space in [Space::Torus2, Space::Sphere2] {
            let f = random_field(space, 5.0, 21);
            let g = f.scale(c);
            for spec in &specs {
                let nf = norm_eval(&f, spec).unwrap();
                let ng = norm_eval(&g, spec).unwrap();
                assert!(
                    (ng - abs_c * nf).abs() < 1e-12 * ng.max(1.0),
                    "{space} {spec}: {ng} vs {}",
                    abs_c * nf
                );
            }
        }
    }

    #[test]
    fn norm_specs_round_trip_through_flat_json() {
        let specs = [
            NormSpec::lp(f64::INFINITY),
            NormSpec::besov(1.0, 2.5, 1.0),
            NormSpec::beurling_r(0.3333333333333333, 3.0),
        ];
        for spec in &specs {
            let text = spec.to_json();
            let v: serde_json::Value = serde_json::from_str(&text).unwrap();
            assert_eq!(
                v.as_object().unwrap().keys().collect::<Vec<_>>(),
                ["family", "p", "q", "r"]
            );
            let back = NormSpec::from_json(&text).unwrap();
            assert_eq!(*spec, back, "{text}");
        }
    }
}
