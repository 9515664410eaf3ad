//! The four model spaces and their representation theory.
//!
//! Shipped models: the circle `T^1`, the 2-torus `T^2`, the 2-sphere
//! `S^2 = SO(3)/SO(2)`, and the rotation group `SO(3)` itself. The first two
//! and the last are groups; the sphere is the one proper homogeneous space.
//!
//! Each irreducible class `xi` carries a dimension `d`, the dimension `k` of
//! its subspace of vectors fixed by the isotropy group (`k = d` on groups,
//! `k = 1` on the sphere), and the spectral parameter `<xi> = sqrt(1 +
//! lambda)` where `lambda` is the Laplace eigenvalue: `|k|^2` on tori,
//! `l(l+1)` on the sphere and rotation group. `lambda` is kept as an exact
//! integer so dyadic and band-limit boundaries never depend on float
//! rounding.
//!
//! Matrix coefficients follow the convention that the isotropy-invariant
//! directions come first: on the sphere only column 0 of `xi(x)` is nonzero
//! (the zonal column), and coefficient matrices `sigma(xi)` use only row
//! blocks `i < k`. On groups the full unitary matrix is used.

pub mod quadrature;
pub mod rotation;
pub mod wigner;

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::scalar::{real, unit_phase, Real};

/// One of the shipped compact homogeneous spaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Space {
    Torus1,
    Torus2,
    Sphere2,
    Rotation3,
}

impl Space {
    pub const ALL: [Space; 4] = [
        Space::Torus1,
        Space::Torus2,
        Space::Sphere2,
        Space::Rotation3,
    ];

    /// Manifold dimension `n`.
    pub fn dim(self) -> u32 {
        match self {
            Space::Torus1 => 1,
            Space::Torus2 => 2,
            Space::Sphere2 => 2,
            Space::Rotation3 => 3,
        }
    }

    /// Whether the space is itself a group (convolution available).
    pub fn is_group(self) -> bool {
        !matches!(self, Space::Sphere2)
    }

    pub fn name(self) -> &'static str {
        match self {
            Space::Torus1 => "t1",
            Space::Torus2 => "t2",
            Space::Sphere2 => "s2",
            Space::Rotation3 => "so3",
        }
    }

    /// Largest admitted band limit for fields and kernels. Defaults to 64 on
    /// the tori and 24 on the sphere and rotation group; the `PW_LAB_CAP`
    /// environment variable (a number `>= 1`) overrides the cap on every
    /// model at once.
    pub fn band_cap(self) -> f64 {
        if let Ok(v) = std::env::var("PW_LAB_CAP") {
            if let Ok(x) = v.trim().parse::<f64>() {
                if x >= 1.0 {
                    return x;
                }
            }
        }
        match self {
            Space::Torus1 | Space::Torus2 => 64.0,
            Space::Sphere2 | Space::Rotation3 => 24.0,
        }
    }

    /// Largest admitted quadrature exactness degree: four times the band
    /// cap, so every admissible field still gets the over-sampled grids the
    /// norm evaluations ask for.
    pub fn grid_cap(self) -> f64 {
        4.0 * self.band_cap()
    }

    /// Rejects band limits above [`Self::band_cap`].
    pub fn check_band(self, what: &'static str, requested: f64) -> Result<()> {
        let cap = self.band_cap();
        if requested > cap {
            return Err(Error::ResourceCap {
                space: self,
                what,
                requested,
                cap,
            });
        }
        Ok(())
    }

    /// Id of the trivial representation (spectral parameter 1).
    pub fn trivial_id(self) -> RepId {
        match self {
            Space::Torus1 => RepId::Freq1(0),
            Space::Torus2 => RepId::Freq2(0, 0),
            Space::Sphere2 | Space::Rotation3 => RepId::Level(0),
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Space {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "t1" => Ok(Space::Torus1),
            "t2" => Ok(Space::Torus2),
            "s2" => Ok(Space::Sphere2),
            "so3" => Ok(Space::Rotation3),
            other => Err(Error::Deserialize(format!(
                "unknown space {other:?} (expected one of t1, t2, s2, so3)"
            ))),
        }
    }
}

/// Identifier of an irreducible class: a frequency (vector) on the tori, a
/// level `l` on the sphere and rotation group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RepId {
    Freq1(i64),
    Freq2(i64, i64),
    Level(u64),
}

impl RepId {
    /// Laplace eigenvalue `lambda` as an exact integer.
    pub fn lambda(self) -> u64 {
        match self {
            RepId::Freq1(k) => (k * k) as u64,
            RepId::Freq2(k1, k2) => (k1 * k1 + k2 * k2) as u64,
            RepId::Level(l) => l * (l + 1),
        }
    }

    /// Integer components, as serialized: `[k]`, `[k1, k2]`, or `[l]`.
    pub fn components(self) -> Vec<i64> {
        match self {
            RepId::Freq1(k) => vec![k],
            RepId::Freq2(k1, k2) => vec![k1, k2],
            RepId::Level(l) => vec![l as i64],
        }
    }

    /// Parses serialized components for the given space.
    pub fn from_components(space: Space, c: &[i64]) -> Result<RepId> {
        match (space, c) {
            (Space::Torus1, &[k]) => Ok(RepId::Freq1(k)),
            (Space::Torus2, &[k1, k2]) => Ok(RepId::Freq2(k1, k2)),
            (Space::Sphere2 | Space::Rotation3, &[l]) if l >= 0 => {
                Ok(RepId::Level(l as u64))
            }
            _ => Err(Error::Deserialize(format!(
                "rep id {c:?} is malformed for space {space}"
            ))),
        }
    }

    /// Total order: spectral parameter first, then components. This is the
    /// enumeration and serialization order everywhere.
    fn sort_key(self) -> (u64, u8, i64, i64) {
        match self {
            RepId::Freq1(k) => (self.lambda(), 0, k, 0),
            RepId::Freq2(k1, k2) => (self.lambda(), 1, k1, k2),
            RepId::Level(l) => (self.lambda(), 2, l as i64, 0),
        }
    }
}

impl PartialOrd for RepId {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RepId {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

/// An irreducible class together with its numeric invariants.
#[derive(Clone, Copy, Debug)]
pub struct RepClass<T> {
    pub id: RepId,
    /// Representation dimension `d`.
    pub dim: usize,
    /// Dimension `k` of the isotropy-invariant subspace (`k <= d`).
    pub class_dim: usize,
    /// Laplace eigenvalue, exact.
    pub lambda: u64,
    /// Spectral parameter `<xi> = sqrt(1 + lambda)`.
    pub eig: T,
}

/// Builds the class record for an id, validating it belongs to the space.
pub fn rep_class<T: Real>(space: Space, id: RepId) -> Result<RepClass<T>> {
    let (dim, class_dim) = match (space, id) {
        (Space::Torus1, RepId::Freq1(_)) => (1, 1),
        (Space::Torus2, RepId::Freq2(_, _)) => (1, 1),
        (Space::Sphere2, RepId::Level(l)) => ((2 * l + 1) as usize, 1),
        (Space::Rotation3, RepId::Level(l)) => {
            let d = (2 * l + 1) as usize;
            (d, d)
        }
        _ => return Err(Error::RepNotInSpace { space, id }),
    };
    let lambda = id.lambda();
    Ok(RepClass {
        id,
        dim,
        class_dim,
        lambda,
        eig: real::<T>(1.0 + lambda as f64).sqrt(),
    })
}

/// Whether a class of eigenvalue `lambda` lies in the band `<xi> <= l`.
///
/// The comparison `1 + lambda <= l^2` runs in integers against `l^2` with a
/// hair of slack, so integer band limits behave exactly at boundaries.
pub(crate) fn in_band(lambda: u64, l: f64) -> bool {
    (1 + lambda) as f64 <= l * l + 1e-9
}

/// All classes with spectral parameter `<= l`, sorted by `(eig, id)`.
///
/// `l < 1` yields the empty list; no resource cap applies here (the cap
/// guards grid construction and the operations that build fields).
pub fn enumerate_reps<T: Real>(space: Space, l: f64) -> Vec<RepClass<T>> {
    let mut ids: Vec<RepId> = Vec::new();
    if l >= 1.0 {
        match space {
            Space::Torus1 => {
                let kmax = ((l * l - 1.0).max(0.0)).sqrt().floor() as i64 + 1;
                for k in -kmax..=kmax {
                    let id = RepId::Freq1(k);
                    if in_band(id.lambda(), l) {
                        ids.push(id);
                    }
                }
            }
            Space::Torus2 => {
                let kmax = ((l * l - 1.0).max(0.0)).sqrt().floor() as i64 + 1;
                for k1 in -kmax..=kmax {
                    for k2 in -kmax..=kmax {
                        let id = RepId::Freq2(k1, k2);
                        if in_band(id.lambda(), l) {
                            ids.push(id);
                        }
                    }
                }
            }
            Space::Sphere2 | Space::Rotation3 => {
                let mut level = 0u64;
                while in_band(level * (level + 1), l) {
                    ids.push(RepId::Level(level));
                    level += 1;
                }
            }
        }
    }
    ids.sort_unstable_by_key(|id| id.sort_key());
    ids.into_iter()
        .map(|id| rep_class(space, id).expect("enumerated ids are valid by construction"))
        .collect()
}

/// Index `i -> m` for the zonal basis order on the sphere: the invariant
/// vector `m = 0` first, then `-1, 1, -2, 2, ...`.
#[inline]
pub(crate) fn sphere_row_m(i: usize) -> i64 {
    if i % 2 == 1 {
        -((i as i64 + 1) / 2)
    } else {
        i as i64 / 2
    }
}

/// Inverse of [`sphere_row_m`]: the basis index of azimuthal order `m`.
#[inline]
pub(crate) fn sphere_m_index(m: i64) -> usize {
    if m < 0 {
        (2 * (-m) - 1) as usize
    } else {
        (2 * m) as usize
    }
}

/// The matrix coefficient `xi(x)`; `x` in the model's coordinates as laid
/// out by [`quadrature::QuadratureGrid::node`].
///
/// Groups get the full unitary matrix; the sphere gets the zonal column
/// `xi(x)_{i,0} = exp(-i m_i phi) d^l_{m_i 0}(theta)` with all other columns
/// zero, so `|| xi(x) ||_HS = sqrt(k)` on every model.
pub fn matrix_coeff<T: Real>(
    space: Space,
    rep: &RepClass<T>,
    x: [T; 3],
) -> Result<CMatrix<T>> {
    // Re-derive the class record so foreign ids are rejected.
    let checked = rep_class::<T>(space, rep.id)?;
    debug_assert_eq!(checked.dim, rep.dim);
    match (space, rep.id) {
        (Space::Torus1, RepId::Freq1(k)) => {
            let mut m = CMatrix::zeros(1);
            m[(0, 0)] = unit_phase(real::<T>(k as f64) * x[0]);
            Ok(m)
        }
        (Space::Torus2, RepId::Freq2(k1, k2)) => {
            let mut m = CMatrix::zeros(1);
            m[(0, 0)] =
                unit_phase(real::<T>(k1 as f64) * x[0] + real::<T>(k2 as f64) * x[1]);
            Ok(m)
        }
        (Space::Sphere2, RepId::Level(l)) => {
            let (theta, phi) = (x[0], x[1]);
            let tab = wigner::d_column_table(l as usize, theta);
            let mut m = CMatrix::zeros(rep.dim);
            for i in 0..rep.dim {
                let mi = sphere_row_m(i);
                m[(i, 0)] = unit_phase(-real::<T>(mi as f64) * phi)
                    * Complex::new(tab.get(l as usize, mi), T::zero());
            }
            Ok(m)
        }
        (Space::Rotation3, RepId::Level(l)) => {
            let (alpha, beta, gamma) = (x[0], x[1], x[2]);
            let tab = wigner::d_table(l as usize, beta);
            let li = l as i64;
            let mut m = CMatrix::zeros(rep.dim);
            for i in 0..rep.dim {
                let mi = i as i64 - li;
                let pa = unit_phase(-real::<T>(mi as f64) * alpha);
                for j in 0..rep.dim {
                    let nj = j as i64 - li;
                    let pg = unit_phase(-real::<T>(nj as f64) * gamma);
                    m[(i, j)] = pa
                        * pg
                        * Complex::new(tab.get(l as usize, mi, nj), T::zero());
                }
            }
            Ok(m)
        }
        _ => unreachable!("rep_class above rejected the mismatch"),
    }
}

#[cfg(test)]
mod tests {
    use super::quadrature::quadrature_grid;
    use super::*;
    use crate::scalar::to_f64;

    #[test]
    fn enumerate_circle_band_five() {
        // k in {-4,...,4}: nine classes, ordered 0, -1, 1, -2, 2, ...
        let reps = enumerate_reps::<f64>(Space::Torus1, 5.0);
        assert_eq!(reps.len(), 9);
        assert_eq!(reps[0].id, RepId::Freq1(0));
        assert_eq!(reps[1].id, RepId::Freq1(-1));
        assert_eq!(reps[2].id, RepId::Freq1(1));
        assert_eq!(reps[8].id, RepId::Freq1(4));
        assert!(reps.windows(2).all(|w| w[0].id < w[1].id));
    }

    #[test]
    fn enumerate_sphere_band_four() {
        let reps = enumerate_reps::<f64>(Space::Sphere2, 4.0);
        assert_eq!(reps.len(), 4);
        let total: usize = reps.iter().map(|r| r.dim * r.class_dim).sum();
        assert_eq!(total, 4 + 12); // sum (2l+1) for l = 0..3
        assert!(reps.iter().all(|r| r.class_dim == 1));
    }

    #[test]
    fn enumerate_rotation_band_four() {
        let reps = enumerate_reps::<f64>(Space::Rotation3, 4.0);
        assert_eq!(reps.len(), 4);
        let total: usize = reps.iter().map(|r| r.dim * r.class_dim).sum();
        assert_eq!(total, 1 + 9 + 25 + 49);
    }

    #[test]
    fn band_one_is_exactly_the_trivial_class() {
        for space in Space::ALL {
            let reps = enumerate_reps::<f64>(space, 1.0);
            assert_eq!(reps.len(), 1, "{space}");
            assert_eq!(reps[0].id, space.trivial_id());
            assert_eq!(reps[0].dim, 1);
            assert_eq!(to_f64(reps[0].eig), 1.0);
            assert!(enumerate_reps::<f64>(space, 0.5).is_empty());
        }
    }

    #[test]
    fn circle_coefficient_is_the_character() {
        let rep = rep_class::<f64>(Space::Torus1, RepId::Freq1(3)).unwrap();
        let x = 0.77;
        let m = matrix_coeff(Space::Torus1, &rep, [x, 0.0, 0.0]).unwrap();
        let z = m[(0, 0)];
        assert!((z.re - (3.0 * x).cos()).abs() < 1e-15);
        assert!((z.im - (3.0 * x).sin()).abs() < 1e-15);
    }

    #[test]
    fn sphere_coefficient_at_pole_hits_only_the_invariant_row() {
        let rep = rep_class::<f64>(Space::Sphere2, RepId::Level(5)).unwrap();
        let m = matrix_coeff(Space::Sphere2, &rep, [0.0, 0.0, 0.0]).unwrap();
        assert_eq!(m[(0, 0)], num_complex::Complex::new(1.0, 0.0));
        for i in 1..rep.dim {
            for j in 0..rep.dim {
                assert_eq!(m[(i, j)], num_complex::Complex::new(0.0, 0.0));
            }
        }
    }

    #[test]
    fn rotation_coefficient_at_identity_is_identity() {
        let rep = rep_class::<f64>(Space::Rotation3, RepId::Level(4)).unwrap();
        let m = matrix_coeff(Space::Rotation3, &rep, [0.0, 0.0, 0.0]).unwrap();
        let id = CMatrix::leading_identity(rep.dim, rep.dim);
        assert!(m.sub(&id).max_abs_entry() == 0.0);
    }

    #[test]
    fn hs_norm_is_sqrt_class_dim_on_every_model() {
        for space in Space::ALL {
            let grid = quadrature_grid::<f64>(space, 6.0).unwrap();
            for rep in enumerate_reps::<f64>(space, 6.0) {
                for i in [0, grid.len() / 3, grid.len() - 1] {
                    let m = matrix_coeff(space, &rep, grid.node(i)).unwrap();
                    let want = (rep.class_dim as f64).sqrt();
                    assert!(
                        (m.hs_norm() - want).abs() < 1e-10,
                        "{space} {:?} node {i}",
                        rep.id
                    );
                }
            }
        }
    }

    #[test]
    fn group_coefficients_are_unitary() {
        let rep = rep_class::<f64>(Space::Rotation3, RepId::Level(6)).unwrap();
        let x = [1.234, 0.816, 4.2];
        let m = matrix_coeff(Space::Rotation3, &rep, x).unwrap();
        let d = rep.dim;
        for i in 0..d {
            for k in 0..d {
                let mut acc = num_complex::Complex::new(0.0f64, 0.0);
                for j in 0..d {
                    acc += m[(i, j)] * m[(k, j)].conj();
                }
                let want = if i == k { 1.0 } else { 0.0 };
                assert!((acc.re - want).abs() < 1e-10 && acc.im.abs() < 1e-10);
            }
        }
    }

    #[test]
    fn rotation_coefficients_are_a_homomorphism() {
        // xi(x y) = xi(x) xi(y) pins the phase conventions.
        let rep = rep_class::<f64>(Space::Rotation3, RepId::Level(3)).unwrap();
        let x = (0.9, 1.7, 5.0);
        let y = (2.3, 0.4, 1.1);
        let z = rotation::euler_compose(x, y);
        let mx = matrix_coeff(Space::Rotation3, &rep, [x.0, x.1, x.2]).unwrap();
        let my = matrix_coeff(Space::Rotation3, &rep, [y.0, y.1, y.2]).unwrap();
        let mz = matrix_coeff(Space::Rotation3, &rep, [z.0, z.1, z.2]).unwrap();
        assert!(mx.matmul(&my).sub(&mz).max_abs_entry() < 1e-12);
    }

    #[test]
    fn quadrature_is_orthonormal_for_sphere_coefficients() {
        // Peter-Weyl orthogonality through the grid: the zonal columns of
        // distinct classes integrate to delta / d.
        let grid = quadrature_grid::<f64>(Space::Sphere2, 8.0).unwrap();
        let reps = enumerate_reps::<f64>(Space::Sphere2, 8.0);
        let mats: Vec<_> = (0..grid.len())
            .map(|i| {
                reps.iter()
                    .map(|r| matrix_coeff(Space::Sphere2, r, grid.node(i)).unwrap())
                    .collect::<Vec<_>>()
            })
            .collect();
        for (a, ra) in reps.iter().enumerate() {
            for ia in 0..ra.dim {
                for (b, rb) in reps.iter().enumerate() {
                    for ib in 0..rb.dim {
                        let mut acc = num_complex::Complex::new(0.0f64, 0.0);
                        for i in 0..grid.len() {
                            acc += mats[i][a][(ia, 0)]
                                * mats[i][b][(ib, 0)].conj()
                                * grid.weight(i);
                        }
                        let want = if a == b && ia == ib {
                            1.0 / ra.dim as f64
                        } else {
                            0.0
                        };
                        assert!(
                            (acc.re - want).abs() < 1e-10 && acc.im.abs() < 1e-10,
                            "reps {a},{b} rows {ia},{ib}: {acc}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn foreign_rep_ids_are_rejected() {
        assert!(rep_class::<f64>(Space::Torus1, RepId::Level(2)).is_err());
        assert!(rep_class::<f64>(Space::Sphere2, RepId::Freq1(1)).is_err());
        let rep = rep_class::<f64>(Space::Torus2, RepId::Freq2(1, 1)).unwrap();
        assert!(matrix_coeff(Space::Torus1, &rep, [0.0; 3]).is_err());
    }

    #[test]
    fn space_names_round_trip() {
        for space in Space::ALL {
            assert_eq!(space.name().parse::<Space>().unwrap(), space);
        }
        assert!("sphere".parse::<Space>().is_err());
    }

    #[test]
    fn rep_id_components_round_trip() {
        for space in Space::ALL {
            for rep in enumerate_reps::<f64>(space, 4.0) {
                let c = rep.id.components();
                assert_eq!(RepId::from_components(space, &c).unwrap(), rep.id);
            }
        }
        assert!(RepId::from_components(Space::Sphere2, &[-1]).is_err());
        assert!(RepId::from_components(Space::Torus2, &[1]).is_err());
    }
}
