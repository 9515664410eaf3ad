//! Quadrature rules on the model spaces.
//!
//! Every grid is a product rule in the natural coordinates, normalized so the
//! weights sum to one (probability Haar measure):
//!
//! * tori: uniform (trapezoidal) points per circle factor, which integrate
//!   `exp(i k x)` exactly for `|k| < n`;
//! * `S^2`: Gauss–Legendre in `cos(theta)` times uniform in `phi`, with the
//!   polar weight `sin(theta) dtheta / 2` absorbed into the Legendre weights;
//! * `SO(3)`: Gauss–Legendre in `cos(beta)` times uniform in `alpha`, `gamma`
//!   (ZYZ Euler angles, Haar density `sin(beta)/(8 pi^2)`).
//!
//! A grid constructed for `exact_degree = D` integrates products of any two
//! matrix coefficients with eigenvalue parameter `<= D` exactly: such products
//! reduce, after azimuthal averaging, to polynomials of degree `<= 2 floor(D)`
//! in the Legendre variable, plus phases of frequency `<= 2 floor(D)` per
//! circle factor.
//!
//! Sup-norm evaluation meshes are built separately ([`sup_mesh`]): uniform in
//! every axis and *endpoint inclusive* in the polar angle, so the identity
//! coset (the pole / identity rotation, where reproducing kernels peak) is
//! always a mesh point. Those meshes carry uniform dummy weights and are only
//! meant for pointwise max estimation, never for integration.

use crate::error::{Error, Result};
use crate::scalar::{real, real_from_usize, Real};
use crate::space::Space;

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`,
/// nodes ascending. Newton iteration on the Legendre recurrence; standard
/// Chebyshev-based initial guesses converge in a handful of steps.
pub fn gauss_legendre<T: Real>(n: usize) -> (Vec<T>, Vec<T>) {
    assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
    let mut nodes = vec![T::zero(); n];
    let mut weights = vec![T::zero(); n];
    let nf: T = real_from_usize(n);
    for i in 0..n {
        // Descending initial guess; stored ascending below.
        let guess = (T::PI() * (real_from_usize::<T>(i) + real(0.75))
            / (nf + real(0.5)))
        .cos();
        let mut x = guess;
        for _ in 0..64 {
            let (p, dp) = legendre_with_derivative(n, x);
            let dx = p / dp;
            x = x - dx;
            if dx.abs() <= T::epsilon() * (T::one() + x.abs()) {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(n, x);
        let w = real::<T>(2.0) / ((T::one() - x * x) * dp * dp);
        nodes[n - 1 - i] = x;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Evaluates `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre_with_derivative<T: Real>(n: usize, x: T) -> (T, T) {
    let mut p_prev = T::one();
    let mut p = x;
    if n == 0 {
        return (T::one(), T::zero());
    }
    for l in 1..n {
        let lf: T = real_from_usize(l);
        let p_next = ((real::<T>(2.0) * lf + T::one()) * x * p - lf * p_prev)
            / (lf + T::one());
        p_prev = p;
        p = p_next;
    }
    // P_n'(x) = n (x P_n - P_{n-1}) / (x^2 - 1)
    let nf: T = real_from_usize(n);
    let dp = nf * (x * p - p_prev) / (x * x - T::one());
    (p, dp)
}

/// Product-structured node set on one of the model spaces.
///
/// `exact_degree` is the largest eigenvalue parameter `D` such that products
/// of two matrix coefficients of degree `<= D` are integrated exactly.
#[derive(Clone, Debug)]
pub struct QuadratureGrid<T> {
    pub(crate) space: Space,
    pub(crate) exact_degree: f64,
    pub(crate) axes: GridAxes<T>,
}

#[derive(Clone, Debug)]
pub(crate) enum GridAxes<T> {
    /// Uniform circle points, weight `1/n` each.
    Circle { xs: Vec<T> },
    /// Tensor square of uniform circle points.
    Torus { xs: Vec<T>, ys: Vec<T> },
    /// Polar (theta) nodes with explicit weights summing to 1, uniform phis.
    Sphere {
        thetas: Vec<T>,
        theta_w: Vec<T>,
        phis: Vec<T>,
    },
    /// ZYZ Euler angles: uniform alpha/gamma, weighted beta.
    Euler {
        alphas: Vec<T>,
        betas: Vec<T>,
        beta_w: Vec<T>,
        gammas: Vec<T>,
    },
}

impl<T: Real> QuadratureGrid<T> {
    pub fn space(&self) -> Space {
        self.space
    }

    pub fn exact_degree(&self) -> f64 {
        self.exact_degree
    }

    pub fn len(&self) -> usize {
        match &self.axes {
            GridAxes::Circle { xs } => xs.len(),
            GridAxes::Torus { xs, ys } => xs.len() * ys.len(),
            GridAxes::Sphere { thetas, phis, .. } => thetas.len() * phis.len(),
            GridAxes::Euler {
                alphas,
                betas,
                gammas,
                ..
            } => alphas.len() * betas.len() * gammas.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Coordinates of node `i` in canonical flat order (unused slots zero).
    ///
    /// Flat order: circle index; `(ix, iy)` row-major; `(itheta, iphi)`
    /// row-major; `((ialpha, ibeta), igamma)` row-major.
    pub fn node(&self, i: usize) -> [T; 3] {
        match &self.axes {
            GridAxes::Circle { xs } => [xs[i], T::zero(), T::zero()],
            GridAxes::Torus { xs, ys } => {
                let n = ys.len();
                [xs[i / n], ys[i % n], T::zero()]
            }
            GridAxes::Sphere { thetas, phis, .. } => {
                let n = phis.len();
                [thetas[i / n], phis[i % n], T::zero()]
            }
            GridAxes::Euler {
                alphas,
                betas,
                gammas,
                ..
            } => {
                let (nb, ng) = (betas.len(), gammas.len());
                let ia = i / (nb * ng);
                let ib = (i / ng) % nb;
                let ig = i % ng;
                [alphas[ia], betas[ib], gammas[ig]]
            }
        }
    }

    pub fn weight(&self, i: usize) -> T {
        match &self.axes {
            GridAxes::Circle { xs } => T::one() / real_from_usize(xs.len()),
            GridAxes::Torus { xs, ys } => {
                T::one() / real_from_usize(xs.len() * ys.len())
            }
            GridAxes::Sphere {
                thetas: _,
                theta_w,
                phis,
            } => {
                let n = phis.len();
                theta_w[i / n] / real_from_usize(n)
            }
            GridAxes::Euler {
                alphas,
                betas,
                beta_w,
                gammas,
            } => {
                let (nb, ng) = (betas.len(), gammas.len());
                let ib = (i / ng) % nb;
                beta_w[ib] / real_from_usize(alphas.len() * ng)
            }
        }
    }

    pub fn weights_sum(&self) -> T {
        (0..self.len()).fold(T::zero(), |acc, i| acc + self.weight(i))
    }
}

fn positive_degree(space: Space, degree: f64) -> Result<usize> {
    if !(degree >= 1.0) {
        return Err(Error::InvalidIndex(format!(
            "grid degree must be >= 1, got {degree}"
        )));
    }
    let cap = space.grid_cap();
    if degree > cap {
        return Err(Error::ResourceCap {
            space,
            what: "grid exact_degree",
            requested: degree,
            cap,
        });
    }
    Ok(degree.floor() as usize)
}

fn uniform_circle<T: Real>(n: usize) -> Vec<T> {
    let step = real::<T>(2.0) * T::PI() / real_from_usize(n);
    (0..n).map(|j| step * real_from_usize(j)).collect()
}

/// Builds the quadrature rule of the given exactness degree.
///
/// Errors if `degree < 1` or `degree` exceeds the grid resource cap (four
/// times the band cap, so that the mandated 4x over-sampled norm grids exist
/// for every admissible band limit).
pub fn quadrature_grid<T: Real>(space: Space, degree: f64) -> Result<QuadratureGrid<T>> {
    let bound = positive_degree(space, degree)?;
    let axes = match space {
        Space::Torus1 => GridAxes::Circle {
            xs: uniform_circle(2 * bound + 1),
        },
        Space::Torus2 => GridAxes::Torus {
            xs: uniform_circle(2 * bound + 1),
            ys: uniform_circle(2 * bound + 1),
        },
        Space::Sphere2 => {
            let (xs, ws) = gauss_legendre::<T>(bound + 1);
            GridAxes::Sphere {
                thetas: xs.iter().map(|x| x.acos()).collect(),
                theta_w: ws.iter().map(|w| *w / real(2.0)).collect(),
                phis: uniform_circle(2 * bound + 1),
            }
        }
        Space::Rotation3 => {
            let (xs, ws) = gauss_legendre::<T>(bound + 1);
            GridAxes::Euler {
                alphas: uniform_circle(2 * bound + 1),
                betas: xs.iter().map(|x| x.acos()).collect(),
                beta_w: ws.iter().map(|w| *w / real(2.0)).collect(),
                gammas: uniform_circle(2 * bound + 1),
            }
        }
    };
    Ok(QuadratureGrid {
        space,
        exact_degree: degree,
        axes,
    })
}

/// Uniform evaluation mesh for sup-norm estimation, endpoint inclusive in
/// the polar angle. Carries uniform weights; not a quadrature rule.
pub fn sup_mesh<T: Real>(space: Space, degree: f64) -> Result<QuadratureGrid<T>> {
    let bound = positive_degree(space, degree)?;
    let axes = match space {
        Space::Torus1 | Space::Torus2 => {
            return quadrature_grid(space, degree); // uniform already, contains 0
        }
        Space::Sphere2 => {
            let n_theta = 2 * bound + 1;
            let step = T::PI() / real_from_usize(n_theta - 1);
            GridAxes::Sphere {
                thetas: (0..n_theta).map(|j| step * real_from_usize(j)).collect(),
                theta_w: vec![T::one() / real_from_usize(n_theta); n_theta],
                phis: uniform_circle(2 * bound + 1),
            }
        }
        Space::Rotation3 => {
            let n_beta = 2 * bound + 1;
            let step = T::PI() / real_from_usize(n_beta - 1);
            GridAxes::Euler {
                alphas: uniform_circle(2 * bound + 1),
                betas: (0..n_beta).map(|j| step * real_from_usize(j)).collect(),
                beta_w: vec![T::one() / real_from_usize(n_beta); n_beta],
                gammas: uniform_circle(2 * bound + 1),
            }
        }
    };
    Ok(QuadratureGrid {
        space,
        exact_degree: degree,
        axes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_small_rules_match_tables() {
        // 2-point rule: +-1/sqrt(3), weights 1.
        let (x, w) = gauss_legendre::<f64>(2);
        assert!((x[0] + 1.0 / 3f64.sqrt()).abs() < 1e-15);
        assert!((x[1] - 1.0 / 3f64.sqrt()).abs() < 1e-15);
        assert!((w[0] - 1.0).abs() < 1e-14 && (w[1] - 1.0).abs() < 1e-14);
        // 3-point rule: 0, +-sqrt(3/5), weights 8/9, 5/9.
        let (x, w) = gauss_legendre::<f64>(3);
        assert!(x[1].abs() < 1e-15);
        assert!((x[2] - (0.6f64).sqrt()).abs() < 1e-14);
        assert!((w[1] - 8.0 / 9.0).abs() < 1e-14);
        assert!((w[0] - 5.0 / 9.0).abs() < 1e-14);
    }

    #[test]
    fn gauss_legendre_integrates_monomials_exactly() {
        // n nodes are exact through degree 2n-1; x^{2n} shows the first error.
        let n = 7;
        let (x, w) = gauss_legendre::<f64>(n);
        for deg in 0..(2 * n) {
            let num: f64 = x
                .iter()
                .zip(&w)
                .map(|(xi, wi)| wi * xi.powi(deg as i32))
                .sum();
            let exact = if deg % 2 == 0 {
                2.0 / (deg as f64 + 1.0)
            } else {
                0.0
            };
            assert!(
                (num - exact).abs() < 1e-13,
                "degree {deg}: {num} vs {exact}"
            );
        }
    }

    #[test]
    fn weights_sum_to_one_on_every_model() {
        for space in Space::ALL {
            let grid = quadrature_grid::<f64>(space, 6.0).unwrap();
            assert!(
                (grid.weights_sum() - 1.0).abs() < 1e-12,
                "{space}: weights must normalize the Haar measure"
            );
        }
    }

    #[test]
    fn torus_grid_matches_stated_size() {
        // Degree 5 needs 11 uniform nodes: frequencies through 10 are exact.
        let grid = quadrature_grid::<f64>(Space::Torus1, 5.0).unwrap();
        assert_eq!(grid.len(), 11);
    }

    #[test]
    fn sup_mesh_contains_base_point() {
        for space in Space::ALL {
            let mesh = sup_mesh::<f64>(space, 4.0).unwrap();
            let has_origin = (0..mesh.len()).any(|i| {
                let p = mesh.node(i);
                p.iter().all(|c| c.abs() < 1e-15)
            });
            assert!(has_origin, "{space}: identity coset missing from sup mesh");
        }
    }

    #[test]
    fn grid_cap_is_enforced() {
        let err = quadrature_grid::<f64>(Space::Sphere2, 1.0e6).unwrap_err();
        assert!(matches!(err, Error::ResourceCap { .. }));
        let err = quadrature_grid::<f64>(Space::Torus1, 0.5).unwrap_err();
        assert!(matches!(err, Error::InvalidIndex(_)));
    }
}
