//! Rotation-group helpers: ZYZ Euler angles `(alpha, beta, gamma)` mapped to
//! 3x3 matrices `R = R_z(alpha) R_y(beta) R_z(gamma)`, composition, inverse,
//! and the extraction back to angles.
//!
//! Canonical ranges: `alpha, gamma` in `[0, 2pi)`, `beta` in `[0, pi]`. The
//! parametrisation degenerates at `beta = 0` and `beta = pi` (only
//! `alpha + gamma` resp. `alpha - gamma` is determined); extraction then
//! fixes `gamma = 0`.

use crate::scalar::{real, Real};

pub type Mat3<T> = [[T; 3]; 3];

pub fn rot_z<T: Real>(a: T) -> Mat3<T> {
    let (s, c) = a.sin_cos();
    [
        [c, -s, T::zero()],
        [s, c, T::zero()],
        [T::zero(), T::zero(), T::one()],
    ]
}

pub fn rot_y<T: Real>(b: T) -> Mat3<T> {
    let (s, c) = b.sin_cos();
    [
        [c, T::zero(), s],
        [T::zero(), T::one(), T::zero()],
        [-s, T::zero(), c],
    ]
}

pub fn mat_mul3<T: Real>(a: &Mat3<T>, b: &Mat3<T>) -> Mat3<T> {
    let mut out = [[T::zero(); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let mut acc = T::zero();
            for k in 0..3 {
                acc = acc + a[i][k] * b[k][j];
            }
            out[i][j] = acc;
        }
    }
    out
}

pub fn euler_to_matrix<T: Real>(alpha: T, beta: T, gamma: T) -> Mat3<T> {
    mat_mul3(&mat_mul3(&rot_z(alpha), &rot_y(beta)), &rot_z(gamma))
}

/// Euler angles of `R`, in canonical ranges.
pub fn matrix_to_euler<T: Real>(r: &Mat3<T>) -> (T, T, T) {
    let two_pi = T::PI() + T::PI();
    let wrap = |a: T| {
        let mut a = a % two_pi;
        if a < T::zero() {
            a = a + two_pi;
        }
        a
    };
    let c = r[2][2].max(-T::one()).min(T::one());
    let eps = real::<T>(1e-12);
    if c >= T::one() - eps {
        // beta = 0: R is a z-rotation by alpha + gamma.
        (wrap(r[1][0].atan2(r[0][0])), T::zero(), T::zero())
    } else if c <= -T::one() + eps {
        // beta = pi: R = R_z(alpha - gamma) R_y(pi).
        ((-r[0][1]).atan2(-r[0][0]), T::PI(), T::zero())
    } else {
        let beta = c.acos();
        let alpha = wrap(r[1][2].atan2(r[0][2]));
        let gamma = wrap(r[2][1].atan2(-r[2][0]));
        (alpha, beta, gamma)
    }
}

/// Euler angles of the product `x * y` of two rotations given as angles.
pub fn euler_compose<T: Real>(x: (T, T, T), y: (T, T, T)) -> (T, T, T) {
    let rx = euler_to_matrix(x.0, x.1, x.2);
    let ry = euler_to_matrix(y.0, y.1, y.2);
    matrix_to_euler(&mat_mul3(&rx, &ry))
}

/// Euler angles of the inverse rotation: the transpose of the matrix, which
/// in angles is `(pi - gamma, beta, pi - alpha)` up to wrapping.
pub fn euler_inverse<T: Real>(x: (T, T, T)) -> (T, T, T) {
    let r = euler_to_matrix(x.0, x.1, x.2);
    let rt = [
        [r[0][0], r[1][0], r[2][0]],
        [r[0][1], r[1][1], r[2][1]],
        [r[0][2], r[1][2], r[2][2]],
    ];
    matrix_to_euler(&rt)
}
