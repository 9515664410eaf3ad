//! Wigner d-matrices `d^l_{mn}(beta) = <l m| exp(-i beta J_y) |l n>`.
//!
//! Evaluation runs the three-term recurrence in `l` at fixed `(m, n)`
//! (Varshalovich–Moskalev–Khersonskii 4.8.2):
//!
//! ```text
//! l sqrt(((l+1)^2-m^2)((l+1)^2-n^2)) d^{l+1}
//!     = (2l+1) ( l(l+1) cos(beta) - m n ) d^l
//!       - (l+1) sqrt((l^2-m^2)(l^2-n^2)) d^{l-1}
//! ```
//!
//! seeded at `l0 = max(|m|, |n|)` with the single-term closed form (the
//! defining sum collapses there, so no cancellation occurs). The recurrence
//! self-starts because the `d^{l0-1}` coefficient vanishes at `l = l0`.
//! Running the recurrence upward is numerically benign at the band limits
//! used here, whereas the factorial sum loses digits to cancellation once
//! `l` passes ~15.
//!
//! Sign conventions match the standard tables, e.g. `d^1_{1,0} = -sin(beta)/sqrt(2)`
//! and `D^l(alpha, beta, gamma) = exp(-i m alpha) d^l_{mn}(beta) exp(-i n gamma)`
//! for ZYZ Euler angles, so `D^l(0,0,0)` is the identity.

use crate::scalar::{real, Real};

/// `binom(n, k)` as a float, by the multiplicative ladder (no factorial
/// overflow; exact for small arguments because each partial product of
/// integers below 2^53 rounds to itself).
fn binomial(n: i64, k: i64) -> f64 {
    debug_assert!(n >= 0 && (0..=n).contains(&k));
    let k = k.min(n - k);
    let mut acc = 1.0f64;
    for i in 1..=k {
        acc = acc * (n - k + i) as f64 / i as f64;
    }
    acc
}

/// `x^p` for non-negative integer `p`, with `0^0 = 1`.
fn ipow<T: Real>(x: T, p: i64) -> T {
    debug_assert!(p >= 0);
    x.powi(p as i32)
}

/// Seed value `d^{l0}_{mn}(beta)` at `l0 = max(|m|, |n|)`.
///
/// One of the four indices `+-l0` is extremal; each case is a single term of
/// the Wigner sum in half-angle powers.
fn seed<T: Real>(m: i64, n: i64, cos_half: T, sin_half: T) -> T {
    let j = m.abs().max(n.abs());
    if m == j {
        let c = real::<T>(binomial(2 * j, j - n).sqrt());
        let sign = if (j - n) % 2 == 0 { T::one() } else { -T::one() };
        c * ipow(cos_half, j + n) * ipow(sin_half, j - n) * sign
    } else if m == -j {
        let c = real::<T>(binomial(2 * j, j - n).sqrt());
        c * ipow(cos_half, j - n) * ipow(sin_half, j + n)
    } else if n == j {
        let c = real::<T>(binomial(2 * j, j - m).sqrt());
        c * ipow(cos_half, j + m) * ipow(sin_half, j - m)
    } else {
        // n == -j
        let c = real::<T>(binomial(2 * j, j - m).sqrt());
        let sign = if (j + m) % 2 == 0 { T::one() } else { -T::one() };
        c * ipow(cos_half, j - m) * ipow(sin_half, j + m) * sign
    }
}

/// One step `d^{l+1}` from `(d^l, d^{l-1})` at fixed `(m, n)`, `l >= 1`.
#[inline]
fn step<T: Real>(l: i64, m: i64, n: i64, cos_beta: T, d_l: T, d_lm1: T) -> T {
    let lf = real::<T>(l as f64);
    let a = real::<T>(((2 * l + 1) * l * (l + 1)) as f64) * cos_beta
        - real::<T>(((2 * l + 1) * m * n) as f64);
    let b = real::<T>((l + 1) as f64)
        * real::<T>((((l * l - m * m) * (l * l - n * n)) as f64).sqrt());
    let den = lf
        * real::<T>(
            ((((l + 1) * (l + 1) - m * m) * ((l + 1) * (l + 1) - n * n)) as f64).sqrt(),
        );
    (a * d_l - b * d_lm1) / den
}

/// All values `d^l_{mn}(beta)` for `l <= l_max`, in one flat table.
///
/// Layout: level `l` starts at offset `l(2l-1)(2l+1)/3` and stores the
/// `(2l+1) x (2l+1)` block row-major in `(m + l, n + l)`.
#[derive(Clone, Debug)]
pub struct DTable<T> {
    l_max: usize,
    data: Vec<T>,
}

#[inline]
fn level_offset(l: usize) -> usize {
    // l (2l-1)(2l+1) / 3, written so l = 0 cannot underflow.
    (4 * l * l * l).saturating_sub(l) / 3
}

impl<T: Real> DTable<T> {
    #[inline]
    pub fn get(&self, l: usize, m: i64, n: i64) -> T {
        debug_assert!(l <= self.l_max);
        let d = 2 * l + 1;
        let li = l as i64;
        self.data[level_offset(l) + (m + li) as usize * d + (n + li) as usize]
    }

    pub fn l_max(&self) -> usize {
        self.l_max
    }
}

/// Builds the full table at one polar angle.
pub fn d_table<T: Real>(l_max: usize, beta: T) -> DTable<T> {
    let total = level_offset(l_max) + (2 * l_max + 1) * (2 * l_max + 1);
    let mut data = vec![T::zero(); total];
    let half = beta / real(2.0);
    let (cos_half, sin_half) = (half.cos(), half.sin());
    let cos_beta = beta.cos();
    let lmi = l_max as i64;
    for m in -lmi..=lmi {
        for n in -lmi..=lmi {
            let l0 = m.abs().max(n.abs());
            let mut d_prev = T::zero();
            let mut d_cur = seed(m, n, cos_half, sin_half);
            write(&mut data, l0 as usize, m, n, d_cur);
            for l in l0..lmi {
                let d_next = if l == 0 {
                    cos_beta // d^1_{00}; the generic step is 0/0 at l = 0
                } else {
                    step(l, m, n, cos_beta, d_cur, d_prev)
                };
                write(&mut data, (l + 1) as usize, m, n, d_next);
                d_prev = d_cur;
                d_cur = d_next;
            }
        }
    }
    DTable { l_max, data }
}

#[inline]
fn write<T: Real>(data: &mut [T], l: usize, m: i64, n: i64, v: T) {
    let d = 2 * l + 1;
    let li = l as i64;
    data[level_offset(l) + (m + li) as usize * d + (n + li) as usize] = v;
}

/// The `n = 0` column `d^l_{m0}(beta)` for all `l <= l_max`, `|m| <= l`.
///
/// These are the only values the sphere model needs (they are the zonal
/// matrix elements, proportional to spherical harmonics); layout is level
/// offset `l^2`, index `m + l`.
#[derive(Clone, Debug)]
pub struct DColumnTable<T> {
    l_max: usize,
    data: Vec<T>,
}

impl<T: Real> DColumnTable<T> {
    #[inline]
    pub fn get(&self, l: usize, m: i64) -> T {
        debug_assert!(l <= self.l_max);
        self.data[l * l + (m + l as i64) as usize]
    }

    pub fn l_max(&self) -> usize {
        self.l_max
    }
}

pub fn d_column_table<T: Real>(l_max: usize, beta: T) -> DColumnTable<T> {
    let mut data = vec![T::zero(); (l_max + 1) * (l_max + 1)];
    let half = beta / real(2.0);
    let (cos_half, sin_half) = (half.cos(), half.sin());
    let cos_beta = beta.cos();
    let lmi = l_max as i64;
    for m in -lmi..=lmi {
        let l0 = m.abs();
        let mut d_prev = T::zero();
        let mut d_cur = seed(m, 0, cos_half, sin_half);
        data[(l0 * l0 + (m + l0)) as usize] = d_cur;
        for l in l0..lmi {
            let d_next = if l == 0 {
                cos_beta
            } else {
                step(l, m, 0, cos_beta, d_cur, d_prev)
            };
            data[((l + 1) * (l + 1) + (m + l + 1)) as usize] = d_next;
            d_prev = d_cur;
            d_cur = d_next;
        }
    }
    DColumnTable { l_max, data }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Closed forms for l = 1 and l = 2 from the standard tables, evaluated
    // directly from trig identities: an oracle independent of the recurrence.
    fn d1(m: i64, n: i64, b: f64) -> f64 {
        let (c, s) = (b.cos(), b.sin());
        let r2 = 2f64.sqrt();
        match (m, n) {
            (1, 1) => (1.0 + c) / 2.0,
            (1, 0) => -s / r2,
            (1, -1) => (1.0 - c) / 2.0,
            (0, 1) => s / r2,
            (0, 0) => c,
            (0, -1) => -s / r2,
            (-1, 1) => (1.0 - c) / 2.0,
            (-1, 0) => s / r2,
            (-1, -1) => (1.0 + c) / 2.0,
            _ => unreachable!(),
        }
    }

    fn d2(m: i64, n: i64, b: f64) -> f64 {
        let (c, s) = (b.cos(), b.sin());
        let q = (1.5f64).sqrt();
        match (m, n) {
            (2, 2) => (1.0 + c).powi(2) / 4.0,
            (2, 1) => -s * (1.0 + c) / 2.0,
            (2, 0) => q * s * s / 2.0,
            (2, -1) => -s * (1.0 - c) / 2.0,
            (2, -2) => (1.0 - c).powi(2) / 4.0,
            (1, 1) => (1.0 + c) * (2.0 * c - 1.0) / 2.0,
            (1, 0) => -q * s * c,
            (1, -1) => (1.0 - c) * (2.0 * c + 1.0) / 2.0,
            (0, 0) => (3.0 * c * c - 1.0) / 2.0,
            // remaining entries via the symmetries d_{mn} = (-1)^{m-n} d_{nm}
            // = d_{-n,-m}
            (m, n) if m < n => {
                let sign = if (n - m) % 2 == 0 { 1.0 } else { -1.0 };
                sign * d2(n, m, b)
            }
            (m, n) => d2(-n, -m, b),
        }
    }

    #[test]
    fn matches_closed_forms_for_l1_l2() {
        for &beta in &[0.0, 0.31, 1.0, std::f64::consts::FRAC_PI_2, 2.4, 3.1] {
            let tab = d_table::<f64>(2, beta);
            for m in -1i64..=1 {
                for n in -1i64..=1 {
                    assert!(
                        (tab.get(1, m, n) - d1(m, n, beta)).abs() < 1e-14,
                        "d1[{m},{n}]({beta})"
                    );
                }
            }
            for m in -2i64..=2 {
                for n in -2i64..=2 {
                    assert!(
                        (tab.get(2, m, n) - d2(m, n, beta)).abs() < 1e-13,
                        "d2[{m},{n}]({beta})"
                    );
                }
            }
        }
    }

    #[test]
    fn identity_angle_gives_kronecker_delta_exactly() {
        let tab = d_table::<f64>(12, 0.0);
        for l in 0..=12usize {
            let li = l as i64;
            for m in -li..=li {
                for n in -li..=li {
                    let expect = if m == n { 1.0 } else { 0.0 };
                    assert_eq!(tab.get(l, m, n), expect, "l={l} m={m} n={n}");
                }
            }
        }
    }

    #[test]
    fn rows_are_orthonormal() {
        // Unitarity of d^l: rows pairwise orthonormal at any angle.
        let beta = 0.8137;
        let l = 9usize;
        let tab = d_table::<f64>(l, beta);
        let li = l as i64;
        for m1 in -li..=li {
            for m2 in -li..=li {
                let dot: f64 = (-li..=li)
                    .map(|n| tab.get(l, m1, n) * tab.get(l, m2, n))
                    .sum();
                let expect = if m1 == m2 { 1.0 } else { 0.0 };
                assert!(
                    (dot - expect).abs() < 1e-12,
                    "l={l} rows {m1},{m2}: {dot}"
                );
            }
        }
    }

    #[test]
    fn column_table_agrees_with_full_table() {
        let beta = 1.9273;
        let l_max = 20usize;
        let full = d_table::<f64>(l_max, beta);
        let col = d_column_table::<f64>(l_max, beta);
        for l in 0..=l_max {
            let li = l as i64;
            for m in -li..=li {
                assert!(
                    (full.get(l, m, 0) - col.get(l, m)).abs() < 1e-13,
                    "l={l} m={m}"
                );
            }
        }
    }

    #[test]
    fn high_degree_stays_bounded_and_unitary() {
        // The factorial formula would have lost digits well before l = 96;
        // the recurrence must stay on the unit sphere of row norms.
        let beta = 0.4321;
        let l = 96usize;
        let tab = d_table::<f64>(l, beta);
        let li = l as i64;
        for m in [-96i64, -40, 0, 17, 96] {
            let norm: f64 = (-li..=li).map(|n| tab.get(l, m, n).powi(2)).sum();
            assert!((norm - 1.0).abs() < 1e-10, "row m={m}: {norm}");
        }
    }
}
