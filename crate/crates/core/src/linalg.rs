//! Minimal dense complex matrices.
//!
//! Coefficient blocks are small (at desk scale d <= 49), square, and only
//! need a handful of operations: Hilbert–Schmidt norm, product, scaling and
//! the trace pairing tr(A B). A purpose-built row-major type keeps those
//! operations auditable and generic over the scalar.

use num_complex::Complex;

use crate::scalar::Real;

#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix<T> {
    dim: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> CMatrix<T> {
    pub fn zeros(dim: usize) -> Self {
        CMatrix {
            dim,
            data: vec![Complex::new(T::zero(), T::zero()); dim * dim],
        }
    }

    /// Identity on the leading `k` basis vectors, zero elsewhere.
    pub fn leading_identity(dim: usize, k: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..k.min(dim) {
            m[(i, i)] = Complex::new(T::one(), T::zero());
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        CMatrix { dim, data }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn data(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn hs_norm_sq(&self) -> T {
        self.data
            .iter()
            .fold(T::zero(), |acc, z| acc + z.norm_sqr())
    }

    /// Hilbert–Schmidt (Frobenius) norm.
    pub fn hs_norm(&self) -> T {
        self.hs_norm_sq().sqrt()
    }

    pub fn scale(&self, c: Complex<T>) -> Self {
        CMatrix {
            dim: self.dim,
            data: self.data.iter().map(|z| z * c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "matrix dimensions must agree");
        CMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "matrix dimensions must agree");
        CMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "matrix dimensions must agree");
        let d = self.dim;
        let mut out = Self::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let a = self[(i, k)];
                if a.re.is_zero() && a.im.is_zero() {
                    continue;
                }
                for j in 0..d {
                    let v = out[(i, j)] + a * other[(k, j)];
                    out[(i, j)] = v;
                }
            }
        }
        out
    }

    /// tr(self * other) without materializing the product.
    pub fn trace_product(&self, other: &Self) -> Complex<T> {
        assert_eq!(self.dim, other.dim, "matrix dimensions must agree");
        let d = self.dim;
        let mut acc = Complex::new(T::zero(), T::zero());
        for i in 0..d {
            for j in 0..d {
                acc = acc + self[(i, j)] * other[(j, i)];
            }
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|z| z.re.is_zero() && z.im.is_zero())
    }

    pub fn max_abs_entry(&self) -> T {
        self.data
            .iter()
            .fold(T::zero(), |acc, z| acc.max(z.norm()))
    }
}

impl<T: Real> std::ops::Index<(usize, usize)> for CMatrix<T> {
    type Output = Complex<T>;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.data[i * self.dim + j]
    }
}

impl<T: Real> std::ops::IndexMut<(usize, usize)> for CMatrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        &mut self.data[i * self.dim + j]
    }
}
