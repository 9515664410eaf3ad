//! Coefficient fields (finitely supported maps `xi -> sigma(xi)`) and
//! sampled functions on quadrature grids.
//!
//! A [`CoefficientField`] stores one `d x d` complex matrix per irreducible
//! class, keyed by [`RepId`] in spectral order. Rows `i >= k` of every entry
//! are identically zero (they pair with the zero columns of `xi(x)` on
//! homogeneous models, so they can never influence synthesis); `insert`
//! projects them away so the invariant holds by construction. Absent keys
//! mean the zero matrix.
//!
//! Serialization is JSON: `{"entries": [{"id": [..], "matrix": [[[re, im],
//! ..], ..]}, ..], "space": "t1"}` with entries in spectral order and matrix
//! rows in index order. Floats are written in the shortest form that parses
//! back to the identical double, so a round trip is entrywise exact.

use std::collections::BTreeMap;

use num_complex::Complex;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::scalar::{real, to_f64, Real};
use crate::space::quadrature::QuadratureGrid;
use crate::space::{in_band, rep_class, RepId, Space};

#[derive(Clone, Debug)]
pub struct CoefficientField<T> {
    space: Space,
    entries: BTreeMap<RepId, CMatrix<T>>,
}

impl<T: Real> CoefficientField<T> {
    pub fn new(space: Space) -> Self {
        CoefficientField {
            space,
            entries: BTreeMap::new(),
        }
    }

    pub fn space(&self) -> Space {
        self.space
    }

    /// Stores `sigma(xi)`. The id must belong to the field's space and the
    /// matrix must be `d x d`; rows `i >= k` are zeroed (they are invisible
    /// to synthesis and excluded by the coefficient-space convention).
    pub fn insert(&mut self, id: RepId, mut m: CMatrix<T>) -> Result<()> {
        let rep = rep_class::<T>(self.space, id)?;
        if m.dim() != rep.dim {
            return Err(Error::InvalidIndex(format!(
                "matrix for {id:?} must be {d} x {d}, got {got} x {got}",
                d = rep.dim,
                got = m.dim()
            )));
        }
        for i in rep.class_dim..rep.dim {
            for j in 0..rep.dim {
                m[(i, j)] = Complex::new(T::zero(), T::zero());
            }
        }
        self.entries.insert(id, m);
        Ok(())
    }

    pub fn get(&self, id: RepId) -> Option<&CMatrix<T>> {
        self.entries.get(&id)
    }

    /// Entries in spectral `(eig, id)` order.
    pub fn entries(&self) -> impl Iterator<Item = (&RepId, &CMatrix<T>)> {
        self.entries.iter()
    }

    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Band limit: the largest spectral parameter carrying a nonzero entry
    /// (0 for the zero field; every actual class has parameter `>= 1`).
    pub fn degree(&self) -> f64 {
        self.entries
            .iter()
            .filter(|(_, m)| !m.is_zero())
            .map(|(id, _)| (1.0 + id.lambda() as f64).sqrt())
            .fold(0.0, f64::max)
    }

    /// The sub-field of classes with spectral parameter `<= l`.
    pub fn restricted(&self, l: f64) -> Self {
        let entries = self
            .entries
            .iter()
            .filter(|(id, _)| in_band(id.lambda(), l))
            .map(|(id, m)| (*id, m.clone()))
            .collect();
        CoefficientField {
            space: self.space,
            entries,
        }
    }

    /// The complementary sub-field of classes with parameter `> l`.
    pub fn tail(&self, l: f64) -> Self {
        let entries = self
            .entries
            .iter()
            .filter(|(id, _)| !in_band(id.lambda(), l))
            .map(|(id, m)| (*id, m.clone()))
            .collect();
        CoefficientField {
            space: self.space,
            entries,
        }
    }

    pub fn scale(&self, c: Complex<T>) -> Self {
        let entries = self
            .entries
            .iter()
            .map(|(id, m)| (*id, m.scale(c)))
            .collect();
        CoefficientField {
            space: self.space,
            entries,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_space(other)?;
        let mut out = self.clone();
        for (id, m) in &other.entries {
            match out.entries.get_mut(id) {
                Some(existing) => *existing = existing.add(m),
                None => {
                    out.entries.insert(*id, m.clone());
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_space(other)?;
        let minus_one = Complex::new(-T::one(), T::zero());
        self.add(&other.scale(minus_one))
    }

    fn check_space(&self, other: &Self) -> Result<()> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch {
                expected: self.space,
                got: other.space,
            });
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        let entries: Vec<Value> = self
            .entries
            .iter()
            .map(|(id, m)| {
                let d = m.dim();
                let rows: Vec<Value> = (0..d)
                    .map(|i| {
                        let row: Vec<Value> = (0..d)
                            .map(|j| {
                                let z = m[(i, j)];
                                json!([finite(to_f64(z.re)), finite(to_f64(z.im))])
                            })
                            .collect();
                        Value::Array(row)
                    })
                    .collect();
                json!({ "id": id.components(), "matrix": rows })
            })
            .collect();
        json!({ "space": self.space.name(), "entries": entries }).to_string()
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(s)
            .map_err(|e| Error::Deserialize(format!("coefficient field: {e}")))?;
        let space: Space = v
            .get("space")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Deserialize("missing \"space\"".into()))?
            .parse()?;
        let mut field = CoefficientField::new(space);
        let entries = v
            .get("entries")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Deserialize("missing \"entries\" array".into()))?;
        for e in entries {
            let comps: Vec<i64> = e
                .get("id")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Deserialize("entry missing \"id\"".into()))?
                .iter()
                .map(|c| {
                    c.as_i64()
                        .ok_or_else(|| Error::Deserialize("non-integer id".into()))
                })
                .collect::<Result<_>>()?;
            let id = RepId::from_components(space, &comps)?;
            let rep = rep_class::<T>(space, id)?;
            let rows = e
                .get("matrix")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Deserialize("entry missing \"matrix\"".into()))?;
            if rows.len() != rep.dim {
                return Err(Error::Deserialize(format!(
                    "matrix for {id:?} has {} rows, expected {}",
                    rows.len(),
                    rep.dim
                )));
            }
            let mut m = CMatrix::zeros(rep.dim);
            for (i, row) in rows.iter().enumerate() {
                let row = row
                    .as_array()
                    .filter(|r| r.len() == rep.dim)
                    .ok_or_else(|| Error::Deserialize("ragged matrix row".into()))?;
                for (j, z) in row.iter().enumerate() {
                    let pair = z
                        .as_array()
                        .filter(|p| p.len() == 2)
                        .ok_or_else(|| Error::Deserialize("entry must be [re, im]".into()))?;
                    let re = pair[0]
                        .as_f64()
                        .ok_or_else(|| Error::Deserialize("non-numeric re".into()))?;
                    let im = pair[1]
                        .as_f64()
                        .ok_or_else(|| Error::Deserialize("non-numeric im".into()))?;
                    m[(i, j)] = Complex::new(real(re), real(im));
                }
            }
            field.insert(id, m)?;
        }
        Ok(field)
    }
}

fn finite(x: f64) -> f64 {
    assert!(x.is_finite(), "coefficient fields must hold finite entries");
    x
}

/// A complex-valued function sampled on a quadrature grid, one value per
/// node in the grid's flat order.
#[derive(Clone, Debug)]
pub struct GridFunction<T> {
    grid: QuadratureGrid<T>,
    values: Vec<Complex<T>>,
}

impl<T: Real> GridFunction<T> {
    pub fn new(grid: QuadratureGrid<T>, values: Vec<Complex<T>>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::InvalidIndex(format!(
                "grid has {} nodes but {} values were supplied",
                grid.len(),
                values.len()
            )));
        }
        Ok(GridFunction { grid, values })
    }

    pub fn space(&self) -> Space {
        self.grid.space()
    }

    pub fn grid(&self) -> &QuadratureGrid<T> {
        &self.grid
    }

    pub fn values(&self) -> &[Complex<T>] {
        &self.values
    }

    /// Pointwise map, same grid.
    pub fn map(&self, f: impl Fn(Complex<T>) -> Complex<T>) -> Self {
        GridFunction {
            grid: self.grid.clone(),
            values: self.values.iter().map(|z| f(*z)).collect(),
        }
    }
}
