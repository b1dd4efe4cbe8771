use std::fmt;

use super::Ring;
use crate::{Error, Result};

/// A dense row-major matrix over an exact ring.
#[derive(Clone, PartialEq)]
pub struct Matrix<R: Ring> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
    ctx: R::Ctx,
}

impl<R: Ring> Matrix<R> {
    pub fn new(rows: usize, cols: usize, data: Vec<R>, ctx: R::Ctx) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch { op: "matrix data", left: (rows, cols), right: (data.len(), 1) });
        }
        Ok(Matrix { rows, cols, data, ctx })
    }

    pub fn from_rows(rows: Vec<Vec<R>>, ctx: R::Ctx) -> Result<Self> {
        let n = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != c) {
            return Err(Error::Parse("ragged matrix rows".into()));
        }
        Self::new(n, c, rows.into_iter().flatten().collect(), ctx)
    }

    /// Build from integer entries.
    pub fn from_i64_rows(rows: &[&[i64]], ctx: R::Ctx) -> Result<Self> {
        let v = rows.iter().map(|r| r.iter().map(|&x| R::from_i64(x, &ctx)).collect()).collect();
        Self::from_rows(v, ctx)
    }

    pub fn zeros(rows: usize, cols: usize, ctx: R::Ctx) -> Self {
        Matrix { rows, cols, data: vec![R::zero(&ctx); rows * cols], ctx }
    }

    pub fn identity(n: usize, ctx: R::Ctx) -> Self {
        let mut m = Self::zeros(n, n, ctx);
        for i in 0..n {
            m.data[i * n + i] = R::one(&m.ctx);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, ctx: R::Ctx, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data, ctx }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn ctx(&self) -> &R::Ctx {
        &self.ctx
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [R] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<R> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[R] {
        &self.data
    }

    pub fn into_rows(self) -> Vec<Vec<R>> {
        if self.cols == 0 {
            return vec![Vec::new(); self.rows];
        }
        self.data.chunks(self.cols).map(<[R]>::to_vec).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(R::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = self.get(i, j);
                    if i == j { v.is_one() } else { v.is_zero() }
                })
            })
    }

    /// The first nonzero entry in row-major order.
    pub fn first_nonzero(&self) -> Option<(usize, usize)> {
        self.data.iter().position(|v| !v.is_zero()).map(|k| (k / self.cols, k % self.cols))
    }

    pub fn mul(&self, rhs: &Matrix<R>) -> Result<Matrix<R>> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch { op: "mul", left: self.shape(), right: rhs.shape() });
        }
        let mut out = Self::zeros(self.rows, rhs.cols, self.ctx.clone());
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let slot = &mut out.data[i * rhs.cols + j];
                    *slot = slot.plus(&a.times(b));
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[R]) -> Result<Vec<R>> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch { op: "mul_vec", left: self.shape(), right: (v.len(), 1) });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(v).fold(R::zero(&self.ctx), |acc, (a, b)| {
                    if a.is_zero() || b.is_zero() { acc } else { acc.plus(&a.times(b)) }
                })
            })
            .collect())
    }

    fn zip_with(&self, rhs: &Matrix<R>, op: &'static str, f: impl Fn(&R, &R) -> R) -> Result<Matrix<R>> {
        if self.shape() != rhs.shape() {
            return Err(Error::DimensionMismatch { op, left: self.shape(), right: rhs.shape() });
        }
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, data, ctx: self.ctx.clone() })
    }

    pub fn add(&self, rhs: &Matrix<R>) -> Result<Matrix<R>> {
        self.zip_with(rhs, "add", R::plus)
    }

    pub fn sub(&self, rhs: &Matrix<R>) -> Result<Matrix<R>> {
        self.zip_with(rhs, "sub", R::minus)
    }

    pub fn scale(&self, c: &R) -> Matrix<R> {
        self.map_same(|v| v.times(c))
    }

    pub fn neg(&self) -> Matrix<R> {
        self.map_same(R::negated)
    }

    fn map_same(&self, f: impl Fn(&R) -> R) -> Matrix<R> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect(), ctx: self.ctx.clone() }
    }

    /// Apply `f` entrywise into another ring.
    pub fn map<S: Ring>(&self, ctx: S::Ctx, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect(), ctx }
    }

    pub fn try_map<S: Ring>(&self, ctx: S::Ctx, f: impl Fn(&R) -> Result<S>) -> Result<Matrix<S>> {
        let data = self.data.iter().map(f).collect::<Result<Vec<_>>>()?;
        Ok(Matrix { rows: self.rows, cols: self.cols, data, ctx })
    }

    pub fn transpose(&self) -> Matrix<R> {
        Matrix::from_fn(self.cols, self.rows, self.ctx.clone(), |i, j| self.get(j, i).clone())
    }

    /// Kronecker product, with `self` indexing the outer (slow) coordinate.
    pub fn kron(&self, rhs: &Matrix<R>) -> Matrix<R> {
        let (r2, c2) = rhs.shape();
        Matrix::from_fn(self.rows * r2, self.cols * c2, self.ctx.clone(), |i, j| {
            let a = self.get(i / r2, j / c2);
            if a.is_zero() {
                R::zero(&self.ctx)
            } else {
                a.times(rhs.get(i % r2, j % c2))
            }
        })
    }

    pub fn pow(&self, mut e: u64) -> Result<Matrix<R>> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch { op: "pow", left: self.shape(), right: self.shape() });
        }
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.rows, self.ctx.clone());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn trace(&self) -> R {
        (0..self.rows.min(self.cols)).fold(R::zero(&self.ctx), |acc, i| acc.plus(self.get(i, i)))
    }

    /// Nested JSON arrays, one inner array per row.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            (0..self.rows).map(|i| serde_json::Value::Array(self.row(i).iter().map(R::to_json).collect())).collect(),
        )
    }

    pub fn from_json(v: &serde_json::Value, ctx: R::Ctx) -> Result<Self> {
        let rows = v.as_array().ok_or_else(|| Error::Parse("matrix must be an array of rows".into()))?;
        let mut out = Vec::with_capacity(rows.len());
        for row in rows {
            let row = row.as_array().ok_or_else(|| Error::Parse("matrix row must be an array".into()))?;
            out.push(row.iter().map(|x| R::from_json(x, &ctx)).collect::<Result<Vec<_>>>()?);
        }
        Self::from_rows(out, ctx)
    }
}

impl<R: Ring> fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{Rational, ZmInt};
    use proptest::prelude::*;

    fn q(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_i64_rows(rows, ()).unwrap()
    }

    #[test]
    fn product_and_identity() {
        let a = q(&[&[1, 2], &[3, 4]]);
        let b = q(&[&[0, 1], &[1, 0]]);
        assert_eq!(a.mul(&b).unwrap(), q(&[&[2, 1], &[4, 3]]));
        assert_eq!(a.mul(&Matrix::identity(2, ())).unwrap(), a);
        assert!(a.mul(&q(&[&[1, 2, 3]])).is_err());
    }

    #[test]
    fn kron_indexing() {
        let a = q(&[&[1, 2], &[3, 4]]);
        let i = Matrix::identity(2, ());
        let k = a.kron(&i);
        assert_eq!(k.get(0, 2), &Rational::integer(2));
        assert_eq!(k.get(3, 1), &Rational::integer(3));
        assert_eq!(k.get(0, 1), &Rational::zero());
    }

    #[test]
    fn json_roundtrip_over_each_ring() {
        let a = Matrix::<Rational>::from_rows(vec![vec![Rational::new(1, 2), Rational::integer(-3)]], ()).unwrap();
        let j = a.to_json();
        assert_eq!(j.to_string(), r#"[["1/2","-3/1"]]"#);
        assert_eq!(Matrix::<Rational>::from_json(&j, ()).unwrap(), a);
        let z = Matrix::<ZmInt>::from_i64_rows(&[&[1, -1], &[5, 7]], 5).unwrap();
        assert_eq!(z.to_json().to_string(), "[[1,4],[0,2]]");
        assert_eq!(Matrix::<ZmInt>::from_json(&z.to_json(), 5).unwrap(), z);
        assert!(Matrix::<Rational>::from_json(&serde_json::json!([[1], [1, 2]]), ()).is_err());
    }

    proptest! {
        #[test]
        fn product_is_associative(v in proptest::collection::vec(-5i64..6, 27)) {
            let mk = |s: &[i64]| Matrix::<Rational>::from_fn(3, 3, (), |i, j| Rational::integer(s[3 * i + j]));
            let (a, b, c) = (mk(&v[0..9]), mk(&v[9..18]), mk(&v[18..27]));
            prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
            prop_assert_eq!(a.mul(&b).unwrap().transpose(), b.transpose().mul(&a.transpose()).unwrap());
        }
    }
}
