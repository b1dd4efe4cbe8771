//! Exact elimination over rings whose nonzero pivots we can invert.
//!
//! Over `Z/m` with `m` composite, elimination only succeeds while every
//! column we need to clear contains a unit; otherwise we report
//! [`Error::NonFieldModulus`] instead of returning a wrong rank.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Matrix, Rational, Ring, ZmInt};
use crate::{Error, Result};

fn no_pivot<R: Ring>(ctx: &R::Ctx) -> Error {
    match R::modulus_of(ctx) {
        Some(modulus) => Error::NonFieldModulus { modulus },
        None => Error::NoUnitPivot,
    }
}

/// Reduced row echelon form together with the pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon<R: Ring> {
    pub matrix: Matrix<R>,
    pub pivots: Vec<usize>,
}

pub fn rref<R: Ring>(m: &Matrix<R>) -> Result<Echelon<R>> {
    let mut a = m.clone();
    let ctx = a.ctx().clone();
    let (rows, cols) = a.shape();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let mut found = None;
        let mut saw_nonzero = false;
        for i in r..rows {
            let v = a.get(i, c);
            if v.is_zero() {
                continue;
            }
            saw_nonzero = true;
            if let Some(inv) = v.try_inverse() {
                found = Some((i, inv));
                break;
            }
        }
        let Some((p, inv)) = found else {
            if saw_nonzero {
                return Err(no_pivot::<R>(&ctx));
            }
            continue;
        };
        if p != r {
            for j in 0..cols {
                let (x, y) = (a.get(p, j).clone(), a.get(r, j).clone());
                a.set(p, j, y);
                a.set(r, j, x);
            }
        }
        for j in c..cols {
            let v = a.get(r, j).times(&inv);
            a.set(r, j, v);
        }
        let pivot_row: Vec<R> = a.row(r).to_vec();
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = a.get(i, c).clone();
            if f.is_zero() {
                continue;
            }
            let row = a.row_mut(i);
            for j in c..cols {
                if !pivot_row[j].is_zero() {
                    row[j] = row[j].minus(&f.times(&pivot_row[j]));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    Ok(Echelon { matrix: a, pivots })
}

pub fn rank<R: Ring>(m: &Matrix<R>) -> Result<usize> {
    Ok(rref(m)?.pivots.len())
}

/// A basis of the right null space `{x : m x = 0}`.
pub fn kernel<R: Ring>(m: &Matrix<R>) -> Result<Vec<Vec<R>>> {
    let e = rref(m)?;
    let ctx = m.ctx().clone();
    let cols = m.cols();
    let mut is_pivot = vec![None; cols];
    for (r, &c) in e.pivots.iter().enumerate() {
        is_pivot[c] = Some(r);
    }
    let mut out = Vec::new();
    for free in (0..cols).filter(|&c| is_pivot[c].is_none()) {
        let mut v = vec![R::zero(&ctx); cols];
        v[free] = R::one(&ctx);
        for (r, &c) in e.pivots.iter().enumerate() {
            v[c] = e.matrix.get(r, free).negated();
        }
        out.push(v);
    }
    Ok(out)
}

pub fn nullity<R: Ring>(m: &Matrix<R>) -> Result<usize> {
    Ok(m.cols() - rank(m)?)
}

pub fn inverse<R: Ring>(m: &Matrix<R>) -> Result<Matrix<R>> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch { op: "inverse", left: m.shape(), right: m.shape() });
    }
    let n = m.rows();
    let ctx = m.ctx().clone();
    let aug = Matrix::from_fn(n, 2 * n, ctx.clone(), |i, j| {
        if j < n {
            m.get(i, j).clone()
        } else if j - n == i {
            R::one(&ctx)
        } else {
            R::zero(&ctx)
        }
    });
    let e = match rref(&aug) {
        Ok(e) => e,
        Err(Error::NonFieldModulus { .. } | Error::NoUnitPivot) => return Err(Error::Singular),
        Err(e) => return Err(e),
    };
    if e.pivots.len() < n || e.pivots[n - 1] >= n {
        return Err(Error::Singular);
    }
    Ok(Matrix::from_fn(n, n, ctx, |i, j| e.matrix.get(i, n + j).clone()))
}

/// Fraction-free (Bareiss) determinant of an integer matrix.
pub fn det_bigint(rows: &[Vec<BigInt>]) -> BigInt {
    let n = rows.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(p) => {
                    a.swap(k, p);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Determinant over `Z/m`, computed over the integers and then reduced,
/// so it is correct for composite `m` too.
pub fn det_zm(m: &Matrix<ZmInt>) -> Result<ZmInt> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch { op: "det", left: m.shape(), right: m.shape() });
    }
    let modulus = *m.ctx();
    let rows: Vec<Vec<BigInt>> =
        (0..m.rows()).map(|i| m.row(i).iter().map(|x| BigInt::from(x.residue())).collect()).collect();
    let d = det_bigint(&rows);
    let r = ((d % BigInt::from(modulus)) + BigInt::from(modulus)) % BigInt::from(modulus);
    Ok(ZmInt::new(u64::try_from(r).expect("reduced residue fits"), modulus))
}

pub fn det_rational(m: &Matrix<Rational>) -> Result<Rational> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch { op: "det", left: m.shape(), right: m.shape() });
    }
    let n = m.rows();
    let mut a = m.clone();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a.get(i, c).is_zero()) else {
            return Ok(Rational::zero());
        };
        if p != c {
            for j in 0..n {
                let (x, y) = (a.get(p, j).clone(), a.get(c, j).clone());
                a.set(p, j, y);
                a.set(c, j, x);
            }
            det = -&det;
        }
        let piv = a.get(c, c).clone();
        det = &det * &piv;
        let inv = piv.recip().expect("nonzero pivot");
        for i in c + 1..n {
            let f = a.get(i, c) * &inv;
            if f.is_zero() {
                continue;
            }
            for j in c..n {
                let v = a.get(i, j) - &(&f * a.get(c, j));
                a.set(i, j, v);
            }
        }
    }
    Ok(det)
}

/// An incrementally grown row space over a field, kept fully reduced.
///
/// Each stored row is monic at its pivot and vanishes at every other pivot,
/// so the coordinates of a member are just its entries at the pivots.
#[derive(Clone, Debug)]
pub struct RowSpace<R: Ring> {
    width: usize,
    ctx: R::Ctx,
    rows: Vec<(usize, Vec<R>)>,
}

impl<R: Ring> RowSpace<R> {
    pub fn new(width: usize, ctx: R::Ctx) -> Self {
        RowSpace { width, ctx, rows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Reduce `v` against the stored rows in place.
    pub fn reduce(&self, v: &mut [R]) {
        for (p, row) in &self.rows {
            let f = v[*p].clone();
            if f.is_zero() {
                continue;
            }
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = x.minus(&f.times(r));
                }
            }
        }
    }

    pub fn contains(&self, v: &[R]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(R::is_zero)
    }

    /// Insert `v`; returns whether the space grew.
    pub fn insert(&mut self, v: &[R]) -> Result<bool> {
        if v.len() != self.width {
            return Err(Error::DimensionMismatch { op: "row space insert", left: (1, self.width), right: (1, v.len()) });
        }
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return Ok(false);
        };
        let inv = w[p].try_inverse().ok_or_else(|| no_pivot::<R>(&self.ctx))?;
        for x in &mut w {
            *x = x.times(&inv);
        }
        for (_, row) in &mut self.rows {
            let f = row[p].clone();
            if f.is_zero() {
                continue;
            }
            for (x, r) in row.iter_mut().zip(&w) {
                if !r.is_zero() {
                    *x = x.minus(&f.times(r));
                }
            }
        }
        self.rows.push((p, w));
        Ok(true)
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|(p, _)| *p).collect()
    }

    /// Coordinates of `v` in the stored basis, or `None` if `v` is outside.
    pub fn coordinates(&self, v: &[R]) -> Option<Vec<R>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.rows.iter().map(|(p, _)| v[*p].clone()).collect())
    }

    pub fn basis(&self) -> impl Iterator<Item = &[R]> {
        self.rows.iter().map(|(_, r)| r.as_slice())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_i64_rows(rows, ()).unwrap()
    }

    #[test]
    fn rank_and_kernel_small() {
        let a = q(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&a).unwrap(), 2);
        let k = kernel(&a).unwrap();
        assert_eq!(k.len(), 1);
        assert!(a.mul_vec(&k[0]).unwrap().iter().all(Rational::is_zero));
    }

    #[test]
    fn composite_modulus_reports_non_field() {
        let a = Matrix::<ZmInt>::from_i64_rows(&[&[2, 0], &[0, 2]], 4).unwrap();
        assert_eq!(rank(&a), Err(Error::NonFieldModulus { modulus: 4 }));
        let b = Matrix::<ZmInt>::from_i64_rows(&[&[3, 1], &[1, 2]], 4).unwrap();
        assert_eq!(rank(&b).unwrap(), 2);
    }

    #[test]
    fn inverse_roundtrip_mod_m() {
        let a = Matrix::<ZmInt>::from_i64_rows(&[&[1, 0], &[2, 5]], 9).unwrap();
        let inv = inverse(&a).unwrap();
        assert!(a.mul(&inv).unwrap().is_identity());
        let s = Matrix::<ZmInt>::from_i64_rows(&[&[3, 0], &[0, 1]], 9).unwrap();
        assert_eq!(inverse(&s), Err(Error::Singular));
    }

    #[test]
    fn determinants_agree() {
        let a = q(&[&[2, -1, 0], &[1, 3, 4], &[0, 5, -2]]);
        // cofactor expansion along the first row: 2·(−26) + 1·(−2)
        let minors = [3 * -2 - 4 * 5, -2];
        let expected = 2 * minors[0] + minors[1];
        assert_eq!(det_rational(&a).unwrap(), Rational::integer(expected));
        let z = a.map(7u64, |x| ZmInt::from_signed(x.numer().try_into().unwrap(), 7));
        assert_eq!(det_zm(&z).unwrap(), ZmInt::from_signed(expected, 7));
    }

    #[test]
    fn row_space_membership() {
        let mut s = RowSpace::<Rational>::new(3, ());
        let v = |a: &[i64]| a.iter().map(|&x| Rational::integer(x)).collect::<Vec<_>>();
        assert!(s.insert(&v(&[0, 1, 1])).unwrap());
        assert!(s.insert(&v(&[1, 1, 0])).unwrap());
        assert!(!s.insert(&v(&[1, 3, 2])).unwrap());
        assert!(s.contains(&v(&[2, 1, -1])));
        assert!(!s.contains(&v(&[0, 0, 1])));
        assert_eq!(s.dim(), 2);
        let c = s.coordinates(&v(&[2, 1, -1])).unwrap();
        let rebuilt: Vec<Rational> = (0..3)
            .map(|j| s.basis().zip(&c).fold(Rational::zero(), |acc, (row, k)| &acc + &(k * &row[j])))
            .collect();
        assert_eq!(rebuilt, v(&[2, 1, -1]));
    }

    proptest! {
        #[test]
        fn rank_nullity_and_det(v in proptest::collection::vec(-3i64..4, 16)) {
            let a = Matrix::<Rational>::from_fn(4, 4, (), |i, j| Rational::integer(v[4 * i + j]));
            let r = rank(&a).unwrap();
            prop_assert_eq!(r + kernel(&a).unwrap().len(), 4);
            let d = det_rational(&a).unwrap();
            prop_assert_eq!(d.is_zero(), r < 4);
            let big: Vec<Vec<BigInt>> = (0..4).map(|i| v[4 * i..4 * i + 4].iter().map(|&x| BigInt::from(x)).collect()).collect();
            prop_assert_eq!(Rational::from_bigints(det_bigint(&big), BigInt::one()).unwrap(), d);
            if r == 4 {
                prop_assert!(a.mul(&inverse(&a).unwrap()).unwrap().is_identity());
            }
        }
    }
}
