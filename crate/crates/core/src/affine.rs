//! The affine family `ρ_{m,t}`: stochastic generator matrices mod `m`, the
//! change of basis into `AGL_{n-1}(Z_m)`, exhaustive image enumeration, and
//! the arithmetic predictions the enumeration is compared against.

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;

use crate::bvs::{affine_bvs, swap};
use crate::presentations::ImageSet;
use crate::scalars::{linalg, unit_group, Matrix, Rational, Ring, ZmInt};
use crate::{Error, Result};

/// Default bound on stored elements during closure.
pub const DEFAULT_CAP: usize = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AffineParams {
    pub m: u64,
    pub t: u64,
    pub n: usize,
}

impl AffineParams {
    /// Requires `gcd(m, t) = 1`, `t ≢ 1 (mod m)` and `n ≥ 2`.
    pub fn new(m: u64, t: i64, n: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidParameter(format!("modulus {m} < 2")));
        }
        if n < 2 {
            return Err(Error::InvalidParameter(format!("need n >= 2, got {n}")));
        }
        let t = ZmInt::from_signed(t, m).residue();
        if t.gcd(&m) != 1 {
            return Err(Error::InvalidParameter(format!("gcd({m}, {t}) != 1")));
        }
        if t == 1 % m {
            return Err(Error::InvalidParameter("t ≡ 1 (mod m)".into()));
        }
        Ok(AffineParams { m, t, n })
    }

    fn z(&self, v: i64) -> ZmInt {
        ZmInt::from_signed(v, self.m)
    }

    fn t(&self) -> ZmInt {
        ZmInt::new(self.t, self.m)
    }
}

/// An `n × n` matrix mod `m` whose rows each sum to 1.
#[derive(Clone, Debug, PartialEq)]
pub struct StochasticMatrix(Matrix<ZmInt>);

impl StochasticMatrix {
    pub fn new(m: Matrix<ZmInt>) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::DimensionMismatch { op: "stochastic", left: m.shape(), right: m.shape() });
        }
        let modulus = *m.ctx();
        for i in 0..m.rows() {
            let sum = m.row(i).iter().fold(ZmInt::new(0, modulus), |a, b| a + *b);
            if !sum.is_one() {
                return Err(Error::NotStochastic);
            }
        }
        if !linalg::det_zm(&m)?.is_unit() {
            return Err(Error::Singular);
        }
        Ok(StochasticMatrix(m))
    }

    pub fn matrix(&self) -> &Matrix<ZmInt> {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix<ZmInt> {
        self.0
    }
}

/// Inverse over `Z/m` by the adjugate, valid for any modulus.
pub fn inverse_mod(a: &Matrix<ZmInt>) -> Result<Matrix<ZmInt>> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch { op: "inverse", left: a.shape(), right: a.shape() });
    }
    let n = a.rows();
    let m = *a.ctx();
    let det_inv = linalg::det_zm(a)?.mod_inverse().map_err(|_| Error::Singular)?;
    if n == 1 {
        return Ok(Matrix::from_fn(1, 1, m, |_, _| det_inv));
    }
    let entries: Vec<Vec<BigInt>> =
        (0..n).map(|i| a.row(i).iter().map(|x| BigInt::from(x.residue())).collect()).collect();
    let mb = BigInt::from(m);
    Ok(Matrix::from_fn(n, n, m, |i, j| {
        // adj(A)_{ij} = (-1)^{i+j} det(A without row j and column i)
        let minor: Vec<Vec<BigInt>> = (0..n)
            .filter(|&r| r != j)
            .map(|r| (0..n).filter(|&c| c != i).map(|c| entries[r][c].clone()).collect())
            .collect();
        let mut cof = linalg::det_bigint(&minor).mod_floor(&mb);
        if (i + j) % 2 == 1 {
            cof = (&mb - cof).mod_floor(&mb);
        }
        ZmInt::new(u64::try_from(cof).expect("reduced"), m) * det_inv
    }))
}

/// Images of `σ_i` and `s_i`: the block `[[0,1],[t,1-t]]` (resp. the flip
/// `[[0,1],[1,0]]`) at rows and columns `i, i+1`.
#[derive(Clone, Debug)]
pub struct RhoImages {
    pub params: AffineParams,
    pub sigma: Vec<StochasticMatrix>,
    pub sigma_inv: Vec<StochasticMatrix>,
    pub s: Vec<StochasticMatrix>,
}

impl RhoImages {
    pub fn image_set(&self) -> Result<ImageSet<ZmInt>> {
        let take = |v: &[StochasticMatrix]| v.iter().map(|x| x.matrix().clone()).collect::<Vec<_>>();
        ImageSet::with_inverses(take(&self.sigma), take(&self.sigma_inv), take(&self.s))
    }
}

fn block_at(p: &AffineParams, i: usize, block: [[ZmInt; 2]; 2]) -> Result<StochasticMatrix> {
    let mut a = Matrix::identity(p.n, p.m);
    for (r, row) in block.iter().enumerate() {
        for (c, &x) in row.iter().enumerate() {
            a.set(i - 1 + r, i - 1 + c, x);
        }
    }
    StochasticMatrix::new(a)
}

pub fn rho_generators(p: &AffineParams) -> Result<RhoImages> {
    let (zero, one, t) = (p.z(0), p.z(1), p.t());
    let t_inv = t.mod_inverse()?;
    let sigma_block = [[zero, one], [t, one - t]];
    // [[0,1],[t,1-t]]^{-1} = [[(t-1)/t, 1/t], [1, 0]]
    let sigma_inv_block = [[(t - one) * t_inv, t_inv], [one, zero]];
    let s_block = [[zero, one], [one, zero]];
    let mut out = RhoImages { params: *p, sigma: Vec::new(), sigma_inv: Vec::new(), s: Vec::new() };
    for i in 1..p.n {
        out.sigma.push(block_at(p, i, sigma_block)?);
        out.sigma_inv.push(block_at(p, i, sigma_inv_block)?);
        out.s.push(block_at(p, i, s_block)?);
    }
    Ok(out)
}

/// The basis-change matrix with columns `(1,…,1), (0,1,…,1), …, (0,…,0,1)`.
fn basis_change(n: usize, m: u64) -> (Matrix<ZmInt>, Matrix<ZmInt>) {
    let b = Matrix::from_fn(n, n, m, |r, c| ZmInt::new(u64::from(r >= c), m));
    let b_inv = Matrix::from_fn(n, n, m, |r, c| match r as i64 - c as i64 {
        0 => ZmInt::new(1, m),
        1 => ZmInt::from_signed(-1, m),
        _ => ZmInt::new(0, m),
    });
    (b, b_inv)
}

/// An affine map `x ↦ A x + v` over `Z/m`, written `g(A, v)`.
#[derive(Clone, Debug, PartialEq)]
pub struct AglElement {
    pub a: Matrix<ZmInt>,
    pub v: Vec<ZmInt>,
}

impl AglElement {
    pub fn new(a: Matrix<ZmInt>, v: Vec<ZmInt>) -> Result<Self> {
        if !a.is_square() || a.rows() != v.len() {
            return Err(Error::DimensionMismatch { op: "agl element", left: a.shape(), right: (v.len(), 1) });
        }
        if !linalg::det_zm(&a)?.is_unit() {
            return Err(Error::Singular);
        }
        Ok(AglElement { a, v })
    }

    pub fn identity(k: usize, m: u64) -> Self {
        AglElement { a: Matrix::identity(k, m), v: vec![ZmInt::new(0, m); k] }
    }

    pub fn k(&self) -> usize {
        self.v.len()
    }

    pub fn modulus(&self) -> u64 {
        *self.a.ctx()
    }

    /// `(A₁, v₁)(A₂, v₂) = (A₁A₂, A₁v₂ + v₁)`.
    pub fn compose(&self, rhs: &AglElement) -> Result<AglElement> {
        let a = self.a.mul(&rhs.a)?;
        let av = self.a.mul_vec(&rhs.v)?;
        let v = av.iter().zip(&self.v).map(|(x, y)| *x + *y).collect();
        Ok(AglElement { a, v })
    }

    pub fn inverse(&self) -> Result<AglElement> {
        let a = inverse_mod(&self.a)?;
        let v = a.mul_vec(&self.v)?.into_iter().map(|x| -x).collect();
        Ok(AglElement { a, v })
    }

    /// The `(k+1) × (k+1)` matrix `[[A, v], [0, 1]]`.
    pub fn to_matrix(&self) -> Matrix<ZmInt> {
        let k = self.k();
        let m = self.modulus();
        Matrix::from_fn(k + 1, k + 1, m, |r, c| match (r < k, c < k) {
            (true, true) => *self.a.get(r, c),
            (true, false) => self.v[r],
            (false, false) => ZmInt::new(1, m),
            (false, true) => ZmInt::new(0, m),
        })
    }

    pub fn from_matrix(x: &Matrix<ZmInt>) -> Result<AglElement> {
        let n = x.rows();
        if !x.is_square() || n < 2 {
            return Err(Error::DimensionMismatch { op: "agl form", left: x.shape(), right: x.shape() });
        }
        let k = n - 1;
        let last_ok = (0..k).all(|c| x.get(k, c).is_zero()) && x.get(k, k).is_one();
        if !last_ok {
            return Err(Error::InvalidParameter("last row must be (0, …, 0, 1)".into()));
        }
        let a = Matrix::from_fn(k, k, *x.ctx(), |r, c| *x.get(r, c));
        let v = (0..k).map(|r| *x.get(r, k)).collect();
        AglElement::new(a, v)
    }

    /// `Δ_{i,j}`: the `n × n` matrix unit (1-based indices).
    pub fn delta(n: usize, i: usize, j: usize, m: u64) -> Matrix<ZmInt> {
        Matrix::from_fn(n, n, m, |r, c| ZmInt::new(u64::from(r + 1 == i && c + 1 == j), m))
    }

    /// `E_{i,j}(α) = I + α Δ_{i,j}` on `Z_m^k`.
    pub fn elementary(k: usize, i: usize, j: usize, alpha: ZmInt) -> Matrix<ZmInt> {
        let m = alpha.modulus();
        Matrix::identity(k, m).add(&Self::delta(k, i, j, m).scale(&alpha)).expect("same shape")
    }

    /// `D(α, i)`: the identity with `α` in position `(i, i)`.
    pub fn diagonal(k: usize, alpha: ZmInt, i: usize) -> Matrix<ZmInt> {
        let mut d = Matrix::identity(k, alpha.modulus());
        d.set(i - 1, i - 1, alpha);
        d
    }
}

/// Transpose, then change to the basis `(1,…,1), (0,1,…,1), …`. The result
/// has last row `(0,…,0,1)`. This map reverses products.
pub fn to_agl_form(g: &StochasticMatrix) -> Result<AglElement> {
    let g = g.matrix();
    let (b, b_inv) = basis_change(g.rows(), *g.ctx());
    AglElement::from_matrix(&b.mul(&g.transpose())?.mul(&b_inv)?)
}

pub fn from_agl_form(x: &AglElement) -> Result<StochasticMatrix> {
    let mat = x.to_matrix();
    let (b, b_inv) = basis_change(mat.rows(), x.modulus());
    StochasticMatrix::new(b_inv.mul(&mat)?.mul(&b)?.transpose())
}

/// `m^k · |GL_k(Z_m)|`, multiplying the prime-power factors
/// `|GL_k(Z_{p^a})| = p^{(a-1)k²} ∏_{i<k} (p^k − p^i)`.
pub fn agl_order(m: u64, k: u32) -> Result<u128> {
    if m < 2 || k < 1 {
        return Err(Error::InvalidParameter(format!("need m >= 2 and k >= 1, got ({m}, {k})")));
    }
    let overflow = || Error::InvalidParameter(format!("|AGL_{k}(Z_{m})| overflows 128 bits"));
    let mut total = (m as u128).checked_pow(k).ok_or_else(overflow)?;
    for (p, a) in factorize(m) {
        let p = p as u128;
        let mut gl = p.checked_pow((a - 1) * k * k).ok_or_else(overflow)?;
        let pk = p.checked_pow(k).ok_or_else(overflow)?;
        for i in 0..k {
            gl = gl.checked_mul(pk - p.pow(i)).ok_or_else(overflow)?;
        }
        total = total.checked_mul(gl).ok_or_else(overflow)?;
    }
    Ok(total)
}

fn factorize(mut m: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            let mut a = 0;
            while m % p == 0 {
                m /= p;
                a += 1;
            }
            out.push((p, a));
        }
        p += 1;
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Surjectivity {
    pub units_ok: bool,
    pub generates: bool,
}

/// The subgroup of `Z_m^×` generated by the given units.
pub fn generated_units(gens: &[ZmInt], m: u64) -> BTreeSet<ZmInt> {
    let mut seen = BTreeSet::from([ZmInt::new(1, m)]);
    let mut frontier = vec![ZmInt::new(1, m)];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = x * *g;
            if seen.insert(y) {
                frontier.push(y);
            }
        }
    }
    seen
}

/// `units_ok`: `1 - t` is a unit; `generates`: `⟨t, -1⟩ = Z_m^×`.
pub fn surjectivity_predicate(m: u64, t: i64) -> Result<Surjectivity> {
    if m < 2 {
        return Err(Error::InvalidParameter(format!("modulus {m} < 2")));
    }
    let tz = ZmInt::from_signed(t, m);
    if !tz.is_unit() {
        return Err(Error::InvalidParameter(format!("gcd({m}, {t}) != 1")));
    }
    let units_ok = (ZmInt::new(1, m) - tz).is_unit();
    let generates = generated_units(&[tz, ZmInt::from_signed(-1, m)], m) == unit_group(m)?;
    Ok(Surjectivity { units_ok, generates })
}

/// The closure of the generator images under multiplication.
#[derive(Clone, Debug)]
pub struct ImageClosure {
    pub params: AffineParams,
    pub order: usize,
    pub complete: bool,
    /// Row-major entries of each element, sorted lexicographically.
    pub elements: Vec<Vec<u64>>,
}

impl ImageClosure {
    pub fn element_matrices(&self) -> impl Iterator<Item = Matrix<ZmInt>> + '_ {
        let (n, m) = (self.params.n, self.params.m);
        self.elements
            .iter()
            .map(move |e| Matrix::from_fn(n, n, m, |r, c| ZmInt::new(e[r * n + c], m)))
    }
}

/// Hash key: the modulus, then each entry in a fixed byte width.
fn element_key(m: u64, entries: &[u64]) -> Vec<u8> {
    let width = (64 - (m - 1).leading_zeros()).div_ceil(8).max(1) as usize;
    let mut key = Vec::with_capacity(8 + width * entries.len());
    key.extend_from_slice(&m.to_le_bytes());
    for e in entries {
        key.extend_from_slice(&e.to_le_bytes()[..width]);
    }
    key
}

fn mul_flat(a: &[u64], b: &[u64], n: usize, m: u64) -> Vec<u64> {
    let mut out = vec![0u64; n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x == 0 {
                continue;
            }
            for j in 0..n {
                let y = b[k * n + j];
                if y != 0 {
                    let slot = &mut out[i * n + j];
                    *slot = ((*slot as u128 + x as u128 * y as u128) % m as u128) as u64;
                }
            }
        }
    }
    out
}

/// Breadth-first closure from the identity, right-multiplying by the images
/// of `σ_i^{±1}` and `s_i`. Stops with `complete = false` once more than
/// `cap` elements have been stored.
pub fn generate_image(p: &AffineParams, cap: usize) -> Result<ImageClosure> {
    let imgs = rho_generators(p)?;
    let (n, m) = (p.n, p.m);
    let flat = |s: &StochasticMatrix| s.matrix().entries().iter().map(ZmInt::residue).collect::<Vec<u64>>();
    let gens: Vec<Vec<u64>> = imgs.sigma.iter().chain(&imgs.sigma_inv).chain(&imgs.s).map(flat).collect();
    let identity: Vec<u64> = (0..n * n).map(|k| u64::from(k / n == k % n)).collect();
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    seen.insert(element_key(m, &identity));
    let mut elements = vec![identity];
    let mut head = 0;
    let mut complete = true;
    'bfs: while head < elements.len() {
        let current = elements[head].clone();
        head += 1;
        for g in &gens {
            let next = mul_flat(&current, g, n, m);
            if seen.insert(element_key(m, &next)) {
                if elements.len() >= cap {
                    complete = false;
                    break 'bfs;
                }
                elements.push(next);
            }
        }
    }
    elements.sort();
    Ok(ImageClosure { params: *p, order: elements.len(), complete, elements })
}

/// Determinants of the given elements.
pub fn determinant_profile<'a>(elements: impl IntoIterator<Item = &'a Matrix<ZmInt>>) -> Result<BTreeSet<ZmInt>> {
    elements.into_iter().map(linalg::det_zm).collect()
}

/// `{±t^k}`: the determinants the generators can produce.
pub fn allowed_determinants(m: u64, t: i64) -> BTreeSet<ZmInt> {
    generated_units(&[ZmInt::from_signed(t, m), ZmInt::from_signed(-1, m)], m)
}

/// Result of comparing the permutation `(a, b) ↦ ((1−t)a + tb, a)` on
/// `Z_m × Z_m` with the affine solution `c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DrinfeldCheck {
    /// Equality with `c` after exchanging the two tensor legs on both sides.
    pub matches_leg_transpose: bool,
    /// Equality with the literal matrix transpose of `c`.
    pub matches_matrix_transpose: bool,
}

/// The permutation matrix of `(a, b) ↦ ((1−t)a + tb, a)` in the basis
/// `a·m + b`.
pub fn drinfeld_r_matrix(m: u64, t: u64) -> Matrix<Rational> {
    let d = m as usize;
    let mut r = Matrix::zeros(d * d, d * d, ());
    let beta = (1 + m - t % m) % m;
    for a in 0..m {
        for b in 0..m {
            let image = ((beta * a + t * b) % m, a);
            r.set((image.0 * m + image.1) as usize, (a * m + b) as usize, Rational::one());
        }
    }
    r
}

pub fn drinfeld_r_check(m: u64, t: i64) -> Result<DrinfeldCheck> {
    let p = AffineParams::new(m, t, 2)?;
    if !(ZmInt::new(1, m) - p.t()).is_unit() {
        return Err(Error::InvalidParameter(format!("gcd({m}, t - 1) != 1")));
    }
    let c = affine_bvs(m, p.t)?.c().clone();
    let r = drinfeld_r_matrix(m, p.t);
    let flip = swap::<Rational>(m as usize, ());
    let leg = flip.mul(&c)?.mul(&flip)?;
    Ok(DrinfeldCheck { matches_leg_transpose: r == leg, matches_matrix_transpose: r == c.transpose() })
}

/// Words from the inductive surjectivity argument, evaluated in AGL form
/// (`n × n` matrices with last row `(0,…,0,1)`), next to the closed forms
/// they are supposed to equal.
#[derive(Clone, Debug)]
pub struct ProofLandmarks {
    /// `Σ(t) Σ(1) Σ(t)^{-1} Σ(1)` with `Σ` the image of the last generator.
    pub t_word: Matrix<ZmInt>,
    /// `I + (1−t)(Δ_{n-1,n-2} − Δ_{n-1,n})`.
    pub t_expected: Matrix<ZmInt>,
    /// `T(t)^k` for `k = (1−t)^{-1}`.
    pub t_power: Matrix<ZmInt>,
    /// `T(0) = I + Δ_{n-1,n-2} − Δ_{n-1,n}`.
    pub t_zero: Matrix<ZmInt>,
    /// `g(D(−1,n−2),0) T(0) g(D(−1,n−2),0) T(0)`.
    pub translation_word: Matrix<ZmInt>,
    /// `g(I, −2 e_{n−1})`.
    pub translation_expected: Matrix<ZmInt>,
}

pub fn proof_landmarks(p: &AffineParams) -> Result<ProofLandmarks> {
    let n = p.n;
    if n < 3 {
        return Err(Error::InvalidParameter("landmark words need n >= 3".into()));
    }
    let m = p.m;
    let imgs = rho_generators(p)?;
    let sig = to_agl_form(&imgs.sigma[n - 2])?.to_matrix();
    let s1 = to_agl_form(&imgs.s[n - 2])?.to_matrix();
    let sig_inv = inverse_mod(&sig)?;
    let t_word = sig.mul(&s1)?.mul(&sig_inv)?.mul(&s1)?;
    let one_minus_t = p.z(1) - p.t();
    let dd = AglElement::delta(n, n - 1, n - 2, m).sub(&AglElement::delta(n, n - 1, n, m))?;
    let id = Matrix::identity(n, m);
    let t_expected = id.add(&dd.scale(&one_minus_t))?;
    let k = one_minus_t.mod_inverse()?.residue();
    let t_power = t_word.pow(k)?;
    let t_zero = id.add(&dd)?;
    let d = AglElement { a: AglElement::diagonal(n - 1, p.z(-1), n - 2), v: vec![p.z(0); n - 1] }.to_matrix();
    let translation_word = d.mul(&t_zero)?.mul(&d)?.mul(&t_zero)?;
    let mut e = vec![p.z(0); n - 1];
    e[n - 2] = p.z(-2);
    let translation_expected = AglElement { a: Matrix::identity(n - 1, m), v: e }.to_matrix();
    Ok(ProofLandmarks { t_word, t_expected, t_power, t_zero, translation_word, translation_expected })
}

/// The element `Z = X^{-1} Σ(1) X Σ(1)` for the matrix `X` whose row `n−2`
/// is `(a_1, …, a_{n−2}, 0, 0)`, together with the matrix predicted for it:
/// identity except row `n−1 = (a_1, …, a_{n−3}, a_{n−2} − 1, 1, 0)`.
pub fn z_landmark(p: &AffineParams, a: &[i64]) -> Result<(Matrix<ZmInt>, Matrix<ZmInt>)> {
    let n = p.n;
    if n < 3 || a.len() != n - 2 {
        return Err(Error::InvalidParameter("need n >= 3 and n - 2 coefficients".into()));
    }
    let imgs = rho_generators(p)?;
    let s1 = to_agl_form(&imgs.s[n - 2])?.to_matrix();
    let mut x = Matrix::identity(n, p.m);
    for (j, &aj) in a.iter().enumerate() {
        x.set(n - 3, j, p.z(aj));
    }
    let z = inverse_mod(&x)?.mul(&s1)?.mul(&x)?.mul(&s1)?;
    let mut expected = Matrix::identity(n, p.m);
    for (j, &aj) in a.iter().enumerate() {
        let v = if j == n - 3 { aj - 1 } else { aj };
        expected.set(n - 2, j, p.z(v));
    }
    expected.set(n - 2, n - 2, p.z(1));
    Ok((z, expected))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::{check_relations, evaluate_word, relations_for, Convention, GroupWord, Variant};

    fn zm(rows: &[&[i64]], m: u64) -> Matrix<ZmInt> {
        Matrix::from_i64_rows(rows, m).unwrap()
    }

    #[test]
    fn generator_matrices() {
        let p = AffineParams::new(5, 2, 2).unwrap();
        let g = rho_generators(&p).unwrap();
        assert_eq!(g.sigma[0].matrix(), &zm(&[&[0, 1], &[2, 4]], 5));
        assert_eq!(g.s[0].matrix(), &zm(&[&[0, 1], &[1, 0]], 5));
        let p = AffineParams::new(3, 2, 3).unwrap();
        let g = rho_generators(&p).unwrap();
        assert_eq!(g.sigma[1].matrix(), &zm(&[&[1, 0, 0], &[0, 0, 1], &[0, 2, 2]], 3));
        for (a, b) in g.sigma.iter().zip(&g.sigma_inv) {
            assert!(a.matrix().mul(b.matrix()).unwrap().is_identity());
        }
    }

    #[test]
    fn sigma_at_t_one_is_s() {
        // same block placement with t = 1 gives the flip
        let p = AffineParams::new(7, 3, 4).unwrap();
        let g = rho_generators(&p).unwrap();
        for i in 0..3 {
            let mut a = g.sigma[i].matrix().clone();
            a.set(i + 1, i, ZmInt::new(1, 7));
            a.set(i + 1, i + 1, ZmInt::new(0, 7));
            assert_eq!(&a, g.s[i].matrix());
        }
    }

    #[test]
    fn agl_form_small_cases() {
        let p = AffineParams::new(5, 2, 2).unwrap();
        let g = rho_generators(&p).unwrap();
        let sig = to_agl_form(&g.sigma[0]).unwrap();
        assert_eq!(sig.a, zm(&[&[-2]], 5));
        assert_eq!(sig.v, vec![ZmInt::new(2, 5)]);
        let s = to_agl_form(&g.s[0]).unwrap();
        assert_eq!(s.a, zm(&[&[-1]], 5));
        assert_eq!(s.v, vec![ZmInt::new(1, 5)]);
        let id = StochasticMatrix::new(Matrix::identity(3, 5)).unwrap();
        assert_eq!(to_agl_form(&id).unwrap(), AglElement::identity(2, 5));
        assert_eq!(from_agl_form(&sig).unwrap(), g.sigma[0]);
        assert_eq!(StochasticMatrix::new(zm(&[&[1, 1], &[0, 1]], 5)).unwrap_err(), Error::NotStochastic);
    }

    #[test]
    fn agl_rule_matches_matrix_product() {
        for (m, t) in [(3u64, 2i64), (5, 2), (5, 3)] {
            let p = AffineParams::new(m, t, 3).unwrap();
            let closure = generate_image(&p, DEFAULT_CAP).unwrap();
            let mats: Vec<_> = closure.element_matrices().collect();
            for (a, b) in mats.iter().zip(mats.iter().rev()).take(60) {
                let sa = StochasticMatrix::new(a.clone()).unwrap();
                let sb = StochasticMatrix::new(b.clone()).unwrap();
                let prod = StochasticMatrix::new(a.mul(b).unwrap()).unwrap();
                // to_agl_form reverses products
                let lhs = to_agl_form(&sb).unwrap().compose(&to_agl_form(&sa).unwrap()).unwrap();
                assert_eq!(lhs, to_agl_form(&prod).unwrap());
                assert_eq!(lhs.to_matrix(), to_agl_form(&sb).unwrap().to_matrix().mul(&to_agl_form(&sa).unwrap().to_matrix()).unwrap());
            }
        }
    }

    #[test]
    fn agl_orders_against_enumeration() {
        // count invertible k×k matrices mod m by brute force
        fn gl_count(m: u64, k: usize) -> u128 {
            let total = (m as usize).pow((k * k) as u32);
            let mut count = 0u128;
            for code in 0..total {
                let mut c = code;
                let mut rows = vec![vec![0i64; k]; k];
                for r in rows.iter_mut() {
                    for x in r.iter_mut() {
                        *x = (c % m as usize) as i64;
                        c /= m as usize;
                    }
                }
                let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
                if linalg::det_zm(&zm(&refs, m)).unwrap().is_unit() {
                    count += 1;
                }
            }
            count
        }
        for m in 2..=5u64 {
            for k in 1..=2u32 {
                let expected = (m as u128).pow(k) * gl_count(m, k as usize);
                assert_eq!(agl_order(m, k).unwrap(), expected, "m={m} k={k}");
            }
        }
        assert_eq!(agl_order(3, 2).unwrap(), 432);
    }

    #[test]
    fn predicate_examples() {
        assert_eq!(surjectivity_predicate(5, 2).unwrap(), Surjectivity { units_ok: true, generates: true });
        assert_eq!(surjectivity_predicate(13, 3).unwrap(), Surjectivity { units_ok: true, generates: false });
        assert_eq!(surjectivity_predicate(9, 2).unwrap(), Surjectivity { units_ok: true, generates: true });
        let sub: Vec<u64> = allowed_determinants(13, 3).iter().map(ZmInt::residue).collect();
        assert_eq!(sub, vec![1, 3, 4, 9, 10, 12]);
    }

    #[test]
    fn small_closures() {
        let c = generate_image(&AffineParams::new(3, 2, 2).unwrap(), DEFAULT_CAP).unwrap();
        assert!(c.complete);
        assert_eq!(c.order, 6);
        let partial = generate_image(&AffineParams::new(5, 2, 3).unwrap(), 50).unwrap();
        assert!(!partial.complete);
        assert_eq!(partial.order, 50);
    }

    #[test]
    fn relations_hold_except_l3() {
        let p = AffineParams::new(5, 2, 3).unwrap();
        let imgs = rho_generators(&p).unwrap().image_set().unwrap();
        let rep = check_relations(&imgs, &relations_for(3, Variant::LB).unwrap(), Convention::Standard).unwrap();
        assert!(rep.ok);
        let slb = check_relations(&imgs, &relations_for(3, Variant::SLB).unwrap(), Convention::Standard).unwrap();
        assert!(!slb.ok);
        assert!(slb.failures().all(|r| r.label == crate::presentations::RelationLabel::L3));
        let w: GroupWord = "sigma1 s1".parse().unwrap();
        let two = AffineParams::new(5, 2, 2).unwrap();
        let prod = evaluate_word(&rho_generators(&two).unwrap().image_set().unwrap(), &w, Convention::Standard).unwrap();
        assert_eq!(prod, zm(&[&[1, 0], &[4, 2]], 5));
    }

    #[test]
    fn drinfeld_examples() {
        let r = drinfeld_r_matrix(5, 2);
        // (1, 0) ↦ (4, 1), i.e. column 5 has its 1 in row 21
        assert!(r.get(21, 5).is_one());
        assert!(r.get(0, 0).is_one());
        let check = drinfeld_r_check(5, 2).unwrap();
        assert!(check.matches_leg_transpose);
        assert!(!check.matches_matrix_transpose);
        // the literal transpose agrees only when t ≡ -1
        assert!(drinfeld_r_check(5, 4).unwrap().matches_matrix_transpose);
    }

    #[test]
    fn landmarks_hold() {
        for (m, t) in [(7u64, 3i64), (5, 2), (9, 2)] {
            for n in 3..=5 {
                let p = AffineParams::new(m, t, n).unwrap();
                let l = proof_landmarks(&p).unwrap();
                assert_eq!(l.t_word, l.t_expected);
                assert_eq!(l.t_power, l.t_zero);
                assert_eq!(l.translation_word, l.translation_expected);
                let a: Vec<i64> = (0..n - 2).map(|j| if j == n - 3 { 2 } else { 1 }).collect();
                let (z, expected) = z_landmark(&p, &a).unwrap();
                assert_eq!(z, expected);
            }
        }
    }

    #[test]
    fn inverse_mod_composite() {
        // no unit in the first column, yet invertible mod 15
        let a = zm(&[&[3, 5], &[5, 3]], 15);
        let inv = inverse_mod(&a).unwrap();
        assert!(a.mul(&inv).unwrap().is_identity());
    }
}
