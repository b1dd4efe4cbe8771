//! The algebra generated by a set of matrices, its radical and centre, and
//! the localization triangle for `e = f_N / N!`.

use serde::Serialize;

use crate::presentations::Generator;
use crate::scalars::linalg::{nullity, RowSpace};
use crate::scalars::{Field, Matrix, Rational};
use crate::tensor::{f_operator, factorial, partitions, ChargeBlock, TauRep};
use crate::{Error, Result};

/// Largest matrix size accepted by [`algebra_span`].
pub const SPAN_SIZE_LIMIT: usize = 64;

/// A basis of the algebra generated by `generators` and the identity.
#[derive(Clone, Debug)]
pub struct AlgebraSpan<F: Field> {
    pub d: usize,
    pub basis: Vec<Matrix<F>>,
    /// Whether left multiplication by every generator maps the span into itself.
    pub closed: bool,
}

impl<F: Field> AlgebraSpan<F> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

fn flatten<F: Field>(m: &Matrix<F>) -> &[F] {
    m.entries()
}

/// Closure of `{I}` under left multiplication by the generators.
pub fn algebra_span<F: Field>(generators: &[Matrix<F>], d: usize, ctx: F::Ctx) -> Result<AlgebraSpan<F>> {
    if d > SPAN_SIZE_LIMIT {
        return Err(Error::DimensionBlowup { limit: SPAN_SIZE_LIMIT * SPAN_SIZE_LIMIT });
    }
    let mut space = RowSpace::new(d * d, ctx.clone());
    let mut basis = vec![Matrix::identity(d, ctx)];
    if d == 0 {
        return Ok(AlgebraSpan { d, basis: Vec::new(), closed: true });
    }
    space.insert(flatten(&basis[0]))?;
    let mut head = 0;
    while head < basis.len() {
        let b = basis[head].clone();
        head += 1;
        for g in generators {
            let p = g.mul(&b)?;
            if space.insert(flatten(&p))? {
                basis.push(p);
                if basis.len() > d * d {
                    return Err(Error::DimensionBlowup { limit: d * d });
                }
            }
        }
    }
    Ok(AlgebraSpan { d, basis, closed: true })
}

fn commutator<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Result<Matrix<F>> {
    a.mul(b)?.sub(&b.mul(a)?)
}

/// Dimension of `{Σ c_i A_i : Σ c_i [A_i, g] = 0 for every g}`.
fn commutant_dim<F: Field>(basis: &[Matrix<F>], against: &[Matrix<F>], ctx: &F::Ctx) -> Result<usize> {
    if basis.is_empty() {
        return Ok(0);
    }
    let cols: Vec<Vec<F>> = basis
        .iter()
        .map(|a| {
            let mut col = Vec::new();
            for g in against {
                col.extend_from_slice(commutator(a, g)?.entries());
            }
            Ok(col)
        })
        .collect::<Result<_>>()?;
    let rows = cols.first().map_or(0, Vec::len);
    if rows == 0 {
        return Ok(basis.len());
    }
    let m = Matrix::from_fn(rows, basis.len(), ctx.clone(), |r, c| cols[c][r].clone());
    nullity(&m)
}

fn trace_of_product<F: Field>(a: &Matrix<F>, b: &Matrix<F>, ctx: &F::Ctx) -> F {
    let d = a.rows();
    let mut acc = F::zero(ctx);
    for r in 0..d {
        for c in 0..d {
            let x = a.get(r, c);
            if !x.is_zero() {
                let y = b.get(c, r);
                if !y.is_zero() {
                    acc = acc.plus(&x.times(y));
                }
            }
        }
    }
    acc
}

/// Nullity of the trace form `(a, b) ↦ tr(ab)` on the span. For a faithful
/// representation in characteristic zero this is the dimension of the
/// Jacobson radical.
pub fn radical_dim<F: Field>(span: &AlgebraSpan<F>, ctx: &F::Ctx) -> Result<usize> {
    let s = span.dim();
    if s == 0 {
        return Ok(0);
    }
    let gram = Matrix::from_fn(s, s, ctx.clone(), |i, j| trace_of_product(&span.basis[i], &span.basis[j], ctx));
    nullity(&gram)
}

pub fn center_dim<F: Field>(span: &AlgebraSpan<F>, generators: &[Matrix<F>], ctx: &F::Ctx) -> Result<usize> {
    commutant_dim(&span.basis, generators, ctx)
}

fn block_diagonal<F: Field>(blocks: &[Matrix<F>], ctx: &F::Ctx) -> Matrix<F> {
    let d: usize = blocks.iter().map(Matrix::rows).sum();
    let mut m = Matrix::zeros(d, d, ctx.clone());
    let mut off = 0;
    for b in blocks {
        for r in 0..b.rows() {
            for c in 0..b.cols() {
                let x = b.get(r, c);
                if !x.is_zero() {
                    m.set(off + r, off + c, x.clone());
                }
            }
        }
        off += b.rows();
    }
    m
}

/// The tensor representation on one sorted-content block per partition of
/// `n` into at most `N` parts. Every block shape occurs, so the image
/// algebra is that of the full tensor power.
#[derive(Clone, Debug)]
pub struct FaithfulRep {
    pub colours: usize,
    pub n: usize,
    pub blocks: Vec<ChargeBlock>,
    pub generators: Vec<Generator>,
    pub matrices: Vec<Matrix<Rational>>,
}

pub fn faithful_rep(colours: usize, n: usize, x: &Rational) -> Result<FaithfulRep> {
    let rep = TauRep::x_form(colours, n, x)?;
    let blocks: Vec<ChargeBlock> =
        partitions(n, colours).iter().map(|l| ChargeBlock::young(colours, l)).collect::<Result<_>>()?;
    let generators: Vec<Generator> =
        (1..n).flat_map(|j| [Generator::sigma(j), Generator::s(j)]).collect();
    let matrices = generators
        .iter()
        .map(|&g| {
            let parts: Vec<Matrix<Rational>> =
                blocks.iter().map(|b| Ok(rep.block_op(b, g)?.to_matrix())).collect::<Result<_>>()?;
            Ok(block_diagonal(&parts, &()))
        })
        .collect::<Result<_>>()?;
    Ok(FaithfulRep { colours, n, blocks, generators, matrices })
}

impl FaithfulRep {
    pub fn dim(&self) -> usize {
        self.blocks.iter().map(ChargeBlock::dim).sum()
    }

    pub fn span(&self) -> Result<AlgebraSpan<Rational>> {
        algebra_span(&self.matrices, self.dim(), ())
    }

    /// `f_N` acting on every block.
    pub fn f_matrix(&self) -> Result<Matrix<Rational>> {
        let f = f_operator(self.colours, self.n)?;
        let parts: Vec<_> = self.blocks.iter().map(|b| f.block_matrix(b)).collect::<Result<_>>()?;
        Ok(block_diagonal(&parts, &()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SemisimplicityReport {
    pub colours: usize,
    pub n: usize,
    pub x: String,
    pub span_dim: usize,
    pub radical_dim: usize,
    pub center_dim: usize,
    pub semisimple: bool,
}

/// Radical and centre of the image of the loop braid group algebra.
/// Only meaningful for `x` in a field of characteristic zero.
pub fn semisimplicity_check(colours: usize, n: usize, x: &Rational) -> Result<SemisimplicityReport> {
    let rep = faithful_rep(colours, n, x)?;
    let span = rep.span()?;
    let radical = radical_dim(&span, &())?;
    let center = center_dim(&span, &rep.matrices, &())?;
    Ok(SemisimplicityReport {
        colours,
        n,
        x: x.to_string(),
        span_dim: span.dim(),
        radical_dim: radical,
        center_dim: center,
        semisimple: radical == 0,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TriangleReport {
    pub colours: usize,
    pub n: usize,
    pub x: String,
    pub algebra_dim: usize,
    pub center_dim: usize,
    /// `dim Z(eAe)`.
    pub local_center_dim: usize,
    /// `dim AeA`.
    pub ideal_dim: usize,
    /// `dim Z(A / AeA)`.
    pub quotient_center_dim: usize,
    pub holds: bool,
}

/// Compare `dim Z(A)` with `dim Z(eAe) + dim Z(A/AeA)` for `e = f_N / N!`.
pub fn localization_triangle_check(colours: usize, n: usize, x: &Rational) -> Result<TriangleReport> {
    let rep = faithful_rep(colours, n, x)?;
    let span = rep.span()?;
    let f = rep.f_matrix()?;
    let nf = Rational::integer(factorial(colours) as i64);
    if f.mul(&f)? != f.scale(&nf) {
        return Err(Error::NotIdempotent);
    }
    let e = f.scale(&nf.recip().ok_or(Error::Singular)?);
    let d = rep.dim();
    let width = d * d;

    let center = center_dim(&span, &rep.matrices, &())?;

    // eAe and its centre
    let mut local_space = RowSpace::new(width, ());
    let mut local = Vec::new();
    for a in &span.basis {
        let m = e.mul(a)?.mul(&e)?;
        if local_space.insert(m.entries())? {
            local.push(m);
        }
    }
    let local_center = commutant_dim(&local, &local, &())?;

    // the two-sided ideal AeA
    let mut ideal = RowSpace::new(width, ());
    let left: Vec<Matrix<Rational>> = span.basis.iter().map(|a| a.mul(&e)).collect::<Result<_>>()?;
    'outer: for ae in &left {
        for b in &span.basis {
            ideal.insert(ae.mul(b)?.entries())?;
            if ideal.dim() == span.dim() {
                break 'outer;
            }
        }
    }

    // Z(A/I): c with Σ c_i [A_i, g] ∈ I for all g, minus I itself
    let cols: Vec<Vec<Rational>> = span
        .basis
        .iter()
        .map(|a| {
            let mut col = Vec::new();
            for g in &rep.matrices {
                let mut v = commutator(a, g)?.entries().to_vec();
                ideal.reduce(&mut v);
                col.extend(v);
            }
            Ok(col)
        })
        .collect::<Result<_>>()?;
    let rows = cols.first().map_or(0, Vec::len);
    let relative = if rows == 0 {
        span.dim()
    } else {
        nullity(&Matrix::from_fn(rows, span.dim(), (), |r, c| cols[c][r].clone()))?
    };
    let quotient_center = relative - ideal.dim();

    Ok(TriangleReport {
        colours,
        n,
        x: x.to_string(),
        algebra_dim: span.dim(),
        center_dim: center,
        local_center_dim: local_center,
        ideal_dim: ideal.dim(),
        quotient_center_dim: quotient_center,
        holds: center == local_center + quotient_center,
    })
}
