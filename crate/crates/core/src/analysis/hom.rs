//! Modules given by explicit generator matrices, intertwiner spaces, and
//! irreducibility verdicts.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::algebra::algebra_span;
use crate::presentations::Generator;
use crate::scalars::linalg::{kernel, RowSpace};
use crate::scalars::{Field, Matrix};
use crate::tensor::ModuleSpec;
use crate::{Error, Result};

/// A finite-dimensional module: one matrix per generator, all acting on
/// column vectors of length `dim`.
#[derive(Clone, Debug)]
pub struct ActionModule<F: Field> {
    pub dim: usize,
    pub ctx: F::Ctx,
    pub generators: Vec<Generator>,
    pub matrices: Vec<Matrix<F>>,
}

/// `σ_1, s_1, …, σ_k, s_k`.
pub fn standard_generators(k: usize) -> Vec<Generator> {
    (1..=k).flat_map(|j| [Generator::sigma(j), Generator::s(j)]).collect()
}

impl<F: Field> ActionModule<F> {
    pub fn new(dim: usize, ctx: F::Ctx, generators: Vec<Generator>, matrices: Vec<Matrix<F>>) -> Result<Self> {
        if generators.len() != matrices.len() {
            return Err(Error::InvalidParameter("one matrix per generator required".into()));
        }
        for m in &matrices {
            if m.shape() != (dim, dim) {
                return Err(Error::DimensionMismatch { op: "action module", left: (dim, dim), right: m.shape() });
            }
        }
        Ok(ActionModule { dim, ctx, generators, matrices })
    }

    /// The module `spec` under `σ_j, s_j` for `j = 1..=k`.
    pub fn from_spec(spec: &ModuleSpec<F>, k: usize) -> Result<Self> {
        if k >= spec.n().max(1) && k > 0 {
            return Err(Error::InvalidParameter(format!("only {} strands available", spec.n())));
        }
        let generators = standard_generators(k);
        let matrices = generators.iter().map(|&g| spec.generator_matrix(g)).collect::<Result<_>>()?;
        ActionModule::new(spec.dim(), spec.rep.ctx(), generators, matrices)
    }

    /// The module under all generators of its strand count.
    pub fn full(spec: &ModuleSpec<F>) -> Result<Self> {
        ActionModule::from_spec(spec, spec.n().saturating_sub(1))
    }

    /// Drop `σ_{n-1}` and `s_{n-1}`.
    pub fn restrict(&self) -> Result<Self> {
        let Some(top) = self.generators.iter().map(|g| g.index).max() else {
            return Err(Error::InvalidParameter("nothing to restrict".into()));
        };
        let (generators, matrices) = self
            .generators
            .iter()
            .zip(&self.matrices)
            .filter(|(g, _)| g.index < top)
            .map(|(g, m)| (*g, m.clone()))
            .unzip();
        ActionModule::new(self.dim, self.ctx.clone(), generators, matrices)
    }

    pub fn direct_sum(&self, other: &ActionModule<F>) -> Result<Self> {
        if self.generators != other.generators {
            return Err(Error::InvalidParameter("generator lists differ".into()));
        }
        let d = self.dim + other.dim;
        let matrices = self
            .matrices
            .iter()
            .zip(&other.matrices)
            .map(|(a, b)| {
                Matrix::from_fn(d, d, self.ctx.clone(), |r, c| match (r < self.dim, c < self.dim) {
                    (true, true) => a.get(r, c).clone(),
                    (false, false) => b.get(r - self.dim, c - self.dim).clone(),
                    _ => F::zero(&self.ctx),
                })
            })
            .collect();
        ActionModule::new(d, self.ctx.clone(), self.generators.clone(), matrices)
    }

    /// The contragredient-style module with transposed matrices.
    pub fn transposed(&self) -> Self {
        ActionModule { matrices: self.matrices.iter().map(Matrix::transpose).collect(), ..self.clone() }
    }

    /// Dimension of the submodule generated by `v`.
    pub fn spin(&self, v: &[F]) -> Result<usize> {
        Ok(spin_basis(self, v)?.len())
    }

    /// Map every matrix entry into another field.
    pub fn map_field<G: Field>(&self, ctx: G::Ctx, f: impl Fn(&F) -> Result<G>) -> Result<ActionModule<G>> {
        let matrices = self.matrices.iter().map(|m| m.try_map(ctx.clone(), &f)).collect::<Result<_>>()?;
        ActionModule::new(self.dim, ctx, self.generators.clone(), matrices)
    }
}

/// A basis of the submodule generated by `v` (empty for `v = 0`).
pub fn spin_basis<F: Field>(m: &ActionModule<F>, v: &[F]) -> Result<Vec<Vec<F>>> {
    let mut space = RowSpace::new(m.dim, m.ctx.clone());
    let mut out = Vec::new();
    if space.insert(v)? {
        out.push(v.to_vec());
    }
    let mut head = 0;
    while head < out.len() {
        let b = out[head].clone();
        head += 1;
        for g in &m.matrices {
            let w = g.mul_vec(&b)?;
            if space.insert(&w)? {
                out.push(w);
            }
        }
    }
    Ok(out)
}

/// A semi-echelon basis that also remembers how each reduced row is built
/// from the vectors actually inserted.
struct TrackedSpan<F: Field> {
    ctx: F::Ctx,
    rows: Vec<(usize, Vec<F>, Vec<F>)>,
    count: usize,
}

impl<F: Field> TrackedSpan<F> {
    fn new(ctx: F::Ctx) -> Self {
        TrackedSpan { ctx, rows: Vec::new(), count: 0 }
    }

    /// Either the coefficients expressing `v` in the inserted vectors, or
    /// `None` after inserting `v` as a new vector.
    fn express_or_insert(&mut self, v: &[F]) -> Option<Vec<F>> {
        let zero = F::zero(&self.ctx);
        let mut residual = v.to_vec();
        let mut combo = vec![zero.clone(); self.count + 1];
        for (p, row, rc) in &self.rows {
            let f = residual[*p].clone();
            if f.is_zero() {
                continue;
            }
            for (x, r) in residual.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = x.minus(&f.times(r));
                }
            }
            for (x, r) in combo.iter_mut().zip(rc) {
                if !r.is_zero() {
                    *x = x.plus(&f.times(r));
                }
            }
        }
        match residual.iter().position(|x| !x.is_zero()) {
            None => {
                combo.truncate(self.count);
                Some(combo)
            }
            Some(p) => {
                let inv = residual[p].try_inverse().expect("field element");
                // residual = v - Σ combo_k b_k, and v becomes b_count
                let mut rc: Vec<F> = combo.iter().map(|c| c.negated().times(&inv)).collect();
                rc[self.count] = inv.clone();
                let row = residual.iter().map(|x| x.times(&inv)).collect();
                for (_, _, other) in &mut self.rows {
                    other.push(zero.clone());
                }
                self.rows.push((p, row, rc));
                self.count += 1;
                None
            }
        }
    }
}

enum SpinEvent<F> {
    Seed { index: usize },
    New { index: usize, parent: usize, generator: usize },
    Relation { parent: usize, generator: usize, combo: Vec<F> },
}

/// Spin a standard basis of `m` from its coordinate vectors, recording how
/// each basis vector arose and every linear relation met along the way.
fn standard_basis_events<F: Field>(m: &ActionModule<F>) -> Result<Vec<SpinEvent<F>>> {
    let mut span = TrackedSpan::new(m.ctx.clone());
    let mut vectors: Vec<Vec<F>> = Vec::new();
    let mut events = Vec::new();
    let mut head = 0;
    for s in 0..m.dim {
        if vectors.len() == m.dim {
            break;
        }
        let mut e = vec![F::zero(&m.ctx); m.dim];
        e[s] = F::one(&m.ctx);
        if span.express_or_insert(&e).is_some() {
            continue;
        }
        events.push(SpinEvent::Seed { index: vectors.len() });
        vectors.push(e);
        while head < vectors.len() {
            let b = vectors[head].clone();
            for (gi, g) in m.matrices.iter().enumerate() {
                let w = g.mul_vec(&b)?;
                match span.express_or_insert(&w) {
                    Some(combo) => events.push(SpinEvent::Relation { parent: head, generator: gi, combo }),
                    None => {
                        events.push(SpinEvent::New { index: vectors.len(), parent: head, generator: gi });
                        vectors.push(w);
                    }
                }
            }
            head += 1;
        }
    }
    Ok(events)
}

/// `dim Hom(m1, m2)`: the solutions `X` of `X ρ₁(g) = ρ₂(g) X`.
///
/// A homomorphism is fixed by the images of the seeds of a standard basis
/// of `m1`; every relation met while spinning that basis cuts down the
/// space of admissible seed images.
pub fn hom_dim<F: Field>(m1: &ActionModule<F>, m2: &ActionModule<F>) -> Result<usize> {
    if m1.generators != m2.generators {
        return Err(Error::InvalidParameter("modules are over different generator sets".into()));
    }
    if m1.dim == 0 || m2.dim == 0 {
        return Ok(0);
    }
    let events = standard_basis_events(m1)?;
    let ctx = m2.ctx.clone();
    let d2 = m2.dim;
    let mut k = 0;
    // images of the standard basis vectors, one d2 × k block each
    let mut phi: Vec<Matrix<F>> = Vec::with_capacity(m1.dim);
    for event in events {
        match event {
            SpinEvent::Seed { index } => {
                debug_assert_eq!(index, phi.len());
                // a fresh seed brings d2 unconstrained parameters
                for p in &mut phi {
                    *p = Matrix::from_fn(d2, k + d2, ctx.clone(), |r, c| {
                        if c < k {
                            p.get(r, c).clone()
                        } else {
                            F::zero(&ctx)
                        }
                    });
                }
                phi.push(Matrix::from_fn(d2, k + d2, ctx.clone(), |r, c| {
                    if c == k + r {
                        F::one(&ctx)
                    } else {
                        F::zero(&ctx)
                    }
                }));
                k += d2;
            }
            SpinEvent::New { index, parent, generator } => {
                debug_assert_eq!(index, phi.len());
                let next = m2.matrices[generator].mul(&phi[parent])?;
                phi.push(next);
            }
            SpinEvent::Relation { parent, generator, combo } => {
                let mut c = m2.matrices[generator].mul(&phi[parent])?;
                for (j, coef) in combo.iter().enumerate() {
                    if !coef.is_zero() {
                        c = c.sub(&phi[j].scale(coef))?;
                    }
                }
                if c.is_zero() {
                    continue;
                }
                let kern = kernel(&c)?;
                let kk = kern.len();
                let basis = Matrix::from_fn(k, kk, ctx.clone(), |r, col| kern[col][r].clone());
                for p in &mut phi {
                    *p = p.mul(&basis)?;
                }
                k = kk;
            }
        }
    }
    Ok(k)
}

pub fn end_dim<F: Field>(m: &ActionModule<F>) -> Result<usize> {
    hom_dim(m, m)
}

/// Largest module for which irreducibility is decided by comparing the
/// generated algebra with the full matrix algebra.
pub const FULL_ALGEBRA_LIMIT: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IrreducibilityMethod {
    /// The generated algebra is (or is not) all `d × d` matrices.
    FullAlgebra,
    /// A seeded random vector generated a proper submodule.
    ProperSubmodule,
    /// `dim End = 1`, which decides the question for semisimple modules.
    Endomorphisms,
}

#[derive(Clone, Debug, Serialize)]
pub struct IrreducibilityVerdict {
    pub irreducible: bool,
    pub dim: usize,
    pub end_dim: usize,
    pub method: IrreducibilityMethod,
    /// Dimension of a proper submodule found by spinning, if any.
    pub submodule_dim: Option<usize>,
}

/// Random vectors are tried on the module and on its transpose before the
/// endomorphism count; a proper generated submodule settles reducibility.
pub fn is_irreducible<F: Field>(m: &ActionModule<F>, seed: u64) -> Result<IrreducibilityVerdict> {
    let end = end_dim(m)?;
    let verdict = |irreducible, method, submodule_dim| IrreducibilityVerdict {
        irreducible,
        dim: m.dim,
        end_dim: end,
        method,
        submodule_dim,
    };
    if m.dim == 0 {
        return Ok(verdict(false, IrreducibilityMethod::Endomorphisms, None));
    }
    if m.dim <= FULL_ALGEBRA_LIMIT {
        let span = algebra_span(&m.matrices, m.dim, m.ctx.clone())?;
        return Ok(verdict(span.basis.len() == m.dim * m.dim, IrreducibilityMethod::FullAlgebra, None));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dual = m.transposed();
    for module in [m, &dual] {
        for _ in 0..4 {
            let v: Vec<F> = (0..m.dim).map(|_| F::from_i64(rng.gen_range(-9..=9), &m.ctx)).collect();
            let d = module.spin(&v)?;
            if d > 0 && d < m.dim {
                return Ok(verdict(false, IrreducibilityMethod::ProperSubmodule, Some(d)));
            }
        }
    }
    Ok(verdict(end == 1, IrreducibilityMethod::Endomorphisms, None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{Rational, Ring, ZmInt};
    use crate::tensor::{harmonic_module, young_module, HarmonicLabel, Partition, TauRep};

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn rep(colours: usize, n: usize, x: i64) -> TauRep<Rational> {
        TauRep::x_form(colours, n, &Rational::integer(x)).unwrap()
    }

    /// Intertwiners by solving the full linear system `X A = B X`.
    fn hom_dim_direct(m1: &ActionModule<Rational>, m2: &ActionModule<Rational>) -> usize {
        let (d1, d2) = (m1.dim, m2.dim);
        let unknowns = d1 * d2;
        let mut rows = Vec::new();
        for (a, b) in m1.matrices.iter().zip(&m2.matrices) {
            for r in 0..d2 {
                for c in 0..d1 {
                    // (X A - B X)[r][c] = Σ_k X[r][k] A[k][c] - Σ_k B[r][k] X[k][c]
                    let mut row = vec![Rational::zero(); unknowns];
                    for k in 0..d1 {
                        row[r * d1 + k] = &row[r * d1 + k] + a.get(k, c);
                    }
                    for k in 0..d2 {
                        row[k * d1 + c] = &row[k * d1 + c] - b.get(r, k);
                    }
                    rows.push(row);
                }
            }
        }
        let m = Matrix::from_rows(rows, ()).unwrap();
        unknowns - crate::scalars::linalg::rank(&m).unwrap()
    }

    #[test]
    fn end_of_two_one_is_scalar() {
        let m = ActionModule::full(&young_module(&rep(2, 3, 2), &p("(2,1)")).unwrap()).unwrap();
        assert_eq!(end_dim(&m).unwrap(), 1);
        assert_eq!(end_dim(&m.direct_sum(&m).unwrap()).unwrap(), 4);
    }

    #[test]
    fn symmetric_and_antisymmetric_lines_differ() {
        let r = rep(2, 2, 2);
        let a = ActionModule::full(&harmonic_module(&r, &HarmonicLabel::new(p("(1,1)"), vec![p("(2)")]).unwrap()).unwrap())
            .unwrap();
        let b = ActionModule::full(&harmonic_module(&r, &HarmonicLabel::new(p("(1,1)"), vec![p("(1,1)")]).unwrap()).unwrap())
            .unwrap();
        assert_eq!(hom_dim(&a, &b).unwrap(), 0);
        assert_eq!(hom_dim(&a, &a).unwrap(), 1);
    }

    #[test]
    fn spin_up_agrees_with_direct_solve() {
        for (colours, n) in [(2, 3), (2, 4), (3, 3), (3, 4)] {
            for x in [2, -1] {
                let r = rep(colours, n, x);
                let mods: Vec<_> = HarmonicLabel::all_at(colours, n)
                    .iter()
                    .map(|l| ActionModule::full(&harmonic_module(&r, l).unwrap()).unwrap())
                    .collect();
                for a in &mods {
                    for b in &mods {
                        assert_eq!(hom_dim(a, b).unwrap(), hom_dim_direct(a, b));
                    }
                    let sum = a.direct_sum(&mods[0]).unwrap();
                    assert_eq!(hom_dim(&sum, a).unwrap(), hom_dim_direct(&sum, a));
                }
            }
        }
    }

    #[test]
    fn degenerate_parameter_gives_invariant_line() {
        let spec = young_module(&rep(2, 3, -1), &p("(2,1)")).unwrap();
        let m = ActionModule::full(&spec).unwrap();
        let verdict = is_irreducible(&m, 7).unwrap();
        assert!(!verdict.irreducible);
        // 112 - 121 + 211 in the echelon basis of the full block
        let line: Vec<Rational> = [1, -1, 1].iter().map(|&c| Rational::integer(c)).collect();
        assert_eq!(m.spin(&line).unwrap(), 1);
        let generic = ActionModule::full(&young_module(&rep(2, 3, 2), &p("(2,1)")).unwrap()).unwrap();
        assert_eq!(generic.spin(&line).unwrap(), 3);
        assert!(is_irreducible(&generic, 7).unwrap().irreducible);
        let sum = generic.direct_sum(&generic).unwrap();
        assert!(!is_irreducible(&sum, 7).unwrap().irreducible);
    }

    #[test]
    fn modular_reduction_matches_rational() {
        let r = rep(3, 4, 2);
        let p_ = 1_000_003u64;
        for l in HarmonicLabel::all_at(3, 4) {
            let q = ActionModule::full(&harmonic_module(&r, &l).unwrap()).unwrap();
            let fp = q.map_field(p_, |x| crate::scalars::rational_to_zp(x, p_)).unwrap();
            assert_eq!(end_dim(&fp).unwrap(), end_dim(&q).unwrap());
            let _ = ZmInt::new(1, p_).is_one();
        }
    }
}
