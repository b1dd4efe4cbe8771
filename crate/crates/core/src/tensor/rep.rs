//! The diagonal loop representations on colour words, and the
//! antisymmetrizer `f_N` on the first `N` strands.

use std::collections::BTreeMap;

use super::words::{ChargeBlock, ColorWord};
use super::young::{permutations_of, sign_of};
use crate::presentations::{GenKind, Generator};
use crate::scalars::{Field, LaurentPoly, Matrix, Rational, Ring};
use crate::{Error, Result};

/// `σ_j` multiplies a word by `equal` when letters `j, j+1` agree and
/// otherwise swaps them with coefficient `swapped`. In x-form these are
/// `(x, 1)`; in q-form `(q, q^{-1})`, which is the x-form at `x = q²`
/// divided by `q`.
#[derive(Clone, Debug, PartialEq)]
pub struct TauRep<R: Ring> {
    pub colours: usize,
    pub n: usize,
    pub equal: R,
    pub swapped: R,
}

impl TauRep<Rational> {
    pub fn x_form(colours: usize, n: usize, x: &Rational) -> Result<Self> {
        TauRep::in_field(colours, n, x, &())
    }
}

impl TauRep<LaurentPoly> {
    pub fn q_form(colours: usize, n: usize) -> Result<Self> {
        check_sizes(colours, n)?;
        Ok(TauRep { colours, n, equal: LaurentPoly::q_pow(1), swapped: LaurentPoly::q_pow(-1) })
    }
}

fn check_sizes(colours: usize, n: usize) -> Result<()> {
    if colours == 0 || colours > 9 {
        return Err(Error::InvalidParameter(format!("colours must be in 1..=9, got {colours}")));
    }
    if n > 16 {
        return Err(Error::InvalidParameter(format!("n = {n} is too large")));
    }
    Ok(())
}

impl<F: Field> TauRep<F> {
    /// The x-form with `x` mapped into `F`.
    pub fn in_field(colours: usize, n: usize, x: &Rational, ctx: &F::Ctx) -> Result<Self> {
        check_sizes(colours, n)?;
        let equal = F::from_rational(x, ctx)?;
        if equal.is_zero() {
            return Err(Error::InvalidParameter("x must be nonzero".into()));
        }
        Ok(TauRep { colours, n, equal, swapped: F::one(ctx) })
    }
}

impl<R: Ring> TauRep<R> {
    pub fn ctx(&self) -> R::Ctx {
        self.equal.ctx()
    }

    /// Same parameters on `n` strands.
    pub fn with_n(&self, n: usize) -> TauRep<R> {
        TauRep { n, ..self.clone() }
    }

    fn check_index(&self, j: usize) -> Result<()> {
        if j == 0 || j >= self.n {
            return Err(Error::InvalidParameter(format!("generator index {j} outside 1..{}", self.n)));
        }
        Ok(())
    }

    pub fn sigma_action(&self, j: usize, w: &ColorWord) -> Result<Vec<(ColorWord, R)>> {
        self.check_index(j)?;
        let l = w.letters();
        Ok(if l[j - 1] == l[j] {
            vec![(w.clone(), self.equal.clone())]
        } else {
            vec![(w.swapped(j), self.swapped.clone())]
        })
    }

    pub fn sigma_inv_action(&self, j: usize, w: &ColorWord) -> Result<Vec<(ColorWord, R)>> {
        self.check_index(j)?;
        let l = w.letters();
        let (word, c) = if l[j - 1] == l[j] { (w.clone(), &self.equal) } else { (w.swapped(j), &self.swapped) };
        let inv = c.try_inverse().ok_or(Error::Singular)?;
        Ok(vec![(word, inv)])
    }

    /// Fixes words with equal letters at `j, j+1`, otherwise maps to minus
    /// the swapped word.
    pub fn s_action(&self, j: usize, w: &ColorWord) -> Result<Vec<(ColorWord, R)>> {
        self.check_index(j)?;
        let ctx = self.ctx();
        let l = w.letters();
        Ok(if l[j - 1] == l[j] {
            vec![(w.clone(), R::one(&ctx))]
        } else {
            vec![(w.swapped(j), R::one(&ctx).negated())]
        })
    }

    /// `u_j = 1 - s_j`.
    pub fn u_action(&self, j: usize, w: &ColorWord) -> Result<Vec<(ColorWord, R)>> {
        self.check_index(j)?;
        let ctx = self.ctx();
        let l = w.letters();
        Ok(if l[j - 1] == l[j] {
            Vec::new()
        } else {
            vec![(w.clone(), R::one(&ctx)), (w.swapped(j), R::one(&ctx))]
        })
    }

    pub fn generator_action(&self, g: Generator, w: &ColorWord) -> Result<Vec<(ColorWord, R)>> {
        match (g.kind, g.exponent) {
            (GenKind::Sigma, e) if e < 0 => self.sigma_inv_action(g.index, w),
            (GenKind::Sigma, _) => self.sigma_action(g.index, w),
            (GenKind::S, _) => self.s_action(g.index, w),
        }
    }

    /// The generator as a monomial operator on one charge block.
    pub fn block_op(&self, block: &ChargeBlock, g: Generator) -> Result<MonomialOp<R>> {
        if block.n() != self.n {
            return Err(Error::DimensionMismatch { op: "block action", left: (block.n(), 0), right: (self.n, 0) });
        }
        let mut target = Vec::with_capacity(block.dim());
        let mut coeff = Vec::with_capacity(block.dim());
        for w in block.words() {
            let mut image = self.generator_action(g, w)?;
            let (word, c) = image.pop().expect("generators act monomially");
            target.push(block.index_of(&word).expect("generators preserve charge"));
            coeff.push(c);
        }
        Ok(MonomialOp { target, coeff, ctx: self.ctx() })
    }
}

/// A linear map sending basis vector `k` to `coeff[k]` times basis vector
/// `target[k]`.
#[derive(Clone, Debug)]
pub struct MonomialOp<R: Ring> {
    target: Vec<usize>,
    coeff: Vec<R>,
    ctx: R::Ctx,
}

impl<R: Ring> MonomialOp<R> {
    pub fn dim(&self) -> usize {
        self.target.len()
    }

    pub fn apply(&self, v: &[R]) -> Vec<R> {
        let mut out = vec![R::zero(&self.ctx); v.len()];
        for (k, x) in v.iter().enumerate() {
            if !x.is_zero() {
                out[self.target[k]] = x.times(&self.coeff[k]);
            }
        }
        out
    }

    pub fn to_matrix(&self) -> Matrix<R> {
        let d = self.dim();
        let mut m = Matrix::zeros(d, d, self.ctx.clone());
        for k in 0..d {
            m.set(self.target[k], k, self.coeff[k].clone());
        }
        m
    }
}

/// `f_N = Σ_{w ∈ S_N} sgn(w) a_w`, with `a_w` the action of the `s`
/// generators on the first `N` strands of `n`. Kept with integer
/// coefficients.
#[derive(Clone, Debug)]
pub struct FOperator {
    pub colours: usize,
    pub n: usize,
    /// Each permutation of the first `N` positions as a word in adjacent
    /// transpositions, with its sign.
    terms: Vec<(Vec<usize>, i64)>,
}

pub fn f_operator(colours: usize, n: usize) -> Result<FOperator> {
    if n < colours {
        return Err(Error::InvalidParameter(format!("f_{colours} needs n >= {colours}, got {n}")));
    }
    let positions: Vec<usize> = (0..colours).collect();
    let terms = permutations_of(&positions)
        .into_iter()
        .map(|p| (bubble_word(&p), sign_of(&p)))
        .collect();
    Ok(FOperator { colours, n, terms })
}

/// Adjacent transpositions (1-based) whose product sorts `p`.
fn bubble_word(p: &[usize]) -> Vec<usize> {
    let mut v = p.to_vec();
    let mut word = Vec::new();
    loop {
        let Some(i) = (0..v.len().saturating_sub(1)).find(|&i| v[i] > v[i + 1]) else {
            return word;
        };
        v.swap(i, i + 1);
        word.push(i + 1);
    }
}

impl FOperator {
    pub fn apply_word(&self, w: &ColorWord) -> Result<Vec<(ColorWord, i64)>> {
        if w.len() != self.n {
            return Err(Error::InvalidParameter(format!("word {w} has length {} not {}", w.len(), self.n)));
        }
        let mut acc: BTreeMap<ColorWord, i64> = BTreeMap::new();
        for (word, sign) in &self.terms {
            let mut cur = w.clone();
            let mut c = *sign;
            for &j in word {
                let l = cur.letters();
                if l[j - 1] != l[j] {
                    cur = cur.swapped(j);
                    c = -c;
                }
            }
            *acc.entry(cur).or_insert(0) += c;
        }
        Ok(acc.into_iter().filter(|(_, c)| *c != 0).collect())
    }

    pub fn apply_block<F: Ring>(&self, block: &ChargeBlock, v: &[F]) -> Result<Vec<F>> {
        let ctx = match v.first() {
            Some(x) => x.ctx(),
            None => return Ok(Vec::new()),
        };
        let mut out = vec![F::zero(&ctx); v.len()];
        for (k, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (word, c) in self.apply_word(block.word(k))? {
                let t = block.index_of(&word).expect("f_N preserves charge");
                out[t] = out[t].plus(&x.times(&F::from_i64(c, &ctx)));
            }
        }
        Ok(out)
    }

    pub fn block_matrix(&self, block: &ChargeBlock) -> Result<Matrix<Rational>> {
        let d = block.dim();
        let mut m = Matrix::zeros(d, d, ());
        for k in 0..d {
            for (word, c) in self.apply_word(block.word(k))? {
                m.set(block.index_of(&word).expect("f_N preserves charge"), k, Rational::integer(c));
            }
        }
        Ok(m)
    }
}
