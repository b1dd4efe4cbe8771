//! BMW-type relations for the q-form representation on three strands.

use serde::Serialize;

use crate::presentations::{first_difference, Generator, Witness};
use crate::scalars::{LaurentPoly, Matrix, Rational};
use crate::tensor::{ColorWord, TauRep};
use crate::Result;

#[derive(Clone, Debug, Serialize)]
pub struct BmwRelationResult {
    pub name: String,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BmwReport {
    pub colours: usize,
    pub results: Vec<BmwRelationResult>,
    pub ok: bool,
}

impl BmwReport {
    pub fn passed(&self, name: &str) -> bool {
        self.results.iter().filter(|r| r.name == name).all(|r| r.ok)
    }
}

fn all_words(colours: usize, n: usize) -> Vec<ColorWord> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w: Vec<u8>| {
                (1..=colours as u8).map(move |c| {
                    let mut v = w.clone();
                    v.push(c);
                    v
                })
            })
            .collect();
    }
    out.into_iter().map(|w| ColorWord::new(w).expect("colours from 1")).collect()
}

fn full_matrix(rep: &TauRep<LaurentPoly>, words: &[ColorWord], g: Generator) -> Result<Matrix<LaurentPoly>> {
    let d = words.len();
    let mut m = Matrix::zeros(d, d, ());
    for (k, w) in words.iter().enumerate() {
        for (image, c) in rep.generator_action(g, w)? {
            let r = words.binary_search(&image).expect("words are sorted and closed");
            m.set(r, k, c);
        }
    }
    Ok(m)
}

fn q(e: i32) -> LaurentPoly {
    LaurentPoly::q_pow(e)
}

/// Checks, for `b_i` the q-form `σ_i` on `(C^N)^{⊗3}` and
/// `u_i = 1 - (b_i - b_i^{-1}) / (q - q^{-1})`:
/// `u_i b_i = q^{-1} u_i`, `u_i b_j^{±1} u_i = q^{±1} u_i`, the cubic
/// `(b - q^{-1})(b - q)(b + q^{-1}) = 0`, `u_i² = 2 u_i`, `u_i u_j u_i = u_i`.
pub fn bmw_check(colours: usize) -> Result<BmwReport> {
    let rep = TauRep::q_form(colours, 3)?;
    let words = all_words(colours, 3);
    let d = words.len();
    let id = Matrix::<LaurentPoly>::identity(d, ());
    let zero = Matrix::<LaurentPoly>::zeros(d, d, ());
    let denom = &q(1) - &q(-1);
    let mut b = Vec::new();
    let mut b_inv = Vec::new();
    let mut u = Vec::new();
    for i in 1..=2 {
        let bi = full_matrix(&rep, &words, Generator::sigma(i))?;
        let bi_inv = full_matrix(&rep, &words, Generator::sigma_inv(i))?;
        let diff = bi.sub(&bi_inv)?.try_map((), |x| x.div_exact(&denom))?;
        u.push(id.sub(&diff)?);
        b.push(bi);
        b_inv.push(bi_inv);
    }
    let mut results = Vec::new();
    let mut record = |name: &str, lhs: Matrix<LaurentPoly>, rhs: Matrix<LaurentPoly>| -> Result<()> {
        let witness = first_difference(&lhs, &rhs)?;
        results.push(BmwRelationResult { name: name.into(), ok: witness.is_none(), witness });
        Ok(())
    };
    for i in 0..2 {
        record("untwist", u[i].mul(&b[i])?, u[i].scale(&q(-1)))?;
    }
    for (i, j) in [(1, 0), (0, 1)] {
        record("tangle", u[i].mul(&b[j])?.mul(&u[i])?, u[i].scale(&q(1)))?;
        record("tangle", u[i].mul(&b_inv[j])?.mul(&u[i])?, u[i].scale(&q(-1)))?;
    }
    for bi in &b {
        let lhs = bi
            .sub(&id.scale(&q(-1)))?
            .mul(&bi.sub(&id.scale(&q(1)))?)?
            .mul(&bi.add(&id.scale(&q(-1)))?)?;
        record("cubic", lhs, zero.clone())?;
    }
    let two = LaurentPoly::constant(Rational::integer(2));
    for ui in &u {
        record("loop", ui.mul(ui)?, ui.scale(&two))?;
    }
    for (i, j) in [(0, 1), (1, 0)] {
        record("straighten", u[i].mul(&u[j])?.mul(&u[i])?, u[i].clone())?;
    }
    let ok = results.iter().all(|r| r.ok);
    Ok(BmwReport { colours, results, ok })
}
