//! Generators and defining relations of the loop braid group and its
//! relatives, and a checker that evaluates relations on matrix images.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::scalars::{linalg, Matrix, Ring};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum GenKind {
    Sigma,
    S,
}

/// One letter `σ_i^{±1}` or `s_i`. Indices are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub kind: GenKind,
    pub index: usize,
    pub exponent: i8,
}

impl Generator {
    pub fn sigma(index: usize) -> Self {
        Generator { kind: GenKind::Sigma, index, exponent: 1 }
    }

    pub fn sigma_inv(index: usize) -> Self {
        Generator { kind: GenKind::Sigma, index, exponent: -1 }
    }

    pub fn s(index: usize) -> Self {
        Generator { kind: GenKind::S, index, exponent: 1 }
    }

    pub fn inverse(self) -> Self {
        match self.kind {
            GenKind::Sigma => Generator { exponent: -self.exponent, ..self },
            GenKind::S => self,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.kind, self.exponent) {
            (GenKind::Sigma, 1) => write!(f, "sigma{}", self.index),
            (GenKind::Sigma, _) => write!(f, "sigma{}^-1", self.index),
            (GenKind::S, _) => write!(f, "s{}", self.index),
        }
    }
}

impl FromStr for Generator {
    type Err = Error;

    /// `sigma3`, `σ3`, `sigma3^-1`, `s2`; `s2^-1` is read as `s2`.
    fn from_str(tok: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad generator {tok:?}"));
        let (kind, rest) = if let Some(r) = tok.strip_prefix("sigma") {
            (GenKind::Sigma, r)
        } else if let Some(r) = tok.strip_prefix('σ') {
            (GenKind::Sigma, r)
        } else if let Some(r) = tok.strip_prefix('s') {
            (GenKind::S, r)
        } else {
            return Err(bad());
        };
        let (digits, exponent) = match rest.split_once('^') {
            Some((d, "-1")) => (d, -1),
            Some((d, "1")) => (d, 1),
            Some(_) => return Err(bad()),
            None => (rest, 1),
        };
        if digits.is_empty() || digits.len() > 6 || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let index: usize = digits.parse().map_err(|_| bad())?;
        if index == 0 {
            return Err(bad());
        }
        Ok(match kind {
            GenKind::Sigma => Generator { kind, index, exponent },
            GenKind::S => Generator::s(index),
        })
    }
}

/// A word in the generators; the empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GroupWord {
    pub letters: Vec<Generator>,
}

impl GroupWord {
    pub fn new(letters: Vec<Generator>) -> Self {
        GroupWord { letters }
    }

    pub fn identity() -> Self {
        GroupWord::default()
    }

    pub fn concat(&self, other: &GroupWord) -> GroupWord {
        GroupWord { letters: self.letters.iter().chain(&other.letters).copied().collect() }
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord { letters: self.letters.iter().rev().map(|g| g.inverse()).collect() }
    }

    pub fn max_index(&self) -> usize {
        self.letters.iter().map(|g| g.index).max().unwrap_or(0)
    }
}

impl From<Vec<Generator>> for GroupWord {
    fn from(letters: Vec<Generator>) -> Self {
        GroupWord { letters }
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        let parts: Vec<String> = self.letters.iter().map(|g| g.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl FromStr for GroupWord {
    type Err = Error;

    /// Whitespace- or `*`-separated generators; `e` or the empty string is
    /// the identity.
    fn from_str(s: &str) -> Result<Self> {
        let mut letters = Vec::new();
        for tok in s.split(|c: char| c.is_whitespace() || c == '*').filter(|t| !t.is_empty()) {
            if tok == "e" {
                continue;
            }
            letters.push(tok.parse()?);
        }
        Ok(GroupWord { letters })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Variant {
    LB,
    OLB,
    VB,
    SLB,
}

impl FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "LB" => Ok(Variant::LB),
            "OLB" => Ok(Variant::OLB),
            "VB" => Ok(Variant::VB),
            "SLB" => Ok(Variant::SLB),
            _ => Err(Error::Parse(format!("unknown group variant {s:?}"))),
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum RelationLabel {
    B1,
    B2,
    S1,
    S2,
    S3,
    L0,
    L1,
    L2,
    L3,
}

impl fmt::Display for RelationLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub label: RelationLabel,
    pub indices: Vec<usize>,
    pub left: GroupWord,
    pub right: GroupWord,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationSet {
    pub variant: Variant,
    pub n: usize,
    pub relations: Vec<Relation>,
}

fn rel(label: RelationLabel, indices: Vec<usize>, left: Vec<Generator>, right: Vec<Generator>) -> Relation {
    Relation { label, indices, left: left.into(), right: right.into() }
}

/// The labelled relation list, ordered B1, B2, S1, S2, S3, L0, L1, L2, L3
/// with ascending indices inside each family.
pub fn relations_for(n: usize, variant: Variant) -> Result<RelationSet> {
    use Generator as G;
    use RelationLabel::*;
    if n < 2 {
        return Err(Error::InvalidParameter(format!("need n >= 2 strands, got {n}")));
    }
    let adjacent = 1..n - 1;
    let far_pairs = || (1..n).flat_map(move |i| (i + 2..n).map(move |j| (i, j)));
    let mut out = Vec::new();
    for i in adjacent.clone() {
        let (a, b) = (G::sigma(i), G::sigma(i + 1));
        out.push(rel(B1, vec![i], vec![a, b, a], vec![b, a, b]));
    }
    for (i, j) in far_pairs() {
        out.push(rel(B2, vec![i, j], vec![G::sigma(i), G::sigma(j)], vec![G::sigma(j), G::sigma(i)]));
    }
    for i in adjacent.clone() {
        let (a, b) = (G::s(i), G::s(i + 1));
        out.push(rel(S1, vec![i], vec![a, b, a], vec![b, a, b]));
    }
    for (i, j) in far_pairs() {
        out.push(rel(S2, vec![i, j], vec![G::s(i), G::s(j)], vec![G::s(j), G::s(i)]));
    }
    for i in 1..n {
        out.push(rel(S3, vec![i], vec![G::s(i), G::s(i)], vec![]));
    }
    for i in 1..n {
        for j in 1..n {
            if i.abs_diff(j) > 1 {
                out.push(rel(L0, vec![i, j], vec![G::sigma(i), G::s(j)], vec![G::s(j), G::sigma(i)]));
            }
        }
    }
    for i in adjacent.clone() {
        let (si, sj, a, b) = (G::s(i), G::s(i + 1), G::sigma(i), G::sigma(i + 1));
        out.push(rel(L1, vec![i], vec![si, sj, a], vec![b, si, sj]));
    }
    if matches!(variant, Variant::LB | Variant::SLB) {
        for i in adjacent.clone() {
            let (si, sj, a, b) = (G::s(i), G::s(i + 1), G::sigma(i), G::sigma(i + 1));
            out.push(rel(L2, vec![i], vec![a, b, si], vec![sj, a, b]));
        }
    }
    if matches!(variant, Variant::OLB | Variant::SLB) {
        for i in adjacent {
            let (si, sj, a, b) = (G::s(i), G::s(i + 1), G::sigma(i), G::sigma(i + 1));
            out.push(rel(L3, vec![i], vec![si, b, a], vec![b, a, sj]));
        }
    }
    Ok(RelationSet { variant, n, relations: out })
}

/// How a word is turned into a matrix product.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Convention {
    /// `w = g_1 g_2 ... g_k` maps to `M(g_1) M(g_2) ... M(g_k)`; the
    /// leftmost letter acts last on column vectors.
    #[default]
    Standard,
    /// The opposite product `M(g_k) ... M(g_1)`.
    Transposed,
}

/// Matrix images of `σ_i`, `σ_i^{-1}` and `s_i` for `i = 1..n-1`.
#[derive(Clone, Debug)]
pub struct ImageSet<R: Ring> {
    n: usize,
    dim: usize,
    ctx: R::Ctx,
    sigma: Vec<Matrix<R>>,
    sigma_inv: Vec<Matrix<R>>,
    s: Vec<Matrix<R>>,
}

impl<R: Ring> ImageSet<R> {
    /// Build from the images of `σ_i` and `s_i`; `σ_i^{-1}` is computed by
    /// exact inversion.
    pub fn new(sigma: Vec<Matrix<R>>, s: Vec<Matrix<R>>) -> Result<Self> {
        let inverses = sigma
            .iter()
            .enumerate()
            .map(|(k, m)| linalg::inverse(m).map_err(|_| Error::SingularImage(Generator::sigma(k + 1).to_string())))
            .collect::<Result<Vec<_>>>()?;
        Self::with_inverses(sigma, inverses, s)
    }

    /// Build with caller-supplied inverses (used over rings where exact
    /// inversion by elimination is unavailable, e.g. Laurent polynomials).
    pub fn with_inverses(sigma: Vec<Matrix<R>>, sigma_inv: Vec<Matrix<R>>, s: Vec<Matrix<R>>) -> Result<Self> {
        if sigma.len() != s.len() || sigma.len() != sigma_inv.len() {
            return Err(Error::InvalidParameter("need one σ, σ^-1 and s image per index".into()));
        }
        let Some(first) = sigma.first().or(s.first()) else {
            return Err(Error::InvalidParameter("empty image set".into()));
        };
        let dim = first.rows();
        let ctx = first.ctx().clone();
        for m in sigma.iter().chain(&sigma_inv).chain(&s) {
            if m.shape() != (dim, dim) {
                return Err(Error::DimensionMismatch { op: "image set", left: (dim, dim), right: m.shape() });
            }
        }
        for (k, (a, b)) in sigma.iter().zip(&sigma_inv).enumerate() {
            if !a.mul(b)?.is_identity() {
                return Err(Error::SingularImage(Generator::sigma(k + 1).to_string()));
            }
        }
        Ok(ImageSet { n: sigma.len() + 1, dim, ctx, sigma, sigma_inv, s })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ctx(&self) -> &R::Ctx {
        &self.ctx
    }

    pub fn get(&self, g: Generator) -> Result<&Matrix<R>> {
        if g.index == 0 || g.index >= self.n {
            return Err(Error::MissingImage(g.to_string()));
        }
        let k = g.index - 1;
        Ok(match (g.kind, g.exponent) {
            (GenKind::S, _) => &self.s[k],
            (GenKind::Sigma, 1) => &self.sigma[k],
            (GenKind::Sigma, _) => &self.sigma_inv[k],
        })
    }

    /// The images for the first `n - 1` strands' generators only.
    pub fn restrict(&self, n: usize) -> Result<Self> {
        if n < 2 || n > self.n {
            return Err(Error::InvalidParameter(format!("cannot restrict {} strands to {n}", self.n)));
        }
        Ok(ImageSet {
            n,
            dim: self.dim,
            ctx: self.ctx.clone(),
            sigma: self.sigma[..n - 1].to_vec(),
            sigma_inv: self.sigma_inv[..n - 1].to_vec(),
            s: self.s[..n - 1].to_vec(),
        })
    }
}

pub fn evaluate_word<R: Ring>(images: &ImageSet<R>, w: &GroupWord, convention: Convention) -> Result<Matrix<R>> {
    let mut acc = Matrix::identity(images.dim, images.ctx.clone());
    let letters: Box<dyn Iterator<Item = &Generator>> = match convention {
        Convention::Standard => Box::new(w.letters.iter()),
        Convention::Transposed => Box::new(w.letters.iter().rev()),
    };
    for g in letters {
        acc = acc.mul(images.get(*g)?)?;
    }
    Ok(acc)
}

/// Position and entries of the first disagreement between the two sides.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub row: usize,
    pub col: usize,
    pub left: serde_json::Value,
    pub right: serde_json::Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RelationResult {
    pub label: RelationLabel,
    pub indices: Vec<usize>,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub variant: Variant,
    pub n: usize,
    pub convention: Convention,
    pub results: Vec<RelationResult>,
    pub ok: bool,
}

impl Report {
    pub fn failures(&self) -> impl Iterator<Item = &RelationResult> {
        self.results.iter().filter(|r| !r.ok)
    }

    pub fn passed(&self, label: RelationLabel) -> bool {
        self.results.iter().filter(|r| r.label == label).all(|r| r.ok)
    }
}

/// Compare two matrices; `None` when equal.
pub fn first_difference<R: Ring>(a: &Matrix<R>, b: &Matrix<R>) -> Result<Option<Witness>> {
    let d = a.sub(b)?;
    Ok(d.first_nonzero().map(|(row, col)| Witness {
        row,
        col,
        left: a.get(row, col).to_json(),
        right: b.get(row, col).to_json(),
    }))
}

pub fn check_relations<R: Ring>(images: &ImageSet<R>, rels: &RelationSet, convention: Convention) -> Result<Report> {
    if images.n < rels.n {
        return Err(Error::MissingImage(Generator::sigma(rels.n - 1).to_string()));
    }
    let mut results = Vec::with_capacity(rels.relations.len());
    for r in &rels.relations {
        let lhs = evaluate_word(images, &r.left, convention)?;
        let rhs = evaluate_word(images, &r.right, convention)?;
        let witness = first_difference(&lhs, &rhs)?;
        results.push(RelationResult { label: r.label, indices: r.indices.clone(), ok: witness.is_none(), witness });
    }
    let ok = results.iter().all(|r| r.ok);
    Ok(Report { variant: rels.variant, n: rels.n, convention, results, ok })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{Rational, ZmInt};

    fn count(n: usize, v: Variant) -> usize {
        relations_for(n, v).unwrap().relations.len()
    }

    #[test]
    fn relation_counts() {
        assert_eq!(count(2, Variant::LB), 1);
        assert_eq!(count(3, Variant::LB), 6);
        assert_eq!(count(3, Variant::VB), 5);
        assert_eq!(count(3, Variant::SLB), 7);
        assert_eq!(count(3, Variant::OLB), 6);
        let labels: Vec<_> = relations_for(3, Variant::LB).unwrap().relations.iter().map(|r| r.label).collect();
        use RelationLabel::*;
        assert_eq!(labels, vec![B1, S1, S3, S3, L1, L2]);
        assert!(relations_for(1, Variant::LB).is_err());
    }

    #[test]
    fn counts_match_index_ranges() {
        for n in 2..8 {
            let k = n - 2;
            let far = (1..n).map(|i| (i + 2..n).count()).sum::<usize>();
            let l0 = 2 * far;
            let lb = k + far + k + far + (n - 1) + l0 + k + k;
            assert_eq!(count(n, Variant::LB), lb);
            assert_eq!(count(n, Variant::VB), lb - k);
            assert_eq!(count(n, Variant::SLB), lb + k);
            assert_eq!(count(n, Variant::OLB), lb);
        }
    }

    #[test]
    fn word_parsing_roundtrip() {
        let w: GroupWord = "sigma1 s2 sigma3^-1 σ2 s1^-1".parse().unwrap();
        assert_eq!(
            w.letters,
            vec![Generator::sigma(1), Generator::s(2), Generator::sigma_inv(3), Generator::sigma(2), Generator::s(1)]
        );
        assert_eq!(w.to_string().parse::<GroupWord>().unwrap(), w);
        assert_eq!("e".parse::<GroupWord>().unwrap(), GroupWord::identity());
        assert_eq!("".parse::<GroupWord>().unwrap(), GroupWord::identity());
        for bad in ["sigma0", "t1", "sigma", "s1^2", "sigma-1", "s 1"] {
            assert!(bad.parse::<GroupWord>().is_err(), "{bad}");
        }
    }

    #[test]
    fn affine_word_product() {
        let m = Matrix::<ZmInt>::from_i64_rows(&[&[0, 1], &[2, 4]], 5).unwrap();
        let p = Matrix::<ZmInt>::from_i64_rows(&[&[0, 1], &[1, 0]], 5).unwrap();
        let imgs = ImageSet::new(vec![m], vec![p]).unwrap();
        let w: GroupWord = "sigma1 s1".parse().unwrap();
        let expected = Matrix::<ZmInt>::from_i64_rows(&[&[1, 0], &[4, 2]], 5).unwrap();
        assert_eq!(evaluate_word(&imgs, &w, Convention::Standard).unwrap(), expected);
        assert!(evaluate_word(&imgs, &GroupWord::identity(), Convention::Standard).unwrap().is_identity());
        let ss: GroupWord = "s1 s1".parse().unwrap();
        assert!(evaluate_word(&imgs, &ss, Convention::Standard).unwrap().is_identity());
    }

    #[test]
    fn identity_images_pass_everything() {
        for n in 2..6 {
            let id = Matrix::<Rational>::identity(3, ());
            let imgs = ImageSet::new(vec![id.clone(); n - 1], vec![id; n - 1]).unwrap();
            for v in [Variant::LB, Variant::OLB, Variant::VB, Variant::SLB] {
                let rep = check_relations(&imgs, &relations_for(n, v).unwrap(), Convention::Standard).unwrap();
                assert!(rep.ok);
            }
        }
    }

    #[test]
    fn singular_sigma_is_rejected() {
        let z = Matrix::<Rational>::zeros(2, 2, ());
        let id = Matrix::<Rational>::identity(2, ());
        assert_eq!(ImageSet::new(vec![z], vec![id]).unwrap_err(), Error::SingularImage("sigma1".into()));
    }
}
