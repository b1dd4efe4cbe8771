//! Partitions, colour permutations and Young symmetrizers.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::scalars::{Rational, Ring};
use crate::{Error, Result};

/// An integer partition: positive parts in non-increasing order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        parts.retain(|&p| p > 0);
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidParameter(format!("parts {parts:?} are not non-increasing")));
        }
        Ok(Partition(parts))
    }

    /// Sort arbitrary non-negative counts into a partition.
    pub fn from_counts(counts: &[usize]) -> Self {
        let mut parts: Vec<usize> = counts.iter().copied().filter(|&c| c > 0).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The `i`-th part (0-based), zero beyond the length.
    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// Parts padded with zeros to length `n`.
    pub fn padded(&self, n: usize) -> Vec<usize> {
        (0..n.max(self.len())).map(|i| self.part(i)).collect()
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.part(0);
        Partition((0..cols).map(|c| self.0.iter().filter(|&&p| p > c).count()).collect())
    }

    /// Number of standard tableaux, by the hook length formula.
    pub fn dimension(&self) -> u64 {
        let conj = self.conjugate();
        let mut hooks: u128 = 1;
        for (i, &row) in self.0.iter().enumerate() {
            for j in 0..row {
                hooks *= (row - j + conj.part(j) - i - 1) as u128;
            }
        }
        (factorial(self.size()) / hooks) as u64
    }

    /// Rows from which a box can be removed (0-based), one per distinct
    /// row length, together with the number of rows of that length.
    pub fn removable_rows(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut i = 0;
        while i < self.len() {
            let mut j = i;
            while j + 1 < self.len() && self.0[j + 1] == self.0[i] {
                j += 1;
            }
            out.push((j, j - i + 1));
            i = j + 1;
        }
        out
    }

    /// Remove one box from row `row` (0-based).
    pub fn remove_box(&self, row: usize) -> Result<Partition> {
        let mut parts = self.0.clone();
        match parts.get_mut(row) {
            Some(p) if *p > 0 => *p -= 1,
            _ => return Err(Error::InvalidParameter(format!("no box in row {row} of {self}"))),
        }
        Partition::new(parts)
    }

    /// `λ - (1^k)`, or `None` if some of the first `k` parts are zero.
    pub fn minus_column(&self, k: usize) -> Option<Partition> {
        if self.len() != k {
            return None;
        }
        Some(Partition(self.0.iter().map(|p| p - 1).filter(|&p| p > 0).collect()))
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `2,1,1`, `(2,1,1)` or `()`.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
        if inner.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = inner
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad partition {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Partitions of `n` with at most `max_parts` parts, in decreasing
/// lexicographic order.
pub fn partitions(n: usize, max_parts: usize) -> Vec<Partition> {
    fn go(rest: usize, max_part: usize, slots: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        if slots == 0 {
            return;
        }
        for p in (1..=max_part.min(rest)).rev() {
            prefix.push(p);
            go(rest - p, p, slots - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, max_parts, &mut Vec::new(), &mut out);
    out
}

/// All orderings of `items`, in lexicographic order of positions.
pub fn permutations_of<T: Clone>(items: &[T]) -> Vec<Vec<T>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations_of(&rest) {
            tail.insert(0, head.clone());
            out.push(tail);
        }
    }
    out
}

/// Parity of the permutation `p` of `0..p.len()`, as `±1`.
pub fn sign_of(p: &[usize]) -> i64 {
    let mut seen = vec![false; p.len()];
    let mut sign = 1;
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = p[i];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// A permutation of the colours `1..=N`, stored as the image of each colour.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColourPerm(Vec<u8>);

impl ColourPerm {
    pub fn identity(colours: usize) -> Self {
        ColourPerm((1..=colours as u8).collect())
    }

    pub fn from_images(images: Vec<u8>) -> Result<Self> {
        let mut sorted = images.clone();
        sorted.sort_unstable();
        if sorted.iter().enumerate().any(|(i, &c)| c as usize != i + 1) {
            return Err(Error::InvalidParameter(format!("{images:?} is not a permutation of 1..={}", images.len())));
        }
        Ok(ColourPerm(images))
    }

    pub fn colours(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, colour: u8) -> u8 {
        self.0[colour as usize - 1]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &ColourPerm) -> ColourPerm {
        ColourPerm(other.0.iter().map(|&c| self.apply(c)).collect())
    }

    pub fn images(&self) -> &[u8] {
        &self.0
    }

    pub fn sign(&self) -> i64 {
        let p: Vec<usize> = self.0.iter().map(|&c| c as usize - 1).collect();
        sign_of(&p)
    }
}

/// An element of the rational group algebra of the colour permutations.
#[derive(Clone, Debug, PartialEq)]
pub struct ColourAlgebraElement {
    colours: usize,
    terms: BTreeMap<ColourPerm, Rational>,
}

impl ColourAlgebraElement {
    pub fn identity(colours: usize) -> Self {
        ColourAlgebraElement { colours, terms: BTreeMap::from([(ColourPerm::identity(colours), Rational::one())]) }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ColourPerm, &Rational)> {
        self.terms.iter()
    }

    /// Product in the group algebra, where `a·b` acts as `a` after `b`.
    pub fn mul(&self, rhs: &ColourAlgebraElement) -> ColourAlgebraElement {
        let mut terms: BTreeMap<ColourPerm, Rational> = BTreeMap::new();
        for (p, a) in &self.terms {
            for (q, b) in &rhs.terms {
                let e = terms.entry(p.compose(q)).or_insert_with(Rational::zero);
                *e = &*e + &(a * b);
            }
        }
        terms.retain(|_, c| !c.is_zero());
        ColourAlgebraElement { colours: self.colours, terms }
    }

    pub fn scale(&self, c: &Rational) -> ColourAlgebraElement {
        let mut terms: BTreeMap<_, _> = self.terms.iter().map(|(p, a)| (p.clone(), a * c)).collect();
        terms.retain(|_, a: &mut Rational| !a.is_zero());
        ColourAlgebraElement { colours: self.colours, terms }
    }

    /// The primitive idempotent `(f^μ / k!) Σ_{q ∈ C} Σ_{p ∈ R} sgn(q) q∘p`
    /// for the tableau of shape `μ` filled row by row with `colours_used`.
    pub fn young_idempotent(colours: usize, shape: &Partition, colours_used: &[u8]) -> Result<Self> {
        if shape.size() != colours_used.len() {
            return Err(Error::InvalidParameter(format!("shape {shape} does not fit {} colours", colours_used.len())));
        }
        let mut rows: Vec<Vec<u8>> = Vec::new();
        let mut it = colours_used.iter().copied();
        for &len in shape.parts() {
            rows.push(it.by_ref().take(len).collect());
        }
        let cols: Vec<Vec<u8>> =
            (0..shape.part(0)).map(|c| rows.iter().filter_map(|r| r.get(c).copied()).collect()).collect();
        let row_group = subgroup_product(colours, &rows, false);
        let col_group = subgroup_product(colours, &cols, true);
        let k = shape.size();
        let norm = Rational::new(shape.dimension() as i64, factorial(k) as i64);
        Ok(col_group.mul(&row_group).scale(&norm))
    }
}

/// `Σ_{g ∈ S_{b_1} × S_{b_2} × …}` (signed if `signed`) over the given
/// disjoint blocks of colours.
fn subgroup_product(colours: usize, blocks: &[Vec<u8>], signed: bool) -> ColourAlgebraElement {
    let mut acc = ColourAlgebraElement::identity(colours);
    for block in blocks {
        let mut terms = BTreeMap::new();
        for image in permutations_of(block) {
            let mut full = ColourPerm::identity(colours).0;
            for (&from, &to) in block.iter().zip(&image) {
                full[from as usize - 1] = to;
            }
            let perm = ColourPerm(full);
            let c = if signed { Rational::integer(perm.sign()) } else { Rational::one() };
            terms.insert(perm, c);
        }
        acc = acc.mul(&ColourAlgebraElement { colours, terms });
    }
    acc
}
