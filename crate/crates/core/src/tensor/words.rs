//! Colour words and the fixed-charge blocks they span.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::young::{ColourPerm, Partition};
use crate::{Error, Result};

/// A basis tensor `e_{i_1} ⊗ … ⊗ e_{i_n}`, written `|i_1 … i_n⟩`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColorWord(Vec<u8>);

impl ColorWord {
    pub fn new(letters: Vec<u8>) -> Result<Self> {
        if letters.contains(&0) {
            return Err(Error::InvalidParameter("colours are numbered from 1".into()));
        }
        Ok(ColorWord(letters))
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Exchange the letters at 1-based positions `j` and `j + 1`.
    pub fn swapped(&self, j: usize) -> ColorWord {
        let mut v = self.0.clone();
        v.swap(j - 1, j);
        ColorWord(v)
    }

    /// Multiplicity of each colour `1..=colours`.
    pub fn content(&self, colours: usize) -> Vec<usize> {
        let mut c = vec![0; colours];
        for &l in &self.0 {
            c[l as usize - 1] += 1;
        }
        c
    }

    pub fn split_at(&self, k: usize) -> (ColorWord, ColorWord) {
        (ColorWord(self.0[..k].to_vec()), ColorWord(self.0[k..].to_vec()))
    }

    pub fn concat(&self, other: &ColorWord) -> ColorWord {
        ColorWord([self.0.as_slice(), other.0.as_slice()].concat())
    }
}

/// Relabel every letter by `pi` (the colour permutation acting on the right).
pub fn right_color_action(w: &ColorWord, pi: &ColourPerm) -> ColorWord {
    ColorWord(w.0.iter().map(|&c| pi.apply(c)).collect())
}

impl fmt::Display for ColorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|&c| c < 10) {
            for c in &self.0 {
                write!(f, "{c}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(u8::to_string).collect();
            write!(f, "{}", parts.join("."))
        }
    }
}

impl fmt::Debug for ColorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|{self}⟩")
    }
}

impl FromStr for ColorWord {
    type Err = Error;

    /// Digits (`"1123"`) or dot-separated colours (`"1.12.3"`).
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad colour word {s:?}"));
        let letters: Vec<u8> = if s.contains('.') {
            s.split('.').map(|p| p.parse::<u8>().map_err(|_| bad())).collect::<Result<_>>()?
        } else {
            s.chars().map(|c| c.to_digit(10).map(|d| d as u8).ok_or_else(bad)).collect::<Result<_>>()?
        };
        ColorWord::new(letters).map_err(|_| bad())
    }
}

impl Serialize for ColorWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// All words with a fixed colour multiplicity vector, in lexicographic order.
#[derive(Clone, Debug)]
pub struct ChargeBlock {
    colours: usize,
    composition: Vec<usize>,
    words: Vec<ColorWord>,
    index: HashMap<ColorWord, usize>,
}

impl ChargeBlock {
    pub fn new(composition: Vec<usize>) -> Result<Self> {
        let colours = composition.len();
        if colours == 0 || colours > u8::MAX as usize {
            return Err(Error::InvalidParameter(format!("need 1..=255 colours, got {colours}")));
        }
        let n: usize = composition.iter().sum();
        let mut words = Vec::new();
        let mut remaining = composition.clone();
        let mut prefix = Vec::with_capacity(n);
        fill(&mut remaining, &mut prefix, n, &mut words);
        let index = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        Ok(ChargeBlock { colours, composition, words, index })
    }

    /// The block whose content is `λ` in sorted order: colour `i` appears
    /// `λ_i` times.
    pub fn young(colours: usize, lambda: &Partition) -> Result<Self> {
        if lambda.len() > colours {
            return Err(Error::InvalidParameter(format!("{lambda} has more than {colours} parts")));
        }
        ChargeBlock::new(lambda.padded(colours))
    }

    pub fn colours(&self) -> usize {
        self.colours
    }

    pub fn n(&self) -> usize {
        self.composition.iter().sum()
    }

    pub fn composition(&self) -> &[usize] {
        &self.composition
    }

    pub fn partition(&self) -> Partition {
        Partition::from_counts(&self.composition)
    }

    pub fn is_sorted(&self) -> bool {
        self.composition.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn dim(&self) -> usize {
        self.words.len()
    }

    pub fn words(&self) -> &[ColorWord] {
        &self.words
    }

    pub fn word(&self, i: usize) -> &ColorWord {
        &self.words[i]
    }

    pub fn index_of(&self, w: &ColorWord) -> Option<usize> {
        self.index.get(w).copied()
    }
}

fn fill(remaining: &mut [usize], prefix: &mut Vec<u8>, n: usize, out: &mut Vec<ColorWord>) {
    if prefix.len() == n {
        out.push(ColorWord(prefix.clone()));
        return;
    }
    for c in 0..remaining.len() {
        if remaining[c] > 0 {
            remaining[c] -= 1;
            prefix.push(c as u8 + 1);
            fill(remaining, prefix, n, out);
            prefix.pop();
            remaining[c] += 1;
        }
    }
}

/// The splitting of `(C^N)^{⊗n}` into fixed-charge blocks.
#[derive(Clone, Debug)]
pub struct ChargeDecomposition {
    pub colours: usize,
    pub n: usize,
    pub blocks: BTreeMap<Vec<usize>, ChargeBlock>,
    /// `m_λ`: how many compositions sort to each partition.
    pub multiplicities: BTreeMap<Partition, usize>,
}

pub fn charge_blocks(colours: usize, n: usize) -> Result<ChargeDecomposition> {
    if colours == 0 {
        return Err(Error::InvalidParameter("need at least one colour".into()));
    }
    let mut blocks = BTreeMap::new();
    let mut multiplicities = BTreeMap::new();
    for comp in compositions(n, colours) {
        *multiplicities.entry(Partition::from_counts(&comp)).or_insert(0) += 1;
        blocks.insert(comp.clone(), ChargeBlock::new(comp)?);
    }
    Ok(ChargeDecomposition { colours, n, blocks, multiplicities })
}

/// Weak compositions of `n` into `parts` parts.
pub fn compositions(n: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 1 {
        return vec![vec![n]];
    }
    let mut out = Vec::new();
    for first in (0..=n).rev() {
        for mut rest in compositions(n - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn multinomial(comp: &[usize]) -> usize {
        let n: usize = comp.iter().sum();
        let mut r: u128 = (1..=n as u128).product();
        for &k in comp {
            r /= (1..=k as u128).product::<u128>();
        }
        r as usize
    }

    #[test]
    fn block_of_two_one() {
        let b = ChargeBlock::young(2, &"(2,1)".parse().unwrap()).unwrap();
        let words: Vec<String> = b.words().iter().map(|w| w.to_string()).collect();
        assert_eq!(words, vec!["112", "121", "211"]);
        assert_eq!(b.index_of(&"121".parse().unwrap()), Some(1));
    }

    #[test]
    fn blocks_cover_tensor_power() {
        for colours in 1..=4 {
            for n in 0..=6 {
                let dec = charge_blocks(colours, n).unwrap();
                let total: usize = dec.blocks.values().map(ChargeBlock::dim).sum();
                assert_eq!(total, colours.pow(n as u32));
                for (comp, b) in &dec.blocks {
                    assert_eq!(b.dim(), multinomial(comp));
                    assert!(b.words().windows(2).all(|w| w[0] < w[1]));
                }
            }
        }
        let dec = charge_blocks(2, 3).unwrap();
        assert_eq!(dec.multiplicities[&"(2,1)".parse::<Partition>().unwrap()], 2);
    }

    #[test]
    fn weighted_sum_of_young_dimensions() {
        let dec = charge_blocks(3, 4).unwrap();
        let total: usize = dec
            .multiplicities
            .iter()
            .map(|(l, m)| m * ChargeBlock::young(3, l).unwrap().dim())
            .sum();
        assert_eq!(total, 81);
    }

    #[test]
    fn relabelling() {
        let w: ColorWord = "112".parse().unwrap();
        let pi = ColourPerm::from_images(vec![2, 1, 3]).unwrap();
        assert_eq!(right_color_action(&w, &pi).to_string(), "221");
        assert_eq!(right_color_action(&w, &ColourPerm::identity(3)), w);
        assert_eq!("1.12.3".parse::<ColorWord>().unwrap().letters(), &[1, 12, 3]);
        assert!("10".parse::<ColorWord>().is_err());
    }
}
