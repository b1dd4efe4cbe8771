//! Restriction from `n` to `n - 1` strands, and the graph it induces on
//! harmonic labels.

use std::collections::BTreeMap;

use serde::Serialize;

use super::hom::{end_dim, hom_dim, ActionModule};
use crate::scalars::{random_primes, Field, Rational, ZmInt};
use crate::tensor::{factorial, harmonic_module, row_classes, FOperator, HarmonicLabel, ModuleSpec, Partition, TauRep};
use crate::{Error, Result};

/// Whether `f_N` annihilates every vector of the module.
pub fn is_e_null<F: Field>(f: &FOperator, m: &ModuleSpec<F>) -> Result<bool> {
    for b in m.basis().basis() {
        if f.apply_block(&m.block, b)?.iter().any(|x| !x.is_zero()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `dim Y_λ^{μ̲}`: the colour symmetry group acts freely on the block, so
/// each orbit contributes `Π f^{μ_r}` dimensions.
pub fn harmonic_dim(label: &HarmonicLabel) -> u128 {
    let block = factorial(label.lambda.size()) / label.lambda.parts().iter().map(|&p| factorial(p)).product::<u128>();
    let group: u128 = label.mu.iter().map(|m| factorial(m.size())).product();
    block / group * label.multiplicity() as u128
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BranchSummand {
    pub label: HarmonicLabel,
    pub multiplicity: usize,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BranchReport {
    pub source: HarmonicLabel,
    pub dim: usize,
    pub summands: Vec<BranchSummand>,
    /// `rational`, or the primes used.
    pub field: String,
}

/// Labels on `n - 1` strands whose shape is `λ` minus one box.
fn candidates(colours: usize, lambda: &Partition) -> Result<Vec<HarmonicLabel>> {
    let mut out = Vec::new();
    for (row, _) in lambda.removable_rows() {
        let smaller = lambda.remove_box(row)?;
        if smaller.len() <= colours {
            out.extend(HarmonicLabel::all_for(&smaller));
        }
    }
    Ok(out)
}

/// Decompose `↓Y_λ^{μ̲}` by intertwiner counts against every harmonic
/// module whose shape is one box smaller. Multiplicities are
/// `dim Hom(C, ↓M) / dim End(C)`; the dimensions must add up.
pub fn restrict_and_branch<F: Field>(rep: &TauRep<F>, label: &HarmonicLabel) -> Result<BranchReport> {
    if rep.n == 0 {
        return Err(Error::InvalidParameter("nothing to restrict on zero strands".into()));
    }
    let source = harmonic_module(rep, label)?;
    let restricted = ActionModule::full(&source)?.restrict()?;
    let small = rep.with_n(rep.n - 1);
    let mut summands = Vec::new();
    let mut covered = 0;
    for cand in candidates(rep.colours, &label.lambda)? {
        let c = ActionModule::full(&harmonic_module(&small, &cand)?)?;
        if c.dim == 0 {
            continue;
        }
        let hom = hom_dim(&c, &restricted)?;
        if hom == 0 {
            continue;
        }
        let end = end_dim(&c)?;
        let multiplicity = hom / end;
        covered += multiplicity * c.dim;
        summands.push(BranchSummand { label: cand, multiplicity, dim: c.dim });
    }
    if covered != source.dim() {
        return Err(Error::IncompleteMatch { residual: source.dim().abs_diff(covered) });
    }
    Ok(BranchReport { source: label.clone(), dim: source.dim(), summands, field: "rational".into() })
}

/// Modules up to this dimension are branched over the rationals.
pub const RATIONAL_BRANCH_LIMIT: u128 = 100;

/// Branch exactly when the module is small, otherwise modulo two seeded
/// random primes whose answers must agree.
pub fn branch_certified(colours: usize, n: usize, x: &Rational, label: &HarmonicLabel, seed: u64) -> Result<BranchReport> {
    if harmonic_dim(label) <= RATIONAL_BRANCH_LIMIT {
        return restrict_and_branch(&TauRep::x_form(colours, n, x)?, label);
    }
    let primes = random_primes(2, seed);
    let mut reports = Vec::new();
    for &p in &primes {
        let rep = TauRep::<ZmInt>::in_field(colours, n, x, &p)?;
        reports.push(restrict_and_branch(&rep, label)?);
    }
    if reports[0].summands != reports[1].summands {
        return Err(Error::InvalidParameter(format!(
            "branching of {label} differs modulo {} and {}",
            primes[0], primes[1]
        )));
    }
    let mut report = reports.swap_remove(0);
    report.field = format!("zp:{},{}", primes[0], primes[1]);
    Ok(report)
}

/// Expected branching by moving one box: a box leaves `μ_r` (the class of
/// rows of length `ℓ`) and joins the class of rows of length `ℓ - 1`.
pub fn predicted_branching(label: &HarmonicLabel) -> BTreeMap<HarmonicLabel, usize> {
    let lengths: Vec<usize> = row_classes(&label.lambda).iter().map(|&(l, _)| l).collect();
    let classes: BTreeMap<usize, Partition> = lengths.iter().copied().zip(label.mu.iter().cloned()).collect();
    let mut out = BTreeMap::new();
    for (&len, mu) in &classes {
        for (row, _) in mu.removable_rows() {
            let mut next = classes.clone();
            let shrunk = mu.remove_box(row).expect("removable row");
            if shrunk.is_empty() {
                next.remove(&len);
            } else {
                next.insert(len, shrunk);
            }
            if len == 1 {
                *out.entry(label_from_classes(&next)).or_insert(0) += 1;
                continue;
            }
            let below = next.get(&(len - 1)).cloned().unwrap_or_else(Partition::empty);
            for grown in addable(&below) {
                let mut with = next.clone();
                with.insert(len - 1, grown);
                *out.entry(label_from_classes(&with)).or_insert(0) += 1;
            }
        }
    }
    out
}

fn addable(p: &Partition) -> Vec<Partition> {
    (0..=p.len())
        .filter(|&i| i == 0 || p.part(i - 1) > p.part(i))
        .map(|i| {
            let mut parts = p.padded(p.len() + 1);
            parts[i] += 1;
            Partition::new(parts).expect("adding at a corner keeps the order")
        })
        .collect()
}

fn label_from_classes(classes: &BTreeMap<usize, Partition>) -> HarmonicLabel {
    let mut rows = Vec::new();
    let mut mu = Vec::new();
    for (&len, m) in classes.iter().rev() {
        rows.extend(std::iter::repeat(len).take(m.size()));
        mu.push(m.clone());
    }
    HarmonicLabel::new(Partition::new(rows).expect("sorted"), mu).expect("sizes match")
}

#[derive(Clone, Debug, Serialize)]
pub struct GraphNode {
    pub label: HarmonicLabel,
    pub n: usize,
    pub dim: usize,
    /// Consecutive row differences `λ_i - λ_{i+1}` over `N` rows.
    pub coords: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphEdge {
    pub from: usize,
    pub to: usize,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct BranchingGraph {
    pub colours: usize,
    pub nodes: Vec<GraphNode>,
    pub edges: Vec<GraphEdge>,
}

pub fn weight_coords(colours: usize, lambda: &Partition) -> Vec<i64> {
    let p = lambda.padded(colours);
    p.windows(2).map(|w| w[0] as i64 - w[1] as i64).collect()
}

/// Harmonic labels on `1..=n_max` strands, with an edge from each module
/// to every summand of its restriction.
pub fn branching_graph(colours: usize, n_max: usize, x: &Rational, seed: u64) -> Result<BranchingGraph> {
    let mut nodes = Vec::new();
    let mut index: BTreeMap<(usize, HarmonicLabel), usize> = BTreeMap::new();
    let mut edges = Vec::new();
    for n in 1..=n_max {
        for label in HarmonicLabel::all_at(colours, n) {
            let id = nodes.len();
            index.insert((n, label.clone()), id);
            nodes.push(GraphNode {
                coords: weight_coords(colours, &label.lambda),
                dim: harmonic_dim(&label) as usize,
                label: label.clone(),
                n,
            });
            if n == 1 {
                continue;
            }
            let report = branch_certified(colours, n, x, &label, seed)?;
            for s in report.summands {
                edges.push(GraphEdge { from: id, to: index[&(n - 1, s.label)], multiplicity: s.multiplicity });
            }
        }
    }
    Ok(BranchingGraph { colours, nodes, edges })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::{f_operator, harmonic_decompose, ChargeBlock};

    fn label(lambda: &str, mu: &[&str]) -> HarmonicLabel {
        HarmonicLabel::new(lambda.parse().unwrap(), mu.iter().map(|m| m.parse().unwrap()).collect()).unwrap()
    }

    fn two() -> Rational {
        Rational::integer(2)
    }

    #[test]
    fn dimension_formula_matches_construction() {
        for (colours, n) in [(2, 4), (3, 4), (3, 5)] {
            let rep = TauRep::x_form(colours, n, &two()).unwrap();
            for l in HarmonicLabel::all_at(colours, n) {
                assert_eq!(harmonic_dim(&l), harmonic_module(&rep, &l).unwrap().dim() as u128, "{l}");
            }
        }
    }

    #[test]
    fn small_branching_example() {
        let l = label("(2,1,1)", &["(1)", "(2)"]);
        let r = restrict_and_branch(&TauRep::x_form(3, 4, &two()).unwrap(), &l).unwrap();
        let got: BTreeMap<_, _> = r.summands.iter().map(|s| (s.label.clone(), s.multiplicity)).collect();
        assert_eq!(got, predicted_branching(&l));
        assert_eq!(got.len(), 3);
        assert_eq!(r.dim, 6);
    }

    #[test]
    fn computed_branching_matches_box_moves() {
        for (colours, n) in [(2, 3), (2, 4), (3, 3), (3, 4)] {
            let rep = TauRep::x_form(colours, n, &two()).unwrap();
            for l in HarmonicLabel::all_at(colours, n) {
                let r = restrict_and_branch(&rep, &l).unwrap();
                let got: BTreeMap<_, _> = r.summands.iter().map(|s| (s.label.clone(), s.multiplicity)).collect();
                assert_eq!(got, predicted_branching(&l), "{l}");
            }
        }
    }

    #[test]
    fn modular_branching_agrees() {
        let l = label("(2,2)", &["(1,1)"]);
        let exact = restrict_and_branch(&TauRep::x_form(2, 4, &two()).unwrap(), &l).unwrap();
        let p = random_primes(1, 3)[0];
        let modular = restrict_and_branch(&TauRep::<ZmInt>::in_field(2, 4, &two(), &p).unwrap(), &l).unwrap();
        assert_eq!(exact.summands, modular.summands);
    }

    #[test]
    fn antisymmetric_pair_is_killed() {
        let f = f_operator(2, 2).unwrap();
        let rep = TauRep::x_form(2, 2, &two()).unwrap();
        let block = std::sync::Arc::new(ChargeBlock::young(2, &"(1,1)".parse().unwrap()).unwrap());
        let nulls: Vec<bool> =
            harmonic_decompose(&rep, &block).unwrap().iter().map(|m| is_e_null(&f, m).unwrap()).collect();
        // (2) then (1,1): the symmetric line survives f_2, the antisymmetric one does not
        assert_eq!(nulls, vec![false, true]);
    }

    #[test]
    fn graph_on_two_strands() {
        let g = branching_graph(2, 2, &two(), 0).unwrap();
        assert_eq!(g.nodes.len(), 4);
        assert_eq!(g.edges.len(), 3);
        assert!(g.edges.iter().all(|e| e.to == 0 && e.multiplicity == 1));
        assert_eq!(g.nodes[1].coords, vec![2]);
    }
}
