//! Localization of harmonic modules by `f_N`, compared with the shapes
//! predicted by removing a full column.

use serde::Serialize;

use super::branch::{harmonic_dim, is_e_null};
use super::hom::{hom_dim, ActionModule};
use crate::scalars::Field;
use crate::tensor::{f_operator, harmonic_module, localize, HarmonicLabel, Partition, TauRep};
use crate::Result;

/// The label of `f_N Y_λ^{μ̲}` carried to `n - N` strands, or `None` when
/// it vanishes. Needs `λ_N ≥ 1`; when the last row class has length one it
/// disappears, and survives only if its colours were symmetrised.
pub fn predicted_localization(colours: usize, label: &HarmonicLabel) -> Option<HarmonicLabel> {
    let lambda = &label.lambda;
    let smaller = lambda.minus_column(colours)?;
    let last_len = lambda.part(colours - 1);
    if last_len > 1 {
        return HarmonicLabel::new(smaller, label.mu.clone()).ok();
    }
    let last = label.mu.last()?;
    if last.part(1) > 0 {
        return None;
    }
    HarmonicLabel::new(smaller, label.mu[..label.mu.len() - 1].to_vec()).ok()
}

/// `dim f_N Y_λ`: the Young module of `λ - (1^N)`, or zero.
pub fn predicted_young_localization_dim(colours: usize, lambda: &Partition) -> u128 {
    match lambda.minus_column(colours) {
        Some(smaller) => harmonic_dim(&HarmonicLabel::trivial(smaller).expect("trivial label")),
        None => 0,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalizationRow {
    pub label: HarmonicLabel,
    pub dim: usize,
    pub e_null: bool,
    pub localized_dim: usize,
    pub predicted: Option<HarmonicLabel>,
    /// The localized module is isomorphic to the predicted one (or both
    /// vanish).
    pub matches: bool,
}

/// Localize every harmonic module on `n` strands by `f_N`.
pub fn localization_table<F: Field>(rep: &TauRep<F>) -> Result<Vec<LocalizationRow>> {
    let colours = rep.colours;
    let f = f_operator(colours, rep.n)?;
    let target = rep.with_n(rep.n - colours);
    let mut rows = Vec::new();
    for label in HarmonicLabel::all_at(colours, rep.n) {
        let module = harmonic_module(rep, &label)?;
        let e_null = is_e_null(&f, &module)?;
        let local = localize(&f, &module)?;
        let predicted = predicted_localization(colours, &label);
        let matches = match &predicted {
            None => local.dim() == 0,
            Some(p) => {
                let expected = harmonic_module(&target, p)?;
                if expected.dim() != local.dim() {
                    false
                } else {
                    let a = ActionModule::full(&local)?;
                    let b = ActionModule::full(&expected)?;
                    hom_dim(&a, &b)? == 1 && hom_dim(&b, &a)? == 1
                }
            }
        };
        rows.push(LocalizationRow { dim: module.dim(), e_null, localized_dim: local.dim(), predicted, matches, label });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Rational;

    fn label(lambda: &str, mu: &[&str]) -> HarmonicLabel {
        HarmonicLabel::new(lambda.parse().unwrap(), mu.iter().map(|m| m.parse().unwrap()).collect()).unwrap()
    }

    #[test]
    fn table_cases() {
        assert_eq!(predicted_localization(3, &label("(3,2,2)", &["(1)", "(2)"])), Some(label("(2,1,1)", &["(1)", "(2)"])));
        assert_eq!(predicted_localization(3, &label("(2,1,1)", &["(1)", "(2)"])), Some(label("(1)", &["(1)"])));
        assert_eq!(predicted_localization(3, &label("(2,1,1)", &["(1)", "(1,1)"])), None);
        assert_eq!(predicted_localization(3, &label("(3,1)", &["(1)", "(1)"])), None);
    }

    #[test]
    fn localization_matches_prediction() {
        for (colours, n) in [(2, 2), (2, 4), (3, 4), (3, 5)] {
            let rep = TauRep::x_form(colours, n, &Rational::integer(2)).unwrap();
            for row in localization_table(&rep).unwrap() {
                assert!(row.matches, "{}", row.label);
                assert_eq!(row.e_null, row.localized_dim == 0, "{}", row.label);
            }
        }
    }
}
