//! Young modules, their harmonic summands, and localization by `f_N`.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::rep::{FOperator, TauRep};
use super::words::{right_color_action, ChargeBlock, ColorWord};
use super::young::{partitions, ColourAlgebraElement, Partition};
use crate::presentations::Generator;
use crate::scalars::linalg::RowSpace;
use crate::scalars::{Field, Matrix};
use crate::{Error, Result};

/// `Y_λ^{μ̲}`: one partition per distinct nonzero row length of `λ`,
/// ordered from the longest rows to the shortest. The `i`-th component
/// is a partition of the number of rows of the `i`-th length.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct HarmonicLabel {
    pub lambda: Partition,
    pub mu: Vec<Partition>,
}

/// `(row length, number of rows)` for each distinct nonzero row length,
/// longest first.
pub fn row_classes(lambda: &Partition) -> Vec<(usize, usize)> {
    lambda.removable_rows().into_iter().map(|(last, count)| (lambda.part(last), count)).collect()
}

impl HarmonicLabel {
    pub fn new(lambda: Partition, mu: Vec<Partition>) -> Result<Self> {
        let classes = row_classes(&lambda);
        if classes.len() != mu.len() || classes.iter().zip(&mu).any(|((_, k), m)| m.size() != *k) {
            return Err(Error::InvalidParameter(format!(
                "component sizes of {mu:?} do not match the row multiplicities of {lambda}"
            )));
        }
        Ok(HarmonicLabel { lambda, mu })
    }

    /// The label of a Young module with pairwise distinct row lengths.
    pub fn trivial(lambda: Partition) -> Result<Self> {
        let mu = row_classes(&lambda).iter().map(|&(_, k)| Partition::new(vec![k]).expect("single part")).collect();
        HarmonicLabel::new(lambda, mu)
    }

    /// `Λ_λ`: every tuple of partitions of the row multiplicities.
    pub fn all_for(lambda: &Partition) -> Vec<HarmonicLabel> {
        let mut out: Vec<Vec<Partition>> = vec![Vec::new()];
        for (_, k) in row_classes(lambda) {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    partitions(k, k).into_iter().map(move |p| {
                        let mut next = prefix.clone();
                        next.push(p);
                        next
                    })
                })
                .collect();
        }
        out.into_iter().map(|mu| HarmonicLabel { lambda: lambda.clone(), mu }).collect()
    }

    /// Harmonic labels for every partition of `n` with at most `colours`
    /// parts, partitions in decreasing order.
    pub fn all_at(colours: usize, n: usize) -> Vec<HarmonicLabel> {
        partitions(n, colours).iter().flat_map(HarmonicLabel::all_for).collect()
    }

    /// `dim Δ_{μ̲}`: how many copies of `Y_λ^{μ̲}` occur in `Y_λ`.
    pub fn multiplicity(&self) -> u64 {
        self.mu.iter().map(Partition::dimension).product()
    }

    /// Whether the colour symmetry group of `λ` is trivial.
    pub fn is_young(&self) -> bool {
        self.mu.iter().all(|m| m.size() == 1)
    }

    /// The colours (1-based) of each row-length class in the sorted-content
    /// block, in label order.
    pub fn colour_classes(&self) -> Vec<Vec<u8>> {
        let mut out = Vec::new();
        let mut next = 1u8;
        for (_, k) in row_classes(&self.lambda) {
            out.push((next..next + k as u8).collect());
            next += k as u8;
        }
        out
    }

    /// The primitive idempotent of the colour symmetry group selecting
    /// this label.
    pub fn idempotent(&self, colours: usize) -> Result<ColourAlgebraElement> {
        let mut e = ColourAlgebraElement::identity(colours);
        for (shape, cs) in self.mu.iter().zip(self.colour_classes()) {
            e = e.mul(&ColourAlgebraElement::young_idempotent(colours, shape, &cs)?);
        }
        Ok(e)
    }
}

impl fmt::Display for HarmonicLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Y_{}", self.lambda)?;
        if !self.is_young() {
            let parts: Vec<String> = self.mu.iter().map(Partition::to_string).collect();
            write!(f, "^({})", parts.join(","))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ModuleLabel {
    Young { lambda: Partition },
    Harmonic(HarmonicLabel),
    /// The image of a module under `f_N`, carried to `n - N` strands.
    Localized { from: Box<ModuleLabel>, colours: usize },
    Restricted { from: Box<ModuleLabel> },
}

impl fmt::Display for ModuleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleLabel::Young { lambda } => write!(f, "Y_{lambda}"),
            ModuleLabel::Harmonic(h) => write!(f, "{h}"),
            ModuleLabel::Localized { from, colours } => write!(f, "f_{colours}·{from}"),
            ModuleLabel::Restricted { from } => write!(f, "↓{from}"),
        }
    }
}

/// A submodule of one charge block, given by a basis kept in reduced
/// echelon form (coordinates of a member are its entries at the pivots).
#[derive(Clone, Debug)]
pub struct ModuleSpec<F: Field> {
    pub rep: TauRep<F>,
    pub block: Arc<ChargeBlock>,
    pub label: ModuleLabel,
    /// The right colour idempotent cutting the module out of the block,
    /// when there is one.
    pub idempotent: Option<ColourAlgebraElement>,
    basis: RowSpace<F>,
}

impl<F: Field> ModuleSpec<F> {
    pub fn from_basis(
        rep: TauRep<F>,
        block: Arc<ChargeBlock>,
        label: ModuleLabel,
        idempotent: Option<ColourAlgebraElement>,
        basis: RowSpace<F>,
    ) -> Result<Self> {
        if basis.width() != block.dim() || rep.n != block.n() || rep.colours != block.colours() {
            return Err(Error::DimensionMismatch {
                op: "module spec",
                left: (block.n(), block.dim()),
                right: (rep.n, basis.width()),
            });
        }
        Ok(ModuleSpec { rep, block, label, idempotent, basis })
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn n(&self) -> usize {
        self.rep.n
    }

    pub fn basis(&self) -> &RowSpace<F> {
        &self.basis
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.basis.contains(v)
    }

    /// The idempotent as a matrix on the block (identity for a full Young
    /// module).
    pub fn projector_matrix(&self) -> Result<Matrix<F>> {
        let d = self.block.dim();
        let ctx = self.rep.ctx();
        let mut m = Matrix::zeros(d, d, ctx.clone());
        for k in 0..d {
            let mut e = vec![F::zero(&ctx); d];
            e[k] = F::one(&ctx);
            let col = match &self.idempotent {
                Some(idem) => apply_idempotent(&self.block, idem, &e, &ctx)?,
                None => e,
            };
            for (r, x) in col.into_iter().enumerate() {
                m.set(r, k, x);
            }
        }
        Ok(m)
    }

    /// Basis vectors as sparse `word → coefficient` lists.
    pub fn sparse_basis(&self) -> Vec<Vec<(ColorWord, F)>> {
        self.basis
            .basis()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(k, x)| (self.block.word(k).clone(), x.clone()))
                    .collect()
            })
            .collect()
    }

    /// The action of `g` on the module, in the echelon basis.
    pub fn generator_matrix(&self, g: Generator) -> Result<Matrix<F>> {
        let op = self.rep.block_op(&self.block, g)?;
        let rows: Vec<Vec<F>> = self.basis.basis().map(|b| op.apply(b)).collect();
        let d = self.dim();
        let mut m = Matrix::zeros(d, d, self.rep.ctx());
        for (col, image) in rows.iter().enumerate() {
            let coords = self.basis.coordinates(image).ok_or_else(|| {
                Error::InvalidParameter(format!("{} is not invariant under {g}", self.label))
            })?;
            for (row, x) in coords.into_iter().enumerate() {
                m.set(row, col, x);
            }
        }
        Ok(m)
    }
}

fn apply_idempotent<F: Field>(
    block: &ChargeBlock,
    e: &ColourAlgebraElement,
    v: &[F],
    ctx: &F::Ctx,
) -> Result<Vec<F>> {
    let mut out = vec![F::zero(ctx); v.len()];
    let terms: Vec<(_, F)> =
        e.terms().map(|(p, c)| Ok((p.clone(), F::from_rational(c, ctx)?))).collect::<Result<_>>()?;
    for (k, x) in v.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (perm, c) in &terms {
            let t = block
                .index_of(&right_color_action(block.word(k), perm))
                .ok_or_else(|| Error::InvalidParameter("colour permutation leaves the block".into()))?;
            out[t] = out[t].plus(&x.times(c));
        }
    }
    Ok(out)
}

/// The full Young module `Y_λ` on its sorted-content block.
pub fn young_module<F: Field>(rep: &TauRep<F>, lambda: &Partition) -> Result<ModuleSpec<F>> {
    check_shape(rep, lambda)?;
    let block = Arc::new(ChargeBlock::young(rep.colours, lambda)?);
    let ctx = rep.ctx();
    let mut basis = RowSpace::new(block.dim(), ctx.clone());
    for k in 0..block.dim() {
        let mut e = vec![F::zero(&ctx); block.dim()];
        e[k] = F::one(&ctx);
        basis.insert(&e)?;
    }
    ModuleSpec::from_basis(rep.clone(), block, ModuleLabel::Young { lambda: lambda.clone() }, None, basis)
}

fn check_shape<F: Field>(rep: &TauRep<F>, lambda: &Partition) -> Result<()> {
    if lambda.size() != rep.n || lambda.len() > rep.colours {
        return Err(Error::InvalidParameter(format!(
            "{lambda} is not a partition of {} with at most {} parts",
            rep.n, rep.colours
        )));
    }
    Ok(())
}

/// `Y_λ^{μ̲}` as the image of its colour idempotent acting on the right.
pub fn harmonic_module<F: Field>(rep: &TauRep<F>, label: &HarmonicLabel) -> Result<ModuleSpec<F>> {
    check_shape(rep, &label.lambda)?;
    let block = Arc::new(ChargeBlock::young(rep.colours, &label.lambda)?);
    harmonic_on_block(rep, block, label)
}

fn harmonic_on_block<F: Field>(
    rep: &TauRep<F>,
    block: Arc<ChargeBlock>,
    label: &HarmonicLabel,
) -> Result<ModuleSpec<F>> {
    let ctx = rep.ctx();
    let idem = label.idempotent(rep.colours)?;
    let mut basis = RowSpace::new(block.dim(), ctx.clone());
    for k in 0..block.dim() {
        let mut e = vec![F::zero(&ctx); block.dim()];
        e[k] = F::one(&ctx);
        basis.insert(&apply_idempotent(&block, &idem, &e, &ctx)?)?;
    }
    ModuleSpec::from_basis(rep.clone(), block, ModuleLabel::Harmonic(label.clone()), Some(idem), basis)
}

/// One module per harmonic label of a sorted-content block.
pub fn harmonic_decompose<F: Field>(rep: &TauRep<F>, block: &Arc<ChargeBlock>) -> Result<Vec<ModuleSpec<F>>> {
    if !block.is_sorted() {
        return Err(Error::InvalidParameter(format!(
            "block {:?} is not in sorted-content form",
            block.composition()
        )));
    }
    if block.n() != rep.n {
        return Err(Error::InvalidParameter("block and representation disagree on n".into()));
    }
    HarmonicLabel::all_for(&block.partition())
        .iter()
        .map(|label| harmonic_on_block(rep, block.clone(), label))
        .collect()
}

/// The image `f_N · M`, carried to `n - N` strands by reading off the
/// coefficient of `12…N w₊` for each tail `w₊`. This intertwines `σ_{N+j}`
/// on the source with `σ_j` on the target.
pub fn localize<F: Field>(f: &FOperator, m: &ModuleSpec<F>) -> Result<ModuleSpec<F>> {
    let colours = f.colours;
    if f.n != m.n() || m.rep.colours != colours {
        return Err(Error::InvalidParameter(format!(
            "f_{colours} on {} strands cannot act on a module with {} colours on {} strands",
            f.n,
            m.rep.colours,
            m.n()
        )));
    }
    let target_rep = m.rep.with_n(m.n() - colours);
    let label = ModuleLabel::Localized { from: Box::new(m.label.clone()), colours };
    let ctx = m.rep.ctx();
    let Some(target_comp) = m.block.composition().iter().map(|&c| c.checked_sub(1)).collect::<Option<Vec<_>>>()
    else {
        // some colour is missing, so no word has a prefix using every colour
        let block = Arc::new(ChargeBlock::new(vec![0; colours])?);
        let basis = RowSpace::new(1, ctx);
        let empty_rep = m.rep.with_n(0);
        return ModuleSpec::from_basis(empty_rep, block, label, None, basis);
    };
    let target = Arc::new(ChargeBlock::new(target_comp)?);
    let prefix = ColorWord::new((1..=colours as u8).collect())?;
    let mut basis = RowSpace::new(target.dim(), ctx.clone());
    for b in m.basis.basis() {
        let image = f.apply_block(&m.block, b)?;
        let tail: Vec<F> = target
            .words()
            .iter()
            .map(|w| image[m.block.index_of(&prefix.concat(w)).expect("same content")].clone())
            .collect();
        basis.insert(&tail)?;
    }
    ModuleSpec::from_basis(target_rep, target, label, m.idempotent.clone(), basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Rational;
    use crate::tensor::rep::f_operator;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn rep(colours: usize, n: usize) -> TauRep<Rational> {
        TauRep::x_form(colours, n, &Rational::integer(2)).unwrap()
    }

    fn vector(block: &ChargeBlock, terms: &[(&str, i64)]) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); block.dim()];
        for (w, c) in terms {
            v[block.index_of(&w.parse().unwrap()).unwrap()] = Rational::integer(*c);
        }
        v
    }

    #[test]
    fn labels_of_small_shapes() {
        assert_eq!(HarmonicLabel::all_for(&p("(2,1)")).len(), 1);
        let l = HarmonicLabel::all_for(&p("(1,1)"));
        assert_eq!(l.len(), 2);
        assert_eq!(l[0].to_string(), "Y_(1,1)^((2))");
        assert_eq!(HarmonicLabel::all_for(&p("(2,1,1)"))[1].to_string(), "Y_(2,1,1)^((1),(1,1))");
        assert_eq!(HarmonicLabel::all_for(&p("(2,2,2)")).len(), 3);
        assert!(HarmonicLabel::new(p("(2,1)"), vec![p("(2)")]).is_err());
    }

    #[test]
    fn pair_splits_into_symmetric_and_antisymmetric_lines() {
        let r = rep(2, 2);
        let block = Arc::new(ChargeBlock::young(2, &p("(1,1)")).unwrap());
        let mods = harmonic_decompose(&r, &block).unwrap();
        assert_eq!(mods.iter().map(ModuleSpec::dim).collect::<Vec<_>>(), vec![1, 1]);
        assert!(mods[0].contains(&vector(&block, &[("12", 1), ("21", 1)])));
        assert!(mods[1].contains(&vector(&block, &[("12", 1), ("21", -1)])));
    }

    #[test]
    fn antisymmetric_part_of_two_one_one() {
        let r = rep(3, 4);
        let label = HarmonicLabel::new(p("(2,1,1)"), vec![p("(1)"), p("(1,1)")]).unwrap();
        let m = harmonic_module(&r, &label).unwrap();
        assert_eq!(m.dim(), 6);
        let listed = [
            [("1123", 1), ("1132", -1)],
            [("1213", 1), ("1312", -1)],
            [("1231", 1), ("1321", -1)],
            [("2113", 1), ("3112", -1)],
            [("2131", 1), ("3121", -1)],
            [("2311", 1), ("3211", -1)],
        ];
        let mut span = RowSpace::new(m.block.dim(), ());
        for v in &listed {
            let v = vector(&m.block, v);
            assert!(m.contains(&v));
            span.insert(&v).unwrap();
        }
        assert_eq!(span.dim(), 6);
        let sym = harmonic_module(&r, &HarmonicLabel::new(p("(2,1,1)"), vec![p("(1)"), p("(2)")]).unwrap()).unwrap();
        assert_eq!(sym.dim(), 6);
    }

    #[test]
    fn projectors_are_idempotent_and_commute() {
        for colours in 2..=3 {
            for n in 1..=4 {
                let r = rep(colours, n);
                for label in HarmonicLabel::all_at(colours, n) {
                    let m = harmonic_module(&r, &label).unwrap();
                    let pm = m.projector_matrix().unwrap();
                    assert_eq!(pm.mul(&pm).unwrap(), pm, "{label}");
                    assert_eq!(crate::scalars::linalg::rank(&pm).unwrap(), m.dim());
                    for j in 1..n {
                        for g in [Generator::sigma(j), Generator::s(j)] {
                            let a = r.block_op(&m.block, g).unwrap().to_matrix();
                            assert_eq!(a.mul(&pm).unwrap(), pm.mul(&a).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn harmonic_dimensions_add_up() {
        for colours in 1..=4 {
            for n in 0..=5 {
                for lambda in partitions(n, colours) {
                    let r = rep(colours, n);
                    let total: u64 = HarmonicLabel::all_for(&lambda)
                        .iter()
                        .map(|l| l.multiplicity() * harmonic_module(&r, l).unwrap().dim() as u64)
                        .sum();
                    assert_eq!(total as usize, ChargeBlock::young(colours, &lambda).unwrap().dim(), "{lambda}");
                }
            }
        }
    }

    #[test]
    fn sigma_and_s_agree_up_to_sign_on_distinct_colours() {
        for n in 2..=5 {
            let r = rep(n, n);
            let lambda = Partition::new(vec![1; n]).unwrap();
            let m = young_module(&r, &lambda).unwrap();
            for j in 1..n {
                let a = m.generator_matrix(Generator::sigma(j)).unwrap();
                let b = m.generator_matrix(Generator::s(j)).unwrap();
                assert_eq!(a, b.neg());
            }
        }
    }

    #[test]
    fn localization_dimensions() {
        let f2 = f_operator(2, 3).unwrap();
        let y21 = young_module(&rep(2, 3), &p("(2,1)")).unwrap();
        let loc = localize(&f2, &y21).unwrap();
        assert_eq!(loc.dim(), 1);
        assert_eq!(loc.block.composition(), &[1, 0]);
        let y3 = young_module(&rep(2, 3), &p("(3)")).unwrap();
        assert_eq!(localize(&f2, &y3).unwrap().dim(), 0);
        let f3 = f_operator(3, 4).unwrap();
        let anti = harmonic_module(&rep(3, 4), &HarmonicLabel::new(p("(2,1,1)"), vec![p("(1)"), p("(1,1)")]).unwrap())
            .unwrap();
        assert_eq!(localize(&f3, &anti).unwrap().dim(), 0);
        assert!(localize(&f3, &young_module(&rep(3, 3), &p("(1,1,1)")).unwrap()).is_err());
    }

    #[test]
    fn localized_young_modules_have_predicted_dimension() {
        for colours in 1..=3 {
            for n in colours..=6 {
                let f = f_operator(colours, n).unwrap();
                for lambda in partitions(n, colours) {
                    let m = young_module(&rep(colours, n), &lambda).unwrap();
                    let expected = match lambda.minus_column(colours) {
                        Some(mu) => ChargeBlock::young(colours, &mu).unwrap().dim(),
                        None => 0,
                    };
                    assert_eq!(localize(&f, &m).unwrap().dim(), expected, "f_{colours} Y_{lambda}");
                }
            }
        }
    }

    #[test]
    fn coordinates_are_pivot_entries() {
        let m = young_module(&rep(2, 3), &p("(2,1)")).unwrap();
        let s = m.generator_matrix(Generator::sigma(1)).unwrap();
        assert_eq!(s.trace(), Rational::integer(2));
    }
}
