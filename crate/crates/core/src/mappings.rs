//! Approximable mappings between finite bases and the continuous functions
//! they determine on ideal completions.
//!
//! A mapping is stored extensionally: for each source element `a` the set
//! `f(a)` of related target elements. Over finite finitary bases each `f(a)`
//! satisfying the downward-closure and pairwise-lub conditions is a principal
//! ideal `↓F(a)`. An approximable mapping is therefore the same thing as a
//! monotone point map `F` from source to target, and that is how
//! [`enumerate_ams`] walks the space.

use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::basis::FiniteBasis;
use crate::completion::{subsets, CompletedDomain, Ideal};
use crate::element::Element;
use crate::error::{CapKind, DomainError, Result};
use crate::report::{SubsetReport, Witness};
use crate::Limits;

/// The four mapping conditions, each with its own report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AmReport {
    pub pointedness: SubsetReport,
    pub downward_closure: SubsetReport,
    pub directedness: SubsetReport,
    pub monotonicity: SubsetReport,
}

impl AmReport {
    pub fn holds(&self) -> bool {
        self.conditions().iter().all(|r| r.holds())
    }

    pub fn conditions(&self) -> [&SubsetReport; 4] {
        [&self.pointedness, &self.downward_closure, &self.directedness, &self.monotonicity]
    }

    pub fn first_failure(&self) -> Option<&SubsetReport> {
        self.conditions().into_iter().find(|r| !r.holds())
    }
}

fn rows_from_pairs(source: &FiniteBasis, target: &FiniteBasis, pairs: &[(Element, Element)]) -> Result<Vec<FixedBitSet>> {
    let mut rows = vec![target.empty_set(); source.len()];
    for (a, b) in pairs {
        let i = source.index_of(a).ok_or_else(|| DomainError::UnknownElement(a.to_string()))?;
        let j = target.index_of(b).ok_or_else(|| DomainError::UnknownElement(b.to_string()))?;
        rows[i].insert(j);
    }
    Ok(rows)
}

/// Checks the four conditions on a relation, reporting each separately.
pub fn check_am(source: &FiniteBasis, target: &FiniteBasis, pairs: &[(Element, Element)]) -> Result<AmReport> {
    let rows = rows_from_pairs(source, target, pairs)?;
    Ok(am_report(source, target, &rows))
}

fn am_report(source: &FiniteBasis, target: &FiniteBasis, rows: &[FixedBitSet]) -> AmReport {
    let a_el = |i: usize| source.element(i).clone();
    let b_el = |j: usize| target.element(j).clone();
    let (sb, tb) = (source.bottom_idx(), target.bottom_idx());

    let pointedness = if rows[sb].contains(tb) {
        SubsetReport::holds_for("pointedness")
    } else {
        SubsetReport::fails("pointedness", "condition 1", Witness::Pair(a_el(sb), b_el(tb)))
    };

    let mut downward_closure = SubsetReport::holds_for("downward-closure");
    'dc: for (a, row) in rows.iter().enumerate() {
        for b in row.ones() {
            if let Some(missing) = target.down_set(b).difference(row).next() {
                downward_closure =
                    SubsetReport::fails("downward-closure", "condition 2", Witness::Pair(a_el(a), b_el(missing)));
                break 'dc;
            }
        }
    }

    let mut directedness = SubsetReport::holds_for("directedness");
    'dir: for (a, row) in rows.iter().enumerate() {
        for b1 in row.ones() {
            for b2 in row.ones().filter(|&b2| b2 > b1) {
                let ok = target.lub2_idx(b1, b2).is_some_and(|l| row.contains(l));
                if !ok {
                    directedness =
                        SubsetReport::fails("directedness", "condition 3", Witness::Triple(a_el(a), b_el(b1), b_el(b2)));
                    break 'dir;
                }
            }
        }
    }

    let mut monotonicity = SubsetReport::holds_for("monotonicity");
    'mon: for (a1, row) in rows.iter().enumerate() {
        for a2 in source.up_set(a1).ones() {
            if let Some(b) = row.difference(&rows[a2]).next() {
                monotonicity = SubsetReport::fails("monotonicity", "condition 4", Witness::Pair(a_el(a2), b_el(b)));
                break 'mon;
            }
        }
    }

    AmReport { pointedness, downward_closure, directedness, monotonicity }
}

/// An approximable mapping between two finite bases.
#[derive(Clone, Debug)]
pub struct ApproxMapping<'a> {
    source: &'a FiniteBasis,
    target: &'a FiniteBasis,
    rows: Vec<FixedBitSet>,
}

impl PartialEq for ApproxMapping<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source && self.target == other.target && self.rows == other.rows
    }
}

impl Eq for ApproxMapping<'_> {}

impl<'a> ApproxMapping<'a> {
    /// Validates `pairs` against the four conditions.
    pub fn new(source: &'a FiniteBasis, target: &'a FiniteBasis, pairs: &[(Element, Element)]) -> Result<Self> {
        let rows = rows_from_pairs(source, target, pairs)?;
        let report = am_report(source, target, &rows);
        if let Some(bad) = report.first_failure() {
            return Err(DomainError::Precondition(format!(
                "relation is not an approximable mapping: {} fails",
                bad.predicate
            )));
        }
        Ok(ApproxMapping { source, target, rows })
    }

    /// From a monotone point map given as target indices.
    pub(crate) fn from_points(source: &'a FiniteBasis, target: &'a FiniteBasis, points: &[usize]) -> Self {
        let rows = points.iter().map(|&j| target.down_set(j).clone()).collect();
        ApproxMapping { source, target, rows }
    }

    /// Rebuilds the mapping named by an `am{...}` term over these bases.
    pub fn from_term(source: &'a FiniteBasis, target: &'a FiniteBasis, term: &Element) -> Result<Self> {
        let Element::Am(gens) = term else {
            return Err(DomainError::Input(format!("`{term}` is not a mapping term")));
        };
        let seed: Vec<_> = gens.iter().cloned().collect();
        smallest_am_containing(source, target, &seed)
    }

    pub fn source(&self) -> &'a FiniteBasis {
        self.source
    }

    pub fn target(&self) -> &'a FiniteBasis {
        self.target
    }

    /// All related pairs, in canonical order.
    pub fn pairs(&self) -> Vec<(Element, Element)> {
        let mut out = Vec::new();
        for (a, row) in self.rows.iter().enumerate() {
            for b in row.ones() {
                out.push((self.source.element(a).clone(), self.target.element(b).clone()));
            }
        }
        out.sort();
        out
    }

    pub fn len(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones(..)).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, a: &Element, b: &Element) -> bool {
        match (self.source.index_of(a), self.target.index_of(b)) {
            (Some(i), Some(j)) => self.rows[i].contains(j),
            _ => false,
        }
    }

    /// `F(a)`: the largest target element related to source index `a`.
    pub fn point(&self, a: usize) -> usize {
        self.target.maximum_idx(&self.rows[a]).expect("rows of a mapping are principal")
    }

    pub fn points(&self) -> Vec<usize> {
        (0..self.rows.len()).map(|a| self.point(a)).collect()
    }

    /// Maps bottom only to bottom.
    pub fn is_strict(&self) -> bool {
        self.point(self.source.bottom_idx()) == self.target.bottom_idx()
    }

    /// Pair-set inclusion.
    pub fn is_below(&self, other: &ApproxMapping<'_>) -> bool {
        self.rows.iter().zip(&other.rows).all(|(a, b)| a.is_subset(b))
    }

    /// The step pairs generating this mapping: `(a, F(a))` wherever `F(a)` is
    /// not bottom and not already the lub of `F` below `a`.
    ///
    /// The closure of these pairs is the mapping itself, and the set does not
    /// mention pairs forced by bottom, so it is stable when the mapping is
    /// transported to larger bases.
    pub fn generators(&self) -> BTreeSet<(Element, Element)> {
        generators_of(self.source, self.target, &self.points())
    }

    /// Canonical `am{...}` term.
    pub fn to_term(&self) -> Element {
        Element::Am(self.generators())
    }

    /// The set image of `members` (a subset of the source).
    pub fn image_idx(&self, members: &FixedBitSet) -> FixedBitSet {
        let mut out = self.target.empty_set();
        for a in members.ones() {
            out.union_with(&self.rows[a]);
        }
        out
    }
}

pub(crate) fn generators_of(source: &FiniteBasis, target: &FiniteBasis, points: &[usize]) -> BTreeSet<(Element, Element)> {
    let tb = target.bottom_idx();
    let mut gens = BTreeSet::new();
    for a in 0..source.len() {
        if points[a] == tb {
            continue;
        }
        let mut below = target.empty_set();
        for p in source.down_set(a).ones().filter(|&p| p != a) {
            below.insert(points[p]);
        }
        let inherited = target.lub_idx(&below).expect("bounded by F(a) in a finitary basis");
        if inherited != points[a] {
            gens.insert((source.element(a).clone(), target.element(points[a]).clone()));
        }
    }
    gens
}

/// `{ b | ∃ a ∈ s. (a, b) ∈ rel }`
pub fn set_image(rel: &[(Element, Element)], s: &[Element]) -> BTreeSet<Element> {
    let s: BTreeSet<&Element> = s.iter().collect();
    rel.iter().filter(|(a, _)| s.contains(a)).map(|(_, b)| b.clone()).collect()
}

fn require_finitary(b: &FiniteBasis) -> Result<()> {
    if b.is_finitary_basis().holds() {
        Ok(())
    } else {
        Err(DomainError::Precondition(format!("`{}` is not a finitary basis", b.name())))
    }
}

/// Enumerates monotone point maps `source -> target` in a fixed order.
///
/// Visits points along a linear extension of the source; each point ranges
/// over the common upper bounds of the images of its predecessors.
pub(crate) fn for_each_monotone(
    source: &FiniteBasis,
    target: &FiniteBasis,
    strict: bool,
    mut visit: impl FnMut(&[usize]) -> Result<()>,
) -> Result<()> {
    let order = source.linear_extension();
    let preds: Vec<Vec<usize>> =
        (0..source.len()).map(|a| source.down_set(a).ones().filter(|&p| p != a).collect()).collect();
    let mut points = vec![usize::MAX; source.len()];

    #[allow(clippy::too_many_arguments)]
    fn go(
        depth: usize,
        order: &[usize],
        preds: &[Vec<usize>],
        source: &FiniteBasis,
        target: &FiniteBasis,
        strict: bool,
        points: &mut [usize],
        visit: &mut dyn FnMut(&[usize]) -> Result<()>,
    ) -> Result<()> {
        let Some(&a) = order.get(depth) else {
            return visit(points);
        };
        let mut cands = target.full_set();
        for &p in &preds[a] {
            cands.intersect_with(target.up_set(points[p]));
        }
        if strict && a == source.bottom_idx() {
            cands.clear();
            cands.insert(target.bottom_idx());
        }
        for b in cands.ones() {
            points[a] = b;
            go(depth + 1, order, preds, source, target, strict, points, visit)?;
        }
        points[a] = usize::MAX;
        Ok(())
    }

    go(0, &order, &preds, source, target, strict, &mut points, &mut visit)
}

/// Every approximable mapping from `source` to `target`, sorted by
/// canonical term.
pub fn enumerate_ams<'a>(
    source: &'a FiniteBasis,
    target: &'a FiniteBasis,
    limits: &Limits,
) -> Result<Vec<ApproxMapping<'a>>> {
    let space = source.len() * target.len();
    if space > limits.relation_space {
        return Err(DomainError::cap(CapKind::RelationSpace, space as u128, limits.relation_space as u128));
    }
    require_finitary(source)?;
    require_finitary(target)?;
    let mut out = Vec::new();
    for_each_monotone(source, target, false, |pts| {
        out.push(ApproxMapping::from_points(source, target, pts));
        Ok(())
    })?;
    out.sort_by_cached_key(|m| m.to_term());
    Ok(out)
}

/// Checks that the image of an ideal is an ideal of the target, and returns
/// that image.
pub fn am_image_is_ideal(am: &ApproxMapping<'_>, ideal: &Ideal) -> Result<(SubsetReport, Ideal)> {
    let set = ideal_set(am.source, ideal)?;
    let image = am.image_idx(&set);
    let report = am.target.ideal_report(&image).renamed("image-is-ideal");
    Ok((report, Ideal::from_members(am.target.members(&image))))
}

fn ideal_set(basis: &FiniteBasis, ideal: &Ideal) -> Result<FixedBitSet> {
    let set = basis.subset(ideal.members())?;
    if !basis.is_ideal_idx(&set) {
        return Err(DomainError::Precondition(format!("{ideal} is not an ideal of `{}`", basis.name())));
    }
    Ok(set)
}

/// Checks `f(i1) ⊆ f(i2)` for ideals `i1 ⊆ i2`.
pub fn am_monotone(am: &ApproxMapping<'_>, i1: &Ideal, i2: &Ideal) -> Result<SubsetReport> {
    let s1 = ideal_set(am.source, i1)?;
    let s2 = ideal_set(am.source, i2)?;
    if !s1.is_subset(&s2) {
        return Err(DomainError::Precondition(format!("{i1} is not included in {i2}")));
    }
    let (f1, f2) = (am.image_idx(&s1), am.image_idx(&s2));
    Ok(match f1.difference(&f2).next() {
        None => SubsetReport::holds_for("am-monotone"),
        Some(b) => SubsetReport::fails("am-monotone", "image not included", Witness::Element(am.target.element(b).clone())),
    })
}

/// Closes `seed ∪ {(⊥, ⊥)}` under downward closure, pairwise target lubs and
/// monotonicity.
///
/// Points are settled along a linear extension of the source: each `f(a)` is
/// the down-set of the lub of everything forced into it (its seed pairs, the
/// images of its predecessors, and bottom). A missing lub means no mapping
/// contains the seed.
pub fn smallest_am_containing<'a>(
    source: &'a FiniteBasis,
    target: &'a FiniteBasis,
    seed: &[(Element, Element)],
) -> Result<ApproxMapping<'a>> {
    let seeded = rows_from_pairs(source, target, seed)?;
    let mut points = vec![usize::MAX; source.len()];
    for a in source.linear_extension() {
        let mut forced: Vec<usize> = seeded[a].ones().collect();
        forced.extend(source.down_set(a).ones().filter(|&p| p != a).map(|p| points[p]));
        let mut acc = target.bottom_idx();
        for b in forced {
            acc = target.lub2_idx(acc, b).ok_or_else(|| DomainError::NoContainingAm {
                source_elem: source.element(a).to_string(),
                left: target.element(acc).to_string(),
                right: target.element(b).to_string(),
            })?;
        }
        points[a] = acc;
    }
    Ok(ApproxMapping::from_points(source, target, &points))
}

/// Relational composition `g ∘ f`, re-closed.
pub fn compose_ams<'a>(f: &ApproxMapping<'a>, g: &ApproxMapping<'a>) -> Result<ApproxMapping<'a>> {
    if f.target != g.source {
        return Err(DomainError::Precondition("target of the first mapping is not the source of the second".into()));
    }
    let mut pairs = Vec::new();
    for (a, row) in f.rows.iter().enumerate() {
        let img = g.image_idx(row);
        for c in img.ones() {
            pairs.push((f.source.element(a).clone(), g.target.element(c).clone()));
        }
    }
    smallest_am_containing(f.source, g.target, &pairs)
}

/// A function between ideal completions, stored as its full graph (indices
/// into the completions' ideal lists).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealFunction<'a> {
    source: &'a CompletedDomain,
    target: &'a CompletedDomain,
    graph: Vec<usize>,
}

impl<'a> IdealFunction<'a> {
    pub fn new(source: &'a CompletedDomain, target: &'a CompletedDomain, graph: Vec<usize>) -> Result<Self> {
        if graph.len() != source.len() || graph.iter().any(|&k| k >= target.len()) {
            return Err(DomainError::Precondition("graph is not total on the source completion".into()));
        }
        Ok(IdealFunction { source, target, graph })
    }

    pub fn graph(&self) -> &[usize] {
        &self.graph
    }

    pub fn apply(&self, ideal: &Ideal) -> Option<&Ideal> {
        self.source.position(ideal).map(|k| &self.target.ideals()[self.graph[k]])
    }

    pub fn source(&self) -> &'a CompletedDomain {
        self.source
    }

    pub fn target(&self) -> &'a CompletedDomain {
        self.target
    }
}

/// The function `I ↦ f(I)` on ideals determined by a mapping.
pub fn am_to_ideal_function<'a>(
    am: &ApproxMapping<'_>,
    source: &'a CompletedDomain,
    target: &'a CompletedDomain,
) -> Result<IdealFunction<'a>> {
    if source.host() != am.source || target.host() != am.target {
        return Err(DomainError::Precondition("completions do not match the mapping's bases".into()));
    }
    let mut graph = Vec::with_capacity(source.len());
    for ideal in source.ideals() {
        let set = am.source.subset(ideal.members())?;
        let image = Ideal::from_members(am.target.members(&am.image_idx(&set)));
        let k = target
            .position(&image)
            .ok_or_else(|| DomainError::Precondition(format!("image {image} is not an ideal of the target")))?;
        graph.push(k);
    }
    IdealFunction::new(source, target, graph)
}

/// For every non-empty directed family `D` of source ideals,
/// `f(⋃D) = ⋃{ f(d) | d ∈ D }`.
///
/// A monotonicity failure is reported first, with the two-element chain that
/// breaks it as the witness family.
pub fn check_continuous(f: &IdealFunction<'_>, limits: &Limits) -> Result<SubsetReport<Ideal>> {
    const NAME: &str = "continuous";
    let src = f.source.domain();
    let m = src.len();
    let ideals = f.source.ideals();
    let timg = |k: usize| &f.target.ideals()[f.graph[k]];
    for i in 0..m {
        for k in src.up_set(i).ones() {
            if !timg(i).is_subset(timg(k)) {
                return Ok(SubsetReport::fails(
                    NAME,
                    "monotonicity",
                    Witness::Subset(vec![ideals[i].clone(), ideals[k].clone()]),
                ));
            }
        }
    }
    limits.check_subset_scan(m)?;
    for family in subsets(m).skip(1) {
        if !src.directed_idx(&family) {
            continue;
        }
        let union = Ideal::from_members(family.ones().flat_map(|k| ideals[k].members().iter().cloned()).collect());
        let Some(u) = f.source.position(&union) else {
            continue;
        };
        let joined =
            Ideal::from_members(family.ones().flat_map(|k| timg(k).members().iter().cloned()).collect());
        if *timg(u) != joined {
            return Ok(SubsetReport::fails(
                NAME,
                "lub preservation",
                Witness::Subset(family.ones().map(|k| ideals[k].clone()).collect()),
            ));
        }
    }
    Ok(SubsetReport::holds_for(NAME))
}
