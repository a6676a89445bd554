//! Finite posets, pointed finite bases, and the order-theoretic predicates on
//! their subsets.
//!
//! A [`Poset`] stores its universe in canonical (sorted) order together with
//! the up-set and down-set of every element as bitsets. Every predicate is
//! computed from those two tables. Predicates return a [`SubsetReport`] whose
//! failure witness can be re-checked against the same poset.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;
use std::ops::Deref;

use fixedbitset::FixedBitSet;

use crate::element::{validate_name, Element};
use crate::error::{DomainError, Result};
use crate::report::{SubsetReport, Witness};

/// Anything that can name a poset element.
pub trait Term: Clone + Ord + Hash + fmt::Debug + fmt::Display {}
impl<T: Clone + Ord + Hash + fmt::Debug + fmt::Display> Term for T {}

/// How an input relation is turned into an order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Closure {
    /// Take the reflexive-transitive closure first (the input may be covers).
    #[default]
    Auto,
    /// Check the relation exactly as given.
    Given,
}

#[derive(Clone)]
pub struct Poset<T = Element> {
    name: String,
    elements: Vec<T>,
    index: HashMap<T, usize>,
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
    /// Position of each element in a fixed linear extension.
    rank: Vec<usize>,
    least: Option<usize>,
}

impl<T: Term> fmt::Debug for Poset<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Poset")
            .field("name", &self.name)
            .field("elements", &self.elements.iter().map(ToString::to_string).collect::<Vec<_>>())
            .field("covers", &self.covers().len())
            .finish()
    }
}

/// Equality of universes and orders; the name is not compared.
impl<T: Term> PartialEq for Poset<T> {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements && self.up == other.up
    }
}

impl<T: Term> Eq for Poset<T> {}

fn sorted_unique<T: Ord>(mut v: Vec<T>) -> Vec<T> {
    v.sort();
    v.dedup();
    v
}

/// Checks the partial-order axioms for `relation` over `elements`.
///
/// With [`Closure::Auto`] the reflexive-transitive closure is taken first, so
/// only antisymmetry can fail. With [`Closure::Given`] the axioms are checked
/// in order reflexivity, antisymmetry, transitivity, and the witness names the
/// offending element, pair or triple.
pub fn check_partial_order<T: Term>(
    elements: &[T],
    relation: &[(T, T)],
    closure: Closure,
) -> Result<SubsetReport<T>> {
    let elements = sorted_unique(elements.to_vec());
    let (_, rel) = relation_matrix(&elements, relation, closure)?;
    Ok(axiom_report(&elements, &rel))
}

fn relation_matrix<T: Term>(
    elements: &[T],
    relation: &[(T, T)],
    closure: Closure,
) -> Result<(HashMap<T, usize>, Vec<FixedBitSet>)> {
    if elements.is_empty() {
        return Err(DomainError::Input("a poset needs at least one element".into()));
    }
    let index: HashMap<T, usize> = elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
    let n = elements.len();
    let mut rel = vec![FixedBitSet::with_capacity(n); n];
    for (a, b) in relation {
        let i = *index.get(a).ok_or_else(|| DomainError::UnknownElement(a.to_string()))?;
        let j = *index.get(b).ok_or_else(|| DomainError::UnknownElement(b.to_string()))?;
        rel[i].insert(j);
    }
    if closure == Closure::Auto {
        for (i, row) in rel.iter_mut().enumerate() {
            row.insert(i);
        }
        // Warshall over rows
        for k in 0..n {
            let row_k = rel[k].clone();
            for row in rel.iter_mut() {
                if row.contains(k) {
                    row.union_with(&row_k);
                }
            }
        }
    }
    Ok((index, rel))
}

fn axiom_report<T: Term>(elements: &[T], rel: &[FixedBitSet]) -> SubsetReport<T> {
    const NAME: &str = "partial-order";
    let n = elements.len();
    for i in 0..n {
        if !rel[i].contains(i) {
            return SubsetReport::fails(NAME, "reflexivity", Witness::Element(elements[i].clone()));
        }
    }
    for i in 0..n {
        for j in rel[i].ones() {
            if i != j && rel[j].contains(i) {
                return SubsetReport::fails(
                    NAME,
                    "antisymmetry",
                    Witness::Pair(elements[i].clone(), elements[j].clone()),
                );
            }
        }
    }
    for i in 0..n {
        for j in rel[i].ones() {
            if !rel[j].is_subset(&rel[i]) {
                let k = rel[j].difference(&rel[i]).next().expect("non-subset has a difference");
                return SubsetReport::fails(
                    NAME,
                    "transitivity",
                    Witness::Triple(elements[i].clone(), elements[j].clone(), elements[k].clone()),
                );
            }
        }
    }
    SubsetReport::holds_for(NAME)
}

impl<T: Term> Poset<T> {
    /// Builds a poset from a generating relation, enforcing the axioms.
    pub fn from_relation(
        name: impl Into<String>,
        elements: Vec<T>,
        relation: &[(T, T)],
        closure: Closure,
    ) -> Result<Self> {
        let elements = sorted_unique(elements);
        let (index, rel) = relation_matrix(&elements, relation, closure)?;
        let report = axiom_report(&elements, &rel);
        if !report.holds() {
            let report = report.map(|e| e.to_string());
            return Err(DomainError::Axiom { report: Box::new(report) });
        }
        Ok(Self::assemble(name.into(), elements, index, rel))
    }

    /// Builds a poset from an order predicate known to be a partial order.
    ///
    /// Debug builds verify the axioms.
    pub fn from_leq(name: impl Into<String>, elements: Vec<T>, leq: impl Fn(&T, &T) -> bool) -> Self {
        let elements = sorted_unique(elements);
        Self::from_indexed_leq(name, elements.clone(), |i, j| leq(&elements[i], &elements[j]))
    }

    /// Like [`Self::from_leq`], with the predicate over positions in the
    /// given (distinct, possibly unsorted) element list.
    pub fn from_indexed_leq(name: impl Into<String>, elements: Vec<T>, leq: impl Fn(usize, usize) -> bool) -> Self {
        let n = elements.len();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.sort_by(|&i, &j| elements[i].cmp(&elements[j]));
        debug_assert!(perm.windows(2).all(|w| elements[w[0]] != elements[w[1]]), "duplicate elements");
        let sorted: Vec<T> = perm.iter().map(|&i| elements[i].clone()).collect();
        let index = sorted.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let mut rel = vec![FixedBitSet::with_capacity(n); n];
        for (a, &i) in perm.iter().enumerate() {
            for (b, &j) in perm.iter().enumerate() {
                if a == b || leq(i, j) {
                    rel[a].insert(b);
                }
            }
        }
        debug_assert!(axiom_report(&sorted, &rel).holds(), "from_leq given a non-order");
        Self::assemble(name.into(), sorted, index, rel)
    }

    fn assemble(name: String, elements: Vec<T>, index: HashMap<T, usize>, up: Vec<FixedBitSet>) -> Self {
        let n = elements.len();
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for (i, row) in up.iter().enumerate() {
            for j in row.ones() {
                down[j].insert(i);
            }
        }
        // strictly smaller elements have strictly smaller down-sets
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| (down[i].count_ones(..), i));
        let mut rank = vec![0; n];
        for (pos, &i) in order.iter().enumerate() {
            rank[i] = pos;
        }
        let least = (0..n).find(|&i| up[i].count_ones(..) == n);
        Poset { name, elements, index, up, down, rank, least }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// The universe in canonical order.
    pub fn elements(&self) -> &[T] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &T {
        &self.elements[i]
    }

    pub fn index_of(&self, e: &T) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn contains(&self, e: &T) -> bool {
        self.index.contains_key(e)
    }

    pub(crate) fn idx(&self, e: &T) -> Result<usize> {
        self.index_of(e).ok_or_else(|| DomainError::UnknownElement(e.to_string()))
    }

    /// Converts an element list into an index set, rejecting unknown elements.
    pub fn subset<'a>(&self, s: impl IntoIterator<Item = &'a T>) -> Result<FixedBitSet>
    where
        T: 'a,
    {
        let mut set = self.empty_set();
        for e in s {
            set.insert(self.idx(e)?);
        }
        Ok(set)
    }

    pub fn empty_set(&self) -> FixedBitSet {
        FixedBitSet::with_capacity(self.len())
    }

    pub fn full_set(&self) -> FixedBitSet {
        let mut s = self.empty_set();
        s.insert_range(..);
        s
    }

    pub fn members(&self, set: &FixedBitSet) -> Vec<T> {
        set.ones().map(|i| self.elements[i].clone()).collect()
    }

    pub fn leq(&self, a: &T, b: &T) -> Result<bool> {
        Ok(self.leq_idx(self.idx(a)?, self.idx(b)?))
    }

    #[inline]
    pub fn leq_idx(&self, i: usize, j: usize) -> bool {
        self.up[i].contains(j)
    }

    /// `{ j | i ⊑ j }`
    pub fn up_set(&self, i: usize) -> &FixedBitSet {
        &self.up[i]
    }

    /// `{ j | j ⊑ i }`
    pub fn down_set(&self, i: usize) -> &FixedBitSet {
        &self.down[i]
    }

    /// Position of `i` in a fixed linear extension of the order.
    pub fn rank(&self, i: usize) -> usize {
        self.rank[i]
    }

    /// Indices sorted along a linear extension (every element after all of
    /// its strict predecessors).
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&i| self.rank[i]);
        order
    }

    pub fn least_idx(&self) -> Option<usize> {
        self.least
    }

    pub fn least(&self) -> Option<&T> {
        self.least.map(|i| &self.elements[i])
    }

    /// All `(a, b)` with `a ⊑ b`, including reflexive pairs.
    pub fn relation(&self) -> Vec<(T, T)> {
        let mut out = Vec::new();
        for (i, row) in self.up.iter().enumerate() {
            for j in row.ones() {
                out.push((self.elements[i].clone(), self.elements[j].clone()));
            }
        }
        out
    }

    /// Covering pairs `a ⋖ b`: `a ⊏ b` with nothing strictly between.
    pub fn cover_indices(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            for j in self.up[i].ones() {
                if i == j {
                    continue;
                }
                let mut between = self.up[i].clone();
                between.intersect_with(&self.down[j]);
                if between.count_ones(..) == 2 {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn covers(&self) -> Vec<(T, T)> {
        self.cover_indices()
            .into_iter()
            .map(|(i, j)| (self.elements[i].clone(), self.elements[j].clone()))
            .collect()
    }

    pub fn upper_bounds_idx(&self, s: &FixedBitSet) -> FixedBitSet {
        let mut ub = self.full_set();
        for i in s.ones() {
            ub.intersect_with(&self.up[i]);
        }
        ub
    }

    /// Least element of `set`, if any.
    pub fn minimum_idx(&self, set: &FixedBitSet) -> Option<usize> {
        // the minimum, if it exists, comes first in the linear extension
        let cand = set.ones().min_by_key(|&i| self.rank[i])?;
        set.is_subset(&self.up[cand]).then_some(cand)
    }

    /// Greatest element of `set`, if any.
    pub fn maximum_idx(&self, set: &FixedBitSet) -> Option<usize> {
        let cand = set.ones().max_by_key(|&i| self.rank[i])?;
        set.is_subset(&self.down[cand]).then_some(cand)
    }

    pub fn lub_idx(&self, s: &FixedBitSet) -> Option<usize> {
        self.minimum_idx(&self.upper_bounds_idx(s))
    }

    pub fn lub2_idx(&self, i: usize, j: usize) -> Option<usize> {
        let mut ub = self.up[i].clone();
        ub.intersect_with(&self.up[j]);
        self.minimum_idx(&ub)
    }

    /// The least upper bound of `s`; `lub(∅)` is the least element.
    pub fn lub(&self, s: &[T]) -> Result<Option<T>> {
        let set = self.subset(s)?;
        Ok(self.lub_idx(&set).map(|i| self.elements[i].clone()))
    }

    /// Shrinks a failing subset to a minimal one that still fails `fails`.
    fn minimize(&self, set: &FixedBitSet, fails: impl Fn(&FixedBitSet) -> bool) -> FixedBitSet {
        let mut cur = set.clone();
        for i in set.ones() {
            cur.set(i, false);
            if !fails(&cur) {
                cur.insert(i);
            }
        }
        cur
    }

    pub fn is_bounded(&self, s: &[T]) -> Result<SubsetReport<T>> {
        let set = self.subset(s)?;
        Ok(self.bounded_report(&set))
    }

    fn bounded_report(&self, set: &FixedBitSet) -> SubsetReport<T> {
        let unbounded = |t: &FixedBitSet| self.upper_bounds_idx(t).is_clear();
        if unbounded(set) {
            let w = self.minimize(set, unbounded);
            SubsetReport::fails("bounded", "no upper bound", Witness::Subset(self.members(&w)))
        } else {
            SubsetReport::holds_for("bounded")
        }
    }

    /// Every finite subset of `s` is bounded in the poset.
    ///
    /// `s` is itself finite, and subsets of a bounded set are bounded, so this
    /// reduces to boundedness of `s`; the witness is a minimal unbounded
    /// subset.
    pub fn is_consistent(&self, s: &[T]) -> Result<SubsetReport<T>> {
        let set = self.subset(s)?;
        Ok(self.bounded_report(&set).renamed("consistent"))
    }

    /// Every finite subset of `s` is bounded within `s`.
    pub fn is_directed(&self, s: &[T]) -> Result<SubsetReport<T>> {
        let set = self.subset(s)?;
        Ok(self.directed_report(&set))
    }

    pub(crate) fn directed_idx(&self, set: &FixedBitSet) -> bool {
        let mut ub = self.upper_bounds_idx(set);
        ub.intersect_with(set);
        !ub.is_clear()
    }

    fn directed_report(&self, set: &FixedBitSet) -> SubsetReport<T> {
        let unbounded_within = |t: &FixedBitSet| {
            let mut ub = self.upper_bounds_idx(t);
            ub.intersect_with(set);
            ub.is_clear()
        };
        if unbounded_within(set) {
            let w = self.minimize(set, unbounded_within);
            SubsetReport::fails("directed", "no upper bound within the set", Witness::Subset(self.members(&w)))
        } else {
            SubsetReport::holds_for("directed")
        }
    }

    pub fn is_downward_closed(&self, s: &[T]) -> Result<SubsetReport<T>> {
        let set = self.subset(s)?;
        Ok(self.downward_closed_report(&set))
    }

    fn downward_closed_report(&self, set: &FixedBitSet) -> SubsetReport<T> {
        for i in set.ones() {
            if let Some(missing) = self.down[i].difference(set).next() {
                return SubsetReport::fails(
                    "downward-closed",
                    "missing lower element",
                    Witness::Pair(self.elements[missing].clone(), self.elements[i].clone()),
                );
            }
        }
        SubsetReport::holds_for("downward-closed")
    }

    /// `{ s | s ⊑ x }`
    pub fn lower_set(&self, x: &T) -> Result<Vec<T>> {
        let i = self.idx(x)?;
        Ok(self.members(&self.down[i]))
    }

    pub fn is_chain(&self, s: &[T]) -> Result<SubsetReport<T>> {
        let set = self.subset(s)?;
        let idx: Vec<usize> = set.ones().collect();
        for (k, &i) in idx.iter().enumerate() {
            for &j in &idx[k + 1..] {
                if !self.leq_idx(i, j) && !self.leq_idx(j, i) {
                    return Ok(SubsetReport::fails(
                        "chain",
                        "incomparable pair",
                        Witness::Pair(self.elements[i].clone(), self.elements[j].clone()),
                    ));
                }
            }
        }
        Ok(SubsetReport::holds_for("chain"))
    }

    pub fn is_antichain(&self, s: &[T]) -> Result<SubsetReport<T>> {
        let set = self.subset(s)?;
        for i in set.ones() {
            for j in set.ones() {
                if i != j && self.leq_idx(i, j) {
                    return Ok(SubsetReport::fails(
                        "antichain",
                        "comparable pair",
                        Witness::Pair(self.elements[i].clone(), self.elements[j].clone()),
                    ));
                }
            }
        }
        Ok(SubsetReport::holds_for("antichain"))
    }

    pub fn is_ideal(&self, s: &[T]) -> Result<SubsetReport<T>> {
        let set = self.subset(s)?;
        Ok(self.ideal_report(&set))
    }

    pub(crate) fn ideal_report(&self, set: &FixedBitSet) -> SubsetReport<T> {
        let dc = self.downward_closed_report(set);
        if !dc.holds() {
            return dc.renamed("ideal");
        }
        self.directed_report(set).renamed("ideal")
    }

    pub(crate) fn is_ideal_idx(&self, set: &FixedBitSet) -> bool {
        set.ones().all(|i| self.down[i].is_subset(set)) && self.directed_idx(set)
    }

    /// Non-empty, downward-closed, and containing the lub of each of its
    /// chains whenever that lub exists.
    pub fn is_weak_ideal(&self, s: &[T]) -> Result<SubsetReport<T>> {
        if s.is_empty() {
            return Err(DomainError::Input("a weak ideal must be non-empty".into()));
        }
        let set = self.subset(s)?;
        let dc = self.downward_closed_report(&set);
        if !dc.holds() {
            return Ok(dc.renamed("weak-ideal"));
        }
        // A finite non-empty chain contains its own lub (its maximum), so only
        // the empty chain, whose lub is the least element, can escape.
        if let Some(b) = self.least {
            if !set.contains(b) {
                return Ok(SubsetReport::fails(
                    "weak-ideal",
                    "lub of a chain outside the set",
                    Witness::Subset(Vec::new()),
                ));
            }
        }
        Ok(SubsetReport::holds_for("weak-ideal"))
    }

    /// Every finite bounded subset has a lub.
    ///
    /// Needs a least element (the lub of the empty subset); unpointed posets
    /// are reported as not applicable. For the rest, a subset is handled by
    /// folding pairwise lubs, so checking bounded pairs is exhaustive.
    pub fn is_finitary_basis(&self) -> SubsetReport<T> {
        const NAME: &str = "finitary-basis";
        if self.least.is_none() {
            return SubsetReport::not_applicable(NAME, "poset has no least element");
        }
        let n = self.len();
        for i in 0..n {
            for j in i + 1..n {
                let mut ub = self.up[i].clone();
                ub.intersect_with(&self.up[j]);
                if !ub.is_clear() && self.minimum_idx(&ub).is_none() {
                    return SubsetReport::fails(
                        NAME,
                        "bounded subset without lub",
                        Witness::Subset(vec![self.elements[i].clone(), self.elements[j].clone()]),
                    );
                }
            }
        }
        SubsetReport::holds_for(NAME)
    }

    /// The order restricted to `s`; the result may lack a least element.
    pub fn induced_subposet(&self, s: &[T]) -> Result<Poset<T>> {
        if s.is_empty() {
            return Err(DomainError::Input("induced subposet of an empty set".into()));
        }
        let set = self.subset(s)?;
        Ok(self.induced_idx(&set, format!("{}|sub", self.name)))
    }

    pub(crate) fn induced_idx(&self, set: &FixedBitSet, name: String) -> Poset<T> {
        let elements = self.members(set);
        let n = elements.len();
        let old: Vec<usize> = set.ones().collect();
        let index = elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let mut rel = vec![FixedBitSet::with_capacity(n); n];
        for (a, &i) in old.iter().enumerate() {
            for (b, &j) in old.iter().enumerate() {
                if self.leq_idx(i, j) {
                    rel[a].insert(b);
                }
            }
        }
        Self::assemble(name, elements, index, rel)
    }

    /// Relabels elements through an injective map.
    pub fn map_elements<U: Term>(&self, f: impl Fn(&T) -> U) -> Result<Poset<U>> {
        let mapped: Vec<U> = self.elements.iter().map(&f).collect();
        let pairs: Vec<(U, U)> = self.relation().iter().map(|(a, b)| (f(a), f(b))).collect();
        let unique = sorted_unique(mapped.clone());
        if unique.len() != mapped.len() {
            return Err(DomainError::Input("relabelling is not injective".into()));
        }
        let (index, rel) = relation_matrix(&unique, &pairs, Closure::Given)?;
        Ok(Poset::assemble(self.name.clone(), unique, index, rel))
    }
}

/// A finite pointed poset: the carrier of a finitary basis.
///
/// Pointedness is enforced on construction; the lub condition is a separate
/// predicate ([`Poset::is_finitary_basis`]) so non-finitary inputs can still
/// be represented and diagnosed.
#[derive(Clone)]
pub struct FiniteBasis<T = Element> {
    poset: Poset<T>,
}

impl<T: Term> PartialEq for FiniteBasis<T> {
    fn eq(&self, other: &Self) -> bool {
        self.poset == other.poset
    }
}

impl<T: Term> Eq for FiniteBasis<T> {}

impl<T: Term> fmt::Debug for FiniteBasis<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poset.fmt(f)
    }
}

impl<T> Deref for FiniteBasis<T> {
    type Target = Poset<T>;

    fn deref(&self) -> &Poset<T> {
        &self.poset
    }
}

impl<T: Term> TryFrom<Poset<T>> for FiniteBasis<T> {
    type Error = DomainError;

    fn try_from(poset: Poset<T>) -> Result<Self> {
        if poset.least.is_none() {
            return Err(DomainError::Input(format!("`{}` has no least element", poset.name)));
        }
        Ok(FiniteBasis { poset })
    }
}

impl<T: Term> FiniteBasis<T> {
    pub fn bottom(&self) -> &T {
        &self.poset.elements[self.bottom_idx()]
    }

    pub fn bottom_idx(&self) -> usize {
        self.poset.least.expect("finite basis is pointed")
    }

    pub fn poset(&self) -> &Poset<T> {
        &self.poset
    }

    pub fn into_poset(self) -> Poset<T> {
        self.poset
    }

    pub fn with_name(self, name: impl Into<String>) -> Self {
        FiniteBasis { poset: self.poset.with_name(name) }
    }

    /// Non-bottom elements in canonical order.
    pub fn proper(&self) -> impl Iterator<Item = &T> + '_ {
        let b = self.bottom_idx();
        self.poset.elements.iter().enumerate().filter(move |(i, _)| *i != b).map(|(_, e)| e)
    }
}

/// The one-point basis `{bot}`.
pub fn one_point() -> FiniteBasis {
    FiniteBasis::try_from(Poset::from_leq("one", vec![Element::Bottom], |_, _| true)).expect("pointed")
}

/// The flat basis lifting the antichain `names` by a fresh bottom.
pub fn lift_antichain<S: AsRef<str>>(names: &[S]) -> Result<FiniteBasis> {
    if names.is_empty() {
        return Err(DomainError::Input("cannot lift an empty antichain; use one_point()".into()));
    }
    let mut atoms = Vec::with_capacity(names.len() + 1);
    for n in names {
        validate_name(n.as_ref())?;
        let a = Element::atom(n.as_ref());
        if atoms.contains(&a) {
            return Err(DomainError::Input(format!("duplicate antichain name `{}`", n.as_ref())));
        }
        atoms.push(a);
    }
    atoms.push(Element::Bottom);
    let name = format!("flat{}", names.len() + 1);
    let p = Poset::from_leq(name, atoms, |a, b| a == b || a.is_bottom());
    FiniteBasis::try_from(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn at(s: &str) -> Element {
        Element::atom(s)
    }

    pub(crate) fn diamond() -> FiniteBasis {
        let e = vec![Element::Bottom, at("a"), at("b"), at("top")];
        let r = [(Element::Bottom, at("a")), (Element::Bottom, at("b")), (at("a"), at("top")), (at("b"), at("top"))];
        FiniteBasis::try_from(Poset::from_relation("diamond", e, &r, Closure::Auto).unwrap()).unwrap()
    }

    fn butterfly() -> FiniteBasis {
        let e = vec![Element::Bottom, at("a"), at("b"), at("c"), at("d")];
        let mut r = vec![(Element::Bottom, at("a")), (Element::Bottom, at("b"))];
        for lo in ["a", "b"] {
            for hi in ["c", "d"] {
                r.push((at(lo), at(hi)));
            }
        }
        FiniteBasis::try_from(Poset::from_relation("butterfly", e, &r, Closure::Auto).unwrap()).unwrap()
    }

    fn flat3() -> FiniteBasis {
        lift_antichain(&["t", "f"]).unwrap()
    }

    #[test]
    fn partial_order_examples() {
        let r = check_partial_order(&[Element::Bottom, at("a")], &[(Element::Bottom, at("a"))], Closure::Auto).unwrap();
        assert!(r.holds());

        let rel = [(at("a"), at("b")), (at("b"), at("a")), (at("a"), at("a")), (at("b"), at("b"))];
        let r = check_partial_order(&[at("a"), at("b")], &rel, Closure::Given).unwrap();
        assert_eq!(r.violated(), Some("antisymmetry"));
        assert_eq!(r.witness(), Some(&Witness::Pair(at("a"), at("b"))));

        let r = check_partial_order(&[at("a")], &[], Closure::Given).unwrap();
        assert_eq!(r.violated(), Some("reflexivity"));
        assert_eq!(r.witness(), Some(&Witness::Element(at("a"))));

        let rel = [(at("a"), at("a")), (at("b"), at("b")), (at("c"), at("c")), (at("a"), at("b")), (at("b"), at("c"))];
        let r = check_partial_order(&[at("a"), at("b"), at("c")], &rel, Closure::Given).unwrap();
        assert_eq!(r.violated(), Some("transitivity"));
        assert_eq!(r.witness(), Some(&Witness::Triple(at("a"), at("b"), at("c"))));
    }

    #[test]
    fn closure_cannot_repair_cycles() {
        let rel = [(at("a"), at("b")), (at("b"), at("c")), (at("c"), at("a"))];
        let r = check_partial_order(&[at("a"), at("b"), at("c")], &rel, Closure::Auto).unwrap();
        assert_eq!(r.violated(), Some("antisymmetry"));
        assert!(Poset::from_relation("cyc", vec![at("a"), at("b"), at("c")], &rel, Closure::Auto).is_err());
    }

    #[test]
    fn unknown_elements_are_input_errors() {
        let err = check_partial_order(&[at("a")], &[(at("a"), at("z"))], Closure::Auto).unwrap_err();
        assert!(matches!(err, DomainError::UnknownElement(ref s) if s == "atom:z"));
        assert!(flat3().lub(&[at("zz")]).is_err());
        assert!(flat3().is_directed(&[at("zz")]).is_err());
        assert!(flat3().lower_set(&at("zz")).is_err());
    }

    #[test]
    fn lub_examples() {
        let d = diamond();
        assert_eq!(d.lub(&[at("a")]).unwrap(), Some(at("a")));
        assert_eq!(d.lub(&[at("a"), at("b")]).unwrap(), Some(at("top")));
        assert_eq!(d.lub(&[]).unwrap(), Some(Element::Bottom));
        assert_eq!(flat3().lub(&[at("t"), at("f")]).unwrap(), None);
        assert_eq!(butterfly().lub(&[at("a"), at("b")]).unwrap(), None);
    }

    #[test]
    fn boundedness_family() {
        let f = flat3();
        let r = f.is_consistent(&[at("t"), at("f")]).unwrap();
        assert!(!r.holds());
        assert_eq!(r.witness(), Some(&Witness::Subset(vec![at("f"), at("t")])));

        let d = diamond();
        assert!(d.is_bounded(&[at("a"), at("b")]).unwrap().holds());
        let r = d.is_directed(&[at("a"), at("b")]).unwrap();
        assert!(!r.holds());
        assert_eq!(r.witness(), Some(&Witness::Subset(vec![at("a"), at("b")])));
        assert!(d.is_directed(&[Element::Bottom, at("a"), at("top")]).unwrap().holds());
        assert!(!d.is_directed(&[]).unwrap().holds());
        assert!(d.is_bounded(&[]).unwrap().holds());
    }

    #[test]
    fn lower_sets_and_closure() {
        let d = diamond();
        assert_eq!(d.lower_set(&Element::Bottom).unwrap(), vec![Element::Bottom]);
        assert_eq!(d.lower_set(&at("top")).unwrap(), vec![Element::Bottom, at("a"), at("b"), at("top")]);
        let r = flat3().is_downward_closed(&[at("t")]).unwrap();
        assert_eq!(r.witness(), Some(&Witness::Pair(Element::Bottom, at("t"))));
    }

    #[test]
    fn chains_and_antichains() {
        let d = diamond();
        assert!(d.is_chain(&[Element::Bottom, at("a"), at("top")]).unwrap().holds());
        assert_eq!(d.is_chain(&[at("a"), at("b")]).unwrap().witness(), Some(&Witness::Pair(at("a"), at("b"))));
        assert!(d.is_antichain(&[at("a"), at("b")]).unwrap().holds());
        assert!(!d.is_antichain(&[at("a"), at("top")]).unwrap().holds());
    }

    #[test]
    fn ideals_and_weak_ideals() {
        let d = diamond();
        for x in d.elements().to_vec() {
            assert!(d.is_ideal(&d.lower_set(&x).unwrap()).unwrap().holds());
        }
        assert!(!d.is_ideal(&[Element::Bottom, at("a"), at("b")]).unwrap().holds());
        let f = flat3();
        assert!(f.is_weak_ideal(f.elements()).unwrap().holds());
        assert!(f.is_weak_ideal(&[]).is_err());
        assert!(!f.is_weak_ideal(&[at("t")]).unwrap().holds());
    }

    #[test]
    fn finitary_examples() {
        assert!(flat3().is_finitary_basis().holds());
        assert!(one_point().is_finitary_basis().holds());
        let r = butterfly().is_finitary_basis();
        assert_eq!(r.witness(), Some(&Witness::Subset(vec![at("a"), at("b")])));
    }

    #[test]
    fn lifting() {
        let f = lift_antichain(&["t", "f"]).unwrap();
        assert_eq!(f.len(), 3);
        assert_eq!(f.bottom(), &Element::Bottom);
        assert!(f.is_antichain(&[at("t"), at("f")]).unwrap().holds());
        let u = lift_antichain(&["u"]).unwrap();
        assert!(u.is_chain(u.elements()).unwrap().holds());
        assert!(lift_antichain::<&str>(&[]).is_err());
        assert!(lift_antichain(&["x", "x"]).is_err());
    }

    #[test]
    fn induced_subposets() {
        let d = diamond();
        assert_eq!(d.induced_subposet(d.elements()).unwrap(), *d.poset());
        let c = d.induced_subposet(&[Element::Bottom, at("a"), at("top")]).unwrap();
        assert!(c.is_chain(c.elements()).unwrap().holds());
        let disc = flat3().induced_subposet(&[at("t"), at("f")]).unwrap();
        assert!(disc.least().is_none());
        assert!(!disc.is_finitary_basis().is_applicable());
        assert!(FiniteBasis::try_from(disc).is_err());
    }

    #[test]
    fn covers_of_diamond() {
        assert_eq!(diamond().covers().len(), 4);
        assert_eq!(flat3().covers().len(), 2);
        assert!(one_point().covers().is_empty());
    }
}
