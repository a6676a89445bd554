//! Domain constructors on finite bases: coalesced sum, strict product,
//! (strict) function space, bounded strict sequences, and records.
//!
//! Every constructor keeps its operands' element terms inside its own terms
//! (`inl`, `inr`, `pair`, `seq`, `rec`, `am`), so feeding a subdomain of an
//! operand yields a subdomain of the result.

use std::collections::{BTreeMap, BTreeSet};

use crate::basis::{FiniteBasis, Poset};
use crate::element::{validate_name, Element};
use crate::error::{CapKind, DomainError, Result};
use crate::mappings::{for_each_monotone, generators_of};

/// How records compare.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RecordOrdering {
    /// `r1 ⊑ r2` iff `keys(r1) ⊆ keys(r2)` and values agree pointwise; an
    /// absent label reads as bottom.
    #[default]
    Pointwise,
    /// Non-empty records compare only when they have the same keys.
    EqualKeys,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConstructorParams {
    /// Longest sequence kept by [`kleene_star`].
    pub max_seq_len: usize,
    /// Largest universe any constructor may produce.
    pub cardinality_cap: usize,
    pub record_ordering: RecordOrdering,
}

impl Default for ConstructorParams {
    fn default() -> Self {
        ConstructorParams { max_seq_len: 2, cardinality_cap: 10_000, record_ordering: RecordOrdering::Pointwise }
    }
}

impl ConstructorParams {
    fn guard(&self, needed: u128, step: &str) -> Result<()> {
        if needed > self.cardinality_cap as u128 {
            return Err(DomainError::cap(CapKind::Cardinality, needed, self.cardinality_cap as u128).in_context(step));
        }
        Ok(())
    }
}

fn pointed(p: Poset) -> FiniteBasis {
    FiniteBasis::try_from(p).expect("constructors produce pointed posets")
}

fn proper_indices(b: &FiniteBasis) -> Vec<usize> {
    (0..b.len()).filter(|&i| i != b.bottom_idx()).collect()
}

/// `A + B`: bottoms identified, non-bottom elements tagged `inl` / `inr`.
pub fn coalesced_sum(a: &FiniteBasis, b: &FiniteBasis, params: &ConstructorParams) -> Result<FiniteBasis> {
    params.guard(a.len() as u128 + b.len() as u128 - 1, "sum")?;
    // (tag, index in operand); tag 0 is the shared bottom
    let mut src = vec![(0u8, 0usize)];
    let mut elements = vec![Element::Bottom];
    for i in proper_indices(a) {
        src.push((1, i));
        elements.push(Element::inl(a.element(i).clone()));
    }
    for j in proper_indices(b) {
        src.push((2, j));
        elements.push(Element::inr(b.element(j).clone()));
    }
    let p = Poset::from_indexed_leq(format!("({}+{})", a.name(), b.name()), elements, |x, y| match (src[x], src[y]) {
        ((0, _), _) => true,
        ((1, i), (1, k)) => a.leq_idx(i, k),
        ((2, j), (2, k)) => b.leq_idx(j, k),
        _ => false,
    });
    Ok(pointed(p))
}

/// The copy of `a` inside `a + _`: bottom plus `inl` of each non-bottom element.
pub fn left_injection(a: &FiniteBasis) -> FiniteBasis {
    tagged_copy(a, Element::inl, "inl")
}

/// The copy of `b` inside `_ + b`.
pub fn right_injection(b: &FiniteBasis) -> FiniteBasis {
    tagged_copy(b, Element::inr, "inr")
}

fn tagged_copy(a: &FiniteBasis, tag: fn(Element) -> Element, name: &str) -> FiniteBasis {
    let bot = a.bottom_idx();
    let elements = (0..a.len()).map(|i| if i == bot { Element::Bottom } else { tag(a.element(i).clone()) }).collect();
    pointed(Poset::from_indexed_leq(format!("{name}({})", a.name()), elements, |i, k| a.leq_idx(i, k)))
}

/// `A × B` (smash product): pairs of non-bottom elements plus a shared bottom.
pub fn strict_product(a: &FiniteBasis, b: &FiniteBasis, params: &ConstructorParams) -> Result<FiniteBasis> {
    params.guard((a.len() as u128 - 1) * (b.len() as u128 - 1) + 1, "product")?;
    let mut src = vec![None];
    let mut elements = vec![Element::Bottom];
    for i in proper_indices(a) {
        for j in proper_indices(b) {
            src.push(Some((i, j)));
            elements.push(Element::pair(a.element(i).clone(), b.element(j).clone()));
        }
    }
    let p = Poset::from_indexed_leq(format!("({}x{})", a.name(), b.name()), elements, |x, y| match (src[x], src[y]) {
        (None, _) => true,
        (Some(_), None) => false,
        (Some((i1, j1)), Some((i2, j2))) => a.leq_idx(i1, i2) && b.leq_idx(j1, j2),
    });
    Ok(pointed(p))
}

/// Strict continuous functions `A ⊸→ B`: approximable mappings sending only
/// bottom to bottom, ordered by pair-set inclusion.
pub fn strict_fun(a: &FiniteBasis, b: &FiniteBasis, params: &ConstructorParams) -> Result<FiniteBasis> {
    function_space(a, b, true, params)
}

/// All (or, with `strict`, all strict) approximable mappings from `a` to `b`,
/// named by their `am{...}` generator terms.
pub fn function_space(a: &FiniteBasis, b: &FiniteBasis, strict: bool, params: &ConstructorParams) -> Result<FiniteBasis> {
    for side in [a, b] {
        if !side.is_finitary_basis().holds() {
            return Err(DomainError::Precondition(format!("`{}` is not a finitary basis", side.name())));
        }
    }
    let cap = params.cardinality_cap;
    let mut maps: Vec<Vec<usize>> = Vec::new();
    for_each_monotone(a, b, strict, |pts| {
        if maps.len() == cap {
            return Err(DomainError::cap(CapKind::Cardinality, cap as u128 + 1, cap as u128).in_context("fun"));
        }
        maps.push(pts.to_vec());
        Ok(())
    })?;
    let elements: Vec<Element> = maps.iter().map(|pts| Element::Am(generators_of(a, b, pts))).collect();
    let arrow = if strict { "-o>" } else { "->" };
    let p = Poset::from_indexed_leq(format!("({}{arrow}{})", a.name(), b.name()), elements, |x, y| {
        maps[x].iter().zip(&maps[y]).all(|(&f, &g)| b.leq_idx(f, g))
    });
    Ok(pointed(p))
}

/// `D*` truncated at `max_len`: bottom plus sequences of non-bottom elements;
/// sequences compare only at equal length, pointwise.
pub fn kleene_star(d: &FiniteBasis, params: &ConstructorParams) -> Result<FiniteBasis> {
    let proper = proper_indices(d);
    let p = proper.len() as u128;
    let mut needed: u128 = 1;
    let mut layer: u128 = 1;
    for _ in 0..=params.max_seq_len {
        needed = needed.saturating_add(layer);
        layer = layer.saturating_mul(p);
        if needed > params.cardinality_cap as u128 || (p == 0 && layer == 0) {
            break;
        }
    }
    params.guard(needed, "star")?;

    let mut seqs: Vec<Vec<usize>> = vec![Vec::new()];
    let mut frontier: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..params.max_seq_len {
        let next: Vec<Vec<usize>> = frontier
            .iter()
            .flat_map(|s| proper.iter().map(move |&x| s.iter().copied().chain([x]).collect()))
            .collect();
        if next.is_empty() {
            break;
        }
        seqs.extend(next.iter().cloned());
        frontier = next;
    }
    let mut elements = vec![Element::Bottom];
    elements.extend(seqs.iter().map(|s| Element::Seq(s.iter().map(|&i| d.element(i).clone()).collect())));
    let p = Poset::from_indexed_leq(format!("{}*{}", d.name(), params.max_seq_len), elements, |x, y| {
        if x == 0 {
            return true;
        }
        if y == 0 {
            return false;
        }
        let (u, v) = (&seqs[x - 1], &seqs[y - 1]);
        u.len() == v.len() && u.iter().zip(v).all(|(&i, &k)| d.leq_idx(i, k))
    });
    Ok(pointed(p))
}

/// `L ⊸ M`: finite maps from subsets of `labels` to non-bottom elements of
/// `m`. The empty record is bottom.
pub fn record_basis(labels: &BTreeSet<String>, m: &FiniteBasis, params: &ConstructorParams) -> Result<FiniteBasis> {
    for l in labels {
        validate_name(l)?;
    }
    let mut needed: u128 = 1;
    for _ in labels {
        needed = needed.saturating_mul(m.len() as u128);
    }
    params.guard(needed, "rec")?;

    let proper = proper_indices(m);
    // each record as (label position -> index in m), absent = None
    let mut recs: Vec<Vec<Option<usize>>> = vec![Vec::new()];
    for _ in labels {
        recs = recs
            .into_iter()
            .flat_map(|r| {
                std::iter::once(None).chain(proper.iter().map(|&i| Some(i))).map(move |v| {
                    let mut r = r.clone();
                    r.push(v);
                    r
                })
            })
            .collect();
    }
    let label_list: Vec<&String> = labels.iter().collect();
    let elements = recs
        .iter()
        .map(|r| {
            let map: BTreeMap<String, Element> = r
                .iter()
                .enumerate()
                .filter_map(|(k, v)| v.map(|i| (label_list[k].clone(), m.element(i).clone())))
                .collect();
            Element::Rec(map)
        })
        .collect();
    let ordering = params.record_ordering;
    let name = format!("(L{}-o{})", labels.len(), m.name());
    let p = Poset::from_indexed_leq(name, elements, |x, y| {
        let (r1, r2) = (&recs[x], &recs[y]);
        let pointwise = r1.iter().zip(r2).all(|(v1, v2)| match (v1, v2) {
            (None, _) => true,
            (Some(_), None) => false,
            (Some(i), Some(k)) => m.leq_idx(*i, *k),
        });
        match ordering {
            RecordOrdering::Pointwise => pointwise,
            RecordOrdering::EqualKeys => {
                r1.iter().all(Option::is_none)
                    || (pointwise && r1.iter().zip(r2).all(|(v1, v2)| v1.is_some() == v2.is_some()))
            }
        }
    });
    Ok(pointed(p))
}
