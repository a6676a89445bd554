//! Ideals, ideal completion, finite elements, isomorphism, and the domain and
//! subdomain predicates.

use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Serialize, Serializer};

use crate::basis::{FiniteBasis, Poset, Term};
use crate::element::Element;
use crate::error::{CapKind, DomainError, Result};
use crate::report::{SubsetReport, Witness};
use crate::Limits;

/// A downward-closed directed subset of a host basis, as its sorted members.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ideal<T = Element> {
    members: Vec<T>,
}

impl<T: Term> Ideal<T> {
    /// Wraps a member list without checking it; see [`Poset::is_ideal`].
    pub fn from_members(mut members: Vec<T>) -> Self {
        members.sort();
        members.dedup();
        Ideal { members }
    }

    pub fn members(&self) -> &[T] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, e: &T) -> bool {
        self.members.binary_search(e).is_ok()
    }

    pub fn is_subset(&self, other: &Ideal<T>) -> bool {
        self.members.iter().all(|m| other.contains(m))
    }
}

impl<T: fmt::Display> fmt::Display for Ideal<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, m) in self.members.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{m}")?;
        }
        f.write_str("}")
    }
}

impl<T: fmt::Display> Serialize for Ideal<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.members.iter().map(ToString::to_string))
    }
}

/// How [`enumerate_ideals`] finds ideals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IdealScan {
    /// One lower set per element. Complete for finite finitary bases.
    #[default]
    Principal,
    /// Every subset tested against the ideal predicate (capped).
    Exhaustive,
}

/// All ideals of `basis`, sorted.
pub fn enumerate_ideals<T: Term>(basis: &FiniteBasis<T>, scan: IdealScan, limits: &Limits) -> Result<Vec<Ideal<T>>> {
    let sets = ideal_sets(basis, scan, limits)?;
    let mut out: Vec<Ideal<T>> = sets.iter().map(|s| Ideal::from_members(basis.members(s))).collect();
    out.sort();
    Ok(out)
}

fn ideal_sets<T: Term>(basis: &FiniteBasis<T>, scan: IdealScan, limits: &Limits) -> Result<Vec<FixedBitSet>> {
    match scan {
        IdealScan::Principal => Ok((0..basis.len()).map(|i| basis.down_set(i).clone()).collect()),
        IdealScan::Exhaustive => {
            let n = basis.len();
            limits.check_subset_scan(n)?;
            Ok(subsets(n).filter(|s| basis.is_ideal_idx(s)).collect())
        }
    }
}

/// Iterates all subsets of `0..n` as bitsets, in mask order.
pub(crate) fn subsets(n: usize) -> impl Iterator<Item = FixedBitSet> {
    (0u64..(1u64 << n)).map(move |mask| {
        let mut s = FixedBitSet::with_capacity(n);
        for i in 0..n {
            if mask >> i & 1 == 1 {
                s.insert(i);
            }
        }
        s
    })
}

/// The lower set of `x`, as an ideal.
pub fn principal_ideal<T: Term>(basis: &FiniteBasis<T>, x: &T) -> Result<Ideal<T>> {
    Ok(Ideal::from_members(basis.lower_set(x)?))
}

/// The domain determined by a finitary basis: its ideals ordered by inclusion.
#[derive(Clone)]
pub struct CompletedDomain<T = Element> {
    host: FiniteBasis<T>,
    domain: FiniteBasis<Ideal<T>>,
}

impl<T: Term> fmt::Debug for CompletedDomain<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CompletedDomain").field("host", &self.host).field("ideals", &self.domain.len()).finish()
    }
}

impl<T: Term> PartialEq for CompletedDomain<T> {
    fn eq(&self, other: &Self) -> bool {
        self.host == other.host
    }
}

impl<T: Term> Eq for CompletedDomain<T> {}

pub fn ideal_completion<T: Term>(basis: &FiniteBasis<T>) -> Result<CompletedDomain<T>> {
    let report = basis.is_finitary_basis();
    if !report.holds() {
        return Err(DomainError::Precondition(format!("`{}` is not a finitary basis", basis.name())));
    }
    let ideals = enumerate_ideals(basis, IdealScan::Principal, &Limits::default())?;
    let poset = Poset::from_leq(format!("ideals({})", basis.name()), ideals, |a, b| a.is_subset(b));
    Ok(CompletedDomain { host: basis.clone(), domain: FiniteBasis::try_from(poset)? })
}

impl<T: Term> CompletedDomain<T> {
    pub fn host(&self) -> &FiniteBasis<T> {
        &self.host
    }

    /// The completion as a pointed poset of ideals.
    pub fn domain(&self) -> &FiniteBasis<Ideal<T>> {
        &self.domain
    }

    pub fn ideals(&self) -> &[Ideal<T>] {
        self.domain.elements()
    }

    pub fn len(&self) -> usize {
        self.domain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.domain.is_empty()
    }

    /// Index of `ideal` in [`Self::ideals`].
    pub fn position(&self, ideal: &Ideal<T>) -> Option<usize> {
        self.domain.index_of(ideal)
    }

    pub fn principal(&self, x: &T) -> Result<usize> {
        let ideal = principal_ideal(&self.host, x)?;
        Ok(self.position(&ideal).expect("principal ideals are enumerated"))
    }

    pub fn bottom(&self) -> &Ideal<T> {
        self.domain.bottom()
    }

    /// Cpo check using the structure of completions: every ideal of a finite
    /// basis contains its own lub, so a non-empty directed family of ideals
    /// has a largest member equal to its union, and the empty family needs
    /// the bottom ideal.
    pub fn is_cpo(&self) -> SubsetReport<Ideal<T>> {
        for ideal in self.ideals() {
            let set = self.host.subset(ideal.members()).expect("members of host");
            if self.host.maximum_idx(&set).is_none() {
                return SubsetReport::fails("cpo", "non-principal ideal", Witness::Element(ideal.clone()));
            }
        }
        SubsetReport::holds_for("cpo")
    }
}

/// Every directed subset (the empty one included) has a lub.
///
/// Scans all `2^n` subsets.
pub fn check_cpo<T: Term>(poset: &Poset<T>, limits: &Limits) -> Result<SubsetReport<T>> {
    limits.check_subset_scan(poset.len())?;
    if poset.least_idx().is_none() {
        return Ok(SubsetReport::fails("cpo", "empty directed subset has no lub", Witness::Subset(Vec::new())));
    }
    for s in subsets(poset.len()).skip(1) {
        if poset.directed_idx(&s) && poset.lub_idx(&s).is_none() {
            return Ok(SubsetReport::fails("cpo", "directed subset without lub", Witness::Subset(poset.members(&s))));
        }
    }
    Ok(SubsetReport::holds_for("cpo"))
}

/// Ideals `d` lying in every directed family of ideals whose union is `d`.
pub fn finite_elements<T: Term>(completed: &CompletedDomain<T>, limits: &Limits) -> Result<Vec<Ideal<T>>> {
    let m = completed.len();
    limits.check_subset_scan(m)?;
    let host = completed.host();
    let sets: Vec<FixedBitSet> =
        completed.ideals().iter().map(|i| host.subset(i.members()).expect("members of host")).collect();
    let dom = completed.domain();
    let mut finite = vec![true; m];
    for family in subsets(m).skip(1) {
        if !dom.directed_idx(&family) {
            continue;
        }
        let mut union = host.empty_set();
        for k in family.ones() {
            union.union_with(&sets[k]);
        }
        if let Some(d) = sets.iter().position(|s| *s == union) {
            if !family.contains(d) {
                finite[d] = false;
            }
        }
    }
    Ok((0..m).filter(|&d| finite[d]).map(|d| completed.ideals()[d].clone()).collect())
}

/// Finite elements of an arbitrary finite cpo, using the poset's own lubs.
pub fn finite_elements_of<T: Term>(poset: &Poset<T>, limits: &Limits) -> Result<Vec<T>> {
    let n = poset.len();
    limits.check_subset_scan(n)?;
    let mut finite = vec![true; n];
    for s in subsets(n).skip(1) {
        if !poset.directed_idx(&s) {
            continue;
        }
        if let Some(d) = poset.lub_idx(&s) {
            if !s.contains(d) {
                finite[d] = false;
            }
        }
    }
    Ok((0..n).filter(|&d| finite[d]).map(|d| poset.element(d).clone()).collect())
}

/// An order isomorphism, as the image of each element of the left poset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoWitness<A = Element, B = Element> {
    pub mapping: Vec<(A, B)>,
}

impl<A: Term, B: Term> IsoWitness<A, B> {
    /// Re-checks bijectivity and order preservation in both directions.
    pub fn verify(&self, left: &Poset<A>, right: &Poset<B>) -> bool {
        if self.mapping.len() != left.len() || left.len() != right.len() {
            return false;
        }
        let mut image = vec![usize::MAX; left.len()];
        let mut hit = right.empty_set();
        for (a, b) in &self.mapping {
            let (Some(i), Some(j)) = (left.index_of(a), right.index_of(b)) else {
                return false;
            };
            if image[i] != usize::MAX || hit.contains(j) {
                return false;
            }
            image[i] = j;
            hit.insert(j);
        }
        (0..left.len())
            .all(|i| (0..left.len()).all(|k| left.leq_idx(i, k) == right.leq_idx(image[i], image[k])))
    }

    pub fn inverse(&self) -> IsoWitness<B, A> {
        let mut mapping: Vec<(B, A)> = self.mapping.iter().map(|(a, b)| (b.clone(), a.clone())).collect();
        mapping.sort();
        IsoWitness { mapping }
    }
}

/// (height, strict predecessors, strict successors)
fn signatures<T: Term>(p: &Poset<T>) -> Vec<(usize, usize, usize)> {
    let mut height = vec![0usize; p.len()];
    for i in p.linear_extension() {
        height[i] = p.down_set(i).ones().filter(|&j| j != i).map(|j| height[j] + 1).max().unwrap_or(0);
    }
    (0..p.len())
        .map(|i| (height[i], p.down_set(i).count_ones(..) - 1, p.up_set(i).count_ones(..) - 1))
        .collect()
}

/// Finds an order isomorphism between two finite posets by backtracking over
/// signature-compatible candidates.
pub fn check_isomorphic<A: Term, B: Term>(
    left: &Poset<A>,
    right: &Poset<B>,
    limits: &Limits,
) -> Result<Option<IsoWitness<A, B>>> {
    let n = left.len();
    if n.max(right.len()) > limits.iso_elements {
        return Err(DomainError::cap(CapKind::Isomorphism, n.max(right.len()) as u128, limits.iso_elements as u128));
    }
    if n != right.len() {
        return Ok(None);
    }
    let ls = signatures(left);
    let rs = signatures(right);
    let mut lsorted = ls.clone();
    let mut rsorted = rs.clone();
    lsorted.sort();
    rsorted.sort();
    if lsorted != rsorted {
        return Ok(None);
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (ls[i], left.rank(i)));
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];

    #[allow(clippy::too_many_arguments)]
    fn search<A: Term, B: Term>(
        depth: usize,
        order: &[usize],
        ls: &[(usize, usize, usize)],
        rs: &[(usize, usize, usize)],
        left: &Poset<A>,
        right: &Poset<B>,
        image: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        let Some(&i) = order.get(depth) else {
            return true;
        };
        for j in 0..rs.len() {
            if used[j] || rs[j] != ls[i] {
                continue;
            }
            let consistent = order[..depth].iter().all(|&k| {
                let jk = image[k];
                left.leq_idx(i, k) == right.leq_idx(j, jk) && left.leq_idx(k, i) == right.leq_idx(jk, j)
            });
            if !consistent {
                continue;
            }
            image[i] = j;
            used[j] = true;
            if search(depth + 1, order, ls, rs, left, right, image, used) {
                return true;
            }
            used[j] = false;
            image[i] = usize::MAX;
        }
        false
    }

    if !search(0, &order, &ls, &rs, left, right, &mut image, &mut used) {
        return Ok(None);
    }
    let mapping = (0..n).map(|i| (left.element(i).clone(), right.element(image[i]).clone())).collect();
    Ok(Some(IsoWitness { mapping }))
}

/// A cpo whose finite elements form a finitary basis and which is isomorphic
/// to the completion of that basis.
pub fn check_domain<T: Term>(poset: &Poset<T>, limits: &Limits) -> Result<SubsetReport<T>> {
    const NAME: &str = "domain";
    let cpo = check_cpo(poset, limits)?;
    if !cpo.holds() {
        return Ok(cpo.renamed(NAME));
    }
    let finite = finite_elements_of(poset, limits)?;
    let basis_poset = poset.induced_subposet(&finite)?;
    let fin = basis_poset.is_finitary_basis();
    if !fin.holds() {
        return Ok(match fin.witness() {
            Some(w) => SubsetReport::fails(NAME, "finite elements are not a finitary basis", w.clone()),
            None => SubsetReport::fails(NAME, "finite elements are not pointed", Witness::Subset(finite)),
        });
    }
    let basis = FiniteBasis::try_from(basis_poset)?;
    let completed = ideal_completion(&basis)?;
    match check_isomorphic(poset, completed.domain(), limits)? {
        Some(_) => Ok(SubsetReport::holds_for(NAME)),
        None => Ok(SubsetReport::fails(
            NAME,
            "not isomorphic to the completion of its finite elements",
            Witness::Subset(finite),
        )),
    }
}

/// The four subdomain clauses: universe inclusion, shared bottom, restricted
/// order, restricted binary lubs.
pub fn check_subdomain<T: Term>(d: &FiniteBasis<T>, e: &FiniteBasis<T>) -> SubsetReport<T> {
    const NAME: &str = "subdomain";
    let mut emb = Vec::with_capacity(d.len());
    for x in d.elements() {
        match e.index_of(x) {
            Some(j) => emb.push(j),
            None => return SubsetReport::fails(NAME, "clause 1: universe inclusion", Witness::Element(x.clone())),
        }
    }
    if d.bottom() != e.bottom() {
        return SubsetReport::fails(
            NAME,
            "clause 2: same bottom",
            Witness::Pair(d.bottom().clone(), e.bottom().clone()),
        );
    }
    let n = d.len();
    for i in 0..n {
        for k in 0..n {
            if d.leq_idx(i, k) != e.leq_idx(emb[i], emb[k]) {
                return SubsetReport::fails(
                    NAME,
                    "clause 3: restricted order",
                    Witness::Pair(d.element(i).clone(), d.element(k).clone()),
                );
            }
        }
    }
    for i in 0..n {
        for k in i + 1..n {
            let in_d = d.lub2_idx(i, k).map(|x| d.element(x));
            let in_e = e.lub2_idx(emb[i], emb[k]).map(|x| e.element(x)).filter(|x| d.contains(x));
            if in_d != in_e {
                let third = in_d.or(in_e).expect("at least one side defined").clone();
                return SubsetReport::fails(
                    NAME,
                    "clause 4: restricted lubs",
                    Witness::Triple(d.element(i).clone(), d.element(k).clone(), third),
                );
            }
        }
    }
    SubsetReport::holds_for(NAME)
}
