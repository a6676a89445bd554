//! Brute-force oracles and generators shared by the integration tests.
//!
//! The oracles work on plain boolean matrices and follow the definitions
//! literally (all subsets, all relations, all functions); they use nothing
//! from the library except to read a basis's order out as a matrix.

#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::BTreeSet;

use domkit::{Closure, Element, FiniteBasis, Poset};
use rand::Rng;

/// A finite relation as a matrix: `leq[i][j]` means `i ⊑ j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat {
    pub leq: Vec<Vec<bool>>,
}

impl Mat {
    pub fn n(&self) -> usize {
        self.leq.len()
    }

    pub fn of(p: &Poset) -> Mat {
        let n = p.len();
        Mat { leq: (0..n).map(|i| (0..n).map(|j| p.leq_idx(i, j)).collect()).collect() }
    }

    pub fn le(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    pub fn members(mask: u64) -> impl Iterator<Item = usize> {
        (0..64).filter(move |i| mask >> i & 1 == 1)
    }

    pub fn upper_bounds(&self, mask: u64) -> Vec<usize> {
        (0..self.n()).filter(|&u| Self::members(mask).all(|x| self.le(x, u))).collect()
    }

    /// Least element of a set of indices, if any.
    pub fn least_of(&self, set: &[usize]) -> Option<usize> {
        set.iter().copied().find(|&c| set.iter().all(|&d| self.le(c, d)))
    }

    pub fn lub(&self, mask: u64) -> Option<usize> {
        self.least_of(&self.upper_bounds(mask))
    }

    pub fn bottom(&self) -> Option<usize> {
        let all: Vec<usize> = (0..self.n()).collect();
        self.least_of(&all)
    }

    pub fn full(&self) -> u64 {
        (1u64 << self.n()) - 1
    }
}

/// First failing axiom in the order reflexivity, antisymmetry, transitivity.
pub fn po_oracle(leq: &[Vec<bool>]) -> Option<&'static str> {
    let n = leq.len();
    if (0..n).any(|i| !leq[i][i]) {
        return Some("reflexivity");
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && leq[i][j] && leq[j][i] {
                return Some("antisymmetry");
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if leq[i][j] && leq[j][k] && !leq[i][k] {
                    return Some("transitivity");
                }
            }
        }
    }
    None
}

/// Reflexive-transitive closure (Warshall).
pub fn closure_oracle(leq: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let n = leq.len();
    let mut c = leq.to_vec();
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if c[i][k] && c[k][j] {
                    c[i][j] = true;
                }
            }
        }
    }
    c
}

fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut sub = mask;
    let mut done = false;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let s = sub;
        if sub == 0 {
            done = true;
        } else {
            sub = (sub - 1) & mask;
        }
        Some(s)
    })
}

pub fn downward_closed_oracle(m: &Mat, mask: u64) -> bool {
    Mat::members(mask).all(|x| (0..m.n()).all(|y| !m.le(y, x) || mask >> y & 1 == 1))
}

/// Every finite subset (the empty one included) has an upper bound inside.
pub fn directed_oracle(m: &Mat, mask: u64) -> bool {
    submasks(mask).all(|s| m.upper_bounds(s).iter().any(|&u| mask >> u & 1 == 1))
}

pub fn ideal_oracle(m: &Mat, mask: u64) -> bool {
    downward_closed_oracle(m, mask) && directed_oracle(m, mask)
}

pub fn ideals_oracle(m: &Mat) -> Vec<u64> {
    (0..=m.full()).filter(|&s| ideal_oracle(m, s)).collect()
}

/// Pointed, and every subset with an upper bound has a lub.
pub fn finitary_oracle(m: &Mat) -> bool {
    m.bottom().is_some() && (0..=m.full()).all(|s| m.upper_bounds(s).is_empty() || m.lub(s).is_some())
}

/// Pairs `i < j` with nothing strictly between.
pub fn covers_oracle(m: &Mat) -> BTreeSet<(usize, usize)> {
    let n = m.n();
    let mut out = BTreeSet::new();
    for i in 0..n {
        for j in 0..n {
            if i != j && m.le(i, j) && !(0..n).any(|k| k != i && k != j && m.le(i, k) && m.le(k, j)) {
                out.insert((i, j));
            }
        }
    }
    out
}

/// Does the relation `r[a][b]` satisfy the four mapping conditions?
pub fn am_oracle(a: &Mat, b: &Mat, r: &[Vec<bool>]) -> bool {
    let (ba, bb) = (a.bottom().unwrap(), b.bottom().unwrap());
    if !r[ba][bb] {
        return false;
    }
    for x in 0..a.n() {
        for y in 0..b.n() {
            if !r[x][y] {
                continue;
            }
            if (0..b.n()).any(|y2| b.le(y2, y) && !r[x][y2]) {
                return false;
            }
            for y2 in 0..b.n() {
                if r[x][y2] {
                    match b.lub(1 << y | 1 << y2) {
                        Some(l) if r[x][l] => {}
                        _ => return false,
                    }
                }
            }
            if (0..a.n()).any(|x2| a.le(x, x2) && !r[x2][y]) {
                return false;
            }
        }
    }
    true
}

/// Every relation between `a` and `b` passing [`am_oracle`].
pub fn ams_oracle(a: &Mat, b: &Mat) -> Vec<Vec<Vec<bool>>> {
    let (n, m) = (a.n(), b.n());
    assert!(n * m <= 24, "relation space too large for the oracle");
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << (n * m)) {
        let r: Vec<Vec<bool>> = (0..n).map(|x| (0..m).map(|y| mask >> (x * m + y) & 1 == 1).collect()).collect();
        if am_oracle(a, b, &r) {
            out.push(r);
        }
    }
    out
}

/// Number of continuous functions between the ideal completions, by scanning
/// every function between the ideal sets.
pub fn continuous_count_oracle(a: &Mat, b: &Mat) -> usize {
    let ia = ideals_oracle(a);
    let ib = ideals_oracle(b);
    let (p, q) = (ia.len(), ib.len());
    let subset = |x: u64, y: u64| x & !y == 0;
    let index_b = |mask: u64| ib.iter().position(|&i| i == mask);
    // non-empty directed families of source ideals, with their unions
    let mut families = Vec::new();
    for fam in 1u64..(1u64 << p) {
        let members: Vec<usize> = Mat::members(fam).collect();
        let directed = members
            .iter()
            .all(|&x| members.iter().all(|&y| members.iter().any(|&z| subset(ia[x] | ia[y], ia[z]))));
        if directed {
            let union = members.iter().fold(0, |acc, &k| acc | ia[k]);
            let u = ia.iter().position(|&i| i == union).expect("directed union of ideals is an ideal");
            families.push((members, u));
        }
    }
    let mut count = 0;
    let mut f = vec![0usize; p];
    loop {
        let monotone = (0..p).all(|x| (0..p).all(|y| !subset(ia[x], ia[y]) || subset(ib[f[x]], ib[f[y]])));
        if monotone {
            let continuous = families.iter().all(|(members, u)| {
                let joined = members.iter().fold(0, |acc, &k| acc | ib[f[k]]);
                index_b(joined) == Some(f[*u])
            });
            if continuous {
                count += 1;
            }
        }
        let mut k = 0;
        while k < p {
            f[k] += 1;
            if f[k] < q {
                break;
            }
            f[k] = 0;
            k += 1;
        }
        if k == p {
            break;
        }
    }
    count
}

// ---- constructor oracles (orders built straight from the definitions) ----

pub fn sum_oracle(a: &Mat, b: &Mat) -> Mat {
    let (ba, bb) = (a.bottom().unwrap(), b.bottom().unwrap());
    let mut elems: Vec<(u8, usize)> = vec![(0, 0)];
    elems.extend((0..a.n()).filter(|&i| i != ba).map(|i| (1, i)));
    elems.extend((0..b.n()).filter(|&i| i != bb).map(|i| (2, i)));
    let leq = elems
        .iter()
        .map(|&(s, x)| {
            elems
                .iter()
                .map(|&(t, y)| match (s, t) {
                    (0, _) => true,
                    (1, 1) => a.le(x, y),
                    (2, 2) => b.le(x, y),
                    _ => false,
                })
                .collect()
        })
        .collect();
    Mat { leq }
}

pub fn product_oracle(a: &Mat, b: &Mat) -> Mat {
    let (ba, bb) = (a.bottom().unwrap(), b.bottom().unwrap());
    let mut elems: Vec<Option<(usize, usize)>> = vec![None];
    for x in (0..a.n()).filter(|&x| x != ba) {
        for y in (0..b.n()).filter(|&y| y != bb) {
            elems.push(Some((x, y)));
        }
    }
    let leq = elems
        .iter()
        .map(|s| {
            elems
                .iter()
                .map(|t| match (s, t) {
                    (None, _) => true,
                    (Some(_), None) => false,
                    (Some((x1, y1)), Some((x2, y2))) => a.le(*x1, *x2) && b.le(*y1, *y2),
                })
                .collect()
        })
        .collect();
    Mat { leq }
}

/// Bottom plus sequences of proper elements of length `0..=k`; equal
/// lengths compare pointwise.
pub fn star_oracle(d: &Mat, k: usize) -> Mat {
    let bot = d.bottom().unwrap();
    let proper: Vec<usize> = (0..d.n()).filter(|&i| i != bot).collect();
    let mut seqs: Vec<Vec<usize>> = vec![vec![]];
    let mut layer: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..k {
        layer = layer
            .iter()
            .flat_map(|s| proper.iter().map(move |&x| [s.clone(), vec![x]].concat()))
            .collect();
        seqs.extend(layer.iter().cloned());
    }
    let mut elems: Vec<Option<Vec<usize>>> = vec![None];
    elems.extend(seqs.into_iter().map(Some));
    let leq = elems
        .iter()
        .map(|s| {
            elems
                .iter()
                .map(|t| match (s, t) {
                    (None, _) => true,
                    (Some(_), None) => false,
                    (Some(u), Some(v)) => u.len() == v.len() && u.iter().zip(v).all(|(&x, &y)| d.le(x, y)),
                })
                .collect()
        })
        .collect();
    Mat { leq }
}

/// Strict mappings (only bottom above bottom), ordered by inclusion.
pub fn strict_fun_oracle(a: &Mat, b: &Mat) -> Mat {
    let (ba, bb) = (a.bottom().unwrap(), b.bottom().unwrap());
    let rels: Vec<Vec<Vec<bool>>> =
        ams_oracle(a, b).into_iter().filter(|r| (0..b.n()).all(|y| r[ba][y] == (y == bb))).collect();
    let incl = |r: &Vec<Vec<bool>>, s: &Vec<Vec<bool>>| {
        r.iter().zip(s).all(|(x, y)| x.iter().zip(y).all(|(&p, &q)| !p || q))
    };
    Mat { leq: rels.iter().map(|r| rels.iter().map(|s| incl(r, s)).collect()).collect() }
}

/// Total maps from `labels` labels into `m` (bottom meaning "absent"),
/// pointwise.
pub fn rec_oracle(labels: usize, m: &Mat) -> Mat {
    let n = m.n();
    let total = n.pow(labels as u32);
    let digits = |mut v: usize| -> Vec<usize> {
        (0..labels)
            .map(|_| {
                let d = v % n;
                v /= n;
                d
            })
            .collect()
    };
    let maps: Vec<Vec<usize>> = (0..total).map(digits).collect();
    Mat {
        leq: maps.iter().map(|f| maps.iter().map(|g| f.iter().zip(g).all(|(&x, &y)| m.le(x, y))).collect()).collect(),
    }
}

/// `O_{i+1} = B + L ⊸ (O_i* ⊸→ O_i)` from the one-point basis, all by the
/// oracles above. Returns the sizes of `O_0..O_iters`.
pub fn coop_sizes_oracle(base: &Mat, labels: usize, max_seq_len: usize, iters: usize) -> Vec<usize> {
    let mut o = Mat { leq: vec![vec![true]] };
    let mut sizes = vec![o.n()];
    for _ in 0..iters {
        let m = strict_fun_oracle(&star_oracle(&o, max_seq_len), &o);
        let r = rec_oracle(labels, &m);
        o = sum_oracle(base, &r);
        sizes.push(o.n());
    }
    sizes
}

/// Order-isomorphism by extending partial bijections one point at a time,
/// checking the order on every assigned pair.
pub fn iso_oracle(a: &Mat, b: &Mat) -> bool {
    if a.n() != b.n() {
        return false;
    }
    let n = a.n();
    let degree = |m: &Mat, i: usize| {
        let up = (0..n).filter(|&j| m.le(i, j)).count();
        let down = (0..n).filter(|&j| m.le(j, i)).count();
        (up, down)
    };
    let da: Vec<_> = (0..n).map(|i| degree(a, i)).collect();
    let db: Vec<_> = (0..n).map(|i| degree(b, i)).collect();
    let mut sa = da.clone();
    let mut sb = db.clone();
    sa.sort();
    sb.sort();
    if sa != sb {
        return false;
    }
    fn extend(a: &Mat, b: &Mat, da: &[(usize, usize)], db: &[(usize, usize)], img: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let i = img.len();
        if i == a.n() {
            return true;
        }
        for j in 0..b.n() {
            if used[j] || da[i] != db[j] {
                continue;
            }
            let ok = (0..i).all(|k| a.le(k, i) == b.le(img[k], j) && a.le(i, k) == b.le(j, img[k]));
            if ok {
                img.push(j);
                used[j] = true;
                if extend(a, b, da, db, img, used) {
                    return true;
                }
                used[j] = false;
                img.pop();
            }
        }
        false
    }
    extend(a, b, &da, &db, &mut Vec::new(), &mut vec![false; n])
}

pub fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| p[i] < p[i + 1]) else {
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).unwrap();
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

// ---- generators ----

pub fn atom(i: usize) -> Element {
    Element::atom(format!("e{i}"))
}

/// Builds a basis from a matrix whose index 0 is the bottom.
pub fn basis_from_mat(name: &str, m: &Mat) -> FiniteBasis {
    let elems: Vec<Element> = (0..m.n()).map(|i| if i == 0 { Element::Bottom } else { atom(i) }).collect();
    poset_from_mat(name, m, &elems).try_into().expect("pointed")
}

pub fn poset_from_mat(name: &str, m: &Mat, elems: &[Element]) -> Poset {
    let mut rel = Vec::new();
    for i in 0..m.n() {
        for j in 0..m.n() {
            if m.le(i, j) {
                rel.push((elems[i].clone(), elems[j].clone()));
            }
        }
    }
    Poset::from_relation(name, elems.to_vec(), &rel, Closure::Given).expect("valid order")
}

/// All partial orders on `n` points up to isomorphism.
pub fn posets_up_to_iso(n: usize) -> Vec<Mat> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    // every poset has a natural labelling (a linear extension), so strict
    // relations only from lower to higher index cover all of them
    for mask in 0u64..(1u64 << pairs.len()) {
        let mut leq = vec![vec![false; n]; n];
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if mask >> k & 1 == 1 {
                leq[i][j] = true;
            }
        }
        let m = Mat { leq: closure_oracle(&leq) };
        if seen.insert(canonical_code(&m)) {
            out.push(m);
        }
    }
    out
}

fn canonical_code(m: &Mat) -> Vec<bool> {
    let n = m.n();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<bool>> = None;
    loop {
        let code: Vec<bool> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| m.le(perm[i], perm[j])).collect();
        if best.as_ref().is_none_or(|b| code < *b) {
            best = Some(code);
        }
        if !next_permutation(&mut perm) {
            return best.unwrap();
        }
    }
}

/// `m` with a fresh bottom at index 0.
pub fn lift(m: &Mat) -> Mat {
    let n = m.n() + 1;
    Mat { leq: (0..n).map(|i| (0..n).map(|j| i == 0 || (j > 0 && m.le(i - 1, j - 1))).collect()).collect() }
}

/// Every finitary basis with at most `max` elements, up to isomorphism.
pub fn finitary_catalog(max: usize) -> Vec<FiniteBasis> {
    let mut out = Vec::new();
    for k in 0..max {
        for (i, p) in posets_up_to_iso(k).iter().enumerate() {
            let m = lift(p);
            if finitary_oracle(&m) {
                out.push(basis_from_mat(&format!("b{}_{i}", k + 1), &m));
            }
        }
    }
    out
}

pub fn flat_mat(n: usize) -> Mat {
    Mat { leq: (0..n).map(|i| (0..n).map(|j| i == 0 || i == j).collect()).collect() }
}

pub fn chain_mat(n: usize) -> Mat {
    Mat { leq: (0..n).map(|i| (0..n).map(|j| i <= j).collect()).collect() }
}

pub fn random_relation(rng: &mut impl Rng, n: usize, density: f64) -> Vec<Vec<bool>> {
    (0..n).map(|_| (0..n).map(|_| rng.gen_bool(density)).collect()).collect()
}

/// Random pointed poset whose elements are random nested terms.
pub fn random_basis(rng: &mut impl Rng, max: usize) -> FiniteBasis {
    let k = rng.gen_range(0..max);
    let mut leq = vec![vec![false; k]; k];
    for i in 0..k {
        for j in i + 1..k {
            leq[i][j] = rng.gen_bool(0.35);
        }
    }
    let m = lift(&Mat { leq: closure_oracle(&leq) });
    let mut terms = BTreeSet::new();
    while terms.len() < k {
        terms.insert(random_term(rng, 3));
    }
    let mut elems = vec![Element::Bottom];
    elems.extend(terms);
    poset_from_mat("rand", &m, &elems).try_into().expect("pointed")
}

fn random_leaf(rng: &mut impl Rng) -> Element {
    Element::atom(format!("x{}", rng.gen_range(0..20)))
}

pub fn random_term(rng: &mut impl Rng, depth: usize) -> Element {
    if depth == 0 {
        return random_leaf(rng);
    }
    let d = depth - 1;
    match rng.gen_range(0..7) {
        0 | 1 => random_leaf(rng),
        2 => Element::inl(random_term(rng, d)),
        3 => Element::inr(random_term(rng, d)),
        4 => Element::pair(random_term(rng, d), random_term(rng, d)),
        5 => Element::Seq((0..rng.gen_range(0..3)).map(|_| random_term(rng, d)).collect()),
        _ => Element::Rec((0..rng.gen_range(0..3)).map(|i| (format!("l{i}"), random_term(rng, d))).collect()),
    }
}
