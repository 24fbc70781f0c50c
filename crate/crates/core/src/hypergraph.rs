//! Canonical uniform hypergraphs and exact decision procedures for the
//! structural properties used throughout the crate: union-freeness,
//! cover-freeness, Sidon collisions, local sparsity, and matching number.
//!
//! Every predicate is a pure function over an immutable hypergraph and
//! returns a [`Verdict`]: pass, fail with a replayable [`EdgeFamilyWitness`],
//! or inconclusive when a node budget ran out. Inconclusive is never
//! upgraded to pass.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::Error;
use crate::Result;

/// Fixed-width vertex membership mask. For n <= 128 the words stay inline;
/// larger vertex ranges spill to the heap. All sets drawn from the same
/// hypergraph use the same word count, so equality and hashing are plain
/// slice operations.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet {
    words: SmallVec<[u64; 2]>,
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        VertexSet {
            words: smallvec::smallvec![0u64; words],
        }
    }

    pub fn from_verts(n: usize, verts: &[u16]) -> Self {
        let mut s = Self::empty(n);
        for &v in verts {
            s.insert(v);
        }
        s
    }

    pub fn insert(&mut self, v: u16) {
        self.words[v as usize / 64] |= 1u64 << (v as usize % 64);
    }

    pub fn contains(&self, v: u16) -> bool {
        self.words[v as usize / 64] & (1u64 << (v as usize % 64)) != 0
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a |= b;
        }
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_subset_of(&self, other: &VertexSet) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &VertexSet) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .any(|(a, b)| a & b != 0)
    }

    pub fn intersection_count(&self, other: &VertexSet) -> usize {
        self.words
            .iter()
            .zip(other.words.iter())
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet {
            words: self
                .words
                .iter()
                .zip(other.words.iter())
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    /// Vertices in ascending order.
    pub fn to_verts(&self) -> Vec<u16> {
        let mut out = Vec::with_capacity(self.count());
        for (wi, &w) in self.words.iter().enumerate() {
            let mut bits = w;
            while bits != 0 {
                let b = bits.trailing_zeros() as usize;
                out.push((wi * 64 + b) as u16);
                bits &= bits - 1;
            }
        }
        out
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_verts())
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "RawHypergraph", into = "RawHypergraph")]
pub struct UniformHypergraph {
    n: usize,
    r: usize,
    edges: Vec<Vec<u16>>,
    masks: Vec<VertexSet>,
}

#[derive(Serialize, Deserialize, Clone)]
struct RawHypergraph {
    n: usize,
    r: usize,
    edges: Vec<Vec<u16>>,
}

impl TryFrom<RawHypergraph> for UniformHypergraph {
    type Error = Error;
    fn try_from(raw: RawHypergraph) -> Result<Self> {
        UniformHypergraph::new(raw.n, raw.r, raw.edges)
    }
}

impl From<UniformHypergraph> for RawHypergraph {
    fn from(h: UniformHypergraph) -> Self {
        RawHypergraph {
            n: h.n,
            r: h.r,
            edges: h.edges,
        }
    }
}

impl PartialEq for UniformHypergraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.r == other.r && self.edges == other.edges
    }
}
impl Eq for UniformHypergraph {}

impl UniformHypergraph {
    /// Canonicalizing constructor: sorts each edge, sorts the edge list
    /// lexicographically, and rejects out-of-range vertices, wrong sizes,
    /// repeated vertices, and duplicate edges.
    pub fn new(n: usize, r: usize, edges: Vec<Vec<u16>>) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidHypergraph("uniformity r must be >= 1".into()));
        }
        let mut canon: Vec<Vec<u16>> = Vec::with_capacity(edges.len());
        for mut e in edges {
            if e.len() != r {
                return Err(Error::InvalidHypergraph(format!(
                    "edge {:?} has {} vertices, expected {}",
                    e,
                    e.len(),
                    r
                )));
            }
            e.sort_unstable();
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidHypergraph(format!(
                    "edge {:?} has a repeated vertex",
                    e
                )));
            }
            if let Some(&v) = e.last() {
                if v as usize >= n {
                    return Err(Error::InvalidHypergraph(format!(
                        "vertex {} out of range [0,{})",
                        v, n
                    )));
                }
            }
            canon.push(e);
        }
        canon.sort_unstable();
        if canon.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidHypergraph("duplicate edge".into()));
        }
        let masks = canon
            .iter()
            .map(|e| VertexSet::from_verts(n, e))
            .collect();
        Ok(UniformHypergraph {
            n,
            r,
            edges: canon,
            masks,
        })
    }

    pub fn empty(n: usize, r: usize) -> Self {
        UniformHypergraph::new(n, r, vec![]).expect("empty hypergraph is always valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[Vec<u16>] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> &[u16] {
        &self.edges[i]
    }

    pub fn mask(&self, i: usize) -> &VertexSet {
        &self.masks[i]
    }

    pub fn contains_edge(&self, edge: &[u16]) -> bool {
        let mut e = edge.to_vec();
        e.sort_unstable();
        self.edges.binary_search(&e).is_ok()
    }

    /// Union of the named edges as a vertex set.
    pub fn union_of(&self, indices: &[usize]) -> Result<VertexSet> {
        let mut u = VertexSet::empty(self.n);
        for &i in indices {
            let m = self
                .masks
                .get(i)
                .ok_or_else(|| Error::parameter(format!("edge index {} out of range", i)))?;
            u.union_with(m);
        }
        Ok(u)
    }

    /// Set of vertices appearing in at least one edge.
    pub fn support(&self) -> VertexSet {
        let mut u = VertexSet::empty(self.n);
        for m in &self.masks {
            u.union_with(m);
        }
        u
    }

    /// Relabel through `map` (template vertex v -> map[v]) onto a vertex
    /// range of size `n`. The map must be injective.
    pub fn relabel(&self, map: &[u16], n: usize) -> Result<UniformHypergraph> {
        if map.len() < self.n {
            return Err(Error::parameter("vertex map shorter than vertex range"));
        }
        let mut seen = VertexSet::empty(n.max(1));
        for &img in &map[..self.n] {
            if img as usize >= n {
                return Err(Error::parameter("vertex map image out of range"));
            }
            if seen.contains(img) {
                return Err(Error::parameter("vertex map is not injective"));
            }
            seen.insert(img);
        }
        let edges = self
            .edges
            .iter()
            .map(|e| e.iter().map(|&v| map[v as usize]).collect())
            .collect();
        UniformHypergraph::new(n, self.r, edges)
    }
}

/// k-shadow: all k-subsets contained in at least one edge.
pub fn shadow(h: &UniformHypergraph, k: usize) -> Result<UniformHypergraph> {
    if k == 0 || k > h.r {
        return Err(Error::parameter(format!(
            "shadow uniformity {} out of range [1,{}]",
            k, h.r
        )));
    }
    let mut out: Vec<Vec<u16>> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for e in &h.edges {
        for sub in combinations(e.len(), k) {
            let s: Vec<u16> = sub.iter().map(|&i| e[i]).collect();
            if seen.insert(s.clone()) {
                out.push(s);
            }
        }
    }
    UniformHypergraph::new(h.n, k, out)
}

/// All k-subsets of {0,...,n-1} in lexicographic order, as index vectors.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessKind {
    UnionCollision,
    CoverViolation,
    SparseViolation,
    SidonCollision,
}

/// Certificate for a failed structural predicate. Replaying the named edge
/// families through [`UniformHypergraph::union_of`] reproduces the claimed
/// violation exactly; see [`EdgeFamilyWitness::replay`].
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct EdgeFamilyWitness {
    pub kind: WitnessKind,
    /// One or two lists of edge indices, depending on the kind.
    pub families: Vec<Vec<usize>>,
    /// The offending vertex set (the colliding union, the covering union,
    /// or the too-small span).
    pub union_set: Vec<u16>,
}

impl EdgeFamilyWitness {
    /// Re-derive the violation from the hypergraph; true iff the witness is
    /// sound for `h` under the stated parameters.
    pub fn replay(&self, h: &UniformHypergraph, params: ReplayParams) -> Result<bool> {
        match self.kind {
            WitnessKind::UnionCollision | WitnessKind::SidonCollision => {
                if self.families.len() != 2 {
                    return Ok(false);
                }
                let (a, b) = (&self.families[0], &self.families[1]);
                let mut sa = a.clone();
                let mut sb = b.clone();
                sa.sort_unstable();
                sb.sort_unstable();
                if sa == sb {
                    return Ok(false);
                }
                let t = params.t.unwrap_or(usize::MAX);
                if self.kind == WitnessKind::UnionCollision && (a.len() > t || b.len() > t) {
                    return Ok(false);
                }
                if self.kind == WitnessKind::SidonCollision && (a.len() != t || b.len() != t) {
                    return Ok(false);
                }
                let ua = h.union_of(a)?;
                let ub = h.union_of(b)?;
                Ok(ua == ub && ua.to_verts() == self.union_set)
            }
            WitnessKind::CoverViolation => {
                if self.families.len() != 2 || self.families[0].len() != 1 {
                    return Ok(false);
                }
                let covered = self.families[0][0];
                let others = &self.families[1];
                let t = params.t.unwrap_or(usize::MAX);
                if others.len() > t || others.contains(&covered) {
                    return Ok(false);
                }
                let u = h.union_of(others)?;
                let target = h
                    .masks
                    .get(covered)
                    .ok_or_else(|| Error::parameter("witness edge index out of range"))?;
                Ok(target.is_subset_of(&u) && u.to_verts() == self.union_set)
            }
            WitnessKind::SparseViolation => {
                if self.families.len() != 1 {
                    return Ok(false);
                }
                let fam = &self.families[0];
                let mut s = fam.clone();
                s.sort_unstable();
                s.dedup();
                if s.len() != fam.len() {
                    return Ok(false);
                }
                let (v, e) = match (params.v, params.e) {
                    (Some(v), Some(e)) => (v, e),
                    _ => return Ok(false),
                };
                if fam.len() != e {
                    return Ok(false);
                }
                let u = h.union_of(fam)?;
                Ok(u.count() <= v && u.to_verts() == self.union_set)
            }
        }
    }
}

/// Parameters a witness is replayed against.
#[derive(Debug, Clone, Copy, Default)]
pub struct ReplayParams {
    pub t: Option<usize>,
    pub v: Option<usize>,
    pub e: Option<usize>,
}

impl ReplayParams {
    pub fn order(t: usize) -> Self {
        ReplayParams {
            t: Some(t),
            ..Default::default()
        }
    }
    pub fn config(v: usize, e: usize) -> Self {
        ReplayParams {
            v: Some(v),
            e: Some(e),
            ..Default::default()
        }
    }
}

/// Outcome of a budgeted property check.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", tag = "verdict")]
pub enum Verdict {
    Pass,
    Fail { witness: EdgeFamilyWitness },
    Inconclusive { nodes: u64 },
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }
    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fail { .. })
    }
    pub fn witness(&self) -> Option<&EdgeFamilyWitness> {
        match self {
            Verdict::Fail { witness } => Some(witness),
            _ => None,
        }
    }
}

/// Shared parameter bundle for the replay symbols t, v, e, k, a, λ.
#[derive(Debug, Clone, Copy, Default, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PropertyParams {
    pub t: usize,
    pub v: usize,
    pub e: usize,
    pub k: usize,
    pub a: usize,
    pub lambda: usize,
}

struct Budget {
    left: u64,
    spent: u64,
}

impl Budget {
    fn new(limit: u64) -> Self {
        Budget {
            left: limit,
            spent: 0,
        }
    }
    /// false when exhausted.
    fn tick(&mut self) -> bool {
        self.spent += 1;
        if self.left == 0 {
            return false;
        }
        self.left -= 1;
        true
    }
}

/// No two distinct nonempty subfamilies of at most t edges share a union.
///
/// Subfamilies are enumerated by size, then lexicographically by index
/// vector, and grouped by union mask; the first collision found in that
/// order is the reported witness, so reruns are deterministic. The empty
/// family is excluded: its union is empty and edges are nonempty, so it
/// can never collide.
pub fn check_union_free(h: &UniformHypergraph, t: usize, budget: u64) -> Result<Verdict> {
    if t < 1 {
        return Err(Error::parameter("union-free order t must be >= 1"));
    }
    subfamily_collision(h, 1, t.min(h.len()), budget, WitnessKind::UnionCollision)
}

/// Distinct subfamilies of exactly t edges have distinct unions. Vacuously
/// true when |H| < t.
pub fn check_sidon(h: &UniformHypergraph, t: usize, budget: u64) -> Result<Verdict> {
    if t < 1 {
        return Err(Error::parameter("sidon order t must be >= 1"));
    }
    if h.len() < t {
        return Ok(Verdict::Pass);
    }
    subfamily_collision(h, t, t, budget, WitnessKind::SidonCollision)
}

fn subfamily_collision(
    h: &UniformHypergraph,
    size_lo: usize,
    size_hi: usize,
    budget: u64,
    kind: WitnessKind,
) -> Result<Verdict> {
    let mut seen: HashMap<VertexSet, Vec<usize>> = HashMap::new();
    let mut budget = Budget::new(budget);
    for size in size_lo..=size_hi {
        for fam in combinations(h.len(), size) {
            if !budget.tick() {
                return Ok(Verdict::Inconclusive {
                    nodes: budget.spent,
                });
            }
            let u = h.union_of(&fam)?;
            if let Some(prev) = seen.get(&u) {
                let witness = EdgeFamilyWitness {
                    kind,
                    families: vec![prev.clone(), fam],
                    union_set: u.to_verts(),
                };
                return Ok(Verdict::Fail { witness });
            }
            seen.insert(u, fam);
        }
    }
    Ok(Verdict::Pass)
}

/// No edge is contained in the union of at most t other distinct edges.
pub fn check_cover_free(h: &UniformHypergraph, t: usize, budget: u64) -> Result<Verdict> {
    if t < 1 {
        return Err(Error::parameter("cover-free order t must be >= 1"));
    }
    let mut budget = Budget::new(budget);
    for target in 0..h.len() {
        match cover_search(h, target, t, &mut budget) {
            CoverOutcome::Found(cover) => {
                let u = h.union_of(&cover)?;
                let witness = EdgeFamilyWitness {
                    kind: WitnessKind::CoverViolation,
                    families: vec![vec![target], cover],
                    union_set: u.to_verts(),
                };
                return Ok(Verdict::Fail { witness });
            }
            CoverOutcome::None => {}
            CoverOutcome::OutOfBudget => {
                return Ok(Verdict::Inconclusive {
                    nodes: budget.spent,
                })
            }
        }
    }
    Ok(Verdict::Pass)
}

enum CoverOutcome {
    Found(Vec<usize>),
    None,
    OutOfBudget,
}

/// DFS for a cover of edge `target` by at most `t` other edges. Branches on
/// the lowest uncovered vertex, trying covering edges in index order, so
/// the first cover found is deterministic.
fn cover_search(
    h: &UniformHypergraph,
    target: usize,
    t: usize,
    budget: &mut Budget,
) -> CoverOutcome {
    fn rec(
        h: &UniformHypergraph,
        target: usize,
        covered: &VertexSet,
        chosen: &mut Vec<usize>,
        t: usize,
        budget: &mut Budget,
    ) -> CoverOutcome {
        if !budget.tick() {
            return CoverOutcome::OutOfBudget;
        }
        let goal = h.mask(target);
        let pending = goal
            .to_verts()
            .into_iter()
            .find(|&v| !covered.contains(v));
        let v = match pending {
            None => return CoverOutcome::Found(chosen.clone()),
            Some(v) => v,
        };
        if chosen.len() == t {
            return CoverOutcome::None;
        }
        for j in 0..h.len() {
            if j == target || chosen.contains(&j) || !h.mask(j).contains(v) {
                continue;
            }
            chosen.push(j);
            let mut next = covered.clone();
            next.union_with(h.mask(j));
            match rec(h, target, &next, chosen, t, budget) {
                CoverOutcome::None => {}
                other => return other,
            }
            chosen.pop();
        }
        CoverOutcome::None
    }
    let mut chosen = Vec::new();
    let covered = VertexSet::empty(h.n);
    rec(h, target, &covered, &mut chosen, t, budget)
}

/// No e distinct edges span at most v vertices. DFS over index-increasing
/// e-subsets; a branch is cut as soon as its partial union exceeds v, since
/// unions only grow.
pub fn check_config_free(
    h: &UniformHypergraph,
    v: usize,
    e: usize,
    budget: u64,
) -> Result<Verdict> {
    if e < 1 {
        return Err(Error::parameter("configuration size e must be >= 1"));
    }
    let mut budget = Budget::new(budget);
    let mut chosen: Vec<usize> = Vec::new();

    enum Out {
        Found(Vec<usize>, VertexSet),
        None,
        OutOfBudget,
    }

    fn rec(
        h: &UniformHypergraph,
        v: usize,
        e: usize,
        start: usize,
        union: &VertexSet,
        chosen: &mut Vec<usize>,
        budget: &mut Budget,
    ) -> Out {
        if chosen.len() == e {
            return Out::Found(chosen.clone(), union.clone());
        }
        for j in start..h.len() {
            if !budget.tick() {
                return Out::OutOfBudget;
            }
            let mut next = union.clone();
            next.union_with(h.mask(j));
            if next.count() > v {
                continue;
            }
            chosen.push(j);
            match rec(h, v, e, j + 1, &next, chosen, budget) {
                Out::None => {}
                other => return other,
            }
            chosen.pop();
        }
        Out::None
    }

    let union = VertexSet::empty(h.n);
    match rec(h, v, e, 0, &union, &mut chosen, &mut budget) {
        Out::Found(fam, u) => Ok(Verdict::Fail {
            witness: EdgeFamilyWitness {
                kind: WitnessKind::SparseViolation,
                families: vec![fam],
                union_set: u.to_verts(),
            },
        }),
        Out::None => Ok(Verdict::Pass),
        Out::OutOfBudget => Ok(Verdict::Inconclusive {
            nodes: budget.spent,
        }),
    }
}

/// Maximum number of pairwise disjoint edges, by branch and bound over
/// edges in lexicographic order.
pub fn matching_number(h: &UniformHypergraph) -> usize {
    fn rec(h: &UniformHypergraph, start: usize, used: &VertexSet, size: usize, best: &mut usize) {
        if size > *best {
            *best = size;
        }
        if size + (h.len() - start) <= *best {
            return;
        }
        for j in start..h.len() {
            if used.intersects(h.mask(j)) {
                continue;
            }
            let mut next = used.clone();
            next.union_with(h.mask(j));
            rec(h, j + 1, &next, size + 1, best);
        }
    }
    let mut best = 0;
    rec(h, 0, &VertexSet::empty(h.n), 0, &mut best);
    best
}

/// Convenience wrappers with an effectively unlimited budget.
pub fn is_union_free(h: &UniformHypergraph, t: usize) -> Result<bool> {
    Ok(check_union_free(h, t, u64::MAX)?.is_pass())
}
pub fn is_cover_free(h: &UniformHypergraph, t: usize) -> Result<bool> {
    Ok(check_cover_free(h, t, u64::MAX)?.is_pass())
}
pub fn is_sidon(h: &UniformHypergraph, t: usize) -> Result<bool> {
    Ok(check_sidon(h, t, u64::MAX)?.is_pass())
}
pub fn is_config_free(h: &UniformHypergraph, v: usize, e: usize) -> Result<bool> {
    Ok(check_config_free(h, v, e, u64::MAX)?.is_pass())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hg(n: usize, r: usize, edges: &[&[u16]]) -> UniformHypergraph {
        UniformHypergraph::new(n, r, edges.iter().map(|e| e.to_vec()).collect()).unwrap()
    }

    fn triangle() -> UniformHypergraph {
        hg(3, 2, &[&[0, 1], &[0, 2], &[1, 2]])
    }

    #[test]
    fn canonicalization_sorts_and_rejects() {
        let h = UniformHypergraph::new(4, 2, vec![vec![3, 2], vec![1, 0]]).unwrap();
        assert_eq!(h.edges(), &[vec![0, 1], vec![2, 3]]);
        assert!(UniformHypergraph::new(4, 2, vec![vec![0, 0]]).is_err());
        assert!(UniformHypergraph::new(4, 2, vec![vec![0, 4]]).is_err());
        assert!(UniformHypergraph::new(4, 2, vec![vec![0, 1], vec![1, 0]]).is_err());
        assert!(UniformHypergraph::new(4, 2, vec![vec![0, 1, 2]]).is_err());
    }

    #[test]
    fn equal_edge_sets_compare_equal() {
        let a = UniformHypergraph::new(4, 2, vec![vec![2, 3], vec![0, 1]]).unwrap();
        let b = UniformHypergraph::new(4, 2, vec![vec![0, 1], vec![3, 2]]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn shadow_of_single_triple() {
        let h = hg(3, 3, &[&[0, 1, 2]]);
        let s = shadow(&h, 2).unwrap();
        assert_eq!(s.edges(), &[vec![0, 1], vec![0, 2], vec![1, 2]]);
    }

    #[test]
    fn shadow_identity_at_full_uniformity() {
        let h = hg(5, 3, &[&[0, 1, 2], &[2, 3, 4]]);
        assert_eq!(shadow(&h, 3).unwrap(), h);
    }

    #[test]
    fn shadow_of_two_triples_dedups() {
        let h = hg(5, 3, &[&[0, 1, 2], &[2, 3, 4]]);
        let s = shadow(&h, 2).unwrap();
        assert_eq!(s.len(), 6);
        assert_eq!(
            s.edges(),
            &[
                vec![0, 1],
                vec![0, 2],
                vec![1, 2],
                vec![2, 3],
                vec![2, 4],
                vec![3, 4]
            ]
        );
    }

    #[test]
    fn shadow_size_bound() {
        let h = hg(6, 3, &[&[0, 1, 2], &[1, 2, 3], &[3, 4, 5]]);
        let s = shadow(&h, 2).unwrap();
        assert!(s.len() as u128 <= h.len() as u128 * crate::binomial(3, 2));
    }

    #[test]
    fn shadow_rejects_bad_k() {
        let h = hg(3, 3, &[&[0, 1, 2]]);
        assert!(shadow(&h, 0).is_err());
        assert!(shadow(&h, 4).is_err());
    }

    #[test]
    fn union_free_matching_and_triangle() {
        let m = hg(4, 2, &[&[0, 1], &[2, 3]]);
        assert!(is_union_free(&m, 2).unwrap());
        assert!(is_union_free(&m, 5).unwrap());

        let v = check_union_free(&triangle(), 2, u64::MAX).unwrap();
        let w = v.witness().expect("triangle has a union collision");
        assert!(w
            .replay(&triangle(), ReplayParams::order(2))
            .unwrap());
        assert_eq!(w.union_set, vec![0, 1, 2]);
    }

    #[test]
    fn union_free_two_triples_sharing_pair() {
        let h = hg(4, 3, &[&[0, 1, 2], &[0, 1, 3]]);
        assert!(is_union_free(&h, 2).unwrap());
    }

    #[test]
    fn union_free_witness_is_deterministic() {
        let h = triangle();
        let w1 = check_union_free(&h, 2, u64::MAX).unwrap();
        let w2 = check_union_free(&h, 2, u64::MAX).unwrap();
        assert_eq!(
            serde_json::to_string(w1.witness().unwrap()).unwrap(),
            serde_json::to_string(w2.witness().unwrap()).unwrap()
        );
    }

    #[test]
    fn cover_free_examples() {
        let m = hg(4, 2, &[&[0, 1], &[2, 3]]);
        assert!(is_cover_free(&m, 2).unwrap());

        let v = check_cover_free(&triangle(), 2, u64::MAX).unwrap();
        let w = v.witness().expect("triangle edge covered by other two");
        assert!(w.replay(&triangle(), ReplayParams::order(2)).unwrap());

        let single = hg(5, 3, &[&[0, 1, 2]]);
        assert!(is_cover_free(&single, 7).unwrap());
    }

    #[test]
    fn sidon_examples() {
        let m = hg(6, 2, &[&[0, 1], &[2, 3], &[4, 5]]);
        assert!(is_sidon(&m, 2).unwrap());
        assert!(!is_sidon(&triangle(), 2).unwrap());
        // vacuous below t edges
        let one = hg(3, 2, &[&[0, 1]]);
        assert!(is_sidon(&one, 2).unwrap());
    }

    #[test]
    fn config_free_examples() {
        // two triangle edges span 3 <= 3 vertices
        assert!(!is_config_free(&triangle(), 3, 2).unwrap());
        let m = hg(4, 2, &[&[0, 1], &[2, 3]]);
        assert!(is_config_free(&m, 3, 2).unwrap());
        // any two distinct r-edges span >= r+1 vertices
        let h = hg(6, 3, &[&[0, 1, 2], &[0, 1, 3], &[3, 4, 5]]);
        assert!(is_config_free(&h, 3, 2).unwrap());
    }

    #[test]
    fn config_free_witness_replays() {
        let v = check_config_free(&triangle(), 3, 2, u64::MAX).unwrap();
        let w = v.witness().unwrap();
        assert!(w.replay(&triangle(), ReplayParams::config(3, 2)).unwrap());
    }

    #[test]
    fn matching_numbers() {
        assert_eq!(matching_number(&triangle()), 1);
        assert_eq!(matching_number(&hg(4, 2, &[&[0, 1], &[2, 3]])), 2);
        let k4: Vec<Vec<u16>> = combinations(4, 2)
            .into_iter()
            .map(|c| c.into_iter().map(|x| x as u16).collect())
            .collect();
        let h = UniformHypergraph::new(4, 2, k4).unwrap();
        assert_eq!(matching_number(&h), 2);
        assert_eq!(matching_number(&UniformHypergraph::empty(4, 2)), 0);
    }

    #[test]
    fn union_of_examples() {
        let h = triangle();
        assert!(h.union_of(&[]).unwrap().is_empty());
        assert_eq!(h.union_of(&[0]).unwrap().to_verts(), vec![0, 1]);
        assert_eq!(h.union_of(&[0, 1]).unwrap().to_verts(), vec![0, 1, 2]);
        assert!(h.union_of(&[7]).is_err());
    }

    #[test]
    fn budget_exhaustion_is_inconclusive() {
        let h = triangle();
        let v = check_union_free(&h, 2, 1).unwrap();
        assert!(matches!(v, Verdict::Inconclusive { .. }));
    }

    #[test]
    fn combinations_order_and_count() {
        let c = combinations(4, 2);
        assert_eq!(c.len(), 6);
        assert_eq!(c[0], vec![0, 1]);
        assert_eq!(c[5], vec![2, 3]);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert!(combinations(2, 3).is_empty());
    }

    #[test]
    fn large_vertex_range_masks() {
        // spills past one word; predicates must be representation-agnostic
        let h = hg(200, 2, &[&[0, 150], &[150, 199], &[0, 199]]);
        assert!(!is_union_free(&h, 2).unwrap());
        assert_eq!(h.support().count(), 3);
    }
}
