//! Exact computation of the extremal functions U_t(n,r), F_t(n,r), and
//! m(n,r,λ) at desk scale, plus the closed-form matching oracle and the
//! exact rational density constant for the covered parameter range.
//!
//! All three searches share one backtracking skeleton: candidate r-edges
//! in lexicographic order, an incremental feasibility check per added
//! edge, symmetry breaking by forcing the first edge to {0,…,r−1}, and
//! pruning when the remaining candidates cannot beat the incumbent.
//! Budgets are node counts; an exhausted budget returns the best packing
//! found so far flagged `timed_out`, never a silently wrong value.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::binomial;
use crate::error::Error;
use crate::hypergraph::{combinations, UniformHypergraph, VertexSet};
use crate::rational::Rational;
use crate::Result;

pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ExtremalResult {
    pub value: usize,
    pub witness: UniformHypergraph,
    pub nodes_explored: u64,
    pub timed_out: bool,
}

/// All r-subsets of [0,n) in lexicographic order.
fn candidate_edges(n: usize, r: usize) -> Vec<Vec<u16>> {
    combinations(n, r)
        .into_iter()
        .map(|c| c.into_iter().map(|v| v as u16).collect())
        .collect()
}

/// Incremental feasibility oracle for one extremal property. `push` either
/// commits the edge and returns true, or leaves the state untouched and
/// returns false; `pop` undoes the most recent committed push.
trait Feasibility {
    fn push(&mut self, edge: &[u16], mask: &VertexSet) -> bool;
    fn pop(&mut self);
}

struct Search<'a, F: Feasibility> {
    cands: &'a [(Vec<u16>, VertexSet)],
    n: usize,
    r: usize,
    state: F,
    current: Vec<usize>,
    best: Vec<usize>,
    nodes: u64,
    budget: u64,
    timed_out: bool,
}

impl<'a, F: Feasibility> Search<'a, F> {
    fn run(mut self, force_first: bool) -> Result<ExtremalResult> {
        if self.cands.is_empty() {
            return Ok(ExtremalResult {
                value: 0,
                witness: UniformHypergraph::empty(self.n, self.r),
                nodes_explored: 0,
                timed_out: false,
            });
        }
        if force_first {
            // Relabeling maps any nonempty optimum to one whose lex-least
            // edge is {0,…,r−1}, and a single edge is always feasible for
            // the properties searched here.
            let (e, m) = &self.cands[0];
            assert!(self.state.push(e, m), "single forced edge must be feasible");
            self.current.push(0);
            self.best = self.current.clone();
            self.recurse(1);
            self.state.pop();
        } else {
            self.recurse(0);
        }
        let edges = self
            .best
            .iter()
            .map(|&i| self.cands[i].0.clone())
            .collect();
        Ok(ExtremalResult {
            value: self.best.len(),
            witness: UniformHypergraph::new(self.n, self.r, edges)?,
            nodes_explored: self.nodes,
            timed_out: self.timed_out,
        })
    }

    fn recurse(&mut self, from: usize) {
        if self.current.len() > self.best.len() {
            self.best = self.current.clone();
        }
        if self.timed_out {
            return;
        }
        // remaining candidates cannot beat the incumbent
        if self.current.len() + (self.cands.len() - from) <= self.best.len() {
            return;
        }
        for j in from..self.cands.len() {
            if self.current.len() + (self.cands.len() - j) <= self.best.len() {
                return;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                self.timed_out = true;
                return;
            }
            let (e, m) = &self.cands[j];
            if self.state.push(e, m) {
                self.current.push(j);
                self.recurse(j + 1);
                self.current.pop();
                self.state.pop();
                if self.timed_out {
                    return;
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// union-free feasibility

/// Maintains the hash index of all subfamily unions of the current graph
/// (subfamilies of size ≤ t). A new edge only touches subfamilies that
/// contain it, so a push inspects C(s,≤t−1) unions instead of re-running
/// the full predicate.
struct UnionFreeState {
    t: usize,
    n: usize,
    masks: Vec<VertexSet>,
    unions: HashMap<VertexSet, u32>,
    inserted: Vec<Vec<VertexSet>>,
}

impl UnionFreeState {
    fn new(n: usize, t: usize) -> Self {
        UnionFreeState {
            t,
            n,
            masks: Vec::new(),
            unions: HashMap::new(),
            inserted: Vec::new(),
        }
    }
}

impl Feasibility for UnionFreeState {
    fn push(&mut self, _edge: &[u16], mask: &VertexSet) -> bool {
        let s = self.masks.len();
        let mut fresh: Vec<VertexSet> = Vec::new();
        let mut fresh_set: HashSet<VertexSet> = HashSet::new();
        for size in 0..self.t.min(s + 1) {
            for sub in combinations(s, size) {
                let mut u = mask.clone();
                for &i in &sub {
                    u.union_with(&self.masks[i]);
                }
                // collision with an old family (which cannot contain the
                // new edge) or with another new family
                if self.unions.contains_key(&u) || !fresh_set.insert(u.clone()) {
                    return false;
                }
                fresh.push(u);
            }
        }
        for u in &fresh {
            *self.unions.entry(u.clone()).or_insert(0) += 1;
        }
        self.inserted.push(fresh);
        self.masks.push(mask.clone());
        true
    }

    fn pop(&mut self) {
        self.masks.pop();
        for u in self.inserted.pop().unwrap() {
            match self.unions.get_mut(&u) {
                Some(c) if *c > 1 => *c -= 1,
                _ => {
                    self.unions.remove(&u);
                }
            }
        }
        let _ = self.n;
    }
}

/// Greedy maximal t-union-free subfamily, scanned in the given order:
/// each mask is kept unless some subfamily union involving it collides
/// with a union of already-kept masks. Returns the kept indices.
pub fn greedy_union_free_filter(masks: &[VertexSet], n: usize, t: usize) -> Vec<usize> {
    let mut state = UnionFreeState::new(n, t);
    let mut kept = Vec::new();
    for (i, m) in masks.iter().enumerate() {
        if state.push(&[], m) {
            kept.push(i);
        }
    }
    kept
}

// ---------------------------------------------------------------------------
// cover-free feasibility

struct CoverFreeState {
    t: usize,
    n: usize,
    masks: Vec<VertexSet>,
}

impl CoverFreeState {
    /// Can `target` be covered by at most `depth_left` masks drawn from
    /// `pool` (skipping index `skip`), with `must_use` forced in first?
    fn coverable(&self, target: &VertexSet, skip: Option<usize>, extra: Option<&VertexSet>) -> bool {
        fn rec(
            masks: &[VertexSet],
            skip: Option<usize>,
            goal: &VertexSet,
            covered: &VertexSet,
            used: &mut Vec<usize>,
            left: usize,
        ) -> bool {
            let v = match goal.to_verts().into_iter().find(|&v| !covered.contains(v)) {
                None => return true,
                Some(v) => v,
            };
            if left == 0 {
                return false;
            }
            for (j, m) in masks.iter().enumerate() {
                if Some(j) == skip || used.contains(&j) || !m.contains(v) {
                    continue;
                }
                used.push(j);
                let mut next = covered.clone();
                next.union_with(m);
                if rec(masks, skip, goal, &next, used, left - 1) {
                    return true;
                }
                used.pop();
            }
            false
        }
        let mut covered = VertexSet::empty(self.n);
        let mut left = self.t;
        if let Some(e) = extra {
            covered.union_with(e);
            left -= 1;
        }
        let mut used = Vec::new();
        rec(&self.masks, skip, target, &covered, &mut used, left)
    }
}

impl Feasibility for CoverFreeState {
    fn push(&mut self, _edge: &[u16], mask: &VertexSet) -> bool {
        // (a) the new edge must not be covered by t existing edges
        if self.coverable(mask, None, None) {
            return false;
        }
        // (b) no existing edge may become covered once the new edge is
        // available as one of the t coverers
        for i in 0..self.masks.len() {
            if self.coverable(&self.masks[i].clone(), Some(i), Some(mask)) {
                return false;
            }
        }
        self.masks.push(mask.clone());
        true
    }

    fn pop(&mut self) {
        self.masks.pop();
    }
}

// ---------------------------------------------------------------------------
// bounded-matching feasibility

struct MatchingState {
    lambda: usize,
    n: usize,
    masks: Vec<VertexSet>,
}

impl Feasibility for MatchingState {
    fn push(&mut self, _edge: &[u16], mask: &VertexSet) -> bool {
        // adding the edge creates λ+1 pairwise disjoint edges iff λ
        // existing edges are pairwise disjoint and disjoint from it
        fn rec(masks: &[VertexSet], from: usize, used: &VertexSet, need: usize) -> bool {
            if need == 0 {
                return true;
            }
            if masks.len() - from < need {
                return false;
            }
            for j in from..masks.len() {
                if used.intersects(&masks[j]) {
                    continue;
                }
                let mut next = used.clone();
                next.union_with(&masks[j]);
                if rec(masks, j + 1, &next, need - 1) {
                    return true;
                }
            }
            false
        }
        if rec(&self.masks, 0, mask, self.lambda) {
            return false;
        }
        self.masks.push(mask.clone());
        let _ = self.n;
        true
    }

    fn pop(&mut self) {
        self.masks.pop();
    }
}

// ---------------------------------------------------------------------------
// public searches

fn prepared(n: usize, r: usize) -> Vec<(Vec<u16>, VertexSet)> {
    candidate_edges(n, r)
        .into_iter()
        .map(|e| {
            let m = VertexSet::from_verts(n.max(1), &e);
            (e, m)
        })
        .collect()
}

/// Exact U_t(n,r): maximum edges of an n-vertex t-union-free r-graph.
pub fn max_union_free(n: usize, r: usize, t: usize, budget: u64) -> Result<ExtremalResult> {
    if r < 1 || t < 1 {
        return Err(Error::parameter("r and t must be >= 1"));
    }
    if t == 1 {
        // every family of distinct edges is 1-union-free
        let cands = prepared(n, r);
        let edges = cands.iter().map(|(e, _)| e.clone()).collect();
        return Ok(ExtremalResult {
            value: cands.len(),
            witness: UniformHypergraph::new(n, r, edges)?,
            nodes_explored: 0,
            timed_out: false,
        });
    }
    let cands = prepared(n, r);
    Search {
        state: UnionFreeState::new(n.max(1), t),
        cands: &cands,
        n,
        r,
        current: vec![],
        best: vec![],
        nodes: 0,
        budget,
        timed_out: false,
    }
    .run(true)
}

/// Exact F_t(n,r): maximum edges of an n-vertex t-cover-free r-graph.
pub fn max_cover_free(n: usize, r: usize, t: usize, budget: u64) -> Result<ExtremalResult> {
    if r < 1 || t < 1 {
        return Err(Error::parameter("r and t must be >= 1"));
    }
    let cands = prepared(n, r);
    Search {
        state: CoverFreeState {
            t,
            n: n.max(1),
            masks: vec![],
        },
        cands: &cands,
        n,
        r,
        current: vec![],
        best: vec![],
        nodes: 0,
        budget,
        timed_out: false,
    }
    .run(true)
}

/// Exact m(n,r,λ): maximum edges of an n-vertex r-graph with matching
/// number at most λ.
pub fn max_bounded_matching(n: usize, r: usize, lambda: usize, budget: u64) -> Result<ExtremalResult> {
    if r < 1 {
        return Err(Error::parameter("r must be >= 1"));
    }
    if lambda == 0 {
        // a single edge is already a matching of size 1
        return Ok(ExtremalResult {
            value: 0,
            witness: UniformHypergraph::empty(n, r),
            nodes_explored: 0,
            timed_out: false,
        });
    }
    let cands = prepared(n, r);
    Search {
        state: MatchingState {
            lambda,
            n: n.max(1),
            masks: vec![],
        },
        cands: &cands,
        n,
        r,
        current: vec![],
        best: vec![],
        nodes: 0,
        budget,
        timed_out: false,
    }
    .run(true)
}

// ---------------------------------------------------------------------------
// closed forms

/// The conjectured maximum of the Erdős Matching Conjecture,
/// max{C(r,k) − C(r−λ,k), C((λ+1)k−1, k)}. Exact in the solved regimes
/// reported by [`emc_solved_regime`]; conjectural elsewhere.
pub fn emc_formula(r: usize, k: usize, lambda: usize) -> Result<u128> {
    if r < (lambda + 1) * k {
        return Err(Error::parameter(format!(
            "emc formula requires r >= (lambda+1)k, got r={}, k={}, lambda={}",
            r, k, lambda
        )));
    }
    let a = binomial(r as u64, k as u64) - binomial((r - lambda) as u64, k as u64);
    let b = binomial(((lambda + 1) * k - 1) as u64, k as u64);
    Ok(a.max(b))
}

/// Regimes where the matching conjecture is a theorem: λ ∈ {0,1}
/// (trivial / Erdős–Ko–Rado), k ∈ {2,3} (Erdős–Gallai / Frankl),
/// r = (λ+1)k with full matchings (Kleitman), and the Frankl and
/// Frankl–Kupavskii ranges r ≥ (2λ+1)k − λ.
pub fn emc_solved_regime(r: usize, k: usize, lambda: usize) -> bool {
    lambda <= 1
        || k <= 3
        || (r == (lambda + 1) * k)
        || (r >= (2 * lambda + 1) * k - lambda)
}

/// The exact rational limit constant of the union-free density for the
/// covered parameter range.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DensityTarget {
    pub t: usize,
    pub k: usize,
    pub a: usize,
    pub m_value: u128,
    pub constant: Rational,
}

/// True iff the union-free density of (t+1)-union-free (tk−a)-graphs is
/// outside the covered range. The open families (3,2s−1), (s+1,s+1),
/// (s+1,s+2) for s ≥ 2 and the pair (4,7) all arise from the a ≥ 1
/// construction; every a = 0 pair is covered.
pub fn is_excluded(t: usize, k: usize, a: usize) -> bool {
    if a == 0 {
        return false;
    }
    let tp = t + 1;
    let r = t * k - a;
    (tp == 3 && r >= 3 && r % 2 == 1)
        || (tp >= 3 && r == tp)
        || (tp >= 3 && r == tp + 1)
        || (tp == 4 && r == 7)
}

/// Density constant 1/(k!·(C(tk−a,k) − m(tk−a,k,t−a−1))) as an exact
/// rational. The m-value comes from exhaustive search when the search
/// completes within `budget`, otherwise from the closed form in a solved
/// regime; an unsolved regime is an error, never an approximation.
pub fn density_target(t: usize, k: usize, a: usize, budget: u64) -> Result<DensityTarget> {
    if t < 2 || k < 2 || a > t - 1 {
        return Err(Error::parameter(format!(
            "density target requires t >= 2, k >= 2, 0 <= a <= t-1; got ({},{},{})",
            t, k, a
        )));
    }
    if is_excluded(t, k, a) {
        return Err(Error::ExcludedPair {
            t_plus_1: t + 1,
            r: t * k - a,
        });
    }
    let nn = t * k - a;
    let lambda = t - a - 1;
    let m_value = match max_bounded_matching(nn, k, lambda, budget)? {
        res if !res.timed_out => res.value as u128,
        _ if emc_solved_regime(nn, k, lambda) => emc_formula(nn, k, lambda)?,
        _ => {
            return Err(Error::UnsolvedMatchingValue {
                n: nn,
                r: k,
                lambda,
            })
        }
    };
    let choices = binomial(nn as u64, k as u64);
    if choices <= m_value {
        return Err(Error::parameter(
            "degenerate density denominator: C(tk-a,k) <= m(tk-a,k,t-a-1)",
        ));
    }
    let factorial: u128 = (1..=k as u128).product();
    Ok(DensityTarget {
        t,
        k,
        a,
        m_value,
        constant: Rational::new(1, factorial * (choices - m_value)),
    })
}
