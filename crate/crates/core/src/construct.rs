//! Explicit building blocks: locally sparse graphs by seeded alteration,
//! the pendant-vertex family, the complement family, and assembly of the
//! final host hypergraph from a packing.
//!
//! Every builder re-verifies its structural claims with the exhaustive
//! predicate checkers before returning; nothing is trusted to the
//! incremental bookkeeping used during construction.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::binomial;
use crate::error::Error;
use crate::extremal::max_bounded_matching;
use crate::hypergraph::{
    check_config_free, check_cover_free, check_union_free, combinations, matching_number, shadow,
    UniformHypergraph, Verdict, VertexSet,
};
use crate::packing::{LabeledCopy, Packing};
use crate::rational::Rational;
use crate::Result;

/// Output of the greedy alteration: the graph plus how far the greedy got.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct LocallySparseResult {
    pub graph: UniformHypergraph,
    pub target_size: usize,
    pub reached_target: bool,
    pub rejected: u64,
}

/// Connected-subset scan for a forbidden configuration created by adding
/// `new_mask` to a family whose members already satisfy every level.
/// Any violating set containing the new edge contains a connected
/// violating subset containing it, so restricting to sets grown by
/// vertex-overlap is exhaustive.
fn incremental_config_conflict(
    masks: &[VertexSet],
    vert_to: &[Vec<usize>],
    new_mask: &VertexSet,
    r: usize,
    k: usize,
    e: usize,
) -> bool {
    fn rec(
        masks: &[VertexSet],
        vert_to: &[Vec<usize>],
        union: &VertexSet,
        chosen: &mut Vec<usize>,
        visited: &mut std::collections::HashSet<Vec<usize>>,
        r: usize,
        k: usize,
        e: usize,
    ) -> bool {
        let level = chosen.len() + 1;
        if level >= 2 && union.count() < level * r - (level - 1) * k {
            return true;
        }
        if level == e {
            return false;
        }
        let mut ext: Vec<usize> = Vec::new();
        for v in union.to_verts() {
            for &i in &vert_to[v as usize] {
                if !chosen.contains(&i) && !ext.contains(&i) {
                    ext.push(i);
                }
            }
        }
        ext.sort_unstable();
        for i in ext {
            chosen.push(i);
            let mut key = chosen.clone();
            key.sort_unstable();
            if visited.insert(key) {
                let mut next = union.clone();
                next.union_with(&masks[i]);
                if rec(masks, vert_to, &next, chosen, visited, r, k, e) {
                    return true;
                }
            }
            chosen.pop();
        }
        false
    }
    let mut chosen = Vec::new();
    let mut visited = std::collections::HashSet::new();
    rec(
        masks, vert_to, new_mask, &mut chosen, &mut visited, r, k, e,
    )
}

/// Greedy alteration: shuffle all r-subsets of [0,m) with the seeded
/// generator, insert each unless it closes a forbidden configuration
/// with the edges accepted so far, stop at `target_size`. The result is
/// re-verified as (ℓr−(ℓ−1)k−1, ℓ)-free for every 2 ≤ ℓ ≤ e before it is
/// returned; the asymptotic size guarantee is not asserted, only the
/// achieved size is reported.
pub fn locally_sparse(
    m: usize,
    r: usize,
    k: usize,
    e: usize,
    seed: u64,
    target_size: usize,
) -> Result<LocallySparseResult> {
    if k < 2 || r <= k {
        return Err(Error::parameter(format!(
            "locally sparse construction requires r > k >= 2, got r={}, k={}",
            r, k
        )));
    }
    if e < 2 {
        return Err(Error::parameter("sparsity horizon e must be >= 2"));
    }
    if m < r {
        return Err(Error::parameter("need at least r vertices"));
    }
    let mut cands: Vec<Vec<u16>> = combinations(m, r)
        .into_iter()
        .map(|c| c.into_iter().map(|v| v as u16).collect())
        .collect();
    {
        let mut rng = crate::seeded_rng(seed);
        cands.shuffle(&mut rng);
    }
    let mut edges: Vec<Vec<u16>> = Vec::new();
    let mut masks: Vec<VertexSet> = Vec::new();
    let mut vert_to: Vec<Vec<usize>> = vec![Vec::new(); m];
    let mut rejected: u64 = 0;
    for cand in cands {
        if edges.len() >= target_size {
            break;
        }
        let mask = VertexSet::from_verts(m, &cand);
        if incremental_config_conflict(&masks, &vert_to, &mask, r, k, e) {
            rejected += 1;
            continue;
        }
        let idx = edges.len();
        for &v in &cand {
            vert_to[v as usize].push(idx);
        }
        edges.push(cand);
        masks.push(mask);
    }
    let graph = UniformHypergraph::new(m, r, edges)?;
    for level in 2..=e {
        let v = level * r - (level - 1) * k - 1;
        match check_config_free(&graph, v, level, u64::MAX)? {
            Verdict::Pass => {}
            other => {
                return Err(Error::Construction(format!(
                    "alteration output failed ({},{})-freeness re-verification: {:?}",
                    v, level, other
                )))
            }
        }
    }
    Ok(LocallySparseResult {
        reached_target: graph.len() >= target_size,
        target_size,
        rejected,
        graph,
    })
}

/// The pendant family: each (tk−1)-edge of the base gets a private new
/// vertex, giving a tk-graph in which the distinguishing vertex of each
/// edge appears nowhere else.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PendantFamily {
    /// The (tk−1)-uniform base G on m0 vertices.
    pub base: UniformHypergraph,
    /// The tk-uniform family F on m0 + |G| vertices.
    pub family: UniformHypergraph,
    /// Index of the first pendant vertex; edge i's pendant is
    /// `pendant_offset + i`.
    pub pendant_offset: usize,
    pub shadow_size: usize,
    /// |F| / |σ_k(F)|, reported against `ratio_reference` = 1/C(tk−1,k−1);
    /// neither is asserted.
    pub ratio: Rational,
    pub ratio_reference: Rational,
}

/// Builds the pendant family over a base graph and certifies the two
/// structural guarantees: the family is (t+1)-union-free and
/// (ℓtk−(ℓ−1)k−1, ℓ)-free for 2 ≤ ℓ ≤ 2t+2. The base must itself be
/// (ℓ(tk−1)−(ℓ−1)k−1, ℓ)-free at every level; the error names the first
/// level that fails.
pub fn build_pendant_family(t: usize, k: usize, base: &UniformHypergraph) -> Result<PendantFamily> {
    if t < 2 || k < 2 {
        return Err(Error::parameter("pendant family requires t >= 2 and k >= 2"));
    }
    if base.r() != t * k - 1 {
        return Err(Error::parameter(format!(
            "base graph must be ({})-uniform, got uniformity {}",
            t * k - 1,
            base.r()
        )));
    }
    if base.is_empty() {
        return Err(Error::parameter("base graph has no edges"));
    }
    let r0 = t * k - 1;
    for level in 2..=2 * t + 2 {
        let v = level * r0 - (level - 1) * k - 1;
        if !check_config_free(base, v, level, u64::MAX)?.is_pass() {
            return Err(Error::Construction(format!(
                "base graph is not ({},{})-free, which level {} of the pendant \
                 family's sparsity requires",
                v, level, level
            )));
        }
    }
    let m0 = base.n();
    let n = m0 + base.len();
    let edges: Vec<Vec<u16>> = base
        .edges()
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let mut edge = e.clone();
            edge.push((m0 + i) as u16);
            edge
        })
        .collect();
    let family = UniformHypergraph::new(n, t * k, edges)?;

    // the pendant vertex of each edge appears in that edge only, so the
    // family must verify (t+1)-union-free; a failure here is a bug
    if !check_union_free(&family, t + 1, u64::MAX)?.is_pass() {
        return Err(Error::Construction(
            "pendant family failed (t+1)-union-free verification".into(),
        ));
    }
    for level in 2..=2 * t + 2 {
        let v = level * t * k - (level - 1) * k - 1;
        if !check_config_free(&family, v, level, u64::MAX)?.is_pass() {
            return Err(Error::Construction(format!(
                "pendant family failed ({},{})-freeness verification",
                v, level
            )));
        }
    }

    let shadow_size = shadow(&family, k)?.len();
    Ok(PendantFamily {
        ratio: Rational::new(family.len() as u128, shadow_size as u128),
        ratio_reference: Rational::new(1, binomial((t * k - 1) as u64, (k - 1) as u64)),
        shadow_size,
        pendant_offset: m0,
        base: base.clone(),
        family,
    })
}

impl PendantFamily {
    /// Removing the pendant vertices recovers the base exactly.
    pub fn strip_pendants(&self) -> Result<UniformHypergraph> {
        let edges: Vec<Vec<u16>> = self
            .family
            .edges()
            .iter()
            .map(|e| {
                e.iter()
                    .copied()
                    .filter(|&v| (v as usize) < self.pendant_offset)
                    .collect()
            })
            .collect();
        UniformHypergraph::new(self.pendant_offset, self.family.r() - 1, edges)
    }
}

/// The complement family and the extremal bounded-matching graph removed
/// to produce it.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ComplementFamily {
    /// k-uniform family on tk−a vertices: all k-subsets minus `removed`.
    pub family: UniformHypergraph,
    /// Extremal graph with matching number ≤ t−a−1.
    pub removed: UniformHypergraph,
    pub m_value: u128,
}

/// F = C([tk−a], k) minus an exhaustively-found maximum graph with no
/// t−a pairwise disjoint edges. The matching constraint on the removed
/// graph and the size identity |F| = C(tk−a,k) − m(tk−a,k,t−a−1) are
/// both re-verified.
pub fn build_complement_family(t: usize, k: usize, a: usize, budget: u64) -> Result<ComplementFamily> {
    if t < 2 || k < 2 || a < 1 || a > t - 1 {
        return Err(Error::parameter(format!(
            "complement family requires t >= 2, k >= 2, 1 <= a <= t-1; got ({},{},{})",
            t, k, a
        )));
    }
    let nn = t * k - a;
    let lambda = t - a - 1;
    let res = max_bounded_matching(nn, k, lambda, budget)?;
    if res.timed_out {
        return Err(Error::BudgetExhausted(res.nodes_explored));
    }
    let removed = res.witness;
    if matching_number(&removed) > lambda {
        return Err(Error::Construction(
            "removed graph exceeds the matching bound".into(),
        ));
    }
    let all: Vec<Vec<u16>> = combinations(nn, k)
        .into_iter()
        .map(|c| c.into_iter().map(|v| v as u16).collect::<Vec<u16>>())
        .filter(|e| !removed.contains_edge(e))
        .collect();
    let family = UniformHypergraph::new(nn, k, all)?;
    let expected = binomial(nn as u64, k as u64) - res.value as u128;
    if family.len() as u128 != expected {
        return Err(Error::Construction(format!(
            "complement family has {} edges, expected {}",
            family.len(),
            expected
        )));
    }
    Ok(ComplementFamily {
        family,
        removed,
        m_value: res.value as u128,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AssemblyMode {
    /// One relabeled copy of F per packed shadow copy; host edges are the
    /// union of the copies' edge sets.
    Shadow,
    /// One host edge per packed copy: its vertex set.
    VertexSets,
}

/// Host hypergraph assembled from a packing, with per-edge provenance.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct AssembledHypergraph {
    pub host: UniformHypergraph,
    /// For each host edge (in canonical order), the packing-copy index it
    /// came from.
    pub provenance: Vec<usize>,
    pub mode: AssemblyMode,
    pub k: usize,
}

/// H(F) = ∪ F_i where F_i is F pushed through copy i's vertex map. Each
/// copy is validated against the template: σ_k(F_i) must equal the
/// copy's edge set exactly.
pub fn assemble_shadow(f: &UniformHypergraph, packing: &Packing) -> Result<AssembledHypergraph> {
    let k = packing.params.k;
    let n = packing.params.n;
    if f.is_empty() {
        return Err(Error::parameter("template family has no edges"));
    }
    if f.n() != packing.params.m {
        return Err(Error::Construction(format!(
            "packing copies span {} vertices but V(F) has {}",
            packing.params.m,
            f.n()
        )));
    }
    let template_shadow = shadow(f, k)?;
    let mut edge_provenance: HashMap<Vec<u16>, usize> = HashMap::new();
    for (i, copy) in packing.copies.iter().enumerate() {
        let f_i = relabeled(f, copy, n)?;
        let shadow_i = shadow(&f_i, k)?;
        let mut copy_edges: Vec<Vec<u16>> = copy
            .edges
            .iter()
            .map(|e| {
                let mut s = e.clone();
                s.sort_unstable();
                s
            })
            .collect();
        copy_edges.sort_unstable();
        if shadow_i.edges() != copy_edges.as_slice() {
            return Err(Error::Construction(format!(
                "copy {} is not a placed copy of the template shadow \
                 (expected {} shadow edges, template shadow has {})",
                i,
                copy_edges.len(),
                template_shadow.len()
            )));
        }
        for edge in f_i.edges() {
            if let Some(&prev) = edge_provenance.get(edge) {
                return Err(Error::Construction(format!(
                    "copies {} and {} produce the same host edge",
                    prev, i
                )));
            }
            edge_provenance.insert(edge.clone(), i);
        }
    }
    let mut pairs: Vec<(Vec<u16>, usize)> = edge_provenance.into_iter().collect();
    pairs.sort_unstable();
    let provenance: Vec<usize> = pairs.iter().map(|(_, i)| *i).collect();
    let edges: Vec<Vec<u16>> = pairs.into_iter().map(|(e, _)| e).collect();
    let host = UniformHypergraph::new(n, f.r(), edges)?;
    Ok(AssembledHypergraph {
        host,
        provenance,
        mode: AssemblyMode::Shadow,
        k,
    })
}

fn relabeled(f: &UniformHypergraph, copy: &LabeledCopy, n: usize) -> Result<UniformHypergraph> {
    if copy.vertex_map.len() != f.n() {
        return Err(Error::Construction(format!(
            "vertex map has {} entries, template has {} vertices",
            copy.vertex_map.len(),
            f.n()
        )));
    }
    f.relabel(&copy.vertex_map, n)
}

/// H = {V(F_i)}: one (tk−a)-edge per packed copy of the k-graph F.
pub fn assemble_vertex_sets(
    f: &UniformHypergraph,
    packing: &Packing,
) -> Result<AssembledHypergraph> {
    let k = packing.params.k;
    let n = packing.params.n;
    if f.r() != k {
        return Err(Error::Construction(format!(
            "template uniformity {} does not match packing k={}",
            f.r(),
            k
        )));
    }
    let mut seen: HashMap<Vec<u16>, usize> = HashMap::new();
    let mut pairs: Vec<(Vec<u16>, usize)> = Vec::new();
    for (i, copy) in packing.copies.iter().enumerate() {
        if copy.vertex_map.len() != f.n() {
            return Err(Error::Construction(format!(
                "copy {} spans {} vertices, template has {}",
                i,
                copy.vertex_map.len(),
                f.n()
            )));
        }
        let mut vs = copy.vertex_map.clone();
        vs.sort_unstable();
        if let Some(&prev) = seen.get(&vs) {
            return Err(Error::Construction(format!(
                "copies {} and {} have the same vertex set, which an induced \
                 packing forbids",
                prev, i
            )));
        }
        seen.insert(vs.clone(), i);
        pairs.push((vs, i));
    }
    pairs.sort_unstable();
    let provenance: Vec<usize> = pairs.iter().map(|(_, i)| *i).collect();
    let edges: Vec<Vec<u16>> = pairs.into_iter().map(|(e, _)| e).collect();
    let host = UniformHypergraph::new(n, f.n(), edges)?;
    Ok(AssembledHypergraph {
        host,
        provenance,
        mode: AssemblyMode::VertexSets,
        k,
    })
}

/// Verdicts for one assembled instance: union-freeness at order t+1,
/// cover-freeness at order t, and local sparsity at each level. Failures
/// and inconclusive checks are report content, never silently upgraded.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct InstanceReport {
    pub t: usize,
    pub k: usize,
    pub a: usize,
    pub union_free: Verdict,
    pub cover_free: Verdict,
    /// (level, verdict) for 2 ≤ level ≤ 2t+2 with v = ℓ(tk−a)−(ℓ−1)k−1.
    pub sparsity: Vec<(usize, Verdict)>,
    pub all_pass: bool,
}

pub fn verify_main_theorem_instance(
    t: usize,
    k: usize,
    a: usize,
    assembled: &AssembledHypergraph,
    budget: u64,
) -> Result<InstanceReport> {
    let h = &assembled.host;
    if h.r() != t * k - a {
        return Err(Error::parameter(format!(
            "host uniformity {} does not match tk-a = {}",
            h.r(),
            t * k - a
        )));
    }
    let union_free = check_union_free(h, t + 1, budget)?;
    let cover_free = check_cover_free(h, t, budget)?;
    let mut sparsity = Vec::new();
    let mut all_pass = union_free.is_pass() && cover_free.is_pass();
    for level in 2..=2 * t + 2 {
        let v = level * (t * k - a) - (level - 1) * k - 1;
        let verdict = check_config_free(h, v, level, budget)?;
        all_pass &= verdict.is_pass();
        sparsity.push((level, verdict));
    }
    Ok(InstanceReport {
        t,
        k,
        a,
        union_free,
        cover_free,
        sparsity,
        all_pass,
    })
}
