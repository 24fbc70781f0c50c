//! Finite-scale locally sparse induced packings.
//!
//! The pipeline mirrors the probabilistic argument it realizes: color the
//! complete k-graph red/blue, enumerate placed template copies whose edges
//! are exactly the blue k-sets inside their vertex set, then run a greedy
//! conflict-free selection. The greedy carries no near-optimality
//! guarantee; what it returns is re-verified from scratch against the
//! three packing invariants (edge-disjoint, induced, locally sparse), and
//! coverage is reported as a metric only.

use std::collections::{HashMap, HashSet};

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::binomial;
use crate::error::Error;
use crate::hypergraph::{
    check_config_free, combinations, UniformHypergraph, Verdict, VertexSet,
};
use crate::{Result, RNG_VERSION};

/// Colex rank of a sorted k-subset; the index into [`Coloring::blue`].
fn rank_subset(verts: &[u16]) -> u64 {
    verts
        .iter()
        .enumerate()
        .map(|(i, &v)| binomial(v as u64, i as u64 + 1) as u64)
        .sum()
}

/// A red/blue coloring of the complete k-graph on [0,n).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Coloring {
    pub n: usize,
    pub k: usize,
    pub gamma: f64,
    pub seed: u64,
    pub rng_version: String,
    /// Indexed by colex rank of the k-subset.
    blue: Vec<bool>,
    pub blue_count: usize,
}

impl Coloring {
    pub fn is_blue(&self, verts: &[u16]) -> bool {
        self.blue[rank_subset(verts) as usize]
    }

    pub fn total(&self) -> usize {
        self.blue.len()
    }

    pub fn blue_fraction(&self) -> f64 {
        if self.blue.is_empty() {
            0.0
        } else {
            self.blue_count as f64 / self.blue.len() as f64
        }
    }
}

/// Independent per-k-set Bernoulli coloring: red with probability gamma.
/// Deterministic given (n, k, gamma, seed); the draw order is the
/// lexicographic order of k-subsets.
pub fn color(n: usize, k: usize, gamma: f64, seed: u64) -> Result<Coloring> {
    if k < 1 || k > n {
        return Err(Error::parameter(format!(
            "coloring requires 1 <= k <= n, got k={}, n={}",
            k, n
        )));
    }
    if !(0.0..=1.0).contains(&gamma) {
        return Err(Error::parameter("gamma must lie in [0,1]"));
    }
    let mut rng = crate::seeded_rng(seed);
    let total = binomial(n as u64, k as u64) as usize;
    let mut blue = vec![false; total];
    let mut blue_count = 0;
    for c in combinations(n, k) {
        let verts: Vec<u16> = c.iter().map(|&v| v as u16).collect();
        let is_red = rng.gen::<f64>() < gamma;
        if !is_red {
            blue[rank_subset(&verts) as usize] = true;
            blue_count += 1;
        }
    }
    Ok(Coloring {
        n,
        k,
        gamma,
        seed,
        rng_version: RNG_VERSION.to_string(),
        blue,
        blue_count,
    })
}

/// A placed copy of a template: an injective vertex map plus the image
/// edge set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct LabeledCopy {
    /// Image of template vertex i is `vertex_map[i]`.
    pub vertex_map: Vec<u16>,
    pub edges: Vec<Vec<u16>>,
}

impl LabeledCopy {
    pub fn vertex_set(&self, n: usize) -> VertexSet {
        VertexSet::from_verts(n, &self.vertex_map)
    }
}

/// A copy eligible for packing: every edge blue, every non-edge of its
/// vertex set red.
#[derive(Debug, Clone)]
pub struct CandidateCopy {
    pub copy: LabeledCopy,
    pub mask: VertexSet,
    pub edge_ranks: Vec<u64>,
}

/// All placed copies of J compatible with the coloring, one per eligible
/// vertex set (the edge set of a candidate is forced to be the induced
/// blue graph, so automorphic placements collapse automatically). The
/// recorded vertex map is the lexicographically least isomorphism.
pub fn enumerate_candidates(
    template: &UniformHypergraph,
    coloring: &Coloring,
) -> Result<Vec<CandidateCopy>> {
    let k = coloring.k;
    if template.r() != k {
        return Err(Error::parameter(format!(
            "template uniformity {} does not match coloring k={}",
            template.r(),
            k
        )));
    }
    if template.is_empty() {
        return Err(Error::parameter(
            "degenerate template with no edges: the blue/red condition is meaningless",
        ));
    }
    let m = template.n();
    let n = coloring.n;
    if m > n {
        return Ok(vec![]);
    }
    let template_degrees = degree_sequence(template);
    let local_subsets = combinations(m, k);
    let mut out = Vec::new();
    for w in combinations(n, m) {
        let host: Vec<u16> = w.iter().map(|&v| v as u16).collect();
        // induced blue k-graph on the host set, in local coordinates
        let mut blue_local: Vec<Vec<u16>> = Vec::new();
        let mut over = false;
        for sub in &local_subsets {
            let verts: Vec<u16> = sub.iter().map(|&i| host[i]).collect();
            if coloring.is_blue(&verts) {
                blue_local.push(sub.iter().map(|&i| i as u16).collect());
                if blue_local.len() > template.len() {
                    over = true;
                    break;
                }
            }
        }
        if over || blue_local.len() != template.len() {
            continue;
        }
        let induced = UniformHypergraph::new(m, k, blue_local)?;
        if degree_sequence(&induced) != template_degrees {
            continue;
        }
        if let Some(map_local) = find_isomorphism(template, &induced) {
            // template vertex i -> host vertex
            let vertex_map: Vec<u16> = map_local.iter().map(|&p| host[p as usize]).collect();
            let edges: Vec<Vec<u16>> = induced
                .edges()
                .iter()
                .map(|e| {
                    let mut img: Vec<u16> = e.iter().map(|&v| host[v as usize]).collect();
                    img.sort_unstable();
                    img
                })
                .collect();
            let edge_ranks = edges.iter().map(|e| rank_subset(e)).collect();
            out.push(CandidateCopy {
                mask: VertexSet::from_verts(n, &host),
                copy: LabeledCopy { vertex_map, edges },
                edge_ranks,
            });
        }
    }
    Ok(out)
}

fn degree_sequence(h: &UniformHypergraph) -> Vec<usize> {
    let mut deg = vec![0usize; h.n()];
    for e in h.edges() {
        for &v in e {
            deg[v as usize] += 1;
        }
    }
    deg.sort_unstable();
    deg
}

/// Lexicographically least bijection [0,m) -> [0,m) carrying `from` onto
/// `to`, or None. Plain backtracking with per-vertex degree pruning; the
/// templates here have at most a dozen vertices.
fn find_isomorphism(from: &UniformHypergraph, to: &UniformHypergraph) -> Option<Vec<u16>> {
    let m = from.n();
    if to.n() != m || to.len() != from.len() || to.r() != from.r() {
        return None;
    }
    let mut deg_from = vec![0usize; m];
    for e in from.edges() {
        for &v in e {
            deg_from[v as usize] += 1;
        }
    }
    let mut deg_to = vec![0usize; m];
    for e in to.edges() {
        for &v in e {
            deg_to[v as usize] += 1;
        }
    }
    let mut map = vec![u16::MAX; m];
    let mut used = vec![false; m];
    fn rec(
        v: usize,
        from: &UniformHypergraph,
        to: &UniformHypergraph,
        deg_from: &[usize],
        deg_to: &[usize],
        map: &mut Vec<u16>,
        used: &mut Vec<bool>,
    ) -> bool {
        let m = map.len();
        if v == m {
            // full check: every edge of `from` must map onto an edge of `to`
            return from.edges().iter().all(|e| {
                let img: Vec<u16> = e.iter().map(|&x| map[x as usize]).collect();
                to.contains_edge(&img)
            });
        }
        for img in 0..m {
            if used[img] || deg_from[v] != deg_to[img] {
                continue;
            }
            map[v] = img as u16;
            used[img] = true;
            // prune: edges fully mapped so far must be edges of `to`
            let ok = from.edges().iter().all(|e| {
                if e.iter().any(|&x| map[x as usize] == u16::MAX) {
                    return true;
                }
                let img_e: Vec<u16> = e.iter().map(|&x| map[x as usize]).collect();
                to.contains_edge(&img_e)
            });
            if ok && rec(v + 1, from, to, deg_from, deg_to, map, used) {
                return true;
            }
            map[v] = u16::MAX;
            used[img] = false;
        }
        false
    }
    if rec(0, from, to, &deg_from, &deg_to, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PackingFlags {
    pub edge_disjoint: bool,
    pub induced: bool,
    /// Some(e) when the vertex-set m-graph verified (ℓm−(ℓ−1)k−1,ℓ)-free
    /// for all 2 ≤ ℓ ≤ e.
    pub locally_sparse: Option<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PackingParams {
    pub n: usize,
    pub k: usize,
    pub m: usize,
    pub e: usize,
    pub gamma: f64,
    pub seed: u64,
    pub rng_version: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Packing {
    pub params: PackingParams,
    pub copies: Vec<LabeledCopy>,
    pub flags: PackingFlags,
    /// k-edges used divided by C(n,k).
    pub coverage: f64,
}

#[derive(Debug, Clone, Copy, Default, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DegreeStats {
    pub min: u64,
    pub mean: f64,
    pub max: u64,
    /// Empirical stand-in for the reference density d: the mean degree of
    /// a blue k-set in the candidate hypergraph.
    pub d: f64,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RejectionCounts {
    pub edge_disjoint: u64,
    pub induced: u64,
    pub sparsity: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PackRunReport {
    pub params: PackingParams,
    pub candidate_count: usize,
    pub blue_count: usize,
    pub blue_fraction: f64,
    pub degree_stats: DegreeStats,
    pub conflict_rejections: RejectionCounts,
    pub final_size: usize,
    /// k-edges used / C(n,k).
    pub coverage: f64,
    /// k-edges used / number of blue k-sets.
    pub blue_coverage: f64,
    pub verification_flags: PackingFlags,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rejection {
    /// Shares the named k-edge with an accepted copy.
    EdgeDisjoint { copy: usize, edge: Vec<u16> },
    /// Vertex overlap with an accepted copy exceeds k, or equals k on a
    /// set that is an edge of one side.
    Induced { copy: usize, shared: Vec<u16> },
    /// Together with the listed accepted copies, spans too few vertices.
    Sparsity { level: usize, copies: Vec<usize>, span: usize },
}

/// Incremental packing state: accepted copies plus the indexes needed for
/// O(neighborhood) conflict checks.
pub struct PackBuilder {
    n: usize,
    k: usize,
    m: usize,
    e: usize,
    used_edges: HashSet<u64>,
    copies: Vec<CandidateCopy>,
    vert_to_copies: Vec<Vec<usize>>,
}

impl PackBuilder {
    pub fn new(n: usize, k: usize, m: usize, e: usize) -> Self {
        PackBuilder {
            n,
            k,
            m,
            e,
            used_edges: HashSet::new(),
            copies: Vec::new(),
            vert_to_copies: vec![Vec::new(); n],
        }
    }

    pub fn len(&self) -> usize {
        self.copies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.copies.is_empty()
    }

    pub fn copies(&self) -> &[CandidateCopy] {
        &self.copies
    }

    /// Accept iff adding the candidate preserves edge-disjointness,
    /// induced-ness, and the (ℓm−(ℓ−1)k−1,ℓ)-freeness of the vertex-set
    /// m-graph for all 2 ≤ ℓ ≤ e.
    pub fn check(&self, cand: &CandidateCopy) -> std::result::Result<(), Rejection> {
        // edge-disjointness
        for (ri, rank) in cand.edge_ranks.iter().enumerate() {
            if self.used_edges.contains(rank) {
                let copy = self
                    .copies
                    .iter()
                    .position(|c| c.edge_ranks.contains(rank))
                    .unwrap_or(usize::MAX);
                return Err(Rejection::EdgeDisjoint {
                    copy,
                    edge: cand.copy.edges[ri].clone(),
                });
            }
        }
        // induced-ness against overlapping copies (also the ℓ=2 sparsity
        // level: |V∪V'| <= 2m−k−1 is exactly overlap >= k+1)
        let mut neighbors: Vec<usize> = Vec::new();
        for v in cand.mask.to_verts() {
            for &ci in &self.vert_to_copies[v as usize] {
                if !neighbors.contains(&ci) {
                    neighbors.push(ci);
                }
            }
        }
        neighbors.sort_unstable();
        for &ci in &neighbors {
            let other = &self.copies[ci];
            let inter = cand.mask.intersection(&other.mask);
            let cnt = inter.count();
            if cnt > self.k {
                return Err(Rejection::Induced {
                    copy: ci,
                    shared: inter.to_verts(),
                });
            }
            if cnt == self.k {
                let shared = inter.to_verts();
                let rank = rank_subset(&shared);
                if cand.edge_ranks.contains(&rank) || other.edge_ranks.contains(&rank) {
                    return Err(Rejection::Induced { copy: ci, shared });
                }
            }
        }
        // higher sparsity levels: any violating set containing the
        // candidate contains a connected violating subset containing it
        // (each further copy must overlap the partial union by at least
        // k+1 vertices given that the accepted copies are themselves
        // sparse), so a DFS over connected supersets is exhaustive.
        if self.e >= 3 {
            if let Some((level, copies, span)) = self.sparsity_violation(cand) {
                return Err(Rejection::Sparsity {
                    level,
                    copies,
                    span,
                });
            }
        }
        Ok(())
    }

    fn sparsity_violation(&self, cand: &CandidateCopy) -> Option<(usize, Vec<usize>, usize)> {
        let (m, k, e) = (self.m, self.k, self.e);
        let mut chosen: Vec<usize> = Vec::new();
        let mut visited: HashSet<Vec<usize>> = HashSet::new();

        fn rec(
            b: &PackBuilder,
            union: &VertexSet,
            chosen: &mut Vec<usize>,
            visited: &mut HashSet<Vec<usize>>,
            m: usize,
            k: usize,
            e: usize,
        ) -> Option<(usize, Vec<usize>, usize)> {
            let level = chosen.len() + 1; // +1 for the candidate itself
            if level >= 2 {
                let bound = level * m - (level - 1) * k;
                if union.count() < bound {
                    return Some((level, chosen.clone(), union.count()));
                }
            }
            if level == e {
                return None;
            }
            // extension candidates: accepted copies touching the union
            let mut ext: Vec<usize> = Vec::new();
            for v in union.to_verts() {
                for &ci in &b.vert_to_copies[v as usize] {
                    if !chosen.contains(&ci) && !ext.contains(&ci) {
                        ext.push(ci);
                    }
                }
            }
            ext.sort_unstable();
            for ci in ext {
                chosen.push(ci);
                let mut key = chosen.clone();
                key.sort_unstable();
                if visited.insert(key) {
                    let mut next = union.clone();
                    next.union_with(&b.copies[ci].mask);
                    if let Some(hit) = rec(b, &next, chosen, visited, m, k, e) {
                        return Some(hit);
                    }
                }
                chosen.pop();
            }
            None
        }

        rec(self, &cand.mask, &mut chosen, &mut visited, m, k, e)
    }

    pub fn accept(&mut self, cand: CandidateCopy) {
        for &rank in &cand.edge_ranks {
            self.used_edges.insert(rank);
        }
        let idx = self.copies.len();
        for v in cand.mask.to_verts() {
            self.vert_to_copies[v as usize].push(idx);
        }
        self.copies.push(cand);
    }

    pub fn used_edge_count(&self) -> usize {
        self.used_edges.len()
    }

    fn into_packing(self, params: PackingParams, flags: PackingFlags) -> Packing {
        let total = binomial(self.n as u64, self.k as u64) as f64;
        let coverage = if total > 0.0 {
            self.used_edges.len() as f64 / total
        } else {
            0.0
        };
        Packing {
            params,
            copies: self.copies.into_iter().map(|c| c.copy).collect(),
            flags,
            coverage,
        }
    }
}

/// Seeded greedy packing run: color, enumerate, shuffle, filter, verify.
pub fn greedy_pack(
    template: &UniformHypergraph,
    n: usize,
    e: usize,
    gamma: f64,
    seed: u64,
) -> Result<(Packing, PackRunReport)> {
    if e < 2 {
        return Err(Error::parameter("sparsity horizon e must be >= 2"));
    }
    let k = template.r();
    let m = template.n();
    let coloring = color(n, k, gamma, seed)?;
    let candidates = enumerate_candidates(template, &coloring)?;

    let degree_stats = blue_degree_stats(&coloring, &candidates);

    // shuffle with the same seeded stream, continued past the coloring
    let mut order: Vec<usize> = (0..candidates.len()).collect();
    {
        let mut rng = crate::seeded_rng(seed.wrapping_add(0x9e3779b97f4a7c15));
        order.shuffle(&mut rng);
    }

    let mut builder = PackBuilder::new(n, k, m, e);
    let mut rejections = RejectionCounts::default();
    for &i in &order {
        match builder.check(&candidates[i]) {
            Ok(()) => builder.accept(candidates[i].clone()),
            Err(Rejection::EdgeDisjoint { .. }) => rejections.edge_disjoint += 1,
            Err(Rejection::Induced { .. }) => rejections.induced += 1,
            Err(Rejection::Sparsity { .. }) => rejections.sparsity += 1,
        }
    }

    let params = PackingParams {
        n,
        k,
        m,
        e,
        gamma,
        seed,
        rng_version: RNG_VERSION.to_string(),
    };
    let used = builder.used_edge_count();
    let final_size = builder.len();
    let copies: Vec<LabeledCopy> = builder.copies().iter().map(|c| c.copy.clone()).collect();

    // from-scratch re-verification of all three invariants
    let flags = verify_copies(&copies, n, k, m, e)?;
    if !(flags.edge_disjoint && flags.induced && flags.locally_sparse == Some(e)) {
        return Err(Error::Packing(format!(
            "greedy output failed from-scratch verification: {:?}",
            flags
        )));
    }

    let packing = builder.into_packing(params.clone(), flags.clone());
    let report = PackRunReport {
        params,
        candidate_count: candidates.len(),
        blue_count: coloring.blue_count,
        blue_fraction: coloring.blue_fraction(),
        degree_stats,
        conflict_rejections: rejections,
        final_size,
        coverage: packing.coverage,
        blue_coverage: if coloring.blue_count > 0 {
            used as f64 / coloring.blue_count as f64
        } else {
            0.0
        },
        verification_flags: flags,
    };
    Ok((packing, report))
}

fn blue_degree_stats(coloring: &Coloring, candidates: &[CandidateCopy]) -> DegreeStats {
    let mut deg: HashMap<u64, u64> = HashMap::new();
    for cand in candidates {
        for &rank in &cand.edge_ranks {
            *deg.entry(rank).or_insert(0) += 1;
        }
    }
    if coloring.blue_count == 0 {
        return DegreeStats::default();
    }
    // blue sets with no candidate have degree zero
    let covered = deg.len() as u64;
    let sum: u64 = deg.values().sum();
    let max = deg.values().copied().max().unwrap_or(0);
    let min = if covered < coloring.blue_count as u64 {
        0
    } else {
        deg.values().copied().min().unwrap_or(0)
    };
    let mean = sum as f64 / coloring.blue_count as f64;
    DegreeStats {
        min,
        mean,
        max,
        d: mean,
    }
}

/// From-scratch verification of the packing invariants for a list of
/// placed copies, independent of the greedy's incremental bookkeeping.
pub fn verify_copies(
    copies: &[LabeledCopy],
    n: usize,
    k: usize,
    m: usize,
    e: usize,
) -> Result<PackingFlags> {
    let mut flags = PackingFlags {
        edge_disjoint: true,
        induced: true,
        locally_sparse: None,
    };
    let mut seen_edges: HashSet<Vec<u16>> = HashSet::new();
    for c in copies {
        for edge in &c.edges {
            let mut s = edge.clone();
            s.sort_unstable();
            if !seen_edges.insert(s) {
                flags.edge_disjoint = false;
            }
        }
    }
    let masks: Vec<VertexSet> = copies.iter().map(|c| c.vertex_set(n)).collect();
    let edge_sets: Vec<HashSet<Vec<u16>>> = copies
        .iter()
        .map(|c| {
            c.edges
                .iter()
                .map(|e| {
                    let mut s = e.clone();
                    s.sort_unstable();
                    s
                })
                .collect()
        })
        .collect();
    for i in 0..copies.len() {
        for j in i + 1..copies.len() {
            let inter = masks[i].intersection(&masks[j]);
            let cnt = inter.count();
            if cnt > k {
                flags.induced = false;
            } else if cnt == k {
                let shared = inter.to_verts();
                if edge_sets[i].contains(&shared) || edge_sets[j].contains(&shared) {
                    flags.induced = false;
                }
            }
        }
    }
    // vertex-set m-graph sparsity, via the exact configuration search
    let mut vsets: Vec<Vec<u16>> = copies.iter().map(|c| {
        let mut v = c.vertex_map.clone();
        v.sort_unstable();
        v
    }).collect();
    vsets.sort_unstable();
    vsets.dedup();
    if vsets.len() != copies.len() {
        // duplicate vertex sets: not a packing of distinct placed copies
        flags.induced = false;
        flags.edge_disjoint = false;
        return Ok(flags);
    }
    let vgraph = UniformHypergraph::new(n, m, vsets)?;
    let mut sparse_to = None;
    for level in 2..=e {
        let v = level * m - (level - 1) * k - 1;
        match check_config_free(&vgraph, v, level, u64::MAX)? {
            Verdict::Pass => sparse_to = Some(level),
            _ => break,
        }
    }
    flags.locally_sparse = match sparse_to {
        Some(l) if l == e => Some(e),
        _ => sparse_to,
    };
    Ok(flags)
}

// ---------------------------------------------------------------------------
// conflict-system audit (diagnostic only)

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct LevelAudit {
    pub level: usize,
    /// Number of minimal bad configurations found.
    pub conflict_count: u64,
    /// Max over candidates of the number of level-`level` conflicts
    /// containing it.
    pub delta1: u64,
    pub complete: bool,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ConflictAuditStats {
    pub levels: Vec<LevelAudit>,
    /// Condition (iii): max over (candidate, vertex) of the number of
    /// 2-conflict partners containing the vertex.
    pub pair_vertex_degree_max: u64,
    /// Condition (iv): max over disjoint candidate pairs of common
    /// 2-conflict partners.
    pub common_partner_max: u64,
    pub partial: bool,
}

/// Samples the conflict system of minimal bad configurations and reports
/// the degree statistics the asymptotic argument bounds. Level 2 is
/// exhaustive when the budget allows; higher levels stop at the budget
/// and are flagged incomplete.
pub fn audit_conflict_system(
    candidates: &[CandidateCopy],
    n: usize,
    k: usize,
    m: usize,
    e: usize,
    budget: u64,
) -> ConflictAuditStats {
    let mut stats = ConflictAuditStats::default();
    let mut spent: u64 = 0;

    // overlap adjacency via vertex index
    let mut vert_to: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, c) in candidates.iter().enumerate() {
        for v in c.mask.to_verts() {
            vert_to[v as usize].push(i);
        }
    }

    // level 2: pairs overlapping in >= k+1 vertices
    let mut deg2: Vec<u64> = vec![0; candidates.len()];
    let mut partners: Vec<Vec<usize>> = vec![Vec::new(); candidates.len()];
    let mut count2: u64 = 0;
    let mut complete2 = true;
    'outer: for (i, c) in candidates.iter().enumerate() {
        let mut neigh: Vec<usize> = Vec::new();
        for v in c.mask.to_verts() {
            for &j in &vert_to[v as usize] {
                if j > i && !neigh.contains(&j) {
                    neigh.push(j);
                }
            }
        }
        for j in neigh {
            spent += 1;
            if spent > budget {
                complete2 = false;
                stats.partial = true;
                break 'outer;
            }
            if c.mask.intersection_count(&candidates[j].mask) >= k + 1 {
                count2 += 1;
                deg2[i] += 1;
                deg2[j] += 1;
                partners[i].push(j);
                partners[j].push(i);
            }
        }
    }
    stats.levels.push(LevelAudit {
        level: 2,
        conflict_count: count2,
        delta1: deg2.iter().copied().max().unwrap_or(0),
        complete: complete2,
    });

    // condition (iii)
    let mut iii_max: u64 = 0;
    for (i, ps) in partners.iter().enumerate() {
        let _ = i;
        let mut per_vertex: HashMap<u16, u64> = HashMap::new();
        for &p in ps {
            for v in candidates[p].mask.to_verts() {
                *per_vertex.entry(v).or_insert(0) += 1;
            }
        }
        iii_max = iii_max.max(per_vertex.values().copied().max().unwrap_or(0));
    }
    stats.pair_vertex_degree_max = iii_max;

    // condition (iv): common partners of disjoint pairs, through shared
    // partners only (others have zero common count)
    let mut iv_max: u64 = 0;
    'iv: for ps in &partners {
        for a in 0..ps.len() {
            for b in a + 1..ps.len() {
                spent += 1;
                if spent > budget {
                    stats.partial = true;
                    break 'iv;
                }
                let (x, y) = (ps[a], ps[b]);
                if candidates[x].mask.intersects(&candidates[y].mask) {
                    continue;
                }
                let common = partners[x]
                    .iter()
                    .filter(|p| partners[y].contains(p))
                    .count() as u64;
                iv_max = iv_max.max(common);
            }
        }
    }
    stats.common_partner_max = iv_max;

    // higher levels: DFS over connected candidate sets, minimality per
    // the conflict-system definition
    for level in 3..=e {
        let mut count: u64 = 0;
        let mut deg: Vec<u64> = vec![0; candidates.len()];
        let mut complete = true;
        let mut visited: HashSet<Vec<usize>> = HashSet::new();

        fn union_count(cands: &[CandidateCopy], set: &[usize], n: usize) -> usize {
            let mut u = VertexSet::empty(n.max(1));
            for &i in set {
                u.union_with(&cands[i].mask);
            }
            u.count()
        }

        let mut stack: Vec<Vec<usize>> = (0..candidates.len()).map(|i| vec![i]).collect();
        while let Some(set) = stack.pop() {
            spent += 1;
            if spent > budget {
                complete = false;
                stats.partial = true;
                break;
            }
            if set.len() == level {
                let span = union_count(candidates, &set, n);
                if span <= level * m - (level - 1) * k - 1 && is_minimal(candidates, &set, n, m, k)
                {
                    count += 1;
                    for &i in &set {
                        deg[i] += 1;
                    }
                }
                continue;
            }
            // extend connectedly
            let mut ext: Vec<usize> = Vec::new();
            for &i in &set {
                for v in candidates[i].mask.to_verts() {
                    for &j in &vert_to[v as usize] {
                        if !set.contains(&j) && !ext.contains(&j) {
                            ext.push(j);
                        }
                    }
                }
            }
            for j in ext {
                let mut next = set.clone();
                next.push(j);
                next.sort_unstable();
                if visited.insert(next.clone()) {
                    stack.push(next);
                }
            }
        }
        stats.levels.push(LevelAudit {
            level,
            conflict_count: count,
            delta1: deg.iter().copied().max().unwrap_or(0),
            complete,
        });
    }
    stats
}

/// Eq.-style minimality: every proper subset of size >= 1 spans at least
/// |S|m − (|S|−1)k vertices.
fn is_minimal(cands: &[CandidateCopy], set: &[usize], n: usize, m: usize, k: usize) -> bool {
    for size in 1..set.len() {
        for sub in combinations(set.len(), size) {
            let mut u = VertexSet::empty(n.max(1));
            for &pos in &sub {
                u.union_with(&cands[set[pos]].mask);
            }
            if u.count() < size * m - (size - 1) * k {
                return false;
            }
        }
    }
    true
}
