//! Component graph, bounded enumeration of component clusters, mutation
//! and exchange.
//!
//! The set of Schur roots is infinite, so every enumeration works inside
//! a [`SearchBound`]: positive Schur roots `d <= cap` plus all negative
//! simples. A cluster is certified maximal relative to its bound.

use std::collections::BTreeSet;
use std::fmt;

use crate::affine;
use crate::catalog::{self, Orientation};
use crate::error::{Error, Result};
use crate::homext::{GenSchurRoot, GenericDecomposition, HomExt};
use crate::quiver::{Quiver, QuiverClass};
use crate::vector::DimVector;

pub const DEFAULT_CLIQUE_GUARD: usize = 1_000_000;
/// Largest quiver accepted by [`wild_imaginary_bound`].
pub const WILD_BOUND_MAX_VERTICES: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchBound {
    cap: DimVector,
}

impl SearchBound {
    pub fn new(cap: DimVector) -> Result<Self> {
        if !cap.is_nonnegative() {
            return Err(Error::domain(format!("search cap {cap} has negative entries")));
        }
        Ok(SearchBound { cap })
    }

    pub fn cap(&self) -> &DimVector {
        &self.cap
    }

    /// Whether `r` is searched under this bound.
    pub fn admits(&self, r: &GenSchurRoot) -> bool {
        r.is_negative() || r.vector().le(&self.cap)
    }
}

/// A set of pairwise ext-orthogonal generalized Schur roots that no
/// root within `bound` extends.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentCluster {
    roots: Vec<GenSchurRoot>,
    bound: SearchBound,
    global: bool,
}

impl ComponentCluster {
    /// Sorts `roots` and certifies pairwise orthogonality and maximality
    /// within `bound`.
    pub fn certified(h: &HomExt, roots: Vec<GenSchurRoot>, bound: SearchBound) -> Result<Self> {
        let all = schur_roots_up_to(h, &bound)?;
        Self::certified_against(h, roots, bound, &all)
    }

    fn certified_against(h: &HomExt, mut roots: Vec<GenSchurRoot>, bound: SearchBound, all: &[GenSchurRoot]) -> Result<Self> {
        roots.sort();
        roots.dedup();
        for (i, a) in roots.iter().enumerate() {
            if let Some(b) = roots[i + 1..].iter().find(|b| !h.ext_orthogonal(a, b)) {
                return Err(Error::internal(format!("cluster members {a} and {b} are not ext-orthogonal")));
            }
        }
        if let Some(x) = all
            .iter()
            .find(|x| roots.binary_search(x).is_err() && roots.iter().all(|r| h.ext_orthogonal(r, x)))
        {
            let c = ComponentCluster { roots, bound, global: false };
            return Err(Error::internal(format!("cluster {c} is extended by {x}")));
        }
        Ok(ComponentCluster { roots, bound, global: false })
    }

    /// Marks the cluster as maximal among all Schur roots, not just those
    /// within its bound. Callers must have a proof.
    pub fn mark_globally_maximal(mut self) -> Self {
        self.global = true;
        self
    }

    pub fn roots(&self) -> &[GenSchurRoot] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn contains(&self, r: &GenSchurRoot) -> bool {
        self.roots.binary_search(r).is_ok()
    }

    pub fn bound(&self) -> &SearchBound {
        &self.bound
    }

    pub fn is_globally_maximal(&self) -> bool {
        self.global
    }

    /// Roots joined by commas, e.g. `(0,1),-e_1`.
    pub fn label(&self) -> String {
        self.roots.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(",")
    }

    pub fn intersection(&self, other: &ComponentCluster) -> Vec<GenSchurRoot> {
        self.roots.iter().filter(|r| other.contains(r)).cloned().collect()
    }
}

impl fmt::Display for ComponentCluster {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.roots.iter().map(|r| r.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Positive Schur roots `d <= cap` followed by `-e_1, ..., -e_n`.
pub fn schur_roots_up_to(h: &HomExt, bound: &SearchBound) -> Result<Vec<GenSchurRoot>> {
    let n = h.n();
    if bound.cap.len() != n {
        return Err(Error::Dimension { expected: n, got: bound.cap.len() });
    }
    let mut out = Vec::new();
    for d in bound.cap.box_below().filter(|d| !d.is_zero()) {
        if h.is_schur_root(&d)? {
            out.push(GenSchurRoot::positive_unchecked(d));
        }
    }
    out.extend((0..n).map(|i| GenSchurRoot::negative(n, i)));
    out.sort();
    Ok(out)
}

/// Ext-orthogonality graph on a list of roots.
#[derive(Clone, Debug)]
pub struct ComponentGraph {
    roots: Vec<GenSchurRoot>,
    adj: Vec<Vec<bool>>,
}

impl ComponentGraph {
    pub fn roots(&self) -> &[GenSchurRoot] {
        &self.roots
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adj[i][j]
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.iter().filter(|&&b| b).count()).sum::<usize>() / 2
    }

    /// Maximal cliques as sorted index lists, in lexicographic order.
    pub fn maximal_cliques(&self, guard: usize) -> Result<Vec<Vec<usize>>> {
        let mut out = Vec::new();
        let p: Vec<usize> = (0..self.roots.len()).collect();
        self.bron_kerbosch(&mut Vec::new(), p, Vec::new(), &mut out, guard)?;
        for c in out.iter_mut() {
            c.sort_unstable();
        }
        out.sort();
        Ok(out)
    }

    fn bron_kerbosch(
        &self,
        r: &mut Vec<usize>,
        p: Vec<usize>,
        x: Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        guard: usize,
    ) -> Result<()> {
        if p.is_empty() {
            if x.is_empty() {
                if out.len() >= guard {
                    return Err(Error::guard(format!("more than {guard} maximal cliques")));
                }
                out.push(r.clone());
            }
            return Ok(());
        }
        let pivot = p
            .iter()
            .chain(&x)
            .copied()
            .max_by_key(|&u| (p.iter().filter(|&&v| self.adj[u][v]).count(), std::cmp::Reverse(u)))
            .unwrap();
        let branch: Vec<usize> = p.iter().copied().filter(|&v| !self.adj[pivot][v]).collect();
        let (mut p, mut x) = (p, x);
        for v in branch {
            let np = p.iter().copied().filter(|&w| self.adj[v][w]).collect();
            let nx = x.iter().copied().filter(|&w| self.adj[v][w]).collect();
            r.push(v);
            self.bron_kerbosch(r, np, nx, out, guard)?;
            r.pop();
            p.retain(|&w| w != v);
            x.push(v);
        }
        Ok(())
    }
}

pub fn component_graph(h: &HomExt, roots: &[GenSchurRoot]) -> ComponentGraph {
    let k = roots.len();
    let mut adj = vec![vec![false; k]; k];
    for i in 0..k {
        for j in i + 1..k {
            let o = h.ext_orthogonal(&roots[i], &roots[j]);
            adj[i][j] = o;
            adj[j][i] = o;
        }
    }
    ComponentGraph { roots: roots.to_vec(), adj }
}

/// All component clusters within `bound`, sorted.
pub fn enumerate_clusters(h: &HomExt, bound: &SearchBound) -> Result<Vec<ComponentCluster>> {
    enumerate_clusters_with_guard(h, bound, DEFAULT_CLIQUE_GUARD)
}

pub fn enumerate_clusters_with_guard(h: &HomExt, bound: &SearchBound, guard: usize) -> Result<Vec<ComponentCluster>> {
    let roots = schur_roots_up_to(h, bound)?;
    let g = component_graph(h, &roots);
    let mut out = Vec::new();
    for clique in g.maximal_cliques(guard)? {
        let members = clique.iter().map(|&i| roots[i].clone()).collect();
        out.push(ComponentCluster::certified_against(h, members, bound.clone(), &roots)?);
    }
    out.sort_by(|a, b| a.roots.cmp(&b.roots));
    Ok(out)
}

/// `|C1 ∩ C2| = min(|C1|, |C2|) - 1`.
pub fn is_mutation(c1: &ComponentCluster, c2: &ComponentCluster) -> bool {
    let common = c1.intersection(c2).len();
    common + 1 == c1.len().min(c2.len())
}

/// All clusters within `bound` that contain `C - {alpha}` but not `alpha`.
pub fn mutate(h: &HomExt, c: &ComponentCluster, alpha: &GenSchurRoot, bound: &SearchBound) -> Result<Vec<ComponentCluster>> {
    if !c.contains(alpha) {
        return Err(Error::domain(format!("{alpha} is not in {c}")));
    }
    let rest: Vec<GenSchurRoot> = c.roots.iter().filter(|r| *r != alpha).cloned().collect();
    let all = schur_roots_up_to(h, bound)?;
    let candidates: Vec<GenSchurRoot> = all
        .iter()
        .filter(|x| *x != alpha && !rest.contains(x))
        .filter(|x| rest.iter().all(|r| h.ext_orthogonal(r, x)))
        .cloned()
        .collect();
    let g = component_graph(h, &candidates);
    let mut out = Vec::new();
    for clique in g.maximal_cliques(DEFAULT_CLIQUE_GUARD)? {
        if clique.iter().all(|&i| h.ext_orthogonal(alpha, &candidates[i])) {
            continue;
        }
        let mut members = rest.clone();
        members.extend(clique.iter().map(|&i| candidates[i].clone()));
        out.push(ComponentCluster::certified_against(h, members, bound.clone(), &all)?);
    }
    out.sort_by(|a, b| a.roots.cmp(&b.roots));
    Ok(out)
}

/// Greedy completion of a set of pairwise orthogonal roots, adding roots
/// within `bound` in sorted order.
pub fn complete(h: &HomExt, seed: &[GenSchurRoot], bound: &SearchBound) -> Result<ComponentCluster> {
    let all = schur_roots_up_to(h, bound)?;
    let mut members: Vec<GenSchurRoot> = seed.to_vec();
    for x in &all {
        if !members.contains(x) && members.iter().all(|m| h.ext_orthogonal(m, x)) {
            members.push(x.clone());
        }
    }
    ComponentCluster::certified_against(h, members, bound.clone(), &all)
}

/// The generic decomposition of `alpha + alpha'` for a mutation pair.
#[derive(Clone, Debug)]
pub struct ExchangeRelation {
    pub removed: GenSchurRoot,
    pub added: GenSchurRoot,
    pub decomposition: GenericDecomposition,
    /// A cluster containing `C1 ∩ C2` and every part of the decomposition.
    pub hosting: ComponentCluster,
}

impl ExchangeRelation {
    /// Distinct parts of the decomposition.
    pub fn parts(&self) -> Vec<GenSchurRoot> {
        let set: BTreeSet<GenSchurRoot> = self.decomposition.summands().iter().cloned().collect();
        set.into_iter().collect()
    }
}

pub fn exchange(
    h: &HomExt,
    c1: &ComponentCluster,
    c2: &ComponentCluster,
    alpha: &GenSchurRoot,
    alpha_new: &GenSchurRoot,
    bound: &SearchBound,
) -> Result<ExchangeRelation> {
    if !is_mutation(c1, c2) {
        return Err(Error::domain(format!("{c1} and {c2} are not related by a mutation")));
    }
    if !c1.contains(alpha) || c2.contains(alpha) {
        return Err(Error::domain(format!("{alpha} must lie in C1 but not in C2")));
    }
    if !c2.contains(alpha_new) || c1.contains(alpha_new) {
        return Err(Error::domain(format!("{alpha_new} must lie in C2 but not in C1")));
    }
    if h.ext_orthogonal(alpha, alpha_new) {
        return Err(Error::domain(format!("{alpha} and {alpha_new} are ext-orthogonal")));
    }
    let sum = alpha.vector() + alpha_new.vector();
    let decomposition = h.generic_decomposition(&sum)?;
    let common = c1.intersection(c2);
    for part in decomposition.summands() {
        if part == alpha || part == alpha_new {
            return Err(Error::internal(format!(
                "exchange of {alpha} and {alpha_new}: part {part} repeats an exchanged root"
            )));
        }
        if let Some(c) = common.iter().find(|c| !h.ext_orthogonal(c, part)) {
            return Err(Error::internal(format!(
                "exchange of {alpha} and {alpha_new}: part {part} is not orthogonal to {c} in C1 ∩ C2"
            )));
        }
    }
    let mut seed = common;
    for part in decomposition.summands() {
        if !seed.contains(part) {
            seed.push(part.clone());
        }
    }
    let hosting = complete(h, &seed, bound)?;
    Ok(ExchangeRelation { removed: alpha.clone(), added: alpha_new.clone(), decomposition, hosting })
}

/// Steps taken when walking a preprojective root down to a projective.
const MAX_TAU_STEPS: usize = 10_000;

/// The exchange of `delta` against the preprojective root `beta`:
/// `beta_1 = delta + beta` and its partner `beta_1'`.
///
/// `beta_1'` is `beta - delta` when that is a positive preprojective root;
/// otherwise it is the unique completion of `(C - {delta}) ∪ {beta}`
/// other than `beta_1` within the box below `delta + beta`.
pub fn affine_exchange(h: &HomExt, delta_cluster: &ComponentCluster, beta: &GenSchurRoot) -> Result<(GenSchurRoot, GenSchurRoot)> {
    let q = h.quiver();
    let dl = affine::delta(q)?;
    let delta_root = GenSchurRoot::positive_unchecked(dl.clone());
    if !delta_cluster.contains(&delta_root) {
        return Err(Error::domain(format!("{delta_cluster} does not contain delta = {dl}")));
    }
    let b = beta.vector().clone();
    if beta.is_negative()
        || q.is_root(&b)? != crate::quiver::RootType::Real
        || affine::regular_class(q, &b)? != affine::RegularClass::Preprojective
    {
        return Err(Error::domain(format!("{beta} is not a real preprojective root")));
    }
    let tube_part: Vec<GenSchurRoot> = delta_cluster.roots().iter().filter(|r| **r != delta_root).cloned().collect();
    if let Some(r) = tube_part.iter().find(|r| !h.ext_orthogonal(r, beta)) {
        return Err(Error::domain(format!("{beta} is not ext-orthogonal to {r}")));
    }
    check_extending_orbit(q, &b)?;

    let b1 = &dl + &b;
    if !h.is_schur_root(&b1)? || affine::regular_class(q, &b1)? != affine::RegularClass::Preprojective {
        return Err(Error::internal(format!("delta + beta = {b1} is not a preprojective Schur root")));
    }
    let beta1 = GenSchurRoot::positive_unchecked(b1.clone());
    let bound = SearchBound::new(b1.clone())?;
    let mut seed = tube_part.clone();
    seed.push(beta.clone());
    ComponentCluster::certified(h, [seed.clone(), vec![beta1.clone()]].concat(), bound.clone())?;

    let down = &b - &dl;
    let beta1p = if down.is_positive()
        && q.is_root(&down)? == crate::quiver::RootType::Real
        && affine::regular_class(q, &down)? == affine::RegularClass::Preprojective
    {
        GenSchurRoot::positive_unchecked(down)
    } else {
        let all = schur_roots_up_to(h, &bound)?;
        let cands: Vec<&GenSchurRoot> = all
            .iter()
            .filter(|x| **x != beta1 && !seed.contains(x))
            .filter(|x| seed.iter().all(|s| h.ext_orthogonal(s, x)))
            .collect();
        match cands.as_slice() {
            [one] => (*one).clone(),
            [] => return Err(Error::NotFound(format!("no completion of {beta} other than {beta1}"))),
            many => {
                let shown: Vec<String> = many.iter().map(|r| r.to_string()).collect();
                return Err(Error::internal(format!("several completions of {beta}: {}", shown.join(", "))));
            }
        }
    };
    ComponentCluster::certified(h, [seed, vec![beta1p.clone()]].concat(), bound)?;
    Ok((beta1, beta1p))
}

/// `beta` must lie in the `tau^{-1}`-orbit of a projective at an
/// extending vertex.
fn check_extending_orbit(q: &Quiver, beta: &DimVector) -> Result<()> {
    let ext = affine::extending_vertices(q)?;
    let mut cur = beta.clone();
    for _ in 0..MAX_TAU_STEPS {
        if let Some(i) = (0..q.n()).find(|&i| q.projective(i) == cur) {
            return if ext.contains(&i) {
                Ok(())
            } else {
                Err(Error::domain(format!(
                    "{beta} lies in the orbit of the projective at vertex {}, which is not extending",
                    i + 1
                )))
            };
        }
        cur = q.coxeter_apply(&cur, -1)?;
        if !cur.is_positive() {
            break;
        }
    }
    Err(Error::domain(format!("{beta} is not in the orbit of a projective at an extending vertex")))
}

/// The largest number of pairwise totally disconnected vertex sets that
/// each span a connected non-Dynkin subquiver.
pub fn wild_imaginary_bound(q: &Quiver) -> Result<usize> {
    let n = q.n();
    if n > WILD_BOUND_MAX_VERTICES {
        return Err(Error::guard(format!("{n} vertices exceed the limit {WILD_BOUND_MAX_VERTICES}")));
    }
    let mut sets: Vec<u32> = Vec::new();
    for mask in 1u32..(1 << n) {
        let vs: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        if q.components_of(&vs).len() == 1 && q.class_of(&vs) != QuiverClass::Dynkin {
            sets.push(mask);
        }
    }
    // only inclusion-minimal sets matter for a packing
    let minimal: Vec<u32> = sets
        .iter()
        .copied()
        .filter(|&s| !sets.iter().any(|&t| t != s && t & s == t))
        .collect();
    let closed: Vec<u32> = minimal
        .iter()
        .map(|&s| {
            let vs: Vec<usize> = (0..n).filter(|&i| s >> i & 1 == 1).collect();
            q.neighbours_of(&vs).iter().fold(s, |acc, &v| acc | 1 << v)
        })
        .collect();
    fn best(k: usize, used: u32, minimal: &[u32], closed: &[u32]) -> usize {
        if k == minimal.len() {
            return 0;
        }
        let skip = best(k + 1, used, minimal, closed);
        if minimal[k] & used == 0 {
            skip.max(1 + best(k + 1, used | closed[k], minimal, closed))
        } else {
            skip
        }
    }
    Ok(best(0, 0, &minimal, &closed))
}

/// Component clusters on the five-vertex example quiver that contain its
/// fundamental root `alpha`.
///
/// A root orthogonal to `alpha` vanishes at the top vertex and lives on
/// the `A_4` row below, where every root is bounded by `alpha`; the cap
/// `alpha` therefore sees every candidate and the result is global.
pub fn orientation_example(orientation: Orientation) -> Result<(Quiver, ComponentCluster)> {
    let (q, alpha) = catalog::orientation_example(orientation);
    let h = HomExt::new(q.clone());
    let a = h.schur_root(&alpha)?;
    let bound = SearchBound::new(alpha.clone())?;
    let all = schur_roots_up_to(&h, &bound)?;
    if let Some(x) = all.iter().find(|x| h.ext_orthogonal(&a, x) && !x.is_negative() && x.vector()[0] != 0) {
        return Err(Error::internal(format!("{x} is orthogonal to {alpha} but meets the top vertex")));
    }
    let cands: Vec<GenSchurRoot> = all.iter().filter(|x| **x != a && h.ext_orthogonal(&a, x)).cloned().collect();
    let cliques = component_graph(&h, &cands).maximal_cliques(DEFAULT_CLIQUE_GUARD)?;
    let [clique] = cliques.as_slice() else {
        return Err(Error::internal(format!("{} clusters contain {alpha}", cliques.len())));
    };
    let mut members = vec![a];
    members.extend(clique.iter().map(|&i| cands[i].clone()));
    let c = ComponentCluster::certified_against(&h, members, bound, &all)?.mark_globally_maximal();
    Ok((q, c))
}

/// Completion of a fundamental isotropic root `alpha`: a `delta`-cluster
/// of the affine subquiver on `supp(alpha)`, `-e_j` at every neighbour of
/// the support and the projectives of the remaining full subquiver.
pub fn isotropic_completion(h: &HomExt, alpha: &DimVector) -> Result<ComponentCluster> {
    let q = h.quiver();
    if !q.is_fundamental(alpha)? || q.tits_form(alpha)? != 0 || alpha.gcd() != 1 {
        return Err(Error::domain(format!("{alpha} is not a fundamental primitive isotropic root")));
    }
    let n = q.n();
    let supp = alpha.support();
    let nbrs = q.neighbours_of(&supp);
    let rest: Vec<usize> = (0..n).filter(|v| !supp.contains(v) && !nbrs.contains(v)).collect();
    let lift = |vs: &[usize], d: &DimVector| {
        let mut out = DimVector::zero(n);
        for (k, &v) in vs.iter().enumerate() {
            out[v] = d[k];
        }
        out
    };
    let sub = HomExt::new(q.subquiver(&supp)?);
    let dc = affine::delta_clusters(&sub)?;
    let first = dc.first().ok_or_else(|| Error::internal("affine support without delta-clusters"))?;
    let mut members: Vec<GenSchurRoot> = first
        .roots()
        .iter()
        .map(|r| GenSchurRoot::positive_unchecked(lift(&supp, r.vector())))
        .collect();
    members.extend(nbrs.iter().map(|&j| GenSchurRoot::negative(n, j)));
    if !rest.is_empty() {
        let rq = q.subquiver(&rest)?;
        members.extend((0..rest.len()).map(|i| GenSchurRoot::positive_unchecked(lift(&rest, &rq.projective(i)))));
    }
    let mut cap = DimVector::zero(n);
    for m in &members {
        cap = cap.componentwise_max(m.vector());
    }
    for v in 0..n {
        cap[v] = cap[v].max(1);
    }
    ComponentCluster::certified(h, members, SearchBound::new(cap)?)
}

/// Index pairs `(i, j)`, `i < j`, of clusters related by a mutation.
pub fn mutation_edges(clusters: &[ComponentCluster]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..clusters.len() {
        for j in i + 1..clusters.len() {
            if is_mutation(&clusters[i], &clusters[j]) {
                out.push((i, j));
            }
        }
    }
    out
}

pub fn is_connected(nodes: usize, edges: &[(usize, usize)]) -> bool {
    if nodes == 0 {
        return true;
    }
    let mut seen = vec![false; nodes];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &(a, b) in edges {
            let w = if a == v { b } else if b == v { a } else { continue };
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.iter().all(|&s| s)
}

/// Graphviz rendering of the mutation graph.
pub fn mutation_graph_dot(clusters: &[ComponentCluster]) -> String {
    let mut s = String::from("graph mutations {\n");
    for (i, c) in clusters.iter().enumerate() {
        s.push_str(&format!("  c{i} [label=\"{}\"];\n", c.label()));
    }
    for (i, j) in mutation_edges(clusters) {
        s.push_str(&format!("  c{i} -- c{j};\n"));
    }
    s.push_str("}\n");
    s
}
