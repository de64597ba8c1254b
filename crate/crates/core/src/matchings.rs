//! Crossingless matchings on `2n` nodes, the arrow relation between them,
//! its linear extension, distances, and intersection partitions.
//!
//! Nodes are numbered `1..=2n`. A matching is stored canonically as its arcs
//! `(i, j)`, `i < j`, sorted by left endpoint; equality, hashing and ordering
//! all go through that list.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{check_size, Error, Result};

/// Largest `n` accepted by [`enumerate_matchings`] (`C_8 = 1430`).
pub const MAX_MATCHING_N: usize = 8;

pub type Arc = (usize, usize);

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matching {
    arcs: Vec<Arc>,
}

fn validate_partition(n: usize, arcs: &[Arc]) -> Result<Vec<Arc>> {
    if n == 0 {
        return Err(Error::Validation("a matching needs n >= 1".into()));
    }
    if arcs.len() != n {
        return Err(Error::Validation(format!("expected {n} arcs, got {}", arcs.len())));
    }
    let mut seen = vec![false; 2 * n + 1];
    let mut out = Vec::with_capacity(n);
    for &(a, b) in arcs {
        let (i, j) = if a < b { (a, b) } else { (b, a) };
        if i == 0 || j > 2 * n || i == j {
            return Err(Error::Validation(format!("arc ({a},{b}) is not a pair of distinct nodes in 1..={}", 2 * n)));
        }
        for node in [i, j] {
            if std::mem::replace(&mut seen[node], true) {
                return Err(Error::Validation(format!("node {node} is covered twice")));
            }
        }
        out.push((i, j));
    }
    out.sort_unstable();
    Ok(out)
}

fn crosses(x: Arc, y: Arc) -> bool {
    let ((i, k), (j, l)) = if x < y { (x, y) } else { (y, x) };
    i < j && j < k && k < l
}

fn sorted_arcs_crossingless(arcs: &[Arc]) -> bool {
    arcs.iter().enumerate().all(|(p, &x)| arcs[p + 1..].iter().all(|&y| !crosses(x, y)))
}

/// Whether `arcs` (a perfect matching of `1..=2n`) has no crossing pair.
pub fn is_crossingless(n: usize, arcs: &[Arc]) -> Result<bool> {
    let arcs = validate_partition(n, arcs)?;
    Ok(sorted_arcs_crossingless(&arcs))
}

impl Matching {
    pub fn new(n: usize, arcs: &[Arc]) -> Result<Self> {
        let arcs = validate_partition(n, arcs)?;
        if !sorted_arcs_crossingless(&arcs) {
            return Err(Error::Validation(format!("arcs {arcs:?} cross")));
        }
        Ok(Matching { arcs })
    }

    /// `(1,2), (3,4), …, (2n-1,2n)`
    pub fn outermost(n: usize) -> Self {
        Matching { arcs: (0..n).map(|t| (2 * t + 1, 2 * t + 2)).collect() }
    }

    /// Internal constructor for arc lists already known to be valid.
    pub(crate) fn from_sorted(mut arcs: Vec<Arc>) -> Self {
        arcs.sort_unstable();
        debug_assert!(sorted_arcs_crossingless(&arcs));
        Matching { arcs }
    }

    pub fn n(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    /// Position of `arc` in the sorted arc list.
    pub fn arc_index(&self, arc: Arc) -> Option<usize> {
        self.arcs.binary_search(&arc).ok()
    }

    pub fn contains_arc(&self, arc: Arc) -> bool {
        self.arc_index(arc).is_some()
    }

    pub fn partner(&self, node: usize) -> Option<usize> {
        self.arcs.iter().find_map(|&(i, j)| match node {
            _ if node == i => Some(j),
            _ if node == j => Some(i),
            _ => None,
        })
    }

    pub fn is_outermost(&self) -> bool {
        self.arcs.iter().enumerate().all(|(t, &a)| a == (2 * t + 1, 2 * t + 2))
    }

    /// Arcs with both endpoints in `lo..=hi`.
    pub fn arcs_within(&self, lo: usize, hi: usize) -> impl Iterator<Item = Arc> + '_ {
        self.arcs.iter().copied().filter(move |&(i, j)| lo <= i && j <= hi)
    }

    /// Top-level arcs of the sub-matching on `lo..=hi`, left to right.
    pub(crate) fn top_level_within(&self, lo: usize, hi: usize) -> Vec<Arc> {
        let mut out = Vec::new();
        let mut node = lo;
        while node < hi {
            let end = self.partner(node).expect("perfect matching");
            out.push((node, end));
            node = end + 1;
        }
        out
    }

    /// Replaces `(i,j), (k,l)` (`i<j<k<l`) by `(i,l), (j,k)`; `None` when the
    /// pair is not present or the result has a crossing.
    pub fn surgery(&self, left: Arc, right: Arc) -> Option<Matching> {
        let arcs = surgery_arcs(self, left, right)?;
        sorted_arcs_crossingless(&arcs).then_some(Matching { arcs })
    }
}

/// The arc list produced by surgery on two side-by-side arcs, crossing or not.
pub fn surgery_arcs(a: &Matching, (i, j): Arc, (k, l): Arc) -> Option<Vec<Arc>> {
    if !(i < j && j < k && k < l) || !a.contains_arc((i, j)) || !a.contains_arc((k, l)) {
        return None;
    }
    let mut arcs: Vec<Arc> = a.arcs.iter().copied().filter(|&x| x != (i, j) && x != (k, l)).collect();
    arcs.push((i, l));
    arcs.push((j, k));
    arcs.sort_unstable();
    Some(arcs)
}

impl fmt::Display for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.arcs.iter().map(|(i, j)| format!("({i},{j})")).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl fmt::Debug for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct MatchingJson {
    n: usize,
    arcs: Vec<[usize; 2]>,
}

impl Serialize for Matching {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatchingJson { n: self.n(), arcs: self.arcs.iter().map(|&(i, j)| [i, j]).collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matching {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = MatchingJson::deserialize(d)?;
        let arcs: Vec<Arc> = raw.arcs.iter().map(|&[i, j]| (i, j)).collect();
        Matching::new(raw.n, &arcs).map_err(serde::de::Error::custom)
    }
}

fn matchings_on(nodes: &[usize]) -> Vec<Vec<Arc>> {
    let Some((&first, rest)) = nodes.split_first() else {
        return vec![Vec::new()];
    };
    let mut out = Vec::new();
    for pos in (0..rest.len()).step_by(2) {
        let inner = matchings_on(&rest[..pos]);
        let outer = matchings_on(&rest[pos + 1..]);
        for a in &inner {
            for b in &outer {
                let mut arcs = Vec::with_capacity(a.len() + b.len() + 1);
                arcs.push((first, rest[pos]));
                arcs.extend_from_slice(a);
                arcs.extend_from_slice(b);
                arcs.sort_unstable();
                out.push(arcs);
            }
        }
    }
    out
}

/// All `C_n` crossingless matchings, sorted lexicographically by arc list.
pub fn enumerate_matchings(n: usize) -> Result<Vec<Matching>> {
    check_size(n, MAX_MATCHING_N, "matching enumeration")?;
    let nodes: Vec<usize> = (1..=2 * n).collect();
    let mut all: Vec<Matching> = matchings_on(&nodes).into_iter().map(|arcs| Matching { arcs }).collect();
    all.sort();
    Ok(all)
}

/// `C_n = binom(2n, n) / (n + 1)`
pub fn catalan(n: usize) -> u64 {
    (0..n as u64).fold(1u64, |c, k| c * 2 * (2 * k + 1) / (k + 2))
}

/// `source → target`: `(i,j), (k,l)` in the source become `(i,l), (j,k)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct Arrow {
    pub source: Matching,
    pub target: Matching,
    pub quad: (usize, usize, usize, usize),
}

impl Arrow {
    /// Arcs shared by source and target, in the source's sorted order.
    pub fn common_arcs(&self) -> Vec<Arc> {
        let (i, j, k, l) = self.quad;
        self.source.arcs().iter().copied().filter(|&x| x != (i, j) && x != (k, l)).collect()
    }
}

/// Outgoing arrows of `a`, ordered by the positions of the surgered arcs.
///
/// Surgery on side-by-side arcs only yields a crossingless matching when no
/// third arc separates the two, i.e. when the corresponding annuli are
/// adjacent; the other surgeries are discarded.
pub fn arrows_from(a: &Matching) -> Vec<Arrow> {
    let arcs = a.arcs();
    let mut out = Vec::new();
    for (p, &(i, j)) in arcs.iter().enumerate() {
        for &(k, l) in &arcs[p + 1..] {
            if j < k {
                if let Some(target) = a.surgery((i, j), (k, l)) {
                    out.push(Arrow { source: a.clone(), target, quad: (i, j, k, l) });
                }
            }
        }
    }
    out
}

/// Every arrow among matchings on `2n` nodes, grouped by source in
/// lexicographic order.
pub fn all_arrows(n: usize) -> Result<Vec<Arrow>> {
    Ok(enumerate_matchings(n)?.iter().flat_map(arrows_from).collect())
}

/// The arrow digraph on all matchings of a fixed `n`.
#[derive(Clone, Debug)]
pub struct ArrowGraph {
    n: usize,
    matchings: Vec<Matching>,
    index: HashMap<Matching, usize>,
    arrows: Vec<Arrow>,
    /// `(source, target)` indices into `matchings`, parallel to `arrows`.
    edges: Vec<(usize, usize)>,
    neighbours: Vec<Vec<usize>>,
}

impl ArrowGraph {
    pub fn new(n: usize) -> Result<Self> {
        let matchings = enumerate_matchings(n)?;
        let index: HashMap<Matching, usize> = matchings.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let arrows: Vec<Arrow> = matchings.iter().flat_map(arrows_from).collect();
        let edges: Vec<(usize, usize)> = arrows.iter().map(|a| (index[&a.source], index[&a.target])).collect();
        let mut neighbours = vec![Vec::new(); matchings.len()];
        for &(s, t) in &edges {
            neighbours[s].push(t);
            neighbours[t].push(s);
        }
        Ok(ArrowGraph { n, matchings, index, arrows, edges, neighbours })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Matchings in lexicographic order.
    pub fn matchings(&self) -> &[Matching] {
        &self.matchings
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn index_of(&self, m: &Matching) -> Option<usize> {
        self.index.get(m).copied()
    }

    fn lookup(&self, m: &Matching) -> Result<usize> {
        self.index_of(m).ok_or_else(|| {
            Error::Validation(format!("matching {m} has n = {}, graph has n = {}", m.n(), self.n))
        })
    }

    /// Kahn's algorithm; among available matchings the lexicographically
    /// smallest goes first.
    pub fn total_order(&self) -> Result<Vec<Matching>> {
        let mut indegree = vec![0usize; self.matchings.len()];
        let mut out_edges = vec![Vec::new(); self.matchings.len()];
        for &(s, t) in &self.edges {
            indegree[t] += 1;
            out_edges[s].push(t);
        }
        let mut ready: BTreeSet<usize> = (0..indegree.len()).filter(|&i| indegree[i] == 0).collect();
        let mut order = Vec::with_capacity(self.matchings.len());
        while let Some(v) = ready.pop_first() {
            order.push(self.matchings[v].clone());
            for &t in &out_edges[v] {
                indegree[t] -= 1;
                if indegree[t] == 0 {
                    ready.insert(t);
                }
            }
        }
        if order.len() != self.matchings.len() {
            return Err(Error::Internal("arrow relation has a cycle".into()));
        }
        Ok(order)
    }

    /// BFS distances from `a` in the undirected arrow graph, indexed like
    /// [`matchings`](Self::matchings); unreachable entries are `None`.
    pub fn distances_from(&self, a: &Matching) -> Result<Vec<Option<usize>>> {
        let start = self.lookup(a)?;
        let mut dist = vec![None; self.matchings.len()];
        dist[start] = Some(0);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            let d = dist[v].expect("queued vertices have a distance");
            for &w in &self.neighbours[v] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        Ok(dist)
    }

    pub fn distance(&self, a: &Matching, b: &Matching) -> Result<usize> {
        let target = self.lookup(b)?;
        self.distances_from(a)?[target]
            .ok_or_else(|| Error::Internal(format!("{b} is unreachable from {a}")))
    }

    /// All-pairs distance table.
    pub fn distance_table(&self) -> Result<Vec<Vec<usize>>> {
        self.matchings
            .iter()
            .map(|m| {
                self.distances_from(m)?
                    .into_iter()
                    .map(|d| d.ok_or_else(|| Error::Internal("arrow graph is disconnected".into())))
                    .collect()
            })
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.matchings
            .first()
            .and_then(|m| self.distances_from(m).ok())
            .is_some_and(|d| d.iter().all(Option::is_some))
    }

    /// Graphviz rendering: one node per matching, one edge per arrow.
    pub fn to_dot(&self) -> String {
        let mut s = format!("digraph arrows_n{} {{\n", self.n);
        for (i, m) in self.matchings.iter().enumerate() {
            s.push_str(&format!("  m{i} [label=\"{m}\"];\n"));
        }
        for &(a, b) in &self.edges {
            s.push_str(&format!("  m{a} -> m{b};\n"));
        }
        s.push_str("}\n");
        s
    }
}

pub fn total_order(n: usize) -> Result<Vec<Matching>> {
    ArrowGraph::new(n)?.total_order()
}

pub fn distance(a: &Matching, b: &Matching) -> Result<usize> {
    if a.n() != b.n() {
        return Err(Error::Validation(format!("matchings on different n ({} and {})", a.n(), b.n())));
    }
    ArrowGraph::new(a.n())?.distance(a, b)
}

/// A partition of `1..=2n` into blocks, each sorted, blocks ordered by their
/// smallest element.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct SetPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; 2 * n + 1];
        let mut blocks: Vec<Vec<usize>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        for b in &blocks {
            if b.is_empty() {
                return Err(Error::Validation("empty block".into()));
            }
            for &x in b {
                if x == 0 || x > 2 * n || std::mem::replace(&mut seen[x], true) {
                    return Err(Error::Validation(format!("node {x} is out of range or repeated")));
                }
            }
        }
        if seen[1..].iter().any(|s| !s) {
            return Err(Error::Validation("blocks do not cover every node".into()));
        }
        blocks.sort_unstable();
        Ok(SetPartition { n, blocks })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_of(&self, node: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(&node))
    }
}

impl<'de> Deserialize<'de> for SetPartition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            n: usize,
            blocks: Vec<Vec<usize>>,
        }
        let raw = Raw::deserialize(d)?;
        SetPartition::new(raw.n, raw.blocks).map_err(serde::de::Error::custom)
    }
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut root = x;
    while parent[root] != root {
        root = parent[root];
    }
    let mut y = x;
    while parent[y] != root {
        let next = parent[y];
        parent[y] = root;
        y = next;
    }
    root
}

/// The partition of nodes generated by all arcs of all inputs: its blocks are
/// the sphere factors of the intersection of the corresponding spaces.
pub fn intersection_partition(ms: &[Matching]) -> Result<SetPartition> {
    let first = ms.first().ok_or_else(|| Error::Validation("no matchings given".into()))?;
    let n = first.n();
    if let Some(m) = ms.iter().find(|m| m.n() != n) {
        return Err(Error::Validation(format!("matching {m} is not on {} nodes", 2 * n)));
    }
    let mut parent: Vec<usize> = (0..=2 * n).collect();
    for m in ms {
        for &(i, j) in m.arcs() {
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            if ri != rj {
                parent[ri.max(rj)] = ri.min(rj);
            }
        }
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut slot: HashMap<usize, usize> = HashMap::new();
    for node in 1..=2 * n {
        let root = find(&mut parent, node);
        let b = *slot.entry(root).or_insert_with(|| {
            blocks.push(Vec::new());
            blocks.len() - 1
        });
        blocks[b].push(node);
    }
    SetPartition::new(n, blocks)
}

/// Outcome of checking `S_a∩S_c = S_a∩S_b∩S_c` over every ordered triple with
/// `d(a,c) = d(a,b) + d(b,c)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistanceLemmaReport {
    pub n: usize,
    pub triples_checked: usize,
    /// Offending triples, as indices into [`enumerate_matchings`].
    pub failures: Vec<(usize, usize, usize)>,
}

impl DistanceLemmaReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn check_distance_lemma(n: usize) -> Result<DistanceLemmaReport> {
    let graph = ArrowGraph::new(n)?;
    let dist = graph.distance_table()?;
    let ms = graph.matchings();
    let mut pair_partitions = HashMap::new();
    let mut report = DistanceLemmaReport { n, triples_checked: 0, failures: Vec::new() };
    for a in 0..ms.len() {
        for c in 0..ms.len() {
            for b in 0..ms.len() {
                if dist[a][c] != dist[a][b] + dist[b][c] {
                    continue;
                }
                report.triples_checked += 1;
                let pair = match pair_partitions.get(&(a, c)) {
                    Some(p) => p,
                    None => {
                        let p = intersection_partition(&[ms[a].clone(), ms[c].clone()])?;
                        pair_partitions.entry((a, c)).or_insert(p)
                    }
                };
                let triple = intersection_partition(&[ms[a].clone(), ms[b].clone(), ms[c].clone()])?;
                if *pair != triple {
                    report.failures.push((a, b, c));
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mm(n: usize, arcs: &[Arc]) -> Matching {
        Matching::new(n, arcs).unwrap()
    }

    #[test]
    fn enumerate_small() {
        assert_eq!(enumerate_matchings(1).unwrap(), vec![mm(1, &[(1, 2)])]);
        assert_eq!(enumerate_matchings(2).unwrap(), vec![mm(2, &[(1, 2), (3, 4)]), mm(2, &[(1, 4), (2, 3)])]);
        assert_eq!(enumerate_matchings(3).unwrap().len(), 5);
    }

    #[test]
    fn enumerate_counts_are_catalan() {
        for n in 1..=7 {
            let all = enumerate_matchings(n).unwrap();
            assert_eq!(all.len() as u64, catalan(n));
            let distinct: BTreeSet<_> = all.iter().collect();
            assert_eq!(distinct.len(), all.len());
            assert!(all.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn enumerate_rejects_bad_sizes() {
        assert!(matches!(enumerate_matchings(0), Err(Error::Size { .. })));
        assert!(matches!(enumerate_matchings(MAX_MATCHING_N + 1), Err(Error::Size { .. })));
    }

    #[test]
    fn crossingless_examples() {
        assert!(is_crossingless(2, &[(1, 2), (3, 4)]).unwrap());
        assert!(!is_crossingless(2, &[(1, 3), (2, 4)]).unwrap());
        assert!(is_crossingless(3, &[(1, 6), (2, 5), (3, 4)]).unwrap());
        assert!(is_crossingless(2, &[(1, 2), (1, 4)]).is_err());
        assert!(is_crossingless(2, &[(1, 2)]).is_err());
    }

    #[test]
    fn arrows_small() {
        assert!(all_arrows(1).unwrap().is_empty());
        let two = all_arrows(2).unwrap();
        assert_eq!(two.len(), 1);
        assert_eq!(two[0].source, mm(2, &[(1, 2), (3, 4)]));
        assert_eq!(two[0].target, mm(2, &[(1, 4), (2, 3)]));
        assert_eq!(two[0].quad, (1, 2, 3, 4));
    }

    #[test]
    fn arrows_from_outermost_three() {
        let targets: Vec<Matching> = arrows_from(&Matching::outermost(3)).into_iter().map(|a| a.target).collect();
        assert_eq!(
            targets,
            vec![
                mm(3, &[(1, 4), (2, 3), (5, 6)]),
                mm(3, &[(1, 6), (2, 5), (3, 4)]),
                mm(3, &[(1, 2), (3, 6), (4, 5)]),
            ]
        );
    }

    #[test]
    fn separated_surgery_crosses() {
        // (2,3) and (5,6) are side by side but separated by (1,4)
        let a = mm(3, &[(1, 4), (2, 3), (5, 6)]);
        let arcs = surgery_arcs(&a, (2, 3), (5, 6)).unwrap();
        assert!(!is_crossingless(3, &arcs).unwrap());
        assert_eq!(a.surgery((2, 3), (5, 6)), None);
    }

    #[test]
    fn total_order_examples() {
        assert_eq!(total_order(1).unwrap().len(), 1);
        assert_eq!(total_order(2).unwrap(), enumerate_matchings(2).unwrap());
        let three = total_order(3).unwrap();
        assert_eq!(three.len(), 5);
        assert_eq!(three[0], Matching::outermost(3));
    }

    #[test]
    fn distance_examples() {
        let a = mm(3, &[(1, 4), (2, 3), (5, 6)]);
        let b = mm(3, &[(1, 2), (3, 6), (4, 5)]);
        assert_eq!(distance(&a, &a).unwrap(), 0);
        assert_eq!(distance(&a, &b).unwrap(), 2);
        assert_eq!(distance(&b, &a).unwrap(), 2);
        let [u, v]: [Matching; 2] = enumerate_matchings(2).unwrap().try_into().unwrap();
        assert_eq!(distance(&u, &v).unwrap(), 1);
        assert!(distance(&u, &Matching::outermost(3)).is_err());
    }

    #[test]
    fn intersection_partition_examples() {
        let a = Matching::outermost(3);
        let p = intersection_partition(std::slice::from_ref(&a)).unwrap();
        assert_eq!(p.blocks(), &[vec![1, 2], vec![3, 4], vec![5, 6]]);
        let [u, v]: [Matching; 2] = enumerate_matchings(2).unwrap().try_into().unwrap();
        let p = intersection_partition(&[u, v]).unwrap();
        assert_eq!(p.blocks(), &[vec![1, 2, 3, 4]]);
        assert!(intersection_partition(&[]).is_err());
        assert!(intersection_partition(&[a, Matching::outermost(2)]).is_err());
    }

    #[test]
    fn arrow_pairs_intersect_in_n_minus_one_blocks() {
        for n in 2..=5 {
            for arrow in all_arrows(n).unwrap() {
                let p = intersection_partition(&[arrow.source.clone(), arrow.target.clone()]).unwrap();
                assert_eq!(p.block_count(), n - 1);
                let (i, j, k, l) = arrow.quad;
                assert!(p.blocks().contains(&vec![i, j, k, l]));
            }
        }
    }

    #[test]
    fn json_round_trip_and_validation() {
        let a = mm(3, &[(1, 2), (3, 4), (5, 6)]);
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"{"n":3,"arcs":[[1,2],[3,4],[5,6]]}"#);
        assert_eq!(serde_json::from_str::<Matching>(&s).unwrap(), a);
        assert!(serde_json::from_str::<Matching>(r#"{"n":2,"arcs":[[1,3],[2,4]]}"#).is_err());
    }

    #[test]
    fn dot_export_has_node_and_edge_lines() {
        let g = ArrowGraph::new(3).unwrap();
        let dot = g.to_dot();
        assert_eq!(dot.matches("[label=").count(), 5);
        assert_eq!(dot.matches(" -> ").count(), g.arrows().len());
    }

    #[test]
    fn distance_lemma_small_n() {
        for n in 1..=3 {
            let r = check_distance_lemma(n).unwrap();
            assert!(r.holds(), "{r:?}");
            assert!(r.triples_checked >= catalan(n) as usize * catalan(n) as usize);
        }
    }
}
