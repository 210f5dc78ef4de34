//! Posets of index subsets ordered by inclusion: the spherical-subset poset,
//! its right-cofinal core of intersections of maximal elements, and the
//! graph / spanning-forest data used by the reduced `lim^2` formulas.

use std::cmp::Ordering;
use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use num_traits::Signed;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gcm::Gcm;

/// Default upper bound on the matrix size for subset enumeration.
pub const DEFAULT_SIZE_CAP: usize = 10;

/// A subset of `{0, .., 31}` stored as a bitmask. Displayed 1-based.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct IndexSet(u32);

impl IndexSet {
    pub fn empty() -> Self {
        IndexSet(0)
    }

    pub fn full(n: usize) -> Self {
        assert!(n <= 32);
        IndexSet(if n == 32 { u32::MAX } else { (1u32 << n) - 1 })
    }

    pub fn singleton(i: usize) -> Self {
        IndexSet(1 << i)
    }

    pub fn from_indices(ix: impl IntoIterator<Item = usize>) -> Self {
        IndexSet(ix.into_iter().fold(0, |m, i| m | 1 << i))
    }

    pub fn from_bits(bits: u32) -> Self {
        IndexSet(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn with(self, i: usize) -> Self {
        IndexSet(self.0 | 1 << i)
    }

    pub fn without(self, i: usize) -> Self {
        IndexSet(self.0 & !(1 << i))
    }

    pub fn union(self, o: Self) -> Self {
        IndexSet(self.0 | o.0)
    }

    pub fn intersection(self, o: Self) -> Self {
        IndexSet(self.0 & o.0)
    }

    pub fn difference(self, o: Self) -> Self {
        IndexSet(self.0 & !o.0)
    }

    pub fn is_subset(self, o: Self) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&i| self.contains(i))
    }

    /// 1-based sorted indices.
    pub fn to_vec1(self) -> Vec<usize> {
        self.iter().map(|i| i + 1).collect()
    }
}

impl Ord for IndexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for IndexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl Serialize for IndexSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_vec1().serialize(s)
    }
}

/// A finite family of subsets ordered by inclusion. Elements are kept sorted
/// by cardinality, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct SubsetPoset {
    elements: Vec<IndexSet>,
}

impl SubsetPoset {
    pub fn new(elements: impl IntoIterator<Item = IndexSet>) -> Self {
        let set: BTreeSet<IndexSet> = elements.into_iter().collect();
        SubsetPoset {
            elements: set.into_iter().collect(),
        }
    }

    /// The cycle poset `C_n`: the empty set, `n` singletons and the `n`
    /// cyclically adjacent pairs.
    pub fn cycle(n: usize) -> Self {
        let mut el = vec![IndexSet::empty()];
        el.extend((0..n).map(IndexSet::singleton));
        el.extend((0..n).map(|i| IndexSet::from_indices([i, (i + 1) % n])));
        Self::new(el)
    }

    /// The empty set, `k` singletons and all pairs: the poset of a complete
    /// graph on `k` vertices.
    pub fn complete_graph(k: usize) -> Self {
        let mut el = vec![IndexSet::empty()];
        el.extend((0..k).map(IndexSet::singleton));
        for i in 0..k {
            for j in i + 1..k {
                el.push(IndexSet::from_indices([i, j]));
            }
        }
        Self::new(el)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[IndexSet] {
        &self.elements
    }

    pub fn index_of(&self, s: IndexSet) -> Option<usize> {
        self.elements.binary_search(&s).ok()
    }

    pub fn contains(&self, s: IndexSet) -> bool {
        self.index_of(s).is_some()
    }

    /// Strict chains `I_0 < .. < I_p` as index lists, for every `p`.
    pub fn chains(&self) -> Vec<Vec<Vec<usize>>> {
        let n = self.elements.len();
        let above: Vec<Vec<usize>> = (0..n)
            .map(|i| {
                (0..n)
                    .filter(|&j| i != j && self.elements[i].is_subset(self.elements[j]))
                    .collect()
            })
            .collect();
        let mut by_len: Vec<Vec<Vec<usize>>> = vec![(0..n).map(|i| vec![i]).collect()];
        loop {
            let next: Vec<Vec<usize>> = by_len
                .last()
                .expect("nonempty")
                .iter()
                .flat_map(|c| {
                    let top = *c.last().expect("nonempty chain");
                    above[top].iter().map(move |&j| {
                        let mut d = c.clone();
                        d.push(j);
                        d
                    })
                })
                .collect();
            if next.is_empty() {
                break;
            }
            by_len.push(next);
        }
        if n == 0 {
            by_len.clear();
        }
        by_len
    }

    /// Longest strict chain, counted in edges.
    pub fn max_chain_length(&self) -> usize {
        // subsets strictly grow, so a longest chain can be found by DP over
        // the cardinality-sorted order
        let n = self.elements.len();
        let mut best = vec![0usize; n];
        for j in 0..n {
            for i in 0..j {
                if self.elements[i] != self.elements[j]
                    && self.elements[i].is_subset(self.elements[j])
                {
                    best[j] = best[j].max(best[i] + 1);
                }
            }
        }
        best.into_iter().max().unwrap_or(0)
    }

    pub fn maximal(&self) -> Vec<IndexSet> {
        self.elements
            .iter()
            .copied()
            .filter(|&a| {
                !self
                    .elements
                    .iter()
                    .any(|&b| b != a && a.is_subset(b))
            })
            .collect()
    }

    pub fn minimal(&self) -> Vec<IndexSet> {
        self.elements
            .iter()
            .copied()
            .filter(|&a| {
                !self
                    .elements
                    .iter()
                    .any(|&b| b != a && b.is_subset(a))
            })
            .collect()
    }

    /// The element contained in every other element, if any.
    pub fn initial(&self) -> Option<IndexSet> {
        let first = *self.elements.first()?;
        self.elements
            .iter()
            .all(|&e| first.is_subset(e))
            .then_some(first)
    }

    pub fn is_downward_closed(&self) -> bool {
        self.elements
            .iter()
            .all(|&e| e.iter().all(|i| self.contains(e.without(i))))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SphericalPoset {
    pub poset: SubsetPoset,
    pub maximal: Vec<IndexSet>,
    pub sphericity: usize,
}

pub fn spherical_poset(gcm: &Gcm) -> Result<SphericalPoset> {
    spherical_poset_with_cap(gcm, DEFAULT_SIZE_CAP)
}

/// Breadth-first upward search from the empty set. A candidate `J` is only
/// tested once all its maximal proper subsets are spherical; then every proper
/// principal minor is already known positive, so `J` is finite iff it is
/// disconnected or its own determinant is positive.
pub fn spherical_poset_with_cap(gcm: &Gcm, cap: usize) -> Result<SphericalPoset> {
    let n = gcm.n();
    if n > cap {
        return Err(Error::SizeCapExceeded { size: n, cap });
    }
    let mut found: BTreeSet<IndexSet> = BTreeSet::new();
    found.insert(IndexSet::empty());
    let mut level: Vec<IndexSet> = vec![IndexSet::empty()];
    while !level.is_empty() {
        let mut next: BTreeSet<IndexSet> = BTreeSet::new();
        for &s in &level {
            for j in 0..n {
                if s.contains(j) {
                    continue;
                }
                let cand = s.with(j);
                if next.contains(&cand) {
                    continue;
                }
                if !cand.iter().all(|i| found.contains(&cand.without(i))) {
                    continue;
                }
                let finite = gcm.components(cand).len() > 1
                    || gcm.principal_minor(cand).is_positive();
                if finite {
                    next.insert(cand);
                }
            }
        }
        found.extend(next.iter().copied());
        level = next.into_iter().collect();
    }
    let poset = SubsetPoset::new(found);
    let maximal = poset.maximal();
    let sphericity = poset.elements().last().map_or(0, |e| e.len());
    Ok(SphericalPoset {
        poset,
        maximal,
        sphericity,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorePoset {
    pub poset: SubsetPoset,
    pub initial: IndexSet,
    pub essential_sphericity: usize,
}

/// Closure of the maximal elements under pairwise intersection.
pub fn core_subposet(s: &SubsetPoset) -> CorePoset {
    let mut set: BTreeSet<IndexSet> = s.maximal().into_iter().collect();
    loop {
        let cur: Vec<IndexSet> = set.iter().copied().collect();
        let mut grew = false;
        for (i, &a) in cur.iter().enumerate() {
            for &b in &cur[i + 1..] {
                grew |= set.insert(a.intersection(b));
            }
        }
        if !grew {
            break;
        }
    }
    let poset = SubsetPoset::new(set);
    let initial = poset
        .elements()
        .iter()
        .fold(None, |acc: Option<IndexSet>, &e| {
            Some(acc.map_or(e, |a| a.intersection(e)))
        })
        .unwrap_or_default();
    let essential_sphericity = poset.max_chain_length();
    CorePoset {
        poset,
        initial,
        essential_sphericity,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub element: IndexSet,
    /// Indices into `vertices`, smaller first.
    pub ends: (usize, usize),
}

/// Graph obtained from a poset of chain length at most two with an initial
/// element: vertices are the minimal non-initial elements, edges the
/// remaining non-initial elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IncidenceGraph {
    pub initial: IndexSet,
    pub vertices: Vec<IndexSet>,
    pub edges: Vec<Edge>,
}

impl IncidenceGraph {
    pub fn from_poset(p: &SubsetPoset) -> Result<Self> {
        let initial = p
            .initial()
            .ok_or_else(|| Error::NotEssentially2Spherical("no initial element".into()))?;
        if p.max_chain_length() > 2 {
            return Err(Error::NotEssentially2Spherical(format!(
                "chain length {} exceeds 2",
                p.max_chain_length()
            )));
        }
        let rest = SubsetPoset::new(p.elements().iter().copied().filter(|&e| e != initial));
        let vertices = rest.minimal();
        let mut edges = Vec::new();
        for &e in rest.elements() {
            if vertices.contains(&e) {
                continue;
            }
            let below: Vec<usize> = vertices
                .iter()
                .enumerate()
                .filter(|(_, v)| v.is_subset(e))
                .map(|(i, _)| i)
                .collect();
            if below.len() != 2 {
                return Err(Error::NotEssentially2Spherical(format!(
                    "element {e} lies over {} vertices",
                    below.len()
                )));
            }
            edges.push(Edge {
                element: e,
                ends: (below[0], below[1]),
            });
        }
        let mut seen = BTreeSet::new();
        for e in &edges {
            if !seen.insert(e.ends) {
                return Err(Error::NotEssentially2Spherical(
                    "repeated edge between two vertices".into(),
                ));
            }
        }
        Ok(IncidenceGraph {
            initial,
            vertices,
            edges,
        })
    }

    pub fn component_count(&self) -> usize {
        let mut seen = vec![false; self.vertices.len()];
        let adj = self.adjacency();
        let mut count = 0;
        for s in 0..self.vertices.len() {
            if seen[s] {
                continue;
            }
            count += 1;
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(v) = stack.pop() {
                for &(w, _) in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        count
    }

    /// Neighbor lists `(vertex, edge)` sorted by neighbor.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for (k, e) in self.edges.iter().enumerate() {
            adj[e.ends.0].push((e.ends.1, k));
            adj[e.ends.1].push((e.ends.0, k));
        }
        for a in &mut adj {
            a.sort();
        }
        adj
    }

    /// The poset spanned by the initial element, vertices and edges.
    pub fn poset(&self) -> SubsetPoset {
        SubsetPoset::new(
            std::iter::once(self.initial)
                .chain(self.vertices.iter().copied())
                .chain(self.edges.iter().map(|e| e.element)),
        )
    }
}

/// The graph associated with `S`: built on `S` itself when it is
/// 2-spherical, otherwise on its core.
pub fn incidence_graph(s: &SphericalPoset) -> Result<IncidenceGraph> {
    if s.sphericity <= 2 {
        return IncidenceGraph::from_poset(&s.poset);
    }
    let core = core_subposet(&s.poset);
    if core.essential_sphericity > 2 {
        return Err(Error::NotEssentially2Spherical(format!(
            "essential sphericity {}",
            core.essential_sphericity
        )));
    }
    IncidenceGraph::from_poset(&core.poset)
}

/// A fundamental cycle: a non-forest edge closed up by the forest path
/// between its ends.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cycle {
    pub edge: usize,
    /// Vertices from `ends.1` back to `ends.0` along the forest.
    pub path_vertices: Vec<usize>,
    pub path_edges: Vec<usize>,
    pub subposet: SubsetPoset,
}

impl Cycle {
    /// Number of vertices on the cycle; the subposet is isomorphic to `C_n`.
    pub fn n(&self) -> usize {
        self.path_vertices.len()
    }

    /// Edges of the cycle with their traversal sign: the closed walk runs
    /// along the non-forest edge from its first end to its second and back
    /// through the forest; the sign is `+1` when an edge is traversed from
    /// its first end.
    pub fn signed_edges(&self, g: &IncidenceGraph) -> Vec<(usize, i64)> {
        let mut out = vec![(self.edge, 1)];
        for (k, &e) in self.path_edges.iter().enumerate() {
            let from = self.path_vertices[k];
            let sign = if g.edges[e].ends.0 == from { 1 } else { -1 };
            out.push((e, sign));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ForestDecomposition {
    pub forest_edges: Vec<usize>,
    pub cycles: Vec<Cycle>,
}

/// Breadth-first spanning forest, each tree rooted at the smallest vertex of
/// its component with neighbors visited in increasing order.
pub fn spanning_forest_decomposition(g: &IncidenceGraph) -> ForestDecomposition {
    let nv = g.vertices.len();
    let adj = g.adjacency();
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; nv];
    let mut depth = vec![usize::MAX; nv];
    let mut in_forest = vec![false; g.edges.len()];
    for root in 0..nv {
        if depth[root] != usize::MAX {
            continue;
        }
        depth[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &(w, e) in &adj[v] {
                if depth[w] == usize::MAX {
                    depth[w] = depth[v] + 1;
                    parent[w] = Some((v, e));
                    in_forest[e] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    let forest_edges: Vec<usize> = (0..g.edges.len()).filter(|&e| in_forest[e]).collect();
    let cycles = (0..g.edges.len())
        .filter(|&e| !in_forest[e])
        .map(|e| {
            let (a, b) = g.edges[e].ends;
            // climb from both ends to the lowest common ancestor
            let (mut x, mut y) = (b, a);
            let (mut from_b, mut from_a) = (vec![b], vec![a]);
            let (mut edges_b, mut edges_a) = (Vec::new(), Vec::new());
            while x != y {
                if depth[x] >= depth[y] {
                    let (p, pe) = parent[x].expect("non-root has a parent");
                    edges_b.push(pe);
                    x = p;
                    from_b.push(x);
                } else {
                    let (p, pe) = parent[y].expect("non-root has a parent");
                    edges_a.push(pe);
                    y = p;
                    from_a.push(y);
                }
            }
            from_a.pop();
            let mut path_vertices = from_b;
            path_vertices.extend(from_a.into_iter().rev());
            let mut path_edges = edges_b;
            path_edges.extend(edges_a.into_iter().rev());
            let subposet = SubsetPoset::new(
                [g.initial, g.edges[e].element]
                    .into_iter()
                    .chain(path_vertices.iter().map(|&v| g.vertices[v]))
                    .chain(path_edges.iter().map(|&k| g.edges[k].element)),
            );
            Cycle {
                edge: e,
                path_vertices,
                path_edges,
                subposet,
            }
        })
        .collect();
    ForestDecomposition {
        forest_edges,
        cycles,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::*;

    fn s(ix: &[usize]) -> IndexSet {
        IndexSet::from_indices(ix.iter().map(|i| i - 1))
    }

    #[test]
    fn index_set_order_and_display() {
        assert!(s(&[3]) < s(&[1, 2]));
        assert!(s(&[1, 3]) < s(&[2, 3]));
        assert_eq!(s(&[1, 3]).to_string(), "{1,3}");
        assert_eq!(serde_json::to_string(&s(&[2, 3])).unwrap(), "[2,3]");
    }

    #[test]
    fn spherical_posets_of_examples() {
        let one = spherical_poset(&one_spherical()).unwrap();
        assert_eq!(one.poset.elements(), &[s(&[]), s(&[1]), s(&[2]), s(&[3])]);
        assert_eq!(one.sphericity, 1);

        let two = spherical_poset(&two_spherical()).unwrap();
        assert_eq!(two.poset, SubsetPoset::cycle(3));
        assert_eq!(two.sphericity, 2);

        let aff = spherical_poset(&affine_a2()).unwrap();
        assert_eq!(aff.poset.len(), 7);
        assert!(!aff.poset.contains(s(&[1, 2, 3])));
    }

    #[test]
    fn cores() {
        let two = spherical_poset(&two_spherical()).unwrap();
        let core = core_subposet(&two.poset);
        assert_eq!(core.poset, two.poset);
        assert_eq!(core.essential_sphericity, 2);
        assert_eq!(core.initial, IndexSet::empty());

        let one = spherical_poset(&one_spherical()).unwrap();
        let core = core_subposet(&one.poset);
        assert_eq!(core.poset, one.poset);
        assert_eq!(core.essential_sphericity, 1);

        let single = spherical_poset(&single_pair()).unwrap();
        assert_eq!(single.sphericity, 2);
        assert_eq!(single.maximal, vec![s(&[3]), s(&[1, 2])]);
        let core = core_subposet(&single.poset);
        assert_eq!(core.poset.elements(), &[s(&[]), s(&[3]), s(&[1, 2])]);
        assert_eq!(core.essential_sphericity, 1);
    }

    #[test]
    fn core_by_brute_force_intersection_closure() {
        // every intersection of a nonempty family of maximal elements
        for g in [one_spherical(), two_spherical(), affine_a2(), single_pair()] {
            let sp = spherical_poset(&g).unwrap();
            let max = sp.maximal.clone();
            let mut brute = BTreeSet::new();
            for mask in 1u32..(1 << max.len()) {
                let mut acc: Option<IndexSet> = None;
                for (k, m) in max.iter().enumerate() {
                    if mask >> k & 1 == 1 {
                        acc = Some(acc.map_or(*m, |a| a.intersection(*m)));
                    }
                }
                brute.insert(acc.unwrap());
            }
            assert_eq!(core_subposet(&sp.poset).poset, SubsetPoset::new(brute));
        }
    }

    #[test]
    fn incidence_graphs() {
        let two = spherical_poset(&two_spherical()).unwrap();
        let g = incidence_graph(&two).unwrap();
        assert_eq!(g.vertices, vec![s(&[1]), s(&[2]), s(&[3])]);
        assert_eq!(g.edges.len(), 3);

        let aff = incidence_graph(&spherical_poset(&affine_a2()).unwrap()).unwrap();
        assert_eq!(aff.edges.len(), 3);

        let single = incidence_graph(&spherical_poset(&single_pair()).unwrap()).unwrap();
        assert_eq!(single.vertices.len(), 3);
        assert_eq!(single.edges.len(), 1);
        assert_eq!(single.edges[0].element, s(&[1, 2]));
    }

    #[test]
    fn non_essentially_2_spherical_is_rejected() {
        let boolean = SubsetPoset::new((0..8u32).map(IndexSet::from_bits));
        assert!(matches!(
            IncidenceGraph::from_poset(&boolean),
            Err(Error::NotEssentially2Spherical(_))
        ));
    }

    #[test]
    fn forests() {
        let tri = IncidenceGraph::from_poset(&SubsetPoset::cycle(3)).unwrap();
        let f = spanning_forest_decomposition(&tri);
        assert_eq!(f.forest_edges.len(), 2);
        assert_eq!(f.cycles.len(), 1);
        assert_eq!(f.cycles[0].n(), 3);
        assert_eq!(f.cycles[0].subposet.len(), 7);

        let path = SubsetPoset::new([s(&[]), s(&[1]), s(&[2]), s(&[3]), s(&[1, 2]), s(&[2, 3])]);
        let f = spanning_forest_decomposition(&IncidenceGraph::from_poset(&path).unwrap());
        assert!(f.cycles.is_empty());

        let k4 = IncidenceGraph::from_poset(&SubsetPoset::complete_graph(4)).unwrap();
        let f = spanning_forest_decomposition(&k4);
        assert_eq!(f.cycles.len(), 3);
        for c in &f.cycles {
            assert_eq!(c.path_edges.len(), 2);
            assert_eq!(c.n(), 3);
            assert_eq!(c.subposet.len(), 7);
        }
        assert_eq!(
            f.cycles.len(),
            k4.edges.len() - k4.vertices.len() + k4.component_count()
        );
    }

    #[test]
    fn signed_cycles_close_up() {
        let k5 = IncidenceGraph::from_poset(&SubsetPoset::complete_graph(5)).unwrap();
        for c in &spanning_forest_decomposition(&k5).cycles {
            // boundary of the signed edge sum vanishes
            let mut boundary = vec![0i64; k5.vertices.len()];
            for (e, sgn) in c.signed_edges(&k5) {
                let (a, b) = k5.edges[e].ends;
                boundary[a] -= sgn;
                boundary[b] += sgn;
            }
            assert!(boundary.iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn downward_closed_for_all_small_gcms() {
        // every GCM with off-diagonal entries in {0,-1,-2} up to n = 3
        let vals = [0i64, -1, -2];
        let pairs = [(0, 1), (0, 2), (1, 2)];
        let mut count = 0;
        for code in 0..729usize {
            let mut a = vec![vec![2i64; 3]; 3];
            let mut c = code;
            for &(i, j) in &pairs {
                a[i][j] = vals[c % 3];
                c /= 3;
                a[j][i] = vals[c % 3];
                c /= 3;
            }
            let Ok(g) = Gcm::new(a) else { continue };
            count += 1;
            let sp = spherical_poset(&g).unwrap();
            assert!(sp.poset.is_downward_closed());
            for mask in 0u32..8 {
                let set = IndexSet::from_bits(mask);
                assert_eq!(sp.poset.contains(set), g.is_spherical(set), "{set}");
            }
        }
        assert!(count > 100);
    }
}
