//! Higher limits `lim^i` of the degree-wise diagram of invariant subspaces
//! over a poset of spherical subsets: the normalized cochain complex, and the
//! closed forms for `lim^2` over cycle posets and essentially 2-spherical
//! posets.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gcm::{Gcm, Variant};
use crate::invariants::{self, dense_rows, PolySpace, Subspace};
use crate::linalg::{self, Matrix, SparseRow, Q};
use crate::par;
use crate::poset::{
    core_subposet, incidence_graph, spanning_forest_decomposition, spherical_poset,
    ForestDecomposition, IncidenceGraph, IndexSet, SubsetPoset,
};
use crate::weyl::{coxeter_components, invariant_series, realization, Realization};

/// One polynomial degree of the diagram `I -> M(I)`; `spaces[k]` belongs to
/// `poset.elements()[k]`.
#[derive(Clone, Debug)]
pub struct GradedDiagramSlice {
    pub poset: SubsetPoset,
    pub d: usize,
    pub ambient: PolySpace,
    pub spaces: Vec<Subspace>,
}

impl GradedDiagramSlice {
    pub fn new(poset: SubsetPoset, ambient: PolySpace, spaces: Vec<Subspace>) -> Result<Self> {
        if spaces.len() != poset.len() || spaces.iter().any(|s| !s.in_space(&ambient)) {
            return Err(Error::AmbientMismatch);
        }
        Ok(GradedDiagramSlice {
            poset,
            d: ambient.d,
            ambient,
            spaces,
        })
    }

    pub fn space(&self, element: IndexSet) -> Option<&Subspace> {
        self.poset.index_of(element).map(|k| &self.spaces[k])
    }

    /// `I <= J` implies `M(J) <= M(I)`.
    pub fn is_monotone(&self) -> bool {
        let el = self.poset.elements();
        (0..el.len()).all(|i| {
            (0..el.len()).all(|j| {
                i == j || !el[i].is_subset(el[j]) || self.spaces[j].is_subspace_of(&self.spaces[i])
            })
        })
    }
}

/// `M(I)` = polynomials of degree `d` fixed by `s_i, i in I`.
pub fn build_diagram(re: &Realization, poset: &SubsetPoset, d: usize) -> GradedDiagramSlice {
    let ambient = PolySpace::new(re.r, d);
    let spaces = poset
        .elements()
        .iter()
        .map(|&e| invariants::fixed_subspace(&re.generators_for(e), re.r, d))
        .collect();
    GradedDiagramSlice {
        poset: poset.clone(),
        d,
        ambient,
        spaces,
    }
}

/// `C^p` is the sum over strict chains `I_0 < .. < I_p` of `M(I_0)`, in the
/// canonical coordinates of each `M(I_0)`.
#[derive(Clone, Debug)]
pub struct CochainComplex {
    pub dims: Vec<usize>,
    /// `differentials[p] : C^p -> C^{p+1}`.
    pub differentials: Vec<Matrix>,
}

impl CochainComplex {
    pub fn build(slice: &GradedDiagramSlice) -> Self {
        let chains = slice.poset.chains();
        let sdim: Vec<usize> = slice.spaces.iter().map(Subspace::dim).collect();
        let offsets: Vec<Vec<usize>> = chains
            .iter()
            .map(|cs| {
                let mut acc = 0;
                cs.iter()
                    .map(|c| {
                        let o = acc;
                        acc += sdim[c[0]];
                        o
                    })
                    .collect()
            })
            .collect();
        let dims: Vec<usize> = chains
            .iter()
            .map(|cs| cs.iter().map(|c| sdim[c[0]]).sum())
            .collect();
        let lookup: Vec<HashMap<&[usize], usize>> = chains
            .iter()
            .map(|cs| cs.iter().enumerate().map(|(k, c)| (c.as_slice(), k)).collect())
            .collect();
        // inclusion M(J) -> M(I) in canonical coordinates, for I < J
        let mut incl: HashMap<(usize, usize), Vec<Vec<Q>>> = HashMap::new();
        for pair in chains.get(1).map_or(&[][..], |v| v.as_slice()) {
            let (i, j) = (pair[0], pair[1]);
            let cols: Vec<Vec<Q>> = slice.spaces[j]
                .canonical()
                .0
                .iter()
                .map(|v| slice.spaces[i].coords(v))
                .collect();
            incl.insert((i, j), cols);
        }
        let mut differentials = Vec::new();
        for p in 0..chains.len().saturating_sub(1) {
            let mut rows: Vec<SparseRow> = Vec::with_capacity(dims[p + 1]);
            for c in &chains[p + 1] {
                let i0 = c[0];
                let tail = lookup[p][&c[1..]];
                let cols = &incl[&(i0, c[1])];
                let faces: Vec<(usize, i64)> = (1..c.len())
                    .map(|k| {
                        let mut f = c.clone();
                        f.remove(k);
                        (lookup[p][f.as_slice()], if k % 2 == 0 { 1 } else { -1 })
                    })
                    .collect();
                for a in 0..sdim[i0] {
                    let mut row: SparseRow = Vec::new();
                    for (j, col) in cols.iter().enumerate() {
                        if !col[a].is_zero() {
                            row.push((offsets[p][tail] + j, col[a].clone()));
                        }
                    }
                    for &(f, s) in &faces {
                        row.push((offsets[p][f] + a, Q::from_integer(BigInt::from(s))));
                    }
                    rows.push(row);
                }
            }
            differentials.push(Matrix::from_sparse_rows(dims[p], rows));
        }
        CochainComplex {
            dims,
            differentials,
        }
    }

    pub fn is_complex(&self) -> bool {
        self.differentials
            .windows(2)
            .all(|w| w[1].mul(&w[0]).is_zero())
    }

    pub fn cohomology_dims(&self) -> Vec<usize> {
        let ranks: Vec<usize> = self.differentials.iter().map(linalg::rank).collect();
        (0..self.dims.len())
            .map(|p| {
                let out = ranks.get(p).copied().unwrap_or(0);
                let inc = if p > 0 { ranks[p - 1] } else { 0 };
                self.dims[p] - out - inc
            })
            .collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        alternating(&self.dims)
    }
}

pub fn alternating(v: &[usize]) -> i64 {
    v.iter()
        .enumerate()
        .map(|(p, &x)| if p % 2 == 0 { x as i64 } else { -(x as i64) })
        .sum()
}

/// `dim lim^i` for every `i` via the normalized complex.
pub fn cohomology_dims(slice: &GradedDiagramSlice) -> Vec<usize> {
    CochainComplex::build(slice).cohomology_dims()
}

/// `lim^2` over a cycle poset: `M(initial)` modulo the sum of the vertex
/// spaces.
pub fn lim2_cn(slice: &GradedDiagramSlice) -> Result<usize> {
    let g = IncidenceGraph::from_poset(&slice.poset).map_err(|_| Error::NotCnPoset)?;
    let adj = g.adjacency();
    let is_cycle = g.vertices.len() >= 3
        && g.edges.len() == g.vertices.len()
        && adj.iter().all(|a| a.len() == 2)
        && g.component_count() == 1;
    if !is_cycle {
        return Err(Error::NotCnPoset);
    }
    let top = slice.space(g.initial).expect("initial element present");
    let parts: Vec<&Subspace> = g
        .vertices
        .iter()
        .map(|&v| slice.space(v).expect("vertex present"))
        .collect();
    Ok(top.dim() - invariants::sum_dim(slice.ambient.dim(), &parts))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lim2Forest {
    pub dim: usize,
    pub per_cycle: Vec<usize>,
    pub kernel_dim: usize,
}

/// `lim^2` of an essentially 2-spherical diagram from a spanning forest.
///
/// The cokernel of `d_E` lives in one copy of `M(initial)` per fundamental
/// cycle. An incidence `v < e` contributes `y in M(v)` to cycle `k` with
/// sign `eps(e, k) * sign(v, e)` whenever `e` lies on cycle `k`; so the image
/// is the sum over vertices of `W_v (x) M(v)`, where `W_v` is spanned by the
/// signed incidence vectors of `v`.
pub fn lim2_forest(
    slice: &GradedDiagramSlice,
    g: &IncidenceGraph,
    forest: &ForestDecomposition,
) -> Result<Lim2Forest> {
    let missing = || Error::NotEssentially2Spherical("graph element missing from diagram".into());
    let top = slice.space(g.initial).ok_or_else(missing)?;
    let vspaces: Vec<&Subspace> = g
        .vertices
        .iter()
        .map(|&v| slice.space(v).ok_or_else(missing))
        .collect::<Result<_>>()?;
    let n = slice.ambient.dim();
    let m = forest.cycles.len();
    // coefficient of each edge in each cycle
    let mut coef = vec![vec![0i64; m]; g.edges.len()];
    for (k, c) in forest.cycles.iter().enumerate() {
        for (e, s) in c.signed_edges(g) {
            coef[e][k] = s;
        }
    }
    let mut rows: Vec<SparseRow> = Vec::new();
    for (v, space) in vspaces.iter().enumerate() {
        let sigma: Vec<Vec<Q>> = g
            .edges
            .iter()
            .enumerate()
            .filter(|(_, e)| e.ends.0 == v || e.ends.1 == v)
            .map(|(k, e)| {
                let s = if e.ends.0 == v { 1 } else { -1 };
                coef[k].iter().map(|&c| Q::from_integer(BigInt::from(c * s))).collect()
            })
            .collect();
        let w = linalg::rref(&dense_rows(m, &sigma)).rows;
        for wv in &w {
            for y in space.basis() {
                let mut row = SparseRow::new();
                for (k, wk) in wv.iter().enumerate() {
                    if wk.is_zero() {
                        continue;
                    }
                    for (j, yj) in y.iter().enumerate() {
                        if !yj.is_zero() {
                            row.push((k * n + j, wk * yj));
                        }
                    }
                }
                rows.push(row);
            }
        }
    }
    let total = if rows.is_empty() {
        0
    } else {
        linalg::rank(&Matrix::from_sparse_rows(m * n, rows))
    };
    let cycle_ranks: Vec<usize> = forest
        .cycles
        .iter()
        .map(|c| {
            let parts: Vec<&Subspace> = c.path_vertices.iter().map(|&v| vspaces[v]).collect();
            invariants::sum_dim(n, &parts)
        })
        .collect();
    let per_cycle = cycle_ranks.iter().map(|r| top.dim() - r).collect();
    Ok(Lim2Forest {
        dim: m * top.dim() - total,
        per_cycle,
        kernel_dim: cycle_ranks.iter().sum::<usize>() - total,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Normalized cochain complex over the spherical poset.
    Generic,
    /// `lim^0` as the common fixed space, `lim^2` by the forest formula over
    /// the incidence graph, `lim^1` from the Euler characteristic.
    #[default]
    Reduced,
}

/// `lim[d][i]` for polynomial degrees `d = 0..=max_degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimTable {
    pub max_degree: usize,
    pub lim: Vec<Vec<usize>>,
}

impl LimTable {
    pub fn get(&self, i: usize, d: usize) -> usize {
        self.lim.get(d).and_then(|row| row.get(i)).copied().unwrap_or(0)
    }

    pub fn max_i(&self) -> usize {
        self.lim.iter().map(Vec::len).max().unwrap_or(1).max(3) - 1
    }

    /// Dimensions of `lim^i` keyed by cohomological degree.
    pub fn coefficients(&self, i: usize) -> BTreeMap<usize, usize> {
        (0..=self.max_degree).map(|d| (2 * d, self.get(i, d))).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let lim: BTreeMap<String, BTreeMap<usize, usize>> = (0..=self.max_i())
            .map(|i| (i.to_string(), self.coefficients(i)))
            .collect();
        serde_json::json!({ "lim": lim })
    }
}

/// The posets the lim computations run over.
#[derive(Clone, Debug)]
pub struct LimContext {
    pub gcm: Gcm,
    pub realization: Realization,
    pub spherical: SubsetPoset,
    pub core: SubsetPoset,
    pub graph: Option<(IncidenceGraph, ForestDecomposition)>,
}

impl LimContext {
    pub fn new(gcm: &Gcm, variant: Variant) -> Result<Self> {
        let sp = spherical_poset(gcm)?;
        let core = core_subposet(&sp.poset).poset;
        let graph = incidence_graph(&sp).ok().map(|g| {
            let f = spanning_forest_decomposition(&g);
            (g, f)
        });
        Ok(LimContext {
            gcm: gcm.clone(),
            realization: realization(gcm, variant),
            spherical: sp.poset,
            core,
            graph,
        })
    }

    /// `dim M(I)` in degree `d` from the invariant series of `W_I`.
    fn fixed_dim(&self, subset: IndexSet, d: usize) -> usize {
        self.invariant_series(subset).expand(2 * d)[2 * d].to_usize().expect("dimension")
    }

    pub fn degree(&self, d: usize, method: Method) -> Vec<usize> {
        match method {
            Method::Generic => {
                cohomology_dims(&build_diagram(&self.realization, &self.spherical, d))
            }
            Method::Reduced => self.reduced_degree(d),
        }
    }

    /// The poset the reduced method works over: the incidence-graph poset
    /// when there is one, else the core.
    pub fn reduced_poset(&self) -> SubsetPoset {
        match &self.graph {
            Some((g, _)) => g.poset(),
            None => self.core.clone(),
        }
    }

    /// Invariant series of `W_I` on the torus.
    pub fn invariant_series(&self, subset: IndexSet) -> crate::series::PoincareSeries {
        let rep = coxeter_components(&self.gcm, subset).expect("poset elements are spherical");
        invariant_series(&rep, self.realization.r)
    }

    fn reduced_degree(&self, d: usize) -> Vec<usize> {
        let re = &self.realization;
        let poset = self.reduced_poset();
        let chain_len = poset.max_chain_length();
        if chain_len > 2 || (chain_len == 2 && self.graph.is_none()) {
            return cohomology_dims(&build_diagram(re, &poset, d));
        }
        let all: IndexSet = poset
            .elements()
            .iter()
            .fold(IndexSet::empty(), |a, &e| a.union(e));
        let lim0 = invariants::fixed_subspace(&re.generators_for(all), re.r, d).dim();
        let chain_dims: Vec<usize> = poset
            .chains()
            .iter()
            .map(|cs| cs.iter().map(|c| self.fixed_dim(poset.elements()[c[0]], d)).sum())
            .collect();
        let euler = alternating(&chain_dims);
        let lim2 = match (&self.graph, chain_len) {
            (Some((g, f)), 2) => {
                let slice = build_vertex_slice(re, g, d);
                lim2_forest(&slice, g, f).expect("graph matches slice").dim
            }
            _ => 0,
        };
        // euler = lim0 - lim1 + lim2
        let lim1 = lim0 as i64 + lim2 as i64 - euler;
        let lim1 = usize::try_from(lim1).expect("nonnegative lim^1");
        if chain_len == 2 {
            vec![lim0, lim1, lim2]
        } else {
            vec![lim0, lim1]
        }
    }

    pub fn table(&self, max_degree: usize, method: Method) -> LimTable {
        let lim = par::map_range(max_degree + 1, |d| self.degree(d, method));
        LimTable { max_degree, lim }
    }

    pub fn table_seq(&self, max_degree: usize, method: Method) -> LimTable {
        let lim = par::map_range_seq(max_degree + 1, |d| self.degree(d, method));
        LimTable { max_degree, lim }
    }
}

/// Spaces on the initial element and the vertices only; edge spaces are not
/// needed by the forest formula.
fn build_vertex_slice(re: &Realization, g: &IncidenceGraph, d: usize) -> GradedDiagramSlice {
    let poset = SubsetPoset::new(std::iter::once(g.initial).chain(g.vertices.iter().copied()));
    build_diagram(re, &poset, d)
}

pub fn lim_table(gcm: &Gcm, variant: Variant, max_degree: usize, method: Method) -> Result<LimTable> {
    Ok(LimContext::new(gcm, variant)?.table(max_degree, method))
}
