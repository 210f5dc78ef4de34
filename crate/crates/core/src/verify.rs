//! Random instances and the cross-check battery behind `kmholim verify`.

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::gcm::{Gcm, Variant};
use crate::holim::{alternating, build_diagram, lim2_cn, lim2_forest, CochainComplex, GradedDiagramSlice, LimContext, Method};
use crate::invariants::{det_relative_subspace, fixed_subspace, sum_dim, PolySpace, Subspace};
use crate::series::bk_cohomology;
use crate::linalg::Q;
use crate::poset::{spanning_forest_decomposition, IncidenceGraph, IndexSet, SubsetPoset};

/// Entries `(a_ij, a_ji)` realizing each product `a_ij * a_ji` in `0..=3`.
const PAIR_CHOICES: [&[(i64, i64)]; 4] = [
    &[(0, 0)],
    &[(-1, -1)],
    &[(-1, -2), (-2, -1)],
    &[(-1, -3), (-3, -1)],
];

/// A random indecomposable 2-spherical GCM of size `n`: every pair is of
/// finite type and no triple is.
pub fn random_two_spherical<R: Rng>(rng: &mut R, n: usize) -> Gcm {
    loop {
        let mut a = vec![vec![0i64; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        for i in 0..n {
            for j in i + 1..n {
                let product = rng.gen_range(0..4);
                let &(x, y) = PAIR_CHOICES[product].choose(rng).expect("nonempty");
                a[i][j] = x;
                a[j][i] = y;
            }
        }
        let g = Gcm::new(a).expect("valid by construction");
        if !g.indecomposable() {
            continue;
        }
        let triple_spherical = (0u32..1 << n)
            .map(IndexSet::from_bits)
            .filter(|s| s.len() == 3)
            .any(|s| g.is_spherical(s));
        if !triple_spherical {
            return g;
        }
    }
}

/// Index posets for synthetic diagrams.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Shape {
    /// The cycle poset `C_n`.
    Cycle(usize),
    /// Complete graph on four vertices: three independent cycles.
    K4,
}

impl Shape {
    pub const ALL: [Shape; 4] = [Shape::Cycle(3), Shape::Cycle(4), Shape::Cycle(5), Shape::K4];

    pub fn poset(self) -> SubsetPoset {
        match self {
            Shape::Cycle(n) => SubsetPoset::cycle(n),
            Shape::K4 => SubsetPoset::complete_graph(4),
        }
    }
}

fn random_vector<R: Rng>(rng: &mut R, k: usize) -> Vec<Q> {
    (0..k).map(|_| Q::from_integer(BigInt::from(rng.gen_range(-2i64..=2)))).collect()
}

fn random_span<R: Rng>(rng: &mut R, amb: &PolySpace, base: &[&Subspace], extra: usize) -> Subspace {
    let mut vs: Vec<Vec<Q>> = base.iter().flat_map(|s| s.basis().iter().cloned()).collect();
    vs.extend((0..extra).map(|_| random_vector(rng, amb.dim())));
    Subspace::from_spanning(amb, &vs)
}

/// A random monotone diagram over `shape` in `Q^k`, `1 <= k <= max_ambient`.
/// Edge spaces are drawn first and each smaller element gets the span of the
/// spaces above it plus a few random vectors; half the time the initial
/// space is everything.
pub fn random_diagram<R: Rng>(rng: &mut R, shape: Shape, max_ambient: usize) -> GradedDiagramSlice {
    let amb = PolySpace::new(rng.gen_range(1..=max_ambient.max(1)), 1);
    let k = amb.dim();
    let poset = shape.poset();
    let el = poset.elements().to_vec();
    let mut spaces: Vec<Option<Subspace>> = vec![None; el.len()];
    for (pos, e) in el.iter().enumerate().rev() {
        let above: Vec<&Subspace> = el
            .iter()
            .zip(&spaces)
            .filter(|(f, _)| *f != e && e.is_subset(**f))
            .map(|(_, s)| s.as_ref().expect("larger elements come later"))
            .collect();
        let extra = if e.is_empty() { rng.gen_range(0..=k) } else { rng.gen_range(0..=2) };
        let space = if e.is_empty() && rng.gen_bool(0.5) {
            Subspace::full(&amb)
        } else {
            random_span(rng, &amb, &above, extra)
        };
        spaces[pos] = Some(space);
    }
    let spaces = spaces.into_iter().map(|s| s.expect("filled")).collect();
    GradedDiagramSlice::new(poset, amb, spaces).expect("spaces share the ambient")
}

/// Every `lim^2` computation on one diagram, plus the complex sanity checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleOutcome {
    pub generic: Vec<usize>,
    pub lim2_cn: Option<usize>,
    pub lim2_forest: usize,
    pub forest_exact: bool,
    pub is_complex: bool,
    pub euler_holds: bool,
}

impl OracleOutcome {
    pub fn consistent(&self) -> bool {
        let g2 = self.generic.get(2).copied().unwrap_or(0);
        self.is_complex
            && self.euler_holds
            && self.forest_exact
            && g2 == self.lim2_forest
            && self.lim2_cn.is_none_or(|c| c == g2)
    }
}

pub fn oracle_check(slice: &GradedDiagramSlice) -> Result<OracleOutcome> {
    let complex = CochainComplex::build(slice);
    let generic = complex.cohomology_dims();
    let g = IncidenceGraph::from_poset(&slice.poset)?;
    let forest = spanning_forest_decomposition(&g);
    let lf = lim2_forest(slice, &g, &forest)?;
    Ok(OracleOutcome {
        euler_holds: complex.euler_characteristic() == alternating(&generic),
        is_complex: complex.is_complex(),
        lim2_cn: lim2_cn(slice).ok(),
        lim2_forest: lf.dim,
        forest_exact: lf.dim == lf.per_cycle.iter().sum::<usize>() + lf.kernel_dim,
        generic,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &'static str, failures: Vec<String>, tested: usize) -> Self {
        let noun = if tested == 1 { "case" } else { "cases" };
        let detail = match failures.first() {
            None => format!("{tested} {noun}"),
            Some(f) => format!("{} of {tested} {noun} failed; first: {f}", failures.len()),
        };
        Check { name, passed: failures.is_empty(), detail }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "checks": self.checks, "passed": self.all_passed() })
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyConfig {
    /// Cohomological degree bound `N`.
    pub max_degree: usize,
    /// Polynomial degree bound for the full cochain complex comparison.
    pub generic_degree: usize,
    pub synthetic_diagrams: usize,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { max_degree: 20, generic_degree: 4, synthetic_diagrams: 200, seed: 0 }
    }
}

fn trimmed(mut v: Vec<usize>) -> Vec<usize> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn subsets_of(n: usize) -> impl Iterator<Item = IndexSet> {
    (0u32..1 << n).map(IndexSet::from_bits)
}

/// Runs every cross-check on one GCM and variant.
pub fn verify(gcm: &Gcm, variant: Variant, cfg: &VerifyConfig) -> Result<VerifyReport> {
    let ctx = LimContext::new(gcm, variant)?;
    let re = &ctx.realization;
    let dmax = cfg.max_degree / 2;
    let dgen = dmax.min(cfg.generic_degree);
    let mut checks = Vec::new();

    let mut fails = Vec::new();
    for d in 0..=dgen {
        let (g, r) = (trimmed(ctx.degree(d, Method::Generic)), trimmed(ctx.degree(d, Method::Reduced)));
        if g != r {
            fails.push(format!("d={d}: generic {g:?}, reduced {r:?}"));
        }
    }
    checks.push(Check::new("generic and reduced limits agree", fails, dgen + 1));

    let mut fails = Vec::new();
    for d in 0..=dgen {
        let cx = CochainComplex::build(&build_diagram(re, &ctx.spherical, d));
        if !cx.is_complex() || cx.euler_characteristic() != alternating(&cx.cohomology_dims()) {
            fails.push(format!("d={d}"));
        }
    }
    checks.push(Check::new("d∘d = 0 and Euler identity", fails, dgen + 1));

    let dst = dmax.min(10);
    let mut fails = Vec::new();
    for &s in ctx.spherical.elements() {
        let coeffs = ctx.invariant_series(s).expand_i64(2 * dst);
        for d in 0..=dst {
            let dim = fixed_subspace(&re.generators_for(s), re.r, d).dim();
            if dim as i64 != coeffs[2 * d] {
                fails.push(format!("{s} d={d}: fixed {dim}, series {}", coeffs[2 * d]));
            }
        }
    }
    checks.push(Check::new("Shephard-Todd coefficients", fails, ctx.spherical.len() * (dst + 1)));

    let drf = dmax.min(12);
    let pairs: Vec<IndexSet> = ctx.spherical.elements().iter().copied().filter(|s| s.len() == 2).collect();
    let mut fails = Vec::new();
    for &p in &pairs {
        let gens = re.generators_for(p);
        for d in 0..=drf {
            let amb = PolySpace::new(re.r, d).dim();
            let rel = det_relative_subspace(&gens, re.r, d)?.dim();
            let fixed: Vec<Subspace> = gens.iter().map(|g| fixed_subspace(std::slice::from_ref(g), re.r, d)).collect();
            let sum = sum_dim(amb, &fixed.iter().collect::<Vec<_>>());
            if amb != rel + sum {
                fails.push(format!("{p} d={d}: {amb} != {rel} + {sum}"));
            }
        }
    }
    checks.push(Check::new("dihedral decomposition", fails, pairs.len() * (drf + 1)));

    // With a singular matrix the derived torus identifies roots that differ
    // by an imaginary root, so an infinite W_I can still have finitely many
    // reflecting hyperplanes there.
    let separates_roots = variant == Variant::Full || gcm.corank() == 0;
    let drel = dmax.min(8);
    let infinite: Vec<IndexSet> = subsets_of(gcm.n())
        .filter(|s| separates_roots && (2..=3).contains(&s.len()) && !gcm.is_spherical(*s))
        .collect();
    let mut fails = Vec::new();
    for &s in &infinite {
        let gens = re.generators_for(s);
        for d in 0..=drel {
            let rel = det_relative_subspace(&gens, re.r, d)?.dim();
            if rel != 0 {
                fails.push(format!("{s} d={d}: dim {rel}"));
            }
        }
    }
    checks.push(Check::new("det-relative invariants of infinite subgroups vanish", fails, infinite.len() * (drel + 1)));

    let report = bk_cohomology(gcm, variant, cfg.max_degree)?;
    let fails = if report.reconciled { Vec::new() } else { vec!["series disagree with the table".into()] };
    checks.push(Check::new("Euler reconciliation", fails, 1));

    if ctx.spherical.max_chain_length() <= 2 {
        let fails: Vec<String> = (0..=dmax)
            .filter(|&d| report.table.get(2, d) != 0)
            .map(|d| format!("d={d}: lim2 = {}", report.table.get(2, d)))
            .collect();
        checks.push(Check::new("lim2 vanishes (2-spherical)", fails, dmax + 1));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut fails = Vec::new();
    for k in 0..cfg.synthetic_diagrams {
        let shape = Shape::ALL[k % Shape::ALL.len()];
        let slice = random_diagram(&mut rng, shape, 8);
        let out = oracle_check(&slice)?;
        if !out.consistent() {
            fails.push(format!("{shape:?} #{k}: {out:?}"));
        }
    }
    checks.push(Check::new("lim2 oracles on synthetic diagrams", fails, cfg.synthetic_diagrams));

    Ok(VerifyReport { checks })
}
