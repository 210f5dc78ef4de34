//! Command-line front end. `run` returns the exit status and the rendered
//! output so the binary stays a thin shell and tests can drive it directly.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::gcm::{format_label, parse_gcm, Gcm, Variant};
use crate::holim::{LimContext, Method};
use crate::obstructions::{obstruction_rank, TargetDegrees};
use crate::poset::{core_subposet, incidence_graph, spherical_poset, IncidenceGraph};
use crate::series::{bk_cohomology, DEFAULT_DEGREE_CAP};
use crate::verify::{verify, VerifyConfig};
use crate::weyl::realization;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_VERIFY_FAILED: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "kmholim", version, about = "Higher limits and rational cohomology of Kac-Moody classifying spaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// GCM JSON file: {"matrix": [[...]], "variant": "full"|"derived"}.
    pub input: PathBuf,
    /// Cohomological degree bound; must be even.
    #[arg(long, default_value_t = 20)]
    pub max_degree: usize,
    /// Overrides the variant stored in the input file.
    #[arg(long, value_parser = parse_variant)]
    pub variant: Option<Variant>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// GCM type, spherical poset, core and incidence graph.
    Classify(Common),
    /// Table of lim^0, lim^1, lim^2 by cohomological degree.
    Lim(Common),
    /// Dimensions and Poincare series of H*(BK; Q).
    Cohomology(Common),
    /// Obstruction ranks against a target.
    Obstructions {
        #[command(flatten)]
        common: Common,
        /// su:<n> for SU(n+1), degrees:<d1,d2,...>, or table.
        #[arg(long)]
        target: String,
    },
    /// Cross-check battery; exits 2 if any check fails.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of random synthetic diagrams.
        #[arg(long, default_value_t = 200)]
        synthetic: usize,
    },
}

fn parse_variant(s: &str) -> std::result::Result<Variant, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Exit status plus what goes to stdout and stderr.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(&cli) {
        Ok((value, text, passed)) => {
            let json = match &cli.command {
                Command::Classify(c) | Command::Lim(c) | Command::Cohomology(c) => c.json,
                Command::Obstructions { common, .. } | Command::Verify { common, .. } => common.json,
            };
            let stdout = if json {
                serde_json::to_string_pretty(&value).expect("json") + "\n"
            } else {
                text
            };
            let code = if passed { EXIT_OK } else { EXIT_VERIFY_FAILED };
            Outcome { code, stdout, stderr: String::new() }
        }
        Err(e) => Outcome { code: EXIT_INVALID, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn load(c: &Common) -> Result<(Gcm, Variant)> {
    if c.max_degree % 2 == 1 {
        return Err(Error::Parse(format!("--max-degree {} is odd", c.max_degree)));
    }
    if c.max_degree > DEFAULT_DEGREE_CAP {
        return Err(Error::DegreeCapExceeded { requested: c.max_degree, cap: DEFAULT_DEGREE_CAP });
    }
    let text = std::fs::read_to_string(&c.input)
        .map_err(|e| Error::Parse(format!("{}: {e}", c.input.display())))?;
    let gcm = parse_gcm(&text)?;
    let variant = c.variant.unwrap_or(gcm.variant());
    Ok((gcm, variant))
}

/// `(json, text, passed)` for one command.
fn execute(cli: &Cli) -> Result<(Value, String, bool)> {
    match &cli.command {
        Command::Classify(c) => {
            let (g, v) = load(c)?;
            classify(&g, v).map(|(j, t)| (j, t, true))
        }
        Command::Lim(c) => {
            let (g, v) = load(c)?;
            let table = LimContext::new(&g, v)?.table(c.max_degree / 2, Method::Reduced);
            let mut t = format!("{:>6} {:>8} {:>8} {:>8}\n", "degree", "lim0", "lim1", "lim2");
            for d in 0..=table.max_degree {
                let _ = writeln!(t, "{:>6} {:>8} {:>8} {:>8}", 2 * d, table.get(0, d), table.get(1, d), table.get(2, d));
            }
            Ok((table.to_json(), t, true))
        }
        Command::Cohomology(c) => {
            let (g, v) = load(c)?;
            let rep = bk_cohomology(&g, v, c.max_degree)?;
            let mut t = format!("variant: {v}\n{:>6} {:>8} {:>10}\n", "degree", "dim", "nilpotent");
            for (m, dim) in rep.h_dims.iter().enumerate() {
                let nil = rep.nilpotent_dims.get(&m).map_or(String::new(), ToString::to_string);
                let _ = writeln!(t, "{m:>6} {dim:>8} {nil:>10}");
            }
            let _ = writeln!(t, "euler series: {}", rep.euler_series.canonical());
            if let Some(s) = &rep.lim0_series {
                let _ = writeln!(t, "lim0 series: {}", s.canonical());
            }
            if let Some(s) = &rep.lim1_series {
                let _ = writeln!(t, "lim1 series: {}", s.canonical());
            }
            if let Some(s) = rep.h_series() {
                let _ = writeln!(t, "poincare series: {}", s.canonical());
            }
            if let Some(n) = &rep.ring_note {
                let _ = writeln!(t, "ring: {n}");
            }
            let _ = writeln!(t, "reconciled: {}", rep.reconciled);
            Ok((rep.to_json(), t, true))
        }
        Command::Obstructions { common, target } => {
            let (g, v) = load(common)?;
            let tgt = TargetDegrees::parse(target, &g, v)?;
            let rep = obstruction_rank(&bk_cohomology(&g, v, common.max_degree)?, &tgt)?;
            let mut t = format!("target degrees: {tgt}\n{:>6} {:>8} {:>8}\n", "n_j", "h_dim", "kernel");
            for c in &rep.contributions {
                let _ = writeln!(t, "{:>6} {:>8} {:>8}", c.degree, c.h_dim, c.kernel);
            }
            let _ = writeln!(t, "total_rank: {}\nkernel_total: {}", rep.total_rank, rep.kernel_total);
            Ok((rep.to_json(), t, true))
        }
        Command::Verify { common, seed, synthetic } => {
            let (g, v) = load(common)?;
            let cfg = VerifyConfig { max_degree: common.max_degree, seed: *seed, synthetic_diagrams: *synthetic, ..VerifyConfig::default() };
            let rep = verify(&g, v, &cfg)?;
            let mut t = String::new();
            for c in &rep.checks {
                let _ = writeln!(t, "{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
            }
            Ok((rep.to_json(), t, rep.all_passed()))
        }
    }
}

/// Short description of the incidence graph's shape.
fn graph_shape(g: &IncidenceGraph) -> String {
    let (v, e, c) = (g.vertices.len(), g.edges.len(), g.component_count());
    let cycles = e + c - v;
    let single_cycle = cycles == 1 && c == 1 && g.adjacency().iter().all(|a| a.len() == 2);
    match (cycles, single_cycle) {
        (0, _) => "forest".to_string(),
        (_, true) if v == 3 => "triangle".to_string(),
        (_, true) => format!("{v}-cycle"),
        _ => format!("graph with {cycles} independent cycles"),
    }
}

fn classify(g: &Gcm, v: Variant) -> Result<(Value, String)> {
    let class = g.classification();
    let sp = spherical_poset(g)?;
    let core = core_subposet(&sp.poset);
    let graph = incidence_graph(&sp).ok();
    let r = realization(g, v).r;
    let labels: Vec<Vec<String>> = g
        .coxeter_labels()
        .iter()
        .map(|row| row.iter().map(|&l| format_label(l)).collect())
        .collect();
    let graph_json = graph.as_ref().map(|gr| {
        json!({
            "shape": graph_shape(gr),
            "vertices": gr.vertices,
            "edges": gr.edges.iter().map(|e| e.element).collect::<Vec<_>>(),
            "components": gr.component_count(),
        })
    });
    let value = json!({
        "n": g.n(),
        "kind": class.kind,
        "components": class.components,
        "symmetric": g.symmetric(),
        "indecomposable": g.indecomposable(),
        "corank": g.corank(),
        "variant": v,
        "torus_rank": r,
        "coxeter_labels": labels,
        "spherical": sp.poset,
        "maximal": sp.maximal,
        "sphericity": sp.sphericity,
        "core": core.poset,
        "essential_sphericity": core.essential_sphericity,
        "incidence_graph": graph_json,
    });
    let join = |xs: &[crate::poset::IndexSet]| xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
    let mut t = String::new();
    let _ = writeln!(
        t,
        "{n}x{n} {kind}, {dec}, {sym}, corank {c}",
        n = g.n(),
        kind = class.kind,
        dec = if g.indecomposable() { "indecomposable" } else { "decomposable" },
        sym = if g.symmetric() { "symmetric" } else { "non-symmetric" },
        c = g.corank()
    );
    let _ = writeln!(t, "torus rank ({v}): {r}");
    let _ = writeln!(t, "coxeter labels:");
    for row in &labels {
        let _ = writeln!(t, "  {}", row.join(" "));
    }
    let _ = writeln!(t, "spherical subsets ({}): {}", sp.poset.len(), join(sp.poset.elements()));
    let _ = writeln!(t, "maximal: {}", join(&sp.maximal));
    let _ = writeln!(t, "{}-spherical", sp.sphericity);
    let _ = writeln!(t, "core ({}): {}", core.poset.len(), join(core.poset.elements()));
    let _ = writeln!(t, "essentially {}-spherical", core.essential_sphericity);
    match &graph {
        Some(gr) => {
            let _ = writeln!(
                t,
                "incidence graph: {} ({} vertices, {} edges)",
                graph_shape(gr),
                gr.vertices.len(),
                gr.edges.len()
            );
        }
        None => {
            let _ = writeln!(t, "incidence graph: none");
        }
    }
    Ok((value, t))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write_input(name: &str, body: &str) -> PathBuf {
        let dir = std::env::temp_dir().join(format!("kmholim-cli-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let p = dir.join(name);
        std::fs::write(&p, body).unwrap();
        p
    }

    #[test]
    fn rejects_odd_degree_and_bad_input() {
        let p = write_input("a.json", r#"{"matrix": [[2,-1],[-1,2]]}"#);
        let o = run(["kmholim", "lim", p.to_str().unwrap(), "--max-degree", "5"]);
        assert_eq!(o.code, EXIT_INVALID);
        let bad = write_input("bad.json", r#"{"matrix": [[2,1],[-1,2]]}"#);
        let o = run(["kmholim", "classify", bad.to_str().unwrap()]);
        assert_eq!(o.code, EXIT_INVALID);
        assert!(o.stderr.contains("positive"));
        let o = run(["kmholim", "classify", "/nonexistent/x.json"]);
        assert_eq!(o.code, EXIT_INVALID);
    }

    #[test]
    fn classify_affine_triangle() {
        let p = write_input("aff.json", r#"{"matrix": [[2,-1,-1],[-1,2,-1],[-1,-1,2]]}"#);
        let o = run(["kmholim", "classify", p.to_str().unwrap(), "--json"]);
        assert_eq!(o.code, EXIT_OK);
        let v: Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["kind"], "Affine");
        assert_eq!(v["sphericity"], 2);
        assert_eq!(v["essential_sphericity"], 2);
        assert_eq!(v["incidence_graph"]["shape"], "triangle");
        assert_eq!(v["torus_rank"], 4);
    }

    #[test]
    fn variant_flag_overrides_file() {
        let p = write_input("affd.json", r#"{"matrix": [[2,-1,-1],[-1,2,-1],[-1,-1,2]], "variant": "full"}"#);
        let o = run(["kmholim", "classify", p.to_str().unwrap(), "--json", "--variant", "derived"]);
        let v: Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["torus_rank"], 3);
        assert_eq!(run(["kmholim", "classify", p.to_str().unwrap(), "--variant", "half"]).code, EXIT_INVALID);
    }

    #[test]
    fn obstructions_and_determinism() {
        let p = write_input("one.json", r#"{"matrix": [[2,-1,-1],[-7,2,-1],[-8,-9,2]]}"#);
        let args = ["kmholim", "obstructions", p.to_str().unwrap(), "--target", "su:3", "--max-degree", "8", "--json"];
        let a = run(args);
        assert_eq!(a.code, EXIT_OK, "{}", a.stderr);
        let v: Value = serde_json::from_str(&a.stdout).unwrap();
        assert_eq!(v["kernel_total"], 2);
        assert_eq!(a, run(args));
    }
}
