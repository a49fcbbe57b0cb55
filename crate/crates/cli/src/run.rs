//! Algorithm dispatch and run reports.

use std::fmt::Write as _;

use clap::ValueEnum;
use fvs_core::cubic::solve_cubic;
use fvs_core::girth::{
    solve_planar_unweighted, solve_planar_weighted, trivial_baseline, SolverConfig,
};
use fvs_core::graph::{girth, is_two_connected, validate_fvs, weighted_girth, Girth};
use fvs_core::instances::Instance;
use fvs_core::oracle::{min_fvs, MAX_ORACLE_N};
use fvs_core::{Bound, Error, FvsCertificate, PlaneGraph};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Alg {
    /// Cubic solver when `--n-bound` is set and the graph qualifies, else
    /// the planar solver, else the cubic solver if the graph qualifies.
    Auto,
    Cubic,
    Planar,
    Trivial,
    Exact,
}

impl Alg {
    fn name(self) -> &'static str {
        match self {
            Alg::Auto => "auto",
            Alg::Cubic => "cubic",
            Alg::Planar => "planar",
            Alg::Trivial => "trivial",
            Alg::Exact => "exact",
        }
    }
}

/// An error with its process exit code.
#[derive(Debug)]
pub struct Fail {
    pub code: u8,
    pub message: String,
}

impl Fail {
    pub fn invalid_set(msg: impl Into<String>) -> Self {
        Fail {
            code: 1,
            message: msg.into(),
        }
    }

    pub fn input(msg: impl Into<String>) -> Self {
        Fail {
            code: 2,
            message: msg.into(),
        }
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Fail {
            code: 3,
            message: msg.into(),
        }
    }

    pub fn bound_violated(msg: impl Into<String>) -> Self {
        Fail {
            code: 4,
            message: msg.into(),
        }
    }

    pub fn batch(msg: impl Into<String>) -> Self {
        Fail {
            code: 1,
            message: msg.into(),
        }
    }
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        match e {
            Error::InternalInvariantBroken(_) => Fail::internal(e.to_string()),
            other => Fail::input(other.to_string()),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub instance: String,
    pub n: usize,
    pub m: usize,
    pub girth: Girth,
    pub g: Option<u64>,
    pub alg: String,
    pub fvs: Vec<u32>,
    pub fvs_size: usize,
    pub bound_kind: String,
    pub bound_num: u64,
    pub bound_den: u64,
    pub bound_satisfied: bool,
    pub exact_phi: Option<usize>,
    pub valid: bool,
    pub ms: Option<f64>,
}

impl RunReport {
    pub const CSV_HEADER: [&'static str; 12] = [
        "instance",
        "n",
        "m",
        "girth",
        "g",
        "alg",
        "fvs_size",
        "bound_num",
        "bound_den",
        "exact_phi",
        "valid",
        "ms",
    ];

    pub fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "instance: {}", self.instance);
        let _ = writeln!(s, "n: {}", self.n);
        let _ = writeln!(s, "m: {}", self.m);
        let _ = writeln!(s, "girth: {}", self.girth);
        let _ = writeln!(s, "alg: {}", self.alg);
        if let Some(g) = self.g {
            let _ = writeln!(s, "g: {g}");
        }
        let ids: Vec<String> = self.fvs.iter().map(u32::to_string).collect();
        let _ = writeln!(s, "fvs: {}", ids.join(" "));
        let _ = writeln!(s, "size: {}", self.fvs_size);
        let _ = writeln!(
            s,
            "bound: {} = {}",
            self.bound_kind,
            ratio(self.bound_num, self.bound_den)
        );
        let _ = writeln!(s, "bound_satisfied: {}", self.bound_satisfied);
        if let Some(phi) = self.exact_phi {
            let _ = writeln!(s, "exact_phi: {phi}");
        }
        let _ = writeln!(s, "valid: {}", self.valid);
        s
    }

    pub fn csv_record(&self) -> Vec<String> {
        vec![
            self.instance.clone(),
            self.n.to_string(),
            self.m.to_string(),
            self.girth.to_string(),
            self.g.map(|g| g.to_string()).unwrap_or_default(),
            self.alg.clone(),
            self.fvs_size.to_string(),
            self.bound_num.to_string(),
            self.bound_den.to_string(),
            self.exact_phi.map(|p| p.to_string()).unwrap_or_default(),
            self.valid.to_string(),
            self.ms.map(|ms| format!("{ms:.3}")).unwrap_or_default(),
        ]
    }

    pub fn failed_record(name: &str, ms: Option<f64>) -> Vec<String> {
        let mut r = vec![String::new(); Self::CSV_HEADER.len()];
        r[0] = name.to_string();
        r[10] = "false".into();
        r[11] = ms.map(|ms| format!("{ms:.3}")).unwrap_or_default();
        r
    }
}

fn ratio(num: u64, den: u64) -> String {
    if den == 1 {
        num.to_string()
    } else {
        format!("{num}/{den}")
    }
}

fn in_cubic_class(inst: &Instance) -> bool {
    inst.graph.max_degree() <= 3 && is_two_connected(&inst.graph)
}

fn threshold(pg: &PlaneGraph, g_override: Option<u64>) -> Option<u64> {
    g_override.or_else(|| weighted_girth(pg.graph()).finite())
}

fn planar(pg: &PlaneGraph, g_override: Option<u64>) -> Result<(FvsCertificate, Option<u64>), Fail> {
    let graph = pg.graph();
    if g_override.is_none() && graph.is_unit_weighted() {
        return Ok((solve_planar_unweighted(pg)?, girth(graph).finite()));
    }
    match threshold(pg, g_override) {
        Some(g) => Ok((solve_planar_weighted(pg, &SolverConfig::new(g))?, Some(g))),
        None => Ok((solve_planar_unweighted(pg)?, None)),
    }
}

/// Runs `alg` on `inst`, re-validates the set, and runs the exact oracle
/// when the graph has at most `exact_limit` vertices.
pub fn solve(
    inst: &Instance,
    alg: Alg,
    g_override: Option<u64>,
    n_bound: bool,
    exact_limit: Option<usize>,
) -> Result<(RunReport, FvsCertificate), Fail> {
    let graph = &inst.graph;
    let chosen = match alg {
        Alg::Auto if n_bound && in_cubic_class(inst) => Alg::Cubic,
        Alg::Auto => match inst.plane() {
            Ok(_) => Alg::Planar,
            Err(Error::NonPlanar) if in_cubic_class(inst) => Alg::Cubic,
            Err(Error::NonPlanar) => {
                return Err(Fail::input(
                    "graph is not planar and not 2-connected subcubic; use --alg exact",
                ))
            }
            Err(e) => return Err(e.into()),
        },
        other => other,
    };
    let (cert, g_used) = match chosen {
        Alg::Cubic => (solve_cubic(graph)?, None),
        Alg::Planar => planar(&inst.plane()?, g_override)?,
        Alg::Trivial => {
            let pg = inst.plane()?;
            let g = threshold(&pg, g_override);
            (trivial_baseline(&pg, g.unwrap_or(1))?, g)
        }
        Alg::Exact => {
            let r = min_fvs(graph)?;
            let cert = FvsCertificate {
                bound: Bound::exact(r.phi),
                set: r.witness,
                trace: Vec::new(),
                fallbacks: 0,
            };
            (cert, None)
        }
        Alg::Auto => unreachable!("auto is resolved above"),
    };
    let valid = validate_fvs(graph, &cert.set)? && cert.meets_bound();
    let exact_phi = match exact_limit {
        Some(limit) if graph.n() <= limit.min(MAX_ORACLE_N) => {
            let r = min_fvs(graph)?;
            (!r.node_budget_hit).then_some(r.phi)
        }
        _ => None,
    };
    let (bound_num, bound_den) = cert.bound.reduced();
    let report = RunReport {
        instance: inst.name.clone().unwrap_or_default(),
        n: graph.n(),
        m: graph.m(),
        girth: girth(graph),
        g: g_used,
        alg: chosen.name().to_string(),
        fvs: cert.set.iter().map(|v| v.0).collect(),
        fvs_size: cert.size(),
        bound_kind: cert.bound.kind.to_string(),
        bound_num,
        bound_den,
        bound_satisfied: cert.meets_bound(),
        exact_phi,
        valid,
        ms: None,
    };
    Ok((report, cert))
}
