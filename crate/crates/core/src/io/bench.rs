//! Benchmark harness for balanced downward sequences over graph corpora.
//!
//! CSV columns, in order: `generator, n, m, seed, algorithm, achieved, bound,
//! optimum, within_bound, runtime_ms, error`. `bound` is `m/2 + 7m^{4/5}`;
//! `optimum` is filled for cliques (`⌊n/2⌋·⌈n/2⌉`) and empty otherwise.

use std::io::Write;
use std::time::Instant;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::{
    balanced::{full_balanced_sequence, sequence_bound, within_sequence_bound},
    graph::{max_cut_of_sequence, Graph},
    Error, Result,
};

use super::gen;

pub const COLUMNS: [&str; 11] = [
    "generator",
    "n",
    "m",
    "seed",
    "algorithm",
    "achieved",
    "bound",
    "optimum",
    "within_bound",
    "runtime_ms",
    "error",
];

#[derive(Clone, Debug, PartialEq)]
pub enum GraphFamily {
    Gnp { n: usize, p: f64 },
    Clique { n: usize },
    Star { n: usize },
    CompleteBipartite { a: usize, b: usize },
}

impl GraphFamily {
    pub fn name(&self) -> &'static str {
        match self {
            GraphFamily::Gnp { .. } => "gnp",
            GraphFamily::Clique { .. } => "clique",
            GraphFamily::Star { .. } => "star",
            GraphFamily::CompleteBipartite { .. } => "complete-bipartite",
        }
    }

    pub fn generate(&self, seed: u64) -> Result<Graph> {
        match *self {
            GraphFamily::Gnp { n, p } => gen::gnp(n, p, seed),
            GraphFamily::Clique { n } => Ok(gen::clique(n)),
            GraphFamily::Star { n } => gen::star(n),
            GraphFamily::CompleteBipartite { a, b } => Ok(gen::complete_bipartite(a, b)),
        }
    }

    /// Known optimum of the best downward sequence, where one is on record.
    pub fn optimum(&self) -> Option<u64> {
        match *self {
            GraphFamily::Clique { n } => Some((n / 2 * n.div_ceil(2)) as u64),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CorpusEntry {
    pub family: GraphFamily,
    /// Number of independently seeded instances.
    pub count: usize,
}

/// Parses `family:key=value,...;family:...`, e.g.
/// `gnp:n=50,p=0.2,count=10;clique:n=9`. `count` defaults to 1.
pub fn parse_corpus(spec: &str) -> Result<Vec<CorpusEntry>> {
    let mut out = Vec::new();
    for part in spec.split(';').map(str::trim).filter(|s| !s.is_empty()) {
        let (name, params) = part.split_once(':').unwrap_or((part, ""));
        let mut n = None;
        let mut p = None;
        let mut a = None;
        let mut b = None;
        let mut count = 1usize;
        for kv in params.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| Error::BadParams(format!("expected key=value, got `{kv}`")))?;
            let int = || {
                v.parse::<usize>()
                    .map_err(|_| Error::BadParams(format!("`{k}` needs an integer")))
            };
            match k {
                "n" => n = Some(int()?),
                "a" => a = Some(int()?),
                "b" => b = Some(int()?),
                "count" => count = int()?,
                "p" => {
                    p = Some(
                        v.parse::<f64>()
                            .map_err(|_| Error::BadParams("`p` needs a number".into()))?,
                    )
                }
                _ => return Err(Error::BadParams(format!("unknown parameter `{k}`"))),
            }
        }
        let need = |x: Option<usize>, key: &str| {
            x.ok_or_else(|| Error::BadParams(format!("{name} needs `{key}`")))
        };
        let family = match name {
            "gnp" => GraphFamily::Gnp {
                n: need(n, "n")?,
                p: p.ok_or_else(|| Error::BadParams("gnp needs `p`".into()))?,
            },
            "clique" => GraphFamily::Clique { n: need(n, "n")? },
            "star" => GraphFamily::Star { n: need(n, "n")? },
            "complete-bipartite" => GraphFamily::CompleteBipartite {
                a: need(a, "a")?,
                b: need(b, "b")?,
            },
            _ => return Err(Error::BadParams(format!("unknown family `{name}`"))),
        };
        out.push(CorpusEntry { family, count });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRow {
    pub generator: String,
    pub n: usize,
    pub m: usize,
    pub seed: u64,
    pub algorithm: String,
    pub achieved: usize,
    pub bound: f64,
    pub optimum: Option<u64>,
    pub within_bound: bool,
    pub runtime_ms: u64,
    pub error: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BenchConfig {
    pub seeds: usize,
    pub base_seed: u64,
    /// When false, `runtime_ms` is written as 0 so output is reproducible.
    pub record_runtime: bool,
}

/// Independent per-index seed: stream `index` of a ChaCha generator keyed by `base`.
pub fn derive_seed(base: u64, index: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(base);
    rng.set_stream(index);
    rng.next_u64()
}

const INSTANCE_STREAMS: u64 = 1 << 32;

/// One row per (instance, seed), computed in parallel and returned in
/// corpus order.
pub fn run_bench(corpus: &[CorpusEntry], cfg: &BenchConfig) -> Vec<BenchRow> {
    let mut jobs = Vec::new();
    let mut instance_index = 0u64;
    for entry in corpus {
        for _ in 0..entry.count {
            for _ in 0..cfg.seeds {
                jobs.push((entry, instance_index));
            }
            instance_index += 1;
        }
    }
    jobs.par_iter()
        .enumerate()
        .map(|(row, &(entry, inst))| {
            let graph_seed = derive_seed(cfg.base_seed, INSTANCE_STREAMS + inst);
            let seed = derive_seed(cfg.base_seed, row as u64);
            bench_row(&entry.family, graph_seed, seed, cfg.record_runtime)
        })
        .collect()
}

fn bench_row(family: &GraphFamily, graph_seed: u64, seed: u64, record_runtime: bool) -> BenchRow {
    let mut row = BenchRow {
        generator: family.name().to_string(),
        n: 0,
        m: 0,
        seed,
        algorithm: "balanced-seq".to_string(),
        achieved: 0,
        bound: 0.0,
        optimum: family.optimum(),
        within_bound: false,
        runtime_ms: 0,
        error: String::new(),
    };
    let g = match family.generate(graph_seed) {
        Ok(g) => g,
        Err(e) => {
            row.error = e.to_string();
            return row;
        }
    };
    row.n = g.num_vertices();
    row.m = g.num_edges();
    row.bound = sequence_bound(row.m);
    let started = Instant::now();
    let result = full_balanced_sequence(&g, seed).and_then(|seq| max_cut_of_sequence(&g, &seq));
    if record_runtime {
        row.runtime_ms = started.elapsed().as_millis() as u64;
    }
    match result {
        Ok(cut) => {
            row.achieved = cut;
            row.within_bound = within_sequence_bound(cut, row.m);
        }
        Err(e) => row.error = e.to_string(),
    }
    row
}

/// Writes the header and all rows; an empty row list gives a header-only file.
pub fn write_csv<W: Write>(rows: &[BenchRow], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(out);
    w.write_record(COLUMNS)?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}
