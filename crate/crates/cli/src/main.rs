use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value as Json};

use reconf_core::{
    approx::{self, ApproxConfig, MaxMinMethod},
    balanced,
    csp::{Assignment, CspInstance, MultiAssignment},
    exact,
    graph::{self, DownwardSetSequence, Graph},
    io::{
        self,
        bench::{self, BenchConfig},
        format::{self, Document},
        gen,
    },
    reductions,
    rih::{self, BinaryCode, LabelBitMap},
    setcover::{IndexSet, SetCoverInstance},
    Error, Limits, Result, Value,
};

#[derive(Parser)]
#[command(
    name = "reconf",
    version,
    about = "Reconfiguration CSP solvers and reductions"
)]
struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Cap on exhaustive state counts (default: $RECONF_CAP or 2^20).
    #[arg(long, global = true)]
    cap: Option<u64>,
    /// Target loss for `approx maxmin`, as `num/den`.
    #[arg(long, global = true, default_value = "1/10")]
    epsilon: String,
    /// Write the main document here; the summary then goes to stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance.
    Gen(GenArgs),
    /// Check an assignment, sequence or graph property.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Exhaustive solvers.
    #[command(subcommand)]
    Exact(ExactCommand),
    /// Approximation algorithms.
    #[command(subcommand)]
    Approx(ApproxCommand),
    /// Gadget reductions.
    #[command(subcommand)]
    Reduce(ReduceCommand),
    /// Balanced downward sequence of a graph (or a CSP's constraint graph), as CSV.
    BalancedSeq(InstanceArg),
    /// Balanced-sequence benchmark over a graph corpus, as CSV.
    Bench(BenchArgs),
    /// Tools for the code-and-tester reduction.
    #[command(subcommand)]
    Rih(RihCommand),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    Gnp,
    Clique,
    Star,
    CompleteBipartite,
    Cycle,
    PlantedCsp,
    Coloring,
    CycleColoring,
}

#[derive(Args)]
struct GenArgs {
    #[arg(value_enum)]
    family: Family,
    #[arg(long, default_value_t = 10)]
    n: usize,
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    /// Constraint count for `planted-csp`.
    #[arg(long, default_value_t = 20)]
    m: usize,
    /// Alphabet size for `planted-csp`.
    #[arg(long, default_value_t = 2)]
    q: usize,
    /// Probability of each extra allowed pair for `planted-csp`.
    #[arg(long, default_value_t = 0.3)]
    density: f64,
    /// Part sizes for `complete-bipartite`.
    #[arg(long, default_value_t = 2)]
    a: usize,
    #[arg(long, default_value_t = 3)]
    b: usize,
}

#[derive(Args)]
struct InstanceArg {
    #[arg(long)]
    instance: PathBuf,
}

#[derive(Args)]
struct SequenceArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long)]
    sequence: PathBuf,
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Value of a single assignment.
    Value {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        assignment: PathBuf,
    },
    /// Validity and value of a reconfiguration sequence.
    Sequence(SequenceArgs),
    /// Satisfaction and size of a multi-assignment sequence.
    MultiSequence(SequenceArgs),
    /// Validity and peak of a set-cover sequence.
    CoverSequence(SequenceArgs),
    /// Exhaustive δ-balance check of a graph.
    Balanced {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        delta: String,
    },
}

#[derive(Subcommand)]
enum ExactCommand {
    Maxmin(InstanceArg),
    Minlab(InstanceArg),
    Maxpar(InstanceArg),
    /// Optimal single-removal downward sequence, as CSV.
    Downward(InstanceArg),
}

#[derive(Subcommand)]
enum ApproxCommand {
    Maxmin {
        #[arg(long)]
        instance: PathBuf,
        /// Fail instead of returning a sequence below the `1/2 − ε` guarantee.
        #[arg(long)]
        strict: bool,
    },
    Minlabel(InstanceArg),
    Setcover(InstanceArg),
}

#[derive(Subcommand)]
enum ReduceCommand {
    Maxmin(InstanceArg),
    Minmax(InstanceArg),
    Setcover {
        #[arg(long)]
        instance: PathBuf,
        /// Largest number of satisfying pairs per constraint.
        #[arg(long, default_value_t = reductions::DEFAULT_GADGET_BITS)]
        max_bits: usize,
    },
    Rih(RihArgs),
}

#[derive(Args)]
struct RihArgs {
    #[arg(long)]
    instance: PathBuf,
    /// Use the identity code instead of the Hadamard code.
    #[arg(long)]
    tiny_code: bool,
}

#[derive(Subcommand)]
enum RihCommand {
    /// Lift a source sequence to a sequence of the reduced instance.
    Complete {
        /// The source instance, with endpoints.
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        sequence: PathBuf,
        #[arg(long)]
        tiny_code: bool,
    },
    /// Majority-decode a sequence of the reduced instance back to the source.
    Decode {
        /// The source instance, with endpoints.
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        sequence: PathBuf,
        #[arg(long)]
        tiny_code: bool,
    },
}

#[derive(Args)]
struct BenchArgs {
    /// e.g. `gnp:n=50,p=0.2,count=10;clique:n=9`
    #[arg(long)]
    corpus: String,
    #[arg(long, default_value_t = 1)]
    seeds: usize,
    /// Record wall-clock time per row (output is then not reproducible).
    #[arg(long)]
    runtime: bool,
}

struct Ctx {
    seed: u64,
    limits: Limits,
    epsilon: Value,
    out: Option<PathBuf>,
    format: OutputFormat,
}

impl Ctx {
    /// Main document to `--out` or stdout; summary to stdout or stderr.
    fn emit(&self, document: Option<String>, summary: Map<String, Json>) -> Result<()> {
        let line = match self.format {
            OutputFormat::Json => Json::Object(summary).to_string(),
            OutputFormat::Text => summary
                .iter()
                .map(|(k, v)| match v {
                    Json::String(s) => format!("{k}={s}"),
                    other => format!("{k}={other}"),
                })
                .collect::<Vec<_>>()
                .join(" "),
        };
        match (document, &self.out) {
            (Some(doc), Some(path)) => {
                fs::write(path, doc)?;
                println!("{line}");
            }
            (Some(doc), None) => {
                print!("{doc}");
                eprintln!("{line}");
            }
            (None, _) => println!("{line}"),
        }
        Ok(())
    }
}

fn summary(pairs: Vec<(&str, Json)>) -> Map<String, Json> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn read_document(path: &Path) -> Result<Document> {
    format::parse_document(&fs::read_to_string(path)?)
}

fn render(doc: Document) -> Result<String> {
    format::to_canonical_string(&doc)
}

fn load_csp(path: &Path) -> Result<(CspInstance, format::Endpoints)> {
    match read_document(path)? {
        Document::Csp(doc) => format::csp_from_doc(&doc),
        _ => Err(Error::Malformed(format!(
            "{} is not a csp document",
            path.display()
        ))),
    }
}

fn load_csp_with_endpoints(path: &Path) -> Result<(CspInstance, Assignment, Assignment)> {
    let (inst, ends) = load_csp(path)?;
    let (s, t) = ends.ok_or_else(|| Error::Malformed("instance has no endpoints".into()))?;
    Ok((inst, s, t))
}

fn load_graph(path: &Path) -> Result<Graph> {
    match read_document(path)? {
        Document::Graph(doc) => format::graph_from_doc(&doc),
        Document::Csp(doc) => Graph::from_csp(&format::csp_from_doc(&doc)?.0),
        _ => Err(Error::Malformed(format!(
            "{} is not a graph document",
            path.display()
        ))),
    }
}

fn rational(v: Value) -> Json {
    Json::String(format::rational_string(v))
}

fn sequence_csv(g: &Graph, seq: &DownwardSetSequence) -> Result<String> {
    let cuts = seq.cuts(g)?;
    let mut out = String::from("step,removed,cut\n");
    out.push_str(&format!("0,,{}\n", cuts[0]));
    for (i, batch) in seq.removals().iter().enumerate() {
        let removed: Vec<String> = batch.iter().map(usize::to_string).collect();
        out.push_str(&format!(
            "{},{},{}\n",
            i + 1,
            removed.join(" "),
            cuts[i + 1]
        ));
    }
    Ok(out)
}

fn rih_code(source: &CspInstance, tiny: bool) -> Result<Option<BinaryCode>> {
    if !tiny {
        return Ok(None);
    }
    let width = LabelBitMap::new(source.alphabet().len())?.width();
    BinaryCode::identity(width * source.num_vars()).map(Some)
}

fn run(cli: Cli) -> Result<()> {
    let ctx = Ctx {
        seed: cli.seed,
        limits: cli.cap.map(Limits::new).unwrap_or_else(io::default_limits),
        epsilon: format::parse_rational(&cli.epsilon)?,
        out: cli.out,
        format: cli.format,
    };
    match cli.command {
        Command::Gen(args) => run_gen(&ctx, args),
        Command::Verify(cmd) => run_verify(&ctx, cmd),
        Command::Exact(cmd) => run_exact(&ctx, cmd),
        Command::Approx(cmd) => run_approx(&ctx, cmd),
        Command::Reduce(cmd) => run_reduce(&ctx, cmd),
        Command::BalancedSeq(arg) => {
            let g = load_graph(&arg.instance)?;
            let (seq, report) = balanced::full_balanced_sequence_with_report(
                &g,
                ctx.seed,
                balanced::DEFAULT_RETRIES,
            )?;
            let max_cut = graph::max_cut_of_sequence(&g, &seq)?;
            ctx.emit(
                Some(sequence_csv(&g, &seq)?),
                summary(vec![
                    ("max_cut", json!(max_cut)),
                    ("bound", json!(balanced::sequence_bound(g.num_edges()))),
                    (
                        "within_bound",
                        json!(balanced::within_sequence_bound(max_cut, g.num_edges())),
                    ),
                    ("high_degree", json!(report.high_degree.len())),
                    ("partition_attempts", json!(report.partition_attempts)),
                ]),
            )
        }
        Command::Bench(args) => {
            let corpus = bench::parse_corpus(&args.corpus)?;
            let rows = bench::run_bench(
                &corpus,
                &BenchConfig {
                    seeds: args.seeds,
                    base_seed: ctx.seed,
                    record_runtime: args.runtime,
                },
            );
            let mut buf = Vec::new();
            bench::write_csv(&rows, &mut buf)?;
            let violations = rows.iter().filter(|r| !r.within_bound).count();
            ctx.emit(
                Some(String::from_utf8(buf).expect("csv output is utf-8")),
                summary(vec![
                    ("rows", json!(rows.len())),
                    ("violations", json!(violations)),
                ]),
            )
        }
        Command::Rih(RihCommand::Complete {
            instance,
            sequence,
            tiny_code,
        }) => {
            let (source, s, t) = load_csp_with_endpoints(&instance)?;
            let rih = rih::rih_reduce(&source, &s, &t, rih_code(&source, tiny_code)?, ctx.limits)?;
            let src_seq = match read_document(&sequence)? {
                Document::Sequence(doc) => format::sequence_from_doc(&source, &doc)?,
                _ => return Err(Error::Malformed("expected a sequence document".into())),
            };
            let lifted = rih::completeness_sequence(&rih, &src_seq)?;
            let value = rih.instance.sequence_value(&lifted)?;
            ctx.emit(
                Some(render(Document::Sequence(format::sequence_to_doc(
                    &rih.instance,
                    lifted.steps(),
                )))?),
                summary(vec![
                    ("steps", json!(lifted.len())),
                    ("value", rational(value)),
                ]),
            )
        }
        Command::Rih(RihCommand::Decode {
            instance,
            sequence,
            tiny_code,
        }) => {
            let (source, s, t) = load_csp_with_endpoints(&instance)?;
            let rih = rih::rih_reduce(&source, &s, &t, rih_code(&source, tiny_code)?, ctx.limits)?;
            let seq = match read_document(&sequence)? {
                Document::Sequence(doc) => format::sequence_from_doc(&rih.instance, &doc)?,
                _ => return Err(Error::Malformed("expected a sequence document".into())),
            };
            let outcome = rih::soundness_decode(&rih, &seq, ctx.limits)?;
            let value = rih.instance.sequence_value(&seq)?;
            ctx.emit(
                Some(render(Document::Sequence(format::sequence_to_doc(
                    &source,
                    &outcome.steps,
                )))?),
                summary(vec![
                    ("all_valid", json!(outcome.all_valid)),
                    (
                        "claims_hold",
                        json!(outcome.claims.iter().all(|c| c.holds())),
                    ),
                    ("decoded_steps", json!(outcome.steps.len())),
                    ("input_value", rational(value)),
                    ("epsilon", rational(rih.epsilon)),
                ]),
            )
        }
    }
}

fn run_gen(ctx: &Ctx, a: GenArgs) -> Result<()> {
    let doc = match a.family {
        Family::Gnp => Document::Graph(format::graph_to_doc(&gen::gnp(a.n, a.p, ctx.seed)?)),
        Family::Clique => Document::Graph(format::graph_to_doc(&gen::clique(a.n))),
        Family::Star => Document::Graph(format::graph_to_doc(&gen::star(a.n)?)),
        Family::CompleteBipartite => {
            Document::Graph(format::graph_to_doc(&gen::complete_bipartite(a.a, a.b)))
        }
        Family::Cycle => Document::Graph(format::graph_to_doc(&gen::cycle(a.n)?)),
        Family::PlantedCsp => {
            let (inst, s, t) = gen::planted_csp(a.n, a.m, a.q, a.density, ctx.seed)?;
            Document::Csp(format::csp_to_doc(&inst, Some((&s, &t))))
        }
        Family::Coloring => {
            let (inst, s, t) = gen::planted_coloring(a.n, a.p, ctx.seed)?;
            Document::Csp(format::csp_to_doc(&inst, Some((&s, &t))))
        }
        Family::CycleColoring => {
            let (inst, s, t) = gen::cycle_coloring(a.n)?;
            Document::Csp(format::csp_to_doc(&inst, Some((&s, &t))))
        }
    };
    let size = match &doc {
        Document::Graph(g) => summary(vec![
            ("vertices", json!(g.vertices)),
            ("edges", json!(g.edges.len())),
        ]),
        Document::Csp(c) => summary(vec![
            ("variables", json!(c.variables.len())),
            ("constraints", json!(c.constraints.len())),
        ]),
        _ => Map::new(),
    };
    ctx.emit(Some(render(doc)?), size)
}

fn run_verify(ctx: &Ctx, cmd: VerifyCommand) -> Result<()> {
    match cmd {
        VerifyCommand::Value {
            instance,
            assignment,
        } => {
            let (inst, _) = load_csp(&instance)?;
            let asg = match read_document(&assignment)? {
                Document::Assignment(doc) => format::assignment_from_doc(&inst, &doc)?,
                _ => return Err(Error::Malformed("expected an assignment document".into())),
            };
            ctx.emit(None, summary(vec![("value", rational(inst.value(&asg)?))]))
        }
        VerifyCommand::Sequence(args) => {
            let (inst, ends) = load_csp(&args.instance)?;
            let seq = match read_document(&args.sequence)? {
                Document::Sequence(doc) => format::sequence_from_doc(&inst, &doc)?,
                _ => return Err(Error::Malformed("expected a sequence document".into())),
            };
            let mut s = summary(vec![
                ("valid", json!(true)),
                ("steps", json!(seq.len())),
                ("value", rational(inst.sequence_value(&seq)?)),
            ]);
            if let Some((a, b)) = ends {
                s.insert(
                    "endpoints_match".into(),
                    json!(seq.source() == &a && seq.target() == &b),
                );
            }
            ctx.emit(None, s)
        }
        VerifyCommand::MultiSequence(args) => {
            let (inst, ends) = load_csp(&args.instance)?;
            let seq = match read_document(&args.sequence)? {
                Document::MultiSequence(doc) => format::multi_sequence_from_doc(&inst, &doc)?,
                _ => {
                    return Err(Error::Malformed(
                        "expected a multi_sequence document".into(),
                    ))
                }
            };
            let mut s = summary(vec![
                ("valid", json!(true)),
                ("satisfying", json!(inst.satisfies_sequence(&seq)?)),
                ("size", json!(seq.size())),
            ]);
            if let Some((a, b)) = ends {
                let first = &seq.steps()[0];
                let last = seq.steps().last().expect("non-empty");
                s.insert(
                    "endpoints_match".into(),
                    json!(
                        first == &MultiAssignment::singletons(&a)
                            && last == &MultiAssignment::singletons(&b)
                    ),
                );
            }
            ctx.emit(None, s)
        }
        VerifyCommand::CoverSequence(args) => {
            let (inst, ends) = load_setcover(&args.instance)?;
            let seq = match read_document(&args.sequence)? {
                Document::CoverSequence(doc) => format::cover_sequence_from_doc(&doc)?,
                _ => {
                    return Err(Error::Malformed(
                        "expected a cover_sequence document".into(),
                    ))
                }
            };
            let first = seq.steps()[0].clone();
            let last = seq.steps().last().expect("non-empty").clone();
            let (s, t) = ends.unwrap_or((first, last));
            let valid = inst.is_valid_cover_sequence(&s, &t, seq.steps())?;
            ctx.emit(
                None,
                summary(vec![("valid", json!(valid)), ("peak", json!(seq.peak()))]),
            )
        }
        VerifyCommand::Balanced { instance, delta } => {
            let g = load_graph(&instance)?;
            let delta = format::parse_rational(&delta)?;
            let balanced = graph::is_delta_balanced(&g, delta, ctx.limits)?;
            ctx.emit(None, summary(vec![("balanced", json!(balanced))]))
        }
    }
}

fn load_setcover(path: &Path) -> Result<(SetCoverInstance, format::CoverEndpoints)> {
    match read_document(path)? {
        Document::Setcover(doc) => {
            let (inst, ends, _) = format::setcover_from_doc(&doc)?;
            Ok((inst, ends))
        }
        _ => Err(Error::Malformed(format!(
            "{} is not a setcover document",
            path.display()
        ))),
    }
}

fn run_exact(ctx: &Ctx, cmd: ExactCommand) -> Result<()> {
    match cmd {
        ExactCommand::Maxmin(arg) => {
            let (inst, s, t) = load_csp_with_endpoints(&arg.instance)?;
            let res = exact::exact_maxmin(&inst, &s, &t, ctx.limits)?;
            ctx.emit(
                Some(render(Document::Sequence(format::sequence_to_doc(
                    &inst,
                    res.witness.steps(),
                )))?),
                summary(vec![
                    ("optimum", rational(res.optimum)),
                    ("steps", json!(res.witness.len())),
                    ("explored_states", json!(res.explored_states)),
                ]),
            )
        }
        ExactCommand::Minlab(arg) => {
            let (inst, s, t) = load_csp_with_endpoints(&arg.instance)?;
            let res = exact::exact_minlab(&inst, &s, &t, ctx.limits)?;
            ctx.emit(
                Some(render(Document::MultiSequence(
                    format::multi_sequence_to_doc(&inst, &res.witness),
                ))?),
                summary(vec![
                    ("optimum", json!(res.optimum)),
                    ("steps", json!(res.witness.len())),
                    ("explored_states", json!(res.explored_states)),
                ]),
            )
        }
        ExactCommand::Maxpar(arg) => {
            let (inst, _) = load_csp(&arg.instance)?;
            let best = inst.max_par_bruteforce(ctx.limits)?;
            ctx.emit(None, summary(vec![("max_par", json!(best))]))
        }
        ExactCommand::Downward(arg) => {
            let g = load_graph(&arg.instance)?;
            let res = exact::optimal_downward_sequence(&g, ctx.limits)?;
            ctx.emit(
                Some(sequence_csv(&g, &res.witness)?),
                summary(vec![("optimum", json!(res.optimum))]),
            )
        }
    }
}

fn run_approx(ctx: &Ctx, cmd: ApproxCommand) -> Result<()> {
    match cmd {
        ApproxCommand::Maxmin { instance, strict } => {
            let (inst, s, t) = load_csp_with_endpoints(&instance)?;
            let cfg = ApproxConfig {
                epsilon: ctx.epsilon,
                exact_fallback_cap: ctx.limits.max_states,
                seed: ctx.seed,
                strict,
            };
            let out = approx::approx_maxmin(&inst, &s, &t, &cfg)?;
            let m = inst.constraints().len();
            let mut s = summary(vec![
                ("method", json!(out.method.name())),
                ("value", rational(out.value)),
                ("steps", json!(out.sequence.len())),
            ]);
            if out.method == MaxMinMethod::Balanced {
                s.insert("guarantee".into(), json!(approx::maxmin_guarantee(m)));
            }
            ctx.emit(
                Some(render(Document::Sequence(format::sequence_to_doc(
                    &inst,
                    out.sequence.steps(),
                )))?),
                s,
            )
        }
        ApproxCommand::Minlabel(arg) => {
            let (inst, s, t) = load_csp_with_endpoints(&arg.instance)?;
            let seq = approx::approx_minlabel(&inst, &s, &t)?;
            ctx.emit(
                Some(render(Document::MultiSequence(
                    format::multi_sequence_to_doc(&inst, &seq),
                ))?),
                summary(vec![
                    ("peak", json!(seq.size())),
                    ("steps", json!(seq.len())),
                ]),
            )
        }
        ApproxCommand::Setcover(arg) => {
            let (inst, ends) = load_setcover(&arg.instance)?;
            let (s, t) =
                ends.ok_or_else(|| Error::Malformed("instance has no endpoints".into()))?;
            let seq = approx::approx_setcover(&inst, &s, &t)?;
            ctx.emit(
                Some(render(Document::CoverSequence(
                    format::cover_sequence_to_doc(&seq),
                ))?),
                summary(vec![
                    ("peak", json!(seq.peak())),
                    ("steps", json!(seq.len())),
                ]),
            )
        }
    }
}

fn run_reduce(ctx: &Ctx, cmd: ReduceCommand) -> Result<()> {
    let gap_doc = |gap: reductions::GapInstance| -> Result<(String, Map<String, Json>)> {
        let s = summary(vec![
            ("variables", json!(gap.instance.num_vars())),
            ("constraints", json!(gap.instance.constraints().len())),
            ("alphabet", json!(gap.instance.alphabet().len())),
        ]);
        let doc = format::csp_to_doc(&gap.instance, Some((&gap.source, &gap.target)));
        Ok((render(Document::Csp(doc))?, s))
    };
    match cmd {
        ReduceCommand::Maxmin(arg) => {
            let (inst, _) = load_csp(&arg.instance)?;
            let (doc, s) = gap_doc(reductions::gap_to_maxmin(&inst)?)?;
            ctx.emit(Some(doc), s)
        }
        ReduceCommand::Minmax(arg) => {
            let (inst, _) = load_csp(&arg.instance)?;
            let (doc, s) = gap_doc(reductions::gap_to_minmax(&inst)?)?;
            ctx.emit(Some(doc), s)
        }
        ReduceCommand::Setcover { instance, max_bits } => {
            let (inst, ends) = load_csp(&instance)?;
            let (cover, corr) = reductions::csp_to_setcover(&inst, max_bits)?;
            let cover_ends: Option<(IndexSet, IndexSet)> = match &ends {
                Some((s, t)) => Some((
                    corr.to_index_set(&MultiAssignment::singletons(s))?,
                    corr.to_index_set(&MultiAssignment::singletons(t))?,
                )),
                None => None,
            };
            let doc = format::setcover_to_doc(
                &cover,
                cover_ends.as_ref().map(|(s, t)| (s, t)),
                Some((&corr, &inst)),
            );
            ctx.emit(
                Some(render(Document::Setcover(doc))?),
                summary(vec![
                    ("universe", json!(cover.universe())),
                    ("sets", json!(cover.num_sets())),
                ]),
            )
        }
        ReduceCommand::Rih(args) => {
            let (source, s, t) = load_csp_with_endpoints(&args.instance)?;
            let rih = rih::rih_reduce(
                &source,
                &s,
                &t,
                rih_code(&source, args.tiny_code)?,
                ctx.limits,
            )?;
            let doc = format::csp_to_doc(&rih.instance, Some((&rih.start, &rih.end)));
            ctx.emit(
                Some(render(Document::Csp(doc))?),
                summary(vec![
                    ("variables", json!(rih.instance.num_vars())),
                    ("constraints", json!(rih.instance.constraints().len())),
                    ("block_len", json!(rih.block_len())),
                    ("epsilon", rational(rih.epsilon)),
                ]),
            )
        }
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::TooLarge { .. } => "too_large",
        Error::Io(_) => "io",
        Error::Json(_) => "json",
        Error::Malformed(_) | Error::UnknownVariable(_) | Error::UnknownSymbol(_) => "malformed",
        Error::InvalidSequence { .. } | Error::EmptySequence => "invalid_sequence",
        Error::NotSatisfying | Error::EndpointNotSatisfying => "not_satisfying",
        Error::BadParams(_) => "bad_params",
        _ => "domain",
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let format = cli.format;
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            match format {
                OutputFormat::Json => eprintln!(
                    "{}",
                    json!({"error": e.to_string(), "kind": error_kind(&e)})
                ),
                OutputFormat::Text => eprintln!("error: {e}"),
            }
            ExitCode::from(1)
        }
    }
}
