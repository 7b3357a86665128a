use std::fmt::Write as _;
use std::io::Read;

use anyhow::{bail, Context, Result};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use treepack::degseq::sum_sequences;
use treepack::packing::{
    hamiltonian_path_orders, kundu_packable, pack_caterpillars, pack_complementary_leaves,
    pack_multi, MultiInstance, PackingResult,
};
use treepack::rational::{self, Rational};
use treepack::reductions::{
    add_dominating_vertex, add_pendant_gadget, bipartite_to_simple, brute_force_disjoint_decision,
    reduce_to_tree_sequence, BipartitePairInstance, SimplePairInstance, DEFAULT_DECISION_GUARD_N,
};
use treepack::sampling::{
    analyze_pair, estimate_disjoint_count_with, exact_disjoint_count, expected_common_general,
    required_samples, sample_disjoint_pair, tv_distance, EstimateConfig, DEFAULT_GUARD_N,
};
use treepack::trees::{count_trees, edge_probability, enumerate_trees, random_tree};
use treepack::{DegreeMatrix, DegreeSequence, LabeledTree};

use crate::args::{Command, Format, Settings, Source};

const DEFAULT_EPSILON: f64 = 0.1;
const DEFAULT_DELTA: f64 = 0.05;
const DEFAULT_ENUM_GUARD_N: usize = 10;

/// Whether the command found what it was asked for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Found,
    Infeasible,
}

pub struct Output {
    json: Value,
    text: String,
    pub status: Status,
}

impl Output {
    fn new(json: Value, text: impl Into<String>) -> Self {
        Output {
            json,
            text: text.into(),
            status: Status::Found,
        }
    }

    fn of<T: Serialize>(value: &T, text: impl Into<String>) -> Result<Self> {
        Ok(Output::new(serde_json::to_value(value)?, text))
    }

    fn decision(mut self, found: bool) -> Self {
        if !found {
            self.status = Status::Infeasible;
        }
        self
    }

    pub fn render(&self, format: Format) -> Result<String> {
        Ok(match format {
            Format::Json => serde_json::to_string(&self.json)? + "\n",
            Format::Text if self.text.ends_with('\n') => self.text.clone(),
            Format::Text => format!("{}\n", self.text),
        })
    }
}

pub fn run(command: &Command, s: &Settings) -> Result<Output> {
    match command {
        Command::Graphical => {
            let d = sequence(s)?;
            let ok = d.is_graphical();
            Ok(Output::new(json!({ "graphical": ok }), ok.to_string()).decision(ok))
        }
        Command::Classify => {
            let class = sequence(s)?.classify();
            Output::of(&json!({ "class": class }), class.to_string())
        }
        Command::CountTrees => {
            let count = count_trees(&sequence(s)?)?.to_string();
            Ok(Output::new(json!({ "count": count }), count))
        }
        Command::EnumTrees => {
            let d = sequence(s)?;
            guard(d.len(), s.guard_n.unwrap_or(DEFAULT_ENUM_GUARD_N))?;
            let trees: Vec<LabeledTree> = enumerate_trees(&d)?.collect();
            Output::of(&trees, tree_blocks(&trees))
        }
        Command::RandomTree => {
            let tree = random_tree(&sequence(s)?, s.seed()?)?;
            Output::of(&tree, tree.to_string())
        }
        Command::EdgeProb { i, j } => {
            let p = edge_probability(&sequence(s)?, *i, *j)?;
            let p = rational::display(&p);
            Ok(Output::new(json!({ "i": i, "j": j, "probability": p }), p))
        }
        Command::HamPaths { n } => {
            let (first, second) = hamiltonian_path_orders(*n)?;
            let text = format!("{}\n{}", join(&first, " "), join(&second, " "));
            Ok(Output::new(
                json!({ "n": n, "first": first, "second": second }),
                text,
            ))
        }
        Command::PackCaterpillar => {
            let (d, f) = pair(s)?;
            packing(&pack_caterpillars(&d, &f)?)
        }
        Command::Kundu => {
            let (d, f) = pair(s)?;
            let ok = kundu_packable(&d, &f)?;
            let sum = sum_sequences(&d, &f)?;
            let text = if ok { "packable" } else { "sum not graphical" };
            Ok(Output::new(json!({ "packable": ok, "sum": sum }), text).decision(ok))
        }
        Command::PackLeaves => {
            let (d, f) = pair(s)?;
            packing(&pack_complementary_leaves(&d, &f, s.seed()?)?)
        }
        Command::PackMulti { rows } => {
            let matrix = matrix(s, rows)?;
            packing(&pack_multi(&MultiInstance::new(matrix)?, s.seed()?)?)
        }
        Command::Analyze => {
            let (d, f) = pair(s)?;
            let a = analyze_pair(&d, &f)?;
            let text = format!(
                "A: {}\nB: {}\nexpected_common: {}\np_lower: {}",
                join(&a.a, ","),
                join(&a.b, ","),
                rational::display(&a.expected_common),
                rational::display(&a.p_lower)
            );
            Output::of(&a, text)
        }
        Command::ExpectedCommon => {
            let (d, f) = pair(s)?;
            let e = rational::display(&expected_common_general(&d, &f)?);
            Ok(Output::new(json!({ "expected_common": e }), e))
        }
        Command::SamplesNeeded { p } => {
            let prob = parse_probability(p)?;
            let (eps, delta) = accuracy(s);
            let m = required_samples(&prob, eps, delta)?;
            Ok(Output::new(
                json!({
                    "p": rational::display(&prob),
                    "epsilon": eps,
                    "delta": delta,
                    "samples": m,
                }),
                m.to_string(),
            ))
        }
        Command::Estimate => {
            let (d, f) = pair(s)?;
            let (eps, delta) = accuracy(s);
            let defaults = EstimateConfig::default();
            let config = EstimateConfig {
                workers: s.workers.unwrap_or(defaults.workers),
                batch_size: s.batch.unwrap_or(defaults.batch_size),
            };
            let r = estimate_disjoint_count_with(&d, &f, eps, delta, s.seed()?, config)?;
            let value = serde_json::to_value(&r)?;
            let mut text = String::new();
            for (key, v) in value.as_object().expect("report is an object") {
                let shown = v.as_str().map_or_else(|| v.to_string(), str::to_owned);
                writeln!(text, "{key}: {shown}")?;
            }
            Ok(Output::new(value, text))
        }
        Command::Sample => {
            let (d, f) = pair(s)?;
            let sample = sample_disjoint_pair(&d, &f, accuracy(s).0, s.seed()?)?;
            let text = tree_blocks(&[sample.first.clone(), sample.second.clone()]);
            Output::of(&sample, text)
        }
        Command::ExactCount => {
            let (d, f) = pair(s)?;
            let count = exact_disjoint_count(&d, &f, s.guard_n.unwrap_or(DEFAULT_GUARD_N))?;
            let count = count.to_string();
            Ok(Output::new(json!({ "count": count }), count))
        }
        Command::Tv { p, q } => {
            let (p, q) = distributions(s, p.as_deref(), q.as_deref())?;
            let tv = tv_distance(&p, &q)?;
            Ok(Output::new(json!({ "tv": tv }), tv.to_string()))
        }
        Command::ReduceBipartite => {
            let inst: BipartitePairInstance = document(s)?;
            instance(&bipartite_to_simple(&inst)?)
        }
        Command::ReduceDominate => instance(&add_dominating_vertex(&simple_pair(s)?)?),
        Command::ReducePendant => instance(&add_pendant_gadget(&simple_pair(s)?)?),
        Command::ReduceTree => {
            let r = reduce_to_tree_sequence(&simple_pair(s)?)?;
            let text = format!(
                "{}dominating_steps: {}\npendant_steps: {}",
                pair_text(&r.instance),
                r.dominating_steps,
                r.pendant_steps
            );
            Output::of(&r, text)
        }
        Command::DecideBrute => {
            let inst = simple_pair(s)?;
            let guard_n = s.guard_n.unwrap_or(DEFAULT_DECISION_GUARD_N);
            let ok = brute_force_disjoint_decision(&inst, guard_n)?;
            Ok(Output::new(json!({ "disjoint": ok }), ok.to_string()).decision(ok))
        }
    }
}

fn accuracy(s: &Settings) -> (f64, f64) {
    (
        s.epsilon.unwrap_or(DEFAULT_EPSILON),
        s.delta.unwrap_or(DEFAULT_DELTA),
    )
}

fn guard(n: usize, limit: usize) -> Result<()> {
    if n > limit {
        return Err(treepack::Error::Resource(format!(
            "enumeration limited to n <= {limit}, got n = {n}; raise --guard-n"
        ))
        .into());
    }
    Ok(())
}

fn join(values: &[usize], sep: &str) -> String {
    values
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(sep)
}

fn tree_blocks(trees: &[LabeledTree]) -> String {
    trees
        .iter()
        .map(LabeledTree::to_string)
        .collect::<Vec<_>>()
        .join("\n")
}

fn packing(result: &PackingResult) -> Result<Output> {
    Output::of(result, tree_blocks(result.trees()))
}

fn pair_text(inst: &SimplePairInstance) -> String {
    format!("D: {}\nF: {}\n", inst.d(), inst.f())
}

fn instance(inst: &SimplePairInstance) -> Result<Output> {
    Output::of(inst, pair_text(inst))
}

fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .context("cannot read stdin")?;
        Ok(text)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("cannot read {path}"))
    }
}

fn document<T: DeserializeOwned>(s: &Settings) -> Result<T> {
    match &s.source {
        Source::Input(path) => {
            let text = read_input(path)?;
            serde_json::from_str(&text).with_context(|| format!("invalid instance in {path}"))
        }
        Source::Flags { .. } => bail!("this subcommand reads its instance from --input"),
    }
}

fn parse_sequence(name: &str, text: &str) -> Result<DegreeSequence> {
    text.parse()
        .with_context(|| format!("invalid sequence for {name}: {text:?}"))
}

/// `D` from `--d`, or from an input holding a JSON array or comma list.
fn sequence(s: &Settings) -> Result<DegreeSequence> {
    match &s.source {
        Source::Flags { d: Some(d), .. } => parse_sequence("--d", d),
        Source::Flags { d: None, .. } => bail!("missing --d"),
        Source::Input(path) => {
            let text = read_input(path)?;
            let text = text.trim();
            if text.starts_with('[') {
                serde_json::from_str(text).with_context(|| format!("invalid sequence in {path}"))
            } else {
                parse_sequence(path, text)
            }
        }
    }
}

fn simple_pair(s: &Settings) -> Result<SimplePairInstance> {
    match &s.source {
        Source::Flags { d, f } => {
            let (Some(d), Some(f)) = (d, f) else {
                bail!("both --d and --f are required");
            };
            Ok(SimplePairInstance::new(
                parse_sequence("--d", d)?,
                parse_sequence("--f", f)?,
            )?)
        }
        Source::Input(_) => document(s),
    }
}

fn pair(s: &Settings) -> Result<(DegreeSequence, DegreeSequence)> {
    let inst = simple_pair(s)?;
    Ok((inst.d().clone(), inst.f().clone()))
}

fn matrix(s: &Settings, rows: &[String]) -> Result<DegreeMatrix> {
    match (&s.source, rows.is_empty()) {
        (Source::Input(_), true) => document(s),
        (Source::Input(_), false) => bail!("give either --row or --input, not both"),
        (Source::Flags { d: None, f: None }, false) => {
            let rows = rows
                .iter()
                .map(|r| parse_sequence("--row", r))
                .collect::<Result<Vec<_>>>()?;
            Ok(DegreeMatrix::new(rows)?)
        }
        (Source::Flags { .. }, false) => bail!("pack-multi takes --row, not --d/--f"),
        (Source::Flags { .. }, true) => bail!("pack-multi needs --row for every row or --input"),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Distributions {
    p: Vec<f64>,
    q: Vec<f64>,
}

fn distributions(s: &Settings, p: Option<&str>, q: Option<&str>) -> Result<(Vec<f64>, Vec<f64>)> {
    let parse = |name: &str, text: &str| -> Result<Vec<f64>> {
        text.split(',')
            .map(|t| {
                t.trim()
                    .parse::<f64>()
                    .with_context(|| format!("invalid probability {t:?} in --{name}"))
            })
            .collect()
    };
    match (p, q, &s.source) {
        (Some(p), Some(q), Source::Flags { d: None, f: None }) => {
            Ok((parse("p", p)?, parse("q", q)?))
        }
        (None, None, Source::Input(_)) => {
            let doc: Distributions = document(s)?;
            Ok((doc.p, doc.q))
        }
        _ => bail!("tv needs --p and --q, or --input with {{\"p\": [...], \"q\": [...]}}"),
    }
}

fn parse_probability(text: &str) -> Result<Rational> {
    let text = text.trim();
    if text.contains('.') || text.contains('e') {
        let x: f64 = text
            .parse()
            .with_context(|| format!("invalid probability {text:?}"))?;
        Rational::from_float(x).with_context(|| format!("invalid probability {text:?}"))
    } else {
        text.parse()
            .map_err(|_| anyhow::anyhow!("invalid probability {text:?}"))
    }
}
