//! The `widthdual` binary: exact graph widths, duality certificates, merge
//! closures, and property checks over explicit partition sets.
//!
//! Exit status: 0 when the command succeeds (the width is printed, a
//! certificate of either kind is emitted, a property holds, a verification
//! passes), 1 when a property or verification fails or certification
//! aborts, 2 on usage or cap errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use widthdual_core::{
    certify, compute_width, indicator_pf, input_warnings, is_dualising, is_pushing, is_refining,
    is_strongly_refining, is_submodular_pf, is_weakly_submodular_new, is_weakly_submodular_old,
    verify_certificate, Caps, CertKind, Certificate, ClosureTable, Error, Graph, GroundSet,
    Partition, PartitionFunction, TablePF, WidthParam,
};

#[derive(Parser)]
#[command(
    name = "widthdual",
    version,
    about = "Exact graph widths via partition duality"
)]
struct Cli {
    /// Limit every size-capped operation to ground sets of at most N
    /// elements (applied on top of the WIDTHDUAL_* environment caps).
    #[arg(long, global = true, value_name = "N")]
    cap: Option<usize>,
    /// Seed for randomized sampling helpers.
    #[arg(long, global = true, value_name = "N")]
    seed: Option<u64>,
    /// Compact machine-readable JSON on standard output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a width parameter of a graph exactly.
    Width {
        /// treewidth | branchwidth | rankwidth (or tw | bw | rw).
        #[arg(long, value_parser = parse_param)]
        param: WidthParam,
        /// Edge-list file: one `u v` pair per line, optional `p <n> <m>`
        /// header, `c` comment lines.
        #[arg(long)]
        input: PathBuf,
    },
    /// Emit a duality certificate at a threshold: a compatible tree when
    /// the width is at most k, otherwise a big bramble over the level set.
    Certify {
        /// treewidth | branchwidth | rankwidth (or tw | bw | rw).
        #[arg(long, value_parser = parse_param)]
        param: WidthParam,
        /// Threshold to certify against.
        #[arg(long)]
        k: u32,
        /// Edge-list file, as for `width`.
        #[arg(long)]
        input: PathBuf,
        /// Write tree certificates in DOT format to this file.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Close a partition set under merging of compatible pointed pairs.
    Closure {
        /// Partition-set JSON, inline or a file path:
        /// {"ground": 3, "partitions": [[[0],[1,2]], [[0,1,2]]]}.
        #[arg(long)]
        partitions: String,
    },
    /// Decide a structural property of a partition set or partition function.
    Check {
        #[arg(long, value_enum)]
        property: Property,
        /// JSON input, inline or a file path. Set properties read
        /// {"ground", "partitions"}; function properties read a
        /// {"ground", "table"} value table ("0,1|2"-keyed) or use the
        /// indicator function of {"ground", "partitions"}.
        #[arg(long)]
        input: String,
    },
    /// Re-check an emitted certificate against a graph.
    Verify {
        /// Certificate JSON, inline or a file path.
        #[arg(long)]
        cert: String,
        /// Edge-list file the certificate claims to describe.
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Property {
    Pushing,
    Refining,
    StronglyRefining,
    Dualising,
    Submodular,
    WeaklySubmodularOld,
    WeaklySubmodularNew,
}

impl Property {
    fn name(self) -> &'static str {
        match self {
            Property::Pushing => "pushing",
            Property::Refining => "refining",
            Property::StronglyRefining => "strongly-refining",
            Property::Dualising => "dualising",
            Property::Submodular => "submodular",
            Property::WeaklySubmodularOld => "weakly-submodular-old",
            Property::WeaklySubmodularNew => "weakly-submodular-new",
        }
    }

    fn takes_function(self) -> bool {
        matches!(
            self,
            Property::Submodular | Property::WeaklySubmodularOld | Property::WeaklySubmodularNew
        )
    }
}

fn parse_param(s: &str) -> Result<WidthParam, Error> {
    s.parse()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            match err.downcast_ref::<Error>() {
                Some(Error::Certification(_)) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn run(cli: &Cli) -> anyhow::Result<ExitCode> {
    let caps = caps_for(cli);
    match &cli.command {
        Command::Width { param, input } => width_cmd(cli, &caps, *param, input),
        Command::Certify {
            param,
            k,
            input,
            dot,
        } => certify_cmd(cli, &caps, *param, *k, input, dot.as_deref()),
        Command::Closure { partitions } => closure_cmd(cli, &caps, partitions),
        Command::Check { property, input } => check_cmd(cli, &caps, *property, input),
        Command::Verify { cert, input } => verify_cmd(cli, &caps, cert, input),
    }
}

fn caps_for(cli: &Cli) -> Caps {
    let mut caps = Caps::from_env();
    if let Some(n) = cli.cap {
        caps.ground = n;
        caps.enumeration = n;
        caps.closure = n;
        caps.search = n;
        caps.dualising = n;
        caps.connectivity = n;
    }
    if let Some(seed) = cli.seed {
        caps.seed = seed;
    }
    caps
}

fn load_graph(path: &Path) -> anyhow::Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(Graph::parse(&text)?)
}

/// Inline JSON is accepted wherever a JSON file path is; anything starting
/// with `{` or `[` is taken verbatim.
fn json_arg(arg: &str) -> anyhow::Result<String> {
    if arg.trim_start().starts_with(['{', '[']) {
        Ok(arg.to_string())
    } else {
        fs::read_to_string(arg).with_context(|| format!("reading {arg}"))
    }
}

fn warn(g: &Graph, param: WidthParam) {
    for w in input_warnings(g, param) {
        eprintln!("warning: {w}");
    }
}

fn width_cmd(cli: &Cli, caps: &Caps, param: WidthParam, input: &Path) -> anyhow::Result<ExitCode> {
    let g = load_graph(input)?;
    warn(&g, param);
    let width = compute_width(&g, param, caps)?;
    if cli.json {
        println!(
            "{}",
            json!({
                "parameter": param,
                "width": width,
                "graph_sha256": g.sha256_hex(),
            })
        );
    } else {
        println!("{width}");
    }
    Ok(ExitCode::SUCCESS)
}

fn certify_cmd(
    cli: &Cli,
    caps: &Caps,
    param: WidthParam,
    k: u32,
    input: &Path,
    dot: Option<&Path>,
) -> anyhow::Result<ExitCode> {
    let g = load_graph(input)?;
    warn(&g, param);
    let cert = certify(&g, param, k, caps)?;
    if let Some(path) = dot {
        match &cert.tree {
            Some(tree) => {
                let ground = param.partition_function(&g, caps)?.ground().clone();
                fs::write(path, tree.to_dot(Some(&ground)))
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            None => eprintln!("warning: --dot skipped, bramble certificates have no tree form"),
        }
    }
    if cli.json {
        println!("{}", serde_json::to_string(&cert)?);
    } else {
        match cert.kind {
            CertKind::Tree => eprintln!("{param} <= {k}: compatible tree found"),
            CertKind::Bramble => eprintln!("{param} > {k}: big bramble over the level set"),
        }
        println!("{}", serde_json::to_string_pretty(&cert)?);
    }
    Ok(ExitCode::SUCCESS)
}

fn closure_cmd(cli: &Cli, caps: &Caps, partitions: &str) -> anyhow::Result<ExitCode> {
    let input = SetInput::parse(&json_arg(partitions)?, caps)?;
    if input.table.is_some() {
        return Err(Error::Input("closure takes `partitions`, not `table`".into()).into());
    }
    let table = ClosureTable::closure(&input.ground, input.members()?, caps)?;
    if cli.json {
        println!(
            "{}",
            json!({
                "ground": input.ground.size(),
                "axioms": table.axioms().len(),
                "members": table.members(),
            })
        );
    } else {
        for p in table.members() {
            println!("{p}");
        }
        eprintln!(
            "{} members ({} axioms)",
            table.members().len(),
            table.axioms().len()
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn check_cmd(cli: &Cli, caps: &Caps, property: Property, input: &str) -> anyhow::Result<ExitCode> {
    let input = SetInput::parse(&json_arg(input)?, caps)?;
    if !property.takes_function() && input.table.is_some() {
        return Err(Error::Input(format!(
            "property `{}` takes `partitions`, not `table`",
            property.name()
        ))
        .into());
    }
    let report = match property {
        Property::Pushing => is_pushing(input.members()?),
        Property::Refining => is_refining(input.members()?),
        Property::StronglyRefining => is_strongly_refining(input.members()?),
        Property::Dualising => is_dualising(input.members()?, &input.ground, caps)?,
        Property::Submodular => is_submodular_pf(input.function(caps)?.as_ref(), caps)?,
        Property::WeaklySubmodularOld => {
            is_weakly_submodular_old(input.function(caps)?.as_ref(), caps)?
        }
        Property::WeaklySubmodularNew => {
            is_weakly_submodular_new(input.function(caps)?.as_ref(), caps)?
        }
    };
    let name = property.name();
    if cli.json {
        println!(
            "{}",
            json!({
                "property": name,
                "holds": report.holds,
                "counterexample": report.counterexample,
            })
        );
    } else if report.holds {
        println!("{name}: holds");
    } else {
        println!("{name}: fails");
        if let Some(ce) = &report.counterexample {
            println!("counterexample: {}", serde_json::to_string_pretty(ce)?);
        }
    }
    Ok(status(report.holds))
}

fn verify_cmd(cli: &Cli, caps: &Caps, cert: &str, input: &Path) -> anyhow::Result<ExitCode> {
    let cert: Certificate = serde_json::from_str(&json_arg(cert)?)
        .map_err(|e| Error::Input(format!("bad certificate: {e}")))?;
    let g = load_graph(input)?;
    let verdict = verify_certificate(&cert, &g, caps)?;
    if cli.json {
        println!("{}", serde_json::to_string(&verdict)?);
    } else {
        match &verdict.reason {
            None => {
                let relation = match cert.kind {
                    CertKind::Tree => "<=",
                    CertKind::Bramble => ">",
                };
                println!(
                    "certificate verifies: {} {relation} {}",
                    cert.parameter, cert.k
                );
            }
            Some(reason) => println!("certificate rejected: {reason}"),
        }
    }
    Ok(status(verdict.ok))
}

fn status(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

/// The JSON input shared by `closure` and `check`: a ground-set size plus
/// either explicit partitions or a partition-function table.
struct SetInput {
    ground: GroundSet,
    partitions: Option<Vec<Partition>>,
    table: Option<String>,
}

impl SetInput {
    fn parse(text: &str, caps: &Caps) -> Result<SetInput, Error> {
        let raw: serde_json::Value =
            serde_json::from_str(text).map_err(|e| Error::Input(format!("bad JSON: {e}")))?;
        let obj = raw
            .as_object()
            .ok_or_else(|| Error::Input("expected a JSON object".into()))?;
        for key in obj.keys() {
            if !matches!(key.as_str(), "ground" | "partitions" | "table") {
                return Err(Error::Input(format!("unknown key `{key}`")));
            }
        }
        let size = obj
            .get("ground")
            .and_then(serde_json::Value::as_u64)
            .ok_or_else(|| Error::Input("`ground` must be a positive integer".into()))?;
        let ground = GroundSet::new(size as usize, caps)?;
        let partitions = obj
            .get("partitions")
            .map(|v| {
                let loose: Vec<Partition> = serde_json::from_value(v.clone())
                    .map_err(|e| Error::Input(format!("bad partitions: {e}")))?;
                // Deserialization checks disjointness; coverage needs the ground set.
                loose
                    .into_iter()
                    .map(|p| Partition::new(&ground, p.blocks().to_vec()))
                    .collect::<Result<Vec<_>, _>>()
            })
            .transpose()?;
        let table = obj.get("table").map(ToString::to_string);
        Ok(SetInput {
            ground,
            partitions,
            table,
        })
    }

    fn members(&self) -> Result<&[Partition], Error> {
        self.partitions
            .as_deref()
            .ok_or_else(|| Error::Input("missing `partitions`".into()))
    }

    fn function(&self, caps: &Caps) -> Result<Box<dyn PartitionFunction>, Error> {
        match (&self.table, &self.partitions) {
            (Some(table), None) => Ok(Box::new(TablePF::from_json(
                self.ground.clone(),
                table,
                caps,
            )?)),
            (None, Some(members)) => Ok(Box::new(indicator_pf(&self.ground, members))),
            (Some(_), Some(_)) => Err(Error::Input(
                "give `table` or `partitions`, not both".into(),
            )),
            (None, None) => Err(Error::Input("missing `table` or `partitions`".into())),
        }
    }
}
