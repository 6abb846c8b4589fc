//! Command line front end for the tensor cone engine.
//!
//! Exit codes: 0 ok, 1 verification failure, 2 configuration or usage
//! error, 3 budget exceeded, 4 internal consistency error.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use tensor_cone::bk::{bk_table, cup_table, ProductTable};
use tensor_cone::export;
use tensor_cone::face::{
    enumerate_faces, facet_inequalities, hasse_diagram, membership, ConeInequality, FaceDescriptor, Membership,
    RawInequality, Relation,
};
use tensor_cone::oracle::Oracle;
use tensor_cone::schubert::SchubertCalculus;
use tensor_cone::verify::{verify_inequalities, verify_theta, VerifyReport};
use tensor_cone::{CartanType, Error, Limits, ParabolicSubset, RootSystem, WeylGroup};

#[derive(Parser, Debug)]
#[command(name = "tensor-cone", version, about = "Face lattice of tensor product cones")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Oriented facet inequalities with their Θ data.
    Facets(FacetArgs),
    /// Faces up to a codimension, with Hasse edges.
    Faces(FacesArgs),
    /// Cross-check the facet system and faces against the oracle.
    Verify(VerifyArgs),
    /// Belkale-Kumar product table of a parabolic.
    BkTable(TableArgs),
    /// Cup product table of a parabolic.
    CupTable(TableArgs),
    /// Classify a tuple of dominant weights.
    Membership(MembershipArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args, Debug)]
struct Common {
    /// Cartan type, e.g. A2 or A1xB2.
    #[arg(long = "type", env = "TENSOR_CONE_TYPE")]
    cartan_type: String,
    /// Number of tensor factors minus one.
    #[arg(long, default_value_t = 2, env = "TENSOR_CONE_S")]
    s: usize,
    #[arg(long, value_enum, default_value_t = Format::Text, env = "TENSOR_CONE_FORMAT")]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, env = "TENSOR_CONE_OUT")]
    out: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long, env = "TENSOR_CONE_JOBS")]
    jobs: Option<usize>,
    /// Cap on enumerated tuples and oracle sample sizes.
    #[arg(long, env = "TENSOR_CONE_BUDGET")]
    budget: Option<u64>,
    /// Cap on tabulated module dimensions.
    #[arg(long, env = "TENSOR_CONE_DIM_CAP")]
    dim_cap: Option<u64>,
}

#[derive(Args, Debug)]
struct Sampling {
    /// Largest coordinate of the oracle sample box.
    #[arg(long = "box", default_value_t = 4, env = "TENSOR_CONE_BOX")]
    box_bound: i64,
    /// Saturation depth of the oracle.
    #[arg(long, default_value_t = 3, env = "TENSOR_CONE_DEPTH")]
    depth: u32,
}

#[derive(Args, Debug)]
struct FacetArgs {
    #[command(flatten)]
    common: Common,
    #[command(flatten)]
    sampling: Sampling,
}

#[derive(Args, Debug)]
struct FacesArgs {
    #[command(flatten)]
    common: Common,
    /// Largest codimension to enumerate (default: the rank).
    #[arg(long, env = "TENSOR_CONE_MAX_CODIM")]
    max_codim: Option<usize>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    common: Common,
    #[command(flatten)]
    sampling: Sampling,
    #[arg(long, env = "TENSOR_CONE_MAX_CODIM")]
    max_codim: Option<usize>,
    /// Verify this inequality system (CSV as written by `facets --format csv`)
    /// instead of the Θ facets.
    #[arg(long, env = "TENSOR_CONE_INEQUALITIES")]
    inequalities: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct TableArgs {
    #[command(flatten)]
    common: Common,
    /// Simple indices outside the Levi, 1-based and comma separated.
    #[arg(long, env = "TENSOR_CONE_PARABOLIC")]
    parabolic: String,
}

#[derive(Args, Debug)]
struct MembershipArgs {
    #[command(flatten)]
    common: Common,
    #[command(flatten)]
    sampling: Sampling,
    /// Weights separated by `;`, coordinates by `,`: e.g. "1;1;2".
    #[arg(long, env = "TENSOR_CONE_POINT")]
    point: String,
}

enum Outcome {
    Ok(String),
    Failed(String),
}

struct Context {
    s: usize,
    limits: Limits,
    sc: SchubertCalculus,
    oracle: Oracle,
}

impl Context {
    fn new(common: &Common) -> Result<Self, Error> {
        let t: CartanType = common.cartan_type.parse()?;
        let mut limits = Limits::default();
        if let Some(b) = common.budget {
            if b == 0 {
                return Err(Error::Config("--budget must be positive".into()));
            }
            limits.tuple_budget = b;
        }
        if let Some(d) = common.dim_cap {
            if d == 0 {
                return Err(Error::Config("--dim-cap must be positive".into()));
            }
            limits.dim_cap = d;
        }
        if common.s == 0 {
            return Err(Error::Config("--s must be at least 1".into()));
        }
        let rs = Arc::new(RootSystem::new(t));
        let weyl = Arc::new(WeylGroup::enumerate(rs.clone(), &limits)?);
        let sc = SchubertCalculus::new(weyl, &limits)?;
        Ok(Context { s: common.s, limits, sc, oracle: Oracle::new(rs, limits) })
    }

    fn weyl(&self) -> &WeylGroup {
        self.sc.weyl()
    }

    fn rank(&self) -> usize {
        self.weyl().rank()
    }

    fn oriented_facets(&self, sampling: &Sampling) -> Result<(Vec<FaceDescriptor>, Vec<ConeInequality>), Error> {
        check_sampling(sampling)?;
        let faces = enumerate_faces(&self.sc, self.s, 1, self.limits.tuple_budget)?;
        let sample = self.oracle.sample_cone(self.s, sampling.box_bound, sampling.depth)?;
        let ineqs = facet_inequalities(&faces, &sample)?;
        Ok((faces, ineqs))
    }
}

fn check_sampling(s: &Sampling) -> Result<(), Error> {
    if s.box_bound < 1 || s.depth < 1 {
        return Err(Error::Config("--box and --depth must be positive".into()));
    }
    Ok(())
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn render_linear(rank: usize, coeffs: &[i64]) -> String {
    let mut out = String::new();
    for (n, &c) in coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let var = format!("nu{}_{}", n / rank, n % rank + 1);
        let term = if c.abs() == 1 { var } else { format!("{}*{var}", c.abs()) };
        if out.is_empty() {
            out = if c < 0 { format!("-{term}") } else { term };
        } else {
            out.push_str(if c < 0 { " - " } else { " + " });
            out.push_str(&term);
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

fn render_raw(rank: usize, r: &RawInequality) -> String {
    let rel = match r.relation {
        Relation::Ge => ">=",
        Relation::Eq => "=",
    };
    format!("{} {rel} 0", render_linear(rank, &r.coeffs))
}

fn reps_text(weyl: &WeylGroup, reps: &[usize]) -> String {
    let parts: Vec<String> = reps.iter().map(|&u| weyl.element(u).to_string()).collect();
    format!("({})", parts.join(", "))
}

fn cmd_facets(args: &FacetArgs) -> Result<Outcome, Error> {
    let ctx = Context::new(&args.common)?;
    let (faces, ineqs) = ctx.oriented_facets(&args.sampling)?;
    let w = ctx.weyl();
    Ok(Outcome::Ok(match args.common.format {
        Format::Json => pretty(&export::facets_json(w, ctx.s, &faces, &ineqs)),
        Format::Csv => {
            let raw: Vec<RawInequality> = ineqs.iter().map(ConeInequality::to_raw).collect();
            export::inequalities_csv(ctx.rank(), ctx.s, &raw)?
        }
        Format::Text => {
            let mut out = format!("{} facets for {} with s = {}\n", ineqs.len(), w.root_system().cartan_type(), ctx.s);
            for i in &ineqs {
                let f = &faces[i.face];
                let _ = writeln!(
                    out,
                    "{}  [{} {}]",
                    render_raw(ctx.rank(), &i.to_raw()),
                    f.parabolic,
                    reps_text(w, &f.reps)
                );
            }
            out
        }
    }))
}

fn cmd_faces(args: &FacesArgs) -> Result<Outcome, Error> {
    let ctx = Context::new(&args.common)?;
    let max_codim = args.max_codim.unwrap_or(ctx.rank());
    let faces = enumerate_faces(&ctx.sc, ctx.s, max_codim, ctx.limits.tuple_budget)?;
    let edges = hasse_diagram(ctx.weyl(), &faces)?;
    let w = ctx.weyl();
    Ok(Outcome::Ok(match args.common.format {
        Format::Json => pretty(&export::faces_json(w, ctx.s, &faces, Some(&edges))),
        Format::Csv => export::faces_csv(w, &faces)?,
        Format::Text => {
            let mut out = format!("{} faces, {} edges\n", faces.len(), edges.len());
            for (i, f) in faces.iter().enumerate() {
                let _ = writeln!(out, "face {i}: codim {} {} {}", f.codim, f.parabolic, reps_text(w, &f.reps));
            }
            for (a, b) in &edges {
                let _ = writeln!(out, "edge {a} -> {b}");
            }
            out
        }
    }))
}

fn report_output(report: &VerifyReport, format: Format) -> String {
    match format {
        Format::Json => pretty(&json!({
            "schema_version": export::SCHEMA_VERSION,
            "passed": report.all_passed(),
            "checks": report.checks.iter().map(|c| json!({
                "name": c.name,
                "passed": c.passed,
                "detail": c.detail,
                "counterexamples": c.counterexamples,
            })).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut out = String::from("check,passed\n");
            for c in &report.checks {
                let _ = writeln!(out, "{},{}", c.name, c.passed);
            }
            out
        }
        Format::Text => report.to_string(),
    }
}

fn cmd_verify(args: &VerifyArgs) -> Result<Outcome, Error> {
    let ctx = Context::new(&args.common)?;
    check_sampling(&args.sampling)?;
    let report = match &args.inequalities {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
            let ineqs = export::parse_inequalities_csv(&text, ctx.rank(), ctx.s)?;
            let sample = ctx.oracle.sample_cone(ctx.s, args.sampling.box_bound, args.sampling.depth)?;
            verify_inequalities(&ineqs, &sample)
        }
        None => verify_theta(
            &ctx.sc,
            &ctx.oracle,
            ctx.s,
            args.max_codim.unwrap_or(ctx.rank()),
            args.sampling.box_bound,
            args.sampling.depth,
            ctx.limits.tuple_budget,
        )?,
    };
    let out = report_output(&report, args.common.format);
    Ok(if report.all_passed() { Outcome::Ok(out) } else { Outcome::Failed(out) })
}

fn parse_parabolic(rank: usize, text: &str) -> Result<ParabolicSubset, Error> {
    let mut comp = Vec::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let k: usize = part
            .parse()
            .map_err(|_| Error::Config(format!("bad parabolic index {part:?}")))?;
        if k == 0 || k > rank {
            return Err(Error::Config(format!("parabolic index {k} out of range 1..={rank}")));
        }
        comp.push(k - 1);
    }
    if comp.is_empty() {
        return Err(Error::Config("empty parabolic complement: P = G is excluded".into()));
    }
    ParabolicSubset::from_complement(rank, &comp)
}

fn table_output(w: &WeylGroup, kind: &str, table: &ProductTable, format: Format) -> Result<String, Error> {
    Ok(match format {
        Format::Json => pretty(&export::table_json(w, kind, table)),
        Format::Csv => export::table_csv(w, table)?,
        Format::Text => {
            let mut out = format!("{kind} table for {}\n", table.parabolic);
            for e in &table.entries {
                let terms: Vec<String> = e
                    .terms
                    .iter()
                    .map(|&(c, k)| if k == 1 { format!("[{}]", w.element(c)) } else { format!("{k}[{}]", w.element(c)) })
                    .collect();
                let rhs = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
                let _ = writeln!(out, "[{}] * [{}] = {rhs}", w.element(e.left), w.element(e.right));
            }
            out
        }
    })
}

fn cmd_table(args: &TableArgs, bk: bool) -> Result<Outcome, Error> {
    let ctx = Context::new(&args.common)?;
    let p = parse_parabolic(ctx.rank(), &args.parabolic)?;
    let (kind, table) = if bk { ("bk", bk_table(&ctx.sc, &p)?) } else { ("cup", cup_table(&ctx.sc, &p)?) };
    Ok(Outcome::Ok(table_output(ctx.weyl(), kind, &table, args.common.format)?))
}

fn parse_point(rank: usize, s: usize, text: &str) -> Result<Vec<Vec<i64>>, Error> {
    let point: Vec<Vec<i64>> = text
        .split(';')
        .map(|w| {
            w.split(',')
                .map(|x| x.trim().parse::<i64>().map_err(|_| Error::Config(format!("bad coordinate {x:?}"))))
                .collect()
        })
        .collect::<Result<_, _>>()?;
    if point.len() != s + 1 || point.iter().any(|w| w.len() != rank) {
        return Err(Error::Config(format!(
            "--point needs {} weights of {rank} coordinates each",
            s + 1
        )));
    }
    Ok(point)
}

fn cmd_membership(args: &MembershipArgs) -> Result<Outcome, Error> {
    let ctx = Context::new(&args.common)?;
    let point = parse_point(ctx.rank(), ctx.s, &args.point)?;
    let (_, ineqs) = ctx.oriented_facets(&args.sampling)?;
    let faces = enumerate_faces(&ctx.sc, ctx.s, ctx.rank(), ctx.limits.tuple_budget)?;
    let m = membership(&ineqs, &faces, &point);
    let (class, active, walls) = match &m {
        Membership::Interior => ("interior", vec![], vec![]),
        Membership::Outside => ("outside", vec![], vec![]),
        Membership::Boundary { faces, walls } => ("boundary", faces.clone(), walls.clone()),
    };
    let w = ctx.weyl();
    Ok(Outcome::Ok(match args.common.format {
        Format::Json => pretty(&json!({
            "schema_version": export::SCHEMA_VERSION,
            "cartan_type": w.root_system().cartan_type().to_string(),
            "s": ctx.s,
            "point": point,
            "classification": class,
            "active_faces": active.iter().map(|&i| json!({
                "id": i,
                "codim": faces[i].codim,
                "parabolic_complement": faces[i].parabolic.complement().iter().map(|k| k + 1).collect::<Vec<_>>(),
                "reps": faces[i].reps.iter().map(|&u| w.element(u).word_1based()).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "walls": walls.iter().map(|&(i, j)| [i, j + 1]).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let ids: Vec<String> = active.iter().map(usize::to_string).collect();
            format!("classification,active_faces\n{class},{}\n", ids.join(" "))
        }
        Format::Text => {
            let mut out = format!("{class}\n");
            for &i in &active {
                let f = &faces[i];
                let _ = writeln!(out, "active face {i}: codim {} {} {}", f.codim, f.parabolic, reps_text(w, &f.reps));
            }
            for &(i, j) in &walls {
                let _ = writeln!(out, "chamber wall: <nu{i}, alpha{}^vee> = 0", j + 1);
            }
            out
        }
    }))
}

fn common(cmd: &Command) -> &Common {
    match cmd {
        Command::Facets(a) => &a.common,
        Command::Faces(a) => &a.common,
        Command::Verify(a) => &a.common,
        Command::BkTable(a) | Command::CupTable(a) => &a.common,
        Command::Membership(a) => &a.common,
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Config(_) | Error::Usage(_) => 2,
        Error::Budget(_) => 3,
        Error::Consistency(_) => 4,
    }
}

fn emit(common: &Common, text: &str) -> Result<(), Error> {
    match &common.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::Config(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let common = common(&cli.command);
    if let Some(j) = common.jobs {
        if j == 0 {
            eprintln!("error: --jobs must be positive");
            return ExitCode::from(2);
        }
        // only fails if a pool already exists
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j).build_global();
    }
    let result = match &cli.command {
        Command::Facets(a) => cmd_facets(a),
        Command::Faces(a) => cmd_faces(a),
        Command::Verify(a) => cmd_verify(a),
        Command::BkTable(a) => cmd_table(a, true),
        Command::CupTable(a) => cmd_table(a, false),
        Command::Membership(a) => cmd_membership(a),
    };
    let (text, code) = match result {
        Ok(Outcome::Ok(t)) => (t, 0),
        Ok(Outcome::Failed(t)) => (t, 1),
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    if let Err(e) = emit(common, &text) {
        eprintln!("error: {e}");
        return ExitCode::from(exit_code(&e));
    }
    ExitCode::from(code)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_rendering() {
        assert_eq!(render_linear(1, &[-1, 1, 1]), "-nu0_1 + nu1_1 + nu2_1");
        assert_eq!(render_linear(2, &[2, 0, -3, 1]), "2*nu0_1 - 3*nu1_1 + nu1_2");
        assert_eq!(render_linear(1, &[0, 0]), "0");
    }

    #[test]
    fn parabolic_parsing() {
        assert_eq!(parse_parabolic(2, "1").unwrap().complement(), vec![0]);
        assert_eq!(parse_parabolic(3, "1, 3").unwrap().complement(), vec![0, 2]);
        assert!(parse_parabolic(2, "").is_err());
        assert!(parse_parabolic(2, "3").is_err());
    }

    #[test]
    fn point_parsing() {
        assert_eq!(parse_point(1, 2, "1;1;2").unwrap(), vec![vec![1], vec![1], vec![2]]);
        assert!(parse_point(2, 2, "1;1;2").is_err());
        assert!(parse_point(1, 2, "1;x;2").is_err());
    }
}
