use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use compclust::catalog::Orientation;
use compclust::oracle::{self, OracleConfig};
use compclust::{affine, cc, clusters};
use compclust::{ComponentCluster, DimVector, Error, GenSchurRoot, HomExt, Quiver, SearchBound};

#[derive(Parser, Debug)]
#[command(name = "compclust", version, about = "Component clusters of acyclic quivers")]
struct Cli {
    /// Quiver file (`vertices N` then `arrow S T` lines, 1-based).
    #[arg(long, global = true, value_name = "FILE")]
    quiver: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,

    /// Seed for randomized subcommands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Records,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OrientationArg {
    #[value(name = "A")]
    A,
    #[value(name = "B")]
    B,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Dynkin / affine / wild type of each connected component.
    Classify,
    /// The minimal positive imaginary root of an affine quiver.
    Delta,
    /// Generalized Schur roots below a cap.
    Roots {
        #[arg(long, allow_hyphen_values = true)]
        cap: String,
    },
    /// Root type and Schur test for a vector.
    Schur {
        #[arg(allow_hyphen_values = true)]
        d: String,
    },
    /// Generic hom and ext between two dimension vectors.
    Ext {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Generic decomposition of an integer vector.
    Decompose {
        #[arg(allow_hyphen_values = true)]
        v: String,
    },
    /// All component clusters below a cap.
    Clusters {
        #[arg(long, allow_hyphen_values = true)]
        cap: String,
        /// Keep only clusters containing delta.
        #[arg(long)]
        delta_only: bool,
    },
    /// Replace one root of a cluster.
    Mutate {
        #[arg(long, value_name = "FILE")]
        cluster: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        remove: String,
        #[arg(long, allow_hyphen_values = true)]
        cap: String,
    },
    /// Exchange relation between two clusters one mutation apart.
    Exchange {
        #[arg(long, value_name = "FILE")]
        c1: PathBuf,
        #[arg(long, value_name = "FILE")]
        c2: PathBuf,
    },
    /// Bound on imaginary roots in a cluster.
    WildBound,
    /// Caldero-Chapoton character of a generic representation.
    Cc {
        #[arg(long, allow_hyphen_values = true)]
        dim: String,
        #[arg(long, default_value_t = cc::DEFAULT_SEEDS)]
        seeds: usize,
    },
    /// Affine exchange of delta against a preprojective root.
    VerifyExchange {
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
    },
    /// Mutation graph of the clusters below a cap, as DOT.
    MutationGraph {
        #[arg(long, allow_hyphen_values = true)]
        cap: String,
        #[arg(long, value_name = "OUT")]
        dot: PathBuf,
    },
    /// The five-vertex orientation example.
    PaperExample {
        #[arg(long, value_enum, ignore_case = true)]
        orientation: OrientationArg,
    },
    /// Finite-field Monte-Carlo checks.
    Oracle {
        #[command(subcommand)]
        cmd: OracleCmd,
    },
}

#[derive(Subcommand, Debug)]
enum OracleCmd {
    /// Generic ext estimated from random representations over F_p.
    Ext {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[arg(long, default_value_t = oracle::DEFAULT_PRIME)]
        prime: u64,
        #[arg(long, default_value_t = oracle::DEFAULT_TRIALS)]
        trials: usize,
    },
}

/// Failure of a subcommand, mapped onto an exit code.
enum Failure {
    Usage(String),
    Lib(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Io(_) => 2,
            Failure::Lib(Error::Guard(_)) => 3,
            Failure::Lib(Error::Internal(_)) => 4,
            Failure::Lib(_) => 2,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) | Failure::Io(m) => m.clone(),
            Failure::Lib(e) => e.to_string(),
        }
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

/// Report text. Plain mode prints `# key: value` headers and readable
/// lines; records mode prints tab-separated `kind key=value ...` lines.
struct Report {
    format: Format,
    out: String,
}

impl Report {
    fn new(format: Format) -> Self {
        Report { format, out: String::new() }
    }

    fn header(&mut self, fields: &[(&str, String)]) {
        match self.format {
            Format::Plain => {
                for (k, v) in fields {
                    let _ = writeln!(self.out, "# {k}: {v}");
                }
            }
            Format::Records => self.line("config", fields),
        }
    }

    fn record(&mut self, kind: &str, fields: &[(&str, String)], plain: impl Into<String>) {
        match self.format {
            Format::Plain => {
                let _ = writeln!(self.out, "{}", plain.into());
            }
            Format::Records => self.line(kind, fields),
        }
    }

    fn line(&mut self, kind: &str, fields: &[(&str, String)]) {
        self.out.push_str(kind);
        for (k, v) in fields {
            let _ = write!(self.out, "\t{k}={v}");
        }
        self.out.push('\n');
    }
}

struct Session {
    quiver: Option<(PathBuf, Quiver)>,
    seed: u64,
    report: Report,
}

impl Session {
    fn quiver(&self) -> Outcome<&Quiver> {
        self.quiver
            .as_ref()
            .map(|(_, q)| q)
            .ok_or_else(|| Failure::Usage("this subcommand needs --quiver FILE".into()))
    }

    fn vector(&self, s: &str) -> Outcome<DimVector> {
        let v: DimVector = s.parse()?;
        let n = self.quiver()?.n();
        if v.len() != n {
            return Err(Error::Dimension { expected: n, got: v.len() }.into());
        }
        Ok(v)
    }

    fn cap(&self, s: &str) -> Outcome<SearchBound> {
        Ok(SearchBound::new(self.vector(s)?)?)
    }

    /// Common header: subcommand, quiver source and text, seed, extras.
    fn header(&mut self, command: &str, extra: &[(&str, String)]) {
        let mut fields = vec![("command", command.to_string())];
        if let Some((path, q)) = &self.quiver {
            fields.push(("quiver-file", path.display().to_string()));
            fields.push(("quiver", quiver_inline(q)));
        }
        fields.push(("seed", self.seed.to_string()));
        fields.extend(extra.iter().cloned());
        self.report.header(&fields);
    }
}

fn quiver_inline(q: &Quiver) -> String {
    q.to_text().lines().filter(|l| !l.trim().is_empty()).collect::<Vec<_>>().join("; ")
}

fn read_file(path: &Path) -> Outcome<String> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))
}

/// One root per line; `#` starts a comment.
fn read_cluster(path: &Path, n: usize) -> Outcome<Vec<GenSchurRoot>> {
    let text = read_file(path)?;
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let r = GenSchurRoot::parse(line, n).map_err(|e| match e {
            Error::Parse { msg, .. } => Error::Parse { line: lineno + 1, msg },
            other => other,
        })?;
        out.push(r);
    }
    Ok(out)
}

fn vertices_1based(vs: &[usize]) -> String {
    vs.iter().map(|v| (v + 1).to_string()).collect::<Vec<_>>().join(",")
}

fn cluster_records(r: &mut Report, cs: &[ComponentCluster]) {
    for (i, c) in cs.iter().enumerate() {
        r.record(
            "cluster",
            &[("index", i.to_string()), ("size", c.len().to_string()), ("roots", c.label())],
            format!("c{i} size {}: {c}", c.len()),
        );
    }
}

fn run(cli: Cli) -> Outcome<String> {
    let quiver = match &cli.quiver {
        Some(p) => Some((p.clone(), Quiver::parse(&read_file(p)?)?)),
        None => None,
    };
    let mut s = Session { quiver, seed: cli.seed, report: Report::new(cli.format) };
    match cli.cmd {
        Cmd::Classify => {
            s.header("classify", &[]);
            let q = s.quiver()?.clone();
            for c in q.classify() {
                let vs = vertices_1based(&c.vertices);
                s.report.record(
                    "component",
                    &[("vertices", vs.clone()), ("class", c.class.to_string())],
                    format!("component {{{vs}}}: {}", c.class),
                );
            }
        }
        Cmd::Delta => {
            s.header("delta", &[]);
            let d = affine::delta(s.quiver()?)?;
            s.report.record("delta", &[("vector", d.to_string())], d.to_string());
        }
        Cmd::Roots { cap } => {
            let bound = s.cap(&cap)?;
            s.header("roots", &[("cap", bound.cap().to_string())]);
            let h = HomExt::new(s.quiver()?.clone());
            let roots = clusters::schur_roots_up_to(&h, &bound)?;
            for r in &roots {
                let t = h.quiver().is_root(r.vector())?;
                s.report.record("root", &[("root", r.to_string()), ("type", t.to_string())], format!("{r} {t}"));
            }
            let k = roots.len();
            s.report.record("count", &[("roots", k.to_string())], format!("{k} roots"));
        }
        Cmd::Schur { d } => {
            let v = s.vector(&d)?;
            s.header("schur", &[("vector", v.to_string())]);
            let h = HomExt::new(s.quiver()?.clone());
            let t = h.quiver().is_root(&v)?;
            let schur = v.as_negative_simple().is_some() || (v.is_positive() && h.is_schur_root(&v)?);
            s.report.record(
                "schur",
                &[("vector", v.to_string()), ("type", t.to_string()), ("schur", schur.to_string())],
                format!("{v}: {t}, schur {schur}"),
            );
        }
        Cmd::Ext { a, b } => {
            let (a, b) = (s.vector(&a)?, s.vector(&b)?);
            s.header("ext", &[("a", a.to_string()), ("b", b.to_string())]);
            let h = HomExt::new(s.quiver()?.clone());
            let (hom, ext) = (h.hom(&a, &b)?, h.ext(&a, &b)?);
            let euler = h.quiver().euler_form(&a, &b)?;
            s.report.record(
                "ext",
                &[("hom", hom.to_string()), ("ext", ext.to_string()), ("euler", euler.to_string())],
                format!("hom {hom}\next {ext}\neuler {euler}"),
            );
        }
        Cmd::Decompose { v } => {
            let v = s.vector(&v)?;
            s.header("decompose", &[("vector", v.to_string())]);
            let h = HomExt::new(s.quiver()?.clone());
            let dec = h.generic_decomposition(&v)?;
            h.certify(&dec)?;
            let parts: Vec<String> = dec.summands().iter().map(|r| r.to_string()).collect();
            s.report.record("decomposition", &[("summands", parts.join(";"))], dec.to_string());
        }
        Cmd::Clusters { cap, delta_only } => {
            let bound = s.cap(&cap)?;
            s.header("clusters", &[("cap", bound.cap().to_string()), ("delta-only", delta_only.to_string())]);
            let h = HomExt::new(s.quiver()?.clone());
            let mut cs = clusters::enumerate_clusters(&h, &bound)?;
            if delta_only {
                let d = GenSchurRoot::positive_unchecked(affine::delta(h.quiver())?);
                cs.retain(|c| c.contains(&d));
            }
            cluster_records(&mut s.report, &cs);
            let k = cs.len();
            s.report.record("count", &[("clusters", k.to_string())], format!("{k} clusters"));
        }
        Cmd::Mutate { cluster, remove, cap } => {
            let bound = s.cap(&cap)?;
            let n = s.quiver()?.n();
            let alpha = GenSchurRoot::parse(&remove, n)?;
            s.header(
                "mutate",
                &[
                    ("cluster-file", cluster.display().to_string()),
                    ("remove", alpha.to_string()),
                    ("cap", bound.cap().to_string()),
                ],
            );
            let h = HomExt::new(s.quiver()?.clone());
            let c = ComponentCluster::certified(&h, read_cluster(&cluster, n)?, bound.clone())?;
            let out = clusters::mutate(&h, &c, &alpha, &bound)?;
            s.report.record("input", &[("roots", c.label())], format!("input: {c}"));
            cluster_records(&mut s.report, &out);
        }
        Cmd::Exchange { c1, c2 } => {
            let n = s.quiver()?.n();
            let (r1, r2) = (read_cluster(&c1, n)?, read_cluster(&c2, n)?);
            let mut cap = DimVector::zero(n);
            for r in r1.iter().chain(&r2) {
                cap = cap.componentwise_max(r.vector());
            }
            let bound = SearchBound::new(cap)?;
            s.header(
                "exchange",
                &[
                    ("c1-file", c1.display().to_string()),
                    ("c2-file", c2.display().to_string()),
                    ("cap", bound.cap().to_string()),
                ],
            );
            let h = HomExt::new(s.quiver()?.clone());
            let k1 = ComponentCluster::certified(&h, r1, bound.clone())?;
            let k2 = ComponentCluster::certified(&h, r2, bound.clone())?;
            let only = |a: &ComponentCluster, b: &ComponentCluster| -> Vec<GenSchurRoot> {
                a.roots().iter().filter(|r| !b.contains(r)).cloned().collect()
            };
            let (d1, d2) = (only(&k1, &k2), only(&k2, &k1));
            let ([alpha], [alpha_new]) = (d1.as_slice(), d2.as_slice()) else {
                return Err(Error::Domain(format!("{k1} and {k2} are not related by a mutation")).into());
            };
            let rel = clusters::exchange(&h, &k1, &k2, alpha, alpha_new, &bound)?;
            let parts: Vec<String> = rel.parts().iter().map(|r| r.to_string()).collect();
            s.report.record(
                "exchange",
                &[
                    ("removed", rel.removed.to_string()),
                    ("added", rel.added.to_string()),
                    ("decomposition", rel.decomposition.to_string()),
                    ("parts", parts.join(";")),
                    ("hosting", rel.hosting.label()),
                ],
                format!(
                    "{} + {} = {}\nhosting cluster: {}",
                    rel.removed, rel.added, rel.decomposition, rel.hosting
                ),
            );
        }
        Cmd::WildBound => {
            s.header("wild-bound", &[]);
            let b = clusters::wild_imaginary_bound(s.quiver()?)?;
            s.report.record("wild-bound", &[("bound", b.to_string())], b.to_string());
        }
        Cmd::Cc { dim, seeds } => {
            let n = s.quiver()?.n();
            let r = GenSchurRoot::parse(&dim, n)?;
            let seed_list: Vec<u64> = (0..seeds as u64).map(|k| s.seed.wrapping_add(k)).collect();
            s.header("cc", &[("dim", r.to_string()), ("seeds", format!("{seed_list:?}"))]);
            let q = s.quiver()?.clone();
            if r.is_negative() {
                let x = cc::character_of_root(&q, &r, seeds)?;
                s.report.record("character", &[("value", x.to_string())], format!("X = {x}"));
            } else {
                let x = cc::generic_character_seeds(&q, r.vector(), &seed_list)?;
                let rep = cc::cc_character(&cc::ZRep::random(&q, r.vector(), s.seed)?)?;
                let fmt_primes = |ps: &[u64]| ps.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",");
                s.report.record(
                    "primes",
                    &[("used", fmt_primes(&rep.primes_used)), ("skipped", fmt_primes(&rep.primes_skipped))],
                    format!(
                        "primes used [{}] skipped [{}]",
                        fmt_primes(&rep.primes_used),
                        fmt_primes(&rep.primes_skipped)
                    ),
                );
                for g in &rep.grassmannians {
                    s.report.record(
                        "grassmannian",
                        &[("e", g.e.to_string()), ("chi", g.chi.to_string())],
                        format!("chi Gr_{} = {}", g.e, g.chi),
                    );
                }
                s.report.record("character", &[("value", x.to_string())], format!("X = {x}"));
            }
        }
        Cmd::VerifyExchange { beta } => {
            let n = s.quiver()?.n();
            let b = GenSchurRoot::parse(&beta, n)?;
            s.header("verify-exchange", &[("beta", b.to_string()), ("seeds", cc::DEFAULT_SEEDS.to_string())]);
            let h = HomExt::new(s.quiver()?.clone());
            let mut last = None;
            let mut found = None;
            for c in affine::delta_clusters(&h)? {
                match clusters::affine_exchange(&h, &c, &b) {
                    Ok(pair) => {
                        found = Some((c, pair));
                        break;
                    }
                    Err(e @ Error::Internal(_)) => return Err(e.into()),
                    Err(e) => last = Some(e),
                }
            }
            let Some((c, (b1, b1p))) = found else {
                return Err(last.unwrap_or_else(|| Error::NotFound("no delta-cluster".into())).into());
            };
            let chk = cc::verify_affine_exchange(h.quiver(), &b, &b1, &b1p, cc::DEFAULT_SEEDS)?;
            s.report.record(
                "affine-exchange",
                &[("delta-cluster", c.label()), ("beta1", b1.to_string()), ("beta1'", b1p.to_string())],
                format!("delta-cluster {c}\nbeta1 = {b1}\nbeta1' = {b1p}"),
            );
            s.report.record(
                "identity",
                &[("holds", chk.holds.to_string()), ("lhs", chk.lhs.to_string()), ("rhs", chk.rhs.to_string())],
                format!("lhs = {}\nrhs = {}\nholds {}", chk.lhs, chk.rhs, chk.holds),
            );
            if !chk.holds {
                return Err(Error::Internal("exchange identity fails".into()).into());
            }
        }
        Cmd::MutationGraph { cap, dot } => {
            let bound = s.cap(&cap)?;
            s.header("mutation-graph", &[("cap", bound.cap().to_string()), ("dot", dot.display().to_string())]);
            let h = HomExt::new(s.quiver()?.clone());
            let cs = clusters::enumerate_clusters(&h, &bound)?;
            let edges = clusters::mutation_edges(&cs);
            std::fs::write(&dot, clusters::mutation_graph_dot(&cs))
                .map_err(|e| Failure::Io(format!("cannot write {}: {e}", dot.display())))?;
            let conn = clusters::is_connected(cs.len(), &edges);
            s.report.record(
                "mutation-graph",
                &[("nodes", cs.len().to_string()), ("edges", edges.len().to_string()), ("connected", conn.to_string())],
                format!("{} clusters, {} mutations, connected {conn}", cs.len(), edges.len()),
            );
        }
        Cmd::PaperExample { orientation } => {
            let o = match orientation {
                OrientationArg::A => Orientation::A,
                OrientationArg::B => Orientation::B,
            };
            let tag = format!("{orientation:?}");
            s.header("paper-example", &[("orientation", tag)]);
            let (q, c) = clusters::orientation_example(o)?;
            let wb = clusters::wild_imaginary_bound(&q)?;
            s.report.record("quiver", &[("quiver", quiver_inline(&q))], format!("quiver: {}", quiver_inline(&q)));
            s.report.record(
                "cluster",
                &[("size", c.len().to_string()), ("roots", c.label())],
                format!("cluster size {}: {c}", c.len()),
            );
            s.report.record("wild-bound", &[("bound", wb.to_string())], format!("wild bound {wb}"));
        }
        Cmd::Oracle { cmd: OracleCmd::Ext { a, b, prime, trials } } => {
            let (a, b) = (s.vector(&a)?, s.vector(&b)?);
            let cfg = OracleConfig { prime, trials, seed: s.seed };
            s.header(
                "oracle ext",
                &[
                    ("a", a.to_string()),
                    ("b", b.to_string()),
                    ("prime", prime.to_string()),
                    ("trials", trials.to_string()),
                ],
            );
            let q = s.quiver()?.clone();
            let est = oracle::oracle_ext(&q, &a, &b, &cfg)?;
            let generic = HomExt::new(q).ext(&a, &b)?;
            s.report.record(
                "oracle-ext",
                &[("oracle", est.to_string()), ("generic", generic.to_string()), ("agree", (est == generic).to_string())],
                format!("oracle ext {est}\ngeneric ext {generic}\nagree {}", est == generic),
            );
        }
    }
    Ok(s.report.out)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("compclust: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
