//! `rlwb`: command-line front end for the residuated lattice workbench.
//!
//! Exit codes: 0 pass / FOUND / HOLDS, 1 fail / UNSAT / FAILS, 2 usage or
//! input errors, 3 search budget exhausted.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use rlwb::amalgamation::{
    bounded_amalgam_search, bounded_one_amalgam_search, builtin_formation, check_obstruction, find_obstruction,
    injectivity_reduction, parse_vformation, ClassFlags, ObstructionOutcome, ObstructionWitness, SearchOptions,
    SearchReport, Side, VFormation, Verdict,
};
use rlwb::constructions::{
    builtin, generalized_rotation, nucleus_image, ordinal_sum, partial_gluing, validate_nucleus, validate_triple,
    Builtin, LowerCompatibleTriple, Nucleus,
};
use rlwb::doc::{parse_document, to_value, Document};
use rlwb::enumeration::{count_chains, enumerate_chains, ChainFlags, DEFAULT_BUDGET};
use rlwb::report::{default_rotations, paper_report, DEFAULT_MAX_SIZE};
use rlwb::{
    check_identity, congruence_filters, filter_to_congruence, find_embeddings, find_homomorphisms, parse_identity,
    quotient, CongruenceFilter, Error, FiniteRL, IdentityVerdict, MorphKind, Morphism, Property, ValidationReport,
};

#[derive(Parser)]
#[command(name = "rlwb", version, about = "Finite residuated lattice workbench")]
struct Cli {
    /// Report format
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Write the report to this file instead of stdout
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Validate an algebra (or a lower-compatible triple) against property flags
    Verify {
        #[command(flatten)]
        src: Source,
        /// Comma-separated: lattice, monoid, residuation, integral, commutative, chain, zero-bounded
        #[arg(long, default_value = "lattice,monoid,residuation")]
        flags: String,
    },
    /// Evaluate an identity or named shortcut (prel, sem, div, inv, idem, stone, potent:n)
    Identity {
        #[command(flatten)]
        src: Source,
        #[arg(long = "id")]
        identity: String,
    },
    /// Build an algebra from others
    Construct {
        #[command(subcommand)]
        what: Construct,
    },
    /// List embeddings (or homomorphisms) between two algebras
    Embed {
        /// Builtin name or document path
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        /// Search homomorphisms instead of embeddings
        #[arg(long)]
        hom: bool,
        /// Pinned images as `label:label` pairs, comma-separated
        #[arg(long)]
        pin: Option<String>,
    },
    /// List congruence filters with their congruences
    Filters {
        #[command(flatten)]
        src: Source,
    },
    /// Quotient by a congruence filter
    Quotient {
        #[command(flatten)]
        src: Source,
        /// Filter members as comma-separated labels
        #[arg(long)]
        filter: String,
    },
    /// Enumerate residuated chains of a given size
    Enumerate {
        #[arg(long)]
        size: usize,
        #[arg(long)]
        integral: bool,
        #[arg(long)]
        commutative: bool,
        /// Require x^k = x^(k+1)
        #[arg(long)]
        potent: Option<usize>,
        #[arg(long)]
        divisible: bool,
        #[arg(long)]
        pointed: bool,
        /// Print only the number of chains
        #[arg(long)]
        count: bool,
    },
    /// Bounded search for a chain amalgam of a V-formation
    Amalgam(SearchArgs),
    /// Bounded search for a chain one-amalgam of a V-formation
    OneAmalgam(SearchArgs),
    /// Find and check an obstruction certificate
    Obstruct {
        /// Builtin formation (VS, VS.pointed, VS^identity:2, ...) or document path
        #[arg(long)]
        vf: String,
        /// Check this witness instead of searching: `a,b,c,u1,u2[,left|right]` as labels
        #[arg(long)]
        witness: Option<String>,
    },
    /// Run the full reproduction pipeline on VS and its rotations
    Paper {
        #[arg(long, default_value_t = DEFAULT_MAX_SIZE)]
        max_size: usize,
        /// Rotations as `delta:n` (delta: identity or const-1); repeatable
        #[arg(long = "rotation")]
        rotations: Vec<String>,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Builtin name, e.g. VS.C, lukasiewicz(4), pointed(two)
    #[arg(long)]
    builtin: Option<String>,
    /// Algebra document path
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Construct {
    /// Ordinal sum of two integral algebras
    OrdinalSum {
        #[arg(long)]
        lower: String,
        #[arg(long)]
        upper: String,
    },
    /// Partial gluing of a lower-compatible triple with an algebra
    Gluing {
        /// Builtin triple name
        #[arg(long)]
        triple: String,
        #[arg(long)]
        upper: String,
    },
    /// Generalized n-rotation by a nucleus
    Rotation {
        #[arg(long)]
        algebra: String,
        /// identity, const-1, or a comma-separated map of indices
        #[arg(long, default_value = "identity")]
        delta: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// Image of a nucleus with its induced structure
    NucleusImage {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        delta: String,
    },
}

#[derive(Args)]
struct SearchArgs {
    /// Builtin formation (VS, VS.pointed, VS^identity:2, ...) or document path
    #[arg(long)]
    vf: String,
    #[arg(long, default_value_t = 9)]
    max_size: usize,
    #[arg(long)]
    commutative: bool,
    #[arg(long)]
    integral: bool,
    #[arg(long)]
    pointed: bool,
    /// Keep images of B and C disjoint outside A
    #[arg(long)]
    no_identify: bool,
    /// Node budget across all placements
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
}

/// A rendered result and its exit code.
struct Outcome {
    json: Value,
    text: String,
    code: u8,
}

impl Outcome {
    fn new(code: u8, json: Value, text: impl Into<String>) -> Self {
        Outcome { json, text: text.into(), code }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&cli.command) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(match e {
                Error::Budget { .. } => 3,
                _ => 2,
            });
        }
    };
    let body = match cli.format {
        Format::Json => serde_json::to_string_pretty(&outcome.json).expect("serializable") + "\n",
        Format::Text => {
            let mut t = outcome.text;
            if !t.ends_with('\n') {
                t.push('\n');
            }
            t
        }
    };
    match &cli.output {
        Some(path) => {
            if let Err(e) = write_atomic(path, &body) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{body}"),
    }
    ExitCode::from(outcome.code)
}

fn write_atomic(path: &Path, body: &str) -> std::io::Result<()> {
    let tmp = path.with_extension("tmp~");
    fs::write(&tmp, body)?;
    fs::rename(&tmp, path)
}

fn read(path: &Path) -> rlwb::Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Format(format!("{}: {e}", path.display())))
}

/// A builtin name, or a path to a document when such a file exists.
fn load_any(src: &str) -> rlwb::Result<Builtin> {
    let p = Path::new(src);
    if p.is_file() {
        return match parse_document(&read(p)?)? {
            Document::Total(a) => Ok(Builtin::Algebra(a)),
            Document::Partial(_) => Err(Error::Format(format!("{src}: expected a total algebra"))),
        };
    }
    builtin(src)
}

fn load_algebra(src: &str) -> rlwb::Result<FiniteRL> {
    match load_any(src)? {
        Builtin::Algebra(a) => Ok(a),
        Builtin::Triple(_) => Err(Error::Format(format!("`{src}` is a triple, not an algebra"))),
    }
}

fn load_triple(src: &str) -> rlwb::Result<LowerCompatibleTriple> {
    match builtin(src)? {
        Builtin::Triple(t) => Ok(t),
        Builtin::Algebra(_) => Err(Error::Format(format!("`{src}` is an algebra, not a triple"))),
    }
}

fn load_source(src: &Source) -> rlwb::Result<Document> {
    match (&src.builtin, &src.input) {
        (Some(name), _) => match builtin(name)? {
            Builtin::Algebra(a) => Ok(Document::Total(a)),
            Builtin::Triple(t) => Err(Error::Format(format!(
                "`{name}` is a triple; only `verify` accepts triples ({} elements)",
                t.k.size()
            ))),
        },
        (None, Some(path)) => parse_document(&read(path)?),
        (None, None) => unreachable!("clap requires a source"),
    }
}

fn source_algebra(src: &Source) -> rlwb::Result<FiniteRL> {
    match load_source(src)? {
        Document::Total(a) => Ok(a),
        Document::Partial(_) => Err(Error::Format("expected a total algebra".into())),
    }
}

fn load_formation(src: &str) -> rlwb::Result<VFormation> {
    let p = Path::new(src);
    if p.is_file() {
        return parse_vformation(&read(p)?);
    }
    builtin_formation(src)
}

fn element(alg: &FiniteRL, label: &str) -> rlwb::Result<usize> {
    alg.element(label.trim()).ok_or_else(|| Error::Format(format!("no element `{}` in {}", label.trim(), alg.name())))
}

fn report_outcome(what: &str, r: &ValidationReport) -> Outcome {
    let checks: Vec<Value> = r
        .checks
        .iter()
        .map(|c| json!({ "name": c.name, "passed": c.passed, "witness": c.witness, "detail": c.detail }))
        .collect();
    let mut text = format!("{what}\n");
    for c in &r.checks {
        let mark = if c.passed { "pass" } else { "FAIL" };
        text.push_str(&format!("  {mark:4} {}", c.name));
        if !c.passed {
            text.push_str(&format!("  {:?} {}", c.witness, c.detail));
        }
        text.push('\n');
    }
    text.push_str(if r.passed() { "PASS" } else { "FAIL" });
    Outcome::new(!r.passed() as u8, json!({ "subject": what, "passed": r.passed(), "checks": checks }), text)
}

fn morphism_value(m: &Morphism) -> Value {
    json!({ "map": m.map, "kind": match m.kind { MorphKind::Hom => "hom", MorphKind::Embedding => "embedding" } })
}

fn render_map(dom: &FiniteRL, cod: &FiniteRL, m: &Morphism) -> String {
    dom.elements().map(|x| format!("{}↦{}", dom.label(x), cod.label(m.map[x]))).collect::<Vec<_>>().join(", ")
}

fn algebra_outcome(a: &FiniteRL) -> Outcome {
    Outcome::new(0, to_value(a), a.render_text())
}

fn run(cmd: &Command) -> rlwb::Result<Outcome> {
    match cmd {
        Command::Verify { src, flags } => {
            if let Some(name) = &src.builtin {
                if let Builtin::Triple(t) = builtin(name)? {
                    return Ok(report_outcome(name, &validate_triple(&t)?));
                }
            }
            let props = Property::parse_list(flags)?;
            match load_source(src)? {
                Document::Total(a) => Ok(report_outcome(a.name(), &a.validate(&props))),
                Document::Partial(p) => Ok(report_outcome(p.name(), &p.validate_partial())),
            }
        }
        Command::Identity { src, identity } => {
            let a = source_algebra(src)?;
            let id = parse_identity(identity)?;
            let verdict = check_identity(&a, &id)?;
            Ok(match verdict {
                IdentityVerdict::Holds => Outcome::new(
                    0,
                    json!({ "algebra": a.name(), "identity": id.to_string(), "verdict": "HOLDS" }),
                    format!("{id}\nHOLDS in {}", a.name()),
                ),
                IdentityVerdict::Fails(asg) => {
                    let named: Vec<(String, String)> = asg.iter().map(|(v, x)| (v.clone(), a.label(*x).to_string())).collect();
                    let shown = named.iter().map(|(v, l)| format!("{v}={l}")).collect::<Vec<_>>().join(", ");
                    let obj: serde_json::Map<String, Value> = named.into_iter().map(|(v, l)| (v, json!(l))).collect();
                    Outcome::new(
                        1,
                        json!({ "algebra": a.name(), "identity": id.to_string(), "verdict": "FAILS", "assignment": obj }),
                        format!("{id}\nFAILS in {} at {shown}", a.name()),
                    )
                }
            })
        }
        Command::Construct { what } => construct(what),
        Command::Embed { from, to, hom, pin } => {
            let (x, y) = (load_algebra(from)?, load_algebra(to)?);
            let pins = match pin {
                None => vec![],
                Some(s) => s
                    .split(',')
                    .filter(|t| !t.trim().is_empty())
                    .map(|pair| {
                        let (a, b) = pair.split_once(':').ok_or_else(|| Error::Format(format!("bad pin `{pair}`")))?;
                        Ok((element(&x, a)?, element(&y, b)?))
                    })
                    .collect::<rlwb::Result<Vec<_>>>()?,
            };
            let ms = if *hom { find_homomorphisms(&x, &y, &pins) } else { find_embeddings(&x, &y, &pins) };
            let kind = if *hom { "homomorphisms" } else { "embeddings" };
            let mut text = format!("{} {kind} {} -> {}\n", ms.len(), x.name(), y.name());
            for m in &ms {
                text.push_str(&format!("  {}\n", render_map(&x, &y, m)));
            }
            let list: Vec<Value> = ms.iter().map(morphism_value).collect();
            Ok(Outcome::new(ms.is_empty() as u8, json!({ "from": x.name(), "to": y.name(), "morphisms": list }), text))
        }
        Command::Filters { src } => {
            let a = source_algebra(src)?;
            let fs = congruence_filters(&a);
            let names = |xs: &[usize]| xs.iter().map(|&x| a.label(x).to_string()).collect::<Vec<_>>();
            let mut text = format!("{} congruence filters of {}\n", fs.len(), a.name());
            let mut list = vec![];
            for f in &fs {
                let blocks: Vec<Vec<String>> = filter_to_congruence(&a, f).iter().map(|b| names(b)).collect();
                text.push_str(&format!("  {{{}}}  blocks {:?}\n", names(&f.members).join(", "), blocks));
                list.push(json!({ "members": names(&f.members), "blocks": blocks }));
            }
            Ok(Outcome::new(0, json!({ "algebra": a.name(), "filters": list }), text))
        }
        Command::Quotient { src, filter } => {
            let a = source_algebra(src)?;
            let mut members = filter.split(',').map(|l| element(&a, l)).collect::<rlwb::Result<Vec<_>>>()?;
            members.sort();
            members.dedup();
            let f = congruence_filters(&a)
                .into_iter()
                .find(|f| f.members == members)
                .ok_or_else(|| Error::NotCongruence(format!("{{{filter}}} is not a congruence filter of {}", a.name())))?;
            let (q, map) = quotient(&a, &CongruenceFilter { members: f.members });
            let map_labels: Vec<&str> = map.iter().map(|&x| q.label(x)).collect();
            Ok(Outcome::new(
                0,
                json!({ "quotient": to_value(&q), "map": map }),
                format!("{}\nmap: {}", q.render_text(), map_labels.join(" ")),
            ))
        }
        Command::Enumerate { size, integral, commutative, potent, divisible, pointed, count } => {
            if *size == 0 {
                return Err(Error::Format("--size must be positive".into()));
            }
            let flags = ChainFlags {
                integral: *integral,
                commutative: *commutative,
                potent: *potent,
                divisible: *divisible,
                pointed: *pointed,
            };
            if *count {
                let n = count_chains(*size, flags)?;
                return Ok(Outcome::new(0, json!({ "size": size, "count": n }), n.to_string()));
            }
            let chains = enumerate_chains(*size, flags)?;
            let mut text = format!("{} chains of size {size}\n", chains.len());
            for c in &chains {
                text.push_str(&format!("\n{}", c.render_text()));
            }
            let list: Vec<Value> = chains.iter().map(to_value).collect();
            Ok(Outcome::new(0, json!({ "size": size, "count": chains.len(), "chains": list }), text))
        }
        Command::Amalgam(args) => search(args, false),
        Command::OneAmalgam(args) => search(args, true),
        Command::Obstruct { vf, witness } => obstruct(vf, witness.as_deref()),
        Command::Paper { max_size, rotations } => {
            let rots = if rotations.is_empty() {
                default_rotations()
            } else {
                rotations
                    .iter()
                    .map(|r| {
                        let (d, n) = r.split_once(':').unwrap_or((r.as_str(), "2"));
                        let n = n.parse().map_err(|_| Error::Format(format!("bad rotation `{r}`")))?;
                        Ok((d.to_string(), n))
                    })
                    .collect::<rlwb::Result<Vec<_>>>()?
            };
            let r = paper_report(*max_size, &rots)?;
            Ok(Outcome::new(!r.passed() as u8, r.to_json(), r.render_text()))
        }
    }
}

fn construct(what: &Construct) -> rlwb::Result<Outcome> {
    let a = match what {
        Construct::OrdinalSum { lower, upper } => ordinal_sum(&load_algebra(lower)?, &load_algebra(upper)?)?,
        Construct::Gluing { triple, upper } => partial_gluing(&load_triple(triple)?, &load_algebra(upper)?)?,
        Construct::Rotation { algebra, delta, n } => {
            let x = load_algebra(algebra)?;
            let d = Nucleus::parse(&x, delta)?;
            generalized_rotation(&x, &d, *n)?
        }
        Construct::NucleusImage { algebra, delta } => {
            let x = load_algebra(algebra)?;
            let d = Nucleus::parse(&x, delta)?;
            let r = validate_nucleus(&x, &d);
            if !r.passed() {
                return Ok(report_outcome(&format!("nucleus {delta} on {}", x.name()), &r));
            }
            nucleus_image(&x, &d)?.0
        }
    };
    Ok(algebra_outcome(&a))
}

fn search(args: &SearchArgs, one: bool) -> rlwb::Result<Outcome> {
    let vf = load_formation(&args.vf)?;
    let opts = SearchOptions {
        max_size: args.max_size,
        flags: ClassFlags { commutative: args.commutative, integral: args.integral, pointed: args.pointed },
        identify: !args.no_identify,
        budget: args.budget,
    };
    let r = if one { bounded_one_amalgam_search(&vf, &opts)? } else { bounded_amalgam_search(&vf, &opts)? };
    Ok(Outcome::new(!r.found() as u8, r.to_json(), search_text(&vf, &r)))
}

fn search_text(vf: &VFormation, r: &SearchReport) -> String {
    let mut t = String::new();
    for s in &r.sizes {
        let phase = if s.identified { "shared images" } else { "disjoint images" };
        t.push_str(&format!("size {:2} ({phase}): {} placements, {} nodes\n", s.size, s.placements, s.nodes));
    }
    match &r.verdict {
        Verdict::Found { d, h, k, filter } => {
            t.push_str(&format!("FOUND D with {} elements\n{}", d.size(), d.render_text()));
            t.push_str(&format!("h: {}\nk: {}\n", render_map(&vf.b, d, h), render_map(&vf.c, d, k)));
            if let Some(f) = filter {
                let names: Vec<&str> = f.iter().map(|&x| vf.b.label(x)).collect();
                t.push_str(&format!("kernel filter of h: {{{}}}\n", names.join(", ")));
            }
        }
        Verdict::Unsat { bound } => {
            let tried = r.sizes_tried();
            if tried.is_empty() {
                t.push_str(&format!("UNSAT at bound {bound} (no carrier size fits under the bound)\n"));
            } else {
                t.push_str(&format!("UNSAT: no chain of size {}..={bound} completes\n", tried[0]));
            }
        }
    }
    t.push_str(&format!("{} ms", r.wall_ms));
    t
}

fn parse_witness(vf: &VFormation, s: &str) -> rlwb::Result<ObstructionWitness> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if !(5..=6).contains(&parts.len()) {
        return Err(Error::Format("witness is `a,b,c,u1,u2[,left|right]`".into()));
    }
    let side = match parts.get(5).map(|s| s.to_ascii_lowercase()) {
        None => Side::Left,
        Some(s) if s == "left" => Side::Left,
        Some(s) if s == "right" => Side::Right,
        Some(s) => return Err(Error::Format(format!("bad side `{s}`"))),
    };
    Ok(ObstructionWitness {
        a: element(&vf.a, parts[0])?,
        b: element(&vf.b, parts[1])?,
        c: element(&vf.c, parts[2])?,
        u1: element(&vf.a, parts[3])?,
        u2: element(&vf.a, parts[4])?,
        side,
    })
}

fn obstruct(src: &str, witness: Option<&str>) -> rlwb::Result<Outcome> {
    let vf = load_formation(src)?;
    let w = match witness {
        Some(s) => parse_witness(&vf, s)?,
        None => match find_obstruction(&vf)? {
            Some(w) => w,
            None => {
                return Ok(Outcome::new(1, json!({ "witness": null, "verdict": "NONE" }), "no obstruction witness"));
            }
        },
    };
    let labels = json!({
        "a": vf.a.label(w.a), "b": vf.b.label(w.b), "c": vf.c.label(w.c),
        "u1": vf.a.label(w.u1), "u2": vf.a.label(w.u2), "side": w.side,
    });
    let inj: Vec<&str> = injectivity_reduction(&vf).iter().map(|&a| vf.a.label(a)).collect();
    Ok(match check_obstruction(&vf, &w)? {
        ObstructionOutcome::Trace(lines) => Outcome::new(
            0,
            json!({ "witness": w, "labels": labels, "verdict": "CERTIFIED", "trace": lines, "injectivity": inj }),
            format!("witness {labels}\n{}\nCERTIFIED", lines.join("\n")),
        ),
        ObstructionOutcome::Reject { clause, detail } => Outcome::new(
            1,
            json!({ "witness": w, "labels": labels, "verdict": "REJECT", "clause": clause, "detail": detail }),
            format!("REJECT({clause}): {detail}"),
        ),
    })
}
