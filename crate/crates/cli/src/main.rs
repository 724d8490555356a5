mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use output::{scalar_text, Out, Style};
use tftalg::double::double_modular_data;
use tftalg::eqdw::{orbifold_numerology, sector_category, weak_action_from_sequence};
use tftalg::format::{self, FormatError};
use tftalg::frobenius::CobordismWord;
use tftalg::group::{exact_sequence_check, SectionChoice};
use tftalg::hopf::{integral_data, radford_check};
use tftalg::modular::ModularData;
use tftalg::pdual::{involutivity_check, partial_dualize};
use tftalg::scalar::set_max_order;
use tftalg::xmod::{
    modularization_restriction, mueger_center, premodular_data, xmod_is_modular, xmod_simples,
};
use tftalg::Cyclotomic;

#[derive(Parser)]
#[command(
    name = "tftalg",
    version,
    about = "Exact invariants of TFTs, Hopf algebras and crossed modules"
)]
struct Cli {
    /// Output style.
    #[arg(long, value_enum, default_value_t = OutFormat::Pretty, global = true)]
    format: OutFormat,
    /// Add decimal approximations to pretty output (not authoritative).
    #[arg(long, global = true)]
    approx: bool,
    /// Worker threads for internal scans; output does not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Pretty,
    Machine,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a commutative Frobenius algebra on cobordisms.
    Frob {
        #[arg(long = "in")]
        input: PathBuf,
        /// Closed surface of this genus.
        #[arg(long)]
        genus: Option<usize>,
        /// Cobordism word, layers separated by `;` or newlines, e.g. "copants; pants".
        #[arg(long)]
        word: Option<String>,
        #[arg(long, value_enum, value_delimiter = ',')]
        emit: Vec<FrobEmit>,
    },
    /// Modular data of the Drinfeld double of a finite group.
    Double {
        #[arg(long)]
        group: PathBuf,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "s,t")]
        emit: Vec<DoubleEmit>,
    },
    /// Premodular category of a crossed module.
    Xmod {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "simples")]
        emit: Vec<XmodEmit>,
    },
    /// Equivariant Dijkgraaf-Witten data of a short exact sequence.
    Eqdw {
        #[arg(long)]
        sequence: PathBuf,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "sectors")]
        emit: Vec<EqdwEmit>,
        /// Section of the projection: smallest or largest element of each fiber.
        #[arg(long, value_enum, default_value_t = Section::Minimal)]
        section: Section,
    },
    /// Axioms, integrals and the S^4 formula of a Hopf algebra.
    Hopf {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "axioms")]
        emit: Vec<HopfEmit>,
    },
    /// Partial dualization of a Hopf algebra with a projection.
    Pdual {
        #[arg(long)]
        hopf: PathBuf,
        #[arg(long)]
        proj: PathBuf,
        #[arg(long)]
        pairing: PathBuf,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "result")]
        emit: Vec<PdualEmit>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FrobEmit {
    Axioms,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DoubleEmit {
    S,
    T,
    Fusion,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum XmodEmit {
    Simples,
    St,
    Center,
    Modularize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EqdwEmit {
    Sectors,
    Cocycle,
    OrbifoldReport,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Section {
    Minimal,
    Maximal,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum HopfEmit {
    Axioms,
    Integrals,
    Radford,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PdualEmit {
    Result,
    InvolutionReport,
}

enum Failure {
    /// Unreadable or malformed input.
    Input(String),
    /// Valid input on which a computation or check fails.
    Domain(String),
}

/// `Ok(false)` when an emitted check reports a failure.
type Run = Result<bool, Failure>;

fn domain(e: impl std::fmt::Display) -> Failure {
    Failure::Domain(e.to_string())
}

fn load<T>(path: &Path, parse: impl FnOnce(&str) -> Result<T, FormatError>) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    parse(&text).map_err(|e| match e {
        FormatError::Syntax { .. } => Failure::Input(format!("{}: {e}", path.display())),
        FormatError::Invalid(m) => Failure::Domain(format!("{}: {m}", path.display())),
    })
}

/// Keeps the first occurrence of each selector.
fn dedup<T: PartialEq + Copy>(v: &[T]) -> Vec<T> {
    let mut out = Vec::new();
    for &x in v {
        if !out.contains(&x) {
            out.push(x);
        }
    }
    out
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn frob(
    out: &mut Out,
    input: &Path,
    genus: Option<usize>,
    word: Option<&str>,
    emit: &[FrobEmit],
) -> Run {
    if genus.is_none() && word.is_none() && emit.is_empty() {
        return Err(Failure::Input(
            "frob needs --genus, --word or --emit axioms".into(),
        ));
    }
    let word = word
        .map(|w| w.replace(';', "\n").parse::<CobordismWord>())
        .transpose()
        .map_err(|e| Failure::Input(format!("--word: {e}")))?;
    let a = load(input, format::parse_frobenius)?;
    let mut ok = true;
    if emit.contains(&FrobEmit::Axioms) {
        let report = a.validate();
        ok &= report.is_valid();
        out.section("axioms");
        out.raw(&report.to_string());
    }
    if let Some(g) = genus {
        let z = a.closed_surface_invariant(g).map_err(domain)?;
        if out.machine() {
            out.section("genus");
            out.field("genus", g);
            out.scalar("invariant", &z);
        } else {
            out.section("genus");
            out.line(scalar_text(&z));
        }
    }
    if let Some(w) = word {
        let m = a.evaluate(&w).map_err(domain)?;
        out.section("word");
        out.field("inputs", w.input_wires());
        out.field("outputs", w.output_wires());
        out.matrix("Z", &m);
    }
    Ok(ok)
}

fn fusion(out: &mut Out, data: &ModularData) -> Result<(), Failure> {
    let ring = data.verlinde_fusion().map_err(domain)?;
    let r = ring.rank();
    for i in 0..r {
        for j in i..r {
            if out.machine() {
                for k in 0..r {
                    let n = ring.coeff(i, j, k);
                    if n != 0 {
                        out.line(format!("fusion {i} {j} {k} {n}"));
                    }
                }
            } else {
                let terms: Vec<String> = (0..r)
                    .filter_map(|k| match ring.coeff(i, j, k) {
                        0 => None,
                        1 => Some(data.labels[k].clone()),
                        n => Some(format!("{n} {}", data.labels[k])),
                    })
                    .collect();
                out.line(format!(
                    "{} x {} = {}",
                    data.labels[i],
                    data.labels[j],
                    terms.join(" + ")
                ));
            }
        }
    }
    Ok(())
}

fn double(out: &mut Out, group: &Path, emit: &[DoubleEmit]) -> Run {
    let g = load(group, format::parse_group)?;
    let data = double_modular_data(&g).map_err(domain)?;
    if out.machine() {
        out.section("simples");
        out.labels(&data.labels);
    }
    for e in dedup(emit) {
        match e {
            DoubleEmit::S => {
                out.section("s");
                out.matrix("S", &data.s);
            }
            DoubleEmit::T => {
                out.section("t");
                out.vector("T", &data.labels, &data.t);
            }
            DoubleEmit::Fusion => {
                out.section("fusion");
                fusion(out, &data)?;
            }
        }
    }
    Ok(true)
}

fn xmod(out: &mut Out, input: &Path, emit: &[XmodEmit]) -> Run {
    let xm = load(input, format::parse_xmod)?;
    let simples = xmod_simples(&xm).map_err(domain)?;
    let emit = dedup(emit);
    let needs_data = emit
        .iter()
        .any(|e| matches!(e, XmodEmit::St | XmodEmit::Center));
    let data = needs_data.then(|| premodular_data(&xm, &simples));
    let mut ok = true;
    for e in emit {
        match e {
            XmodEmit::Simples => {
                out.section("simples");
                let labels: Vec<String> = simples
                    .simples
                    .iter()
                    .map(|s| simples.label_name(&xm, s))
                    .collect();
                let dims: Vec<Cyclotomic> = simples
                    .simples
                    .iter()
                    .map(|s| Cyclotomic::from_int(s.object.dim() as i64))
                    .collect();
                let twists: Vec<Cyclotomic> = simples
                    .simples
                    .iter()
                    .map(|s| simples.twist(&xm, s))
                    .collect();
                out.field("count", labels.len());
                out.vector("dim", &labels, &dims);
                out.vector("twist", &labels, &twists);
            }
            XmodEmit::St => {
                let data = data.as_ref().expect("computed above");
                out.section("st");
                out.labels(&data.labels);
                out.matrix("S~", &data.s);
                out.vector("T~", &data.labels, &data.t);
            }
            XmodEmit::Center => {
                let data = data.as_ref().expect("computed above");
                let center = mueger_center(&xm, &simples, data).map_err(domain)?;
                let verdict = xmod_is_modular(data);
                out.section("center");
                out.field("modular", yes_no(verdict.modular));
                out.field("boundary bijective", yes_no(xm.boundary.is_bijective()));
                out.field("transparent simples", center.len());
                let labels: Vec<String> = center.iter().map(|&i| data.labels[i].clone()).collect();
                let twists: Vec<Cyclotomic> = center.iter().map(|&i| data.t[i].clone()).collect();
                out.vector("transparent twist", &labels, &twists);
            }
            XmodEmit::Modularize => {
                let m = modularization_restriction(&xm, &simples).map_err(domain)?;
                ok &= m.braided && m.dominant;
                out.section("modularize");
                out.field("braided", yes_no(m.braided));
                out.field("dominant", yes_no(m.dominant));
                for (s, parts) in simples.simples.iter().zip(&m.decompositions) {
                    let terms: Vec<String> = parts
                        .iter()
                        .map(|p| {
                            let name = m.double.label_name(&m.double.labels[p.target]);
                            match p.multiplicity {
                                1 => name,
                                k => format!("{k} {name}"),
                            }
                        })
                        .collect();
                    let name = simples.label_name(&xm, s);
                    if out.machine() {
                        out.line(format!("restrict {name} -> {}", terms.join(" + ")));
                    } else {
                        out.line(format!("{name} -> {}", terms.join(" + ")));
                    }
                }
            }
        }
    }
    Ok(ok)
}

fn eqdw(out: &mut Out, path: &Path, emit: &[EqdwEmit], section: Section) -> Run {
    let seq = load(path, format::parse_sequence)?;
    let choice = match section {
        Section::Minimal => SectionChoice::Minimal,
        Section::Maximal => SectionChoice::Maximal,
    };
    let exact = exact_sequence_check(&seq.incl, &seq.proj, choice).map_err(domain)?;
    let wa = weak_action_from_sequence(&exact).map_err(domain)?;
    let (g1, g2, j) = (wa.g1(), wa.g2(), wa.j());
    let mut ok = true;
    for e in dedup(emit) {
        match e {
            EqdwEmit::Sectors => {
                out.section("sectors");
                for k in 0..j.order() {
                    let cat = sector_category(&wa, k).map_err(domain)?;
                    let labels: Vec<String> =
                        cat.labels.iter().map(|l| cat.label_name(&wa, l)).collect();
                    if out.machine() {
                        out.line(format!(
                            "sector {} simples {} dim_square_sum {}",
                            j.label(k),
                            cat.len(),
                            cat.dim_square_sum()
                        ));
                        for (i, l) in labels.iter().enumerate() {
                            let tw = cat.twists[i]
                                .as_ref()
                                .map_or("none".to_string(), |t| t.to_scalar_text());
                            out.line(format!("simple {l} dim {} twist {tw}", cat.dims[i]));
                        }
                    } else {
                        out.line(format!(
                            "sector {}: {} simples, sum of dims^2 = {}",
                            j.label(k),
                            cat.len(),
                            cat.dim_square_sum()
                        ));
                        let width = labels.iter().map(|l| l.chars().count()).max().unwrap_or(0);
                        for (i, l) in labels.iter().enumerate() {
                            let tw = cat.twists[i].as_ref().map_or("-".to_string(), scalar_text);
                            out.line(format!("  {l:<width$}  dim {}  twist {tw}", cat.dims[i]));
                        }
                    }
                }
            }
            EqdwEmit::Cocycle => {
                out.section("cocycle");
                for a in 0..j.order() {
                    out.field(&format!("section {}", j.label(a)), g2.label(wa.section(a)));
                }
                for a in 0..j.order() {
                    for b in 0..j.order() {
                        out.field(
                            &format!("c({}, {})", j.label(a), j.label(b)),
                            g1.label(wa.c(a, b)),
                        );
                    }
                }
                out.field("trivial", yes_no(wa.cocycle_is_trivial()));
                let law = wa.check_cocycle_law().is_ok();
                ok &= law;
                out.field("composition law", if law { "pass" } else { "FAIL" });
            }
            EqdwEmit::OrbifoldReport => {
                let report = orbifold_numerology(&wa).map_err(domain)?;
                ok &= report.all_passed();
                out.section("orbifold-report");
                for c in &report.checks {
                    out.field(
                        &c.name,
                        format!("{} ({})", if c.passed { "pass" } else { "FAIL" }, c.detail),
                    );
                }
            }
        }
    }
    Ok(ok)
}

fn hopf(out: &mut Out, input: &Path, emit: &[HopfEmit]) -> Run {
    let h = load(input, format::parse_hopf)?;
    let emit = dedup(emit);
    let report = h.validate();
    let mut ok = true;
    if emit.contains(&HopfEmit::Axioms) {
        ok &= report.is_valid();
        out.section("axioms");
        out.raw(&report.to_string());
    }
    let needs_valid = emit.iter().any(|e| *e != HopfEmit::Axioms);
    if needs_valid {
        if let Some(c) = report.first_failure() {
            return Err(Failure::Domain(format!(
                "not a Hopf algebra: {} fails",
                c.name
            )));
        }
    }
    for e in emit {
        match e {
            HopfEmit::Axioms => {}
            HopfEmit::Integrals => {
                let d = integral_data(&h).map_err(domain)?;
                out.section("integrals");
                out.field("left integral space dimension", 1);
                out.field("t", h.format_element(&d.t));
                out.vector("alpha", h.labels(), &d.alpha);
                out.field("a", h.format_element(&d.a));
            }
            HopfEmit::Radford => {
                let r = radford_check(&h).map_err(domain)?;
                ok &= r.passed();
                out.section("radford");
                out.line(r.to_string());
            }
        }
    }
    Ok(ok)
}

fn pdual(out: &mut Out, hopf: &Path, proj: &Path, pairing: &Path, emit: &[PdualEmit]) -> Run {
    let h = load(hopf, format::parse_hopf)?;
    let datum = load(proj, |t| format::parse_projection(t, &h))?;
    let w = load(pairing, format::parse_pairing)?;
    if w.a != datum.a {
        return Err(Failure::Domain(
            "pairing's left algebra differs from the projection target".into(),
        ));
    }
    let mut ok = true;
    for e in dedup(emit) {
        match e {
            PdualEmit::Result => {
                let pd = partial_dualize(&datum, &w).map_err(domain)?;
                out.section("result");
                out.raw(&format::serialize_hopf(&pd.result));
            }
            PdualEmit::InvolutionReport => {
                let rep = involutivity_check(&datum, &w).map_err(domain)?;
                ok &= rep.check.passed;
                out.section("involution-report");
                out.field("dimension", h.dim());
                out.field("reflected pairing antipode power", rep.antipode_power);
                out.line(rep.check.to_string());
                out.matrix("iso", &rep.iso);
            }
        }
    }
    Ok(ok)
}

fn configure(cli: &Cli) -> Result<(), Failure> {
    if let Ok(v) = std::env::var("TFTALG_MAX_ORDER") {
        let n: u32 = v.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
            Failure::Input(format!(
                "TFTALG_MAX_ORDER must be a positive integer, got {v:?}"
            ))
        })?;
        set_max_order(n);
    }
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| Failure::Input(format!("--threads: {e}")))?;
    }
    Ok(())
}

fn run(cli: &Cli) -> (Out, Result<bool, Failure>) {
    let style = match cli.format {
        OutFormat::Pretty => Style::Pretty,
        OutFormat::Machine => Style::Machine,
    };
    let name = match &cli.command {
        Command::Frob { .. } => "frob",
        Command::Double { .. } => "double",
        Command::Xmod { .. } => "xmod",
        Command::Eqdw { .. } => "eqdw",
        Command::Hopf { .. } => "hopf",
        Command::Pdual { .. } => "pdual",
    };
    let mut out = Out::new(style, cli.approx, name);
    if let Err(e) = configure(cli) {
        return (out, Err(e));
    }
    let res = match &cli.command {
        Command::Frob {
            input,
            genus,
            word,
            emit,
        } => frob(&mut out, input, *genus, word.as_deref(), emit),
        Command::Double { group, emit } => double(&mut out, group, emit),
        Command::Xmod { input, emit } => xmod(&mut out, input, emit),
        Command::Eqdw {
            sequence,
            emit,
            section,
        } => eqdw(&mut out, sequence, emit, *section),
        Command::Hopf { input, emit } => hopf(&mut out, input, emit),
        Command::Pdual {
            hopf,
            proj,
            pairing,
            emit,
        } => pdual(&mut out, hopf, proj, pairing, emit),
    };
    (out, res)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (out, res) = run(&cli);
    match res {
        Ok(ok) => {
            print!("{}", out.finish());
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Domain(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
