//! Command-line front end: instance files, builtin addressing, report rendering and the
//! exit-code contract (0 pass, 1 verification failure, 2 usage or input error).

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use crate::convolution::{conv_inverse, ConvMap};
use crate::error::{Error, Result};
use crate::exactlin::{Field, Vector};
use crate::globalize::{
    build_globalization, cocommutative_closure_check, extract_wtilde, klein_wtilde_table, verify_klein_wtilde_equations,
    GlobalizationResult,
};
use crate::groups::{klein_nontrivial_cocycle, FinGroup, GroupCocycle, SubgroupRef};
use crate::partial::{
    brute_force_dual_group_algebra, brute_force_group_algebra, check_measuring, check_partial_action,
    classify_dual_group_algebra, classify_group_algebra, exhaustive_prime_field, sweedler_completeness,
    BaseFieldFunctional,
};
use crate::report::{Check, Report};
use crate::twisted::{
    build_crossed_product, check_twisted, klein_family, underline_algebra_iso_dual, underline_algebra_iso_group,
    TwistedPartialActionData,
};

pub mod instance;
pub mod resolve;

pub use instance::{parse_instance, parse_map_file, print_instance, InstanceFile};
pub use resolve::Resolver;

use instance::{AlgebraBody, Body, CocycleBody, MeasuringBody, Section};
use resolve::{lines_from_map, lines_from_measuring, map_from_lines};

#[derive(Debug, Parser)]
#[command(name = "hopf-partial", version, about = "Exact checks for twisted partial actions of finite-dimensional Hopf algebras")]
pub struct Cli {
    /// Scalar field: `Q` or `Fp:<p>`.
    #[arg(long, global = true, env = "HOPF_PARTIAL_FIELD", default_value = "Q")]
    pub field: Field,
    #[arg(long, global = true, value_enum, default_value_t = Emit::Text)]
    pub emit: Emit,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Text,
    Json,
    /// Multiplication table (crossed-product only).
    Table,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Axiom sweeps on structure constants.
    Verify {
        #[command(subcommand)]
        what: VerifyWhat,
    },
    /// Measuring or twisted partial action suites on an instance file.
    Check {
        #[command(subcommand)]
        what: CheckWhat,
    },
    /// Classification of partial measurings on the base field.
    Classify {
        #[command(subcommand)]
        what: ClassifyWhat,
    },
    /// The Klein family of symmetric partial cocycles of (κK4)* on κ over L = ⟨a⟩.
    Klein {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        /// `builtin` for the standard w̃ table, or a map file.
        #[arg(long)]
        globalize: Option<String>,
    },
    /// The partial crossed product of a cocycle section.
    CrossedProduct {
        file: PathBuf,
        #[arg(long)]
        section: Option<String>,
    },
    /// Isomorphisms of underline algebras with twisted group rings.
    Iso {
        kind: IsoKind,
        #[arg(long)]
        group: String,
        /// Generators of L, comma separated element names.
        #[arg(long = "L", allow_hyphen_values = true)]
        l: String,
        /// Klein family parameter (dual, K4, L = ⟨a⟩ only).
        #[arg(long, allow_hyphen_values = true)]
        x: Option<String>,
        /// `trivial` or `klein` (group only, L = K4).
        #[arg(long, default_value = "trivial")]
        cocycle: String,
    },
    /// Builds and checks the globalization for a certified w̃.
    Globalize {
        file: PathBuf,
        #[arg(long)]
        wtil: Option<PathBuf>,
        #[arg(long)]
        section: Option<String>,
        /// Writes a globalization file readable by `extract-wtil`.
        #[arg(long)]
        save: Option<PathBuf>,
    },
    /// Recovers w̃ from a global twisted action on B restricting to the partial data.
    ExtractWtil {
        file: PathBuf,
        #[arg(long)]
        section: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum VerifyWhat {
    /// A bialgebra file or builtin address.
    Hopf { target: String },
}

#[derive(Debug, Subcommand)]
pub enum CheckWhat {
    Measuring {
        file: PathBuf,
        #[arg(long)]
        section: Option<String>,
    },
    Tpa {
        file: PathBuf,
        #[arg(long)]
        section: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum ClassifyWhat {
    /// Partial measurings on κ.
    Measurings {
        #[arg(long)]
        hopf: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum IsoKind {
    Dual,
    Group,
}

/// Exit code and rendered output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub output: String,
}

pub fn run_command<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return Outcome {
                code,
                output: e.render().to_string(),
            };
        }
    };
    let emit = cli.emit;
    match run(&cli) {
        Ok(out) => out,
        Err(e) => error_outcome(e, emit),
    }
}

fn error_outcome(e: Error, emit: Emit) -> Outcome {
    match e {
        Error::Verification(r) => report_outcome(&r, emit),
        Error::Invalid(_) | Error::NotInvertible(_) | Error::NotNormal | Error::Characteristic(_) => {
            let mut r = Report::new("error");
            r.push(Check::fail("error", None, e.to_string()));
            report_outcome(&r, emit)
        }
        other => {
            let output = match emit {
                Emit::Json => format!("{}\n", serde_json::json!({ "error": other.to_string() })),
                _ => format!("error: {other}\n"),
            };
            Outcome { code: 2, output }
        }
    }
}

fn render(r: &Report, emit: Emit) -> String {
    match emit {
        Emit::Json => format!("{}\n", r.to_json()),
        _ => r.render_text(),
    }
}

fn report_outcome(r: &Report, emit: Emit) -> Outcome {
    Outcome {
        code: if r.passed() { 0 } else { 1 },
        output: render(r, emit),
    }
}

/// Adds the checks of a fallible step; a verification error contributes its report.
fn absorb_result<T>(r: &mut Report, prefix: &str, step: Result<T>, report_of: impl FnOnce(&T) -> Report) -> Result<Option<T>> {
    match step {
        Ok(v) => {
            r.absorb(prefix, report_of(&v));
            Ok(Some(v))
        }
        Err(Error::Verification(inner)) => {
            r.absorb(prefix, *inner);
            Ok(None)
        }
        Err(e @ (Error::Invalid(_) | Error::NotInvertible(_))) => {
            r.push(Check::fail(format!("{prefix}.error"), None, e.to_string()));
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

fn section_name(file: &InstanceFile, kind: &str, wanted: &Option<String>, pred: impl Fn(&Section) -> bool) -> Result<String> {
    match wanted {
        Some(s) => Ok(s.clone()),
        None => file
            .sections
            .iter()
            .find(|s| s.body.kind() == kind && pred(s))
            .map(|s| s.name.clone())
            .ok_or_else(|| Error::Invalid(format!("no {kind} section"))),
    }
}

fn is_partial_cocycle(s: &Section) -> bool {
    matches!(&s.body, Body::Cocycle(c) if c.restricts.is_none())
}

fn run(cli: &Cli) -> Result<Outcome> {
    let field = cli.field;
    let emit = cli.emit;
    let empty = InstanceFile { sections: Vec::new() };
    match &cli.command {
        Command::Verify {
            what: VerifyWhat::Hopf { target },
        } => {
            let path = Path::new(target);
            let file = if path.exists() { InstanceFile::read(path, field)? } else { empty.clone() };
            let name = match file.first("bialgebra") {
                Some(s) => s.name.clone(),
                None if path.exists() => return Err(Error::Invalid("no bialgebra section".into())),
                None => target.clone(),
            };
            let data = Resolver::new(&file, field).bialgebra_data(&name)?;
            Ok(report_outcome(&data.verify()?, emit))
        }
        Command::Check { what } => {
            let (file, section, tpa) = match what {
                CheckWhat::Measuring { file, section } => (file, section, false),
                CheckWhat::Tpa { file, section } => (file, section, true),
            };
            let inst = InstanceFile::read(file, field)?;
            let res = Resolver::new(&inst, field);
            let r = if tpa {
                let name = section_name(&inst, "cocycle", section, is_partial_cocycle)?;
                let mut r = check_twisted(&res.cocycle(&name)?);
                r.title = format!("twisted partial action {name}");
                r
            } else {
                let name = section_name(&inst, "measuring", section, |_| true)?;
                let md = res.measuring(&name)?;
                let mut r = Report::new(format!("partial measuring {name}"));
                r.absorb("", check_measuring(&md));
                r.absorb("", check_partial_action(&md));
                r
            };
            Ok(report_outcome(&r, emit))
        }
        Command::Classify {
            what: ClassifyWhat::Measurings { hopf },
        } => Ok(report_outcome(&classify(&Resolver::new(&empty, field), hopf)?, emit)),
        Command::Klein { x, globalize } => {
            let x = field.parse(x)?;
            let mut r = Report::new(format!("Klein family at x = {x}"));
            let Some((data, point)) = absorb_result(&mut r, "tpa", klein_family(&x), |(d, _)| check_twisted(d))? else {
                return Ok(report_outcome(&r, emit));
            };
            r.push(Check::info("point", format!("x = {}, y = {}", point.x, point.y)).with_value("y", &point.y));
            if point.on_curve() {
                r.push(Check::pass("curve"));
            } else {
                r.push(Check::fail("curve", None, format!("32xy − 6(x+y) + 1 = {}", point.residual())));
            }
            if let Some(source) = globalize {
                let (w, y) = if source == "builtin" {
                    klein_wtilde_table(field)?
                } else {
                    let lines = parse_map_file(&std::fs::read_to_string(source)?, field)?;
                    let w = map_from_lines(data.hopf().pair_coalgebra(), data.target(), &lines)?;
                    // without an inverse the Y equations are read with Y = X
                    let y = match conv_inverse(&w) {
                        Some(y) => y,
                        None => {
                            r.push(Check::fail("wtilde.invertible", None, "no convolution inverse"));
                            w.clone()
                        }
                    };
                    (w, y)
                };
                r.absorb("equations", verify_klein_wtilde_equations(&data, &w, &y)?);
                globalize_into(&mut r, &data, &w)?;
            }
            Ok(report_outcome(&r, emit))
        }
        Command::CrossedProduct { file, section } => {
            let inst = InstanceFile::read(file, field)?;
            let name = section_name(&inst, "cocycle", section, is_partial_cocycle)?;
            let data = Resolver::new(&inst, field).cocycle(&name)?;
            let cp = build_crossed_product(&data)?;
            let output = match emit {
                Emit::Table => format!("{}{}", cp.render_table(), cp.report.render_text()),
                _ => render(&cp.report, emit),
            };
            Ok(Outcome {
                code: if cp.report.passed() { 0 } else { 1 },
                output,
            })
        }
        Command::Iso { kind, group, l, x, cocycle } => {
            let res = Resolver::new(&empty, field);
            let g = if Path::new(group).exists() {
                let inst = InstanceFile::read(Path::new(group), field)?;
                let name = section_name(&inst, "group", &None, |_| true)?;
                Resolver::new(&inst, field).group(&name)?
            } else {
                res.group(group)?
            };
            let sub = subgroup(&g, l)?;
            let cert = match kind {
                IsoKind::Dual => {
                    let data = match x {
                        Some(x) => {
                            let a = g.index_of("a");
                            if g.name() != "K4" || a.map(|a| SubgroupRef::generated(g.clone(), &[a])) != Some(sub.clone()) {
                                return Err(Error::Invalid("--x needs --group K4 --L a".into()));
                            }
                            klein_family(&field.parse(x)?)?.0
                        }
                        None => crate::twisted::dual_subgroup_data(&sub, field)?,
                    };
                    underline_algebra_iso_dual(&data, &sub)?
                }
                IsoKind::Group => {
                    let v = match cocycle.as_str() {
                        "trivial" => GroupCocycle::trivial(Arc::new(sub.as_group()), field),
                        "klein" if g.name() == "K4" && sub.order() == 4 => klein_nontrivial_cocycle(field)?,
                        "klein" => return Err(Error::Invalid("the klein cocycle needs --group K4 --L a,b".into())),
                        other => return Err(Error::UnknownBuiltin(other.to_string())),
                    };
                    underline_algebra_iso_group(&g, &sub, &v)?
                }
            };
            let mut r = cert.report.clone();
            for (label, image) in &cert.images {
                r.push(Check::info("image", format!("{label} ↦ {image}")));
            }
            Ok(report_outcome(&r, emit))
        }
        Command::Globalize { file, wtil, section, save } => {
            let inst = InstanceFile::read(file, field)?;
            let res = Resolver::new(&inst, field);
            let name = section_name(&inst, "cocycle", section, is_partial_cocycle)?;
            let data = res.cocycle(&name)?;
            let w = match wtil {
                Some(path) => {
                    let text = std::fs::read_to_string(path)?;
                    let lines = if text.lines().any(|l| l.trim_start().starts_with('[')) {
                        let wf = parse_instance(&text, field)?;
                        match wf.first("wtilde").map(|s| &s.body) {
                            Some(Body::Wtilde(w)) => w.map.clone(),
                            _ => return Err(Error::Invalid("no wtilde section in the w̃ file".into())),
                        }
                    } else {
                        parse_map_file(&text, field)?
                    };
                    map_from_lines(data.hopf().pair_coalgebra(), data.target(), &lines)?
                }
                None => {
                    let s = inst.first("wtilde").ok_or_else(|| Error::Invalid("no w̃ given: use --wtil".into()))?;
                    res.wtilde(&s.name)?.1
                }
            };
            let mut r = Report::new(format!("globalization of {name}"));
            let built = globalize_into(&mut r, &data, &w)?;
            if let (Some(path), Some(g)) = (save, built) {
                std::fs::write(path, print_instance(&globalization_file(&inst, &name, &g)?))?;
            }
            Ok(report_outcome(&r, emit))
        }
        Command::ExtractWtil { file, section } => {
            let inst = InstanceFile::read(file, field)?;
            let name = section_name(&inst, "cocycle", section, |s| !is_partial_cocycle(s))?;
            let gi = Resolver::new(&inst, field).global(&name)?;
            let mut r = Report::new(format!("w̃ extracted from {name}"));
            if let Some(wt) = absorb_result(&mut r, "", extract_wtilde(&gi.global, &gi.phi, &gi.partial), |w| w.report.clone())? {
                for (label, v) in lines_from_map(&wt.map) {
                    r.push(Check::info("wtilde", format!("{label} -> {v}")));
                }
            }
            Ok(report_outcome(&r, emit))
        }
    }
}

/// Builds the globalization, then runs the closure checks for cocommutative `H` and the
/// extraction round trip.
fn globalize_into(r: &mut Report, data: &TwistedPartialActionData, w: &ConvMap) -> Result<Option<GlobalizationResult>> {
    let Some(g) = absorb_result(r, "globalization", build_globalization(data, w), |g| g.report.clone())? else {
        return Ok(None);
    };
    if g.hopf().is_cocommutative() && g.hopf().antipode.is_some() {
        r.absorb("closure", cocommutative_closure_check(&g)?);
    }
    match extract_wtilde(&g.global, &g.phi_in_b, data) {
        Ok(back) if &back.map == w => r.push(Check::pass("extract.round_trip")),
        Ok(_) => r.push(Check::fail("extract.round_trip", None, "extracted w̃ differs")),
        Err(e) => r.push(Check::fail("extract.round_trip", None, e.to_string())),
    }
    Ok(Some(g))
}

fn subgroup(g: &Arc<FinGroup>, gens: &str) -> Result<SubgroupRef> {
    let idx = gens
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| g.index_of(s).ok_or_else(|| Error::Invalid(format!("`{s}` is not an element of {}", g.name()))))
        .collect::<Result<Vec<_>>>()?;
    Ok(SubgroupRef::generated(g.clone(), &idx))
}

fn classify(res: &Resolver, address: &str) -> Result<Report> {
    let field = res.field;
    let mut r = Report::new(format!("partial measurings of {address} on the base field"));
    if address == "sweedler" {
        let samples: Vec<_> = [(0, 1), (1, 1), (-2, 1), (7, 3)]
            .iter()
            .map(|&(n, d)| field.ratio(n, d))
            .collect::<Result<_>>()?;
        r.absorb("", sweedler_completeness(field, &samples)?);
        return Ok(r);
    }
    let (dual, gname) = match address.split_once(':') {
        Some(("groupalg", g)) => (false, g),
        Some(("dualgroupalg", g)) => (true, g),
        _ => return Err(Error::UnknownBuiltin(address.to_string())),
    };
    let g = res.group(gname)?;
    let found: Vec<BaseFieldFunctional> = if dual {
        classify_dual_group_algebra(&g, field)?
    } else {
        classify_group_algebra(&g, field)?
    };
    for (i, f) in found.iter().enumerate() {
        r.push(Check::info(format!("lambda.{i}"), f.lambda.to_string()));
    }
    r.push(Check::info("count", found.len().to_string()).with_value("count", found.len()));
    let brute: Vec<Vector> = match (field, dual) {
        (Field::Prime(_), _) => exhaustive_prime_field(&found.first().map(|f| f.hopf.clone()).ok_or_else(|| Error::Invalid("nothing found".into()))?)?,
        (Field::Rationals, true) => brute_force_dual_group_algebra(&g, field),
        (Field::Rationals, false) => brute_force_group_algebra(&g, field),
    };
    let a: BTreeSet<String> = found.iter().map(|f| f.lambda.to_string()).collect();
    let b: BTreeSet<String> = brute.iter().map(Vector::to_string).collect();
    if a == b {
        r.push(Check::pass("completeness").with_value("candidates_found", b.len()));
    } else {
        let missing: Vec<_> = b.difference(&a).cloned().collect();
        r.push(Check::fail("completeness", Some(missing), "brute force finds functionals outside the classification"));
    }
    Ok(r)
}

/// The input file plus `B`, the action on `B` and the cocycle `u` with `φ`.
fn globalization_file(inst: &InstanceFile, cocycle: &str, g: &GlobalizationResult) -> Result<InstanceFile> {
    let Some(Section { body: Body::Cocycle(c), .. }) = inst.get(cocycle) else {
        return Err(Error::DanglingReference(cocycle.to_string()));
    };
    let Some(Section { body: Body::Measuring(m), .. }) = inst.get(&c.measuring) else {
        return Err(Error::DanglingReference(c.measuring.clone()));
    };
    let fresh = |base: &str| {
        let mut name = base.to_string();
        while inst.get(&name).is_some() {
            name.push('_');
        }
        name
    };
    let (b_name, mb_name, u_name) = (fresh("B"), fresh("MB"), fresh("U"));
    let md = &g.global.measuring;
    let b = &md.target;
    let mut out = inst.clone();
    out.sections.push(Section {
        name: b_name.clone(),
        body: Body::Algebra(AlgebraBody::Explicit {
            labels: b.space.labels().to_vec(),
            mult: b.mult.table.clone(),
            unit: b.unit.clone(),
        }),
    });
    out.sections.push(Section {
        name: mb_name.clone(),
        body: Body::Measuring(MeasuringBody {
            hopf: m.hopf.clone(),
            algebra: b_name,
            action: lines_from_measuring(md),
        }),
    });
    let a = g.data.target();
    out.sections.push(Section {
        name: u_name,
        body: Body::Cocycle(CocycleBody {
            measuring: mb_name,
            omega: lines_from_map(&g.global.u),
            omega_prime: Some(lines_from_map(&g.global.u_inv)),
            restricts: Some(cocycle.to_string()),
            phi: Some(
                g.phi_in_b
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(i, v)| (a.label(i).to_string(), v.clone()))
                    .collect(),
            ),
        }),
    });
    Ok(out)
}
