//! Line-oriented instance files.
//!
//! A file is a sequence of sections `[kind name]` with kind one of `group`, `bialgebra`,
//! `algebra`, `measuring`, `cocycle`, `wtilde`. Lines starting with `#` are comments.
//! Sections refer to each other by name; builtin objects are addressed by strings such as
//! `groupalg:K4`, `dualgroupalg:K4`, `sweedler` or `base`.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::exactlin::{Field, Scalar, Vector};
use crate::hopf::BialgebraData;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceFile {
    pub sections: Vec<Section>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section {
    pub name: String,
    pub body: Body,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Body {
    Group(GroupBody),
    Bialgebra(BialgebraBody),
    Algebra(AlgebraBody),
    Measuring(MeasuringBody),
    Cocycle(CocycleBody),
    Wtilde(WtildeBody),
}

impl Body {
    pub fn kind(&self) -> &'static str {
        match self {
            Body::Group(_) => "group",
            Body::Bialgebra(_) => "bialgebra",
            Body::Algebra(_) => "algebra",
            Body::Measuring(_) => "measuring",
            Body::Cocycle(_) => "cocycle",
            Body::Wtilde(_) => "wtilde",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupBody {
    Builtin(String),
    /// Header `group <name> <order>`, optional element names, Cayley rows of indices.
    Table {
        name: String,
        elements: Option<Vec<String>>,
        cayley: Vec<Vec<usize>>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BialgebraBody {
    Builtin(String),
    Explicit(BialgebraData),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraBody {
    Builtin(String),
    Explicit { labels: Vec<String>, mult: Vec<Vector>, unit: Vector },
}

/// `(label, coordinates)` lines of a map out of a labelled basis; omitted labels are zero.
pub type MapLines = Vec<(String, Vector)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeasuringBody {
    pub hopf: String,
    pub algebra: String,
    /// `h ⊗ a -> h·a`.
    pub action: Vec<(String, String, Vector)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleBody {
    pub measuring: String,
    pub omega: MapLines,
    pub omega_prime: Option<MapLines>,
    /// For a global twisted action on `B`: the partial data on `A` it restricts to,
    /// with `phi` the images of the basis of `A` in `B`.
    pub restricts: Option<String>,
    pub phi: Option<MapLines>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WtildeBody {
    pub cocycle: String,
    pub map: MapLines,
}

impl InstanceFile {
    pub fn get(&self, name: &str) -> Option<&Section> {
        self.sections.iter().find(|s| s.name == name)
    }

    pub fn first(&self, kind: &str) -> Option<&Section> {
        self.sections.iter().find(|s| s.body.kind() == kind)
    }

    pub fn read(path: &std::path::Path, field: Field) -> Result<InstanceFile> {
        let text = std::fs::read_to_string(path)?;
        parse_instance(&text, field)
    }
}

fn perr(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn scalar(field: Field, line: usize, text: &str) -> Result<Scalar> {
    field.parse(text).map_err(|e| perr(line, format!("`{}`: {e}", text.trim())))
}

/// `(a, b, …)`.
pub fn parse_vector(field: Field, line: usize, text: &str) -> Result<Vector> {
    let inner = text
        .trim()
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| perr(line, format!("expected a coordinate vector `(…)`, found `{}`", text.trim())))?;
    if inner.trim().is_empty() {
        return Ok(Vector::from_vec(Vec::new()));
    }
    inner.split(',').map(|t| scalar(field, line, t)).collect::<Result<Vec<_>>>().map(Vector::from_vec)
}

fn parse_index(line: usize, text: &str, dim: usize) -> Result<usize> {
    let i: usize = text.trim().parse().map_err(|_| perr(line, format!("bad index `{}`", text.trim())))?;
    if i >= dim {
        return Err(perr(line, format!("index {i} out of range for dimension {dim}")));
    }
    Ok(i)
}

/// `c*k + c*k …` or `0`, as a vector of length `dim`.
fn parse_terms(field: Field, line: usize, text: &str, dim: usize) -> Result<Vector> {
    let mut out = Vector::zeros(field, dim);
    if text.trim() == "0" {
        return Ok(out);
    }
    for term in text.split(" + ") {
        let (c, k) = term
            .rsplit_once('*')
            .ok_or_else(|| perr(line, format!("expected `coeff*index`, found `{}`", term.trim())))?;
        let k = parse_index(line, k, dim)?;
        out[k] += &scalar(field, line, c)?;
    }
    Ok(out)
}

/// `c*(j,k) + …` or `0`.
fn parse_pair_terms(field: Field, line: usize, text: &str, dim: usize) -> Result<Vec<(usize, usize, Scalar)>> {
    if text.trim() == "0" {
        return Ok(Vec::new());
    }
    text.split(" + ")
        .map(|term| {
            let (c, rest) = term
                .split_once("*(")
                .ok_or_else(|| perr(line, format!("expected `coeff*(j,k)`, found `{}`", term.trim())))?;
            let (j, k) = rest
                .trim()
                .strip_suffix(')')
                .and_then(|r| r.split_once(','))
                .ok_or_else(|| perr(line, format!("expected `(j,k)` in `{}`", term.trim())))?;
            Ok((parse_index(line, j, dim)?, parse_index(line, k, dim)?, scalar(field, line, c)?))
        })
        .collect()
}

fn map_line(field: Field, line: usize, text: &str) -> Result<(String, Vector)> {
    let (label, v) = text
        .split_once(" -> ")
        .ok_or_else(|| perr(line, format!("expected `label -> (…)`, found `{text}`")))?;
    Ok((label.trim().to_string(), parse_vector(field, line, v)?))
}

type Lines<'a> = Vec<(usize, &'a str)>;

/// Parses an instance file; literals are read in `field`.
pub fn parse_instance(text: &str, field: Field) -> Result<InstanceFile> {
    let mut raw: Vec<(usize, String, String, Lines)> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let n = i + 1;
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        if let Some(header) = t.strip_prefix('[') {
            let header = header.strip_suffix(']').ok_or_else(|| perr(n, "unterminated section header"))?;
            let mut parts = header.split_whitespace();
            let (Some(kind), Some(name), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(perr(n, "section header must be `[kind name]`"));
            };
            if raw.iter().any(|(_, _, other, _)| other == name) {
                return Err(perr(n, format!("duplicate section name `{name}`")));
            }
            raw.push((n, kind.to_string(), name.to_string(), Vec::new()));
            continue;
        }
        match raw.last_mut() {
            Some((_, _, _, lines)) => lines.push((n, t)),
            None => return Err(perr(n, "content before the first section header")),
        }
    }
    let sections = raw
        .into_iter()
        .map(|(n, kind, name, lines)| {
            let body = match kind.as_str() {
                "group" => Body::Group(parse_group(&lines, n)?),
                "bialgebra" => Body::Bialgebra(parse_bialgebra(field, &name, &lines, n)?),
                "algebra" => Body::Algebra(parse_algebra(field, &lines, n)?),
                "measuring" => Body::Measuring(parse_measuring(field, &lines, n)?),
                "cocycle" => Body::Cocycle(parse_cocycle(field, &lines, n)?),
                "wtilde" => Body::Wtilde(parse_wtilde(field, &lines, n)?),
                other => return Err(perr(n, format!("unknown section kind `{other}`"))),
            };
            Ok(Section { name, body })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(InstanceFile { sections })
}

/// `(keyword, rest)` of a line.
fn keyword(t: &str) -> (&str, &str) {
    match t.split_once(char::is_whitespace) {
        Some((k, rest)) => (k, rest.trim()),
        None => (t, ""),
    }
}

fn single(lines: &Lines, key: &str) -> Result<Option<String>> {
    let mut found = None;
    for &(n, t) in lines {
        let (k, rest) = keyword(t);
        if k == key {
            if found.is_some() {
                return Err(perr(n, format!("`{key}` given twice")));
            }
            if rest.is_empty() {
                return Err(perr(n, format!("`{key}` needs a value")));
            }
            found = Some(rest.to_string());
        }
    }
    Ok(found)
}

fn required(lines: &Lines, header: usize, key: &str) -> Result<String> {
    single(lines, key)?.ok_or_else(|| perr(header, format!("missing `{key}`")))
}

/// Splits the lines after each block keyword in `blocks` into that block; other lines must be
/// keywords from `keys`.
fn blocks<'a>(lines: &Lines<'a>, keys: &[&str], blocks: &[&'a str]) -> Result<Vec<(&'a str, Lines<'a>)>> {
    let mut out: Vec<(&str, Lines)> = Vec::new();
    let mut current: Option<usize> = None;
    for &(n, t) in lines {
        let (k, rest) = keyword(t);
        if let Some(b) = blocks.iter().find(|b| **b == k && rest.is_empty()) {
            if out.iter().any(|(name, _)| name == b) {
                return Err(perr(n, format!("block `{b}` given twice")));
            }
            out.push((b, Vec::new()));
            current = Some(out.len() - 1);
        } else if keys.contains(&k) {
            current = None;
        } else {
            match current {
                Some(i) => out[i].1.push((n, t)),
                None => return Err(perr(n, format!("unexpected line `{t}`"))),
            }
        }
    }
    Ok(out)
}

fn block<'a, 'b>(bs: &'b [(&str, Lines<'a>)], name: &str) -> Option<&'b Lines<'a>> {
    bs.iter().find(|(b, _)| *b == name).map(|(_, l)| l)
}

fn parse_group(lines: &Lines, header: usize) -> Result<GroupBody> {
    if let Some(b) = single(lines, "builtin")? {
        if lines.len() > 1 {
            return Err(perr(lines[1].0, "a builtin group takes no other lines"));
        }
        return Ok(GroupBody::Builtin(b));
    }
    let mut it = lines.iter();
    let &(n, head) = it.next().ok_or_else(|| perr(header, "empty group section"))?;
    let mut parts = head.split_whitespace();
    let (Some("group"), Some(name), Some(order), None) = (parts.next(), parts.next(), parts.next(), parts.next()) else {
        return Err(perr(n, "expected `group <name> <order>`"));
    };
    let order: usize = order.parse().map_err(|_| perr(n, format!("bad order `{order}`")))?;
    let mut elements = None;
    let mut cayley = Vec::new();
    for &(n, t) in it {
        let (k, rest) = keyword(t);
        if k == "elements" {
            let names: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
            if names.len() != order {
                return Err(perr(n, format!("{} element names for order {order}", names.len())));
            }
            elements = Some(names);
            continue;
        }
        let row = t.split_whitespace().map(|x| parse_index(n, x, order)).collect::<Result<Vec<_>>>()?;
        if row.len() != order {
            return Err(perr(n, format!("Cayley row has {} entries, expected {order}", row.len())));
        }
        cayley.push(row);
    }
    if cayley.len() != order {
        return Err(perr(header, format!("{} Cayley rows, expected {order}", cayley.len())));
    }
    Ok(GroupBody::Table {
        name: name.to_string(),
        elements,
        cayley,
    })
}

/// `dim`, `labels` and the `mult` block shared by algebras and bialgebras.
fn parse_structure(field: Field, lines: &Lines, header: usize, bs: &[(&str, Lines)]) -> Result<(Vec<String>, Vec<Vector>, Vector)> {
    let dim_text = required(lines, header, "dim")?;
    let dim: usize = dim_text.parse().map_err(|_| perr(header, format!("bad dimension `{dim_text}`")))?;
    let labels: Vec<String> = required(lines, header, "labels")?.split_whitespace().map(str::to_string).collect();
    if labels.len() != dim {
        return Err(perr(header, format!("{} labels for dimension {dim}", labels.len())));
    }
    let mut mult = vec![Vector::zeros(field, dim); dim * dim];
    for &(n, t) in block(bs, "mult").ok_or_else(|| perr(header, "missing `mult` block"))? {
        let (lhs, rhs) = t.split_once(" -> ").ok_or_else(|| perr(n, "expected `i j -> terms`"))?;
        let ij: Vec<&str> = lhs.split_whitespace().collect();
        let [i, j] = ij[..] else {
            return Err(perr(n, "expected two indices before `->`"));
        };
        let (i, j) = (parse_index(n, i, dim)?, parse_index(n, j, dim)?);
        mult[i * dim + j] = parse_terms(field, n, rhs, dim)?;
    }
    let unit_line = lines.iter().find(|(_, t)| keyword(t).0 == "unit").ok_or_else(|| perr(header, "missing `unit`"))?;
    let unit = parse_vector(field, unit_line.0, keyword(unit_line.1).1)?;
    if unit.len() != dim {
        return Err(perr(unit_line.0, format!("unit has {} coordinates, expected {dim}", unit.len())));
    }
    Ok((labels, mult, unit))
}

fn parse_bialgebra(field: Field, name: &str, lines: &Lines, header: usize) -> Result<BialgebraBody> {
    if let Some(b) = single(lines, "builtin")? {
        return Ok(BialgebraBody::Builtin(b));
    }
    let keys = ["dim", "labels", "counit", "unit"];
    let bs = blocks(lines, &keys, &["mult", "comult", "antipode"])?;
    let (labels, mult, unit) = parse_structure(field, lines, header, &bs)?;
    let dim = labels.len();
    let mut comult = vec![None; dim];
    for &(n, t) in block(&bs, "comult").ok_or_else(|| perr(header, "missing `comult` block"))? {
        let (i, rhs) = t.split_once(" -> ").ok_or_else(|| perr(n, "expected `i -> terms`"))?;
        let i = parse_index(n, i, dim)?;
        if comult[i].is_some() {
            return Err(perr(n, format!("comultiplication of {i} given twice")));
        }
        comult[i] = Some(parse_pair_terms(field, n, rhs, dim)?);
    }
    let comult = comult
        .into_iter()
        .enumerate()
        .map(|(i, c)| c.ok_or_else(|| perr(header, format!("missing comultiplication of {i}"))))
        .collect::<Result<Vec<_>>>()?;
    let counit_line = required(lines, header, "counit")?;
    let counit_at = lines.iter().find(|(_, t)| keyword(t).0 == "counit").map_or(header, |l| l.0);
    let counit = parse_vector(field, counit_at, &counit_line)?;
    if counit.len() != dim {
        return Err(perr(counit_at, format!("counit has {} coordinates, expected {dim}", counit.len())));
    }
    let antipode = match block(&bs, "antipode") {
        None => None,
        Some(rows) => {
            if rows.len() != dim {
                return Err(perr(header, format!("antipode has {} rows, expected {dim}", rows.len())));
            }
            let rows = rows.iter().map(|&(n, t)| parse_vector(field, n, t)).collect::<Result<Vec<_>>>()?;
            Some(rows)
        }
    };
    Ok(BialgebraBody::Explicit(BialgebraData {
        name: name.to_string(),
        field,
        labels,
        mult,
        unit,
        comult,
        counit,
        antipode,
    }))
}

fn parse_algebra(field: Field, lines: &Lines, header: usize) -> Result<AlgebraBody> {
    if let Some(b) = single(lines, "builtin")? {
        return Ok(AlgebraBody::Builtin(b));
    }
    let bs = blocks(lines, &["dim", "labels", "unit"], &["mult"])?;
    let (labels, mult, unit) = parse_structure(field, lines, header, &bs)?;
    Ok(AlgebraBody::Explicit { labels, mult, unit })
}

fn parse_map_block(field: Field, lines: Option<&Lines>) -> Result<Option<MapLines>> {
    lines
        .map(|ls| ls.iter().map(|&(n, t)| map_line(field, n, t)).collect::<Result<Vec<_>>>())
        .transpose()
}

fn parse_measuring(field: Field, lines: &Lines, header: usize) -> Result<MeasuringBody> {
    let bs = blocks(lines, &["hopf", "algebra"], &["action"])?;
    let action = block(&bs, "action")
        .ok_or_else(|| perr(header, "missing `action` block"))?
        .iter()
        .map(|&(n, t)| {
            let (label, v) = map_line(field, n, t)?;
            let (h, a) = label.split_once(" ⊗ ").ok_or_else(|| perr(n, "expected `h ⊗ a -> (…)`"))?;
            Ok((h.trim().to_string(), a.trim().to_string(), v))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MeasuringBody {
        hopf: required(lines, header, "hopf")?,
        algebra: required(lines, header, "algebra")?,
        action,
    })
}

fn parse_cocycle(field: Field, lines: &Lines, header: usize) -> Result<CocycleBody> {
    let bs = blocks(lines, &["measuring", "restricts"], &["omega", "omega_prime", "phi"])?;
    let omega = parse_map_block(field, block(&bs, "omega"))?.ok_or_else(|| perr(header, "missing `omega` block"))?;
    let restricts = single(lines, "restricts")?;
    let phi = parse_map_block(field, block(&bs, "phi"))?;
    if restricts.is_some() != phi.is_some() {
        return Err(perr(header, "`restricts` and `phi` go together"));
    }
    Ok(CocycleBody {
        measuring: required(lines, header, "measuring")?,
        omega,
        omega_prime: parse_map_block(field, block(&bs, "omega_prime"))?,
        restricts,
        phi,
    })
}

fn parse_wtilde(field: Field, lines: &Lines, header: usize) -> Result<WtildeBody> {
    let bs = blocks(lines, &["cocycle"], &["map"])?;
    Ok(WtildeBody {
        cocycle: required(lines, header, "cocycle")?,
        map: parse_map_block(field, block(&bs, "map"))?.ok_or_else(|| perr(header, "missing `map` block"))?,
    })
}

/// A bare map file: `label -> (…)` lines, comments allowed.
pub fn parse_map_file(text: &str, field: Field) -> Result<MapLines> {
    text.lines()
        .enumerate()
        .filter(|(_, t)| !t.trim().is_empty() && !t.trim_start().starts_with('#'))
        .map(|(i, t)| map_line(field, i + 1, t.trim()))
        .collect()
}

fn terms(v: &Vector) -> String {
    let parts: Vec<String> = v.nonzero().map(|(k, c)| format!("{c}*{k}")).collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn write_map(out: &mut String, lines: &MapLines) {
    for (label, v) in lines {
        let _ = writeln!(out, "{label} -> {v}");
    }
}

fn write_structure(out: &mut String, labels: &[String], mult: &[Vector]) {
    let dim = labels.len();
    let _ = writeln!(out, "dim {dim}");
    let _ = writeln!(out, "labels {}", labels.join(" "));
    out.push_str("mult\n");
    for (p, v) in mult.iter().enumerate() {
        if !v.is_zero() {
            let _ = writeln!(out, "{} {} -> {}", p / dim, p % dim, terms(v));
        }
    }
}

/// Canonical text; parsing it gives back the same file.
pub fn print_instance(file: &InstanceFile) -> String {
    let mut out = String::new();
    for (i, s) in file.sections.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        let _ = writeln!(out, "[{} {}]", s.body.kind(), s.name);
        match &s.body {
            Body::Group(GroupBody::Builtin(b)) | Body::Bialgebra(BialgebraBody::Builtin(b)) | Body::Algebra(AlgebraBody::Builtin(b)) => {
                let _ = writeln!(out, "builtin {b}");
            }
            Body::Group(GroupBody::Table { name, elements, cayley }) => {
                let _ = writeln!(out, "group {name} {}", cayley.len());
                if let Some(e) = elements {
                    let _ = writeln!(out, "elements {}", e.join(" "));
                }
                for row in cayley {
                    let row: Vec<String> = row.iter().map(usize::to_string).collect();
                    let _ = writeln!(out, "{}", row.join(" "));
                }
            }
            Body::Bialgebra(BialgebraBody::Explicit(d)) => {
                write_structure(&mut out, &d.labels, &d.mult);
                out.push_str("comult\n");
                for (i, c) in d.comult.iter().enumerate() {
                    let parts: Vec<String> = c.iter().map(|(j, k, s)| format!("{s}*({j},{k})")).collect();
                    let rhs = if parts.is_empty() { "0".to_string() } else { parts.join(" + ") };
                    let _ = writeln!(out, "{i} -> {rhs}");
                }
                let _ = writeln!(out, "counit {}", d.counit);
                let _ = writeln!(out, "unit {}", d.unit);
                if let Some(s) = &d.antipode {
                    out.push_str("antipode\n");
                    for row in s {
                        let _ = writeln!(out, "{row}");
                    }
                }
            }
            Body::Algebra(AlgebraBody::Explicit { labels, mult, unit }) => {
                write_structure(&mut out, labels, mult);
                let _ = writeln!(out, "unit {unit}");
            }
            Body::Measuring(m) => {
                let _ = writeln!(out, "hopf {}", m.hopf);
                let _ = writeln!(out, "algebra {}", m.algebra);
                out.push_str("action\n");
                for (h, a, v) in &m.action {
                    let _ = writeln!(out, "{h} ⊗ {a} -> {v}");
                }
            }
            Body::Cocycle(c) => {
                let _ = writeln!(out, "measuring {}", c.measuring);
                if let Some(r) = &c.restricts {
                    let _ = writeln!(out, "restricts {r}");
                }
                out.push_str("omega\n");
                write_map(&mut out, &c.omega);
                if let Some(wp) = &c.omega_prime {
                    out.push_str("omega_prime\n");
                    write_map(&mut out, wp);
                }
                if let Some(phi) = &c.phi {
                    out.push_str("phi\n");
                    write_map(&mut out, phi);
                }
            }
            Body::Wtilde(w) => {
                let _ = writeln!(out, "cocycle {}", w.cocycle);
                out.push_str("map\n");
                write_map(&mut out, &w.map);
            }
        }
    }
    out
}
