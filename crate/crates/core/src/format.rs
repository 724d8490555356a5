//! Line-oriented text documents for every input type.
//!
//! Shared rules: `#` at the start of a line or after whitespace starts a
//! comment, blank lines are ignored, the first significant line names the
//! document kind. Scalars are polynomials in `z`
//! read in `Q(zeta_n)` for the document's `zeta_order = n` line (default 1),
//! and are always the last field on a line. Nested documents sit between
//! `begin <name>` and `end`.
//!
//! ```text
//! group perm_generators        group cayley_table
//! degree 3                     order 2
//! gen (1,2)                    labels e a
//! gen (1,2,3)                  generators a
//!                              0 1
//!                              1 0
//! ```
//!
//! Group-valued fields (`inclusion`, `projection`, `boundary`) list the images
//! of the source group's generators as element labels or indices of the
//! target.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_integer::Integer;
use thiserror::Error;

use crate::frobenius::FrobeniusAlgebra;
use crate::group::{FiniteGroup, GroupHom, Perm};
use crate::hopf::{FinHopfAlgebra, SVec};
use crate::linalg::CycMatrix;
use crate::pdual::{HopfPairing, HopfProjectionDatum, LinearMap};
use crate::scalar::{parse_order_decl, parse_poly, Cyclotomic};
use crate::xmod::CrossedModule;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    /// Malformed text; `line` is 1-based.
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    /// Well-formed text describing an invalid object.
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, FormatError>;

fn syntax<T>(line: usize, message: impl Into<String>) -> Result<T> {
    Err(FormatError::Syntax {
        line,
        message: message.into(),
    })
}

fn invalid(e: impl std::fmt::Display) -> FormatError {
    FormatError::Invalid(e.to_string())
}

#[derive(Clone, Copy, Debug)]
struct Line<'a> {
    no: usize,
    text: &'a str,
}

impl<'a> Line<'a> {
    fn keyword(&self) -> &'a str {
        self.text.split_whitespace().next().unwrap_or("")
    }

    /// Text after the first word.
    fn rest(&self) -> &'a str {
        self.text[self.keyword().len()..].trim()
    }

    /// `n` whitespace-separated indices after the keyword, then the remaining text.
    fn indices_and_tail(&self, n: usize) -> Result<(Vec<usize>, &'a str)> {
        let mut tail = self.rest();
        let mut idx = Vec::with_capacity(n);
        for _ in 0..n {
            let end = tail.find(char::is_whitespace).unwrap_or(tail.len());
            let tok = &tail[..end];
            match tok.parse::<usize>() {
                Ok(i) => idx.push(i),
                Err(_) => {
                    return syntax(
                        self.no,
                        format!("expected {n} indices after `{}`", self.keyword()),
                    )
                }
            }
            tail = tail[end..].trim_start();
        }
        Ok((idx, tail))
    }

    fn single_usize(&self) -> Result<usize> {
        let (v, tail) = self.indices_and_tail(1)?;
        if !tail.is_empty() {
            return syntax(
                self.no,
                format!("unexpected text after `{}`", self.keyword()),
            );
        }
        Ok(v[0])
    }
}

/// A `#` at the start of a line or after whitespace opens a comment.
fn strip_comment(raw: &str) -> &str {
    let mut prev_space = true;
    for (i, ch) in raw.char_indices() {
        if ch == '#' && prev_space {
            return &raw[..i];
        }
        prev_space = ch.is_whitespace();
    }
    raw
}

fn significant_lines(src: &str) -> Vec<Line<'_>> {
    src.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let text = strip_comment(raw).trim();
            (!text.is_empty()).then_some(Line { no: i + 1, text })
        })
        .collect()
}

/// A document split into its header, top-level lines and nested blocks.
struct Doc<'a> {
    header: Line<'a>,
    body: Vec<Line<'a>>,
    blocks: Vec<(Line<'a>, Vec<Line<'a>>)>,
}

impl<'a> Doc<'a> {
    fn split(lines: Vec<Line<'a>>, kind: &str) -> Result<Doc<'a>> {
        let Some(&header) = lines.first() else {
            return syntax(1, "empty document");
        };
        if header.keyword() != kind {
            return syntax(
                header.no,
                format!("expected a `{kind}` document, found `{}`", header.keyword()),
            );
        }
        let mut body = Vec::new();
        let mut blocks = Vec::new();
        let mut open: Option<(Line<'a>, Vec<Line<'a>>)> = None;
        for &l in &lines[1..] {
            match (l.keyword(), &mut open) {
                ("begin", None) => {
                    if l.rest().is_empty() {
                        return syntax(l.no, "block needs a name");
                    }
                    open = Some((l, Vec::new()));
                }
                ("begin", Some(_)) => return syntax(l.no, "nested blocks are not allowed"),
                ("end", Some(_)) => {
                    let (b, inner) = open.take().expect("open block");
                    if inner.is_empty() {
                        return syntax(b.no, format!("block `{}` is empty", b.rest()));
                    }
                    blocks.push((b, inner));
                }
                ("end", None) => return syntax(l.no, "`end` without `begin`"),
                (_, Some((_, inner))) => inner.push(l),
                (_, None) => body.push(l),
            }
        }
        if let Some((b, _)) = open {
            return syntax(b.no, format!("block `{}` is not closed", b.rest()));
        }
        Ok(Doc {
            header,
            body,
            blocks,
        })
    }

    fn block(&self, name: &str) -> Result<&[Line<'a>]> {
        let mut found = self.blocks.iter().filter(|(b, _)| b.rest() == name);
        match (found.next(), found.next()) {
            (Some((_, inner)), None) => Ok(inner),
            (Some(_), Some((b, _))) => syntax(b.no, format!("duplicate block `{name}`")),
            (None, _) => syntax(self.header.no, format!("missing block `{name}`")),
        }
    }

    fn check_blocks(&self, allowed: &[&str]) -> Result<()> {
        match self
            .blocks
            .iter()
            .find(|(b, _)| !allowed.contains(&b.rest()))
        {
            Some((b, _)) => syntax(b.no, format!("unknown block `{}`", b.rest())),
            None => Ok(()),
        }
    }

    /// The `zeta_order = n` declaration, default 1.
    fn zeta_order(&self) -> Result<u32> {
        let mut order = None;
        for l in self
            .body
            .iter()
            .filter(|l| l.keyword().starts_with("zeta_order"))
        {
            if order.is_some() {
                return syntax(l.no, "duplicate zeta_order");
            }
            order = Some(parse_order_decl(l.text).ok_or(FormatError::Syntax {
                line: l.no,
                message: "expected `zeta_order = n` with n > 0".into(),
            })?);
        }
        Ok(order.unwrap_or(1))
    }

    fn unique(&self, key: &str) -> Result<Option<Line<'a>>> {
        let mut it = self.body.iter().filter(|l| l.keyword() == key);
        match (it.next(), it.next()) {
            (first, None) => Ok(first.copied()),
            (_, Some(l)) => syntax(l.no, format!("duplicate `{key}`")),
        }
    }

    fn required(&self, key: &str) -> Result<Line<'a>> {
        self.unique(key)?.ok_or(FormatError::Syntax {
            line: self.header.no,
            message: format!("missing `{key}`"),
        })
    }

    fn reject_unknown(&self, known: &[&str]) -> Result<()> {
        match self
            .body
            .iter()
            .find(|l| !known.contains(&l.keyword()) && !l.keyword().starts_with("zeta_order"))
        {
            Some(l) => syntax(l.no, format!("unknown keyword `{}`", l.keyword())),
            None => Ok(()),
        }
    }
}

fn scalar_at(line: &Line<'_>, text: &str, order: u32) -> Result<Cyclotomic> {
    if text.is_empty() {
        return syntax(line.no, "missing scalar");
    }
    parse_poly(text, order).map_err(|e| FormatError::Syntax {
        line: line.no,
        message: e.to_string(),
    })
}

/// Sparse `keyword i_1 .. i_n c` entries, each index bounded by `bounds`.
fn sparse_entries(
    doc: &Doc<'_>,
    key: &str,
    bounds: &[usize],
    order: u32,
) -> Result<BTreeMap<Vec<usize>, Cyclotomic>> {
    let mut out = BTreeMap::new();
    for l in doc.body.iter().filter(|l| l.keyword() == key) {
        let (idx, tail) = l.indices_and_tail(bounds.len())?;
        if let Some((i, b)) = idx.iter().zip(bounds).find(|(i, b)| i >= b) {
            return syntax(l.no, format!("index {i} out of range (bound {b})"));
        }
        let c = scalar_at(l, tail, order)?;
        if out.insert(idx, c).is_some() {
            return syntax(l.no, format!("duplicate `{key}` entry"));
        }
    }
    Ok(out)
}

/// Common order for a set of scalars, so each prints as a polynomial in one `z`.
fn common_order<'a>(xs: impl IntoIterator<Item = &'a Cyclotomic>) -> u32 {
    xs.into_iter()
        .fold(1u32, |acc, x| acc.lcm(&x.minimal_order()))
}

fn poly(x: &Cyclotomic, order: u32) -> String {
    x.embed(order)
        .expect("order divides the common order")
        .to_poly_string()
}

// ---------------------------------------------------------------- groups

pub fn parse_group(src: &str) -> Result<FiniteGroup> {
    group_from_lines(significant_lines(src))
}

fn group_from_lines(lines: Vec<Line<'_>>) -> Result<FiniteGroup> {
    let doc = Doc::split(lines, "group")?;
    doc.check_blocks(&[])?;
    match doc.header.rest() {
        "perm_generators" => perm_group(&doc),
        "cayley_table" => table_group(&doc),
        other => syntax(
            doc.header.no,
            format!("unknown group form `{other}`; expected perm_generators or cayley_table"),
        ),
    }
}

fn perm_group(doc: &Doc<'_>) -> Result<FiniteGroup> {
    doc.reject_unknown(&["degree", "gen"])?;
    let mut cycles = Vec::new();
    for l in doc.body.iter().filter(|l| l.keyword() == "gen") {
        let c = Perm::parse_cycles(l.rest()).map_err(|e| FormatError::Syntax {
            line: l.no,
            message: e.to_string(),
        })?;
        cycles.push((l, c));
    }
    let max_point = cycles
        .iter()
        .flat_map(|(_, c)| c.iter().flatten())
        .copied()
        .max()
        .unwrap_or(1);
    let degree = match doc.unique("degree")? {
        Some(l) => {
            let d = l.single_usize()?;
            if d < max_point {
                return syntax(
                    l.no,
                    format!("degree {d} is below the largest point {max_point}"),
                );
            }
            d
        }
        None => max_point,
    };
    let mut perms = Vec::new();
    for (l, c) in &cycles {
        perms.push(
            Perm::from_cycles(degree, c).map_err(|e| FormatError::Syntax {
                line: l.no,
                message: e.to_string(),
            })?,
        );
    }
    if perms.is_empty() {
        perms.push(Perm::identity(degree));
    }
    FiniteGroup::from_permutations(&perms).map_err(invalid)
}

fn table_group(doc: &Doc<'_>) -> Result<FiniteGroup> {
    let order_line = doc.required("order")?;
    let order = order_line.single_usize()?;
    if order == 0 {
        return syntax(order_line.no, "order must be positive");
    }
    let labels = doc
        .unique("labels")?
        .map(|l| {
            let v: Vec<String> = l.rest().split_whitespace().map(str::to_string).collect();
            if v.len() != order {
                return syntax(l.no, format!("expected {order} labels, found {}", v.len()));
            }
            Ok(v)
        })
        .transpose()?;
    let mut table = Vec::with_capacity(order * order);
    let mut rows = 0;
    for l in doc
        .body
        .iter()
        .filter(|l| !matches!(l.keyword(), "order" | "labels" | "generators"))
    {
        let row: Vec<usize> = match l.text.split_whitespace().map(str::parse).collect() {
            Ok(r) => r,
            Err(_) => return syntax(l.no, "table rows are element indices"),
        };
        if row.len() != order {
            return syntax(
                l.no,
                format!("row has {} entries, expected {order}", row.len()),
            );
        }
        if let Some(bad) = row.iter().find(|&&x| x >= order) {
            return syntax(l.no, format!("entry {bad} out of range"));
        }
        rows += 1;
        if rows > order {
            return syntax(l.no, format!("more than {order} rows"));
        }
        table.extend(row);
    }
    if rows != order {
        return syntax(
            doc.header.no,
            format!("expected {order} rows, found {rows}"),
        );
    }
    let g = match labels {
        Some(ls) => FiniteGroup::from_table_with_labels(order, table, ls),
        None => FiniteGroup::from_table(order, table),
    }
    .map_err(invalid)?;
    match doc.unique("generators")? {
        Some(l) => {
            let mut gens = Vec::new();
            for t in l.rest().split_whitespace() {
                match g.find_element(t) {
                    Some(x) => gens.push(x),
                    None => return syntax(l.no, format!("unknown element `{t}`")),
                }
            }
            g.with_generators(gens).map_err(|e| FormatError::Syntax {
                line: l.no,
                message: e.to_string(),
            })
        }
        None => Ok(g),
    }
}

pub fn serialize_group(g: &FiniteGroup) -> String {
    let mut out = String::new();
    match g.permutations() {
        Some(perms) => {
            out.push_str("group perm_generators\n");
            let _ = writeln!(out, "degree {}", perms[0].degree());
            for &x in g.generators() {
                let _ = writeln!(out, "gen {}", perms[x]);
            }
        }
        None => {
            let n = g.order();
            out.push_str("group cayley_table\n");
            let _ = writeln!(out, "order {n}");
            if g.labels()
                .iter()
                .enumerate()
                .any(|(i, l)| *l != i.to_string())
            {
                let _ = writeln!(out, "labels {}", g.labels().join(" "));
            }
            let gens: Vec<&str> = g.generators().iter().map(|&x| g.label(x)).collect();
            let _ = writeln!(out, "generators {}", gens.join(" "));
            for row in g.table().chunks(n) {
                let cells: Vec<String> = row.iter().map(usize::to_string).collect();
                let _ = writeln!(out, "{}", cells.join(" "));
            }
        }
    }
    out
}

fn nested(lines: &[Line<'_>], block: &str) -> String {
    let mut out = format!("begin {block}\n");
    for l in lines {
        out.push_str(l.text);
        out.push('\n');
    }
    out.push_str("end\n");
    out
}

fn nest(doc: &str, block: &str) -> String {
    nested(&significant_lines(doc), block)
}

/// Images of the source generators, resolved in the target.
fn generator_images(
    line: &Line<'_>,
    source: &FiniteGroup,
    target: &FiniteGroup,
) -> Result<GroupHom> {
    let toks: Vec<&str> = line.rest().split_whitespace().collect();
    if toks.len() != source.generators().len() {
        return syntax(
            line.no,
            format!(
                "expected {} generator images, found {}",
                source.generators().len(),
                toks.len()
            ),
        );
    }
    let mut images = Vec::with_capacity(toks.len());
    for t in toks {
        match target.find_element(t) {
            Some(i) => images.push(i),
            None => return syntax(line.no, format!("unknown element `{t}`")),
        }
    }
    GroupHom::from_generator_images(source.clone(), target.clone(), &images).map_err(invalid)
}

fn format_images(h: &GroupHom) -> String {
    let imgs: Vec<&str> = h
        .source
        .generators()
        .iter()
        .map(|&x| h.target.label(h.apply(x)))
        .collect();
    imgs.join(" ")
}

// ------------------------------------------------------------- sequences

/// `1 -> G1 -> G2 -> J -> 1` as two homomorphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceDoc {
    pub incl: GroupHom,
    pub proj: GroupHom,
}

pub fn parse_sequence(src: &str) -> Result<SequenceDoc> {
    let doc = Doc::split(significant_lines(src), "sequence")?;
    doc.check_blocks(&["g1", "g2", "quotient"])?;
    doc.reject_unknown(&["inclusion", "projection"])?;
    let g1 = group_from_lines(doc.block("g1")?.to_vec())?;
    let g2 = group_from_lines(doc.block("g2")?.to_vec())?;
    let j = group_from_lines(doc.block("quotient")?.to_vec())?;
    let incl = generator_images(&doc.required("inclusion")?, &g1, &g2)?;
    let proj = generator_images(&doc.required("projection")?, &g2, &j)?;
    Ok(SequenceDoc { incl, proj })
}

pub fn serialize_sequence(s: &SequenceDoc) -> String {
    let mut out = String::from("sequence\n");
    out.push_str(&nest(&serialize_group(&s.incl.source), "g1"));
    out.push_str(&nest(&serialize_group(&s.incl.target), "g2"));
    out.push_str(&nest(&serialize_group(&s.proj.target), "quotient"));
    let _ = writeln!(out, "inclusion {}", format_images(&s.incl));
    let _ = writeln!(out, "projection {}", format_images(&s.proj));
    out
}

// -------------------------------------------------------- crossed modules

/// Reads `action conjugation`, `action trivial` or `action table` followed by
/// one row per element of `G2` listing the indices of `g.m` for every `m`.
pub fn parse_xmod(src: &str) -> Result<CrossedModule> {
    let doc = Doc::split(significant_lines(src), "crossed_module")?;
    doc.check_blocks(&["g1", "g2"])?;
    let g1 = group_from_lines(doc.block("g1")?.to_vec())?;
    let g2 = group_from_lines(doc.block("g2")?.to_vec())?;
    let boundary = generator_images(&doc.required("boundary")?, &g1, &g2)?;
    let action_line = doc.required("action")?;
    let rows: Vec<&Line<'_>> = doc.body.iter().filter(|l| l.keyword() == "row").collect();
    let xm = match action_line.rest() {
        "conjugation" | "trivial" if !rows.is_empty() => {
            return syntax(rows[0].no, "`row` lines need `action table`");
        }
        "conjugation" => CrossedModule::conjugation(boundary),
        "trivial" => CrossedModule::trivial_action(boundary),
        "table" => {
            doc.reject_unknown(&["boundary", "action", "row"])?;
            if rows.len() != g2.order() {
                return syntax(
                    action_line.no,
                    format!("expected {} rows, found {}", g2.order(), rows.len()),
                );
            }
            let mut action = Vec::with_capacity(g1.order() * g2.order());
            for l in rows {
                let (r, tail) = l.indices_and_tail(g1.order())?;
                if !tail.is_empty() {
                    return syntax(l.no, format!("row has more than {} entries", g1.order()));
                }
                if let Some(bad) = r.iter().find(|&&m| m >= g1.order()) {
                    return syntax(l.no, format!("entry {bad} out of range"));
                }
                action.extend(r);
            }
            CrossedModule::new(g1, g2, action, boundary)
        }
        other => return syntax(action_line.no, format!("unknown action `{other}`")),
    }
    .map_err(invalid)?;
    doc.reject_unknown(&["boundary", "action", "row"])?;
    let report = xm.validate();
    if let Some(c) = report.checks.iter().find(|c| !c.passed) {
        return Err(FormatError::Invalid(format!(
            "crossed module axiom `{}` fails{}",
            c.name,
            c.witness
                .as_deref()
                .map(|w| format!(" at {w}"))
                .unwrap_or_default()
        )));
    }
    Ok(xm)
}

pub fn serialize_xmod(x: &CrossedModule) -> String {
    let mut out = String::from("crossed_module\n");
    out.push_str(&nest(&serialize_group(&x.g1), "g1"));
    out.push_str(&nest(&serialize_group(&x.g2), "g2"));
    let _ = writeln!(out, "boundary {}", format_images(&x.boundary));
    out.push_str("action table\n");
    for row in x.action.chunks(x.g1.order()) {
        let cells: Vec<String> = row.iter().map(usize::to_string).collect();
        let _ = writeln!(out, "row {}", cells.join(" "));
    }
    out
}

// ----------------------------------------------------- Frobenius algebras

/// `mult i j k c` puts `c` on `e_k` in `e_i e_j`; `unit i c`, `counit i c`.
pub fn parse_frobenius(src: &str) -> Result<FrobeniusAlgebra> {
    let doc = Doc::split(significant_lines(src), "frobenius")?;
    doc.check_blocks(&[])?;
    doc.reject_unknown(&["dim", "mult", "unit", "counit"])?;
    let n = doc.required("dim")?.single_usize()?;
    let order = doc.zeta_order()?;
    let mut mult = CycMatrix::zeros(n, n * n);
    for (idx, c) in sparse_entries(&doc, "mult", &[n, n, n], order)? {
        mult[(idx[2], idx[0] * n + idx[1])] = c;
    }
    let dense = |key: &str| -> Result<Vec<Cyclotomic>> {
        let mut v = vec![Cyclotomic::zero(); n];
        for (idx, c) in sparse_entries(&doc, key, &[n], order)? {
            v[idx[0]] = c;
        }
        Ok(v)
    };
    FrobeniusAlgebra::new(mult, dense("unit")?, dense("counit")?).map_err(invalid)
}

pub fn serialize_frobenius(a: &FrobeniusAlgebra) -> String {
    let n = a.dim();
    let order = common_order(a.mult().entries().iter().chain(a.unit()).chain(a.counit()));
    let mut out = String::from("frobenius\n");
    let _ = writeln!(out, "dim {n}");
    if order > 1 {
        let _ = writeln!(out, "zeta_order = {order}");
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let c = &a.mult()[(k, i * n + j)];
                if !c.is_zero() {
                    let _ = writeln!(out, "mult {i} {j} {k} {}", poly(c, order));
                }
            }
        }
    }
    for (key, v) in [("unit", a.unit()), ("counit", a.counit())] {
        for (i, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let _ = writeln!(out, "{key} {i} {}", poly(c, order));
        }
    }
    out
}

// -------------------------------------------------------- Hopf algebras

/// Structure tensors: `mult i j k c`, `comult i j k c` (on `e_j (x) e_k`),
/// `antipode i j c`, `unit i c`, `counit i c`, optional `labels`.
pub fn parse_hopf(src: &str) -> Result<FinHopfAlgebra> {
    hopf_from_lines(significant_lines(src))
}

fn hopf_from_lines(lines: Vec<Line<'_>>) -> Result<FinHopfAlgebra> {
    let doc = Doc::split(lines, "hopf")?;
    doc.check_blocks(&[])?;
    doc.reject_unknown(&[
        "dim", "labels", "mult", "comult", "antipode", "unit", "counit",
    ])?;
    let dim_line = doc.required("dim")?;
    let n = dim_line.single_usize()?;
    if n == 0 {
        return syntax(dim_line.no, "dimension must be positive");
    }
    let order = doc.zeta_order()?;
    let labels = match doc.unique("labels")? {
        Some(l) => {
            let v: Vec<String> = l.rest().split_whitespace().map(str::to_string).collect();
            if v.len() != n {
                return syntax(l.no, format!("expected {n} labels, found {}", v.len()));
            }
            v
        }
        None => (0..n).map(|i| format!("e{i}")).collect(),
    };
    let mut mult = vec![SVec::new(); n * n];
    for (idx, c) in sparse_entries(&doc, "mult", &[n, n, n], order)? {
        mult[idx[0] * n + idx[1]].insert(idx[2], c);
    }
    let mut comult = vec![SVec::new(); n];
    for (idx, c) in sparse_entries(&doc, "comult", &[n, n, n], order)? {
        comult[idx[0]].insert(idx[1] * n + idx[2], c);
    }
    let mut antipode = vec![SVec::new(); n];
    for (idx, c) in sparse_entries(&doc, "antipode", &[n, n], order)? {
        antipode[idx[0]].insert(idx[1], c);
    }
    let unit: SVec = sparse_entries(&doc, "unit", &[n], order)?
        .into_iter()
        .map(|(i, c)| (i[0], c))
        .collect();
    let mut counit = vec![Cyclotomic::zero(); n];
    for (idx, c) in sparse_entries(&doc, "counit", &[n], order)? {
        counit[idx[0]] = c;
    }
    FinHopfAlgebra::new(labels, mult, unit, comult, counit, antipode).map_err(invalid)
}

pub fn serialize_hopf(h: &FinHopfAlgebra) -> String {
    let n = h.dim();
    let all = (0..n * n)
        .flat_map(|p| h.product_of(p / n, p % n).values())
        .chain((0..n).flat_map(|i| h.comult_of(i).values().chain(h.antipode_of(i).values())))
        .chain(h.unit().values())
        .chain(h.counit_vec());
    let order = common_order(all);
    let mut out = String::from("hopf\n");
    let _ = writeln!(out, "dim {n}");
    if order > 1 {
        let _ = writeln!(out, "zeta_order = {order}");
    }
    if h.labels()
        .iter()
        .any(|l| l.contains(char::is_whitespace) || l.starts_with('#'))
    {
        let safe: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
        let _ = writeln!(out, "labels {}", safe.join(" "));
    } else {
        let _ = writeln!(out, "labels {}", h.labels().join(" "));
    }
    for (i, c) in h.unit() {
        let _ = writeln!(out, "unit {i} {}", poly(c, order));
    }
    for i in 0..n {
        for j in 0..n {
            for (k, c) in h.product_of(i, j) {
                let _ = writeln!(out, "mult {i} {j} {k} {}", poly(c, order));
            }
        }
    }
    for i in 0..n {
        for (jk, c) in h.comult_of(i) {
            let _ = writeln!(out, "comult {i} {} {} {}", jk / n, jk % n, poly(c, order));
        }
    }
    for (i, c) in h
        .counit_vec()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
    {
        let _ = writeln!(out, "counit {i} {}", poly(c, order));
    }
    for i in 0..n {
        for (j, c) in h.antipode_of(i) {
            let _ = writeln!(out, "antipode {i} {j} {}", poly(c, order));
        }
    }
    out
}

fn linear_map_entries(
    doc: &Doc<'_>,
    key: &str,
    source: usize,
    target: usize,
    order: u32,
) -> Result<LinearMap> {
    let mut images = vec![SVec::new(); source];
    for (idx, c) in sparse_entries(doc, key, &[source, target], order)? {
        images[idx[0]].insert(idx[1], c);
    }
    Ok(LinearMap {
        target_dim: target,
        images,
    })
}

fn write_linear_map(out: &mut String, key: &str, f: &LinearMap, order: u32) {
    for (i, img) in f.images.iter().enumerate() {
        for (j, c) in img {
            if !c.is_zero() {
                let _ = writeln!(out, "{key} {i} {j} {}", poly(c, order));
            }
        }
    }
}

fn map_scalars(f: &LinearMap) -> impl Iterator<Item = &Cyclotomic> {
    f.images.iter().flat_map(|v| v.values())
}

// ------------------------------------------------------------ projections

/// A projection `H -> A` with section: block `target` holds `A`, `pi i j c`
/// puts `c` on `a_j` in `pi(e_i)`, `iota j i c` puts `c` on `e_i` in `iota(a_j)`.
/// `H` is supplied separately.
pub fn parse_projection(src: &str, h: &FinHopfAlgebra) -> Result<HopfProjectionDatum> {
    let doc = Doc::split(significant_lines(src), "projection")?;
    doc.check_blocks(&["target"])?;
    doc.reject_unknown(&["pi", "iota"])?;
    let a = hopf_from_lines(doc.block("target")?.to_vec())?;
    let order = doc.zeta_order()?;
    let pi = linear_map_entries(&doc, "pi", h.dim(), a.dim(), order)?;
    let iota = linear_map_entries(&doc, "iota", a.dim(), h.dim(), order)?;
    HopfProjectionDatum::new(h.clone(), a, pi, iota).map_err(invalid)
}

pub fn serialize_projection(d: &HopfProjectionDatum) -> String {
    let order = common_order(map_scalars(&d.pi).chain(map_scalars(&d.iota)));
    let mut out = String::from("projection\n");
    if order > 1 {
        let _ = writeln!(out, "zeta_order = {order}");
    }
    out.push_str(&nest(&serialize_hopf(&d.a), "target"));
    write_linear_map(&mut out, "pi", &d.pi, order);
    write_linear_map(&mut out, "iota", &d.iota, order);
    out
}

// --------------------------------------------------------------- pairings

/// Blocks `left` (`A`) and `right` (`B`); `omega i j c` sets `omega(a_i, b_j)`.
pub fn parse_pairing(src: &str) -> Result<HopfPairing> {
    let doc = Doc::split(significant_lines(src), "pairing")?;
    doc.check_blocks(&["left", "right"])?;
    doc.reject_unknown(&["omega"])?;
    let a = hopf_from_lines(doc.block("left")?.to_vec())?;
    let b = hopf_from_lines(doc.block("right")?.to_vec())?;
    let order = doc.zeta_order()?;
    let mut omega = CycMatrix::zeros(a.dim(), b.dim());
    for (idx, c) in sparse_entries(&doc, "omega", &[a.dim(), b.dim()], order)? {
        omega[(idx[0], idx[1])] = c;
    }
    HopfPairing::new(a, b, omega).map_err(invalid)
}

pub fn serialize_pairing(w: &HopfPairing) -> String {
    let order = common_order(w.omega.entries());
    let mut out = String::from("pairing\n");
    if order > 1 {
        let _ = writeln!(out, "zeta_order = {order}");
    }
    out.push_str(&nest(&serialize_hopf(&w.a), "left"));
    out.push_str(&nest(&serialize_hopf(&w.b), "right"));
    for i in 0..w.omega.rows() {
        for j in 0..w.omega.cols() {
            let c = &w.omega[(i, j)];
            if !c.is_zero() {
                let _ = writeln!(out, "omega {i} {j} {}", poly(c, order));
            }
        }
    }
    out
}
