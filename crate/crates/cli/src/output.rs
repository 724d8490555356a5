//! Pretty and machine renderings of exact results.

use std::fmt::Write as _;

use num_integer::Integer;
use tftalg::{CycMatrix, Cyclotomic};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Style {
    Pretty,
    Machine,
}

/// Accumulates one run's output; sections keep the order in which they are added.
///
/// Pretty output names its sections only when there is more than one.
pub struct Out {
    style: Style,
    approx: bool,
    command: String,
    sections: Vec<(String, String)>,
    buf: String,
}

fn common_order<'a>(xs: impl IntoIterator<Item = &'a Cyclotomic>) -> u32 {
    xs.into_iter()
        .fold(1u32, |acc, x| acc.lcm(&x.minimal_order()))
}

fn poly(x: &Cyclotomic, order: u32) -> String {
    x.embed(order)
        .expect("order divides the common order")
        .to_poly_string()
}

/// Rational values print bare, everything else with its field.
pub fn scalar_text(x: &Cyclotomic) -> String {
    let n = x.minimal_order();
    if n == 1 {
        x.to_poly_string()
    } else {
        x.embed(n).expect("minimal order").to_scalar_text()
    }
}

fn approx_text(x: &Cyclotomic) -> String {
    let (re, im) = x.approx();
    // avoid printing -0.000000
    let fix = |v: f64| if v.abs() < 5e-7 { 0.0 } else { v };
    let (re, im) = (fix(re), fix(im));
    if im == 0.0 {
        format!("{re:.6}")
    } else {
        format!("{re:.6}{im:+.6}i")
    }
}

fn field_note(order: u32) -> String {
    if order == 1 {
        String::new()
    } else {
        format!("  (z = exp(2 pi i/{order}))")
    }
}

fn align(rows: &[Vec<String>]) -> Vec<String> {
    let cols = rows.first().map_or(0, Vec::len);
    let widths: Vec<usize> = (0..cols)
        .map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
        .collect();
    rows.iter()
        .map(|r| {
            let cells: Vec<String> = r
                .iter()
                .zip(&widths)
                .map(|(s, w)| format!("{s:>w$}"))
                .collect();
            format!("[ {} ]", cells.join("  "))
        })
        .collect()
}

impl Out {
    pub fn new(style: Style, approx: bool, command: &str) -> Self {
        Out {
            style,
            approx,
            command: command.to_string(),
            sections: Vec::new(),
            buf: String::new(),
        }
    }

    pub fn machine(&self) -> bool {
        self.style == Style::Machine
    }

    fn close_section(&mut self) {
        if let Some(last) = self.sections.last_mut() {
            last.1 = std::mem::take(&mut self.buf);
        }
    }

    pub fn finish(mut self) -> String {
        self.close_section();
        let mut text = String::new();
        match self.style {
            Style::Machine => {
                let _ = writeln!(text, "# tftalg {}", self.command);
                text.push_str(&self.buf);
                for (name, body) in &self.sections {
                    let _ = writeln!(text, "# [{name}]");
                    text.push_str(body);
                }
            }
            Style::Pretty => {
                text.push_str(&self.buf);
                let named = self.sections.len() > 1;
                for (i, (name, body)) in self.sections.iter().enumerate() {
                    if named {
                        if i > 0 {
                            text.push('\n');
                        }
                        let _ = writeln!(text, "== {name} ==");
                    }
                    text.push_str(body);
                }
            }
        }
        text
    }

    pub fn section(&mut self, name: &str) {
        self.close_section();
        self.sections.push((name.to_string(), String::new()));
    }

    pub fn line(&mut self, text: impl AsRef<str>) {
        self.buf.push_str(text.as_ref());
        self.buf.push('\n');
    }

    /// Appends a complete text block verbatim.
    pub fn raw(&mut self, text: &str) {
        self.buf.push_str(text);
        if !text.ends_with('\n') {
            self.buf.push('\n');
        }
    }

    /// `key value` in machine form, `key: value` in pretty form.
    pub fn field(&mut self, key: &str, value: impl std::fmt::Display) {
        match self.style {
            Style::Machine => self.line(format!("{key} {value}")),
            Style::Pretty => self.line(format!("{key}: {value}")),
        }
    }

    pub fn scalar(&mut self, key: &str, x: &Cyclotomic) {
        match self.style {
            Style::Machine => self.line(format!("{key} {}", x.to_scalar_text())),
            Style::Pretty => {
                let mut s = format!("{key}: {}", scalar_text(x));
                if self.approx && x.minimal_order() > 1 {
                    s.push_str(&format!("   ~ {} (approximate)", approx_text(x)));
                }
                self.line(s);
            }
        }
    }

    pub fn labels(&mut self, labels: &[String]) {
        match self.style {
            Style::Machine => {
                for (i, l) in labels.iter().enumerate() {
                    self.line(format!("label {i} {l}"));
                }
            }
            Style::Pretty => {
                for (i, l) in labels.iter().enumerate() {
                    self.line(format!("{i:>3}  {l}"));
                }
            }
        }
    }

    pub fn matrix(&mut self, name: &str, m: &CycMatrix) {
        let order = common_order(m.entries());
        match self.style {
            Style::Machine => {
                self.line(format!(
                    "matrix {name} rows {} cols {} zeta_order {order}",
                    m.rows(),
                    m.cols()
                ));
                for r in 0..m.rows() {
                    for c in 0..m.cols() {
                        let x = &m[(r, c)];
                        if !x.is_zero() {
                            self.line(format!("entry {r} {c} {}", poly(x, order)));
                        }
                    }
                }
                self.line("end");
            }
            Style::Pretty => {
                self.line(format!("{name} ={}", field_note(order)));
                let rows: Vec<Vec<String>> = (0..m.rows())
                    .map(|r| m.row(r).iter().map(|x| poly(x, order)).collect())
                    .collect();
                for l in align(&rows) {
                    self.line(l);
                }
                if self.approx && order > 1 {
                    self.line(format!("{name} ~ (approximate, not authoritative)"));
                    let rows: Vec<Vec<String>> = (0..m.rows())
                        .map(|r| m.row(r).iter().map(approx_text).collect())
                        .collect();
                    for l in align(&rows) {
                        self.line(l);
                    }
                }
            }
        }
    }

    /// A vector indexed by labels, one entry per line.
    pub fn vector(&mut self, name: &str, labels: &[String], v: &[Cyclotomic]) {
        let order = common_order(v);
        match self.style {
            Style::Machine => {
                self.line(format!("vector {name} len {} zeta_order {order}", v.len()));
                for (i, x) in v.iter().enumerate() {
                    self.line(format!("value {i} {}", poly(x, order)));
                }
                self.line("end");
            }
            Style::Pretty => {
                self.line(format!("{name}:{}", field_note(order)));
                let w = labels.iter().map(|l| l.chars().count()).max().unwrap_or(0);
                for (l, x) in labels.iter().zip(v) {
                    let mut s = format!("  {l:<w$}  {}", poly(x, order));
                    if self.approx && x.minimal_order() > 1 {
                        s.push_str(&format!("   ~ {}", approx_text(x)));
                    }
                    self.line(s);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pretty_matrix_is_aligned() {
        let m = CycMatrix::from_rows(vec![
            vec![Cyclotomic::from_ratio(1, 2), Cyclotomic::from_int(-1)],
            vec![Cyclotomic::from_int(10), Cyclotomic::zero()],
        ]);
        let mut out = Out::new(Style::Pretty, false, "test");
        out.matrix("M", &m);
        assert_eq!(out.finish(), "M =\n[ 1/2  -1 ]\n[  10   0 ]\n");
    }

    #[test]
    fn machine_scalars_are_self_describing() {
        let mut out = Out::new(Style::Machine, false, "test");
        out.scalar("t", &Cyclotomic::root_of_unity(3, 1));
        assert_eq!(out.finish(), "# tftalg test\nt zeta_order = 3; z\n");
        assert_eq!(scalar_text(&Cyclotomic::from_int(8)), "8");
    }
}
