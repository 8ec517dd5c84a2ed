use std::fmt::Display;
use std::io::{self, Write};

use clap::ValueEnum;
use lineal::exactalg::RatFun;
use lineal::treegen::BranchingMatrix;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Human-readable lines.
    Text,
    /// One JSON object per line; every integer is a decimal string.
    Structured,
}

fn strings<T: Display>(xs: impl IntoIterator<Item = T>) -> Vec<String> {
    xs.into_iter().map(|x| x.to_string()).collect()
}

pub fn ratfun_json(f: &RatFun) -> (Vec<String>, Vec<String>) {
    let num = strings(f.num().coeffs());
    let den = strings(f.den().coeffs());
    (if num.is_empty() { vec!["0".into()] } else { num }, den)
}

pub struct Out {
    format: Format,
    w: io::StdoutLock<'static>,
}

impl Out {
    pub fn new(format: Format) -> Self {
        Out { format, w: io::stdout().lock() }
    }

    fn record(&mut self, v: Value) {
        let _ = writeln!(self.w, "{v}");
    }

    pub fn line(&mut self, s: impl Display) {
        if self.format == Format::Text {
            let _ = writeln!(self.w, "{s}");
        }
    }

    /// Headline generating function: bare in text mode.
    pub fn gf(&mut self, name: &str, f: &RatFun) {
        match self.format {
            Format::Text => self.line(f),
            Format::Structured => {
                let (num, den) = ratfun_json(f);
                self.record(json!({"record": "gf", "name": name, "num": num, "den": den, "text": f.to_string()}));
            }
        }
    }

    pub fn class_gf(&mut self, name: &str, label: &str, f: &RatFun, series: Option<&[String]>) {
        match self.format {
            Format::Text => {
                let s = series.map(|s| format!("  [{}]", s.join(", "))).unwrap_or_default();
                self.line(format!("{label}: {f}{s}"));
            }
            Format::Structured => {
                let (num, den) = ratfun_json(f);
                let mut v = json!({"record": "class", "name": name, "label": label, "num": num, "den": den, "text": f.to_string()});
                if let Some(s) = series {
                    v["coefficients"] = json!(s);
                }
                self.record(v);
            }
        }
    }

    pub fn series(&mut self, name: &str, coeffs: &[String]) {
        match self.format {
            Format::Text => self.line(format!("series: {}", coeffs.join(", "))),
            Format::Structured => self.record(json!({"record": "series", "name": name, "coefficients": coeffs})),
        }
    }

    pub fn matrix(&mut self, name: &str, bm: &BranchingMatrix) {
        match self.format {
            Format::Text => {
                self.line("branching matrix (column = parent class):");
                for (i, row) in bm.matrix().iter().enumerate() {
                    let cells = strings(row);
                    self.line(format!("  [{}]  {}: {}", cells.join(" "), i, bm.labels()[i]));
                }
            }
            Format::Structured => {
                let rows: Vec<Vec<String>> = bm.matrix().iter().map(strings).collect();
                self.record(json!({"record": "matrix", "name": name, "rows": rows, "labels": bm.labels()}));
            }
        }
    }

    pub fn dot(&mut self, bm: &BranchingMatrix) {
        let _ = write!(self.w, "{}", bm.to_dot());
    }

    pub fn check(&mut self, suite: &str, name: &str, status: &str, detail: &str) {
        match self.format {
            Format::Text => self.line(format!(
                "{status:<8} {name}{}",
                if detail.is_empty() { String::new() } else { format!("  {detail}") }
            )),
            Format::Structured => self
                .record(json!({"record": "check", "suite": suite, "name": name, "status": status, "detail": detail})),
        }
    }

    pub fn summary(&mut self, suite: &str, passed: usize, failed: usize, note: &str) {
        match self.format {
            Format::Text => {
                self.line(format!("{suite}: {passed} passed, {failed} failed"));
                if !note.is_empty() {
                    self.line(note);
                }
            }
            Format::Structured => self
                .record(json!({"record": "summary", "suite": suite, "passed": passed, "failed": failed, "note": note})),
        }
    }
}

pub fn series_strings(f: &RatFun, terms: usize) -> Vec<String> {
    match f.series(terms) {
        Ok(s) => strings(s),
        Err(_) => strings(f.series_rational(terms)),
    }
}
