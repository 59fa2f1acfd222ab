//! Command results and their text, JSON and CSV renderings.

use std::fmt::Write as _;
use std::path::Path;

use anyhow::{anyhow, Context, Result};
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use ozeta::series::{QSeries, ZSeries};

use crate::config::JobConfig;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coefficients {
    Scalar(Vec<String>),
    /// Dense coefficient lists in `z`, lowest power first.
    Poly(Vec<Vec<String>>),
}

impl Coefficients {
    fn len(&self) -> usize {
        match self {
            Coefficients::Scalar(v) => v.len(),
            Coefficients::Poly(v) => v.len(),
        }
    }

    fn cell(&self, i: usize) -> Option<String> {
        match self {
            Coefficients::Scalar(v) => v.get(i).cloned(),
            Coefficients::Poly(v) => v.get(i).map(|c| format!("[{}]", c.join(", "))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesOut {
    pub name: String,
    /// Index of the first coefficient: 0 for power series, 1 for Dirichlet
    /// series.
    pub start: String,
    pub coefficients: Coefficients,
}

impl SeriesOut {
    pub fn rational(name: &str, s: &QSeries) -> Self {
        Self::from_rationals(name, 0, s.coeffs())
    }

    pub fn from_rationals(name: &str, start: usize, coeffs: &[BigRational]) -> Self {
        SeriesOut {
            name: name.into(),
            start: start.to_string(),
            coefficients: Coefficients::Scalar(coeffs.iter().map(|c| c.to_string()).collect()),
        }
    }

    pub fn counts(name: &str, start: usize, counts: impl IntoIterator<Item = u64>) -> Self {
        SeriesOut {
            name: name.into(),
            start: start.to_string(),
            coefficients: Coefficients::Scalar(counts.into_iter().map(|c| c.to_string()).collect()),
        }
    }

    pub fn poly(name: &str, s: &ZSeries) -> Self {
        let coeffs = s.coeffs().iter().map(|p| {
            let c = p.coeffs();
            if c.is_empty() {
                vec!["0".to_string()]
            } else {
                c.iter().map(|x| x.to_string()).collect()
            }
        });
        SeriesOut { name: name.into(), start: "0".into(), coefficients: Coefficients::Poly(coeffs.collect()) }
    }

    fn start(&self) -> usize {
        self.start.parse().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub config: JobConfig,
    pub series: Vec<SeriesOut>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(command: &str, config: &JobConfig) -> Self {
        Report { command: command.into(), config: config.clone(), series: Vec::new(), checks: Vec::new() }
    }

    pub fn push(&mut self, s: SeriesOut) {
        self.series.push(s);
    }

    pub fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), passed, detail: detail.into() });
    }

    /// Records an equality check between two series, naming the first
    /// differing coefficient on failure.
    pub fn compare(&mut self, name: &str, left: &SeriesOut, right: &SeriesOut) {
        match first_difference(left, right) {
            None => self.check(name, true, format!("{} = {}", left.name, right.name)),
            Some(d) => self.check(name, false, d),
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let de = &mut serde_json::Deserializer::from_str(&text);
        serde_path_to_error::deserialize(de)
            .map_err(|e| anyhow!("{}: invalid results file at `{}`: {}", path.display(), e.path(), e.inner()))
    }

    /// Adds one check per series of `previous`, against the series of the
    /// same name here.
    pub fn compare_with(&mut self, previous: &Report) {
        for old in &previous.series {
            let name = format!("compare {}", old.name);
            let previous = SeriesOut { name: format!("previous {}", old.name), ..old.clone() };
            match self.series.iter().find(|s| s.name == old.name).cloned() {
                Some(new) => self.compare(&name, &new, &previous),
                None => self.check(&name, false, "series missing from this run"),
            }
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# {}{}", self.command, self.parameters());
        let groups: Vec<Vec<&SeriesOut>> = {
            let mut g: Vec<Vec<&SeriesOut>> = Vec::new();
            for s in &self.series {
                match g.iter_mut().find(|grp| grp[0].start == s.start) {
                    Some(grp) => grp.push(s),
                    None => g.push(vec![s]),
                }
            }
            g
        };
        for group in groups {
            let start = group[0].start();
            let rows = group.iter().map(|s| s.coefficients.len() + start).max().unwrap_or(0);
            let mut table: Vec<Vec<String>> =
                vec![std::iter::once("degree".to_string()).chain(group.iter().map(|s| s.name.clone())).collect()];
            for i in start..rows {
                let mut row = vec![i.to_string()];
                row.extend(group.iter().map(|s| s.coefficients.cell(i - start).unwrap_or_default()));
                table.push(row);
            }
            let widths: Vec<usize> =
                (0..table[0].len()).map(|c| table.iter().map(|r| r[c].len()).max().unwrap_or(0)).collect();
            for row in &table {
                let cells: Vec<String> = row.iter().zip(&widths).map(|(x, w)| format!("{x:>w$}")).collect();
                let _ = writeln!(out, "{}", cells.join("  ").trim_end());
            }
        }
        for c in &self.checks {
            let _ = writeln!(out, "{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
        }
        out
    }

    /// ` key=value` for each scalar setting of the job.
    fn parameters(&self) -> String {
        let value = serde_json::to_value(&self.config).expect("config serialises");
        let mut out = String::new();
        if let serde_json::Value::Object(map) = value {
            for (k, v) in map {
                if let serde_json::Value::String(s) = v {
                    if k != "command" && k != "format" {
                        let _ = write!(out, " {k}={s}");
                    }
                }
            }
        }
        out
    }

    pub fn render_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialises");
        s.push('\n');
        s
    }

    /// One row per coefficient: `series,degree,coefficient` or
    /// `series,degree,z0,z1,...`.
    pub fn render_csv(&self) -> String {
        let mut out = String::new();
        let width = self
            .series
            .iter()
            .filter_map(|s| match &s.coefficients {
                Coefficients::Poly(v) => v.iter().map(Vec::len).max(),
                Coefficients::Scalar(_) => None,
            })
            .max();
        match width {
            None => out.push_str("series,degree,coefficient\n"),
            Some(w) => {
                let cols: Vec<String> = (0..w).map(|i| format!("z{i}")).collect();
                let _ = writeln!(out, "series,degree,{}", cols.join(","));
            }
        }
        for s in &self.series {
            let start = s.start();
            match &s.coefficients {
                Coefficients::Scalar(v) => {
                    for (i, c) in v.iter().enumerate() {
                        let _ = writeln!(out, "{},{},{}", s.name, i + start, c);
                    }
                }
                Coefficients::Poly(v) => {
                    for (i, c) in v.iter().enumerate() {
                        let _ = writeln!(out, "{},{},{}", s.name, i + start, c.join(","));
                    }
                }
            }
        }
        for c in &self.checks {
            let _ = writeln!(out, "# {} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
        }
        out
    }
}

/// The first index where two series disagree, compared over their common
/// length and start.
pub fn first_difference(left: &SeriesOut, right: &SeriesOut) -> Option<String> {
    if left.start != right.start {
        return Some(format!("{} starts at {}, {} at {}", left.name, left.start, right.name, right.start));
    }
    let start = left.start();
    let len = left.coefficients.len().min(right.coefficients.len());
    for i in 0..len {
        let (a, b) = (left.coefficients.cell(i), right.coefficients.cell(i));
        if a != b {
            return Some(format!(
                "first difference at degree {}: {} = {}, {} = {}",
                i + start,
                left.name,
                a.unwrap_or_default(),
                right.name,
                b.unwrap_or_default()
            ));
        }
    }
    if len == 0 {
        return Some("nothing to compare".into());
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(name: &str, v: &[u64]) -> SeriesOut {
        SeriesOut::counts(name, 0, v.iter().copied())
    }

    #[test]
    fn difference_names_both_values() {
        let d = first_difference(&s("a", &[1, 3, 9]), &s("b", &[1, 3, 8])).unwrap();
        assert_eq!(d, "first difference at degree 2: a = 9, b = 8");
        assert!(first_difference(&s("a", &[1, 3]), &s("b", &[1, 3, 8])).is_none());
    }

    #[test]
    fn json_round_trips() {
        let mut r = Report::new("census", &JobConfig::default());
        r.push(s("a", &[1, 2]));
        r.check("x", true, "ok");
        let back: Report = serde_json::from_str(&r.render_json()).unwrap();
        assert_eq!(back, r);
    }
}
