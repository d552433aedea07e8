//! Text, JSON, and CSV output for series, cycle indices, and class tables.

use std::fmt::Write as _;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::classes::ConjClass;
use crate::coeff::Coeff;
use crate::poly::Poly;
use crate::series::PowerSeries;
use crate::zindex::CycleIndexSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(format!(
                "unknown format {other:?} (expected text, json, or csv)"
            )),
        }
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

pub fn series<C: Coeff>(s: &PowerSeries<C>, q: u32, format: Format) -> String {
    match format {
        Format::Text => format!("{s}\n"),
        Format::Json => pretty(&json!({"q": q, "order": s.order(), "series": s.to_json()})),
        Format::Csv => {
            let mut out = String::from("n,coeff\n");
            for (n, c) in s.coeffs().iter().enumerate() {
                writeln!(out, "{n},{}", csv_field(&c.to_string())).unwrap();
            }
            out
        }
    }
}

pub fn cycle_index(z: &CycleIndexSeries, format: Format) -> String {
    match format {
        Format::Text => z.to_string(),
        Format::Json => pretty(&z.to_json()),
        Format::Csv => {
            let mut out = String::from("degree,monomial,coeff\n");
            for (m, c) in z.terms() {
                writeln!(out, "{},{},{}", m.degree(), csv_field(&m.to_string()), c).unwrap();
            }
            out
        }
    }
}

pub fn classes(classes: &[ConjClass], q: u32, format: Format) -> String {
    match format {
        Format::Text => {
            let mut out = String::new();
            for c in classes {
                writeln!(
                    out,
                    "{}  centralizer {}  size {}",
                    c.invariant, c.centralizer_order, c.class_size
                )
                .unwrap();
            }
            out
        }
        Format::Json => pretty(&json!({
            "q": q,
            "classes": classes.iter().map(|c| json!({
                "invariant": c.invariant.entries().iter().map(|((phi, i), e)| json!({
                    "phi": phi.to_string(), "i": i, "e": e,
                })).collect::<Vec<_>>(),
                "centralizer_order": c.centralizer_order.to_string(),
                "class_size": c.class_size.to_string(),
            })).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut out = String::from("invariant,centralizer_order,class_size\n");
            for c in classes {
                writeln!(
                    out,
                    "{},{},{}",
                    csv_field(&c.invariant.to_string()),
                    c.centralizer_order,
                    c.class_size
                )
                .unwrap();
            }
            out
        }
    }
}

pub fn polys(polys: &[Poly], q: u32, format: Format) -> String {
    match format {
        Format::Text => polys.iter().map(|p| format!("{p}\n")).collect(),
        Format::Json => pretty(&json!({
            "q": q,
            "polynomials": polys.iter().map(ToString::to_string).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut out = String::from("degree,polynomial\n");
            for p in polys {
                writeln!(out, "{},{}", p.deg(), p).unwrap();
            }
            out
        }
    }
}

/// A list of named values, e.g. per-dimension counts.
pub fn table(header: (&str, &str), rows: &[(String, String)], format: Format) -> String {
    match format {
        Format::Text => rows.iter().map(|(a, b)| format!("{a}: {b}\n")).collect(),
        Format::Json => pretty(&Value::Array(
            rows.iter()
                .map(|(a, b)| json!({header.0: a, header.1: b}))
                .collect(),
        )),
        Format::Csv => {
            let mut out = format!("{},{}\n", header.0, header.1);
            for (a, b) in rows {
                writeln!(out, "{},{}", csv_field(a), csv_field(b)).unwrap();
            }
            out
        }
    }
}
