//! JSON, CSV and TeX emitters.

use anyhow::{bail, Result};
use serde_json::Value;

use crate::report::RunReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Tex,
}

impl Format {
    pub fn parse(text: &str) -> Result<Format> {
        match text {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "tex" => Ok(Format::Tex),
            other => bail!("output format must be json, csv or tex, not {other}"),
        }
    }
}

pub fn emit(r: &RunReport, f: Format) -> Result<String> {
    match f {
        Format::Json => Ok(serde_json::to_string_pretty(r)? + "\n"),
        Format::Csv => csv(&r.body),
        Format::Tex => Ok(tex(&r.body)),
    }
}

fn usizes(v: &Value) -> Vec<u64> {
    v.as_array().map(|a| a.iter().filter_map(Value::as_u64).collect()).unwrap_or_default()
}

/// Every check report in the body, in key order.
fn reports(body: &Value) -> Vec<(&str, &Value)> {
    let Some(m) = body.as_object() else { return Vec::new() };
    m.iter()
        .filter(|(_, v)| v.get("entries").is_some_and(Value::is_array))
        .map(|(k, v)| (k.as_str(), v))
        .collect()
}

/// `degree,dim[,invariant_dim]` for Ext bodies, `report,label,status,detail` otherwise.
fn csv(body: &Value) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    if let Some(e) = body.get("ext") {
        let dims = usizes(&e["dims"]);
        let inv = e.get("invariant_dims").map(usizes);
        match &inv {
            Some(_) => w.write_record(["degree", "dim", "invariant_dim"])?,
            None => w.write_record(["degree", "dim"])?,
        }
        for (n, d) in dims.iter().enumerate() {
            let mut row = vec![n.to_string(), d.to_string()];
            if let Some(inv) = &inv {
                row.push(inv.get(n).map(u64::to_string).unwrap_or_default());
            }
            w.write_record(&row)?;
        }
    } else {
        w.write_record(["report", "label", "status", "detail"])?;
        for (name, rep) in reports(body) {
            for e in rep["entries"].as_array().into_iter().flatten() {
                let s = |k: &str| e.get(k).and_then(Value::as_str).unwrap_or("").to_string();
                w.write_record([name.to_string(), s("label"), s("status"), s("detail")])?;
            }
        }
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn tex_escape(s: &str) -> String {
    let mut out = String::new();
    for c in s.chars() {
        match c {
            '\\' => out.push_str("\\textbackslash{}"),
            '&' | '%' | '$' | '#' | '_' | '{' | '}' => {
                out.push('\\');
                out.push(c);
            }
            '^' => out.push_str("\\^{}"),
            '~' => out.push_str("\\~{}"),
            _ => out.push(c),
        }
    }
    out
}

/// A tabular of Ext dimensions, or of report verdicts.
fn tex(body: &Value) -> String {
    let mut out = String::new();
    if let Some(e) = body.get("ext") {
        let dims = usizes(&e["dims"]);
        let inv = e.get("invariant_dims").map(usizes);
        out.push_str(&format!("\\begin{{tabular}}{{l|{}}}\n", "c".repeat(dims.len())));
        let row = |name: &str, v: &[u64]| {
            let cells: Vec<String> = v.iter().map(u64::to_string).collect();
            format!("{name} & {} \\\\\n", cells.join(" & "))
        };
        out.push_str(&row("$n$", &(0..dims.len() as u64).collect::<Vec<_>>()));
        out.push_str("\\hline\n");
        out.push_str(&row("$\\dim \\mathrm{Ext}^n$", &dims));
        if let Some(inv) = inv {
            out.push_str(&row("$\\dim (\\mathrm{Ext}^n)^K$", &inv));
        }
        out.push_str("\\end{tabular}\n");
    } else {
        out.push_str("\\begin{tabular}{lll}\n");
        for (name, rep) in reports(body) {
            for e in rep["entries"].as_array().into_iter().flatten() {
                let s = |k: &str| tex_escape(e.get(k).and_then(Value::as_str).unwrap_or(""));
                out.push_str(&format!("{} & {} & {} \\\\\n", tex_escape(name), s("label"), s("status")));
            }
        }
        out.push_str("\\end{tabular}\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn csv_columns() {
        let body = json!({"ext": {"dims": [1, 0, 1], "invariant_dims": [1, 0, 1]}});
        assert_eq!(csv(&body).unwrap(), "degree,dim,invariant_dim\n0,1,1\n1,0,0\n2,1,1\n");
        let body = json!({"ext": {"dims": [1, 1]}});
        assert_eq!(csv(&body).unwrap(), "degree,dim\n0,1\n1,1\n");
    }

    #[test]
    fn tex_tabular() {
        let t = tex(&json!({"ext": {"dims": [1, 0]}}));
        assert!(t.starts_with("\\begin{tabular}{l|cc}"));
        assert!(t.contains("$\\dim \\mathrm{Ext}^n$ & 1 & 0 \\\\"));
    }

    #[test]
    fn formats() {
        assert_eq!(Format::parse("tex").unwrap(), Format::Tex);
        assert!(Format::parse("xml").is_err());
    }
}
