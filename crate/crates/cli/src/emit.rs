use std::io::Write;

use anyhow::Result;
use clap::ValueEnum;
use delannoy_core::Record;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Jsonl,
    Csv,
    Pretty,
}

/// Writes `records` in order. Everything goes through this one emitter.
pub fn emit(records: &[Record], format: Format, out: &mut impl Write) -> Result<()> {
    match format {
        Format::Jsonl => {
            for r in records {
                serde_json::to_writer(&mut *out, r)?;
                out.write_all(b"\n")?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["check", "params", "modulus", "pass", "witness"])?;
            for r in records {
                let modulus = r.modulus.as_ref().map(|m| m.to_string()).unwrap_or_default();
                w.write_record([r.check.as_str(), &r.params_string(";"), &modulus, if r.pass { "true" } else { "false" }, &r.witness_string(";")])?;
            }
            w.flush()?;
        }
        Format::Pretty => pretty(records, out)?,
    }
    out.flush()?;
    Ok(())
}

fn pretty(records: &[Record], out: &mut impl Write) -> Result<()> {
    let rows: Vec<[String; 5]> = records
        .iter()
        .map(|r| {
            [
                r.check.clone(),
                r.params_string(" "),
                r.modulus.as_ref().map(|m| m.to_string()).unwrap_or_else(|| "-".into()),
                if r.pass { "ok" } else { "FAIL" }.to_string(),
                r.witness_string(" "),
            ]
        })
        .collect();
    let header = ["check", "params", "modulus", "result", "witness"].map(String::from);
    let mut widths = header.clone().map(|h| h.len());
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    for row in std::iter::once(&header).chain(&rows) {
        let line: Vec<String> = row.iter().zip(widths).map(|(cell, w)| format!("{cell:<w$}")).collect();
        writeln!(out, "{}", line.join("  ").trim_end())?;
    }
    let failed = records.iter().filter(|r| !r.pass).count();
    writeln!(out, "{} checks, {failed} failed", records.len())?;
    Ok(())
}
