use std::io::{self, Write};

use clap::ValueEnum;
use num_bigint::BigUint;
use serde_json::{json, Number, Value};
use wildcard_enum::oracle::Comparison;
use wildcard_enum::rows::JsonRow;
use wildcard_enum::RowFamily;

use crate::{Cli, Failure};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

pub struct Report<'a> {
    pub family: &'a RowFamily,
    /// Ground-set element named by each row position.
    pub legend: Vec<String>,
    /// Set for Horn input only.
    pub satisfiable: Option<bool>,
}

impl<'a> Report<'a> {
    pub fn new(family: &'a RowFamily, legend: Vec<String>) -> Self {
        Report {
            family,
            legend,
            satisfiable: None,
        }
    }
}

fn exact(n: &BigUint) -> Value {
    Value::Number(n.to_string().parse::<Number>().expect("decimal digits form a JSON number"))
}

fn emit(out: &mut dyn Write, value: &Value) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)
}

pub fn family(out: &mut dyn Write, cli: &Cli, report: &Report) -> Result<(), Failure> {
    let fam = report.family;
    let total = fam.cardinality()?;
    match cli.format {
        Format::Text if cli.count_only => writeln!(out, "{total}")?,
        Format::Text => {
            writeln!(out, "# legend {}", report.legend.join(" "))?;
            if report.satisfiable == Some(false) {
                writeln!(out, "# unsatisfiable")?;
            }
            for row in fam.rows() {
                writeln!(out, "{row}")?;
            }
            writeln!(out, "# rows {}", fam.len())?;
            writeln!(out, "# total {total}")?;
        }
        Format::Json => {
            let mut envelope = json!({
                "width": fam.width(),
                "legend": report.legend,
                "row_count": fam.len(),
                "cardinality": exact(&total),
            });
            if let Some(sat) = report.satisfiable {
                envelope["satisfiable"] = json!(sat);
            }
            if !cli.count_only {
                let rows: Vec<JsonRow> = fam.rows().iter().map(JsonRow::from).collect();
                envelope["rows"] = serde_json::to_value(rows).expect("rows serialize");
            }
            emit(out, &envelope)?;
        }
    }
    Ok(())
}

pub fn list(out: &mut dyn Write, cli: &Cli, items: &[String]) -> Result<(), Failure> {
    match cli.format {
        Format::Text if cli.count_only => writeln!(out, "{}", items.len())?,
        Format::Text => {
            for item in items {
                writeln!(out, "{item}")?;
            }
        }
        Format::Json if cli.count_only => emit(out, &json!({ "count": items.len() }))?,
        Format::Json => emit(out, &json!({ "count": items.len(), "items": items }))?,
    }
    Ok(())
}

pub fn comparison(
    out: &mut dyn Write,
    cli: &Cli,
    cmp: &Comparison,
    witness: Option<&[String]>,
) -> Result<(), Failure> {
    match cli.format {
        Format::Text if cli.count_only => writeln!(out, "{}", cmp.family_size)?,
        Format::Text => {
            let verdict = if cmp.equal { "agree" } else { "disagree" };
            writeln!(
                out,
                "{verdict}: engine {}, oracle {}",
                cmp.family_size, cmp.reference_size
            )?;
            if cmp.overlapping {
                writeln!(out, "rows overlap")?;
            }
            if let Some(w) = witness {
                let side = if cmp.extra.is_some() { "only in engine" } else { "only in oracle" };
                writeln!(out, "{side}: {{{}}}", w.join(","))?;
            }
        }
        Format::Json => emit(
            out,
            &json!({
                "equal": cmp.equal,
                "overlapping": cmp.overlapping,
                "engine": cmp.family_size,
                "oracle": cmp.reference_size,
                "witness": witness,
            }),
        )?,
    }
    Ok(())
}
