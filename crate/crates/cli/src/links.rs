use clap::ValueEnum;
use sarkisov::table::compare;
use sarkisov::takeuchi::{enumerate_links, AlphaContraction, LinkSolution};
use serde::Serialize;

use crate::Failure;

#[derive(Clone, Copy, ValueEnum)]
pub enum AlphaFilter {
    All,
    E1,
    Cb,
    Dp,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum OutputFormat {
    Markdown,
    Csv,
    Json,
}

#[derive(clap::Args)]
pub struct Args {
    #[arg(long)]
    genus: i64,
    /// Drop links ruled out by the Hodge-number bound.
    #[arg(long)]
    hodge: bool,
    #[arg(long, value_enum, default_value_t = AlphaFilter::All)]
    alpha: AlphaFilter,
    #[arg(long, value_enum, default_value_t = OutputFormat::Markdown)]
    format: OutputFormat,
}

#[derive(Serialize)]
struct Row {
    row: Option<u32>,
    z1: String,
    z1_tilde_or_base: String,
    pa_gamma: i64,
    deg_gamma: i64,
    a_gamma: Option<i64>,
    alpha: String,
    max_deg_f: i64,
    x: i64,
    y: i64,
    k: Option<i64>,
    e: i64,
    hodge_feasible: bool,
    extra: bool,
}

const COLUMNS: [&str; 14] = [
    "row",
    "z1",
    "z1_tilde_or_base",
    "pa_gamma",
    "deg_gamma",
    "a_gamma",
    "alpha",
    "max_deg_f",
    "x",
    "y",
    "k",
    "e",
    "hodge_feasible",
    "extra",
];

#[derive(Serialize)]
struct Document<'a> {
    schema: u32,
    genus: i64,
    hodge_filter: bool,
    rows: &'a [Row],
}

fn keep(filter: AlphaFilter, a: &AlphaContraction) -> bool {
    matches!(
        (filter, a),
        (AlphaFilter::All, _)
            | (AlphaFilter::E1, AlphaContraction::DivisorialE1 { .. })
            | (AlphaFilter::Cb, AlphaContraction::ConicBundle { .. })
            | (AlphaFilter::Dp, AlphaContraction::DelPezzoFibration { .. })
    )
}

fn row(s: &LinkSolution, printed: Option<u32>, genus: i64) -> Row {
    let t = s.psi.target;
    Row {
        row: printed,
        z1: t.label(),
        z1_tilde_or_base: s.alpha.base_label(),
        pa_gamma: s.psi.curve.pa,
        deg_gamma: s.psi.curve.deg,
        a_gamma: (t.index() >= 2).then_some(s.psi.a),
        alpha: s.alpha.describe(),
        max_deg_f: s.max_deg_f,
        x: s.x,
        y: s.y,
        k: s.k,
        e: s.e,
        hodge_feasible: s.hodge_feasible,
        // Only genus 3 has a printed table to be extra to.
        extra: genus == 3 && printed.is_none(),
    }
}

fn markdown(rows: &[Row]) -> String {
    let cell = |v: Option<String>| v.unwrap_or_default();
    let mut out = format!("| {} |\n|{}\n", COLUMNS.join(" | "), "---|".repeat(COLUMNS.len()));
    for r in rows {
        let cells = [
            cell(r.row.map(|v| v.to_string())),
            r.z1.clone(),
            r.z1_tilde_or_base.clone(),
            r.pa_gamma.to_string(),
            r.deg_gamma.to_string(),
            cell(r.a_gamma.map(|v| v.to_string())),
            r.alpha.clone(),
            r.max_deg_f.to_string(),
            r.x.to_string(),
            r.y.to_string(),
            cell(r.k.map(|v| v.to_string())),
            r.e.to_string(),
            r.hodge_feasible.to_string(),
            r.extra.to_string(),
        ];
        out.push_str(&format!("| {} |\n", cells.join(" | ")));
    }
    out
}

fn csv(rows: &[Row]) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    if rows.is_empty() {
        w.write_record(COLUMNS).map_err(|e| Failure::Usage(e.to_string()))?;
    }
    for r in rows {
        w.serialize(r).map_err(|e| Failure::Usage(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn run(args: Args) -> Result<(), Failure> {
    let all = enumerate_links(args.genus, false).map_err(|e| Failure::Usage(e.to_string()))?;
    let printed = if args.genus == 3 { compare(&all).row_of } else { vec![None; all.len()] };
    let rows: Vec<Row> = all
        .iter()
        .zip(printed)
        .filter(|(s, _)| !args.hodge || s.hodge_feasible)
        .filter(|(s, _)| keep(args.alpha, &s.alpha))
        .map(|(s, r)| row(s, r, args.genus))
        .collect();
    let text = match args.format {
        OutputFormat::Markdown => markdown(&rows),
        OutputFormat::Csv => csv(&rows)?,
        OutputFormat::Json => {
            let doc = Document { schema: 1, genus: args.genus, hodge_filter: args.hodge, rows: &rows };
            serde_json::to_string_pretty(&doc).expect("rows serialize") + "\n"
        }
    };
    print!("{text}");
    Ok(())
}
