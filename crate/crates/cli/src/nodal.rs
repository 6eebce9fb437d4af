use std::path::{Path, PathBuf};

use sarkisov::nodal::{
    betti_bookkeeping, defect_lower_bound, nodal_defect, parse_quartic, verify_nodes, FieldMode, NodalConfiguration,
};

use crate::Failure;

#[derive(clap::Args)]
pub struct Args {
    /// Node file with a `# field: ...` header.
    #[arg(long)]
    nodes: PathBuf,
    /// Quartic the nodes should lie on.
    #[arg(long)]
    quartic: Option<PathBuf>,
    /// Arithmetic to use: the file's own exact field, or `float`.
    #[arg(long)]
    field: Option<FieldMode>,
    /// Relative singular-value threshold in float mode.
    #[arg(long)]
    tol: Option<f64>,
    /// b2 of the quartic, for the Betti numbers.
    #[arg(long, default_value_t = 1)]
    b2: i64,
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

pub fn run(a: Args) -> Result<(), Failure> {
    let mut cfg = NodalConfiguration::from_node_file(&read(&a.nodes)?)
        .map_err(|e| Failure::Usage(format!("{}: {e}", a.nodes.display())))?;
    match a.field {
        Some(FieldMode::Float) if cfg.field() != FieldMode::Float => cfg = cfg.to_float(),
        Some(f) if f != cfg.field() => {
            return Err(Failure::Usage(format!("{}: file is in {} mode, not {f}", a.nodes.display(), cfg.field())))
        }
        _ => {}
    }
    if let Some(tol) = a.tol {
        if cfg.field() != FieldMode::Float {
            return Err(Failure::Usage("--tol only applies in float mode".into()));
        }
        cfg = cfg.with_tolerance(tol).map_err(|e| Failure::Usage(e.to_string()))?;
    }
    if let Some(path) = &a.quartic {
        let f = parse_quartic(&read(path)?).map_err(|e| Failure::Usage(format!("{}:{e}", path.display())))?;
        cfg = cfg.with_quartic(f);
    }

    let d = nodal_defect(&cfg);
    println!("field: {}", cfg.field());
    println!("nodes: {}", d.nodes);
    println!("rank: {}", d.rank);
    println!("defect: {}", d.defect);
    println!("lower bound: {}", defect_lower_bound(d.nodes as u64));

    if cfg.quartic().is_none() {
        println!("hypotheses: assumed (no quartic given, nodes not verified)");
        return Ok(());
    }
    let report = verify_nodes(&cfg).map_err(|e| Failure::Usage(e.to_string()))?;
    for (i, c) in report.nodes.iter().enumerate() {
        if !c.passed() {
            println!(
                "node {}: on quartic {}, singular {}, ordinary {}",
                i + 1,
                c.on_hypersurface,
                c.critical,
                c.ordinary
            );
        }
    }
    let bad = report.failures().count();
    println!("verified: {}/{}", report.nodes.len() - bad, report.nodes.len());
    println!("hypotheses: {}", if bad == 0 { "verified" } else { "failed" });
    match betti_bookkeeping(d.nodes as i64, d.defect as i64, a.b2) {
        Ok(b) => {
            println!("b3: {}", b.b3);
            println!("b2 small resolution: {}", b.b2_small_resolution);
            println!("b2 blow-up: {}", b.b2_blowup);
        }
        Err(e) => eprintln!("warning: {e}"),
    }
    if bad > 0 {
        return Err(Failure::Verification(format!("{bad} node(s) are not ordinary double points of the quartic")));
    }
    Ok(())
}
