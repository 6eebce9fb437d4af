use clap::ValueEnum;
use sarkisov::defect::{
    bound_index_two, bound_no_quadric, bound_with_quadric, main_theorem, search_bound, DefectBoundResult,
    QuarticContains, State, Step, Terminal, Witness,
};
use sarkisov::intersection::ContractionKind;

use crate::Failure;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Contains {
    None,
    Quadric,
    Plane,
}

#[derive(clap::Args)]
pub struct Args {
    /// Genus of an index-one midpoint.
    #[arg(long)]
    genus: Option<i64>,
    /// What the midpoint contains; `plane` needs genus 3.
    #[arg(long, value_enum)]
    contains: Option<Contains>,
    /// Index-two midpoint instead.
    #[arg(long)]
    index2: bool,
    /// `H^3` of the index-two midpoint.
    #[arg(long)]
    h3: Option<i64>,
    /// Also run the contraction-chain search and print its witness.
    #[arg(long)]
    witness: bool,
}

fn state(s: State) -> String {
    match s {
        State::IndexOne { degree } => format!("index 1, (-K)^3={degree}"),
        State::IndexTwo { d } => format!("index 2, H^3={d}"),
        State::Quadric => "Q".into(),
        State::ProjSpace => "P3".into(),
    }
}

fn kind(k: ContractionKind) -> String {
    match k {
        ContractionKind::E1 { pa, target_k } => format!("E1 pa={pa} -K.C={target_k}"),
        ContractionKind::E2 => "E2".into(),
        ContractionKind::E3 => "E3".into(),
        ContractionKind::E4 => "E4".into(),
    }
}

fn terminal(t: Terminal) -> &'static str {
    match t {
        Terminal::RankOneFano => "rank one Fano",
        Terminal::DelPezzoOverLine => "del Pezzo fibration over P1",
        Terminal::ConicBundleOverPlane => "conic bundle over P2",
        Terminal::ConicBundleOverQuadricSurface => "conic bundle over a quadric surface",
    }
}

fn print_witness(w: &Witness) {
    println!("witness defect: {}", w.defect());
    println!("  start: {}", state(w.start));
    for Step { kind: k, before, after } in &w.steps {
        println!("  {}: {} -> {}", kind(*k), state(*before), state(*after));
    }
    println!("  terminal: {}", terminal(w.terminal));
    if w.allowance > 0 {
        println!("  allowance: {}", w.allowance);
    }
}

fn usage(m: impl Into<String>) -> Failure {
    Failure::Usage(m.into())
}

fn index_one(g: i64, contains: Contains, witness: bool) -> Result<(), Failure> {
    let res: DefectBoundResult = match contains {
        Contains::Plane if g != 3 => return Err(usage("--contains plane is only valid with --genus 3")),
        Contains::Plane => main_theorem(QuarticContains::Plane),
        Contains::None => bound_no_quadric(g).map_err(|e| usage(e.to_string()))?,
        Contains::Quadric => bound_with_quadric(g).map_err(|e| usage(e.to_string()))?,
    };
    println!("bound: {}", res.bound);
    if let Some((n, m)) = res.plane_fibres {
        println!("reducible fibres: {n} into three planes, {m} into a plane and a quadric");
    }
    if witness && contains != Contains::Plane {
        let found = search_bound(g, contains == Contains::Quadric).map_err(|e| usage(e.to_string()))?;
        println!("search bound: {}", found.bound);
        if let Some(w) = &found.witness {
            print_witness(w);
        }
    }
    Ok(())
}

pub fn run(a: Args) -> Result<(), Failure> {
    if a.index2 {
        if a.genus.is_some() || a.contains.is_some() {
            return Err(usage("--index2 cannot be combined with --genus or --contains"));
        }
        let h3 = a.h3.ok_or_else(|| usage("--index2 needs --h3"))?;
        let res = bound_index_two(h3).map_err(|e| usage(e.to_string()))?;
        println!("rank cap: {}", res.rank_cap.expect("index-two bounds carry a rank cap"));
        println!("bound: {}", res.bound);
        if a.witness {
            if let Some(w) = &res.witness {
                print_witness(w);
            }
        }
        return Ok(());
    }
    if a.h3.is_some() {
        return Err(usage("--h3 needs --index2"));
    }
    let g = a.genus.ok_or_else(|| usage("give --genus G or --index2 --h3 D"))?;
    index_one(g, a.contains.unwrap_or(Contains::None), a.witness)
}
