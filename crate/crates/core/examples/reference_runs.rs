//! Writes both reference runs (CSV + SVG) into a directory, default ./reference-output.

use std::path::PathBuf;

use vohd::cli::{run_scenario, Scenario};

fn main() -> vohd::Result<()> {
    let dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| PathBuf::from("reference-output"));
    std::fs::create_dir_all(&dir).map_err(|e| vohd::Error::Io(e.to_string()))?;
    for scenario in [Scenario::LeftReference, Scenario::RightReference] {
        let report = run_scenario(scenario, &dir, 1e-10)?;
        for (kind, comparison) in &report.runs {
            println!("{} type {kind}\n{}", scenario.name(), comparison);
        }
        println!("{} files written to {}", report.files.len(), dir.display());
    }
    Ok(())
}
