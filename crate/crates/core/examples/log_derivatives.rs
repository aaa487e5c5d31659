//! The sequence x_1 = t x', x_{k+1} = t x_k' for a few functions.

use vohd::expr::{FunctionModel, FunctionSource};

fn main() -> vohd::Result<()> {
    let t = 2.0;
    for src in ["lnt", "logpow(2.5)", "ln(t)^2", "t^2", "exp(t/10)", "sin(t)*ln(t)"] {
        let x = FunctionModel::from_source(&FunctionSource::parse(src)?, 1.0, 5.0, 5)?;
        let xs = x.x_sequence(t, 5)?;
        let shown: Vec<String> = xs.iter().map(|v| format!("{v:+.6e}")).collect();
        println!("{src:>14}  x_1..x_5 at t = {t}: {}", shown.join("  "));
    }
    Ok(())
}
