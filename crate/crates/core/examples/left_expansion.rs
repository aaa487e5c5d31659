//! ln t on [1, 5] with α = t/20: integer-order expansions of all three types.

use vohd::closedform::{reference_exact, Reference};
use vohd::expansion::{approximate, build_moments, error_bound, ApproxSpec};
use vohd::expr::{Catalog, FunctionModel, OrderFunction};
use vohd::{Kind, Side};

fn main() -> vohd::Result<()> {
    let order = OrderFunction::parse("t/20", 1.0, 5.0)?;
    let grid = vec![1.5, 2.0, 3.0, 4.0, 5.0];
    for kind in Kind::ALL {
        println!("type {kind}");
        for big_n in [10, 20, 30] {
            let x = FunctionModel::from_catalog(Catalog::Ln, 1.0, 5.0, big_n + 1)?;
            let spec = ApproxSpec::new(Side::Left, kind, 1, big_n, 1.0, 5.0, grid.clone())?;
            let moments = build_moments(&x, &spec)?;
            let mut worst: f64 = 0.0;
            let mut widest: f64 = 0.0;
            for (i, &t) in grid.iter().enumerate() {
                let v = approximate(kind, &x, &order, &spec, &moments, i)?;
                worst = worst.max((v - reference_exact(Reference::LntLeft, kind, t)?).abs());
                widest = widest.max(error_bound(kind, &x, &order, &spec, t)?.value);
            }
            println!("  N = {big_n:2}: max error {worst:.3e}, max bound {widest:.3e}");
        }
    }
    Ok(())
}
