use vohd::closedform::{reference_exact, Reference};
use vohd::expansion::{approximate, build_moments, ApproxSpec};
use vohd::expr::{Catalog, FunctionModel, OrderFunction};
use vohd::{Kind, Side};

fn main() -> vohd::Result<()> {
    let (a, b) = (1.0, 5.0);
    let order = OrderFunction::parse("t/20", a, b)?;
    let grid = ApproxSpec::uniform_grid(Side::Right, a, b, 8);
    let x = FunctionModel::from_catalog(Catalog::RLogPow(1.0), a, b, 7)?;

    println!("{:>6} {:>14} {:>14} {:>14}", "t", "exact", "N = 2", "N = 6");
    for (i, &t) in grid.iter().enumerate() {
        let mut row = vec![reference_exact(Reference::Ln5tRight, Kind::Type3, t)?];
        for big_n in [2, 6] {
            let spec = ApproxSpec::new(Side::Right, Kind::Type3, 1, big_n, a, b, grid.clone())?;
            let moments = build_moments(&x, &spec)?;
            row.push(approximate(Kind::Type3, &x, &order, &spec, &moments, i)?);
        }
        println!("{t:>6.2} {:>14.10} {:>14.10} {:>14.10}", row[0], row[1], row[2]);
    }
    Ok(())
}
