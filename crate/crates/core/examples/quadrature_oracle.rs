//! Direct quadrature against the closed form, for an order that is not constant.

use vohd::closedform::{exact_log_power, LogPowerSpec};
use vohd::expr::{Catalog, FunctionModel, OrderFunction};
use vohd::oracle::{evaluate, QuadratureConfig};
use vohd::{Kind, Side};

fn main() -> vohd::Result<()> {
    let (a, b) = (1.0, 5.0);
    let order = OrderFunction::parse("0.3+0.1*sin(t)", a, b)?;
    let x = FunctionModel::from_catalog(Catalog::LogPow(0.5), a, b, 2)?;
    let spec = LogPowerSpec::new(Side::Left, 0.5, a, b)?;
    let cfg = QuadratureConfig::default();

    for kind in Kind::ALL {
        for t in [1.001, 1.5, 3.0, 5.0] {
            let q = evaluate(Side::Left, kind, &x, &order, t, &cfg)?;
            let c = exact_log_power(&spec, kind, &order, t)?;
            println!("type {kind}  t = {t:<5}  quadrature {q:+.15}  exact {c:+.15}  diff {:.1e}", (q - c).abs());
        }
    }

    // an unreachable tolerance is reported, not silently accepted
    let tight = QuadratureConfig { tolerance: 1e-30, ..cfg };
    if let Err(e) = evaluate(Side::Left, Kind::Type2, &x, &order, 3.0, &tight) {
        println!("tolerance 1e-30: {e}");
    }
    Ok(())
}
