//! The a-priori bound for (ln t)^3: the printed form uses max|x'_N|, which
//! vanishes for N ≥ 3 here, the other uses max|x'_n|.

use vohd::closedform::{exact_log_power, LogPowerSpec};
use vohd::expansion::{approximate, bound_stability, build_moments, error_bound_with, ApproxSpec, BoundVariant, BOUND_SAMPLES};
use vohd::expr::{Catalog, FunctionModel, OrderFunction};
use vohd::{Kind, Side};

fn main() -> vohd::Result<()> {
    let (a, b) = (1.0, 5.0);
    let order = OrderFunction::parse("t/20", a, b)?;
    let x = FunctionModel::from_catalog(Catalog::LogPow(3.0), a, b, 31)?;
    let exact = LogPowerSpec::new(Side::Left, 3.0, a, b)?;
    let t = 3.0;

    for kind in Kind::ALL {
        for big_n in [10, 20, 30] {
            let spec = ApproxSpec::new(Side::Left, kind, 1, big_n, a, b, vec![t])?;
            let moments = build_moments(&x, &spec)?;
            let err = (approximate(kind, &x, &order, &spec, &moments, 0)? - exact_log_power(&exact, kind, &order, t)?).abs();
            let printed = error_bound_with(kind, &x, &order, &spec, t, BoundVariant::Printed, BOUND_SAMPLES)?;
            let derived = error_bound_with(kind, &x, &order, &spec, t, BoundVariant::Derived, BOUND_SAMPLES)?;
            let drift = bound_stability(kind, &x, &order, &spec, t, BoundVariant::Derived)?;
            println!(
                "type {kind} N = {big_n:2}: error {err:.3e}  bound(x'_N) {:.3e}  bound(x'_n) {:.3e}  (256→512 samples: {drift:.1e})",
                printed.value, derived.value
            );
        }
    }
    Ok(())
}
