use vohd::closedform::{exact_log_power, LogPowerSpec};
use vohd::expr::OrderFunction;
use vohd::{Kind, Side};

fn main() -> vohd::Result<()> {
    let order = OrderFunction::parse("t/20", 1.0, 5.0)?;
    println!("{:>5} {:>6} {:>12} {:>12} {:>12}", "side", "gamma", "type 1", "type 2", "type 3");
    for side in [Side::Left, Side::Right] {
        for g in [0.5, 1.0, 2.0] {
            let spec = LogPowerSpec::new(side, g, 1.0, 5.0)?;
            let v: Vec<f64> = Kind::ALL
                .iter()
                .map(|&k| exact_log_power(&spec, k, &order, 3.0))
                .collect::<vohd::Result<_>>()?;
            println!("{side:>5} {g:>6} {:>12.8} {:>12.8} {:>12.8}", v[0], v[1], v[2]);
        }
    }
    Ok(())
}
