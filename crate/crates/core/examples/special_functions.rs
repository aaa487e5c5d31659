use vohd::specfun::{beta, digamma, gamma, gamma_ratio, ln_gamma};

fn main() -> vohd::Result<()> {
    for x in [0.5, 1.0, 2.5, 10.0, -0.7] {
        println!("Γ({x}) = {:.15}", gamma(x)?);
    }
    println!("ln Γ(150) = {:.12}", ln_gamma(150.0)?);
    println!("ψ(1) = {:.16}", digamma(1.0)?);
    println!("B(0.5, 0.5) = {:.16} (π)", beta(0.5, 0.5)?);

    // Γ(α-1+p)/Γ(α-1) as a product, fine even though α-1 < 0
    let alpha = 0.25;
    for p in 0..5 {
        println!("Γ({a}+{p})/Γ({a}) = {:+.12}", gamma_ratio(alpha - 1.0, p), a = alpha - 1.0);
    }
    Ok(())
}
