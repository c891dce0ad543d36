//! Log-space Laguerre polynomials at large order and argument.
//!
//! ```text
//! cargo run --example laguerre
//! ```
//! `L_n^α(−η)` overflows a double long before n reaches the thousands;
//! its logarithm stays well conditioned, and ratios of neighbouring orders
//! give the photon statistics of the projected state.

use tcm_lab::specfun::{laguerre_neg, laguerre_neg_index_moments, log_laguerre_neg};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!(
        "{:>6}{:>6}{:>10}{:>22}{:>16}",
        "n", "α", "η", "ln L_n^α(−η)", "L_{n−1}/L_n"
    );
    for (n, alpha, eta) in [
        (10u64, 0i64, 1.0),
        (100, 50, 25.0),
        (1000, 1000, 500.0),
        (5000, 2000, 1e4),
    ] {
        let ln_l = log_laguerre_neg(n, alpha, eta)?;
        let ratio = laguerre_neg(n as i64 - 1, alpha, eta)?.ratio(laguerre_neg(n as i64, alpha, eta)?);
        println!("{n:>6}{alpha:>6}{eta:>10}{ln_l:>22.10}{ratio:>16.10}");
    }
    let m = laguerre_neg_index_moments(1000, 1000, 500.0)?;
    println!(
        "index moments at n = α = 1000, η = 500: mean {:.6}, variance {:.6}",
        m.mean, m.variance
    );
    Ok(())
}
