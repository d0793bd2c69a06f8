//! Critical orders and sharp constants for a few exponents, with the
//! lower-bound functional evaluated independently next to each `A`.
//!
//! cargo run --release --example constants_table

use riesz_sharp::constants::{critical_order, sharp_lower_bound, SharpConstantBundle};

fn main() -> riesz_sharp::Result<()> {
    println!("{:>5} {:>8} {:>8} {:>13} {:>12} {:>12} {:>12}", "p", "s", "s*", "regime", "y~", "A", "lower");
    for p in [1.25, 2.0, 2.5, 3.0, 4.0, 8.0] {
        let star = critical_order(p)?;
        let mut orders = vec![1.0, 2.0, star];
        if p >= 2.0 {
            orders.push(2.0 * star);
        }
        for s in orders {
            let b = SharpConstantBundle::compute(p, s)?;
            let lb = sharp_lower_bound(p, s)?;
            let y = b.y_tilde.map_or("sup".to_string(), |y| format!("{y:.6}"));
            println!(
                "{p:>5} {s:>8.4} {star:>8.4} {:>13} {y:>12} {:>12.9} {:>12.9}",
                format!("{:?}", b.pair.regime),
                b.a_ps,
                lb.value
            );
        }
    }
    // s -> infinity: A tends to 1/sin(pi/p)
    for p in [2.5, 3.0, 4.0] {
        let a = SharpConstantBundle::compute(p, 1e4)?.a_ps;
        println!("p = {p}: A(s=1e4) = {a:.6}, 1/sin(pi/p) = {:.6}", 1.0 / (std::f64::consts::PI / p).sin());
    }
    Ok(())
}
