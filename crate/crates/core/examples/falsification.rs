//! The closed forms fail past the cutoffs: a negative master-function cell
//! for p = 3/2, and K exceeding K(0) above the critical order.
//!
//! cargo run --release --example falsification

use riesz_sharp::constants::{closed_form_a, critical_order, SharpConstantBundle};
use riesz_sharp::lemmas::falsify_beyond_cutoff;

fn main() -> riesz_sharp::Result<()> {
    let f = falsify_beyond_cutoff(1.5, critical_order(1.5)?)?;
    println!("p=1.5: min Phi {:.4e} at (y, t) = ({:.4}, {:.4})", f.value, f.witness[0], f.witness[1]);

    for (p, s) in [(3.0, 8.0), (4.0, 10.0), (6.0, 40.0)] {
        let f = falsify_beyond_cutoff(p, s)?;
        let a = SharpConstantBundle::compute(p, s)?.a_ps;
        println!(
            "p={p} s={s}: K(y~) - K(0) = {:.4e} at y~ = {:.6}; A = {a:.6} exceeds closed form {:.6}",
            f.value,
            f.witness[0],
            closed_form_a(p, s)
        );
    }
    Ok(())
}
