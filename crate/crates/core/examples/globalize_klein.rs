//! Globalization of the Klein cocycle at x = 1/8, the closure checks, and recovery of w̃.

use hopf_partial::exactlin::Field;
use hopf_partial::globalize::{build_globalization, cocommutative_closure_check, extract_wtilde, klein_wtilde_table};
use hopf_partial::twisted::klein_family;

fn main() -> hopf_partial::Result<()> {
    let q = Field::Rationals;
    let (data, _) = klein_family(&q.ratio(1, 8)?)?;
    let (x, _) = klein_wtilde_table(q)?;
    let g = build_globalization(&data, &x)?;
    println!("dim B = {} inside Hom(H,A) of dim {}", g.dim_b(), g.ambient.dim());
    print!("{}", cocommutative_closure_check(&g)?.render_text());
    let back = extract_wtilde(&g.global, &g.phi_in_b, &data)?;
    println!("recovered w̃ equals the input: {}", back.map == x);
    Ok(())
}
