//! Partial measurings of κK4 and (κK4)* on κ, over Q and F2.

use std::sync::Arc;

use hopf_partial::exactlin::Field;
use hopf_partial::groups::builtin_group;
use hopf_partial::partial::{classify_dual_group_algebra, classify_group_algebra};

fn main() -> hopf_partial::Result<()> {
    let k4 = Arc::new(builtin_group("K4")?);
    for f in classify_group_algebra(&k4, Field::Rationals)? {
        println!("QK4     λ = {}", f.lambda);
    }
    for f in classify_dual_group_algebra(&k4, Field::Rationals)? {
        println!("(QK4)*  λ = {}", f.lambda);
    }
    for f in classify_dual_group_algebra(&k4, Field::prime(2)?)? {
        println!("(F2K4)* λ = {}", f.lambda);
    }
    Ok(())
}
