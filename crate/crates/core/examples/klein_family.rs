//! The Klein family of symmetric partial cocycles on (QK4)* and the matching global cocycles
//! on the quotient by ⟨a⟩.

use std::sync::Arc;

use hopf_partial::exactlin::Field;
use hopf_partial::groups::{builtin_group, SubgroupRef};
use hopf_partial::twisted::{check_twisted, klein_family, partial_to_quotient};

fn main() -> hopf_partial::Result<()> {
    let q = Field::Rationals;
    let k4 = Arc::new(builtin_group("K4")?);
    let l = SubgroupRef::generated(k4.clone(), &[k4.index_of("a").unwrap()]);
    for (n, d) in [(1, 8), (1, 4), (-3, 7), (2, 1)] {
        let x = q.ratio(n, d)?;
        let (data, point) = klein_family(&x)?;
        let ok = check_twisted(&data).passed();
        let v = partial_to_quotient(&data, &l)?.v;
        println!("x = {:5}  y = {:8}  residual {}  suite {}  v(p_eL,p_eL) = {}", point.x, point.y, point.residual(), ok, v.coeffs[0]);
    }
    Ok(())
}
