//! Crossed products: the underline algebra for Klein x = 1/8, and its isomorphism with the
//! twisted group ring of the quotient.

use std::sync::Arc;

use hopf_partial::exactlin::Field;
use hopf_partial::groups::{builtin_group, klein_nontrivial_cocycle, SubgroupRef};
use hopf_partial::twisted::{klein_family, underline_algebra, underline_algebra_iso_dual, underline_algebra_iso_group};

fn main() -> hopf_partial::Result<()> {
    let q = Field::Rationals;
    let (data, _) = klein_family(&q.ratio(1, 8)?)?;
    let cp = underline_algebra(&data)?;
    print!("{}", cp.render_table());

    let k4 = Arc::new(builtin_group("K4")?);
    let iso = underline_algebra_iso_dual(&data, &SubgroupRef::generated(k4.clone(), &[1]))?;
    println!("dual iso: {}", iso.report.first_failure_line());
    let gamma = klein_nontrivial_cocycle(q)?;
    let iso = underline_algebra_iso_group(&k4, &SubgroupRef::whole(k4.clone()), &gamma)?;
    println!("group iso: {}", iso.report.first_failure_line());
    for (label, image) in &iso.images {
        println!("  {label} -> {image}");
    }
    Ok(())
}
