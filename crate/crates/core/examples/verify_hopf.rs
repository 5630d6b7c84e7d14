//! Axiom sweeps for the builtin Hopf algebras and for the dual of Sweedler's algebra.

use hopf_partial::exactlin::Field;
use hopf_partial::groups::builtin_group;
use hopf_partial::hopf::{dual_group_algebra, dualize, group_algebra, sweedler_algebra};

fn main() -> hopf_partial::Result<()> {
    let q = Field::Rationals;
    let s3 = builtin_group("S3")?;
    let h4 = sweedler_algebra(q)?;
    let all = [
        ("QS3", group_algebra(&s3, q)),
        ("(QS3)*", dual_group_algebra(&s3, q)),
        ("H4*", dualize(&h4)?),
        ("H4", h4),
    ];
    for (name, h) in &all {
        let r = h.data().verify()?;
        println!("{name:7} dim {:2}  {} checks  {}", h.dim(), r.checks.len(), if r.passed() { "pass" } else { "FAIL" });
    }
    Ok(())
}
