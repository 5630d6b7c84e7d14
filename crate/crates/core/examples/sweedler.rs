//! Partial cocycles of Sweedler's algebra on Q, and why none of them is symmetric.

use hopf_partial::exactlin::Field;
use hopf_partial::twisted::{check_twisted, sweedler_partial_cocycle, sweedler_symmetric_no_go};

fn main() -> hopf_partial::Result<()> {
    let q = Field::Rationals;
    for (lx, c) in [(1, 0), (2, 7), (0, 5)] {
        let d = sweedler_partial_cocycle(q, q.int(lx), q.int(c))?;
        let r = check_twisted(&d);
        println!("λx = {lx}, c = {c}: {}", r.first_failure_line());
    }
    let samples: Vec<_> = [0, 1, -2].iter().map(|&n| q.int(n)).chain([q.ratio(7, 3)?]).collect();
    print!("{}", sweedler_symmetric_no_go(q, &samples)?.render_text());
    Ok(())
}
