//! Writing a cocycle as an instance file, reading it back and checking it.

use hopf_partial::cli::instance::{Body, CocycleBody, InstanceFile, MeasuringBody, Section};
use hopf_partial::cli::instance::{AlgebraBody, BialgebraBody};
use hopf_partial::cli::resolve::lines_from_map;
use hopf_partial::cli::{parse_instance, print_instance, Resolver};
use hopf_partial::exactlin::Field;
use hopf_partial::twisted::{check_twisted, klein_family};

fn main() -> hopf_partial::Result<()> {
    let q = Field::Rationals;
    let (data, _) = klein_family(&q.ratio(-3, 7)?)?;
    let action = vec![
        ("p_e".to_string(), "1".to_string(), data.measuring.one_action(0).clone()),
        ("p_a".to_string(), "1".to_string(), data.measuring.one_action(1).clone()),
    ];
    let section = |name: &str, body| Section { name: name.into(), body };
    let file = InstanceFile {
        sections: vec![
            section("H", Body::Bialgebra(BialgebraBody::Builtin("dualgroupalg:K4".into()))),
            section("A", Body::Algebra(AlgebraBody::Builtin("base".into()))),
            section("M", Body::Measuring(MeasuringBody { hopf: "H".into(), algebra: "A".into(), action })),
            section(
                "w",
                Body::Cocycle(CocycleBody {
                    measuring: "M".into(),
                    omega: lines_from_map(&data.omega),
                    omega_prime: data.omega_prime.as_ref().map(lines_from_map),
                    restricts: None,
                    phi: None,
                }),
            ),
        ],
    };
    let text = print_instance(&file);
    print!("{text}");
    let parsed = parse_instance(&text, q)?;
    let back = Resolver::new(&parsed, q).cocycle("w")?;
    println!("# round trip identical: {}", back == data);
    println!("# {}", check_twisted(&back).first_failure_line());
    Ok(())
}
