//! Acceptance suite: one PASS/FAIL line per criterion. Runs without the libtest harness so
//! the lines always reach stdout; exits nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::Command;
use std::sync::Arc;

use hopf_partial::cli::instance::Body;
use hopf_partial::cli::resolve::map_from_lines;
use hopf_partial::cli::{parse_map_file, InstanceFile, Resolver};
use hopf_partial::convolution::{idempotents_e_f1_f2, is_central, ConvMap};
use hopf_partial::exactlin::{Field, Matrix, Scalar, Vector};
use hopf_partial::globalize::{
    build_globalization, check_wtilde, cocommutative_closure_check, extract_wtilde, klein_wtilde_table,
    verify_klein_wtilde_equations,
};
use hopf_partial::groups::{builtin_group, klein_nontrivial_cocycle, FinGroup, SubgroupRef};
use hopf_partial::hopf::{dual_group_algebra, group_algebra, sweedler_algebra, FinBialgebra};
use hopf_partial::partial::{
    brute_force_dual_group_algebra, brute_force_group_algebra, check_measuring, check_partial_action,
    classify_dual_group_algebra, classify_group_algebra, exhaustive_prime_field, sweedler_measuring,
};
use hopf_partial::twisted::{
    build_crossed_product, check_par_glob_cocycle, check_twisted, group_cocycle_extension, klein_family,
    partial_to_quotient, quotient_to_partial, sweedler_partial_cocycle, underline_algebra, underline_algebra_iso_dual,
    underline_algebra_iso_group, TwistedPartialActionData,
};
use hopf_partial::Report;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

const Q: Field = Field::Rationals;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn passed(r: &Report, what: &str) -> Result<(), String> {
    ensure(r.passed(), format!("{what}: {}", r.first_failure_line()))
}

fn ok<T>(r: hopf_partial::Result<T>, what: &str) -> Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

fn q(n: i64, d: i64) -> Scalar {
    Q.ratio(n, d).unwrap()
}

fn k4() -> Arc<FinGroup> {
    Arc::new(builtin_group("K4").unwrap())
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn keys(vs: impl IntoIterator<Item = Vector>) -> BTreeSet<String> {
    vs.into_iter().map(|v| v.to_string()).collect()
}

/// Subgroups of K4 as bitmasks over `e, a, b, ab`, with K4 multiplication as xor.
fn k4_subgroups() -> Vec<Vec<usize>> {
    (0u32..16)
        .filter(|m| m & 1 == 1)
        .map(|m| (0..4).filter(|g| m >> g & 1 == 1).collect::<Vec<usize>>())
        .filter(|s| s.iter().all(|&x| s.iter().all(|&y| s.contains(&(x ^ y)))))
        .collect()
}

fn hopf_axioms() -> Outcome {
    let k4 = k4();
    let s3 = builtin_group("S3").unwrap();
    let algebras: Vec<(&str, FinBialgebra)> = vec![
        ("QK4", group_algebra(&k4, Q)),
        ("(QK4)*", dual_group_algebra(&k4, Q)),
        ("QS3", group_algebra(&s3, Q)),
        ("(QS3)*", dual_group_algebra(&s3, Q)),
        ("H4", ok(sweedler_algebra(Q), "H4")?),
    ];
    let mut checks = 0;
    for (name, h) in &algebras {
        ensure(h.antipode.is_some(), format!("{name} has no antipode"))?;
        let r = ok(h.data().verify(), name)?;
        passed(&r, name)?;
        checks += r.checks.len();
    }
    Ok(format!("5 Hopf algebras, {checks} sweeps"))
}

fn classification() -> Outcome {
    let k4 = k4();
    let subgroups = k4_subgroups();
    ensure(subgroups.len() == 5, "subgroup oracle")?;

    // κK4 on κ: λ(g)λ(h) = λ(g)λ(gh), λ(g) = λ(g)², λ(e) = 1. Idempotent values force {0,1}.
    let group_oracle: Vec<Vector> = (0u32..16)
        .map(|m| (0..4).map(|g| (m >> g & 1) as i64).collect::<Vec<_>>())
        .filter(|l| l[0] == 1 && (0..4).all(|g| (0..4).all(|h| l[g] * l[h] == l[g] * l[g ^ h])))
        .map(|l| Vector::from_ints(Q, &l))
        .collect();
    let found = ok(classify_group_algebra(&k4, Q), "classify QK4")?;
    ensure(found.len() == 5, format!("QK4 count {}", found.len()))?;
    let found = keys(found.into_iter().map(|f| f.lambda));
    ensure(found == keys(group_oracle), "QK4 set differs from the oracle")?;
    ensure(found == keys(brute_force_group_algebra(&k4, Q)), "QK4 brute force differs")?;

    let dual_oracle: Vec<Vector> = subgroups
        .iter()
        .map(|s| {
            let w = q(1, s.len() as i64);
            Vector::from_vec((0..4).map(|g| if s.contains(&g) { w.clone() } else { Q.zero() }).collect())
        })
        .collect();
    let found = ok(classify_dual_group_algebra(&k4, Q), "classify (QK4)*")?;
    ensure(found.len() == 5, format!("(QK4)* count {}", found.len()))?;
    let found = keys(found.into_iter().map(|f| f.lambda));
    ensure(found == keys(dual_oracle), "(QK4)* set differs from 1/|L| on L")?;
    ensure(found == keys(brute_force_dual_group_algebra(&k4, Q)), "(QK4)* brute force differs")?;
    let half = q(1, 2);
    let on_a = Vector::from_vec(vec![half.clone(), half, Q.zero(), Q.zero()]);
    ensure(found.contains(&on_a.to_string()), "λ(p_e) = λ(p_a) = 1/2 missing")?;

    // (F2 K4)* on F2: Σλ = 1, λ_g = Σ_x λ_{g+x}λ_x, λ_g λ_f = λ_{g+f} λ_f, all mod 2.
    let f2 = ok(Field::prime(2), "F2")?;
    let oracle: Vec<Vector> = (0u32..16)
        .map(|m| (0..4).map(|g| (m >> g & 1) as i64).collect::<Vec<_>>())
        .filter(|l| {
            l.iter().sum::<i64>() % 2 == 1
                && (0..4).all(|g| (0..4).map(|x| l[g ^ x] * l[x]).sum::<i64>() % 2 == l[g])
                && (0..4).all(|g| (0..4).all(|f| l[g] * l[f] == l[g ^ f] * l[f]))
        })
        .map(|l| Vector::from_ints(f2, &l))
        .collect();
    ensure(oracle.len() == 1, "F2 oracle")?;
    let found = ok(classify_dual_group_algebra(&k4, f2), "classify over F2")?;
    ensure(found.len() == 1, format!("F2 count {}", found.len()))?;
    let h = Arc::new(dual_group_algebra(&k4, f2));
    let exhaustive = ok(exhaustive_prime_field(&h), "exhaustive F2")?;
    ensure(keys(exhaustive) == keys(oracle.clone()), "F2 exhaustive search differs")?;
    ensure(keys(found.into_iter().map(|f| f.lambda)) == keys(oracle), "F2 classification differs")?;
    Ok("counts 5 / 5 / 1, brute force agrees".into())
}

fn sweedler() -> Outcome {
    let samples = [q(0, 1), q(1, 1), q(-2, 1), q(7, 3)];
    for lx in &samples {
        let f = ok(sweedler_measuring(Q, lx.clone(), false), "sweedler measuring")?;
        passed(&check_measuring(&f.measuring()), &format!("PM at λx = {lx}"))?;
        passed(&check_partial_action(&f.measuring()), &format!("partial action at λx = {lx}"))?;
    }
    for (lx, c) in [(1, 0), (2, 7), (0, 5)] {
        let d = ok(sweedler_partial_cocycle(Q, q(lx, 1), q(c, 1)), "sweedler cocycle")?;
        let r = check_twisted(&d);
        passed(&r, &format!("TPA at ({lx}, {c})"))?;
        for id in ["TPA1.PM1", "TPA1.PM2", "TPA1.PM3", "TPA2", "TPA3", "TPA4", "TPA5"] {
            ensure(r.check(id).is_some_and(|c| c.passed()), format!("{id} missing at ({lx}, {c})"))?;
        }
    }
    for lx in &samples {
        let md = ok(sweedler_measuring(Q, lx.clone(), false), "sweedler measuring")?.measuring();
        ensure(!md.is_global(), "partial sample is global")?;
        let (_, f1, _) = idempotents_e_f1_f2(&md);
        ensure(!is_central(&f1), format!("f1 central at λx = {lx}"))?;
    }
    let md = ok(sweedler_measuring(Q, Q.zero(), true), "ε")?.measuring();
    let (_, f1, _) = idempotents_e_f1_f2(&md);
    ensure(is_central(&f1), "f1 not central at λ = ε")?;
    Ok("PM for 4 λx, TPA for 3 (λx, c), f1 central only at ε".into())
}

fn klein_locus() -> Outcome {
    // Trivial cocycle for λ = 1/2 on ⟨a⟩: ω(p_g,p_h) = λ_{g+h} λ_h.
    let lam = [q(1, 2), q(1, 2), Q.zero(), Q.zero()];
    let (d, _) = ok(klein_family(&q(1, 4)), "x = 1/4")?;
    for g in 0..4 {
        for h in 0..4 {
            let want = &lam[g ^ h] * &lam[h];
            ensure(d.omega.coeffs[g * 4 + h] == Vector::from_vec(vec![want]), format!("1/4 at ({g},{h})"))?;
        }
    }
    ensure(d.omega == TwistedPartialActionData::trivial(d.measuring.clone()).omega, "1/4 not trivial")?;

    let (d, p) = ok(klein_family(&q(1, 8)), "x = 1/8")?;
    ensure(d.omega_prime.as_ref() == Some(&d.omega), "ω′ ≠ ω at 1/8")?;
    ensure(p.y == q(1, 8), "y ≠ 1/8")?;
    passed(&check_twisted(&d), "1/8")?;

    let mut rng = ChaCha8Rng::seed_from_u64(0x6b6c65696e);
    let mut tried = 0;
    while tried < 20 {
        let (n, m) = (rng.gen_range(-60i64..=60), rng.gen_range(1i64..=40));
        if 32 * n == 6 * m {
            continue;
        }
        tried += 1;
        let x = q(n, m);
        let (d, p) = ok(klein_family(&x), "random x")?;
        passed(&check_twisted(&d), &format!("x = {x}"))?;
        let y = ok((&(&Q.int(6) * &x) - &Q.one()).checked_div(&(&(&Q.int(32) * &x) - &Q.int(6))), "y")?;
        ensure(p.y == y, format!("y at x = {x}"))?;
        let res = &(&(&(&Q.int(32) * &x) * &p.y) - &(&Q.int(6) * &(&x + &p.y))) + &Q.one();
        ensure(res.is_zero(), format!("off the curve at x = {x}"))?;
    }
    Ok("1/4 trivial, 1/8 self-inverse, 20 random points on the curve".into())
}

fn quotient() -> Outcome {
    let (d, _) = ok(klein_family(&q(1, 8)), "x = 1/8")?;
    let g = k4();
    let l = SubgroupRef::generated(g.clone(), &[1]);
    let qc = ok(partial_to_quotient(&d, &l), "partial → quotient")?;
    passed(&qc.report, "quotient")?;
    ensure(qc.v.coeffs[0] == Vector::from_vec(vec![q(1, 2)]), format!("v(p_eL,p_eL) = {}", qc.v.coeffs[0]))?;
    let back = ok(quotient_to_partial(&l, &qc.v), "quotient → partial")?;
    ensure(back.omega == d.omega, "ω differs after round trip")?;
    ensure(back.omega_prime == d.omega_prime, "ω′ differs after round trip")?;
    let pg = check_par_glob_cocycle(&d.omega, &g);
    passed(&pg, "ParGlobCocycle")?;
    let cases = pg.check("ParGlobCocycle").and_then(|c| c.values.get("cases").cloned());
    ensure(cases.as_deref() == Some("64"), "not 64 triples")?;
    Ok("v(p_eL,p_eL) = 1/2, round trip identical, 64 triples".into())
}

fn crossed_products() -> Outcome {
    let g = k4();
    let mut instances: Vec<(String, TwistedPartialActionData)> = Vec::new();
    for (n, m) in [(1, 8), (1, 4), (-3, 7), (5, 2)] {
        instances.push((format!("klein {n}/{m}"), ok(klein_family(&q(n, m)), "klein")?.0));
    }
    for (lx, c) in [(1, 0), (2, 7), (0, 5)] {
        instances.push((format!("sweedler ({lx},{c})"), ok(sweedler_partial_cocycle(Q, q(lx, 1), q(c, 1)), "sweedler")?));
    }
    let gamma = ok(klein_nontrivial_cocycle(Q), "γ")?;
    let whole = SubgroupRef::whole(g.clone());
    instances.push(("QK4 γ".into(), ok(group_cocycle_extension(&g, &whole, &gamma), "extension")?));

    for (name, d) in &instances {
        let cp = ok(build_crossed_product(d), name)?;
        passed(&cp.report, name)?;
        passed(&cp.algebra.verify(), name)?;
        let u = ok(underline_algebra(d), name)?;
        passed(&u.report, name)?;
        if name.starts_with("klein") {
            ensure(u.dim() == 2, format!("{name}: dim {}", u.dim()))?;
            // span of λ(p_{g+x}) p_x over g
            let lam = &d.measuring;
            let rows = (0..4)
                .map(|gi| Vector::from_vec((0..4).map(|x| lam.one_action(gi ^ x).as_slice()[0].clone()).collect()))
                .collect();
            ensure(Matrix::from_rows(Q, 4, rows).rank() == u.dim(), format!("{name}: rank oracle"))?;
        }
    }

    let iso = ok(underline_algebra_iso_group(&g, &whole, &gamma), "iso group")?;
    passed(&iso.report, "iso group")?;
    let (d, _) = ok(klein_family(&q(1, 8)), "klein")?;
    let iso = ok(underline_algebra_iso_dual(&d, &SubgroupRef::generated(g, &[1])), "iso dual")?;
    passed(&iso.report, "iso dual")?;
    Ok(format!("{} instances associative and unital, dim 2, both isomorphisms", instances.len()))
}

fn expected_wtilde() -> Result<(ConvMap, ConvMap), String> {
    let (x, y) = ok(klein_wtilde_table(Q), "table")?;
    let idx = |g: usize, h: usize| g * 4 + h;
    let (e, b) = (0, 2);
    let mut want = vec![Vector::from_vec(vec![Q.zero()]); 16];
    want[idx(e, e)] = Vector::from_vec(vec![q(1, 2)]);
    want[idx(e, b)] = Vector::from_vec(vec![q(1, 2)]);
    want[idx(b, e)] = Vector::from_vec(vec![q(1, 2)]);
    want[idx(b, b)] = Vector::from_vec(vec![q(-1, 2)]);
    ensure(x.coeffs == want, "X differs from the table")?;
    ensure(y == x, "Y differs from X")?;
    Ok((x, y))
}

fn globalization() -> Outcome {
    let (d, _) = ok(klein_family(&q(1, 8)), "klein")?;
    let (x, y) = expected_wtilde()?;
    passed(&ok(check_wtilde(&d, &x), "check_wtilde")?.report, "check_wtilde")?;
    passed(&ok(verify_klein_wtilde_equations(&d, &x, &y), "equations")?, "equations")?;
    let g = ok(build_globalization(&d, &x), "build")?;
    passed(&g.report, "globalization")?;
    let required = [
        "global.PM1",
        "global.PM2",
        "global.PM3",
        "global.unit_action",
        "law_of_composition",
        "law_of_cocycles",
        "u.normalized",
        "u.inverse",
        "ideal.i",
        "ideal.ii",
        "ideal.iii",
        "ideal.iv",
        "phi.injective",
        "phi.multiplicative",
        "induced.v",
        "induced.v_prime",
        "B.closed_under_action",
    ];
    for id in required {
        ensure(g.report.check(id).is_some_and(|c| c.passed()), format!("{id} missing"))?;
    }
    let back = ok(extract_wtilde(&g.global, &g.phi_in_b, &d), "extract")?;
    passed(&back.report, "extract")?;
    for id in ["globcocycle1", "globcocycle2"] {
        ensure(back.report.checks.iter().any(|c| c.id.ends_with(id) && c.passed()), format!("extract {id}"))?;
    }
    ensure(back.map == x, "extracted w̃ differs")?;
    Ok(format!("dim B = {}, {} checks, w̃ recovered", g.dim_b(), g.report.checks.len()))
}

fn closure() -> Outcome {
    let g = k4();
    let gamma = ok(klein_nontrivial_cocycle(Q), "γ")?;
    let d = ok(group_cocycle_extension(&g, &SubgroupRef::whole(g.clone()), &gamma), "extension")?;
    let group = ok(build_globalization(&d, &d.omega), "group globalization")?;
    let (k, _) = ok(klein_family(&q(1, 8)), "klein")?;
    let (x, _) = expected_wtilde()?;
    let klein = ok(build_globalization(&k, &x), "klein globalization")?;
    for (name, glob) in [("QK4", &group), ("(QK4)*", &klein)] {
        let r = ok(cocommutative_closure_check(glob), name)?;
        passed(&r, name)?;
        for id in ["product", "theta", "multiplier"] {
            ensure(r.check(id).is_some_and(|c| c.passed()), format!("{name}: {id} missing"))?;
        }
    }
    Ok("QK4 and (QK4)* closed".into())
}

fn cli_exit(args: &[&str]) -> i32 {
    Command::new(env!("CARGO_BIN_EXE_hopf-partial"))
        .args(args)
        .env_remove("HOPF_PARTIAL_FIELD")
        .output()
        .map(|o| o.status.code().unwrap_or(-1))
        .unwrap_or(-1)
}

fn named_failure(r: &Report, what: &str) -> Result<String, String> {
    let bad = r.first_failure().ok_or(format!("{what}: no failure"))?;
    let cex = bad.counterexample.clone().ok_or(format!("{what}: no counterexample"))?;
    ensure(!cex.is_empty(), format!("{what}: empty counterexample"))?;
    Ok(format!("{} at ({})", bad.id, cex.join(", ")))
}

fn negative_controls() -> Outcome {
    let read = |name: &str| ok(InstanceFile::read(&fixture(name), Q), name);
    let file = read("broken_coassoc.bialg")?;
    let name = file.sections[0].name.clone();
    let r = ok(ok(Resolver::new(&file, Q).bialgebra_data(&name), "bialgebra")?.verify(), "verify")?;
    let coassoc = named_failure(&r, "coassociativity")?;
    ensure(coassoc.contains("coassoc"), format!("wrong failure {coassoc}"))?;

    let file = read("non_subgroup.meas")?;
    let name = file.sections.iter().find(|s| matches!(s.body, Body::Measuring(_))).unwrap().name.clone();
    let md = ok(Resolver::new(&file, Q).measuring(&name), "measuring")?;
    let support = named_failure(&check_partial_action(&md), "non-subgroup support")?;

    let (d, _) = ok(klein_family(&q(1, 8)), "klein")?;
    let text = std::fs::read_to_string(fixture("klein_flipped.map")).map_err(|e| e.to_string())?;
    let lines = ok(parse_map_file(&text, Q), "map file")?;
    let flipped = ok(map_from_lines(d.hopf().pair_coalgebra(), d.target(), &lines), "map")?;
    let sign = named_failure(&ok(verify_klein_wtilde_equations(&d, &flipped, &flipped), "equations")?, "sign flip")?;

    let path = |n: &str| fixture(n).to_string_lossy().into_owned();
    let runs = [
        vec!["verify", "hopf", &path("broken_coassoc.bialg")].iter().map(|s| s.to_string()).collect::<Vec<_>>(),
        vec!["check".into(), "measuring".into(), path("non_subgroup.meas")],
        vec!["klein".into(), "--x".into(), "1/8".into(), "--globalize".into(), path("klein_flipped.map")],
    ];
    for args in &runs {
        let argv: Vec<&str> = args.iter().map(String::as_str).collect();
        let code = cli_exit(&argv);
        ensure(code == 1, format!("`{}` exited {code}", argv.join(" ")))?;
    }
    Ok(format!("{coassoc}; {support}; {sign}; CLI exits 1"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("hopf axioms", hopf_axioms),
        ("classification counts", classification),
        ("sweedler", sweedler),
        ("klein locus", klein_locus),
        ("quotient correspondence", quotient),
        ("crossed products", crossed_products),
        ("globalization", globalization),
        ("cocommutative closure", closure),
        ("negative controls", negative_controls),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(note) => println!("criterion {} {name}: PASS ({note})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({why})", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
