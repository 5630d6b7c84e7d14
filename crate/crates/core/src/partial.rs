//! Partial measurings and partial actions, and their classification on the base field.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactlin::{Field, Scalar, Vector};
use crate::groups::{enumerate_subgroups, FinGroup};
use crate::hopf::{dual_group_algebra, group_algebra, sweedler_algebra, FinBialgebra, UnitalAlgebra};
use crate::report::{Check, Report};

/// A linear map `H ⊗ A → A`, `h ⊗ a ↦ h·a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeasuringData {
    pub hopf: Arc<FinBialgebra>,
    pub target: Arc<UnitalAlgebra>,
    /// `action[h * dim(A) + a]` is `e_h · e_a`.
    pub action: Vec<Vector>,
    ones: Vec<Vector>,
}

impl MeasuringData {
    pub fn new(hopf: Arc<FinBialgebra>, target: Arc<UnitalAlgebra>, action: Vec<Vector>) -> Result<Self> {
        let (n, m) = (hopf.dim(), target.dim());
        if action.len() != n * m {
            return Err(Error::DimensionMismatch {
                expected: n * m,
                found: action.len(),
            });
        }
        if let Some(v) = action.iter().find(|v| v.len() != m) {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: v.len(),
            });
        }
        if hopf.field() != target.field {
            return Err(Error::FieldMismatch {
                left: hopf.field(),
                right: target.field,
            });
        }
        let mut data = MeasuringData {
            hopf,
            target,
            action,
            ones: Vec::new(),
        };
        data.ones = (0..n).map(|h| data.act_on(h, &data.target.unit)).collect();
        Ok(data)
    }

    /// The action `h·a = ε(h)a`.
    pub fn global(hopf: Arc<FinBialgebra>, target: Arc<UnitalAlgebra>) -> Self {
        let m = target.dim();
        let action = (0..hopf.dim())
            .flat_map(|h| (0..m).map(move |a| (h, a)))
            .map(|(h, a)| target.basis(a).scale(hopf.counit(h)))
            .collect();
        Self::new(hopf, target, action).expect("shapes agree")
    }

    pub fn field(&self) -> Field {
        self.target.field
    }

    pub fn act_basis(&self, h: usize, a: usize) -> &Vector {
        &self.action[h * self.target.dim() + a]
    }

    /// `e_h · a`.
    pub fn act_on(&self, h: usize, a: &Vector) -> Vector {
        let mut out = self.target.zero();
        for (j, c) in a.nonzero() {
            out.axpy(c, self.act_basis(h, j));
        }
        out
    }

    /// `h · a` for arbitrary `h ∈ H`.
    pub fn act(&self, h: &Vector, a: &Vector) -> Vector {
        let mut out = self.target.zero();
        for (i, c) in h.nonzero() {
            out.axpy(c, &self.act_on(i, a));
        }
        out
    }

    /// `e_h · 1_A`.
    pub fn one_action(&self, h: usize) -> &Vector {
        &self.ones[h]
    }

    /// `h · 1_A` for arbitrary `h`.
    pub fn one_action_of(&self, h: &Vector) -> Vector {
        let mut out = self.target.zero();
        for (i, c) in h.nonzero() {
            out.axpy(c, &self.ones[i]);
        }
        out
    }

    pub fn is_global(&self) -> bool {
        (0..self.hopf.dim()).all(|h| self.ones[h] == self.target.unit.scale(self.hopf.counit(h)))
    }

    pub(crate) fn hl(&self, i: usize) -> String {
        self.hopf.label(i).to_string()
    }

    pub(crate) fn al(&self, i: usize) -> String {
        self.target.label(i).to_string()
    }
}

/// PM1 to PM3, each swept over all basis tuples.
pub fn check_measuring(data: &MeasuringData) -> Report {
    let h = &data.hopf;
    let a = &data.target;
    let (n, m) = (h.dim(), a.dim());
    let mut r = Report::new("partial measuring");
    r.sweep(
        "PM1",
        0..m,
        |&x| vec![data.al(x)],
        |&x| {
            let got = data.act(h.unit(), &a.basis(x));
            (got != a.basis(x)).then(|| format!("1_H·a = {got}"))
        },
    );
    r.sweep(
        "PM2",
        (0..n).flat_map(|i| (0..m).flat_map(move |x| (0..m).map(move |y| (i, x, y)))),
        |&(i, x, y)| vec![data.hl(i), data.al(x), data.al(y)],
        |&(i, x, y)| {
            let lhs = data.act_on(i, a.basis_mul(x, y));
            let mut rhs = a.zero();
            for (i1, i2, c) in h.delta(i) {
                rhs.axpy(c, &a.mul(data.act_basis(*i1, x), data.act_basis(*i2, y)));
            }
            (lhs != rhs).then(|| format!("h·(ab) = {lhs}, (h1·a)(h2·b) = {rhs}"))
        },
    );
    r.sweep(
        "PM3",
        (0..n).flat_map(|i| (0..n).map(move |k| (i, k))),
        |&(i, k)| vec![data.hl(i), data.hl(k)],
        |&(i, k)| {
            let lhs = data.act_on(i, data.one_action(k));
            let mut rhs = a.zero();
            for (i1, i2, c) in h.delta(i) {
                let right = data.one_action_of(h.basis_mul(*i2, k));
                rhs.axpy(c, &a.mul(data.one_action(*i1), &right));
            }
            (lhs != rhs).then(|| format!("h·(k·1) = {lhs}, (h1·1)(h2k·1) = {rhs}"))
        },
    );
    r
}

/// `h·(k·a) = (h1·1_A)(h2k·a)` on all basis triples.
pub fn check_partial_action(data: &MeasuringData) -> Report {
    let h = &data.hopf;
    let a = &data.target;
    let (n, m) = (h.dim(), a.dim());
    let mut r = Report::new("partial action");
    r.sweep(
        "partial_action",
        (0..n).flat_map(|i| (0..n).flat_map(move |k| (0..m).map(move |x| (i, k, x)))),
        |&(i, k, x)| vec![data.hl(i), data.hl(k), data.al(x)],
        |&(i, k, x)| {
            let lhs = data.act_on(i, data.act_basis(k, x));
            let mut rhs = a.zero();
            for (i1, i2, c) in h.delta(i) {
                let right = data.act(h.basis_mul(*i2, k), &a.basis(x));
                rhs.axpy(c, &a.mul(data.one_action(*i1), &right));
            }
            (lhs != rhs).then(|| format!("h·(k·a) = {lhs}, (h1·1)(h2k·a) = {rhs}"))
        },
    );
    r
}

/// A functional `λ` on `H`, read as the measuring `h·1 = λ(h)` of `H` on the base field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseFieldFunctional {
    pub hopf: Arc<FinBialgebra>,
    pub lambda: Vector,
}

impl BaseFieldFunctional {
    pub fn new(hopf: Arc<FinBialgebra>, lambda: Vector) -> Result<Self> {
        if lambda.len() != hopf.dim() {
            return Err(Error::DimensionMismatch {
                expected: hopf.dim(),
                found: lambda.len(),
            });
        }
        Ok(BaseFieldFunctional { hopf, lambda })
    }

    pub fn measuring(&self) -> MeasuringData {
        let f = self.hopf.field();
        let target = Arc::new(UnitalAlgebra::base_field(f));
        let action = self.lambda.iter().map(|c| Vector::from_vec(vec![c.clone()])).collect();
        MeasuringData::new(self.hopf.clone(), target, action).expect("one-dimensional target")
    }

    pub fn verify(&self) -> Report {
        check_measuring(&self.measuring())
    }

    fn verified(self) -> Result<Self> {
        let r = self.verify();
        if r.passed() {
            Ok(self)
        } else {
            Err(Error::Verification(Box::new(r)))
        }
    }
}

/// One functional per subgroup `L ≤ G`: `λ_g = 1` on `L`, `0` elsewhere.
pub fn classify_group_algebra(g: &Arc<FinGroup>, field: Field) -> Result<Vec<BaseFieldFunctional>> {
    let h = Arc::new(group_algebra(g, field));
    enumerate_subgroups(g)
        .into_iter()
        .map(|l| {
            let lambda = (0..g.order())
                .map(|x| if l.contains(x) { field.one() } else { field.zero() })
                .collect();
            BaseFieldFunctional::new(h.clone(), lambda)?.verified()
        })
        .collect()
}

/// One functional per subgroup `L` with `char κ ∤ |L|`: `λ(p_g) = 1/|L|` on `L`, `0` elsewhere.
pub fn classify_dual_group_algebra(g: &Arc<FinGroup>, field: Field) -> Result<Vec<BaseFieldFunctional>> {
    let h = Arc::new(dual_group_algebra(g, field));
    enumerate_subgroups(g)
        .into_iter()
        .filter(|l| field.characteristic() == 0 || l.order() as u64 % field.characteristic() != 0)
        .map(|l| {
            let v = field.int(l.order() as i64).inv().expect("order invertible in the field");
            let lambda = (0..g.order())
                .map(|x| if l.contains(x) { v.clone() } else { field.zero() })
                .collect();
            BaseFieldFunctional::new(h.clone(), lambda)?.verified()
        })
        .collect()
}

fn passes(h: &Arc<FinBialgebra>, lambda: Vector) -> bool {
    BaseFieldFunctional {
        hopf: h.clone(),
        lambda,
    }
    .verify()
    .passed()
}

/// Every `{0,1}`-valued functional with `λ_e = 1` that is a partial measuring of `κG` on `κ`.
pub fn brute_force_group_algebra(g: &Arc<FinGroup>, field: Field) -> Vec<Vector> {
    let h = Arc::new(group_algebra(g, field));
    let others: Vec<usize> = (0..g.order()).filter(|&x| x != g.identity()).collect();
    (0u64..1 << others.len())
        .map(|mask| {
            let mut lambda = Vector::zeros(field, g.order());
            lambda[g.identity()] = field.one();
            for (bit, &x) in others.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    lambda[x] = field.one();
                }
            }
            lambda
        })
        .filter(|l| passes(&h, l.clone()))
        .collect()
}

/// Every functional on `(κG)*` that is constant on a support containing `e` and vanishes
/// off it, with the constant forced to `1/|support|`, that is a partial measuring.
pub fn brute_force_dual_group_algebra(g: &Arc<FinGroup>, field: Field) -> Vec<Vector> {
    let h = Arc::new(dual_group_algebra(g, field));
    let others: Vec<usize> = (0..g.order()).filter(|&x| x != g.identity()).collect();
    let mut out = Vec::new();
    for mask in 0u64..1 << others.len() {
        let mut support = vec![g.identity()];
        support.extend(others.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &x)| x));
        let Some(v) = field.int(support.len() as i64).inv() else {
            continue;
        };
        let mut lambda = Vector::zeros(field, g.order());
        for &x in &support {
            lambda[x] = v.clone();
        }
        if passes(&h, lambda.clone()) {
            out.push(lambda);
        }
    }
    out
}

/// Every functional with values in the prime field `F_p` that is a partial measuring.
/// Exhaustive over `p^dim` candidates, so meant for tiny cases such as `(F_2 K4)*`.
pub fn exhaustive_prime_field(h: &Arc<FinBialgebra>) -> Result<Vec<Vector>> {
    let Field::Prime(p) = h.field() else {
        return Err(Error::Invalid("exhaustive search needs a prime field".into()));
    };
    let n = h.dim();
    let total = (p as u128).checked_pow(n as u32).filter(|&t| t <= 1 << 20);
    let total = total.ok_or_else(|| Error::Invalid("search space too large".into()))?;
    let mut out = Vec::new();
    for code in 0..total {
        let mut c = code;
        let lambda: Vector = (0..n)
            .map(|_| {
                let d = (c % p as u128) as i64;
                c /= p as u128;
                h.field().int(d)
            })
            .collect();
        if passes(h, lambda.clone()) {
            out.push(lambda);
        }
    }
    Ok(out)
}

/// The Sweedler functionals: `λ = ε` when `global`, else `λ = (1, 0, λx, −λx)` on `1, g, x, xg`.
pub fn sweedler_measuring(field: Field, lambda_x: Scalar, global: bool) -> Result<BaseFieldFunctional> {
    let h = Arc::new(sweedler_algebra(field)?);
    let lambda = if global {
        h.coalgebra.counit.clone()
    } else {
        Vector::from_vec(vec![field.one(), field.zero(), lambda_x.clone(), -lambda_x])
    };
    BaseFieldFunctional::new(h, lambda)?.verified()
}

/// PM1 to PM3 residuals (left minus right side) for a functional on the base field.
pub fn measuring_residuals(f: &BaseFieldFunctional) -> Vec<Scalar> {
    let h = &f.hopf;
    let n = h.dim();
    let fld = h.field();
    let lam = |v: &Vector| v.dot(&f.lambda, fld);
    let mut out = vec![&lam(h.unit()) - &fld.one()];
    for i in 0..n {
        let mut rhs = fld.zero();
        for (a, b, c) in h.delta(i) {
            rhs += &(c * &(&f.lambda[*a] * &f.lambda[*b]));
        }
        out.push(&f.lambda[i] - &rhs);
        for k in 0..n {
            let lhs = &f.lambda[i] * &f.lambda[k];
            let mut rhs = fld.zero();
            for (a, b, c) in h.delta(i) {
                rhs += &(c * &(&f.lambda[*a] * &lam(h.basis_mul(*b, k))));
            }
            out.push(&lhs - &rhs);
        }
    }
    out
}

/// Outcome of solving the Sweedler constraints for `λ_xg` at fixed `(λ_g, λ_x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SweedlerSolutions {
    /// Every value of `λ_xg` works.
    All,
    /// Exactly these values work.
    Finite(Vec<Scalar>),
}

/// Solves the measuring constraints in the unknown `t = λ_xg` for fixed `λ_g`, `λ_x`. Each
/// residual is a polynomial of degree at most 2 in `t`; its coefficients are recovered from
/// the values at `t = 0, 1, −1` and the common rational roots are returned.
pub fn sweedler_solve_xg(field: Field, lambda_g: &Scalar, lambda_x: &Scalar) -> Result<SweedlerSolutions> {
    let h = Arc::new(sweedler_algebra(field)?);
    let at = |t: Scalar| {
        let lambda = Vector::from_vec(vec![field.one(), lambda_g.clone(), lambda_x.clone(), t]);
        measuring_residuals(&BaseFieldFunctional::new(h.clone(), lambda).expect("dimension 4"))
    };
    let r0 = at(field.zero());
    let r1 = at(field.one());
    let rm = at(field.int(-1));
    let half = field.ratio(1, 2)?;
    let polys: Vec<[Scalar; 3]> = r0
        .iter()
        .zip(&r1)
        .zip(&rm)
        .map(|((a, b), c)| {
            let c1 = &(b - c) * &half;
            let c2 = &(&(b + c) * &half) - a;
            [a.clone(), c1, c2]
        })
        .collect();
    let Some(pivot) = polys
        .iter()
        .filter(|p| p.iter().any(|c| !c.is_zero()))
        .min_by_key(|p| if !p[2].is_zero() { 2 } else if !p[1].is_zero() { 1 } else { 0 })
    else {
        return Ok(SweedlerSolutions::All);
    };
    let candidates: Vec<Scalar> = if !pivot[2].is_zero() {
        let disc = &(&pivot[1] * &pivot[1]) - &(&field.int(4) * &(&pivot[2] * &pivot[0]));
        match disc.sqrt() {
            Some(s) => {
                let two_a = &field.int(2) * &pivot[2];
                let inv = two_a.inv().expect("nonzero leading coefficient");
                let mut roots = vec![&(&(-&pivot[1]) + &s) * &inv, &(&(-&pivot[1]) - &s) * &inv];
                roots.dedup();
                roots
            }
            None => Vec::new(),
        }
    } else if !pivot[1].is_zero() {
        vec![&(-&pivot[0]) * &pivot[1].inv().expect("nonzero")]
    } else {
        Vec::new()
    };
    let eval = |p: &[Scalar; 3], t: &Scalar| &(&p[0] + &(&p[1] * t)) + &(&(&p[2] * t) * t);
    let roots = candidates
        .into_iter()
        .filter(|t| polys.iter().all(|p| eval(p, t).is_zero()))
        .collect();
    Ok(SweedlerSolutions::Finite(roots))
}

/// Completeness certificate for the Sweedler classification at sampled `λ_x`: with
/// `λ_g = 1` only `ε` survives, with `λ_g = 0` exactly `λ_xg = −λ_x`, and other values of
/// `λ_g` admit no measuring.
pub fn sweedler_completeness(field: Field, samples: &[Scalar]) -> Result<Report> {
    let mut r = Report::new("Sweedler classification completeness");
    let others = [field.int(2), field.int(-1), field.ratio(1, 3).unwrap_or_else(|_| field.int(3))];
    for lx in samples {
        let s1 = sweedler_solve_xg(field, &field.one(), lx)?;
        let expect1 = if lx.is_zero() {
            SweedlerSolutions::Finite(vec![field.zero()])
        } else {
            SweedlerSolutions::Finite(vec![])
        };
        let id = format!("sweedler.lambda_g=1.lambda_x={lx}");
        if s1 == expect1 {
            r.push(Check::pass(id));
        } else {
            r.push(Check::fail(id, Some(vec![lx.to_string()]), format!("solutions {s1:?}")));
        }
        let s0 = sweedler_solve_xg(field, &field.zero(), lx)?;
        let id = format!("sweedler.lambda_g=0.lambda_x={lx}");
        if s0 == SweedlerSolutions::Finite(vec![-lx]) {
            r.push(Check::pass(id));
        } else {
            r.push(Check::fail(id, Some(vec![lx.to_string()]), format!("solutions {s0:?}")));
        }
        for lg in &others {
            let s = sweedler_solve_xg(field, lg, lx)?;
            let id = format!("sweedler.lambda_g={lg}.lambda_x={lx}");
            if s == SweedlerSolutions::Finite(vec![]) {
                r.push(Check::pass(id));
            } else {
                r.push(Check::fail(id, Some(vec![lg.to_string(), lx.to_string()]), format!("solutions {s:?}")));
            }
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::builtin_group;

    fn q() -> Field {
        Field::Rationals
    }

    fn arc(name: &str) -> Arc<FinGroup> {
        Arc::new(builtin_group(name).unwrap())
    }

    #[test]
    fn global_actions_pass() {
        let h = Arc::new(sweedler_algebra(q()).unwrap());
        let a = Arc::new(UnitalAlgebra::split_pair(q()));
        let m = MeasuringData::global(h, a);
        assert!(check_measuring(&m).passed());
        assert!(check_partial_action(&m).passed());
        assert!(m.is_global());
    }

    #[test]
    fn klein_subgroup_functional_passes() {
        let g = arc("K4");
        let h = Arc::new(group_algebra(&g, q()));
        let f = BaseFieldFunctional::new(h, Vector::from_ints(q(), &[1, 1, 0, 0])).unwrap();
        assert!(f.verify().passed());
        assert!(check_partial_action(&f.measuring()).passed());
    }

    #[test]
    fn non_subgroup_support_fails_pm3() {
        let g = arc("K4");
        let h = Arc::new(group_algebra(&g, q()));
        let f = BaseFieldFunctional::new(h, Vector::from_ints(q(), &[1, 0, 1, 1])).unwrap();
        let r = f.verify();
        assert_eq!(r.first_failure().unwrap().id, "PM3");
    }

    #[test]
    fn classification_counts() {
        assert_eq!(classify_group_algebra(&arc("K4"), q()).unwrap().len(), 5);
        assert_eq!(classify_group_algebra(&arc("Z:1"), q()).unwrap().len(), 1);
        let d = classify_dual_group_algebra(&arc("K4"), q()).unwrap();
        assert_eq!(d.len(), 5);
        let half = q().ratio(1, 2).unwrap();
        let l_a = Vector::from_vec(vec![half.clone(), half, q().zero(), q().zero()]);
        assert!(d.iter().any(|f| f.lambda == l_a));
        let f2 = Field::prime(2).unwrap();
        assert_eq!(classify_dual_group_algebra(&arc("K4"), f2).unwrap().len(), 1);
        let t = classify_dual_group_algebra(&arc("Z:1"), q()).unwrap();
        assert_eq!(t.len(), 1);
        assert!(t[0].lambda[0].is_one());
    }

    #[test]
    fn brute_force_matches_classification() {
        for name in ["K4", "S3"] {
            let g = arc(name);
            let mut brute = brute_force_group_algebra(&g, q());
            let mut classified: Vec<Vector> = classify_group_algebra(&g, q()).unwrap().into_iter().map(|f| f.lambda).collect();
            brute.sort_by_key(|v| v.to_string());
            classified.sort_by_key(|v| v.to_string());
            assert_eq!(brute, classified);
        }
        let g = arc("K4");
        assert_eq!(brute_force_dual_group_algebra(&g, q()).len(), 5);
        let f2 = Field::prime(2).unwrap();
        let h = Arc::new(dual_group_algebra(&g, f2));
        assert_eq!(exhaustive_prime_field(&h).unwrap().len(), 1);
    }

    #[test]
    fn sweedler_family() {
        assert!(sweedler_measuring(q(), q().zero(), true).is_ok());
        assert!(sweedler_measuring(q(), q().zero(), false).is_ok());
        let f = sweedler_measuring(q(), q().int(3), false).unwrap();
        assert_eq!(f.lambda[3], q().int(-3));
        assert!(check_partial_action(&f.measuring()).passed());
    }

    #[test]
    fn sweedler_classification_is_complete() {
        let samples = [q().zero(), q().one(), q().int(-2), q().ratio(7, 3).unwrap()];
        let r = sweedler_completeness(q(), &samples).unwrap();
        assert!(r.passed(), "{}", r.render_text());
    }
}
