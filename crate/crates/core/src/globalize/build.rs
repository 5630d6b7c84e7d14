use std::sync::Arc;

use super::{check_wtilde, inverse_mismatch, WTilde};
use crate::convolution::{conv_unit, ConvMap};
use crate::error::{Error, Result};
use crate::exactlin::{subspace_closure, Bilinear, Matrix, Subspace, VecSpace, Vector};
use crate::hopf::{FinBialgebra, UnitalAlgebra};
use crate::partial::MeasuringData;
use crate::report::{Check, Report};
use crate::twisted::{pair_eval, pair_eval_basis, restrict_global_twisted, GlobalTwistedAction, TwistedPartialActionData};

/// `Hom(H, A)` under convolution, with basis `E(h,a)` at index `h * dim(A) + a`.
pub fn hom_algebra(hopf: &FinBialgebra, target: &Arc<UnitalAlgebra>) -> UnitalAlgebra {
    let co = &hopf.coalgebra;
    let m = target.dim();
    let dim = hopf.dim() * m;
    let basis: Vec<ConvMap> = (0..dim).map(|p| ConvMap::elementary(co, target, p / m, p % m)).collect();
    let table = basis
        .iter()
        .flat_map(|x| basis.iter().map(move |y| x.star(y).flatten()))
        .collect();
    let labels = (0..dim)
        .map(|p| format!("E({},{})", hopf.label(p / m), target.label(p % m)))
        .collect();
    let unit = conv_unit(co, target).flatten();
    UnitalAlgebra::new_unchecked(VecSpace::new(labels).expect("distinct labels"), target.field, table, unit)
        .expect("shapes agree")
}

/// The unital globalization `B ⊆ Hom(H, A)` built from a certified `w̃`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlobalizationResult {
    pub data: TwistedPartialActionData,
    pub wtilde: WTilde,
    /// `Hom(H, A)` as an algebra.
    pub ambient: Arc<UnitalAlgebra>,
    /// `φ(e_a)` for each basis element of `A`.
    pub phi: Vec<ConvMap>,
    /// `e_h ▷ E_j` flattened, index `h * dim(ambient) + j`.
    pub action: Vec<Vector>,
    /// `u(e_h, e_k)`, index `h * dim(H) + k`.
    pub u: Vec<ConvMap>,
    pub u_inv: Vec<ConvMap>,
    /// `B` inside the ambient space, in flattened coordinates.
    pub b: Subspace,
    /// `B` in its own basis, carrying the twisted action and `u`.
    pub global: GlobalTwistedAction,
    /// `φ(e_a)` in coordinates of `B`.
    pub phi_in_b: Vec<Vector>,
    pub report: Report,
}

impl GlobalizationResult {
    pub fn dim_b(&self) -> usize {
        self.b.dim()
    }

    pub fn hopf(&self) -> &Arc<FinBialgebra> {
        self.data.hopf()
    }

    pub fn as_map(&self, v: &Vector) -> ConvMap {
        ConvMap::unflatten(&self.hopf().coalgebra, self.data.target(), v)
    }

    /// `x ▷ θ` for arbitrary `x ∈ H`.
    pub fn act(&self, x: &Vector, theta: &ConvMap) -> ConvMap {
        act_with(&self.action, self.ambient.dim(), x, theta)
    }

    /// `u(x, y)` for arbitrary `x, y ∈ H`.
    pub fn u_of(&self, x: &Vector, y: &Vector) -> ConvMap {
        combine_pairs(&self.u, self.hopf().dim(), x, y, self)
    }

    pub fn u_inv_of(&self, x: &Vector, y: &Vector) -> ConvMap {
        combine_pairs(&self.u_inv, self.hopf().dim(), x, y, self)
    }

    pub fn phi_of(&self, a: &Vector) -> ConvMap {
        let mut out = self.zero();
        for (i, c) in a.nonzero() {
            out = out.add(&self.phi[i].scale(c));
        }
        out
    }

    pub fn zero(&self) -> ConvMap {
        ConvMap::zero(&self.hopf().coalgebra, self.data.target())
    }
}

fn act_with(action: &[Vector], dim: usize, x: &Vector, theta: &ConvMap) -> ConvMap {
    let flat = theta.flatten();
    let mut out = Vector::zeros(theta.field(), dim);
    for (i, c) in x.nonzero() {
        for (j, t) in flat.nonzero() {
            out.axpy(&(c * t), &action[i * dim + j]);
        }
    }
    ConvMap::unflatten(&theta.source, &theta.target, &out)
}

fn combine_pairs(table: &[ConvMap], n: usize, x: &Vector, y: &Vector, g: &GlobalizationResult) -> ConvMap {
    let mut out = g.zero();
    for (i, a) in x.nonzero() {
        for (j, b) in y.nonzero() {
            out = out.add(&table[i * n + j].scale(&(a * b)));
        }
    }
    out
}

/// The maps of the construction: `▷`, `u`, `u⁻¹` and `φ` on `Hom(H, A)`.
struct Maker<'a> {
    data: &'a TwistedPartialActionData,
    w: &'a ConvMap,
    w_inv: &'a ConvMap,
}

impl Maker<'_> {
    fn hopf(&self) -> &Arc<FinBialgebra> {
        self.data.hopf()
    }

    fn target(&self) -> &Arc<UnitalAlgebra> {
        self.data.target()
    }

    /// `(h▷θ)(k) = w̃(k1,h1) θ(k2h2) w̃⁻¹(k3,h3)`.
    fn act(&self, i: usize, theta: &ConvMap) -> ConvMap {
        let h = self.hopf();
        let a = self.target();
        let n = h.dim();
        ConvMap::from_fn(&h.coalgebra, a, |k| {
            let mut out = a.zero();
            for (ks, c) in h.legs(k, 3).iter() {
                for (hs, d) in h.legs(i, 3).iter() {
                    let mid = theta.eval(h.basis_mul(ks[1], hs[1]));
                    if mid.is_zero() {
                        continue;
                    }
                    let t = a.mul(&a.mul(&self.w.coeffs[ks[0] * n + hs[0]], &mid), &self.w_inv.coeffs[ks[2] * n + hs[2]]);
                    out.axpy(&(c * d), &t);
                }
            }
            out
        })
    }

    /// `u(h,k)(l) = w̃(l1,h1) w̃(l2h2,k1) w̃⁻¹(l3,h3k2)`.
    fn u(&self, i: usize, k: usize) -> ConvMap {
        let h = self.hopf();
        let a = self.target();
        let n = h.dim();
        ConvMap::from_fn(&h.coalgebra, a, |l| {
            let mut out = a.zero();
            for (ls, c) in h.legs(l, 3).iter() {
                for (hs, d) in h.legs(i, 3).iter() {
                    for (k1, k2, e) in h.delta(k) {
                        let x = &self.w.coeffs[ls[0] * n + hs[0]];
                        let y = pair_eval(self.w, n, h.basis_mul(ls[1], hs[1]), &h.basis(*k1));
                        let z = pair_eval_basis(self.w_inv, n, ls[2], h.basis_mul(hs[2], *k2));
                        out.axpy(&(&(c * d) * e), &a.mul(&a.mul(x, &y), &z));
                    }
                }
            }
            out
        })
    }

    /// `u⁻¹(h,k)(l) = w̃(l1,h1k1) w̃⁻¹(l2h2,k2) w̃⁻¹(l3,h3)`.
    fn u_inv(&self, i: usize, k: usize) -> ConvMap {
        let h = self.hopf();
        let a = self.target();
        let n = h.dim();
        ConvMap::from_fn(&h.coalgebra, a, |l| {
            let mut out = a.zero();
            for (ls, c) in h.legs(l, 3).iter() {
                for (hs, d) in h.legs(i, 3).iter() {
                    for (k1, k2, e) in h.delta(k) {
                        let x = pair_eval_basis(self.w, n, ls[0], h.basis_mul(hs[0], *k1));
                        let y = pair_eval(self.w_inv, n, h.basis_mul(ls[1], hs[1]), &h.basis(*k2));
                        let z = &self.w_inv.coeffs[ls[2] * n + hs[2]];
                        out.axpy(&(&(c * d) * e), &a.mul(&a.mul(&x, &y), z));
                    }
                }
            }
            out
        })
    }

    /// `φ(a)(h) = h·a`.
    fn phi(&self, x: usize) -> ConvMap {
        let md = &self.data.measuring;
        ConvMap::from_fn(&self.hopf().coalgebra, self.target(), |h| md.act_basis(h, x).clone())
    }
}

/// Builds `B ⊆ Hom(H, A)` generated by `h▷φ(a)` and `u^{±1}(h,k)` and verifies every identity
/// of the construction: `φ` is a monomorphism onto an ideal, `B` is a twisted module algebra,
/// and the partial data induced on `φ(A)` is the original one.
pub fn build_globalization(data: &TwistedPartialActionData, w: &ConvMap) -> Result<GlobalizationResult> {
    let wt = check_wtilde(data, w)?;
    let md = &data.measuring;
    let h = data.hopf().clone();
    let a = data.target().clone();
    let field = md.field();
    let (n, m) = (h.dim(), a.dim());
    let ambient = Arc::new(hom_algebra(&h, &a));
    let dim = ambient.dim();
    let maker = Maker {
        data,
        w: &wt.map,
        w_inv: &wt.inverse,
    };
    let mut report = Report::new("globalization");
    report.absorb("", wt.report.clone());

    let elementary: Vec<ConvMap> = (0..dim).map(|p| ConvMap::elementary(&h.coalgebra, &a, p / m, p % m)).collect();
    let action: Vec<Vector> = (0..n)
        .flat_map(|i| elementary.iter().map(move |e| (i, e)))
        .map(|(i, e)| maker.act(i, e).flatten())
        .collect();
    let u: Vec<ConvMap> = (0..n * n).map(|p| maker.u(p / n, p % n)).collect();
    let u_inv: Vec<ConvMap> = (0..n * n).map(|p| maker.u_inv(p / n, p % n)).collect();
    let phi: Vec<ConvMap> = (0..m).map(|x| maker.phi(x)).collect();
    let act = |x: &Vector, t: &ConvMap| act_with(&action, dim, x, t);
    let phi_of = |v: &Vector| {
        let mut out = ConvMap::zero(&h.coalgebra, &a);
        for (i, c) in v.nonzero() {
            out = out.add(&phi[i].scale(c));
        }
        out
    };
    let hl = |i: usize| h.label(i).to_string();
    let al = |i: usize| a.label(i).to_string();

    let rank = Matrix::from_columns(field, dim, &phi.iter().map(ConvMap::flatten).collect::<Vec<_>>()).rank();
    if rank == m {
        report.push(Check::pass("phi.injective"));
    } else {
        report.push(Check::fail("phi.injective", None, format!("rank {rank} < dim A = {m}")));
    }
    report.sweep(
        "phi.multiplicative",
        (0..m).flat_map(|x| (0..m).map(move |y| (x, y))),
        |&(x, y)| vec![al(x), al(y)],
        |&(x, y)| {
            let lhs = phi_of(a.basis_mul(x, y));
            let rhs = phi[x].star(&phi[y]);
            (lhs != rhs).then(|| "φ(ab) differs from φ(a)∗φ(b)".to_string())
        },
    );

    let product = Bilinear::new(field, dim, ambient.mult.table.clone());
    let mut gens: Vec<Vector> = Vec::new();
    for i in 0..n {
        for f in &phi {
            gens.push(act(&h.basis(i), f).flatten());
        }
    }
    gens.extend(u.iter().chain(&u_inv).map(ConvMap::flatten));
    let b = subspace_closure(&gens, &product);
    let d = b.dim();
    report.push(Check::info("dim_B", format!("{d} of {dim}")).with_value("dim", d));
    let eta = ambient.unit.clone();
    if b.contains(&eta) {
        report.push(Check::pass("B.unital"));
    } else {
        report.push(Check::fail("B.unital", None, "η is not in B"));
    }
    report.sweep(
        "B.closed_under_action",
        (0..n).flat_map(|i| (0..d).map(move |j| (i, j))),
        |&(i, j)| vec![hl(i), format!("b{j}")],
        |&(i, j)| {
            let img = act(&h.basis(i), &ConvMap::unflatten(&h.coalgebra, &a, &b.basis()[j])).flatten();
            (!b.contains(&img)).then(|| "h▷b leaves B".to_string())
        },
    );

    report.sweep(
        "ideal.i",
        (0..m).flat_map(|x| (0..n).flat_map(move |i| (0..m).map(move |y| (x, i, y)))),
        |&(x, i, y)| vec![al(x), hl(i), al(y)],
        |&(x, i, y)| {
            let lhs = phi[x].star(&act(&h.basis(i), &phi[y]));
            let rhs = phi_of(&a.mul(&a.basis(x), md.act_basis(i, y)));
            (lhs != rhs).then(|| "φ(a)∗(h▷φ(b)) differs from φ(a(h·b))".to_string())
        },
    );
    report.sweep(
        "ideal.ii",
        (0..m).flat_map(|x| (0..n).flat_map(move |i| (0..m).map(move |y| (x, i, y)))),
        |&(x, i, y)| vec![al(x), hl(i), al(y)],
        |&(x, i, y)| {
            let lhs = act(&h.basis(i), &phi[y]).star(&phi[x]);
            let rhs = phi_of(&a.mul(md.act_basis(i, y), &a.basis(x)));
            (lhs != rhs).then(|| "(h▷φ(b))∗φ(a) differs from φ((h·b)a)".to_string())
        },
    );
    for (suffix, table, wmap) in [("", &u, &wt.map), ("_inv", &u_inv, &wt.inverse)] {
        report.sweep(
            &format!("ideal.iii{suffix}"),
            (0..m).flat_map(|x| (0..n * n).map(move |p| (x, p))),
            |&(x, p)| vec![al(x), hl(p / n), hl(p % n)],
            |&(x, p)| {
                let lhs = phi[x].star(&table[p]);
                let rhs = phi_of(&a.mul(&a.basis(x), &wmap.coeffs[p]));
                (lhs != rhs).then(|| "φ(a)∗u(h,k) differs from φ(a w̃(h,k))".to_string())
            },
        );
        report.sweep(
            &format!("ideal.iv{suffix}"),
            (0..m).flat_map(|x| (0..n * n).map(move |p| (x, p))),
            |&(x, p)| vec![al(x), hl(p / n), hl(p % n)],
            |&(x, p)| {
                let lhs = table[p].star(&phi[x]);
                let rhs = phi_of(&a.mul(&wmap.coeffs[p], &a.basis(x)));
                (lhs != rhs).then(|| "u(h,k)∗φ(a) differs from φ(w̃(h,k) a)".to_string())
            },
        );
    }
    let phi_space = Subspace::span(field, VecSpace::indexed(dim), &phi.iter().map(ConvMap::flatten).collect::<Vec<_>>());
    report.sweep(
        "ideal.phi_A",
        (0..m).flat_map(|x| (0..d).map(move |j| (x, j))),
        |&(x, j)| vec![al(x), format!("b{j}")],
        |&(x, j)| {
            let bj = ConvMap::unflatten(&h.coalgebra, &a, &b.basis()[j]);
            let left = phi[x].star(&bj).flatten();
            let right = bj.star(&phi[x]).flatten();
            (!phi_space.contains(&left) || !phi_space.contains(&right)).then(|| "product leaves φ(A)".to_string())
        },
    );
    let phi_one = phi_of(&a.unit);
    report.sweep(
        "induced.action",
        (0..n).flat_map(|i| (0..m).map(move |x| (i, x))),
        |&(i, x)| vec![hl(i), al(x)],
        |&(i, x)| {
            let lhs = phi_one.star(&act(&h.basis(i), &phi[x]));
            let rhs = phi_of(md.act_basis(i, x));
            (lhs != rhs).then(|| "φ(1)∗(h▷φ(a)) differs from φ(h·a)".to_string())
        },
    );
    let omega_prime = data.omega_prime.as_ref().expect("checked symmetric");
    for (id, primed, expect) in [("induced.v", false, &data.omega), ("induced.v_prime", true, omega_prime)] {
        report.sweep(
            id,
            (0..n).flat_map(|i| (0..n).map(move |k| (i, k))),
            |&(i, k)| vec![hl(i), hl(k)],
            |&(i, k)| {
                let mut v = ConvMap::zero(&h.coalgebra, &a);
                for (hs, c) in h.legs(i, 3).iter() {
                    if primed {
                        for (ks, d) in h.legs(k, 2).iter() {
                            let left = phi_of(&md.one_action_of(h.basis_mul(hs[0], ks[0])));
                            let right = phi_of(md.one_action(hs[2]));
                            let t = left.star(&u_inv[hs[1] * n + ks[1]]).star(&right);
                            v = v.add(&t.scale(&(c * d)));
                        }
                    } else {
                        for (k1, k2, d) in h.delta(k) {
                            let left = phi_of(md.one_action(hs[0]));
                            let right = phi_of(&md.one_action_of(h.basis_mul(hs[2], *k2)));
                            let t = left.star(&u[hs[1] * n + k1]).star(&right);
                            v = v.add(&t.scale(&(c * d)));
                        }
                    }
                }
                (v != phi_of(&expect.coeffs[i * n + k])).then(|| "induced cocycle differs from φ∘ω".to_string())
            },
        );
    }

    // B in its own basis, as a twisted module algebra.
    let coords = |v: &Vector| b.coords(v);
    let mut table = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            let p = product.apply(&b.basis()[i], &b.basis()[j]);
            table.push(coords(&p).ok_or_else(|| Error::Invalid("B is not closed under ∗".into()))?);
        }
    }
    let unit = coords(&eta).ok_or_else(|| Error::Invalid("η is not in B".into()))?;
    let labels = (0..d).map(|i| format!("b{i}")).collect();
    let balg = Arc::new(UnitalAlgebra::new(VecSpace::new(labels)?, field, table, unit)?);
    let mut b_action = Vec::with_capacity(n * d);
    for i in 0..n {
        for j in 0..d {
            let img = act(&h.basis(i), &ConvMap::unflatten(&h.coalgebra, &a, &b.basis()[j])).flatten();
            b_action.push(coords(&img).ok_or_else(|| Error::Invalid("B is not closed under ▷".into()))?);
        }
    }
    let bmd = MeasuringData::new(h.clone(), balg.clone(), b_action)?;
    let in_b = |t: &[ConvMap]| -> Result<ConvMap> {
        let coeffs = t
            .iter()
            .map(|x| coords(&x.flatten()).ok_or_else(|| Error::Invalid("u(h,k) is not in B".into())))
            .collect::<Result<Vec<_>>>()?;
        ConvMap::new(h.pair_coalgebra().clone(), balg.clone(), coeffs)
    };
    let global = GlobalTwistedAction::new(bmd, in_b(&u)?, in_b(&u_inv)?)?;
    report.absorb("", global.check());
    let phi_in_b = phi
        .iter()
        .map(|f| coords(&f.flatten()).ok_or_else(|| Error::Invalid("φ(A) is not in B".into())))
        .collect::<Result<Vec<_>>>()?;

    let mut result = GlobalizationResult {
        data: data.clone(),
        wtilde: wt,
        ambient,
        phi,
        action,
        u,
        u_inv,
        b,
        global,
        phi_in_b,
        report,
    };
    let round = restriction_round_trip(&result);
    result.report.absorb("restriction", round);
    if !result.report.passed() {
        return Err(Error::Verification(Box::new(result.report)));
    }
    Ok(result)
}

/// Restricting `B` to `φ(1_A)B` gives back the original data through `φ`.
fn restriction_round_trip(g: &GlobalizationResult) -> Report {
    let mut r = Report::new("restriction round trip");
    let field = g.data.hopf().field();
    let a = g.data.target();
    let one = {
        let mut v = Vector::zeros(field, g.dim_b());
        for (i, c) in a.unit.nonzero() {
            v.axpy(c, &g.phi_in_b[i]);
        }
        v
    };
    let res = match restrict_global_twisted(&g.global, &one) {
        Ok(res) => res,
        Err(e) => {
            r.push(Check::fail("restrict", None, e.to_string()));
            return r;
        }
    };
    r.push(Check::pass("restrict"));
    let images: Option<Vec<Vector>> = g.phi_in_b.iter().map(|v| res.coords(v)).collect();
    let Some(images) = images else {
        r.push(Check::fail("transport", None, "φ(A) is not 1_A B"));
        return r;
    };
    let c = |v: &Vector| {
        let mut out = res.data.target().zero();
        for (i, s) in v.nonzero() {
            out.axpy(s, &images[i]);
        }
        out
    };
    let h = g.data.hopf();
    let n = h.dim();
    let md = &g.data.measuring;
    let same_action =
        (0..n).all(|i| (0..a.dim()).all(|x| res.data.measuring.act_on(i, &images[x]) == c(md.act_basis(i, x))));
    r.push(if same_action { Check::pass("action") } else { Check::fail("action", None, "restricted action differs") });
    let same_omega = (0..n * n).all(|p| res.data.omega.coeffs[p] == c(&g.data.omega.coeffs[p]));
    r.push(if same_omega { Check::pass("omega") } else { Check::fail("omega", None, "restricted ω differs") });
    let same_prime = match (&res.data.omega_prime, &g.data.omega_prime) {
        (Some(x), Some(y)) => (0..n * n).all(|p| x.coeffs[p] == c(&y.coeffs[p])),
        _ => false,
    };
    r.push(if same_prime {
        Check::pass("omega_prime")
    } else {
        Check::fail("omega_prime", None, "restricted ω′ differs")
    });
    r
}

/// Recovers `w̃` from a unital global twisted action on `B` with `φ: A → B` (images of the basis
/// of `A` in coordinates of `B`): `φ(w̃^{±1}(h,k)) = φ(1_A)u^{±1}(h,k)`.
pub fn extract_wtilde(glob: &GlobalTwistedAction, phi: &[Vector], data: &TwistedPartialActionData) -> Result<WTilde> {
    let check = glob.check();
    if !check.passed() {
        return Err(Error::Verification(Box::new(check)));
    }
    let bmd = &glob.measuring;
    let balg = &bmd.target;
    let h = data.hopf();
    let a = data.target();
    let field = a.field;
    let (n, m, d) = (h.dim(), a.dim(), balg.dim());
    if phi.len() != m || phi.iter().any(|v| v.len() != d) {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: phi.len(),
        });
    }
    let phi_matrix = Matrix::from_columns(field, d, phi);
    if phi_matrix.rank() != m {
        return Err(Error::Invalid("φ is not injective".into()));
    }
    let phi_of = |v: &Vector| {
        let mut out = balg.zero();
        for (i, c) in v.nonzero() {
            out.axpy(c, &phi[i]);
        }
        out
    };
    let preimage = |v: &Vector| phi_matrix.solve(v).ok().flatten();
    let one = phi_of(&a.unit);
    for i in 0..n {
        for x in 0..m {
            let induced = balg.mul(&one, &bmd.act_on(i, &phi[x]));
            if induced != phi_of(data.measuring.act_basis(i, x)) {
                return Err(Error::Invalid(format!(
                    "induced action differs at ({}, {})",
                    h.label(i),
                    a.label(x)
                )));
            }
        }
    }
    let pull = |u: &ConvMap, name: &str| -> Result<ConvMap> {
        let coeffs = (0..n * n)
            .map(|p| {
                preimage(&balg.mul(&one, &u.coeffs[p])).ok_or_else(|| {
                    Error::Invalid(format!(
                        "φ(1_A){name}({}, {}) is not in φ(A)",
                        h.label(p / n),
                        h.label(p % n)
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        ConvMap::new(h.pair_coalgebra().clone(), a.clone(), coeffs)
    };
    let w = pull(&glob.u, "u")?;
    let w_inv = pull(&glob.u_inv, "u⁻¹")?;
    let mut wt = check_wtilde(data, &w)?;
    match inverse_mismatch(&w, &w_inv, data) {
        None => wt.report.push(Check::pass("extracted_inverse")),
        Some(cex) => {
            wt.report.push(Check::fail("extracted_inverse", Some(cex), "pulled back u⁻¹ is not w̃⁻¹"));
            return Err(Error::Verification(Box::new(wt.report)));
        }
    }
    Ok(wt)
}
