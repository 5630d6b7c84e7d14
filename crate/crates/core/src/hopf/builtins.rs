use crate::error::{Error, Result};
use crate::exactlin::{Field, Scalar, Vector};
use crate::groups::FinGroup;

use super::bialgebra::{BialgebraData, FinBialgebra};

/// `κG`: group elements are grouplike, `S(g) = g⁻¹`.
pub fn group_algebra(g: &FinGroup, field: Field) -> FinBialgebra {
    let n = g.order();
    let data = BialgebraData {
        name: format!("group algebra of {}", g.name()),
        field,
        labels: g.element_names().to_vec(),
        mult: (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .map(|(a, b)| Vector::unit(field, n, g.mul(a, b)))
            .collect(),
        unit: Vector::unit(field, n, g.identity()),
        comult: (0..n).map(|a| vec![(a, a, field.one())]).collect(),
        counit: Vector::from_vec(vec![field.one(); n]),
        antipode: Some((0..n).map(|a| Vector::unit(field, n, g.inv(a))).collect()),
    };
    FinBialgebra::new(data).expect("group algebra axioms")
}

/// `(κG)*` on the dual basis `p_g`: orthogonal idempotents, `Δp_g = Σ_h p_{gh⁻¹} ⊗ p_h`.
pub fn dual_group_algebra(g: &FinGroup, field: Field) -> FinBialgebra {
    let n = g.order();
    let e = g.identity();
    let data = BialgebraData {
        name: format!("dual group algebra of {}", g.name()),
        field,
        labels: g.element_names().iter().map(|s| format!("p_{s}")).collect(),
        mult: (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .map(|(a, b)| if a == b { Vector::unit(field, n, a) } else { Vector::zeros(field, n) })
            .collect(),
        unit: Vector::from_vec(vec![field.one(); n]),
        comult: (0..n)
            .map(|a| (0..n).map(|h| (g.mul(a, g.inv(h)), h, field.one())).collect())
            .collect(),
        counit: Vector::unit(field, n, e),
        antipode: Some((0..n).map(|a| Vector::unit(field, n, g.inv(a))).collect()),
    };
    FinBialgebra::new(data).expect("dual group algebra axioms")
}

/// Sweedler's four-dimensional Hopf algebra with basis `1, g, x, xg`:
/// `g² = 1`, `x² = 0`, `gx = −xg`, `Δx = x⊗1 + g⊗x`.
pub fn sweedler_algebra(field: Field) -> Result<FinBialgebra> {
    if field.characteristic() == 2 {
        return Err(Error::Characteristic(2));
    }
    let v = |c: [i64; 4]| Vector::from_ints(field, &c);
    #[rustfmt::skip]
    let mult = vec![
        // 1·_
        v([1, 0, 0, 0]), v([0, 1, 0, 0]), v([0, 0, 1, 0]), v([0, 0, 0, 1]),
        // g·_
        v([0, 1, 0, 0]), v([1, 0, 0, 0]), v([0, 0, 0, -1]), v([0, 0, -1, 0]),
        // x·_
        v([0, 0, 1, 0]), v([0, 0, 0, 1]), v([0, 0, 0, 0]), v([0, 0, 0, 0]),
        // xg·_
        v([0, 0, 0, 1]), v([0, 0, 1, 0]), v([0, 0, 0, 0]), v([0, 0, 0, 0]),
    ];
    let one = field.one();
    let data = BialgebraData {
        name: "Sweedler H4".into(),
        field,
        labels: ["1", "g", "x", "xg"].map(String::from).to_vec(),
        mult,
        unit: v([1, 0, 0, 0]),
        comult: vec![
            vec![(0, 0, one.clone())],
            vec![(1, 1, one.clone())],
            vec![(2, 0, one.clone()), (1, 2, one.clone())],
            vec![(3, 1, one.clone()), (0, 3, one)],
        ],
        counit: v([1, 1, 0, 0]),
        antipode: Some(vec![v([1, 0, 0, 0]), v([0, 1, 0, 0]), v([0, 0, 0, 1]), v([0, 0, -1, 0])]),
    };
    FinBialgebra::new(data)
}

/// The linear dual with transposed structure maps, on basis labels `<label>*`.
pub fn dualize(h: &FinBialgebra) -> Result<FinBialgebra> {
    let s = h
        .antipode
        .as_ref()
        .ok_or_else(|| Error::Invalid("dualize needs an antipode".into()))?;
    let n = h.dim();
    let f = h.field();
    let mut mult = vec![Vector::zeros(f, n); n * n];
    for k in 0..n {
        for (i, j, c) in h.delta(k) {
            mult[i * n + j][k] += c;
        }
    }
    let mut comult: Vec<Vec<(usize, usize, Scalar)>> = vec![Vec::new(); n];
    for i in 0..n {
        for j in 0..n {
            for (k, c) in h.basis_mul(i, j).nonzero() {
                comult[k].push((i, j, c.clone()));
            }
        }
    }
    let antipode = (0..n).map(|i| (0..n).map(|j| s[j][i].clone()).collect()).collect();
    FinBialgebra::new(BialgebraData {
        name: format!("dual of {}", h.name),
        field: f,
        labels: h.labels().iter().map(|l| format!("{l}*")).collect(),
        mult,
        unit: h.coalgebra.counit.clone(),
        comult,
        counit: h.unit().clone(),
        antipode: Some(antipode),
    })
}
