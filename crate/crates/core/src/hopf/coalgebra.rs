use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::exactlin::{Field, Scalar, Vector, VecSpace};

/// A term of an iterated coproduct: basis indices of each tensor leg and a coefficient.
pub type Term = (Vec<usize>, Scalar);

/// A finite-dimensional coalgebra with sparse comultiplication.
pub struct Coalgebra {
    pub space: VecSpace,
    pub field: Field,
    /// `comult[i]` lists `(j, k, c)` with `Δ(e_i) = Σ c e_j ⊗ e_k`.
    pub comult: Vec<Vec<(usize, usize, Scalar)>>,
    pub counit: Vector,
    legs: Mutex<HashMap<(usize, usize), Arc<Vec<Term>>>>,
}

impl Clone for Coalgebra {
    fn clone(&self) -> Self {
        Coalgebra::new(self.space.clone(), self.field, self.comult.clone(), self.counit.clone())
    }
}

impl PartialEq for Coalgebra {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space && self.field == other.field && self.comult == other.comult && self.counit == other.counit
    }
}

impl Eq for Coalgebra {}

impl fmt::Debug for Coalgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Coalgebra")
            .field("space", &self.space)
            .field("comult", &self.comult)
            .field("counit", &self.counit)
            .finish()
    }
}

impl Coalgebra {
    pub fn new(space: VecSpace, field: Field, comult: Vec<Vec<(usize, usize, Scalar)>>, counit: Vector) -> Self {
        let comult = comult
            .into_iter()
            .map(|terms| {
                let mut acc: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
                for (j, k, c) in terms {
                    let e = acc.entry((j, k)).or_insert_with(|| field.zero());
                    *e += &c;
                }
                acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|((j, k), c)| (j, k, c)).collect()
            })
            .collect();
        Coalgebra {
            space,
            field,
            comult,
            counit,
            legs: Mutex::new(HashMap::new()),
        }
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn label(&self, i: usize) -> &str {
        self.space.label(i)
    }

    pub fn delta(&self, i: usize) -> &[(usize, usize, Scalar)] {
        &self.comult[i]
    }

    pub fn counit_of(&self, i: usize) -> &Scalar {
        &self.counit[i]
    }

    /// `Δ(v)` as a vector in the pair basis `j * dim + k`.
    pub fn apply_delta(&self, v: &Vector) -> Vector {
        let n = self.dim();
        let mut out = Vector::zeros(self.field, n * n);
        for (i, a) in v.nonzero() {
            for (j, k, c) in &self.comult[i] {
                out[j * n + k] += &(a * c);
            }
        }
        out
    }

    /// `Δ^{(k-1)}(e_i)` with `k` legs, expanding the last leg each time. Cached per `(i, k)`.
    pub fn legs(&self, i: usize, k: usize) -> Arc<Vec<Term>> {
        assert!(k >= 1, "at least one leg");
        if let Some(t) = self.legs.lock().expect("cache lock").get(&(i, k)) {
            return t.clone();
        }
        let terms = if k == 1 {
            vec![(vec![i], self.field.one())]
        } else {
            let shorter = self.legs(i, k - 1);
            let mut acc: BTreeMap<Vec<usize>, Scalar> = BTreeMap::new();
            for (idx, c) in shorter.iter() {
                let last = *idx.last().expect("nonempty");
                for (j, l, d) in &self.comult[last] {
                    let mut key = idx[..idx.len() - 1].to_vec();
                    key.push(*j);
                    key.push(*l);
                    let e = acc.entry(key).or_insert_with(|| self.field.zero());
                    *e += &(c * d);
                }
            }
            acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
        };
        let terms = Arc::new(terms);
        self.legs.lock().expect("cache lock").insert((i, k), terms.clone());
        terms
    }

    /// Iterated coproduct of an arbitrary element, expanding legs left to right.
    pub fn iterated_comult(&self, v: &Vector, k: usize) -> Vec<Term> {
        let mut acc: BTreeMap<Vec<usize>, Scalar> = BTreeMap::new();
        for (i, a) in v.nonzero() {
            for (idx, c) in self.legs(i, k).iter() {
                let e = acc.entry(idx.clone()).or_insert_with(|| self.field.zero());
                *e += &(a * c);
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    /// Same as [`Self::iterated_comult`] but always splitting the first leg.
    pub fn iterated_comult_right(&self, v: &Vector, k: usize) -> Vec<Term> {
        let mut cur: BTreeMap<Vec<usize>, Scalar> = v.nonzero().map(|(i, a)| (vec![i], a.clone())).collect();
        for _ in 1..k {
            let mut next: BTreeMap<Vec<usize>, Scalar> = BTreeMap::new();
            for (idx, c) in &cur {
                for (j, l, d) in &self.comult[idx[0]] {
                    let mut key = vec![*j, *l];
                    key.extend_from_slice(&idx[1..]);
                    let e = next.entry(key).or_insert_with(|| self.field.zero());
                    *e += &(c * d);
                }
            }
            cur = next.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        }
        cur.into_iter().collect()
    }

    /// `C ⊗ C` with `Δ(h⊗k) = Σ (h1⊗k1) ⊗ (h2⊗k2)` and `ε(h⊗k) = ε(h)ε(k)`.
    pub fn tensor_square(&self) -> Coalgebra {
        let n = self.dim();
        let space = self.space.tensor(&self.space);
        let mut comult = Vec::with_capacity(n * n);
        let mut counit = Vec::with_capacity(n * n);
        for h in 0..n {
            for k in 0..n {
                let mut terms = Vec::new();
                for (h1, h2, a) in &self.comult[h] {
                    for (k1, k2, b) in &self.comult[k] {
                        terms.push((h1 * n + k1, h2 * n + k2, a * b));
                    }
                }
                comult.push(terms);
                counit.push(&self.counit[h] * &self.counit[k]);
            }
        }
        Coalgebra::new(space, self.field, comult, Vector::from_vec(counit))
    }

    pub fn is_cocommutative(&self) -> bool {
        (0..self.dim()).all(|i| {
            let mut fwd: Vec<_> = self.comult[i].iter().map(|(j, k, c)| (*j, *k, c.clone())).collect();
            let mut rev: Vec<_> = self.comult[i].iter().map(|(j, k, c)| (*k, *j, c.clone())).collect();
            fwd.sort_by_key(|t| (t.0, t.1));
            rev.sort_by_key(|t| (t.0, t.1));
            fwd == rev
        })
    }
}
