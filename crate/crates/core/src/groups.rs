//! Finite groups as Cayley tables, subgroups, quotients and normalized 2-cocycles.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactlin::{Field, Scalar};
use crate::report::Report;

/// A finite group given by its multiplication table. Element indices run over `0..order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinGroup {
    name: String,
    names: Vec<String>,
    cayley: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FinGroup {
    /// Validates the table (Latin square, two-sided identity, associativity) and derives
    /// the identity and inverse tables.
    pub fn from_table(name: impl Into<String>, names: Vec<String>, cayley: Vec<Vec<usize>>) -> Result<Self> {
        let n = cayley.len();
        if n == 0 {
            return Err(Error::Invalid("a group needs at least one element".into()));
        }
        if names.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: names.len(),
            });
        }
        for row in &cayley {
            if row.len() != n || row.iter().any(|&x| x >= n) {
                return Err(Error::Invalid("Cayley table must be square with entries < order".into()));
            }
            let distinct: BTreeSet<_> = row.iter().collect();
            if distinct.len() != n {
                return Err(Error::Invalid("Cayley table rows must be permutations".into()));
            }
        }
        for j in 0..n {
            let col: BTreeSet<_> = (0..n).map(|i| cayley[i][j]).collect();
            if col.len() != n {
                return Err(Error::Invalid("Cayley table columns must be permutations".into()));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| cayley[e][g] == g && cayley[g][e] == g))
            .ok_or_else(|| Error::Invalid("no two-sided identity".into()))?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if cayley[cayley[a][b]][c] != cayley[a][cayley[b][c]] {
                        return Err(Error::Invalid(format!(
                            "not associative at ({}, {}, {})",
                            names[a], names[b], names[c]
                        )));
                    }
                }
            }
        }
        let inverse = (0..n)
            .map(|g| (0..n).find(|&h| cayley[g][h] == identity).expect("Latin square"))
            .collect();
        Ok(FinGroup {
            name: name.into(),
            names,
            cayley,
            identity,
            inverse,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.cayley.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.cayley[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn element_name(&self, g: usize) -> &str {
        &self.names[g]
    }

    pub fn element_names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn cayley(&self) -> &[Vec<usize>] {
        &self.cayley
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    fn from_closed_set<T: PartialEq>(name: &str, names: Vec<String>, elems: &[T], op: impl Fn(&T, &T) -> T) -> Self {
        let n = elems.len();
        let cayley = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let p = op(&elems[i], &elems[j]);
                        elems.iter().position(|e| *e == p).expect("set closed under the operation")
                    })
                    .collect()
            })
            .collect();
        FinGroup::from_table(name, names, cayley).expect("builtin tables are groups")
    }
}

impl fmt::Display for FinGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (order {})", self.name, self.order())
    }
}

fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    // (p ∘ q)(i) = p(q(i))
    q.iter().map(|&i| p[i]).collect()
}

fn cycle_name(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        let mut cyc = Vec::new();
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            cyc.push((i + 1).to_string());
            i = p[i];
        }
        out.push_str(&format!("({})", cyc.join("")));
    }
    if out.is_empty() {
        "e".into()
    } else {
        out
    }
}

fn cyclic(n: usize) -> FinGroup {
    let names = (0..n)
        .map(|i| match i {
            0 => "e".to_string(),
            1 => "g".to_string(),
            _ => format!("g{i}"),
        })
        .collect();
    let cayley = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
    FinGroup::from_table(format!("Z{n}"), names, cayley).expect("cyclic table")
}

fn klein() -> FinGroup {
    let names = ["e", "a", "b", "ab"].map(String::from).to_vec();
    let cayley = (0..4).map(|i| (0..4).map(|j| i ^ j).collect()).collect();
    FinGroup::from_table("K4", names, cayley).expect("Klein table")
}

fn symmetric3() -> FinGroup {
    let mut perms = vec![
        vec![0, 1, 2],
        vec![0, 2, 1],
        vec![1, 0, 2],
        vec![1, 2, 0],
        vec![2, 0, 1],
        vec![2, 1, 0],
    ];
    perms.sort();
    let names = perms.iter().map(|p| cycle_name(p)).collect();
    FinGroup::from_closed_set("S3", names, &perms, |p, q| compose(p, q))
}

fn dihedral4() -> FinGroup {
    let r = vec![1, 2, 3, 0];
    let s = vec![0, 3, 2, 1];
    let id = vec![0, 1, 2, 3];
    let mut elems = Vec::new();
    let mut names = Vec::new();
    for j in 0..2 {
        let mut x = if j == 0 { id.clone() } else { s.clone() };
        for i in 0..4 {
            elems.push(x.clone());
            let rot = match i {
                0 => String::new(),
                1 => "r".into(),
                _ => format!("r{i}"),
            };
            names.push(match (rot.is_empty(), j) {
                (true, 0) => "e".into(),
                (true, _) => "s".into(),
                (false, 0) => rot,
                (false, _) => format!("{rot}s"),
            });
            x = compose(&r, &x);
        }
    }
    FinGroup::from_closed_set("D4", names, &elems, |p, q| compose(p, q))
}

fn quaternion8() -> FinGroup {
    // (sign, unit) with unit 0..4 = 1, i, j, k
    const UNIT: [[(bool, usize); 4]; 4] = [
        [(false, 0), (false, 1), (false, 2), (false, 3)],
        [(false, 1), (true, 0), (false, 3), (true, 2)],
        [(false, 2), (true, 3), (true, 0), (false, 1)],
        [(false, 3), (false, 2), (true, 1), (true, 0)],
    ];
    let mut elems = Vec::new();
    let mut names = Vec::new();
    for (u, label) in ["1", "i", "j", "k"].iter().enumerate() {
        for neg in [false, true] {
            elems.push((neg, u));
            names.push(if neg { format!("-{label}") } else { label.to_string() });
        }
    }
    FinGroup::from_closed_set("Q8", names, &elems, |&(s, a), &(t, b)| {
        let (n, c) = UNIT[a][b];
        (s ^ t ^ n, c)
    })
}

/// Builtin groups: `K4`, `S3`, `D4`, `Q8`, and cyclic `Z:n` (also `Z_n` or `Zn`).
///
/// Element orders: K4 is `e, a, b, ab` (product is xor of the bit patterns); S3 lists
/// permutations of `{1,2,3}` lexicographically; D4 is `r^i` then `r^i s`; Q8 is
/// `1, -1, i, -i, j, -j, k, -k`.
pub fn builtin_group(name: &str) -> Result<FinGroup> {
    match name {
        "K4" => Ok(klein()),
        "S3" => Ok(symmetric3()),
        "D4" => Ok(dihedral4()),
        "Q8" => Ok(quaternion8()),
        _ => {
            let n = name
                .strip_prefix("Z:")
                .or_else(|| name.strip_prefix("Z_"))
                .or_else(|| name.strip_prefix('Z'))
                .and_then(|s| s.parse::<usize>().ok())
                .filter(|&n| n >= 1)
                .ok_or_else(|| Error::UnknownBuiltin(name.to_string()))?;
            Ok(cyclic(n))
        }
    }
}

/// A subgroup, as a sorted set of element indices of its parent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupRef {
    pub parent: Arc<FinGroup>,
    pub elements: Vec<usize>,
}

impl SubgroupRef {
    /// Checks closure, identity and inverses.
    pub fn new(parent: Arc<FinGroup>, mut elements: Vec<usize>) -> Result<Self> {
        elements.sort_unstable();
        elements.dedup();
        let set: BTreeSet<usize> = elements.iter().copied().collect();
        let ok = set.contains(&parent.identity())
            && elements.iter().all(|&g| set.contains(&parent.inv(g)))
            && elements
                .iter()
                .all(|&g| elements.iter().all(|&h| set.contains(&parent.mul(g, h))));
        if !ok {
            return Err(Error::Invalid("element set is not a subgroup".into()));
        }
        Ok(SubgroupRef { parent, elements })
    }

    /// The subgroup generated by `gens`.
    pub fn generated(parent: Arc<FinGroup>, gens: &[usize]) -> Self {
        let mut set: BTreeSet<usize> = BTreeSet::from([parent.identity()]);
        set.extend(gens.iter().copied());
        loop {
            let cur: Vec<usize> = set.iter().copied().collect();
            let before = set.len();
            for &g in &cur {
                for &h in &cur {
                    set.insert(parent.mul(g, h));
                }
            }
            if set.len() == before {
                break;
            }
        }
        SubgroupRef {
            parent,
            elements: set.into_iter().collect(),
        }
    }

    pub fn trivial(parent: Arc<FinGroup>) -> Self {
        let e = parent.identity();
        SubgroupRef {
            parent,
            elements: vec![e],
        }
    }

    pub fn whole(parent: Arc<FinGroup>) -> Self {
        let elements = (0..parent.order()).collect();
        SubgroupRef { parent, elements }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    /// Position of `g` within [`Self::elements`].
    pub fn position(&self, g: usize) -> Option<usize> {
        self.elements.binary_search(&g).ok()
    }

    pub fn is_normal(&self) -> bool {
        let g = &self.parent;
        (0..g.order()).all(|x| {
            self.elements
                .iter()
                .all(|&l| self.contains(g.mul(g.mul(x, l), g.inv(x))))
        })
    }

    pub fn is_central(&self) -> bool {
        let g = &self.parent;
        self.elements
            .iter()
            .all(|&l| (0..g.order()).all(|x| g.mul(l, x) == g.mul(x, l)))
    }

    /// The subgroup as a group in its own right, elements in the order of [`Self::elements`].
    pub fn as_group(&self) -> FinGroup {
        let g = &self.parent;
        let names = self.elements.iter().map(|&x| g.element_name(x).to_string()).collect();
        let cayley = self
            .elements
            .iter()
            .map(|&x| {
                self.elements
                    .iter()
                    .map(|&y| self.position(g.mul(x, y)).expect("closed"))
                    .collect()
            })
            .collect();
        FinGroup::from_table(format!("{}<{}>", g.name(), self.label()), names, cayley).expect("subgroup table")
    }

    /// Element names in braces, e.g. `{e,a}`.
    pub fn label(&self) -> String {
        let names: Vec<&str> = self.elements.iter().map(|&x| self.parent.element_name(x)).collect();
        format!("{{{}}}", names.join(","))
    }
}

/// All subgroups, sorted by order and then by element list. Found by closing every
/// subgroup already found together with one more element, starting from `{e}`; this
/// reaches the closure of every generating subset. Intended for `|G| ≤ 16`.
pub fn enumerate_subgroups(g: &Arc<FinGroup>) -> Vec<SubgroupRef> {
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut frontier = vec![vec![g.identity()]];
    found.insert(frontier[0].clone());
    while let Some(h) = frontier.pop() {
        for x in 0..g.order() {
            if h.binary_search(&x).is_ok() {
                continue;
            }
            let mut gens = h.clone();
            gens.push(x);
            let s = SubgroupRef::generated(g.clone(), &gens).elements;
            if found.insert(s.clone()) {
                frontier.push(s);
            }
        }
    }
    let mut out: Vec<SubgroupRef> = found
        .into_iter()
        .map(|elements| SubgroupRef {
            parent: g.clone(),
            elements,
        })
        .collect();
    out.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elements.cmp(&b.elements)));
    out
}

pub fn center(g: &Arc<FinGroup>) -> SubgroupRef {
    let n = g.order();
    let elements = (0..n)
        .filter(|&z| (0..n).all(|x| g.mul(z, x) == g.mul(x, z)))
        .collect();
    SubgroupRef {
        parent: g.clone(),
        elements,
    }
}

/// `G/L` together with the projection `G → G/L` and a transversal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    pub group: FinGroup,
    /// `projection[g]` is the coset index of `g`.
    pub projection: Vec<usize>,
    /// One representative per coset: the identity for the identity coset, otherwise the
    /// smallest element index.
    pub transversal: Vec<usize>,
}

impl Quotient {
    /// Elements of `G` lying in coset `c`.
    pub fn coset(&self, c: usize) -> Vec<usize> {
        (0..self.projection.len()).filter(|&g| self.projection[g] == c).collect()
    }
}

/// Cosets are ordered with the identity coset first, then by representative. Coset names
/// are `<representative>L`.
pub fn quotient(g: &Arc<FinGroup>, l: &SubgroupRef) -> Result<Quotient> {
    if !l.is_normal() {
        return Err(Error::NotNormal);
    }
    let n = g.order();
    let mut transversal = vec![g.identity()];
    let mut projection = vec![usize::MAX; n];
    for &x in &l.elements {
        projection[g.mul(g.identity(), x)] = 0;
    }
    for r in 0..n {
        if projection[r] != usize::MAX {
            continue;
        }
        let c = transversal.len();
        transversal.push(r);
        for &x in &l.elements {
            projection[g.mul(r, x)] = c;
        }
    }
    let names = transversal
        .iter()
        .map(|&r| format!("{}L", g.element_name(r)))
        .collect();
    let cayley = transversal
        .iter()
        .map(|&a| transversal.iter().map(|&b| projection[g.mul(a, b)]).collect())
        .collect();
    let group = FinGroup::from_table(format!("{}/{}", g.name(), l.label()), names, cayley)?;
    Ok(Quotient {
        group,
        projection,
        transversal,
    })
}

/// A normalized 2-cocycle `G × G → κ*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupCocycle {
    pub group: Arc<FinGroup>,
    pub field: Field,
    pub values: Vec<Vec<Scalar>>,
}

impl GroupCocycle {
    pub fn new(group: Arc<FinGroup>, field: Field, values: Vec<Vec<Scalar>>) -> Result<Self> {
        let c = GroupCocycle { group, field, values };
        let report = c.verify();
        if report.passed() {
            Ok(c)
        } else {
            Err(Error::Verification(Box::new(report)))
        }
    }

    pub fn trivial(group: Arc<FinGroup>, field: Field) -> Self {
        let n = group.order();
        GroupCocycle {
            group,
            field,
            values: vec![vec![field.one(); n]; n],
        }
    }

    pub fn get(&self, g: usize, h: usize) -> &Scalar {
        &self.values[g][h]
    }

    pub fn verify(&self) -> Report {
        let g = &self.group;
        let n = g.order();
        let e = g.identity();
        let name = |i: usize| g.element_name(i).to_string();
        let mut r = Report::new(format!("2-cocycle on {}", g.name()));
        r.sweep(
            "cocycle.nonzero",
            (0..n).flat_map(|a| (0..n).map(move |b| (a, b))),
            |&(a, b)| vec![name(a), name(b)],
            |&(a, b)| self.values[a][b].is_zero().then(|| "value is zero".into()),
        );
        r.sweep(
            "cocycle.normalized",
            0..n,
            |&a| vec![name(a)],
            |&a| (!self.values[e][a].is_one() || !self.values[a][e].is_one()).then(|| "γ(e,g) or γ(g,e) is not 1".into()),
        );
        r.sweep(
            "cocycle.identity",
            (0..n).flat_map(|a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c)))),
            |&(a, b, c)| vec![name(a), name(b), name(c)],
            |&(a, b, c)| {
                let lhs = &self.values[b][c] * &self.values[a][g.mul(b, c)];
                let rhs = &self.values[a][b] * &self.values[g.mul(a, b)][c];
                (lhs != rhs).then(|| format!("{lhs} != {rhs}"))
            },
        );
        r
    }

    /// Whether this cocycle equals `δμ(g,h) = μ(g)μ(h)μ(gh)⁻¹` for some `μ: G → {±1}` with
    /// `μ(e) = 1`. Over Q the only roots of unity are ±1, so the search is exhaustive there.
    pub fn sign_coboundary_witness(&self) -> Option<Vec<Scalar>> {
        let g = &self.group;
        let n = g.order();
        let others: Vec<usize> = (0..n).filter(|&x| x != g.identity()).collect();
        for mask in 0u64..(1u64 << others.len()) {
            let mut mu = vec![self.field.one(); n];
            for (bit, &x) in others.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    mu[x] = self.field.int(-1);
                }
            }
            let all = (0..n).all(|a| {
                (0..n).all(|b| {
                    let d = &(&mu[a] * &mu[b]) * &mu[g.mul(a, b)].inv().expect("±1");
                    d == self.values[a][b]
                })
            });
            if all {
                return Some(mu);
            }
        }
        None
    }
}

/// `γ(aⁱbʲ, aᵏbˡ) = (−1)^{jk}` on K4.
pub fn klein_nontrivial_cocycle(field: Field) -> Result<GroupCocycle> {
    if field.characteristic() == 2 {
        return Err(Error::Characteristic(2));
    }
    let g = Arc::new(klein());
    let values = (0..4usize)
        .map(|x| {
            (0..4usize)
                .map(|y| {
                    let j = x >> 1;
                    let k = y & 1;
                    field.int(if j * k == 1 { -1 } else { 1 })
                })
                .collect()
        })
        .collect();
    GroupCocycle::new(g, field, values)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(name: &str) -> Arc<FinGroup> {
        Arc::new(builtin_group(name).unwrap())
    }

    #[test]
    fn klein_elements_self_inverse() {
        let k = builtin_group("K4").unwrap();
        assert_eq!(k.order(), 4);
        assert_eq!(k.element_names(), ["e", "a", "b", "ab"]);
        for g in 0..4 {
            assert_eq!(k.inv(g), g);
        }
        assert_eq!(k.mul(1, 2), 3);
    }

    #[test]
    fn small_builtins() {
        assert_eq!(builtin_group("Z:1").unwrap().order(), 1);
        let s3 = builtin_group("S3").unwrap();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        assert_eq!(builtin_group("D4").unwrap().order(), 8);
        assert_eq!(builtin_group("Q8").unwrap().order(), 8);
        assert!(builtin_group("Z:0").is_err());
        assert!(matches!(builtin_group("A5"), Err(Error::UnknownBuiltin(_))));
    }

    #[test]
    fn s3_products_match_permutation_composition() {
        // (12)∘(23): 1→1→2, 2→3→3, 3→2→1
        let s3 = builtin_group("S3").unwrap();
        let t12 = s3.index_of("(12)").unwrap();
        let t23 = s3.index_of("(23)").unwrap();
        let prod = s3.element_name(s3.mul(t12, t23)).to_string();
        assert_eq!(prod, "(123)");
        assert_ne!(s3.mul(t12, t23), s3.mul(t23, t12));
    }

    #[test]
    fn subgroup_counts() {
        assert_eq!(enumerate_subgroups(&arc("K4")).len(), 5);
        assert_eq!(enumerate_subgroups(&arc("Z:1")).len(), 1);
        assert_eq!(enumerate_subgroups(&arc("S3")).len(), 6);
        assert_eq!(enumerate_subgroups(&arc("Q8")).len(), 6);
        assert_eq!(enumerate_subgroups(&arc("D4")).len(), 10);
    }

    #[test]
    fn brute_force_subgroup_count_k4_s3() {
        // oracle: test every subset for closure
        for (name, expected) in [("K4", 5), ("S3", 6)] {
            let g = arc(name);
            let n = g.order();
            let count = (0u32..(1 << n))
                .filter(|mask| {
                    let s: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
                    SubgroupRef::new(g.clone(), s).is_ok()
                })
                .count();
            assert_eq!(count, expected);
        }
    }

    #[test]
    fn centers() {
        assert_eq!(center(&arc("K4")).order(), 4);
        assert_eq!(center(&arc("S3")).elements, vec![0]);
        let q8 = arc("Q8");
        let z = center(&q8);
        let names: Vec<&str> = z.elements.iter().map(|&i| q8.element_name(i)).collect();
        assert_eq!(names, ["1", "-1"]);
    }

    #[test]
    fn quotients() {
        let k = arc("K4");
        let l = SubgroupRef::generated(k.clone(), &[1]);
        let q = quotient(&k, &l).unwrap();
        assert_eq!(q.group.order(), 2);
        assert_eq!(q.transversal, vec![0, 2]);
        assert_eq!(q.group.element_names(), ["eL", "bL"]);
        assert_eq!(quotient(&k, &SubgroupRef::trivial(k.clone())).unwrap().group.order(), 4);
        assert_eq!(quotient(&k, &SubgroupRef::whole(k.clone())).unwrap().group.order(), 1);
        let s3 = arc("S3");
        let t = SubgroupRef::generated(s3.clone(), &[s3.index_of("(12)").unwrap()]);
        assert!(matches!(quotient(&s3, &t), Err(Error::NotNormal)));
    }

    #[test]
    fn projection_is_homomorphism_with_kernel_l() {
        for name in ["K4", "Q8", "D4", "Z:6"] {
            let g = arc(name);
            for l in enumerate_subgroups(&g).into_iter().filter(SubgroupRef::is_normal) {
                let q = quotient(&g, &l).unwrap();
                for a in 0..g.order() {
                    for b in 0..g.order() {
                        assert_eq!(q.projection[g.mul(a, b)], q.group.mul(q.projection[a], q.projection[b]));
                    }
                }
                let kernel: Vec<usize> = (0..g.order()).filter(|&x| q.projection[x] == 0).collect();
                assert_eq!(kernel, l.elements);
            }
        }
    }

    #[test]
    fn klein_cocycle_is_not_a_coboundary() {
        let q = Field::Rationals;
        let c = klein_nontrivial_cocycle(q).unwrap();
        assert_eq!(c.get(2, 1), &q.int(-1));
        assert_eq!(c.get(1, 2), &q.int(1));
        for g in 0..4 {
            assert!(c.get(0, g).is_one());
        }
        let g = &c.group;
        let (a, b) = (1, 2);
        let lhs = c.get(a, b) * c.get(b, g.mul(a, b));
        let rhs = c.get(b, a) * c.get(g.mul(b, a), b);
        assert_eq!(lhs, rhs);
        assert!(c.sign_coboundary_witness().is_none());
        assert!(GroupCocycle::trivial(g.clone(), q).sign_coboundary_witness().is_some());
        assert!(klein_nontrivial_cocycle(Field::prime(2).unwrap()).is_err());
    }
}
