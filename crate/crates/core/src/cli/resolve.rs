use std::sync::Arc;

use super::instance::{
    AlgebraBody, BialgebraBody, Body, CocycleBody, GroupBody, InstanceFile, MapLines, MeasuringBody, Section,
};
use crate::convolution::ConvMap;
use crate::error::{Error, Result};
use crate::exactlin::{Field, VecSpace, Vector};
use crate::groups::{builtin_group, FinGroup};
use crate::hopf::{dual_group_algebra, group_algebra, sweedler_algebra, BialgebraData, Coalgebra, FinBialgebra, UnitalAlgebra};
use crate::partial::MeasuringData;
use crate::twisted::{GlobalTwistedAction, TwistedPartialActionData};

/// Builds library objects from an instance file, following references by section name.
/// Names that are not sections are tried as builtin addresses.
pub struct Resolver<'a> {
    pub file: &'a InstanceFile,
    pub field: Field,
}

/// A global twisted action on `B` together with the partial data it restricts to.
pub struct GlobalInstance {
    pub global: GlobalTwistedAction,
    pub partial: TwistedPartialActionData,
    pub phi: Vec<Vector>,
}

fn wrong_kind(name: &str, want: &str, found: &Section) -> Error {
    Error::Invalid(format!("`{name}` is a {} section, expected {want}", found.body.kind()))
}

impl<'a> Resolver<'a> {
    pub fn new(file: &'a InstanceFile, field: Field) -> Self {
        Resolver { file, field }
    }

    pub fn group(&self, name: &str) -> Result<Arc<FinGroup>> {
        match self.file.get(name) {
            Some(Section { body: Body::Group(g), .. }) => match g {
                GroupBody::Builtin(b) => Ok(Arc::new(builtin_group(b)?)),
                GroupBody::Table { name, elements, cayley } => {
                    let names = elements.clone().unwrap_or_else(|| (0..cayley.len()).map(|i| i.to_string()).collect());
                    Ok(Arc::new(FinGroup::from_table(name.clone(), names, cayley.clone())?))
                }
            },
            Some(other) => Err(wrong_kind(name, "a group", other)),
            None => builtin_group(name).map(Arc::new).map_err(|_| Error::DanglingReference(name.to_string())),
        }
    }

    /// Raw structure constants, unverified; `verify hopf` reports on these.
    pub fn bialgebra_data(&self, name: &str) -> Result<BialgebraData> {
        match self.file.get(name) {
            Some(Section { body: Body::Bialgebra(BialgebraBody::Explicit(d)), .. }) => Ok(d.clone()),
            Some(Section { body: Body::Bialgebra(BialgebraBody::Builtin(b)), .. }) => Ok(self.builtin_bialgebra(b)?.data()),
            Some(other) => Err(wrong_kind(name, "a bialgebra", other)),
            None => Ok(self.builtin_bialgebra(name)?.data()),
        }
    }

    pub fn bialgebra(&self, name: &str) -> Result<Arc<FinBialgebra>> {
        match self.file.get(name) {
            Some(Section { body: Body::Bialgebra(BialgebraBody::Explicit(d)), .. }) => Ok(Arc::new(FinBialgebra::new(d.clone())?)),
            Some(Section { body: Body::Bialgebra(BialgebraBody::Builtin(b)), .. }) => self.builtin_bialgebra(b).map(Arc::new),
            Some(other) => Err(wrong_kind(name, "a bialgebra", other)),
            None => self.builtin_bialgebra(name).map(Arc::new),
        }
    }

    /// `groupalg:<G>`, `dualgroupalg:<G>` or `sweedler`, with `<G>` a group section or builtin.
    pub fn builtin_bialgebra(&self, address: &str) -> Result<FinBialgebra> {
        if address == "sweedler" {
            return sweedler_algebra(self.field);
        }
        match address.split_once(':') {
            Some(("groupalg", g)) => Ok(group_algebra(&*self.group(g)?, self.field)),
            Some(("dualgroupalg", g)) => Ok(dual_group_algebra(&*self.group(g)?, self.field)),
            _ => Err(Error::DanglingReference(address.to_string())),
        }
    }

    pub fn algebra(&self, name: &str) -> Result<Arc<UnitalAlgebra>> {
        let builtin = |b: &str| match b {
            "base" => Ok(UnitalAlgebra::base_field(self.field)),
            "split" => Ok(UnitalAlgebra::split_pair(self.field)),
            other => Err(Error::DanglingReference(other.to_string())),
        };
        let alg = match self.file.get(name) {
            Some(Section { body: Body::Algebra(AlgebraBody::Builtin(b)), .. }) => builtin(b)?,
            Some(Section { body: Body::Algebra(AlgebraBody::Explicit { labels, mult, unit }), .. }) => {
                UnitalAlgebra::new(VecSpace::new(labels.clone())?, self.field, mult.clone(), unit.clone())?
            }
            Some(other) => return Err(wrong_kind(name, "an algebra", other)),
            None => builtin(name)?,
        };
        Ok(Arc::new(alg))
    }

    fn section(&self, name: &str) -> Result<&'a Section> {
        self.file.get(name).ok_or_else(|| Error::DanglingReference(name.to_string()))
    }

    pub fn measuring(&self, name: &str) -> Result<MeasuringData> {
        let s = self.section(name)?;
        let Body::Measuring(m) = &s.body else {
            return Err(wrong_kind(name, "a measuring", s));
        };
        self.measuring_body(m)
    }

    fn measuring_body(&self, m: &MeasuringBody) -> Result<MeasuringData> {
        let h = self.bialgebra(&m.hopf)?;
        let a = self.algebra(&m.algebra)?;
        let (n, d) = (h.dim(), a.dim());
        let mut action = vec![a.zero(); n * d];
        for (hl, al, v) in &m.action {
            let i = h.algebra.space.index_of(hl).ok_or_else(|| Error::Invalid(format!("unknown basis label `{hl}` of {}", m.hopf)))?;
            let j = a.space.index_of(al).ok_or_else(|| Error::Invalid(format!("unknown basis label `{al}` of {}", m.algebra)))?;
            if v.len() != d {
                return Err(Error::DimensionMismatch { expected: d, found: v.len() });
            }
            action[i * d + j] = v.clone();
        }
        MeasuringData::new(h, a, action)
    }

    pub fn cocycle(&self, name: &str) -> Result<TwistedPartialActionData> {
        let s = self.section(name)?;
        let Body::Cocycle(c) = &s.body else {
            return Err(wrong_kind(name, "a cocycle", s));
        };
        self.cocycle_body(c)
    }

    fn cocycle_body(&self, c: &CocycleBody) -> Result<TwistedPartialActionData> {
        let md = self.measuring(&c.measuring)?;
        let omega = map_from_lines(md.hopf.pair_coalgebra(), &md.target, &c.omega)?;
        let omega_prime = c
            .omega_prime
            .as_ref()
            .map(|l| map_from_lines(md.hopf.pair_coalgebra(), &md.target, l))
            .transpose()?;
        TwistedPartialActionData::new(md, omega, omega_prime)
    }

    /// A cocycle section with `restricts` and `phi`: `omega` is `u` and `omega_prime` is `u⁻¹`.
    pub fn global(&self, name: &str) -> Result<GlobalInstance> {
        let s = self.section(name)?;
        let Body::Cocycle(c) = &s.body else {
            return Err(wrong_kind(name, "a cocycle", s));
        };
        let (Some(partial), Some(phi)) = (&c.restricts, &c.phi) else {
            return Err(Error::Invalid(format!("`{name}` has no `restricts`/`phi`")));
        };
        let data = self.cocycle_body(c)?;
        let u_inv = data
            .omega_prime
            .clone()
            .ok_or_else(|| Error::Invalid(format!("`{name}` needs `omega_prime` for u⁻¹")))?;
        let global = GlobalTwistedAction::new(data.measuring.clone(), data.omega.clone(), u_inv)?;
        let partial = self.cocycle(partial)?;
        let a = partial.target();
        let b = &global.measuring.target;
        let mut images = vec![b.zero(); a.dim()];
        for (label, v) in phi {
            let i = a.space.index_of(label).ok_or_else(|| Error::Invalid(format!("unknown basis label `{label}`")))?;
            if v.len() != b.dim() {
                return Err(Error::DimensionMismatch { expected: b.dim(), found: v.len() });
            }
            images[i] = v.clone();
        }
        Ok(GlobalInstance {
            global,
            partial,
            phi: images,
        })
    }

    pub fn wtilde(&self, name: &str) -> Result<(TwistedPartialActionData, ConvMap)> {
        let s = self.section(name)?;
        let Body::Wtilde(w) = &s.body else {
            return Err(wrong_kind(name, "a wtilde", s));
        };
        let data = self.cocycle(&w.cocycle)?;
        let map = map_from_lines(data.hopf().pair_coalgebra(), data.target(), &w.map)?;
        Ok((data, map))
    }
}

/// Reads `label -> (…)` lines as a map `C → A`; omitted labels are zero.
pub fn map_from_lines(source: &Arc<Coalgebra>, target: &Arc<UnitalAlgebra>, lines: &MapLines) -> Result<ConvMap> {
    let mut coeffs = vec![target.zero(); source.dim()];
    for (label, v) in lines {
        let i = source.space.index_of(label).ok_or_else(|| Error::Invalid(format!("unknown basis label `{label}`")))?;
        if v.len() != target.dim() {
            return Err(Error::DimensionMismatch {
                expected: target.dim(),
                found: v.len(),
            });
        }
        coeffs[i] = v.clone();
    }
    ConvMap::new(source.clone(), target.clone(), coeffs)
}

/// Nonzero values of a map as `label -> (…)` lines.
pub fn lines_from_map(map: &ConvMap) -> MapLines {
    map.coeffs
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(i, v)| (map.source.label(i).to_string(), v.clone()))
        .collect()
}

/// Nonzero entries of a measuring as `h ⊗ a -> (…)` lines.
pub fn lines_from_measuring(md: &MeasuringData) -> Vec<(String, String, Vector)> {
    let d = md.target.dim();
    md.action
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(p, v)| (md.hopf.label(p / d).to_string(), md.target.label(p % d).to_string(), v.clone()))
        .collect()
}
