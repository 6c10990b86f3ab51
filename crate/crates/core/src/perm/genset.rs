use super::Permutation;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub label: String,
    pub perm: Permutation,
}

/// A labelled list of permutations of a common degree.
///
/// Duplicate permutations under different labels are allowed (e.g. `lx` at n = 2,
/// where L and X coincide); the graph simply gets parallel edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorSet {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<Generator>,
    #[serde(rename = "inverse_closed")]
    declared_inverse_closed: bool,
}

#[derive(Deserialize)]
struct RawGeneratorSet {
    name: String,
    degree: usize,
    generators: Vec<Generator>,
    inverse_closed: bool,
}

impl<'de> Deserialize<'de> for GeneratorSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawGeneratorSet::deserialize(d)?;
        let gs = GeneratorSet::new(raw.name, raw.degree, raw.generators).map_err(serde::de::Error::custom)?;
        if gs.declared_inverse_closed != raw.inverse_closed {
            return Err(serde::de::Error::custom(format!(
                "inverse_closed is {} but the generators say {}",
                raw.inverse_closed, gs.declared_inverse_closed
            )));
        }
        Ok(gs)
    }
}

impl GeneratorSet {
    /// Validates degrees, label uniqueness and non-identity, and computes inverse closure.
    pub fn new(name: impl Into<String>, degree: usize, generators: Vec<Generator>) -> Result<Self> {
        let mut labels = HashSet::new();
        for g in &generators {
            if g.perm.degree() != degree {
                return Err(Error::DegreeMismatch { left: degree, right: g.perm.degree() });
            }
            if g.perm.is_identity() {
                return Err(Error::InvalidParameter(format!("generator `{}` is the identity", g.label)));
            }
            if !labels.insert(g.label.as_str()) {
                return Err(Error::InvalidParameter(format!("duplicate label `{}`", g.label)));
            }
        }
        if generators.is_empty() {
            return Err(Error::InvalidParameter("empty generator set".into()));
        }
        let perms: HashSet<&Permutation> = generators.iter().map(|g| &g.perm).collect();
        let closed = generators.iter().all(|g| perms.contains(&g.perm.inverse()));
        Ok(GeneratorSet { name: name.into(), degree, generators, declared_inverse_closed: closed })
    }

    /// Builds a set from unlabelled permutations, labelling each by its cycle notation.
    pub fn from_perms(name: impl Into<String>, perms: Vec<Permutation>) -> Result<Self> {
        let degree = perms.first().map(Permutation::degree).ok_or_else(|| Error::InvalidParameter("empty generator set".into()))?;
        let mut generators = Vec::with_capacity(perms.len());
        let mut used = HashSet::new();
        for perm in perms {
            let mut label = perm.to_string();
            while !used.insert(label.clone()) {
                label.push('*');
            }
            generators.push(Generator { label, perm });
        }
        Self::new(name, degree, generators)
    }

    pub fn declared_inverse_closed(&self) -> bool {
        self.declared_inverse_closed
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn perms(&self) -> impl Iterator<Item = &Permutation> {
        self.generators.iter().map(|g| &g.perm)
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.generators.iter().map(|g| g.label.as_str())
    }

    pub fn get(&self, label: &str) -> Option<&Permutation> {
        self.generators.iter().find(|g| g.label == label).map(|g| &g.perm)
    }

    /// Appends every missing inverse, labelled `<label>'`, after the originals.
    pub fn inverse_closure(&self) -> GeneratorSet {
        let mut present: HashSet<Permutation> = self.perms().cloned().collect();
        let mut generators = self.generators.clone();
        let mut labels: HashSet<String> = self.labels().map(str::to_owned).collect();
        for g in &self.generators {
            let inv = g.perm.inverse();
            if present.insert(inv.clone()) {
                let mut label = format!("{}'", g.label);
                while !labels.insert(label.clone()) {
                    label.push('\'');
                }
                generators.push(Generator { label, perm: inv });
            }
        }
        GeneratorSet::new(self.name.clone(), self.degree, generators).expect("closure preserves validity")
    }

    /// Label of the move undoing `index`, if present in the set.
    pub fn inverse_index(&self, index: usize) -> Option<usize> {
        let inv = self.generators[index].perm.inverse();
        self.generators.iter().position(|g| g.perm == inv)
    }

    /// Same generators conjugated by `h`: `h g h⁻¹` for each `g`.
    pub fn conjugate_by(&self, h: &Permutation) -> Result<GeneratorSet> {
        let generators = self
            .generators
            .iter()
            .map(|g| Ok(Generator { label: g.label.clone(), perm: g.perm.conjugate_by(h)? }))
            .collect::<Result<Vec<_>>>()?;
        GeneratorSet::new(self.name.clone(), self.degree, generators)
    }
}
