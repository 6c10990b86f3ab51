//! Graph definitions: a state space, a start state and a list of moves.

use crate::codec::Codec;
use crate::error::{Error, Result};
use crate::matgroup;
use crate::perm::{catalog, FamilyParams, GeneratorSet, Permutation};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StateSpace {
    /// All permutations of degree `n`; states are one-line images.
    FullPermutation { n: usize },
    /// Rearrangements of a vector with `content[a]` copies of symbol `a`.
    CosetVector { content: Vec<usize> },
    /// Residue vectors, coordinate `i` in `0..radices[i]`.
    MixedRadix { radices: Vec<u32> },
}

impl StateSpace {
    /// Content with ⌊n/2⌋ zeros followed by ones.
    pub fn binary_coset(n: usize) -> Self {
        StateSpace::CosetVector { content: vec![n / 2, n - n / 2] }
    }

    pub fn state_len(&self) -> usize {
        match self {
            StateSpace::FullPermutation { n } => *n,
            StateSpace::CosetVector { content } => content.iter().sum(),
            StateSpace::MixedRadix { radices } => radices.len(),
        }
    }

    /// Canonical start: identity, sorted vector, or the zero vector.
    pub fn default_start(&self) -> Vec<u8> {
        match self {
            StateSpace::FullPermutation { n } => (0..*n).map(|i| i as u8).collect(),
            StateSpace::CosetVector { content } => {
                content.iter().enumerate().flat_map(|(sym, &c)| std::iter::repeat(sym as u8).take(c)).collect()
            }
            StateSpace::MixedRadix { radices } => vec![0; radices.len()],
        }
    }

    pub fn validate(&self, state: &[u8]) -> Result<()> {
        if state.len() != self.state_len() {
            return Err(Error::InvalidState(format!("length {} but space needs {}", state.len(), self.state_len())));
        }
        match self {
            StateSpace::FullPermutation { .. } => {
                Permutation::from_bytes(state).map_err(|e| Error::InvalidState(e.to_string()))?;
            }
            StateSpace::CosetVector { content } => {
                let mut counts = vec![0usize; content.len()];
                for &v in state {
                    let slot = counts.get_mut(v as usize).ok_or_else(|| Error::InvalidState(format!("symbol {v} outside alphabet")))?;
                    *slot += 1;
                }
                if &counts != content {
                    return Err(Error::InvalidState(format!("content {counts:?} differs from {content:?}")));
                }
            }
            StateSpace::MixedRadix { radices } => {
                if let Some((i, &v)) = state.iter().enumerate().find(|(i, &v)| v as u32 >= radices[*i]) {
                    return Err(Error::InvalidState(format!("coordinate {i} = {v} out of range")));
                }
            }
        }
        Ok(())
    }

    /// Ranking codec, when one exists for this space.
    pub fn codec(&self) -> Result<Codec> {
        match self {
            StateSpace::FullPermutation { n } => Codec::lehmer(*n),
            StateSpace::CosetVector { content } if content.len() == 2 => Codec::combinadic(content[0] + content[1], content[1]),
            StateSpace::CosetVector { content } if content.iter().all(|&c| c == 1) => Codec::lehmer(content.len()),
            StateSpace::CosetVector { .. } => Err(Error::NoCodec),
            StateSpace::MixedRadix { radices } => Codec::mixed_radix(radices),
        }
    }
}

/// One coordinate update `s[target] += coef * (s[source] or 1) mod m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineTerm {
    pub target: usize,
    pub source: Option<usize>,
    pub coef: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Action {
    /// `result[i] = state[g[i]]`.
    Positions(Permutation),
    /// Simultaneous affine updates mod `modulus`; all sources read the old state.
    Affine { modulus: u32, terms: Vec<AffineTerm> },
}

impl Action {
    #[inline]
    pub fn apply_into(&self, state: &[u8], out: &mut [u8]) {
        match self {
            Action::Positions(g) => {
                for (o, &src) in out.iter_mut().zip(g.images()) {
                    *o = state[src as usize];
                }
            }
            Action::Affine { modulus, terms } => {
                out.copy_from_slice(state);
                for t in terms {
                    let factor = t.source.map_or(1, |s| state[s] as u32);
                    out[t.target] = ((out[t.target] as u32 + t.coef * factor) % modulus) as u8;
                }
            }
        }
    }

    fn is_inverse_of(&self, other: &Action) -> bool {
        match (self, other) {
            (Action::Positions(a), Action::Positions(b)) => a.inverse() == *b,
            (Action::Affine { modulus: m1, terms: t1 }, Action::Affine { modulus: m2, terms: t2 }) => {
                m1 == m2
                    && t1.len() == t2.len()
                    && t1.iter().zip(t2).all(|(a, b)| a.target == b.target && a.source == b.source && (a.coef + b.coef) % m1 == 0)
            }
            _ => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Move {
    pub label: String,
    pub action: Action,
}

#[derive(Clone, Debug)]
pub struct GraphDef {
    pub name: String,
    /// Present for permutation-generated graphs.
    pub generator_set: Option<GeneratorSet>,
    pub space: StateSpace,
    pub moves: Vec<Move>,
    pub start: Vec<u8>,
    pub directed: bool,
    inverses: Vec<Option<usize>>,
    /// Descriptor of a matrix-group space, kept for serialization.
    pub(crate) descriptor: Option<SpaceJson>,
}

/// `result[i] = s[g[i]]`.
pub fn apply(g: &Permutation, s: &[u8]) -> Result<Vec<u8>> {
    if g.degree() != s.len() {
        return Err(Error::DegreeMismatch { left: g.degree(), right: s.len() });
    }
    Ok(g.images().iter().map(|&i| s[i as usize]).collect())
}

impl GraphDef {
    /// Cayley graph of the group generated by `gs`, started at the identity.
    pub fn cayley(gs: GeneratorSet) -> Result<Self> {
        let space = StateSpace::FullPermutation { n: gs.degree };
        Self::from_generators(gs, space, None)
    }

    /// Schreier graph on the orbit of the sorted binary vector.
    pub fn binary_coset(gs: GeneratorSet) -> Result<Self> {
        let space = StateSpace::binary_coset(gs.degree);
        Self::from_generators(gs, space, None)
    }

    pub fn from_generators(gs: GeneratorSet, space: StateSpace, start: Option<Vec<u8>>) -> Result<Self> {
        if matches!(space, StateSpace::MixedRadix { .. }) {
            return Err(Error::InvalidParameter("permutation generators need a full or coset space".into()));
        }
        if space.state_len() != gs.degree {
            return Err(Error::DegreeMismatch { left: gs.degree, right: space.state_len() });
        }
        let moves = gs.generators.iter().map(|g| Move { label: g.label.clone(), action: Action::Positions(g.perm.clone()) }).collect();
        let directed = !gs.declared_inverse_closed();
        let name = gs.name.clone();
        Self::new(name, Some(gs), space, moves, start, directed)
    }

    pub fn new(
        name: String,
        generator_set: Option<GeneratorSet>,
        space: StateSpace,
        moves: Vec<Move>,
        start: Option<Vec<u8>>,
        directed: bool,
    ) -> Result<Self> {
        if moves.is_empty() {
            return Err(Error::InvalidParameter("graph needs at least one move".into()));
        }
        let start = start.unwrap_or_else(|| space.default_start());
        space.validate(&start)?;
        let inverses = (0..moves.len()).map(|i| moves.iter().position(|m| moves[i].action.is_inverse_of(&m.action))).collect();
        Ok(GraphDef { name, generator_set, space, moves, start, directed, inverses, descriptor: None })
    }

    /// Catalog family as a Cayley graph, or as a binary coset graph when `coset` is set.
    pub fn from_family(name: &str, n: usize, params: &FamilyParams, coset: bool) -> Result<Self> {
        let gs = catalog(name, n, params)?;
        if name == "signed_reversals" {
            let space = StateSpace::CosetVector { content: vec![1; gs.degree] };
            return Self::from_generators(gs, space, None);
        }
        if coset {
            Self::binary_coset(gs)
        } else {
            Self::cayley(gs)
        }
    }

    pub fn state_len(&self) -> usize {
        self.space.state_len()
    }

    pub fn move_index(&self, label: &str) -> Option<usize> {
        self.moves.iter().position(|m| m.label == label)
    }

    /// Index of a move undoing move `i`, if the move list contains one.
    pub fn inverse_of(&self, i: usize) -> Option<usize> {
        self.inverses[i]
    }

    pub fn apply_move(&self, i: usize, state: &[u8]) -> Vec<u8> {
        let mut out = vec![0u8; state.len()];
        self.moves[i].action.apply_into(state, &mut out);
        out
    }

    /// One entry per move, in move order; duplicates are kept.
    pub fn neighbors(&self, state: &[u8]) -> Vec<(&str, Vec<u8>)> {
        self.moves.iter().enumerate().map(|(i, m)| (m.label.as_str(), self.apply_move(i, state))).collect()
    }

    pub fn codec(&self) -> Result<Codec> {
        self.space.codec()
    }

    pub fn to_json(&self) -> GraphDefJson {
        GraphDefJson::from_def(self)
    }
}

/// Serialized graph definition: generator-set fields plus `space` and `start`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct GraphDefJson {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<crate::perm::Generator>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inverse_closed: Option<bool>,
    pub space: SpaceJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub start: Option<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SpaceJson {
    Full,
    Coset { content: Vec<usize> },
    Unitriangular { n: usize, m: u32, roots: matgroup::Roots, oriented: bool },
    Heisenberg { d: usize, m: u32 },
    Abelian { n: usize, m: u32 },
}

impl GraphDefJson {
    fn from_def(def: &GraphDef) -> Self {
        let (degree, generators, inverse_closed) = match &def.generator_set {
            Some(gs) => (Some(gs.degree), Some(gs.generators.clone()), Some(gs.declared_inverse_closed())),
            None => (None, None, None),
        };
        let space = match &def.space {
            StateSpace::FullPermutation { .. } => SpaceJson::Full,
            StateSpace::CosetVector { content } => SpaceJson::Coset { content: content.clone() },
            StateSpace::MixedRadix { .. } => def.descriptor.clone().expect("matrix graph carries its descriptor"),
        };
        GraphDefJson {
            name: def.name.clone(),
            degree,
            generators,
            inverse_closed,
            space,
            start: Some(def.start.iter().map(|&v| v as usize).collect()),
        }
    }

    pub fn build(&self) -> Result<GraphDef> {
        let start = match &self.start {
            Some(s) => Some(
                s.iter()
                    .map(|&v| u8::try_from(v).map_err(|_| Error::InvalidState(format!("entry {v} too large"))))
                    .collect::<Result<Vec<u8>>>()?,
            ),
            None => None,
        };
        let generator_set = || -> Result<GeneratorSet> {
            let degree = self.degree.ok_or_else(|| Error::InvalidParameter("`degree` is required".into()))?;
            let gens = self.generators.clone().ok_or_else(|| Error::InvalidParameter("`generators` is required".into()))?;
            let gs = GeneratorSet::new(self.name.clone(), degree, gens)?;
            if let Some(claim) = self.inverse_closed {
                if claim != gs.declared_inverse_closed() {
                    return Err(Error::InvalidParameter(format!("inverse_closed is {claim} but the generators say otherwise")));
                }
            }
            Ok(gs)
        };
        let mut def = match &self.space {
            SpaceJson::Full => {
                let gs = generator_set()?;
                let space = StateSpace::FullPermutation { n: gs.degree };
                GraphDef::from_generators(gs, space, start.clone())?
            }
            SpaceJson::Coset { content } => GraphDef::from_generators(generator_set()?, StateSpace::CosetVector { content: content.clone() }, start.clone())?,
            SpaceJson::Unitriangular { n, m, roots, oriented } => matgroup::unitriangular(*n, *m, *roots, *oriented)?,
            SpaceJson::Heisenberg { d, m } => matgroup::heisenberg(*d, *m)?,
            SpaceJson::Abelian { n, m } => matgroup::abelian(*n, *m)?,
        };
        if let (Some(s), StateSpace::MixedRadix { .. }) = (start, &def.space) {
            def.space.validate(&s)?;
            def.start = s;
        }
        def.name = self.name.clone();
        Ok(def)
    }
}
