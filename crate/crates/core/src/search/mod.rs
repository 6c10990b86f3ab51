//! Max-diameter generator search, structured families and support-graph patterns.

mod constructors;
mod support;

pub use constructors::{koltsov3, sheveleva2};
pub use support::{dot_export, support_graph, whiskers_classify, PatternReport, SupportEdge, SupportGraph};

use crate::bfs::{growth, BfsOptions};
use crate::codec::Codec;
use crate::error::{Error, Result};
use crate::graph::GraphDef;
use crate::perm::{conjugacy_class_reps, factorial, partitions, CycleType, GeneratorSet, Permutation};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Largest degree for exhaustive search.
pub const EXHAUSTIVE_MAX: usize = 7;
/// Second-generator samples drawn per conjugacy class in random mode, at most.
pub const CLASS_SAMPLE_CAP: u64 = 2000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    Exhaustive,
    Random,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeedInfo {
    /// Cycle type of the class representative used as first generator.
    pub first_class: Vec<usize>,
    /// Cycle types of the remaining generators.
    pub other_classes: Vec<Vec<usize>>,
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchRecord {
    pub generators: GeneratorSet,
    pub group_order: u64,
    pub diameter: usize,
    pub directed: bool,
    pub pattern: String,
    pub seed_info: SeedInfo,
}

impl SearchRecord {
    /// Cycle notation of the original (pre-closure) generators, joined by commas.
    pub fn key(&self) -> String {
        self.generators.generators.iter().filter(|g| !g.label.ends_with('\'')).map(|g| g.perm.to_string()).collect::<Vec<_>>().join(",")
    }

    pub fn has_involution(&self) -> bool {
        self.generators.perms().any(Permutation::is_involution)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchConfig {
    pub n: usize,
    pub directed: bool,
    pub mode: SearchMode,
    /// Maximum number of generator sets evaluated.
    pub budget: u64,
    pub seed: u64,
    /// Generators per set (2 or 3).
    pub pair_count: usize,
    /// Records kept beyond those attaining the maximum.
    pub keep: usize,
}

impl SearchConfig {
    pub fn new(n: usize, directed: bool, mode: SearchMode) -> Self {
        SearchConfig { n, directed, mode, budget: u64::MAX, seed: 0, pair_count: 2, keep: 100 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchOutcome {
    /// Sorted by diameter descending, then canonical key.
    pub records: Vec<SearchRecord>,
    pub evaluated: u64,
    pub budget_exhausted: bool,
}

impl SearchOutcome {
    pub fn max_diameter(&self) -> Option<usize> {
        self.records.first().map(|r| r.diameter)
    }

    /// Records attaining the maximum diameter.
    pub fn maximal(&self) -> impl Iterator<Item = &SearchRecord> {
        let best = self.max_diameter();
        self.records.iter().take_while(move |r| Some(r.diameter) == best)
    }
}

/// Full multiplication table of S_n for small n: `table[s * n! + g]` is the
/// rank of `s ∘ g`, the state reached from `s` by generator `g`.
struct SmallGroup {
    size: usize,
    codec: Codec,
    table: Vec<u16>,
}

impl SmallGroup {
    fn new(n: usize) -> Self {
        assert!(n <= EXHAUSTIVE_MAX);
        let codec = Codec::lehmer(n).unwrap();
        let size = codec.capacity() as usize;
        let perms: Vec<Vec<u8>> = (0..size as u64).map(|r| codec.unrank(r).unwrap()).collect();
        let mut table = vec![0u16; size * size];
        table.par_chunks_mut(size).enumerate().for_each(|(s, row)| {
            let mut t = vec![0u8; n];
            for (g, slot) in row.iter_mut().enumerate() {
                for i in 0..n {
                    t[i] = perms[s][perms[g][i] as usize];
                }
                *slot = codec.rank_unchecked(&t) as u16;
            }
        });
        SmallGroup { size, codec, table }
    }

    fn rank(&self, p: &Permutation) -> usize {
        self.codec.rank_unchecked(p.images()) as usize
    }

    /// (reachable, eccentricity of the identity) for generators given by rank.
    fn bfs(&self, gens: &[usize], dist: &mut [u8], frontier: &mut Vec<u16>, next: &mut Vec<u16>) -> (u64, usize) {
        dist.fill(u8::MAX);
        frontier.clear();
        dist[0] = 0;
        frontier.push(0);
        let mut reached = 1u64;
        let mut depth = 0u8;
        loop {
            next.clear();
            for &s in frontier.iter() {
                let row = &self.table[s as usize * self.size..][..self.size];
                for &g in gens {
                    let t = row[g];
                    if dist[t as usize] == u8::MAX {
                        dist[t as usize] = depth + 1;
                        next.push(t);
                    }
                }
            }
            if next.is_empty() {
                return (reached, depth as usize);
            }
            reached += next.len() as u64;
            depth += 1;
            std::mem::swap(frontier, next);
        }
    }
}

fn closure(gs: &GeneratorSet, directed: bool) -> GeneratorSet {
    if directed {
        gs.clone()
    } else {
        gs.inverse_closure()
    }
}

fn make_record(gs: GeneratorSet, group_order: u64, diameter: usize, directed: bool, seed: Option<u64>) -> SearchRecord {
    let pattern = whiskers_classify(&gs).tag();
    let mut classes = gs.generators.iter().filter(|g| !g.label.ends_with('\'')).map(|g| g.perm.cycle_type().parts().to_vec());
    let first_class = classes.next().unwrap_or_default();
    let seed_info = SeedInfo { first_class, other_classes: classes.collect(), seed };
    SearchRecord { generators: gs, group_order, diameter, directed, pattern, seed_info }
}

/// Uniform element of the class with the given cycle type: shuffle the points
/// and cut them into consecutive cycles.
fn sample_class(parts: &[usize], rng: &mut ChaCha8Rng) -> Permutation {
    let n: usize = parts.iter().sum();
    let mut points: Vec<usize> = (0..n).collect();
    points.shuffle(rng);
    let mut images: Vec<usize> = (0..n).collect();
    let mut at = 0;
    for &len in parts {
        let cyc = &points[at..at + len];
        for j in 0..len {
            images[cyc[j]] = cyc[(j + 1) % len];
        }
        at += len;
    }
    Permutation::from_images(&images).unwrap()
}

/// Candidate generator tuples: the first is a class representative, the rest
/// come from `others`.
fn candidates(n: usize, pair_count: usize, others: &[Permutation]) -> Vec<Vec<Permutation>> {
    let reps: Vec<Permutation> = conjugacy_class_reps(n).into_iter().filter(|p| !p.is_identity()).collect();
    let mut out = Vec::new();
    for rep in &reps {
        match pair_count {
            2 => {
                for b in others.iter().filter(|b| *b != rep) {
                    out.push(vec![rep.clone(), b.clone()]);
                }
            }
            _ => {
                for (i, b) in others.iter().enumerate() {
                    if b == rep {
                        continue;
                    }
                    for c in &others[i + 1..] {
                        if c != rep {
                            out.push(vec![rep.clone(), b.clone(), c.clone()]);
                        }
                    }
                }
            }
        }
    }
    out
}

/// Searches for generating sets of S_n with large Cayley-graph diameter.
///
/// The first generator ranges over conjugacy class representatives, which
/// loses nothing since conjugating a whole set preserves the graph. Sets whose
/// closure is not S_n or A_n are dropped.
pub fn max_diameter_search(cfg: &SearchConfig) -> Result<SearchOutcome> {
    let n = cfg.n;
    if !(2..=3).contains(&cfg.pair_count) {
        return Err(Error::InvalidParameter(format!("pair_count must be 2 or 3, got {}", cfg.pair_count)));
    }
    if n < 3 {
        return Err(Error::DegreeTooSmall { family: "search".into(), n, min: 3 });
    }
    let order = factorial(n).filter(|_| n <= crate::codec::LEHMER_MAX).ok_or_else(|| Error::InvalidParameter("degree too large for search".into()))?;
    let others: Vec<Permutation> = match cfg.mode {
        SearchMode::Exhaustive => {
            if n > EXHAUSTIVE_MAX {
                return Err(Error::InvalidParameter(format!("exhaustive search needs n <= {EXHAUSTIVE_MAX}")));
            }
            let codec = Codec::lehmer(n)?;
            (1..order).map(|r| Permutation::from_bytes(&codec.unrank(r).unwrap()).unwrap()).collect()
        }
        SearchMode::Random => {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            let mut out = Vec::new();
            for parts in partitions(n).into_iter().filter(|p| p[0] > 1) {
                let ct = CycleType::new(parts.clone());
                let count = (ct.class_size().min(CLASS_SAMPLE_CAP as u128) as u64).max(1);
                for _ in 0..count {
                    out.push(sample_class(&parts, &mut rng));
                }
            }
            out.sort();
            out.dedup();
            out
        }
    };
    let mut tuples = candidates(n, cfg.pair_count, &others);
    let budget_exhausted = tuples.len() as u64 > cfg.budget;
    tuples.truncate(cfg.budget.min(usize::MAX as u64) as usize);
    let evaluated = tuples.len() as u64;
    let seed = (cfg.mode == SearchMode::Random).then_some(cfg.seed);

    let evaluate_small = n <= EXHAUSTIVE_MAX;
    let small = evaluate_small.then(|| SmallGroup::new(n));
    let found: Vec<(GeneratorSet, u64, usize)> = tuples
        .into_par_iter()
        .map_init(
            || {
                let size = small.as_ref().map_or(0, |g| g.size);
                (vec![0u8; size], Vec::with_capacity(size), Vec::with_capacity(size))
            },
            |(dist, frontier, next), perms| -> Result<Option<(GeneratorSet, u64, usize)>> {
                let gs = closure(&GeneratorSet::from_perms(format!("search_n{n}"), perms)?, cfg.directed);
                let (reached, diameter) = match &small {
                    Some(sg) => {
                        let ranks: Vec<usize> = gs.perms().map(|p| sg.rank(p)).collect();
                        sg.bfs(&ranks, dist, frontier, next)
                    }
                    None => {
                        let def = GraphDef::cayley(gs.clone())?;
                        let (g, _) = growth(&def, &BfsOptions::default())?;
                        (g.reachable, g.diameter)
                    }
                };
                Ok((reached == order || reached * 2 == order).then_some((gs, reached, diameter)))
            },
        )
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();

    let best = found.iter().map(|f| f.2).max();
    let mut ranked: Vec<(usize, String, usize)> = found.iter().enumerate().map(|(i, f)| (f.2, key_of(&f.0), i)).collect();
    ranked.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));
    let at_max = ranked.iter().take_while(|r| Some(r.0) == best).count();
    let mut slots: Vec<Option<(GeneratorSet, u64, usize)>> = found.into_iter().map(Some).collect();
    let records = ranked
        .into_iter()
        .take(at_max.max(cfg.keep))
        .map(|(_, _, i)| {
            let (gs, reached, d) = slots[i].take().unwrap();
            make_record(gs, reached, d, cfg.directed, seed)
        })
        .collect();
    Ok(SearchOutcome { records, evaluated, budget_exhausted })
}

fn key_of(gs: &GeneratorSet) -> String {
    gs.generators.iter().filter(|g| !g.label.ends_with('\'')).map(|g| g.perm.to_string()).collect::<Vec<_>>().join(",")
}
