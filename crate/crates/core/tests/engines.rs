use cayley_core::bfs::{growth_bitmask, growth_hash, BfsOptions, BitmaskMode, GrowthResult};
use cayley_core::graph::StateSpace;
use cayley_core::perm::FamilyParams;
use cayley_core::{GeneratorSet, GraphDef, Permutation};
use proptest::prelude::*;

fn opts(mode: BitmaskMode) -> BfsOptions {
    BfsOptions { antipode_cap: 64, bitmask_mode: mode, ..Default::default() }
}

/// None when the generators repeat.
fn random_def(n: usize, perms: Vec<Vec<u8>>, inverses: bool, coset: bool) -> Option<GraphDef> {
    let perms = perms.iter().map(|p| Permutation::from_bytes(p).unwrap()).collect();
    let mut gs = GeneratorSet::from_perms("random", perms).ok()?;
    if inverses {
        gs = gs.inverse_closure();
    }
    let space = if coset { StateSpace::CosetVector { content: vec![n / 2, n - n / 2] } } else { StateSpace::FullPermutation { n } };
    Some(GraphDef::from_generators(gs, space, None).unwrap())
}

fn all_engines(def: &GraphDef) -> Vec<GrowthResult> {
    let codec = def.codec().unwrap();
    let mut out = vec![growth_hash(def, &opts(BitmaskMode::Auto)).unwrap()];
    out.push(growth_bitmask(def, &codec, &opts(BitmaskMode::DirectionOptimizing)).unwrap());
    if !def.directed {
        out.push(growth_bitmask(def, &codec, &opts(BitmaskMode::Rotating)).unwrap());
    }
    out
}

fn generator_sets() -> impl Strategy<Value = (usize, Vec<Vec<u8>>, bool, bool)> {
    (3usize..=8).prop_flat_map(|n| {
        let perm = Just((0..n as u8).collect::<Vec<u8>>())
            .prop_shuffle()
            .prop_filter("identity", |p| p.iter().enumerate().any(|(i, &v)| v as usize != i));
        (Just(n), prop::collection::vec(perm, 1..=3), any::<bool>(), any::<bool>())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn engines_agree_on_random_generators((n, perms, inverses, coset) in generator_sets()) {
        let def = random_def(n, perms, inverses, coset);
        prop_assume!(def.is_some());
        let def = def.unwrap();
        let results = all_engines(&def);
        for r in &results[1..] {
            prop_assert_eq!(r, &results[0]);
        }
    }

    #[test]
    fn layers_respect_the_degree_bound((n, perms, inverses, coset) in generator_sets()) {
        let def = random_def(n, perms, inverses, coset);
        prop_assume!(def.is_some());
        let def = def.unwrap();
        let g = growth_hash(&def, &BfsOptions::default()).unwrap();
        let degree = def.moves.len() as u64;
        for w in g.layer_sizes.windows(2) {
            prop_assert!(w[1] <= w[0] * degree);
        }
        prop_assert_eq!(g.layer_sizes.iter().sum::<u64>(), g.reachable);
    }
}

#[test]
fn transposon_cosets_grow_palindromically() {
    for n in (4..=14).step_by(2) {
        let def = GraphDef::from_family("transposons", n, &FamilyParams::default(), true).unwrap();
        let g = growth_bitmask(&def, &def.codec().unwrap(), &BfsOptions::default()).unwrap();
        let mut rev = g.layer_sizes.clone();
        rev.reverse();
        assert_eq!(g.layer_sizes, rev, "n={n}");
    }
}

#[test]
fn results_do_not_depend_on_thread_count() {
    let max = std::thread::available_parallelism().map_or(4, |p| p.get()).max(3);
    let defs = [
        GraphDef::from_family("pancake", 9, &FamilyParams::default(), false).unwrap(),
        GraphDef::from_family("lrx", 9, &FamilyParams::default(), false).unwrap(),
        GraphDef::from_family("transposons", 14, &FamilyParams::default(), true).unwrap(),
    ];
    for def in &defs {
        let run = |threads: usize| {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
            pool.install(|| all_engines(def))
        };
        let one = run(1);
        assert_eq!(one, run(2), "{}", def.name);
        assert_eq!(one, run(max), "{}", def.name);
    }
}

#[test]
fn max_depth_truncates() {
    let def = GraphDef::from_family("coxeter", 7, &FamilyParams::default(), false).unwrap();
    let o = BfsOptions { max_depth: Some(4), ..Default::default() };
    let h = growth_hash(&def, &o).unwrap();
    let b = growth_bitmask(&def, &def.codec().unwrap(), &o).unwrap();
    assert!(h.truncated);
    assert_eq!(h.layer_sizes, [1, 6, 20, 49, 98]);
    assert_eq!(h, b);
}
