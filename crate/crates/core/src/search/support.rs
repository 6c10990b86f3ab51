//! Support graphs of generator sets and the square-with-whiskers classifier.

use crate::perm::GeneratorSet;
use serde::Serialize;
use std::collections::BTreeSet;
use std::fmt::Write as _;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SupportEdge {
    pub from: usize,
    pub to: usize,
    /// Index of the generator that produced the edge.
    pub color: usize,
    pub directed: bool,
}

/// Colored multigraph on `0..n`: an undirected edge per 2-cycle of an
/// involution, an arc `i -> g(i)` per moved point of any other generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SupportGraph {
    pub n: usize,
    pub colors: Vec<String>,
    pub edges: Vec<SupportEdge>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PatternReport {
    pub connected: bool,
    pub unicyclic: bool,
    pub cycle_length: Option<usize>,
    pub whisker_count: usize,
    pub is_square_with_whiskers: bool,
}

impl PatternReport {
    pub fn tag(&self) -> String {
        match (self.connected, self.unicyclic, self.cycle_length) {
            (_, _, _) if self.is_square_with_whiskers => "square_with_whiskers".into(),
            (true, true, Some(len)) => format!("unicyclic_{len}"),
            (true, false, None) => "tree".into(),
            (true, false, _) => "multicyclic".into(),
            _ => "disconnected".into(),
        }
    }
}

pub fn support_graph(gs: &GeneratorSet) -> SupportGraph {
    let mut edges = Vec::new();
    for (color, g) in gs.generators.iter().enumerate() {
        let involution = g.perm.is_involution();
        for i in 0..gs.degree {
            let j = g.perm.image(i);
            if j == i || (involution && j < i) {
                continue;
            }
            edges.push(SupportEdge { from: i, to: j, color, directed: !involution });
        }
    }
    SupportGraph { n: gs.degree, colors: gs.labels().map(str::to_owned).collect(), edges }
}

impl SupportGraph {
    /// Underlying simple undirected edge set.
    pub fn simple_edges(&self) -> BTreeSet<(usize, usize)> {
        self.edges.iter().map(|e| (e.from.min(e.to), e.from.max(e.to))).collect()
    }

    pub fn classify(&self) -> PatternReport {
        let n = self.n;
        let edges = self.simple_edges();
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in &edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        // components over all n nodes
        let mut comp = vec![usize::MAX; n];
        let mut components = 0;
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let mut stack = vec![s];
            comp[s] = components;
            while let Some(v) = stack.pop() {
                for &w in &adj[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = components;
                        stack.push(w);
                    }
                }
            }
            components += 1;
        }
        let connected = components == 1;
        let cycle_rank = edges.len() + components - n;
        let unicyclic = cycle_rank == 1;

        // peel leaves; what survives is the union of cycles
        let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
        let mut alive = vec![true; n];
        let mut leaves: Vec<usize> = (0..n).filter(|&v| degree[v] <= 1).collect();
        while let Some(v) = leaves.pop() {
            if !alive[v] {
                continue;
            }
            alive[v] = false;
            for &w in &adj[v] {
                if alive[w] {
                    degree[w] -= 1;
                    if degree[w] == 1 {
                        leaves.push(w);
                    }
                }
            }
        }
        let core: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
        let cycle_length = (unicyclic && !core.is_empty()).then_some(core.len());
        let whisker_count = if cycle_length.is_some() {
            edges.iter().filter(|&&(a, b)| alive[a] != alive[b]).count()
        } else {
            0
        };
        PatternReport {
            connected,
            unicyclic,
            cycle_length,
            whisker_count,
            is_square_with_whiskers: connected && unicyclic && cycle_length == Some(4),
        }
    }

    /// Graphviz text. Involution edges are undirected; when any generator is not an
    /// involution the output is a digraph and involution edges carry `dir=none`.
    pub fn to_dot(&self) -> String {
        const PALETTE: [&str; 8] = ["red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "cyan"];
        let directed = self.edges.iter().any(|e| e.directed);
        let (kind, arrow) = if directed { ("digraph", "->") } else { ("graph", "--") };
        let mut out = format!("{kind} support {{\n");
        for v in 0..self.n {
            writeln!(out, "  {v};").unwrap();
        }
        for e in &self.edges {
            let color = PALETTE[e.color % PALETTE.len()];
            let label = self.colors[e.color].replace('"', "\\\"");
            let extra = if directed && !e.directed { ", dir=none" } else { "" };
            writeln!(out, "  {} {arrow} {} [color={color}, label=\"{label}\"{extra}];", e.from, e.to).unwrap();
        }
        out.push_str("}\n");
        out
    }
}

pub fn whiskers_classify(gs: &GeneratorSet) -> PatternReport {
    support_graph(gs).classify()
}

pub fn dot_export(sg: &SupportGraph) -> String {
    sg.to_dot()
}
