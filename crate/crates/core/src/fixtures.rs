//! Example graphs used throughout the tests, benches and docs.
//!
//! Each fixture is stored as a `.g` file under `fixtures/` and embedded at
//! compile time.

use crate::graph::MixedGraph;
use crate::io::parse_graph;

/// `(file stem, contents)` for every fixture.
pub const ALL: &[(&str, &str)] = &[
    ("fig1a", include_str!("../fixtures/fig1a.g")),
    ("fig2b", include_str!("../fixtures/fig2b.g")),
    ("fig3a", include_str!("../fixtures/fig3a.g")),
    ("fig3b", include_str!("../fixtures/fig3b.g")),
    ("fig3c", include_str!("../fixtures/fig3c.g")),
    ("fig4a", include_str!("../fixtures/fig4a.g")),
    ("fig4b", include_str!("../fixtures/fig4b.g")),
    ("fig5", include_str!("../fixtures/fig5.g")),
    ("fig6a", include_str!("../fixtures/fig6a.g")),
    ("fig6b", include_str!("../fixtures/fig6b.g")),
    ("fig7a", include_str!("../fixtures/fig7a.g")),
    ("fig7b", include_str!("../fixtures/fig7b.g")),
    ("fig8", include_str!("../fixtures/fig8.g")),
    ("fig10", include_str!("../fixtures/fig10.g")),
    ("fig11", include_str!("../fixtures/fig11.g")),
    ("fig12", include_str!("../fixtures/fig12.g")),
];

/// Looks a fixture up by file stem.
pub fn by_name(name: &str) -> Option<MixedGraph> {
    ALL.iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| parse_graph(text).expect("fixture parses"))
}

pub fn fig1a() -> MixedGraph {
    by_name("fig1a").unwrap()
}

pub fn fig2b() -> MixedGraph {
    by_name("fig2b").unwrap()
}

pub fn fig3a() -> MixedGraph {
    by_name("fig3a").unwrap()
}

pub fn fig3b() -> MixedGraph {
    by_name("fig3b").unwrap()
}

pub fn fig3c() -> MixedGraph {
    by_name("fig3c").unwrap()
}

pub fn fig4a() -> MixedGraph {
    by_name("fig4a").unwrap()
}

pub fn fig4b() -> MixedGraph {
    by_name("fig4b").unwrap()
}

pub fn fig5() -> MixedGraph {
    by_name("fig5").unwrap()
}

pub fn fig6a() -> MixedGraph {
    by_name("fig6a").unwrap()
}

pub fn fig6b() -> MixedGraph {
    by_name("fig6b").unwrap()
}

pub fn fig7a() -> MixedGraph {
    by_name("fig7a").unwrap()
}

pub fn fig7b() -> MixedGraph {
    by_name("fig7b").unwrap()
}

pub fn fig8() -> MixedGraph {
    by_name("fig8").unwrap()
}

pub fn fig10() -> MixedGraph {
    by_name("fig10").unwrap()
}

pub fn fig11() -> MixedGraph {
    by_name("fig11").unwrap()
}

pub fn fig12() -> MixedGraph {
    by_name("fig12").unwrap()
}
