//! Fixtures shared by the benchmarks in `benches/`.

use weakid_core::{make_group, FiniteGroup, GroupConfig, SearchConfig, TSubgroupGens};

pub fn group(spec: &str) -> FiniteGroup {
    make_group(&spec.parse().expect("valid spec"), &GroupConfig::default()).expect("group builds")
}

pub fn gens(words: &[&str]) -> TSubgroupGens {
    TSubgroupGens::parse(words).expect("valid words")
}

pub fn sequential() -> SearchConfig {
    SearchConfig {
        parallel: false,
        ..SearchConfig::default()
    }
}
