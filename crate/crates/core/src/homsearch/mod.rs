//! Homomorphism search.
//!
//! A homomorphism `F x ... x F -> G` (N factors) is determined by N
//! assignments of generators to elements of G, subject to one constraint:
//! images coming from different factors must commute. The counterexample
//! search in [`multicopy`] walks such assignments copy by copy and restricts
//! each copy's candidates to the intersection of the centralizers of every
//! image already placed in earlier copies.

mod endo;
mod multicopy;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::groups::{Elem, FiniteGroup};
use crate::words::{Gen, Word};

pub use endo::{endomorphisms, product_homs_to_g, GroupEndomorphism};
pub use multicopy::{find_noncollapsing_multicopy, naive_noncollapsing_multicopy};

/// Generator images for a homomorphism `F -> G`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment {
    images: BTreeMap<Gen, Elem>,
}

impl Assignment {
    pub fn new<I: IntoIterator<Item = (Gen, Elem)>>(images: I) -> Self {
        Assignment {
            images: images.into_iter().collect(),
        }
    }

    pub fn get(&self, g: Gen) -> Option<Elem> {
        self.images.get(&g).copied()
    }

    pub fn insert(&mut self, g: Gen, x: Elem) {
        self.images.insert(g, x);
    }

    pub fn images(&self) -> &BTreeMap<Gen, Elem> {
        &self.images
    }

    /// `(self ∘ e)(g_i) = evaluate(e(g_i), self)` on the generators listed.
    pub fn precompose(
        &self,
        g: &FiniteGroup,
        e: &crate::words::Endomorphism,
        gens: impl IntoIterator<Item = Gen>,
    ) -> crate::Result<Assignment> {
        let mut out = Assignment::default();
        for i in gens {
            out.insert(i, g.evaluate_word(&e.image(i), self)?);
        }
        Ok(out)
    }
}

/// N assignments into the same group whose images pairwise commute across
/// copies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiCopyAssignment {
    pub copies: Vec<Assignment>,
}

impl MultiCopyAssignment {
    pub fn is_cross_commuting(&self, g: &FiniteGroup) -> bool {
        for (j, a) in self.copies.iter().enumerate() {
            for b in &self.copies[j + 1..] {
                for &x in a.images.values() {
                    for &y in b.images.values() {
                        if !g.commutes(x, y) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Re-verifies a witness: cross-commuting, and every target word is
    /// nontrivial in its own copy.
    pub fn kills_none(&self, g: &FiniteGroup, targets: &[Word]) -> bool {
        self.copies.len() == targets.len()
            && self.is_cross_commuting(g)
            && self
                .copies
                .iter()
                .zip(targets)
                .all(|(a, w)| matches!(g.evaluate_word(w, a), Ok(v) if v != g.identity()))
    }
}

/// Limits and switches shared by the search routines.
#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub node_cap: u64,
    pub time_cap: std::time::Duration,
    /// Maximum number of distinct variables in a single target word.
    pub max_vars: usize,
    /// Largest group order for endomorphism enumeration.
    pub endo_cap: usize,
    /// Fan top-level branches out over the current rayon pool.
    pub parallel: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            node_cap: 100_000_000,
            time_cap: std::time::Duration::from_secs(60),
            max_vars: 6,
            endo_cap: 24,
            parallel: true,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub assignments_tested: u64,
    pub centralizer_prunes: u64,
    pub symmetry_prunes: u64,
    /// Seconds; not covered by the determinism guarantee.
    pub wall_time: f64,
}

impl SearchStats {
    pub fn absorb(&mut self, other: &SearchStats) {
        self.nodes += other.nodes;
        self.assignments_tested += other.assignments_tested;
        self.centralizer_prunes += other.centralizer_prunes;
        self.symmetry_prunes += other.symmetry_prunes;
        self.wall_time += other.wall_time;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BudgetKind {
    NodeCap,
    TimeCap,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    /// A multi-copy assignment that kills none of the targets.
    Found(MultiCopyAssignment),
    /// The whole search space was exhausted without a witness.
    Exhausted,
    Unknown(BudgetKind),
}

#[derive(Clone, Debug)]
pub struct SearchReport {
    pub outcome: SearchOutcome,
    pub stats: SearchStats,
}
