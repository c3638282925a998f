//! Longest strictly descending chains of centralizers of nested commuting
//! sets.
//!
//! Chain length counts distinct centralizers, including the leading
//! `Cen(∅) = G`. An abelian group therefore has length 1, and a group of
//! length L admits no cross-commuting assignment of L copies of `[g1,g2]`
//! that keeps every commutator nontrivial.

use std::collections::HashMap;

use serde::Serialize;

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::groups::{Elem, FiniteGroup};
use crate::subgroups::{element_centralizers, Subgroup};

/// Default limit on distinct centralizers explored.
pub const DEFAULT_CHAIN_CAP: usize = 1 << 20;

#[derive(Clone, Debug)]
pub struct CentralizerChain {
    /// Element added at each step; `sets[i]` is the first `i + 1` of them.
    pub added: Vec<Elem>,
    /// `centralizers[0] = G`, then `Cen(P_1) ⊋ Cen(P_2) ⊋ ...`.
    pub centralizers: Vec<Subgroup>,
    /// False when the cap stopped the search early.
    pub complete: bool,
}

impl CentralizerChain {
    pub fn length(&self) -> usize {
        self.centralizers.len()
    }

    pub fn sets(&self) -> Vec<Vec<Elem>> {
        (1..=self.added.len())
            .map(|i| self.added[..i].to_vec())
            .collect()
    }

    /// Re-checks commuting, nesting and strict descent from scratch.
    pub fn verify(&self, g: &FiniteGroup) -> bool {
        if self.centralizers.len() != self.added.len() + 1
            || self.centralizers[0].order() != g.order()
        {
            return false;
        }
        let commuting = self
            .added
            .iter()
            .enumerate()
            .all(|(i, &a)| self.added[..i].iter().all(|&b| g.commutes(a, b) && a != b));
        let exact = (0..=self.added.len())
            .all(|i| self.centralizers[i] == crate::subgroups::centralizer(g, &self.added[..i]));
        let strict = self
            .centralizers
            .windows(2)
            .all(|w| w[1].order() < w[0].order() && w[1].is_subgroup_of(&w[0]));
        commuting && exact && strict
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainEntry {
    pub added_element: Option<String>,
    pub centralizer_order: usize,
}

pub fn chain_entries(g: &FiniteGroup, chain: &CentralizerChain) -> Vec<ChainEntry> {
    std::iter::once(None)
        .chain(chain.added.iter().map(|&x| Some(g.name(x).to_string())))
        .zip(&chain.centralizers)
        .map(|(added_element, c)| ChainEntry {
            added_element,
            centralizer_order: c.order(),
        })
        .collect()
}

struct Solver {
    cens: Vec<ElementSet>,
    memo: HashMap<ElementSet, (usize, Option<(Elem, ElementSet)>)>,
    cap: usize,
    complete: bool,
}

impl Solver {
    /// Longest chain starting at centralizer `c`, with the first step of a
    /// lexicographically least optimal continuation.
    fn best(&mut self, c: &ElementSet) -> usize {
        if let Some(&(len, _)) = self.memo.get(c) {
            return len;
        }
        if self.memo.len() >= self.cap {
            self.complete = false;
            return 1;
        }
        let size = c.count();
        let mut seen: Vec<ElementSet> = Vec::new();
        let mut best = (1, None);
        for x in c.iter() {
            let next = c.intersection(&self.cens[x]);
            if next.count() == size || seen.contains(&next) {
                continue;
            }
            let len = 1 + self.best(&next);
            if len > best.0 {
                best = (len, Some((x, next.clone())));
            }
            seen.push(next);
        }
        let len = best.0;
        self.memo.insert(c.clone(), best);
        len
    }
}

/// A longest centralizer chain of `g`, exploring at most `cap` distinct
/// centralizers. Among longest chains the one whose added elements are
/// lexicographically least is returned.
pub fn max_centralizer_chain(g: &FiniteGroup, cap: usize) -> Result<CentralizerChain> {
    if cap == 0 {
        return Err(Error::InvalidArgument("cap must be at least 1".into()));
    }
    let mut solver = Solver {
        cens: element_centralizers(g),
        memo: HashMap::new(),
        cap,
        complete: true,
    };
    let whole = ElementSet::full(g.order());
    solver.best(&whole);

    let mut added = Vec::new();
    let mut centralizers = vec![Subgroup::from_set_unchecked(whole.clone())];
    let mut cur = whole;
    while let Some((_, Some((x, next)))) = solver.memo.get(&cur) {
        added.push(*x);
        centralizers.push(Subgroup::from_set_unchecked(next.clone()));
        cur = next.clone();
    }
    Ok(CentralizerChain {
        added,
        centralizers,
        complete: solver.complete,
    })
}

/// Length of a longest centralizer chain; an upper bound for the height of
/// `{[g1,g2]}` in `g`.
pub fn bcs_height_bound(g: &FiniteGroup) -> Result<usize> {
    let chain = max_centralizer_chain(g, DEFAULT_CHAIN_CAP)?;
    if !chain.complete {
        return Err(Error::Budget(format!(
            "centralizer chain search for {} exceeded {DEFAULT_CHAIN_CAP} states",
            g.label()
        )));
    }
    Ok(chain.length())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{make_group, GroupConfig};
    use crate::subgroups::centralizer;

    fn group(spec: &str) -> FiniteGroup {
        make_group(&spec.parse().unwrap(), &GroupConfig::default()).unwrap()
    }

    // Oracle: plain recursion over commuting sequences of distinct
    // elements, no memo and no class representatives.
    fn naive_longest(g: &FiniteGroup, p: &mut Vec<Elem>) -> usize {
        let cur = centralizer(g, p).order();
        let mut best = 1;
        for x in 0..g.order() {
            if p.iter().all(|&y| g.commutes(x, y)) {
                p.push(x);
                let next = centralizer(g, p).order();
                if next < cur {
                    best = best.max(1 + naive_longest(g, p));
                }
                p.pop();
            }
        }
        best
    }

    #[test]
    fn small_examples() {
        let t = group("trivial");
        let c = max_centralizer_chain(&t, 10).unwrap();
        assert_eq!(c.length(), 1);
        assert!(c.verify(&t));

        let s3 = group("sym:3");
        let c = max_centralizer_chain(&s3, 100).unwrap();
        assert_eq!(c.length(), 2);
        assert_eq!(s3.name(c.added[0]), "(1 2)");
        assert!(c.verify(&s3));
        assert_eq!(bcs_height_bound(&group("q8")).unwrap(), 2);
        assert_eq!(bcs_height_bound(&group("cyclic:6")).unwrap(), 1);
    }

    #[test]
    fn matches_naive_oracle() {
        for spec in ["sym:3", "q8", "dihedral:4", "dihedral:6", "alt:4", "sym:4"] {
            let g = group(spec);
            assert_eq!(
                bcs_height_bound(&g).unwrap(),
                naive_longest(&g, &mut Vec::new()),
                "{spec}"
            );
        }
    }

    #[test]
    fn linear_groups_stay_within_matrix_dimension() {
        for spec in ["gl:2:3", "sl:2:3", "sl:2:5"] {
            let g = group(spec);
            let c = max_centralizer_chain(&g, DEFAULT_CHAIN_CAP).unwrap();
            assert!(c.verify(&g));
            assert!(c.length() <= 5, "{spec}");
        }
    }

    #[test]
    fn cap_marks_incomplete() {
        let g = group("sym:4");
        let c = max_centralizer_chain(&g, 1).unwrap();
        assert!(!c.complete);
        assert!(c.verify(&g));
    }

    #[test]
    fn entries_lead_with_whole_group() {
        let g = group("sym:3");
        let e = chain_entries(&g, &max_centralizer_chain(&g, 100).unwrap());
        assert_eq!(e[0].added_element, None);
        assert_eq!(e[0].centralizer_order, 6);
        assert_eq!(e[1].centralizer_order, 2);
    }
}
