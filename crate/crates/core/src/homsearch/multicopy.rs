use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::time::Instant;

use rayon::prelude::*;

use super::{
    Assignment, BudgetKind, MultiCopyAssignment, SearchConfig, SearchOutcome, SearchReport,
    SearchStats,
};
use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::groups::{Elem, FiniteGroup};
use crate::subgroups::element_centralizers;
use crate::words::{Gen, Word};

const FLUSH_EVERY: u64 = 1024;

struct CopyPlan {
    vars: Vec<Gen>,
    // (variable slot, exponent)
    program: Vec<(usize, i64)>,
    // Latest earlier copy carrying the same word.
    twin: Option<usize>,
}

struct Plan<'a> {
    g: &'a FiniteGroup,
    copies: Vec<CopyPlan>,
    centralizers: Vec<ElementSet>,
}

struct Shared {
    start: Instant,
    config: SearchConfig,
    nodes: AtomicU64,
    budget_hit: AtomicBool,
    budget_kind: AtomicUsize,
    best_branch: AtomicUsize,
}

enum Stop {
    Budget,
    Superseded,
}

struct Branch<'p> {
    plan: &'p Plan<'p>,
    shared: &'p Shared,
    id: usize,
    values: Vec<Vec<Elem>>,
    domains: Vec<ElementSet>,
    stats: SearchStats,
    unflushed: u64,
}

struct BranchResult {
    witness: Option<Vec<Vec<Elem>>>,
    stats: SearchStats,
    budget: bool,
}

impl<'p> Branch<'p> {
    fn tick(&mut self) -> std::result::Result<(), Stop> {
        self.stats.nodes += 1;
        self.unflushed += 1;
        if self.unflushed >= FLUSH_EVERY {
            let total = self
                .shared
                .nodes
                .fetch_add(self.unflushed, Ordering::Relaxed)
                + self.unflushed;
            self.unflushed = 0;
            if total > self.shared.config.node_cap {
                self.shared.budget_kind.store(0, Ordering::Relaxed);
                self.shared.budget_hit.store(true, Ordering::Relaxed);
            } else if self.shared.start.elapsed() > self.shared.config.time_cap {
                self.shared.budget_kind.store(1, Ordering::Relaxed);
                self.shared.budget_hit.store(true, Ordering::Relaxed);
            }
            if self.shared.best_branch.load(Ordering::Relaxed) < self.id {
                return Err(Stop::Superseded);
            }
        }
        if self.shared.budget_hit.load(Ordering::Relaxed) {
            return Err(Stop::Budget);
        }
        Ok(())
    }

    fn evaluate(&self, j: usize) -> Elem {
        let g = self.plan.g;
        let vals = &self.values[j];
        self.plan.copies[j]
            .program
            .iter()
            .fold(g.identity(), |acc, &(slot, e)| {
                g.mul(acc, g.pow(vals[slot], e))
            })
    }

    // Depth-first over (copy j, variable v). Returns Ok(true) when
    // `self.values` holds a complete witness.
    fn descend(&mut self, j: usize, v: usize, tied: bool) -> std::result::Result<bool, Stop> {
        let plan = self.plan;
        let copy = &plan.copies[j];
        if v == copy.vars.len() {
            self.stats.assignments_tested += 1;
            if self.evaluate(j) == plan.g.identity() {
                return Ok(false);
            }
            if j + 1 == plan.copies.len() {
                return Ok(true);
            }
            let mut next = self.domains[j].clone();
            for &x in &self.values[j] {
                next.intersect_with(&plan.centralizers[x]);
            }
            self.stats.centralizer_prunes += (self.domains[j].count() - next.count()) as u64;
            self.domains[j + 1] = next;
            let twin = plan.copies[j + 1].twin.is_some();
            return self.descend(j + 1, 0, twin);
        }
        let lower = match (tied, copy.twin) {
            (true, Some(p)) => self.values[p][v],
            _ => 0,
        };
        for x in 0..plan.g.order() {
            // domains[j] is not touched by deeper levels of the same copy
            if !self.domains[j].contains(x) {
                continue;
            }
            if x < lower {
                self.stats.symmetry_prunes += 1;
                continue;
            }
            self.tick()?;
            self.values[j][v] = x;
            if self.descend(j, v + 1, tied && x == lower)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn run(mut self, first: Elem) -> BranchResult {
        if self.shared.nodes.load(Ordering::Relaxed) > self.shared.config.node_cap {
            self.shared.budget_kind.store(0, Ordering::Relaxed);
            self.shared.budget_hit.store(true, Ordering::Relaxed);
        } else if self.shared.start.elapsed() > self.shared.config.time_cap {
            self.shared.budget_kind.store(1, Ordering::Relaxed);
            self.shared.budget_hit.store(true, Ordering::Relaxed);
        }
        let outcome = match self.tick() {
            Err(stop) => Err(stop),
            Ok(()) => {
                self.values[0][0] = first;
                self.descend(0, 1, false)
            }
        };
        self.shared
            .nodes
            .fetch_add(self.unflushed, Ordering::Relaxed);
        match outcome {
            Ok(true) => {
                self.shared
                    .best_branch
                    .fetch_min(self.id, Ordering::Relaxed);
                BranchResult {
                    witness: Some(self.values),
                    stats: self.stats,
                    budget: false,
                }
            }
            Ok(false) | Err(Stop::Superseded) => BranchResult {
                witness: None,
                stats: self.stats,
                budget: false,
            },
            Err(Stop::Budget) => BranchResult {
                witness: None,
                stats: self.stats,
                budget: true,
            },
        }
    }
}

fn compile(targets: &[Word], config: &SearchConfig) -> Result<Vec<CopyPlan>> {
    let mut copies: Vec<CopyPlan> = Vec::with_capacity(targets.len());
    for (j, w) in targets.iter().enumerate() {
        let vars: Vec<Gen> = w.variables().into_iter().collect();
        if vars.len() > config.max_vars {
            return Err(Error::Budget(format!(
                "word {w} has {} variables (limit {})",
                vars.len(),
                config.max_vars
            )));
        }
        let program = w
            .syllables()
            .iter()
            .map(|&(g, e)| (vars.binary_search(&g).expect("variable listed"), e))
            .collect();
        let twin = (0..j).rev().find(|&k| targets[k] == *w);
        copies.push(CopyPlan {
            vars,
            program,
            twin,
        });
    }
    Ok(copies)
}

/// Searches for a homomorphism `F^N -> G` under which every target word
/// (one per copy) is nontrivial.
///
/// The search order is copy by copy, variable by variable (ascending
/// generator index), element ids ascending, so the returned witness is the
/// lexicographically least one regardless of how many threads explore it.
/// Copies carrying identical words are kept in nondecreasing order.
pub fn find_noncollapsing_multicopy(
    g: &FiniteGroup,
    targets: &[Word],
    config: &SearchConfig,
) -> Result<SearchReport> {
    if targets.is_empty() {
        return Err(Error::InvalidArgument(
            "at least one target word is required".into(),
        ));
    }
    let start = Instant::now();
    let copies = compile(targets, config)?;
    let finish = |outcome, mut stats: SearchStats| {
        stats.wall_time = start.elapsed().as_secs_f64();
        Ok(SearchReport { outcome, stats })
    };
    if targets.iter().any(Word::is_identity) {
        return finish(SearchOutcome::Exhausted, SearchStats::default());
    }
    let plan = Plan {
        g,
        copies,
        centralizers: element_centralizers(g),
    };
    let shared = Shared {
        start,
        config: config.clone(),
        nodes: AtomicU64::new(0),
        budget_hit: AtomicBool::new(false),
        budget_kind: AtomicUsize::new(0),
        best_branch: AtomicUsize::new(usize::MAX),
    };
    let n = g.order();
    let make_branch = |id: usize| {
        let mut domains = vec![ElementSet::empty(n); plan.copies.len()];
        domains[0] = ElementSet::full(n);
        Branch {
            plan: &plan,
            shared: &shared,
            id,
            values: plan.copies.iter().map(|c| vec![0; c.vars.len()]).collect(),
            domains,
            stats: SearchStats::default(),
            unflushed: 0,
        }
    };

    let mut stats = SearchStats::default();
    let mut settle = |r: &BranchResult| -> Option<SearchOutcome> {
        stats.absorb(&r.stats);
        if r.budget {
            let kind = if shared.budget_kind.load(Ordering::Relaxed) == 0 {
                BudgetKind::NodeCap
            } else {
                BudgetKind::TimeCap
            };
            return Some(SearchOutcome::Unknown(kind));
        }
        r.witness.as_ref().map(|values| {
            SearchOutcome::Found(MultiCopyAssignment {
                copies: plan
                    .copies
                    .iter()
                    .zip(values)
                    .map(|(c, vals)| {
                        Assignment::new(c.vars.iter().copied().zip(vals.iter().copied()))
                    })
                    .collect(),
            })
        })
    };

    let mut outcome = SearchOutcome::Exhausted;
    if config.parallel && rayon::current_num_threads() > 1 {
        let results: Vec<BranchResult> = (0..n)
            .into_par_iter()
            .map(|x| make_branch(x).run(x))
            .collect();
        for r in &results {
            if let Some(o) = settle(r) {
                outcome = o;
                break;
            }
        }
    } else {
        for x in 0..n {
            let r = make_branch(x).run(x);
            if let Some(o) = settle(&r) {
                outcome = o;
                break;
            }
        }
    }
    finish(outcome, stats)
}

/// Unpruned reference enumerator: walks every tuple of images in the same
/// lexicographic order and returns the first valid witness.
pub fn naive_noncollapsing_multicopy(
    g: &FiniteGroup,
    targets: &[Word],
) -> Option<MultiCopyAssignment> {
    let vars: Vec<Vec<Gen>> = targets
        .iter()
        .map(|w| w.variables().into_iter().collect())
        .collect();
    let total: usize = vars.iter().map(Vec::len).sum();
    let mut flat = vec![0; total];
    loop {
        let mut k = 0;
        let copies = vars
            .iter()
            .map(|vs| {
                Assignment::new(vs.iter().map(|&v| {
                    k += 1;
                    (v, flat[k - 1])
                }))
            })
            .collect();
        let m = MultiCopyAssignment { copies };
        if m.kills_none(g, targets) {
            return Some(m);
        }
        if !crate::subgroups::next_tuple(&mut flat, g.order()) {
            return None;
        }
    }
}
