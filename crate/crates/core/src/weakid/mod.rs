//! Weak identity verdicts.
//!
//! A finite word set S is a set of weak identities of height N in G when
//! every homomorphism `F^N -> G` kills at least one of any N words chosen
//! from S, word k read in copy k. A FAILS verdict carries the multi-copy
//! assignment that kills none of them; HOLDS means the search space was
//! exhausted.

mod sampling;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::FiniteGroup;
use crate::homsearch::{
    find_noncollapsing_multicopy, MultiCopyAssignment, SearchConfig, SearchOutcome, SearchStats,
};
use crate::subgroups::{quotient, verbal_image_with, VerbalBudget};
use crate::words::Word;

pub use sampling::{
    sample_t_subgroup, substitution_generators, t_product, SamplingBudget, SubstitutionBudget,
    TFactor,
};

/// Finite generating set of a verbal subgroup. Words are kept reduced,
/// sorted and deduplicated.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct TSubgroupGens {
    words: Vec<Word>,
}

impl TSubgroupGens {
    pub fn new<I: IntoIterator<Item = Word>>(words: I) -> Result<Self> {
        let mut words: Vec<Word> = words.into_iter().collect();
        if words.is_empty() {
            return Err(Error::InvalidArgument(
                "a generating set needs at least one word (use \"1\" for the trivial subgroup)"
                    .into(),
            ));
        }
        words.sort();
        words.dedup();
        Ok(TSubgroupGens { words })
    }

    /// `{1}`, generating the trivial verbal subgroup.
    pub fn trivial() -> Self {
        TSubgroupGens {
            words: vec![Word::identity()],
        }
    }

    pub fn single(w: Word) -> Self {
        TSubgroupGens { words: vec![w] }
    }

    pub fn parse<S: AsRef<str>>(texts: &[S]) -> Result<Self> {
        TSubgroupGens::new(
            texts
                .iter()
                .map(|t| t.as_ref().parse())
                .collect::<Result<Vec<Word>>>()?,
        )
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn union(&self, other: &TSubgroupGens) -> TSubgroupGens {
        TSubgroupGens::new(self.words.iter().chain(&other.words).cloned())
            .expect("union of nonempty sets")
    }
}

impl fmt::Display for TSubgroupGens {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.words.iter().map(Word::to_string).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

impl<'de> Deserialize<'de> for TSubgroupGens {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let words = Vec::<Word>::deserialize(d)?;
        TSubgroupGens::new(words).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Holds,
    Fails,
    Unknown,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Holds => "HOLDS",
            Status::Fails => "FAILS",
            Status::Unknown => "UNKNOWN",
        })
    }
}

/// One copy of a witness, with element names from the group searched.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessCopy {
    pub copy: usize,
    pub word: Word,
    pub assignment: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuloInfo {
    pub verbal_order: usize,
    pub quotient_order: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub status: Status,
    pub height: usize,
    pub witness: Option<Vec<WitnessCopy>>,
    #[serde(skip_serializing_if = "Option::is_none", flatten)]
    pub modulo: Option<ModuloInfo>,
    pub stats: SearchStats,
    /// Chosen words and the raw assignment, for re-verification.
    #[serde(skip)]
    pub raw_witness: Option<(Vec<Word>, MultiCopyAssignment)>,
}

impl Verdict {
    pub fn holds(&self) -> bool {
        self.status == Status::Holds
    }

    pub fn fails(&self) -> bool {
        self.status == Status::Fails
    }
}

fn name_witness(g: &FiniteGroup, words: &[Word], m: &MultiCopyAssignment) -> Vec<WitnessCopy> {
    words
        .iter()
        .zip(&m.copies)
        .enumerate()
        .map(|(k, (w, a))| WitnessCopy {
            copy: k + 1,
            word: w.clone(),
            assignment: a
                .images()
                .iter()
                .map(|(&v, &x)| (format!("g{v}"), g.name(x).to_string()))
                .collect(),
        })
        .collect()
}

/// Nondecreasing index sequences of length `n` over `0..m`, in
/// lexicographic order.
fn multisets(m: usize, n: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut next = Some(vec![0; n]);
    std::iter::from_fn(move || {
        let cur = next.take()?;
        let mut succ = cur.clone();
        let mut i = n;
        while i > 0 {
            i -= 1;
            if succ[i] + 1 < m {
                let v = succ[i] + 1;
                for s in &mut succ[i..] {
                    *s = v;
                }
                next = Some(succ);
                break;
            }
        }
        Some(cur)
    })
}

/// Decides whether `s` is a set of weak identities of height `n` in `g`.
///
/// Word selections are enumerated as multisets (the copies of a direct
/// power are interchangeable), each handed to the multi-copy search.
pub fn check_weak(
    g: &FiniteGroup,
    s: &TSubgroupGens,
    n: usize,
    config: &SearchConfig,
) -> Result<Verdict> {
    if n == 0 {
        return Err(Error::InvalidArgument("height must be at least 1".into()));
    }
    let mut stats = SearchStats::default();
    let mut unknown = false;
    for selection in multisets(s.words.len(), n) {
        let targets: Vec<Word> = selection.iter().map(|&i| s.words[i].clone()).collect();
        let report = find_noncollapsing_multicopy(g, &targets, config)?;
        stats.absorb(&report.stats);
        match report.outcome {
            SearchOutcome::Found(m) => {
                return Ok(Verdict {
                    status: Status::Fails,
                    height: n,
                    witness: Some(name_witness(g, &targets, &m)),
                    modulo: None,
                    stats,
                    raw_witness: Some((targets, m)),
                });
            }
            SearchOutcome::Unknown(_) => unknown = true,
            SearchOutcome::Exhausted => {}
        }
    }
    Ok(Verdict {
        status: if unknown {
            Status::Unknown
        } else {
            Status::Holds
        },
        height: n,
        witness: None,
        modulo: None,
        stats,
        raw_witness: None,
    })
}

/// `ceil(log2 |G|) + 2`.
pub fn default_cutoff(g: &FiniteGroup) -> usize {
    let n = g.order();
    let mut c = 0;
    while (1usize << c) < n {
        c += 1;
    }
    c + 2
}

#[derive(Clone, Debug, Serialize)]
pub struct HeightReport {
    pub status: Status,
    /// Least height that holds, if one does up to the cutoff.
    pub height: Option<usize>,
    pub cutoff: usize,
    pub verdicts: Vec<Verdict>,
}

/// Least N <= cutoff with `check_weak` HOLDS, scanning upward from 1.
pub fn min_height(
    g: &FiniteGroup,
    s: &TSubgroupGens,
    cutoff: usize,
    config: &SearchConfig,
) -> Result<HeightReport> {
    if cutoff == 0 {
        return Err(Error::InvalidArgument("cutoff must be at least 1".into()));
    }
    let mut verdicts = Vec::new();
    for n in 1..=cutoff {
        let v = check_weak(g, s, n, config)?;
        let status = v.status;
        verdicts.push(v);
        match status {
            Status::Holds => {
                return Ok(HeightReport {
                    status,
                    height: Some(n),
                    cutoff,
                    verdicts,
                })
            }
            Status::Unknown => {
                return Ok(HeightReport {
                    status,
                    height: None,
                    cutoff,
                    verdicts,
                })
            }
            Status::Fails => {}
        }
    }
    Ok(HeightReport {
        status: Status::Fails,
        height: None,
        cutoff,
        verdicts,
    })
}

/// `check_weak` in `G / H(G)`.
pub fn check_weak_modulo(
    g: &FiniteGroup,
    s: &TSubgroupGens,
    h: &TSubgroupGens,
    n: usize,
    config: &SearchConfig,
) -> Result<Verdict> {
    check_weak_modulo_with(g, s, h, n, config, &VerbalBudget::default())
}

pub fn check_weak_modulo_with(
    g: &FiniteGroup,
    s: &TSubgroupGens,
    h: &TSubgroupGens,
    n: usize,
    config: &SearchConfig,
    budget: &VerbalBudget,
) -> Result<Verdict> {
    let kernel = verbal_image_with(g, h, budget)?;
    let q = quotient(g, &kernel)?;
    let mut v = check_weak(&q.group, s, n, config)?;
    v.modulo = Some(ModuloInfo {
        verbal_order: kernel.order(),
        quotient_order: q.group.order(),
    });
    Ok(v)
}

/// Chain description as read from disk:
/// `{"chain": [["<word>", ...], ...], "heights": [..]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChainFile {
    pub chain: Vec<TSubgroupGens>,
    pub heights: Vec<usize>,
}

impl ChainFile {
    pub fn load(path: &std::path::Path) -> Result<Self> {
        Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainStep {
    pub step: usize,
    pub words: TSubgroupGens,
    pub modulo: TSubgroupGens,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainReport {
    pub status: Status,
    pub steps: Vec<ChainStep>,
}

/// Checks `chain[i-1]` modulo `chain[i]` at `heights[i-1]` for every step.
/// Overall HOLDS certifies that `chain[0]` consists of weak* identities
/// modulo the last entry.
pub fn verify_weak_star_chain(
    g: &FiniteGroup,
    chain: &[TSubgroupGens],
    heights: &[usize],
    config: &SearchConfig,
) -> Result<ChainReport> {
    if chain.len() < 2 {
        return Err(Error::InvalidArgument(
            "a chain needs at least two entries".into(),
        ));
    }
    if heights.len() != chain.len() - 1 {
        return Err(Error::InvalidArgument(format!(
            "{} chain entries need {} heights, got {}",
            chain.len(),
            chain.len() - 1,
            heights.len()
        )));
    }
    let mut steps = Vec::with_capacity(heights.len());
    for (i, (pair, &n)) in chain.windows(2).zip(heights).enumerate() {
        let verdict = check_weak_modulo(g, &pair[0], &pair[1], n, config)?;
        steps.push(ChainStep {
            step: i + 1,
            words: pair[0].clone(),
            modulo: pair[1].clone(),
            verdict,
        });
    }
    let status = if steps.iter().any(|s| s.verdict.status == Status::Fails) {
        Status::Fails
    } else if steps.iter().any(|s| s.verdict.status == Status::Unknown) {
        Status::Unknown
    } else {
        Status::Holds
    };
    Ok(ChainReport { status, steps })
}
