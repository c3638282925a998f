//! Pseudorandom elements of verbal subgroups of the free group.
//!
//! Every element of the least endomorphism-invariant subgroup containing S
//! is a finite product of endomorphic images of S-words and their inverses.
//! The samplers below draw such products under a fixed seed.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::TSubgroupGens;
use crate::error::{Error, Result};
use crate::words::{Endomorphism, Gen, Word};

#[derive(Clone, Debug)]
pub struct SamplingBudget {
    /// Maximum number of factors per product.
    pub factors: usize,
    /// Maximum letter count of each endomorphism image.
    pub word_len: usize,
    /// Images are words in `g1..g{vars}`.
    pub vars: Gen,
    /// Number of samples returned.
    pub count: usize,
}

impl Default for SamplingBudget {
    fn default() -> Self {
        SamplingBudget {
            factors: 2,
            word_len: 3,
            vars: 3,
            count: 8,
        }
    }
}

/// One factor `e(s)^(+-1)` with `s` the word at `index` in S.
#[derive(Clone, Debug)]
pub struct TFactor {
    pub endo: Endomorphism,
    pub index: usize,
    pub inverse: bool,
}

pub fn t_product(s: &TSubgroupGens, factors: &[TFactor]) -> Result<Word> {
    let mut out = Word::identity();
    for f in factors {
        let w = s.words().get(f.index).ok_or_else(|| {
            Error::InvalidArgument(format!("factor index {} out of range", f.index))
        })?;
        let img = f.endo.apply(w);
        out = out.multiply(&if f.inverse { img.inverse() } else { img });
    }
    Ok(out)
}

fn random_word(rng: &mut ChaCha8Rng, budget: &SamplingBudget) -> Word {
    let len = rng.gen_range(1..=budget.word_len.max(1));
    Word::from_syllables((0..len).map(|_| {
        let g = rng.gen_range(1..=budget.vars.max(1));
        (g, if rng.gen_bool(0.5) { 1 } else { -1 })
    }))
}

fn random_factor(rng: &mut ChaCha8Rng, s: &TSubgroupGens, budget: &SamplingBudget) -> TFactor {
    let index = rng.gen_range(0..s.words().len());
    let endo = Endomorphism::new(
        s.words()[index]
            .variables()
            .into_iter()
            .map(|v| (v, random_word(rng, budget))),
    );
    TFactor {
        endo,
        index,
        inverse: rng.gen_bool(0.5),
    }
}

/// `budget.count` pseudorandom elements of the verbal subgroup generated by
/// `s`, each a product of at most `budget.factors` endomorphic images.
pub fn sample_t_subgroup(s: &TSubgroupGens, budget: &SamplingBudget, seed: u64) -> Vec<Word> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..budget.count)
        .map(|_| {
            let k = rng.gen_range(1..=budget.factors.max(1));
            let factors: Vec<TFactor> =
                (0..k).map(|_| random_factor(&mut rng, s, budget)).collect();
            t_product(s, &factors).expect("indices drawn in range")
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct SubstitutionBudget {
    /// Samples drawn from each substituted verbal subgroup, in addition
    /// to its generating words.
    pub sampling: SamplingBudget,
    /// Maximum number of generators returned.
    pub count: usize,
}

impl Default for SubstitutionBudget {
    fn default() -> Self {
        SubstitutionBudget {
            sampling: SamplingBudget::default(),
            count: 8,
        }
    }
}

/// Budget-bounded slice of `{rho(f)}` where `rho(g_i)` ranges over the
/// verbal subgroup `positions[i]` for mapped `i` and fixes every other
/// variable. Substituted words are re-indexed to fresh variables above
/// every index of `f`, so distinct positions never share letters.
pub fn substitution_generators(
    f: &Word,
    positions: &BTreeMap<Gen, TSubgroupGens>,
    budget: &SubstitutionBudget,
    seed: u64,
) -> Result<TSubgroupGens> {
    let vars = f.variables();
    if let Some(k) = positions.keys().find(|k| !vars.contains(k)) {
        return Err(Error::InvalidArgument(format!(
            "g{k} does not occur in {f}"
        )));
    }
    if positions.is_empty() || budget.count == 0 {
        return TSubgroupGens::new([f.clone()]);
    }
    let keys: Vec<Gen> = positions.keys().copied().collect();
    let candidates: Vec<Vec<Word>> = positions
        .values()
        .enumerate()
        .map(|(i, h)| {
            let mut c = h.words().to_vec();
            let sub_seed = seed.wrapping_add((i as u64 + 1).wrapping_mul(0x9e37_79b9_7f4a_7c15));
            c.extend(sample_t_subgroup(h, &budget.sampling, sub_seed));
            c
        })
        .collect();
    let fresh_start = f.max_generator() + 1;
    let substitute = |choice: &[usize]| -> Word {
        let mut next = fresh_start;
        let mut endo = Endomorphism::identity();
        for ((&k, cands), &c) in keys.iter().zip(&candidates).zip(choice) {
            let w = &cands[c];
            let renaming: BTreeMap<Gen, Gen> = w
                .variables()
                .into_iter()
                .map(|v| {
                    next += 1;
                    (v, next - 1)
                })
                .collect();
            endo.set(k, w.rename(&renaming));
        }
        endo.apply(f)
    };

    let mut out: BTreeSet<Word> = BTreeSet::new();
    // every combination of generating words first, in lexicographic order
    let base_sizes: Vec<usize> = positions.values().map(|h| h.words().len()).collect();
    let mut choice = vec![0; keys.len()];
    'base: loop {
        out.insert(substitute(&choice));
        if out.len() >= budget.count {
            break;
        }
        let mut i = choice.len();
        loop {
            if i == 0 {
                break 'base;
            }
            i -= 1;
            choice[i] += 1;
            if choice[i] < base_sizes[i] {
                break;
            }
            choice[i] = 0;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut attempts = 0;
    while out.len() < budget.count && attempts < budget.count * 16 {
        attempts += 1;
        let choice: Vec<usize> = candidates
            .iter()
            .map(|c| rng.gen_range(0..c.len()))
            .collect();
        out.insert(substitute(&choice));
    }
    TSubgroupGens::new(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn gens(ws: &[&str]) -> TSubgroupGens {
        TSubgroupGens::parse(ws).unwrap()
    }

    #[test]
    fn t_product_examples() {
        let s = gens(&["[g1,g2]"]);
        let id = TFactor {
            endo: Endomorphism::identity(),
            index: 0,
            inverse: false,
        };
        assert_eq!(t_product(&s, &[id]).unwrap(), w("[g1,g2]"));

        let e = Endomorphism::new([(1, w("g1*g3")), (2, w("g2"))]);
        let f = TFactor {
            endo: e,
            index: 0,
            inverse: false,
        };
        assert_eq!(t_product(&s, &[f]).unwrap(), w("[g1*g3,g2]"));

        let sq = gens(&["g1^2"]);
        let e = Endomorphism::new([(1, w("g2"))]);
        let f = TFactor {
            endo: e,
            index: 0,
            inverse: false,
        };
        assert_eq!(t_product(&sq, &[f.clone(), f]).unwrap(), w("g2^4"));
    }

    #[test]
    fn sampling_is_seeded() {
        let s = gens(&["[g1,g2]", "g1^2"]);
        let b = SamplingBudget {
            count: 20,
            ..SamplingBudget::default()
        };
        assert_eq!(sample_t_subgroup(&s, &b, 7), sample_t_subgroup(&s, &b, 7));
        assert_ne!(sample_t_subgroup(&s, &b, 7), sample_t_subgroup(&s, &b, 8));
        assert_eq!(sample_t_subgroup(&s, &b, 7).len(), 20);
    }

    #[test]
    fn samples_of_commutators_have_zero_exponent_sums() {
        let s = gens(&["[g1,g2]"]);
        let b = SamplingBudget {
            count: 50,
            factors: 3,
            ..SamplingBudget::default()
        };
        assert!(sample_t_subgroup(&s, &b, 1)
            .iter()
            .all(|x| x.exponent_sums().is_zero()));
    }

    #[test]
    fn substitution_examples() {
        let one = SubstitutionBudget {
            count: 1,
            ..SubstitutionBudget::default()
        };
        let f = w("[g1,g2]");
        let r =
            substitution_generators(&f, &BTreeMap::from([(2, gens(&["g3^2"]))]), &one, 0).unwrap();
        assert_eq!(r.words(), &[w("[g1,g3^2]")]);

        let r = substitution_generators(
            &w("g1"),
            &BTreeMap::from([(1, gens(&["[g1,g2]"]))]),
            &one,
            0,
        )
        .unwrap();
        assert_eq!(r.words(), &[w("[g2,g3]")]);

        let pos = BTreeMap::from([(1, gens(&["g3^2"])), (2, gens(&["g4^2"]))]);
        let r = substitution_generators(&f, &pos, &SubstitutionBudget::default(), 0).unwrap();
        assert!(r.words().contains(&w("[g3^2,g4^2]")));
        assert!(r.words().len() <= 8);

        let bad = BTreeMap::from([(5, gens(&["g1"]))]);
        assert!(substitution_generators(&f, &bad, &one, 0).is_err());
    }
}
