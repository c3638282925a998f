//! Finite groups given by a full multiplication table.
//!
//! Conventions used by every constructor in [`zoo`]:
//!
//! * permutations compose left to right, `(s*t)(p) = t(s(p))`;
//! * matrices multiply with the ordinary row-by-column product and act on
//!   column vectors;
//! * element names are cycle notation for permutation groups, matrix entries
//!   for linear groups and additive tuples for abelian groups.

mod spec;
pub mod zoo;

use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::homsearch::Assignment;
use crate::words::{Gen, Word};

pub use spec::{make_group, CayleyFile, GroupSpec};

/// Element id inside a [`FiniteGroup`].
pub type Elem = usize;

/// Construction limits.
#[derive(Clone, Debug)]
pub struct GroupConfig {
    /// Largest group order any constructor will build.
    pub order_cap: usize,
    /// Orders up to this are checked for associativity on every triple.
    pub full_assoc_bound: usize,
    /// Random triples checked above `full_assoc_bound`.
    pub assoc_samples: usize,
}

impl Default for GroupConfig {
    fn default() -> Self {
        GroupConfig {
            order_cap: 360,
            full_assoc_bound: 256,
            assoc_samples: 100_000,
        }
    }
}

#[derive(Clone, Debug)]
pub struct FiniteGroup {
    label: String,
    order: usize,
    table: Vec<Elem>,
    identity: Elem,
    inverse: Vec<Elem>,
    names: Vec<String>,
    generators: Vec<Elem>,
    element_orders: Vec<u64>,
    // powers[x][k] = x^k for 0 <= k < ord(x)
    powers: Vec<Vec<Elem>>,
}

impl FiniteGroup {
    /// Builds a group from a row-major multiplication table and verifies
    /// the group axioms. When `generators` is `None` a small generating set
    /// is chosen greedily.
    pub fn from_table(
        label: impl Into<String>,
        table: Vec<Elem>,
        names: Vec<String>,
        generators: Option<Vec<Elem>>,
        config: &GroupConfig,
    ) -> Result<Self> {
        let order = names.len();
        if order == 0 {
            return Err(Error::NotAGroup("empty element set".into()));
        }
        if order > config.order_cap {
            return Err(Error::OrderCap {
                order,
                cap: config.order_cap,
            });
        }
        if table.len() != order * order {
            return Err(Error::NotAGroup(format!(
                "table has {} entries, expected {}",
                table.len(),
                order * order
            )));
        }
        if let Some(&bad) = table.iter().find(|&&x| x >= order) {
            return Err(Error::NotAGroup(format!("entry {bad} out of range")));
        }
        // Latin square: every row and column is a permutation.
        for i in 0..order {
            let mut row = vec![false; order];
            let mut col = vec![false; order];
            for j in 0..order {
                let r = table[i * order + j];
                let c = table[j * order + i];
                if row[r] || col[c] {
                    return Err(Error::NotAGroup(format!(
                        "row or column {i} repeats an element"
                    )));
                }
                row[r] = true;
                col[c] = true;
            }
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| table[e * order + x] == x && table[x * order + e] == x))
            .ok_or_else(|| Error::NotAGroup("no identity element".into()))?;
        let inverse: Vec<Elem> = (0..order)
            .map(|x| {
                (0..order)
                    .find(|&y| table[x * order + y] == identity)
                    .expect("latin square has an inverse in every row")
            })
            .collect();

        let mul = |a: Elem, b: Elem| table[a * order + b];
        if order <= config.full_assoc_bound {
            for a in 0..order {
                for b in 0..order {
                    let ab = mul(a, b);
                    for c in 0..order {
                        if mul(ab, c) != mul(a, mul(b, c)) {
                            return Err(Error::NotAGroup(format!(
                                "not associative at ({a}, {b}, {c})"
                            )));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for _ in 0..config.assoc_samples {
                let (a, b, c) = (
                    rng.gen_range(0..order),
                    rng.gen_range(0..order),
                    rng.gen_range(0..order),
                );
                if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                    return Err(Error::NotAGroup(format!(
                        "not associative at ({a}, {b}, {c})"
                    )));
                }
            }
        }

        let mut powers = Vec::with_capacity(order);
        for x in 0..order {
            let mut p = vec![identity];
            let mut cur = x;
            while cur != identity {
                p.push(cur);
                cur = mul(cur, x);
            }
            powers.push(p);
        }
        let element_orders = powers.iter().map(|p| p.len() as u64).collect();

        let mut group = FiniteGroup {
            label: label.into(),
            order,
            table,
            identity,
            inverse,
            names,
            generators: vec![identity],
            element_orders,
            powers,
        };
        group.generators = match generators {
            Some(gens) => {
                if gens.is_empty() {
                    return Err(Error::NotAGroup("generator list is empty".into()));
                }
                if let Some(&g) = gens.iter().find(|&&g| g >= order) {
                    return Err(Error::NotAGroup(format!("generator {g} out of range")));
                }
                if group.closure(&gens).count() != order {
                    return Err(Error::NotAGroup(
                        "generators do not generate the whole group".into(),
                    ));
                }
                gens
            }
            None => group.greedy_generators(),
        };
        Ok(group)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Elem {
        self.identity
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: Elem) -> &str {
        &self.names[x]
    }

    pub fn element_by_name(&self, name: &str) -> Option<Elem> {
        let wanted: String = name.chars().filter(|c| !c.is_whitespace()).collect();
        self.names
            .iter()
            .position(|n| n.chars().filter(|c| !c.is_whitespace()).eq(wanted.chars()))
    }

    /// Row-major table, `table()[a * order + b] = a * b`.
    pub fn table(&self) -> &[Elem] {
        &self.table
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inverse[a]
    }

    #[inline]
    pub fn pow(&self, a: Elem, n: i64) -> Elem {
        let p = &self.powers[a];
        p[n.rem_euclid(p.len() as i64) as usize]
    }

    pub fn element_order(&self, a: Elem) -> u64 {
        self.element_orders[a]
    }

    /// `[a, b] = a b a^-1 b^-1`.
    pub fn commutator(&self, a: Elem, b: Elem) -> Elem {
        let ab = self.mul(a, b);
        let ab_ai = self.mul(ab, self.inv(a));
        self.mul(ab_ai, self.inv(b))
    }

    /// `g x g^-1`.
    pub fn conjugate(&self, x: Elem, g: Elem) -> Elem {
        self.mul(self.mul(g, x), self.inv(g))
    }

    #[inline]
    pub fn commutes(&self, a: Elem, b: Elem) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .all(|&a| self.generators.iter().all(|&b| self.commutes(a, b)))
    }

    /// Least `n >= 1` with `x^n = 1` for every element.
    pub fn exponent(&self) -> u64 {
        self.element_orders.iter().fold(1, |acc, &o| lcm(acc, o))
    }

    /// Subgroup generated by `elems`, as a raw set.
    pub fn closure(&self, elems: &[Elem]) -> ElementSet {
        let mut set = ElementSet::empty(self.order);
        set.insert(self.identity);
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in elems {
                let y = self.mul(x, g);
                if set.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        set
    }

    fn greedy_generators(&self) -> Vec<Elem> {
        let mut gens = Vec::new();
        let mut current = self.closure(&gens);
        while current.count() < self.order {
            let mut best: Option<(usize, Elem, ElementSet)> = None;
            for x in 0..self.order {
                if current.contains(x) {
                    continue;
                }
                let mut trial = gens.clone();
                trial.push(x);
                let c = self.closure(&trial);
                let size = c.count();
                if best.as_ref().is_none_or(|(s, _, _)| size > *s) {
                    best = Some((size, x, c));
                }
            }
            let (_, x, c) = best.expect("a proper subgroup leaves some element out");
            gens.push(x);
            current = c;
        }
        if gens.is_empty() {
            gens.push(self.identity);
        }
        gens
    }

    /// Evaluates `w` with generator `g_i` sent to `a(g_i)`.
    pub fn evaluate_word(&self, w: &Word, a: &Assignment) -> Result<Elem> {
        self.evaluate_with(w, |g| a.get(g))
    }

    pub fn evaluate_with(&self, w: &Word, lookup: impl Fn(Gen) -> Option<Elem>) -> Result<Elem> {
        let mut acc = self.identity;
        for &(g, e) in w.syllables() {
            let x = lookup(g).ok_or(Error::Unassigned(g))?;
            acc = self.mul(acc, self.pow(x, e));
        }
        Ok(acc)
    }

    /// Breadth-first factorization of every element as a product of
    /// generators: `result[x]` lists generator positions whose product is x.
    pub fn generator_factorizations(&self) -> Vec<Vec<usize>> {
        let mut fact: Vec<Option<Vec<usize>>> = vec![None; self.order];
        fact[self.identity] = Some(Vec::new());
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for (k, &g) in self.generators.iter().enumerate() {
                let y = self.mul(x, g);
                if fact[y].is_none() {
                    let mut f = fact[x].clone().expect("visited");
                    f.push(k);
                    fact[y] = Some(f);
                    queue.push_back(y);
                }
            }
        }
        fact.into_iter()
            .map(|f| f.expect("generators generate the group"))
            .collect()
    }
}

/// Free-function form of [`FiniteGroup::evaluate_word`].
pub fn evaluate_word(g: &FiniteGroup, w: &Word, a: &Assignment) -> Result<Elem> {
    g.evaluate_word(w, a)
}

pub fn commutes(g: &FiniteGroup, x: Elem, y: Elem) -> bool {
    g.commutes(x, y)
}

pub fn exponent(g: &FiniteGroup) -> u64 {
    g.exponent()
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_groups() {
        let cfg = GroupConfig::default();
        let names = vec!["a".to_string(), "b".to_string()];
        // constant table
        assert!(FiniteGroup::from_table("x", vec![0, 0, 0, 0], names.clone(), None, &cfg).is_err());
        // latin square without identity: x*y = -x-y mod 3
        let three: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        assert!(
            FiniteGroup::from_table("x", vec![0, 2, 1, 2, 1, 0, 1, 0, 2], three, None, &cfg)
                .is_err()
        );
        // generators that do not generate
        assert!(
            FiniteGroup::from_table("x", vec![0, 1, 1, 0], names.clone(), Some(vec![0]), &cfg)
                .is_err()
        );
        let g = FiniteGroup::from_table("x", vec![0, 1, 1, 0], names, None, &cfg).unwrap();
        assert_eq!(g.generators(), &[1]);
    }

    #[test]
    fn latin_square_that_is_not_associative() {
        // A loop of order 5 that is not a group.
        let t = [
            [0, 1, 2, 3, 4],
            [1, 0, 3, 4, 2],
            [2, 4, 0, 1, 3],
            [3, 2, 4, 0, 1],
            [4, 3, 1, 2, 0],
        ];
        let table: Vec<Elem> = t.iter().flatten().copied().collect();
        let names = (0..5).map(|i| i.to_string()).collect();
        let err = FiniteGroup::from_table("loop", table, names, None, &GroupConfig::default());
        assert!(matches!(err, Err(Error::NotAGroup(_))));
    }

    #[test]
    fn order_cap_is_enforced() {
        let cfg = GroupConfig {
            order_cap: 4,
            ..GroupConfig::default()
        };
        assert!(matches!(zoo::cyclic(5, &cfg), Err(Error::OrderCap { .. })));
    }
}
