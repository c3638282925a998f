//! Subgroups of a finite group: closures, centralizers, verbal images and
//! quotients.

use std::collections::VecDeque;

use serde::Serialize;

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::groups::{Elem, FiniteGroup};
use crate::weakid::TSubgroupGens;

/// Member set of a subgroup of some [`FiniteGroup`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    members: ElementSet,
}

impl Subgroup {
    /// Wraps a set already known to be a subgroup.
    pub fn from_set_unchecked(members: ElementSet) -> Self {
        Subgroup { members }
    }

    pub fn whole(g: &FiniteGroup) -> Self {
        Subgroup {
            members: ElementSet::full(g.order()),
        }
    }

    pub fn trivial(g: &FiniteGroup) -> Self {
        Subgroup {
            members: ElementSet::from_ids(g.order(), [g.identity()]),
        }
    }

    pub fn order(&self) -> usize {
        self.members.count()
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.members.contains(x)
    }

    pub fn members(&self) -> &ElementSet {
        &self.members
    }

    /// Sorted element ids.
    pub fn elements(&self) -> Vec<Elem> {
        self.members.to_vec()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn is_normal_in(&self, g: &FiniteGroup) -> bool {
        g.generators().iter().all(|&s| {
            self.members
                .iter()
                .all(|x| self.contains(g.conjugate(x, s)))
        })
    }

    /// Every pair of members commutes.
    pub fn is_abelian(&self, g: &FiniteGroup) -> bool {
        let m = self.elements();
        m.iter()
            .enumerate()
            .all(|(i, &a)| m[i + 1..].iter().all(|&b| g.commutes(a, b)))
    }
}

/// Smallest subgroup containing `elems`.
pub fn generated_subgroup(g: &FiniteGroup, elems: &[Elem]) -> Subgroup {
    Subgroup {
        members: g.closure(elems),
    }
}

/// Smallest normal subgroup containing `elems`.
pub fn normal_closure(g: &FiniteGroup, elems: &[Elem]) -> Subgroup {
    // Close the set under conjugation by the generators of G, then generate.
    let mut seen = ElementSet::empty(g.order());
    let mut queue: VecDeque<Elem> = VecDeque::new();
    for &x in elems {
        if seen.insert(x) {
            queue.push_back(x);
        }
    }
    while let Some(x) = queue.pop_front() {
        for &s in g.generators() {
            let y = g.conjugate(x, s);
            if seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    generated_subgroup(g, &seen.to_vec())
}

/// `{x : xp = px for all p in P}`.
pub fn centralizer(g: &FiniteGroup, p: &[Elem]) -> Subgroup {
    let members = ElementSet::from_ids(
        g.order(),
        (0..g.order()).filter(|&x| p.iter().all(|&y| g.commutes(x, y))),
    );
    Subgroup { members }
}

/// Centralizer of every single element, indexed by element id.
pub fn element_centralizers(g: &FiniteGroup) -> Vec<ElementSet> {
    (0..g.order())
        .map(|x| ElementSet::from_ids(g.order(), (0..g.order()).filter(|&y| g.commutes(x, y))))
        .collect()
}

/// Limits on assignment enumeration in [`verbal_image`].
#[derive(Clone, Debug)]
pub struct VerbalBudget {
    /// Maximum number of assignments evaluated for a single word.
    pub max_assignments: u128,
}

impl Default for VerbalBudget {
    fn default() -> Self {
        VerbalBudget {
            max_assignments: 1 << 24,
        }
    }
}

/// Subgroup generated by all values of the words in `s`.
pub fn verbal_image(g: &FiniteGroup, s: &TSubgroupGens) -> Result<Subgroup> {
    verbal_image_with(g, s, &VerbalBudget::default())
}

pub fn verbal_image_with(
    g: &FiniteGroup,
    s: &TSubgroupGens,
    budget: &VerbalBudget,
) -> Result<Subgroup> {
    let n = g.order();
    for w in s.words() {
        let k = w.variables().len();
        if k >= 4 && n > 24 {
            return Err(Error::Budget(format!(
                "word {w} has {k} variables; groups of order {n} > 24 allow at most 3"
            )));
        }
        let count = (n as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
        if count > budget.max_assignments {
            return Err(Error::Budget(format!(
                "word {w} needs {count} assignments (cap {})",
                budget.max_assignments
            )));
        }
    }

    let mut current = ElementSet::from_ids(n, [g.identity()]);
    let mut gens: Vec<Elem> = Vec::new();
    for w in s.words() {
        let vars: Vec<_> = w.variables().into_iter().collect();
        let mut values = vec![g.identity(); vars.len()];
        loop {
            if current.count() == n {
                return Ok(Subgroup { members: current });
            }
            let v = g.evaluate_with(w, |x| vars.iter().position(|&y| y == x).map(|i| values[i]))?;
            if !current.contains(v) {
                gens.push(v);
                current = g.closure(&gens);
            }
            if !next_tuple(&mut values, n) {
                break;
            }
        }
    }
    Ok(Subgroup { members: current })
}

/// Advances `values` as a base-`n` odometer (last entry fastest). Returns
/// false after the last tuple.
pub fn next_tuple(values: &mut [Elem], n: usize) -> bool {
    for v in values.iter_mut().rev() {
        *v += 1;
        if *v < n {
            return true;
        }
        *v = 0;
    }
    false
}

/// `G / N` with cosets numbered by their smallest member id.
#[derive(Clone, Debug)]
pub struct QuotientGroup {
    pub group: FiniteGroup,
    /// Element of G to element of the quotient.
    pub projection: Vec<Elem>,
}

pub fn quotient(g: &FiniteGroup, normal: &Subgroup) -> Result<QuotientGroup> {
    if !normal.is_normal_in(g) {
        return Err(Error::NotNormal);
    }
    let n = g.order();
    let mut projection = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for x in 0..n {
        if projection[x] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(x);
        for h in normal.members().iter() {
            projection[g.mul(x, h)] = id;
        }
    }
    let m = reps.len();
    let mut table = Vec::with_capacity(m * m);
    for &a in &reps {
        for &b in &reps {
            table.push(projection[g.mul(a, b)]);
        }
    }
    let names = reps
        .iter()
        .map(|&r| {
            if m == n {
                g.name(r).to_string()
            } else {
                format!("[{}]", g.name(r))
            }
        })
        .collect();
    let mut gens: Vec<Elem> = Vec::new();
    for &s in g.generators() {
        let p = projection[s];
        if p != projection[g.identity()] && !gens.contains(&p) {
            gens.push(p);
        }
    }
    if gens.is_empty() {
        gens.push(projection[g.identity()]);
    }
    let config = crate::groups::GroupConfig {
        order_cap: usize::MAX,
        ..Default::default()
    };
    let label = format!("{}/N{}", g.label(), normal.order());
    let group = FiniteGroup::from_table(label, table, names, Some(gens), &config)?;
    Ok(QuotientGroup { group, projection })
}

/// Sorted element list, as written to JSON reports.
#[derive(Clone, Debug, Serialize)]
pub struct SubgroupReport {
    pub order: usize,
    pub elements: Vec<Elem>,
    pub names: Vec<String>,
}

impl SubgroupReport {
    pub fn new(g: &FiniteGroup, h: &Subgroup) -> Self {
        let elements = h.elements();
        SubgroupReport {
            order: elements.len(),
            names: elements.iter().map(|&x| g.name(x).to_string()).collect(),
            elements,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{zoo, GroupConfig};
    use crate::words::Word;

    fn cfg() -> GroupConfig {
        GroupConfig::default()
    }

    fn s3() -> FiniteGroup {
        zoo::symmetric(3, &cfg()).unwrap()
    }

    fn id(g: &FiniteGroup, name: &str) -> Elem {
        g.element_by_name(name).unwrap()
    }

    fn gens(words: &[&str]) -> TSubgroupGens {
        TSubgroupGens::new(words.iter().map(|w| w.parse::<Word>().unwrap())).unwrap()
    }

    #[test]
    fn generated_examples() {
        let g = s3();
        assert_eq!(generated_subgroup(&g, &[]).elements(), vec![g.identity()]);
        assert_eq!(generated_subgroup(&g, &[id(&g, "(1 2 3)")]).order(), 3);
        assert_eq!(
            generated_subgroup(&g, &[id(&g, "(1 2)"), id(&g, "(1 2 3)")]).order(),
            6
        );
    }

    #[test]
    fn normal_closure_examples() {
        let g = s3();
        assert_eq!(normal_closure(&g, &[g.identity()]).order(), 1);
        assert_eq!(normal_closure(&g, &[id(&g, "(1 2)")]).order(), 6);
        let a3 = normal_closure(&g, &[id(&g, "(1 2 3)")]);
        assert_eq!(a3.order(), 3);
        assert!(a3.is_normal_in(&g));
    }

    #[test]
    fn centralizer_examples() {
        let g = s3();
        assert_eq!(centralizer(&g, &[]).order(), 6);
        let c = centralizer(&g, &[id(&g, "(1 2)")]);
        assert_eq!(c.elements(), vec![g.identity(), id(&g, "(1 2)")]);
        let c = centralizer(&g, &[id(&g, "(1 2 3)")]);
        assert_eq!(
            c.elements(),
            vec![g.identity(), id(&g, "(1 2 3)"), id(&g, "(1 3 2)")]
        );
    }

    #[test]
    fn verbal_examples() {
        let g = s3();
        assert_eq!(verbal_image(&g, &gens(&["g1"])).unwrap().order(), 6);
        let d = verbal_image(&g, &gens(&["[g1,g2]"])).unwrap();
        // brute force: all 36 commutator values, then close
        let values: Vec<Elem> = (0..6)
            .flat_map(|a| (0..6).map(move |b| (a, b)))
            .map(|(a, b)| g.commutator(a, b))
            .collect();
        assert_eq!(d, generated_subgroup(&g, &values));
        assert_eq!(d.order(), 3);

        let c6 = zoo::cyclic(6, &cfg()).unwrap();
        assert_eq!(
            verbal_image(&c6, &gens(&["g1^2"])).unwrap().elements(),
            vec![0, 2, 4]
        );
        assert_eq!(verbal_image(&c6, &gens(&["1"])).unwrap().order(), 1);
    }

    #[test]
    fn verbal_budget_rejects_wide_words_on_big_groups() {
        let a5 = zoo::alternating(5, &cfg()).unwrap();
        let err = verbal_image(&a5, &gens(&["[g1,g2][g3,g4]"]));
        assert!(matches!(err, Err(Error::Budget(_))));
        let s4 = zoo::symmetric(4, &cfg()).unwrap();
        assert_eq!(
            verbal_image(&s4, &gens(&["[g1,g2][g3,g4]"]))
                .unwrap()
                .order(),
            12
        );
    }

    #[test]
    fn quotient_examples() {
        let g = s3();
        let q = quotient(&g, &Subgroup::trivial(&g)).unwrap();
        assert_eq!(q.group.order(), 6);
        assert_eq!(q.projection, (0..6).collect::<Vec<_>>());
        assert_eq!(q.group.table(), g.table());

        let a3 = verbal_image(&g, &gens(&["[g1,g2]"])).unwrap();
        let q = quotient(&g, &a3).unwrap();
        assert_eq!(q.group.order(), 2);

        let a5 = zoo::alternating(5, &cfg()).unwrap();
        let d = verbal_image(&a5, &gens(&["[g1,g2]"])).unwrap();
        assert_eq!(quotient(&a5, &d).unwrap().group.order(), 1);

        let not_normal = generated_subgroup(&g, &[id(&g, "(1 2)")]);
        assert!(matches!(quotient(&g, &not_normal), Err(Error::NotNormal)));
    }
}
