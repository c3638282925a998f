use crate::error::{Error, Result};
use crate::groups::{Elem, FiniteGroup};
use crate::subgroups::next_tuple;

/// An endomorphism of a finite group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupEndomorphism {
    /// Image of each generator of G, in generator order.
    pub generator_images: Vec<Elem>,
    /// Image of every element.
    pub map: Vec<Elem>,
}

impl GroupEndomorphism {
    pub fn apply(&self, x: Elem) -> Elem {
        self.map[x]
    }

    pub fn is_homomorphism(&self, g: &FiniteGroup) -> bool {
        let n = g.order();
        (0..n).all(|a| (0..n).all(|b| self.map[g.mul(a, b)] == g.mul(self.map[a], self.map[b])))
    }

    pub fn compose(&self, inner: &GroupEndomorphism, g: &FiniteGroup) -> GroupEndomorphism {
        let map: Vec<Elem> = inner.map.iter().map(|&y| self.map[y]).collect();
        GroupEndomorphism {
            generator_images: g.generators().iter().map(|&s| map[s]).collect(),
            map,
        }
    }

    pub fn identity(g: &FiniteGroup) -> GroupEndomorphism {
        GroupEndomorphism {
            generator_images: g.generators().to_vec(),
            map: (0..g.order()).collect(),
        }
    }

    pub fn trivial(g: &FiniteGroup) -> GroupEndomorphism {
        GroupEndomorphism {
            generator_images: vec![g.identity(); g.generators().len()],
            map: vec![g.identity(); g.order()],
        }
    }

    pub fn is_trivial(&self, g: &FiniteGroup) -> bool {
        self.map.iter().all(|&x| x == g.identity())
    }
}

/// Every endomorphism of `g`, in lexicographic order of generator images.
///
/// Candidates are extended along a breadth-first factorization of each
/// element into generators and rejected as soon as one Cayley-graph edge
/// `x -> x*s` is not respected; survivors are checked on the full table.
pub fn endomorphisms(g: &FiniteGroup, cap: usize) -> Result<Vec<GroupEndomorphism>> {
    let n = g.order();
    if n > cap {
        return Err(Error::Budget(format!(
            "endomorphism enumeration is limited to order {cap}, got {n}"
        )));
    }
    let gens = g.generators();
    let fact = g.generator_factorizations();
    let mut order: Vec<Elem> = (0..n).collect();
    order.sort_by_key(|&x| fact[x].len());
    // x = parent[x] * gens[last[x]] along the factorization
    let step: Vec<Option<(Elem, usize)>> = (0..n)
        .map(|x| {
            fact[x].split_last().map(|(&last, prefix)| {
                let parent = prefix
                    .iter()
                    .fold(g.identity(), |acc, &k| g.mul(acc, gens[k]));
                (parent, last)
            })
        })
        .collect();

    let mut out = Vec::new();
    let mut images = vec![0; gens.len()];
    let mut map = vec![0; n];
    loop {
        // BFS order maps each parent before its children.
        for &x in &order {
            map[x] = match step[x] {
                None => g.identity(),
                Some((parent, last)) => g.mul(map[parent], images[last]),
            };
        }
        let ok = (0..n).all(|x| {
            gens.iter()
                .zip(&images)
                .all(|(&s, &img)| map[g.mul(x, s)] == g.mul(map[x], img))
        });
        if ok {
            let e = GroupEndomorphism {
                generator_images: images.clone(),
                map: map.clone(),
            };
            if !e.is_homomorphism(g) {
                return Err(Error::NotAGroup(
                    "edge check accepted a non-homomorphism".into(),
                ));
            }
            out.push(e);
        }
        if !next_tuple(&mut images, n) {
            break;
        }
    }
    Ok(out)
}

/// Pairs `(phi, psi)` whose images commute elementwise; each gives the
/// homomorphism `G x G -> G`, `(a, b) -> phi(a) psi(b)`.
pub fn product_homs_to_g<'e>(
    g: &'e FiniteGroup,
    endos: &'e [GroupEndomorphism],
) -> impl Iterator<Item = (&'e GroupEndomorphism, &'e GroupEndomorphism)> + 'e {
    endos.iter().flat_map(move |phi| {
        endos.iter().filter_map(move |psi| {
            let commuting = phi
                .generator_images
                .iter()
                .all(|&x| psi.generator_images.iter().all(|&y| g.commutes(x, y)));
            commuting.then_some((phi, psi))
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{zoo, GroupConfig};

    fn cfg() -> GroupConfig {
        GroupConfig::default()
    }

    // Oracle: every map on all elements that respects the table, found by
    // trying every image for every element of a small group.
    fn brute_force_count(g: &FiniteGroup) -> usize {
        let n = g.order();
        let mut count = 0;
        let mut images = vec![0; n];
        loop {
            if (0..n).all(|a| (0..n).all(|b| images[g.mul(a, b)] == g.mul(images[a], images[b]))) {
                count += 1;
            }
            if !next_tuple(&mut images, n) {
                return count;
            }
        }
    }

    #[test]
    fn endomorphism_counts() {
        let v4 = zoo::elementary_abelian(2, 2, &cfg()).unwrap();
        assert_eq!(endomorphisms(&v4, 24).unwrap().len(), 16);
        let c6 = zoo::cyclic(6, &cfg()).unwrap();
        assert_eq!(endomorphisms(&c6, 24).unwrap().len(), 6);
        let s3 = zoo::symmetric(3, &cfg()).unwrap();
        let e = endomorphisms(&s3, 24).unwrap();
        assert_eq!(e.len(), brute_force_count(&s3));
        assert_eq!(e.len(), 10);
        assert!(e.contains(&GroupEndomorphism::identity(&s3)));
        assert!(e.contains(&GroupEndomorphism::trivial(&s3)));
        assert_eq!(brute_force_count(&v4), 16);
    }

    #[test]
    fn cap_is_enforced() {
        let a5 = zoo::alternating(5, &cfg()).unwrap();
        assert!(endomorphisms(&a5, 24).is_err());
    }

    #[test]
    fn product_hom_pairs() {
        let t = zoo::trivial(&cfg()).unwrap();
        let e = endomorphisms(&t, 24).unwrap();
        assert_eq!(product_homs_to_g(&t, &e).count(), 1);

        let c2 = zoo::cyclic(2, &cfg()).unwrap();
        let e = endomorphisms(&c2, 24).unwrap();
        assert_eq!(product_homs_to_g(&c2, &e).count(), 4);

        let s3 = zoo::symmetric(3, &cfg()).unwrap();
        let e = endomorphisms(&s3, 24).unwrap();
        let pairs: Vec<_> = product_homs_to_g(&s3, &e).collect();
        // Filter over all 100 ordered pairs by direct elementwise check.
        let expected = e
            .iter()
            .flat_map(|a| e.iter().map(move |b| (a, b)))
            .filter(|(a, b)| (0..6).all(|x| (0..6).all(|y| s3.commutes(a.apply(x), b.apply(y)))))
            .count();
        assert_eq!(pairs.len(), expected);
        for (phi, psi) in &pairs {
            let image_abelian = |f: &GroupEndomorphism| {
                (0..6).all(|x| (0..6).all(|y| s3.commutes(f.apply(x), f.apply(y))))
            };
            assert!(image_abelian(phi) || image_abelian(psi));
            // (a,b) -> phi(a) psi(b) is a homomorphism on S3 x S3
            for a in 0..6 {
                for b in 0..6 {
                    for c in 0..6 {
                        for d in 0..6 {
                            let lhs = s3.mul(phi.apply(s3.mul(a, c)), psi.apply(s3.mul(b, d)));
                            let rhs = s3.mul(
                                s3.mul(phi.apply(a), psi.apply(b)),
                                s3.mul(phi.apply(c), psi.apply(d)),
                            );
                            assert_eq!(lhs, rhs);
                        }
                    }
                }
            }
        }
    }
}
