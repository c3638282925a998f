//! Constructors for the small groups used throughout the crate.

use std::collections::HashMap;
use std::hash::Hash;

use super::{Elem, FiniteGroup, GroupConfig};
use crate::error::{Error, Result};

// Tabulates a group from an explicit element list. `elements[0]` need not be
// the identity; ids follow list order.
fn tabulate<T, M, N>(
    label: String,
    elements: Vec<T>,
    mul: M,
    name: N,
    generators: Option<Vec<T>>,
    config: &GroupConfig,
) -> Result<FiniteGroup>
where
    T: Eq + Hash + Clone,
    M: Fn(&T, &T) -> T,
    N: Fn(&T) -> String,
{
    let n = elements.len();
    if n > config.order_cap {
        return Err(Error::OrderCap {
            order: n,
            cap: config.order_cap,
        });
    }
    let index: HashMap<T, Elem> = elements
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, x)| (x, i))
        .collect();
    let mut table = Vec::with_capacity(n * n);
    for a in &elements {
        for b in &elements {
            let c = mul(a, b);
            let id = *index
                .get(&c)
                .ok_or_else(|| Error::NotAGroup(format!("{label}: product leaves the set")))?;
            table.push(id);
        }
    }
    let names = elements.iter().map(name).collect();
    let gens = generators.map(|gs| gs.iter().map(|g| index[g]).collect());
    FiniteGroup::from_table(label, table, names, gens, config)
}

fn check_order(order: usize, config: &GroupConfig) -> Result<()> {
    if order > config.order_cap {
        Err(Error::OrderCap {
            order,
            cap: config.order_cap,
        })
    } else {
        Ok(())
    }
}

pub fn is_prime(p: u64) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

/// Integers mod n; element `k` is named `"k"`.
pub fn cyclic(n: usize, config: &GroupConfig) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "cyclic group order must be >= 1".into(),
        ));
    }
    check_order(n, config)?;
    let gens = if n == 1 { vec![0] } else { vec![1] };
    tabulate(
        format!("cyclic:{n}"),
        (0..n).collect(),
        |a, b| (a + b) % n,
        |a| a.to_string(),
        Some(gens),
        config,
    )
}

pub fn trivial(config: &GroupConfig) -> Result<FiniteGroup> {
    let mut g = cyclic(1, config)?;
    g.label = "trivial".into();
    Ok(g)
}

/// `(Z/p)^k` with tuples ordered lexicographically.
pub fn elementary_abelian(p: usize, k: usize, config: &GroupConfig) -> Result<FiniteGroup> {
    if !is_prime(p as u64) || k == 0 {
        return Err(Error::InvalidParameter(format!(
            "elementary abelian group needs a prime p and k >= 1 (got p={p}, k={k})"
        )));
    }
    let order = (p as u128).pow(k as u32);
    if order > config.order_cap as u128 {
        return Err(Error::OrderCap {
            order: order.min(usize::MAX as u128) as usize,
            cap: config.order_cap,
        });
    }
    let mut elements: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..k {
        elements = elements
            .into_iter()
            .flat_map(|v| {
                (0..p).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    let gens = (0..k)
        .map(|i| {
            let mut v = vec![0; k];
            v[i] = 1;
            v
        })
        .collect();
    tabulate(
        format!("elemab:{p}:{k}"),
        elements,
        |a, b| a.iter().zip(b).map(|(x, y)| (x + y) % p).collect(),
        |a| format!("({})", join(a)),
        Some(gens),
        config,
    )
}

/// Symmetries of the regular n-gon, order 2n. Elements are `r^k s^f`.
pub fn dihedral(n: usize, config: &GroupConfig) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::InvalidParameter("dihedral:N needs N >= 1".into()));
    }
    check_order(2 * n, config)?;
    let elements: Vec<(usize, usize)> = (0..2).flat_map(|f| (0..n).map(move |k| (k, f))).collect();
    let mut gens = vec![(0, 1)];
    if n > 1 {
        gens.insert(0, (1, 0));
    }
    tabulate(
        format!("dihedral:{n}"),
        elements,
        |&(a, f), &(b, g)| {
            let b = if f == 1 { (n - b) % n } else { b };
            ((a + b) % n, f ^ g)
        },
        |&(k, f)| {
            let r = match k {
                0 => String::new(),
                1 => "r".to_string(),
                _ => format!("r^{k}"),
            };
            match (r.is_empty(), f) {
                (true, 0) => "e".to_string(),
                (true, _) => "s".to_string(),
                (false, 0) => r,
                (false, _) => format!("{r} s"),
            }
        },
        Some(gens),
        config,
    )
}

/// Quaternion group `{±1, ±i, ±j, ±k}`.
pub fn quaternion(config: &GroupConfig) -> Result<FiniteGroup> {
    // (negative, unit) with units 0=1, 1=i, 2=j, 3=k
    let elements: Vec<(bool, u8)> = (0..4u8).flat_map(|u| [(false, u), (true, u)]).collect();
    let unit_mul = |a: u8, b: u8| -> (bool, u8) {
        match (a, b) {
            (0, x) | (x, 0) => (false, x),
            (x, y) if x == y => (true, 0),
            (1, 2) => (false, 3),
            (2, 3) => (false, 1),
            (3, 1) => (false, 2),
            (2, 1) => (true, 3),
            (3, 2) => (true, 1),
            (1, 3) => (true, 2),
            _ => unreachable!(),
        }
    };
    tabulate(
        "q8".to_string(),
        elements,
        |&(sa, a), &(sb, b)| {
            let (s, u) = unit_mul(a, b);
            (sa ^ sb ^ s, u)
        },
        |&(s, u)| {
            format!(
                "{}{}",
                if s { "-" } else { "" },
                ["1", "i", "j", "k"][u as usize]
            )
        },
        Some(vec![(false, 1), (false, 2)]),
        config,
    )
}

// Permutations of {0..n-1} stored as image arrays.
type Perm = Vec<u8>;

fn compose_ltr(s: &Perm, t: &Perm) -> Perm {
    s.iter().map(|&p| t[p as usize]).collect()
}

/// Disjoint cycles (1-based), each starting at its smallest point, sorted.
fn cycles(p: &Perm) -> Vec<Vec<u8>> {
    let mut seen = vec![false; p.len()];
    let mut out = Vec::new();
    for start in 0..p.len() {
        if seen[start] || p[start] as usize == start {
            continue;
        }
        let mut cycle = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            cycle.push(x as u8 + 1);
            x = p[x] as usize;
        }
        out.push(cycle);
    }
    out
}

fn cycle_name(p: &Perm) -> String {
    let cs = cycles(p);
    if cs.is_empty() {
        return "()".to_string();
    }
    cs.iter()
        .map(|c| {
            format!(
                "({})",
                c.iter().map(u8::to_string).collect::<Vec<_>>().join(" ")
            )
        })
        .collect()
}

fn is_even(p: &Perm) -> bool {
    cycles(p).iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
}

fn all_perms(n: usize) -> Vec<Perm> {
    let mut out = vec![];
    let mut cur: Perm = (0..n as u8).collect();
    heap_permutations(n, &mut cur, &mut out);
    // Ordering: number of moved points, then the cycle list.
    out.sort_by_key(|p| {
        let moved = p
            .iter()
            .enumerate()
            .filter(|&(i, &x)| i != x as usize)
            .count();
        (moved, cycles(p))
    });
    out
}

fn heap_permutations(k: usize, a: &mut Perm, out: &mut Vec<Perm>) {
    if k <= 1 {
        out.push(a.clone());
        return;
    }
    for i in 0..k {
        heap_permutations(k - 1, a, out);
        if k.is_multiple_of(2) {
            a.swap(i, k - 1);
        } else {
            a.swap(0, k - 1);
        }
    }
}

fn perm_from_cycle(n: usize, cycle: &[usize]) -> Perm {
    let mut p: Perm = (0..n as u8).collect();
    for w in 0..cycle.len() {
        p[cycle[w] - 1] = (cycle[(w + 1) % cycle.len()] - 1) as u8;
    }
    p
}

/// Symmetric group on n <= 5 points. Identity is element 0; elements are
/// ordered by number of moved points, then by cycle notation.
pub fn symmetric(n: usize, config: &GroupConfig) -> Result<FiniteGroup> {
    if !(1..=5).contains(&n) {
        return Err(Error::InvalidParameter(format!(
            "sym:N needs 1 <= N <= 5 (got {n})"
        )));
    }
    check_order((1..=n).product(), config)?;
    let gens = if n == 1 {
        vec![perm_from_cycle(1, &[1])]
    } else {
        vec![
            perm_from_cycle(n, &[1, 2]),
            perm_from_cycle(n, &(1..=n).collect::<Vec<_>>()),
        ]
    };
    tabulate(
        format!("sym:{n}"),
        all_perms(n),
        compose_ltr,
        cycle_name,
        Some(gens),
        config,
    )
}

/// Alternating group on n <= 5 points, generated by the 3-cycles (1 2 k).
pub fn alternating(n: usize, config: &GroupConfig) -> Result<FiniteGroup> {
    if !(1..=5).contains(&n) {
        return Err(Error::InvalidParameter(format!(
            "alt:N needs 1 <= N <= 5 (got {n})"
        )));
    }
    let elements: Vec<Perm> = all_perms(n).into_iter().filter(is_even).collect();
    check_order(elements.len(), config)?;
    let gens = if n < 3 {
        vec![perm_from_cycle(n, &[1])]
    } else {
        (3..=n).map(|k| perm_from_cycle(n, &[1, 2, k])).collect()
    };
    tabulate(
        format!("alt:{n}"),
        elements,
        compose_ltr,
        cycle_name,
        Some(gens),
        config,
    )
}

type Mat2 = [usize; 4];

fn linear(p: usize, special: bool, config: &GroupConfig) -> Result<FiniteGroup> {
    if !is_prime(p as u64) {
        return Err(Error::InvalidParameter(format!(
            "field order {p} is not prime"
        )));
    }
    let gl_order = (p * p - 1) * (p * p - p);
    check_order(
        if special {
            gl_order / (p - 1)
        } else {
            gl_order
        },
        config,
    )?;
    let identity: Mat2 = [1, 0, 0, 1];
    let mut elements = vec![identity];
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                for d in 0..p {
                    let m = [a, b, c, d];
                    let det = (a * d + p * p - b * c) % p;
                    let keep = if special { det == 1 } else { det != 0 };
                    if keep && m != identity {
                        elements.push(m);
                    }
                }
            }
        }
    }
    let mul = move |x: &Mat2, y: &Mat2| -> Mat2 {
        [
            (x[0] * y[0] + x[1] * y[2]) % p,
            (x[0] * y[1] + x[1] * y[3]) % p,
            (x[2] * y[0] + x[3] * y[2]) % p,
            (x[2] * y[1] + x[3] * y[3]) % p,
        ]
    };
    let label = format!("{}:2:{p}", if special { "sl" } else { "gl" });
    tabulate(
        label,
        elements,
        mul,
        |m| format!("[[{},{}],[{},{}]]", m[0], m[1], m[2], m[3]),
        None,
        config,
    )
}

/// GL(2, p) for prime p. Identity is element 0, then matrices in
/// lexicographic order of their row-major entries.
pub fn general_linear(p: usize, config: &GroupConfig) -> Result<FiniteGroup> {
    linear(p, false, config)
}

pub fn special_linear(p: usize, config: &GroupConfig) -> Result<FiniteGroup> {
    linear(p, true, config)
}

/// `G x H` with element `(a, b)` numbered `a * |H| + b`.
pub fn direct_product(
    g: &FiniteGroup,
    h: &FiniteGroup,
    config: &GroupConfig,
) -> Result<FiniteGroup> {
    let (m, n) = (g.order(), h.order());
    check_order(m * n, config)?;
    let mut table = Vec::with_capacity(m * m * n * n);
    for a in 0..m * n {
        for b in 0..m * n {
            let x = g.mul(a / n, b / n);
            let y = h.mul(a % n, b % n);
            table.push(x * n + y);
        }
    }
    let names = (0..m * n)
        .map(|a| format!("({},{})", g.name(a / n), h.name(a % n)))
        .collect();
    let mut gens: Vec<Elem> = g
        .generators()
        .iter()
        .filter(|&&x| x != g.identity())
        .map(|&x| x * n + h.identity())
        .chain(
            h.generators()
                .iter()
                .filter(|&&y| y != h.identity())
                .map(|&y| g.identity() * n + y),
        )
        .collect();
    if gens.is_empty() {
        gens.push(g.identity() * n + h.identity());
    }
    FiniteGroup::from_table(
        format!("prod({},{})", g.label(), h.label()),
        table,
        names,
        Some(gens),
        config,
    )
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> GroupConfig {
        GroupConfig::default()
    }

    // Independent permutation oracle over 1-based image arrays; the left to
    // right composition convention is spelled out by hand.
    fn oracle_compose(s: &[usize], t: &[usize]) -> Vec<usize> {
        (0..s.len()).map(|p| t[s[p] - 1]).collect()
    }

    #[test]
    fn orders_and_exponents() {
        let c6 = cyclic(6, &cfg()).unwrap();
        assert_eq!((c6.order(), c6.exponent()), (6, 6));
        let s3 = symmetric(3, &cfg()).unwrap();
        assert_eq!((s3.order(), s3.exponent()), (6, 6));
        assert!(!s3.is_abelian());
        let q8 = quaternion(&cfg()).unwrap();
        assert_eq!((q8.order(), q8.exponent()), (8, 4));
        assert_eq!(
            general_linear(3, &cfg()).unwrap().order(),
            (9 - 1) * (9 - 3)
        );
        assert_eq!(special_linear(3, &cfg()).unwrap().order(), 24);
        assert_eq!(general_linear(2, &cfg()).unwrap().order(), 6);
        assert_eq!(alternating(5, &cfg()).unwrap().order(), 60);
        assert_eq!(alternating(4, &cfg()).unwrap().exponent(), 6);
        assert_eq!(symmetric(5, &cfg()).unwrap().order(), 120);
        assert_eq!(dihedral(4, &cfg()).unwrap().exponent(), 4);
        assert_eq!(dihedral(1, &cfg()).unwrap().order(), 2);
        assert_eq!(elementary_abelian(2, 3, &cfg()).unwrap().exponent(), 2);
        assert_eq!(trivial(&cfg()).unwrap().order(), 1);
    }

    #[test]
    fn symmetric_three_matches_permutation_oracle() {
        let s3 = symmetric(3, &cfg()).unwrap();
        let names: Vec<&str> = s3.names().iter().map(String::as_str).collect();
        assert_eq!(
            names,
            ["()", "(1 2)", "(1 3)", "(2 3)", "(1 2 3)", "(1 3 2)"]
        );
        let images: [[usize; 3]; 6] = [
            [1, 2, 3],
            [2, 1, 3],
            [3, 2, 1],
            [1, 3, 2],
            [2, 3, 1],
            [3, 1, 2],
        ];
        for a in 0..6 {
            for b in 0..6 {
                let c = oracle_compose(&images[a], &images[b]);
                assert_eq!(images[s3.mul(a, b)].to_vec(), c, "{a} * {b}");
            }
        }
    }

    #[test]
    fn product_order_and_exponent() {
        let a = symmetric(3, &cfg()).unwrap();
        let b = cyclic(4, &cfg()).unwrap();
        let p = direct_product(&a, &b, &cfg()).unwrap();
        assert_eq!(p.order(), 24);
        assert_eq!(p.exponent(), 12);
    }

    #[test]
    fn invalid_parameters() {
        assert!(general_linear(4, &cfg()).is_err());
        assert!(matches!(
            general_linear(5, &cfg()),
            Err(Error::OrderCap { .. })
        ));
        assert_eq!(special_linear(5, &cfg()).unwrap().order(), 120);
        assert!(symmetric(6, &cfg()).is_err());
        assert!(elementary_abelian(6, 2, &cfg()).is_err());
        assert!(cyclic(0, &cfg()).is_err());
    }

    #[test]
    fn identity_is_element_zero_everywhere() {
        let c = cfg();
        let groups = [
            cyclic(5, &c).unwrap(),
            dihedral(5, &c).unwrap(),
            symmetric(4, &c).unwrap(),
            alternating(5, &c).unwrap(),
            quaternion(&c).unwrap(),
            general_linear(3, &c).unwrap(),
            special_linear(3, &c).unwrap(),
            elementary_abelian(3, 2, &c).unwrap(),
        ];
        for g in &groups {
            assert_eq!(g.identity(), 0, "{}", g.label());
        }
    }
}
