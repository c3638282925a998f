//! Discrimination.
//!
//! G is discriminating when every finite set of nontrivial elements of
//! `G x G` can be mapped into G by one homomorphism that kills none of
//! them. For finite G it is enough to separate the set of all nontrivial
//! elements at once, since every finite set is contained in it.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::groups::{Elem, FiniteGroup};
use crate::homsearch::{endomorphisms, product_homs_to_g, GroupEndomorphism};
use crate::words::{Gen, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum DiscStatus {
    Discriminating,
    NotDiscriminating,
    Unknown,
}

impl fmt::Display for DiscStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DiscStatus::Discriminating => "DISCRIMINATING",
            DiscStatus::NotDiscriminating => "NOT_DISCRIMINATING",
            DiscStatus::Unknown => "UNKNOWN",
        })
    }
}

/// The homomorphism `(a, b) -> phi(a) psi(b)` for commuting endomorphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairHom {
    pub phi: GroupEndomorphism,
    pub psi: GroupEndomorphism,
}

impl PairHom {
    pub fn apply(&self, g: &FiniteGroup, a: Elem, b: Elem) -> Elem {
        g.mul(self.phi.apply(a), self.psi.apply(b))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PairHomReport {
    pub phi: Vec<String>,
    pub psi: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DiscVerdict {
    pub status: DiscStatus,
    /// Nontrivial elements of `G x G` that no homomorphism separates.
    pub certificate: Option<Vec<String>>,
    /// Generator images of a homomorphism separating every nontrivial
    /// element.
    pub witness: Option<PairHomReport>,
    pub homs_checked: usize,
    pub reason: Option<String>,
    #[serde(skip)]
    pub certificate_elements: Option<Vec<(Elem, Elem)>>,
    #[serde(skip)]
    pub separating: Option<PairHom>,
}

fn pair_name(g: &FiniteGroup, (a, b): (Elem, Elem)) -> String {
    format!("({},{})", g.name(a), g.name(b))
}

fn all_pair_homs(g: &FiniteGroup, endo_cap: usize) -> Result<Vec<PairHom>> {
    let endos = endomorphisms(g, endo_cap)?;
    Ok(product_homs_to_g(g, &endos)
        .map(|(phi, psi)| PairHom {
            phi: phi.clone(),
            psi: psi.clone(),
        })
        .collect())
}

/// Decides the discriminating property of a finite group by exhausting
/// every homomorphism `G x G -> G` against all nontrivial elements.
pub fn is_discriminating_finite(g: &FiniteGroup, endo_cap: usize) -> DiscVerdict {
    let homs = match all_pair_homs(g, endo_cap) {
        Ok(h) => h,
        Err(e) => {
            return DiscVerdict {
                status: DiscStatus::Unknown,
                certificate: None,
                witness: None,
                homs_checked: 0,
                reason: Some(e.to_string()),
                certificate_elements: None,
                separating: None,
            }
        }
    };
    let n = g.order();
    let e = g.identity();
    // element (a, b) of G x G has index a * n + b
    let kills: Vec<ElementSet> = homs
        .iter()
        .map(|h| {
            ElementSet::from_ids(
                n * n,
                (0..n * n).filter(|&i| i != e * n + e && h.apply(g, i / n, i % n) == e),
            )
        })
        .collect();
    if let Some(k) = kills.iter().position(ElementSet::is_empty) {
        let h = &homs[k];
        let names = |f: &GroupEndomorphism| {
            f.generator_images
                .iter()
                .map(|&x| g.name(x).to_string())
                .collect()
        };
        return DiscVerdict {
            status: DiscStatus::Discriminating,
            certificate: None,
            witness: Some(PairHomReport {
                phi: names(&h.phi),
                psi: names(&h.psi),
            }),
            homs_checked: homs.len(),
            reason: None,
            certificate_elements: None,
            separating: Some(h.clone()),
        };
    }
    // Greedy minimization: drop an element whenever the rest still meets
    // every kill set.
    let mut cert = ElementSet::full(n * n);
    cert.remove(e * n + e);
    for i in 0..n * n {
        if !cert.contains(i) {
            continue;
        }
        cert.remove(i);
        if kills.iter().any(|k| k.intersection(&cert).is_empty()) {
            cert.insert(i);
        }
    }
    let elems: Vec<(Elem, Elem)> = cert.iter().map(|i| (i / n, i % n)).collect();
    DiscVerdict {
        status: DiscStatus::NotDiscriminating,
        certificate: Some(elems.iter().map(|&p| pair_name(g, p)).collect()),
        witness: None,
        homs_checked: homs.len(),
        reason: None,
        certificate_elements: Some(elems),
        separating: None,
    }
}

/// Re-checks a certificate by running every homomorphism `G x G -> G`.
pub fn verify_certificate(g: &FiniteGroup, cert: &[(Elem, Elem)], endo_cap: usize) -> Result<bool> {
    let e = g.identity();
    if cert.contains(&(e, e)) {
        return Ok(false);
    }
    let homs = all_pair_homs(g, endo_cap)?;
    Ok(homs
        .iter()
        .all(|h| cert.iter().any(|&(a, b)| h.apply(g, a, b) == e)))
}

/// Homomorphism `G^n -> G` built as `rho_k = rho2_k ∘ (rho_{k-1} x id)`.
#[derive(Clone, Debug)]
pub struct FiniteProductHom {
    pub n: usize,
    pub steps: Vec<PairHom>,
}

impl FiniteProductHom {
    pub fn apply(&self, g: &FiniteGroup, h: &[Elem]) -> Elem {
        self.steps
            .iter()
            .zip(&h[1..])
            .fold(h[0], |acc, (s, &x)| s.apply(g, acc, x))
    }
}

fn check_arity<T>(n: usize, targets: &[Vec<T>]) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    if let Some(t) = targets.iter().find(|t| t.len() != n) {
        return Err(Error::InvalidArgument(format!(
            "target has {} components, expected {n}",
            t.len()
        )));
    }
    Ok(())
}

/// A homomorphism `G^n -> G` killing exactly the trivial targets, or None
/// when G is not discriminating.
pub fn extend_discrimination_finite(
    g: &FiniteGroup,
    n: usize,
    targets: &[Vec<Elem>],
    endo_cap: usize,
) -> Result<Option<FiniteProductHom>> {
    check_arity(n, targets)?;
    let v = is_discriminating_finite(g, endo_cap);
    match v.status {
        DiscStatus::Unknown => Err(Error::Budget(v.reason.unwrap_or_default())),
        DiscStatus::NotDiscriminating => Ok(None),
        DiscStatus::Discriminating => {
            // one homomorphism separates every nontrivial pair, so it serves
            // as rho2 at every induction step
            let sep = v.separating.expect("witness present");
            Ok(Some(FiniteProductHom {
                n,
                steps: vec![sep; n - 1],
            }))
        }
    }
}

/// `Z^rank`; elements are integer vectors, homomorphisms integer matrices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FreeAbelianGroup {
    rank: usize,
}

impl FreeAbelianGroup {
    pub fn new(rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidParameter(
                "free abelian rank must be at least 1".into(),
            ));
        }
        Ok(FreeAbelianGroup { rank })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
}

/// Row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntMatrix {
    pub rows: Vec<Vec<i64>>,
}

impl IntMatrix {
    pub fn identity(r: usize) -> Self {
        IntMatrix {
            rows: (0..r)
                .map(|i| (0..r).map(|j| i64::from(i == j)).collect())
                .collect(),
        }
    }

    pub fn apply(&self, v: &[i64]) -> Result<Vec<i64>> {
        self.rows
            .iter()
            .map(|row| {
                row.iter().zip(v).try_fold(0i64, |acc, (&a, &b)| {
                    a.checked_mul(b)
                        .and_then(|p| acc.checked_add(p))
                        .ok_or_else(|| Error::InvalidArgument("integer overflow".into()))
                })
            })
            .collect()
    }

    fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        let cols = other.rows.first().map_or(0, Vec::len);
        let rows = self
            .rows
            .iter()
            .map(|row| {
                (0..cols)
                    .map(|j| {
                        let col: Vec<i64> = other.rows.iter().map(|r| r[j]).collect();
                        IntMatrix {
                            rows: vec![row.clone()],
                        }
                        .apply(&col)
                        .map(|v| v[0])
                    })
                    .collect::<Result<Vec<i64>>>()
            })
            .collect::<Result<_>>()?;
        Ok(IntMatrix { rows })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AbelianDiscrimination {
    /// The composed map `Z^(rank*n) -> Z^rank`.
    pub matrix: IntMatrix,
    /// `rho2` of each induction step, each `rank x 2*rank`.
    pub steps: Vec<IntMatrix>,
}

impl AbelianDiscrimination {
    pub fn apply(&self, h: &[Vec<i64>]) -> Result<Vec<i64>> {
        self.matrix.apply(&h.concat())
    }
}

/// Largest entry size tried by the matrix search.
pub const MAX_MATRIX_NORM: i64 = 8;

/// Steps entries through `k, k-1, ..., -k`, last entry fastest.
fn next_descending(entries: &mut [i64], k: i64) -> bool {
    for x in entries.iter_mut().rev() {
        if *x > -k {
            *x -= 1;
            return true;
        }
        *x = k;
    }
    false
}

/// Least matrix, in increasing max-norm and then descending lexicographic
/// order of entries, under which no nonzero vector maps to zero.
fn separating_matrix(rows: usize, cols: usize, vectors: &[Vec<i64>]) -> Result<IntMatrix> {
    let nonzero: Vec<&Vec<i64>> = vectors
        .iter()
        .filter(|v| v.iter().any(|&x| x != 0))
        .collect();
    for k in 0..=MAX_MATRIX_NORM {
        let len = rows * cols;
        let mut entries = vec![k; len];
        loop {
            if entries.iter().any(|x| x.abs() == k) {
                let m = IntMatrix {
                    rows: entries.chunks(cols).map(<[i64]>::to_vec).collect(),
                };
                let mut ok = true;
                for v in &nonzero {
                    if m.apply(v)?.iter().all(|&x| x == 0) {
                        ok = false;
                        break;
                    }
                }
                if ok {
                    return Ok(m);
                }
            }
            if !next_descending(&mut entries, k) {
                break;
            }
        }
    }
    Err(Error::Budget(format!(
        "no separating matrix with entries bounded by {MAX_MATRIX_NORM}"
    )))
}

/// Discrimination witness for `Z^rank`: a homomorphism `(Z^rank)^n ->
/// Z^rank` sending exactly the zero targets to zero, built by the
/// induction `rho = rho2 ∘ (rho1 x id)`.
pub fn extend_discrimination_abelian(
    a: &FreeAbelianGroup,
    n: usize,
    targets: &[Vec<Vec<i64>>],
) -> Result<AbelianDiscrimination> {
    check_arity(n, targets)?;
    let r = a.rank;
    if targets.iter().flatten().any(|c| c.len() != r) {
        return Err(Error::InvalidArgument(format!(
            "components must have length {r}"
        )));
    }
    let mut rho = IntMatrix::identity(r);
    let mut steps = Vec::new();
    for k in 1..n {
        // images of the first k components under rho, then component k
        let bar: Vec<Vec<i64>> = targets
            .iter()
            .map(|t| -> Result<Vec<i64>> {
                let mut v = rho.apply(&t[..k].concat())?;
                v.extend_from_slice(&t[k]);
                Ok(v)
            })
            .collect::<Result<_>>()?;
        let rho2 = separating_matrix(r, 2 * r, &bar)?;
        // rho2 ∘ (rho x id) = [A rho | B] for rho2 = [A | B]
        let left = IntMatrix {
            rows: rho2.rows.iter().map(|row| row[..r].to_vec()).collect(),
        };
        let composed = left.mul(&rho)?;
        rho = IntMatrix {
            rows: composed
                .rows
                .into_iter()
                .zip(&rho2.rows)
                .map(|(mut row, full)| {
                    row.extend_from_slice(&full[r..]);
                    row
                })
                .collect(),
        };
        steps.push(rho2);
    }
    Ok(AbelianDiscrimination { matrix: rho, steps })
}

#[derive(Clone, Debug, Serialize)]
pub struct AbelianVerdict {
    pub is_identity: bool,
    pub exponent_sums: BTreeMap<String, i64>,
    pub explanation: String,
    /// A single assignment into `Z^rank`, used in every copy; it keeps the
    /// word nontrivial at every height.
    pub witness: Option<BTreeMap<String, Vec<i64>>>,
}

/// Decides whether `w` is an identity (equivalently a weak identity) of
/// `Z^rank`, with a witness assignment when it is not.
pub fn abelian_weak_equals_identity(w: &Word, a: &FreeAbelianGroup) -> AbelianVerdict {
    let sums = w.exponent_sums();
    let exponent_sums = sums
        .entries()
        .iter()
        .map(|(g, &e)| (format!("g{g}"), e))
        .collect();
    let Some((&lead, &e)) = sums.entries().iter().find(|(_, &e)| e != 0) else {
        return AbelianVerdict {
            is_identity: true,
            exponent_sums,
            explanation:
                "every exponent sum is zero, so the word is trivial in every abelian group".into(),
            witness: None,
        };
    };
    let r = a.rank;
    let witness: BTreeMap<String, Vec<i64>> = w
        .variables()
        .into_iter()
        .map(|g: Gen| {
            let mut v = vec![0; r];
            if g == lead {
                v[0] = 1;
            }
            (format!("g{g}"), v)
        })
        .collect();
    AbelianVerdict {
        is_identity: false,
        exponent_sums,
        explanation: format!(
            "g{lead} has exponent sum {e}; sending it to e1 and every other variable to 0 gives \
             value {e}*e1 in each copy, and all copies commute"
        ),
        witness: Some(witness),
    }
}

/// Value of `w` under an assignment into `Z^rank`.
pub fn evaluate_abelian(
    w: &Word,
    assignment: &BTreeMap<Gen, Vec<i64>>,
    rank: usize,
) -> Result<Vec<i64>> {
    let mut out = vec![0i64; rank];
    for &(g, e) in w.syllables() {
        let v = assignment.get(&g).ok_or(Error::Unassigned(g))?;
        for (o, &x) in out.iter_mut().zip(v) {
            *o = x
                .checked_mul(e)
                .and_then(|p| o.checked_add(p))
                .ok_or_else(|| Error::InvalidArgument("integer overflow".into()))?;
        }
    }
    Ok(out)
}
