//! Scripted scenarios with expected and computed values side by side.

use serde::Serialize;

use crate::bcs::bcs_height_bound;
use crate::disc::{
    abelian_weak_equals_identity, extend_discrimination_abelian, is_discriminating_finite,
    verify_certificate, DiscStatus, FreeAbelianGroup,
};
use crate::error::{Error, Result};
use crate::groups::{make_group, FiniteGroup, GroupConfig};
use crate::homsearch::SearchConfig;
use crate::subgroups::verbal_image;
use crate::weakid::{
    check_weak, check_weak_modulo, min_height, verify_weak_star_chain, Status, TSubgroupGens,
};

pub const SCENARIOS: [&str; 5] = [
    "free-example-on-S3",
    "finite-wid",
    "bcs-bound",
    "nontransitivity-A5",
    "abelian-disc",
];

/// Groups swept by the `bcs-bound` scenario.
pub const BCS_ZOO: [&str; 9] = [
    "cyclic:6",
    "elemab:2:2",
    "sym:3",
    "q8",
    "dihedral:4",
    "dihedral:5",
    "alt:4",
    "sl:2:3",
    "gl:2:3",
];

#[derive(Clone, Debug, Serialize)]
pub struct ReproRow {
    pub check: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReproReport {
    pub scenario: String,
    pub pass: bool,
    pub rows: Vec<ReproRow>,
}

struct Rows(Vec<ReproRow>);

impl Rows {
    fn push(&mut self, check: impl Into<String>, expected: impl ToString, computed: impl ToString) {
        let (expected, computed) = (expected.to_string(), computed.to_string());
        self.0.push(ReproRow {
            check: check.into(),
            pass: expected == computed,
            expected,
            computed,
        });
    }
}

fn group(spec: &str) -> Result<FiniteGroup> {
    make_group(&spec.parse()?, &GroupConfig::default())
}

fn gens(ws: &[&str]) -> Result<TSubgroupGens> {
    TSubgroupGens::parse(ws)
}

fn height_text(h: Option<usize>) -> String {
    h.map_or_else(|| "none".into(), |h| h.to_string())
}

pub fn run_repro(name: &str, config: &SearchConfig) -> Result<ReproReport> {
    let mut rows = Rows(Vec::new());
    match name {
        "free-example-on-S3" => {
            let s3 = group("sym:3")?;
            let c = gens(&["[g1,g2]"])?;
            rows.push(
                "[g1,g2] at height 1",
                Status::Fails,
                check_weak(&s3, &c, 1, config)?.status,
            );
            rows.push(
                "[g1,g2] at height 2",
                Status::Holds,
                check_weak(&s3, &c, 2, config)?.status,
            );
            rows.push(
                "least height of [g1,g2]",
                "2",
                height_text(min_height(&s3, &c, 4, config)?.height),
            );
        }
        "finite-wid" => {
            let s3 = group("sym:3")?;
            rows.push("exponent", "6", s3.exponent());
            let r = min_height(&s3, &gens(&["g1^6"])?, 4, config)?;
            rows.push("least height of g1^6", "1", height_text(r.height));
            for k in 1..=5 {
                let w = format!("g1^{k}");
                let v = check_weak(&s3, &gens(&[&w])?, 6, config)?;
                rows.push(format!("{w} at height 6"), Status::Fails, v.status);
            }
            let r = min_height(&s3, &gens(&["[g1,g2]"])?, 4, config)?;
            rows.push("least height of [g1,g2]", "2", height_text(r.height));
        }
        "bcs-bound" => {
            for spec in BCS_ZOO {
                let g = group(spec)?;
                let bound = bcs_height_bound(&g)?;
                let log = crate::weakid::default_cutoff(&g) - 2;
                let r = min_height(&g, &gens(&["[g1,g2]"])?, bound, config)?;
                let h = r.height;
                rows.push(
                    format!(
                        "{spec}: least height {} <= chain bound {bound}",
                        height_text(h)
                    ),
                    true,
                    h.is_some_and(|h| h <= bound),
                );
                rows.push(
                    format!("{spec}: least height {} <= log bound {log}", height_text(h)),
                    true,
                    h.is_some_and(|h| h <= log.max(1)),
                );
            }
        }
        "nontransitivity-A5" => {
            let a5 = group("alt:5")?;
            let g1 = gens(&["g1"])?;
            let comm = gens(&["[g1,g2]"])?;
            rows.push("order of [A5,A5]", "60", verbal_image(&a5, &comm)?.order());
            rows.push(
                "g1 modulo [g1,g2] at height 1",
                Status::Holds,
                check_weak_modulo(&a5, &g1, &comm, 1, config)?.status,
            );
            for n in 1..=6 {
                rows.push(
                    format!("g1 at height {n}"),
                    Status::Fails,
                    check_weak(&a5, &g1, n, config)?.status,
                );
            }
            let chain = [g1, comm, TSubgroupGens::trivial()];
            let r = verify_weak_star_chain(&a5, &chain, &[1, 6], config)?;
            rows.push(
                "chain {g1} > {[g1,g2]} > {1} at heights 1, 6",
                Status::Holds,
                r.status,
            );
        }
        "abelian-disc" => {
            let t = group("trivial")?;
            rows.push(
                "trivial group",
                DiscStatus::Discriminating,
                is_discriminating_finite(&t, config.endo_cap).status,
            );
            let c2 = group("cyclic:2")?;
            let v = is_discriminating_finite(&c2, config.endo_cap);
            rows.push("cyclic:2", DiscStatus::NotDiscriminating, v.status);
            let cert = v.certificate_elements.unwrap_or_default();
            rows.push(
                "cyclic:2 certificate",
                "[(1,0), (0,1), (1,1)] in some order",
                {
                    let mut names = v.certificate.unwrap_or_default();
                    names.sort();
                    if names == ["(0,1)", "(1,0)", "(1,1)"] {
                        "[(1,0), (0,1), (1,1)] in some order".to_string()
                    } else {
                        format!("{names:?}")
                    }
                },
            );
            rows.push(
                "cyclic:2 certificate re-verified",
                true,
                verify_certificate(&c2, &cert, config.endo_cap)?,
            );
            let s3 = group("sym:3")?;
            rows.push(
                "sym:3",
                DiscStatus::NotDiscriminating,
                is_discriminating_finite(&s3, config.endo_cap).status,
            );
            let z = FreeAbelianGroup::new(1)?;
            let d = extend_discrimination_abelian(
                &z,
                2,
                &[vec![vec![1], vec![2]], vec![vec![2], vec![-1]]],
            )?;
            rows.push(
                "Z separating row for (1,2), (2,-1)",
                "[[1, 1]]",
                format!("{:?}", d.matrix.rows),
            );
            let z2 = FreeAbelianGroup::new(2)?;
            for (w, expected) in [
                ("[g1,g2]", true),
                ("g1^2", false),
                ("g1^3*g2^-3*[g1,g2]", false),
            ] {
                let v = abelian_weak_equals_identity(&w.parse()?, &z2);
                rows.push(
                    format!("{w} is an identity of Z^2"),
                    expected,
                    v.is_identity,
                );
            }
            // cyclic:2 is abelian, so its weak identities are its
            // identities, and it is still not discriminating
            for (w, n, expected) in [
                ("g1^2", 1, Status::Holds),
                ("[g1,g2]", 1, Status::Holds),
                ("g1", 3, Status::Fails),
                ("g1^3*g2", 3, Status::Fails),
            ] {
                rows.push(
                    format!("cyclic:2 {w} at height {n}"),
                    expected,
                    check_weak(&c2, &gens(&[w])?, n, config)?.status,
                );
            }
        }
        other => {
            return Err(Error::InvalidArgument(format!(
                "unknown scenario {other}; known: {}",
                SCENARIOS.join(", ")
            )))
        }
    }
    let pass = rows.0.iter().all(|r| r.pass);
    Ok(ReproReport {
        scenario: name.to_string(),
        pass,
        rows: rows.0,
    })
}
