use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{zoo, Elem, FiniteGroup, GroupConfig};
use crate::error::{Error, Result};

/// A named group constructor. The textual form is the CLI mini-language:
/// `cyclic:N`, `dihedral:N`, `sym:N`, `alt:N`, `q8`, `elemab:P:K`,
/// `gl:2:P`, `sl:2:P`, `prod(A,B)`, `trivial`, `file:PATH`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Trivial,
    Cyclic(usize),
    Dihedral(usize),
    Symmetric(usize),
    Alternating(usize),
    Quaternion,
    ElementaryAbelian { p: usize, k: usize },
    GeneralLinear { p: usize },
    SpecialLinear { p: usize },
    Product(Box<GroupSpec>, Box<GroupSpec>),
    File(PathBuf),
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Trivial => write!(f, "trivial"),
            GroupSpec::Cyclic(n) => write!(f, "cyclic:{n}"),
            GroupSpec::Dihedral(n) => write!(f, "dihedral:{n}"),
            GroupSpec::Symmetric(n) => write!(f, "sym:{n}"),
            GroupSpec::Alternating(n) => write!(f, "alt:{n}"),
            GroupSpec::Quaternion => write!(f, "q8"),
            GroupSpec::ElementaryAbelian { p, k } => write!(f, "elemab:{p}:{k}"),
            GroupSpec::GeneralLinear { p } => write!(f, "gl:2:{p}"),
            GroupSpec::SpecialLinear { p } => write!(f, "sl:2:{p}"),
            GroupSpec::Product(a, b) => write!(f, "prod({a},{b})"),
            GroupSpec::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

fn bad(text: &str, why: &str) -> Error {
    Error::InvalidParameter(format!("group spec {text:?}: {why}"))
}

fn num(text: &str, part: &str) -> Result<usize> {
    part.trim()
        .parse()
        .map_err(|_| bad(text, &format!("{part:?} is not a non-negative integer")))
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let s = text.trim();
        if let Some(path) = s.strip_prefix("file:") {
            return Ok(GroupSpec::File(PathBuf::from(path)));
        }
        if let Some(inner) = s.strip_prefix("prod(").and_then(|r| r.strip_suffix(')')) {
            let mut depth = 0usize;
            for (i, c) in inner.char_indices() {
                match c {
                    '(' => depth += 1,
                    ')' => {
                        depth = depth
                            .checked_sub(1)
                            .ok_or_else(|| bad(text, "unbalanced"))?
                    }
                    ',' if depth == 0 => {
                        let a = inner[..i].parse()?;
                        let b = inner[i + 1..].parse()?;
                        return Ok(GroupSpec::Product(Box::new(a), Box::new(b)));
                    }
                    _ => {}
                }
            }
            return Err(bad(text, "prod needs two comma-separated factors"));
        }
        let parts: Vec<&str> = s.split(':').collect();
        let spec = match parts.as_slice() {
            ["trivial"] => GroupSpec::Trivial,
            ["q8"] | ["quaternion"] | ["quaternion", "8"] => GroupSpec::Quaternion,
            ["cyclic", n] => GroupSpec::Cyclic(num(text, n)?),
            ["dihedral", n] => GroupSpec::Dihedral(num(text, n)?),
            ["sym", n] => GroupSpec::Symmetric(num(text, n)?),
            ["alt", n] => GroupSpec::Alternating(num(text, n)?),
            ["elemab", p, k] => GroupSpec::ElementaryAbelian {
                p: num(text, p)?,
                k: num(text, k)?,
            },
            ["gl", d, p] | ["sl", d, p] => {
                if num(text, d)? != 2 {
                    return Err(bad(text, "only 2x2 linear groups are supported"));
                }
                let p = num(text, p)?;
                if parts[0] == "gl" {
                    GroupSpec::GeneralLinear { p }
                } else {
                    GroupSpec::SpecialLinear { p }
                }
            }
            _ => return Err(bad(text, "unknown constructor")),
        };
        Ok(spec)
    }
}

/// Builds the group described by `spec`.
pub fn make_group(spec: &GroupSpec, config: &GroupConfig) -> Result<FiniteGroup> {
    match spec {
        GroupSpec::Trivial => zoo::trivial(config),
        GroupSpec::Cyclic(n) => zoo::cyclic(*n, config),
        GroupSpec::Dihedral(n) => zoo::dihedral(*n, config),
        GroupSpec::Symmetric(n) => zoo::symmetric(*n, config),
        GroupSpec::Alternating(n) => zoo::alternating(*n, config),
        GroupSpec::Quaternion => zoo::quaternion(config),
        GroupSpec::ElementaryAbelian { p, k } => zoo::elementary_abelian(*p, *k, config),
        GroupSpec::GeneralLinear { p } => zoo::general_linear(*p, config),
        GroupSpec::SpecialLinear { p } => zoo::special_linear(*p, config),
        GroupSpec::Product(a, b) => {
            let a = make_group(a, config)?;
            let b = make_group(b, config)?;
            zoo::direct_product(&a, &b, config)
        }
        GroupSpec::File(path) => {
            let mut g = CayleyFile::load(path)?.into_group(config)?;
            g.label = spec.to_string();
            Ok(g)
        }
    }
}

/// JSON Cayley table file. Element 0 must be the identity.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CayleyFile {
    pub order: usize,
    pub names: Vec<String>,
    pub table: Vec<Vec<Elem>>,
    pub generators: Vec<Elem>,
}

impl CayleyFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn from_group(g: &FiniteGroup) -> Self {
        CayleyFile {
            order: g.order(),
            names: g.names().to_vec(),
            table: g.table().chunks(g.order()).map(<[Elem]>::to_vec).collect(),
            generators: g.generators().to_vec(),
        }
    }

    pub fn into_group(self, config: &GroupConfig) -> Result<FiniteGroup> {
        if self.names.len() != self.order || self.table.len() != self.order {
            return Err(Error::NotAGroup(format!(
                "order {} does not match {} names / {} rows",
                self.order,
                self.names.len(),
                self.table.len()
            )));
        }
        if self.table.iter().any(|r| r.len() != self.order) {
            return Err(Error::NotAGroup("ragged table".into()));
        }
        let table: Vec<Elem> = self.table.into_iter().flatten().collect();
        let g = FiniteGroup::from_table("file", table, self.names, Some(self.generators), config)?;
        if g.identity() != 0 {
            return Err(Error::NotAGroup("identity must be element 0".into()));
        }
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_round_trip() {
        for s in [
            "trivial",
            "cyclic:6",
            "dihedral:4",
            "sym:3",
            "alt:5",
            "q8",
            "elemab:2:2",
            "gl:2:3",
            "sl:2:3",
            "prod(sym:3,prod(cyclic:2,q8))",
        ] {
            let spec: GroupSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        assert!("gl:3:2".parse::<GroupSpec>().is_err());
        assert!("prod(sym:3)".parse::<GroupSpec>().is_err());
        assert!("wat:3".parse::<GroupSpec>().is_err());
    }

    #[test]
    fn cayley_file_round_trip_and_validation() {
        let cfg = GroupConfig::default();
        let s3 = make_group(&"sym:3".parse().unwrap(), &cfg).unwrap();
        let file = CayleyFile::from_group(&s3);
        let json = serde_json::to_string(&file).unwrap();
        let back: CayleyFile = serde_json::from_str(&json).unwrap();
        let g = back.clone().into_group(&cfg).unwrap();
        assert_eq!(g.table(), s3.table());

        // Move the identity away from element 0 by swapping ids 0 and 1.
        let swap = |x: Elem| match x {
            0 => 1,
            1 => 0,
            x => x,
        };
        let mut moved = back.clone();
        moved.table = (0..6)
            .map(|a| (0..6).map(|b| swap(back.table[swap(a)][swap(b)])).collect())
            .collect();
        assert!(moved.into_group(&cfg).is_err());

        let mut broken = back;
        broken.table[2][3] = broken.table[2][4];
        assert!(broken.into_group(&cfg).is_err());
    }
}
