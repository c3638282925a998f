//! Weak identities of finite groups: word arithmetic, a small group zoo,
//! verbal subgroups and quotients, commuting multi-copy homomorphism
//! search, centralizer chains and discrimination checks.

pub mod bcs;
pub mod bitset;
pub mod disc;
pub mod error;
pub mod groups;
pub mod homsearch;
pub mod repro;
pub mod subgroups;
pub mod weakid;
pub mod words;

pub use error::{Error, Result};
pub use groups::{make_group, Elem, FiniteGroup, GroupConfig, GroupSpec};
pub use homsearch::{Assignment, MultiCopyAssignment, SearchConfig, SearchOutcome, SearchStats};
pub use subgroups::{quotient, verbal_image, QuotientGroup, Subgroup};
pub use weakid::{
    check_weak, check_weak_modulo, min_height, verify_weak_star_chain, Status, TSubgroupGens,
    Verdict,
};
pub use words::{Endomorphism, Gen, Word};
