//! The named laws and condition batteries, parsed once from their surface
//! syntax.

use crate::terms::{parse_law, Law};
use once_cell::sync::Lazy;
use std::collections::BTreeMap;

static REGISTRY: Lazy<BTreeMap<&'static str, Law>> = Lazy::new(|| {
    let entries: &[(&str, &str)] = &[
        // adjointness
        ("A1", "x o y <= z => x <= y -> z"),
        ("A2", "x <= y -> z => x o y <= z"),
        // lattice identities
        ("B1", "y' v ((x v y') ^ y) = x v y'"),
        ("B2", "(x' v (x ^ y)) ^ x = x ^ y"),
        // lambda identities and conditions (same surface syntax; `v`/`^`
        // resolve to the lambda operations on lambda-kind algebras)
        ("C1", "y' v ((x v y') ^ y) = x v y'"),
        ("C2", "(x' v (x ^ y)) ^ x = x ^ y"),
        ("D1", "x v y' <= y' v ((x v y') ^ y)"),
        ("D2", "(x' v (x ^ y)) ^ x <= x ^ y"),
        ("E1", "x <= y => z' v (z ^ x) <= z' v (z ^ y)"),
        ("E2", "x <= y => (x v z') ^ z <= (y v z') ^ z"),
        ("F1", "x o y <= z => y' v (y ^ (x o y)) <= y' v (y ^ z)"),
        ("F2", "x <= y -> z => (x v y') ^ y <= ((y -> z) v y') ^ y"),
        // semiring conditions
        ("c3", "x <= y' + x * y * y"),
        ("c4", "x <= y => z' + z * x <= z' + z * y"),
        ("c5", "x <= y => x * z <= y * z"),
        ("c6", "x * y <= x"),
        // classic lattice properties
        ("modular", "x <= z => x v (y ^ z) = (x v y) ^ z"),
        ("distributive", "x ^ (y v z) = (x ^ y) v (x ^ z)"),
        ("OM", "x v ((x v y) ^ x') = x v y"),
        ("weakly_om", "x = (x ^ y) v (x ^ (x ^ y)')"),
        ("dually_weakly_om", "x = (x v y) ^ (x v (x v y)')"),
        ("comp_top", "x v x' = 1"),
        ("comp_bottom", "x ^ x' = 0"),
        // monotonicity consequences of adjointness
        ("odot_mono_first", "x <= y => x o z <= y o z"),
        ("imp_mono_second", "x <= y => z -> x <= z -> y"),
        // lambda-lattice axioms
        ("lam_comm_join", "x v y = y v x"),
        ("lam_comm_meet", "x ^ y = y ^ x"),
        ("lam_wassoc_join", "x v ((x v y) v z) = (x v y) v z"),
        ("lam_wassoc_meet", "x ^ ((x ^ y) ^ z) = (x ^ y) ^ z"),
        ("lam_absorb_join", "x v (x ^ y) = x"),
        ("lam_absorb_meet", "x ^ (x v y) = x"),
        ("lam_idem_join", "x v x = x"),
        ("lam_idem_meet", "x ^ x = x"),
        // commutative semiring with x x' = 0
        ("sr_plus_comm", "x + y = y + x"),
        ("sr_plus_assoc", "(x + y) + z = x + (y + z)"),
        ("sr_plus_zero", "x + 0 = x"),
        ("sr_times_comm", "x * y = y * x"),
        ("sr_times_assoc", "(x * y) * z = x * (y * z)"),
        ("sr_annihilate", "x * 0 = 0"),
        ("sr_distribute", "x * (y + z) = x * y + x * z"),
        ("sr_comp", "x * x' = 0"),
        // orthomodular pseudoring: structure plus the seven identities
        ("pr_plus_comm", "x + y = y + x"),
        ("pr_plus_zero", "x + 0 = x"),
        ("pr_times_comm", "x * y = y * x"),
        ("pr_times_assoc", "(x * y) * z = x * (y * z)"),
        ("pr_times_idem", "x * x = x"),
        ("pr_times_one", "x * 1 = x"),
        ("pr_id1", "x + x = 0"),
        ("pr_id2", "x * 0 = 0"),
        ("pr_id3", "(x + 1) + y = x + (1 + y)"),
        ("pr_id4", "(1 + x * y) * x = x + x * y * x"),
        ("pr_id5", "(1 + x) * (1 + x * y) = 1 + x"),
        ("pr_id6", "(1 + x * (1 + y)) * (1 + y * (1 + x)) = 1 + (x + y)"),
        ("pr_id7", "(x + x * y) + x * y = x"),
    ];
    entries
        .iter()
        .map(|(name, src)| {
            let law = parse_law(src)
                .unwrap_or_else(|e| panic!("builtin law {name} failed to parse: {e}"));
            (*name, law)
        })
        .collect()
});

/// Look up a built-in law by name. Panics on unknown names; the set of names
/// is fixed at compile time.
pub fn law(name: &str) -> &'static Law {
    REGISTRY
        .get(name)
        .unwrap_or_else(|| panic!("unknown builtin law `{name}`"))
}

pub fn has_law(name: &str) -> bool {
    REGISTRY.contains_key(name)
}

pub const LAMBDA_AXIOMS: &[&str] = &[
    "lam_comm_join",
    "lam_comm_meet",
    "lam_wassoc_join",
    "lam_wassoc_meet",
    "lam_absorb_join",
    "lam_absorb_meet",
];

pub const LAMBDA_DERIVED_IDEMPOTENT: &[&str] = &["lam_idem_join", "lam_idem_meet"];

pub const SEMIRING_AXIOMS: &[&str] = &[
    "sr_plus_comm",
    "sr_plus_assoc",
    "sr_plus_zero",
    "sr_times_comm",
    "sr_times_assoc",
    "sr_annihilate",
    "sr_distribute",
    "sr_comp",
];

pub const PSEUDORING_AXIOMS: &[&str] = &[
    "pr_plus_comm",
    "pr_plus_zero",
    "pr_times_comm",
    "pr_times_assoc",
    "pr_times_idem",
    "pr_times_one",
    "pr_id1",
    "pr_id2",
    "pr_id3",
    "pr_id4",
    "pr_id5",
    "pr_id6",
    "pr_id7",
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_builtin_laws_parse() {
        // force the registry
        assert!(law("B1").premises.is_empty());
        assert_eq!(law("A1").premises.len(), 1);
        assert_eq!(law("E1").variables(), vec!["x", "y", "z"]);
        assert!(has_law("pr_id6"));
        assert!(!has_law("nope"));
    }
}
