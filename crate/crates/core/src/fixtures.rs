//! Built-in transcriptions of the worked examples, each carrying a frozen
//! expected-verdict map that the registry can re-verify against fresh
//! computation.

use std::collections::BTreeMap;

use crate::algebra::{
    build_boolean_ring, build_fano_lambda, is_lattice_lambda, lambda_unchecked, lattice_flags,
    lattice_from_poset, pseudoring_unchecked, Algebra, Kind,
};
use crate::error::{Error, Result};
use crate::poset::FinitePoset;
use crate::sasaki::{check_adjointness_on, condition_battery, derive_sasaki, Scheme};
use crate::tables::{BinaryTable, UnaryTable};

pub const FIXTURE_IDS: &[&str] = &[
    "fig1",
    "n5_bprime_a",
    "n5_bprime_c",
    "fig3",
    "fig4",
    "fig5_ex1",
    "fano",
    "fig7_ex2",
    "boolean_ring_1",
    "boolean_ring_2",
    "boolean_ring_3",
    "boolean_ring_4",
    "pseudoring6",
    "mo2",
];

fn poset(elements: &[&str], covers: &[(&str, &str)]) -> FinitePoset {
    FinitePoset::from_covers(elements, covers).expect("fixture covers are acyclic")
}

fn neg_by_names(p: &FinitePoset, images: &[&str]) -> UnaryTable {
    let map = images
        .iter()
        .map(|s| p.index(s).expect("fixture name"))
        .collect();
    UnaryTable::new(map).expect("fixture negation in range")
}

/// Complete a poset to a lambda pair of tables: comparable pairs are forced,
/// incomparable pairs take the given named choices (unordered keys).
fn lambda_tables_from_choices(
    p: &FinitePoset,
    joins: &[(&str, &str, &str)],
    meets: &[(&str, &str, &str)],
) -> (BinaryTable, BinaryTable) {
    let n = p.len();
    let lookup = |choices: &[(&str, &str, &str)], x: usize, y: usize| -> Option<usize> {
        choices.iter().find_map(|(a, b, v)| {
            let (a, b, v) = (p.index(a).unwrap(), p.index(b).unwrap(), p.index(v).unwrap());
            ((a, b) == (x, y) || (a, b) == (y, x)).then_some(v)
        })
    };
    let lsup = BinaryTable::from_fn(n, |x, y| {
        if p.le(x, y) {
            y
        } else if p.le(y, x) {
            x
        } else {
            lookup(joins, x, y).expect("fixture covers every incomparable join")
        }
    });
    let linf = BinaryTable::from_fn(n, |x, y| {
        if p.le(x, y) {
            x
        } else if p.le(y, x) {
            y
        } else {
            lookup(meets, x, y).expect("fixture covers every incomparable meet")
        }
    });
    (lsup, linf)
}

fn lambda_fixture(
    p: FinitePoset,
    joins: &[(&str, &str, &str)],
    meets: &[(&str, &str, &str)],
    neg_images: &[&str],
) -> Algebra {
    let (lsup, linf) = lambda_tables_from_choices(&p, joins, meets);
    let neg = neg_by_names(&p, neg_images);
    let mut alg = lambda_unchecked(p.elements().to_vec(), lsup, linf);
    alg = Algebra::from_parts(
        Kind::Lambda,
        p.elements().to_vec(),
        Some(p),
        {
            let mut u = BTreeMap::new();
            u.insert("neg".to_string(), neg);
            u
        },
        alg.binary_ops().clone(),
        BTreeMap::new(),
    );
    alg
}

fn fig1() -> Algebra {
    let p = poset(
        &["0", "a", "b", "c", "d", "e", "f", "g", "h", "i", "j", "1"],
        &[
            ("0", "a"), ("0", "b"), ("0", "c"), ("0", "d"), ("0", "e"),
            ("a", "f"), ("a", "g"), ("b", "f"), ("b", "h"), ("c", "f"), ("c", "i"),
            ("d", "f"), ("d", "j"), ("e", "g"), ("e", "h"), ("e", "i"), ("e", "j"),
            ("f", "1"), ("g", "1"), ("h", "1"), ("i", "1"), ("j", "1"),
        ],
    );
    let neg = neg_by_names(&p, &["1", "h", "i", "j", "g", "f", "e", "b", "c", "d", "a", "0"]);
    lattice_from_poset(&p).unwrap().with_unary("neg", neg)
}

fn n5(bprime: &str) -> Algebra {
    let p = poset(
        &["0", "a", "b", "c", "1"],
        &[("0", "a"), ("0", "b"), ("a", "c"), ("b", "1"), ("c", "1")],
    );
    let neg = neg_by_names(&p, &["1", "b", bprime, "b", "0"]);
    lattice_from_poset(&p).unwrap().with_unary("neg", neg)
}

fn fig3_order() -> FinitePoset {
    poset(
        &["0", "a", "b", "c", "d", "1"],
        &[
            ("0", "a"), ("0", "b"),
            ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"),
            ("c", "1"), ("d", "1"),
        ],
    )
}

fn fig3() -> Algebra {
    lambda_fixture(
        fig3_order(),
        &[("a", "b", "d"), ("c", "d", "1")],
        &[("a", "b", "0"), ("c", "d", "b")],
        &["1", "1", "1", "d", "c", "0"],
    )
}

fn fig7() -> Algebra {
    lambda_fixture(
        fig3_order(),
        &[("a", "b", "1"), ("c", "d", "1")],
        &[("a", "b", "0"), ("c", "d", "0")],
        &["1", "b", "a", "d", "c", "0"],
    )
}

pub fn fig4_poset() -> FinitePoset {
    poset(
        &["0", "a", "b", "c", "d", "d'", "c'", "b'", "a'", "1"],
        &[
            ("0", "a"), ("0", "b"), ("0", "c"), ("0", "d"),
            ("a", "d'"), ("a", "c'"), ("a", "b'"),
            ("b", "d'"), ("b", "a'"),
            ("c", "d'"), ("c", "a'"),
            ("d", "c'"), ("d", "b'"), ("d", "a'"),
            ("d'", "1"), ("c'", "1"), ("b'", "1"), ("a'", "1"),
        ],
    )
}

pub fn fig4_neg(p: &FinitePoset) -> UnaryTable {
    neg_by_names(p, &["1", "a'", "b'", "c'", "d'", "d", "c", "b", "a", "0"])
}

fn fig4() -> Algebra {
    let p = fig4_poset();
    let neg = fig4_neg(&p);
    let mut unary = BTreeMap::new();
    unary.insert("neg".to_string(), neg);
    Algebra::from_parts(
        Kind::Poset,
        p.elements().to_vec(),
        Some(p),
        unary,
        BTreeMap::new(),
        BTreeMap::new(),
    )
}

fn fig5_ex1() -> Algebra {
    let points = ["a", "b", "c", "d"];
    let mut covers: Vec<(&str, &str)> = Vec::new();
    for x in points {
        covers.push(("0", x));
    }
    // x lies under every prime except its own
    const PRIMES: [(&str, &str); 4] = [("a", "a'"), ("b", "b'"), ("c", "c'"), ("d", "d'")];
    for x in points {
        for (y, yp) in PRIMES {
            if y != x {
                covers.push((x, yp));
            }
        }
    }
    for (_, yp) in PRIMES {
        covers.push((yp, "1"));
    }
    let p = poset(&["0", "a", "b", "c", "d", "a'", "b'", "c'", "d'", "1"], &covers);
    // join of distinct points: the first prime (in element order) outside
    // {x', y'}; meets of distinct primes are 0; all else forced
    let joins = [
        ("a", "b", "c'"), ("a", "c", "b'"), ("a", "d", "b'"),
        ("b", "c", "a'"), ("b", "d", "a'"), ("c", "d", "a'"),
        ("a", "a'", "1"), ("b", "b'", "1"), ("c", "c'", "1"), ("d", "d'", "1"),
        ("a'", "b'", "1"), ("a'", "c'", "1"), ("a'", "d'", "1"),
        ("b'", "c'", "1"), ("b'", "d'", "1"), ("c'", "d'", "1"),
    ];
    let meets = [
        ("a", "b", "0"), ("a", "c", "0"), ("a", "d", "0"),
        ("b", "c", "0"), ("b", "d", "0"), ("c", "d", "0"),
        ("a", "a'", "0"), ("b", "b'", "0"), ("c", "c'", "0"), ("d", "d'", "0"),
        ("a'", "b'", "0"), ("a'", "c'", "0"), ("a'", "d'", "0"),
        ("b'", "c'", "0"), ("b'", "d'", "0"), ("c'", "d'", "0"),
    ];
    lambda_fixture(
        p,
        &joins,
        &meets,
        &["1", "a'", "b'", "c'", "d'", "a", "b", "c", "d", "0"],
    )
}

fn pseudoring6() -> Algebra {
    let elements: Vec<String> = ["0", "a", "b", "c", "d", "1"].map(String::from).to_vec();
    let idx = |s: &str| elements.iter().position(|e| e == s).unwrap();
    let rows_plus = [
        ["0", "a", "b", "c", "d", "1"],
        ["a", "0", "0", "1", "0", "c"],
        ["b", "0", "0", "0", "1", "d"],
        ["c", "1", "0", "0", "0", "a"],
        ["d", "0", "1", "0", "0", "b"],
        ["1", "c", "d", "a", "b", "0"],
    ];
    let rows_times = [
        ["0", "0", "0", "0", "0", "0"],
        ["0", "a", "0", "0", "0", "a"],
        ["0", "0", "b", "0", "0", "b"],
        ["0", "0", "0", "c", "0", "c"],
        ["0", "0", "0", "0", "d", "d"],
        ["0", "a", "b", "c", "d", "1"],
    ];
    let flat = |rows: &[[&str; 6]; 6]| -> Vec<usize> {
        rows.iter().flatten().map(|s| idx(s)).collect()
    };
    let plus = BinaryTable::new(6, flat(&rows_plus)).unwrap();
    let times = BinaryTable::new(6, flat(&rows_times)).unwrap();
    pseudoring_unchecked(elements, plus, times, 0, 5).unwrap()
}

fn mo2() -> Algebra {
    let p = poset(
        &["0", "a", "b", "c", "d", "1"],
        &[
            ("0", "a"), ("0", "b"), ("0", "c"), ("0", "d"),
            ("a", "1"), ("b", "1"), ("c", "1"), ("d", "1"),
        ],
    );
    let neg = neg_by_names(&p, &["1", "c", "d", "a", "b", "0"]);
    lattice_from_poset(&p).unwrap().with_unary("neg", neg)
}

pub fn fixture(id: &str) -> Result<Algebra> {
    match id {
        "fig1" => Ok(fig1()),
        "n5_bprime_a" => Ok(n5("a")),
        "n5_bprime_c" => Ok(n5("c")),
        "fig3" => Ok(fig3()),
        "fig4" => Ok(fig4()),
        "fig5_ex1" => Ok(fig5_ex1()),
        "fano" => Ok(build_fano_lambda()),
        "fig7_ex2" => Ok(fig7()),
        "boolean_ring_1" => build_boolean_ring(1),
        "boolean_ring_2" => build_boolean_ring(2),
        "boolean_ring_3" => build_boolean_ring(3),
        "boolean_ring_4" => build_boolean_ring(4),
        "pseudoring6" => Ok(pseudoring6()),
        "mo2" => Ok(mo2()),
        other => Err(Error::UnknownFixture(other.to_string())),
    }
}

/// Frozen expectations per fixture; keys are condition names recognized by
/// `computed_value`.
pub fn expected(id: &str) -> Result<BTreeMap<&'static str, bool>> {
    let entries: &[(&str, bool)] = match id {
        "fig1" => &[
            ("B1", true), ("B2", true), ("A1", true), ("A2", true),
            ("modular", true), ("complemented", true),
            ("involution", false), ("antitone", true),
            ("OM", true), ("weakly_om", true), ("dually_weakly_om", true),
            ("orthomodular", false),
        ],
        "n5_bprime_a" => &[
            ("B1", false), ("B2", false), ("A1", false), ("A2", false),
            ("modular", false), ("complemented", true), ("involution", false),
        ],
        "n5_bprime_c" => &[
            ("B1", true), ("B2", false), ("A1", true), ("A2", false),
            ("modular", false), ("complemented", true), ("involution", false),
        ],
        "fig3" => &[
            ("C1", true), ("C2", false), ("D1", true), ("D2", false),
            ("E1", true), ("E2", true), ("F1", true), ("F2", true),
            ("A1", true), ("A2", false), ("is_lattice", false),
        ],
        "fig4" => &[("involution", true), ("antitone", true)],
        "fig5_ex1" => &[
            ("C1", false), ("C2", false), ("D1", false), ("D2", true),
            ("E1", false), ("E2", true), ("F1", true), ("F2", true),
            ("A1", false), ("A2", true), ("is_lattice", false),
            ("complemented", true), ("involution", true), ("antitone", true),
        ],
        "fano" => &[
            ("C1", true), ("C2", true), ("D1", true), ("D2", true),
            ("E1", false), ("E2", false), ("F1", false), ("F2", false),
            ("A1", false), ("A2", false), ("is_lattice", false),
            ("complemented", true), ("involution", true), ("antitone", true),
        ],
        "fig7_ex2" => &[
            ("C1", false), ("C2", false), ("D1", true), ("D2", true),
            ("E1", true), ("E2", true), ("F1", true), ("F2", true),
            ("A1", true), ("A2", true), ("is_lattice", false),
        ],
        "boolean_ring_1" | "boolean_ring_2" | "boolean_ring_3" | "boolean_ring_4" => &[
            ("semiring", true), ("c3", true), ("c4", true), ("c5", true), ("c6", true),
            ("A1", true), ("A2", true),
        ],
        "pseudoring6" => &[("pseudoring", true), ("A1", true), ("A2", true)],
        "mo2" => &[
            ("B1", true), ("B2", true), ("A1", true), ("A2", true),
            ("orthomodular", true), ("modular", true), ("distributive", false),
            ("complemented", true),
        ],
        other => return Err(Error::UnknownFixture(other.to_string())),
    };
    Ok(entries.iter().copied().collect())
}

fn scheme_for(kind: Kind) -> Option<Scheme> {
    match kind {
        Kind::Lattice => Some(Scheme::S1),
        Kind::Lambda => Some(Scheme::S2),
        Kind::Semiring => Some(Scheme::S3),
        Kind::Pseudoring => Some(Scheme::S4),
        Kind::Poset => None,
    }
}

/// Recompute one named condition from scratch.
pub fn computed_value(a: &Algebra, key: &str) -> Result<bool> {
    let scheme = scheme_for(a.kind());
    match key {
        "A1" | "A2" => {
            let scheme = scheme.ok_or(Error::KindMismatch)?;
            let pair = derive_sasaki(a, scheme)?;
            let rep = check_adjointness_on(a, &pair)?;
            Ok(if key == "A1" { rep.a1.holds } else { rep.a2.holds })
        }
        "B1" | "B2" | "C1" | "C2" | "D1" | "D2" | "E1" | "E2" | "F1" | "F2" | "c3" | "c4"
        | "c5" | "c6" => {
            let scheme = scheme.ok_or(Error::KindMismatch)?;
            let battery = condition_battery(a, scheme)?;
            battery
                .get(key)
                .map(|v| v.holds)
                .ok_or_else(|| Error::UnknownConjecture(key.to_string()))
        }
        "modular" | "distributive" | "complemented" | "orthomodular" | "OM" | "weakly_om"
        | "dually_weakly_om" => {
            let flags = lattice_flags(a)?;
            Ok(match key {
                "modular" => flags.modular.holds,
                "distributive" => flags.distributive.holds,
                "complemented" => flags.complemented.holds,
                "orthomodular" => flags.orthomodular(),
                "OM" => flags.om_law.holds,
                "weakly_om" => flags.weakly_orthomodular.holds,
                _ => flags.dually_weakly_orthomodular.holds,
            })
        }
        "involution" | "antitone" => {
            let order = a.order().ok_or(Error::MissingOrder)?;
            let props = order.unary_properties(a.negation()?);
            Ok(if key == "involution" { props.is_involution() } else { props.is_antitone() })
        }
        "is_lattice" => Ok(is_lattice_lambda(a)?.0),
        "semiring" => Ok(crate::algebra::check_semiring(a)?.holds),
        "pseudoring" => Ok(crate::algebra::check_pseudoring(a)?.holds),
        other => Err(Error::UnknownConjecture(other.to_string())),
    }
}

/// Recompute every stored expectation; returns the mismatching keys (empty
/// means the registry entry is self-consistent).
pub fn verify_fixture(id: &str) -> Result<Vec<String>> {
    let a = fixture(id)?;
    let mut bad = Vec::new();
    for (key, want) in expected(id)? {
        if computed_value(&a, key)? != want {
            bad.push(key.to_string());
        }
    }
    Ok(bad)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{check_lambda_axioms, oml_to_pseudoring};
    use crate::terms::Connective;

    #[test]
    fn unknown_fixture_rejected() {
        assert!(matches!(fixture("nope"), Err(Error::UnknownFixture(_))));
        assert!(matches!(expected("nope"), Err(Error::UnknownFixture(_))));
    }

    #[test]
    fn lambda_fixtures_satisfy_axioms_and_own_order() {
        for id in ["fig3", "fig5_ex1", "fano", "fig7_ex2"] {
            let a = fixture(id).unwrap();
            let lsup = a.binary_op("lsup").unwrap();
            let linf = a.binary_op("linf").unwrap();
            let v = check_lambda_axioms(&a.elements().to_vec(), lsup, linf).unwrap();
            assert!(v.holds, "{id} fails lambda axioms");
            let induced = crate::algebra::induced_order(&a).unwrap();
            assert_eq!(&induced, a.order().unwrap(), "{id} induced order mismatch");
        }
    }

    #[test]
    fn fig1_complement_of_a_is_h_like() {
        let f = fixture("fig1").unwrap();
        let neg = f.negation().unwrap();
        assert_eq!(f.name(neg.apply(f.index("a").unwrap())), "h");
        // (c v a') ^ a = a
        let join = f.resolve_binary(Connective::Join).unwrap();
        let meet = f.resolve_binary(Connective::Meet).unwrap();
        let (a, c) = (f.index("a").unwrap(), f.index("c").unwrap());
        assert_eq!(meet.apply(join.apply(c, neg.apply(a)), a), a);
    }

    #[test]
    fn mo2_translates_to_pseudoring6() {
        let mo2 = fixture("mo2").unwrap();
        let pr = oml_to_pseudoring(&mo2).unwrap();
        let pr6 = fixture("pseudoring6").unwrap();
        assert_eq!(pr.binary_op("plus"), pr6.binary_op("plus"));
        assert_eq!(pr.binary_op("times"), pr6.binary_op("times"));
        assert_eq!(pr.order(), pr6.order());
    }

    #[test]
    fn fig4_has_eighteen_incomparable_pairs() {
        let p = fig4_poset();
        let n = p.len();
        let count = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .filter(|&(a, b)| !p.le(a, b) && !p.le(b, a))
            .count();
        assert_eq!(count, 18);
    }

    #[test]
    fn all_fixtures_self_validate() {
        for id in FIXTURE_IDS {
            let bad = verify_fixture(id).unwrap();
            assert!(bad.is_empty(), "{id}: stale expectations for {bad:?}");
        }
    }
}
