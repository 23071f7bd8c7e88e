//! Derived operation pairs ⊙ / → per the four schemes, adjointness checks,
//! residual reconstruction, and the per-kind condition batteries.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{Algebra, Kind};
use crate::error::{Error, Result};
use crate::laws::law;
use crate::poset::FinitePoset;
use crate::tables::BinaryTable;
use crate::terms::{check_law, Connective, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    S1,
    S2,
    S3,
    S4,
}

impl Scheme {
    pub fn parse(s: &str) -> Result<Scheme> {
        match s {
            "S1" | "s1" => Ok(Scheme::S1),
            "S2" | "s2" => Ok(Scheme::S2),
            "S3" | "s3" => Ok(Scheme::S3),
            "S4" | "s4" => Ok(Scheme::S4),
            other => Err(Error::ValidationError {
                axiom: "scheme".into(),
                witness: other.to_string(),
            }),
        }
    }

    /// The algebra kind this scheme's polynomials are written in.
    pub fn kind(self) -> Kind {
        match self {
            Scheme::S1 => Kind::Lattice,
            Scheme::S2 => Kind::Lambda,
            Scheme::S3 => Kind::Semiring,
            Scheme::S4 => Kind::Pseudoring,
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Scheme::S1 => "S1",
            Scheme::S2 => "S2",
            Scheme::S3 => "S3",
            Scheme::S4 => "S4",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SasakiPair {
    pub scheme: Scheme,
    pub odot: BinaryTable,
    pub imp: BinaryTable,
}

/// Evaluate the scheme's two defining polynomials cell by cell.
pub fn derive_sasaki(a: &Algebra, scheme: Scheme) -> Result<SasakiPair> {
    if a.kind() != scheme.kind() {
        return Err(Error::SchemeKindMismatch {
            scheme: scheme.to_string(),
            kind: a.kind().to_string(),
        });
    }
    let n = a.len();
    let (odot, imp) = match scheme {
        Scheme::S1 | Scheme::S2 => {
            let join = a.resolve_binary(Connective::Join)?;
            let meet = a.resolve_binary(Connective::Meet)?;
            let neg = a.negation()?;
            (
                // (x v y') ^ y
                BinaryTable::from_fn(n, |x, y| meet.apply(join.apply(x, neg.apply(y)), y)),
                // x' v (x ^ y)
                BinaryTable::from_fn(n, |x, y| join.apply(neg.apply(x), meet.apply(x, y))),
            )
        }
        Scheme::S3 => {
            let plus = a.resolve_binary(Connective::Plus)?;
            let times = a.resolve_binary(Connective::Times)?;
            let neg = a.negation()?;
            (
                // (x + y') y
                BinaryTable::from_fn(n, |x, y| times.apply(plus.apply(x, neg.apply(y)), y)),
                // x' + x y
                BinaryTable::from_fn(n, |x, y| plus.apply(neg.apply(x), times.apply(x, y))),
            )
        }
        Scheme::S4 => {
            let plus = a.resolve_binary(Connective::Plus)?;
            let times = a.resolve_binary(Connective::Times)?;
            let one = a.constant_one()?;
            (
                // (1 + (1 + x) y) y
                BinaryTable::from_fn(n, |x, y| {
                    times.apply(plus.apply(one, times.apply(plus.apply(one, x), y)), y)
                }),
                // 1 + x (1 + x y)
                BinaryTable::from_fn(n, |x, y| {
                    plus.apply(one, times.apply(x, plus.apply(one, times.apply(x, y))))
                }),
            )
        }
    };
    Ok(SasakiPair { scheme, odot, imp })
}

/// A throwaway algebra carrying only the pair and the order, so the term
/// engine can run quasi-identities over `o`, `->`, and `<=`.
pub fn pair_algebra(order: &FinitePoset, odot: &BinaryTable, imp: &BinaryTable) -> Algebra {
    let mut binary = BTreeMap::new();
    binary.insert("odot".to_string(), odot.clone());
    binary.insert("imp".to_string(), imp.clone());
    Algebra::from_parts(
        Kind::Poset,
        order.elements().to_vec(),
        Some(order.clone()),
        BTreeMap::new(),
        binary,
        BTreeMap::new(),
    )
}

#[derive(Debug, Clone)]
pub struct AdjointnessReport {
    pub a1: Verdict,
    pub a2: Verdict,
}

impl AdjointnessReport {
    pub fn adjoint(&self) -> bool {
        self.a1.holds && self.a2.holds
    }
}

pub fn check_adjointness(
    order: &FinitePoset,
    odot: &BinaryTable,
    imp: &BinaryTable,
) -> Result<AdjointnessReport> {
    let probe = pair_algebra(order, odot, imp);
    Ok(AdjointnessReport {
        a1: check_law(&probe, law("A1"))?,
        a2: check_law(&probe, law("A2"))?,
    })
}

pub fn check_adjointness_on(a: &Algebra, pair: &SasakiPair) -> Result<AdjointnessReport> {
    let order = a.order().ok_or(Error::MissingOrder)?;
    check_adjointness(order, &pair.odot, &pair.imp)
}

/// Residual reconstruction result: either a full table or the first cell
/// (row-major) where the required extremum does not exist.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ResidualOutcome {
    Table(BinaryTable),
    /// No extremum at this cell; for the imp direction the cell is (y, z),
    /// for the odot direction it is (x, y).
    Failure { row: usize, col: usize },
}

impl ResidualOutcome {
    pub fn table(&self) -> Option<&BinaryTable> {
        match self {
            ResidualOutcome::Table(t) => Some(t),
            ResidualOutcome::Failure { .. } => None,
        }
    }
}

/// imp(y, z) := the greatest x with odot(x, y) <= z, when one exists at
/// every cell.
pub fn residual_imp_from_odot(order: &FinitePoset, odot: &BinaryTable) -> ResidualOutcome {
    let n = order.len();
    let mut cells = Vec::with_capacity(n * n);
    for y in 0..n {
        for z in 0..n {
            let candidates: Vec<usize> =
                (0..n).filter(|&x| order.le(odot.apply(x, y), z)).collect();
            let greatest = candidates
                .iter()
                .copied()
                .find(|&g| candidates.iter().all(|&x| order.le(x, g)));
            match greatest {
                Some(g) => cells.push(g),
                None => return ResidualOutcome::Failure { row: y, col: z },
            }
        }
    }
    ResidualOutcome::Table(BinaryTable::new(n, cells).expect("cells are in range"))
}

/// odot(x, y) := the smallest z with x <= imp(y, z), when one exists at
/// every cell.
pub fn residual_odot_from_imp(order: &FinitePoset, imp: &BinaryTable) -> ResidualOutcome {
    let n = order.len();
    let mut cells = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let candidates: Vec<usize> =
                (0..n).filter(|&z| order.le(x, imp.apply(y, z))).collect();
            let least = candidates
                .iter()
                .copied()
                .find(|&l| candidates.iter().all(|&z| order.le(l, z)));
            match least {
                Some(l) => cells.push(l),
                None => return ResidualOutcome::Failure { row: x, col: y },
            }
        }
    }
    ResidualOutcome::Table(BinaryTable::new(n, cells).expect("cells are in range"))
}

/// Per-scheme side-condition suite. S4 carries none: adjointness of its
/// pair is unconditional.
pub fn condition_battery(a: &Algebra, scheme: Scheme) -> Result<BTreeMap<String, Verdict>> {
    if a.kind() != scheme.kind() {
        return Err(Error::SchemeKindMismatch {
            scheme: scheme.to_string(),
            kind: a.kind().to_string(),
        });
    }
    let mut out = BTreeMap::new();
    match scheme {
        Scheme::S1 => {
            for name in ["B1", "B2"] {
                out.insert(name.to_string(), check_law(a, law(name))?);
            }
        }
        Scheme::S2 => {
            for name in ["C1", "C2", "D1", "D2", "E1", "E2"] {
                out.insert(name.to_string(), check_law(a, law(name))?);
            }
            // F1/F2 mention the derived pair, so extend the signature
            let pair = derive_sasaki(a, scheme)?;
            let probe = a.with_binary("odot", pair.odot).with_binary("imp", pair.imp);
            for name in ["F1", "F2"] {
                out.insert(name.to_string(), check_law(&probe, law(name))?);
            }
        }
        Scheme::S3 => {
            for name in ["c3", "c4", "c5", "c6"] {
                out.insert(name.to_string(), check_law(a, law(name))?);
            }
        }
        Scheme::S4 => {}
    }
    Ok(out)
}

/// The monotonicity consequences of adjointness, reported honestly even on
/// non-adjoint pairs. The `lemma1_*` entries recheck the same statements by
/// a direct pointwise scan, as a cross-check on the term engine.
pub fn adjointness_consequences(
    order: &FinitePoset,
    odot: &BinaryTable,
    imp: &BinaryTable,
) -> Result<BTreeMap<String, Verdict>> {
    let probe = pair_algebra(order, odot, imp);
    let mut out = BTreeMap::new();
    out.insert("odot_monotone_first".to_string(), check_law(&probe, law("odot_mono_first"))?);
    out.insert("imp_monotone_second".to_string(), check_law(&probe, law("imp_mono_second"))?);
    let names = |w: Vec<(&str, usize)>| {
        w.into_iter().map(|(v, e)| (v.to_string(), e)).collect::<Vec<_>>()
    };
    let n = order.len();
    let mut lemma_f = Verdict::passing(0);
    let mut lemma_g = Verdict::passing(0);
    'outer_f: for a in 0..n {
        for b in 0..n {
            if !order.le(a, b) {
                continue;
            }
            for c in 0..n {
                lemma_f.checked_count += 1;
                if !order.le(odot.apply(a, c), odot.apply(b, c)) {
                    lemma_f.holds = false;
                    lemma_f.witness = Some(names(vec![("x", a), ("y", b), ("z", c)]));
                    break 'outer_f;
                }
            }
        }
    }
    'outer_g: for a in 0..n {
        for b in 0..n {
            if !order.le(a, b) {
                continue;
            }
            for c in 0..n {
                lemma_g.checked_count += 1;
                if !order.le(imp.apply(c, a), imp.apply(c, b)) {
                    lemma_g.holds = false;
                    lemma_g.witness = Some(names(vec![("x", a), ("y", b), ("z", c)]));
                    break 'outer_g;
                }
            }
        }
    }
    out.insert("lemma1_f".to_string(), lemma_f);
    out.insert("lemma1_g".to_string(), lemma_g);
    Ok(out)
}

/// Checked implications between computed verdicts: (A1 holds) implies
/// x v x' = 1, and (A2 holds) implies x ^ x' = 0. Failing hypotheses make
/// the implication vacuously true; conclusions are reported via witnesses.
pub fn bounded_necessity(a: &Algebra, pair: &SasakiPair) -> Result<BTreeMap<String, Verdict>> {
    let order = a.order().ok_or(Error::MissingOrder)?;
    if order.bottom().is_none() || order.top().is_none() {
        return Err(Error::UnboundedAlgebra);
    }
    let report = check_adjointness(order, &pair.odot, &pair.imp)?;
    let top = check_law(a, law("comp_top"))?;
    let bottom = check_law(a, law("comp_bottom"))?;
    let implied = |hyp: &Verdict, concl: Verdict| Verdict {
        holds: !hyp.holds || concl.holds,
        witness: if hyp.holds && !concl.holds { concl.witness } else { None },
        checked_count: concl.checked_count,
    };
    let mut out = BTreeMap::new();
    out.insert("top_law".to_string(), implied(&report.a1, top));
    out.insert("bottom_law".to_string(), implied(&report.a2, bottom));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_boolean_lattice, build_mo, lattice_from_poset};
    use crate::tables::UnaryTable;

    fn n5_with(neg: [usize; 5]) -> Algebra {
        let p = FinitePoset::from_covers(
            &["0", "a", "b", "c", "1"],
            &[("0", "a"), ("0", "b"), ("a", "c"), ("b", "1"), ("c", "1")],
        )
        .unwrap();
        let l = lattice_from_poset(&p).unwrap();
        l.with_unary("neg", UnaryTable::new(neg.to_vec()).unwrap())
    }

    #[test]
    fn mo2_s1_pair_is_adjoint_with_projection_tables() {
        let mo2 = build_mo(2).unwrap();
        let pair = derive_sasaki(&mo2, Scheme::S1).unwrap();
        let rep = check_adjointness_on(&mo2, &pair).unwrap();
        assert!(rep.adjoint());
        // x odot 1 = x, x odot 0 = 0
        let top = mo2.len() - 1;
        for x in 0..mo2.len() {
            assert_eq!(pair.odot.apply(x, top), x);
            assert_eq!(pair.odot.apply(x, 0), 0);
        }
    }

    #[test]
    fn n5_bprime_a_fails_a1_at_cb0() {
        // a' = b, b' = a, c' = b
        let l = n5_with([4, 2, 1, 2, 0]);
        let pair = derive_sasaki(&l, Scheme::S1).unwrap();
        let rep = check_adjointness_on(&l, &pair).unwrap();
        assert!(!rep.a1.holds);
        let w = rep.a1.witness_names(l.elements()).unwrap();
        assert_eq!(
            w,
            vec![
                ("x".to_string(), "c".to_string()),
                ("y".to_string(), "b".to_string()),
                ("z".to_string(), "0".to_string())
            ]
        );
        assert!(!rep.a2.holds);
        let w2 = rep.a2.witness_names(l.elements()).unwrap();
        assert_eq!(w2[0].1, "a");
        assert_eq!(w2[1].1, "c");
        assert_eq!(w2[2].1, "a");
    }

    #[test]
    fn n5_bprime_c_satisfies_b1_and_a1_only() {
        // b' = c
        let l = n5_with([4, 2, 3, 2, 0]);
        let battery = condition_battery(&l, Scheme::S1).unwrap();
        assert!(battery["B1"].holds);
        assert!(!battery["B2"].holds);
        let pair = derive_sasaki(&l, Scheme::S1).unwrap();
        let rep = check_adjointness_on(&l, &pair).unwrap();
        assert!(rep.a1.holds);
        assert!(!rep.a2.holds);
    }

    #[test]
    fn boolean_residuals_round_trip() {
        let b8 = build_boolean_lattice(3).unwrap();
        let pair = derive_sasaki(&b8, Scheme::S1).unwrap();
        let order = b8.order().unwrap();
        assert_eq!(residual_imp_from_odot(order, &pair.odot), ResidualOutcome::Table(pair.imp.clone()));
        assert_eq!(residual_odot_from_imp(order, &pair.imp), ResidualOutcome::Table(pair.odot.clone()));
        // Boolean implication is classical: imp(x, y) = x' v y
        let join = b8.resolve_binary(Connective::Join).unwrap();
        let neg = b8.negation().unwrap();
        for x in 0..b8.len() {
            for y in 0..b8.len() {
                assert_eq!(pair.imp.apply(x, y), join.apply(neg.apply(x), y));
            }
        }
    }

    #[test]
    fn scheme_kind_guard() {
        let b4 = build_boolean_lattice(2).unwrap();
        assert!(matches!(
            derive_sasaki(&b4, Scheme::S3),
            Err(Error::SchemeKindMismatch { .. })
        ));
    }

    #[test]
    fn consequences_hold_on_adjoint_pair() {
        let mo2 = build_mo(2).unwrap();
        let pair = derive_sasaki(&mo2, Scheme::S1).unwrap();
        let cons =
            adjointness_consequences(mo2.order().unwrap(), &pair.odot, &pair.imp).unwrap();
        assert!(cons.values().all(|v| v.holds));
    }

    #[test]
    fn necessity_on_constant_top_chain() {
        let p = FinitePoset::from_covers(&["0", "1"], &[("0", "1")]).unwrap();
        let l = lattice_from_poset(&p)
            .unwrap()
            .with_unary("neg", UnaryTable::constant(2, 1));
        let pair = derive_sasaki(&l, Scheme::S1).unwrap();
        let nec = bounded_necessity(&l, &pair).unwrap();
        assert!(nec["top_law"].holds);
        assert!(nec["bottom_law"].holds); // vacuously or directly
    }

    #[test]
    fn boolean_ring_s3_odot_is_times() {
        let r = crate::algebra::build_boolean_ring(2).unwrap();
        let pair = derive_sasaki(&r, Scheme::S3).unwrap();
        assert_eq!(&pair.odot, r.binary_op("times").unwrap());
        let battery = condition_battery(&r, Scheme::S3).unwrap();
        assert!(battery.values().all(|v| v.holds));
        let rep = check_adjointness_on(&r, &pair).unwrap();
        assert!(rep.adjoint());
    }
}
