//! Algebra kinds, axiom suites, and constructions: lattices with a unary
//! operation, lambda-lattices, ordered semirings, orthomodular pseudorings,
//! products, generated subalgebras, and the named builders.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::laws::{self, law};
use crate::poset::{FinitePoset, UnaryProperties};
use crate::tables::{BinaryTable, UnaryTable};
use crate::terms::{check_law_sequential, Connective, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Poset,
    Lattice,
    Lambda,
    Semiring,
    Pseudoring,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Kind::Poset => "poset",
            Kind::Lattice => "lattice",
            Kind::Lambda => "lambda",
            Kind::Semiring => "semiring",
            Kind::Pseudoring => "pseudoring",
        };
        f.write_str(s)
    }
}

impl Kind {
    pub fn parse(s: &str) -> Result<Kind> {
        match s {
            "poset" => Ok(Kind::Poset),
            "lattice" => Ok(Kind::Lattice),
            "lambda" => Ok(Kind::Lambda),
            "semiring" => Ok(Kind::Semiring),
            "pseudoring" => Ok(Kind::Pseudoring),
            other => Err(Error::ValidationError {
                axiom: "kind".into(),
                witness: other.to_string(),
            }),
        }
    }
}

/// A finite algebra: a kind tag, a universe, named operation tables, and an
/// optional attached order. Values are immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Algebra {
    kind: Kind,
    elements: Vec<String>,
    order: Option<FinitePoset>,
    unary: BTreeMap<String, UnaryTable>,
    binary: BTreeMap<String, BinaryTable>,
    constants: BTreeMap<String, usize>,
}

impl Algebra {
    /// Assemble an algebra without validating kind invariants. Used by the
    /// checked constructors and by enumeration, which validates in bulk.
    pub fn from_parts(
        kind: Kind,
        elements: Vec<String>,
        order: Option<FinitePoset>,
        unary: BTreeMap<String, UnaryTable>,
        binary: BTreeMap<String, BinaryTable>,
        constants: BTreeMap<String, usize>,
    ) -> Algebra {
        Algebra { kind, elements, order, unary, binary, constants }
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn name(&self, i: usize) -> &str {
        &self.elements[i]
    }

    pub fn index(&self, name: &str) -> Result<usize> {
        self.elements
            .iter()
            .position(|e| e == name)
            .ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    pub fn order(&self) -> Option<&FinitePoset> {
        self.order.as_ref()
    }

    pub fn unary_ops(&self) -> &BTreeMap<String, UnaryTable> {
        &self.unary
    }

    pub fn binary_ops(&self) -> &BTreeMap<String, BinaryTable> {
        &self.binary
    }

    pub fn constants(&self) -> &BTreeMap<String, usize> {
        &self.constants
    }

    pub fn unary_op(&self, name: &str) -> Option<&UnaryTable> {
        self.unary.get(name)
    }

    pub fn binary_op(&self, name: &str) -> Option<&BinaryTable> {
        self.binary.get(name)
    }

    pub fn negation(&self) -> Result<&UnaryTable> {
        self.unary.get("neg").ok_or_else(|| Error::MissingOperation("neg".into()))
    }

    pub fn resolve_binary(&self, conn: Connective) -> Result<&BinaryTable> {
        let names: &[&str] = match conn {
            Connective::Join => &["join", "lsup"],
            Connective::Meet => &["meet", "linf"],
            Connective::Plus => &["plus"],
            Connective::Times => &["times"],
            Connective::Odot => &["odot"],
            Connective::Imp => &["imp"],
        };
        names
            .iter()
            .find_map(|n| self.binary.get(*n))
            .ok_or_else(|| Error::MissingOperation(names[0].to_string()))
    }

    pub fn constant_zero(&self) -> Result<usize> {
        self.constants
            .get("zero")
            .copied()
            .or_else(|| self.order.as_ref().and_then(|p| p.bottom()))
            .ok_or_else(|| Error::MissingOperation("0".into()))
    }

    pub fn constant_one(&self) -> Result<usize> {
        self.constants
            .get("one")
            .copied()
            .or_else(|| self.order.as_ref().and_then(|p| p.top()))
            .ok_or_else(|| Error::MissingOperation("1".into()))
    }

    /// A copy with one more (or replaced) unary table.
    pub fn with_unary(&self, name: &str, table: UnaryTable) -> Algebra {
        let mut out = self.clone();
        out.unary.insert(name.to_string(), table);
        out
    }

    pub fn with_binary(&self, name: &str, table: BinaryTable) -> Algebra {
        let mut out = self.clone();
        out.binary.insert(name.to_string(), table);
        out
    }

    pub fn set_unary(&mut self, name: &str, table: UnaryTable) {
        self.unary.insert(name.to_string(), table);
    }
}

// ---------------------------------------------------------------------------
// Lattices
// ---------------------------------------------------------------------------

/// Read a lattice off a poset: succeeds iff every pair has a unique least
/// upper and greatest lower bound.
pub fn lattice_from_poset(p: &FinitePoset) -> Result<Algebra> {
    let n = p.len();
    let mut join = Vec::with_capacity(n * n);
    let mut meet = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let j = p
                .lub(a, b)
                .ok_or_else(|| Error::NotALattice(p.name(a).into(), p.name(b).into()))?;
            let m = p
                .glb(a, b)
                .ok_or_else(|| Error::NotALattice(p.name(a).into(), p.name(b).into()))?;
            join.push(j);
            meet.push(m);
        }
    }
    let mut binary = BTreeMap::new();
    binary.insert("join".to_string(), BinaryTable::new(n, join)?);
    binary.insert("meet".to_string(), BinaryTable::new(n, meet)?);
    Ok(Algebra {
        kind: Kind::Lattice,
        elements: p.elements().to_vec(),
        order: Some(p.clone()),
        unary: BTreeMap::new(),
        binary,
        constants: BTreeMap::new(),
    })
}

/// Coarse classification flags of a lattice with unary operation.
#[derive(Debug, Clone)]
pub struct LatticeFlags {
    pub modular: Verdict,
    pub distributive: Verdict,
    pub complemented: Verdict,
    pub om_law: Verdict,
    pub weakly_orthomodular: Verdict,
    pub dually_weakly_orthomodular: Verdict,
    pub unary: UnaryProperties,
    /// Least element with no pseudocomplement, when one exists.
    pub pseudocomplemented: Option<usize>,
    pub dually_pseudocomplemented: Option<usize>,
    pub bounded: bool,
}

impl LatticeFlags {
    pub fn orthomodular(&self) -> bool {
        self.complemented.holds
            && self.unary.is_antitone()
            && self.unary.is_involution()
            && self.om_law.holds
    }

    pub fn as_map(&self) -> BTreeMap<String, bool> {
        let mut m = BTreeMap::new();
        m.insert("modular".into(), self.modular.holds);
        m.insert("distributive".into(), self.distributive.holds);
        m.insert("complemented".into(), self.complemented.holds);
        m.insert("orthomodular".into(), self.orthomodular());
        m.insert("weakly_orthomodular".into(), self.weakly_orthomodular.holds);
        m.insert("dually_weakly_orthomodular".into(), self.dually_weakly_orthomodular.holds);
        m.insert("pseudocomplemented".into(), self.pseudocomplemented.is_none());
        m.insert("dually_pseudocomplemented".into(), self.dually_pseudocomplemented.is_none());
        m
    }
}

/// Flags of a lattice-with-neg algebra. Complementation here is the
/// identity pair x v x' = 1, x ^ x' = 0; orthomodularity additionally asks
/// for an antitone involution and the orthomodular law.
pub fn lattice_flags(a: &Algebra) -> Result<LatticeFlags> {
    let neg = a.negation()?;
    let order = a.order().ok_or(Error::MissingOrder)?;
    let bounded = order.bottom().is_some() && order.top().is_some();
    let chk = |name: &str| check_law_sequential(a, law(name));
    let falsified = Verdict { holds: false, witness: Some(Vec::new()), checked_count: 0 };
    let complemented = if bounded { chk("comp_top").and_then(|v1| {
        if !v1.holds {
            Ok(v1)
        } else {
            chk("comp_bottom")
        }
    })? } else { falsified };
    Ok(LatticeFlags {
        modular: chk("modular")?,
        distributive: chk("distributive")?,
        complemented,
        om_law: chk("OM")?,
        weakly_orthomodular: chk("weakly_om")?,
        dually_weakly_orthomodular: chk("dually_weakly_om")?,
        unary: order.unary_properties(neg),
        pseudocomplemented: pseudocomplement_gap(a, false)?,
        dually_pseudocomplemented: pseudocomplement_gap(a, true)?,
        bounded,
    })
}

/// For each x, scan all y with x ^ y = bottom (dually x v y = top) and test
/// for a greatest (smallest) one; returns the least x where none exists.
fn pseudocomplement_gap(a: &Algebra, dual: bool) -> Result<Option<usize>> {
    let order = a.order().ok_or(Error::MissingOrder)?;
    let n = a.len();
    let extreme = if dual { order.top() } else { order.bottom() };
    let Some(extreme) = extreme else { return Ok(Some(0)) };
    let table = a.resolve_binary(if dual { Connective::Join } else { Connective::Meet })?;
    for x in 0..n {
        let candidates: Vec<usize> = (0..n).filter(|&y| table.apply(x, y) == extreme).collect();
        let best = candidates.iter().copied().find(|&y| {
            candidates
                .iter()
                .all(|&z| if dual { order.le(y, z) } else { order.le(z, y) })
        });
        if best.is_none() {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

/// Constant unary table x' = c, by name.
pub fn make_constant_unary(a: &Algebra, c: &str) -> Result<UnaryTable> {
    Ok(UnaryTable::constant(a.len(), a.index(c)?))
}

// ---------------------------------------------------------------------------
// Lambda-lattices
// ---------------------------------------------------------------------------

/// Assemble a lambda-kind algebra from raw tables without axiom validation.
pub fn lambda_unchecked(elements: Vec<String>, lsup: BinaryTable, linf: BinaryTable) -> Algebra {
    let mut binary = BTreeMap::new();
    binary.insert("lsup".to_string(), lsup);
    binary.insert("linf".to_string(), linf);
    Algebra {
        kind: Kind::Lambda,
        elements,
        order: None,
        unary: BTreeMap::new(),
        binary,
        constants: BTreeMap::new(),
    }
}

/// Check the six lambda-lattice identities; on success also the derived
/// idempotent laws. The verdict of the first failing identity (if any) is
/// returned together with its name.
pub fn check_lambda_axioms_named(
    elements: &[String],
    lsup: &BinaryTable,
    linf: &BinaryTable,
) -> Result<Option<(&'static str, Verdict)>> {
    let probe = lambda_unchecked(elements.to_vec(), lsup.clone(), linf.clone());
    for name in laws::LAMBDA_AXIOMS {
        let v = check_law_sequential(&probe, law(name))?;
        if !v.holds {
            return Ok(Some((name, v)));
        }
    }
    for name in laws::LAMBDA_DERIVED_IDEMPOTENT {
        let v = check_law_sequential(&probe, law(name))?;
        if !v.holds {
            return Ok(Some((name, v)));
        }
    }
    Ok(None)
}

pub fn check_lambda_axioms(
    elements: &[String],
    lsup: &BinaryTable,
    linf: &BinaryTable,
) -> Result<Verdict> {
    let n = elements.len() as u64;
    match check_lambda_axioms_named(elements, lsup, linf)? {
        None => Ok(Verdict::passing(n * n * n)),
        Some((_, v)) => Ok(v),
    }
}

/// The induced order x <= y iff x lsup y = y; the linf route must agree.
pub fn induced_order(a: &Algebra) -> Result<FinitePoset> {
    let lsup = a
        .binary_op("lsup")
        .ok_or_else(|| Error::MissingOperation("lsup".into()))?;
    let linf = a
        .binary_op("linf")
        .ok_or_else(|| Error::MissingOperation("linf".into()))?;
    let n = a.len();
    let mut leq = vec![false; n * n];
    for x in 0..n {
        for y in 0..n {
            let by_sup = lsup.apply(x, y) == y;
            let by_inf = linf.apply(x, y) == x;
            if by_sup != by_inf {
                return Err(Error::InducedOrderMismatch(a.name(x).into(), a.name(y).into()));
            }
            leq[x * n + y] = by_sup;
        }
    }
    FinitePoset::from_leq(a.elements().to_vec(), leq)
}

/// Validated lambda-lattice constructor: checks the axioms and attaches the
/// induced order (the order is always derived, never input).
pub fn lambda_from_tables(
    elements: Vec<String>,
    lsup: BinaryTable,
    linf: BinaryTable,
) -> Result<Algebra> {
    if let Some((name, v)) = check_lambda_axioms_named(&elements, &lsup, &linf)? {
        let witness = v
            .witness
            .as_ref()
            .map(|w| {
                w.iter()
                    .map(|(var, e)| format!("{var}={}", elements[*e]))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .unwrap_or_default();
        return Err(Error::NotALambdaLattice(format!("{name} fails at {witness}")));
    }
    let mut alg = lambda_unchecked(elements, lsup, linf);
    alg.order = Some(induced_order(&alg)?);
    Ok(alg)
}

/// Witness that a lambda operation is not monotone in its first argument:
/// a <= b but op(a, c) is not <= op(b, c).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotonicityWitness {
    pub op: &'static str,
    pub low: usize,
    pub high: usize,
    pub other: usize,
}

/// A lambda-lattice is a lattice iff both operations are compatible with
/// the induced order.
pub fn is_lattice_lambda(a: &Algebra) -> Result<(bool, Option<MonotonicityWitness>)> {
    let order = match a.order() {
        Some(o) => o.clone(),
        None => induced_order(a)?,
    };
    let lsup = a.resolve_binary(Connective::Join)?;
    let linf = a.resolve_binary(Connective::Meet)?;
    let n = a.len();
    for low in 0..n {
        for high in 0..n {
            if !order.le(low, high) {
                continue;
            }
            for other in 0..n {
                if !order.le(lsup.apply(low, other), lsup.apply(high, other)) {
                    return Ok((false, Some(MonotonicityWitness { op: "lsup", low, high, other })));
                }
                if !order.le(linf.apply(low, other), linf.apply(high, other)) {
                    return Ok((false, Some(MonotonicityWitness { op: "linf", low, high, other })));
                }
            }
        }
    }
    Ok((true, None))
}

// ---------------------------------------------------------------------------
// Semirings and pseudorings
// ---------------------------------------------------------------------------

/// Assemble a semiring-kind algebra (plus, times, neg, zero constant, order)
/// without validation.
pub fn semiring_unchecked(
    elements: Vec<String>,
    plus: BinaryTable,
    times: BinaryTable,
    neg: UnaryTable,
    zero: usize,
    order: FinitePoset,
) -> Algebra {
    let mut binary = BTreeMap::new();
    binary.insert("plus".to_string(), plus);
    binary.insert("times".to_string(), times);
    let mut unary = BTreeMap::new();
    unary.insert("neg".to_string(), neg);
    let mut constants = BTreeMap::new();
    constants.insert("zero".to_string(), zero);
    Algebra { kind: Kind::Semiring, elements, order: Some(order), unary, binary, constants }
}

/// All commutative-semiring axioms plus x x' = 0. The order was validated
/// as a partial order at poset construction.
pub fn check_semiring(a: &Algebra) -> Result<Verdict> {
    let zero = a.constant_zero()?;
    let plus = a.resolve_binary(Connective::Plus)?;
    for x in 0..a.len() {
        if plus.apply(x, zero) != x {
            return Ok(Verdict {
                holds: false,
                witness: Some(vec![("x".into(), x)]),
                checked_count: 0,
            });
        }
    }
    let mut checked = 0;
    for name in laws::SEMIRING_AXIOMS {
        let v = check_law_sequential(a, law(name))?;
        if !v.holds {
            return Ok(v);
        }
        checked += v.checked_count;
    }
    Ok(Verdict::passing(checked))
}

pub fn pseudoring_unchecked(
    elements: Vec<String>,
    plus: BinaryTable,
    times: BinaryTable,
    zero: usize,
    one: usize,
) -> Result<Algebra> {
    let n = elements.len();
    // multiplicative semilattice order x <= y iff xy = x
    let mut leq = vec![false; n * n];
    for x in 0..n {
        for y in 0..n {
            leq[x * n + y] = times.apply(x, y) == x;
        }
    }
    let order = FinitePoset::from_leq(elements.clone(), leq)?;
    let mut binary = BTreeMap::new();
    binary.insert("plus".to_string(), plus);
    binary.insert("times".to_string(), times);
    let mut constants = BTreeMap::new();
    constants.insert("zero".to_string(), zero);
    constants.insert("one".to_string(), one);
    Ok(Algebra {
        kind: Kind::Pseudoring,
        elements,
        order: Some(order),
        unary: BTreeMap::new(),
        binary,
        constants,
    })
}

/// The seven pseudoring identities plus the structural laws (commutative
/// groupoid with neutral 0, multiplicative semilattice with neutral 1).
pub fn check_pseudoring(a: &Algebra) -> Result<Verdict> {
    let zero = a.constant_zero()?;
    let one = a.constant_one()?;
    let plus = a.resolve_binary(Connective::Plus)?;
    let times = a.resolve_binary(Connective::Times)?;
    for x in 0..a.len() {
        if plus.apply(x, zero) != x || times.apply(x, one) != x {
            return Ok(Verdict {
                holds: false,
                witness: Some(vec![("x".into(), x)]),
                checked_count: 0,
            });
        }
    }
    let mut checked = 0;
    for name in laws::PSEUDORING_AXIOMS {
        let v = check_law_sequential(a, law(name))?;
        if !v.holds {
            return Ok(v);
        }
        checked += v.checked_count;
    }
    Ok(Verdict::passing(checked))
}

/// x + y := (x ^ y') v (x' ^ y), xy := x ^ y on an orthomodular lattice.
pub fn oml_to_pseudoring(l: &Algebra) -> Result<Algebra> {
    let flags = lattice_flags(l)?;
    if !flags.orthomodular() {
        let reason = if !flags.complemented.holds {
            "complementation fails"
        } else if !flags.unary.is_involution() {
            "neg is not an involution"
        } else if !flags.unary.is_antitone() {
            "neg is not antitone"
        } else {
            "orthomodular law fails"
        };
        return Err(Error::NotOrthomodular(reason.into()));
    }
    let join = l.resolve_binary(Connective::Join)?;
    let meet = l.resolve_binary(Connective::Meet)?;
    let neg = l.negation()?;
    let n = l.len();
    let plus = BinaryTable::from_fn(n, |x, y| {
        join.apply(meet.apply(x, neg.apply(y)), meet.apply(neg.apply(x), y))
    });
    let times = meet.clone();
    let order = l.order().ok_or(Error::MissingOrder)?;
    let zero = order.bottom().ok_or(Error::UnboundedAlgebra)?;
    let one = order.top().ok_or(Error::UnboundedAlgebra)?;
    pseudoring_unchecked(l.elements().to_vec(), plus, times, zero, one)
}

/// x v y := 1 + (1+x)(1+y), x ^ y := xy, x' := 1 + x on a pseudoring.
pub fn pseudoring_to_oml(r: &Algebra) -> Result<Algebra> {
    let v = check_pseudoring(r)?;
    if !v.holds {
        let w = v
            .witness_names(r.elements())
            .map(|w| {
                w.iter().map(|(var, e)| format!("{var}={e}")).collect::<Vec<_>>().join(" ")
            })
            .unwrap_or_default();
        return Err(Error::NotAPseudoring(format!("identity fails at {w}")));
    }
    let plus = r.resolve_binary(Connective::Plus)?;
    let times = r.resolve_binary(Connective::Times)?;
    let one = r.constant_one()?;
    let n = r.len();
    let join = BinaryTable::from_fn(n, |x, y| {
        plus.apply(one, times.apply(plus.apply(one, x), plus.apply(one, y)))
    });
    let meet = times.clone();
    let neg = UnaryTable::new((0..n).map(|x| plus.apply(one, x)).collect())?;
    // lattice order x <= y iff x ^ y = x
    let mut leq = vec![false; n * n];
    for x in 0..n {
        for y in 0..n {
            leq[x * n + y] = meet.apply(x, y) == x;
        }
    }
    let order = FinitePoset::from_leq(r.elements().to_vec(), leq)?;
    let mut binary = BTreeMap::new();
    binary.insert("join".to_string(), join);
    binary.insert("meet".to_string(), meet);
    let mut unary = BTreeMap::new();
    unary.insert("neg".to_string(), neg);
    Ok(Algebra {
        kind: Kind::Lattice,
        elements: r.elements().to_vec(),
        order: Some(order),
        unary,
        binary,
        constants: BTreeMap::new(),
    })
}

// ---------------------------------------------------------------------------
// Products and subalgebras
// ---------------------------------------------------------------------------

/// Componentwise direct product of same-kind, same-signature algebras.
/// Universe elements are named "x.y".
pub fn direct_product(a: &Algebra, b: &Algebra) -> Result<Algebra> {
    if a.kind != b.kind {
        return Err(Error::KindMismatch);
    }
    let same = |x: &BTreeMap<String, UnaryTable>, y: &BTreeMap<String, UnaryTable>| {
        x.keys().eq(y.keys())
    };
    if !same(&a.unary, &b.unary)
        || !a.binary.keys().eq(b.binary.keys())
        || !a.constants.keys().eq(b.constants.keys())
    {
        return Err(Error::KindMismatch);
    }
    let (na, nb) = (a.len(), b.len());
    let n = na * nb;
    let pack = |x: usize, y: usize| x * nb + y;
    let elements: Vec<String> = (0..na)
        .flat_map(|x| (0..nb).map(move |y| (x, y)))
        .map(|(x, y)| format!("{}.{}", a.name(x), b.name(y)))
        .collect();
    let mut unary = BTreeMap::new();
    for (name, ta) in &a.unary {
        let tb = &b.unary[name];
        let map = (0..n)
            .map(|i| pack(ta.apply(i / nb), tb.apply(i % nb)))
            .collect();
        unary.insert(name.clone(), UnaryTable::new(map)?);
    }
    let mut binary = BTreeMap::new();
    for (name, ta) in &a.binary {
        let tb = &b.binary[name];
        let table = BinaryTable::from_fn(n, |i, j| {
            pack(ta.apply(i / nb, j / nb), tb.apply(i % nb, j % nb))
        });
        binary.insert(name.clone(), table);
    }
    let mut constants = BTreeMap::new();
    for (name, &ca) in &a.constants {
        constants.insert(name.clone(), pack(ca, b.constants[name]));
    }
    let order = match (a.order(), b.order()) {
        (Some(pa), Some(pb)) => {
            let mut leq = vec![false; n * n];
            for i in 0..n {
                for j in 0..n {
                    leq[i * n + j] = pa.le(i / nb, j / nb) && pb.le(i % nb, j % nb);
                }
            }
            Some(FinitePoset::from_leq(elements.clone(), leq)?)
        }
        _ => None,
    };
    Ok(Algebra { kind: a.kind, elements, order, unary, binary, constants })
}

/// Closure of a seed set under all tables (including constants), with
/// tables restricted to the closure.
pub fn subalgebra_generated(a: &Algebra, seed: &[usize]) -> Result<Algebra> {
    let n = a.len();
    let mut inside = vec![false; n];
    for &s in seed {
        if s >= n {
            return Err(Error::UnknownName(format!("position {s}")));
        }
        inside[s] = true;
    }
    for &c in a.constants.values() {
        inside[c] = true;
    }
    loop {
        let mut grew = false;
        let current: Vec<usize> = (0..n).filter(|&i| inside[i]).collect();
        for &x in &current {
            for t in a.unary.values() {
                let v = t.apply(x);
                if !inside[v] {
                    inside[v] = true;
                    grew = true;
                }
            }
            for &y in &current {
                for t in a.binary.values() {
                    let v = t.apply(x, y);
                    if !inside[v] {
                        inside[v] = true;
                        grew = true;
                    }
                }
            }
        }
        if !grew {
            break;
        }
    }
    let keep: Vec<usize> = (0..n).filter(|&i| inside[i]).collect();
    let reindex: BTreeMap<usize, usize> =
        keep.iter().enumerate().map(|(new, &old)| (old, new)).collect();
    let m = keep.len();
    let elements: Vec<String> = keep.iter().map(|&i| a.elements[i].clone()).collect();
    let mut unary = BTreeMap::new();
    for (name, t) in &a.unary {
        unary.insert(
            name.clone(),
            UnaryTable::new(keep.iter().map(|&i| reindex[&t.apply(i)]).collect())?,
        );
    }
    let mut binary = BTreeMap::new();
    for (name, t) in &a.binary {
        binary.insert(
            name.clone(),
            BinaryTable::from_fn(m, |x, y| reindex[&t.apply(keep[x], keep[y])]),
        );
    }
    let constants = a.constants.iter().map(|(k, v)| (k.clone(), reindex[v])).collect();
    let order = match a.order() {
        Some(p) => {
            let mut leq = vec![false; m * m];
            for x in 0..m {
                for y in 0..m {
                    leq[x * m + y] = p.le(keep[x], keep[y]);
                }
            }
            Some(FinitePoset::from_leq(elements.clone(), leq)?)
        }
        None => None,
    };
    Ok(Algebra { kind: a.kind, elements, order, unary, binary, constants })
}

pub fn subalgebra_generated_by_names(a: &Algebra, names: &[&str]) -> Result<Algebra> {
    let seed: Vec<usize> = names.iter().map(|n| a.index(n)).collect::<Result<_>>()?;
    subalgebra_generated(a, &seed)
}

// ---------------------------------------------------------------------------
// Named builders
// ---------------------------------------------------------------------------

/// The 16-element Fano-plane lambda-lattice: universe {0,1} plus the seven
/// points and their primes; joins of distinct points go through the third
/// point of their common line.
pub fn build_fano_lambda() -> Algebra {
    const POINTS: [&str; 7] = ["a", "b", "c", "d", "e", "f", "g"];
    const LINES: [[usize; 3]; 7] =
        [[0, 1, 2], [0, 3, 5], [0, 4, 6], [1, 3, 6], [1, 4, 5], [2, 3, 4], [2, 5, 6]];
    let mut elements = vec!["0".to_string()];
    elements.extend(POINTS.iter().map(|p| p.to_string()));
    elements.extend(POINTS.iter().map(|p| format!("{p}'")));
    elements.push("1".to_string());
    let n = 16;
    let zero = 0usize;
    let one = 15usize;
    let point = |i: usize| 1 + i; // position of points[i]
    let prime = |i: usize| 8 + i;
    let third = |i: usize, j: usize| -> usize {
        LINES
            .iter()
            .find(|l| l.contains(&i) && l.contains(&j))
            .map(|l| *l.iter().find(|&&k| k != i && k != j).unwrap())
            .unwrap()
    };
    // order: x <= y iff x = 0, y = 1, x = y, or x a point and y a prime of a
    // different point
    let le = |x: usize, y: usize| -> bool {
        x == zero
            || y == one
            || x == y
            || ((1..8).contains(&x) && (8..15).contains(&y) && y != x + 7)
    };
    let lsup = BinaryTable::from_fn(n, |x, y| {
        if le(x, y) {
            y
        } else if le(y, x) {
            x
        } else if (1..8).contains(&x) && (1..8).contains(&y) {
            prime(third(x - 1, y - 1))
        } else {
            one
        }
    });
    let linf = BinaryTable::from_fn(n, |x, y| {
        if le(x, y) {
            x
        } else if le(y, x) {
            y
        } else if (8..15).contains(&x) && (8..15).contains(&y) {
            point(third(x - 8, y - 8))
        } else {
            zero
        }
    });
    let mut alg = lambda_from_tables(elements, lsup, linf)
        .expect("fano construction satisfies the lambda axioms");
    let neg: Vec<usize> = (0..n)
        .map(|x| match x {
            0 => one,
            15 => zero,
            x if x < 8 => x + 7,
            x => x - 7,
        })
        .collect();
    alg.set_unary("neg", UnaryTable::new(neg).unwrap());
    alg
}

fn subset_name(mask: u32) -> String {
    if mask == 0 {
        "e".to_string()
    } else {
        (0..4).filter(|i| mask >> i & 1 == 1).map(|i| (b'1' + i) as char).collect()
    }
}

/// Boolean ring on the subsets of a k-set as an ordered semiring: plus is
/// symmetric difference, times intersection, x' = x + 1, x <= y iff xy = x.
pub fn build_boolean_ring(k: usize) -> Result<Algebra> {
    if !(1..=4).contains(&k) {
        return Err(Error::SizeOutOfRange(k, 1, 4));
    }
    let n = 1usize << k;
    let full = (n - 1) as u32;
    let elements: Vec<String> = (0..n as u32).map(subset_name).collect();
    let plus = BinaryTable::from_fn(n, |x, y| x ^ y);
    let times = BinaryTable::from_fn(n, |x, y| x & y);
    let neg = UnaryTable::new((0..n).map(|x| x ^ full as usize).collect())?;
    let mut leq = vec![false; n * n];
    for x in 0..n {
        for y in 0..n {
            leq[x * n + y] = x & y == x;
        }
    }
    let order = FinitePoset::from_leq(elements.clone(), leq)?;
    let mut alg = semiring_unchecked(elements, plus, times, neg, 0, order);
    alg.constants.insert("one".to_string(), full as usize);
    Ok(alg)
}

/// Boolean lattice 2^k with set-complement negation.
pub fn build_boolean_lattice(k: usize) -> Result<Algebra> {
    if !(1..=4).contains(&k) {
        return Err(Error::SizeOutOfRange(k, 1, 4));
    }
    let n = 1usize << k;
    let full = n - 1;
    let elements: Vec<String> = (0..n as u32).map(subset_name).collect();
    let mut leq = vec![false; n * n];
    for x in 0..n {
        for y in 0..n {
            leq[x * n + y] = x & y == x;
        }
    }
    let order = FinitePoset::from_leq(elements.clone(), leq)?;
    let mut alg = lattice_from_poset(&order)?;
    alg.set_unary("neg", UnaryTable::new((0..n).map(|x| x ^ full).collect())?);
    Ok(alg)
}

/// MO_n: bottom, top, and n complemented atom pairs x_i / y_i.
pub fn build_mo(n_pairs: usize) -> Result<Algebra> {
    let mut elements = vec!["0".to_string()];
    for i in 1..=n_pairs {
        elements.push(format!("x{i}"));
        elements.push(format!("y{i}"));
    }
    elements.push("1".to_string());
    let atoms: Vec<String> = elements[1..elements.len() - 1].to_vec();
    let covers: Vec<(String, String)> = atoms
        .iter()
        .map(|a| ("0".to_string(), a.clone()))
        .chain(atoms.iter().map(|a| (a.clone(), "1".to_string())))
        .collect();
    let p = FinitePoset::from_covers(&elements, &covers)?;
    let mut alg = lattice_from_poset(&p)?;
    let top = alg.len() - 1;
    let neg: Vec<usize> = (0..alg.len())
        .map(|i| {
            if i == 0 {
                top
            } else if i == top {
                0
            } else if i % 2 == 1 {
                i + 1
            } else {
                i - 1
            }
        })
        .collect();
    alg.set_unary("neg", UnaryTable::new(neg)?);
    Ok(alg)
}

/// The benzene ring O6: two 2-chains glued between bounds, with the antitone
/// involution swapping the chains. Complemented but not orthomodular.
pub fn build_o6() -> Algebra {
    let elements = ["0", "a", "b", "b'", "a'", "1"];
    let covers = [("0", "a"), ("a", "b"), ("b", "1"), ("0", "b'"), ("b'", "a'"), ("a'", "1")];
    let p = FinitePoset::from_covers(&elements, &covers).unwrap();
    let mut alg = lattice_from_poset(&p).unwrap();
    let neg = ["1", "a'", "b'", "b", "a", "0"].map(|s| alg.index(s).unwrap());
    alg.set_unary("neg", UnaryTable::new(neg.to_vec()).unwrap());
    alg
}

/// Horizontal sum of two bounded OMLs: identify bottoms and tops, keep the
/// middles side by side.
pub fn horizontal_sum(a: &Algebra, b: &Algebra) -> Result<Algebra> {
    let pa = a.order().ok_or(Error::MissingOrder)?;
    let pb = b.order().ok_or(Error::MissingOrder)?;
    let (a0, a1) = (pa.bottom().ok_or(Error::UnboundedAlgebra)?, pa.top().ok_or(Error::UnboundedAlgebra)?);
    let (b0, b1) = (pb.bottom().ok_or(Error::UnboundedAlgebra)?, pb.top().ok_or(Error::UnboundedAlgebra)?);
    let mut elements = vec!["0".to_string()];
    let mut covers: Vec<(String, String)> = Vec::new();
    let mut mids: Vec<(usize, &Algebra, usize, usize, String)> = Vec::new();
    for (tag, alg, lo, hi) in [("l", a, a0, a1), ("r", b, b0, b1)] {
        for i in 0..alg.len() {
            if i == lo || i == hi {
                continue;
            }
            let name = format!("{tag}.{}", alg.name(i));
            elements.push(name.clone());
            mids.push((i, alg, lo, hi, name));
        }
    }
    elements.push("1".to_string());
    for (i, alg, lo, hi, name) in &mids {
        let p = alg.order().unwrap();
        if p.cover_pairs().iter().any(|&(x, y)| x == *lo && y == *i) {
            covers.push(("0".to_string(), name.clone()));
        }
        if p.cover_pairs().iter().any(|&(x, y)| x == *i && y == *hi) {
            covers.push((name.clone(), "1".to_string()));
        }
        let tag = &name[..1];
        for (j, alg2, lo2, hi2, name2) in &mids {
            if !std::ptr::eq(*alg, *alg2) || &name2[..1] != tag {
                continue;
            }
            let _ = (lo2, hi2);
            if alg.order().unwrap().cover_pairs().contains(&(*i, *j)) {
                covers.push((name.clone(), name2.clone()));
            }
        }
    }
    let p = FinitePoset::from_covers(&elements, &covers)?;
    let mut out = lattice_from_poset(&p)?;
    // negation: inherited per block, bounds swap
    let mut neg = vec![0usize; out.len()];
    let top = out.index("1")?;
    neg[out.index("0")?] = top;
    neg[top] = 0;
    for (i, alg, lo, hi, name) in &mids {
        let src_neg = alg.negation()?;
        let img = src_neg.apply(*i);
        let img_name = if img == *lo {
            "0".to_string()
        } else if img == *hi {
            "1".to_string()
        } else {
            format!("{}.{}", &name[..1], alg.name(img))
        };
        neg[out.index(name)?] = out.index(&img_name)?;
    }
    out.set_unary("neg", UnaryTable::new(neg)?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terms::check_law;

    fn two_chain_lattice() -> Algebra {
        let p = FinitePoset::from_covers(&["0", "1"], &[("0", "1")]).unwrap();
        lattice_from_poset(&p).unwrap()
    }

    #[test]
    fn two_chain_is_boolean() {
        let mut l = two_chain_lattice();
        l.set_unary("neg", UnaryTable::new(vec![1, 0]).unwrap());
        let f = lattice_flags(&l).unwrap();
        assert!(f.orthomodular());
        assert!(f.modular.holds && f.distributive.holds);
    }

    #[test]
    fn n5_is_not_modular() {
        let p = FinitePoset::from_covers(
            &["0", "a", "b", "c", "1"],
            &[("0", "a"), ("0", "b"), ("a", "c"), ("b", "1"), ("c", "1")],
        )
        .unwrap();
        let mut l = lattice_from_poset(&p).unwrap();
        l.set_unary("neg", UnaryTable::new(vec![4, 2, 1, 2, 0]).unwrap());
        let f = lattice_flags(&l).unwrap();
        assert!(!f.modular.holds);
        assert!(f.complemented.holds);
    }

    #[test]
    fn every_lattice_is_a_lambda_lattice() {
        let l = two_chain_lattice();
        let v = check_lambda_axioms(
            &l.elements().to_vec(),
            l.binary_op("join").unwrap(),
            l.binary_op("meet").unwrap(),
        )
        .unwrap();
        assert!(v.holds);
    }

    #[test]
    fn lattice_as_lambda_has_own_order_and_is_lattice() {
        let l = two_chain_lattice();
        let lam = lambda_from_tables(
            l.elements().to_vec(),
            l.binary_op("join").unwrap().clone(),
            l.binary_op("meet").unwrap().clone(),
        )
        .unwrap();
        assert_eq!(lam.order(), l.order());
        assert!(is_lattice_lambda(&lam).unwrap().0);
    }

    #[test]
    fn product_with_singleton_is_isomorphic() {
        let l = two_chain_lattice();
        let p1 = FinitePoset::from_covers(&["u"], &[]).unwrap();
        let one = lattice_from_poset(&p1).unwrap();
        let prod = direct_product(&l, &one).unwrap();
        assert_eq!(prod.len(), 2);
        assert_eq!(prod.elements(), &["0.u", "1.u"]);
        assert!(prod.order().unwrap().le(0, 1));
    }

    #[test]
    fn product_of_chains_is_boolean_square() {
        let l = two_chain_lattice();
        let prod = direct_product(&l, &l).unwrap();
        assert_eq!(prod.len(), 4);
        // 0.1 and 1.0 are incomparable with join 1.1 and meet 0.0
        let p = prod.order().unwrap();
        let (x, y) = (prod.index("0.1").unwrap(), prod.index("1.0").unwrap());
        assert!(!p.le(x, y) && !p.le(y, x));
        assert_eq!(p.lub(x, y), Some(prod.index("1.1").unwrap()));
        assert_eq!(p.glb(x, y), Some(prod.index("0.0").unwrap()));
    }

    #[test]
    fn kind_mismatch_rejected() {
        let l = two_chain_lattice();
        let r = build_boolean_ring(1).unwrap();
        assert!(matches!(direct_product(&l, &r), Err(Error::KindMismatch)));
    }

    #[test]
    fn subalgebra_of_whole_universe_is_identity() {
        let l = two_chain_lattice();
        let s = subalgebra_generated(&l, &[0, 1]).unwrap();
        assert_eq!(s.elements(), l.elements());
        assert_eq!(s.binary_op("join"), l.binary_op("join"));
    }

    #[test]
    fn boolean_ring_k2_symmetric_difference() {
        let r = build_boolean_ring(2).unwrap();
        // {1,2} + {2} = {1}
        let plus = r.binary_op("plus").unwrap();
        let i12 = r.index("12").unwrap();
        let i2 = r.index("2").unwrap();
        let i1 = r.index("1").unwrap();
        assert_eq!(plus.apply(i12, i2), i1);
        assert!(check_semiring(&r).unwrap().holds);
    }

    #[test]
    fn boolean_ring_rejects_bad_size() {
        assert!(matches!(build_boolean_ring(0), Err(Error::SizeOutOfRange(0, 1, 4))));
        assert!(matches!(build_boolean_ring(5), Err(Error::SizeOutOfRange(5, 1, 4))));
    }

    #[test]
    fn one_element_semiring_holds() {
        let p = FinitePoset::from_covers(&["0"], &[]).unwrap();
        let alg = semiring_unchecked(
            vec!["0".into()],
            BinaryTable::from_fn(1, |_, _| 0),
            BinaryTable::from_fn(1, |_, _| 0),
            UnaryTable::identity(1),
            0,
            p,
        );
        assert!(check_semiring(&alg).unwrap().holds);
    }

    #[test]
    fn corrupted_boolean_ring_fails_with_witness() {
        let r = build_boolean_ring(2).unwrap();
        let times = r.binary_op("times").unwrap();
        let n = r.len();
        // flip one cell away from the diagonal-respecting value
        let corrupt = BinaryTable::from_fn(n, |x, y| {
            if (x, y) == (1, 2) {
                3
            } else {
                times.apply(x, y)
            }
        });
        let bad = r.with_binary("times", corrupt);
        let v = check_semiring(&bad).unwrap();
        assert!(!v.holds);
        assert!(v.witness.is_some());
    }

    #[test]
    fn o6_is_complemented_not_orthomodular() {
        let o6 = build_o6();
        let f = lattice_flags(&o6).unwrap();
        assert!(f.complemented.holds);
        assert!(f.unary.is_involution() && f.unary.is_antitone());
        assert!(!f.om_law.holds);
        assert!(!f.orthomodular());
    }

    #[test]
    fn mo2_is_orthomodular() {
        let mo2 = build_mo(2).unwrap();
        assert_eq!(mo2.len(), 6);
        assert!(lattice_flags(&mo2).unwrap().orthomodular());
    }

    #[test]
    fn boolean_lattice_all_flags() {
        let b3 = build_boolean_lattice(3).unwrap();
        let f = lattice_flags(&b3).unwrap();
        assert!(f.orthomodular());
        assert!(f.modular.holds && f.distributive.holds);
        assert!(f.weakly_orthomodular.holds && f.dually_weakly_orthomodular.holds);
        assert!(f.pseudocomplemented.is_none() && f.dually_pseudocomplemented.is_none());
    }

    #[test]
    fn constant_unary_independence() {
        // constant-top: B1 holds, B2 fails; constant-bottom: B2 holds, B1 fails
        let l = two_chain_lattice();
        let top = l.with_unary("neg", make_constant_unary(&l, "1").unwrap());
        assert!(check_law(&top, law("B1")).unwrap().holds);
        assert!(!check_law(&top, law("B2")).unwrap().holds);
        let bot = l.with_unary("neg", make_constant_unary(&l, "0").unwrap());
        assert!(check_law(&bot, law("B2")).unwrap().holds);
        assert!(!check_law(&bot, law("B1")).unwrap().holds);
    }

    #[test]
    fn fano_lambda_axioms_and_de_morgan() {
        let fano = build_fano_lambda();
        assert_eq!(fano.len(), 16);
        // x lsup y join with a, b on a line: a v b = c'
        let lsup = fano.binary_op("lsup").unwrap();
        let a = fano.index("a").unwrap();
        let b = fano.index("b").unwrap();
        let cp = fano.index("c'").unwrap();
        assert_eq!(lsup.apply(a, b), cp);
        // x linf x' = 0 for all x
        let linf = fano.binary_op("linf").unwrap();
        let neg = fano.negation().unwrap();
        let zero = fano.index("0").unwrap();
        for x in 0..fano.len() {
            assert_eq!(linf.apply(x, neg.apply(x)), zero);
        }
        // (x lsup y)' = x' linf y'
        for x in 0..fano.len() {
            for y in 0..fano.len() {
                assert_eq!(neg.apply(lsup.apply(x, y)), linf.apply(neg.apply(x), neg.apply(y)));
            }
        }
    }

    #[test]
    fn horizontal_sum_of_blocks_is_oml() {
        let b8 = build_boolean_lattice(3).unwrap();
        let b4 = build_boolean_lattice(2).unwrap();
        let s = horizontal_sum(&b8, &b4).unwrap();
        assert_eq!(s.len(), 10);
        assert!(lattice_flags(&s).unwrap().orthomodular());
    }
}
