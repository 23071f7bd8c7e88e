//! The line-oriented algebra file format: `algebra NAME`, `kind ...`,
//! `elements ...`, cover lines, table blocks, constants, and optional
//! `expect` lines. `#` starts a comment; tokens are whitespace-separated.

use std::collections::BTreeMap;

use crate::algebra::{
    check_pseudoring, check_semiring, induced_order, lambda_unchecked, lattice_from_poset,
    Algebra, Kind,
};
use crate::error::{Error, Result};
use crate::laws;
use crate::poset::FinitePoset;
use crate::tables::{BinaryTable, UnaryTable};
use crate::terms::check_law_sequential;

#[derive(Debug, Clone)]
pub struct AlgebraFile {
    pub name: String,
    pub algebra: Algebra,
    pub expect: BTreeMap<String, bool>,
}

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::FileSyntaxError { line, msg: msg.into() }
}

struct RawFile {
    name: String,
    kind: Kind,
    elements: Vec<String>,
    covers: Vec<(String, String)>,
    order_covers: Vec<(String, String)>,
    unary: Vec<(String, Vec<(String, String)>)>,
    binops: Vec<(String, Vec<(String, Vec<String>)>)>,
    consts: Vec<(String, String)>,
    complete_from_order: bool,
    choices: Vec<(bool, String, String, String)>, // (is_join, a, b, value)
    expect: BTreeMap<String, bool>,
}

fn parse_cover_tokens(tokens: &[&str], line: usize) -> Result<Vec<(String, String)>> {
    tokens
        .iter()
        .map(|t| {
            t.split_once('<')
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .filter(|(a, b)| !a.is_empty() && !b.is_empty())
                .ok_or_else(|| err(line, format!("expected A<B cover, got `{t}`")))
        })
        .collect()
}

fn parse_raw(text: &str) -> Result<RawFile> {
    let mut name = None;
    let mut kind = None;
    let mut elements: Option<Vec<String>> = None;
    let mut covers = Vec::new();
    let mut order_covers = Vec::new();
    let mut unary: Vec<(String, Vec<(String, String)>)> = Vec::new();
    let mut binops: Vec<(String, Vec<(String, Vec<String>)>)> = Vec::new();
    let mut consts = Vec::new();
    let mut complete_from_order = false;
    let mut choices = Vec::new();
    let mut expect = BTreeMap::new();
    let mut open_binop: Option<usize> = None;

    for (i, raw_line) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw_line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let head = tokens[0];
        if head != "row" {
            open_binop = None;
        }
        match head {
            "algebra" => {
                let [n] = tokens[1..] else {
                    return Err(err(lineno, "expected `algebra NAME`"));
                };
                name = Some(n.to_string());
            }
            "kind" => {
                let [k] = tokens[1..] else {
                    return Err(err(lineno, "expected `kind KIND`"));
                };
                kind = Some(
                    Kind::parse(k).map_err(|_| err(lineno, format!("unknown kind `{k}`")))?,
                );
            }
            "elements" => {
                if tokens.len() < 2 {
                    return Err(err(lineno, "empty elements line"));
                }
                elements = Some(tokens[1..].iter().map(|s| s.to_string()).collect());
            }
            "covers" => covers.extend(parse_cover_tokens(&tokens[1..], lineno)?),
            "order" => {
                if tokens.get(1) != Some(&"covers") {
                    return Err(err(lineno, "expected `order covers A<B ...`"));
                }
                order_covers.extend(parse_cover_tokens(&tokens[2..], lineno)?);
            }
            "unary" => {
                let Some(op) = tokens.get(1).and_then(|t| t.strip_suffix(':')) else {
                    return Err(err(lineno, "expected `unary NAME: A=B ...`"));
                };
                let map = tokens[2..]
                    .iter()
                    .map(|t| {
                        t.split_once('=')
                            .map(|(a, b)| (a.to_string(), b.to_string()))
                            .ok_or_else(|| err(lineno, format!("expected A=B, got `{t}`")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                unary.push((op.to_string(), map));
            }
            "binop" => {
                let Some(op) = tokens.get(1).and_then(|t| t.strip_suffix(':')) else {
                    return Err(err(lineno, "expected `binop NAME:`"));
                };
                if tokens.len() != 2 {
                    return Err(err(lineno, "unexpected tokens after `binop NAME:`"));
                }
                binops.push((op.to_string(), Vec::new()));
                open_binop = Some(binops.len() - 1);
            }
            "row" => {
                let Some(b) = open_binop else {
                    return Err(err(lineno, "`row` outside of a binop block"));
                };
                let Some(elem) = tokens.get(1).and_then(|t| t.strip_suffix(':')) else {
                    return Err(err(lineno, "expected `row E: V1 ... Vn`"));
                };
                let values = tokens[2..].iter().map(|s| s.to_string()).collect();
                binops[b].1.push((elem.to_string(), values));
            }
            "const" => {
                let [which, value] = tokens[1..] else {
                    return Err(err(lineno, "expected `const zero|one E`"));
                };
                if which != "zero" && which != "one" {
                    return Err(err(lineno, format!("unknown constant `{which}`")));
                }
                consts.push((which.to_string(), value.to_string()));
            }
            "complete-from-order" => complete_from_order = true,
            "choice" => {
                let [which, a, b, eq, v] = tokens[1..] else {
                    return Err(err(lineno, "expected `choice join|meet A B = C`"));
                };
                if eq != "=" || (which != "join" && which != "meet") {
                    return Err(err(lineno, "expected `choice join|meet A B = C`"));
                }
                choices.push((which == "join", a.to_string(), b.to_string(), v.to_string()));
            }
            "expect" => {
                for t in &tokens[1..] {
                    let Some((cond, val)) = t.split_once('=') else {
                        return Err(err(lineno, format!("expected COND=true|false, got `{t}`")));
                    };
                    let val = match val {
                        "true" => true,
                        "false" => false,
                        _ => return Err(err(lineno, format!("expected true|false in `{t}`"))),
                    };
                    expect.insert(cond.to_string(), val);
                }
            }
            other => return Err(err(lineno, format!("unknown directive `{other}`"))),
        }
    }

    Ok(RawFile {
        name: name.ok_or_else(|| err(0, "missing `algebra NAME` line"))?,
        kind: kind.ok_or_else(|| err(0, "missing `kind` line"))?,
        elements: elements.ok_or_else(|| err(0, "missing `elements` line"))?,
        covers,
        order_covers,
        unary,
        binops,
        consts,
        complete_from_order,
        choices,
        expect,
    })
}

fn resolve(elements: &[String], name: &str) -> Result<usize> {
    elements
        .iter()
        .position(|e| e == name)
        .ok_or_else(|| Error::UnknownName(name.to_string()))
}

fn build_unary(elements: &[String], map: &[(String, String)]) -> Result<UnaryTable> {
    let mut table = vec![usize::MAX; elements.len()];
    for (from, to) in map {
        table[resolve(elements, from)?] = resolve(elements, to)?;
    }
    if let Some(i) = table.iter().position(|&v| v == usize::MAX) {
        return Err(Error::ValidationError {
            axiom: "total unary map".into(),
            witness: elements[i].clone(),
        });
    }
    UnaryTable::new(table)
}

fn build_binop(elements: &[String], rows: &[(String, Vec<String>)]) -> Result<BinaryTable> {
    let n = elements.len();
    let mut cells = vec![usize::MAX; n * n];
    for (elem, values) in rows {
        let r = resolve(elements, elem)?;
        if values.len() != n {
            return Err(Error::ValidationError {
                axiom: "row length".into(),
                witness: elem.clone(),
            });
        }
        for (c, v) in values.iter().enumerate() {
            cells[r * n + c] = resolve(elements, v)?;
        }
    }
    if let Some(i) = cells.iter().position(|&v| v == usize::MAX) {
        return Err(Error::ValidationError {
            axiom: "total binary table".into(),
            witness: elements[i / n].clone(),
        });
    }
    BinaryTable::new(n, cells)
}

fn validation(axiom: &str, witness: String) -> Error {
    Error::ValidationError { axiom: axiom.to_string(), witness }
}

/// Assemble and kind-validate an algebra from parsed pieces.
fn build_algebra(raw: &RawFile) -> Result<Algebra> {
    let elements = raw.elements.clone();
    let mut unary = BTreeMap::new();
    for (op, map) in &raw.unary {
        unary.insert(op.clone(), build_unary(&elements, map)?);
    }
    let mut binary = BTreeMap::new();
    for (op, rows) in &raw.binops {
        binary.insert(op.clone(), build_binop(&elements, rows)?);
    }
    let mut constants = BTreeMap::new();
    for (which, value) in &raw.consts {
        constants.insert(which.clone(), resolve(&elements, value)?);
    }

    match raw.kind {
        Kind::Poset => {
            let p = FinitePoset::from_covers(&elements, &raw.covers)?;
            Ok(Algebra::from_parts(Kind::Poset, elements, Some(p), unary, binary, constants))
        }
        Kind::Lattice => {
            let p = FinitePoset::from_covers(&elements, &raw.covers)?;
            let lattice = lattice_from_poset(&p).map_err(|e| match e {
                Error::NotALattice(a, b) => validation("NotALattice", format!("({a}, {b})")),
                other => other,
            })?;
            let mut alg = lattice;
            for (op, t) in unary {
                alg.set_unary(&op, t);
            }
            Ok(alg)
        }
        Kind::Lambda => {
            let (lsup, linf) = if raw.complete_from_order {
                let p = FinitePoset::from_covers(&elements, &raw.covers)?;
                lambda_tables_from_file_choices(&p, &raw.choices)?
            } else {
                let lsup = binary
                    .get("lsup")
                    .cloned()
                    .ok_or_else(|| Error::MissingOperation("lsup".into()))?;
                let linf = binary
                    .get("linf")
                    .cloned()
                    .ok_or_else(|| Error::MissingOperation("linf".into()))?;
                (lsup, linf)
            };
            let probe = lambda_unchecked(elements.clone(), lsup.clone(), linf.clone());
            for axiom in laws::LAMBDA_AXIOMS.iter().chain(laws::LAMBDA_DERIVED_IDEMPOTENT) {
                let v = check_law_sequential(&probe, laws::law(axiom))?;
                if !v.holds {
                    let w = v
                        .witness_names(&elements)
                        .map(|w| {
                            w.iter()
                                .map(|(var, e)| format!("{var}={e}"))
                                .collect::<Vec<_>>()
                                .join(" ")
                        })
                        .unwrap_or_default();
                    return Err(validation(axiom, w));
                }
            }
            let order = induced_order(&probe)?;
            let mut bin = BTreeMap::new();
            bin.insert("lsup".to_string(), lsup);
            bin.insert("linf".to_string(), linf);
            Ok(Algebra::from_parts(Kind::Lambda, elements, Some(order), unary, bin, constants))
        }
        Kind::Semiring => {
            let p = FinitePoset::from_covers(&elements, &raw.order_covers)?;
            let alg =
                Algebra::from_parts(Kind::Semiring, elements.clone(), Some(p), unary, binary, constants);
            let v = check_semiring(&alg)?;
            if !v.holds {
                let w = v
                    .witness_names(&elements)
                    .map(|w| w.iter().map(|(var, e)| format!("{var}={e}")).collect::<Vec<_>>().join(" "))
                    .unwrap_or_default();
                return Err(validation("semiring", w));
            }
            Ok(alg)
        }
        Kind::Pseudoring => {
            let plus = binary
                .get("plus")
                .cloned()
                .ok_or_else(|| Error::MissingOperation("plus".into()))?;
            let times = binary
                .get("times")
                .cloned()
                .ok_or_else(|| Error::MissingOperation("times".into()))?;
            let zero = constants
                .get("zero")
                .copied()
                .ok_or_else(|| Error::MissingOperation("zero".into()))?;
            let one = constants
                .get("one")
                .copied()
                .ok_or_else(|| Error::MissingOperation("one".into()))?;
            let alg = crate::algebra::pseudoring_unchecked(elements.clone(), plus, times, zero, one)?;
            let v = check_pseudoring(&alg)?;
            if !v.holds {
                let w = v
                    .witness_names(&elements)
                    .map(|w| w.iter().map(|(var, e)| format!("{var}={e}")).collect::<Vec<_>>().join(" "))
                    .unwrap_or_default();
                return Err(validation("pseudoring", w));
            }
            Ok(alg)
        }
    }
}

fn lambda_tables_from_file_choices(
    p: &FinitePoset,
    choices: &[(bool, String, String, String)],
) -> Result<(BinaryTable, BinaryTable)> {
    let n = p.len();
    let mut join_choice: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut meet_choice: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (is_join, a, b, v) in choices {
        let (a, b, v) = (p.index(a)?, p.index(b)?, p.index(v)?);
        let key = (a.min(b), a.max(b));
        if *is_join {
            join_choice.insert(key, v);
        } else {
            meet_choice.insert(key, v);
        }
    }
    let fill = |choice: &BTreeMap<(usize, usize), usize>, join: bool| -> Result<BinaryTable> {
        let mut cells = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let v = if p.le(x, y) {
                    if join { y } else { x }
                } else if p.le(y, x) {
                    if join { x } else { y }
                } else {
                    let key = (x.min(y), x.max(y));
                    match choice.get(&key) {
                        Some(&v) => v,
                        None => {
                            return Err(Error::ValidationError {
                                axiom: if join { "choice join" } else { "choice meet" }.into(),
                                witness: format!("({}, {})", p.name(x), p.name(y)),
                            })
                        }
                    }
                };
                cells.push(v);
            }
        }
        BinaryTable::new(n, cells)
    };
    Ok((fill(&join_choice, true)?, fill(&meet_choice, false)?))
}

pub fn parse(text: &str) -> Result<AlgebraFile> {
    let raw = parse_raw(text)?;
    let algebra = build_algebra(&raw)?;
    Ok(AlgebraFile { name: raw.name, algebra, expect: raw.expect })
}

pub fn load(path: &std::path::Path) -> Result<AlgebraFile> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::FileSyntaxError {
        line: 0,
        msg: format!("cannot read {}: {e}", path.display()),
    })?;
    parse(&text)
}

/// Deterministic dump; `parse(dump(f))` rebuilds identical tables.
pub fn dump(name: &str, a: &Algebra) -> String {
    let mut out = String::new();
    let push = |out: &mut String, s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    push(&mut out, format!("algebra {name}"));
    push(&mut out, format!("kind {}", a.kind()));
    push(&mut out, format!("elements {}", a.elements().join(" ")));
    if let Some(p) = a.order() {
        let covers: Vec<String> = p
            .cover_pairs()
            .iter()
            .map(|&(x, y)| format!("{}<{}", p.name(x), p.name(y)))
            .collect();
        match a.kind() {
            Kind::Poset | Kind::Lattice => {
                push(&mut out, format!("covers {}", covers.join(" ")))
            }
            Kind::Semiring => push(&mut out, format!("order covers {}", covers.join(" "))),
            // lambda order is induced, pseudoring order multiplicative
            Kind::Lambda | Kind::Pseudoring => {}
        }
    }
    for (op, t) in a.unary_ops() {
        let pairs: Vec<String> = (0..a.len())
            .map(|i| format!("{}={}", a.name(i), a.name(t.apply(i))))
            .collect();
        push(&mut out, format!("unary {op}: {}", pairs.join(" ")));
    }
    for (op, t) in a.binary_ops() {
        // join/meet of a lattice are recovered from the covers
        if a.kind() == Kind::Lattice && (op == "join" || op == "meet") {
            continue;
        }
        push(&mut out, format!("binop {op}:"));
        for r in 0..a.len() {
            let row: Vec<&str> = (0..a.len()).map(|c| a.name(t.apply(r, c))).collect();
            push(&mut out, format!("row {}: {}", a.name(r), row.join(" ")));
        }
    }
    for (which, &v) in a.constants() {
        push(&mut out, format!("const {which} {}", a.name(v)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn lattice_file_round_trip() {
        let text = "\
algebra n5
kind lattice
elements 0 a b c 1
covers 0<a 0<b a<c b<1 c<1
unary neg: 0=1 a=b b=a c=b 1=0
expect B1=false A1=false
";
        let f = parse(text).unwrap();
        assert_eq!(f.name, "n5");
        assert_eq!(f.expect.get("B1"), Some(&false));
        assert_eq!(f.algebra, fixtures::fixture("n5_bprime_a").unwrap());
        let dumped = dump(&f.name, &f.algebra);
        let re = parse(&dumped).unwrap();
        assert_eq!(re.algebra, f.algebra);
        assert_eq!(dump(&re.name, &re.algebra), dumped);
    }

    #[test]
    fn lambda_choices_round_trip() {
        let text = "\
algebra fig3
kind lambda
elements 0 a b c d 1
covers 0<a 0<b a<c a<d b<c b<d c<1 d<1
complete-from-order
choice join a b = d
choice meet c d = b
choice join c d = 1   # forced anyway, spelled out
choice meet a b = 0
unary neg: 0=1 a=1 b=1 c=d d=c 1=0
";
        let f = parse(text).unwrap();
        assert_eq!(f.algebra, fixtures::fixture("fig3").unwrap());
        let dumped = dump(&f.name, &f.algebra);
        assert_eq!(parse(&dumped).unwrap().algebra, f.algebra);
    }

    #[test]
    fn all_fixture_dumps_reload() {
        for id in fixtures::FIXTURE_IDS {
            let a = fixtures::fixture(id).unwrap();
            let dumped = dump(id, &a);
            let re = parse(&dumped).unwrap_or_else(|e| panic!("{id}: {e}"));
            assert_eq!(re.algebra, a, "{id} round trip");
        }
    }

    #[test]
    fn lubless_poset_as_lattice_kind_is_rejected() {
        // the MO4-like order is a lattice, but fig5's order is not
        let p = fixtures::fixture("fig5_ex1").unwrap();
        let covers: Vec<String> = p
            .order()
            .unwrap()
            .cover_pairs()
            .iter()
            .map(|&(x, y)| format!("{}<{}", p.name(x), p.name(y)))
            .collect();
        let text = format!(
            "algebra bad\nkind lattice\nelements {}\ncovers {}\n",
            p.elements().join(" "),
            covers.join(" ")
        );
        match parse(&text) {
            Err(Error::ValidationError { axiom, witness }) => {
                assert_eq!(axiom, "NotALattice");
                assert_eq!(witness, "(a, b)");
            }
            other => panic!("expected NotALattice validation error, got {other:?}"),
        }
    }

    #[test]
    fn empty_elements_line_is_syntax_error() {
        let text = "algebra x\nkind poset\nelements\n";
        assert!(matches!(parse(text), Err(Error::FileSyntaxError { line: 3, .. })));
    }

    #[test]
    fn broken_lambda_tables_name_the_axiom() {
        let text = "\
algebra bad
kind lambda
elements 0 1
binop lsup:
row 0: 0 1
row 1: 0 1
binop linf:
row 0: 0 0
row 1: 0 1
";
        match parse(text) {
            Err(Error::ValidationError { axiom, .. }) => assert_eq!(axiom, "lam_comm_join"),
            other => panic!("expected validation error, got {other:?}"),
        }
    }

    #[test]
    fn comments_and_blank_lines_ignored(){
        let text = "# header\n\nalgebra t  # trailing\nkind poset\nelements x\n";
        assert_eq!(parse(text).unwrap().name, "t");
    }
}
