//! Term language: parser, evaluator, and exhaustive law checking over finite
//! algebras.
//!
//! Surface syntax: `v` join, `^` meet (resolved against lattice or lambda
//! signatures), `+`, `*`, postfix `'`, `o` for the Sasaki product, `->` for
//! the Sasaki implication, `<=` and `=` as relations, `&` between premises,
//! `=>` before a conclusion.

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::poset::FinitePoset;
use crate::tables::{BinaryTable, UnaryTable};

pub const DEFAULT_VAR_CAP: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Connective {
    Join,
    Meet,
    Plus,
    Times,
    Odot,
    Imp,
}

impl Connective {
    pub fn symbol(self) -> &'static str {
        match self {
            Connective::Join => "v",
            Connective::Meet => "^",
            Connective::Plus => "+",
            Connective::Times => "*",
            Connective::Odot => "o",
            Connective::Imp => "->",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Term {
    Var(String),
    Zero,
    One,
    Neg(Box<Term>),
    Bin(Connective, Box<Term>, Box<Term>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rel {
    Eq,
    Le,
}

/// One `s = t` or `s <= t` comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comparison {
    pub rel: Rel,
    pub lhs: Term,
    pub rhs: Term,
}

/// A law: a plain (in)equality, or a quasi-identity with premises.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Law {
    pub premises: Vec<Comparison>,
    pub conclusion: Comparison,
}

impl Law {
    pub fn is_quasi(&self) -> bool {
        !self.premises.is_empty()
    }

    /// Distinct variables in sorted (alphabetical) order; this is the
    /// assignment order used for witness reporting.
    pub fn variables(&self) -> Vec<String> {
        let mut vars = Vec::new();
        let mut visit = |t: &Term| collect_vars(t, &mut vars);
        for p in &self.premises {
            visit(&p.lhs);
            visit(&p.rhs);
        }
        visit(&self.conclusion.lhs);
        visit(&self.conclusion.rhs);
        vars.sort();
        vars.dedup();
        vars
    }

    pub fn uses_order(&self) -> bool {
        self.premises.iter().any(|p| p.rel == Rel::Le) || self.conclusion.rel == Rel::Le
    }
}

fn collect_vars(t: &Term, out: &mut Vec<String>) {
    match t {
        Term::Var(v) => out.push(v.clone()),
        Term::Zero | Term::One => {}
        Term::Neg(c) => collect_vars(c, out),
        Term::Bin(_, l, r) => {
            collect_vars(l, out);
            collect_vars(r, out);
        }
    }
}

/// Result of checking a law. On failure the witness maps each variable (in
/// sorted order) to an element position and is the lexicographically least
/// violating assignment. `checked_count` counts the assignments whose
/// premises all held, i.e. those against which the conclusion was tested.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<Vec<(String, usize)>>,
    pub checked_count: u64,
}

impl Verdict {
    pub fn passing(checked_count: u64) -> Self {
        Verdict { holds: true, witness: None, checked_count }
    }

    pub fn witness_names(&self, elements: &[String]) -> Option<Vec<(String, String)>> {
        self.witness.as_ref().map(|w| {
            w.iter().map(|(v, i)| (v.clone(), elements[*i].clone())).collect()
        })
    }
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Zero,
    One,
    Prime,
    LPar,
    RPar,
    Op(Connective),
    RelEq,
    RelLe,
    Amp,
    Implies,
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = src.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let pos = i;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '\'' => {
                toks.push((pos, Tok::Prime));
                i += 1;
            }
            '(' => {
                toks.push((pos, Tok::LPar));
                i += 1;
            }
            ')' => {
                toks.push((pos, Tok::RPar));
                i += 1;
            }
            '+' => {
                toks.push((pos, Tok::Op(Connective::Plus)));
                i += 1;
            }
            '*' => {
                toks.push((pos, Tok::Op(Connective::Times)));
                i += 1;
            }
            '^' => {
                toks.push((pos, Tok::Op(Connective::Meet)));
                i += 1;
            }
            '&' => {
                toks.push((pos, Tok::Amp));
                i += 1;
            }
            '-' => {
                if bytes.get(i + 1) == Some(&b'>') {
                    toks.push((pos, Tok::Op(Connective::Imp)));
                    i += 2;
                } else {
                    return Err(Error::SyntaxError { pos, msg: "expected `->`".into() });
                }
            }
            '<' => {
                if bytes.get(i + 1) == Some(&b'=') {
                    toks.push((pos, Tok::RelLe));
                    i += 2;
                } else {
                    return Err(Error::SyntaxError { pos, msg: "expected `<=`".into() });
                }
            }
            '=' => {
                if bytes.get(i + 1) == Some(&b'>') {
                    toks.push((pos, Tok::Implies));
                    i += 2;
                } else {
                    toks.push((pos, Tok::RelEq));
                    i += 1;
                }
            }
            '0' => {
                toks.push((pos, Tok::Zero));
                i += 1;
            }
            '1' => {
                toks.push((pos, Tok::One));
                i += 1;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len()
                    && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                let word = &src[start..i];
                match word {
                    "v" => toks.push((pos, Tok::Op(Connective::Join))),
                    "o" => toks.push((pos, Tok::Op(Connective::Odot))),
                    _ => toks.push((pos, Tok::Ident(word.to_string()))),
                }
            }
            _ => {
                return Err(Error::SyntaxError { pos, msg: format!("unexpected character `{c}`") })
            }
        }
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(_, t)| t.clone());
        self.at += 1;
        t
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::SyntaxError { pos: self.pos(), msg: msg.into() })
    }

    fn term(&mut self) -> Result<Term> {
        self.imp()
    }

    fn imp(&mut self) -> Result<Term> {
        let mut lhs = self.add()?;
        while self.peek() == Some(&Tok::Op(Connective::Imp)) {
            self.bump();
            let rhs = self.add()?;
            lhs = Term::Bin(Connective::Imp, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn add(&mut self) -> Result<Term> {
        let mut lhs = self.mul()?;
        loop {
            let op = match self.peek() {
                Some(Tok::Op(c @ (Connective::Plus | Connective::Join | Connective::Odot))) => *c,
                _ => break,
            };
            self.bump();
            let rhs = self.mul()?;
            lhs = Term::Bin(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn mul(&mut self) -> Result<Term> {
        let mut lhs = self.post()?;
        loop {
            let op = match self.peek() {
                Some(Tok::Op(c @ (Connective::Times | Connective::Meet))) => *c,
                _ => break,
            };
            self.bump();
            let rhs = self.post()?;
            lhs = Term::Bin(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn post(&mut self) -> Result<Term> {
        let mut t = self.atom()?;
        while self.peek() == Some(&Tok::Prime) {
            self.bump();
            t = Term::Neg(Box::new(t));
        }
        Ok(t)
    }

    fn atom(&mut self) -> Result<Term> {
        match self.bump() {
            Some(Tok::Ident(name)) => Ok(Term::Var(name)),
            Some(Tok::Zero) => Ok(Term::Zero),
            Some(Tok::One) => Ok(Term::One),
            Some(Tok::LPar) => {
                let t = self.term()?;
                if self.bump() != Some(Tok::RPar) {
                    self.at -= 1;
                    return self.err("expected `)`");
                }
                Ok(t)
            }
            _ => {
                self.at = self.at.saturating_sub(1);
                self.err("expected a term")
            }
        }
    }

    fn comparison(&mut self) -> Result<Comparison> {
        let lhs = self.term()?;
        let rel = match self.bump() {
            Some(Tok::RelEq) => Rel::Eq,
            Some(Tok::RelLe) => Rel::Le,
            _ => {
                self.at = self.at.saturating_sub(1);
                return self.err("expected `=` or `<=`");
            }
        };
        let rhs = self.term()?;
        Ok(Comparison { rel, lhs, rhs })
    }

    fn law(&mut self) -> Result<Law> {
        let mut comps = vec![self.comparison()?];
        while self.peek() == Some(&Tok::Amp) {
            self.bump();
            comps.push(self.comparison()?);
        }
        let law = if self.peek() == Some(&Tok::Implies) {
            self.bump();
            let conclusion = self.comparison()?;
            Law { premises: comps, conclusion }
        } else {
            if comps.len() != 1 {
                return self.err("expected `=>` after premises");
            }
            Law { premises: Vec::new(), conclusion: comps.pop().unwrap() }
        };
        if self.at != self.toks.len() {
            return self.err("trailing input");
        }
        Ok(law)
    }
}

pub fn parse_term(src: &str) -> Result<Term> {
    let toks = tokenize(src)?;
    let mut p = Parser { toks, at: 0, end: src.len() };
    let t = p.term()?;
    if p.at != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(t)
}

pub fn parse_law(src: &str) -> Result<Law> {
    let toks = tokenize(src)?;
    let mut p = Parser { toks, at: 0, end: src.len() };
    p.law()
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

/// A term compiled to postfix against a concrete algebra signature; all
/// connective resolution happens at compile time so evaluation is pure table
/// lookup.
enum Instr<'a> {
    Var(usize),
    Const(usize),
    Un(&'a UnaryTable),
    Bin(&'a BinaryTable),
}

struct Compiled<'a> {
    code: Vec<Instr<'a>>,
}

impl<'a> Compiled<'a> {
    fn eval(&self, env: &[usize], stack: &mut Vec<usize>) -> usize {
        stack.clear();
        for ins in &self.code {
            match ins {
                Instr::Var(k) => stack.push(env[*k]),
                Instr::Const(c) => stack.push(*c),
                Instr::Un(t) => {
                    let x = stack.pop().unwrap();
                    stack.push(t.apply(x));
                }
                Instr::Bin(t) => {
                    let y = stack.pop().unwrap();
                    let x = stack.pop().unwrap();
                    stack.push(t.apply(x, y));
                }
            }
        }
        stack.pop().unwrap()
    }
}

fn compile<'a>(alg: &'a Algebra, t: &Term, vars: &[String], out: &mut Vec<Instr<'a>>) -> Result<()> {
    match t {
        Term::Var(name) => {
            let k = vars
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| Error::UnboundVariable(name.clone()))?;
            out.push(Instr::Var(k));
        }
        Term::Zero => out.push(Instr::Const(alg.constant_zero()?)),
        Term::One => out.push(Instr::Const(alg.constant_one()?)),
        Term::Neg(c) => {
            compile(alg, c, vars, out)?;
            out.push(Instr::Un(alg.negation()?));
        }
        Term::Bin(conn, l, r) => {
            compile(alg, l, vars, out)?;
            compile(alg, r, vars, out)?;
            out.push(Instr::Bin(alg.resolve_binary(*conn)?));
        }
    }
    Ok(())
}

fn compile_term<'a>(alg: &'a Algebra, t: &Term, vars: &[String]) -> Result<Compiled<'a>> {
    let mut code = Vec::new();
    compile(alg, t, vars, &mut code)?;
    Ok(Compiled { code })
}

/// Evaluate a term under an explicit assignment of elements to variables.
pub fn eval_term(alg: &Algebra, t: &Term, assignment: &[(String, usize)]) -> Result<usize> {
    let vars: Vec<String> = assignment.iter().map(|(v, _)| v.clone()).collect();
    let env: Vec<usize> = assignment.iter().map(|(_, e)| *e).collect();
    let compiled = compile_term(alg, t, &vars)?;
    let mut stack = Vec::new();
    Ok(compiled.eval(&env, &mut stack))
}

struct CompiledComparison<'a> {
    rel: Rel,
    lhs: Compiled<'a>,
    rhs: Compiled<'a>,
}

impl<'a> CompiledComparison<'a> {
    fn satisfied(&self, order: Option<&FinitePoset>, env: &[usize], stack: &mut Vec<usize>) -> bool {
        let l = self.lhs.eval(env, stack);
        let r = self.rhs.eval(env, stack);
        match self.rel {
            Rel::Eq => l == r,
            Rel::Le => order.expect("order checked at compile time").le(l, r),
        }
    }
}

struct CompiledLaw<'a> {
    order: Option<&'a FinitePoset>,
    premises: Vec<CompiledComparison<'a>>,
    conclusion: CompiledComparison<'a>,
    vars: Vec<String>,
    n: usize,
}

impl<'a> CompiledLaw<'a> {
    fn new(alg: &'a Algebra, law: &Law, var_cap: usize) -> Result<Self> {
        let vars = law.variables();
        if vars.len() > var_cap {
            return Err(Error::TooManyVariables(vars.len(), var_cap));
        }
        let order = alg.order();
        if law.uses_order() && order.is_none() {
            return Err(Error::MissingOrder);
        }
        let comp = |c: &Comparison| -> Result<CompiledComparison<'a>> {
            Ok(CompiledComparison {
                rel: c.rel,
                lhs: compile_term(alg, &c.lhs, &vars)?,
                rhs: compile_term(alg, &c.rhs, &vars)?,
            })
        };
        Ok(CompiledLaw {
            order,
            premises: law.premises.iter().map(comp).collect::<Result<_>>()?,
            conclusion: comp(&law.conclusion)?,
            vars,
            n: alg.len(),
        })
    }

    fn decode(&self, mut index: u64) -> Vec<usize> {
        let k = self.vars.len();
        let mut env = vec![0; k];
        for slot in (0..k).rev() {
            env[slot] = (index % self.n as u64) as usize;
            index /= self.n as u64;
        }
        env
    }

    /// Scan a contiguous block of assignment indices. Returns the number of
    /// premise-satisfying assignments and the least violating index, if any.
    fn scan_range(&self, from: u64, to: u64) -> (u64, Option<u64>) {
        let mut env = self.decode(from);
        let mut stack = Vec::with_capacity(8);
        let mut checked = 0u64;
        let mut least = None;
        let k = self.vars.len();
        for index in from..to {
            if self
                .premises
                .iter()
                .all(|p| p.satisfied(self.order, &env, &mut stack))
            {
                checked += 1;
                if least.is_none() && !self.conclusion.satisfied(self.order, &env, &mut stack) {
                    least = Some(index);
                }
            }
            // mixed-radix increment, last variable fastest
            for slot in (0..k).rev() {
                env[slot] += 1;
                if env[slot] < self.n {
                    break;
                }
                env[slot] = 0;
            }
        }
        (checked, least)
    }

    fn total(&self) -> u64 {
        (self.n as u64).pow(self.vars.len() as u32)
    }
}

fn verdict_from(law: &CompiledLaw<'_>, checked: u64, least: Option<u64>) -> Verdict {
    match least {
        None => Verdict::passing(checked),
        Some(index) => {
            let env = law.decode(index);
            let witness = law.vars.iter().cloned().zip(env).collect();
            Verdict { holds: false, witness: Some(witness), checked_count: checked }
        }
    }
}

/// Exhaustively check a law over all assignments, sequentially.
pub fn check_law_sequential(alg: &Algebra, law: &Law) -> Result<Verdict> {
    check_law_sequential_capped(alg, law, DEFAULT_VAR_CAP)
}

pub fn check_law_sequential_capped(alg: &Algebra, law: &Law, var_cap: usize) -> Result<Verdict> {
    let compiled = CompiledLaw::new(alg, law, var_cap)?;
    let (checked, least) = compiled.scan_range(0, compiled.total());
    Ok(verdict_from(&compiled, checked, least))
}

/// Exhaustively check a law over all assignments. With the `parallel`
/// feature the assignment space is partitioned across workers; workers
/// report local minima and the reducer keeps the globally least witness, so
/// the result is identical to the sequential scan.
pub fn check_law(alg: &Algebra, law: &Law) -> Result<Verdict> {
    check_law_capped(alg, law, DEFAULT_VAR_CAP)
}

#[cfg(feature = "parallel")]
pub fn check_law_capped(alg: &Algebra, law: &Law, var_cap: usize) -> Result<Verdict> {
    use rayon::prelude::*;

    const MIN_PARALLEL: u64 = 1 << 14;
    let compiled = CompiledLaw::new(alg, law, var_cap)?;
    let total = compiled.total();
    if total < MIN_PARALLEL {
        let (checked, least) = compiled.scan_range(0, total);
        return Ok(verdict_from(&compiled, checked, least));
    }
    let chunks = (rayon::current_num_threads() as u64 * 8).max(1);
    let chunk = total.div_ceil(chunks);
    let (checked, least) = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let from = c * chunk;
            let to = (from + chunk).min(total);
            compiled.scan_range(from, to.max(from))
        })
        .reduce(
            || (0, None),
            |(ca, wa), (cb, wb)| {
                let w = match (wa, wb) {
                    (Some(a), Some(b)) => Some(a.min(b)),
                    (a, b) => a.or(b),
                };
                (ca + cb, w)
            },
        );
    Ok(verdict_from(&compiled, checked, least))
}

#[cfg(not(feature = "parallel"))]
pub fn check_law_capped(alg: &Algebra, law: &Law, var_cap: usize) -> Result<Verdict> {
    check_law_sequential_capped(alg, law, var_cap)
}

/// Fast path for sweeps: does the law hold? Exits on the first violation
/// without computing counts or least witnesses.
pub fn law_holds(alg: &Algebra, law: &Law) -> Result<bool> {
    let compiled = CompiledLaw::new(alg, law, DEFAULT_VAR_CAP)?;
    let total = compiled.total();
    let k = compiled.vars.len();
    let mut env = vec![0; k];
    let mut stack = Vec::with_capacity(8);
    for _ in 0..total {
        if compiled
            .premises
            .iter()
            .all(|p| p.satisfied(compiled.order, &env, &mut stack))
            && !compiled.conclusion.satisfied(compiled.order, &env, &mut stack)
        {
            return Ok(false);
        }
        for slot in (0..k).rev() {
            env[slot] += 1;
            if env[slot] < compiled.n {
                break;
            }
            env[slot] = 0;
        }
    }
    Ok(true)
}

/// Re-evaluate a law at a specific assignment: true when the assignment
/// satisfies it (vacuously, if some premise fails).
pub fn eval_law_at(alg: &Algebra, law: &Law, assignment: &[(String, usize)]) -> Result<bool> {
    let vars: Vec<String> = assignment.iter().map(|(v, _)| v.clone()).collect();
    let env: Vec<usize> = assignment.iter().map(|(_, e)| *e).collect();
    let order = alg.order();
    if law.uses_order() && order.is_none() {
        return Err(Error::MissingOrder);
    }
    let mut stack = Vec::new();
    let mut sat = |c: &Comparison| -> Result<bool> {
        let cc = CompiledComparison {
            rel: c.rel,
            lhs: compile_term(alg, &c.lhs, &vars)?,
            rhs: compile_term(alg, &c.rhs, &vars)?,
        };
        Ok(cc.satisfied(order, &env, &mut stack))
    };
    for p in &law.premises {
        if !sat(p)? {
            return Ok(true);
        }
    }
    sat(&law.conclusion)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_join_of_complement() {
        let t = parse_term("x v x'").unwrap();
        assert_eq!(
            t,
            Term::Bin(
                Connective::Join,
                Box::new(Term::Var("x".into())),
                Box::new(Term::Neg(Box::new(Term::Var("x".into()))))
            )
        );
    }

    #[test]
    fn parse_b1_left_side() {
        let t = parse_term("y' v ((x v y') ^ y)").unwrap();
        let y = || Box::new(Term::Var("y".into()));
        let x = || Box::new(Term::Var("x".into()));
        let yp = || Box::new(Term::Neg(y()));
        let expected = Term::Bin(
            Connective::Join,
            yp(),
            Box::new(Term::Bin(
                Connective::Meet,
                Box::new(Term::Bin(Connective::Join, x(), yp())),
                y(),
            )),
        );
        assert_eq!(t, expected);
    }

    #[test]
    fn parse_a1_quasi_identity() {
        let law = parse_law("x o y <= z => x <= y -> z").unwrap();
        assert_eq!(law.premises.len(), 1);
        assert_eq!(law.premises[0].rel, Rel::Le);
        assert_eq!(
            law.premises[0].lhs,
            Term::Bin(
                Connective::Odot,
                Box::new(Term::Var("x".into())),
                Box::new(Term::Var("y".into()))
            )
        );
        assert_eq!(law.conclusion.rel, Rel::Le);
        assert_eq!(
            law.conclusion.rhs,
            Term::Bin(
                Connective::Imp,
                Box::new(Term::Var("y".into())),
                Box::new(Term::Var("z".into()))
            )
        );
        assert_eq!(law.variables(), vec!["x", "y", "z"]);
    }

    #[test]
    fn precedence_mul_binds_tighter_than_add() {
        // x + y * z parses as x + (y * z)
        let t = parse_term("x + y * z").unwrap();
        match t {
            Term::Bin(Connective::Plus, _, rhs) => {
                assert!(matches!(*rhs, Term::Bin(Connective::Times, _, _)))
            }
            other => panic!("unexpected parse: {other:?}"),
        }
    }

    #[test]
    fn syntax_error_carries_position() {
        let err = parse_term("x v (y").unwrap_err();
        assert!(matches!(err, Error::SyntaxError { .. }));
        let err = parse_law("x = ").unwrap_err();
        assert!(matches!(err, Error::SyntaxError { .. }));
    }

    #[test]
    fn left_associative_within_level() {
        // x v y v z = (x v y) v z
        let t = parse_term("x v y v z").unwrap();
        match t {
            Term::Bin(Connective::Join, lhs, rhs) => {
                assert!(matches!(*lhs, Term::Bin(Connective::Join, _, _)));
                assert_eq!(*rhs, Term::Var("z".into()));
            }
            other => panic!("unexpected parse: {other:?}"),
        }
    }
}
