//! Terms, identities, a small parser, and exhaustive evaluation over finite algebras.
//!
//! Grammar (loosest binding first):
//!
//! ```text
//! identity := expr (relator expr)+        relator: `=` | `>=` | `≥`
//! expr     := join (('\' | '/' | '->') join)*
//! join     := meet ('∨' meet)*             ASCII `\/`
//! meet     := mul ('∧' mul)*               ASCII `/\`
//! mul      := unary ('*' unary)*           also `·`
//! unary    := '¬' unary | atom             also `neg`, `~`
//! atom     := var | '1' | '0' | '(' expr ')'
//! ```
//!
//! Variables are a lowercase letter followed by digits. `\\` is accepted as
//! an ASCII spelling of `\`. All binary operators are left-associative.

use std::collections::BTreeSet;
use std::fmt;

use crate::algebra::FiniteRL;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(String),
    One,
    Zero,
    Mul(Box<Term>, Box<Term>),
    Meet(Box<Term>, Box<Term>),
    Join(Box<Term>, Box<Term>),
    /// `x\y`
    LDiv(Box<Term>, Box<Term>),
    /// `x/y`
    RDiv(Box<Term>, Box<Term>),
    /// `x -> y`, sugar for `x\y` in commutative algebras.
    Imp(Box<Term>, Box<Term>),
    /// `¬x`, sugar for `x\0`.
    Neg(Box<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    pub fn mul(a: Term, b: Term) -> Term {
        Term::Mul(Box::new(a), Box::new(b))
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::One | Term::Zero => {}
            Term::Neg(a) => a.collect_vars(out),
            Term::Mul(a, b)
            | Term::Meet(a, b)
            | Term::Join(a, b)
            | Term::LDiv(a, b)
            | Term::RDiv(a, b)
            | Term::Imp(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    fn uses(&self, pred: &impl Fn(&Term) -> bool) -> bool {
        if pred(self) {
            return true;
        }
        match self {
            Term::Var(_) | Term::One | Term::Zero => false,
            Term::Neg(a) => a.uses(pred),
            Term::Mul(a, b)
            | Term::Meet(a, b)
            | Term::Join(a, b)
            | Term::LDiv(a, b)
            | Term::RDiv(a, b)
            | Term::Imp(a, b) => a.uses(pred) || b.uses(pred),
        }
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, top: bool) -> fmt::Result {
        let (op, a, b) = match self {
            Term::Var(v) => return f.write_str(v),
            Term::One => return f.write_str("1"),
            Term::Zero => return f.write_str("0"),
            Term::Neg(a) => {
                f.write_str("¬")?;
                return a.write(f, false);
            }
            Term::Mul(a, b) => ("*", a, b),
            Term::Meet(a, b) => ("∧", a, b),
            Term::Join(a, b) => ("∨", a, b),
            Term::LDiv(a, b) => ("\\", a, b),
            Term::RDiv(a, b) => ("/", a, b),
            Term::Imp(a, b) => ("→", a, b),
        };
        if !top {
            f.write_str("(")?;
        }
        a.write(f, false)?;
        write!(f, " {op} ")?;
        b.write(f, false)?;
        if !top {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, true)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    Eq,
    /// Each side is `>=` the next one.
    Geq,
}

/// A chain of terms `t0 R t1 R ... R tk` (k >= 1), all related by `relation`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Identity {
    pub sides: Vec<Term>,
    pub relation: Relation,
}

impl Identity {
    pub fn new(lhs: Term, rhs: Term, relation: Relation) -> Self {
        Identity { sides: vec![lhs, rhs], relation }
    }

    pub fn lhs(&self) -> &Term {
        &self.sides[0]
    }

    pub fn rhs(&self) -> &Term {
        &self.sides[self.sides.len() - 1]
    }

    /// Variables in evaluation order (sorted by name).
    pub fn variables(&self) -> Vec<String> {
        let mut set = BTreeSet::new();
        for s in &self.sides {
            s.collect_vars(&mut set);
        }
        set.into_iter().collect()
    }

    fn uses(&self, pred: impl Fn(&Term) -> bool) -> bool {
        self.sides.iter().any(|s| s.uses(&pred))
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = match self.relation {
            Relation::Eq => " = ",
            Relation::Geq => " >= ",
        };
        for (i, s) in self.sides.iter().enumerate() {
            if i > 0 {
                f.write_str(rel)?;
            }
            s.write(f, true)?;
        }
        Ok(())
    }
}

/// Named identities accepted by [`parse_identity`].
pub const SHORTCUTS: &[(&str, &str)] = &[
    ("prel", "(x -> y) ∨ (y -> x) >= 1"),
    ("sem", "((u \\ ((x / (x ∨ y)) * u)) ∧ 1) ∨ (((v * (y / (x ∨ y))) / v) ∧ 1) = 1"),
    ("div", "x ∧ y = x * (x \\ y) = (y / x) * x"),
    ("inv", "¬¬x = x"),
    ("idem", "x * x = x"),
    ("stone", "¬x ∨ ¬¬x = 1"),
];

/// Parses an identity, expanding the shortcuts `prel`, `sem`, `div`, `inv`,
/// `idem`, `stone` and `potent:n` (meaning `x^n = x^(n+1)`).
pub fn parse_identity(text: &str) -> Result<Identity> {
    let t = text.trim();
    if let Some((_, body)) = SHORTCUTS.iter().find(|(name, _)| *name == t) {
        return parse_identity(body);
    }
    if let Some(k) = t.strip_prefix("potent:") {
        let n: usize = k
            .trim()
            .parse()
            .map_err(|_| Error::Parse { pos: 7, msg: format!("bad potency exponent `{k}`") })?;
        if n == 0 {
            return Err(Error::Parse { pos: 7, msg: "potency exponent must be at least 1".into() });
        }
        return Ok(potency(n));
    }
    let tokens = tokenize(t)?;
    let mut p = Parser { tokens, pos: 0, len: t.len() };
    let id = p.identity()?;
    if p.pos < p.tokens.len() {
        return Err(Error::Parse { pos: p.tokens[p.pos].1, msg: "unexpected trailing input".into() });
    }
    Ok(id)
}

/// `x^n = x^(n+1)`
pub fn potency(n: usize) -> Identity {
    let pow = |k: usize| (1..k).fold(Term::var("x"), |acc, _| Term::mul(acc, Term::var("x")));
    Identity::new(pow(n), pow(n + 1), Relation::Eq)
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Var(String),
    One,
    Zero,
    Star,
    Meet,
    Join,
    LDiv,
    RDiv,
    Imp,
    Neg,
    LParen,
    RParen,
    Eq,
    Geq,
}

fn tokenize(s: &str) -> Result<Vec<(Tok, usize)>> {
    const FIXED: &[(&str, Tok)] = &[
        ("/\\", Tok::Meet),
        ("\\/", Tok::Join),
        ("\\\\", Tok::LDiv),
        ("->", Tok::Imp),
        (">=", Tok::Geq),
        ("neg", Tok::Neg),
        ("∧", Tok::Meet),
        ("∨", Tok::Join),
        ("→", Tok::Imp),
        ("≥", Tok::Geq),
        ("¬", Tok::Neg),
        ("·", Tok::Star),
        ("⋅", Tok::Star),
        ("~", Tok::Neg),
        ("\\", Tok::LDiv),
        ("/", Tok::RDiv),
        ("*", Tok::Star),
        ("(", Tok::LParen),
        (")", Tok::RParen),
        ("=", Tok::Eq),
        ("1", Tok::One),
        ("0", Tok::Zero),
    ];
    let mut out = vec![];
    let mut i = 0;
    'outer: while i < s.len() {
        let rest = &s[i..];
        let c = rest.chars().next().unwrap();
        if c.is_whitespace() {
            i += c.len_utf8();
            continue;
        }
        for (lit, tok) in FIXED {
            if rest.starts_with(lit) {
                out.push((tok.clone(), i));
                i += lit.len();
                continue 'outer;
            }
        }
        if c.is_ascii_lowercase() {
            let len = 1 + rest[1..].bytes().take_while(u8::is_ascii_digit).count();
            out.push((Tok::Var(rest[..len].to_string()), i));
            i += len;
            continue;
        }
        return Err(Error::Parse { pos: i, msg: format!("unexpected character `{c}`") });
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(Tok, usize)>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn here(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.len, |(_, p)| *p)
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse { pos: self.here(), msg: msg.to_string() })
    }

    fn identity(&mut self) -> Result<Identity> {
        let first = self.expr()?;
        let relation = match self.peek() {
            Some(Tok::Eq) => Relation::Eq,
            Some(Tok::Geq) => Relation::Geq,
            _ => return self.err("expected `=` or `>=`"),
        };
        let mut sides = vec![first];
        loop {
            match (self.peek(), relation) {
                (Some(Tok::Eq), Relation::Eq) | (Some(Tok::Geq), Relation::Geq) => {
                    self.pos += 1;
                    sides.push(self.expr()?);
                }
                (Some(Tok::Eq | Tok::Geq), _) => return self.err("mixed relators"),
                _ => break,
            }
        }
        Ok(Identity { sides, relation })
    }

    fn expr(&mut self) -> Result<Term> {
        let mut acc = self.join()?;
        loop {
            let ctor: fn(Box<Term>, Box<Term>) -> Term = match self.peek() {
                Some(Tok::LDiv) => Term::LDiv,
                Some(Tok::RDiv) => Term::RDiv,
                Some(Tok::Imp) => Term::Imp,
                _ => return Ok(acc),
            };
            self.pos += 1;
            let rhs = self.join()?;
            acc = ctor(Box::new(acc), Box::new(rhs));
        }
    }

    fn join(&mut self) -> Result<Term> {
        let mut acc = self.meet()?;
        while self.peek() == Some(&Tok::Join) {
            self.pos += 1;
            acc = Term::Join(Box::new(acc), Box::new(self.meet()?));
        }
        Ok(acc)
    }

    fn meet(&mut self) -> Result<Term> {
        let mut acc = self.mul()?;
        while self.peek() == Some(&Tok::Meet) {
            self.pos += 1;
            acc = Term::Meet(Box::new(acc), Box::new(self.mul()?));
        }
        Ok(acc)
    }

    fn mul(&mut self) -> Result<Term> {
        let mut acc = self.unary()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            acc = Term::Mul(Box::new(acc), Box::new(self.unary()?));
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Term> {
        if self.peek() == Some(&Tok::Neg) {
            self.pos += 1;
            return Ok(Term::Neg(Box::new(self.unary()?)));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Term> {
        let tok = match self.peek() {
            Some(t) => t.clone(),
            None => return self.err("unexpected end of input"),
        };
        self.pos += 1;
        match tok {
            Tok::Var(v) => Ok(Term::Var(v)),
            Tok::One => Ok(Term::One),
            Tok::Zero => Ok(Term::Zero),
            Tok::LParen => {
                let t = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                Ok(t)
            }
            _ => {
                self.pos -= 1;
                self.err("expected a variable, constant or `(`")
            }
        }
    }
}

/// Result of evaluating an identity under all assignments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdentityVerdict {
    Holds,
    /// Lexicographically least failing assignment, variables sorted by name.
    Fails(Vec<(String, usize)>),
}

impl IdentityVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, IdentityVerdict::Holds)
    }
}

/// Checks that `alg` provides every symbol used by `id`.
pub fn check_symbols(alg: &FiniteRL, id: &Identity) -> Result<()> {
    if id.uses(|t| matches!(t, Term::Imp(..))) && !alg.is_commutative() {
        return Err(Error::UnsupportedSymbol("`→` needs a commutative algebra".into()));
    }
    if id.uses(|t| matches!(t, Term::Neg(_))) && !(alg.is_commutative() && alg.zero().is_some()) {
        return Err(Error::UnsupportedSymbol("`¬` needs a commutative pointed algebra".into()));
    }
    if id.uses(|t| matches!(t, Term::Zero)) && alg.zero().is_none() {
        return Err(Error::UnsupportedSymbol("`0` needs a pointed algebra".into()));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug)]
enum Op {
    Var(usize),
    Const(usize),
    Mul,
    Meet,
    Join,
    LDiv,
    RDiv,
    Neg,
}

fn compile(t: &Term, vars: &[String], alg: &FiniteRL, out: &mut Vec<Op>) {
    let bin = |a: &Term, b: &Term, op: Op, out: &mut Vec<Op>| {
        compile(a, vars, alg, out);
        compile(b, vars, alg, out);
        out.push(op);
    };
    match t {
        Term::Var(v) => out.push(Op::Var(vars.iter().position(|w| w == v).expect("variable collected"))),
        Term::One => out.push(Op::Const(alg.unit())),
        Term::Zero => out.push(Op::Const(alg.zero().expect("checked"))),
        Term::Mul(a, b) => bin(a, b, Op::Mul, out),
        Term::Meet(a, b) => bin(a, b, Op::Meet, out),
        Term::Join(a, b) => bin(a, b, Op::Join, out),
        Term::LDiv(a, b) | Term::Imp(a, b) => bin(a, b, Op::LDiv, out),
        Term::RDiv(a, b) => bin(a, b, Op::RDiv, out),
        Term::Neg(a) => {
            compile(a, vars, alg, out);
            out.push(Op::Neg);
        }
    }
}

fn run(prog: &[Op], alg: &FiniteRL, env: &[usize], stack: &mut Vec<usize>) -> usize {
    stack.clear();
    for op in prog {
        let v = match *op {
            Op::Var(i) => env[i],
            Op::Const(c) => c,
            Op::Neg => {
                let a = stack.pop().unwrap();
                alg.under(a, alg.zero().unwrap())
            }
            _ => {
                let b = stack.pop().unwrap();
                let a = stack.pop().unwrap();
                match *op {
                    Op::Mul => alg.mul(a, b),
                    Op::Meet => alg.meet(a, b),
                    Op::Join => alg.join(a, b),
                    Op::LDiv => alg.under(a, b),
                    _ => alg.over(a, b),
                }
            }
        };
        stack.push(v);
    }
    stack.pop().unwrap()
}

/// Evaluates `id` under every assignment in lexicographic order (variables
/// sorted by name, last variable varying fastest).
pub fn check_identity(alg: &FiniteRL, id: &Identity) -> Result<IdentityVerdict> {
    check_symbols(alg, id)?;
    let vars = id.variables();
    let progs: Vec<Vec<Op>> = id
        .sides
        .iter()
        .map(|s| {
            let mut p = vec![];
            compile(s, &vars, alg, &mut p);
            p
        })
        .collect();
    let n = alg.size();
    let k = vars.len();
    let mut env = vec![0usize; k];
    let mut stack = Vec::new();
    let mut values = Vec::with_capacity(progs.len());
    loop {
        values.clear();
        for p in &progs {
            values.push(run(p, alg, &env, &mut stack));
        }
        let ok = values.windows(2).all(|w| match id.relation {
            Relation::Eq => w[0] == w[1],
            Relation::Geq => alg.join(w[0], w[1]) == w[0],
        });
        if !ok {
            return Ok(IdentityVerdict::Fails(vars.iter().cloned().zip(env.iter().copied()).collect()));
        }
        // odometer, last variable fastest
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(IdentityVerdict::Holds);
            }
            i -= 1;
            env[i] += 1;
            if env[i] < n {
                break;
            }
            env[i] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shortcuts_parse() {
        for (name, _) in SHORTCUTS {
            parse_identity(name).unwrap();
        }
        assert_eq!(parse_identity("potent:2").unwrap().to_string(), "x * x = (x * x) * x");
    }

    #[test]
    fn prel_is_a_geq_identity() {
        let id = parse_identity("prel").unwrap();
        assert_eq!(id.relation, Relation::Geq);
        assert_eq!(id.to_string(), "(x → y) ∨ (y → x) >= 1");
    }

    #[test]
    fn unit_law_parses() {
        let id = parse_identity("x*1 = x").unwrap();
        assert_eq!(id, Identity::new(Term::mul(Term::var("x"), Term::One), Term::var("x"), Relation::Eq));
    }

    #[test]
    fn divisions_bind_loosest() {
        let id = parse_identity("x ∧ y = x*(x\\y)").unwrap();
        assert_eq!(id.to_string(), "x ∧ y = x * (x \\ y)");
        let t = parse_identity("u \\ x * u = 1").unwrap();
        assert_eq!(t.lhs().to_string(), "u \\ (x * u)");
        let t = parse_identity("a / b / c = 1").unwrap();
        assert_eq!(t.lhs().to_string(), "(a / b) / c");
    }

    #[test]
    fn ascii_aliases() {
        let a = parse_identity("neg x \\/ neg neg x = 1").unwrap();
        let b = parse_identity("stone").unwrap();
        assert_eq!(a, b);
        let c = parse_identity("x /\\ y = x * (x \\\\ y)").unwrap();
        let d = parse_identity("x ∧ y = x * (x \\ y)").unwrap();
        assert_eq!(c, d);
    }

    #[test]
    fn syntax_errors_carry_position() {
        assert_eq!(
            parse_identity("x * = y").unwrap_err(),
            Error::Parse { pos: 4, msg: "expected a variable, constant or `(`".into() }
        );
        assert!(matches!(parse_identity("x = y >= z"), Err(Error::Parse { .. })));
        assert!(matches!(parse_identity("(x = y"), Err(Error::Parse { .. })));
        assert!(matches!(parse_identity("X = y"), Err(Error::Parse { pos: 0, .. })));
    }

    #[test]
    fn variables_sorted() {
        let id = parse_identity("sem").unwrap();
        assert_eq!(id.variables(), vec!["u", "v", "x", "y"]);
    }
}
