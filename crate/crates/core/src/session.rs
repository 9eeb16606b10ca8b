//! The session language: a ring, named ideals, modules and parameter
//! systems, plus optional commands. See `docs/grammar.md`.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::poly::{is_prime, Field, PolyRing, Polynomial, Ring};

/// Reference to an ideal: a declared name or an inline generator list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdealRef {
    Named(String),
    Inline(Vec<Polynomial>),
}

/// One summand `J/I` of a module; `R` alone is `R/(0)`, `R/I` has `J = R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SummandSpec {
    pub numerator: Option<IdealRef>,
    pub denominator: Option<IdealRef>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Classify { module: String },
    Hilbert { module: String, sop: String },
    Lambda { module: String, index: usize },
}

/// A parsed session with every name resolved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SessionModel {
    pub ring_name: String,
    pub ring: Ring,
    pub ideals: Vec<(String, Vec<Polynomial>)>,
    pub modules: Vec<(String, Vec<SummandSpec>)>,
    pub sops: Vec<(String, Vec<Polynomial>)>,
    pub commands: Vec<Command>,
}

impl SessionModel {
    pub fn ideal(&self, name: &str) -> Option<Ideal> {
        self.ideals.iter().find(|(n, _)| n == name).map(|(_, g)| Ideal::new(&self.ring, g.clone()))
    }

    pub fn resolve(&self, r: &IdealRef) -> Ideal {
        match r {
            IdealRef::Named(n) => self.ideal(n).expect("names are resolved at parse time"),
            IdealRef::Inline(g) => Ideal::new(&self.ring, g.clone()),
        }
    }

    /// Summands of a module as `(J, I)` pairs of ideals.
    pub fn module(&self, name: &str) -> Option<Vec<(Ideal, Ideal)>> {
        let (_, specs) = self.modules.iter().find(|(n, _)| n == name)?;
        Some(
            specs
                .iter()
                .map(|s| {
                    let j = s.numerator.as_ref().map_or_else(|| Ideal::unit(&self.ring), |r| self.resolve(r));
                    let i = s.denominator.as_ref().map_or_else(|| Ideal::zero(&self.ring), |r| self.resolve(r));
                    (j, i)
                })
                .collect(),
        )
    }

    pub fn sop(&self, name: &str) -> Option<&[Polynomial]> {
        self.sops.iter().find(|(n, _)| n == name).map(|(_, g)| g.as_slice())
    }

    pub fn module_names(&self) -> Vec<&str> {
        self.modules.iter().map(|(n, _)| n.as_str()).collect()
    }

    pub fn sop_names(&self) -> Vec<&str> {
        self.sops.iter().map(|(n, _)| n.as_str()).collect()
    }
}

pub fn parse_session(text: &str) -> Result<SessionModel> {
    let toks = lex(text)?;
    Parser { toks, pos: 0, ring: None }.session()
}

/// Parses one polynomial expression in `ring`.
pub fn parse_polynomial(ring: &PolyRing, text: &str) -> Result<Polynomial> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, ring: None };
    let poly = p.expr_in(ring)?;
    p.expect_end()?;
    Ok(poly)
}

/// Prints a session in the same grammar; the output parses back to an equal model.
pub fn print_session(s: &SessionModel) -> String {
    let ring = &s.ring;
    let mut out = String::new();
    let _ = writeln!(out, "ring {} = {}[{}];", s.ring_name, ring.field(), ring.vars().join(","));
    let polys = |gs: &[Polynomial]| -> String {
        let parts: Vec<String> = gs.iter().map(|g| ring.fmt(g)).collect();
        format!("({})", parts.join(", "))
    };
    let iref = |r: &IdealRef| -> String {
        match r {
            IdealRef::Named(n) => n.clone(),
            IdealRef::Inline(g) => polys(g),
        }
    };
    for (name, gens) in &s.ideals {
        let _ = writeln!(out, "ideal {name} = {};", polys(gens));
    }
    for (name, specs) in &s.modules {
        let parts: Vec<String> = specs
            .iter()
            .map(|sp| {
                let num = sp.numerator.as_ref().map_or_else(|| s.ring_name.clone(), iref);
                match &sp.denominator {
                    Some(d) => format!("{num}/{}", iref(d)),
                    None => num,
                }
            })
            .collect();
        let _ = writeln!(out, "module {name} = sum({});", parts.join(", "));
    }
    for (name, gens) in &s.sops {
        let _ = writeln!(out, "sop {name} = {};", polys(gens));
    }
    for c in &s.commands {
        let _ = match c {
            Command::Classify { module } => writeln!(out, "classify {module};"),
            Command::Hilbert { module, sop } => writeln!(out, "hilbert {module} {sop};"),
            Command::Lambda { module, index } => writeln!(out, "lambda {module} {index};"),
        };
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Punct(char),
    End,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, column);
        if c == '\n' {
            line += 1;
            column = 1;
            i += 1;
        } else if c.is_whitespace() {
            column += 1;
            i += 1;
        } else if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            column += i - start;
            out.push(Spanned { tok: Tok::Int(s.parse().expect("digits")), line: l0, column: c0 });
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            column += i - start;
            out.push(Spanned { tok: Tok::Ident(chars[start..i].iter().collect()), line: l0, column: c0 });
        } else if "=;,()[]+-*^/".contains(c) {
            out.push(Spanned { tok: Tok::Punct(c), line: l0, column: c0 });
            column += 1;
            i += 1;
        } else {
            return Err(Error::Syntax { line, column, message: format!("unexpected character `{c}`") });
        }
    }
    out.push(Spanned { tok: Tok::End, line, column });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    ring: Option<(String, Ring)>,
}

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn syntax<T>(&self, t: &Spanned, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { line: t.line, column: t.column, message: message.into() })
    }

    fn is_punct(&self, c: char) -> bool {
        self.peek().tok == Tok::Punct(c)
    }

    fn expect_punct(&mut self, c: char) -> Result<()> {
        let t = self.next();
        if t.tok == Tok::Punct(c) {
            Ok(())
        } else {
            self.syntax(&t, format!("expected `{c}`, found {}", describe(&t.tok)))
        }
    }

    fn ident(&mut self) -> Result<(String, Spanned)> {
        let t = self.next();
        match &t.tok {
            Tok::Ident(s) => Ok((s.clone(), t.clone())),
            other => self.syntax(&t, format!("expected a name, found {}", describe(other))),
        }
    }

    fn int(&mut self) -> Result<BigInt> {
        let t = self.next();
        match &t.tok {
            Tok::Int(n) => Ok(n.clone()),
            other => self.syntax(&t, format!("expected an integer, found {}", describe(other))),
        }
    }

    fn expect_end(&mut self) -> Result<()> {
        let t = self.next();
        if t.tok == Tok::End {
            Ok(())
        } else {
            self.syntax(&t, format!("unexpected {}", describe(&t.tok)))
        }
    }

    fn session(mut self) -> Result<SessionModel> {
        let mut ideals: Vec<(String, Vec<Polynomial>)> = Vec::new();
        let mut modules: Vec<(String, Vec<SummandSpec>)> = Vec::new();
        let mut sops: Vec<(String, Vec<Polynomial>)> = Vec::new();
        let mut commands = Vec::new();
        let mut names: Vec<String> = Vec::new();
        loop {
            let t = self.peek().clone();
            let kw = match &t.tok {
                Tok::End => break,
                Tok::Ident(s) => s.clone(),
                other => return self.syntax(&t, format!("expected a statement, found {}", describe(other))),
            };
            self.next();
            if kw != "ring" && self.ring.is_none() {
                return self.syntax(&t, "the first statement must declare the ring");
            }
            let mut declare = |p: &Parser, name: &str, at: &Spanned| -> Result<()> {
                if names.iter().any(|n| n == name) {
                    return p.syntax(at, format!("`{name}` is already declared"));
                }
                names.push(name.to_string());
                Ok(())
            };
            match kw.as_str() {
                "ring" => {
                    if self.ring.is_some() {
                        return self.syntax(&t, "only one ring may be declared");
                    }
                    let (name, at) = self.ident()?;
                    declare(&self, &name, &at)?;
                    self.expect_punct('=')?;
                    let field = self.field()?;
                    self.expect_punct('[')?;
                    let mut vars = Vec::new();
                    if !self.is_punct(']') {
                        loop {
                            let (v, at) = self.ident()?;
                            if vars.contains(&v) {
                                return self.syntax(&at, format!("duplicate variable `{v}`"));
                            }
                            vars.push(v);
                            if self.is_punct(',') {
                                self.next();
                            } else {
                                break;
                            }
                        }
                    }
                    self.expect_punct(']')?;
                    if vars.is_empty() {
                        return Err(Error::Arity { line: t.line, column: t.column, message: "a ring needs at least one variable".into() });
                    }
                    let ring = PolyRing::new(vars, field)?;
                    self.ring = Some((name, ring));
                }
                "ideal" => {
                    let (name, at) = self.ident()?;
                    declare(&self, &name, &at)?;
                    self.expect_punct('=')?;
                    let gens = self.poly_list()?.into_iter().map(|(p, _)| p).collect();
                    ideals.push((name, gens));
                }
                "module" => {
                    let (name, at) = self.ident()?;
                    declare(&self, &name, &at)?;
                    self.expect_punct('=')?;
                    let mut specs = Vec::new();
                    let wrapped = matches!(&self.peek().tok, Tok::Ident(s) if s == "sum");
                    if wrapped {
                        self.next();
                        self.expect_punct('(')?;
                        loop {
                            specs.push(self.summand(&ideals)?);
                            if self.is_punct(',') {
                                self.next();
                            } else {
                                break;
                            }
                        }
                        self.expect_punct(')')?;
                    } else {
                        specs.push(self.summand(&ideals)?);
                    }
                    modules.push((name, specs));
                }
                "sop" => {
                    let (name, at) = self.ident()?;
                    declare(&self, &name, &at)?;
                    self.expect_punct('=')?;
                    let gens = self.poly_list()?;
                    for (k, (p, at)) in gens.iter().enumerate() {
                        if p.is_zero() {
                            return Err(Error::ZeroParameter { line: at.line, column: at.column, index: k + 1 });
                        }
                        if !p.is_homogeneous() || p.total_degree() == Some(0) {
                            return Err(Error::InhomogeneousParameter { line: at.line, column: at.column, index: k + 1 });
                        }
                    }
                    if gens.is_empty() {
                        return Err(Error::Arity { line: at.line, column: at.column, message: "a parameter system needs at least one element".into() });
                    }
                    sops.push((name, gens.into_iter().map(|(p, _)| p).collect()));
                }
                "classify" | "hilbert" | "lambda" => {
                    let mut args = Vec::new();
                    while !self.is_punct(';') && self.peek().tok != Tok::End {
                        args.push(self.next());
                    }
                    let want = if kw == "classify" { 1 } else { 2 };
                    if args.len() != want {
                        return Err(Error::Arity {
                            line: t.line,
                            column: t.column,
                            message: format!("`{kw}` takes {want} argument(s), got {}", args.len()),
                        });
                    }
                    let module = self.known_name(&args[0], &modules.iter().map(|m| m.0.clone()).collect::<Vec<_>>())?;
                    commands.push(match kw.as_str() {
                        "classify" => Command::Classify { module },
                        "hilbert" => {
                            let sop = self.known_name(&args[1], &sops.iter().map(|s| s.0.clone()).collect::<Vec<_>>())?;
                            Command::Hilbert { module, sop }
                        }
                        _ => match &args[1].tok {
                            Tok::Int(n) => Command::Lambda {
                                module,
                                index: n.try_into().map_err(|_| Error::Syntax { line: args[1].line, column: args[1].column, message: "index too large".into() })?,
                            },
                            other => return self.syntax(&args[1], format!("expected an index, found {}", describe(other))),
                        },
                    });
                }
                other => return self.syntax(&t, format!("unknown statement `{other}`")),
            }
            self.expect_punct(';')?;
        }
        let Some((ring_name, ring)) = self.ring.take() else {
            let t = self.peek().clone();
            return self.syntax(&t, "empty session: declare a ring");
        };
        Ok(SessionModel { ring_name, ring, ideals, modules, sops, commands })
    }

    fn known_name(&self, t: &Spanned, known: &[String]) -> Result<String> {
        match &t.tok {
            Tok::Ident(s) if known.contains(s) => Ok(s.clone()),
            Tok::Ident(s) => Err(Error::UnknownName { line: t.line, column: t.column, name: s.clone() }),
            other => self.syntax(t, format!("expected a name, found {}", describe(other))),
        }
    }

    fn field(&mut self) -> Result<Field> {
        let (name, at) = self.ident()?;
        match name.as_str() {
            "QQ" => Ok(Field::Rational),
            "GF" => {
                self.expect_punct('(')?;
                let p = self.int()?;
                self.expect_punct(')')?;
                match u64::try_from(&p) {
                    Ok(p) if is_prime(p) && p < (1 << 31) => Ok(Field::Prime(p)),
                    _ => self.syntax(&at, format!("GF({p}): characteristic must be a prime below 2^31")),
                }
            }
            _ => self.syntax(&at, format!("unknown field `{name}`; use QQ or GF(p)")),
        }
    }

    fn ring(&self) -> Ring {
        self.ring.as_ref().expect("ring declared first").1.clone()
    }

    fn poly_list(&mut self) -> Result<Vec<(Polynomial, Spanned)>> {
        let ring = self.ring();
        self.expect_punct('(')?;
        let mut out = Vec::new();
        if self.is_punct(')') {
            self.next();
            return Ok(out);
        }
        loop {
            let at = self.peek().clone();
            out.push((self.expr_in(&ring)?, at));
            if self.is_punct(',') {
                self.next();
            } else {
                break;
            }
        }
        self.expect_punct(')')?;
        Ok(out)
    }

    fn ideal_ref(&mut self, ideals: &[(String, Vec<Polynomial>)]) -> Result<IdealRef> {
        if self.is_punct('(') {
            return Ok(IdealRef::Inline(self.poly_list()?.into_iter().map(|(p, _)| p).collect()));
        }
        let (name, at) = self.ident()?;
        if ideals.iter().any(|(n, _)| *n == name) {
            Ok(IdealRef::Named(name))
        } else {
            Err(Error::UnknownName { line: at.line, column: at.column, name })
        }
    }

    fn summand(&mut self, ideals: &[(String, Vec<Polynomial>)]) -> Result<SummandSpec> {
        let ring_name = self.ring.as_ref().expect("ring declared first").0.clone();
        let numerator = match &self.peek().tok {
            Tok::Ident(s) if *s == ring_name => {
                self.next();
                None
            }
            _ => Some(self.ideal_ref(ideals)?),
        };
        let denominator = if self.is_punct('/') {
            self.next();
            Some(self.ideal_ref(ideals)?)
        } else {
            None
        };
        if numerator.is_some() && denominator.is_none() {
            let t = self.peek().clone();
            return self.syntax(&t, "an ideal summand needs a denominator, as in `J/I`");
        }
        Ok(SummandSpec { numerator, denominator })
    }

    fn expr_in(&mut self, ring: &PolyRing) -> Result<Polynomial> {
        let mut acc = if self.is_punct('-') {
            self.next();
            self.term(ring)?.neg()
        } else {
            self.term(ring)?
        };
        loop {
            if self.is_punct('+') {
                self.next();
                acc = acc.add(&self.term(ring)?);
            } else if self.is_punct('-') {
                self.next();
                acc = acc.sub(&self.term(ring)?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self, ring: &PolyRing) -> Result<Polynomial> {
        let mut acc = self.power(ring)?;
        loop {
            if self.is_punct('*') {
                self.next();
                acc = acc.mul(&self.power(ring)?);
            } else if self.is_punct('/') {
                self.next();
                let t = self.peek().clone();
                let d = self.int()?;
                if d == BigInt::from(0) {
                    return self.syntax(&t, "division by zero");
                }
                let Some(inv) = ring.field().from_rational(&BigRational::new(1.into(), d)) else {
                    return self.syntax(&t, "divisor vanishes in the coefficient field");
                };
                acc = acc.scale(&inv);
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self, ring: &PolyRing) -> Result<Polynomial> {
        let base = self.atom(ring)?;
        if self.is_punct('^') {
            self.next();
            let t = self.peek().clone();
            let e = self.int()?;
            let Ok(e) = u32::try_from(&e) else {
                return self.syntax(&t, "exponent too large");
            };
            return Ok(base.pow(e, ring.field()));
        }
        Ok(base)
    }

    fn atom(&mut self, ring: &PolyRing) -> Result<Polynomial> {
        let t = self.next();
        match &t.tok {
            Tok::Int(n) => {
                let c = ring.field().from_rational(&BigRational::from_integer(n.clone())).expect("integers embed");
                Ok(Polynomial::constant(ring.nvars(), c))
            }
            Tok::Ident(v) => match ring.var_index(v) {
                Some(i) => Ok(ring.var(i)),
                None => Err(Error::UnknownName { line: t.line, column: t.column, name: v.clone() }),
            },
            Tok::Punct('(') => {
                let e = self.expr_in(ring)?;
                self.expect_punct(')')?;
                Ok(e)
            }
            other => self.syntax(&t, format!("expected a term, found {}", describe(other))),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Int(n) => format!("`{n}`"),
        Tok::Punct(c) => format!("`{c}`"),
        Tok::End => "end of input".into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn declarations() {
        let s = parse_session("ring R = QQ[X,Y,Z]; ideal I = (Z^2);").unwrap();
        assert_eq!(s.ring.nvars(), 3);
        assert_eq!(s.ideals[0].1.len(), 1);
        let s = parse_session("ring R = QQ[X,Y,Z];\nsop q = (X^2, Y^2, Z);").unwrap();
        assert_eq!(s.sop("q").unwrap().len(), 3);
    }

    #[test]
    fn syntax_error_points_at_token() {
        match parse_session("ring R = QQ[X,Y,Z];\nideal I = (X + );") {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (2, 16)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn semantic_errors() {
        assert!(matches!(parse_session("ring R = QQ[x]; ideal I = (y);"), Err(Error::UnknownName { .. })));
        assert!(matches!(parse_session("ring R = QQ[x]; sop q = (x, 0);"), Err(Error::ZeroParameter { index: 2, .. })));
        assert!(matches!(parse_session("ring R = QQ[x,y]; sop q = (x + y^2);"), Err(Error::InhomogeneousParameter { .. })));
        assert!(matches!(parse_session("ring R = QQ[x]; module M = sum(R); classify;"), Err(Error::Arity { .. })));
        assert!(matches!(parse_session("ring R = QQ[x]; module M = R/J;"), Err(Error::UnknownName { .. })));
        assert!(matches!(parse_session("ring R = GF(4)[x];"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn rational_coefficients() {
        let r = PolyRing::qq(&["x", "y"]);
        let p = parse_polynomial(&r, "3/2*x - y/4 + (x+y)^2").unwrap();
        assert_eq!(r.fmt(&p), "x^2 + 2*x*y + y^2 + 3/2*x - 1/4*y");
    }

    #[test]
    fn round_trip() {
        let text = "# ex\nring R = QQ[X,Y,Z];\nideal I = (Z^2);\nmodule M = sum(R, R/I, (X)/(X^2, X*Y));\nsop q = (X^2, Y^2, Z);\nclassify M;\nhilbert M q;\nlambda M 2;\n";
        let s = parse_session(text).unwrap();
        let printed = print_session(&s);
        let again = parse_session(&printed).unwrap();
        assert_eq!(s, again);
        assert_eq!(printed, print_session(&again));
    }
}
