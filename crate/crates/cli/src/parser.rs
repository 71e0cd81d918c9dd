//! Lexer and recursive-descent parser with declaration checking.
//!
//! ```text
//! script   := (decl | task)*
//! decl     := "ring" id "=" ringspec ";"
//!           | "ideal" id "=" expr ("," expr)* ";"
//!           | "ideal" id ":=" iexpr ";"
//!           | "elem" id "=" expr ";"
//! ringspec := field "[" ids "]" ("mod" "(" exprs ")")?
//!           | "semigroup" "<" ints ">" ("[" ids "]")?
//! field    := "QQ" | "GF" "(" int ")"
//! task     := "task" name id* (key "=" value)* ";"
//! iexpr    := iterm (("+" | "&") iterm)*
//! iterm    := ipow ("*" ipow)*
//! ipow     := iatom ("^" int)?
//! iatom    := id | "frob" "(" iexpr "," int ")" | "(" iexpr ")"
//! value    := "-"? int (".." "-"? int)? | word | string | "[" values "]"
//! ```
//!
//! Comments run from `#` to the end of the line.

use std::collections::HashMap;

use thiserror::Error;

use crate::ast::*;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{line}:{col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(u64),
    Str(String),
    Sym(&'static str),
    Eof,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

const SYMBOLS: [&str; 17] = [":=", "..", "=", ";", ",", "[", "]", "(", ")", "<", ">", "+", "-", "*", "/", "^", "&"];

fn lex(src: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let mut out = Vec::new();
    let err = |line, col, message: String| ParseError { line, col, message };
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let mut advance = |n: usize, i: &mut usize| {
            for _ in 0..n {
                if chars[*i] == '\n' {
                    line += 1;
                    col = 1;
                } else {
                    col += 1;
                }
                *i += 1;
            }
        };
        if c.is_whitespace() {
            advance(1, &mut i);
        } else if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                advance(1, &mut i);
            }
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                advance(1, &mut i);
            }
            let text: String = chars[start..i].iter().collect();
            let v = text.parse().map_err(|_| err(l0, c0, format!("integer literal {text} is too large")))?;
            out.push(Token { tok: Tok::Int(v), line: l0, col: c0 });
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                advance(1, &mut i);
            }
            out.push(Token { tok: Tok::Ident(chars[start..i].iter().collect()), line: l0, col: c0 });
        } else if c == '"' {
            advance(1, &mut i);
            let mut s = String::new();
            loop {
                match chars.get(i) {
                    None => return Err(err(l0, c0, "unterminated string".into())),
                    Some('"') => {
                        advance(1, &mut i);
                        break;
                    }
                    Some('\\') => {
                        let e = match chars.get(i + 1) {
                            Some('"') => '"',
                            Some('\\') => '\\',
                            Some('n') => '\n',
                            _ => return Err(err(l0, c0, "invalid escape in string".into())),
                        };
                        s.push(e);
                        advance(2, &mut i);
                    }
                    Some(&ch) => {
                        s.push(ch);
                        advance(1, &mut i);
                    }
                }
            }
            out.push(Token { tok: Tok::Str(s), line: l0, col: c0 });
        } else {
            let rest: String = chars[i..chars.len().min(i + 2)].iter().collect();
            match SYMBOLS.iter().find(|s| rest.starts_with(**s)) {
                Some(s) => {
                    advance(s.len(), &mut i);
                    out.push(Token { tok: Tok::Sym(s), line: l0, col: c0 });
                }
                None => return Err(err(l0, c0, format!("unexpected character '{c}'"))),
            }
        }
    }
    out.push(Token { tok: Tok::Eof, line, col });
    Ok(out)
}

/// Argument kinds of a task.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Arg {
    Ideal,
    Elem,
    OptIdeal,
    /// One or more elements.
    Elems,
}

struct TaskSig {
    name: &'static str,
    args: &'static [Arg],
    semigroup: bool,
}

const TASKS: &[TaskSig] = &[
    TaskSig { name: "fiber_series", args: &[Arg::Ideal], semigroup: true },
    TaskSig { name: "assoc_series", args: &[Arg::Ideal], semigroup: false },
    TaskSig { name: "hs_series", args: &[Arg::Ideal], semigroup: false },
    TaskSig { name: "coeffs", args: &[Arg::Ideal], semigroup: true },
    TaskSig { name: "spread", args: &[Arg::Ideal], semigroup: true },
    TaskSig { name: "mu", args: &[Arg::Ideal], semigroup: true },
    TaskSig { name: "colength", args: &[Arg::Ideal], semigroup: false },
    TaskSig { name: "grade", args: &[Arg::Ideal], semigroup: false },
    TaskSig { name: "reduction", args: &[Arg::Ideal, Arg::Ideal], semigroup: true },
    TaskSig { name: "min_reduction", args: &[Arg::Ideal], semigroup: false },
    TaskSig { name: "a_sign", args: &[Arg::Ideal, Arg::Ideal], semigroup: true },
    TaskSig { name: "rr_closure", args: &[Arg::Ideal], semigroup: false },
    TaskSig { name: "vv", args: &[Arg::Ideal, Arg::Ideal], semigroup: true },
    TaskSig { name: "v2inf", args: &[Arg::Ideal, Arg::Ideal], semigroup: true },
    TaskSig { name: "superficial", args: &[Arg::Elem, Arg::Ideal], semigroup: false },
    TaskSig { name: "rees_superficial", args: &[Arg::Elem, Arg::Ideal], semigroup: false },
    TaskSig { name: "filter_regular", args: &[Arg::Elem, Arg::Ideal], semigroup: false },
    TaskSig { name: "complexC", args: &[Arg::Ideal, Arg::Ideal], semigroup: false },
    TaskSig { name: "complexD", args: &[Arg::Ideal, Arg::Ideal], semigroup: false },
    TaskSig { name: "resolution", args: &[Arg::Ideal, Arg::Ideal], semigroup: false },
    TaskSig { name: "thm_l2", args: &[Arg::Ideal, Arg::OptIdeal], semigroup: false },
    TaskSig { name: "thm_l3", args: &[Arg::Ideal, Arg::OptIdeal], semigroup: false },
    TaskSig { name: "higher", args: &[Arg::Ideal, Arg::Elems], semigroup: false },
    TaskSig { name: "equal", args: &[Arg::Ideal, Arg::Ideal], semigroup: true },
    TaskSig { name: "contains", args: &[Arg::Ideal, Arg::Ideal], semigroup: true },
    TaskSig { name: "member", args: &[Arg::Ideal, Arg::Elem], semigroup: true },
];

/// Option keys accepted by every task besides `expect` and `expect_*`.
pub const OPTION_KEYS: &[&str] =
    &["nmax", "window", "bound", "n", "r0", "certified_from", "v2_window", "powers", "claim", "trials", "seed"];

/// Names of all tasks, in the order they are documented.
pub fn task_names() -> Vec<&'static str> {
    TASKS.iter().map(|t| t.name).collect()
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Ring,
    Ideal,
    Elem,
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    names: HashMap<String, Kind>,
    vars: Vec<String>,
    semigroup: Option<bool>,
}

pub fn parse_script(src: &str) -> Result<Script, ParseError> {
    let mut p = Parser { toks: lex(src)?, pos: 0, names: HashMap::new(), vars: Vec::new(), semigroup: None };
    let mut items = Vec::new();
    while p.peek() != &Tok::Eof {
        items.push(p.item()?);
    }
    Ok(Script { items })
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn here(&self) -> (usize, usize) {
        let t = &self.toks[self.pos];
        (t.line, t.col)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        let (line, col) = self.here();
        Err(ParseError { line, col, message: message.into() })
    }

    fn is_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Tok::Sym(t) if *t == s)
    }

    fn eat_sym(&mut self, s: &str) -> bool {
        if self.is_sym(s) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, s: &str) -> Result<(), ParseError> {
        if self.eat_sym(s) {
            Ok(())
        } else {
            self.error(format!("expected '{s}', found {}", describe(self.peek())))
        }
    }

    fn is_word(&self, w: &str) -> bool {
        matches!(self.peek(), Tok::Ident(t) if t == w)
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.pos += 1;
                Ok(s)
            }
            t => self.error(format!("expected identifier, found {}", describe(&t))),
        }
    }

    fn int(&mut self) -> Result<u64, ParseError> {
        match self.peek().clone() {
            Tok::Int(v) => {
                self.pos += 1;
                Ok(v)
            }
            t => self.error(format!("expected integer, found {}", describe(&t))),
        }
    }

    fn small_int(&mut self) -> Result<u32, ParseError> {
        let here = self.here();
        let v = self.int()?;
        u32::try_from(v).map_err(|_| ParseError { line: here.0, col: here.1, message: format!("{v} is out of range") })
    }

    fn declare(&mut self, name: &str, kind: Kind, at: (usize, usize)) -> Result<(), ParseError> {
        if self.names.contains_key(name) || self.vars.iter().any(|v| v == name) {
            return Err(ParseError { line: at.0, col: at.1, message: format!("'{name}' is already declared") });
        }
        self.names.insert(name.to_string(), kind);
        Ok(())
    }

    fn require_ring(&self) -> Result<(), ParseError> {
        if self.semigroup.is_none() {
            return self.error("declare a ring first");
        }
        Ok(())
    }

    fn item(&mut self) -> Result<Item, ParseError> {
        let at = self.here();
        let kw = self.ident()?;
        let item = match kw.as_str() {
            "ring" => {
                if self.semigroup.is_some() {
                    return Err(ParseError { line: at.0, col: at.1, message: "only one ring per script".into() });
                }
                let at = self.here();
                let name = self.ident()?;
                self.declare(&name, Kind::Ring, at)?;
                self.expect_sym("=")?;
                let spec = self.ring_spec()?;
                Item::Ring { name, spec }
            }
            "ideal" => {
                self.require_ring()?;
                let at = self.here();
                let name = self.ident()?;
                let def = if self.eat_sym(":=") {
                    IdealDef::Combination(self.ideal_expr()?)
                } else {
                    self.expect_sym("=")?;
                    IdealDef::Gens(self.expr_list()?)
                };
                self.declare(&name, Kind::Ideal, at)?;
                Item::Ideal { name, def }
            }
            "elem" => {
                self.require_ring()?;
                let at = self.here();
                let name = self.ident()?;
                self.expect_sym("=")?;
                let value = self.expr()?;
                self.declare(&name, Kind::Elem, at)?;
                Item::Elem { name, value }
            }
            "task" => {
                self.require_ring()?;
                Item::Task(self.task()?)
            }
            other => {
                return Err(ParseError {
                    line: at.0,
                    col: at.1,
                    message: format!("expected 'ring', 'ideal', 'elem' or 'task', found '{other}'"),
                })
            }
        };
        self.expect_sym(";")?;
        Ok(item)
    }

    fn ring_spec(&mut self) -> Result<RingSpec, ParseError> {
        if self.is_word("semigroup") {
            self.pos += 1;
            self.expect_sym("<")?;
            let mut gens = vec![self.small_int()?];
            while self.eat_sym(",") {
                gens.push(self.small_int()?);
            }
            self.expect_sym(">")?;
            let free = if self.eat_sym("[") { self.ident_list("]")? } else { Vec::new() };
            self.vars = std::iter::once("t".to_string()).chain(free.iter().cloned()).collect();
            self.check_vars()?;
            self.semigroup = Some(true);
            return Ok(RingSpec::Semigroup { gens, free });
        }
        let field = match self.ident()?.as_str() {
            "QQ" => FieldSpec::Rationals,
            "GF" => {
                self.expect_sym("(")?;
                let p = self.small_int()?;
                self.expect_sym(")")?;
                FieldSpec::Prime(p)
            }
            other => return self.error(format!("unknown field '{other}'; use QQ or GF(p)")),
        };
        self.expect_sym("[")?;
        let vars = self.ident_list("]")?;
        if vars.is_empty() {
            return self.error("a ring needs at least one variable");
        }
        self.vars = vars.clone();
        self.check_vars()?;
        self.semigroup = Some(false);
        let relations = if self.is_word("mod") {
            self.pos += 1;
            self.expect_sym("(")?;
            let rels = self.expr_list()?;
            self.expect_sym(")")?;
            rels
        } else {
            Vec::new()
        };
        Ok(RingSpec::Poly { field, vars, relations })
    }

    fn check_vars(&self) -> Result<(), ParseError> {
        for (k, v) in self.vars.iter().enumerate() {
            if self.vars[..k].contains(v) || self.names.contains_key(v) {
                return self.error(format!("variable '{v}' is declared twice"));
            }
        }
        Ok(())
    }

    fn ident_list(&mut self, close: &str) -> Result<Vec<String>, ParseError> {
        let mut out = Vec::new();
        if self.eat_sym(close) {
            return Ok(out);
        }
        loop {
            out.push(self.ident()?);
            if self.eat_sym(close) {
                return Ok(out);
            }
            self.expect_sym(",")?;
        }
    }

    fn expr_list(&mut self) -> Result<Vec<Expr>, ParseError> {
        let mut out = vec![self.expr()?];
        while self.eat_sym(",") {
            out.push(self.expr()?);
        }
        Ok(out)
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat_sym("+") {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat_sym("-") {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat_sym("*") {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat_sym("/") {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat_sym("-") {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if self.eat_sym("^") {
            return Ok(Expr::Pow(Box::new(base), self.small_int()?));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek().clone() {
            Tok::Int(v) => {
                self.pos += 1;
                Ok(Expr::Int(v))
            }
            Tok::Ident(name) => {
                if !self.vars.contains(&name) && self.names.get(&name) != Some(&Kind::Elem) {
                    return self.error(format!("'{name}' is neither a ring variable nor a declared element"));
                }
                self.pos += 1;
                Ok(Expr::Var(name))
            }
            Tok::Sym("(") => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect_sym(")")?;
                Ok(e)
            }
            t => self.error(format!("expected a polynomial, found {}", describe(&t))),
        }
    }

    fn ideal_expr(&mut self) -> Result<IdealExpr, ParseError> {
        let mut lhs = self.ideal_term()?;
        loop {
            if self.eat_sym("+") {
                lhs = IdealExpr::Sum(Box::new(lhs), Box::new(self.ideal_term()?));
            } else if self.eat_sym("&") {
                lhs = IdealExpr::Meet(Box::new(lhs), Box::new(self.ideal_term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn ideal_term(&mut self) -> Result<IdealExpr, ParseError> {
        let mut lhs = self.ideal_pow()?;
        while self.eat_sym("*") {
            lhs = IdealExpr::Product(Box::new(lhs), Box::new(self.ideal_pow()?));
        }
        Ok(lhs)
    }

    fn ideal_pow(&mut self) -> Result<IdealExpr, ParseError> {
        let base = self.ideal_atom()?;
        if self.eat_sym("^") {
            return Ok(IdealExpr::Power(Box::new(base), self.small_int()?));
        }
        Ok(base)
    }

    fn ideal_atom(&mut self) -> Result<IdealExpr, ParseError> {
        if self.eat_sym("(") {
            let e = self.ideal_expr()?;
            self.expect_sym(")")?;
            return Ok(e);
        }
        let at = self.here();
        let name = self.ident()?;
        if name == "frob" && self.is_sym("(") {
            self.pos += 1;
            let e = self.ideal_expr()?;
            self.expect_sym(",")?;
            let n = self.small_int()?;
            self.expect_sym(")")?;
            return Ok(IdealExpr::Frobenius(Box::new(e), n));
        }
        if self.names.get(&name) != Some(&Kind::Ideal) {
            return Err(ParseError { line: at.0, col: at.1, message: format!("'{name}' is not a declared ideal") });
        }
        Ok(IdealExpr::Name(name))
    }

    fn task(&mut self) -> Result<Task, ParseError> {
        let at = self.here();
        let name = self.ident()?;
        let sig = match TASKS.iter().find(|t| t.name == name) {
            Some(s) => s,
            None => return Err(ParseError { line: at.0, col: at.1, message: format!("unknown task '{name}'") }),
        };
        if self.semigroup == Some(true) && !sig.semigroup {
            return Err(ParseError {
                line: at.0,
                col: at.1,
                message: format!("task '{name}' is not available over a semigroup ring"),
            });
        }
        let mut args = Vec::new();
        let mut kinds = Vec::new();
        while let Tok::Ident(a) = self.peek().clone() {
            if matches!(self.toks[self.pos + 1].tok, Tok::Sym("=")) {
                break;
            }
            let here = self.here();
            match self.names.get(&a) {
                Some(Kind::Ideal) => kinds.push((Kind::Ideal, here)),
                Some(Kind::Elem) => kinds.push((Kind::Elem, here)),
                _ => return self.error(format!("'{a}' is not a declared ideal or element")),
            }
            self.pos += 1;
            args.push(a);
        }
        check_arity(sig, &kinds, at)?;
        let mut options = Vec::new();
        while let Tok::Ident(key) = self.peek().clone() {
            let here = self.here();
            self.pos += 1;
            if !(OPTION_KEYS.contains(&key.as_str()) || key == "expect" || key.starts_with("expect_")) {
                return Err(ParseError { line: here.0, col: here.1, message: format!("unknown option '{key}'") });
            }
            if options.iter().any(|(k, _)| *k == key) {
                return Err(ParseError { line: here.0, col: here.1, message: format!("option '{key}' given twice") });
            }
            self.expect_sym("=")?;
            options.push((key, self.value()?));
        }
        Ok(Task { name, args, options })
    }

    fn signed(&mut self) -> Result<i64, ParseError> {
        let neg = self.eat_sym("-");
        let here = self.here();
        let v = self.int()?;
        let v = i64::try_from(v).map_err(|_| ParseError { line: here.0, col: here.1, message: "value out of range".into() })?;
        Ok(if neg { -v } else { v })
    }

    fn value(&mut self) -> Result<Value, ParseError> {
        match self.peek().clone() {
            Tok::Int(_) | Tok::Sym("-") => {
                let a = self.signed()?;
                if self.eat_sym("..") {
                    return Ok(Value::Range(a, self.signed()?));
                }
                Ok(Value::Int(a))
            }
            Tok::Ident(w) => {
                self.pos += 1;
                Ok(Value::Word(w))
            }
            Tok::Str(s) => {
                self.pos += 1;
                Ok(Value::Str(s))
            }
            Tok::Sym("[") => {
                self.pos += 1;
                let mut vs = Vec::new();
                if !self.eat_sym("]") {
                    loop {
                        vs.push(self.value()?);
                        if self.eat_sym("]") {
                            break;
                        }
                        self.expect_sym(",")?;
                    }
                }
                Ok(Value::List(vs))
            }
            t => self.error(format!("expected a value, found {}", describe(&t))),
        }
    }
}

fn check_arity(sig: &TaskSig, got: &[(Kind, (usize, usize))], at: (usize, usize)) -> Result<(), ParseError> {
    let fail = |(line, col): (usize, usize), message: String| Err(ParseError { line, col, message });
    let mut k = 0;
    for a in sig.args {
        match a {
            Arg::Ideal | Arg::Elem => {
                let want = if *a == Arg::Ideal { Kind::Ideal } else { Kind::Elem };
                match got.get(k) {
                    None => return fail(at, format!("task '{}' expects {} argument(s)", sig.name, sig.args.len())),
                    Some((kind, pos)) if *kind != want => {
                        let w = if want == Kind::Ideal { "an ideal" } else { "an element" };
                        return fail(*pos, format!("argument {} of '{}' must be {w}", k + 1, sig.name));
                    }
                    _ => k += 1,
                }
            }
            Arg::OptIdeal => {
                if let Some((kind, pos)) = got.get(k) {
                    if *kind != Kind::Ideal {
                        return fail(*pos, format!("argument {} of '{}' must be an ideal", k + 1, sig.name));
                    }
                    k += 1;
                }
            }
            Arg::Elems => {
                if got.len() <= k {
                    return fail(at, format!("task '{}' needs at least one element", sig.name));
                }
                while let Some((kind, pos)) = got.get(k) {
                    if *kind != Kind::Elem {
                        return fail(*pos, format!("argument {} of '{}' must be an element", k + 1, sig.name));
                    }
                    k += 1;
                }
            }
        }
    }
    if let Some((_, pos)) = got.get(k) {
        return fail(*pos, format!("too many arguments for '{}'", sig.name));
    }
    Ok(())
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("'{s}'"),
        Tok::Int(v) => format!("'{v}'"),
        Tok::Str(_) => "a string".into(),
        Tok::Sym(s) => format!("'{s}'"),
        Tok::Eof => "end of input".into(),
    }
}
