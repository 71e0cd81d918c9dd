//! Syntax tree of the script language and its canonical printer.
//!
//! Printing is the inverse of parsing: `parse(print(s))` yields `s` again.

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Script {
    pub items: Vec<Item>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Item {
    Ring { name: String, spec: RingSpec },
    Ideal { name: String, def: IdealDef },
    Elem { name: String, value: Expr },
    Task(Task),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Rationals,
    Prime(u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingSpec {
    Poly { field: FieldSpec, vars: Vec<String>, relations: Vec<Expr> },
    /// `k[[t^a : a in S]]`, optionally with free power-series variables.
    Semigroup { gens: Vec<u32>, free: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdealDef {
    Gens(Vec<Expr>),
    Combination(IdealExpr),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdealExpr {
    Name(String),
    Sum(Box<IdealExpr>, Box<IdealExpr>),
    Meet(Box<IdealExpr>, Box<IdealExpr>),
    Product(Box<IdealExpr>, Box<IdealExpr>),
    Power(Box<IdealExpr>, u32),
    /// `frob(J, n)`: the ideal generated by the `n`-th powers of the generators.
    Frobenius(Box<IdealExpr>, u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(u64),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Task {
    pub name: String,
    pub args: Vec<String>,
    pub options: Vec<(String, Value)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Int(i64),
    Word(String),
    Str(String),
    Range(i64, i64),
    List(Vec<Value>),
}

impl Task {
    pub fn option(&self, key: &str) -> Option<&Value> {
        self.options.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }
}

impl Expr {
    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(..) => 3,
            Expr::Pow(..) => 4,
            Expr::Int(_) | Expr::Var(_) => 5,
        }
    }

    fn write_child(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // left-associative binary operators: the right operand binds one level tighter
        let binary = |f: &mut fmt::Formatter<'_>, a: &Expr, op: &str, b: &Expr, p: u8| {
            a.write_child(f, p)?;
            write!(f, " {op} ")?;
            b.write_child(f, p + 1)
        };
        match self {
            Expr::Int(v) => write!(f, "{v}"),
            Expr::Var(v) => write!(f, "{v}"),
            Expr::Neg(a) => {
                write!(f, "-")?;
                a.write_child(f, 3)
            }
            Expr::Add(a, b) => binary(f, a, "+", b, 1),
            Expr::Sub(a, b) => binary(f, a, "-", b, 1),
            Expr::Mul(a, b) => {
                a.write_child(f, 2)?;
                write!(f, "*")?;
                b.write_child(f, 3)
            }
            Expr::Div(a, b) => {
                a.write_child(f, 2)?;
                write!(f, "/")?;
                b.write_child(f, 3)
            }
            Expr::Pow(a, e) => {
                a.write_child(f, 5)?;
                write!(f, "^{e}")
            }
        }
    }
}

impl IdealExpr {
    fn precedence(&self) -> u8 {
        match self {
            IdealExpr::Sum(..) | IdealExpr::Meet(..) => 1,
            IdealExpr::Product(..) => 2,
            IdealExpr::Power(..) => 3,
            IdealExpr::Name(_) | IdealExpr::Frobenius(..) => 4,
        }
    }

    fn write_child(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

impl fmt::Display for IdealExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let binary = |f: &mut fmt::Formatter<'_>, a: &IdealExpr, op: &str, b: &IdealExpr, p: u8| {
            a.write_child(f, p)?;
            write!(f, " {op} ")?;
            b.write_child(f, p + 1)
        };
        match self {
            IdealExpr::Name(n) => write!(f, "{n}"),
            IdealExpr::Sum(a, b) => binary(f, a, "+", b, 1),
            IdealExpr::Meet(a, b) => binary(f, a, "&", b, 1),
            IdealExpr::Product(a, b) => binary(f, a, "*", b, 2),
            IdealExpr::Power(a, e) => {
                a.write_child(f, 4)?;
                write!(f, "^{e}")
            }
            IdealExpr::Frobenius(a, e) => write!(f, "frob({a}, {e})"),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "QQ"),
            FieldSpec::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

fn write_list<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[T]) -> fmt::Result {
    for (k, it) in items.iter().enumerate() {
        if k > 0 {
            write!(f, ", ")?;
        }
        write!(f, "{it}")?;
    }
    Ok(())
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Poly { field, vars, relations } => {
                write!(f, "{field}[{}]", vars.join(", "))?;
                if !relations.is_empty() {
                    write!(f, " mod (")?;
                    write_list(f, relations)?;
                    write!(f, ")")?;
                }
                Ok(())
            }
            RingSpec::Semigroup { gens, free } => {
                write!(f, "semigroup<")?;
                write_list(f, gens)?;
                write!(f, ">")?;
                if !free.is_empty() {
                    write!(f, "[{}]", free.join(", "))?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(v) => write!(f, "{v}"),
            Value::Word(w) => write!(f, "{w}"),
            Value::Str(s) => {
                write!(f, "\"")?;
                for c in s.chars() {
                    match c {
                        '"' => write!(f, "\\\"")?,
                        '\\' => write!(f, "\\\\")?,
                        '\n' => write!(f, "\\n")?,
                        c => write!(f, "{c}")?,
                    }
                }
                write!(f, "\"")
            }
            Value::Range(a, b) => write!(f, "{a}..{b}"),
            Value::List(vs) => {
                write!(f, "[")?;
                write_list(f, vs)?;
                write!(f, "]")
            }
        }
    }
}

impl fmt::Display for Task {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "task {}", self.name)?;
        for a in &self.args {
            write!(f, " {a}")?;
        }
        for (k, v) in &self.options {
            write!(f, " {k}={v}")?;
        }
        Ok(())
    }
}

impl fmt::Display for Item {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Item::Ring { name, spec } => write!(f, "ring {name} = {spec};"),
            Item::Ideal { name, def: IdealDef::Gens(gs) } => {
                write!(f, "ideal {name} = ")?;
                write_list(f, gs)?;
                write!(f, ";")
            }
            Item::Ideal { name, def: IdealDef::Combination(e) } => write!(f, "ideal {name} := {e};"),
            Item::Elem { name, value } => write!(f, "elem {name} = {value};"),
            Item::Task(t) => write!(f, "{t};"),
        }
    }
}

impl fmt::Display for Script {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for it in &self.items {
            writeln!(f, "{it}")?;
        }
        Ok(())
    }
}
