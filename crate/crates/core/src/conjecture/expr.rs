//! A small expression language for the conditions in the table data file.
//!
//! Values are exact rationals or booleans. Supported syntax: integer
//! literals, variables, `+ - * / %`, parentheses, comparisons `== != < <= >
//! >=` (chains such as `2 < i < 2*p-2` mean the conjunction of adjacent
//! comparisons), divisibility `a | b`, set membership `i in {1, 2*p-1}`,
//! `&& || !`, and `true` / `false`.

use std::collections::HashMap;
use std::fmt;

use num_rational::Ratio;
use num_traits::{Signed, Zero};

use crate::{Error, Result};

pub type Num = Ratio<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Value {
    Num(Num),
    Bool(bool),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Cmp {
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Node {
    Num(i64),
    Bool(bool),
    Var(String),
    Neg(Box<Node>),
    Not(Box<Node>),
    Arith(char, Box<Node>, Box<Node>),
    Chain(Box<Node>, Vec<(Cmp, Node)>),
    Divides(Box<Node>, Box<Node>),
    In(Box<Node>, Vec<Node>),
    And(Box<Node>, Box<Node>),
    Or(Box<Node>, Box<Node>),
}

/// A parsed expression together with its source text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    source: String,
    root: Node,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(i64),
    Ident(String),
    Op(&'static str),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    const OPS: [&str; 21] = [
        "&&", "||", "==", "!=", "<=", ">=", "<", ">", "+", "-", "*", "/", "%", "(", ")", "{", "}", ",", "!", "|", "=",
    ];
    let mut out = Vec::new();
    let b = s.as_bytes();
    let mut k = 0;
    'outer: while k < b.len() {
        let c = b[k] as char;
        if c.is_whitespace() {
            k += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = k;
            while k < b.len() && (b[k] as char).is_ascii_digit() {
                k += 1;
            }
            let n = s[start..k].parse().map_err(|_| Error::TableData(format!("bad number in `{s}`")))?;
            out.push(Tok::Num(n));
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = k;
            while k < b.len() && ((b[k] as char).is_ascii_alphanumeric() || b[k] == b'_') {
                k += 1;
            }
            out.push(Tok::Ident(s[start..k].to_string()));
            continue;
        }
        for op in OPS {
            if s[k..].starts_with(op) {
                if op == "=" {
                    return Err(Error::TableData(format!("use `==` for equality in `{s}`")));
                }
                out.push(Tok::Op(op));
                k += op.len();
                continue 'outer;
            }
        }
        return Err(Error::TableData(format!("unexpected character `{c}` in `{s}`")));
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn err(&self, what: &str) -> Error {
        Error::TableData(format!("{what} at token {} in `{}`", self.pos, self.src))
    }

    fn peek_op(&self) -> Option<&'static str> {
        match self.toks.get(self.pos) {
            Some(Tok::Op(o)) => Some(o),
            _ => None,
        }
    }

    fn eat(&mut self, op: &str) -> bool {
        if self.peek_op() == Some(op) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, op: &str) -> Result<()> {
        if self.eat(op) {
            Ok(())
        } else {
            Err(self.err(&format!("expected `{op}`")))
        }
    }

    fn or(&mut self) -> Result<Node> {
        let mut lhs = self.and()?;
        while self.eat("||") {
            lhs = Node::Or(Box::new(lhs), Box::new(self.and()?));
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Node> {
        let mut lhs = self.not()?;
        while self.eat("&&") {
            lhs = Node::And(Box::new(lhs), Box::new(self.not()?));
        }
        Ok(lhs)
    }

    fn not(&mut self) -> Result<Node> {
        if self.eat("!") {
            return Ok(Node::Not(Box::new(self.not()?)));
        }
        self.comparison()
    }

    fn comparison(&mut self) -> Result<Node> {
        let first = self.sum()?;
        if self.eat("|") {
            return Ok(Node::Divides(Box::new(first), Box::new(self.sum()?)));
        }
        if matches!(self.toks.get(self.pos), Some(Tok::Ident(w)) if w == "in") {
            self.pos += 1;
            self.expect("{")?;
            let mut items = vec![self.sum()?];
            while self.eat(",") {
                items.push(self.sum()?);
            }
            self.expect("}")?;
            return Ok(Node::In(Box::new(first), items));
        }
        let mut rest = Vec::new();
        loop {
            let cmp = match self.peek_op() {
                Some("==") => Cmp::Eq,
                Some("!=") => Cmp::Ne,
                Some("<") => Cmp::Lt,
                Some("<=") => Cmp::Le,
                Some(">") => Cmp::Gt,
                Some(">=") => Cmp::Ge,
                _ => break,
            };
            self.pos += 1;
            rest.push((cmp, self.sum()?));
        }
        Ok(if rest.is_empty() { first } else { Node::Chain(Box::new(first), rest) })
    }

    fn sum(&mut self) -> Result<Node> {
        let mut lhs = self.product()?;
        loop {
            let op = match self.peek_op() {
                Some("+") => '+',
                Some("-") => '-',
                _ => return Ok(lhs),
            };
            self.pos += 1;
            lhs = Node::Arith(op, Box::new(lhs), Box::new(self.product()?));
        }
    }

    fn product(&mut self) -> Result<Node> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek_op() {
                Some("*") => '*',
                Some("/") => '/',
                Some("%") => '%',
                _ => return Ok(lhs),
            };
            self.pos += 1;
            lhs = Node::Arith(op, Box::new(lhs), Box::new(self.unary()?));
        }
    }

    fn unary(&mut self) -> Result<Node> {
        if self.eat("-") {
            return Ok(Node::Neg(Box::new(self.unary()?)));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Node> {
        if self.eat("(") {
            let inner = self.or()?;
            self.expect(")")?;
            return Ok(inner);
        }
        let tok = self.toks.get(self.pos).cloned();
        self.pos += 1;
        match tok {
            Some(Tok::Num(n)) => Ok(Node::Num(n)),
            Some(Tok::Ident(w)) if w == "true" => Ok(Node::Bool(true)),
            Some(Tok::Ident(w)) if w == "false" => Ok(Node::Bool(false)),
            Some(Tok::Ident(w)) if w != "in" => Ok(Node::Var(w)),
            _ => {
                self.pos -= 1;
                Err(self.err("expected a value"))
            }
        }
    }
}

impl Expr {
    pub fn parse(source: &str) -> Result<Self> {
        let toks = tokenize(source)?;
        let mut p = Parser { toks, pos: 0, src: source };
        let root = p.or()?;
        if p.pos != p.toks.len() {
            return Err(p.err("trailing input"));
        }
        Ok(Expr { source: source.to_string(), root })
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    /// Names of the variables the expression reads.
    pub fn variables(&self) -> Vec<String> {
        fn walk(n: &Node, out: &mut Vec<String>) {
            match n {
                Node::Var(v) => {
                    if !out.contains(v) {
                        out.push(v.clone());
                    }
                }
                Node::Num(_) | Node::Bool(_) => {}
                Node::Neg(a) | Node::Not(a) => walk(a, out),
                Node::Arith(_, a, b) | Node::Divides(a, b) | Node::And(a, b) | Node::Or(a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
                Node::Chain(a, rest) => {
                    walk(a, out);
                    rest.iter().for_each(|(_, b)| walk(b, out));
                }
                Node::In(a, items) => {
                    walk(a, out);
                    items.iter().for_each(|b| walk(b, out));
                }
            }
        }
        let mut out = Vec::new();
        walk(&self.root, &mut out);
        out
    }

    pub fn eval(&self, env: &Env) -> Result<Value> {
        eval(&self.root, env, &self.source)
    }

    pub fn eval_bool(&self, env: &Env) -> Result<bool> {
        match self.eval(env)? {
            Value::Bool(b) => Ok(b),
            Value::Num(_) => Err(Error::TableData(format!("`{}` is not a condition", self.source))),
        }
    }

    pub fn eval_num(&self, env: &Env) -> Result<Num> {
        match self.eval(env)? {
            Value::Num(n) => Ok(n),
            Value::Bool(_) => Err(Error::TableData(format!("`{}` is not a number", self.source))),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.source)
    }
}

/// Variable bindings for evaluation.
#[derive(Clone, Debug, Default)]
pub struct Env {
    vars: HashMap<String, Num>,
}

impl Env {
    pub fn new() -> Self {
        Env::default()
    }

    pub fn set(&mut self, name: &str, v: i64) -> &mut Self {
        self.vars.insert(name.to_string(), Num::from_integer(v));
        self
    }

    pub fn with(mut self, name: &str, v: i64) -> Self {
        self.set(name, v);
        self
    }
}

fn eval(n: &Node, env: &Env, src: &str) -> Result<Value> {
    let num = |n: &Node| -> Result<Num> {
        match eval(n, env, src)? {
            Value::Num(x) => Ok(x),
            Value::Bool(_) => Err(Error::TableData(format!("boolean used as number in `{src}`"))),
        }
    };
    let boolean = |n: &Node| -> Result<bool> {
        match eval(n, env, src)? {
            Value::Bool(b) => Ok(b),
            Value::Num(_) => Err(Error::TableData(format!("number used as condition in `{src}`"))),
        }
    };
    Ok(match n {
        Node::Num(x) => Value::Num(Num::from_integer(*x)),
        Node::Bool(b) => Value::Bool(*b),
        Node::Var(v) => Value::Num(
            *env.vars.get(v).ok_or_else(|| Error::TableData(format!("unbound variable `{v}` in `{src}`")))?,
        ),
        Node::Neg(a) => Value::Num(-num(a)?),
        Node::Not(a) => Value::Bool(!boolean(a)?),
        Node::Arith(op, a, b) => {
            let (x, y) = (num(a)?, num(b)?);
            let div_zero = || Error::TableData(format!("division by zero in `{src}`"));
            Value::Num(match op {
                '+' => x + y,
                '-' => x - y,
                '*' => x * y,
                '/' => {
                    if y.is_zero() {
                        return Err(div_zero());
                    }
                    x / y
                }
                _ => {
                    if y.is_zero() {
                        return Err(div_zero());
                    }
                    let r = x % y;
                    if r.is_negative() {
                        r + y.abs()
                    } else {
                        r
                    }
                }
            })
        }
        Node::Chain(first, rest) => {
            let mut lhs = num(first)?;
            let mut ok = true;
            for (cmp, rhs) in rest {
                let r = num(rhs)?;
                ok &= match cmp {
                    Cmp::Eq => lhs == r,
                    Cmp::Ne => lhs != r,
                    Cmp::Lt => lhs < r,
                    Cmp::Le => lhs <= r,
                    Cmp::Gt => lhs > r,
                    Cmp::Ge => lhs >= r,
                };
                lhs = r;
            }
            Value::Bool(ok)
        }
        Node::Divides(a, b) => {
            let (x, y) = (num(a)?, num(b)?);
            Value::Bool(if x.is_zero() { y.is_zero() } else { (y / x).is_integer() })
        }
        Node::In(a, items) => {
            let x = num(a)?;
            let mut found = false;
            for it in items {
                found |= num(it)? == x;
            }
            Value::Bool(found)
        }
        Node::And(a, b) => Value::Bool(boolean(a)? && boolean(b)?),
        Node::Or(a, b) => Value::Bool(boolean(a)? || boolean(b)?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn holds(src: &str, env: &Env) -> bool {
        Expr::parse(src).unwrap().eval_bool(env).unwrap()
    }

    #[test]
    fn arithmetic_is_exact() {
        let env = Env::new().with("p", 2).with("q", 5);
        assert!(holds("p == (p+q+1)/4", &env));
        assert!(!holds("p <= (p+q)/4", &env));
        assert!(holds("(p+q) % 2 == 1", &env));
        assert_eq!(Expr::parse("(p+q)/4").unwrap().eval_num(&env).unwrap(), Num::new(7, 4));
    }

    #[test]
    fn chains_are_conjunctions() {
        let env = Env::new().with("i", 2).with("p", 2);
        assert!(holds("2 == i == 2*p-2", &env));
        assert!(!holds("2 < i < 2*p-2", &env));
        let env = Env::new().with("i", 4).with("p", 4);
        assert!(holds("2 < i < 2*p-2 && 2 | i", &env));
        assert!(!holds("2 < i < 2*p-2 && 2 | i", &Env::new().with("i", 3).with("p", 4)));
    }

    #[test]
    fn sets_and_logic() {
        let env = Env::new().with("i", 5).with("r", 5);
        assert!(holds("i in {1, 4, 5}", &env));
        assert!(holds("i in {r-1, r} && !(r == 4)", &env));
        assert!(holds("i == 1 || i == r", &env));
        assert!(holds("true", &env));
        assert!(holds("-1 % 4 == 3", &env));
    }

    #[test]
    fn errors_are_reported() {
        assert!(Expr::parse("i = 2").is_err());
        assert!(Expr::parse("i == ").is_err());
        assert!(Expr::parse("(i == 2").is_err());
        assert!(Expr::parse("i == 2 )").is_err());
        assert!(Expr::parse("x").unwrap().eval(&Env::new()).is_err());
        assert!(Expr::parse("1/0 == 1").unwrap().eval(&Env::new()).is_err());
        assert!(Expr::parse("i + 1").unwrap().eval_bool(&Env::new().with("i", 1)).is_err());
        assert_eq!(Expr::parse("2*p + i").unwrap().variables(), vec!["p", "i"]);
    }
}
