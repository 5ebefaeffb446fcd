//! Lexer, parser and pretty-printer for spec files.

use std::fmt;

use num_bigint::BigInt;

use crate::error::{DpcError, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Tensor,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Name(String),
    /// `e(v)`, one-based.
    Idem(u32),
    Pow(Box<Expr>, u32),
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenDecl {
    pub name: String,
    /// One-based `(source, target)`.
    pub ends: Option<(u32, u32)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgStmt {
    Base(u32),
    Gens(Vec<GenDecl>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub left: String,
    pub right: String,
    pub value: Expr,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RoidStmt {
    Kind(String),
    Basis(Vec<String>),
    Product(Entry),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Section {
    Algebra(Vec<AlgStmt>),
    Options(Vec<(String, Expr)>),
    DBracket(Vec<Entry>),
    Algebroid(Vec<RoidStmt>),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SpecFile {
    pub sections: Vec<Section>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(&'static str),
    Eof,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

const SYMBOLS: [&str; 15] = ["->", "{", "}", "(", ")", "=", ";", ",", ":", "#", "*", "/", "^", "+", "-"];

fn lex(text: &str) -> Result<Vec<Token>> {
    let mut out = vec![];
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '/' && chars.get(i + 1) == Some(&'/') {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let start = (line, col);
        if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                s.push(chars[i]);
                i += 1;
                col += 1;
            }
            out.push(Token { tok: Tok::Ident(s), line: start.0, col: start.1 });
            continue;
        }
        if c.is_ascii_digit() {
            let mut s = String::new();
            while i < chars.len() && chars[i].is_ascii_digit() {
                s.push(chars[i]);
                i += 1;
                col += 1;
            }
            out.push(Token { tok: Tok::Int(s.parse().expect("digits")), line: start.0, col: start.1 });
            continue;
        }
        let rest: String = chars[i..chars.len().min(i + 2)].iter().collect();
        let Some(sym) = SYMBOLS.iter().find(|s| rest.starts_with(**s)) else {
            return Err(DpcError::Parse { line, col, msg: format!("unexpected character '{c}'") });
        };
        i += sym.len();
        col += sym.len();
        out.push(Token { tok: Tok::Sym(sym), line: start.0, col: start.1 });
    }
    out.push(Token { tok: Tok::Eof, line, col });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("'{s}'"),
        Tok::Int(n) => format!("'{n}'"),
        Tok::Sym(s) => format!("'{s}'"),
        Tok::Eof => "end of input".into(),
    }
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek2(&self) -> &Tok {
        &self.toks[(self.pos + 1).min(self.toks.len() - 1)].tok
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        let t = &self.toks[self.pos];
        Err(DpcError::Parse { line: t.line, col: t.col, msg: msg.into() })
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, s: &str) -> bool {
        if matches!(self.peek(), Tok::Sym(x) if *x == s) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<()> {
        if self.eat(s) {
            Ok(())
        } else {
            self.err(format!("expected '{s}', found {}", describe(self.peek())))
        }
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            t => self.err(format!("expected a name, found {}", describe(&t))),
        }
    }

    fn small_int(&mut self) -> Result<u32> {
        match self.peek().clone() {
            Tok::Int(n) => match u32::try_from(&n) {
                Ok(v) => {
                    self.bump();
                    Ok(v)
                }
                Err(_) => self.err("integer too large"),
            },
            t => self.err(format!("expected an integer, found {}", describe(&t))),
        }
    }

    fn file(&mut self) -> Result<SpecFile> {
        let mut sections = vec![];
        while *self.peek() != Tok::Eof {
            let kw = self.ident()?;
            self.expect("{")?;
            let s = match kw.as_str() {
                "algebra" => Section::Algebra(self.block(Self::alg_stmt)?),
                "options" => Section::Options(self.block(|p| {
                    let n = p.ident()?;
                    p.expect("=")?;
                    Ok((n, p.expr()?))
                })?),
                "dbracket" => Section::DBracket(self.block(Self::entry)?),
                "algebroid" => Section::Algebroid(self.block(Self::roid_stmt)?),
                _ => {
                    self.pos -= 2;
                    return self.err(format!("unknown section '{kw}'"));
                }
            };
            sections.push(s);
        }
        Ok(SpecFile { sections })
    }

    /// Statements up to the closing brace, separated by optional `;`.
    fn block<T>(&mut self, mut item: impl FnMut(&mut Self) -> Result<T>) -> Result<Vec<T>> {
        let mut out = vec![];
        loop {
            while self.eat(";") {}
            if self.eat("}") {
                return Ok(out);
            }
            if *self.peek() == Tok::Eof {
                return self.err("unterminated section, expected '}'");
            }
            out.push(item(self)?);
        }
    }

    fn alg_stmt(&mut self) -> Result<AlgStmt> {
        let kw = self.ident()?;
        self.expect("=")?;
        match kw.as_str() {
            "base" => Ok(AlgStmt::Base(self.small_int()?)),
            "gens" => {
                let mut gens = vec![];
                if matches!(self.peek(), Tok::Ident(_)) {
                    loop {
                        let name = self.ident()?;
                        let ends = if self.eat(":") {
                            let s = self.small_int()?;
                            self.expect("->")?;
                            Some((s, self.small_int()?))
                        } else {
                            None
                        };
                        gens.push(GenDecl { name, ends });
                        if !self.eat(",") {
                            break;
                        }
                    }
                }
                Ok(AlgStmt::Gens(gens))
            }
            _ => {
                self.pos -= 2;
                self.err(format!("unknown algebra field '{kw}'"))
            }
        }
    }

    fn entry(&mut self) -> Result<Entry> {
        let left = self.ident()?;
        self.expect(",")?;
        let right = self.ident()?;
        self.expect("=")?;
        Ok(Entry { left, right, value: self.expr()? })
    }

    fn roid_stmt(&mut self) -> Result<RoidStmt> {
        if matches!(self.peek2(), Tok::Sym(",")) {
            return Ok(RoidStmt::Product(self.entry()?));
        }
        let kw = self.ident()?;
        self.expect("=")?;
        match kw.as_str() {
            "kind" => Ok(RoidStmt::Kind(self.ident()?)),
            "basis" => {
                let mut names = vec![self.ident()?];
                while self.eat(",") {
                    names.push(self.ident()?);
                }
                Ok(RoidStmt::Basis(names))
            }
            _ => {
                self.pos -= 2;
                self.err(format!("unknown algebroid field '{kw}'"))
            }
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut e = self.term()?;
        loop {
            let op = if self.eat("+") {
                BinOp::Add
            } else if self.eat("-") {
                BinOp::Sub
            } else {
                return Ok(e);
            };
            e = Expr::Bin(op, Box::new(e), Box::new(self.term()?));
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut e = self.tens()?;
        loop {
            let op = if self.eat("*") {
                BinOp::Mul
            } else if self.eat("/") {
                BinOp::Div
            } else {
                return Ok(e);
            };
            e = Expr::Bin(op, Box::new(e), Box::new(self.tens()?));
        }
    }

    fn tens(&mut self) -> Result<Expr> {
        let mut e = self.unary()?;
        while self.eat("#") {
            e = Expr::Bin(BinOp::Tensor, Box::new(e), Box::new(self.unary()?));
        }
        Ok(e)
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat("-") {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let a = self.atom()?;
        if self.eat("^") {
            return Ok(Expr::Pow(Box::new(a), self.small_int()?));
        }
        Ok(a)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(Expr::Int(n))
            }
            Tok::Ident(s) => {
                self.bump();
                if s == "e" && self.eat("(") {
                    let v = self.small_int()?;
                    self.expect(")")?;
                    return Ok(Expr::Idem(v));
                }
                Ok(Expr::Name(s))
            }
            Tok::Sym("(") => {
                self.bump();
                let e = self.expr()?;
                self.expect(")")?;
                Ok(e)
            }
            t => self.err(format!("expected an expression, found {}", describe(&t))),
        }
    }
}

pub fn parse_spec(text: &str) -> Result<SpecFile> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    p.file()
}

fn prec(e: &Expr) -> u8 {
    match e {
        Expr::Bin(BinOp::Add | BinOp::Sub, ..) => 1,
        Expr::Bin(BinOp::Mul | BinOp::Div, ..) => 2,
        Expr::Bin(BinOp::Tensor, ..) => 3,
        Expr::Neg(_) => 4,
        Expr::Pow(..) => 5,
        _ => 6,
    }
}

fn write_at(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
    if prec(e) < min {
        write!(f, "(")?;
        write!(f, "{e}")?;
        write!(f, ")")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Name(s) => write!(f, "{s}"),
            Expr::Idem(v) => write!(f, "e({v})"),
            Expr::Pow(b, n) => {
                write_at(f, b, 6)?;
                write!(f, "^{n}")
            }
            Expr::Neg(x) => {
                write!(f, "-")?;
                write_at(f, x, 4)
            }
            Expr::Bin(op, a, b) => {
                let p = prec(self);
                let s = match op {
                    BinOp::Add => " + ",
                    BinOp::Sub => " - ",
                    BinOp::Mul => "*",
                    BinOp::Div => "/",
                    BinOp::Tensor => "#",
                };
                write_at(f, a, p)?;
                write!(f, "{s}")?;
                write_at(f, b, p + 1)
            }
        }
    }
}

impl fmt::Display for SpecFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, s) in self.sections.iter().enumerate() {
            if n > 0 {
                writeln!(f)?;
            }
            let (name, lines): (&str, Vec<String>) = match s {
                Section::Algebra(st) => (
                    "algebra",
                    st.iter()
                        .map(|x| match x {
                            AlgStmt::Base(b) => format!("base = {b}"),
                            AlgStmt::Gens(g) => {
                                let gs: Vec<String> = g
                                    .iter()
                                    .map(|d| match d.ends {
                                        Some((a, b)) => format!("{}: {a} -> {b}", d.name),
                                        None => d.name.clone(),
                                    })
                                    .collect();
                                format!("gens = {}", gs.join(", "))
                            }
                        })
                        .collect(),
                ),
                Section::Options(o) => ("options", o.iter().map(|(k, v)| format!("{k} = {v}")).collect()),
                Section::DBracket(es) => {
                    ("dbracket", es.iter().map(|e| format!("{},{} = {}", e.left, e.right, e.value)).collect())
                }
                Section::Algebroid(st) => (
                    "algebroid",
                    st.iter()
                        .map(|x| match x {
                            RoidStmt::Kind(k) => format!("kind = {k}"),
                            RoidStmt::Basis(b) => format!("basis = {}", b.join(", ")),
                            RoidStmt::Product(e) => format!("{},{} = {}", e.left, e.right, e.value),
                        })
                        .collect(),
                ),
            };
            writeln!(f, "{name} {{")?;
            for l in lines {
                writeln!(f, "    {l};")?;
            }
            writeln!(f, "}}")?;
        }
        Ok(())
    }
}
