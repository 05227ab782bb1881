//! A small language for events.
//!
//! ```text
//! expr   := term (("|" | "∪") term)*
//! term   := diff (("&" | "∩") diff)*
//! diff   := factor ("\" factor)?
//! factor := "~" factor | "(" expr ")" | literal
//! ```
//!
//! Literals depend on the model. Coin tosses: `C(1:H, 3:T)`, point sets
//! `{HTH(T), (H)}`, `Omega`, `Empty`. The real line: `[a, b)`, point sets
//! `{1/2, -3}`, `Empty`. Finite spaces: label sets `{a, b}`, `Omega`,
//! `Empty`. Rationals are `p` or `p/q`. Whitespace is insignificant; `∖` is
//! accepted for `\` and `¬` for `~`.

use std::fmt;

use num::{BigInt, Signed, ToPrimitive};
use thiserror::Error;

use crate::events::{
    CoinEvent, CoinPoint, Event, EventError, FiniteEvent, GroundModel, IntervalEvent, ModelKind,
    Toss,
};
use crate::nafield::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Position {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DslError {
    #[error("{position}: expected {}, found {found}", expected.join(" or "))]
    Syntax {
        position: Position,
        expected: Vec<&'static str>,
        found: String,
    },
    #[error("{position}: {message}")]
    Semantic { position: Position, message: String },
}

impl DslError {
    pub fn position(&self) -> Position {
        match self {
            DslError::Syntax { position, .. } | DslError::Semantic { position, .. } => *position,
        }
    }

    fn semantic(position: Position, message: impl Into<String>) -> Self {
        DslError::Semantic {
            position,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EventAst {
    pub kind: AstKind,
    pub position: Position,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AstKind {
    Interval(Rational, Rational),
    Reals(Vec<Rational>),
    Cylinder(Vec<(u32, Toss)>),
    Points(Vec<CoinPoint>),
    Labels(Vec<String>),
    Omega,
    Empty,
    Union(Box<EventAst>, Box<EventAst>),
    Intersect(Box<EventAst>, Box<EventAst>),
    Difference(Box<EventAst>, Box<EventAst>),
    Complement(Box<EventAst>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    LBracket,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Colon,
    Slash,
    Union,
    Intersect,
    Minus,
    Tilde,
    Int(BigInt),
    Word(String),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::LBracket => f.write_str("`[`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::LBrace => f.write_str("`{`"),
            Tok::RBrace => f.write_str("`}`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Colon => f.write_str("`:`"),
            Tok::Slash => f.write_str("`/`"),
            Tok::Union => f.write_str("`|`"),
            Tok::Intersect => f.write_str("`&`"),
            Tok::Minus => f.write_str("`\\`"),
            Tok::Tilde => f.write_str("`~`"),
            Tok::Int(n) => write!(f, "number {n}"),
            Tok::Word(w) => write!(f, "`{w}`"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

fn lex(src: &str, first_line: usize) -> Result<Vec<(Tok, Position)>, DslError> {
    let mut out = Vec::new();
    let mut chars = src.chars().peekable();
    let (mut line, mut column) = (first_line, 1);
    while let Some(&c) = chars.peek() {
        let position = Position { line, column };
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
            c
        };
        let single = match c {
            '[' => Some(Tok::LBracket),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '{' => Some(Tok::LBrace),
            '}' => Some(Tok::RBrace),
            ',' => Some(Tok::Comma),
            ':' => Some(Tok::Colon),
            '/' => Some(Tok::Slash),
            '|' | '∪' => Some(Tok::Union),
            '&' | '∩' => Some(Tok::Intersect),
            '\\' | '∖' => Some(Tok::Minus),
            '~' | '¬' => Some(Tok::Tilde),
            _ => None,
        };
        if let Some(tok) = single {
            bump(&mut chars);
            out.push((tok, position));
            continue;
        }
        if c.is_whitespace() {
            bump(&mut chars);
            continue;
        }
        if c.is_ascii_digit() || c == '-' {
            let mut text = String::new();
            if c == '-' {
                bump(&mut chars);
                text.push('-');
            }
            while let Some(&d) = chars.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                text.push(d);
                bump(&mut chars);
            }
            if text == "-" {
                return Err(DslError::Syntax {
                    position,
                    expected: vec!["digits after `-`"],
                    found: describe_next(chars.peek()),
                });
            }
            if chars.peek() == Some(&'.') {
                return Err(DslError::semantic(
                    position,
                    "decimal literals are not exact rationals; write p/q",
                ));
            }
            out.push((Tok::Int(text.parse().expect("digits")), position));
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let mut word = String::new();
            while let Some(&d) = chars.peek() {
                if !(d.is_alphanumeric() || d == '_') {
                    break;
                }
                word.push(d);
                bump(&mut chars);
            }
            out.push((Tok::Word(word), position));
            continue;
        }
        return Err(DslError::Syntax {
            position,
            expected: vec!["an event expression"],
            found: format!("`{c}`"),
        });
    }
    out.push((Tok::End, Position { line, column }));
    Ok(out)
}

fn describe_next(c: Option<&char>) -> String {
    match c {
        Some(c) => format!("`{c}`"),
        None => "end of input".into(),
    }
}

struct Parser {
    toks: Vec<(Tok, Position)>,
    at: usize,
    model: ModelKind,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn position(&self) -> Position {
        self.toks[self.at].1
    }

    fn advance(&mut self) -> (Tok, Position) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn unexpected<T>(&self, expected: &[&'static str]) -> Result<T, DslError> {
        Err(DslError::Syntax {
            position: self.position(),
            expected: expected.to_vec(),
            found: self.peek().to_string(),
        })
    }

    fn expect(&mut self, tok: Tok, name: &'static str) -> Result<Position, DslError> {
        if *self.peek() == tok {
            Ok(self.advance().1)
        } else {
            self.unexpected(&[name])
        }
    }

    fn expr(&mut self) -> Result<EventAst, DslError> {
        let mut left = self.term()?;
        while *self.peek() == Tok::Union {
            let position = self.advance().1;
            let right = self.term()?;
            left = EventAst {
                kind: AstKind::Union(Box::new(left), Box::new(right)),
                position,
            };
        }
        Ok(left)
    }

    fn term(&mut self) -> Result<EventAst, DslError> {
        let mut left = self.diff()?;
        while *self.peek() == Tok::Intersect {
            let position = self.advance().1;
            let right = self.diff()?;
            left = EventAst {
                kind: AstKind::Intersect(Box::new(left), Box::new(right)),
                position,
            };
        }
        Ok(left)
    }

    fn diff(&mut self) -> Result<EventAst, DslError> {
        let left = self.factor()?;
        if *self.peek() == Tok::Minus {
            let position = self.advance().1;
            let right = self.factor()?;
            return Ok(EventAst {
                kind: AstKind::Difference(Box::new(left), Box::new(right)),
                position,
            });
        }
        Ok(left)
    }

    fn factor(&mut self) -> Result<EventAst, DslError> {
        let position = self.position();
        let kind = match self.peek().clone() {
            Tok::Tilde => {
                self.advance();
                if self.model == ModelKind::Interval {
                    return Err(DslError::semantic(
                        position,
                        "complement is not available in the interval model; use a difference",
                    ));
                }
                AstKind::Complement(Box::new(self.factor()?))
            }
            Tok::LParen => {
                self.advance();
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                return Ok(inner);
            }
            Tok::LBracket => {
                if self.model != ModelKind::Interval {
                    return Err(DslError::semantic(
                        position,
                        format!("interval literals are not available in the {} model", self.model),
                    ));
                }
                self.advance();
                let start = self.rational()?;
                self.expect(Tok::Comma, "`,`")?;
                let end = self.rational()?;
                self.expect(Tok::RParen, "`)`")?;
                if start >= end {
                    return Err(DslError::semantic(
                        position,
                        format!("empty interval [{start}, {end}): start must be below end"),
                    ));
                }
                AstKind::Interval(start, end)
            }
            Tok::LBrace => {
                self.advance();
                let kind = match self.model {
                    ModelKind::Coin => AstKind::Points(self.list(Parser::point)?),
                    ModelKind::Interval => AstKind::Reals(self.list(Parser::rational)?),
                    ModelKind::Finite => AstKind::Labels(self.list(Parser::label)?),
                };
                self.expect(Tok::RBrace, "`}`")?;
                kind
            }
            Tok::Word(w) if w == "Empty" => {
                self.advance();
                AstKind::Empty
            }
            Tok::Word(w) if w == "Omega" => {
                if self.model == ModelKind::Interval {
                    return Err(DslError::semantic(
                        position,
                        "the whole line is not a represented interval event",
                    ));
                }
                self.advance();
                AstKind::Omega
            }
            Tok::Word(w) if w == "C" && self.model == ModelKind::Coin => {
                self.advance();
                self.expect(Tok::LParen, "`(`")?;
                let constraints = self.list(Parser::constraint)?;
                self.expect(Tok::RParen, "`)`")?;
                let mut sorted = constraints.clone();
                sorted.sort();
                sorted.dedup();
                if let Some(w) = sorted.windows(2).find(|w| w[0].0 == w[1].0) {
                    return Err(DslError::semantic(
                        position,
                        format!("index {} constrained to both H and T", w[0].0),
                    ));
                }
                AstKind::Cylinder(sorted)
            }
            _ => return self.unexpected(&literal_names(self.model)),
        };
        Ok(EventAst { kind, position })
    }

    fn list<T>(&mut self, item: fn(&mut Parser) -> Result<T, DslError>) -> Result<Vec<T>, DslError> {
        let mut out = vec![item(self)?];
        while *self.peek() == Tok::Comma {
            self.advance();
            out.push(item(self)?);
        }
        Ok(out)
    }

    fn rational(&mut self) -> Result<Rational, DslError> {
        let Tok::Int(numer) = self.peek().clone() else {
            return self.unexpected(&["a rational number"]);
        };
        self.advance();
        if *self.peek() != Tok::Slash {
            return Ok(Rational::from_integer(numer));
        }
        self.advance();
        let position = self.position();
        let Tok::Int(denom) = self.peek().clone() else {
            return self.unexpected(&["a positive denominator"]);
        };
        self.advance();
        if !denom.is_positive() {
            return Err(DslError::semantic(position, "denominator must be positive"));
        }
        Ok(Rational::new(numer, denom))
    }

    fn toss(&mut self) -> Result<Toss, DslError> {
        match self.peek() {
            Tok::Word(w) if w == "H" => {
                self.advance();
                Ok(Toss::H)
            }
            Tok::Word(w) if w == "T" => {
                self.advance();
                Ok(Toss::T)
            }
            _ => self.unexpected(&["`H`", "`T`"]),
        }
    }

    fn constraint(&mut self) -> Result<(u32, Toss), DslError> {
        let position = self.position();
        let Tok::Int(index) = self.peek().clone() else {
            return self.unexpected(&["an index"]);
        };
        self.advance();
        let index = index
            .to_u32()
            .filter(|&i| i >= 1)
            .ok_or_else(|| DslError::semantic(position, format!("index {index} is not a positive 32-bit integer")))?;
        self.expect(Tok::Colon, "`:`")?;
        Ok((index, self.toss()?))
    }

    fn point(&mut self) -> Result<CoinPoint, DslError> {
        let position = self.position();
        let prefix = match self.peek().clone() {
            Tok::Word(w) => {
                self.advance();
                w.chars()
                    .map(Toss::from_char)
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(|| {
                        DslError::semantic(position, format!("point prefix `{w}` is not a word over H and T"))
                    })?
            }
            Tok::LParen => Vec::new(),
            _ => return self.unexpected(&["a point such as `HT(H)`"]),
        };
        self.expect(Tok::LParen, "`(`")?;
        let tail = self.toss()?;
        self.expect(Tok::RParen, "`)`")?;
        Ok(CoinPoint::new(prefix, tail))
    }

    fn label(&mut self) -> Result<String, DslError> {
        match self.peek().clone() {
            Tok::Word(w) => {
                self.advance();
                Ok(w)
            }
            _ => self.unexpected(&["a label"]),
        }
    }
}

fn literal_names(model: ModelKind) -> Vec<&'static str> {
    match model {
        ModelKind::Coin => vec!["`C(`", "`{`", "`Omega`", "`Empty`", "`~`", "`(`"],
        ModelKind::Interval => vec!["`[`", "`{`", "`Empty`", "`(`"],
        ModelKind::Finite => vec!["`{`", "`Omega`", "`Empty`", "`~`", "`(`"],
    }
}

/// Parses one expression for the given model.
pub fn parse_event(src: &str, model: ModelKind) -> Result<EventAst, DslError> {
    parse_at(src, model, 1)
}

fn parse_at(src: &str, model: ModelKind, first_line: usize) -> Result<EventAst, DslError> {
    let mut parser = Parser {
        toks: lex(src, first_line)?,
        at: 0,
        model,
    };
    let ast = parser.expr()?;
    if *parser.peek() != Tok::End {
        return parser.unexpected(&["an operator", "end of input"]);
    }
    Ok(ast)
}

/// Parses a corpus: one expression per line, `#` starts a comment, blank
/// lines are skipped. Returns `(line number, ast)` pairs.
pub fn parse_corpus(src: &str, model: ModelKind) -> Result<Vec<(usize, EventAst)>, DslError> {
    let mut out = Vec::new();
    for (k, raw) in src.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        out.push((k + 1, parse_at(line, model, k + 1)?));
    }
    Ok(out)
}

/// Builds the canonical event denoted by `ast` in `model`.
pub fn elaborate(ast: &EventAst, model: &GroundModel) -> Result<Event, DslError> {
    let at = |e: EventError| DslError::semantic(ast.position, e.to_string());
    let binary = |l: &EventAst, r: &EventAst| -> Result<(Event, Event), DslError> {
        Ok((elaborate(l, model)?, elaborate(r, model)?))
    };
    let wrong_model = || {
        DslError::semantic(
            ast.position,
            format!("literal is not available in the {} model", model.kind()),
        )
    };
    match (&ast.kind, model) {
        (AstKind::Empty, _) => Ok(model.empty_event()),
        (AstKind::Omega, _) => model.full_event().ok_or_else(wrong_model),
        (AstKind::Interval(a, b), GroundModel::Interval) => IntervalEvent::interval(a.clone(), b.clone())
            .map(Event::Interval)
            .map_err(at),
        (AstKind::Reals(xs), GroundModel::Interval) => {
            Ok(Event::Interval(IntervalEvent::points(xs.iter().cloned())))
        }
        (AstKind::Cylinder(c), GroundModel::Coin) => CoinEvent::cylinder(c).map(Event::Coin).map_err(at),
        (AstKind::Points(ps), GroundModel::Coin) => Ok(Event::Coin(CoinEvent::points(ps.iter().cloned()))),
        (AstKind::Labels(ls), GroundModel::Finite(space)) => {
            FiniteEvent::from_labels(space, ls.iter().map(String::as_str))
                .map(Event::Finite)
                .map_err(at)
        }
        (AstKind::Union(l, r), _) => {
            let (l, r) = binary(l, r)?;
            l.union(&r).map_err(at)
        }
        (AstKind::Intersect(l, r), _) => {
            let (l, r) = binary(l, r)?;
            l.intersect(&r).map_err(at)
        }
        (AstKind::Difference(l, r), _) => {
            let (l, r) = binary(l, r)?;
            l.difference(&r).map_err(at)
        }
        (AstKind::Complement(x), _) => elaborate(x, model)?.complement().map_err(at),
        _ => Err(wrong_model()),
    }
}

/// Parses and elaborates in one step.
pub fn parse_and_elaborate(src: &str, model: &GroundModel) -> Result<Event, DslError> {
    elaborate(&parse_event(src, model.kind())?, model)
}

fn join<T: fmt::Display>(items: impl IntoIterator<Item = T>) -> String {
    items
        .into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

fn compose(mut parts: Vec<String>, minus: Option<String>) -> String {
    if parts.is_empty() {
        parts.push("Empty".into());
    }
    let body = parts.join(" | ");
    match minus {
        None => body,
        Some(m) if parts.len() == 1 => format!("{body} \\ {{{m}}}"),
        Some(m) => format!("({body}) \\ {{{m}}}"),
    }
}

/// Canonical text of an event; parsing and elaborating it gives the event
/// back.
pub fn render(e: &Event) -> String {
    match e {
        Event::Coin(c) => {
            let mut parts: Vec<String> = if c.indices().is_empty() && c.atom_count() == 1 {
                vec!["Omega".into()]
            } else {
                c.atoms()
                    .map(|a| format!("C({})", join(a.iter().map(|(i, t)| format!("{i}:{t}")))))
                    .collect()
            };
            if !c.plus().is_empty() {
                parts.push(format!("{{{}}}", join(c.plus())));
            }
            let minus = (!c.minus().is_empty()).then(|| join(c.minus()));
            compose(parts, minus)
        }
        Event::Interval(i) => {
            let mut parts: Vec<String> = i
                .intervals()
                .iter()
                .map(|(a, b)| format!("[{a}, {b})"))
                .collect();
            if !i.plus().is_empty() {
                parts.push(format!("{{{}}}", join(i.plus())));
            }
            let minus = (!i.minus().is_empty()).then(|| join(i.minus()));
            compose(parts, minus)
        }
        Event::Finite(f) => {
            if f.is_empty() {
                "Empty".into()
            } else {
                format!("{{{}}}", join(f.labels()))
            }
        }
    }
}
