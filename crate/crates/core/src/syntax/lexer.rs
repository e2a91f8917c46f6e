use std::fmt;

/// 1-based line and column.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Num(u64),
    /// `$i`, `$true`, `$forall`, ...
    Dollar(String),
    Sym(&'static str),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Num(n) => write!(f, "`{n}`"),
            Tok::Dollar(s) => write!(f, "`${s}`"),
            Tok::Sym(s) => write!(f, "`{s}`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub pos: Pos,
}

// Longest first.
const SYMBOLS: &[&str] =
    &["<->", ":=", "->", "~", "&", "|", "(", ")", "[", "]", "{", "}", ",", ":", "!", "?", "^", "\\", ">", ".", "-"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LexError {
    pub pos: Pos,
    pub found: char,
}

fn take<'a>(n: usize, rest: &mut &'a str, col: &mut usize) -> &'a str {
    let (a, b) = rest.split_at(n);
    *col += a.chars().count();
    *rest = b;
    a
}

pub fn lex(src: &str) -> Result<Vec<Token>, LexError> {
    let mut out = Vec::new();
    let (mut line, mut col) = (1, 1);
    let mut rest = src;
    while let Some(c) = rest.chars().next() {
        let pos = Pos { line, col };
        if c == '\n' {
            line += 1;
            col = 1;
            rest = &rest[1..];
        } else if c.is_whitespace() {
            take(c.len_utf8(), &mut rest, &mut col);
        } else if c == '%' {
            let n = rest.find('\n').unwrap_or(rest.len());
            take(n, &mut rest, &mut col);
        } else if c.is_ascii_alphabetic() || c == '_' {
            let n = rest.find(|c: char| !(c.is_ascii_alphanumeric() || c == '_')).unwrap_or(rest.len());
            let s = take(n, &mut rest, &mut col);
            out.push(Token { tok: Tok::Ident(s.to_string()), pos });
        } else if c.is_ascii_digit() {
            let n = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
            let s = take(n, &mut rest, &mut col);
            let v = s.parse().map_err(|_| LexError { pos, found: c })?;
            out.push(Token { tok: Tok::Num(v), pos });
        } else if c == '$' {
            let body = &rest[1..];
            let n = body.find(|c: char| !(c.is_ascii_alphanumeric() || c == '_')).unwrap_or(body.len());
            if n == 0 {
                return Err(LexError { pos, found: c });
            }
            let s = take(n + 1, &mut rest, &mut col);
            out.push(Token { tok: Tok::Dollar(s[1..].to_string()), pos });
        } else if let Some(sym) = SYMBOLS.iter().find(|s| rest.starts_with(**s)) {
            take(sym.len(), &mut rest, &mut col);
            out.push(Token { tok: Tok::Sym(sym), pos });
        } else {
            return Err(LexError { pos, found: c });
        }
    }
    out.push(Token { tok: Tok::Eof, pos: Pos { line, col } });
    Ok(out)
}
