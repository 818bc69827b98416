use std::fmt;

use super::parser::ParseError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TokenKind {
    /// Identifiers, variables, numbers and the reserved words.
    Ident(String),
    /// Comparison operators usable as function symbols: `=<`, `<`, `>`, `>=`.
    Op(String),
    LParen,
    RParen,
    Comma,
    Dot,
    ColonColon,
    Arrow,
    NegArrow,
    Neck,
    Define,
    Question,
    Eof,
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TokenKind::Ident(s) | TokenKind::Op(s) => write!(f, "`{s}`"),
            TokenKind::LParen => f.write_str("`(`"),
            TokenKind::RParen => f.write_str("`)`"),
            TokenKind::Comma => f.write_str("`,`"),
            TokenKind::Dot => f.write_str("`.`"),
            TokenKind::ColonColon => f.write_str("`::`"),
            TokenKind::Arrow => f.write_str("`==>`"),
            TokenKind::NegArrow => f.write_str("`=\\=>`"),
            TokenKind::Neck => f.write_str("`:-`"),
            TokenKind::Define => f.write_str("`:=`"),
            TokenKind::Question => f.write_str("`?`"),
            TokenKind::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub line: usize,
    pub col: usize,
}

// Longest spellings first.
const PUNCT: &[(&str, TokenKind)] = &[
    ("=\\=>", TokenKind::NegArrow),
    ("==>", TokenKind::Arrow),
    ("::", TokenKind::ColonColon),
    (":-", TokenKind::Neck),
    (":=", TokenKind::Define),
];

const OPS: &[&str] = &["=<", ">=", "<", ">"];

pub fn tokenize(src: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);

    let starts_with = |i: usize, pat: &str| {
        (i..)
            .zip(pat.chars())
            .all(|(k, c)| chars.get(k) == Some(&c))
    };

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
        if c == '%' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let (tl, tc) = (line, col);
        let mut push = |kind: TokenKind, len: usize, i: &mut usize, col: &mut usize| {
            out.push(Token {
                kind,
                line: tl,
                col: tc,
            });
            *i += len;
            *col += len;
        };

        if let Some((pat, kind)) = PUNCT.iter().find(|(p, _)| starts_with(i, p)) {
            push(kind.clone(), pat.chars().count(), &mut i, &mut col);
            continue;
        }
        if let Some(op) = OPS.iter().find(|p| starts_with(i, p)) {
            push(TokenKind::Op(op.to_string()), op.len(), &mut i, &mut col);
            continue;
        }
        match c {
            '(' => push(TokenKind::LParen, 1, &mut i, &mut col),
            ')' => push(TokenKind::RParen, 1, &mut i, &mut col),
            ',' => push(TokenKind::Comma, 1, &mut i, &mut col),
            '.' => push(TokenKind::Dot, 1, &mut i, &mut col),
            '?' => push(TokenKind::Question, 1, &mut i, &mut col),
            _ if is_ident_char(c)
                || (c == '-' && chars.get(i + 1).is_some_and(char::is_ascii_digit)) =>
            {
                let mut j = i + 1;
                while j < chars.len() && is_ident_char(chars[j]) {
                    j += 1;
                }
                let numeric = chars[i..j]
                    .iter()
                    .enumerate()
                    .all(|(k, ch)| ch.is_ascii_digit() || (k == 0 && *ch == '-'));
                // A decimal point only belongs to a number when a digit follows;
                // otherwise it ends the clause.
                if numeric
                    && chars.get(j) == Some(&'.')
                    && chars.get(j + 1).is_some_and(char::is_ascii_digit)
                {
                    j += 1;
                    while j < chars.len() && chars[j].is_ascii_digit() {
                        j += 1;
                    }
                }
                let text: String = chars[i..j].iter().collect();
                let len = j - i;
                push(TokenKind::Ident(text), len, &mut i, &mut col);
            }
            _ => {
                return Err(ParseError::Syntax {
                    line,
                    col,
                    found: format!("`{c}`"),
                    expected: vec!["a token".into()],
                })
            }
        }
    }
    out.push(Token {
        kind: TokenKind::Eof,
        line,
        col,
    });
    Ok(out)
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}
