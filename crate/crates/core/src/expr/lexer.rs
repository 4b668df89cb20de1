use super::ExprError;

#[derive(Debug, Clone, PartialEq)]
pub enum Token {
    Num(f64),
    Ident(String),
    Op(char),
    LParen,
    RParen,
    Comma,
}

/// A token and the byte offset where it starts.
#[derive(Debug, Clone, PartialEq)]
pub struct Spanned {
    pub token: Token,
    pub offset: usize,
}

pub fn tokenize(source: &str) -> Result<Vec<Spanned>, ExprError> {
    let bytes = source.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' | b'-' | b'*' | b'/' | b'^' => {
                out.push(Spanned { token: Token::Op(c as char), offset: start });
                i += 1;
            }
            b'(' => {
                out.push(Spanned { token: Token::LParen, offset: start });
                i += 1;
            }
            b')' => {
                out.push(Spanned { token: Token::RParen, offset: start });
                i += 1;
            }
            b',' => {
                out.push(Spanned { token: Token::Comma, offset: start });
                i += 1;
            }
            b'0'..=b'9' | b'.' => {
                i = scan_number(bytes, i)?;
                let text = &source[start..i];
                let value: f64 = text.parse().map_err(|_| ExprError::Lex {
                    offset: start,
                    found: text.to_string(),
                })?;
                if !value.is_finite() {
                    return Err(ExprError::Lex { offset: start, found: text.to_string() });
                }
                // "2x" and friends: no implicit multiplication
                if i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    return Err(ExprError::Lex {
                        offset: i,
                        found: char_at(source, i),
                    });
                }
                out.push(Spanned { token: Token::Num(value), offset: start });
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push(Spanned {
                    token: Token::Ident(source[start..i].to_string()),
                    offset: start,
                });
            }
            _ => {
                return Err(ExprError::Lex { offset: start, found: char_at(source, start) });
            }
        }
    }
    Ok(out)
}

fn char_at(source: &str, offset: usize) -> String {
    source[offset..].chars().next().map(String::from).unwrap_or_default()
}

fn scan_number(bytes: &[u8], mut i: usize) -> Result<usize, ExprError> {
    let start = i;
    let mut digits = 0;
    while i < bytes.len() && bytes[i].is_ascii_digit() {
        i += 1;
        digits += 1;
    }
    if i < bytes.len() && bytes[i] == b'.' {
        i += 1;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
            digits += 1;
        }
    }
    if digits == 0 {
        return Err(ExprError::Lex { offset: start, found: ".".into() });
    }
    if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
        let mut j = i + 1;
        if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
            j += 1;
        }
        if j < bytes.len() && bytes[j].is_ascii_digit() {
            while j < bytes.len() && bytes[j].is_ascii_digit() {
                j += 1;
            }
            i = j;
        }
    }
    Ok(i)
}
