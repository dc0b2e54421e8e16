use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    True,
    False,
    Eps,
    Back,
    Bang,
    Amp,
    Pipe,
    Lt,
    Gt,
    LBrack,
    RBrack,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Question,
    At,
    Semi,
    Plus,
    Star,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Ident(name) => return write!(f, "identifier `{name}`"),
            Tok::True => "`true`",
            Tok::False => "`false`",
            Tok::Eps => "`eps`",
            Tok::Back => "`back`",
            Tok::Bang => "`!`",
            Tok::Amp => "`&`",
            Tok::Pipe => "`|`",
            Tok::Lt => "`<`",
            Tok::Gt => "`>`",
            Tok::LBrack => "`[`",
            Tok::RBrack => "`]`",
            Tok::LParen => "`(`",
            Tok::RParen => "`)`",
            Tok::LBrace => "`{`",
            Tok::RBrace => "`}`",
            Tok::Question => "`?`",
            Tok::At => "`@`",
            Tok::Semi => "`;`",
            Tok::Plus => "`+`",
            Tok::Star => "`*`",
            Tok::End => "end of input",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spanned {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

/// A syntax error at a 1-based line and column.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{column}: {message}")]
pub struct SyntaxError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

pub fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub fn tokenize(text: &str) -> Result<Vec<Spanned>, SyntaxError> {
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l, col) = (line, column);
        let single = |tok| Spanned {
            tok,
            line: l,
            column: col,
        };
        if c == '\n' {
            chars.next();
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            column += 1;
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut word = String::new();
            while let Some(&d) = chars.peek() {
                if d.is_ascii_alphanumeric() || d == '_' {
                    word.push(d);
                    chars.next();
                    column += 1;
                } else {
                    break;
                }
            }
            let tok = match word.as_str() {
                "true" => Tok::True,
                "false" => Tok::False,
                "eps" => Tok::Eps,
                "back" => Tok::Back,
                _ => Tok::Ident(word),
            };
            out.push(single(tok));
            continue;
        }
        let tok = match c {
            '!' => Tok::Bang,
            '&' => Tok::Amp,
            '|' => Tok::Pipe,
            '<' => Tok::Lt,
            '>' => Tok::Gt,
            '[' => Tok::LBrack,
            ']' => Tok::RBrack,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '{' => Tok::LBrace,
            '}' => Tok::RBrace,
            '?' => Tok::Question,
            '@' => Tok::At,
            ';' => Tok::Semi,
            '+' => Tok::Plus,
            '*' => Tok::Star,
            other => {
                return Err(SyntaxError {
                    line,
                    column,
                    message: format!("unexpected character `{other}`"),
                })
            }
        };
        chars.next();
        column += 1;
        out.push(single(tok));
    }
    out.push(Spanned {
        tok: Tok::End,
        line,
        column,
    });
    Ok(out)
}
