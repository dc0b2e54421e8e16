use super::lexer::is_ident;
use super::FrontendError;
use crate::semantics::Trace;
use crate::syntax::Interpretation;

const RESERVED: [&str; 4] = ["true", "false", "eps", "back"];

/// One instant per line, atoms separated by whitespace, `-` for the empty
/// instant; `#` starts a comment and blank lines are skipped.
pub fn parse_trace(text: &str) -> Result<Trace, FrontendError> {
    let mut instants = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut instant = Interpretation::new();
        if line != "-" {
            for word in line.split_whitespace() {
                if !is_ident(word) || RESERVED.contains(&word) {
                    return Err(FrontendError::Trace {
                        line: n + 1,
                        message: format!("`{word}` is not an atom name"),
                    });
                }
                instant.insert(word.to_string());
            }
        }
        instants.push(instant);
    }
    Trace::new(instants).map_err(|_| FrontendError::EmptyTrace)
}
