//! Word notation for Weyl group elements.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! word    := factor*
//! factor  := primary ( '^' '{' word '}' )*
//! primary := 's' DIGIT | 'T' | 'u' DIGIT | 'e' | '(' word ')'
//! ```
//!
//! Juxtaposition is the matrix product (`ab` acts as `a` after `b`), and `a^{b}` is `b⁻¹ a b`.
//! Conjugation binds tighter than juxtaposition. The empty word is the identity.

use thiserror::Error;

use super::GroupElement;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("syntax error at {position}: {message}")]
    SyntaxError { position: usize, message: String },
    #[error("unknown generator `{name}` at {position}")]
    UnknownGenerator { name: String, position: usize },
}

struct Parser<'a, F> {
    chars: Vec<char>,
    pos: usize,
    n: usize,
    resolve: &'a F,
}

impl<F> Parser<'_, F>
where
    F: Fn(&str) -> Option<GroupElement>,
{
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn syntax(&self, message: impl Into<String>) -> WordError {
        WordError::SyntaxError {
            position: self.pos,
            message: message.into(),
        }
    }

    fn expect(&mut self, c: char) -> Result<(), WordError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.syntax(format!("expected `{c}`")))
        }
    }

    fn word(&mut self) -> Result<GroupElement, WordError> {
        let mut acc = GroupElement::identity(self.n);
        while let Some(c) = self.peek() {
            if c == ')' || c == '}' {
                break;
            }
            let f = self.factor()?;
            acc = acc.mul(&f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<GroupElement, WordError> {
        let mut base = self.primary()?;
        while self.peek() == Some('^') {
            self.pos += 1;
            if self.peek() != Some('{') {
                return Err(self.syntax("conjugation exponent must be brace-delimited"));
            }
            self.pos += 1;
            let by = self.word()?;
            self.expect('}')?;
            base = base.conjugate_by(&by);
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<GroupElement, WordError> {
        let start = self.pos;
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let w = self.word()?;
                self.expect(')')?;
                Ok(w)
            }
            Some(c @ ('s' | 'u')) => {
                self.pos += 1;
                let Some(d) = self.chars.get(self.pos).filter(|d| d.is_ascii_digit()) else {
                    return Err(self.syntax(format!("`{c}` must be followed by a digit")));
                };
                let name = format!("{c}{d}");
                self.pos += 1;
                (self.resolve)(&name).ok_or(WordError::UnknownGenerator {
                    name,
                    position: start,
                })
            }
            Some('T') => {
                self.pos += 1;
                (self.resolve)("T").ok_or(WordError::UnknownGenerator {
                    name: "T".into(),
                    position: start,
                })
            }
            Some('e') => {
                self.pos += 1;
                Ok(GroupElement::identity(self.n))
            }
            Some(other) => Err(self.syntax(format!("unexpected `{other}`"))),
            None => Err(self.syntax("unexpected end of input")),
        }
    }
}

/// Parses `text` into a product, resolving generator names with `resolve`.
pub fn parse_with<F>(text: &str, n: usize, resolve: &F) -> Result<GroupElement, WordError>
where
    F: Fn(&str) -> Option<GroupElement>,
{
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
        n,
        resolve,
    };
    let w = p.word()?;
    if let Some(c) = p.peek() {
        return Err(p.syntax(format!("unbalanced `{c}`")));
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy(name: &str) -> Option<GroupElement> {
        // A2: s1, s2 on root coordinates
        match name {
            "s1" => Some(GroupElement::from_entries(2, vec![-1, 1, 0, 1])),
            "s2" => Some(GroupElement::from_entries(2, vec![1, 0, 1, -1])),
            _ => None,
        }
    }

    #[test]
    fn empty_word_is_identity() {
        assert!(parse_with("", 2, &toy).unwrap().is_identity());
        assert!(parse_with("  e ", 2, &toy).unwrap().is_identity());
    }

    #[test]
    fn whitespace_insensitive() {
        assert_eq!(
            parse_with("s1s2", 2, &toy).unwrap(),
            parse_with(" s1  s2 ", 2, &toy).unwrap()
        );
    }

    #[test]
    fn conjugation_binds_tighter() {
        let a = parse_with("s1 s2^{s1}", 2, &toy).unwrap();
        let b = parse_with("s1 (s1 s2 s1)", 2, &toy).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(
            parse_with("s1 s9", 2, &toy),
            Err(WordError::UnknownGenerator {
                name: "s9".into(),
                position: 3
            })
        );
        assert!(matches!(
            parse_with("s1^s2", 2, &toy),
            Err(WordError::SyntaxError { position: 3, .. })
        ));
        assert!(matches!(
            parse_with("s1 }", 2, &toy),
            Err(WordError::SyntaxError { .. })
        ));
        assert!(matches!(
            parse_with("(s1", 2, &toy),
            Err(WordError::SyntaxError { .. })
        ));
        assert!(matches!(
            parse_with("x", 2, &toy),
            Err(WordError::SyntaxError { position: 0, .. })
        ));
    }
}
