//! A small expression syntax for words given on the command line:
//! `x1 y1^-1 [x1,y1] (x2 y2)^2`. Juxtaposition is concatenation, `^`
//! takes integer powers, `[a,b]` is the commutator.

use cacime_core::{commutator, Word};

use crate::CliError;

pub fn parse_word(input: &str, names: &[String]) -> Result<Word, CliError> {
    let tokens = tokenize(input)?;
    let mut parser = Parser {
        tokens: &tokens,
        pos: 0,
        names,
    };
    let word = parser.expr()?;
    if parser.pos != tokens.len() {
        return Err(CliError::validation(format!(
            "unexpected {:?} in word expression",
            tokens[parser.pos]
        )));
    }
    Ok(word)
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Name(String),
    Int(i64),
    Caret,
    Comma,
    Open(char),
    Close(char),
}

fn tokenize(input: &str) -> Result<Vec<Token>, CliError> {
    let mut tokens = Vec::new();
    let mut chars = input.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' | '*' | '·' => {
                chars.next();
            }
            '^' => {
                chars.next();
                tokens.push(Token::Caret);
            }
            ',' => {
                chars.next();
                tokens.push(Token::Comma);
            }
            '[' | '(' => {
                chars.next();
                tokens.push(Token::Open(c));
            }
            ']' => {
                chars.next();
                tokens.push(Token::Close(']'));
            }
            ')' => {
                chars.next();
                tokens.push(Token::Close(')'));
            }
            '-' | '0'..='9' => {
                let mut s = String::new();
                s.push(c);
                chars.next();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        s.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                let v = s
                    .parse::<i64>()
                    .map_err(|_| CliError::validation(format!("bad integer {s:?}")))?;
                tokens.push(Token::Int(v));
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_alphanumeric() || d == '_' {
                        s.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                tokens.push(Token::Name(s));
            }
            other => {
                return Err(CliError::validation(format!(
                    "unexpected character {other:?} in word expression"
                )))
            }
        }
    }
    Ok(tokens)
}

struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
    names: &'a [String],
}

impl Parser<'_> {
    fn expr(&mut self) -> Result<Word, CliError> {
        let mut word = Word::identity();
        while let Some(tok) = self.tokens.get(self.pos) {
            match tok {
                Token::Comma | Token::Close(_) => break,
                _ => word = word.concat(&self.factor()?),
            }
        }
        Ok(word)
    }

    fn factor(&mut self) -> Result<Word, CliError> {
        let atom = self.atom()?;
        if let Some(Token::Caret) = self.tokens.get(self.pos) {
            self.pos += 1;
            match self.tokens.get(self.pos) {
                Some(Token::Int(v)) => {
                    self.pos += 1;
                    if v.unsigned_abs() > 10_000 {
                        return Err(CliError::validation(format!(
                            "exponent {v} is unreasonably large"
                        )));
                    }
                    Ok(atom.pow(*v))
                }
                other => Err(CliError::validation(format!(
                    "expected integer exponent after '^', found {other:?}"
                ))),
            }
        } else {
            Ok(atom)
        }
    }

    fn atom(&mut self) -> Result<Word, CliError> {
        match self.tokens.get(self.pos) {
            Some(Token::Name(name)) => {
                self.pos += 1;
                let gen = self.names.iter().position(|n| n == name).ok_or_else(|| {
                    CliError::validation(format!(
                        "unknown generator {name:?} (have: {})",
                        self.names.join(", ")
                    ))
                })?;
                Ok(Word::generator(gen))
            }
            Some(Token::Open('[')) => {
                self.pos += 1;
                let a = self.expr()?;
                self.expect(Token::Comma)?;
                let b = self.expr()?;
                self.expect(Token::Close(']'))?;
                Ok(commutator(&a, &b))
            }
            Some(Token::Open('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(Token::Close(')'))?;
                Ok(inner)
            }
            other => Err(CliError::validation(format!(
                "expected a generator, '[' or '(', found {other:?}"
            ))),
        }
    }

    fn expect(&mut self, tok: Token) -> Result<(), CliError> {
        if self.tokens.get(self.pos) == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(CliError::validation(format!(
                "expected {tok:?}, found {:?}",
                self.tokens.get(self.pos)
            )))
        }
    }
}
