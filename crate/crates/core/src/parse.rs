//! Recursive-descent parser for the presentation file grammar.
//!
//! ```text
//! presentation := '<' genlist '|' relatorlist '>' markerline*
//! genlist      := name (',' name)*
//! relatorlist  := [ word (',' word)* ]
//! markerline   := 'meridian' name ':' word
//! word         := factor ('*' factor)*
//! factor       := (name | '1' | '(' word ')') ['^' integer]
//! ```
//!
//! Whitespace is insignificant and `#` starts a comment running to the end
//! of the line.

use crate::error::ParseError;
use crate::presentation::Presentation;
use crate::word::{validate_name, Alphabet, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    LAngle,
    RAngle,
    Pipe,
    Comma,
    Star,
    Caret,
    LParen,
    RParen,
    Colon,
    Sign(i64),
    Int(String),
    Name(String),
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::LAngle => "`<`".into(),
            Tok::RAngle => "`>`".into(),
            Tok::Pipe => "`|`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Star => "`*`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Sign(s) => if *s < 0 { "`-`" } else { "`+`" }.into(),
            Tok::Int(s) => format!("integer `{s}`"),
            Tok::Name(s) => format!("name `{s}`"),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn is_name_char(c: char) -> bool {
    !c.is_whitespace() && !"^*(),|<>:#".contains(c)
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut column) = (1usize, 1usize);

    while let Some(&c) = chars.peek() {
        let (l, col) = (line, column);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
            c
        };
        if c.is_whitespace() {
            bump(&mut chars);
            continue;
        }
        if c == '#' {
            while chars.peek().is_some_and(|&c| c != '\n') {
                bump(&mut chars);
            }
            continue;
        }
        let tok = match c {
            '<' => Tok::LAngle,
            '>' => Tok::RAngle,
            '|' => Tok::Pipe,
            ',' => Tok::Comma,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ':' => Tok::Colon,
            '-' => Tok::Sign(-1),
            '+' => Tok::Sign(1),
            _ if c.is_ascii_digit() => {
                let mut digits = String::new();
                while chars.peek().is_some_and(|c| c.is_ascii_digit()) {
                    digits.push(bump(&mut chars));
                }
                out.push(Spanned {
                    tok: Tok::Int(digits),
                    line: l,
                    column: col,
                });
                continue;
            }
            _ => {
                let mut name = String::new();
                while chars.peek().is_some_and(|&c| is_name_char(c)) {
                    name.push(bump(&mut chars));
                }
                out.push(Spanned {
                    tok: Tok::Name(name),
                    line: l,
                    column: col,
                });
                continue;
            }
        };
        bump(&mut chars);
        out.push(Spanned {
            tok,
            line: l,
            column: col,
        });
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        column,
    });
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    alphabet: &'a Alphabet,
}

impl<'a> Parser<'a> {
    fn new(text: &str, alphabet: &'a Alphabet) -> Result<Self, ParseError> {
        Ok(Parser {
            toks: lex(text)?,
            pos: 0,
            alphabet,
        })
    }

    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn syntax<T>(&self, at: &Spanned, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            line: at.line,
            column: at.column,
            message: message.into(),
        })
    }

    fn expect(&mut self, want: Tok) -> Result<Spanned, ParseError> {
        let t = self.next();
        if t.tok == want {
            Ok(t)
        } else {
            self.syntax(
                &t,
                format!("expected {}, found {}", want.describe(), t.tok.describe()),
            )
        }
    }

    fn name(&mut self) -> Result<(String, Spanned), ParseError> {
        let t = self.next();
        match &t.tok {
            Tok::Name(n) => {
                if let Err(e) = validate_name(n) {
                    return self.syntax(&t, e.to_string());
                }
                Ok((n.clone(), t))
            }
            other => self.syntax(&t, format!("expected a name, found {}", other.describe())),
        }
    }

    fn integer(&mut self) -> Result<i64, ParseError> {
        let mut sign = 1;
        if let Tok::Sign(s) = self.peek().tok {
            sign = s;
            self.next();
        }
        let t = self.next();
        match &t.tok {
            Tok::Int(digits) => match digits.parse::<i64>() {
                Ok(v) => Ok(sign * v),
                Err(_) => self.syntax(&t, format!("exponent `{digits}` out of range")),
            },
            other => self.syntax(
                &t,
                format!("expected an integer exponent, found {}", other.describe()),
            ),
        }
    }

    fn word(&mut self) -> Result<Word, ParseError> {
        let mut acc = self.factor()?;
        while self.peek().tok == Tok::Star {
            self.next();
            let f = self.factor()?;
            acc = acc.multiply(&f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Word, ParseError> {
        let t = self.next();
        let base = match &t.tok {
            Tok::Name(n) => match self.alphabet.get(n) {
                Some(g) => Word::generator(g),
                None => {
                    return Err(ParseError::UnknownGenerator {
                        name: n.clone(),
                        line: t.line,
                        column: t.column,
                    })
                }
            },
            Tok::Int(d) if d == "1" => Word::identity(),
            Tok::LParen => {
                let w = self.word()?;
                self.expect(Tok::RParen)?;
                w
            }
            other => {
                return self.syntax(
                    &t,
                    format!("expected a generator or `(`, found {}", other.describe()),
                )
            }
        };
        if self.peek().tok == Tok::Caret {
            self.next();
            let k = self.integer()?;
            Ok(base.power(k))
        } else {
            Ok(base)
        }
    }

    fn at_eof(&self) -> bool {
        self.peek().tok == Tok::Eof
    }
}

/// Parses a standalone word against `alphabet`.
pub fn parse_word(text: &str, alphabet: &Alphabet) -> Result<Word, ParseError> {
    let mut p = Parser::new(text, alphabet)?;
    let w = p.word()?;
    if !p.at_eof() {
        let t = p.peek().clone();
        return p.syntax(&t, format!("unexpected {} after word", t.tok.describe()));
    }
    Ok(w)
}

/// Parses a presentation file.
pub fn parse_presentation(text: &str) -> Result<Presentation, ParseError> {
    let empty = Alphabet::new();
    let mut p = Parser::new(text, &empty)?;
    p.expect(Tok::LAngle)?;

    let mut alphabet = Alphabet::new();
    loop {
        let (name, at) = p.name()?;
        if alphabet.get(&name).is_some() {
            return Err(ParseError::DuplicateGenerator {
                name,
                line: at.line,
                column: at.column,
            });
        }
        alphabet.push(name).expect("validated above");
        let t = p.next();
        match &t.tok {
            Tok::Comma => continue,
            Tok::Pipe => break,
            other => {
                return p.syntax(
                    &t,
                    format!("expected `,` or `|`, found {}", other.describe()),
                )
            }
        }
    }

    // Re-home the parser on the declared alphabet for words.
    let mut p = Parser {
        toks: p.toks,
        pos: p.pos,
        alphabet: &alphabet,
    };

    let mut relators = Vec::new();
    if p.peek().tok != Tok::RAngle {
        loop {
            relators.push(p.word()?);
            let t = p.next();
            match &t.tok {
                Tok::Comma => continue,
                Tok::RAngle => break,
                other => {
                    return p.syntax(
                        &t,
                        format!("expected `,` or `>`, found {}", other.describe()),
                    )
                }
            }
        }
    } else {
        p.next();
    }

    let mut markers: Vec<(String, Word)> = Vec::new();
    while !p.at_eof() {
        let t = p.next();
        match &t.tok {
            Tok::Name(kw) if kw == "meridian" => {}
            other => {
                return p.syntax(
                    &t,
                    format!(
                        "expected `meridian` or end of input, found {}",
                        other.describe()
                    ),
                )
            }
        }
        let (name, at) = p.name()?;
        if markers.iter().any(|(n, _)| *n == name) {
            return Err(ParseError::DuplicateMarker {
                name,
                line: at.line,
                column: at.column,
            });
        }
        p.expect(Tok::Colon)?;
        let w = p.word()?;
        markers.push((name, w));
    }

    Ok(Presentation::from_parts_unchecked(
        alphabet, relators, markers,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_free_group() {
        let p = parse_presentation("< x | >").unwrap();
        assert_eq!(p.generator_names(), ["x"]);
        assert!(p.relators().is_empty());
    }

    #[test]
    fn parses_nested_powers() {
        let al = Alphabet::from_names(["x", "y"]).unwrap();
        let w = parse_word("(y*x)^-3", &al).unwrap();
        assert_eq!(w.display(&al).to_string(), "x^-1*y^-1*x^-1*y^-1*x^-1*y^-1");
        let w = parse_word("((x^2)^3*y)^+1", &al).unwrap();
        assert_eq!(w.display(&al).to_string(), "x^6*y");
        assert!(parse_word("x*x^-1*1", &al).unwrap().is_identity());
    }

    #[test]
    fn unknown_generator_is_reported() {
        let err = parse_presentation("< x | x*y >").unwrap_err();
        assert_eq!(
            err,
            ParseError::UnknownGenerator {
                name: "y".into(),
                line: 1,
                column: 9
            }
        );
    }

    #[test]
    fn duplicate_generator_is_reported() {
        let err = parse_presentation("< x, x | >").unwrap_err();
        assert!(matches!(err, ParseError::DuplicateGenerator { ref name, .. } if name == "x"));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse_presentation("").unwrap_err() {
            ParseError::Syntax { line, column, .. } => assert_eq!((line, column), (1, 1)),
            e => panic!("unexpected {e:?}"),
        }
        match parse_presentation("< x |\n x^ >").unwrap_err() {
            ParseError::Syntax { line, column, .. } => assert_eq!((line, column), (2, 5)),
            e => panic!("unexpected {e:?}"),
        }
        assert!(parse_presentation("< x | x > junk").is_err());
        assert!(parse_presentation("< x | (x >").is_err());
    }

    #[test]
    fn markers_and_comments() {
        let text = "# the free group on one generator\n< x, a | x*a*x^-1*a^-1 >\nmeridian m: x\nmeridian n : x^-1*a*x # conjugate\n";
        let p = parse_presentation(text).unwrap();
        assert_eq!(p.markers().len(), 2);
        assert_eq!(p.marker("n").unwrap().len(), 3);
        assert!(matches!(
            parse_presentation("< x | >\nmeridian m: x\nmeridian m: x").unwrap_err(),
            ParseError::DuplicateMarker { .. }
        ));
    }
}
