use super::lexer::{tokenize, Spanned, SyntaxError, Tok};
use super::ltlf::LtlfFormula;
use super::regex::{regex_to_automaton, PathExpression};
use super::FrontendError;
use crate::syntax::{Formula, PathAutomaton, PropFormula};

type Resolver<'a> = dyn FnMut(&str) -> Result<PathAutomaton, FrontendError> + 'a;

struct Parser<'a, 'r> {
    toks: Vec<Spanned>,
    pos: usize,
    resolve: &'a mut Resolver<'r>,
}

fn no_names(name: &str) -> Result<PathAutomaton, FrontendError> {
    Err(FrontendError::UnknownAutomaton(name.to_string()))
}

impl<'a, 'r> Parser<'a, 'r> {
    fn new(text: &str, resolve: &'a mut Resolver<'r>) -> Result<Self, FrontendError> {
        Ok(Parser {
            toks: tokenize(text)?,
            pos: 0,
            resolve,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error(&self, message: String) -> FrontendError {
        let at = &self.toks[self.pos];
        FrontendError::Syntax(SyntaxError {
            line: at.line,
            column: at.column,
            message,
        })
    }

    fn unexpected(&self, wanted: &str) -> FrontendError {
        self.error(format!("expected {wanted}, found {}", self.peek()))
    }

    fn expect(&mut self, tok: Tok) -> Result<(), FrontendError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(&tok.to_string()))
        }
    }

    fn finish(&self) -> Result<(), FrontendError> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            Err(self.unexpected("end of input"))
        }
    }

    fn formula(&mut self) -> Result<Formula, FrontendError> {
        let mut f = self.conjunction()?;
        while *self.peek() == Tok::Pipe {
            self.bump();
            f = Formula::or(f, self.conjunction()?);
        }
        Ok(f)
    }

    fn conjunction(&mut self) -> Result<Formula, FrontendError> {
        let mut f = self.unary()?;
        while *self.peek() == Tok::Amp {
            self.bump();
            f = Formula::and(f, self.unary()?);
        }
        Ok(f)
    }

    fn unary(&mut self) -> Result<Formula, FrontendError> {
        match self.peek() {
            Tok::Bang => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::Lt => {
                self.bump();
                let a = self.path()?;
                self.expect(Tok::Gt)?;
                Ok(Formula::diamond(a, self.unary()?))
            }
            Tok::LBrack => {
                self.bump();
                let a = self.path()?;
                self.expect(Tok::RBrack)?;
                Ok(Formula::boxed(a, self.unary()?))
            }
            Tok::True => {
                self.bump();
                Ok(Formula::tt())
            }
            Tok::False => {
                self.bump();
                Ok(Formula::ff())
            }
            Tok::Ident(name) => {
                let name = name.clone();
                self.bump();
                Ok(Formula::atom(name))
            }
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            _ => Err(self.unexpected("a formula")),
        }
    }

    fn path(&mut self) -> Result<PathAutomaton, FrontendError> {
        if *self.peek() == Tok::At {
            self.bump();
            let Tok::Ident(name) = self.peek().clone() else {
                return Err(self.unexpected("an automaton name"));
            };
            let at = self.pos;
            self.bump();
            return (self.resolve)(&name).map_err(|e| match e {
                FrontendError::UnknownAutomaton(name) => {
                    let t = &self.toks[at];
                    FrontendError::UnresolvedAutomaton {
                        name,
                        line: t.line,
                        column: t.column,
                    }
                }
                other => other,
            });
        }
        Ok(regex_to_automaton(&self.rex()?))
    }

    fn rex(&mut self) -> Result<PathExpression, FrontendError> {
        let mut e = self.sequence()?;
        while *self.peek() == Tok::Plus {
            self.bump();
            e = PathExpression::union(e, self.sequence()?);
        }
        Ok(e)
    }

    fn sequence(&mut self) -> Result<PathExpression, FrontendError> {
        let mut e = self.starred()?;
        while *self.peek() == Tok::Semi {
            self.bump();
            e = PathExpression::concat(e, self.starred()?);
        }
        Ok(e)
    }

    fn starred(&mut self) -> Result<PathExpression, FrontendError> {
        let mut e = self.rex_base()?;
        while *self.peek() == Tok::Star {
            self.bump();
            e = PathExpression::star(e);
        }
        Ok(e)
    }

    fn rex_base(&mut self) -> Result<PathExpression, FrontendError> {
        match self.peek() {
            Tok::Eps => {
                self.bump();
                Ok(PathExpression::Epsilon)
            }
            Tok::Back => {
                self.bump();
                self.expect(Tok::LParen)?;
                let z = self.prop()?;
                self.expect(Tok::RParen)?;
                Ok(PathExpression::Past(z))
            }
            Tok::LBrace => {
                self.bump();
                let psi = self.formula()?;
                self.expect(Tok::RBrace)?;
                self.expect(Tok::Question)?;
                Ok(PathExpression::Test(psi))
            }
            Tok::LParen => {
                let saved = self.pos;
                if let Ok(z) = self.prop() {
                    return Ok(PathExpression::Future(z));
                }
                self.pos = saved;
                self.bump();
                let e = self.rex()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Tok::Bang | Tok::Ident(_) | Tok::True | Tok::False => Ok(PathExpression::Future(self.prop()?)),
            _ => Err(self.unexpected("a path expression")),
        }
    }

    fn prop(&mut self) -> Result<PropFormula, FrontendError> {
        let mut z = self.prop_conjunction()?;
        while *self.peek() == Tok::Pipe {
            self.bump();
            z = PropFormula::or(z, self.prop_conjunction()?);
        }
        Ok(z)
    }

    fn prop_conjunction(&mut self) -> Result<PropFormula, FrontendError> {
        let mut z = self.prop_unary()?;
        while *self.peek() == Tok::Amp {
            self.bump();
            z = PropFormula::and(z, self.prop_unary()?);
        }
        Ok(z)
    }

    fn prop_unary(&mut self) -> Result<PropFormula, FrontendError> {
        let z = match self.peek().clone() {
            Tok::Bang => {
                self.bump();
                return Ok(PropFormula::not(self.prop_unary()?));
            }
            Tok::True => PropFormula::True,
            Tok::False => PropFormula::False,
            Tok::Ident(name) => PropFormula::atom(name),
            Tok::LParen => {
                self.bump();
                let z = self.prop()?;
                self.expect(Tok::RParen)?;
                return Ok(z);
            }
            _ => return Err(self.unexpected("a propositional formula")),
        };
        self.bump();
        Ok(z)
    }

    fn ltl(&mut self) -> Result<LtlfFormula, FrontendError> {
        let mut f = self.ltl_conjunction()?;
        while *self.peek() == Tok::Pipe {
            self.bump();
            f = LtlfFormula::or(f, self.ltl_conjunction()?);
        }
        Ok(f)
    }

    fn ltl_conjunction(&mut self) -> Result<LtlfFormula, FrontendError> {
        let mut f = self.ltl_until()?;
        while *self.peek() == Tok::Amp {
            self.bump();
            f = LtlfFormula::and(f, self.ltl_until()?);
        }
        Ok(f)
    }

    fn ltl_until(&mut self) -> Result<LtlfFormula, FrontendError> {
        let f = self.ltl_unary()?;
        if *self.peek() == Tok::Ident("U".into()) {
            self.bump();
            return Ok(LtlfFormula::until(f, self.ltl_until()?));
        }
        Ok(f)
    }

    fn ltl_unary(&mut self) -> Result<LtlfFormula, FrontendError> {
        let f = match self.peek().clone() {
            Tok::Bang => {
                self.bump();
                return Ok(LtlfFormula::not(self.ltl_unary()?));
            }
            Tok::Ident(name) if name == "X" => {
                self.bump();
                return Ok(LtlfFormula::next(self.ltl_unary()?));
            }
            Tok::LParen => {
                self.bump();
                let f = self.ltl()?;
                self.expect(Tok::RParen)?;
                return Ok(f);
            }
            Tok::True => LtlfFormula::True,
            Tok::False => LtlfFormula::False,
            Tok::Ident(name) if name != "U" => LtlfFormula::Atom(name),
            _ => return Err(self.unexpected("an LTLf formula")),
        };
        self.bump();
        Ok(f)
    }
}

/// Parses a formula, resolving `@name` references through `resolve`.
pub fn parse_formula_with(text: &str, resolve: &mut Resolver<'_>) -> Result<Formula, FrontendError> {
    let mut p = Parser::new(text, resolve)?;
    let f = p.formula()?;
    p.finish()?;
    Ok(f)
}

pub fn parse_prop(text: &str) -> Result<PropFormula, FrontendError> {
    let mut none = no_names;
    let mut p = Parser::new(text, &mut none)?;
    let z = p.prop()?;
    p.finish()?;
    Ok(z)
}

/// Parses a path expression; `@name` is not allowed here.
pub fn parse_path_expression(text: &str) -> Result<PathExpression, FrontendError> {
    let mut none = no_names;
    let mut p = Parser::new(text, &mut none)?;
    let e = p.rex()?;
    p.finish()?;
    Ok(e)
}

/// Parses LTLf with `X` (strong next) and `U` (until); `U` binds tighter
/// than `&` and associates to the right.
pub fn parse_ltlf(text: &str) -> Result<LtlfFormula, FrontendError> {
    let mut none = no_names;
    let mut p = Parser::new(text, &mut none)?;
    let f = p.ltl()?;
    p.finish()?;
    Ok(f)
}
