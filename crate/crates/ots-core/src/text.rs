//! The canonical text grammar for terms.
//!
//! Grammar accepted by the parser:
//!
//! ```text
//! expr    := atom ('+' atom)*
//! atom    := numeral | 'w' ['^' '(' expr ')'] | 'phi' '(' numeral ',' expr ')'
//!          | 'g' '(' numeral ')'
//! numeral := digit+        (n abbreviates the n-fold sum of w^(0); 0 is the empty sum)
//! ```
//!
//! `w^(e)` is sugar for `phi(0,e)` and `w` alone for `phi(0,1)`. The renderer
//! emits the minimal-sugar canonical spelling: numerals for runs of `w^(0)`,
//! `w` and `w^(e)` for level-0 symbols, `phi(k,e)` above level 0, `g(j)` for
//! generators. Rendering then parsing is the identity on normal forms.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::term::{normalize, Atom, RawTerm, StructureDescriptor, Term};

/// Largest accepted numeral; numerals expand to unary sums, so unboundedly
/// large ones would exhaust memory before they meant anything.
const NUMERAL_CAP: u32 = 100_000;

/// Canonical minimal-sugar rendering of a normal form.
pub fn render(t: &Term) -> String {
    if t.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    let atoms = t.atoms();
    let mut i = 0;
    while i < atoms.len() {
        if is_unit(&atoms[i]) {
            // Normal forms keep all units at the tail, so this run ends the term.
            let run = atoms.len() - i;
            if i > 0 {
                out.push('+');
            }
            let _ = write!(out, "{run}");
            break;
        }
        if i > 0 {
            out.push('+');
        }
        render_atom(&atoms[i], &mut out);
        i += 1;
    }
    out
}

fn is_unit(atom: &Atom) -> bool {
    matches!(atom, Atom::Phi(0, e) if e.is_zero())
}

fn render_atom(atom: &Atom, out: &mut String) {
    match atom {
        Atom::Gen(j) => {
            let _ = write!(out, "g({j})");
        }
        Atom::Phi(0, e) => {
            if *e == Term::numeral(1) {
                out.push('w');
            } else {
                out.push_str("w^(");
                out.push_str(&render(e));
                out.push(')');
            }
        }
        Atom::Phi(k, e) => {
            let _ = write!(out, "phi({k},");
            out.push_str(&render(e));
            out.push(')');
        }
    }
}

/// Parses an expression and returns its normal form over the structure.
pub fn parse_expr(text: &str, sd: &StructureDescriptor) -> Result<Term> {
    let mut p = Parser { bytes: text.as_bytes(), pos: 0 };
    let raw = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.error("trailing input"));
    }
    normalize(&raw, sd)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse { position: self.pos, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.bytes.get(self.pos).is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, b: u8) -> Result<()> {
        if self.peek() == Some(b) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected {:?}", b as char)))
        }
    }

    fn expr(&mut self) -> Result<RawTerm> {
        let mut parts = vec![self.atom()?];
        while self.peek() == Some(b'+') {
            self.pos += 1;
            parts.push(self.atom()?);
        }
        Ok(RawTerm::Sum(parts))
    }

    fn atom(&mut self) -> Result<RawTerm> {
        match self.peek() {
            Some(b) if b.is_ascii_digit() => {
                let n = self.numeral()?;
                Ok(RawTerm::numeral(n))
            }
            Some(b) if b.is_ascii_alphabetic() => {
                let word = self.word();
                match word.as_str() {
                    "w" => {
                        if self.peek() == Some(b'^') {
                            self.pos += 1;
                            self.expect(b'(')?;
                            let e = self.expr()?;
                            self.expect(b')')?;
                            Ok(RawTerm::Phi(0, Box::new(e)))
                        } else {
                            Ok(RawTerm::Phi(0, Box::new(RawTerm::numeral(1))))
                        }
                    }
                    "phi" => {
                        self.expect(b'(')?;
                        let k = self.numeral()?;
                        self.expect(b',')?;
                        let e = self.expr()?;
                        self.expect(b')')?;
                        Ok(RawTerm::Phi(k, Box::new(e)))
                    }
                    "g" => {
                        self.expect(b'(')?;
                        let j = self.numeral()?;
                        self.expect(b')')?;
                        Ok(RawTerm::Gen(j))
                    }
                    other => Err(self.error(format!("unknown symbol {other:?}"))),
                }
            }
            _ => Err(self.error("expected a term")),
        }
    }

    fn word(&mut self) -> String {
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(|b| b.is_ascii_alphabetic()) {
            self.pos += 1;
        }
        String::from_utf8(self.bytes[start..self.pos].to_vec()).expect("ascii run")
    }

    fn numeral(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a numeral"));
        }
        let digits = std::str::from_utf8(&self.bytes[start..self.pos]).expect("digit run");
        let n: u32 = digits
            .parse()
            .map_err(|_| self.error(format!("numeral {digits} out of range")))?;
        if n > NUMERAL_CAP {
            return Err(self.error(format!("numeral {n} exceeds the cap {NUMERAL_CAP}")));
        }
        Ok(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::LinearOrder;
    use crate::term::{add, apply_phi};

    fn sd(level: u32) -> StructureDescriptor {
        StructureDescriptor::new(level, LinearOrder::Omega)
    }

    #[test]
    fn renders_hand_terms() {
        let s = sd(1);
        assert_eq!(render(&Term::zero()), "0");
        assert_eq!(render(&Term::numeral(3)), "3");
        let w = parse_expr("w", &s).unwrap();
        assert_eq!(render(&w), "w");
        let w1 = add(&w, &Term::numeral(1), &s).unwrap();
        assert_eq!(render(&w1), "w+1");
        assert_eq!(render(&Term::generator(&s, 2).unwrap()), "g(2)");
        let e = add(&add(&w, &w, &s).unwrap(), &Term::numeral(1), &s).unwrap();
        let t = apply_phi(0, &e, &s).unwrap();
        assert_eq!(render(&t), "w^(w+w+1)");
        let s2 = sd(2);
        let p = apply_phi(1, &Term::zero(), &s2).unwrap();
        assert_eq!(render(&p), "phi(1,0)");
    }

    #[test]
    fn parses_sugar_forms() {
        let s = sd(1);
        let w = parse_expr("w", &s).unwrap();
        assert_eq!(parse_expr("w^(1)", &s).unwrap(), w);
        assert_eq!(parse_expr("w^(w^(0))", &s).unwrap(), w);
        assert_eq!(parse_expr("phi(0,1)", &s).unwrap(), w);
        assert_eq!(parse_expr("2", &s).unwrap(), Term::numeral(2));
        assert_eq!(parse_expr("w^(0)+w^(0)", &s).unwrap(), Term::numeral(2));
        assert_eq!(parse_expr(" w + 1 ", &s).unwrap(), parse_expr("w+1", &s).unwrap());
    }

    #[test]
    fn parse_applies_normalization() {
        let s = sd(1);
        assert_eq!(parse_expr("w^(0)+w", &s).unwrap(), parse_expr("w", &s).unwrap());
        assert_eq!(parse_expr("phi(0,g(0))", &s).unwrap(), Term::generator(&s, 0).unwrap());
        assert_eq!(parse_expr("0", &s).unwrap(), Term::zero());
        assert_eq!(parse_expr("0+0", &s).unwrap(), Term::zero());
    }

    #[test]
    fn parse_reports_positions() {
        let s = sd(1);
        match parse_expr("w+", &s) {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(matches!(parse_expr("", &s), Err(Error::Parse { .. })));
        assert!(matches!(parse_expr("v", &s), Err(Error::Parse { .. })));
        assert!(matches!(parse_expr("w^2", &s), Err(Error::Parse { .. })));
        assert!(matches!(parse_expr("w)", &s), Err(Error::Parse { .. })));
        assert!(matches!(parse_expr("999999999999", &s), Err(Error::Parse { .. })));
        assert!(matches!(parse_expr("100001", &s), Err(Error::Parse { .. })));
    }

    #[test]
    fn parse_rejects_foreign_symbols() {
        assert!(matches!(parse_expr("phi(1,0)", &sd(1)), Err(Error::MalformedTerm(_))));
        let fin = StructureDescriptor::new(0, LinearOrder::Finite(3));
        assert!(matches!(parse_expr("g(4)", &fin), Err(Error::MalformedTerm(_))));
    }

    #[test]
    fn round_trips_hand_terms() {
        let s2 = sd(2);
        for text in [
            "0",
            "7",
            "w",
            "w+3",
            "w^(w)",
            "w^(w+w+1)+w^(w)+2",
            "g(0)",
            "g(3)+g(1)+w+1",
            "phi(1,w+1)",
            "phi(1,g(2)+1)+w^(g(2)+w)+g(0)",
            "w^(g(0)+1)",
        ] {
            let t = parse_expr(text, &s2).unwrap();
            assert_eq!(render(&t), text, "canonical spelling should round-trip");
            assert_eq!(parse_expr(&render(&t), &s2).unwrap(), t);
        }
    }
}
