//! One-line instance specs: `RING | MODULE`.
//!
//! ```text
//! ring   := "Z" INT ("x" "Z" INT)*
//! module := factor ("," factor)*
//! factor := "(" INT ("," INT)* ")"
//! ```
//!
//! A factor lists one ideal generator per ring component; `0` is the zero
//! generator, so `(0)` is a free cyclic factor. Whitespace is ignored.
//! Columns in errors are 1-based character positions.

use crate::arith::lcm;
use crate::error::{Error, Result};
use crate::module::{build_module, FiniteModule};
use crate::ring::FiniteRing;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub module: FiniteModule,
    /// Set when a finite Z-module was rewritten over Z mod its exponent.
    pub reduction: Option<String>,
}

struct Lexer<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    text: &'a str,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        let chars = text.chars().enumerate().map(|(i, c)| (i + 1, c)).filter(|(_, c)| !c.is_whitespace()).collect();
        Lexer { chars, pos: 0, text }
    }

    fn column(&self) -> usize {
        match self.chars.get(self.pos) {
            Some(&(col, _)) => col,
            None => self.text.chars().count() + 1,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn error<T>(&self, column: usize, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { column, message: message.into() })
    }

    fn expect(&mut self, want: char) -> Result<()> {
        match self.peek() {
            Some(c) if c == want => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => self.error(self.column(), format!("expected '{want}', found '{c}'")),
            None => self.error(self.column(), format!("expected '{want}', found end of input")),
        }
    }

    fn eat(&mut self, want: char) -> bool {
        let hit = self.peek() == Some(want);
        if hit {
            self.pos += 1;
        }
        hit
    }

    /// An unsigned integer with the column of its first digit.
    fn int(&mut self) -> Result<(u64, usize)> {
        let col = self.column();
        let mut digits = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            digits.push(c);
            self.pos += 1;
        }
        if digits.is_empty() {
            return match self.peek() {
                Some(c) => self.error(col, format!("expected an integer, found '{c}'")),
                None => self.error(col, "expected an integer, found end of input"),
            };
        }
        match digits.parse() {
            Ok(v) => Ok((v, col)),
            Err(_) => self.error(col, format!("integer {digits} is too large")),
        }
    }
}

fn parse_ring(lx: &mut Lexer) -> Result<FiniteRing> {
    let mut moduli = Vec::new();
    loop {
        lx.expect('Z')?;
        let (n, col) = lx.int()?;
        if n < 2 {
            return lx.error(col, format!("zero or trivial component ring: modulus {n} < 2"));
        }
        moduli.push(n);
        if !lx.eat('x') {
            break;
        }
    }
    FiniteRing::new(moduli).map_err(|e| Error::Parse { column: 1, message: e.to_string() })
}

/// Factors as generator lists, with `0` already replaced by the modulus.
fn parse_factors(lx: &mut Lexer, ring: &FiniteRing) -> Result<Vec<(Vec<u64>, usize)>> {
    let mut factors = Vec::new();
    loop {
        let start = lx.column();
        lx.expect('(')?;
        let mut gens = Vec::new();
        loop {
            let (g, col) = lx.int()?;
            let Some(&n) = ring.moduli().get(gens.len()) else {
                return lx.error(col, format!("arity mismatch: ring has {} components", ring.arity()));
            };
            let g = if g == 0 { n } else { g };
            if n % g != 0 {
                return lx.error(col, format!("generator {g} does not divide modulus {n}"));
            }
            gens.push(g);
            if !lx.eat(',') {
                break;
            }
        }
        if gens.len() != ring.arity() {
            return lx.error(lx.column(), format!("arity mismatch: expected {} generators, got {}", ring.arity(), gens.len()));
        }
        lx.expect(')')?;
        if gens.iter().all(|&g| g == 1) {
            return lx.error(start, "zero cyclic factor");
        }
        factors.push((gens, start));
        if !lx.eat(',') {
            break;
        }
    }
    Ok(factors)
}

/// Parses `RING | MODULE`. With `over_z` the text describes a finite
/// Z-module, which is rewritten over Z mod its exponent.
pub fn parse_instance(text: &str, over_z: bool) -> Result<Instance> {
    let mut lx = Lexer::new(text);
    if lx.peek().is_none() {
        return lx.error(1, "empty instance");
    }
    let ring = parse_ring(&mut lx)?;
    lx.expect('|')?;
    let factors = parse_factors(&mut lx, &ring)?;
    if let Some(c) = lx.peek() {
        return lx.error(lx.column(), format!("unexpected '{c}' after module"));
    }
    if over_z {
        return reduce_over_z(&ring, &factors);
    }
    let ideals = factors.iter().map(|(g, _)| ring.ideal(g)).collect::<Result<Vec<_>>>()?;
    Ok(Instance { module: build_module(&ring, &ideals)?, reduction: None })
}

/// Each factor splits into cyclic groups Z_{g_i}; Z acts through Z mod the
/// exponent e = lcm of their orders, so the module is ⊕ Z_e/(g_i).
fn reduce_over_z(ring: &FiniteRing, factors: &[(Vec<u64>, usize)]) -> Result<Instance> {
    let orders: Vec<u64> = factors.iter().flat_map(|(g, _)| g.iter().copied()).filter(|&g| g > 1).collect();
    let e = orders.iter().fold(1, |acc, &g| lcm(acc, g));
    let reduced = FiniteRing::new(vec![e])?;
    let ideals = orders.iter().map(|&g| reduced.ideal(&[g])).collect::<Result<Vec<_>>>()?;
    let module = build_module(&reduced, &ideals)?;
    let note = format!("finite Z-module of exponent {e} (input ring {ring}); working over Z{e}");
    Ok(Instance { module, reduction: Some(note) })
}

/// The canonical text, which `parse_instance` reads back to the same module.
pub fn print_instance(module: &FiniteModule) -> String {
    module.to_string()
}

/// Corpus files: one instance per line, `#` starts a comment.
pub fn parse_corpus(text: &str, over_z: bool) -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let inst = parse_instance(line, over_z).map_err(|e| match e {
            Error::Parse { column, message } => Error::Parse { column, message: format!("line {}: {message}", i + 1) },
            other => other,
        })?;
        out.push(inst);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<FiniteModule> {
        parse_instance(text, false).map(|i| i.module)
    }

    fn column(text: &str) -> usize {
        match parse(text) {
            Err(Error::Parse { column, .. }) => column,
            other => panic!("expected a parse error for {text:?}, got {other:?}"),
        }
    }

    #[test]
    fn basic_instances() {
        let m = parse("Z8 | (0)").unwrap();
        assert_eq!(m.order(), 8);
        let m = parse("Z2 | (0),(0)").unwrap();
        assert_eq!(m.order(), 4);
        let m = parse(" Z6 x Z2|(2,1) , (0,0)").unwrap();
        assert_eq!(print_instance(&m), "Z6xZ2 | (2,1),(0,0)");
        assert_eq!(m.order(), 2 * 12);
    }

    #[test]
    fn positioned_errors() {
        assert_eq!(column("Z1 | (0)"), 2);
        assert_eq!(column("Z8 | (3)"), 7);
        assert_eq!(column("Z8 | (2,2)"), 9);
        assert_eq!(column("Z6xZ2 | (2)"), 11);
        assert_eq!(column("Z8 (0)"), 4);
        assert_eq!(column("Z8 | (1)"), 6);
        assert_eq!(column("Z8 | (0) x"), 10);
        assert_eq!(column(""), 1);
    }

    #[test]
    fn over_z_reduces_to_the_exponent() {
        let inst = parse_instance("Z6 | (0)", true).unwrap();
        assert_eq!(print_instance(&inst.module), "Z6 | (0)");
        assert!(inst.reduction.unwrap().contains("exponent 6"));
        let inst = parse_instance("Z12 | (4),(3)", true).unwrap();
        assert_eq!(print_instance(&inst.module), "Z12 | (4),(3)");
        let inst = parse_instance("Z4xZ9 | (2,0)", true).unwrap();
        assert_eq!(print_instance(&inst.module), "Z18 | (2),(9)");
    }

    #[test]
    fn corpus_lines() {
        let list = parse_corpus("# header\nZ8 | (0)\n\nZ6 | (0)  # trailing\n", false).unwrap();
        assert_eq!(list.len(), 2);
        match parse_corpus("Z8 | (0)\nZ8 | (3)\n", false) {
            Err(Error::Parse { column: 7, message }) => assert!(message.starts_with("line 2")),
            other => panic!("{other:?}"),
        }
    }
}
