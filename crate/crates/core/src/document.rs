//! The batch input language: a document is a list of semicolon-terminated
//! statements binding rings, elements, ideals, matrices, rows, words and
//! certificates to names. Parsing is recursive descent with line/column
//! error positions; printing emits the canonical form, and parse after
//! print is the identity on canonical documents.
//!
//! ```text
//! ring Zmod 8;
//! ideal I = <4>;
//! matrix A = [[0, 1], [-1, 0]];
//! row v = [6, 5, 10] witness [1, -1, 0] mod I;
//! word w = sp 4 : gen(1, 2, 6) conj(gen(3, 1, 2); 1, 4, -6);
//! cert c = pad 1 lin 4 : gen(1, 2, -2);
//! ```

use num_bigint::BigInt;

use crate::elementary::{Atom, ElementaryWord, GenFamily};
use crate::error::{Error, Result};
use crate::lifts::UnimodularRow;
use crate::matrix::Matrix;
use crate::rings::{Element, Ideal, MembershipMode, Ring, RingRef};
use crate::witt::EquivCertificate;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Elem(Element),
    Ideal(Ideal),
    Matrix(Matrix),
    Row { row: UnimodularRow, ideal_name: Option<String> },
    Word(ElementaryWord),
    Cert(EquivCertificate),
}

impl Value {
    pub fn kind(&self) -> &'static str {
        match self {
            Value::Elem(_) => "element",
            Value::Ideal(_) => "ideal",
            Value::Matrix(_) => "matrix",
            Value::Row { .. } => "row",
            Value::Word(_) => "word",
            Value::Cert(_) => "certificate",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Stmt {
    Ring(RingRef),
    Bind(String, Value),
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Document {
    pub stmts: Vec<Stmt>,
}

impl Document {
    pub fn lookup(&self, name: &str) -> Option<&Value> {
        self.stmts.iter().find_map(|s| match s {
            Stmt::Bind(n, v) if n == name => Some(v),
            _ => None,
        })
    }

    pub fn get(&self, name: &str) -> Result<&Value> {
        self.lookup(name).ok_or_else(|| Error::UnknownBinding(name.into()))
    }

    /// The ring of the last `ring` statement, if any.
    pub fn current_ring(&self) -> Option<&RingRef> {
        self.stmts.iter().rev().find_map(|s| match s {
            Stmt::Ring(r) => Some(r),
            _ => None,
        })
    }
}

/// Parse a bare element literal against a ring, for values passed on the
/// command line rather than bound in a document.
pub fn parse_inline_elem(ring: &RingRef, text: &str) -> Result<Element> {
    let mut p = Parser::new(text);
    let e = parse_elem(&mut p, ring)?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.err("trailing input after element"));
    }
    Ok(e)
}

/// Parse a bracketed vector literal against a ring.
pub fn parse_inline_vector(ring: &RingRef, text: &str) -> Result<Vec<Element>> {
    let mut p = Parser::new(text);
    let xs = parse_vector(&mut p, ring)?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.err("trailing input after vector"));
    }
    Ok(xs)
}

pub fn parse_document(text: &str) -> Result<Document> {
    let mut p = Parser::new(text);
    let mut doc = Document::default();
    loop {
        p.skip_ws();
        if p.at_end() {
            return Ok(doc);
        }
        parse_stmt(&mut p, &mut doc)?;
    }
}

pub fn print_document(doc: &Document) -> String {
    let mut out = String::new();
    for stmt in &doc.stmts {
        match stmt {
            Stmt::Ring(r) => out.push_str(&format!("ring {r};\n")),
            Stmt::Bind(name, Value::Elem(e)) => out.push_str(&format!("elem {name} = {e};\n")),
            Stmt::Bind(name, Value::Ideal(i)) => {
                out.push_str(&format!("ideal {name} = <{}>;\n", join(i.generators())))
            }
            Stmt::Bind(name, Value::Matrix(m)) => {
                out.push_str(&format!("matrix {name} = {};\n", print_matrix(m)))
            }
            Stmt::Bind(name, Value::Row { row, ideal_name }) => {
                let tail = match ideal_name {
                    Some(i) => format!(" mod {i}"),
                    None => String::new(),
                };
                out.push_str(&format!(
                    "row {name} = [{}] witness [{}]{tail};\n",
                    join(row.entries()),
                    join(row.witness())
                ));
            }
            Stmt::Bind(name, Value::Word(w)) => {
                out.push_str(&format!("word {name} = {};\n", print_word(w)))
            }
            Stmt::Bind(name, Value::Cert(c)) => out.push_str(&format!(
                "cert {name} = pad {} {};\n",
                c.padding,
                print_word(&c.word)
            )),
        }
    }
    out
}

pub fn join(xs: &[Element]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

pub fn print_matrix(m: &Matrix) -> String {
    let rows: Vec<String> = (0..m.n_rows()).map(|i| format!("[{}]", join(&m.row(i)))).collect();
    format!("[{}]", rows.join(", "))
}

pub fn print_word(w: &ElementaryWord) -> String {
    let family = match w.family() {
        GenFamily::Symplectic => "sp",
        GenFamily::Linear => "lin",
    };
    let mut s = format!("{family} {} :", w.size());
    for atom in w.atoms() {
        s.push(' ');
        s.push_str(&print_atom(atom));
    }
    s
}

fn print_atom(atom: &Atom) -> String {
    match atom {
        Atom::Plain { i, j, a } => format!("gen({i}, {j}, {a})"),
        Atom::Conj { outer, i, j, a, .. } => {
            let inner: Vec<String> = outer.atoms().iter().map(print_atom).collect();
            format!("conj({}; {i}, {j}, {a})", inner.join(" "))
        }
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col: usize,
}

impl Parser {
    fn new(text: &str) -> Parser {
        Parser { chars: text.chars().collect(), pos: 0, line: 1, col: 1 }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.bump();
        }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::SyntaxError { line: self.line, col: self.col, msg: msg.into() }
    }

    fn terr(&self, msg: impl Into<String>) -> Error {
        Error::TypeError { line: self.line, col: self.col, msg: msg.into() }
    }

    /// Wrap a semantic failure with the current position.
    fn typed<T>(&self, r: Result<T>) -> Result<T> {
        r.map_err(|e| match e {
            Error::SyntaxError { .. } | Error::TypeError { .. } => e,
            other => self.terr(other.to_string()),
        })
    }

    fn expect(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.err(format!("expected '{c}'")))
        }
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let mut s = String::new();
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
            _ => return Err(self.err("expected a name")),
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
            s.push(self.bump().unwrap());
        }
        Ok(s)
    }

    fn try_keyword(&mut self, kw: &str) -> bool {
        self.skip_ws();
        let save = (self.pos, self.line, self.col);
        if let Ok(word) = self.ident() {
            if word == kw {
                return true;
            }
        }
        (self.pos, self.line, self.col) = save;
        false
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let mut s = String::new();
        if self.peek() == Some('-') {
            s.push(self.bump().unwrap());
        }
        if !matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            return Err(self.err("expected an integer"));
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            s.push(self.bump().unwrap());
        }
        s.parse().map_err(|_| self.err("bad integer"))
    }

    fn small_uint(&mut self, what: &str) -> Result<usize> {
        let n = self.integer()?;
        u32::try_from(&n).ok().map(|v| v as usize).ok_or_else(|| self.err(format!("{what} out of range")))
    }
}

fn parse_stmt(p: &mut Parser, doc: &mut Document) -> Result<()> {
    let at = (p.line, p.col);
    let kw = p.ident()?;
    match kw.as_str() {
        "ring" => {
            let r = parse_desc(p)?;
            p.expect(';')?;
            doc.stmts.push(Stmt::Ring(r));
            Ok(())
        }
        "ideal" | "matrix" | "row" | "word" | "elem" | "cert" => {
            let name = p.ident()?;
            if doc.lookup(&name).is_some() {
                return Err(Error::TypeError {
                    line: at.0,
                    col: at.1,
                    msg: format!("name '{name}' is already bound"),
                });
            }
            p.expect('=')?;
            let ring = doc
                .current_ring()
                .ok_or_else(|| Error::TypeError {
                    line: at.0,
                    col: at.1,
                    msg: "no ring declared before this binding".into(),
                })?
                .clone();
            let value = match kw.as_str() {
                "ideal" => Value::Ideal(parse_ideal(p, &ring)?),
                "matrix" => Value::Matrix(parse_matrix(p, &ring)?),
                "row" => parse_row(p, &ring, doc)?,
                "word" => Value::Word(parse_word(p, &ring)?),
                "elem" => Value::Elem(parse_elem(p, &ring)?),
                "cert" => {
                    if !p.try_keyword("pad") {
                        return Err(p.err("expected 'pad'"));
                    }
                    let padding = p.small_uint("padding")?;
                    Value::Cert(EquivCertificate { padding, word: parse_word(p, &ring)? })
                }
                _ => unreachable!(),
            };
            p.expect(';')?;
            doc.stmts.push(Stmt::Bind(name, value));
            Ok(())
        }
        other => Err(Error::SyntaxError {
            line: at.0,
            col: at.1,
            msg: format!("unknown statement '{other}'"),
        }),
    }
}

fn parse_desc(p: &mut Parser) -> Result<RingRef> {
    let kw = p.ident()?;
    match kw.as_str() {
        "Z" => Ok(Ring::integers()),
        "Q" => Ok(Ring::rationals()),
        "Zmod" => {
            let m = p.integer()?;
            let m = u64::try_from(&m).map_err(|_| p.err("modulus out of range"))?;
            p.typed(Ring::integers_mod(m))
        }
        "poly" => {
            let base = parse_desc(p)?;
            let var = p.ident()?;
            p.typed(Ring::polynomial(&base, &var))
        }
        "loc" => {
            let base = parse_desc(p)?;
            let denom = parse_elem(p, &base)?;
            p.typed(Ring::localized(&base, denom))
        }
        "excision" => {
            let base = parse_desc(p)?;
            let ideal = parse_generators(p, &base)?;
            p.typed(Ring::excision(&base, ideal))
        }
        other => Err(p.err(format!("unknown ring descriptor '{other}'"))),
    }
}

fn parse_generators(p: &mut Parser, ring: &RingRef) -> Result<Ideal> {
    p.expect('<')?;
    let mut gens = Vec::new();
    loop {
        gens.push(parse_elem(p, ring)?);
        p.skip_ws();
        if p.peek() == Some(',') {
            p.bump();
        } else {
            break;
        }
    }
    p.expect('>')?;
    let decidable = Ideal::new(ring, gens.clone(), MembershipMode::GcdDecidable);
    match decidable {
        Err(Error::Unsupported(_)) => {
            p.typed(Ideal::new(ring, gens, MembershipMode::CertificateOnly))
        }
        other => p.typed(other),
    }
}

fn parse_ideal(p: &mut Parser, ring: &RingRef) -> Result<Ideal> {
    parse_generators(p, ring)
}

fn parse_vector(p: &mut Parser, ring: &RingRef) -> Result<Vec<Element>> {
    p.expect('[')?;
    let mut xs = Vec::new();
    loop {
        xs.push(parse_elem(p, ring)?);
        p.skip_ws();
        if p.peek() == Some(',') {
            p.bump();
        } else {
            break;
        }
    }
    p.expect(']')?;
    Ok(xs)
}

fn parse_matrix(p: &mut Parser, ring: &RingRef) -> Result<Matrix> {
    p.expect('[')?;
    let mut rows: Vec<Vec<Element>> = Vec::new();
    loop {
        p.skip_ws();
        let at = (p.line, p.col);
        let row = parse_vector(p, ring)?;
        if let Some(first) = rows.first() {
            if row.len() != first.len() {
                return Err(Error::SyntaxError {
                    line: at.0,
                    col: at.1,
                    msg: format!("ragged rows: expected {} entries, got {}", first.len(), row.len()),
                });
            }
        }
        rows.push(row);
        p.skip_ws();
        if p.peek() == Some(',') {
            p.bump();
        } else {
            break;
        }
    }
    p.expect(']')?;
    p.typed(Matrix::from_rows(ring, rows))
}

fn parse_row(p: &mut Parser, ring: &RingRef, doc: &Document) -> Result<Value> {
    let entries = parse_vector(p, ring)?;
    if !p.try_keyword("witness") {
        return Err(p.err("expected 'witness'"));
    }
    let witness = parse_vector(p, ring)?;
    if p.try_keyword("mod") {
        let iname = p.ident()?;
        let ideal = match p.typed(doc.get(&iname).cloned())? {
            Value::Ideal(i) => i,
            v => return Err(p.terr(format!("'{iname}' is a {}, not an ideal", v.kind()))),
        };
        let row = p.typed(UnimodularRow::relative(ring, entries, witness, ideal, None))?;
        Ok(Value::Row { row, ideal_name: Some(iname) })
    } else {
        let row = p.typed(UnimodularRow::new(ring, entries, witness))?;
        Ok(Value::Row { row, ideal_name: None })
    }
}

fn parse_word(p: &mut Parser, ring: &RingRef) -> Result<ElementaryWord> {
    let family = match p.ident()?.as_str() {
        "sp" => GenFamily::Symplectic,
        "lin" => GenFamily::Linear,
        other => return Err(p.err(format!("expected 'sp' or 'lin', got '{other}'"))),
    };
    let size = p.small_uint("word size")?;
    if family == GenFamily::Symplectic && size % 2 != 0 {
        return Err(p.terr("symplectic words need even size"));
    }
    p.expect(':')?;
    let mut w = ElementaryWord::empty(ring, family, size);
    parse_atoms(p, ring, &mut w)?;
    Ok(w)
}

/// Atoms until something that is not `gen` or `conj`.
fn parse_atoms(p: &mut Parser, ring: &RingRef, w: &mut ElementaryWord) -> Result<()> {
    loop {
        p.skip_ws();
        let save = (p.pos, p.line, p.col);
        let Ok(kw) = p.ident() else {
            return Ok(());
        };
        match kw.as_str() {
            "gen" => {
                p.expect('(')?;
                let i = p.small_uint("index")?;
                p.expect(',')?;
                let j = p.small_uint("index")?;
                p.expect(',')?;
                let a = parse_elem(p, ring)?;
                p.expect(')')?;
                p.typed(w.push_plain(i, j, a))?;
            }
            "conj" => {
                p.expect('(')?;
                let mut outer = ElementaryWord::empty(ring, w.family(), w.size());
                parse_atoms(p, ring, &mut outer)?;
                p.expect(';')?;
                let i = p.small_uint("index")?;
                p.expect(',')?;
                let j = p.small_uint("index")?;
                p.expect(',')?;
                let a = parse_elem(p, ring)?;
                p.expect(')')?;
                p.typed(w.push_conj(outer, i, j, a, None))?;
            }
            _ => {
                (p.pos, p.line, p.col) = save;
                return Ok(());
            }
        }
    }
}

fn parse_elem(p: &mut Parser, ring: &RingRef) -> Result<Element> {
    p.skip_ws();
    match &**ring {
        Ring::Integers | Ring::IntegersMod { .. } | Ring::QuotientEuclidean { .. } => {
            let n = p.integer()?;
            Ok(ring.from_bigint(n))
        }
        Ring::Rationals => {
            let num = p.integer()?;
            if p.peek() == Some('/') {
                p.bump();
                let den = p.integer()?;
                p.typed(ring.rational(num, den))
            } else {
                p.typed(ring.rational(num, BigInt::from(1)))
            }
        }
        Ring::Polynomial { base, .. } => {
            let coeffs = parse_vector(p, base)?;
            p.typed(ring.poly_from_coeffs(coeffs))
        }
        Ring::Localized { base, .. } => {
            if p.try_keyword("frac") {
                p.expect('(')?;
                let num = parse_elem(p, base)?;
                p.expect(',')?;
                let exp = p.small_uint("exponent")? as u32;
                p.expect(')')?;
                p.typed(ring.localized_elem(num, exp))
            } else {
                let num = parse_elem(p, base)?;
                p.typed(ring.localized_elem(num, 0))
            }
        }
        Ring::Excision { base, .. } => {
            p.expect('(')?;
            let r = parse_elem(p, base)?;
            p.expect('|')?;
            let i = parse_elem(p, base)?;
            p.expect(')')?;
            p.typed(ring.excision_elem(r, i, None))
        }
        Ring::Double { .. } => Err(p.terr("pair rings of congruent type have no literal form")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn roundtrip(text: &str) -> String {
        let doc = parse_document(text).unwrap();
        let printed = print_document(&doc);
        let again = parse_document(&printed).unwrap();
        assert_eq!(printed, print_document(&again));
        printed
    }

    #[test]
    fn standard_form_parses() {
        let doc = parse_document("ring Z; matrix A = [[0,1],[-1,0]];").unwrap();
        match doc.get("A").unwrap() {
            Value::Matrix(m) => assert_eq!(*m, Matrix::standard_alternating(&Ring::integers(), 1)),
            _ => panic!("not a matrix"),
        }
    }

    #[test]
    fn modular_ring_with_ideal_parses() {
        let doc = parse_document("ring Zmod 8; ideal I = <4>;").unwrap();
        let ring = doc.current_ring().unwrap().clone();
        assert_eq!(*ring, *Ring::integers_mod(8).unwrap());
        match doc.get("I").unwrap() {
            Value::Ideal(i) => assert_eq!(i.generators(), &[ring.from_i64(4)]),
            _ => panic!("not an ideal"),
        }
    }

    #[test]
    fn ragged_matrix_is_a_syntax_error() {
        let err = parse_document("ring Z; matrix B = [[1,2],[3]];").unwrap_err();
        match err {
            Error::SyntaxError { line, col, ref msg } => {
                assert_eq!(line, 1);
                assert!(col > 20);
                assert!(msg.contains("ragged"));
            }
            other => panic!("expected a syntax error, got {other:?}"),
        }
    }

    #[test]
    fn error_positions_are_annotated() {
        let err = parse_document("ring Z;\nmatrix A = [[1,2],\n  [3,oops]];").unwrap_err();
        match err {
            Error::SyntaxError { line, col, .. } => {
                assert_eq!(line, 3);
                assert!(col >= 6);
            }
            other => panic!("{other:?}"),
        }

        let err = parse_document("ring Z; row v = [2, 4] witness [1, 1];").unwrap_err();
        assert!(matches!(err, Error::TypeError { line: 1, .. }));

        let err = parse_document("matrix A = [[1]];").unwrap_err();
        assert!(matches!(err, Error::TypeError { .. }));

        let err = parse_document("ring Z; word w = sp 5 : gen(1, 2, 1);").unwrap_err();
        assert!(matches!(err, Error::TypeError { .. }));
    }

    #[test]
    fn every_binding_kind_round_trips() {
        let text = "\
ring Zmod 8;
ideal I = <4>;
elem a = 5;
matrix A = [[0, 1], [-1, 0]];
row v = [5, 4, 4] witness [5, 1, 1] mod I;
word w = sp 4 : gen(1, 2, 6) conj(gen(3, 1, 2); 1, 4, 2);
cert c = pad 1 lin 4 : gen(1, 2, -2);
ring Q;
elem half = 1/2;
ring poly Zmod 5 X;
elem f = [1, 0, 3];
ring loc Z 2;
elem g = frac(3,2);
elem h = 7;
ring excision Z <6>;
elem pair = (2|6);
";
        let printed = roundtrip(text);
        assert!(printed.contains("elem half = 1/2;"));
        assert!(printed.contains("elem f = [1,0,3];"));
        assert!(printed.contains("elem g = frac(3,2);"));
        assert!(printed.contains("elem h = 7;"));
        assert!(printed.contains("elem pair = (2|6);"));
        assert!(printed.contains("conj(gen(3, 1, 2); 1, 4, 2)"));
        assert!(printed.contains("mod I;"));
    }

    #[test]
    fn multiple_rings_type_their_own_bindings() {
        let doc = parse_document(
            "ring loc Z 2; matrix A = [[1, frac(1,1)], [0, 1]]; ring loc Z 3; matrix B = [[1, frac(1,1)], [0, 1]];",
        )
        .unwrap();
        let (a, b) = match (doc.get("A").unwrap(), doc.get("B").unwrap()) {
            (Value::Matrix(a), Value::Matrix(b)) => (a.clone(), b.clone()),
            _ => panic!(),
        };
        assert_ne!(a.ring(), b.ring());
    }

    #[test]
    fn unknown_names_and_bad_statements_fail() {
        assert!(matches!(
            parse_document("ring Z; row v = [1] witness [1] mod J;"),
            Err(Error::TypeError { .. })
        ));
        assert!(matches!(
            parse_document("bogus Z;"),
            Err(Error::SyntaxError { line: 1, col: 1, .. })
        ));
        assert!(matches!(
            parse_document("ring Z; elem a = 1; elem a = 2;"),
            Err(Error::TypeError { .. })
        ));
        let doc = parse_document("ring Z;").unwrap();
        assert!(matches!(doc.get("missing"), Err(Error::UnknownBinding(_))));
    }
}
