//! Command dispatch for the batch front end. Every invocation reads one
//! document, runs one command against its bindings, and emits a single
//! report object. Suite reports carry no timing so that runs with a fixed
//! seed are byte-identical; everything else records elapsed milliseconds.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::completion::{
    bounded_search_completer, complete_row_relative, patch_symplectic, verify_completion,
    Completion,
};
use crate::document::{self, Document, Value};
use crate::elementary::{homotopy_word, reduce_to_principal, whitehead_word, ElementaryWord};
use crate::error::{Error, Result};
use crate::lifts::{lift_matrix, lift_row, MatrixGroup};
use crate::matrix::Matrix;
use crate::rings::{Element, Ideal, Ring, RingHom, RingRef};
use crate::steinberg::{kernel_check, steinberg_phi, symbol_build, SteinbergWord, SymbolKind};
use crate::suites::{self, CheckLine};
use crate::witt::{
    check_equiv, extract_block, hyperbolic_h, search_equiv, witt_inverse_rep, witt_perp, witt_pf,
    AltRep, EquivCertificate,
};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ErrorInfo {
    pub code: String,
    pub message: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub checks: Vec<CheckLine>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

impl Report {
    pub fn render_plain(&self) -> String {
        let mut out = format!("command: {}\nok: {}\n", self.command, self.ok);
        if let Some(r) = &self.result {
            if r.contains('\n') {
                out.push_str("result:\n");
                for line in r.lines() {
                    out.push_str(&format!("  {line}\n"));
                }
            } else {
                out.push_str(&format!("result: {r}\n"));
            }
        }
        for c in &self.checks {
            let mark = if c.pass { "pass" } else { "FAIL" };
            out.push_str(&format!("check {}: {mark} ({})\n", c.label, c.detail));
        }
        if let Some(e) = &self.error {
            out.push_str(&format!("error {}: {}\n", e.code, e.message));
        }
        if let Some(ms) = self.elapsed_ms {
            out.push_str(&format!("elapsed_ms: {ms}\n"));
        }
        out
    }
}

/// What the process should exit with: 0 all verifications passed,
/// 1 a verification or operation failed, 2 the input could not be used.
pub fn exit_code(report: &Report) -> i32 {
    if report.ok {
        return 0;
    }
    match &report.error {
        Some(e) if e.code == "SyntaxError" || e.code == "TypeError" => 2,
        Some(e) if e.code == "UnknownBinding" => 2,
        _ => 1,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PredicateKind {
    Alternating,
    Identity,
    Invertible,
    Special,
    Symplectic,
    Relative,
}

impl PredicateKind {
    pub fn parse(s: &str) -> Result<PredicateKind> {
        match s {
            "alternating" => Ok(PredicateKind::Alternating),
            "identity" => Ok(PredicateKind::Identity),
            "invertible" => Ok(PredicateKind::Invertible),
            "special" => Ok(PredicateKind::Special),
            "symplectic" => Ok(PredicateKind::Symplectic),
            "relative" => Ok(PredicateKind::Relative),
            other => Err(Error::Unsupported(format!("unknown predicate '{other}'"))),
        }
    }
}

#[derive(Debug, Clone)]
pub enum Cmd {
    Pfaffian { name: String },
    Det { name: String },
    Predicate { name: String, predicate: PredicateKind, ideal: Option<String> },
    Eval { name: String },
    LiftRow { name: String, vaserstein: Option<String> },
    LiftMatrix { name: String, ideal: String, symplectic: bool },
    Project { name: String },
    Whitehead { name: String },
    Homotopy { name: String },
    ReducePrincipal { name: String },
    Complete { name: String, budget: u64 },
    Patch { s: String, t: String, a1: String, a2: String, ideal: String },
    WittPerp { a: String, b: String, ideal: Option<String> },
    WittInv { name: String, ideal: Option<String> },
    WittPf { name: String, ideal: Option<String> },
    Hyperbolic { name: String, ideal: Option<String> },
    CheckEquiv { a: String, b: String, cert: String, ideal: Option<String> },
    SearchEquiv { a: String, b: String, ideal: Option<String>, budget: u64 },
    ExtractBlock { delta: String, theta1: String, theta2: String, ideal: Option<String> },
    Symbol { kind: SymbolKind, r: String, s: Option<String>, half: usize },
    Phi { name: String },
    KernelCheck { name: String },
    Suite { name: String, seed: u64, trials: Option<u64> },
    Parse,
}

impl Cmd {
    pub fn name(&self) -> String {
        match self {
            Cmd::Pfaffian { .. } => "pfaffian".into(),
            Cmd::Det { .. } => "det".into(),
            Cmd::Predicate { .. } => "predicate".into(),
            Cmd::Eval { .. } => "eval".into(),
            Cmd::LiftRow { .. } => "lift-row".into(),
            Cmd::LiftMatrix { .. } => "lift-matrix".into(),
            Cmd::Project { .. } => "project".into(),
            Cmd::Whitehead { .. } => "whitehead".into(),
            Cmd::Homotopy { .. } => "homotopy".into(),
            Cmd::ReducePrincipal { .. } => "reduce-principal".into(),
            Cmd::Complete { .. } => "complete".into(),
            Cmd::Patch { .. } => "patch".into(),
            Cmd::WittPerp { .. } => "witt-perp".into(),
            Cmd::WittInv { .. } => "witt-inv".into(),
            Cmd::WittPf { .. } => "witt-pf".into(),
            Cmd::Hyperbolic { .. } => "hyperbolic".into(),
            Cmd::CheckEquiv { .. } => "check-equiv".into(),
            Cmd::SearchEquiv { .. } => "search-equiv".into(),
            Cmd::ExtractBlock { .. } => "extract-block".into(),
            Cmd::Symbol { .. } => "symbol".into(),
            Cmd::Phi { .. } => "phi".into(),
            Cmd::KernelCheck { .. } => "kernel-check".into(),
            Cmd::Suite { name, .. } => format!("suite {name}"),
            Cmd::Parse => "parse".into(),
        }
    }
}

/// Run one command against a parsed document. Never returns Err: failures
/// are folded into the report so the caller can print it and exit.
pub fn run_command(cmd: &Cmd, doc: &Document) -> Report {
    let started = Instant::now();
    let mut checks = Vec::new();
    let outcome = dispatch(cmd, doc, &mut checks);
    let timed = !matches!(cmd, Cmd::Suite { .. });
    let mut report = Report {
        command: cmd.name(),
        ok: checks.iter().all(|c| c.pass),
        result: None,
        checks,
        error: None,
        elapsed_ms: None,
    };
    match outcome {
        Ok(result) => report.result = result,
        Err(e) => {
            report.ok = false;
            report.error = Some(ErrorInfo { code: e.code().into(), message: e.to_string() });
        }
    }
    if timed {
        report.elapsed_ms = Some(started.elapsed().as_millis());
    }
    report
}

fn push(checks: &mut Vec<CheckLine>, label: &str, pass: bool, detail: impl Into<String>) {
    checks.push(CheckLine { label: label.into(), pass, detail: detail.into() });
}

fn get_matrix<'d>(doc: &'d Document, name: &str) -> Result<&'d Matrix> {
    match doc.get(name)? {
        Value::Matrix(m) => Ok(m),
        v => Err(Error::Unsupported(format!("'{name}' is a {}, expected a matrix", v.kind()))),
    }
}

fn get_word<'d>(doc: &'d Document, name: &str) -> Result<&'d ElementaryWord> {
    match doc.get(name)? {
        Value::Word(w) => Ok(w),
        v => Err(Error::Unsupported(format!("'{name}' is a {}, expected a word", v.kind()))),
    }
}

fn get_row<'d>(doc: &'d Document, name: &str) -> Result<&'d crate::lifts::UnimodularRow> {
    match doc.get(name)? {
        Value::Row { row, .. } => Ok(row),
        v => Err(Error::Unsupported(format!("'{name}' is a {}, expected a row", v.kind()))),
    }
}

fn get_ideal<'d>(doc: &'d Document, name: &str) -> Result<&'d Ideal> {
    match doc.get(name)? {
        Value::Ideal(i) => Ok(i),
        v => Err(Error::Unsupported(format!("'{name}' is a {}, expected an ideal", v.kind()))),
    }
}

fn get_elem<'d>(doc: &'d Document, name: &str) -> Result<&'d Element> {
    match doc.get(name)? {
        Value::Elem(e) => Ok(e),
        v => Err(Error::Unsupported(format!("'{name}' is a {}, expected an element", v.kind()))),
    }
}

fn get_cert<'d>(doc: &'d Document, name: &str) -> Result<&'d EquivCertificate> {
    match doc.get(name)? {
        Value::Cert(c) => Ok(c),
        v => Err(Error::Unsupported(format!("'{name}' is a {}, expected a certificate", v.kind()))),
    }
}

fn get_alt_rep(doc: &Document, name: &str, ideal: Option<&String>) -> Result<AltRep> {
    let m = get_matrix(doc, name)?.clone();
    let ideal = match ideal {
        Some(i) => Some(get_ideal(doc, i)?.clone()),
        None => None,
    };
    AltRep::new(m, ideal)
}

fn row_text(row: &crate::lifts::UnimodularRow) -> String {
    format!("[{}] witness [{}]", document::join(row.entries()), document::join(row.witness()))
}

fn st_word_text(w: &SteinbergWord) -> String {
    let atoms: Vec<String> = w
        .atoms()
        .iter()
        .map(|a| {
            let e = if a.exponent == 1 { String::new() } else { format!("^{}", a.exponent) };
            format!("X({}, {}, {}){e}", a.i, a.j, a.a)
        })
        .collect();
    format!("st {} : {}", w.size(), atoms.join(" "))
}

/// Reinterpret an elementary word's plain atoms as a formal word in the
/// Steinberg generators. Conjugated atoms have no formal counterpart.
fn to_steinberg(w: &ElementaryWord) -> Result<SteinbergWord> {
    if w.family() != crate::elementary::GenFamily::Symplectic {
        return Err(Error::Unsupported("formal words take symplectic input".into()));
    }
    let mut st = SteinbergWord::empty(w.ring(), w.size() / 2)?;
    for atom in w.atoms() {
        match atom {
            crate::elementary::Atom::Plain { i, j, a } => st.push(*i, *j, a.clone(), 1)?,
            crate::elementary::Atom::Conj { .. } => {
                return Err(Error::Unsupported(
                    "conjugated atoms have no formal generator form".into(),
                ))
            }
        }
    }
    Ok(st)
}

fn dispatch(cmd: &Cmd, doc: &Document, checks: &mut Vec<CheckLine>) -> Result<Option<String>> {
    match cmd {
        Cmd::Pfaffian { name } => {
            let m = get_matrix(doc, name)?;
            Ok(Some(m.pfaffian()?.to_string()))
        }
        Cmd::Det { name } => {
            let m = get_matrix(doc, name)?;
            Ok(Some(m.det()?.to_string()))
        }
        Cmd::Predicate { name, predicate, ideal } => {
            let m = get_matrix(doc, name)?;
            let (label, pass) = match predicate {
                PredicateKind::Alternating => ("matrix is alternating", m.is_alternating()),
                PredicateKind::Identity => ("matrix is the identity", m.is_identity()),
                PredicateKind::Invertible => ("matrix is invertible", m.is_invertible()),
                PredicateKind::Special => ("determinant is one", m.det()?.is_one()),
                PredicateKind::Symplectic => {
                    if m.n_rows() % 2 != 0 {
                        return Err(Error::Unsupported("odd size has no standard form".into()));
                    }
                    let chi = Matrix::standard_alternating(m.ring(), m.n_rows() / 2);
                    ("matrix preserves the standard form", m.preserves_form(&chi)?)
                }
                PredicateKind::Relative => {
                    let iname = ideal
                        .as_ref()
                        .ok_or_else(|| Error::Unsupported("relative needs --ideal".into()))?;
                    let i = get_ideal(doc, iname)?;
                    ("matrix is congruent to the identity", m.is_relative_to(i)?)
                }
            };
            push(checks, label, pass, name.clone());
            Ok(Some(pass.to_string()))
        }
        Cmd::Eval { name } => {
            let w = get_word(doc, name)?;
            Ok(Some(document::print_matrix(&w.eval()?)))
        }
        Cmd::LiftRow { name, vaserstein } => {
            let row = get_row(doc, name)?;
            let supplied = match vaserstein {
                Some(text) => Some(document::parse_inline_vector(row.ring(), text)?),
                None => None,
            };
            let lifted = lift_row(row, supplied.as_deref())?;
            let exc = lifted.ring().clone();
            let pi = RingHom::project_pi(&exc)?;
            let back: Result<Vec<Element>> = lifted.entries().iter().map(|x| pi.apply(x)).collect();
            push(checks, "lift projects back to the input row", back?.as_slice() == row.entries(), name.clone());
            Ok(Some(row_text(&lifted)))
        }
        Cmd::LiftMatrix { name, ideal, symplectic } => {
            let m = get_matrix(doc, name)?;
            let i = get_ideal(doc, ideal)?;
            let group = if *symplectic { MatrixGroup::Symplectic } else { MatrixGroup::SpecialLinear };
            let lifted = lift_matrix(m, i, group)?;
            let exc = lifted.ring().clone();
            let split = Ideal::split_zero(&exc)?;
            push(checks, "lift is congruent to the identity", lifted.is_relative_to(&split)?, name.clone());
            match group {
                MatrixGroup::SpecialLinear => {
                    push(checks, "lift has determinant one", lifted.det()?.is_one(), name.clone())
                }
                MatrixGroup::Symplectic => {
                    let chi = Matrix::standard_alternating(&exc, lifted.n_rows() / 2);
                    push(checks, "lift preserves the standard form", lifted.preserves_form(&chi)?, name.clone())
                }
            }
            let pi = RingHom::project_pi(&exc)?;
            push(checks, "lift projects back to the input", lifted.apply_hom(&pi)? == *m, name.clone());
            Ok(Some(document::print_matrix(&lifted)))
        }
        Cmd::Project { name } => {
            let m = get_matrix(doc, name)?;
            let pi = RingHom::project_pi(m.ring())?;
            Ok(Some(document::print_matrix(&m.apply_hom(&pi)?)))
        }
        Cmd::Whitehead { name } => {
            let gamma = get_matrix(doc, name)?;
            let w = whitehead_word(gamma)?;
            let target = gamma.perp(&gamma.inverse()?)?;
            push(checks, "word evaluates to the block pair", w.eval()? == target, name.clone());
            Ok(Some(document::print_word(&w)))
        }
        Cmd::Homotopy { name } => {
            let w = get_word(doc, name)?;
            let h = homotopy_word(w)?;
            let poly_ring = h.ring().clone();
            let base = w.ring().clone();
            let value = h.eval()?;
            let at_zero = RingHom::eval_at(&poly_ring, base.zero())?;
            let at_one = RingHom::eval_at(&poly_ring, base.one())?;
            push(checks, "word is trivial at zero", value.apply_hom(&at_zero)?.is_identity(), name.clone());
            push(checks, "word restores the input at one", value.apply_hom(&at_one)? == w.eval()?, name.clone());
            Ok(Some(document::print_word(&h)))
        }
        Cmd::ReducePrincipal { name } => {
            let v = get_row(doc, name)?;
            let (w, reduced) = reduce_to_principal(v)?;
            let moved = v.apply_word(&w)?;
            let pass = moved.entries() == reduced.entries() && moved.witness() == reduced.witness();
            push(checks, "word carries the row to the reduced row", pass, name.clone());
            Ok(Some(format!("word = {}\nrow = {}", document::print_word(&w), row_text(&reduced))))
        }
        Cmd::Complete { name, budget } => {
            let v = get_row(doc, name)?;
            if v.relative_ideal().is_some() {
                let gamma = complete_row_relative(v, *budget)?;
                let pass = verify_completion(v, &Completion::Matrix(gamma.clone()))?;
                push(checks, "completion verified", pass, name.clone());
                Ok(Some(document::print_matrix(&gamma)))
            } else {
                let w = bounded_search_completer(v, *budget)?;
                let pass = verify_completion(v, &Completion::Word(w.clone()))?;
                push(checks, "completion verified", pass, name.clone());
                Ok(Some(document::print_word(&w)))
            }
        }
        Cmd::Patch { s, t, a1, a2, ideal } => {
            let m1 = get_matrix(doc, a1)?;
            let m2 = get_matrix(doc, a2)?;
            let base = match &**m1.ring() {
                Ring::Localized { base, .. } => base.clone(),
                _ => {
                    return Err(Error::Unsupported(
                        "patch inputs live over localized rings".into(),
                    ))
                }
            };
            let s = parse_flag_elem(&base, s)?;
            let t = parse_flag_elem(&base, t)?;
            let i = get_ideal(doc, ideal)?;
            let alpha = patch_symplectic(&s, &t, m1, m2, i)?;
            let up_s = RingHom::localization_inclusion(m1.ring())?;
            let up_t = RingHom::localization_inclusion(m2.ring())?;
            push(checks, "patch restores the first localization", alpha.apply_hom(&up_s)? == *m1, a1.clone());
            push(checks, "patch restores the second localization", alpha.apply_hom(&up_t)? == *m2, a2.clone());
            Ok(Some(document::print_matrix(&alpha)))
        }
        Cmd::WittPerp { a, b, ideal } => {
            let ra = get_alt_rep(doc, a, ideal.as_ref())?;
            let rb = get_alt_rep(doc, b, ideal.as_ref())?;
            Ok(Some(document::print_matrix(witt_perp(&ra, &rb)?.matrix())))
        }
        Cmd::WittInv { name, ideal } => {
            let r = get_alt_rep(doc, name, ideal.as_ref())?;
            let inv = witt_inverse_rep(&r)?;
            let product = witt_pf(&inv)?.mul(&witt_pf(&r)?)?;
            push(checks, "Pfaffians multiply to one", product.is_one(), name.clone());
            Ok(Some(document::print_matrix(inv.matrix())))
        }
        Cmd::WittPf { name, ideal } => {
            let r = get_alt_rep(doc, name, ideal.as_ref())?;
            Ok(Some(witt_pf(&r)?.to_string()))
        }
        Cmd::Hyperbolic { name, ideal } => {
            let m = get_matrix(doc, name)?;
            let i = match ideal {
                Some(n) => Some(get_ideal(doc, n)?.clone()),
                None => None,
            };
            let h = hyperbolic_h(m, i.as_ref())?;
            Ok(Some(document::print_matrix(h.matrix())))
        }
        Cmd::CheckEquiv { a, b, cert, ideal } => {
            let ra = get_alt_rep(doc, a, ideal.as_ref())?;
            let rb = get_alt_rep(doc, b, ideal.as_ref())?;
            let c = get_cert(doc, cert)?;
            let pass = check_equiv(&ra, &rb, c)?;
            push(checks, "certificate relates the representatives", pass, format!("{a}, {b}"));
            Ok(Some(pass.to_string()))
        }
        Cmd::SearchEquiv { a, b, ideal, budget } => {
            let ra = get_alt_rep(doc, a, ideal.as_ref())?;
            let rb = get_alt_rep(doc, b, ideal.as_ref())?;
            let c = search_equiv(&ra, &rb, *budget)?;
            push(checks, "found certificate verifies", check_equiv(&ra, &rb, &c)?, format!("{a}, {b}"));
            Ok(Some(format!("pad {} {}", c.padding, document::print_word(&c.word))))
        }
        Cmd::ExtractBlock { delta, theta1, theta2, ideal } => {
            let d = get_matrix(doc, delta)?;
            let t1 = get_alt_rep(doc, theta1, ideal.as_ref())?;
            let t2 = get_alt_rep(doc, theta2, ideal.as_ref())?;
            let beta = extract_block(d, &t1, &t2)?;
            let pass = t1.matrix().congruence(&beta)? == *t2.matrix();
            push(checks, "extracted block carries one form to the other", pass, delta.clone());
            Ok(Some(document::print_matrix(&beta)))
        }
        Cmd::Symbol { kind, r, s, half } => {
            let r = get_elem(doc, r)?;
            let s = match s {
                Some(n) => Some(get_elem(doc, n)?.clone()),
                None => None,
            };
            let w = symbol_build(*kind, None, r, s.as_ref(), *half)?;
            match kind {
                SymbolKind::Curly | SymbolKind::Square => {
                    push(checks, "symbol lands in the kernel", kernel_check(&w)?, String::new())
                }
                SymbolKind::Sw | SymbolKind::Sh => {
                    let m = steinberg_phi(&w)?;
                    let chi = Matrix::standard_alternating(m.ring(), m.n_rows() / 2);
                    push(checks, "image preserves the standard form", m.preserves_form(&chi)?, String::new())
                }
            }
            Ok(Some(st_word_text(&w)))
        }
        Cmd::Phi { name } => {
            let st = to_steinberg(get_word(doc, name)?)?;
            Ok(Some(document::print_matrix(&steinberg_phi(&st)?)))
        }
        Cmd::KernelCheck { name } => {
            let st = to_steinberg(get_word(doc, name)?)?;
            let pass = kernel_check(&st)?;
            push(checks, "word evaluates to the identity", pass, name.clone());
            Ok(Some(pass.to_string()))
        }
        Cmd::Suite { name, seed, trials } => {
            let report = suites::run(name, *seed, *trials)?;
            checks.extend(report.lines.clone());
            Ok(Some(format!("seed {}", report.seed)))
        }
        Cmd::Parse => Ok(Some(document::print_document(doc))),
    }
}

/// Elements passed on the command line (`--s 2`) instead of bound in the
/// document; parsed with the document grammar against the given ring.
pub fn parse_flag_elem(ring: &RingRef, text: &str) -> Result<Element> {
    document::parse_inline_elem(ring, text)
}
