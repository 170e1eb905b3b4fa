//! Named property suites. Each suite draws its data from a seeded sampler,
//! runs a fixed list of checks, and returns a report with one line per
//! check. Reports are plain data and contain no timing, so a fixed seed
//! reproduces a report byte for byte.

use serde::{Deserialize, Serialize};

use crate::completion::{complete_row_relative, patch_symplectic, verify_completion, Completion};
use crate::elementary::{
    elem_generator, index_sign, pair_index, row_reduce_euclidean, whitehead_word, GenFamily,
};
use crate::error::{Error, Result};
use crate::lifts::{
    include_matrix, lift_ideal_matrix, lift_matrix, lift_row, lift_word, localization_compat,
    MatrixGroup, UnimodularRow,
};
use crate::matrix::{row_times_matrix, Matrix};
use crate::rings::{Element, Ideal, Ring, RingHom, RingRef};
use crate::sample::Sampler;
use crate::steinberg::{
    esd_transform, kernel_check, steinberg_phi, symbol_build, transvection_matrix, SymbolKind,
    SymplecticVector,
};
use crate::witt::{
    check_equiv, extract_block, hyperbolic_h, pf_section, witt_inverse_rep, witt_perp, witt_pf,
    AltRep, EquivCertificate,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckLine {
    pub label: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub name: String,
    pub seed: u64,
    pub lines: Vec<CheckLine>,
}

impl SuiteReport {
    pub fn all_pass(&self) -> bool {
        self.lines.iter().all(|l| l.pass)
    }
}

pub const NAMES: [&str; 7] =
    ["elementary", "steinberg", "esd", "pfaffian", "excision", "witt", "completion"];

pub fn run(name: &str, seed: u64, trials: Option<u64>) -> Result<SuiteReport> {
    match name {
        "elementary" => elementary_suite(seed, trials),
        "steinberg" => steinberg_suite(seed, trials),
        "esd" => esd_suite(seed, trials),
        "pfaffian" => pfaffian_suite(seed, trials),
        "excision" => excision_suite(seed, trials),
        "witt" => witt_suite(seed, trials),
        "completion" => completion_suite(seed, trials),
        "all" => {
            let mut lines = Vec::new();
            for n in NAMES {
                for l in run(n, seed, trials)?.lines {
                    lines.push(CheckLine { label: format!("{n}: {}", l.label), ..l });
                }
            }
            Ok(SuiteReport { name: "all".into(), seed, lines })
        }
        other => Err(Error::Unsupported(format!("unknown suite '{other}'"))),
    }
}

/// Run `trials` draws of a pass/fail check and aggregate them into a line.
fn tally(
    lines: &mut Vec<CheckLine>,
    label: &str,
    trials: u64,
    mut check: impl FnMut(u64) -> Result<bool>,
) -> Result<()> {
    let mut fails = 0u64;
    let mut first = None;
    for k in 0..trials {
        if !check(k)? {
            fails += 1;
            if first.is_none() {
                first = Some(k);
            }
        }
    }
    let detail = match first {
        None => format!("{trials} trials"),
        Some(k) => format!("{fails} failures in {trials} trials, first at trial {k}"),
    };
    lines.push(CheckLine { label: label.into(), pass: fails == 0, detail });
    Ok(())
}

fn se(ring: &RingRef, n2: usize, i: usize, j: usize, a: &Element) -> Result<Matrix> {
    elem_generator(ring, GenFamily::Symplectic, n2, i, j, a)
}

/// x y x^{-1} y^{-1} with the inverses formed by negating the argument.
fn gen_commutator(
    ring: &RingRef,
    n2: usize,
    (i, j, a): (usize, usize, &Element),
    (h, k, b): (usize, usize, &Element),
) -> Result<Matrix> {
    se(ring, n2, i, j, a)?
        .mul(&se(ring, n2, h, k, b)?)?
        .mul(&se(ring, n2, i, j, &a.neg())?)?
        .mul(&se(ring, n2, h, k, &b.neg())?)
}

fn sample_commuting_indices(s: &mut Sampler, n2: usize) -> ((usize, usize), (usize, usize)) {
    let (i, j) = s.index_pair(n2);
    loop {
        let (h, k) = s.index_pair(n2);
        if h != j && h != pair_index(i) && k != i && k != pair_index(j) {
            return ((i, j), (h, k));
        }
    }
}

fn sample_chain_indices(s: &mut Sampler, n2: usize) -> (usize, usize, usize) {
    loop {
        let i = s.int(1, n2 as i64) as usize;
        let j = s.int(1, n2 as i64) as usize;
        let k = s.int(1, n2 as i64) as usize;
        let distinct = i != j && j != k && i != k;
        if distinct && i != pair_index(j) && i != pair_index(k) && j != pair_index(k) {
            return (i, j, k);
        }
    }
}

fn sample_long_short_indices(s: &mut Sampler, n2: usize) -> (usize, usize) {
    let i = s.int(1, n2 as i64) as usize;
    loop {
        let j = s.int(1, n2 as i64) as usize;
        if j != i && j != pair_index(i) {
            return (i, j);
        }
    }
}

fn elementary_suite(seed: u64, trials: Option<u64>) -> Result<SuiteReport> {
    let t = trials.unwrap_or(1000);
    let mut lines = Vec::new();
    let rings: Vec<(&str, RingRef, i64)> = vec![
        ("Z", Ring::integers(), 9),
        ("Z/8", Ring::integers_mod(8)?, 9),
        ("F5[X]", Ring::polynomial(&Ring::integers_mod(5)?, "X")?, 4),
    ];
    for (tag, ring, bound) in &rings {
        let mut s = Sampler::new(seed);
        tally(&mut lines, &format!("E0 transpose symmetry over {tag}"), t, |k| {
            let n2 = if k % 2 == 0 { 6 } else { 8 };
            let (i, j) = s.index_pair(n2);
            let a = s.element(ring, *bound)?;
            let sgn = index_sign(i) * index_sign(j);
            let rhs_arg = a.mul(&ring.from_i64(-sgn))?;
            Ok(se(ring, n2, i, j, &a)? == se(ring, n2, pair_index(j), pair_index(i), &rhs_arg)?)
        })?;
        tally(&mut lines, &format!("E1 additivity over {tag}"), t, |k| {
            let n2 = if k % 2 == 0 { 6 } else { 8 };
            let (i, j) = s.index_pair(n2);
            let a = s.element(ring, *bound)?;
            let b = s.element(ring, *bound)?;
            let lhs = se(ring, n2, i, j, &a)?.mul(&se(ring, n2, i, j, &b)?)?;
            Ok(lhs == se(ring, n2, i, j, &a.add(&b)?)?)
        })?;
        tally(&mut lines, &format!("E2 commuting pairs over {tag}"), t, |k| {
            let n2 = if k % 2 == 0 { 6 } else { 8 };
            let ((i, j), (h, l)) = sample_commuting_indices(&mut s, n2);
            let a = s.element(ring, *bound)?;
            let b = s.element(ring, *bound)?;
            Ok(gen_commutator(ring, n2, (i, j, &a), (h, l, &b))?.is_identity())
        })?;
        tally(&mut lines, &format!("E3 chained commutator over {tag}"), t, |kk| {
            let n2 = if kk % 2 == 0 { 6 } else { 8 };
            let (i, j, k) = sample_chain_indices(&mut s, n2);
            let a = s.element(ring, *bound)?;
            let b = s.element(ring, *bound)?;
            let lhs = gen_commutator(ring, n2, (i, j, &a), (j, k, &b))?;
            Ok(lhs == se(ring, n2, i, k, &a.mul(&b)?)?)
        })?;
        tally(&mut lines, &format!("E4 long-short commutator over {tag}"), t, |k| {
            let n2 = if k % 2 == 0 { 6 } else { 8 };
            let (i, j) = sample_long_short_indices(&mut s, n2);
            let si = pair_index(i);
            let a = s.element(ring, *bound)?;
            let b = s.element(ring, *bound)?;
            let lhs = gen_commutator(ring, n2, (i, si, &a), (si, j, &b))?;
            let ab = a.mul(&b)?;
            let sgn = index_sign(i) * index_sign(j);
            let ab2 = ab.mul(&b)?.mul(&ring.from_i64(sgn))?;
            let rhs = se(ring, n2, i, j, &ab)?.mul(&se(ring, n2, pair_index(j), j, &ab2)?)?;
            Ok(lhs == rhs)
        })?;
        tally(&mut lines, &format!("E5 short-long commutator over {tag}"), t, |k| {
            let n2 = if k % 2 == 0 { 6 } else { 8 };
            let (i, j) = sample_long_short_indices(&mut s, n2);
            let a = s.element(ring, *bound)?;
            let b = s.element(ring, *bound)?;
            let lhs = gen_commutator(ring, n2, (i, j, &a), (j, pair_index(i), &b))?;
            let arg = a.mul(&b)?.mul(&ring.from_i64(2))?;
            Ok(lhs == se(ring, n2, i, pair_index(i), &arg)?)
        })?;
    }
    Ok(SuiteReport { name: "elementary".into(), seed, lines })
}

fn steinberg_suite(seed: u64, trials: Option<u64>) -> Result<SuiteReport> {
    let t = trials.unwrap_or(1000);
    let symbol_t = trials.unwrap_or(100).min(100);
    let mut lines = Vec::new();
    let half = 3usize;
    let n2 = 2 * half;
    let rings: Vec<(&str, RingRef, i64)> =
        vec![("Z", Ring::integers(), 9), ("Z/8", Ring::integers_mod(8)?, 9)];

    // one formal generator as a word
    let atom = |ring: &RingRef, i: usize, j: usize, a: &Element| -> Result<crate::steinberg::SteinbergWord> {
        let mut w = crate::steinberg::SteinbergWord::empty(ring, half)?;
        w.push(i, j, a.clone(), 1)?;
        Ok(w)
    };

    for (tag, ring, bound) in &rings {
        let mut s = Sampler::new(seed);
        tally(&mut lines, &format!("R0 transpose symmetry over {tag}"), t, |_| {
            let (i, j) = s.index_pair(n2);
            let a = s.element(ring, *bound)?;
            let sgn = index_sign(i) * index_sign(j);
            let left = atom(ring, i, j, &a)?;
            let right = atom(ring, pair_index(j), pair_index(i), &a.mul(&ring.from_i64(-sgn))?)?;
            kernel_check(&left.concat(&right.inverse())?)
        })?;
        tally(&mut lines, &format!("R1 additivity over {tag}"), t, |_| {
            let (i, j) = s.index_pair(n2);
            let a = s.element(ring, *bound)?;
            let b = s.element(ring, *bound)?;
            let left = atom(ring, i, j, &a)?.concat(&atom(ring, i, j, &b)?)?;
            let right = atom(ring, i, j, &a.add(&b)?)?;
            kernel_check(&left.concat(&right.inverse())?)
        })?;
        tally(&mut lines, &format!("R2 commuting pairs over {tag}"), t, |_| {
            let ((i, j), (h, l)) = sample_commuting_indices(&mut s, n2);
            let a = s.element(ring, *bound)?;
            let b = s.element(ring, *bound)?;
            kernel_check(&atom(ring, i, j, &a)?.commutator(&atom(ring, h, l, &b)?)?)
        })?;
        tally(&mut lines, &format!("R3 chained commutator over {tag}"), t, |_| {
            let (i, j, k) = sample_chain_indices(&mut s, n2);
            let a = s.element(ring, *bound)?;
            let b = s.element(ring, *bound)?;
            let left = atom(ring, i, j, &a)?.commutator(&atom(ring, j, k, &b)?)?;
            let right = atom(ring, i, k, &a.mul(&b)?)?;
            kernel_check(&left.concat(&right.inverse())?)
        })?;
        tally(&mut lines, &format!("R4 long-short commutator over {tag}"), t, |_| {
            let (i, j) = sample_long_short_indices(&mut s, n2);
            let si = pair_index(i);
            let a = s.element(ring, *bound)?;
            let b = s.element(ring, *bound)?;
            let left = atom(ring, i, si, &a)?.commutator(&atom(ring, si, j, &b)?)?;
            let ab = a.mul(&b)?;
            let sgn = index_sign(i) * index_sign(j);
            let right = atom(ring, i, j, &ab)?
                .concat(&atom(ring, pair_index(j), j, &ab.mul(&b)?.mul(&ring.from_i64(sgn))?)?)?;
            kernel_check(&left.concat(&right.inverse())?)
        })?;
        tally(&mut lines, &format!("R5 short-long commutator over {tag}"), t, |_| {
            let (i, j) = sample_long_short_indices(&mut s, n2);
            let a = s.element(ring, *bound)?;
            let b = s.element(ring, *bound)?;
            let left = atom(ring, i, j, &a)?.commutator(&atom(ring, j, pair_index(i), &b)?)?;
            let right = atom(ring, i, pair_index(i), &a.mul(&b)?.mul(&ring.from_i64(2))?)?;
            kernel_check(&left.concat(&right.inverse())?)
        })?;
    }

    let chi3 = |ring: &RingRef| Matrix::standard_alternating(ring, half);
    let m7 = Ring::integers_mod(7)?;
    let q = Ring::rationals();
    for (tag, ring) in [("Z/7", &m7), ("Q", &q)] {
        let mut s = Sampler::new(seed);
        tally(&mut lines, &format!("unit symbols land in the kernel over {tag}"), symbol_t, |_| {
            let (r, sv) = if tag == "Z/7" {
                (ring.from_i64(s.int(1, 6)), ring.from_i64(s.int(1, 6)))
            } else {
                let p = if s.int(0, 1) == 0 { s.int(1, 9) } else { -s.int(1, 9) };
                let p2 = if s.int(0, 1) == 0 { s.int(1, 9) } else { -s.int(1, 9) };
                (
                    ring.rational(p.into(), s.int(1, 9).into())?,
                    ring.rational(p2.into(), s.int(1, 9).into())?,
                )
            };
            let sw = symbol_build(SymbolKind::Sw, None, &r, None, half)?;
            let sh = symbol_build(SymbolKind::Sh, None, &r, None, half)?;
            if !steinberg_phi(&sw)?.preserves_form(&chi3(ring))?
                || !steinberg_phi(&sh)?.preserves_form(&chi3(ring))?
            {
                return Ok(false);
            }
            let curly = symbol_build(SymbolKind::Curly, None, &r, Some(&sv), half)?;
            let square = symbol_build(SymbolKind::Square, None, &r, Some(&sv), half)?;
            Ok(kernel_check(&curly)? && kernel_check(&square)?)
        })?;
    }
    Ok(SuiteReport { name: "steinberg".into(), seed, lines })
}

fn esd_suite(seed: u64, trials: Option<u64>) -> Result<SuiteReport> {
    let t = trials.unwrap_or(500);
    let mut lines = Vec::new();
    let z = Ring::integers();
    let m8 = Ring::integers_mod(8)?;
    let n2 = 6usize;

    {
        let mut s = Sampler::new(seed);
        let reps = (t / 30).max(1);
        let mut pass = true;
        let mut total = 0u64;
        for i in 1..=n2 {
            for j in 1..=n2 {
                if i == j {
                    continue;
                }
                for r in 0..reps {
                    let ring = if r % 2 == 0 { &z } else { &m8 };
                    let a = s.element(ring, 9)?;
                    total += 1;
                    if transvection_matrix(ring, n2, i, j, &a)?
                        != se(ring, n2, i, j, &a)?
                    {
                        pass = false;
                    }
                }
            }
        }
        lines.push(CheckLine {
            label: "transvections match the generator matrices".into(),
            pass,
            detail: format!("all 30 index pairs at size 6, {total} instances"),
        });
    }

    // an isotropic pair through a symplectic change of frame: u = g e1 and
    // v = g v' with v'_2 = 0 forces <u, v> = 0
    let frame = |s: &mut Sampler,
                     ring: &RingRef,
                     bound: i64|
     -> Result<(Matrix, SymplecticVector, SymplecticVector)> {
        let g = s.word(ring, GenFamily::Symplectic, n2, 3, bound)?.eval()?;
        let u = SymplecticVector::basis(ring, n2, 1)?.apply(&g)?;
        let mut entries = Vec::with_capacity(n2);
        for idx in 0..n2 {
            entries.push(if idx == 1 { ring.zero() } else { s.element(ring, bound)? });
        }
        let v = SymplecticVector::new(ring, entries)?.apply(&g)?;
        Ok((g, u, v))
    };

    {
        let mut s = Sampler::new(seed);
        tally(&mut lines, "composition in the second slot", t, |k| {
            let ring = if k % 2 == 0 { &z } else { &m8 };
            let bound = if k % 2 == 0 { 3 } else { 9 };
            let (g, u, v) = frame(&mut s, ring, bound)?;
            let mut entries = Vec::with_capacity(n2);
            for idx in 0..n2 {
                entries.push(if idx == 1 { ring.zero() } else { s.element(ring, bound)? });
            }
            let w = SymplecticVector::new(ring, entries)?.apply(&g)?;
            let a = s.element(ring, bound)?;
            let b = s.element(ring, bound)?;
            let lhs = esd_transform(&u, &v, &a)?.mul(&esd_transform(&u, &w, &b)?)?;
            let arg = a.add(&b)?.add(&v.pairing(&w)?)?;
            Ok(lhs == esd_transform(&u, &v.add(&w)?, &arg)?)
        })?;
    }
    {
        let mut s = Sampler::new(seed);
        tally(&mut lines, "swap with a scalar", t, |k| {
            let ring = if k % 2 == 0 { &z } else { &m8 };
            let bound = if k % 2 == 0 { 3 } else { 9 };
            let (_, u, v) = frame(&mut s, ring, bound)?;
            let a = s.element(ring, bound)?;
            let lhs = esd_transform(&u, &v.scale(&a)?, &ring.zero())?;
            Ok(lhs == esd_transform(&v, &u.scale(&a)?, &ring.zero())?)
        })?;
    }
    {
        let mut s = Sampler::new(seed);
        tally(&mut lines, "conjugation moves the frame", t, |k| {
            let ring = if k % 2 == 0 { &z } else { &m8 };
            let bound = if k % 2 == 0 { 2 } else { 9 };
            let (_, u, v) = frame(&mut s, ring, bound)?;
            let gw = s.word(ring, GenFamily::Symplectic, n2, 3, bound)?;
            let g = gw.eval()?;
            let ginv = gw.inverse().eval()?;
            let lhs = g.mul(&esd_transform(&u, &v, &ring.zero())?)?.mul(&ginv)?;
            Ok(lhs == esd_transform(&u.apply(&g)?, &v.apply(&g)?, &ring.zero())?)
        })?;
    }
    {
        let mut s = Sampler::new(seed);
        tally(&mut lines, "basis commutator formula", t, |k| {
            let ring = if k % 2 == 0 { &z } else { &m8 };
            let bound = if k % 2 == 0 { 3 } else { 9 };
            // i in one index pair, u supported on a second, v on the third
            let blocks = [[1usize, 2], [3, 4], [5, 6]];
            let bi = s.int(0, 2) as usize;
            let bu = (bi + 1 + s.int(0, 1) as usize) % 3;
            let bv = 3 - bi - bu;
            let i = blocks[bi][s.int(0, 1) as usize];
            let mut ue = vec![ring.zero(); n2];
            let mut ve = vec![ring.zero(); n2];
            for idx in blocks[bu] {
                ue[idx - 1] = s.element(ring, bound)?;
            }
            for idx in blocks[bv] {
                ve[idx - 1] = s.element(ring, bound)?;
            }
            let u = SymplecticVector::new(ring, ue)?;
            let v = SymplecticVector::new(ring, ve)?;
            let a = s.element(ring, bound)?;
            let ei = SymplecticVector::basis(ring, n2, i)?;
            let esi = SymplecticVector::basis(ring, n2, pair_index(i))?;
            let zero = ring.zero();
            let x = esd_transform(&ei, &u, &zero)?;
            let y = esd_transform(&esi, &v, &a)?;
            let xinv = esd_transform(&ei, &u.scale(&ring.from_i64(-1))?, &zero)?;
            let yinv = esd_transform(&esi, &v.scale(&ring.from_i64(-1))?, &a.neg())?;
            let lhs = x.mul(&y)?.mul(&xinv)?.mul(&yinv)?;
            let r1 = esd_transform(&u, &v.scale(&ring.from_i64(index_sign(i)))?, &a)?;
            let c = a.mul(&ring.from_i64(-index_sign(pair_index(i))))?;
            let r2 = esd_transform(&esi, &u.scale(&c)?, &zero)?;
            Ok(lhs == r1.mul(&r2)?)
        })?;
    }
    Ok(SuiteReport { name: "esd".into(), seed, lines })
}

fn pfaffian_suite(seed: u64, trials: Option<u64>) -> Result<SuiteReport> {
    let t = trials.unwrap_or(500);
    let mut lines = Vec::new();
    let rings: Vec<(&str, RingRef)> = vec![("Z", Ring::integers()), ("Z/7", Ring::integers_mod(7)?)];
    let sizes = [1usize, 2, 3, 4];

    let mut run_clause = |label: &str,
                          f: &mut dyn FnMut(&mut Sampler, &RingRef, usize) -> Result<bool>|
     -> Result<()> {
        let mut fails = 0u64;
        let mut total = 0u64;
        for (_, ring) in &rings {
            let mut s = Sampler::new(seed);
            for half in sizes {
                for _ in 0..t {
                    total += 1;
                    if !f(&mut s, ring, half)? {
                        fails += 1;
                    }
                }
            }
        }
        let detail = if fails == 0 {
            format!("sizes 2 to 8 over Z and Z/7, {total} instances")
        } else {
            format!("{fails} failures in {total} instances")
        };
        lines.push(CheckLine { label: label.into(), pass: fails == 0, detail });
        Ok(())
    };

    run_clause("block sums multiply", &mut |s, ring, half| {
        let a = s.alternating(ring, half, 9)?;
        let b = s.alternating(ring, 1, 9)?;
        Ok(a.perp(&b)?.pfaffian()? == a.pfaffian()?.mul(&b.pfaffian()?)?)
    })?;
    run_clause("transpose flips by parity", &mut |s, ring, half| {
        let a = s.alternating(ring, half, 9)?;
        let sign = ring.from_i64(if half % 2 == 0 { 1 } else { -1 });
        Ok(a.transpose().pfaffian()? == a.pfaffian()?.mul(&sign)?)
    })?;
    run_clause("square is the determinant", &mut |s, ring, half| {
        let a = s.alternating(ring, half, 9)?;
        let pf = a.pfaffian()?;
        Ok(pf.mul(&pf)? == a.det()?)
    })?;
    run_clause("congruence scales by the determinant", &mut |s, ring, half| {
        let a = s.alternating(ring, half, 9)?;
        let n = 2 * half;
        let mut b = Matrix::zero(ring, n, n);
        for i in 0..n {
            for j in 0..n {
                b.set_entry(i, j, s.element(ring, 3)?);
            }
        }
        Ok(a.congruence(&b)?.pfaffian()? == b.det()?.mul(&a.pfaffian()?)?)
    })?;
    {
        let mut pass = true;
        for (_, ring) in &rings {
            for half in sizes {
                if !Matrix::standard_alternating(ring, half).pfaffian()?.is_one() {
                    pass = false;
                }
            }
        }
        lines.push(CheckLine {
            label: "standard form has Pfaffian one".into(),
            pass,
            detail: "sizes 2 to 8 over Z and Z/7".into(),
        });
    }
    Ok(SuiteReport { name: "pfaffian".into(), seed, lines })
}

fn excision_suite(seed: u64, trials: Option<u64>) -> Result<SuiteReport> {
    let t = trials.unwrap_or(1000);
    let t500 = trials.unwrap_or(500);
    let t200 = trials.unwrap_or(200);
    let t100 = trials.unwrap_or(100);
    let mut lines = Vec::new();
    let z = Ring::integers();
    let i6 = Ideal::principal(z.from_i64(6))?;
    let exc = Ring::excision(&z, i6.clone())?;
    let dbl = Ring::double(&z, i6.clone())?;

    for (tag, ring) in [("split pairs", &exc), ("congruent pairs", &dbl)] {
        let mut s = Sampler::new(seed);
        tally(&mut lines, &format!("ring axioms for {tag}"), t, |_| {
            let x = s.element(ring, 9)?;
            let y = s.element(ring, 9)?;
            let w = s.element(ring, 9)?;
            let assoc_add = x.add(&y)?.add(&w)? == x.add(&y.add(&w)?)?;
            let comm_add = x.add(&y)? == y.add(&x)?;
            let assoc_mul = x.mul(&y)?.mul(&w)? == x.mul(&y.mul(&w)?)?;
            let comm_mul = x.mul(&y)? == y.mul(&x)?;
            let distrib = x.mul(&y.add(&w)?)? == x.mul(&y)?.add(&x.mul(&w)?)?;
            let unital = x.mul(&ring.one())? == x && x.add(&ring.zero())? == x;
            let inverses = x.add(&x.neg())?.is_zero();
            Ok(assoc_add && comm_add && assoc_mul && comm_mul && distrib && unital && inverses)
        })?;
    }

    {
        let mut s = Sampler::new(seed);
        let u = RingHom::double_u(&exc)?;
        let v = RingHom::double_v(u.target())?;
        tally(&mut lines, "pair isomorphisms invert each other", t200, |_| {
            let x = s.element(&exc, 9)?;
            let y = s.element(&dbl, 9)?;
            let round_x = v.apply(&u.apply(&x)?)? == x;
            let round_y = u.apply(&v.apply(&y)?)? == y;
            let z2 = s.element(&exc, 9)?;
            let hom = u.apply(&x.mul(&z2)?)? == u.apply(&x)?.mul(&u.apply(&z2)?)?
                && u.apply(&x.add(&z2)?)? == u.apply(&x)?.add(&u.apply(&z2)?)?;
            Ok(round_x && round_y && hom)
        })?;
    }

    {
        let mut s = Sampler::new(seed);
        tally(&mut lines, "ideal matrix lifts multiply through the form", t500, |k| {
            let half = 1 + (k % 3) as usize;
            let cols = 1 + (k % 4) as usize;
            let n = 2 * half;
            let chi = Matrix::standard_alternating(&z, half);
            let chi_inc = include_matrix(&chi, &exc)?;
            let mut beta = Matrix::zero(&z, n, cols);
            for i in 0..n {
                for j in 0..cols {
                    beta.set_entry(i, j, s.ideal_element(&i6, 3)?);
                }
            }
            let left = chi_inc.mul(&lift_ideal_matrix(&beta, &exc)?)?
                == lift_ideal_matrix(&chi.mul(&beta)?, &exc)?;
            let mut gamma = Matrix::zero(&z, cols, n);
            for i in 0..cols {
                for j in 0..n {
                    gamma.set_entry(i, j, s.ideal_element(&i6, 3)?);
                }
            }
            let right = lift_ideal_matrix(&gamma, &exc)?.mul(&chi_inc)?
                == lift_ideal_matrix(&gamma.mul(&chi)?, &exc)?;
            Ok(left && right)
        })?;
    }

    // lift of an alternating representative: the included standard form
    // plus the lifted deviation
    let alt_lift = |a: &Matrix, half: usize| -> Result<Matrix> {
        let chi = Matrix::standard_alternating(&z, half);
        include_matrix(&chi, &exc)?.add(&lift_ideal_matrix(&a.sub(&chi)?, &exc)?)
    };
    {
        let mut s = Sampler::new(seed);
        tally(&mut lines, "block sums and inverses commute with lifting", t500, |k| {
            let ha = 1 + (k % 2) as usize;
            let hb = 1 + ((k / 2) % 2) as usize;
            let a = s.alt_rep(&z, ha, &i6, 2, 3)?;
            let b = s.alt_rep(&z, hb, &i6, 2, 3)?;
            let sum = witt_perp(&a, &b)?;
            let sums_match =
                alt_lift(sum.matrix(), ha + hb)? == alt_lift(a.matrix(), ha)?.perp(&alt_lift(b.matrix(), hb)?)?;
            let tilde = witt_inverse_rep(&a)?;
            let sigma_inc = include_matrix(&Matrix::pair_swap(&z, ha), &exc)?;
            let tilde_match = alt_lift(tilde.matrix(), ha)?
                == sigma_inc.mul(&alt_lift(a.matrix(), ha)?.inverse()?)?.mul(&sigma_inc)?;
            Ok(sums_match && tilde_match)
        })?;
    }

    {
        let mut s = Sampler::new(seed);
        tally(&mut lines, "relative group lifts stay special and relative", t200, |k| {
            let split = Ideal::split_zero(&exc)?;
            if k % 2 == 0 {
                let w = s.relative_word(&z, GenFamily::Linear, 4, 3, &i6, 2)?;
                let alpha = w.eval()?;
                let l = lift_matrix(&alpha, &i6, MatrixGroup::SpecialLinear)?;
                Ok(l.det()?.is_one() && l.is_relative_to(&split)?)
            } else {
                let w = s.relative_word(&z, GenFamily::Symplectic, 4, 3, &i6, 2)?;
                let alpha = w.eval()?;
                let l = lift_matrix(&alpha, &i6, MatrixGroup::Symplectic)?;
                let chi_inc = include_matrix(&Matrix::standard_alternating(&z, 2), &exc)?;
                Ok(l.det()?.is_one() && l.is_relative_to(&split)? && l.preserves_form(&chi_inc)?)
            }
        })?;
    }

    {
        let mut s = Sampler::new(seed);
        let fs = [2i64, 3, 5, 7];
        tally(&mut lines, "lifting commutes with localization", t100, |k| {
            let (w, group) = if k % 2 == 0 {
                (s.relative_word(&z, GenFamily::Linear, 4, 2, &i6, 2)?, MatrixGroup::SpecialLinear)
            } else {
                (s.relative_word(&z, GenFamily::Symplectic, 4, 2, &i6, 2)?, MatrixGroup::Symplectic)
            };
            let f = z.from_i64(fs[(k % 4) as usize]);
            localization_compat(&w.eval()?, &i6, &f, group)
        })?;
    }

    {
        let mut s = Sampler::new(seed);
        let pi = RingHom::project_pi(&exc)?;
        tally(&mut lines, "projection undoes lifting", t100, |k| {
            let v = s.relative_unimodular_row(&z, &i6, 3, 3, 2)?;
            let vl = lift_row(&v, None)?;
            for (lifted, orig) in vl.entries().iter().zip(v.entries()) {
                if pi.apply(lifted)? != *orig {
                    return Ok(false);
                }
            }
            let w = s.relative_word(&z, GenFamily::Linear, 4, 2, &i6, 2)?;
            let alpha = w.eval()?;
            let back = lift_matrix(&alpha, &i6, MatrixGroup::SpecialLinear)?.apply_hom(&pi)?;
            if back != alpha {
                return Ok(false);
            }
            let wl = lift_word(&w, &i6)?;
            let _ = k;
            Ok(wl.eval()?.apply_hom(&pi)? == alpha)
        })?;
    }

    {
        let mut s = Sampler::new(seed);
        let split = Ideal::split_zero(&exc)?;
        let bar = RingHom::bar_split(&exc)?;
        tally(&mut lines, "split relative words are split on both tests", t100, |_| {
            let w = s.relative_word(&exc, GenFamily::Linear, 3, 3, &split, 2)?;
            let m = w.eval()?;
            Ok(m.is_relative_to(&split)? && m.apply_hom(&bar)?.is_identity())
        })?;
    }
    Ok(SuiteReport { name: "excision".into(), seed, lines })
}

fn witt_suite(seed: u64, trials: Option<u64>) -> Result<SuiteReport> {
    let t200 = trials.unwrap_or(200);
    let t100 = trials.unwrap_or(100);
    let mut lines = Vec::new();
    let m8 = Ring::integers_mod(8)?;
    let i4 = Ideal::principal(m8.from_i64(4))?;
    let z = Ring::integers();
    let i2z = Ideal::principal(z.from_i64(2))?;

    {
        // congruence-kernel units: 1 and 5 in Z/8 mod <4>, 1 and -1 in Z mod <2>
        let mut pass = true;
        for a in [m8.from_i64(1), m8.from_i64(5)] {
            if witt_pf(&pf_section(&a, &i4)?)? != a {
                pass = false;
            }
        }
        for a in [z.from_i64(1), z.from_i64(-1)] {
            if witt_pf(&pf_section(&a, &i2z)?)? != a {
                pass = false;
            }
        }
        lines.push(CheckLine {
            label: "section inverts the Pfaffian on kernel units".into(),
            pass,
            detail: "units 1, 5 of Z/8 mod <4> and 1, -1 of Z mod <2>".into(),
        });
    }

    {
        // alpha_{ab} perp chi_1 is equivalent to alpha_a perp alpha_b via
        // the conjugation word of diag(b, 1)
        let mut pass = true;
        for a in [1i64, 5] {
            for b in [1i64, 5] {
                let ea = m8.from_i64(a);
                let eb = m8.from_i64(b);
                let lhs = witt_perp(
                    &pf_section(&ea.mul(&eb)?, &i4)?,
                    &AltRep::standard(&m8, 1, Some(i4.clone()))?,
                )?;
                let rhs = witt_perp(&pf_section(&ea, &i4)?, &pf_section(&eb, &i4)?)?;
                let gamma_b = Matrix::from_rows(
                    &m8,
                    vec![vec![eb.clone(), m8.zero()], vec![m8.zero(), m8.one()]],
                )?;
                let word = whitehead_word(&gamma_b.inverse()?)?.inverse().padded(8)?;
                if !check_equiv(&lhs, &rhs, &EquivCertificate { padding: 0, word })? {
                    pass = false;
                }
            }
        }
        lines.push(CheckLine {
            label: "conjugation certificate splits products".into(),
            pass,
            detail: "all pairs of kernel units of Z/8 mod <4>".into(),
        });
    }

    {
        let mut s = Sampler::new(seed);
        tally(&mut lines, "hyperbolic map fixes symplectic matrices", t100, |k| {
            let half = 2 + (k % 2) as usize;
            let g = s.word(&m8, GenFamily::Symplectic, 2 * half, 4, 9)?.eval()?;
            Ok(*hyperbolic_h(&g, None)?.matrix() == Matrix::standard_alternating(&m8, half))
        })?;
    }

    {
        let mut s = Sampler::new(seed);
        tally(&mut lines, "inverse representative keeps Pfaffian one", t200, |k| {
            let half = 1 + (k % 2) as usize;
            let rep = s.alt_rep(&m8, half, &i4, 3, 9)?;
            if !rep.pfaffian_one() {
                return Ok(false);
            }
            Ok(witt_inverse_rep(&rep)?.pfaffian_one())
        })?;
    }

    {
        let mut s = Sampler::new(seed);
        tally(&mut lines, "padding leaves certificates valid", t100, |_| {
            let a = s.alt_rep(&m8, 2, &i4, 2, 9)?;
            let eps = s.relative_word(&m8, GenFamily::Linear, 4, 2, &i4, 2)?;
            let b = AltRep::new(a.matrix().congruence(&eps.eval()?)?, Some(i4.clone()))?;
            let cert = EquivCertificate { padding: 0, word: eps.inverse().padded(8)? };
            let cert_up = EquivCertificate { padding: 1, word: eps.inverse().padded(10)? };
            Ok(check_equiv(&a, &b, &cert)? && check_equiv(&a, &b, &cert_up)?)
        })?;
    }

    {
        let mut s = Sampler::new(seed);
        tally(&mut lines, "block extraction recovers congruent forms", t200, |_| {
            let theta1 = s.alt_rep(&m8, 2, &i4, 2, 9)?;
            let beta0 = s.relative_word(&m8, GenFamily::Linear, 4, 2, &i4, 2)?.eval()?;
            let theta2 =
                AltRep::new(theta1.matrix().congruence(&beta0)?, Some(i4.clone()))?;
            let phi = Matrix::standard_alternating(&m8, 1).perp(theta1.matrix())?;
            // a form-preserving twist fixing the first column: u_2 = 0
            let mut u = Matrix::zero(&m8, 6, 1);
            for r in 0..6 {
                if r != 1 {
                    u.set_entry(r, 0, s.element(&m8, 9)?);
                }
            }
            let c = s.ideal_element(&i4, 3)?;
            let h = Matrix::identity(&m8, 6)
                .add(&u.mul(&u.transpose().mul(&phi)?)?.scalar_mul(&c)?)?;
            if !h.preserves_form(&phi)? {
                return Ok(false);
            }
            let delta = h.mul(&Matrix::identity(&m8, 2).perp(&beta0)?)?;
            let got = extract_block(&delta, &theta1, &theta2)?;
            Ok(theta1.matrix().congruence(&got)? == *theta2.matrix())
        })?;
    }
    Ok(SuiteReport { name: "witt".into(), seed, lines })
}

fn completion_suite(seed: u64, trials: Option<u64>) -> Result<SuiteReport> {
    let t200 = trials.unwrap_or(200);
    let t500 = trials.unwrap_or(500);
    let mut lines = Vec::new();
    let z = Ring::integers();

    {
        let mut s = Sampler::new(seed);
        let i6 = Ideal::principal(z.from_i64(6))?;
        let f5t = Ring::polynomial(&Ring::integers_mod(5)?, "T")?;
        let tvar = f5t.poly_var()?;
        let ipoly = Ideal::principal(tvar.add(&f5t.from_i64(2))?)?;
        tally(&mut lines, "patching round trips and is unique", t200, |k| {
            let (ring, ideal, ds, dt, len, bound) = if k % 2 == 0 {
                (&z, &i6, z.from_i64(2), z.from_i64(3), 3, 2)
            } else {
                (&f5t, &ipoly, tvar.clone(), tvar.add(&f5t.one())?, 2, 1)
            };
            let alpha = s.relative_word(ring, GenFamily::Symplectic, 4, len, ideal, bound)?.eval()?;
            let loc_s = Ring::localized(ring, ds.clone())?;
            let loc_t = Ring::localized(ring, dt.clone())?;
            let a1 = alpha.apply_hom(&RingHom::localization_inclusion(&loc_s)?)?;
            let a2 = alpha.apply_hom(&RingHom::localization_inclusion(&loc_t)?)?;
            let glued = patch_symplectic(&ds, &dt, &a1, &a2, ideal)?;
            let swapped = patch_symplectic(&dt, &ds, &a2, &a1, ideal)?;
            Ok(glued == alpha && swapped == alpha)
        })?;
    }

    {
        // twenty fixed relative rows over small moduli, all completed by
        // the excision pipeline and verified including relativity
        let mut rows: Vec<(i64, usize, i64)> = Vec::new();
        for m in [2i64, 3, 5] {
            for n in [3usize, 4] {
                for k in [1i64, 2, 3] {
                    rows.push((m, n, k));
                }
            }
        }
        rows.push((2, 3, 0));
        rows.push((5, 4, 7));
        let mut pass = true;
        let mut detail = format!("{} curated rows", rows.len());
        for (m, n, k) in rows {
            let ideal = Ideal::principal(z.from_i64(m))?;
            let mut entries = vec![z.zero(); n];
            let mut witness = vec![z.zero(); n];
            entries[0] = z.from_i64(m * k + 1);
            witness[0] = z.one();
            if k != 0 {
                entries[1] = z.from_i64(m);
                witness[1] = z.from_i64(-k);
                for j in 2..n {
                    entries[j] = z.from_i64(m * (k + j as i64));
                }
            }
            let v = UnimodularRow::relative(&z, entries, witness, ideal, None)?;
            let gamma = complete_row_relative(&v, 64)?;
            let ok = verify_completion(&v, &Completion::Matrix(gamma.clone()))?
                && gamma.det()?.is_one();
            if !ok {
                pass = false;
                detail = format!("failed at modulus {m}, length {n}, offset {k}");
                break;
            }
        }
        lines.push(CheckLine {
            label: "curated relative rows complete".into(),
            pass,
            detail,
        });
    }

    {
        let mut s = Sampler::new(seed);
        tally(&mut lines, "euclidean reduction clears random rows", t500, |k| {
            let n = 3 + (k % 2) as usize;
            let v = s.unimodular_row(&z, n, 4, 3)?;
            let w = row_reduce_euclidean(&v)?;
            let moved = row_times_matrix(v.entries(), &w.eval()?)?;
            let ok = moved[0].is_one() && moved[1..].iter().all(|e| e.is_zero());
            Ok(ok)
        })?;
    }
    Ok(SuiteReport { name: "completion".into(), seed, lines })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_passes_at_small_trials() {
        for name in NAMES {
            let rep = run(name, 11, Some(6)).unwrap();
            assert!(rep.all_pass(), "suite {name}: {:?}", rep.lines);
            assert!(!rep.lines.is_empty());
        }
    }

    #[test]
    fn aggregate_runs_are_bit_identical() {
        let a = run("all", 7, Some(4)).unwrap();
        let b = run("all", 7, Some(4)).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        assert!(a.all_pass());
        assert!(matches!(run("nope", 1, None), Err(Error::Unsupported(_))));
    }
}
