//! Seeded random data for the property suites: elements, ideal elements,
//! generator words, alternating matrices and unimodular rows. All draws come
//! from one ChaCha stream, so a fixed seed reproduces a run bit for bit.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::elementary::{ElementaryWord, GenFamily};
use crate::error::Result;
use crate::lifts::UnimodularRow;
use crate::matrix::Matrix;
use crate::rings::{Element, Ideal, Ring, RingRef};
use crate::witt::AltRep;

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    /// A ring element with coefficients bounded by `bound` in absolute
    /// value. Polynomials get degree at most 3, localized elements a small
    /// denominator exponent, pair rings a valid pair.
    pub fn element(&mut self, ring: &RingRef, bound: i64) -> Result<Element> {
        let b = bound.max(1);
        match &**ring {
            Ring::Integers | Ring::IntegersMod { .. } => Ok(ring.from_i64(self.int(-b, b))),
            Ring::Rationals => {
                let p = num_bigint::BigInt::from(self.int(-b, b));
                let q = num_bigint::BigInt::from(self.int(1, b));
                ring.rational(p, q)
            }
            Ring::Polynomial { base, .. } => {
                let deg = self.int(0, 3) as usize;
                let mut coeffs = Vec::with_capacity(deg + 1);
                for _ in 0..=deg {
                    coeffs.push(self.element(base, b)?);
                }
                ring.poly_from_coeffs(coeffs)
            }
            Ring::Localized { base, .. } => {
                let num = self.element(base, b)?;
                let exp = self.int(0, 2) as u32;
                ring.localized_elem(num, exp)
            }
            Ring::QuotientEuclidean { base, .. } => {
                let rep = self.element(base, b)?;
                ring.quot_elem(rep)
            }
            Ring::Excision { base, .. } => {
                let ideal = ring.ideal().expect("excision algebra").clone();
                let r = self.element(base, b)?;
                let i = self.ideal_element(&ideal, b)?;
                ring.excision_elem(r, i, None)
            }
            Ring::Double { base, .. } => {
                let ideal = ring.ideal().expect("double ring").clone();
                let a = self.element(base, b)?;
                let d = self.ideal_element(&ideal, b)?;
                let b2 = a.add(&d)?;
                ring.double_elem(a, b2, None)
            }
        }
    }

    /// A random combination sum c_i * g_i of the generators, hence a member.
    pub fn ideal_element(&mut self, ideal: &Ideal, bound: i64) -> Result<Element> {
        let ring = ideal.ring().clone();
        let mut acc = ring.zero();
        for g in ideal.generators() {
            let c = ring.from_i64(self.int(-bound.max(1), bound.max(1)));
            acc = acc.add(&c.mul(g)?)?;
        }
        Ok(acc)
    }

    /// A nonzero element (resampled; gives up into 1 after a few misses).
    pub fn nonzero_element(&mut self, ring: &RingRef, bound: i64) -> Result<Element> {
        for _ in 0..16 {
            let x = self.element(ring, bound)?;
            if !x.is_zero() {
                return Ok(x);
            }
        }
        Ok(ring.one())
    }

    /// A generator word of the given length with random indices and bounded
    /// arguments.
    pub fn word(
        &mut self,
        ring: &RingRef,
        family: GenFamily,
        size: usize,
        len: usize,
        bound: i64,
    ) -> Result<ElementaryWord> {
        let mut w = ElementaryWord::empty(ring, family, size);
        for _ in 0..len {
            let (i, j) = self.index_pair(size);
            w.push_plain(i, j, self.element(ring, bound)?)?;
        }
        Ok(w)
    }

    /// A word whose evaluation is congruent to the identity modulo the
    /// ideal: every argument is an ideal member.
    pub fn relative_word(
        &mut self,
        ring: &RingRef,
        family: GenFamily,
        size: usize,
        len: usize,
        ideal: &Ideal,
        bound: i64,
    ) -> Result<ElementaryWord> {
        let mut w = ElementaryWord::empty(ring, family, size);
        for _ in 0..len {
            let (i, j) = self.index_pair(size);
            w.push_plain(i, j, self.ideal_element(ideal, bound)?)?;
        }
        Ok(w)
    }

    pub fn index_pair(&mut self, size: usize) -> (usize, usize) {
        let i = self.int(1, size as i64) as usize;
        loop {
            let j = self.int(1, size as i64) as usize;
            if j != i {
                return (i, j);
            }
        }
    }

    /// A random alternating matrix: zero diagonal, mirrored negated entries.
    pub fn alternating(&mut self, ring: &RingRef, half: usize, bound: i64) -> Result<Matrix> {
        let n = 2 * half;
        let mut m = Matrix::zero(ring, n, n);
        for i in 0..n {
            for j in (i + 1)..n {
                let x = self.element(ring, bound)?;
                m.set_entry(i, j, x.clone());
                m.set_entry(j, i, x.neg());
            }
        }
        Ok(m)
    }

    /// A relative Pfaffian-one representative: a congruence of the standard
    /// form by a word with ideal arguments.
    pub fn alt_rep(
        &mut self,
        ring: &RingRef,
        half: usize,
        ideal: &Ideal,
        len: usize,
        bound: i64,
    ) -> Result<AltRep> {
        let eps = self.relative_word(ring, GenFamily::Linear, 2 * half, len, ideal, bound)?;
        let chi = Matrix::standard_alternating(ring, half);
        AltRep::new(chi.congruence(&eps.eval()?)?, Some(ideal.clone()))
    }

    /// e1 pushed through a random word; the witness is tracked exactly.
    pub fn unimodular_row(
        &mut self,
        ring: &RingRef,
        n: usize,
        len: usize,
        bound: i64,
    ) -> Result<UnimodularRow> {
        let w = self.word(ring, GenFamily::Linear, n, len, bound)?;
        UnimodularRow::standard_basis(ring, n).apply_word(&w)
    }

    /// e1 pushed through a relative word; stays congruent to e1 modulo the
    /// ideal.
    pub fn relative_unimodular_row(
        &mut self,
        ring: &RingRef,
        ideal: &Ideal,
        n: usize,
        len: usize,
        bound: i64,
    ) -> Result<UnimodularRow> {
        let w = self.relative_word(ring, GenFamily::Linear, n, len, ideal, bound)?;
        let mut entries = vec![ring.zero(); n];
        entries[0] = ring.one();
        let mut witness = vec![ring.zero(); n];
        witness[0] = ring.one();
        let e1 = UnimodularRow::relative(ring, entries, witness, ideal.clone(), None)?;
        e1.apply_word(&w)
    }
}
