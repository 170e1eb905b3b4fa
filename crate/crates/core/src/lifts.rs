//! Lifting relative rows, matrices and words into the excision algebra, with
//! the normalization and localization-compatibility procedures built on top.

use crate::elementary::{Atom, ElementaryWord};
use crate::error::{Error, Result};
use crate::matrix::{row_times_matrix, Matrix};
use crate::rings::{
    euclid_egcd, euclid_gcd_many, Element, Ideal, MembershipMode, Ring, RingHom, RingRef,
};

/// A row with an explicit witness column proving unimodularity, optionally
/// congruent to e1 modulo an ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnimodularRow {
    ring: RingRef,
    entries: Vec<Element>,
    witness: Vec<Element>,
    relative: Option<Ideal>,
    certs: Option<Vec<Vec<Element>>>,
}

impl UnimodularRow {
    pub fn new(ring: &RingRef, entries: Vec<Element>, witness: Vec<Element>) -> Result<Self> {
        if entries.is_empty() || entries.len() != witness.len() {
            return Err(Error::SizeMismatch(format!(
                "{} entries vs {} witness",
                entries.len(),
                witness.len()
            )));
        }
        for e in entries.iter().chain(&witness) {
            if **e.ring() != **ring {
                return Err(Error::DescriptorMismatch("row entry outside the ring".into()));
            }
        }
        let dot = dot(&entries, &witness)?;
        if !dot.is_one() {
            return Err(Error::NotUnimodular);
        }
        Ok(UnimodularRow { ring: ring.clone(), entries, witness, relative: None, certs: None })
    }

    /// A row certified congruent to e1 modulo the ideal. Optional
    /// certificates (one multiplier vector per slot, slot 1 certifying
    /// `v1 - 1`) serve certificate-only ideals and are retained for lifting.
    pub fn relative(
        ring: &RingRef,
        entries: Vec<Element>,
        witness: Vec<Element>,
        ideal: Ideal,
        certs: Option<&[Vec<Element>]>,
    ) -> Result<Self> {
        let mut row = UnimodularRow::new(ring, entries, witness)?;
        if **ideal.ring() != **ring {
            return Err(Error::DescriptorMismatch("ideal over a different ring".into()));
        }
        if let Some(cs) = certs {
            if cs.len() != row.entries.len() {
                return Err(Error::CertificateInvalid("one certificate per slot".into()));
            }
        }
        for (k, e) in row.entries.iter().enumerate() {
            let dev = if k == 0 { e.sub(&ring.one())? } else { e.clone() };
            if dev.is_zero() {
                continue;
            }
            if !ideal.member(&dev, certs.map(|cs| cs[k].as_slice()))? {
                return Err(Error::NotRelative);
            }
        }
        row.relative = Some(ideal);
        row.certs = certs.map(|cs| cs.to_vec());
        Ok(row)
    }

    pub fn standard_basis(ring: &RingRef, n: usize) -> Self {
        let mut entries = vec![ring.zero(); n];
        entries[0] = ring.one();
        UnimodularRow {
            ring: ring.clone(),
            entries: entries.clone(),
            witness: entries,
            relative: None,
            certs: None,
        }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Element] {
        &self.entries
    }

    pub fn witness(&self) -> &[Element] {
        &self.witness
    }

    pub fn relative_ideal(&self) -> Option<&Ideal> {
        self.relative.as_ref()
    }

    pub fn membership_certs(&self) -> Option<&[Vec<Element>]> {
        self.certs.as_deref()
    }

    pub fn is_standard_basis(&self) -> bool {
        self.entries[0].is_one() && self.entries[1..].iter().all(Element::is_zero)
    }

    /// Right-multiply by the evaluated word; the witness is pulled back
    /// through the inverse so the pairing stays 1. Relativity is rechecked
    /// and kept only when it still holds and is decidable.
    pub fn apply_word(&self, w: &ElementaryWord) -> Result<UnimodularRow> {
        if w.size() != self.len() {
            return Err(Error::SizeMismatch(format!(
                "word size {} vs row length {}",
                w.size(),
                self.len()
            )));
        }
        let m = w.eval()?;
        let entries = row_times_matrix(&self.entries, &m)?;
        let witness = crate::elementary::pull_back_witness(w, &self.witness)?;
        let mut row = UnimodularRow::new(&self.ring, entries, witness)?;
        if let Some(ideal) = &self.relative {
            if let Ok(again) = UnimodularRow::relative(
                &self.ring,
                row.entries.clone(),
                row.witness.clone(),
                ideal.clone(),
                None,
            ) {
                row = again;
            }
        }
        Ok(row)
    }
}

fn dot(a: &[Element], b: &[Element]) -> Result<Element> {
    let mut acc = a[0].mul(&b[0])?;
    for (x, y) in a.iter().zip(b).skip(1) {
        acc = acc.add(&x.mul(y)?)?;
    }
    Ok(acc)
}

/// Solve for a witness (1+w1, w2, .., wn) with all w_i in the ideal and
/// v1(1+w1) + sum_{k>=2} v_k w_k = 1, by extended gcd over a Euclidean base.
fn solve_relative_witness(v: &UnimodularRow, ideal: &Ideal) -> Result<Vec<Element>> {
    let ring = v.ring().clone();
    let a1 = v.entries()[0].sub(&ring.one())?;
    let n = v.len();
    if a1.is_zero() {
        return Ok(vec![ring.zero(); n]);
    }
    if !ring.is_euclidean() || !(ring.is_domain() || ring.is_field()) {
        return Err(Error::WitnessNotFound);
    }
    let g = euclid_gcd_many(&ring, ideal.generators())?;
    let c = a1.exact_divide(&g).map_err(|_| Error::WitnessNotFound)?;
    // sequential extended gcd: coefficients y with sum v_i y_i = unit, then
    // rescale to 1
    let mut coeffs = vec![ring.zero(); n];
    coeffs[0] = ring.one();
    let mut acc = v.entries()[0].clone();
    for k in 1..n {
        let (g2, s, t) = euclid_egcd(&acc, &v.entries()[k])?;
        for y in coeffs.iter_mut().take(k) {
            *y = y.mul(&s)?;
        }
        coeffs[k] = t;
        acc = g2;
    }
    let u = acc.unit_inverse().map_err(|_| Error::WitnessNotFound)?;
    let scale = c.neg().mul(&u)?;
    let mut w = Vec::with_capacity(n);
    for y in &coeffs {
        w.push(g.mul(&scale.mul(y)?)?);
    }
    // defensive exactness check of the solved equation
    let mut sum = v.entries()[0].mul(&ring.one().add(&w[0])?)?;
    for k in 1..n {
        sum = sum.add(&v.entries()[k].mul(&w[k])?)?;
    }
    if !sum.is_one() {
        return Err(Error::WitnessNotFound);
    }
    Ok(w)
}

/// Lift a relative row into the excision algebra: entries
/// ((1, v1-1), (0, v2), .., (0, vn)), relative to the split ideal, with the
/// lifted Vaserstein witness ((1, w1), (0, w2), ..). A witness with all
/// deviations in the ideal is solved for over Euclidean bases, or may be
/// supplied.
pub fn lift_row(v: &UnimodularRow, supplied: Option<&[Element]>) -> Result<UnimodularRow> {
    let ideal = v.relative_ideal().ok_or(Error::NotRelative)?.clone();
    let ring = v.ring().clone();
    let n = v.len();
    let w = match supplied {
        Some(ws) => {
            if ws.len() != n {
                return Err(Error::SizeMismatch("witness length".into()));
            }
            for wi in ws {
                if !wi.is_zero() && !ideal.member(wi, None)? {
                    return Err(Error::WitnessNotFound);
                }
            }
            let mut sum = v.entries()[0].mul(&ring.one().add(&ws[0])?)?;
            for k in 1..n {
                sum = sum.add(&v.entries()[k].mul(&ws[k])?)?;
            }
            if !sum.is_one() {
                return Err(Error::WitnessNotFound);
            }
            ws.to_vec()
        }
        None => solve_relative_witness(v, &ideal)?,
    };
    let exc = Ring::excision(&ring, ideal)?;
    let split = Ideal::split_zero(&exc)?;
    let base_certs = v.membership_certs();
    let mut entries = Vec::with_capacity(n);
    let mut witness = Vec::with_capacity(n);
    for k in 0..n {
        let cert = base_certs.map(|cs| cs[k].as_slice());
        let (first, dev) = if k == 0 {
            (ring.one(), v.entries()[0].sub(&ring.one())?)
        } else {
            (ring.zero(), v.entries()[k].clone())
        };
        entries.push(exc.excision_elem(first, dev, cert)?);
        let wfirst = if k == 0 { ring.one() } else { ring.zero() };
        witness.push(exc.excision_elem(wfirst, w[k].clone(), None)?);
    }
    UnimodularRow::relative(&exc, entries, witness, split, base_certs)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixGroup {
    SpecialLinear,
    Symplectic,
}

/// Lift a relative special linear or symplectic matrix to the excision
/// algebra: alpha_L = I + (0, alpha - I) entrywise. The defining identity of
/// the tagged group is verified on both sides.
pub fn lift_matrix(alpha: &Matrix, ideal: &Ideal, group: MatrixGroup) -> Result<Matrix> {
    if !alpha.is_square() {
        return Err(Error::NotSquare);
    }
    if !alpha.is_relative_to(ideal)? {
        return Err(Error::NotRelative);
    }
    let ring = alpha.ring().clone();
    let n = alpha.n_rows();
    match group {
        MatrixGroup::SpecialLinear => {
            if !alpha.det()?.is_one() {
                return Err(Error::NotSpecial("determinant is not 1".into()));
            }
        }
        MatrixGroup::Symplectic => {
            if n % 2 != 0 {
                return Err(Error::OddSize);
            }
            let chi = Matrix::standard_alternating(&ring, n / 2);
            if !alpha.preserves_form(&chi)? {
                return Err(Error::NotSpecial("does not preserve the standard form".into()));
            }
        }
    }
    let exc = Ring::excision(&ring, ideal.clone())?;
    let mut lifted = Matrix::zero(&exc, n, n);
    for i in 0..n {
        for j in 0..n {
            let e = alpha.entry(i, j);
            let (first, dev) = if i == j {
                (ring.one(), e.sub(&ring.one())?)
            } else {
                (ring.zero(), e.clone())
            };
            lifted.set_entry(i, j, exc.excision_elem(first, dev, None)?);
        }
    }
    let ok = match group {
        MatrixGroup::SpecialLinear => lifted.det()?.is_one(),
        MatrixGroup::Symplectic => {
            let chi = Matrix::standard_alternating(&exc, n / 2);
            lifted.preserves_form(&chi)?
        }
    };
    if !ok {
        return Err(Error::HypothesisFailed("lift left the tagged group".into()));
    }
    Ok(lifted)
}

/// Lift a relative word: conjugator arguments map by r -> (r, 0), inner
/// arguments by a -> (0, a); certificates ride along as (c, 0) multipliers
/// against the split generators (0, g).
pub fn lift_word(w: &ElementaryWord, ideal: &Ideal) -> Result<ElementaryWord> {
    if !w.is_relative(ideal)? {
        return Err(Error::NotRelative);
    }
    let exc = Ring::excision(w.ring(), ideal.clone())?;
    lift_word_inner(w, &exc)
}

fn lift_word_inner(w: &ElementaryWord, exc: &RingRef) -> Result<ElementaryWord> {
    let base = exc.base().expect("excision algebra").clone();
    let mut out = ElementaryWord::empty(exc, w.family(), w.size());
    for atom in w.atoms() {
        match atom {
            Atom::Plain { i, j, a } => {
                out.push_plain(*i, *j, exc.excision_elem(base.zero(), a.clone(), None)?)?;
            }
            Atom::Conj { outer, i, j, a, cert } => {
                let lifted_outer = include_word(outer, exc)?;
                let lifted_a =
                    exc.excision_elem(base.zero(), a.clone(), cert.as_deref())?;
                let lifted_cert = match cert {
                    Some(cs) => Some(
                        cs.iter()
                            .map(|c| exc.pair_unchecked(c.clone(), base.zero()))
                            .collect(),
                    ),
                    None => None,
                };
                out.push_conj(lifted_outer, *i, *j, lifted_a, lifted_cert)?;
            }
        }
    }
    Ok(out)
}

/// Map a word through the canonical inclusion r -> (r, 0).
pub fn include_word(w: &ElementaryWord, exc: &RingRef) -> Result<ElementaryWord> {
    let base = exc.base().expect("excision algebra").clone();
    let mut out = ElementaryWord::empty(exc, w.family(), w.size());
    for atom in w.atoms() {
        match atom {
            Atom::Plain { i, j, a } => {
                out.push_plain(*i, *j, exc.pair_unchecked(a.clone(), base.zero()))?;
            }
            Atom::Conj { outer, i, j, a, cert } => {
                let inc_outer = include_word(outer, exc)?;
                let inc_cert = cert.as_ref().map(|cs| {
                    cs.iter().map(|c| exc.pair_unchecked(c.clone(), base.zero())).collect()
                });
                out.push_conj(
                    inc_outer,
                    *i,
                    *j,
                    exc.pair_unchecked(a.clone(), base.zero()),
                    inc_cert,
                )?;
            }
        }
    }
    Ok(out)
}

/// Entrywise lift of a matrix with all entries in the ideal: x -> (0, x).
/// No identity is added; this is the lift used on pure-ideal blocks.
pub fn lift_ideal_matrix(m: &Matrix, exc: &RingRef) -> Result<Matrix> {
    let base = exc.base().ok_or_else(|| {
        Error::DescriptorMismatch("target is not an excision algebra".into())
    })?;
    if **m.ring() != **base {
        return Err(Error::DescriptorMismatch("matrix not over the base ring".into()));
    }
    let mut out = Matrix::zero(exc, m.n_rows(), m.n_cols());
    for i in 0..m.n_rows() {
        for j in 0..m.n_cols() {
            out.set_entry(i, j, exc.excision_elem(base.zero(), m.entry(i, j).clone(), None)?);
        }
    }
    Ok(out)
}

/// Entrywise canonical inclusion of a base matrix, r -> (r, 0).
pub fn include_matrix(m: &Matrix, exc: &RingRef) -> Result<Matrix> {
    let hom = RingHom::canonical_inclusion(exc)?;
    m.apply_hom(&hom)
}

/// Divide out the inclusion of the bar image: Gamma * incl(bar(Gamma))^{-1},
/// which is congruent to I modulo the split ideal.
pub fn normalize_relative(gamma: &Matrix) -> Result<Matrix> {
    let exc = gamma.ring().clone();
    let bar = RingHom::bar_split(&exc)?;
    let barred = gamma.apply_hom(&bar)?;
    let bar_inv = barred.inverse().map_err(|_| Error::NotInvertible)?;
    let incl = RingHom::canonical_inclusion(&exc)?;
    gamma.mul(&bar_inv.apply_hom(&incl)?)
}

/// Push an ideal into a localization of its ring by mapping the generators;
/// membership stays gcd-decidable when the localized ring supports it.
pub fn localize_ideal(ideal: &Ideal, loc: &RingRef) -> Result<Ideal> {
    let incl = RingHom::localization_inclusion(loc)?;
    let gens = ideal
        .generators()
        .iter()
        .map(|g| incl.apply(g))
        .collect::<Result<Vec<_>>>()?;
    match Ideal::new(loc, gens.clone(), MembershipMode::GcdDecidable) {
        Ok(i) => Ok(i),
        Err(Error::Unsupported(_)) => Ideal::new(loc, gens, MembershipMode::CertificateOnly),
        Err(e) => Err(e),
    }
}

/// Does localization commute with lifting? Compares the localized lift
/// (entrywise under (r,i)/(f,0)^e -> (r/f^e, i/f^e)) with the lift of the
/// localized matrix, over the localized base and ideal.
pub fn localization_compat(
    alpha: &Matrix,
    ideal: &Ideal,
    f: &Element,
    group: MatrixGroup,
) -> Result<bool> {
    let ring = alpha.ring().clone();
    if !ring.is_domain() {
        return Err(Error::NotADomain);
    }
    let lifted = lift_matrix(alpha, ideal, group)?;

    let loc = Ring::localized(&ring, f.clone())?;
    let incl_f = RingHom::localization_inclusion(&loc)?;
    let ideal_f = localize_ideal(ideal, &loc)?;
    let alpha_f = alpha.apply_hom(&incl_f)?;
    let lift_of_localized = lift_matrix(&alpha_f, &ideal_f, group)?;

    // push the excision lift through the canonical isomorphism
    let exc_f = Ring::excision(&loc, ideal_f)?;
    let n = lifted.n_rows();
    let mut localized_lift = Matrix::zero(&exc_f, n, n);
    for i in 0..n {
        for j in 0..n {
            let (r, dev) = lifted.entry(i, j).pair_parts().expect("excision pair");
            localized_lift.set_entry(
                i,
                j,
                exc_f.excision_elem(incl_f.apply(r)?, incl_f.apply(dev)?, None)?,
            );
        }
    }
    Ok(localized_lift == lift_of_localized)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elementary::GenFamily;

    fn z() -> RingRef {
        Ring::integers()
    }

    fn ideal2() -> Ideal {
        Ideal::principal(z().from_i64(2)).unwrap()
    }

    #[test]
    fn row_constructor_validates_witness() {
        let z = z();
        assert!(UnimodularRow::new(
            &z,
            vec![z.from_i64(3), z.from_i64(2)],
            vec![z.from_i64(1), z.from_i64(-1)],
        )
        .is_ok());
        assert!(matches!(
            UnimodularRow::new(
                &z,
                vec![z.from_i64(2), z.from_i64(4)],
                vec![z.one(), z.one()],
            ),
            Err(Error::NotUnimodular)
        ));
    }

    #[test]
    fn lift_row_matches_hand_computation() {
        let z = z();
        // v = (3, 2), I = (2): witness deviations solve 3(1+w1) + 2 w2 = 1
        let v = UnimodularRow::relative(
            &z,
            vec![z.from_i64(3), z.from_i64(2)],
            vec![z.from_i64(1), z.from_i64(-1)],
            ideal2(),
            None,
        )
        .unwrap();
        let lifted = lift_row(&v, None).unwrap();
        let exc = lifted.ring().clone();
        let pair = |r: i64, i: i64| {
            exc.excision_elem(z.from_i64(r), z.from_i64(i), None).unwrap()
        };
        assert_eq!(lifted.entries(), &[pair(1, 2), pair(0, 2)]);
        assert_eq!(lifted.witness(), &[pair(1, -2), pair(0, 2)]);
        // the pairing is (1, 0), i.e. the ring's one
        let mut acc = exc.zero();
        for (a, b) in lifted.entries().iter().zip(lifted.witness()) {
            acc = acc.add(&a.mul(b).unwrap()).unwrap();
        }
        assert!(acc.is_one());
        assert!(lifted.relative_ideal().unwrap().is_split());
    }

    #[test]
    fn lift_row_trivial_and_error_cases() {
        let z = z();
        let e1 = UnimodularRow::relative(
            &z,
            vec![z.one(), z.zero(), z.zero()],
            vec![z.one(), z.zero(), z.zero()],
            ideal2(),
            None,
        )
        .unwrap();
        let lifted = lift_row(&e1, None).unwrap();
        assert!(lifted.is_standard_basis());
        assert!(lifted.witness()[0].is_one());

        let plain = UnimodularRow::new(
            &z,
            vec![z.from_i64(3), z.from_i64(2)],
            vec![z.from_i64(1), z.from_i64(-1)],
        )
        .unwrap();
        assert!(matches!(lift_row(&plain, None), Err(Error::NotRelative)));

        // a non-relative row cannot even be built relative
        assert!(matches!(
            UnimodularRow::relative(
                &z,
                vec![z.from_i64(2), z.from_i64(3)],
                vec![z.from_i64(-1), z.one()],
                ideal2(),
                None,
            ),
            Err(Error::NotRelative)
        ));
    }

    #[test]
    fn lift_row_accepts_a_supplied_witness() {
        let z = z();
        let v = UnimodularRow::relative(
            &z,
            vec![z.from_i64(3), z.from_i64(2)],
            vec![z.from_i64(1), z.from_i64(-1)],
            ideal2(),
            None,
        )
        .unwrap();
        let ok = lift_row(&v, Some(&[z.from_i64(-2), z.from_i64(2)]));
        assert!(ok.is_ok());
        // wrong equation
        assert!(matches!(
            lift_row(&v, Some(&[z.from_i64(-2), z.from_i64(4)])),
            Err(Error::WitnessNotFound)
        ));
        // witness outside the ideal
        assert!(matches!(
            lift_row(&v, Some(&[z.from_i64(-1), z.from_i64(1)])),
            Err(Error::WitnessNotFound)
        ));
    }

    #[test]
    fn lift_matrix_special_linear() {
        let z = z();
        let mut alpha = Matrix::identity(&z, 2);
        alpha.set_entry(0, 1, z.from_i64(2));
        let lifted = lift_matrix(&alpha, &ideal2(), MatrixGroup::SpecialLinear).unwrap();
        let exc = lifted.ring().clone();
        assert!(lifted.det().unwrap().is_one());
        assert_eq!(
            *lifted.entry(0, 1),
            exc.excision_elem(z.zero(), z.from_i64(2), None).unwrap()
        );
        assert!(lifted.entry(0, 0).is_one());

        let id = Matrix::identity(&z, 2);
        assert!(lift_matrix(&id, &ideal2(), MatrixGroup::SpecialLinear)
            .unwrap()
            .is_identity());

        let mut bad = Matrix::identity(&z, 2);
        bad.set_entry(0, 1, z.from_i64(3));
        assert!(matches!(
            lift_matrix(&bad, &ideal2(), MatrixGroup::SpecialLinear),
            Err(Error::NotRelative)
        ));
        let mut nonspecial = Matrix::identity(&z, 2);
        nonspecial.set_entry(0, 0, z.from_i64(3));
        assert!(matches!(
            lift_matrix(&nonspecial, &ideal2(), MatrixGroup::SpecialLinear),
            Err(Error::NotSpecial(_))
        ));
    }

    #[test]
    fn lift_matrix_symplectic() {
        let z = z();
        let mut w = ElementaryWord::empty(&z, GenFamily::Symplectic, 4);
        w.push_plain(1, 2, z.from_i64(2)).unwrap();
        w.push_plain(3, 1, z.from_i64(4)).unwrap();
        let alpha = w.eval().unwrap();
        let lifted = lift_matrix(&alpha, &ideal2(), MatrixGroup::Symplectic).unwrap();
        let chi = Matrix::standard_alternating(lifted.ring(), 2);
        assert!(lifted.preserves_form(&chi).unwrap());
    }

    #[test]
    fn lifted_words_project_back() {
        let z = z();
        let ideal = ideal2();
        let mut outer = ElementaryWord::empty(&z, GenFamily::Symplectic, 4);
        outer.push_plain(1, 3, z.from_i64(5)).unwrap();
        let mut w = ElementaryWord::empty(&z, GenFamily::Symplectic, 4);
        w.push_conj(outer, 1, 2, z.from_i64(6), None).unwrap();
        w.push_plain(2, 4, z.from_i64(-2)).unwrap();

        let lw = lift_word(&w, &ideal).unwrap();
        let exc = lw.ring().clone();
        let split = Ideal::split_zero(&exc).unwrap();
        assert!(lw.is_relative(&split).unwrap());
        let pi = RingHom::project_pi(&exc).unwrap();
        assert_eq!(lw.eval().unwrap().apply_hom(&pi).unwrap(), w.eval().unwrap());
        // bar kills the lifted word entirely
        let bar = RingHom::bar_split(&exc).unwrap();
        assert!(lw.eval().unwrap().apply_hom(&bar).unwrap().is_identity());

        let nonrel = {
            let mut x = ElementaryWord::empty(&z, GenFamily::Symplectic, 4);
            x.push_plain(1, 2, z.from_i64(3)).unwrap();
            x
        };
        assert!(matches!(lift_word(&nonrel, &ideal), Err(Error::NotRelative)));
    }

    #[test]
    fn normalization_clears_the_bar_image() {
        let z = z();
        let exc = Ring::excision(&z, ideal2()).unwrap();
        // Gamma = incl(beta) for beta in SL2: normalizes to I
        let beta = {
            let mut m = Matrix::identity(&z, 2);
            m.set_entry(0, 1, z.from_i64(3));
            m.set_entry(1, 0, z.from_i64(2));
            m.set_entry(1, 1, z.from_i64(7));
            m
        };
        assert!(beta.det().unwrap().is_one());
        let gamma = include_matrix(&beta, &exc).unwrap();
        assert!(normalize_relative(&gamma).unwrap().is_identity());

        // already relative: bar is I, unchanged
        let mut rel = Matrix::identity(&exc, 2);
        rel.set_entry(0, 1, exc.excision_elem(z.zero(), z.from_i64(2), None).unwrap());
        assert_eq!(normalize_relative(&rel).unwrap(), rel);

        // mixed: result passes the relative predicate
        let mixed = gamma.mul(&rel).unwrap();
        let split = Ideal::split_zero(&exc).unwrap();
        let norm = normalize_relative(&mixed).unwrap();
        assert!(norm.is_relative_to(&split).unwrap());
    }

    #[test]
    fn localization_commutes_with_lifting() {
        let z = z();
        let mut alpha = Matrix::identity(&z, 2);
        alpha.set_entry(0, 1, z.from_i64(2));
        assert!(localization_compat(&alpha, &ideal2(), &z.one(), MatrixGroup::SpecialLinear)
            .unwrap());
        assert!(localization_compat(&alpha, &ideal2(), &z.from_i64(3), MatrixGroup::SpecialLinear)
            .unwrap());

        let m8 = Ring::integers_mod(8).unwrap();
        let a8 = Matrix::identity(&m8, 2);
        let i8 = Ideal::principal(m8.from_i64(4)).unwrap();
        assert!(matches!(
            localization_compat(&a8, &i8, &m8.one(), MatrixGroup::SpecialLinear),
            Err(Error::NotADomain)
        ));
    }

    #[test]
    fn ideal_block_lifts_commute_with_the_form() {
        let z = z();
        let exc = Ring::excision(&z, ideal2()).unwrap();
        let beta = Matrix::from_rows(
            &z,
            vec![
                vec![z.from_i64(2), z.from_i64(4)],
                vec![z.from_i64(-2), z.from_i64(0)],
                vec![z.from_i64(6), z.from_i64(2)],
                vec![z.from_i64(8), z.from_i64(-4)],
            ],
        )
        .unwrap();
        let chi = Matrix::standard_alternating(&z, 2);
        let chi_e = Matrix::standard_alternating(&exc, 2);
        let left = chi_e.mul(&lift_ideal_matrix(&beta, &exc).unwrap()).unwrap();
        let right = lift_ideal_matrix(&chi.mul(&beta).unwrap(), &exc).unwrap();
        assert_eq!(left, right);
    }
}
