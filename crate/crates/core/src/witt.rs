//! Representative-level calculus for elementary symplectic Witt classes:
//! block sums, inverses, the Pfaffian character with its section, the
//! hyperbolic map, certificate-based equivalence checking and bounded
//! certificate search, the kernel-of-the-hyperbolic-map construction, and
//! block extraction for congruent padded forms.

use crate::elementary::{ElementaryWord, GenFamily};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rings::{Element, Ideal, RingRef};

/// An invertible alternating matrix of even size, optionally certified
/// congruent to the standard form modulo an ideal. The flag records whether
/// its Pfaffian is exactly 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AltRep {
    matrix: Matrix,
    relative: Option<Ideal>,
    pfaffian_one: bool,
}

impl AltRep {
    pub fn new(matrix: Matrix, relative: Option<Ideal>) -> Result<AltRep> {
        if !matrix.is_square() {
            return Err(Error::NotSquare);
        }
        if matrix.n_rows() % 2 != 0 {
            return Err(Error::OddSize);
        }
        if !matrix.is_alternating() {
            return Err(Error::NotAlternating);
        }
        if !matrix.is_invertible() {
            return Err(Error::NotInvertible);
        }
        if let Some(ideal) = &relative {
            let chi = Matrix::standard_alternating(matrix.ring(), matrix.n_rows() / 2);
            if !matrix.deviation_in_ideal(&chi, ideal)? {
                return Err(Error::NotRelative);
            }
        }
        let pfaffian_one = matrix.pfaffian()?.is_one();
        Ok(AltRep { matrix, relative, pfaffian_one })
    }

    /// The standard form chi_n as a representative.
    pub fn standard(ring: &RingRef, half_rank: usize, relative: Option<Ideal>) -> Result<AltRep> {
        AltRep::new(Matrix::standard_alternating(ring, half_rank), relative)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn ring(&self) -> &RingRef {
        self.matrix.ring()
    }

    pub fn size(&self) -> usize {
        self.matrix.n_rows()
    }

    pub fn half_rank(&self) -> usize {
        self.matrix.n_rows() / 2
    }

    pub fn relative_ideal(&self) -> Option<&Ideal> {
        self.relative.as_ref()
    }

    pub fn pfaffian_one(&self) -> bool {
        self.pfaffian_one
    }
}

fn same_relativity(a: &AltRep, b: &AltRep) -> Result<Option<Ideal>> {
    if a.ring() != b.ring() {
        return Err(Error::DescriptorMismatch("representatives over different rings".into()));
    }
    match (a.relative_ideal(), b.relative_ideal()) {
        (None, None) => Ok(None),
        (Some(x), Some(y)) if x == y => Ok(Some(x.clone())),
        _ => Err(Error::DescriptorMismatch("representatives differ in relativity".into())),
    }
}

/// The sum of classes at representative level: the block sum.
pub fn witt_perp(a: &AltRep, b: &AltRep) -> Result<AltRep> {
    let rel = same_relativity(a, b)?;
    AltRep::new(a.matrix().perp(b.matrix())?, rel)
}

/// The inverse class representative sigma_n A^{-1} sigma_n.
pub fn witt_inverse_rep(a: &AltRep) -> Result<AltRep> {
    let sigma = Matrix::pair_swap(a.ring(), a.half_rank());
    let inv = a.matrix().inverse().map_err(|_| Error::NotInvertible)?;
    AltRep::new(sigma.mul(&inv)?.mul(&sigma)?, a.relative.clone())
}

/// The Pfaffian of a relative representative, guaranteed a unit congruent
/// to 1 modulo the ideal.
pub fn witt_pf(a: &AltRep) -> Result<Element> {
    let ideal = a.relative_ideal().ok_or(Error::NotRelative)?;
    let pf = a.matrix().pfaffian()?;
    if pf.unit_inverse().is_err() {
        return Err(Error::PfaffianNotUnit);
    }
    let dev = pf.sub(&a.ring().one())?;
    if !dev.is_zero() && !ideal.member(&dev, None)? {
        return Err(Error::HypothesisFailed("Pfaffian not congruent to 1".into()));
    }
    Ok(pf)
}

/// The section of the Pfaffian: a unit congruent to 1 mod the ideal maps to
/// the 2x2 representative [[0, a], [-a, 0]].
pub fn pf_section(a: &Element, ideal: &Ideal) -> Result<AltRep> {
    let ring = a.ring().clone();
    if a.unit_inverse().is_err() {
        return Err(Error::NotInKernelC);
    }
    let dev = a.sub(&ring.one())?;
    if !dev.is_zero() && !ideal.member(&dev, None)? {
        return Err(Error::NotInKernelC);
    }
    let m = Matrix::from_rows(
        &ring,
        vec![vec![ring.zero(), a.clone()], vec![a.neg(), ring.zero()]],
    )?;
    AltRep::new(m, Some(ideal.clone()))
}

/// The hyperbolic map on an invertible matrix of even size:
/// alpha^T chi_n alpha. When an ideal is given the input must be congruent
/// to I mod the ideal, and the result is a relative representative.
pub fn hyperbolic_h(alpha: &Matrix, ideal: Option<&Ideal>) -> Result<AltRep> {
    if !alpha.is_square() {
        return Err(Error::NotSquare);
    }
    if alpha.n_rows() % 2 != 0 {
        return Err(Error::OddSize);
    }
    if !alpha.is_invertible() {
        return Err(Error::NotInvertible);
    }
    if let Some(i) = ideal {
        if !alpha.is_relative_to(i)? {
            return Err(Error::NotRelative);
        }
    }
    let chi = Matrix::standard_alternating(alpha.ring(), alpha.n_rows() / 2);
    AltRep::new(chi.congruence(alpha)?, ideal.cloned())
}

/// A claimed equivalence between two representatives: a padding level t and
/// a word epsilon of size 2(m+n+t) with
/// A perp chi_{n+t} = eval(eps)^T (B perp chi_{m+t}) eval(eps).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivCertificate {
    pub padding: usize,
    pub word: ElementaryWord,
}

/// Verify an equivalence certificate exactly. For relative representatives
/// the certificate word must itself evaluate to a matrix congruent to the
/// identity modulo the ideal.
pub fn check_equiv(a: &AltRep, b: &AltRep, cert: &EquivCertificate) -> Result<bool> {
    let rel = same_relativity(a, b)?;
    let m = a.half_rank();
    let n = b.half_rank();
    let t = cert.padding;
    let total = 2 * (m + n + t);
    if cert.word.size() != total {
        return Err(Error::SizeMismatch(format!(
            "certificate word size {} but padding implies {total}",
            cert.word.size()
        )));
    }
    let ring = a.ring().clone();
    let eps = cert.word.eval()?;
    if let Some(ideal) = &rel {
        if !eps.is_relative_to(ideal)? {
            return Ok(false);
        }
    }
    let left = a.matrix().perp(&Matrix::standard_alternating(&ring, n + t))?;
    let right = b.matrix().perp(&Matrix::standard_alternating(&ring, m + t))?;
    Ok(left == right.congruence(&eps)?)
}

/// Bounded deterministic search for an equivalence certificate: words are
/// enumerated by padding, then atom count, then argument height, and every
/// candidate is verified. The budget counts verification attempts; running
/// out signals unknown, never inequivalence.
pub fn search_equiv(a: &AltRep, b: &AltRep, budget: u64) -> Result<EquivCertificate> {
    let rel = same_relativity(a, b)?;
    let ring = a.ring().clone();
    let m = a.half_rank();
    let n = b.half_rank();
    // argument pool: small multiples of the ideal generators (relative), or
    // small integers (absolute)
    let mut pool: Vec<Element> = Vec::new();
    match &rel {
        Some(ideal) => {
            for g in ideal.generators() {
                for h in 1..=3i64 {
                    let x = ring.from_i64(h).mul(g)?;
                    if !x.is_zero() && !pool.contains(&x) {
                        let neg = x.neg();
                        pool.push(x);
                        if !pool.contains(&neg) {
                            pool.push(neg);
                        }
                    }
                }
            }
        }
        None => {
            for h in 1..=3i64 {
                pool.push(ring.from_i64(h));
                pool.push(ring.from_i64(-h));
            }
        }
    }
    let mut tried: u64 = 0;
    let verify = |cert: &EquivCertificate, tried: &mut u64| -> Result<Option<EquivCertificate>> {
        if *tried >= budget {
            return Err(Error::ExhaustedBudget(budget));
        }
        *tried += 1;
        if check_equiv(a, b, cert)? {
            Ok(Some(cert.clone()))
        } else {
            Ok(None)
        }
    };
    for t in 0..=1usize {
        let size = 2 * (m + n + t);
        let empty = ElementaryWord::empty(&ring, GenFamily::Linear, size);
        if let Some(found) = verify(&EquivCertificate { padding: t, word: empty.clone() }, &mut tried)? {
            return Ok(found);
        }
        // single atoms
        for i in 1..=size {
            for j in 1..=size {
                if i == j {
                    continue;
                }
                for arg in &pool {
                    let mut w = empty.clone();
                    w.push_plain(i, j, arg.clone())?;
                    if let Some(found) =
                        verify(&EquivCertificate { padding: t, word: w }, &mut tried)?
                    {
                        return Ok(found);
                    }
                }
            }
        }
        // ordered pairs of atoms
        for i1 in 1..=size {
            for j1 in 1..=size {
                if i1 == j1 {
                    continue;
                }
                for a1 in &pool {
                    for i2 in 1..=size {
                        for j2 in 1..=size {
                            if i2 == j2 {
                                continue;
                            }
                            for a2 in &pool {
                                let mut w = empty.clone();
                                w.push_plain(i1, j1, a1.clone())?;
                                w.push_plain(i2, j2, a2.clone())?;
                                if let Some(found) =
                                    verify(&EquivCertificate { padding: t, word: w }, &mut tried)?
                                {
                                    return Ok(found);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Err(Error::ExhaustedBudget(budget))
}

/// From a relative special linear matrix whose hyperbolic image is certified
/// trivial, build the larger matrix that is symplectic with respect to
/// chi_m perp gamma: alpha' = (alpha perp I_{2m})(eps perp I_{2n}) with
/// m = n + cert.padding. The certificate must verify
/// eps^T (alpha^T chi_n alpha perp chi_s) eps = chi_{n+s}.
pub fn kernel_of_h_construct(
    alpha: &Matrix,
    gamma: &AltRep,
    cert: &EquivCertificate,
) -> Result<Matrix> {
    let ideal = gamma.relative_ideal().ok_or(Error::NotRelative)?.clone();
    if !alpha.is_square() || alpha.n_rows() % 2 != 0 {
        return Err(Error::OddSize);
    }
    let n = alpha.n_rows() / 2;
    if gamma.half_rank() != n {
        return Err(Error::SizeMismatch(format!(
            "gamma has half rank {} but alpha has {n}",
            gamma.half_rank()
        )));
    }
    if !gamma.pfaffian_one() {
        return Err(Error::HypothesisFailed("gamma must have Pfaffian 1".into()));
    }
    if !alpha.is_relative_to(&ideal)? {
        return Err(Error::NotRelative);
    }
    if !alpha.det()?.is_one() {
        return Err(Error::NotSpecial("determinant is not 1".into()));
    }
    let ring = alpha.ring().clone();
    let s = cert.padding;
    if cert.word.size() != 2 * (n + s) {
        return Err(Error::SizeMismatch(format!(
            "certificate word size {} but n + s implies {}",
            cert.word.size(),
            2 * (n + s)
        )));
    }
    let eps = cert.word.eval()?;
    if !eps.is_relative_to(&ideal)? {
        return Err(Error::CertificateInvalid("certificate word is not relative".into()));
    }
    let chi_n = Matrix::standard_alternating(&ring, n);
    let h_alpha = chi_n.congruence(alpha)?;
    let padded = h_alpha.perp(&Matrix::standard_alternating(&ring, s))?;
    if padded.congruence(&eps)? != Matrix::standard_alternating(&ring, n + s) {
        return Err(Error::CertificateInvalid(
            "certificate does not trivialize the hyperbolic image".into(),
        ));
    }
    let m = n + s;
    let alpha_big = alpha.perp(&Matrix::identity(&ring, 2 * m))?;
    let eps_big = eps.perp(&Matrix::identity(&ring, 2 * n))?;
    let alpha_prime = alpha_big.mul(&eps_big)?;
    let phi = Matrix::standard_alternating(&ring, m).perp(gamma.matrix())?;
    if phi.congruence(&alpha_prime)? != phi {
        return Err(Error::HypothesisFailed("result does not preserve the form".into()));
    }
    if !alpha_prime.det()?.is_one() || !alpha_prime.is_relative_to(&ideal)? {
        return Err(Error::HypothesisFailed("result left the relative special group".into()));
    }
    Ok(alpha_prime)
}

/// From delta with first column e1 and delta^T (chi_1 perp theta1) delta =
/// chi_1 perp theta2, extract the lower-right block beta; the derived facts
/// q = 1, v = 0 and beta^T theta1 beta = theta2 are all asserted.
pub fn extract_block(delta: &Matrix, theta1: &AltRep, theta2: &AltRep) -> Result<Matrix> {
    if theta1.ring() != theta2.ring() || theta1.size() != theta2.size() {
        return Err(Error::DescriptorMismatch("mismatched forms".into()));
    }
    let two_n = theta1.size();
    if !delta.is_square() || delta.n_rows() != two_n + 2 {
        return Err(Error::SizeMismatch(format!(
            "delta must have size {}",
            two_n + 2
        )));
    }
    let ring = delta.ring().clone();
    // first column = e1
    for r in 0..two_n + 2 {
        let want_one = r == 0;
        let e = delta.entry(r, 0);
        if (want_one && !e.is_one()) || (!want_one && !e.is_zero()) {
            return Err(Error::HypothesisFailed("first column of delta is not e1".into()));
        }
    }
    let chi1 = Matrix::standard_alternating(&ring, 1);
    let phi1 = chi1.perp(theta1.matrix())?;
    let phi2 = chi1.perp(theta2.matrix())?;
    if phi1.congruence(delta)? != phi2 {
        return Err(Error::HypothesisFailed("delta does not carry form 1 to form 2".into()));
    }
    let q = delta.entry(1, 1);
    if !q.is_one() {
        return Err(Error::HypothesisFailed("pivot block is not 1".into()));
    }
    for c in 2..two_n + 2 {
        if !delta.entry(1, c).is_zero() {
            return Err(Error::HypothesisFailed("second row does not vanish".into()));
        }
    }
    let beta = Matrix::from_fn(&ring, two_n, two_n, |r, c| delta.entry(r + 2, c + 2).clone());
    if theta1.matrix().congruence(&beta)? != *theta2.matrix() {
        return Err(Error::HypothesisFailed("extracted block does not carry the form".into()));
    }
    Ok(beta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elementary::whitehead_word;
    use crate::rings::{Ring, RingHom};

    fn z() -> RingRef {
        Ring::integers()
    }

    fn ideal2() -> Ideal {
        Ideal::principal(z().from_i64(2)).unwrap()
    }

    fn m8() -> RingRef {
        Ring::integers_mod(8).unwrap()
    }

    fn ideal4() -> Ideal {
        Ideal::principal(m8().from_i64(4)).unwrap()
    }

    fn alpha_a(ring: &RingRef, a: i64, ideal: &Ideal) -> AltRep {
        pf_section(&ring.from_i64(a), ideal).unwrap()
    }

    /// A relative Pf-1 representative eps^T chi eps from a one-atom word.
    fn twisted_chi(ring: &RingRef, half: usize, ideal: &Ideal, i: usize, j: usize, c: i64) -> AltRep {
        let mut w = ElementaryWord::empty(ring, GenFamily::Linear, 2 * half);
        w.push_plain(i, j, ring.from_i64(c)).unwrap();
        let chi = Matrix::standard_alternating(ring, half);
        AltRep::new(chi.congruence(&w.eval().unwrap()).unwrap(), Some(ideal.clone())).unwrap()
    }

    #[test]
    fn perp_is_block_sum_and_pf_multiplicative() {
        let z = z();
        let a = AltRep::standard(&z, 1, Some(ideal2())).unwrap();
        let b = AltRep::standard(&z, 1, Some(ideal2())).unwrap();
        let sum = witt_perp(&a, &b).unwrap();
        assert_eq!(*sum.matrix(), Matrix::standard_alternating(&z, 2));

        // Pf multiplicativity needs nontrivial units, so work over Q
        let q = Ring::rationals();
        let iq = Ideal::principal(q.from_i64(2)).unwrap();
        let a3 = alpha_a(&q, 3, &iq);
        let a5 = alpha_a(&q, 5, &iq);
        let both = witt_perp(&a3, &a5).unwrap();
        let pf = both.matrix().pfaffian().unwrap();
        assert_eq!(pf, q.from_i64(15));
        assert_eq!(
            pf,
            a3.matrix().pfaffian().unwrap().mul(&a5.matrix().pfaffian().unwrap()).unwrap()
        );

        let plain = AltRep::standard(&q, 1, None).unwrap();
        assert!(matches!(witt_perp(&a3, &plain), Err(Error::DescriptorMismatch(_))));
    }

    #[test]
    fn padding_by_chi_keeps_the_class() {
        let z = z();
        let a = twisted_chi(&z, 1, &ideal2(), 1, 2, 4);
        let chi1 = AltRep::standard(&z, 1, Some(ideal2())).unwrap();
        let padded = witt_perp(&a, &chi1).unwrap();
        // a (half 1) vs padded (half 2): identity certificate
        let cert = EquivCertificate {
            padding: 0,
            word: ElementaryWord::empty(&z, GenFamily::Linear, 2 * (1 + 2)),
        };
        assert!(check_equiv(&a, &padded, &cert).unwrap());
    }

    #[test]
    fn inverse_rep_fixes_chi_and_keeps_pf_one() {
        let z = z();
        let chi2 = AltRep::standard(&z, 2, Some(ideal2())).unwrap();
        let inv = witt_inverse_rep(&chi2).unwrap();
        assert_eq!(inv.matrix(), chi2.matrix());

        let twisted = twisted_chi(&z, 2, &ideal2(), 1, 3, 2);
        assert!(twisted.pfaffian_one());
        let inv = witt_inverse_rep(&twisted).unwrap();
        assert!(inv.pfaffian_one());
        assert!(inv.relative_ideal().is_some());
        // residue oracle: reduction mod 2 is the standard form
        let hom = RingHom::residue_mod(&z, z.from_i64(2)).unwrap();
        let reduced = inv.matrix().apply_hom(&hom).unwrap();
        assert_eq!(reduced, Matrix::standard_alternating(hom.target(), 2));
    }

    #[test]
    fn pfaffian_character_and_section() {
        let z = z();
        let chi2 = AltRep::standard(&z, 2, Some(ideal2())).unwrap();
        assert!(witt_pf(&chi2).unwrap().is_one());

        let m8 = m8();
        let i4 = ideal4();
        let a5 = alpha_a(&m8, 5, &i4);
        let padded = witt_perp(&a5, &AltRep::standard(&m8, 1, Some(i4.clone())).unwrap()).unwrap();
        assert_eq!(witt_pf(&padded).unwrap(), m8.from_i64(5));

        // Pf section: alpha_1 = chi_1, and Pf of the section is the input
        let one_rep = pf_section(&m8.one(), &i4).unwrap();
        assert_eq!(*one_rep.matrix(), Matrix::standard_alternating(&m8, 1));
        for u in i4.unit_kernel().unwrap() {
            assert_eq!(witt_pf(&pf_section(&u, &i4).unwrap()).unwrap(), u);
        }
        // 3 is a unit but 3 - 1 is not in (4); 2 is not a unit
        assert!(matches!(pf_section(&m8.from_i64(3), &i4), Err(Error::NotInKernelC)));
        assert!(matches!(pf_section(&m8.from_i64(2), &i4), Err(Error::NotInKernelC)));

        // every Pfaffian of a relative rep over (Z/8, (4)) is 1 or 5
        let units = i4.unit_kernel().unwrap();
        for rep in [
            twisted_chi(&m8, 1, &i4, 1, 2, 4),
            twisted_chi(&m8, 2, &i4, 2, 3, 4),
            padded,
        ] {
            assert!(units.contains(&witt_pf(&rep).unwrap()));
        }
    }

    #[test]
    fn section_multiplicativity_certificate() {
        // (gamma_b^{-1} perp gamma_b)^T (alpha_ab perp chi_1) (gamma_b^{-1} perp gamma_b)
        //   = alpha_a perp alpha_b at a = b = 5 over (Z/8, (4))
        let m8 = m8();
        let i4 = ideal4();
        let a = m8.from_i64(5);
        let ab = a.mul(&a).unwrap();
        let gamma_b = Matrix::from_rows(
            &m8,
            vec![vec![a.clone(), m8.zero()], vec![m8.zero(), m8.one()]],
        )
        .unwrap();
        let w = gamma_b.inverse().unwrap().perp(&gamma_b).unwrap();
        let left = alpha_a(&m8, 5, &i4)
            .matrix()
            .perp(alpha_a(&m8, 5, &i4).matrix())
            .unwrap();
        let inner = pf_section(&ab, &i4)
            .unwrap()
            .matrix()
            .perp(&Matrix::standard_alternating(&m8, 1))
            .unwrap();
        assert_eq!(inner.congruence(&w).unwrap(), left);
    }

    #[test]
    fn hyperbolic_map() {
        let z = z();
        // symplectic input: H is the standard form
        let mut w = ElementaryWord::empty(&z, GenFamily::Symplectic, 4);
        w.push_plain(1, 2, z.from_i64(2)).unwrap();
        w.push_plain(3, 1, z.from_i64(-4)).unwrap();
        let h = hyperbolic_h(&w.eval().unwrap(), Some(&ideal2())).unwrap();
        assert_eq!(*h.matrix(), Matrix::standard_alternating(&z, 2));
        assert!(h.pfaffian_one());

        // diag(2, 3, 1, 1/6) over Q: Pf(H) = det = 1
        let q = Ring::rationals();
        let diag = Matrix::from_fn(&q, 4, 4, |i, j| {
            if i != j {
                return q.zero();
            }
            match i {
                0 => q.from_i64(2),
                1 => q.from_i64(3),
                2 => q.one(),
                _ => q.rational(1.into(), 6.into()).unwrap(),
            }
        });
        let h = hyperbolic_h(&diag, None).unwrap();
        assert!(h.pfaffian_one());
        assert_eq!(h.matrix().pfaffian().unwrap(), diag.det().unwrap());

        let odd = Matrix::identity(&z, 3);
        assert!(matches!(hyperbolic_h(&odd, None), Err(Error::OddSize)));
    }

    #[test]
    fn equivalence_certificates_verify_exactly() {
        let z = z();
        let a = twisted_chi(&z, 1, &ideal2(), 2, 1, 2);
        let trivial = EquivCertificate {
            padding: 0,
            word: ElementaryWord::empty(&z, GenFamily::Linear, 4),
        };
        assert!(check_equiv(&a, &a, &trivial).unwrap());

        // a wrong certificate fails
        let mut wrong = ElementaryWord::empty(&z, GenFamily::Linear, 4);
        wrong.push_plain(1, 3, z.from_i64(2)).unwrap();
        assert!(!check_equiv(&a, &a, &EquivCertificate { padding: 0, word: wrong }).unwrap());

        // size mismatch is an error, not a false
        let bad = EquivCertificate {
            padding: 1,
            word: ElementaryWord::empty(&z, GenFamily::Linear, 4),
        };
        assert!(matches!(check_equiv(&a, &a, &bad), Err(Error::SizeMismatch(_))));

        // padding invariance: a valid (t, eps) stays valid as (t+1, eps padded)
        let b = {
            let mut w = ElementaryWord::empty(&z, GenFamily::Linear, 2);
            w.push_plain(1, 2, z.from_i64(2)).unwrap();
            let m = a.matrix().congruence(&w.eval().unwrap()).unwrap();
            AltRep::new(m, Some(ideal2())).unwrap()
        };
        let mut eps = ElementaryWord::empty(&z, GenFamily::Linear, 4);
        eps.push_plain(1, 2, z.from_i64(-2)).unwrap();
        let cert = EquivCertificate { padding: 0, word: eps.clone() };
        assert!(check_equiv(&a, &b, &cert).unwrap());
        let cert_up = EquivCertificate { padding: 1, word: eps.padded(6).unwrap() };
        assert!(check_equiv(&a, &b, &cert_up).unwrap());
    }

    #[test]
    fn whitehead_certificate_for_the_section() {
        // alpha_ab perp chi_1 ~ alpha_a perp alpha_b via the Whitehead word
        // of gamma_b^{-1}, inverted and padded
        let m8 = m8();
        let i4 = ideal4();
        let a = m8.from_i64(5);
        let ab = a.mul(&a).unwrap();
        let lhs = witt_perp(
            &pf_section(&ab, &i4).unwrap(),
            &AltRep::standard(&m8, 1, Some(i4.clone())).unwrap(),
        )
        .unwrap();
        let rhs = witt_perp(&pf_section(&a, &i4).unwrap(), &pf_section(&a, &i4).unwrap()).unwrap();
        let gamma_b = Matrix::from_rows(
            &m8,
            vec![vec![a.clone(), m8.zero()], vec![m8.zero(), m8.one()]],
        )
        .unwrap();
        let word = whitehead_word(&gamma_b.inverse().unwrap())
            .unwrap()
            .inverse()
            .padded(8)
            .unwrap();
        let cert = EquivCertificate { padding: 0, word };
        assert!(check_equiv(&lhs, &rhs, &cert).unwrap());
    }

    #[test]
    fn certificate_search_finds_planted_twists() {
        let m8 = m8();
        let i4 = ideal4();
        let a = AltRep::standard(&m8, 1, Some(i4.clone())).unwrap();
        let found = search_equiv(&a, &a, 10).unwrap();
        assert!(check_equiv(&a, &a, &found).unwrap());
        assert!(found.word.is_empty());

        // rank one twists are invisible (any det-1 congruence fixes chi_1),
        // so plant at half rank 2 where a lone transvection really moves chi
        let a2 = AltRep::standard(&m8, 2, Some(i4.clone())).unwrap();
        let b = twisted_chi(&m8, 2, &i4, 1, 3, 4);
        assert_ne!(a2.matrix(), b.matrix());
        let found = search_equiv(&a2, &b, 2000).unwrap();
        assert!(check_equiv(&a2, &b, &found).unwrap());

        assert!(matches!(search_equiv(&a2, &b, 1), Err(Error::ExhaustedBudget(1))));
    }

    #[test]
    fn kernel_of_h_construction() {
        let z = z();
        let i2 = ideal2();
        // trivial: a relative symplectic word evaluation, empty certificate
        let mut w = ElementaryWord::empty(&z, GenFamily::Symplectic, 4);
        w.push_plain(1, 2, z.from_i64(2)).unwrap();
        w.push_plain(4, 2, z.from_i64(-6)).unwrap();
        let alpha = w.eval().unwrap();
        let gamma = AltRep::standard(&z, 2, Some(i2.clone())).unwrap();
        let cert = EquivCertificate {
            padding: 0,
            word: ElementaryWord::empty(&z, GenFamily::Linear, 4),
        };
        let prime = kernel_of_h_construct(&alpha, &gamma, &cert).unwrap();
        assert_eq!(prime, alpha.perp(&Matrix::identity(&z, 4)).unwrap());
        let phi = Matrix::standard_alternating(&z, 2).perp(gamma.matrix()).unwrap();
        assert!(prime.preserves_form(&phi).unwrap());

        // planted: alpha = sigma * eps^{-1} for symplectic sigma and a
        // relative word eps, certificate is eps
        let m5 = Ring::integers_mod(5).unwrap();
        let all = Ideal::principal(m5.one()).unwrap();
        let mut sw = ElementaryWord::empty(&m5, GenFamily::Symplectic, 4);
        sw.push_plain(1, 3, m5.from_i64(2)).unwrap();
        sw.push_plain(2, 1, m5.from_i64(3)).unwrap();
        let sigma = sw.eval().unwrap();
        let mut ew = ElementaryWord::empty(&m5, GenFamily::Linear, 4);
        ew.push_plain(1, 4, m5.from_i64(2)).unwrap();
        ew.push_plain(3, 2, m5.from_i64(4)).unwrap();
        let eps = ew.eval().unwrap();
        let alpha = sigma.mul(&eps.inverse().unwrap()).unwrap();
        let gamma5 = {
            let chi = Matrix::standard_alternating(&m5, 2);
            let mut tw = ElementaryWord::empty(&m5, GenFamily::Linear, 4);
            tw.push_plain(2, 4, m5.from_i64(3)).unwrap();
            AltRep::new(chi.congruence(&tw.eval().unwrap()).unwrap(), Some(all.clone())).unwrap()
        };
        let cert = EquivCertificate { padding: 0, word: ew.clone() };
        let prime = kernel_of_h_construct(&alpha, &gamma5, &cert).unwrap();
        let phi = Matrix::standard_alternating(&m5, 2).perp(gamma5.matrix()).unwrap();
        assert!(prime.preserves_form(&phi).unwrap());
        assert!(prime.det().unwrap().is_one());

        // corrupted certificate
        let mut bad = ElementaryWord::empty(&m5, GenFamily::Linear, 4);
        bad.push_plain(1, 4, m5.from_i64(1)).unwrap();
        let badcert = EquivCertificate { padding: 0, word: bad };
        assert!(matches!(
            kernel_of_h_construct(&alpha, &gamma5, &badcert),
            Err(Error::CertificateInvalid(_))
        ));
    }

    #[test]
    fn block_extraction() {
        let z = z();
        let i2 = ideal2();
        let theta = twisted_chi(&z, 2, &i2, 1, 4, 2);

        // delta = I
        let delta = Matrix::identity(&z, 6);
        let beta = extract_block(&delta, &theta, &theta).unwrap();
        assert!(beta.is_identity());

        // delta = I_2 perp beta0 with theta2 = beta0^T theta1 beta0
        let mut bw = ElementaryWord::empty(&z, GenFamily::Linear, 4);
        bw.push_plain(2, 3, z.from_i64(2)).unwrap();
        bw.push_plain(4, 1, z.from_i64(-2)).unwrap();
        let beta0 = bw.eval().unwrap();
        let theta2 =
            AltRep::new(theta.matrix().congruence(&beta0).unwrap(), Some(i2.clone())).unwrap();
        let delta = Matrix::identity(&z, 2).perp(&beta0).unwrap();
        let got = extract_block(&delta, &theta, &theta2).unwrap();
        assert_eq!(got, beta0);

        // twisted planted instance: delta = h (I_2 perp beta0) where
        // h = I + c u (u^T phi) preserves phi = chi_1 perp theta1 and fixes
        // the first column (u_2 = 0, c in the ideal)
        let phi = Matrix::standard_alternating(&z, 1).perp(theta.matrix()).unwrap();
        let u = Matrix::from_fn(&z, 6, 1, |r, _| match r {
            0 => z.from_i64(1),
            3 => z.from_i64(2),
            5 => z.from_i64(-1),
            _ => z.zero(),
        });
        let ut_phi = u.transpose().mul(&phi).unwrap();
        let h = Matrix::identity(&z, 6)
            .add(&u.mul(&ut_phi).unwrap().scalar_mul(&z.from_i64(2)).unwrap())
            .unwrap();
        assert!(h.preserves_form(&phi).unwrap());
        let delta = h.mul(&Matrix::identity(&z, 2).perp(&beta0).unwrap()).unwrap();
        let got = extract_block(&delta, &theta, &theta2).unwrap();
        assert_eq!(theta.matrix().congruence(&got).unwrap(), *theta2.matrix());

        // first-column violation
        let mut badrow = Matrix::identity(&z, 6);
        badrow.set_entry(2, 0, z.from_i64(2));
        assert!(matches!(
            extract_block(&badrow, &theta, &theta),
            Err(Error::HypothesisFailed(_))
        ));
    }
}
