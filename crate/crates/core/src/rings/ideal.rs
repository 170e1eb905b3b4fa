//! Finitely generated ideals with decidable or certificate-based membership.

use super::element::{euclid_gcd, euclid_gcd_many};
use super::{Element, Ring, RingRef};
use crate::error::{Error, Result};

/// How membership queries are answered.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MembershipMode {
    /// Membership is decided by gcd computations in an effective Euclidean
    /// setting (or one of the reductions to it).
    GcdDecidable,
    /// Membership queries must supply a certificate: multipliers `c_k` with
    /// `sum c_k g_k = x`.
    CertificateOnly,
}

/// A finitely generated ideal of a ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ideal {
    ring: RingRef,
    generators: Vec<Element>,
    mode: MembershipMode,
    /// Marks the ideal `0 + I` inside an excision algebra, whose membership
    /// test is structural on the first component.
    split: bool,
}

impl Ideal {
    pub fn new(ring: &RingRef, generators: Vec<Element>, mode: MembershipMode) -> Result<Ideal> {
        if generators.is_empty() {
            return Err(Error::DescriptorMismatch("an ideal needs at least one generator".into()));
        }
        for g in &generators {
            if !std::sync::Arc::ptr_eq(g.ring(), ring) && **g.ring() != **ring {
                return Err(Error::DescriptorMismatch("generator outside the ring".into()));
            }
        }
        if mode == MembershipMode::GcdDecidable && !gcd_decidable(ring, &generators) {
            return Err(Error::Unsupported(format!(
                "membership over {ring} is not gcd-decidable; use certificate mode"
            )));
        }
        Ok(Ideal { ring: ring.clone(), generators, mode, split: false })
    }

    pub fn principal(g: Element) -> Result<Ideal> {
        let ring = g.ring().clone();
        Ideal::new(&ring, vec![g], MembershipMode::GcdDecidable)
    }

    /// The split ideal `0 + I` of an excision algebra, generated by the pairs
    /// `(0, g)` over the base ideal's generators.
    pub fn split_zero(excision: &RingRef) -> Result<Ideal> {
        let (base, inner) = match &**excision {
            Ring::Excision { base, ideal } => (base, ideal),
            _ => return Err(Error::DescriptorMismatch("not an excision algebra".into())),
        };
        let generators = inner
            .generators
            .iter()
            .map(|g| excision.pair_unchecked(base.zero(), g.clone()))
            .collect();
        Ok(Ideal { ring: excision.clone(), generators, mode: inner.mode, split: true })
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    pub fn mode(&self) -> MembershipMode {
        self.mode
    }

    pub fn is_split(&self) -> bool {
        self.split
    }

    /// Decide membership of `x`. When a certificate is supplied the answer is
    /// its verification; otherwise gcd-decidable ideals are decided directly
    /// and certificate-only ideals report `CertificateRequired`.
    pub fn member(&self, x: &Element, cert: Option<&[Element]>) -> Result<bool> {
        if **x.ring() != *self.ring {
            return Err(Error::DescriptorMismatch("membership query outside the ring".into()));
        }
        if self.split {
            let (r, i) = x.pair_parts().expect("excision pair");
            if !r.is_zero() {
                return Ok(false);
            }
            let inner = self.ring.ideal().expect("excision algebra").clone();
            return if i.is_zero() { Ok(true) } else { inner.member(i, cert) };
        }
        if let Some(cs) = cert {
            return self.verify_certificate(x, cs);
        }
        match self.mode {
            MembershipMode::CertificateOnly => Err(Error::CertificateRequired),
            MembershipMode::GcdDecidable => self.decide(x),
        }
    }

    fn verify_certificate(&self, x: &Element, cs: &[Element]) -> Result<bool> {
        if cs.len() != self.generators.len() {
            return Err(Error::CertificateInvalid(format!(
                "expected {} multipliers, got {}",
                self.generators.len(),
                cs.len()
            )));
        }
        let mut sum = self.ring.zero();
        for (c, g) in cs.iter().zip(&self.generators) {
            sum = sum.add(&c.mul(g)?)?;
        }
        Ok(sum == *x)
    }

    fn decide(&self, x: &Element) -> Result<bool> {
        match &*self.ring {
            Ring::Integers | Ring::Rationals => {
                let g = euclid_gcd_many(&self.ring, &self.generators)?;
                Ok(x.exact_divide(&g).is_ok())
            }
            Ring::Polynomial { base, .. } if base.is_field() => {
                let g = euclid_gcd_many(&self.ring, &self.generators)?;
                divides_with_rem(x, &g)
            }
            Ring::IntegersMod { modulus } => {
                // Lift to the integers: <g_1, .., g_k> mod m is generated by
                // gcd(g_1, .., g_k, m).
                let mut g = *modulus;
                for gen in &self.generators {
                    g = gcd_u64(g, gen.as_residue().expect("residue"));
                }
                let r = x.as_residue().expect("residue");
                Ok(g == 0 || r % g == 0)
            }
            Ring::Polynomial { base, .. } => {
                // All generators are constants; decide coefficientwise over
                // the base ring.
                let consts: Vec<Element> =
                    self.generators.iter().map(|g| constant_part(g, base)).collect();
                let inner = Ideal::new(base, consts, MembershipMode::GcdDecidable)?;
                for c in x.poly_coeffs().expect("polynomial") {
                    if !inner.member(c, None)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            Ring::Localized { base, denom } => {
                // Denominators are units, so the ideal is generated over the
                // base by the numerators; its denominator-free part decides.
                let nums: Vec<Element> = self
                    .generators
                    .iter()
                    .map(|g| g.loc_parts().expect("localized").0.clone())
                    .collect();
                let g = euclid_gcd_many(base, &nums)?;
                let (xn, _) = x.loc_parts().expect("localized");
                if g.is_zero() {
                    return Ok(xn.is_zero());
                }
                let mut d = g;
                loop {
                    let h = euclid_gcd(&d, denom)?;
                    if h.is_unit() {
                        break;
                    }
                    d = d.exact_divide(&h)?;
                }
                Ok(xn.exact_divide(&d).is_ok())
            }
            _ => Err(Error::Unsupported(format!("no membership decision over {}", self.ring))),
        }
    }

    /// Enumerate the units congruent to one modulo this ideal, ascending.
    /// Only finite unit groups are supported.
    pub fn unit_kernel(&self) -> Result<Vec<Element>> {
        const CAP: u64 = 1 << 20;
        match &*self.ring {
            Ring::Integers => {
                let one = self.ring.one();
                let minus = self.ring.from_i64(-1);
                if self.member(&self.ring.from_i64(2), None)? {
                    Ok(vec![minus, one])
                } else {
                    Ok(vec![one])
                }
            }
            Ring::IntegersMod { modulus } => {
                if *modulus > CAP {
                    return Err(Error::NotEnumerable);
                }
                let mut out = Vec::new();
                for u in 1..*modulus {
                    if gcd_u64(u, *modulus) != 1 {
                        continue;
                    }
                    let e = self.ring.from_i64(u as i64);
                    if self.member(&e.sub(&self.ring.one())?, None)? {
                        out.push(e);
                    }
                }
                Ok(out)
            }
            _ => Err(Error::NotEnumerable),
        }
    }
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn constant_part(g: &Element, base: &RingRef) -> Element {
    match g.poly_coeffs() {
        Some([c]) => c.clone(),
        Some([]) => base.zero(),
        _ => unreachable!("validated constant generator"),
    }
}

/// Divisibility via division with remainder; `g = 0` means membership in the
/// zero ideal.
fn divides_with_rem(x: &Element, g: &Element) -> Result<bool> {
    if g.is_zero() {
        return Ok(x.is_zero());
    }
    if x.is_zero() {
        return Ok(true);
    }
    let (_, r) = super::element::euclid_divmod(x, g)?;
    Ok(r.is_zero())
}

fn gcd_decidable(ring: &RingRef, generators: &[Element]) -> bool {
    if ring.is_euclidean() {
        return true;
    }
    match &**ring {
        Ring::Localized { base, .. } => base.is_euclidean() && base.is_domain(),
        Ring::Polynomial { base, .. } => {
            generators.iter().all(|g| g.degree().unwrap_or(0) == 0)
                && gcd_decidable(base, &generators.iter().map(|g| constant_part(g, base)).collect::<Vec<_>>())
        }
        _ => false,
    }
}

impl std::fmt::Display for Ideal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "<")?;
        for (k, g) in self.generators.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ">")
    }
}
