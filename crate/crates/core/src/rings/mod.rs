//! Ground rings: exact arithmetic in canonical form.
//!
//! A [`Ring`] is a descriptor tree (integers, rationals, modular integers,
//! polynomials, localizations, Euclidean quotients, excision algebras and
//! double rings). An [`Element`] carries a shared pointer to its ring plus a
//! canonical payload, so element equality is plain structural equality and
//! every operation can check that its operands live in the same ring.
//!
//! Canonical forms: rationals are reduced with positive denominator,
//! residues lie in `[0, m)`, polynomials carry no trailing zero
//! coefficients, localized elements use the minimal denominator exponent,
//! and quotient elements are Euclidean remainders.

mod element;
mod hom;
mod ideal;

pub use element::{euclid_divmod, euclid_egcd, euclid_gcd, euclid_gcd_many};
pub use hom::{HomKind, RingHom};
pub use ideal::{Ideal, MembershipMode};

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type RingRef = Arc<Ring>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Ring {
    /// The ring of integers.
    Integers,
    /// The field of rational numbers.
    Rationals,
    /// Integers modulo `modulus`, `modulus >= 2`.
    IntegersMod { modulus: u64 },
    /// Univariate polynomials over `base` in the named variable.
    Polynomial { base: RingRef, var: String },
    /// `base` localized at the powers of a single nonzero denominator.
    /// The base must be an integral domain.
    Localized { base: RingRef, denom: Element },
    /// Quotient of a Euclidean domain by a principal ideal `(modulus)`.
    QuotientEuclidean { base: RingRef, modulus: Element },
    /// The excision algebra on `(base, ideal)`: pairs `(r, i)` with `i` a
    /// certified ideal member, added componentwise and multiplied by
    /// `(r, i)(s, j) = (rs, rj + si + ij)`.
    Excision { base: RingRef, ideal: Ideal },
    /// Pairs `(a, b)` with `a - b` in the ideal, operating componentwise.
    Double { base: RingRef, ideal: Ideal },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Payload {
    Int(BigInt),
    Rat(BigRational),
    Res(u64),
    Poly(Vec<Element>),
    Loc { num: Box<Element>, exp: u32 },
    Quot(Box<Element>),
    Pair(Box<(Element, Element)>),
}

/// An element of some [`Ring`], always held in canonical form.
#[derive(Debug, Clone)]
pub struct Element {
    pub(crate) ring: RingRef,
    pub(crate) payload: Payload,
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring)
            && self.payload == other.payload
    }
}

impl Eq for Element {}

pub(crate) fn same_ring(a: &Element, b: &Element) -> Result<()> {
    if Arc::ptr_eq(&a.ring, &b.ring) || a.ring == b.ring {
        Ok(())
    } else {
        Err(Error::DescriptorMismatch(format!("{} vs {}", a.ring, b.ring)))
    }
}

impl Ring {
    pub fn integers() -> RingRef {
        Arc::new(Ring::Integers)
    }

    pub fn rationals() -> RingRef {
        Arc::new(Ring::Rationals)
    }

    pub fn integers_mod(modulus: u64) -> Result<RingRef> {
        if modulus < 2 {
            return Err(Error::Unsupported("modulus must be at least 2".into()));
        }
        Ok(Arc::new(Ring::IntegersMod { modulus }))
    }

    pub fn polynomial(base: &RingRef, var: &str) -> Result<RingRef> {
        if var.is_empty() || !var.chars().all(|c| c.is_ascii_alphanumeric()) {
            return Err(Error::Unsupported(format!("bad variable name {var:?}")));
        }
        Ok(Arc::new(Ring::Polynomial { base: base.clone(), var: var.to_string() }))
    }

    pub fn localized(base: &RingRef, denom: Element) -> Result<RingRef> {
        if !base.is_domain() {
            return Err(Error::NotADomain);
        }
        if !Arc::ptr_eq(denom.ring(), base) && **denom.ring() != **base {
            return Err(Error::DescriptorMismatch(format!(
                "denominator lives in {}, not {}",
                denom.ring(),
                base
            )));
        }
        if denom.is_zero() {
            return Err(Error::Unsupported("denominator must be nonzero".into()));
        }
        Ok(Arc::new(Ring::Localized { base: base.clone(), denom }))
    }

    pub fn quotient_euclidean(base: &RingRef, modulus: Element) -> Result<RingRef> {
        if !base.is_euclidean() || !base.is_domain() {
            return Err(Error::Unsupported("quotient base must be a Euclidean domain".into()));
        }
        if **modulus.ring() != **base {
            return Err(Error::DescriptorMismatch("modulus outside base ring".into()));
        }
        if modulus.is_zero() || modulus.is_unit() {
            return Err(Error::QuotientNotComputable);
        }
        let modulus = base.normalize_associate(&modulus)?;
        Ok(Arc::new(Ring::QuotientEuclidean { base: base.clone(), modulus }))
    }

    pub fn excision(base: &RingRef, ideal: Ideal) -> Result<RingRef> {
        if **ideal.ring() != **base {
            return Err(Error::DescriptorMismatch("ideal lives over a different ring".into()));
        }
        Ok(Arc::new(Ring::Excision { base: base.clone(), ideal }))
    }

    pub fn double(base: &RingRef, ideal: Ideal) -> Result<RingRef> {
        if **ideal.ring() != **base {
            return Err(Error::DescriptorMismatch("ideal lives over a different ring".into()));
        }
        Ok(Arc::new(Ring::Double { base: base.clone(), ideal }))
    }

    pub fn base(&self) -> Option<&RingRef> {
        match self {
            Ring::Polynomial { base, .. }
            | Ring::Localized { base, .. }
            | Ring::QuotientEuclidean { base, .. }
            | Ring::Excision { base, .. }
            | Ring::Double { base, .. } => Some(base),
            _ => None,
        }
    }

    pub fn ideal(&self) -> Option<&Ideal> {
        match self {
            Ring::Excision { ideal, .. } | Ring::Double { ideal, .. } => Some(ideal),
            _ => None,
        }
    }

    pub fn is_field(&self) -> bool {
        match self {
            Ring::Rationals => true,
            Ring::IntegersMod { modulus } => is_prime_u64(*modulus),
            _ => false,
        }
    }

    pub fn is_domain(&self) -> bool {
        match self {
            Ring::Integers | Ring::Rationals => true,
            Ring::IntegersMod { modulus } => is_prime_u64(*modulus),
            Ring::Polynomial { base, .. } => base.is_domain(),
            Ring::Localized { base, .. } => base.is_domain(),
            // Conservative: quotients, excision algebras and double rings are
            // treated as having zero divisors, which only costs us the
            // division-free determinant path.
            Ring::QuotientEuclidean { .. } | Ring::Excision { .. } | Ring::Double { .. } => false,
        }
    }

    /// Rings with an effective division-with-remainder, hence computable
    /// gcds of finitely generated ideals.
    pub fn is_euclidean(&self) -> bool {
        match self {
            Ring::Integers | Ring::Rationals | Ring::IntegersMod { .. } => true,
            Ring::Polynomial { base, .. } => base.is_field(),
            _ => false,
        }
    }

    pub fn zero(self: &RingRef) -> Element {
        let payload = match &**self {
            Ring::Integers => Payload::Int(BigInt::zero()),
            Ring::Rationals => Payload::Rat(BigRational::zero()),
            Ring::IntegersMod { .. } => Payload::Res(0),
            Ring::Polynomial { .. } => Payload::Poly(Vec::new()),
            Ring::Localized { base, .. } => {
                Payload::Loc { num: Box::new(base.zero()), exp: 0 }
            }
            Ring::QuotientEuclidean { base, .. } => Payload::Quot(Box::new(base.zero())),
            Ring::Excision { base, .. } | Ring::Double { base, .. } => {
                Payload::Pair(Box::new((base.zero(), base.zero())))
            }
        };
        Element { ring: self.clone(), payload }
    }

    pub fn one(self: &RingRef) -> Element {
        self.from_i64(1)
    }

    /// The canonical image of an integer.
    pub fn from_i64(self: &RingRef, n: i64) -> Element {
        self.from_bigint(BigInt::from(n))
    }

    pub fn from_bigint(self: &RingRef, n: BigInt) -> Element {
        let payload = match &**self {
            Ring::Integers => Payload::Int(n),
            Ring::Rationals => Payload::Rat(BigRational::from_integer(n)),
            Ring::IntegersMod { modulus } => Payload::Res(mod_reduce(&n, *modulus)),
            Ring::Polynomial { base, .. } => {
                let c = base.from_bigint(n);
                if c.is_zero() {
                    Payload::Poly(Vec::new())
                } else {
                    Payload::Poly(vec![c])
                }
            }
            Ring::Localized { base, .. } => {
                return self
                    .localized_elem(base.from_bigint(n), 0)
                    .expect("integer image is canonical");
            }
            Ring::QuotientEuclidean { base, .. } => {
                return self
                    .quot_elem(base.from_bigint(n))
                    .expect("integer image reduces");
            }
            Ring::Excision { base, .. } => {
                Payload::Pair(Box::new((base.from_bigint(n), base.zero())))
            }
            Ring::Double { base, .. } => {
                let a = base.from_bigint(n);
                Payload::Pair(Box::new((a.clone(), a)))
            }
        };
        Element { ring: self.clone(), payload }
    }

    /// Build an integer element (`Integers` ring only).
    pub fn int(self: &RingRef, n: BigInt) -> Result<Element> {
        match &**self {
            Ring::Integers => Ok(Element { ring: self.clone(), payload: Payload::Int(n) }),
            _ => Err(Error::DescriptorMismatch("not the integer ring".into())),
        }
    }

    pub fn rational(self: &RingRef, p: BigInt, q: BigInt) -> Result<Element> {
        match &**self {
            Ring::Rationals => {
                if q.is_zero() {
                    return Err(Error::NotDivisible);
                }
                Ok(Element { ring: self.clone(), payload: Payload::Rat(BigRational::new(p, q)) })
            }
            _ => Err(Error::DescriptorMismatch("not the rational ring".into())),
        }
    }

    /// Build a polynomial from low-to-high coefficients over the base ring.
    pub fn poly_from_coeffs(self: &RingRef, coeffs: Vec<Element>) -> Result<Element> {
        let base = match &**self {
            Ring::Polynomial { base, .. } => base,
            _ => return Err(Error::DescriptorMismatch("not a polynomial ring".into())),
        };
        for c in &coeffs {
            if **c.ring() != **base {
                return Err(Error::DescriptorMismatch("coefficient outside base ring".into()));
            }
        }
        let mut coeffs = coeffs;
        while coeffs.last().is_some_and(Element::is_zero) {
            coeffs.pop();
        }
        Ok(Element { ring: self.clone(), payload: Payload::Poly(coeffs) })
    }

    /// The variable of a polynomial ring, as a degree-one monic element.
    pub fn poly_var(self: &RingRef) -> Result<Element> {
        let base = match &**self {
            Ring::Polynomial { base, .. } => base.clone(),
            _ => return Err(Error::DescriptorMismatch("not a polynomial ring".into())),
        };
        self.poly_from_coeffs(vec![base.zero(), base.one()])
    }

    /// Build `num / denom^exp` in a localized ring, reducing to the minimal
    /// exponent.
    pub fn localized_elem(self: &RingRef, num: Element, exp: u32) -> Result<Element> {
        let (base, denom) = match &**self {
            Ring::Localized { base, denom } => (base, denom),
            _ => return Err(Error::DescriptorMismatch("not a localized ring".into())),
        };
        if **num.ring() != **base {
            return Err(Error::DescriptorMismatch("numerator outside base ring".into()));
        }
        let mut num = num;
        let mut exp = exp;
        if num.is_zero() {
            exp = 0;
        }
        while exp > 0 {
            match num.exact_divide(denom) {
                Ok(q) => {
                    num = q;
                    exp -= 1;
                }
                Err(Error::NotDivisible) => break,
                Err(e) => return Err(e),
            }
        }
        Ok(Element { ring: self.clone(), payload: Payload::Loc { num: Box::new(num), exp } })
    }

    /// Reduce a base-ring representative into the quotient.
    pub fn quot_elem(self: &RingRef, rep: Element) -> Result<Element> {
        let (base, modulus) = match &**self {
            Ring::QuotientEuclidean { base, modulus } => (base, modulus),
            _ => return Err(Error::DescriptorMismatch("not a quotient ring".into())),
        };
        if **rep.ring() != **base {
            return Err(Error::DescriptorMismatch("representative outside base ring".into()));
        }
        let (_, r) = element::euclid_divmod(&rep, modulus)?;
        Ok(Element { ring: self.clone(), payload: Payload::Quot(Box::new(r)) })
    }

    /// Build the pair `(r, i)` of an excision algebra. Membership of `i` in
    /// the defining ideal is checked here, with `cert` consulted when the
    /// ideal only accepts explicit certificates; all later arithmetic
    /// preserves membership structurally.
    pub fn excision_elem(
        self: &RingRef,
        r: Element,
        i: Element,
        cert: Option<&[Element]>,
    ) -> Result<Element> {
        let (base, ideal) = match &**self {
            Ring::Excision { base, ideal } => (base, ideal),
            _ => return Err(Error::DescriptorMismatch("not an excision algebra".into())),
        };
        if **r.ring() != **base || **i.ring() != **base {
            return Err(Error::DescriptorMismatch("pair component outside base ring".into()));
        }
        if !i.is_zero() && !ideal.member(&i, cert)? {
            return Err(Error::NotRelative);
        }
        Ok(Element { ring: self.clone(), payload: Payload::Pair(Box::new((r, i))) })
    }

    pub(crate) fn pair_unchecked(self: &RingRef, a: Element, b: Element) -> Element {
        Element { ring: self.clone(), payload: Payload::Pair(Box::new((a, b))) }
    }

    /// Build the pair `(a, b)` of a double ring, checking `a - b` lies in
    /// the defining ideal.
    pub fn double_elem(
        self: &RingRef,
        a: Element,
        b: Element,
        cert: Option<&[Element]>,
    ) -> Result<Element> {
        let (base, ideal) = match &**self {
            Ring::Double { base, ideal } => (base, ideal),
            _ => return Err(Error::DescriptorMismatch("not a double ring".into())),
        };
        if **a.ring() != **base || **b.ring() != **base {
            return Err(Error::DescriptorMismatch("pair component outside base ring".into()));
        }
        let d = a.sub(&b)?;
        if !d.is_zero() && !ideal.member(&d, cert)? {
            return Err(Error::NotRelative);
        }
        Ok(Element { ring: self.clone(), payload: Payload::Pair(Box::new((a, b))) })
    }

    /// Residue constructor for `IntegersMod` rings.
    pub fn residue(self: &RingRef, n: i64) -> Result<Element> {
        match &**self {
            Ring::IntegersMod { .. } => Ok(self.from_i64(n)),
            _ => Err(Error::DescriptorMismatch("not a modular ring".into())),
        }
    }

    /// Canonical associate of a nonzero Euclidean element: positive for
    /// integers, monic for polynomials over a field, one for field elements.
    pub(crate) fn normalize_associate(self: &RingRef, x: &Element) -> Result<Element> {
        if x.is_zero() {
            return Ok(x.clone());
        }
        match &**self {
            Ring::Integers => {
                if let Payload::Int(n) = &x.payload {
                    Ok(self.from_bigint(n.abs()))
                } else {
                    unreachable!()
                }
            }
            Ring::Rationals | Ring::IntegersMod { .. } if self.is_field() => Ok(self.one()),
            Ring::IntegersMod { .. } => Ok(x.clone()),
            Ring::Polynomial { .. } => {
                let lc = x.leading_coeff().expect("nonzero polynomial");
                let inv = lc.unit_inverse()?;
                x.scale(&inv)
            }
            _ => Ok(x.clone()),
        }
    }
}

pub(crate) fn mod_reduce(n: &BigInt, m: u64) -> u64 {
    use num_integer::Integer;
    let m_big = BigInt::from(m);
    let r = n.mod_floor(&m_big);
    let (_, digits) = r.to_u64_digits();
    match digits.len() {
        0 => 0,
        1 => digits[0],
        _ => unreachable!("residue below modulus"),
    }
}

/// Deterministic Miller-Rabin for 64-bit inputs.
pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        b %= n;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}


impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => write!(f, "Z"),
            Ring::Rationals => write!(f, "Q"),
            Ring::IntegersMod { modulus } => write!(f, "Zmod {modulus}"),
            Ring::Polynomial { base, var } => write!(f, "poly {base} {var}"),
            Ring::Localized { base, denom } => write!(f, "loc {base} {denom}"),
            Ring::QuotientEuclidean { base, modulus } => write!(f, "quot {base} {modulus}"),
            Ring::Excision { base, ideal } => {
                write!(f, "excision {base} <")?;
                for (k, g) in ideal.generators().iter().enumerate() {
                    if k > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{g}")?;
                }
                write!(f, ">")
            }
            Ring::Double { base, ideal } => {
                write!(f, "double {base} <")?;
                for (k, g) in ideal.generators().iter().enumerate() {
                    if k > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{g}")?;
                }
                write!(f, ">")
            }
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.payload {
            Payload::Int(n) => write!(f, "{n}"),
            Payload::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Payload::Res(r) => write!(f, "{r}"),
            Payload::Poly(cs) => {
                if cs.is_empty() {
                    return write!(f, "[0]");
                }
                write!(f, "[")?;
                for (k, c) in cs.iter().enumerate() {
                    if k > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, "]")
            }
            Payload::Loc { num, exp } => {
                if *exp == 0 {
                    write!(f, "{num}")
                } else {
                    write!(f, "frac({num},{exp})")
                }
            }
            Payload::Quot(x) => write!(f, "{x}"),
            Payload::Pair(p) => write!(f, "({}|{})", p.0, p.1),
        }
    }
}
