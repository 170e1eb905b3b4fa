//! Element arithmetic, unit inversion, exact division and the Euclidean
//! helpers shared by ideals and row reduction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{same_ring, Element, Payload, Ring, RingRef};
use crate::error::{Error, Result};

impl Element {
    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        match &self.payload {
            Payload::Int(n) => n.is_zero(),
            Payload::Rat(r) => r.is_zero(),
            Payload::Res(r) => *r == 0,
            Payload::Poly(cs) => cs.is_empty(),
            Payload::Loc { num, .. } => num.is_zero(),
            Payload::Quot(x) => x.is_zero(),
            Payload::Pair(p) => p.0.is_zero() && p.1.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match (&*self.ring, &self.payload) {
            (Ring::Integers, Payload::Int(n)) => n.is_one(),
            (Ring::Rationals, Payload::Rat(r)) => r.is_one(),
            (Ring::IntegersMod { .. }, Payload::Res(r)) => *r == 1,
            (Ring::Polynomial { .. }, Payload::Poly(cs)) => cs.len() == 1 && cs[0].is_one(),
            (Ring::Localized { .. }, Payload::Loc { num, exp }) => *exp == 0 && num.is_one(),
            (Ring::QuotientEuclidean { .. }, Payload::Quot(x)) => x.is_one(),
            (Ring::Excision { .. }, Payload::Pair(p)) => p.0.is_one() && p.1.is_zero(),
            (Ring::Double { .. }, Payload::Pair(p)) => p.0.is_one() && p.1.is_one(),
            _ => unreachable!("payload matches ring"),
        }
    }

    /// Pair components of an excision or double element.
    pub fn pair_parts(&self) -> Option<(&Element, &Element)> {
        match &self.payload {
            Payload::Pair(p) => Some((&p.0, &p.1)),
            _ => None,
        }
    }

    /// Low-to-high coefficients of a polynomial element.
    pub fn poly_coeffs(&self) -> Option<&[Element]> {
        match &self.payload {
            Payload::Poly(cs) => Some(cs),
            _ => None,
        }
    }

    /// Numerator and denominator exponent of a localized element.
    pub fn loc_parts(&self) -> Option<(&Element, u32)> {
        match &self.payload {
            Payload::Loc { num, exp } => Some((num, *exp)),
            _ => None,
        }
    }

    /// Representative of a quotient element.
    pub fn quot_rep(&self) -> Option<&Element> {
        match &self.payload {
            Payload::Quot(x) => Some(x),
            _ => None,
        }
    }

    pub fn as_bigint(&self) -> Option<&BigInt> {
        match &self.payload {
            Payload::Int(n) => Some(n),
            _ => None,
        }
    }

    pub fn as_residue(&self) -> Option<u64> {
        match &self.payload {
            Payload::Res(r) => Some(*r),
            _ => None,
        }
    }

    pub fn degree(&self) -> Option<usize> {
        match &self.payload {
            Payload::Poly(cs) if !cs.is_empty() => Some(cs.len() - 1),
            _ => None,
        }
    }

    pub fn leading_coeff(&self) -> Option<Element> {
        match &self.payload {
            Payload::Poly(cs) => cs.last().cloned(),
            _ => None,
        }
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        same_ring(self, other)?;
        let payload = match (&*self.ring, &self.payload, &other.payload) {
            (Ring::Integers, Payload::Int(a), Payload::Int(b)) => Payload::Int(a + b),
            (Ring::Rationals, Payload::Rat(a), Payload::Rat(b)) => Payload::Rat(a + b),
            (Ring::IntegersMod { modulus }, Payload::Res(a), Payload::Res(b)) => {
                Payload::Res(((*a as u128 + *b as u128) % (*modulus as u128)) as u64)
            }
            (Ring::Polynomial { .. }, Payload::Poly(a), Payload::Poly(b)) => {
                let n = a.len().max(b.len());
                let mut out = Vec::with_capacity(n);
                for k in 0..n {
                    let c = match (a.get(k), b.get(k)) {
                        (Some(x), Some(y)) => x.add(y)?,
                        (Some(x), None) => x.clone(),
                        (None, Some(y)) => y.clone(),
                        (None, None) => unreachable!(),
                    };
                    out.push(c);
                }
                return self.ring.poly_from_coeffs(out);
            }
            (Ring::Localized { denom, .. }, Payload::Loc { num: a, exp: ae }, Payload::Loc { num: b, exp: be }) => {
                let e = (*ae).max(*be);
                let left = a.mul(&denom.pow(e - ae)?)?;
                let right = b.mul(&denom.pow(e - be)?)?;
                return self.ring.localized_elem(left.add(&right)?, e);
            }
            (Ring::QuotientEuclidean { .. }, Payload::Quot(a), Payload::Quot(b)) => {
                return self.ring.quot_elem(a.add(b)?);
            }
            (Ring::Excision { .. } | Ring::Double { .. }, Payload::Pair(p), Payload::Pair(q)) => {
                Payload::Pair(Box::new((p.0.add(&q.0)?, p.1.add(&q.1)?)))
            }
            _ => unreachable!("payload matches ring"),
        };
        Ok(Element { ring: self.ring.clone(), payload })
    }

    pub fn neg(&self) -> Element {
        let payload = match (&*self.ring, &self.payload) {
            (_, Payload::Int(a)) => Payload::Int(-a),
            (_, Payload::Rat(a)) => Payload::Rat(-a),
            (Ring::IntegersMod { modulus }, Payload::Res(a)) => {
                Payload::Res(if *a == 0 { 0 } else { modulus - a })
            }
            (_, Payload::Poly(cs)) => Payload::Poly(cs.iter().map(Element::neg).collect()),
            (_, Payload::Loc { num, exp }) => {
                Payload::Loc { num: Box::new(num.neg()), exp: *exp }
            }
            (_, Payload::Quot(x)) => {
                return self.ring.quot_elem(x.neg()).expect("negation stays reduced");
            }
            (_, Payload::Pair(p)) => Payload::Pair(Box::new((p.0.neg(), p.1.neg()))),
            _ => unreachable!("payload matches ring"),
        };
        Element { ring: self.ring.clone(), payload }
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Element) -> Result<Element> {
        same_ring(self, other)?;
        let payload = match (&*self.ring, &self.payload, &other.payload) {
            (Ring::Integers, Payload::Int(a), Payload::Int(b)) => Payload::Int(a * b),
            (Ring::Rationals, Payload::Rat(a), Payload::Rat(b)) => Payload::Rat(a * b),
            (Ring::IntegersMod { modulus }, Payload::Res(a), Payload::Res(b)) => {
                Payload::Res(((*a as u128 * *b as u128) % (*modulus as u128)) as u64)
            }
            (Ring::Polynomial { base, .. }, Payload::Poly(a), Payload::Poly(b)) => {
                if a.is_empty() || b.is_empty() {
                    return Ok(self.ring.zero());
                }
                let mut out = vec![base.zero(); a.len() + b.len() - 1];
                for (i, x) in a.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (j, y) in b.iter().enumerate() {
                        if y.is_zero() {
                            continue;
                        }
                        out[i + j] = out[i + j].add(&x.mul(y)?)?;
                    }
                }
                return self.ring.poly_from_coeffs(out);
            }
            (Ring::Localized { .. }, Payload::Loc { num: a, exp: ae }, Payload::Loc { num: b, exp: be }) => {
                let e = ae.checked_add(*be).ok_or_else(|| {
                    Error::Unsupported("denominator exponent overflow".into())
                })?;
                return self.ring.localized_elem(a.mul(b)?, e);
            }
            (Ring::QuotientEuclidean { .. }, Payload::Quot(a), Payload::Quot(b)) => {
                return self.ring.quot_elem(a.mul(b)?);
            }
            (Ring::Excision { .. }, Payload::Pair(p), Payload::Pair(q)) => {
                let (r, i) = (&p.0, &p.1);
                let (s, j) = (&q.0, &q.1);
                let second = r.mul(j)?.add(&s.mul(i)?)?.add(&i.mul(j)?)?;
                Payload::Pair(Box::new((r.mul(s)?, second)))
            }
            (Ring::Double { .. }, Payload::Pair(p), Payload::Pair(q)) => {
                Payload::Pair(Box::new((p.0.mul(&q.0)?, p.1.mul(&q.1)?)))
            }
            _ => unreachable!("payload matches ring"),
        };
        Ok(Element { ring: self.ring.clone(), payload })
    }

    pub fn pow(&self, exp: u32) -> Result<Element> {
        let mut acc = self.ring.one();
        let mut b = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b)?;
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b)?;
            }
        }
        Ok(acc)
    }

    /// Multiply a polynomial by a base-ring scalar.
    pub(crate) fn scale(&self, c: &Element) -> Result<Element> {
        match &self.payload {
            Payload::Poly(cs) => {
                let out = cs.iter().map(|x| x.mul(c)).collect::<Result<Vec<_>>>()?;
                self.ring.poly_from_coeffs(out)
            }
            _ => unreachable!("scale is for polynomials"),
        }
    }

    pub fn is_unit(&self) -> bool {
        self.unit_inverse().is_ok()
    }

    /// Multiplicative inverse, or `NotAUnit`.
    pub fn unit_inverse(&self) -> Result<Element> {
        match (&*self.ring, &self.payload) {
            (Ring::Integers, Payload::Int(n)) => {
                if n.is_one() || (-n).is_one() {
                    Ok(self.clone())
                } else {
                    Err(Error::NotAUnit)
                }
            }
            (Ring::Rationals, Payload::Rat(r)) => {
                if r.is_zero() {
                    Err(Error::NotAUnit)
                } else {
                    Ok(Element { ring: self.ring.clone(), payload: Payload::Rat(r.recip()) })
                }
            }
            (Ring::IntegersMod { modulus }, Payload::Res(r)) => {
                let (g, x, _) = egcd_i128(*r as i128, *modulus as i128);
                if g != 1 {
                    return Err(Error::NotAUnit);
                }
                let m = *modulus as i128;
                Ok(self.ring.from_i64(((x % m + m) % m) as i64))
            }
            (Ring::Polynomial { base, .. }, Payload::Poly(cs)) => {
                if cs.is_empty() {
                    return Err(Error::NotAUnit);
                }
                if base.is_domain() {
                    if cs.len() == 1 {
                        let inv = cs[0].unit_inverse()?;
                        return self.ring.poly_from_coeffs(vec![inv]);
                    }
                    return Err(Error::NotAUnit);
                }
                // Over a base with nilpotents a polynomial can be a unit in
                // positive degree; Newton iteration converges when it is.
                let c0 = cs[0].unit_inverse().map_err(|_| Error::NotAUnit)?;
                let mut y = self.ring.poly_from_coeffs(vec![c0])?;
                let two = self.ring.from_i64(2);
                for _ in 0..16 {
                    let xy = self.mul(&y)?;
                    if xy.is_one() {
                        return Ok(y);
                    }
                    y = y.mul(&two.sub(&xy)?)?;
                    if y.poly_coeffs().map(<[Element]>::len).unwrap_or(0) > 256 {
                        break;
                    }
                }
                if self.mul(&y)?.is_one() {
                    Ok(y)
                } else {
                    Err(Error::NotAUnit)
                }
            }
            (Ring::Localized { base, denom }, Payload::Loc { num, exp }) => {
                if num.is_zero() {
                    return Err(Error::NotAUnit);
                }
                if !base.is_euclidean() {
                    return Err(Error::Unsupported(
                        "unit test over a localized non-Euclidean base".into(),
                    ));
                }
                let (d, m) = f_free_split(num, denom)?;
                let dinv = d.unit_inverse().map_err(|_| Error::NotAUnit)?;
                let t = divides_power(&m, denom).ok_or(Error::NotAUnit)?;
                let ft_over_m = denom.pow(t)?.exact_divide(&m)?;
                let num_out = dinv.mul(&ft_over_m)?;
                if t >= *exp {
                    self.ring.localized_elem(num_out, t - exp)
                } else {
                    self.ring.localized_elem(num_out.mul(&denom.pow(exp - t)?)?, 0)
                }
            }
            (Ring::QuotientEuclidean { base: _, modulus }, Payload::Quot(x)) => {
                let (g, u, _) = euclid_egcd(x, modulus)?;
                if !g.is_unit() {
                    return Err(Error::NotAUnit);
                }
                let ginv = g.unit_inverse()?;
                self.ring.quot_elem(u.mul(&ginv)?)
            }
            (Ring::Excision { .. }, Payload::Pair(p)) => {
                let (r, i) = (&p.0, &p.1);
                let rinv = r.unit_inverse().map_err(|_| Error::NotAUnit)?;
                let pinv = r.add(i)?.unit_inverse().map_err(|_| Error::NotAUnit)?;
                let j = rinv.mul(&pinv)?.mul(i)?.neg();
                Ok(self.ring.pair_unchecked(rinv, j))
            }
            (Ring::Double { .. }, Payload::Pair(p)) => {
                let a = p.0.unit_inverse().map_err(|_| Error::NotAUnit)?;
                let b = p.1.unit_inverse().map_err(|_| Error::NotAUnit)?;
                Ok(self.ring.pair_unchecked(a, b))
            }
            _ => unreachable!("payload matches ring"),
        }
    }

    /// Exact division in an integral domain: the unique `q` with
    /// `q * divisor = self`, or `NotDivisible`.
    pub fn exact_divide(&self, divisor: &Element) -> Result<Element> {
        same_ring(self, divisor)?;
        if !self.ring.is_domain() {
            return Err(Error::NotADomain);
        }
        if divisor.is_zero() {
            return if self.is_zero() { Ok(self.ring.zero()) } else { Err(Error::NotDivisible) };
        }
        match (&*self.ring, &self.payload, &divisor.payload) {
            (Ring::Integers, Payload::Int(a), Payload::Int(b)) => {
                let (q, r) = a.div_rem(b);
                if r.is_zero() {
                    Ok(Element { ring: self.ring.clone(), payload: Payload::Int(q) })
                } else {
                    Err(Error::NotDivisible)
                }
            }
            (Ring::Rationals, _, _) | (Ring::IntegersMod { .. }, _, _) => {
                self.mul(&divisor.unit_inverse()?)
            }
            (Ring::Polynomial { .. }, _, _) => poly_exact_div(self, divisor),
            (Ring::Localized { base, denom }, Payload::Loc { num: a, exp: ae }, Payload::Loc { num: b, exp: be }) => {
                if !base.is_euclidean() {
                    return Err(Error::Unsupported(
                        "exact division over a localized non-Euclidean base".into(),
                    ));
                }
                // self / divisor = (a f^be) / (b f^ae); strip the divisor's
                // numerator into its denominator-coprime part d and its
                // f-power-dividing part m.
                let (d, m) = f_free_split(b, denom)?;
                let t = divides_power(&m, denom).ok_or(Error::NotDivisible)?;
                let q = a.exact_divide(&d).map_err(|_| Error::NotDivisible)?;
                let ft_over_m = denom.pow(t)?.exact_divide(&m)?;
                let num_out = q.mul(&ft_over_m)?.mul(&denom.pow(*be)?)?;
                let e = ae.checked_add(t).ok_or_else(|| {
                    Error::Unsupported("denominator exponent overflow".into())
                })?;
                self.ring.localized_elem(num_out, e)
            }
            _ => unreachable!("domains covered above"),
        }
    }
}

/// Extended gcd on machine integers; returns `(g, x, y)` with `ax + by = g`.
fn egcd_i128(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = egcd_i128(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// Division with remainder in an effective Euclidean domain.
pub fn euclid_divmod(a: &Element, b: &Element) -> Result<(Element, Element)> {
    same_ring(a, b)?;
    if b.is_zero() {
        return Err(Error::NotDivisible);
    }
    match (&*a.ring, &a.payload, &b.payload) {
        (Ring::Integers, Payload::Int(x), Payload::Int(y)) => {
            let (q, r) = x.div_mod_floor(y);
            Ok((
                Element { ring: a.ring.clone(), payload: Payload::Int(q) },
                Element { ring: a.ring.clone(), payload: Payload::Int(r) },
            ))
        }
        (Ring::Rationals, _, _) => Ok((a.mul(&b.unit_inverse()?)?, a.ring.zero())),
        (Ring::IntegersMod { .. }, _, _) if a.ring.is_field() => {
            Ok((a.mul(&b.unit_inverse()?)?, a.ring.zero()))
        }
        (Ring::Polynomial { base, .. }, _, _) if base.is_field() => poly_divmod(a, b),
        _ => Err(Error::Unsupported(format!("no division with remainder over {}", a.ring))),
    }
}

/// Euclidean gcd, returned as the canonical associate.
pub fn euclid_gcd(a: &Element, b: &Element) -> Result<Element> {
    let mut x = a.clone();
    let mut y = b.clone();
    while !y.is_zero() {
        let (_, r) = euclid_divmod(&x, &y)?;
        x = y;
        y = r;
    }
    x.ring.clone().normalize_associate(&x)
}

/// Extended Euclidean algorithm: `(g, u, v)` with `ua + vb = g`, `g` the
/// canonical-associate gcd.
pub fn euclid_egcd(a: &Element, b: &Element) -> Result<(Element, Element, Element)> {
    let ring = a.ring.clone();
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (ring.one(), ring.zero());
    let (mut t0, mut t1) = (ring.zero(), ring.one());
    while !r1.is_zero() {
        let (q, r) = euclid_divmod(&r0, &r1)?;
        let s = s0.sub(&q.mul(&s1)?)?;
        let t = t0.sub(&q.mul(&t1)?)?;
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    let canon = ring.normalize_associate(&r0)?;
    if r0.is_zero() {
        return Ok((canon, s0, t0));
    }
    // Rescale the coefficients to match the canonical associate.
    let u = canon.exact_divide(&r0).or_else(|_| -> Result<Element> {
        // Over a field the associate quotient is a plain division.
        canon.mul(&r0.unit_inverse()?)
    })?;
    Ok((canon, s0.mul(&u)?, t0.mul(&u)?))
}

/// gcd of a list, zero for the empty list.
pub fn euclid_gcd_many(ring: &RingRef, xs: &[Element]) -> Result<Element> {
    let mut g = ring.zero();
    for x in xs {
        g = euclid_gcd(&g, x)?;
    }
    Ok(g)
}

/// Split `a = d * m` with `d` coprime to `f` and `m` dividing a power of `f`.
fn f_free_split(a: &Element, f: &Element) -> Result<(Element, Element)> {
    let ring = a.ring.clone();
    let mut d = a.clone();
    let mut m = ring.one();
    loop {
        let g = euclid_gcd(&d, f)?;
        if g.is_unit() {
            return Ok((d, m));
        }
        d = d.exact_divide(&g)?;
        m = m.mul(&g)?;
    }
}

/// Smallest `t` with `m` dividing `f^t`, if one exists below the size bound.
fn divides_power(m: &Element, f: &Element) -> Option<u32> {
    if m.is_unit() {
        return Some(0);
    }
    let bound = match &m.payload {
        Payload::Int(n) => n.bits() as u32 + 2,
        Payload::Poly(cs) => cs.len() as u32 + 2,
        _ => 8,
    };
    let mut p = m.ring.one();
    for t in 1..=bound {
        p = p.mul(f).ok()?;
        if p.exact_divide(m).is_ok() {
            return Some(t);
        }
    }
    None
}

/// Long division of polynomials where every leading-coefficient step must
/// divide exactly; succeeds precisely when the divisor divides.
fn poly_exact_div(a: &Element, b: &Element) -> Result<Element> {
    let ring = a.ring.clone();
    let base = match &*ring {
        Ring::Polynomial { base, .. } => base.clone(),
        _ => unreachable!(),
    };
    if a.is_zero() {
        return Ok(ring.zero());
    }
    let db = b.degree().ok_or(Error::NotDivisible)?;
    let lb = b.leading_coeff().expect("nonzero divisor");
    let da = a.degree().expect("nonzero dividend");
    if da < db {
        return Err(Error::NotDivisible);
    }
    let mut q = vec![base.zero(); da - db + 1];
    let mut rem = a.clone();
    while let Some(dr) = rem.degree() {
        if dr < db {
            return Err(Error::NotDivisible);
        }
        let c = rem
            .leading_coeff()
            .expect("nonzero remainder")
            .exact_divide(&lb)
            .map_err(|_| Error::NotDivisible)?;
        q[dr - db] = c.clone();
        let mut shifted = vec![base.zero(); dr - db];
        for bc in b.poly_coeffs().expect("polynomial") {
            shifted.push(bc.mul(&c)?);
        }
        let step = ring.poly_from_coeffs(shifted)?;
        rem = rem.sub(&step)?;
        if rem.degree().is_some_and(|d| d >= dr) {
            unreachable!("leading term cancels");
        }
    }
    ring.poly_from_coeffs(q)
}

/// Division with remainder for polynomials over a field.
fn poly_divmod(a: &Element, b: &Element) -> Result<(Element, Element)> {
    let ring = a.ring.clone();
    let base = match &*ring {
        Ring::Polynomial { base, .. } => base.clone(),
        _ => unreachable!(),
    };
    let db = b.degree().ok_or(Error::NotDivisible)?;
    let lb_inv = b.leading_coeff().expect("nonzero divisor").unit_inverse()?;
    let mut rem = a.clone();
    let qlen = a.degree().map(|da| da.saturating_sub(db) + 1).unwrap_or(0);
    let mut q = vec![base.zero(); qlen.max(1)];
    while let Some(dr) = rem.degree() {
        if dr < db {
            break;
        }
        let c = rem.leading_coeff().expect("nonzero remainder").mul(&lb_inv)?;
        q[dr - db] = c.clone();
        let mut shifted = vec![base.zero(); dr - db];
        for bc in b.poly_coeffs().expect("polynomial") {
            shifted.push(bc.mul(&c)?);
        }
        rem = rem.sub(&ring.poly_from_coeffs(shifted)?)?;
    }
    Ok((ring.poly_from_coeffs(q)?, rem))
}
