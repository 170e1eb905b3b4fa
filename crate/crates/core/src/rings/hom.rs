//! The ring homomorphisms used by the calculus: evaluation, residue maps,
//! localization, and the four structural maps of excision and double rings.

use std::sync::Arc;

use num_traits::Signed;

use super::{Element, Ring, RingRef};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HomKind {
    /// `base[X] -> base`, `X` goes to the stored point.
    EvalAt { point: Element },
    /// Reduction onto the residue ring of the stored modulus.
    ResidueMod { modulus: Element },
    /// `base -> base` localized at a denominator.
    LocalizationInclusion,
    /// Excision algebra onto its base: `(r, i)` goes to `r + i`.
    ProjectPi,
    /// Excision algebra onto its base: `(r, i)` goes to `r`.
    BarSplit,
    /// Base into the excision algebra: `r` goes to `(r, 0)`.
    CanonicalInclusion,
    /// Excision algebra into the double ring: `(r, i)` goes to `(r, r + i)`.
    DoubleU,
    /// Double ring onto the excision algebra: `(x, y)` goes to `(x, y - x)`.
    DoubleV,
}

/// A homomorphism with explicit source and target descriptors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingHom {
    kind: HomKind,
    source: RingRef,
    target: RingRef,
}

impl RingHom {
    pub fn eval_at(source: &RingRef, point: Element) -> Result<RingHom> {
        let base = match &**source {
            Ring::Polynomial { base, .. } => base.clone(),
            _ => return Err(Error::DescriptorMismatch("evaluation needs a polynomial ring".into())),
        };
        if **point.ring() != *base {
            return Err(Error::DescriptorMismatch("evaluation point outside base ring".into()));
        }
        Ok(RingHom { kind: HomKind::EvalAt { point }, source: source.clone(), target: base })
    }

    /// Reduction modulo an element of the source, when the residue ring is
    /// representable: integers and modular integers onto modular integers,
    /// polynomials over a field onto the Euclidean quotient.
    pub fn residue_mod(source: &RingRef, modulus: Element) -> Result<RingHom> {
        if **modulus.ring() != **source {
            return Err(Error::DescriptorMismatch("modulus outside source ring".into()));
        }
        let target = match &**source {
            Ring::Integers => {
                let m = modulus.as_bigint().expect("integer").abs();
                let m: u64 = match u64::try_from(&m) {
                    Ok(v) if v >= 2 => v,
                    Ok(_) => return Err(Error::QuotientNotComputable),
                    Err(_) => {
                        return Err(Error::Unsupported("residue modulus too large".into()))
                    }
                };
                Ring::integers_mod(m)?
            }
            Ring::IntegersMod { modulus: n } => {
                let g = gcd_u64(modulus.as_residue().expect("residue"), *n);
                if g < 2 {
                    return Err(Error::QuotientNotComputable);
                }
                Ring::integers_mod(g)?
            }
            Ring::Polynomial { base, .. } if base.is_field() => {
                Ring::quotient_euclidean(source, modulus.clone())?
            }
            _ => return Err(Error::QuotientNotComputable),
        };
        Ok(RingHom { kind: HomKind::ResidueMod { modulus }, source: source.clone(), target })
    }

    pub fn localization_inclusion(target: &RingRef) -> Result<RingHom> {
        let base = match &**target {
            Ring::Localized { base, .. } => base.clone(),
            _ => return Err(Error::DescriptorMismatch("target is not a localization".into())),
        };
        Ok(RingHom { kind: HomKind::LocalizationInclusion, source: base, target: target.clone() })
    }

    pub fn project_pi(source: &RingRef) -> Result<RingHom> {
        let base = excision_base(source)?;
        Ok(RingHom { kind: HomKind::ProjectPi, source: source.clone(), target: base })
    }

    pub fn bar_split(source: &RingRef) -> Result<RingHom> {
        let base = excision_base(source)?;
        Ok(RingHom { kind: HomKind::BarSplit, source: source.clone(), target: base })
    }

    pub fn canonical_inclusion(target: &RingRef) -> Result<RingHom> {
        let base = excision_base(target)?;
        Ok(RingHom { kind: HomKind::CanonicalInclusion, source: base, target: target.clone() })
    }

    pub fn double_u(source: &RingRef) -> Result<RingHom> {
        let (base, ideal) = match &**source {
            Ring::Excision { base, ideal } => (base.clone(), ideal.clone()),
            _ => return Err(Error::DescriptorMismatch("source is not an excision algebra".into())),
        };
        let target = Ring::double(&base, ideal)?;
        Ok(RingHom { kind: HomKind::DoubleU, source: source.clone(), target })
    }

    pub fn double_v(source: &RingRef) -> Result<RingHom> {
        let (base, ideal) = match &**source {
            Ring::Double { base, ideal } => (base.clone(), ideal.clone()),
            _ => return Err(Error::DescriptorMismatch("source is not a double ring".into())),
        };
        let target = Ring::excision(&base, ideal)?;
        Ok(RingHom { kind: HomKind::DoubleV, source: source.clone(), target })
    }

    pub fn kind(&self) -> &HomKind {
        &self.kind
    }

    pub fn source(&self) -> &RingRef {
        &self.source
    }

    pub fn target(&self) -> &RingRef {
        &self.target
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        if !Arc::ptr_eq(x.ring(), &self.source) && **x.ring() != *self.source {
            return Err(Error::DescriptorMismatch(format!(
                "element of {} fed to a map from {}",
                x.ring(),
                self.source
            )));
        }
        match &self.kind {
            HomKind::EvalAt { point } => {
                let cs = x.poly_coeffs().expect("polynomial");
                let mut acc = self.target.zero();
                for c in cs.iter().rev() {
                    acc = acc.mul(point)?.add(c)?;
                }
                Ok(acc)
            }
            HomKind::ResidueMod { .. } => match &*self.target {
                Ring::IntegersMod { .. } => {
                    let lift = match (x.as_bigint(), x.as_residue()) {
                        (Some(n), _) => n.clone(),
                        (None, Some(r)) => r.into(),
                        _ => unreachable!("integer-like source"),
                    };
                    Ok(self.target.from_bigint(lift))
                }
                Ring::QuotientEuclidean { .. } => self.target.quot_elem(x.clone()),
                _ => unreachable!("constructor fixed the target"),
            },
            HomKind::LocalizationInclusion => self.target.localized_elem(x.clone(), 0),
            HomKind::ProjectPi => {
                let (r, i) = x.pair_parts().expect("excision pair");
                r.add(i)
            }
            HomKind::BarSplit => Ok(x.pair_parts().expect("excision pair").0.clone()),
            HomKind::CanonicalInclusion => {
                let base = excision_base(&self.target)?;
                Ok(self.target.pair_unchecked(x.clone(), base.zero()))
            }
            HomKind::DoubleU => {
                let (r, i) = x.pair_parts().expect("excision pair");
                Ok(self.target.pair_unchecked(r.clone(), r.add(i)?))
            }
            HomKind::DoubleV => {
                let (a, b) = x.pair_parts().expect("double pair");
                Ok(self.target.pair_unchecked(a.clone(), b.sub(a)?))
            }
        }
    }
}

fn excision_base(ring: &RingRef) -> Result<RingRef> {
    match &**ring {
        Ring::Excision { base, .. } => Ok(base.clone()),
        _ => Err(Error::DescriptorMismatch("not an excision algebra".into())),
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
