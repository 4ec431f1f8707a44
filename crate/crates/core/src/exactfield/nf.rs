use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::{FieldError, Rat, UniPoly};

/// Monic defining polynomial `m(t)` of a simple extension `Q(θ) = Q[t]/(m)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Modulus {
    poly: UniPoly<Rat>,
}

impl Modulus {
    pub fn new(poly: UniPoly<Rat>) -> Result<Arc<Self>, FieldError> {
        match (poly.degree(), poly.lead()) {
            (Some(d), Some(l)) if d >= 1 && l.is_one() => Ok(Arc::new(Modulus { poly })),
            _ => Err(FieldError::BadModulus(poly.to_string())),
        }
    }

    pub fn poly(&self) -> &UniPoly<Rat> {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.poly.degree().unwrap_or(0)
    }

    /// Remainder of an arbitrary coefficient vector, padded to `degree()`.
    fn reduce(&self, p: &UniPoly<Rat>) -> Vec<Rat> {
        let (_, r) = p.divrem(&self.poly).expect("modulus is monic");
        let mut out = r.coeffs().to_vec();
        out.resize(self.degree(), Rat::zero());
        out
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

/// Element of `Q[t]/(m)`, stored as its remainder of degree `< deg m`.
#[derive(Clone, Debug)]
pub struct NfElem {
    coeffs: Vec<Rat>,
    modulus: Arc<Modulus>,
}

impl PartialEq for NfElem {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
            && (Arc::ptr_eq(&self.modulus, &other.modulus) || self.modulus == other.modulus)
    }
}

impl Eq for NfElem {}

impl Hash for NfElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl NfElem {
    /// Reduces `coeffs` (constant term first, any length) modulo `m`.
    pub fn from_coeffs(coeffs: Vec<Rat>, modulus: &Arc<Modulus>) -> Self {
        let coeffs = modulus.reduce(&UniPoly::new(coeffs));
        NfElem { coeffs, modulus: modulus.clone() }
    }

    pub fn from_rat(r: Rat, modulus: &Arc<Modulus>) -> Self {
        Self::from_coeffs(vec![r], modulus)
    }

    /// The class of `t`.
    pub fn generator(modulus: &Arc<Modulus>) -> Self {
        Self::from_coeffs(vec![Rat::zero(), Rat::one()], modulus)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn modulus(&self) -> &Arc<Modulus> {
        &self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// `Some(r)` when the element lies in the prime field.
    pub fn as_rational(&self) -> Option<Rat> {
        if self.coeffs.iter().skip(1).all(Zero::is_zero) {
            Some(self.coeffs.first().cloned().unwrap_or_else(Rat::zero))
        } else {
            None
        }
    }

    fn as_poly(&self) -> UniPoly<Rat> {
        UniPoly::new(self.coeffs.clone())
    }

    fn same_field(&self, rhs: &NfElem) -> Result<(), FieldError> {
        if Arc::ptr_eq(&self.modulus, &rhs.modulus) || self.modulus == rhs.modulus {
            Ok(())
        } else {
            Err(FieldError::ModulusMismatch)
        }
    }

    pub fn checked_add(&self, rhs: &NfElem) -> Result<NfElem, FieldError> {
        self.same_field(rhs)?;
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect();
        Ok(NfElem { coeffs, modulus: self.modulus.clone() })
    }

    pub fn checked_sub(&self, rhs: &NfElem) -> Result<NfElem, FieldError> {
        self.same_field(rhs)?;
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect();
        Ok(NfElem { coeffs, modulus: self.modulus.clone() })
    }

    pub fn checked_mul(&self, rhs: &NfElem) -> Result<NfElem, FieldError> {
        self.same_field(rhs)?;
        let coeffs = self.modulus.reduce(&self.as_poly().mul(&rhs.as_poly()));
        Ok(NfElem { coeffs, modulus: self.modulus.clone() })
    }

    pub fn neg(&self) -> NfElem {
        NfElem { coeffs: self.coeffs.iter().map(|c| -c).collect(), modulus: self.modulus.clone() }
    }

    /// Ring inverse by extended Euclid against the modulus. A non-constant
    /// gcd means the modulus is reducible and is reported as `NonInvertible`.
    pub fn inv(&self) -> Result<NfElem, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let (g, s) = self.as_poly().gcd_with_cofactor(self.modulus.poly())?;
        if g.degree() != Some(0) {
            return Err(FieldError::NonInvertible { gcd: g.to_string() });
        }
        Ok(NfElem { coeffs: self.modulus.reduce(&s), modulus: self.modulus.clone() })
    }
}

impl fmt::Display for NfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_poly())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sqrt2() -> Arc<Modulus> {
        Modulus::new(UniPoly::new(vec![Rat::from(-2), Rat::zero(), Rat::one()])).unwrap()
    }

    fn el(cs: &[(i64, i64)], m: &Arc<Modulus>) -> NfElem {
        NfElem::from_coeffs(cs.iter().map(|&(n, d)| Rat::new(n, d).unwrap()).collect(), m)
    }

    #[test]
    fn t_times_t_is_two() {
        let m = sqrt2();
        let t = NfElem::generator(&m);
        assert_eq!(t.checked_mul(&t).unwrap(), NfElem::from_rat(Rat::from(2), &m));
    }

    #[test]
    fn inverse_of_t_is_half_t() {
        let m = sqrt2();
        let t = NfElem::generator(&m);
        assert_eq!(t.inv().unwrap(), el(&[(0, 1), (1, 2)], &m));
    }

    #[test]
    fn coefficientwise_add() {
        let m = sqrt2();
        let a = el(&[(1, 1), (1, 1)], &m);
        let b = el(&[(-1, 1), (1, 1)], &m);
        assert_eq!(a.checked_add(&b).unwrap(), el(&[(0, 1), (2, 1)], &m));
    }

    #[test]
    fn reducible_modulus_is_detected_lazily() {
        // t^2 - 1 = (t - 1)(t + 1)
        let m = Modulus::new(UniPoly::new(vec![Rat::from(-1), Rat::zero(), Rat::one()])).unwrap();
        let a = el(&[(-1, 1), (1, 1)], &m);
        assert!(matches!(a.inv(), Err(FieldError::NonInvertible { .. })));
    }

    #[test]
    fn mismatched_moduli() {
        let m1 = sqrt2();
        let m2 = Modulus::new(UniPoly::new(vec![Rat::from(-3), Rat::zero(), Rat::one()])).unwrap();
        let a = NfElem::generator(&m1);
        let b = NfElem::generator(&m2);
        assert_eq!(a.checked_mul(&b), Err(FieldError::ModulusMismatch));
    }

    #[test]
    fn rejects_non_monic_modulus() {
        assert!(Modulus::new(UniPoly::new(vec![Rat::from(1), Rat::from(2)])).is_err());
        assert!(Modulus::new(UniPoly::new(vec![Rat::from(1)])).is_err());
    }
}
