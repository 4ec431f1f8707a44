//! Exact scalars: rationals and elements of one simple extension `Q(θ)`.
//!
//! A computation session fixes its [`Field`] up front. [`FieldElem`] keeps a
//! canonical form: an extension element whose `t`-part vanishes is stored as
//! a plain rational, so structural equality is field equality and zero/one
//! are field independent.

mod nf;
mod rat;
mod roots;
mod upoly;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};
use thiserror::Error;

pub use nf::{Modulus, NfElem};
pub use rat::Rat;
pub use roots::{check_modulus, rational_roots, root_order, ModulusReport};
pub use upoly::UniPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("element is not invertible modulo the defining polynomial (gcd = {gcd}); the modulus is reducible")]
    NonInvertible { gcd: String },
    #[error("operands belong to different extension fields")]
    ModulusMismatch,
    #[error("defining polynomial must be monic of degree >= 1, got {0}")]
    BadModulus(String),
    #[error("malformed scalar literal `{0}`")]
    BadLiteral(String),
}

/// Field operations shared by [`Rat`] and [`FieldElem`].
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Sub<Output = Self>
    + Neg<Output = Self>
{
    fn inv(&self) -> Result<Self, FieldError>;
}

impl Scalar for Rat {
    fn inv(&self) -> Result<Self, FieldError> {
        Rat::inv(self)
    }
}

/// Scalar of the session field.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum FieldElem {
    Rat(Rat),
    Nf(NfElem),
}

impl FieldElem {
    pub fn from_nf(x: NfElem) -> Self {
        match x.as_rational() {
            Some(r) => FieldElem::Rat(r),
            None => FieldElem::Nf(x),
        }
    }

    pub fn from_integer(n: i64) -> Self {
        FieldElem::Rat(Rat::from(n))
    }

    pub fn as_rat(&self) -> Option<&Rat> {
        match self {
            FieldElem::Rat(r) => Some(r),
            FieldElem::Nf(_) => None,
        }
    }

    fn lift_pair(a: &FieldElem, b: &FieldElem) -> Option<(NfElem, NfElem)> {
        match (a, b) {
            (FieldElem::Nf(x), FieldElem::Nf(y)) => Some((x.clone(), y.clone())),
            (FieldElem::Nf(x), FieldElem::Rat(r)) => Some((x.clone(), NfElem::from_rat(r.clone(), x.modulus()))),
            (FieldElem::Rat(r), FieldElem::Nf(y)) => Some((NfElem::from_rat(r.clone(), y.modulus()), y.clone())),
            _ => None,
        }
    }

    pub fn checked_add(&self, rhs: &FieldElem) -> Result<FieldElem, FieldError> {
        match Self::lift_pair(self, rhs) {
            None => Ok(FieldElem::Rat(self.as_rat().unwrap() + rhs.as_rat().unwrap())),
            Some((a, b)) => Ok(Self::from_nf(a.checked_add(&b)?)),
        }
    }

    pub fn checked_sub(&self, rhs: &FieldElem) -> Result<FieldElem, FieldError> {
        match Self::lift_pair(self, rhs) {
            None => Ok(FieldElem::Rat(self.as_rat().unwrap() - rhs.as_rat().unwrap())),
            Some((a, b)) => Ok(Self::from_nf(a.checked_sub(&b)?)),
        }
    }

    pub fn checked_mul(&self, rhs: &FieldElem) -> Result<FieldElem, FieldError> {
        match (self, rhs) {
            (FieldElem::Rat(a), FieldElem::Rat(b)) => Ok(FieldElem::Rat(a * b)),
            (FieldElem::Rat(r), FieldElem::Nf(x)) | (FieldElem::Nf(x), FieldElem::Rat(r)) => {
                if r.is_zero() {
                    return Ok(FieldElem::zero());
                }
                let coeffs = x.coeffs().iter().map(|c| c * r).collect();
                Ok(Self::from_nf(NfElem::from_coeffs(coeffs, x.modulus())))
            }
            (FieldElem::Nf(a), FieldElem::Nf(b)) => Ok(Self::from_nf(a.checked_mul(b)?)),
        }
    }

    pub fn checked_div(&self, rhs: &FieldElem) -> Result<FieldElem, FieldError> {
        self.checked_mul(&rhs.inv()?)
    }

    pub fn inv(&self) -> Result<FieldElem, FieldError> {
        match self {
            FieldElem::Rat(r) => Ok(FieldElem::Rat(r.inv()?)),
            FieldElem::Nf(x) => Ok(Self::from_nf(x.inv()?)),
        }
    }

    pub fn pow(&self, e: u32) -> FieldElem {
        let mut acc = FieldElem::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// True for `-c` style scalars that print with a leading minus sign.
    pub fn is_negative_rational(&self) -> bool {
        matches!(self, FieldElem::Rat(r) if r.is_negative())
    }
}

impl From<Rat> for FieldElem {
    fn from(r: Rat) -> Self {
        FieldElem::Rat(r)
    }
}

impl From<NfElem> for FieldElem {
    fn from(x: NfElem) -> Self {
        FieldElem::from_nf(x)
    }
}

impl Zero for FieldElem {
    fn zero() -> Self {
        FieldElem::Rat(Rat::zero())
    }
    fn is_zero(&self) -> bool {
        matches!(self, FieldElem::Rat(r) if r.is_zero())
    }
}

impl One for FieldElem {
    fn one() -> Self {
        FieldElem::Rat(Rat::one())
    }
}

// Operator forms panic on mixed extension fields; a session never mixes
// them. The `checked_*` methods report `ModulusMismatch` instead.
macro_rules! fe_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<'a> $trait<&'a FieldElem> for &'a FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: &'a FieldElem) -> FieldElem {
                self.$checked(rhs).expect("mixed-field arithmetic")
            }
        }
        impl<'a> $trait<&'a FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: &'a FieldElem) -> FieldElem {
                (&self).$method(rhs)
            }
        }
        impl $trait<FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: FieldElem) -> FieldElem {
                (&self).$method(&rhs)
            }
        }
    };
}

fe_binop!(Add, add, checked_add);
fe_binop!(Sub, sub, checked_sub);
fe_binop!(Mul, mul, checked_mul);

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        -&self
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        match self {
            FieldElem::Rat(r) => FieldElem::Rat(-r),
            FieldElem::Nf(x) => FieldElem::Nf(x.neg()),
        }
    }
}

impl Scalar for FieldElem {
    fn inv(&self) -> Result<Self, FieldError> {
        FieldElem::inv(self)
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElem::Rat(r) => write!(f, "{r}"),
            FieldElem::Nf(x) => write!(f, "{x}"),
        }
    }
}

/// The coefficient field of a session.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum Field {
    #[default]
    Rational,
    Extension(Arc<Modulus>),
}

impl Field {
    pub fn extension(m: UniPoly<Rat>) -> Result<Self, FieldError> {
        Ok(Field::Extension(Modulus::new(m)?))
    }

    /// The class of `t`, if the field is an extension.
    pub fn generator(&self) -> Option<FieldElem> {
        match self {
            Field::Rational => None,
            Field::Extension(m) => Some(FieldElem::from_nf(NfElem::generator(m))),
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            Field::Rational => 1,
            Field::Extension(m) => m.degree(),
        }
    }

    pub fn modulus(&self) -> Option<&Arc<Modulus>> {
        match self {
            Field::Rational => None,
            Field::Extension(m) => Some(m),
        }
    }

    pub fn contains(&self, x: &FieldElem) -> bool {
        match (self, x) {
            (_, FieldElem::Rat(_)) => true,
            (Field::Rational, FieldElem::Nf(_)) => false,
            (Field::Extension(m), FieldElem::Nf(y)) => **m == **y.modulus(),
        }
    }

    /// `Q(θ)` for the first extension element in `elems`, else `Q`.
    pub fn spanned_by<'a>(elems: impl IntoIterator<Item = &'a FieldElem>) -> Field {
        elems
            .into_iter()
            .find_map(|x| match x {
                FieldElem::Nf(y) => Some(Field::Extension(y.modulus().clone())),
                FieldElem::Rat(_) => None,
            })
            .unwrap_or(Field::Rational)
    }

    /// Builds `Σ coeffs[i] θ^i`.
    pub fn element(&self, coeffs: Vec<Rat>) -> FieldElem {
        match self {
            Field::Rational => FieldElem::Rat(coeffs.into_iter().next().unwrap_or_else(Rat::zero)),
            Field::Extension(m) => FieldElem::from_nf(NfElem::from_coeffs(coeffs, m)),
        }
    }

    /// Coordinates of `x` on the power basis `1, θ, …, θ^(d-1)`.
    pub fn coordinates(&self, x: &FieldElem) -> Vec<Rat> {
        let mut out = match x {
            FieldElem::Rat(r) => vec![r.clone()],
            FieldElem::Nf(y) => y.coeffs().to_vec(),
        };
        out.resize(self.degree(), Rat::zero());
        out
    }

    pub fn check(&self) -> Option<ModulusReport> {
        self.modulus().map(|m| check_modulus(m.poly()))
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => f.write_str("Q"),
            Field::Extension(m) => write!(f, "Q(t)/{m}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sqrt2_field() -> Field {
        Field::extension(UniPoly::new(vec![Rat::from(-2), Rat::zero(), Rat::one()])).unwrap()
    }

    #[test]
    fn extension_elements_collapse_to_rationals() {
        let f = sqrt2_field();
        let t = f.generator().unwrap();
        assert_eq!(&t * &t, FieldElem::from_integer(2));
        assert!(matches!(&t * &t, FieldElem::Rat(_)));
        assert_eq!(&t - &t, FieldElem::zero());
    }

    #[test]
    fn mixed_rational_and_extension() {
        let f = sqrt2_field();
        let t = f.generator().unwrap();
        let half = FieldElem::Rat(Rat::new(1, 2).unwrap());
        assert_eq!(t.inv().unwrap(), &half * &t);
        assert_eq!((&t + &FieldElem::one()).to_string(), "t + 1");
        assert_eq!(f.to_string(), "Q(t)/t^2 - 2");
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(FieldElem::one().checked_div(&FieldElem::zero()), Err(FieldError::DivisionByZero));
    }

    fn field_elem() -> impl Strategy<Value = FieldElem> {
        (-20i64..20, 1i64..8, -20i64..20, 1i64..8).prop_map(|(a, b, c, d)| {
            sqrt2_field().element(vec![Rat::new(a, b).unwrap(), Rat::new(c, d).unwrap()])
        })
    }

    fn rat() -> impl Strategy<Value = Rat> {
        (-1000i64..1000, 1i64..100).prop_map(|(a, b)| Rat::new(a, b).unwrap())
    }

    proptest! {
        #[test]
        fn nf_field_axioms(a in field_elem(), b in field_elem(), c in field_elem()) {
            prop_assert_eq!((&a + &b) + c.clone(), &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            if !a.is_zero() {
                prop_assert_eq!(&a * &a.inv().unwrap(), FieldElem::one());
            }
        }

        #[test]
        fn rat_normalization_is_canonical(a in -500i64..500, b in 1i64..50, k in 1i64..20) {
            let x = Rat::new(a, b).unwrap();
            let y = Rat::new(a * k, b * k).unwrap();
            prop_assert_eq!(x.to_string(), y.to_string());
            prop_assert_eq!(x.clone(), y);
            prop_assert_eq!(x.to_string().parse::<Rat>().unwrap(), x);
        }

        #[test]
        fn rat_field_axioms(a in rat(), b in rat(), c in rat()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            if !a.is_zero() {
                prop_assert_eq!(&a * &a.inv().unwrap(), Rat::one());
            }
        }
    }
}
