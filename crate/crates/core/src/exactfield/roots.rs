use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{Rat, UniPoly};

/// Canonical ordering of roots: by absolute value, positive before negative.
pub fn root_order(a: &Rat, b: &Rat) -> Ordering {
    a.abs().cmp(&b.abs()).then_with(|| b.cmp(a))
}

/// All distinct rational roots of `p`, found with the rational root test.
/// The zero polynomial has no well-defined root set and yields an empty list.
pub fn rational_roots(p: &UniPoly<Rat>) -> Vec<Rat> {
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let mut roots = Vec::new();
    let cs = p.coeffs();
    let shift = cs.iter().position(|c| !c.is_zero()).unwrap_or(0);
    if shift > 0 {
        roots.push(Rat::zero());
    }
    let ints = primitive_integer_coeffs(&cs[shift..]);
    if ints.len() >= 2 {
        let lead = ints.last().unwrap().magnitude().clone();
        let constant = ints[0].magnitude().clone();
        let trimmed = UniPoly::new(cs[shift..].to_vec());
        let dens = divisors(&lead);
        for num in divisors(&constant) {
            for den in &dens {
                if !num.gcd(den).is_one() {
                    continue;
                }
                let cand = Rat::new(BigInt::from(num.clone()), BigInt::from(den.clone()))
                    .expect("divisors are positive");
                for c in [cand.clone(), -cand] {
                    if trimmed.eval(&c).is_zero() {
                        roots.push(c);
                    }
                }
            }
        }
    }
    roots.sort_by(root_order);
    roots.dedup();
    roots
}

/// Scales a nonzero coefficient list to coprime integers.
fn primitive_integer_coeffs(cs: &[Rat]) -> Vec<BigInt> {
    let lcm = cs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = cs.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if content.is_zero() {
        return ints;
    }
    ints.into_iter().map(|c| c / &content).collect()
}

fn divisors(n: &BigUint) -> Vec<BigUint> {
    if n.is_zero() {
        return Vec::new();
    }
    let mut factors: Vec<(BigUint, u32)> = Vec::new();
    let mut rest = n.clone();
    let mut d: u64 = 2;
    loop {
        let dd = BigUint::from(d);
        if &dd * &dd > rest {
            break;
        }
        let mut e = 0;
        while (&rest % &dd).is_zero() {
            rest /= &dd;
            e += 1;
        }
        if e > 0 {
            factors.push((dd, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if !rest.is_one() {
        factors.push((rest, 1));
    }
    let mut divs = vec![BigUint::one()];
    for (p, e) in factors {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for base in &divs {
            let mut acc = base.clone();
            next.push(acc.clone());
            for _ in 0..e {
                acc *= &p;
                next.push(acc.clone());
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}

/// Sanity report on a defining polynomial. Irreducibility is not certified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModulusReport {
    pub squarefree: bool,
    pub rational_roots: Vec<Rat>,
}

impl ModulusReport {
    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.squarefree {
            out.push("modulus is not squarefree".to_string());
        }
        if !self.rational_roots.is_empty() {
            let roots: Vec<String> = self.rational_roots.iter().map(ToString::to_string).collect();
            out.push(format!("modulus has rational roots: {}", roots.join(", ")));
        }
        out
    }

    pub fn is_clean(&self) -> bool {
        self.squarefree && self.rational_roots.is_empty()
    }
}

pub fn check_modulus(m: &UniPoly<Rat>) -> ModulusReport {
    let squarefree = m
        .gcd(&m.derivative())
        .map(|g| g.degree() == Some(0))
        .unwrap_or(false);
    ModulusReport { squarefree, rational_roots: rational_roots(m) }
}
