use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::squarefree::square_decompose;
use super::Rational;

/// Exact scalar `sum_m c_m * sqrt(m)` with rational `c_m` and squarefree
/// nonzero integer radicands `m`.
///
/// Negative radicands use the branch `sqrt(m) = i * sqrt(|m|)`, so that
/// `sqrt(m) * sqrt(m) = m` for every `m`. The family `{sqrt(m)}` over
/// squarefree `m` is linearly independent over the rationals, hence a value
/// is zero iff every coefficient is zero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Radical {
    terms: BTreeMap<BigInt, Rational>,
}

impl Radical {
    pub fn zero() -> Self {
        Radical {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(c: Rational) -> Self {
        Self::term(c, BigInt::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(n.into()))
    }

    /// `c * sqrt(m)`; `m` must already be squarefree and nonzero.
    pub fn term(c: Rational, m: BigInt) -> Self {
        debug_assert!(!m.is_zero());
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Radical { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&BigInt::one()).is_some_and(|c| c.is_one())
    }

    /// Radicand -> coefficient, ascending by radicand.
    pub fn terms(&self) -> &BTreeMap<BigInt, Rational> {
        &self.terms
    }

    /// The rational value if the radical part is empty.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&BigInt::one()).cloned(),
            _ => None,
        }
    }

    /// Principal square root under the fixed branch: `c * sqrt(m)` with `m`
    /// squarefree, `c >= 0`, and `(c * sqrt(m))^2 = r`.
    pub fn sqrt_rat(r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        // sqrt(p/s) = sqrt(p*s) / s, decomposing p and s separately.
        let (num_root, num_core) = square_decompose(r.numer().magnitude());
        let (den_root, den_core) = square_decompose(r.denom().magnitude());
        // sqrt(num_core/den_core) = sqrt(num_core*den_core) / den_core
        let g = num_core.gcd(&den_core);
        let a = &num_core / &g;
        let b = &den_core / &g;
        let core = &a * &b;
        let coeff = Rational::new(BigInt::from(num_root), BigInt::from(den_root * b));
        let sign = if r.is_negative() {
            Sign::Minus
        } else {
            Sign::Plus
        };
        Self::term(coeff, BigInt::from_biguint(sign, core))
    }

    /// `sqrt(prod factors)` on the fixed branch, computed factor by factor so
    /// that only the individual factors are ever decomposed.
    pub fn sqrt_product(factors: &[Rational]) -> Self {
        if factors.iter().any(|f| f.is_zero()) {
            return Self::zero();
        }
        let negatives = factors.iter().filter(|f| f.is_negative()).count();
        let mut acc = Self::one();
        for f in factors {
            acc = &acc * &Self::sqrt_rat(f);
        }
        // prod of k imaginary units is i^k; the principal root needs i^(k mod 2).
        if negatives % 4 >= 2 {
            acc = -acc;
        }
        acc
    }

    /// Inverse of a single-term value `c * sqrt(m)`, i.e. `sqrt(m) / (c m)`.
    /// `None` for zero or for sums of several radicals.
    pub fn inverse_monomial(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next()?;
        let denom = c * Rational::from_integer(m.clone());
        Some(Self::term(denom.recip(), m.clone()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Radical {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    fn add_term(&mut self, m: BigInt, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }
}

/// `sqrt(m1) * sqrt(m2) = sign * g * sqrt(m3)` for squarefree `m1, m2`.
fn radicand_product(m1: &BigInt, m2: &BigInt) -> (Rational, BigInt) {
    let g = m1.magnitude().gcd(m2.magnitude());
    let a = m1 / BigInt::from(g.clone());
    let b = m2 / BigInt::from(g.clone());
    let m3 = a * b;
    let mut factor = Rational::from_integer(BigInt::from(g));
    if m1.is_negative() && m2.is_negative() {
        factor = -factor;
    }
    (factor, m3)
}

impl Add for &Radical {
    type Output = Radical;
    fn add(self, rhs: &Radical) -> Radical {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Add for Radical {
    type Output = Radical;
    fn add(self, rhs: Radical) -> Radical {
        &self + &rhs
    }
}

impl AddAssign<&Radical> for Radical {
    fn add_assign(&mut self, rhs: &Radical) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl Neg for &Radical {
    type Output = Radical;
    fn neg(self) -> Radical {
        Radical {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Radical {
    type Output = Radical;
    fn neg(self) -> Radical {
        -&self
    }
}

impl Sub for &Radical {
    type Output = Radical;
    fn sub(self, rhs: &Radical) -> Radical {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Sub for Radical {
    type Output = Radical;
    fn sub(self, rhs: Radical) -> Radical {
        &self - &rhs
    }
}

impl Mul for &Radical {
    type Output = Radical;
    fn mul(self, rhs: &Radical) -> Radical {
        let mut out = Radical::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let (factor, m3) = radicand_product(m1, m2);
                out.add_term(m3, c1 * c2 * factor);
            }
        }
        out
    }
}

impl Mul for Radical {
    type Output = Radical;
    fn mul(self, rhs: Radical) -> Radical {
        &self * &rhs
    }
}

impl From<Rational> for Radical {
    fn from(c: Rational) -> Self {
        Radical::from_rational(c)
    }
}

/// Renders as `c` for the rational part and `c*sqrt(m)` otherwise, joined
/// by ` + `, radicands ascending.
impl fmt::Display for Radical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                if m.is_one() {
                    format!("{c}")
                } else {
                    format!("{c}*sqrt({m})")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for Radical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Radical({self})")
    }
}
