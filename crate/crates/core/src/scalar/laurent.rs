use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::Rational;

/// Laurent polynomial with rational coefficients in `K` variables.
///
/// Variable 0 is always `q`. Further variables stand for formal powers
/// `q^N`, one per symbolic operator argument. Exponent vectors are stored
/// in a `BTreeMap`, zero coefficients are never stored, so equality is
/// structural.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Laurent<const K: usize> {
    terms: BTreeMap<[i64; K], Rational>,
}

/// Univariate Laurent polynomial in `q`.
pub type LaurentPoly = Laurent<1>;
/// Laurent polynomial in `q` and `Q = q^N`.
pub type BiLaurent = Laurent<2>;
/// Laurent polynomial in `q`, `Q1 = q^{N_1}`, `Q2 = q^{N_2}`.
pub type TriLaurent = Laurent<3>;

impl<const K: usize> Laurent<K> {
    pub fn zero() -> Self {
        Laurent {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial([0; K], c)
    }

    pub fn monomial(exps: [i64; K], coeff: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exps, coeff);
        }
        Laurent { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[i64; K], &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[i64; K]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    fn add_term(&mut self, exps: [i64; K], coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps).or_insert_with(Rational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Laurent {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    /// Multiplies by the monomial `q^{shift[0]} Q1^{shift[1]} ...`.
    pub fn shift(&self, shift: [i64; K]) -> Self {
        Laurent {
            terms: self
                .terms
                .iter()
                .map(|(e, v)| {
                    let mut out = *e;
                    for (o, s) in out.iter_mut().zip(shift.iter()) {
                        *o += s;
                    }
                    (out, v.clone())
                })
                .collect(),
        }
    }

    /// Evaluates at a point with every coordinate nonzero.
    pub fn eval(&self, point: &[Rational; K]) -> Rational {
        self.terms
            .iter()
            .map(|(exps, c)| {
                exps.iter()
                    .zip(point.iter())
                    .fold(c.clone(), |acc, (e, x)| acc * rat_pow(x, *e))
            })
            .fold(Rational::zero(), |a, b| a + b)
    }

    /// Exact division by `q - q^{-1}` (in variable 0). `None` if not divisible.
    pub fn div_delta(&self) -> Option<Self> {
        // P / (q - 1/q) = q P / (q^2 - 1); divide each q-slice by q^2 - 1.
        let mut slices: BTreeMap<[i64; K], BTreeMap<i64, Rational>> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut rest = *e;
            rest[0] = 0;
            slices.entry(rest).or_default().insert(e[0] + 1, c.clone());
        }
        let mut out = Self::zero();
        for (rest, mut slice) in slices {
            while let Some((&top, _)) = slice.iter().next_back() {
                let lo = *slice.keys().next().unwrap();
                if top - lo < 2 {
                    return None;
                }
                let c = slice.remove(&top).unwrap();
                let mut exps = rest;
                exps[0] = top - 2;
                out.add_term(exps, c.clone());
                let below = slice.entry(top - 2).or_insert_with(Rational::zero);
                *below += c;
                if below.is_zero() {
                    slice.remove(&(top - 2));
                }
            }
        }
        Some(out)
    }

    /// Embeds into a Laurent ring with more variables (new exponents zero).
    pub fn lift<const M: usize>(&self) -> Laurent<M> {
        assert!(M >= K, "cannot lift into fewer variables");
        let mut out = Laurent::<M>::zero();
        for (e, c) in &self.terms {
            let mut exps = [0; M];
            exps[..K].copy_from_slice(e);
            out.add_term(exps, c.clone());
        }
        out
    }

    /// Substitutes `Q_k = q^{powers[k-1]}` for every formal variable,
    /// leaving a univariate polynomial in `q`.
    pub fn specialize(&self, powers: &[i64]) -> LaurentPoly {
        assert_eq!(powers.len() + 1, K, "one power per formal variable");
        let mut out = LaurentPoly::zero();
        for (e, c) in &self.terms {
            let exp = e[0] + e[1..].iter().zip(powers).map(|(a, b)| a * b).sum::<i64>();
            out.add_term([exp], c.clone());
        }
        out
    }
}

impl LaurentPoly {
    /// Value at `q`, which must be nonzero.
    pub fn eval_at(&self, q: &Rational) -> Rational {
        self.eval(&[q.clone()])
    }

    pub fn degree_range(&self) -> Option<(i64, i64)> {
        let lo = self.terms.keys().next()?[0];
        let hi = self.terms.keys().next_back()?[0];
        Some((lo, hi))
    }
}

pub(crate) fn rat_pow(x: &Rational, e: i64) -> Rational {
    let base = if e < 0 { x.recip() } else { x.clone() };
    let mut acc = Rational::one();
    let mut b = base;
    let mut n = e.unsigned_abs();
    while n > 0 {
        if n & 1 == 1 {
            acc *= &b;
        }
        b = &b * &b;
        n >>= 1;
    }
    acc
}

impl<const K: usize> Add for &Laurent<K> {
    type Output = Laurent<K>;
    fn add(self, rhs: &Laurent<K>) -> Laurent<K> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl<const K: usize> Add for Laurent<K> {
    type Output = Laurent<K>;
    fn add(self, rhs: Laurent<K>) -> Laurent<K> {
        &self + &rhs
    }
}

impl<const K: usize> Neg for &Laurent<K> {
    type Output = Laurent<K>;
    fn neg(self) -> Laurent<K> {
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl<const K: usize> Neg for Laurent<K> {
    type Output = Laurent<K>;
    fn neg(self) -> Laurent<K> {
        -&self
    }
}

impl<const K: usize> Sub for &Laurent<K> {
    type Output = Laurent<K>;
    fn sub(self, rhs: &Laurent<K>) -> Laurent<K> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl<const K: usize> Sub for Laurent<K> {
    type Output = Laurent<K>;
    fn sub(self, rhs: Laurent<K>) -> Laurent<K> {
        &self - &rhs
    }
}

impl<const K: usize> Mul for &Laurent<K> {
    type Output = Laurent<K>;
    fn mul(self, rhs: &Laurent<K>) -> Laurent<K> {
        let mut out = Laurent::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let mut e = *ea;
                for (x, y) in e.iter_mut().zip(eb.iter()) {
                    *x += y;
                }
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl<const K: usize> Mul for Laurent<K> {
    type Output = Laurent<K>;
    fn mul(self, rhs: Laurent<K>) -> Laurent<K> {
        &self * &rhs
    }
}

const VAR_NAMES: [&str; 4] = ["q", "Q1", "Q2", "Q3"];

impl<const K: usize> fmt::Display for Laurent<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (exps, c)) in self.terms.iter().rev().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if idx == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let abs = c.abs();
            let mono: Vec<String> = exps
                .iter()
                .enumerate()
                .filter(|(_, e)| **e != 0)
                .map(|(v, e)| {
                    let name = VAR_NAMES.get(v).copied().unwrap_or("Q?");
                    if *e == 1 {
                        name.to_string()
                    } else {
                        format!("{name}^{e}")
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{abs}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl<const K: usize> fmt::Debug for Laurent<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Laurent({self})")
    }
}

/// `numer / (q - q^{-1})^delta_pow`.
///
/// q-brackets with a symbolic argument `[N + c]_q` are not Laurent
/// polynomials, but their numerators are; identities among them are decided
/// by clearing the common power of `q - q^{-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaQuotient<const K: usize> {
    numer: Laurent<K>,
    delta_pow: u32,
}

impl<const K: usize> DeltaQuotient<K> {
    pub fn new(numer: Laurent<K>, delta_pow: u32) -> Self {
        DeltaQuotient { numer, delta_pow }.reduced()
    }

    pub fn from_laurent(p: Laurent<K>) -> Self {
        DeltaQuotient {
            numer: p,
            delta_pow: 0,
        }
    }

    pub fn numer(&self) -> &Laurent<K> {
        &self.numer
    }

    pub fn delta_pow(&self) -> u32 {
        self.delta_pow
    }

    pub fn is_zero(&self) -> bool {
        self.numer.is_zero()
    }

    fn reduced(mut self) -> Self {
        if self.numer.is_zero() {
            self.delta_pow = 0;
            return self;
        }
        while self.delta_pow > 0 {
            match self.numer.div_delta() {
                Some(p) => {
                    self.numer = p;
                    self.delta_pow -= 1;
                }
                None => break,
            }
        }
        self
    }

    /// Laurent polynomial value, when the quotient is exact.
    pub fn to_laurent(&self) -> Option<Laurent<K>> {
        (self.delta_pow == 0).then(|| self.numer.clone())
    }

    fn raised_to(&self, pow: u32) -> Laurent<K> {
        let delta = delta::<K>();
        let mut p = self.numer.clone();
        for _ in self.delta_pow..pow {
            p = &p * &delta;
        }
        p
    }

    /// Substitutes `Q_k = q^{powers[k-1]}` and performs the (then exact)
    /// division by `(q - q^{-1})^delta_pow`.
    pub fn specialize(&self, powers: &[i64]) -> LaurentPoly {
        let mut p = self.numer.specialize(powers);
        for _ in 0..self.delta_pow {
            p = p
                .div_delta()
                .expect("specialized bracket numerators are divisible by q - 1/q");
        }
        p
    }
}

fn delta<const K: usize>() -> Laurent<K> {
    let mut up = [0; K];
    up[0] = 1;
    let mut down = [0; K];
    down[0] = -1;
    &Laurent::monomial(up, Rational::one()) - &Laurent::monomial(down, Rational::one())
}

impl<const K: usize> Add for &DeltaQuotient<K> {
    type Output = DeltaQuotient<K>;
    fn add(self, rhs: &DeltaQuotient<K>) -> DeltaQuotient<K> {
        let pow = self.delta_pow.max(rhs.delta_pow);
        DeltaQuotient::new(&self.raised_to(pow) + &rhs.raised_to(pow), pow)
    }
}

impl<const K: usize> Sub for &DeltaQuotient<K> {
    type Output = DeltaQuotient<K>;
    fn sub(self, rhs: &DeltaQuotient<K>) -> DeltaQuotient<K> {
        let pow = self.delta_pow.max(rhs.delta_pow);
        DeltaQuotient::new(&self.raised_to(pow) - &rhs.raised_to(pow), pow)
    }
}

impl<const K: usize> Mul for &DeltaQuotient<K> {
    type Output = DeltaQuotient<K>;
    fn mul(self, rhs: &DeltaQuotient<K>) -> DeltaQuotient<K> {
        DeltaQuotient::new(&self.numer * &rhs.numer, self.delta_pow + rhs.delta_pow)
    }
}

impl<const K: usize> Add for DeltaQuotient<K> {
    type Output = DeltaQuotient<K>;
    fn add(self, rhs: DeltaQuotient<K>) -> DeltaQuotient<K> {
        &self + &rhs
    }
}

impl<const K: usize> Sub for DeltaQuotient<K> {
    type Output = DeltaQuotient<K>;
    fn sub(self, rhs: DeltaQuotient<K>) -> DeltaQuotient<K> {
        &self - &rhs
    }
}

impl<const K: usize> Mul for DeltaQuotient<K> {
    type Output = DeltaQuotient<K>;
    fn mul(self, rhs: DeltaQuotient<K>) -> DeltaQuotient<K> {
        &self * &rhs
    }
}
