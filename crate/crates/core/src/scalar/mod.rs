//! Exact scalars: rationals, Laurent polynomials in `q` (and in formal
//! powers `q^N`), the radical field, and the q-combinatorics built on them.

mod laurent;
mod radical;
pub mod squarefree;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use laurent::{BiLaurent, DeltaQuotient, Laurent, LaurentPoly, TriLaurent};
pub use radical::Radical;

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// A positive rational deformation parameter.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QValue(Rational);

impl QValue {
    pub fn new(q: Rational) -> Result<Self> {
        if !q.is_positive() {
            return Err(Error::domain(format!(
                "q must be a positive rational, got {q}"
            )));
        }
        Ok(QValue(q))
    }

    pub fn one() -> Self {
        QValue(Rational::one())
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    /// `q^e` for any integer `e`.
    pub fn pow(&self, e: i64) -> Rational {
        laurent::rat_pow(&self.0, e)
    }

    /// `[x]_q`, evaluated through the explicit exponent sum.
    pub fn bracket(&self, x: i64) -> Rational {
        qint(x).eval_at(&self.0)
    }

    /// `[x / d]_{q^d} = [x]_q / [d]_q`; the bracket of a `1/d`-integral
    /// argument in the base `q^d`.
    pub fn bracket_scaled(&self, x: i64, d: i64) -> Rational {
        self.bracket(x) / self.bracket(d)
    }

    /// `q + q^{-1} = [2]_q`.
    pub fn sum_inverse(&self) -> Rational {
        self.bracket(2)
    }
}

impl fmt::Display for QValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_rational(&self.0))
    }
}

impl fmt::Debug for QValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QValue({self})")
    }
}

impl FromStr for QValue {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        QValue::new(parse_rational(s)?)
    }
}

/// Parses `p` or `p/s`; decimals are rejected.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || {
        Error::Parse(format!(
            "expected a rational of the form p or p/s, got {s:?}"
        ))
    };
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// Always `p/s`, also for integers.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// `[x]_q = q^{x-1} + q^{x-3} + ... + q^{1-x}`, with `[-x]_q = -[x]_q`.
pub fn qint(x: i64) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    let n = x.abs();
    let sign = if x < 0 {
        -Rational::one()
    } else {
        Rational::one()
    };
    for k in 0..n {
        out = &out + &LaurentPoly::monomial([n - 1 - 2 * k], sign.clone());
    }
    out
}

/// Balanced Gaussian binomial `[m]_q! / ([m-k]_q! [k]_q!)`, via the
/// recurrence `[m;k] = q^{-k}[m-1;k] + q^{m-k}[m-1;k-1]`.
pub fn qbinom(m: i64, k: i64) -> Result<LaurentPoly> {
    if m < 0 || k < 0 || k > m {
        return Err(Error::domain(format!(
            "q-binomial needs 0 <= k <= m, got m={m}, k={k}"
        )));
    }
    let m = m as usize;
    let k = k as usize;
    let mut row = vec![LaurentPoly::one()];
    for mm in 1..=m {
        let mut next = Vec::with_capacity(mm + 1);
        for kk in 0..=mm {
            let mut v = LaurentPoly::zero();
            if kk < mm {
                v = &v + &row[kk].shift([-(kk as i64)]);
            }
            if kk > 0 {
                v = &v + &row[kk - 1].shift([(mm - kk) as i64]);
            }
            next.push(v);
        }
        row = next;
    }
    Ok(row.swap_remove(k))
}

/// Ordinary binomial coefficient as a rational.
pub fn binom(m: i64, k: i64) -> Rational {
    if k < 0 || k > m {
        return Rational::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(m - i) / BigInt::from(i + 1);
    }
    Rational::from_integer(acc)
}

/// `[e_0 + e_1 N_1 + ... ]_q` with `Q_k = q^{N_k}`: the quotient
/// `(q^{e_0} Q^{e} - q^{-e_0} Q^{-e}) / (q - q^{-1})`, reduced when exact.
pub fn sym_bracket<const K: usize>(exps: [i64; K]) -> DeltaQuotient<K> {
    let neg = exps.map(|e| -e);
    let numer =
        &Laurent::monomial(exps, Rational::one()) - &Laurent::monomial(neg, Rational::one());
    DeltaQuotient::new(numer, 1)
}

/// `[z_coeff * N + c]_q` in the ring of `(q, Q = q^N)`.
pub fn qint_sym(c: i64, z_coeff: i64) -> DeltaQuotient<2> {
    sym_bracket([c, z_coeff])
}

/// `sum_{n=0}^{1+a} (-1)^n [1+a; n]_q [N - n z]_q == 0`, for all `q` and `N`.
pub fn check_serre_identity(a: i64, z: i64) -> Result<bool> {
    if a < 1 {
        return Err(Error::domain(format!(
            "Serre identity needs a >= 1, got {a}"
        )));
    }
    let mut acc = DeltaQuotient::<2>::from_laurent(BiLaurent::zero());
    for n in 0..=(1 + a) {
        let sign = if n % 2 == 0 {
            Rational::one()
        } else {
            -Rational::one()
        };
        let coeff = DeltaQuotient::from_laurent(qbinom(1 + a, n)?.scale(&sign).lift::<2>());
        acc = &acc + &(&coeff * &qint_sym(-n * z, 1));
    }
    Ok(acc.is_zero())
}

/// The same sum at `q = 1`, symbolic in `N`:
/// `sum_n (-1)^n C(1+a, n) (N - n z) == 0`.
pub fn check_serre_identity_classical(a: i64, z: i64) -> Result<bool> {
    if a < 1 {
        return Err(Error::domain(format!(
            "Serre identity needs a >= 1, got {a}"
        )));
    }
    let mut n_coeff = Rational::zero();
    let mut constant = Rational::zero();
    for n in 0..=(1 + a) {
        let c = if n % 2 == 0 {
            binom(1 + a, n)
        } else {
            -binom(1 + a, n)
        };
        n_coeff += &c;
        constant += c * int(-n * z);
    }
    Ok(n_coeff.is_zero() && constant.is_zero())
}

/// `[N_i]_q [N_{i+1} + 1]_q - [N_i + 1]_q [N_{i+1}]_q = [N_i - N_{i+1}]_q`.
#[allow(non_snake_case)]
pub fn check_bracket_identity_A() -> bool {
    let lhs = &(&sym_bracket([0, 1, 0]) * &sym_bracket([1, 0, 1]))
        - &(&sym_bracket([1, 1, 0]) * &sym_bracket([0, 0, 1]));
    (&lhs - &sym_bracket([0, 1, -1])).is_zero()
}

/// `[N-1]_q [-N]_q - [N+1]_q [-N-2]_q = [2N+1]_q (q + q^{-1})`.
#[allow(non_snake_case)]
pub fn check_bracket_identity_C() -> bool {
    let lhs = &(&sym_bracket([-1, 1]) * &sym_bracket([0, -1]))
        - &(&sym_bracket([1, 1]) * &sym_bracket([-2, -1]));
    let two = DeltaQuotient::from_laurent(qint(2).lift::<2>());
    let rhs = &sym_bracket([1, 2]) * &two;
    (&lhs - &rhs).is_zero()
}

/// Principal square root of a rational on the fixed branch.
pub fn sqrt_rat(r: &Rational) -> Radical {
    Radical::sqrt_rat(r)
}

/// `[j]_q [j+1]_q` for `j = twice_j / 2`, as a rational at rational `q`.
///
/// For half-integral `j` this is not a Laurent polynomial in `q`, but
/// `(q^{2j+1} + q^{-2j-1} - q - q^{-1}) / (q - q^{-1})^2` is rational; at
/// `q = 1` the value is the limit `j (j + 1)`.
pub fn casimir_value(twice_j: i64, q: &QValue) -> Rational {
    if q.is_one() {
        return rat(twice_j * (twice_j + 2), 4);
    }
    let m = twice_j + 1;
    let numer = q.pow(m) + q.pow(-m) - q.pow(1) - q.pow(-1);
    let delta = q.pow(1) - q.pow(-1);
    numer / (&delta * &delta)
}
