//! Square-part extraction for big naturals: `n = root^2 * core` with `core`
//! squarefree. Trial division strips small primes; Miller-Rabin and Brent's
//! variant of Pollard rho split what is left.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

const TRIAL_LIMIT: u32 = 2000;

/// Returns `(root, core)` with `n = root^2 * core` and `core` squarefree.
/// `n = 0` yields `(0, 0)`.
pub fn square_decompose(n: &BigUint) -> (BigUint, BigUint) {
    if n.is_zero() {
        return (BigUint::zero(), BigUint::zero());
    }
    let mut root = BigUint::one();
    let mut core = BigUint::one();
    let mut rest = n.clone();

    let mut p = 2u32;
    while p <= TRIAL_LIMIT {
        let bp = BigUint::from(p);
        if &bp * &bp > rest {
            break;
        }
        let mut e = 0u32;
        while (&rest % &bp).is_zero() {
            rest /= &bp;
            e += 1;
        }
        accumulate(&mut root, &mut core, &bp, e);
        p += if p == 2 { 1 } else { 2 };
    }
    if rest.is_one() {
        return (root, core);
    }

    let mut primes = Vec::new();
    split(rest, &mut primes);
    primes.sort();
    let mut i = 0;
    while i < primes.len() {
        let mut j = i;
        while j < primes.len() && primes[j] == primes[i] {
            j += 1;
        }
        accumulate(&mut root, &mut core, &primes[i], (j - i) as u32);
        i = j;
    }
    (root, core)
}

fn accumulate(root: &mut BigUint, core: &mut BigUint, p: &BigUint, e: u32) {
    for _ in 0..e / 2 {
        *root *= p;
    }
    if e % 2 == 1 {
        *core *= p;
    }
}

/// Pushes the prime factors (with multiplicity) of `n > 1`, which has no
/// factors below the trial limit.
fn split(n: BigUint, out: &mut Vec<BigUint>) {
    if n.is_one() {
        return;
    }
    if is_probable_prime(&n) {
        out.push(n);
        return;
    }
    let s = n.sqrt();
    if &s * &s == n {
        split(s.clone(), out);
        split(s, out);
        return;
    }
    let d = find_divisor(&n);
    let other = &n / &d;
    split(d, out);
    split(other, out);
}

fn is_probable_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if n < &two {
        return false;
    }
    for p in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let bp = BigUint::from(p);
        if n == &bp {
            return true;
        }
        if (n % &bp).is_zero() {
            return false;
        }
    }
    let n_minus_1 = n - 1u32;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    // Deterministic below 3.3e24; beyond that a strong probable-prime test
    // with 12 bases.
    'witness: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn find_divisor(n: &BigUint) -> BigUint {
    if n.is_even() {
        return BigUint::from(2u32);
    }
    let mut c = BigUint::one();
    loop {
        if let Some(d) = brent(n, &c) {
            return d;
        }
        c += 1u32;
    }
}

fn brent(n: &BigUint, c: &BigUint) -> Option<BigUint> {
    let f = |x: &BigUint| (x * x + c) % n;
    let m = 128usize;
    let mut y = BigUint::from(2u32);
    let mut r = 1usize;
    let mut q = BigUint::one();
    let mut g = BigUint::one();
    let mut x = y.clone();
    let mut ys = y.clone();
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            for _ in 0..m.min(r - k) {
                y = f(&y);
                let diff = if x > y { &x - &y } else { &y - &x };
                q = (q * diff) % n;
            }
            g = q.gcd(n);
            k += m;
        }
        r *= 2;
        if r > (1 << 26) {
            return None;
        }
    }
    if &g == n {
        loop {
            ys = f(&ys);
            let diff = if x > ys { &x - &ys } else { &ys - &x };
            g = diff.gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    if &g == n {
        None
    } else {
        Some(g)
    }
}

/// Convenience for tests and small inputs.
pub fn squarefree_core_u64(n: u64) -> u64 {
    square_decompose(&BigUint::from(n))
        .1
        .to_u64()
        .expect("core divides n")
}
