//! Integer factorization for divisor enumeration (rational-root candidates).
//!
//! Trial division for small primes, then Miller-Rabin + Pollard's rho for the
//! rest. Inputs here are trailing coefficients of moderate polynomials, so
//! this does not need to be state of the art.

use num::{BigInt, BigUint, Integer, One, Zero};

fn miller_rabin(n: &BigUint, a: u64) -> bool {
    // returns true when n passes the base-a test (probably prime)
    let one = BigUint::one();
    let two = &one + &one;
    let a = BigUint::from(a) % n;
    if a.is_zero() {
        return true;
    }
    let n_minus_1 = n - &one;
    let mut d = n_minus_1.clone();
    let mut s = 0u32;
    while d.is_even() {
        d /= &two;
        s += 1;
    }
    let mut x = a.modpow(&d, n);
    if x == one || x == n_minus_1 {
        return true;
    }
    for _ in 1..s {
        x = x.modpow(&two, n);
        if x == n_minus_1 {
            return true;
        }
    }
    false
}

fn is_prime(n: &BigUint) -> bool {
    let small: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &small {
        let bp = BigUint::from(p);
        if *n == bp {
            return true;
        }
        if (n % bp).is_zero() {
            return false;
        }
    }
    if n < &BigUint::from(41u64) {
        return false;
    }
    // deterministic for n < 3.3 * 10^24 with these bases
    small.iter().all(|&a| miller_rabin(n, a))
}

fn pollard_rho(n: &BigUint) -> BigUint {
    // n must be composite and odd
    let one = BigUint::one();
    let mut c = BigUint::one();
    loop {
        let mut x = BigUint::from(2u64);
        let mut y = BigUint::from(2u64);
        let mut d = BigUint::one();
        let f = |v: &BigUint| (v * v + &c) % n;
        while d.is_one() {
            x = f(&x);
            y = f(&f(&y));
            let diff = if x > y { &x - &y } else { &y - &x };
            if diff.is_zero() {
                break;
            }
            d = diff.gcd(n);
        }
        if !d.is_one() && d != *n {
            return d;
        }
        c += &one;
    }
}

fn factorize(n: &BigUint, out: &mut Vec<(BigUint, u32)>) {
    if n.is_one() {
        return;
    }
    if is_prime(n) {
        push_factor(out, n.clone());
        return;
    }
    let mut m = n.clone();
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        let bp = BigUint::from(p);
        while (&m % &bp).is_zero() {
            push_factor(out, bp.clone());
            m /= &bp;
        }
        if m.is_one() {
            return;
        }
    }
    if is_prime(&m) {
        push_factor(out, m);
        return;
    }
    let d = pollard_rho(&m);
    let q = &m / &d;
    factorize(&d, out);
    factorize(&q, out);
}

fn push_factor(out: &mut Vec<(BigUint, u32)>, p: BigUint) {
    for (q, e) in out.iter_mut() {
        if *q == p {
            *e += 1;
            return;
        }
    }
    out.push((p, 1));
}

/// All positive divisors of |n|; n must be nonzero.
pub fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mag = n.magnitude().clone();
    assert!(!mag.is_zero(), "divisors of zero");
    let mut factors = Vec::new();
    factorize(&mag, &mut factors);
    let mut divs: Vec<BigUint> = vec![BigUint::one()];
    for (p, e) in &factors {
        let mut next = Vec::with_capacity(divs.len() * (*e as usize + 1));
        for d in &divs {
            let mut acc = d.clone();
            next.push(acc.clone());
            for _ in 0..*e {
                acc *= p;
                next.push(acc.clone());
            }
        }
        divs = next;
    }
    divs.sort();
    divs.dedup();
    divs.into_iter().map(BigInt::from).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisors_of_12() {
        let d = divisors(&BigInt::from(12));
        let vals: Vec<i64> = d.iter().map(|x| i64::try_from(x).unwrap()).collect();
        assert_eq!(vals, vec![1, 2, 3, 4, 6, 12]);
    }

    #[test]
    fn divisors_of_large_semiprime() {
        // 1000003 * 1000033
        let n = BigInt::from(1000003i64) * BigInt::from(1000033i64);
        let d = divisors(&n);
        assert_eq!(d.len(), 4);
    }

    #[test]
    fn negative_input_uses_magnitude() {
        let d = divisors(&BigInt::from(-6));
        let vals: Vec<i64> = d.iter().map(|x| i64::try_from(x).unwrap()).collect();
        assert_eq!(vals, vec![1, 2, 3, 6]);
    }
}
