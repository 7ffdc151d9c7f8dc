//! Small integer helpers shared by the ring and module code.

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Product of the distinct primes dividing `n` (1 for `n == 1`).
pub fn squarefree_kernel(n: u64) -> u64 {
    prime_factors(n).into_iter().product()
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && prime_factors(n) == [n]
}

pub fn is_prime_power(n: u64) -> bool {
    prime_factors(n).len() == 1
}

/// Positive divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisor_lists() {
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(8), vec![1, 2, 4, 8]);
        assert_eq!(divisors(36), vec![1, 2, 3, 4, 6, 9, 12, 18, 36]);
    }

    #[test]
    fn kernels_and_primes() {
        assert_eq!(squarefree_kernel(1), 1);
        assert_eq!(squarefree_kernel(8), 2);
        assert_eq!(squarefree_kernel(60), 30);
        assert_eq!(prime_factors(60), vec![2, 3, 5]);
        assert!(is_prime(7) && !is_prime(1) && !is_prime(9));
        assert!(is_prime_power(9) && is_prime_power(2) && !is_prime_power(6) && !is_prime_power(1));
        assert_eq!(lcm(4, 6), 12);
        assert_eq!(gcd(0, 8), 8);
    }
}
