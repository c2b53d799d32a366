//! Exact integer primitives: Kronecker symbol, deterministic primality,
//! power-lifting congruences, and filtered prime streams.
//!
//! Everything here is plain `i64`/`u64` arithmetic with `u128` intermediates
//! where products could overflow. There is no floating point anywhere.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// Kronecker symbol (a|n), the full extension of the Jacobi symbol to all
/// nonzero n. Uses the convention (a|-1) = +1 for a >= 0 and -1 for a < 0.
pub fn kronecker(a: i64, n: i64) -> Result<i64> {
    if n == 0 {
        return Err(Error::KroneckerZeroModulus);
    }
    let mut a = a;
    let mut n = n;
    let mut sign: i64 = 1;
    if n < 0 {
        n = -n;
        if a < 0 {
            sign = -sign;
        }
    }
    if n % 2 == 0 {
        if a % 2 == 0 {
            return Ok(0);
        }
        let mut twos = 0u32;
        while n % 2 == 0 {
            n /= 2;
            twos += 1;
        }
        if twos % 2 == 1 {
            let r = a.rem_euclid(8);
            if r == 3 || r == 5 {
                sign = -sign;
            }
        }
    }
    // n is now odd and positive: standard Jacobi reciprocity loop.
    a = a.rem_euclid(n.max(1));
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let r = n % 8;
            if r == 3 || r == 5 {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        a %= n;
    }
    Ok(if n == 1 { sign } else { 0 })
}

pub fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn gcd_i64(a: i64, b: i64) -> i64 {
    gcd_u64(a.unsigned_abs(), b.unsigned_abs()) as i64
}

/// Exact integer square root (floor).
pub fn isqrt(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut x = (n as f64).sqrt() as u64;
    // f64 can be off by one either way near perfect squares.
    while x.checked_mul(x).is_none_or(|s| s > n) {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).is_some_and(|s| s <= n) {
        x += 1;
    }
    x
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

const MR_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic Miller-Rabin primality test. The witness set is valid for
/// every `u64`, so the answer is exact, never probabilistic.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_WITNESSES {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MR_WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// True iff every prime dividing `n` also divides `m` (rad(n) | rad(m)).
/// Works by stripping gcd(n, m) factors, so no factorization is needed.
pub fn radical_divides(n: u64, m: u64) -> bool {
    let mut r = n;
    loop {
        let g = gcd_u64(r, m);
        if g == 1 {
            return r == 1;
        }
        r /= g;
    }
}

/// Decides x^n = y^n (mod m*n) for x = y (mod m) with rad(n) | rad(m).
///
/// The congruence is a theorem under those preconditions, so the call should
/// always come back `true`; it exists so the statement can be fuzzed.
pub fn lifted_power_congruence(x: i64, y: i64, m: u64, n: u64) -> Result<bool> {
    if m == 0 || n == 0 {
        return Err(Error::Precondition("m and n must be positive".into()));
    }
    let modulus = m
        .checked_mul(n)
        .ok_or_else(|| Error::Precondition("m*n exceeds the supported range".into()))?;
    if (x - y).rem_euclid(m as i64) != 0 {
        return Err(Error::Precondition(format!("{x} != {y} (mod {m})")));
    }
    if !radical_divides(n, m) {
        return Err(Error::Precondition(format!(
            "some prime of {n} does not divide {m}"
        )));
    }
    let xm = x.rem_euclid(modulus as i64) as u64;
    let ym = y.rem_euclid(modulus as i64) as u64;
    Ok(pow_mod(xm, n, modulus) == pow_mod(ym, n, modulus))
}

/// Window of primes filtered by residue class and splitting behaviour.
///
/// Every yielded p is prime, coprime to `modulus * disc`, has
/// p mod modulus in `residues`, and satisfies kronecker(disc, p) = +1.
/// Bounds are inclusive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeWindow {
    pub modulus: u64,
    pub residues: BTreeSet<u64>,
    pub disc: i64,
    pub lo: u64,
    pub hi: u64,
}

impl PrimeWindow {
    pub fn new(modulus: u64, residues: BTreeSet<u64>, disc: i64, lo: u64, hi: u64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::Precondition("modulus must be >= 1".into()));
        }
        if residues.is_empty() {
            return Err(Error::Precondition("residue set must be nonempty".into()));
        }
        for &r in &residues {
            if r >= modulus && modulus > 1 {
                return Err(Error::Precondition(format!(
                    "residue {r} out of range mod {modulus}"
                )));
            }
            if gcd_u64(r, modulus) != 1 {
                return Err(Error::Precondition(format!(
                    "residue {r} is not a unit mod {modulus}"
                )));
            }
        }
        if disc == 0 {
            return Err(Error::Precondition("discriminant must be nonzero".into()));
        }
        Ok(PrimeWindow {
            modulus,
            residues,
            disc,
            lo,
            hi,
        })
    }

    fn admits(&self, p: u64) -> bool {
        if self.modulus % p == 0 || self.disc.unsigned_abs() % p == 0 {
            return false;
        }
        if !self.residues.contains(&(p % self.modulus)) {
            return false;
        }
        kronecker(self.disc, p as i64) == Ok(1)
    }

    /// Iterate the window in increasing order.
    pub fn primes(&self) -> PrimeStream {
        PrimeStream::new(self.clone())
    }

    /// Collect the whole window.
    pub fn collect(&self) -> Vec<u64> {
        self.primes().collect()
    }
}

const SIEVE_BLOCK: u64 = 1 << 16;

/// Iterator over a `PrimeWindow`, backed by a segmented sieve.
pub struct PrimeStream {
    window: PrimeWindow,
    base: Vec<u64>,
    buffer: std::collections::VecDeque<u64>,
    next_start: u64,
}

impl PrimeStream {
    fn new(window: PrimeWindow) -> Self {
        let base = if window.lo > window.hi {
            Vec::new()
        } else {
            small_primes(isqrt(window.hi) + 1)
        };
        PrimeStream {
            next_start: window.lo.max(2),
            window,
            base,
            buffer: std::collections::VecDeque::new(),
        }
    }

    fn fill(&mut self) {
        while self.buffer.is_empty() && self.next_start <= self.window.hi {
            let start = self.next_start;
            let end = (start + SIEVE_BLOCK - 1).min(self.window.hi);
            self.next_start = end + 1;
            let len = (end - start + 1) as usize;
            let mut composite = vec![false; len];
            for &p in &self.base {
                if p * p > end {
                    break;
                }
                let mut multiple = start.div_ceil(p) * p;
                if multiple < p * p {
                    multiple = p * p;
                }
                while multiple <= end {
                    composite[(multiple - start) as usize] = true;
                    multiple += p;
                }
            }
            for (i, &marked) in composite.iter().enumerate() {
                let candidate = start + i as u64;
                if candidate >= 2 && !marked && self.window.admits(candidate) {
                    self.buffer.push_back(candidate);
                }
            }
        }
    }
}

impl Iterator for PrimeStream {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.buffer.is_empty() {
            self.fill();
        }
        self.buffer.pop_front()
    }
}

fn small_primes(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    if n >= 1 {
        sieve[1] = false;
    }
    let mut p = 2usize;
    while p * p <= n {
        if sieve[p] {
            let mut q = p * p;
            while q <= n {
                sieve[q] = false;
                q += p;
            }
        }
        p += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter_map(|(i, &b)| if b { Some(i as u64) } else { None })
        .collect()
}
