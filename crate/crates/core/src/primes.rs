//! Deterministic primality, rank-one factor fits and the prime-triple search.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

/// Below this bound [`is_prime`] uses trial division.
const TRIAL_DIVISION_LIMIT: u64 = 1_000_000;

/// Strong-probable-prime bases that are deterministic for every `u64`.
const SPRP_BASES: [u64; 7] = [2, 325, 9375, 28178, 450775, 9780504, 1795265022];

/// Upper limit (exclusive) on `k` accepted by [`search_triples`].
pub const TRIPLE_K_LIMIT: u64 = (1u64 << 59) / 12;

pub fn is_prime(x: u64) -> bool {
    if x < 2 {
        return false;
    }
    if x < 4 {
        return true;
    }
    if x % 2 == 0 || x % 3 == 0 {
        return false;
    }
    if x < TRIAL_DIVISION_LIMIT {
        let mut d = 5;
        while d * d <= x {
            if x % d == 0 || x % (d + 2) == 0 {
                return false;
            }
            d += 6;
        }
        return true;
    }
    miller_rabin(x)
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
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

/// Requires odd `x > 3`.
fn miller_rabin(x: u64) -> bool {
    let s = (x - 1).trailing_zeros();
    let d = (x - 1) >> s;
    'bases: for &a in &SPRP_BASES {
        let a = a % x;
        if a == 0 {
            continue;
        }
        let mut y = pow_mod(a, d, x);
        if y == 1 || y == x - 1 {
            continue;
        }
        for _ in 1..s {
            y = mul_mod(y, y, x);
            if y == x - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// `(a, b)` with `2 <= a <= b <= n` and `a·b = m`, smallest `a` first.
/// This is exactly when an `n × n` rank-one (0,1)-matrix with `m` ones exists
/// and is not a single row.
pub fn factor_fit(n: u64, m: u64) -> Option<(u64, u64)> {
    let mut a = 2.max(m.div_ceil(n.max(1)));
    while a.checked_mul(a).is_some_and(|sq| sq <= m) {
        if m % a == 0 {
            let b = m / a;
            if b <= n {
                return Some((a, b));
            }
        }
        a += 1;
    }
    None
}

/// Sign of the `12k ± 1` family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    fn apply(self, base: u64) -> u64 {
        match self {
            Sign::Plus => base + 1,
            Sign::Minus => base - 1,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl Serialize for Sign {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_i8(self.as_i8())
    }
}

impl std::str::FromStr for Sign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "+1" | "1" | "+" | "plus" => Ok(Sign::Plus),
            "-1" | "-" | "minus" => Ok(Sign::Minus),
            other => Err(Error::OutOfRange(format!("sign must be +1 or -1, got {other:?}"))),
        }
    }
}

/// A `k` for which `4k±1`, `6k±1` and `12k±1` are all prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TripleWitness {
    pub k: u64,
    pub sign: Sign,
    pub primes: [u64; 3],
    /// Ones count `12k ± 2` this witness certifies.
    pub m: u64,
}

impl TripleWitness {
    fn members(k: u64, sign: Sign) -> [u64; 3] {
        [sign.apply(4 * k), sign.apply(6 * k), sign.apply(12 * k)]
    }

    /// Checks the triple condition for a single `k`.
    pub fn check(k: u64, sign: Sign) -> Option<Self> {
        if k == 0 || k >= TRIPLE_K_LIMIT {
            return None;
        }
        let primes = Self::members(k, sign);
        primes.iter().all(|&p| is_prime(p)).then(|| Self::build(k, sign, primes))
    }

    fn build(k: u64, sign: Sign, primes: [u64; 3]) -> Self {
        let m = match sign {
            Sign::Plus => 12 * k + 2,
            Sign::Minus => 12 * k - 2,
        };
        Self { k, sign, primes, m }
    }

    /// The witness for `m`, if `m = 12k ± 2` and the matching triple is prime.
    pub fn for_ones(m: u64) -> Option<Self> {
        match m % 12 {
            2 => Self::check((m - 2) / 12, Sign::Plus),
            10 => Self::check((m + 2) / 12, Sign::Minus),
            _ => None,
        }
    }
}

/// Small primes whose residues prune `k` before the full test.
const WHEEL_PRIMES: [u64; 8] = [3, 5, 7, 11, 13, 17, 19, 23];

/// Past this `k` every triple member exceeds every wheel prime.
const WHEEL_START: u64 = 7;

const CHUNK: u64 = 1 << 14;

/// All `k` in `[k_min, k_max]` whose triple is prime, ascending.
pub fn search_triples(k_min: u64, k_max: u64, sign: Sign) -> Result<Vec<TripleWitness>> {
    if k_min == 0 || k_min > k_max || k_max >= TRIPLE_K_LIMIT {
        return Err(Error::OutOfRange(format!("need 1 <= k_min <= k_max < {TRIPLE_K_LIMIT}, got [{k_min}, {k_max}]")));
    }
    // bad[i][r]: some member is divisible by WHEEL_PRIMES[i] when k ≡ r
    let bad: Vec<Vec<bool>> = WHEEL_PRIMES
        .iter()
        .map(|&l| (0..l).map(|r| TripleWitness::members(r + l, sign).iter().any(|&x| x % l == 0)).collect())
        .collect();

    let chunks: Vec<(u64, u64)> = {
        let mut v = Vec::new();
        let mut lo = k_min;
        loop {
            let hi = lo.saturating_add(CHUNK - 1).min(k_max);
            v.push((lo, hi));
            if hi == k_max {
                break;
            }
            lo = hi + 1;
        }
        v
    };

    let found: Vec<Vec<TripleWitness>> = chunks
        .par_iter()
        .map(|&(lo, hi)| {
            let mut res: Vec<u64> = WHEEL_PRIMES.iter().map(|&l| lo % l).collect();
            let mut out = Vec::new();
            for k in lo..=hi {
                let pruned = k >= WHEEL_START && res.iter().zip(&bad).any(|(&r, b)| b[r as usize]);
                if !pruned {
                    if let Some(w) = TripleWitness::check(k, sign) {
                        out.push(w);
                    }
                }
                for (r, &l) in res.iter_mut().zip(&WHEEL_PRIMES) {
                    *r += 1;
                    if *r == l {
                        *r = 0;
                    }
                }
            }
            out
        })
        .collect();
    Ok(found.into_iter().flatten().collect())
}

/// A solution of `m = a·b + c` with `a >= b >= 5` and `c ∈ {−1, 0, 1}`,
/// scanning `b` upward and `c` in the order −1, 0, 1.
pub fn claim_a_solver(m: u64) -> Option<(u64, u64, i8)> {
    let mut b = 5u64;
    while b * b <= m + 1 {
        for c in [-1i8, 0, 1] {
            let target = match c {
                -1 => m + 1,
                0 => m,
                _ => m - 1,
            };
            if target % b == 0 && target / b >= b {
                return Some((target / b, b, c));
            }
        }
        b += 1;
    }
    None
}
