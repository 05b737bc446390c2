use crate::error::{Error, Result};

/// A prime field F_q, carried by value through all linear algebra.
///
/// Elements are residues in `[0, q)` stored as `u32`; all arithmetic goes
/// through this type so reductions cannot be forgotten.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct PrimeField {
    q: u32,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl PrimeField {
    /// Constructs F_q, rejecting composite (and zero/unit) orders.
    pub fn new(q: u32) -> Result<Self> {
        if !is_prime(q as u64) {
            return Err(Error::NotPrime(q as u64));
        }
        Ok(PrimeField { q })
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    /// Reduces an arbitrary integer representative into `[0, q)`.
    pub fn reduce(&self, a: u64) -> u32 {
        (a % self.q as u64) as u32
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        self.reduce(s)
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        let s = a as u64 + (self.q - b % self.q) as u64;
        self.reduce(s)
    }

    pub fn neg(&self, a: u32) -> u32 {
        if a % self.q == 0 {
            0
        } else {
            self.q - a % self.q
        }
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.reduce(a as u64 * b as u64)
    }

    /// Multiplicative inverse of a nonzero residue, via Fermat's little theorem.
    pub fn inv(&self, a: u32) -> u32 {
        debug_assert!(a % self.q != 0, "inverse of zero");
        self.pow(a, self.q as u64 - 2)
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = self.reduce(a as u64);
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_primes_rejects_composites() {
        for q in [2u32, 3, 5, 7, 11, 13] {
            assert!(PrimeField::new(q).is_ok());
        }
        for q in [0u32, 1, 4, 6, 8, 9, 10, 12] {
            assert!(matches!(PrimeField::new(q), Err(Error::NotPrime(_))));
        }
    }

    #[test]
    fn arithmetic_mod_5() {
        let f = PrimeField::new(5).unwrap();
        assert_eq!(f.add(3, 4), 2);
        assert_eq!(f.sub(1, 3), 3);
        assert_eq!(f.mul(3, 4), 2);
        assert_eq!(f.neg(0), 0);
        assert_eq!(f.neg(2), 3);
        for a in 1..5 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
    }
}
