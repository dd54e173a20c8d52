//! Exact scalar fields: `F_p`, `F_{p^d}` and `Q`.

mod galois;
mod rational;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Debug;
use core::hash::Hash;

use crate::Result;

pub use galois::{Embedding, GaloisField, Gf};
pub use rational::Rationals;

/// A field context. Elements are plain values; all arithmetic goes through the context.
pub trait Field: Clone + PartialEq + Debug {
    type Elem: Clone + Eq + Ord + Hash + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// 0 for the rationals.
    fn characteristic(&self) -> u64;
    /// Number of elements, `None` when infinite.
    fn order(&self) -> Option<u64>;
    /// `x -> x^p`.
    fn frobenius(&self, a: &Self::Elem) -> Result<Self::Elem>;

    fn parse_elem(&self, s: &str) -> Result<Self::Elem>;
    fn format_elem(&self, a: &Self::Elem) -> String;

    /// The `i`-th element in a fixed enumeration of a finite field.
    fn element(&self, i: u64) -> Option<Self::Elem>;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn is_finite(&self) -> bool {
        self.order().is_some()
    }

    /// All elements of a finite field, in enumeration order.
    fn elements(&self) -> Vec<Self::Elem> {
        match self.order() {
            Some(q) => (0..q).filter_map(|i| self.element(i)).collect(),
            None => Vec::new(),
        }
    }

    /// Scale `v` so its first nonzero entry is 1. Returns false for the zero vector.
    fn normalize(&self, v: &mut [Self::Elem]) -> bool {
        let Some(lead) = v.iter().find(|x| !self.is_zero(x)).cloned() else {
            return false;
        };
        if self.is_one(&lead) {
            return true;
        }
        let inv = self.inv(&lead).expect("nonzero");
        for x in v.iter_mut() {
            *x = self.mul(x, &inv);
        }
        true
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn f4_generator_is_cube_root_of_unity() {
        let k = GaloisField::new(2, 2, Some(vec![1, 1, 1])).unwrap();
        let z = k.generator();
        assert!(!k.is_one(&z));
        assert!(k.is_one(&k.pow(&z, 3)));
        let z2 = k.frobenius(&z).unwrap();
        assert_eq!(z2, k.mul(&z, &z));
        assert!(k.is_one(&k.mul(&z, &z2)));
    }

    #[test]
    fn f9_contains_i() {
        let k = GaloisField::new(3, 2, None).unwrap();
        assert_eq!(k.modulus(), &[1, 0, 1]);
        let i = k.generator();
        assert_eq!(k.pow(&i, 2), k.from_i64(-1));
    }

    #[test]
    fn prime_field_inverse() {
        let k = GaloisField::prime(7).unwrap();
        assert_eq!(k.inv(&k.from_i64(3)).unwrap(), Gf(5));
        assert!(k.inv(&k.zero()).is_err());
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(matches!(GaloisField::prime(15), Err(crate::Error::NotPrime(15))));
        assert!(matches!(
            GaloisField::new(2, 2, Some(vec![1, 0, 1])),
            Err(crate::Error::ReducibleModulus(2))
        ));
        assert!(matches!(GaloisField::new(2, 7, None), Err(crate::Error::UnsupportedDegree(7))));
        assert!(Rationals.frobenius(&Rationals.one()).is_err());
    }

    #[test]
    fn default_moduli_are_irreducible() {
        for (p, d) in [(2, 3), (2, 4), (2, 6), (3, 3), (5, 2), (7, 3)] {
            let k = GaloisField::new(p, d, None).unwrap();
            assert!(galois::fp_irreducible(k.modulus(), p));
            let g = k.generator();
            assert_eq!(k.frobenius_pow(g, d), g);
            assert_ne!(k.frobenius_pow(g, 1), g);
        }
    }

    #[test]
    fn large_extension_without_tables() {
        let k = GaloisField::build(5, 8, None).unwrap();
        assert_eq!(k.size(), 390625);
        let a = k.from_coeffs(&[1, 2, 3, 4, 0, 1, 1, 2]).unwrap();
        let inv = k.inv(&a).unwrap();
        assert!(k.is_one(&k.mul(&a, &inv)));
        assert_eq!(k.frobenius_pow(a, 8), a);
    }

    #[test]
    fn embeddings_are_homomorphisms() {
        let k = GaloisField::new(2, 2, None).unwrap();
        let (big, emb) = k.extension(3).unwrap();
        assert_eq!(big.size(), 64);
        for a in k.elements() {
            for b in k.elements() {
                assert_eq!(emb.apply(k.mul(&a, &b)), big.mul(&emb.apply(a), &emb.apply(b)));
                assert_eq!(emb.apply(k.add(&a, &b)), big.add(&emb.apply(a), &emb.apply(b)));
            }
            assert_eq!(emb.preimage(emb.apply(a)), Some(a));
        }
    }

    #[test]
    fn preimage_beyond_lookup_tables() {
        let k = GaloisField::new(5, 2, None).unwrap();
        let (big, emb) = k.extension(4).unwrap();
        assert_eq!(big.size(), 390625);
        for a in k.elements() {
            assert_eq!(emb.preimage(emb.apply(a)), Some(a));
        }
        assert_eq!(emb.preimage(big.generator()), None);
        let (same, id) = big.extension(1).unwrap();
        let b = same.from_coeffs(&[3, 1, 4, 1, 0, 2, 0, 1]).unwrap();
        assert_eq!(id.preimage(b), Some(b));
    }

    #[test]
    fn parse_and_format() {
        let k = GaloisField::new(3, 2, None).unwrap();
        let a = k.parse_elem("1+2*g").unwrap();
        assert_eq!(a, k.from_coeffs(&[1, 2]).unwrap());
        assert_eq!(k.format_elem(&a), "2*g+1");
        assert_eq!(k.parse_elem("[1,2]").unwrap(), a);
        assert_eq!(k.parse_elem("-g").unwrap(), k.neg(&k.generator()));
        let q = Rationals;
        assert_eq!(q.format_elem(&q.parse_elem("6/-4").unwrap()), "-3/2");
    }
}
