//! Dense univariate polynomials over a [`Field`].

use alloc::vec;
use alloc::vec::Vec;

use crate::field::{Field, GaloisField, Gf};
use crate::{Error, Result};

/// Coefficients low to high with trailing zeros stripped; the zero polynomial is empty.
#[derive(Clone, Debug, PartialEq)]
pub struct UniPoly<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> UniPoly<F> {
    pub fn new(field: F, mut coeffs: Vec<F::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        UniPoly { field, coeffs }
    }

    pub fn from_i64(field: F, coeffs: &[i64]) -> Self {
        let c = coeffs.iter().map(|&n| field.from_i64(n)).collect();
        Self::new(field, c)
    }

    pub fn zero(field: F) -> Self {
        UniPoly { field, coeffs: Vec::new() }
    }

    pub fn constant(field: F, c: F::Elem) -> Self {
        Self::new(field, vec![c])
    }

    pub fn x(field: F) -> Self {
        let c = vec![field.zero(), field.one()];
        UniPoly { field, coeffs: c }
    }

    /// `x^n`.
    pub fn monomial(field: F, n: usize) -> Self {
        let mut c = vec![field.zero(); n + 1];
        c[n] = field.one();
        UniPoly { field, coeffs: c }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> F::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.field.is_one(&self.coeffs[0])
    }

    pub fn lead(&self) -> Option<&F::Elem> {
        self.coeffs.last()
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::MixedContexts)
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n).map(|i| f.add(&self.coeff(i), &other.coeff(i))).collect();
        Self::new(f.clone(), c)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n).map(|i| f.sub(&self.coeff(i), &other.coeff(i))).collect();
        Self::new(f.clone(), c)
    }

    pub fn neg(&self) -> Self {
        let c = self.coeffs.iter().map(|a| self.field.neg(a)).collect();
        Self::new(self.field.clone(), c)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Self::zero(f.clone());
        }
        let mut c = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] = f.add(&c[i + j], &f.mul(a, b));
            }
        }
        Self::new(f.clone(), c)
    }

    pub fn scale(&self, s: &F::Elem) -> Self {
        let c = self.coeffs.iter().map(|a| self.field.mul(a, s)).collect();
        Self::new(self.field.clone(), c)
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None => self.clone(),
            Some(l) => self.scale(&self.field.inv(l).expect("nonzero lead")),
        }
    }

    pub fn eval(&self, x: &F::Elem) -> F::Elem {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, a)| f.mul(a, &f.from_i64(i as i64)))
            .collect();
        Self::new(f.clone(), c)
    }

    pub fn divrem(&self, d: &Self) -> Result<(Self, Self)> {
        self.same_field(d)?;
        let f = &self.field;
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = f.inv(d.lead().unwrap())?;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Self::zero(f.clone()), self.clone()));
        }
        let mut q = vec![f.zero(); r.len() - dd];
        for k in (dd..r.len()).rev() {
            let c = f.mul(&r[k], &lead_inv);
            if f.is_zero(&c) {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                r[k - dd + j] = f.sub(&r[k - dd + j], &f.mul(&c, dj));
            }
            q[k - dd] = c;
        }
        r.truncate(dd);
        Ok((Self::new(f.clone(), q), Self::new(f.clone(), r)))
    }

    pub fn rem(&self, d: &Self) -> Result<Self> {
        Ok(self.divrem(d)?.1)
    }

    /// Exact quotient; fails if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Self) -> Result<Self> {
        let (q, r) = self.divrem(d)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::Inconsistent("inexact polynomial division".into()))
        }
    }

    /// Monic gcd; `gcd(f, 0) = monic(f)`.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    pub fn mulmod(&self, other: &Self, m: &Self) -> Result<Self> {
        self.mul(other).rem(m)
    }

    pub fn powmod(&self, mut e: u64, m: &Self) -> Result<Self> {
        let mut base = self.rem(m)?;
        let mut acc = Self::constant(self.field.clone(), self.field.one()).rem(m)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mulmod(&base, m)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mulmod(&base, m)?;
            }
        }
        Ok(acc)
    }

    pub fn is_squarefree(&self) -> Result<bool> {
        match self.degree() {
            None => Err(Error::InvalidInput("zero polynomial".into())),
            Some(0) => Ok(true),
            Some(_) => {
                let d = self.derivative();
                if d.is_zero() {
                    return Ok(false);
                }
                Ok(self.gcd(&d)?.degree() == Some(0))
            }
        }
    }
}

impl UniPoly<GaloisField> {
    /// `x^{Q^m} mod self` where `Q` is the field size.
    fn frobenius_x(&self, m: u32) -> Result<Self> {
        let q = self.field.size();
        let mut h = Self::x(self.field.clone()).rem(self)?;
        for _ in 0..m {
            h = h.powmod(q, self)?;
        }
        Ok(h)
    }

    /// Number of distinct roots in `F_{Q^m}`, as `deg gcd(f, x^{Q^m} - x)`.
    pub fn count_roots_in_extension(&self, m: u32) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::InvalidInput("zero polynomial".into()));
        }
        if m == 0 {
            return Err(Error::InvalidInput("extension degree must be positive".into()));
        }
        if self.degree() == Some(0) {
            return Ok(0);
        }
        let h = self.frobenius_x(m)?.sub(&Self::x(self.field.clone()));
        Ok(self.gcd(&h)?.degree().unwrap_or(0))
    }

    /// Distinct roots in the coefficient field, sorted.
    pub fn roots(&self) -> Result<Vec<Gf>> {
        if self.is_zero() {
            return Err(Error::InvalidInput("zero polynomial".into()));
        }
        if self.degree() == Some(0) {
            return Ok(Vec::new());
        }
        let g = self.frobenius_x(1)?.sub(&Self::x(self.field.clone()));
        let g = self.gcd(&g)?;
        let mut out = Vec::new();
        self.split_linear(g, &mut out)?;
        out.sort();
        Ok(out)
    }

    fn split_linear(&self, g: Self, out: &mut Vec<Gf>) -> Result<()> {
        let k = &self.field;
        match g.degree() {
            None | Some(0) => return Ok(()),
            Some(1) => {
                out.push(k.neg(&g.coeff(0)));
                return Ok(());
            }
            _ => {}
        }
        let q = k.size();
        let x = Self::x(k.clone());
        let one = Self::constant(k.clone(), k.one());
        let tries = if k.p() == 2 { k.degree() as u64 } else { q };
        let gamma = k.primitive_element();
        for i in 0..tries {
            let t = if k.p() == 2 {
                let mut cur = x.scale(&k.pow(&gamma, i)).rem(&g)?;
                let mut acc = cur.clone();
                for _ in 1..k.degree() {
                    cur = cur.mulmod(&cur, &g)?;
                    acc = acc.add(&cur);
                }
                acc
            } else {
                let shifted = x.add(&Self::constant(k.clone(), Gf(i)));
                shifted.powmod((q - 1) / 2, &g)?.sub(&one)
            };
            let h = g.gcd(&t)?;
            let dh = h.degree().unwrap_or(0);
            if dh > 0 && Some(dh) < g.degree() {
                let rest = g.exact_div(&h)?;
                self.split_linear(h, out)?;
                return self.split_linear(rest.monic(), out);
            }
        }
        Err(Error::Inconsistent("root splitting did not terminate".into()))
    }

    /// The polynomial whose `p`-th power is `self`; requires `self' = 0`.
    pub fn pth_root(&self) -> Result<Self> {
        let k = &self.field;
        let p = k.p() as usize;
        if !self.derivative().is_zero() {
            return Err(Error::InvalidInput("not a p-th power".into()));
        }
        let c = self
            .coeffs
            .iter()
            .step_by(p)
            .map(|a| k.frobenius_pow(*a, k.degree() - 1))
            .collect();
        Ok(Self::new(k.clone(), c))
    }

    /// Squarefree decomposition `f = lc * prod g_i^{e_i}` with monic, pairwise coprime `g_i`.
    pub fn squarefree_decomposition(&self) -> Result<Vec<(Self, u32)>> {
        if self.is_zero() {
            return Err(Error::InvalidInput("zero polynomial".into()));
        }
        let f = self.monic();
        let mut out = Vec::new();
        if f.degree() == Some(0) {
            return Ok(out);
        }
        let d = f.derivative();
        let mut c = f.gcd(&d)?;
        let mut w = f.exact_div(&c)?;
        let mut i = 1;
        while w.degree().unwrap_or(0) > 0 {
            let y = w.gcd(&c)?;
            let z = w.exact_div(&y)?;
            if z.degree().unwrap_or(0) > 0 {
                out.push((z.monic(), i));
            }
            i += 1;
            c = c.exact_div(&y)?;
            w = y;
        }
        if c.degree().unwrap_or(0) > 0 {
            let p = self.field.p() as u32;
            for (g, e) in c.pth_root()?.squarefree_decomposition()? {
                out.push((g, e * p));
            }
        }
        out.sort_by_key(|(g, e)| (*e, g.degree()));
        Ok(out)
    }

    /// Distinct-degree factorization of a squarefree polynomial: pairs `(d, product of all
    /// irreducible factors of degree d)`.
    pub fn distinct_degree_factorization(&self) -> Result<Vec<(usize, Self)>> {
        if !self.is_squarefree()? {
            return Err(Error::InvalidInput("polynomial is not squarefree".into()));
        }
        let k = self.field.clone();
        let x = Self::x(k.clone());
        let mut rest = self.monic();
        let mut h = x.rem(&rest)?;
        let mut out = Vec::new();
        let mut i = 1;
        while rest.degree().unwrap_or(0) >= 2 * i {
            h = h.powmod(k.size(), &rest)?;
            let g = rest.gcd(&h.sub(&x))?;
            if g.degree().unwrap_or(0) > 0 {
                rest = rest.exact_div(&g)?;
                h = h.rem(&rest)?;
                out.push((i, g));
            }
            i += 1;
        }
        if let Some(d) = rest.degree().filter(|&d| d > 0) {
            out.push((d, rest));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    fn f2() -> GaloisField {
        GaloisField::prime(2).unwrap()
    }

    #[test]
    fn gcd_over_q() {
        let q = Rationals;
        let a = UniPoly::from_i64(q, &[-1, 0, 1]);
        let b = UniPoly::from_i64(q, &[-1, 1]);
        assert_eq!(a.gcd(&b).unwrap(), b);
        let c = UniPoly::from_i64(q, &[2, 4]);
        assert_eq!(c.gcd(&UniPoly::zero(q)).unwrap(), c.monic());
    }

    #[test]
    fn x2_x_1_over_f2() {
        let f = UniPoly::from_i64(f2(), &[1, 1, 1]);
        assert!(f.gcd(&f.derivative()).unwrap().is_one());
        assert_eq!(f.count_roots_in_extension(1).unwrap(), 0);
        assert_eq!(f.count_roots_in_extension(2).unwrap(), 2);
        assert!(f.roots().unwrap().is_empty());
    }

    #[test]
    fn all_of_fq() {
        for (p, d) in [(2, 1), (3, 2), (5, 1), (2, 3)] {
            let k = GaloisField::new(p, d, None).unwrap();
            let q = k.size() as usize;
            let f = UniPoly::monomial(k.clone(), q).sub(&UniPoly::x(k.clone()));
            assert_eq!(f.count_roots_in_extension(1).unwrap(), q);
            assert_eq!(f.roots().unwrap().len(), q);
        }
    }

    #[test]
    fn squarefree_in_char_p() {
        let k = GaloisField::prime(3).unwrap();
        // (x^3 + 1)^2 (x + 2) = (x+1)^6 (x+2)
        let a = UniPoly::from_i64(k.clone(), &[1, 0, 0, 1]);
        let f = a.mul(&a).mul(&UniPoly::from_i64(k.clone(), &[2, 1]));
        let sq = f.squarefree_decomposition().unwrap();
        assert_eq!(sq.len(), 2);
        assert_eq!(sq[0], (UniPoly::from_i64(k.clone(), &[2, 1]), 1));
        assert_eq!(sq[1], (UniPoly::from_i64(k, &[1, 1]), 6));
    }

    #[test]
    fn ddf_splits_by_degree() {
        let k = GaloisField::prime(2).unwrap();
        // x (x^2+x+1) (x^3+x+1)
        let f = UniPoly::from_i64(k.clone(), &[0, 1])
            .mul(&UniPoly::from_i64(k.clone(), &[1, 1, 1]))
            .mul(&UniPoly::from_i64(k.clone(), &[1, 1, 0, 1]));
        let ddf = f.distinct_degree_factorization().unwrap();
        let degs: Vec<_> = ddf.iter().map(|(d, g)| (*d, g.degree().unwrap())).collect();
        assert_eq!(degs, vec![(1, 1), (2, 2), (3, 3)]);
    }
}
