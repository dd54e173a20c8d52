use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::{is_prime, prime_factors, Field};
use crate::poly::UniPoly;
use crate::{Error, Result};

/// An element of a Galois field, encoded as `sum c_i p^i` for the residue `sum c_i g^i`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gf(pub u64);

const MAX_DEGREE: u32 = 32;
const MAX_ORDER: u64 = 1 << 48;
const TABLE_LIMIT: u64 = 1 << 16;
const PUBLIC_MAX_DEGREE: u32 = 6;

struct Tables {
    log: Vec<u32>,
    exp: Vec<u32>,
}

struct Inner {
    p: u64,
    deg: u32,
    modulus: Vec<u64>,
    q: u64,
    pw: Vec<u64>,
    tables: Option<Tables>,
}

/// `F_p` or `F_p[g]/(f)` for a monic irreducible `f`.
#[derive(Clone)]
pub struct GaloisField(Arc<Inner>);

impl PartialEq for GaloisField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}

impl Eq for GaloisField {}

impl fmt::Debug for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.deg == 1 {
            write!(f, "F_{}", self.0.p)
        } else {
            write!(f, "F_{}^{}{:?}", self.0.p, self.0.deg, self.0.modulus)
        }
    }
}

impl GaloisField {
    pub fn prime(p: u64) -> Result<Self> {
        Self::new(p, 1, None)
    }

    /// `F_{p^deg}` with `deg <= 6`. The default modulus is `x^2+x+1` for `F_4`, `x^2+1` for
    /// `F_9`, and otherwise the least monic irreducible polynomial in the `p`-adic encoding
    /// of its lower coefficients.
    pub fn new(p: u64, deg: u32, modulus: Option<Vec<u64>>) -> Result<Self> {
        if deg == 0 || deg > PUBLIC_MAX_DEGREE {
            return Err(Error::UnsupportedDegree(deg));
        }
        Self::build(p, deg, modulus)
    }

    pub(crate) fn build(p: u64, deg: u32, modulus: Option<Vec<u64>>) -> Result<Self> {
        if !is_prime(p) || p >= 1 << 31 {
            return Err(Error::NotPrime(p));
        }
        if deg == 0 || deg > MAX_DEGREE {
            return Err(Error::UnsupportedDegree(deg));
        }
        let mut pw = vec![1u64];
        for _ in 0..deg {
            let next = pw.last().unwrap().checked_mul(p).filter(|&x| x <= MAX_ORDER);
            match next {
                Some(x) => pw.push(x),
                None => return Err(Error::UnsupportedDegree(deg)),
            }
        }
        let q = pw[deg as usize];
        let modulus = match modulus {
            Some(m) => {
                if m.len() != deg as usize + 1 || *m.last().unwrap() != 1 {
                    return Err(Error::InvalidModulus(format!(
                        "expected a monic polynomial of degree {deg}"
                    )));
                }
                if m.iter().any(|&c| c >= p) {
                    return Err(Error::InvalidModulus(format!("coefficients must lie in 0..{p}")));
                }
                if deg > 1 && !fp_irreducible(&m, p) {
                    return Err(Error::ReducibleModulus(p));
                }
                m
            }
            None => default_modulus(p, deg),
        };
        let mut inner = Inner { p, deg, modulus, q, pw, tables: None };
        if deg > 1 && q <= TABLE_LIMIT {
            inner.tables = Some(build_tables(&inner));
        }
        Ok(GaloisField(Arc::new(inner)))
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.deg
    }

    pub fn size(&self) -> u64 {
        self.0.q
    }

    /// Coefficients of the defining polynomial, low to high.
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    /// The class of `g` in `F_p[g]/(f)`; meaningful only when `degree > 1`.
    pub fn generator(&self) -> Gf {
        if self.0.deg == 1 {
            Gf(0)
        } else {
            Gf(self.0.p)
        }
    }

    pub fn from_coeffs(&self, coeffs: &[i64]) -> Result<Gf> {
        if coeffs.len() > self.0.deg as usize {
            return Err(Error::InvalidInput(format!(
                "at most {} coefficients expected",
                self.0.deg
            )));
        }
        let p = self.0.p as i64;
        Ok(Gf(coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| c.rem_euclid(p) as u64 * self.0.pw[i])
            .sum()))
    }

    pub fn coeffs(&self, a: Gf) -> Vec<u64> {
        let mut v = a.0;
        (0..self.0.deg)
            .map(|_| {
                let d = v % self.0.p;
                v /= self.0.p;
                d
            })
            .collect()
    }

    /// `a^(p^k)`.
    pub fn frobenius_pow(&self, a: Gf, k: u32) -> Gf {
        let mut x = a;
        for _ in 0..k % self.0.deg.max(1) {
            x = self.pow(&x, self.0.p);
        }
        x
    }

    /// Smallest `j` with `a` in `F_{p^j}`.
    pub fn element_degree(&self, a: Gf) -> u32 {
        let mut x = a;
        for j in 1..=self.0.deg {
            x = self.pow(&x, self.0.p);
            if x == a {
                return j;
            }
        }
        self.0.deg
    }

    /// A generator of the multiplicative group.
    pub fn primitive_element(&self) -> Gf {
        if let Some(t) = &self.0.tables {
            return Gf(t.exp[1] as u64);
        }
        let order = self.0.q - 1;
        let factors = prime_factors(order);
        (1..self.0.q)
            .map(Gf)
            .find(|g| factors.iter().all(|&l| !self.is_one(&self.pow(g, order / l))))
            .expect("multiplicative group is cyclic")
    }

    /// `F_{q^m}` together with the embedding of this field into it.
    pub fn extension(&self, m: u32) -> Result<(GaloisField, Embedding)> {
        if m == 0 {
            return Err(Error::UnsupportedDegree(0));
        }
        let big = if m == 1 {
            self.clone()
        } else {
            GaloisField::build(self.0.p, self.0.deg * m, None)?
        };
        let emb = Embedding::new(self.clone(), big.clone())?;
        Ok((big, emb))
    }

    fn slow_mul(&self, a: u64, b: u64) -> u64 {
        let inner = &*self.0;
        let p = inner.p;
        if inner.deg == 1 {
            return ((a as u128 * b as u128) % p as u128) as u64;
        }
        let d = inner.deg as usize;
        let mut x = [0u64; MAX_DEGREE as usize];
        let mut y = [0u64; MAX_DEGREE as usize];
        digits_into(a, p, d, &mut x);
        digits_into(b, p, d, &mut y);
        let mut r = [0u64; 2 * MAX_DEGREE as usize];
        for i in 0..d {
            if x[i] == 0 {
                continue;
            }
            for j in 0..d {
                r[i + j] = (r[i + j] + x[i] * y[j]) % p;
            }
        }
        for i in (d..2 * d - 1).rev() {
            let c = r[i];
            if c == 0 {
                continue;
            }
            for j in 0..d {
                let t = c * inner.modulus[j] % p;
                r[i - d + j] = (r[i - d + j] + p - t) % p;
            }
            r[i] = 0;
        }
        from_digits(&r[..d], &inner.pw)
    }
}

impl Field for GaloisField {
    type Elem = Gf;

    fn zero(&self) -> Gf {
        Gf(0)
    }

    fn one(&self) -> Gf {
        Gf(1)
    }

    fn from_i64(&self, n: i64) -> Gf {
        Gf(n.rem_euclid(self.0.p as i64) as u64)
    }

    fn add(&self, a: &Gf, b: &Gf) -> Gf {
        let inner = &*self.0;
        if inner.deg == 1 {
            let s = a.0 + b.0;
            return Gf(if s >= inner.p { s - inner.p } else { s });
        }
        if inner.p == 2 {
            return Gf(a.0 ^ b.0);
        }
        let (mut x, mut y, p) = (a.0, b.0, inner.p);
        let mut r = 0;
        for i in 0..inner.deg as usize {
            let s = (x % p + y % p) % p;
            r += s * inner.pw[i];
            x /= p;
            y /= p;
        }
        Gf(r)
    }

    fn sub(&self, a: &Gf, b: &Gf) -> Gf {
        self.add(a, &self.neg(b))
    }

    fn neg(&self, a: &Gf) -> Gf {
        let inner = &*self.0;
        if a.0 == 0 || inner.p == 2 {
            return *a;
        }
        if inner.deg == 1 {
            return Gf(inner.p - a.0);
        }
        let (mut x, p) = (a.0, inner.p);
        let mut r = 0;
        for i in 0..inner.deg as usize {
            r += ((p - x % p) % p) * inner.pw[i];
            x /= p;
        }
        Gf(r)
    }

    fn mul(&self, a: &Gf, b: &Gf) -> Gf {
        if a.0 == 0 || b.0 == 0 {
            return Gf(0);
        }
        match &self.0.tables {
            Some(t) => {
                let e = t.log[a.0 as usize] + t.log[b.0 as usize];
                Gf(t.exp[e as usize] as u64)
            }
            None => Gf(self.slow_mul(a.0, b.0)),
        }
    }

    fn inv(&self, a: &Gf) -> Result<Gf> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        match &self.0.tables {
            Some(t) => {
                let n = (self.0.q - 1) as u32;
                let l = t.log[a.0 as usize];
                Ok(Gf(t.exp[((n - l) % n) as usize] as u64))
            }
            None if self.0.deg == 1 => Ok(Gf(inv_mod(a.0, self.0.p))),
            None => Ok(self.pow(a, self.0.q - 2)),
        }
    }

    fn is_zero(&self, a: &Gf) -> bool {
        a.0 == 0
    }

    fn characteristic(&self) -> u64 {
        self.0.p
    }

    fn order(&self) -> Option<u64> {
        Some(self.0.q)
    }

    fn frobenius(&self, a: &Gf) -> Result<Gf> {
        Ok(self.pow(a, self.0.p))
    }

    fn parse_elem(&self, s: &str) -> Result<Gf> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::InvalidInput("empty element".into()));
        }
        if let Some(body) = s.strip_prefix('[').and_then(|t| t.strip_suffix(']')) {
            let coeffs = body
                .split(',')
                .filter(|t| !t.is_empty())
                .map(|t| parse_int(t, self.0.p))
                .collect::<Result<Vec<_>>>()?;
            return self.from_coeffs(&coeffs);
        }
        let mut acc = Gf(0);
        for (neg, term) in split_terms(&s)? {
            let v = self.parse_term(term)?;
            acc = if neg { self.sub(&acc, &v) } else { self.add(&acc, &v) };
        }
        Ok(acc)
    }

    fn format_elem(&self, a: &Gf) -> String {
        if self.0.deg == 1 {
            return a.0.to_string();
        }
        let c = self.coeffs(*a);
        let mut terms = Vec::new();
        for (i, &ci) in c.iter().enumerate().rev() {
            if ci == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "g".into(),
                _ => format!("g^{i}"),
            };
            terms.push(match (ci, i) {
                (_, 0) => ci.to_string(),
                (1, _) => mono,
                _ => format!("{ci}*{mono}"),
            });
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }

    fn element(&self, i: u64) -> Option<Gf> {
        (i < self.0.q).then_some(Gf(i))
    }
}

impl GaloisField {
    fn parse_term(&self, t: &str) -> Result<Gf> {
        let bad = || Error::InvalidInput(format!("cannot parse field element term `{t}`"));
        let (coef, mono) = match t.find('g') {
            None => (t, ""),
            Some(i) => (t[..i].trim_end_matches('*'), &t[i..]),
        };
        let c = if coef.is_empty() { 1 } else { parse_int(coef, self.0.p)? };
        let c = self.from_i64(c);
        if mono.is_empty() {
            return Ok(c);
        }
        if self.0.deg == 1 {
            return Err(bad());
        }
        let e = match mono.strip_prefix('g') {
            Some("") => 1,
            Some(rest) => rest.strip_prefix('^').and_then(|x| x.parse::<u64>().ok()).ok_or_else(bad)?,
            None => return Err(bad()),
        };
        Ok(self.mul(&c, &self.pow(&self.generator(), e)))
    }
}

fn split_terms(s: &str) -> Result<Vec<(bool, &str)>> {
    let mut out = Vec::new();
    let bytes = s.as_bytes();
    let mut start = 0;
    let mut neg = false;
    if bytes[0] == b'-' || bytes[0] == b'+' {
        neg = bytes[0] == b'-';
        start = 1;
    }
    for i in start..bytes.len() {
        if (bytes[i] == b'+' || bytes[i] == b'-') && i > start && bytes[i - 1] != b'^' {
            out.push((neg, &s[start..i]));
            neg = bytes[i] == b'-';
            start = i + 1;
        }
    }
    if start >= s.len() {
        return Err(Error::InvalidInput(format!("dangling sign in `{s}`")));
    }
    out.push((neg, &s[start..]));
    Ok(out)
}

fn parse_int(t: &str, p: u64) -> Result<i64> {
    let v: i128 = t
        .parse()
        .map_err(|_| Error::InvalidInput(format!("not an integer: `{t}`")))?;
    Ok(v.rem_euclid(p as i128) as i64)
}

fn digits_into(mut v: u64, p: u64, d: usize, out: &mut [u64]) {
    for o in out.iter_mut().take(d) {
        *o = v % p;
        v /= p;
    }
}

fn from_digits(d: &[u64], pw: &[u64]) -> u64 {
    d.iter().zip(pw).map(|(a, b)| a * b).sum()
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (p as i64, a as i64);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    t.rem_euclid(p as i64) as u64
}

fn build_tables(inner: &Inner) -> Tables {
    let tmp = GaloisField(Arc::new(Inner {
        p: inner.p,
        deg: inner.deg,
        modulus: inner.modulus.clone(),
        q: inner.q,
        pw: inner.pw.clone(),
        tables: None,
    }));
    let g = tmp.primitive_element();
    let n = (inner.q - 1) as usize;
    let mut exp = vec![0u32; 2 * n];
    let mut log = vec![0u32; inner.q as usize];
    let mut x = 1u64;
    for (i, e) in exp.iter_mut().take(n).enumerate() {
        *e = x as u32;
        log[x as usize] = i as u32;
        x = tmp.slow_mul(x, g.0);
    }
    for i in n..2 * n {
        exp[i] = exp[i - n];
    }
    Tables { log, exp }
}

fn default_modulus(p: u64, deg: u32) -> Vec<u64> {
    match (p, deg) {
        (_, 1) => vec![0, 1],
        (2, 2) => vec![1, 1, 1],
        (3, 2) => vec![1, 0, 1],
        _ => {
            let d = deg as usize;
            let count = p.pow(deg);
            (0..count)
                .map(|c| {
                    let mut m = vec![0u64; d + 1];
                    digits_into(c, p, d, &mut m);
                    m[d] = 1;
                    m
                })
                .find(|m| m[0] != 0 && fp_irreducible(m, p))
                .expect("irreducible polynomials exist in every degree")
        }
    }
}

// Dense arithmetic on F_p[x] used before a field context exists.

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn fp_rem(a: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    trim(&mut r);
    let df = f.len() - 1;
    let lead_inv = inv_mod(f[df], p);
    while r.len() > df {
        let k = r.len() - 1;
        let c = r[k] * lead_inv % p;
        for j in 0..=df {
            let t = c * f[j] % p;
            r[k - df + j] = (r[k - df + j] + p - t) % p;
        }
        trim(&mut r);
    }
    r
}

fn fp_mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            r[i + j] = (r[i + j] + x * y) % p;
        }
    }
    fp_rem(&r, f, p)
}

fn fp_gcd_is_one(a: &[u64], b: &[u64], p: u64) -> bool {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = fp_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a.len() == 1
}

/// Ben-Or: `f` of degree `d` is irreducible iff `gcd(f, x^{p^i} - x) = 1` for `i <= d/2`.
pub(crate) fn fp_irreducible(f: &[u64], p: u64) -> bool {
    let d = f.len() - 1;
    if d <= 1 {
        return d == 1;
    }
    let mut h = fp_rem(&[0, 1], f, p);
    for _ in 0..d / 2 {
        let mut acc = vec![1u64];
        let mut base = h.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = fp_mulmod(&acc, &base, f, p);
            }
            base = fp_mulmod(&base, &base, f, p);
            e >>= 1;
        }
        h = acc;
        let mut t = h.clone();
        t.resize(t.len().max(2), 0);
        t[1] = (t[1] + p - 1) % p;
        trim(&mut t);
        if t.is_empty() || !fp_gcd_is_one(f, &t, p) {
            return false;
        }
    }
    true
}

/// A field embedding `F_{p^k} -> F_{p^K}` sending the generator to the least root of its
/// minimal polynomial.
#[derive(Clone, Debug)]
pub struct Embedding {
    source: GaloisField,
    target: GaloisField,
    images: Vec<Gf>,
    inverse: Vec<(Gf, Gf)>,
}

impl Embedding {
    pub fn new(source: GaloisField, target: GaloisField) -> Result<Self> {
        if source.p() != target.p() || target.degree() % source.degree() != 0 {
            return Err(Error::MixedContexts);
        }
        let beta = if source.degree() == 1 {
            Gf(0)
        } else if source == target {
            source.generator()
        } else {
            let f: Vec<Gf> = source.modulus().iter().map(|&c| Gf(c)).collect();
            let poly = UniPoly::new(target.clone(), f);
            *poly
                .roots()?
                .iter()
                .min()
                .ok_or_else(|| Error::Inconsistent("minimal polynomial has no root".into()))?
        };
        Self::with_generator_image(source, target, beta)
    }

    /// The embedding sending the generator of `source` to `beta`, which must be a root of
    /// its modulus.
    pub fn with_generator_image(source: GaloisField, target: GaloisField, beta: Gf) -> Result<Self> {
        if source.p() != target.p() || target.degree() % source.degree() != 0 {
            return Err(Error::MixedContexts);
        }
        let images = if source.degree() == 1 {
            vec![Gf(1)]
        } else {
            let f: Vec<Gf> = source.modulus().iter().map(|&c| Gf(c)).collect();
            if !target.is_zero(&UniPoly::new(target.clone(), f).eval(&beta)) {
                return Err(Error::InvalidInput("generator image is not a root of the modulus".into()));
            }
            let mut v = Vec::new();
            let mut x = Gf(1);
            for _ in 0..source.degree() {
                v.push(x);
                x = target.mul(&x, &beta);
            }
            v
        };
        let mut emb = Embedding { source, target, images, inverse: Vec::new() };
        if emb.source.size() <= TABLE_LIMIT {
            let mut inv: Vec<(Gf, Gf)> =
                (0..emb.source.size()).map(|i| (emb.apply(Gf(i)), Gf(i))).collect();
            inv.sort();
            emb.inverse = inv;
        }
        Ok(emb)
    }

    pub fn source(&self) -> &GaloisField {
        &self.source
    }

    pub fn target(&self) -> &GaloisField {
        &self.target
    }

    pub fn apply(&self, a: Gf) -> Gf {
        let s = &self.source;
        if s.degree() == 1 {
            return Gf(a.0);
        }
        let mut acc = Gf(0);
        for (c, img) in s.coeffs(a).into_iter().zip(&self.images) {
            if c != 0 {
                acc = self.target.add(&acc, &self.target.mul(&Gf(c), img));
            }
        }
        acc
    }

    pub fn apply_all(&self, v: &[Gf]) -> Vec<Gf> {
        v.iter().map(|&a| self.apply(a)).collect()
    }

    /// Preimage of `b` when it lies in the image.
    pub fn preimage(&self, b: Gf) -> Option<Gf> {
        if self.source.degree() == 1 {
            return (b.0 < self.source.p()).then_some(b);
        }
        if self.inverse.is_empty() {
            return self.solve_preimage(b);
        }
        self.inverse
            .binary_search_by(|(img, _)| img.cmp(&b))
            .ok()
            .map(|i| self.inverse[i].1)
    }

    fn solve_preimage(&self, b: Gf) -> Option<Gf> {
        let p = self.source.p();
        let k = self.images.len();
        let cols: Vec<Vec<u64>> = self.images.iter().map(|&img| self.target.coeffs(img)).collect();
        let rhs = self.target.coeffs(b);
        let mut rows: Vec<Vec<u64>> =
            (0..rhs.len()).map(|i| cols.iter().map(|c| c[i]).chain([rhs[i]]).collect()).collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..k {
            let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
            rows.swap(r, piv);
            let inv = inv_mod(rows[r][c], p);
            for x in rows[r].iter_mut() {
                *x = *x * inv % p;
            }
            for i in 0..rows.len() {
                if i != r && rows[i][c] != 0 {
                    let f = rows[i][c];
                    for j in 0..=k {
                        rows[i][j] = (rows[i][j] + p * p - f * rows[r][j]) % p;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        if rows[r..].iter().any(|row| row[k] != 0) {
            return None;
        }
        let mut x = vec![0u64; k];
        for (i, &c) in pivots.iter().enumerate() {
            x[c] = rows[i][k];
        }
        Some(Gf(x.iter().rev().fold(0, |acc, &d| acc * p + d)))
    }
}
