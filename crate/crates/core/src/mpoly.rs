//! Sparse multivariate polynomials.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::field::Field;
use crate::{Error, Result};

pub type Exponent = Vec<u32>;

#[derive(Clone, Debug, PartialEq)]
pub struct MPoly<F: Field> {
    field: F,
    nvars: usize,
    terms: BTreeMap<Exponent, F::Elem>,
}

impl<F: Field> MPoly<F> {
    pub fn zero(field: F, nvars: usize) -> Self {
        MPoly { field, nvars, terms: BTreeMap::new() }
    }

    pub fn constant(field: F, nvars: usize, c: F::Elem) -> Self {
        let mut p = Self::zero(field, nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn var(field: F, nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let one = field.one();
        let mut p = Self::zero(field, nvars);
        p.add_term(e, one);
        p
    }

    pub fn monomial(field: F, exp: Exponent, c: F::Elem) -> Self {
        let mut p = Self::zero(field, exp.len());
        p.add_term(exp, c);
        p
    }

    pub fn from_terms(
        field: F,
        nvars: usize,
        terms: impl IntoIterator<Item = (Exponent, F::Elem)>,
    ) -> Result<Self> {
        let mut p = Self::zero(field, nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::LengthMismatch { expected: nvars, got: e.len() });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    /// Linear form `sum c_i x_i`.
    pub fn linear(field: F, coeffs: &[F::Elem]) -> Self {
        let n = coeffs.len();
        let terms = coeffs.iter().enumerate().map(|(i, c)| {
            let mut e = vec![0; n];
            e[i] = 1;
            (e, c.clone())
        });
        Self::from_terms(field, n, terms).expect("consistent arity")
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &F::Elem)> {
        self.terms.iter()
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &[u32]) -> F::Elem {
        self.terms.get(e).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn add_term(&mut self, e: Exponent, c: F::Elem) {
        let f = &self.field;
        if f.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                let s = f.add(v, &c);
                if f.is_zero(&s) {
                    self.terms.remove(&e);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_terms(|c| self.field.neg(c))
    }

    pub fn scale(&self, s: &F::Elem) -> Self {
        if self.field.is_zero(s) {
            return Self::zero(self.field.clone(), self.nvars);
        }
        self.map_terms(|c| self.field.mul(c, s))
    }

    fn map_terms(&self, g: impl Fn(&F::Elem) -> F::Elem) -> Self {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), g(c))).collect();
        MPoly { field: self.field.clone(), nvars: self.nvars, terms }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let f = &self.field;
        let mut out = Self::zero(f.clone(), self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, f.mul(c1, c2));
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(self.field.clone(), self.nvars, self.field.one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// The common degree of all terms; `None` for the zero polynomial or mixed degrees.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let d = degs.next()?;
        degs.all(|x| x == d).then_some(d)
    }

    pub fn eval(&self, x: &[F::Elem]) -> F::Elem {
        let f = &self.field;
        let mut acc = f.zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &k) in x.iter().zip(e) {
                if k > 0 {
                    t = f.mul(&t, &f.pow(xi, k as u64));
                }
            }
            acc = f.add(&acc, &t);
        }
        acc
    }

    pub fn partial(&self, i: usize) -> Self {
        let f = &self.field;
        let mut out = Self::zero(f.clone(), self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(e2, f.mul(c, &f.from_i64(e[i] as i64)));
        }
        out
    }

    /// Substitute `x_i -> images[i]`.
    pub fn compose(&self, images: &[MPoly<F>]) -> Result<Self> {
        if images.len() != self.nvars {
            return Err(Error::LengthMismatch { expected: self.nvars, got: images.len() });
        }
        let m = images.first().map_or(0, |p| p.nvars);
        let f = &self.field;
        let mut out = Self::zero(f.clone(), m);
        let mut powers: Vec<Vec<MPoly<F>>> = images
            .iter()
            .map(|p| vec![Self::constant(f.clone(), m, f.one()), p.clone()])
            .collect();
        for (e, c) in &self.terms {
            let mut t = Self::constant(f.clone(), m, c.clone());
            for (i, &k) in e.iter().enumerate() {
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap().mul(&images[i]);
                    powers[i].push(next);
                }
                if k > 0 {
                    t = t.mul(&powers[i][k as usize]);
                }
            }
            out = out.add(&t);
        }
        Ok(out)
    }

    pub fn map_field<G: Field>(&self, field: G, g: impl Fn(&F::Elem) -> G::Elem) -> MPoly<G> {
        let mut out = MPoly::zero(field, self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), g(c));
        }
        out
    }

    /// Divide by `x_i^k` when every term allows it.
    pub fn divide_by_var_power(&self, i: usize, k: u32) -> Option<Self> {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if e[i] < k {
                return None;
            }
            let mut e2 = e.clone();
            e2[i] -= k;
            terms.insert(e2, c.clone());
        }
        Some(MPoly { field: self.field.clone(), nvars: self.nvars, terms })
    }

    pub fn format(&self, names: &[&str]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let f = &self.field;
        let mut s = String::new();
        for (e, c) in self.terms.iter().rev() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| match k {
                    1 => names[i].to_string(),
                    _ => format!("{}^{}", names[i], k),
                })
                .collect();
            let cs = f.format_elem(c);
            let needs_paren = cs.contains('+') || cs[1..].contains('-');
            let cs = if needs_paren { format!("({cs})") } else { cs };
            let term = match (mono.is_empty(), cs.as_str()) {
                (true, _) => cs.clone(),
                (false, "1") => mono.join("*"),
                (false, "-1") => format!("-{}", mono.join("*")),
                _ => format!("{}*{}", cs, mono.join("*")),
            };
            if !s.is_empty() {
                if let Some(rest) = term.strip_prefix('-') {
                    s.push_str(" - ");
                    s.push_str(rest);
                    continue;
                }
                s.push_str(" + ");
            }
            s.push_str(&term);
        }
        s
    }

    /// Parse an expression with `+ - * ^`, parentheses, the given variable names, and
    /// field constants understood by [`Field::parse_elem`].
    pub fn parse(field: F, names: &[&str], s: &str) -> Result<Self> {
        let toks = tokenize(s)?;
        let mut p = Parser { field, names, toks, pos: 0 };
        let out = p.expr()?;
        if p.pos != p.toks.len() {
            return Err(Error::InvalidInput(format!("trailing input in `{s}`")));
        }
        Ok(out)
    }
}

/// All exponent vectors of total degree `d` in `n` variables, lexicographically descending.
pub fn monomials(n: usize, d: u32) -> Vec<Exponent> {
    fn rec(n: usize, d: u32, prefix: &mut Exponent, out: &mut Vec<Exponent>) {
        if n == 1 {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for k in (0..=d).rev() {
            prefix.push(k);
            rec(n - 1, d - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(n, d, &mut Vec::new(), &mut out);
    } else if d == 0 {
        out.push(Vec::new());
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Num(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if "+-*^()/".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            out.push(Tok::Num(cs[st..i].iter().collect()));
        } else if c.is_alphabetic() || c == '_' {
            let st = i;
            while i < cs.len() && (cs[i].is_alphanumeric() || cs[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(cs[st..i].iter().collect()));
        } else {
            return Err(Error::InvalidInput(format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

struct Parser<'a, F: Field> {
    field: F,
    names: &'a [&'a str],
    toks: Vec<Tok>,
    pos: usize,
}

impl<F: Field> Parser<'_, F> {
    fn peek_op(&self) -> Option<char> {
        match self.toks.get(self.pos) {
            Some(Tok::Op(c)) => Some(*c),
            _ => None,
        }
    }

    fn expr(&mut self) -> Result<MPoly<F>> {
        let n = self.names.len();
        let mut acc = MPoly::zero(self.field.clone(), n);
        let mut sign = match self.peek_op() {
            Some('-') => {
                self.pos += 1;
                true
            }
            Some('+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        loop {
            let t = self.term()?;
            acc = if sign { acc.sub(&t) } else { acc.add(&t) };
            match self.peek_op() {
                Some('+') => sign = false,
                Some('-') => sign = true,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<MPoly<F>> {
        let mut acc = self.factor()?;
        loop {
            match self.peek_op() {
                Some('*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.factor()?);
                }
                Some('/') => {
                    self.pos += 1;
                    let d = self.factor()?;
                    let c = match (d.nterms(), d.total_degree()) {
                        (1, Some(0)) => d.coeff(&vec![0; self.names.len()]),
                        _ => return Err(Error::InvalidInput("division by a non-constant".into())),
                    };
                    acc = acc.scale(&self.field.inv(&c)?);
                }
                Some('(') => acc = acc.mul(&self.factor()?),
                _ => match self.toks.get(self.pos) {
                    Some(Tok::Ident(_)) | Some(Tok::Num(_)) => acc = acc.mul(&self.factor()?),
                    _ => return Ok(acc),
                },
            }
        }
    }

    fn factor(&mut self) -> Result<MPoly<F>> {
        let base = self.atom()?;
        if self.peek_op() == Some('^') {
            self.pos += 1;
            match self.toks.get(self.pos) {
                Some(Tok::Num(k)) => {
                    let k: u32 = k.parse().map_err(|_| Error::InvalidInput("bad exponent".into()))?;
                    self.pos += 1;
                    return Ok(base.pow(k));
                }
                _ => return Err(Error::InvalidInput("expected exponent".into())),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MPoly<F>> {
        let n = self.names.len();
        let tok = self.toks.get(self.pos).cloned();
        self.pos += 1;
        match tok {
            Some(Tok::Op('(')) => {
                let e = self.expr()?;
                if self.peek_op() != Some(')') {
                    return Err(Error::InvalidInput("unbalanced parentheses".into()));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(Tok::Op('-')) => Ok(self.factor()?.neg()),
            Some(Tok::Num(s)) => {
                let c = self.field.parse_elem(&s)?;
                Ok(MPoly::constant(self.field.clone(), n, c))
            }
            Some(Tok::Ident(s)) => match self.names.iter().position(|&v| v == s) {
                Some(i) => Ok(MPoly::var(self.field.clone(), n, i)),
                None => {
                    let c = self.field.parse_elem(&s)?;
                    Ok(MPoly::constant(self.field.clone(), n, c))
                }
            },
            _ => Err(Error::InvalidInput("unexpected end of expression".into())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{GaloisField, Rationals};

    #[test]
    fn parse_and_format_roundtrip() {
        let q = Rationals;
        let names = ["x", "y", "z"];
        let f = MPoly::parse(q, &names, "x^3 - x*z^2").unwrap();
        assert_eq!(f.homogeneous_degree(), Some(3));
        assert_eq!(f.format(&names), "x^3 - x*z^2");
        let g = MPoly::parse(q, &names, "(x-y)*(x^2+x*y+y^2-z^2)").unwrap();
        let h = MPoly::parse(q, &names, "x^3-x*z^2-(y^3-y*z^2)").unwrap();
        assert_eq!(g, h);
    }

    #[test]
    fn extension_constants() {
        let k = GaloisField::new(2, 2, None).unwrap();
        let names = ["z", "w"];
        let f = MPoly::parse(k.clone(), &names, "(z+g*w)*(z+g^2*w)").unwrap();
        assert_eq!(f, MPoly::parse(k, &names, "z^2+z*w+w^2").unwrap());
    }

    #[test]
    fn monomial_count() {
        assert_eq!(monomials(3, 3).len(), 10);
        assert_eq!(monomials(4, 2).len(), 10);
        assert_eq!(monomials(3, 3)[0], vec![3, 0, 0]);
    }
}
