//! Homogeneous forms, linear systems through points, and their base loci.

mod baselocus;
mod hilbert;
mod irreducible;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::config::PointConfig;
use crate::field::Field;
use crate::linalg::{Echelon, Matrix};
use crate::mpoly::{monomials, Exponent, MPoly};
use crate::{Error, Result};

pub use baselocus::{
    base_locus, base_locus_points, compatible_embedding, eighth_base_point, ninth_base_point, BaseLocusGroup,
};
pub use hilbert::{hilbert_function, is_smooth_zero_dim, BaseScheme};
pub use irreducible::{
    incidence_irreducible, is_absolutely_irreducible, pencil_net_irreducible, IrreducibilityReport,
};

/// A homogeneous polynomial of fixed degree (the zero form is allowed).
#[derive(Clone, Debug, PartialEq)]
pub struct MultiForm<F: Field> {
    poly: MPoly<F>,
    degree: u32,
}

impl<F: Field> MultiForm<F> {
    pub fn new(poly: MPoly<F>, degree: u32) -> Result<Self> {
        if poly.terms().any(|(e, _)| e.iter().sum::<u32>() != degree) {
            return Err(Error::InvalidInput(format!("form is not homogeneous of degree {degree}")));
        }
        Ok(MultiForm { poly, degree })
    }

    /// A nonzero homogeneous polynomial, with its degree read off.
    pub fn from_poly(poly: MPoly<F>) -> Result<Self> {
        let d = poly
            .homogeneous_degree()
            .ok_or_else(|| Error::InvalidInput("expected a nonzero homogeneous polynomial".into()))?;
        Ok(MultiForm { poly, degree: d })
    }

    /// Coefficients listed in the order of [`monomials`].
    pub fn from_coeffs(field: F, nvars: usize, degree: u32, coeffs: &[F::Elem]) -> Result<Self> {
        let mons = monomials(nvars, degree);
        if mons.len() != coeffs.len() {
            return Err(Error::LengthMismatch { expected: mons.len(), got: coeffs.len() });
        }
        let poly = MPoly::from_terms(field, nvars, mons.into_iter().zip(coeffs.iter().cloned()))?;
        Ok(MultiForm { poly, degree })
    }

    pub fn coeff_vector(&self) -> Vec<F::Elem> {
        monomials(self.nvars(), self.degree).iter().map(|e| self.poly.coeff(e)).collect()
    }

    pub fn poly(&self) -> &MPoly<F> {
        &self.poly
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.poly.nvars()
    }

    pub fn field(&self) -> &F {
        self.poly.field()
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn eval(&self, x: &[F::Elem]) -> F::Elem {
        self.poly.eval(x)
    }

    pub fn map_field<G: Field>(&self, field: G, g: impl Fn(&F::Elem) -> G::Elem) -> MultiForm<G> {
        MultiForm { poly: self.poly.map_field(field, g), degree: self.degree }
    }
}

/// A linearly independent family of forms of common degree and arity.
#[derive(Clone, Debug, PartialEq)]
pub struct FormSystem<F: Field> {
    field: F,
    nvars: usize,
    degree: u32,
    basis: Vec<MultiForm<F>>,
}

impl<F: Field> FormSystem<F> {
    pub fn new(field: F, nvars: usize, degree: u32, basis: Vec<MultiForm<F>>) -> Result<Self> {
        for f in &basis {
            if f.nvars() != nvars || f.degree() != degree || *f.field() != field {
                return Err(Error::InvalidInput("basis forms differ in arity, degree or field".into()));
            }
        }
        let sys = FormSystem { field, nvars, degree, basis };
        if sys.coeff_matrix().rank() < sys.basis.len() {
            return Err(Error::InvalidInput("basis forms are linearly dependent".into()));
        }
        Ok(sys)
    }

    pub fn from_polys(polys: Vec<MPoly<F>>) -> Result<Self> {
        let first = polys.first().ok_or_else(|| Error::InvalidInput("empty system".into()))?;
        let (field, nvars) = (first.field().clone(), first.nvars());
        let forms = polys.into_iter().map(MultiForm::from_poly).collect::<Result<Vec<_>>>()?;
        let degree = forms[0].degree();
        Self::new(field, nvars, degree, forms)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[MultiForm<F>] {
        &self.basis
    }

    /// Rows are the coefficient vectors of the basis forms.
    pub fn coeff_matrix(&self) -> Matrix<F> {
        let n = monomials(self.nvars, self.degree).len();
        let rows = self.basis.iter().map(|f| f.coeff_vector()).collect();
        Matrix::from_rows_with_cols(self.field.clone(), n, rows).expect("same width")
    }

    /// `sum c_i f_i`.
    pub fn member(&self, c: &[F::Elem]) -> MultiForm<F> {
        let mut p = MPoly::zero(self.field.clone(), self.nvars);
        for (ci, f) in c.iter().zip(&self.basis) {
            p = p.add(&f.poly.scale(ci));
        }
        MultiForm { poly: p, degree: self.degree }
    }

    /// True when both systems span the same space of forms.
    pub fn same_span(&self, other: &Self) -> bool {
        self.nvars == other.nvars
            && self.degree == other.degree
            && self.coeff_matrix().same_row_space(&other.coeff_matrix())
    }

    /// Rank of the Jacobian matrix of the basis at `x`.
    pub fn jacobian_rank_at(&self, x: &[F::Elem]) -> usize {
        let rows = self
            .basis
            .iter()
            .map(|f| (0..self.nvars).map(|j| f.poly.partial(j).eval(x)).collect())
            .collect();
        Matrix::from_rows_with_cols(self.field.clone(), self.nvars, rows)
            .expect("same width")
            .rank()
    }

    pub fn vanishes_at(&self, x: &[F::Elem]) -> bool {
        self.basis.iter().all(|f| self.field.is_zero(&f.eval(x)))
    }

    /// Every member up to scalars, for a finite field: pairs of projective coefficient
    /// vectors and forms.
    pub fn members(&self) -> Vec<(Vec<F::Elem>, MultiForm<F>)> {
        projective_points(&self.field, self.dim())
            .into_iter()
            .map(|c| {
                let m = self.member(&c);
                (c, m)
            })
            .collect()
    }

    pub fn map_field<G: Field>(&self, field: G, g: impl Fn(&F::Elem) -> G::Elem) -> FormSystem<G> {
        let basis = self.basis.iter().map(|f| f.map_field(field.clone(), &g)).collect();
        FormSystem { field, nvars: self.nvars, degree: self.degree, basis }
    }

    /// Certifies that `points` is exactly the base scheme and that it is reduced: the system
    /// is a pencil of cubics in `P^2` or a net of quadrics in `P^3`, every point is a base
    /// point, there are as many as the Bezout number, and the Jacobian has full rank at each.
    pub fn is_reduced_base_locus(&self, points: &[Vec<F::Elem>]) -> bool {
        let expected = match (self.nvars, self.degree, self.dim()) {
            (3, 3, 2) => 9,
            (4, 2, 3) => 8,
            _ => return false,
        };
        points.len() == expected
            && points
                .iter()
                .all(|p| self.vanishes_at(p) && self.jacobian_rank_at(p) == self.nvars - 1)
    }
}

/// All points of `P^{m-1}` over a finite field, normalized, in enumeration order.
pub fn projective_points<F: Field>(field: &F, m: usize) -> Vec<Vec<F::Elem>> {
    let elems = field.elements();
    let mut out = Vec::new();
    for lead in 0..m {
        let tail = m - lead - 1;
        let count = (elems.len() as u64).pow(tail as u32);
        for mut idx in 0..count {
            let mut v = vec![field.zero(); m];
            v[lead] = field.one();
            for j in (lead + 1..m).rev() {
                v[j] = elems[(idx % elems.len() as u64) as usize].clone();
                idx /= elems.len() as u64;
            }
            out.push(v);
        }
    }
    out
}

pub(crate) fn binomial(n: u32, k: u32) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

/// Linear conditions, over the coefficients of degree-`degree` forms (in [`monomials`]
/// order), for vanishing to order at least `mult` at `point`: the coefficients of the local
/// expansion `F(p + t)`, `t` in the affine chart of `p`, of total degree below `mult`.
pub fn local_conditions<F: Field>(
    field: &F,
    degree: u32,
    point: &[F::Elem],
    mult: u32,
) -> Vec<Vec<F::Elem>> {
    let r = point.len();
    let mons = monomials(r, degree);
    local_conditions_on(field, &mons, degree, point, mult)
}

pub(crate) fn local_conditions_on<F: Field>(
    field: &F,
    mons: &[Exponent],
    degree: u32,
    point: &[F::Elem],
    mult: u32,
) -> Vec<Vec<F::Elem>> {
    let r = point.len();
    let Some(chart) = point.iter().position(|x| !field.is_zero(x)) else {
        return Vec::new();
    };
    let powers: Vec<Vec<F::Elem>> = point
        .iter()
        .map(|x| {
            let mut v = vec![field.one()];
            for _ in 0..degree {
                v.push(field.mul(v.last().unwrap(), x));
            }
            v
        })
        .collect();
    let top = mult.min(degree + 1);
    let mut rows = Vec::new();
    for s in 0..top {
        for short in monomials(r - 1, s) {
            let mut beta = short;
            beta.insert(chart, 0);
            let row = mons
                .iter()
                .map(|alpha| {
                    let mut c = field.one();
                    for i in 0..r {
                        if beta[i] > alpha[i] {
                            return field.zero();
                        }
                        let b = field.from_i64(binomial(alpha[i], beta[i]) as i64);
                        c = field.mul(&c, &field.mul(&b, &powers[i][(alpha[i] - beta[i]) as usize]));
                    }
                    c
                })
                .collect();
            rows.push(row);
        }
    }
    rows
}

/// Basis of the degree-`degree` forms in `r` variables vanishing to order `mults[i]` at
/// `points[i]`.
pub fn forms_through_points<F: Field>(
    field: &F,
    r: usize,
    degree: u32,
    points: &[Vec<F::Elem>],
    mults: &[u32],
) -> Result<FormSystem<F>> {
    if points.len() != mults.len() {
        return Err(Error::LengthMismatch { expected: points.len(), got: mults.len() });
    }
    let mons = monomials(r, degree);
    let mut rows = Vec::new();
    for (p, &m) in points.iter().zip(mults) {
        if p.len() != r {
            return Err(Error::LengthMismatch { expected: r, got: p.len() });
        }
        rows.extend(local_conditions_on(field, &mons, degree, p, m));
    }
    let cond = Matrix::from_rows_with_cols(field.clone(), mons.len(), rows)?;
    let ker = cond.kernel();
    let basis = ker
        .rows_vec()
        .into_iter()
        .map(|c| MultiForm::from_coeffs(field.clone(), r, degree, &c))
        .collect::<Result<Vec<_>>>()?;
    Ok(FormSystem { field: field.clone(), nvars: r, degree, basis })
}

/// `h^0(aH - sum b_i E_i)`: forms of degree `a` vanishing to order `max(b_i, 0)` at `p_i`.
pub fn h0<F: Field>(cfg: &PointConfig<F>, a: i64, b: &[i64]) -> Result<usize> {
    if b.len() != cfg.n() {
        return Err(Error::LengthMismatch { expected: cfg.n(), got: b.len() });
    }
    if a < 0 {
        return Ok(0);
    }
    let f = cfg.field();
    let mons = monomials(cfg.r(), a as u32);
    let mut ech = Echelon::new(f.clone(), mons.len());
    for (p, &bi) in cfg.points().iter().zip(b) {
        if bi <= 0 {
            continue;
        }
        for row in local_conditions_on(f, &mons, a as u32, p, bi as u32) {
            ech.insert(row);
            if ech.rank() == mons.len() {
                return Ok(0);
            }
        }
    }
    Ok(mons.len() - ech.rank())
}

/// Index of each monomial of the given degree, for building coefficient vectors.
pub(crate) fn monomial_index(nvars: usize, degree: u32) -> (Vec<Exponent>, BTreeMap<Exponent, usize>) {
    let mons = monomials(nvars, degree);
    let idx = mons.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
    (mons, idx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{GaloisField, Rationals};

    fn grid(p: u64) -> PointConfig<GaloisField> {
        let k = GaloisField::prime(p).unwrap();
        let mut pts = Vec::new();
        for x in [-1, 0, 1] {
            for y in [-1, 0, 1] {
                pts.push(vec![k.from_i64(x), k.from_i64(y), k.one()]);
            }
        }
        PointConfig::new(k, 3, pts).unwrap()
    }

    #[test]
    fn grid_pencil() {
        let g = grid(5);
        let k = g.field().clone();
        let sys = forms_through_points(&k, 3, 3, g.points(), &[1; 9]).unwrap();
        assert_eq!(sys.dim(), 2);
        let names = ["x", "y", "z"];
        let expected = FormSystem::from_polys(vec![
            MPoly::parse(k.clone(), &names, "x^3 - x*z^2").unwrap(),
            MPoly::parse(k, &names, "y^3 - y*z^2").unwrap(),
        ])
        .unwrap();
        assert!(sys.same_span(&expected));
        assert!(sys.is_reduced_base_locus(g.points()));
    }

    #[test]
    fn h0_basics() {
        let g = grid(5);
        assert_eq!(h0(&g, 3, &[1; 9]).unwrap(), 2);
        assert_eq!(h0(&g, 2, &[1; 9]).unwrap(), 0);
        assert_eq!(h0(&g, 1, &[0; 9]).unwrap(), 3);
        assert_eq!(h0(&g, -1, &[0; 9]).unwrap(), 0);
    }

    #[test]
    fn double_point_conditions() {
        // Cubics singular at [0:0:1]: no constant or linear terms in x, y.
        let q = Rationals;
        let p = vec![q.zero(), q.zero(), q.one()];
        let sys = forms_through_points(&q, 3, 3, &[p], &[2]).unwrap();
        assert_eq!(sys.dim(), 7);
        // Vanishing to order 4 at a point kills every cubic.
        let p = vec![q.one(), q.from_i64(2), q.from_i64(3)];
        assert_eq!(forms_through_points(&q, 3, 3, &[p], &[4]).unwrap().dim(), 0);
    }

    #[test]
    fn double_point_in_char_two() {
        // x^2 z + y^3 over F_2 is singular exactly at [0:0:1]; the cusp must be detected
        // without derivatives vanishing spuriously.
        let k = GaloisField::prime(2).unwrap();
        let p = vec![k.zero(), k.zero(), k.one()];
        let sys = forms_through_points(&k, 3, 2, &[p.clone()], &[2]).unwrap();
        assert_eq!(sys.dim(), 3);
        let names = ["x", "y", "z"];
        let f = MultiForm::from_poly(MPoly::parse(k.clone(), &names, "x^2").unwrap()).unwrap();
        let all = forms_through_points(&k, 3, 2, &[p], &[2]).unwrap();
        assert!(all.coeff_matrix().vstack(&Matrix::from_rows(k, vec![f.coeff_vector()]).unwrap()).unwrap().rank() == 3);
    }

    #[test]
    fn projective_point_count() {
        let k = GaloisField::prime(3).unwrap();
        assert_eq!(projective_points(&k, 3).len(), 13);
        assert_eq!(projective_points(&k, 2).len(), 4);
    }
}
