//! Linear representations of `G = (G_a)^{n-r}` on `A^{2n}` attached to point configurations,
//! their twisted forms over smaller fields, and invariant rings.
//!
//! Coordinates are `x_1..x_n, y_1..y_n` (polynomial variables `0..n` and `n..2n`). A subgroup
//! element with coordinates `t` in the chosen basis acts by `y -> y + sum_k t_k A_k x`, `x`
//! fixed. For the representation of a configuration `A_k = diag(v_k)`, with `v_k` running over
//! a basis of the kernel of the `r x n` point matrix.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::config::PointConfig;
use crate::field::{Embedding, Field, GaloisField, Gf};
use crate::forms::{binomial, local_conditions, MultiForm};
use crate::linalg::{Echelon, Matrix};
use crate::mpoly::{monomials, Exponent, MPoly};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct GaRepresentation<F: Field> {
    field: F,
    point_matrix: Matrix<F>,
    subgroup_basis: Matrix<F>,
    generators: Vec<Matrix<F>>,
    blocks: Vec<usize>,
    diagonal: bool,
}

/// The representation attached to `cfg`, using its normalized points as columns.
pub fn build_representation<F: Field>(cfg: &PointConfig<F>) -> Result<GaRepresentation<F>> {
    GaRepresentation::from_point_matrix(cfg.matrix())
}

fn diag<F: Field>(field: &F, v: &[F::Elem]) -> Matrix<F> {
    let mut m = Matrix::zeros(field.clone(), v.len(), v.len());
    for (i, x) in v.iter().enumerate() {
        m.set(i, i, x.clone());
    }
    m
}

impl<F: Field> GaRepresentation<F> {
    /// The representation whose subgroup is the kernel of `m` (an `r x n` matrix of rank `r < n`
    /// whose columns are point representatives).
    pub fn from_point_matrix(m: Matrix<F>) -> Result<Self> {
        let (r, n) = (m.nrows(), m.ncols());
        if r == 0 || n <= r {
            return Err(Error::InvalidInput(format!("need n > r > 0, got r = {r}, n = {n}")));
        }
        if m.rank() < r {
            return Err(Error::Degenerate("point matrix does not have full rank".into()));
        }
        let field = m.field().clone();
        let subgroup_basis = m.kernel().row_basis();
        let generators = subgroup_basis.rows_vec().iter().map(|v| diag(&field, v)).collect();
        Ok(GaRepresentation {
            field,
            point_matrix: m,
            subgroup_basis,
            generators,
            blocks: vec![1; n],
            diagonal: true,
        })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.point_matrix.ncols()
    }

    pub fn r(&self) -> usize {
        self.point_matrix.nrows()
    }

    /// Dimension `n - r` of the acting group.
    pub fn group_dim(&self) -> usize {
        self.subgroup_basis.nrows()
    }

    pub fn point_matrix(&self) -> &Matrix<F> {
        &self.point_matrix
    }

    /// Rows span the subgroup (for twisted forms: in the twisted coordinates).
    pub fn subgroup_basis(&self) -> &Matrix<F> {
        &self.subgroup_basis
    }

    /// The `n x n` matrices `A_k`.
    pub fn generators(&self) -> &[Matrix<F>] {
        &self.generators
    }

    /// Sizes of the diagonal blocks of the generators.
    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn is_diagonal(&self) -> bool {
        self.diagonal
    }

    /// Conjugate by the torus element `diag(c)`: columns become `c_i p_i`.
    pub fn rescaled(&self, c: &[F::Elem]) -> Result<Self> {
        if !self.diagonal {
            return Err(Error::Unsupported("rescaling a twisted representation".into()));
        }
        if c.len() != self.n() {
            return Err(Error::LengthMismatch { expected: self.n(), got: c.len() });
        }
        if c.iter().any(|x| self.field.is_zero(x)) {
            return Err(Error::DivisionByZero);
        }
        Self::from_point_matrix(self.point_matrix.mul(&diag(&self.field, c))?)
    }

    /// Generators commute, the subgroup has dimension `n - r` and, for diagonal
    /// representations, lies in the kernel of the point matrix.
    pub fn check_structure(&self) -> Result<bool> {
        if self.group_dim() != self.n() - self.r() || self.generators.len() != self.group_dim() {
            return Ok(false);
        }
        for a in &self.generators {
            for b in &self.generators {
                if a.mul(b)? != b.mul(a)? {
                    return Ok(false);
                }
            }
        }
        if self.diagonal {
            for v in self.subgroup_basis.rows_vec() {
                if self.point_matrix.mul_vec(&v)?.iter().any(|x| !self.field.is_zero(x)) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `(x, y) -> (x, y + sum_k t_k A_k x)`.
    pub fn group_act(&self, t: &[F::Elem], x: &[F::Elem], y: &[F::Elem]) -> Result<(Vec<F::Elem>, Vec<F::Elem>)> {
        let f = &self.field;
        if t.len() != self.group_dim() {
            return Err(Error::LengthMismatch { expected: self.group_dim(), got: t.len() });
        }
        if x.len() != self.n() || y.len() != self.n() {
            return Err(Error::LengthMismatch { expected: self.n(), got: x.len().min(y.len()) });
        }
        let mut out = y.to_vec();
        for (tk, a) in t.iter().zip(&self.generators) {
            for (o, ax) in out.iter_mut().zip(a.mul_vec(x)?) {
                *o = f.add(o, &f.mul(tk, &ax));
            }
        }
        Ok((x.to_vec(), out))
    }

    /// Invariance of `f` (in `2n` variables) under the whole group scheme: `f(x, y + sum t_k A_k x)`
    /// equals `f(x, y)` as a polynomial in `x, y` and the formal parameters `t`.
    pub fn is_invariant(&self, f: &MPoly<F>) -> Result<bool> {
        let n = self.n();
        if f.nvars() != 2 * n {
            return Err(Error::LengthMismatch { expected: 2 * n, got: f.nvars() });
        }
        let fld = &self.field;
        let total = 2 * n + self.group_dim();
        let var = |i| MPoly::var(fld.clone(), total, i);
        let mut images: Vec<MPoly<F>> = (0..2 * n).map(var).collect();
        for (k, a) in self.generators.iter().enumerate() {
            let tau = var(2 * n + k);
            for i in 0..n {
                let lin = MPoly::linear(fld.clone(), &{
                    let mut c = vec![fld.zero(); total];
                    c[..n].clone_from_slice(a.row(i));
                    c
                });
                images[n + i] = images[n + i].add(&tau.mul(&lin));
            }
        }
        let moved = f.compose(&images)?;
        let fixed = f.compose(&(0..2 * n).map(var).collect::<Vec<_>>())?;
        Ok(moved == fixed)
    }

    fn require_diagonal(&self) -> Result<()> {
        if self.diagonal {
            Ok(())
        } else {
            Err(Error::Unsupported("invariant dimensions need the diagonal representation".into()))
        }
    }

    /// Linear conditions for invariance on forms `sum_e f_e prod x_i^(c_i - e_i) y_i^(e_i)` with
    /// `y`-exponents `e` in `support` (all of total degree `a`). One row per coefficient of the
    /// expansion in `x, y, t` of positive degree in `t`.
    fn invariance_conditions(&self, support: &[Exponent]) -> Matrix<F> {
        let f = &self.field;
        let n = self.n();
        let m = self.group_dim();
        let s: Vec<MPoly<F>> = (0..n)
            .map(|i| MPoly::linear(f.clone(), &self.subgroup_basis.col(i)))
            .collect();
        let mut powers: Vec<Vec<MPoly<F>>> =
            s.iter().map(|p| vec![MPoly::constant(f.clone(), m, f.one()), p.clone()]).collect();
        let mut rows: alloc::collections::BTreeMap<(Exponent, Exponent), Vec<F::Elem>> = Default::default();
        for (col, e) in support.iter().enumerate() {
            let mut j = vec![0u32; n];
            loop {
                let mut i = 0;
                while i < n && j[i] == e[i] {
                    j[i] = 0;
                    i += 1;
                }
                if i == n {
                    break;
                }
                j[i] += 1;
                let mut c = f.one();
                for i in 0..n {
                    c = f.mul(&c, &f.from_i64(binomial(e[i], j[i]) as i64));
                }
                if f.is_zero(&c) {
                    continue;
                }
                let mut prod = MPoly::constant(f.clone(), m, c);
                for i in 0..n {
                    if j[i] == 0 {
                        continue;
                    }
                    while powers[i].len() <= j[i] as usize {
                        let next = powers[i].last().unwrap().mul(&s[i]);
                        powers[i].push(next);
                    }
                    prod = prod.mul(&powers[i][j[i] as usize]);
                }
                let rest: Exponent = e.iter().zip(&j).map(|(a, b)| a - b).collect();
                for (beta, coef) in prod.terms() {
                    let row = rows
                        .entry((rest.clone(), beta.clone()))
                        .or_insert_with(|| vec![f.zero(); support.len()]);
                    row[col] = f.add(&row[col], coef);
                }
            }
        }
        Matrix::from_rows_with_cols(f.clone(), support.len(), rows.into_values().collect())
            .expect("rows have the support width")
    }

    /// Dimension of the invariants of pair-degree `c` (degree `c_i` in `(x_i, y_i)`) and
    /// `y`-degree `a`.
    pub fn invariant_dimension(&self, c: &[u32], a: u32) -> Result<usize> {
        self.require_diagonal()?;
        if c.len() != self.n() {
            return Err(Error::LengthMismatch { expected: self.n(), got: c.len() });
        }
        let support: Vec<Exponent> = monomials(self.n(), a)
            .into_iter()
            .filter(|e| e.iter().zip(c).all(|(ei, ci)| ei <= ci))
            .collect();
        if support.is_empty() {
            return Ok(0);
        }
        Ok(support.len() - self.invariance_conditions(&support).rank())
    }

    /// The forms `u_j = sum_i M_ji y_i prod_{k != i} x_k`.
    pub fn u_forms(&self) -> Vec<MPoly<F>> {
        let f = &self.field;
        let n = self.n();
        (0..self.r())
            .map(|j| {
                let mut u = MPoly::zero(f.clone(), 2 * n);
                for i in 0..n {
                    let mut e = vec![1u32; n];
                    e[i] = 0;
                    e.resize(2 * n, 0);
                    e[n + i] = 1;
                    u.add_term(e, self.point_matrix.get(j, i).clone());
                }
                u
            })
            .collect()
    }

    /// The invariant `F(u_1..u_r) / prod x_i^(b_i)` of pair-degree `a - b_i` and `y`-degree `a`
    /// attached to a form `F` of degree `a` with multiplicity `b_i` at `p_i` (negative `b_i`
    /// multiply by `x_i^(-b_i)`).
    pub fn section_to_invariant(&self, form: &MultiForm<F>, b: &[i64]) -> Result<MPoly<F>> {
        self.require_diagonal()?;
        let n = self.n();
        if form.nvars() != self.r() {
            return Err(Error::LengthMismatch { expected: self.r(), got: form.nvars() });
        }
        if b.len() != n {
            return Err(Error::LengthMismatch { expected: n, got: b.len() });
        }
        let f = &self.field;
        let coeffs = form.coeff_vector();
        for (i, &bi) in b.iter().enumerate() {
            if bi <= 0 {
                continue;
            }
            let p = self.point_matrix.col(i);
            for row in local_conditions(f, form.degree(), &p, bi as u32) {
                let v = row.iter().zip(&coeffs).fold(f.zero(), |s, (x, y)| f.add(&s, &f.mul(x, y)));
                if !f.is_zero(&v) {
                    return Err(Error::InvalidInput(format!(
                        "form does not vanish to order {bi} at point {}",
                        i + 1
                    )));
                }
            }
        }
        let mut g = form.poly().compose(&self.u_forms())?;
        for (i, &bi) in b.iter().enumerate() {
            if bi > 0 {
                g = g
                    .divide_by_var_power(i, bi as u32)
                    .ok_or_else(|| Error::Inconsistent(format!("F(u) not divisible by x{}^{bi}", i + 1)))?;
            } else if bi < 0 {
                let mut e = vec![0u32; 2 * n];
                e[i] = (-bi) as u32;
                g = g.mul(&MPoly::monomial(f.clone(), e, f.one()));
            }
        }
        Ok(g)
    }
}

/// Variable names `x1..xn, y1..yn`.
pub fn variable_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).chain((1..=n).map(|i| format!("y{i}"))).collect()
}

/// Render generator `k` as a block diagonal matrix, e.g. `diag(1, [[0,1],[1,1]], 0)`.
pub fn render_generator<F: Field>(rep: &GaRepresentation<F>, k: usize) -> String {
    let a = &rep.generators[k];
    let f = &rep.field;
    let mut parts = Vec::new();
    let mut start = 0;
    for &s in &rep.blocks {
        if s == 1 {
            parts.push(f.format_elem(a.get(start, start)));
        } else {
            let rows: Vec<String> = (start..start + s)
                .map(|i| {
                    let cells: Vec<String> = (start..start + s).map(|j| f.format_elem(a.get(i, j))).collect();
                    format!("[{}]", cells.join(","))
                })
                .collect();
            parts.push(format!("[{}]", rows.join(",")));
        }
        start += s;
    }
    format!("diag({})", parts.join(", "))
}

/// Bounds of a Mukai cross-check: `0 <= a <= a_max`, `0 <= c_i <= c_max`, and cells whose
/// restricted monomial basis exceeds `basis_limit` are skipped.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MukaiBox {
    pub a_max: u32,
    pub c_max: u32,
    pub basis_limit: usize,
}

impl Default for MukaiBox {
    fn default() -> Self {
        MukaiBox { a_max: 3, c_max: 3, basis_limit: 10_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MukaiRow {
    pub c: Vec<u32>,
    pub a: u32,
    pub invariant_dim: usize,
    pub h0: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MukaiTable {
    /// Checked cells (all of them when requested, otherwise only mismatches).
    pub rows: Vec<MukaiRow>,
    /// Number of cells of the box covered.
    pub cells: u64,
    /// Distinct cells actually computed (cells agreeing after `c_i -> min(c_i, a)` are shared).
    pub distinct: u64,
    pub skipped: u64,
    pub mismatches: u64,
}

impl MukaiTable {
    pub fn all_equal(&self) -> bool {
        self.mismatches == 0
    }
}

/// Compare `dim` of the invariants of pair-degree `c` and `y`-degree `a` with
/// `h^0(aH - sum (a - c_i) E_i)` on every cell of the box. Both sides only depend on
/// `min(c_i, a)`.
pub fn mukai_cross_check<F: Field>(
    rep: &GaRepresentation<F>,
    cfg: &PointConfig<F>,
    bx: MukaiBox,
    keep_rows: bool,
) -> Result<MukaiTable> {
    rep.require_diagonal()?;
    let n = rep.n();
    if cfg.n() != n || cfg.r() != rep.r() {
        return Err(Error::InvalidInput("configuration does not match the representation".into()));
    }
    let f = rep.field();
    let mut table = MukaiTable { rows: Vec::new(), cells: 0, distinct: 0, skipped: 0, mismatches: 0 };
    for a in 0..=bx.a_max {
        let mons = monomials(n, a);
        let kernel = rep.invariance_conditions(&mons).kernel();
        let kdim = kernel.nrows();
        let kcols = kernel.cols_vec();
        let forms = monomials(cfg.r(), a);
        let local: Vec<Vec<Vec<Vec<F::Elem>>>> = cfg
            .points()
            .iter()
            .map(|p| (0..=a).map(|b| local_conditions(f, a, p, b)).collect())
            .collect();
        let top = a.min(bx.c_max);
        let mut c = vec![0u32; n];
        loop {
            let weight: u64 = c
                .iter()
                .map(|&ci| if ci == a && a < bx.c_max { (bx.c_max - a + 1) as u64 } else { 1 })
                .product();
            table.cells += weight;
            let inside: Vec<bool> = mons.iter().map(|e| e.iter().zip(&c).all(|(ei, ci)| ei <= ci)).collect();
            if inside.iter().filter(|&&b| b).count() > bx.basis_limit {
                table.skipped += weight;
            } else {
                table.distinct += 1;
                let mut ech = Echelon::new(f.clone(), kdim);
                for (col, ins) in kcols.iter().zip(&inside) {
                    if ech.rank() == kdim {
                        break;
                    }
                    if !ins {
                        ech.insert(col.clone());
                    }
                }
                let inv = kdim - ech.rank();
                let mut hech = Echelon::new(f.clone(), forms.len());
                for (i, &ci) in c.iter().enumerate() {
                    for row in &local[i][(a - ci) as usize] {
                        if hech.rank() == forms.len() {
                            break;
                        }
                        hech.insert(row.clone());
                    }
                }
                let h = forms.len() - hech.rank();
                if inv != h {
                    table.mismatches += weight;
                }
                if keep_rows || inv != h {
                    table.rows.push(MukaiRow { c: c.clone(), a, invariant_dim: inv, h0: h });
                }
            }
            let mut i = 0;
            while i < n && c[i] == top {
                c[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
            c[i] += 1;
        }
    }
    Ok(table)
}

/// A twisted form over `base` of a representation defined over an extension.
#[derive(Clone, Debug)]
pub struct Twist {
    /// The representation over `base`.
    pub rep: GaRepresentation<GaloisField>,
    pub extension: GaloisField,
    pub embedding: Embedding,
    /// Columns: a `base`-basis of the Frobenius-fixed vectors of `extension^n`.
    pub basis: Matrix<GaloisField>,
    /// Frobenius permutation of the points.
    pub frobenius: Vec<usize>,
    pub orbits: Vec<Vec<usize>>,
}

/// Descend a diagonal representation over `F_{q^d}` to `F_q`. The columns of the point matrix
/// must be permuted by the `q`-Frobenius (true for normalized points of a configuration stable
/// under Galois). Each Frobenius orbit `i, s(i), ..` of size `k` contributes the fixed vectors
/// `sum_t Frob^t(l^u) e_{s^t(i)}`, `u < k`, with `l` a primitive element of `F_{q^k}`.
pub fn twist_representation(rep: &GaRepresentation<GaloisField>, base: &GaloisField) -> Result<Twist> {
    rep.require_diagonal()?;
    let big = rep.field().clone();
    let emb = Embedding::new(base.clone(), big.clone())?;
    let e = base.degree();
    let frob = |a: Gf| big.frobenius_pow(a, e);
    let n = rep.n();
    let cols = rep.point_matrix.cols_vec();
    let mut perm = vec![0; n];
    for (i, col) in cols.iter().enumerate() {
        let image: Vec<Gf> = col.iter().map(|&a| frob(a)).collect();
        perm[i] = cols.iter().position(|c| *c == image).ok_or_else(|| {
            Error::NotGaloisStable(format!("Frobenius image of column {} is not a column", i + 1))
        })?;
    }
    let mut seen = vec![false; n];
    let mut orbits = Vec::new();
    for i in 0..n {
        if seen[i] {
            continue;
        }
        let mut orbit = vec![i];
        seen[i] = true;
        let mut j = perm[i];
        while j != i {
            seen[j] = true;
            orbit.push(j);
            j = perm[j];
        }
        orbits.push(orbit);
    }
    let q = base.size();
    let prim = big.primitive_element();
    let mut bcols = Vec::new();
    for orbit in &orbits {
        let k = orbit.len() as u32;
        let lambda = big.pow(&prim, (big.size() - 1) / (q.pow(k) - 1));
        for u in 0..k {
            let mut v = vec![big.zero(); n];
            let mut x = big.pow(&lambda, u as u64);
            for &idx in orbit {
                v[idx] = x;
                x = frob(x);
            }
            bcols.push(v);
        }
    }
    let b = Matrix::from_cols(big.clone(), bcols)?;
    let binv = b.inverse()?;
    let pull = |m: &Matrix<GaloisField>| -> Result<Matrix<GaloisField>> {
        let mut out = Matrix::zeros(base.clone(), m.nrows(), m.ncols());
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                let x = emb
                    .preimage(*m.get(i, j))
                    .ok_or_else(|| Error::Inconsistent("twisted entry not in the base field".into()))?;
                out.set(i, j, x);
            }
        }
        Ok(out)
    };
    let mk = pull(&rep.point_matrix.mul(&b)?)?;
    let mut twisted = GaRepresentation::from_point_matrix(mk)?;
    let mut gens = Vec::new();
    for v in twisted.subgroup_basis.rows_vec() {
        let t = b.mul_vec(&emb.apply_all(&v))?;
        if rep.point_matrix.mul_vec(&t)?.iter().any(|x| !big.is_zero(x)) {
            return Err(Error::Inconsistent("twisted subgroup leaves the kernel".into()));
        }
        gens.push(pull(&binv.mul(&diag(&big, &t))?.mul(&b)?)?);
    }
    twisted.generators = gens;
    twisted.blocks = orbits.iter().map(Vec::len).collect();
    twisted.diagonal = twisted.blocks.iter().all(|&s| s == 1);
    Ok(Twist { rep: twisted, extension: big, embedding: emb, basis: b, frobenius: perm, orbits })
}

impl Twist {
    /// After base change, `basis` conjugates every generator to a diagonal matrix, and these
    /// diagonals span the subgroup of `diag_rep`.
    pub fn conjugates_to(&self, diag_rep: &GaRepresentation<GaloisField>) -> Result<bool> {
        let big = &self.extension;
        if diag_rep.field() != big || diag_rep.n() != self.rep.n() {
            return Ok(false);
        }
        let binv = self.basis.inverse()?;
        let mut diagonals = Vec::new();
        for a in self.rep.generators() {
            let ak = a.map(big.clone(), |x| self.embedding.apply(*x));
            let d = self.basis.mul(&ak)?.mul(&binv)?;
            let n = d.nrows();
            for i in 0..n {
                for j in 0..n {
                    if i != j && !big.is_zero(d.get(i, j)) {
                        return Ok(false);
                    }
                }
            }
            diagonals.push((0..n).map(|i| *d.get(i, i)).collect());
        }
        let span = Matrix::from_rows_with_cols(big.clone(), self.rep.n(), diagonals)?;
        Ok(span.rank() == self.rep.group_dim() && span.same_row_space(diag_rep.subgroup_basis()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::forms::forms_through_points;
    use proptest::prelude::*;

    fn grid(f: &GaloisField) -> Matrix<GaloisField> {
        let rows: [&[i64]; 3] = [
            &[-1, -1, -1, 0, 0, 0, 1, 1, 1],
            &[-1, 0, 1, -1, 0, 1, -1, 0, 1],
            &[1; 9],
        ];
        Matrix::from_i64(f.clone(), &rows)
    }

    fn grid_cfg(f: &GaloisField) -> PointConfig<GaloisField> {
        PointConfig::from_matrix(&grid(f)).unwrap()
    }

    fn elem(f: &GaloisField, s: &str) -> Gf {
        f.parse_elem(s).unwrap()
    }

    fn mat(f: &GaloisField, rows: &[&[&str]]) -> Matrix<GaloisField> {
        Matrix::from_rows(f.clone(), rows.iter().map(|r| r.iter().map(|s| elem(f, s)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn grid_subgroup_is_kernel() {
        let f = GaloisField::prime(5).unwrap();
        let rep = GaRepresentation::from_point_matrix(grid(&f)).unwrap();
        assert_eq!((rep.n(), rep.r(), rep.group_dim()), (9, 3, 6));
        assert!(rep.check_structure().unwrap());
        assert!(rep.point_matrix().mul(&rep.subgroup_basis().transpose()).unwrap().is_zero());
        let normalized = build_representation(&grid_cfg(&f)).unwrap();
        assert!(normalized.check_structure().unwrap());
        assert!(!normalized.subgroup_basis().same_row_space(rep.subgroup_basis()));
    }

    #[test]
    fn cube_subgroup_after_cayley_bacharach_weights() {
        let f = GaloisField::prime(7).unwrap();
        let mut cols = Vec::new();
        let mut weights = Vec::new();
        for x in 0..2i64 {
            for y in 0..2 {
                for z in 0..2 {
                    cols.push(vec![f.from_i64(x), f.from_i64(y), f.from_i64(z), f.one()]);
                    weights.push(f.from_i64(if (x + y + z) % 2 == 0 { 1 } else { -1 }));
                }
            }
        }
        let m = Matrix::from_cols(f.clone(), cols).unwrap();
        let rep = GaRepresentation::from_point_matrix(m.clone()).unwrap();
        let weighted = rep.rescaled(&weights).unwrap();
        assert!(weighted.subgroup_basis().same_row_space(&m));
        assert!(!rep.subgroup_basis().same_row_space(&m));
    }

    #[test]
    fn group_action_and_invariants() {
        let f = GaloisField::prime(5).unwrap();
        let rep = GaRepresentation::from_point_matrix(grid(&f)).unwrap();
        let x: Vec<Gf> = (1..=9).map(|i| f.from_i64(i)).collect();
        let y: Vec<Gf> = (1..=9).map(|i| f.from_i64(2 * i)).collect();
        let t: Vec<Gf> = (0..6).map(|i| f.from_i64(i + 1)).collect();
        let (x2, y2) = rep.group_act(&t, &x, &y).unwrap();
        assert_eq!(x2, x);
        let neg: Vec<Gf> = t.iter().map(|a| f.neg(a)).collect();
        assert_eq!(rep.group_act(&neg, &x2, &y2).unwrap().1, y);

        let u = rep.u_forms();
        for uj in &u {
            assert!(rep.is_invariant(uj).unwrap());
            let v = uj.eval(&[x.clone(), y.clone()].concat());
            assert_eq!(uj.eval(&[x2.clone(), y2.clone()].concat()), v);
        }
        let y1 = MPoly::var(f.clone(), 18, 9);
        assert!(!rep.is_invariant(&y1).unwrap());
        assert!(rep.is_invariant(&MPoly::var(f.clone(), 18, 0)).unwrap());
    }

    #[test]
    fn invariant_dimensions_match_h0_on_small_cells() {
        let f = GaloisField::prime(5).unwrap();
        let cfg = grid_cfg(&f);
        let rep = build_representation(&cfg).unwrap();
        let cases: [(&[u32], u32); 5] = [
            (&[0; 9], 0),
            (&[1; 9], 1),
            (&[3; 9], 3),
            (&[2, 2, 2, 2, 2, 2, 2, 2, 2], 3),
            (&[1, 2, 3, 0, 1, 2, 3, 0, 1], 2),
        ];
        for (c, a) in cases {
            let b: Vec<i64> = c.iter().map(|&ci| a as i64 - ci as i64).collect();
            assert_eq!(
                rep.invariant_dimension(c, a).unwrap(),
                crate::forms::h0(&cfg, a as i64, &b).unwrap(),
                "c = {c:?}, a = {a}"
            );
        }
        assert_eq!(rep.invariant_dimension(&[3; 9], 3).unwrap(), 10);
        assert_eq!(rep.invariant_dimension(&[2; 9], 3).unwrap(), 2);
    }

    #[test]
    fn sections_become_invariants() {
        let f = GaloisField::prime(5).unwrap();
        let cfg = grid_cfg(&f);
        let rep = build_representation(&cfg).unwrap();
        let pencil = forms_through_points(&f, 3, 3, cfg.points(), &[1; 9]).unwrap();
        for form in pencil.basis() {
            let g = rep.section_to_invariant(form, &[1; 9]).unwrap();
            assert!(rep.is_invariant(&g).unwrap());
            assert!(g.terms().all(|(e, _)| (0..9).all(|i| e[i] + e[9 + i] == 2)));
        }
        let line = MultiForm::from_poly(MPoly::var(f.clone(), 3, 0)).unwrap();
        assert!(rep.section_to_invariant(&line, &[1; 9]).is_err());
        let g = rep.section_to_invariant(&line, &[0; 9]).unwrap();
        assert!(rep.is_invariant(&g).unwrap());
    }

    #[test]
    fn rational_representation() {
        let q = Rationals;
        let cfg = PointConfig::from_i64(q.clone(), 3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1], &[1, 2, 3]])
            .unwrap();
        let rep = build_representation(&cfg).unwrap();
        assert!(rep.check_structure().unwrap());
        assert_eq!(rep.invariant_dimension(&[1; 5], 1).unwrap(), 3);
        assert_eq!(rep.invariant_dimension(&[1, 1, 1, 1, 0], 2).unwrap(), 0);
        assert_eq!(crate::forms::h0(&cfg, 2, &[1, 1, 1, 1, 2]).unwrap(), 0);
        assert_eq!(rep.invariant_dimension(&[1, 1, 1, 2, 2], 2).unwrap(), 3);
    }

    #[test]
    fn mukai_small_box() {
        let f = GaloisField::prime(7).unwrap();
        let cfg = PointConfig::from_i64(f.clone(), 3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1], &[1, 2, 3]])
            .unwrap();
        let rep = build_representation(&cfg).unwrap();
        let t = mukai_cross_check(&rep, &cfg, MukaiBox { a_max: 3, c_max: 3, basis_limit: 10_000 }, true).unwrap();
        assert!(t.all_equal());
        assert_eq!(t.cells, 4 * 4u64.pow(5));
        for row in t.rows.iter().step_by(37) {
            assert_eq!(rep.invariant_dimension(&row.c, row.a).unwrap(), row.invariant_dim);
        }
        let tight = mukai_cross_check(&rep, &cfg, MukaiBox { a_max: 2, c_max: 3, basis_limit: 3 }, false).unwrap();
        assert!(tight.skipped > 0);
    }

    #[test]
    fn f4_twist_matches_printed_blocks() {
        let f4 = GaloisField::new(2, 2, None).unwrap();
        let f2 = GaloisField::prime(2).unwrap();
        let pts = [
            ["1", "1", "1"],
            ["1", "g", "1"],
            ["1", "g^2", "1"],
            ["g", "1", "1"],
            ["g^2", "1", "1"],
            ["g", "g", "1"],
            ["g^2", "g^2", "1"],
            ["g", "g^2", "1"],
            ["g^2", "g", "1"],
        ];
        let cols = pts.iter().map(|p| p.iter().map(|s| elem(&f4, s)).collect()).collect();
        let m = Matrix::from_cols(f4.clone(), cols).unwrap();
        let rep = GaRepresentation::from_point_matrix(m).unwrap();
        let kernel = mat(
            &f4,
            &[
                &["1", "g", "g^2", "0", "0", "0", "0", "0", "0"],
                &["1", "0", "0", "g", "g^2", "0", "0", "0", "0"],
                &["1", "0", "0", "0", "0", "g", "g^2", "0", "0"],
                &["0", "1", "1", "1", "1", "1", "1", "0", "0"],
                &["0", "0", "0", "0", "0", "1", "1", "1", "1"],
                &["1", "1", "1", "0", "0", "0", "0", "g", "g^2"],
            ],
        );
        assert!(kernel.same_row_space(rep.subgroup_basis()));
        let tw = twist_representation(&rep, &f2).unwrap();
        assert_eq!(tw.rep.blocks(), &[1, 2, 2, 2, 2]);
        assert!(tw.rep.check_structure().unwrap());
        assert!(tw.conjugates_to(&rep).unwrap());
        let mut expected = Matrix::zeros(f2.clone(), 9, 9);
        expected.set(0, 0, f2.one());
        expected.set(1, 2, f2.one());
        expected.set(2, 1, f2.one());
        expected.set(2, 2, f2.one());
        let span = Matrix::from_rows(f2.clone(), tw.rep.generators().iter().map(flatten).collect()).unwrap();
        let mut with = span.rows_vec();
        with.push(flatten(&expected));
        assert_eq!(Matrix::from_rows(f2.clone(), with).unwrap().rank(), 6);
    }

    fn flatten(m: &Matrix<GaloisField>) -> Vec<Gf> {
        m.rows_vec().concat()
    }

    #[test]
    fn f9_twist_block() {
        let f9 = GaloisField::new(3, 2, None).unwrap();
        let f3 = GaloisField::prime(3).unwrap();
        let pts = [
            ["-1", "-1"],
            ["-1", "g"],
            ["-1", "-g"],
            ["g", "-1"],
            ["-g", "-1"],
            ["g", "g"],
            ["-g", "-g"],
            ["g", "-g"],
            ["-g", "g"],
        ];
        let cols = pts.iter().map(|p| vec![elem(&f9, p[0]), elem(&f9, p[1]), f9.one()]).collect();
        let rep = GaRepresentation::from_point_matrix(Matrix::from_cols(f9.clone(), cols).unwrap()).unwrap();
        let tw = twist_representation(&rep, &f3).unwrap();
        assert!(tw.conjugates_to(&rep).unwrap());
        let mut expected = Matrix::zeros(f3.clone(), 9, 9);
        let one = f3.one();
        expected.set(0, 0, one);
        expected.set(1, 2, one);
        expected.set(2, 1, one);
        expected.set(2, 2, f3.neg(&one));
        let mut rows: Vec<Vec<Gf>> = tw.rep.generators().iter().map(flatten).collect();
        rows.push(flatten(&expected));
        assert_eq!(Matrix::from_rows(f3.clone(), rows).unwrap().rank(), 6);
    }

    #[test]
    fn twist_requires_galois_equivariant_columns() {
        let f4 = GaloisField::new(2, 2, None).unwrap();
        let f2 = GaloisField::prime(2).unwrap();
        let m = mat(&f4, &[&["1", "0", "0", "1"], &["0", "1", "0", "g"], &["0", "0", "1", "1"]]);
        let rep = GaRepresentation::from_point_matrix(m).unwrap();
        assert!(matches!(twist_representation(&rep, &f2), Err(Error::NotGaloisStable(_))));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn invariant_dimension_is_permutation_equivariant(
            perm in Just((0..9usize).collect::<Vec<_>>()).prop_shuffle(),
            c in proptest::collection::vec(0u32..3, 9),
            a in 0u32..3,
        ) {
            let f = GaloisField::prime(5).unwrap();
            let cfg = grid_cfg(&f);
            let rep = build_representation(&cfg).unwrap();
            let permuted = build_representation(&cfg.permute(&perm).unwrap()).unwrap();
            let pc: Vec<u32> = perm.iter().map(|&i| c[i]).collect();
            prop_assert_eq!(rep.invariant_dimension(&c, a).unwrap(), permuted.invariant_dimension(&pc, a).unwrap());
        }

        #[test]
        fn torus_rescaling_preserves_dimensions(
            scale in proptest::collection::vec(1i64..5, 9),
            c in proptest::collection::vec(0u32..3, 9),
            a in 0u32..3,
        ) {
            let f = GaloisField::prime(5).unwrap();
            let rep = GaRepresentation::from_point_matrix(grid(&f)).unwrap();
            let s: Vec<Gf> = scale.iter().map(|&x| f.from_i64(x)).collect();
            let scaled = rep.rescaled(&s).unwrap();
            prop_assert!(scaled.check_structure().unwrap());
            prop_assert_eq!(rep.invariant_dimension(&c, a).unwrap(), scaled.invariant_dimension(&c, a).unwrap());
        }
    }
}
