use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::hilbert::{hilbert_function, ideal_part};
use super::{forms_through_points, monomial_index, FormSystem};
use crate::field::{Embedding, Field, GaloisField, Gf};
use crate::linalg::{Echelon, Matrix};
use crate::mpoly::MPoly;
use crate::{Error, Result};

/// Base points whose minimal field of definition is `F_{q^degree}`, with coordinates in
/// `field`, normalized and sorted.
#[derive(Clone, Debug, PartialEq)]
pub struct BaseLocusGroup {
    pub degree: u32,
    pub field: GaloisField,
    pub points: Vec<Vec<Gf>>,
}

fn bezout(sys_dim: usize, nvars: usize, degree: u32) -> Result<usize> {
    if nvars < 2 || sys_dim + 1 != nvars || degree == 0 {
        return Err(Error::Unsupported(format!(
            "{sys_dim} forms of degree {degree} in {nvars} variables (need r - 1 forms in r variables)"
        )));
    }
    Ok((degree as usize).pow(sys_dim as u32))
}

fn gens_of<F: Field>(sys: &FormSystem<F>) -> Vec<MPoly<F>> {
    sys.basis().iter().map(|f| f.poly().clone()).collect()
}

/// Coordinates of `v` in the quotient of the ambient space by `ech`.
fn normal_form<F: Field>(ech: &Echelon<F>, free: &[usize], v: Vec<F::Elem>) -> Vec<F::Elem> {
    let r = ech.reduce(v);
    free.iter().map(|&j| r[j].clone()).collect()
}

/// The matrices of multiplication by each variable, `(S/I)_d -> (S/I)_{d+1}`, in the
/// quotient monomial bases.
fn multiplication_maps<F: Field>(field: &F, nvars: usize, gens: &[MPoly<F>], d: u32) -> Vec<Matrix<F>> {
    let lo = ideal_part(field, nvars, gens, d);
    let hi = ideal_part(field, nvars, gens, d + 1);
    let (lo_mons, _) = monomial_index(nvars, d);
    let (_, hi_idx) = monomial_index(nvars, d + 1);
    let (lo_free, hi_free) = (lo.free_columns(), hi.free_columns());
    (0..nvars)
        .map(|i| {
            let cols = lo_free
                .iter()
                .map(|&j| {
                    let mut e = lo_mons[j].clone();
                    e[i] += 1;
                    let mut v = vec![field.zero(); hi.width()];
                    v[hi_idx[&e]] = field.one();
                    normal_form(&hi, &hi_free, v)
                })
                .collect();
            Matrix::from_cols(field.clone(), cols).expect("square")
        })
        .collect()
}

/// `A` with `m v = v a` for an invariant subspace spanned by the columns of `v`.
fn restrict(m: &Matrix<GaloisField>, v: &Matrix<GaloisField>) -> Result<Matrix<GaloisField>> {
    let (_, rows) = v.transpose().rref();
    let mv = m.mul(v)?;
    v.select_rows(&rows).inverse()?.mul(&mv.select_rows(&rows))
}

/// Joint eigenvalue tuples of commuting matrices, over their field.
fn joint_eigenvalues(ms: &[Matrix<GaloisField>]) -> Result<Vec<Vec<Gf>>> {
    fn rec(
        ms: &[Matrix<GaloisField>],
        v: Matrix<GaloisField>,
        prefix: &mut Vec<Gf>,
        out: &mut Vec<Vec<Gf>>,
    ) -> Result<()> {
        let Some(m) = ms.first() else {
            out.push(prefix.clone());
            return Ok(());
        };
        let k = m.field().clone();
        let a = restrict(m, &v)?;
        for lambda in a.charpoly()?.roots()? {
            let shifted = a.sub(&Matrix::identity(k.clone(), a.nrows()).scale(&lambda))?;
            let w = shifted.kernel();
            let sub = v.mul(&w.transpose())?;
            prefix.push(lambda);
            rec(&ms[1..], sub, prefix, out)?;
            prefix.pop();
        }
        Ok(())
    }
    let n = ms[0].nrows();
    let mut out = Vec::new();
    rec(ms, Matrix::identity(ms[0].field().clone(), n), &mut Vec::new(), &mut out)?;
    Ok(out)
}

/// Degree over `base` of the field generated by the coordinates.
fn point_degree(big: &GaloisField, base: &GaloisField, p: &[Gf]) -> u32 {
    let s = base.degree();
    p.iter().fold(1, |acc, &a| {
        let j = big.element_degree(a);
        lcm(acc, lcm(j, s) / s)
    })
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 { a } else { gcd(b, a % b) }
}

fn lcm(a: u32, b: u32) -> u32 {
    a / gcd(a, b) * b
}

/// A linear form nonvanishing on every base point, as the invertible combination of the
/// multiplication maps. Coefficients are drawn from `e + 1` field elements, which
/// suffices whenever the field has more than `e` elements.
fn find_linear_form(k: &GaloisField, xs: &[Matrix<GaloisField>], e: usize) -> Option<Matrix<GaloisField>> {
    let q = k.size();
    let s = (e as u64 + 1).min(q);
    let r = xs.len();
    let total = s.checked_pow(r as u32 - 1)?;
    for mut idx in 0..total {
        let mut h = xs[0].clone();
        for x in &xs[1..] {
            let c = k.element(idx % s).expect("in range");
            idx /= s;
            h = h.add(&x.scale(&c)).expect("same shape");
        }
        if let Ok(inv) = h.inverse() {
            return Some(inv);
        }
    }
    None
}

/// All base points of a system of `r - 1` forms in `r` variables over `F_{q^m}`, for
/// `m <= max_ext`, grouped by minimal field of definition.
///
/// The base scheme is first certified zero-dimensional of the Bezout degree `e` by its
/// Hilbert function. The points are then the joint eigenvalues of the multiplication maps
/// `x_i / h` on `(S/I)_e` for a linear form `h` avoiding the base locus.
pub fn base_locus(sys: &FormSystem<GaloisField>, max_ext: u32) -> Result<Vec<BaseLocusGroup>> {
    if max_ext == 0 {
        return Err(Error::InvalidInput("max_ext must be at least 1".into()));
    }
    let base = sys.field().clone();
    let r = sys.nvars();
    let e = bezout(sys.dim(), r, sys.degree())?;
    let gens = gens_of(sys);
    let d = e.max(sys.degree() as usize) as u32;
    let hf = [hilbert_function(&base, r, &gens, d), hilbert_function(&base, r, &gens, d + 1)];
    if hf != [e, e] {
        return Err(Error::PositiveDimensional(format!(
            "Hilbert function {hf:?} in degrees {d}, {} (expected {e} twice)",
            d + 1
        )));
    }
    let xs = multiplication_maps(&base, r, &gens, d);
    let mut groups = Vec::new();
    for m in 1..=max_ext {
        let (small, to_small) = base.extension(m)?;
        let mut work_deg = 1;
        while small.size().checked_pow(work_deg).map_or(false, |n| n <= e as u64) {
            work_deg += 1;
        }
        let (work, up) = small.extension(work_deg)?;
        let emb = compose(&to_small, &up)?;
        let xw: Vec<Matrix<GaloisField>> = xs.iter().map(|x| x.map(work.clone(), |c| emb.apply(*c))).collect();
        let hinv = find_linear_form(&work, &xw, e)
            .ok_or_else(|| Error::Inconsistent("no linear form avoids the base locus".into()))?;
        let ms = xw.iter().map(|x| hinv.mul(x)).collect::<Result<Vec<_>>>()?;
        let mut points = Vec::new();
        for mut p in joint_eigenvalues(&ms)? {
            work.normalize(&mut p);
            if point_degree(&work, &base, &p) != m {
                continue;
            }
            let p: Vec<Gf> = p
                .iter()
                .map(|&a| up.preimage(a))
                .collect::<Option<_>>()
                .ok_or_else(|| Error::Inconsistent("base point outside its field of definition".into()))?;
            let check = sys.map_field(small.clone(), |c| to_small.apply(*c));
            if !check.vanishes_at(&p) {
                return Err(Error::Inconsistent(format!("computed base point {p:?} is not a common zero")));
            }
            points.push(p);
        }
        points.sort();
        points.dedup();
        if !points.is_empty() {
            groups.push(BaseLocusGroup { degree: m, field: small, points });
        }
    }
    Ok(groups)
}

/// All base points over `F_{q^L}`, `L` the least common multiple of the degrees of the
/// groups, as one list in group order.
pub fn base_locus_points(
    sys: &FormSystem<GaloisField>,
    max_ext: u32,
) -> Result<(GaloisField, Vec<Vec<Gf>>)> {
    let groups = base_locus(sys, max_ext)?;
    let base = sys.field().clone();
    let l = groups.iter().fold(1, |acc, g| lcm(acc, g.degree));
    let (big, to_big) = base.extension(l)?;
    let mut out = Vec::new();
    for g in &groups {
        let (_, to_small) = base.extension(g.degree)?;
        let emb = compatible_embedding(&to_small, &to_big)?;
        out.extend(g.points.iter().map(|p| emb.apply_all(p)));
    }
    Ok((big, out))
}

/// The embedding `small -> big` commuting with the given embeddings of a common base field.
pub fn compatible_embedding(to_small: &Embedding, to_big: &Embedding) -> Result<Embedding> {
    let (base, small, big) = (to_small.source(), to_small.target(), to_big.target());
    if small.degree() == 1 || small == big {
        return Embedding::new(small.clone(), big.clone());
    }
    let modulus: Vec<Gf> = small.modulus().iter().map(|&c| Gf(c)).collect();
    let mut roots = crate::poly::UniPoly::new(big.clone(), modulus).roots()?;
    roots.sort();
    for beta in roots {
        let emb = Embedding::with_generator_image(small.clone(), big.clone(), beta)?;
        if base.degree() == 1 || emb.apply(to_small.apply(base.generator())) == to_big.apply(base.generator()) {
            return Ok(emb);
        }
    }
    Err(Error::Inconsistent("no compatible embedding".into()))
}

/// `base -> mid -> top` as a single embedding table.
fn compose(a: &Embedding, b: &Embedding) -> Result<Embedding> {
    let src = a.source().clone();
    let img = b.apply(a.apply(src.generator()));
    Embedding::with_generator_image(src, b.target().clone(), img)
}

/// Given all but one point of a reduced complete intersection base locus of `r - 1` forms
/// of degree `degree` through the points, the missing point.
///
/// For `g` of degree `t` through the known points but outside the ideal, the normal forms
/// of `x_i g` in `(S/I)_{t+1}` are all proportional, with ratios the coordinates of the
/// residual point.
fn residual_point<F: Field>(field: &F, r: usize, degree: u32, points: &[Vec<F::Elem>]) -> Result<Vec<F::Elem>> {
    let e = (degree as usize).pow(r as u32 - 1);
    if points.len() + 1 != e {
        return Err(Error::LengthMismatch { expected: e - 1, got: points.len() });
    }
    let ones = vec![1; points.len()];
    let sys = forms_through_points(field, r, degree, points, &ones)?;
    if sys.dim() != r - 1 {
        return Err(Error::Degenerate(format!(
            "forms of degree {degree} through the points span dimension {}, expected {}",
            sys.dim(),
            r - 1
        )));
    }
    let gens = gens_of(&sys);
    let top = e.max(degree as usize) as u32;
    let hf = [hilbert_function(field, r, &gens, top), hilbert_function(field, r, &gens, top + 1)];
    if hf != [e, e] {
        return Err(Error::PositiveDimensional(format!(
            "base locus of the system through the points is not finite (Hilbert function {hf:?})"
        )));
    }
    let mut last = None;
    for t in degree..=top {
        if hilbert_function(field, r, &gens, t) != e || hilbert_function(field, r, &gens, t + 1) != e {
            continue;
        }
        match residual_in_degree(field, r, &gens, t, points) {
            Ok(p) => {
                let mut all = points.to_vec();
                if all.contains(&p) {
                    last = Some(Error::Degenerate("the residual point coincides with a given point".into()));
                    continue;
                }
                all.push(p.clone());
                if !sys.is_reduced_base_locus(&all) {
                    last = Some(Error::Degenerate("the base locus is not reduced".into()));
                    continue;
                }
                return Ok(p);
            }
            Err(err) => last = Some(err),
        }
    }
    Err(last.unwrap_or_else(|| Error::Degenerate("no residual point found".into())))
}

fn residual_in_degree<F: Field>(
    field: &F,
    r: usize,
    gens: &[MPoly<F>],
    t: u32,
    points: &[Vec<F::Elem>],
) -> Result<Vec<F::Elem>> {
    let lo = ideal_part(field, r, gens, t);
    let hi = ideal_part(field, r, gens, t + 1);
    let lo_free = lo.free_columns();
    let through = forms_through_points(field, r, t, points, &vec![1; points.len()])?;
    let g = through
        .basis()
        .iter()
        .map(|f| f.coeff_vector())
        .find(|c| normal_form(&lo, &lo_free, c.clone()).iter().any(|x| !field.is_zero(x)))
        .ok_or_else(|| Error::Degenerate("every form through the points lies in the ideal".into()))?;
    let (lo_mons, _) = monomial_index(r, t);
    let (_, hi_idx) = monomial_index(r, t + 1);
    let hi_free = hi.free_columns();
    let vs: Vec<Vec<F::Elem>> = (0..r)
        .map(|i| {
            let mut v = vec![field.zero(); hi.width()];
            for (j, c) in g.iter().enumerate() {
                if !field.is_zero(c) {
                    let mut ex = lo_mons[j].clone();
                    ex[i] += 1;
                    v[hi_idx[&ex]] = field.add(&v[hi_idx[&ex]], c);
                }
            }
            normal_form(&hi, &hi_free, v)
        })
        .collect();
    let (i0, pos) = vs
        .iter()
        .enumerate()
        .find_map(|(i, v)| v.iter().position(|x| !field.is_zero(x)).map(|p| (i, p)))
        .ok_or_else(|| Error::Degenerate("the residual form vanishes on the whole base locus".into()))?;
    let mut p: Vec<F::Elem> = vs.iter().map(|v| v[pos].clone()).collect();
    for (v, pi) in vs.iter().zip(&p) {
        let ok = v
            .iter()
            .zip(&vs[i0])
            .all(|(a, b)| field.mul(a, &vs[i0][pos]) == field.mul(b, pi));
        if !ok {
            return Err(Error::Degenerate("residual normal forms are not proportional".into()));
        }
    }
    field.normalize(&mut p);
    Ok(p)
}

/// The ninth base point of the pencil of plane cubics through eight points.
pub fn ninth_base_point<F: Field>(field: &F, points: &[Vec<F::Elem>]) -> Result<Vec<F::Elem>> {
    check_dims(points, 3)?;
    residual_point(field, 3, 3, &normalized(field, points))
}

/// The eighth base point of the net of quadrics in `P^3` through seven points.
pub fn eighth_base_point<F: Field>(field: &F, points: &[Vec<F::Elem>]) -> Result<Vec<F::Elem>> {
    check_dims(points, 4)?;
    residual_point(field, 4, 2, &normalized(field, points))
}

fn check_dims<T>(points: &[Vec<T>], r: usize) -> Result<()> {
    match points.iter().find(|p| p.len() != r) {
        Some(p) => Err(Error::LengthMismatch { expected: r, got: p.len() }),
        None => Ok(()),
    }
}

fn normalized<F: Field>(field: &F, points: &[Vec<F::Elem>]) -> Vec<Vec<F::Elem>> {
    points
        .iter()
        .map(|p| {
            let mut p = p.clone();
            field.normalize(&mut p);
            p
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::forms::projective_points;
    use num_rational::BigRational;

    fn grid(k: &GaloisField) -> Vec<Vec<Gf>> {
        let mut pts = Vec::new();
        for x in [0, 1, -1] {
            for y in [0, 1, -1] {
                let mut p = vec![k.from_i64(x), k.from_i64(y), k.one()];
                k.normalize(&mut p);
                pts.push(p);
            }
        }
        pts
    }

    fn system(k: &GaloisField, names: &[&str], polys: &[&str]) -> FormSystem<GaloisField> {
        FormSystem::from_polys(polys.iter().map(|s| MPoly::parse(k.clone(), names, s).unwrap()).collect()).unwrap()
    }

    fn brute_force(sys: &FormSystem<GaloisField>, m: u32) -> Vec<Vec<Gf>> {
        let (big, emb) = sys.field().extension(m).unwrap();
        let s = sys.map_field(big.clone(), |c| emb.apply(*c));
        projective_points(&big, sys.nvars()).into_iter().filter(|p| s.vanishes_at(p)).collect()
    }

    #[test]
    fn grid_pencil_base_locus() {
        let k = GaloisField::prime(5).unwrap();
        let sys = system(&k, &["x", "y", "z"], &["x^3 - x*z^2", "y^3 - y*z^2"]);
        let groups = base_locus(&sys, 1).unwrap();
        assert_eq!(groups.len(), 1);
        let mut expected = grid(&k);
        expected.sort();
        assert_eq!(groups[0].points, expected);
    }

    #[test]
    fn cuspidal_pencil_over_f2_matches_brute_force() {
        let k = GaloisField::prime(2).unwrap();
        let sys = system(&k, &["x", "y", "z"], &["(y + z)^3 + x*z^2", "x^3 + y^2*z"]);
        let groups = base_locus(&sys, 6).unwrap();
        let total: usize = groups.iter().map(|g| g.points.len()).sum();
        assert_eq!(total, 9);
        for m in 1..=4 {
            let all = brute_force(&sys, m);
            let from_groups: usize =
                groups.iter().filter(|g| m % g.degree == 0).map(|g| g.points.len()).sum();
            assert_eq!(all.len(), from_groups, "m = {m}");
        }
    }

    #[test]
    fn cube_net_base_locus() {
        let k = GaloisField::prime(5).unwrap();
        let sys = system(&k, &["x", "y", "z", "w"], &["x^2 - x*w", "y^2 - y*w", "z^2 - z*w"]);
        let groups = base_locus(&sys, 1).unwrap();
        assert_eq!(groups[0].points.len(), 8);
        assert_eq!(groups[0].points, {
            let mut b = brute_force(&sys, 1);
            b.sort();
            b
        });
    }

    #[test]
    fn common_component_is_an_error() {
        let k = GaloisField::prime(3).unwrap();
        let sys = system(&k, &["x", "y", "z"], &["x^3 - x*z^2", "x^2*y"]);
        assert!(matches!(base_locus(&sys, 2), Err(Error::PositiveDimensional(_))));
    }

    #[test]
    fn ninth_point_of_grid() {
        let k = GaloisField::prime(5).unwrap();
        let pts = grid(&k);
        for i in 0..9 {
            let mut rest = pts.clone();
            let missing = rest.remove(i);
            assert_eq!(ninth_base_point(&k, &rest).unwrap(), missing);
        }
    }

    #[test]
    fn eighth_point_of_cube() {
        let k = GaloisField::prime(5).unwrap();
        let mut pts = Vec::new();
        for b in 0..8 {
            let c = |s: i64| k.from_i64((b >> s) & 1);
            pts.push(vec![c(2), c(1), c(0), k.one()]);
        }
        for i in 0..8 {
            let mut rest = pts.clone();
            let mut missing = rest.remove(i);
            k.normalize(&mut missing);
            assert_eq!(eighth_base_point(&k, &rest).unwrap(), missing);
        }
    }

    #[test]
    fn collinear_quadruple_rejected() {
        let q = Rationals;
        let raw: [[i64; 3]; 8] =
            [[0, 0, 1], [1, 0, 1], [2, 0, 1], [3, 0, 1], [0, 1, 1], [1, 2, 1], [3, 5, 1], [2, 7, 1]];
        let pts: Vec<Vec<BigRational>> = raw.iter().map(|p| p.iter().map(|&c| q.from_i64(c)).collect()).collect();
        assert!(ninth_base_point(&q, &pts).is_err());
    }
}
