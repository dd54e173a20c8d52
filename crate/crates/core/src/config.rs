//! Ordered point configurations in `P^{r-1}`.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use itertools::Itertools;

use crate::field::{Field, GaloisField, Gf};
use crate::linalg::Matrix;
use crate::{Error, Result};

/// `n` distinct points spanning `P^{r-1}`, each normalized so its first nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq)]
pub struct PointConfig<F: Field> {
    field: F,
    r: usize,
    points: Vec<Vec<F::Elem>>,
}

/// Collinear triples (`r = 3`) or coplanar quadruples (`r = 4`), lexicographically sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IncidenceReport {
    pub collinear_triples: Vec<[usize; 3]>,
    pub triple_partitions: usize,
    pub coplanar_quadruples: Vec<[usize; 4]>,
}

impl IncidenceReport {
    /// The count `a`: triples for plane configurations, quadruples for space ones.
    pub fn a(&self) -> usize {
        self.collinear_triples.len() + self.coplanar_quadruples.len()
    }
}

/// A projective equivalence: `transform * c1[i]` is proportional to `c2[permutation[i]]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Equivalence<F: Field> {
    pub transform: Matrix<F>,
    pub permutation: Vec<usize>,
}

impl<F: Field> PointConfig<F> {
    /// Validate and normalize; requires `n >= r >= 2`, distinct nonzero points of full rank.
    pub fn new(field: F, r: usize, points: Vec<Vec<F::Elem>>) -> Result<Self> {
        if r < 2 || points.len() < r {
            return Err(Error::InvalidInput(format!(
                "need n >= r >= 2, got r = {r}, n = {}",
                points.len()
            )));
        }
        let mut pts = Vec::with_capacity(points.len());
        for (i, mut p) in points.into_iter().enumerate() {
            if p.len() != r {
                return Err(Error::LengthMismatch { expected: r, got: p.len() });
            }
            if !field.normalize(&mut p) {
                return Err(Error::Degenerate(format!("point {} is zero", i + 1)));
            }
            pts.push(p);
        }
        for (i, j) in (0..pts.len()).tuple_combinations() {
            if pts[i] == pts[j] {
                return Err(Error::Degenerate(format!("points {} and {} coincide", i + 1, j + 1)));
            }
        }
        let cfg = PointConfig { field, r, points: pts };
        if cfg.matrix().rank() < r {
            return Err(Error::Degenerate("points lie in a hyperplane".into()));
        }
        Ok(cfg)
    }

    pub fn from_i64(field: F, r: usize, points: &[&[i64]]) -> Result<Self> {
        let pts = points
            .iter()
            .map(|p| p.iter().map(|&x| field.from_i64(x)).collect())
            .collect();
        Self::new(field, r, pts)
    }

    /// Columns of an `r x n` matrix.
    pub fn from_matrix(m: &Matrix<F>) -> Result<Self> {
        Self::new(m.field().clone(), m.nrows(), m.cols_vec())
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn point(&self, i: usize) -> &[F::Elem] {
        &self.points[i]
    }

    pub fn points(&self) -> &[Vec<F::Elem>] {
        &self.points
    }

    /// The `r x n` coordinate matrix.
    pub fn matrix(&self) -> Matrix<F> {
        Matrix::from_cols(self.field.clone(), self.points.clone()).expect("rectangular")
    }

    pub fn subset_det(&self, idx: &[usize]) -> F::Elem {
        let cols = idx.iter().map(|&i| self.points[i].clone()).collect();
        Matrix::from_cols(self.field.clone(), cols)
            .and_then(|m| m.det())
            .expect("square")
    }

    pub fn subset_dependent(&self, idx: &[usize]) -> bool {
        if idx.len() == self.r {
            self.field.is_zero(&self.subset_det(idx))
        } else {
            let cols = idx.iter().map(|&i| self.points[i].clone()).collect();
            Matrix::from_cols(self.field.clone(), cols).expect("rectangular").rank() < idx.len()
        }
    }

    /// Lexicographically least `r`-subset lying in a hyperplane, if any.
    pub fn lgp_violation(&self) -> Option<Vec<usize>> {
        (0..self.n()).combinations(self.r).find(|s| self.subset_dependent(s))
    }

    pub fn in_linear_general_position(&self) -> bool {
        self.lgp_violation().is_none()
    }

    pub fn dependent_subsets(&self) -> Vec<Vec<usize>> {
        (0..self.n()).combinations(self.r).filter(|s| self.subset_dependent(s)).collect()
    }

    pub fn incidences(&self) -> Result<IncidenceReport> {
        let dep = self.dependent_subsets();
        match self.r {
            3 => {
                let triples: Vec<[usize; 3]> = dep.iter().map(|s| [s[0], s[1], s[2]]).collect();
                let partitions = if self.n() == 9 { count_partitions(&triples, 9) } else { 0 };
                Ok(IncidenceReport {
                    collinear_triples: triples,
                    triple_partitions: partitions,
                    coplanar_quadruples: Vec::new(),
                })
            }
            4 => Ok(IncidenceReport {
                coplanar_quadruples: dep.iter().map(|s| [s[0], s[1], s[2], s[3]]).collect(),
                ..Default::default()
            }),
            r => Err(Error::Unsupported(format!("incidences in P^{}", r - 1))),
        }
    }

    /// The Gale dual: the columns of the echelon kernel basis of the coordinate matrix.
    pub fn dualize(&self) -> Result<Self> {
        if self.n() <= self.r {
            return Err(Error::InvalidInput("dualization needs n > r".into()));
        }
        let ker = self.matrix().kernel();
        Self::new(self.field.clone(), ker.nrows(), ker.cols_vec())
    }

    /// Image under the degree-2 Veronese map `P^2 -> P^5`.
    pub fn veronese_embed(&self) -> Result<Self> {
        if self.r != 3 {
            return Err(Error::Unsupported("Veronese embedding needs points in P^2".into()));
        }
        let f = &self.field;
        let pts = self
            .points
            .iter()
            .map(|p| {
                let (x, y, z) = (&p[0], &p[1], &p[2]);
                vec![f.mul(x, x), f.mul(x, y), f.mul(x, z), f.mul(y, y), f.mul(y, z), f.mul(z, z)]
            })
            .collect();
        Self::new(f.clone(), 6, pts)
    }

    /// Apply an invertible `r x r` matrix to every point.
    pub fn transform(&self, g: &Matrix<F>) -> Result<Self> {
        let pts = self.points.iter().map(|p| g.mul_vec(p)).collect::<Result<Vec<_>>>()?;
        Self::new(self.field.clone(), self.r, pts)
    }

    /// The configuration whose `i`-th point is `self[perm[i]]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Self> {
        let mut sorted = perm.to_vec();
        sorted.sort_unstable();
        if sorted != (0..self.n()).collect::<Vec<_>>() {
            return Err(Error::InvalidInput("not a permutation".into()));
        }
        let pts = perm.iter().map(|&i| self.points[i].clone()).collect();
        Ok(PointConfig { field: self.field.clone(), r: self.r, points: pts })
    }

    pub fn map_field<G: Field>(&self, field: G, g: impl Fn(&F::Elem) -> G::Elem) -> Result<PointConfig<G>> {
        let pts = self.points.iter().map(|p| p.iter().map(&g).collect()).collect();
        PointConfig::new(field, self.r, pts)
    }

    /// Index of the point proportional to `v`.
    pub fn index_of(&self, v: &[F::Elem]) -> Option<usize> {
        let mut v = v.to_vec();
        if !self.field.normalize(&mut v) {
            return None;
        }
        self.points.iter().position(|p| *p == v)
    }

    /// Number of dependent `r`-subsets through each point.
    pub fn point_fingerprints(&self) -> Vec<usize> {
        let mut fp = vec![0; self.n()];
        for s in self.dependent_subsets() {
            for i in s {
                fp[i] += 1;
            }
        }
        fp
    }

    /// Lexicographically least `r + 1` points in general position.
    pub fn frame(&self) -> Option<Vec<usize>> {
        (0..self.n()).combinations(self.r + 1).find(|s| self.is_frame(s))
    }

    fn is_frame(&self, s: &[usize]) -> bool {
        s.iter().copied().combinations(self.r).all(|t| !self.subset_dependent(&t))
    }
}

fn count_partitions(triples: &[[usize; 3]], n: usize) -> usize {
    fn rec(triples: &[[usize; 3]], used: u32, full: u32) -> usize {
        if used == full {
            return 1;
        }
        let first = (!used).trailing_zeros() as usize;
        triples
            .iter()
            .filter(|t| t[0] == first && t.iter().all(|&i| used & (1 << i) == 0))
            .map(|t| rec(triples, used | t.iter().fold(0, |m, &i| m | 1 << i), full))
            .sum()
    }
    rec(triples, 0, (1u32 << n) - 1)
}

/// The `g` in `PGL_r` taking the frame points `src` to `dst` (both `r + 1` points in general
/// position).
pub fn frame_transform<F: Field>(
    field: &F,
    src: &[Vec<F::Elem>],
    dst: &[Vec<F::Elem>],
) -> Result<Matrix<F>> {
    let r = src.len() - 1;
    let scaled = |pts: &[Vec<F::Elem>]| -> Result<Matrix<F>> {
        let a = Matrix::from_cols(field.clone(), pts[..r].to_vec())?;
        let lam = a
            .solve(&pts[r])?
            .ok_or_else(|| Error::Degenerate("frame is not in general position".into()))?;
        if lam.iter().any(|x| field.is_zero(x)) {
            return Err(Error::Degenerate("frame is not in general position".into()));
        }
        let cols = (0..r)
            .map(|j| pts[j].iter().map(|x| field.mul(x, &lam[j])).collect())
            .collect();
        Matrix::from_cols(field.clone(), cols)
    };
    let a = scaled(src)?;
    let b = scaled(dst)?;
    b.mul(&a.inverse()?)
}

/// Search for `g` and `sigma` with `g c1[i] ~ c2[sigma(i)]`; the lexicographically least
/// `sigma` is returned. Without `allow_permutation` only the identity is tried.
pub fn config_equivalent<F: Field>(
    c1: &PointConfig<F>,
    c2: &PointConfig<F>,
    allow_permutation: bool,
) -> Result<Option<Equivalence<F>>> {
    if c1.field != c2.field {
        return Err(Error::MixedContexts);
    }
    if c1.r != c2.r || c1.n() != c2.n() {
        return Ok(None);
    }
    let frame = c1
        .frame()
        .ok_or_else(|| Error::Degenerate("no r+1 points in general position".into()))?;
    let f = &c1.field;
    let finish = |perm: Vec<usize>, g: Matrix<F>| -> Option<Equivalence<F>> {
        for i in 0..c1.n() {
            let img = g.mul_vec(&c1.points[i]).ok()?;
            if c2.index_of(&img) != Some(perm[i]) {
                return None;
            }
        }
        let mut g = g;
        let mut flat: Vec<F::Elem> = g.rows_vec().concat();
        f.normalize(&mut flat);
        for (k, v) in flat.into_iter().enumerate() {
            g.set(k / c1.r, k % c1.r, v);
        }
        Some(Equivalence { transform: g, permutation: perm })
    };
    if !allow_permutation {
        let src: Vec<_> = frame.iter().map(|&i| c1.points[i].clone()).collect();
        let dst: Vec<_> = frame.iter().map(|&i| c2.points[i].clone()).collect();
        return Ok(match frame_transform(f, &src, &dst) {
            Ok(g) => finish((0..c1.n()).collect(), g),
            Err(_) => None,
        });
    }
    let fp1 = c1.point_fingerprints();
    let fp2 = c2.point_fingerprints();
    let mut s = Search {
        c1,
        c2,
        fp1,
        fp2,
        perm: Vec::new(),
        used: vec![false; c1.n()],
        dep2: c2.dependent_subsets().into_iter().collect(),
    };
    Ok(s.dfs().and_then(|(perm, g)| finish(perm, g)))
}

struct Search<'a, F: Field> {
    c1: &'a PointConfig<F>,
    c2: &'a PointConfig<F>,
    fp1: Vec<usize>,
    fp2: Vec<usize>,
    perm: Vec<usize>,
    used: Vec<bool>,
    dep2: BTreeSet<Vec<usize>>,
}

impl<F: Field> Search<'_, F> {
    fn consistent(&self) -> bool {
        let k = self.perm.len() - 1;
        let r = self.c1.r;
        if k + 1 < r {
            return true;
        }
        (0..k).combinations(r - 1).all(|mut s| {
            s.push(k);
            let mut img: Vec<usize> = s.iter().map(|&i| self.perm[i]).collect();
            img.sort_unstable();
            self.c1.subset_dependent(&s) == self.dep2.contains(&img)
        })
    }

    fn frame_in_prefix(&self) -> Option<Vec<usize>> {
        let k = self.perm.len();
        let r = self.c1.r;
        if k < r + 1 {
            return None;
        }
        (0..k - 1).combinations(r).map(|mut s| {
            s.push(k - 1);
            s
        })
        .find(|s| self.c1.is_frame(s))
    }

    fn dfs(&mut self) -> Option<(Vec<usize>, Matrix<F>)> {
        let n = self.c1.n();
        let i = self.perm.len();
        for j in 0..n {
            if self.used[j] || self.fp1[i] != self.fp2[j] {
                continue;
            }
            self.perm.push(j);
            self.used[j] = true;
            if self.consistent() {
                if let Some(frame) = self.frame_in_prefix() {
                    if let Some(res) = self.complete(&frame) {
                        return Some(res);
                    }
                } else if i + 1 == n {
                    // No frame can exist in c1 at all; unreachable for valid input.
                } else if let Some(res) = self.dfs() {
                    return Some(res);
                }
            }
            self.used[j] = false;
            self.perm.pop();
        }
        None
    }

    fn complete(&self, frame: &[usize]) -> Option<(Vec<usize>, Matrix<F>)> {
        let src: Vec<_> = frame.iter().map(|&i| self.c1.points[i].clone()).collect();
        let dst: Vec<_> = frame.iter().map(|&i| self.c2.points[self.perm[i]].clone()).collect();
        let g = frame_transform(&self.c1.field, &src, &dst).ok()?;
        let mut perm = self.perm.clone();
        let mut used = self.used.clone();
        for (i, &pi) in self.perm.iter().enumerate() {
            let img = g.mul_vec(&self.c1.points[i]).ok()?;
            if self.c2.index_of(&img) != Some(pi) {
                return None;
            }
        }
        for i in perm.len()..self.c1.n() {
            let img = g.mul_vec(&self.c1.points[i]).ok()?;
            let j = self.c2.index_of(&img)?;
            if used[j] {
                return None;
            }
            used[j] = true;
            perm.push(j);
        }
        Some((perm, g))
    }
}

impl PointConfig<GaloisField> {
    /// The permutation `sigma` with `Frob_q(p_i) ~ p_{sigma(i)}`, where `base = F_q` is a
    /// subfield of the configuration's field.
    pub fn frobenius_orbits(&self, base: &GaloisField) -> Result<Vec<usize>> {
        let k = &self.field;
        if base.p() != k.p() || k.degree() % base.degree() != 0 {
            return Err(Error::MixedContexts);
        }
        let e = base.degree();
        (0..self.n())
            .map(|i| {
                let img: Vec<Gf> = self.points[i].iter().map(|&x| k.frobenius_pow(x, e)).collect();
                self.index_of(&img).ok_or_else(|| {
                    Error::NotGaloisStable(format!("conjugate of point {} is missing", i + 1))
                })
            })
            .collect()
    }
}

/// Group the indices `0..n` into cycles of `perm`, each starting at its least element.
pub fn cycles(perm: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for s in 0..perm.len() {
        if seen[s] {
            continue;
        }
        let mut c = Vec::new();
        let mut i = s;
        while !seen[i] {
            seen[i] = true;
            c.push(i);
            i = perm[i];
        }
        out.push(c);
    }
    out
}

/// Multiset summary used to bucket configurations before an exact equivalence test.
pub fn incidence_fingerprint<F: Field>(cfg: &PointConfig<F>) -> (usize, Vec<usize>) {
    let mut fp = cfg.point_fingerprints();
    fp.sort_unstable();
    (fp.iter().sum(), fp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    pub(crate) fn grid(p: u64) -> PointConfig<GaloisField> {
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
    fn grid_incidences() {
        let inc = grid(5).incidences().unwrap();
        assert_eq!(inc.collinear_triples.len(), 8);
        assert_eq!(inc.triple_partitions, 2);
    }

    #[test]
    fn duplicate_points_rejected() {
        let q = Rationals;
        let r = PointConfig::from_i64(q, 3, &[&[1, 0, 0], &[2, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert!(matches!(r, Err(Error::Degenerate(_))));
    }

    #[test]
    fn lgp_witness_is_least() {
        let q = Rationals;
        let c = PointConfig::from_i64(
            q,
            3,
            &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1], &[1, 2, 0], &[1, 3, 0]],
        )
        .unwrap();
        assert_eq!(c.lgp_violation(), Some(vec![0, 1, 4]));
    }

    #[test]
    fn double_dual_and_self_equivalence() {
        let g = grid(7);
        let dd = g.dualize().unwrap().dualize().unwrap();
        let eq = config_equivalent(&g, &dd, false).unwrap().unwrap();
        assert_eq!(eq.permutation, (0..9).collect::<Vec<_>>());
        let same = config_equivalent(&g, &g, true).unwrap().unwrap();
        assert_eq!(same.transform, Matrix::identity(g.field().clone(), 3));
        assert_eq!(same.permutation, (0..9).collect::<Vec<_>>());
    }

    #[test]
    fn permuted_grid_is_found() {
        let g = grid(5);
        let perm = [4, 0, 8, 2, 6, 1, 3, 5, 7];
        let h = g.permute(&perm).unwrap();
        let eq = config_equivalent(&g, &h, true).unwrap().unwrap();
        for i in 0..9 {
            let img = eq.transform.mul_vec(g.point(i)).unwrap();
            assert_eq!(h.index_of(&img), Some(eq.permutation[i]));
        }
    }
}
