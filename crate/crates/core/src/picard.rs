//! The lattice `Z^{n+1}` spanned by `H, E_1, .., E_n` with `H.H = r - 2`, `E_i.E_i = -1`,
//! its Weyl group, and Mordell-Weil rank formulas.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use itertools::Itertools;

use crate::{Error, Result};

/// Default cap on the number of classes an orbit search may hold.
pub const DEFAULT_MAX_CLASSES: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CremonaLattice {
    r: usize,
    n: usize,
}

/// The class `d H - sum m_i E_i`. Ordering is by `d`, then `m` lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PicClass {
    pub d: i64,
    pub m: Vec<i64>,
}

impl PicClass {
    pub fn new(d: i64, m: Vec<i64>) -> Self {
        PicClass { d, m }
    }

    pub fn h(n: usize) -> Self {
        PicClass { d: 1, m: vec![0; n] }
    }

    /// `E_i`, 1-based.
    pub fn e(n: usize, i: usize) -> Self {
        let mut m = vec![0; n];
        m[i - 1] = -1;
        PicClass { d: 0, m }
    }

    pub fn add(&self, other: &Self) -> Self {
        PicClass { d: self.d + other.d, m: self.m.iter().zip(&other.m).map(|(a, b)| a + b).collect() }
    }

    pub fn scale(&self, k: i64) -> Self {
        PicClass { d: k * self.d, m: self.m.iter().map(|a| k * a).collect() }
    }
}

/// Which reflections generate the orbit search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorSet {
    /// `s_1 .. s_{n-1}` swapping adjacent points and `s_n` in `H - E_1 - .. - E_r`.
    Simple,
    /// The adjacent swaps together with the reflection in `H - sum_{i in S} E_i` for every
    /// `r`-subset `S`. Generates the same group.
    AllCremona,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitReport {
    /// Every class reached, sorted.
    pub classes: Vec<PicClass>,
    /// Maximum degree among the classes first reached at each depth, from depth 0.
    pub per_depth_max_degree: Vec<i64>,
    /// True when the search ran out of new classes before the depth limit.
    pub closed: bool,
}

impl CremonaLattice {
    pub fn new(r: usize, n: usize) -> Result<Self> {
        if r < 3 || n < r {
            return Err(Error::InvalidInput(format!("lattice needs n >= r >= 3, got r = {r}, n = {n}")));
        }
        Ok(CremonaLattice { r, n })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn check(&self, x: &PicClass) -> Result<()> {
        if x.m.len() != self.n {
            return Err(Error::LengthMismatch { expected: self.n, got: x.m.len() });
        }
        Ok(())
    }

    pub fn dot(&self, x: &PicClass, y: &PicClass) -> Result<i64> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.dot_unchecked(x, y))
    }

    fn dot_unchecked(&self, x: &PicClass, y: &PicClass) -> i64 {
        (self.r as i64 - 2) * x.d * y.d - x.m.iter().zip(&y.m).map(|(a, b)| a * b).sum::<i64>()
    }

    /// `K = -r H + (r - 2) sum E_i`.
    pub fn canonical_class(&self) -> PicClass {
        PicClass { d: -(self.r as i64), m: vec![-(self.r as i64 - 2); self.n] }
    }

    pub fn anticanonical_class(&self) -> PicClass {
        self.canonical_class().scale(-1)
    }

    /// `-K/2`, defined for even `r`: `2H - sum E_i` for `r = 4`, `3H - 2 sum E_i` for `r = 6`.
    pub fn half_anticanonical(&self) -> Result<PicClass> {
        if self.r % 2 != 0 {
            return Err(Error::Unsupported(format!("-K/2 is not integral for r = {}", self.r)));
        }
        Ok(PicClass { d: self.r as i64 / 2, m: vec![(self.r as i64 - 2) / 2; self.n] })
    }

    /// `H - sum_{i in S} E_i` for a set of 1-based indices; a root when `|S| = r`.
    pub fn cremona_root(&self, subset: &[usize]) -> Result<PicClass> {
        let mut sorted = subset.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if subset.len() != self.r || sorted.len() != self.r {
            return Err(Error::InvalidInput(format!("need {} distinct indices, got {subset:?}", self.r)));
        }
        let mut m = vec![0; self.n];
        for &i in subset {
            if i == 0 || i > self.n {
                return Err(Error::IndexOutOfRange { index: i, max: self.n });
            }
            m[i - 1] = 1;
        }
        Ok(PicClass { d: 1, m })
    }

    fn reflect_in(&self, alpha: &PicClass, x: &PicClass) -> PicClass {
        x.add(&alpha.scale(self.dot_unchecked(x, alpha)))
    }

    /// The simple reflection `s_i`, `1 <= i <= n`: `s_i` for `i < n` swaps `E_i` and
    /// `E_{i+1}`; `s_n` is the reflection in `H - E_1 - .. - E_r`.
    pub fn reflection(&self, i: usize, x: &PicClass) -> Result<PicClass> {
        self.check(x)?;
        if i == 0 || i > self.n {
            return Err(Error::IndexOutOfRange { index: i, max: self.n });
        }
        if i < self.n {
            let mut y = x.clone();
            y.m.swap(i - 1, i);
            return Ok(y);
        }
        let alpha = self.cremona_root(&(1..=self.r).collect::<Vec<_>>())?;
        Ok(self.reflect_in(&alpha, x))
    }

    /// Reflection in `H - sum_{i in S} E_i`: the action of the standard Cremona map on the
    /// points in `S` (1-based).
    pub fn cremona_reflection(&self, subset: &[usize], x: &PicClass) -> Result<PicClass> {
        self.check(x)?;
        let alpha = self.cremona_root(subset)?;
        Ok(self.reflect_in(&alpha, x))
    }

    fn generators(&self, set: GeneratorSet) -> Vec<Gen> {
        let mut g: Vec<Gen> = (1..self.n).map(Gen::Swap).collect();
        match set {
            GeneratorSet::Simple => g.push(Gen::Root(self.cremona_root(&(1..=self.r).collect::<Vec<_>>()).expect("valid"))),
            GeneratorSet::AllCremona => {
                for s in (1..=self.n).combinations(self.r) {
                    g.push(Gen::Root(self.cremona_root(&s).expect("valid")));
                }
            }
        }
        g
    }

    /// Breadth-first closure of `seeds` under the generators. `depth = None` runs until the
    /// orbit closes; classes of degree above `degree_cap` are dropped.
    pub fn orbit_bfs(
        &self,
        seeds: &[PicClass],
        depth: Option<usize>,
        degree_cap: Option<i64>,
        generators: GeneratorSet,
        max_classes: usize,
    ) -> Result<OrbitReport> {
        for s in seeds {
            self.check(s)?;
        }
        let gens = self.generators(generators);
        let mut seen: BTreeSet<PicClass> = seeds.iter().cloned().collect();
        let mut frontier: Vec<PicClass> = seen.iter().cloned().collect();
        let mut per_depth = vec![frontier.iter().map(|c| c.d).max().unwrap_or(0)];
        let mut level = 0;
        let closed = loop {
            if frontier.is_empty() {
                per_depth.pop();
                break true;
            }
            if depth.is_some_and(|d| level >= d) {
                break false;
            }
            let mut next = BTreeSet::new();
            for x in &frontier {
                for g in &gens {
                    let y = match g {
                        Gen::Swap(i) => {
                            let mut y = x.clone();
                            y.m.swap(i - 1, *i);
                            y
                        }
                        Gen::Root(a) => self.reflect_in(a, x),
                    };
                    if degree_cap.is_some_and(|c| y.d > c) || seen.contains(&y) {
                        continue;
                    }
                    next.insert(y);
                }
            }
            seen.extend(next.iter().cloned());
            if seen.len() > max_classes {
                return Err(Error::ClassLimit(max_classes));
            }
            frontier = next.into_iter().collect();
            per_depth.push(frontier.iter().map(|c| c.d).max().unwrap_or(0));
            level += 1;
        };
        Ok(OrbitReport { classes: seen.into_iter().collect(), per_depth_max_degree: per_depth, closed })
    }

    /// For `r = 3`: `x.x = -1` and `x.K = -1`.
    pub fn is_minus_one_class(&self, x: &PicClass) -> Result<bool> {
        if self.r != 3 {
            return Err(Error::Unsupported(format!(
                "numerical (-1)-class test needs r = 3 (got r = {}); use exceptional_word",
                self.r
            )));
        }
        let k = self.canonical_class();
        Ok(self.dot(x, x)? == -1 && self.dot(x, &k)? == -1)
    }

    /// A word of Cremona reflections carrying some `E_i` to `x`, found by greedy degree
    /// reduction: returns `(i, [S_1, .., S_k])` with `x = s_{S_1} .. s_{S_k} (E_i)`. `None` when
    /// the reduction stalls before reaching an exceptional class.
    pub fn exceptional_word(&self, x: &PicClass, max_steps: usize) -> Result<Option<(usize, Vec<Vec<usize>>)>> {
        self.check(x)?;
        let mut cur = x.clone();
        let mut word = Vec::new();
        for _ in 0..=max_steps {
            if cur.d == 0 {
                let nz: Vec<usize> = (0..self.n).filter(|&i| cur.m[i] != 0).collect();
                return Ok(match nz.as_slice() {
                    [i] if cur.m[*i] == -1 => Some((i + 1, word)),
                    _ => None,
                });
            }
            let mut order: Vec<usize> = (0..self.n).collect();
            order.sort_by_key(|&i| (core::cmp::Reverse(cur.m[i]), i));
            let subset: Vec<usize> = order[..self.r].iter().map(|i| i + 1).collect();
            let next = self.cremona_reflection(&subset, &cur)?;
            if next.d >= cur.d {
                return Ok(None);
            }
            word.push(subset);
            cur = next;
        }
        Ok(None)
    }
}

#[derive(Clone, Debug)]
enum Gen {
    Swap(usize),
    Root(PicClass),
}

/// True iff `1/2 + 1/r + 1/(n - r) <= 1`, i.e. the Weyl group of `T_{2,r,n-r}` is infinite.
pub fn weyl_is_infinite(r: usize, n: usize) -> Result<bool> {
    if n <= r {
        return Err(Error::InvalidInput(format!("need n > r, got r = {r}, n = {n}")));
    }
    let s = n - r;
    Ok(r * s + 2 * s + 2 * r <= 2 * r * s)
}

/// `rho = 8 - a + b` for a pencil of plane cubics with `a` collinear triples and `b`
/// partitions into collinear triples.
pub fn mw_rank_cubic(a: u64, b: u64) -> Result<u64> {
    (8 + b).checked_sub(a).ok_or_else(|| {
        Error::Inconsistent(format!("8 - a + b is negative for a = {a}, b = {b}"))
    })
}

/// `a - b`, the total rank contributed by reducible fibers.
pub fn fiber_rank_sum(a: u64, b: u64) -> i64 {
    a as i64 - b as i64
}

/// `rho = 7 - a/2` for a net of quadrics with `a` coplanar quadruples among its base points.
pub fn mw_rank_quadric(a: u64) -> Result<u64> {
    if a % 2 == 1 {
        return Err(Error::Inconsistent(format!("coplanar quadruples come in pairs, got a = {a}")));
    }
    7u64.checked_sub(a / 2)
        .ok_or_else(|| Error::Inconsistent(format!("7 - a/2 is negative for a = {a}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// All classes with `x.x = x.K = -1` for `r = 3`, by direct enumeration:
    /// `sum m = 3d - 1` and `sum m^2 = d^2 + 1`.
    fn brute_force_minus_one(n: usize, dmax: i64) -> BTreeSet<PicClass> {
        fn rec(i: usize, n: usize, rest_sum: i64, rest_sq: i64, m: &mut Vec<i64>, d: i64, out: &mut BTreeSet<PicClass>) {
            if i == n {
                if rest_sum == 0 && rest_sq == 0 {
                    out.insert(PicClass::new(d, m.clone()));
                }
                return;
            }
            let mut bound = 0;
            while (bound + 1) * (bound + 1) <= rest_sq {
                bound += 1;
            }
            for v in -bound..=bound {
                m.push(v);
                rec(i + 1, n, rest_sum - v, rest_sq - v * v, m, d, out);
                m.pop();
            }
        }
        let mut out = BTreeSet::new();
        for d in -1..=dmax {
            rec(0, n, 3 * d - 1, d * d + 1, &mut Vec::new(), d, &mut out);
        }
        out
    }

    fn es(n: usize) -> Vec<PicClass> {
        (1..=n).map(|i| PicClass::e(n, i)).collect()
    }

    #[test]
    fn form_values() {
        let l = CremonaLattice::new(3, 9).unwrap();
        let h = PicClass::h(9);
        assert_eq!(l.dot(&h, &h).unwrap(), 1);
        let e1 = PicClass::e(9, 1);
        assert_eq!(l.dot(&e1, &e1).unwrap(), -1);
        let k = l.canonical_class();
        assert_eq!(l.dot(&k, &k).unwrap(), 0);
        assert_eq!(l.anticanonical_class(), PicClass::new(3, vec![1; 9]));
        assert_eq!(CremonaLattice::new(4, 8).unwrap().half_anticanonical().unwrap(), PicClass::new(2, vec![1; 8]));
        assert_eq!(CremonaLattice::new(6, 9).unwrap().half_anticanonical().unwrap(), PicClass::new(3, vec![2; 9]));
        assert!(l.half_anticanonical().is_err());
        assert!(l.dot(&h, &PicClass::h(8)).is_err());
    }

    #[test]
    fn simple_reflection_examples() {
        let l = CremonaLattice::new(3, 9).unwrap();
        let mut m = vec![0; 9];
        m[1] = 1;
        m[2] = 1;
        assert_eq!(l.reflection(9, &PicClass::e(9, 1)).unwrap(), PicClass::new(1, m));
        let s9h = l.reflection(9, &PicClass::h(9)).unwrap();
        assert_eq!(s9h, PicClass::new(2, [1, 1, 1, 0, 0, 0, 0, 0, 0].to_vec()));
        assert!(l.reflection(10, &PicClass::h(9)).is_err());
        assert!(l.reflection(0, &PicClass::h(9)).is_err());
    }

    #[test]
    fn weyl_finiteness() {
        let infinite: Vec<(usize, usize)> = (4..=9)
            .map(|n| (3, n))
            .chain([(4, 8), (6, 9)])
            .filter(|&(r, n)| weyl_is_infinite(r, n).unwrap())
            .collect();
        assert_eq!(infinite, [(3, 9), (4, 8), (6, 9)]);
        assert!(!weyl_is_infinite(3, 8).unwrap());
        assert!(weyl_is_infinite(3, 3).is_err());
    }

    #[test]
    fn finite_orbits_match_brute_force() {
        for (n, size) in [(6, 27), (7, 56), (8, 240)] {
            let l = CremonaLattice::new(3, n).unwrap();
            let oracle = brute_force_minus_one(n, 7);
            assert_eq!(oracle.len(), size);
            for set in [GeneratorSet::Simple, GeneratorSet::AllCremona] {
                let rep = l.orbit_bfs(&es(n), None, None, set, DEFAULT_MAX_CLASSES).unwrap();
                assert!(rep.closed);
                assert_eq!(rep.classes, oracle.iter().cloned().collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn affine_orbit_degree_growth() {
        let l = CremonaLattice::new(3, 9).unwrap();
        let rep = l.orbit_bfs(&es(9), Some(1), None, GeneratorSet::AllCremona, DEFAULT_MAX_CLASSES).unwrap();
        let lines = rep.classes.iter().filter(|c| c.d == 1).count();
        assert_eq!(lines, 36);
        let rep = l
            .orbit_bfs(&[PicClass::e(9, 1)], Some(8), None, GeneratorSet::AllCremona, DEFAULT_MAX_CLASSES)
            .unwrap();
        assert!(rep.per_depth_max_degree.windows(2).all(|w| w[0] < w[1]), "{:?}", rep.per_depth_max_degree);
        let k = l.canonical_class();
        for c in &rep.classes {
            assert_eq!((l.dot(c, c).unwrap(), l.dot(c, &k).unwrap()), (-1, -1));
        }
        assert!(!rep.closed);
    }

    #[test]
    fn class_limit_guard() {
        let l = CremonaLattice::new(3, 9).unwrap();
        let err = l.orbit_bfs(&es(9), None, None, GeneratorSet::AllCremona, 500).unwrap_err();
        assert_eq!(err, Error::ClassLimit(500));
    }

    #[test]
    fn depth_zero_is_seeds() {
        let l = CremonaLattice::new(3, 9).unwrap();
        let rep = l.orbit_bfs(&es(9), Some(0), None, GeneratorSet::Simple, 10).unwrap();
        assert_eq!(rep.classes.len(), 9);
        assert_eq!(rep.per_depth_max_degree, [0]);
    }

    #[test]
    fn minus_one_classes() {
        let l = CremonaLattice::new(3, 9).unwrap();
        assert!(l.is_minus_one_class(&PicClass::e(9, 1)).unwrap());
        let mut m = vec![0; 9];
        m[0] = 1;
        m[1] = 1;
        assert!(l.is_minus_one_class(&PicClass::new(1, m)).unwrap());
        assert!(!l.is_minus_one_class(&PicClass::h(9)).unwrap());
        assert!(CremonaLattice::new(4, 8).unwrap().is_minus_one_class(&PicClass::h(8)).is_err());
    }

    #[test]
    fn exceptional_words_for_higher_r() {
        let l = CremonaLattice::new(4, 8).unwrap();
        let rep = l
            .orbit_bfs(&[PicClass::e(8, 1)], Some(4), None, GeneratorSet::AllCremona, DEFAULT_MAX_CLASSES)
            .unwrap();
        for c in &rep.classes {
            let (i, word) = l.exceptional_word(c, 64).unwrap().expect("orbit member reduces");
            let mut y = PicClass::e(8, i);
            for s in word.iter().rev() {
                y = l.cremona_reflection(s, &y).unwrap();
            }
            assert_eq!(&y, c);
        }
        assert_eq!(l.exceptional_word(&PicClass::h(8), 64).unwrap(), None);
    }

    #[test]
    fn mordell_weil_formulas() {
        assert_eq!(mw_rank_cubic(8, 2).unwrap(), 2);
        assert_eq!(mw_rank_cubic(9, 3).unwrap(), 2);
        assert_eq!(mw_rank_cubic(7, 2).unwrap(), 3);
        assert_eq!(mw_rank_cubic(8, 0).unwrap(), 0);
        assert!(mw_rank_cubic(12, 2).is_err());
        assert_eq!(fiber_rank_sum(8, 2), 6);
        assert_eq!(mw_rank_quadric(12).unwrap(), 1);
        assert_eq!(mw_rank_quadric(10).unwrap(), 2);
        assert_eq!(mw_rank_quadric(0).unwrap(), 7);
        assert_eq!(mw_rank_quadric(14).unwrap(), 0);
        assert!(mw_rank_quadric(3).is_err());
        assert!(mw_rank_quadric(16).is_err());
    }

    fn lattices() -> impl Strategy<Value = CremonaLattice> {
        prop::sample::select(vec![(3, 9), (4, 8), (6, 9), (3, 6)]).prop_map(|(r, n)| CremonaLattice::new(r, n).unwrap())
    }

    fn class(n: usize) -> impl Strategy<Value = PicClass> {
        (-20i64..20, prop::collection::vec(-20i64..20, n)).prop_map(|(d, m)| PicClass::new(d, m))
    }

    proptest! {
        #[test]
        fn reflections_are_isometric_involutions(
            (l, x, y, i) in lattices().prop_flat_map(|l| (Just(l), class(l.n()), class(l.n()), 1..=l.n()))
        ) {
            let sx = l.reflection(i, &x).unwrap();
            let sy = l.reflection(i, &y).unwrap();
            prop_assert_eq!(l.reflection(i, &sx).unwrap(), x.clone());
            prop_assert_eq!(l.dot(&sx, &sy).unwrap(), l.dot(&x, &y).unwrap());
            let k = l.canonical_class();
            prop_assert_eq!(l.reflection(i, &k).unwrap(), k);
            if let Ok(h) = l.half_anticanonical() {
                prop_assert_eq!(l.reflection(i, &h).unwrap(), h);
            }
        }
    }
}
