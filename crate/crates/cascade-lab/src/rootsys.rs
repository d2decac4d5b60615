//! Finite irreducible root systems of types A through G, Bourbaki numbering.
//!
//! Roots are stored as integer coefficient vectors over the simple roots.
//! Positive roots live in one table sorted by height and then by
//! descending coefficient vector, so the simple roots occupy indices
//! `0..rank` in their Bourbaki order.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Upper bound on the size of the positive-root table (bitset width).
pub const MAX_POSITIVE_ROOTS: usize = 128;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Series {
    fn letter(self) -> char {
        match self {
            Series::A => 'A',
            Series::B => 'B',
            Series::C => 'C',
            Series::D => 'D',
            Series::E => 'E',
            Series::F => 'F',
            Series::G => 'G',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct DynkinSpec {
    pub series: Series,
    pub rank: usize,
}

impl DynkinSpec {
    pub fn new(series: Series, rank: usize) -> Result<Self> {
        let ok = match series {
            Series::A => rank >= 1,
            Series::B | Series::C => rank >= 2,
            Series::D => rank >= 3,
            Series::E => (6..=8).contains(&rank),
            Series::F => rank == 4,
            Series::G => rank == 2,
        };
        if !ok {
            return Err(Error::Usage(format!(
                "rank {rank} is not valid for series {}",
                series.letter()
            )));
        }
        Ok(DynkinSpec { series, rank })
    }

    /// Number of positive roots, from the classical formulas.
    pub fn positive_root_count(&self) -> usize {
        let n = self.rank;
        match self.series {
            Series::A => n * (n + 1) / 2,
            Series::B | Series::C => n * n,
            Series::D => n * (n - 1),
            Series::E => match n {
                6 => 36,
                7 => 63,
                _ => 120,
            },
            Series::F => 24,
            Series::G => 6,
        }
    }

    /// Order of the Weyl group.
    pub fn weyl_order(&self) -> u128 {
        let n = self.rank as u128;
        let fact = |k: u128| (1..=k).product::<u128>();
        match self.series {
            Series::A => fact(n + 1),
            Series::B | Series::C => (1u128 << n) * fact(n),
            Series::D => (1u128 << (n - 1)) * fact(n),
            Series::E => match n {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            Series::F => 1_152,
            Series::G => 12,
        }
    }

    /// Cartan matrix with `a[i][j] = (beta_j, beta_i^vee)`.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut a = vec![vec![0i64; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize, aij: i64, aji: i64| {
            a[i][j] = aij;
            a[j][i] = aji;
        };
        match self.series {
            Series::A => {
                for i in 0..n.saturating_sub(1) {
                    link(i, i + 1, -1, -1);
                }
            }
            Series::B => {
                for i in 0..n - 2 {
                    link(i, i + 1, -1, -1);
                }
                // beta_n short
                link(n - 2, n - 1, -1, -2);
            }
            Series::C => {
                for i in 0..n - 2 {
                    link(i, i + 1, -1, -1);
                }
                // beta_n long
                link(n - 2, n - 1, -2, -1);
            }
            Series::D => {
                for i in 0..n - 2 {
                    link(i, i + 1, -1, -1);
                }
                link(n - 3, n - 1, -1, -1);
            }
            Series::E => {
                link(0, 2, -1, -1);
                link(1, 3, -1, -1);
                for i in 2..n - 1 {
                    link(i, i + 1, -1, -1);
                }
            }
            Series::F => {
                link(0, 1, -1, -1);
                link(1, 2, -1, -2);
                link(2, 3, -1, -1);
            }
            Series::G => {
                // beta_1 short, beta_2 long
                link(0, 1, -3, -1);
            }
        }
        a
    }
}

impl fmt::Display for DynkinSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.series.letter(), self.rank)
    }
}

impl FromStr for DynkinSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let series = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Series::A,
            Some('B') => Series::B,
            Some('C') => Series::C,
            Some('D') => Series::D,
            Some('E') => Series::E,
            Some('F') => Series::F,
            Some('G') => Series::G,
            _ => return Err(Error::Usage(format!("unknown Dynkin type {s:?}"))),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::Usage(format!("unknown Dynkin type {s:?}")))?;
        DynkinSpec::new(series, rank)
    }
}

impl From<DynkinSpec> for String {
    fn from(s: DynkinSpec) -> String {
        s.to_string()
    }
}

impl TryFrom<String> for DynkinSpec {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// A root together with its sign, referring to the positive-root table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedRoot {
    pub index: usize,
    pub negative: bool,
}

impl SignedRoot {
    pub fn pos(index: usize) -> Self {
        SignedRoot { index, negative: false }
    }
    pub fn neg(index: usize) -> Self {
        SignedRoot { index, negative: true }
    }
    pub fn negate(self) -> Self {
        SignedRoot { index: self.index, negative: !self.negative }
    }
}

/// Bitset over the positive-root table.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootSet(pub u128);

impl RootSet {
    pub const EMPTY: RootSet = RootSet(0);

    pub fn single(i: usize) -> Self {
        RootSet(1u128 << i)
    }
    pub fn insert(&mut self, i: usize) {
        self.0 |= 1u128 << i;
    }
    pub fn contains(&self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }
    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }
    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }
    pub fn union(self, o: RootSet) -> RootSet {
        RootSet(self.0 | o.0)
    }
    pub fn intersection(self, o: RootSet) -> RootSet {
        RootSet(self.0 & o.0)
    }
    pub fn minus(self, o: RootSet) -> RootSet {
        RootSet(self.0 & !o.0)
    }
    pub fn is_disjoint(&self, o: &RootSet) -> bool {
        self.0 & o.0 == 0
    }
    pub fn is_subset(&self, o: &RootSet) -> bool {
        self.0 & !o.0 == 0
    }
    pub fn iter(&self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }
}

impl FromIterator<usize> for RootSet {
    fn from_iter<I: IntoIterator<Item = usize>>(it: I) -> Self {
        let mut s = RootSet::EMPTY;
        for i in it {
            s.insert(i);
        }
        s
    }
}

/// Bitset over simple-root indices (0-based internally).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleSet(pub u32);

impl SimpleSet {
    pub const EMPTY: SimpleSet = SimpleSet(0);

    pub fn full(rank: usize) -> Self {
        SimpleSet(((1u64 << rank) - 1) as u32)
    }
    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }
    pub fn contains(&self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }
    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }
    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }
    pub fn union(self, o: SimpleSet) -> SimpleSet {
        SimpleSet(self.0 | o.0)
    }
    pub fn intersection(self, o: SimpleSet) -> SimpleSet {
        SimpleSet(self.0 & o.0)
    }
    pub fn is_subset(&self, o: &SimpleSet) -> bool {
        self.0 & !o.0 == 0
    }
    pub fn iter(&self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..32).filter(move |i| bits >> i & 1 == 1)
    }
    /// Bourbaki (1-based) indices.
    pub fn to_bourbaki(&self) -> Vec<usize> {
        self.iter().map(|i| i + 1).collect()
    }
}

impl FromIterator<usize> for SimpleSet {
    fn from_iter<I: IntoIterator<Item = usize>>(it: I) -> Self {
        let mut s = SimpleSet::EMPTY;
        for i in it {
            s.insert(i);
        }
        s
    }
}

/// The simple roots of a parabolic subgroup, Delta_P. Empty means P = B.
pub type ParabolicSubset = SimpleSet;

/// Parse a comma list of Bourbaki indices ("" or "-" means the empty set).
pub fn parse_parabolic(s: &str, rank: usize) -> Result<ParabolicSubset> {
    let s = s.trim();
    let mut set = SimpleSet::EMPTY;
    if s.is_empty() || s == "-" || s.eq_ignore_ascii_case("b") {
        return Ok(set);
    }
    for tok in s.split(',') {
        let i: usize = tok
            .trim()
            .parse()
            .map_err(|_| Error::Usage(format!("--parabolic: cannot parse {tok:?}")))?;
        if i == 0 || i > rank {
            return Err(Error::Usage(format!("--parabolic: index {i} outside 1..{rank}")));
        }
        set.insert(i - 1);
    }
    Ok(set)
}

#[derive(Debug)]
pub struct RootSystem {
    pub spec: DynkinSpec,
    pub rank: usize,
    pub cartan: Vec<Vec<i64>>,
    /// (beta_i, beta_i), long roots normalized to 2.
    pub simple_sqlen: Vec<Rational64>,
    pub gram: Vec<Vec<Rational64>>,
    roots: Vec<Vec<i64>>,
    coroots: Vec<Vec<i64>>,
    sqlen: Vec<Rational64>,
    long: Vec<bool>,
    height: Vec<i64>,
    support: Vec<SimpleSet>,
    lookup: HashMap<Vec<i64>, usize>,
    /// simple_pair[k][i] = (gamma_k, beta_i^vee)
    simple_pair: Vec<Vec<i64>>,
    /// pair[k][l] = (gamma_k, gamma_l^vee)
    pair: Vec<Vec<i64>>,
    /// simple_refl[i][k] = s_i(gamma_k)
    simple_refl: Vec<Vec<SignedRoot>>,
    highest: usize,
}

impl RootSystem {
    pub fn new(spec: DynkinSpec) -> Result<Self> {
        let spec = DynkinSpec::new(spec.series, spec.rank)?;
        if spec.positive_root_count() > MAX_POSITIVE_ROOTS {
            return Err(Error::Resource(format!(
                "{spec} has {} positive roots; at most {MAX_POSITIVE_ROOTS} supported",
                spec.positive_root_count()
            )));
        }
        let n = spec.rank;
        let cartan = spec.cartan_matrix();

        // Squared lengths: len_j = len_i * a[i][j] / a[j][i] along Dynkin edges.
        let mut len: Vec<Option<Rational64>> = vec![None; n];
        len[0] = Some(Rational64::one());
        let mut stack = vec![0usize];
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if i != j && cartan[i][j] != 0 && len[j].is_none() {
                    len[j] = Some(len[i].unwrap() * Rational64::new(cartan[i][j], cartan[j][i]));
                    stack.push(j);
                }
            }
        }
        let len: Vec<Rational64> = len.into_iter().map(|l| l.expect("connected diagram")).collect();
        let max = *len.iter().max().unwrap();
        let simple_sqlen: Vec<Rational64> = len.iter().map(|l| *l * Rational64::from(2) / max).collect();
        let gram: Vec<Vec<Rational64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| simple_sqlen[i] * Rational64::from(cartan[i][j]) / Rational64::from(2))
                    .collect()
            })
            .collect();

        let roots = positive_roots_by_closure(&cartan);
        if roots.len() != spec.positive_root_count() {
            return Err(Error::Internal(format!(
                "closure produced {} roots for {spec}",
                roots.len()
            )));
        }
        let lookup: HashMap<Vec<i64>, usize> =
            roots.iter().enumerate().map(|(k, r)| (r.clone(), k)).collect();

        let mut sqlen = Vec::with_capacity(roots.len());
        let mut coroots = Vec::with_capacity(roots.len());
        for r in &roots {
            let mut s = Rational64::zero();
            for i in 0..n {
                for j in 0..n {
                    s += gram[i][j] * Rational64::from(r[i] * r[j]);
                }
            }
            let cv: Vec<i64> = (0..n)
                .map(|i| {
                    let c = Rational64::from(r[i]) * simple_sqlen[i] / s;
                    assert!(c.is_integer(), "coroot coefficient not integral");
                    c.to_integer()
                })
                .collect();
            sqlen.push(s);
            coroots.push(cv);
        }
        let long: Vec<bool> = sqlen.iter().map(|s| *s == Rational64::from(2)).collect();
        let height = roots.iter().map(|r| r.iter().sum()).collect();
        let support = roots
            .iter()
            .map(|r| r.iter().enumerate().filter(|(_, c)| **c > 0).map(|(i, _)| i).collect())
            .collect();
        let simple_pair: Vec<Vec<i64>> = roots
            .iter()
            .map(|r| (0..n).map(|i| (0..n).map(|j| r[j] * cartan[i][j]).sum()).collect())
            .collect();
        let pair: Vec<Vec<i64>> = simple_pair
            .iter()
            .map(|sp| {
                coroots
                    .iter()
                    .map(|cv| (0..n).map(|i| cv[i] * sp[i]).sum())
                    .collect()
            })
            .collect();
        let highest = roots.len() - 1;

        let mut rs = RootSystem {
            spec,
            rank: n,
            cartan,
            simple_sqlen,
            gram,
            roots,
            coroots,
            sqlen,
            long,
            height,
            support,
            lookup,
            simple_pair,
            pair,
            simple_refl: Vec::new(),
            highest,
        };
        let simple_refl = (0..n)
            .map(|i| {
                (0..rs.roots.len())
                    .map(|k| {
                        let mut v = rs.roots[k].clone();
                        v[i] -= rs.simple_pair[k][i];
                        rs.find(&v).expect("simple reflection permutes roots")
                    })
                    .collect()
            })
            .collect();
        rs.simple_refl = simple_refl;
        Ok(rs)
    }

    pub fn num_positive(&self) -> usize {
        self.roots.len()
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn root(&self, k: usize) -> &[i64] {
        &self.roots[k]
    }

    pub fn coroot(&self, k: usize) -> &[i64] {
        &self.coroots[k]
    }

    pub fn sqlen(&self, k: usize) -> Rational64 {
        self.sqlen[k]
    }

    pub fn height(&self, k: usize) -> i64 {
        self.height[k]
    }

    pub fn highest_root(&self) -> usize {
        self.highest
    }

    pub fn all_positive(&self) -> RootSet {
        (0..self.roots.len()).collect()
    }

    /// Index of a positive root given by coefficients.
    pub fn index_of(&self, coeffs: &[i64]) -> Option<usize> {
        self.lookup.get(coeffs).copied()
    }

    /// Signed lookup of any root (positive or negative).
    pub fn find(&self, coeffs: &[i64]) -> Option<SignedRoot> {
        if let Some(&k) = self.lookup.get(coeffs) {
            return Some(SignedRoot::pos(k));
        }
        let neg: Vec<i64> = coeffs.iter().map(|c| -c).collect();
        self.lookup.get(&neg).map(|&k| SignedRoot::neg(k))
    }

    pub fn is_root(&self, coeffs: &[i64]) -> bool {
        self.find(coeffs).is_some()
    }

    pub fn signed_coeffs(&self, r: SignedRoot) -> Vec<i64> {
        let v = &self.roots[r.index];
        if r.negative {
            v.iter().map(|c| -c).collect()
        } else {
            v.clone()
        }
    }

    /// (gamma_k, gamma_l^vee) for positive roots.
    pub fn pair(&self, k: usize, l: usize) -> i64 {
        self.pair[k][l]
    }

    /// (gamma_k, beta_i^vee).
    pub fn pair_simple(&self, k: usize, i: usize) -> i64 {
        self.simple_pair[k][i]
    }

    /// (x, alpha^vee) for an integer vector x in root coordinates.
    pub fn pairing(&self, x: &[i64], alpha: usize) -> i64 {
        let cv = &self.coroots[alpha];
        (0..self.rank)
            .map(|i| cv[i] * (0..self.rank).map(|j| x[j] * self.cartan[i][j]).sum::<i64>())
            .sum()
    }

    /// (x, alpha^vee) for a rational vector x in root coordinates (e.g. weights).
    pub fn pairing_rational(&self, x: &[Rational64], alpha: usize) -> Rational64 {
        let cv = &self.coroots[alpha];
        let mut s = Rational64::zero();
        for i in 0..self.rank {
            for j in 0..self.rank {
                s += x[j] * Rational64::from(cv[i] * self.cartan[i][j]);
            }
        }
        s
    }

    /// (x, y) through the gram matrix.
    pub fn inner(&self, x: &[i64], y: &[i64]) -> Rational64 {
        let mut s = Rational64::zero();
        for i in 0..self.rank {
            for j in 0..self.rank {
                s += self.gram[i][j] * Rational64::from(x[i] * y[j]);
            }
        }
        s
    }

    /// (x, e) where e is an element of the coroot lattice given over Delta^vee.
    pub fn pair_with_coweight(&self, k: usize, e: &[i64]) -> i64 {
        (0..self.rank).map(|i| e[i] * self.simple_pair[k][i]).sum()
    }

    /// Fundamental weight omega_i in root coordinates: (omega_i, beta_j^vee) = delta_ij.
    pub fn fundamental_weight(&self, i: usize) -> Vec<Rational64> {
        // Solve sum_k a[j][k] c_k = delta_ij.
        let n = self.rank;
        let mut m: Vec<Vec<Rational64>> = (0..n)
            .map(|j| {
                let mut row: Vec<Rational64> =
                    (0..n).map(|k| Rational64::from(self.cartan[j][k])).collect();
                row.push(if j == i { Rational64::one() } else { Rational64::zero() });
                row
            })
            .collect();
        for col in 0..n {
            let p = (col..n).find(|&r| !m[r][col].is_zero()).expect("Cartan matrix invertible");
            m.swap(col, p);
            let piv = m[col][col];
            for x in m[col].iter_mut() {
                *x /= piv;
            }
            for r in 0..n {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col];
                    for c in 0..=n {
                        let sub = f * m[col][c];
                        m[r][c] -= sub;
                    }
                }
            }
        }
        m.into_iter().map(|row| row[n]).collect()
    }

    pub fn simple_reflection_image(&self, i: usize, k: usize) -> SignedRoot {
        self.simple_refl[i][k]
    }

    /// Delta(alpha): simple roots with positive coefficient.
    pub fn support(&self, k: usize) -> SimpleSet {
        self.support[k]
    }

    /// Positive roots whose support lies in `s`.
    pub fn roots_in(&self, s: SimpleSet) -> RootSet {
        (0..self.roots.len()).filter(|&k| self.support[k].is_subset(&s)).collect()
    }

    /// alpha <= alpha' in the root order (all coefficients of alpha' - alpha >= 0).
    pub fn root_leq(&self, a: usize, b: usize) -> bool {
        self.roots[a].iter().zip(&self.roots[b]).all(|(x, y)| x <= y)
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        i != j && self.cartan[i][j] != 0
    }

    /// Delta_alpha^o: simple roots orthogonal to alpha.
    pub fn orthogonal_simple_set(&self, k: usize) -> SimpleSet {
        (0..self.rank).filter(|&i| self.simple_pair[k][i] == 0).collect()
    }

    /// alpha +- beta not in R and not zero, for signed roots.
    pub fn is_strongly_orthogonal(&self, a: SignedRoot, b: SignedRoot) -> bool {
        let x = self.signed_coeffs(a);
        let y = self.signed_coeffs(b);
        let sum: Vec<i64> = x.iter().zip(&y).map(|(p, q)| p + q).collect();
        let diff: Vec<i64> = x.iter().zip(&y).map(|(p, q)| p - q).collect();
        let nonzero_nonroot = |v: &[i64]| v.iter().any(|c| *c != 0) && !self.is_root(v);
        nonzero_nonroot(&sum) && nonzero_nonroot(&diff)
    }

    pub fn strongly_orthogonal(&self, a: usize, b: usize) -> bool {
        self.is_strongly_orthogonal(SignedRoot::pos(a), SignedRoot::pos(b))
    }

    /// Every root of R(S) strongly orthogonal to every root of R(T).
    pub fn subsystems_totally_disjoint(&self, s: SimpleSet, t: SimpleSet) -> bool {
        let rs = self.roots_in(s);
        let rt = self.roots_in(t);
        rs.iter().all(|a| rt.iter().all(|b| self.strongly_orthogonal(a, b)))
    }

    /// Simple sets whose members are pairwise distinct and non-adjacent.
    pub fn simple_sets_totally_disjoint(&self, s: SimpleSet, t: SimpleSet) -> bool {
        s.iter().all(|i| t.iter().all(|j| i != j && !self.adjacent(i, j)))
    }

    /// Is phi the highest root of the subsystem generated by its support.
    pub fn is_locally_high(&self, k: usize) -> bool {
        let sub = self.roots_in(self.support[k]);
        sub.iter().all(|j| self.root_leq(j, k))
    }

    /// Long within the irreducible system (squared length 2).
    pub fn is_long(&self, k: usize) -> bool {
        self.long[k]
    }

    pub fn connected_components_of_subset(&self, s: SimpleSet) -> Vec<SimpleSet> {
        let mut seen = SimpleSet::EMPTY;
        let mut out = Vec::new();
        for start in s.iter() {
            if seen.contains(start) {
                continue;
            }
            let mut comp = SimpleSet::EMPTY;
            let mut stack = vec![start];
            seen.insert(start);
            while let Some(i) = stack.pop() {
                comp.insert(i);
                for j in s.iter() {
                    if !seen.contains(j) && self.adjacent(i, j) {
                        seen.insert(j);
                        stack.push(j);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    /// Highest root of the (connected) subsystem on `s`.
    pub fn highest_root_of(&self, s: SimpleSet) -> Option<usize> {
        let sub = self.roots_in(s);
        sub.iter().find(|&k| sub.iter().all(|j| self.root_leq(j, k)))
    }

    pub fn format_root(&self, k: usize) -> String {
        format_vec(&self.roots[k])
    }

    pub fn format_signed(&self, r: SignedRoot) -> String {
        format_vec(&self.signed_coeffs(r))
    }
}

pub fn format_vec<T: fmt::Display>(v: &[T]) -> String {
    v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
}

/// All positive roots generated from the simple roots by root strings.
fn positive_roots_by_closure(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = cartan.len();
    let mut known: std::collections::HashSet<Vec<i64>> = std::collections::HashSet::new();
    let mut level: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            v
        })
        .collect();
    let mut all = Vec::new();
    while !level.is_empty() {
        for r in &level {
            known.insert(r.clone());
        }
        let mut next: Vec<Vec<i64>> = Vec::new();
        for r in &level {
            for i in 0..n {
                if r.iter().enumerate().all(|(j, c)| if j == i { *c == 1 } else { *c == 0 }) {
                    continue;
                }
                // p = max k with r - k beta_i a root
                let mut p = 0;
                let mut v = r.clone();
                loop {
                    v[i] -= 1;
                    if v[i] >= 0 && known.contains(&v) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let rc: i64 = (0..n).map(|j| r[j] * cartan[i][j]).sum();
                if p - rc > 0 {
                    let mut up = r.clone();
                    up[i] += 1;
                    if !next.contains(&up) {
                        next.push(up);
                    }
                }
            }
        }
        all.append(&mut level);
        level = next;
    }
    all.sort_by(|a, b| {
        let ha: i64 = a.iter().sum();
        let hb: i64 = b.iter().sum();
        ha.cmp(&hb).then_with(|| b.cmp(a))
    });
    all
}
