//! Degrees in H_2(G/P), greedy decompositions, z_d^P and the N_d count.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootsys::{format_vec, ParabolicSubset, RootSet, RootSystem, SimpleSet};
use crate::weyl::{bruhat_leq, hecke_product, longest_element, CosetContext, WeylElement};

/// Abort `all_greedy_decompositions` past this many sequences.
pub const ALL_GREEDY_GUARD: usize = 1_000_000;

/// Effective degree, coordinates over Delta minus Delta_P in increasing
/// simple-root order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Degree(pub Vec<u32>);

impl Degree {
    pub fn zero(m: usize) -> Self {
        Degree(vec![0; m])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn sum(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn leq(&self, other: &Degree) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn lt(&self, other: &Degree) -> bool {
        self.leq(other) && self != other
    }

    pub fn add(&self, other: &Degree) -> Degree {
        Degree(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// self - other, if the result is effective.
    pub fn checked_sub(&self, other: &Degree) -> Option<Degree> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Degree)
    }

    /// Every effective degree below self, in lexicographic order.
    pub fn box_below(&self) -> Vec<Degree> {
        let mut out = vec![Degree(Vec::with_capacity(self.len()))];
        for &c in &self.0 {
            let mut next = Vec::with_capacity(out.len() * (c as usize + 1));
            for d in &out {
                for v in 0..=c {
                    let mut e = d.clone();
                    e.0.push(v);
                    next.push(e);
                }
            }
            out = next;
        }
        out
    }

    /// Parse "2,1,0" checking the expected length.
    pub fn parse_with_len(s: &str, m: usize) -> Result<Degree> {
        let d: Degree = s.parse()?;
        if d.len() != m {
            return Err(Error::Usage(format!(
                "--degree: expected {m} coordinates, got {}",
                d.len()
            )));
        }
        Ok(d)
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_vec(&self.0))
    }
}

impl FromStr for Degree {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Degree(Vec::new()));
        }
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Usage(format!("--degree: cannot parse {t:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Degree)
    }
}

impl From<Degree> for String {
    fn from(d: Degree) -> String {
        d.to_string()
    }
}

impl TryFrom<String> for Degree {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// Everything attached to X = G/P that the degree combinatorics needs.
#[derive(Debug)]
pub struct Context {
    rs: Arc<RootSystem>,
    coset: CosetContext,
    outside: RootSet,
    free: Vec<usize>,
    root_degree: Vec<Option<Degree>>,
    reflections: Vec<WeylElement>,
    w_o: WeylElement,
    borel: OnceLock<Box<Context>>,
    pub(crate) d_x: OnceLock<Degree>,
    z_cache: Mutex<HashMap<Degree, WeylElement>>,
}

impl Context {
    pub fn new(rs: Arc<RootSystem>, parabolic: ParabolicSubset) -> Self {
        let coset = CosetContext::new(&rs, parabolic);
        let outside = rs.all_positive().minus(coset.rp);
        let free: Vec<usize> = (0..rs.rank).filter(|i| !parabolic.contains(*i)).collect();
        let root_degree = (0..rs.num_positive())
            .map(|k| {
                outside
                    .contains(k)
                    .then(|| Degree(free.iter().map(|&i| rs.coroot(k)[i] as u32).collect()))
            })
            .collect();
        let reflections = (0..rs.num_positive()).map(|k| WeylElement::reflection(&rs, k)).collect();
        let w_o = longest_element(&rs, SimpleSet::full(rs.rank));
        Context {
            rs,
            coset,
            outside,
            free,
            root_degree,
            reflections,
            w_o,
            borel: OnceLock::new(),
            d_x: OnceLock::new(),
            z_cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn rs(&self) -> &RootSystem {
        &self.rs
    }

    pub fn rs_arc(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn parabolic(&self) -> ParabolicSubset {
        self.coset.parabolic
    }

    pub fn is_borel(&self) -> bool {
        self.coset.parabolic.is_empty()
    }

    pub fn coset(&self) -> &CosetContext {
        &self.coset
    }

    pub fn w_p(&self) -> &WeylElement {
        &self.coset.w_p
    }

    pub fn w_o(&self) -> &WeylElement {
        &self.w_o
    }

    /// R_P^+.
    pub fn rp(&self) -> RootSet {
        self.coset.rp
    }

    /// R^+ minus R_P^+.
    pub fn outside(&self) -> RootSet {
        self.outside
    }

    /// Simple indices carrying degree coordinates (Delta minus Delta_P).
    pub fn free(&self) -> &[usize] {
        &self.free
    }

    /// Number of degree coordinates.
    pub fn degree_len(&self) -> usize {
        self.free.len()
    }

    /// dim G/P = |R^+ minus R_P^+|.
    pub fn dim_x(&self) -> usize {
        self.outside.len()
    }

    pub fn reflection(&self, k: usize) -> &WeylElement {
        &self.reflections[k]
    }

    /// The context for P = B over the same root system.
    pub fn borel(&self) -> &Context {
        if self.is_borel() {
            return self;
        }
        self.borel
            .get_or_init(|| Box::new(Context::new(self.rs.clone(), SimpleSet::EMPTY)))
    }

    /// Human label such as "D4/P={2}" or "A2/B".
    pub fn label(&self) -> String {
        if self.is_borel() {
            format!("{}/B", self.rs.spec)
        } else {
            format!("{}/P={{{}}}", self.rs.spec, format_vec(&self.parabolic().to_bourbaki()))
        }
    }

    pub fn check_degree(&self, d: &Degree) -> Result<()> {
        if d.len() != self.degree_len() {
            return Err(Error::Usage(format!(
                "--degree: expected {} coordinates for {}, got {}",
                self.degree_len(),
                self.label(),
                d.len()
            )));
        }
        Ok(())
    }

    pub fn zero(&self) -> Degree {
        Degree::zero(self.degree_len())
    }

    /// d(alpha), for alpha outside R_P^+.
    pub fn degree_of_root(&self, alpha: usize) -> Result<Degree> {
        self.root_degree[alpha].clone().ok_or_else(|| {
            Error::Contract(format!("root {} lies in R_P^+", self.rs.format_root(alpha)))
        })
    }

    fn d_alpha(&self, alpha: usize) -> &Degree {
        self.root_degree[alpha].as_ref().expect("root outside R_P^+")
    }

    /// Sum of d(alpha) over a list of roots.
    pub fn degree_sum(&self, roots: &[usize]) -> Degree {
        roots.iter().fold(self.zero(), |acc, &a| acc.add(self.d_alpha(a)))
    }

    /// Representative over all of Delta with zeros on Delta_P.
    pub fn representative(&self, d: &Degree) -> Vec<i64> {
        let mut v = vec![0i64; self.rs.rank];
        for (c, &i) in d.0.iter().zip(&self.free) {
            v[i] = *c as i64;
        }
        v
    }

    /// e_P: drop the Delta_P coordinates of a degree over Delta.
    pub fn restrict(&self, e: &Degree) -> Degree {
        Degree(self.free.iter().map(|&i| e.0[i]).collect())
    }

    /// (c_1(X), e~) = sum over gamma in R^+ minus R_P^+ of (gamma, e~),
    /// for a representative e~ over Delta^vee.
    pub fn c1_pairing_rep(&self, rep: &[i64]) -> i64 {
        self.outside.iter().map(|k| self.rs.pair_with_coweight(k, rep)).sum()
    }

    pub fn c1_pairing(&self, d: &Degree) -> i64 {
        self.c1_pairing_rep(&self.representative(d))
    }

    /// Maximal elements of {alpha in R^+ minus R_P^+ : d(alpha) <= d}.
    pub fn maximal_roots(&self, d: &Degree) -> Vec<usize> {
        let cands: Vec<usize> = self.outside.iter().filter(|&k| self.d_alpha(k).leq(d)).collect();
        cands
            .iter()
            .copied()
            .filter(|&a| !cands.iter().any(|&b| b != a && self.rs.root_leq(a, b)))
            .collect()
    }

    /// Is (alpha_1, ..., alpha_r) a greedy decomposition of d.
    pub fn is_greedy_decomposition(&self, d: &Degree, entries: &[usize]) -> bool {
        let mut rest = d.clone();
        for &a in entries {
            if !self.outside.contains(a) || !self.maximal_roots(&rest).contains(&a) {
                return false;
            }
            rest = rest.checked_sub(self.d_alpha(a)).expect("d(alpha) <= rest");
        }
        rest.is_zero()
    }

    /// Canonical greedy decomposition: least table index among maximal roots.
    pub fn greedy_decomposition(&self, d: &Degree) -> Vec<usize> {
        let mut rest = d.clone();
        let mut out = Vec::new();
        while !rest.is_zero() {
            let a = self.maximal_roots(&rest)[0];
            let before = rest.sum();
            rest = rest.checked_sub(self.d_alpha(a)).expect("d(alpha) <= rest");
            assert!(rest.sum() < before, "greedy step must decrease the degree");
            out.push(a);
        }
        out
    }

    /// Every greedy decomposition, branching over all maximal roots.
    pub fn all_greedy_decompositions(&self, d: &Degree) -> Result<Vec<Vec<usize>>> {
        self.all_greedy_with_guard(d, ALL_GREEDY_GUARD)
    }

    pub fn all_greedy_with_guard(&self, d: &Degree, guard: usize) -> Result<Vec<Vec<usize>>> {
        let mut out = Vec::new();
        let mut prefix = Vec::new();
        self.greedy_rec(d, &mut prefix, &mut out, guard)?;
        Ok(out)
    }

    fn greedy_rec(
        &self,
        d: &Degree,
        prefix: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        guard: usize,
    ) -> Result<()> {
        if d.is_zero() {
            if out.len() >= guard {
                return Err(Error::Resource(format!(
                    "more than {guard} greedy decompositions"
                )));
            }
            out.push(prefix.clone());
            return Ok(());
        }
        for a in self.maximal_roots(d) {
            let rest = d.checked_sub(self.d_alpha(a)).expect("d(alpha) <= d");
            prefix.push(a);
            self.greedy_rec(&rest, prefix, out, guard)?;
            prefix.pop();
        }
        Ok(())
    }

    /// Delta(d): free simple roots with positive coordinate.
    pub fn naive_support(&self, d: &Degree) -> SimpleSet {
        d.0.iter().zip(&self.free).filter(|(c, _)| **c > 0).map(|(_, &i)| i).collect()
    }

    /// Delta~(d): union of the supports of the greedy entries.
    pub fn extended_support(&self, d: &Degree) -> SimpleSet {
        self.support_of(&self.greedy_decomposition(d))
    }

    pub fn support_of(&self, roots: &[usize]) -> SimpleSet {
        roots.iter().fold(SimpleSet::EMPTY, |s, &a| s.union(self.rs.support(a)))
    }

    /// Greedy entries grouped by the Dynkin component of Delta~(d) that
    /// contains their support. Components are ordered by least simple index.
    pub fn component_entries(&self, d: &Degree) -> Vec<Vec<usize>> {
        let entries = self.greedy_decomposition(d);
        let comps = self.rs.connected_components_of_subset(self.support_of(&entries));
        comps
            .iter()
            .map(|c| {
                entries
                    .iter()
                    .copied()
                    .filter(|&a| self.rs.support(a).is_subset(c))
                    .collect()
            })
            .collect()
    }

    pub fn connected_components(&self, d: &Degree) -> Vec<Degree> {
        self.component_entries(d).iter().map(|e| self.degree_sum(e)).collect()
    }

    /// alpha(d) for connected nonzero d: its unique maximal root.
    pub fn alpha_of(&self, d: &Degree) -> Result<usize> {
        let m = self.maximal_roots(d);
        if m.len() != 1 {
            return Err(Error::Contract(format!(
                "degree {d} has {} maximal roots, expected exactly one",
                m.len()
            )));
        }
        Ok(m[0])
    }

    /// Number of greedy decompositions, by the component recursion.
    pub fn count_greedy(&self, d: &Degree) -> BigUint {
        let mut memo = HashMap::new();
        self.count_rec(d, &mut memo)
    }

    fn count_rec(&self, d: &Degree, memo: &mut HashMap<Degree, BigUint>) -> BigUint {
        if d.is_zero() {
            return BigUint::one();
        }
        if let Some(v) = memo.get(d) {
            return v.clone();
        }
        let comps = self.component_entries(d);
        let v = if comps.len() == 1 {
            let a = self.maximal_roots(d)[0];
            let rest = d.checked_sub(self.d_alpha(a)).expect("d(alpha) <= d");
            self.count_rec(&rest, memo)
        } else {
            let total: usize = comps.iter().map(|c| c.len()).sum();
            let mut v = factorial(total);
            for c in &comps {
                v /= factorial(c.len());
                v *= self.count_rec(&self.degree_sum(c), memo);
            }
            v
        };
        memo.insert(d.clone(), v.clone());
        v
    }

    /// Hecke product s_{alpha_1} . ... . s_{alpha_r}.
    pub fn hecke_of_roots(&self, roots: &[usize]) -> WeylElement {
        roots.iter().fold(WeylElement::identity(&self.rs), |w, &a| {
            hecke_product(&self.rs, &w, &self.reflections[a])
        })
    }

    /// Ordinary product s_{alpha_1} ... s_{alpha_r}.
    pub fn product_of_roots(&self, roots: &[usize]) -> WeylElement {
        roots
            .iter()
            .fold(WeylElement::identity(&self.rs), |w, &a| w.mul(&self.reflections[a]))
    }

    /// z_d^P: minimal representative of s_{alpha_1}...s_{alpha_r} . w_P.
    pub fn z_d_p(&self, d: &Degree) -> WeylElement {
        if let Some(z) = self.z_cache.lock().unwrap().get(d) {
            return z.clone();
        }
        let t = self.tilde_z_d_p(d);
        let z = self.coset.min_rep(&self.rs, &hecke_product(&self.rs, &t, &self.coset.w_p));
        self.z_cache.lock().unwrap().insert(d.clone(), z.clone());
        z
    }

    /// z~_d^P = s_{alpha_1} . ... . s_{alpha_r} (Hecke product, no w_P).
    pub fn tilde_z_d_p(&self, d: &Degree) -> WeylElement {
        self.hecke_of_roots(&self.greedy_decomposition(d))
    }

    pub fn bruhat_leq(&self, u: &WeylElement, v: &WeylElement) -> bool {
        bruhat_leq(&self.rs, u, v)
    }

    /// alpha is a maximal root of d(alpha).
    pub fn is_p_cosmall(&self, alpha: usize) -> Result<bool> {
        let d = self.degree_of_root(alpha)?;
        Ok(self.maximal_roots(&d).contains(&alpha))
    }

    /// All P-cosmall roots, in table order.
    pub fn p_cosmall_roots(&self) -> Vec<usize> {
        self.outside
            .iter()
            .filter(|&a| self.maximal_roots(self.d_alpha(a)).contains(&a))
            .collect()
    }

    /// (alpha, gamma) = 0 for all gamma in R_P^+ minus I(s_alpha).
    pub fn verify_pcosmall_orthogonality(&self, alpha: usize) -> bool {
        let inv = self.reflections[alpha].inversions();
        self.rp().minus(inv).iter().all(|g| self.rs.pair(g, alpha) == 0)
    }

    /// Sum of alpha^vee over the roots, as a degree over all of Delta.
    pub fn coroot_sum(&self, roots: &[usize]) -> Degree {
        let mut v = vec![0u32; self.rs.rank];
        for &a in roots {
            for (i, c) in self.rs.coroot(a).iter().enumerate() {
                v[i] += *c as u32;
            }
        }
        Degree(v)
    }

    pub fn format_roots(&self, roots: &[usize]) -> String {
        let parts: Vec<String> = roots.iter().map(|&a| format!("({})", self.rs.format_root(a))).collect();
        format!("[{}]", parts.join(" "))
    }
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}
