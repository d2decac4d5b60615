//! Weyl group elements as signed permutations of the positive roots.

use std::collections::{HashSet, VecDeque};
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::rootsys::{ParabolicSubset, RootSet, RootSystem, SignedRoot, SimpleSet};

/// Default cap on full group enumeration.
pub const DEFAULT_WEYL_CAP: usize = 60_000;

/// Cap on full enumeration, overridable through `CASCADE_LAB_WCAP`.
pub fn weyl_cap() -> usize {
    std::env::var("CASCADE_LAB_WCAP")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_WEYL_CAP)
}

/// An element w stored by its images w(gamma) of all positive roots.
/// Equality and hashing go through the inversion set, which determines w.
#[derive(Clone, Debug)]
pub struct WeylElement {
    images: Vec<SignedRoot>,
    inv: RootSet,
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.inv == other.inv
    }
}

impl Eq for WeylElement {}

impl Hash for WeylElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.inv.hash(state);
    }
}

impl WeylElement {
    fn from_images(images: Vec<SignedRoot>) -> Self {
        let inv = images
            .iter()
            .enumerate()
            .filter(|(_, r)| r.negative)
            .map(|(k, _)| k)
            .collect();
        WeylElement { images, inv }
    }

    pub fn identity(rs: &RootSystem) -> Self {
        Self::from_images((0..rs.num_positive()).map(SignedRoot::pos).collect())
    }

    pub fn simple(rs: &RootSystem, i: usize) -> Self {
        Self::from_images((0..rs.num_positive()).map(|k| rs.simple_reflection_image(i, k)).collect())
    }

    /// s_alpha for the positive root with table index `a`.
    pub fn reflection(rs: &RootSystem, a: usize) -> Self {
        let alpha = rs.root(a);
        Self::from_images(
            (0..rs.num_positive())
                .map(|k| {
                    let c = rs.pair(k, a);
                    let v: Vec<i64> = rs.root(k).iter().zip(alpha).map(|(g, x)| g - c * x).collect();
                    rs.find(&v).expect("reflection permutes roots")
                })
                .collect(),
        )
    }

    pub fn apply(&self, r: SignedRoot) -> SignedRoot {
        let im = self.images[r.index];
        if r.negative {
            im.negate()
        } else {
            im
        }
    }

    /// Linear extension to an arbitrary vector in root coordinates.
    pub fn apply_vec(&self, rs: &RootSystem, x: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; rs.rank];
        for (i, &c) in x.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let im = rs.signed_coeffs(self.images[i]);
            for j in 0..rs.rank {
                out[j] += c * im[j];
            }
        }
        out
    }

    /// Composition self * other (apply other first).
    pub fn mul(&self, other: &WeylElement) -> WeylElement {
        Self::from_images(other.images.iter().map(|&r| self.apply(r)).collect())
    }

    /// self * s_i.
    pub fn mul_simple(&self, rs: &RootSystem, i: usize) -> WeylElement {
        Self::from_images(
            (0..self.images.len())
                .map(|k| self.apply(rs.simple_reflection_image(i, k)))
                .collect(),
        )
    }

    pub fn inverse(&self) -> WeylElement {
        let mut images = vec![SignedRoot::pos(0); self.images.len()];
        for (k, r) in self.images.iter().enumerate() {
            images[r.index] = SignedRoot { index: k, negative: r.negative };
        }
        Self::from_images(images)
    }

    pub fn length(&self) -> usize {
        self.inv.len()
    }

    /// I(w) = {alpha > 0 : w(alpha) < 0}.
    pub fn inversions(&self) -> RootSet {
        self.inv
    }

    pub fn is_identity(&self) -> bool {
        self.inv.is_empty()
    }

    /// w s_i < w.
    pub fn has_right_descent(&self, i: usize) -> bool {
        self.inv.contains(i)
    }

    /// A reduced word (0-based simple indices), built from right descents.
    pub fn reduced_word(&self, rs: &RootSystem) -> Vec<usize> {
        let mut w = self.clone();
        let mut word = Vec::with_capacity(w.length());
        while let Some(i) = (0..rs.rank).find(|&i| w.has_right_descent(i)) {
            w = w.mul_simple(rs, i);
            word.push(i);
        }
        word.reverse();
        word
    }

    /// Reduced word in Bourbaki numbering, e.g. "s2*s1"; identity is "id".
    pub fn word_string(&self, rs: &RootSystem) -> String {
        let w = self.reduced_word(rs);
        if w.is_empty() {
            "id".to_string()
        } else {
            w.iter().map(|i| format!("s{}", i + 1)).collect::<Vec<_>>().join("*")
        }
    }

    pub fn from_word(rs: &RootSystem, word: &[usize]) -> WeylElement {
        word.iter().fold(Self::identity(rs), |w, &i| w.mul_simple(rs, i))
    }
}

/// Hecke (Demazure) product u . v along a reduced word of v.
pub fn hecke_product(rs: &RootSystem, u: &WeylElement, v: &WeylElement) -> WeylElement {
    let mut w = u.clone();
    for i in v.reduced_word(rs) {
        if !w.has_right_descent(i) {
            w = w.mul_simple(rs, i);
        }
    }
    w
}

/// Bruhat order u <= v. Descends v along right descents using the lifting
/// property: for v s < v, u <= v iff min(u, u s) <= v s.
pub fn bruhat_leq(rs: &RootSystem, u: &WeylElement, v: &WeylElement) -> bool {
    let mut u = u.clone();
    let mut v = v.clone();
    loop {
        if u.length() > v.length() {
            return false;
        }
        if u.is_identity() {
            return true;
        }
        if u == v {
            return true;
        }
        let i = (0..rs.rank)
            .find(|&i| v.has_right_descent(i))
            .expect("non-identity element has a descent");
        if u.has_right_descent(i) {
            u = u.mul_simple(rs, i);
        }
        v = v.mul_simple(rs, i);
    }
}

/// Longest element of the parabolic subgroup generated by `subset`.
pub fn longest_element(rs: &RootSystem, subset: SimpleSet) -> WeylElement {
    let mut w = WeylElement::identity(rs);
    while let Some(i) = subset.iter().find(|&i| !w.has_right_descent(i)) {
        w = w.mul_simple(rs, i);
    }
    w
}

/// Delta(w): simple roots occurring in a reduced word.
pub fn element_support(rs: &RootSystem, w: &WeylElement) -> SimpleSet {
    w.reduced_word(rs).into_iter().collect()
}

/// Data attached to W_P: the parabolic set, w_P and R_P^+.
#[derive(Clone, Debug)]
pub struct CosetContext {
    pub parabolic: ParabolicSubset,
    pub w_p: WeylElement,
    pub rp: RootSet,
}

impl CosetContext {
    pub fn new(rs: &RootSystem, parabolic: ParabolicSubset) -> Self {
        let w_p = longest_element(rs, parabolic);
        let rp = rs.roots_in(parabolic);
        debug_assert_eq!(w_p.inversions(), rp);
        CosetContext { parabolic, w_p, rp }
    }

    /// Unique coset member with I(w) disjoint from R_P^+.
    pub fn min_rep(&self, rs: &RootSystem, w: &WeylElement) -> WeylElement {
        let mut w = w.clone();
        while let Some(i) = self.parabolic.iter().find(|&i| w.has_right_descent(i)) {
            w = w.mul_simple(rs, i);
        }
        w
    }

    /// Unique coset member with R_P^+ contained in I(w).
    pub fn max_rep(&self, rs: &RootSystem, w: &WeylElement) -> WeylElement {
        let mut w = w.clone();
        while let Some(i) = self.parabolic.iter().find(|&i| !w.has_right_descent(i)) {
            w = w.mul_simple(rs, i);
        }
        w
    }

    pub fn is_min_rep(&self, w: &WeylElement) -> bool {
        w.inversions().is_disjoint(&self.rp)
    }

    pub fn is_max_rep(&self, w: &WeylElement) -> bool {
        self.rp.is_subset(&w.inversions())
    }

    /// l(w W_P) = card(I(w) minus R_P^+).
    pub fn coset_length(&self, w: &WeylElement) -> usize {
        w.inversions().minus(self.rp).len()
    }

    pub fn same_coset(&self, rs: &RootSystem, u: &WeylElement, v: &WeylElement) -> bool {
        self.min_rep(rs, u) == self.min_rep(rs, v)
    }
}

/// All elements of W, breadth first by length. Fails past the cap.
pub fn enumerate_group(rs: &RootSystem, cap: usize) -> Result<Vec<WeylElement>> {
    let id = WeylElement::identity(rs);
    let mut seen: HashSet<WeylElement> = HashSet::new();
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    seen.insert(id.clone());
    queue.push_back(id);
    while let Some(w) = queue.pop_front() {
        for i in 0..rs.rank {
            if !w.has_right_descent(i) {
                let ws = w.mul_simple(rs, i);
                if seen.insert(ws.clone()) {
                    if seen.len() > cap {
                        return Err(Error::Resource(format!(
                            "Weyl group of {} exceeds the enumeration cap {cap}",
                            rs.spec
                        )));
                    }
                    queue.push_back(ws);
                }
            }
        }
        out.push(w);
    }
    Ok(out)
}
