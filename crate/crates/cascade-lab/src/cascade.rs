//! Generalized cascades of orthogonal roots for minimal degrees over Delta.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::check::Outcome;
use crate::degree::{Context, Degree};
use crate::error::{Error, Result};
use crate::minimal::is_minimal_degree;
use crate::rootsys::{ParabolicSubset, RootSet, RootSystem, SimpleSet};
use crate::weyl::{CosetContext, WeylElement};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cascade {
    /// Positive-root indices, sorted.
    pub roots: Vec<usize>,
    pub source: Degree,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainCascade {
    pub base: usize,
    /// Members >= base, by descending height.
    pub chain: Vec<usize>,
    pub totally_ordered: bool,
}

/// B_{R,e}: entries of the canonical greedy decomposition of e in Pi_B.
pub fn cascade_of(cb: &Context, e: &Degree) -> Result<Cascade> {
    if !cb.is_borel() {
        return Err(Error::Contract("cascades are taken over P = B".into()));
    }
    cb.check_degree(e)?;
    if !is_minimal_degree(cb, e) {
        return Err(Error::Contract(format!("{e} is not in Pi_B")));
    }
    let entries = cb.greedy_decomposition(e);
    let set: BTreeSet<usize> = entries.iter().copied().collect();
    if set.len() != entries.len() {
        return Err(Error::Internal(format!("greedy decomposition of {e} repeats a root")));
    }
    let roots: Vec<usize> = set.into_iter().collect();
    if cb.coroot_sum(&roots) != *e {
        return Err(Error::Internal(format!("cascade coroots of {e} do not sum to e")));
    }
    Ok(Cascade { roots, source: e.clone() })
}

/// C(phi) = {alpha in B : alpha >= phi}.
pub fn chain_cascade(rs: &RootSystem, cascade: &Cascade, phi: usize) -> ChainCascade {
    let mut chain: Vec<usize> = cascade.roots.iter().copied().filter(|&a| rs.root_leq(phi, a)).collect();
    chain.sort_by_key(|&a| std::cmp::Reverse((rs.height(a), a)));
    let totally_ordered = chain.windows(2).all(|w| rs.root_leq(w[1], w[0]));
    ChainCascade { base: phi, chain, totally_ordered }
}

/// The five structural items: chains totally ordered, members B-cosmall,
/// pairwise strongly orthogonal, and total disjointness of R(alpha), R(alpha')
/// for disjoint chain cascades or for pairs in no common chain cascade.
pub fn verify_cascade_structure(cb: &Context, cascade: &Cascade) -> Outcome {
    let rs = cb.rs();
    let e = &cascade.source;
    let mut out = Outcome::new();
    let chains: Vec<ChainCascade> = (0..rs.num_positive()).map(|p| chain_cascade(rs, cascade, p)).collect();
    for c in &chains {
        out.check(c.totally_ordered, || {
            format!("e={e} (1): chain at ({}) not totally ordered", rs.format_root(c.base))
        });
    }
    for &a in &cascade.roots {
        out.check(cb.is_p_cosmall(a).unwrap_or(false), || {
            format!("e={e} (2): ({}) not B-cosmall", rs.format_root(a))
        });
    }
    let b = &cascade.roots;
    for (i, &a) in b.iter().enumerate() {
        for &c in &b[i + 1..] {
            let fmt = || format!("({}),({})", rs.format_root(a), rs.format_root(c));
            out.check(rs.strongly_orthogonal(a, c), || format!("e={e} (3): {} not strongly orthogonal", fmt()));
            let ca = &chains[a].chain;
            let cc = &chains[c].chain;
            let disjoint_chains = ca.iter().all(|x| !cc.contains(x));
            let td = rs.subsystems_totally_disjoint(rs.support(a), rs.support(c));
            if disjoint_chains {
                out.check(td, || format!("e={e} (4): {} subsystems not totally disjoint", fmt()));
            }
            let common = chains.iter().any(|ch| ch.chain.contains(&a) && ch.chain.contains(&c));
            if !common {
                out.check(td, || format!("e={e} (5): {} subsystems not totally disjoint", fmt()));
            }
        }
    }
    out
}

/// Ordinary product of the cascade reflections, and whether it equals z_e^B.
pub fn product_formula(cb: &Context, cascade: &Cascade) -> (WeylElement, bool) {
    let p = cb.product_of_roots(&cascade.roots);
    let ok = p == cb.z_d_p(&cascade.source);
    (p, ok)
}

/// I(z_e^B) as the disjoint union of I(s_alpha), and its relative version
/// after removing R_P^+.
pub fn inversion_partition(cb: &Context, cascade: &Cascade, parabolic: ParabolicSubset) -> Outcome {
    let rs = cb.rs();
    let rp = rs.roots_in(parabolic);
    let z = cb.z_d_p(&cascade.source);
    let e = &cascade.source;
    let mut out = Outcome::new();
    let parts: Vec<RootSet> = cascade.roots.iter().map(|&a| cb.reflection(a).inversions()).collect();
    let (union, disjoint) = disjoint_union(&parts);
    out.check(disjoint && union == z.inversions(), || format!("e={e}: I(z) is not the disjoint union of I(s_alpha)"));
    let rel: Vec<RootSet> = cascade
        .roots
        .iter()
        .filter(|&&a| !rp.contains(a))
        .map(|&a| cb.reflection(a).inversions().minus(rp))
        .collect();
    let (union, disjoint) = disjoint_union(&rel);
    out.check(disjoint && union == z.inversions().minus(rp), || {
        format!("e={e} P={:?}: relative inversion partition fails", parabolic.to_bourbaki())
    });
    out
}

/// Union of the sets and whether they are pairwise disjoint.
pub fn disjoint_union(parts: &[RootSet]) -> (RootSet, bool) {
    let mut u = RootSet::EMPTY;
    let mut disjoint = true;
    for p in parts {
        disjoint &= u.is_disjoint(p);
        u = u.union(*p);
    }
    (u, disjoint)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LengthPairs {
    /// (l(z_e^B), sum of l(s_alpha))
    pub absolute: (usize, usize),
    /// (l(z_e^B W_P), sum over alpha outside R_P^+ of l(s_alpha W_P))
    pub relative: (usize, usize),
}

pub fn length_additivity(cb: &Context, cascade: &Cascade, parabolic: ParabolicSubset) -> LengthPairs {
    let rs = cb.rs();
    let cc = CosetContext::new(rs, parabolic);
    let z = cb.z_d_p(&cascade.source);
    let abs = cascade.roots.iter().map(|&a| cb.reflection(a).length()).sum();
    let rel = cascade
        .roots
        .iter()
        .filter(|&&a| !cc.rp.contains(a))
        .map(|&a| cc.coset_length(cb.reflection(a)))
        .sum();
    LengthPairs { absolute: (z.length(), abs), relative: (cc.coset_length(&z), rel) }
}

/// l(z_e^B) = (c_1(G/B), e) - card(B).
pub fn c1_length_formula(cb: &Context, cascade: &Cascade) -> (i64, i64) {
    let z = cb.z_d_p(&cascade.source);
    let c1 = cb.c1_pairing(&cascade.source);
    (z.length() as i64, c1 - cascade.roots.len() as i64)
}

/// Inductive description: B_e is the disjoint union over connected
/// components, and for connected e, B_e = {alpha(e)} with B_{e - alpha(e)^vee}.
pub fn verify_altdef(cb: &Context, cascade: &Cascade) -> Result<Outcome> {
    let e = &cascade.source;
    let mut out = Outcome::new();
    let comps = cb.connected_components(e);
    let mut union = BTreeSet::new();
    for c in &comps {
        for a in cascade_of(cb, c)?.roots {
            out.check(union.insert(a), || format!("e={e}: component cascades overlap"));
        }
    }
    out.check(union.iter().copied().collect::<Vec<_>>() == cascade.roots, || {
        format!("e={e}: cascade differs from union over components")
    });
    if comps.len() == 1 && !e.is_zero() {
        let a = cb.alpha_of(e)?;
        let rest = e.checked_sub(&cb.coroot_sum(&[a])).expect("alpha(e)^vee <= e");
        let mut inner = cascade_of(cb, &rest)?.roots;
        out.check(!inner.contains(&a), || format!("e={e}: alpha(e) repeats"));
        inner.push(a);
        inner.sort_unstable();
        out.check(inner == cascade.roots, || format!("e={e}: inductive description fails"));
    }
    Ok(out)
}

/// Kostant's cascade built directly: highest roots of each component,
/// recursing into the simple roots orthogonal to them.
pub fn kostant_cascade(rs: &RootSystem) -> Vec<usize> {
    let mut out = Vec::new();
    let mut stack = vec![SimpleSet::full(rs.rank)];
    while let Some(s) = stack.pop() {
        for comp in rs.connected_components_of_subset(s) {
            let th = rs.highest_root_of(comp).expect("nonempty component");
            out.push(th);
            let rest = comp.intersection(rs.orthogonal_simple_set(th));
            if !rest.is_empty() {
                stack.push(rest);
            }
        }
    }
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minimal::compute_d_x;
    use std::sync::Arc;

    fn ctx(t: &str) -> Context {
        Context::new(Arc::new(RootSystem::new(t.parse().unwrap()).unwrap()), SimpleSet::EMPTY)
    }

    fn deg(s: &str) -> Degree {
        s.parse().unwrap()
    }

    #[test]
    fn cascade_examples() {
        let a3 = ctx("A3");
        let c = cascade_of(&a3, &deg("1,2,1")).unwrap();
        assert_eq!(c.roots, vec![1, a3.rs().highest_root()]);
        let d4 = ctx("D4");
        let c = cascade_of(&d4, &deg("2,2,2,2")).unwrap();
        let names: Vec<&[i64]> = c.roots.iter().map(|&a| d4.rs().root(a)).collect();
        assert_eq!(names, vec![&[1, 0, 0, 0][..], &[0, 0, 1, 0], &[0, 0, 0, 1], &[1, 2, 1, 1]]);
        assert!(cascade_of(&a3, &deg("0,0,0")).unwrap().roots.is_empty());
        assert!(cascade_of(&ctx("A2"), &deg("2,1")).is_err());
    }

    #[test]
    fn chains() {
        let a3 = ctx("A3");
        let rs = a3.rs();
        let c = cascade_of(&a3, &deg("1,2,1")).unwrap();
        let th = rs.highest_root();
        assert_eq!(chain_cascade(rs, &c, 1).chain, vec![th, 1]);
        assert_eq!(chain_cascade(rs, &c, 0).chain, vec![th]);
        assert_eq!(chain_cascade(rs, &c, th).chain, vec![th]);
    }

    #[test]
    fn products_and_lengths() {
        let a2 = ctx("A2");
        let c = cascade_of(&a2, &deg("1,1")).unwrap();
        let (p, ok) = product_formula(&a2, &c);
        assert!(ok);
        assert_eq!(p, *a2.w_o());
        let a3 = ctx("A3");
        let c = cascade_of(&a3, &deg("1,2,1")).unwrap();
        assert_eq!(length_additivity(&a3, &c, SimpleSet::EMPTY).absolute, (6, 6));
        assert_eq!(c1_length_formula(&a3, &c), (6, 6));
        let d4 = ctx("D4");
        let c = cascade_of(&d4, &deg("2,2,2,2")).unwrap();
        assert_eq!(length_additivity(&d4, &c, SimpleSet::EMPTY).absolute, (12, 12));
        assert_eq!(d4.reflection(d4.rs().highest_root()).length(), 9);
        let z = cascade_of(&a2, &deg("0,0")).unwrap();
        assert_eq!(length_additivity(&a2, &z, SimpleSet::EMPTY).absolute, (0, 0));
        assert!(product_formula(&a2, &z).0.is_identity());
    }

    #[test]
    fn kostant_matches_top_cascade() {
        for t in ["A1", "A4", "B3", "C3", "D5", "G2", "F4", "E6"] {
            let c = ctx(t);
            let dgb = compute_d_x(&c).unwrap();
            assert_eq!(cascade_of(&c, &dgb).unwrap().roots, kostant_cascade(c.rs()), "{t}");
        }
    }
}
