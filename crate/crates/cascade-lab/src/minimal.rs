//! Minimal degrees, d_X, liftings, and the uniqueness/addition/splitting
//! statements about them.

use std::collections::{BTreeSet, HashMap};

use crate::cascade::cascade_of;
use crate::check::Outcome;
use crate::degree::{Context, Degree};
use crate::error::{Error, Result};
use crate::rootsys::SimpleSet;
use crate::weyl::WeylElement;

#[derive(Clone, Debug)]
pub struct MinimalDegreeRecord {
    pub degree: Degree,
    pub z: WeylElement,
    pub lifting: Option<Degree>,
}

/// No effective d' < d has z_d^P <= z_{d'}^P.
pub fn is_minimal_degree(ctx: &Context, d: &Degree) -> bool {
    let z = ctx.z_d_p(d);
    d.box_below()
        .iter()
        .filter(|e| *e != d)
        .all(|e| !ctx.bruhat_leq(&z, &ctx.z_d_p(e)))
}

fn reaches_top(ctx: &Context, d: &Degree) -> bool {
    let target = ctx.coset().min_rep(ctx.rs(), ctx.w_o());
    ctx.z_d_p(d) == target
}

/// d_X: the unique minimal d with z_d^P W_P = w_o W_P.
///
/// The set of such d is an up-set of the degree lattice, so starting from
/// a constant vector inside it and lowering single coordinates while staying
/// inside reaches a minimal element. Cached per context.
pub fn compute_d_x(ctx: &Context) -> Result<Degree> {
    if let Some(d) = ctx.d_x.get() {
        return Ok(d.clone());
    }
    let m = ctx.degree_len();
    let cap = 4 * ctx.rs().rank as u32;
    let mut k = 1u32;
    let mut d = Degree(vec![k; m]);
    while !reaches_top(ctx, &d) {
        k *= 2;
        if k > cap {
            return Err(Error::Resource(format!(
                "d_X search for {} exceeded coordinate cap {cap}",
                ctx.label()
            )));
        }
        d = Degree(vec![k; m]);
    }
    loop {
        let mut lowered = false;
        for i in 0..m {
            while d.0[i] > 0 {
                let mut e = d.clone();
                e.0[i] -= 1;
                if reaches_top(ctx, &e) {
                    d = e;
                    lowered = true;
                } else {
                    break;
                }
            }
        }
        if !lowered {
            break;
        }
    }
    let _ = ctx.d_x.set(d.clone());
    Ok(d)
}

/// Breadth-first d_X search by coordinate sum; returns every minimal
/// element found at the first level that reaches w_o W_P, plus the level.
pub fn d_x_by_bfs(ctx: &Context, max_sum: u32) -> Result<Vec<Degree>> {
    let m = ctx.degree_len();
    for s in 0..=max_sum {
        let level: Vec<Degree> = compositions(s, m).into_iter().filter(|d| reaches_top(ctx, d)).collect();
        if !level.is_empty() {
            return Ok(level);
        }
    }
    Err(Error::Resource(format!("no degree with sum <= {max_sum} reaches w_o")))
}

/// Vectors of length m with entries summing to s.
pub fn compositions(s: u32, m: usize) -> Vec<Degree> {
    if m == 0 {
        return if s == 0 { vec![Degree(vec![])] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=s).rev() {
        for mut rest in compositions(s - first, m - 1) {
            rest.0.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Pi_P, sorted, as the minimal degrees in the box below d_X.
pub fn enumerate_minimal_degrees(ctx: &Context) -> Result<Vec<Degree>> {
    let dx = compute_d_x(ctx)?;
    Ok(dx.box_below().into_iter().filter(|d| is_minimal_degree(ctx, d)).collect())
}

pub fn minimal_records(ctx: &Context) -> Result<Vec<MinimalDegreeRecord>> {
    enumerate_minimal_degrees(ctx)?
        .into_iter()
        .map(|d| {
            let lifting = Some(lifting(ctx, &d)?);
            Ok(MinimalDegreeRecord { z: ctx.z_d_p(&d), degree: d, lifting })
        })
        .collect()
}

/// The lifting of d in Pi_P: the unique minimal e over Delta with
/// z_d^P w_P <= z_e^B. Re-asserts the four lifting properties.
pub fn lifting(ctx: &Context, d: &Degree) -> Result<Degree> {
    ctx.check_degree(d)?;
    if !is_minimal_degree(ctx, d) {
        return Err(Error::Contract(format!("{d} is not a minimal degree of {}", ctx.label())));
    }
    let cb = ctx.borel();
    let rs = ctx.rs();
    let target = ctx.z_d_p(d).mul(ctx.w_p());
    let bound = compute_d_x(cb)?;
    let cands: Vec<Degree> = bound
        .box_below()
        .into_iter()
        .filter(|e| cb.bruhat_leq(&target, &cb.z_d_p(e)))
        .collect();
    let minimal: Vec<&Degree> = cands
        .iter()
        .filter(|e| !cands.iter().any(|f| f.lt(e)))
        .collect();
    if minimal.len() != 1 {
        return Err(Error::Internal(format!(
            "lifting of {d} in {}: {} minimal candidates",
            ctx.label(),
            minimal.len()
        )));
    }
    let e = minimal[0].clone();
    let ze = cb.z_d_p(&e);
    let checks = [
        (is_minimal_degree(cb, &e), "e is not in Pi_B"),
        (ze == target, "z_d^P w_P differs from z_e^B"),
        (ctx.coset().is_max_rep(&ze), "z_e^B is not the maximal representative"),
        (ctx.restrict(&e) == *d, "e_P differs from d"),
    ];
    for (ok, msg) in checks {
        if !ok {
            return Err(Error::Internal(format!(
                "lifting of {d} in {} ({}): {msg}",
                ctx.label(),
                rs.spec
            )));
        }
    }
    Ok(e)
}

/// Pairs in Pi_P with z_d <= z_d' satisfy d <= d'; z is injective on
/// Pi_P; each d in Pi_P is the unique minimal element of
/// {d' : z_d <= z_d'} over the grid below d_X.
pub fn verify_uniqueness(ctx: &Context) -> Result<Outcome> {
    let pi = enumerate_minimal_degrees(ctx)?;
    let grid = compute_d_x(ctx)?.box_below();
    let mut out = Outcome::new();
    let zs: Vec<WeylElement> = pi.iter().map(|d| ctx.z_d_p(d)).collect();
    for (i, d) in pi.iter().enumerate() {
        for (j, e) in pi.iter().enumerate() {
            if ctx.bruhat_leq(&zs[i], &zs[j]) {
                out.check(d.leq(e), || format!("d={d} d'={e}: z_d <= z_d' but d not <= d'"));
            }
            if i != j {
                out.check(zs[i] != zs[j], || format!("d={d} d'={e}: equal z"));
            }
        }
        for e in &grid {
            if ctx.bruhat_leq(&zs[i], &ctx.z_d_p(e)) {
                out.check(d.leq(e), || format!("d={d} d'={e}: d is not the least element"));
            }
        }
    }
    Ok(out)
}

/// d in Pi_P iff every connected component of d is, over the d_X grid.
pub fn verify_addition_minimal(ctx: &Context) -> Result<Outcome> {
    let grid = compute_d_x(ctx)?.box_below();
    let mut out = Outcome::new();
    for d in &grid {
        let comps = ctx.connected_components(d);
        let all = comps.iter().all(|c| is_minimal_degree(ctx, c));
        let sum = is_minimal_degree(ctx, d);
        out.check(all == sum, || format!("d={d}: components minimal {all}, d minimal {sum}"));
    }
    Ok(out)
}

/// Pairs of grid degrees with totally disjoint extended supports:
/// both in Pi_P iff the sum is.
pub fn verify_addition_minimal_pairs(ctx: &Context) -> Result<Outcome> {
    let grid = compute_d_x(ctx)?.box_below();
    let mut out = Outcome::new();
    let supp: Vec<SimpleSet> = grid.iter().map(|d| ctx.extended_support(d)).collect();
    let minimal: HashMap<&Degree, bool> = grid.iter().map(|d| (d, is_minimal_degree(ctx, d))).collect();
    for i in 0..grid.len() {
        for j in i..grid.len() {
            if grid[i].is_zero()
                || grid[j].is_zero()
                || !ctx.rs().simple_sets_totally_disjoint(supp[i], supp[j])
            {
                continue;
            }
            let s = grid[i].add(&grid[j]);
            let both = minimal[&grid[i]] && minimal[&grid[j]];
            let sum = is_minimal_degree(ctx, &s);
            out.check(both == sum, || {
                format!("d={} d'={}: parts minimal {both}, sum minimal {sum}", grid[i], grid[j])
            });
        }
    }
    Ok(out)
}

/// For P-cosmall roots with pairwise totally disjoint supports, d = sum
/// d(alpha_i) is minimal and the cascade of its lifting meets R^+ minus
/// R_P^+ exactly in those roots.
pub fn verify_splitting(ctx: &Context, roots: &[usize]) -> Result<Outcome> {
    let rs = ctx.rs();
    for &a in roots {
        if !ctx.is_p_cosmall(a)? {
            return Err(Error::Contract(format!("{} is not P-cosmall", rs.format_root(a))));
        }
    }
    for (i, &a) in roots.iter().enumerate() {
        for &b in &roots[i + 1..] {
            if !rs.simple_sets_totally_disjoint(rs.support(a), rs.support(b)) {
                return Err(Error::Contract("supports are not pairwise totally disjoint".into()));
            }
        }
    }
    let mut out = Outcome::new();
    let d = ctx.degree_sum(roots);
    if !out.check(is_minimal_degree(ctx, &d), || format!("family {}: d={d} not minimal", ctx.format_roots(roots))) {
        return Ok(out);
    }
    let e = lifting(ctx, &d)?;
    let cas = cascade_of(ctx.borel(), &e)?;
    let got: BTreeSet<usize> = cas.roots.iter().copied().filter(|&a| ctx.outside().contains(a)).collect();
    let want: BTreeSet<usize> = roots.iter().copied().collect();
    out.check(got == want, || {
        format!(
            "family {}: cascade outside R_P^+ is {}",
            ctx.format_roots(roots),
            ctx.format_roots(&got.iter().copied().collect::<Vec<_>>())
        )
    });
    Ok(out)
}

/// All families of P-cosmall roots with pairwise totally disjoint supports
/// (including the empty family).
pub fn cosmall_families(ctx: &Context) -> Vec<Vec<usize>> {
    let cos = ctx.p_cosmall_roots();
    let rs = ctx.rs();
    let mut out = Vec::new();
    fn rec(
        rs: &crate::rootsys::RootSystem,
        cos: &[usize],
        start: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        out.push(cur.clone());
        for i in start..cos.len() {
            let a = cos[i];
            if cur.iter().all(|&b| rs.simple_sets_totally_disjoint(rs.support(a), rs.support(b))) {
                cur.push(a);
                rec(rs, cos, i + 1, cur, out);
                cur.pop();
            }
        }
    }
    rec(rs, &cos, 0, &mut Vec::new(), &mut out);
    out
}

/// Splitting for every family, plus: for d in Pi_P with lifting e and
/// e^ = sum of alpha^vee over the cascade outside R_P^+, the maximal roots
/// of d and of e^ agree and Delta~(d) = Delta(e^).
pub fn verify_splitting_all(ctx: &Context) -> Result<Outcome> {
    let mut out = Outcome::new();
    for fam in cosmall_families(ctx) {
        out.merge(verify_splitting(ctx, &fam)?);
    }
    let cb = ctx.borel();
    for d in enumerate_minimal_degrees(ctx)? {
        let e = lifting(ctx, &d)?;
        let cas = cascade_of(cb, &e)?;
        let outside: Vec<usize> = cas.roots.iter().copied().filter(|&a| ctx.outside().contains(a)).collect();
        let e_hat = ctx.coroot_sum(&outside);
        let mut md = ctx.maximal_roots(&d);
        let mut me = cb.maximal_roots(&e_hat);
        md.sort_unstable();
        me.sort_unstable();
        out.check(md == me, || {
            format!("d={d}: maximal roots {} vs {} of e^={e_hat}", ctx.format_roots(&md), ctx.format_roots(&me))
        });
        out.check(ctx.extended_support(&d) == cb.naive_support(&e_hat), || {
            format!("d={d}: extended support differs from support of e^={e_hat}")
        });
    }
    Ok(out)
}

/// Sub-multisets of the greedy entries of a minimal degree give minimal degrees.
pub fn verify_subsequence_closure(ctx: &Context) -> Result<Outcome> {
    let mut out = Outcome::new();
    for d in enumerate_minimal_degrees(ctx)? {
        let entries = ctx.greedy_decomposition(&d);
        let r = entries.len();
        if r > 16 {
            continue;
        }
        for mask in 0u32..(1 << r) {
            let sub: Vec<usize> = (0..r).filter(|i| mask >> i & 1 == 1).map(|i| entries[i]).collect();
            let s = ctx.degree_sum(&sub);
            out.check(is_minimal_degree(ctx, &s), || format!("d={d}: partial sum {s} not minimal"));
        }
    }
    Ok(out)
}

/// No minimal degree outside the d_X box, searched in the box enlarged by
/// one in every coordinate. Skipped when that box exceeds `limit` entries.
pub fn verify_dx_bound(ctx: &Context, limit: usize) -> Result<Outcome> {
    let dx = compute_d_x(ctx)?;
    let big = Degree(dx.0.iter().map(|c| c + 1).collect());
    let size: usize = big.0.iter().map(|c| *c as usize + 1).product();
    if size > limit {
        return Ok(Outcome::skipped(format!("enlarged box has {size} degrees")));
    }
    let mut out = Outcome::new();
    for d in big.box_below() {
        if d.leq(&dx) {
            continue;
        }
        out.check(!is_minimal_degree(ctx, &d), || format!("d={d} is minimal but not <= d_X={dx}"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::RootSystem;
    use std::sync::Arc;

    fn ctx(t: &str, p: &[usize]) -> Context {
        let rs = Arc::new(RootSystem::new(t.parse().unwrap()).unwrap());
        Context::new(rs, p.iter().map(|i| i - 1).collect())
    }

    fn deg(s: &str) -> Degree {
        s.parse().unwrap()
    }

    #[test]
    fn minimality_examples() {
        let b = ctx("A2", &[]);
        assert!(is_minimal_degree(&b, &deg("0,0")));
        assert!(!is_minimal_degree(&b, &deg("2,1")));
        assert!(is_minimal_degree(&b, &deg("1,0")));
        assert_eq!(
            enumerate_minimal_degrees(&b).unwrap(),
            vec![deg("0,0"), deg("0,1"), deg("1,0"), deg("1,1")]
        );
        let a1 = ctx("A1", &[]);
        assert_eq!(enumerate_minimal_degrees(&a1).unwrap(), vec![deg("0"), deg("1")]);
    }

    #[test]
    fn d_x_examples() {
        assert_eq!(compute_d_x(&ctx("A2", &[2])).unwrap(), deg("1"));
        assert_eq!(compute_d_x(&ctx("A2", &[])).unwrap(), deg("1,1"));
        assert_eq!(compute_d_x(&ctx("D4", &[])).unwrap(), deg("2,2,2,2"));
        assert_eq!(compute_d_x(&ctx("D4", &[2])).unwrap(), deg("2,2,2"));
        assert_eq!(compute_d_x(&ctx("A3", &[1, 2, 3])).unwrap(), deg(""));
    }

    #[test]
    fn lifting_examples() {
        let p = ctx("A2", &[2]);
        assert_eq!(lifting(&p, &deg("1")).unwrap(), deg("1,1"));
        let d4 = ctx("D4", &[2]);
        assert_eq!(lifting(&d4, &deg("2,2,2")).unwrap(), deg("2,2,2,2"));
        let b = ctx("A3", &[]);
        for e in enumerate_minimal_degrees(&b).unwrap() {
            assert_eq!(lifting(&b, &e).unwrap(), e);
        }
        assert!(matches!(lifting(&ctx("A2", &[]), &deg("2,1")), Err(Error::Contract(_))));
    }

    #[test]
    fn splitting_examples() {
        let b = ctx("A3", &[]);
        assert!(verify_splitting(&b, &[0, 2]).unwrap().is_ok());
        let p = ctx("A2", &[2]);
        assert!(verify_splitting(&p, &[2]).unwrap().is_ok());
        assert!(verify_splitting(&p, &[0]).is_err());
    }

    #[test]
    fn verifier_reports_small() {
        for (t, p) in [("A1", vec![]), ("A2", vec![]), ("A3", vec![2]), ("B3", vec![1])] {
            let c = ctx(t, &p);
            assert!(verify_uniqueness(&c).unwrap().is_ok());
            assert!(verify_addition_minimal(&c).unwrap().is_ok());
            assert!(verify_splitting_all(&c).unwrap().is_ok());
        }
    }
}
