//! Positivity, admissibility, tangent directions and the certificate
//! inequality (c_1(X), d) - l(z_d^P) <= card(TD_{P,d}).

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::cascade::{cascade_of, disjoint_union, Cascade};
use crate::check::Outcome;
use crate::degree::{Context, Degree};
use crate::error::{Error, Result};
use crate::minimal::lifting;
use crate::rootsys::{format_vec, ParabolicSubset, RootSet, Series};
use crate::weyl::CosetContext;

/// Lifting, cascade and the cascade split along R_P^+.
#[derive(Clone, Debug)]
pub struct LiftData {
    pub lifting: Degree,
    pub cascade: Cascade,
    /// B minus R_P^+
    pub outside: Vec<usize>,
    /// B intersected with R_P^+
    pub inside: Vec<usize>,
}

pub fn lift_data(ctx: &Context, d: &Degree) -> Result<LiftData> {
    let e = lifting(ctx, d)?;
    let cascade = cascade_of(ctx.borel(), &e)?;
    let (outside, inside): (Vec<usize>, Vec<usize>) =
        cascade.roots.iter().partition(|&&a| ctx.outside().contains(a));
    Ok(LiftData { lifting: e, cascade, outside, inside })
}

/// Sigma_{P,d} from precomputed lifting data.
pub fn sigma_of(ctx: &Context, ld: &LiftData) -> i64 {
    let rs = ctx.rs();
    ld.outside
        .iter()
        .map(|&a| ctx.rp().iter().map(|g| rs.pair(g, a)).sum::<i64>())
        .sum()
}

/// Sigma_{P,d} = sum over alpha in B minus R_P^+ and gamma in R_P^+ of (gamma, alpha^vee).
pub fn sigma(ctx: &Context, d: &Degree) -> Result<i64> {
    Ok(sigma_of(ctx, &lift_data(ctx, d)?))
}

pub fn is_p_admissible(ctx: &Context, d: &Degree) -> Result<bool> {
    Ok(sigma(ctx, d)? >= 0)
}

/// TD_{P,d}, stored as the positive roots alpha + gamma whose negatives
/// are the tangent directions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangentDirections {
    pub negated: RootSet,
}

impl TangentDirections {
    pub fn len(&self) -> usize {
        self.negated.len()
    }
    pub fn is_empty(&self) -> bool {
        self.negated.is_empty()
    }
}

fn td_of(ctx: &Context, ld: &LiftData) -> TangentDirections {
    let rs = ctx.rs();
    let mut set = RootSet::EMPTY;
    for &a in &ld.outside {
        set.insert(a);
        for g in ctx.rp().iter() {
            let v: Vec<i64> = rs.root(a).iter().zip(rs.root(g)).map(|(x, y)| x + y).collect();
            if let Some(k) = rs.index_of(&v) {
                if ctx.outside().contains(k) {
                    set.insert(k);
                }
            }
        }
    }
    TangentDirections { negated: set }
}

pub fn tangent_directions(ctx: &Context, d: &Degree) -> Result<TangentDirections> {
    Ok(td_of(ctx, &lift_data(ctx, d)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Assumption {
    LongRoots,
    CompleteFlag,
    CosmallSplit,
    None,
}

impl std::fmt::Display for Assumption {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Assumption::LongRoots => "long-roots",
            Assumption::CompleteFlag => "complete-flag",
            Assumption::CosmallSplit => "cosmall-split",
            Assumption::None => "none",
        })
    }
}

pub const CLAUSE_LONG: u8 = 1;
pub const CLAUSE_FLAG: u8 = 2;
pub const CLAUSE_SPLIT: u8 = 4;

fn assumption_of(ctx: &Context, d: &Degree, ld: &LiftData) -> (Assumption, u8) {
    let rs = ctx.rs();
    let mut mask = 0u8;
    if ld.outside.iter().all(|&a| rs.is_long(a)) {
        mask |= CLAUSE_LONG;
    }
    if ctx.is_borel() {
        mask |= CLAUSE_FLAG;
    }
    let cosmall = ld.outside.iter().all(|&a| ctx.is_p_cosmall(a).unwrap_or(false));
    let disjoint = ld.outside.iter().enumerate().all(|(i, &a)| {
        ld.outside[i + 1..]
            .iter()
            .all(|&b| rs.simple_sets_totally_disjoint(rs.support(a), rs.support(b)))
    });
    if cosmall && disjoint && ctx.degree_sum(&ld.outside) == *d {
        mask |= CLAUSE_SPLIT;
    }
    let status = if mask & CLAUSE_LONG != 0 {
        Assumption::LongRoots
    } else if mask & CLAUSE_FLAG != 0 {
        Assumption::CompleteFlag
    } else if mask & CLAUSE_SPLIT != 0 {
        Assumption::CosmallSplit
    } else {
        Assumption::None
    };
    (status, mask)
}

/// First satisfied clause (long roots, then P = B, then cosmall split)
/// and the bitmask of all satisfied clauses.
pub fn assumption_status(ctx: &Context, d: &Degree) -> Result<(Assumption, u8)> {
    let ld = lift_data(ctx, d)?;
    Ok(assumption_of(ctx, d, &ld))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    #[serde(rename = "type")]
    pub dynkin: String,
    pub parabolic: Vec<usize>,
    pub degree: Degree,
    pub lifting: Degree,
    pub cascade_outside: Vec<Vec<i64>>,
    pub sigma: i64,
    pub admissible: bool,
    pub assumption: Assumption,
    pub assumption_mask: u8,
    pub c1: i64,
    pub z: String,
    pub z_length: usize,
    pub lhs: i64,
    pub tangent_directions: Vec<Vec<i64>>,
    pub td_card: usize,
    pub inequality_ok: bool,
    pub dim_x: usize,
    pub dim_moduli: i64,
    pub dim_m2: i64,
    pub endpoints: (String, String),
    pub curve_degrees: Vec<Degree>,
    pub degenerate: bool,
}

/// Full combinatorial record for (X, d), d in Pi_P.
pub fn certificate(ctx: &Context, d: &Degree) -> Result<Certificate> {
    let rs = ctx.rs();
    let ld = lift_data(ctx, d)?;
    let sig = sigma_of(ctx, &ld);
    let (assumption, mask) = assumption_of(ctx, d, &ld);
    let td = td_of(ctx, &ld);
    let c1 = ctx.c1_pairing(d);
    let z = ctx.z_d_p(d);
    let lhs = c1 - z.length() as i64;
    let dim_x = ctx.dim_x();
    let neg = |k: usize| rs.root(k).iter().map(|c| -c).collect::<Vec<i64>>();
    Ok(Certificate {
        dynkin: rs.spec.to_string(),
        parabolic: ctx.parabolic().to_bourbaki(),
        degree: d.clone(),
        lifting: ld.lifting.clone(),
        cascade_outside: ld.outside.iter().map(|&a| rs.root(a).to_vec()).collect(),
        sigma: sig,
        admissible: sig >= 0,
        assumption,
        assumption_mask: mask,
        c1,
        z: z.word_string(rs),
        z_length: z.length(),
        lhs,
        tangent_directions: td.negated.iter().map(neg).collect(),
        td_card: td.len(),
        inequality_ok: lhs <= td.len() as i64,
        dim_x,
        dim_moduli: dim_x as i64 + c1,
        dim_m2: lhs,
        endpoints: ("id".to_string(), z.word_string(rs)),
        curve_degrees: ld.outside.iter().map(|&a| ctx.degree_of_root(a).expect("outside root")).collect(),
        degenerate: d.is_zero(),
    })
}

/// (c_1(X), d) does not depend on the representative over Delta^vee.
pub fn verify_c1_well_defined(ctx: &Context, d: &Degree) -> bool {
    let mut rep = ctx.representative(d);
    let base = ctx.c1_pairing_rep(&rep);
    for i in ctx.parabolic().iter() {
        rep[i] += 1;
    }
    base == ctx.c1_pairing_rep(&rep)
}

/// Positivity statements for e in Pi_B relative to a parabolic subset.
pub fn verify_positivity(cb: &Context, e: &Degree, parabolic: ParabolicSubset) -> Result<Outcome> {
    let rs = cb.rs();
    let cas = cascade_of(cb, e)?;
    let rp = rs.roots_in(parabolic);
    let outside: Vec<usize> = cas.roots.iter().copied().filter(|a| !rp.contains(*a)).collect();
    let inside: Vec<usize> = cas.roots.iter().copied().filter(|a| rp.contains(*a)).collect();
    let mut out = Outcome::new();
    let e_hat = cb.coroot_sum(&inside);
    let z_hat = cb.z_d_p(&e_hat);
    for g in z_hat.inversions().iter() {
        for &a in &outside {
            out.check(rs.pair(g, a) >= 0, || {
                format!("e={e} (i): gamma=({}) alpha=({}) negative", rs.format_root(g), rs.format_root(a))
            });
        }
    }
    for g in rp.iter() {
        let pos = outside.iter().filter(|&&a| rs.pair(g, a) > 0).count();
        out.check(pos <= 1, || format!("e={e} (ii): gamma=({}) has {pos} positive partners", rs.format_root(g)));
    }
    let cc = CosetContext::new(rs, parabolic);
    if cc.is_max_rep(&cb.z_d_p(e)) {
        for g in rp.iter() {
            let neg = outside.iter().any(|&a| rs.pair(g, a) < 0);
            let pos = outside.iter().any(|&a| rs.pair(g, a) > 0);
            if neg {
                out.check(pos, || format!("e={e} (iii): gamma=({}) negative without positive", rs.format_root(g)));
            }
        }
    }
    Ok(out)
}

/// Type A: at most one negative partner, and sum of (gamma, alpha^vee) in {0, 1}.
pub fn verify_type_a(cb: &Context, e: &Degree, parabolic: ParabolicSubset) -> Result<Outcome> {
    let rs = cb.rs();
    if rs.spec.series != Series::A {
        return Err(Error::Contract(format!("{} is not of type A", rs.spec)));
    }
    let cc = CosetContext::new(rs, parabolic);
    if !cc.is_max_rep(&cb.z_d_p(e)) {
        return Err(Error::Contract(format!("z_e^B is not a maximal representative for e={e}")));
    }
    let cas = cascade_of(cb, e)?;
    let outside: Vec<usize> = cas.roots.iter().copied().filter(|a| !cc.rp.contains(*a)).collect();
    let mut out = Outcome::new();
    for g in cc.rp.iter() {
        let neg = outside.iter().filter(|&&a| rs.pair(g, a) < 0).count();
        out.check(neg <= 1, || format!("e={e}: gamma=({}) has {neg} negative partners", rs.format_root(g)));
        let s: i64 = outside.iter().map(|&a| rs.pair(g, a)).sum();
        out.check(s == 0 || s == 1, || format!("e={e}: gamma=({}) pairing sum {s}", rs.format_root(g)));
    }
    Ok(out)
}

/// (alpha, gamma) with (gamma, alpha^vee) = -1, for alpha in B minus R_P^+.
fn minus_one_pairs(ctx: &Context, ld: &LiftData) -> Vec<(usize, usize)> {
    let rs = ctx.rs();
    ld.outside
        .iter()
        .flat_map(|&a| ctx.rp().iter().filter(move |&g| rs.pair(g, a) == -1).map(move |g| (a, g)))
        .collect()
}

/// (alpha, gamma) -> -alpha - gamma is an injection into TD minus -(B minus R_P^+).
pub fn verify_injection(ctx: &Context, d: &Degree) -> Result<Outcome> {
    let rs = ctx.rs();
    let ld = lift_data(ctx, d)?;
    let td = td_of(ctx, &ld);
    let mut out = Outcome::new();
    let mut seen: HashMap<usize, (usize, usize)> = HashMap::new();
    for (a, g) in minus_one_pairs(ctx, &ld) {
        let v: Vec<i64> = rs.root(a).iter().zip(rs.root(g)).map(|(x, y)| x + y).collect();
        let w = || format!("d={d}: pair ({}),({})", rs.format_root(a), rs.format_root(g));
        let Some(k) = rs.index_of(&v) else {
            out.fail(format!("{}: alpha+gamma not a root", w()));
            continue;
        };
        out.check(td.negated.contains(k), || format!("{}: image not in TD", w()));
        out.check(!ld.outside.contains(&k), || format!("{}: image in -(B minus R_P^+)", w()));
        out.check(seen.insert(k, (a, g)).is_none(), || format!("{}: image repeated", w()));
    }
    Ok(out)
}

/// Five length and c1 identities for the lifting of d, compared side by side.
pub fn verify_dimension_identities(ctx: &Context, d: &Degree) -> Result<Outcome> {
    let rs = ctx.rs();
    let cb = ctx.borel();
    let ld = lift_data(ctx, d)?;
    let (assumption, mask) = assumption_of(ctx, d, &ld);
    let sig = sigma_of(ctx, &ld);
    let rp = ctx.rp();
    let c1b = cb.c1_pairing(&ld.lifting);
    let c1x = ctx.c1_pairing(d);
    let lz = ctx.z_d_p(d).length() as i64;
    let nb = ld.cascade.roots.len() as i64;
    let n_out = ld.outside.len() as i64;
    let n_in = ld.inside.len() as i64;
    let mut out = Outcome::new();

    out.check(verify_c1_well_defined(ctx, d), || format!("d={d}: c1 depends on representative"));
    out.check(lz == c1b - nb - rp.len() as i64, || {
        format!("d={d} identity 1: l(z)={lz} vs {c1b}-{nb}-{}", rp.len())
    });

    let parts: Vec<RootSet> = ld.inside.iter().map(|&a| ctx.reflection(a).inversions()).collect();
    let (u, disjoint) = disjoint_union(&parts);
    out.check(disjoint, || format!("d={d} identity 2: inversion sets overlap"));
    out.check(c1b - c1x == sig + u.len() as i64 + n_in, || {
        format!("d={d} identity 2: {c1b}-{c1x} vs {sig}+{}+{n_in}", u.len())
    });
    if sig >= 0 {
        out.check(c1b - c1x >= 0, || format!("d={d}: admissible but c1 difference negative"));
    }

    let parts: Vec<RootSet> = ld.outside.iter().map(|&a| ctx.reflection(a).inversions().intersection(rp)).collect();
    let (u, disjoint) = disjoint_union(&parts);
    out.check(disjoint, || format!("d={d} identity 3: inversion sets overlap"));
    out.check(c1x - lz == -sig + u.len() as i64 + n_out, || {
        format!("d={d} identity 3: {c1x}-{lz} vs -{sig}+{}+{n_out}", u.len())
    });

    let double: i64 = ld
        .outside
        .iter()
        .map(|&a| {
            rp.minus(ctx.reflection(a).inversions())
                .iter()
                .map(|g| rs.pair(g, a))
                .sum::<i64>()
        })
        .sum();
    out.check(c1x - lz == -double + n_out, || format!("d={d} identity 4: {c1x}-{lz} vs -({double})+{n_out}"));

    if assumption != Assumption::None {
        if mask & CLAUSE_LONG != 0 {
            for &a in &ld.outside {
                for g in 0..rs.num_positive() {
                    if g != a {
                        let p = rs.pair(g, a);
                        out.check((-1..=1).contains(&p), || {
                            format!("d={d}: long root ({}) pairs {p} with ({})", rs.format_root(a), rs.format_root(g))
                        });
                    }
                }
            }
        }
        let count = minus_one_pairs(ctx, &ld).len() as i64;
        out.check(-double == count, || format!("d={d} identity 5: {} vs {count}", -double));
    }
    Ok(out)
}

/// For gamma in R_P^+: -gamma and z^{-1}(-gamma) lie in R^+ union R_P;
/// and z^{-1} = w_P z w_P. Holds for any effective d.
pub fn verify_root_membership(ctx: &Context, d: &Degree) -> Outcome {
    let rs = ctx.rs();
    let z = ctx.z_d_p(d);
    let zi = z.inverse();
    let rp = ctx.rp();
    let in_rp_set = |r: crate::rootsys::SignedRoot| !r.negative || rp.contains(r.index);
    let mut out = Outcome::new();
    for g in rp.iter() {
        let ng = crate::rootsys::SignedRoot::neg(g);
        out.check(in_rp_set(ng), || format!("d={d}: -gamma outside R(P)"));
        out.check(in_rp_set(zi.apply(ng)), || {
            format!("d={d}: z^-1(-({})) outside R(P)", rs.format_root(g))
        });
    }
    let wp = ctx.w_p();
    out.check(zi == wp.mul(&z).mul(wp), || format!("d={d}: z^-1 differs from w_P z w_P"));
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagonalCurve {
    pub components: Vec<Vec<i64>>,
    pub degrees: Vec<Degree>,
    pub endpoints: (String, String),
    pub degenerate: bool,
}

/// Component roots B minus R_P^+, their degrees and the endpoint cosets.
pub fn diagonal_curve_descriptor(ctx: &Context, d: &Degree) -> Result<(DiagonalCurve, Outcome)> {
    let rs = ctx.rs();
    let ld = lift_data(ctx, d)?;
    let z = ctx.z_d_p(d);
    let mut out = Outcome::new();
    for (i, &a) in ld.outside.iter().enumerate() {
        for &b in &ld.outside[i + 1..] {
            out.check(rs.strongly_orthogonal(a, b), || {
                format!("d={d}: components ({}),({}) not strongly orthogonal", rs.format_root(a), rs.format_root(b))
            });
        }
    }
    out.check(ctx.degree_sum(&ld.outside) == *d, || format!("d={d}: component degrees do not sum to d"));
    let prod = ctx.product_of_roots(&ld.outside);
    out.check(ctx.coset().same_coset(rs, &prod, &z), || {
        format!("d={d}: product of component reflections not in z W_P")
    });
    let desc = DiagonalCurve {
        components: ld.outside.iter().map(|&a| rs.root(a).to_vec()).collect(),
        degrees: ld.outside.iter().map(|&a| ctx.degree_of_root(a).expect("outside root")).collect(),
        endpoints: ("id".into(), z.word_string(rs)),
        degenerate: d.is_zero(),
    };
    Ok((desc, out))
}

pub fn format_root_list(v: &[Vec<i64>]) -> String {
    v.iter().map(|r| format!("({})", format_vec(r))).collect::<Vec<_>>().join(" ")
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
    fn sigma_examples() {
        assert_eq!(sigma(&ctx("A2", &[2]), &deg("1")).unwrap(), 1);
        let d4 = ctx("D4", &[2]);
        assert_eq!(sigma(&d4, &deg("2,2,2")).unwrap(), -2);
        assert!(!is_p_admissible(&d4, &deg("2,2,2")).unwrap());
        assert_eq!(sigma(&ctx("A3", &[]), &deg("1,2,1")).unwrap(), 0);
        assert!(sigma(&ctx("A2", &[]), &deg("2,1")).is_err());
    }

    #[test]
    fn td_examples() {
        let b = ctx("A2", &[]);
        let td = tangent_directions(&b, &deg("1,1")).unwrap();
        assert_eq!(td.negated, RootSet::single(2));
        let p = ctx("A2", &[2]);
        assert_eq!(tangent_directions(&p, &deg("1")).unwrap().negated, RootSet::single(2));
        let a3 = ctx("A3", &[1]);
        let td = tangent_directions(&a3, &deg("2,1")).unwrap();
        let rs = a3.rs();
        let want: RootSet = [&[1, 1, 1][..], &[0, 1, 0], &[1, 1, 0]]
            .iter()
            .map(|v| rs.index_of(v).unwrap())
            .collect();
        assert_eq!(td.negated, want);
    }

    #[test]
    fn assumptions() {
        assert_eq!(assumption_status(&ctx("D4", &[2]), &deg("2,2,2")).unwrap().0, Assumption::LongRoots);
        let g2 = ctx("G2", &[]);
        assert_eq!(assumption_status(&g2, &deg("1,0")).unwrap().0, Assumption::CompleteFlag);
        let (s, m) = assumption_status(&ctx("A2", &[2]), &deg("1")).unwrap();
        assert_eq!(s, Assumption::LongRoots);
        assert_eq!(m, CLAUSE_LONG | CLAUSE_SPLIT);
    }

    #[test]
    fn certificates() {
        let c = certificate(&ctx("A2", &[2]), &deg("1")).unwrap();
        assert_eq!((c.lhs, c.td_card, c.dim_x, c.dim_moduli), (1, 1, 2, 5));
        assert!(c.inequality_ok);
        assert_eq!(c.endpoints.1, "s2*s1");
        let c = certificate(&ctx("A3", &[1]), &deg("2,1")).unwrap();
        assert_eq!((c.lhs, c.td_card, c.dim_moduli), (3, 3, 13));
        let c = certificate(&ctx("A2", &[]), &deg("1,1")).unwrap();
        assert_eq!((c.lhs, c.td_card), (1, 1));
        let z = certificate(&ctx("A2", &[]), &deg("0,0")).unwrap();
        assert!(z.degenerate);
        assert!(z.curve_degrees.is_empty());
    }

    #[test]
    fn verifiers_small() {
        let a3 = ctx("A3", &[1]);
        assert!(verify_injection(&a3, &deg("2,1")).unwrap().is_ok());
        assert!(verify_dimension_identities(&a3, &deg("2,1")).unwrap().is_ok());
        assert!(verify_root_membership(&a3, &deg("2,1")).is_ok());
        let b = a3.borel();
        assert!(verify_positivity(b, &deg("1,2,1"), a3.parabolic()).unwrap().is_ok());
        assert!(verify_type_a(b, &deg("1,2,1"), a3.parabolic()).unwrap().is_ok());
        assert!(verify_type_a(ctx("D4", &[]).borel(), &deg("2,2,2,2"), SimpleSet::EMPTY).is_err());
    }

    use crate::rootsys::SimpleSet;
}
