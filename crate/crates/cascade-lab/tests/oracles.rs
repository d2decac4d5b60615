//! Brute-force oracles checked against the library on small types.

use std::collections::HashSet;
use std::sync::Arc;

use cascade_lab::cascade::{cascade_of, kostant_cascade, product_formula};
use cascade_lab::minimal::{compute_d_x, d_x_by_bfs, enumerate_minimal_degrees};
use cascade_lab::weyl::{bruhat_leq, enumerate_group, hecke_product, CosetContext};
use cascade_lab::{Context, Degree, DynkinSpec, RootSystem, SimpleSet, WeylElement};

fn rs(t: &str) -> Arc<RootSystem> {
    Arc::new(RootSystem::new(t.parse::<DynkinSpec>().unwrap()).unwrap())
}

const SMALL: &[&str] = &["A1", "A2", "A3", "B2", "B3", "C3", "G2"];

/// The Bruhat interval [e, v] as the set of all subword products.
fn lower_interval(rs: &RootSystem, v: &WeylElement) -> HashSet<WeylElement> {
    let mut set: HashSet<WeylElement> = HashSet::from([WeylElement::identity(rs)]);
    for s in v.reduced_word(rs) {
        let more: Vec<WeylElement> = set.iter().map(|x| x.mul_simple(rs, s)).collect();
        set.extend(more);
    }
    set
}

#[test]
fn bruhat_matches_subword_oracle() {
    for t in SMALL {
        let rs = rs(t);
        let w = enumerate_group(&rs, 100_000).unwrap();
        for v in &w {
            let below = lower_interval(&rs, v);
            for u in &w {
                assert_eq!(bruhat_leq(&rs, u, v), below.contains(u), "{t}: {} <= {}", u.word_string(&rs), v.word_string(&rs));
            }
        }
    }
}

#[test]
fn hecke_is_the_maximum_of_products_from_intervals() {
    for t in ["A2", "B2", "A3", "G2"] {
        let rs = rs(t);
        let w = enumerate_group(&rs, 100_000).unwrap();
        let intervals: Vec<HashSet<WeylElement>> = w.iter().map(|v| lower_interval(&rs, v)).collect();
        for (i, u) in w.iter().enumerate() {
            for (j, v) in w.iter().enumerate() {
                let prods: HashSet<WeylElement> =
                    intervals[i].iter().flat_map(|a| intervals[j].iter().map(move |b| a.mul(b))).collect();
                let top = prods.iter().max_by_key(|x| x.length()).unwrap();
                assert!(prods.iter().all(|x| bruhat_leq(&rs, x, top)));
                assert_eq!(hecke_product(&rs, u, v), *top, "{t}");
            }
        }
    }
}

#[test]
fn group_orders_and_root_counts() {
    let cases = [
        ("A1", 2, 1),
        ("A4", 120, 10),
        ("A5", 720, 15),
        ("B4", 384, 16),
        ("C4", 384, 16),
        ("D4", 192, 12),
        ("D5", 1920, 20),
        ("F4", 1152, 24),
        ("G2", 12, 6),
    ];
    for (t, order, npos) in cases {
        let rs = rs(t);
        assert_eq!(rs.num_positive(), npos, "{t}");
        assert_eq!(rs.spec.weyl_order(), order as u128, "{t}");
        let w = enumerate_group(&rs, 100_000).unwrap();
        assert_eq!(w.len(), order, "{t}");
        let longest = w.iter().map(|x| x.length()).max().unwrap();
        assert_eq!(longest, npos, "{t}");
    }
    for (t, n) in [("E6", 36), ("E7", 63), ("E8", 120)] {
        assert_eq!(rs(t).num_positive(), n);
    }
}

#[test]
fn coset_representatives_by_enumeration() {
    for t in ["A3", "B3", "G2"] {
        let rs = rs(t);
        let w = enumerate_group(&rs, 100_000).unwrap();
        for bits in 0..(1u32 << rs.rank) {
            let p = SimpleSet(bits);
            let cc = CosetContext::new(&rs, p);
            let wp: Vec<&WeylElement> = w
                .iter()
                .filter(|x| x.reduced_word(&rs).iter().all(|&s| p.contains(s)))
                .collect();
            for x in &w {
                let coset: Vec<WeylElement> = wp.iter().map(|y| x.mul(y)).collect();
                let min = coset.iter().min_by_key(|c| c.length()).unwrap();
                let max = coset.iter().max_by_key(|c| c.length()).unwrap();
                assert_eq!(cc.min_rep(&rs, x), *min);
                assert_eq!(cc.max_rep(&rs, x), *max);
                assert_eq!(cc.coset_length(x), min.length());
            }
        }
    }
}

/// Greedy sequences straight from the definition.
fn brute_greedy(ctx: &Context, d: &Degree) -> usize {
    if d.is_zero() {
        return 1;
    }
    let rs = ctx.rs();
    let fits: Vec<(usize, Degree)> = (0..rs.num_positive())
        .filter_map(|k| ctx.degree_of_root(k).ok().map(|dk| (k, dk)))
        .filter(|(_, dk)| dk.leq(d))
        .collect();
    fits.iter()
        .filter(|(a, _)| !fits.iter().any(|(b, _)| b != a && rs.root_leq(*a, *b)))
        .map(|(_, da)| brute_greedy(ctx, &d.checked_sub(da).unwrap()))
        .sum()
}

#[test]
fn greedy_count_matches_definition() {
    for t in ["A3", "B3", "C3", "G2", "D4"] {
        let rs = rs(t);
        for bits in 0..(1u32 << rs.rank) {
            let ctx = Context::new(rs.clone(), SimpleSet(bits));
            for d in compute_d_x(&ctx).unwrap().box_below() {
                let n = brute_greedy(&ctx, &d);
                assert_eq!(ctx.count_greedy(&d), n.into(), "{} d={d}", ctx.label());
                assert_eq!(ctx.all_greedy_decompositions(&d).unwrap().len(), n);
            }
        }
    }
}

#[test]
fn d_x_matches_breadth_first_search() {
    for t in ["A1", "A2", "A3", "A4", "B2", "B3", "C3", "B4", "C4", "D4", "F4", "G2"] {
        let rs = rs(t);
        for bits in 0..(1u32 << rs.rank) {
            let ctx = Context::new(rs.clone(), SimpleSet(bits));
            let dx = compute_d_x(&ctx).unwrap();
            assert_eq!(d_x_by_bfs(&ctx, dx.sum()).unwrap(), vec![dx.clone()], "{}", ctx.label());
            assert_eq!(ctx.z_d_p(&dx), ctx.coset().min_rep(&rs, ctx.w_o()));
        }
    }
}

#[test]
fn minimal_degrees_by_definition() {
    for t in ["A3", "B3", "G2"] {
        let rs = rs(t);
        for bits in 0..(1u32 << rs.rank) {
            let ctx = Context::new(rs.clone(), SimpleSet(bits));
            let grid = compute_d_x(&ctx).unwrap().box_below();
            let brute: Vec<Degree> = grid
                .iter()
                .filter(|d| grid.iter().filter(|e| e.lt(d)).all(|e| ctx.z_d_p(e) != ctx.z_d_p(d)))
                .cloned()
                .collect();
            assert_eq!(enumerate_minimal_degrees(&ctx).unwrap(), brute, "{}", ctx.label());
        }
    }
}

fn coeffs(rs: &RootSystem, roots: &[usize]) -> Vec<Vec<i64>> {
    let mut v: Vec<Vec<i64>> = roots.iter().map(|&k| rs.root(k).to_vec()).collect();
    v.sort();
    v
}

#[test]
fn kostant_golden_fixtures() {
    let fixtures: &[(&str, &[&[i64]])] = &[
        ("A1", &[&[1]]),
        ("A2", &[&[1, 1]]),
        ("A3", &[&[1, 1, 1], &[0, 1, 0]]),
        ("A4", &[&[1, 1, 1, 1], &[0, 1, 1, 0]]),
        ("A5", &[&[1, 1, 1, 1, 1], &[0, 1, 1, 1, 0], &[0, 0, 1, 0, 0]]),
        ("D4", &[&[1, 2, 1, 1], &[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]),
        ("D5", &[&[1, 2, 2, 1, 1], &[1, 0, 0, 0, 0], &[0, 0, 1, 1, 1], &[0, 0, 1, 0, 0]]),
        ("G2", &[&[3, 2], &[1, 0]]),
    ];
    for (t, want) in fixtures {
        let rs = rs(t);
        let cb = Context::new(rs.clone(), SimpleSet::EMPTY);
        let dgb = compute_d_x(&cb).unwrap();
        let c = cascade_of(&cb, &dgb).unwrap();
        let mut want: Vec<Vec<i64>> = want.iter().map(|r| r.to_vec()).collect();
        want.sort();
        assert_eq!(coeffs(&rs, &c.roots), want, "{t}");
        assert_eq!(coeffs(&rs, &kostant_cascade(&rs)), want, "{t}");
        let (p, ok) = product_formula(&cb, &c);
        assert!(ok && p == *cb.w_o(), "{t}");
    }
}
