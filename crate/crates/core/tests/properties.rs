use std::collections::BTreeMap;

use num_traits::Signed;
use proptest::prelude::*;
use schublas::bases::{key_with_choices, schubert_with_choices, top_lascoux_with_choices};
use schublas::expansion::basis_element;
use schublas::tableau::{enumerate_perfect_tableaux, tableau_weights};
use schublas::{
    snp, BasisExpansion, BasisIndex, BasisKind, Coeff, Diagram, Engine, Permutation, Polynomial, WeakComposition,
};

const NVARS: usize = 5;

fn arb_poly(nvars: usize, max_exp: u32) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0..=max_exp, nvars), -6i64..=6), 0..6)
        .prop_map(Polynomial::from_int_terms)
}

fn arb_snowy(n: usize, m: u32) -> impl Strategy<Value = WeakComposition> {
    prop::sample::select(WeakComposition::snowy_in_box(n, m))
}

fn arb_perm(n: usize) -> impl Strategy<Value = Permutation> {
    prop::sample::select(Permutation::all(n))
}

fn distant_pairs() -> impl Strategy<Value = (usize, usize)> {
    let pairs: Vec<(usize, usize)> = (1..=NVARS)
        .flat_map(|i| (1..=NVARS).map(move |j| (i, j)))
        .filter(|(i, j)| i.abs_diff(*j) >= 2)
        .collect();
    prop::sample::select(pairs)
}

type Op = fn(&Polynomial, usize) -> Polynomial;

fn ops() -> [(&'static str, Op); 3] {
    [
        ("d", Polynomial::divided_difference),
        ("pi", Polynomial::demazure_pi),
        ("pihat", Polynomial::pi_hat),
    ]
}

/// `(x_i − x_{i+1}) g = f − s_i f`, solved for `g` by synthetic division on
/// the exponent of `x_i`. Independent of the library operator.
fn divided_difference_oracle(f: &Polynomial, i: usize) -> Polynomial {
    let mut rem = f - &f.swap_variables(i);
    let mut q = Polynomial::zero();
    let step = Polynomial::var(i) - Polynomial::var(i + 1);
    while !rem.is_zero() {
        // Highest power of x_i first; its quotient term drops one x_i.
        let (lead, coeff) = rem
            .terms()
            .max_by_key(|&(e, _)| (e.get(i), e.clone()))
            .map(|(e, c)| (e.clone(), c.clone()))
            .unwrap();
        let mut exp = lead.padded(NVARS.max(lead.len()));
        assert!(exp[i - 1] > 0, "not divisible");
        exp[i - 1] -= 1;
        let t = Polynomial::term(WeakComposition::new(exp), coeff);
        rem = &rem - &(&step * &t);
        q = &q + &t;
    }
    q
}

/// Strictly increasing `e_1 < … < e_k` with `e_j ≤ rows_j`.
fn column_count(rows: &[u32]) -> u64 {
    let mut ways: BTreeMap<u32, u64> = BTreeMap::from([(0, 1)]);
    for &r in rows {
        let mut next = BTreeMap::new();
        for (&prev, &w) in &ways {
            for e in prev + 1..=r {
                *next.entry(e).or_insert(0) += w;
            }
        }
        ways = next;
    }
    ways.values().sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn nilpotent_and_idempotent(f in arb_poly(NVARS, 3), i in 1..NVARS) {
        prop_assert!(f.divided_difference(i).divided_difference(i).is_zero());
        let pi = f.demazure_pi(i);
        prop_assert_eq!(pi.demazure_pi(i), pi);
        prop_assert!(f.pi_hat(i).pi_hat(i).is_zero());
    }

    #[test]
    fn divided_difference_matches_oracle(f in arb_poly(NVARS, 3), i in 1..NVARS) {
        let d = f.divided_difference(i);
        prop_assert!(d.is_integral());
        prop_assert_eq!(d, divided_difference_oracle(&f, i));
    }

    #[test]
    fn braid_relations(f in arb_poly(NVARS, 3), i in 1..NVARS - 1) {
        for (name, op) in ops() {
            let l = op(&op(&op(&f, i), i + 1), i);
            let r = op(&op(&op(&f, i + 1), i), i + 1);
            prop_assert_eq!(l, r, "{} at {}", name, i);
        }
    }

    #[test]
    fn distant_operators_commute(f in arb_poly(NVARS + 1, 3), (i, j) in distant_pairs()) {
        for (name, op) in ops() {
            prop_assert_eq!(op(&op(&f, i), j), op(&op(&f, j), i), "{} at {},{}", name, i, j);
        }
    }

    #[test]
    fn reverse_complement_is_involution(f in arb_poly(NVARS, 4), extra_m in 0u32..3, extra_n in 0usize..3) {
        let (m, n) = (4 + extra_m, NVARS + extra_n);
        let r = f.reverse_complement(m, n).unwrap();
        prop_assert_eq!(r.reverse_complement(m, n).unwrap(), f);
    }

    #[test]
    fn reverse_complement_intertwines_operators(f in arb_poly(NVARS, 4), i in 1..NVARS) {
        let (m, n) = (4, NVARS);
        let rf = f.reverse_complement(m, n).unwrap();
        let j = n - i;
        prop_assert_eq!(f.divided_difference(i).reverse_complement(m, n).unwrap(), rf.pi_hat(j));
        prop_assert_eq!(f.demazure_pi(i).reverse_complement(m, n).unwrap(), rf.demazure_pi(j));
        prop_assert_eq!(f.pi_hat(i).reverse_complement(m, n).unwrap(), rf.divided_difference(j));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn recursion_is_confluent(w in arb_perm(5), a in arb_snowy(4, 3), b in prop::collection::vec(any::<u8>(), 40)) {
        let mut k = 0;
        let mut pick = |opts: &[usize]| { k += 1; b[k % b.len()] as usize % opts.len() };
        let e = Engine::global();
        prop_assert_eq!(schubert_with_choices(&w, &mut pick), e.schubert(&w).unwrap());
        prop_assert_eq!(top_lascoux_with_choices(&a, &mut pick).unwrap(), e.top_lascoux(&a).unwrap());
        let c = WeakComposition::new(a.entries().iter().rev().copied().collect());
        prop_assert_eq!(key_with_choices(&c, &mut pick), e.key(&c).unwrap());
    }

    #[test]
    fn key_polynomials_are_positive_and_monic(a in prop::sample::select(WeakComposition::all_in_box(4, 3))) {
        let k = Engine::global().key(&a).unwrap();
        prop_assert!(k.is_nonnegative_integral());
        prop_assert_eq!(k.coeff(&a), Coeff::from_integer(1.into()));
        prop_assert_eq!(k.leading_exponent().unwrap(), a);
    }

    #[test]
    fn basis_round_trip(w in arb_perm(5), a in arb_snowy(4, 3), k in prop::sample::select(WeakComposition::all_in_box(4, 3))) {
        let e = Engine::global();
        for (kind, idx) in [
            (BasisKind::Schubert, BasisIndex::Perm(w)),
            (BasisKind::TopLascoux, BasisIndex::Comp(a)),
            (BasisKind::Key, BasisIndex::Comp(k)),
        ] {
            let f = basis_element(e, kind, &idx).unwrap();
            let x = e.expand_in_basis(&f, kind).unwrap();
            let mut want = BasisExpansion::new(kind);
            want.add_term(idx, Coeff::from_integer(1.into()));
            prop_assert_eq!(x, want);
        }
    }

    #[test]
    fn expansion_is_linear(
        xs in prop::collection::vec((arb_snowy(3, 3), -3i64..=3), 1..4),
        ys in prop::collection::vec((arb_snowy(3, 3), -3i64..=3), 1..4),
    ) {
        let e = Engine::global();
        let build = |v: &[(WeakComposition, i64)]| {
            v.iter().fold(Polynomial::zero(), |acc, (a, c)| {
                acc + e.top_lascoux(a).unwrap().scale(&Coeff::from_integer((*c).into()))
            })
        };
        let (f, g) = (build(&xs), build(&ys));
        let ef = e.expand_in_basis(&f, BasisKind::TopLascoux).unwrap();
        let eg = e.expand_in_basis(&g, BasisKind::TopLascoux).unwrap();
        let mut sum = ef.clone();
        for (i, c) in eg.terms() {
            sum.add_term(i.clone(), c.clone());
        }
        prop_assert_eq!(e.expand_in_basis(&(&f + &g), BasisKind::TopLascoux).unwrap(), sum);
        prop_assert_eq!(ef.reconstruct(e).unwrap(), f);
        let ks = e.expand_in_basis(&g, BasisKind::Key).unwrap();
        prop_assert_eq!(ks.reconstruct(e).unwrap(), g);
    }

    #[test]
    fn tableau_columns_are_independent(cells in prop::collection::btree_set((1u32..=5, 1u32..=4), 0..10)) {
        let d = Diagram::from_cells(cells.iter().copied()).unwrap();
        let mut cols: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
        for &(r, c) in &cells {
            cols.entry(c).or_default().push(r);
        }
        let product: u64 = cols.values().map(|rows| column_count(rows)).product();
        let tabs = enumerate_perfect_tableaux(&d, None);
        prop_assert_eq!(tabs.len() as u64, product);
        let mut from_tabs: Vec<WeakComposition> = tabs.iter().map(|t| t.weight()).collect();
        from_tabs.sort_by(|a, b| b.cmp(a));
        from_tabs.dedup();
        prop_assert_eq!(tableau_weights(&d), from_tabs.clone());
        for w in from_tabs.iter().take(3) {
            let restricted = enumerate_perfect_tableaux(&d, Some(w));
            prop_assert_eq!(restricted.len(), tabs.iter().filter(|t| &t.weight() == w).count());
        }
    }

    #[test]
    fn snp_is_invariant_under_reverse_complement(f in arb_poly(3, 3)) {
        prop_assume!(!f.is_zero());
        let r = f.reverse_complement(3, 3).unwrap();
        prop_assert_eq!(snp::snp_check(&f).unwrap().saturated, snp::snp_check(&r).unwrap().saturated);
    }

    #[test]
    fn schubert_is_positive_and_homogeneous(w in arb_perm(5)) {
        let s = Engine::global().schubert(&w).unwrap();
        prop_assert!(s.terms().all(|(_, c)| c.is_integer() && c.is_positive()));
        prop_assert_eq!(s.homogeneous_degree(), Some(w.length()));
    }

    #[test]
    fn json_round_trips(f in arb_poly(4, 3), w in arb_perm(4), a in arb_snowy(3, 3)) {
        prop_assert_eq!(Polynomial::from_json(&f.to_json()).unwrap(), f);
        for g in schublas::pipedream::enumerate_bpd(&w, 4).unwrap() {
            prop_assert_eq!(schublas::PipeGrid::from_json(&g.to_json()).unwrap(), g);
        }
        let snow = Diagram::snow(&a).unwrap();
        prop_assert_eq!(Diagram::from_json(&snow.to_json()).unwrap(), snow.clone());
        for t in enumerate_perfect_tableaux(&snow.unlabeled(), None) {
            prop_assert_eq!(schublas::PerfectTableau::from_json(&t.to_json()).unwrap(), t);
        }
        let x = Engine::global().expand_in_basis(&Engine::global().top_lascoux(&a).unwrap(), BasisKind::Key).unwrap();
        prop_assert_eq!(BasisExpansion::from_json(&x.to_json()).unwrap(), x);
    }
}
