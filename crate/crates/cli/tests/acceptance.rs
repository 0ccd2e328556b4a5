//! Acceptance battery. Each criterion prints one PASS/FAIL line; the process
//! exits non-zero if any criterion fails.

use std::collections::{BTreeSet, HashMap};
use std::process::Command;
use std::time::{Duration, Instant};

use num_traits::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use schublas::expansion::BasisIndex;
use schublas::{pipedream, snp, tableau};
use schublas::{Coeff, Diagram, Engine, PerfectTableau, Permutation, PipeGrid, Polynomial, WeakComposition};

type Outcome = Result<String, String>;

fn p(v: &[u32]) -> Permutation {
    Permutation::from_one_line(v.to_vec()).unwrap()
}

fn c(v: &[u32]) -> WeakComposition {
    WeakComposition::from(v)
}

fn poly(terms: &[(&[u32], i64)]) -> Polynomial {
    Polynomial::from_int_terms(terms.iter().map(|(e, k)| (e.to_vec(), *k)))
}

fn one() -> Coeff {
    Coeff::from_integer(1.into())
}

fn check(cond: bool, ok: impl Into<String>, why: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(ok.into())
    } else {
        Err(why())
    }
}

fn lib<T>(r: schublas::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

/// Runs `f` on every item and reports the first failure.
fn all_of<T>(items: &[T], mut f: impl FnMut(&T) -> Result<(), String>) -> Outcome {
    for it in items {
        f(it)?;
    }
    Ok(format!("{} cases", items.len()))
}

/// Schubert polynomials from the top: `𝔖_{w0} = x^{(n-1,…,1)}` and
/// `𝔖_w = ∂_i 𝔖_{w s_i}` whenever `w(i) < w(i+1)`.
struct TopDown {
    n: usize,
    memo: HashMap<Vec<u32>, Polynomial>,
}

impl TopDown {
    fn new(n: usize) -> Self {
        TopDown { n, memo: HashMap::new() }
    }

    fn get(&mut self, w: &[u32]) -> Polynomial {
        if let Some(f) = self.memo.get(w) {
            return f.clone();
        }
        let f = match (0..self.n - 1).find(|&i| w[i] < w[i + 1]) {
            None => Polynomial::monomial(WeakComposition::new((0..self.n as u32).rev().collect())),
            Some(i) => {
                let mut up = w.to_vec();
                up.swap(i, i + 1);
                self.get(&up).divided_difference(i + 1)
            }
        };
        self.memo.insert(w.to_vec(), f.clone());
        f
    }
}

fn brute_rajcode(a: &[u32]) -> Vec<u32> {
    (0..a.len())
        .map(|i| a[i] + a[i + 1..].iter().filter(|&&x| x > a[i]).count() as u32)
        .collect()
}

/// Counts snowy compositions by `|rajcode|` up to `d_max`, scanning every
/// composition with at most `d_max` parts and entries summing to at most
/// `d_max`; both bounds hold because `|rajcode(α)| ≥ max(|α|, len(α))`.
fn brute_snowy_counts(d_max: usize) -> Vec<u64> {
    fn go(cur: &mut Vec<u32>, budget: u32, d_max: usize, counts: &mut [u64]) {
        if cur.last().is_none_or(|&x| x > 0) {
            let mut pos: Vec<u32> = cur.iter().copied().filter(|&x| x > 0).collect();
            let k = pos.len();
            pos.sort_unstable();
            pos.dedup();
            if pos.len() == k {
                let s: u32 = brute_rajcode(cur).iter().sum();
                if (s as usize) <= d_max {
                    counts[s as usize] += 1;
                }
            }
        }
        if cur.len() == d_max {
            return;
        }
        for x in 0..=budget {
            cur.push(x);
            go(cur, budget - x, d_max, counts);
            cur.pop();
        }
    }
    let mut counts = vec![0; d_max + 1];
    go(&mut Vec::new(), d_max as u32, d_max, &mut counts);
    counts
}

/// Coefficients of `∏_{m>0} (1 + q^m/(1−q))` through `q^{d_max}`.
fn series_oracle(d_max: usize) -> Vec<u64> {
    let mut acc = vec![0u64; d_max + 1];
    acc[0] = 1;
    for m in 1..=d_max {
        // q^m/(1−q) = q^m + q^{m+1} + …
        let mut next = acc.clone();
        for (i, &a) in acc.iter().enumerate() {
            for slot in next.iter_mut().skip(i + m) {
                *slot += a;
            }
        }
        acc = next;
    }
    acc
}

fn random_poly(rng: &mut StdRng, nvars: usize) -> Polynomial {
    let terms = rng.gen_range(1..=5);
    Polynomial::from_int_terms((0..terms).map(|_| {
        let e: Vec<u32> = (0..nvars).map(|_| rng.gen_range(0..=3)).collect();
        (e, rng.gen_range(-4..=4))
    }))
}

struct Battery {
    failed: usize,
}

impl Battery {
    fn run(&mut self, name: &str, budget: Duration, f: impl FnOnce() -> Outcome) {
        let start = Instant::now();
        let out = f();
        let took = start.elapsed();
        let (pass, detail) = match out {
            Ok(d) if took <= budget => (true, d),
            Ok(d) => (false, format!("{d}; over budget {budget:?}")),
            Err(e) => (false, e),
        };
        if !pass {
            self.failed += 1;
        }
        println!("{} {name}: {detail} ({:.2?})", if pass { "PASS" } else { "FAIL" }, took);
    }
}

const FIVE_TERMS: [(&[u32], i64); 5] = [
    (&[2, 3, 1, 2], 1),
    (&[2, 3, 2, 1], 1),
    (&[3, 3, 1, 1], 1),
    (&[3, 2, 1, 2], 1),
    (&[3, 2, 2, 1], 1),
];

fn main() {
    let e = Engine::global();
    let mut b = Battery { failed: 0 };
    let sec = Duration::from_secs;

    // Worked examples.
    b.run("Schubert [2,1,4,3] and its 3 BPDs", sec(1), || {
        let s = lib(e.schubert(&p(&[2, 1, 4, 3])))?;
        let want = poly(&[(&[1, 0, 1], 1), (&[1, 1], 1), (&[2], 1)]);
        let bpds = lib(pipedream::enumerate_bpd(&p(&[2, 1, 4, 3]), 4))?;
        check(s == want && bpds.len() == 3, format!("{s}; {} BPDs", bpds.len()), || {
            format!("got {s} with {} BPDs", bpds.len())
        })
    });
    b.run("BPD([2,4,1,5,3]) rotates onto the LTBPDs of (0,3,0,2)", sec(1), || {
        let alpha = c(&[0, 3, 0, 2]);
        let w = lib(Permutation::standardize(&alpha, 3, 4))?;
        let square = lib(pipedream::enumerate_bpd(&p(&[2, 4, 1, 5, 3]), 5))?;
        let bpds = lib(pipedream::enumerate_bpd(&w, 7))?;
        let mut rotated: Vec<PipeGrid> = bpds
            .iter()
            .map(|d| pipedream::rotate_bpd(d, 3, 4))
            .collect::<schublas::Result<_>>()
            .map_err(|e| e.to_string())?;
        rotated.sort();
        let distinct: BTreeSet<&PipeGrid> = rotated.iter().collect();
        let lt = lib(pipedream::enumerate_ltbpd(&alpha))?;
        check(
            w == p(&[2, 4, 1, 5, 3]) && square.len() == 5 && distinct.len() == 5 && rotated == lt,
            format!("{} BPDs, {} LTBPDs", square.len(), lt.len()),
            || format!("{} BPDs, {} rotated, {} LTBPDs", square.len(), distinct.len(), lt.len()),
        )
    });
    b.run("top Lascoux (0,3,0,2) by recursion, LTBPDs and reversal", sec(1), || {
        let alpha = c(&[0, 3, 0, 2]);
        let want = poly(&FIVE_TERMS);
        let rec = lib(e.top_lascoux(&alpha))?;
        let bpd = lib(pipedream::ltbpd_polynomial(&alpha))?;
        let rev = lib(e.top_lascoux_via_reverse(&alpha, 3, 4))?;
        check(rec == want && bpd == want && rev == want, format!("{rec}"), || {
            format!("recursion {rec}; LTBPD {bpd}; reversal {rev}")
        })
    });
    b.run("standardization examples", sec(1), || {
        let a = lib(Permutation::standardize(&c(&[2, 4, 0, 6, 0, 0, 1]), 6, 7))?;
        let b = lib(Permutation::standardize(&c(&[0, 4, 2]), 4, 3))?;
        check(
            a == p(&[6, 7, 8, 1, 9, 3, 5, 2, 4]) && b == p(&[3, 1, 5, 2, 4]),
            format!("[{a}], [{b}]"),
            || format!("got [{a}], [{b}]"),
        )
    });
    b.run("r_{4,5} of top Lascoux (2,0,4,0,1) is Schubert [4,5,1,6,3,2]", sec(1), || {
        let lhs = lib(lib(e.top_lascoux(&c(&[2, 0, 4, 0, 1])))?.reverse_complement(4, 5))?;
        let mut oracle = TopDown::new(6);
        let rhs = oracle.get(&[4, 5, 1, 6, 3, 2]);
        check(lhs == rhs, format!("{} terms", lhs.len()), || format!("{lhs} vs {rhs}"))
    });
    b.run("structure constant example", sec(10), || {
        let sp = lib(e.schubert_product(&p(&[1, 4, 2, 3]), &p(&[2, 1, 4, 3])))?;
        let tp = lib(e.top_lascoux_product(&c(&[2, 3, 1, 4]), &c(&[2, 1, 4, 3])))?;
        let ws: [&[u32]; 5] = [&[2, 4, 3, 1], &[2, 5, 1, 3, 4], &[3, 4, 1, 2], &[4, 1, 3, 2], &[5, 1, 2, 3, 4]];
        let ds: [&[u32]; 5] = [&[8, 6, 5, 7], &[6, 8, 4, 7], &[7, 8, 5, 6], &[7, 6, 8, 5], &[6, 7, 8, 4]];
        let s_ok = sp.len() == 5 && ws.iter().all(|w| sp.coeff(&BasisIndex::Perm(p(w))) == one());
        let t_ok = tp.len() == 5 && ds.iter().all(|d| tp.coeff(&BasisIndex::Comp(c(d))) == one());
        // The products themselves, rebuilt from the expansions.
        let s_back = lib(sp.reconstruct(e))? == lib(e.schubert(&p(&[1, 4, 2, 3])))? * lib(e.schubert(&p(&[2, 1, 4, 3])))?;
        let t_back =
            lib(tp.reconstruct(e))? == lib(e.top_lascoux(&c(&[2, 3, 1, 4])))? * lib(e.top_lascoux(&c(&[2, 1, 4, 3])))?;
        let d = tp.coeff(&BasisIndex::Comp(c(&[8, 6, 5, 7])));
        let cc = sp.coeff(&BasisIndex::Perm(p(&[2, 4, 3, 1])));
        let std = lib(Permutation::standardize(&c(&[8, 6, 5, 7]), 8, 4))?;
        check(
            s_ok && t_ok && s_back && t_back && d == one() && cc == one() && std == p(&[2, 4, 3, 1]),
            format!("{sp}; {tp}"),
            || format!("{sp}; {tp}"),
        )
    });
    b.run("perfect tableau supports and the worked bijection", sec(1), || {
        let w = p(&[3, 1, 5, 2, 4]);
        let rothe = tableau::enumerate_perfect_tableaux(&Diagram::rothe(&w), None);
        let rothe_weights: BTreeSet<_> = rothe.iter().map(PerfectTableau::weight).collect();
        let swant: BTreeSet<_> = [c(&[3, 1]), c(&[2, 2]), c(&[2, 1, 1]), c(&[3, 0, 1]), c(&[2, 0, 2])].into();
        let alpha = c(&[0, 4, 2]);
        let snow = tableau::enumerate_perfect_tableaux(&lib(Diagram::snow(&alpha))?.unlabeled(), None);
        let snow_weights: BTreeSet<_> = snow.iter().map(PerfectTableau::weight).collect();
        let twant: BTreeSet<_> = [c(&[4, 3, 1]), c(&[4, 2, 2]), c(&[3, 3, 2]), c(&[3, 4, 1]), c(&[2, 4, 2])].into();
        let poly_supports = lib(e.schubert(&w))?.support().into_iter().collect::<BTreeSet<_>>() == swant
            && lib(e.top_lascoux(&alpha))?.support().into_iter().collect::<BTreeSet<_>>() == twant;
        let t3 = lib(PerfectTableau::new([((1, 1), 1), ((1, 2), 1), ((3, 2), 2), ((3, 4), 3)].into()))?;
        let img = lib(tableau::tableau_bijection(&t3, &alpha, 4, 3))?;
        let want = lib(PerfectTableau::new(
            [
                ((1, 2), 1),
                ((1, 4), 1),
                ((2, 1), 2),
                ((2, 2), 2),
                ((2, 3), 1),
                ((2, 4), 2),
                ((3, 1), 3),
                ((3, 2), 3),
            ]
            .into(),
        ))?;
        check(
            rothe.len() == 6
                && snow.len() == 6
                && rothe_weights == swant
                && snow_weights == twant
                && poly_supports
                && rothe.contains(&t3)
                && img == want
                && snow.contains(&img),
            format!("{} and {} tableaux", rothe.len(), snow.len()),
            || format!("{} and {} tableaux; image {}", rothe.len(), snow.len(), img.render()),
        )
    });

    // Exhaustive sweeps.
    let snowy = WeakComposition::snowy_in_box(3, 3);
    let s4 = Permutation::all(4);
    b.run("top Lascoux as reverse Schubert, (m,n) in [3..5]^2", sec(60), || {
        let mut cases = Vec::new();
        for a in &snowy {
            for m in 3..=5 {
                for n in 3..=5 {
                    cases.push((a.clone(), m, n));
                }
            }
        }
        all_of(&cases, |(a, m, n)| {
            let lhs = lib(lib(e.top_lascoux(a))?.reverse_complement(*m, *n))?;
            let w = lib(Permutation::standardize(a, *m, *n))?;
            let mut oracle = TopDown::new(*m as usize + *n);
            let rhs = oracle.get(&w.one_line_padded(*m as usize + *n));
            check(lhs == rhs, "", || format!("({a}) with m = {m}, n = {n}")).map(drop)
        })
    });
    b.run("reverse complement intertwines the operators on the 3x3 box", sec(10), || {
        let (m, n) = (3, 3);
        all_of(&WeakComposition::all_in_box(n, m), |a| {
            let f = Polynomial::monomial(a.clone());
            let rf = lib(f.reverse_complement(m, n))?;
            for i in 1..n {
                let j = n - i;
                let ok = lib(f.divided_difference(i).reverse_complement(m, n))? == rf.pi_hat(j)
                    && lib(f.demazure_pi(i).reverse_complement(m, n))? == rf.demazure_pi(j)
                    && lib(f.pi_hat(i).reverse_complement(m, n))? == rf.divided_difference(j);
                if !ok {
                    return Err(format!("i = {i} on x^({a})"));
                }
            }
            Ok(())
        })
    });
    b.run("BPD formulas on S_4 and the snowy sweep", sec(120), || {
        let mut oracle = TopDown::new(4);
        let a = all_of(&s4, |w| {
            let want = oracle_get(&mut oracle, w);
            check(lib(pipedream::bpd_polynomial(w))? == want && lib(e.schubert(w))? == want, "", || {
                format!("[{w}]")
            })
            .map(drop)
        })?;
        let b = all_of(&snowy, |a| {
            check(lib(pipedream::ltbpd_polynomial(a))? == lib(e.top_lascoux(a))?, "", || format!("({a})")).map(drop)
        })?;
        Ok(format!("S_4: {a}; snowy: {b}"))
    });
    b.run("perfect tableau supports and bijection on the sweeps", sec(120), || {
        let a = all_of(&s4, |w| {
            let s: BTreeSet<_> = lib(e.schubert(w))?.support().into_iter().collect();
            let t: BTreeSet<_> = tableau::schubert_support(w).into_iter().collect();
            check(s == t, "", || format!("[{w}]")).map(drop)
        })?;
        let b = all_of(&snowy, |a| {
            let s: BTreeSet<_> = lib(e.top_lascoux(a))?.support().into_iter().collect();
            let t: BTreeSet<_> = lib(tableau::top_lascoux_support(a))?.into_iter().collect();
            if s != t {
                return Err(format!("support of ({a})"));
            }
            let (n, m) = (a.len(), a.max_entry());
            let w = lib(Permutation::standardize(a, m, n))?;
            let source = tableau::enumerate_perfect_tableaux(&Diagram::rothe(&w), None);
            let target: BTreeSet<PerfectTableau> =
                tableau::enumerate_perfect_tableaux(&lib(Diagram::snow(a))?.unlabeled(), None).into_iter().collect();
            let mut images = BTreeSet::new();
            for t in &source {
                let img = lib(tableau::tableau_bijection(t, a, m, n))?;
                if img.weight() != lib(t.weight().reverse_complement(m, n))? || !target.contains(&img) {
                    return Err(format!("image of a tableau of ({a})"));
                }
                images.insert(img);
            }
            check(images.len() == source.len() && images == target, "", || format!("bijection for ({a})")).map(drop)
        })?;
        Ok(format!("S_4: {a}; snowy: {b}"))
    });
    b.run("structure constants agree on snowy pairs in the 2x2 box", sec(120), || {
        let base = WeakComposition::snowy_in_box(2, 2);
        let pairs: Vec<_> = base.iter().flat_map(|a| base.iter().map(move |g| (a.clone(), g.clone()))).collect();
        all_of(&pairs, |(a, g)| {
            let n = a.len().max(g.len());
            let (m1, m2) = (a.max_entry(), g.max_entry());
            let r = lib(e.verify_structure_theorem(a, g, m1, m2, n))?;
            let bounded = r.entries.iter().all(|x| x.d.is_zero() || x.delta.fits_box(m1 + m2, n));
            check(r.passed && bounded, "", || format!("({a}) * ({g})")).map(drop)
        })
    });
    b.run("SNP for Schubert and top Lascoux polynomials", sec(120), || {
        let a = all_of(&s4, |w| {
            let r = lib(snp::snp_check(&lib(e.schubert(w))?))?;
            check(r.saturated, "", || format!("[{w}] misses {:?}", r.witness)).map(drop)
        })?;
        let b = all_of(&snowy, |x| {
            let r = lib(snp::snp_check(&lib(e.top_lascoux(x))?))?;
            check(r.saturated, "", || format!("({x}) misses {:?}", r.witness)).map(drop)
        })?;
        Ok(format!("S_4: {a}; snowy: {b}"))
    });
    b.run("reverse complement of key polynomials on the 3x3 box", sec(30), || {
        all_of(&WeakComposition::all_in_box(3, 3), |a| {
            let lhs = lib(lib(e.key(a))?.reverse_complement(3, 3))?;
            let rhs = lib(e.key(&lib(a.reverse_complement(3, 3))?))?;
            check(lhs == rhs, "", || format!("({a})")).map(drop)
        })
    });

    // Hilbert series.
    b.run("Hilbert series counts snowy compositions by rajcode size", sec(10), || {
        let series = series_oracle(10);
        let counts = brute_snowy_counts(10);
        let lib_series = lib(schublas::expansion::hilbert_coefficients(10))?;
        let lib_counts: Vec<u64> =
            (0..=10).map(|d| schublas::expansion::enumerate_snowy_by_raj(d).len() as u64).collect();
        check(
            series == counts && lib_series == series && lib_counts == counts && series[..4] == [1, 1, 2, 4],
            format!("{series:?}"),
            || format!("series {series:?}, counts {counts:?}, library {lib_series:?} / {lib_counts:?}"),
        )
    });

    // Randomized operator identities.
    b.run("operator identities on 1000 random polynomials each", sec(30), || {
        let mut rng = StdRng::seed_from_u64(0x5eed);
        let n = 5;
        let mut cases = 0;
        type Op = fn(&Polynomial, usize) -> Polynomial;
        let ops: [(&str, Op); 3] = [
            ("d", Polynomial::divided_difference),
            ("pi", Polynomial::demazure_pi),
            ("pihat", Polynomial::pi_hat),
        ];
        for _ in 0..1000 {
            let f = random_poly(&mut rng, n);
            let i = rng.gen_range(1..n);
            let j = rng.gen_range(1..n);
            let k = rng.gen_range(1..n - 1);
            let d = f.divided_difference(i);
            if !d.divided_difference(i).is_zero() {
                return Err(format!("d_{i}^2 on {f}"));
            }
            // (x_i − x_{i+1}) ∂_i f = f − s_i f.
            if (Polynomial::var(i) - Polynomial::var(i + 1)) * d != &f - &f.swap_variables(i) {
                return Err(format!("d_{i} on {f}"));
            }
            let pi = f.demazure_pi(i);
            if pi.demazure_pi(i) != pi {
                return Err(format!("pi_{i}^2 on {f}"));
            }
            for (name, op) in ops {
                if op(&op(&op(&f, k), k + 1), k) != op(&op(&op(&f, k + 1), k), k + 1) {
                    return Err(format!("{name} braid at {k} on {f}"));
                }
                if i.abs_diff(j) >= 2 && op(&op(&f, i), j) != op(&op(&f, j), i) {
                    return Err(format!("{name} commutation {i},{j} on {f}"));
                }
            }
            let m = f.max_exponent() + rng.gen_range(0..2);
            let r = lib(f.reverse_complement(m, n))?;
            if lib(r.reverse_complement(m, n))? != f {
                return Err(format!("r_{{{m},{n}}} on {f}"));
            }
            cases += 1;
        }
        Ok(format!("{cases} cases"))
    });

    // CLI determinism.
    b.run("verify --suite all --max-n 4 is deterministic across thread counts", sec(300), || {
        let mut outputs = Vec::new();
        for threads in ["1", "2", "4", "4", "1"] {
            let out = Command::new(env!("CARGO_BIN_EXE_schublas"))
                .args(["verify", "--suite", "all", "--max-n", "4"])
                .env("SCHUBLAS_THREADS", threads)
                .output()
                .map_err(|e| e.to_string())?;
            if !out.status.success() {
                return Err(format!(
                    "exit {:?} with {threads} threads: {}",
                    out.status.code(),
                    String::from_utf8_lossy(&out.stdout)
                ));
            }
            outputs.push(out.stdout);
        }
        check(outputs.windows(2).all(|w| w[0] == w[1]), format!("{} runs, {} bytes each", outputs.len(), outputs[0].len()), || {
            "outputs differ".into()
        })
    });

    println!("{} criteria failed", b.failed);
    if b.failed > 0 {
        std::process::exit(1);
    }
}

fn oracle_get(o: &mut TopDown, w: &Permutation) -> Polynomial {
    o.get(&w.one_line_padded(o.n))
}
