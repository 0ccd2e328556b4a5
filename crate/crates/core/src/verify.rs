//! Desk-scale verification battery: worked examples and exhaustive theorem
//! sweeps, grouped into suites.
//!
//! Sweep sizes derive from `max_n`: permutations range over `S_{max_n}`,
//! single compositions over snowy `α` with `supp ⊆ [max_n−1]` and
//! `max ≤ max_n−1`, and pairs over `supp ⊆ [max_n−2]`, `max ≤ max_n−2`.
//! Sweeps run in parallel; results are collected in input order, so the
//! report does not depend on the thread count.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::Signed;
use rayon::prelude::*;

use crate::bases::Engine;
use crate::composition::WeakComposition;
use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::expansion::{enumerate_snowy_by_raj, hilbert_coefficients, BasisIndex};
use crate::permutation::Permutation;
use crate::pipedream::{self, PipeGrid};
use crate::poly::Polynomial;
use crate::snp;
use crate::tableau::{self, PerfectTableau};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Examples,
    Operators,
    Bpd,
    Support,
    Structure,
    Hilbert,
    All,
}

impl Suite {
    pub const EACH: [Suite; 6] = [
        Suite::Examples,
        Suite::Operators,
        Suite::Bpd,
        Suite::Support,
        Suite::Structure,
        Suite::Hilbert,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Examples => "examples",
            Suite::Operators => "operators",
            Suite::Bpd => "bpd",
            Suite::Support => "support",
            Suite::Structure => "structure",
            Suite::Hilbert => "hilbert",
            Suite::All => "all",
        }
    }
}

impl std::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub suite: Suite,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{mark} [{}] {}: {}", self.suite.name(), self.name, self.detail)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "passed": self.passed(),
            "checks": self.checks.iter().map(|c| serde_json::json!({
                "suite": c.suite.name(),
                "name": c.name,
                "passed": c.passed,
                "detail": c.detail,
            })).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        let failed = self.failures().count();
        write!(f, "{} checks, {} failed", self.checks.len(), failed)
    }
}

/// Runs one suite (or all of them, in a fixed order).
pub fn run(engine: &Engine, suite: Suite, max_n: usize) -> Result<Report> {
    if max_n < 2 {
        return Err(Error::InvalidInput(format!("max_n must be at least 2, got {max_n}")));
    }
    let mut v = Verifier {
        engine,
        max_n,
        report: Report::default(),
        suite,
    };
    let suites: Vec<Suite> = if suite == Suite::All {
        Suite::EACH.to_vec()
    } else {
        vec![suite]
    };
    for s in suites {
        v.suite = s;
        match s {
            Suite::Examples => v.examples()?,
            Suite::Operators => v.operators()?,
            Suite::Bpd => v.bpd()?,
            Suite::Support => v.support()?,
            Suite::Structure => v.structure()?,
            Suite::Hilbert => v.hilbert()?,
            Suite::All => unreachable!("expanded above"),
        }
    }
    Ok(v.report)
}

type Outcome = std::result::Result<(), String>;

struct Verifier<'a> {
    engine: &'a Engine,
    max_n: usize,
    suite: Suite,
    report: Report,
}

fn p(v: &[u32]) -> Permutation {
    Permutation::from_one_line(v.to_vec()).expect("literal permutation")
}

fn c(v: &[u32]) -> WeakComposition {
    WeakComposition::from(v)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

impl Verifier<'_> {
    /// Records one check. Resource limits abort the run; any other error is
    /// a failure of that check.
    fn record(&mut self, name: &str, f: impl FnOnce() -> Result<(String, Outcome)>) -> Result<()> {
        let (passed, detail) = match f() {
            Ok((detail, Ok(()))) => (true, detail),
            Ok((detail, Err(why))) => (false, format!("{detail}; {why}")),
            Err(e) if e.is_resource_limit() => return Err(e),
            Err(e) => (false, e.to_string()),
        };
        self.report.checks.push(Check {
            suite: self.suite,
            name: name.to_string(),
            passed,
            detail,
        });
        Ok(())
    }

    /// Runs `f` on every item; the detail names the case count and the first
    /// failures in input order.
    fn sweep<T: Sync>(
        &mut self,
        name: &str,
        items: &[T],
        f: impl Fn(&T) -> Result<Outcome> + Sync,
    ) -> Result<()> {
        self.record(name, || {
            let results: Vec<Result<Outcome>> = items.par_iter().map(&f).collect();
            let mut failures = Vec::new();
            for r in results {
                match r {
                    Ok(Ok(())) => {}
                    Ok(Err(why)) => failures.push(why),
                    Err(e) if e.is_resource_limit() => return Err(e),
                    Err(e) => failures.push(e.to_string()),
                }
            }
            let detail = format!("{} cases", items.len());
            if failures.is_empty() {
                Ok((detail, Ok(())))
            } else {
                let shown: Vec<&str> = failures.iter().take(3).map(String::as_str).collect();
                Ok((detail, Err(format!("{} failed: {}", failures.len(), shown.join("; ")))))
            }
        })
    }

    fn perms(&self) -> Vec<Permutation> {
        Permutation::all(self.max_n)
    }

    fn snowy(&self) -> Vec<WeakComposition> {
        WeakComposition::snowy_in_box(self.max_n - 1, self.max_n as u32 - 1)
    }

    fn snowy_pairs(&self) -> Vec<(WeakComposition, WeakComposition)> {
        let k = self.max_n - 2;
        let base = WeakComposition::snowy_in_box(k, k as u32);
        base.iter()
            .flat_map(|a| base.iter().map(move |b| (a.clone(), b.clone())))
            .collect()
    }

    fn examples(&mut self) -> Result<()> {
        let e = self.engine;
        self.record("schubert [2,1,4,3]", || {
            let s = e.schubert(&p(&[2, 1, 4, 3]))?;
            let want = Polynomial::from_int_terms([(vec![1, 0, 1], 1), (vec![1, 1], 1), (vec![2], 1)]);
            let n = pipedream::enumerate_bpd(&p(&[2, 1, 4, 3]), 4)?.len();
            Ok((
                format!("{s}; {n} BPDs"),
                ensure(s == want && n == 3, || "expected x1*x3 + x1*x2 + x1^2 and 3 BPDs".into()),
            ))
        })?;
        self.record("rotate BPD([2,4,1,5,3]) onto LTBPD(0,3,0,2)", || {
            let alpha = c(&[0, 3, 0, 2]);
            let w = Permutation::standardize(&alpha, 3, 4)?;
            let bpds = pipedream::enumerate_bpd(&w, 7)?;
            let mut rotated = bpds
                .iter()
                .map(|d| pipedream::rotate_bpd(d, 3, 4))
                .collect::<Result<Vec<PipeGrid>>>()?;
            rotated.sort();
            let lt = pipedream::enumerate_ltbpd(&alpha)?;
            Ok((
                format!("std = [{w}], {} BPDs, {} LTBPDs", bpds.len(), lt.len()),
                ensure(w == p(&[2, 4, 1, 5, 3]) && bpds.len() == 5 && rotated == lt, || {
                    "rotation does not match".into()
                }),
            ))
        })?;
        self.record("top Lascoux (0,3,0,2) by three routes", || {
            let alpha = c(&[0, 3, 0, 2]);
            let want = Polynomial::from_int_terms([
                (vec![2, 3, 1, 2], 1),
                (vec![2, 3, 2, 1], 1),
                (vec![3, 3, 1, 1], 1),
                (vec![3, 2, 1, 2], 1),
                (vec![3, 2, 2, 1], 1),
            ]);
            let rec = e.top_lascoux(&alpha)?;
            let bpd = pipedream::ltbpd_polynomial(&alpha)?;
            let rev = e.top_lascoux_via_reverse(&alpha, 3, 4)?;
            Ok((
                format!("{rec}"),
                ensure(rec == want && bpd == want && rev == want, || "routes disagree".into()),
            ))
        })?;
        self.record("standardization", || {
            let a = Permutation::standardize(&c(&[2, 4, 0, 6, 0, 0, 1]), 6, 7)?;
            let b = Permutation::standardize(&c(&[0, 4, 2]), 4, 3)?;
            Ok((
                format!("[{a}], [{b}]"),
                ensure(a == p(&[6, 7, 8, 1, 9, 3, 5, 2, 4]) && b == p(&[3, 1, 5, 2, 4]), || {
                    "unexpected standardization".into()
                }),
            ))
        })?;
        self.record("r_{4,5} of top Lascoux (2,0,4,0,1)", || {
            let lhs = e.top_lascoux(&c(&[2, 0, 4, 0, 1]))?.reverse_complement(4, 5)?;
            let rhs = e.schubert(&p(&[4, 5, 1, 6, 3, 2]))?;
            Ok((
                format!("{} terms", lhs.len()),
                ensure(lhs == rhs, || "differs from Schubert [4,5,1,6,3,2]".into()),
            ))
        })?;
        self.record("structure constant example", || {
            let sp = e.schubert_product(&p(&[1, 4, 2, 3]), &p(&[2, 1, 4, 3]))?;
            let tp = e.top_lascoux_product(&c(&[2, 3, 1, 4]), &c(&[2, 1, 4, 3]))?;
            let ws = [[2, 4, 3, 1, 0], [2, 5, 1, 3, 4], [3, 4, 1, 2, 0], [4, 1, 3, 2, 0], [5, 1, 2, 3, 4]];
            let ds = [[8, 6, 5, 7], [6, 8, 4, 7], [7, 8, 5, 6], [7, 6, 8, 5], [6, 7, 8, 4]];
            let one = crate::poly::Coeff::from_integer(1.into());
            let s_ok = sp.len() == 5
                && ws.iter().all(|w| {
                    let v: Vec<u32> = w.iter().copied().filter(|&x| x > 0).collect();
                    sp.coeff(&BasisIndex::Perm(p(&v))) == one
                });
            let t_ok = tp.len() == 5 && ds.iter().all(|d| tp.coeff(&BasisIndex::Comp(c(d))) == one);
            let report = e.verify_structure_theorem(&c(&[2, 3, 1, 4]), &c(&[2, 1, 4, 3]), 4, 4, 4)?;
            let entry = report.entries.iter().find(|x| x.delta == c(&[8, 6, 5, 7]));
            let d_ok = entry.is_some_and(|x| x.w == p(&[2, 4, 3, 1]) && x.d == one && x.c == one);
            Ok((
                format!("{sp}; {tp}"),
                ensure(s_ok && t_ok && d_ok && report.passed, || "expansion mismatch".into()),
            ))
        })?;
        self.record("perfect tableau supports", || {
            let w = p(&[3, 1, 5, 2, 4]);
            let rd = Diagram::rothe(&w);
            let rothe_tabs = tableau::enumerate_perfect_tableaux(&rd, None);
            let ssupp: BTreeSet<_> = tableau::schubert_support(&w).into_iter().collect();
            let swant: BTreeSet<_> =
                [c(&[3, 1]), c(&[2, 2]), c(&[2, 1, 1]), c(&[3, 0, 1]), c(&[2, 0, 2])].into();
            let alpha = c(&[0, 4, 2]);
            let snow = Diagram::snow(&alpha)?.unlabeled();
            let snow_tabs = tableau::enumerate_perfect_tableaux(&snow, None);
            let tsupp: BTreeSet<_> = tableau::top_lascoux_support(&alpha)?.into_iter().collect();
            let twant: BTreeSet<_> =
                [c(&[4, 3, 1]), c(&[4, 2, 2]), c(&[3, 3, 2]), c(&[3, 4, 1]), c(&[2, 4, 2])].into();
            let t3 = PerfectTableau::new([((1, 1), 1), ((1, 2), 1), ((3, 2), 2), ((3, 4), 3)].into())?;
            let img = tableau::tableau_bijection(&t3, &alpha, 4, 3)?;
            let want = PerfectTableau::new(
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
            )?;
            Ok((
                format!("{} and {} tableaux", rothe_tabs.len(), snow_tabs.len()),
                ensure(
                    rothe_tabs.len() == 6
                        && snow_tabs.len() == 6
                        && ssupp == swant
                        && tsupp == twant
                        && img == want,
                    || "support or bijection mismatch".into(),
                ),
            ))
        })
    }

    fn operators(&mut self) -> Result<()> {
        let n = self.max_n;
        let m = n as u32 - 1;
        let monomials: Vec<Polynomial> = WeakComposition::all_in_box(n, m)
            .into_iter()
            .map(Polynomial::monomial)
            .collect();
        self.sweep("nilpotence and idempotence", &monomials, |f| {
            for i in 1..n {
                let d = f.divided_difference(i);
                let pi = f.demazure_pi(i);
                let ph = f.pi_hat(i);
                if !d.divided_difference(i).is_zero()
                    || pi.demazure_pi(i) != pi
                    || !ph.pi_hat(i).is_zero()
                {
                    return Ok(Err(format!("i = {i} on {f}")));
                }
            }
            Ok(Ok(()))
        })?;
        type Op = fn(&Polynomial, usize) -> Polynomial;
        let ops: [(&str, Op); 3] = [
            ("d", Polynomial::divided_difference),
            ("pi", Polynomial::demazure_pi),
            ("pihat", Polynomial::pi_hat),
        ];
        self.sweep("braid and commutation relations", &monomials, |f| {
            for (name, op) in ops {
                for i in 1..n {
                    if i + 1 < n {
                        let l = op(&op(&op(f, i), i + 1), i);
                        let r = op(&op(&op(f, i + 1), i), i + 1);
                        if l != r {
                            return Ok(Err(format!("{name} braid at {i} on {f}")));
                        }
                    }
                    for j in i + 2..n {
                        if op(&op(f, i), j) != op(&op(f, j), i) {
                            return Ok(Err(format!("{name} commutation {i},{j} on {f}")));
                        }
                    }
                }
            }
            Ok(Ok(()))
        })?;
        let mut boxes = Vec::new();
        for bm in m..=m + 1 {
            for bn in (n - 1)..=n {
                for e in WeakComposition::all_in_box(bn, bm) {
                    boxes.push((bm, bn, e));
                }
            }
        }
        self.sweep("reverse complement commutes with operators", &boxes, |(bm, bn, e)| {
            let (bm, bn) = (*bm, *bn);
            let f = Polynomial::monomial(e.clone());
            let rf = f.reverse_complement(bm, bn)?;
            if rf.reverse_complement(bm, bn)? != f {
                return Ok(Err(format!("r_{{{bm},{bn}}} not an involution on ({e})")));
            }
            for i in 1..bn {
                let j = bn - i;
                let checks = [
                    (f.divided_difference(i).reverse_complement(bm, bn)?, rf.pi_hat(j)),
                    (f.demazure_pi(i).reverse_complement(bm, bn)?, rf.demazure_pi(j)),
                    (f.pi_hat(i).reverse_complement(bm, bn)?, rf.divided_difference(j)),
                ];
                if checks.iter().any(|(a, b)| a != b) {
                    return Ok(Err(format!("i = {i}, box {bm}x{bn}, ({e})")));
                }
            }
            Ok(Ok(()))
        })?;
        let e = self.engine;
        let keys: Vec<WeakComposition> = WeakComposition::all_in_box(n - 1, m);
        self.sweep("reverse complement of key polynomials", &keys, |alpha| {
            let (bm, bn) = (m, n - 1);
            let lhs = e.key(alpha)?.reverse_complement(bm, bn)?;
            let rhs = e.key(&alpha.reverse_complement(bm, bn)?)?;
            Ok(ensure(lhs == rhs, || format!("({alpha})")))
        })
    }

    fn bpd(&mut self) -> Result<()> {
        let e = self.engine;
        let perms = self.perms();
        let snowy = self.snowy();
        self.sweep("BPD formula for Schubert polynomials", &perms, |w| {
            Ok(ensure(pipedream::bpd_polynomial(w)? == e.schubert(w)?, || format!("[{w}]")))
        })?;
        self.sweep("identity has a single BPD", &(1..=self.max_n).collect::<Vec<_>>(), |&n| {
            let g = pipedream::enumerate_bpd(&Permutation::identity(), n)?;
            Ok(ensure(g.len() == 1, || format!("S_{n}: {}", g.len())))
        })?;
        self.sweep("LTBPD formula for top Lascoux polynomials", &snowy, |a| {
            Ok(ensure(pipedream::ltbpd_polynomial(a)? == e.top_lascoux(a)?, || format!("({a})")))
        })?;
        self.sweep("rotation bijection onto LTBPDs", &snowy, |a| {
            let (n, m) = (a.len(), a.max_entry() as usize);
            let w = Permutation::standardize(a, m as u32, n)?;
            let mut rotated = Vec::new();
            for d in pipedream::enumerate_bpd(&w, m + n)? {
                let r = pipedream::rotate_bpd(&d, m, n)?;
                let nb = r.nonblank_weight().padded(n);
                let bl = d.blank_weight().padded(m + n);
                if (0..n).any(|i| nb[i] as usize + bl[n - 1 - i] as usize != m) {
                    return Ok(Err(format!("weight transfer fails for ({a})")));
                }
                rotated.push(r);
            }
            rotated.sort();
            let lt = pipedream::enumerate_ltbpd(a)?;
            Ok(ensure(rotated == lt, || format!("({a}): {} vs {}", rotated.len(), lt.len())))
        })
    }

    fn support(&mut self) -> Result<()> {
        let e = self.engine;
        let perms = self.perms();
        let snowy = self.snowy();
        self.sweep("Schubert support from perfect tableaux", &perms, |w| {
            let mut s = e.schubert(w)?.support();
            s.sort();
            let mut t = tableau::schubert_support(w);
            t.sort();
            Ok(ensure(s == t, || format!("[{w}]")))
        })?;
        self.sweep("top Lascoux support from perfect tableaux", &snowy, |a| {
            let mut s = e.top_lascoux(a)?.support();
            s.sort();
            let mut t = tableau::top_lascoux_support(a)?;
            t.sort();
            Ok(ensure(s == t, || format!("({a})")))
        })?;
        self.sweep("tableau bijection", &snowy, |a| {
            let (n, m) = (a.len(), a.max_entry());
            for (bm, bn) in [(m, n), (m + 1, n + 1)] {
                let w = Permutation::standardize(a, bm, bn)?;
                let source = tableau::enumerate_perfect_tableaux(&Diagram::rothe(&w), None);
                let target = tableau::enumerate_perfect_tableaux(&Diagram::snow(a)?.unlabeled(), None);
                let mut images = Vec::with_capacity(source.len());
                for t in &source {
                    let img = tableau::tableau_bijection(t, a, bm, bn)?;
                    if img.weight() != t.weight().reverse_complement(bm, bn)? {
                        return Ok(Err(format!("weight not transported for ({a})")));
                    }
                    images.push(img);
                }
                images.sort();
                images.dedup();
                if images != target {
                    return Ok(Err(format!("({a}) in {bn}x{bm}: not a bijection")));
                }
            }
            Ok(Ok(()))
        })?;
        let limit = e.limits().box_limit;
        self.sweep("SNP for Schubert polynomials", &perms, |w| {
            let r = snp::snp_check_limited(&e.schubert(w)?, limit)?;
            Ok(ensure(r.saturated, || format!("[{w}] misses {:?}", r.witness)))
        })?;
        self.sweep("SNP for top Lascoux polynomials", &snowy, |a| {
            let r = snp::snp_check_limited(&e.top_lascoux(a)?, limit)?;
            Ok(ensure(r.saturated, || format!("({a}) misses {:?}", r.witness)))
        })
    }

    fn structure(&mut self) -> Result<()> {
        let e = self.engine;
        let n0 = self.max_n;
        let mut cases = Vec::new();
        for a in self.snowy() {
            for m in (n0 as u32 - 1)..=(n0 as u32 + 1) {
                for n in (n0 - 1)..=(n0 + 1) {
                    cases.push((a.clone(), m, n));
                }
            }
        }
        self.sweep("top Lascoux as reverse Schubert", &cases, |(a, m, n)| {
            let lhs = e.top_lascoux(a)?.reverse_complement(*m, *n)?;
            let rhs = e.schubert(&Permutation::standardize(a, *m, *n)?)?;
            Ok(ensure(lhs == rhs, || format!("({a}) with m = {m}, n = {n}")))
        })?;
        let perms = self.perms();
        let n = self.max_n;
        self.sweep("Schubert as reverse top Lascoux", &perms, |w| {
            Ok(ensure(e.schubert_via_top_lascoux(w, n)? == e.schubert(w)?, || format!("[{w}]")))
        })?;
        let pairs = self.snowy_pairs();
        self.sweep("structure constants agree", &pairs, |(a, g)| {
            let n = a.len().max(g.len());
            let r = e.verify_structure_theorem(a, g, a.max_entry(), g.max_entry(), n)?;
            let positive = r.entries.iter().all(|x| x.d.is_integer() && !x.d.is_negative());
            Ok(ensure(r.passed && positive, || format!("({a}) * ({g})")))
        })?;
        let snowy = self.snowy();
        self.sweep("key expansion of top Lascoux polynomials", &snowy, |a| {
            let k = e.key_expand_top_lascoux(a, a.max_entry(), a.len())?;
            let back = k.expansion.reconstruct(e)? == e.top_lascoux(a)?;
            Ok(ensure(k.reverse_key_holds && back && k.expansion.is_nonnegative_integral(), || {
                format!("({a})")
            }))
        })
    }

    fn hilbert(&mut self) -> Result<()> {
        let d_max = 2 * self.max_n + 2;
        self.record("Hilbert series of the top Lascoux span", || {
            let h = hilbert_coefficients(d_max)?;
            let counts: Vec<u64> = (0..=d_max as u32)
                .map(|d| enumerate_snowy_by_raj(d).len() as u64)
                .collect();
            let shown: Vec<String> = h.iter().map(u64::to_string).collect();
            Ok((
                format!("q^0..q^{d_max}: {}", shown.join(", ")),
                ensure(h == counts, || format!("snowy counts {counts:?}")),
            ))
        })
    }
}
