//! Expansions into the Schubert, key and top Lascoux bases, and the
//! structure constants they produce.
//!
//! Expansion is greedy: the tail-lex largest exponent of the residual is the
//! leading exponent of exactly one basis element, which is subtracted with
//! the matching coefficient. The largest exponent strictly drops every step.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::bases::Engine;
use crate::composition::WeakComposition;
use crate::error::{Error, Result};
use crate::permutation::Permutation;
use crate::poly::{format_coeff, parse_coeff, Coeff, Polynomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BasisKind {
    Schubert,
    Key,
    #[serde(rename = "toplascoux")]
    TopLascoux,
}

impl BasisKind {
    pub fn name(self) -> &'static str {
        match self {
            BasisKind::Schubert => "schubert",
            BasisKind::Key => "key",
            BasisKind::TopLascoux => "toplascoux",
        }
    }
}

impl std::str::FromStr for BasisKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "schubert" => Ok(BasisKind::Schubert),
            "key" => Ok(BasisKind::Key),
            "toplascoux" => Ok(BasisKind::TopLascoux),
            _ => Err(Error::Parse(format!("unknown basis {s:?}"))),
        }
    }
}

/// A basis element's index. Permutations order by their code, so both
/// variants follow the tail-lex order of the leading exponent.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisIndex {
    Perm(Permutation),
    Comp(WeakComposition),
}

impl BasisIndex {
    fn entries(&self) -> Vec<u32> {
        match self {
            BasisIndex::Perm(w) => w.one_line().to_vec(),
            BasisIndex::Comp(a) => a.entries().to_vec(),
        }
    }

    pub fn as_perm(&self) -> Option<&Permutation> {
        match self {
            BasisIndex::Perm(w) => Some(w),
            BasisIndex::Comp(_) => None,
        }
    }

    pub fn as_comp(&self) -> Option<&WeakComposition> {
        match self {
            BasisIndex::Comp(a) => Some(a),
            BasisIndex::Perm(_) => None,
        }
    }
}

impl fmt::Display for BasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisIndex::Perm(w) => write!(f, "[{w}]"),
            BasisIndex::Comp(a) => write!(f, "({a})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisExpansion {
    kind: BasisKind,
    terms: BTreeMap<BasisIndex, Coeff>,
}

impl BasisExpansion {
    pub fn new(kind: BasisKind) -> Self {
        BasisExpansion {
            kind,
            terms: BTreeMap::new(),
        }
    }

    pub fn kind(&self) -> BasisKind {
        self.kind
    }

    /// Terms in tail-lex descending order of index.
    pub fn terms(&self) -> impl Iterator<Item = (&BasisIndex, &Coeff)> {
        self.terms.iter().rev()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, index: &BasisIndex) -> Coeff {
        self.terms.get(index).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn add_term(&mut self, index: BasisIndex, c: Coeff) {
        let matches = matches!(
            (&index, self.kind),
            (BasisIndex::Perm(_), BasisKind::Schubert) | (BasisIndex::Comp(_), BasisKind::Key | BasisKind::TopLascoux)
        );
        assert!(matches, "index {index} does not belong to the {} basis", self.kind.name());
        match self.terms.entry(index) {
            std::collections::btree_map::Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_nonnegative_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer() && !c.is_negative())
    }

    /// `Σ coeff · basis(index)`.
    pub fn reconstruct(&self, engine: &Engine) -> Result<Polynomial> {
        let mut acc = Polynomial::zero();
        for (idx, c) in &self.terms {
            acc = acc + basis_element(engine, self.kind, idx)?.scale(c);
            acc.ensure_within(engine.limits().term_limit)?;
        }
        Ok(acc)
    }

    pub fn to_json(&self) -> String {
        let repr = ExpansionRepr {
            basis: self.kind,
            terms: self
                .terms()
                .map(|(i, c)| TermRepr {
                    index: i.entries(),
                    coeff: format_coeff(c),
                })
                .collect(),
        };
        serde_json::to_string(&repr).expect("expansion serialization is infallible")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let repr: ExpansionRepr =
            serde_json::from_str(s).map_err(|e| Error::Parse(format!("expansion JSON: {e}")))?;
        let mut out = BasisExpansion::new(repr.basis);
        for t in repr.terms {
            let index = match repr.basis {
                BasisKind::Schubert => BasisIndex::Perm(Permutation::from_one_line(t.index)?),
                BasisKind::TopLascoux => {
                    let a = WeakComposition::new(t.index);
                    if !a.is_snowy() {
                        return Err(Error::Parse(format!("index ({a}) is not snowy")));
                    }
                    BasisIndex::Comp(a)
                }
                BasisKind::Key => BasisIndex::Comp(WeakComposition::new(t.index)),
            };
            let c = parse_coeff(&t.coeff)?;
            if c.is_zero() {
                return Err(Error::Parse(format!("zero coefficient for {index}")));
            }
            if out.terms.insert(index.clone(), c).is_some() {
                return Err(Error::Parse(format!("index {index} listed twice")));
            }
        }
        Ok(out)
    }
}

impl fmt::Display for BasisExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sym = match self.kind {
            BasisKind::Schubert => "S",
            BasisKind::Key => "K",
            BasisKind::TopLascoux => "L",
        };
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (idx, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if !mag.is_one() {
                write!(f, "{}*", format_coeff(&mag))?;
            }
            write!(f, "{sym}{idx}")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ExpansionRepr {
    basis: BasisKind,
    terms: Vec<TermRepr>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermRepr {
    index: Vec<u32>,
    coeff: String,
}

pub fn basis_element(engine: &Engine, kind: BasisKind, index: &BasisIndex) -> Result<Polynomial> {
    match (kind, index) {
        (BasisKind::Schubert, BasisIndex::Perm(w)) => engine.schubert(w),
        (BasisKind::Key, BasisIndex::Comp(a)) => engine.key(a),
        (BasisKind::TopLascoux, BasisIndex::Comp(a)) => engine.top_lascoux(a),
        _ => Err(Error::InvalidInput(format!(
            "index {index} does not belong to the {} basis",
            kind.name()
        ))),
    }
}

impl Engine {
    /// Greedy leading-term expansion of `f` in the chosen basis.
    pub fn expand_in_basis(&self, f: &Polynomial, kind: BasisKind) -> Result<BasisExpansion> {
        let step_limit = self.limits().step_limit;
        let mut out = BasisExpansion::new(kind);
        let mut residual = f.clone();
        let mut steps = 0usize;
        while !residual.is_zero() {
            steps += 1;
            if steps > step_limit {
                return Err(Error::resource(
                    "step_limit",
                    step_limit,
                    format!("expansion needs more than {step_limit} steps"),
                ));
            }
            let (lead, c) = residual.leading_term()?;
            let index = match kind {
                BasisKind::Schubert => BasisIndex::Perm(Permutation::from_code(&lead)),
                BasisKind::TopLascoux => BasisIndex::Comp(
                    WeakComposition::rajcode_inverse(&lead)
                        .map_err(|e| Error::NotInSpan(format!("x^({lead}) is not a rajcode: {e}")))?,
                ),
                BasisKind::Key => BasisIndex::Comp(lead.clone()),
            };
            let b = basis_element(self, kind, &index)?;
            if b.leading_term()? != (lead.clone(), Coeff::one()) {
                if kind == BasisKind::Key {
                    return self.key_expand_by_solving(f);
                }
                return Err(Error::NotInSpan(format!(
                    "{index} does not lead with x^({lead})"
                )));
            }
            residual = &residual - &b.scale(&c);
            residual.ensure_within(self.limits().term_limit)?;
            if let Ok(next) = residual.leading_exponent() {
                if next >= lead {
                    return Err(Error::NotInSpan(format!(
                        "leading exponent did not drop below ({lead})"
                    )));
                }
            }
            out.add_term(index, c);
        }
        Ok(out)
    }

    /// Exact linear solve of `f = Σ c_β κ_β` over all `β` with `|β|` among
    /// the degrees of `f` and `len(β)` at most the number of variables.
    pub fn key_expand_by_solving(&self, f: &Polynomial) -> Result<BasisExpansion> {
        let n = f.num_vars();
        let degrees: BTreeSet<u64> = f.terms().map(|(e, _)| e.size()).collect();
        let mut candidates = Vec::new();
        for &d in &degrees {
            compositions_of(d as u32, n, &mut Vec::new(), &mut candidates);
        }
        let mut columns = Vec::with_capacity(candidates.len());
        for beta in &candidates {
            columns.push(self.key(beta)?);
        }
        let solution = solve_exact(&columns, f)
            .ok_or_else(|| Error::NotInSpan("polynomial is not a combination of keys".into()))?;
        let mut out = BasisExpansion::new(BasisKind::Key);
        for (beta, c) in candidates.into_iter().zip(solution) {
            if !c.is_zero() {
                out.add_term(BasisIndex::Comp(beta), c);
            }
        }
        Ok(out)
    }

    /// `𝔖_u 𝔖_v = Σ c^w_{u,v} 𝔖_w`.
    pub fn schubert_product(&self, u: &Permutation, v: &Permutation) -> Result<BasisExpansion> {
        let f = self.schubert(u)?.checked_mul(&self.schubert(v)?, self.limits().term_limit)?;
        let e = self.expand_in_basis(&f, BasisKind::Schubert)?;
        assert!(e.is_nonnegative_integral(), "negative Schubert structure constant for [{u}]*[{v}]");
        Ok(e)
    }

    /// `𝔏̂_α 𝔏̂_γ = Σ d^δ_{α,γ} 𝔏̂_δ`.
    pub fn top_lascoux_product(&self, alpha: &WeakComposition, gamma: &WeakComposition) -> Result<BasisExpansion> {
        alpha.require_snowy()?;
        gamma.require_snowy()?;
        let f = self
            .top_lascoux(alpha)?
            .checked_mul(&self.top_lascoux(gamma)?, self.limits().term_limit)?;
        let e = self.expand_in_basis(&f, BasisKind::TopLascoux)?;
        let n = alpha.len().max(gamma.len());
        let m = alpha.max_entry() + gamma.max_entry();
        for (idx, _) in e.terms() {
            let delta = idx.as_comp().expect("top Lascoux indices are compositions");
            assert!(
                delta.fits_box(m, n),
                "({delta}) escapes supp ⊆ [{n}], max ≤ {m} in ({alpha})*({gamma})"
            );
        }
        Ok(e)
    }

    /// Compares `d^δ_{α,γ}` with `c^{std_{m1+m2,n}(δ)}_{u,v}` for
    /// `u = std_{m1,n}(α)`, `v = std_{m2,n}(γ)`.
    pub fn verify_structure_theorem(
        &self,
        alpha: &WeakComposition,
        gamma: &WeakComposition,
        m1: u32,
        m2: u32,
        n: usize,
    ) -> Result<StructureReport> {
        for (name, a, m) in [("alpha", alpha, m1), ("gamma", gamma, m2)] {
            if !a.fits_box(m, n) {
                return Err(Error::OutOfRange(format!(
                    "{name} = ({a}) does not satisfy supp ⊆ [{n}], max ≤ {m}"
                )));
            }
        }
        let u = Permutation::standardize(alpha, m1, n)?;
        let v = Permutation::standardize(gamma, m2, n)?;
        let d = self.top_lascoux_product(alpha, gamma)?;
        let c = self.schubert_product(&u, &v)?;
        let m = m1 + m2;

        let mut deltas: BTreeSet<WeakComposition> = d.terms().filter_map(|(i, _)| i.as_comp().cloned()).collect();
        for (idx, _) in c.terms() {
            let w = idx.as_perm().expect("Schubert indices are permutations");
            if let Some(delta) = w.destandardize(m, n) {
                deltas.insert(delta);
            }
        }
        let mut entries = Vec::new();
        for delta in deltas.into_iter().rev() {
            let w = Permutation::standardize(&delta, m, n)?;
            let dv = d.coeff(&BasisIndex::Comp(delta.clone()));
            let cv = c.coeff(&BasisIndex::Perm(w.clone()));
            entries.push(StructureEntry {
                equal: dv == cv,
                delta,
                w,
                d: dv,
                c: cv,
            });
        }
        Ok(StructureReport {
            u,
            v,
            passed: entries.iter().all(|e| e.equal),
            entries,
        })
    }

    /// Key expansion of `𝔏̂_α`, checked against the key expansion of
    /// `𝔖_{std_{m,n}(α)}` transported by `r_{m,n}`.
    pub fn key_expand_top_lascoux(&self, alpha: &WeakComposition, m: u32, n: usize) -> Result<KeyExpansion> {
        alpha.require_snowy()?;
        if !alpha.fits_box(m, n) {
            return Err(Error::OutOfRange(format!(
                "({alpha}) does not satisfy supp ⊆ [{n}], max ≤ {m}"
            )));
        }
        let top = self.expand_in_basis(&self.top_lascoux(alpha)?, BasisKind::Key)?;
        assert!(top.is_nonnegative_integral(), "negative key coefficient in top Lascoux ({alpha})");
        let w = Permutation::standardize(alpha, m, n)?;
        let schubert = self.expand_in_basis(&self.schubert(&w)?, BasisKind::Key)?;
        let mut transported = BasisExpansion::new(BasisKind::Key);
        let mut matches = true;
        for (idx, c) in schubert.terms() {
            let gamma = idx.as_comp().expect("key indices are compositions");
            match gamma.reverse_complement(m, n) {
                Ok(r) => transported.add_term(BasisIndex::Comp(r), c.clone()),
                Err(_) => matches = false,
            }
        }
        matches &= transported == top;
        Ok(KeyExpansion {
            expansion: top,
            schubert,
            reverse_key_holds: matches,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureEntry {
    pub delta: WeakComposition,
    pub w: Permutation,
    pub d: Coeff,
    pub c: Coeff,
    pub equal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureReport {
    pub u: Permutation,
    pub v: Permutation,
    pub entries: Vec<StructureEntry>,
    pub passed: bool,
}

impl StructureReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "u": self.u.one_line(),
            "v": self.v.one_line(),
            "passed": self.passed,
            "entries": self.entries.iter().map(|e| serde_json::json!({
                "delta": e.delta.entries(),
                "w": e.w.one_line(),
                "d": format_coeff(&e.d),
                "c": format_coeff(&e.c),
                "equal": e.equal,
            })).collect::<Vec<_>>(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeyExpansion {
    /// `𝔏̂_α` in the key basis.
    pub expansion: BasisExpansion,
    /// `𝔖_{std_{m,n}(α)}` in the key basis.
    pub schubert: BasisExpansion,
    /// Whether `r_{m,n}` carries the second expansion onto the first.
    pub reverse_key_holds: bool,
}

/// Weak compositions of `d` with at most `n` parts, pushed in odometer order.
fn compositions_of(d: u32, n: usize, cur: &mut Vec<u32>, out: &mut Vec<WeakComposition>) {
    if cur.len() + 1 == n || n == 0 {
        if n == 0 {
            if d == 0 {
                out.push(WeakComposition::zero());
            }
            return;
        }
        cur.push(d);
        out.push(WeakComposition::new(cur.clone()));
        cur.pop();
        return;
    }
    for a in 0..=d {
        cur.push(a);
        compositions_of(d - a, n, cur, out);
        cur.pop();
    }
}

/// Some `c` with `Σ c_j columns_j = target`, by exact Gaussian elimination.
fn solve_exact(columns: &[Polynomial], target: &Polynomial) -> Option<Vec<Coeff>> {
    let mut monomials: BTreeSet<WeakComposition> = target.terms().map(|(e, _)| e.clone()).collect();
    for col in columns {
        monomials.extend(col.terms().map(|(e, _)| e.clone()));
    }
    let monomials: Vec<WeakComposition> = monomials.into_iter().collect();
    let k = columns.len();
    let mut rows: Vec<Vec<Coeff>> = monomials
        .iter()
        .map(|mono| {
            let mut row: Vec<Coeff> = columns.iter().map(|c| c.coeff(mono)).collect();
            row.push(target.coeff(mono));
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..k {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][col].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let factor = row[col].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &factor * y;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if rows[r..].iter().any(|row| !row[k].is_zero()) {
        return None;
    }
    let mut solution = vec![Coeff::zero(); k];
    for (i, &col) in pivots.iter().enumerate() {
        solution[col] = rows[i][k].clone();
    }
    Some(solution)
}

/// Snowy `α` with `|rajcode(α)| = d`, tail-lex descending.
pub fn enumerate_snowy_by_raj(d: u32) -> Vec<WeakComposition> {
    // |rajcode(α)| ≥ max(|α|, len(α)), which bounds the search.
    fn go(d: u32, cur: &mut Vec<u32>, used: &mut Vec<bool>, sum: u32, out: &mut Vec<WeakComposition>) {
        if cur.last().is_some_and(|&x| x > 0) || cur.is_empty() {
            let a = WeakComposition::new(cur.clone());
            if a.rajcode().map(|r| r.size()) == Ok(d as u64) {
                out.push(a);
            }
        }
        if cur.len() as u32 == d {
            return;
        }
        for v in 0..=(d - sum) {
            if v > 0 && used[v as usize] {
                continue;
            }
            cur.push(v);
            if v > 0 {
                used[v as usize] = true;
            }
            go(d, cur, used, sum + v, out);
            if v > 0 {
                used[v as usize] = false;
            }
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(d, &mut Vec::new(), &mut vec![false; d as usize + 1], 0, &mut out);
    out.sort_by(|a, b| b.cmp(a));
    out.dedup();
    out
}

/// Coefficients of `q^0 … q^{d_max}` in `∏_{m>0} (1 + q^m/(1−q))`.
pub fn hilbert_coefficients(d_max: usize) -> Result<Vec<u64>> {
    let mut series = vec![0u64; d_max + 1];
    series[0] = 1;
    for m in 1..=d_max {
        // Multiply by 1 + q^m + q^{m+1} + … in place, high degrees first.
        for deg in (m..=d_max).rev() {
            let mut add = 0u64;
            for k in m..=deg {
                add = add
                    .checked_add(series[deg - k])
                    .ok_or_else(|| Error::InvalidInput(format!("coefficient of q^{deg} overflows u64")))?;
            }
            series[deg] = series[deg]
                .checked_add(add)
                .ok_or_else(|| Error::InvalidInput(format!("coefficient of q^{deg} overflows u64")))?;
        }
    }
    Ok(series)
}

/// Free-function versions on the global engine.
pub fn expand_in_basis(f: &Polynomial, kind: BasisKind) -> Result<BasisExpansion> {
    Engine::global().expand_in_basis(f, kind)
}

pub fn schubert_product(u: &Permutation, v: &Permutation) -> Result<BasisExpansion> {
    Engine::global().schubert_product(u, v)
}

pub fn top_lascoux_product(alpha: &WeakComposition, gamma: &WeakComposition) -> Result<BasisExpansion> {
    Engine::global().top_lascoux_product(alpha, gamma)
}

pub fn verify_structure_theorem(
    alpha: &WeakComposition,
    gamma: &WeakComposition,
    m1: u32,
    m2: u32,
    n: usize,
) -> Result<StructureReport> {
    Engine::global().verify_structure_theorem(alpha, gamma, m1, m2, n)
}

pub fn key_expand_top_lascoux(alpha: &WeakComposition, m: u32, n: usize) -> Result<KeyExpansion> {
    Engine::global().key_expand_top_lascoux(alpha, m, n)
}
