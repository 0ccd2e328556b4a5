//! Perfect tableaux and the supports they describe.
//!
//! A perfect tableau fills a diagram with positive integers so that every
//! column strictly increases downwards and every entry in row `i` is at most
//! `i`. Both conditions only look at one column at a time, so the set of
//! tableaux is a product of per-column choices.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::composition::WeakComposition;
use crate::diagram::{Cell, Diagram};
use crate::error::{Error, Result};
use crate::permutation::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PerfectTableau {
    filling: BTreeMap<Cell, u32>,
}

impl PerfectTableau {
    /// Checks column strictness and the row flag.
    pub fn new(filling: BTreeMap<Cell, u32>) -> Result<Self> {
        let mut last: BTreeMap<u32, (u32, u32)> = BTreeMap::new();
        // BTreeMap order is row-major, so each column is visited top to bottom.
        for (&(r, c), &e) in &filling {
            if r == 0 || c == 0 {
                return Err(Error::InvalidInput(format!("cell ({r}, {c}) is not 1-based")));
            }
            if e == 0 || e > r {
                return Err(Error::InvalidInput(format!(
                    "entry {e} in row {r} breaks the flag condition"
                )));
            }
            if let Some(&(pr, pe)) = last.get(&c) {
                if pe >= e {
                    return Err(Error::InvalidInput(format!(
                        "column {c} does not increase from row {pr} to row {r}"
                    )));
                }
            }
            last.insert(c, (r, e));
        }
        Ok(PerfectTableau { filling })
    }

    pub fn filling(&self) -> &BTreeMap<Cell, u32> {
        &self.filling
    }

    pub fn entry(&self, cell: Cell) -> Option<u32> {
        self.filling.get(&cell).copied()
    }

    pub fn shape(&self) -> Diagram {
        Diagram::from_cells(self.filling.keys().copied()).expect("cells are 1-based")
    }

    /// `weight_k` = number of cells holding `k`.
    pub fn weight(&self) -> WeakComposition {
        let max = self.filling.values().copied().max().unwrap_or(0) as usize;
        let mut w = vec![0u32; max];
        for &e in self.filling.values() {
            w[e as usize - 1] += 1;
        }
        WeakComposition::new(w)
    }

    pub fn to_json(&self) -> String {
        let cells: Vec<[u32; 3]> = self.filling.iter().map(|(&(r, c), &e)| [r, c, e]).collect();
        serde_json::to_string(&TableauRepr { cells }).expect("tableau serialization is infallible")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let repr: TableauRepr =
            serde_json::from_str(s).map_err(|e| Error::Parse(format!("tableau JSON: {e}")))?;
        let mut filling = BTreeMap::new();
        for [r, c, e] in repr.cells {
            if filling.insert((r, c), e).is_some() {
                return Err(Error::Parse(format!("cell ({r}, {c}) listed twice")));
            }
        }
        PerfectTableau::new(filling).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Grid view, `.` marking positions outside the shape.
    pub fn render(&self) -> String {
        let rows = self.filling.keys().map(|&(r, _)| r).max().unwrap_or(0);
        let cols = self.filling.keys().map(|&(_, c)| c).max().unwrap_or(0);
        let mut out = String::new();
        for r in 1..=rows {
            for c in 1..=cols {
                match self.entry((r, c)) {
                    Some(e) => out.push_str(&format!("{e:>3}")),
                    None => out.push_str("  ."),
                }
            }
            out.push('\n');
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TableauRepr {
    cells: Vec<[u32; 3]>,
}

/// Increasing sequences `e_1 < … < e_k` with `1 ≤ e_j ≤ rows_j`.
fn column_fillings(rows: &[u32]) -> Vec<Vec<u32>> {
    fn go(rows: &[u32], min: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let Some((&r, rest)) = rows.split_first() else {
            out.push(cur.clone());
            return;
        };
        for e in min..=r {
            cur.push(e);
            go(rest, e + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(rows, 1, &mut Vec::new(), &mut out);
    out
}

fn columns(d: &Diagram) -> Vec<(u32, Vec<u32>)> {
    let mut cols: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    for (r, c) in d.cells() {
        cols.entry(c).or_default().push(r);
    }
    cols.into_iter().collect()
}

/// Column index, its admissible fillings, and its rows.
type Column = (u32, Vec<Vec<u32>>, Vec<u32>);

/// All perfect fillings of `d` (labels ignored), optionally of weight `gamma`,
/// in increasing order.
pub fn enumerate_perfect_tableaux(d: &Diagram, gamma: Option<&WeakComposition>) -> Vec<PerfectTableau> {
    let cols: Vec<Column> = columns(d)
        .into_iter()
        .map(|(c, rows)| {
            let fills = column_fillings(&rows);
            (c, fills, rows)
        })
        .collect();
    let target = gamma.map(|g| g.entries().to_vec());
    let mut counts: Vec<u32> = Vec::new();
    let mut filling = BTreeMap::new();
    let mut out = Vec::new();

    fn go(
        cols: &[Column],
        target: &Option<Vec<u32>>,
        counts: &mut Vec<u32>,
        filling: &mut BTreeMap<Cell, u32>,
        out: &mut Vec<PerfectTableau>,
    ) {
        let Some(((c, fills, rows), rest)) = cols.split_first() else {
            if target.as_ref().is_none_or(|t| {
                let len = t.len().max(counts.len());
                (0..len).all(|i| t.get(i).copied().unwrap_or(0) == counts.get(i).copied().unwrap_or(0))
            }) {
                out.push(PerfectTableau {
                    filling: filling.clone(),
                });
            }
            return;
        };
        for fill in fills {
            for &e in fill {
                let i = e as usize - 1;
                if counts.len() <= i {
                    counts.resize(i + 1, 0);
                }
                counts[i] += 1;
            }
            let over = target
                .as_ref()
                .is_some_and(|t| counts.iter().enumerate().any(|(i, &k)| k > t.get(i).copied().unwrap_or(0)));
            if !over {
                for (&r, &e) in rows.iter().zip(fill) {
                    filling.insert((r, *c), e);
                }
                go(rest, target, counts, filling, out);
            }
            for &e in fill {
                counts[e as usize - 1] -= 1;
            }
        }
    }
    go(&cols, &target, &mut counts, &mut filling, &mut out);
    out.sort();
    out
}

/// Weights of all perfect fillings of `d`, via per-column Minkowski sums
/// (no tableau is materialized). Sorted tail-lex descending.
pub fn tableau_weights(d: &Diagram) -> Vec<WeakComposition> {
    let mut acc: BTreeSet<Vec<u32>> = BTreeSet::from([Vec::new()]);
    for (_, rows) in columns(d) {
        let col_weights: BTreeSet<Vec<u32>> = column_fillings(&rows)
            .into_iter()
            .map(|fill| {
                let mut w = vec![0u32; *fill.last().unwrap_or(&0) as usize];
                for e in fill {
                    w[e as usize - 1] += 1;
                }
                w
            })
            .collect();
        let mut next = BTreeSet::new();
        for a in &acc {
            for b in &col_weights {
                let mut s = a.clone();
                if s.len() < b.len() {
                    s.resize(b.len(), 0);
                }
                for (x, y) in s.iter_mut().zip(b) {
                    *x += y;
                }
                next.insert(s);
            }
        }
        acc = next;
    }
    let mut out: Vec<WeakComposition> = acc.into_iter().map(WeakComposition::new).collect();
    out.sort_by(|a, b| b.cmp(a));
    out.dedup();
    out
}

/// `supp(𝔖_w)` from perfect fillings of the Rothe diagram.
pub fn schubert_support(w: &Permutation) -> Vec<WeakComposition> {
    tableau_weights(&Diagram::rothe(w))
}

/// `supp(𝔏̂_α)` from perfect fillings of the snow diagram with labels erased.
pub fn top_lascoux_support(alpha: &WeakComposition) -> Result<Vec<WeakComposition>> {
    Ok(tableau_weights(&Diagram::snow(alpha)?.unlabeled()))
}

/// Sends a perfect filling of `RD(std_{m,n}(α))` to a perfect filling of the
/// unlabeled snow diagram of `α`: embed in the `n × m` box, turn by 180°,
/// replace `i` by `n+1-i`, then fill each column of the snow diagram with
/// the values of `[n]` missing from that column, increasing downwards.
pub fn tableau_bijection(t: &PerfectTableau, alpha: &WeakComposition, m: u32, n: usize) -> Result<PerfectTableau> {
    let w = Permutation::standardize(alpha, m, n)?;
    if !t.shape().same_cells(&Diagram::rothe(&w)) {
        return Err(Error::InvalidInput(format!(
            "tableau is not a filling of the Rothe diagram of [{w}]"
        )));
    }
    let n32 = n as u32;
    let mut turned: BTreeMap<u32, BTreeMap<u32, u32>> = BTreeMap::new();
    for (&(r, c), &e) in t.filling() {
        if r > n32 || c > m || e > n32 {
            return Err(Error::InvalidInput(format!(
                "cell ({r}, {c}) holding {e} lies outside the {n}x{m} box"
            )));
        }
        turned
            .entry(m + 1 - c)
            .or_default()
            .insert(n32 + 1 - r, n32 + 1 - e);
    }
    let mut filling = BTreeMap::new();
    for c in 1..=m {
        let col = turned.remove(&c).unwrap_or_default();
        let rows = (1..=n32).filter(|r| !col.contains_key(r));
        let values: BTreeSet<u32> = col.values().copied().collect();
        let entries = (1..=n32).filter(|e| !values.contains(e));
        for (r, e) in rows.zip(entries) {
            filling.insert((r, c), e);
        }
    }
    let image = PerfectTableau::new(filling)?;
    if !image.shape().same_cells(&Diagram::snow(alpha)?) {
        return Err(Error::InvalidInput(format!(
            "image is not a filling of the snow diagram of ({alpha})"
        )));
    }
    Ok(image)
}
