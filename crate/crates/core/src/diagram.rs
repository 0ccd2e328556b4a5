//! Finite cell diagrams: left-justified diagrams, Rothe diagrams and snow
//! diagrams. Coordinates are 1-based `(row, column)`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::composition::WeakComposition;
use crate::error::{Error, Result};
use crate::permutation::Permutation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Plain,
    Bullet,
    Asterisk,
}

impl Label {
    fn name(self) -> &'static str {
        match self {
            Label::Plain => "dot",
            Label::Bullet => "bullet",
            Label::Asterisk => "asterisk",
        }
    }

    fn from_name(s: &str) -> Result<Self> {
        match s {
            "dot" => Ok(Label::Plain),
            "bullet" => Ok(Label::Bullet),
            "asterisk" => Ok(Label::Asterisk),
            other => Err(Error::Parse(format!("unknown cell label {other:?}"))),
        }
    }
}

pub type Cell = (u32, u32);

/// A finite set of cells, each carrying a [`Label`]. Cells iterate in
/// row-major order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Diagram {
    cells: BTreeMap<Cell, Label>,
}

impl Diagram {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_cells(cells: impl IntoIterator<Item = Cell>) -> Result<Self> {
        let mut d = Diagram::new();
        for cell in cells {
            d.insert(cell, Label::Plain)?;
        }
        Ok(d)
    }

    pub fn insert(&mut self, cell: Cell, label: Label) -> Result<()> {
        if cell.0 == 0 || cell.1 == 0 {
            return Err(Error::InvalidInput(format!(
                "cell ({}, {}) is not 1-based",
                cell.0, cell.1
            )));
        }
        self.cells.insert(cell, label);
        Ok(())
    }

    pub fn contains(&self, cell: Cell) -> bool {
        self.cells.contains_key(&cell)
    }

    pub fn label(&self, cell: Cell) -> Option<Label> {
        self.cells.get(&cell).copied()
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.cells.keys().copied()
    }

    pub fn labeled_cells(&self) -> impl Iterator<Item = (Cell, Label)> + '_ {
        self.cells.iter().map(|(&c, &l)| (c, l))
    }

    pub fn cells_with(&self, label: Label) -> Vec<Cell> {
        self.labeled_cells()
            .filter(|&(_, l)| l == label)
            .map(|(c, _)| c)
            .collect()
    }

    /// Same cells, every label reset to [`Label::Plain`].
    pub fn unlabeled(&self) -> Self {
        Diagram {
            cells: self.cells.keys().map(|&c| (c, Label::Plain)).collect(),
        }
    }

    /// Whether the cell sets agree, ignoring labels.
    pub fn same_cells(&self, other: &Self) -> bool {
        self.cells.keys().eq(other.cells.keys())
    }

    /// `wt(D)_i` = number of cells in row `i`.
    pub fn weight(&self) -> WeakComposition {
        let rows = self.max_row() as usize;
        let mut w = vec![0u32; rows];
        for (r, _) in self.cells() {
            w[r as usize - 1] += 1;
        }
        WeakComposition::new(w)
    }

    pub fn max_row(&self) -> u32 {
        self.cells().map(|(r, _)| r).max().unwrap_or(0)
    }

    pub fn max_col(&self) -> u32 {
        self.cells().map(|(_, c)| c).max().unwrap_or(0)
    }

    /// Rows occupied in column `c`, top to bottom.
    pub fn column(&self, c: u32) -> Vec<u32> {
        self.cells().filter(|&(_, cc)| cc == c).map(|(r, _)| r).collect()
    }

    /// `D(α)`: the left-justified diagram with weight `α`.
    pub fn of_composition(alpha: &WeakComposition) -> Self {
        let mut cells = BTreeMap::new();
        for r in 1..=alpha.len() {
            for c in 1..=alpha.get(r) {
                cells.insert((r as u32, c), Label::Plain);
            }
        }
        Diagram { cells }
    }

    /// `RD(w) = {(r,c) : w(r) > c, and c ≠ w(i) for every i ≤ r}`.
    pub fn rothe(w: &Permutation) -> Self {
        let mut cells = BTreeMap::new();
        let n = w.len();
        for r in 1..=n {
            let wr = w.apply(r);
            for c in 1..wr {
                if (1..=r).all(|i| w.apply(i) != c) {
                    cells.insert((r as u32, c), Label::Plain);
                }
            }
        }
        Diagram { cells }
    }

    /// `snow(D(α))` for snowy `α`: the rightmost cell of each row of `D(α)`
    /// becomes a bullet, and every empty position above a bullet receives
    /// an asterisk cell.
    pub fn snow(alpha: &WeakComposition) -> Result<Self> {
        alpha.require_snowy()?;
        let mut d = Diagram::of_composition(alpha);
        for r in 1..=alpha.len() as u32 {
            let a = alpha.get(r as usize);
            if a == 0 {
                continue;
            }
            d.cells.insert((r, a), Label::Bullet);
            for above in 1..r {
                d.cells.entry((above, a)).or_insert(Label::Asterisk);
            }
        }
        Ok(d)
    }

    /// Embed in the `n × m` box, rotate by 180°, and take the complement in
    /// the box. Labels are dropped.
    pub fn rotate_complement(&self, m: u32, n: u32) -> Result<Self> {
        if self.max_row() > n || self.max_col() > m {
            return Err(Error::OutOfRange(format!(
                "diagram does not fit in {n} rows and {m} columns"
            )));
        }
        let mut cells = BTreeMap::new();
        for r in 1..=n {
            for c in 1..=m {
                if !self.contains((n + 1 - r, m + 1 - c)) {
                    cells.insert((r, c), Label::Plain);
                }
            }
        }
        Ok(Diagram { cells })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_repr()).expect("diagram serialization is infallible")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let repr: Vec<CellRepr> =
            serde_json::from_str(s).map_err(|e| Error::Parse(format!("diagram JSON: {e}")))?;
        Self::from_repr(repr)
    }

    fn to_repr(&self) -> Vec<CellRepr> {
        self.labeled_cells()
            .map(|((r, c), l)| match l {
                Label::Plain => CellRepr::Plain(r, c),
                l => CellRepr::Labeled(r, c, l.name().to_string()),
            })
            .collect()
    }

    fn from_repr(repr: Vec<CellRepr>) -> Result<Self> {
        let mut d = Diagram::new();
        for cell in repr {
            let (pos, label) = match cell {
                CellRepr::Plain(r, c) => ((r, c), Label::Plain),
                CellRepr::Labeled(r, c, name) => ((r, c), Label::from_name(&name)?),
            };
            if d.contains(pos) {
                return Err(Error::Parse(format!("duplicate cell ({}, {})", pos.0, pos.1)));
            }
            d.insert(pos, label).map_err(|e| Error::Parse(e.to_string()))?;
        }
        Ok(d)
    }

    /// One text line per row; `.` plain, `o` bullet, `*` asterisk, space empty.
    pub fn render(&self) -> String {
        let (rows, cols) = (self.max_row(), self.max_col());
        let mut out = String::new();
        for r in 1..=rows {
            let line: String = (1..=cols)
                .map(|c| match self.label((r, c)) {
                    None => ' ',
                    Some(Label::Plain) => '.',
                    Some(Label::Bullet) => 'o',
                    Some(Label::Asterisk) => '*',
                })
                .collect();
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum CellRepr {
    Plain(u32, u32),
    Labeled(u32, u32, String),
}

impl Serialize for Diagram {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_repr().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Diagram {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = Vec::<CellRepr>::deserialize(d)?;
        Diagram::from_repr(repr).map_err(serde::de::Error::custom)
    }
}
