//! Reduced bumpless pipedreams (BPDs) and left-to-top BPDs.
//!
//! A [`PipeGrid`] is a rectangle of [`Tile`]s together with a [`Boundary`]
//! listing, for every pipe, the boundary edge where it enters and the one
//! where it leaves. Pipes always travel north or east, so entries sit on the
//! bottom or left side and exits on the top or right side.
//!
//! Enumeration walks the grid backwards along the pipes: rows top to bottom,
//! and within a row right to left. At that point the north and east edges of
//! the current cell are already fixed, which leaves at most two tiles to try,
//! and every pipe already carries the label of its exit so reducedness
//! (no pair crosses twice) is enforced as the search goes.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::composition::WeakComposition;
use crate::error::{Error, Result};
use crate::permutation::Permutation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tile {
    Blank,
    Cross,
    /// Connects the south and east edges.
    ElbowSE,
    /// Connects the north and west edges.
    ElbowNW,
    Horizontal,
    Vertical,
}

impl Tile {
    pub const ALL: [Tile; 6] = [
        Tile::Blank,
        Tile::Cross,
        Tile::ElbowSE,
        Tile::ElbowNW,
        Tile::Horizontal,
        Tile::Vertical,
    ];

    pub fn symbol(self) -> char {
        match self {
            Tile::Blank => '.',
            Tile::Cross => '+',
            Tile::ElbowSE => 'r',
            Tile::ElbowNW => 'j',
            Tile::Horizontal => '-',
            Tile::Vertical => '|',
        }
    }

    pub fn from_symbol(ch: char) -> Option<Tile> {
        Tile::ALL.into_iter().find(|t| t.symbol() == ch)
    }

    /// Which of the north, south, west, east edges carry a pipe.
    pub fn edges(self) -> Edges {
        let (north, south, west, east) = match self {
            Tile::Blank => (false, false, false, false),
            Tile::Cross => (true, true, true, true),
            Tile::ElbowSE => (false, true, false, true),
            Tile::ElbowNW => (true, false, true, false),
            Tile::Horizontal => (false, false, true, true),
            Tile::Vertical => (true, true, false, false),
        };
        Edges {
            north,
            south,
            west,
            east,
        }
    }

    /// The tile seen after turning the grid by 180°.
    pub fn rotated(self) -> Tile {
        match self {
            Tile::ElbowSE => Tile::ElbowNW,
            Tile::ElbowNW => Tile::ElbowSE,
            t => t,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edges {
    pub north: bool,
    pub south: bool,
    pub west: bool,
    pub east: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Top,
    Bottom,
    Left,
    Right,
}

/// A boundary edge: `index` is a column for top/bottom, a row for left/right.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Port(pub Side, pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PipeSpec {
    pub entry: Port,
    pub exit: Port,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Boundary {
    pub pipes: Vec<PipeSpec>,
}

impl Boundary {
    /// `BPD(w)` inside `S_n`: the pipe leaving through the right edge of
    /// row `i` enters at the bottom of column `w(i)`.
    pub fn bpd(w: &Permutation, n: usize) -> Self {
        Boundary {
            pipes: (1..=n)
                .map(|i| PipeSpec {
                    entry: Port(Side::Bottom, w.apply(i) as usize),
                    exit: Port(Side::Right, i),
                })
                .collect(),
        }
    }

    /// `LTBPD(α)`: for every `i` with `α_i > 0`, a pipe enters the left edge
    /// of row `i` and leaves through the top of column `α_i`.
    pub fn ltbpd(alpha: &WeakComposition) -> Self {
        Boundary {
            pipes: alpha
                .support()
                .into_iter()
                .map(|i| PipeSpec {
                    entry: Port(Side::Left, i),
                    exit: Port(Side::Top, alpha.get(i) as usize),
                })
                .collect(),
        }
    }

    fn check(&self, rows: usize, cols: usize) -> Result<()> {
        let mut used = std::collections::HashSet::new();
        for spec in &self.pipes {
            for (port, allowed) in [
                (spec.entry, [Side::Bottom, Side::Left]),
                (spec.exit, [Side::Top, Side::Right]),
            ] {
                let Port(side, idx) = port;
                if !allowed.contains(&side) {
                    return Err(Error::InvalidGrid(format!(
                        "port {port:?} cannot be used in that role"
                    )));
                }
                let bound = match side {
                    Side::Top | Side::Bottom => cols,
                    Side::Left | Side::Right => rows,
                };
                if idx == 0 || idx > bound {
                    return Err(Error::InvalidGrid(format!("port {port:?} is off the grid")));
                }
                if !used.insert(port) {
                    return Err(Error::InvalidGrid(format!("port {port:?} used twice")));
                }
            }
        }
        Ok(())
    }

    fn has(&self, port: Port) -> bool {
        self.pipes.iter().any(|p| p.entry == port || p.exit == port)
    }

    /// Left-to-top boundaries come from the composition `α_row = column`.
    pub fn as_ltbpd_composition(&self) -> Option<WeakComposition> {
        let mut entries = Vec::new();
        for spec in &self.pipes {
            match (spec.entry, spec.exit) {
                (Port(Side::Left, r), Port(Side::Top, c)) => entries.push((r, c as u32)),
                _ => return None,
            }
        }
        let n = entries.iter().map(|&(r, _)| r).max().unwrap_or(0);
        let mut v = vec![0; n];
        for (r, c) in entries {
            v[r - 1] = c;
        }
        Some(WeakComposition::new(v))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PipeGrid {
    rows: usize,
    cols: usize,
    tiles: Vec<Tile>,
    boundary: Boundary,
}

impl PipeGrid {
    /// Builds a grid and checks it with [`PipeGrid::validate`].
    pub fn new(rows: usize, cols: usize, tiles: Vec<Tile>, boundary: Boundary) -> Result<Self> {
        if tiles.len() != rows * cols {
            return Err(Error::InvalidGrid(format!(
                "{} tiles for a {rows}x{cols} grid",
                tiles.len()
            )));
        }
        let g = PipeGrid {
            rows,
            cols,
            tiles,
            boundary,
        };
        g.validate()?;
        Ok(g)
    }

    /// Parses rows of tile symbols (see [`Tile::symbol`]).
    pub fn from_ascii(lines: &[&str], boundary: Boundary) -> Result<Self> {
        let rows = lines.len();
        let cols = lines.first().map_or(0, |l| l.chars().count());
        let mut tiles = Vec::with_capacity(rows * cols);
        for line in lines {
            if line.chars().count() != cols {
                return Err(Error::InvalidGrid("ragged tile rows".into()));
            }
            for ch in line.chars() {
                tiles.push(
                    Tile::from_symbol(ch)
                        .ok_or_else(|| Error::InvalidGrid(format!("unknown tile symbol {ch:?}")))?,
                );
            }
        }
        PipeGrid::new(rows, cols, tiles, boundary)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn boundary(&self) -> &Boundary {
        &self.boundary
    }

    pub fn tiles(&self) -> &[Tile] {
        &self.tiles
    }

    /// Tile in 1-based `(row, col)`.
    pub fn tile(&self, r: usize, c: usize) -> Tile {
        self.tiles[(r - 1) * self.cols + (c - 1)]
    }

    /// Edge matching, pipe tracing against the boundary, and reducedness.
    pub fn validate(&self) -> Result<()> {
        let (rows, cols) = (self.rows, self.cols);
        self.boundary.check(rows, cols)?;
        for r in 1..=rows {
            for c in 1..=cols {
                let e = self.tile(r, c).edges();
                let north = if r == 1 {
                    self.boundary.has(Port(Side::Top, c))
                } else {
                    self.tile(r - 1, c).edges().south
                };
                let west = if c == 1 {
                    self.boundary.has(Port(Side::Left, r))
                } else {
                    self.tile(r, c - 1).edges().east
                };
                if e.north != north || e.west != west {
                    return Err(Error::InvalidGrid(format!("edge mismatch at ({r}, {c})")));
                }
                if r == rows && e.south != self.boundary.has(Port(Side::Bottom, c)) {
                    return Err(Error::InvalidGrid(format!("bottom edge mismatch at column {c}")));
                }
                if c == cols && e.east != self.boundary.has(Port(Side::Right, r)) {
                    return Err(Error::InvalidGrid(format!("right edge mismatch at row {r}")));
                }
            }
        }
        if rows == 0 || cols == 0 {
            return if self.boundary.pipes.is_empty() {
                Ok(())
            } else {
                Err(Error::InvalidGrid("pipes on an empty grid".into()))
            };
        }

        let k = self.boundary.pipes.len();
        // Per cell: which pipe occupies the vertical / horizontal strand.
        let mut vertical = vec![None; rows * cols];
        let mut horizontal = vec![None; rows * cols];
        for (label, spec) in self.boundary.pipes.iter().enumerate() {
            let exit = self.trace(label, spec.entry, &mut vertical, &mut horizontal)?;
            if exit != spec.exit {
                return Err(Error::InvalidGrid(format!(
                    "pipe from {:?} leaves at {exit:?}, expected {:?}",
                    spec.entry, spec.exit
                )));
            }
        }
        let mut crossed = vec![false; k * k];
        for (idx, &t) in self.tiles.iter().enumerate() {
            let (v, h) = (vertical[idx], horizontal[idx]);
            // Elbows are recorded under the strand they are entered by.
            let (need_v, need_h) = match t {
                Tile::Blank => (false, false),
                Tile::Cross => (true, true),
                Tile::Vertical | Tile::ElbowSE => (true, false),
                Tile::Horizontal | Tile::ElbowNW => (false, true),
            };
            if (need_v && v.is_none()) || (need_h && h.is_none()) {
                return Err(Error::InvalidGrid(format!(
                    "tile at cell {} carries a strand no boundary pipe uses",
                    idx + 1
                )));
            }
            if t == Tile::Cross {
                let (p, q) = (v.unwrap(), h.unwrap());
                if std::mem::replace(&mut crossed[p * k + q], true) {
                    return Err(Error::InvalidGrid(format!(
                        "pipes {p} and {q} cross more than once"
                    )));
                }
                crossed[q * k + p] = true;
            }
        }
        Ok(())
    }

    fn trace(
        &self,
        label: usize,
        entry: Port,
        vertical: &mut [Option<usize>],
        horizontal: &mut [Option<usize>],
    ) -> Result<Port> {
        #[derive(Clone, Copy)]
        enum Dir {
            North,
            East,
        }
        let (mut r, mut c, mut dir) = match entry {
            Port(Side::Bottom, c) => (self.rows, c, Dir::North),
            Port(Side::Left, r) => (r, 1, Dir::East),
            _ => unreachable!("entries are checked to lie on the bottom or left"),
        };
        for _ in 0..=2 * (self.rows + self.cols) {
            let idx = (r - 1) * self.cols + (c - 1);
            let tile = self.tiles[idx];
            let slot = match dir {
                Dir::North => &mut vertical[idx],
                Dir::East => &mut horizontal[idx],
            };
            dir = match (dir, tile) {
                (Dir::North, Tile::Vertical | Tile::Cross) => Dir::North,
                (Dir::North, Tile::ElbowSE) => Dir::East,
                (Dir::East, Tile::Horizontal | Tile::Cross) => Dir::East,
                (Dir::East, Tile::ElbowNW) => Dir::North,
                _ => {
                    return Err(Error::InvalidGrid(format!(
                        "pipe from {entry:?} runs into {tile:?} at ({r}, {c})"
                    )))
                }
            };
            if slot.replace(label).is_some() {
                return Err(Error::InvalidGrid(format!("strand at ({r}, {c}) used twice")));
            }
            match dir {
                Dir::North if r == 1 => return Ok(Port(Side::Top, c)),
                Dir::North => r -= 1,
                Dir::East if c == self.cols => return Ok(Port(Side::Right, r)),
                Dir::East => c += 1,
            }
        }
        Err(Error::InvalidGrid(format!("pipe from {entry:?} never leaves the grid")))
    }

    /// Blank tiles per row.
    pub fn blank_weight(&self) -> WeakComposition {
        self.row_counts(|t| t == Tile::Blank)
    }

    /// Non-blank tiles per row.
    pub fn nonblank_weight(&self) -> WeakComposition {
        self.row_counts(|t| t != Tile::Blank)
    }

    fn row_counts(&self, pred: impl Fn(Tile) -> bool) -> WeakComposition {
        WeakComposition::new(
            (1..=self.rows)
                .map(|r| (1..=self.cols).filter(|&c| pred(self.tile(r, c))).count() as u32)
                .collect(),
        )
    }

    /// One line of tile symbols per row.
    pub fn ascii_rows(&self) -> Vec<String> {
        (1..=self.rows)
            .map(|r| (1..=self.cols).map(|c| self.tile(r, c).symbol()).collect())
            .collect()
    }

    pub fn render_ascii(&self) -> String {
        let mut s = self.ascii_rows().join("\n");
        s.push('\n');
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&GridRepr {
            rows: self.rows,
            cols: self.cols,
            tiles: self.ascii_rows(),
            boundary: self.boundary.clone(),
        })
        .expect("grid serialization is infallible")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let repr: GridRepr =
            serde_json::from_str(s).map_err(|e| Error::Parse(format!("grid JSON: {e}")))?;
        if repr.tiles.len() != repr.rows
            || repr.tiles.iter().any(|l| l.chars().count() != repr.cols)
        {
            return Err(Error::Parse(format!(
                "tile rows do not form a {}x{} grid",
                repr.rows, repr.cols
            )));
        }
        let lines: Vec<&str> = repr.tiles.iter().map(String::as_str).collect();
        let g = if repr.rows == 0 {
            PipeGrid::new(0, repr.cols, Vec::new(), repr.boundary)
        } else {
            PipeGrid::from_ascii(&lines, repr.boundary)
        };
        g.map_err(|e| Error::Parse(e.to_string()))
    }

    /// Takes the top-left `n × m` corner, turns it by 180°, and reads off the
    /// left-to-top boundary of the result. For `D ∈ BPD(std_{m,n}(α))` this
    /// is an element of `LTBPD(α)`.
    pub fn rotate_corner(&self, m: usize, n: usize) -> Result<PipeGrid> {
        if n > self.rows || m > self.cols {
            return Err(Error::InvalidSubgrid(format!(
                "{n}x{m} corner does not fit in a {}x{} grid",
                self.rows, self.cols
            )));
        }
        let mut tiles = Vec::with_capacity(n * m);
        for r in 1..=n {
            for c in 1..=m {
                tiles.push(self.tile(n + 1 - r, m + 1 - c).rotated());
            }
        }
        let boundary = infer_left_to_top(n, m, &tiles)
            .ok_or_else(|| Error::InvalidSubgrid("rotated corner is not a left-to-top grid".into()))?;
        PipeGrid::new(n, m, tiles, boundary).map_err(|e| Error::InvalidSubgrid(e.to_string()))
    }
}

/// Pairs left-edge entries with top-edge exits by following pipes; fails
/// when a pipe touches the bottom or right side.
fn infer_left_to_top(rows: usize, cols: usize, tiles: &[Tile]) -> Option<Boundary> {
    let at = |r: usize, c: usize| tiles[(r - 1) * cols + (c - 1)];
    for c in 1..=cols {
        if rows > 0 && at(rows, c).edges().south {
            return None;
        }
    }
    let mut pipes = Vec::new();
    for r0 in 1..=rows {
        if cols == 0 || !at(r0, 1).edges().west {
            continue;
        }
        let (mut r, mut c, mut north) = (r0, 1, false);
        let exit = loop {
            let t = at(r, c);
            north = match (north, t) {
                (true, Tile::Vertical | Tile::Cross) => true,
                (true, Tile::ElbowSE) => false,
                (false, Tile::Horizontal | Tile::Cross) => false,
                (false, Tile::ElbowNW) => true,
                _ => return None,
            };
            if north {
                if r == 1 {
                    break c;
                }
                r -= 1;
            } else {
                if c == cols {
                    return None;
                }
                c += 1;
            }
        };
        pipes.push(PipeSpec {
            entry: Port(Side::Left, r0),
            exit: Port(Side::Top, exit),
        });
    }
    Some(Boundary { pipes })
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GridRepr {
    rows: usize,
    cols: usize,
    tiles: Vec<String>,
    boundary: Boundary,
}

impl fmt::Debug for PipeGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PipeGrid[{}]", self.ascii_rows().join("/"))
    }
}

/// Pipe state while walking the grid backwards.
struct Search<'a> {
    rows: usize,
    cols: usize,
    boundary: &'a Boundary,
    /// Entry port of each pipe label.
    targets: Vec<Port>,
    /// Label on the south edge of the previous row, per column.
    north: Vec<Option<usize>>,
    crossed: Vec<bool>,
    tiles: Vec<Tile>,
    found: Vec<Vec<Tile>>,
    limit: usize,
    overflow: bool,
}

impl Search<'_> {
    /// Can a pipe sitting in cell `(r, c)` and moving south/west still reach
    /// its entry?
    fn reachable(&self, label: usize, r: usize, c: usize) -> bool {
        match self.targets[label] {
            Port(Side::Bottom, j) => j <= c,
            Port(Side::Left, i) => i >= r,
            _ => false,
        }
    }

    /// Pipe leaving cell `(r, c)` westward.
    fn west_ok(&self, label: usize, r: usize, c: usize) -> bool {
        if c == 1 {
            self.targets[label] == Port(Side::Left, r)
        } else {
            self.reachable(label, r, c - 1)
        }
    }

    /// Pipe leaving cell `(r, c)` southward.
    fn south_ok(&self, label: usize, r: usize, c: usize) -> bool {
        if r == self.rows {
            self.targets[label] == Port(Side::Bottom, c)
        } else {
            self.reachable(label, r + 1, c)
        }
    }

    fn exit_label(&self, port: Port) -> Option<usize> {
        self.boundary.pipes.iter().position(|p| p.exit == port)
    }

    /// Fill row `r` from column `c` leftwards; `east` is the label entering
    /// cell `(r, c)` from the right.
    fn fill(&mut self, r: usize, c: usize, east: Option<usize>) {
        if self.overflow {
            return;
        }
        if c == 0 {
            if east.is_some_and(|p| self.targets[p] != Port(Side::Left, r)) {
                return;
            }
            if let Some(p) = east {
                debug_assert_eq!(self.targets[p], Port(Side::Left, r));
            }
            if r == self.rows {
                if self.found.len() == self.limit {
                    self.overflow = true;
                } else {
                    self.found.push(self.tiles.clone());
                }
                return;
            }
            let next_east = self.exit_label(Port(Side::Right, r + 1));
            self.fill(r + 1, self.cols, next_east);
            return;
        }
        let idx = (r - 1) * self.cols + (c - 1);
        let north = self.north[c - 1];
        match (north, east) {
            (None, None) => {
                if r == self.rows && self.boundary.has(Port(Side::Bottom, c)) {
                    return;
                }
                self.place(idx, Tile::Blank, c, None, |s| s.fill(r, c - 1, None));
            }
            (None, Some(p)) => {
                if self.west_ok(p, r, c) {
                    self.place(idx, Tile::Horizontal, c, None, |s| s.fill(r, c - 1, Some(p)));
                }
                if self.south_ok(p, r, c) {
                    self.place(idx, Tile::ElbowSE, c, Some(p), |s| s.fill(r, c - 1, None));
                }
            }
            (Some(p), None) => {
                if self.south_ok(p, r, c) {
                    self.place(idx, Tile::Vertical, c, Some(p), |s| s.fill(r, c - 1, None));
                }
                if self.west_ok(p, r, c) {
                    self.place(idx, Tile::ElbowNW, c, None, |s| s.fill(r, c - 1, Some(p)));
                }
            }
            (Some(p), Some(q)) => {
                let k = self.targets.len();
                if self.crossed[p * k + q] || !self.south_ok(p, r, c) || !self.west_ok(q, r, c) {
                    return;
                }
                self.crossed[p * k + q] = true;
                self.crossed[q * k + p] = true;
                self.place(idx, Tile::Cross, c, Some(p), |s| s.fill(r, c - 1, Some(q)));
                self.crossed[p * k + q] = false;
                self.crossed[q * k + p] = false;
            }
        }
    }

    fn place(&mut self, idx: usize, tile: Tile, c: usize, south: Option<usize>, then: impl FnOnce(&mut Self)) {
        let saved = std::mem::replace(&mut self.north[c - 1], south);
        self.tiles[idx] = tile;
        then(self);
        self.north[c - 1] = saved;
    }
}

/// All reduced grids with the given shape and boundary, sorted
/// lexicographically by their row-major tile sequence. Fails once more than
/// `limit` grids are found.
pub fn enumerate_grids(rows: usize, cols: usize, boundary: &Boundary, limit: usize) -> Result<Vec<PipeGrid>> {
    boundary.check(rows, cols)?;
    if rows == 0 || cols == 0 {
        return Ok(if boundary.pipes.is_empty() {
            vec![PipeGrid {
                rows,
                cols,
                tiles: Vec::new(),
                boundary: boundary.clone(),
            }]
        } else {
            Vec::new()
        });
    }
    let k = boundary.pipes.len();
    let mut search = Search {
        rows,
        cols,
        boundary,
        targets: boundary.pipes.iter().map(|p| p.entry).collect(),
        north: (1..=cols)
            .map(|c| boundary.pipes.iter().position(|p| p.exit == Port(Side::Top, c)))
            .collect(),
        crossed: vec![false; k * k],
        tiles: vec![Tile::Blank; rows * cols],
        found: Vec::new(),
        limit,
        overflow: false,
    };
    let east = search.exit_label(Port(Side::Right, 1));
    search.fill(1, cols, east);
    if search.overflow {
        return Err(Error::resource(
            "term_limit",
            limit,
            format!("more than {limit} pipedreams"),
        ));
    }
    let mut found = search.found;
    found.sort();
    Ok(found
        .into_iter()
        .map(|tiles| PipeGrid {
            rows,
            cols,
            tiles,
            boundary: boundary.clone(),
        })
        .collect())
}

const DEFAULT_LIMIT: usize = 1_000_000;

/// `BPD(w)` as `n × n` grids; requires `w ∈ S_n`.
pub fn enumerate_bpd(w: &Permutation, n: usize) -> Result<Vec<PipeGrid>> {
    enumerate_bpd_limited(w, n, DEFAULT_LIMIT)
}

pub fn enumerate_bpd_limited(w: &Permutation, n: usize, limit: usize) -> Result<Vec<PipeGrid>> {
    if w.len() > n {
        return Err(Error::OutOfRange(format!("[{w}] is not in S_{n}")));
    }
    enumerate_grids(n, n, &Boundary::bpd(w, n), limit)
}

/// `LTBPD(α)`: grids with `n = len(α)` rows and `m = max(α)` columns.
pub fn enumerate_ltbpd(alpha: &WeakComposition) -> Result<Vec<PipeGrid>> {
    enumerate_ltbpd_limited(alpha, DEFAULT_LIMIT)
}

pub fn enumerate_ltbpd_limited(alpha: &WeakComposition, limit: usize) -> Result<Vec<PipeGrid>> {
    alpha.require_snowy()?;
    enumerate_grids(
        alpha.len(),
        alpha.max_entry() as usize,
        &Boundary::ltbpd(alpha),
        limit,
    )
}

/// `Σ_{D ∈ BPD(w)} x^{wt_▢(D)}`.
pub fn bpd_polynomial(w: &Permutation) -> Result<crate::Polynomial> {
    let grids = enumerate_bpd(w, w.len())?;
    Ok(sum_monomials(grids.iter().map(PipeGrid::blank_weight)))
}

/// `Σ_{D ∈ LTBPD(α)} x^{wt_⊡(D)}`.
pub fn ltbpd_polynomial(alpha: &WeakComposition) -> Result<crate::Polynomial> {
    let grids = enumerate_ltbpd(alpha)?;
    Ok(sum_monomials(grids.iter().map(PipeGrid::nonblank_weight)))
}

fn sum_monomials(exps: impl Iterator<Item = WeakComposition>) -> crate::Polynomial {
    crate::Polynomial::from_terms(exps.map(|e| (e, num_traits::One::one())))
}

/// See [`PipeGrid::rotate_corner`]; applied to `BPD(std_{m,n}(α))` with
/// `n = len(α)` and `m = max(α)` this is a bijection onto `LTBPD(α)`.
pub fn rotate_bpd(grid: &PipeGrid, m: usize, n: usize) -> Result<PipeGrid> {
    grid.rotate_corner(m, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Permutation {
        Permutation::from_one_line(v.to_vec()).unwrap()
    }

    fn c(v: &[u32]) -> WeakComposition {
        WeakComposition::from(v)
    }

    #[test]
    fn tile_tables() {
        for t in Tile::ALL {
            assert_eq!(Tile::from_symbol(t.symbol()), Some(t));
            assert_eq!(t.rotated().rotated(), t);
            let (e, r) = (t.edges(), t.rotated().edges());
            assert_eq!((e.north, e.south, e.west, e.east), (r.south, r.north, r.east, r.west));
        }
        assert_eq!(Tile::from_symbol('x'), None);
    }

    #[test]
    fn identity_has_one_bpd() {
        for n in 0..=4 {
            let grids = enumerate_bpd(&Permutation::identity(), n).unwrap();
            assert_eq!(grids.len(), 1, "n = {n}");
            assert!(grids[0].blank_weight().is_zero());
        }
    }

    #[test]
    fn bpd_counts() {
        assert_eq!(enumerate_bpd(&p(&[2, 1, 4, 3]), 4).unwrap().len(), 3);
        assert_eq!(enumerate_bpd(&p(&[2, 4, 1, 5, 3]), 5).unwrap().len(), 5);
        assert!(enumerate_bpd(&p(&[2, 1, 4, 3]), 3).is_err());
    }

    #[test]
    fn ltbpd_counts() {
        assert_eq!(enumerate_ltbpd(&c(&[0, 3, 0, 2])).unwrap().len(), 5);
        assert_eq!(enumerate_ltbpd(&c(&[4])).unwrap().len(), 1);
        assert_eq!(enumerate_ltbpd(&c(&[2, 1])).unwrap().len(), 1);
        let empty = enumerate_ltbpd(&WeakComposition::zero()).unwrap();
        assert_eq!(empty.len(), 1);
        assert_eq!(empty[0].rows(), 0);
        assert!(matches!(enumerate_ltbpd(&c(&[1, 1])), Err(Error::NotSnowy(_))));
    }

    #[test]
    fn pictured_grids() {
        let bpds = enumerate_bpd(&p(&[2, 4, 1, 5, 3]), 5).unwrap();
        let rothe = PipeGrid::from_ascii(
            &[".r---", ".|.r-", "r+-+-", "||.|r", "||r++"],
            Boundary::bpd(&p(&[2, 4, 1, 5, 3]), 5),
        )
        .unwrap();
        assert!(bpds.contains(&rothe));
        assert_eq!(rothe.blank_weight(), c(&[1, 2, 0, 1]));

        let lt = enumerate_ltbpd(&c(&[0, 3, 0, 2])).unwrap();
        let first = PipeGrid::from_ascii(&[".||", "-+j", ".|.", "-j."], Boundary::ltbpd(&c(&[0, 3, 0, 2]))).unwrap();
        assert!(lt.contains(&first));
        assert_eq!(first.nonblank_weight(), c(&[2, 3, 1, 2]));
    }

    #[test]
    fn single_part_ltbpd_hugs_corner() {
        let g = &enumerate_ltbpd(&c(&[3])).unwrap()[0];
        assert_eq!(g.ascii_rows(), vec!["--j"]);
        assert_eq!(g.nonblank_weight(), c(&[3]));
    }

    #[test]
    fn validator_rejects_bad_grids() {
        let b = Boundary::bpd(&p(&[2, 1]), 2);
        assert!(PipeGrid::from_ascii(&["rj", "|r"], b.clone()).is_err());
        let ok = PipeGrid::from_ascii(&[".r", "r+"], b.clone()).unwrap();
        assert_eq!(ok.blank_weight(), c(&[1]));
        // Same tiles, wrong exits.
        let id = Boundary::bpd(&Permutation::identity(), 2);
        assert!(PipeGrid::from_ascii(&[".r", "r+"], id.clone()).is_err());
        assert!(PipeGrid::from_ascii(&["r-", "r+"], id).is_err());
        // Two crossings between the same pair of pipes.
        let b3 = Boundary::bpd(&p(&[1, 2, 3]), 3);
        let twice = PipeGrid::from_ascii(&["..r", ".r+", "r++"], b3);
        assert!(twice.is_err());
    }

    #[test]
    fn json_round_trip() {
        let grids = enumerate_bpd(&p(&[2, 1, 4, 3]), 4).unwrap();
        for g in &grids {
            let s = g.to_json();
            assert_eq!(&PipeGrid::from_json(&s).unwrap(), g);
        }
        assert!(PipeGrid::from_json(r#"{"rows":1,"cols":1,"tiles":["x"],"boundary":{"pipes":[]}}"#).is_err());
        assert!(PipeGrid::from_json(r#"{"rows":2,"cols":1,"tiles":["."],"boundary":{"pipes":[]}}"#).is_err());
        assert!(PipeGrid::from_json(r#"{"rows":0,"cols":0,"tiles":[],"boundary":{"pipes":[]}}"#).is_ok());
    }

    #[test]
    fn enumeration_limit() {
        let err = enumerate_bpd_limited(&p(&[2, 4, 1, 5, 3]), 5, 2).unwrap_err();
        assert!(err.is_resource_limit());
    }
}
