//! Alternative tableaux and packed alternative tableaux.
//!
//! An alternative tableau is a rectangular grid partially filled with left
//! and down arrows such that every cell an arrow points at is empty: all
//! cells to the left of a `<` and all cells below a `v`. Rows are indexed
//! `1..=n` top to bottom and columns `1..=k` left to right; the packed
//! variant adds bottom row `n+1` and leftmost column `0`, with every
//! ordinary row holding exactly one `<` and every ordinary column exactly
//! one `v`.

use crate::error::{Error, Result};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Arrow {
    Left,
    Down,
}

type Cells = BTreeMap<(usize, usize), Arrow>;

fn pointing_violation(cells: &Cells) -> Option<String> {
    for (&(r, c), &arrow) in cells {
        match arrow {
            Arrow::Left => {
                if let Some((&(br, bc), _)) = cells.range((r, 0)..(r, c)).next() {
                    return Some(format!("left arrow at ({r},{c}) points at ({br},{bc})"));
                }
            }
            Arrow::Down => {
                if let Some(&(br, bc)) = cells
                    .keys()
                    .find(|&&(rr, cc)| cc == c && rr > r)
                {
                    return Some(format!("down arrow at ({r},{c}) points at ({br},{bc})"));
                }
            }
        }
    }
    None
}

/// Rectangular alternative tableau of size `rows x cols`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AltTableau {
    rows: usize,
    cols: usize,
    cells: Cells,
}

fn collect_cells(cells: impl IntoIterator<Item = ((usize, usize), Arrow)>) -> Result<Cells> {
    let mut out = Cells::new();
    for (rc, a) in cells {
        if out.insert(rc, a).is_some() {
            return Err(Error::invalid(format!("cell {rc:?} assigned twice")));
        }
    }
    Ok(out)
}

impl AltTableau {
    pub fn new(
        rows: usize,
        cols: usize,
        cells: impl IntoIterator<Item = ((usize, usize), Arrow)>,
    ) -> Result<Self> {
        let cells = collect_cells(cells)?;
        for &(r, c) in cells.keys() {
            if r < 1 || r > rows || c < 1 || c > cols {
                return Err(Error::invalid(format!("cell ({r},{c}) outside {rows}x{cols}")));
            }
        }
        if let Some(msg) = pointing_violation(&cells) {
            return Err(Error::invalid(msg));
        }
        Ok(AltTableau { rows, cols, cells })
    }

    pub fn empty(rows: usize, cols: usize) -> Self {
        AltTableau {
            rows,
            cols,
            cells: Cells::new(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Option<Arrow> {
        self.cells.get(&(r, c)).copied()
    }

    pub fn cells(&self) -> impl Iterator<Item = (usize, usize, Arrow)> + '_ {
        self.cells.iter().map(|(&(r, c), &a)| (r, c, a))
    }

    fn left_col_of_row(&self, r: usize) -> Option<usize> {
        self.cells
            .range((r, 0)..(r + 1, 0))
            .find(|(_, &a)| a == Arrow::Left)
            .map(|(&(_, c), _)| c)
    }

    /// Stair weight: within the maximal top prefix of rows that each contain
    /// a left arrow, counts the rows whose arrow sits strictly left of every
    /// arrow above it.
    pub fn weight_st(&self) -> usize {
        let mut w = 0;
        let mut min_col = usize::MAX;
        for r in 1..=self.rows {
            match self.left_col_of_row(r) {
                None => break,
                Some(c) => {
                    if c < min_col {
                        w += 1;
                        min_col = c;
                    }
                }
            }
        }
        w
    }

    /// Number of columns containing a left arrow but no down arrow.
    pub fn weight_left(&self) -> usize {
        (1..=self.cols)
            .filter(|&c| {
                let mut has_left = false;
                let mut has_down = false;
                for (_, &a) in self.cells.iter().filter(|(&(_, cc), _)| cc == c) {
                    match a {
                        Arrow::Left => has_left = true,
                        Arrow::Down => has_down = true,
                    }
                }
                has_left && !has_down
            })
            .count()
    }

    /// Adds the missing arrows: a left arrow in column 0 of every row without
    /// one and a down arrow in the bottom row of every column without one.
    pub fn pad(&self) -> PackedTableau {
        let mut cells = self.cells.clone();
        for r in 1..=self.rows {
            if self.left_col_of_row(r).is_none() {
                cells.insert((r, 0), Arrow::Left);
            }
        }
        for c in 1..=self.cols {
            let has_down = self
                .cells
                .iter()
                .any(|(&(_, cc), &a)| cc == c && a == Arrow::Down);
            if !has_down {
                cells.insert((self.rows + 1, c), Arrow::Down);
            }
        }
        PackedTableau::new(self.rows, self.cols, cells).expect("padding a valid tableau")
    }

    /// Grid of `.` `<` `v`, one text row per tableau row.
    pub fn render(&self) -> String {
        render_grid(1, self.rows, 1, self.cols, |r, c| self.get(r, c))
    }
}

/// Packed alternative tableau of logical size `n x k`, stored on the
/// `(n+1) x (k+1)` grid with rows `1..=n+1` and columns `0..=k`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PackedTableau {
    n: usize,
    k: usize,
    cells: Cells,
}

impl PackedTableau {
    pub fn new(
        n: usize,
        k: usize,
        cells: impl IntoIterator<Item = ((usize, usize), Arrow)>,
    ) -> Result<Self> {
        let cells = collect_cells(cells)?;
        for (&(r, c), &a) in &cells {
            if r < 1 || r > n + 1 || c > k {
                return Err(Error::invalid(format!("cell ({r},{c}) outside packed {n}x{k}")));
            }
            if a == Arrow::Left && r == n + 1 {
                return Err(Error::invalid("left arrow in the bottom row"));
            }
            if a == Arrow::Down && c == 0 {
                return Err(Error::invalid("down arrow in the leftmost column"));
            }
        }
        for r in 1..=n {
            let lefts = cells
                .range((r, 0)..(r + 1, 0))
                .filter(|(_, &a)| a == Arrow::Left)
                .count();
            if lefts != 1 {
                return Err(Error::invalid(format!("row {r} has {lefts} left arrows")));
            }
        }
        for c in 1..=k {
            let downs = cells
                .iter()
                .filter(|(&(_, cc), &a)| cc == c && a == Arrow::Down)
                .count();
            if downs != 1 {
                return Err(Error::invalid(format!("column {c} has {downs} down arrows")));
            }
        }
        if let Some(msg) = pointing_violation(&cells) {
            return Err(Error::invalid(msg));
        }
        Ok(PackedTableau { n, k, cells })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn get(&self, r: usize, c: usize) -> Option<Arrow> {
        self.cells.get(&(r, c)).copied()
    }

    pub fn cells(&self) -> impl Iterator<Item = (usize, usize, Arrow)> + '_ {
        self.cells.iter().map(|(&(r, c), &a)| (r, c, a))
    }

    fn down_row_of_col(&self, c: usize) -> Option<usize> {
        self.cells
            .iter()
            .find(|(&(_, cc), &a)| cc == c && a == Arrow::Down)
            .map(|(&(r, _), _)| r)
    }

    fn left_col_of_row(&self, r: usize) -> Option<usize> {
        self.cells
            .range((r, 0)..(r + 1, 0))
            .find(|(_, &a)| a == Arrow::Left)
            .map(|(&(_, c), _)| c)
    }

    fn col_has_left(&self, c: usize) -> bool {
        self.cells
            .iter()
            .any(|(&(_, cc), &a)| cc == c && a == Arrow::Left)
    }

    fn row_has_down(&self, r: usize) -> bool {
        self.cells
            .range((r, 0)..(r + 1, 0))
            .any(|(_, &a)| a == Arrow::Down)
    }

    /// Number of columns containing a left arrow whose down arrow sits in
    /// the bottom row.
    pub fn weight_left(&self) -> usize {
        (1..=self.k)
            .filter(|&c| self.col_has_left(c) && self.down_row_of_col(c) == Some(self.n + 1))
            .count()
    }

    /// Number of rows containing a down arrow whose left arrow sits in the
    /// leftmost column.
    pub fn weight_down(&self) -> usize {
        (1..=self.n)
            .filter(|&r| self.row_has_down(r) && self.left_col_of_row(r) == Some(0))
            .count()
    }

    /// Deletes the bottom row and the leftmost column.
    pub fn cut(&self) -> AltTableau {
        let cells = self
            .cells
            .iter()
            .filter(|(&(r, c), _)| r <= self.n && c >= 1)
            .map(|(&rc, &a)| (rc, a));
        AltTableau::new(self.n, self.k, cells).expect("cutting a valid packed tableau")
    }

    /// Weight-exchanging involution between the two packed weights.
    ///
    /// Both marked sets are read from the input and all slides applied
    /// simultaneously: marked columns move their bottom down arrow up to the
    /// lowest left arrow (which retreats to column 0); marked rows move
    /// their column-0 left arrow right to the leftmost down arrow (which
    /// drops to the bottom row).
    pub fn dual_involution(&self) -> Result<PackedTableau> {
        let marked_cols: Vec<usize> = (1..=self.k)
            .filter(|&c| self.col_has_left(c) && self.down_row_of_col(c) == Some(self.n + 1))
            .collect();
        let marked_rows: Vec<usize> = (1..=self.n)
            .filter(|&r| self.row_has_down(r) && self.left_col_of_row(r) == Some(0))
            .collect();

        let mut removals: Vec<(usize, usize)> = Vec::new();
        let mut additions: Vec<((usize, usize), Arrow)> = Vec::new();
        for &c in &marked_cols {
            let lowest_left = self
                .cells
                .iter()
                .filter(|(&(_, cc), &a)| cc == c && a == Arrow::Left)
                .map(|(&(r, _), _)| r)
                .max()
                .expect("marked column has a left arrow");
            removals.push((self.n + 1, c));
            removals.push((lowest_left, c));
            additions.push(((lowest_left, c), Arrow::Down));
            additions.push(((lowest_left, 0), Arrow::Left));
        }
        for &r in &marked_rows {
            let leftmost_down = self
                .cells
                .range((r, 0)..(r + 1, 0))
                .filter(|(_, &a)| a == Arrow::Down)
                .map(|(&(_, c), _)| c)
                .min()
                .expect("marked row has a down arrow");
            removals.push((r, 0));
            removals.push((r, leftmost_down));
            additions.push(((r, leftmost_down), Arrow::Left));
            additions.push(((self.n + 1, leftmost_down), Arrow::Down));
        }

        let mut cells = self.cells.clone();
        for rc in removals {
            cells.remove(&rc);
        }
        for (rc, a) in additions {
            if cells.insert(rc, a).is_some() {
                return Err(Error::invalid(format!("involution slide collides at {rc:?}")));
            }
        }
        PackedTableau::new(self.n, self.k, cells)
    }

    /// Reflection across the main diagonal onto a `k x n` packed tableau:
    /// bottom row and leftmost column trade places and the arrows flip.
    pub fn transpose(&self) -> Result<PackedTableau> {
        let cells = self.cells.iter().map(|(&(r, c), &a)| {
            let flipped = match a {
                Arrow::Left => Arrow::Down,
                Arrow::Down => Arrow::Left,
            };
            ((self.k + 1 - c, self.n + 1 - r), flipped)
        });
        PackedTableau::new(self.k, self.n, cells.collect::<Cells>())
    }

    pub fn render(&self) -> String {
        render_grid(1, self.n + 1, 0, self.k, |r, c| self.get(r, c))
    }
}

fn render_grid(
    r0: usize,
    r1: usize,
    c0: usize,
    c1: usize,
    get: impl Fn(usize, usize) -> Option<Arrow>,
) -> String {
    let mut out = String::new();
    for r in r0..=r1 {
        for c in c0..=c1 {
            out.push(match get(r, c) {
                Some(Arrow::Left) => '<',
                Some(Arrow::Down) => 'v',
                None => '.',
            });
        }
        out.push('\n');
    }
    out
}

/// Single tableau column of the stepwise bijection, positions `1..=height`
/// top to bottom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrowColumn {
    height: usize,
    entries: BTreeMap<usize, Arrow>,
}

impl ArrowColumn {
    pub fn new(height: usize, entries: impl IntoIterator<Item = (usize, Arrow)>) -> Result<Self> {
        let entries: BTreeMap<usize, Arrow> = entries.into_iter().collect();
        let mut down_pos = None;
        for (&pos, &a) in &entries {
            if pos < 1 || pos > height {
                return Err(Error::invalid(format!("position {pos} outside column")));
            }
            if a == Arrow::Down {
                if down_pos.is_some() {
                    return Err(Error::invalid("two down arrows in one column"));
                }
                down_pos = Some(pos);
            }
        }
        if let Some(d) = down_pos {
            if entries.keys().any(|&p| p > d) {
                return Err(Error::invalid("entry below the down arrow"));
            }
        }
        Ok(ArrowColumn { height, entries })
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, Arrow)> + '_ {
        self.entries.iter().map(|(&p, &a)| (p, a))
    }

    pub fn left_count(&self) -> usize {
        self.entries.values().filter(|&&a| a == Arrow::Left).count()
    }
}

/// Calls `f` with every alternative tableau of size `n x k`.
///
/// Depth-first over the cells in row-major order with immediate pruning: a
/// left arrow must be the first entry of its row, and a down arrow seals its
/// column for all later rows.
pub fn for_each_alt(n: usize, k: usize, mut f: impl FnMut(&AltTableau)) {
    let mut col_blocked = vec![false; k + 1];
    let mut stack: Vec<((usize, usize), Arrow)> = Vec::new();
    #[allow(clippy::too_many_arguments)]
    fn rec(
        n: usize,
        k: usize,
        r: usize,
        c: usize,
        row_has_entry: bool,
        col_blocked: &mut Vec<bool>,
        stack: &mut Vec<((usize, usize), Arrow)>,
        f: &mut impl FnMut(&AltTableau),
    ) {
        if r > n {
            let t = AltTableau {
                rows: n,
                cols: k,
                cells: stack.iter().copied().collect(),
            };
            debug_assert!(AltTableau::new(n, k, t.cells.clone()).is_ok());
            f(&t);
            return;
        }
        let (nr, nc, next_fresh) = if c == k { (r + 1, 1, true) } else { (r, c + 1, false) };
        macro_rules! step {
            ($row_entry:expr) => {
                rec(
                    n,
                    k,
                    nr,
                    nc,
                    if next_fresh { false } else { $row_entry },
                    col_blocked,
                    stack,
                    f,
                )
            };
        }

        // empty cell
        step!(row_has_entry);
        // a sealed column (a down arrow above) admits no entry at all
        if !col_blocked[c] {
            // left arrow: needs the whole row so far empty
            if !row_has_entry {
                stack.push(((r, c), Arrow::Left));
                step!(true);
                stack.pop();
            }
            col_blocked[c] = true;
            stack.push(((r, c), Arrow::Down));
            step!(true);
            stack.pop();
            col_blocked[c] = false;
        }
    }
    if n == 0 || k == 0 {
        f(&AltTableau::empty(n, k));
        return;
    }
    rec(n, k, 1, 1, false, &mut col_blocked, &mut stack, &mut f);
}

pub fn enumerate_alt(n: usize, k: usize) -> Vec<AltTableau> {
    let mut out = Vec::new();
    for_each_alt(n, k, |t| out.push(t.clone()));
    out.sort();
    out
}

/// Calls `f` with every packed alternative tableau of logical size `n x k`.
///
/// Same sweep as [`for_each_alt`] with the packing constraints driving
/// forced moves: each ordinary row places exactly one left arrow before
/// anything else, and bottom-row cells are forced by whether their column
/// already holds its down arrow.
pub fn for_each_packed(n: usize, k: usize, mut f: impl FnMut(&PackedTableau)) {
    let mut col_down = vec![false; k + 1];
    let mut stack: Vec<((usize, usize), Arrow)> = Vec::new();
    #[allow(clippy::too_many_arguments)]
    fn rec(
        n: usize,
        k: usize,
        r: usize,
        c: usize,
        row_has_left: bool,
        col_down: &mut Vec<bool>,
        stack: &mut Vec<((usize, usize), Arrow)>,
        f: &mut impl FnMut(&PackedTableau),
    ) {
        if r == n + 1 {
            // bottom row is fully forced
            let mut added = 0usize;
            for (cc, has_down) in col_down.iter().enumerate().skip(1) {
                if !has_down {
                    stack.push(((n + 1, cc), Arrow::Down));
                    added += 1;
                }
            }
            let t = PackedTableau {
                n,
                k,
                cells: stack.iter().copied().collect(),
            };
            debug_assert!(PackedTableau::new(n, k, t.cells.clone()).is_ok());
            f(&t);
            for _ in 0..added {
                stack.pop();
            }
            return;
        }
        let (nr, nc, next_fresh) = if c == k { (r + 1, 0, true) } else { (r, c + 1, false) };
        macro_rules! step {
            ($row_left:expr) => {
                rec(
                    n,
                    k,
                    nr,
                    nc,
                    if next_fresh { false } else { $row_left },
                    col_down,
                    stack,
                    f,
                )
            };
        }

        if !row_has_left {
            // the left arrow must be the first entry of its row; past the
            // last column the branch dies
            if c < k {
                step!(false);
            }
            if !col_down[c] {
                stack.push(((r, c), Arrow::Left));
                step!(true);
                stack.pop();
            }
        } else {
            step!(true);
            if c >= 1 && !col_down[c] {
                col_down[c] = true;
                stack.push(((r, c), Arrow::Down));
                step!(true);
                stack.pop();
                col_down[c] = false;
            }
        }
    }
    if n == 0 {
        // single ordinary-row-free grid: every column's down arrow is forced
        // into the bottom row
        let cells: Cells = (1..=k).map(|c| ((1, c), Arrow::Down)).collect();
        f(&PackedTableau { n, k, cells });
        return;
    }
    rec(n, k, 1, 0, false, &mut col_down, &mut stack, &mut f);
}

pub fn enumerate_packed(n: usize, k: usize) -> Vec<PackedTableau> {
    let mut out = Vec::new();
    for_each_packed(n, k, |t| out.push(t.clone()));
    out.sort();
    out
}

#[derive(Serialize, Deserialize)]
struct CellWire {
    r: usize,
    c: usize,
    a: char,
}

#[derive(Serialize, Deserialize)]
struct TableauWire {
    rows: usize,
    cols: usize,
    packed: bool,
    cells: Vec<CellWire>,
}

fn cells_to_wire(cells: &Cells) -> Vec<CellWire> {
    cells
        .iter()
        .map(|(&(r, c), &a)| CellWire {
            r,
            c,
            a: match a {
                Arrow::Left => 'L',
                Arrow::Down => 'D',
            },
        })
        .collect()
}

fn cells_from_wire(wire: &[CellWire]) -> Result<Vec<((usize, usize), Arrow)>> {
    wire.iter()
        .map(|cw| {
            let a = match cw.a {
                'L' => Arrow::Left,
                'D' => Arrow::Down,
                other => return Err(Error::parse(format!("bad arrow {other:?}"))),
            };
            Ok(((cw.r, cw.c), a))
        })
        .collect()
}

impl Serialize for AltTableau {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        TableauWire {
            rows: self.rows,
            cols: self.cols,
            packed: false,
            cells: cells_to_wire(&self.cells),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for AltTableau {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let wire = TableauWire::deserialize(deserializer)?;
        if wire.packed {
            return Err(D::Error::custom("expected packed:false"));
        }
        let cells = cells_from_wire(&wire.cells).map_err(D::Error::custom)?;
        AltTableau::new(wire.rows, wire.cols, cells).map_err(D::Error::custom)
    }
}

impl Serialize for PackedTableau {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        TableauWire {
            rows: self.n,
            cols: self.k,
            packed: true,
            cells: cells_to_wire(&self.cells),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PackedTableau {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let wire = TableauWire::deserialize(deserializer)?;
        if !wire.packed {
            return Err(D::Error::custom("expected packed:true"));
        }
        let cells = cells_from_wire(&wire.cells).map_err(D::Error::custom)?;
        PackedTableau::new(wire.rows, wire.cols, cells).map_err(D::Error::custom)
    }
}
