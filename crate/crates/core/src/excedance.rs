//! Permutations of `[n+k+1]` whose excedance set is exactly `[n]`, their
//! cracked-chessboard picture, the reduction map `psi`, and the rook
//! bijection from double Callan permutations.
//!
//! A permutation lives here iff `perm(i) > i` for `i <= n` and
//! `perm(i) <= i` for `i > n`; equivalently its rooks avoid the cracked
//! squares of the board.

use crate::callan::{runs, CallanPerm, Color, Token};
use crate::error::{Error, Result};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::HashMap;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExcPerm {
    n: usize,
    k: usize,
    // values[i-1] = perm(i)
    values: Vec<usize>,
}

/// Board cell (column `i`, row `r`) is usable iff it is compatible with the
/// excedance-set constraint; the complementary cells are "cracked".
pub fn allowed(n: usize, i: usize, r: usize) -> bool {
    (i <= n && r > i) || (i > n && r <= i)
}

impl ExcPerm {
    pub fn new(n: usize, k: usize, values: Vec<usize>) -> Result<Self> {
        let len = values.len();
        if len != n + k + 1 {
            return Err(Error::invalid(format!(
                "permutation length {len} does not match n + k + 1"
            )));
        }
        let mut seen = vec![false; len + 1];
        for &v in &values {
            if v < 1 || v > len || seen[v] {
                return Err(Error::invalid("not a permutation"));
            }
            seen[v] = true;
        }
        for (idx, &v) in values.iter().enumerate() {
            let i = idx + 1;
            if !allowed(n, i, v) {
                return Err(Error::invalid(format!(
                    "excedance set is not [{n}]: perm({i}) = {v}"
                )));
            }
        }
        Ok(ExcPerm { n, k, values })
    }

    /// Infers `n` (and hence `k`) from the excedance set of the values.
    pub fn from_values(values: Vec<usize>) -> Result<Self> {
        let n = values
            .iter()
            .enumerate()
            .filter(|&(idx, &v)| v > idx + 1)
            .count();
        let len = values.len();
        if len < n + 1 {
            return Err(Error::invalid("empty permutation"));
        }
        ExcPerm::new(n, len - n - 1, values)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// `perm(i)` with 1-based `i`.
    pub fn at(&self, i: usize) -> usize {
        self.values[i - 1]
    }

    /// Left-to-right minima over positions `n+1 ..= n+k+1`, reduced by one.
    pub fn weight_lr(&self) -> usize {
        let mut count = 0usize;
        let mut min_so_far = usize::MAX;
        for &v in &self.values[self.n..] {
            if v < min_so_far {
                count += 1;
                min_so_far = v;
            }
        }
        count - 1
    }

    /// Removes the largest letter and last position, landing in a smaller
    /// family.
    ///
    /// With `N = n+k+1`, `a = perm^{-1}(N)` and `b = perm(N)`: case 1
    /// (`b = N`) restricts to the first `N-1` positions; case 2 (`b > a`)
    /// additionally rewires `a` to `b`; case 3 (`b <= a`) deletes the
    /// positions `D = {b <= i < a : perm(i) = i+1}` together with `a` and
    /// `N`, then relabels positions and values order-isomorphically. Cases
    /// 1 and 2 preserve the weight, as does case 3 when `b > 1`; case 3
    /// with `b = 1` lowers it by one.
    pub fn psi(&self) -> Result<ExcPerm> {
        if self.k == 0 {
            return Err(Error::domain("psi needs k >= 1"));
        }
        let len = self.values.len();
        let b = self.values[len - 1];
        if b == len {
            return ExcPerm::new(self.n, self.k - 1, self.values[..len - 1].to_vec());
        }
        let a = self.values.iter().position(|&v| v == len).expect("N occurs") + 1;
        if b > a {
            let mut values = self.values[..len - 1].to_vec();
            values[a - 1] = b;
            return ExcPerm::new(self.n, self.k - 1, values);
        }
        // case 3
        let d: Vec<usize> = (b..a).filter(|&i| self.values[i - 1] == i + 1).collect();
        let mut dropped_pos = vec![false; len + 1];
        for &i in &d {
            dropped_pos[i] = true;
        }
        dropped_pos[a] = true;
        dropped_pos[len] = true;
        let kept: Vec<usize> = (1..=len).filter(|&i| !dropped_pos[i]).collect();
        let mut kept_values: Vec<usize> = kept.iter().map(|&i| self.values[i - 1]).collect();
        let mut sorted = kept_values.clone();
        sorted.sort_unstable();
        for v in kept_values.iter_mut() {
            *v = sorted.binary_search(v).expect("kept value") + 1;
        }
        ExcPerm::new(self.n - d.len() - 1, self.k - 1, kept_values)
    }

    /// Which of the three `psi` cases applies (1, 2, or 3).
    pub fn psi_case(&self) -> Result<u8> {
        if self.k == 0 {
            return Err(Error::domain("psi needs k >= 1"));
        }
        let len = self.values.len();
        let b = self.values[len - 1];
        if b == len {
            return Ok(1);
        }
        let a = self.values.iter().position(|&v| v == len).expect("N occurs") + 1;
        Ok(if b > a { 2 } else { 3 })
    }

    /// Board picture: cracked squares `#`, rooks `R`, free cells `.`;
    /// row `N` is printed first.
    pub fn render_board(&self) -> String {
        let len = self.values.len();
        let mut out = String::new();
        for r in (1..=len).rev() {
            for i in 1..=len {
                out.push(if self.values[i - 1] == r {
                    'R'
                } else if allowed(self.n, i, r) {
                    '.'
                } else {
                    '#'
                });
            }
            out.push('\n');
        }
        out
    }
}

/// Calls `f` with every member of the family in lexicographic order of the
/// value sequence; backtracking over the board columns.
pub fn for_each(n: usize, k: usize, mut f: impl FnMut(&ExcPerm)) {
    let len = n + k + 1;
    let mut used = vec![false; len + 1];
    let mut values = Vec::with_capacity(len);
    fn rec(
        n: usize,
        k: usize,
        len: usize,
        used: &mut Vec<bool>,
        values: &mut Vec<usize>,
        f: &mut impl FnMut(&ExcPerm),
    ) {
        if values.len() == len {
            f(&ExcPerm {
                n,
                k,
                values: values.clone(),
            });
            return;
        }
        let i = values.len() + 1;
        for v in 1..=len {
            if used[v] || !allowed(n, i, v) {
                continue;
            }
            used[v] = true;
            values.push(v);
            rec(n, k, len, used, values, f);
            values.pop();
            used[v] = false;
        }
    }
    rec(n, k, len, &mut used, &mut values, &mut f);
}

pub fn enumerate(n: usize, k: usize) -> Vec<ExcPerm> {
    let mut out = Vec::new();
    for_each(n, k, |e| out.push(e.clone()));
    out
}

/// Rook-placement bijection from double Callan permutations.
///
/// On the doubly labeled board (columns left to right red `n..1`, blue
/// `k..0`; rows top to bottom blue `1..k`, red `0..n`) the string
/// `S = S1 b0 S2 r0` places rooks in two passes: every adjacent same-color
/// pair `x y` drops a rook on (row `y`, column `x`) for reds and (row `x`,
/// column `y`) for blues, then the first `n+k+1` tokens claim their column's
/// rook in the topmost free row of the opposite color. Reading the board
/// off by position yields the permutation; `weight_rl` maps to `weight_lr`.
pub fn callan_to_exc(p: &CallanPerm) -> Result<ExcPerm> {
    let n = p.n();
    let k = p.k();
    let len = n + k + 1;
    let mut s: Vec<Token> = p.s1().to_vec();
    s.push(Token::blue(0));
    s.extend_from_slice(p.s2());
    s.push(Token::red(0));

    let mut rook_row: HashMap<Token, Token> = HashMap::new(); // column -> row
    let mut used_rows: HashMap<Token, Token> = HashMap::new(); // row -> column
    let place = |col: Token, row: Token,
                     rook_row: &mut HashMap<Token, Token>,
                     used_rows: &mut HashMap<Token, Token>|
     -> Result<()> {
        if rook_row.insert(col, row).is_some() {
            return Err(Error::invalid(format!("two rooks in column {col}")));
        }
        if used_rows.insert(row, col).is_some() {
            return Err(Error::invalid(format!("two rooks in row {row}")));
        }
        Ok(())
    };

    for w in s.windows(2) {
        let (x, y) = (w[0], w[1]);
        if x.color != y.color {
            continue;
        }
        match x.color {
            Color::Red => place(x, y, &mut rook_row, &mut used_rows)?,
            Color::Blue => place(y, x, &mut rook_row, &mut used_rows)?,
        }
    }

    for &t in s.iter().take(len) {
        if rook_row.contains_key(&t) {
            continue;
        }
        // topmost rows of the opposite color: blue 1..k for reds, red 0..n
        // for blues
        let row = match t.color {
            Color::Red => (1..=k as u32)
                .map(Token::blue)
                .find(|r| !used_rows.contains_key(r)),
            Color::Blue => (0..=n as u32)
                .map(Token::red)
                .find(|r| !used_rows.contains_key(r)),
        }
        .ok_or_else(|| Error::invalid(format!("no free row for column {t}")))?;
        place(t, row, &mut rook_row, &mut used_rows)?;
    }

    if rook_row.len() != len {
        return Err(Error::invalid("rook count mismatch"));
    }

    let col_index = |t: Token| match t.color {
        Color::Red => n + 1 - t.value as usize,
        Color::Blue => n + k + 1 - t.value as usize,
    };
    let row_index = |t: Token| match t.color {
        Color::Red => n + 1 - t.value as usize,
        Color::Blue => n + k + 2 - t.value as usize,
    };
    let mut values = vec![0usize; len];
    for (col, row) in rook_row {
        values[col_index(col) - 1] = row_index(row);
    }
    ExcPerm::new(n, k, values)
}

/// Reads `weight_rl` through the rook bijection; equals
/// `callan_to_exc(p).weight_lr()` by construction of the board labels.
pub fn rook_weight(p: &CallanPerm) -> Result<usize> {
    Ok(callan_to_exc(p)?.weight_lr())
}

/// Positions of the blue-run maxima used by `weight_rl`, for diagnostics.
pub fn blue_run_maxima(p: &CallanPerm) -> Vec<u32> {
    let mut s = p.s1().to_vec();
    s.push(Token::blue(0));
    s.extend_from_slice(p.s2());
    s.push(Token::red(0));
    runs(&s)
        .iter()
        .filter(|r| r.color == Color::Blue)
        .map(|r| *r.values.iter().max().expect("nonempty run"))
        .collect()
}

#[derive(Serialize, Deserialize)]
struct ExcWire {
    #[serde(default)]
    n: Option<usize>,
    #[serde(default)]
    k: Option<usize>,
    perm: Vec<usize>,
}

impl Serialize for ExcPerm {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ExcWire {
            n: Some(self.n),
            k: Some(self.k),
            perm: self.values.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ExcPerm {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let wire = ExcWire::deserialize(deserializer)?;
        let e = ExcPerm::from_values(wire.perm).map_err(D::Error::custom)?;
        if let Some(n) = wire.n {
            if n != e.n {
                return Err(D::Error::custom(format!(
                    "declared n = {n} but excedance set is [{}]",
                    e.n
                )));
            }
        }
        if let Some(k) = wire.k {
            if k != e.k {
                return Err(D::Error::custom(format!("declared k = {k}, expected {}", e.k)));
            }
        }
        Ok(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(values: &[usize]) -> ExcPerm {
        ExcPerm::from_values(values.to_vec()).unwrap()
    }

    #[test]
    fn enumerate_2_1_is_the_listed_seven() {
        let listed = [
            [2, 3, 1, 4],
            [2, 4, 1, 3],
            [2, 4, 3, 1],
            [3, 4, 1, 2],
            [3, 4, 2, 1],
            [4, 3, 1, 2],
            [4, 3, 2, 1],
        ];
        let got = enumerate(2, 1);
        assert_eq!(got.len(), 7);
        for (perm, want) in got.iter().zip(listed.iter()) {
            assert_eq!(perm.values(), want);
        }
    }

    #[test]
    fn enumerate_small() {
        let e11 = enumerate(1, 1);
        let values: Vec<&[usize]> = e11.iter().map(|p| p.values()).collect();
        assert_eq!(values, vec![&[2, 1, 3][..], &[3, 1, 2], &[3, 2, 1]]);
        assert_eq!(enumerate(0, 0), vec![e(&[1])]);
    }

    #[test]
    fn weight_examples() {
        assert_eq!(e(&[7, 5, 3, 2, 4, 6, 1]).weight_lr(), 2);
        let weights: Vec<usize> = enumerate(2, 1).iter().map(ExcPerm::weight_lr).collect();
        assert_eq!(weights, vec![0, 0, 1, 0, 1, 0, 1]);
        assert_eq!(e(&[1]).weight_lr(), 0);
    }

    #[test]
    fn validation_rejects_bad_sets() {
        assert!(ExcPerm::new(1, 1, vec![2, 1, 3]).is_ok());
        assert!(ExcPerm::new(2, 0, vec![2, 1, 3]).is_err()); // wrong n
        assert!(ExcPerm::new(1, 1, vec![2, 2, 3]).is_err()); // not a permutation
        assert!(ExcPerm::new(1, 2, vec![2, 1, 3]).is_err()); // wrong length
    }

    #[test]
    fn psi_cases() {
        // case 1: last value fixed
        assert_eq!(e(&[2, 1, 3]).psi().unwrap(), e(&[2, 1]));
        // case 2: a = 1, b = 2
        assert_eq!(e(&[3, 1, 2]).psi().unwrap(), e(&[2, 1]));
        // case 3: a = 2, b = 1, D = {1}; weight drops from 1 to 0
        let x = e(&[2, 4, 3, 1]);
        assert_eq!(x.psi_case().unwrap(), 3);
        assert_eq!(x.weight_lr(), 1);
        let y = x.psi().unwrap();
        assert_eq!(y, e(&[1]));
        assert_eq!(y.weight_lr(), 0);
        assert!(e(&[1]).psi().is_err());
    }

    #[test]
    fn cracked_cells() {
        assert!(!allowed(2, 1, 1));
        assert!(allowed(2, 1, 2));
        assert!(allowed(2, 7, 7));
        for perm in enumerate(2, 1) {
            for (idx, &v) in perm.values().iter().enumerate() {
                assert!(allowed(2, idx + 1, v));
            }
        }
    }

    #[test]
    fn rook_bijection_worked_example() {
        let p = CallanPerm::from_strs(3, 3, "b2 b1 r3", "r2 b3 r1").unwrap();
        let image = callan_to_exc(&p).unwrap();
        assert_eq!(image.values(), &[7, 5, 4, 1, 3, 6, 2]);
        assert_eq!(p.weight_rl(), 0);
        assert_eq!(image.weight_lr(), 0);
    }

    #[test]
    fn rook_bijection_1x1() {
        let images: Vec<ExcPerm> = crate::callan::enumerate(1, 1)
            .iter()
            .map(|p| callan_to_exc(p).unwrap())
            .collect();
        let mut sorted = images.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 3, "bijective onto the three members");
        for (p, img) in crate::callan::enumerate(1, 1).iter().zip(&images) {
            assert_eq!(p.weight_rl(), img.weight_lr(), "{p}");
        }
    }

    #[test]
    fn render_board_shape() {
        // columns allow rows: col 1 -> {2,3}, col 2 -> {1,2}, col 3 -> {1,2,3}
        let s = e(&[2, 1, 3]).render_board();
        assert_eq!(s, ".#R\nR..\n#R.\n");
    }

    #[test]
    fn json_round_trip() {
        let x = e(&[2, 4, 3, 1]);
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(json, r#"{"n":2,"k":1,"perm":[2,4,3,1]}"#);
        let back: ExcPerm = serde_json::from_str(&json).unwrap();
        assert_eq!(back, x);
        // n and k may be omitted and are inferred
        let implicit: ExcPerm = serde_json::from_str(r#"{"perm":[2,1,3]}"#).unwrap();
        assert_eq!(implicit, e(&[2, 1, 3]));
        assert!(serde_json::from_str::<ExcPerm>(r#"{"n":1,"k":0,"perm":[2,1,3]}"#).is_err());
        assert!(serde_json::from_str::<ExcPerm>(r#"{"perm":[1,1]}"#).is_err());
    }
}
