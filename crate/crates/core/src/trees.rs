//! Double alternative trees: a pair of rooted trees on red vertices
//! `0..=n` and blue vertices `0..=k` with roots red 0 and blue 0, edges
//! alternating in color, and every same-color descendant strictly larger
//! than its ancestor.
//!
//! Equivalently (and this is what the enumerator uses): for every vertex
//! with a grandparent, the grandparent carries the same color and must be
//! strictly smaller. That local condition already rules out cycles, since a
//! cycle would force a value to be smaller than itself.

use crate::callan::{Color, Token};
use crate::error::{Error, Result};
use crate::tableaux::{Arrow, PackedTableau};
use crate::CallanPerm;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;
use std::str::FromStr;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DoubleTree {
    n: usize,
    k: usize,
    // red_parent[a-1] is the (blue) parent of red a, blue_parent[j-1] the
    // (red) parent of blue j; roots red 0 and blue 0 are implicit
    red_parent: Vec<Token>,
    blue_parent: Vec<Token>,
}

impl DoubleTree {
    pub fn new(n: usize, k: usize, red_parent: Vec<Token>, blue_parent: Vec<Token>) -> Result<Self> {
        if red_parent.len() != n || blue_parent.len() != k {
            return Err(Error::invalid("parent map size mismatch"));
        }
        for (a, p) in red_parent.iter().enumerate() {
            if p.color != Color::Blue || p.value as usize > k {
                return Err(Error::invalid(format!("red {} has bad parent {p}", a + 1)));
            }
        }
        for (j, p) in blue_parent.iter().enumerate() {
            if p.color != Color::Red || p.value as usize > n {
                return Err(Error::invalid(format!("blue {} has bad parent {p}", j + 1)));
            }
        }
        let tree = DoubleTree {
            n,
            k,
            red_parent,
            blue_parent,
        };
        tree.check_paths()?;
        Ok(tree)
    }

    /// Walks every upward path, rejecting cycles and same-color ancestors
    /// that are not strictly smaller.
    fn check_paths(&self) -> Result<()> {
        let bound = self.n + self.k + 2;
        let vertices = (1..=self.n as u32)
            .map(Token::red)
            .chain((1..=self.k as u32).map(Token::blue));
        for v in vertices {
            let mut cur = v;
            let mut steps = 0;
            while let Some(p) = self.parent(cur) {
                steps += 1;
                if steps > bound {
                    return Err(Error::invalid(format!("cycle through {v}")));
                }
                if p.color == v.color && p.value >= v.value {
                    return Err(Error::invalid(format!(
                        "same-color ancestor {p} of {v} is not smaller"
                    )));
                }
                cur = p;
            }
        }
        Ok(())
    }

    /// Parent lookup; the roots red 0 and blue 0 have none.
    pub fn parent(&self, v: Token) -> Option<Token> {
        if v.value == 0 {
            return None;
        }
        match v.color {
            Color::Red => self.red_parent.get(v.value as usize - 1).copied(),
            Color::Blue => self.blue_parent.get(v.value as usize - 1).copied(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Children of `v`, in decreasing value order.
    pub fn children(&self, v: Token) -> Vec<Token> {
        let mut out: Vec<Token> = match v.color {
            Color::Red => self
                .blue_parent
                .iter()
                .enumerate()
                .filter(|(_, &p)| p == v)
                .map(|(j, _)| Token::blue(j as u32 + 1))
                .collect(),
            Color::Blue => self
                .red_parent
                .iter()
                .enumerate()
                .filter(|(_, &p)| p == v)
                .map(|(a, _)| Token::red(a as u32 + 1))
                .collect(),
        };
        out.sort_by_key(|t| std::cmp::Reverse(t.value));
        out
    }

    /// Number of blue children of red 0 that are not leaves.
    pub fn weight_ch(&self) -> usize {
        self.blue_parent
            .iter()
            .enumerate()
            .filter(|(j, &p)| {
                p == Token::red(0)
                    && self
                        .red_parent
                        .iter()
                        .any(|&rp| rp == Token::blue(*j as u32 + 1))
            })
            .count()
    }

    /// Reads the tree back off a packed tableau: row `r` carries red
    /// `n+1-r`, column `c` carries blue `c`; a left arrow makes its red a
    /// child of its blue, a down arrow the other way around.
    pub fn from_packed(p: &PackedTableau) -> Result<DoubleTree> {
        let n = p.n();
        let k = p.k();
        let mut red_parent = vec![None; n];
        let mut blue_parent = vec![None; k];
        for (r, c, arrow) in p.cells() {
            let red = n + 1 - r;
            match arrow {
                Arrow::Left => red_parent[red - 1] = Some(Token::blue(c as u32)),
                Arrow::Down => blue_parent[c - 1] = Some(Token::red(red as u32)),
            }
        }
        let red_parent: Option<Vec<Token>> = red_parent.into_iter().collect();
        let blue_parent: Option<Vec<Token>> = blue_parent.into_iter().collect();
        match (red_parent, blue_parent) {
            (Some(rp), Some(bp)) => DoubleTree::new(n, k, rp, bp),
            _ => Err(Error::invalid("packed tableau misses mandatory arrows")),
        }
    }

    /// Inverse of [`DoubleTree::from_packed`]: each non-root red contributes
    /// its left arrow, each non-root blue its down arrow.
    pub fn to_packed(&self) -> Result<PackedTableau> {
        let mut cells = Vec::with_capacity(self.n + self.k);
        for (a, p) in self.red_parent.iter().enumerate() {
            let r = self.n - a; // row of red a+1
            cells.push(((r, p.value as usize), Arrow::Left));
        }
        for (j, p) in self.blue_parent.iter().enumerate() {
            let r = self.n + 1 - p.value as usize;
            cells.push(((r, j + 1), Arrow::Down));
        }
        PackedTableau::new(self.n, self.k, cells)
    }

    /// Flattens both trees to the token strings of a double Callan
    /// permutation: a vertex is followed by its subtrees in decreasing root
    /// order, and the leading sentinels are dropped.
    pub fn to_callan(&self) -> Result<CallanPerm> {
        let mut s1 = Vec::new();
        self.flatten(Token::red(0), &mut s1);
        let mut s2 = Vec::new();
        self.flatten(Token::blue(0), &mut s2);
        CallanPerm::new(self.n, self.k, s1[1..].to_vec(), s2[1..].to_vec())
    }

    fn flatten(&self, v: Token, out: &mut Vec<Token>) {
        out.push(v);
        for child in self.children(v) {
            self.flatten(child, out);
        }
    }

    /// Indented outline, roots first, children in decreasing order.
    pub fn render(&self) -> String {
        fn rec(tree: &DoubleTree, v: Token, depth: usize, out: &mut String) {
            out.push_str(&"  ".repeat(depth));
            out.push_str(&v.to_string());
            out.push('\n');
            for child in tree.children(v) {
                rec(tree, child, depth + 1, out);
            }
        }
        let mut out = String::new();
        rec(self, Token::red(0), 0, &mut out);
        rec(self, Token::blue(0), 0, &mut out);
        out
    }
}

/// Calls `f` with every double alternative tree of size `n x k`.
///
/// Red parents range freely over the blue vertices; once they are fixed, the
/// valid parents of each blue vertex are determined independently by the two
/// grandparent constraints, so the blues are filled by a product sweep.
pub fn for_each(n: usize, k: usize, mut f: impl FnMut(&DoubleTree)) {
    let mut red_parent = vec![Token::blue(0); n];
    loop {
        // for each blue j: candidate parents red a with
        //   a = 0, or parent(red a) < blue j and a < every red child of blue j
        let mut min_red_child = vec![u32::MAX; k + 1];
        for (a, p) in red_parent.iter().enumerate() {
            let j = p.value as usize;
            min_red_child[j] = min_red_child[j].min(a as u32 + 1);
        }
        let candidates: Vec<Vec<Token>> = (1..=k)
            .map(|j| {
                let mut c = vec![Token::red(0)];
                for a in 1..=n as u32 {
                    if (red_parent[a as usize - 1].value as usize) < j && a < min_red_child[j] {
                        c.push(Token::red(a));
                    }
                }
                c
            })
            .collect();

        let mut blue_parent = vec![Token::red(0); k];
        product_sweep(&candidates, &mut blue_parent, 0, &mut |bp| {
            let t = DoubleTree {
                n,
                k,
                red_parent: red_parent.clone(),
                blue_parent: bp.to_vec(),
            };
            debug_assert!(t.check_paths().is_ok());
            f(&t);
        });

        // odometer over red parent assignments
        let mut i = 0;
        loop {
            if i == n {
                return;
            }
            if (red_parent[i].value as usize) < k {
                red_parent[i].value += 1;
                break;
            }
            red_parent[i].value = 0;
            i += 1;
        }
    }
}

fn product_sweep(
    candidates: &[Vec<Token>],
    chosen: &mut [Token],
    idx: usize,
    f: &mut impl FnMut(&[Token]),
) {
    if idx == candidates.len() {
        f(chosen);
        return;
    }
    for &c in &candidates[idx] {
        chosen[idx] = c;
        product_sweep(candidates, chosen, idx + 1, f);
    }
}

pub fn enumerate(n: usize, k: usize) -> Vec<DoubleTree> {
    let mut out = Vec::new();
    for_each(n, k, |t| out.push(t.clone()));
    out.sort();
    out
}

#[derive(Serialize, Deserialize)]
struct TreeWire {
    n: usize,
    k: usize,
    #[serde(rename = "redParent")]
    red_parent: BTreeMap<String, String>,
    #[serde(rename = "blueParent")]
    blue_parent: BTreeMap<String, String>,
}

impl Serialize for DoubleTree {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let to_map = |ps: &[Token]| {
            ps.iter()
                .enumerate()
                .map(|(i, p)| ((i + 1).to_string(), p.to_string()))
                .collect()
        };
        TreeWire {
            n: self.n,
            k: self.k,
            red_parent: to_map(&self.red_parent),
            blue_parent: to_map(&self.blue_parent),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DoubleTree {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let wire = TreeWire::deserialize(deserializer)?;
        let from_map = |m: &BTreeMap<String, String>, len: usize| -> std::result::Result<Vec<Token>, D::Error> {
            let mut out = vec![None; len];
            for (key, val) in m {
                let idx: usize = key
                    .parse()
                    .map_err(|_| D::Error::custom(format!("bad vertex key {key:?}")))?;
                if idx < 1 || idx > len {
                    return Err(D::Error::custom(format!("vertex {idx} out of range")));
                }
                out[idx - 1] = Some(Token::from_str(val).map_err(D::Error::custom)?);
            }
            out.into_iter()
                .enumerate()
                .map(|(i, t)| t.ok_or_else(|| D::Error::custom(format!("vertex {} missing", i + 1))))
                .collect()
        };
        let rp = from_map(&wire.red_parent, wire.n)?;
        let bp = from_map(&wire.blue_parent, wire.k)?;
        DoubleTree::new(wire.n, wire.k, rp, bp).map_err(D::Error::custom)
    }
}
