//! Double Callan permutations: pairs of colored-token strings `(S1, S2)`
//! over red `1..=n` and blue `1..=k` where every maximal same-color run is
//! strictly decreasing, `S1` starts blue and `S2` starts red.
//!
//! The run decomposition `S1 = B1 R1 ... Bl Rl B(l+1)` pairs each blue run
//! with the red run after it (in `S2`, each red run with the blue run after
//! it); the trailing runs `B(l+1)` and `R(m+1)` are the unpaired "extra"
//! blocks. Three weights live here (`weight_lr`, `weight_br`, `weight_rl`)
//! along with the reduction map [`CallanPerm::phi`] that removes the largest
//! blue token and is the engine of the stepwise bijection to tableaux.

use crate::error::{Error, Result};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeSet;
use std::fmt;
use std::ops::Range;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Color {
    Blue,
    Red,
}

impl Color {
    pub fn other(self) -> Color {
        match self {
            Color::Blue => Color::Red,
            Color::Red => Color::Blue,
        }
    }
}

/// A colored value. Value 0 is the sentinel (`r0`, `b0`) used inside the
/// weight and map constructions; stored permutations never contain it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Token {
    pub color: Color,
    pub value: u32,
}

impl Token {
    pub const fn red(value: u32) -> Self {
        Token {
            color: Color::Red,
            value,
        }
    }

    pub const fn blue(value: u32) -> Self {
        Token {
            color: Color::Blue,
            value,
        }
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.color {
            Color::Red => 'r',
            Color::Blue => 'b',
        };
        write!(f, "{}{}", c, self.value)
    }
}

impl FromStr for Token {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut chars = s.chars();
        let color = match chars.next() {
            Some('r') => Color::Red,
            Some('b') => Color::Blue,
            _ => return Err(Error::parse(format!("bad token {s:?}"))),
        };
        let value: u32 = chars
            .as_str()
            .parse()
            .map_err(|_| Error::parse(format!("bad token {s:?}")))?;
        Ok(Token { color, value })
    }
}

/// Parses a whitespace-separated token list such as `"b6 r7 r6"`.
pub fn parse_tokens(s: &str) -> Result<Vec<Token>> {
    s.split_whitespace().map(Token::from_str).collect()
}

pub fn tokens_to_string(tokens: &[Token]) -> String {
    tokens
        .iter()
        .map(Token::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

/// One maximal same-color run, values in string order (descending).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Run {
    pub color: Color,
    pub values: Vec<u32>,
}

/// Maximal same-color runs of a token sequence, in order. Adjacent runs have
/// different colors and each run is nonempty.
pub fn runs(tokens: &[Token]) -> Vec<Run> {
    let mut out: Vec<Run> = Vec::new();
    for t in tokens {
        match out.last_mut() {
            Some(run) if run.color == t.color => run.values.push(t.value),
            _ => out.push(Run {
                color: t.color,
                values: vec![t.value],
            }),
        }
    }
    out
}

fn run_spans(tokens: &[Token]) -> Vec<(Color, Range<usize>)> {
    let mut out: Vec<(Color, Range<usize>)> = Vec::new();
    for (i, t) in tokens.iter().enumerate() {
        match out.last_mut() {
            Some((c, range)) if *c == t.color => range.end = i + 1,
            _ => out.push((t.color, i..i + 1)),
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CallanPerm {
    n: usize,
    k: usize,
    s1: Vec<Token>,
    s2: Vec<Token>,
}

impl CallanPerm {
    pub fn new(n: usize, k: usize, s1: Vec<Token>, s2: Vec<Token>) -> Result<Self> {
        Self::check(n, k, &s1, &s2)?;
        Ok(CallanPerm { n, k, s1, s2 })
    }

    /// Convenience constructor from token strings, e.g. `("b1 r1", "")`.
    pub fn from_strs(n: usize, k: usize, s1: &str, s2: &str) -> Result<Self> {
        CallanPerm::new(n, k, parse_tokens(s1)?, parse_tokens(s2)?)
    }

    fn unchecked(n: usize, k: usize, s1: Vec<Token>, s2: Vec<Token>) -> Self {
        debug_assert!(Self::check(n, k, &s1, &s2).is_ok());
        CallanPerm { n, k, s1, s2 }
    }

    /// Validates the three invariants: token multiset, starting colors, and
    /// decreasing same-color runs.
    pub fn check(n: usize, k: usize, s1: &[Token], s2: &[Token]) -> Result<()> {
        let mut reds = BTreeSet::new();
        let mut blues = BTreeSet::new();
        for t in s1.iter().chain(s2.iter()) {
            if t.value == 0 {
                return Err(Error::invalid("value 0 is reserved for sentinels"));
            }
            let (set, bound) = match t.color {
                Color::Red => (&mut reds, n),
                Color::Blue => (&mut blues, k),
            };
            if t.value as usize > bound || !set.insert(t.value) {
                return Err(Error::invalid(format!("token {t} out of range or repeated")));
            }
        }
        if reds.len() != n || blues.len() != k {
            return Err(Error::invalid("token multiset incomplete"));
        }
        if let Some(t) = s1.first() {
            if t.color != Color::Blue {
                return Err(Error::invalid("s1 must start blue"));
            }
        }
        if let Some(t) = s2.first() {
            if t.color != Color::Red {
                return Err(Error::invalid("s2 must start red"));
            }
        }
        for s in [s1, s2] {
            for w in s.windows(2) {
                if w[0].color == w[1].color && w[0].value <= w[1].value {
                    return Err(Error::invalid(format!(
                        "same-color pair {} {} not decreasing",
                        w[0], w[1]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn is_valid(n: usize, k: usize, s1: &[Token], s2: &[Token]) -> bool {
        Self::check(n, k, s1, s2).is_ok()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn s1(&self) -> &[Token] {
        &self.s1
    }

    pub fn s2(&self) -> &[Token] {
        &self.s2
    }

    fn find(&self, t: Token) -> Option<(usize, usize)> {
        if let Some(i) = self.s1.iter().position(|&x| x == t) {
            return Some((1, i));
        }
        self.s2.iter().position(|&x| x == t).map(|i| (2, i))
    }

    /// Weight from the left-to-right minima of the paired blue-run minima of
    /// `S1` (the trailing blue run does not contribute).
    pub fn weight_lr(&self) -> usize {
        let rs = runs(&self.s1);
        let mut count = 0usize;
        let mut min_so_far = u32::MAX;
        for (idx, run) in rs.iter().enumerate() {
            if run.color != Color::Blue || idx + 1 == rs.len() {
                continue;
            }
            let m = *run.values.iter().min().expect("runs are nonempty");
            if m < min_so_far {
                count += 1;
                min_so_far = m;
            }
        }
        count
    }

    /// Weight from the blue-marking walk over red values `n, n-1, ..., 1`.
    ///
    /// The walk marks the blue token just before red `n` (stopping with no
    /// marks if `S2` starts with red `n`), then for each smaller red value
    /// stops if that red leads `S2`, and otherwise marks its predecessor when
    /// that predecessor is blue and smaller than the previous mark.
    pub fn weight_br(&self) -> usize {
        if self.n == 0 {
            return 0;
        }
        let mut marks = 0usize;
        let mut last_mark = 0u32;
        for v in (1..=self.n as u32).rev() {
            let (string, idx) = self.find(Token::red(v)).expect("red token present");
            if string == 2 && idx == 0 {
                return marks;
            }
            let prev = if string == 1 {
                self.s1[idx - 1]
            } else {
                self.s2[idx - 1]
            };
            if v == self.n as u32 {
                debug_assert_eq!(prev.color, Color::Blue, "largest red follows a blue");
                marks = 1;
                last_mark = prev.value;
            } else if prev.color == Color::Blue && prev.value < last_mark {
                marks += 1;
                last_mark = prev.value;
            }
        }
        marks
    }

    /// Weight from the right-to-left maxima of the blue-run maxima of
    /// `S = S1 b0 S2 r0`, reduced by one.
    pub fn weight_rl(&self) -> usize {
        let mut s = self.s1.clone();
        s.push(Token::blue(0));
        s.extend_from_slice(&self.s2);
        s.push(Token::red(0));
        let pi: Vec<u32> = runs(&s)
            .iter()
            .filter(|r| r.color == Color::Blue)
            .map(|r| *r.values.iter().max().expect("runs are nonempty"))
            .collect();
        let mut count = 0usize;
        let mut max_so_far: Option<u32> = None;
        for &v in pi.iter().rev() {
            if max_so_far.is_none_or(|m| v > m) {
                count += 1;
                max_so_far = Some(v);
            }
        }
        count - 1
    }

    /// Removes blue `k` and reduces to a permutation with `k - 1` blues.
    ///
    /// Case 1: blue `k` sits in the trailing (unpaired) blue run of `S1`;
    /// delete the token. Case 2: blue `k` is alone in the first blue run of
    /// `S1` and that run is paired; delete the run and its red partner.
    /// Case 3: otherwise replace the paired red run by the sentinel `r0`,
    /// delete blue `k`, and restore decreasing order in any red runs that
    /// merged. Red values are then relabeled onto `1..=n'`.
    pub fn phi(&self) -> Result<CallanPerm> {
        if self.k == 0 {
            return Err(Error::domain("phi needs at least one blue token"));
        }
        let target = Token::blue(self.k as u32);
        let mut s1 = self.s1.clone();
        let mut s2 = self.s2.clone();

        if let Some(pos) = self.s1.iter().position(|&t| t == target) {
            let spans = run_spans(&s1);
            let run_idx = spans.iter().position(|(_, r)| r.contains(&pos)).unwrap();
            let span = &spans[run_idx].1;
            if run_idx + 1 == spans.len() {
                // case 1: trailing blue run, possibly the whole of S1
                s1.retain(|&t| t != target);
            } else if run_idx == 0 && span.len() == 1 {
                // case 2: alone in the first ordinary block; drop the Callan pair
                let red_span = spans[1].1.clone();
                s1.drain(0..red_span.end);
            } else {
                // case 3 in S1: paired red run follows the run holding blue k
                let red_span = spans[run_idx + 1].1.clone();
                s1 = replace_with_sentinel(&s1, target, red_span);
            }
        } else {
            // blue k in S2 is always case 3; its paired red run precedes it
            let pos = s2
                .iter()
                .position(|&t| t == target)
                .ok_or_else(|| Error::invalid("blue k not present"))?;
            let spans = run_spans(&s2);
            let run_idx = spans.iter().position(|(_, r)| r.contains(&pos)).unwrap();
            let red_span = spans[run_idx - 1].1.clone();
            s2 = replace_with_sentinel(&s2, target, red_span);
        }

        normalize_runs(&mut s1);
        normalize_runs(&mut s2);
        let n_prime = standardize_reds_joint(&mut s1, &mut s2);
        CallanPerm::new(n_prime, self.k - 1, s1, s2)
    }
}

/// Deletes `target` and replaces the red run at `red_span` by the single
/// sentinel `r0`.
fn replace_with_sentinel(tokens: &[Token], target: Token, red_span: Range<usize>) -> Vec<Token> {
    let mut out = Vec::with_capacity(tokens.len());
    for (i, &t) in tokens.iter().enumerate() {
        if t == target {
            continue;
        }
        if red_span.contains(&i) {
            if i == red_span.start {
                out.push(Token::red(0));
            }
            continue;
        }
        out.push(t);
    }
    out
}

/// Re-sorts every maximal same-color group descending. Only the sentinel can
/// actually be out of place after a case-3 merge.
fn normalize_runs(tokens: &mut [Token]) {
    let spans = run_spans(tokens);
    for (_, span) in spans {
        tokens[span].sort_by_key(|t| std::cmp::Reverse(t.value));
    }
}

/// Relabels red values in both strings order-isomorphically onto `1..=count`;
/// blues are untouched. Returns the red count.
fn standardize_reds_joint(s1: &mut [Token], s2: &mut [Token]) -> usize {
    let mut values: Vec<u32> = s1
        .iter()
        .chain(s2.iter())
        .filter(|t| t.color == Color::Red)
        .map(|t| t.value)
        .collect();
    values.sort_unstable();
    let rank = |v: u32| values.binary_search(&v).expect("red value present") as u32 + 1;
    for t in s1.iter_mut().chain(s2.iter_mut()) {
        if t.color == Color::Red {
            t.value = rank(t.value);
        }
    }
    values.len()
}

/// Relabels the red values of one token sequence order-isomorphically onto
/// `1..=count`, leaving blues untouched.
pub fn standardize_reds(tokens: &mut [Token]) {
    let mut empty: [Token; 0] = [];
    standardize_reds_joint(tokens, &mut empty);
}

/// Calls `f` with every double Callan permutation of size `n x k`, in a
/// deterministic (not sorted) generation order.
pub fn for_each(n: usize, k: usize, mut f: impl FnMut(&CallanPerm)) {
    let reds: Vec<u32> = (1..=n as u32).collect();
    let blues: Vec<u32> = (1..=k as u32).collect();
    for red_mask in 0..(1u64 << n) {
        let (reds1, reds2) = split(&reds, red_mask);
        for blue_mask in 0..(1u64 << k) {
            let (blues1, blues2) = split(&blues, blue_mask);
            let s1s = strings_over(&reds1, &blues1, Color::Blue);
            if s1s.is_empty() {
                continue;
            }
            let s2s = strings_over(&reds2, &blues2, Color::Red);
            for s1 in &s1s {
                for s2 in &s2s {
                    f(&CallanPerm::unchecked(n, k, s1.clone(), s2.clone()));
                }
            }
        }
    }
}

/// All double Callan permutations of size `n x k` in canonical order
/// (lexicographic on the `(s1, s2)` token sequences, blue before red).
pub fn enumerate(n: usize, k: usize) -> Vec<CallanPerm> {
    let mut out = Vec::new();
    for_each(n, k, |p| out.push(p.clone()));
    out.sort();
    out
}

fn split(values: &[u32], mask: u64) -> (Vec<u32>, Vec<u32>) {
    let mut a = Vec::new();
    let mut b = Vec::new();
    for (i, &v) in values.iter().enumerate() {
        if mask >> i & 1 == 1 {
            a.push(v);
        } else {
            b.push(v);
        }
    }
    (a, b)
}

/// All orderings of the given tokens whose maximal same-color runs decrease
/// and whose first token (if any) has the given color.
fn strings_over(reds: &[u32], blues: &[u32], start: Color) -> Vec<Vec<Token>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(reds.len() + blues.len());
    let mut avail_red: Vec<u32> = reds.to_vec();
    let mut avail_blue: Vec<u32> = blues.to_vec();
    extend_string(&mut avail_red, &mut avail_blue, &mut cur, start, &mut out);
    out
}

fn extend_string(
    avail_red: &mut Vec<u32>,
    avail_blue: &mut Vec<u32>,
    cur: &mut Vec<Token>,
    start: Color,
    out: &mut Vec<Vec<Token>>,
) {
    if avail_red.is_empty() && avail_blue.is_empty() {
        out.push(cur.clone());
        return;
    }
    let last = cur.last().copied();
    for color in [Color::Blue, Color::Red] {
        if last.is_none() && color != start {
            continue;
        }
        let avail = match color {
            Color::Red => &avail_red,
            Color::Blue => &avail_blue,
        };
        let candidates: Vec<u32> = avail
            .iter()
            .copied()
            .filter(|&v| match last {
                Some(l) if l.color == color => v < l.value,
                _ => true,
            })
            .collect();
        for v in candidates {
            let avail = match color {
                Color::Red => &mut *avail_red,
                Color::Blue => &mut *avail_blue,
            };
            let pos = avail.iter().position(|&x| x == v).unwrap();
            avail.swap_remove(pos);
            cur.push(Token { color, value: v });
            extend_string(avail_red, avail_blue, cur, start, out);
            cur.pop();
            let avail = match color {
                Color::Red => &mut *avail_red,
                Color::Blue => &mut *avail_blue,
            };
            avail.push(v);
        }
    }
}

#[derive(Serialize, Deserialize)]
struct CallanPermWire {
    n: usize,
    k: usize,
    s1: Vec<String>,
    s2: Vec<String>,
}

impl Serialize for CallanPerm {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        CallanPermWire {
            n: self.n,
            k: self.k,
            s1: self.s1.iter().map(Token::to_string).collect(),
            s2: self.s2.iter().map(Token::to_string).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CallanPerm {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let wire = CallanPermWire::deserialize(deserializer)?;
        let parse = |ts: &[String]| -> std::result::Result<Vec<Token>, D::Error> {
            ts.iter()
                .map(|s| Token::from_str(s).map_err(D::Error::custom))
                .collect()
        };
        CallanPerm::new(wire.n, wire.k, parse(&wire.s1)?, parse(&wire.s2)?)
            .map_err(D::Error::custom)
    }
}

impl fmt::Display for CallanPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {})",
            tokens_to_string(&self.s1),
            tokens_to_string(&self.s2)
        )
    }
}
