//! The model registry, the stepwise bijection from double Callan
//! permutations to alternative tableaux, and the verification harness that
//! exhaustively checks every model polynomial and every map on a grid of
//! cells.

use crate::callan::{self, CallanPerm, Color, Token};
use crate::error::{Error, Result};
use crate::excedance::{self, ExcPerm};
use crate::oracle::{spb_formula, SpbTable};
use crate::poly::Poly;
use crate::tableaux::{self, AltTableau, Arrow, ArrowColumn, PackedTableau};
use crate::trees::{self, DoubleTree};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};
use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;
use std::time::Instant;

/// The closed form plus the nine enumerative model/weight pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ModelId {
    Formula,
    CallanLr,
    CallanBr,
    CallanRl,
    TableauSt,
    TableauLeft,
    PackedLeft,
    PackedDown,
    TreeCh,
    ExcLr,
}

impl ModelId {
    pub const ALL: [ModelId; 10] = [
        ModelId::Formula,
        ModelId::CallanLr,
        ModelId::CallanBr,
        ModelId::CallanRl,
        ModelId::TableauSt,
        ModelId::TableauLeft,
        ModelId::PackedLeft,
        ModelId::PackedDown,
        ModelId::TreeCh,
        ModelId::ExcLr,
    ];

    /// The nine models defined by enumeration.
    pub const ENUMERATIVE: [ModelId; 9] = [
        ModelId::CallanLr,
        ModelId::CallanBr,
        ModelId::CallanRl,
        ModelId::TableauSt,
        ModelId::TableauLeft,
        ModelId::PackedLeft,
        ModelId::PackedDown,
        ModelId::TreeCh,
        ModelId::ExcLr,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ModelId::Formula => "formula",
            ModelId::CallanLr => "callan.lr",
            ModelId::CallanBr => "callan.br",
            ModelId::CallanRl => "callan.rl",
            ModelId::TableauSt => "tableau.st",
            ModelId::TableauLeft => "tableau.left",
            ModelId::PackedLeft => "packed.left",
            ModelId::PackedDown => "packed.down",
            ModelId::TreeCh => "tree.ch",
            ModelId::ExcLr => "exc.lr",
        }
    }
}

impl fmt::Display for ModelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ModelId::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::parse(format!("unknown model {s:?}")))
    }
}

/// Every map the harness knows how to verify.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MapId {
    Pad,
    Cut,
    PackedToTree,
    TreeToPacked,
    TreeToCallan,
    CallanToTableau,
    CallanToExc,
    DualInvolution,
    Transpose,
    Phi,
    Psi,
}

impl MapId {
    pub const ALL: [MapId; 11] = [
        MapId::Pad,
        MapId::Cut,
        MapId::PackedToTree,
        MapId::TreeToPacked,
        MapId::TreeToCallan,
        MapId::CallanToTableau,
        MapId::CallanToExc,
        MapId::DualInvolution,
        MapId::Transpose,
        MapId::Phi,
        MapId::Psi,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MapId::Pad => "pad",
            MapId::Cut => "cut",
            MapId::PackedToTree => "packed_to_tree",
            MapId::TreeToPacked => "tree_to_packed",
            MapId::TreeToCallan => "tree_to_callan",
            MapId::CallanToTableau => "callan_to_tableau",
            MapId::CallanToExc => "callan_to_exc",
            MapId::DualInvolution => "dual_involution",
            MapId::Transpose => "transpose",
            MapId::Phi => "phi",
            MapId::Psi => "psi",
        }
    }
}

impl fmt::Display for MapId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MapId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MapId::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::parse(format!("unknown map {s:?}")))
    }
}

/// Single tableau column of the stepwise bijection.
///
/// The entries sit at the red values of the run `R` paired with the largest
/// blue token, with the same case split as the reduction map: an empty
/// column when blue `k` is unpaired, a forced top left arrow when it is
/// alone in the first block of `S1`, and otherwise a down arrow at `max R`
/// unless red 1 belongs to `R`.
pub fn b_to_t_column(p: &CallanPerm) -> Result<ArrowColumn> {
    if p.k() == 0 {
        return Err(Error::domain("column construction needs k >= 1"));
    }
    let target = Token::blue(p.k() as u32);
    let mut entries: BTreeMap<usize, Arrow> = BTreeMap::new();

    let (in_s1, tokens): (bool, &[Token]) = if p.s1().contains(&target) {
        (true, p.s1())
    } else {
        (false, p.s2())
    };
    let rs = callan::runs(tokens);
    let run_idx = rs
        .iter()
        .position(|r| r.color == Color::Blue && r.values.contains(&target.value))
        .expect("blue k present");

    let paired_red: Option<&[u32]> = if in_s1 {
        if run_idx + 1 == rs.len() {
            None // extra block: empty column
        } else {
            Some(&rs[run_idx + 1].values)
        }
    } else {
        Some(&rs[run_idx - 1].values)
    };

    match paired_red {
        None => {}
        Some(reds) => {
            let reds: Vec<usize> = reds.iter().map(|&v| v as usize).collect();
            let max = *reds.iter().max().expect("red runs are nonempty");
            let case2 = in_s1 && run_idx == 0 && rs[0].values.len() == 1;
            if case2 {
                entries.insert(1, Arrow::Left);
                if reds.contains(&1) {
                    for &l in &reds {
                        entries.insert(l, Arrow::Left);
                    }
                } else {
                    entries.insert(max, Arrow::Down);
                    for &l in reds.iter().filter(|&&l| l != max) {
                        entries.insert(l, Arrow::Left);
                    }
                }
            } else if reds.len() == 1 {
                entries.insert(reds[0], Arrow::Down);
            } else if reds.contains(&1) {
                for &l in reds.iter().filter(|&&l| l != 1) {
                    entries.insert(l, Arrow::Left);
                }
            } else {
                entries.insert(max, Arrow::Down);
                for &l in reds.iter().filter(|&&l| l != max) {
                    entries.insert(l, Arrow::Left);
                }
            }
        }
    }
    ArrowColumn::new(p.n(), entries)
}

/// Stepwise bijection onto alternative tableaux, preserving the weight
/// (`weight_lr` to `weight_st`).
///
/// Columns are produced right to left; each column's entries land in the
/// still-active rows (positionally), rows that received a left arrow retire,
/// and the permutation shrinks through [`CallanPerm::phi`].
pub fn callan_to_tableau(p: &CallanPerm) -> Result<AltTableau> {
    let n = p.n();
    let k = p.k();
    let mut active: Vec<usize> = (1..=n).collect();
    let mut cur = p.clone();
    let mut cells: Vec<((usize, usize), Arrow)> = Vec::new();
    for j in (1..=k).rev() {
        let col = b_to_t_column(&cur)?;
        if col.height() != active.len() {
            return Err(Error::invalid(format!(
                "column height {} does not match {} active rows",
                col.height(),
                active.len()
            )));
        }
        let mut retired: Vec<usize> = Vec::new();
        for (pos, arrow) in col.entries() {
            let row = active[pos - 1];
            cells.push(((row, j), arrow));
            if arrow == Arrow::Left {
                retired.push(row);
            }
        }
        active.retain(|r| !retired.contains(r));
        if j > 1 {
            cur = cur.phi()?;
        }
    }
    AltTableau::new(n, k, cells)
}

struct Histogram {
    counts: Vec<u64>,
}

impl Histogram {
    fn new() -> Self {
        Histogram { counts: Vec::new() }
    }

    fn add(&mut self, w: usize) {
        if self.counts.len() <= w {
            self.counts.resize(w + 1, 0);
        }
        self.counts[w] += 1;
    }

    fn to_poly(&self) -> Poly {
        Poly::from_coeffs(self.counts.iter().map(|&c| BigInt::from(c)).collect())
    }
}

/// The polynomial of one model at one cell: the closed form for
/// [`ModelId::Formula`], and `sum x^weight` over the enumerated family
/// otherwise.
pub fn model_polynomial(m: ModelId, n: usize, k: usize) -> Poly {
    let mut hist = Histogram::new();
    match m {
        ModelId::Formula => return spb_formula(n, k),
        ModelId::CallanLr => callan::for_each(n, k, |p| hist.add(p.weight_lr())),
        ModelId::CallanBr => callan::for_each(n, k, |p| hist.add(p.weight_br())),
        ModelId::CallanRl => callan::for_each(n, k, |p| hist.add(p.weight_rl())),
        ModelId::TableauSt => tableaux::for_each_alt(n, k, |t| hist.add(t.weight_st())),
        ModelId::TableauLeft => tableaux::for_each_alt(n, k, |t| hist.add(t.weight_left())),
        ModelId::PackedLeft => tableaux::for_each_packed(n, k, |t| hist.add(t.weight_left())),
        ModelId::PackedDown => tableaux::for_each_packed(n, k, |t| hist.add(t.weight_down())),
        ModelId::TreeCh => trees::for_each(n, k, |t| hist.add(t.weight_ch())),
        ModelId::ExcLr => excedance::for_each(n, k, |e| hist.add(e.weight_lr())),
    }
    hist.to_poly()
}

/// Result of checking one map at one cell.
#[derive(Debug, Clone)]
pub struct MapCheck {
    pub map: MapId,
    pub n: usize,
    pub k: usize,
    pub pass: bool,
    /// First counterexample (replayable object plus message) on failure.
    pub detail: Option<String>,
}

fn ser<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).unwrap_or_else(|_| "<unserializable>".to_string())
}

/// Checks validity, injectivity, weight preservation, and (through the
/// cardinality of the codomain) surjectivity of one map over a listed
/// domain.
fn check_bijection<A, B>(
    domain: &[A],
    codomain_size: usize,
    apply: impl Fn(&A) -> Result<B>,
    weight_in: impl Fn(&A) -> usize,
    weight_out: impl Fn(&B) -> usize,
) -> std::result::Result<(), String>
where
    A: Serialize,
    B: Eq + Hash + Serialize,
{
    let mut images: HashSet<B> = HashSet::with_capacity(domain.len());
    for a in domain {
        let b = apply(a).map_err(|e| format!("{e} on {}", ser(a)))?;
        if weight_in(a) != weight_out(&b) {
            return Err(format!(
                "weight {} became {} on {}",
                weight_in(a),
                weight_out(&b),
                ser(a)
            ));
        }
        if !images.insert(b) {
            return Err(format!("image repeated at {}", ser(a)));
        }
    }
    if images.len() != codomain_size {
        return Err(format!(
            "image has {} objects, codomain {}",
            images.len(),
            codomain_size
        ));
    }
    Ok(())
}

/// Exhaustively verifies one map on the `(n, k)` cell: image validity,
/// declared codomain, injectivity, the weight contract, and surjectivity by
/// cardinality. Reduction maps (`phi`, `psi`) check their codomain and
/// case contracts instead.
pub fn verify_map(m: MapId, n: usize, k: usize) -> MapCheck {
    let outcome: std::result::Result<(), String> = match m {
        MapId::Pad => {
            let codomain = tableaux::enumerate_packed(n, k).len();
            let domain = tableaux::enumerate_alt(n, k);
            check_bijection(
                &domain,
                codomain,
                |t| {
                    let p = t.pad();
                    if p.cut() != *t {
                        return Err(Error::invalid("cut(pad(t)) != t"));
                    }
                    Ok(p)
                },
                AltTableau::weight_left,
                PackedTableau::weight_left,
            )
        }
        MapId::Cut => {
            let codomain = tableaux::enumerate_alt(n, k).len();
            let domain = tableaux::enumerate_packed(n, k);
            check_bijection(
                &domain,
                codomain,
                |p| {
                    let t = p.cut();
                    if t.pad() != *p {
                        return Err(Error::invalid("pad(cut(p)) != p"));
                    }
                    Ok(t)
                },
                PackedTableau::weight_left,
                AltTableau::weight_left,
            )
        }
        MapId::PackedToTree => {
            let codomain = trees::enumerate(n, k).len();
            let domain = tableaux::enumerate_packed(n, k);
            check_bijection(
                &domain,
                codomain,
                |p| {
                    let t = DoubleTree::from_packed(p)?;
                    if t.to_packed()? != *p {
                        return Err(Error::invalid("to_packed does not invert"));
                    }
                    Ok(t)
                },
                PackedTableau::weight_left,
                DoubleTree::weight_ch,
            )
        }
        MapId::TreeToPacked => {
            let codomain = tableaux::enumerate_packed(n, k).len();
            let domain = trees::enumerate(n, k);
            check_bijection(
                &domain,
                codomain,
                |t| {
                    let p = t.to_packed()?;
                    if DoubleTree::from_packed(&p)? != *t {
                        return Err(Error::invalid("from_packed does not invert"));
                    }
                    Ok(p)
                },
                DoubleTree::weight_ch,
                PackedTableau::weight_left,
            )
        }
        MapId::TreeToCallan => {
            let codomain = callan::enumerate(n, k).len();
            let domain = trees::enumerate(n, k);
            check_bijection(
                &domain,
                codomain,
                DoubleTree::to_callan,
                DoubleTree::weight_ch,
                CallanPerm::weight_lr,
            )
        }
        MapId::CallanToTableau => {
            let codomain = tableaux::enumerate_alt(n, k).len();
            let domain = callan::enumerate(n, k);
            check_bijection(
                &domain,
                codomain,
                callan_to_tableau,
                CallanPerm::weight_lr,
                AltTableau::weight_st,
            )
        }
        MapId::CallanToExc => {
            let codomain = excedance::enumerate(n, k).len();
            let domain = callan::enumerate(n, k);
            check_bijection(
                &domain,
                codomain,
                excedance::callan_to_exc,
                CallanPerm::weight_rl,
                ExcPerm::weight_lr,
            )
        }
        MapId::DualInvolution => (|| {
            for p in tableaux::enumerate_packed(n, k) {
                let q = p.dual_involution().map_err(|e| format!("{e} on {}", ser(&p)))?;
                if q.dual_involution().map_err(|e| e.to_string())? != p {
                    return Err(format!("not an involution at {}", ser(&p)));
                }
                if p.weight_left() != q.weight_down() || p.weight_down() != q.weight_left() {
                    return Err(format!("weights not exchanged at {}", ser(&p)));
                }
            }
            Ok(())
        })(),
        MapId::Transpose => (|| {
            for p in tableaux::enumerate_packed(n, k) {
                let q = p.transpose().map_err(|e| format!("{e} on {}", ser(&p)))?;
                if q.n() != k || q.k() != n {
                    return Err(format!("wrong codomain size at {}", ser(&p)));
                }
                if q.transpose().map_err(|e| e.to_string())? != p {
                    return Err(format!("not involutive at {}", ser(&p)));
                }
                if p.weight_left() != q.weight_down() || p.weight_down() != q.weight_left() {
                    return Err(format!("weights not exchanged at {}", ser(&p)));
                }
            }
            Ok(())
        })(),
        MapId::Phi => (|| {
            if k == 0 {
                return Ok(());
            }
            for p in callan::enumerate(n, k) {
                let q = p.phi().map_err(|e| format!("{e} on {}", ser(&p)))?;
                if q.k() != k - 1 || q.n() > n {
                    return Err(format!("{} left the codomain: {}", ser(&p), ser(&q)));
                }
            }
            Ok(())
        })(),
        MapId::Psi => (|| {
            if k == 0 {
                return Ok(());
            }
            let mut case2_hits: HashMap<ExcPerm, usize> = HashMap::new();
            for e in excedance::enumerate(n, k) {
                let case = e.psi_case().map_err(|err| err.to_string())?;
                let img = e.psi().map_err(|err| format!("{err} on {}", ser(&e)))?;
                if img.k() != k - 1 || img.n() > n {
                    return Err(format!("{} left the codomain: {}", ser(&e), ser(&img)));
                }
                let b = e.at(e.len());
                let expected = match case {
                    3 if b == 1 => e.weight_lr() - 1,
                    _ => e.weight_lr(),
                };
                if img.weight_lr() != expected {
                    return Err(format!(
                        "case {case} weight {} became {} on {}",
                        e.weight_lr(),
                        img.weight_lr(),
                        ser(&e)
                    ));
                }
                if case == 2 {
                    *case2_hits.entry(img).or_insert(0) += 1;
                }
            }
            // the case-2 branch covers the whole smaller family n-to-1
            let smaller = excedance::enumerate(n, k - 1);
            if n == 0 {
                if !case2_hits.is_empty() {
                    return Err("case 2 occurred with n = 0".to_string());
                }
            } else {
                if case2_hits.len() != smaller.len() {
                    return Err(format!(
                        "case 2 reached {} of {} images",
                        case2_hits.len(),
                        smaller.len()
                    ));
                }
                for (img, hits) in &case2_hits {
                    if *hits != n {
                        return Err(format!("{} has {} case-2 preimages, wanted {n}", ser(img), hits));
                    }
                }
            }
            Ok(())
        })(),
    };
    MapCheck {
        map: m,
        n,
        k,
        pass: outcome.is_ok(),
        detail: outcome.err(),
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub max_n: usize,
    pub max_k: usize,
    /// Also run the heavier models on the 5 x 5 cell.
    pub extended: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            max_n: 4,
            max_k: 4,
            extended: false,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CellReport {
    pub n: usize,
    pub k: usize,
    pub expected: Poly,
    pub models: Vec<(ModelId, Poly)>,
    pub recurrence_ok: bool,
    pub duality_ok: bool,
    /// Stair weight pulled back through pad, the tree map, and the string
    /// map equals the marking weight on the Callan side.
    pub pullback_ok: bool,
    pub maps: Vec<MapCheck>,
    pub elapsed_ms: u128,
}

impl CellReport {
    pub fn pass(&self) -> bool {
        self.models.iter().all(|(_, p)| *p == self.expected)
            && self.recurrence_ok
            && self.duality_ok
            && self.pullback_ok
            && self.maps.iter().all(|m| m.pass)
    }
}

#[derive(Debug, Clone)]
pub struct Failure {
    pub context: String,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub options: VerifyOptions,
    pub cells: Vec<CellReport>,
    pub failures: Vec<Failure>,
    pub elapsed_ms: u128,
}

impl VerifyReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> Value {
        let grid: Vec<Value> = self
            .cells
            .iter()
            .map(|cell| {
                let models: serde_json::Map<String, Value> = cell
                    .models
                    .iter()
                    .map(|(m, p)| (m.name().to_string(), poly_to_json(p)))
                    .collect();
                let maps: serde_json::Map<String, Value> = cell
                    .maps
                    .iter()
                    .map(|mc| {
                        (
                            mc.map.name().to_string(),
                            Value::String(if mc.pass { "pass" } else { "fail" }.to_string()),
                        )
                    })
                    .collect();
                json!({
                    "n": cell.n,
                    "k": cell.k,
                    "expected": poly_to_json(&cell.expected),
                    "models": models,
                    "maps": maps,
                    "recurrence": if cell.recurrence_ok { "pass" } else { "fail" },
                    "duality": if cell.duality_ok { "pass" } else { "fail" },
                    "pullback": if cell.pullback_ok { "pass" } else { "fail" },
                    "ms": cell.elapsed_ms,
                })
            })
            .collect();
        let failures: Vec<Value> = self
            .failures
            .iter()
            .map(|f| json!({"context": f.context, "detail": f.detail}))
            .collect();
        json!({
            "maxN": self.options.max_n,
            "maxK": self.options.max_k,
            "extended": self.options.extended,
            "grid": grid,
            "failures": failures,
            "elapsedMs": self.elapsed_ms,
        })
    }

    /// Deterministic summary: no wall-clock fields, so repeated runs print
    /// identical bytes. Timings stay on the struct and in the JSON form.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for cell in &self.cells {
            out.push_str(&format!(
                "({}, {}) {} models={} maps={} recurrence={} duality={} pullback={}\n",
                cell.n,
                cell.k,
                if cell.pass() { "pass" } else { "FAIL" },
                cell.models.iter().filter(|(_, p)| *p == cell.expected).count(),
                cell.maps.iter().filter(|m| m.pass).count(),
                ok(cell.recurrence_ok),
                ok(cell.duality_ok),
                ok(cell.pullback_ok),
            ));
        }
        for f in &self.failures {
            out.push_str(&format!("failure: {}: {}\n", f.context, f.detail));
        }
        out.push_str(&format!(
            "verify: {} ({} cells, {} failures)\n",
            if self.pass() { "pass" } else { "FAIL" },
            self.cells.len(),
            self.failures.len(),
        ));
        out
    }
}

fn ok(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "fail"
    }
}

/// Coefficient array as JSON numbers, falling back to decimal strings for
/// values outside the i64 range.
pub fn poly_to_json(p: &Poly) -> Value {
    Value::Array(
        p.coeffs()
            .iter()
            .map(|c| match i64::try_from(c) {
                Ok(v) => json!(v),
                Err(_) => Value::String(c.to_string()),
            })
            .collect(),
    )
}

/// Models exercised on the extended 5 x 5 cell.
pub const EXTENDED_MODELS: [ModelId; 5] = [
    ModelId::CallanLr,
    ModelId::TableauSt,
    ModelId::TableauLeft,
    ModelId::PackedLeft,
    ModelId::TreeCh,
];

/// Runs the whole harness on the `[0, max_n] x [0, max_k]` grid: all nine
/// model polynomials against the closed form and the recurrence, all map
/// checks, the duality of the closed form, and the weight pullback identity.
pub fn verify_all(options: VerifyOptions) -> VerifyReport {
    let start = Instant::now();
    let mut cells = Vec::new();
    let mut failures = Vec::new();
    let recurrence = SpbTable::from_recurrence(options.max_n, options.max_k);

    for n in 0..=options.max_n {
        for k in 0..=options.max_k {
            let cell_start = Instant::now();
            let expected = spb_formula(n, k);
            let ctx = |what: &str| format!("({n},{k}) {what}");

            let models: Vec<(ModelId, Poly)> = ModelId::ENUMERATIVE
                .into_iter()
                .map(|m| (m, model_polynomial(m, n, k)))
                .collect();
            for (m, p) in &models {
                if p != &expected {
                    failures.push(Failure {
                        context: ctx(m.name()),
                        detail: format!(
                            "polynomial {} instead of {}",
                            p.coeff_array(),
                            expected.coeff_array()
                        ),
                    });
                }
            }

            let recurrence_ok = recurrence.get(n, k) == &expected;
            if !recurrence_ok {
                failures.push(Failure {
                    context: ctx("recurrence"),
                    detail: format!(
                        "{} instead of {}",
                        recurrence.get(n, k).coeff_array(),
                        expected.coeff_array()
                    ),
                });
            }

            let duality_ok = spb_formula(k, n) == expected;
            if !duality_ok {
                failures.push(Failure {
                    context: ctx("duality"),
                    detail: "closed form is not symmetric".to_string(),
                });
            }

            let pullback_ok = match check_pullback(n, k) {
                Ok(()) => true,
                Err(detail) => {
                    failures.push(Failure {
                        context: ctx("pullback"),
                        detail,
                    });
                    false
                }
            };

            let maps: Vec<MapCheck> = MapId::ALL.into_iter().map(|m| verify_map(m, n, k)).collect();
            for mc in &maps {
                if !mc.pass {
                    failures.push(Failure {
                        context: ctx(mc.map.name()),
                        detail: mc.detail.clone().unwrap_or_default(),
                    });
                }
            }

            cells.push(CellReport {
                n,
                k,
                expected,
                models,
                recurrence_ok,
                duality_ok,
                pullback_ok,
                maps,
                elapsed_ms: cell_start.elapsed().as_millis(),
            });
        }
    }

    if options.extended {
        let cell_start = Instant::now();
        let (n, k) = (5, 5);
        let expected = spb_formula(n, k);
        let models: Vec<(ModelId, Poly)> = EXTENDED_MODELS
            .into_iter()
            .map(|m| (m, model_polynomial(m, n, k)))
            .collect();
        for (m, p) in &models {
            if p != &expected {
                failures.push(Failure {
                    context: format!("({n},{k}) {}", m.name()),
                    detail: format!(
                        "polynomial {} instead of {}",
                        p.coeff_array(),
                        expected.coeff_array()
                    ),
                });
            }
        }
        cells.push(CellReport {
            n,
            k,
            expected,
            models,
            recurrence_ok: true,
            duality_ok: true,
            pullback_ok: true,
            maps: Vec::new(),
            elapsed_ms: cell_start.elapsed().as_millis(),
        });
    }

    VerifyReport {
        options,
        cells,
        failures,
        elapsed_ms: start.elapsed().as_millis(),
    }
}

/// The stair weight of every tableau must survive the trip through packing,
/// the tree correspondence, and the string map as the marking weight.
pub fn check_pullback(n: usize, k: usize) -> std::result::Result<(), String> {
    let mut bad: Option<String> = None;
    tableaux::for_each_alt(n, k, |t| {
        if bad.is_some() {
            return;
        }
        let chain = DoubleTree::from_packed(&t.pad())
            .and_then(|tree| tree.to_callan())
            .map(|c| c.weight_br());
        match chain {
            Ok(w) if w == t.weight_st() => {}
            Ok(w) => {
                bad = Some(format!(
                    "stair weight {} became marking weight {} on {}",
                    t.weight_st(),
                    w,
                    ser(t)
                ))
            }
            Err(e) => bad = Some(format!("{e} on {}", ser(t))),
        }
    });
    match bad {
        None => Ok(()),
        Some(detail) => Err(detail),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{worked_callan_stepwise, worked_tableau};

    fn column_of(p: &CallanPerm) -> Vec<(usize, Arrow)> {
        b_to_t_column(p).unwrap().entries().collect()
    }

    #[test]
    fn column_cases_from_worked_chain() {
        // (2)_a: left arrows at 1 and 2
        assert_eq!(
            column_of(&worked_callan_stepwise()),
            vec![(1, Arrow::Left), (2, Arrow::Left)]
        );
        // (2)_b
        let p = CallanPerm::from_strs(5, 4, "b4 r2", "r5 r4 b3 b2 r3 r1 b1").unwrap();
        assert_eq!(column_of(&p), vec![(1, Arrow::Left), (2, Arrow::Down)]);
        // (3)_c
        let p = CallanPerm::from_strs(4, 3, "", "r4 r3 b3 b2 r2 r1 b1").unwrap();
        assert_eq!(column_of(&p), vec![(3, Arrow::Left), (4, Arrow::Down)]);
        // (1): empty column
        let p = CallanPerm::from_strs(5, 5, "b4 r2 b5", "r5 r4 b3 b2 r3 r1 b1").unwrap();
        assert_eq!(column_of(&p), vec![]);
        // (3)_a
        let p = CallanPerm::from_strs(3, 2, "", "r1 b2 r3 r2 b1").unwrap();
        assert_eq!(column_of(&p), vec![(1, Arrow::Down)]);
        // (3)_b
        let p = CallanPerm::from_strs(3, 1, "", "r3 r2 r1 b1").unwrap();
        assert_eq!(column_of(&p), vec![(2, Arrow::Left), (3, Arrow::Left)]);

        assert!(b_to_t_column(&CallanPerm::from_strs(1, 0, "", "r1").unwrap()).is_err());
    }

    #[test]
    fn column_left_count_matches_phi_shrink() {
        for (n, k) in [(2, 2), (3, 2), (3, 3)] {
            for p in callan::enumerate(n, k) {
                let col = b_to_t_column(&p).unwrap();
                let q = p.phi().unwrap();
                assert_eq!(col.left_count(), n - q.n(), "{p}");
            }
        }
    }

    #[test]
    fn stepwise_bijection_reproduces_example() {
        let t = callan_to_tableau(&worked_callan_stepwise()).unwrap();
        assert_eq!(t, worked_tableau());
        assert_eq!(worked_callan_stepwise().weight_lr(), t.weight_st());
    }

    #[test]
    fn stepwise_bijection_1x1() {
        // the three objects map onto left, empty, down with weights 1, 0, 0
        let images: Vec<(CallanPerm, AltTableau)> = callan::enumerate(1, 1)
            .into_iter()
            .map(|p| {
                let t = callan_to_tableau(&p).unwrap();
                (p, t)
            })
            .collect();
        let left = AltTableau::new(1, 1, [((1, 1), Arrow::Left)]).unwrap();
        for (p, t) in &images {
            assert_eq!(p.weight_lr(), t.weight_st());
            if *t == left {
                assert_eq!(p, &CallanPerm::from_strs(1, 1, "b1 r1", "").unwrap());
            }
        }
        let mut ts: Vec<&AltTableau> = images.iter().map(|(_, t)| t).collect();
        ts.sort();
        ts.dedup();
        assert_eq!(ts.len(), 3);
    }

    #[test]
    fn empty_input_maps_to_empty_tableau() {
        let p = CallanPerm::from_strs(0, 0, "", "").unwrap();
        let t = callan_to_tableau(&p).unwrap();
        assert_eq!(t, AltTableau::empty(0, 0));
    }

    #[test]
    fn model_ids_round_trip() {
        for m in ModelId::ALL {
            assert_eq!(ModelId::from_str(m.name()).unwrap(), m);
        }
        for m in MapId::ALL {
            assert_eq!(MapId::from_str(m.name()).unwrap(), m);
        }
        assert!(ModelId::from_str("nope").is_err());
    }

    #[test]
    fn model_polynomials_small() {
        assert_eq!(
            model_polynomial(ModelId::CallanLr, 1, 1),
            Poly::from_i64_coeffs(&[2, 1])
        );
        assert_eq!(
            model_polynomial(ModelId::ExcLr, 2, 1),
            Poly::from_i64_coeffs(&[4, 3])
        );
        for n in 0..3 {
            assert_eq!(model_polynomial(ModelId::TableauSt, n, 0), Poly::one());
        }
        for m in ModelId::ENUMERATIVE {
            assert_eq!(model_polynomial(m, 2, 2), spb_formula(2, 2), "{m}");
        }
    }

    #[test]
    fn verify_maps_2x2() {
        for m in MapId::ALL {
            let check = verify_map(m, 2, 2);
            assert!(check.pass, "{}: {:?}", m, check.detail);
        }
    }

    #[test]
    fn verify_all_tiny_grid() {
        let report = verify_all(VerifyOptions {
            max_n: 2,
            max_k: 2,
            extended: false,
        });
        assert!(report.pass(), "{:?}", report.failures.first());
        assert_eq!(report.cells.len(), 9);
        let json = report.to_json();
        assert_eq!(json["grid"].as_array().unwrap().len(), 9);
        assert_eq!(json["failures"].as_array().unwrap().len(), 0);
    }

    #[test]
    fn corrupted_weight_is_caught() {
        // an off-by-one weight on one side must surface as a counterexample
        let domain = callan::enumerate(2, 1);
        let outcome = check_bijection(
            &domain,
            tableaux::enumerate_alt(2, 1).len(),
            callan_to_tableau,
            |p| p.weight_lr() + 1,
            AltTableau::weight_st,
        );
        assert!(outcome.is_err());
        let msg = outcome.unwrap_err();
        assert!(msg.contains("weight"), "{msg}");
        assert!(msg.contains("s1"), "counterexample is replayable: {msg}");
    }
}
