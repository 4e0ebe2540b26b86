//! Exact points, arcs and measure-zero closed sets on the unit circle.
//!
//! Angles are fractions of a full turn held as reduced `Ratio<i64>`, so set
//! membership and arc partitions are exact. Floating point only enters when a
//! position is turned into a complex number or an entropy is summed.

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{pairwise_sum, unit};

pub type Turn = Ratio<i64>;

/// Deepest Cantor truncation accepted. Depth `d` produces `2^(d+1)` endpoints.
pub const MAX_CANTOR_DEPTH: u32 = 20;

/// Parse a strict `p/q` rational: `q > 0`, `p >= 0`, `gcd(p, q) = 1`.
/// A bare integer is accepted as `p/1`.
pub fn parse_turn(text: &str) -> Result<Turn> {
    let bad = |reason| Error::Rational { text: text.to_string(), reason };
    let s = text.trim();
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    if !digits(p) || !digits(q) {
        return Err(bad("expected non-negative integers p/q"));
    }
    let p: i64 = p.parse().map_err(|_| bad("numerator out of range"))?;
    let q: i64 = q.parse().map_err(|_| bad("denominator out of range"))?;
    if q == 0 {
        return Err(bad("zero denominator"));
    }
    if p.gcd(&q) != 1 {
        return Err(bad("not in lowest terms"));
    }
    Ok(Ratio::new_raw(p, q))
}

pub fn format_turn(t: &Turn) -> String {
    format!("{}/{}", t.numer(), t.denom())
}

fn ratio_f64(t: &Turn) -> f64 {
    t.to_f64().unwrap_or(f64::NAN)
}

fn frac(t: Turn) -> Turn {
    let f = t - t.floor();
    debug_assert!(f >= Turn::zero() && f < Turn::one());
    f
}

/// A point on the unit circle, stored as its turn in `[0, 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CirclePoint(Turn);

impl CirclePoint {
    pub const ONE: CirclePoint = CirclePoint(Ratio::new_raw(0, 1));

    /// Reduces any rational modulo one.
    pub fn new(turn: Turn) -> Self {
        CirclePoint(frac(turn))
    }

    pub fn from_fraction(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::Rational { text: format!("{num}/{den}"), reason: "zero denominator" });
        }
        Ok(Self::new(Ratio::new(num, den)))
    }

    /// Strict parse: the text must already lie in `[0, 1)` in lowest terms.
    pub fn parse(text: &str) -> Result<Self> {
        let t = parse_turn(text)?;
        if t >= Turn::one() {
            return Err(Error::Rational { text: text.to_string(), reason: "turn must lie in [0, 1)" });
        }
        Ok(CirclePoint(t))
    }

    pub fn turn(&self) -> Turn {
        self.0
    }

    pub fn turn_f64(&self) -> f64 {
        ratio_f64(&self.0)
    }

    pub fn to_complex(&self) -> Complex64 {
        unit(self.turn_f64())
    }

    pub fn rotate(&self, by: Turn) -> Self {
        Self::new(self.0 + by)
    }

    /// Exact circular distance in turns, in `[0, 1/2]`.
    pub fn turn_distance(&self, other: &CirclePoint) -> Turn {
        let d = frac(self.0 - other.0);
        let half = Ratio::new_raw(1, 2);
        if d > half {
            Turn::one() - d
        } else {
            d
        }
    }
}

impl fmt::Display for CirclePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl FromStr for CirclePoint {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl Serialize for CirclePoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for CirclePoint {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        CirclePoint::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Counter-clockwise arc from `start` of normalized length `length`
/// (the full circle has length 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ArcInterval {
    start: CirclePoint,
    length: Turn,
}

impl ArcInterval {
    pub fn new(start: CirclePoint, length: Turn) -> Result<Self> {
        if length <= Turn::zero() || length > Turn::one() {
            return Err(Error::validation(format!("arc length {} outside (0, 1]", format_turn(&length))));
        }
        Ok(ArcInterval { start, length })
    }

    pub fn full() -> Self {
        ArcInterval { start: CirclePoint::ONE, length: Turn::one() }
    }

    pub fn start(&self) -> CirclePoint {
        self.start
    }

    pub fn length(&self) -> Turn {
        self.length
    }

    pub fn length_f64(&self) -> f64 {
        ratio_f64(&self.length)
    }

    pub fn end(&self) -> CirclePoint {
        self.start.rotate(self.length)
    }

    pub fn midpoint(&self) -> CirclePoint {
        self.start.rotate(self.length / 2)
    }

    /// `(a, b)` in turns with `a` in `[0, 1)` and `b = a + length`, possibly
    /// past 1. Integrands are periodic so the unwrapped range is used as is.
    pub fn turn_range(&self) -> (f64, f64) {
        let a = self.start.turn_f64();
        (a, ratio_f64(&(self.start.turn() + self.length)))
    }

    /// Whether a turn lies in the closed arc.
    pub fn contains_turn(&self, turn: f64) -> bool {
        let (a, b) = self.turn_range();
        let t = turn - turn.floor();
        (t >= a && t <= b) || (t + 1.0 >= a && t + 1.0 <= b)
    }
}

/// Cantor generator: starting from the base arc, each level removes the open
/// middle portion of relative size `ratio` from every residual arc. Only the
/// endpoints of the residual arcs at `depth` are kept.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CantorSpec {
    pub base: ArcInterval,
    pub ratio: Turn,
    pub depth: u32,
}

impl CantorSpec {
    pub fn new(base: ArcInterval, ratio: Turn, depth: u32) -> Result<Self> {
        if ratio <= Turn::zero() || ratio >= Turn::one() {
            return Err(Error::validation(format!("cantor ratio {} outside (0, 1)", format_turn(&ratio))));
        }
        if depth > MAX_CANTOR_DEPTH {
            return Err(Error::DepthOverflow(depth));
        }
        Ok(CantorSpec { base, ratio, depth })
    }

    /// Residual arcs at `depth` as unwrapped `(start, length)` pairs.
    pub fn residual_arcs(&self) -> Result<Vec<(Turn, Turn)>> {
        let overflow = || Error::DepthOverflow(self.depth);
        let keep = (Turn::one() - self.ratio) / 2;
        let mut arcs = vec![(self.base.start.turn(), self.base.length)];
        for _ in 0..self.depth {
            let mut next = Vec::with_capacity(arcs.len() * 2);
            for (s, l) in arcs {
                let sub = l.checked_mul(&keep).ok_or_else(overflow)?;
                let right = s.checked_add(&l).and_then(|e| e.checked_sub(&sub)).ok_or_else(overflow)?;
                next.push((s, sub));
                next.push((right, sub));
            }
            arcs = next;
        }
        Ok(arcs)
    }

    /// Removed middle arcs, tagged with the level (1-based) that removed them.
    pub fn removed_arcs(&self) -> Result<Vec<(u32, Turn)>> {
        let overflow = || Error::DepthOverflow(self.depth);
        let keep = (Turn::one() - self.ratio) / 2;
        let mut lengths = vec![self.base.length];
        let mut out = Vec::new();
        for level in 1..=self.depth {
            let mut next = Vec::with_capacity(lengths.len() * 2);
            for l in lengths {
                out.push((level, l.checked_mul(&self.ratio).ok_or_else(overflow)?));
                let sub = l.checked_mul(&keep).ok_or_else(overflow)?;
                next.push(sub);
                next.push(sub);
            }
            lengths = next;
        }
        Ok(out)
    }

    /// Sum of `|I| ln(1/|I|)` over the removed arcs at this depth.
    pub fn removed_arc_entropy(&self) -> Result<f64> {
        let terms: Vec<f64> = self
            .removed_arcs()?
            .iter()
            .map(|(_, l)| {
                let x = ratio_f64(l);
                -x * x.ln()
            })
            .collect();
        Ok(pairwise_sum(&terms))
    }

    /// Limit of [`Self::removed_arc_entropy`] as the depth grows, in closed form.
    pub fn removed_arc_entropy_limit(&self) -> f64 {
        let r = ratio_f64(&self.ratio);
        let l = self.base.length_f64();
        let q = (1.0 - r) / 2.0;
        l * (-(r * l).ln() - q.ln() * (1.0 - r) / r)
    }

    pub fn endpoints(&self) -> Result<Vec<CirclePoint>> {
        let overflow = || Error::DepthOverflow(self.depth);
        let mut pts = Vec::new();
        for (s, l) in self.residual_arcs()? {
            pts.push(CirclePoint::new(s));
            pts.push(CirclePoint::new(s.checked_add(&l).ok_or_else(overflow)?));
        }
        Ok(pts)
    }
}

/// A closed, measure-zero subset of the circle.
#[derive(Clone, Debug, PartialEq)]
pub enum BoundarySet {
    Empty,
    Points(Vec<CirclePoint>),
    Cantor(CantorSpec),
    Union(Vec<BoundarySet>),
}

impl BoundarySet {
    pub fn points_from(turns: &[(i64, i64)]) -> Result<Self> {
        let pts = turns.iter().map(|&(p, q)| CirclePoint::from_fraction(p, q)).collect::<Result<_>>()?;
        Ok(BoundarySet::Points(pts))
    }

    /// Sorted, deduplicated list of the points of the set.
    pub fn points(&self) -> Result<Vec<CirclePoint>> {
        let mut out = Vec::new();
        self.collect_points(&mut out)?;
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    fn collect_points(&self, out: &mut Vec<CirclePoint>) -> Result<()> {
        match self {
            BoundarySet::Empty => {}
            BoundarySet::Points(p) => out.extend_from_slice(p),
            BoundarySet::Cantor(c) => out.extend(c.endpoints()?),
            BoundarySet::Union(ms) => {
                for m in ms {
                    m.collect_points(out)?;
                }
            }
        }
        Ok(())
    }

    pub fn resolve(&self) -> Result<ResolvedSet> {
        ResolvedSet::new(self.points()?)
    }

    pub fn complementary_arcs(&self) -> Result<Vec<ArcInterval>> {
        Ok(self.resolve()?.complementary_arcs())
    }

    pub fn entropy(&self) -> Result<f64> {
        Ok(self.resolve()?.entropy())
    }

    pub fn chordal_distance(&self, p: CirclePoint) -> Result<f64> {
        self.resolve()?.chordal_distance(p)
    }

    pub fn contains(&self, p: CirclePoint, tol: f64) -> Result<bool> {
        Ok(self.resolve()?.contains(p, tol))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: SetDoc = serde_json::from_str(text)?;
        doc.into_set()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&SetDoc::from_set(self)).expect("set documents always serialize")
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(SetDoc::from_set(self)).expect("set documents always serialize")
    }
}

/// A finite point set in sorted order with cached float turns, ready for
/// repeated distance queries.
#[derive(Clone, Debug, PartialEq)]
pub struct ResolvedSet {
    points: Vec<CirclePoint>,
    turns: Vec<f64>,
}

impl ResolvedSet {
    pub fn new(mut points: Vec<CirclePoint>) -> Result<Self> {
        points.sort_unstable();
        points.dedup();
        let turns = points.iter().map(CirclePoint::turn_f64).collect();
        Ok(ResolvedSet { points, turns })
    }

    pub fn points(&self) -> &[CirclePoint] {
        &self.points
    }

    pub fn turns(&self) -> &[f64] {
        &self.turns
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn complementary_arcs(&self) -> Vec<ArcInterval> {
        let n = self.points.len();
        match n {
            0 => vec![ArcInterval::full()],
            1 => vec![ArcInterval { start: self.points[0], length: Turn::one() }],
            _ => (0..n)
                .map(|i| {
                    let a = self.points[i].turn();
                    let b = if i + 1 < n { self.points[i + 1].turn() } else { self.points[0].turn() + 1 };
                    ArcInterval { start: self.points[i], length: b - a }
                })
                .collect(),
        }
    }

    pub fn entropy(&self) -> f64 {
        let terms: Vec<f64> = self
            .complementary_arcs()
            .iter()
            .map(|a| {
                let x = a.length_f64();
                if x >= 1.0 {
                    0.0
                } else {
                    -x * x.ln()
                }
            })
            .collect();
        pairwise_sum(&terms)
    }

    /// Index of the point nearest to `t` (in turns) and the circular turn
    /// distance to it.
    pub fn nearest_turn(&self, t: f64) -> Option<(usize, f64)> {
        if self.turns.is_empty() {
            return None;
        }
        let t = t - t.floor();
        let n = self.turns.len();
        let i = self.turns.partition_point(|&x| x <= t);
        let cand = [(i + n - 1) % n, i % n];
        cand.iter()
            .map(|&k| {
                let d = (t - self.turns[k]).abs();
                (k, d.min(1.0 - d))
            })
            .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap_or(Ordering::Equal))
    }

    pub fn chordal_distance(&self, p: CirclePoint) -> Result<f64> {
        if self.points.is_empty() {
            return Err(Error::EmptySet);
        }
        let (k, _) = self.nearest_turn(p.turn_f64()).expect("nonempty");
        // Exact check among the neighbours of the float candidate.
        let n = self.points.len();
        let best = [(k + n - 1) % n, k, (k + 1) % n]
            .iter()
            .map(|&j| p.turn_distance(&self.points[j]))
            .min()
            .expect("three candidates");
        if best.is_zero() {
            return Ok(0.0);
        }
        Ok(2.0 * (PI * ratio_f64(&best)).sin())
    }

    /// Chordal distance from `exp(2 pi i t)` to the set.
    pub fn chordal_distance_turn(&self, t: f64) -> Result<f64> {
        let (_, d) = self.nearest_turn(t).ok_or(Error::EmptySet)?;
        Ok(2.0 * (PI * d).sin())
    }

    /// Chordal distance from a unit-modulus complex number to the set.
    pub fn chordal_distance_complex(&self, z: Complex64) -> Result<f64> {
        if self.points.is_empty() {
            return Err(Error::EmptySet);
        }
        let (k, _) = self.nearest_turn(crate::numeric::turn_of(z)).expect("nonempty");
        let n = self.points.len();
        Ok([(k + n - 1) % n, k, (k + 1) % n]
            .iter()
            .map(|&j| (z - self.points[j].to_complex()).norm())
            .fold(f64::INFINITY, f64::min))
    }

    pub fn contains(&self, p: CirclePoint, tol: f64) -> bool {
        if tol == 0.0 {
            return self.points.binary_search(&p).is_ok();
        }
        match self.chordal_distance(p) {
            Ok(d) => d <= tol,
            Err(_) => false,
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum SetDoc {
    Empty,
    Points {
        points: Vec<String>,
    },
    Cantor {
        base_start: String,
        base_length: String,
        ratio: String,
        depth: u32,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        mode: Option<String>,
    },
    Union {
        members: Vec<SetDoc>,
    },
}

impl SetDoc {
    fn into_set(self) -> Result<BoundarySet> {
        Ok(match self {
            SetDoc::Empty => BoundarySet::Empty,
            SetDoc::Points { points } => {
                BoundarySet::Points(points.iter().map(|s| CirclePoint::parse(s)).collect::<Result<_>>()?)
            }
            SetDoc::Cantor { base_start, base_length, ratio, depth, mode } => {
                if let Some(m) = mode {
                    if m != "endpoints" {
                        return Err(Error::validation(format!("unsupported cantor mode `{m}`")));
                    }
                }
                let start = CirclePoint::parse(&base_start)?;
                let length = parse_turn(&base_length)?;
                let base = ArcInterval::new(start, length)?;
                BoundarySet::Cantor(CantorSpec::new(base, parse_turn(&ratio)?, depth)?)
            }
            SetDoc::Union { members } => {
                BoundarySet::Union(members.into_iter().map(SetDoc::into_set).collect::<Result<_>>()?)
            }
        })
    }

    fn from_set(s: &BoundarySet) -> SetDoc {
        match s {
            BoundarySet::Empty => SetDoc::Empty,
            BoundarySet::Points(p) => SetDoc::Points { points: p.iter().map(|x| x.to_string()).collect() },
            BoundarySet::Cantor(c) => SetDoc::Cantor {
                base_start: c.base.start.to_string(),
                base_length: format_turn(&c.base.length),
                ratio: format_turn(&c.ratio),
                depth: c.depth,
                mode: Some("endpoints".into()),
            },
            BoundarySet::Union(ms) => SetDoc::Union { members: ms.iter().map(SetDoc::from_set).collect() },
        }
    }
}
