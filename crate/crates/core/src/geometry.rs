//! Exact rational plane geometry for thrackle drawings.
//!
//! Every decision (segment contact, crossing order, thrackle check) is made
//! on [`BigRational`] coordinates. Floating point appears only where a
//! rational approximation of a circle point is chosen, and at render time.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::tables::{adjacent_or_equal, IntersectionTable, TableError, SCHEMA_VERSION};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalPoint {
    pub x: BigRational,
    pub y: BigRational,
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl RationalPoint {
    pub fn new(x: BigRational, y: BigRational) -> Self {
        RationalPoint { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        RationalPoint::new(rat(x, 1), rat(y, 1))
    }

    pub fn from_fractions(x: (i64, i64), y: (i64, i64)) -> Self {
        RationalPoint::new(rat(x.0, x.1), rat(y.0, y.1))
    }

    fn sub(&self, o: &RationalPoint) -> RationalPoint {
        RationalPoint::new(&self.x - &o.x, &self.y - &o.y)
    }

    fn add(&self, o: &RationalPoint) -> RationalPoint {
        RationalPoint::new(&self.x + &o.x, &self.y + &o.y)
    }

    fn scale(&self, k: &BigRational) -> RationalPoint {
        RationalPoint::new(&self.x * k, &self.y * k)
    }

    fn cross(&self, o: &RationalPoint) -> BigRational {
        &self.x * &o.y - &self.y * &o.x
    }

    fn dot(&self, o: &RationalPoint) -> BigRational {
        &self.x * &o.x + &self.y * &o.y
    }

    pub fn distance_squared(&self, o: &RationalPoint) -> BigRational {
        let d = self.sub(o);
        d.dot(&d)
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (
            self.x.to_f64().unwrap_or(f64::NAN),
            self.y.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// How two closed segments meet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SegmentContact {
    Disjoint,
    /// Transversal crossing interior to both segments; `t`, `u` are the
    /// parameters along the first and second segment.
    Crossing {
        point: RationalPoint,
        t: BigRational,
        u: BigRational,
    },
    /// A single common point that is an endpoint of at least one segment.
    Touch {
        point: RationalPoint,
        t: BigRational,
        u: BigRational,
    },
    /// Collinear segments sharing more than one point.
    Overlap,
}

pub fn segment_intersection(
    a0: &RationalPoint,
    a1: &RationalPoint,
    b0: &RationalPoint,
    b1: &RationalPoint,
) -> SegmentContact {
    let r = a1.sub(a0);
    let s = b1.sub(b0);
    let qp = b0.sub(a0);
    let denom = r.cross(&s);
    let zero = BigRational::zero();
    let one = BigRational::one();
    if !denom.is_zero() {
        let t = qp.cross(&s) / &denom;
        let u = qp.cross(&r) / &denom;
        if t < zero || t > one || u < zero || u > one {
            return SegmentContact::Disjoint;
        }
        let point = a0.add(&r.scale(&t));
        let interior = t > zero && t < one && u > zero && u < one;
        return if interior {
            SegmentContact::Crossing { point, t, u }
        } else {
            SegmentContact::Touch { point, t, u }
        };
    }
    if !qp.cross(&r).is_zero() {
        return SegmentContact::Disjoint;
    }
    // Collinear: project b onto a's parameter line.
    let rr = r.dot(&r);
    let t0 = qp.dot(&r) / &rr;
    let t1 = b1.sub(a0).dot(&r) / &rr;
    let (lo, hi) = if t0 <= t1 { (t0, t1) } else { (t1, t0) };
    let lo = if lo > zero { lo } else { zero.clone() };
    let hi = if hi < one { hi } else { one.clone() };
    match lo.cmp(&hi) {
        Ordering::Greater => SegmentContact::Disjoint,
        Ordering::Equal => {
            let point = a0.add(&r.scale(&lo));
            let ss = s.dot(&s);
            let u = point.sub(b0).dot(&s) / ss;
            SegmentContact::Touch { point, t: lo, u }
        }
        Ordering::Less => SegmentContact::Overlap,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("malformed drawing: {0}")]
    Malformed(String),
    #[error("not in generic position: edge {edge_a} segment {segment_a} and edge {edge_b} segment {segment_b}: {reason}")]
    NotGeneric {
        edge_a: usize,
        segment_a: usize,
        edge_b: usize,
        segment_b: usize,
        reason: String,
    },
    #[error("edge {edge} is not a simple arc")]
    NotSimpleEdge { edge: usize },
    #[error("three edges meet at one point on edge {edge}")]
    TriplePoint { edge: usize },
    #[error("drawing is not a thrackle: {0}")]
    NotThrackle(ThrackleReport),
    #[error(transparent)]
    Table(#[from] TableError),
    #[error("{0}")]
    Unsupported(String),
    #[error("could not build a star polygon for m = {0}")]
    StarFailed(usize),
    #[error("doubling failed after {attempts} attempts: {last}")]
    DoublingFailed { attempts: usize, last: String },
    #[error("parse error: {0}")]
    Parse(String),
}

/// A closed curve through `n` marked vertices; edge `i` (1-based) is a
/// polyline from `v_i` to `v_{i+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Drawing {
    vertices: Vec<RationalPoint>,
    edges: Vec<Vec<RationalPoint>>,
}

impl Drawing {
    pub fn new(
        vertices: Vec<RationalPoint>,
        edges: Vec<Vec<RationalPoint>>,
    ) -> Result<Self, GeometryError> {
        let n = vertices.len();
        if n < 3 {
            return Err(GeometryError::Malformed(format!("{n} vertices")));
        }
        if edges.len() != n {
            return Err(GeometryError::Malformed(format!(
                "{} edges for {n} vertices",
                edges.len()
            )));
        }
        for (i, e) in edges.iter().enumerate() {
            if e.len() < 2 {
                return Err(GeometryError::Malformed(format!("edge {} has no segment", i + 1)));
            }
            if e[0] != vertices[i] || e[e.len() - 1] != vertices[(i + 1) % n] {
                return Err(GeometryError::Malformed(format!(
                    "edge {} does not join v{} to v{}",
                    i + 1,
                    i + 1,
                    (i + 1) % n + 1
                )));
            }
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(GeometryError::Malformed(format!(
                    "edge {} has a zero-length segment",
                    i + 1
                )));
            }
        }
        Ok(Drawing { vertices, edges })
    }

    /// Straight-line polygon through the given vertices.
    pub fn polygon(vertices: Vec<RationalPoint>) -> Result<Self, GeometryError> {
        let n = vertices.len();
        let edges = (0..n)
            .map(|i| vec![vertices[i].clone(), vertices[(i + 1) % n].clone()])
            .collect();
        Drawing::new(vertices, edges)
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[RationalPoint] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Vec<RationalPoint>] {
        &self.edges
    }

    /// Edge `i`, 1-based.
    pub fn edge(&self, i: usize) -> &[RationalPoint] {
        &self.edges[i - 1]
    }

    pub fn segment_count(&self) -> usize {
        self.edges.iter().map(|e| e.len() - 1).sum()
    }
}

/// One crossing met along an edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossingRecord {
    /// The other edge (1-based).
    pub other: usize,
    pub segment: usize,
    pub param: BigRational,
    pub point: RationalPoint,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossingAnalysis {
    /// Crossings along each edge, ordered from `v_i` toward `v_{i+1}`.
    pub per_edge: Vec<Vec<CrossingRecord>>,
}

impl CrossingAnalysis {
    /// Crossing count for every unordered pair of distinct edges.
    pub fn pair_counts(&self) -> BTreeMap<(usize, usize), usize> {
        let mut counts = BTreeMap::new();
        for (i, recs) in self.per_edge.iter().enumerate() {
            for r in recs {
                if i + 1 < r.other {
                    *counts.entry((i + 1, r.other)).or_default() += 1;
                }
            }
        }
        counts
    }

    /// Every crossing point once.
    pub fn points(&self) -> Vec<RationalPoint> {
        let mut out = Vec::new();
        for (i, recs) in self.per_edge.iter().enumerate() {
            for r in recs {
                if i + 1 < r.other {
                    out.push(r.point.clone());
                }
            }
        }
        out
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.per_edge
            .iter()
            .map(|recs| recs.iter().map(|r| r.other).collect())
            .collect()
    }
}

/// Finds every crossing and enforces generic position.
pub fn analyze_crossings(d: &Drawing) -> Result<CrossingAnalysis, GeometryError> {
    let n = d.n();
    let mut per_edge: Vec<Vec<CrossingRecord>> = vec![Vec::new(); n];
    let not_generic = |ea: usize, sa: usize, eb: usize, sb: usize, reason: &str| {
        GeometryError::NotGeneric {
            edge_a: ea + 1,
            segment_a: sa,
            edge_b: eb + 1,
            segment_b: sb,
            reason: reason.to_string(),
        }
    };

    for i in 0..n {
        let ei = &d.edges[i];
        let segs_i = ei.len() - 1;
        // The edge itself must be a simple arc.
        for k in 0..segs_i {
            for l in k + 1..segs_i {
                let c = segment_intersection(&ei[k], &ei[k + 1], &ei[l], &ei[l + 1]);
                let ok = match &c {
                    SegmentContact::Disjoint => true,
                    SegmentContact::Touch { point, .. } => l == k + 1 && *point == ei[l],
                    _ => false,
                };
                if !ok {
                    return Err(GeometryError::NotSimpleEdge { edge: i + 1 });
                }
            }
        }
        for j in i + 1..n {
            let ej = &d.edges[j];
            let segs_j = ej.len() - 1;
            // Shared vertex and the terminal segments that may touch there.
            let shared = if j == i + 1 {
                Some((d.vertices[j].clone(), segs_i - 1, 0))
            } else if (j + 1) % n == i {
                Some((d.vertices[i].clone(), 0, segs_j - 1))
            } else {
                None
            };
            for k in 0..segs_i {
                for l in 0..segs_j {
                    match segment_intersection(&ei[k], &ei[k + 1], &ej[l], &ej[l + 1]) {
                        SegmentContact::Disjoint => {}
                        SegmentContact::Overlap => {
                            return Err(not_generic(i, k, j, l, "collinear overlap"))
                        }
                        SegmentContact::Touch { point, .. } => {
                            let allowed = shared
                                .as_ref()
                                .is_some_and(|(v, sk, sl)| *v == point && *sk == k && *sl == l);
                            if !allowed {
                                return Err(not_generic(
                                    i,
                                    k,
                                    j,
                                    l,
                                    &format!("non-transversal contact at {point}"),
                                ));
                            }
                        }
                        SegmentContact::Crossing { point, t, u } => {
                            per_edge[i].push(CrossingRecord {
                                other: j + 1,
                                segment: k,
                                param: t,
                                point: point.clone(),
                            });
                            per_edge[j].push(CrossingRecord {
                                other: i + 1,
                                segment: l,
                                param: u,
                                point,
                            });
                        }
                    }
                }
            }
        }
    }
    for (i, recs) in per_edge.iter_mut().enumerate() {
        recs.sort_by(|a, b| a.segment.cmp(&b.segment).then_with(|| a.param.cmp(&b.param)));
        if recs
            .windows(2)
            .any(|w| w[0].segment == w[1].segment && w[0].param == w[1].param)
        {
            return Err(GeometryError::TriplePoint { edge: i + 1 });
        }
    }
    Ok(CrossingAnalysis { per_edge })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairViolation {
    pub a: usize,
    pub b: usize,
    pub adjacent: bool,
    pub crossings: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThrackleReport {
    pub n: usize,
    pub crossings: usize,
    pub is_thrackle: bool,
    pub violations: Vec<PairViolation>,
}

impl fmt::Display for ThrackleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} violating pair(s)", self.violations.len())?;
        for v in self.violations.iter().take(6) {
            write!(f, "; e{}/e{} cross {} time(s)", v.a, v.b, v.crossings)?;
        }
        Ok(())
    }
}

/// Adjacent edges must meet only at their shared vertex and every other
/// pair must cross exactly once.
pub fn thrackle_report(d: &Drawing) -> Result<ThrackleReport, GeometryError> {
    let analysis = analyze_crossings(d)?;
    Ok(report_from_analysis(d.n(), &analysis))
}

fn report_from_analysis(n: usize, analysis: &CrossingAnalysis) -> ThrackleReport {
    let counts = analysis.pair_counts();
    let mut violations = Vec::new();
    for a in 1..=n {
        for b in a + 1..=n {
            let adjacent = adjacent_or_equal(a, b, n);
            let c = counts.get(&(a, b)).copied().unwrap_or(0);
            let expected = if adjacent { 0 } else { 1 };
            if c != expected {
                violations.push(PairViolation {
                    a,
                    b,
                    adjacent,
                    crossings: c,
                });
            }
        }
    }
    ThrackleReport {
        n,
        crossings: counts.values().sum(),
        is_thrackle: violations.is_empty(),
        violations,
    }
}

/// False also when the drawing is not in generic position.
pub fn is_thrackle(d: &Drawing) -> bool {
    thrackle_report(d).is_ok_and(|r| r.is_thrackle)
}

/// Reads the intersection table off a thrackle drawing.
pub fn intersection_table_of_drawing(d: &Drawing) -> Result<IntersectionTable, GeometryError> {
    let analysis = analyze_crossings(d)?;
    let report = report_from_analysis(d.n(), &analysis);
    if !report.is_thrackle {
        return Err(GeometryError::NotThrackle(report));
    }
    Ok(IntersectionTable::new(d.n(), analysis.rows())?)
}

// ---------------------------------------------------------------------------
// Star polygons

/// Rational point on the unit circle from the half-angle tangent `t`.
fn circle_point(t: &BigRational) -> RationalPoint {
    let one = BigRational::one();
    let t2 = t * t;
    let denom = &one + &t2;
    RationalPoint::new((&one - &t2) / &denom, (t + t) / &denom)
}

fn rational_approx(value: f64, denominator: i64) -> BigRational {
    let num = (value * denominator as f64).round() as i64;
    rat(num, denominator)
}

/// The standard odd musquash: the regular star polygon `{m / ((m-1)/2)}`
/// with vertices at rational points near the regular angles.
pub fn star_polygon_drawing(m: usize) -> Result<Drawing, GeometryError> {
    if m % 2 == 0 || m < 3 {
        return Err(GeometryError::Unsupported(format!(
            "star polygon needs odd m >= 3 (got {m})"
        )));
    }
    let step = (m - 1) / 2;
    let offset = std::f64::consts::PI / (2.0 * m as f64);
    for digits in 3..=12 {
        let denominator = 10i64.pow(digits);
        let vertices: Vec<RationalPoint> = (0..m)
            .map(|i| {
                let position = (i * step) % m;
                let theta = std::f64::consts::TAU * position as f64 / m as f64 + offset;
                circle_point(&rational_approx((theta / 2.0).tan(), denominator))
            })
            .collect();
        let Ok(d) = Drawing::polygon(vertices) else {
            continue;
        };
        if is_thrackle(&d) {
            return Ok(d);
        }
    }
    Err(GeometryError::StarFailed(m))
}

// ---------------------------------------------------------------------------
// Conway doubling

/// Corner routing rules. Coordinates are in the affine frame of a corner:
/// origin at the original vertex, `x` along the incoming edge (pointing back
/// toward the previous vertex), `y` along the outgoing edge, both in units of
/// `epsilon` times the edge vectors. Incoming lanes are `y = +1` (inner) and
/// `y = -1` (outer); outgoing lanes are `x = +1` (inner) and `x = -1` (outer).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CornerTemplate {
    /// The strand arriving on the inner lane weaves back across the other
    /// strand's outgoing run; the outer strand turns sharply.
    Weave,
    /// `Weave` reflected in the corner bisector with time reversed.
    WeaveReflected,
}

impl CornerTemplate {
    pub const ALL: [CornerTemplate; 2] = [CornerTemplate::Weave, CornerTemplate::WeaveReflected];

    /// `(points, vertex index)` for the strand arriving on the given lane.
    fn strand(self, arriving_inner: bool) -> (&'static [(i64, i64)], usize) {
        match (self, arriving_inner) {
            (CornerTemplate::Weave, false) => (&[(6, -1), (1, -1), (1, 6)], 1),
            (CornerTemplate::Weave, true) => {
                (&[(6, 1), (0, 4), (2, 2), (2, -2), (-1, -2), (-1, 6)], 1)
            }
            (CornerTemplate::WeaveReflected, true) => (&[(6, 1), (-1, 1), (-1, 6)], 1),
            (CornerTemplate::WeaveReflected, false) => {
                (&[(6, -1), (-2, -1), (-2, 2), (2, 2), (4, 0), (1, 6)], 4)
            }
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CornerTemplate::Weave => "weave",
            CornerTemplate::WeaveReflected => "weave-reflected",
        }
    }
}

impl std::str::FromStr for CornerTemplate {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "weave" => Ok(CornerTemplate::Weave),
            "weave-reflected" => Ok(CornerTemplate::WeaveReflected),
            other => Err(format!("unknown corner template {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoublingParams {
    pub epsilon: BigRational,
    pub corner_template: CornerTemplate,
}

/// Retries (each halving epsilon) before [`conway_double`] gives up.
pub const DOUBLING_RETRIES: usize = 12;

impl DoublingParams {
    /// Epsilon is the largest power of two not above 1/16 of the smallest
    /// distance (as a fraction of edge length) from a vertex to a crossing.
    pub fn automatic(d: &Drawing, corner_template: CornerTemplate) -> Result<Self, GeometryError> {
        let analysis = analyze_crossings(d)?;
        let half = rat(1, 2);
        let one = BigRational::one();
        let mut feature = half.clone();
        for recs in &analysis.per_edge {
            for r in recs {
                let other_side = &one - &r.param;
                let near = if r.param < other_side { r.param.clone() } else { other_side };
                if near < feature {
                    feature = near;
                }
            }
        }
        let target = feature / rat(16, 1);
        let mut epsilon = rat(1, 32);
        while epsilon > target {
            epsilon /= rat(2, 1);
        }
        Ok(DoublingParams {
            epsilon,
            corner_template,
        })
    }
}

fn turn_sign(prev: &RationalPoint, v: &RationalPoint, next: &RationalPoint) -> Ordering {
    let s = v.sub(prev).cross(&next.sub(v));
    s.cmp(&BigRational::zero())
}

/// Builds the doubled curve for one epsilon; no retries.
pub fn conway_double_once(d: &Drawing, params: &DoublingParams) -> Result<Drawing, GeometryError> {
    let m = d.n();
    if m % 2 == 0 {
        return Err(GeometryError::Unsupported(format!(
            "doubling needs an odd polygon (got {m})"
        )));
    }
    if d.edges.iter().any(|e| e.len() != 2) {
        return Err(GeometryError::Unsupported(
            "doubling supports straight-line drawings only".into(),
        ));
    }
    let v = &d.vertices;
    let turns: Vec<Ordering> = (0..m)
        .map(|i| turn_sign(&v[(i + m - 1) % m], &v[i], &v[(i + 1) % m]))
        .collect();
    if turns.iter().any(|&t| t == Ordering::Equal || t != turns[0]) {
        return Err(GeometryError::Unsupported(
            "doubling needs every corner to turn the same way".into(),
        ));
    }
    let report = thrackle_report(d)?;
    if !report.is_thrackle {
        return Err(GeometryError::NotThrackle(report));
    }

    let eps = &params.epsilon;
    let corner_point = |c: usize, (x, y): (i64, i64)| -> RationalPoint {
        let a = v[(c + m - 1) % m].sub(&v[c]);
        let b = v[(c + 1) % m].sub(&v[c]);
        let ax = a.scale(&(eps * rat(x, 1)));
        let by = b.scale(&(eps * rat(y, 1)));
        v[c].add(&ax).add(&by)
    };

    // Walk the doubled curve: 2m corner visits, lanes alternating.
    let mut vertices = Vec::with_capacity(2 * m);
    let mut heads: Vec<Vec<RationalPoint>> = Vec::with_capacity(2 * m);
    let mut tails: Vec<Vec<RationalPoint>> = Vec::with_capacity(2 * m);
    let mut arriving_inner = false;
    for k in 0..2 * m {
        let c = k % m;
        let (pts, at) = params.corner_template.strand(arriving_inner);
        let mapped: Vec<RationalPoint> = pts.iter().map(|&p| corner_point(c, p)).collect();
        vertices.push(mapped[at].clone());
        heads.push(mapped[..=at].to_vec());
        tails.push(mapped[at..].to_vec());
        arriving_inner = !arriving_inner;
    }
    let edges = (0..2 * m)
        .map(|k| {
            let mut e = tails[k].clone();
            e.extend(heads[(k + 1) % (2 * m)].iter().cloned());
            e
        })
        .collect();
    let doubled = Drawing::new(vertices, edges)?;
    let report = thrackle_report(&doubled)?;
    if !report.is_thrackle {
        return Err(GeometryError::DoublingFailed {
            attempts: 1,
            last: format!("epsilon {} gives {report}", params.epsilon),
        });
    }
    Ok(doubled)
}

/// Doubles an odd straight-line thrackle into a thrackled `2m`-gon. Edge
/// `k` and edge `k + m` both run alongside original edge `k`. On failure
/// epsilon is halved, up to [`DOUBLING_RETRIES`] times.
pub fn conway_double(d: &Drawing, params: &DoublingParams) -> Result<Drawing, GeometryError> {
    let mut p = params.clone();
    let mut last = String::new();
    for _ in 0..=DOUBLING_RETRIES {
        match conway_double_once(d, &p) {
            Ok(out) => return Ok(out),
            Err(
                e @ (GeometryError::Unsupported(_)
                | GeometryError::Malformed(_)
                | GeometryError::NotThrackle(_)),
            ) => return Err(e),
            Err(e) => last = e.to_string(),
        }
        p.epsilon /= rat(2, 1);
    }
    Err(GeometryError::DoublingFailed {
        attempts: DOUBLING_RETRIES + 1,
        last,
    })
}

/// Intersection table of the doubled standard star polygon on `m` vertices.
pub fn doubled_star_table(m: usize) -> Result<IntersectionTable, GeometryError> {
    let star = star_polygon_drawing(m)?;
    let params = DoublingParams::automatic(&star, CornerTemplate::Weave)?;
    let doubled = conway_double(&star, &params)?;
    intersection_table_of_drawing(&doubled)
}

/// Crossings of a doubled drawing, assigned to the nearest original vertex
/// or original crossing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoublingCensus {
    pub per_vertex: Vec<usize>,
    pub per_crossing: Vec<usize>,
}

impl DoublingCensus {
    /// Three crossings near every vertex, four near every crossing.
    pub fn is_exact(&self) -> bool {
        self.per_vertex.iter().all(|&k| k == 3) && self.per_crossing.iter().all(|&k| k == 4)
    }
}

pub fn doubling_census(
    original: &Drawing,
    doubled: &Drawing,
) -> Result<DoublingCensus, GeometryError> {
    let originals = analyze_crossings(original)?.points();
    let features: Vec<&RationalPoint> = original.vertices.iter().chain(originals.iter()).collect();
    let mut counts = vec![0usize; features.len()];
    for p in analyze_crossings(doubled)?.points() {
        let nearest = features
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| a.distance_squared(&p).cmp(&b.distance_squared(&p)))
            .map(|(i, _)| i)
            .expect("at least three vertices");
        counts[nearest] += 1;
    }
    let m = original.n();
    Ok(DoublingCensus {
        per_vertex: counts[..m].to_vec(),
        per_crossing: counts[m..].to_vec(),
    })
}

// ---------------------------------------------------------------------------
// Drawing format

fn fmt_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn parse_rational(s: &str) -> Result<BigRational, GeometryError> {
    let bad = || GeometryError::Parse(format!("expected numerator/denominator, found {s:?}"));
    let (n, d) = s.split_once('/').ok_or_else(bad)?;
    let n: BigInt = n.trim().parse().map_err(|_| bad())?;
    let d: BigInt = d.trim().parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

#[derive(Serialize, Deserialize)]
struct DrawingDocument {
    schema_version: u32,
    n: usize,
    vertices: Vec<[String; 2]>,
    edges: Vec<Vec<[String; 2]>>,
}

fn point_strings(p: &RationalPoint) -> [String; 2] {
    [fmt_rational(&p.x), fmt_rational(&p.y)]
}

fn parse_point(p: &[String; 2]) -> Result<RationalPoint, GeometryError> {
    Ok(RationalPoint::new(parse_rational(&p[0])?, parse_rational(&p[1])?))
}

/// JSON with every coordinate written as `"numerator/denominator"`.
pub fn serialize_drawing(d: &Drawing) -> String {
    let doc = DrawingDocument {
        schema_version: SCHEMA_VERSION,
        n: d.n(),
        vertices: d.vertices.iter().map(point_strings).collect(),
        edges: d
            .edges
            .iter()
            .map(|e| e.iter().map(point_strings).collect())
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("drawing serializes") + "\n"
}

pub fn parse_drawing(text: &str) -> Result<Drawing, GeometryError> {
    let doc: DrawingDocument =
        serde_json::from_str(text).map_err(|e| GeometryError::Parse(e.to_string()))?;
    if doc.schema_version != SCHEMA_VERSION {
        return Err(GeometryError::Parse(format!(
            "unsupported schema_version {}",
            doc.schema_version
        )));
    }
    let vertices = doc
        .vertices
        .iter()
        .map(parse_point)
        .collect::<Result<Vec<_>, _>>()?;
    if vertices.len() != doc.n {
        return Err(GeometryError::Parse(format!(
            "n = {} but {} vertices",
            doc.n,
            vertices.len()
        )));
    }
    let edges = doc
        .edges
        .iter()
        .map(|e| e.iter().map(parse_point).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    Drawing::new(vertices, edges)
}

/// Bounding box `(min_x, min_y, max_x, max_y)` in floating point.
pub fn bounding_box(d: &Drawing) -> (f64, f64, f64, f64) {
    let mut b = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in d.edges.iter().flatten() {
        let (x, y) = p.to_f64();
        b = (b.0.min(x), b.1.min(y), b.2.max(x), b.3.max(y));
    }
    b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64) -> RationalPoint {
        RationalPoint::from_ints(x, y)
    }

    #[test]
    fn segment_cases() {
        match segment_intersection(&p(0, 0), &p(2, 2), &p(0, 2), &p(2, 0)) {
            SegmentContact::Crossing { point, t, u } => {
                assert_eq!(point, p(1, 1));
                assert_eq!(t, rat(1, 2));
                assert_eq!(u, rat(1, 2));
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(
            segment_intersection(&p(0, 0), &p(1, 0), &p(2, 0), &p(3, 0)),
            SegmentContact::Disjoint
        );
        assert!(matches!(
            segment_intersection(&p(0, 0), &p(1, 1), &p(1, 1), &p(2, 0)),
            SegmentContact::Touch { point, .. } if point == p(1, 1)
        ));
        assert_eq!(
            segment_intersection(&p(0, 0), &p(2, 0), &p(1, 0), &p(3, 0)),
            SegmentContact::Overlap
        );
        assert!(matches!(
            segment_intersection(&p(0, 0), &p(1, 0), &p(1, 0), &p(3, 0)),
            SegmentContact::Touch { .. }
        ));
        assert_eq!(
            segment_intersection(&p(0, 0), &p(1, 0), &p(0, 1), &p(1, 1)),
            SegmentContact::Disjoint
        );
    }

    #[test]
    fn convex_polygons_are_not_thrackles() {
        let square = Drawing::polygon(vec![p(0, 0), p(1, 0), p(1, 1), p(0, 1)]).unwrap();
        let r = thrackle_report(&square).unwrap();
        assert!(!r.is_thrackle);
        assert_eq!(r.violations.len(), 2);
        assert!(matches!(
            intersection_table_of_drawing(&square),
            Err(GeometryError::NotThrackle(_))
        ));
        let hexagon =
            Drawing::polygon(vec![p(2, 0), p(4, 1), p(4, 3), p(2, 4), p(0, 3), p(0, 1)]).unwrap();
        assert!(!is_thrackle(&hexagon));
        assert_eq!(thrackle_report(&hexagon).unwrap().violations.len(), 9);
    }

    #[test]
    fn stars() {
        let tri = star_polygon_drawing(3).unwrap();
        let r = thrackle_report(&tri).unwrap();
        assert!(r.is_thrackle);
        assert_eq!(r.crossings, 0);
        let five = star_polygon_drawing(5).unwrap();
        assert_eq!(thrackle_report(&five).unwrap().crossings, 5);
        assert!(star_polygon_drawing(4).is_err());
    }

    #[test]
    fn generic_position_violations() {
        // Edge 3 of this hexagon passes through a vertex it does not own.
        let d = Drawing::polygon(vec![p(0, 0), p(2, 0), p(1, 1), p(1, -1), p(3, 3), p(0, 3)]);
        let d = d.unwrap();
        assert!(analyze_crossings(&d).is_err() || !is_thrackle(&d));
        let through_vertex =
            Drawing::polygon(vec![p(0, 0), p(4, 0), p(2, 2), p(2, 0), p(0, 2)]).unwrap();
        assert!(matches!(
            analyze_crossings(&through_vertex),
            Err(GeometryError::NotGeneric { .. })
        ));
    }

    #[test]
    fn malformed_drawings() {
        assert!(Drawing::polygon(vec![p(0, 0), p(1, 0)]).is_err());
        let v = vec![p(0, 0), p(1, 0), p(0, 1)];
        let bad_edges = vec![vec![p(0, 0), p(1, 0)], vec![p(1, 0), p(0, 1)], vec![p(0, 1), p(1, 1)]];
        assert!(Drawing::new(v, bad_edges).is_err());
    }

    #[test]
    fn drawing_format_round_trip() {
        let d = star_polygon_drawing(5).unwrap();
        let text = serialize_drawing(&d);
        let back = parse_drawing(&text).unwrap();
        assert_eq!(back, d);
        assert_eq!(serialize_drawing(&back), text);
        assert!(parse_drawing("{}").is_err());
        assert!(parse_rational("1/0").is_err());
    }
}
