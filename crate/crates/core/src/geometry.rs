//! Sampled Berezin ranges: disc grids, convex hulls, the coverage-raster
//! convexity classifier, and the conjugation and real-part checks.

use std::collections::HashMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::{DiskPoint, SpaceParams};
use crate::operators::{berezin_transform, evaluate_symbol, OperatorSpec, Symbol};

/// Side length of the coverage raster.
pub const RASTER: usize = 512;

pub const DEFAULT_TOLERANCE: f64 = 5e-3;

/// Polar sampling grid: the origin plus rings `r_i = r_max·i/(n_radial − 1)`
/// for `i ≥ 1`, each with `n_angular` equally spaced angles.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleGrid {
    n_radial: usize,
    n_angular: usize,
    r_max: f64,
}

impl Default for SampleGrid {
    fn default() -> Self {
        Self { n_radial: 400, n_angular: 720, r_max: 0.999 }
    }
}

impl SampleGrid {
    pub fn new(n_radial: usize, n_angular: usize, r_max: f64) -> Result<Self> {
        if n_radial < 2 {
            return Err(Error::InvalidArgument(format!("n_radial must be at least 2, got {n_radial}")));
        }
        if n_angular < 4 {
            return Err(Error::InvalidArgument(format!("n_angular must be at least 4, got {n_angular}")));
        }
        if !(r_max > 0.0 && r_max < 1.0) {
            return Err(Error::InvalidArgument(format!("r_max must lie in (0, 1), got {r_max}")));
        }
        Ok(Self { n_radial, n_angular, r_max })
    }

    pub fn n_radial(&self) -> usize {
        self.n_radial
    }

    pub fn n_angular(&self) -> usize {
        self.n_angular
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    pub fn len(&self) -> usize {
        1 + (self.n_radial - 1) * self.n_angular
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn radius(&self, ring: usize) -> f64 {
        self.r_max * ring as f64 / (self.n_radial - 1) as f64
    }

    /// Unit vectors `e^{iθ_j}`. The lower half mirrors the upper half
    /// exactly, so the grid is closed under conjugation bit for bit.
    fn directions(&self) -> Vec<Complex64> {
        let n = self.n_angular;
        let upper = |j: usize| {
            let t = 2.0 * PI * j as f64 / n as f64;
            Complex64::new(t.cos(), t.sin())
        };
        (0..n)
            .map(|j| {
                if j == 0 {
                    Complex64::new(1.0, 0.0)
                } else if 2 * j == n {
                    Complex64::new(-1.0, 0.0)
                } else if 2 * j < n {
                    upper(j)
                } else {
                    upper(n - j).conj()
                }
            })
            .collect()
    }

    /// Grid points in radial-major order, origin first.
    pub fn points(&self) -> Vec<Complex64> {
        let dirs = self.directions();
        let mut out = Vec::with_capacity(self.len());
        out.push(Complex64::new(0.0, 0.0));
        for i in 1..self.n_radial {
            let r = self.radius(i);
            out.extend(dirs.iter().map(|d| Complex64::new(r * d.re, r * d.im)));
        }
        out
    }

    /// `(r, θ)` of the point at `index`, with `θ ∈ [0, 2π)`.
    pub fn polar(&self, index: usize) -> (f64, f64) {
        if index == 0 {
            return (0.0, 0.0);
        }
        let ring = 1 + (index - 1) / self.n_angular;
        let j = (index - 1) % self.n_angular;
        (self.radius(ring), 2.0 * PI * j as f64 / self.n_angular as f64)
    }

    fn index(&self, ring: usize, j: usize) -> usize {
        if ring == 0 {
            0
        } else {
            1 + (ring - 1) * self.n_angular + j % self.n_angular
        }
    }

    /// Triangles covering the sampled disc: a fan around the origin and two
    /// triangles per cell between consecutive rings.
    fn triangles(&self) -> impl Iterator<Item = [usize; 3]> + '_ {
        let na = self.n_angular;
        let fan = (0..na).map(move |j| [0, self.index(1, j), self.index(1, j + 1)]);
        let quads = (1..self.n_radial - 1).flat_map(move |i| {
            (0..na).flat_map(move |j| {
                let (a, b) = (self.index(i, j), self.index(i, j + 1));
                let (c, d) = (self.index(i + 1, j), self.index(i + 1, j + 1));
                [[a, b, c], [b, d, c]]
            })
        });
        fan.chain(quads)
    }

    /// Radial and angular grid edges.
    fn edges(&self) -> impl Iterator<Item = [usize; 2]> + '_ {
        let na = self.n_angular;
        (0..self.n_radial - 1).flat_map(move |i| {
            (0..na).flat_map(move |j| {
                let radial = [self.index(i, j), self.index(i + 1, j)];
                let angular = [self.index(i + 1, j), self.index(i + 1, j + 1)];
                [radial, angular]
            })
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CloudPoint {
    pub lambda: Complex64,
    pub value: Complex64,
}

/// Sampled Berezin range with its provenance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RangeCloud {
    pub spec: OperatorSpec,
    pub params: SpaceParams,
    /// Present when the points follow a [`SampleGrid`] in its native order.
    pub grid: Option<SampleGrid>,
    pub points: Vec<CloudPoint>,
}

impl RangeCloud {
    pub fn values(&self) -> Vec<Complex64> {
        self.points.iter().map(|p| p.value).collect()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

fn evaluate_all(spec: &OperatorSpec, params: SpaceParams, lambdas: Vec<Complex64>) -> Result<Vec<CloudPoint>> {
    lambdas
        .into_par_iter()
        .map(|l| {
            let value = berezin_transform(spec, params, DiskPoint::new(l)?);
            Ok(CloudPoint { lambda: l, value })
        })
        .collect()
}

/// Evaluates the Berezin transform over `grid`, in parallel, preserving the
/// grid order.
pub fn sample_range(spec: &OperatorSpec, params: SpaceParams, grid: SampleGrid) -> Result<RangeCloud> {
    spec.validate()?;
    let points = evaluate_all(spec, params, grid.points())?;
    Ok(RangeCloud { spec: spec.clone(), params, grid: Some(grid), points })
}

/// Evaluates the Berezin transform at arbitrary disc points.
pub fn sample_points(spec: &OperatorSpec, params: SpaceParams, lambdas: &[Complex64]) -> Result<RangeCloud> {
    spec.validate()?;
    let points = evaluate_all(spec, params, lambdas.to_vec())?;
    Ok(RangeCloud { spec: spec.clone(), params, grid: None, points })
}

fn cross(o: Complex64, a: Complex64, b: Complex64) -> f64 {
    (a.re - o.re) * (b.im - o.im) - (a.im - o.im) * (b.re - o.re)
}

/// Counterclockwise convex hull (Andrew's monotone chain). Collinear points
/// are dropped; degenerate inputs give a segment or a single point.
pub fn convex_hull(points: &[Complex64]) -> Vec<Complex64> {
    let mut pts: Vec<Complex64> = points.to_vec();
    pts.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let chain = |iter: &mut dyn Iterator<Item = Complex64>| {
        let mut out: Vec<Complex64> = Vec::new();
        for p in iter {
            while out.len() >= 2 && cross(out[out.len() - 2], out[out.len() - 1], p) <= 0.0 {
                out.pop();
            }
            out.push(p);
        }
        out.pop();
        out
    };
    let mut hull = chain(&mut pts.iter().copied());
    hull.extend(chain(&mut pts.iter().rev().copied()));
    hull
}

pub fn polygon_area(poly: &[Complex64]) -> f64 {
    if poly.len() < 3 {
        return 0.0;
    }
    let n = poly.len();
    0.5 * (0..n)
        .map(|i| {
            let (a, b) = (poly[i], poly[(i + 1) % n]);
            a.re * b.im - b.re * a.im
        })
        .sum::<f64>()
}

/// Largest distance between two hull vertices, with the attaining pair.
fn diameter(hull: &[Complex64]) -> (f64, Complex64, Complex64) {
    let mut best = (0.0, hull[0], hull[0]);
    for (i, &a) in hull.iter().enumerate() {
        for &b in &hull[i + 1..] {
            let d = (a - b).norm();
            if d > best.0 {
                best = (d, a, b);
            }
        }
    }
    best
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Convex,
    NotConvex,
    Inconclusive,
}

/// Two range points whose midpoint lies `distance` away from the sampled
/// range.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub p: Complex64,
    pub q: Complex64,
    pub midpoint: Complex64,
    pub distance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvexityReport {
    pub verdict: Verdict,
    /// Uncovered fraction of the hull, in `[0, 1]`.
    pub deficiency: f64,
    pub witness: Option<Witness>,
    pub hull: Vec<Complex64>,
    pub hull_area: f64,
    pub coverage_area: f64,
    pub diameter: f64,
    /// Relative tolerance the verdict was computed with.
    pub tolerance: f64,
    /// Largest distance from a hull point to the sampled range, over the
    /// diameter.
    pub max_gap: f64,
    /// Set for clouds that lie along a line; total uncovered length over the
    /// diameter.
    pub line_gap_fraction: Option<f64>,
    pub notes: Vec<String>,
}

fn verdict_for(gap: f64, tol: f64) -> Verdict {
    if gap <= tol {
        Verdict::Convex
    } else if gap > 3.0 * tol {
        Verdict::NotConvex
    } else {
        Verdict::Inconclusive
    }
}

/// Classifies the convexity of a sampled range.
///
/// The hull's bounding box is rasterized at [`RASTER`]² cells. Cells holding a
/// cloud point count as covered; for grid clouds the images of the grid
/// triangles are filled as well, since the range is the continuous image of
/// the disc. The verdict compares the largest distance from an in-hull cell
/// to the covered set with `tol·diameter` (Convex) and `3·tol·diameter`
/// (NotConvex); anything between is Inconclusive. Clouds lying within
/// `tol·diameter` of a line are judged by the gaps along that line instead.
pub fn convexity_classify(cloud: &RangeCloud, tol: f64) -> Result<ConvexityReport> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    if cloud.is_empty() {
        return Err(Error::InvalidArgument("cannot classify an empty cloud".into()));
    }
    let values = cloud.values();
    if values.iter().any(|v| !(v.re.is_finite() && v.im.is_finite())) {
        return Err(Error::NonFinite("cloud value"));
    }
    let mut notes = Vec::new();
    if let (OperatorSpec::GeometricDiagonal { .. }, Some(grid)) = (&cloud.spec, cloud.grid) {
        if cloud.params.gamma() < 1.0 {
            notes.push(format!(
                "range is unbounded; classification covers the window |lambda| <= {}",
                grid.r_max()
            ));
        }
    }
    let hull = convex_hull(&values);
    let (diam, a, b) = diameter(&hull);
    let base = ConvexityReport {
        verdict: Verdict::Convex,
        deficiency: 0.0,
        witness: None,
        hull_area: polygon_area(&hull),
        coverage_area: 0.0,
        hull,
        diameter: diam,
        tolerance: tol,
        max_gap: 0.0,
        line_gap_fraction: None,
        notes,
    };
    if diam == 0.0 {
        return Ok(base);
    }
    let u = (b - a) / diam;
    let off_line = values
        .iter()
        .map(|&v| ((v - a) * u.conj()).im.abs())
        .fold(0.0, f64::max);
    if off_line <= tol * diam {
        Ok(classify_line(cloud, &values, a, u, diam, tol, base))
    } else {
        Ok(classify_plane(cloud, &values, diam, tol, base))
    }
}

fn classify_line(
    cloud: &RangeCloud,
    values: &[Complex64],
    a: Complex64,
    u: Complex64,
    diam: f64,
    tol: f64,
    mut report: ConvexityReport,
) -> ConvexityReport {
    let t = |v: Complex64| ((v - a) * u.conj()).re;
    let mut spans: Vec<(f64, f64)> = values.iter().map(|&v| (t(v), t(v))).collect();
    if let Some(grid) = cloud.grid {
        spans.extend(grid.edges().map(|[i, j]| {
            let (x, y) = (t(values[i]), t(values[j]));
            (x.min(y), x.max(y))
        }));
    }
    spans.sort_by(|p, q| p.0.total_cmp(&q.0));
    let mut reach = spans[0].1;
    let mut total = 0.0;
    let mut worst = (0.0, reach, reach);
    for &(lo, hi) in &spans[1..] {
        if lo > reach {
            let gap = lo - reach;
            total += gap;
            if gap > worst.0 {
                worst = (gap, reach, lo);
            }
        }
        reach = reach.max(hi);
    }
    report.max_gap = 0.5 * worst.0 / diam;
    report.line_gap_fraction = Some(total / diam);
    report.verdict = verdict_for(worst.0 / diam, tol);
    if worst.0 > 0.0 {
        let (p, q) = (a + u * worst.1, a + u * worst.2);
        report.witness = Some(Witness { p, q, midpoint: 0.5 * (p + q), distance: 0.5 * worst.0 });
    }
    report
}

/// Occupancy raster over a bounding box, with cell centers at
/// `x0 + (i + ½)dx`.
struct Raster {
    x0: f64,
    y0: f64,
    dx: f64,
    dy: f64,
    covered: Vec<bool>,
}

impl Raster {
    fn new(values: &[Complex64]) -> Self {
        let (mut xmin, mut xmax, mut ymin, mut ymax) =
            (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
        for v in values {
            xmin = xmin.min(v.re);
            xmax = xmax.max(v.re);
            ymin = ymin.min(v.im);
            ymax = ymax.max(v.im);
        }
        let pad = |lo: f64, hi: f64| {
            let w = hi - lo;
            if w > 0.0 {
                w
            } else {
                f64::MIN_POSITIVE.max(lo.abs() * 1e-12).max(1e-300)
            }
        };
        Self {
            x0: xmin,
            y0: ymin,
            dx: pad(xmin, xmax) / RASTER as f64,
            dy: pad(ymin, ymax) / RASTER as f64,
            covered: vec![false; RASTER * RASTER],
        }
    }

    fn cell(&self, v: Complex64) -> (usize, usize) {
        let clamp = |x: f64| (x.floor().max(0.0) as usize).min(RASTER - 1);
        (clamp((v.re - self.x0) / self.dx), clamp((v.im - self.y0) / self.dy))
    }

    fn center(&self, ix: usize, iy: usize) -> Complex64 {
        Complex64::new(self.x0 + (ix as f64 + 0.5) * self.dx, self.y0 + (iy as f64 + 0.5) * self.dy)
    }

    fn mark(&mut self, v: Complex64) {
        let (ix, iy) = self.cell(v);
        self.covered[iy * RASTER + ix] = true;
    }

    fn mark_segment(&mut self, p: Complex64, q: Complex64) {
        let steps = (2.0 * ((q.re - p.re).abs() / self.dx).max((q.im - p.im).abs() / self.dy)).ceil() as usize;
        for s in 0..=steps {
            let t = if steps == 0 { 0.0 } else { s as f64 / steps as f64 };
            self.mark(p + (q - p) * t);
        }
    }

    fn mark_triangle(&mut self, tri: [Complex64; 3]) {
        for k in 0..3 {
            self.mark_segment(tri[k], tri[(k + 1) % 3]);
        }
        let uv = |v: Complex64| ((v.re - self.x0) / self.dx - 0.5, (v.im - self.y0) / self.dy - 0.5);
        let [p, q, r] = tri.map(uv);
        let orient = (q.0 - p.0) * (r.1 - p.1) - (q.1 - p.1) * (r.0 - p.0);
        if orient == 0.0 {
            return;
        }
        let lo = |a: f64, b: f64, c: f64| (a.min(b).min(c).ceil().max(0.0)) as usize;
        let hi = |a: f64, b: f64, c: f64| (a.max(b).max(c).floor().min(RASTER as f64 - 1.0)).max(-1.0) as isize;
        let (ix0, ix1) = (lo(p.0, q.0, r.0), hi(p.0, q.0, r.0));
        let (iy0, iy1) = (lo(p.1, q.1, r.1), hi(p.1, q.1, r.1));
        let edge = |a: (f64, f64), b: (f64, f64), x: f64, y: f64| (b.0 - a.0) * (y - a.1) - (b.1 - a.1) * (x - a.0);
        for iy in iy0 as isize..=iy1 {
            for ix in ix0 as isize..=ix1 {
                let (x, y) = (ix as f64, iy as f64);
                let inside = [edge(p, q, x, y), edge(q, r, x, y), edge(r, p, x, y)]
                    .iter()
                    .all(|e| e * orient >= 0.0);
                if inside {
                    self.covered[iy as usize * RASTER + ix as usize] = true;
                }
            }
        }
    }

    /// Cells whose centers lie inside the convex polygon, one `[lo, hi]`
    /// column range per row (empty when `lo > hi`).
    fn hull_rows(&self, hull: &[Complex64]) -> Vec<(isize, isize)> {
        let n = hull.len();
        (0..RASTER)
            .map(|iy| {
                let y = self.y0 + (iy as f64 + 0.5) * self.dy;
                let (mut xl, mut xr) = (f64::INFINITY, f64::NEG_INFINITY);
                for k in 0..n {
                    let (a, b) = (hull[k], hull[(k + 1) % n]);
                    if (a.im <= y && y <= b.im) || (b.im <= y && y <= a.im) {
                        if a.im == b.im {
                            xl = xl.min(a.re.min(b.re));
                            xr = xr.max(a.re.max(b.re));
                        } else {
                            let x = a.re + (y - a.im) * (b.re - a.re) / (b.im - a.im);
                            xl = xl.min(x);
                            xr = xr.max(x);
                        }
                    }
                }
                if xl > xr {
                    return (1, 0);
                }
                let lo = ((xl - self.x0) / self.dx - 0.5).ceil().max(0.0) as isize;
                let hi = ((xr - self.x0) / self.dx - 0.5).floor().min(RASTER as f64 - 1.0) as isize;
                (lo, hi)
            })
            .collect()
    }

    /// Euclidean distance from every cell center to the nearest covered
    /// center, in world units.
    fn distance_map(&self) -> Vec<f64> {
        let mut d2: Vec<f64> = self.covered.iter().map(|&c| if c { 0.0 } else { f64::INFINITY }).collect();
        let mut line = vec![0.0; RASTER];
        for iy in 0..RASTER {
            let row = &mut d2[iy * RASTER..(iy + 1) * RASTER];
            line.copy_from_slice(row);
            row.copy_from_slice(&squared_distance_1d(&line, self.dx));
        }
        for ix in 0..RASTER {
            for iy in 0..RASTER {
                line[iy] = d2[iy * RASTER + ix];
            }
            for (iy, v) in squared_distance_1d(&line, self.dy).into_iter().enumerate() {
                d2[iy * RASTER + ix] = v;
            }
        }
        d2.into_iter().map(f64::sqrt).collect()
    }
}

/// One-dimensional squared distance transform (lower envelope of parabolas,
/// Felzenszwalb–Huttenlocher) on samples spaced `h` apart.
fn squared_distance_1d(f: &[f64], h: f64) -> Vec<f64> {
    let n = f.len();
    let sites: Vec<usize> = (0..n).filter(|&q| f[q].is_finite()).collect();
    if sites.is_empty() {
        return vec![f64::INFINITY; n];
    }
    let pos = |q: usize| q as f64 * h;
    let meet = |p: usize, q: usize| ((f[q] + pos(q) * pos(q)) - (f[p] + pos(p) * pos(p))) / (2.0 * (pos(q) - pos(p)));
    let mut v: Vec<usize> = vec![sites[0]];
    let mut z: Vec<f64> = vec![f64::NEG_INFINITY, f64::INFINITY];
    for &q in &sites[1..] {
        let mut s = meet(*v.last().unwrap(), q);
        while s <= z[v.len() - 1] {
            v.pop();
            z.pop();
            s = meet(*v.last().unwrap(), q);
        }
        *z.last_mut().unwrap() = s;
        v.push(q);
        z.push(f64::INFINITY);
    }
    let mut k = 0;
    (0..n)
        .map(|i| {
            let x = pos(i);
            while z[k + 1] < x {
                k += 1;
            }
            let d = x - pos(v[k]);
            d * d + f[v[k]]
        })
        .collect()
}

fn classify_plane(
    cloud: &RangeCloud,
    values: &[Complex64],
    diam: f64,
    tol: f64,
    mut report: ConvexityReport,
) -> ConvexityReport {
    let mut raster = Raster::new(values);
    for &v in values {
        raster.mark(v);
    }
    if let Some(grid) = cloud.grid {
        for [i, j, k] in grid.triangles() {
            raster.mark_triangle([values[i], values[j], values[k]]);
        }
    }
    let dist = raster.distance_map();
    let rows = raster.hull_rows(&report.hull);

    let (mut inside, mut uncovered) = (0usize, 0usize);
    let mut worst = (0.0, 0usize, 0usize);
    for (iy, &(lo, hi)) in rows.iter().enumerate() {
        for ix in lo.max(0)..=hi {
            let ix = ix as usize;
            inside += 1;
            let idx = iy * RASTER + ix;
            if !raster.covered[idx] {
                uncovered += 1;
                if dist[idx] > worst.0 {
                    worst = (dist[idx], ix, iy);
                }
            }
        }
    }
    let covered_fraction = if inside == 0 { 1.0 } else { 1.0 - uncovered as f64 / inside as f64 };
    report.coverage_area = report.hull_area * covered_fraction;
    report.deficiency = 1.0 - covered_fraction;
    report.max_gap = worst.0 / diam;
    report.verdict = verdict_for(report.max_gap, tol);

    if worst.0 > 0.0 {
        report.witness = find_witness(&raster, &dist, raster.center(worst.1, worst.2), &report.hull);
    }
    if report.verdict == Verdict::NotConvex && report.witness.is_none_or(|w| w.distance <= tol * diam) {
        report.verdict = Verdict::Inconclusive;
        report.notes.push("no witness pair found for the largest gap".into());
    }
    report
}

/// Searches lines through `c` for two covered cells whose midpoint is far
/// from the covered set; hull edges serve as fallback chords.
fn find_witness(raster: &Raster, dist: &[f64], c: Complex64, hull: &[Complex64]) -> Option<Witness> {
    let lookup = |w: Complex64| {
        let (ix, iy) = raster.cell(w);
        dist[iy * RASTER + ix]
    };
    let step = 0.5 * raster.dx.min(raster.dy);
    let inside_box = |w: Complex64| {
        w.re >= raster.x0
            && w.im >= raster.y0
            && w.re <= raster.x0 + RASTER as f64 * raster.dx
            && w.im <= raster.y0 + RASTER as f64 * raster.dy
    };
    let march = |dir: Complex64| {
        let mut w = c;
        loop {
            w += dir * step;
            if !inside_box(w) {
                return None;
            }
            let (ix, iy) = raster.cell(w);
            if raster.covered[iy * RASTER + ix] {
                return Some(raster.center(ix, iy));
            }
        }
    };
    let mut best: Option<Witness> = None;
    let mut consider = |p: Complex64, q: Complex64| {
        let midpoint = 0.5 * (p + q);
        let distance = lookup(midpoint);
        if best.is_none_or(|b| distance > b.distance) {
            best = Some(Witness { p, q, midpoint, distance });
        }
    };
    const DIRECTIONS: usize = 90;
    for k in 0..DIRECTIONS {
        let dir = Complex64::from_polar(1.0, PI * k as f64 / DIRECTIONS as f64);
        if let (Some(p), Some(q)) = (march(dir), march(-dir)) {
            consider(p, q);
        }
    }
    if hull.len() >= 2 {
        for k in 0..hull.len() {
            consider(hull[k], hull[(k + 1) % hull.len()]);
        }
    }
    best
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SymmetryReport {
    pub symmetric: bool,
    /// `max |T̃(conj λ) − conj T̃(λ)|` over paired grid points.
    pub max_violation: f64,
    /// Points whose conjugate is not in the cloud.
    pub unpaired: usize,
}

fn key(z: Complex64) -> (u64, u64) {
    // -0.0 and 0.0 must pair up
    let norm = |x: f64| if x == 0.0 { 0.0_f64.to_bits() } else { x.to_bits() };
    (norm(z.re), norm(z.im))
}

/// Checks `T̃(conj λ) = conj T̃(λ)` across the cloud.
pub fn symmetry_check(cloud: &RangeCloud, tol: f64) -> SymmetryReport {
    let index: HashMap<(u64, u64), Complex64> = cloud.points.iter().map(|p| (key(p.lambda), p.value)).collect();
    let mut max_violation: f64 = 0.0;
    let mut unpaired = 0;
    for p in &cloud.points {
        match index.get(&key(p.lambda.conj())) {
            Some(&w) => max_violation = max_violation.max((w - p.value.conj()).norm()),
            None => unpaired += 1,
        }
    }
    SymmetryReport { symmetric: unpaired == 0 && max_violation <= tol, max_violation, unpaired }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MembershipReport {
    pub member: bool,
    /// `Re T̃(probe)`.
    pub probe_value: f64,
    /// Distance from the probe value to the sampled range (cloud points and,
    /// for grid clouds, the grid triangles' images).
    pub distance: f64,
    /// `tol · diameter`.
    pub threshold: f64,
}

fn segment_distance(w: Complex64, a: Complex64, b: Complex64) -> f64 {
    let d = b - a;
    let len2 = d.norm_sqr();
    let t = if len2 == 0.0 { 0.0 } else { (((w - a) * d.conj()).re / len2).clamp(0.0, 1.0) };
    (w - (a + d * t)).norm()
}

fn triangle_distance(w: Complex64, [a, b, c]: [Complex64; 3]) -> f64 {
    let (s1, s2, s3) = (cross(a, b, w), cross(b, c, w), cross(c, a, w));
    let inside = (s1 >= 0.0 && s2 >= 0.0 && s3 >= 0.0) || (s1 <= 0.0 && s2 <= 0.0 && s3 <= 0.0);
    if inside && cross(a, b, c) != 0.0 {
        return 0.0;
    }
    segment_distance(w, a, b).min(segment_distance(w, b, c)).min(segment_distance(w, c, a))
}

/// Tests whether `Re T̃(probe)` is within `tol·diameter` of the sampled range.
pub fn real_part_membership(
    spec: &OperatorSpec,
    params: SpaceParams,
    probe: DiskPoint,
    cloud: &RangeCloud,
    tol: f64,
) -> Result<MembershipReport> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    if cloud.is_empty() {
        return Err(Error::InvalidArgument("empty cloud".into()));
    }
    let values = cloud.values();
    let (diam, _, _) = diameter(&convex_hull(&values));
    let w = Complex64::new(berezin_transform(spec, params, probe).re, 0.0);
    let mut distance = values.iter().map(|v| (v - w).norm()).fold(f64::INFINITY, f64::min);
    if let Some(grid) = cloud.grid {
        for [i, j, k] in grid.triangles() {
            distance = distance.min(triangle_distance(w, [values[i], values[j], values[k]]));
        }
    }
    let threshold = tol * diam;
    Ok(MembershipReport { member: distance <= threshold, probe_value: w.re, distance, threshold })
}

/// `max ||B(e^{iθ})| − 1|` over `n_samples` equally spaced boundary points.
pub fn boundary_modulus_check(symbol: &Symbol, n_samples: usize) -> Result<f64> {
    if !matches!(symbol, Symbol::BlaschkeProduct { .. }) {
        return Err(Error::InvalidSymbol("boundary modulus check needs a finite Blaschke product".into()));
    }
    symbol.validate()?;
    if n_samples < 8 {
        return Err(Error::InvalidArgument(format!("need at least 8 samples, got {n_samples}")));
    }
    (0..n_samples).try_fold(0.0_f64, |acc, k| {
        let z = Complex64::from_polar(1.0, 2.0 * PI * k as f64 / n_samples as f64);
        Ok(acc.max((evaluate_symbol(symbol, z)?.norm() - 1.0).abs()))
    })
}
