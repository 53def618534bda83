//! Plots of the walls over a two-dimensional chart of the ample cone.
//!
//! Picard rank 2 is charted directly; rank 3 through an affine [`Slice`].
//! Wall polynomials are substituted exactly into the chart. Corner values
//! for marching squares are integers computed exactly whenever they fit in
//! `i128`, so the sign pattern is exact; floats are used only for
//! interpolation and output coordinates.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::ample::{AmpleCone, Slice};
use crate::error::{Error, Result};
use crate::linalg::{rat, rat_to_f64, solve_particular, QMat, QVec, Rat};
use crate::poly::WallPoly;
use crate::walls::{WallAtlas, WallKind};

/// `c[0] + c[1] x + c[2] y + c[3] x^2 + c[4] x y + c[5] y^2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Poly2(#[serde(serialize_with = "ser_rats")] pub [Rat; 6]);

fn ser_rats<S: serde::Serializer>(v: &[Rat; 6], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

impl Poly2 {
    fn zero() -> Self {
        Poly2(std::array::from_fn(|_| Rat::zero()))
    }

    pub fn eval(&self, x: &Rat, y: &Rat) -> Rat {
        let c = &self.0;
        &c[0] + &c[1] * x + &c[2] * y + &c[3] * x * x + &c[4] * x * y + &c[5] * y * y
    }

    pub fn eval_f64(&self, x: f64, y: f64) -> f64 {
        let c: Vec<f64> = self.0.iter().map(rat_to_f64).collect();
        c[0] + c[1] * x + c[2] * y + c[3] * x * x + c[4] * x * y + c[5] * y * y
    }

    fn is_constant(&self) -> bool {
        self.0[1..].iter().all(Zero::is_zero)
    }

    /// `self / h` when the affine form `h` divides `self` exactly.
    fn divide(&self, h: &Poly2) -> Option<Poly2> {
        let z = Rat::zero();
        let (h0, h1, h2) = (&h.0[0], &h.0[1], &h.0[2]);
        // coefficients of h * (g0 + g1 x + g2 y) in the monomial order of Poly2
        let rows = [
            [h0.clone(), z.clone(), z.clone()],
            [h1.clone(), h0.clone(), z.clone()],
            [h2.clone(), z.clone(), h0.clone()],
            [z.clone(), h1.clone(), z.clone()],
            [z.clone(), h2.clone(), h1.clone()],
            [z.clone(), z.clone(), h2.clone()],
        ];
        let a = QMat::from_rows(3, &rows.map(|r| QVec(r.to_vec())));
        let g = solve_particular(&a, &QVec(self.0.to_vec()))?;
        let mut q = Poly2::zero();
        for t in 0..3 {
            q.0[t] = g[t].clone();
        }
        Some(q)
    }

    /// Substitutes `x = x0 + i hx`, `y = y0 + j hy`, giving a polynomial in `(i, j)`.
    fn on_grid(&self, x0: &Rat, hx: &Rat, y0: &Rat, hy: &Rat) -> Poly2 {
        let c = &self.0;
        let two = rat(2);
        Poly2([
            self.eval(x0, y0),
            hx * (&c[1] + &two * &c[3] * x0 + &c[4] * y0),
            hy * (&c[2] + &c[4] * x0 + &two * &c[5] * y0),
            &c[3] * hx * hx,
            &c[4] * hx * hy,
            &c[5] * hy * hy,
        ])
    }
}

/// An affine map from the chart to Picard coordinates: coordinate `k` is
/// `rows[k][0] + rows[k][1] x + rows[k][2] y`.
#[derive(Clone, Debug)]
struct Chart {
    rows: Vec<[Rat; 3]>,
}

impl Chart {
    fn linear(&self, coeffs: &QVec) -> Poly2 {
        let mut p = Poly2::zero();
        for (l, row) in coeffs.iter().zip(&self.rows) {
            for (t, r) in row.iter().enumerate() {
                p.0[t] += l * r;
            }
        }
        p
    }

    fn quadratic(&self, q: &[Vec<Rat>]) -> Poly2 {
        let mut p = Poly2::zero();
        for (a, ra) in self.rows.iter().enumerate() {
            for (b, rb) in self.rows.iter().enumerate() {
                let w = &q[a][b];
                if w.is_zero() {
                    continue;
                }
                // (ra0 + ra1 x + ra2 y)(rb0 + rb1 x + rb2 y)
                p.0[0] += w * &ra[0] * &rb[0];
                p.0[1] += w * (&ra[0] * &rb[1] + &ra[1] * &rb[0]);
                p.0[2] += w * (&ra[0] * &rb[2] + &ra[2] * &rb[0]);
                p.0[3] += w * &ra[1] * &rb[1];
                p.0[4] += w * (&ra[1] * &rb[2] + &ra[2] * &rb[1]);
                p.0[5] += w * &ra[2] * &rb[2];
            }
        }
        p
    }

    fn lift(&self, x: &Rat, y: &Rat) -> QVec {
        self.rows
            .iter()
            .map(|r| &r[0] + &r[1] * x + &r[2] * y)
            .collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SceneCurve {
    pub kinds: Vec<WallKind>,
    pub label: String,
    /// The wall in chart coordinates, without factors vanishing on a region edge.
    pub poly: Poly2,
}

/// Everything needed to draw one chart: exact region and curves.
#[derive(Clone, Debug, Serialize)]
pub struct PlotScene {
    pub axes: [String; 2],
    /// `[x0, y0, x1, y1]`.
    #[serde(serialize_with = "ser_rat4")]
    pub viewport: [Rat; 4],
    /// Vertices of the ample region clipped to the viewport, counterclockwise.
    #[serde(serialize_with = "ser_points")]
    pub region: Vec<[Rat; 2]>,
    /// Affine forms `c0 + c1 x + c2 y`, positive on the ample region.
    pub inequalities: Vec<Poly2>,
    pub curves: Vec<SceneCurve>,
    pub resolution: usize,
    #[serde(skip)]
    chart: Option<ChartRows>,
}

#[derive(Clone, Debug)]
struct ChartRows(Chart);

fn ser_rat4<S: serde::Serializer>(v: &[Rat; 4], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

fn ser_points<S: serde::Serializer>(v: &[[Rat; 2]], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|p| [p[0].to_string(), p[1].to_string()]))
}

/// Smallest grid accepted.
pub const MIN_RESOLUTION: usize = 16;
pub const DEFAULT_RESOLUTION: usize = 512;

impl PlotScene {
    /// Builds the chart for Picard rank 2, or rank 3 with `slice` (the
    /// default slice when `None`).
    pub fn build(
        atlas: &WallAtlas,
        cone: &AmpleCone,
        slice: Option<&Slice>,
        resolution: usize,
    ) -> Result<Self> {
        if resolution < MIN_RESOLUTION {
            return Err(Error::Parse(format!(
                "resolution must be at least {MIN_RESOLUTION}"
            )));
        }
        let basis = cone.basis();
        let (chart, axes, corners) = match basis.rank() {
            2 => {
                let one = rat(1);
                let z = rat(0);
                let chart = Chart {
                    rows: vec![
                        [z.clone(), one.clone(), z.clone()],
                        [z.clone(), z.clone(), one],
                    ],
                };
                let mut pts = vec![[rat(0), rat(0)]];
                for r in cone.nef().rays() {
                    let m = r.iter().map(|x| x.abs()).max().expect("two coordinates");
                    pts.push([&r[0] / &m, &r[1] / &m]);
                }
                let axes = [
                    format!("a{}", basis.free_rays[0]),
                    format!("a{}", basis.free_rays[1]),
                ];
                (chart, axes, pts)
            }
            3 => {
                let default;
                let slice = match slice {
                    Some(s) => s,
                    None => {
                        default = crate::ample::slice_hyperplane(cone)?;
                        &default
                    }
                };
                let sub = slice.substitution();
                let chart = Chart { rows: sub.to_vec() };
                let mut pts = Vec::new();
                for r in cone.nef().rays() {
                    let f = slice.normal.dot(r);
                    if !f.is_positive() || !slice.level.is_positive() {
                        return Err(Error::Precondition(
                            "the slice must meet every ray of the nef cone on its positive side"
                                .into(),
                        ));
                    }
                    let p = r.scale(&(&slice.level / f));
                    pts.push([p[slice.kept[0]].clone(), p[slice.kept[1]].clone()]);
                }
                let axes = [
                    format!("a{}", basis.free_rays[slice.kept[0]]),
                    format!("a{}", basis.free_rays[slice.kept[1]]),
                ];
                (chart, axes, pts)
            }
            k => return Err(Error::DimUnsupported(k)),
        };
        let viewport = bounding_box(&corners);
        let inequalities: Vec<Poly2> = cone.facets().iter().map(|f| chart.linear(f)).collect();
        let mut region = rectangle(&viewport);
        for h in &inequalities {
            region = clip(&region, h);
        }
        let mut curves: Vec<SceneCurve> = Vec::new();
        for w in atlas.walls() {
            let p = match &w.poly {
                WallPoly::Linear(l) => chart.linear(&basis.project(&l.0)),
                WallPoly::Quadratic(q) => {
                    let free = &basis.free_rays;
                    let m: Vec<Vec<Rat>> = free
                        .iter()
                        .map(|&a| free.iter().map(|&b| q.0[(a, b)].clone()).collect())
                        .collect();
                    chart.quadratic(&m)
                }
            };
            let p = strip_boundary(p, &inequalities);
            if let Some(c) = curves.iter_mut().find(|c| proportional2(&c.poly, &p)) {
                if !c.kinds.contains(&w.kind) {
                    c.kinds.push(w.kind);
                }
                continue;
            }
            curves.push(SceneCurve {
                kinds: vec![w.kind],
                label: w.poly.to_string(),
                poly: p,
            });
        }
        Ok(PlotScene {
            axes,
            viewport,
            region,
            inequalities,
            curves,
            resolution,
            chart: Some(ChartRows(chart)),
        })
    }

    /// Picard coordinates of a chart point.
    pub fn lift(&self, x: &Rat, y: &Rat) -> QVec {
        self.chart
            .as_ref()
            .expect("scene built with a chart")
            .0
            .lift(x, y)
    }

    /// Chart point strictly inside every ampleness inequality.
    pub fn in_region(&self, x: &Rat, y: &Rat) -> bool {
        self.inequalities.iter().all(|h| h.eval(x, y).is_positive())
    }

    /// Segments of the zero set of curve `k`, chained into polylines.
    pub fn trace(&self, k: usize) -> Vec<Vec<(f64, f64)>> {
        if self.curves[k].poly.is_constant() {
            return Vec::new();
        }
        trace_curve(self, &self.curves[k].poly)
    }

    /// SVG document; identical input gives identical bytes.
    pub fn to_svg(&self) -> String {
        const SIZE: f64 = 640.0;
        const PAD: f64 = 40.0;
        let [x0, y0, x1, y1] = self.viewport.clone().map(|v| rat_to_f64(&v));
        let sx = (SIZE - 2.0 * PAD) / (x1 - x0);
        let sy = (SIZE - 2.0 * PAD) / (y1 - y0);
        let px = |x: f64| PAD + (x - x0) * sx;
        let py = |y: f64| SIZE - PAD - (y - y0) * sy;
        let mut s = String::new();
        let _ = writeln!(
            s,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">"
        );
        s.push_str(
            "<style>.ample{fill:#e3ecf7;stroke:#4a6fa5;stroke-width:1}\
.type-one{fill:none;stroke:#b03a2e;stroke-width:1.5}\
.type-two{fill:none;stroke:#1e7b45;stroke-width:1.5;stroke-dasharray:6 3}\
.both{fill:none;stroke:#6c3483;stroke-width:2}\
.frame{fill:none;stroke:#999;stroke-width:0.5}\
text{font:12px sans-serif}</style>\n",
        );
        let _ = writeln!(
            s,
            "<rect class=\"frame\" x=\"{PAD:.2}\" y=\"{PAD:.2}\" width=\"{:.2}\" height=\"{:.2}\"/>",
            SIZE - 2.0 * PAD,
            SIZE - 2.0 * PAD
        );
        let pts: Vec<String> = self
            .region
            .iter()
            .map(|p| format!("{:.2},{:.2}", px(rat_to_f64(&p[0])), py(rat_to_f64(&p[1]))))
            .collect();
        let _ = writeln!(s, "<polygon class=\"ample\" points=\"{}\"/>", pts.join(" "));
        for (k, c) in self.curves.iter().enumerate() {
            let lines = self.trace(k);
            if lines.is_empty() {
                continue;
            }
            let class = match c.kinds.as_slice() {
                [WallKind::TypeOne] => "type-one",
                [WallKind::TypeTwo] => "type-two",
                _ => "both",
            };
            let mut d = String::new();
            for line in &lines {
                for (i, &(x, y)) in line.iter().enumerate() {
                    let _ = write!(
                        d,
                        "{}{:.2} {:.2}",
                        if i == 0 { "M" } else { " L" },
                        px(x),
                        py(y)
                    );
                }
            }
            let _ = writeln!(
                s,
                "<path class=\"{class}\" d=\"{d}\"><title>{}</title></path>",
                xml_escape(&c.label)
            );
        }
        let _ = writeln!(
            s,
            "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\">{}</text>",
            SIZE - PAD,
            SIZE - PAD / 4.0,
            self.axes[0]
        );
        let _ = writeln!(
            s,
            "<text x=\"{:.2}\" y=\"{:.2}\">{}</text>",
            PAD / 4.0,
            PAD - 8.0,
            self.axes[1]
        );
        s.push_str("</svg>\n");
        s
    }
}

/// Removes factors vanishing on a whole edge of the region; they never meet
/// its interior. A constant result has no zero set in the region.
fn strip_boundary(mut p: Poly2, inequalities: &[Poly2]) -> Poly2 {
    while !p.is_constant() {
        match inequalities.iter().find_map(|h| p.divide(h)) {
            Some(q) => p = q,
            None => break,
        }
    }
    p
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

fn proportional2(a: &Poly2, b: &Poly2) -> bool {
    let Some(i) = (0..6).find(|&i| !a.0[i].is_zero()) else {
        return b.0.iter().all(Zero::is_zero);
    };
    if b.0[i].is_zero() {
        return false;
    }
    let c = &b.0[i] / &a.0[i];
    (0..6).all(|k| &a.0[k] * &c == b.0[k])
}

fn bounding_box(pts: &[[Rat; 2]]) -> [Rat; 4] {
    let min = |k: usize| pts.iter().map(|p| p[k].clone()).min().expect("nonempty");
    let max = |k: usize| pts.iter().map(|p| p[k].clone()).max().expect("nonempty");
    let (x0, x1, y0, y1) = (min(0), max(0), min(1), max(1));
    let mx = (&x1 - &x0) / rat(20);
    let my = (&y1 - &y0) / rat(20);
    [&x0 - &mx, &y0 - &my, x1 + mx, y1 + my]
}

fn rectangle(v: &[Rat; 4]) -> Vec<[Rat; 2]> {
    vec![
        [v[0].clone(), v[1].clone()],
        [v[2].clone(), v[1].clone()],
        [v[2].clone(), v[3].clone()],
        [v[0].clone(), v[3].clone()],
    ]
}

/// Sutherland-Hodgman against the half-plane `h >= 0`, exactly.
fn clip(poly: &[[Rat; 2]], h: &Poly2) -> Vec<[Rat; 2]> {
    let val = |p: &[Rat; 2]| h.eval(&p[0], &p[1]);
    let mut out = Vec::new();
    for i in 0..poly.len() {
        let (a, b) = (&poly[i], &poly[(i + 1) % poly.len()]);
        let (va, vb) = (val(a), val(b));
        let (ina, inb) = (!va.is_negative(), !vb.is_negative());
        if ina {
            out.push(a.clone());
        }
        if ina != inb {
            let t = &va / (&va - &vb);
            out.push([&a[0] + &t * (&b[0] - &a[0]), &a[1] + &t * (&b[1] - &a[1])]);
        }
    }
    out.dedup();
    if out.len() > 1 && out.first() == out.last() {
        out.pop();
    }
    out
}

/// Exact integer evaluator of a polynomial on grid indices, if it fits.
struct GridEval {
    exact: Option<[i128; 6]>,
    approx: [f64; 6],
}

impl GridEval {
    fn new(p: &Poly2, resolution: usize) -> Self {
        let l = p.0.iter().fold(BigInt::from(1), |acc, c| {
            num_integer::Integer::lcm(&acc, c.denom())
        });
        let ints: Vec<BigInt> =
            p.0.iter()
                .map(|c| (c * Rat::from_integer(l.clone())).to_integer())
                .collect();
        let r = resolution as f64;
        let bound: f64 = ints
            .iter()
            .zip([1.0, r, r, r * r, r * r, r * r])
            .map(|(c, w)| c.to_f64().unwrap_or(f64::INFINITY).abs() * w)
            .sum();
        let exact = if bound < 2f64.powi(120) {
            let v: Option<Vec<i128>> = ints.iter().map(|c| c.to_i128()).collect();
            v.map(|v| [v[0], v[1], v[2], v[3], v[4], v[5]])
        } else {
            None
        };
        let approx = std::array::from_fn(|k| ints[k].to_f64().unwrap_or(0.0));
        GridEval { exact, approx }
    }

    /// Value at grid point `(i, j)`.
    fn at(&self, i: usize, j: usize) -> Corner {
        match self.exact {
            Some(c) => {
                let (i, j) = (i as i128, j as i128);
                let v = c[0] + c[1] * i + c[2] * j + c[3] * i * i + c[4] * i * j + c[5] * j * j;
                Corner {
                    positive: v > 0,
                    approx: v as f64,
                    exact: Some(v),
                }
            }
            None => {
                let c = &self.approx;
                let (i, j) = (i as f64, j as f64);
                let v = c[0] + c[1] * i + c[2] * j + c[3] * i * i + c[4] * i * j + c[5] * j * j;
                Corner {
                    positive: v > 0.0,
                    approx: v,
                    exact: None,
                }
            }
        }
    }
}

#[derive(Clone, Copy)]
struct Corner {
    positive: bool,
    approx: f64,
    exact: Option<i128>,
}

/// Grid edge: `(i, j, vertical)` is the edge from corner `(i, j)` to
/// `(i + 1, j)` or, if vertical, to `(i, j + 1)`.
type EdgeId = (usize, usize, bool);

fn trace_curve(scene: &PlotScene, poly: &Poly2) -> Vec<Vec<(f64, f64)>> {
    let r = scene.resolution;
    let [x0, y0, x1, y1] = &scene.viewport;
    let hx = (x1 - x0) / rat(r as i64);
    let hy = (y1 - y0) / rat(r as i64);
    let grid = GridEval::new(&poly.on_grid(x0, &hx, y0, &hy), r);
    let (fx0, fy0, fhx, fhy) = (
        rat_to_f64(x0),
        rat_to_f64(y0),
        rat_to_f64(&hx),
        rat_to_f64(&hy),
    );
    let ineq: Vec<[f64; 3]> = scene
        .inequalities
        .iter()
        .map(|h| {
            [
                rat_to_f64(&h.0[0]),
                rat_to_f64(&h.0[1]),
                rat_to_f64(&h.0[2]),
            ]
        })
        .collect();
    let inside = |x: f64, y: f64| ineq.iter().all(|h| h[0] + h[1] * x + h[2] * y > 0.0);
    // the region in grid coordinates, for exact midpoint tests
    let grid_ineq: Vec<Poly2> = scene
        .inequalities
        .iter()
        .map(|h| h.on_grid(x0, &hx, y0, &hy))
        .collect();
    let vals: Vec<Vec<Corner>> = (0..=r)
        .map(|i| (0..=r).map(|j| grid.at(i, j)).collect())
        .collect();
    let pos = |i: usize, j: usize| vals[i][j].positive;
    let ends = |e: EdgeId| {
        let (i, j, vert) = e;
        let (a, b) = if vert {
            (vals[i][j], vals[i][j + 1])
        } else {
            (vals[i][j], vals[i + 1][j])
        };
        (a, b)
    };
    let point = |e: EdgeId| -> (f64, f64) {
        let (i, j, vert) = e;
        let (a, b) = ends(e);
        let t = if a.approx == b.approx {
            0.5
        } else {
            a.approx / (a.approx - b.approx)
        };
        let (gi, gj) = if vert {
            (i as f64, j as f64 + t)
        } else {
            (i as f64 + t, j as f64)
        };
        (fx0 + gi * fhx, fy0 + gj * fhy)
    };
    let exact_point = |e: EdgeId| -> Option<(Rat, Rat)> {
        let (i, j, vert) = e;
        let (a, b) = ends(e);
        let (va, vb) = (a.exact?, b.exact?);
        let t = Rat::new(BigInt::from(va), BigInt::from(va - vb));
        let (i, j) = (rat(i as i64), rat(j as i64));
        Some(if vert { (i, j + t) } else { (i + t, j) })
    };
    let keep = |a: EdgeId, b: EdgeId| -> bool {
        match (exact_point(a), exact_point(b)) {
            (Some(pa), Some(pb)) => {
                let half = Rat::new(1.into(), 2.into());
                let (mx, my) = ((pa.0 + pb.0) * &half, (pa.1 + pb.1) * &half);
                grid_ineq.iter().all(|h| h.eval(&mx, &my).is_positive())
            }
            _ => {
                let (pa, pb) = (point(a), point(b));
                inside((pa.0 + pb.0) / 2.0, (pa.1 + pb.1) / 2.0)
            }
        }
    };
    let mut segments: Vec<(EdgeId, EdgeId)> = Vec::new();
    for i in 0..r {
        for j in 0..r {
            let c = [pos(i, j), pos(i + 1, j), pos(i + 1, j + 1), pos(i, j + 1)];
            let edges: [EdgeId; 4] = [
                (i, j, false),
                (i + 1, j, true),
                (i, j + 1, false),
                (i, j, true),
            ];
            let crossing: Vec<usize> = (0..4).filter(|&k| c[k] != c[(k + 1) % 4]).collect();
            let mut emit = |a: usize, b: usize| {
                if keep(edges[a], edges[b]) {
                    segments.push((edges[a], edges[b]));
                }
            };
            match crossing.len() {
                2 => emit(crossing[0], crossing[1]),
                4 => {
                    let centre: f64 = [
                        vals[i][j],
                        vals[i + 1][j],
                        vals[i + 1][j + 1],
                        vals[i][j + 1],
                    ]
                    .iter()
                    .map(|v| v.approx)
                    .sum();
                    let cpos = centre > 0.0;
                    // corner k is cut off by edges (k - 1, k)
                    for (k, &ck) in c.iter().enumerate() {
                        if ck != cpos {
                            emit((k + 3) % 4, k);
                        }
                    }
                }
                _ => {}
            }
        }
    }
    let mut lines = Vec::new();
    for l in chain(&segments) {
        let pts: Vec<(f64, f64)> = l.into_iter().map(point).collect();
        clip_polyline(&pts, &ineq, &mut lines);
    }
    lines
}

/// Liang-Barsky clipping of each piece against `h0 + h1 x + h2 y >= 0`.
fn clip_polyline(pts: &[(f64, f64)], ineq: &[[f64; 3]], lines: &mut Vec<Vec<(f64, f64)>>) {
    let mut current: Vec<(f64, f64)> = Vec::new();
    for w in pts.windows(2) {
        let (a, b) = (w[0], w[1]);
        let (mut t0, mut t1) = (0.0f64, 1.0f64);
        for h in ineq {
            let va = h[0] + h[1] * a.0 + h[2] * a.1;
            let vb = h[0] + h[1] * b.0 + h[2] * b.1;
            if va < 0.0 && vb < 0.0 {
                t0 = 1.0;
                t1 = 0.0;
                break;
            }
            if va < 0.0 {
                t0 = t0.max(va / (va - vb));
            } else if vb < 0.0 {
                t1 = t1.min(va / (va - vb));
            }
        }
        if t0 >= t1 {
            if current.len() > 1 {
                lines.push(std::mem::take(&mut current));
            }
            current.clear();
            continue;
        }
        let at = |t: f64| (a.0 + t * (b.0 - a.0), a.1 + t * (b.1 - a.1));
        if t0 > 0.0 || current.is_empty() {
            if current.len() > 1 {
                lines.push(std::mem::take(&mut current));
            }
            current = vec![at(t0)];
        }
        current.push(at(t1));
        if t1 < 1.0 {
            lines.push(std::mem::take(&mut current));
        }
    }
    if current.len() > 1 {
        lines.push(current);
    }
}

fn chain(segments: &[(EdgeId, EdgeId)]) -> Vec<Vec<EdgeId>> {
    let mut at: BTreeMap<EdgeId, Vec<usize>> = BTreeMap::new();
    for (k, (a, b)) in segments.iter().enumerate() {
        at.entry(*a).or_default().push(k);
        at.entry(*b).or_default().push(k);
    }
    let mut used = vec![false; segments.len()];
    let mut lines = Vec::new();
    let other = |k: usize, e: EdgeId| {
        if segments[k].0 == e {
            segments[k].1
        } else {
            segments[k].0
        }
    };
    let next_unused = |used: &[bool], e: EdgeId| at[&e].iter().copied().find(|&k| !used[k]);
    for start in 0..segments.len() {
        if used[start] {
            continue;
        }
        used[start] = true;
        let mut line = std::collections::VecDeque::from([segments[start].0, segments[start].1]);
        while let Some(k) = next_unused(&used, *line.back().expect("nonempty")) {
            used[k] = true;
            let e = other(k, *line.back().expect("nonempty"));
            line.push_back(e);
        }
        while let Some(k) = next_unused(&used, *line.front().expect("nonempty")) {
            used[k] = true;
            let e = other(k, *line.front().expect("nonempty"));
            line.push_front(e);
        }
        lines.push(line.into_iter().collect());
    }
    lines
}
