//! Two-dimensional slices of wall arrangements, for figures.

use crate::error::Result;
use crate::quiver::{genuine_walls_affine, Quiver};
use crate::rational::{dot, fmt_q, q, Q};
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::fmt::Write;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceSpec {
    #[serde(with = "crate::rational::serde_qvec")]
    pub basepoint: Vec<Q>,
    #[serde(with = "crate::rational::serde_qvec")]
    pub dir1: Vec<Q>,
    #[serde(with = "crate::rational::serde_qvec")]
    pub dir2: Vec<Q>,
    #[serde(with = "crate::rational::serde_q")]
    pub extent: Q,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WallTag {
    Divisorial,
    Flopping,
    Boundary,
}

impl WallTag {
    pub fn color(self) -> &'static str {
        match self {
            WallTag::Divisorial => "red",
            WallTag::Flopping => "blue",
            WallTag::Boundary => "black",
        }
    }
}

/// The hyperplane {x : normal·x + offset = 0}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaggedWall {
    #[serde(with = "crate::rational::serde_qvec")]
    pub normal: Vec<Q>,
    #[serde(with = "crate::rational::serde_q")]
    pub offset: Q,
    pub tag: WallTag,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Segment {
    pub tag: WallTag,
    #[serde(with = "crate::rational::serde_qvec")]
    pub from: Vec<Q>,
    #[serde(with = "crate::rational::serde_qvec")]
    pub to: Vec<Q>,
    /// Index of the wall in the input list.
    pub wall: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceOutput {
    pub segments: Vec<Segment>,
    /// Walls containing the whole slice plane.
    pub full_slice: Vec<usize>,
}

/// Clips each wall to the square |u|, |w| ≤ extent of the slice
/// basepoint + u·dir1 + w·dir2. Segments are sorted.
pub fn slice_segments(spec: &SliceSpec, walls: &[TaggedWall]) -> SliceOutput {
    let mut out = SliceOutput::default();
    let e = &spec.extent;
    for (i, w) in walls.iter().enumerate() {
        let a = dot(&w.normal, &spec.dir1);
        let b = dot(&w.normal, &spec.dir2);
        let c = dot(&w.normal, &spec.basepoint) + &w.offset;
        if a.is_zero() && b.is_zero() {
            if c.is_zero() {
                out.full_slice.push(i);
            }
            continue;
        }
        // a u + b w + c = 0 against the four edges
        let mut pts: Vec<(Q, Q)> = Vec::new();
        for side in [-e.clone(), e.clone()] {
            if !b.is_zero() {
                let wv = -(&c + &a * &side) / &b;
                if wv.abs() <= *e {
                    pts.push((side.clone(), wv));
                }
            }
            if !a.is_zero() {
                let uv = -(&c + &b * &side) / &a;
                if uv.abs() <= *e {
                    pts.push((uv, side.clone()));
                }
            }
        }
        pts.sort();
        pts.dedup();
        if pts.len() >= 2 {
            let (p, r) = (pts.first().unwrap(), pts.last().unwrap());
            out.segments.push(Segment { tag: w.tag, from: vec![p.0.clone(), p.1.clone()], to: vec![r.0.clone(), r.1.clone()], wall: i });
        }
    }
    out.segments.sort();
    out
}

/// Genuine walls of the affine quiver for nδ, tagged by the δ₀-coefficient
/// m of mδ + α: m = 0 divisorial, δ boundary, otherwise flopping.
pub fn quiver_walls(qv: &Quiver, n: i64) -> Result<Vec<TaggedWall>> {
    let ad = qv.affine_data()?;
    let delta = crate::rational::canonical_line_i64(&ad.delta).unwrap();
    Ok(genuine_walls_affine(qv, n)?
        .into_iter()
        .map(|nu| {
            let tag = if nu == delta {
                WallTag::Boundary
            } else if nu[0] == 0 {
                WallTag::Divisorial
            } else {
                WallTag::Flopping
            };
            TaggedWall { normal: nu.iter().map(|&x| q(x)).collect(), offset: Q::zero(), tag }
        })
        .collect())
}

/// The level-one plane θ·δ = 1 through e₀ with directions e₁ − e₀, e₂ − e₀.
pub fn level_one_slice(qv: &Quiver, extent: Q) -> SliceSpec {
    let n = qv.n();
    let e = |i: usize| -> Vec<Q> { (0..n).map(|j| if i == j { q(1) } else { Q::zero() }).collect() };
    let diff = |i: usize| -> Vec<Q> { e(i).iter().zip(e(0)).map(|(a, b)| a - b).collect() };
    SliceSpec { basepoint: e(0), dir1: diff(1), dir2: diff(2.min(n - 1)), extent }
}

fn fmt_coord(x: &Q) -> String {
    let v = x.to_f64().unwrap_or(0.0);
    let s = format!("{v:.4}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0".into() } else { s.into() }
}

fn exact_pair(p: &[Q]) -> String {
    format!("{},{}", fmt_q(&p[0]), fmt_q(&p[1]))
}

/// Deterministic SVG rendering; w is drawn upwards. Each line carries its
/// exact endpoints in data attributes.
pub fn to_svg(spec: &SliceSpec, out: &SliceOutput) -> String {
    let e = fmt_coord(&spec.extent);
    let two_e = fmt_coord(&(&spec.extent * q(2)));
    let stroke = fmt_coord(&(&spec.extent / q(100)));
    let mut s = String::new();
    writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="-{e} -{e} {two_e} {two_e}">"#).unwrap();
    writeln!(s, "<!-- legend: red = divisorial, blue = flopping, black = boundary -->").unwrap();
    writeln!(s, "<!-- slice: basepoint {} dir1 {} dir2 {} extent {} -->",
        fmt_qs(&spec.basepoint), fmt_qs(&spec.dir1), fmt_qs(&spec.dir2), fmt_q(&spec.extent)).unwrap();
    writeln!(s, r#"<rect x="-{e}" y="-{e}" width="{two_e}" height="{two_e}" fill="white" stroke="gray" stroke-width="{stroke}"/>"#).unwrap();
    for seg in &out.segments {
        writeln!(
            s,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{}" stroke-width="{stroke}" data-wall="{}" data-from="{}" data-to="{}"/>"#,
            fmt_coord(&seg.from[0]),
            fmt_coord(&-seg.from[1].clone()),
            fmt_coord(&seg.to[0]),
            fmt_coord(&-seg.to[1].clone()),
            seg.tag.color(),
            seg.wall,
            exact_pair(&seg.from),
            exact_pair(&seg.to),
        )
        .unwrap();
    }
    s.push_str("</svg>\n");
    s
}

fn fmt_qs(x: &[Q]) -> String {
    x.iter().map(fmt_q).collect::<Vec<_>>().join(",")
}

/// Tab-separated segment table with exact endpoints.
pub fn to_tsv(out: &SliceOutput) -> String {
    let mut s = String::from("wall\ttag\tu0\tw0\tu1\tw1\n");
    for seg in &out.segments {
        let tag = serde_json::to_value(seg.tag).unwrap();
        writeln!(s, "{}\t{}\t{}\t{}\t{}\t{}", seg.wall, tag.as_str().unwrap(), fmt_q(&seg.from[0]), fmt_q(&seg.from[1]), fmt_q(&seg.to[0]), fmt_q(&seg.to[1])).unwrap();
    }
    s
}
