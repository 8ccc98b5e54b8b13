//! ASCII and SVG rendering of diagrams. Layout: r grows to the right, i upward.

use crate::diagrams::{m_support, n_support, superpose, DiagramSupport, Kind, LocalComponent, Superposition};
use crate::segments::CuspidalLabel;
use crate::error::{Error, Result};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Ascii,
    Svg,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ascii" => Ok(Format::Ascii),
            "svg" => Ok(Format::Svg),
            other => Err(Error::parse(format!("unknown format {other:?}"))),
        }
    }
}

/// Points with a per-point multiplicity (number of overlaid diagrams).
struct Canvas {
    title: String,
    rmax: u32,
    imin: i32,
    imax: i32,
    marks: BTreeMap<(u32, i32), Vec<usize>>,
}

impl Canvas {
    fn new(title: String, rmax: u32, marks: BTreeMap<(u32, i32), Vec<usize>>) -> Self {
        let rmax = marks.keys().map(|p| p.0).max().unwrap_or(1).max(rmax).max(1);
        let imin = marks.keys().map(|p| p.1).min().unwrap_or(0).min(0);
        let imax = marks.keys().map(|p| p.1).max().unwrap_or(0).max(0);
        Canvas {
            title,
            rmax,
            imin,
            imax,
            marks,
        }
    }

    fn ascii(&self) -> String {
        let mut out = format!("{}\n", self.title);
        for i in (self.imin..=self.imax).rev() {
            let _ = write!(out, "{i:>4} |");
            for r in 1..=self.rmax {
                let c = match self.marks.get(&(r, i)).map(Vec::len) {
                    None => '.',
                    Some(1) => 'o',
                    Some(n) if n < 10 => char::from_digit(n as u32, 10).unwrap(),
                    Some(_) => '*',
                };
                let _ = write!(out, " {c}");
            }
            out.push('\n');
        }
        let _ = writeln!(out, "     +{}", "-".repeat(2 * self.rmax as usize));
        let mut axis = String::from("      ");
        for r in 1..=self.rmax {
            let _ = write!(axis, "{}", r % 10);
            axis.push(' ');
        }
        out.push_str(axis.trim_end());
        out.push_str("   (r)\n");
        out
    }

    fn svg(&self) -> String {
        const CELL: i64 = 32;
        const M: i64 = 48;
        let cols = self.rmax as i64;
        let rows = (self.imax - self.imin + 1) as i64;
        let w = 2 * M + cols * CELL;
        let h = 2 * M + rows * CELL;
        let x = |r: u32| M + (r as i64 - 1) * CELL + CELL / 2;
        let y = |i: i32| M + (self.imax - i) as i64 * CELL + CELL / 2;
        let mut s = String::new();
        let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
        );
        let _ = writeln!(s, r#"  <title>{}</title>"#, escape(&self.title));
        let _ = writeln!(s, r#"  <rect x="0" y="0" width="{w}" height="{h}" fill="white"/>"#);
        let y0 = y(0);
        let _ = writeln!(
            s,
            r#"  <line class="axis" x1="{}" y1="{y0}" x2="{}" y2="{y0}" stroke="black"/>"#,
            M - 8,
            w - M + 8
        );
        let _ = writeln!(
            s,
            r#"  <line class="axis" x1="{}" y1="{}" x2="{}" y2="{}" stroke="black"/>"#,
            M - 8,
            M - 8,
            M - 8,
            h - M + 8
        );
        for r in 1..=self.rmax {
            let _ = writeln!(
                s,
                r#"  <text x="{}" y="{}" font-size="12" text-anchor="middle">{r}</text>"#,
                x(r),
                h - M / 2
            );
        }
        for i in self.imin..=self.imax {
            let _ = writeln!(
                s,
                r#"  <text x="{}" y="{}" font-size="12" text-anchor="end">{i}</text>"#,
                M - 14,
                y(i) + 4
            );
        }
        for (&(r, i), blocks) in &self.marks {
            let list: Vec<String> = blocks.iter().map(|b| b.to_string()).collect();
            let _ = writeln!(
                s,
                r##"  <rect class="mark" data-r="{r}" data-i="{i}" data-blocks="{}" x="{}" y="{}" width="20" height="20" fill="#c0392b" fill-opacity="{}"/>"##,
                list.join(","),
                x(r) - 10,
                y(i) - 10,
                (0.4 + 0.2 * blocks.len() as f64).min(1.0)
            );
        }
        s.push_str("</svg>\n");
        s
    }
}

fn escape(t: &str) -> String {
    t.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn kind_name(k: Kind) -> &'static str {
    match k {
        Kind::M => "m",
        Kind::N => "n",
    }
}

pub fn render_support(d: &DiagramSupport, format: Format) -> String {
    let marks = d.points.iter().map(|&p| (p, vec![0])).collect();
    let c = Canvas::new(
        format!("{}_{{{},{}}}(r,i)", kind_name(d.kind), d.s, d.t),
        d.s + d.t - 1,
        marks,
    );
    match format {
        Format::Ascii => c.ascii(),
        Format::Svg => c.svg(),
    }
}

pub fn render_superposition(sup: &Superposition, title: &str, format: Format) -> String {
    let marks = sup
        .iter()
        .map(|(&p, v)| (p, v.iter().map(|c| c.block).collect()))
        .collect();
    let rmax = sup.values().flatten().map(|c| c.source.0).max().unwrap_or(1);
    let c = Canvas::new(title.to_string(), rmax, marks);
    match format {
        Format::Ascii => c.ascii(),
        Format::Svg => c.svg(),
    }
}

/// Several diagrams on one canvas; each mark lists the indices of the
/// diagrams containing it.
pub fn render_overlay(ds: &[DiagramSupport], title: &str, format: Format) -> String {
    let mut marks: BTreeMap<(u32, i32), Vec<usize>> = BTreeMap::new();
    for (k, d) in ds.iter().enumerate() {
        for &p in &d.points {
            marks.entry(p).or_default().push(k);
        }
    }
    let rmax = ds.iter().map(|d| d.s + d.t - 1).max().unwrap_or(1);
    let c = Canvas::new(title.to_string(), rmax, marks);
    match format {
        Format::Ascii => c.ascii(),
        Format::Svg => c.svg(),
    }
}

/// The six reference figures as (file name, SVG): m for Speh and Steinberg,
/// m on both sides of s = t, an m superposition, n for Speh and Steinberg,
/// n for s = t = 3, and an n superposition.
pub fn figures() -> Vec<(String, String)> {
    let pi = CuspidalLabel::unit("pi");
    let comp = LocalComponent::on_line(&pi, 4, &[1, 3, 5]);
    let svg = Format::Svg;
    vec![
        (
            "fig1_m_speh_st.svg".into(),
            render_overlay(&[m_support(4, 1), m_support(1, 4)], "m: Speh_4 (0), St_4 (1)", svg),
        ),
        (
            "fig2_m_general.svg".into(),
            render_overlay(&[m_support(5, 3), m_support(3, 5)], "m: (s,t) = (5,3) (0), (3,5) (1)", svg),
        ),
        (
            "fig3_m_superposition.svg".into(),
            render_superposition(&superpose(&comp, &pi, Kind::M), "m superposition, s = 4, t = 1,3,5", svg),
        ),
        (
            "fig4_n_speh_st.svg".into(),
            render_overlay(&[n_support(4, 1), n_support(1, 4)], "n: Speh_4 (0), St_4 (1)", svg),
        ),
        ("fig5_n_3_3.svg".into(), render_support(&n_support(3, 3), svg)),
        (
            "fig6_n_superposition.svg".into(),
            render_superposition(&superpose(&comp, &pi, Kind::N), "n superposition, s = 4, t = 1,3,5", svg),
        ),
    ]
}

/// Cells of an overlay SVG that belong to diagram `k`.
pub fn svg_points_of(svg: &str, k: usize) -> BTreeSet<(u32, i32)> {
    svg.split('<')
        .filter(|tag| tag.contains("class=\"mark\""))
        .filter(|tag| {
            attr(tag, "data-blocks")
                .is_some_and(|b| b.split(',').any(|x| x.parse() == Ok(k)))
        })
        .filter_map(|tag| Some((attr(tag, "data-r")?.parse().ok()?, attr(tag, "data-i")?.parse().ok()?)))
        .collect()
}

fn attr<'a>(tag: &'a str, name: &str) -> Option<&'a str> {
    let key = format!("{name}=\"");
    let start = tag.find(&key)? + key.len();
    let len = tag[start..].find('"')?;
    Some(&tag[start..start + len])
}

/// The (r, i) cells marked in an SVG produced by this module.
pub fn svg_points(svg: &str) -> BTreeSet<(u32, i32)> {
    svg.split('<')
        .filter(|tag| tag.contains("class=\"mark\""))
        .filter_map(|tag| Some((attr(tag, "data-r")?.parse().ok()?, attr(tag, "data-i")?.parse().ok()?)))
        .collect()
}
