//! Static SVG drawing of a laid-out graph.

use std::fmt::Write as _;

use tdabm_core::{color_of, size_scale, LayoutResult, MapperGraph, Palette, Rgb, SizeScale};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct RenderSpec {
    pub show_labels: bool,
    pub show_legend: bool,
    pub n_colors: usize,
    pub width_px: u32,
    pub height_px: u32,
    pub palette: Palette,
    pub size: SizeScale,
}

impl Default for RenderSpec {
    fn default() -> Self {
        Self {
            show_labels: true,
            show_legend: false,
            n_colors: 100,
            width_px: 512,
            height_px: 512,
            palette: Palette::default(),
            size: SizeScale::default(),
        }
    }
}

const UNCOLORED: Rgb = Rgb(0xbf, 0xbf, 0xbf);
const BAR_WIDTH: f64 = 14.0;
// room for the bar and its labels on the right
const BAR_GUTTER: f64 = 72.0;

impl RenderSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n_colors < 2 {
            return Err(Error::Usage("n_colors must be at least 2".into()));
        }
        if self.width_px < 64 || self.height_px < 64 {
            return Err(Error::Usage("image dimensions must be at least 64 px".into()));
        }
        Ok(())
    }

    pub fn color_of(&self, value: f64, range: (f64, f64)) -> Rgb {
        color_of(value, range, self.n_colors, self.palette)
    }
}

fn num(v: f64) -> String {
    // fixed precision keeps the bytes stable; avoid "-0.00"
    let s = format!("{v:.2}");
    if s == "-0.00" {
        "0.00".into()
    } else {
        s
    }
}

fn label_value(v: f64) -> String {
    let s = format!("{v:.4}");
    if s.starts_with("-0.0000") {
        "0.0000".into()
    } else {
        s
    }
}

/// One `<circle>` per vertex, one `<line>` per edge, optional ball-number
/// labels, a vertical color bar when the graph is colored, and an optional
/// legend listing ball sizes.
pub fn render_svg(g: &MapperGraph, layout: &LayoutResult, spec: &RenderSpec) -> Result<String> {
    spec.validate()?;
    if layout.positions.len() != g.len() {
        return Err(Error::Usage(format!(
            "layout has {} positions for {} vertices",
            layout.positions.len(),
            g.len()
        )));
    }
    let w = spec.width_px as f64;
    let h = spec.height_px as f64;
    let range = g.color_range();
    let plot_w = if range.is_some() { (w - BAR_GUTTER).max(w / 2.0) } else { w };
    let margin = spec.size.max_size + 4.0;
    let scale = (plot_w - 2.0 * margin).min(h - 2.0 * margin).max(0.0);
    let to_px = |p: [f64; 2]| (plot_w / 2.0 + p[0] * scale, h / 2.0 - p[1] * scale);

    let cards: Vec<usize> = g.vertices().iter().map(|v| v.cardinality).collect();
    let radii = size_scale(&cards, &spec.size);

    let mut out = String::new();
    let _ = writeln!(out, "<?xml version=\"1.0\" encoding=\"UTF-8\"?>");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\">",
        spec.width_px, spec.height_px
    );
    let _ = writeln!(out, "<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"#ffffff\"/>", spec.width_px, spec.height_px);

    out.push_str("<g id=\"edges\" stroke=\"#808080\" stroke-width=\"1.5\">\n");
    for e in g.edges() {
        let (x1, y1) = to_px(layout.positions[e.from.index()]);
        let (x2, y2) = to_px(layout.positions[e.to.index()]);
        let _ = writeln!(
            out,
            "<line id=\"edge-{}-{}\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
            e.from,
            e.to,
            num(x1),
            num(y1),
            num(x2),
            num(y2)
        );
    }
    out.push_str("</g>\n");

    out.push_str("<g id=\"vertices\" stroke=\"#000000\" stroke-width=\"0.8\">\n");
    for (v, r) in g.vertices().iter().zip(&radii) {
        let (cx, cy) = to_px(layout.positions[v.id.index()]);
        let fill = match (v.color, range) {
            (Some(c), Some(rg)) => spec.color_of(c, rg),
            _ => UNCOLORED,
        };
        let _ = writeln!(
            out,
            "<circle id=\"ball-{}\" cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{}\"/>",
            v.id,
            num(cx),
            num(cy),
            num(*r),
            fill
        );
    }
    out.push_str("</g>\n");

    if spec.show_labels {
        out.push_str("<g id=\"labels\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"middle\" fill=\"#000000\">\n");
        for v in g.vertices() {
            let (cx, cy) = to_px(layout.positions[v.id.index()]);
            let _ = writeln!(
                out,
                "<text class=\"vertex-label\" x=\"{}\" y=\"{}\">{}</text>",
                num(cx),
                num(cy + 3.5),
                v.id
            );
        }
        out.push_str("</g>\n");
    }

    if let Some((lo, hi)) = range {
        let top = 24.0;
        let bar_h = h - 48.0;
        let x = w - BAR_GUTTER + 10.0;
        let step = bar_h / spec.n_colors as f64;
        out.push_str("<g id=\"colorbar\">\n");
        for bin in 1..=spec.n_colors {
            // highest bin on top
            let y = top + (spec.n_colors - bin) as f64 * step;
            let _ = writeln!(
                out,
                "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\"/>",
                num(x),
                num(y),
                num(BAR_WIDTH),
                num(step + 0.05),
                spec.palette.color(bin, spec.n_colors)
            );
        }
        let _ = writeln!(
            out,
            "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"#000000\" stroke-width=\"0.5\"/>",
            num(x),
            num(top),
            num(BAR_WIDTH),
            num(bar_h)
        );
        let tx = num(x + BAR_WIDTH + 4.0);
        let _ = writeln!(
            out,
            "<text class=\"colorbar-label\" x=\"{tx}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"10\">{}</text>",
            num(top + 4.0),
            label_value(hi)
        );
        let _ = writeln!(
            out,
            "<text class=\"colorbar-label\" x=\"{tx}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"10\">{}</text>",
            num(top + bar_h + 4.0),
            label_value(lo)
        );
        out.push_str("</g>\n");
    }

    if spec.show_legend {
        out.push_str("<g id=\"legend\" font-family=\"sans-serif\" font-size=\"9\" fill=\"#000000\">\n");
        for (i, v) in g.vertices().iter().enumerate() {
            let _ = writeln!(
                out,
                "<text class=\"legend\" x=\"6\" y=\"{}\">ball {}: {} points</text>",
                num(12.0 + 11.0 * i as f64),
                v.id,
                v.cardinality
            );
        }
        out.push_str("</g>\n");
    }

    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use tdabm_core::{build_cover, build_graph, spring_layout, CoverConfig, PointCloud};

    fn graph(xs: &[f64], eps: f64) -> MapperGraph {
        let pc = PointCloud::new(vec!["x".into()], xs.to_vec()).unwrap();
        build_graph(&build_cover(&pc, &CoverConfig::new(eps).unwrap()).unwrap())
    }

    #[test]
    fn single_vertex() {
        let g = graph(&[0.0], 1.0);
        let l = spring_layout(&g, 42, 10).unwrap();
        let svg = render_svg(&g, &l, &RenderSpec::default()).unwrap();
        assert_eq!(svg.matches("<circle").count(), 1);
        assert_eq!(svg.matches("<line").count(), 0);
        // uncolored: no bar
        assert!(!svg.contains("colorbar"));
    }

    #[test]
    fn labels_can_be_turned_off() {
        let g = graph(&[0.0, 1.0, 2.0], 1.0).set_coloring(&[0.0, 1.0]).unwrap();
        let l = spring_layout(&g, 42, 50).unwrap();
        let on = render_svg(&g, &l, &RenderSpec::default()).unwrap();
        assert_eq!(on.matches("class=\"vertex-label\"").count(), 2);
        let off = render_svg(
            &g,
            &l,
            &RenderSpec {
                show_labels: false,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(off.matches("class=\"vertex-label\"").count(), 0);
        assert_eq!(off.matches("class=\"colorbar-label\"").count(), 2);
        assert_eq!(off.matches("<line id=\"edge-1-2\"").count(), 1);
    }

    #[test]
    fn legend_and_validation() {
        let g = graph(&[0.0, 1.0, 2.0], 1.0);
        let l = spring_layout(&g, 1, 50).unwrap();
        let spec = RenderSpec {
            show_legend: true,
            ..Default::default()
        };
        let svg = render_svg(&g, &l, &spec).unwrap();
        assert_eq!(svg.matches("class=\"legend\"").count(), 2);
        for bad in [
            RenderSpec { n_colors: 1, ..Default::default() },
            RenderSpec { width_px: 10, ..Default::default() },
        ] {
            assert!(render_svg(&g, &l, &bad).is_err());
        }
        let short = LayoutResult {
            positions: vec![[0.0, 0.0]],
            seed: 0,
        };
        assert!(render_svg(&g, &short, &RenderSpec::default()).is_err());
    }

    #[test]
    fn byte_stable() {
        let g = graph(&[0.0, 0.4, 0.9, 1.3, 2.0], 0.5)
            .set_coloring(&[0.1, 0.5, 0.9])
            .unwrap();
        let l = spring_layout(&g, 5, 100).unwrap();
        let a = render_svg(&g, &l, &RenderSpec::default()).unwrap();
        let b = render_svg(&g, &l, &RenderSpec::default()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.matches("<rect").count(), 1 + 100 + 1);
    }
}
