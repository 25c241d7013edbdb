//! CSV grids and schematic SVG plots.

use std::fmt::Write as _;
use std::io::{self, Write};

use num_complex::Complex64;

use crate::regions::{free_region_boundary, RegionLabel, RegionReport};

pub const REGION_GRID_HEADER: &str = "re,im,label";
pub const JOST_GRID_HEADER: &str = "re,im,abs_v0";

/// 17 significant digits, enough to round-trip any `f64`.
pub fn format_number(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn format_complex(z: Complex64) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{} {} {}i", format_number(z.re), sign, format_number(z.im.abs()))
}

pub fn write_region_grid<W: Write>(mut out: W, points: &[(Complex64, RegionLabel)]) -> io::Result<()> {
    writeln!(out, "{REGION_GRID_HEADER}")?;
    for (lambda, label) in points {
        writeln!(
            out,
            "{},{},{}",
            format_number(lambda.re),
            format_number(lambda.im),
            label.as_str()
        )?;
    }
    Ok(())
}

pub fn write_jost_grid<W: Write>(mut out: W, points: &[(Complex64, f64)]) -> io::Result<()> {
    writeln!(out, "{JOST_GRID_HEADER}")?;
    for (z, value) in points {
        writeln!(
            out,
            "{},{},{}",
            format_number(z.re),
            format_number(z.im),
            format_number(*value)
        )?;
    }
    Ok(())
}

/// Visible λ-window of an SVG plot.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlotWindow {
    pub re: (f64, f64),
    pub im: (f64, f64),
}

impl Default for PlotWindow {
    fn default() -> Self {
        Self {
            re: (-4.0, 4.0),
            im: (-2.0, 2.0),
        }
    }
}

const SVG_WIDTH: f64 = 800.0;

impl PlotWindow {
    fn height(&self) -> f64 {
        SVG_WIDTH * (self.im.1 - self.im.0) / (self.re.1 - self.re.0)
    }

    fn map(&self, w: Complex64) -> (f64, f64) {
        let x = (w.re - self.re.0) / (self.re.1 - self.re.0) * SVG_WIDTH;
        let y = (self.im.1 - w.im) / (self.im.1 - self.im.0) * self.height();
        (x, y)
    }

    fn scale(&self) -> f64 {
        SVG_WIDTH / (self.re.1 - self.re.0)
    }
}

/// Band `[-2, 2]`, boundary of the spectrum-free region, the rectangle
/// enclosure (when it applies) and eigenvalue markers.
pub fn region_svg(report: &RegionReport, eigenvalues: &[Complex64], window: PlotWindow) -> String {
    let height = window.height();
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SVG_WIDTH}" height="{height:.1}" viewBox="0 0 {SVG_WIDTH} {height:.1}">"#
    );
    let _ = writeln!(
        s,
        r#"  <title>threshold c = {} ; no discrete spectrum: {}</title>"#,
        format_number(report.c),
        report.no_spectrum
    );
    let _ = writeln!(s, r#"  <rect x="0" y="0" width="{SVG_WIDTH}" height="{height:.1}" fill="white"/>"#);

    let (x0, y0) = window.map(Complex64::new(window.re.0, 0.0));
    let (x1, _) = window.map(Complex64::new(window.re.1, 0.0));
    let _ = writeln!(
        s,
        r##"  <line x1="{x0:.3}" y1="{y0:.3}" x2="{x1:.3}" y2="{y0:.3}" stroke="#bbbbbb" stroke-width="1"/>"##
    );

    let (bx0, by) = window.map(Complex64::new(-2.0, 0.0));
    let (bx1, _) = window.map(Complex64::new(2.0, 0.0));
    let _ = writeln!(
        s,
        r##"  <line class="band" x1="{bx0:.3}" y1="{by:.3}" x2="{bx1:.3}" y2="{by:.3}" stroke="black" stroke-width="3"/>"##
    );

    for curve in free_region_boundary(report.c, 720) {
        let points: Vec<String> = curve
            .iter()
            .map(|&w| {
                let (x, y) = window.map(w);
                format!("{x:.3},{y:.3}")
            })
            .collect();
        let _ = writeln!(
            s,
            r##"  <polyline class="free-region-boundary" points="{}" fill="none" stroke="#1f77b4" stroke-width="1.5"/>"##,
            points.join(" ")
        );
    }

    if let Some(r) = report.rectangles {
        let k = window.scale();
        for sign in [1.0, -1.0] {
            let left = if sign > 0.0 { r.re_lo } else { -r.re_hi };
            let (x, y) = window.map(Complex64::new(left, r.im_bound));
            let _ = writeln!(
                s,
                r##"  <rect class="enclosure" x="{x:.3}" y="{y:.3}" width="{:.3}" height="{:.3}" fill="none" stroke="#2ca02c" stroke-dasharray="4 2"/>"##,
                (r.re_hi - r.re_lo) * k,
                2.0 * r.im_bound * k
            );
        }
    }

    for &w in eigenvalues {
        let (x, y) = window.map(w);
        let _ = writeln!(
            s,
            r##"  <circle class="eigenvalue" cx="{x:.3}" cy="{y:.3}" r="4" fill="#d62728"/>"##
        );
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::ComplexJacobiOperator;

    #[test]
    fn numbers_have_seventeen_digits() {
        assert_eq!(format_number(10.0 / 3.0), "3.3333333333333335e0");
        let x = 0.1 + 0.2;
        assert_eq!(format_number(x).parse::<f64>().unwrap(), x);
        assert_eq!(format_complex(Complex64::new(1.0, -2.0)), "1.0000000000000000e0 - 2.0000000000000000e0i");
    }

    #[test]
    fn csv_headers_are_exact() {
        let mut buf = Vec::new();
        write_region_grid(&mut buf, &[(Complex64::new(1.0, 0.5), RegionLabel::Unresolved)]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("re,im,label"));
        assert_eq!(lines.next(), Some("1.0000000000000000e0,5.0000000000000000e-1,unresolved"));

        let mut buf = Vec::new();
        write_jost_grid(&mut buf, &[(Complex64::new(0.0, 0.0), 1.0)]).unwrap();
        assert!(String::from_utf8(buf).unwrap().starts_with("re,im,abs_v0\n"));
    }

    #[test]
    fn svg_contains_all_layers() {
        let op = ComplexJacobiOperator::diagonal(&[(3, Complex64::new(0.05, 0.0))]).unwrap();
        let report = RegionReport::new(&op);
        let svg = region_svg(&report, &[Complex64::new(2.01, 0.001)], PlotWindow::default());
        assert!(svg.starts_with("<?xml"));
        assert!(svg.contains(r#"version="1.1""#));
        assert!(svg.contains(r#"class="band""#));
        assert!(svg.contains(r#"class="free-region-boundary""#));
        assert_eq!(svg.matches(r#"class="enclosure""#).count(), 2);
        assert!(svg.contains(r#"class="eigenvalue""#));
        assert!(svg.trim_end().ends_with("</svg>"));
    }
}
