//! Fundamental-domain plots.
//!
//! The drawing shows the strip `|re| <= 0.6`, `0 <= im <= 3` with the
//! domain boundary — the unit-circle arc and the verticals at
//! `re = ±1/2` — and one marker per reduced modulus. The domain is
//! unbounded above, so points with `im > 3` are clamped to the top
//! edge and drawn as flagged triangles instead of discs. All
//! coordinates are formatted with a fixed precision, making the byte
//! output a pure function of the point list.

use std::path::Path;

use tori::report::ComplexPair;

use crate::error::CliError;

/// Half-width of the viewport in modulus units; slightly wider than
/// the domain so boundary markers stay whole.
const VIEW_HALF_WIDTH: f64 = 0.6;

/// Top of the viewport in modulus units.
pub const VIEW_TOP_IM: f64 = 3.0;

/// Pixels per modulus unit.
const SCALE: f64 = 400.0;

/// Radius of a marker disc in pixels.
const MARKER_RADIUS: f64 = 4.0;

/// Half-width and height anchors of a clamped-marker triangle, in
/// pixels from the top edge.
const CLAMP_HALF_WIDTH: f64 = 6.0;
const CLAMP_BASE_Y: f64 = 14.0;
const CLAMP_APEX_Y: f64 = 2.0;

fn x_px(re: f64) -> f64 {
    (re + VIEW_HALF_WIDTH) * SCALE
}

fn y_px(im: f64) -> f64 {
    (VIEW_TOP_IM - im) * SCALE
}

fn px(value: f64) -> String {
    format!("{value:.3}")
}

/// Render the plot document.
pub fn fundamental_domain_svg(points: &[ComplexPair]) -> String {
    let width = 2.0 * VIEW_HALF_WIDTH * SCALE;
    let height = VIEW_TOP_IM * SCALE;
    let corner_y = y_px((3.0f64).sqrt() / 2.0);
    let (left_x, right_x) = (x_px(-0.5), x_px(0.5));
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width:.0}\" \
         height=\"{height:.0}\" viewBox=\"0 0 {width:.0} {height:.0}\">\n"
    ));
    out.push_str(&format!(
        "<rect width=\"{width:.0}\" height=\"{height:.0}\" fill=\"#ffffff\"/>\n"
    ));
    // Left vertical down to the arc corner, the unit-circle arc
    // through i, then the right vertical back to the top edge.
    out.push_str(&format!(
        "<path d=\"M {} {} L {} {} A {} {} 0 0 1 {} {} L {} {}\" \
         fill=\"none\" stroke=\"#444444\" stroke-width=\"1.5\"/>\n",
        px(left_x),
        px(0.0),
        px(left_x),
        px(corner_y),
        px(SCALE),
        px(SCALE),
        px(right_x),
        px(corner_y),
        px(right_x),
        px(0.0)
    ));
    for point in points {
        let x = x_px(point.re);
        if point.im > VIEW_TOP_IM {
            out.push_str(&format!(
                "<polygon points=\"{},{} {},{} {},{}\" fill=\"#d62728\" \
                 data-clamped=\"true\"/>\n",
                px(x - CLAMP_HALF_WIDTH),
                px(CLAMP_BASE_Y),
                px(x + CLAMP_HALF_WIDTH),
                px(CLAMP_BASE_Y),
                px(x),
                px(CLAMP_APEX_Y)
            ));
        } else {
            out.push_str(&format!(
                "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"#1f77b4\"/>\n",
                px(x),
                px(y_px(point.im)),
                px(MARKER_RADIUS)
            ));
        }
    }
    out.push_str("</svg>\n");
    out
}

/// Write the plot to `path`.
pub fn write_plot(points: &[ComplexPair], path: &Path) -> Result<(), CliError> {
    std::fs::write(path, fundamental_domain_svg(points))
        .map_err(|err| CliError::io(format!("cannot write plot {}: {err}", path.display())))
}
