//! Static SVG scatter of a limit-set sample.

use std::fmt::Write as _;

use qfsep::boundary::LimitSetSample;
use qfsep::representations::cayley;
use qfsep::ProjPoint;

const SIZE: f64 = 800.0;
const MARGIN: f64 = 20.0;
/// Larger samples are thinned to every `k`-th point in reference-angle order.
pub const MAX_SVG_POINTS: usize = 20_000;

/// Points are drawn in the disk model, through the inverse Cayley map, coloured by
/// their position on the reference circle. The unit circle is the Fuchsian limit set.
pub fn limit_set_svg(sample: &LimitSetSample, schema: &str) -> String {
    let to_disk = cayley().inverse();
    let stride = sample.entries.len().div_ceil(MAX_SVG_POINTS).max(1);
    let points: Vec<(f64, f64, f64)> = sample
        .entries
        .iter()
        .step_by(stride)
        .filter_map(|e| {
            let p = e.image.map_or(ProjPoint::infinity(), ProjPoint::finite);
            let w = to_disk.apply_proj(p).to_complex()?;
            w.is_finite().then_some((w.re, w.im, e.angle_ref))
        })
        .collect();
    let extent = points.iter().map(|&(x, y, _)| x.hypot(y)).fold(1.0, f64::max).min(4.0);
    let scale = (SIZE / 2.0 - MARGIN) / extent;
    let c = SIZE / 2.0;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(
        s,
        "<!-- schema: {schema}; rep {}; maxlen {}; {} of {} points (every {stride}) -->",
        sample.rep_id,
        sample.maxlen,
        points.len(),
        sample.entries.len()
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(s, r##"<circle cx="{c}" cy="{c}" r="{:.3}" fill="none" stroke="#bbb" stroke-width="1"/>"##, scale);
    for (x, y, a) in points {
        if x.hypot(y) > extent {
            continue;
        }
        let _ = writeln!(
            s,
            r#"<circle cx="{:.3}" cy="{:.3}" r="1.5" fill="hsl({:.1},70%,40%)"/>"#,
            c + scale * x,
            c - scale * y,
            360.0 * a
        );
    }
    s.push_str("</svg>\n");
    s
}
