use std::fmt::Write;

const W: f64 = 640.0;
const H: f64 = 360.0;
const PAD: f64 = 40.0;

/// Accuracy against frame index: one faint line per trial, mean in black.
/// The y axis is fixed to [0, 1].
pub fn accuracy_chart(trials: &[Vec<f64>], mean: &[f64]) -> String {
    let t_len = mean.len().max(2);
    let x = |t: usize| PAD + (W - 2.0 * PAD) * t as f64 / (t_len - 1) as f64;
    let y = |a: f64| H - PAD - (H - 2.0 * PAD) * a.clamp(0.0, 1.0);
    let line = |vals: &[f64]| {
        vals.iter()
            .enumerate()
            .map(|(t, &a)| format!("{:.2},{:.2}", x(t), y(a)))
            .collect::<Vec<_>>()
            .join(" ")
    };

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#
    );
    let _ = writeln!(s, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    for tick in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let _ = writeln!(
            s,
            r##"<line x1="{PAD}" y1="{0:.2}" x2="{1}" y2="{0:.2}" stroke="#ddd"/><text x="4" y="{2:.2}" font-size="11">{tick:.2}</text>"##,
            y(tick),
            W - PAD,
            y(tick) + 4.0
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" font-size="12" text-anchor="middle">t (0..{})</text>"#,
        W / 2.0,
        H - 10.0,
        mean.len().saturating_sub(1)
    );
    for tr in trials {
        let _ = writeln!(
            s,
            r##"<polyline fill="none" stroke="#9ab" stroke-width="1" points="{}"/>"##,
            line(tr)
        );
    }
    let _ = writeln!(
        s,
        r#"<polyline fill="none" stroke="black" stroke-width="2" points="{}"/>"#,
        line(mean)
    );
    s.push_str("</svg>\n");
    s
}
