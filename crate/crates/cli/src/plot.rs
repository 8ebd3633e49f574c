//! `aqg plot`: static figures from a finished run directory.
//!
//! Norm and spectrum curves are written as self-contained SVG; field
//! heatmaps as PNG. Nothing in the run directory is modified except the
//! `plots/` subdirectory.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use aqg_core::diagnostics::{axis_spectrum, shell_spectrum, DiagnosticsRecord, SpectrumBin};
use aqg_core::spectral::Axis;
use clap::ValueEnum;
use image::{ImageBuffer, Rgb};

use crate::error::CliError;
use crate::ndjson::read_records;
use crate::simulate::{DIAGNOSTICS_FILE, SNAPSHOT_DIR};
use crate::snapshot::Snapshot;

pub const PLOT_DIR: &str = "plots";

/// Most spectra drawn in one figure; snapshots are thinned evenly beyond it.
const MAX_SPECTRA: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PlotKind {
    Norms,
    Spectrum,
    Heatmap,
}

pub fn plot(run_dir: &Path, kind: PlotKind) -> Result<Vec<PathBuf>, CliError> {
    if !run_dir.is_dir() {
        return Err(CliError::usage(format!(
            "{} is not a directory",
            run_dir.display()
        )));
    }
    let out = run_dir.join(PLOT_DIR);
    match kind {
        PlotKind::Norms => {
            let records = load_diagnostics(run_dir)?;
            std::fs::create_dir_all(&out)?;
            let path = out.join("norms.svg");
            std::fs::write(&path, norms_svg(&records))?;
            Ok(vec![path])
        }
        PlotKind::Spectrum => {
            let snaps = load_snapshots(run_dir)?;
            std::fs::create_dir_all(&out)?;
            let shells: Vec<Series> = thin(&snaps, MAX_SPECTRA)
                .into_iter()
                .map(|(_, s)| {
                    Ok(spectrum_series(
                        &format!("t = {}", s.t),
                        &shell_spectrum(&s.to_field()?),
                    ))
                })
                .collect::<Result<_, aqg_core::Error>>()?;
            let last = snaps.last().map(|(_, s)| s).expect("at least one snapshot");
            let field = last.to_field()?;
            let axes = vec![
                spectrum_series("|k1|", &axis_spectrum(&field, Axis::X1)),
                spectrum_series("|k2|", &axis_spectrum(&field, Axis::X2)),
            ];
            let shell_path = out.join("spectrum_shell.svg");
            let axis_path = out.join("spectrum_axis.svg");
            std::fs::write(
                &shell_path,
                line_chart("Shell spectrum", "|k|", "energy", &shells),
            )?;
            std::fs::write(
                &axis_path,
                line_chart(
                    &format!("Axis spectra at t = {}", last.t),
                    "k",
                    "energy",
                    &axes,
                ),
            )?;
            Ok(vec![shell_path, axis_path])
        }
        PlotKind::Heatmap => {
            let snaps = load_snapshots(run_dir)?;
            std::fs::create_dir_all(&out)?;
            let mut paths = Vec::new();
            for (name, snap) in &snaps {
                let path = out.join(format!("heatmap_{name}.png"));
                heatmap(snap)
                    .save(&path)
                    .map_err(|e| CliError::failure(format!("{}: {e}", path.display())))?;
                paths.push(path);
            }
            Ok(paths)
        }
    }
}

fn load_diagnostics(run_dir: &Path) -> Result<Vec<DiagnosticsRecord>, CliError> {
    let path = run_dir.join(DIAGNOSTICS_FILE);
    if !path.is_file() {
        return Err(CliError::usage(format!("missing {}", path.display())));
    }
    let records: Vec<DiagnosticsRecord> = read_records(&path)?;
    if records.is_empty() {
        return Err(CliError::usage(format!(
            "{} holds no records",
            path.display()
        )));
    }
    Ok(records)
}

/// Snapshots in file-name order, keyed by file stem.
pub fn load_snapshots(run_dir: &Path) -> Result<Vec<(String, Snapshot)>, CliError> {
    let dir = run_dir.join(SNAPSHOT_DIR);
    let mut paths: Vec<PathBuf> = match std::fs::read_dir(&dir) {
        Ok(entries) => entries
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "bin"))
            .collect(),
        Err(_) => Vec::new(),
    };
    if paths.is_empty() {
        return Err(CliError::usage(format!(
            "no snapshots under {}",
            dir.display()
        )));
    }
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let stem = p
                .file_stem()
                .unwrap_or_default()
                .to_string_lossy()
                .into_owned();
            let snap = Snapshot::read(&p)
                .map_err(|e| CliError::failure(format!("{}: {e}", p.display())))?;
            Ok((stem, snap))
        })
        .collect()
}

fn thin<T>(items: &[T], max: usize) -> Vec<&T> {
    if items.len() <= max {
        return items.iter().collect();
    }
    (0..max)
        .map(|i| &items[i * (items.len() - 1) / (max - 1)])
        .collect()
}

/// A named polyline.
#[derive(Debug, Clone)]
pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

fn spectrum_series(label: &str, bins: &[SpectrumBin]) -> Series {
    Series {
        label: label.into(),
        points: bins.iter().map(|b| (b.k, b.energy)).collect(),
    }
}

pub fn norms_svg(records: &[DiagnosticsRecord]) -> String {
    let pick = |label: &str, f: fn(&DiagnosticsRecord) -> f64| Series {
        label: label.into(),
        points: records.iter().map(|r| (r.t, f(r))).collect(),
    };
    let series = [
        pick("L2", |r| r.l2),
        pick("H^s", |r| r.hs_inhom),
        pick("homogeneous H^s", |r| r.hs_hom),
    ];
    line_chart("Norms", "t", "norm", &series)
}

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf",
];

/// Line chart with a logarithmic y axis. Points with nonpositive or
/// non-finite ordinates are dropped.
pub fn line_chart(title: &str, xlabel: &str, ylabel: &str, series: &[Series]) -> String {
    let (w, h) = (720.0, 480.0);
    let (left, right, top, bottom) = (80.0, 170.0, 40.0, 60.0);
    let (pw, ph) = (w - left - right, h - top - bottom);

    let kept: Vec<Vec<(f64, f64)>> = series
        .iter()
        .map(|s| {
            s.points
                .iter()
                .filter(|(x, y)| x.is_finite() && y.is_finite() && *y > 0.0)
                .map(|&(x, y)| (x, y.log10()))
                .collect()
        })
        .collect();
    let all = kept.iter().flatten();
    let (mut x0, mut x1, mut y0, mut y1) = (
        f64::INFINITY,
        f64::NEG_INFINITY,
        f64::INFINITY,
        f64::NEG_INFINITY,
    );
    for &(x, y) in all {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    let empty = !x0.is_finite();
    if empty {
        (x0, x1, y0, y1) = (0.0, 1.0, 0.0, 1.0);
    }
    if x1 <= x0 {
        x1 = x0 + 1.0;
    }
    y0 = y0.floor();
    y1 = y1.ceil().max(y0 + 1.0);
    let px = |x: f64| left + (x - x0) / (x1 - x0) * pw;
    let py = |y: f64| top + (y1 - y) / (y1 - y0) * ph;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(svg, r#"<rect width="{w}" height="{h}" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="24" text-anchor="middle" font-size="16">{}</text>"#,
        left + pw / 2.0,
        escape(title)
    );
    let _ = writeln!(
        svg,
        r##"<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="#333"/>"##
    );
    let decades = (y1 - y0).round() as i64;
    let step = (decades / 8).max(1);
    let mut d = y0 as i64;
    while d <= y1 as i64 {
        let y = py(d as f64);
        let _ = writeln!(
            svg,
            r##"<line x1="{left}" y1="{y:.2}" x2="{}" y2="{y:.2}" stroke="#ddd"/><text x="{}" y="{:.2}" text-anchor="end">1e{d}</text>"##,
            left + pw,
            left - 6.0,
            y + 4.0
        );
        d += step;
    }
    for i in 0..=5 {
        let x = x0 + (x1 - x0) * i as f64 / 5.0;
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{}" text-anchor="middle">{}</text>"#,
            px(x),
            top + ph + 18.0,
            tick_label(x)
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
        left + pw / 2.0,
        h - 16.0,
        escape(xlabel)
    );
    let _ = writeln!(
        svg,
        r#"<text x="20" y="{}" text-anchor="middle" transform="rotate(-90 20 {})">{} (log scale)</text>"#,
        top + ph / 2.0,
        top + ph / 2.0,
        escape(ylabel)
    );
    if empty {
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}" text-anchor="middle">no positive values</text>"#,
            left + pw / 2.0,
            top + ph / 2.0
        );
    }
    for (i, (s, pts)) in series.iter().zip(&kept).enumerate() {
        let colour = PALETTE[i % PALETTE.len()];
        if !pts.is_empty() {
            let coords: Vec<String> = pts
                .iter()
                .map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y)))
                .collect();
            let _ = writeln!(
                svg,
                r#"<polyline fill="none" stroke="{colour}" stroke-width="1.5" points="{}"/>"#,
                coords.join(" ")
            );
        }
        let ly = top + 14.0 + 18.0 * i as f64;
        let lx = left + pw + 12.0;
        let _ = writeln!(
            svg,
            r#"<line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{colour}" stroke-width="2"/><text x="{}" y="{}">{}</text>"#,
            lx + 20.0,
            lx + 26.0,
            ly + 4.0,
            escape(&s.label)
        );
    }
    svg.push_str("</svg>\n");
    svg
}

fn tick_label(x: f64) -> String {
    if x == 0.0 || (1e-3..1e4).contains(&x.abs()) {
        format!("{}", (x * 1000.0).round() / 1000.0)
    } else {
        format!("{x:.2e}")
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// Diverging colour map on `[−1, 1]`: blue, white, red.
fn colour(v: f64) -> Rgb<u8> {
    let (end, t) = if v < 0.0 {
        ([59.0, 76.0, 192.0], -v)
    } else {
        ([180.0, 4.0, 38.0], v)
    };
    let t = t.clamp(0.0, 1.0);
    let mix = |c: f64| (255.0 + (c - 255.0) * t).round() as u8;
    Rgb([mix(end[0]), mix(end[1]), mix(end[2])])
}

/// Heatmap with `x₁` to the right and `x₂` upwards, symmetric colour scale
/// `±max|θ|`, upscaled so the short side has at least 256 pixels.
pub fn heatmap(snap: &Snapshot) -> ImageBuffer<Rgb<u8>, Vec<u8>> {
    let (n1, n2) = (snap.grid.n1, snap.grid.n2);
    let scale = 256usize.div_ceil(n1.min(n2)).max(1);
    let peak = snap.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    ImageBuffer::from_fn((n1 * scale) as u32, (n2 * scale) as u32, |x, y| {
        let i1 = x as usize / scale;
        let i2 = n2 - 1 - y as usize / scale;
        let v = snap.values[i1 * n2 + i2];
        colour(if peak > 0.0 { v / peak } else { 0.0 })
    })
}
