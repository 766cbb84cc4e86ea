//! CSV and JSON artifact writers. Floats are written in shortest
//! round-trip decimal form.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;

use crate::impossibility::Spiral;
use crate::product::LogEntry;
use crate::sweep::Trajectory;

fn num(x: f64) -> String {
    format!("{x:?}")
}

fn csv_writer(path: &Path) -> io::Result<csv::Writer<fs::File>> {
    csv::Writer::from_path(path).map_err(io::Error::other)
}

fn finish(mut w: csv::Writer<fs::File>) -> io::Result<()> {
    w.flush()
}

/// `sweep,n_inner,set_index,x_0,…,x_{d−1}`; one row per projection, set
/// indices 1-based.
pub fn write_trajectory_csv(path: &Path, trajectory: &Trajectory) -> io::Result<()> {
    let dim = trajectory.start.len();
    let mut w = csv_writer(path)?;
    let mut header = vec!["sweep".to_string(), "n_inner".into(), "set_index".into()];
    header.extend((0..dim).map(|k| format!("x_{k}")));
    w.write_record(&header).map_err(io::Error::other)?;
    for it in &trajectory.iterates {
        let mut row = vec![
            it.sweep.to_string(),
            it.inner.to_string(),
            (it.set_index + 1).to_string(),
        ];
        row.extend(it.point.iter().map(|&v| num(v)));
        w.write_record(&row).map_err(io::Error::other)?;
    }
    finish(w)
}

/// `iter,objective_value,displacement,stationarity_residual,y1_0,…`.
pub fn write_log_csv(path: &Path, log: &[LogEntry], m: usize, dim: usize) -> io::Result<()> {
    let mut w = csv_writer(path)?;
    let mut header = vec![
        "iter".to_string(),
        "objective_value".into(),
        "displacement".into(),
        "stationarity_residual".into(),
    ];
    for i in 1..=m {
        header.extend((0..dim).map(|k| format!("y{i}_{k}")));
    }
    w.write_record(&header).map_err(io::Error::other)?;
    for e in log {
        let mut row = vec![
            e.iter.to_string(),
            num(e.objective),
            num(e.displacement),
            num(e.stationarity),
        ];
        for b in e.point.blocks() {
            row.extend(b.iter().map(|&v| num(v)));
        }
        w.write_record(&row).map_err(io::Error::other)?;
    }
    finish(w)
}

/// `k,x_0,…,x_{d−1},norm`.
pub fn write_spiral_csv(path: &Path, spiral: &Spiral) -> io::Result<()> {
    let mut w = csv_writer(path)?;
    write_spiral_rows(&mut w, spiral)?;
    finish(w)
}

pub fn write_spiral_rows<W: Write>(w: &mut csv::Writer<W>, spiral: &Spiral) -> io::Result<()> {
    let dim = spiral.points.first().map_or(0, |p| p.len());
    let mut header = vec!["k".to_string()];
    header.extend((0..dim).map(|k| format!("x_{k}")));
    header.push("norm".into());
    w.write_record(&header).map_err(io::Error::other)?;
    for (k, p) in spiral.points.iter().enumerate() {
        let mut row = vec![k.to_string()];
        row.extend(p.iter().map(|&v| num(v)));
        row.push(num(p.norm()));
        w.write_record(&row).map_err(io::Error::other)?;
    }
    Ok(())
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("artifact records serialize");
    s.push('\n');
    s
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> io::Result<()> {
    fs::write(path, to_json(value))
}
