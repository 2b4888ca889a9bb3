//! Text formats for graph sequences and label sequences.
//!
//! Graph sequence:
//! ```text
//! tvg 1 N T
//! t i j w        (0-based, ascending t, then i < j)
//! ```
//! Labels:
//! ```text
//! lbl 1 N T K
//! l_0 l_1 ... l_{N-1}    (one line per frame)
//! ```

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::{TVGraphSequence, WeightedGraph};
use crate::labels::LabelSequence;

pub fn format_tvg(seq: &TVGraphSequence) -> String {
    let mut s = format!("tvg 1 {} {}\n", seq.n(), seq.t_len());
    for (t, g) in seq.graphs().iter().enumerate() {
        for &(i, j, w) in g.edges() {
            writeln!(s, "{t} {i} {j} {w}").expect("write to String");
        }
    }
    s
}

pub fn parse_tvg(text: &str, path: &Path) -> Result<TVGraphSequence> {
    let mut lines = text.lines().enumerate();
    let (n, t_len) = match lines.next() {
        Some((_, header)) => {
            let f: Vec<&str> = header.split_whitespace().collect();
            if f.len() != 4 || f[0] != "tvg" || f[1] != "1" {
                return Err(Error::format(path, "expected header `tvg 1 N T`"));
            }
            (
                parse_num::<usize>(f[2], path, 1)?,
                parse_num::<usize>(f[3], path, 1)?,
            )
        }
        None => return Err(Error::format(path, "empty file")),
    };
    if t_len == 0 {
        return Err(Error::format(path, "T must be at least 1"));
    }
    let mut edges: Vec<Vec<(usize, usize, f64)>> = vec![Vec::new(); t_len];
    let mut last = None;
    for (idx, line) in lines {
        let lineno = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split_whitespace().collect();
        if f.len() != 4 {
            return Err(Error::format(
                path,
                format!("line {lineno}: expected `t i j w`"),
            ));
        }
        let t: usize = parse_num(f[0], path, lineno)?;
        let i: usize = parse_num(f[1], path, lineno)?;
        let j: usize = parse_num(f[2], path, lineno)?;
        let w: f64 = parse_num(f[3], path, lineno)?;
        if t >= t_len {
            return Err(Error::format(
                path,
                format!("line {lineno}: frame {t} >= T = {t_len}"),
            ));
        }
        if i >= j {
            return Err(Error::format(path, format!("line {lineno}: need i < j")));
        }
        if last.is_some_and(|prev| prev >= (t, i, j)) {
            return Err(Error::format(
                path,
                format!("line {lineno}: edges out of order"),
            ));
        }
        last = Some((t, i, j));
        edges[t].push((i, j, w));
    }
    let graphs = edges
        .into_iter()
        .enumerate()
        .map(|(t, e)| {
            WeightedGraph::new(n, e).map_err(|err| Error::format(path, format!("frame {t}: {err}")))
        })
        .collect::<Result<Vec<_>>>()?;
    TVGraphSequence::new(graphs)
}

pub fn format_labels(labels: &LabelSequence) -> String {
    let mut s = format!("lbl 1 {} {} {}\n", labels.n(), labels.t_len(), labels.k());
    for frame in labels.frames() {
        let row: Vec<String> = frame.iter().map(usize::to_string).collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}

pub fn parse_labels(text: &str, path: &Path) -> Result<LabelSequence> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header: Vec<&str> = lines
        .next()
        .ok_or_else(|| Error::format(path, "empty file"))?
        .split_whitespace()
        .collect();
    if header.len() != 5 || header[0] != "lbl" || header[1] != "1" {
        return Err(Error::format(path, "expected header `lbl 1 N T K`"));
    }
    let n: usize = parse_num(header[2], path, 1)?;
    let t_len: usize = parse_num(header[3], path, 1)?;
    let k: usize = parse_num(header[4], path, 1)?;
    let mut frames = Vec::with_capacity(t_len);
    for (t, line) in lines.enumerate() {
        let row = line
            .split_whitespace()
            .map(|v| parse_num::<usize>(v, path, t + 2))
            .collect::<Result<Vec<_>>>()?;
        if row.len() != n {
            return Err(Error::format(
                path,
                format!("frame {t} has {} labels, expected {n}", row.len()),
            ));
        }
        frames.push(row);
    }
    if frames.len() != t_len {
        return Err(Error::format(
            path,
            format!("found {} frames, header says {t_len}", frames.len()),
        ));
    }
    LabelSequence::new(k, frames).map_err(|e| Error::format(path, e.to_string()))
}

pub fn read_tvg(path: &Path) -> Result<TVGraphSequence> {
    parse_tvg(
        &fs::read_to_string(path).map_err(|e| Error::io(path, e))?,
        path,
    )
}

pub fn write_tvg(path: &Path, seq: &TVGraphSequence) -> Result<()> {
    fs::write(path, format_tvg(seq)).map_err(|e| Error::io(path, e))
}

pub fn read_labels(path: &Path) -> Result<LabelSequence> {
    parse_labels(
        &fs::read_to_string(path).map_err(|e| Error::io(path, e))?,
        path,
    )
}

pub fn write_labels(path: &Path, labels: &LabelSequence) -> Result<()> {
    fs::write(path, format_labels(labels)).map_err(|e| Error::io(path, e))
}

fn parse_num<T: std::str::FromStr>(s: &str, path: &Path, line: usize) -> Result<T> {
    s.parse()
        .map_err(|_| Error::format(path, format!("line {line}: cannot parse {s:?}")))
}
