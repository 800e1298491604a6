//! Plain-text formats for fans, coefficient lists, matrices and completion
//! diagrams. Every parse error carries a 1-based line and column.
//!
//! Fan files:
//!
//! ```text
//! # the projective plane
//! rank 2
//! ray 1 0
//! ray 0 1
//! ray -1 -1
//! cone 0 1
//! cone 1 2
//! cone 0 2
//! ```
//!
//! Rays are numbered in order of appearance from 0. Listed cones need not be
//! maximal; faces are added automatically. A bare `cone` line is the zero
//! cone.
//!
//! Coefficient lists are entries `{i,j,...}:c` keyed by ray-index sets,
//! separated by whitespace, newlines or `;`. Matrix files hold one row of
//! integers per line, optionally preceded by `shape R C` (needed for zero
//! rows). Diagram files hold `base PATH`, `node NAME PATH` and
//! `edge SOURCE TARGET` lines.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::fan::{ConeId, Fan};
use crate::lattice::{IntMatrix, LatticeVector};
use crate::prochow::{build_diagram, CompletionDiagram};

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Non-empty lines with comments removed, as `(line, [(column, token)])`.
fn tokenized(text: &str) -> Vec<(usize, Vec<(usize, &str)>)> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start: Option<usize> = None;
        for (pos, ch) in line.char_indices().chain(std::iter::once((line.len(), ' '))) {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some(pos),
                (true, Some(s)) => {
                    tokens.push((line[..s].chars().count() + 1, &line[s..pos]));
                    start = None;
                }
                _ => {}
            }
        }
        if !tokens.is_empty() {
            out.push((i + 1, tokens));
        }
    }
    out
}

fn parse_int(line: usize, (column, token): (usize, &str)) -> Result<BigInt> {
    token
        .parse::<BigInt>()
        .map_err(|_| parse_error(line, column, format!("expected an integer, found `{token}`")))
}

fn parse_usize(line: usize, (column, token): (usize, &str)) -> Result<usize> {
    token
        .parse::<usize>()
        .map_err(|_| parse_error(line, column, format!("expected a non-negative integer, found `{token}`")))
}

/// Parses and validates a fan. Validation failures are reported at the
/// line of the offending ray or cone.
pub fn parse_fan(text: &str) -> Result<Fan> {
    let lines = tokenized(text);
    let Some((first_line, first)) = lines.first() else {
        return Err(parse_error(1, 1, "empty input: expected `rank`"));
    };
    if first[0].1 != "rank" {
        return Err(parse_error(*first_line, first[0].0, format!("expected `rank`, found `{}`", first[0].1)));
    }
    if first.len() != 2 {
        return Err(parse_error(*first_line, first[0].0, "`rank` takes one value"));
    }
    let rank = parse_usize(*first_line, first[1])?;

    let mut rays = Vec::new();
    let mut ray_lines = Vec::new();
    let mut cones = Vec::new();
    let mut cone_lines = Vec::new();
    for (line, tokens) in &lines[1..] {
        let (column, keyword) = tokens[0];
        let args = &tokens[1..];
        match keyword {
            "ray" => {
                if args.len() != rank {
                    return Err(parse_error(
                        *line,
                        column,
                        format!("ray needs {rank} coordinates, found {}", args.len()),
                    ));
                }
                let coords = args.iter().map(|t| parse_int(*line, *t)).collect::<Result<Vec<_>>>()?;
                rays.push(LatticeVector::new(coords));
                ray_lines.push(*line);
            }
            "cone" => {
                let indices = args.iter().map(|t| parse_usize(*line, *t)).collect::<Result<Vec<_>>>()?;
                cones.push(indices);
                cone_lines.push(*line);
            }
            "rank" => return Err(parse_error(*line, column, "duplicate `rank`")),
            other => return Err(parse_error(*line, column, format!("unknown keyword `{other}`"))),
        }
    }

    let find_cone = |cone: &[usize]| {
        let set: BTreeSet<usize> = cone.iter().copied().collect();
        cones
            .iter()
            .position(|c| c.iter().copied().collect::<BTreeSet<_>>() == set)
            .map(|i| cone_lines[i])
    };
    Fan::new(rank, rays, cones.clone()).map_err(|e| {
        let line = match &e {
            Error::NotPrimitiveRay { index }
            | Error::ZeroRay { index }
            | Error::DuplicateRay { index, .. }
            | Error::UnusedRay { index } => ray_lines.get(*index).copied(),
            Error::NotStronglyConvex { cone } | Error::NotExtremeRay { cone, .. } => find_cone(cone),
            Error::BadIntersection { second, .. } => find_cone(second),
            Error::RayIndexOutOfRange { index } => cones
                .iter()
                .position(|c| c.contains(index))
                .map(|i| cone_lines[i]),
            _ => None,
        };
        parse_error(line.unwrap_or(*first_line), 1, e.to_string())
    })
}

/// Canonical text: rays sorted lexicographically, then the maximal cones
/// with sorted indices in lexicographic order.
pub fn print_fan(fan: &Fan) -> String {
    let mut order: Vec<usize> = (0..fan.rays().len()).collect();
    order.sort_by(|&a, &b| fan.ray(a).cmp(fan.ray(b)));
    let mut new_index = vec![0; order.len()];
    for (new, &old) in order.iter().enumerate() {
        new_index[old] = new;
    }
    let mut out = format!("rank {}\n", fan.rank());
    for &old in &order {
        let coords: Vec<String> = fan.ray(old).coords().iter().map(|c| c.to_string()).collect();
        let _ = writeln!(out, "ray {}", coords.join(" "));
    }
    let mut cones: Vec<Vec<usize>> = fan
        .maximal_cones()
        .into_iter()
        .map(|c| {
            let mut set: Vec<usize> = fan.cone(c).rays().iter().map(|&r| new_index[r]).collect();
            set.sort_unstable();
            set
        })
        .filter(|set| !set.is_empty())
        .collect();
    cones.sort();
    for set in cones {
        let parts: Vec<String> = set.iter().map(|i| i.to_string()).collect();
        let _ = writeln!(out, "cone {}", parts.join(" "));
    }
    out
}

/// Parses `{i,j}:c` entries into cone coefficients on `fan`. Repeated cones
/// add up.
pub fn parse_coefficients(fan: &Fan, text: &str) -> Result<Vec<(ConeId, BigInt)>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("");
        let chars: Vec<char> = line.chars().collect();
        let mut pos = 0;
        let skip = |pos: &mut usize, extra: &[char]| {
            while *pos < chars.len() && (chars[*pos].is_whitespace() || extra.contains(&chars[*pos])) {
                *pos += 1;
            }
        };
        loop {
            skip(&mut pos, &[';']);
            if pos >= chars.len() {
                break;
            }
            let entry_col = pos + 1;
            if chars[pos] != '{' {
                return Err(parse_error(line_no, pos + 1, format!("expected `{{`, found `{}`", chars[pos])));
            }
            pos += 1;
            let mut rays = Vec::new();
            loop {
                skip(&mut pos, &[',']);
                if pos >= chars.len() {
                    return Err(parse_error(line_no, pos + 1, "unterminated cone, expected `}`"));
                }
                if chars[pos] == '}' {
                    pos += 1;
                    break;
                }
                let start = pos;
                while pos < chars.len() && chars[pos].is_ascii_digit() {
                    pos += 1;
                }
                if start == pos {
                    return Err(parse_error(line_no, pos + 1, format!("expected a ray index, found `{}`", chars[pos])));
                }
                let token: String = chars[start..pos].iter().collect();
                rays.push(parse_usize(line_no, (start + 1, &token))?);
            }
            skip(&mut pos, &[]);
            if pos >= chars.len() || chars[pos] != ':' {
                return Err(parse_error(line_no, pos + 1, "expected `:` after the cone"));
            }
            pos += 1;
            skip(&mut pos, &[]);
            let start = pos;
            if pos < chars.len() && (chars[pos] == '-' || chars[pos] == '+') {
                pos += 1;
            }
            while pos < chars.len() && chars[pos].is_ascii_digit() {
                pos += 1;
            }
            let token: String = chars[start..pos].iter().collect();
            let coeff = parse_int(line_no, (start + 1, &token))?;
            let cone = fan
                .require_cone(&rays)
                .map_err(|e| parse_error(line_no, entry_col, e.to_string()))?;
            out.push((cone, coeff));
        }
    }
    Ok(out)
}

/// One `{i,j}:c` line per nonzero coefficient, in canonical cone order.
pub fn print_coefficients(fan: &Fan, coeffs: &[BigInt]) -> String {
    let mut out = String::new();
    for (i, c) in coeffs.iter().enumerate() {
        if *c != BigInt::from(0) {
            let _ = writeln!(out, "{}:{c}", fan.cone_label(ConeId(i)));
        }
    }
    out
}

pub fn parse_matrix(text: &str) -> Result<IntMatrix> {
    let lines = tokenized(text);
    let mut body = &lines[..];
    let mut shape = None;
    if let Some((line, tokens)) = lines.first() {
        if tokens[0].1 == "shape" {
            if tokens.len() != 3 {
                return Err(parse_error(*line, tokens[0].0, "`shape` takes two values"));
            }
            shape = Some((parse_usize(*line, tokens[1])?, parse_usize(*line, tokens[2])?));
            body = &lines[1..];
        }
    }
    let (rows, cols) = match shape {
        Some(s) => s,
        None => match body.first() {
            Some((_, tokens)) => (body.len(), tokens.len()),
            None => return Err(parse_error(1, 1, "empty input: expected matrix rows")),
        },
    };
    if body.len() != rows {
        let (line, column) = body.get(rows).map_or((lines.last().map_or(1, |l| l.0), 1), |(l, t)| (*l, t[0].0));
        return Err(parse_error(line, column, format!("expected {rows} rows, found {}", body.len())));
    }
    let mut data = Vec::with_capacity(rows * cols);
    for (line, tokens) in body {
        if tokens.len() != cols {
            return Err(parse_error(*line, tokens[0].0, format!("expected {cols} entries, found {}", tokens.len())));
        }
        for t in tokens {
            data.push(parse_int(*line, *t)?);
        }
    }
    Ok(IntMatrix::from_entries(rows, cols, data))
}

/// A diagram file with fan paths still unresolved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagramSpec {
    pub base: String,
    pub nodes: Vec<(String, String)>,
    pub edges: Vec<(String, String)>,
}

pub fn parse_diagram(text: &str) -> Result<DiagramSpec> {
    let mut base = None;
    let mut nodes = Vec::new();
    let mut edges = Vec::new();
    for (line, tokens) in tokenized(text) {
        let (column, keyword) = tokens[0];
        let args: Vec<String> = tokens[1..].iter().map(|t| t.1.to_string()).collect();
        let expect = |n: usize| {
            if args.len() == n {
                Ok(())
            } else {
                Err(parse_error(line, column, format!("`{keyword}` takes {n} values, found {}", args.len())))
            }
        };
        match keyword {
            "base" => {
                expect(1)?;
                if base.is_some() {
                    return Err(parse_error(line, column, "duplicate `base`"));
                }
                base = Some(args[0].clone());
            }
            "node" => {
                expect(2)?;
                if nodes.iter().any(|(n, _): &(String, String)| *n == args[0]) {
                    return Err(parse_error(line, tokens[1].0, format!("duplicate node `{}`", args[0])));
                }
                nodes.push((args[0].clone(), args[1].clone()));
            }
            "edge" => {
                expect(2)?;
                edges.push((args[0].clone(), args[1].clone()));
            }
            other => return Err(parse_error(line, column, format!("unknown keyword `{other}`"))),
        }
    }
    let base = base.ok_or_else(|| parse_error(1, 1, "missing `base`"))?;
    Ok(DiagramSpec { base, nodes, edges })
}

fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

/// Attaches a file name to parse errors.
fn located(path: &Path, e: Error) -> Error {
    match e {
        Error::Parse { .. } => Error::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        },
        other => other,
    }
}

pub fn read_fan(path: &Path) -> Result<Fan> {
    parse_fan(&read_text(path)?).map_err(|e| located(path, e))
}

pub fn read_matrix(path: &Path) -> Result<IntMatrix> {
    parse_matrix(&read_text(path)?).map_err(|e| located(path, e))
}

/// Reads a diagram file and the fan files it names, resolving paths
/// relative to the diagram file, and validates the result.
pub fn read_diagram(path: &Path) -> Result<CompletionDiagram> {
    let parsed = parse_diagram(&read_text(path)?).map_err(|e| located(path, e))?;
    let dir = path.parent().unwrap_or(Path::new("."));
    let base = Arc::new(read_fan(&dir.join(&parsed.base))?);
    let mut nodes = Vec::new();
    for (name, file) in &parsed.nodes {
        nodes.push((name.clone(), Arc::new(read_fan(&dir.join(file))?)));
    }
    let edges: Vec<(&str, &str)> = parsed.edges.iter().map(|(s, t)| (s.as_str(), t.as_str())).collect();
    build_diagram(base, nodes, &edges)
}
