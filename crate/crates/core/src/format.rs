//! Text formats: matrices, CSS code files, protocol configs and sweep specs.
//!
//! Every format accepts `#` comment lines and blank lines. A comment of the
//! form `# format=N` pins the format version; only version 1 exists. Writers
//! always emit `# format=1` as the first line.

use std::path::Path;

use crate::codes::{make_classical, make_css, CssCode};
use crate::error::{Error, ParseError, Result};
use crate::gf2::{BitMatrix, MAX_COLS};
use crate::repeater::SimulationMode;

pub const FORMAT_VERSION: u32 = 1;

/// Upper bound on points produced by one sweep axis.
pub const MAX_SWEEP_POINTS: usize = 100_000;

struct Lines<'a> {
    lines: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    /// Splits `text`, dropping blank lines and comments after validating any
    /// version pin they carry.
    fn new(text: &'a str) -> Result<Self, ParseError> {
        let mut lines = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.strip_suffix('\r').unwrap_or(raw);
            let trimmed = line.trim();
            if trimmed.is_empty() {
                continue;
            }
            if let Some(comment) = trimmed.strip_prefix('#') {
                check_version(comment, i + 1)?;
                continue;
            }
            lines.push((i + 1, line));
        }
        Ok(Lines { lines, pos: 0 })
    }

    fn peek(&self) -> Option<(usize, &'a str)> {
        self.lines.get(self.pos).copied()
    }

    fn next(&mut self) -> Option<(usize, &'a str)> {
        let l = self.peek();
        self.pos += l.is_some() as usize;
        l
    }

    fn last_line(&self) -> usize {
        self.lines.last().map_or(1, |l| l.0)
    }
}

fn check_version(comment: &str, line: usize) -> Result<(), ParseError> {
    let Some(value) = comment.trim().strip_prefix("format=") else {
        return Ok(());
    };
    match value.trim().parse::<u32>() {
        Ok(FORMAT_VERSION) => Ok(()),
        _ => Err(ParseError::new(
            line,
            comment.find("format=").map_or(1, |p| p + 2),
            format!("unsupported format version {:?}", value.trim()),
        )),
    }
}

fn column_of(line: &str, field: &str) -> usize {
    (field.as_ptr() as usize - line.as_ptr() as usize) + 1
}

fn parse_count(line_no: usize, line: &str, field: &str, what: &str) -> Result<usize, ParseError> {
    if field.is_empty() || !field.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseError::new(
            line_no,
            column_of(line, field),
            format!("{what} must be a decimal count, found {field:?}"),
        ));
    }
    field.parse::<usize>().map_err(|_| {
        ParseError::new(line_no, column_of(line, field), format!("{what} {field} is too large"))
    })
}

fn read_matrix(lines: &mut Lines<'_>) -> Result<BitMatrix> {
    let Some((line_no, header)) = lines.next() else {
        return Err(ParseError::new(lines.last_line(), 1, "missing `R C` header").into());
    };
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(ParseError::new(
            line_no,
            1,
            format!("header must be `R C`, found {} fields", fields.len()),
        )
        .into());
    }
    let rows = parse_count(line_no, header, fields[0], "row count")?;
    let cols = parse_count(line_no, header, fields[1], "column count")?;
    if cols == 0 {
        return Err(ParseError::new(line_no, column_of(header, fields[1]), "column count must be at least 1").into());
    }
    if cols > MAX_COLS {
        return Err(Error::Capacity {
            what: "matrix column count",
            value: cols,
            limit: MAX_COLS,
        });
    }
    let mut data = Vec::new();
    for r in 0..rows {
        let Some((row_no, line)) = lines.next() else {
            return Err(ParseError::new(
                lines.last_line(),
                1,
                format!("expected {rows} rows, found {r}"),
            )
            .into());
        };
        let mut v = 0u64;
        for (j, ch) in line.chars().enumerate() {
            let bit = match ch {
                '0' => 0,
                '1' => 1,
                other => {
                    return Err(ParseError::new(
                        row_no,
                        j + 1,
                        format!("unexpected character {other:?}, expected 0 or 1"),
                    )
                    .into())
                }
            };
            if j >= cols {
                return Err(ParseError::new(row_no, j + 1, format!("row longer than {cols} columns")).into());
            }
            v = (v << 1) | bit;
        }
        let len = line.chars().count();
        if len != cols {
            return Err(ParseError::new(
                row_no,
                len + 1,
                format!("row has {len} columns, expected {cols}"),
            )
            .into());
        }
        data.push(v);
    }
    BitMatrix::from_rows(cols, data)
}

/// Parses one matrix. Anything but comments after the last row is an error.
pub fn parse_matrix(text: &str) -> Result<BitMatrix> {
    let mut lines = Lines::new(text)?;
    let m = read_matrix(&mut lines)?;
    if let Some((line_no, _)) = lines.next() {
        return Err(ParseError::new(line_no, 1, "unexpected content after the last row").into());
    }
    Ok(m)
}

pub fn write_matrix(m: &BitMatrix) -> String {
    format!("# format={FORMAT_VERSION}\n{}", m.to_text())
}

/// Sections of a code file before any validation beyond the matrix syntax.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeSections {
    pub c1: BitMatrix,
    pub c2: BitMatrix,
    pub a: Option<BitMatrix>,
}

pub fn parse_code_sections(text: &str) -> Result<CodeSections> {
    let mut lines = Lines::new(text)?;
    let (mut c1, mut c2, mut a) = (None, None, None);
    while let Some((line_no, line)) = lines.next() {
        let name = line.trim();
        let slot = match name {
            "[C1]" => &mut c1,
            "[C2]" => &mut c2,
            "[A]" => &mut a,
            _ => {
                return Err(ParseError::new(
                    line_no,
                    column_of(line, name),
                    format!("expected a section header [C1], [C2] or [A], found {name:?}"),
                )
                .into())
            }
        };
        if slot.is_some() {
            return Err(ParseError::new(line_no, column_of(line, name), format!("duplicate section {name}")).into());
        }
        *slot = Some(read_matrix(&mut lines)?);
    }
    let end = lines.last_line();
    let missing = |s: &str| ParseError::new(end, 1, format!("missing section {s}"));
    Ok(CodeSections {
        c1: c1.ok_or_else(|| missing("[C1]"))?,
        c2: c2.ok_or_else(|| missing("[C2]"))?,
        a,
    })
}

/// Parses a code file and builds the CSS code it describes.
pub fn parse_css(text: &str) -> Result<CssCode> {
    let s = parse_code_sections(text)?;
    make_css(&make_classical(&s.c1)?, &make_classical(&s.c2)?, s.a.as_ref())
}

pub fn write_css(code: &CssCode) -> String {
    format!(
        "# format={FORMAT_VERSION}\n[C1]\n{}[C2]\n{}[A]\n{}",
        code.c1().generator().to_text(),
        code.c2().generator().to_text(),
        code.encoding().to_text()
    )
}

pub(crate) fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn load_matrix(path: impl AsRef<Path>) -> Result<BitMatrix> {
    parse_matrix(&read_file(path.as_ref())?)
}

pub fn load_css(path: impl AsRef<Path>) -> Result<CssCode> {
    parse_css(&read_file(path.as_ref())?)
}

/// Key/value settings of a protocol config, before code files are loaded.
#[derive(Debug, Clone, PartialEq)]
pub struct RawConfig {
    pub f1: f64,
    pub f2: f64,
    pub f3: f64,
    pub mode: SimulationMode,
    pub samples: Option<u64>,
    pub seed: Option<u64>,
    pub code_a: Option<String>,
    pub code_b: Option<String>,
    pub raw_pairs: Option<u64>,
    pub jobs: Option<usize>,
    pub allow_non_transversal: bool,
}

impl Default for RawConfig {
    fn default() -> Self {
        RawConfig {
            f1: 0.0,
            f2: 0.0,
            f3: 0.0,
            mode: SimulationMode::Exact,
            samples: None,
            seed: None,
            code_a: None,
            code_b: None,
            raw_pairs: None,
            jobs: None,
            allow_non_transversal: false,
        }
    }
}

fn parse_value<T: std::str::FromStr>(line_no: usize, line: &str, value: &str, what: &str) -> Result<T, ParseError> {
    value.parse::<T>().map_err(|_| {
        ParseError::new(
            line_no,
            column_of(line, value),
            format!("invalid value {value:?} for {what}"),
        )
    })
}

fn parse_probability(line_no: usize, line: &str, value: &str, key: &str) -> Result<f64, ParseError> {
    let p: f64 = parse_value(line_no, line, value, key)?;
    if !p.is_finite() {
        return Err(ParseError::new(line_no, column_of(line, value), format!("{key} must be finite")));
    }
    Ok(p)
}

/// Parses `key=value` lines. Keys: `f1`, `f2`, `f3`, `mode`, `samples`,
/// `seed`, `codeA`, `codeB`, `N`, `jobs`, `allow_non_transversal`.
pub fn parse_config(text: &str) -> Result<RawConfig> {
    let lines = Lines::new(text)?;
    let mut cfg = RawConfig::default();
    let mut seen: Vec<&str> = Vec::new();
    for &(line_no, line) in &lines.lines {
        let Some((k, v)) = line.split_once('=') else {
            return Err(ParseError::new(line_no, 1, "expected key=value").into());
        };
        let (key, value) = (k.trim(), v.trim());
        if key.is_empty() {
            return Err(ParseError::new(line_no, 1, "empty key").into());
        }
        if seen.contains(&key) {
            return Err(ParseError::new(line_no, column_of(line, key), format!("duplicate key {key}")).into());
        }
        match key {
            "f1" => cfg.f1 = parse_probability(line_no, line, value, key)?,
            "f2" => cfg.f2 = parse_probability(line_no, line, value, key)?,
            "f3" => cfg.f3 = parse_probability(line_no, line, value, key)?,
            "mode" => {
                cfg.mode = match value {
                    "exact" => SimulationMode::Exact,
                    "montecarlo" => SimulationMode::MonteCarlo,
                    _ => {
                        return Err(ParseError::new(
                            line_no,
                            column_of(line, value),
                            format!("mode must be exact or montecarlo, found {value:?}"),
                        )
                        .into())
                    }
                }
            }
            "samples" => cfg.samples = Some(parse_value(line_no, line, value, key)?),
            "seed" => cfg.seed = Some(parse_value(line_no, line, value, key)?),
            "codeA" | "codeB" => {
                if value.is_empty() {
                    return Err(ParseError::new(line_no, line.len() + 1, format!("{key} needs a path")).into());
                }
                let slot = if key == "codeA" { &mut cfg.code_a } else { &mut cfg.code_b };
                *slot = Some(value.to_string());
            }
            "N" => cfg.raw_pairs = Some(parse_value(line_no, line, value, key)?),
            "jobs" => {
                let jobs: usize = parse_value(line_no, line, value, key)?;
                if jobs == 0 {
                    return Err(ParseError::new(line_no, column_of(line, value), "jobs must be at least 1").into());
                }
                cfg.jobs = Some(jobs);
            }
            "allow_non_transversal" => cfg.allow_non_transversal = parse_value(line_no, line, value, key)?,
            _ => {
                return Err(ParseError::new(line_no, column_of(line, key), format!("unknown key {key:?}")).into())
            }
        }
        seen.push(key);
    }
    Ok(cfg)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum SweepParam {
    F1,
    F2,
    F3,
}

impl SweepParam {
    pub fn name(self) -> &'static str {
        match self {
            SweepParam::F1 => "f1",
            SweepParam::F2 => "f2",
            SweepParam::F3 => "f3",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    pub param: SweepParam,
    pub points: Vec<f64>,
}

/// Parses `f1=a:b:step` into the points `a + i*step <= b`, with a slack of
/// `1e-9 * step` on the upper end.
pub fn parse_sweep(arg: &str) -> Result<Sweep> {
    let err = |col: usize, msg: String| Error::from(ParseError::new(1, col, msg));
    let Some((key, range)) = arg.split_once('=') else {
        return Err(err(1, "expected f1=a:b:step".into()));
    };
    let param = match key.trim() {
        "f1" => SweepParam::F1,
        "f2" => SweepParam::F2,
        "f3" => SweepParam::F3,
        other => return Err(err(1, format!("cannot sweep {other:?}, expected f1, f2 or f3"))),
    };
    let parts: Vec<&str> = range.split(':').collect();
    if parts.len() != 3 {
        return Err(err(key.len() + 2, format!("expected a:b:step, found {} fields", parts.len())));
    }
    let mut values = [0.0f64; 3];
    for (slot, part) in values.iter_mut().zip(&parts) {
        let col = column_of(arg, part);
        *slot = part
            .trim()
            .parse::<f64>()
            .ok()
            .filter(|x| x.is_finite())
            .ok_or_else(|| err(col, format!("invalid number {part:?}")))?;
    }
    let [start, end, step] = values;
    if step <= 0.0 {
        return Err(err(column_of(arg, parts[2]), "step must be positive".into()));
    }
    if end < start {
        return Err(err(column_of(arg, parts[1]), "end lies below start".into()));
    }
    let count = ((end - start) / step + 1e-9).floor() + 1.0;
    if count > MAX_SWEEP_POINTS as f64 {
        return Err(Error::Capacity {
            what: "sweep points",
            value: count.min(usize::MAX as f64) as usize,
            limit: MAX_SWEEP_POINTS,
        });
    }
    let points = (0..count as usize).map(|i| start + i as f64 * step).collect();
    Ok(Sweep { param, points })
}
