//! Touchstone v1 (`.sNp`) reading and writing.
//!
//! Frequencies are rescaled to Hz by shifting the decimal exponent of the
//! token rather than multiplying, so `1.1` GHz becomes exactly `1.1e9`. The
//! writer emits the shortest digits that parse back to the same `f64`,
//! shifted by the unit exponent, which makes RI round-trips bit-exact.

use std::fmt;
use std::path::Path;

use num_complex::Complex64;
use thiserror::Error;

use crate::matrix::ComplexMatrix;
use crate::scattering::{FrequencyPoint, ScatteringData};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TouchstoneError {
    #[error("missing option line before data (line {line})")]
    MissingOptionLine { line: usize },
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
    #[error("line {line}: {message}")]
    Data { line: usize, message: String },
    #[error("line {line}: unsupported parameter type '{kind}', only S is supported")]
    UnsupportedParameter { line: usize, kind: String },
    #[error("line {line}: unsupported Touchstone version, only v1 files are read")]
    UnsupportedVersion { line: usize },
    #[error("input is not valid UTF-8")]
    Encoding,
    #[error("{0}")]
    Io(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrequencyUnit {
    Hz,
    KHz,
    MHz,
    GHz,
}

impl FrequencyUnit {
    fn exponent(self) -> i32 {
        match self {
            Self::Hz => 0,
            Self::KHz => 3,
            Self::MHz => 6,
            Self::GHz => 9,
        }
    }

    fn from_token(t: &str) -> Option<Self> {
        match t {
            "HZ" => Some(Self::Hz),
            "KHZ" => Some(Self::KHz),
            "MHZ" => Some(Self::MHz),
            "GHZ" => Some(Self::GHz),
            _ => None,
        }
    }
}

impl fmt::Display for FrequencyUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Hz => "Hz",
            Self::KHz => "kHz",
            Self::MHz => "MHz",
            Self::GHz => "GHz",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DataFormat {
    /// Real and imaginary part.
    RI,
    /// Magnitude and angle in degrees.
    MA,
    /// Magnitude in dB and angle in degrees.
    DB,
}

impl DataFormat {
    fn from_token(t: &str) -> Option<Self> {
        match t {
            "RI" => Some(Self::RI),
            "MA" => Some(Self::MA),
            "DB" => Some(Self::DB),
            _ => None,
        }
    }
}

impl fmt::Display for DataFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::RI => "RI",
            Self::MA => "MA",
            Self::DB => "DB",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TouchstoneOptions {
    frequency_unit: FrequencyUnit,
    data_format: DataFormat,
    reference_impedance: f64,
}

impl Default for TouchstoneOptions {
    fn default() -> Self {
        Self {
            frequency_unit: FrequencyUnit::GHz,
            data_format: DataFormat::MA,
            reference_impedance: 50.0,
        }
    }
}

impl TouchstoneOptions {
    /// Fails unless `reference_impedance` is finite and positive.
    pub fn new(
        frequency_unit: FrequencyUnit,
        data_format: DataFormat,
        reference_impedance: f64,
    ) -> Option<Self> {
        (reference_impedance.is_finite() && reference_impedance > 0.0).then_some(Self {
            frequency_unit,
            data_format,
            reference_impedance,
        })
    }

    /// Options matching `data`'s reference impedance.
    pub fn for_data(data: &ScatteringData, unit: FrequencyUnit, format: DataFormat) -> Self {
        Self {
            frequency_unit: unit,
            data_format: format,
            reference_impedance: data.reference_impedance(),
        }
    }

    pub fn frequency_unit(&self) -> FrequencyUnit {
        self.frequency_unit
    }

    pub fn data_format(&self) -> DataFormat {
        self.data_format
    }

    pub fn reference_impedance(&self) -> f64 {
        self.reference_impedance
    }
}

fn format_error(line: usize, message: impl Into<String>) -> TouchstoneError {
    TouchstoneError::Format {
        line,
        message: message.into(),
    }
}

fn data_error(line: usize, message: impl Into<String>) -> TouchstoneError {
    TouchstoneError::Data {
        line,
        message: message.into(),
    }
}

fn parse_option_line(line_no: usize, body: &str) -> Result<TouchstoneOptions, TouchstoneError> {
    let mut opts = TouchstoneOptions::default();
    let upper = body.to_ascii_uppercase();
    let mut tokens = upper.split_whitespace();
    while let Some(t) = tokens.next() {
        if let Some(u) = FrequencyUnit::from_token(t) {
            opts.frequency_unit = u;
        } else if let Some(f) = DataFormat::from_token(t) {
            opts.data_format = f;
        } else if t == "S" {
        } else if matches!(t, "Y" | "Z" | "G" | "H") {
            return Err(TouchstoneError::UnsupportedParameter {
                line: line_no,
                kind: t.to_string(),
            });
        } else if t == "R" {
            let z = tokens
                .next()
                .ok_or_else(|| format_error(line_no, "R without an impedance value"))?;
            let z: f64 = parse_finite(z)
                .ok_or_else(|| format_error(line_no, format!("bad impedance '{z}'")))?;
            if z <= 0.0 {
                return Err(format_error(
                    line_no,
                    format!("impedance must be positive, got {z}"),
                ));
            }
            opts.reference_impedance = z;
        } else {
            return Err(format_error(line_no, format!("unknown option '{t}'")));
        }
    }
    Ok(opts)
}

fn parse_finite(t: &str) -> Option<f64> {
    // `f64::from_str` also accepts "inf" and "nan"; Touchstone numbers never do
    if !t
        .bytes()
        .all(|b| b.is_ascii_digit() || matches!(b, b'+' | b'-' | b'.' | b'e' | b'E'))
    {
        return None;
    }
    t.parse::<f64>().ok().filter(|v| v.is_finite())
}

/// Parses a frequency token scaled by `10^shift` without a rounding step.
fn parse_scaled(t: &str, shift: i32) -> Option<f64> {
    parse_finite(t)?;
    if shift == 0 {
        return t.parse().ok();
    }
    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().ok()?),
        None => (t, 0),
    };
    format!("{mantissa}e{}", exponent.checked_add(shift)?)
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
}

/// `e^{jθ}` for `θ` in degrees, exact at multiples of 90°.
fn cis_degrees(deg: f64) -> Complex64 {
    let r = deg.rem_euclid(360.0);
    match r {
        0.0 => Complex64::new(1.0, 0.0),
        90.0 => Complex64::new(0.0, 1.0),
        180.0 => Complex64::new(-1.0, 0.0),
        270.0 => Complex64::new(0.0, -1.0),
        _ => Complex64::from_polar(1.0, deg.to_radians()),
    }
}

fn to_complex(format: DataFormat, a: f64, b: f64) -> Complex64 {
    match format {
        DataFormat::RI => Complex64::new(a, b),
        DataFormat::MA => cis_degrees(b) * a,
        DataFormat::DB => cis_degrees(b) * 10f64.powf(a / 20.0),
    }
}

struct Block {
    line: usize,
    values: Vec<f64>,
    frequency_token: String,
}

fn infer_ports(count: usize) -> Option<usize> {
    let pairs = count.checked_sub(1)?;
    if pairs % 2 != 0 {
        return None;
    }
    let n2 = pairs / 2;
    let n = (n2 as f64).sqrt().round() as usize;
    (n >= 1 && n * n == n2).then_some(n)
}

fn entry_index(n: usize, k: usize) -> (usize, usize) {
    if n == 2 {
        // S11 S21 S12 S22
        (k % 2, k / 2)
    } else {
        (k / n, k % n)
    }
}

/// Parses a Touchstone v1 document, inferring the port count from the data.
pub fn parse_touchstone(text: &str) -> Result<ScatteringData, TouchstoneError> {
    parse_with(text, None)
}

/// Parses a Touchstone v1 document with a known port count.
pub fn parse_touchstone_ports(
    text: &str,
    n_ports: usize,
) -> Result<ScatteringData, TouchstoneError> {
    if n_ports == 0 {
        return Err(data_error(0, "port count must be positive"));
    }
    parse_with(text, Some(n_ports))
}

/// Parses raw bytes, rejecting invalid UTF-8.
pub fn parse_touchstone_bytes(bytes: &[u8]) -> Result<ScatteringData, TouchstoneError> {
    let text = std::str::from_utf8(bytes).map_err(|_| TouchstoneError::Encoding)?;
    parse_touchstone(text)
}

/// Port count from a `.sNp` extension.
pub fn ports_from_extension(path: &Path) -> Option<usize> {
    let ext = path.extension()?.to_str()?.to_ascii_lowercase();
    let digits = ext.strip_prefix('s')?.strip_suffix('p')?;
    digits.parse().ok().filter(|&n| n > 0)
}

/// Reads a file; a `.sNp` extension fixes the port count.
pub fn read_touchstone(path: &Path) -> Result<ScatteringData, TouchstoneError> {
    let bytes =
        std::fs::read(path).map_err(|e| TouchstoneError::Io(format!("{}: {e}", path.display())))?;
    let text = std::str::from_utf8(&bytes).map_err(|_| TouchstoneError::Encoding)?;
    parse_with(text, ports_from_extension(path))
}

fn parse_with(text: &str, ports: Option<usize>) -> Result<ScatteringData, TouchstoneError> {
    let mut options: Option<TouchstoneOptions> = None;
    let mut blocks: Vec<Block> = Vec::new();
    let mut n_ports = ports;
    let mut points: Vec<FrequencyPoint> = Vec::new();
    let mut previous = 0.0f64;
    let mut in_noise = false;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let body = raw.split('!').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        if body.starts_with('[') {
            return Err(TouchstoneError::UnsupportedVersion { line: line_no });
        }
        if let Some(rest) = body.strip_prefix('#') {
            // only the first option line counts
            if options.is_none() {
                options = Some(parse_option_line(line_no, rest)?);
            }
            continue;
        }
        let opts = options.ok_or(TouchstoneError::MissingOptionLine { line: line_no })?;
        if in_noise {
            continue;
        }
        let tokens: Vec<&str> = body.split_whitespace().collect();
        let mut values = Vec::with_capacity(tokens.len());
        for t in &tokens {
            values.push(
                parse_finite(t).ok_or_else(|| data_error(line_no, format!("bad number '{t}'")))?,
            );
        }

        if values.len() % 2 == 1 {
            // a new frequency block; finish the previous one first
            if let Some(b) = blocks.pop() {
                let n = finish_block(b, &mut n_ports, opts, &mut previous, &mut points)?;
                let f = parse_scaled(tokens[0], opts.frequency_unit.exponent())
                    .ok_or_else(|| data_error(line_no, "frequency out of range"))?;
                if n == 2 && f <= previous {
                    log::warn!("line {line_no}: skipping noise parameter section");
                    in_noise = true;
                    continue;
                }
            }
            blocks.push(Block {
                line: line_no,
                values,
                frequency_token: tokens[0].to_string(),
            });
        } else {
            let b = blocks
                .last_mut()
                .ok_or_else(|| data_error(line_no, "continuation line before any frequency"))?;
            b.values.extend(values);
        }
    }

    // without an option line no data line was accepted either
    let opts = options.ok_or(TouchstoneError::MissingOptionLine { line: 0 })?;
    if let Some(b) = blocks.pop() {
        finish_block(b, &mut n_ports, opts, &mut previous, &mut points)?;
    }
    let n = n_ports.ok_or_else(|| data_error(0, "no data lines, port count unknown"))?;
    ScatteringData::new(n, opts.reference_impedance, points)
        .map_err(|e| data_error(0, e.to_string()))
}

fn finish_block(
    b: Block,
    n_ports: &mut Option<usize>,
    opts: TouchstoneOptions,
    previous: &mut f64,
    points: &mut Vec<FrequencyPoint>,
) -> Result<usize, TouchstoneError> {
    let n = match *n_ports {
        Some(n) => n,
        None => {
            let n = infer_ports(b.values.len()).ok_or_else(|| {
                data_error(
                    b.line,
                    format!("{} values do not form an S-matrix block", b.values.len()),
                )
            })?;
            *n_ports = Some(n);
            n
        }
    };
    let expected = 1 + 2 * n * n;
    if b.values.len() != expected {
        return Err(data_error(
            b.line,
            format!(
                "expected {expected} values for {n} ports, got {}",
                b.values.len()
            ),
        ));
    }
    let f = parse_scaled(&b.frequency_token, opts.frequency_unit.exponent())
        .ok_or_else(|| data_error(b.line, "frequency out of range"))?;
    if f <= 0.0 {
        return Err(data_error(
            b.line,
            format!("frequency must be positive, got {f}"),
        ));
    }
    if !points.is_empty() && f <= *previous {
        return Err(data_error(
            b.line,
            format!(
                "frequency {f} Hz does not increase (previous {})",
                *previous
            ),
        ));
    }
    let mut m = ComplexMatrix::zeros(n, n);
    for (k, pair) in b.values[1..].chunks_exact(2).enumerate() {
        let (i, j) = entry_index(n, k);
        m.set(i, j, to_complex(opts.data_format, pair[0], pair[1]))
            .map_err(|_| data_error(b.line, "entry is not finite after conversion"))?;
    }
    *previous = f;
    points.push(FrequencyPoint {
        frequency: f,
        s_matrix: m,
    });
    Ok(n)
}

/// Shortest round-trip decimal for `v · 10^(−shift)`.
///
/// Plain notation for moderate exponents, scientific otherwise.
fn format_shifted(v: f64, shift: i32) -> String {
    let sci = format!("{v:e}");
    let (mantissa, exp) = sci
        .split_once('e')
        .expect("LowerExp always has an exponent");
    let exp: i32 = exp.parse().expect("LowerExp exponent is an integer");
    let exp = exp - shift;
    let (sign, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => ("-", m),
        None => ("", mantissa),
    };
    let digits: String = mantissa.chars().filter(|c| *c != '.').collect();
    if v == 0.0 {
        return format!("{sign}0");
    }
    if !(-7..=15).contains(&exp) {
        return format!("{sign}{mantissa}e{exp}");
    }
    // digits d0 d1 d2 … represent d0.d1d2… × 10^exp
    let point = exp + 1;
    if point <= 0 {
        format!("{sign}0.{}{digits}", "0".repeat((-point) as usize))
    } else if point as usize >= digits.len() {
        format!(
            "{sign}{digits}{}",
            "0".repeat(point as usize - digits.len())
        )
    } else {
        let (int, frac) = digits.split_at(point as usize);
        format!("{sign}{int}.{frac}")
    }
}

/// Magnitude in dB that parses back to exactly zero for a null entry.
const ZERO_DB: f64 = -1000.0;

fn pair_strings(format: DataFormat, z: Complex64) -> (String, String) {
    match format {
        DataFormat::RI => (format_shifted(z.re, 0), format_shifted(z.im, 0)),
        DataFormat::MA => (
            format_shifted(z.norm(), 0),
            format_shifted(z.arg().to_degrees(), 0),
        ),
        DataFormat::DB => {
            let mag = z.norm();
            let db = if mag == 0.0 {
                ZERO_DB
            } else {
                20.0 * mag.log10()
            };
            (
                format_shifted(db, 0),
                format_shifted(z.arg().to_degrees(), 0),
            )
        }
    }
}

/// Renders `data` as a Touchstone v1 document.
///
/// The option line carries `opts.reference_impedance()` as given; entries
/// are not renormalized.
pub fn write_touchstone(data: &ScatteringData, opts: &TouchstoneOptions) -> String {
    let n = data.n_ports();
    let shift = opts.frequency_unit.exponent();
    let mut out = String::new();
    out.push_str(&format!(
        "# {} S {} R {}\n",
        opts.frequency_unit,
        opts.data_format,
        format_shifted(opts.reference_impedance, 0)
    ));
    for p in data.points() {
        let freq = format_shifted(p.frequency, shift);
        let m = &p.s_matrix;
        let pair = |i: usize, j: usize| {
            let (a, b) = pair_strings(opts.data_format, m.get(i, j));
            format!(" {a} {b}")
        };
        if n <= 2 {
            out.push_str(&freq);
            for k in 0..n * n {
                let (i, j) = entry_index(n, k);
                out.push_str(&pair(i, j));
            }
            out.push('\n');
            continue;
        }
        for i in 0..n {
            for (chunk_no, cols) in (0..n).collect::<Vec<_>>().chunks(4).enumerate() {
                if i == 0 && chunk_no == 0 {
                    out.push_str(&freq);
                } else {
                    out.push(' ');
                }
                for &j in cols {
                    out.push_str(&pair(i, j));
                }
                out.push('\n');
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn ri_example() {
        let d = parse_touchstone("# GHz S RI R 50\n1.0 0.5 -0.5\n").unwrap();
        assert_eq!(d.n_ports(), 1);
        assert_eq!(d.points()[0].frequency, 1e9);
        assert_eq!(d.points()[0].s_matrix.get(0, 0), c(0.5, -0.5));
    }

    #[test]
    fn ma_example() {
        let d = parse_touchstone("# MHz S MA R 50\n100 1.0 90\n").unwrap();
        assert_eq!(d.points()[0].frequency, 1e8);
        assert_eq!(d.points()[0].s_matrix.get(0, 0), c(0.0, 1.0));
    }

    #[test]
    fn db_example() {
        let d = parse_touchstone("# GHz S DB R 50\n2.0 0 0\n").unwrap();
        assert_eq!(d.points()[0].s_matrix.get(0, 0), c(1.0, 0.0));
    }

    #[test]
    fn defaults_and_case() {
        let d = parse_touchstone("! hello\n#\n1 2 0\n").unwrap();
        assert_eq!(d.points()[0].frequency, 1e9);
        assert_eq!(d.reference_impedance(), 50.0);
        assert_eq!(d.points()[0].s_matrix.get(0, 0), c(2.0, 0.0));
        let d = parse_touchstone("# khz s ri r 75\n1.5 0 0 ! trailing\n").unwrap();
        assert_eq!(d.points()[0].frequency, 1500.0);
        assert_eq!(d.reference_impedance(), 75.0);
    }

    #[test]
    fn two_port_column_order() {
        let d = parse_touchstone("# Hz S RI R 50\n1 11 0 21 0 12 0 22 0\n").unwrap();
        let m = &d.points()[0].s_matrix;
        assert_eq!(m.get(0, 0).re, 11.0);
        assert_eq!(m.get(1, 0).re, 21.0);
        assert_eq!(m.get(0, 1).re, 12.0);
        assert_eq!(m.get(1, 1).re, 22.0);
        let text = write_touchstone(
            &d,
            &TouchstoneOptions::new(FrequencyUnit::Hz, DataFormat::RI, 50.0).unwrap(),
        );
        assert!(text.contains("1 11 0 21 0 12 0 22 0"), "{text}");
    }

    #[test]
    fn three_port_row_major_with_row_breaks() {
        let text = "# Hz S RI R 50\n1 1 0 2 0 3 0\n 4 0 5 0 6 0\n 7 0 8 0 9 0\n";
        let d = parse_touchstone(text).unwrap();
        let m = &d.points()[0].s_matrix;
        assert_eq!(m.get(0, 2).re, 3.0);
        assert_eq!(m.get(1, 0).re, 4.0);
        assert_eq!(m.get(2, 2).re, 9.0);
    }

    #[test]
    fn writer_examples() {
        let m = ComplexMatrix::from_rows(&[vec![c(0.0, 1.0)]]).unwrap();
        let d = ScatteringData::new(
            1,
            50.0,
            vec![FrequencyPoint {
                frequency: 1e9,
                s_matrix: m,
            }],
        )
        .unwrap();
        let opts = TouchstoneOptions::new(FrequencyUnit::GHz, DataFormat::RI, 50.0).unwrap();
        let text = write_touchstone(&d, &opts);
        assert!(
            text.lines()
                .any(|l| l.split_whitespace().collect::<Vec<_>>() == ["1", "0", "1"]),
            "{text}"
        );

        let d4 = ScatteringData::new(
            4,
            50.0,
            vec![FrequencyPoint {
                frequency: 2e9,
                s_matrix: ComplexMatrix::identity(4),
            }],
        )
        .unwrap();
        let text = write_touchstone(&d4, &opts);
        let data_lines: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
        assert_eq!(data_lines.len(), 4);
        assert!(data_lines
            .iter()
            .skip(1)
            .all(|l| l.split_whitespace().count() == 8));
        assert_eq!(parse_touchstone(&text).unwrap(), d4);
    }

    #[test]
    fn five_ports_wrap_each_row() {
        let m = ComplexMatrix::identity(5);
        let d = ScatteringData::new(
            5,
            50.0,
            vec![FrequencyPoint {
                frequency: 1.0,
                s_matrix: m,
            }],
        )
        .unwrap();
        let text = write_touchstone(&d, &TouchstoneOptions::default());
        assert_eq!(text.lines().count(), 1 + 10);
        assert_eq!(
            parse_touchstone(&text).unwrap().points()[0].s_matrix,
            ComplexMatrix::identity(5)
        );
    }

    #[test]
    fn noise_section_is_skipped() {
        let text = "# GHz S MA R 50\n1 0 0 1 0 1 0 0 0\n2 0 0 1 0 1 0 0 0\n1 0.5 0.3 20 0.2\n2 0.6 0.3 25 0.2\n";
        let d = parse_touchstone(text).unwrap();
        assert_eq!(d.points().len(), 2);
    }

    #[test]
    fn errors() {
        assert!(matches!(
            parse_touchstone("1 0 0\n"),
            Err(TouchstoneError::MissingOptionLine { .. })
        ));
        assert!(matches!(
            parse_touchstone(""),
            Err(TouchstoneError::MissingOptionLine { .. })
        ));
        assert!(matches!(
            parse_touchstone("# GHz Y RI R 50\n1 0 0\n"),
            Err(TouchstoneError::UnsupportedParameter { .. })
        ));
        assert!(matches!(
            parse_touchstone("[Version] 2.0\n# GHz S RI R 50\n"),
            Err(TouchstoneError::UnsupportedVersion { line: 1 })
        ));
        assert!(matches!(
            parse_touchstone("# GHz S RI R 50\n2 0 0\n1 0 0\n"),
            Err(TouchstoneError::Data { line: 3, .. })
        ));
        assert!(matches!(
            parse_touchstone("# GHz S RI R 50\n1 0 0 0 0 0\n"),
            Err(TouchstoneError::Data { .. })
        ));
        assert!(matches!(
            parse_touchstone_ports("# GHz S RI R 50\n1 0 0\n", 2),
            Err(TouchstoneError::Data { .. })
        ));
        assert!(matches!(
            parse_touchstone("# GHz S RI R 50\n1 nan 0\n"),
            Err(TouchstoneError::Data { .. })
        ));
        assert!(matches!(
            parse_touchstone("# GHz S RI R -5\n"),
            Err(TouchstoneError::Format { .. })
        ));
        assert!(matches!(
            parse_touchstone("# GHz S XX\n"),
            Err(TouchstoneError::Format { .. })
        ));
        assert_eq!(
            parse_touchstone_bytes(&[0xff, 0xfe]),
            Err(TouchstoneError::Encoding)
        );
    }

    #[test]
    fn extension_port_count() {
        assert_eq!(ports_from_extension(Path::new("amp.s2p")), Some(2));
        assert_eq!(ports_from_extension(Path::new("x.S12P")), Some(12));
        assert_eq!(ports_from_extension(Path::new("x.txt")), None);
        assert_eq!(ports_from_extension(Path::new("x.s0p")), None);
    }

    #[test]
    fn shifted_formatting() {
        assert_eq!(format_shifted(1e9, 9), "1");
        assert_eq!(format_shifted(1.1e9, 9), "1.1");
        assert_eq!(format_shifted(123.0, 6), "0.000123");
        assert_eq!(format_shifted(-0.0, 0), "-0");
        assert_eq!(format_shifted(0.25, 0), "0.25");
        assert_eq!(format_shifted(1e300, 0), "1e300");
        assert_eq!(format_shifted(5e-324, 0), "5e-324");
        assert_eq!(parse_scaled("1.1", 9), Some(1.1e9));
        assert_eq!(parse_scaled("1.1e-3", 9), Some(1.1e6));
    }
}
