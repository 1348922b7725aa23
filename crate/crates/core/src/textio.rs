//! Line-oriented text formats for lattices, interpolation problems, and
//! utility boundary tables.
//!
//! Files are UTF-8; `#` starts a comment, blank lines are ignored, and
//! content lines belong to the most recent all-caps section header:
//!
//! ```text
//! LATTICE
//! boolean 2
//! labels 0 a b 1        # element labels in canonical order (optional)
//!
//! BOUNDS                # one line per coordinate: a_i b_i, strictly a_i < b_i
//! 0 b
//!
//! VALUES                # f at the cuboid vertices, keyed by coordinate subset
//! [] a
//! [1] 1
//!
//! POINTS                # optional arbitrary domain: (x_1 .. x_n) value
//! (0) a
//! (b) 1
//! ```
//!
//! Lattice expressions are `chain K`, `boolean M`,
//! `product ( EXPR ) ( EXPR )`, or `poset nodes A B … covers A<B …`
//! (the `covers` list may be omitted for an antichain). A file may omit the
//! LATTICE section when the lattice is supplied externally, and VALUES may
//! stand alone — without BOUNDS its arity is inferred from the entry count.
//!
//! A utility boundary file replaces BOUNDS with SCALES: line `i` holds the
//! images in `L` of coordinate `i`'s local scale endpoints, and VALUES holds
//! the global utility at the `2^n` boundary profiles. It converts into an
//! ordinary problem via [`utility_to_problem`], which refuses degenerate
//! coordinates.

use std::fmt;

use crate::lattice::{DistributiveLattice, LatticeElement, LatticeSpec};
use crate::polynomial::PolynomialDnf;
use crate::render::{parse_subset, subset_label};
use crate::solver::MAX_ARITY;

/// Parse failure with its 1-based source line; line 0 means the file as a
/// whole (a missing section, say).
#[derive(Debug)]
pub struct ParseError {
    pub line: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "{}", self.msg)
        } else {
            write!(f, "line {}: {}", self.line, self.msg)
        }
    }
}

impl std::error::Error for ParseError {}

fn err<T>(line: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, msg: msg.into() })
}

/// A cuboid value table together with the arity it was validated against.
#[derive(Debug, Clone)]
pub struct ValueTable {
    pub arity: usize,
    /// `table[I] = f(ê_I)`, indexed by subset mask.
    pub table: Vec<LatticeElement>,
}

/// An arbitrary finite domain with one value per point.
#[derive(Debug, Clone)]
pub struct PointsData {
    pub points: Vec<Vec<LatticeElement>>,
    pub values: Vec<LatticeElement>,
}

/// A parsed problem file. Which sections must be present depends on the
/// consumer: a cuboid solve needs `bounds` + `values`, the unit-cuboid case
/// needs `values` alone, domain-point commands need `points` or a cuboid.
#[derive(Debug)]
pub struct ProblemFile {
    pub lattice: DistributiveLattice,
    pub bounds: Option<Vec<(LatticeElement, LatticeElement)>>,
    pub values: Option<ValueTable>,
    pub points: Option<PointsData>,
}

/// A parsed utility boundary file: per-coordinate scale endpoint images and
/// the global utility on the boundary profiles.
#[derive(Debug)]
pub struct UtilityFile {
    pub lattice: DistributiveLattice,
    pub scales: Vec<(LatticeElement, LatticeElement)>,
    pub values: ValueTable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Section {
    Lattice,
    Bounds,
    Values,
    Points,
    Scales,
}

impl Section {
    fn from_header(s: &str) -> Option<Section> {
        match s {
            "LATTICE" => Some(Section::Lattice),
            "BOUNDS" => Some(Section::Bounds),
            "VALUES" => Some(Section::Values),
            "POINTS" => Some(Section::Points),
            "SCALES" => Some(Section::Scales),
            _ => None,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Section::Lattice => "LATTICE",
            Section::Bounds => "BOUNDS",
            Section::Values => "VALUES",
            Section::Points => "POINTS",
            Section::Scales => "SCALES",
        }
    }
}

#[derive(Debug)]
struct Line {
    no: usize,
    text: String,
}

fn split_sections(text: &str) -> Result<Vec<(Section, usize, Vec<Line>)>, ParseError> {
    let mut out: Vec<(Section, usize, Vec<Line>)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let no = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(sec) = Section::from_header(content) {
            if out.iter().any(|(s, _, _)| *s == sec) {
                return err(no, format!("duplicate section {}", sec.name()));
            }
            out.push((sec, no, Vec::new()));
        } else {
            match out.last_mut() {
                Some((_, _, lines)) => lines.push(Line { no, text: content.to_string() }),
                None => return err(no, "content before the first section header"),
            }
        }
    }
    Ok(out)
}

/// Split parentheses into their own tokens so labels never need quoting
/// (element labels may not contain whitespace or parentheses).
fn tokenize(line: &str) -> Vec<String> {
    line.replace('(', " ( ").replace(')', " ) ").split_whitespace().map(str::to_string).collect()
}

struct Tokens<'a> {
    toks: &'a [String],
    pos: usize,
}

impl<'a> Tokens<'a> {
    fn next(&mut self) -> Result<&'a str, String> {
        match self.toks.get(self.pos) {
            Some(t) => {
                self.pos += 1;
                Ok(t.as_str())
            }
            None => Err("unexpected end of lattice expression".to_string()),
        }
    }

    fn peek(&self) -> Option<&'a str> {
        self.toks.get(self.pos).map(String::as_str)
    }

    fn expect(&mut self, want: &str) -> Result<(), String> {
        let got = self.next()?;
        if got == want {
            Ok(())
        } else {
            Err(format!("expected '{want}', found '{got}'"))
        }
    }
}

fn parse_spec_expr(t: &mut Tokens<'_>) -> Result<LatticeSpec, String> {
    match t.next()? {
        "chain" => Ok(LatticeSpec::Chain(parse_count(t.next()?)?)),
        "boolean" => Ok(LatticeSpec::Boolean(parse_count(t.next()?)?)),
        "product" => {
            t.expect("(")?;
            let left = parse_spec_expr(t)?;
            t.expect(")")?;
            t.expect("(")?;
            let right = parse_spec_expr(t)?;
            t.expect(")")?;
            Ok(LatticeSpec::product(left, right))
        }
        "poset" => {
            t.expect("nodes")?;
            let mut nodes = Vec::new();
            while let Some(tok) = t.peek() {
                if tok == "covers" || tok == ")" {
                    break;
                }
                nodes.push(t.next()?.to_string());
            }
            if nodes.is_empty() {
                return Err("poset needs at least one node".to_string());
            }
            let mut covers = Vec::new();
            if t.peek() == Some("covers") {
                t.next()?;
                while let Some(tok) = t.peek() {
                    if tok == ")" {
                        break;
                    }
                    t.next()?;
                    match tok.split_once('<') {
                        Some((a, b)) if !a.is_empty() && !b.is_empty() => {
                            covers.push((a.to_string(), b.to_string()));
                        }
                        _ => return Err(format!("expected a cover pair like x<y, found '{tok}'")),
                    }
                }
            }
            Ok(LatticeSpec::Downsets { nodes, covers })
        }
        other => Err(format!("unknown lattice constructor '{other}'")),
    }
}

fn parse_count(tok: &str) -> Result<usize, String> {
    tok.parse().map_err(|_| format!("expected a number, found '{tok}'"))
}

/// Parse a one-line lattice expression (`chain 4`,
/// `product ( chain 3 ) ( boolean 2 )`, …).
pub fn parse_lattice_spec(text: &str) -> Result<LatticeSpec, String> {
    let toks = tokenize(text);
    let mut t = Tokens { toks: &toks, pos: 0 };
    let spec = parse_spec_expr(&mut t)?;
    if t.pos != toks.len() {
        return Err(format!(
            "trailing tokens after the lattice expression: '{}'",
            toks[t.pos..].join(" ")
        ));
    }
    Ok(spec)
}

fn build_lattice(lines: &[Line], header_line: usize) -> Result<DistributiveLattice, ParseError> {
    let first = match lines.first() {
        Some(l) => l,
        None => return err(header_line, "LATTICE section is empty"),
    };
    let spec =
        parse_lattice_spec(&first.text).map_err(|msg| ParseError { line: first.no, msg })?;
    let lat = DistributiveLattice::build(&spec)
        .map_err(|e| ParseError { line: first.no, msg: e.to_string() })?;
    match lines.len() {
        1 => Ok(lat),
        2 => {
            let l = &lines[1];
            let toks: Vec<&str> = l.text.split_whitespace().collect();
            if toks.first() != Some(&"labels") {
                return err(l.no, "expected a 'labels ...' line");
            }
            lat.with_labels(toks[1..].iter().map(|s| s.to_string()).collect())
                .map_err(|e| ParseError { line: l.no, msg: e.to_string() })
        }
        _ => err(lines[2].no, "unexpected extra line in the LATTICE section"),
    }
}

fn resolve(
    lat: &DistributiveLattice,
    label: &str,
    line: usize,
) -> Result<LatticeElement, ParseError> {
    lat.element_by_label(label)
        .ok_or_else(|| ParseError { line, msg: format!("unknown element label '{label}'") })
}

/// BOUNDS and SCALES share their shape: two element labels per line.
fn parse_pairs(
    lat: &DistributiveLattice,
    lines: &[Line],
    header_line: usize,
    what: &str,
) -> Result<Vec<(usize, LatticeElement, LatticeElement)>, ParseError> {
    if lines.is_empty() {
        return err(header_line, format!("{what} section is empty"));
    }
    if lines.len() > MAX_ARITY {
        return err(header_line, format!("at most {MAX_ARITY} coordinates are supported"));
    }
    let mut out = Vec::new();
    for l in lines {
        let toks: Vec<&str> = l.text.split_whitespace().collect();
        if toks.len() != 2 {
            return err(l.no, format!("expected two element labels per {what} line"));
        }
        out.push((l.no, resolve(lat, toks[0], l.no)?, resolve(lat, toks[1], l.no)?));
    }
    Ok(out)
}

/// When `arity` is absent (no BOUNDS/SCALES), it is inferred: the entry count
/// must be a power of two.
fn parse_values(
    lat: &DistributiveLattice,
    lines: &[Line],
    header_line: usize,
    arity: Option<usize>,
) -> Result<ValueTable, ParseError> {
    let mut entries = Vec::new();
    for l in lines {
        let toks: Vec<&str> = l.text.split_whitespace().collect();
        if toks.len() != 2 {
            return err(l.no, "expected 'subset label' per VALUES line");
        }
        let mask = parse_subset(toks[0])
            .ok_or_else(|| ParseError { line: l.no, msg: format!("malformed subset key '{}'", toks[0]) })?;
        entries.push((mask, resolve(lat, toks[1], l.no)?, l.no));
    }
    let n = match arity {
        Some(n) => n,
        None => {
            let c = entries.len();
            if c == 0 || c & (c - 1) != 0 {
                return err(
                    header_line,
                    format!("without BOUNDS the number of values must be a power of two, got {c}"),
                );
            }
            let n = c.trailing_zeros() as usize;
            if n > MAX_ARITY {
                return err(header_line, format!("at most {MAX_ARITY} coordinates are supported"));
            }
            n
        }
    };
    if entries.len() != 1 << n {
        return err(
            header_line,
            format!("expected {} values for {} coordinate(s), got {}", 1usize << n, n, entries.len()),
        );
    }
    let mut table: Vec<Option<LatticeElement>> = vec![None; 1 << n];
    for (mask, x, line_no) in entries {
        if mask >= 1u32 << n {
            return err(
                line_no,
                format!("subset key {} names a coordinate beyond the {} available", subset_label(mask), n),
            );
        }
        let slot = &mut table[mask as usize];
        if slot.is_some() {
            return err(line_no, format!("duplicate subset key {}", subset_label(mask)));
        }
        *slot = Some(x);
    }
    // count + uniqueness + range imply full coverage
    let table = table.into_iter().map(|o| o.expect("validated coverage")).collect();
    Ok(ValueTable { arity: n, table })
}

fn parse_points(
    lat: &DistributiveLattice,
    lines: &[Line],
    header_line: usize,
) -> Result<PointsData, ParseError> {
    let mut points: Vec<Vec<LatticeElement>> = Vec::new();
    let mut values = Vec::new();
    for l in lines {
        let toks = tokenize(&l.text);
        let close = toks.iter().position(|t| t == ")");
        let well_formed = toks.first().map(String::as_str) == Some("(")
            && close.is_some_and(|c| c + 2 == toks.len());
        if !well_formed {
            return err(l.no, "expected '(labels ...) value' per POINTS line");
        }
        let close = close.expect("checked above");
        let mut pt = Vec::new();
        for tok in &toks[1..close] {
            pt.push(resolve(lat, tok, l.no)?);
        }
        if let Some(first) = points.first() {
            if first.len() != pt.len() {
                return err(l.no, "points must all have the same arity");
            }
        } else if pt.len() > MAX_ARITY {
            return err(l.no, format!("at most {MAX_ARITY} coordinates are supported"));
        }
        values.push(resolve(lat, &toks[close + 1], l.no)?);
        points.push(pt);
    }
    if points.is_empty() {
        return err(header_line, "POINTS section is empty");
    }
    Ok(PointsData { points, values })
}

/// Parse a problem file. `external` supplies the lattice when the file has no
/// LATTICE section (and conflicts with one that does).
pub fn parse_problem(
    text: &str,
    external: Option<DistributiveLattice>,
) -> Result<ProblemFile, ParseError> {
    let mut lattice_sec = None;
    let mut bounds_sec = None;
    let mut values_sec = None;
    let mut points_sec = None;
    for (sec, hdr, lines) in split_sections(text)? {
        match sec {
            Section::Lattice => lattice_sec = Some((hdr, lines)),
            Section::Bounds => bounds_sec = Some((hdr, lines)),
            Section::Values => values_sec = Some((hdr, lines)),
            Section::Points => points_sec = Some((hdr, lines)),
            Section::Scales => {
                return err(hdr, "SCALES belongs to utility boundary files; problems use BOUNDS")
            }
        }
    }

    let lattice = match (external, lattice_sec) {
        (Some(l), None) => l,
        (None, Some((hdr, lines))) => build_lattice(&lines, hdr)?,
        (Some(_), Some((hdr, _))) => {
            return err(hdr, "the lattice is already provided externally; remove the LATTICE section")
        }
        (None, None) => return err(0, "no LATTICE section and no external lattice given"),
    };

    let bounds = match bounds_sec {
        Some((hdr, lines)) => {
            let mut out = Vec::new();
            for (line_no, a, b) in parse_pairs(&lattice, &lines, hdr, "BOUNDS")? {
                if !lattice.lt(a, b) {
                    return err(
                        line_no,
                        format!(
                            "bounds must be strict: '{}' is not strictly below '{}'",
                            lattice.label(a),
                            lattice.label(b)
                        ),
                    );
                }
                out.push((a, b));
            }
            Some(out)
        }
        None => None,
    };

    let values = match values_sec {
        Some((hdr, lines)) => {
            Some(parse_values(&lattice, &lines, hdr, bounds.as_ref().map(Vec::len))?)
        }
        None => None,
    };

    let points = match points_sec {
        Some((hdr, lines)) => Some(parse_points(&lattice, &lines, hdr)?),
        None => None,
    };

    Ok(ProblemFile { lattice, bounds, values, points })
}

/// Parse a lattice file: the same format, restricted to a LATTICE section.
pub fn parse_lattice_file(text: &str) -> Result<DistributiveLattice, ParseError> {
    let sections = split_sections(text)?;
    let mut lattice = None;
    for (sec, hdr, lines) in sections {
        match sec {
            Section::Lattice => lattice = Some(build_lattice(&lines, hdr)?),
            other => {
                return err(hdr, format!("unexpected section {} in a lattice file", other.name()))
            }
        }
    }
    match lattice {
        Some(l) => Ok(l),
        None => err(0, "no LATTICE section found"),
    }
}

/// Parse a utility boundary file (LATTICE + SCALES + VALUES).
pub fn parse_utility(
    text: &str,
    external: Option<DistributiveLattice>,
) -> Result<UtilityFile, ParseError> {
    let mut lattice_sec = None;
    let mut scales_sec = None;
    let mut values_sec = None;
    for (sec, hdr, lines) in split_sections(text)? {
        match sec {
            Section::Lattice => lattice_sec = Some((hdr, lines)),
            Section::Scales => scales_sec = Some((hdr, lines)),
            Section::Values => values_sec = Some((hdr, lines)),
            Section::Bounds => {
                return err(hdr, "a utility boundary file uses SCALES in place of BOUNDS")
            }
            Section::Points => return err(hdr, "a utility boundary file has no POINTS section"),
        }
    }

    let lattice = match (external, lattice_sec) {
        (Some(l), None) => l,
        (None, Some((hdr, lines))) => build_lattice(&lines, hdr)?,
        (Some(_), Some((hdr, _))) => {
            return err(hdr, "the lattice is already provided externally; remove the LATTICE section")
        }
        (None, None) => return err(0, "no LATTICE section and no external lattice given"),
    };

    let scales = match scales_sec {
        Some((hdr, lines)) => parse_pairs(&lattice, &lines, hdr, "SCALES")?
            .into_iter()
            .map(|(_, a, b)| (a, b))
            .collect::<Vec<_>>(),
        None => return err(0, "no SCALES section found"),
    };
    let values = match values_sec {
        Some((hdr, lines)) => parse_values(&lattice, &lines, hdr, Some(scales.len()))?,
        None => return err(0, "no VALUES section found"),
    };
    Ok(UtilityFile { lattice, scales, values })
}

/// Turn boundary utility data into a cuboid problem: `a_i, b_i` are the
/// scale endpoint images and `f` is the utility table. A coordinate whose
/// endpoints are not strictly ordered cannot span a cuboid edge and is
/// refused.
pub fn utility_to_problem(u: UtilityFile) -> Result<ProblemFile, String> {
    for (i, &(a, b)) in u.scales.iter().enumerate() {
        if !u.lattice.lt(a, b) {
            return Err(format!(
                "coordinate {} is degenerate: '{}' is not strictly below '{}'",
                i + 1,
                u.lattice.label(a),
                u.lattice.label(b)
            ));
        }
    }
    Ok(ProblemFile { lattice: u.lattice, bounds: Some(u.scales), values: Some(u.values), points: None })
}

/// Render a lattice expression back to its one-line source form.
pub fn render_spec(spec: &LatticeSpec) -> String {
    match spec {
        LatticeSpec::Chain(k) => format!("chain {k}"),
        LatticeSpec::Boolean(m) => format!("boolean {m}"),
        LatticeSpec::Product(l, r) => {
            format!("product ( {} ) ( {} )", render_spec(l), render_spec(r))
        }
        LatticeSpec::Downsets { nodes, covers } => {
            let mut s = format!("poset nodes {}", nodes.join(" "));
            if !covers.is_empty() {
                s.push_str(" covers ");
                let pairs: Vec<String> = covers.iter().map(|(a, b)| format!("{a}<{b}")).collect();
                s.push_str(&pairs.join(" "));
            }
            s
        }
    }
}

/// Render a problem back to file text. Parsing the result reproduces the
/// problem exactly.
pub fn render_problem(f: &ProblemFile) -> String {
    let lat = &f.lattice;
    let mut out = String::new();
    out.push_str("LATTICE\n");
    out.push_str(&render_spec(lat.spec()));
    out.push('\n');
    if lat.has_custom_labels() {
        let labels: Vec<String> = lat.elements().iter().map(|&x| lat.label(x)).collect();
        out.push_str(&format!("labels {}\n", labels.join(" ")));
    }
    if let Some(bounds) = &f.bounds {
        out.push_str("\nBOUNDS\n");
        for &(a, b) in bounds {
            out.push_str(&format!("{} {}\n", lat.label(a), lat.label(b)));
        }
    }
    if let Some(v) = &f.values {
        out.push_str("\nVALUES\n");
        for (mask, &x) in v.table.iter().enumerate() {
            out.push_str(&format!("{} {}\n", subset_label(mask as u32), lat.label(x)));
        }
    }
    if let Some(p) = &f.points {
        out.push_str("\nPOINTS\n");
        for (pt, &v) in p.points.iter().zip(&p.values) {
            let labels: Vec<String> = pt.iter().map(|&x| lat.label(x)).collect();
            out.push_str(&format!("({}) {}\n", labels.join(" "), lat.label(v)));
        }
    }
    out
}

/// Parse a coefficient table in the rendered DNF shape: entries
/// `subset -> label` (the arrow is optional), separated by newlines or `;`,
/// so both the one-per-line and inline renderings feed back in. Errors
/// report the 1-based entry index rather than a file line.
pub fn parse_coeffs(lat: &DistributiveLattice, text: &str) -> Result<PolynomialDnf, ParseError> {
    let mut entries = Vec::new();
    let mut entry_no = 0usize;
    for raw in text.lines().flat_map(|l| l.split(';')) {
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        entry_no += 1;
        let toks: Vec<&str> = content.split_whitespace().collect();
        let (key, label) = match toks.as_slice() {
            [k, l] => (*k, *l),
            [k, "->", l] => (*k, *l),
            _ => return err(entry_no, "expected 'subset -> label'"),
        };
        let mask = parse_subset(key)
            .ok_or_else(|| ParseError { line: entry_no, msg: format!("malformed subset key '{key}'") })?;
        entries.push((mask, resolve(lat, label, entry_no)?, entry_no));
    }
    let c = entries.len();
    if c == 0 || c & (c - 1) != 0 {
        return err(0, format!("the number of coefficients must be a power of two, got {c}"));
    }
    let n = c.trailing_zeros() as usize;
    if n > MAX_ARITY {
        return err(0, format!("at most {MAX_ARITY} coordinates are supported"));
    }
    let mut table: Vec<Option<LatticeElement>> = vec![None; 1 << n];
    for (mask, x, entry_no) in entries {
        if mask >= 1u32 << n {
            return err(
                entry_no,
                format!("subset key {} names a coordinate beyond the {} available", subset_label(mask), n),
            );
        }
        let slot = &mut table[mask as usize];
        if slot.is_some() {
            return err(entry_no, format!("duplicate subset key {}", subset_label(mask)));
        }
        *slot = Some(x);
    }
    let table = table.into_iter().map(|o| o.expect("validated coverage")).collect();
    Ok(PolynomialDnf::over_lattice(lat, n, table))
}
