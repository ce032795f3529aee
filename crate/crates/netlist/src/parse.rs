//! Line-oriented netlist parser.
//!
//! ```text
//! qlnet 1
//! qubits 2 coding=polarization,lp11
//! seg q0 linear L=0.1 dbeta=31.4159
//! gate q0,q1 cphase theta=1.5707963267948966
//! gate q1 u2 alpha=0 theta=0.5 beta=0
//! qft q0..q1
//! oracle q0..q1 table=xor.tbl
//! measure all shots=1000 seed=7
//! ```
//!
//! Errors never stop the parse: the offending line is skipped and the next
//! one is read, so a single pass reports everything.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use qlight::circuit::OracleSpec;
use qlight::Coding;

use crate::document::{Directive, NetlistDocument, SegmentKind, Statement, VERSION};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
    pub token: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "line {}, column {}: {}",
            self.line, self.column, self.message
        )?;
        if !self.token.is_empty() {
            write!(f, " (at `{}`)", self.token)?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Copy, Debug)]
struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let code = match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    };
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in code.char_indices() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push(Token {
                    text: &code[s..i],
                    column: code[..s].chars().count() + 1,
                });
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push(Token {
            text: &code[s..],
            column: code[..s].chars().count() + 1,
        });
    }
    out
}

/// Decimal or scientific notation only: `[+-]? (d+ (. d*)? | . d+) ([eE] [+-]? d+)?`.
pub fn parse_number(s: &str) -> Option<f64> {
    let b = s.as_bytes();
    let mut i = 0;
    if i < b.len() && (b[i] == b'+' || b[i] == b'-') {
        i += 1;
    }
    let int_start = i;
    while i < b.len() && b[i].is_ascii_digit() {
        i += 1;
    }
    let mut digits = i - int_start;
    if i < b.len() && b[i] == b'.' {
        i += 1;
        let frac_start = i;
        while i < b.len() && b[i].is_ascii_digit() {
            i += 1;
        }
        digits += i - frac_start;
    }
    if digits == 0 {
        return None;
    }
    if i < b.len() && (b[i] == b'e' || b[i] == b'E') {
        i += 1;
        if i < b.len() && (b[i] == b'+' || b[i] == b'-') {
            i += 1;
        }
        let exp_start = i;
        while i < b.len() && b[i].is_ascii_digit() {
            i += 1;
        }
        if i == exp_start {
            return None;
        }
    }
    if i != b.len() {
        return None;
    }
    s.parse::<f64>().ok().filter(|v| v.is_finite())
}

fn parse_uint(s: &str) -> Option<u64> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

struct LineCtx<'a> {
    line: usize,
    errors: &'a mut Vec<ParseError>,
}

impl LineCtx<'_> {
    fn error(&mut self, tok: Token<'_>, message: impl Into<String>) {
        self.errors.push(ParseError {
            line: self.line,
            column: tok.column,
            message: message.into(),
            token: tok.text.to_string(),
        });
    }
}

/// `key=value` parameters with their tokens, checked against an allowed set.
struct Params<'a> {
    values: BTreeMap<&'a str, Token<'a>>,
    head: Token<'a>,
}

impl<'a> Params<'a> {
    fn collect(
        ctx: &mut LineCtx<'_>,
        head: Token<'a>,
        tokens: &[Token<'a>],
        allowed: &[&str],
    ) -> Option<Self> {
        let mut values = BTreeMap::new();
        let mut ok = true;
        for &t in tokens {
            let Some((k, v)) = t.text.split_once('=') else {
                ctx.error(t, "expected key=value parameter");
                ok = false;
                continue;
            };
            if !allowed.contains(&k) {
                ctx.error(
                    t,
                    format!(
                        "unknown parameter `{k}` for `{}` (allowed: {})",
                        head.text,
                        allowed.join(", ")
                    ),
                );
                ok = false;
                continue;
            }
            if values.contains_key(k) {
                ctx.error(t, format!("duplicate parameter `{k}`"));
                ok = false;
                continue;
            }
            values.insert(
                k,
                Token {
                    text: v,
                    column: t.column + k.len() + 1,
                },
            );
        }
        ok.then_some(Params { values, head })
    }

    fn number(&self, ctx: &mut LineCtx<'_>, key: &str) -> Option<f64> {
        match self.values.get(key) {
            None => {
                ctx.error(self.head, format!("missing parameter `{key}`"));
                None
            }
            Some(&t) => {
                let v = parse_number(t.text);
                if v.is_none() {
                    ctx.error(t, format!("unparseable number for `{key}`"));
                }
                v
            }
        }
    }

    fn uint(&self, ctx: &mut LineCtx<'_>, key: &str) -> Option<u64> {
        match self.values.get(key) {
            None => {
                ctx.error(self.head, format!("missing parameter `{key}`"));
                None
            }
            Some(&t) => {
                let v = parse_uint(t.text);
                if v.is_none() {
                    ctx.error(t, format!("`{key}` must be a non-negative integer"));
                }
                v
            }
        }
    }
}

fn qubit_ref(
    ctx: &mut LineCtx<'_>,
    tok: Token<'_>,
    text: &str,
    n: usize,
    column: usize,
) -> Option<usize> {
    let at = Token {
        text: if text.is_empty() { tok.text } else { text },
        column,
    };
    let idx = text.strip_prefix('q').and_then(parse_uint);
    match idx {
        None => {
            ctx.error(at, "expected a qubit reference `q<index>`");
            None
        }
        Some(i) if i as usize >= n => {
            ctx.error(
                at,
                format!("dangling qubit reference: register has {n} qubits"),
            );
            None
        }
        Some(i) => Some(i as usize),
    }
}

/// `q0,q2,q1` or `q1..q3`.
fn qubit_list(ctx: &mut LineCtx<'_>, tok: Token<'_>, n: usize) -> Option<Vec<usize>> {
    if let Some((a, b)) = tok.text.split_once("..") {
        let first = qubit_ref(ctx, tok, a, n, tok.column)?;
        let last = qubit_ref(ctx, tok, b, n, tok.column + a.len() + 2)?;
        if last < first {
            ctx.error(tok, "qubit range must ascend");
            return None;
        }
        return Some((first..=last).collect());
    }
    let mut out = Vec::new();
    let mut col = tok.column;
    let mut ok = true;
    for part in tok.text.split(',') {
        match qubit_ref(ctx, tok, part, n, col) {
            Some(q) if out.contains(&q) => {
                ctx.error(tok, format!("qubit q{q} listed twice"));
                ok = false;
            }
            Some(q) => out.push(q),
            None => ok = false,
        }
        col += part.len() + 1;
    }
    ok.then_some(out)
}

fn parse_qubits(ctx: &mut LineCtx<'_>, toks: &[Token<'_>]) -> Option<(usize, Vec<Coding>)> {
    let head = toks[0];
    let Some(&count) = toks.get(1) else {
        ctx.error(head, "bad arity: `qubits` needs a count");
        return None;
    };
    let n = match parse_uint(count.text) {
        Some(n) if n >= 1 => n as usize,
        _ => {
            ctx.error(count, "qubit count must be a positive integer");
            return None;
        }
    };
    let params = Params::collect(ctx, head, &toks[2..], &["coding"])?;
    let coding = match params.values.get("coding") {
        None => vec![Coding::Polarization; n],
        Some(&t) => {
            let mut list = Vec::new();
            for name in t.text.split(',') {
                match Coding::from_name(name) {
                    Some(c) => list.push(c),
                    None => {
                        ctx.error(
                            t,
                            format!("unknown coding `{name}` (expected polarization or lp11)"),
                        );
                        return None;
                    }
                }
            }
            match list.len() {
                1 => vec![list[0]; n],
                k if k == n => list,
                k => {
                    ctx.error(t, format!("{k} codings listed for {n} qubits"));
                    return None;
                }
            }
        }
    };
    Some((n, coding))
}

fn parse_segment(ctx: &mut LineCtx<'_>, toks: &[Token<'_>], n: usize) -> Option<Directive> {
    let head = toks[0];
    if toks.len() < 3 {
        ctx.error(head, "bad arity: `seg q<i> <kind> L=.. dbeta=..`");
        return None;
    }
    let qubit = qubit_ref(ctx, toks[1], toks[1].text, n, toks[1].column);
    let kind_tok = toks[2];
    let extra: &[&str] = match kind_tok.text {
        "linear" | "circular" => &[],
        "rotlinear" => &["axis"],
        "rotaxis" => &["xi"],
        "combined" => &["alpha"],
        _ => {
            ctx.error(
                kind_tok,
                "unknown segment kind (expected linear, rotlinear, rotaxis, circular or combined)",
            );
            return None;
        }
    };
    let mut allowed = vec!["L", "dbeta"];
    allowed.extend_from_slice(extra);
    let params = Params::collect(ctx, kind_tok, &toks[3..], &allowed)?;
    let length = params.number(ctx, "L");
    let delta_beta = params.number(ctx, "dbeta");
    let kind = match kind_tok.text {
        "linear" => Some(SegmentKind::Linear),
        "circular" => Some(SegmentKind::Circular),
        "rotlinear" => params
            .number(ctx, "axis")
            .map(|axis| SegmentKind::RotLinear { axis }),
        "rotaxis" => params
            .number(ctx, "xi")
            .map(|xi| SegmentKind::RotAxis { xi }),
        _ => params
            .number(ctx, "alpha")
            .map(|alpha| SegmentKind::Combined { alpha }),
    };
    let (qubit, kind, length, delta_beta) = (qubit?, kind?, length?, delta_beta?);
    if length < 0.0 {
        ctx.error(params.values["L"], "segment length must be non-negative");
        return None;
    }
    Some(Directive::Segment {
        qubit,
        kind,
        length,
        delta_beta,
    })
}

fn parse_gate(ctx: &mut LineCtx<'_>, toks: &[Token<'_>], n: usize) -> Option<Directive> {
    let head = toks[0];
    if toks.len() < 3 {
        ctx.error(head, "bad arity: `gate <qubits> <name> ...`");
        return None;
    }
    let (targets_tok, name) = (toks[1], toks[2]);
    let (arity, allowed): (usize, &[&str]) = match name.text {
        "cphase" => (2, &["theta"]),
        "u2" => (1, &["alpha", "theta", "beta"]),
        _ => {
            ctx.error(name, "unknown gate (expected cphase or u2)");
            return None;
        }
    };
    let targets = qubit_list(ctx, targets_tok, n);
    let params = Params::collect(ctx, name, &toks[3..], allowed)?;
    let targets = targets?;
    if targets.len() != arity {
        ctx.error(
            targets_tok,
            format!(
                "bad arity: `{}` acts on {arity} qubit(s), got {}",
                name.text,
                targets.len()
            ),
        );
        return None;
    }
    match name.text {
        "cphase" => {
            let theta = params.number(ctx, "theta")?;
            Some(Directive::ControlledPhase {
                control: targets[0],
                target: targets[1],
                theta,
            })
        }
        _ => {
            let alpha = params.number(ctx, "alpha");
            let theta = params.number(ctx, "theta");
            let beta = params.number(ctx, "beta");
            Some(Directive::U2 {
                qubit: targets[0],
                alpha: alpha?,
                theta: theta?,
                beta: beta?,
            })
        }
    }
}

fn parse_qft(ctx: &mut LineCtx<'_>, toks: &[Token<'_>], n: usize) -> Option<Directive> {
    if toks.len() != 2 {
        let at = toks.get(2).copied().unwrap_or(toks[0]);
        ctx.error(at, "bad arity: `qft q<i>..q<j>`");
        return None;
    }
    let list = qubit_list(ctx, toks[1], n)?;
    let contiguous = list.windows(2).all(|w| w[1] == w[0] + 1);
    if !contiguous {
        ctx.error(toks[1], "qft needs a contiguous ascending qubit range");
        return None;
    }
    Some(Directive::Qft {
        first: list[0],
        last: *list.last().expect("non-empty"),
    })
}

fn load_table(
    ctx: &mut LineCtx<'_>,
    tok: Token<'_>,
    base: &Path,
    width: usize,
) -> Option<OracleSpec> {
    let path = base.join(tok.text);
    let text = match std::fs::read_to_string(&path) {
        Ok(t) => t,
        Err(e) => {
            ctx.error(
                tok,
                format!("cannot read oracle table {}: {e}", path.display()),
            );
            return None;
        }
    };
    match OracleSpec::from_table_text(&text) {
        Ok(spec) if spec.m() + spec.n_out() == width => Some(spec),
        Ok(spec) => {
            ctx.error(
                tok,
                format!(
                    "oracle table needs {} qubits (m={} + n={}), {width} listed",
                    spec.m() + spec.n_out(),
                    spec.m(),
                    spec.n_out()
                ),
            );
            None
        }
        Err(e) => {
            ctx.error(tok, e.to_string());
            None
        }
    }
}

fn parse_oracle(
    ctx: &mut LineCtx<'_>,
    toks: &[Token<'_>],
    n: usize,
    base: Option<&Path>,
) -> Option<Directive> {
    if toks.len() < 3 {
        ctx.error(toks[0], "bad arity: `oracle <qubits> table=<path>`");
        return None;
    }
    let qubits = qubit_list(ctx, toks[1], n);
    let params = Params::collect(ctx, toks[0], &toks[2..], &["table"])?;
    let Some(&table) = params.values.get("table") else {
        ctx.error(toks[0], "missing parameter `table`");
        return None;
    };
    let qubits = qubits?;
    if qubits.len() < 2 {
        ctx.error(toks[1], "bad arity: an oracle needs at least 2 qubits");
        return None;
    }
    let spec = match base {
        Some(b) => Some(load_table(ctx, table, b, qubits.len())?),
        None => None,
    };
    Some(Directive::Oracle {
        qubits,
        table: table.text.to_string(),
        spec,
    })
}

fn parse_measure(ctx: &mut LineCtx<'_>, toks: &[Token<'_>]) -> Option<Directive> {
    match toks.get(1) {
        Some(t) if t.text == "all" => {}
        Some(&t) => {
            ctx.error(t, "only `measure all` is supported");
            return None;
        }
        None => {
            ctx.error(toks[0], "bad arity: `measure all shots=<n> seed=<n>`");
            return None;
        }
    }
    let params = Params::collect(ctx, toks[0], &toks[2..], &["shots", "seed"])?;
    let shots = params.uint(ctx, "shots");
    let seed = params.uint(ctx, "seed");
    let (shots, seed) = (shots?, seed?);
    if shots == 0 {
        ctx.error(params.values["shots"], "shots must be at least 1");
        return None;
    }
    Some(Directive::Measure { shots, seed })
}

/// Parses netlist text. Oracle tables are recorded but not read.
pub fn parse_netlist(text: &str) -> Result<NetlistDocument, Vec<ParseError>> {
    parse_netlist_with_base(text, None)
}

/// Parses a netlist file, reading oracle tables relative to its directory.
pub fn parse_netlist_file(path: &Path) -> Result<NetlistDocument, crate::NetlistError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| crate::NetlistError::Io(format!("{}: {e}", path.display())))?;
    let base = path.parent().unwrap_or(Path::new("."));
    parse_netlist_with_base(&text, Some(base)).map_err(crate::NetlistError::Parse)
}

/// Parses netlist text; with `base`, oracle tables are loaded and checked.
pub fn parse_netlist_with_base(
    text: &str,
    base: Option<&Path>,
) -> Result<NetlistDocument, Vec<ParseError>> {
    let mut errors = Vec::new();
    let mut header = false;
    let mut register: Option<(usize, Vec<Coding>)> = None;
    let mut statements = Vec::new();
    let mut measured = false;

    for (idx, raw) in text.lines().enumerate() {
        let toks = tokenize(raw);
        if toks.is_empty() {
            continue;
        }
        let mut ctx = LineCtx {
            line: idx + 1,
            errors: &mut errors,
        };
        let head = toks[0];

        if !header {
            header = true;
            if head.text != "qlnet" {
                ctx.error(head, format!("expected header `qlnet {VERSION}`"));
            } else {
                match toks.get(1).map(|t| (t, parse_uint(t.text))) {
                    Some((_, Some(v))) if v == VERSION as u64 && toks.len() == 2 => {}
                    Some((&t, Some(_))) => {
                        ctx.error(t, format!("unsupported version (expected {VERSION})"))
                    }
                    Some((&t, None)) => ctx.error(t, "version must be an integer"),
                    None => ctx.error(head, "bad arity: header needs a version"),
                }
                if let Some(&t) = toks.get(2) {
                    ctx.error(t, "unexpected token after header");
                }
                continue;
            }
        }

        if head.text == "qubits" {
            if register.is_some() {
                ctx.error(head, "qubits declared twice");
            } else if let Some(r) = parse_qubits(&mut ctx, &toks) {
                register = Some(r);
            } else {
                // keep later references from cascading into dangling errors
                register = Some((usize::MAX, Vec::new()));
            }
            continue;
        }

        let Some((n, _)) = &register else {
            if is_directive(head.text) {
                ctx.error(
                    head,
                    "`qubits` must be declared before any circuit directive",
                );
            } else {
                ctx.error(head, "unknown directive");
            }
            continue;
        };
        let n = *n;
        if measured && is_directive(head.text) {
            ctx.error(
                head,
                if head.text == "measure" {
                    "only one measure directive is allowed"
                } else {
                    "no directive may follow `measure`"
                },
            );
            continue;
        }
        let directive = match head.text {
            "seg" => parse_segment(&mut ctx, &toks, n),
            "gate" => parse_gate(&mut ctx, &toks, n),
            "qft" => parse_qft(&mut ctx, &toks, n),
            "oracle" => parse_oracle(&mut ctx, &toks, n, base),
            "measure" => {
                measured = true;
                parse_measure(&mut ctx, &toks)
            }
            _ => {
                ctx.error(head, "unknown directive");
                None
            }
        };
        if let Some(d) = directive {
            if let Directive::ControlledPhase {
                control, target, ..
            } = d
            {
                if control == target {
                    ctx.error(toks[1], "control and target must differ");
                    continue;
                }
            }
            statements.push(Statement {
                line: idx + 1,
                directive: d,
            });
        }
    }

    if !header {
        errors.push(ParseError {
            line: 1,
            column: 1,
            message: format!("empty netlist: expected header `qlnet {VERSION}`"),
            token: String::new(),
        });
    } else if register.is_none() && errors.is_empty() {
        let last = text.lines().count().max(1);
        errors.push(ParseError {
            line: last,
            column: 1,
            message: "missing `qubits` declaration".into(),
            token: String::new(),
        });
    }
    if !errors.is_empty() {
        return Err(errors);
    }
    let (qubits, coding) = register.expect("checked above");
    Ok(NetlistDocument {
        version: VERSION,
        qubits,
        coding,
        statements,
        base_dir: base.map(Path::to_path_buf),
    })
}

fn is_directive(s: &str) -> bool {
    matches!(s, "seg" | "gate" | "qft" | "oracle" | "measure")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn errs(text: &str) -> Vec<ParseError> {
        parse_netlist(text).unwrap_err()
    }

    #[test]
    fn numbers_are_strict() {
        for ok in ["1", "-2.5", "+.5", "3.", "1e-3", "6.02E23", "0.1"] {
            assert!(parse_number(ok).is_some(), "{ok}");
        }
        for bad in [
            "", "inf", "NaN", "1e", "1,5", "--1", "0x10", "1.2.3", ".", "e5", "1e400",
        ] {
            assert!(parse_number(bad).is_none(), "{bad}");
        }
    }

    #[test]
    fn minimal_document() {
        let d = parse_netlist("qlnet 1\nqubits 3\n").unwrap();
        assert_eq!(d.qubits, 3);
        assert!(d.statements.is_empty());
        assert_eq!(d.coding, vec![Coding::Polarization; 3]);
    }

    #[test]
    fn every_directive() {
        let text = "qlnet 1  # header\n\
                    qubits 3 coding=lp11,polarization,polarization\n\
                    seg q1 linear L=0.1 dbeta=31.4159\n\
                    seg q2 rotlinear L=1 dbeta=2 axis=0.3\n\
                    seg q2 rotaxis L=1 dbeta=2 xi=0.5\n\
                    seg q2 circular L=1 dbeta=2\n\
                    seg q2 combined L=1 dbeta=2 alpha=0.25\n\
                    gate q0,q1 cphase theta=3.14\n\
                    gate q2 u2 alpha=1 theta=2 beta=3\n\
                    qft q0..q2\n\
                    oracle q0,q1 table=t.tbl\n\
                    measure all shots=10 seed=3\n";
        let d = parse_netlist(text).unwrap();
        assert_eq!(d.statements.len(), 10);
        assert_eq!(d.statements[0].line, 3);
        assert_eq!(
            d.statements[0].directive,
            Directive::Segment {
                qubit: 1,
                kind: SegmentKind::Linear,
                length: 0.1,
                delta_beta: 31.4159
            }
        );
        assert_eq!(d.measure(), Some((10, 3)));
        assert_eq!(d.coding[0], Coding::Lp11);
    }

    #[test]
    fn misspelled_gate() {
        let e = errs("qlnet 1\nqubits 2\ngate q0,q1 cphse theta=1\n");
        assert_eq!(e.len(), 1);
        assert_eq!(
            (e[0].line, e[0].column, e[0].token.as_str()),
            (3, 12, "cphse")
        );
    }

    #[test]
    fn collects_all_errors() {
        let text = "qlnet 1\nqubits 2\nseg q5 linear L=1 dbeta=1\nfoo bar\ngate q0 u2 alpha=x theta=1 beta=1\nqft q1..q0\n";
        let e = errs(text);
        let lines: Vec<usize> = e.iter().map(|e| e.line).collect();
        assert_eq!(lines, vec![3, 4, 5, 6]);
        assert_eq!(e[0].token, "q5");
        assert_eq!(e[2].token, "x");
        assert_eq!(e[2].column, 18);
    }

    #[test]
    fn structural_errors() {
        assert_eq!(errs("").len(), 1);
        assert_eq!(errs("qlnet 2\nqubits 1\n")[0].line, 1);
        assert_eq!(
            errs("qlnet 1\nseg q0 linear L=1 dbeta=1\nqubits 1\n")[0].line,
            2
        );
        assert_eq!(errs("qlnet 1\nqubits 1\nqubits 2\n")[0].line, 3);
        let e = errs("qlnet 1\nqubits 2\nmeasure all shots=1 seed=1\nmeasure all shots=1 seed=1\n");
        assert_eq!(e[0].line, 4);
        assert_eq!(
            errs("qlnet 1\nqubits 2\ngate q1,q1 cphase theta=1\n")[0].line,
            3
        );
        assert!(errs("qlnet 1\nqubits 2\ngate q1 cphase theta=1\n")[0]
            .message
            .contains("arity"));
        assert_eq!(
            errs("qlnet 1\nqubits 2\nseg q0 linear L=1\n")[0].message,
            "missing parameter `dbeta`"
        );
        assert!(
            errs("qlnet 1\nqubits 2\nseg q0 linear L=1 dbeta=1 axis=2\n")[0]
                .message
                .contains("unknown parameter")
        );
        assert!(errs("qlnet 1\n")
            .iter()
            .any(|e| e.message.contains("qubits")));
    }
}
