//! Canonical netlist text. Numbers are written in Rust's shortest
//! round-trip form, so parsing the output reproduces every value exactly.

use std::fmt::Write;

use qlight::jones::SynthesisResult;

use crate::document::{Directive, NetlistDocument, SegmentKind, VERSION};

fn qubits(list: &[usize]) -> String {
    let contiguous = list.len() > 1 && list.windows(2).all(|w| w[1] == w[0] + 1);
    if contiguous {
        format!("q{}..q{}", list[0], list[list.len() - 1])
    } else {
        list.iter()
            .map(|q| format!("q{q}"))
            .collect::<Vec<_>>()
            .join(",")
    }
}

pub fn directive_line(d: &Directive) -> String {
    match d {
        Directive::Segment {
            qubit,
            kind,
            length,
            delta_beta,
        } => {
            let mut s = format!(
                "seg q{qubit} {} L={length:?} dbeta={delta_beta:?}",
                kind.keyword()
            );
            match kind {
                SegmentKind::RotLinear { axis } => write!(s, " axis={axis:?}"),
                SegmentKind::RotAxis { xi } => write!(s, " xi={xi:?}"),
                SegmentKind::Combined { alpha } => write!(s, " alpha={alpha:?}"),
                SegmentKind::Linear | SegmentKind::Circular => Ok(()),
            }
            .expect("write to String");
            s
        }
        Directive::ControlledPhase {
            control,
            target,
            theta,
        } => format!("gate q{control},q{target} cphase theta={theta:?}"),
        Directive::U2 {
            qubit,
            alpha,
            theta,
            beta,
        } => format!("gate q{qubit} u2 alpha={alpha:?} theta={theta:?} beta={beta:?}"),
        Directive::Qft { first, last } => format!("qft q{first}..q{last}"),
        Directive::Oracle {
            qubits: q, table, ..
        } => format!("oracle {} table={table}", qubits(q)),
        Directive::Measure { shots, seed } => format!("measure all shots={shots} seed={seed}"),
    }
}

pub fn emit_netlist(doc: &NetlistDocument) -> String {
    let coding: Vec<&str> = doc.coding.iter().map(|c| c.name()).collect();
    let mut out = format!(
        "qlnet {VERSION}\nqubits {} coding={}\n",
        doc.qubits,
        coding.join(",")
    );
    for d in doc.directives() {
        out.push_str(&directive_line(d));
        out.push('\n');
    }
    out
}

/// `seg` lines realizing a synthesized U(2) on `qubit`, in the order light
/// traverses them. The global phase is not physical and is reported as a
/// comment.
pub fn synthesis_lines(s: &SynthesisResult, qubit: usize) -> Vec<String> {
    let mut lines = vec![format!(
        "# global phase {:?} rad; alpha={:?} theta={:?} beta={:?}",
        s.global_phase, s.alpha, s.theta, s.beta
    )];
    for seg in s.propagation_order() {
        lines.push(directive_line(&Directive::segment(qubit, &seg)));
    }
    lines
}
