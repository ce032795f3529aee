use qlight::circuit::{build_qft_circuit, run_circuit, CircuitModel, Gate};
use qlight::jones::FiberSegment;
use qlight::QubitState;

use crate::document::{Directive, NetlistDocument};
use crate::result::{Histogram, RunResult};
use crate::NetlistError;

/// Lowers a parsed document to a circuit.
pub fn build_circuit(doc: &NetlistDocument) -> Result<CircuitModel, NetlistError> {
    let mut c = CircuitModel::with_coding(doc.coding.clone(), "netlist")?;
    for st in &doc.statements {
        let at = |e: qlight::Error| NetlistError::Validation(format!("line {}: {e}", st.line));
        match &st.directive {
            Directive::Segment {
                qubit,
                kind,
                length,
                delta_beta,
            } => {
                let seg =
                    FiberSegment::new(*length, *delta_beta, kind.birefringence()).map_err(at)?;
                c.push(Gate::Jones(seg), &[*qubit]).map_err(at)?;
            }
            Directive::ControlledPhase {
                control,
                target,
                theta,
            } => c
                .push(Gate::ControlledPhase(*theta), &[*control, *target])
                .map_err(at)?,
            Directive::U2 {
                qubit,
                alpha,
                theta,
                beta,
            } => c
                .push(
                    Gate::U2 {
                        alpha: *alpha,
                        theta: *theta,
                        beta: *beta,
                    },
                    &[*qubit],
                )
                .map_err(at)?,
            Directive::Qft { first, last } => {
                let q = build_qft_circuit(last - first + 1).map_err(at)?;
                c.append(&q, *first).map_err(at)?;
            }
            Directive::Oracle {
                qubits,
                table,
                spec,
            } => {
                let spec = spec.as_ref().ok_or_else(|| {
                    NetlistError::Validation(format!(
                        "line {}: oracle table {table} was not loaded; parse the netlist from a file",
                        st.line
                    ))
                })?;
                c.push(spec.gate(), qubits).map_err(at)?;
            }
            Directive::Measure { .. } => {}
        }
    }
    Ok(c)
}

/// Runs the netlist from `|0…0⟩` or the given basis bitstring.
pub fn run_netlist(
    doc: &NetlistDocument,
    initial: Option<&str>,
) -> Result<RunResult, NetlistError> {
    let circuit = build_circuit(doc)?;
    let start = match initial {
        None => QubitState::basis(doc.qubits, 0)?,
        Some(bits) => {
            if bits.len() != doc.qubits {
                return Err(NetlistError::Validation(format!(
                    "input {bits:?} has {} bits, register has {}",
                    bits.len(),
                    doc.qubits
                )));
            }
            QubitState::from_bitstring(bits)?
        }
    };
    let out = run_circuit(&circuit, &start)?;
    let histogram = match doc.measure() {
        Some((shots, seed)) => Some(Histogram {
            shots,
            seed,
            counts: out.measure(shots, seed)?,
        }),
        None => None,
    };
    Ok(RunResult {
        n: doc.qubits,
        coding: out.coding().to_vec(),
        probabilities: out.probabilities(),
        amplitudes: out.into_amplitudes(),
        histogram,
    })
}
