use std::fs;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde_json::{json, Value};

use qlight::algebra::is_entangling;
use qlight::bpm::{lp_modes_parabolic, project_onto_modes, propagate, write_snapshot, write_table};
use qlight::circuit::{
    build_oracle, build_qft_circuit, qft_gate_count, qft_matrix, Gate, OracleSpec,
};
use qlight::devices::coupler::relative_field_error;
use qlight::devices::{
    coupler_constants, coupler_transfer, integrate_coupler_ode, CouplerScenario, Eigenmode,
};
use qlight::jones::synthesize_u2;
use qlight::{UnitaryMatrix, C64, CIRCUIT_TOL};
use qlight_netlist::{emit_result, parse_netlist_file, run_netlist, synthesis_lines};

use crate::config::{beside, read_toml, BpmConfig, CouplerConfig, ProfileConfig};
use crate::error::{CliError, CliResult};
use crate::matrix::{expect_dim, parse_matrix};

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

fn complex(c: C64) -> Value {
    json!({ "re": c.re, "im": c.im })
}

fn print_json(v: &Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(v).expect("json values serialize")
    );
}

fn unitary_from_file(path: &Path, dim: usize) -> CliResult<UnitaryMatrix> {
    let m = parse_matrix(&read(path)?)?;
    expect_dim(&m, dim)?;
    Ok(UnitaryMatrix::new(m)?)
}

pub fn run(file: &Path, input: Option<&str>, out: Option<&Path>) -> CliResult<()> {
    let doc = parse_netlist_file(file)?;
    let text = emit_result(&run_netlist(&doc, input)?);
    match out {
        Some(p) => fs::write(p, text).map_err(|e| CliError::io(p, e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn synth(matrix: &Path, qubit: usize, standalone: bool) -> CliResult<()> {
    let u = unitary_from_file(matrix, 2)?;
    let s = synthesize_u2(&u)?;
    let err = s.reconstruct().max_abs_diff(&u);
    if err > CIRCUIT_TOL {
        return Err(CliError::Validation(format!(
            "synthesized plan misses the target by {err:.3e}"
        )));
    }
    if standalone {
        println!("qlnet {}", qlight_netlist::VERSION);
        println!("qubits {}", qubit + 1);
    }
    for line in synthesis_lines(&s, qubit) {
        println!("{line}");
    }
    Ok(())
}

pub fn qft(n: usize, check: bool) -> CliResult<()> {
    let c = build_qft_circuit(n)?;
    print!("{c}");
    if !check {
        return Ok(());
    }
    let diff = c.unitary()?.max_abs_diff(&qft_matrix(n)?);
    let gates = c
        .ops()
        .iter()
        .filter(|op| !matches!(op.gate, Gate::Swap))
        .count();
    println!("max |U - F| = {diff:.3e}");
    println!(
        "gates before swaps = {gates} (expected {})",
        qft_gate_count(n)
    );
    if diff > CIRCUIT_TOL || gates != qft_gate_count(n) {
        return Err(CliError::Validation("QFT check failed".into()));
    }
    println!("check ok");
    Ok(())
}

pub fn oracle(table: &Path) -> CliResult<()> {
    let spec = OracleSpec::from_table_text(&read(table)?)?;
    let u = build_oracle(&spec);
    let perm = spec.permutation();
    let involution = perm.iter().enumerate().all(|(k, &p)| perm[p] == k);
    print_json(&json!({
        "m": spec.m(),
        "n_out": spec.n_out(),
        "table": spec.table(),
        "permutation": perm,
        "self_inverse": involution,
        "unitarity_deviation": u.unitarity_deviation(),
    }));
    Ok(())
}

pub fn check_entangling(gate: &Path) -> CliResult<()> {
    let u = unitary_from_file(gate, 4)?;
    let r = is_entangling(&u)?;
    let a = &r.algebraic;
    print_json(&json!({
        "entangling": r.entangling,
        "inputs_checked": r.inputs_checked,
        "max_schmidt_minor": r.max_schmidt_minor,
        "witness": r.witness,
        "algebraic": {
            "entangling": a.entangling,
            "closure": a.closure,
            "principal_closure": a.principal_closure,
            "branch_cut_flag": a.branch_cut_flag,
            "eigenphases": a.eigenphases,
        },
        "consistent": r.consistent(),
    }));
    Ok(())
}

fn eigenmode_constants(s: &CouplerScenario, e1: [C64; 2], e2: [C64; 2]) -> Value {
    let modes = [
        ("symmetric", Eigenmode::Symmetric, 1.0),
        ("antisymmetric", Eigenmode::Antisymmetric, -1.0),
    ];
    let mut out = serde_json::Map::new();
    for (name, mode, sign) in modes {
        let input = s.eigenmode_input(mode);
        let output = [e1[0] + e2[0] * sign, e1[1] + e2[1] * sign];
        let a = coupler_constants(input[0], input[1]);
        let b = coupler_constants(output[0], output[1]);
        out.insert(
            name.into(),
            json!({
                "alpha_in": a.alpha, "alpha_out": b.alpha,
                "gamma_in": a.gamma, "gamma_out": b.gamma,
                "drift": (a.alpha - b.alpha).abs().max((a.gamma - b.gamma).abs()),
            }),
        );
    }
    Value::Object(out)
}

pub fn coupler(params: &Path) -> CliResult<()> {
    let cfg: CouplerConfig = read_toml(params)?;
    let s = cfg.scenario();
    let out = coupler_transfer(&s)?;
    let field = |e: [C64; 2]| e.iter().copied().map(complex).collect::<Vec<_>>();
    let p_in = s.input_power();
    let mut doc = json!({
        "e1": field(out.e1),
        "e2": field(out.e2),
        "symmetric": { "beta_bar": out.symmetric.beta_bar, "k_bar": out.symmetric.k_bar },
        "antisymmetric": { "beta_bar": out.antisymmetric.beta_bar, "k_bar": out.antisymmetric.k_bar },
        "power_in": p_in,
        "power_out": out.power(),
        "power_error": (out.power() - p_in).abs(),
        "constants": eigenmode_constants(&s, out.e1, out.e2),
    });
    if cfg.ode_steps > 0 {
        let ode = integrate_coupler_ode(&s, cfg.ode_steps)?;
        doc["ode"] = json!({
            "steps": cfg.ode_steps,
            "relative_error": relative_field_error((&out.e1, &out.e2), (&ode.e1, &ode.e2)),
            "max_constant_drift": ode.max_constant_drift,
        });
    }
    print_json(&doc);
    Ok(())
}

fn create(path: &Path) -> CliResult<BufWriter<fs::File>> {
    fs::File::create(path)
        .map(BufWriter::new)
        .map_err(|e| CliError::io(path, e))
}

pub fn bpm(config: &Path) -> CliResult<()> {
    let cfg: BpmConfig = read_toml(config)?;
    let profile = cfg.waveguide()?;
    let start = qlight::bpm::VectorField2D::x_polarized(&cfg.input_field(&profile)?, 0.0);
    let p0 = start.norm_sqr();
    let run = propagate(&profile, &start, cfg.dz, cfg.steps, cfg.mode())?;
    for w in &run.warnings {
        eprintln!("warning: {w}");
    }
    let mut doc = json!({
        "steps": cfg.steps,
        "dz": cfg.dz,
        "z": run.field.z,
        "power_in": p0,
        "power_out": run.field.norm_sqr(),
        "max_norm_drift": run.max_norm_drift,
        "warnings": run.warnings,
    });
    if matches!(cfg.profile, ProfileConfig::Parabolic { .. }) {
        let modes = lp_modes_parabolic(&profile);
        let p = project_onto_modes(&run.field.component_x(), &modes.modes())?;
        doc["projection"] = json!({
            "lp01": complex(p.amplitudes[0]),
            "lp11a": complex(p.amplitudes[1]),
            "lp11b": complex(p.amplitudes[2]),
            "residual_power": p.residual_power,
            "beat_length": modes.beat_length(profile.lambda0),
        });
    }
    if let Some(p) = &cfg.output.snapshot {
        let path = beside(config, p);
        let mut w = create(&path)?;
        write_snapshot(&mut w, &run.field, cfg.dz)
            .and_then(|_| w.flush())
            .map_err(|e| CliError::io(&path, e))?;
        doc["snapshot"] = json!(path.display().to_string());
    }
    if let Some(p) = &cfg.output.table {
        let path = beside(config, p);
        let mut w = create(&path)?;
        write_table(&mut w, &run.field)
            .and_then(|_| w.flush())
            .map_err(|e| CliError::io(&path, e))?;
        doc["table"] = json!(path.display().to_string());
    }
    print_json(&doc);
    Ok(())
}
