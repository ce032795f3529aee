use std::path::PathBuf;

use qlight::circuit::OracleSpec;
use qlight::jones::{Birefringence, FiberSegment};
use qlight::Coding;

/// The only netlist version this crate reads and writes.
pub const VERSION: u32 = 1;

/// Birefringence keyword plus its kind-specific parameter, as written.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SegmentKind {
    Linear,
    RotLinear { axis: f64 },
    RotAxis { xi: f64 },
    Circular,
    Combined { alpha: f64 },
}

impl SegmentKind {
    pub fn keyword(&self) -> &'static str {
        match self {
            SegmentKind::Linear => "linear",
            SegmentKind::RotLinear { .. } => "rotlinear",
            SegmentKind::RotAxis { .. } => "rotaxis",
            SegmentKind::Circular => "circular",
            SegmentKind::Combined { .. } => "combined",
        }
    }

    pub fn birefringence(&self) -> Birefringence {
        match *self {
            SegmentKind::Linear => Birefringence::Linear,
            SegmentKind::RotLinear { axis } => Birefringence::LinearRotated { axis },
            SegmentKind::RotAxis { xi } => Birefringence::RotatingAxis { twist_rate: xi },
            SegmentKind::Circular => Birefringence::Circular,
            SegmentKind::Combined { alpha } => Birefringence::Combined { ellipticity: alpha },
        }
    }

    pub fn from_birefringence(b: Birefringence) -> Self {
        match b {
            Birefringence::Linear => SegmentKind::Linear,
            Birefringence::LinearRotated { axis } => SegmentKind::RotLinear { axis },
            Birefringence::RotatingAxis { twist_rate } => SegmentKind::RotAxis { xi: twist_rate },
            Birefringence::Circular => SegmentKind::Circular,
            Birefringence::Combined { ellipticity } => SegmentKind::Combined { alpha: ellipticity },
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Directive {
    Segment {
        qubit: usize,
        kind: SegmentKind,
        length: f64,
        delta_beta: f64,
    },
    ControlledPhase {
        control: usize,
        target: usize,
        theta: f64,
    },
    U2 {
        qubit: usize,
        alpha: f64,
        theta: f64,
        beta: f64,
    },
    /// QFT over `first..=last`, `first` most significant.
    Qft {
        first: usize,
        last: usize,
    },
    Oracle {
        qubits: Vec<usize>,
        table: String,
        /// Filled in when the table file has been read.
        spec: Option<OracleSpec>,
    },
    Measure {
        shots: u64,
        seed: u64,
    },
}

impl Directive {
    pub fn segment(qubit: usize, seg: &FiberSegment) -> Self {
        Directive::Segment {
            qubit,
            kind: SegmentKind::from_birefringence(seg.kind()),
            length: seg.length(),
            delta_beta: seg.delta_beta(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Statement {
    /// 1-based source line; 0 for statements built in code.
    pub line: usize,
    pub directive: Directive,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NetlistDocument {
    pub version: u32,
    pub qubits: usize,
    pub coding: Vec<Coding>,
    pub statements: Vec<Statement>,
    /// Directory that relative oracle table paths resolve against.
    pub base_dir: Option<PathBuf>,
}

impl NetlistDocument {
    pub fn new(qubits: usize, coding: Vec<Coding>) -> Self {
        NetlistDocument {
            version: VERSION,
            qubits,
            coding,
            statements: Vec::new(),
            base_dir: None,
        }
    }

    pub fn push(&mut self, directive: Directive) {
        self.statements.push(Statement { line: 0, directive });
    }

    pub fn directives(&self) -> impl Iterator<Item = &Directive> {
        self.statements.iter().map(|s| &s.directive)
    }

    pub fn measure(&self) -> Option<(u64, u64)> {
        self.directives().find_map(|d| match d {
            Directive::Measure { shots, seed } => Some((*shots, *seed)),
            _ => None,
        })
    }
}
