//! Versioned JSON interchange for quantum processes.

use serde::{Deserialize, Serialize};
use tanner_zx::process::{
    Ancilla, AncillaState, Basis, Gate, Measurement, Outcome, WireSink, WireSource,
};
use tanner_zx::{QuantumProcess, Realization};

use crate::error::CliError;

pub const VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProcessDocument {
    pub version: u32,
    pub n_in: usize,
    pub n_out: usize,
    pub wires: Vec<WireDto>,
    pub outputs: Vec<usize>,
    pub ancillas: Vec<AncillaDto>,
    pub gates: Vec<GateDto>,
    pub measurements: Vec<MeasurementDto>,
    pub realization: RealizationDto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WireDto {
    pub id: usize,
    pub source: SourceDto,
    pub sink: SinkDto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SourceDto {
    Input,
    Ancilla,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SinkDto {
    Output,
    Measured,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BasisDto {
    X,
    Z,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StateDto {
    Plus,
    Minus,
    Zero,
    One,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutcomeDto {
    Plus,
    Minus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AncillaDto {
    pub w: usize,
    pub basis: BasisDto,
    pub state: StateDto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeasurementDto {
    pub w: usize,
    pub basis: BasisDto,
    pub outcome: OutcomeDto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "g", deny_unknown_fields)]
pub enum GateDto {
    #[serde(rename = "CNOT")]
    Cnot { c: usize, t: usize },
    H { w: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RealizationDto {
    Defect,
    Minimal,
    Tensor,
    Check,
}

fn basis_dto(b: Basis) -> BasisDto {
    match b {
        Basis::X => BasisDto::X,
        Basis::Z => BasisDto::Z,
    }
}

impl From<&QuantumProcess> for ProcessDocument {
    fn from(p: &QuantumProcess) -> Self {
        let wires = p
            .wires()
            .into_iter()
            .map(|w| WireDto {
                id: w.id,
                source: match w.source {
                    WireSource::Input => SourceDto::Input,
                    WireSource::Ancilla => SourceDto::Ancilla,
                },
                sink: match w.sink {
                    WireSink::Output => SinkDto::Output,
                    WireSink::Measured => SinkDto::Measured,
                },
            })
            .collect();
        let ancillas = p
            .ancillas()
            .iter()
            .map(|a| AncillaDto {
                w: a.wire,
                basis: basis_dto(a.state.basis()),
                state: match a.state {
                    AncillaState::Plus => StateDto::Plus,
                    AncillaState::Minus => StateDto::Minus,
                    AncillaState::Zero => StateDto::Zero,
                    AncillaState::One => StateDto::One,
                },
            })
            .collect();
        let gates = p
            .gates()
            .iter()
            .map(|&g| match g {
                Gate::H(w) => GateDto::H { w },
                Gate::Cnot { control, target } => GateDto::Cnot { c: control, t: target },
            })
            .collect();
        let measurements = p
            .measurements()
            .iter()
            .map(|m| MeasurementDto {
                w: m.wire,
                basis: basis_dto(m.basis),
                outcome: match m.outcome {
                    Outcome::Plus => OutcomeDto::Plus,
                    Outcome::Minus => OutcomeDto::Minus,
                },
            })
            .collect();
        ProcessDocument {
            version: VERSION,
            n_in: p.n_in(),
            n_out: p.n_out(),
            wires,
            outputs: p.outputs().to_vec(),
            ancillas,
            gates,
            measurements,
            realization: match p.realization() {
                Realization::Defect => RealizationDto::Defect,
                Realization::MinimalCoupling => RealizationDto::Minimal,
                Realization::TensorMerge => RealizationDto::Tensor,
                Realization::CheckMerge => RealizationDto::Check,
            },
        }
    }
}

impl TryFrom<&ProcessDocument> for QuantumProcess {
    type Error = CliError;

    fn try_from(doc: &ProcessDocument) -> Result<Self, CliError> {
        let bad = |msg: String| CliError::Document(msg);
        if doc.version != VERSION {
            return Err(bad(format!("unsupported version {}", doc.version)));
        }
        let ancillas = doc
            .ancillas
            .iter()
            .map(|a| {
                let state = match a.state {
                    StateDto::Plus => AncillaState::Plus,
                    StateDto::Minus => AncillaState::Minus,
                    StateDto::Zero => AncillaState::Zero,
                    StateDto::One => AncillaState::One,
                };
                if basis_dto(state.basis()) != a.basis {
                    return Err(bad(format!("ancilla {} declares basis {:?} for state {:?}", a.w, a.basis, a.state)));
                }
                Ok(Ancilla { wire: a.w, state })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let gates = doc
            .gates
            .iter()
            .map(|&g| match g {
                GateDto::H { w } => Gate::H(w),
                GateDto::Cnot { c, t } => Gate::Cnot { control: c, target: t },
            })
            .collect();
        let measurements = doc
            .measurements
            .iter()
            .map(|m| Measurement {
                wire: m.w,
                basis: match m.basis {
                    BasisDto::X => Basis::X,
                    BasisDto::Z => Basis::Z,
                },
                outcome: match m.outcome {
                    OutcomeDto::Plus => Outcome::Plus,
                    OutcomeDto::Minus => Outcome::Minus,
                },
            })
            .collect();
        let realization = match doc.realization {
            RealizationDto::Defect => Realization::Defect,
            RealizationDto::Minimal => Realization::MinimalCoupling,
            RealizationDto::Tensor => Realization::TensorMerge,
            RealizationDto::Check => Realization::CheckMerge,
        };
        let p = QuantumProcess::new(doc.n_in, ancillas, gates, measurements, doc.outputs.clone(), realization)
            .map_err(|e| bad(e.to_string()))?;
        if p.n_out() != doc.n_out {
            return Err(bad(format!("n_out is {} but {} outputs are listed", doc.n_out, p.n_out())));
        }
        // the wire table is derived data; it must agree with the rest
        if ProcessDocument::from(&p).wires != doc.wires {
            return Err(bad("wire table disagrees with ancillas, measurements and outputs".into()));
        }
        Ok(p)
    }
}

pub fn to_json(p: &QuantumProcess) -> String {
    let mut text = serde_json::to_string_pretty(&ProcessDocument::from(p)).expect("documents always serialize");
    text.push('\n');
    text
}

pub fn from_json(text: &str) -> Result<QuantumProcess, CliError> {
    let doc: ProcessDocument = serde_json::from_str(text).map_err(|e| CliError::Parse {
        line: e.line(),
        message: e.to_string(),
    })?;
    QuantumProcess::try_from(&doc)
}
