//! Classical LDPC code transformations realized as quantum processes.
//!
//! Bits and checks of a parity-check matrix become Z- and X-spiders of a ZX
//! diagram; from that picture we extract explicit circuits (ancilla
//! preparations, CNOT and Hadamard gates, postselected measurements) that
//! realize the Kramers–Wannier duality and the tensor/check product merges.
//! Every construction ships with an exact oracle: dense linear maps, Pauli
//! pushing and exact diagonalization.

pub mod code;
pub mod corpus;
pub mod dense;
pub mod effective;
pub mod error;
pub mod f2;
pub mod pauli;
pub mod process;
pub mod sim;
pub mod spectrum;
pub mod zx;

pub use code::{check_product, pq_product, tensor_product, ClassicalCode};
pub use dense::CMatrix;
pub use effective::{effective_block, fit_power_law, EffectiveBlock, PowerLaw, Probe};
pub use error::{Error, Result};
pub use f2::{BinaryMatrix, Echelon, RowOp, RowOpTrace};
pub use pauli::{
    build_coupled_layer, build_hamiltonian, push_pauli, verify_duality, verify_product,
    HamiltonianSpec, PauliOperator, Pushed, Report,
};
pub use process::{
    extract_defect, extract_minimal_coupling, extract_product, QuantumProcess, Realization,
};
pub use sim::{apply_process, prepare_state, process_matrix, AncillaOverrides, DenseState};
pub use spectrum::exact_spectrum;
pub use zx::{kw_diagram, kw_matrix_oracle, product_diagram, ProductKind, ZxDiagram};
