use nctorus::af_tower::AfError;
use nctorus::exact_arith::ArithError;
use nctorus::fredholm::FredholmError;
use nctorus::linalg::LinalgError;
use nctorus::torus_rep::RepError;
use nctorus::zlattice::LatticeError;
use serde_json::json;

pub const EXIT_INPUT: u8 = 2;
pub const EXIT_UNSTABLE: u8 = 3;
pub const EXIT_CHECK_FAILED: u8 = 4;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub kind: &'static str,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError { code: EXIT_INPUT, kind: "input", message: message.into() }
    }

    fn unstable(message: String) -> Self {
        CliError { code: EXIT_UNSTABLE, kind: "numerical-instability", message }
    }

    pub fn render(&self) -> String {
        let v = json!({"error": {"kind": self.kind, "message": self.message}, "exit_code": self.code});
        format!("{}\n", serde_json::to_string_pretty(&v).expect("plain JSON"))
    }
}

impl From<ArithError> for CliError {
    fn from(e: ArithError) -> Self {
        let kind = match e {
            ArithError::PrecisionExhausted { .. } => "precision",
            _ => "input",
        };
        CliError { code: EXIT_INPUT, kind, message: e.to_string() }
    }
}

impl From<LatticeError> for CliError {
    fn from(e: LatticeError) -> Self {
        CliError::input(e.to_string())
    }
}

impl From<AfError> for CliError {
    fn from(e: AfError) -> Self {
        CliError::input(e.to_string())
    }
}

impl From<RepError> for CliError {
    fn from(e: RepError) -> Self {
        match e {
            RepError::RepresentationTooSmall { .. } => CliError::unstable(e.to_string()),
            _ => CliError::input(e.to_string()),
        }
    }
}

impl From<LinalgError> for CliError {
    fn from(e: LinalgError) -> Self {
        CliError::unstable(e.to_string())
    }
}

impl From<FredholmError> for CliError {
    fn from(e: FredholmError) -> Self {
        match e {
            FredholmError::Rep(r) => r.into(),
            FredholmError::Linalg(l) => l.into(),
            FredholmError::UnstableIndex { .. }
            | FredholmError::NoSpectralGap(_)
            | FredholmError::NonIntegerPairing { .. } => CliError::unstable(e.to_string()),
            _ => CliError::input(e.to_string()),
        }
    }
}
