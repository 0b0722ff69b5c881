//! On-disk representation of step functions.
//!
//! A step function is stored as a JSON object with two arrays:
//!
//! ```json
//! { "breakpoints_rad": [-3.141592653589793, 0.0], "values": [0.0, 1.0] }
//! ```

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::circle_step::StepFunction;
use crate::error::Error;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepFunctionFile {
    pub breakpoints_rad: Vec<f64>,
    pub values: Vec<f64>,
}

#[derive(Debug)]
pub enum FormatError {
    Parse(serde_json::Error),
    Invalid(Error),
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormatError::Parse(e) => write!(f, "malformed step function file: {e}"),
            FormatError::Invalid(e) => write!(f, "invalid step function: {e}"),
        }
    }
}

impl std::error::Error for FormatError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            FormatError::Parse(e) => Some(e),
            FormatError::Invalid(e) => Some(e),
        }
    }
}

impl From<&StepFunction> for StepFunctionFile {
    fn from(f: &StepFunction) -> Self {
        StepFunctionFile {
            breakpoints_rad: f.breakpoints().to_vec(),
            values: f.values().to_vec(),
        }
    }
}

impl TryFrom<StepFunctionFile> for StepFunction {
    type Error = Error;

    fn try_from(file: StepFunctionFile) -> Result<Self, Error> {
        StepFunction::new(file.breakpoints_rad, file.values)
    }
}

pub fn from_json(text: &str) -> Result<StepFunction, FormatError> {
    let file: StepFunctionFile = serde_json::from_str(text).map_err(FormatError::Parse)?;
    StepFunction::try_from(file).map_err(FormatError::Invalid)
}

/// Pretty-printed JSON. Floats are written in shortest round-trip form, so
/// parsing the output reproduces `f` bit for bit.
pub fn to_json(f: &StepFunction) -> String {
    let mut s = serde_json::to_string_pretty(&StepFunctionFile::from(f))
        .expect("finite floats always serialize");
    s.push('\n');
    s
}
