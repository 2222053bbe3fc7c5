//! Input ingestion: each input file is a JSON document holding either a
//! polyhedral indicator, a polynomial mapping, or an explicit indicator
//! list. Mappings are recentered to their base point on load.

use std::path::Path;

use resmass_core::{PolyhedralIndicator, PolynomialMapping};
use serde::Serialize;

use crate::CliError;

/// Parsed and canonicalized input document, echoed back in every report.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InputDoc {
    Indicator { indicator: PolyhedralIndicator },
    Mapping { mapping: PolynomialMapping },
    Indicators { indicators: Vec<PolyhedralIndicator> },
}

impl InputDoc {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
        let value: serde_json::Value = serde_json::from_str(&text)
            .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
        let object = value
            .as_object()
            .ok_or_else(|| CliError::input(format!("{}: top level must be an object", path.display())))?;

        if object.contains_key("generators") {
            let indicator: PolyhedralIndicator = serde_json::from_value(value.clone())
                .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
            return Ok(InputDoc::Indicator { indicator });
        }
        if object.contains_key("components") {
            let mapping: PolynomialMapping = serde_json::from_value(value.clone())
                .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
            let mapping = mapping.recenter().map_err(CliError::from)?;
            return Ok(InputDoc::Mapping { mapping });
        }
        if object.contains_key("indicators") {
            #[derive(serde::Deserialize)]
            struct List {
                indicators: Vec<PolyhedralIndicator>,
            }
            let list: List = serde_json::from_value(value.clone())
                .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
            if list.indicators.is_empty() {
                return Err(CliError::input(format!(
                    "{}: indicator list is empty",
                    path.display()
                )));
            }
            return Ok(InputDoc::Indicators {
                indicators: list.indicators,
            });
        }
        Err(CliError::input(format!(
            "{}: expected one of the keys \"generators\", \"components\" or \"indicators\"",
            path.display()
        )))
    }

    /// The indicator this input analyzes as a single object: the indicator
    /// itself, or the union-support indicator of a mapping.
    pub fn as_single_indicator(&self) -> Result<PolyhedralIndicator, CliError> {
        match self {
            InputDoc::Indicator { indicator } => Ok(indicator.clone()),
            InputDoc::Mapping { mapping } => Ok(mapping.union_indicator()?),
            InputDoc::Indicators { .. } => Err(CliError::input(
                "this subcommand needs a single indicator or a mapping, not a list".into(),
            )),
        }
    }

    /// The indicator tuple for mixed masses and product bounds: the
    /// per-component indicators of a mapping, or the explicit list.
    pub fn as_indicator_tuple(&self) -> Result<Vec<PolyhedralIndicator>, CliError> {
        match self {
            InputDoc::Mapping { mapping } => Ok(mapping.component_indicators()?),
            InputDoc::Indicators { indicators } => Ok(indicators.clone()),
            InputDoc::Indicator { .. } => Err(CliError::input(
                "this subcommand needs a mapping or an indicator list".into(),
            )),
        }
    }

    pub fn as_mapping(&self) -> Result<&PolynomialMapping, CliError> {
        match self {
            InputDoc::Mapping { mapping } => Ok(mapping),
            _ => Err(CliError::input("this subcommand needs a mapping input".into())),
        }
    }

    /// The support set of a single function: an indicator's generators or
    /// the support of a one-component mapping.
    pub fn as_function_support(&self) -> Result<Vec<resmass_core::RationalPoint>, CliError> {
        match self {
            InputDoc::Indicator { indicator } => Ok(indicator.generators().to_vec()),
            InputDoc::Mapping { mapping } => {
                if mapping.components().len() != 1 {
                    return Err(CliError::input(format!(
                        "milnor bounds apply to a single function; this mapping has {} components",
                        mapping.components().len()
                    )));
                }
                Ok(mapping.component_support(0)?)
            }
            InputDoc::Indicators { .. } => Err(CliError::input(
                "milnor bounds need a single function, not an indicator list".into(),
            )),
        }
    }

    pub fn dimension(&self) -> usize {
        match self {
            InputDoc::Indicator { indicator } => indicator.dimension(),
            InputDoc::Mapping { mapping } => mapping.n_vars(),
            InputDoc::Indicators { indicators } => indicators[0].dimension(),
        }
    }
}
