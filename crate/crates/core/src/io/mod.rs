//! Text formats: the parameter DSL and the report document.

mod dsl;
mod report;
pub(crate) mod value;

pub use dsl::{parse_parameter, parse_symbol, print_parameter, ParseDiagnostic};
pub use report::{
    decode_report, encode_report, lambda_table_value, witness_report_value, LambdaEntry,
    LambdaTable, Report, ReportError, WitnessReport,
};
pub use value::DocumentError;
