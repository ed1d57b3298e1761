//! The relevance report: one structured document per decided pair.
//!
//! Encoded as a JSON object with fixed field names:
//! `pi`, `sigma`, `relevant`, `witness` (`{"I","J","K","psi0"}`, present
//! only for relevant pairs), `lambda_table` (`max_a` plus the nonzero Λ
//! entries), `sl2_pi`, `sl2_sigma`, `close`, `nt_pi`, `nt_sigma`.
//! Parameters are embedded in the DSL text form. Decoding is strict and
//! total on encoder output.

use serde_json::{json, Map, Value};

use crate::io::dsl::{parse_parameter, parse_symbol, print_parameter};
use crate::io::value::{self as doc, DocumentError};
use crate::params::{EtaSymbol, UnitaryParameter};
use crate::partition::Partition;
use crate::relevance::{
    find_witness_with_cap, is_relevant_criterion, lambda_sum, symbol_closure, RelevanceError,
    Role, Witness, DEFAULT_INSTANCE_CAP,
};

pub use crate::io::value::DocumentError as ReportError;

/// One Λ row: both directions at a given symbol and level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaEntry {
    pub eta: EtaSymbol,
    pub a: u32,
    pub pi_sigma: i64,
    pub sigma_pi: i64,
}

/// The nonzero Λ values over the symbol closure, together with the level
/// bound `max_a` that was swept (all Λ vanish above it).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LambdaTable {
    pub max_a: u32,
    pub entries: Vec<LambdaEntry>,
}

impl LambdaTable {
    /// Evaluates Λ in both directions over the closure and keeps the
    /// nonzero rows, ordered by symbol then level.
    pub fn compute(pi: &UnitaryParameter, sigma: &UnitaryParameter) -> Self {
        let max_a = pi.max_d().max(sigma.max_d());
        let mut entries = Vec::new();
        for eta in symbol_closure(pi, sigma) {
            for a in 1..=max_a {
                let pi_sigma = lambda_sum(&eta, a, pi, sigma);
                let sigma_pi = lambda_sum(&eta, a, sigma, pi);
                if pi_sigma != 0 || sigma_pi != 0 {
                    entries.push(LambdaEntry {
                        eta: eta.clone(),
                        a,
                        pi_sigma,
                        sigma_pi,
                    });
                }
            }
        }
        LambdaTable { max_a, entries }
    }
}

/// Witness section of a report: instance indices of `pi` per role, plus the
/// generic remainder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessReport {
    pub i: Vec<usize>,
    pub j: Vec<usize>,
    pub k: Vec<usize>,
    pub psi0: UnitaryParameter,
}

impl WitnessReport {
    pub fn from_witness(w: &Witness) -> Self {
        WitnessReport {
            i: w.indices_with_role(Role::I),
            j: w.indices_with_role(Role::J),
            k: w.indices_with_role(Role::K),
            psi0: w.generic_remainder().clone(),
        }
    }
}

/// Everything the `check` front end reports about one ordered pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub pi: UnitaryParameter,
    pub sigma: UnitaryParameter,
    pub relevant: bool,
    pub witness: Option<WitnessReport>,
    pub lambda_table: LambdaTable,
    pub sl2_pi: Partition,
    pub sl2_sigma: Partition,
    pub close: bool,
    pub nt_pi: u64,
    pub nt_sigma: u64,
}

impl Report {
    /// Decides the pair and assembles the report. The witness section is
    /// present exactly when the pair is relevant; extraction obeys the
    /// instance cap.
    pub fn analyze(pi: &UnitaryParameter, sigma: &UnitaryParameter) -> Result<Self, RelevanceError> {
        Self::analyze_with_cap(pi, sigma, DEFAULT_INSTANCE_CAP)
    }

    pub fn analyze_with_cap(
        pi: &UnitaryParameter,
        sigma: &UnitaryParameter,
        cap: usize,
    ) -> Result<Self, RelevanceError> {
        let relevant = is_relevant_criterion(pi, sigma);
        let witness = if relevant {
            let w = find_witness_with_cap(pi, sigma, cap)?
                .expect("criterion accepted the pair, so a witness exists");
            Some(WitnessReport::from_witness(&w))
        } else {
            None
        };
        let sl2_pi = pi.sl2_type();
        let sl2_sigma = sigma.sl2_type();
        let close = sl2_pi.is_close(&sl2_sigma);
        Ok(Report {
            pi: pi.clone(),
            sigma: sigma.clone(),
            relevant,
            witness,
            lambda_table: LambdaTable::compute(pi, sigma),
            sl2_pi,
            sl2_sigma,
            close,
            nt_pi: pi.nt_measure(),
            nt_sigma: sigma.nt_measure(),
        })
    }
}

fn partition_value(p: &Partition) -> Value {
    Value::Array(p.parts().iter().map(|&v| json!(v)).collect())
}

fn indices_value(idx: &[usize]) -> Value {
    Value::Array(idx.iter().map(|&v| json!(v)).collect())
}

/// The witness section as a JSON value, `{"I": [...], "J": [...],
/// "K": [...], "psi0": "..."}`.
pub fn witness_report_value(w: &WitnessReport) -> Value {
    let mut wobj = Map::new();
    wobj.insert("I".into(), indices_value(&w.i));
    wobj.insert("J".into(), indices_value(&w.j));
    wobj.insert("K".into(), indices_value(&w.k));
    wobj.insert("psi0".into(), json!(print_parameter(&w.psi0)));
    Value::Object(wobj)
}

/// The Λ table as a JSON value, `{"max_a": n, "entries": [...]}`.
pub fn lambda_table_value(t: &LambdaTable) -> Value {
    let entries: Vec<Value> = t
        .entries
        .iter()
        .map(|e| {
            json!({
                "eta": e.eta.to_string(),
                "a": e.a,
                "pi_sigma": e.pi_sigma,
                "sigma_pi": e.sigma_pi,
            })
        })
        .collect();
    json!({ "max_a": t.max_a, "entries": entries })
}

/// Serializes a report as pretty-printed JSON with a trailing newline.
pub fn encode_report(report: &Report) -> String {
    let mut root = Map::new();
    root.insert("pi".into(), json!(print_parameter(&report.pi)));
    root.insert("sigma".into(), json!(print_parameter(&report.sigma)));
    root.insert("relevant".into(), json!(report.relevant));
    if let Some(w) = &report.witness {
        root.insert("witness".into(), witness_report_value(w));
    }
    root.insert(
        "lambda_table".into(),
        lambda_table_value(&report.lambda_table),
    );
    root.insert("sl2_pi".into(), partition_value(&report.sl2_pi));
    root.insert("sl2_sigma".into(), partition_value(&report.sl2_sigma));
    root.insert("close".into(), json!(report.close));
    root.insert("nt_pi".into(), json!(report.nt_pi));
    root.insert("nt_sigma".into(), json!(report.nt_sigma));
    let mut out = serde_json::to_string_pretty(&Value::Object(root)).expect("JSON encoding");
    out.push('\n');
    out
}

fn decode_parameter(v: &Value, path: &str) -> Result<UnitaryParameter, DocumentError> {
    let text = doc::as_str(v, path)?;
    parse_parameter(text).map_err(|e| DocumentError::new(path, e.to_string()))
}

fn decode_partition(v: &Value, path: &str) -> Result<Partition, DocumentError> {
    let arr = doc::as_array(v, path)?;
    let mut parts = Vec::with_capacity(arr.len());
    for (i, item) in arr.iter().enumerate() {
        let ipath = doc::index(path, i);
        let part = doc::as_u32(item, &ipath)?;
        if part == 0 {
            return Err(DocumentError::new(ipath, "partition parts are positive"));
        }
        if let Some(&prev) = parts.last() {
            if part > prev {
                return Err(DocumentError::new(
                    ipath,
                    "partition parts must be weakly decreasing",
                ));
            }
        }
        parts.push(part);
    }
    Ok(Partition::new(parts))
}

fn decode_indices(v: &Value, path: &str) -> Result<Vec<usize>, DocumentError> {
    let arr = doc::as_array(v, path)?;
    arr.iter()
        .enumerate()
        .map(|(i, item)| {
            let ipath = doc::index(path, i);
            Ok(doc::as_u64(item, &ipath)? as usize)
        })
        .collect()
}

/// Decodes a report document; total on [`encode_report`] output, strict on
/// everything else, with the failing field path in the error.
pub fn decode_report(text: &str) -> Result<Report, DocumentError> {
    let root_value = doc::parse_root(text)?;
    let root = doc::as_object(&root_value, "$")?;
    doc::reject_unknown(
        root,
        "$",
        &[
            "pi",
            "sigma",
            "relevant",
            "witness",
            "lambda_table",
            "sl2_pi",
            "sl2_sigma",
            "close",
            "nt_pi",
            "nt_sigma",
        ],
    )?;
    let pi = decode_parameter(doc::field(root, "$", "pi")?, "$.pi")?;
    let sigma = decode_parameter(doc::field(root, "$", "sigma")?, "$.sigma")?;
    let relevant = doc::as_bool(doc::field(root, "$", "relevant")?, "$.relevant")?;

    let witness = match root.get("witness") {
        None => None,
        Some(v) => {
            let path = "$.witness";
            let obj = doc::as_object(v, path)?;
            doc::reject_unknown(obj, path, &["I", "J", "K", "psi0"])?;
            Some(WitnessReport {
                i: decode_indices(doc::field(obj, path, "I")?, "$.witness.I")?,
                j: decode_indices(doc::field(obj, path, "J")?, "$.witness.J")?,
                k: decode_indices(doc::field(obj, path, "K")?, "$.witness.K")?,
                psi0: decode_parameter(doc::field(obj, path, "psi0")?, "$.witness.psi0")?,
            })
        }
    };
    if relevant != witness.is_some() {
        return Err(DocumentError::new(
            "$.witness",
            "present exactly when the pair is relevant",
        ));
    }

    let lt_path = "$.lambda_table";
    let lt = doc::as_object(doc::field(root, "$", "lambda_table")?, lt_path)?;
    doc::reject_unknown(lt, lt_path, &["max_a", "entries"])?;
    let max_a = doc::as_u32(doc::field(lt, lt_path, "max_a")?, "$.lambda_table.max_a")?;
    let entries_path = "$.lambda_table.entries";
    let mut entries = Vec::new();
    for (i, item) in doc::as_array(doc::field(lt, lt_path, "entries")?, entries_path)?
        .iter()
        .enumerate()
    {
        let epath = doc::index(entries_path, i);
        let eobj = doc::as_object(item, &epath)?;
        doc::reject_unknown(eobj, &epath, &["eta", "a", "pi_sigma", "sigma_pi"])?;
        let eta_path = doc::join(&epath, "eta");
        let eta_text = doc::as_str(doc::field(eobj, &epath, "eta")?, &eta_path)?;
        let eta =
            parse_symbol(eta_text).map_err(|e| DocumentError::new(&eta_path, e.to_string()))?;
        entries.push(LambdaEntry {
            eta,
            a: doc::as_u32(doc::field(eobj, &epath, "a")?, &doc::join(&epath, "a"))?,
            pi_sigma: doc::as_i64(
                doc::field(eobj, &epath, "pi_sigma")?,
                &doc::join(&epath, "pi_sigma"),
            )?,
            sigma_pi: doc::as_i64(
                doc::field(eobj, &epath, "sigma_pi")?,
                &doc::join(&epath, "sigma_pi"),
            )?,
        });
    }

    Ok(Report {
        pi,
        sigma,
        relevant,
        witness,
        lambda_table: LambdaTable { max_a, entries },
        sl2_pi: decode_partition(doc::field(root, "$", "sl2_pi")?, "$.sl2_pi")?,
        sl2_sigma: decode_partition(doc::field(root, "$", "sl2_sigma")?, "$.sl2_sigma")?,
        close: doc::as_bool(doc::field(root, "$", "close")?, "$.close")?,
        nt_pi: doc::as_u64(doc::field(root, "$", "nt_pi")?, "$.nt_pi")?,
        nt_sigma: doc::as_u64(doc::field(root, "$", "nt_sigma")?, "$.nt_sigma")?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair() -> (UnitaryParameter, UnitaryParameter) {
        (
            parse_parameter("L(a) x S3 + L(a) x S1").unwrap(),
            parse_parameter("2*L(a) x S2").unwrap(),
        )
    }

    #[test]
    fn analyze_reference_pair() {
        let (pi, sigma) = pair();
        let report = Report::analyze(&pi, &sigma).unwrap();
        assert!(report.relevant);
        let w = report.witness.as_ref().unwrap();
        // canonical instances of pi: index 0 = (a,1), index 1 = (a,3)
        assert_eq!((w.i.as_slice(), w.j.as_slice()), (&[0usize][..], &[1usize][..]));
        assert!(w.k.is_empty());
        assert!(w.psi0.is_zero());
        assert_eq!(report.sl2_pi.parts(), &[3, 1]);
        assert_eq!(report.sl2_sigma.parts(), &[2, 2]);
        assert!(report.close);
        assert_eq!((report.nt_pi, report.nt_sigma), (2, 2));
        // nonzero Λ rows only: (L(a), 2) backward and (L(a), 3) forward
        assert_eq!(report.lambda_table.max_a, 3);
        let rows: Vec<(u32, i64, i64)> = report
            .lambda_table
            .entries
            .iter()
            .map(|e| (e.a, e.pi_sigma, e.sigma_pi))
            .collect();
        assert_eq!(rows, vec![(2, 0, 1), (3, 1, 0)]);
    }

    #[test]
    fn round_trip_on_encoder_output() {
        let (pi, sigma) = pair();
        let report = Report::analyze(&pi, &sigma).unwrap();
        let text = encode_report(&report);
        let back = decode_report(&text).unwrap();
        assert_eq!(back, report);
        assert_eq!(encode_report(&back), text);
    }

    #[test]
    fn witness_section_omitted_when_irrelevant() {
        let pi = parse_parameter("L(a) x S2").unwrap();
        let sigma = parse_parameter("L(b) x S1").unwrap();
        let report = Report::analyze(&pi, &sigma).unwrap();
        assert!(!report.relevant);
        assert!(report.witness.is_none());
        let text = encode_report(&report);
        assert!(!text.contains("witness"));
        assert_eq!(decode_report(&text).unwrap(), report);
    }

    #[test]
    fn decode_reports_field_paths() {
        let (pi, sigma) = pair();
        let good = encode_report(&Report::analyze(&pi, &sigma).unwrap());

        let missing = good.replace("\"close\"", "\"shut\"");
        let err = decode_report(&missing).unwrap_err();
        assert_eq!(err.path, "$.shut");

        let bad_param = good.replace("2*L(a) x S2", "2*L(a) x");
        let err = decode_report(&bad_param).unwrap_err();
        assert_eq!(err.path, "$.sigma");

        let err = decode_report("{}").unwrap_err();
        assert_eq!(err.path, "$.pi");

        let err = decode_report("[1,2]").unwrap_err();
        assert_eq!(err.path, "$");
    }

    #[test]
    fn decode_rejects_witness_mismatch() {
        let pi = parse_parameter("L(a) x S2").unwrap();
        let sigma = parse_parameter("L(b) x S1").unwrap();
        let report = Report::analyze(&pi, &sigma).unwrap();
        let text = encode_report(&report);
        let with_witness = text.replacen(
            "\"relevant\": false",
            "\"relevant\": false,\n  \"witness\": {\"I\": [], \"J\": [0], \"K\": [], \"psi0\": \"0\"}",
            1,
        );
        let err = decode_report(&with_witness).unwrap_err();
        assert_eq!(err.path, "$.witness");
    }

    #[test]
    fn decode_validates_partitions() {
        let (pi, sigma) = pair();
        let good = encode_report(&Report::analyze(&pi, &sigma).unwrap());
        let bad = good.replace("\"sl2_pi\": [\n    3,\n    1\n  ]", "\"sl2_pi\": [1, 3]");
        assert_ne!(bad, good, "replacement must hit");
        let err = decode_report(&bad).unwrap_err();
        assert_eq!(err.path, "$.sl2_pi[1]");
    }
}
