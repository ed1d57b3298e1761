//! Corpus generation and the oracle-equivalence self-test.
//!
//! A [`CorpusSpec`] bounds a finite family of parameters: a pool of symbols
//! (closed under `D` so that `K`-witnesses stay reachable), a maximal `d`,
//! per-block multiplicity, block count and total dimension.
//! [`enumerate_parameters`] streams every canonical parameter within the
//! bounds exactly once; [`selftest_equivalence`] sweeps all ordered pairs
//! and checks every invariant of the relevance engine, with the exhaustive
//! definition-level search as the oracle.

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::io::value::{self as doc, DocumentError};
use crate::io::{parse_symbol, print_parameter};
use crate::params::{EtaSymbol, UnitaryParameter};
use crate::partition::Partition;
use crate::relevance::{
    find_witness_with_cap, is_relevant_bruteforce_with_cap, is_relevant_criterion,
    proof_identity_check, verify_witness, Role, DEFAULT_INSTANCE_CAP,
};

/// Default cap on how many parameters an enumeration may produce.
pub const DEFAULT_CARDINALITY_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorpusError {
    #[error("corpus bound '{name}' must be at least 1")]
    InvalidBounds { name: &'static str },
    #[error("corpus cardinality exceeds the cap of {cap} parameters")]
    CardinalityCap { cap: u64 },
}

/// Bounds for corpus generation. All bounds are at least 1; the seed pins
/// randomized sampling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusSpec {
    pub label_pool: Vec<EtaSymbol>,
    pub max_blocks: u32,
    pub max_d: u32,
    pub max_mult: u32,
    pub max_dim: u64,
    pub corank_one: bool,
    pub seed: u64,
}

impl CorpusSpec {
    /// The desk-scale corpus used by the self-test when no spec file is
    /// given: two discrete symbols of ranks 1 and 2, complementary symbols
    /// at `s = 1/4` (the `D`-fixed point) and `s = 1/3` (whose dual
    /// `s = 1/6` joins by closure), `d ≤ 4`, multiplicities `≤ 2`,
    /// dimension `≤ 8`.
    pub fn desk_scale() -> Self {
        use crate::params::Rational;
        CorpusSpec {
            label_pool: vec![
                EtaSymbol::discrete("a", 1).expect("valid symbol"),
                EtaSymbol::discrete("b", 2).expect("valid symbol"),
                EtaSymbol::complementary("c", 1, Rational::new(1, 4)).expect("valid symbol"),
                EtaSymbol::complementary("d", 1, Rational::new(1, 3)).expect("valid symbol"),
            ],
            max_blocks: 8,
            max_d: 4,
            max_mult: 2,
            max_dim: 8,
            corank_one: false,
            seed: 17,
        }
    }

    pub fn validate(&self) -> Result<(), CorpusError> {
        for (name, value) in [
            ("max_blocks", u64::from(self.max_blocks)),
            ("max_d", u64::from(self.max_d)),
            ("max_mult", u64::from(self.max_mult)),
            ("max_dim", self.max_dim),
        ] {
            if value < 1 {
                return Err(CorpusError::InvalidBounds { name });
            }
        }
        Ok(())
    }

    /// The pool closed under `D`, sorted canonically, duplicates removed.
    pub fn closed_pool(&self) -> Vec<EtaSymbol> {
        let mut set = std::collections::BTreeSet::new();
        for eta in &self.label_pool {
            if let Ok(dual) = eta.dual() {
                set.insert(dual);
            }
            set.insert(eta.clone());
        }
        set.into_iter().collect()
    }

    /// Reads a spec from its JSON document form.
    pub fn from_json(text: &str) -> Result<Self, DocumentError> {
        let root_value = doc::parse_root(text)?;
        let root = doc::as_object(&root_value, "$")?;
        doc::reject_unknown(
            root,
            "$",
            &[
                "label_pool",
                "max_blocks",
                "max_d",
                "max_mult",
                "max_dim",
                "corank_one",
                "seed",
            ],
        )?;
        let pool_path = "$.label_pool";
        let mut label_pool = Vec::new();
        for (i, item) in doc::as_array(doc::field(root, "$", "label_pool")?, pool_path)?
            .iter()
            .enumerate()
        {
            let ipath = doc::index(pool_path, i);
            let text = doc::as_str(item, &ipath)?;
            let eta =
                parse_symbol(text).map_err(|e| DocumentError::new(&ipath, e.to_string()))?;
            label_pool.push(eta);
        }
        let corank_one = match root.get("corank_one") {
            None => false,
            Some(v) => doc::as_bool(v, "$.corank_one")?,
        };
        let seed = match root.get("seed") {
            None => 0,
            Some(v) => doc::as_u64(v, "$.seed")?,
        };
        Ok(CorpusSpec {
            label_pool,
            max_blocks: doc::as_u32(doc::field(root, "$", "max_blocks")?, "$.max_blocks")?,
            max_d: doc::as_u32(doc::field(root, "$", "max_d")?, "$.max_d")?,
            max_mult: doc::as_u32(doc::field(root, "$", "max_mult")?, "$.max_mult")?,
            max_dim: doc::as_u64(doc::field(root, "$", "max_dim")?, "$.max_dim")?,
            corank_one,
            seed,
        })
    }

    pub fn to_json(&self) -> String {
        let mut root = Map::new();
        root.insert(
            "label_pool".into(),
            Value::Array(
                self.label_pool
                    .iter()
                    .map(|eta| json!(eta.to_string()))
                    .collect(),
            ),
        );
        root.insert("max_blocks".into(), json!(self.max_blocks));
        root.insert("max_d".into(), json!(self.max_d));
        root.insert("max_mult".into(), json!(self.max_mult));
        root.insert("max_dim".into(), json!(self.max_dim));
        root.insert("corank_one".into(), json!(self.corank_one));
        root.insert("seed".into(), json!(self.seed));
        let mut out = serde_json::to_string_pretty(&Value::Object(root)).expect("JSON encoding");
        out.push('\n');
        out
    }
}

/// The enumeration slots: every `(η, d)` over the closed pool, in canonical
/// order, with the dimension of one copy.
fn slots(spec: &CorpusSpec) -> Vec<(EtaSymbol, u32, u64)> {
    let mut out = Vec::new();
    for eta in spec.closed_pool() {
        let unit = UnitaryParameter::single(eta.clone(), 1, 1).dimension();
        for d in 1..=spec.max_d {
            out.push((eta.clone(), d, unit * u64::from(d)));
        }
    }
    out
}

/// Walks all multiplicity vectors within bounds, first slot cycling
/// fastest, so parameters stream in a stable "odometer" order with the
/// zero parameter first. `emit` may abort the walk by returning `false`.
fn walk(
    slot_list: &[(EtaSymbol, u32, u64)],
    spec: &CorpusSpec,
    emit: &mut dyn FnMut(&[u32]) -> bool,
) -> bool {
    fn rec(
        slot_list: &[(EtaSymbol, u32, u64)],
        spec: &CorpusSpec,
        idx: usize,
        mults: &mut Vec<u32>,
        used_dim: u64,
        used_blocks: u32,
        emit: &mut dyn FnMut(&[u32]) -> bool,
    ) -> bool {
        if idx == 0 {
            return emit(mults);
        }
        let slot = idx - 1;
        let unit = slot_list[slot].2;
        for m in 0..=spec.max_mult {
            let dim = used_dim + u64::from(m) * unit;
            let blocks = used_blocks + u32::from(m > 0);
            if dim > spec.max_dim || blocks > spec.max_blocks {
                break;
            }
            mults[slot] = m;
            if !rec(slot_list, spec, slot, mults, dim, blocks, emit) {
                return false;
            }
        }
        mults[slot] = 0;
        true
    }
    let mut mults = vec![0u32; slot_list.len()];
    rec(
        slot_list,
        spec,
        slot_list.len(),
        &mut mults,
        0,
        0,
        emit,
    )
}

/// Number of parameters the enumeration would produce; errs without
/// enumerating further once the count passes `cap`.
pub fn corpus_size_capped(spec: &CorpusSpec, cap: u64) -> Result<u64, CorpusError> {
    spec.validate()?;
    let slot_list = slots(spec);
    let mut count: u64 = 0;
    let completed = walk(&slot_list, spec, &mut |_| {
        count += 1;
        count <= cap
    });
    if completed {
        Ok(count)
    } else {
        Err(CorpusError::CardinalityCap { cap })
    }
}

pub fn corpus_size(spec: &CorpusSpec) -> Result<u64, CorpusError> {
    corpus_size_capped(spec, DEFAULT_CARDINALITY_CAP)
}

/// Every canonical parameter over the closed pool within bounds, each
/// exactly once, zero first. The cardinality check runs before anything is
/// materialized.
pub fn enumerate_parameters(spec: &CorpusSpec) -> Result<Vec<UnitaryParameter>, CorpusError> {
    enumerate_parameters_capped(spec, DEFAULT_CARDINALITY_CAP)
}

pub fn enumerate_parameters_capped(
    spec: &CorpusSpec,
    cap: u64,
) -> Result<Vec<UnitaryParameter>, CorpusError> {
    let size = corpus_size_capped(spec, cap)?;
    let slot_list = slots(spec);
    let mut out = Vec::with_capacity(size as usize);
    walk(&slot_list, spec, &mut |mults| {
        out.push(UnitaryParameter::from_terms(
            slot_list
                .iter()
                .zip(mults)
                .filter(|(_, &m)| m > 0)
                .map(|((eta, d, _), &m)| (eta.clone(), *d, m)),
        ));
        true
    });
    Ok(out)
}

/// Draws a random parameter within the spec bounds: distinct random slots,
/// random multiplicities, respecting `max_dim` and `max_blocks`.
/// Deterministic given the RNG state.
pub fn sample_parameter<R: Rng>(rng: &mut R, spec: &CorpusSpec) -> UnitaryParameter {
    let slot_list = slots(spec);
    if slot_list.is_empty() {
        return UnitaryParameter::zero();
    }
    let mut order: Vec<usize> = (0..slot_list.len()).collect();
    order.shuffle(rng);
    let want = rng.gen_range(0..=spec.max_blocks.min(slot_list.len() as u32));
    let mut terms = Vec::new();
    let mut dim_left = spec.max_dim;
    for &slot in order.iter().take(want as usize) {
        let (eta, d, unit) = &slot_list[slot];
        let mult = rng.gen_range(1..=spec.max_mult);
        let cost = u64::from(mult) * unit;
        if cost <= dim_left {
            dim_left -= cost;
            terms.push((eta.clone(), *d, mult));
        }
    }
    UnitaryParameter::from_terms(terms)
}

/// Per-invariant violation tallies of a self-test sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ViolationCounts {
    pub equivalence: u64,
    pub symmetry: u64,
    pub generic: u64,
    pub witness: u64,
    pub proof_identity: u64,
    pub closeness: u64,
    pub arthur: u64,
}

impl ViolationCounts {
    pub fn total(&self) -> u64 {
        self.equivalence
            + self.symmetry
            + self.generic
            + self.witness
            + self.proof_identity
            + self.closeness
            + self.arthur
    }

    fn merge(&mut self, other: &ViolationCounts) {
        self.equivalence += other.equivalence;
        self.symmetry += other.symmetry;
        self.generic += other.generic;
        self.witness += other.witness;
        self.proof_identity += other.proof_identity;
        self.closeness += other.closeness;
        self.arthur += other.arthur;
    }
}

/// The first failing pair of a sweep, in DSL form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub pi: String,
    pub sigma: String,
    pub invariant: &'static str,
    pub detail: String,
}

impl std::fmt::Display for Counterexample {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "counterexample to {}: pi = \"{}\", sigma = \"{}\" ({})",
            self.invariant, self.pi, self.sigma, self.detail
        )
    }
}

/// Outcome of [`selftest_equivalence`]. The JSON form is timing-free and
/// byte-identical across reruns of the same spec; the elapsed time rides
/// along separately.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelftestSummary {
    pub parameters: u64,
    pub ordered_pairs: u64,
    pub relevant_pairs: u64,
    pub violations: ViolationCounts,
    pub first_counterexample: Option<Counterexample>,
    pub elapsed: Duration,
}

impl SelftestSummary {
    pub fn passed(&self) -> bool {
        self.violations.total() == 0
    }

    /// Deterministic machine-readable form (no timing).
    pub fn to_json(&self) -> String {
        let v = &self.violations;
        let root = json!({
            "parameters": self.parameters,
            "ordered_pairs": self.ordered_pairs,
            "relevant_pairs": self.relevant_pairs,
            "violations": {
                "equivalence": v.equivalence,
                "symmetry": v.symmetry,
                "generic": v.generic,
                "witness": v.witness,
                "proof_identity": v.proof_identity,
                "closeness": v.closeness,
                "arthur": v.arthur,
            },
        });
        let mut out = serde_json::to_string_pretty(&root).expect("JSON encoding");
        out.push('\n');
        out
    }
}

struct CorpusEntry {
    param: UnitaryParameter,
    dim: u64,
    sl2: Partition,
    generic: bool,
    arthur: bool,
}

struct PairOutcome {
    relevant: bool,
    violations: ViolationCounts,
    counterexample: Option<(usize, Counterexample)>,
}

/// Checks every relevance-engine invariant on one ordered pair. The
/// exhaustive search is the oracle; the criterion, the witness extractor
/// and the closeness condition are tested against it.
fn check_pair(seq: usize, pe: &CorpusEntry, qe: &CorpusEntry, cap: usize) -> PairOutcome {
    let (p, q) = (&pe.param, &qe.param);
    let mut v = ViolationCounts::default();
    let mut first: Option<(usize, Counterexample)> = None;
    let mut record = |slot: &mut u64, invariant: &'static str, detail: String,
                      first: &mut Option<(usize, Counterexample)>| {
        *slot += 1;
        if first.is_none() {
            *first = Some((
                seq,
                Counterexample {
                    pi: print_parameter(p),
                    sigma: print_parameter(q),
                    invariant,
                    detail,
                },
            ));
        }
    };

    let oracle = is_relevant_bruteforce_with_cap(p, q, cap)
        .expect("instance count is bounded by the corpus dimension bound");
    let criterion = is_relevant_criterion(p, q);
    let criterion_rev = is_relevant_criterion(q, p);

    if criterion != oracle {
        record(
            &mut v.equivalence,
            "equivalence",
            format!("criterion = {criterion}, definition search = {oracle}"),
            &mut first,
        );
    }
    if criterion != criterion_rev {
        record(
            &mut v.symmetry,
            "symmetry",
            format!("criterion(pi,sigma) = {criterion}, criterion(sigma,pi) = {criterion_rev}"),
            &mut first,
        );
    }
    if pe.generic && qe.generic && !oracle {
        record(
            &mut v.generic,
            "generic",
            "both parameters are generic yet the pair is not relevant".to_string(),
            &mut first,
        );
    }

    let witness = find_witness_with_cap(p, q, cap)
        .expect("instance count is bounded by the corpus dimension bound");
    match &witness {
        Some(w) => {
            let verified = verify_witness(p, q, w) == Ok(true);
            if !(verified && oracle) {
                record(
                    &mut v.witness,
                    "witness",
                    format!("witness produced: verifies = {verified}, oracle = {oracle}"),
                    &mut first,
                );
            }
            if verified && proof_identity_check(p, q, w) != Ok(true) {
                record(
                    &mut v.proof_identity,
                    "proof_identity",
                    "witness violates the multiplicity identities".to_string(),
                    &mut first,
                );
            }
            if pe.arthur && qe.arthur && !w.indices_with_role(Role::K).is_empty() {
                record(
                    &mut v.arthur,
                    "arthur",
                    "K-assignment appeared on an Arthur-type pair".to_string(),
                    &mut first,
                );
            }
        }
        None => {
            if oracle {
                record(
                    &mut v.witness,
                    "witness",
                    "oracle accepts the pair but no witness was produced".to_string(),
                    &mut first,
                );
            }
        }
    }

    if oracle && !pe.sl2.is_close(&qe.sl2) {
        record(
            &mut v.closeness,
            "closeness",
            format!(
                "relevant pair with distant SL2-types {} and {}",
                pe.sl2, qe.sl2
            ),
            &mut first,
        );
    }

    PairOutcome {
        relevant: oracle,
        violations: v,
        counterexample: first,
    }
}

/// Sweeps every ordered pair of the corpus (restricted to
/// `dim(pi) = dim(sigma) + 1` when `corank_one` is set) and checks all
/// relevance invariants. The sweep is parallel; the summary is
/// deterministic, with the first counterexample taken in pair order.
pub fn selftest_equivalence(spec: &CorpusSpec) -> Result<SelftestSummary, CorpusError> {
    let start = Instant::now();
    let corpus = enumerate_parameters(spec)?;
    let entries: Vec<CorpusEntry> = corpus
        .into_iter()
        .map(|param| CorpusEntry {
            dim: param.dimension(),
            sl2: param.sl2_type(),
            generic: param.is_generic(),
            arthur: param.is_arthur_type(),
            param,
        })
        .collect();

    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..entries.len() {
        for j in 0..entries.len() {
            if !spec.corank_one || entries[i].dim == entries[j].dim + 1 {
                pairs.push((i, j));
            }
        }
    }

    // every instance carries dimension at least 1, so this cap never trips
    let cap = usize::try_from(spec.max_dim)
        .unwrap_or(usize::MAX)
        .max(DEFAULT_INSTANCE_CAP);

    let (relevant_pairs, violations, counterexample) = pairs
        .par_iter()
        .enumerate()
        .map(|(seq, &(i, j))| {
            let out = check_pair(seq, &entries[i], &entries[j], cap);
            (
                u64::from(out.relevant),
                out.violations,
                out.counterexample,
            )
        })
        .reduce(
            || (0, ViolationCounts::default(), None),
            |(ra, mut va, ca), (rb, vb, cb)| {
                va.merge(&vb);
                let first = match (ca, cb) {
                    (Some(a), Some(b)) => Some(if a.0 <= b.0 { a } else { b }),
                    (a, b) => a.or(b),
                };
                (ra + rb, va, first)
            },
        );

    Ok(SelftestSummary {
        parameters: entries.len() as u64,
        ordered_pairs: pairs.len() as u64,
        relevant_pairs,
        violations,
        first_counterexample: counterexample.map(|(_, c)| c),
        elapsed: start.elapsed(),
    })
}
