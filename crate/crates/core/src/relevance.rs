//! The relevance decision engine.
//!
//! Two independent routes decide whether a pair of parameters is relevant:
//!
//! * [`is_relevant_bruteforce`] works straight from the definition,
//!   searching over all assignments of block instances to the roles
//!   `I`/`J`/`K` with a generic remainder;
//! * [`is_relevant_criterion`] evaluates the alternating sums `Λ(η, a; ·, ·)`
//!   and decides by their non-negativity.
//!
//! The two must agree everywhere; the corpus self-test sweeps exactly that.
//! [`find_witness`] extracts an explicit role assignment by the inductive
//! peeling argument behind the criterion, and [`proof_identity_check`]
//! confirms the multiplicity identities tying a witness to the Λ values.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::params::{EtaSymbol, UnitaryParameter};

/// Default cap on the number of block instances the exhaustive search (and
/// witness extraction) accepts.
pub const DEFAULT_INSTANCE_CAP: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RelevanceError {
    #[error("parameter has {count} block instances, exceeding the cap of {cap}")]
    ResourceLimit { count: usize, cap: usize },
    #[error("witness assigns {got} instances but the parameter has {expected}")]
    AssignmentMismatch { got: usize, expected: usize },
    #[error("witness does not verify against the pair")]
    InvalidWitness,
    #[error("lambda queries require a >= 1")]
    InvalidLambdaLevel,
}

/// Role of one block instance in a witness partition: `I` shifts `S_d` to
/// `S_{d+1}`, `J` to `S_{d-1}` (vanishing at `d = 1`), and `K` applies the
/// involution `D` (complementary symbols only).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Role {
    I,
    J,
    K,
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Role::I => write!(f, "I"),
            Role::J => write!(f, "J"),
            Role::K => write!(f, "K"),
        }
    }
}

/// A certificate of relevance: a role for every block instance of the first
/// parameter (instance `i` in the sense of
/// [`UnitaryParameter::instances`]), plus the generic remainder `Ψ₀`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    roles: Vec<Role>,
    generic_remainder: UnitaryParameter,
}

impl Witness {
    /// Wraps a raw assignment; no validation happens here, use
    /// [`verify_witness`].
    pub fn new(roles: Vec<Role>, generic_remainder: UnitaryParameter) -> Self {
        Witness {
            roles,
            generic_remainder,
        }
    }

    pub fn roles(&self) -> &[Role] {
        &self.roles
    }

    pub fn generic_remainder(&self) -> &UnitaryParameter {
        &self.generic_remainder
    }

    /// Instance indices carrying the given role, ascending.
    pub fn indices_with_role(&self, role: Role) -> Vec<usize> {
        self.roles
            .iter()
            .enumerate()
            .filter(|(_, r)| **r == role)
            .map(|(i, _)| i)
            .collect()
    }
}

/// Which of the two parameters contributes the leading (positive) terms of
/// a Λ evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    PiFirst,
    SigmaFirst,
}

/// A single Λ evaluation request: symbol, level `a ≥ 1`, and direction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaQuery {
    pub eta: EtaSymbol,
    pub a: u32,
    pub direction: Direction,
}

impl LambdaQuery {
    pub fn new(eta: EtaSymbol, a: u32, direction: Direction) -> Result<Self, RelevanceError> {
        if a < 1 {
            return Err(RelevanceError::InvalidLambdaLevel);
        }
        Ok(LambdaQuery { eta, a, direction })
    }

    pub fn evaluate(&self, pi: &UnitaryParameter, sigma: &UnitaryParameter) -> i64 {
        match self.direction {
            Direction::PiFirst => lambda_sum(&self.eta, self.a, pi, sigma),
            Direction::SigmaFirst => lambda_sum(&self.eta, self.a, sigma, pi),
        }
    }
}

/// The multiplicity `m(η, a; p)`: instances of `p` with symbol `η` and
/// `S_a`, counted with multiplicity.
pub fn multiplicity(eta: &EtaSymbol, a: u32, p: &UnitaryParameter) -> u32 {
    p.multiplicity_of(eta, a)
}

/// The alternating sum `Λ(η, a; first, second)`.
///
/// For a discrete symbol this is
/// `m(η,a;first) − m(η,a+1;second) + m(η,a+2;first) − ⋯`;
/// for a complementary symbol the two sides are summed separately with the
/// symbol alternating under `D`:
/// `Σ_j m(Dʲ(η), a+j; first) − Σ_j m(Dʲ(η), a+1+j; second)`.
/// All terms above the largest occurring `d` vanish, so the sum is finite.
pub fn lambda_sum(
    eta: &EtaSymbol,
    a: u32,
    first: &UnitaryParameter,
    second: &UnitaryParameter,
) -> i64 {
    let bound = first.max_d().max(second.max_d());
    let mut total = 0i64;
    match eta {
        EtaSymbol::Discrete { .. } => {
            let mut level = a;
            let mut positive = true;
            while level <= bound {
                if positive {
                    total += i64::from(first.multiplicity_of(eta, level));
                } else {
                    total -= i64::from(second.multiplicity_of(eta, level));
                }
                positive = !positive;
                level += 1;
            }
        }
        EtaSymbol::Complementary { .. } => {
            let dual = eta.dual().expect("complementary symbol has a dual");
            if a <= bound {
                for (j, level) in (a..=bound).enumerate() {
                    let sym = if j % 2 == 0 { eta } else { &dual };
                    total += i64::from(first.multiplicity_of(sym, level));
                }
            }
            if a + 1 <= bound {
                for (j, level) in (a + 1..=bound).enumerate() {
                    let sym = if j % 2 == 0 { eta } else { &dual };
                    total -= i64::from(second.multiplicity_of(sym, level));
                }
            }
        }
    }
    total
}

/// The symbols of both parameters, closed under `D`. Outside this set every
/// Λ vanishes identically, so quantifying over it is exhaustive.
pub fn symbol_closure(p: &UnitaryParameter, q: &UnitaryParameter) -> Vec<EtaSymbol> {
    let mut set = std::collections::BTreeSet::new();
    for b in p.blocks().iter().chain(q.blocks().iter()) {
        if b.eta().is_complementary() {
            set.insert(b.eta().dual().expect("complementary symbol has a dual"));
        }
        set.insert(b.eta().clone());
    }
    set.into_iter().collect()
}

/// Decides relevance by the combinatorial criterion: every
/// `Λ(η, a; p, q)` and `Λ(η, a; q, p)` is non-negative, for `η` in the
/// `D`-closure of the occurring symbols and `1 ≤ a ≤ max d`.
pub fn is_relevant_criterion(p: &UnitaryParameter, q: &UnitaryParameter) -> bool {
    let bound = p.max_d().max(q.max_d());
    for eta in symbol_closure(p, q) {
        for a in 1..=bound {
            if lambda_sum(&eta, a, p, q) < 0 || lambda_sum(&eta, a, q, p) < 0 {
                return false;
            }
        }
    }
    true
}

/// Decides relevance straight from the definition, with the default
/// instance cap.
pub fn is_relevant_bruteforce(
    p: &UnitaryParameter,
    q: &UnitaryParameter,
) -> Result<bool, RelevanceError> {
    is_relevant_bruteforce_with_cap(p, q, DEFAULT_INSTANCE_CAP)
}

/// Exhaustive search over all role assignments of `p`'s block instances,
/// deduplicated: identical instances are interchangeable, so the search
/// runs over multiplicity splits per `(η, d)` class rather than `3^r`
/// labelings. Errs (never guesses) above the instance cap.
pub fn is_relevant_bruteforce_with_cap(
    p: &UnitaryParameter,
    q: &UnitaryParameter,
    cap: usize,
) -> Result<bool, RelevanceError> {
    let count = p.instance_count();
    if count > cap {
        return Err(RelevanceError::ResourceLimit { count, cap });
    }
    Ok(assignment_search(p, q))
}

/// One feasible way to split a class: the blocks of `q` it consumes, as
/// `(q_block_index, copies)`.
struct ClassSplit {
    consumes: Vec<(usize, u32)>,
}

/// Feasible splits of each `(η, d)` class of `p`, precomputed against `q`'s
/// block table.
fn class_splits(p: &UnitaryParameter, q: &UnitaryParameter) -> Option<Vec<Vec<ClassSplit>>> {
    let find_q = |eta: &EtaSymbol, d: u32| {
        q.blocks()
            .binary_search_by(|b| (b.eta(), b.d()).cmp(&(eta, d)))
            .ok()
    };
    let mut classes = Vec::with_capacity(p.blocks().len());
    for b in p.blocks() {
        let mult = b.mult();
        let dual = b.eta().dual().ok();
        let idx_i = find_q(b.eta(), b.d() + 1);
        let idx_j = if b.d() >= 2 {
            find_q(b.eta(), b.d() - 1)
        } else {
            None // J at d = 1 vanishes into S_0 and consumes nothing
        };
        let idx_k = dual.as_ref().and_then(|dl| find_q(dl, b.d()));

        let mut splits = Vec::new();
        for i in 0..=mult {
            for j in 0..=(mult - i) {
                let k = mult - i - j;
                if k > 0 && dual.is_none() {
                    continue; // K is reserved for complementary symbols
                }
                let mut consumes = Vec::new();
                let mut feasible = true;
                let mut need = |idx: Option<usize>, copies: u32| {
                    if copies == 0 {
                        return;
                    }
                    match idx {
                        Some(t) => consumes.push((t, copies)),
                        None => feasible = false,
                    }
                };
                need(idx_i, i);
                if b.d() >= 2 {
                    need(idx_j, j);
                }
                need(idx_k, k);
                if feasible {
                    splits.push(ClassSplit {
                        consumes,
                        roles: (i, j, k),
                    });
                }
            }
        }
        if splits.is_empty() {
            return None;
        }
        classes.push(splits);
    }
    Some(classes)
}

fn assignment_search(p: &UnitaryParameter, q: &UnitaryParameter) -> bool {
    let Some(classes) = class_splits(p, q) else {
        return false;
    };
    let q_mult: Vec<u32> = q.blocks().iter().map(|b| b.mult()).collect();
    let q_deep: Vec<bool> = q.blocks().iter().map(|b| b.d() >= 2).collect();
    let mut acc = vec![0u32; q_mult.len()];

    fn rec(
        classes: &[Vec<ClassSplit>],
        acc: &mut [u32],
        q_mult: &[u32],
        q_deep: &[bool],
    ) -> bool {
        let Some((head, tail)) = classes.split_first() else {
            // residual q − mapped is generic iff every d ≥ 2 block of q is
            // fully consumed
            return acc
                .iter()
                .zip(q_mult)
                .zip(q_deep)
                .all(|((a, m), deep)| !deep || a == m);
        };
        for split in head {
            let mut applied = split.consumes.len();
            for (n, &(t, c)) in split.consumes.iter().enumerate() {
                if acc[t] + c > q_mult[t] {
                    applied = n;
                    break;
                }
                acc[t] += c;
            }
            if applied == split.consumes.len() {
                if rec(tail, acc, q_mult, q_deep) {
                    return true;
                }
            }
            for &(t, c) in &split.consumes[..applied] {
                acc[t] -= c;
            }
        }
        false
    }

    rec(&classes, &mut acc, &q_mult, &q_deep)
}

/// Extracts the canonical witness when the pair is relevant.
///
/// The construction follows the inductive peeling argument: take a largest
/// remaining `d₁` in `p`; if `q` still holds a block above `d₁` it must
/// match an `I`-assignment, otherwise the leading block peels via `K`
/// (complementary, with `D` of it present in `q`) or via `J`. Once only
/// `d = 1` blocks remain on both sides, everything left in `p` drops to
/// `S_0` under `J` and the rest of `q` is the generic remainder. Within
/// each `(η, d)` class the roles are emitted in the order `I < J < K`, so
/// the output is canonical.
pub fn find_witness(
    p: &UnitaryParameter,
    q: &UnitaryParameter,
) -> Result<Option<Witness>, RelevanceError> {
    find_witness_with_cap(p, q, DEFAULT_INSTANCE_CAP)
}

pub fn find_witness_with_cap(
    p: &UnitaryParameter,
    q: &UnitaryParameter,
    cap: usize,
) -> Result<Option<Witness>, RelevanceError> {
    if !is_relevant_criterion(p, q) {
        return Ok(None);
    }
    // the cap gates only the construction; deciding "none" stays cheap
    let count = p.instance_count();
    if count > cap {
        return Err(RelevanceError::ResourceLimit { count, cap });
    }
    Ok(Some(construct_witness(p, q)))
}

type Counts = BTreeMap<(EtaSymbol, u32), u32>;

fn to_counts(p: &UnitaryParameter) -> Counts {
    p.blocks()
        .iter()
        .map(|b| ((b.eta().clone(), b.d()), b.mult()))
        .collect()
}

fn counts_to_parameter(counts: &Counts) -> UnitaryParameter {
    UnitaryParameter::from_terms(
        counts
            .iter()
            .map(|((eta, d), mult)| (eta.clone(), *d, *mult)),
    )
}

fn take_one(counts: &mut Counts, key: &(EtaSymbol, u32)) {
    let m = counts
        .get_mut(key)
        .expect("peeling consumed a block that is not present");
    *m -= 1;
    if *m == 0 {
        counts.remove(key);
    }
}

/// The peeling loop. Precondition: the pair satisfies the criterion, which
/// guarantees every step below finds its match.
fn construct_witness(p: &UnitaryParameter, q: &UnitaryParameter) -> Witness {
    let mut rem_p = to_counts(p);
    let mut rem_q = to_counts(q);
    // (i, j, k) counts per class of p
    let mut roles: BTreeMap<(EtaSymbol, u32), (u32, u32, u32)> = p
        .blocks()
        .iter()
        .map(|b| ((b.eta().clone(), b.d()), (0, 0, 0)))
        .collect();

    let remainder = loop {
        let Some(d1) = rem_p.keys().map(|(_, d)| *d).max() else {
            break counts_to_parameter(&rem_q);
        };

        // a q-block strictly above d1 forces an I-match at level d1
        let above = rem_q
            .keys()
            .filter(|(_, d)| *d > d1)
            .min()
            .cloned();
        if let Some((eta, d)) = above {
            assert_eq!(
                d,
                d1 + 1,
                "criterion holds but a block of the second parameter sits \
                 more than one level above the first; this is a bug"
            );
            let key = (eta.clone(), d1);
            assert!(
                rem_p.contains_key(&key),
                "criterion holds but no block matches an I-assignment; this is a bug"
            );
            roles.get_mut(&key).expect("class exists").0 += 1;
            take_one(&mut rem_p, &key);
            take_one(&mut rem_q, &(eta, d));
            continue;
        }

        if d1 == 1 {
            // both sides are generic now: everything remaining drops to S_0
            for ((eta, d), mult) in std::mem::take(&mut rem_p) {
                roles.get_mut(&(eta, d)).expect("class exists").1 += mult;
            }
            break counts_to_parameter(&rem_q);
        }

        // peel the canonically least class at the top level
        let (eta1, _) = rem_p
            .keys()
            .filter(|(_, d)| *d == d1)
            .min()
            .cloned()
            .expect("a block at the maximal level exists");
        let key = (eta1.clone(), d1);
        let dual_key = eta1.dual().ok().map(|dl| (dl, d1));
        if let Some(dk) = dual_key.filter(|dk| rem_q.contains_key(dk)) {
            roles.get_mut(&key).expect("class exists").2 += 1;
            take_one(&mut rem_p, &key);
            take_one(&mut rem_q, &dk);
        } else {
            let down = (eta1, d1 - 1);
            assert!(
                rem_q.contains_key(&down),
                "criterion holds but no J- or K-match exists for the leading \
                 block; this is a bug"
            );
            roles.get_mut(&key).expect("class exists").1 += 1;
            take_one(&mut rem_p, &key);
            take_one(&mut rem_q, &down);
        }
    };

    // canonical role vector: classes in block order, I before J before K
    let mut role_vec = Vec::with_capacity(p.instance_count());
    for b in p.blocks() {
        let (i, j, k) = roles[&(b.eta().clone(), b.d())];
        debug_assert_eq!(i + j + k, b.mult(), "role counts cover the class");
        role_vec.extend(std::iter::repeat(Role::I).take(i as usize));
        role_vec.extend(std::iter::repeat(Role::J).take(j as usize));
        role_vec.extend(std::iter::repeat(Role::K).take(k as usize));
    }
    Witness {
        roles: role_vec,
        generic_remainder: remainder,
    }
}

/// Checks a witness against the defining identity
/// `Ψ_σ = Σ_I η⊠S_{d+1} + Σ_J η⊠S_{d−1} + Σ_K D(η)⊠S_d + Ψ₀`,
/// with `S_0` summands dropped. Returns `false` (not an error) when a
/// discrete instance sits in `K`, when the remainder is not generic, or
/// when the identity fails; errs only when the assignment does not cover
/// exactly the instances of `p`.
pub fn verify_witness(
    p: &UnitaryParameter,
    q: &UnitaryParameter,
    w: &Witness,
) -> Result<bool, RelevanceError> {
    if w.roles.len() != p.instance_count() {
        return Err(RelevanceError::AssignmentMismatch {
            got: w.roles.len(),
            expected: p.instance_count(),
        });
    }
    let mut mapped_terms: Vec<(EtaSymbol, u32, u32)> = Vec::new();
    for (inst, role) in p.instances().zip(w.roles.iter()) {
        match role {
            Role::I => mapped_terms.push((inst.eta.clone(), inst.d + 1, 1)),
            Role::J => {
                if inst.d >= 2 {
                    mapped_terms.push((inst.eta.clone(), inst.d - 1, 1));
                }
            }
            Role::K => match inst.eta.dual() {
                Ok(dual) => mapped_terms.push((dual, inst.d, 1)),
                Err(_) => return Ok(false),
            },
        }
    }
    if !w.generic_remainder.is_generic() {
        return Ok(false);
    }
    let mapped = UnitaryParameter::from_terms(mapped_terms);
    Ok(mapped.add(&w.generic_remainder) == *q)
}

/// Confirms the multiplicity identities satisfied by any valid witness:
/// for discrete `η`, `Λ(η,a;p,q) = m_J(η,a;p)`; for complementary `η`,
/// `Λ(η,a;p,q) = m_J(η,a;p) + m_K(η,a;p) + m_J(D(η),a+1;p)`, where `m_J` /
/// `m_K` count only instances assigned those roles. Errs on a witness that
/// does not verify.
pub fn proof_identity_check(
    p: &UnitaryParameter,
    q: &UnitaryParameter,
    w: &Witness,
) -> Result<bool, RelevanceError> {
    if !verify_witness(p, q, w)? {
        return Err(RelevanceError::InvalidWitness);
    }
    // restricted multiplicities per (η, d)
    let mut m_j: Counts = Counts::new();
    let mut m_k: Counts = Counts::new();
    for (inst, role) in p.instances().zip(w.roles.iter()) {
        let key = (inst.eta.clone(), inst.d);
        match role {
            Role::J => *m_j.entry(key).or_insert(0) += 1,
            Role::K => *m_k.entry(key).or_insert(0) += 1,
            Role::I => {}
        }
    }
    let get = |m: &Counts, eta: &EtaSymbol, a: u32| {
        i64::from(m.get(&(eta.clone(), a)).copied().unwrap_or(0))
    };

    let bound = p.max_d().max(q.max_d());
    for eta in symbol_closure(p, q) {
        for a in 1..=bound {
            let lhs = lambda_sum(&eta, a, p, q);
            let rhs = match &eta {
                EtaSymbol::Discrete { .. } => get(&m_j, &eta, a),
                EtaSymbol::Complementary { .. } => {
                    let dual = eta.dual().expect("complementary symbol has a dual");
                    get(&m_j, &eta, a) + get(&m_k, &eta, a) + get(&m_j, &dual, a + 1)
                }
            };
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::Rational;

    fn disc(label: &str) -> EtaSymbol {
        EtaSymbol::discrete(label, 1).unwrap()
    }

    fn cmpl(label: &str, num: i64, den: i64) -> EtaSymbol {
        EtaSymbol::complementary(label, 1, Rational::new(num, den)).unwrap()
    }

    fn single(eta: EtaSymbol, d: u32) -> UnitaryParameter {
        UnitaryParameter::single(eta, d, 1)
    }

    #[test]
    fn multiplicity_counts_with_mult() {
        let p = UnitaryParameter::single(disc("a"), 2, 2)
            .add(&UnitaryParameter::single(disc("b"), 2, 1));
        assert_eq!(multiplicity(&disc("a"), 2, &p), 2);
        assert_eq!(multiplicity(&disc("a"), 5, &single(disc("a"), 2)), 0);
        // symbol equality is exact in s
        let p = single(cmpl("a", 1, 6), 1);
        assert_eq!(multiplicity(&cmpl("a", 1, 3), 1, &p), 0);
    }

    #[test]
    fn lambda_discrete_direct_evaluation() {
        // Λ(L(a), 1; q, p) with p = L(a)⊠S₂, q = L(b)⊠S₁:
        // m(a,1;q) − m(a,2;p) = 0 − 1
        let p = single(disc("a"), 2);
        let q = single(disc("b"), 1);
        assert_eq!(lambda_sum(&disc("a"), 1, &q, &p), -1);
        assert_eq!(lambda_sum(&disc("b"), 1, &q, &p), 1);
    }

    #[test]
    fn lambda_vanishes_above_bound() {
        let p = single(disc("a"), 2);
        let q = single(disc("a"), 3);
        assert_eq!(lambda_sum(&disc("a"), 4, &p, &q), 0);
        assert_eq!(lambda_sum(&cmpl("z", 1, 3), 7, &p, &q), 0);
    }

    #[test]
    fn lambda_complementary_fixed_point() {
        // D-fixed symbol s = 1/4: p = η⊠S₂, q = η⊠S₃ at a = 2 gives 1 − 1
        let eta = cmpl("a", 1, 4);
        let p = single(eta.clone(), 2);
        let q = single(eta.clone(), 3);
        assert_eq!(lambda_sum(&eta, 2, &p, &q), 0);
    }

    #[test]
    fn lambda_complementary_alternates_dual() {
        // p = η⊠S₁ + D(η)⊠S₂, a = 1: positive side m(η,1;p) + m(D(η),2;p) = 2
        let eta = cmpl("a", 1, 3);
        let dual = eta.dual().unwrap();
        let p = single(eta.clone(), 1).add(&single(dual, 2));
        assert_eq!(lambda_sum(&eta, 1, &p, &UnitaryParameter::zero()), 2);
    }

    #[test]
    fn criterion_examples() {
        let p = single(disc("a"), 2);
        assert!(is_relevant_criterion(&p, &single(disc("a"), 1)));
        assert!(!is_relevant_criterion(&p, &single(disc("b"), 1)));
        // generic pairs are always relevant
        let g1 = single(disc("a"), 1).add(&single(cmpl("c", 1, 3), 1));
        let g2 = UnitaryParameter::single(disc("z"), 1, 3);
        assert!(is_relevant_criterion(&g1, &g2));
        let zero = UnitaryParameter::zero();
        assert!(is_relevant_criterion(&zero, &zero));
    }

    #[test]
    fn bruteforce_examples() {
        // I on the S₁ block, J on the S₃ block
        let p = single(disc("a"), 3).add(&single(disc("a"), 1));
        let q = UnitaryParameter::single(disc("a"), 2, 2);
        assert_eq!(is_relevant_bruteforce(&p, &q), Ok(true));

        // K: D(L(a,1/3)) = L(a,1/6)
        let p = single(cmpl("a", 1, 3), 2);
        let q = single(cmpl("a", 1, 6), 2);
        assert_eq!(is_relevant_bruteforce(&p, &q), Ok(true));

        // no assignment kills an S₂ block against zero
        let p = single(disc("a"), 2);
        assert_eq!(
            is_relevant_bruteforce(&p, &UnitaryParameter::zero()),
            Ok(false)
        );
    }

    #[test]
    fn bruteforce_resource_cap() {
        let p = UnitaryParameter::single(disc("a"), 1, 21);
        let q = UnitaryParameter::zero();
        assert_eq!(
            is_relevant_bruteforce(&p, &q),
            Err(RelevanceError::ResourceLimit { count: 21, cap: 20 })
        );
        assert_eq!(
            is_relevant_bruteforce_with_cap(&p, &q, 25),
            Ok(true),
            "21 generic instances against zero drop out under J"
        );
    }

    #[test]
    fn witness_canonical_example() {
        let p = single(disc("a"), 3).add(&single(disc("a"), 1));
        let q = UnitaryParameter::single(disc("a"), 2, 2);
        let w = find_witness(&p, &q).unwrap().expect("relevant pair");
        // canonical instance order: (a,1) then (a,3)
        assert_eq!(w.roles(), &[Role::I, Role::J]);
        assert_eq!(w.generic_remainder(), &UnitaryParameter::zero());
        assert_eq!(verify_witness(&p, &q, &w), Ok(true));
    }

    #[test]
    fn witness_generic_pair_all_j() {
        let p = single(disc("a"), 1).add(&single(disc("b"), 1));
        let q = single(disc("c"), 1);
        let w = find_witness(&p, &q).unwrap().expect("generic pairs are relevant");
        assert_eq!(w.roles(), &[Role::J, Role::J]);
        assert_eq!(w.generic_remainder(), &q);
        assert_eq!(verify_witness(&p, &q, &w), Ok(true));
    }

    #[test]
    fn witness_k_assignment() {
        let p = single(cmpl("a", 1, 3), 2);
        let q = single(cmpl("a", 1, 6), 2);
        let w = find_witness(&p, &q).unwrap().expect("relevant via K");
        assert_eq!(w.roles(), &[Role::K]);
        assert_eq!(w.generic_remainder(), &UnitaryParameter::zero());
        assert_eq!(verify_witness(&p, &q, &w), Ok(true));
        assert_eq!(proof_identity_check(&p, &q, &w), Ok(true));
    }

    #[test]
    fn witness_none_for_irrelevant_pair() {
        let p = single(disc("a"), 2);
        let q = single(disc("b"), 1);
        assert_eq!(find_witness(&p, &q), Ok(None));
    }

    #[test]
    fn verify_witness_rejects_discrete_in_k() {
        let p = single(disc("a"), 2);
        let q = single(disc("a"), 2);
        let w = Witness::new(vec![Role::K], UnitaryParameter::zero());
        assert_eq!(verify_witness(&p, &q, &w), Ok(false));
    }

    #[test]
    fn verify_witness_rejects_nongeneric_remainder() {
        let p = single(disc("a"), 1);
        let q = single(disc("a"), 2).add(&single(disc("a"), 2));
        let w = Witness::new(vec![Role::I], single(disc("a"), 2));
        assert_eq!(verify_witness(&p, &q, &w), Ok(false));
    }

    #[test]
    fn verify_witness_domain_mismatch() {
        let p = UnitaryParameter::single(disc("a"), 2, 2);
        let q = UnitaryParameter::zero();
        let w = Witness::new(vec![Role::J], UnitaryParameter::zero());
        assert_eq!(
            verify_witness(&p, &q, &w),
            Err(RelevanceError::AssignmentMismatch { got: 1, expected: 2 })
        );
    }

    #[test]
    fn proof_identities_hold_on_examples() {
        // Λ(L(a),3;p,q) = 1 = m_J(L(a),3;p)
        let p = single(disc("a"), 3).add(&single(disc("a"), 1));
        let q = UnitaryParameter::single(disc("a"), 2, 2);
        let w = find_witness(&p, &q).unwrap().unwrap();
        assert_eq!(lambda_sum(&disc("a"), 3, &p, &q), 1);
        assert_eq!(proof_identity_check(&p, &q, &w), Ok(true));

        // generic pair: both sides vanish for a ≥ 2
        let p = single(disc("a"), 1);
        let q = single(disc("b"), 1);
        let w = find_witness(&p, &q).unwrap().unwrap();
        assert_eq!(proof_identity_check(&p, &q, &w), Ok(true));
    }

    #[test]
    fn proof_identity_rejects_invalid_witness() {
        let p = single(disc("a"), 2);
        let q = single(disc("a"), 1);
        let w = Witness::new(vec![Role::I], UnitaryParameter::zero());
        assert_eq!(
            proof_identity_check(&p, &q, &w),
            Err(RelevanceError::InvalidWitness)
        );
    }

    #[test]
    fn lambda_query_direction() {
        let p = single(disc("a"), 2);
        let q = single(disc("b"), 1);
        let fwd = LambdaQuery::new(disc("a"), 1, Direction::PiFirst).unwrap();
        let bwd = LambdaQuery::new(disc("a"), 1, Direction::SigmaFirst).unwrap();
        assert_eq!(fwd.evaluate(&p, &q), 0);
        assert_eq!(bwd.evaluate(&p, &q), -1);
        assert_eq!(
            LambdaQuery::new(disc("a"), 0, Direction::PiFirst),
            Err(RelevanceError::InvalidLambdaLevel)
        );
    }
}
