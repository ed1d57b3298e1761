//! Formal parameters of irreducible unitary representations of `G_n`.
//!
//! A parameter is a finite formal sum of blocks `a · L ⊠ S_d`, where `L` is
//! either the L-parameter of a unitary discrete series of some `G_k`
//! (a "discrete" symbol) or a complementary-series symbol carrying an exact
//! rational `0 < s < 1/2`. The set of all such sums is a commutative monoid
//! under addition; this module keeps every value in a canonical sorted form
//! so that equality, printing and witness indexing are deterministic.

use std::cmp::Ordering;
use std::fmt;

use num_rational::Ratio;
use thiserror::Error;

use crate::partition::Partition;

/// Exact rational scalar used for the complementary-series parameter `s`.
pub type Rational = Ratio<i64>;

/// Errors from constructing or validating parameter data.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamError {
    #[error("base dimension must be a positive integer, got {0}")]
    InvalidBaseDim(u32),
    #[error("s must be a rational with 0 < s < 1/2, got {0}")]
    SOutOfRange(Rational),
    #[error("the involution D is defined only on complementary symbols")]
    DualOfDiscrete,
    #[error("block requires d >= 1")]
    InvalidBlockD,
    #[error("block requires multiplicity >= 1")]
    InvalidBlockMult,
    #[error("base dimension {base_dim} of symbol '{label}' is not realizable over {profile}")]
    UnrealizableBaseDim {
        label: String,
        base_dim: u32,
        profile: FieldProfile,
    },
}

/// An element of `Par = Par_disc ⊔ Par_cmpl`: the symbol attached to one
/// building block of the unitary dual.
///
/// Discrete-series L-parameters are opaque: a label plus the rank `k` of the
/// group carrying the discrete series. A complementary symbol additionally
/// carries the exact rational `s`, stored reduced.
///
/// The derived ordering is the canonical block order used everywhere:
/// discrete before complementary, then label, base dimension, and `s`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EtaSymbol {
    Discrete { label: String, base_dim: u32 },
    Complementary {
        label: String,
        base_dim: u32,
        s: Rational,
    },
}

impl EtaSymbol {
    /// The L-parameter `L(δ)` of a discrete series of `G_k`, `k = base_dim`.
    pub fn discrete(label: impl Into<String>, base_dim: u32) -> Result<Self, ParamError> {
        if base_dim < 1 {
            return Err(ParamError::InvalidBaseDim(base_dim));
        }
        Ok(EtaSymbol::Discrete {
            label: label.into(),
            base_dim,
        })
    }

    /// The complementary-series symbol `L(δ, s)`; requires `0 < s < 1/2`
    /// (both endpoints excluded). `s` is reduced on construction.
    pub fn complementary(
        label: impl Into<String>,
        base_dim: u32,
        s: Rational,
    ) -> Result<Self, ParamError> {
        if base_dim < 1 {
            return Err(ParamError::InvalidBaseDim(base_dim));
        }
        if s <= Rational::new(0, 1) || s >= Rational::new(1, 2) {
            return Err(ParamError::SOutOfRange(s));
        }
        Ok(EtaSymbol::Complementary {
            label: label.into(),
            base_dim,
            s: s.reduced(),
        })
    }

    pub fn label(&self) -> &str {
        match self {
            EtaSymbol::Discrete { label, .. } | EtaSymbol::Complementary { label, .. } => label,
        }
    }

    /// The rank `k` of the group carrying the underlying discrete series.
    pub fn base_dim(&self) -> u32 {
        match self {
            EtaSymbol::Discrete { base_dim, .. } | EtaSymbol::Complementary { base_dim, .. } => {
                *base_dim
            }
        }
    }

    /// `s` for complementary symbols, `None` for discrete ones.
    pub fn s(&self) -> Option<Rational> {
        match self {
            EtaSymbol::Discrete { .. } => None,
            EtaSymbol::Complementary { s, .. } => Some(*s),
        }
    }

    pub fn is_discrete(&self) -> bool {
        matches!(self, EtaSymbol::Discrete { .. })
    }

    pub fn is_complementary(&self) -> bool {
        matches!(self, EtaSymbol::Complementary { .. })
    }

    /// The involution `D(L(δ, s)) = L(δ, 1/2 − s)`, defined only on
    /// complementary symbols.
    pub fn dual(&self) -> Result<Self, ParamError> {
        match self {
            EtaSymbol::Discrete { .. } => Err(ParamError::DualOfDiscrete),
            EtaSymbol::Complementary { label, base_dim, s } => Ok(EtaSymbol::Complementary {
                label: label.clone(),
                base_dim: *base_dim,
                s: Rational::new(1, 2) - s,
            }),
        }
    }

    /// Dimension of `G_n` on which a block `L ⊠ S_d` with this symbol lives:
    /// `k·d` for a Speh block, `2·k·d` for a complementary one.
    fn dim_factor(&self) -> u64 {
        match self {
            EtaSymbol::Discrete { base_dim, .. } => u64::from(*base_dim),
            EtaSymbol::Complementary { base_dim, .. } => 2 * u64::from(*base_dim),
        }
    }
}

impl fmt::Display for EtaSymbol {
    /// Canonical text form, `L(label[,k=K][,s=N/D])` with `k=1` omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L({}", self.label())?;
        if self.base_dim() != 1 {
            write!(f, ",k={}", self.base_dim())?;
        }
        if let Some(s) = self.s() {
            write!(f, ",s={}/{}", s.numer(), s.denom())?;
        }
        write!(f, ")")
    }
}

/// A summand `mult · eta ⊠ S_d` of a parameter. Invariants: `d ≥ 1`,
/// `mult ≥ 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Block {
    eta: EtaSymbol,
    d: u32,
    mult: u32,
}

impl Block {
    pub fn new(eta: EtaSymbol, d: u32, mult: u32) -> Result<Self, ParamError> {
        if d < 1 {
            return Err(ParamError::InvalidBlockD);
        }
        if mult < 1 {
            return Err(ParamError::InvalidBlockMult);
        }
        Ok(Block { eta, d, mult })
    }

    pub fn eta(&self) -> &EtaSymbol {
        &self.eta
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn mult(&self) -> u32 {
        self.mult
    }

    /// Dimension contributed by this block: `mult · d · k · (1 or 2)`.
    pub fn dimension(&self) -> u64 {
        u64::from(self.mult) * u64::from(self.d) * self.eta.dim_factor()
    }
}

impl PartialOrd for Block {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Block {
    /// Canonical block order: by symbol, then by `d`. Multiplicity is not
    /// part of the key; canonical parameters never hold two blocks with the
    /// same `(eta, d)`.
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.eta, self.d).cmp(&(&other.eta, other.d))
    }
}

/// One copy of a block, after expanding multiplicities. Instance `i` of a
/// parameter is the `i`-th entry of the expansion of its canonical block
/// list; these indices are the stable handles used by witnesses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockInstance<'a> {
    pub eta: &'a EtaSymbol,
    pub d: u32,
}

/// An element of the parameter monoid `Ψ_unit(GL)`: a canonical multiset of
/// blocks, sorted, with equal `(eta, d)` pairs merged. The empty parameter
/// is the monoid zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct UnitaryParameter {
    blocks: Vec<Block>,
}

impl UnitaryParameter {
    /// The monoid zero.
    pub fn zero() -> Self {
        UnitaryParameter { blocks: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Builds a canonical parameter from arbitrary terms. Terms with
    /// `d = 0` or `mult = 0` contribute nothing (`L ⊠ S_0` is understood as
    /// zero); duplicates are merged by adding multiplicities.
    pub fn from_terms(terms: impl IntoIterator<Item = (EtaSymbol, u32, u32)>) -> Self {
        let mut blocks: Vec<Block> = Vec::new();
        for (eta, d, mult) in terms {
            if d == 0 || mult == 0 {
                continue;
            }
            blocks.push(Block { eta, d, mult });
        }
        Self::canonicalize(blocks)
    }

    /// A single block `mult · eta ⊠ S_d`.
    pub fn single(eta: EtaSymbol, d: u32, mult: u32) -> Self {
        Self::from_terms([(eta, d, mult)])
    }

    fn canonicalize(mut blocks: Vec<Block>) -> Self {
        blocks.sort();
        let mut merged: Vec<Block> = Vec::with_capacity(blocks.len());
        for b in blocks {
            match merged.last_mut() {
                Some(last) if last.eta == b.eta && last.d == b.d => last.mult += b.mult,
                _ => merged.push(b),
            }
        }
        UnitaryParameter { blocks: merged }
    }

    /// Canonical block list, sorted with no repeated `(eta, d)`.
    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// Monoid addition: multiset union with multiplicities summed.
    pub fn add(&self, other: &Self) -> Self {
        let mut blocks = self.blocks.clone();
        blocks.extend(other.blocks.iter().cloned());
        Self::canonicalize(blocks)
    }

    /// `self − other` if `other` is a sub-multiset of `self`, else `None`.
    /// The `None` outcome is a normal answer, not an error.
    pub fn subtract(&self, other: &Self) -> Option<Self> {
        let mut blocks = Vec::with_capacity(self.blocks.len());
        let mut rhs = other.blocks.iter().peekable();
        for b in &self.blocks {
            match rhs.peek() {
                Some(r) if r.eta == b.eta && r.d == b.d => {
                    let r = rhs.next().unwrap();
                    if r.mult > b.mult {
                        return None;
                    }
                    if r.mult < b.mult {
                        blocks.push(Block {
                            eta: b.eta.clone(),
                            d: b.d,
                            mult: b.mult - r.mult,
                        });
                    }
                }
                _ => blocks.push(b.clone()),
            }
        }
        if rhs.next().is_some() {
            // a block of `other` is missing from `self`
            return None;
        }
        Some(UnitaryParameter { blocks })
    }

    /// `n` with `π` a representation of `G_n`: sum of `mult·d·k·(1 or 2)`
    /// over blocks.
    pub fn dimension(&self) -> u64 {
        self.blocks.iter().map(Block::dimension).sum()
    }

    /// Non-temperedness `NT = Σ (d_i − 1)` over block instances.
    pub fn nt_measure(&self) -> u64 {
        self.blocks
            .iter()
            .map(|b| u64::from(b.mult) * u64::from(b.d - 1))
            .sum()
    }

    /// The SL₂-type: each block instance contributes `d` repeated `k` times
    /// (Speh) or `2k` times (complementary); parts sorted weakly decreasing.
    pub fn sl2_type(&self) -> Partition {
        let mut parts = Vec::new();
        for b in &self.blocks {
            let copies = u64::from(b.mult) * b.eta.dim_factor();
            for _ in 0..copies {
                parts.push(b.d);
            }
        }
        Partition::from_unsorted(parts)
    }

    /// Generic parameters are exactly those with every `d = 1`; the zero
    /// parameter counts as generic.
    pub fn is_generic(&self) -> bool {
        self.blocks.iter().all(|b| b.d == 1)
    }

    /// Arthur type: no complementary-series symbol occurs.
    pub fn is_arthur_type(&self) -> bool {
        self.blocks.iter().all(|b| b.eta.is_discrete())
    }

    /// Largest `d` occurring, `0` for the zero parameter.
    pub fn max_d(&self) -> u32 {
        self.blocks.iter().map(|b| b.d).max().unwrap_or(0)
    }

    /// The multiplicity `m(η, a; ·)` of the block `η ⊠ S_a`, `0` if absent.
    pub fn multiplicity_of(&self, eta: &EtaSymbol, a: u32) -> u32 {
        self.blocks
            .binary_search_by(|b| (&b.eta, b.d).cmp(&(eta, a)))
            .map(|idx| self.blocks[idx].mult)
            .unwrap_or(0)
    }

    /// Block instances in canonical order (blocks expanded by multiplicity).
    pub fn instances(&self) -> impl Iterator<Item = BlockInstance<'_>> {
        self.blocks.iter().flat_map(|b| {
            std::iter::repeat(BlockInstance {
                eta: &b.eta,
                d: b.d,
            })
            .take(b.mult as usize)
        })
    }

    pub fn instance_count(&self) -> usize {
        self.blocks.iter().map(|b| b.mult as usize).sum()
    }

    /// Checks every symbol against a field profile; `Ok` under
    /// [`FieldProfile::Any`].
    pub fn validate_field_profile(&self, profile: FieldProfile) -> Result<(), ParamError> {
        for b in &self.blocks {
            profile.validate_symbol(&b.eta)?;
        }
        Ok(())
    }
}

impl std::ops::Add for &UnitaryParameter {
    type Output = UnitaryParameter;

    fn add(self, rhs: &UnitaryParameter) -> UnitaryParameter {
        UnitaryParameter::add(self, rhs)
    }
}

impl std::iter::Sum for UnitaryParameter {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        let mut blocks = Vec::new();
        for p in iter {
            blocks.extend(p.blocks);
        }
        Self::canonicalize(blocks)
    }
}

/// Restriction of discrete-series base dimensions to those realizable over a
/// concrete Archimedean field: `k ≤ 2` over the reals, `k = 1` over the
/// complex numbers. [`FieldProfile::Any`] performs no check; the relevance
/// combinatorics never needs one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FieldProfile {
    #[default]
    Any,
    Real,
    Complex,
}

impl FieldProfile {
    pub fn validate_symbol(self, eta: &EtaSymbol) -> Result<(), ParamError> {
        let ok = match self {
            FieldProfile::Any => true,
            FieldProfile::Real => eta.base_dim() <= 2,
            FieldProfile::Complex => eta.base_dim() == 1,
        };
        if ok {
            Ok(())
        } else {
            Err(ParamError::UnrealizableBaseDim {
                label: eta.label().to_string(),
                base_dim: eta.base_dim(),
                profile: self,
            })
        }
    }
}

impl fmt::Display for FieldProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldProfile::Any => write!(f, "none"),
            FieldProfile::Real => write!(f, "real"),
            FieldProfile::Complex => write!(f, "complex"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn disc(label: &str) -> EtaSymbol {
        EtaSymbol::discrete(label, 1).unwrap()
    }

    fn disc_k(label: &str, k: u32) -> EtaSymbol {
        EtaSymbol::discrete(label, k).unwrap()
    }

    fn cmpl(label: &str, num: i64, den: i64) -> EtaSymbol {
        EtaSymbol::complementary(label, 1, Rational::new(num, den)).unwrap()
    }

    #[test]
    fn discrete_constructor() {
        let a = disc("a");
        assert_eq!(a.label(), "a");
        assert_eq!(a.base_dim(), 1);
        assert!(a.is_discrete());
        assert_eq!(disc_k("b", 2).base_dim(), 2);
        assert_eq!(
            EtaSymbol::discrete("c", 0),
            Err(ParamError::InvalidBaseDim(0))
        );
    }

    #[test]
    fn complementary_constructor_and_range() {
        let e = cmpl("a", 1, 3);
        assert_eq!(e.s(), Some(Rational::new(1, 3)));
        // boundaries are excluded
        assert!(matches!(
            EtaSymbol::complementary("a", 1, Rational::new(1, 2)),
            Err(ParamError::SOutOfRange(_))
        ));
        assert!(matches!(
            EtaSymbol::complementary("a", 1, Rational::new(0, 1)),
            Err(ParamError::SOutOfRange(_))
        ));
        // 2/8 reduces to 1/4
        assert_eq!(cmpl("a", 2, 8), cmpl("a", 1, 4));
    }

    #[test]
    fn dual_involution() {
        let e = cmpl("a", 1, 3);
        let d = e.dual().unwrap();
        assert_eq!(d.s(), Some(Rational::new(1, 6)));
        assert_eq!(d.dual().unwrap(), e);
        // s = 1/4 is the fixed point
        let fixed = cmpl("a", 1, 4);
        assert_eq!(fixed.dual().unwrap(), fixed);
        assert_eq!(disc("a").dual(), Err(ParamError::DualOfDiscrete));
    }

    #[test]
    fn canonical_symbol_order() {
        let mut symbols = vec![
            cmpl("a", 1, 3),
            disc_k("b", 2),
            disc("a"),
            cmpl("a", 1, 6),
            EtaSymbol::complementary("a", 2, Rational::new(1, 6)).unwrap(),
        ];
        symbols.sort();
        assert_eq!(
            symbols,
            vec![
                disc("a"),
                disc_k("b", 2),
                cmpl("a", 1, 6),
                cmpl("a", 1, 3),
                EtaSymbol::complementary("a", 2, Rational::new(1, 6)).unwrap(),
            ]
        );
    }

    #[test]
    fn add_merges_and_sorts() {
        let p = UnitaryParameter::single(disc("a"), 2, 1);
        let doubled = p.add(&p);
        assert_eq!(doubled.blocks().len(), 1);
        assert_eq!(doubled.blocks()[0].mult(), 2);

        let q = UnitaryParameter::single(disc("b"), 1, 1);
        let sum = p.add(&q);
        assert_eq!(sum.blocks().len(), 2);
        assert_eq!(sum.blocks()[0].eta(), &disc("a"));

        assert_eq!(p.add(&UnitaryParameter::zero()), p);
    }

    #[test]
    fn subtract_submultiset() {
        let a2 = UnitaryParameter::single(disc("a"), 2, 2);
        let a1 = UnitaryParameter::single(disc("a"), 2, 1);
        assert_eq!(a2.subtract(&a1), Some(a1.clone()));
        assert_eq!(a1.subtract(&a1), Some(UnitaryParameter::zero()));
        let b = UnitaryParameter::single(disc("b"), 2, 1);
        assert_eq!(a1.subtract(&b), None);
        assert_eq!(a1.add(&b).subtract(&b), Some(a1));
    }

    #[test]
    fn dimension_formula() {
        // Speh block on G_{kd}
        assert_eq!(UnitaryParameter::single(disc_k("a", 2), 3, 1).dimension(), 6);
        // complementary block on G_{2kd}
        assert_eq!(UnitaryParameter::single(cmpl("a", 1, 3), 2, 1).dimension(), 4);
        assert_eq!(UnitaryParameter::zero().dimension(), 0);
    }

    #[test]
    fn nt_measure_counts_instances() {
        let p = UnitaryParameter::single(disc("a"), 3, 1)
            .add(&UnitaryParameter::single(disc("b"), 1, 1));
        assert_eq!(p.nt_measure(), 2);
        assert_eq!(UnitaryParameter::single(disc("a"), 2, 2).nt_measure(), 2);
        let generic = UnitaryParameter::single(disc("a"), 1, 3);
        assert_eq!(generic.nt_measure(), 0);
    }

    #[test]
    fn sl2_type_blocks() {
        // Speh: d repeated k times
        let speh = UnitaryParameter::single(disc_k("a", 2), 3, 1);
        assert_eq!(speh.sl2_type().parts(), &[3, 3]);
        // complementary: d repeated 2k times
        let comp = UnitaryParameter::single(cmpl("a", 1, 3), 2, 1);
        assert_eq!(comp.sl2_type().parts(), &[2, 2]);
        let generic = UnitaryParameter::single(disc("a"), 1, 1)
            .add(&UnitaryParameter::single(disc("b"), 1, 1));
        assert_eq!(generic.sl2_type().parts(), &[1, 1]);
    }

    #[test]
    fn genericity_and_arthur_type() {
        let g = UnitaryParameter::single(disc("a"), 1, 1)
            .add(&UnitaryParameter::single(cmpl("a", 1, 3), 1, 1));
        assert!(g.is_generic());
        assert!(!g.is_arthur_type());
        assert!(!UnitaryParameter::single(disc("a"), 2, 1).is_generic());
        assert!(UnitaryParameter::single(disc("a"), 3, 1).is_arthur_type());
        assert!(UnitaryParameter::zero().is_generic());
        assert!(UnitaryParameter::zero().is_arthur_type());
    }

    #[test]
    fn zero_terms_are_dropped() {
        let p = UnitaryParameter::from_terms([
            (disc("a"), 0, 5),
            (disc("a"), 2, 0),
            (disc("a"), 2, 1),
        ]);
        assert_eq!(p, UnitaryParameter::single(disc("a"), 2, 1));
    }

    #[test]
    fn multiplicity_lookup() {
        let p = UnitaryParameter::single(disc("a"), 2, 2)
            .add(&UnitaryParameter::single(disc("b"), 2, 1));
        assert_eq!(p.multiplicity_of(&disc("a"), 2), 2);
        assert_eq!(p.multiplicity_of(&disc("a"), 5), 0);
        assert_eq!(p.multiplicity_of(&cmpl("a", 1, 3), 2), 0);
    }

    #[test]
    fn instances_expand_multiplicity() {
        let p = UnitaryParameter::single(disc("a"), 2, 2)
            .add(&UnitaryParameter::single(disc("b"), 1, 1));
        let inst: Vec<_> = p.instances().map(|i| (i.eta.clone(), i.d)).collect();
        assert_eq!(
            inst,
            vec![(disc("a"), 2), (disc("a"), 2), (disc("b"), 1)]
        );
        assert_eq!(p.instance_count(), 3);
    }

    #[test]
    fn field_profiles() {
        let k2 = disc_k("b", 2);
        let k3 = disc_k("c", 3);
        assert!(FieldProfile::Any.validate_symbol(&k3).is_ok());
        assert!(FieldProfile::Real.validate_symbol(&k2).is_ok());
        assert!(FieldProfile::Real.validate_symbol(&k3).is_err());
        assert!(FieldProfile::Complex.validate_symbol(&k2).is_err());
        let p = UnitaryParameter::single(k3, 1, 1);
        assert!(p.validate_field_profile(FieldProfile::Real).is_err());
    }

    #[test]
    fn symbol_display() {
        assert_eq!(disc("a").to_string(), "L(a)");
        assert_eq!(disc_k("b", 2).to_string(), "L(b,k=2)");
        assert_eq!(cmpl("c", 1, 4).to_string(), "L(c,s=1/4)");
        assert_eq!(
            EtaSymbol::complementary("d", 2, Rational::new(2, 6))
                .unwrap()
                .to_string(),
            "L(d,k=2,s=1/3)"
        );
    }
}
