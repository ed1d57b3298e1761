//! Integer partitions: SL₂-types, transposes, and the coordinatewise
//! closeness test.

use std::fmt;

use crate::params::UnitaryParameter;

/// A weakly decreasing finite list of positive integers, possibly empty.
/// Coordinates past the length read as `0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Builds a partition from weakly decreasing positive parts; panics on
    /// out-of-order or zero parts. Use [`Partition::from_unsorted`] for raw
    /// data.
    pub fn new(parts: Vec<u32>) -> Self {
        assert!(
            parts.windows(2).all(|w| w[0] >= w[1]),
            "partition parts must be weakly decreasing"
        );
        assert!(
            parts.last().map_or(true, |&p| p >= 1),
            "partition parts must be positive"
        );
        Partition { parts }
    }

    /// Sorts the given parts weakly decreasing, dropping zeros.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The `i`-th coordinate, 0-based, reading `0` past the length.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn sum(&self) -> u64 {
        self.parts.iter().map(|&p| u64::from(p)).sum()
    }

    /// The conjugate partition: column lengths of the Young diagram.
    /// An involution preserving the sum of parts.
    pub fn transpose(&self) -> Partition {
        let cols = self.parts.first().copied().unwrap_or(0) as usize;
        let mut parts = Vec::with_capacity(cols);
        for j in 1..=cols {
            // rows with at least j cells; parts are sorted, so count by
            // scanning from the top
            let count = self.parts.iter().take_while(|&&p| p as usize >= j).count();
            parts.push(count as u32);
        }
        Partition { parts }
    }

    /// `|λ_i − μ_i| ≤ 1` for every coordinate, out-of-range coordinates
    /// reading as `0`.
    pub fn is_close(&self, other: &Partition) -> bool {
        let n = self.len().max(other.len());
        (0..n).all(|i| {
            let a = i64::from(self.part(i));
            let b = i64::from(other.part(i));
            (a - b).abs() <= 1
        })
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl FromIterator<u32> for Partition {
    fn from_iter<T: IntoIterator<Item = u32>>(iter: T) -> Self {
        Partition::from_unsorted(iter.into_iter().collect())
    }
}

/// The associated partition `AP`, obtained from the SL₂-type through the
/// transpose identity `TP = APᵗ`.
pub fn associated_partition_of(p: &UnitaryParameter) -> Partition {
    p.sl2_type().transpose()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::EtaSymbol;

    /// Independent oracle: materialize the Young diagram cells and count
    /// them column by column.
    fn transpose_by_cells(parts: &[u32]) -> Vec<u32> {
        let mut cols: Vec<u32> = Vec::new();
        for &row_len in parts {
            for j in 0..row_len as usize {
                if cols.len() <= j {
                    cols.push(0);
                }
                cols[j] += 1;
            }
        }
        cols
    }

    #[test]
    fn transpose_matches_cell_count_oracle() {
        let cases: Vec<Vec<u32>> = vec![
            vec![3, 1],
            vec![],
            vec![2, 2],
            vec![5, 3, 3, 1],
            vec![1, 1, 1, 1],
            vec![4],
        ];
        for parts in cases {
            let p = Partition::new(parts.clone());
            assert_eq!(p.transpose().parts(), transpose_by_cells(&parts));
        }
        // frozen values from the oracle
        assert_eq!(Partition::new(vec![3, 1]).transpose().parts(), &[2, 1, 1]);
        assert_eq!(Partition::empty().transpose(), Partition::empty());
        assert_eq!(Partition::new(vec![2, 2]).transpose().parts(), &[2, 2]);
    }

    #[test]
    fn transpose_is_involution() {
        for parts in [vec![3, 1], vec![5, 5, 2], vec![7], vec![]] {
            let p = Partition::new(parts);
            assert_eq!(p.transpose().transpose(), p);
            assert_eq!(p.transpose().sum(), p.sum());
        }
    }

    #[test]
    fn closeness_coordinatewise() {
        let a = Partition::new(vec![3, 1]);
        let b = Partition::new(vec![2, 2]);
        assert!(a.is_close(&b));
        assert!(b.is_close(&a));
        let c = Partition::new(vec![1, 1, 1]);
        assert!(!a.is_close(&c)); // |3 - 1| = 2
        assert!(a.is_close(&a));
        // a 2 in the tail compares against an implicit 0
        let d = Partition::new(vec![3, 2, 2]);
        assert!(!a.is_close(&d));
    }

    #[test]
    fn closeness_checks_tail_against_zero() {
        let a = Partition::new(vec![2]);
        let b = Partition::new(vec![2, 1]);
        let c = Partition::new(vec![2, 2]);
        assert!(a.is_close(&b));
        assert!(!a.is_close(&c));
    }

    #[test]
    fn associated_partition_via_transpose() {
        let speh = UnitaryParameter::single(EtaSymbol::discrete("a", 2).unwrap(), 3, 1);
        assert_eq!(speh.sl2_type().parts(), &[3, 3]);
        assert_eq!(associated_partition_of(&speh).parts(), &[2, 2, 2]);

        // generic parameter of dimension n has TP = 1^n, AP = (n)
        let generic = UnitaryParameter::single(EtaSymbol::discrete("a", 1).unwrap(), 1, 4);
        assert_eq!(associated_partition_of(&generic).parts(), &[4]);

        assert_eq!(
            associated_partition_of(&UnitaryParameter::zero()),
            Partition::empty()
        );
    }

    #[test]
    fn part_reads_zero_past_length() {
        let p = Partition::new(vec![3, 1]);
        assert_eq!(p.part(0), 3);
        assert_eq!(p.part(1), 1);
        assert_eq!(p.part(2), 0);
        assert_eq!(p.part(100), 0);
    }
}
