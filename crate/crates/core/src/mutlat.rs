//! Exceptional sequences and their mutations in a lattice with a fixed
//! non-symmetric bilinear form.
//!
//! Sequence order `E₀, …, E_{N−1}` follows the convention that pairings
//! from later to earlier objects vanish, so a semiorthogonal sequence has an
//! upper unitriangular pairing matrix. Positions are 0-based throughout.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MutationError {
    #[error("position {index} out of range for a sequence of length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("block {index} out of range for {count} blocks")]
    InvalidBlock { index: usize, count: usize },
    #[error("cannot move block {index} {direction}: no neighbouring block")]
    NoNeighbour { index: usize, direction: Direction },
    #[error("bilinear form must be square of size {expected}, got {rows}x{cols}")]
    FormShape {
        expected: usize,
        rows: usize,
        cols: usize,
    },
    #[error("vector {index} has length {found}, expected {expected}")]
    VectorLength {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("sequence vectors have determinant {0}, not ±1")]
    NotUnimodular(BigInt),
    #[error("block metadata does not partition {0} positions")]
    BadBlocks(usize),
    #[error("blocks are not contiguous after elementwise mutations")]
    NonContiguous,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Left,
    Right,
}

impl std::fmt::Display for Direction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Direction::Left => "left",
            Direction::Right => "right",
        })
    }
}

/// One block move of a mutation script: the block at position `block` in
/// the current block order passes through its left or right neighbour.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockMove {
    pub block: usize,
    pub direction: Direction,
}

/// Outcome of one applied block move.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveRecord {
    #[serde(flatten)]
    pub step: BlockMove,
    /// Pairings between the two blocks vanished in both directions before
    /// the move, so the move only permuted classes.
    pub orthogonal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockInfo {
    pub label: String,
    pub members: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SequenceDocument", into = "SequenceDocument")]
pub struct ExceptionalSequence {
    form: Vec<Vec<i64>>,
    vectors: Vec<Vec<BigInt>>,
    labels: Vec<String>,
    /// Block id of each position.
    membership: Vec<usize>,
}

/// Serialized sequence state. Vector entries outside the `i64` range are
/// written as decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceDocument {
    pub form: Vec<Vec<i64>>,
    #[serde(with = "wide::matrix")]
    pub vectors: Vec<Vec<BigInt>>,
    pub blocks: Vec<BlockInfo>,
}

impl TryFrom<SequenceDocument> for ExceptionalSequence {
    type Error = MutationError;

    fn try_from(doc: SequenceDocument) -> Result<Self, MutationError> {
        let n = doc.vectors.len();
        let mut membership = vec![usize::MAX; n];
        for (id, block) in doc.blocks.iter().enumerate() {
            for &p in &block.members {
                if p >= n || membership[p] != usize::MAX {
                    return Err(MutationError::BadBlocks(n));
                }
                membership[p] = id;
            }
        }
        if membership.contains(&usize::MAX) {
            return Err(MutationError::BadBlocks(n));
        }
        let labels = doc.blocks.into_iter().map(|b| b.label).collect();
        ExceptionalSequence::build(doc.form, doc.vectors, labels, membership)
    }
}

impl From<ExceptionalSequence> for SequenceDocument {
    fn from(seq: ExceptionalSequence) -> SequenceDocument {
        let blocks = seq.block_infos();
        SequenceDocument {
            form: seq.form,
            vectors: seq.vectors,
            blocks,
        }
    }
}

impl ExceptionalSequence {
    /// A sequence whose vectors are the standard basis, one block per entry
    /// of `block_sizes`.
    pub fn with_identity_basis(
        form: Vec<Vec<i64>>,
        block_sizes: &[usize],
        labels: Vec<String>,
    ) -> Result<Self, MutationError> {
        let n = form.len();
        if block_sizes.iter().sum::<usize>() != n || labels.len() != block_sizes.len() {
            return Err(MutationError::BadBlocks(n));
        }
        let vectors = (0..n)
            .map(|i| (0..n).map(|j| BigInt::from((i == j) as i64)).collect())
            .collect();
        let membership = block_sizes
            .iter()
            .enumerate()
            .flat_map(|(id, &len)| std::iter::repeat_n(id, len))
            .collect();
        ExceptionalSequence::build(form, vectors, labels, membership)
    }

    /// Singleton blocks labelled by position.
    pub fn singletons(form: Vec<Vec<i64>>) -> Result<Self, MutationError> {
        let n = form.len();
        let labels = (0..n).map(|i| format!("E{i}")).collect();
        ExceptionalSequence::with_identity_basis(form, &vec![1; n], labels)
    }

    pub fn new(
        form: Vec<Vec<i64>>,
        vectors: Vec<Vec<BigInt>>,
        blocks: Vec<BlockInfo>,
    ) -> Result<Self, MutationError> {
        SequenceDocument {
            form,
            vectors,
            blocks,
        }
        .try_into()
    }

    fn build(
        form: Vec<Vec<i64>>,
        vectors: Vec<Vec<BigInt>>,
        labels: Vec<String>,
        membership: Vec<usize>,
    ) -> Result<Self, MutationError> {
        let n = form.len();
        if let Some(row) = form.iter().find(|r| r.len() != n) {
            return Err(MutationError::FormShape {
                expected: n,
                rows: n,
                cols: row.len(),
            });
        }
        if vectors.len() != n {
            return Err(MutationError::FormShape {
                expected: vectors.len(),
                rows: n,
                cols: n,
            });
        }
        for (index, v) in vectors.iter().enumerate() {
            if v.len() != n {
                return Err(MutationError::VectorLength {
                    index,
                    expected: n,
                    found: v.len(),
                });
            }
        }
        if membership.len() != n || membership.iter().any(|&b| b >= labels.len()) {
            return Err(MutationError::BadBlocks(n));
        }
        let seq = ExceptionalSequence {
            form,
            vectors,
            labels,
            membership,
        };
        let det = seq.determinant();
        if !det.abs().is_one() {
            return Err(MutationError::NotUnimodular(det));
        }
        Ok(seq)
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn form(&self) -> &[Vec<i64>] {
        &self.form
    }

    pub fn vectors(&self) -> &[Vec<BigInt>] {
        &self.vectors
    }

    /// The vectors, if every entry fits in an `i64`.
    pub fn small_vectors(&self) -> Option<Vec<Vec<i64>>> {
        self.vectors
            .iter()
            .map(|v| v.iter().map(|x| i64::try_from(x).ok()).collect())
            .collect()
    }

    fn check_index(&self, i: usize) -> Result<(), MutationError> {
        if i < self.len() {
            Ok(())
        } else {
            Err(MutationError::IndexOutOfRange {
                index: i,
                len: self.len(),
            })
        }
    }

    /// `v_i^T B v_j`.
    pub fn pairing(&self, i: usize, j: usize) -> Result<BigInt, MutationError> {
        self.check_index(i)?;
        self.check_index(j)?;
        Ok(self.pair_vectors(&self.vectors[i], &self.vectors[j]))
    }

    fn pair_vectors(&self, u: &[BigInt], v: &[BigInt]) -> BigInt {
        let mut total = BigInt::zero();
        for (a, row) in u.iter().zip(&self.form) {
            if a.is_zero() {
                continue;
            }
            let inner: BigInt = row
                .iter()
                .zip(v)
                .filter(|(&b, _)| b != 0)
                .map(|(&b, c)| c * b)
                .sum();
            total += a * inner;
        }
        total
    }

    /// Matrix of pairings `M[i][j] = pairing(i, j)`.
    pub fn gram(&self) -> Vec<Vec<BigInt>> {
        self.vectors
            .iter()
            .map(|u| self.vectors.iter().map(|v| self.pair_vectors(u, v)).collect())
            .collect()
    }

    /// Exceptional (`pairing(i,i) = 1`) and semiorthogonal
    /// (`pairing(i,j) = 0` for `i > j`).
    pub fn is_semiorthogonal(&self) -> bool {
        let m = self.gram();
        (0..self.len()).all(|i| m[i][i].is_one() && (0..i).all(|j| m[i][j].is_zero()))
    }

    /// Determinant of the matrix whose rows are the sequence vectors.
    pub fn determinant(&self) -> BigInt {
        determinant(&self.vectors)
    }

    /// Replaces `(v_{i−1}, v_i)` by `(v_i − χ(v_{i−1}, v_i)·v_{i−1}, v_{i−1})`.
    pub fn mutate_left(&self, i: usize) -> Result<Self, MutationError> {
        if i == 0 {
            return Err(MutationError::IndexOutOfRange {
                index: i,
                len: self.len(),
            });
        }
        self.check_index(i)?;
        let p = self.pairing(i - 1, i)?;
        let moved = axpy(&self.vectors[i], &p, &self.vectors[i - 1]);
        let mut out = self.clone();
        out.vectors[i] = out.vectors[i - 1].clone();
        out.vectors[i - 1] = moved;
        out.membership.swap(i - 1, i);
        Ok(out)
    }

    /// Replaces `(v_i, v_{i+1})` by `(v_{i+1}, v_i − χ(v_i, v_{i+1})·v_{i+1})`.
    pub fn mutate_right(&self, i: usize) -> Result<Self, MutationError> {
        self.check_index(i + 1)?;
        let p = self.pairing(i, i + 1)?;
        let moved = axpy(&self.vectors[i], &p, &self.vectors[i + 1]);
        let mut out = self.clone();
        out.vectors[i] = out.vectors[i + 1].clone();
        out.vectors[i + 1] = moved;
        out.membership.swap(i, i + 1);
        Ok(out)
    }

    /// Current blocks as contiguous runs, left to right.
    pub fn block_ranges(&self) -> Result<Vec<(usize, std::ops::Range<usize>)>, MutationError> {
        let mut runs: Vec<(usize, std::ops::Range<usize>)> = Vec::new();
        for (p, &id) in self.membership.iter().enumerate() {
            match runs.last_mut() {
                Some((last, range)) if *last == id => range.end = p + 1,
                _ => {
                    if runs.iter().any(|(b, _)| *b == id) {
                        return Err(MutationError::NonContiguous);
                    }
                    runs.push((id, p..p + 1));
                }
            }
        }
        Ok(runs)
    }

    /// Block labels in current order.
    pub fn block_labels(&self) -> Result<Vec<String>, MutationError> {
        Ok(self
            .block_ranges()?
            .into_iter()
            .map(|(id, _)| self.labels[id].clone())
            .collect())
    }

    pub fn block_infos(&self) -> Vec<BlockInfo> {
        self.labels
            .iter()
            .enumerate()
            .map(|(id, label)| BlockInfo {
                label: label.clone(),
                members: (0..self.len()).filter(|&p| self.membership[p] == id).collect(),
            })
            .collect()
    }

    /// Pairings between the two position ranges vanish in both directions.
    pub fn ranges_orthogonal(
        &self,
        a: std::ops::Range<usize>,
        b: std::ops::Range<usize>,
    ) -> Result<bool, MutationError> {
        for i in a.clone() {
            for j in b.clone() {
                if !self.pairing(i, j)?.is_zero() || !self.pairing(j, i)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Moves one block through its neighbour by elementwise mutations.
    /// A leftward move carries the block's elements over the neighbour one
    /// at a time, leftmost element first, each starting at the neighbour's
    /// rightmost element; a rightward move mirrors this.
    pub fn move_block(&self, step: BlockMove) -> Result<(Self, bool), MutationError> {
        let runs = self.block_ranges()?;
        if step.block >= runs.len() {
            return Err(MutationError::InvalidBlock {
                index: step.block,
                count: runs.len(),
            });
        }
        let (mover, other) = match step.direction {
            Direction::Left if step.block > 0 => (&runs[step.block].1, &runs[step.block - 1].1),
            Direction::Right if step.block + 1 < runs.len() => {
                (&runs[step.block].1, &runs[step.block + 1].1)
            }
            _ => {
                return Err(MutationError::NoNeighbour {
                    index: step.block,
                    direction: step.direction,
                })
            }
        };
        let orthogonal = self.ranges_orthogonal(mover.clone(), other.clone())?;
        let mut seq = self.clone();
        match step.direction {
            Direction::Left => {
                let passes = other.len();
                for (e, start) in mover.clone().enumerate() {
                    let stop = other.start + e;
                    for p in (stop + 1..=start).rev() {
                        seq = seq.mutate_left(p)?;
                    }
                    debug_assert_eq!(start - stop, passes);
                }
            }
            Direction::Right => {
                let passes = other.len();
                for start in mover.clone().rev() {
                    for p in start..start + passes {
                        seq = seq.mutate_right(p)?;
                    }
                }
            }
        }
        Ok((seq, orthogonal))
    }
}

/// Applies a block-move script, recording per-move orthogonality.
pub fn apply_script(
    seq: &ExceptionalSequence,
    moves: &[BlockMove],
) -> Result<(ExceptionalSequence, Vec<MoveRecord>), MutationError> {
    let mut current = seq.clone();
    let mut records = Vec::with_capacity(moves.len());
    for &step in moves {
        let (next, orthogonal) = current.move_block(step)?;
        records.push(MoveRecord { step, orthogonal });
        current = next;
    }
    Ok((current, records))
}

/// `u − c·v`.
fn axpy(u: &[BigInt], c: &BigInt, v: &[BigInt]) -> Vec<BigInt> {
    u.iter().zip(v).map(|(a, b)| a - c * b).collect()
}

/// Exact integer determinant by fraction-free (Bareiss) elimination.
pub fn determinant<T: Clone + Into<BigInt>>(rows: &[Vec<T>]) -> BigInt {
    let n = rows.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|x| x.clone().into()).collect())
        .collect();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Serde adapters writing integers as JSON numbers when they fit in an
/// `i64` and as decimal strings otherwise.
pub mod wide {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Small(i64),
        Unsigned(u64),
        Text(String),
    }

    fn to_repr(x: &BigInt) -> Repr {
        match i64::try_from(x) {
            Ok(v) => Repr::Small(v),
            Err(_) => Repr::Text(x.to_string()),
        }
    }

    fn from_repr<E: serde::de::Error>(r: Repr) -> Result<BigInt, E> {
        match r {
            Repr::Small(v) => Ok(v.into()),
            Repr::Unsigned(v) => Ok(v.into()),
            Repr::Text(s) => s
                .parse()
                .map_err(|_| E::custom(format!("invalid integer {s:?}"))),
        }
    }

    pub mod scalar {
        use super::*;

        pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
            to_repr(x).serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
            from_repr(Repr::deserialize(d)?)
        }
    }

    pub mod matrix {
        use super::*;

        pub fn serialize<S: Serializer>(m: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
            let rows: Vec<Vec<Repr>> = m.iter().map(|r| r.iter().map(to_repr).collect()).collect();
            rows.serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<BigInt>>, D::Error> {
            Vec::<Vec<Repr>>::deserialize(d)?
                .into_iter()
                .map(|r| r.into_iter().map(from_repr::<D::Error>).collect())
                .collect()
        }
    }
}
