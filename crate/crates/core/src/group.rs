//! Arithmetic in the elementary abelian 2-group `μ₂^k`, its characters, and
//! diagonal action specifications.
//!
//! Elements and characters are both length-`k` vectors over F₂ packed into a
//! `u32`. Entry `i` of the vector is bit `i` of the packed value, so the
//! deterministic element order (packed value ascending) puts `(1,0)` before
//! `(0,1)`.

use std::fmt;
use std::ops::{BitXor, Mul};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest supported group rank. Every routine that enumerates the group
/// walks all `2^k` elements.
pub const MAX_RANK: usize = 16;

/// Largest supported number of linear coordinates; sign rows restricted to
/// a coordinate subset are packed into a `u64`.
pub const MAX_COORDS: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("malformed action spec: {0}")]
    Malformed(String),
    #[error("action matrix has {found} columns but {kind} needs {expected}")]
    ColumnMismatch {
        kind: String,
        expected: usize,
        found: usize,
    },
    #[error("action matrix has {found} rows but group_rank is {expected}")]
    RowMismatch { expected: usize, found: usize },
    #[error("entry {value} at row {row}, column {col} is not a bit")]
    NotABit { row: usize, col: usize, value: i64 },
    #[error("group rank {0} exceeds the supported maximum {MAX_RANK}")]
    RankTooLarge(usize),
    #[error("group rank {rank} exceeds the {coords} coordinates of affine space; the action cannot be effective")]
    AffineRankExceedsDim { rank: usize, coords: usize },
    #[error("bit vectors of length {0} and {1} cannot be combined")]
    LengthMismatch(usize, usize),
    #[error("fermat quadric dimension must be at least 1")]
    QuadricTooSmall,
    #[error("{0} coordinates exceed the supported maximum {MAX_COORDS}")]
    TooManyCoordinates(usize),
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct BitVec {
    bits: u32,
    len: u8,
}

impl BitVec {
    fn from_bits(bits: &[u8]) -> Result<Self, GroupError> {
        if bits.len() > MAX_RANK {
            return Err(GroupError::RankTooLarge(bits.len()));
        }
        let mut packed = 0u32;
        for (i, &b) in bits.iter().enumerate() {
            match b {
                0 => {}
                1 => packed |= 1 << i,
                v => {
                    return Err(GroupError::NotABit {
                        row: 0,
                        col: i,
                        value: v as i64,
                    })
                }
            }
        }
        Ok(BitVec {
            bits: packed,
            len: bits.len() as u8,
        })
    }

    fn to_bits(self) -> Vec<u8> {
        (0..self.len as usize)
            .map(|i| ((self.bits >> i) & 1) as u8)
            .collect()
    }

    fn fmt_bits(self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for i in 0..self.len as usize {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", (self.bits >> i) & 1)?;
        }
        write!(f, ")")
    }
}

macro_rules! f2_vector {
    ($name:ident) => {
        #[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
        #[serde(into = "Vec<u8>", try_from = "Vec<u8>")]
        pub struct $name(BitVec);

        impl $name {
            pub fn zero(rank: usize) -> Self {
                assert!(rank <= MAX_RANK, "rank {rank} exceeds {MAX_RANK}");
                $name(BitVec {
                    bits: 0,
                    len: rank as u8,
                })
            }

            pub fn from_bits(bits: &[u8]) -> Result<Self, GroupError> {
                BitVec::from_bits(bits).map($name)
            }

            /// Builds the vector whose entry `i` is bit `i` of `value`.
            pub fn from_index(value: u32, rank: usize) -> Self {
                assert!(rank <= MAX_RANK, "rank {rank} exceeds {MAX_RANK}");
                let mask = (1u32 << rank) - 1;
                $name(BitVec {
                    bits: value & mask,
                    len: rank as u8,
                })
            }

            /// The `i`-th unit vector.
            pub fn unit(i: usize, rank: usize) -> Self {
                assert!(i < rank);
                Self::from_index(1 << i, rank)
            }

            pub fn bits(&self) -> Vec<u8> {
                self.0.to_bits()
            }

            pub fn index(&self) -> u32 {
                self.0.bits
            }

            pub fn rank(&self) -> usize {
                self.0.len as usize
            }

            pub fn get(&self, i: usize) -> bool {
                (self.0.bits >> i) & 1 == 1
            }

            /// Number of nonzero entries.
            pub fn popcount(&self) -> usize {
                self.0.bits.count_ones() as usize
            }

            pub fn is_zero(&self) -> bool {
                self.0.bits == 0
            }

            pub fn checked_xor(self, other: Self) -> Result<Self, GroupError> {
                if self.0.len != other.0.len {
                    return Err(GroupError::LengthMismatch(self.rank(), other.rank()));
                }
                Ok(self ^ other)
            }
        }

        impl BitXor for $name {
            type Output = $name;

            fn bitxor(self, rhs: $name) -> $name {
                debug_assert_eq!(self.0.len, rhs.0.len);
                $name(BitVec {
                    bits: self.0.bits ^ rhs.0.bits,
                    len: self.0.len,
                })
            }
        }

        impl From<$name> for Vec<u8> {
            fn from(v: $name) -> Vec<u8> {
                v.bits()
            }
        }

        impl TryFrom<Vec<u8>> for $name {
            type Error = GroupError;

            fn try_from(bits: Vec<u8>) -> Result<Self, GroupError> {
                $name::from_bits(&bits)
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}", stringify!($name))?;
                self.0.fmt_bits(f)
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.fmt_bits(f)
            }
        }
    };
}

f2_vector!(GroupElement);
f2_vector!(Character);

impl GroupElement {
    pub fn identity(rank: usize) -> Self {
        Self::zero(rank)
    }

    pub fn is_identity(&self) -> bool {
        self.is_zero()
    }

    /// All `2^rank` elements in ascending packed order.
    pub fn all(rank: usize) -> impl Iterator<Item = GroupElement> {
        assert!(rank <= MAX_RANK, "rank {rank} exceeds {MAX_RANK}");
        (0..1u32 << rank).map(move |v| GroupElement::from_index(v, rank))
    }
}

impl Character {
    pub fn trivial(rank: usize) -> Self {
        Self::zero(rank)
    }

    pub fn is_trivial(&self) -> bool {
        self.is_zero()
    }

    /// F₂ dot product with `g`: `true` when `g` acts by −1.
    pub fn flips(&self, g: GroupElement) -> bool {
        debug_assert_eq!(self.rank(), g.rank());
        (self.0.bits & g.0.bits).count_ones() % 2 == 1
    }

    pub fn sign(&self, g: GroupElement) -> Sign {
        if self.flips(g) {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    /// Adds `n` copies of this character (characters have order two).
    pub fn times(self, n: i64) -> Self {
        if n.rem_euclid(2) == 1 {
            self
        } else {
            Self::trivial(self.rank())
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// `(−1)^{⟨χ,g⟩}`.
pub fn pairing(chi: Character, g: GroupElement) -> Result<Sign, GroupError> {
    if chi.rank() != g.rank() {
        return Err(GroupError::LengthMismatch(chi.rank(), g.rank()));
    }
    Ok(chi.sign(g))
}

/// F₂-linear span of `elements` inside `μ₂^rank`, sorted ascending.
pub fn span(rank: usize, elements: &[GroupElement]) -> Result<Vec<GroupElement>, GroupError> {
    if rank > MAX_RANK {
        return Err(GroupError::RankTooLarge(rank));
    }
    // echelon basis keyed by leading bit
    let mut basis: Vec<u32> = Vec::new();
    for g in elements {
        if g.rank() != rank {
            return Err(GroupError::LengthMismatch(rank, g.rank()));
        }
        let mut v = g.index();
        for &b in &basis {
            v = v.min(v ^ b);
        }
        if v != 0 {
            basis.push(v);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    let mut out: Vec<u32> = vec![0];
    for b in basis {
        let shifted: Vec<u32> = out.iter().map(|&x| x ^ b).collect();
        out.extend(shifted);
    }
    out.sort_unstable();
    Ok(out
        .into_iter()
        .map(|v| GroupElement::from_index(v, rank))
        .collect())
}

/// Dimension over F₂ of the span of `vectors` (given as packed bits).
pub(crate) fn f2_rank(vectors: impl IntoIterator<Item = u64>) -> usize {
    let mut basis: Vec<u64> = Vec::new();
    for mut v in vectors {
        for &b in &basis {
            v = v.min(v ^ b);
        }
        if v != 0 {
            basis.push(v);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "dim", rename_all = "snake_case")]
pub enum SpaceKind {
    Affine(usize),
    Projective(usize),
    FermatQuadric(usize),
}

impl SpaceKind {
    /// Number of linear coordinates the group acts on.
    pub fn coordinates(self) -> usize {
        match self {
            SpaceKind::Affine(n) => n,
            SpaceKind::Projective(n) => n + 1,
            SpaceKind::FermatQuadric(d) => d + 2,
        }
    }

    pub fn dim(self) -> usize {
        match self {
            SpaceKind::Affine(n) | SpaceKind::Projective(n) | SpaceKind::FermatQuadric(n) => n,
        }
    }

    pub fn is_projective_type(self) -> bool {
        !matches!(self, SpaceKind::Affine(_))
    }

    fn name(self) -> &'static str {
        match self {
            SpaceKind::Affine(_) => "affine",
            SpaceKind::Projective(_) => "projective",
            SpaceKind::FermatQuadric(_) => "fermat_quadric",
        }
    }
}

impl fmt::Display for SpaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceKind::Affine(n) => write!(f, "A^{n}"),
            SpaceKind::Projective(n) => write!(f, "P^{n}"),
            SpaceKind::FermatQuadric(d) => write!(f, "Q^{d}"),
        }
    }
}

/// On-disk form of an action specification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecDocument {
    pub space: SpaceDocument,
    pub group_rank: i64,
    pub action: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDocument {
    pub kind: String,
    pub dim: i64,
}

/// A diagonal action of `μ₂^k` on affine space, projective space, or a
/// Fermat quadric. Row `r` of the action matrix says which coordinates the
/// `r`-th generator negates; column `i` is the character of coordinate `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionSpec {
    space: SpaceKind,
    rank: usize,
    characters: Vec<Character>,
    kernel: Vec<GroupElement>,
}

impl ActionSpec {
    /// Builds a spec from the `k × c` action matrix.
    pub fn new(space: SpaceKind, rows: &[Vec<u8>]) -> Result<Self, GroupError> {
        let rank = rows.len();
        if rank > MAX_RANK {
            return Err(GroupError::RankTooLarge(rank));
        }
        if let SpaceKind::FermatQuadric(0) = space {
            return Err(GroupError::QuadricTooSmall);
        }
        let c = space.coordinates();
        if c > MAX_COORDS {
            return Err(GroupError::TooManyCoordinates(c));
        }
        for (r, row) in rows.iter().enumerate() {
            if row.len() != c {
                return Err(GroupError::ColumnMismatch {
                    kind: format!("{space}"),
                    expected: c,
                    found: row.len(),
                });
            }
            if let Some(col) = row.iter().position(|&b| b > 1) {
                return Err(GroupError::NotABit {
                    row: r,
                    col,
                    value: row[col] as i64,
                });
            }
        }
        if let SpaceKind::Affine(n) = space {
            if rank > n {
                return Err(GroupError::AffineRankExceedsDim { rank, coords: n });
            }
        }
        let characters = (0..c)
            .map(|i| {
                let packed = rows
                    .iter()
                    .enumerate()
                    .fold(0u32, |acc, (r, row)| acc | ((row[i] as u32) << r));
                Character::from_index(packed, rank)
            })
            .collect();
        let mut spec = ActionSpec {
            space,
            rank,
            characters,
            kernel: Vec::new(),
        };
        spec.kernel = spec.compute_kernel();
        Ok(spec)
    }

    /// Builds a spec directly from coordinate characters.
    pub fn from_characters(
        space: SpaceKind,
        rank: usize,
        characters: Vec<Character>,
    ) -> Result<Self, GroupError> {
        if characters.len() != space.coordinates() {
            return Err(GroupError::ColumnMismatch {
                kind: format!("{space}"),
                expected: space.coordinates(),
                found: characters.len(),
            });
        }
        let rows: Vec<Vec<u8>> = (0..rank)
            .map(|r| characters.iter().map(|chi| chi.get(r) as u8).collect())
            .collect();
        if let Some(chi) = characters.iter().find(|chi| chi.rank() != rank) {
            return Err(GroupError::LengthMismatch(rank, chi.rank()));
        }
        ActionSpec::new(space, &rows)
    }

    pub fn space(&self) -> SpaceKind {
        self.space
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> u64 {
        1u64 << self.rank
    }

    pub fn num_coords(&self) -> usize {
        self.characters.len()
    }

    pub fn characters(&self) -> &[Character] {
        &self.characters
    }

    pub fn character(&self, coord: usize) -> Character {
        self.characters[coord]
    }

    /// The action matrix, one row per generator.
    pub fn rows(&self) -> Vec<Vec<u8>> {
        (0..self.rank)
            .map(|r| self.characters.iter().map(|chi| chi.get(r) as u8).collect())
            .collect()
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> {
        GroupElement::all(self.rank)
    }

    /// Number of coordinates negated by `g`.
    pub fn weight(&self, g: GroupElement) -> usize {
        self.characters.iter().filter(|chi| chi.flips(g)).count()
    }

    pub fn contains(&self, g: GroupElement) -> bool {
        g.rank() == self.rank
    }

    /// Elements acting trivially on the space.
    pub fn kernel(&self) -> &[GroupElement] {
        &self.kernel
    }

    pub fn is_effective(&self) -> bool {
        self.kernel.len() == 1
    }

    fn compute_kernel(&self) -> Vec<GroupElement> {
        let projective = self.space.is_projective_type();
        self.elements()
            .filter(|&g| {
                let mut signs = self.characters.iter().map(|chi| chi.flips(g));
                if projective {
                    match signs.next() {
                        Some(first) => signs.all(|s| s == first),
                        None => true,
                    }
                } else {
                    signs.all(|s| !s)
                }
            })
            .collect()
    }

    /// Display name of coordinate `i`: `x, y, z, w` for small spaces,
    /// `x0, x1, ...` otherwise.
    pub fn coord_name(&self, i: usize) -> String {
        const SHORT: [&str; 4] = ["x", "y", "z", "w"];
        if self.num_coords() <= SHORT.len() {
            SHORT[i].to_string()
        } else {
            format!("x{i}")
        }
    }

    pub fn to_document(&self) -> SpecDocument {
        SpecDocument {
            space: SpaceDocument {
                kind: self.space.name().to_string(),
                dim: self.space.dim() as i64,
            },
            group_rank: self.rank as i64,
            action: self
                .rows()
                .into_iter()
                .map(|row| row.into_iter().map(i64::from).collect())
                .collect(),
        }
    }

    pub fn from_document(doc: &SpecDocument) -> Result<Self, GroupError> {
        let dim = usize::try_from(doc.space.dim)
            .map_err(|_| GroupError::Malformed(format!("negative dimension {}", doc.space.dim)))?;
        let space = match doc.space.kind.as_str() {
            "affine" => SpaceKind::Affine(dim),
            "projective" => SpaceKind::Projective(dim),
            "fermat_quadric" => SpaceKind::FermatQuadric(dim),
            other => return Err(GroupError::Malformed(format!("unknown space kind {other:?}"))),
        };
        let rank = usize::try_from(doc.group_rank)
            .map_err(|_| GroupError::Malformed(format!("negative group_rank {}", doc.group_rank)))?;
        if rank > MAX_RANK {
            return Err(GroupError::RankTooLarge(rank));
        }
        if doc.action.len() != rank {
            return Err(GroupError::RowMismatch {
                expected: rank,
                found: doc.action.len(),
            });
        }
        let mut rows = Vec::with_capacity(rank);
        for (r, row) in doc.action.iter().enumerate() {
            let mut bits = Vec::with_capacity(row.len());
            for (col, &v) in row.iter().enumerate() {
                match v {
                    0 | 1 => bits.push(v as u8),
                    _ => return Err(GroupError::NotABit { row: r, col, value: v }),
                }
            }
            rows.push(bits);
        }
        ActionSpec::new(space, &rows)
    }
}

/// Parses an action-spec JSON document.
pub fn parse_spec(text: &str) -> Result<ActionSpec, GroupError> {
    let doc: SpecDocument =
        serde_json::from_str(text).map_err(|e| GroupError::Malformed(e.to_string()))?;
    ActionSpec::from_document(&doc)
}

/// Elements of `spec`'s group acting trivially on the space.
pub fn projective_kernel(spec: &ActionSpec) -> Vec<GroupElement> {
    spec.kernel().to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;

    const P2_EXAMPLE: &str = r#"{
        "space": {"kind": "projective", "dim": 2},
        "group_rank": 2,
        "action": [[1, 0, 0], [0, 1, 0]]
    }"#;

    fn g(bits: &[u8]) -> GroupElement {
        GroupElement::from_bits(bits).unwrap()
    }

    fn chi(bits: &[u8]) -> Character {
        Character::from_bits(bits).unwrap()
    }

    #[test]
    fn parse_p2_example() {
        let spec = parse_spec(P2_EXAMPLE).unwrap();
        assert_eq!(spec.num_coords(), 3);
        assert_eq!(spec.rank(), 2);
        assert_eq!(spec.character(0), chi(&[1, 0]));
        assert_eq!(spec.character(1), chi(&[0, 1]));
        assert_eq!(spec.character(2), chi(&[0, 0]));
        assert!(spec.is_effective());
        assert_eq!(projective_kernel(&spec), vec![GroupElement::identity(2)]);
    }

    #[test]
    fn trivial_group_is_valid() {
        let spec = parse_spec(
            r#"{"space": {"kind": "projective", "dim": 2}, "group_rank": 0, "action": []}"#,
        )
        .unwrap();
        assert_eq!(spec.order(), 1);
        assert_eq!(spec.elements().count(), 1);
        assert!(spec.is_effective());
    }

    #[test]
    fn column_count_must_match_space() {
        let err = parse_spec(
            r#"{"space": {"kind": "affine", "dim": 3}, "group_rank": 1, "action": [[1,0,0,0]]}"#,
        )
        .unwrap_err();
        assert!(matches!(err, GroupError::ColumnMismatch { expected: 3, found: 4, .. }));
    }

    #[test]
    fn malformed_documents_are_rejected() {
        assert!(matches!(parse_spec("{"), Err(GroupError::Malformed(_))));
        assert!(matches!(
            parse_spec(r#"{"space": {"kind": "torus", "dim": 2}, "group_rank": 0, "action": []}"#),
            Err(GroupError::Malformed(_))
        ));
        assert!(matches!(
            parse_spec(r#"{"space": {"kind": "affine", "dim": 2}, "group_rank": 2, "action": [[1,0]]}"#),
            Err(GroupError::RowMismatch { expected: 2, found: 1 })
        ));
        assert!(matches!(
            parse_spec(r#"{"space": {"kind": "affine", "dim": 2}, "group_rank": 1, "action": [[2,0]]}"#),
            Err(GroupError::NotABit { value: 2, .. })
        ));
        assert!(matches!(
            parse_spec(r#"{"space": {"kind": "affine", "dim": 1}, "group_rank": 2, "action": [[1],[1]]}"#),
            Err(GroupError::AffineRankExceedsDim { .. })
        ));
    }

    #[test]
    fn document_round_trip() {
        let spec = parse_spec(P2_EXAMPLE).unwrap();
        let text = serde_json::to_string(&spec.to_document()).unwrap();
        assert_eq!(parse_spec(&text).unwrap(), spec);
    }

    #[test]
    fn pairing_examples() {
        assert_eq!(pairing(chi(&[1, 0]), g(&[1, 1])).unwrap(), Sign::Minus);
        assert_eq!(pairing(chi(&[0, 0]), g(&[1, 1])).unwrap(), Sign::Plus);
        assert_eq!(pairing(chi(&[1, 1]), g(&[1, 1])).unwrap(), Sign::Plus);
        assert!(pairing(chi(&[1]), g(&[1, 1])).is_err());
    }

    #[test]
    fn pairing_is_multiplicative_exhaustively() {
        for k in 0..=6 {
            for c in 0..1u32 << k {
                let chi = Character::from_index(c, k);
                for g in GroupElement::all(k) {
                    for h in GroupElement::all(k) {
                        assert_eq!(chi.sign(g ^ h), chi.sign(g) * chi.sign(h));
                    }
                }
            }
        }
    }

    #[test]
    fn kernel_examples() {
        let flip_both =
            ActionSpec::new(SpaceKind::Projective(1), &[vec![1, 1]]).unwrap();
        assert_eq!(flip_both.kernel().len(), 2);
        assert!(!flip_both.is_effective());

        let affine = ActionSpec::new(SpaceKind::Affine(2), &[vec![1, 0]]).unwrap();
        assert_eq!(affine.kernel(), &[GroupElement::identity(1)]);
    }

    #[test]
    fn kernel_is_a_subgroup() {
        for k in 0..=4 {
            for packed in 0..1u32 << (3 * k) {
                let chars: Vec<Character> = (0..3)
                    .map(|i| Character::from_index(packed >> (k * i), k))
                    .collect();
                let spec =
                    ActionSpec::from_characters(SpaceKind::Projective(2), k, chars).unwrap();
                let ker = spec.kernel();
                for &a in ker {
                    for &b in ker {
                        assert!(ker.contains(&(a ^ b)));
                    }
                }
            }
        }
    }

    #[test]
    fn span_examples() {
        assert_eq!(span(2, &[g(&[1, 0])]).unwrap(), vec![g(&[0, 0]), g(&[1, 0])]);
        assert_eq!(span(2, &[g(&[1, 0]), g(&[0, 1])]).unwrap().len(), 4);
        assert_eq!(span(2, &[]).unwrap(), vec![GroupElement::identity(2)]);
        assert!(span(3, &[g(&[1, 0])]).is_err());
    }

    #[test]
    fn element_order_is_packed_value() {
        let elems: Vec<_> = GroupElement::all(2).collect();
        assert_eq!(elems, vec![g(&[0, 0]), g(&[1, 0]), g(&[0, 1]), g(&[1, 1])]);
    }

    #[test]
    fn serde_uses_bit_lists() {
        let text = serde_json::to_string(&g(&[1, 0, 1])).unwrap();
        assert_eq!(text, "[1,0,1]");
        let back: GroupElement = serde_json::from_str(&text).unwrap();
        assert_eq!(back, g(&[1, 0, 1]));
    }
}
