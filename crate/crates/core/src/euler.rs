//! Equivariant Euler pairings between twisted coordinate-subspace sheaves on
//! `[P^n / G]`.
//!
//! A [`KObject`] stands for `O_{P(V_T)}(d) ⊗ χ` pushed forward to the
//! ambient stack. Pairings are computed by resolving the first argument with
//! the Koszul complex on the coordinates outside its support and reading off
//! invariant parts of line-bundle cohomology on the second argument's
//! support.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{ActionSpec, Character, GroupError, SpaceKind};
use crate::inertia::{CoarseType, ResidualSigns};
use crate::loci::Geometry;
use crate::mutlat::{ExceptionalSequence, MutationError};
use crate::sod::SodReport;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EulerError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("Euler pairings need a projective ambient space, got {0}")]
    NotProjective(SpaceKind),
    #[error("support must be a nonempty set of coordinates below {coords}")]
    BadSupport { coords: usize },
    #[error("piece {0} has no identified coarse space")]
    Undetermined(String),
    #[error("no character twist makes piece {0} semiorthogonal to the earlier pieces")]
    NormalizationFailed(String),
    #[error(transparent)]
    Mutation(#[from] MutationError),
}

/// Class of `O_{P(V_T)}(d) ⊗ χ`. One-coordinate supports are skyscrapers;
/// their twist is folded into the character.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KObject {
    pub support: Vec<usize>,
    pub twist: i64,
    pub character: Character,
}

impl KObject {
    pub fn new(
        spec: &ActionSpec,
        support: Vec<usize>,
        twist: i64,
        character: Character,
    ) -> Result<Self, EulerError> {
        let mut support = support;
        support.sort_unstable();
        support.dedup();
        if support.is_empty() || support.iter().any(|&i| i >= spec.num_coords()) {
            return Err(EulerError::BadSupport {
                coords: spec.num_coords(),
            });
        }
        if character.rank() != spec.rank() {
            return Err(GroupError::LengthMismatch(spec.rank(), character.rank()).into());
        }
        if support.len() == 1 {
            // O(d) restricted to the point P(V_i) is the character d·χ_i
            let chi = character ^ spec.character(support[0]).times(twist);
            return Ok(KObject {
                support,
                twist: 0,
                character: chi,
            });
        }
        Ok(KObject {
            support,
            twist,
            character,
        })
    }

    /// `O(d) ⊗ χ` on the whole ambient space.
    pub fn line_bundle(spec: &ActionSpec, twist: i64, character: Character) -> Result<Self, EulerError> {
        KObject::new(spec, (0..spec.num_coords()).collect(), twist, character)
    }

    pub fn skyscraper(spec: &ActionSpec, coord: usize) -> Result<Self, EulerError> {
        KObject::new(spec, vec![coord], 0, Character::trivial(spec.rank()))
    }

    pub fn tensor(&self, chi: Character) -> KObject {
        KObject {
            character: self.character ^ chi,
            ..self.clone()
        }
    }
}

/// Virtual representation of `G`: integer multiplicity per character.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct VirtualRep {
    mult: BTreeMap<Character, i64>,
}

impl VirtualRep {
    pub fn get(&self, chi: Character) -> i64 {
        self.mult.get(&chi).copied().unwrap_or(0)
    }

    pub fn add(&mut self, chi: Character, n: i64) {
        let e = self.mult.entry(chi).or_insert(0);
        *e += n;
        if *e == 0 {
            self.mult.remove(&chi);
        }
    }

    /// Multiplicity of the trivial character.
    pub fn invariant_part(&self, rank: usize) -> i64 {
        self.get(Character::trivial(rank))
    }

    /// Virtual dimension.
    pub fn dimension(&self) -> i64 {
        self.mult.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.mult.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Character, i64)> + '_ {
        self.mult.iter().map(|(&c, &n)| (c, n))
    }
}

fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < k {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1i64, |acc, i| acc * (n - i) / (i + 1))
}

/// Number of exponent vectors on `t` variables with the given parity
/// pattern (`odd` entries odd, the rest even), all entries `≥ min`, summing
/// to `total`.
fn count_with_parity(t: i64, odd: i64, min_one: bool, total: i64) -> i64 {
    // odd entries are 1 + 2b; even entries are 2b, or 2 + 2b when ≥ 1
    let base = odd + if min_one { 2 * (t - odd) } else { 0 };
    let rest = total - base;
    if rest < 0 || rest % 2 != 0 {
        return 0;
    }
    binomial(rest / 2 + t - 1, t - 1)
}

/// `H^•(P(V_T), O(e))` as an alternating virtual representation.
///
/// Degree-`e` monomials span `H^0` for `e ≥ 0`; Laurent monomials with all
/// exponents `≤ −1` span `H^m` for `e ≤ −m−1`; a monomial's character is the
/// sum of the characters of its odd-exponent coordinates.
pub fn cohomology(spec: &ActionSpec, support: &[usize], e: i64) -> Result<VirtualRep, EulerError> {
    check_projective(spec)?;
    if support.is_empty() || support.iter().any(|&i| i >= spec.num_coords()) {
        return Err(EulerError::BadSupport {
            coords: spec.num_coords(),
        });
    }
    let t = support.len() as i64;
    let m = t - 1;
    let mut rep = VirtualRep::default();
    let (sign, total, min_one) = if e >= 0 {
        (1, e, false)
    } else if e < -m {
        (if m % 2 == 0 { 1 } else { -1 }, -e, true)
    } else {
        return Ok(rep);
    };
    for pattern in 0u64..1 << support.len() {
        let chi = support
            .iter()
            .enumerate()
            .filter(|(j, _)| (pattern >> j) & 1 == 1)
            .fold(Character::trivial(spec.rank()), |acc, (_, &i)| acc ^ spec.character(i));
        let n = count_with_parity(t, pattern.count_ones() as i64, min_one, total);
        if n != 0 {
            rep.add(chi, sign * n);
        }
    }
    Ok(rep)
}

fn cohomology_multiplicity(spec: &ActionSpec, support: &[usize], e: i64, chi: Character) -> Result<i64, EulerError> {
    Ok(cohomology(spec, support, e)?.get(chi))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KoszulTerm {
    pub twist: i64,
    pub character: Character,
    pub sign: i64,
}

/// Koszul resolution of `E` by line bundles: for every subset `S` of the
/// coordinates outside `T`, the term `O(d − |S|) ⊗ (χ + Σ_{i∈S} χ_i)` with
/// sign `(−1)^{|S|}`.
pub fn koszul(spec: &ActionSpec, e: &KObject) -> Result<Vec<KoszulTerm>, EulerError> {
    check_projective(spec)?;
    let outside: Vec<usize> = (0..spec.num_coords())
        .filter(|i| !e.support.contains(i))
        .collect();
    let mut terms = Vec::with_capacity(1 << outside.len());
    for subset in 0u64..1 << outside.len() {
        let size = subset.count_ones() as i64;
        let chi = outside
            .iter()
            .enumerate()
            .filter(|(j, _)| (subset >> j) & 1 == 1)
            .fold(e.character, |acc, (_, &i)| acc ^ spec.character(i));
        terms.push(KoszulTerm {
            twist: e.twist - size,
            character: chi,
            sign: if size % 2 == 0 { 1 } else { -1 },
        });
    }
    Ok(terms)
}

/// `χ^G(E, F) = Σ_i (−1)^i dim Ext^i(E, F)^G`.
pub fn euler_pairing(spec: &ActionSpec, e: &KObject, f: &KObject) -> Result<i64, EulerError> {
    let mut total = 0;
    for t in koszul(spec, e)? {
        // Ext(O(a) ⊗ ψ, F) = H(F(−a)) ⊗ ψ, whose invariant part is the
        // ψ-isotypic part of H(F(−a)) (characters have order two)
        total += t.sign
            * cohomology_multiplicity(spec, &f.support, f.twist - t.twist, f.character ^ t.character)?;
    }
    Ok(total)
}

/// Pairing of formal integer combinations of objects.
pub fn euler_pairing_combination(
    spec: &ActionSpec,
    left: &[(i64, KObject)],
    right: &[(i64, KObject)],
) -> Result<i64, EulerError> {
    let mut total = 0;
    for (a, e) in left {
        for (b, f) in right {
            total += a * b * euler_pairing(spec, e, f)?;
        }
    }
    Ok(total)
}

pub fn gram(spec: &ActionSpec, objects: &[KObject]) -> Result<Vec<Vec<i64>>, EulerError> {
    objects
        .iter()
        .map(|e| objects.iter().map(|f| euler_pairing(spec, e, f)).collect())
        .collect()
}

fn check_projective(spec: &ActionSpec) -> Result<(), EulerError> {
    match spec.space() {
        SpaceKind::Projective(_) => Ok(()),
        other => Err(EulerError::NotProjective(other)),
    }
}

/// Generators of one decomposition piece.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorBlock {
    pub label: String,
    pub start: usize,
    pub len: usize,
    /// Coarse dimension `m`; the block's pairings should form the matrix
    /// `C(m + b − a, m)`.
    pub coarse_dim: usize,
    /// Character every object of the block was tensored with.
    pub twist: Character,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorCollection {
    pub objects: Vec<KObject>,
    pub blocks: Vec<GeneratorBlock>,
}

impl GeneratorCollection {
    /// Some block carries a nontrivial character twist.
    pub fn normalized(&self) -> bool {
        self.blocks.iter().any(|b| !b.twist.is_trivial())
    }
}

/// Images of the standard generators `O, O(1), …, O(m)` of each piece's
/// coarse space, in report order and with trivial characters. Quotient maps
/// that square coordinates double the twist.
pub fn canonical_generators(
    spec: &ActionSpec,
    report: &SodReport,
) -> Result<GeneratorCollection, EulerError> {
    check_projective(spec)?;
    let mut objects = Vec::new();
    let mut blocks = Vec::new();
    for (pos, piece) in report.order.iter().enumerate() {
        let comp = report.component_at(pos);
        let support = comp.piece.support.clone();
        let start = objects.len();
        let coarse_dim = match (comp.coarse_type, comp.piece.geometry) {
            (CoarseType::Point, _) => {
                objects.push(KObject::new(
                    spec,
                    vec![support[0]],
                    0,
                    Character::trivial(spec.rank()),
                )?);
                0
            }
            (CoarseType::ProjSpace(m), Geometry::ProjSpace) => {
                let residual = ResidualSigns::of(spec, &support);
                let scalar_only = residual.acts_by_scalars();
                for t in 0..=m as i64 {
                    let (twist, chi) = if scalar_only {
                        // G acts on P(V_T) by scalars: O(t) needs the
                        // character making its sections invariant
                        (t, spec.character(support[0]).times(t))
                    } else {
                        (2 * t, Character::trivial(spec.rank()))
                    };
                    objects.push(KObject::new(spec, support.clone(), twist, chi)?);
                }
                m
            }
            _ => return Err(EulerError::Undetermined(piece.label.clone())),
        };
        blocks.push(GeneratorBlock {
            label: piece.label.clone(),
            start,
            len: objects.len() - start,
            coarse_dim,
            twist: Character::trivial(spec.rank()),
        });
    }
    Ok(GeneratorCollection { objects, blocks })
}

/// Canonical generators, re-twisted block by block when the untwisted
/// collection is not semiorthogonal: each block takes the smallest character
/// whose objects pair to zero into every earlier block.
pub fn normalized_generators(
    spec: &ActionSpec,
    report: &SodReport,
) -> Result<GeneratorCollection, EulerError> {
    let mut coll = canonical_generators(spec, report)?;
    let m = gram(spec, &coll.objects)?;
    if is_unipotent_upper(&m) {
        return Ok(coll);
    }
    for b in 0..coll.blocks.len() {
        let block = coll.blocks[b].clone();
        let earlier: Vec<KObject> = coll.objects[..block.start].to_vec();
        let mut chosen = None;
        for idx in 0..1u32 << spec.rank() {
            let psi = Character::from_index(idx, spec.rank());
            let twisted: Vec<KObject> = coll.objects[block.start..block.start + block.len]
                .iter()
                .map(|o| o.tensor(psi))
                .collect();
            let mut ok = true;
            'outer: for later in &twisted {
                for prior in &earlier {
                    if euler_pairing(spec, later, prior)? != 0 {
                        ok = false;
                        break 'outer;
                    }
                }
            }
            if ok {
                chosen = Some((psi, twisted));
                break;
            }
        }
        let (psi, twisted) =
            chosen.ok_or_else(|| EulerError::NormalizationFailed(block.label.clone()))?;
        coll.objects.splice(block.start..block.start + block.len, twisted);
        coll.blocks[b].twist = psi;
    }
    Ok(coll)
}

/// Diagonal ones, zeros strictly below the diagonal.
pub fn is_unipotent_upper(m: &[Vec<i64>]) -> bool {
    (0..m.len()).all(|i| m[i][i] == 1 && (0..i).all(|j| m[i][j] == 0))
}

/// The pairing matrix of `O, O(1), …, O(m)` on `P^m`.
pub fn binomial_block(m: usize) -> Vec<Vec<i64>> {
    let m = m as i64;
    (0..=m)
        .map(|a| (0..=m).map(|b| if b >= a { binomial(m + b - a, m) } else { 0 }).collect())
        .collect()
}

/// Gram matrix of a generator collection, with block boundaries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GramMatrix {
    pub matrix: Vec<Vec<i64>>,
    pub blocks: Vec<GeneratorBlock>,
    pub objects: Vec<KObject>,
}

impl GramMatrix {
    pub fn block(&self, a: usize, b: usize) -> Vec<Vec<i64>> {
        let (ra, rb) = (&self.blocks[a], &self.blocks[b]);
        self.matrix[ra.start..ra.start + ra.len]
            .iter()
            .map(|row| row[rb.start..rb.start + rb.len].to_vec())
            .collect()
    }

    pub fn block_is_zero(&self, a: usize, b: usize) -> bool {
        self.block(a, b).iter().flatten().all(|&x| x == 0)
    }

    /// Every diagonal block equals [`binomial_block`] of its coarse
    /// dimension.
    pub fn diagonal_blocks_binomial(&self) -> bool {
        (0..self.blocks.len()).all(|b| self.block(b, b) == binomial_block(self.blocks[b].coarse_dim))
    }

    pub fn is_unipotent_upper(&self) -> bool {
        is_unipotent_upper(&self.matrix)
    }

    /// The generators as an exceptional sequence in the standard basis, one
    /// block per decomposition piece.
    pub fn to_sequence(&self) -> Result<ExceptionalSequence, EulerError> {
        let sizes: Vec<usize> = self.blocks.iter().map(|b| b.len).collect();
        let labels = self.blocks.iter().map(|b| b.label.clone()).collect();
        Ok(ExceptionalSequence::with_identity_basis(
            self.matrix.clone(),
            &sizes,
            labels,
        )?)
    }
}

/// Gram matrix of the (normalized) canonical generators of a report.
pub fn report_gram(spec: &ActionSpec, report: &SodReport) -> Result<GramMatrix, EulerError> {
    let coll = normalized_generators(spec, report)?;
    let matrix = gram(spec, &coll.objects)?;
    Ok(GramMatrix {
        matrix,
        blocks: coll.blocks,
        objects: coll.objects,
    })
}
