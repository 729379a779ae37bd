//! Components of the inertia stack `IX = ⊔_g [X^g / G]` and the coarse
//! moduli of each.
//!
//! The rank of a component is `χ_c` of its coarse space, computed by
//! Burnside averaging over the group. The coarse type is identified only
//! where the residual sign group makes the quotient recognisable.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{f2_rank, ActionSpec, GroupElement, GroupError};
use crate::loci::{fixed_pieces, restrict_piece, Geometry, LocusPiece};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InertiaError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("Burnside sum {sum} over {order} elements is not integral for component {component}")]
    NonIntegralBurnside {
        component: String,
        sum: i64,
        order: u64,
    },
    #[error("rank {rank} of {component} disagrees with its coarse type {coarse}")]
    RankMismatch {
        component: String,
        rank: i64,
        coarse: CoarseType,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", content = "dim", rename_all = "snake_case")]
pub enum CoarseType {
    AffineSpace(usize),
    ProjSpace(usize),
    Point,
    Undetermined(i64),
}

impl fmt::Display for CoarseType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoarseType::AffineSpace(m) => write!(f, "A^{m}"),
            CoarseType::ProjSpace(m) => write!(f, "P^{m}"),
            CoarseType::Point => write!(f, "pt"),
            CoarseType::Undetermined(d) => write!(f, "?^{d}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SmoothStatus {
    Smooth,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InertiaComponent {
    pub element: GroupElement,
    pub piece: LocusPiece,
    /// `Some(1)`/`Some(2)` for the two halves of a point pair no group
    /// element swaps.
    pub split_index: Option<u8>,
    pub coarse_dim: i64,
    pub rank: i64,
    pub coarse_type: CoarseType,
    pub smooth_status: SmoothStatus,
}

impl InertiaComponent {
    pub fn label(&self, spec: &ActionSpec) -> String {
        let mut s = format!("{}@{}", self.piece.describe(spec), self.element);
        if let Some(i) = self.split_index {
            s.push_str(&format!("#{i}"));
        }
        s
    }
}

/// Image of `G` in the sign group `(μ₂)^T` of a coordinate subset.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResidualSigns {
    pub support_size: usize,
    /// F₂-dimension of the image.
    pub dim: usize,
    /// Dimension of the image together with the global scalar `−1`.
    pub dim_with_scalar: usize,
}

impl ResidualSigns {
    pub fn of(spec: &ActionSpec, support: &[usize]) -> ResidualSigns {
        let rows = restricted_rows(spec, support);
        let ones = if support.is_empty() {
            0
        } else {
            u64::MAX >> (64 - support.len())
        };
        ResidualSigns {
            support_size: support.len(),
            dim: f2_rank(rows.iter().copied()),
            dim_with_scalar: f2_rank(rows.iter().copied().chain([ones])),
        }
    }

    /// Every sign change of `T` is realised up to a global scalar.
    pub fn is_full(&self) -> bool {
        self.dim_with_scalar == self.support_size
    }

    /// `G` acts on `P(V_T)` trivially.
    pub fn acts_by_scalars(&self) -> bool {
        self.dim_with_scalar <= 1
    }

    /// The image is generated by sign changes of single coordinates.
    pub fn is_reflection_group(&self, spec: &ActionSpec, support: &[usize]) -> bool {
        let rows = restricted_rows(spec, support);
        let reflections: Vec<u64> = (0..support.len())
            .map(|j| 1u64 << j)
            .filter(|&e| f2_rank(rows.iter().copied().chain([e])) == self.dim)
            .collect();
        f2_rank(reflections) == self.dim
    }
}

/// Action matrix rows restricted to the columns in `support`, packed.
fn restricted_rows(spec: &ActionSpec, support: &[usize]) -> Vec<u64> {
    (0..spec.rank())
        .map(|r| {
            support
                .iter()
                .enumerate()
                .fold(0u64, |acc, (j, &i)| acc | ((spec.character(i).get(r) as u64) << j))
        })
        .collect()
}

/// Enumerates inertia components: one per nonempty fixed piece of each
/// element, with unswapped point pairs split in two.
pub fn components(spec: &ActionSpec) -> Result<Vec<InertiaComponent>, InertiaError> {
    let mut out = Vec::new();
    for g in spec.elements() {
        for piece in fixed_pieces(spec, g)? {
            if piece.is_empty() {
                continue;
            }
            let halves: Vec<Option<u8>> = if piece.geometry == Geometry::PointPair
                && !pair_is_swapped(spec, &piece)
            {
                vec![Some(1), Some(2)]
            } else {
                vec![None]
            };
            for split_index in halves {
                let (coarse_type, smooth_status) = classify(spec, &piece);
                let mut comp = InertiaComponent {
                    element: g,
                    coarse_dim: piece.dim(),
                    piece: piece.clone(),
                    split_index,
                    rank: 0,
                    coarse_type,
                    smooth_status,
                };
                comp.rank = coarse_chi(spec, &comp)?;
                check_rank(spec, &comp)?;
                out.push(comp);
            }
        }
    }
    Ok(out)
}

/// Some element exchanges the two points of `x_a² + x_b² = 0`.
pub fn pair_is_swapped(spec: &ActionSpec, piece: &LocusPiece) -> bool {
    debug_assert_eq!(piece.support.len(), 2);
    spec.character(piece.support[0]) != spec.character(piece.support[1])
}

/// `χ_c` of the component's coarse space:
/// `(1/|G|) Σ_h χ_c(C ∩ X^h)`.
pub fn coarse_chi(spec: &ActionSpec, comp: &InertiaComponent) -> Result<i64, InertiaError> {
    let sum = burnside_sum(spec, comp.element, &comp.piece)?;
    let order = spec.order();
    let parts = if comp.split_index.is_some() { 2 } else { 1 };
    let denom = order as i64 * parts;
    if sum % denom != 0 {
        return Err(InertiaError::NonIntegralBurnside {
            component: comp.label(spec),
            sum,
            order,
        });
    }
    Ok(sum / denom)
}

/// `Σ_h χ_c(C ∩ X^h)` for the piece `C` of `X^g`.
pub fn burnside_sum(
    spec: &ActionSpec,
    g: GroupElement,
    piece: &LocusPiece,
) -> Result<i64, GroupError> {
    let mut sum = 0;
    for h in spec.elements() {
        sum += restrict_piece(spec, piece, &[g, h])?
            .iter()
            .map(LocusPiece::chi_c)
            .sum::<i64>();
    }
    Ok(sum)
}

/// Identifies the coarse space of a piece's quotient where the residual
/// sign group makes it recognisable.
pub fn coarse_type(spec: &ActionSpec, comp: &InertiaComponent) -> (CoarseType, SmoothStatus) {
    classify(spec, &comp.piece)
}

fn classify(spec: &ActionSpec, piece: &LocusPiece) -> (CoarseType, SmoothStatus) {
    use SmoothStatus::*;
    let dim = piece.dim();
    if dim == 0 {
        return (CoarseType::Point, Smooth);
    }
    let t = &piece.support;
    let residual = ResidualSigns::of(spec, t);
    match piece.geometry {
        Geometry::AffineSpace => {
            if residual.is_reflection_group(spec, t) {
                (CoarseType::AffineSpace(t.len()), Smooth)
            } else {
                (CoarseType::Undetermined(dim), Unknown)
            }
        }
        Geometry::ProjSpace => {
            if residual.is_full() || residual.acts_by_scalars() || t.len() <= 2 {
                (CoarseType::ProjSpace(t.len() - 1), Smooth)
            } else {
                (CoarseType::Undetermined(dim), Unknown)
            }
        }
        Geometry::FermatSub => {
            if residual.is_full() {
                (CoarseType::ProjSpace(t.len() - 2), Smooth)
            } else {
                (CoarseType::Undetermined(dim), Unknown)
            }
        }
        Geometry::PointPair | Geometry::ReducedPoint | Geometry::Empty => {
            (CoarseType::Undetermined(dim), Unknown)
        }
    }
}

fn check_rank(spec: &ActionSpec, comp: &InertiaComponent) -> Result<(), InertiaError> {
    let expected = match comp.coarse_type {
        CoarseType::ProjSpace(m) => Some(m as i64 + 1),
        CoarseType::AffineSpace(_) | CoarseType::Point => Some(1),
        CoarseType::Undetermined(_) => None,
    };
    if comp.rank >= 1 && expected.is_none_or(|r| r == comp.rank) {
        Ok(())
    } else {
        Err(InertiaError::RankMismatch {
            component: comp.label(spec),
            rank: comp.rank,
            coarse: comp.coarse_type,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::SpaceKind;

    fn p2_example() -> ActionSpec {
        ActionSpec::new(SpaceKind::Projective(2), &[vec![1, 0, 0], vec![0, 1, 0]]).unwrap()
    }

    fn quadric(q_dim: usize) -> ActionSpec {
        let c = q_dim + 2;
        let rows: Vec<Vec<u8>> = (0..q_dim + 1)
            .map(|r| (0..c).map(|i| (i == r) as u8).collect())
            .collect();
        ActionSpec::new(SpaceKind::FermatQuadric(q_dim), &rows).unwrap()
    }

    fn g(bits: &[u8]) -> GroupElement {
        GroupElement::from_bits(bits).unwrap()
    }

    #[test]
    fn p2_example_has_seven_components() {
        let spec = p2_example();
        let comps = components(&spec).unwrap();
        assert_eq!(comps.len(), 7);
        let dims: Vec<i64> = comps.iter().map(|c| c.coarse_dim).collect();
        assert_eq!(dims.iter().filter(|&&d| d == 2).count(), 1);
        assert_eq!(dims.iter().filter(|&&d| d == 1).count(), 3);
        assert_eq!(dims.iter().filter(|&&d| d == 0).count(), 3);
        let plane = comps.iter().find(|c| c.coarse_dim == 2).unwrap();
        assert!(plane.element.is_identity());
        assert_eq!(plane.rank, 3);
        assert_eq!(plane.coarse_type, CoarseType::ProjSpace(2));
        for line in comps.iter().filter(|c| c.coarse_dim == 1) {
            assert_eq!(line.rank, 2);
            assert_eq!(line.coarse_type, CoarseType::ProjSpace(1));
        }
        assert_eq!(comps.iter().map(|c| c.rank).sum::<i64>(), 12);
    }

    #[test]
    fn etale_preset_components() {
        for n in 0..=6 {
            for k in 0..=n {
                let rows: Vec<Vec<u8>> = (0..k)
                    .map(|r| (0..n).map(|i| (i == r) as u8).collect())
                    .collect();
                let spec = ActionSpec::new(SpaceKind::Affine(n), &rows).unwrap();
                let comps = components(&spec).unwrap();
                assert_eq!(comps.len(), 1 << k);
                for c in &comps {
                    assert_eq!(c.coarse_dim, (n - c.element.popcount()) as i64);
                    assert_eq!(c.rank, 1);
                    assert_eq!(c.smooth_status, SmoothStatus::Smooth);
                }
            }
        }
    }

    #[test]
    fn quadric_pairs_merge() {
        let spec = quadric(2);
        let comps = components(&spec).unwrap();
        let of_g: Vec<_> = comps.iter().filter(|c| c.element == g(&[1, 1, 0])).collect();
        assert_eq!(of_g.len(), 2);
        for c in of_g {
            assert_eq!(c.piece.geometry, Geometry::PointPair);
            assert_eq!(c.split_index, None);
            assert_eq!(c.rank, 1);
            assert_eq!(c.coarse_type, CoarseType::Point);
        }
    }

    #[test]
    fn unswapped_pair_splits() {
        // conic x²+y²+z² with only z negated: the pair on {x,y} is fixed
        // pointwise by the whole group
        let spec = ActionSpec::new(SpaceKind::FermatQuadric(1), &[vec![0, 0, 1]]).unwrap();
        let comps = components(&spec).unwrap();
        let split: Vec<_> = comps.iter().filter(|c| c.split_index.is_some()).collect();
        assert_eq!(split.len(), 2);
        assert_eq!(split[0].piece, split[1].piece);
        assert_eq!(split[0].element, split[1].element);
        assert!(split.iter().all(|c| c.rank == 1));
    }

    #[test]
    fn burnside_examples() {
        let spec = p2_example();
        let comps = components(&spec).unwrap();
        let plane = &comps[0];
        assert_eq!(burnside_sum(&spec, plane.element, &plane.piece).unwrap(), 12);
        let line = comps
            .iter()
            .find(|c| c.element == g(&[1, 0]) && c.coarse_dim == 1)
            .unwrap();
        assert_eq!(burnside_sum(&spec, line.element, &line.piece).unwrap(), 8);
        assert_eq!(coarse_chi(&spec, line).unwrap(), 2);

        let q = quadric(2);
        let comps = components(&q).unwrap();
        let conic = comps
            .iter()
            .find(|c| c.element == g(&[1, 0, 0]))
            .unwrap();
        assert_eq!(conic.piece.geometry, Geometry::FermatSub);
        assert_eq!(burnside_sum(&q, conic.element, &conic.piece).unwrap(), 16);
        assert_eq!(conic.rank, 2);
    }

    #[test]
    fn coarse_types() {
        let spec = p2_example();
        let comps = components(&spec).unwrap();
        assert_eq!(coarse_type(&spec, &comps[0]).0, CoarseType::ProjSpace(2));

        let q = quadric(2);
        let comps = components(&q).unwrap();
        assert_eq!(comps[0].coarse_type, CoarseType::ProjSpace(2));
        assert_eq!(comps[0].rank, 3);

        // one nontrivial residual sign on the plane: P(2,1,1), singular
        let one_flip = ActionSpec::new(SpaceKind::Projective(2), &[vec![1, 0, 0]]).unwrap();
        let comps = components(&one_flip).unwrap();
        assert_eq!(
            coarse_type(&one_flip, &comps[0]),
            (CoarseType::Undetermined(2), SmoothStatus::Unknown)
        );
        assert_eq!(comps[0].rank, 3);

        // the group acts on the +1 sector of P³ trivially
        let p3 = ActionSpec::new(SpaceKind::Projective(3), &[vec![1, 0, 0, 0]]).unwrap();
        let comps = components(&p3).unwrap();
        let sector = comps
            .iter()
            .find(|c| !c.element.is_identity() && c.piece.support.len() == 3)
            .unwrap();
        assert_eq!(coarse_type(&p3, sector).0, CoarseType::ProjSpace(2));
    }

    #[test]
    fn trivial_group_keeps_projective_space() {
        let spec = ActionSpec::new(SpaceKind::Projective(2), &[]).unwrap();
        let comps = components(&spec).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].coarse_type, CoarseType::ProjSpace(2));
        assert_eq!(comps[0].rank, 3);
    }

    #[test]
    fn affine_non_reflection_quotient_is_flagged() {
        // −1 on A² gives the A1 cone
        let spec = ActionSpec::new(SpaceKind::Affine(2), &[vec![1, 1]]).unwrap();
        let comps = components(&spec).unwrap();
        assert_eq!(comps[0].coarse_type, CoarseType::Undetermined(2));
        assert_eq!(comps[0].smooth_status, SmoothStatus::Unknown);
        assert_eq!(comps[0].rank, 1);
    }

    #[test]
    fn ranks_match_coarse_types_exhaustively() {
        for n in 1..=3usize {
            for k in 0..=2usize {
                let c = n + 1;
                for packed in 0..1u64 << (c * k) {
                    let chars = (0..c)
                        .map(|i| {
                            crate::group::Character::from_index((packed >> (k * i)) as u32, k)
                        })
                        .collect();
                    let spec =
                        ActionSpec::from_characters(SpaceKind::Projective(n), k, chars).unwrap();
                    let comps = components(&spec).unwrap();
                    let total: i64 = comps.iter().map(|c| c.rank).sum();
                    assert_eq!(total, c as i64 * spec.order() as i64);
                }
            }
        }
    }
}
