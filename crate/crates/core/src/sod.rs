//! Dimension-ordered semiorthogonal decomposition of `D[X/G]` with one piece
//! per inertia component, its rank ledger, and the plan regrouping pieces by
//! group element.

use serde::{Deserialize, Serialize};

use crate::group::{ActionSpec, GroupElement, SpecDocument};
use crate::inertia::{components, CoarseType, InertiaComponent, InertiaError, SmoothStatus};
use crate::mutlat::{BlockMove, Direction, ExceptionalSequence, MutationError};

/// Sort key of a piece: dimension descending, then element weight, element
/// value, sector (`+` first) and split index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct OrderKey {
    pub neg_dim: i64,
    pub weight: usize,
    pub element: u32,
    pub sector: u32,
    pub split: u8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SodPiece {
    /// Index into [`SodReport::components`].
    pub component: usize,
    pub label: String,
    pub element: GroupElement,
    pub dim: i64,
    pub rank: i64,
    pub key: OrderKey,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementGroup {
    pub element: GroupElement,
    /// Positions in [`SodReport::order`].
    pub positions: Vec<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SodFlags {
    pub effective: bool,
    pub kernel: Vec<GroupElement>,
    /// Positions whose coarse space was not identified.
    pub undetermined: Vec<usize>,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SodReport {
    pub spec: SpecDocument,
    pub components: Vec<InertiaComponent>,
    pub order: Vec<SodPiece>,
    pub total_rank: i64,
    /// Element classes in order of first appearance.
    pub grouping: Vec<ElementGroup>,
    pub flags: SodFlags,
}

impl SodReport {
    pub fn labels(&self) -> Vec<&str> {
        self.order.iter().map(|p| p.label.as_str()).collect()
    }

    pub fn component_at(&self, position: usize) -> &InertiaComponent {
        &self.components[self.order[position].component]
    }

    /// Consecutive pieces never increase in dimension.
    pub fn is_dimension_ordered(&self) -> bool {
        self.order.windows(2).all(|w| w[0].dim >= w[1].dim)
    }

    pub fn is_grouped(&self) -> bool {
        is_grouped(&self.order.iter().map(|p| p.element).collect::<Vec<_>>())
    }
}

/// Orders the inertia components of `spec` into a semiorthogonal
/// decomposition.
pub fn assemble(spec: &ActionSpec) -> Result<SodReport, InertiaError> {
    let comps = components(spec)?;
    let mut order: Vec<SodPiece> = comps
        .iter()
        .enumerate()
        .map(|(i, c)| SodPiece {
            component: i,
            label: c.label(spec),
            element: c.element,
            dim: c.coarse_dim,
            rank: c.rank,
            key: OrderKey {
                neg_dim: -c.coarse_dim,
                weight: spec.weight(c.element),
                element: c.element.index(),
                sector: c.piece.sector,
                split: c.split_index.unwrap_or(0),
            },
        })
        .collect();
    order.sort_by_key(|p| p.key);

    let total_rank = order.iter().map(|p| p.rank).sum();
    let grouping = group_positions(&order.iter().map(|p| p.element).collect::<Vec<_>>());

    let mut flags = SodFlags {
        effective: spec.is_effective(),
        kernel: spec.kernel().to_vec(),
        ..SodFlags::default()
    };
    if !flags.effective {
        flags.warnings.push(format!(
            "action is not effective: {} elements act trivially",
            spec.kernel().len()
        ));
    }
    for (pos, p) in order.iter().enumerate() {
        let c = &comps[p.component];
        if matches!(c.coarse_type, CoarseType::Undetermined(_))
            || c.smooth_status == SmoothStatus::Unknown
        {
            flags.undetermined.push(pos);
            flags.warnings.push(format!(
                "coarse space of {} not identified; smoothness unverified",
                p.label
            ));
        }
    }

    Ok(SodReport {
        spec: spec.to_document(),
        components: comps,
        order,
        total_rank,
        grouping,
        flags,
    })
}

fn group_positions(elements: &[GroupElement]) -> Vec<ElementGroup> {
    let mut groups: Vec<ElementGroup> = Vec::new();
    for (pos, &g) in elements.iter().enumerate() {
        match groups.iter_mut().find(|grp| grp.element == g) {
            Some(grp) => grp.positions.push(pos),
            None => groups.push(ElementGroup {
                element: g,
                positions: vec![pos],
            }),
        }
    }
    groups
}

fn is_grouped(elements: &[GroupElement]) -> bool {
    let mut seen: Vec<GroupElement> = Vec::new();
    for w in elements.windows(2) {
        if w[0] != w[1] {
            if seen.contains(&w[1]) {
                return false;
            }
            seen.push(w[0]);
        }
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlannedMove {
    /// Block position before the move.
    pub block: usize,
    pub direction: Direction,
    /// `Some(true)` when both-direction pairings between the two blocks
    /// vanish; `None` when no pairing data was supplied.
    pub orthogonal: Option<bool>,
}

impl PlannedMove {
    pub fn as_block_move(&self) -> BlockMove {
        BlockMove {
            block: self.block,
            direction: self.direction,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MutationPlan {
    pub moves: Vec<PlannedMove>,
    /// Grouped order, as positions of the report's order.
    pub target: Vec<usize>,
}

impl MutationPlan {
    pub fn script(&self) -> Vec<BlockMove> {
        self.moves.iter().map(PlannedMove::as_block_move).collect()
    }

    /// Replays the moves as permutations of `items`.
    pub fn permute<T: Clone>(&self, items: &[T]) -> Vec<T> {
        let mut out = items.to_vec();
        for m in &self.moves {
            match m.direction {
                Direction::Left => out.swap(m.block - 1, m.block),
                Direction::Right => out.swap(m.block, m.block + 1),
            }
        }
        out
    }
}

/// Plans leftward adjacent block moves making all pieces of each element
/// contiguous, with element classes ordered by first occurrence. When a
/// sequence with one block per piece is supplied, each move is replayed on
/// it and marked orthogonal or not.
pub fn msodc_plan(
    report: &SodReport,
    sequence: Option<&ExceptionalSequence>,
) -> Result<MutationPlan, MutationError> {
    let target: Vec<usize> = report
        .grouping
        .iter()
        .flat_map(|g| g.positions.iter().copied())
        .collect();
    let mut current: Vec<usize> = (0..report.order.len()).collect();
    let mut moves = Vec::new();
    for (t, &want) in target.iter().enumerate() {
        let mut s = current.iter().position(|&p| p == want).expect("target is a permutation");
        while s > t {
            moves.push(PlannedMove {
                block: s,
                direction: Direction::Left,
                orthogonal: None,
            });
            current.swap(s - 1, s);
            s -= 1;
        }
    }
    if let Some(seq) = sequence {
        let mut state = seq.clone();
        for m in &mut moves {
            let (next, orthogonal) = state.move_block(m.as_block_move())?;
            m.orthogonal = Some(orthogonal);
            state = next;
        }
    }
    Ok(MutationPlan { moves, target })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::SpaceKind;

    fn p2_example() -> ActionSpec {
        ActionSpec::new(SpaceKind::Projective(2), &[vec![1, 0, 0], vec![0, 1, 0]]).unwrap()
    }

    fn etale(n: usize, k: usize) -> ActionSpec {
        let rows: Vec<Vec<u8>> = (0..k)
            .map(|r| (0..n).map(|i| (i == r) as u8).collect())
            .collect();
        ActionSpec::new(SpaceKind::Affine(n), &rows).unwrap()
    }

    #[test]
    fn p2_example_order() {
        let report = assemble(&p2_example()).unwrap();
        assert_eq!(
            report.labels(),
            vec![
                "P^2{x,y,z}@(0,0)",
                "P^1{y,z}@(1,0)",
                "P^1{x,z}@(0,1)",
                "P^1{x,y}@(1,1)",
                "pt{x}@(1,0)",
                "pt{y}@(0,1)",
                "pt{z}@(1,1)",
            ]
        );
        assert_eq!(report.total_rank, 12);
        assert!(report.is_dimension_ordered());
        assert!(!report.is_grouped());
        assert!(report.flags.effective);
        assert!(report.flags.warnings.is_empty());
    }

    #[test]
    fn p2_example_plan() {
        let report = assemble(&p2_example()).unwrap();
        let plan = msodc_plan(&report, None).unwrap();
        let blocks: Vec<usize> = plan.moves.iter().map(|m| m.block).collect();
        assert_eq!(blocks, vec![4, 3, 5]);
        assert!(plan.moves.iter().all(|m| m.direction == Direction::Left));
        assert!(plan.moves.iter().all(|m| m.orthogonal.is_none()));
        let labels = report.labels();
        let grouped: Vec<&str> = plan.target.iter().map(|&p| labels[p]).collect();
        assert_eq!(
            grouped,
            vec![
                "P^2{x,y,z}@(0,0)",
                "P^1{y,z}@(1,0)",
                "pt{x}@(1,0)",
                "P^1{x,z}@(0,1)",
                "pt{y}@(0,1)",
                "P^1{x,y}@(1,1)",
                "pt{z}@(1,1)",
            ]
        );
        assert_eq!(plan.permute(&labels), grouped);
    }

    #[test]
    fn trivial_group_single_piece() {
        let spec = ActionSpec::new(SpaceKind::Projective(3), &[]).unwrap();
        let report = assemble(&spec).unwrap();
        assert_eq!(report.order.len(), 1);
        assert_eq!(report.total_rank, 4);
        assert!(msodc_plan(&report, None).unwrap().moves.is_empty());
    }

    #[test]
    fn etale_counts() {
        for n in 0..=6 {
            for k in 0..=n {
                let report = assemble(&etale(n, k)).unwrap();
                assert_eq!(report.order.len(), 1 << k);
                assert_eq!(report.total_rank, 1 << k);
                for j in 0..=k {
                    let count = report.order.iter().filter(|p| p.dim == (n - j) as i64).count();
                    assert_eq!(count, binomial(k, j));
                }
                assert!(report.is_dimension_ordered());
                assert!(msodc_plan(&report, None).unwrap().moves.is_empty());
            }
        }
    }

    #[test]
    fn plan_is_idempotent() {
        let report = assemble(&p2_example()).unwrap();
        let plan = msodc_plan(&report, None).unwrap();
        let mut regrouped = report.clone();
        regrouped.order = plan.permute(&report.order);
        regrouped.grouping =
            group_positions(&regrouped.order.iter().map(|p| p.element).collect::<Vec<_>>());
        assert!(regrouped.is_grouped());
        assert!(msodc_plan(&regrouped, None).unwrap().moves.is_empty());
    }

    #[test]
    fn single_nontrivial_element_needs_no_moves() {
        let spec = ActionSpec::new(SpaceKind::Projective(3), &[vec![1, 1, 0, 0]]).unwrap();
        let report = assemble(&spec).unwrap();
        assert!(msodc_plan(&report, None).unwrap().moves.is_empty());
    }

    #[test]
    fn report_round_trips() {
        let report = assemble(&p2_example()).unwrap();
        let text = serde_json::to_string(&report).unwrap();
        let back: SodReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, report);
    }

    fn binomial(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }
}
