//! Joint eigenspace sectors and fixed loci of diagonal sign actions.
//!
//! For a subgroup `H`, two coordinates lie in the same sector when their
//! characters agree on `H`. The fixed locus `X^H` is assembled sector by
//! sector: a coordinate subspace in affine space, a linear subspace `P(V_T)`
//! in projective space, and the Fermat quadric restricted to `T` on a
//! quadric.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::group::{ActionSpec, Character, GroupElement, GroupError, Sign, SpaceKind};

/// Coordinates sharing one restricted character on a subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sector {
    /// Reduced echelon basis of the subgroup.
    pub basis: Vec<GroupElement>,
    /// Bit `j` set when the sector's character is −1 on `basis[j]`.
    pub pattern: u32,
    /// Character of the first coordinate; every coordinate in the sector
    /// agrees with it on the subgroup.
    pub character: Character,
    pub coords: Vec<usize>,
}

impl Sector {
    /// Sign of the sector on an element of the subgroup.
    pub fn sign(&self, h: GroupElement) -> Sign {
        self.character.sign(h)
    }

    pub fn is_trivial(&self) -> bool {
        self.pattern == 0
    }
}

/// Reduced row echelon basis of the span of `elements`, ascending.
pub fn subgroup_basis(rank: usize, elements: &[GroupElement]) -> Result<Vec<GroupElement>, GroupError> {
    let mut rows: Vec<u32> = Vec::new();
    for g in elements {
        if g.rank() != rank {
            return Err(GroupError::LengthMismatch(rank, g.rank()));
        }
        let mut v = g.index();
        for &b in &rows {
            v = v.min(v ^ b);
        }
        if v != 0 {
            rows.push(v);
            rows.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    // full reduction: clear each leading bit from every other row
    for i in 0..rows.len() {
        let lead = 31 - rows[i].leading_zeros();
        for j in 0..rows.len() {
            if i != j && (rows[j] >> lead) & 1 == 1 {
                rows[j] ^= rows[i];
            }
        }
    }
    rows.sort_unstable();
    Ok(rows
        .into_iter()
        .map(|v| GroupElement::from_index(v, rank))
        .collect())
}

/// Groups coordinates by the restriction of their character to the subgroup
/// generated by `subgroup`. Sectors come out in ascending pattern order, so
/// the sector where `H` acts trivially is first whenever it is nonempty.
pub fn sectors(spec: &ActionSpec, subgroup: &[GroupElement]) -> Result<Vec<Sector>, GroupError> {
    let basis = subgroup_basis(spec.rank(), subgroup)?;
    Ok(sectors_on(spec, &basis, 0..spec.num_coords()))
}

fn sectors_on(
    spec: &ActionSpec,
    basis: &[GroupElement],
    coords: impl IntoIterator<Item = usize>,
) -> Vec<Sector> {
    let mut out: Vec<Sector> = Vec::new();
    for i in coords {
        let chi = spec.character(i);
        let pattern = basis
            .iter()
            .enumerate()
            .fold(0u32, |acc, (j, &b)| acc | ((chi.flips(b) as u32) << j));
        match out.iter_mut().find(|s| s.pattern == pattern) {
            Some(s) => s.coords.push(i),
            None => out.push(Sector {
                basis: basis.to_vec(),
                pattern,
                character: chi,
                coords: vec![i],
            }),
        }
    }
    out.sort_by_key(|s| s.pattern);
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Geometry {
    /// Coordinate subspace of affine space; its dimension is the support size.
    AffineSpace,
    /// `P(V_T)` with `|T| ≥ 2`.
    ProjSpace,
    /// Smooth Fermat quadric on `T`, `|T| ≥ 3`.
    FermatSub,
    /// The two points of `x_a² + x_b² = 0`.
    PointPair,
    /// The coordinate point `P(V_{i})`.
    ReducedPoint,
    Empty,
}

/// A connected (or, for point pairs, two-point) piece of a fixed locus.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LocusPiece {
    pub geometry: Geometry,
    pub support: Vec<usize>,
    /// Sector pattern relative to the subgroup the piece was cut out by;
    /// for a single element, 0 is the `+1` eigenspace and 1 the `−1` one.
    pub sector: u32,
}

impl LocusPiece {
    pub fn dim(&self) -> i64 {
        let t = self.support.len() as i64;
        match self.geometry {
            Geometry::AffineSpace => t,
            Geometry::ProjSpace => t - 1,
            Geometry::FermatSub => t - 2,
            Geometry::PointPair | Geometry::ReducedPoint => 0,
            Geometry::Empty => -1,
        }
    }

    pub fn chi_c(&self) -> i64 {
        chi_c(self)
    }

    pub fn is_empty(&self) -> bool {
        self.geometry == Geometry::Empty
    }

    /// The whole space as a single piece.
    pub fn whole(space: SpaceKind) -> LocusPiece {
        let c = space.coordinates();
        let support: Vec<usize> = (0..c).collect();
        let geometry = match space {
            SpaceKind::Affine(_) => Geometry::AffineSpace,
            SpaceKind::Projective(_) => projective_geometry(c),
            SpaceKind::FermatQuadric(_) => fermat_geometry(c),
        };
        LocusPiece {
            geometry,
            support,
            sector: 0,
        }
    }

    /// Sign label for pieces cut out by a single element.
    pub fn sector_sign(&self) -> Sign {
        if self.sector == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn describe(&self, spec: &ActionSpec) -> String {
        let names: Vec<String> = self.support.iter().map(|&i| spec.coord_name(i)).collect();
        let t = names.join(",");
        match self.geometry {
            Geometry::AffineSpace => format!("A^{}{{{t}}}", self.support.len()),
            Geometry::ProjSpace => format!("P^{}{{{t}}}", self.dim()),
            Geometry::FermatSub => format!("Q^{}{{{t}}}", self.dim()),
            Geometry::PointPair => format!("pair{{{t}}}"),
            Geometry::ReducedPoint => format!("pt{{{t}}}"),
            Geometry::Empty => format!("empty{{{t}}}"),
        }
    }
}

impl fmt::Display for Geometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Geometry::AffineSpace => "affine_space",
            Geometry::ProjSpace => "proj_space",
            Geometry::FermatSub => "fermat_sub",
            Geometry::PointPair => "point_pair",
            Geometry::ReducedPoint => "reduced_point",
            Geometry::Empty => "empty",
        })
    }
}

fn projective_geometry(size: usize) -> Geometry {
    match size {
        0 => Geometry::Empty,
        1 => Geometry::ReducedPoint,
        _ => Geometry::ProjSpace,
    }
}

fn fermat_geometry(size: usize) -> Geometry {
    match size {
        0 | 1 => Geometry::Empty,
        2 => Geometry::PointPair,
        _ => Geometry::FermatSub,
    }
}

/// Compactly supported Euler characteristic of a piece.
pub fn chi_c(piece: &LocusPiece) -> i64 {
    match piece.geometry {
        Geometry::AffineSpace | Geometry::ReducedPoint => 1,
        Geometry::ProjSpace => piece.support.len() as i64,
        Geometry::FermatSub => {
            let d = piece.dim();
            if d % 2 == 0 {
                d + 2
            } else {
                d + 1
            }
        }
        Geometry::PointPair => 2,
        Geometry::Empty => 0,
    }
}

/// Intersects `piece` with the fixed locus of the subgroup spanned by
/// `subgroup`, by splitting its support into joint sectors.
pub fn restrict_piece(
    spec: &ActionSpec,
    piece: &LocusPiece,
    subgroup: &[GroupElement],
) -> Result<Vec<LocusPiece>, GroupError> {
    let basis = subgroup_basis(spec.rank(), subgroup)?;
    let parts = sectors_on(spec, &basis, piece.support.iter().copied());
    let pieces = match piece.geometry {
        Geometry::Empty => vec![piece.clone()],
        Geometry::AffineSpace => {
            let support = parts
                .iter()
                .find(|s| s.is_trivial())
                .map(|s| s.coords.clone())
                .unwrap_or_default();
            vec![LocusPiece {
                geometry: Geometry::AffineSpace,
                support,
                sector: 0,
            }]
        }
        Geometry::ProjSpace | Geometry::ReducedPoint => parts
            .into_iter()
            .map(|s| LocusPiece {
                geometry: projective_geometry(s.coords.len()),
                support: s.coords,
                sector: s.pattern,
            })
            .collect(),
        Geometry::FermatSub | Geometry::PointPair => parts
            .into_iter()
            .map(|s| LocusPiece {
                geometry: fermat_geometry(s.coords.len()),
                support: s.coords,
                sector: s.pattern,
            })
            .collect(),
    };
    Ok(pieces)
}

/// Fixed locus of a subgroup, one piece per joint sector. Empty pieces are
/// kept so sums over pieces see every sector.
pub fn fixed_pieces_subgroup(
    spec: &ActionSpec,
    subgroup: &[GroupElement],
) -> Result<Vec<LocusPiece>, GroupError> {
    restrict_piece(spec, &LocusPiece::whole(spec.space()), subgroup)
}

/// Fixed locus of a single element: the `+` sector piece, then the `−` one.
pub fn fixed_pieces(spec: &ActionSpec, g: GroupElement) -> Result<Vec<LocusPiece>, GroupError> {
    fixed_pieces_subgroup(spec, &[g])
}

/// `χ_c` of the fixed locus of a subgroup.
pub fn fixed_chi_c(spec: &ActionSpec, subgroup: &[GroupElement]) -> Result<i64, GroupError> {
    Ok(fixed_pieces_subgroup(spec, subgroup)?.iter().map(chi_c).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::span;

    fn p2_example() -> ActionSpec {
        ActionSpec::new(SpaceKind::Projective(2), &[vec![1, 0, 0], vec![0, 1, 0]]).unwrap()
    }

    fn quadric_surface() -> ActionSpec {
        // Q ⊂ P³, μ₂³ on the first three coordinates
        ActionSpec::new(
            SpaceKind::FermatQuadric(2),
            &[vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 0]],
        )
        .unwrap()
    }

    fn g(bits: &[u8]) -> GroupElement {
        GroupElement::from_bits(bits).unwrap()
    }

    fn piece(geometry: Geometry, support: &[usize], sector: u32) -> LocusPiece {
        LocusPiece {
            geometry,
            support: support.to_vec(),
            sector,
        }
    }

    #[test]
    fn sectors_for_single_generator() {
        let spec = p2_example();
        let s = sectors(&spec, &[g(&[1, 0])]).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s[0].coords, vec![1, 2]);
        assert_eq!(s[0].sign(g(&[1, 0])), Sign::Plus);
        assert_eq!(s[1].coords, vec![0]);
        assert_eq!(s[1].sign(g(&[1, 0])), Sign::Minus);
    }

    #[test]
    fn trivial_subgroup_has_one_sector() {
        let spec = p2_example();
        let s = sectors(&spec, &[GroupElement::identity(2)]).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].coords, vec![0, 1, 2]);
        assert_eq!(sectors(&spec, &[]).unwrap().len(), 1);
    }

    #[test]
    fn full_group_separates_distinct_characters() {
        let spec = p2_example();
        let full: Vec<_> = spec.elements().collect();
        let mut coords: Vec<Vec<usize>> = sectors(&spec, &full)
            .unwrap()
            .into_iter()
            .map(|s| s.coords)
            .collect();
        coords.sort();
        assert_eq!(coords, vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn mismatched_element_is_an_error() {
        let spec = p2_example();
        assert!(sectors(&spec, &[g(&[1])]).is_err());
    }

    #[test]
    fn fixed_pieces_p2_example() {
        let spec = p2_example();
        let pieces = fixed_pieces(&spec, g(&[1, 0])).unwrap();
        assert_eq!(
            pieces,
            vec![
                piece(Geometry::ProjSpace, &[1, 2], 0),
                piece(Geometry::ReducedPoint, &[0], 1),
            ]
        );
    }

    #[test]
    fn fixed_pieces_affine() {
        let spec = ActionSpec::new(SpaceKind::Affine(3), &[vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
        let pieces = fixed_pieces(&spec, g(&[1, 1])).unwrap();
        assert_eq!(pieces, vec![piece(Geometry::AffineSpace, &[2], 0)]);
        assert_eq!(pieces[0].dim(), 1);
    }

    #[test]
    fn fixed_pieces_quadric_weight_two() {
        let spec = quadric_surface();
        let pieces = fixed_pieces(&spec, g(&[1, 1, 0])).unwrap();
        let geoms: Vec<_> = pieces.iter().map(|p| p.geometry).collect();
        assert_eq!(geoms, vec![Geometry::PointPair, Geometry::PointPair]);
        assert_eq!(pieces[0].support, vec![2, 3]);
        assert_eq!(pieces[1].support, vec![0, 1]);
    }

    #[test]
    fn fixed_pieces_quadric_weight_one_keeps_empty_sector() {
        let spec = quadric_surface();
        let pieces = fixed_pieces(&spec, g(&[1, 0, 0])).unwrap();
        assert_eq!(
            pieces,
            vec![
                piece(Geometry::FermatSub, &[1, 2, 3], 0),
                piece(Geometry::Empty, &[0], 1),
            ]
        );
    }

    #[test]
    fn subgroup_examples() {
        let spec = p2_example();
        let whole = fixed_pieces_subgroup(&spec, &[]).unwrap();
        assert_eq!(whole, vec![LocusPiece::whole(spec.space())]);

        let full: Vec<_> = spec.elements().collect();
        let pts = fixed_pieces_subgroup(&spec, &full).unwrap();
        assert_eq!(pts.len(), 3);
        assert!(pts.iter().all(|p| p.geometry == Geometry::ReducedPoint));

        let q = quadric_surface();
        let full: Vec<_> = q.elements().collect();
        let pieces = fixed_pieces_subgroup(&q, &full).unwrap();
        assert_eq!(pieces.len(), 4);
        assert!(pieces.iter().all(|p| p.geometry == Geometry::Empty));
        assert_eq!(fixed_chi_c(&q, &full).unwrap(), 0);
    }

    #[test]
    fn chi_c_table() {
        assert_eq!(chi_c(&piece(Geometry::AffineSpace, &[0, 1, 2, 3, 4], 0)), 1);
        assert_eq!(chi_c(&piece(Geometry::ProjSpace, &[0, 1, 2], 0)), 3);
        assert_eq!(chi_c(&piece(Geometry::FermatSub, &[0, 1, 2, 3], 0)), 4);
        assert_eq!(chi_c(&piece(Geometry::FermatSub, &[0, 1, 2], 0)), 2);
        assert_eq!(chi_c(&piece(Geometry::FermatSub, &[0, 1, 2, 3, 4], 0)), 4);
        assert_eq!(chi_c(&piece(Geometry::PointPair, &[0, 1], 0)), 2);
        assert_eq!(chi_c(&piece(Geometry::Empty, &[0], 0)), 0);
    }

    fn all_projective_specs(n: usize, k: usize) -> impl Iterator<Item = ActionSpec> {
        let c = n + 1;
        (0..1u64 << (c * k)).map(move |packed| {
            let chars = (0..c)
                .map(|i| Character::from_index((packed >> (k * i)) as u32, k))
                .collect();
            ActionSpec::from_characters(SpaceKind::Projective(n), k, chars).unwrap()
        })
    }

    #[test]
    fn sectors_partition_coordinates() {
        for spec in all_projective_specs(2, 2).chain(all_projective_specs(3, 2)) {
            let elems: Vec<_> = spec.elements().collect();
            for a in &elems {
                for b in &elems {
                    let mut seen: Vec<usize> = sectors(&spec, &[*a, *b])
                        .unwrap()
                        .into_iter()
                        .flat_map(|s| s.coords)
                        .collect();
                    seen.sort();
                    assert_eq!(seen, (0..spec.num_coords()).collect::<Vec<_>>());
                }
            }
        }
    }

    #[test]
    fn projective_fixed_loci_are_complete() {
        for spec in all_projective_specs(3, 2) {
            for g in spec.elements() {
                let pieces = fixed_pieces(&spec, g).unwrap();
                let total: usize = pieces.iter().map(|p| p.support.len()).sum();
                assert_eq!(total, spec.num_coords());
                let chi: i64 = pieces.iter().map(chi_c).sum();
                assert_eq!(chi, spec.num_coords() as i64);
            }
        }
    }

    #[test]
    fn single_element_matches_spanned_subgroup() {
        let q = quadric_surface();
        for spec in all_projective_specs(2, 2).chain(std::iter::once(q)) {
            for g in spec.elements() {
                let h = span(spec.rank(), &[g]).unwrap();
                assert_eq!(
                    fixed_pieces(&spec, g).unwrap(),
                    fixed_pieces_subgroup(&spec, &h).unwrap()
                );
            }
        }
    }

    #[test]
    fn affine_dimension_law() {
        for n in 0..=6 {
            for k in 0..=n {
                let rows: Vec<Vec<u8>> = (0..k)
                    .map(|r| (0..n).map(|i| (i == r) as u8).collect())
                    .collect();
                let spec = ActionSpec::new(SpaceKind::Affine(n), &rows).unwrap();
                for g in spec.elements() {
                    let pieces = fixed_pieces(&spec, g).unwrap();
                    assert_eq!(pieces.len(), 1);
                    assert_eq!(pieces[0].dim(), (n - g.popcount()) as i64);
                }
            }
        }
    }

    #[test]
    fn basis_is_canonical() {
        let a = subgroup_basis(3, &[g(&[1, 1, 0]), g(&[0, 1, 0])]).unwrap();
        let b = subgroup_basis(3, &[g(&[1, 0, 0]), g(&[1, 1, 0]), g(&[0, 0, 0])]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, vec![g(&[1, 0, 0]), g(&[0, 1, 0])]);
    }
}
