//! Built-in action specifications.

use std::fmt;

use thiserror::Error;

use crate::group::{ActionSpec, GroupError, SpaceKind};

#[derive(Debug, Error)]
pub enum PresetError {
    #[error("unknown preset {0:?} (expected etale, p2-example, pn-full or quadric)")]
    Unknown(String),
    #[error("preset {preset} needs --{flag}")]
    MissingParameter { preset: &'static str, flag: &'static str },
    #[error("preset etale needs 0 <= k <= n, got n={n}, k={k}")]
    EtaleRange { n: usize, k: usize },
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Named families of diagonal actions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preset {
    /// `μ₂^k` on `A^n` negating the first `k` coordinates.
    Etale { n: usize, k: usize },
    /// `μ₂²` on `P²` negating `x` and `y` separately.
    P2Example,
    /// `μ₂^n` on `P^n` negating each of the first `n` coordinates.
    PnFull { n: usize },
    /// `μ₂^{d+1}` on the Fermat quadric `Q^d ⊂ P^{d+1}`, negating each of the
    /// first `d + 1` coordinates.
    Quadric { q_dim: usize },
}

impl Preset {
    pub fn parse(
        name: &str,
        n: Option<usize>,
        k: Option<usize>,
        q_dim: Option<usize>,
    ) -> Result<Preset, PresetError> {
        let need = |v: Option<usize>, preset, flag| {
            v.ok_or(PresetError::MissingParameter { preset, flag })
        };
        match name {
            "etale" => Ok(Preset::Etale {
                n: need(n, "etale", "n")?,
                k: need(k, "etale", "k")?,
            }),
            "p2-example" => Ok(Preset::P2Example),
            "pn-full" => Ok(Preset::PnFull {
                n: need(n, "pn-full", "n")?,
            }),
            "quadric" => Ok(Preset::Quadric {
                q_dim: need(q_dim, "quadric", "q-dim")?,
            }),
            other => Err(PresetError::Unknown(other.to_string())),
        }
    }

    pub fn spec(&self) -> Result<ActionSpec, PresetError> {
        match *self {
            Preset::Etale { n, k } => {
                if k > n {
                    return Err(PresetError::EtaleRange { n, k });
                }
                Ok(ActionSpec::new(SpaceKind::Affine(n), &diagonal_rows(k, n))?)
            }
            Preset::P2Example => Ok(ActionSpec::new(SpaceKind::Projective(2), &diagonal_rows(2, 3))?),
            Preset::PnFull { n } => Ok(ActionSpec::new(SpaceKind::Projective(n), &diagonal_rows(n, n + 1))?),
            Preset::Quadric { q_dim } => Ok(ActionSpec::new(
                SpaceKind::FermatQuadric(q_dim),
                &diagonal_rows(q_dim + 1, q_dim + 2),
            )?),
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Preset::Etale { n, k } => write!(f, "etale(n={n}, k={k})"),
            Preset::P2Example => write!(f, "p2-example"),
            Preset::PnFull { n } => write!(f, "pn-full(n={n})"),
            Preset::Quadric { q_dim } => write!(f, "quadric(q_dim={q_dim})"),
        }
    }
}

/// `k` rows over `c` columns, row `r` negating coordinate `r`.
fn diagonal_rows(k: usize, c: usize) -> Vec<Vec<u8>> {
    (0..k)
        .map(|r| (0..c).map(|i| (i == r) as u8).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_build() {
        let p2 = Preset::P2Example.spec().unwrap();
        assert_eq!(p2, Preset::PnFull { n: 2 }.spec().unwrap());
        assert_eq!(p2.rows(), vec![vec![1, 0, 0], vec![0, 1, 0]]);

        let q = Preset::Quadric { q_dim: 2 }.spec().unwrap();
        assert_eq!(q.num_coords(), 4);
        assert_eq!(q.rank(), 3);
        assert!(q.is_effective());

        let e = Preset::Etale { n: 3, k: 2 }.spec().unwrap();
        assert_eq!(e.space(), SpaceKind::Affine(3));
        assert!(Preset::Etale { n: 1, k: 2 }.spec().is_err());
    }

    #[test]
    fn parse_requires_parameters() {
        assert_eq!(
            Preset::parse("etale", Some(4), Some(3), None).unwrap(),
            Preset::Etale { n: 4, k: 3 }
        );
        assert!(matches!(
            Preset::parse("etale", Some(4), None, None),
            Err(PresetError::MissingParameter { flag: "k", .. })
        ));
        assert!(matches!(
            Preset::parse("nope", None, None, None),
            Err(PresetError::Unknown(_))
        ));
    }
}
