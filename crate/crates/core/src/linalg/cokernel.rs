use super::snf::snf_row_transform;
use super::IntMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

/// Finitely generated abelian group: free rank plus invariant factors > 1
/// forming a divisibility chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianPresentation {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianPresentation {
    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn torsion_strings(&self) -> Vec<String> {
        self.torsion.iter().map(|t| t.to_string()).collect()
    }
}

/// Element of a cokernel in normalized coordinates: free coordinates
/// followed by torsion residues tagged with their moduli.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientCoords {
    pub free: Vec<BigInt>,
    pub torsion: Vec<(BigInt, BigInt)>,
}

impl QuotientCoords {
    pub fn is_zero(&self) -> bool {
        self.free.iter().all(Zero::is_zero) && self.torsion.iter().all(|(_, v)| v.is_zero())
    }

    pub fn has_torsion_part(&self) -> bool {
        self.torsion.iter().any(|(_, v)| !v.is_zero())
    }

    pub fn negated(&self) -> QuotientCoords {
        QuotientCoords {
            free: self.free.iter().map(|v| -v).collect(),
            torsion: self
                .torsion
                .iter()
                .map(|(d, v)| (d.clone(), (-v).mod_floor(d)))
                .collect(),
        }
    }

    pub fn plus(&self, other: &QuotientCoords) -> QuotientCoords {
        assert_eq!(self.free.len(), other.free.len());
        assert_eq!(self.torsion.len(), other.torsion.len());
        QuotientCoords {
            free: self
                .free
                .iter()
                .zip(&other.free)
                .map(|(a, b)| a + b)
                .collect(),
            torsion: self
                .torsion
                .iter()
                .zip(&other.torsion)
                .map(|((d, a), (d2, b))| {
                    assert_eq!(d, d2, "mismatched torsion moduli");
                    (d.clone(), (a + b).mod_floor(d))
                })
                .collect(),
        }
    }
}

/// JSON-friendly rendering (decimal strings keep the schema exact).
#[derive(Clone, Debug, Serialize)]
pub struct QuotientCoordsDoc {
    pub free: Vec<String>,
    pub torsion: Vec<[String; 2]>,
}

impl From<&QuotientCoords> for QuotientCoordsDoc {
    fn from(q: &QuotientCoords) -> Self {
        QuotientCoordsDoc {
            free: q.free.iter().map(|v| v.to_string()).collect(),
            torsion: q
                .torsion
                .iter()
                .map(|(d, v)| [d.to_string(), v.to_string()])
                .collect(),
        }
    }
}

/// Reduction of ambient vectors to cokernel coordinates, through the row
/// transform of the Smith form.
#[derive(Clone, Debug)]
pub struct CokernelMap {
    u: IntMatrix,
    diag: Vec<BigInt>,
    rows: usize,
}

impl CokernelMap {
    /// Sends a vector of length `rows(M)` to its class in `Z^rows / col(M)`.
    pub fn reduce(&self, y: &[BigInt]) -> QuotientCoords {
        assert_eq!(y.len(), self.rows, "vector length mismatch in reduce");
        let w = self.u.mul_vec(y);
        let rank = self.diag.len();
        let free = w[rank..].to_vec();
        let torsion = self
            .diag
            .iter()
            .zip(&w)
            .filter(|(d, _)| !d.is_one())
            .map(|(d, wi)| (d.clone(), wi.mod_floor(d)))
            .collect();
        QuotientCoords { free, torsion }
    }

    pub fn ambient_dim(&self) -> usize {
        self.rows
    }
}

/// Cokernel of an integer matrix as rank + invariant factors, with the
/// reduction map onto the quotient coordinates.
pub fn cokernel(m: &IntMatrix) -> (AbelianPresentation, CokernelMap) {
    let (diag, u) = snf_row_transform(m);
    let rank = m.rows() - diag.len();
    let torsion = diag.iter().filter(|d| !d.is_one()).cloned().collect();
    (
        AbelianPresentation { rank, torsion },
        CokernelMap {
            u,
            diag,
            rows: m.rows(),
        },
    )
}
