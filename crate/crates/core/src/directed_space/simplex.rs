use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::SIMPLEX_TOLERANCE;

/// A point `(t_0, .., t_n)` of the standard simplex `Δ_n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimplexPoint(Vec<f64>);

impl SimplexPoint {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidSimplexPoint("no coordinates".into()));
        }
        if let Some(c) = coords.iter().find(|c| !(**c >= 0.0)) {
            return Err(Error::InvalidSimplexPoint(format!("negative coordinate {c}")));
        }
        let sum: f64 = coords.iter().sum();
        if (sum - 1.0).abs() > SIMPLEX_TOLERANCE {
            return Err(Error::InvalidSimplexPoint(format!("coordinates sum to {sum}")));
        }
        Ok(SimplexPoint(coords))
    }

    /// Uniformly distributed point of `Δ_n` (normalized exponentials).
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let raw: Vec<f64> = (0..=n).map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
        let sum: f64 = raw.iter().sum();
        SimplexPoint(raw.into_iter().map(|x| x / sum).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    /// Largest coordinate difference; infinite for different dimensions.
    pub fn distance(&self, other: &SimplexPoint) -> f64 {
        if self.0.len() != other.0.len() {
            return f64::INFINITY;
        }
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// `δ_k : Δ_{n-1} -> Δ_n`, inserting a zero coordinate at position `k`.
pub fn face_map(k: usize, x: &SimplexPoint) -> Result<SimplexPoint> {
    let n = x.dim() + 1;
    if k > n {
        return Err(Error::IndexOutOfRange {
            index: k,
            bound: format!("<= {n}"),
        });
    }
    let mut c = x.0.clone();
    c.insert(k, 0.0);
    Ok(SimplexPoint(c))
}

/// `σ_k : Δ_n -> Δ_{n-1}`, adding coordinates `k` and `k + 1`.
pub fn degeneracy_map(k: usize, x: &SimplexPoint) -> Result<SimplexPoint> {
    let n = x.dim();
    if k >= n {
        return Err(Error::IndexOutOfRange {
            index: k,
            bound: format!("< {n}"),
        });
    }
    let mut c = x.0.clone();
    let merged = c[k] + c[k + 1];
    c[k] = merged;
    c.remove(k + 1);
    Ok(SimplexPoint(c))
}

/// The five families of (co)simplicial identities between `δ` and `σ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdentityFamily {
    /// `δ_j δ_k = δ_k δ_{j-1}`, `k < j`.
    FaceFace,
    /// `σ_j σ_k = σ_k σ_{j+1}`, `k <= j`.
    DegeneracyDegeneracy,
    /// `σ_j δ_k = δ_k σ_{j-1}`, `k < j`.
    MixedBelow,
    /// `σ_j δ_j = id = σ_j δ_{j+1}`.
    MixedIdentity,
    /// `σ_j δ_k = δ_{k-1} σ_j`, `k > j + 1`.
    MixedAbove,
}

impl IdentityFamily {
    pub const ALL: [IdentityFamily; 5] = [
        IdentityFamily::FaceFace,
        IdentityFamily::DegeneracyDegeneracy,
        IdentityFamily::MixedBelow,
        IdentityFamily::MixedIdentity,
        IdentityFamily::MixedAbove,
    ];

    pub fn formula(self) -> &'static str {
        match self {
            IdentityFamily::FaceFace => "d_j d_k = d_k d_(j-1), k < j",
            IdentityFamily::DegeneracyDegeneracy => "s_j s_k = s_k s_(j+1), k <= j",
            IdentityFamily::MixedBelow => "s_j d_k = d_k s_(j-1), k < j",
            IdentityFamily::MixedIdentity => "s_j d_j = id = s_j d_(j+1)",
            IdentityFamily::MixedAbove => "s_j d_k = d_(k-1) s_j, k > j+1",
        }
    }

    /// Valid `(j, k)` for an input point of `Δ_n`. For the identity family
    /// `k` is unused and reported equal to `j`.
    pub fn indices(self, n: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        match self {
            IdentityFamily::FaceFace => {
                for j in 1..=n + 2 {
                    for k in 0..j {
                        out.push((j, k));
                    }
                }
            }
            IdentityFamily::DegeneracyDegeneracy => {
                for j in 0..n.saturating_sub(1) {
                    for k in 0..=j {
                        out.push((j, k));
                    }
                }
            }
            IdentityFamily::MixedBelow => {
                for j in 1..=n {
                    for k in 0..j {
                        out.push((j, k));
                    }
                }
            }
            IdentityFamily::MixedIdentity => {
                for j in 0..=n {
                    out.push((j, j));
                }
            }
            IdentityFamily::MixedAbove => {
                for j in 0..n {
                    for k in j + 2..=n + 1 {
                        out.push((j, k));
                    }
                }
            }
        }
        out
    }

    /// Largest coordinate discrepancy between both sides at `x`.
    pub fn error_at(self, j: usize, k: usize, x: &SimplexPoint) -> Result<f64> {
        let d = face_map;
        let s = degeneracy_map;
        Ok(match self {
            IdentityFamily::FaceFace => d(j, &d(k, x)?)?.distance(&d(k, &d(j - 1, x)?)?),
            IdentityFamily::DegeneracyDegeneracy => s(j, &s(k, x)?)?.distance(&s(k, &s(j + 1, x)?)?),
            IdentityFamily::MixedBelow => s(j, &d(k, x)?)?.distance(&d(k, &s(j - 1, x)?)?),
            IdentityFamily::MixedIdentity => s(j, &d(j, x)?)?
                .distance(x)
                .max(s(j, &d(j + 1, x)?)?.distance(x)),
            IdentityFamily::MixedAbove => s(j, &d(k, x)?)?.distance(&d(k - 1, &s(j, x)?)?),
        })
    }
}

/// Outcome of one identity at one `(n, j, k)` over a batch of points.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub family: IdentityFamily,
    pub n: usize,
    pub j: usize,
    pub k: usize,
    pub points: usize,
    pub max_error: f64,
}

impl IdentityCheck {
    pub fn passed(&self) -> bool {
        self.max_error <= SIMPLEX_TOLERANCE
    }
}

/// Check every identity family for input dimensions `0..=max_n` on
/// `points` random points per `(n, j, k)`.
pub fn check_simplicial_identities<R: Rng + ?Sized>(max_n: usize, points: usize, rng: &mut R) -> Vec<IdentityCheck> {
    let mut out = Vec::new();
    for family in IdentityFamily::ALL {
        for n in 0..=max_n {
            for (j, k) in family.indices(n) {
                let mut max_error = 0.0f64;
                for _ in 0..points {
                    let x = SimplexPoint::random(n, rng);
                    let e = family.error_at(j, k, &x).unwrap_or(f64::INFINITY);
                    max_error = max_error.max(e);
                }
                out.push(IdentityCheck {
                    family,
                    n,
                    j,
                    k,
                    points,
                    max_error,
                });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[f64]) -> SimplexPoint {
        SimplexPoint::new(c.to_vec()).unwrap()
    }

    #[test]
    fn face_examples() {
        assert_eq!(face_map(0, &p(&[1.0])).unwrap(), p(&[0.0, 1.0]));
        assert_eq!(face_map(2, &p(&[0.5, 0.5])).unwrap(), p(&[0.5, 0.5, 0.0]));
        assert!(matches!(face_map(3, &p(&[0.5, 0.5])), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn degeneracy_examples() {
        assert!(degeneracy_map(0, &p(&[0.3, 0.7])).unwrap().distance(&p(&[1.0])) < 1e-15);
        assert!(degeneracy_map(1, &p(&[0.2, 0.3, 0.5])).unwrap().distance(&p(&[0.2, 0.8])) < 1e-15);
        assert!(degeneracy_map(1, &p(&[0.3, 0.7])).is_err());
    }

    #[test]
    fn invalid_points() {
        assert!(SimplexPoint::new(vec![0.5, 0.6]).is_err());
        assert!(SimplexPoint::new(vec![-0.1, 1.1]).is_err());
        assert!(SimplexPoint::new(vec![f64::NAN, 1.0]).is_err());
    }
}
