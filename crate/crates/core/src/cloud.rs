//! Metric inputs: Euclidean point clouds and precomputed distance matrices.
//!
//! Coordinates are exact rationals. Decimal text is parsed digit-for-digit
//! and `f64` inputs convert to their exact binary value, so the comparison
//! `d(x, x') <= r` is decided without rounding (squared distances are
//! compared against `r²`).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::space::Space;
use crate::vertex::Vertex;

/// Parses decimal text (`-1.25`, `3`, `.5`, `2.5e-3`) into an exact rational.
pub fn parse_decimal(text: &str) -> Result<BigRational> {
    let bad = || Error::input(format!("not a decimal number: {text:?}"));
    let s = text.trim();
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let exp: i32 = s[pos + 1..].parse().map_err(|_| bad())?;
            (&s[..pos], exp)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.as_bytes().first() {
        Some(b'-') => (true, &mantissa[1..]),
        Some(b'+') => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let all: String = format!("{int_part}{frac_part}");
    let numer: BigInt = if all.is_empty() { BigInt::zero() } else { all.parse().map_err(|_| bad())? };
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut value = if scale >= 0 {
        BigRational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(numer, num_traits::pow(ten, (-scale) as usize))
    };
    if negative {
        value = -value;
    }
    Ok(value)
}

/// Exact rational for a finite `f64`.
pub fn rational_from_f64(x: f64) -> Result<BigRational> {
    BigRational::from_float(x).ok_or_else(|| Error::input(format!("non-finite number {x}")))
}

#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    points: Vec<Vec<BigRational>>,
    labels: Vec<Vertex>,
}

impl PointCloud {
    /// Points labelled `0..n` unless `labels` is given.
    pub fn new(points: Vec<Vec<BigRational>>, labels: Option<Vec<Vertex>>) -> Result<PointCloud> {
        if let Some(first) = points.first() {
            let dim = first.len();
            if let Some((k, p)) = points.iter().enumerate().find(|(_, p)| p.len() != dim) {
                return Err(Error::input(format!(
                    "point {k} has dimension {} but point 0 has dimension {dim}",
                    p.len()
                )));
            }
        }
        let labels = match labels {
            Some(l) if l.len() != points.len() => {
                return Err(Error::input(format!("{} labels for {} points", l.len(), points.len())))
            }
            Some(l) => l,
            None => (0..points.len()).map(Vertex::from).collect(),
        };
        let distinct: std::collections::BTreeSet<&Vertex> = labels.iter().collect();
        if distinct.len() != labels.len() {
            return Err(Error::input("duplicate point labels"));
        }
        Ok(PointCloud { points, labels })
    }

    pub fn from_f64(points: &[Vec<f64>]) -> Result<PointCloud> {
        let pts = points
            .iter()
            .map(|p| p.iter().map(|&x| rational_from_f64(x)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        PointCloud::new(pts, None)
    }

    pub fn from_decimal_rows<R: AsRef<str>>(rows: &[Vec<R>]) -> Result<PointCloud> {
        let pts = rows
            .iter()
            .map(|r| r.iter().map(|x| parse_decimal(x.as_ref())).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        PointCloud::new(pts, None)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn labels(&self) -> &[Vertex] {
        &self.labels
    }

    pub fn squared_distance(&self, i: usize, j: usize) -> BigRational {
        self.points[i]
            .iter()
            .zip(&self.points[j])
            .map(|(a, b)| {
                let d = a - b;
                &d * &d
            })
            .fold(BigRational::zero(), |acc, x| acc + x)
    }

    /// Roof `{(x, x') : |x - x'| <= r}`, or `< r` when `strict`.
    pub fn to_space(&self, r: &BigRational, strict: bool) -> Result<Space> {
        if r.is_negative() {
            return Err(Error::input(format!("scale must be nonnegative, got {r}")));
        }
        let r2 = r * r;
        let mut pairs = Vec::new();
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                let d2 = self.squared_distance(i, j);
                let close = if strict { d2 < r2 } else { d2 <= r2 };
                if close {
                    pairs.push((self.labels[i].clone(), self.labels[j].clone()));
                }
            }
        }
        Space::new(self.labels.iter().cloned(), pairs)
    }
}

/// Space from a precomputed symmetric, nonnegative distance matrix.
pub fn from_distance_matrix(
    labels: &[Vertex],
    distances: &[Vec<BigRational>],
    r: &BigRational,
    strict: bool,
) -> Result<Space> {
    if r.is_negative() {
        return Err(Error::input(format!("scale must be nonnegative, got {r}")));
    }
    let n = labels.len();
    if distances.len() != n || distances.iter().any(|row| row.len() != n) {
        return Err(Error::input(format!("distance matrix must be {n}x{n}")));
    }
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let d = &distances[i][j];
            if d.is_negative() {
                return Err(Error::input(format!("negative distance at ({i}, {j})")));
            }
            if *d != distances[j][i] {
                return Err(Error::input(format!("distance matrix is not symmetric at ({i}, {j})")));
            }
            if i < j && (if strict { d < r } else { d <= r }) {
                pairs.push((labels[i].clone(), labels[j].clone()));
            }
        }
    }
    Space::new(labels.iter().cloned(), pairs)
}

/// Convenience wrapper over [`PointCloud::to_space`].
pub fn from_point_cloud(cloud: &PointCloud, r: &BigRational, strict: bool) -> Result<Space> {
    cloud.to_space(r, strict)
}
