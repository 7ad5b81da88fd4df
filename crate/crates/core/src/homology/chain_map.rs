//! Chain maps induced by bornologous maps, and the prism chain homotopy
//! between one-step related maps.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::homology::complex::CliqueComplex;
use crate::homology::matrix::{smith_normal_form, IntegerMatrix};
use crate::homotopy::relation::{step_failure, Resolved, StepFailure};
use crate::map::VertexMap;

/// Sort a tuple of distinct vertices, returning the sign of the sorting
/// permutation, or `None` if a vertex repeats.
pub(crate) fn oriented(mut tuple: Vec<usize>) -> Option<(Vec<usize>, i64)> {
    let mut sign = 1;
    // Insertion sort; tuples are short.
    for i in 1..tuple.len() {
        let mut j = i;
        while j > 0 && tuple[j - 1] > tuple[j] {
            tuple.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if tuple.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((tuple, sign))
}

/// Per-dimension matrices `C_q(source) -> C_q(target)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainMap {
    pub matrices: Vec<IntegerMatrix>,
}

impl ChainMap {
    pub fn dim(&self) -> usize {
        self.matrices.len() - 1
    }

    pub fn then(&self, next: &ChainMap) -> ChainMap {
        let dims = self.matrices.len().min(next.matrices.len());
        ChainMap { matrices: (0..dims).map(|q| next.matrices[q].mul(&self.matrices[q])).collect() }
    }

    /// `∂ M_q = M_{q-1} ∂` for `1 <= q <= dim`.
    pub fn commutes(&self, source: &CliqueComplex, target: &CliqueComplex) -> bool {
        (1..=self.dim()).all(|q| {
            let (Ok(dt), Ok(ds)) = (target.boundary(q), source.boundary(q)) else {
                return false;
            };
            dt.mul(&self.matrices[q]) == self.matrices[q - 1].mul(&ds)
        })
    }
}

fn check_complexes(f: &VertexMap, source: &CliqueComplex, target: &CliqueComplex) -> Result<()> {
    if **source.space() != **f.source() || **target.space() != **f.target() {
        return Err(Error::input("complexes are not built on the map's source and target"));
    }
    if target.max_dim() < source.max_dim() {
        return Err(Error::input(format!(
            "target complex is capped at {} below the source cap {}",
            target.max_dim(),
            source.max_dim()
        )));
    }
    Ok(())
}

/// `f_#[x_0, ..., x_q] = [f(x_0), ..., f(x_q)]`, zero when a vertex repeats.
pub fn induced_map(f: &VertexMap, source: &CliqueComplex, target: &CliqueComplex) -> Result<ChainMap> {
    check_complexes(f, source, target)?;
    if let Some((u, v)) = f.bornologous_witness() {
        return Err(Error::precondition(
            "map is not bornologous",
            format!(
                "{} ~ {} map to unrelated {} and {}",
                f.source().vertex(u),
                f.source().vertex(v),
                f.target().vertex(f.apply(u)),
                f.target().vertex(f.apply(v))
            ),
        ));
    }
    let matrices = (0..=source.max_dim())
        .map(|q| {
            let mut m = IntegerMatrix::zeros(target.count(q), source.count(q));
            for (c, s) in source.simplices(q).iter().enumerate() {
                if let Some((img, sign)) = oriented(s.iter().map(|&x| f.apply(x)).collect()) {
                    let r = target.position(&img).expect("images of cliques are cliques");
                    m.add_to(r, c, sign);
                }
            }
            m
        })
        .collect();
    Ok(ChainMap { matrices })
}

/// The prism operator `Ψ_q: C_q(source) -> C_{q+1}(target)`,
/// `Ψ[x_0..x_q] = Σ_i (-1)^i [f(x_0)..f(x_i), g(x_i)..g(x_q)]`, for
/// `0 <= q < target cap`, `q <= source cap`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prism {
    pub matrices: Vec<IntegerMatrix>,
}

pub fn prism_homotopy(f: &VertexMap, g: &VertexMap, source: &CliqueComplex, target: &CliqueComplex) -> Result<Prism> {
    check_complexes(f, source, target)?;
    check_complexes(g, source, target)?;
    let free = Resolved::free(f.source().len());
    if let Some(StepFailure::Unrelated { x, y }) = step_failure(f.source(), f.target(), f.table(), g.table(), &free) {
        return Err(Error::precondition(
            "maps are not one-step related",
            format!(
                "{} ~ {} but f({}) = {} and g({}) = {} are unrelated",
                f.source().vertex(x),
                f.source().vertex(y),
                f.source().vertex(x),
                f.target().vertex(f.apply(x)),
                f.source().vertex(y),
                f.target().vertex(g.apply(y))
            ),
        ));
    }
    let top = source.max_dim().min(target.max_dim().saturating_sub(1));
    if target.max_dim() == 0 {
        return Ok(Prism { matrices: Vec::new() });
    }
    let matrices = (0..=top)
        .map(|q| {
            let mut m = IntegerMatrix::zeros(target.count(q + 1), source.count(q));
            for (c, s) in source.simplices(q).iter().enumerate() {
                for i in 0..=q {
                    let tuple: Vec<usize> = s[..=i]
                        .iter()
                        .map(|&x| f.apply(x))
                        .chain(s[i..].iter().map(|&x| g.apply(x)))
                        .collect();
                    if let Some((img, sign)) = oriented(tuple) {
                        let r = target.position(&img).expect("prism tuples are cliques");
                        m.add_to(r, c, if i % 2 == 0 { sign } else { -sign });
                    }
                }
            }
            m
        })
        .collect();
    Ok(Prism { matrices })
}

impl Prism {
    /// First dimension and entry where `∂Ψ_q + Ψ_{q-1}∂ = g_# - f_#` fails,
    /// for every `q` the prism covers.
    pub fn identity_failure(
        &self,
        f_sharp: &ChainMap,
        g_sharp: &ChainMap,
        source: &CliqueComplex,
        target: &CliqueComplex,
    ) -> Option<(usize, usize, usize)> {
        for q in 0..self.matrices.len() {
            let mut lhs = target.boundary(q + 1).ok()?.mul(&self.matrices[q]);
            if q > 0 {
                lhs = lhs.add(&self.matrices[q - 1].mul(&source.boundary(q).ok()?));
            }
            let rhs = g_sharp.matrices[q].sub(&f_sharp.matrices[q]);
            if lhs != rhs {
                let d = lhs.sub(&rhs);
                let (r, c, _) = d.nonzero().next().expect("matrices differ");
                return Some((q, r, c));
            }
        }
        None
    }
}

/// Whether two chain maps induce the same homomorphism on `H_q`: for each
/// basis cycle `z` of `ker ∂_q` in the source, `(g_# - f_#) z` is a boundary
/// in the target. Needs `∂_{q+1}` of the target, so `q < target cap`.
pub fn agree_on_homology(
    f_sharp: &ChainMap,
    g_sharp: &ChainMap,
    q: usize,
    source: &CliqueComplex,
    target: &CliqueComplex,
) -> Result<bool> {
    if q >= target.max_dim() || q > source.max_dim() {
        return Err(Error::input(format!("H_{q} comparison needs the target complex capped above {q}")));
    }
    let cycles: Vec<Vec<BigInt>> = if q == 0 {
        (0..source.count(0))
            .map(|i| {
                let mut e = vec![BigInt::zero(); source.count(0)];
                e[i] = BigInt::from(1);
                e
            })
            .collect()
    } else {
        smith_normal_form(&source.boundary(q)?).kernel_basis()
    };
    let boundaries = smith_normal_form(&target.boundary(q + 1)?);
    let diff = g_sharp.matrices[q].sub(&f_sharp.matrices[q]);
    Ok(cycles.iter().all(|z| boundaries.in_image(&diff.apply(z))))
}
