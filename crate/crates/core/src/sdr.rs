//! Semidefinite representations and the constructions that combine them.
//!
//! An [`SDRep`] describes the set
//!
//! ```text
//! S = { x ∈ ℝⁿ | ∃ z ∈ ℝᵐ : A + Σᵢ xᵢ Bᵢ + Σⱼ zⱼ Cⱼ ⪰ 0 }
//! ```
//!
//! with `k × k` symmetric coefficients. Every construction here is a pure,
//! structural transform: it rearranges the input coefficients into bigger
//! block-diagonal matrices and never solves anything.
//!
//! Alongside the matrices each representation records its block layout
//! (the sizes of the direct-sum blocks) so exporters can keep the sparsity
//! the constructions produce.

use crate::error::{Error, Result};
use crate::symcore::{block_diag, SymMat};

/// A point of the ambient space.
#[derive(Debug, Clone, PartialEq)]
pub struct Point(pub Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Self {
        Point(coords)
    }

    pub fn origin(n: usize) -> Self {
        Point(vec![0.0; n])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn scaled(&self, s: f64) -> Point {
        Point(self.0.iter().map(|v| v * s).collect())
    }

    /// `θ·self + (1 − θ)·other`
    pub fn lerp(&self, other: &Point, theta: f64) -> Point {
        Point(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| theta * a + (1.0 - theta) * b)
                .collect(),
        )
    }
}

impl From<Vec<f64>> for Point {
    fn from(v: Vec<f64>) -> Self {
        Point(v)
    }
}

impl From<&[f64]> for Point {
    fn from(v: &[f64]) -> Self {
        Point(v.to_vec())
    }
}

/// Variable names; metadata only.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Labels {
    pub ambient: Vec<String>,
    pub lifted: Vec<String>,
}

impl Labels {
    pub fn default_for(n: usize, m: usize) -> Self {
        Labels {
            ambient: (1..=n).map(|i| format!("x{i}")).collect(),
            lifted: (1..=m).map(|j| format!("z{j}")).collect(),
        }
    }
}

/// A projection of a spectrahedron.
#[derive(Debug, Clone, PartialEq)]
pub struct SDRep {
    a: SymMat,
    b: Vec<SymMat>,
    c: Vec<SymMat>,
    blocks: Vec<usize>,
    labels: Labels,
}

impl SDRep {
    /// Representation with a single block and default labels.
    pub fn new(a: SymMat, b: Vec<SymMat>, c: Vec<SymMat>) -> Result<Self> {
        let k = a.dim();
        Self::with_layout(a, b, c, vec![k], None)
    }

    /// A plain spectrahedron (no lifted variables).
    pub fn spectrahedron(a: SymMat, b: Vec<SymMat>) -> Result<Self> {
        Self::new(a, b, Vec::new())
    }

    /// Full constructor. `blocks` must partition `k` and every coefficient
    /// must vanish outside the diagonal blocks. `labels`, when given, must
    /// name exactly `n` ambient and `m` lifted variables.
    pub fn with_layout(
        a: SymMat,
        b: Vec<SymMat>,
        c: Vec<SymMat>,
        blocks: Vec<usize>,
        labels: Option<Labels>,
    ) -> Result<Self> {
        let k = a.dim();
        if b.is_empty() {
            return Err(Error::ZeroAmbient);
        }
        for m in b.iter().chain(&c) {
            if m.dim() != k {
                return Err(Error::DimensionMismatch {
                    what: "coefficient matrix dimension",
                    expected: k,
                    found: m.dim(),
                });
            }
        }
        check_blocks(&blocks, k, std::iter::once(&a).chain(&b).chain(&c))?;
        let labels = match labels {
            None => Labels::default_for(b.len(), c.len()),
            Some(l) => {
                if l.ambient.len() != b.len() {
                    return Err(Error::DimensionMismatch {
                        what: "ambient label count",
                        expected: b.len(),
                        found: l.ambient.len(),
                    });
                }
                if l.lifted.len() != c.len() {
                    return Err(Error::DimensionMismatch {
                        what: "lifted label count",
                        expected: c.len(),
                        found: l.lifted.len(),
                    });
                }
                l
            }
        };
        Ok(SDRep {
            a,
            b,
            c,
            blocks,
            labels,
        })
    }

    /// Matrix size `k`.
    pub fn k(&self) -> usize {
        self.a.dim()
    }

    /// Ambient dimension `n`.
    pub fn n(&self) -> usize {
        self.b.len()
    }

    /// Number of lifted variables `m`.
    pub fn m(&self) -> usize {
        self.c.len()
    }

    pub fn constant(&self) -> &SymMat {
        &self.a
    }

    pub fn ambient_coeffs(&self) -> &[SymMat] {
        &self.b
    }

    pub fn lifted_coeffs(&self) -> &[SymMat] {
        &self.c
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn labels(&self) -> &Labels {
        &self.labels
    }

    pub fn with_labels(mut self, labels: Labels) -> Result<Self> {
        if labels.ambient.len() != self.n() || labels.lifted.len() != self.m() {
            return Err(Error::InvalidArgument(format!(
                "labels must name {} ambient and {} lifted variables",
                self.n(),
                self.m()
            )));
        }
        self.labels = labels;
        Ok(self)
    }

    /// `A + Σ xᵢ Bᵢ`, the pencil with the ambient point substituted.
    pub fn pencil_at(&self, x: &Point) -> Result<SymMat> {
        self.check_point(x)?;
        let mut out = self.a.clone();
        for (xi, bi) in x.coords().iter().zip(&self.b) {
            out.axpy(*xi, bi);
        }
        Ok(out)
    }

    pub fn check_point(&self, x: &Point) -> Result<()> {
        if x.dim() != self.n() {
            return Err(Error::DimensionMismatch {
                what: "point dimension",
                expected: self.n(),
                found: x.dim(),
            });
        }
        if x.coords().iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("point coordinates"));
        }
        Ok(())
    }
}

fn check_blocks<'a>(
    blocks: &[usize],
    k: usize,
    mats: impl Iterator<Item = &'a SymMat>,
) -> Result<()> {
    let bad = |reason: String| Error::BadBlocks {
        blocks: blocks.to_vec(),
        reason,
    };
    if blocks.is_empty() || blocks.contains(&0) {
        return Err(bad("block sizes must be positive".into()));
    }
    let total: usize = blocks.iter().sum();
    if total != k {
        return Err(bad(format!(
            "sizes sum to {total}, matrix dimension is {k}"
        )));
    }
    if blocks.len() == 1 {
        return Ok(());
    }
    let mut owner = Vec::with_capacity(k);
    for (bi, &size) in blocks.iter().enumerate() {
        owner.extend(std::iter::repeat_n(bi, size));
    }
    for (mi, m) in mats.enumerate() {
        for i in 0..k {
            for j in (i + 1)..k {
                if owner[i] != owner[j] && m.get(i, j) != 0.0 {
                    return Err(bad(format!(
                        "coefficient #{mi} has nonzero entry ({i}, {j}) outside the blocks"
                    )));
                }
            }
        }
    }
    Ok(())
}

/// `A + Σ xᵢBᵢ + Σ zⱼCⱼ`.
pub fn pencil_eval(rep: &SDRep, x: &Point, z: &[f64]) -> Result<SymMat> {
    if z.len() != rep.m() {
        return Err(Error::DimensionMismatch {
            what: "lifted vector length",
            expected: rep.m(),
            found: z.len(),
        });
    }
    if z.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("lifted vector"));
    }
    let mut out = rep.pencil_at(x)?;
    for (zj, cj) in z.iter().zip(&rep.c) {
        out.axpy(*zj, cj);
    }
    Ok(out)
}

/// Places `inner` (dimension `k`) in the leading slot of a `k + 2n` matrix
/// and `pair` in each of the listed 2×2 slots.
fn cone_layout(inner: &SymMat, n: usize, pair: impl Fn(usize) -> Option<SymMat>) -> SymMat {
    let mut parts = Vec::with_capacity(n + 1);
    parts.push(inner.clone());
    for i in 0..n {
        parts.push(pair(i).unwrap_or_else(|| SymMat::zeros(2)));
    }
    block_diag(&parts).expect("non-empty block list")
}

/// The pieces shared by [`cone_hull`] and [`homogenize`]:
/// `(B'₁..B'ₙ, C'₁..C'ₘ, λ-coefficient, r-coefficient, blocks)`.
struct ConeParts {
    ambient: Vec<SymMat>,
    lifted: Vec<SymMat>,
    lambda: SymMat,
    r: SymMat,
    blocks: Vec<usize>,
}

fn cone_parts(rep: &SDRep) -> ConeParts {
    let n = rep.n();
    let off_diag = SymMat::unit(2, 0, 1);
    let e11 = SymMat::unit(2, 0, 0);
    let e22 = SymMat::unit(2, 1, 1);

    let ambient = rep
        .b
        .iter()
        .enumerate()
        .map(|(i, bi)| cone_layout(bi, n, |slot| (slot == i).then(|| off_diag.clone())))
        .collect();
    let lifted = rep
        .c
        .iter()
        .map(|cj| cone_layout(cj, n, |_| None))
        .collect();
    let lambda = cone_layout(&rep.a, n, |_| Some(e11.clone()));
    let r = cone_layout(&SymMat::zeros(rep.k()), n, |_| Some(e22.clone()));

    let mut blocks = rep.blocks.clone();
    blocks.extend(std::iter::repeat_n(2, n));
    ConeParts {
        ambient,
        lifted,
        lambda,
        r,
        blocks,
    }
}

/// Conic hull `{ λ·a | λ ≥ 0, a ∈ S }`.
///
/// The output pencil is
///
/// ```text
/// diag( λA + Σ xᵢBᵢ + Σ zⱼCⱼ,  [λ x₁; x₁ r],  …,  [λ xₙ; xₙ r] ) ⪰ 0
/// ```
///
/// over the lifted variables `(z₁..zₘ, λ, r)`, with one `r` shared by all
/// the 2×2 slots. The slots force `x = 0` whenever `λ = 0`.
pub fn cone_hull(rep: &SDRep) -> SDRep {
    let parts = cone_parts(rep);
    let mut lifted = parts.lifted;
    lifted.push(parts.lambda);
    lifted.push(parts.r);

    let mut labels = rep.labels.clone();
    labels.lifted.push("lambda".into());
    labels.lifted.push("r".into());

    let k = rep.k() + 2 * rep.n();
    SDRep::with_layout(
        SymMat::zeros(k),
        parts.ambient,
        lifted,
        parts.blocks,
        Some(labels),
    )
    .expect("cone hull layout is consistent by construction")
}

/// Conic hull of `S × {1}` in `ℝⁿ⁺¹`, with the homogenizing scalar exposed
/// as the last ambient coordinate. Same layout as [`cone_hull`]; only `r`
/// stays lifted.
pub fn homogenize(rep: &SDRep) -> SDRep {
    let parts = cone_parts(rep);
    let mut ambient = parts.ambient;
    ambient.push(parts.lambda);
    let mut lifted = parts.lifted;
    lifted.push(parts.r);

    let mut labels = rep.labels.clone();
    labels.ambient.push("s".into());
    labels.lifted.push("r".into());

    let k = rep.k() + 2 * rep.n();
    SDRep::with_layout(
        SymMat::zeros(k),
        ambient,
        lifted,
        parts.blocks,
        Some(labels),
    )
    .expect("homogenized layout is consistent by construction")
}

/// `{ x ∈ ℝⁿ⁻¹ | (x, 1) ∈ S }`.
pub fn slice_last_at_one(rep: &SDRep) -> Result<SDRep> {
    let n = rep.n();
    if n < 2 {
        return Err(Error::SliceToZero);
    }
    let a = &rep.a + &rep.b[n - 1];
    let b = rep.b[..n - 1].to_vec();
    let mut labels = rep.labels.clone();
    labels.ambient.pop();
    SDRep::with_layout(a, b, rep.c.clone(), rep.blocks.clone(), Some(labels))
}

fn require_same_ambient(r1: &SDRep, r2: &SDRep) -> Result<()> {
    if r1.n() != r2.n() {
        return Err(Error::DimensionMismatch {
            what: "ambient dimension",
            expected: r1.n(),
            found: r2.n(),
        });
    }
    Ok(())
}

fn pair_diag(top: &SymMat, bottom: &SymMat) -> SymMat {
    block_diag(&[top.clone(), bottom.clone()]).expect("two blocks")
}

fn concat_blocks(r1: &SDRep, r2: &SDRep) -> Vec<usize> {
    r1.blocks.iter().chain(&r2.blocks).copied().collect()
}

fn zero_extend_lifted(r1: &SDRep, r2: &SDRep) -> Vec<SymMat> {
    let z1 = SymMat::zeros(r1.k());
    let z2 = SymMat::zeros(r2.k());
    r1.c.iter()
        .map(|c| pair_diag(c, &z2))
        .chain(r2.c.iter().map(|c| pair_diag(&z1, c)))
        .collect()
}

/// Minkowski sum `{ a + b | a ∈ S₁, b ∈ S₂ }`.
///
/// The first summand is evaluated at a lifted copy `u` of the ambient
/// variables and the second at `x − u`. Lifted order: `u`, then `R1`'s,
/// then `R2`'s lifted variables.
pub fn minkowski_sum(r1: &SDRep, r2: &SDRep) -> Result<SDRep> {
    require_same_ambient(r1, r2)?;
    let z1 = SymMat::zeros(r1.k());

    let a = pair_diag(&r1.a, &r2.a);
    let b = r2.b.iter().map(|b2| pair_diag(&z1, b2)).collect();
    let mut c: Vec<SymMat> =
        r1.b.iter()
            .zip(&r2.b)
            .map(|(b1, b2)| pair_diag(b1, &b2.scale(-1.0)))
            .collect();
    c.extend(zero_extend_lifted(r1, r2));

    let mut lifted: Vec<String> = r1.labels.ambient.iter().map(|s| format!("u.{s}")).collect();
    lifted.extend(r1.labels.lifted.iter().map(|s| format!("1.{s}")));
    lifted.extend(r2.labels.lifted.iter().map(|s| format!("2.{s}")));
    let labels = Labels {
        ambient: r1.labels.ambient.clone(),
        lifted,
    };
    SDRep::with_layout(a, b, c, concat_blocks(r1, r2), Some(labels))
}

/// Left fold of [`minkowski_sum`] over `reps`.
pub fn minkowski_sum_all(reps: &[SDRep]) -> Result<SDRep> {
    let (first, rest) = reps.split_first().ok_or(Error::EmptyList)?;
    rest.iter()
        .try_fold(first.clone(), |acc, r| minkowski_sum(&acc, r))
}

/// `S₁ ∩ S₂` by stacking the two pencils.
pub fn intersection(r1: &SDRep, r2: &SDRep) -> Result<SDRep> {
    require_same_ambient(r1, r2)?;
    let a = pair_diag(&r1.a, &r2.a);
    let b =
        r1.b.iter()
            .zip(&r2.b)
            .map(|(p, q)| pair_diag(p, q))
            .collect();
    let c = zero_extend_lifted(r1, r2);

    let mut lifted: Vec<String> = r1.labels.lifted.iter().map(|s| format!("1.{s}")).collect();
    lifted.extend(r2.labels.lifted.iter().map(|s| format!("2.{s}")));
    let labels = Labels {
        ambient: r1.labels.ambient.clone(),
        lifted,
    };
    SDRep::with_layout(a, b, c, concat_blocks(r1, r2), Some(labels))
}

/// Cartesian product `S₁ × S₂ ⊆ ℝ^{n₁+n₂}`.
pub fn product(r1: &SDRep, r2: &SDRep) -> SDRep {
    let z1 = SymMat::zeros(r1.k());
    let z2 = SymMat::zeros(r2.k());
    let a = pair_diag(&r1.a, &r2.a);
    let b =
        r1.b.iter()
            .map(|b| pair_diag(b, &z2))
            .chain(r2.b.iter().map(|b| pair_diag(&z1, b)))
            .collect();
    let c = zero_extend_lifted(r1, r2);

    let labels = Labels {
        ambient: r1
            .labels
            .ambient
            .iter()
            .chain(&r2.labels.ambient)
            .cloned()
            .collect(),
        lifted: r1
            .labels
            .lifted
            .iter()
            .map(|s| format!("1.{s}"))
            .chain(r2.labels.lifted.iter().map(|s| format!("2.{s}")))
            .collect(),
    };
    SDRep::with_layout(a, b, c, concat_blocks(r1, r2), Some(labels))
        .expect("product layout is consistent by construction")
}

/// Convex hull of `S₁ ∪ ⋯ ∪ Sₜ`:
/// `slice_last_at_one(homogenize(R₁) + ⋯ + homogenize(Rₜ))`.
pub fn convex_hull_union(reps: &[SDRep]) -> Result<SDRep> {
    let first = reps.first().ok_or(Error::EmptyList)?;
    for r in &reps[1..] {
        require_same_ambient(first, r)?;
    }
    let cones: Vec<SDRep> = reps.iter().map(homogenize).collect();
    slice_last_at_one(&minkowski_sum_all(&cones)?)
}
