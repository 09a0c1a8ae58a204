use crate::error::Result;
use crate::sdr::{Point, SDRep};
use crate::symcore::SymMat;

/// The affine map `z ↦ M₀ + Σ zⱼ Cⱼ` left after fixing the ambient point.
#[derive(Debug, Clone)]
pub struct LiftedPencil {
    base: SymMat,
    lifted: Vec<SymMat>,
}

impl LiftedPencil {
    pub fn new(base: SymMat, lifted: Vec<SymMat>) -> Self {
        debug_assert!(lifted.iter().all(|c| c.dim() == base.dim()));
        LiftedPencil { base, lifted }
    }

    pub fn from_rep(rep: &SDRep, x: &Point) -> Result<Self> {
        Ok(LiftedPencil {
            base: rep.pencil_at(x)?,
            lifted: rep.lifted_coeffs().to_vec(),
        })
    }

    pub fn k(&self) -> usize {
        self.base.dim()
    }

    pub fn m(&self) -> usize {
        self.lifted.len()
    }

    pub fn base(&self) -> &SymMat {
        &self.base
    }

    pub fn lifted(&self) -> &[SymMat] {
        &self.lifted
    }

    pub fn at(&self, z: &[f64]) -> SymMat {
        assert_eq!(z.len(), self.m(), "lifted vector length");
        let mut out = self.base.clone();
        for (zj, cj) in z.iter().zip(&self.lifted) {
            out.axpy(*zj, cj);
        }
        out
    }

    pub fn lambda_min_at(&self, z: &[f64]) -> f64 {
        self.at(z).lambda_min()
    }

    /// Upper bound on `sup_{‖z‖∞ ≤ radius} λ_min(M(z))` from a dual point.
    ///
    /// For any `W ⪰ 0` with `tr W = 1`,
    /// `λ_min(M(z)) ≤ ⟨W, M(z)⟩ = ⟨W, M₀⟩ + Σ zⱼ⟨W, Cⱼ⟩ ≤ ⟨W, M₀⟩ + radius · Σ |⟨W, Cⱼ⟩|`.
    /// `w` is normalized here; it must be PSD.
    pub fn dual_bound(&self, w: &SymMat, radius: f64) -> f64 {
        let tr = w.trace();
        if !tr.is_finite() || tr <= 0.0 {
            return f64::INFINITY;
        }
        let coupling: f64 = self.lifted.iter().map(|c| w.dot(c).abs()).sum();
        (w.dot(&self.base) + radius * coupling) / tr
    }
}
