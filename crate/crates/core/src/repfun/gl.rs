//! The infinitesimal `∏ GL_{n_i}` action on matrix entries.

use super::dga::CommutativeDga;
use super::poly::Poly;

/// The derivation of the elementary matrix `E_pq` in the block of `vertex`:
/// `D(x_rs) = δ_rp x_qs - δ_sq x_rp` on every arrow matrix `x`.
#[derive(Clone, Debug)]
pub struct GlDerivation {
    pub vertex: usize,
    pub p: usize,
    pub q: usize,
    pub images: Vec<Poly>,
}

impl GlDerivation {
    pub fn apply(&self, dga: &CommutativeDga, f: &Poly) -> Poly {
        dga.ring.derive(&self.images, f)
    }
}

/// One derivation per elementary matrix of each diagonal block.
pub fn gl_derivations(dga: &CommutativeDga) -> Vec<GlDerivation> {
    let mut out = Vec::new();
    for (vertex, _) in dga.dims.dims().iter().enumerate() {
        for p in dga.dims.block(vertex) {
            for q in dga.dims.block(vertex) {
                let mut images = vec![Poly::zero(); dga.ring.num_vars()];
                for (v, src) in dga.sources.iter().enumerate() {
                    let (r, s) = (src.row, src.col);
                    if r == p {
                        if let Some(w) = dga.var_of(src.arrow, q, s) {
                            images[v].add_assign(&dga.ring.gen(w));
                        }
                    }
                    if s == q {
                        if let Some(w) = dga.var_of(src.arrow, r, p) {
                            images[v].sub_assign(&dga.ring.gen(w));
                        }
                    }
                }
                out.push(GlDerivation { vertex, p, q, images });
            }
        }
    }
    out
}
