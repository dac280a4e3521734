//! Curves given as images of plane curves, and graded kernels of ring maps.

use crate::error::{Error, Result};
use crate::groebner::{Caps, GroebnerBasis, Ideal};
use crate::invariants::hilbert;
use crate::linalg::{left_nullspace, Dense};
use crate::ring::{Monomial, MonomialOrder, Polynomial, Ring, Term};
use std::collections::HashMap;

/// The ideal, through degree `dmax`, of the kernel of S = k[x_0..x_m] → R,
/// x_i ↦ comps[i], where R is the source ring modulo `modulus` (if any).
/// Exact: each degree is a left kernel computed on normal forms.
pub fn graded_kernel(
    target: Ring,
    comps: &[Polynomial],
    modulus: Option<&GroebnerBasis>,
    dmax: u32,
    caps: Caps,
) -> Result<Ideal> {
    if comps.len() != target.nvars {
        return Err(Error::InvalidInput("one component per target variable is required".into()));
    }
    let f = target.field;
    let mut ideal = Ideal::zero(target).with_caps(caps);
    for d in 1..=dmax {
        let gb = ideal.groebner_truncated(MonomialOrder::Grevlex, Some(d))?;
        let rows_m = gb.standard_monomials(d);
        if rows_m.is_empty() {
            break;
        }
        let images: Vec<Polynomial> = rows_m
            .iter()
            .map(|m| {
                let mut p = Polynomial::constant(comps[0].ring(), 1);
                for (i, c) in comps.iter().enumerate() {
                    if m.exp(i) > 0 {
                        p = p.mul(&c.pow(m.exp(i)));
                    }
                }
                match modulus {
                    Some(g) => g.normal_form(&p),
                    None => p,
                }
            })
            .collect();
        let mut index: HashMap<Monomial, usize> = HashMap::new();
        for p in &images {
            for t in p.terms() {
                let k = index.len();
                index.entry(t.mono).or_insert(k);
            }
        }
        if index.is_empty() {
            // every monomial maps to zero
            let gens = rows_m.iter().map(|m| Polynomial::monomial(target, 1, *m)).collect();
            ideal = ideal.add_gens(gens)?;
            continue;
        }
        caps.check_matrix(rows_m.len(), index.len(), "graded kernel")?;
        let mut mat = Dense::zeros(rows_m.len(), index.len());
        for (r, p) in images.iter().enumerate() {
            for t in p.terms() {
                mat.set(r, index[&t.mono], t.coeff);
            }
        }
        let kernel = left_nullspace(&f, &mat);
        if kernel.is_empty() {
            continue;
        }
        let gens = kernel
            .iter()
            .map(|v| {
                let terms = v
                    .iter()
                    .zip(&rows_m)
                    .filter(|(c, _)| **c != 0)
                    .map(|(&c, m)| Term { coeff: c, mono: *m })
                    .collect();
                Polynomial::from_terms(target, terms).make_monic()
            })
            .collect();
        ideal = ideal.add_gens(gens)?;
    }
    ideal.canonical()
}

/// Singular scheme of a plane curve: the ideal (F, ∂F/∂u_0, ∂F/∂u_1, ∂F/∂u_2).
pub fn singular_scheme(f: &Polynomial) -> Result<Ideal> {
    let r = f.ring();
    let mut gens = vec![f.clone()];
    gens.extend((0..r.nvars).map(|v| f.derivative(v)));
    Ideal::new(r, gens)
}

/// Whether V(F) is smooth: the singular scheme is empty.
pub fn is_smooth_plane_curve(f: &Polynomial) -> Result<bool> {
    Ok(hilbert(&singular_scheme(f)?)?.dim() < 0)
}

/// Whether the only singularity is one ordinary node at `node` (Tjurina number 1).
pub fn has_single_node_at(f: &Polynomial, node: &[u32]) -> Result<bool> {
    let h = hilbert(&singular_scheme(f)?)?;
    if h.dim() != 0 || h.degree() != 1 {
        return Ok(false);
    }
    Ok(f.evaluate(node) == 0 && (0..3).all(|v| f.derivative(v).evaluate(node) == 0))
}
