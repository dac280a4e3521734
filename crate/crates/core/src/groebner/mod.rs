//! Reduced Gröbner bases, normal forms, elimination and ideal comparison.

mod buchberger;

use crate::error::{Error, Result};
use crate::ring::{monomials_of_degree, Monomial, MonomialOrder, Polynomial, Ring, Term};
use buchberger::{GPoly, Reducers};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

/// Resource guards: computations exceeding them fail loudly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    pub max_degree: u32,
    pub max_pairs: usize,
    /// Largest matrix (rows × columns) any linear-algebra step may allocate.
    pub max_matrix: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { max_degree: 40, max_pairs: 2_000_000, max_matrix: 20_000_000 }
    }
}

impl Caps {
    pub fn check_matrix(&self, rows: usize, cols: usize, what: &str) -> Result<()> {
        if rows.saturating_mul(cols) > self.max_matrix {
            return Err(Error::TooLarge(format!(
                "{what}: {rows} x {cols} matrix exceeds the cap of {} entries",
                self.max_matrix
            )));
        }
        Ok(())
    }
}

/// A reduced Gröbner basis (possibly truncated at a degree).
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Ring,
    order: MonomialOrder,
    elements: Vec<GPoly>,
    truncated_at: Option<u32>,
    pairs_reduced: usize,
}

impl GroebnerBasis {
    /// S-pairs actually reduced while building this basis.
    pub fn pairs_reduced(&self) -> usize {
        self.pairs_reduced
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    /// `Some(D)` when only elements of degree ≤ D were computed.
    pub fn truncated_at(&self) -> Option<u32> {
        self.truncated_at
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn polynomials(&self) -> Vec<Polynomial> {
        self.elements
            .iter()
            .map(|g| Polynomial::from_sorted_in(self.ring, g.terms.clone(), self.order))
            .collect()
    }

    /// Element terms, descending under the basis order.
    pub fn element_terms(&self) -> impl Iterator<Item = &[Term]> {
        self.elements.iter().map(|g| g.terms.as_slice())
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements.iter().map(|g| g.lm).collect()
    }

    pub fn is_unit(&self) -> bool {
        self.elements.iter().any(|g| g.lm.degree() == 0)
    }

    fn reducers(&self) -> (Vec<bool>, &[GPoly]) {
        (vec![true; self.elements.len()], &self.elements)
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        assert_eq!(f.ring(), self.ring, "normal form across rings");
        let (active, polys) = self.reducers();
        let red = Reducers { polys, active: &active };
        let terms = buchberger::reduce(&self.ring.field, f.terms_in(self.order), &red, self.order, true);
        Polynomial::from_sorted_in(self.ring, terms, self.order)
    }

    pub fn reduces_to_zero(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Whether any leading monomial divides `m`.
    pub fn lm_divides(&self, m: &Monomial) -> bool {
        let s = m.sev();
        self.elements.iter().any(|g| g.sev & !s == 0 && g.lm.divides(m))
    }

    /// Monomials of degree `d` outside the leading-term ideal.
    pub fn standard_monomials(&self, d: u32) -> Vec<Monomial> {
        monomials_of_degree(self.ring.nvars, d)
            .into_iter()
            .filter(|m| !self.lm_divides(m))
            .collect()
    }

    /// Buchberger's criterion re-checked: every S-polynomial reduces to zero.
    pub fn verify_s_pairs(&self) -> bool {
        let f = self.ring.field;
        let n = self.elements.len();
        for i in 0..n {
            for j in i + 1..n {
                let (a, b) = (&self.elements[i], &self.elements[j]);
                let l = a.lm.lcm(&b.lm);
                if let Some(t) = self.truncated_at {
                    if l.degree() > t {
                        continue;
                    }
                }
                let pa = Polynomial::from_sorted_in(self.ring, a.terms.clone(), self.order)
                    .mul_term(1, &a.lm.quotient_of(&l));
                let pb = Polynomial::from_sorted_in(self.ring, b.terms.clone(), self.order)
                    .mul_term(f.neg(1), &b.lm.quotient_of(&l));
                if !self.reduces_to_zero(&pa.add(&pb)) {
                    return false;
                }
            }
        }
        true
    }
}

type CacheKey = (MonomialOrder, Option<u32>);

/// A homogeneous ideal with a per-order cache of reduced Gröbner bases.
#[derive(Debug)]
pub struct Ideal {
    ring: Ring,
    gens: Vec<Polynomial>,
    caps: Caps,
    cache: Mutex<HashMap<CacheKey, Arc<GroebnerBasis>>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        Ideal {
            ring: self.ring,
            gens: self.gens.clone(),
            caps: self.caps,
            cache: Mutex::new(self.cache.lock().unwrap().clone()),
        }
    }
}

impl Ideal {
    pub fn new(ring: Ring, gens: Vec<Polynomial>) -> Result<Self> {
        let mut kept = Vec::with_capacity(gens.len());
        for g in gens {
            if g.ring() != ring {
                return Err(Error::RingMismatch("generator from a different ring".into()));
            }
            if !g.is_homogeneous() {
                return Err(Error::InvalidInput(format!("generator {g} is not homogeneous")));
            }
            if !g.is_zero() {
                kept.push(g);
            }
        }
        Ok(Ideal { ring, gens: kept, caps: Caps::default(), cache: Mutex::new(HashMap::new()) })
    }

    pub fn zero(ring: Ring) -> Self {
        Ideal::new(ring, vec![]).unwrap()
    }

    /// The irrelevant ideal `(x0, …, xr)`.
    pub fn irrelevant(ring: Ring) -> Self {
        Ideal::new(ring, (0..ring.nvars).map(|i| Polynomial::var(ring, i)).collect()).unwrap()
    }

    pub fn with_caps(mut self, caps: Caps) -> Self {
        self.caps = caps;
        self
    }

    pub fn caps(&self) -> Caps {
        self.caps
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    fn derived(&self, ring: Ring, gens: Vec<Polynomial>) -> Result<Ideal> {
        Ok(Ideal::new(ring, gens)?.with_caps(self.caps))
    }

    pub fn groebner(&self, order: MonomialOrder) -> Result<Arc<GroebnerBasis>> {
        self.groebner_truncated(order, None)
    }

    /// Gröbner basis; with `deg_bound = Some(D)` only degrees ≤ D are computed,
    /// which is exact up to degree D for homogeneous ideals.
    pub fn groebner_truncated(&self, order: MonomialOrder, deg_bound: Option<u32>) -> Result<Arc<GroebnerBasis>> {
        {
            let cache = self.cache.lock().unwrap();
            if let Some(g) = cache.get(&(order, None)) {
                return Ok(g.clone());
            }
            if let Some(d) = deg_bound {
                if let Some((_, g)) = cache
                    .iter()
                    .find(|((o, t), _)| *o == order && t.is_some_and(|t| t >= d))
                {
                    return Ok(g.clone());
                }
            }
        }
        let gens: Vec<Vec<Term>> = self.gens.iter().map(|g| g.terms_in(order)).collect();
        let out = buchberger::buchberger(&self.ring.field, gens, order, &self.caps, deg_bound)?;
        let gb = Arc::new(GroebnerBasis {
            ring: self.ring,
            order,
            elements: out.elements,
            truncated_at: out.truncated_at,
            pairs_reduced: out.pairs_reduced,
        });
        self.cache.lock().unwrap().insert((order, gb.truncated_at), gb.clone());
        Ok(gb)
    }

    pub fn grevlex(&self) -> Result<Arc<GroebnerBasis>> {
        self.groebner(MonomialOrder::Grevlex)
    }

    pub fn contains_poly(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.grevlex()?.reduces_to_zero(f))
    }

    /// Whether `other ⊆ self`.
    pub fn contains(&self, other: &Ideal) -> Result<bool> {
        if other.ring != self.ring {
            return Err(Error::RingMismatch("containment across rings".into()));
        }
        let gb = self.grevlex()?;
        Ok(other.gens.iter().all(|g| gb.reduces_to_zero(g)))
    }

    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch("equality across rings".into()));
        }
        let (a, b) = (self.grevlex()?, other.grevlex()?);
        if a.len() == b.len() && a.polynomials() == b.polynomials() {
            return Ok(true);
        }
        Ok(self.contains(other)? && other.contains(self)?)
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.grevlex()?.is_unit())
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch("sum across rings".into()));
        }
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        self.derived(self.ring, gens)
    }

    pub fn add_gens(&self, extra: Vec<Polynomial>) -> Result<Ideal> {
        let mut gens = self.gens.clone();
        gens.extend(extra);
        self.derived(self.ring, gens)
    }

    /// Ideal generated by the reduced grevlex basis (canonical generator set).
    pub fn canonical(&self) -> Result<Ideal> {
        let gb = self.grevlex()?;
        let out = self.derived(self.ring, gb.polynomials())?;
        out.cache.lock().unwrap().insert((MonomialOrder::Grevlex, None), gb);
        Ok(out)
    }

    /// Image under the change of coordinates `f ↦ f(Ax)`.
    pub fn apply_linear_change(&self, a: &[Vec<u32>]) -> Result<Ideal> {
        let ops = crate::ring::poly::elementary_factors(&self.ring.field, a)?;
        let gens = self.gens.iter().map(|g| g.apply_elementary(&ops)).collect();
        self.derived(self.ring, gens)
    }

    /// Move into `target` with `map[i]` giving the new index of variable `i`.
    pub fn remap(&self, target: Ring, map: &[Option<usize>]) -> Result<Ideal> {
        let gens = self.gens.iter().map(|g| g.remap(target, map)).collect();
        self.derived(target, gens)
    }

    /// Extend to a ring with more variables; variable `i` keeps index `offset + i`.
    pub fn embed(&self, target: Ring, offset: usize) -> Result<Ideal> {
        let map: Vec<Option<usize>> = (0..self.ring.nvars).map(|i| Some(i + offset)).collect();
        self.remap(target, &map)
    }

    /// Set the given variables to zero and drop them from the ring.
    pub fn restrict_to_zero(&self, vars: &[usize]) -> Result<Ideal> {
        let target = self.ring.with_nvars(self.ring.nvars - vars.len())?;
        let map = keep_map(self.ring.nvars, vars);
        let gens = self.gens.iter().map(|g| g.set_zero(vars).remap(target, &map)).collect();
        self.derived(target, gens)
    }

    /// `I ∩ k[remaining variables]`, living in the subring of the kept variables
    /// (in their original relative order).
    pub fn eliminate(&self, drop: &[usize]) -> Result<Ideal> {
        self.eliminate_truncated(drop, None)
    }

    pub fn eliminate_truncated(&self, drop: &[usize], deg_bound: Option<u32>) -> Result<Ideal> {
        let n = self.ring.nvars;
        let mut drop: Vec<usize> = drop.to_vec();
        drop.sort_unstable();
        drop.dedup();
        if drop.iter().any(|&v| v >= n) {
            return Err(Error::InvalidInput("elimination variable outside the ring".into()));
        }
        let k = drop.len();
        let mut perm: Vec<Option<usize>> = vec![None; n];
        for (pos, &v) in drop.iter().enumerate() {
            perm[v] = Some(pos);
        }
        let mut next = k;
        for v in 0..n {
            if perm[v].is_none() {
                perm[v] = Some(next);
                next += 1;
            }
        }
        let permuted = self.remap(self.ring, &perm)?;
        let gb = permuted.groebner_truncated(MonomialOrder::BlockElim(k), deg_bound)?;
        let sub = self.ring.with_nvars(n - k)?;
        let down: Vec<Option<usize>> = (0..n).map(|i| if i < k { None } else { Some(i - k) }).collect();
        let gens: Vec<Polynomial> = gb
            .polynomials()
            .into_iter()
            .filter(|g| (0..k).all(|v| !g.uses_var(v)))
            .map(|g| g.remap(sub, &down))
            .collect();
        self.derived(sub, gens)
    }

    /// Basis of the degree-d slice `I_d`: for each leading monomial `m` of degree d,
    /// the polynomial `m − NF(m)`, which is the reduced echelon basis of `I_d`.
    pub fn graded_piece(&self, d: u32) -> Result<Vec<Polynomial>> {
        let gb = self.groebner_truncated(MonomialOrder::Grevlex, Some(d))?;
        let r = self.ring;
        Ok(monomials_of_degree(r.nvars, d)
            .into_iter()
            .filter(|m| gb.lm_divides(m))
            .map(|m| {
                let mp = Polynomial::monomial(r, 1, m);
                mp.sub(&gb.normal_form(&mp))
            })
            .collect())
    }

    pub fn graded_dim(&self, d: u32) -> Result<usize> {
        let gb = self.groebner_truncated(MonomialOrder::Grevlex, Some(d))?;
        Ok(monomials_of_degree(self.ring.nvars, d).iter().filter(|m| gb.lm_divides(m)).count())
    }

    /// Smallest and largest generator degrees.
    pub fn generator_degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.gens.iter().filter_map(|g| g.degree()).collect();
        d.sort_unstable();
        d
    }
}

/// Map dropping `vars` and compacting the remaining indices.
pub fn keep_map(n: usize, vars: &[usize]) -> Vec<Option<usize>> {
    let mut map = vec![None; n];
    let mut next = 0;
    for (v, slot) in map.iter_mut().enumerate() {
        if !vars.contains(&v) {
            *slot = Some(next);
            next += 1;
        }
    }
    map
}

#[cfg(test)]
mod tests;
