//! Buchberger's algorithm for homogeneous ideals: normal selection strategy,
//! Gebauer–Möller pair elimination, optional degree truncation.

use super::Caps;
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::ring::{Monomial, MonomialOrder, Term};
use std::cmp::Ordering;

/// A basis element with cached leading data; terms descending under the working order.
#[derive(Clone, Debug)]
pub(crate) struct GPoly {
    pub terms: Vec<Term>,
    pub lm: Monomial,
    pub sev: u64,
}

impl GPoly {
    pub fn new(terms: Vec<Term>) -> Self {
        let lm = terms[0].mono;
        GPoly { sev: lm.sev(), lm, terms }
    }
}

#[derive(Clone, Copy, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Divisor lookup table over leading monomials.
pub(crate) struct Reducers<'a> {
    pub polys: &'a [GPoly],
    pub active: &'a [bool],
}

impl<'a> Reducers<'a> {
    #[inline]
    fn find(&self, m: &Monomial) -> Option<&'a GPoly> {
        let s = m.sev();
        for (g, &a) in self.polys.iter().zip(self.active) {
            if a && g.sev & !s == 0 && g.lm.divides(m) {
                return Some(g);
            }
        }
        None
    }
}

/// `out = a + c·q·b` with both inputs descending under `order`.
#[inline]
fn merge_shifted(
    field: &PrimeField,
    a: &[Term],
    b: &[Term],
    c: u32,
    q: &Monomial,
    order: MonomialOrder,
    out: &mut Vec<Term>,
) {
    out.clear();
    out.reserve(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let mut bm = b.first().map(|t| t.mono.mul(q));
    while i < a.len() {
        let Some(m) = bm else { break };
        match order.cmp(&a[i].mono, &m) {
            Ordering::Greater => {
                out.push(a[i]);
                i += 1;
            }
            Ordering::Less => {
                out.push(Term { coeff: field.mul(b[j].coeff, c), mono: m });
                j += 1;
                bm = b.get(j).map(|t| t.mono.mul(q));
            }
            Ordering::Equal => {
                let v = field.add(a[i].coeff, field.mul(b[j].coeff, c));
                if v != 0 {
                    out.push(Term { coeff: v, mono: m });
                }
                i += 1;
                j += 1;
                bm = b.get(j).map(|t| t.mono.mul(q));
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    while j < b.len() {
        out.push(Term { coeff: field.mul(b[j].coeff, c), mono: b[j].mono.mul(q) });
        j += 1;
    }
}

/// Reduce `f` (descending under `order`) by the active reducers. With `full` the
/// tail is reduced too; otherwise reduction stops at the first irreducible term.
pub(crate) fn reduce(
    field: &PrimeField,
    f: Vec<Term>,
    reducers: &Reducers<'_>,
    order: MonomialOrder,
    full: bool,
) -> Vec<Term> {
    let mut rem: Vec<Term> = Vec::new();
    let mut cur = f;
    let mut buf: Vec<Term> = Vec::new();
    let mut start = 0usize;
    while start < cur.len() {
        let t = cur[start];
        match reducers.find(&t.mono) {
            Some(g) => {
                let q = g.lm.quotient_of(&t.mono);
                let c = field.neg(field.mul(t.coeff, field.inv(g.terms[0].coeff)));
                merge_shifted(field, &cur[start + 1..], &g.terms[1..], c, &q, order, &mut buf);
                std::mem::swap(&mut cur, &mut buf);
                start = 0;
            }
            None => {
                if !full {
                    rem.extend_from_slice(&cur[start..]);
                    return rem;
                }
                rem.push(t);
                start += 1;
            }
        }
    }
    rem
}

fn make_monic(field: &PrimeField, terms: &mut [Term]) {
    let c = terms[0].coeff;
    if c != 1 {
        let inv = field.inv(c);
        for t in terms.iter_mut() {
            t.coeff = field.mul(t.coeff, inv);
        }
    }
}

pub(crate) struct BuchbergerOutput {
    pub elements: Vec<GPoly>,
    pub truncated_at: Option<u32>,
    pub pairs_reduced: usize,
}

fn select_min(pairs: &[Pair], order: MonomialOrder) -> usize {
    let mut best = 0;
    for k in 1..pairs.len() {
        let (a, b) = (&pairs[k].lcm, &pairs[best].lcm);
        let less = match a.degree().cmp(&b.degree()) {
            Ordering::Less => true,
            Ordering::Greater => false,
            Ordering::Equal => order.cmp(a, b) == Ordering::Less,
        };
        if less {
            best = k;
        }
    }
    best
}

/// Gebauer–Möller update after appending `basis[h]`.
fn update(basis: &[GPoly], active: &mut [bool], pairs: &mut Vec<Pair>, h: usize) {
    let lh = basis[h].lm;
    let mut cands: Vec<(usize, Monomial, bool)> = (0..h)
        .filter(|&g| active[g])
        .map(|g| (g, lh.lcm(&basis[g].lm), lh.is_coprime(&basis[g].lm)))
        .collect();
    // Chain criterion among new pairs: drop (h,g1) if some other new pair's lcm
    // properly divides lcm(h,g1); of equal lcms keep one, preferring a coprime one.
    let mut keep = vec![true; cands.len()];
    for a in 0..cands.len() {
        for b in 0..cands.len() {
            if a == b || !keep[b] {
                continue;
            }
            let (la, lb) = (&cands[a].1, &cands[b].1);
            if lb.divides(la) {
                if lb != la {
                    keep[a] = false;
                    break;
                }
                // equal lcm: keep the coprime one, else the lower index
                if cands[b].2 || (!cands[a].2 && b < a) {
                    keep[a] = false;
                    break;
                }
            }
        }
    }
    let mut new_pairs = Vec::new();
    for (k, c) in cands.drain(..).enumerate() {
        // product criterion: a surviving coprime pair reduces to zero
        if keep[k] && !c.2 {
            new_pairs.push(Pair { i: c.0, j: h, lcm: c.1 });
        }
    }
    pairs.retain(|p| {
        !(lh.divides(&p.lcm)
            && lh.lcm(&basis[p.i].lm) != p.lcm
            && lh.lcm(&basis[p.j].lm) != p.lcm)
    });
    pairs.extend(new_pairs);
    for g in 0..h {
        if active[g] && lh.divides(&basis[g].lm) {
            active[g] = false;
        }
    }
}

pub(crate) fn buchberger(
    field: &PrimeField,
    gens: Vec<Vec<Term>>,
    order: MonomialOrder,
    caps: &Caps,
    deg_bound: Option<u32>,
) -> Result<BuchbergerOutput> {
    let mut inputs: Vec<Vec<Term>> = gens.into_iter().filter(|g| !g.is_empty()).collect();
    inputs.sort_by(|a, b| {
        a[0].mono
            .degree()
            .cmp(&b[0].mono.degree())
            .then_with(|| order.cmp(&a[0].mono, &b[0].mono))
    });
    let mut inputs = std::collections::VecDeque::from(inputs);
    let mut basis: Vec<GPoly> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut truncated_at = None;
    let mut processed = 0usize;
    loop {
        let pair_deg = if pairs.is_empty() {
            None
        } else {
            Some(pairs[select_min(&pairs, order)].lcm.degree())
        };
        let gen_deg = inputs.front().map(|g| g[0].mono.degree());
        let d = match (pair_deg, gen_deg) {
            (None, None) => break,
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (Some(a), Some(b)) => a.min(b),
        };
        if let Some(bound) = deg_bound {
            if d > bound {
                truncated_at = Some(bound);
                break;
            }
        }
        if d > caps.max_degree {
            return Err(Error::TooLarge(format!(
                "Groebner basis needs degree {d} above the cap {}",
                caps.max_degree
            )));
        }
        let cand: Vec<Term> = if gen_deg == Some(d) {
            inputs.pop_front().unwrap()
        } else {
            let k = select_min(&pairs, order);
            let p = pairs.swap_remove(k);
            processed += 1;
            if processed > caps.max_pairs {
                return Err(Error::TooLarge(format!(
                    "more than {} S-pairs reduced",
                    caps.max_pairs
                )));
            }
            let (gi, gj) = (&basis[p.i], &basis[p.j]);
            let qi = gi.lm.quotient_of(&p.lcm);
            let qj = gj.lm.quotient_of(&p.lcm);
            let mut a = Vec::with_capacity(gi.terms.len());
            for t in &gi.terms[1..] {
                a.push(Term { coeff: t.coeff, mono: t.mono.mul(&qi) });
            }
            let mut out = Vec::new();
            merge_shifted(field, &a, &gj.terms[1..], field.neg(1), &qj, order, &mut out);
            out
        };
        if cand.is_empty() {
            continue;
        }
        let reducers = Reducers { polys: &basis, active: &active };
        let mut h = reduce(field, cand, &reducers, order, true);
        if h.is_empty() {
            continue;
        }
        make_monic(field, &mut h);
        basis.push(GPoly::new(h));
        active.push(true);
        let idx = basis.len() - 1;
        update(&basis, &mut active, &mut pairs, idx);
    }
    let elements = interreduce(field, basis, active, order);
    Ok(BuchbergerOutput { elements, truncated_at, pairs_reduced: processed })
}

/// Minimalize and tail-reduce; result sorted ascending by leading monomial.
pub(crate) fn interreduce(
    field: &PrimeField,
    basis: Vec<GPoly>,
    mut active: Vec<bool>,
    order: MonomialOrder,
) -> Vec<GPoly> {
    for a in 0..basis.len() {
        if !active[a] {
            continue;
        }
        for b in 0..basis.len() {
            if a != b && active[b] && basis[b].lm.divides(&basis[a].lm)
                && (basis[b].lm != basis[a].lm || b < a) {
                    active[a] = false;
                    break;
                }
        }
    }
    let mut out: Vec<GPoly> = Vec::new();
    for a in 0..basis.len() {
        if !active[a] {
            continue;
        }
        active[a] = false;
        let reducers = Reducers { polys: &basis, active: &active };
        let g = &basis[a];
        let mut terms = vec![g.terms[0]];
        terms.extend(reduce(field, g.terms[1..].to_vec(), &reducers, order, true));
        make_monic(field, &mut terms);
        active[a] = true;
        out.push(GPoly::new(terms));
    }
    out.sort_by(|a, b| order.cmp(&a.lm, &b.lm));
    out
}
