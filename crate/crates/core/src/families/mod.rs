//! Constructions of the varieties used throughout: rational normal curves and
//! scrolls, Veronese embeddings, curves from plane models, Grassmannians,
//! projections, and a characteristic-2 example.

mod corpus;
mod plane;

pub use corpus::{corpus, CorpusEntry, Expect};

pub use plane::{graded_kernel, has_single_node_at, is_smooth_plane_curve, singular_scheme};

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::geometry::{point_on_plane_curve, Frame, Parametrization, Variety};
use crate::groebner::{Caps, Ideal};
use crate::linalg::nullspace;
use crate::linalg::Dense;
use crate::ring::{monomials_of_degree, Monomial, PointProj, Polynomial, Ring, Term};
use rand::Rng;
use serde::{Deserialize, Serialize};

/// Where the center of a projection is drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Center {
    /// A general point of X (inner projection).
    OnVariety,
    /// A general point of a general secant line.
    OnSecant,
    /// A uniformly random point of the ambient space.
    Outer,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FamilySpec {
    Rnc { d: usize },
    Scroll { a: Vec<usize> },
    Veronese { n: usize, d: u32 },
    /// Smooth plane quartic embedded by the conics through one of its points.
    TrigonalG3,
    /// Plane quartic with one node, embedded by the conics through the node.
    Genus2,
    /// Smooth plane cubic embedded by all forms of degree k (degree 3k).
    Elliptic { k: u32 },
    /// G(1, n−1) in its Plücker embedding.
    Grassmann { n: usize },
    /// Maximal minors of the `rows`-row Hankel matrix of RNC(d): the ideal of
    /// S^{rows−1}(RNC(d)), given by equations only.
    Catalecticant { rows: usize, d: usize },
    /// The characteristic-2 determinantal example.
    Char2,
    Project { base: Box<FamilySpec>, center: Center },
}

impl FamilySpec {
    pub fn label(&self) -> String {
        match self {
            FamilySpec::Rnc { d } => format!("rnc-{d}"),
            FamilySpec::Scroll { a } => {
                format!("scroll-{}", a.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("-"))
            }
            FamilySpec::Veronese { n, d } => format!("veronese-{n}-{d}"),
            FamilySpec::TrigonalG3 => "trigonal-g3".into(),
            FamilySpec::Genus2 => "genus2".into(),
            FamilySpec::Elliptic { k } => format!("elliptic-{}", 3 * k),
            FamilySpec::Grassmann { n } => format!("grassmann-2-{n}"),
            FamilySpec::Catalecticant { rows, d } => format!("catalecticant-{rows}-{d}"),
            FamilySpec::Char2 => "char2".into(),
            FamilySpec::Project { base, center } => format!("{}-from-{:?}", base.label(), center).to_lowercase(),
        }
    }

    /// Build over the given field (ignored by `Char2`, which is always over F_2).
    pub fn build<R: Rng>(&self, field: PrimeField, rng: &mut R) -> Result<Variety> {
        Ok(self.build_with_center(field, rng)?.0)
    }

    /// As [`build`](Self::build), also returning the projection center if any.
    pub fn build_with_center<R: Rng>(&self, field: PrimeField, rng: &mut R) -> Result<(Variety, Option<PointProj>)> {
        let v = match self {
            FamilySpec::Rnc { d } => rnc(field, *d)?,
            FamilySpec::Scroll { a } => scroll(field, a)?,
            FamilySpec::Veronese { n, d } => veronese(field, *n, *d)?,
            FamilySpec::TrigonalG3 => trigonal_g3(field, rng)?,
            FamilySpec::Genus2 => genus2(field, rng)?,
            FamilySpec::Elliptic { k } => elliptic(field, *k, rng)?,
            FamilySpec::Grassmann { n } => grassmann(field, *n)?,
            FamilySpec::Catalecticant { rows, d } => catalecticant(field, *rows, *d)?,
            FamilySpec::Char2 => char2()?,
            FamilySpec::Project { base, center } => {
                let x = base.build(field, rng)?;
                let (y, z) = project(&x, *center, rng)?;
                return Ok((Variety { label: self.label(), ..y }, Some(z)));
            }
        };
        Ok((Variety { label: self.label(), ..v }, None))
    }
}

impl std::str::FromStr for Center {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "on-variety" => Ok(Center::OnVariety),
            "on-secant" => Ok(Center::OnSecant),
            "outer" => Ok(Center::Outer),
            _ => Err(Error::InvalidInput(format!("unknown center {s:?}; use on-variety, on-secant or outer"))),
        }
    }
}

fn numbers(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|x| x.trim().parse::<usize>().map_err(|_| Error::InvalidInput(format!("bad number {x:?} in family spec"))))
        .collect()
}

/// Compact text form: `rnc:6`, `scroll:3,4`, `veronese:2,2`, `trigonal-g3`, `genus2`,
/// `elliptic:2`, `grassmann:5`, `catalecticant:3,6`, `char2`, and
/// `project(<base>,<center>)` with center `on-variety`, `on-secant` or `outer`.
impl std::str::FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix("project(").and_then(|r| r.strip_suffix(')')) {
            let (base, center) = inner
                .rsplit_once(',')
                .ok_or_else(|| Error::InvalidInput("project needs (<base>,<center>)".into()))?;
            return Ok(FamilySpec::Project { base: Box::new(base.parse()?), center: center.trim().parse()? });
        }
        let (kind, args) = s.split_once(':').unwrap_or((s, ""));
        let nums = if args.is_empty() { Vec::new() } else { numbers(args)? };
        let want = |k: usize| -> Result<()> {
            if nums.len() == k {
                Ok(())
            } else {
                Err(Error::InvalidInput(format!("family {kind:?} takes {k} parameter(s)")))
            }
        };
        match kind {
            "rnc" => want(1).map(|_| FamilySpec::Rnc { d: nums[0] }),
            "scroll" if !nums.is_empty() => Ok(FamilySpec::Scroll { a: nums }),
            "veronese" => want(2).map(|_| FamilySpec::Veronese { n: nums[0], d: nums[1] as u32 }),
            "trigonal-g3" => want(0).map(|_| FamilySpec::TrigonalG3),
            "genus2" => want(0).map(|_| FamilySpec::Genus2),
            "elliptic" => want(1).map(|_| FamilySpec::Elliptic { k: nums[0] as u32 }),
            "grassmann" => want(1).map(|_| FamilySpec::Grassmann { n: nums[0] }),
            "catalecticant" => want(2).map(|_| FamilySpec::Catalecticant { rows: nums[0], d: nums[1] }),
            "char2" => want(0).map(|_| FamilySpec::Char2),
            _ => Err(Error::InvalidInput(format!("unknown family {s:?}"))),
        }
    }
}

fn var(r: Ring, i: usize) -> Polynomial {
    Polynomial::var(r, i)
}

fn mono(src: Ring, exps: &[u32]) -> Polynomial {
    Polynomial::monomial(src, 1, Monomial::from_exps(exps))
}

/// Determinant by cofactor expansion (small matrices only).
pub fn determinant(m: &[Vec<Polynomial>]) -> Polynomial {
    let k = m.len();
    if k == 1 {
        return m[0][0].clone();
    }
    let ring = m[0][0].ring();
    let mut acc = Polynomial::zero(ring);
    for c in 0..k {
        if m[0][c].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Polynomial>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, p)| p.clone()).collect()).collect();
        let term = m[0][c].mul(&determinant(&minor));
        acc = if c % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// All maximal minors of a matrix with at most as many rows as columns.
pub fn maximal_minors(m: &[Vec<Polynomial>]) -> Vec<Polynomial> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    combinations(cols, rows)
        .into_iter()
        .map(|cs| {
            let sub: Vec<Vec<Polynomial>> = m.iter().map(|row| cs.iter().map(|&c| row[c].clone()).collect()).collect();
            determinant(&sub)
        })
        .filter(|p| !p.is_zero())
        .collect()
}

/// The scroll matrix with `rows` rows: block k contributes the columns
/// (x_{b+j}, …, x_{b+j+rows−1}) for j = 0..=a_k − rows + 1.
pub fn scroll_matrix(r: Ring, a: &[usize], rows: usize) -> Vec<Vec<Polynomial>> {
    let mut m = vec![Vec::new(); rows];
    let mut base = 0;
    for &ak in a {
        if ak + 1 >= rows {
            for j in 0..=(ak + 1 - rows) {
                for (i, row) in m.iter_mut().enumerate() {
                    row.push(var(r, base + j + i));
                }
            }
        }
        base += ak + 1;
    }
    m
}

/// (rows)-minors of the scroll matrix: the ideal of S^{rows−1} of the scroll.
pub fn scroll_secant_minors(field: PrimeField, a: &[usize], q: usize) -> Result<Ideal> {
    let n: usize = a.iter().map(|x| x + 1).sum();
    let r = Ring::new(field, n)?;
    Ideal::new(r, maximal_minors(&scroll_matrix(r, a, q + 1)))
}

pub fn catalecticant(field: PrimeField, rows: usize, d: usize) -> Result<Variety> {
    if rows < 2 || d + 2 < 2 * rows {
        return Err(Error::InvalidInput(format!("no {rows}-row Hankel matrix has maximal minors for RNC({d})")));
    }
    Ok(Variety::new(scroll_secant_minors(field, &[d], rows - 1)?, None, format!("catalecticant-{rows}-{d}")))
}

pub fn rnc(field: PrimeField, d: usize) -> Result<Variety> {
    if d == 0 {
        return Err(Error::InvalidInput("rational normal curve needs d ≥ 1".into()));
    }
    let mut v = scroll(field, &[d])?;
    v.label = format!("rnc-{d}");
    Ok(v)
}

pub fn scroll(field: PrimeField, a: &[usize]) -> Result<Variety> {
    if a.is_empty() || a.contains(&0) {
        return Err(Error::InvalidInput("scroll degrees must be positive".into()));
    }
    let ideal = scroll_secant_minors(field, a, 1)?;
    // (s, t, u_1..u_n) ↦ u_k s^{a_k − j} t^j
    let k = a.len();
    let src = if k == 1 { Ring::new(field, 2)? } else { Ring::new(field, k + 2)? };
    let mut comps = Vec::new();
    for (blk, &ak) in a.iter().enumerate() {
        for j in 0..=ak {
            let mut e = vec![0u32; src.nvars];
            e[0] = (ak - j) as u32;
            e[1] = j as u32;
            if k > 1 {
                e[2 + blk] = 1;
            }
            comps.push(mono(src, &e));
        }
    }
    Ok(Variety::new(ideal, Some(Parametrization::new(src, comps)), "scroll"))
}

pub fn veronese(field: PrimeField, n: usize, d: u32) -> Result<Variety> {
    if n == 0 || d == 0 {
        return Err(Error::InvalidInput("Veronese needs n, d ≥ 1".into()));
    }
    let src = Ring::new(field, n + 1)?;
    let comps: Vec<Polynomial> = monomials_of_degree(n + 1, d).into_iter().map(|m| Polynomial::monomial(src, 1, m)).collect();
    let target = Ring::new(field, comps.len())?;
    // Veronese ideals are generated by quadrics
    let ideal = graded_kernel(target, &comps, None, 2, Caps::default())?;
    Ok(Variety::new(ideal, Some(Parametrization::new(src, comps)), "veronese"))
}

fn random_form<R: Rng>(r: Ring, d: u32, rng: &mut R) -> Polynomial {
    let terms = monomials_of_degree(r.nvars, d)
        .into_iter()
        .map(|m| Term { coeff: rng.gen_range(0..r.p()), mono: m })
        .filter(|t| t.coeff != 0)
        .collect();
    Polynomial::from_terms(r, terms)
}

/// Forms of degree d (as combinations of the given basis) vanishing at the points.
fn forms_through(basis: &[Polynomial], points: &[Vec<u32>]) -> Vec<Polynomial> {
    let r = basis[0].ring();
    let rows: Vec<Vec<u32>> = points.iter().map(|p| basis.iter().map(|b| b.evaluate(p)).collect()).collect();
    let kernel = if rows.is_empty() {
        (0..basis.len()).map(|i| (0..basis.len()).map(|j| (i == j) as u32).collect()).collect()
    } else {
        nullspace(&r.field, &Dense::from_rows(basis.len(), &rows))
    };
    kernel
        .iter()
        .map(|v| {
            let mut p = Polynomial::zero(r);
            for (c, b) in v.iter().zip(basis) {
                if *c != 0 {
                    p = p.add(&b.scale(*c));
                }
            }
            p
        })
        .collect()
}

/// Image of V(F) ⊂ P^2 under the forms `system`, with the ideal computed exactly
/// through degree `dmax`.
pub fn plane_curve_embedding(f: Polynomial, system: Vec<Polynomial>, dmax: u32, label: &str) -> Result<Variety> {
    let field = f.field();
    let target = Ring::new(field, system.len())?;
    let modulus = Ideal::new(f.ring(), vec![f.clone()])?;
    let gb = modulus.grevlex()?;
    let ideal = graded_kernel(target, &system, Some(&gb), dmax, Caps::default())?;
    Ok(Variety::new(ideal, Some(Parametrization::on_curve(f, system)), label))
}

const CURVE_TRIES: usize = 64;

/// Degree 7, genus 3 in P^4. The ideal is generated in degree ≤ 5, since a
/// curve of degree d spanning P^r is (d − r + 2)-regular.
pub fn trigonal_g3<R: Rng>(field: PrimeField, rng: &mut R) -> Result<Variety> {
    let src = Ring::new(field, 3)?;
    for _ in 0..CURVE_TRIES {
        let f = random_form(src, 4, rng);
        if !is_smooth_plane_curve(&f)? {
            continue;
        }
        let p = point_on_plane_curve(&f, rng)?;
        let conics: Vec<Polynomial> = monomials_of_degree(3, 2).into_iter().map(|m| Polynomial::monomial(src, 1, m)).collect();
        let system = forms_through(&conics, &[p]);
        return plane_curve_embedding(f, system, 5, "trigonal-g3");
    }
    Err(Error::RetryExhausted(CURVE_TRIES))
}

/// Degree 6, genus 2 in P^4: a quartic u2²A2 + u2A3 + A4 with a node at (0:0:1),
/// mapped by the conics through the node. Regularity bound 6 − 4 + 2 = 4.
pub fn genus2<R: Rng>(field: PrimeField, rng: &mut R) -> Result<Variety> {
    let src = Ring::new(field, 3)?;
    let binary = Ring::new(field, 2)?;
    let lift: Vec<Option<usize>> = vec![Some(0), Some(1)];
    let u2 = var(src, 2);
    for _ in 0..CURVE_TRIES {
        let a: Vec<Polynomial> = (2..=4).map(|d| random_form(binary, d, rng).remap(src, &lift)).collect();
        let f = u2.pow(2).mul(&a[0]).add(&u2.mul(&a[1])).add(&a[2]);
        if !has_single_node_at(&f, &[0, 0, 1])? {
            continue;
        }
        let conics: Vec<Polynomial> = monomials_of_degree(3, 2).into_iter().map(|m| Polynomial::monomial(src, 1, m)).collect();
        let system = forms_through(&conics, &[vec![0, 0, 1]]);
        return plane_curve_embedding(f, system, 4, "genus2");
    }
    Err(Error::RetryExhausted(CURVE_TRIES))
}

/// Elliptic normal curve of degree 3k in P^{3k−1}; regularity bound 3.
pub fn elliptic<R: Rng>(field: PrimeField, k: u32, rng: &mut R) -> Result<Variety> {
    if k == 0 {
        return Err(Error::InvalidInput("elliptic curve needs k ≥ 1".into()));
    }
    let src = Ring::new(field, 3)?;
    for _ in 0..CURVE_TRIES {
        let f = random_form(src, 3, rng);
        if f.is_zero() || !is_smooth_plane_curve(&f)? {
            continue;
        }
        let gb = Ideal::new(src, vec![f.clone()])?.grevlex()?;
        let system: Vec<Polynomial> = gb.standard_monomials(k).into_iter().map(|m| Polynomial::monomial(src, 1, m)).collect();
        return plane_curve_embedding(f, system, 3, "elliptic");
    }
    Err(Error::RetryExhausted(CURVE_TRIES))
}

fn pair_index(n: usize, i: usize, j: usize) -> usize {
    // position of (i, j), i < j, in lexicographic order
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

/// G(1, n−1) ⊂ P^{C(n,2)−1}, cut out by the 4-Pfaffians of the generic skew matrix.
pub fn grassmann(field: PrimeField, n: usize) -> Result<Variety> {
    if n < 4 {
        return Err(Error::InvalidInput("Grassmannian needs n ≥ 4".into()));
    }
    let m = n * (n - 1) / 2;
    let r = Ring::new(field, m)?;
    let p = |i: usize, j: usize| var(r, pair_index(n, i, j));
    let mut gens = Vec::new();
    for c in combinations(n, 4) {
        let (i, j, k, l) = (c[0], c[1], c[2], c[3]);
        gens.push(p(i, j).mul(&p(k, l)).sub(&p(i, k).mul(&p(j, l))).add(&p(i, l).mul(&p(j, k))));
    }
    let src = Ring::new(field, 2 * n)?;
    let mut comps = vec![Polynomial::zero(src); m];
    for i in 0..n {
        for j in i + 1..n {
            comps[pair_index(n, i, j)] = var(src, i).mul(&var(src, n + j)).sub(&var(src, j).mul(&var(src, n + i)));
        }
    }
    Ok(Variety::new(Ideal::new(r, gens)?, Some(Parametrization::new(src, comps)), "grassmann"))
}

/// The 3×3 matrix with rows (x0, x1, x2), (x3, x4, x5), (x6², x7², x8²) over F_2.
pub fn char2_matrix(r: Ring) -> Vec<Vec<Polynomial>> {
    (0..3)
        .map(|i| (0..3).map(|j| if i < 2 { var(r, 3 * i + j) } else { var(r, 6 + j).pow(2) }).collect())
        .collect()
}

/// Image of P^4 ⇢ P^8 over F_2, cut out by the 2-minors of [`char2_matrix`].
pub fn char2() -> Result<Variety> {
    let field = PrimeField::new(2)?;
    let r = Ring::new(field, 9)?;
    let m = char2_matrix(r);
    let mut gens = Vec::new();
    for rows in combinations(3, 2) {
        for cols in combinations(3, 2) {
            let sub: Vec<Vec<Polynomial>> = rows.iter().map(|&a| cols.iter().map(|&b| m[a][b].clone()).collect()).collect();
            gens.push(determinant(&sub));
        }
    }
    let src = Ring::new(field, 5)?;
    let e = |v: [u32; 5]| mono(src, &v);
    let comps = vec![
        e([1, 0, 2, 0, 0]),
        e([1, 0, 0, 2, 0]),
        e([1, 0, 0, 0, 2]),
        e([0, 1, 2, 0, 0]),
        e([0, 1, 0, 2, 0]),
        e([0, 1, 0, 0, 2]),
        e([0, 0, 3, 0, 0]),
        e([0, 0, 2, 1, 0]),
        e([0, 0, 2, 0, 1]),
    ];
    Ok(Variety::new(Ideal::new(r, gens)?, Some(Parametrization::new(src, comps)), "char2"))
}

/// Draw a center and project from it. Returns the image and the center.
pub fn project<R: Rng>(x: &Variety, center: Center, rng: &mut R) -> Result<(Variety, PointProj)> {
    let f = x.ring().field;
    let n = x.nvars();
    let z = match center {
        Center::OnVariety => x.sample_point(rng)?,
        Center::OnSecant => x.sample_secant_point(2, rng)?,
        Center::Outer => {
            let mut c;
            loop {
                c = (0..n).map(|_| rng.gen_range(0..f.p())).collect::<Vec<u32>>();
                if c.iter().any(|&v| v != 0) {
                    break;
                }
            }
            PointProj::new(&f, c)?
        }
    };
    let frame = Frame::adapted(&f, n, &[z.coords().to_vec()], rng)?;
    let y = x.project(&frame, format!("{} from {:?}", x.label, center))?;
    Ok((y, z))
}

#[cfg(test)]
mod tests;
