//! Closed-form degree, genus and Betti bounds for q-secant varieties of
//! codimension e.

use crate::error::{Error, Result};

/// Generalized binomial coefficient: 0 for k < 0, and (−1)^k C(k−n−1, k) for n < 0.
pub fn binom(n: i64, k: i64) -> i64 {
    if k < 0 {
        return 0;
    }
    if n < 0 {
        let v = binom(k - n - 1, k);
        return if k % 2 == 0 { v } else { -v };
    }
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i128 / (i + 1) as i128;
    }
    acc as i64
}

fn i(x: u32) -> i64 {
    x as i64
}

/// B^e_{p,q} = C(p+q−1, q)·C(e+q, p+q), the upper bound for β_{p,q}(S^q(X)).
/// Defined for all p, q ≥ 0 (zero for p > e), as the recurrences need.
pub fn b_bound(e: u32, p: u32, q: u32) -> i64 {
    binom(i(p) + i(q) - 1, i(q)) * binom(i(e) + i(q), i(p) + i(q))
}

/// B'^e_{p,q}: the bound for q-secant varieties not of minimal degree, 1 ≤ p ≤ e.
pub fn b_prime(e: u32, p: u32, q: u32) -> Result<i64> {
    if p < 1 || p > e {
        return Err(Error::InvalidInput(format!("B' needs 1 ≤ p ≤ e, got p = {p}, e = {e}")));
    }
    let (e, p, q) = (i(e), i(p), i(q));
    Ok(binom(p + q - 1, q) * binom(e + q, p + q) - binom(e + q - p - 1, q - 1) * binom(e + q - 1, e + q - p))
}

/// Minimal degree C(e+q, q).
pub fn d_min(e: u32, q: u32) -> i64 {
    binom(i(e) + i(q), i(q))
}

/// Almost minimal degree D'_{e,q} = C(e+q, q) + C(e+q−1, q−1).
pub fn d_almost(e: u32, q: u32) -> i64 {
    binom(i(e) + i(q), i(q)) + binom(i(e) + i(q) - 1, i(q) - 1)
}

/// Sectional genus of a q-secant variety of minimal degree.
pub fn genus_min(e: u32, q: u32) -> i64 {
    (i(q) - 1) * d_min(e, q) - binom(i(e) + i(q), i(q) - 1) + 1
}

/// Maximal sectional genus in almost minimal degree: (q−1)·D'_{e,q} + 1.
pub fn genus_dp_max(e: u32, q: u32) -> i64 {
    (i(q) - 1) * d_almost(e, q) + 1
}

/// dim (I_{S^q(X)})_{q+1} in minimal degree: C(e+q, q+1).
pub fn dim_q1_min(e: u32, q: u32) -> i64 {
    binom(i(e) + i(q), i(q) + 1)
}

/// dim (I_{S^q(X)})_{q+1} for del Pezzo q-secant varieties.
pub fn dim_q1_dp(e: u32, q: u32) -> i64 {
    dim_q1_min(e, q) - binom(i(e) + i(q) - 2, i(q) - 1)
}

/// Sectional genus of S^q(X_z) for z general on S^2(X), when S^q(X) has minimal
/// degree and codimension e: it is determined by deg Z_1.
pub fn almost_genus(e: u32, q: u32, deg_z1: i64) -> i64 {
    let (e, q) = (i(e), i(q));
    (q - 1) * (binom(e + q - 1, q) + binom(e + q - 2, q - 1)) + 1
        - (binom(e + q - 1, q - 1) + binom(e + q - 2, q - 2) - deg_z1)
}

/// One named identity over a parameter range and whether it held throughout.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct FormulaCheck {
    pub name: String,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl FormulaCheck {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

fn run(name: &str, cases: impl Iterator<Item = (String, bool)>) -> FormulaCheck {
    let mut n = 0;
    let mut failures = Vec::new();
    for (label, ok) in cases {
        n += 1;
        if !ok {
            failures.push(label);
        }
    }
    FormulaCheck { name: name.into(), cases: n, failures }
}

/// Recurrences and q = 1 specializations over 1 ≤ p ≤ e ≤ emax, 1 ≤ q ≤ qmax.
pub fn formula_suite(emax: u32, qmax: u32) -> Vec<FormulaCheck> {
    let grid = move || (1..=emax).flat_map(move |e| (1..=qmax).map(move |q| (e, q)));
    let pgrid = move || grid().flat_map(|(e, q)| (1..=e).map(move |p| (e, p, q)));
    vec![
        run(
            "B recurrence",
            pgrid().map(|(e, p, q)| {
                let rhs = b_bound(e - 1, p, q) + b_bound(e - 1, p - 1, q) + b_bound(e, p, q - 1);
                (format!("e={e} p={p} q={q}"), b_bound(e, p, q) == rhs)
            }),
        ),
        run(
            "D' recurrence",
            grid().map(|(e, q)| (format!("e={e} q={q}"), d_almost(e - 1, q) + d_almost(e, q - 1) == d_almost(e, q))),
        ),
        run(
            "B at q=1",
            (1..=emax).flat_map(|e| (1..=e).map(move |p| (e, p))).map(|(e, p)| {
                (format!("e={e} p={p}"), b_bound(e, p, 1) == i(p) * binom(i(e) + 1, i(p) + 1))
            }),
        ),
        run(
            "B' at q=1",
            (1..=emax).flat_map(|e| (1..=e).map(move |p| (e, p))).map(|(e, p)| {
                let want = i(p) * binom(i(e) + 1, i(p) + 1) - binom(i(e), i(p) - 1);
                (format!("e={e} p={p}"), b_prime(e, p, 1).ok() == Some(want))
            }),
        ),
        run(
            "degrees and genera at q=1",
            (1..=emax).map(|e| {
                let ok = d_min(e, 1) == i(e) + 1
                    && d_almost(e, 1) == i(e) + 2
                    && genus_min(e, 1) == 0
                    && genus_dp_max(e, 1) == 1;
                (format!("e={e}"), ok)
            }),
        ),
        run(
            "B' vanishes at p=e",
            grid().map(|(e, q)| (format!("e={e} q={q}"), b_prime(e, e, q).ok() == Some(0))),
        ),
        run(
            "(q+1)-forms equal the first Betti bound",
            grid().map(|(e, q)| {
                let ok = dim_q1_min(e, q) == b_bound(e, 1, q)
                    && (e < 2 || b_prime(e, 1, q).ok() == Some(dim_q1_dp(e, q)));
                (format!("e={e} q={q}"), ok)
            }),
        ),
    ]
}
