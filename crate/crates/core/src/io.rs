//! Text files for ideals and parametrizations.
//!
//! Ideal file: a header `ring char=<p> vars=x0..x<r>`, then one generator per
//! line. Blank lines and lines starting with `#` are ignored.
//!
//! Parametrization sidecar (conventionally `<ideal file>.param`):
//!
//! ```text
//! param char=<p> source=<k>
//! curve <poly in x0..x2>          (optional: sample sources on this plane curve)
//! component <poly in x0..x<k-1>>  (one per image coordinate)
//! transform <a_0> <a_1> ...       (optional: rows of a matrix applied afterwards)
//! ```

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::geometry::{Parametrization, Variety};
use crate::groebner::Ideal;
use crate::ring::{parse_polynomial, Polynomial, Ring};
use std::path::{Path, PathBuf};

fn bad(line: usize, msg: impl Into<String>) -> Error {
    Error::InvalidInput(format!("line {line}: {}", msg.into()))
}

fn header_fields<'a>(line: &'a str, tag: &str, lineno: usize) -> Result<Vec<(&'a str, &'a str)>> {
    let mut words = line.split_whitespace();
    if words.next() != Some(tag) {
        return Err(bad(lineno, format!("expected a `{tag}` header")));
    }
    words.map(|w| w.split_once('=').ok_or_else(|| bad(lineno, format!("malformed field {w:?}")))).collect()
}

fn parse_vars(spec: &str, lineno: usize) -> Result<usize> {
    let (a, b) = spec.split_once("..").ok_or_else(|| bad(lineno, "vars must look like x0..x<r>"))?;
    let last = (a == "x0").then(|| b.strip_prefix('x')).flatten().and_then(|r| r.parse::<usize>().ok());
    last.map(|r| r + 1).ok_or_else(|| bad(lineno, "vars must look like x0..x<r>"))
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(k, l)| (k + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub fn parse_ideal(text: &str) -> Result<Ideal> {
    let mut lines = content_lines(text);
    let (n, head) = lines.next().ok_or_else(|| Error::InvalidInput("empty ideal file".into()))?;
    let mut p = None;
    let mut nvars = None;
    for (k, v) in header_fields(head, "ring", n)? {
        match k {
            "char" => p = Some(v.parse::<u32>().map_err(|_| bad(n, "bad characteristic"))?),
            "vars" => nvars = Some(parse_vars(v, n)?),
            _ => return Err(bad(n, format!("unknown header field {k:?}"))),
        }
    }
    let ring = Ring::new(
        PrimeField::new(p.ok_or_else(|| bad(n, "missing char="))?)?,
        nvars.ok_or_else(|| bad(n, "missing vars="))?,
    )?;
    let gens = lines
        .map(|(n, l)| parse_polynomial(ring, l).map_err(|e| bad(n, e.to_string())))
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(ring, gens)
}

fn header(ring: Ring) -> String {
    format!("ring char={} vars=x0..x{}\n", ring.p(), ring.nvars - 1)
}

/// Generators as given, or the reduced grevlex basis sorted by degree and text.
pub fn format_ideal(ideal: &Ideal, canonical: bool) -> Result<String> {
    let mut polys: Vec<Polynomial> =
        if canonical { ideal.grevlex()?.polynomials() } else { ideal.gens().to_vec() };
    if canonical {
        polys.sort_by_cached_key(|p| (p.degree(), p.to_string()));
    }
    let mut s = header(ideal.ring());
    for p in polys.iter().filter(|p| !p.is_zero()) {
        s.push_str(&p.to_string());
        s.push('\n');
    }
    Ok(s)
}

pub fn format_param(param: &Parametrization) -> String {
    let mut s = format!("param char={} source={}\n", param.source.p(), param.source.nvars);
    if let Some(c) = &param.curve {
        s.push_str(&format!("curve {c}\n"));
    }
    for c in &param.components {
        s.push_str(&format!("component {c}\n"));
    }
    for row in param.transform.iter().flatten() {
        let r: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        s.push_str(&format!("transform {}\n", r.join(" ")));
    }
    s
}

pub fn parse_param(text: &str) -> Result<Parametrization> {
    let mut lines = content_lines(text);
    let (n, head) = lines.next().ok_or_else(|| Error::InvalidInput("empty parametrization file".into()))?;
    let mut p = None;
    let mut k = None;
    for (key, v) in header_fields(head, "param", n)? {
        match key {
            "char" => p = Some(v.parse::<u32>().map_err(|_| bad(n, "bad characteristic"))?),
            "source" => k = Some(v.parse::<usize>().map_err(|_| bad(n, "bad source size"))?),
            _ => return Err(bad(n, format!("unknown header field {key:?}"))),
        }
    }
    let field = PrimeField::new(p.ok_or_else(|| bad(n, "missing char="))?)?;
    let src = Ring::new(field, k.ok_or_else(|| bad(n, "missing source="))?)?;
    let mut param = Parametrization::new(src, Vec::new());
    let mut transform: Vec<Vec<u32>> = Vec::new();
    for (n, l) in lines {
        let (tag, rest) = l.split_once(char::is_whitespace).ok_or_else(|| bad(n, "expected `<tag> <value>`"))?;
        match tag {
            "curve" => param.curve = Some(parse_polynomial(src, rest).map_err(|e| bad(n, e.to_string()))?),
            "component" => param.components.push(parse_polynomial(src, rest).map_err(|e| bad(n, e.to_string()))?),
            "transform" => transform.push(
                rest.split_whitespace()
                    .map(|v| v.parse::<i64>().map(|x| field.from_i64(x)).map_err(|_| bad(n, "bad matrix entry")))
                    .collect::<Result<_>>()?,
            ),
            _ => return Err(bad(n, format!("unknown tag {tag:?}"))),
        }
    }
    if param.curve.is_some() && src.nvars != 3 {
        return Err(Error::InvalidInput("a plane-curve source needs 3 variables".into()));
    }
    if !transform.is_empty() {
        if transform.iter().any(|r| r.len() != param.components.len()) {
            return Err(Error::InvalidInput("transform rows must have one entry per component".into()));
        }
        param.transform = Some(transform);
    }
    Ok(param)
}

pub fn sidecar_path(ideal_path: &Path) -> PathBuf {
    let mut s = ideal_path.as_os_str().to_owned();
    s.push(".param");
    PathBuf::from(s)
}

/// Read an ideal file and, if present, its sidecar.
pub fn read_variety(path: &Path) -> Result<Variety> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
    let ideal = parse_ideal(&text)?;
    let side = sidecar_path(path);
    let param = if side.exists() {
        let t = std::fs::read_to_string(&side).map_err(|e| Error::InvalidInput(format!("{}: {e}", side.display())))?;
        let p = parse_param(&t)?;
        if p.target_vars() != ideal.ring().nvars || p.source.p() != ideal.ring().p() {
            return Err(Error::InvalidInput(format!("{} does not match its ideal file", side.display())));
        }
        Some(p)
    } else {
        None
    };
    let label = path.file_stem().map_or("input".into(), |s| s.to_string_lossy().into_owned());
    Ok(Variety::new(ideal, param, label))
}

/// Write the ideal file and, when the variety has one, the sidecar.
pub fn write_variety(path: &Path, x: &Variety, canonical: bool) -> Result<()> {
    let io = |e: std::io::Error| Error::InvalidInput(format!("{}: {e}", path.display()));
    std::fs::write(path, format_ideal(&x.ideal, canonical)?).map_err(io)?;
    let side = sidecar_path(path);
    match &x.param {
        Some(p) => std::fs::write(side, format_param(p)).map_err(io)?,
        // a stale sidecar would be taken for this ideal's parametrization
        None if side.exists() => std::fs::remove_file(side).map_err(io)?,
        None => {}
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{project, rnc, trigonal_g3, Center};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn ideal_round_trip() {
        let x = rnc(PrimeField::default(), 4).unwrap();
        let text = format_ideal(&x.ideal, false).unwrap();
        assert!(text.starts_with("ring char=32003 vars=x0..x4\n"));
        let back = parse_ideal(&text).unwrap();
        assert!(back.equals(&x.ideal).unwrap());
        let canon = format_ideal(&back, true).unwrap();
        assert_eq!(canon, format_ideal(&x.ideal, true).unwrap());
    }

    #[test]
    fn comments_and_errors() {
        let i = parse_ideal("# twisted cubic\nring char=7 vars=x0..x3\n\nx0*x2 - x1^2\n").unwrap();
        assert_eq!(i.ring().p(), 7);
        assert!(parse_ideal("ring char=8 vars=x0..x3\n").is_err());
        assert!(parse_ideal("ring char=7 vars=y0..y3\n").is_err());
        assert!(parse_ideal("ring char=7 vars=x0..x1\nx5\n").is_err());
        assert!(parse_ideal("").is_err());
    }

    #[test]
    fn parametrizations_round_trip_with_curve_and_transform() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let c = trigonal_g3(PrimeField::default(), &mut rng).unwrap();
        let (y, _) = project(&c, Center::OnVariety, &mut rng).unwrap();
        for v in [&c, &y] {
            let p = v.param.as_ref().unwrap();
            let back = parse_param(&format_param(p)).unwrap();
            let src = p.sample_source(&mut rng).unwrap();
            assert_eq!(back.evaluate_at(&src), p.evaluate_at(&src));
        }
    }

    #[test]
    fn files_on_disk() {
        let dir = std::env::temp_dir().join(format!("secant-forge-io-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("rnc5.ideal");
        let x = rnc(PrimeField::default(), 5).unwrap();
        write_variety(&path, &x, true).unwrap();
        let back = read_variety(&path).unwrap();
        assert!(back.param.is_some());
        assert!(back.ideal.equals(&x.ideal).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(x.contains_point(back.sample_point(&mut rng).unwrap().coords()));
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
