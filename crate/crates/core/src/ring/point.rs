use crate::error::{Error, Result};
use crate::field::PrimeField;
use serde::{Deserialize, Serialize};

/// A point of projective space, normalized so the first nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PointProj {
    coords: Vec<u32>,
}

impl PointProj {
    pub fn new(field: &PrimeField, coords: Vec<u32>) -> Result<Self> {
        let coords: Vec<u32> = coords.into_iter().map(|c| c % field.p()).collect();
        let lead = coords
            .iter()
            .find(|&&c| c != 0)
            .copied()
            .ok_or_else(|| Error::InvalidInput("the zero vector is not a projective point".into()))?;
        let inv = field.inv(lead);
        Ok(PointProj { coords: coords.iter().map(|&c| field.mul(c, inv)).collect() })
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut coords = vec![0; n];
        coords[i] = 1;
        PointProj { coords }
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn parse(field: &PrimeField, text: &str) -> Result<Self> {
        let s = text.trim().trim_start_matches('(').trim_end_matches(')');
        let coords = s
            .split([':', ','])
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map(|v| field.from_i64(v))
                    .map_err(|_| Error::InvalidInput(format!("bad coordinate '{t}'")))
            })
            .collect::<Result<Vec<u32>>>()?;
        PointProj::new(field, coords)
    }
}

impl std::fmt::Display for PointProj {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(":"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization() {
        let f = PrimeField::default();
        let p = PointProj::new(&f, vec![0, 2, 4]).unwrap();
        assert_eq!(p.coords(), &[0, 1, 2]);
        assert!(PointProj::new(&f, vec![0, 0]).is_err());
        assert_eq!(PointProj::parse(&f, "(1:-1:0)").unwrap().coords(), &[1, 32002, 0]);
    }
}
