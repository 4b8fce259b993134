//! JSON dump format for polynomials.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::integer::Integer;
use crate::poly::NCPoly;
use crate::word::ReducedWord;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDump {
    pub word: ReducedWord,
    pub coeff: Integer,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyDump {
    pub schema: u32,
    pub r: u32,
    pub n: u32,
    pub name: String,
    pub terms: Vec<TermDump>,
}

impl PolyDump {
    /// Terms are written in the canonical word order, so equal polynomials dump identically.
    pub fn new(r: u32, n: u32, name: impl Into<String>, p: &NCPoly) -> Self {
        PolyDump {
            schema: SCHEMA_VERSION,
            r,
            n,
            name: name.into(),
            terms: p
                .sorted_terms()
                .into_iter()
                .map(|(w, c)| TermDump {
                    word: w.clone(),
                    coeff: c.clone(),
                })
                .collect(),
        }
    }

    pub fn to_poly(&self) -> Result<NCPoly> {
        if self.schema != SCHEMA_VERSION {
            return Err(Error::Validation(format!(
                "unsupported schema {} (expected {SCHEMA_VERSION})",
                self.schema
            )));
        }
        let mut p = NCPoly::with_capacity(self.terms.len());
        for t in &self.terms {
            p.add_term(t.word.clone(), t.coeff.clone());
        }
        Ok(p)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let tmp = path.with_extension("tmp");
        std::fs::write(&tmp, self.to_json()?)?;
        std::fs::rename(&tmp, path)?;
        Ok(())
    }

    pub fn read(path: &Path) -> Result<Self> {
        PolyDump::from_json(&std::fs::read_to_string(path)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::str::FromStr;

    #[test]
    fn json_shape() {
        let p = NCPoly::from_str("x y^-2 + 3*y").unwrap();
        let d = PolyDump::new(3, 5, "x_4", &p);
        let v: serde_json::Value = serde_json::from_str(&d.to_json().unwrap()).unwrap();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["name"], "x_4");
        assert_eq!(v["terms"][0]["word"], serde_json::json!([["y", 1]]));
        assert_eq!(v["terms"][0]["coeff"], "3");
        assert_eq!(d.to_poly().unwrap(), p);
    }

    #[test]
    fn file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("p.json");
        let p = NCPoly::from_str("x y x^-1 + 2*1").unwrap();
        PolyDump::new(2, 4, "p", &p).write(&path).unwrap();
        assert_eq!(PolyDump::read(&path).unwrap().to_poly().unwrap(), p);
    }
}
