//! The JSON jet format. Rationals are exact strings; terms are kept sorted so
//! that parsing and re-serializing a canonical file is the identity.

use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crinv::algebra::{format_rational, parse_rational, CoeffPoly, Scalar, Validity};
use crinv::jets::{BoundaryJet, JetSpace};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JetTerm {
    pub alpha: Vec<u32>,
    pub beta: Vec<u32>,
    pub l: u32,
    pub re: String,
    pub im: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JetFile {
    pub n: usize,
    pub density: [i32; 2],
    /// `null` marks an exact (polynomial) jet.
    pub valid_weight: Option<i32>,
    pub terms: Vec<JetTerm>,
}

impl JetFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(format!("malformed jet file: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_text(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn to_jet(&self) -> Result<BoundaryJet, CliError> {
        if self.n < 2 {
            return Err(CliError::Parse(format!("n must be at least 2, got {}", self.n)));
        }
        let space = JetSpace::new(self.n)?;
        let valid = match self.valid_weight {
            Some(w) => Validity::Below(w),
            None => Validity::Exact,
        };
        let mut jet = BoundaryJet::zero(&space, valid);
        let mut seen = BTreeSet::new();
        for t in &self.terms {
            if t.alpha.len() != self.n - 1 || t.beta.len() != self.n - 1 {
                return Err(CliError::Parse(format!("multi-index length must be {} in {t:?}", self.n - 1)));
            }
            if !seen.insert((t.alpha.clone(), t.beta.clone(), t.l)) {
                return Err(CliError::Parse(format!("duplicate term {:?} {:?} l={}", t.alpha, t.beta, t.l)));
            }
            let c = Scalar::new(parse_rational(&t.re)?, parse_rational(&t.im)?);
            jet.add_term(&t.alpha, &t.beta, t.l, CoeffPoly::constant(c));
        }
        let jet = jet.with_density((self.density[0], self.density[1]));
        if self.density[0] == self.density[1] && !jet.is_real() {
            return Err(CliError::Parse("jet of density (p,p) must be real".into()));
        }
        Ok(jet)
    }

    /// Serializes a numeric jet; fails on symbolic coefficients.
    pub fn from_jet(jet: &BoundaryJet) -> Result<Self, CliError> {
        let mut terms = Vec::new();
        for (alpha, beta, l, c) in jet.terms() {
            let c = c
                .as_constant()
                .ok_or_else(|| CliError::Usage("jet has symbolic coefficients and cannot be written".into()))?;
            if c.is_zero() {
                continue;
            }
            terms.push(JetTerm { alpha, beta, l, re: format_rational(&c.re), im: format_rational(&c.im) });
        }
        terms.sort_by(|a, b| (&a.alpha, &a.beta, a.l).cmp(&(&b.alpha, &b.beta, b.l)));
        let (p, q) = jet.density();
        Ok(JetFile { n: jet.n(), density: [p, q], valid_weight: jet.valid().bound(), terms })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v_file() -> JetFile {
        JetFile {
            n: 2,
            density: [0, 0],
            valid_weight: Some(5),
            terms: vec![JetTerm { alpha: vec![0], beta: vec![0], l: 1, re: "1".into(), im: "0".into() }],
        }
    }

    #[test]
    fn round_trip() {
        let f = v_file();
        let jet = f.to_jet().unwrap();
        assert_eq!(JetFile::from_jet(&jet).unwrap(), f);
        assert_eq!(JetFile::parse(&f.to_text()).unwrap(), f);
    }

    #[test]
    fn rejects_non_real() {
        let mut f = v_file();
        f.terms[0].im = "1".into();
        assert!(matches!(f.to_jet(), Err(CliError::Parse(_))));
    }

    #[test]
    fn rejects_bad_rational_and_fields() {
        let mut f = v_file();
        f.terms[0].re = "1/0".into();
        assert!(f.to_jet().is_err());
        assert!(JetFile::parse(r#"{"n":2,"density":[0,0],"valid_weight":3,"terms":[],"x":1}"#).is_err());
    }
}
