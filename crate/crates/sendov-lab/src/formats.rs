//! Polynomial JSON files: `{"coeffs": [[re,im],...]}` with ascending
//! powers and the monic leading 1 implied, or `{"roots": [[re,im],...]}`.
//! A file specifying both (or neither) is rejected.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use sendov_core::{Complex64, MonicPoly};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyFile {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coeffs: Option<Vec<[f64; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub roots: Option<Vec<[f64; 2]>>,
}

pub fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

fn unpair(entries: &[[f64; 2]]) -> Result<Vec<Complex64>> {
    let mut out = Vec::with_capacity(entries.len());
    for &[re, im] in entries {
        if !re.is_finite() || !im.is_finite() {
            bail!("non-finite entry [{re}, {im}]");
        }
        out.push(Complex64::new(re, im));
    }
    Ok(out)
}

/// Parses a polynomial from JSON text.
pub fn parse_poly(text: &str) -> Result<MonicPoly> {
    let file: PolyFile = serde_json::from_str(text).context("malformed polynomial JSON")?;
    match (file.coeffs, file.roots) {
        (Some(_), Some(_)) => bail!("polynomial file specifies both coeffs and roots"),
        (None, None) => bail!("polynomial file specifies neither coeffs nor roots"),
        (Some(coeffs), None) => {
            if coeffs.is_empty() {
                bail!("empty coefficient list");
            }
            MonicPoly::from_coeffs(unpair(&coeffs)?).map_err(|e| anyhow::anyhow!("{e}"))
        }
        (None, Some(roots)) => {
            if roots.is_empty() {
                bail!("empty root list");
            }
            MonicPoly::from_roots(&unpair(&roots)?).map_err(|e| anyhow::anyhow!("{e}"))
        }
    }
}

/// Reads a polynomial from a JSON file.
pub fn read_poly(path: &Path) -> Result<MonicPoly> {
    let text =
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_poly(&text).with_context(|| format!("parsing {}", path.display()))
}

/// Serializes a root list in the reader's own format.
pub fn roots_json(roots: &[Complex64]) -> String {
    let file = PolyFile {
        coeffs: None,
        roots: Some(roots.iter().map(|&z| pair(z)).collect()),
    };
    serde_json::to_string_pretty(&file).expect("serializable")
}
