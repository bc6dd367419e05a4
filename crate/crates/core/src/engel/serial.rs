//! JSON term lists for distributions.
//!
//! ```json
//! {"rank": 2, "spanners": [[{"component": 3, "wave": "cos", "freq2": [0,0,0,0],
//!                            "coeff": "1", "pi_power": 0}], ...]}
//! ```

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::field::TrigVectorField;
use super::frames::Distribution;
use super::trig::{TrigScalar, Wave};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub component: usize,
    pub wave: Wave,
    pub freq2: [i64; 4],
    /// Exact rational, `"p"` or `"p/q"`.
    pub coeff: String,
    #[serde(default)]
    pub pi_power: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistributionJson {
    pub rank: usize,
    pub spanners: Vec<Vec<TermJson>>,
}

pub fn field_to_terms(f: &TrigVectorField) -> Vec<TermJson> {
    let mut out = Vec::new();
    for (component, c) in f.components().iter().enumerate() {
        for (k, q) in c.terms() {
            out.push(TermJson {
                component,
                wave: k.wave,
                freq2: k.freq2,
                coeff: q.to_string(),
                pi_power: k.pi_power,
            });
        }
    }
    out
}

pub fn field_from_terms(terms: &[TermJson]) -> Result<TrigVectorField> {
    let mut comps: [TrigScalar; 4] = Default::default();
    for t in terms {
        if t.component >= 4 {
            return Err(Error::Distribution(format!(
                "component index {} out of range",
                t.component
            )));
        }
        let q: BigRational =
            t.coeff.trim().parse().map_err(|_| {
                Error::Distribution(format!("bad rational coefficient {:?}", t.coeff))
            })?;
        let term = TrigScalar::term(t.wave, t.freq2, q, t.pi_power);
        comps[t.component] = &comps[t.component] + &term;
    }
    Ok(TrigVectorField::new(comps))
}

impl From<&Distribution> for DistributionJson {
    fn from(d: &Distribution) -> Self {
        Self {
            rank: d.rank(),
            spanners: d.spanners().iter().map(field_to_terms).collect(),
        }
    }
}

impl DistributionJson {
    pub fn into_distribution(&self) -> Result<Distribution> {
        let spanners = self
            .spanners
            .iter()
            .map(|s| field_from_terms(s))
            .collect::<Result<Vec<_>>>()?;
        Distribution::new(spanners, self.rank)
    }
}

impl Distribution {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&DistributionJson::from(self))?)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        serde_json::from_str::<DistributionJson>(s)?.into_distribution()
    }
}
