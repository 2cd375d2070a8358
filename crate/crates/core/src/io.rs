//! JSON forms of diagrams, elements, propagators, models and amplitudes.
//! Rationals are `"p/q"` strings; polynomials in `N` are coefficient maps
//! such as `{"0": "1", "2": "-3/2"}`; polynomials in the loop weight `z`
//! inside Brauer elements are coefficient lists `[c_0, c_1, ...]`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::brauer::{BrauerDiagram, BrauerElement, Coefficient};
use crate::combinatorics::DirectedPairing;
use crate::error::{Error, Result};
use crate::grading::Grading;
use crate::model::{Amplitude, Interaction, ModelSpec, Propagator, PropagatorTerm, StrandedGraph};
use crate::poly::{Poly, RatFunc};
use crate::rational::{format_q, parse_q, Q};
use crate::representation::{decompose_projector_as_propagator, GradedForm};
use crate::young::YoungDiagram;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairingJson {
    pub n: usize,
    pub pairs: Vec<[usize; 2]>,
}

impl From<&DirectedPairing> for PairingJson {
    fn from(m: &DirectedPairing) -> Self {
        PairingJson {
            n: m.size(),
            pairs: m.pairs().iter().map(|&(i, j)| [i, j]).collect(),
        }
    }
}

impl TryFrom<&PairingJson> for DirectedPairing {
    type Error = Error;

    fn try_from(j: &PairingJson) -> Result<Self> {
        DirectedPairing::new(j.n, j.pairs.iter().map(|p| (p[0], p[1])).collect())
    }
}

/// Top points `1..=D`, bottom points `D+1..=2D`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramJson {
    #[serde(rename = "D")]
    pub d: usize,
    pub pairs: Vec<[usize; 2]>,
}

impl From<&BrauerDiagram> for DiagramJson {
    fn from(b: &BrauerDiagram) -> Self {
        DiagramJson {
            d: b.strands(),
            pairs: b.pairs().into_iter().map(|(i, j)| [i, j]).collect(),
        }
    }
}

impl TryFrom<&DiagramJson> for BrauerDiagram {
    type Error = Error;

    fn try_from(j: &DiagramJson) -> Result<Self> {
        let pairs: Vec<(usize, usize)> = j.pairs.iter().map(|p| (p[0], p[1])).collect();
        BrauerDiagram::new(j.d, &pairs)
    }
}

/// A coefficient that is a polynomial `[c_0, c_1, ...]` in `z`, or a
/// quotient of two such.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WeightJson {
    Constant(String),
    Poly(Vec<String>),
    Rational { num: Vec<String>, den: Vec<String> },
}

fn poly_to_list(p: &Poly) -> Vec<String> {
    if p.is_zero() {
        vec!["0".into()]
    } else {
        p.coeffs().iter().map(format_q).collect()
    }
}

fn list_to_poly(list: &[String]) -> Result<Poly> {
    Ok(Poly::new(list.iter().map(|s| parse_q(s)).collect::<Result<_>>()?))
}

impl From<&RatFunc> for WeightJson {
    fn from(r: &RatFunc) -> Self {
        match r.as_poly() {
            Some(p) => match p.as_constant() {
                Some(c) => WeightJson::Constant(format_q(&c)),
                None => WeightJson::Poly(poly_to_list(p)),
            },
            None => WeightJson::Rational {
                num: poly_to_list(r.numer()),
                den: poly_to_list(r.denom()),
            },
        }
    }
}

impl TryFrom<&WeightJson> for RatFunc {
    type Error = Error;

    fn try_from(w: &WeightJson) -> Result<Self> {
        match w {
            WeightJson::Constant(s) => Ok(RatFunc::constant(parse_q(s)?)),
            WeightJson::Poly(list) => Ok(RatFunc::from_poly(list_to_poly(list)?)),
            WeightJson::Rational { num, den } => RatFunc::new(list_to_poly(num)?, list_to_poly(den)?),
        }
    }
}

/// Coefficient types that have a JSON weight form.
pub trait JsonCoefficient: Coefficient {
    fn to_weight(&self) -> WeightJson;
}

impl JsonCoefficient for Q {
    fn to_weight(&self) -> WeightJson {
        WeightJson::Constant(format_q(self))
    }
}

impl JsonCoefficient for Poly {
    fn to_weight(&self) -> WeightJson {
        WeightJson::from(&RatFunc::from_poly(self.clone()))
    }
}

impl JsonCoefficient for RatFunc {
    fn to_weight(&self) -> WeightJson {
        WeightJson::from(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementTermJson {
    pub diagram: DiagramJson,
    pub coeff: WeightJson,
}

/// A Brauer element as a list of terms in diagram order.
pub fn element_to_json<C: JsonCoefficient>(e: &BrauerElement<C>) -> Vec<ElementTermJson> {
    e.terms()
        .map(|(b, c)| ElementTermJson {
            diagram: DiagramJson::from(b),
            coeff: c.to_weight(),
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropagatorTermJson {
    /// Directed pairs over `1..=2D`, giving the orientation of the term.
    pub pairs: Vec<[usize; 2]>,
    pub gamma: WeightJson,
}

/// An irreducible projector used as a propagator. Rows `[D]` and columns
/// `[1, ..., 1]` are available for every `N`; other shapes need `N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectorSpecJson {
    pub lambda: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normalization: Option<String>,
    #[serde(rename = "N", default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
}

/// Either an explicit list of terms or a named projector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropagatorJson {
    #[serde(rename = "D", default, skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub terms: Option<Vec<PropagatorTermJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub projector: Option<ProjectorSpecJson>,
}

impl From<&Propagator> for PropagatorJson {
    fn from(c: &Propagator) -> Self {
        PropagatorJson {
            d: Some(c.strands()),
            terms: Some(
                c.terms()
                    .iter()
                    .map(|t| PropagatorTermJson {
                        pairs: t.orientation.pairs().iter().map(|&(i, j)| [i, j]).collect(),
                        gamma: WeightJson::from(&t.weight),
                    })
                    .collect(),
            ),
            projector: None,
        }
    }
}

impl PropagatorJson {
    /// Builds the propagator for `d` strands. The grading is only used by
    /// projectors that are built at a concrete `N`.
    pub fn to_propagator(&self, d: usize, grading: Grading) -> Result<Propagator> {
        if let Some(declared) = self.d {
            if declared != d {
                return Err(Error::StrandMismatch(d, declared));
            }
        }
        match (&self.terms, &self.projector) {
            (Some(terms), None) => {
                let terms = terms
                    .iter()
                    .map(|t| {
                        let orientation = DirectedPairing::new(2 * d, t.pairs.iter().map(|p| (p[0], p[1])).collect())?;
                        let diagram = BrauerDiagram::from_matching(d, &orientation.undirected())?;
                        Ok(PropagatorTerm {
                            diagram,
                            orientation,
                            weight: RatFunc::try_from(&t.gamma)?,
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Propagator::new(d, terms)
            }
            (None, Some(spec)) => projector_propagator(spec, d, grading),
            _ => Err(Error::InvalidPropagator("give exactly one of \"terms\" and \"projector\"".into())),
        }
    }
}

fn projector_propagator(spec: &ProjectorSpecJson, d: usize, grading: Grading) -> Result<Propagator> {
    let lambda = YoungDiagram::new(spec.lambda.clone())?;
    if lambda.size() != d {
        return Err(Error::StrandMismatch(d, lambda.size()));
    }
    let base = if lambda == YoungDiagram::row(d) && spec.n.is_none() {
        Propagator::symmetric_traceless(d)?
    } else if lambda == YoungDiagram::column(d) && spec.n.is_none() {
        Propagator::antisymmetric(d)?
    } else {
        let n = spec.n.ok_or_else(|| {
            Error::InvalidPropagator(format!("projector for shape {:?} needs a concrete \"N\"", spec.lambda))
        })?;
        let form = GradedForm::new(n, grading)?;
        let weights = decompose_projector_as_propagator(&lambda, &form)?;
        Propagator::from_weights(d, weights.into_iter().map(|(b, c)| (b, RatFunc::constant(c))))?
    };
    match &spec.normalization {
        None => Ok(base),
        Some(s) => {
            let c = parse_q(s)?;
            let terms = base
                .terms()
                .iter()
                .map(|t| PropagatorTerm {
                    weight: t.weight.scale(&c),
                    ..t.clone()
                })
                .collect();
            Propagator::new(d, terms)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InteractionJson {
    pub name: String,
    pub graph: StrandedGraph,
}

/// A model: strand count, grading bit, propagator and named interactions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelFile {
    #[serde(rename = "D")]
    pub d: usize,
    pub b: u8,
    pub propagator: PropagatorJson,
    #[serde(default)]
    pub interactions: Vec<InteractionJson>,
}

impl ModelFile {
    pub fn to_model(&self) -> Result<ModelSpec> {
        let grading = Grading::from_bit(self.b)?;
        let propagator = self.propagator.to_propagator(self.d, grading)?;
        let interactions = self
            .interactions
            .iter()
            .map(|i| Interaction {
                name: i.name.clone(),
                graph: i.graph.clone(),
            })
            .collect();
        ModelSpec::new(self.d, grading, propagator, interactions)
    }
}

/// A polynomial as a coefficient map keyed by exponent.
pub fn poly_to_map(p: &Poly) -> BTreeMap<String, String> {
    p.to_coeff_map()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RatFuncJson {
    Poly(BTreeMap<String, String>),
    Rational {
        num: BTreeMap<String, String>,
        den: BTreeMap<String, String>,
    },
}

impl From<&RatFunc> for RatFuncJson {
    fn from(r: &RatFunc) -> Self {
        match r.as_poly() {
            Some(p) => RatFuncJson::Poly(p.to_coeff_map()),
            None => RatFuncJson::Rational {
                num: r.numer().to_coeff_map(),
                den: r.denom().to_coeff_map(),
            },
        }
    }
}

impl TryFrom<&RatFuncJson> for RatFunc {
    type Error = Error;

    fn try_from(j: &RatFuncJson) -> Result<Self> {
        match j {
            RatFuncJson::Poly(map) => Ok(RatFunc::from_poly(Poly::from_coeff_map(map)?)),
            RatFuncJson::Rational { num, den } => RatFunc::new(Poly::from_coeff_map(num)?, Poly::from_coeff_map(den)?),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmplitudeJson {
    pub b: u8,
    pub amplitude: RatFuncJson,
    pub text: String,
}

impl From<&Amplitude> for AmplitudeJson {
    fn from(a: &Amplitude) -> Self {
        AmplitudeJson {
            b: a.grading().bit(),
            amplitude: RatFuncJson::from(a.value()),
            text: a.value().display_in("N"),
        }
    }
}

pub fn read_json<T: serde::de::DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}
