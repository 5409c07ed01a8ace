use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{Tolerance, Vector};

use super::ConvexSet;

fn default_scale() -> f64 {
    1.0
}

/// JSON form of a set, tagged by `type`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
pub enum SetDescription {
    HPolyhedron {
        #[serde(rename = "A")]
        a: Vec<Vec<f64>>,
        b: Vec<f64>,
    },
    VPolyhedron {
        vertices: Vec<Vec<f64>>,
        #[serde(default)]
        rays: Vec<Vec<f64>>,
    },
    HyperbolaEpigraph {},
    ParabolaEpigraph {
        #[serde(default = "default_scale")]
        scale: f64,
    },
    #[serde(rename = "cone-lift-3d")]
    ConeLift3D {},
    Truncation {
        base: Box<SetDescription>,
        radius: f64,
    },
}

fn vectors(rows: &[Vec<f64>]) -> Result<Vec<Vector>> {
    rows.iter().map(|r| Vector::from_slice(r)).collect()
}

impl SetDescription {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("set descriptions always serialize")
    }

    /// Builds the set, validating shapes, nonemptiness and parameters.
    pub fn build(&self, tol: &Tolerance) -> Result<ConvexSet> {
        match self {
            SetDescription::HPolyhedron { a, b } => {
                let n = a.first().map_or(0, |r| r.len());
                if let Some(bad) = a.iter().find(|r| r.len() != n) {
                    return Err(Error::DimensionMismatch {
                        expected: n,
                        found: bad.len(),
                    });
                }
                if b.len() != a.len() {
                    return Err(Error::DimensionMismatch {
                        expected: a.len(),
                        found: b.len(),
                    });
                }
                ConvexSet::h_polyhedron(a.clone(), b.clone())
            }
            SetDescription::VPolyhedron { vertices, rays } => {
                ConvexSet::v_polyhedron(vectors(vertices)?, vectors(rays)?)
            }
            SetDescription::HyperbolaEpigraph {} => Ok(ConvexSet::HyperbolaEpigraph),
            SetDescription::ParabolaEpigraph { scale } => ConvexSet::parabola(*scale),
            SetDescription::ConeLift3D {} => Ok(ConvexSet::ConeLift3D),
            SetDescription::Truncation { base, radius } => base.build(tol)?.truncated(*radius, tol),
        }
    }
}

impl ConvexSet {
    /// Parses and builds a set from its JSON description.
    pub fn from_json(text: &str, tol: &Tolerance) -> Result<Self> {
        SetDescription::from_json(text)?.build(tol)
    }

    pub fn description(&self) -> SetDescription {
        let rows = |vs: &[Vector]| vs.iter().map(|v| v.as_slice().to_vec()).collect::<Vec<_>>();
        match self {
            ConvexSet::HPolyhedron(h) => SetDescription::HPolyhedron {
                a: h.matrix().to_vec(),
                b: h.rhs().to_vec(),
            },
            ConvexSet::VPolyhedron(v) => SetDescription::VPolyhedron {
                vertices: rows(v.vertices()),
                rays: rows(v.rays()),
            },
            ConvexSet::HyperbolaEpigraph => SetDescription::HyperbolaEpigraph {},
            ConvexSet::ParabolaEpigraph { scale } => SetDescription::ParabolaEpigraph { scale: *scale },
            ConvexSet::ConeLift3D => SetDescription::ConeLift3D {},
            ConvexSet::Truncation(t) => SetDescription::Truncation {
                base: Box::new(t.base().description()),
                radius: t.radius(),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_all_variants() {
        let tol = Tolerance::default();
        let texts = [
            r#"{"type":"h-polyhedron","A":[[1,0],[-1,0],[0,1],[0,-1]],"b":[1,0,1,0]}"#,
            r#"{"type":"v-polyhedron","vertices":[[0,0]],"rays":[[1,0]]}"#,
            r#"{"type":"v-polyhedron","vertices":[[0,0],[1,1]]}"#,
            r#"{"type":"hyperbola-epigraph"}"#,
            r#"{"type":"parabola-epigraph","scale":2.0}"#,
            r#"{"type":"parabola-epigraph"}"#,
            r#"{"type":"cone-lift-3d"}"#,
            r#"{"type":"truncation","base":{"type":"hyperbola-epigraph"},"radius":3.0}"#,
        ];
        for t in texts {
            let set = ConvexSet::from_json(t, &tol).unwrap();
            let again = ConvexSet::from_json(&set.description().to_json(), &tol).unwrap();
            assert_eq!(set.description(), again.description());
        }
    }

    #[test]
    fn rejects_unknown_fields_and_types() {
        assert!(matches!(
            SetDescription::from_json(r#"{"type":"hyperbola-epigraph","extra":1}"#),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            SetDescription::from_json(r#"{"type":"circle"}"#),
            Err(Error::Parse(_))
        ));
        let tol = Tolerance::default();
        assert!(matches!(
            ConvexSet::from_json(r#"{"type":"h-polyhedron","A":[[1,0],[1]],"b":[1,1]}"#, &tol),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            ConvexSet::from_json(r#"{"type":"h-polyhedron","A":[[1],[-1]],"b":[0,-1]}"#, &tol),
            Err(Error::EmptySet)
        ));
    }

    #[test]
    fn nested_truncation_rejected() {
        let tol = Tolerance::default();
        let text = r#"{"type":"truncation","radius":3,"base":{"type":"truncation","radius":3,"base":{"type":"hyperbola-epigraph"}}}"#;
        assert!(matches!(ConvexSet::from_json(text, &tol), Err(Error::NestedTruncation)));
    }
}
