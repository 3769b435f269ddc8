use serde::{Deserialize, Serialize};

use super::{is_bounded, Body, HRep, HalfSpace, Polytope};
use crate::error::{Error, Result};
use crate::exact::RatVector;

/// On-disk body description: exactly one of `vrep` (points whose hull is
/// the body) or `hrep` (halfspaces `a·x ≤ b`).
///
/// ```json
/// {"dim": 2, "vrep": [[-1, -1], [2, -1], [-1, 2]]}
/// {"dim": 2, "hrep": [{"a": [1, 0], "b": "3/2"}, ...]}
/// ```
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BodySpec {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vrep: Option<Vec<RatVector>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hrep: Option<Vec<HalfSpace>>,
}

impl BodySpec {
    pub fn from_polytope(p: &Polytope) -> BodySpec {
        BodySpec {
            dim: p.dim(),
            vrep: Some(p.vertices().to_vec()),
            hrep: None,
        }
    }

    pub fn from_hrep(h: &HRep) -> BodySpec {
        BodySpec {
            dim: h.dim(),
            vrep: None,
            hrep: Some(h.halfspaces().to_vec()),
        }
    }

    pub fn parse(text: &str) -> Result<BodySpec> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("body serializes")
    }

    pub fn to_body(&self) -> Result<Body> {
        super::check_dim(self.dim)?;
        match (&self.vrep, &self.hrep) {
            (Some(v), None) => Body::from_polytope(&Polytope::from_points(self.dim, v.clone())?),
            (None, Some(h)) => {
                let h = HRep::new(self.dim, h.clone())?;
                if !is_bounded(&h) {
                    return Err(Error::Unbounded);
                }
                Body::from_hrep(&h)
            }
            _ => Err(Error::Parse(
                "body needs exactly one of \"vrep\" or \"hrep\"".into(),
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::frac;

    #[test]
    fn parses_both_forms() {
        let v = BodySpec::parse(r#"{"dim": 2, "vrep": [[-1, -1], [2, -1], [-1, 2]]}"#).unwrap();
        let h = BodySpec::parse(
            r#"{"dim": 2, "hrep": [{"a": [-1, 0], "b": 1}, {"a": [0, -1], "b": "1"}, {"a": [1, 1], "b": "1"}]}"#,
        )
        .unwrap();
        assert_eq!(v.to_body().unwrap(), h.to_body().unwrap());
        assert_eq!(v.to_body().unwrap().volume(), frac(9, 2));
    }

    #[test]
    fn roundtrip() {
        let spec = BodySpec::parse(r#"{"dim": 1, "vrep": [["-1/2"], [3]]}"#).unwrap();
        assert_eq!(BodySpec::parse(&spec.to_json()).unwrap(), spec);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(BodySpec::parse("{"), Err(Error::Parse(_))));
        assert!(matches!(
            BodySpec::parse(r#"{"dim": 2}"#).unwrap().to_body(),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            BodySpec::parse(r#"{"dim": 2, "hrep": [{"a": [1, 0], "b": 1}]}"#)
                .unwrap()
                .to_body(),
            Err(Error::Unbounded)
        ));
        assert!(matches!(
            BodySpec::parse(r#"{"dim": 5, "vrep": [[0,0,0,0,0]]}"#)
                .unwrap()
                .to_body(),
            Err(Error::UnsupportedDimension(5))
        ));
        assert!(BodySpec::parse(r#"{"dim": 2, "vrep": [[0, 0]], "extra": 1}"#).is_err());
    }
}
