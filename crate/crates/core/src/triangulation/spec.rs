//! Line-oriented gluing-spec format and its JSON mirror.
//!
//! ```text
//! dim 3
//! tets 1
//! # glue <tetA> <facetA> <tetB> <facetB> <s0 s1 s2 s3>
//! glue 0 1 0 3 0 3 1 2
//! ```
//!
//! Facet i of a simplex is the face opposite vertex slot i. A glue line
//! lists the image of every vertex slot of simplex A in simplex B; the
//! facet slot maps to the facet slot. Listing one direction of a gluing
//! suffices, the inverse is implied.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpecError {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("facet ({simplex},{facet}) appears in more than one gluing")]
    DuplicateFacet { simplex: usize, facet: usize },
    #[error("bad permutation in gluing at line {line}: {msg}")]
    BadPermutation { line: usize, msg: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GluingRecord {
    pub simplex_a: usize,
    pub facet_a: usize,
    pub simplex_b: usize,
    pub facet_b: usize,
    /// Image of each vertex slot of simplex A in simplex B.
    pub image: Vec<usize>,
}

impl GluingRecord {
    /// The record read in the other direction.
    pub fn inverse(&self) -> GluingRecord {
        let mut inv = vec![0; self.image.len()];
        for (i, &j) in self.image.iter().enumerate() {
            inv[j] = i;
        }
        GluingRecord {
            simplex_a: self.simplex_b,
            facet_a: self.facet_b,
            simplex_b: self.simplex_a,
            facet_b: self.facet_a,
            image: inv,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GluingSpec {
    pub dimension: usize,
    pub simplex_count: usize,
    pub gluings: Vec<GluingRecord>,
}

impl GluingSpec {
    pub fn new(dimension: usize, simplex_count: usize) -> Self {
        assert!(dimension == 2 || dimension == 3);
        GluingSpec {
            dimension,
            simplex_count,
            gluings: Vec::new(),
        }
    }

    pub fn slots(&self) -> usize {
        self.dimension + 1
    }

    pub fn glue(&mut self, a: usize, fa: usize, b: usize, fb: usize, image: &[usize]) {
        self.gluings.push(GluingRecord {
            simplex_a: a,
            facet_a: fa,
            simplex_b: b,
            facet_b: fb,
            image: image.to_vec(),
        });
    }

    /// Structural validation shared by the parser and programmatic
    /// construction: slot images are bijections mapping facet to facet,
    /// and no facet is glued twice.
    pub fn validate(&self) -> Result<(), SpecError> {
        let n = self.slots();
        let mut used = vec![false; self.simplex_count * n];
        for (idx, g) in self.gluings.iter().enumerate() {
            let line = idx + 1;
            if g.simplex_a >= self.simplex_count || g.simplex_b >= self.simplex_count {
                return Err(SpecError::Parse {
                    line,
                    msg: format!("simplex index out of range in gluing {idx}"),
                });
            }
            if g.facet_a >= n || g.facet_b >= n {
                return Err(SpecError::Parse {
                    line,
                    msg: format!("facet index out of range in gluing {idx}"),
                });
            }
            if g.image.len() != n {
                return Err(SpecError::BadPermutation {
                    line,
                    msg: format!("expected {n} slot images"),
                });
            }
            let mut seen = vec![false; n];
            for &s in &g.image {
                if s >= n || seen[s] {
                    return Err(SpecError::BadPermutation {
                        line,
                        msg: "slot image is not a bijection".into(),
                    });
                }
                seen[s] = true;
            }
            if g.image[g.facet_a] != g.facet_b {
                return Err(SpecError::BadPermutation {
                    line,
                    msg: "facet slot must map to facet slot".into(),
                });
            }
            for &(s, f) in &[(g.simplex_a, g.facet_a), (g.simplex_b, g.facet_b)] {
                let key = s * n + f;
                if used[key] && !(g.simplex_a == g.simplex_b && g.facet_a == g.facet_b) {
                    return Err(SpecError::DuplicateFacet { simplex: s, facet: f });
                }
                used[key] = true;
            }
            if g.simplex_a == g.simplex_b && g.facet_a == g.facet_b {
                return Err(SpecError::BadPermutation {
                    line,
                    msg: "facet glued to itself".into(),
                });
            }
        }
        Ok(())
    }

    pub fn parse(text: &str) -> Result<GluingSpec, SpecError> {
        let mut dimension: Option<usize> = None;
        let mut count: Option<usize> = None;
        let mut gluings = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let toks: Vec<&str> = content.split_whitespace().collect();
            let parse_usize = |tok: &str| -> Result<usize, SpecError> {
                tok.parse().map_err(|_| SpecError::Parse {
                    line,
                    msg: format!("expected a non-negative integer, got '{tok}'"),
                })
            };
            match toks[0] {
                "dim" => {
                    if toks.len() != 2 {
                        return Err(SpecError::Parse {
                            line,
                            msg: "dim takes one argument".into(),
                        });
                    }
                    let d = parse_usize(toks[1])?;
                    if d != 2 && d != 3 {
                        return Err(SpecError::Parse {
                            line,
                            msg: "dimension must be 2 or 3".into(),
                        });
                    }
                    dimension = Some(d);
                }
                "tets" | "tris" => {
                    if toks.len() != 2 {
                        return Err(SpecError::Parse {
                            line,
                            msg: format!("{} takes one argument", toks[0]),
                        });
                    }
                    let expected_dim = if toks[0] == "tets" { 3 } else { 2 };
                    if dimension != Some(expected_dim) {
                        return Err(SpecError::Parse {
                            line,
                            msg: format!("'{}' requires dim {}", toks[0], expected_dim),
                        });
                    }
                    count = Some(parse_usize(toks[1])?);
                }
                "glue" => {
                    let dim = dimension.ok_or(SpecError::Parse {
                        line,
                        msg: "glue before dim".into(),
                    })?;
                    let slots = dim + 1;
                    if toks.len() != 5 + slots {
                        return Err(SpecError::Parse {
                            line,
                            msg: format!("glue takes {} arguments", 4 + slots),
                        });
                    }
                    let nums: Result<Vec<usize>, _> =
                        toks[1..].iter().map(|t| parse_usize(t)).collect();
                    let nums = nums?;
                    gluings.push(GluingRecord {
                        simplex_a: nums[0],
                        facet_a: nums[1],
                        simplex_b: nums[2],
                        facet_b: nums[3],
                        image: nums[4..].to_vec(),
                    });
                }
                other => {
                    return Err(SpecError::Parse {
                        line,
                        msg: format!("unknown directive '{other}'"),
                    });
                }
            }
        }
        let dimension = dimension.ok_or(SpecError::Parse {
            line: 0,
            msg: "missing dim line".into(),
        })?;
        let simplex_count = count.ok_or(SpecError::Parse {
            line: 0,
            msg: "missing simplex count line".into(),
        })?;
        let spec = GluingSpec {
            dimension,
            simplex_count,
            gluings,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("dim {}\n", self.dimension));
        out.push_str(&format!(
            "{} {}\n",
            if self.dimension == 3 { "tets" } else { "tris" },
            self.simplex_count
        ));
        for g in &self.gluings {
            let image: Vec<String> = g.image.iter().map(|s| s.to_string()).collect();
            out.push_str(&format!(
                "glue {} {} {} {} {}\n",
                g.simplex_a,
                g.facet_a,
                g.simplex_b,
                g.facet_b,
                image.join(" ")
            ));
        }
        out
    }

    /// Disjoint union; simplices of `other` are appended after ours.
    pub fn disjoint_union(&self, other: &GluingSpec) -> GluingSpec {
        assert_eq!(self.dimension, other.dimension);
        let mut out = self.clone();
        let off = self.simplex_count;
        out.simplex_count += other.simplex_count;
        for g in &other.gluings {
            out.gluings.push(GluingRecord {
                simplex_a: g.simplex_a + off,
                facet_a: g.facet_a,
                simplex_b: g.simplex_b + off,
                facet_b: g.facet_b,
                image: g.image.clone(),
            });
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const S3_DOC: &str = "\
dim 3
tets 1
# glue <tetA> <facetA> <tetB> <facetB> <s0 s1 s2 s3>
glue 0 1 0 3 0 3 1 2
glue 0 0 0 2 2 0 3 1
";

    #[test]
    fn parses_one_tetra_document() {
        let spec = GluingSpec::parse(S3_DOC).unwrap();
        assert_eq!(spec.simplex_count, 1);
        assert_eq!(spec.gluings.len(), 2);
    }

    #[test]
    fn empty_gluing_list_is_valid() {
        let spec = GluingSpec::parse("dim 3\ntets 1\n").unwrap();
        assert!(spec.gluings.is_empty());
    }

    #[test]
    fn duplicate_facet_rejected() {
        let doc = "dim 3\ntets 2\nglue 0 0 1 0 0 1 2 3\nglue 0 0 1 1 1 0 2 3\n";
        match GluingSpec::parse(doc) {
            Err(SpecError::DuplicateFacet { simplex: 0, facet: 0 }) => {}
            other => panic!("expected DuplicateFacet, got {other:?}"),
        }
    }

    #[test]
    fn bad_permutation_rejected() {
        let doc = "dim 3\ntets 2\nglue 0 0 1 0 0 0 2 3\n";
        assert!(matches!(
            GluingSpec::parse(doc),
            Err(SpecError::BadPermutation { .. })
        ));
        // Facet slot must map to facet slot.
        let doc2 = "dim 3\ntets 2\nglue 0 0 1 1 0 2 1 3\n";
        assert!(matches!(
            GluingSpec::parse(doc2),
            Err(SpecError::BadPermutation { .. })
        ));
    }

    #[test]
    fn text_roundtrip() {
        let spec = GluingSpec::parse(S3_DOC).unwrap();
        let again = GluingSpec::parse(&spec.to_text()).unwrap();
        assert_eq!(spec, again);
    }

    #[test]
    fn json_roundtrip() {
        let spec = GluingSpec::parse(S3_DOC).unwrap();
        let js = serde_json::to_string(&spec).unwrap();
        let again: GluingSpec = serde_json::from_str(&js).unwrap();
        assert_eq!(spec, again);
    }
}
