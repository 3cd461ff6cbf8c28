//! Group and element input: JSON files, a line-based text format, and
//! built-in named groups.
//!
//! The text format is a `degree <n>` header followed by one generator per
//! line, in cycle or image-list notation. Blank lines and `#` comments are
//! ignored:
//!
//! ```text
//! # Sym(3)
//! degree 3
//! (0 1 2)
//! [1,0,2]
//! ```
//!
//! Named groups are `sym:<n>`, `alt:<n>`, `agl1:<q>` (or `agl1:<p>^<d>`),
//! `pgl2:<p>` and `construction:<q>`, the last being the subgroup `K` of
//! the `q ≡ 3 (mod 4)` construction.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::constructions::{build_agl1, build_alt, build_construction, build_pgl2, build_sym, projective_inversion};
use crate::error::{Error, Result};
use crate::field::{prime_power, FiniteField};
use crate::group::PermGroup;
use crate::perm::Permutation;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupJson {
    pub degree: usize,
    pub generators: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl GroupJson {
    pub fn from_group(g: &PermGroup) -> GroupJson {
        GroupJson {
            degree: g.degree(),
            generators: g.generators().iter().map(Permutation::to_vec).collect(),
            name: g.name().map(str::to_owned),
        }
    }

    pub fn to_group(&self) -> Result<PermGroup> {
        let gens = self
            .generators
            .iter()
            .map(|images| {
                let p = Permutation::from_images(images.iter().copied())?;
                if p.degree() != self.degree {
                    return Err(Error::DegreeMismatch {
                        left: self.degree,
                        right: p.degree(),
                    });
                }
                Ok(p)
            })
            .collect::<Result<Vec<_>>>()?;
        let group = if gens.is_empty() {
            PermGroup::trivial(self.degree)
        } else {
            PermGroup::new(gens)?
        };
        Ok(match &self.name {
            Some(n) => group.with_name(n.clone()),
            None => group,
        })
    }
}

pub fn parse_group_json(text: &str) -> Result<PermGroup> {
    serde_json::from_str::<GroupJson>(text)?.to_group()
}

pub fn parse_group_text(text: &str) -> Result<PermGroup> {
    let mut degree = None;
    let mut gens = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let at = |message: String| Error::ParseLine {
            line: i + 1,
            message,
        };
        match degree {
            None => {
                let n = line
                    .strip_prefix("degree")
                    .map(str::trim)
                    .and_then(|s| s.parse::<usize>().ok())
                    .filter(|&n| n > 0)
                    .ok_or_else(|| at(format!("expected `degree <n>`, found `{line}`")))?;
                degree = Some(n);
            }
            Some(n) => {
                let p = Permutation::parse(line, Some(n)).map_err(|e| match e {
                    Error::Parse(m) => at(m),
                    other => at(other.to_string()),
                })?;
                gens.push(p);
            }
        }
    }
    let n = degree.ok_or_else(|| Error::Parse("missing `degree <n>` header".into()))?;
    if gens.is_empty() {
        return Ok(PermGroup::trivial(n));
    }
    PermGroup::new(gens)
}

pub fn group_to_text(g: &PermGroup) -> String {
    let mut out = String::new();
    if let Some(name) = g.name() {
        out.push_str(&format!("# {name}\n"));
    }
    out.push_str(&format!("degree {}\n", g.degree()));
    for x in g.generators() {
        out.push_str(&format!("{x}\n"));
    }
    out
}

fn parse_number(s: &str, what: &str) -> Result<u64> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad {what} `{s}`")))
}

/// `q` or `p^d`.
fn parse_field_size(s: &str) -> Result<(u64, u32)> {
    if let Some((p, d)) = s.split_once('^') {
        let d = parse_number(d, "exponent")? as u32;
        return Ok((parse_number(p, "prime")?, d));
    }
    let q = parse_number(s, "field size")?;
    prime_power(q).ok_or_else(|| Error::InvalidArgument(format!("{q} is not a prime power")))
}

/// A built-in group, if `spec` names one.
pub fn named_group(spec: &str) -> Result<Option<PermGroup>> {
    let Some((kind, arg)) = spec.split_once(':') else {
        return Ok(None);
    };
    let group = match kind {
        "sym" => build_sym(parse_number(arg, "degree")? as usize),
        "alt" => build_alt(parse_number(arg, "degree")? as usize),
        "agl1" => {
            let (p, d) = parse_field_size(arg)?;
            build_agl1(&FiniteField::new(p, d)?)
        }
        "pgl2" => build_pgl2(parse_number(arg, "prime")?)?,
        "construction" => build_construction(parse_number(arg, "q")?)?.k,
        _ => return Ok(None),
    };
    Ok(Some(group))
}

/// A named group or a group file (`.json`, otherwise the text format).
pub fn load_group(spec: &str) -> Result<PermGroup> {
    if let Some(g) = named_group(spec)? {
        return Ok(g);
    }
    let path = Path::new(spec);
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot read group `{spec}`: {e}")))?;
    if path.extension().is_some_and(|e| e == "json") {
        parse_group_json(&text)
    } else {
        parse_group_text(&text)
    }
}

/// Like [`load_group`], plus `stab:<a>,<b>,…` for a pointwise stabilizer
/// in `ambient`.
pub fn load_subgroup(spec: &str, ambient: &PermGroup) -> Result<PermGroup> {
    if let Some(points) = spec.strip_prefix("stab:") {
        let points = points
            .split(',')
            .map(|s| parse_number(s, "point").map(|x| x as usize))
            .collect::<Result<Vec<_>>>()?;
        return ambient.tuple_stabilizer(&points);
    }
    load_group(spec)
}

/// A permutation: literal notation, `@<file>`, or a named element:
/// `construction:<q>` (the inversion `g`) or `pgl2:<p>` (`z ↦ 1/z`).
pub fn load_element(spec: &str, degree: usize) -> Result<Permutation> {
    let x = if let Some(q) = spec.strip_prefix("construction:") {
        build_construction(parse_number(q, "q")?)?.g
    } else if let Some(p) = spec.strip_prefix("pgl2:") {
        let p = parse_number(p, "prime")?;
        if !crate::field::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        projective_inversion(p)
    } else if let Some(path) = spec.strip_prefix('@') {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidArgument(format!("cannot read element `{path}`: {e}")))?;
        Permutation::parse(text.trim(), Some(degree))?
    } else {
        Permutation::parse(spec, Some(degree))?
    };
    if x.degree() != degree {
        return Err(Error::DegreeMismatch {
            left: degree,
            right: x.degree(),
        });
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    #[test]
    fn text_format() {
        let g = parse_group_text("# S3\ndegree 3\n(0 1 2)\n\n[1,0,2] # swap\n").unwrap();
        assert_eq!(g.order(), BigUint::from(6u32));
        let again = parse_group_text(&group_to_text(&g)).unwrap();
        assert_eq!(again.generators(), g.generators());
    }

    #[test]
    fn text_errors_carry_line_numbers() {
        let err = parse_group_text("degree 3\n(0 1 2)\n(0 7)\n").unwrap_err();
        assert!(matches!(err, Error::ParseLine { line: 3, .. }), "{err}");
        let err = parse_group_text("# nothing\nthree\n").unwrap_err();
        assert!(matches!(err, Error::ParseLine { line: 2, .. }));
        assert!(parse_group_text("").is_err());
    }

    #[test]
    fn json_format() {
        let g = build_pgl2(5).unwrap();
        let text = serde_json::to_string(&GroupJson::from_group(&g)).unwrap();
        let back = parse_group_json(&text).unwrap();
        assert_eq!(back.order(), BigUint::from(120u32));
        assert_eq!(back.name(), Some("PGL2(5)"));
        assert!(parse_group_json(r#"{"degree": 3, "generators": [[0, 1]]}"#).is_err());
    }

    #[test]
    fn named() {
        assert_eq!(load_group("sym:5").unwrap().order(), BigUint::from(120u32));
        assert_eq!(load_group("agl1:3^2").unwrap().order(), BigUint::from(72u32));
        assert_eq!(load_group("agl1:8").unwrap().order(), BigUint::from(56u32));
        assert_eq!(load_group("construction:3").unwrap().order(), BigUint::from(144u32));
        assert!(load_group("agl1:6").is_err());
        let pgl = load_group("pgl2:11").unwrap();
        let k = load_subgroup("stab:11", &pgl).unwrap();
        assert_eq!(k.order(), BigUint::from(110u32));
        assert_eq!(load_element("pgl2:11", 12).unwrap().apply(0), 11);
        assert_eq!(load_element("(0 1)", 3).unwrap().apply(0), 1);
        assert!(load_element("construction:3", 12).is_err());
    }
}
