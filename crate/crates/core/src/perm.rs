//! Permutations of a fixed finite domain `{0, …, n-1}`.
//!
//! Products are written left to right and act on points from the right:
//! `a * b` applies `a` first and then `b`, so that `x^(ab) = (x^a)^b`.
//! Every group, coset and graph computation in this crate uses that single
//! convention.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Sign of a permutation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn combine(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// A bijection of `{0, …, degree-1}` stored as its image table.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Permutation {
        assert!(degree > 0, "permutation degree must be positive");
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from its image list, checking bijectivity.
    pub fn from_images<I: IntoIterator<Item = usize>>(images: I) -> Result<Permutation> {
        let images: Vec<usize> = images.into_iter().collect();
        let n = images.len();
        if n == 0 {
            return Err(Error::InvalidPermutation("empty image list".into()));
        }
        if n > u32::MAX as usize {
            return Err(Error::InvalidPermutation("degree too large".into()));
        }
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n {
                return Err(Error::InvalidPermutation(format!(
                    "image {x} out of range for degree {n}"
                )));
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(Error::InvalidPermutation(format!("image {x} repeated")));
            }
        }
        Ok(Permutation {
            images: images.into_iter().map(|x| x as u32).collect(),
        })
    }

    /// Internal constructor for tables already known to be bijections.
    pub(crate) fn from_raw(images: Vec<u32>) -> Permutation {
        debug_assert!(Permutation::from_images(images.iter().map(|&x| x as usize)).is_ok());
        Permutation { images }
    }

    /// Builds a permutation of `degree` points from disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Permutation> {
        if degree == 0 {
            return Err(Error::InvalidPermutation("degree must be positive".into()));
        }
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for &x in cycle {
                if x >= degree {
                    return Err(Error::InvalidPermutation(format!(
                        "point {x} out of range for degree {degree}"
                    )));
                }
                if std::mem::replace(&mut touched[x], true) {
                    return Err(Error::InvalidPermutation(format!(
                        "point {x} appears in more than one cycle position"
                    )));
                }
            }
            for (i, &x) in cycle.iter().enumerate() {
                images[x] = cycle[(i + 1) % cycle.len()];
            }
        }
        Permutation::from_images(images)
    }

    /// Builds the permutation `x -> f(x)`; `f` must be a bijection.
    pub fn from_fn<F: Fn(usize) -> usize>(degree: usize, f: F) -> Result<Permutation> {
        Permutation::from_images((0..degree).map(f))
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of `point`.
    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `self` followed by `other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.mul_unchecked(other))
    }

    #[inline]
    pub(crate) fn mul_unchecked(&self, other: &Permutation) -> Permutation {
        let imgs = &other.images;
        Permutation {
            images: self.images.iter().map(|&x| imgs[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// `x^-1 * self * x`, the conjugate written `self^x`.
    pub fn conjugate_by(&self, x: &Permutation) -> Permutation {
        // self^x maps i^x to (i^self)^x.
        let mut out = vec![0u32; self.images.len()];
        for (i, &si) in self.images.iter().enumerate() {
            out[x.images[i] as usize] = x.images[si as usize];
        }
        Permutation { images: out }
    }

    pub fn pow(&self, mut e: i64) -> Permutation {
        let mut base = if e < 0 {
            e = -e;
            self.inverse()
        } else {
            self.clone()
        };
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            base = base.mul_unchecked(&base);
            e >>= 1;
        }
        acc
    }

    /// All cycles, fixed points included, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }

    /// Cycle lengths in ascending order, fixed points counted as 1-cycles.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut lens: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        lens.sort_unstable();
        lens
    }

    pub fn parity(&self) -> Parity {
        if (self.degree() - self.cycles().len()) % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_even(&self) -> bool {
        self.parity() == Parity::Even
    }

    /// Element order, the lcm of the cycle lengths.
    pub fn order(&self) -> BigUint {
        self.cycle_type()
            .into_iter()
            .fold(BigUint::one(), |acc, l| acc.lcm(&BigUint::from(l)))
    }

    pub fn fixes(&self, point: usize) -> bool {
        self.apply(point) == point
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.degree()).filter(|&i| self.fixes(i)).collect()
    }

    /// Smallest point moved, if any.
    pub fn first_moved(&self) -> Option<usize> {
        (0..self.degree()).find(|&i| !self.fixes(i))
    }

    /// Parses either image-list form `[1,0,2]` or cycle form `(0 1)(2 3 4)`.
    ///
    /// Cycle form needs `degree`; image-list form carries its own and a
    /// supplied `degree` must agree with it.
    pub fn parse(text: &str, degree: Option<usize>) -> Result<Permutation> {
        let t = text.trim();
        if t.starts_with('[') {
            let inner = t
                .strip_prefix('[')
                .and_then(|s| s.strip_suffix(']'))
                .ok_or_else(|| Error::Parse(format!("unterminated image list `{t}`")))?;
            let images = inner
                .split(',')
                .map(|s| s.trim())
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad image `{s}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            let p = Permutation::from_images(images)?;
            if let Some(d) = degree {
                if d != p.degree() {
                    return Err(Error::DegreeMismatch {
                        left: d,
                        right: p.degree(),
                    });
                }
            }
            return Ok(p);
        }
        let degree = degree
            .ok_or_else(|| Error::Parse("cycle notation requires a known degree".into()))?;
        let mut cycles = Vec::new();
        let mut rest = t;
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("expected `(` in `{t}`")))?;
            let close = open
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unterminated cycle in `{t}`")))?;
            let body = &open[..close];
            let cycle = body
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad point `{s}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            cycles.push(cycle);
            rest = open[close + 1..].trim_start();
        }
        Permutation::from_cycles(degree, &cycles)
    }

    /// Image-list form, e.g. `[1,0,3,4,2]`.
    pub fn to_image_string(&self) -> String {
        let parts: Vec<String> = self.images.iter().map(|x| x.to_string()).collect();
        format!("[{}]", parts.join(","))
    }
}

impl Mul<&Permutation> for &Permutation {
    type Output = Permutation;

    /// Panics on a degree mismatch; use [`Permutation::compose`] to get an error instead.
    fn mul(self, rhs: &Permutation) -> Permutation {
        assert_eq!(self.degree(), rhs.degree(), "degree mismatch in product");
        self.mul_unchecked(rhs)
    }
}

/// Disjoint-cycle notation with fixed points omitted; the identity prints as `()`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for cycle in self.cycles().into_iter().filter(|c| c.len() > 1) {
            any = true;
            write!(f, "(")?;
            for (i, x) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_image_string())
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.images.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let images = Vec::<usize>::deserialize(d)?;
        Permutation::from_images(images).map_err(serde::de::Error::custom)
    }
}
