//! Exact rank-2 root systems (A2, G2): Cartan data, Weyl reflections,
//! fundamental weights, orbit enumeration, and floating-point embeddings.
//!
//! Roots are stored exactly in the simple-root basis as pairs of rationals,
//! so reflection-table checks and orbit closure are exact. Embeddings into
//! Euclidean coordinates are float-only views used for geometry.

use num_rational::Rational64;
use num_traits::{Signed, Zero};
use serde::Serialize;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

pub type Rat = Rational64;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum RootSystemError {
    #[error("unknown group name `{0}` (expected a2 or g2)")]
    UnknownGroup(String),
    #[error("unknown embedding name `{0}` (expected standard3d or plane2d)")]
    UnknownEmbedding(String),
    #[error("embedding {embedding:?} belongs to {expected}, not {found}")]
    EmbeddingMismatch {
        embedding: EmbeddingName,
        expected: GroupName,
        found: GroupName,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum GroupName {
    A2,
    G2,
}

impl fmt::Display for GroupName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupName::A2 => write!(f, "A2"),
            GroupName::G2 => write!(f, "G2"),
        }
    }
}

impl FromStr for GroupName {
    type Err = RootSystemError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "a2" => Ok(GroupName::A2),
            "g2" => Ok(GroupName::G2),
            other => Err(RootSystemError::UnknownGroup(other.to_string())),
        }
    }
}

/// A vector in the simple-root basis, `c1*a1 + c2*a2`, with exact entries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalVector {
    pub coeffs: [Rat; 2],
}

impl RationalVector {
    pub fn new(c1: Rat, c2: Rat) -> Self {
        Self { coeffs: [c1, c2] }
    }

    pub fn from_ints(c1: i64, c2: i64) -> Self {
        Self::new(Rat::from_integer(c1), Rat::from_integer(c2))
    }

    pub fn zero() -> Self {
        Self::from_ints(0, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs[0].is_zero() && self.coeffs[1].is_zero()
    }

    pub fn scale(&self, s: Rat) -> Self {
        Self::new(self.coeffs[0] * s, self.coeffs[1] * s)
    }

    /// True when the first nonzero coefficient is positive. For A2 and G2
    /// every root is either all-nonnegative or all-nonpositive in the
    /// simple-root basis, so this is the usual positivity notion.
    pub fn is_positive(&self) -> bool {
        for c in &self.coeffs {
            if !c.is_zero() {
                return c.is_positive();
            }
        }
        false
    }

    pub fn to_f64(&self) -> [f64; 2] {
        [rat_to_f64(self.coeffs[0]), rat_to_f64(self.coeffs[1])]
    }
}

pub fn rat_to_f64(r: Rat) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

impl std::ops::Add for RationalVector {
    type Output = RationalVector;
    fn add(self, rhs: Self) -> Self {
        Self::new(
            self.coeffs[0] + rhs.coeffs[0],
            self.coeffs[1] + rhs.coeffs[1],
        )
    }
}

impl std::ops::Sub for RationalVector {
    type Output = RationalVector;
    fn sub(self, rhs: Self) -> Self {
        Self::new(
            self.coeffs[0] - rhs.coeffs[0],
            self.coeffs[1] - rhs.coeffs[1],
        )
    }
}

impl std::ops::Neg for RationalVector {
    type Output = RationalVector;
    fn neg(self) -> Self {
        Self::new(-self.coeffs[0], -self.coeffs[1])
    }
}

impl fmt::Display for RationalVector {
    /// Prints in the style `3a1+2a2`, `-a1-a2`, `(2/3)a1+(1/3)a2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let coeff = if mag == Rat::from_integer(1) {
                String::new()
            } else if mag.is_integer() {
                format!("{}", mag.numer())
            } else {
                format!("({}/{})", mag.numer(), mag.denom())
            };
            write!(f, "{sign}{coeff}a{}", i + 1)?;
            first = false;
        }
        Ok(())
    }
}

/// 2x2 Cartan matrix `K_ij = 2 ai.aj / aj^2` with integer entries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CartanMatrix {
    pub entries: [[i64; 2]; 2],
}

impl CartanMatrix {
    pub fn new(entries: [[i64; 2]; 2]) -> Self {
        assert!(
            entries[0][0] == 2 && entries[1][1] == 2,
            "Cartan diagonal must be 2"
        );
        assert!(
            entries[0][1] <= 0 && entries[1][0] <= 0,
            "Cartan off-diagonal must be non-positive"
        );
        Self { entries }
    }

    /// Exact inverse; rank-2 Cartan matrices are always invertible.
    pub fn inverse(&self) -> [[Rat; 2]; 2] {
        let [[a, b], [c, d]] = self.entries;
        let det = Rat::from_integer(a * d - b * c);
        [
            [Rat::from_integer(d) / det, Rat::from_integer(-b) / det],
            [Rat::from_integer(-c) / det, Rat::from_integer(a) / det],
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LengthClass {
    Short,
    Long,
}

/// A word in the generators, applied left to right; the empty word is the
/// identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylWord(Vec<u8>);

impl WeylWord {
    pub fn new(letters: &[u8]) -> Self {
        assert!(
            letters.iter().all(|&i| i == 1 || i == 2),
            "generator indices must be 1 or 2"
        );
        Self(letters.to_vec())
    }

    pub fn identity() -> Self {
        Self(Vec::new())
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }
}

impl fmt::Display for WeylWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        for i in &self.0 {
            write!(f, "s{i}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EmbeddingName {
    /// Simple roots as difference vectors in R^3; the dynamical coordinates
    /// q1,q2,q3 live here.
    Standard3d,
    /// A two-dimensional realization matching the exact Gram matrix; used
    /// for plotting root geometry.
    Plane2d,
}

impl FromStr for EmbeddingName {
    type Err = RootSystemError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "standard3d" | "3d" => Ok(EmbeddingName::Standard3d),
            "plane2d" | "2d" => Ok(EmbeddingName::Plane2d),
            other => Err(RootSystemError::UnknownEmbedding(other.to_string())),
        }
    }
}

/// Float images of the two simple roots in some Euclidean coordinates.
#[derive(Debug, Clone)]
pub struct Embedding {
    pub name: EmbeddingName,
    pub group: GroupName,
    pub images: [Vec<f64>; 2],
}

impl Embedding {
    pub fn dim(&self) -> usize {
        self.images[0].len()
    }

    /// Gram matrix of the embedded simple roots.
    pub fn gram(&self) -> [[f64; 2]; 2] {
        let dot = |i: usize, j: usize| -> f64 {
            self.images[i]
                .iter()
                .zip(&self.images[j])
                .map(|(a, b)| a * b)
                .sum()
        };
        [[dot(0, 0), dot(0, 1)], [dot(1, 0), dot(1, 1)]]
    }
}

/// The undeformed combinatorial core: Cartan matrix, exact Gram matrix,
/// and the full root set enumerated by closing the simple roots under the
/// Weyl reflections.
#[derive(Debug, Clone)]
pub struct RootSystem {
    pub name: GroupName,
    pub cartan: CartanMatrix,
    pub simple_roots: [RationalVector; 2],
    pub all_roots: Vec<RationalVector>,
    pub rank: usize,
    pub coxeter_number: usize,
    pub gram: [[Rat; 2]; 2],
}

impl RootSystem {
    pub fn build(name: GroupName) -> Self {
        let cartan = match name {
            GroupName::A2 => CartanMatrix::new([[2, -1], [-1, 2]]),
            GroupName::G2 => CartanMatrix::new([[2, -1], [-3, 2]]),
        };
        let coxeter_number = match name {
            GroupName::A2 => 3,
            GroupName::G2 => 6,
        };
        let gram = gram_from_cartan(&cartan);
        let simple_roots = [
            RationalVector::from_ints(1, 0),
            RationalVector::from_ints(0, 1),
        ];

        let mut sys = RootSystem {
            name,
            cartan,
            simple_roots,
            all_roots: Vec::new(),
            rank: 2,
            coxeter_number,
            gram,
        };
        sys.all_roots = sys.enumerate_roots();
        sys
    }

    /// Parse a group name and build the system.
    pub fn build_named(name: &str) -> Result<Self, RootSystemError> {
        Ok(Self::build(name.parse()?))
    }

    /// Breadth-first closure of the simple roots under both reflections,
    /// with exact dedup and a deterministic final ordering.
    fn enumerate_roots(&self) -> Vec<RationalVector> {
        let mut found: Vec<RationalVector> = self.simple_roots.to_vec();
        let mut queue: Vec<RationalVector> = found.clone();
        while let Some(x) = queue.pop() {
            for i in [1u8, 2u8] {
                let y = self.weyl_reflect(i, x);
                if !found.contains(&y) {
                    found.push(y);
                    queue.push(y);
                }
            }
        }
        found.sort();
        found
    }

    /// Exact inner product of two vectors written in the simple-root basis.
    pub fn inner(&self, x: &RationalVector, y: &RationalVector) -> Rat {
        let mut acc = Rat::zero();
        for i in 0..2 {
            for j in 0..2 {
                acc += x.coeffs[i] * y.coeffs[j] * self.gram[i][j];
            }
        }
        acc
    }

    pub fn root_square(&self, x: &RationalVector) -> Rat {
        self.inner(x, x)
    }

    pub fn length_class(&self, root: &RationalVector) -> LengthClass {
        if self.root_square(root) == Rat::from_integer(2) {
            LengthClass::Short
        } else {
            LengthClass::Long
        }
    }

    pub fn short_roots(&self) -> impl Iterator<Item = &RationalVector> {
        self.all_roots
            .iter()
            .filter(|r| self.length_class(r) == LengthClass::Short)
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = &RationalVector> {
        self.all_roots.iter().filter(|r| r.is_positive())
    }

    /// Weyl reflection across the hyperplane orthogonal to simple root `i`
    /// (1-based): `x - 2 (x.ai / ai^2) ai`, computed exactly.
    pub fn weyl_reflect(&self, i: u8, x: RationalVector) -> RationalVector {
        assert!(i == 1 || i == 2, "generator index must be 1 or 2");
        let j = (i - 1) as usize;
        // 2 (x.aj) / aj^2 = sum_k x_k K_kj
        let mut coeff = Rat::zero();
        for k in 0..2 {
            coeff += x.coeffs[k] * Rat::from_integer(self.cartan.entries[k][j]);
        }
        let mut out = x;
        out.coeffs[j] -= coeff;
        out
    }

    /// Apply a word generator by generator, left to right.
    pub fn apply_word(&self, word: &WeylWord, x: RationalVector) -> RationalVector {
        word.letters()
            .iter()
            .fold(x, |acc, &i| self.weyl_reflect(i, acc))
    }

    /// The weights dual to the simple co-roots: `2 li.aj / aj^2 = delta_ij`.
    /// In the simple-root basis these are the rows of the inverse Cartan
    /// matrix.
    pub fn fundamental_weights(&self) -> [RationalVector; 2] {
        let inv = self.cartan.inverse();
        [
            RationalVector::new(inv[0][0], inv[0][1]),
            RationalVector::new(inv[1][0], inv[1][1]),
        ]
    }

    pub fn embedding(&self, name: EmbeddingName) -> Embedding {
        let images = match (self.name, name) {
            (GroupName::A2, EmbeddingName::Standard3d) => {
                [vec![1.0, -1.0, 0.0], vec![0.0, 1.0, -1.0]]
            }
            (GroupName::G2, EmbeddingName::Standard3d) => {
                [vec![1.0, -1.0, 0.0], vec![-2.0, 1.0, 1.0]]
            }
            // Plane realizations with the exact Gram matrix. For A2 the
            // second root is fixed to sqrt(3/2) e2 - (1/sqrt 2) e1, the
            // unique choice (up to reflection) with a2^2 = 2 and a1.a2 = -1.
            (GroupName::A2, EmbeddingName::Plane2d) => [
                vec![2f64.sqrt(), 0.0],
                vec![-1.0 / 2f64.sqrt(), 1.5f64.sqrt()],
            ],
            (GroupName::G2, EmbeddingName::Plane2d) => [
                vec![-(1.5f64.sqrt()), 1.0 / 2f64.sqrt()],
                vec![6f64.sqrt(), 0.0],
            ],
        };
        Embedding {
            name,
            group: self.name,
            images,
        }
    }

    /// Linear image of `x` under the embedding.
    pub fn embed(&self, e: &Embedding, x: &RationalVector) -> Result<Vec<f64>, RootSystemError> {
        if e.group != self.name {
            return Err(RootSystemError::EmbeddingMismatch {
                embedding: e.name,
                expected: e.group,
                found: self.name,
            });
        }
        let c = x.to_f64();
        Ok((0..e.dim())
            .map(|k| c[0] * e.images[0][k] + c[1] * e.images[1][k])
            .collect())
    }

    /// Reflect a point of the embedding space across the hyperplane
    /// orthogonal to the embedded simple root `i`.
    pub fn reflect_point(&self, e: &Embedding, i: u8, q: &[f64]) -> Vec<f64> {
        assert!(i == 1 || i == 2);
        let a = &e.images[(i - 1) as usize];
        let qa: f64 = q.iter().zip(a).map(|(x, y)| x * y).sum();
        let aa: f64 = a.iter().map(|x| x * x).sum();
        let c = 2.0 * qa / aa;
        q.iter().zip(a).map(|(x, y)| x - c * y).collect()
    }
}

fn gram_from_cartan(cartan: &CartanMatrix) -> [[Rat; 2]; 2] {
    // K12/K21 = a1^2/a2^2; normalize the short root to length^2 = 2.
    let k12 = Rat::from_integer(cartan.entries[0][1]);
    let k21 = Rat::from_integer(cartan.entries[1][0]);
    let two = Rat::from_integer(2);
    let ratio = k12 / k21;
    let (a1sq, a2sq) = if ratio <= Rat::from_integer(1) {
        (two, two / ratio)
    } else {
        (two * ratio, two)
    };
    let off = k12 * a2sq / two;
    [[a1sq, off], [off, a2sq]]
}
