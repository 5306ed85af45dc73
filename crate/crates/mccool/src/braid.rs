//! The braid–permutation group: detection of permutation–conjugacy type,
//! the projection onto the symmetric group, and the semidirect splitting
//! into a permutation part and a basis-conjugating part.

use std::fmt;

use crate::aut::{AutGenerator, Endomorphism, GroupExpression};
use crate::word::Word;
use crate::{Error, Result};

/// A permutation of `1..=n` in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(n: u32) -> Self {
        Permutation { images: (1..=n).collect() }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len() as u32;
        let mut seen = vec![false; n as usize];
        for &v in &images {
            if v == 0 || v > n || seen[(v - 1) as usize] {
                return Err(Error::NotPermutationConjugacy(format!(
                    "images {images:?} are not a bijection"
                )));
            }
            seen[(v - 1) as usize] = true;
        }
        Ok(Permutation { images })
    }

    /// The transposition of `i` and `i+1`.
    pub fn transposition(n: u32, i: u32) -> Result<Self> {
        if i == 0 || i + 1 > n {
            return Err(Error::IndexOutOfRange { index: i, rank: n });
        }
        let mut p = Permutation::identity(n);
        p.images.swap((i - 1) as usize, i as usize);
        Ok(p)
    }

    pub fn n(&self) -> u32 {
        self.images.len() as u32
    }

    pub fn apply(&self, i: u32) -> u32 {
        self.images[(i - 1) as usize]
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// `self ∘ other`: `other` acts first.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.n() != other.n() {
            return Err(Error::RankMismatch { left: self.n(), right: other.n() });
        }
        Ok(Permutation {
            images: (1..=self.n()).map(|i| self.apply(other.apply(i))).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            images[(v - 1) as usize] = i as u32 + 1;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v == i as u32 + 1)
    }

    /// The endomorphism sending the i-th generator to the λ(i)-th.
    pub fn endomorphism(&self) -> Endomorphism {
        let n = self.n();
        let images = (1..=n)
            .map(|i| Word::generator(n, self.apply(i), 1).unwrap())
            .collect();
        Endomorphism::from_images(n, images).unwrap()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Witness of permutation–conjugacy type: each generator maps to a
/// conjugate (with positive sign) of the generator picked by `lambda`,
/// with the shortest conjugators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermConjData {
    pub lambda: Permutation,
    pub conjugators: Vec<Word>,
}

/// Checks that each image is `w_i^-1 x_{λ(i)} w_i` and that λ is a
/// bijection; sign flips and any other shape are rejected.
pub fn detect(f: &Endomorphism) -> Result<PermConjData> {
    let n = f.rank();
    let mut targets = Vec::with_capacity(n as usize);
    let mut conjugators = Vec::with_capacity(n as usize);
    for i in 1..=n {
        let (conjugator, target, sign) = f.image(i).peel_conjugate().ok_or_else(|| {
            Error::NotPermutationConjugacy(format!("image of generator {i} is not a conjugate"))
        })?;
        if sign != 1 {
            return Err(Error::NotPermutationConjugacy(format!(
                "image of generator {i} has negative sign"
            )));
        }
        targets.push(target);
        conjugators.push(conjugator);
    }
    let lambda = Permutation::from_images(targets)?;
    Ok(PermConjData { lambda, conjugators })
}

/// Splits a permutation–conjugacy automorphism as `pure ∘ Ξ_λ` with the
/// pure part basis-conjugating (each generator goes to a conjugate of
/// itself).
pub fn split(f: &Endomorphism) -> Result<(Endomorphism, Permutation)> {
    let data = detect(f)?;
    let pure = f.compose(&data.lambda.inverse().endomorphism())?;
    Ok((pure, data.lambda))
}

/// Image in the symmetric group of a word in the transposition-like and
/// braid-like generators; both kinds map to the same transposition, and
/// exponents are immaterial.  The fold follows the evaluation convention:
/// rightmost factor first.
pub fn rho(e: &GroupExpression) -> Result<Permutation> {
    let n = e.rank();
    let mut acc = Permutation::identity(n);
    for factor in e.factors() {
        let i = match factor.generator {
            AutGenerator::Xi(i) | AutGenerator::Sigma(i) => i,
            other => return Err(Error::ForeignGenerator(other.to_string())),
        };
        acc = acc.compose(&Permutation::transposition(n, i)?)?;
    }
    Ok(acc)
}

/// Whether every image of `f` is a conjugate of its own generator.
pub fn is_basis_conjugating(f: &Endomorphism) -> bool {
    (1..=f.rank()).all(|i| {
        f.image(i)
            .peel_conjugate()
            .is_some_and(|(_, target, sign)| target == i && sign == 1)
    })
}
