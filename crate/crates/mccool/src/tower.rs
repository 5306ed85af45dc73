//! The split tower of basis-conjugating groups: the projection that kills
//! every generator touching the top index, its canonical section, kernel
//! membership, head/tail decomposition, the freeness retraction for the
//! upper-triangular kernel, and the exponent-sum map to the free abelian
//! group.

use crate::aut::{AutGenerator, Endomorphism, Factor, GroupExpression};
use crate::word::Word;
use crate::{Error, Result};

/// Which generator set an expression lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    /// All basis-conjugating generators.
    Full,
    /// Upper-triangular: only generators conjugating a higher-index
    /// generator by a lower-index one.
    Plus,
}

/// Head/tail factorization of an expression at level `n`: the head is the
/// section applied to the projection, the tail evaluates into the kernel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub w_head: GroupExpression,
    pub x_tail: GroupExpression,
}

fn check_level(n: u32) -> Result<()> {
    if n < 2 {
        return Err(Error::RankOutOfRange {
            rank: n,
            message: "the tower starts at rank 2".to_string(),
        });
    }
    Ok(())
}

fn chi_indices(e: &GroupExpression, variant: Variant) -> Result<Vec<(u32, u32, i8)>> {
    e.factors()
        .iter()
        .map(|f| match f.generator {
            AutGenerator::Chi { k, i } => {
                if variant == Variant::Plus && i >= k {
                    Err(Error::ForeignGenerator(format!(
                        "c[{k},{i}] is not upper-triangular"
                    )))
                } else {
                    Ok((k, i, f.exponent))
                }
            }
            other => Err(Error::ForeignGenerator(other.to_string())),
        })
        .collect()
}

/// Projection to level `n-1`: factors touching index `n` are deleted, all
/// others are kept verbatim.
pub fn project(e: &GroupExpression, variant: Variant) -> Result<GroupExpression> {
    let n = e.rank();
    check_level(n)?;
    let factors = chi_indices(e, variant)?;
    GroupExpression::new(
        n - 1,
        factors
            .into_iter()
            .filter(|&(k, i, _)| k != n && i != n)
            .map(|(k, i, exp)| Factor::new(AutGenerator::Chi { k, i }, exp)),
    )
}

/// The canonical section: the same factors reinterpreted one level up.
pub fn lift(e: &GroupExpression) -> GroupExpression {
    GroupExpression::new(e.rank() + 1, e.factors().iter().copied()).expect("valid one level up")
}

/// Membership in the kernel of the projection, decided by the faithful
/// action at the lower level.
pub fn in_kernel(e: &GroupExpression, variant: Variant) -> Result<bool> {
    Ok(project(e, variant)?.evaluate().is_identity())
}

/// Splits `e` as `w_head * x_tail` with `w_head` in the image of the
/// section and `x_tail` in the kernel.
///
/// The head is the section applied to the projection, so the tail is
/// `w_head^-1 * e`; both postconditions are re-verified by evaluation.
pub fn decompose(e: &GroupExpression, variant: Variant) -> Result<Decomposition> {
    let w_head = lift(&project(e, variant)?);
    let x_tail = w_head.inverse().concat(e)?;
    let recomposed = w_head.evaluate().compose(&x_tail.evaluate())?;
    assert!(
        recomposed.equal(&e.evaluate()).unwrap(),
        "decomposition must recompose to the input"
    );
    assert!(
        in_kernel(&x_tail, variant)?,
        "decomposition tail must project to the identity"
    );
    Ok(Decomposition { w_head, x_tail })
}

/// The free-group-to-kernel homomorphism: the i-th letter goes to the
/// generator conjugating the top generator by the i-th.
pub fn phi(w: &Word) -> GroupExpression {
    let n = w.rank() + 1;
    GroupExpression::new(
        n,
        w.letters()
            .iter()
            .map(|l| Factor::new(AutGenerator::Chi { k: n, i: l.index }, l.sign)),
    )
    .expect("kernel generators are valid")
}

/// Inverts [`phi`] on endomorphisms: for `f` in the upper-triangular
/// kernel at level `n`, returns the word `U` of rank `n-1` with
/// `f(x_n) = U^-1 x_n U`.
///
/// The shape of `f` is validated rather than trusted, so this doubles as a
/// membership test for the upper-triangular kernel.
pub fn retract_plus(f: &Endomorphism) -> Result<Word> {
    let n = f.rank();
    check_level(n)?;
    for i in 1..n {
        let expected = Word::generator(n, i, 1).unwrap();
        if f.image(i) != &expected {
            return Err(Error::NotKernelElement(format!(
                "generator {i} is not fixed"
            )));
        }
    }
    let (conjugator, target, sign) = f
        .image(n)
        .peel_conjugate()
        .ok_or_else(|| Error::NotKernelElement("top image is not a conjugate".to_string()))?;
    if target != n || sign != 1 {
        return Err(Error::NotKernelElement(
            "top image is not a conjugate of the top generator".to_string(),
        ));
    }
    if conjugator.letters().iter().any(|l| l.index >= n) {
        return Err(Error::NotKernelElement(
            "conjugator uses the top generator".to_string(),
        ));
    }
    Word::reduce(n - 1, conjugator.letters().iter().copied())
}

/// Signed exponent sums of the column-`n` kernel generators.
///
/// Component `i` counts the generator conjugating the i-th generator by
/// the top one.  Every factor must be a kernel generator.
pub fn gamma(e: &GroupExpression) -> Result<Vec<i64>> {
    let n = e.rank();
    check_level(n)?;
    let mut sums = vec![0i64; (n - 1) as usize];
    for f in e.factors() {
        match f.generator {
            AutGenerator::Chi { k, i } if k == n && i < n => {}
            AutGenerator::Chi { k, i } if i == n && k < n => {
                sums[(k - 1) as usize] += f.exponent as i64;
            }
            other => return Err(Error::ForeignGenerator(other.to_string())),
        }
    }
    Ok(sums)
}
