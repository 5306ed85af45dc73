//! Catalog of the defining identities of the groups in scope, stored as
//! pairs of expressions and checked by evaluating both sides on the free
//! group.
//!
//! Families: the four McCool presentation relations, the conjugation
//! action of the sign-flip and transposition automorphisms on the
//! basis-conjugating generators, the six kernel conjugation identities
//! used by the split tower, and the braid–permutation presentation with
//! its factorization through the basis-conjugating group.
//!
//! All identities are stored in left-action form: a product acts with its
//! rightmost factor first.  Under the opposite (right-action) convention
//! the same identities hold with the factor order of both sides reversed;
//! the braid–permutation family is the only one whose two readings differ,
//! and it is stored here already translated.

use std::collections::BTreeMap;
use std::fmt;
use std::time::{Duration, Instant};

use crate::aut::{AutGenerator, Factor, GroupExpression};
use crate::par;
use crate::{Error, Result};

/// Identifier of a relation family in the catalog.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    McCool1,
    McCool2,
    McCool3,
    McCool4,
    TauConjugation,
    XiConjugation,
    KernelI,
    KernelII,
    KernelIII,
    KernelIV,
    KernelV,
    KernelVI,
    BpXi,
    BpSigma,
    BpMixed,
    BpFactorization,
}

impl Family {
    pub const ALL: [Family; 16] = [
        Family::McCool1,
        Family::McCool2,
        Family::McCool3,
        Family::McCool4,
        Family::TauConjugation,
        Family::XiConjugation,
        Family::KernelI,
        Family::KernelII,
        Family::KernelIII,
        Family::KernelIV,
        Family::KernelV,
        Family::KernelVI,
        Family::BpXi,
        Family::BpSigma,
        Family::BpMixed,
        Family::BpFactorization,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::McCool1 => "mccool-1",
            Family::McCool2 => "mccool-2",
            Family::McCool3 => "mccool-3",
            Family::McCool4 => "mccool-4",
            Family::TauConjugation => "tau-conjugation",
            Family::XiConjugation => "xi-conjugation",
            Family::KernelI => "kernel-i",
            Family::KernelII => "kernel-ii",
            Family::KernelIII => "kernel-iii",
            Family::KernelIV => "kernel-iv",
            Family::KernelV => "kernel-v",
            Family::KernelVI => "kernel-vi",
            Family::BpXi => "bp-xi",
            Family::BpSigma => "bp-sigma",
            Family::BpMixed => "bp-mixed",
            Family::BpFactorization => "bp-factorization",
        }
    }

    pub fn from_name(name: &str) -> Option<Family> {
        Family::ALL.iter().copied().find(|f| f.name() == name)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// One concrete identity: two expressions that must evaluate to the same
/// automorphism.
#[derive(Clone, Debug)]
pub struct RelationInstance {
    pub family: Family,
    pub indices: Vec<u32>,
    pub lhs: GroupExpression,
    pub rhs: GroupExpression,
    pub rank: u32,
}

impl RelationInstance {
    pub fn holds(&self) -> bool {
        self.lhs
            .evaluate()
            .equal(&self.rhs.evaluate())
            .expect("catalog expressions share a rank")
    }
}

/// Outcome of evaluating one instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceOutcome {
    pub family: Family,
    pub indices: Vec<u32>,
    pub ok: bool,
}

/// Evaluation outcome for a whole catalog.
#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub rank: u32,
    pub instances: Vec<InstanceOutcome>,
    /// Wall-clock time; not part of any serialized output so that output
    /// stays byte-identical across runs.
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn total(&self) -> usize {
        self.instances.len()
    }

    pub fn failures(&self) -> Vec<&InstanceOutcome> {
        self.instances.iter().filter(|i| !i.ok).collect()
    }

    pub fn is_ok(&self) -> bool {
        self.instances.iter().all(|i| i.ok)
    }

    /// Per-family (instances, failures) counts, in family order.
    pub fn family_counts(&self) -> BTreeMap<Family, (usize, usize)> {
        let mut counts = BTreeMap::new();
        for i in &self.instances {
            let entry = counts.entry(i.family).or_insert((0, 0));
            entry.0 += 1;
            if !i.ok {
                entry.1 += 1;
            }
        }
        counts
    }
}

fn require_rank(n: u32, at_least: u32) -> Result<()> {
    if n < at_least {
        return Err(Error::RankOutOfRange {
            rank: n,
            message: format!("need rank at least {at_least}"),
        });
    }
    Ok(())
}

fn chi(k: u32, i: u32) -> Factor {
    Factor::new(AutGenerator::Chi { k, i }, 1)
}

fn chi_inv(k: u32, i: u32) -> Factor {
    Factor::new(AutGenerator::Chi { k, i }, -1)
}

fn xi(i: u32) -> Factor {
    Factor::new(AutGenerator::Xi(i), 1)
}

fn tau(i: u32) -> Factor {
    Factor::new(AutGenerator::Tau(i), 1)
}

fn sigma(i: u32) -> Factor {
    Factor::new(AutGenerator::Sigma(i), 1)
}

fn expr(rank: u32, factors: &[Factor]) -> GroupExpression {
    GroupExpression::new(rank, factors.iter().copied()).expect("valid factors")
}

fn instance(family: Family, indices: &[u32], rank: u32, lhs: &[Factor], rhs: &[Factor]) -> RelationInstance {
    RelationInstance {
        family,
        indices: indices.to_vec(),
        lhs: expr(rank, lhs),
        rhs: expr(rank, rhs),
        rank,
    }
}

fn commutator_instance(
    family: Family,
    indices: &[u32],
    rank: u32,
    a: &[Factor],
    b: &[Factor],
) -> RelationInstance {
    let a = expr(rank, a);
    let b = expr(rank, b);
    RelationInstance {
        family,
        indices: indices.to_vec(),
        lhs: a.commutator(&b).expect("equal ranks"),
        rhs: GroupExpression::empty(rank),
        rank,
    }
}

fn distinct_triples(n: u32) -> impl Iterator<Item = (u32, u32, u32)> {
    (1..=n).flat_map(move |i| {
        (1..=n).flat_map(move |j| {
            (1..=n)
                .filter(move |&k| k != i && k != j)
                .map(move |k| (i, j, k))
        })
        .filter(move |&(i, j, _)| i != j)
    })
}

fn distinct_pairs(n: u32) -> impl Iterator<Item = (u32, u32)> {
    (1..=n).flat_map(move |s| (1..=n).filter(move |&t| t != s).map(move |t| (s, t)))
}

/// The McCool presentation relations, all instances over valid tuples.
pub fn mccool_relations(n: u32) -> Result<Vec<RelationInstance>> {
    require_rank(n, 2)?;
    let mut out = Vec::new();
    for (i, j, k) in distinct_triples(n) {
        out.push(instance(
            Family::McCool1,
            &[i, j, k],
            n,
            &[chi(i, j), chi(k, j), chi(i, k)],
            &[chi(i, k), chi(i, j), chi(k, j)],
        ));
        out.push(commutator_instance(
            Family::McCool3,
            &[i, j, k],
            n,
            &[chi(i, j)],
            &[chi(k, j)],
        ));
        out.push(commutator_instance(
            Family::McCool4,
            &[i, j, k],
            n,
            &[chi(i, j), chi(k, j)],
            &[chi(i, k)],
        ));
    }
    // one instance per unordered pair of index-disjoint generators
    for (k, j) in distinct_pairs(n) {
        for (s, t) in distinct_pairs(n) {
            if (k, j) < (s, t) && k != s && k != t && j != s && j != t {
                out.push(commutator_instance(
                    Family::McCool2,
                    &[k, j, s, t],
                    n,
                    &[chi(k, j)],
                    &[chi(s, t)],
                ));
            }
        }
    }
    Ok(out)
}

/// Conjugation of the basis-conjugating generators by sign flips and by
/// adjacent transpositions, one instance per case of the two tables.
pub fn conjugation_formulas(n: u32) -> Result<Vec<RelationInstance>> {
    require_rank(n, 2)?;
    let mut out = Vec::new();
    for i in 1..=n {
        for (s, t) in distinct_pairs(n) {
            let rhs = if t == i {
                chi_inv(s, i)
            } else if s == i {
                chi(i, t)
            } else {
                chi(s, t)
            };
            out.push(instance(
                Family::TauConjugation,
                &[i, s, t],
                n,
                &[tau(i), chi(s, t), Factor::new(AutGenerator::Tau(i), -1)],
                &[rhs],
            ));
        }
    }
    for i in 1..n {
        for (s, t) in distinct_pairs(n) {
            let rhs = if s == i && t == i + 1 {
                chi(i + 1, i)
            } else if s == i {
                chi(i + 1, t)
            } else if s == i + 1 && t == i {
                chi(i, i + 1)
            } else if s == i + 1 {
                chi(i, t)
            } else if t == i {
                chi(s, i + 1)
            } else if t == i + 1 {
                chi(s, i)
            } else {
                chi(s, t)
            };
            out.push(instance(
                Family::XiConjugation,
                &[i, s, t],
                n,
                &[xi(i), chi(s, t), Factor::new(AutGenerator::Xi(i), -1)],
                &[rhs],
            ));
        }
    }
    Ok(out)
}

/// The six conjugation identities that push arbitrary generators past the
/// kernel generators of the rank-lowering projection.
pub fn kernel_conjugation_formulas(n: u32) -> Result<Vec<RelationInstance>> {
    require_rank(n, 3)?;
    let mut out = Vec::new();
    for (i, j) in distinct_pairs(n - 1) {
        // (i): conjugating by a generator with the same column fixes chi_{n,j}
        out.push(instance(
            Family::KernelI,
            &[i, j],
            n,
            &[chi_inv(i, j), chi(n, j), chi(i, j)],
            &[chi(n, j)],
        ));
        // (iii): same-row conjugation rewrites into kernel generators
        let (j2, k2) = (i, j); // rename to the (j, k) of the identity
        out.push(instance(
            Family::KernelIII,
            &[j2, k2],
            n,
            &[chi_inv(j2, k2), chi(n, j2), chi(j2, k2)],
            &[chi(n, k2), chi(n, j2), chi_inv(n, k2)],
        ));
        // (v)
        let (j5, i5) = (i, j);
        out.push(instance(
            Family::KernelV,
            &[j5, i5],
            n,
            &[chi_inv(j5, i5), chi(j5, n), chi(j5, i5)],
            &[chi(n, i5), chi(j5, n), chi_inv(n, i5)],
        ));
        // (vi)
        out.push(instance(
            Family::KernelVI,
            &[i, j],
            n,
            &[chi_inv(i, j), chi(j, n), chi(i, j)],
            &[chi(n, j), chi_inv(i, n), chi_inv(n, j), chi(i, n), chi(j, n)],
        ));
    }
    for (i, k) in distinct_pairs(n - 1) {
        for j in 1..n {
            if j != i && j != k {
                out.push(instance(
                    Family::KernelII,
                    &[i, k, j],
                    n,
                    &[chi_inv(i, k), chi(n, j), chi(i, k)],
                    &[chi(n, j)],
                ));
                out.push(instance(
                    Family::KernelIV,
                    &[i, k, j],
                    n,
                    &[chi_inv(i, k), chi(j, n), chi(i, k)],
                    &[chi(j, n)],
                ));
            }
        }
    }
    Ok(out)
}

/// The braid–permutation presentation plus the factorization of the
/// braid-like generators through the basis-conjugating group, in
/// left-action form.
pub fn bp_relations(n: u32) -> Result<Vec<RelationInstance>> {
    require_rank(n, 2)?;
    let mut out = Vec::new();
    for i in 1..n {
        out.push(instance(Family::BpXi, &[i], n, &[xi(i), xi(i)], &[]));
        out.push(instance(
            Family::BpFactorization,
            &[i],
            n,
            &[xi(i), sigma(i)],
            &[chi(i + 1, i)],
        ));
    }
    for i in 1..n {
        for j in 1..n {
            if j > i + 1 || i > j + 1 {
                out.push(instance(
                    Family::BpXi,
                    &[i, j],
                    n,
                    &[xi(i), xi(j)],
                    &[xi(j), xi(i)],
                ));
                out.push(instance(
                    Family::BpSigma,
                    &[i, j],
                    n,
                    &[sigma(i), sigma(j)],
                    &[sigma(j), sigma(i)],
                ));
                out.push(instance(
                    Family::BpMixed,
                    &[i, j],
                    n,
                    &[xi(i), sigma(j)],
                    &[sigma(j), xi(i)],
                ));
            }
        }
    }
    for i in 1..n.saturating_sub(1) {
        out.push(instance(
            Family::BpXi,
            &[i, i + 1],
            n,
            &[xi(i), xi(i + 1), xi(i)],
            &[xi(i + 1), xi(i), xi(i + 1)],
        ));
        out.push(instance(
            Family::BpSigma,
            &[i, i + 1],
            n,
            &[sigma(i), sigma(i + 1), sigma(i)],
            &[sigma(i + 1), sigma(i), sigma(i + 1)],
        ));
        // the two mixed identities, factor order already translated to the
        // left-action convention
        out.push(instance(
            Family::BpMixed,
            &[i, i + 1, 0],
            n,
            &[sigma(i), xi(i + 1), xi(i)],
            &[xi(i + 1), xi(i), sigma(i + 1)],
        ));
        out.push(instance(
            Family::BpMixed,
            &[i, i + 1, 1],
            n,
            &[xi(i), sigma(i + 1), sigma(i)],
            &[sigma(i + 1), sigma(i), xi(i + 1)],
        ));
    }
    Ok(out)
}

/// Every instance from all four enumerators at rank `n`.
pub fn all_relations(n: u32) -> Result<Vec<RelationInstance>> {
    let mut out = mccool_relations(n)?;
    out.extend(conjugation_formulas(n)?);
    if n >= 3 {
        out.extend(kernel_conjugation_formulas(n)?);
    }
    out.extend(bp_relations(n)?);
    Ok(out)
}

/// Evaluates both sides of every catalog instance at rank `n`.
///
/// Instances are independent, so the evaluation is data-parallel; the
/// report lists outcomes in enumeration order regardless of schedule.
pub fn verify_all(n: u32) -> Result<VerificationReport> {
    verify_families(n, None)
}

/// Like [`verify_all`] but restricted to one family when given.
pub fn verify_families(n: u32, family: Option<Family>) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut relations = all_relations(n)?;
    if let Some(f) = family {
        relations.retain(|r| r.family == f);
    }
    let instances = par::map_vec(relations, |r| InstanceOutcome {
        ok: r.holds(),
        family: r.family,
        indices: r.indices,
    });
    Ok(VerificationReport {
        rank: n,
        instances,
        elapsed: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aut::GroupExpression;

    fn find<'a>(
        relations: &'a [RelationInstance],
        family: Family,
        indices: &[u32],
    ) -> &'a RelationInstance {
        relations
            .iter()
            .find(|r| r.family == family && r.indices == indices)
            .expect("instance present")
    }

    #[test]
    fn mccool_family_one_example() {
        let relations = mccool_relations(3).unwrap();
        let r = find(&relations, Family::McCool1, &[1, 2, 3]);
        assert_eq!(r.lhs, GroupExpression::parse("c[1,2]*c[3,2]*c[1,3]", 3).unwrap());
        assert_eq!(r.rhs, GroupExpression::parse("c[1,3]*c[1,2]*c[3,2]", 3).unwrap());
        assert!(r.holds());
    }

    #[test]
    fn mccool_family_two_example() {
        let relations = mccool_relations(4).unwrap();
        let r = find(&relations, Family::McCool2, &[2, 1, 4, 3]);
        assert!(r.rhs.is_empty());
        assert!(r.holds());
    }

    #[test]
    fn rank_two_has_no_triples() {
        let relations = mccool_relations(2).unwrap();
        assert!(relations.is_empty());
    }

    #[test]
    fn tau_and_xi_table_examples() {
        let relations = conjugation_formulas(3).unwrap();
        // sign flip inverts a generator whose column is flipped
        let r = find(&relations, Family::TauConjugation, &[1, 2, 1]);
        assert_eq!(r.rhs, GroupExpression::parse("c[2,1]^-1", 3).unwrap());
        assert!(r.holds());
        // transposition renames a column
        let r = find(&relations, Family::XiConjugation, &[1, 3, 1]);
        assert_eq!(r.rhs, GroupExpression::parse("c[3,2]", 3).unwrap());
        assert!(r.holds());
        // swap of both indices
        let r = find(&relations, Family::XiConjugation, &[1, 1, 2]);
        assert_eq!(r.rhs, GroupExpression::parse("c[2,1]", 3).unwrap());
        assert!(r.holds());
    }

    #[test]
    fn kernel_formula_examples() {
        let relations = kernel_conjugation_formulas(3).unwrap();
        let r = find(&relations, Family::KernelIII, &[2, 1]);
        assert_eq!(r.lhs, GroupExpression::parse("c[2,1]^-1*c[3,2]*c[2,1]", 3).unwrap());
        assert_eq!(r.rhs, GroupExpression::parse("c[3,1]*c[3,2]*c[3,1]^-1", 3).unwrap());
        assert!(r.holds());
        let r = find(&relations, Family::KernelI, &[2, 1]);
        assert_eq!(r.lhs, GroupExpression::parse("c[2,1]^-1*c[3,1]*c[2,1]", 3).unwrap());
        assert_eq!(r.rhs, GroupExpression::parse("c[3,1]", 3).unwrap());
        let r = find(&relations, Family::KernelVI, &[1, 2]);
        assert_eq!(
            r.rhs,
            GroupExpression::parse("c[3,2]*c[1,3]^-1*c[3,2]^-1*c[1,3]*c[2,3]", 3).unwrap()
        );
        assert!(r.holds());
    }

    #[test]
    fn bp_examples() {
        let relations = bp_relations(3).unwrap();
        let r = find(&relations, Family::BpXi, &[1]);
        assert!(r.rhs.is_empty());
        assert!(r.holds());
        let r = find(&relations, Family::BpSigma, &[1, 2]);
        assert_eq!(r.lhs, GroupExpression::parse("s[1]*s[2]*s[1]", 3).unwrap());
        assert!(r.holds());
        let r = find(&relations, Family::BpFactorization, &[1]);
        assert_eq!(r.rhs, GroupExpression::parse("c[2,1]", 3).unwrap());
        assert!(r.holds());
    }

    #[test]
    fn no_duplicate_instances() {
        for n in 2..=5 {
            let relations = all_relations(n).unwrap();
            let mut seen = std::collections::HashSet::new();
            for r in &relations {
                assert!(seen.insert((r.family, r.indices.clone())), "{:?}", (r.family, &r.indices));
            }
        }
    }

    #[test]
    fn disjoint_pair_count_matches_brute_force() {
        for n in 2..=6 {
            let relations = mccool_relations(n).unwrap();
            let got = relations.iter().filter(|r| r.family == Family::McCool2).count();
            let mut expected = 0usize;
            for k in 1..=n {
                for j in 1..=n {
                    for s in 1..=n {
                        for t in 1..=n {
                            if k != j
                                && s != t
                                && (k, j) < (s, t)
                                && k != s
                                && k != t
                                && j != s
                                && j != t
                            {
                                expected += 1;
                            }
                        }
                    }
                }
            }
            assert_eq!(got, expected);
            if n >= 4 {
                let n_us = n as usize;
                assert_eq!(expected, n_us * (n_us - 1) * (n_us - 2) * (n_us - 3) / 2);
            } else {
                assert_eq!(expected, 0);
            }
        }
    }

    #[test]
    fn verify_all_small_ranks() {
        for n in 2..=5 {
            let report = verify_all(n).unwrap();
            assert!(report.is_ok(), "failures at rank {n}: {:?}", report.failures());
            if n == 2 {
                let counts = report.family_counts();
                assert!(!counts.contains_key(&Family::McCool1));
            }
        }
        assert!(verify_all(1).is_err());
    }

    #[test]
    fn verify_single_family() {
        let report = verify_families(4, Some(Family::XiConjugation)).unwrap();
        assert!(report.is_ok());
        assert!(report.instances.iter().all(|i| i.family == Family::XiConjugation));
        assert_eq!(report.total(), 3 * 12);
    }
}
