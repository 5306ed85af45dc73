//! Two independent realizations of the graded Lie algebra of the
//! upper-triangular basis-conjugating groups, plus rank tables and
//! enveloping-algebra series.
//!
//! The *row model* realizes the algebra as a direct sum of free Lie
//! algebras, one per row of generators, where a lower-row element acts on
//! a higher row by derivations.  The *quotient* realizes it as a free Lie
//! algebra on all generators modulo the stated degree-2 relations, with
//! ranks computed by exact elimination.  Agreement of the two rank tables
//! is the crate's main cross-check; the full (non-triangular) variant of
//! the quotient only bounds the graded ranks from above and is labeled
//! accordingly in every interface.
//!
//! The relation set is homogeneous with respect to the column multiset of
//! the generators involved, so each degree splits into independent column
//! blocks; the elimination works block by block, which keeps the matrices
//! small and lets blocks run in parallel.

use std::collections::BTreeMap;
use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::lie::{self, BracketContext, Derivation, LieElement};
use crate::linalg::RowSpace;
use crate::par;
use crate::series::TruncatedSeries;
use crate::{Error, Result};

/// Degree-indexed ranks of a graded algebra.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RankTable {
    ranks: BTreeMap<u32, BigUint>,
}

impl RankTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, degree: u32, rank: BigUint) {
        self.ranks.insert(degree, rank);
    }

    pub fn rank(&self, degree: u32) -> BigUint {
        self.ranks.get(&degree).cloned().unwrap_or_else(BigUint::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &BigUint)> {
        self.ranks.iter().map(|(d, r)| (*d, r))
    }

    pub fn max_degree(&self) -> u32 {
        self.ranks.keys().next_back().copied().unwrap_or(0)
    }
}

fn check_rank(n: u32) -> Result<()> {
    if n < 2 {
        return Err(Error::RankOutOfRange {
            rank: n,
            message: "graded models start at rank 2".to_string(),
        });
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Row model
// ---------------------------------------------------------------------------

/// An element of the row model: per row `k` (2..=n), a free Lie element
/// over the row alphabet whose letter `i` stands for the generator
/// conjugating the k-th free group generator by the i-th.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelElement {
    n: u32,
    rows: BTreeMap<u32, LieElement>,
}

impl ModelElement {
    pub fn zero(n: u32) -> Self {
        ModelElement { n, rows: BTreeMap::new() }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn rows(&self) -> &BTreeMap<u32, LieElement> {
        &self.rows
    }

    pub fn row(&self, k: u32) -> LieElement {
        self.rows
            .get(&k)
            .cloned()
            .unwrap_or_else(|| LieElement::zero(k - 1))
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn from_rows<I: IntoIterator<Item = (u32, LieElement)>>(n: u32, rows: I) -> Result<Self> {
        let mut out = ModelElement::zero(n);
        for (k, payload) in rows {
            if k < 2 || k > n {
                return Err(Error::IndexOutOfRange { index: k, rank: n });
            }
            if payload.alphabet() != k - 1 {
                return Err(Error::AlphabetMismatch { left: k - 1, right: payload.alphabet() });
            }
            if !payload.is_zero() {
                let merged = match out.rows.remove(&k) {
                    Some(existing) => existing.add(&payload)?,
                    None => payload,
                };
                if !merged.is_zero() {
                    out.rows.insert(k, merged);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &ModelElement) -> Result<ModelElement> {
        if self.n != other.n {
            return Err(Error::RankMismatch { left: self.n, right: other.n });
        }
        ModelElement::from_rows(
            self.n,
            self.rows
                .iter()
                .chain(other.rows.iter())
                .map(|(k, e)| (*k, e.clone())),
        )
    }

    pub fn negate(&self) -> ModelElement {
        ModelElement {
            n: self.n,
            rows: self.rows.iter().map(|(k, e)| (*k, e.negate())).collect(),
        }
    }

    pub fn scale(&self, factor: &BigInt) -> ModelElement {
        if factor.is_zero() {
            return ModelElement::zero(self.n);
        }
        ModelElement {
            n: self.n,
            rows: self.rows.iter().map(|(k, e)| (*k, e.scale(factor))).collect(),
        }
    }
}

/// The class of a single conjugating generator: row `k`, column `i < k`.
pub fn model_generator(n: u32, k: u32, i: u32) -> Result<ModelElement> {
    check_rank(n)?;
    if !(i < k && k <= n && i >= 1) {
        return Err(Error::InvalidGenerator(format!(
            "model generator ({k},{i}) needs 1 <= i < k <= {n}"
        )));
    }
    ModelElement::from_rows(n, [(k, LieElement::generator(k - 1, i)?)])
}

/// The derivation by which the row-`r` basis bracket `word` acts on the
/// row-`s` free Lie algebra (`r < s`): a generator with column `j` sends
/// the row-`s` letter `r` to `[x_r, x_j]` and kills the other letters;
/// compound brackets act by commutators of derivations.
fn action_derivation(r: u32, word: &[u32], s: u32) -> Derivation {
    let alphabet = s - 1;
    if word.len() == 1 {
        let j = word[0];
        let mut images = vec![LieElement::zero(alphabet); alphabet as usize];
        let xr = LieElement::generator(alphabet, r).unwrap();
        let xj = LieElement::generator(alphabet, j).unwrap();
        images[(r - 1) as usize] = lie::bracket(&xr, &xj).unwrap();
        return Derivation::new(alphabet, 1, images).unwrap();
    }
    let (u, v) = lie::standard_factorization(word);
    action_derivation(r, &u, s)
        .commutator(&action_derivation(r, &v, s))
        .unwrap()
}

fn act(r: u32, p: &LieElement, s: u32, target: &LieElement) -> LieElement {
    let mut out = LieElement::zero(s - 1);
    for (word, coeff) in p.terms() {
        let image = action_derivation(r, word, s).apply(target).unwrap();
        out = out.add(&image.scale(coeff)).unwrap();
    }
    out
}

/// The bracket of the row model: same-row pairs use the free Lie bracket
/// of that row, and a lower-row element acts on a higher row as a
/// derivation, landing in the higher row.
pub fn model_bracket(a: &ModelElement, b: &ModelElement) -> Result<ModelElement> {
    if a.n != b.n {
        return Err(Error::RankMismatch { left: a.n, right: b.n });
    }
    let mut pieces: Vec<(u32, LieElement)> = Vec::new();
    let mut ctx = BracketContext::new();
    for (&r, p) in &a.rows {
        for (&s, q) in &b.rows {
            let piece = match r.cmp(&s) {
                std::cmp::Ordering::Equal => (r, ctx.bracket(p, q)?),
                std::cmp::Ordering::Less => (s, act(r, p, s, q)),
                std::cmp::Ordering::Greater => (r, act(s, q, r, p).negate()),
            };
            pieces.push(piece);
        }
    }
    ModelElement::from_rows(a.n, pieces)
}

/// Graded rank of the row model: the sum over rows of the free Lie ranks
/// of the row alphabets.
pub fn model_rank(n: u32, degree: u32) -> BigUint {
    assert!(n >= 2 && degree >= 1);
    (2..=n)
        .map(|k| lie::witt_rank((k - 1) as u64, degree as u64))
        .sum()
}

/// Rank table of the row model up to `max_degree`.
pub fn model_ranks(n: u32, max_degree: u32) -> Result<RankTable> {
    check_rank(n)?;
    let mut table = RankTable::new();
    for d in 1..=max_degree {
        table.insert(d, model_rank(n, d));
    }
    Ok(table)
}

// ---------------------------------------------------------------------------
// Quotient of the free Lie algebra by the stated relations
// ---------------------------------------------------------------------------

/// Which generator set the quotient is built on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GrVariant {
    /// Upper-triangular generators; the quotient ranks are exact and must
    /// agree with the row model.
    Plus,
    /// All basis-conjugating generators; only some relations are known, so
    /// the quotient ranks are an upper bound for the graded group ranks.
    Full,
}

impl GrVariant {
    pub fn name(self) -> &'static str {
        match self {
            GrVariant::Plus => "plus",
            GrVariant::Full => "full",
        }
    }
}

struct BlockSpace {
    /// Lyndon words of this block, in lexicographic order.
    words: Vec<Vec<u32>>,
    space: RowSpace,
}

/// Free Lie algebra on the generator set of a variant, modulo the ideal
/// generated by the degree-2 relation elements; graded ranks by exact
/// elimination, block by block in the column multigrading.
pub struct QuotientAlgebra {
    n: u32,
    variant: GrVariant,
    /// Letter id (1-based) -> (row, column).
    labels: Vec<(u32, u32)>,
    built_degree: u32,
    spaces: BTreeMap<u32, BTreeMap<Vec<u32>, BlockSpace>>,
    elements: BTreeMap<u32, Vec<LieElement>>,
}

impl QuotientAlgebra {
    pub fn new(n: u32, variant: GrVariant) -> Result<Self> {
        check_rank(n)?;
        let mut labels = Vec::new();
        for k in 1..=n {
            for i in 1..=n {
                let keep = match variant {
                    GrVariant::Plus => i < k,
                    GrVariant::Full => i != k,
                };
                if keep {
                    labels.push((k, i));
                }
            }
        }
        Ok(QuotientAlgebra {
            n,
            variant,
            labels,
            built_degree: 1,
            spaces: BTreeMap::new(),
            elements: BTreeMap::new(),
        })
    }

    pub fn alphabet_size(&self) -> u32 {
        self.labels.len() as u32
    }

    pub fn labels(&self) -> &[(u32, u32)] {
        &self.labels
    }

    /// The letter of the generator with row `k`, column `i`.
    pub fn letter(&self, k: u32, i: u32) -> Result<u32> {
        self.labels
            .iter()
            .position(|&(r, c)| (r, c) == (k, i))
            .map(|p| (p + 1) as u32)
            .ok_or_else(|| {
                Error::InvalidGenerator(format!(
                    "({k},{i}) is not a {} generator at rank {}",
                    self.variant.name(),
                    self.n
                ))
            })
    }

    pub fn generator(&self, k: u32, i: u32) -> Result<LieElement> {
        LieElement::generator(self.alphabet_size(), self.letter(k, i)?)
    }

    fn column_key(&self, word: &[u32]) -> Vec<u32> {
        let mut key = vec![0u32; self.n as usize + 1];
        for &l in word {
            key[self.labels[(l - 1) as usize].1 as usize] += 1;
        }
        key
    }

    /// The degree-2 relation elements of the variant.
    pub fn relation_elements(&self) -> Vec<LieElement> {
        let mut ctx = BracketContext::new();
        let mut out = Vec::new();
        let gen = |l: usize| {
            LieElement::generator(self.alphabet_size(), (l + 1) as u32).unwrap()
        };
        for a in 0..self.labels.len() {
            let (k, j) = self.labels[a];
            for b in (a + 1)..self.labels.len() {
                let (s, t) = self.labels[b];
                let disjoint = k != s && k != t && j != s && j != t;
                let same_column = j == t && k != s;
                if disjoint || same_column {
                    out.push(ctx.bracket(&gen(a), &gen(b)).unwrap());
                }
            }
        }
        // the 4T-type relation [x_{(i,k)}, x_{(i,j)} + x_{(k,j)}]
        let mut push_4t = |i: u32, k: u32, j: u32| {
            let xik = self.generator(i, k).unwrap();
            let xij = self.generator(i, j).unwrap();
            let xkj = self.generator(k, j).unwrap();
            out.push(
                ctx.bracket(&xik, &xij)
                    .unwrap()
                    .add(&ctx.bracket(&xik, &xkj).unwrap())
                    .unwrap(),
            );
        };
        match self.variant {
            GrVariant::Plus => {
                for j in 1..=self.n {
                    for k in (j + 1)..=self.n {
                        for i in (k + 1)..=self.n {
                            push_4t(i, k, j);
                        }
                    }
                }
            }
            GrVariant::Full => {
                for i in 1..=self.n {
                    for j in 1..=self.n {
                        for k in 1..=self.n {
                            if i != j && j != k && i != k {
                                push_4t(i, k, j);
                            }
                        }
                    }
                }
            }
        }
        out
    }

    fn blocks_for_degree(&self, degree: u32) -> BTreeMap<Vec<u32>, Vec<Vec<u32>>> {
        let mut blocks: BTreeMap<Vec<u32>, Vec<Vec<u32>>> = BTreeMap::new();
        for word in lie::lyndon_words(self.alphabet_size(), degree) {
            blocks.entry(self.column_key(&word)).or_default().push(word);
        }
        blocks
    }

    /// Builds ideal spans degree by degree up to `degree`.
    ///
    /// The ideal is generated in degree 2, so the degree-`d` component is
    /// spanned by brackets of Lyndon basis elements of degree `e` with
    /// spanning elements of the degree-`d-e` component; antisymmetry makes
    /// one bracketing order span the same space as both.
    pub fn extend_to_degree(&mut self, degree: u32) {
        while self.built_degree < degree {
            let d = self.built_degree + 1;
            let candidates: Vec<LieElement> = if d == 2 {
                self.relation_elements()
            } else {
                let mut pairs: Vec<(Vec<u32>, u32)> = Vec::new();
                for e in 1..=(d - 2) {
                    for word in lie::lyndon_words(self.alphabet_size(), e) {
                        pairs.push((word, e));
                    }
                }
                let elements = &self.elements;
                let alphabet = self.alphabet_size();
                let grouped: Vec<(Vec<u32>, u32)> = pairs;
                par::map_vec(grouped, |(word, e)| {
                    let mut ctx = BracketContext::new();
                    let basis =
                        LieElement::from_terms(alphabet, [(word, BigInt::one())]).unwrap();
                    elements
                        .get(&(d - e))
                        .map(|lower| {
                            lower
                                .iter()
                                .map(|x| ctx.bracket(&basis, x).unwrap())
                                .collect::<Vec<_>>()
                        })
                        .unwrap_or_default()
                })
                .into_iter()
                .flatten()
                .collect()
            };

            // group candidates by column block and eliminate per block
            let block_words = self.blocks_for_degree(d);
            let mut per_block: HashMap<Vec<u32>, Vec<LieElement>> = HashMap::new();
            for cand in candidates {
                if cand.is_zero() {
                    continue;
                }
                let key = self.column_key(cand.terms().keys().next().unwrap());
                per_block.entry(key).or_default().push(cand);
            }
            let work: Vec<(Vec<u32>, Vec<LieElement>)> = {
                let mut w: Vec<_> = per_block.into_iter().collect();
                w.sort_by(|a, b| a.0.cmp(&b.0));
                w
            };
            let processed = par::map_vec(work, |(key, cands)| {
                let words = block_words.get(&key).cloned().unwrap_or_default();
                let mut space = RowSpace::new(words.len());
                let mut accepted = Vec::new();
                for cand in cands {
                    let vector = coordinates(&cand, &words);
                    if space.insert(vector) {
                        accepted.push(cand);
                    }
                }
                (key, words, space, accepted)
            });

            let mut degree_spaces = BTreeMap::new();
            let mut degree_elements = Vec::new();
            for (key, words, space, accepted) in processed {
                degree_spaces.insert(key, BlockSpace { words, space });
                degree_elements.extend(accepted);
            }
            self.spaces.insert(d, degree_spaces);
            self.elements.insert(d, degree_elements);
            self.built_degree = d;
        }
    }

    pub fn built_degree(&self) -> u32 {
        self.built_degree
    }

    fn ideal_dimension(&self, degree: u32) -> usize {
        self.spaces
            .get(&degree)
            .map(|blocks| blocks.values().map(|b| b.space.rank()).sum())
            .unwrap_or(0)
    }

    /// Rank of the degree-`d` quotient component.
    pub fn rank(&self, degree: u32) -> BigUint {
        assert!(degree >= 1 && degree <= self.built_degree);
        if degree == 1 {
            return BigUint::from(self.labels.len());
        }
        let free = lie::witt_rank(self.alphabet_size() as u64, degree as u64);
        free - BigUint::from(self.ideal_dimension(degree))
    }

    /// Whether the class of `e` is zero, i.e. whether `e` lies in the
    /// relation ideal.  Splits `e` into (degree, column block) components
    /// and reduces each against the built spans.
    pub fn class_is_zero(&self, e: &LieElement) -> Result<bool> {
        if e.alphabet() != self.alphabet_size() {
            return Err(Error::AlphabetMismatch {
                left: self.alphabet_size(),
                right: e.alphabet(),
            });
        }
        let mut components: HashMap<(u32, Vec<u32>), LieElement> = HashMap::new();
        for (word, coeff) in e.terms() {
            let key = (word.len() as u32, self.column_key(word));
            let piece = LieElement::from_terms(
                e.alphabet(),
                [(word.clone(), coeff.clone())],
            )?;
            let entry = components
                .entry(key)
                .or_insert_with(|| LieElement::zero(e.alphabet()));
            *entry = entry.add(&piece)?;
        }
        for ((degree, key), component) in components {
            if degree == 1 {
                return Ok(false); // no degree-1 relations
            }
            assert!(degree <= self.built_degree, "extend the quotient first");
            let Some(block) = self.spaces.get(&degree).and_then(|bs| bs.get(&key)) else {
                return Ok(false); // no relations reach this block
            };
            let residue = block.space.reduce(coordinates(&component, &block.words));
            if residue.iter().any(|c| !c.is_zero()) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn coordinates(e: &LieElement, words: &[Vec<u32>]) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); words.len()];
    for (word, coeff) in e.terms() {
        let pos = words
            .binary_search(word)
            .expect("term outside the block basis");
        v[pos] = coeff.clone();
    }
    v
}

/// Graded ranks of the relations quotient up to `max_degree`.
///
/// For [`GrVariant::Full`] the result is an upper bound for the graded
/// group ranks, not an exact table.
pub fn quotient_ranks(n: u32, variant: GrVariant, max_degree: u32) -> Result<RankTable> {
    let mut q = QuotientAlgebra::new(n, variant)?;
    q.extend_to_degree(max_degree);
    let mut table = RankTable::new();
    for d in 1..=max_degree {
        table.insert(d, q.rank(d));
    }
    Ok(table)
}

/// Whether `[x_{(k,i)}, x_{(j,i)} + x_{(j,k)}]` has nonzero class in the
/// degree-2 component of the full-variant quotient.
pub fn nonvanishing_witness(n: u32, i: u32, j: u32, k: u32) -> Result<bool> {
    check_rank(n)?;
    if i == j || j == k || i == k || i > n || j > n || k > n || i == 0 || j == 0 || k == 0 {
        return Err(Error::InvalidGenerator(format!(
            "witness indices ({i},{j},{k}) must be distinct and within rank {n}"
        )));
    }
    let mut q = QuotientAlgebra::new(n, GrVariant::Full)?;
    q.extend_to_degree(2);
    let mut ctx = BracketContext::new();
    let witness = ctx
        .bracket(&q.generator(k, i)?, &q.generator(j, i)?)?
        .add(&ctx.bracket(&q.generator(k, i)?, &q.generator(j, k)?)?)?;
    Ok(!q.class_is_zero(&witness)?)
}

// ---------------------------------------------------------------------------
// Series
// ---------------------------------------------------------------------------

/// Euler–Poincaré series of the universal enveloping algebra of a graded
/// Lie algebra with the given ranks: `∏_d (1 - t^d)^{-rank(d)}`.
pub fn uea_series(ranks: &RankTable, max_degree: u32) -> TruncatedSeries {
    let mut out = TruncatedSeries::one(max_degree);
    for (d, r) in ranks.iter() {
        if d > max_degree || r.is_zero() {
            continue;
        }
        out = out.multiply(&TruncatedSeries::inverse_one_minus_power(d, r, max_degree));
    }
    out
}

/// The closed product form `∏_{1 <= k <= n-1} 1/(1 - k t)`.
pub fn closed_form_series(n: u32, max_degree: u32) -> TruncatedSeries {
    assert!(n >= 2);
    let mut out = TruncatedSeries::one(max_degree);
    for k in 1..n {
        out = out.multiply(&TruncatedSeries::geometric(k as u64, max_degree));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn big(x: u32) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn model_rank_examples() {
        let n3: Vec<BigUint> = (1..=5).map(|d| model_rank(3, d)).collect();
        assert_eq!(n3, vec![big(3), big(1), big(2), big(3), big(6)]);
        let n4: Vec<BigUint> = (1..=4).map(|d| model_rank(4, d)).collect();
        assert_eq!(n4, vec![big(6), big(4), big(10), big(21)]);
        assert_eq!(model_rank(2, 1), big(1));
        assert_eq!(model_rank(2, 2), big(0));
        assert_eq!(model_rank(2, 5), big(0));
    }

    #[test]
    fn model_bracket_examples() {
        // a row-2 generator acts on row 3 by rewriting its column
        let got = model_bracket(
            &model_generator(4, 2, 1).unwrap(),
            &model_generator(4, 3, 2).unwrap(),
        )
        .unwrap();
        let expected = ModelElement::from_rows(
            4,
            [(3, lie::bracket(
                &LieElement::generator(2, 1).unwrap(),
                &LieElement::generator(2, 2).unwrap(),
            )
            .unwrap()
            .negate())],
        )
        .unwrap();
        assert_eq!(got, expected);

        assert!(model_bracket(
            &model_generator(4, 2, 1).unwrap(),
            &model_generator(4, 3, 1).unwrap(),
        )
        .unwrap()
        .is_zero());
        assert!(model_bracket(
            &model_generator(4, 2, 1).unwrap(),
            &model_generator(4, 4, 3).unwrap(),
        )
        .unwrap()
        .is_zero());
    }

    #[test]
    fn model_relations_vanish() {
        for n in 2..=6u32 {
            let gens: Vec<(u32, u32)> = (2..=n).flat_map(|k| (1..k).map(move |i| (k, i))).collect();
            for &(k, j) in &gens {
                for &(s, t) in &gens {
                    let a = model_generator(n, k, j).unwrap();
                    let b = model_generator(n, s, t).unwrap();
                    let disjoint = k != s && k != t && j != s && j != t;
                    let same_column = j == t && k != s;
                    if disjoint || same_column {
                        assert!(
                            model_bracket(&a, &b).unwrap().is_zero(),
                            "n={n} ({k},{j}) ({s},{t})"
                        );
                    }
                }
            }
            for j in 1..=n {
                for k in (j + 1)..=n {
                    for i in (k + 1)..=n {
                        let lhs = model_bracket(
                            &model_generator(n, i, k).unwrap(),
                            &model_generator(n, i, j)
                                .unwrap()
                                .add(&model_generator(n, k, j).unwrap())
                                .unwrap(),
                        )
                        .unwrap();
                        assert!(lhs.is_zero(), "n={n} i={i} k={k} j={j}");
                    }
                }
            }
        }
    }

    fn random_model_element(rng: &mut ChaCha8Rng, n: u32, max_degree: u32) -> ModelElement {
        let mut out = ModelElement::zero(n);
        for _ in 0..rng.gen_range(1..3) {
            let k = rng.gen_range(2..=n);
            let d = rng.gen_range(1..=max_degree);
            let words = lie::lyndon_words(k - 1, d);
            if words.is_empty() {
                continue;
            }
            let w = words[rng.gen_range(0..words.len())].clone();
            let c = BigInt::from(rng.gen_range(-2i32..=2));
            let payload = LieElement::from_terms(k - 1, [(w, c)]).unwrap();
            out = out.add(&ModelElement::from_rows(n, [(k, payload)]).unwrap()).unwrap();
        }
        out
    }

    #[test]
    fn model_bracket_antisymmetry_and_jacobi() {
        let mut rng = ChaCha8Rng::seed_from_u64(51);
        for _ in 0..40 {
            let n = rng.gen_range(3..=5);
            let a = random_model_element(&mut rng, n, 2);
            let b = random_model_element(&mut rng, n, 2);
            let c = random_model_element(&mut rng, n, 2);
            let ab = model_bracket(&a, &b).unwrap();
            assert_eq!(ab.negate(), model_bracket(&b, &a).unwrap());
            let bc = model_bracket(&b, &c).unwrap();
            let ca = model_bracket(&c, &a).unwrap();
            let jacobi = model_bracket(&ab, &c)
                .unwrap()
                .add(&model_bracket(&bc, &a).unwrap())
                .unwrap()
                .add(&model_bracket(&ca, &b).unwrap())
                .unwrap();
            assert!(jacobi.is_zero());
        }
    }

    #[test]
    fn quotient_rank_examples() {
        let t = quotient_ranks(3, GrVariant::Plus, 3).unwrap();
        assert_eq!(
            (t.rank(1), t.rank(2), t.rank(3)),
            (big(3), big(1), big(2))
        );
        let t = quotient_ranks(2, GrVariant::Plus, 2).unwrap();
        assert_eq!((t.rank(1), t.rank(2)), (big(1), big(0)));
        let t = quotient_ranks(3, GrVariant::Full, 1).unwrap();
        assert_eq!(t.rank(1), big(6));
        for n in 2..=4u32 {
            let t = quotient_ranks(n, GrVariant::Full, 1).unwrap();
            assert_eq!(t.rank(1), big(n * (n - 1)));
        }
    }

    #[test]
    fn quotient_agrees_with_model() {
        for (n, max_d) in [(2u32, 5u32), (3, 5), (4, 4)] {
            let q = quotient_ranks(n, GrVariant::Plus, max_d).unwrap();
            for d in 1..=max_d {
                assert_eq!(q.rank(d), model_rank(n, d), "n={n} d={d}");
            }
        }
    }

    #[test]
    fn quotient_agrees_with_model_rank_four_degree_five() {
        let q = quotient_ranks(4, GrVariant::Plus, 5).unwrap();
        for d in 1..=5 {
            assert_eq!(q.rank(d), model_rank(4, d), "d={d}");
        }
    }

    #[test]
    fn nonvanishing_witness_examples() {
        assert!(nonvanishing_witness(3, 1, 2, 3).unwrap());
        assert!(nonvanishing_witness(4, 1, 2, 3).unwrap());
        assert!(nonvanishing_witness(3, 1, 1, 2).is_err());
        // by contrast, the stated relation has zero class
        let mut q = QuotientAlgebra::new(3, GrVariant::Full).unwrap();
        q.extend_to_degree(2);
        let mut ctx = BracketContext::new();
        let relation = ctx
            .bracket(&q.generator(3, 1).unwrap(), &q.generator(3, 2).unwrap())
            .unwrap()
            .add(
                &ctx.bracket(&q.generator(3, 1).unwrap(), &q.generator(1, 2).unwrap())
                    .unwrap(),
            )
            .unwrap();
        assert!(q.class_is_zero(&relation).unwrap());
    }

    #[test]
    fn relation_classes_vanish_in_quotient() {
        for variant in [GrVariant::Plus, GrVariant::Full] {
            let mut q = QuotientAlgebra::new(4, variant).unwrap();
            q.extend_to_degree(2);
            for r in q.relation_elements() {
                assert!(q.class_is_zero(&r).unwrap());
            }
        }
    }

    #[test]
    fn series_examples() {
        let ranks = model_ranks(3, 4).unwrap();
        let s = uea_series(&ranks, 4);
        let expect: Vec<BigInt> = [1, 3, 7, 15, 31].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(s.coefficients(), &expect[..]);

        let s = uea_series(&RankTable::new(), 3);
        assert_eq!(s, TruncatedSeries::one(3));

        let mut one_gen = RankTable::new();
        one_gen.insert(1, big(1));
        let s = uea_series(&one_gen, 3);
        let expect: Vec<BigInt> = [1, 1, 1, 1].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(s.coefficients(), &expect[..]);
    }

    #[test]
    fn closed_form_examples() {
        let expect = |xs: &[i64]| -> Vec<BigInt> { xs.iter().map(|&x| BigInt::from(x)).collect() };
        assert_eq!(closed_form_series(3, 4).coefficients(), &expect(&[1, 3, 7, 15, 31])[..]);
        assert_eq!(closed_form_series(2, 3).coefficients(), &expect(&[1, 1, 1, 1])[..]);
        assert_eq!(closed_form_series(4, 2).coefficients(), &expect(&[1, 6, 25])[..]);
    }

    #[test]
    fn series_agreement() {
        for n in 2..=5u32 {
            let ranks = model_ranks(n, 8).unwrap();
            assert_eq!(uea_series(&ranks, 8), closed_form_series(n, 8), "n={n}");
        }
    }
}
