//! Exact free Lie algebra computations over the integers: Lyndon-word
//! bases, Witt ranks, bracket normal forms, and derivations.
//!
//! Elements are stored as integer combinations of Lyndon basis brackets.
//! A bracket is normalized by expanding both sides into the free
//! associative algebra, forming the commutator there, and converting back:
//! the expansion of the standard bracketing of a Lyndon word `w` is `w`
//! plus lexicographically larger words, so the conversion is triangular.
//! It repeatedly peels the smallest word, which must itself be Lyndon.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// All Lyndon words of length exactly `d` over the letters `1..=m`, in
/// lexicographic order (Duval's generation).
pub fn lyndon_words(m: u32, d: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    if m == 0 || d == 0 {
        return out;
    }
    let d = d as usize;
    let mut w = vec![1u32];
    loop {
        if w.len() == d {
            out.push(w.clone());
        }
        // periodic extension to length d, then increment the last
        // incrementable letter
        let mut t = Vec::with_capacity(d);
        while t.len() < d {
            t.push(w[t.len() % w.len()]);
        }
        while let Some(&last) = t.last() {
            if last == m {
                t.pop();
            } else {
                break;
            }
        }
        if t.is_empty() {
            return out;
        }
        *t.last_mut().unwrap() += 1;
        w = t;
    }
}

/// A word is Lyndon when it is strictly smaller than all of its proper
/// suffixes.
pub fn is_lyndon(word: &[u32]) -> bool {
    if word.is_empty() {
        return false;
    }
    (1..word.len()).all(|i| word < &word[i..])
}

/// Standard factorization `w = (u, v)` with `v` the smallest proper
/// suffix; both parts are Lyndon and `u < v`.
pub fn standard_factorization(word: &[u32]) -> (Vec<u32>, Vec<u32>) {
    debug_assert!(word.len() >= 2 && is_lyndon(word));
    let split = (1..word.len())
        .min_by(|&a, &b| word[a..].cmp(&word[b..]))
        .unwrap();
    (word[..split].to_vec(), word[split..].to_vec())
}

/// Rank of the degree-`d` component of the free Lie algebra on `m`
/// generators: `(1/d) Σ_{e|d} μ(e) m^{d/e}`.
pub fn witt_rank(m: u64, d: u64) -> BigUint {
    assert!(d >= 1);
    let mut sum = BigInt::zero();
    for e in 1..=d {
        if d.is_multiple_of(e) {
            match moebius(e) {
                0 => {}
                mu => {
                    let power = BigInt::from(m).pow((d / e) as u32);
                    if mu > 0 {
                        sum += power;
                    } else {
                        sum -= power;
                    }
                }
            }
        }
    }
    let (quot, rem) = num_integer::Integer::div_rem(&sum, &BigInt::from(d));
    debug_assert!(rem.is_zero());
    quot.to_biguint().expect("Witt ranks are nonnegative")
}

fn moebius(mut e: u64) -> i32 {
    let mut mu = 1;
    let mut p = 2;
    while p * p <= e {
        if e.is_multiple_of(p) {
            e /= p;
            if e.is_multiple_of(p) {
                return 0;
            }
            mu = -mu;
        }
        p += 1;
    }
    if e > 1 {
        mu = -mu;
    }
    mu
}

/// Renders the standard bracketing of a Lyndon word, e.g. `[x1, [x1, x2]]`.
pub fn bracket_string(word: &[u32]) -> String {
    if word.len() == 1 {
        return format!("x{}", word[0]);
    }
    let (u, v) = standard_factorization(word);
    format!("[{}, {}]", bracket_string(&u), bracket_string(&v))
}

/// An integer combination of Lyndon basis brackets over a fixed alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieElement {
    alphabet: u32,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl LieElement {
    pub fn zero(alphabet: u32) -> Self {
        LieElement { alphabet, terms: BTreeMap::new() }
    }

    pub fn generator(alphabet: u32, letter: u32) -> Result<Self> {
        if letter == 0 || letter > alphabet {
            return Err(Error::IndexOutOfRange { index: letter, rank: alphabet });
        }
        Ok(LieElement {
            alphabet,
            terms: BTreeMap::from([(vec![letter], BigInt::one())]),
        })
    }

    /// Builds an element from Lyndon-word coordinates.
    pub fn from_terms<I>(alphabet: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, BigInt)>,
    {
        let mut map: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
        for (word, coeff) in terms {
            assert!(is_lyndon(&word), "not a Lyndon word: {word:?}");
            for &l in &word {
                if l == 0 || l > alphabet {
                    return Err(Error::IndexOutOfRange { index: l, rank: alphabet });
                }
            }
            *map.entry(word).or_insert_with(BigInt::zero) += coeff;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(LieElement { alphabet, terms: map })
    }

    pub fn alphabet(&self) -> u32 {
        self.alphabet
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn negate(&self) -> Self {
        LieElement {
            alphabet: self.alphabet,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }

    pub fn add(&self, other: &LieElement) -> Result<LieElement> {
        self.check_alphabet(other)?;
        let mut terms = self.terms.clone();
        for (w, c) in &other.terms {
            let entry = terms.entry(w.clone()).or_insert_with(BigInt::zero);
            *entry += c;
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(LieElement { alphabet: self.alphabet, terms })
    }

    pub fn sub(&self, other: &LieElement) -> Result<LieElement> {
        self.add(&other.negate())
    }

    pub fn scale(&self, factor: &BigInt) -> LieElement {
        if factor.is_zero() {
            return LieElement::zero(self.alphabet);
        }
        LieElement {
            alphabet: self.alphabet,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c * factor)).collect(),
        }
    }

    /// The homogeneous component of the given degree.
    pub fn component(&self, degree: u32) -> LieElement {
        LieElement {
            alphabet: self.alphabet,
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.len() == degree as usize)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// Degrees occurring in this element.
    pub fn degrees(&self) -> Vec<u32> {
        let mut ds: Vec<u32> = self.terms.keys().map(|w| w.len() as u32).collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    /// `Some(d)` when every term has degree `d`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        match self.degrees().as_slice() {
            [d] => Some(*d),
            _ => None,
        }
    }

    fn check_alphabet(&self, other: &LieElement) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch { left: self.alphabet, right: other.alphabet });
        }
        Ok(())
    }
}

impl fmt::Display for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (word, coeff)) in self.terms.iter().enumerate() {
            let abs = coeff.abs();
            if i == 0 {
                if coeff.is_negative() {
                    write!(f, "-")?;
                }
            } else if coeff.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if !abs.is_one() {
                write!(f, "{abs} ")?;
            }
            write!(f, "{}", bracket_string(word))?;
        }
        Ok(())
    }
}

type Poly = BTreeMap<Vec<u32>, BigInt>;

/// Bracket engine with a memoized table of basis expansions into the free
/// associative algebra.
#[derive(Default)]
pub struct BracketContext {
    expansions: HashMap<Vec<u32>, Poly>,
}

impl BracketContext {
    pub fn new() -> Self {
        Self::default()
    }

    fn expand_basis(&mut self, word: &[u32]) -> Poly {
        if let Some(p) = self.expansions.get(word) {
            return p.clone();
        }
        let poly = if word.len() == 1 {
            Poly::from([(word.to_vec(), BigInt::one())])
        } else {
            let (u, v) = standard_factorization(word);
            let pu = self.expand_basis(&u);
            let pv = self.expand_basis(&v);
            poly_sub(poly_mul(&pu, &pv), poly_mul(&pv, &pu))
        };
        self.expansions.insert(word.to_vec(), poly.clone());
        poly
    }

    fn expand(&mut self, e: &LieElement) -> Poly {
        let mut out = Poly::new();
        for (w, c) in e.terms() {
            for (word, coeff) in self.expand_basis(w) {
                let entry = out.entry(word).or_insert_with(BigInt::zero);
                *entry += coeff * c;
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// Converts an associative polynomial that represents a Lie element
    /// back into Lyndon coordinates.
    fn lyndon_normal_form(&mut self, mut poly: Poly, alphabet: u32) -> LieElement {
        let mut terms = BTreeMap::new();
        while let Some((word, coeff)) = poly.iter().next().map(|(w, c)| (w.clone(), c.clone())) {
            assert!(
                is_lyndon(&word),
                "leading word {word:?} is not Lyndon; input was not a Lie element"
            );
            for (w, c) in self.expand_basis(&word) {
                let entry = poly.entry(w).or_insert_with(BigInt::zero);
                *entry -= c * &coeff;
            }
            poly.retain(|_, c| !c.is_zero());
            terms.insert(word, coeff);
        }
        LieElement { alphabet, terms }
    }

    /// Lie bracket in Lyndon normal form; bilinear and antisymmetric.
    pub fn bracket(&mut self, a: &LieElement, b: &LieElement) -> Result<LieElement> {
        a.check_alphabet(b)?;
        if a.is_zero() || b.is_zero() {
            return Ok(LieElement::zero(a.alphabet));
        }
        let pa = self.expand(a);
        let pb = self.expand(b);
        let commutator = poly_sub(poly_mul(&pa, &pb), poly_mul(&pb, &pa));
        Ok(self.lyndon_normal_form(commutator, a.alphabet))
    }
}

/// One-shot bracket; use [`BracketContext`] for bulk work.
pub fn bracket(a: &LieElement, b: &LieElement) -> Result<LieElement> {
    BracketContext::new().bracket(a, b)
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (wa, ca) in a {
        for (wb, cb) in b {
            let mut word = wa.clone();
            word.extend_from_slice(wb);
            let entry = out.entry(word).or_insert_with(BigInt::zero);
            *entry += ca * cb;
        }
    }
    out
}

fn poly_sub(mut a: Poly, b: Poly) -> Poly {
    for (w, c) in b {
        let entry = a.entry(w).or_insert_with(BigInt::zero);
        *entry -= c;
    }
    a.retain(|_, c| !c.is_zero());
    a
}

/// A derivation of the free Lie algebra, homogeneous of a fixed degree
/// shift: generators map to elements of degree `1 + shift` (or zero).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    alphabet: u32,
    shift: u32,
    images: Vec<LieElement>,
}

impl Derivation {
    pub fn new(alphabet: u32, shift: u32, images: Vec<LieElement>) -> Result<Self> {
        if images.len() != alphabet as usize {
            return Err(Error::AlphabetMismatch {
                left: alphabet,
                right: images.len() as u32,
            });
        }
        for img in &images {
            if img.alphabet() != alphabet {
                return Err(Error::AlphabetMismatch { left: alphabet, right: img.alphabet() });
            }
            if !img.is_zero() && img.homogeneous_degree() != Some(shift + 1) {
                return Err(Error::DegreeOutOfRange(shift + 1));
            }
        }
        Ok(Derivation { alphabet, shift, images })
    }

    /// The degree-one datum of a conjugating generator: the k-th letter
    /// maps to `[x_k, x_i]`, all others to zero.
    pub fn from_conjugation_generator(k: u32, i: u32, alphabet: u32) -> Result<Self> {
        if k == i || k == 0 || i == 0 || k > alphabet || i > alphabet {
            return Err(Error::InvalidGenerator(format!(
                "conjugation generator ({k},{i}) invalid for alphabet {alphabet}"
            )));
        }
        let mut images = vec![LieElement::zero(alphabet); alphabet as usize];
        let xk = LieElement::generator(alphabet, k)?;
        let xi = LieElement::generator(alphabet, i)?;
        images[(k - 1) as usize] = bracket(&xk, &xi)?;
        Derivation::new(alphabet, 1, images)
    }

    pub fn alphabet(&self) -> u32 {
        self.alphabet
    }

    pub fn shift(&self) -> u32 {
        self.shift
    }

    pub fn image(&self, letter: u32) -> &LieElement {
        &self.images[(letter - 1) as usize]
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(|i| i.is_zero())
    }

    fn apply_basis(&self, ctx: &mut BracketContext, word: &[u32]) -> LieElement {
        if word.len() == 1 {
            return self.images[(word[0] - 1) as usize].clone();
        }
        let (u, v) = standard_factorization(word);
        let bu = LieElement::from_terms(self.alphabet, [(u.clone(), BigInt::one())]).unwrap();
        let bv = LieElement::from_terms(self.alphabet, [(v.clone(), BigInt::one())]).unwrap();
        let du = self.apply_basis(ctx, &u);
        let dv = self.apply_basis(ctx, &v);
        ctx.bracket(&du, &bv)
            .unwrap()
            .add(&ctx.bracket(&bu, &dv).unwrap())
            .unwrap()
    }

    /// Extends by the Leibniz rule `D[x, y] = [Dx, y] + [x, Dy]`.
    pub fn apply(&self, e: &LieElement) -> Result<LieElement> {
        if e.alphabet() != self.alphabet {
            return Err(Error::AlphabetMismatch { left: self.alphabet, right: e.alphabet() });
        }
        let mut ctx = BracketContext::new();
        let mut out = LieElement::zero(self.alphabet);
        for (w, c) in e.terms() {
            out = out.add(&self.apply_basis(&mut ctx, w).scale(c))?;
        }
        Ok(out)
    }

    pub fn add(&self, other: &Derivation) -> Result<Derivation> {
        if self.alphabet != other.alphabet || self.shift != other.shift {
            return Err(Error::AlphabetMismatch { left: self.alphabet, right: other.alphabet });
        }
        let images = self
            .images
            .iter()
            .zip(&other.images)
            .map(|(a, b)| a.add(b))
            .collect::<Result<Vec<_>>>()?;
        Derivation::new(self.alphabet, self.shift, images)
    }

    /// The derivation `x ↦ D(E(x)) − E(D(x))`.
    pub fn commutator(&self, other: &Derivation) -> Result<Derivation> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch { left: self.alphabet, right: other.alphabet });
        }
        let images = (1..=self.alphabet)
            .map(|letter| {
                let x = LieElement::generator(self.alphabet, letter)?;
                self.apply(&other.apply(&x)?)?.sub(&other.apply(&self.apply(&x)?)?)
            })
            .collect::<Result<Vec<_>>>()?;
        Derivation::new(self.alphabet, self.shift + other.shift, images)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn basis(alphabet: u32, word: &[u32]) -> LieElement {
        LieElement::from_terms(alphabet, [(word.to_vec(), BigInt::one())]).unwrap()
    }

    #[test]
    fn lyndon_enumeration_examples() {
        assert_eq!(lyndon_words(2, 1), vec![vec![1], vec![2]]);
        assert_eq!(lyndon_words(2, 3), vec![vec![1, 1, 2], vec![1, 2, 2]]);
        assert!(lyndon_words(1, 2).is_empty());
        assert_eq!(lyndon_words(3, 2), vec![vec![1, 2], vec![1, 3], vec![2, 3]]);
    }

    #[test]
    fn lyndon_counts_match_witt_ranks() {
        for m in 1..=5u32 {
            for d in 1..=8u32 {
                let count = lyndon_words(m, d).len();
                assert_eq!(
                    BigUint::from(count),
                    witt_rank(m as u64, d as u64),
                    "m={m} d={d}"
                );
            }
        }
    }

    #[test]
    fn witt_rank_examples() {
        let values: Vec<u64> = (1..=5).map(|d| witt_rank(2, d).try_into().unwrap()).collect();
        assert_eq!(values, vec![2, 1, 2, 3, 6]);
        assert_eq!(witt_rank(1, 2), BigUint::zero());
        assert_eq!(witt_rank(1, 5), BigUint::zero());
        assert_eq!(witt_rank(3, 2), BigUint::from(3u32));
        assert_eq!(witt_rank(3, 3), BigUint::from(8u32));
        // large inputs stay exact
        assert_eq!(witt_rank(9, 30) % BigUint::from(1u32), BigUint::zero());
    }

    #[test]
    fn standard_factorization_examples() {
        assert_eq!(standard_factorization(&[1, 1, 2]), (vec![1], vec![1, 2]));
        assert_eq!(standard_factorization(&[1, 2, 2]), (vec![1, 2], vec![2]));
        assert_eq!(bracket_string(&[1, 1, 2]), "[x1, [x1, x2]]");
        assert_eq!(bracket_string(&[1, 2, 2]), "[[x1, x2], x2]");
    }

    #[test]
    fn bracket_examples() {
        let a = LieElement::generator(2, 1).unwrap();
        let b = LieElement::generator(2, 2).unwrap();
        assert!(bracket(&a, &a).unwrap().is_zero());
        assert_eq!(bracket(&a, &b).unwrap(), basis(2, &[1, 2]));
        let ab = bracket(&a, &b).unwrap();
        let lhs = bracket(&ab, &a).unwrap();
        assert_eq!(lhs, basis(2, &[1, 1, 2]).negate());
        assert!(bracket(&a, &LieElement::generator(3, 1).unwrap()).is_err());
    }

    #[test]
    fn expansion_round_trip() {
        let mut ctx = BracketContext::new();
        for d in 1..=6u32 {
            for w in lyndon_words(3, d) {
                let e = basis(3, &w);
                let poly = ctx.expand(&e);
                assert_eq!(ctx.lyndon_normal_form(poly, 3), e);
            }
        }
    }

    fn random_element(rng: &mut ChaCha8Rng, alphabet: u32, max_degree: u32) -> LieElement {
        let mut out = LieElement::zero(alphabet);
        for _ in 0..rng.gen_range(1..4) {
            let d = rng.gen_range(1..=max_degree);
            let words = lyndon_words(alphabet, d);
            let w = &words[rng.gen_range(0..words.len())];
            let c = BigInt::from(rng.gen_range(-3i32..=3));
            out = out
                .add(&LieElement::from_terms(alphabet, [(w.clone(), c)]).unwrap())
                .unwrap();
        }
        out
    }

    #[test]
    fn antisymmetry_and_jacobi() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let mut ctx = BracketContext::new();
        for _ in 0..40 {
            let m = rng.gen_range(2..=4);
            let a = random_element(&mut rng, m, 2);
            let b = random_element(&mut rng, m, 2);
            let c = random_element(&mut rng, m, 2);
            let ab = ctx.bracket(&a, &b).unwrap();
            assert_eq!(ab.negate(), ctx.bracket(&b, &a).unwrap());
            let bc = ctx.bracket(&b, &c).unwrap();
            let ca = ctx.bracket(&c, &a).unwrap();
            let jacobi = ctx
                .bracket(&ab, &c)
                .unwrap()
                .add(&ctx.bracket(&bc, &a).unwrap())
                .unwrap()
                .add(&ctx.bracket(&ca, &b).unwrap())
                .unwrap();
            assert!(jacobi.is_zero(), "{a} | {b} | {c}");
        }
    }

    #[test]
    fn conjugation_derivation_examples() {
        let d21 = Derivation::from_conjugation_generator(2, 1, 3).unwrap();
        let x1 = LieElement::generator(3, 1).unwrap();
        let x2 = LieElement::generator(3, 2).unwrap();
        let x3 = LieElement::generator(3, 3).unwrap();
        assert_eq!(d21.apply(&x2).unwrap(), basis(3, &[1, 2]).negate());
        assert!(d21.apply(&x3).unwrap().is_zero());
        assert_eq!(d21.shift(), 1);
        // Leibniz on [x1, x2]
        let e = bracket(&x1, &x2).unwrap();
        let expected = bracket(&x1, &bracket(&x2, &x1).unwrap()).unwrap();
        assert_eq!(d21.apply(&e).unwrap(), expected);
    }

    #[test]
    fn leibniz_rule_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..30 {
            let m = rng.gen_range(2..=4);
            let k = rng.gen_range(1..=m);
            let i = loop {
                let i = rng.gen_range(1..=m);
                if i != k {
                    break i;
                }
            };
            let d = Derivation::from_conjugation_generator(k, i, m).unwrap();
            let a = random_element(&mut rng, m, 2);
            let b = random_element(&mut rng, m, 2);
            let lhs = d.apply(&bracket(&a, &b).unwrap()).unwrap();
            let rhs = bracket(&d.apply(&a).unwrap(), &b)
                .unwrap()
                .add(&bracket(&a, &d.apply(&b).unwrap()).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn derivation_bracket_witnesses() {
        // over all distinct triples at small alphabet sizes:
        // [D_{k,i}, D_{j,i} + D_{j,k}] sends x_j to [x_j, [x_k, x_i]] != 0,
        // while [D_{i,k}, D_{i,j} + D_{k,j}] vanishes identically
        for n in 3..=5u32 {
            for i in 1..=n {
                for j in 1..=n {
                    for k in 1..=n {
                        if i == j || j == k || i == k {
                            continue;
                        }
                        let d = |a: u32, b: u32| Derivation::from_conjugation_generator(a, b, n).unwrap();
                        let witness = d(k, i).commutator(&d(j, i).add(&d(j, k)).unwrap()).unwrap();
                        let xj = LieElement::generator(n, j).unwrap();
                        let xk = LieElement::generator(n, k).unwrap();
                        let xi = LieElement::generator(n, i).unwrap();
                        let inner = bracket(&xk, &xi).unwrap();
                        let expected = bracket(&xj, &inner).unwrap();
                        let got = witness.apply(&xj).unwrap();
                        assert!(!got.is_zero());
                        assert_eq!(got, expected);

                        let vanishing = d(i, k).commutator(&d(i, j).add(&d(k, j)).unwrap()).unwrap();
                        assert!(vanishing.is_zero(), "n={n} i={i} j={j} k={k}");
                    }
                }
            }
        }
    }

    #[test]
    fn derivation_commutator_is_a_derivation() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        for _ in 0..15 {
            let m = 3;
            let d1 = Derivation::from_conjugation_generator(2, 1, m).unwrap();
            let d2 = Derivation::from_conjugation_generator(3, 2, m).unwrap();
            let comm = d1.commutator(&d2).unwrap();
            let a = random_element(&mut rng, m, 2);
            let b = random_element(&mut rng, m, 2);
            let lhs = comm.apply(&bracket(&a, &b).unwrap()).unwrap();
            let rhs = bracket(&comm.apply(&a).unwrap(), &b)
                .unwrap()
                .add(&bracket(&a, &comm.apply(&b).unwrap()).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}
