//! Endomorphisms of a free group given by generator images, the named
//! automorphism generators, and formal words in those generators.
//!
//! The action is on the left throughout: `compose(f, g)` is `f ∘ g`, the
//! map `x ↦ f(g(x))`, and [`GroupExpression::evaluate`] folds composition
//! left to right, so the rightmost factor acts first.  Faithfulness of the
//! action on the free group makes image-wise word comparison a complete
//! equality test for every group handled here.
//!
//! Expression grammar: factors separated by `*` or whitespace; `c[k,i]`
//! conjugates the k-th generator by the i-th, `th[k;s,t]` multiplies the
//! k-th generator by a commutator, `xi[i]` transposes adjacent generators,
//! `tau[i]` inverts one generator, `delta` maps the first generator to the
//! product of the first two, `s[i]` is the braid-like generator.  Each
//! factor takes an optional `^-1` suffix.

use std::fmt;

use crate::word::{Letter, Word};
use crate::{Error, Result};

/// The named generators of the automorphism groups in scope.
///
/// `Chi { k, i }` conjugates the k-th generator by the i-th (first index is
/// the conjugated one).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AutGenerator {
    Chi { k: u32, i: u32 },
    Theta { k: u32, s: u32, t: u32 },
    Xi(u32),
    Tau(u32),
    Delta,
    Sigma(u32),
}

impl AutGenerator {
    pub fn validate(&self, n: u32) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidGenerator(msg));
        match *self {
            AutGenerator::Chi { k, i } => {
                if k == i || k == 0 || i == 0 || k > n || i > n {
                    return bad(format!("c[{k},{i}] invalid for rank {n}"));
                }
            }
            AutGenerator::Theta { k, s, t } => {
                if !(s < t) || k == s || k == t || k == 0 || s == 0 || k > n || t > n {
                    return bad(format!("th[{k};{s},{t}] invalid for rank {n}"));
                }
            }
            AutGenerator::Xi(i) | AutGenerator::Sigma(i) => {
                if i == 0 || i + 1 > n {
                    return bad(format!("{self} invalid for rank {n}"));
                }
            }
            AutGenerator::Tau(i) => {
                if i == 0 || i > n {
                    return bad(format!("tau[{i}] invalid for rank {n}"));
                }
            }
            AutGenerator::Delta => {
                if n < 2 {
                    return bad(format!("delta invalid for rank {n}"));
                }
            }
        }
        Ok(())
    }

    /// The endomorphism of the rank-`n` free group given by this generator
    /// raised to `exponent` (`+1` or `-1`).
    pub fn endomorphism(&self, exponent: i8, n: u32) -> Result<Endomorphism> {
        self.validate(n)?;
        let mut f = Endomorphism::identity(n);
        let gen = |i: u32, s: i8| Word::generator(n, i, s).unwrap();
        match *self {
            AutGenerator::Chi { k, i } => {
                // x_k ↦ x_i^-e x_k x_i^e
                let xi = gen(i, exponent);
                let image = xi.invert().multiply(&gen(k, 1)).unwrap().multiply(&xi).unwrap();
                f.images[(k - 1) as usize] = image;
            }
            AutGenerator::Theta { k, s, t } => {
                // x_k ↦ x_k [x_s, x_t]^e
                let mut c = gen(s, 1).commutator(&gen(t, 1)).unwrap();
                if exponent < 0 {
                    c = c.invert();
                }
                f.images[(k - 1) as usize] = gen(k, 1).multiply(&c).unwrap();
            }
            AutGenerator::Xi(i) => {
                f.images[(i - 1) as usize] = gen(i + 1, 1);
                f.images[i as usize] = gen(i, 1);
            }
            AutGenerator::Tau(i) => {
                f.images[(i - 1) as usize] = gen(i, -1);
            }
            AutGenerator::Delta => {
                f.images[0] = gen(1, 1).multiply(&gen(2, exponent)).unwrap();
            }
            AutGenerator::Sigma(i) => {
                if exponent > 0 {
                    // x_i ↦ x_{i+1}, x_{i+1} ↦ x_{i+1}^-1 x_i x_{i+1}
                    f.images[(i - 1) as usize] = gen(i + 1, 1);
                    f.images[i as usize] = gen(i + 1, -1)
                        .multiply(&gen(i, 1))
                        .unwrap()
                        .multiply(&gen(i + 1, 1))
                        .unwrap();
                } else {
                    // x_i ↦ x_i x_{i+1} x_i^-1, x_{i+1} ↦ x_i
                    f.images[(i - 1) as usize] = gen(i, 1)
                        .multiply(&gen(i + 1, 1))
                        .unwrap()
                        .multiply(&gen(i, -1))
                        .unwrap();
                    f.images[i as usize] = gen(i, 1);
                }
            }
        }
        Ok(f)
    }

    fn token(&self) -> String {
        match *self {
            AutGenerator::Chi { k, i } => format!("c[{k},{i}]"),
            AutGenerator::Theta { k, s, t } => format!("th[{k};{s},{t}]"),
            AutGenerator::Xi(i) => format!("xi[{i}]"),
            AutGenerator::Tau(i) => format!("tau[{i}]"),
            AutGenerator::Delta => "delta".to_string(),
            AutGenerator::Sigma(i) => format!("s[{i}]"),
        }
    }
}

impl fmt::Display for AutGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.token())
    }
}

/// One factor of a [`GroupExpression`]: a named generator with exponent ±1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Factor {
    pub generator: AutGenerator,
    pub exponent: i8,
}

impl Factor {
    pub fn new(generator: AutGenerator, exponent: i8) -> Self {
        debug_assert!(exponent == 1 || exponent == -1);
        Factor { generator, exponent }
    }

    pub fn inverse(self) -> Self {
        Factor { generator: self.generator, exponent: -self.exponent }
    }

    fn cancels(self, other: Factor) -> bool {
        self.generator == other.generator && self.exponent == -other.exponent
    }
}

/// A formal word in the named generators, tagged with its ambient rank.
///
/// Concatenation cancels adjacent formally inverse factors (only formal
/// inverses: `xi[1]*xi[1]` is the identity automorphism but does not cancel
/// as an expression).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupExpression {
    rank: u32,
    factors: Vec<Factor>,
}

impl GroupExpression {
    pub fn new<I: IntoIterator<Item = Factor>>(rank: u32, factors: I) -> Result<Self> {
        let mut stack: Vec<Factor> = Vec::new();
        for f in factors {
            f.generator.validate(rank)?;
            match stack.last() {
                Some(&top) if top.cancels(f) => {
                    stack.pop();
                }
                _ => stack.push(f),
            }
        }
        Ok(GroupExpression { rank, factors: stack })
    }

    pub fn empty(rank: u32) -> Self {
        GroupExpression { rank, factors: Vec::new() }
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn concat(&self, other: &GroupExpression) -> Result<GroupExpression> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch { left: self.rank, right: other.rank });
        }
        GroupExpression::new(
            self.rank,
            self.factors.iter().chain(other.factors.iter()).copied(),
        )
    }

    /// Reversed factors with flipped exponents.
    pub fn inverse(&self) -> GroupExpression {
        GroupExpression {
            rank: self.rank,
            factors: self.factors.iter().rev().map(|f| f.inverse()).collect(),
        }
    }

    /// `self^-1 * other^-1 * self * other`.
    pub fn commutator(&self, other: &GroupExpression) -> Result<GroupExpression> {
        self.inverse()
            .concat(&other.inverse())?
            .concat(self)?
            .concat(other)
    }

    /// Left-to-right fold of composition: the rightmost factor acts first.
    pub fn evaluate(&self) -> Endomorphism {
        let mut acc = Endomorphism::identity(self.rank);
        for f in &self.factors {
            let g = f.generator.endomorphism(f.exponent, self.rank).expect("validated");
            acc = acc.compose(&g).expect("equal ranks");
        }
        acc
    }

    /// Parses the factor grammar described in the module docs.
    pub fn parse(text: &str, rank: u32) -> Result<GroupExpression> {
        let mut factors = Vec::new();
        let mut pos = 0;
        for token in text.split(|c: char| c.is_whitespace() || c == '*') {
            if token.is_empty() {
                pos += 1;
                continue;
            }
            factors.push(parse_factor(token, pos)?);
            pos += token.len() + 1;
        }
        GroupExpression::new(rank, factors)
    }
}

fn parse_factor(token: &str, pos: usize) -> Result<Factor> {
    let err = |message: String| Error::Parse { pos, message };
    let (body, exponent) = match token.strip_suffix("^-1") {
        Some(b) => (b, -1),
        None => (token, 1),
    };
    if body == "delta" {
        return Ok(Factor::new(AutGenerator::Delta, exponent));
    }
    let open = body
        .find('[')
        .ok_or_else(|| err(format!("unrecognized factor `{token}`")))?;
    if !body.ends_with(']') {
        return Err(err(format!("missing `]` in `{token}`")));
    }
    let name = &body[..open];
    let args = &body[open + 1..body.len() - 1];
    let parse_u32 = |s: &str| -> Result<u32> {
        s.trim()
            .parse()
            .map_err(|_| err(format!("bad index `{s}` in `{token}`")))
    };
    let generator = match name {
        "c" => {
            let (k, i) = args
                .split_once(',')
                .ok_or_else(|| err(format!("c expects two indices in `{token}`")))?;
            AutGenerator::Chi { k: parse_u32(k)?, i: parse_u32(i)? }
        }
        "th" => {
            let (k, rest) = args
                .split_once(';')
                .ok_or_else(|| err(format!("th expects k;s,t in `{token}`")))?;
            let (s, t) = rest
                .split_once(',')
                .ok_or_else(|| err(format!("th expects k;s,t in `{token}`")))?;
            AutGenerator::Theta { k: parse_u32(k)?, s: parse_u32(s)?, t: parse_u32(t)? }
        }
        "xi" => AutGenerator::Xi(parse_u32(args)?),
        "tau" => AutGenerator::Tau(parse_u32(args)?),
        "s" => AutGenerator::Sigma(parse_u32(args)?),
        _ => return Err(err(format!("unrecognized factor `{token}`"))),
    };
    Ok(Factor::new(generator, exponent))
}

impl fmt::Display for GroupExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, factor) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "{}", factor.generator)?;
            if factor.exponent < 0 {
                write!(f, "^-1")?;
            }
        }
        Ok(())
    }
}

/// A map of the rank-`n` free group determined by its generator images.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Endomorphism {
    rank: u32,
    images: Vec<Word>,
}

impl Endomorphism {
    pub fn identity(rank: u32) -> Self {
        let images = (1..=rank)
            .map(|i| Word::generator(rank, i, 1).unwrap())
            .collect();
        Endomorphism { rank, images }
    }

    pub fn from_images(rank: u32, images: Vec<Word>) -> Result<Self> {
        if images.len() != rank as usize {
            return Err(Error::RankMismatch { left: rank, right: images.len() as u32 });
        }
        for w in &images {
            if w.rank() != rank {
                return Err(Error::RankMismatch { left: rank, right: w.rank() });
            }
        }
        Ok(Endomorphism { rank, images })
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    /// The image of the i-th generator (1-based).
    pub fn image(&self, i: u32) -> &Word {
        &self.images[(i - 1) as usize]
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    /// Homomorphic extension: substitutes images letterwise and reduces.
    pub fn apply(&self, w: &Word) -> Result<Word> {
        if self.rank != w.rank() {
            return Err(Error::RankMismatch { left: self.rank, right: w.rank() });
        }
        let mut letters: Vec<Letter> = Vec::new();
        for l in w.letters() {
            let image = &self.images[(l.index - 1) as usize];
            if l.sign > 0 {
                extend_reduced(&mut letters, image.letters().iter().copied());
            } else {
                extend_reduced(&mut letters, image.letters().iter().rev().map(|x| x.inverse()));
            }
        }
        Word::reduce(self.rank, letters)
    }

    /// `self ∘ other`: the images of the result are `self` applied to the
    /// images of `other`.
    pub fn compose(&self, other: &Endomorphism) -> Result<Endomorphism> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch { left: self.rank, right: other.rank });
        }
        let images = other
            .images
            .iter()
            .map(|w| self.apply(w))
            .collect::<Result<Vec<_>>>()?;
        Ok(Endomorphism { rank: self.rank, images })
    }

    pub fn equal(&self, other: &Endomorphism) -> Result<bool> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch { left: self.rank, right: other.rank });
        }
        Ok(self.images == other.images)
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, w)| w.letters() == [Letter::new(i as u32 + 1, 1)])
    }
}

fn extend_reduced<I: IntoIterator<Item = Letter>>(stack: &mut Vec<Letter>, letters: I) {
    for l in letters {
        match stack.last() {
            Some(&top) if top.index == l.index && top.sign == -l.sign => {
                stack.pop();
            }
            _ => stack.push(l),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn w(text: &str, rank: u32) -> Word {
        Word::parse(text, rank).unwrap()
    }

    fn e(text: &str, rank: u32) -> GroupExpression {
        GroupExpression::parse(text, rank).unwrap()
    }

    fn chi(k: u32, i: u32) -> AutGenerator {
        AutGenerator::Chi { k, i }
    }

    fn random_expression(rng: &mut ChaCha8Rng, rank: u32, len: usize) -> GroupExpression {
        let mut factors = Vec::with_capacity(len);
        for _ in 0..len {
            let generator = match rng.gen_range(0..6) {
                0 | 1 => {
                    let k = rng.gen_range(1..=rank);
                    let mut i = rng.gen_range(1..rank);
                    if i >= k {
                        i += 1;
                    }
                    chi(k, i)
                }
                2 => AutGenerator::Xi(rng.gen_range(1..rank)),
                3 => AutGenerator::Tau(rng.gen_range(1..=rank)),
                4 => AutGenerator::Sigma(rng.gen_range(1..rank)),
                _ if rank >= 3 => {
                    let k = rng.gen_range(1..=rank);
                    let mut others: Vec<u32> = (1..=rank).filter(|&x| x != k).collect();
                    let s = others.remove(rng.gen_range(0..others.len()));
                    let t = others[rng.gen_range(0..others.len())];
                    AutGenerator::Theta { k, s: s.min(t), t: s.max(t) }
                }
                _ => AutGenerator::Delta,
            };
            factors.push(Factor::new(generator, if rng.gen() { 1 } else { -1 }));
        }
        GroupExpression::new(rank, factors).unwrap()
    }

    fn random_reduced(rng: &mut ChaCha8Rng, rank: u32, len: usize) -> Word {
        let mut word = Word::identity(rank);
        while word.len() < len {
            let index = rng.gen_range(1..=rank);
            let sign = if rng.gen() { 1 } else { -1 };
            word = word.multiply(&Word::generator(rank, index, sign).unwrap()).unwrap();
        }
        word
    }

    #[test]
    fn chi_images() {
        let f = chi(2, 1).endomorphism(1, 3).unwrap();
        assert_eq!(f.image(1), &w("x1", 3));
        assert_eq!(f.image(2), &w("X1 x2 x1", 3));
        assert_eq!(f.image(3), &w("x3", 3));

        let inv = chi(2, 1).endomorphism(-1, 2).unwrap();
        assert_eq!(inv.image(2), &w("x1 x2 X1", 2));
    }

    #[test]
    fn theta_images() {
        let f = AutGenerator::Theta { k: 1, s: 2, t: 3 }.endomorphism(1, 3).unwrap();
        assert_eq!(f.image(1), &w("x1 X2 X3 x2 x3", 3));
        assert_eq!(f.image(2), &w("x2", 3));
        assert_eq!(f.image(3), &w("x3", 3));
        let g = AutGenerator::Theta { k: 1, s: 2, t: 3 }.endomorphism(-1, 3).unwrap();
        assert!(f.compose(&g).unwrap().is_identity());
    }

    #[test]
    fn generator_inverses_compose_to_identity() {
        let gens = [
            chi(2, 1),
            chi(1, 3),
            AutGenerator::Theta { k: 2, s: 1, t: 3 },
            AutGenerator::Xi(1),
            AutGenerator::Tau(2),
            AutGenerator::Delta,
            AutGenerator::Sigma(2),
        ];
        for g in gens {
            let f = g.endomorphism(1, 3).unwrap();
            let finv = g.endomorphism(-1, 3).unwrap();
            assert!(f.compose(&finv).unwrap().is_identity(), "{g}");
            assert!(finv.compose(&f).unwrap().is_identity(), "{g}");
        }
    }

    #[test]
    fn apply_substitutes_and_reduces() {
        let f = chi(2, 1).endomorphism(1, 2).unwrap();
        assert_eq!(f.apply(&w("x2 x1", 2)).unwrap(), w("X1 x2 x1 x1", 2));
        let id = Endomorphism::identity(3);
        let v = w("x1 X3 x2", 3);
        assert_eq!(id.apply(&v).unwrap(), v);
        let g = chi(2, 1).endomorphism(1, 3).unwrap();
        assert_eq!(g.apply(&w("x3", 3)).unwrap(), w("x3", 3));
    }

    #[test]
    fn compose_left_action() {
        let f = chi(2, 1).endomorphism(1, 2).unwrap();
        assert!(f.compose(&Endomorphism::identity(2)).unwrap().equal(&f).unwrap());
        let finv = chi(2, 1).endomorphism(-1, 2).unwrap();
        assert!(f.compose(&finv).unwrap().is_identity());
        // xi_i ∘ sigma_i is conjugation of the (i+1)-st generator by the i-th
        let xi = AutGenerator::Xi(1).endomorphism(1, 2).unwrap();
        let sigma = AutGenerator::Sigma(1).endomorphism(1, 2).unwrap();
        let expected = chi(2, 1).endomorphism(1, 2).unwrap();
        assert!(xi.compose(&sigma).unwrap().equal(&expected).unwrap());
    }

    #[test]
    fn xi_sigma_factorization_all_ranks() {
        for n in 2..=5 {
            for i in 1..n {
                let xi = AutGenerator::Xi(i).endomorphism(1, n).unwrap();
                let sigma = AutGenerator::Sigma(i).endomorphism(1, n).unwrap();
                let expected = chi(i + 1, i).endomorphism(1, n).unwrap();
                assert!(xi.compose(&sigma).unwrap().equal(&expected).unwrap());
            }
        }
    }

    #[test]
    fn involutions() {
        for n in 2..=4 {
            for i in 1..n {
                let xi = AutGenerator::Xi(i).endomorphism(1, n).unwrap();
                assert!(xi.compose(&xi).unwrap().is_identity());
            }
            for i in 1..=n {
                let tau = AutGenerator::Tau(i).endomorphism(1, n).unwrap();
                assert!(tau.compose(&tau).unwrap().is_identity());
            }
        }
    }

    #[test]
    fn evaluate_examples() {
        assert!(e("c[2,1]*c[2,1]^-1", 2).evaluate().is_identity());
        assert!(e("", 3).evaluate().is_identity());
        let lhs = e("c[1,2]*c[3,2]*c[1,3]", 3).evaluate();
        let rhs = e("c[1,3]*c[1,2]*c[3,2]", 3).evaluate();
        assert!(lhs.equal(&rhs).unwrap());
        let th = e("th[1;2,3]", 3).evaluate();
        assert_eq!(th.image(1), &w("x1 X2 X3 x2 x3", 3));
    }

    #[test]
    fn commutator_of_relation_product_is_identity() {
        let a = e("c[1,2]*c[3,2]", 3);
        let b = e("c[1,3]", 3);
        assert!(a.commutator(&b).unwrap().evaluate().is_identity());
    }

    #[test]
    fn equality_examples() {
        let id = Endomorphism::identity(2);
        assert!(id.equal(&Endomorphism::identity(2)).unwrap());
        let f = chi(2, 1).endomorphism(1, 2).unwrap();
        let finv = chi(2, 1).endomorphism(-1, 2).unwrap();
        assert!(!f.equal(&finv).unwrap());
        assert!(f.equal(&chi(2, 1).endomorphism(1, 3).unwrap()).is_err());
    }

    #[test]
    fn expression_inverse() {
        let ex = e("c[2,1]*xi[1]", 2);
        assert_eq!(ex.inverse().to_string(), "xi[1]^-1*c[2,1]^-1");
        assert_eq!(GroupExpression::empty(3).inverse(), GroupExpression::empty(3));
        let ex = e("c[3,2]*tau[1]", 3);
        assert!(ex.concat(&ex.inverse()).unwrap().evaluate().is_identity());
        assert!(ex.concat(&ex.inverse()).unwrap().is_empty());
    }

    #[test]
    fn expression_parse_round_trip_and_errors() {
        let ex = e("c[3,2]^-1 * c[2,1] * xi[1]", 3);
        assert_eq!(ex.to_string(), "c[3,2]^-1*c[2,1]*xi[1]");
        assert_eq!(GroupExpression::parse(&ex.to_string(), 3).unwrap(), ex);
        assert_eq!(e("th[2;1,3]*delta^-1*tau[3]*s[2]", 3).factors().len(), 4);
        assert!(GroupExpression::parse("c[1,1]", 2).is_err());
        assert!(GroupExpression::parse("c[3,1]", 2).is_err());
        assert!(GroupExpression::parse("th[1;3,2]", 3).is_err());
        assert!(GroupExpression::parse("q[1]", 3).is_err());
        assert!(GroupExpression::parse("xi[2]", 2).is_err());
    }

    #[test]
    fn random_evaluation_laws() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..60 {
            let rank = rng.gen_range(2..=4);
            let len = rng.gen_range(0..8);
            let ex = random_expression(&mut rng, rank, len);
            // named generators are automorphisms, hence invertible
            let round = ex.concat(&ex.inverse()).unwrap().evaluate();
            assert!(round.is_identity());
            let len = rng.gen_range(0..6);
            let f = random_expression(&mut rng, rank, len).evaluate();
            let len = rng.gen_range(0..6);
            let g = random_expression(&mut rng, rank, len).evaluate();
            let len = rng.gen_range(0..8);
            let word = random_reduced(&mut rng, rank, len);
            let composed = f.compose(&g).unwrap().apply(&word).unwrap();
            let stepwise = f.apply(&g.apply(&word).unwrap()).unwrap();
            assert_eq!(composed, stepwise);
        }
    }
}
