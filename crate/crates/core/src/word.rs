//! Freely reduced words over an indexed generating set.
//!
//! Words are the common currency of the crate: relators, attaching circles,
//! monodromy images and gluing data are all `Word`s. A word is stored letter
//! by letter and kept freely reduced at all times, so two words are equal as
//! free-group elements iff they are equal as values.

use crate::error::{Error, Result};

/// One signed generator occurrence. `exp` is always `+1` or `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub gen: usize,
    pub exp: i8,
}

impl Letter {
    pub fn new(gen: usize, exp: i8) -> Result<Self> {
        if exp != 1 && exp != -1 {
            return Err(Error::InvalidWord(format!(
                "letter exponent must be +1 or -1, got {exp}"
            )));
        }
        Ok(Letter { gen, exp })
    }

    pub fn inverse(self) -> Self {
        Letter {
            gen: self.gen,
            exp: -self.exp,
        }
    }

    fn cancels(self, other: Letter) -> bool {
        self.gen == other.gen && self.exp == -other.exp
    }
}

/// A freely reduced word. The empty word is the identity.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    /// The identity element.
    pub fn identity() -> Self {
        Word::default()
    }

    /// Builds a word from raw letters, freely reducing. This is the `reduce`
    /// operation: a single stack pass, idempotent, never length-increasing.
    pub fn reduce(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut stack: Vec<Letter> = Vec::new();
        for l in letters {
            match stack.last() {
                Some(&top) if top.cancels(l) => {
                    stack.pop();
                }
                _ => stack.push(l),
            }
        }
        Word { letters: stack }
    }

    /// Builds a word from `(generator, exponent)` run-length pairs. Exponents
    /// may be any nonzero integer; runs are expanded and the result reduced.
    pub fn from_pairs(pairs: &[(usize, i64)]) -> Result<Self> {
        let mut letters = Vec::new();
        for &(gen, exp) in pairs {
            if exp == 0 {
                return Err(Error::InvalidWord(format!(
                    "zero exponent on generator {gen}"
                )));
            }
            let sign: i8 = if exp > 0 { 1 } else { -1 };
            for _ in 0..exp.unsigned_abs() {
                letters.push(Letter { gen, exp: sign });
            }
        }
        Ok(Word::reduce(letters))
    }

    /// Single positive letter.
    pub fn generator(gen: usize) -> Self {
        Word {
            letters: vec![Letter { gen, exp: 1 }],
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Largest generator index mentioned, if any.
    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.gen).max()
    }

    pub fn mentions(&self, gen: usize) -> bool {
        self.letters.iter().any(|l| l.gen == gen)
    }

    /// Net exponent of `gen`, i.e. the image in the free abelianization.
    pub fn exponent_sum(&self, gen: usize) -> i64 {
        self.letters
            .iter()
            .filter(|l| l.gen == gen)
            .map(|l| i64::from(l.exp))
            .sum()
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word::reduce(self.letters.iter().chain(other.letters.iter()).copied())
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// `self` raised to an integer power.
    pub fn pow(&self, exp: i64) -> Word {
        let base = if exp < 0 {
            self.inverse()
        } else {
            self.clone()
        };
        let mut out = Word::identity();
        for _ in 0..exp.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    /// `c · self · c⁻¹`.
    pub fn conjugated_by(&self, c: &Word) -> Word {
        c.concat(self).concat(&c.inverse())
    }

    /// Removes every occurrence of `gen` and shifts higher indices down by
    /// one. This is the word-level effect of killing a generator.
    pub fn delete_generator(&self, gen: usize) -> Word {
        Word::reduce(
            self.letters
                .iter()
                .filter(|l| l.gen != gen)
                .map(|l| Letter {
                    gen: if l.gen > gen { l.gen - 1 } else { l.gen },
                    exp: l.exp,
                }),
        )
    }

    /// Applies `f` to every generator index.
    pub fn map_generators(&self, f: impl Fn(usize) -> usize) -> Word {
        Word::reduce(self.letters.iter().map(|l| Letter {
            gen: f(l.gen),
            exp: l.exp,
        }))
    }
}

/// `a · b · a⁻¹ · b⁻¹`, reduced. Every generator has exponent sum zero in
/// the result.
pub fn commutator(a: &Word, b: &Word) -> Word {
    a.concat(b).concat(&a.inverse()).concat(&b.inverse())
}

/// An endomorphism of a free group, given by the image of each generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeEndomorphism {
    images: Vec<Word>,
}

impl FreeEndomorphism {
    pub fn new(images: Vec<Word>) -> Self {
        FreeEndomorphism { images }
    }

    /// The identity on a free group of the given rank.
    pub fn identity(rank: usize) -> Self {
        FreeEndomorphism {
            images: (0..rank).map(Word::generator).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn image_of(&self, gen: usize) -> Option<&Word> {
        self.images.get(gen)
    }

    /// Substitutes each letter by its image (inverted for negative letters)
    /// and reduces.
    pub fn apply(&self, w: &Word) -> Result<Word> {
        let mut letters = Vec::new();
        for l in w.letters() {
            let image = self.images.get(l.gen).ok_or_else(|| {
                Error::InvalidEndomorphism(format!(
                    "generator {} has no image (rank is {})",
                    l.gen,
                    self.images.len()
                ))
            })?;
            let piece = if l.exp > 0 {
                image.clone()
            } else {
                image.inverse()
            };
            letters.extend_from_slice(piece.letters());
        }
        Ok(Word::reduce(letters))
    }

    /// Composition `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &FreeEndomorphism) -> Result<FreeEndomorphism> {
        let images = other
            .images
            .iter()
            .map(|w| self.apply(w))
            .collect::<Result<Vec<_>>>()?;
        Ok(FreeEndomorphism { images })
    }
}
