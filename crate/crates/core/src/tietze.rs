//! Reversible presentation moves.
//!
//! The move set is deliberately restricted to operations whose inverse is
//! again in the set: multiplying one relator by a conjugate of another,
//! inverting or conjugating a relator, and adding/removing a generator with
//! a defining relator. General relator deletion is excluded (recognizing a
//! consequence is undecidable). Every move preserves the isomorphism type,
//! so abelian invariants and finite-quotient hom counts are unchanged,
//! which the test suites assert.

use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::word::{Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TietzeMove {
    /// T1: `r[target] <- reduce(r[target] · c · r[source]^±1 · c⁻¹)`.
    MultiplyRelator {
        target: usize,
        source: usize,
        invert_source: bool,
        conjugator: Word,
    },
    /// T2: `r[target] <- r[target]⁻¹`.
    InvertRelator { target: usize },
    /// T2: `r[target] <- c · r[target] · c⁻¹`.
    ConjugateRelator { target: usize, conjugator: Word },
    /// T3: add a generator `g` and the defining relator `g · w⁻¹`,
    /// with `w` a word in the existing generators.
    AddGenerator { name: Option<String>, word: Word },
    /// T4: remove a generator that occurs in exactly one relator, that
    /// relator having the exact T3 shape; both are eliminated.
    RemoveGenerator { generator: usize },
}

pub fn tietze_apply(p: &Presentation, mv: &TietzeMove) -> Result<Presentation> {
    match mv {
        TietzeMove::MultiplyRelator {
            target,
            source,
            invert_source,
            conjugator,
        } => {
            let (ti, si) = (*target, *source);
            check_relator_index(p, ti)?;
            check_relator_index(p, si)?;
            if ti == si {
                return Err(Error::InvalidMove(
                    "relator cannot be multiplied by itself".into(),
                ));
            }
            check_word_range(p, conjugator)?;
            let source_word = if *invert_source {
                p.relators()[si].inverse()
            } else {
                p.relators()[si].clone()
            };
            let mut relators = p.relators().to_vec();
            relators[ti] = relators[ti].concat(&source_word.conjugated_by(conjugator));
            Presentation::new(p.generator_names().to_vec(), relators)
        }
        TietzeMove::InvertRelator { target } => {
            check_relator_index(p, *target)?;
            let mut relators = p.relators().to_vec();
            relators[*target] = relators[*target].inverse();
            Presentation::new(p.generator_names().to_vec(), relators)
        }
        TietzeMove::ConjugateRelator { target, conjugator } => {
            check_relator_index(p, *target)?;
            check_word_range(p, conjugator)?;
            let mut relators = p.relators().to_vec();
            relators[*target] = relators[*target].conjugated_by(conjugator);
            Presentation::new(p.generator_names().to_vec(), relators)
        }
        TietzeMove::AddGenerator { name, word } => {
            check_word_range(p, word)?;
            let fresh = p.generator_count();
            let name = match name {
                Some(n) => {
                    if p.generator_index(n).is_some() {
                        return Err(Error::InvalidMove(format!(
                            "generator name {n:?} already in use"
                        )));
                    }
                    n.clone()
                }
                None => fresh_name(p),
            };
            let mut names = p.generator_names().to_vec();
            names.push(name);
            let mut relators = p.relators().to_vec();
            relators.push(Word::generator(fresh).concat(&word.inverse()));
            Presentation::new(names, relators)
        }
        TietzeMove::RemoveGenerator { generator } => {
            let g = *generator;
            if g >= p.generator_count() {
                return Err(Error::InvalidMove(format!("generator {g} out of range")));
            }
            let mentioning: Vec<usize> = (0..p.relators().len())
                .filter(|&i| p.relators()[i].mentions(g))
                .collect();
            let [ri] = mentioning[..] else {
                return Err(Error::InvalidMove(format!(
                    "generator {g} occurs in {} relators, need exactly 1",
                    mentioning.len()
                )));
            };
            let r = &p.relators()[ri];
            let defining = r.letters().first() == Some(&Letter { gen: g, exp: 1 })
                && r.letters()[1..].iter().all(|l| l.gen != g);
            if !defining {
                return Err(Error::InvalidMove(format!(
                    "relator {ri} is not of the defining form g·w⁻¹ for generator {g}"
                )));
            }
            let mut names = p.generator_names().to_vec();
            names.remove(g);
            let relators: Vec<Word> = p
                .relators()
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != ri)
                .map(|(_, w)| w.delete_generator(g))
                .collect();
            Presentation::new(names, relators)
        }
    }
}

fn check_relator_index(p: &Presentation, i: usize) -> Result<()> {
    if i >= p.relators().len() {
        return Err(Error::InvalidMove(format!(
            "relator index {i} out of range ({} relators)",
            p.relators().len()
        )));
    }
    Ok(())
}

fn check_word_range(p: &Presentation, w: &Word) -> Result<()> {
    if let Some(max) = w.max_generator() {
        if max >= p.generator_count() {
            return Err(Error::InvalidMove(format!(
                "word mentions generator {max}, out of range"
            )));
        }
    }
    Ok(())
}

fn fresh_name(p: &Presentation) -> String {
    let mut k = p.generator_count();
    loop {
        let candidate = format!("g{k}");
        if p.generator_index(&candidate).is_none() {
            return candidate;
        }
        k += 1;
    }
}
