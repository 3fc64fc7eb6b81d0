//! Finitely presented groups and their abelian invariants.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::snf::AbelianInvariants;
use crate::word::Word;

/// A finite presentation: named generators plus freely reduced relator
/// words. Every letter index of every relator is below the generator count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    names: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(names: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        let n = names.len();
        for (idx, r) in relators.iter().enumerate() {
            if let Some(max) = r.max_generator() {
                if max >= n {
                    return Err(Error::InvalidPresentation(format!(
                        "relator {idx} mentions generator {max}, but there are only {n} generators"
                    )));
                }
            }
        }
        Ok(Presentation { names, relators })
    }

    /// Presentation with auto-generated names `g0, g1, ...`.
    pub fn with_default_names(generator_count: usize, relators: Vec<Word>) -> Result<Self> {
        Presentation::new(
            (0..generator_count).map(|i| format!("g{i}")).collect(),
            relators,
        )
    }

    pub fn generator_count(&self) -> usize {
        self.names.len()
    }

    pub fn generator_names(&self) -> &[String] {
        &self.names
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// Exponent-sum matrix: one row per relator, one column per generator.
    pub fn abelianization_matrix(&self) -> IntMatrix {
        IntMatrix::from_fn(self.relators.len(), self.names.len(), |i, j| {
            BigInt::from(self.relators[i].exponent_sum(j))
        })
    }

    /// H1 of the presented group: Smith normal form of the exponent-sum
    /// matrix gives the free rank and the torsion chain.
    pub fn abelian_invariants(&self) -> AbelianInvariants {
        AbelianInvariants::of_quotient(&self.abelianization_matrix())
    }

    /// The quotient obtained by killing the listed generators: their letters
    /// are deleted from every relator and the generators removed. Used to
    /// check that bundle groups surject onto their base groups.
    pub fn kill_generators(&self, kill: &[usize]) -> Result<Presentation> {
        for &g in kill {
            if g >= self.names.len() {
                return Err(Error::InvalidPresentation(format!(
                    "cannot kill generator {g}: out of range"
                )));
            }
        }
        let mut sorted: Vec<usize> = kill.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut names = self.names.clone();
        let mut relators = self.relators.clone();
        // delete from the top so lower indices stay valid
        for &g in sorted.iter().rev() {
            names.remove(g);
            relators = relators.iter().map(|r| r.delete_generator(g)).collect();
        }
        relators.retain(|r| !r.is_empty());
        Presentation::new(names, relators)
    }
}
