//! Algebraic handle decompositions of 4-manifolds.
//!
//! A `HandleBody4` is the algebraic shadow of a handle picture: one 0-handle,
//! a generator per 1-handle (dotted circle), a relator word per 2-handle,
//! plus bare counts of 3- and 4-handles. That is enough for the Euler
//! characteristic, the fundamental group presentation and H1; the separate
//! framed-link layer carries the data needed for boundary homology and the
//! intersection form.

use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::snf::AbelianInvariants;
use crate::word::{FreeEndomorphism, Word};

/// How a handlebody was built; consumed by builders that need to take an
/// earlier build apart again (puncturing, fiber sums).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    /// `Σ_g × D²`.
    Surface { genus: usize },
    /// Closed surface bundle over a surface, from a `BundleSpec`.
    Bundle(crate::bundles::BundleSpec),
    /// A bundle with one fiber thickening `Σ_g × D²` removed.
    PuncturedBundle(crate::bundles::BundleSpec),
    /// Fiber sum of two bundles.
    FiberSum {
        left: crate::bundles::BundleSpec,
        right: crate::bundles::BundleSpec,
        gluing_map: FreeEndomorphism,
        gluing_word: Word,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HandleBody4 {
    presentation: Presentation,
    n3: usize,
    n4: usize,
    closed: bool,
    provenance: Option<Provenance>,
}

impl HandleBody4 {
    pub fn new(presentation: Presentation, n3: usize, n4: usize, closed: bool) -> Result<Self> {
        if n4 > 1 {
            return Err(Error::Domain(format!("at most one 4-handle, got {n4}")));
        }
        if closed && n4 != 1 {
            return Err(Error::Domain(
                "a closed handlebody needs exactly one 4-handle".into(),
            ));
        }
        Ok(HandleBody4 {
            presentation,
            n3,
            n4,
            closed,
            provenance: None,
        })
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = Some(provenance);
        self
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn n3(&self) -> usize {
        self.n3
    }

    pub fn n4(&self) -> usize {
        self.n4
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn provenance(&self) -> Option<&Provenance> {
        self.provenance.as_ref()
    }

    /// `χ = 1 - #1-handles + #2-handles - #3-handles + #4-handles`.
    pub fn euler_characteristic(&self) -> i64 {
        1 - self.presentation.generator_count() as i64 + self.presentation.relators().len() as i64
            - self.n3 as i64
            + self.n4 as i64
    }

    /// H1 of the total space. 3- and 4-handles cannot change it.
    pub fn h1_total(&self) -> AbelianInvariants {
        self.presentation.abelian_invariants()
    }

    /// Betti/signature report for a closed manifold. `b2` comes from the
    /// duality bookkeeping `b2 = χ - 2 + 2·b1` (orientable, so `b3 = b1` and
    /// `b0 = b4 = 1`). The signature is never inferred here: it is taken
    /// from `sigma_hint` (e.g. from covering multiplicativity) or reported
    /// as unknown.
    pub fn closed_invariants(&self, sigma_hint: Option<i64>) -> Result<ClosedInvariantReport> {
        if !self.closed {
            return Err(Error::Domain(
                "closed_invariants called on a handlebody with boundary".into(),
            ));
        }
        let h1 = self.h1_total();
        let chi = self.euler_characteristic();
        let b1 = h1.free_rank;
        let b2 = chi - 2 + 2 * b1 as i64;
        Ok(ClosedInvariantReport {
            chi,
            b1,
            b2,
            sigma: sigma_hint,
            h1_torsion: h1.torsion,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedInvariantReport {
    pub chi: i64,
    pub b1: usize,
    pub b2: i64,
    /// `None` means "unknown": no framed-link signature and no hint.
    pub sigma: Option<i64>,
    pub h1_torsion: Vec<num_bigint::BigInt>,
}
