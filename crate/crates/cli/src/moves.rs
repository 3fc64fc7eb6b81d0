//! Move scripts: parsing, application, and per-step invariant checking.
//!
//! A script is an ordered list of move records. Framed-link moves need the
//! file to carry a framed link; Tietze moves always act on the presentation
//! and are mirrored onto the link when one is present (relator
//! multiplication is a handle slide, inversion an orientation reversal,
//! conjugation an isotopy, generator addition/removal a carving pair).
//!
//! With checking enabled, the preserved-invariant set of each move is
//! recomputed after every step and the script aborts on the first
//! violation. A violation means an engine bug, not bad input.

use serde::{Deserialize, Serialize};

use cacime_core::{
    tietze_apply, AbelianInvariants, FramedLink, HandleBody4, Presentation, TietzeMove,
};

use crate::file::{word_from_pairs, ManifoldFile, ProvenanceDto, WordDto, FORMAT_VERSION};
use crate::CliError;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MoveScript {
    pub format_version: u32,
    pub moves: Vec<MoveDto>,
}

impl MoveScript {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let script: MoveScript = serde_json::from_str(text)
            .map_err(|e| CliError::validation(format!("move script: {e}")))?;
        if script.format_version != FORMAT_VERSION {
            return Err(CliError::validation(format!(
                "unsupported script format_version {}",
                script.format_version
            )));
        }
        Ok(script)
    }
}

fn default_sign() -> i8 {
    1
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum MoveDto {
    Slide {
        handle: usize,
        over: usize,
        #[serde(default = "default_sign")]
        sign: i8,
        #[serde(default)]
        conjugator: WordDto,
    },
    Swap {
        circle: usize,
    },
    Stabilize,
    Destabilize {
        dot: usize,
        handle: usize,
    },
    Blowup {
        #[serde(default = "default_sign")]
        sign: i8,
    },
    Blowdown {
        circle: usize,
    },
    Tietze {
        #[serde(rename = "move")]
        tietze: TietzeDto,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum TietzeDto {
    Multiply {
        target: usize,
        source: usize,
        #[serde(default)]
        invert: bool,
        #[serde(default)]
        conjugator: WordDto,
    },
    Invert {
        target: usize,
    },
    Conjugate {
        target: usize,
        conjugator: WordDto,
    },
    AddGenerator {
        #[serde(default)]
        name: Option<String>,
        word: WordDto,
    },
    RemoveGenerator {
        generator: String,
    },
}

/// Mutable manifold state a script runs against.
pub struct ManifoldState {
    names: Vec<String>,
    presentation: Presentation,
    link: Option<FramedLink>,
    n3: usize,
    n4: usize,
    closed: bool,
    provenance: ProvenanceDto,
}

/// Snapshot of the quantities move contracts speak about.
struct Invariants {
    chi: i64,
    h1: AbelianInvariants,
    boundary: Option<AbelianInvariants>,
    sigma: Option<i64>,
}

impl ManifoldState {
    pub fn from_file(file: &ManifoldFile) -> Result<Self, CliError> {
        let handlebody = file.handlebody()?;
        let link = file.framed_link()?;
        Ok(ManifoldState {
            names: handlebody.presentation().generator_names().to_vec(),
            presentation: handlebody.presentation().clone(),
            link,
            n3: handlebody.n3(),
            n4: handlebody.n4(),
            closed: handlebody.is_closed(),
            provenance: file.provenance.clone(),
        })
    }

    /// Serializes the final state. The provenance record of the input is
    /// kept verbatim, so an empty script reproduces its input exactly.
    pub fn into_file(self) -> Result<ManifoldFile, CliError> {
        let handlebody = HandleBody4::new(self.presentation, self.n3, self.n4, self.closed)?;
        crate::file::manifold_to_file(self.provenance, &handlebody, self.link.as_ref())
    }

    fn invariants(&self) -> Result<Invariants, CliError> {
        let chi = 1 - self.presentation.generator_count() as i64
            + self.presentation.relators().len() as i64
            - self.n3 as i64
            + self.n4 as i64;
        let h1 = self.presentation.abelian_invariants();
        let (boundary, sigma) = match &self.link {
            Some(l) if !l.is_algebraic_only() => (Some(l.h1_boundary()?), Some(l.signature()?)),
            _ => (None, None),
        };
        Ok(Invariants {
            chi,
            h1,
            boundary,
            sigma,
        })
    }

    fn sync_presentation_from_link(&mut self) -> Result<(), CliError> {
        let link = self.link.as_ref().expect("link present");
        self.presentation = link.to_presentation(&self.names)?;
        Ok(())
    }

    fn fresh_name(&self) -> String {
        let mut k = self.names.len() + 1;
        loop {
            let candidate = format!("w{k}");
            if !self.names.contains(&candidate) {
                return candidate;
            }
            k += 1;
        }
    }

    fn require_link(&self, step: usize, kind: &str) -> Result<&FramedLink, CliError> {
        self.link.as_ref().ok_or_else(|| {
            CliError::invalid_move(step, format!("{kind} needs a framed link in the file"))
        })
    }

    /// Applies one move. `step` is only used for error reporting.
    pub fn apply(&mut self, step: usize, mv: &MoveDto) -> Result<(), CliError> {
        let move_err = |e: cacime_core::Error| CliError::invalid_move(step, e.to_string());
        match mv {
            MoveDto::Slide {
                handle,
                over,
                sign,
                conjugator,
            } => {
                let conjugator = word_from_pairs(conjugator, &self.names)?;
                let link = self.require_link(step, "slide")?;
                self.link = Some(
                    link.handle_slide(*handle, *over, *sign, &conjugator)
                        .map_err(move_err)?,
                );
                self.sync_presentation_from_link()
            }
            MoveDto::Swap { circle } => {
                let link = self.require_link(step, "swap")?;
                let dots = link.dot_positions();
                let di = dots.iter().position(|&p| p == *circle).ok_or_else(|| {
                    CliError::invalid_move(step, format!("circle {circle} is not dotted"))
                })?;
                self.link = Some(link.dot_surgery_swap(*circle).map_err(move_err)?);
                self.names.remove(di);
                self.sync_presentation_from_link()
            }
            MoveDto::Stabilize => {
                let link = self.require_link(step, "stabilize")?;
                self.link = Some(link.stabilize());
                let name = self.fresh_name();
                self.names.push(name);
                self.sync_presentation_from_link()
            }
            MoveDto::Destabilize { dot, handle } => {
                let link = self.require_link(step, "destabilize")?;
                let dots = link.dot_positions();
                let di = dots.iter().position(|&p| p == *dot).ok_or_else(|| {
                    CliError::invalid_move(step, format!("circle {dot} is not dotted"))
                })?;
                self.link = Some(link.destabilize(*dot, *handle).map_err(move_err)?);
                self.names.remove(di);
                self.sync_presentation_from_link()
            }
            MoveDto::Blowup { sign } => {
                let link = self.require_link(step, "blowup")?;
                self.link = Some(link.blow_up(*sign).map_err(move_err)?);
                self.sync_presentation_from_link()
            }
            MoveDto::Blowdown { circle } => {
                let link = self.require_link(step, "blowdown")?;
                self.link = Some(link.blow_down(*circle).map_err(move_err)?);
                self.sync_presentation_from_link()
            }
            MoveDto::Tietze { tietze } => self.apply_tietze(step, tietze),
        }
    }

    fn apply_tietze(&mut self, step: usize, mv: &TietzeDto) -> Result<(), CliError> {
        let move_err = |e: cacime_core::Error| CliError::invalid_move(step, e.to_string());
        // build the presentation-level move first; it validates indices
        let core_move = match mv {
            TietzeDto::Multiply {
                target,
                source,
                invert,
                conjugator,
            } => TietzeMove::MultiplyRelator {
                target: *target,
                source: *source,
                invert_source: *invert,
                conjugator: word_from_pairs(conjugator, &self.names)?,
            },
            TietzeDto::Invert { target } => TietzeMove::InvertRelator { target: *target },
            TietzeDto::Conjugate { target, conjugator } => TietzeMove::ConjugateRelator {
                target: *target,
                conjugator: word_from_pairs(conjugator, &self.names)?,
            },
            TietzeDto::AddGenerator { name, word } => TietzeMove::AddGenerator {
                name: Some(name.clone().unwrap_or_else(|| self.fresh_name())),
                word: word_from_pairs(word, &self.names)?,
            },
            TietzeDto::RemoveGenerator { generator } => {
                let g = self
                    .names
                    .iter()
                    .position(|n| n == generator)
                    .ok_or_else(|| {
                        CliError::invalid_move(step, format!("unknown generator {generator:?}"))
                    })?;
                TietzeMove::RemoveGenerator { generator: g }
            }
        };
        let new_presentation = tietze_apply(&self.presentation, &core_move).map_err(move_err)?;

        // mirror onto the framed link so both layers stay in sync
        if let Some(link) = &self.link {
            let handles = link.handle_positions();
            let handle_of = |relator: usize| -> Result<usize, CliError> {
                handles.get(relator).copied().ok_or_else(|| {
                    CliError::invalid_move(step, format!("relator {relator} out of range"))
                })
            };
            let mirrored = match &core_move {
                TietzeMove::MultiplyRelator {
                    target,
                    source,
                    invert_source,
                    conjugator,
                } => link
                    .handle_slide(
                        handle_of(*target)?,
                        handle_of(*source)?,
                        if *invert_source { -1 } else { 1 },
                        conjugator,
                    )
                    .map_err(move_err)?,
                TietzeMove::InvertRelator { target } => {
                    link.reverse_handle(handle_of(*target)?).map_err(move_err)?
                }
                TietzeMove::ConjugateRelator { target, conjugator } => link
                    .conjugate_handle(handle_of(*target)?, conjugator)
                    .map_err(move_err)?,
                TietzeMove::AddGenerator { word, .. } => {
                    link.add_carving_pair(word).map_err(move_err)?
                }
                TietzeMove::RemoveGenerator { generator } => {
                    let dot_circle = link.dot_positions()[*generator];
                    let defining = link
                        .handle_positions()
                        .into_iter()
                        .find(|&h| link.circles()[h].word.mentions(*generator))
                        .ok_or_else(|| {
                            CliError::invalid_move(
                                step,
                                format!("no 2-handle defines generator {generator}"),
                            )
                        })?;
                    link.remove_carving_pair(dot_circle, defining)
                        .map_err(move_err)?
                }
            };
            self.link = Some(mirrored);
        }

        match &core_move {
            TietzeMove::AddGenerator { name, .. } => {
                self.names.push(name.clone().expect("name was filled in"));
            }
            TietzeMove::RemoveGenerator { generator } => {
                self.names.remove(*generator);
            }
            _ => {}
        }
        self.presentation = new_presentation;

        // when a link is present the two layers must agree exactly
        if let Some(link) = &self.link {
            let derived = link.to_presentation(&self.names)?;
            if derived != self.presentation {
                return Err(CliError::check_failure(format!(
                    "step {step}: link and presentation layers diverged (engine bug)"
                )));
            }
        }
        Ok(())
    }
}

/// Applies a whole script, optionally re-verifying move contracts per step.
pub fn run_script(
    file: &ManifoldFile,
    script: &MoveScript,
    check: bool,
) -> Result<ManifoldFile, CliError> {
    let mut state = ManifoldState::from_file(file)?;
    for (step, mv) in script.moves.iter().enumerate() {
        let before = if check {
            Some(state.invariants()?)
        } else {
            None
        };
        let blow_down_sign = match mv {
            MoveDto::Blowdown { circle } => state
                .link
                .as_ref()
                .and_then(|l| l.circles().get(*circle).map(|_| l.framing(*circle).clone()))
                .map(|f| {
                    if f > num_bigint::BigInt::from(0) {
                        1i64
                    } else {
                        -1
                    }
                }),
            _ => None,
        };
        state.apply(step, mv)?;
        if let Some(before) = before {
            verify_contract(step, mv, &before, &state.invariants()?, blow_down_sign)?;
        }
    }
    state.into_file()
}

fn verify_contract(
    step: usize,
    mv: &MoveDto,
    before: &Invariants,
    after: &Invariants,
    blow_down_sign: Option<i64>,
) -> Result<(), CliError> {
    let fail = |what: &str| {
        Err(CliError::check_failure(format!(
            "step {step}: {what} not preserved as the move contract requires (engine bug)"
        )))
    };
    let boundary_preserved = before.boundary == after.boundary;
    match mv {
        MoveDto::Slide { .. } => {
            if before.chi != after.chi {
                return fail("Euler characteristic");
            }
            if before.h1 != after.h1 {
                return fail("H1");
            }
            if !boundary_preserved {
                return fail("boundary H1");
            }
            if before.sigma != after.sigma {
                return fail("signature");
            }
        }
        MoveDto::Swap { .. } => {
            if !boundary_preserved {
                return fail("boundary H1");
            }
        }
        MoveDto::Stabilize | MoveDto::Destabilize { .. } => {
            if before.chi != after.chi {
                return fail("Euler characteristic");
            }
            if before.h1 != after.h1 {
                return fail("H1");
            }
            if !boundary_preserved {
                return fail("boundary H1");
            }
            if before.sigma != after.sigma {
                return fail("signature");
            }
        }
        MoveDto::Blowup { sign } => {
            if after.chi != before.chi + 1 {
                return fail("Euler characteristic shift");
            }
            if before.h1 != after.h1 {
                return fail("H1");
            }
            if !boundary_preserved {
                return fail("boundary H1");
            }
            if let (Some(b), Some(a)) = (before.sigma, after.sigma) {
                if a != b + i64::from(*sign) {
                    return fail("signature shift");
                }
            }
        }
        MoveDto::Blowdown { .. } => {
            if after.chi != before.chi - 1 {
                return fail("Euler characteristic shift");
            }
            if before.h1 != after.h1 {
                return fail("H1");
            }
            if !boundary_preserved {
                return fail("boundary H1");
            }
            if let (Some(b), Some(a), Some(s)) = (before.sigma, after.sigma, blow_down_sign) {
                if a != b - s {
                    return fail("signature shift");
                }
            }
        }
        MoveDto::Tietze { .. } => {
            if before.chi != after.chi {
                return fail("Euler characteristic");
            }
            if before.h1 != after.h1 {
                return fail("H1");
            }
            if !boundary_preserved {
                return fail("boundary H1");
            }
            if before.sigma != after.sigma {
                return fail("signature");
            }
        }
    }
    Ok(())
}
