//! Framed links with dotted (carved) circles: the diagram-level layer.
//!
//! A link is an ordered list of circles, each either dotted (a 1-handle in
//! circle-with-dot notation) or a 2-handle carrying an attaching word and a
//! framing, together with the full symmetric linking matrix. Framings sit on
//! the diagonal; dotted circles always have framing 0. The two layers are
//! kept consistent: the linking number between a 2-handle and a dotted
//! circle equals the exponent sum of that generator in the attaching word,
//! and every move re-validates the invariant.
//!
//! Links built from a presentation alone carry `algebraic_only = true`:
//! their dot-dot and handle-handle entries are builder defaults, not
//! verified geometric data, so boundary homology, intersection form and
//! signature refuse them instead of silently using zeros.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::handlebody::HandleBody4;
use crate::matrix::IntMatrix;
use crate::presentation::Presentation;
use crate::snf::{smith_normal_form, AbelianInvariants};
use crate::word::{Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circle {
    pub dotted: bool,
    /// Attaching word over dotted-circle indices; empty for dotted circles.
    pub word: Word,
}

impl Circle {
    pub fn dot() -> Self {
        Circle {
            dotted: true,
            word: Word::identity(),
        }
    }

    pub fn handle(word: Word) -> Self {
        Circle {
            dotted: false,
            word,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FramedLink {
    circles: Vec<Circle>,
    linking: IntMatrix,
    algebraic_only: bool,
}

impl FramedLink {
    pub fn new(circles: Vec<Circle>, linking: IntMatrix, algebraic_only: bool) -> Result<Self> {
        let n = circles.len();
        if linking.rows() != n || linking.cols() != n {
            return Err(Error::Domain(format!(
                "linking matrix must be {n}x{n}, got {}x{}",
                linking.rows(),
                linking.cols()
            )));
        }
        if !linking.is_symmetric() {
            return Err(Error::Domain("linking matrix must be symmetric".into()));
        }
        let link = FramedLink {
            circles,
            linking,
            algebraic_only,
        };
        link.validate()?;
        Ok(link)
    }

    fn validate(&self) -> Result<()> {
        let dots = self.dot_positions();
        for (i, c) in self.circles.iter().enumerate() {
            if c.dotted {
                if !c.word.is_empty() {
                    return Err(Error::Domain(format!(
                        "dotted circle {i} must carry an empty word"
                    )));
                }
                if !self.linking.get(i, i).is_zero() {
                    return Err(Error::Domain(format!(
                        "dotted circle {i} must have framing 0"
                    )));
                }
            } else {
                if let Some(max) = c.word.max_generator() {
                    if max >= dots.len() {
                        return Err(Error::Domain(format!(
                            "word of circle {i} mentions dotted circle {max}, only {} exist",
                            dots.len()
                        )));
                    }
                }
                for (dj, &pj) in dots.iter().enumerate() {
                    let expected = BigInt::from(c.word.exponent_sum(dj));
                    if self.linking.get(i, pj) != &expected {
                        return Err(Error::Domain(format!(
                            "linking[{i}][{pj}] = {} disagrees with exponent sum {} of \
                             dotted circle {dj} in the attaching word",
                            self.linking.get(i, pj),
                            expected
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Companion link for a bare presentation: one dotted circle per
    /// generator, one 0-framed 2-handle per relator, exponent-sum linking
    /// with dotted circles and default zeros elsewhere. Marked
    /// `algebraic_only`, since the defaults are not geometric data.
    pub fn algebraic_companion(p: &Presentation) -> FramedLink {
        Self::from_presentation(p, true)
    }

    /// Same layout as `algebraic_companion`, but asserted to be geometrically
    /// faithful (all true linking numbers really are zero). Only correct for
    /// diagrams like `Σ_g × D²`, where every circle can be drawn unlinked.
    pub fn verified_zero_linking(p: &Presentation) -> FramedLink {
        Self::from_presentation(p, false)
    }

    fn from_presentation(p: &Presentation, algebraic_only: bool) -> FramedLink {
        let g = p.generator_count();
        let r = p.relators().len();
        let mut circles = Vec::with_capacity(g + r);
        for _ in 0..g {
            circles.push(Circle::dot());
        }
        for rel in p.relators() {
            circles.push(Circle::handle(rel.clone()));
        }
        let linking = IntMatrix::from_fn(g + r, g + r, |i, j| {
            if i >= g && j < g {
                BigInt::from(p.relators()[i - g].exponent_sum(j))
            } else if j >= g && i < g {
                BigInt::from(p.relators()[j - g].exponent_sum(i))
            } else {
                BigInt::zero()
            }
        });
        FramedLink::new(circles, linking, algebraic_only).expect("companion link is consistent")
    }

    pub fn circles(&self) -> &[Circle] {
        &self.circles
    }

    pub fn linking(&self) -> &IntMatrix {
        &self.linking
    }

    pub fn is_algebraic_only(&self) -> bool {
        self.algebraic_only
    }

    pub fn framing(&self, i: usize) -> &BigInt {
        self.linking.get(i, i)
    }

    /// Circle positions of the dotted circles, in order; a word letter `g`
    /// refers to the circle at `dot_positions()[g]`.
    pub fn dot_positions(&self) -> Vec<usize> {
        (0..self.circles.len())
            .filter(|&i| self.circles[i].dotted)
            .collect()
    }

    pub fn handle_positions(&self) -> Vec<usize> {
        (0..self.circles.len())
            .filter(|&i| !self.circles[i].dotted)
            .collect()
    }

    pub fn dot_count(&self) -> usize {
        self.circles.iter().filter(|c| c.dotted).count()
    }

    /// Dot-order index of circle `i`, which must be dotted.
    fn dot_index(&self, i: usize) -> Result<usize> {
        if !self.circles.get(i).is_some_and(|c| c.dotted) {
            return Err(Error::InvalidMove(format!("circle {i} is not dotted")));
        }
        Ok(self.circles[..i].iter().filter(|c| c.dotted).count())
    }

    fn check_handle(&self, i: usize) -> Result<()> {
        match self.circles.get(i) {
            None => Err(Error::InvalidMove(format!(
                "circle index {i} out of range ({} circles)",
                self.circles.len()
            ))),
            Some(c) if c.dotted => Err(Error::InvalidMove(format!(
                "circle {i} is dotted, need a 2-handle"
            ))),
            Some(_) => Ok(()),
        }
    }

    /// The underlying presentation: one generator per dotted circle, one
    /// relator per 2-handle, in circle order.
    pub fn to_presentation(&self, names: &[String]) -> Result<Presentation> {
        if names.len() != self.dot_count() {
            return Err(Error::InvalidPresentation(format!(
                "need {} generator names, got {}",
                self.dot_count(),
                names.len()
            )));
        }
        Presentation::new(
            names.to_vec(),
            self.handle_positions()
                .iter()
                .map(|&i| self.circles[i].word.clone())
                .collect(),
        )
    }

    /// Wraps the link's presentation into a handlebody with the given 3-/4-
    /// handle counts.
    pub fn to_handlebody(
        &self,
        names: &[String],
        n3: usize,
        n4: usize,
        closed: bool,
    ) -> Result<HandleBody4> {
        HandleBody4::new(self.to_presentation(names)?, n3, n4, closed)
    }

    // ------------------------------------------------------------------
    // moves
    // ------------------------------------------------------------------

    /// Slides 2-handle `i` over 2-handle `j`: the attaching word picks up a
    /// conjugate of `word_j^sign`, and the linking matrix transforms by the
    /// corresponding unimodular congruence, so the boundary 3-manifold, the
    /// signature and the cokernel class are all unchanged.
    pub fn handle_slide(
        &self,
        i: usize,
        j: usize,
        sign: i8,
        conjugator: &Word,
    ) -> Result<FramedLink> {
        if sign != 1 && sign != -1 {
            return Err(Error::InvalidMove(format!(
                "slide sign must be ±1, got {sign}"
            )));
        }
        self.check_handle(i)?;
        self.check_handle(j)?;
        if i == j {
            return Err(Error::InvalidMove(
                "cannot slide a handle over itself".into(),
            ));
        }
        if let Some(max) = conjugator.max_generator() {
            if max >= self.dot_count() {
                return Err(Error::InvalidMove(format!(
                    "conjugator mentions dotted circle {max}, out of range"
                )));
            }
        }
        let mut circles = self.circles.clone();
        let over = if sign == 1 {
            circles[j].word.clone()
        } else {
            circles[j].word.inverse()
        };
        circles[i].word = circles[i].word.concat(&over.conjugated_by(conjugator));

        let s = BigInt::from(sign);
        let mut linking = self.linking.clone();
        linking.add_row_multiple(i, j, &s);
        linking.add_col_multiple(i, j, &s);

        FramedLink::new(circles, linking, self.algebraic_only)
    }

    /// Trades the dot on circle `i` for a 0-framing: surgery that keeps the
    /// boundary 3-manifold while generally changing the 4-manifold. The
    /// generator dies, so its letters are deleted from the other attaching
    /// words; the new 2-handle receives the canonical word realizing its
    /// linking numbers with the remaining dotted circles (empty whenever
    /// those linkings vanish, as in all the standard pictures).
    pub fn dot_surgery_swap(&self, i: usize) -> Result<FramedLink> {
        if self.algebraic_only {
            return Err(Error::AlgebraicOnly(
                "dot surgery needs true linking data; this link only carries \
                 builder defaults"
                    .into(),
            ));
        }
        let di = self.dot_index(i)?;
        let dots = self.dot_positions();

        let mut word_pairs: Vec<(usize, i64)> = Vec::new();
        let mut new_dj = 0usize;
        for (dj, &pj) in dots.iter().enumerate() {
            if dj == di {
                continue;
            }
            let lk = self.linking.get(i, pj);
            if !lk.is_zero() {
                let exp = i64::try_from(lk).map_err(|_| {
                    Error::Domain(format!(
                        "linking number {lk} too large to realize as a word"
                    ))
                })?;
                word_pairs.push((new_dj, exp));
            }
            new_dj += 1;
        }
        let swapped_word = Word::from_pairs(&word_pairs)?;

        let circles: Vec<Circle> = self
            .circles
            .iter()
            .enumerate()
            .map(|(k, c)| {
                if k == i {
                    Circle::handle(swapped_word.clone())
                } else if c.dotted {
                    c.clone()
                } else {
                    Circle::handle(c.word.delete_generator(di))
                }
            })
            .collect();

        FramedLink::new(circles, self.linking.clone(), self.algebraic_only)
    }

    /// Appends a cancelling pair: a fresh dotted circle and a 0-framed
    /// 2-handle running over it once. χ, H1 and the boundary are unchanged.
    pub fn stabilize(&self) -> FramedLink {
        let n = self.circles.len();
        let new_gen = self.dot_count();
        let mut circles = self.circles.clone();
        circles.push(Circle::dot());
        circles.push(Circle::handle(Word::generator(new_gen)));
        let linking = IntMatrix::from_fn(n + 2, n + 2, |i, j| {
            if i < n && j < n {
                self.linking.get(i, j).clone()
            } else if (i, j) == (n, n + 1) || (i, j) == (n + 1, n) {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        });
        FramedLink::new(circles, linking, self.algebraic_only)
            .expect("stabilization preserves consistency")
    }

    /// Cancels dotted circle `i` against 2-handle `j`. The pattern is
    /// strict: `word_j` is the single letter of dot `i`, the pair links once,
    /// and neither circle links anything else (framing of `j` included).
    pub fn destabilize(&self, i: usize, j: usize) -> Result<FramedLink> {
        let di = self.dot_index(i)?;
        self.check_handle(j)?;
        let wj = &self.circles[j].word;
        let single = match wj.letters() {
            [l] if l.gen == di => *l,
            _ => {
                return Err(Error::InvalidMove(format!(
                    "circle {j} must run exactly once over dotted circle {i}"
                )))
            }
        };
        if self.linking.get(i, j) != &BigInt::from(single.exp) {
            return Err(Error::InvalidMove(
                "linking of the cancelling pair must match the word".into(),
            ));
        }
        for k in 0..self.circles.len() {
            if k != i && k != j && !self.linking.get(i, k).is_zero() {
                return Err(Error::InvalidMove(format!(
                    "dotted circle {i} still links circle {k}"
                )));
            }
            if k != i && k != j && !self.linking.get(j, k).is_zero() {
                return Err(Error::InvalidMove(format!(
                    "2-handle {j} still links circle {k}"
                )));
            }
        }
        if !self.linking.get(j, j).is_zero() {
            return Err(Error::InvalidMove(format!(
                "cancelling 2-handle {j} must be 0-framed"
            )));
        }

        let circles: Vec<Circle> = self
            .circles
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i && k != j)
            .map(|(_, c)| {
                if c.dotted {
                    c.clone()
                } else {
                    Circle::handle(c.word.delete_generator(di))
                }
            })
            .collect();
        let linking = self.linking.delete_rows_cols(&[i, j], &[i, j]);
        FramedLink::new(circles, linking, self.algebraic_only)
    }

    /// Connect-sums with an unlinked ±1-framed unknot. Signature moves by
    /// `sign`, the rank of the intersection form by one, and the boundary is
    /// untouched.
    pub fn blow_up(&self, sign: i8) -> Result<FramedLink> {
        if sign != 1 && sign != -1 {
            return Err(Error::InvalidMove(format!(
                "blow-up sign must be ±1, got {sign}"
            )));
        }
        let n = self.circles.len();
        let mut circles = self.circles.clone();
        circles.push(Circle::handle(Word::identity()));
        let linking = IntMatrix::from_fn(n + 1, n + 1, |i, j| {
            if i < n && j < n {
                self.linking.get(i, j).clone()
            } else if i == n && j == n {
                BigInt::from(sign)
            } else {
                BigInt::zero()
            }
        });
        FramedLink::new(circles, linking, self.algebraic_only)
    }

    /// Deletes a ±1-framed unknotted 2-handle split off from the rest.
    pub fn blow_down(&self, i: usize) -> Result<FramedLink> {
        self.check_handle(i)?;
        if !self.circles[i].word.is_empty() {
            return Err(Error::InvalidMove(format!(
                "circle {i} runs over dotted circles; cannot blow down"
            )));
        }
        if self.framing(i).abs() != BigInt::one() {
            return Err(Error::InvalidMove(format!(
                "blow-down needs framing ±1, circle {i} has {}",
                self.framing(i)
            )));
        }
        if (0..self.circles.len()).any(|k| k != i && !self.linking.get(i, k).is_zero()) {
            return Err(Error::InvalidMove(format!(
                "circle {i} links other circles; cannot blow down"
            )));
        }
        let circles: Vec<Circle> = self
            .circles
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i)
            .map(|(_, c)| c.clone())
            .collect();
        let linking = self.linking.delete_rows_cols(&[i], &[i]);
        FramedLink::new(circles, linking, self.algebraic_only)
    }

    /// Reverses the orientation of 2-handle `i` (attaching word inverted,
    /// linking row and column negated; the framing survives both
    /// negations). Diagram-level shadow of inverting a relator.
    pub fn reverse_handle(&self, i: usize) -> Result<FramedLink> {
        self.check_handle(i)?;
        let mut circles = self.circles.clone();
        circles[i].word = circles[i].word.inverse();
        let mut linking = self.linking.clone();
        linking.negate_row(i);
        linking.negate_col(i);
        FramedLink::new(circles, linking, self.algebraic_only)
    }

    /// Rewrites the attaching word of 2-handle `i` by a conjugation: an
    /// isotopy of the attaching circle, so no linking number changes.
    pub fn conjugate_handle(&self, i: usize, conjugator: &Word) -> Result<FramedLink> {
        self.check_handle(i)?;
        if let Some(max) = conjugator.max_generator() {
            if max >= self.dot_count() {
                return Err(Error::InvalidMove(format!(
                    "conjugator mentions dotted circle {max}, out of range"
                )));
            }
        }
        let mut circles = self.circles.clone();
        circles[i].word = circles[i].word.conjugated_by(conjugator);
        FramedLink::new(circles, self.linking.clone(), self.algebraic_only)
    }

    /// Adds a carving pair: a fresh dotted circle `g` together with a
    /// 0-framed 2-handle attached along `g·w⁻¹`, drawn clear of everything
    /// else. This is the diagram shadow of introducing a defined generator;
    /// the boundary and all handlebody invariants are unchanged.
    pub fn add_carving_pair(&self, w: &Word) -> Result<FramedLink> {
        if let Some(max) = w.max_generator() {
            if max >= self.dot_count() {
                return Err(Error::InvalidMove(format!(
                    "defining word mentions dotted circle {max}, out of range"
                )));
            }
        }
        let n = self.circles.len();
        let new_gen = self.dot_count();
        let defining = Word::generator(new_gen).concat(&w.inverse());

        let dots = self.dot_positions();
        let mut circles = self.circles.clone();
        circles.push(Circle::dot());
        circles.push(Circle::handle(defining.clone()));
        let linking = IntMatrix::from_fn(n + 2, n + 2, |i, j| {
            if i < n && j < n {
                self.linking.get(i, j).clone()
            } else if (i, j) == (n, n + 1) || (i, j) == (n + 1, n) {
                BigInt::one()
            } else if i == n + 1 && j < n {
                match dots.iter().position(|&p| p == j) {
                    Some(dj) => BigInt::from(defining.exponent_sum(dj)),
                    None => BigInt::zero(),
                }
            } else if j == n + 1 && i < n {
                match dots.iter().position(|&p| p == i) {
                    Some(di) => BigInt::from(defining.exponent_sum(di)),
                    None => BigInt::zero(),
                }
            } else {
                BigInt::zero()
            }
        });
        FramedLink::new(circles, linking, self.algebraic_only)
    }

    /// Removes a carving pair added by `add_carving_pair`: dotted circle `i`
    /// must appear in exactly the word of 2-handle `j`, leading and positive,
    /// and the pair must be drawn clear of everything else.
    pub fn remove_carving_pair(&self, i: usize, j: usize) -> Result<FramedLink> {
        let di = self.dot_index(i)?;
        self.check_handle(j)?;
        let wj = &self.circles[j].word;
        let leading = wj.letters().first() == Some(&Letter { gen: di, exp: 1 })
            && wj.letters()[1..].iter().all(|l| l.gen != di);
        if !leading {
            return Err(Error::InvalidMove(format!(
                "word of circle {j} is not of the defining form for dotted circle {i}"
            )));
        }
        for (k, c) in self.circles.iter().enumerate() {
            if k != j && !c.dotted && c.word.mentions(di) {
                return Err(Error::InvalidMove(format!(
                    "dotted circle {i} also occurs in the word of circle {k}"
                )));
            }
            if k != i && k != j && !self.linking.get(i, k).is_zero() {
                return Err(Error::InvalidMove(format!(
                    "dotted circle {i} links circle {k}"
                )));
            }
        }
        // handle j may link other dots through w, but must be split from
        // the other 2-handles
        for k in self.handle_positions() {
            if k != j && !self.linking.get(j, k).is_zero() {
                return Err(Error::InvalidMove(format!(
                    "2-handle {j} links 2-handle {k}; pair is not split"
                )));
            }
        }
        if !self.linking.get(j, j).is_zero() {
            return Err(Error::InvalidMove(format!(
                "defining 2-handle {j} must be 0-framed"
            )));
        }

        let circles: Vec<Circle> = self
            .circles
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i && k != j)
            .map(|(_, c)| {
                if c.dotted {
                    c.clone()
                } else {
                    Circle::handle(c.word.delete_generator(di))
                }
            })
            .collect();
        let linking = self.linking.delete_rows_cols(&[i, j], &[i, j]);
        FramedLink::new(circles, linking, self.algebraic_only)
    }

    // ------------------------------------------------------------------
    // invariants
    // ------------------------------------------------------------------

    /// H1 of the boundary 3-manifold: the cokernel of the full linking
    /// matrix, dotted circles counted as 0-framed (dot/surgery duality).
    pub fn h1_boundary(&self) -> Result<AbelianInvariants> {
        if self.algebraic_only {
            return Err(Error::AlgebraicOnly(
                "boundary homology needs the true linking matrix; this link \
                 carries builder-default zeros for dot-dot and handle-handle \
                 linkings"
                    .into(),
            ));
        }
        Ok(AbelianInvariants::of_quotient(&self.linking))
    }

    /// The intersection form: the 2-handle block of the linking matrix
    /// restricted to the kernel of the exponent-sum boundary map, in the
    /// deterministic kernel basis supplied by Smith normal form.
    pub fn intersection_form(&self) -> Result<IntMatrix> {
        if self.algebraic_only {
            return Err(Error::AlgebraicOnly(
                "intersection form needs the true linking matrix; this link \
                 carries builder-default zeros"
                    .into(),
            ));
        }
        let dots = self.dot_positions();
        let handles = self.handle_positions();
        // boundary map: rows = dotted circles, cols = 2-handles
        let boundary = self.linking.select(&dots, &handles);
        let snf = smith_normal_form(&boundary);
        let rank = snf.rank();
        let kernel_cols: Vec<usize> = (rank..handles.len()).collect();
        let all_rows: Vec<usize> = (0..handles.len()).collect();
        let basis = snf.v.select(&all_rows, &kernel_cols);
        let handle_block = self.linking.select(&handles, &handles);
        Ok(basis.transpose().mul(&handle_block).mul(&basis))
    }

    pub fn signature(&self) -> Result<i64> {
        crate::signature::signature(&self.intersection_form()?)
    }
}
