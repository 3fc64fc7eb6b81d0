//! On-disk formats: the manifold file and its conversions.
//!
//! A manifold file is a single JSON document with an explicit
//! `format_version`, the handlebody (generator names, relator words, handle
//! counts), an optional framed link, and a provenance record naming the
//! builder and its parameters. Words are serialized as arrays of
//! `[generator-name, exponent]` pairs (run-length form); linking matrices as
//! row arrays. Serialization is deterministic, so re-serializing a parsed
//! file reproduces it byte for byte.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use cacime_core::{Circle, FramedLink, HandleBody4, IntMatrix, Presentation, Word};

use crate::CliError;

pub const FORMAT_VERSION: u32 = 1;

pub type WordDto = Vec<(String, i64)>;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ManifoldFile {
    pub format_version: u32,
    pub provenance: ProvenanceDto,
    pub handlebody: HandleBodyDto,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub framed_link: Option<FramedLinkDto>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProvenanceDto {
    pub builder: String,
    pub params: Value,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HandleBodyDto {
    pub generators: Vec<String>,
    pub relators: Vec<WordDto>,
    pub n3: usize,
    pub n4: usize,
    pub closed: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FramedLinkDto {
    pub circles: Vec<CircleDto>,
    pub linking: Vec<Vec<i64>>,
    pub algebraic_only: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CircleDto {
    pub dotted: bool,
    pub word: WordDto,
    pub framing: i64,
}

pub fn word_to_pairs(w: &Word, names: &[String]) -> WordDto {
    let mut out: WordDto = Vec::new();
    for l in w.letters() {
        let name = &names[l.gen];
        match out.last_mut() {
            Some((last, exp)) if last == name && (*exp > 0) == (l.exp > 0) => {
                *exp += i64::from(l.exp);
            }
            _ => out.push((name.clone(), i64::from(l.exp))),
        }
    }
    out
}

pub fn word_from_pairs(pairs: &WordDto, names: &[String]) -> Result<Word, CliError> {
    let mut indexed = Vec::with_capacity(pairs.len());
    let mut expanded_len: u64 = 0;
    for (name, exp) in pairs {
        let gen = names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| CliError::validation(format!("unknown generator name {name:?}")))?;
        expanded_len += exp.unsigned_abs();
        if expanded_len > 1_000_000 {
            return Err(CliError::validation(
                "word expands to more than 1e6 letters",
            ));
        }
        indexed.push((gen, *exp));
    }
    Word::from_pairs(&indexed).map_err(CliError::from)
}

pub fn manifold_to_file(
    provenance: ProvenanceDto,
    handlebody: &HandleBody4,
    link: Option<&FramedLink>,
) -> Result<ManifoldFile, CliError> {
    let names = handlebody.presentation().generator_names();
    let handlebody_dto = HandleBodyDto {
        generators: names.to_vec(),
        relators: handlebody
            .presentation()
            .relators()
            .iter()
            .map(|r| word_to_pairs(r, names))
            .collect(),
        n3: handlebody.n3(),
        n4: handlebody.n4(),
        closed: handlebody.is_closed(),
    };
    let framed_link = link.map(|l| link_to_dto(l, names)).transpose()?;
    Ok(ManifoldFile {
        format_version: FORMAT_VERSION,
        provenance,
        handlebody: handlebody_dto,
        framed_link,
    })
}

pub fn link_to_dto(link: &FramedLink, names: &[String]) -> Result<FramedLinkDto, CliError> {
    if names.len() != link.dot_count() {
        return Err(CliError::validation(format!(
            "framed link has {} dotted circles but {} generator names",
            link.dot_count(),
            names.len()
        )));
    }
    let circles = link
        .circles()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            Ok(CircleDto {
                dotted: c.dotted,
                word: word_to_pairs(&c.word, names),
                framing: big_to_i64(link.framing(i))?,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let n = link.circles().len();
    let mut linking = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            row.push(big_to_i64(link.linking().get(i, j))?);
        }
        linking.push(row);
    }
    Ok(FramedLinkDto {
        circles,
        linking,
        algebraic_only: link.is_algebraic_only(),
    })
}

fn big_to_i64(v: &BigInt) -> Result<i64, CliError> {
    i64::try_from(v).map_err(|_| {
        CliError::validation(format!("integer {v} does not fit the 64-bit file format"))
    })
}

impl ManifoldFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let file: ManifoldFile = serde_json::from_str(text)
            .map_err(|e| CliError::validation(format!("manifold file: {e}")))?;
        if file.format_version != FORMAT_VERSION {
            return Err(CliError::validation(format!(
                "unsupported format_version {} (this build reads {FORMAT_VERSION})",
                file.format_version
            )));
        }
        Ok(file)
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("manifold file serializes");
        text.push('\n');
        text
    }

    pub fn handlebody(&self) -> Result<HandleBody4, CliError> {
        let names = &self.handlebody.generators;
        for (i, name) in names.iter().enumerate() {
            if names[..i].contains(name) {
                return Err(CliError::validation(format!(
                    "duplicate generator name {name:?}"
                )));
            }
        }
        let relators = self
            .handlebody
            .relators
            .iter()
            .map(|r| word_from_pairs(r, names))
            .collect::<Result<Vec<_>, CliError>>()?;
        let presentation = Presentation::new(names.clone(), relators)?;
        HandleBody4::new(
            presentation,
            self.handlebody.n3,
            self.handlebody.n4,
            self.handlebody.closed,
        )
        .map_err(CliError::from)
    }

    pub fn framed_link(&self) -> Result<Option<FramedLink>, CliError> {
        let Some(dto) = &self.framed_link else {
            return Ok(None);
        };
        let names = &self.handlebody.generators;
        let dot_count = dto.circles.iter().filter(|c| c.dotted).count();
        if dot_count != names.len() {
            return Err(CliError::validation(format!(
                "framed link has {dot_count} dotted circles but the handlebody has {} generators",
                names.len()
            )));
        }
        let circles = dto
            .circles
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let word = word_from_pairs(&c.word, names)?;
                if c.dotted && !word.is_empty() {
                    return Err(CliError::validation(format!(
                        "dotted circle {i} must carry an empty word"
                    )));
                }
                Ok(if c.dotted {
                    Circle::dot()
                } else {
                    Circle::handle(word)
                })
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        let n = dto.circles.len();
        if dto.linking.len() != n || dto.linking.iter().any(|row| row.len() != n) {
            return Err(CliError::validation(format!(
                "linking matrix must be {n}x{n}"
            )));
        }
        let linking = IntMatrix::from_fn(n, n, |i, j| BigInt::from(dto.linking[i][j]));
        for (i, c) in dto.circles.iter().enumerate() {
            if BigInt::from(c.framing) != *linking.get(i, i) {
                return Err(CliError::validation(format!(
                    "circle {i}: framing {} disagrees with linking diagonal {}",
                    c.framing,
                    linking.get(i, i)
                )));
            }
        }
        let link = FramedLink::new(circles, linking, dto.algebraic_only)?;
        Ok(Some(link))
    }
}
