//! Textual channel specifications, shared by the command line and the
//! foreign-function bindings.
//!
//! Grammar: `bsc:EPS`, `bec:Q`, `bab:A,B`, `mixture:C@W+C@W+...`,
//! `matrix:P,P,..|P,P,..`, or a JSON mixture object (`{"parts":[...]}`).
//! Every number is an exact fraction; decimals are rejected.

use crate::channel::{BscMixture, BscMixtureJson, TransitionMatrix};
use crate::codec::ChannelSimulator;
use crate::error::{Error, Result};
use crate::rational::parse_rational;

/// Parsed channel argument. Matrix-backed kinds keep their explicit table so
/// simulation can sample the physical channel exactly as specified.
pub enum ChannelSpec {
    Mixture(BscMixture),
    Matrix(TransitionMatrix),
}

impl ChannelSpec {
    pub fn parse(spec: &str) -> Result<ChannelSpec> {
        let spec = spec.trim();
        if spec.starts_with('{') {
            let json: BscMixtureJson = serde_json::from_str(spec)
                .map_err(|e| Error::Parse(format!("invalid mixture JSON: {e}")))?;
            return Ok(ChannelSpec::Mixture(BscMixture::from_json(&json)?));
        }
        let (kind, rest) = spec
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("channel spec {spec:?} needs kind:params")))?;
        match kind {
            "bsc" => Ok(ChannelSpec::Mixture(BscMixture::bsc(&parse_rational(rest)?)?)),
            "bec" => Ok(ChannelSpec::Mixture(BscMixture::bec(&parse_rational(rest)?)?)),
            "bab" => {
                let (a, b) = rest
                    .split_once(',')
                    .ok_or_else(|| Error::Parse("bab needs two parameters a,b".into()))?;
                Ok(ChannelSpec::Matrix(TransitionMatrix::b_ab(
                    &parse_rational(a)?,
                    &parse_rational(b)?,
                )?))
            }
            "mixture" => {
                let parts = rest
                    .split('+')
                    .map(|part| {
                        let (c, w) = part.split_once('@').ok_or_else(|| {
                            Error::Parse(format!("mixture part {part:?} needs crossover@weight"))
                        })?;
                        Ok((parse_rational(c)?, parse_rational(w)?))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(ChannelSpec::Mixture(BscMixture::from_parts(parts)?))
            }
            "matrix" => {
                let rows: Vec<Vec<_>> = rest
                    .split('|')
                    .map(|row| row.split(',').map(parse_rational).collect::<Result<Vec<_>>>())
                    .collect::<Result<_>>()?;
                let [r0, r1]: [Vec<_>; 2] = rows.try_into().map_err(|_| {
                    Error::Parse("matrix needs exactly two |-separated rows".into())
                })?;
                Ok(ChannelSpec::Matrix(TransitionMatrix::from_rows([r0, r1])?))
            }
            other => Err(Error::Parse(format!("unknown channel kind {other:?}"))),
        }
    }

    /// Canonical switch form; matrix-backed channels must be symmetric.
    pub fn mixture(&self) -> Result<BscMixture> {
        match self {
            ChannelSpec::Mixture(m) => Ok(m.clone()),
            ChannelSpec::Matrix(t) => BscMixture::from_lrp(&t.lrp()),
        }
    }

    pub fn simulator(&self) -> ChannelSimulator {
        match self {
            ChannelSpec::Mixture(m) => ChannelSimulator::from_mixture(m),
            ChannelSpec::Matrix(t) => ChannelSimulator::from_matrix(t),
        }
    }
}
