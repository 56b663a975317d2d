use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{Origin, PartitionBlock, RingPartition, SeedPair};
use crate::galois_ring::{BasicPoly, RingContext, RingElement};
use crate::{Error, Result};

/// On-disk partition: JSON with fields in exactly this order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionFile {
    pub delta: u32,
    /// Coefficients of `h(x)`, constant term first.
    pub poly: Vec<u8>,
    /// Exponents `i` of the triples `{xi^i, 2xi^i, 3xi^i}`.
    pub triples: Vec<u32>,
    pub seeds: Vec<SeedRecord>,
    /// Every block as coefficient lists, triples first.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub blocks: Option<Vec<Vec<Vec<u8>>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedRecord {
    #[serde(rename = "A")]
    pub a: Vec<u8>,
    #[serde(rename = "B")]
    pub b: Vec<u8>,
    pub origin: Origin,
}

impl RingPartition {
    pub fn to_file(&self, with_blocks: bool) -> PartitionFile {
        let delta = self.delta();
        let blocks = with_blocks.then(|| {
            self.blocks()
                .map(|b| self.block_elements(b).iter().map(|e| e.coeffs(delta)).collect())
                .collect()
        });
        PartitionFile {
            delta,
            poly: self.ctx().poly().coeffs().to_vec(),
            triples: self.triples().to_vec(),
            seeds: self
                .seeds()
                .iter()
                .map(|s| SeedRecord { a: s.a.coeffs(delta), b: s.b.coeffs(delta), origin: s.origin.clone() })
                .collect(),
            blocks,
        }
    }

    pub fn to_json(&self, with_blocks: bool) -> Result<String> {
        let mut s = serde_json::to_string_pretty(&self.to_file(with_blocks))?;
        s.push('\n');
        Ok(s)
    }
}

impl PartitionFile {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Rebuilds the ring from `poly` and the partition from the seeds, without validating
    /// the partition itself. Explicit `blocks`, when present, must match the seeds.
    pub fn into_partition(self, cap: u32) -> Result<RingPartition> {
        crate::galois_ring::lift_basic_primitive_capped(self.delta, cap)?;
        let poly = BasicPoly::new(self.poly.clone())?;
        if poly.delta() != self.delta {
            return Err(Error::Parse(format!("poly has degree {}, delta is {}", poly.delta(), self.delta)));
        }
        let ctx = Arc::new(RingContext::from_poly(poly)?);
        let seeds = self
            .seeds
            .iter()
            .map(|r| {
                Ok(SeedPair {
                    a: RingElement::from_coeffs(self.delta, &r.a)?,
                    b: RingElement::from_coeffs(self.delta, &r.b)?,
                    origin: r.origin.clone(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let partition = RingPartition::from_parts(ctx, self.triples, seeds);
        if let Some(blocks) = self.blocks {
            if blocks.len() != partition.num_blocks() {
                return Err(Error::Invariant(format!(
                    "file lists {} blocks, seeds generate {}",
                    blocks.len(),
                    partition.num_blocks()
                )));
            }
            for (id, listed) in blocks.iter().enumerate() {
                let block: PartitionBlock = partition.block(id).expect("id below num_blocks");
                let expected = partition.block_elements(block);
                let matches = listed.len() == expected.len()
                    && listed.iter().zip(&expected).all(|(c, e)| c.as_slice() == e.coeffs(self.delta));
                if !matches {
                    return Err(Error::Invariant(format!("listed block {id} differs from its seed expansion")));
                }
            }
        }
        Ok(partition)
    }
}
