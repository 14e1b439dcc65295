//! Persisted passport and Galois-orbit rows.

use std::collections::BTreeMap;

use belyi_core::pointed::{descent_witness, pointed_classes, pointed_classes_of, witness_for_size, PointedPassport};
use belyi_core::{Branch, Partition, Passport, PermutationTriple};
use serde::{Deserialize, Serialize};

use crate::error::{DbError, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupRecord {
    pub id: u32,
    pub order: u64,
    pub signature_hash: String,
    pub transitive: bool,
    pub even: bool,
    /// Name given by an external source, stored verbatim.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub external_label: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PointedRecord {
    pub s: Branch,
    pub e: usize,
    pub a: usize,
    pub size: usize,
}

impl From<&PointedPassport> for PointedRecord {
    fn from(pp: &PointedPassport) -> Self {
        PointedRecord { s: pp.base, e: pp.length, a: pp.aut_order, size: pp.size }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PassportRecord {
    pub key: String,
    pub degree: usize,
    pub genus: usize,
    pub lambda: [Partition; 3],
    pub group: GroupRecord,
    pub size: usize,
    /// Canonical triples as `[σ0, σ1, σ∞]` image arrays.
    pub triples: Vec<[belyi_core::Permutation; 3]>,
    #[serde(default)]
    pub pointed: Vec<PointedRecord>,
    #[serde(default)]
    pub descends_guaranteed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub descent_witness: Option<PointedRecord>,
    /// Opaque extra data (equations, fields, notes).
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub attachments: BTreeMap<String, String>,
}

/// `"{d}T{id}-g{g}-{λ0}-{λ1}-{λ∞}"`, partitions in exponent notation joined
/// by `.`, e.g. `5T3-g1-5^1-4^1.1^1-4^1.1^1`.
pub fn passport_key(degree: usize, group_id: u32, genus: usize, lambda: &[Partition; 3]) -> String {
    format!(
        "{degree}T{group_id}-g{genus}-{}-{}-{}",
        lambda[0].exponent_notation("."),
        lambda[1].exponent_notation("."),
        lambda[2].exponent_notation(".")
    )
}

/// Parsed fields of a passport key.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KeyParts {
    pub degree: usize,
    pub group_id: u32,
    pub genus: usize,
    pub lambda: [Partition; 3],
}

pub fn parse_key(key: &str) -> Result<KeyParts> {
    let err = || DbError::Key(key.to_string());
    let fields: Vec<&str> = key.split('-').collect();
    if fields.len() != 5 {
        return Err(err());
    }
    let (d, id) = fields[0].split_once('T').ok_or_else(err)?;
    let degree: usize = d.parse().map_err(|_| err())?;
    let group_id: u32 = id.parse().map_err(|_| err())?;
    let genus: usize = fields[1].strip_prefix('g').ok_or_else(err)?.parse().map_err(|_| err())?;
    let part = |s: &str| Partition::parse_exponent(s).map_err(|_| err());
    let lambda = [part(fields[2])?, part(fields[3])?, part(fields[4])?];
    if lambda.iter().any(|l| l.total() != degree) {
        return Err(err());
    }
    Ok(KeyParts { degree, group_id, genus, lambda })
}

impl PassportRecord {
    /// Record without pointed data.
    pub fn from_passport(p: &Passport) -> Self {
        PassportRecord {
            key: passport_key(p.degree, p.group.id, p.genus, &p.lambda),
            degree: p.degree,
            genus: p.genus,
            lambda: p.lambda.clone(),
            group: GroupRecord {
                id: p.group.id,
                order: p.group.order,
                signature_hash: p.group.signature_hash(),
                transitive: p.group.transitive,
                even: p.group.even,
                external_label: None,
            },
            size: p.size(),
            triples: p.triples.iter().map(|t| t.as_array()).collect(),
            pointed: Vec::new(),
            descends_guaranteed: false,
            descent_witness: None,
            attachments: BTreeMap::new(),
        }
    }

    /// Record including pointed passports and the descent flag.
    pub fn from_passport_pointed(p: &Passport) -> Self {
        let mut r = Self::from_passport(p);
        r.attach_pointed(p);
        r
    }

    pub fn attach_pointed(&mut self, p: &Passport) {
        let classes = pointed_classes(p);
        self.pointed = classes.iter().map(PointedRecord::from).collect();
        let witness = descent_witness(p, &classes);
        self.descends_guaranteed = witness.is_some();
        self.descent_witness = witness.as_ref().map(PointedRecord::from);
    }

    /// Recomputes the pointed data from the stored triples.
    pub fn recompute_pointed(&mut self) -> Result<()> {
        let classes = pointed_classes_of(&self.triples()?);
        self.pointed = classes.iter().map(PointedRecord::from).collect();
        let witness = witness_for_size(self.size, &classes);
        self.descends_guaranteed = witness.is_some();
        self.descent_witness = witness.as_ref().map(PointedRecord::from);
        Ok(())
    }

    pub fn triples(&self) -> Result<Vec<PermutationTriple>> {
        self.triples
            .iter()
            .map(|[a, b, c]| PermutationTriple::new(*a, *b, *c).map_err(|e| DbError::Invalid(self.key.clone(), e.to_string())))
            .collect()
    }

    /// Checks the stated invariants of a record.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(DbError::Invalid(self.key.clone(), msg));
        let kp = parse_key(&self.key)?;
        if kp.degree != self.degree || kp.genus != self.genus || kp.lambda != self.lambda {
            return bad("key does not match degree, genus and partitions".into());
        }
        if self.size != self.triples.len() {
            return bad(format!("size {} but {} triples", self.size, self.triples.len()));
        }
        if self.pointed.iter().any(|p| p.size == 0) {
            return bad("pointed passport of size 0".into());
        }
        for t in self.triples()? {
            if t.degree() != self.degree || t.cycle_types() != self.lambda {
                return bad(format!("triple {t} has the wrong cycle types"));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitRecord {
    pub key: String,
    /// Sizes of the Galois orbits on the passport.
    pub orbits: Vec<usize>,
    /// Optional label per orbit (e.g. a defining polynomial of its field).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub fields: Vec<String>,
}

/// Rows addressable by a unique key.
pub trait Keyed {
    fn key(&self) -> &str;
}

impl Keyed for PassportRecord {
    fn key(&self) -> &str {
        &self.key
    }
}

impl Keyed for OrbitRecord {
    fn key(&self) -> &str {
        &self.key
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn key_round_trip() {
        let lambda = [
            Partition::new(vec![5]).unwrap(),
            Partition::new(vec![4, 1]).unwrap(),
            Partition::new(vec![4, 1]).unwrap(),
        ];
        let k = passport_key(5, 3, 1, &lambda);
        assert_eq!(k, "5T3-g1-5^1-4^1.1^1-4^1.1^1");
        let kp = parse_key(&k).unwrap();
        assert_eq!((kp.degree, kp.group_id, kp.genus), (5, 3, 1));
        assert_eq!(kp.lambda, lambda);
        assert!(parse_key("5T3-g1-5^1-4^1.1^1").is_err());
        assert!(parse_key("5T3-g1-5^1-4^1.1^1-4^1").is_err());
    }
}
