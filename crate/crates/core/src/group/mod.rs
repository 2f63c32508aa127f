//! Finite groups as Cayley tables: the substrate for the bundled `kG` and
//! `k^G` instances and for the classical oracle.

mod build;
mod chartable;
mod oracle;

use std::collections::HashMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::central::GroupBacking;
use crate::error::{Error, Result};
use crate::pair::HopfPair;
use crate::subalgebra::ClosedSubset;
use crate::tolerance::Tolerance;

pub use build::build_group_algebra;
pub use chartable::{character_table, CharacterTable, DEFAULT_SEED};
pub use oracle::{GroupOracle, MackeyOutcome};

/// Directory of the bundled group files.
pub const BUNDLED_DIR: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/data/groups");

/// Names of the bundled groups, smallest first.
pub const BUNDLED: [&str; 9] = ["C2", "C4", "C2xC2", "S3", "D4", "Q8", "A4", "D5", "S4"];

pub fn bundled_path(name: &str) -> std::path::PathBuf {
    Path::new(BUNDLED_DIR).join(format!("{name}.group.json"))
}

/// Default bound on the number of elements enumerated from generators.
pub const GENERATOR_BOUND: usize = 10_000;

/// On-disk group description: permutation generators or an explicit Cayley table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupFile {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cayley: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

/// A finite group with identity at index 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTable {
    name: String,
    labels: Vec<String>,
    mul: Vec<usize>,
    inv: Vec<usize>,
}

impl GroupTable {
    /// Validates an explicit Cayley table: identity at 0, Latin square, associative.
    pub fn from_cayley(
        name: impl Into<String>,
        table: Vec<Vec<usize>>,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::Group("empty Cayley table".into()));
        }
        if let Some(r) = table.iter().position(|row| row.len() != n) {
            return Err(Error::Group(format!("row {r} does not have {n} entries")));
        }
        for (a, row) in table.iter().enumerate() {
            if let Some(&x) = row.iter().find(|&&x| x >= n) {
                return Err(Error::Group(format!("entry {x} in row {a} out of range")));
            }
        }
        for a in 0..n {
            if table[0][a] != a || table[a][0] != a {
                return Err(Error::Group(format!(
                    "index 0 is not the identity (fails at element {a})"
                )));
            }
        }
        for a in 0..n {
            let mut row_seen = vec![false; n];
            let mut col_seen = vec![false; n];
            for b in 0..n {
                if std::mem::replace(&mut row_seen[table[a][b]], true) {
                    return Err(Error::Group(format!("row {a} is not a permutation")));
                }
                if std::mem::replace(&mut col_seen[table[b][a]], true) {
                    return Err(Error::Group(format!("column {a} is not a permutation")));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(Error::Group(format!(
                            "non-associative triple ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        let labels = match labels {
            Some(l) if l.len() == n => l,
            Some(l) => {
                return Err(Error::Group(format!(
                    "{} labels for {n} elements",
                    l.len()
                )))
            }
            None => (0..n)
                .map(|i| if i == 0 { "e".to_string() } else { format!("g{i}") })
                .collect(),
        };
        let mul: Vec<usize> = table.into_iter().flatten().collect();
        Ok(GroupTable::assemble(name.into(), labels, mul))
    }

    /// Enumerates the permutation group generated by `generators` (0-based
    /// image arrays). Products compose right to left: `(pq)(x) = p(q(x))`.
    pub fn from_generators(
        name: impl Into<String>,
        generators: &[Vec<usize>],
        bound: usize,
    ) -> Result<Self> {
        let degree = generators.first().map_or(1, Vec::len);
        for (i, g) in generators.iter().enumerate() {
            if g.len() != degree {
                return Err(Error::Group(format!(
                    "generator {i} acts on {} points, expected {degree}",
                    g.len()
                )));
            }
            let mut seen = vec![false; degree];
            for &x in g {
                if x >= degree || std::mem::replace(&mut seen[x], true) {
                    return Err(Error::Group(format!("generator {i} is not a permutation")));
                }
            }
        }
        let identity: Vec<usize> = (0..degree).collect();
        let mut elements = vec![identity.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(identity, 0)]);
        let mut next = 0;
        while next < elements.len() {
            for g in generators {
                let p = compose(g, &elements[next]);
                if !index.contains_key(&p) {
                    if elements.len() >= bound {
                        return Err(Error::Group(format!(
                            "generator closure exceeds {bound} elements"
                        )));
                    }
                    index.insert(p.clone(), elements.len());
                    elements.push(p);
                }
            }
            next += 1;
        }
        let n = elements.len();
        let mut mul = Vec::with_capacity(n * n);
        for a in &elements {
            for b in &elements {
                mul.push(index[&compose(a, b)]);
            }
        }
        let labels = elements.iter().map(|p| cycle_label(p)).collect();
        Ok(GroupTable::assemble(name.into(), labels, mul))
    }

    pub fn from_file(doc: GroupFile) -> Result<Self> {
        match (doc.generators, doc.cayley) {
            (Some(gens), None) => {
                let g = GroupTable::from_generators(doc.name, &gens, GENERATOR_BOUND)?;
                match doc.labels {
                    Some(l) if l.len() == g.order() => Ok(GroupTable { labels: l, ..g }),
                    Some(l) => Err(Error::Group(format!(
                        "{} labels for {} elements",
                        l.len(),
                        g.order()
                    ))),
                    None => Ok(g),
                }
            }
            (None, Some(table)) => GroupTable::from_cayley(doc.name, table, doc.labels),
            _ => Err(Error::Group(
                "group file needs exactly one of `generators` or `cayley`".into(),
            )),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        GroupTable::from_file(serde_json::from_str(text)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        GroupTable::parse(&fs::read_to_string(path)?)
    }

    fn assemble(name: String, labels: Vec<String>, mul: Vec<usize>) -> Self {
        let n = labels.len();
        let inv = (0..n)
            .map(|a| (0..n).find(|&b| mul[a * n + b] == 0).expect("Latin square"))
            .collect();
        GroupTable {
            name,
            labels,
            mul,
            inv,
        }
    }

    /// The subgroup on `elements` as a standalone group (identity first,
    /// remaining elements in the given order). Returns the group and the map
    /// from new indices to old ones.
    pub fn subgroup(&self, elements: &[usize]) -> Result<(GroupTable, Vec<usize>)> {
        let mut old: Vec<usize> = vec![0];
        old.extend(elements.iter().copied().filter(|&x| x != 0));
        let mut pos = HashMap::new();
        for (i, &x) in old.iter().enumerate() {
            pos.insert(x, i);
        }
        let mut table = Vec::with_capacity(old.len());
        for &a in &old {
            let mut row = Vec::with_capacity(old.len());
            for &b in &old {
                let p = self.mul(a, b);
                row.push(*pos.get(&p).ok_or_else(|| {
                    Error::Group(format!("elements {elements:?} are not closed"))
                })?);
            }
            table.push(row);
        }
        let labels = old.iter().map(|&x| self.labels[x].clone()).collect();
        let sub = GroupTable::from_cayley(format!("{}-sub", self.name), table, Some(labels))?;
        Ok((sub, old))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order() + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// `x a x⁻¹`.
    pub fn conjugate(&self, a: usize, x: usize) -> usize {
        self.mul(self.mul(x, a), self.inv(x))
    }

    pub fn cayley(&self) -> Vec<Vec<usize>> {
        self.mul.chunks(self.order()).map(|r| r.to_vec()).collect()
    }
}

/// A group together with its character table, oracle and `kG` instance.
/// Indices of `Irr(H*)` in `pair` are group element indices and indices of
/// `Irr(H)` are character-table rows.
#[derive(Debug, Clone)]
pub struct GroupInstance {
    pub group: GroupTable,
    pub table: CharacterTable,
    pub oracle: GroupOracle,
    pub pair: HopfPair,
}

impl GroupInstance {
    pub fn new(group: GroupTable, seed: u64, tol: Tolerance) -> Result<Self> {
        let table = character_table(&group, seed, &tol)?;
        let pair = build_group_algebra(&group, &table, tol)?;
        let oracle = GroupOracle::new(&group);
        Ok(GroupInstance {
            group,
            table,
            oracle,
            pair,
        })
    }

    pub fn load(path: impl AsRef<Path>, seed: u64, tol: Tolerance) -> Result<Self> {
        GroupInstance::new(GroupTable::load(path)?, seed, tol)
    }

    pub fn backing(&self) -> GroupBacking<'_> {
        GroupBacking {
            oracle: &self.oracle,
            table: &self.table,
        }
    }

    /// `k[S]` for a subgroup `S` given by its elements.
    pub fn subset(&self, elements: &[usize]) -> Result<ClosedSubset> {
        ClosedSubset::from_members(&self.pair, elements.iter().copied())
    }

    pub fn element(&self, label: &str) -> Result<usize> {
        self.group
            .labels()
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }
}

fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    q.iter().map(|&x| p[x]).collect()
}

fn cycle_label(p: &[usize]) -> String {
    let sep = if p.len() > 10 { " " } else { "" };
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        let mut cycle = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            cycle.push(x.to_string());
            x = p[x];
        }
        out.push('(');
        out.push_str(&cycle.join(sep));
        out.push(')');
    }
    if out.is_empty() {
        "e".into()
    } else {
        out
    }
}
