//! Partition functions and connectivity functions.
//!
//! Values are exact: rationals plus an explicit infinity that sorts above
//! every finite value. Floats never enter comparisons.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Add;

use num::rational::Ratio;
use serde::{de, Deserialize, Serialize};
use serde_json::Value as Json;

use crate::config::Caps;
use crate::enumerate::{enumerate_partitions, submasks};
use crate::error::{Error, Result};
use crate::family::Partition;
use crate::graph::Graph;
use crate::ground::{Block, GroundSet};
use crate::props::{CounterExample, PropertyReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Value {
    Finite(Ratio<i64>),
    Infinite,
}

impl Value {
    pub fn int(n: i64) -> Value {
        Value::Finite(Ratio::from_integer(n))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Value::Finite(_))
    }

    pub fn parse(s: &str) -> Result<Value> {
        let s = s.trim();
        if s == "inf" || s == "+inf" {
            return Ok(Value::Infinite);
        }
        s.parse::<Ratio<i64>>()
            .map(Value::Finite)
            .map_err(|_| Error::Table(format!("bad value `{s}`")))
    }

    fn from_json(v: &Json) -> Result<Value> {
        match v {
            Json::Number(n) => {
                if let Some(i) = n.as_i64() {
                    Ok(Value::int(i))
                } else {
                    Err(Error::Table(format!("non-integer number {n}")))
                }
            }
            Json::String(s) => Value::parse(s),
            other => Err(Error::Table(format!("bad value {other}"))),
        }
    }
}

impl From<i64> for Value {
    fn from(n: i64) -> Value {
        Value::int(n)
    }
}

impl Add for Value {
    type Output = Value;
    fn add(self, rhs: Value) -> Value {
        match (self, rhs) {
            (Value::Finite(a), Value::Finite(b)) => Value::Finite(a + b),
            _ => Value::Infinite,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Infinite => write!(f, "inf"),
            Value::Finite(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Value::Finite(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl Serialize for Value {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Value::Finite(r) if r.is_integer() => ser.serialize_i64(*r.numer()),
            other => ser.serialize_str(&other.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Value {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Value, D::Error> {
        let raw = Json::deserialize(de)?;
        Value::from_json(&raw).map_err(de::Error::custom)
    }
}

/// A total function from partitions of a fixed ground set to values.
pub trait PartitionFunction {
    fn ground(&self) -> &GroundSet;
    fn value(&self, p: &Partition) -> Value;
    fn describe(&self) -> String;
}

/// A symmetric submodular set function on a fixed ground set.
pub trait ConnectivityFunction {
    fn ground(&self) -> &GroundSet;
    fn value(&self, a: Block) -> Value;
    fn describe(&self) -> String;
}

/// Number of vertices incident with edges in at least two parts.
pub struct Border {
    ground: GroundSet,
    incidence: Vec<u64>,
    star_forest: bool,
}

impl Border {
    pub fn new(g: &Graph, caps: &Caps) -> Result<Border> {
        Ok(Border {
            ground: g.edge_ground(caps)?,
            incidence: g.incidence_masks(),
            star_forest: g.is_union_of_stars(),
        })
    }

    /// Star forests are the degenerate case for border-based widths.
    pub fn from_star_forest(&self) -> bool {
        self.star_forest
    }
}

impl PartitionFunction for Border {
    fn ground(&self) -> &GroundSet {
        &self.ground
    }

    fn value(&self, p: &Partition) -> Value {
        let mut border = 0;
        for &inc in &self.incidence {
            let mut hit = 0;
            for b in p.blocks() {
                if b.mask() & inc != 0 {
                    hit += 1;
                    if hit == 2 {
                        border += 1;
                        break;
                    }
                }
            }
        }
        Value::int(border)
    }

    fn describe(&self) -> String {
        "border".into()
    }
}

/// Number of vertices incident with edges on both sides of the cut.
pub struct VertexBoundary {
    ground: GroundSet,
    incidence: Vec<u64>,
}

impl VertexBoundary {
    pub fn new(g: &Graph, caps: &Caps) -> Result<VertexBoundary> {
        Ok(VertexBoundary {
            ground: g.edge_ground(caps)?,
            incidence: g.incidence_masks(),
        })
    }
}

impl ConnectivityFunction for VertexBoundary {
    fn ground(&self) -> &GroundSet {
        &self.ground
    }

    fn value(&self, a: Block) -> Value {
        let co = self.ground.full().mask() & !a.mask();
        let n = self
            .incidence
            .iter()
            .filter(|&&inc| inc & a.mask() != 0 && inc & co != 0)
            .count();
        Value::int(n as i64)
    }

    fn describe(&self) -> String {
        "vertex-boundary".into()
    }
}

/// Rank over GF(2) of the bipartite adjacency submatrix between the two
/// sides of the cut; the ground set is the vertex set.
pub struct CutRank {
    ground: GroundSet,
    adjacency: Vec<u64>,
}

impl CutRank {
    pub fn new(g: &Graph, caps: &Caps) -> Result<CutRank> {
        Ok(CutRank {
            ground: g.vertex_ground(caps)?,
            adjacency: g.adjacency_masks(),
        })
    }
}

fn gf2_rank(mut rows: Vec<u64>) -> i64 {
    let mut rank = 0;
    for i in 0..rows.len() {
        if rows[i] == 0 {
            continue;
        }
        let pivot = rows[i] & rows[i].wrapping_neg();
        rank += 1;
        for j in i + 1..rows.len() {
            if rows[j] & pivot != 0 {
                rows[j] ^= rows[i];
            }
        }
    }
    rank
}

impl ConnectivityFunction for CutRank {
    fn ground(&self) -> &GroundSet {
        &self.ground
    }

    fn value(&self, a: Block) -> Value {
        let co = self.ground.full().mask() & !a.mask();
        let rows = a.iter().map(|v| self.adjacency[v] & co).collect();
        Value::int(gf2_rank(rows))
    }

    fn describe(&self) -> String {
        "cut-rank".into()
    }
}

/// The partition function taking the maximum of `f` over the parts.
pub struct MaxF<F: ConnectivityFunction> {
    f: F,
}

impl<F: ConnectivityFunction> MaxF<F> {
    pub fn new(f: F) -> Self {
        MaxF { f }
    }

    pub fn inner(&self) -> &F {
        &self.f
    }
}

impl<F: ConnectivityFunction> PartitionFunction for MaxF<F> {
    fn ground(&self) -> &GroundSet {
        self.f.ground()
    }

    fn value(&self, p: &Partition) -> Value {
        p.blocks()
            .iter()
            .map(|b| self.f.value(*b))
            .max()
            .expect("partitions have at least one part")
    }

    fn describe(&self) -> String {
        format!("max_f({})", self.f.describe())
    }
}

/// 0 on members, 1 elsewhere.
pub struct IndicatorFn {
    ground: GroundSet,
    members: Vec<Partition>,
}

impl IndicatorFn {
    pub fn new(ground: GroundSet, mut members: Vec<Partition>) -> IndicatorFn {
        members.sort();
        members.dedup();
        IndicatorFn { ground, members }
    }

    pub fn members(&self) -> &[Partition] {
        &self.members
    }
}

impl PartitionFunction for IndicatorFn {
    fn ground(&self) -> &GroundSet {
        &self.ground
    }

    fn value(&self, p: &Partition) -> Value {
        if self.members.binary_search(p).is_ok() {
            Value::int(0)
        } else {
            Value::int(1)
        }
    }

    fn describe(&self) -> String {
        format!("indicator({} members)", self.members.len())
    }
}

fn parse_block_key(key: &str, ground: &GroundSet) -> Result<Block> {
    let key = key.trim();
    if key.is_empty() {
        return Ok(Block::EMPTY);
    }
    let mut indices = Vec::new();
    for part in key.split(',') {
        let i: usize = part
            .trim()
            .parse()
            .map_err(|_| Error::Table(format!("bad element `{part}` in key `{key}`")))?;
        if i >= ground.size() {
            return Err(Error::Table(format!("element {i} out of range in `{key}`")));
        }
        indices.push(i);
    }
    Block::from_indices(&indices)
}

/// Explicit connectivity function given as a `{subset: value}` table;
/// symmetry is auto-completed and totality enforced.
pub struct TableCF {
    ground: GroundSet,
    values: Vec<Value>,
}

impl TableCF {
    pub fn from_json(ground: GroundSet, text: &str) -> Result<TableCF> {
        let size = ground.size();
        if size > 24 {
            return Err(Error::Table(format!(
                "ground of size {size} is too large for an explicit table"
            )));
        }
        let raw: Json =
            serde_json::from_str(text).map_err(|e| Error::Table(format!("bad JSON: {e}")))?;
        let obj = raw
            .as_object()
            .ok_or_else(|| Error::Table("expected a JSON object".into()))?;
        let full = (1u64 << size) - 1;
        let mut values: Vec<Option<Value>> = vec![None; 1 << size];
        let mut set = |mask: u64, v: Value| -> Result<()> {
            match values[mask as usize] {
                None => {
                    values[mask as usize] = Some(v);
                    Ok(())
                }
                Some(old) if old == v => Ok(()),
                Some(old) => Err(Error::Table(format!(
                    "conflicting values {old} and {v} for {}",
                    Block::from_mask(mask)
                ))),
            }
        };
        for (key, val) in obj {
            let block = parse_block_key(key, &ground)?;
            let v = Value::from_json(val)?;
            set(block.mask(), v)?;
            set(full & !block.mask(), v)?;
        }
        let mut out = Vec::with_capacity(values.len());
        for (mask, v) in values.into_iter().enumerate() {
            match v {
                Some(v) => out.push(v),
                None => {
                    return Err(Error::Table(format!(
                        "missing value for {}",
                        Block::from_mask(mask as u64)
                    )))
                }
            }
        }
        Ok(TableCF {
            ground,
            values: out,
        })
    }
}

impl ConnectivityFunction for TableCF {
    fn ground(&self) -> &GroundSet {
        &self.ground
    }

    fn value(&self, a: Block) -> Value {
        self.values[a.mask() as usize]
    }

    fn describe(&self) -> String {
        "table".into()
    }
}

fn parse_partition_key(key: &str, ground: &GroundSet) -> Result<Partition> {
    let mut blocks = Vec::new();
    for part in key.split('|') {
        blocks.push(parse_block_key(part, ground)?);
    }
    Partition::new(ground, blocks)
}

/// Explicit partition function given as a `{partition: value}` table with
/// `|`-separated parts; totality over all partitions enforced at load.
pub struct TablePF {
    ground: GroundSet,
    values: BTreeMap<Partition, Value>,
}

impl TablePF {
    pub fn from_json(ground: GroundSet, text: &str, caps: &Caps) -> Result<TablePF> {
        let raw: Json =
            serde_json::from_str(text).map_err(|e| Error::Table(format!("bad JSON: {e}")))?;
        let obj = raw
            .as_object()
            .ok_or_else(|| Error::Table("expected a JSON object".into()))?;
        let mut values = BTreeMap::new();
        for (key, val) in obj {
            let p = parse_partition_key(key, &ground)?;
            let v = Value::from_json(val)?;
            if let Some(old) = values.insert(p, v) {
                if old != v {
                    return Err(Error::Table(format!("conflicting values for `{key}`")));
                }
            }
        }
        for p in enumerate_partitions(&ground, caps, None)? {
            if !values.contains_key(&p) {
                return Err(Error::Table(format!("missing value for {p}")));
            }
        }
        Ok(TablePF { ground, values })
    }
}

impl PartitionFunction for TablePF {
    fn ground(&self) -> &GroundSet {
        &self.ground
    }

    fn value(&self, p: &Partition) -> Value {
        *self
            .values
            .get(p)
            .expect("table is total on its ground set")
    }

    fn describe(&self) -> String {
        "table".into()
    }
}

/// Exhaustive check of the two connectivity axioms.
pub fn verify_connectivity(f: &dyn ConnectivityFunction, caps: &Caps) -> Result<PropertyReport> {
    let size = f.ground().size();
    if size > caps.connectivity {
        return Err(Error::CapExceeded {
            what: "connectivity sweep",
            size,
            cap: caps.connectivity,
        });
    }
    let full = (1u64 << size) - 1;
    let values: Vec<Value> = (0..=full).map(|m| f.value(Block::from_mask(m))).collect();
    for a in 0..=full {
        if values[a as usize] != values[(full & !a) as usize] {
            return Ok(PropertyReport::failing(CounterExample::SetPair {
                a: Block::from_mask(a),
                b: Block::from_mask(full & !a),
            }));
        }
    }
    for a in 0..=full {
        for b in a..=full {
            let lhs = values[a as usize] + values[b as usize];
            let rhs = values[(a | b) as usize] + values[(a & b) as usize];
            if lhs < rhs {
                return Ok(PropertyReport::failing(CounterExample::SetPair {
                    a: Block::from_mask(a),
                    b: Block::from_mask(b),
                }));
            }
        }
    }
    Ok(PropertyReport::passing())
}

/// The partitions whose value is at most the threshold, optionally capped
/// in block count.
pub struct LevelSet<'a> {
    psi: &'a dyn PartitionFunction,
    threshold: Value,
    max_blocks: Option<usize>,
}

impl<'a> LevelSet<'a> {
    pub fn new(psi: &'a dyn PartitionFunction, threshold: Value) -> LevelSet<'a> {
        LevelSet {
            psi,
            threshold,
            max_blocks: None,
        }
    }

    pub fn with_max_blocks(mut self, k: usize) -> LevelSet<'a> {
        self.max_blocks = Some(k);
        self
    }

    pub fn threshold(&self) -> Value {
        self.threshold
    }

    pub fn contains(&self, p: &Partition) -> bool {
        self.max_blocks.is_none_or(|k| p.blocks().len() <= k) && self.psi.value(p) <= self.threshold
    }

    pub fn members(&self, caps: &Caps) -> Result<Vec<Partition>> {
        let iter = enumerate_partitions(self.psi.ground(), caps, self.max_blocks)?;
        let mut out: Vec<Partition> = iter.filter(|p| self.contains(p)).collect();
        out.sort();
        Ok(out)
    }
}

pub fn level_set<'a>(psi: &'a dyn PartitionFunction, threshold: Value) -> LevelSet<'a> {
    LevelSet::new(psi, threshold)
}

/// Canonically first minimizer of `f` over the interval lo ⊆ F ⊆ hi.
pub fn minimizing_block(f: &dyn ConnectivityFunction, lo: Block, hi: Block) -> (Block, Value) {
    debug_assert!(lo.is_subset_of(hi));
    let free = hi.mask() & !lo.mask();
    let mut best = (lo, f.value(lo));
    for sub in submasks(free) {
        if sub == 0 {
            continue;
        }
        let cand = Block::from_mask(lo.mask() | sub);
        let v = f.value(cand);
        if v < best.1 {
            best = (cand, v);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, path, triangle};

    fn caps() -> Caps {
        Caps::default()
    }

    fn b(xs: &[usize]) -> Block {
        Block::from_indices(xs).unwrap()
    }

    fn part(ground: &GroundSet, blocks: &[&[usize]]) -> Partition {
        Partition::new(ground, blocks.iter().map(|xs| b(xs)).collect()).unwrap()
    }

    #[test]
    fn value_arithmetic_and_order() {
        assert!(Value::int(2) < Value::int(3));
        assert!(Value::int(1000) < Value::Infinite);
        assert_eq!(Value::int(2) + Value::Infinite, Value::Infinite);
        assert_eq!(
            Value::parse("3/4").unwrap() + Value::parse("1/4").unwrap(),
            Value::int(1)
        );
        assert_eq!(Value::int(7).to_string(), "7");
        assert_eq!(Value::parse("3/4").unwrap().to_string(), "3/4");
        assert_eq!(Value::Infinite.to_string(), "inf");
    }

    #[test]
    fn value_serde() {
        assert_eq!(serde_json::to_string(&Value::int(3)).unwrap(), "3");
        assert_eq!(serde_json::to_string(&Value::Infinite).unwrap(), "\"inf\"");
        assert_eq!(
            serde_json::from_str::<Value>("\"5/2\"").unwrap(),
            Value::parse("5/2").unwrap()
        );
        assert_eq!(serde_json::from_str::<Value>("-2").unwrap(), Value::int(-2));
        assert!(serde_json::from_str::<Value>("2.5").is_err());
    }

    #[test]
    fn border_counts_straddling_vertices() {
        let g = path(3);
        let psi = Border::new(&g, &caps()).unwrap();
        let ground = psi.ground().clone();
        assert_eq!(psi.value(&part(&ground, &[&[0], &[1]])), Value::int(1));
        assert_eq!(psi.value(&part(&ground, &[&[0, 1]])), Value::int(0));

        let t = Border::new(&triangle(), &caps()).unwrap();
        let tg = t.ground().clone();
        assert_eq!(t.value(&part(&tg, &[&[0], &[1], &[2]])), Value::int(3));
        assert!(Border::new(&path(3), &caps()).unwrap().from_star_forest());
        assert!(!t.from_star_forest());
    }

    #[test]
    fn vertex_boundary_examples() {
        let t = VertexBoundary::new(&triangle(), &caps()).unwrap();
        assert_eq!(t.value(b(&[0])), Value::int(2));
        assert_eq!(t.value(Block::EMPTY), Value::int(0));
        assert_eq!(t.value(t.ground().full()), Value::int(0));

        let p = VertexBoundary::new(&path(3), &caps()).unwrap();
        assert_eq!(p.value(b(&[0])), Value::int(1));
    }

    #[test]
    fn cut_rank_examples() {
        let c4 = CutRank::new(&cycle(4), &caps()).unwrap();
        assert_eq!(c4.value(b(&[0, 2])), Value::int(1));
        assert_eq!(c4.value(Block::EMPTY), Value::int(0));
        assert_eq!(c4.value(b(&[0])), Value::int(1));

        let k3 = CutRank::new(&triangle(), &caps()).unwrap();
        assert_eq!(k3.value(b(&[0])), Value::int(1));
        assert_eq!(k3.value(b(&[0, 1])), Value::int(1));
    }

    #[test]
    fn max_f_examples() {
        let f = VertexBoundary::new(&triangle(), &caps()).unwrap();
        let psi = MaxF::new(f);
        let g = psi.ground().clone();
        assert_eq!(psi.value(&part(&g, &[&[0], &[1], &[2]])), Value::int(2));
        assert_eq!(psi.value(&part(&g, &[&[0, 1, 2]])), Value::int(0));

        let p = MaxF::new(VertexBoundary::new(&path(3), &caps()).unwrap());
        let pg = p.ground().clone();
        assert_eq!(p.value(&part(&pg, &[&[0], &[1]])), Value::int(1));
    }

    #[test]
    fn verify_connectivity_examples() {
        let f = VertexBoundary::new(&triangle(), &caps()).unwrap();
        assert!(verify_connectivity(&f, &caps()).unwrap().holds);
        let r = CutRank::new(&complete(4), &caps()).unwrap();
        assert!(verify_connectivity(&r, &caps()).unwrap().holds);

        struct Cardinality(GroundSet);
        impl ConnectivityFunction for Cardinality {
            fn ground(&self) -> &GroundSet {
                &self.0
            }
            fn value(&self, a: Block) -> Value {
                Value::int(a.len() as i64)
            }
            fn describe(&self) -> String {
                "cardinality".into()
            }
        }
        let ground = GroundSet::new(2, &caps()).unwrap();
        let report = verify_connectivity(&Cardinality(ground.clone()), &caps()).unwrap();
        assert!(!report.holds);

        let zero = TableCF::from_json(ground, r#"{"":0,"0":0}"#).unwrap();
        assert!(verify_connectivity(&zero, &caps()).unwrap().holds);
    }

    #[test]
    fn tables_enforce_their_contracts() {
        let ground = GroundSet::new(2, &caps()).unwrap();
        assert!(matches!(
            TableCF::from_json(ground.clone(), r#"{"":0}"#),
            Err(Error::Table(_))
        ));
        assert!(matches!(
            TableCF::from_json(ground.clone(), r#"{"":0,"0":1,"0,1":5}"#),
            Err(Error::Table(_))
        ));

        let pf = TablePF::from_json(ground.clone(), r#"{"0|1":2,"0,1":0}"#, &caps()).unwrap();
        let p = part(&ground, &[&[0], &[1]]);
        assert_eq!(pf.value(&p), Value::int(2));
        assert!(matches!(
            TablePF::from_json(ground, r#"{"0|1":2}"#, &caps()),
            Err(Error::Table(_))
        ));
    }

    #[test]
    fn level_set_membership_and_enumeration() {
        let psi = Border::new(&path(3), &caps()).unwrap();
        let g = psi.ground().clone();
        let ls = LevelSet::new(&psi, Value::int(1));
        assert!(ls.contains(&part(&g, &[&[0], &[1]])));
        let all = LevelSet::new(&psi, Value::Infinite);
        assert_eq!(all.members(&caps()).unwrap().len(), 2);
        let none = LevelSet::new(&psi, Value::int(-1));
        assert!(none.members(&caps()).unwrap().is_empty());
        let capped = LevelSet::new(&psi, Value::Infinite).with_max_blocks(1);
        assert_eq!(capped.members(&caps()).unwrap().len(), 1);
    }

    #[test]
    fn minimizing_block_scans_the_interval() {
        let ground = GroundSet::new(3, &caps()).unwrap();
        let f = TableCF::from_json(
            ground,
            r#"{"":0,"0":5,"1":1,"2":1,"0,1":1,"0,2":1,"1,2":5,"0,1,2":0}"#,
        )
        .unwrap();
        let (best, v) = minimizing_block(&f, b(&[0]), b(&[0, 1, 2]));
        assert_eq!(v, Value::int(0));
        assert_eq!(best, b(&[0, 1, 2]));
        let (best, v) = minimizing_block(&f, b(&[0]), b(&[0, 1]));
        assert_eq!(v, Value::int(1));
        assert_eq!(best, b(&[0, 1]));
        let (lo, v0) = minimizing_block(&f, Block::EMPTY, Block::EMPTY);
        assert_eq!((lo, v0), (Block::EMPTY, Value::int(0)));
    }

    #[test]
    fn indicator_is_zero_on_members() {
        let ground = GroundSet::new(3, &caps()).unwrap();
        let p = part(&ground, &[&[0], &[1, 2]]);
        let q = part(&ground, &[&[0, 1, 2]]);
        let psi = IndicatorFn::new(ground.clone(), vec![p.clone()]);
        assert_eq!(psi.value(&p), Value::int(0));
        assert_eq!(psi.value(&q), Value::int(1));
    }
}
