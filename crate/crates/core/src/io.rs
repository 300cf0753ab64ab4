//! File formats: class JSON, dataset CSV and tree exports.
//!
//! A class file looks like
//!
//! ```json
//! {"name": "example", "domain_size": 3, "concepts": [{"id": "a", "ones": [0, 2]}, {"ones": []}]}
//! ```
//!
//! and a dataset is a CSV with header `point,label` and labels `0`/`1`.

use std::fmt::Write as _;
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::concept::{Concept, ConceptClass, Dataset, Example, PointId};
use crate::error::{Error, Result};
use crate::tree::{ClassTree, Node};

#[derive(Serialize, Deserialize)]
struct ClassFile {
    name: String,
    domain_size: usize,
    concepts: Vec<ConceptRecord>,
}

#[derive(Serialize, Deserialize)]
struct ConceptRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    id: Option<String>,
    ones: Vec<usize>,
}

pub fn read_class<R: Read>(reader: R) -> Result<ConceptClass> {
    let file: ClassFile = serde_json::from_reader(reader)?;
    let concepts = file
        .concepts
        .into_iter()
        .map(|r| {
            let c = Concept::from_points(file.domain_size, r.ones)?;
            Ok(match r.id {
                Some(id) => c.with_id(id),
                None => c,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    ConceptClass::new(file.name, file.domain_size, concepts)
}

pub fn write_class<W: Write>(class: &ConceptClass, writer: W) -> Result<()> {
    let file = ClassFile {
        name: class.name().to_string(),
        domain_size: class.domain_size(),
        concepts: class
            .concepts()
            .iter()
            .map(|c| ConceptRecord { id: c.id.clone(), ones: c.points().map(PointId::index).collect() })
            .collect(),
    };
    serde_json::to_writer_pretty(writer, &file)?;
    Ok(())
}

#[derive(Serialize, Deserialize)]
struct Row {
    point: u32,
    label: u8,
}

pub fn read_dataset<R: Read>(reader: R) -> Result<Dataset> {
    let mut rdr = csv::Reader::from_reader(reader);
    let examples = rdr
        .deserialize::<Row>()
        .map(|row| {
            let row = row?;
            let label = match row.label {
                0 => false,
                1 => true,
                other => return Err(Error::Format(format!("label must be 0 or 1, got {other}"))),
            };
            Ok(Example { point: PointId(row.point), label })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Dataset::new(examples))
}

pub fn write_dataset<W: Write>(data: &Dataset, writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    for e in &data.examples {
        w.serialize(Row { point: e.point.0, label: u8::from(e.label) })?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TreeNodeRecord {
    pub point: u32,
    /// `None` for children of the root.
    pub parent: Option<u32>,
    pub depth: usize,
    pub proper: bool,
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TreeRecord {
    pub nodes: Vec<TreeNodeRecord>,
}

/// Nodes in DFS order with their parents, depths and properness.
pub fn tree_record(tree: &ClassTree) -> TreeRecord {
    let nodes = tree
        .points()
        .iter()
        .map(|&p| TreeNodeRecord {
            point: p.0,
            parent: tree.parent(p).point().map(|q| q.0),
            depth: tree.depth(p.into()),
            proper: tree.is_proper(p.into()),
        })
        .collect();
    TreeRecord { nodes }
}

/// Graphviz rendering; proper nodes are drawn with a double border.
pub fn tree_dot(tree: &ClassTree) -> String {
    let mut s = String::from("digraph tree {\n  root [label=\"∅\", shape=doublecircle];\n");
    for &p in tree.points() {
        let shape = if tree.is_proper(p.into()) { "doublecircle" } else { "circle" };
        let _ = writeln!(s, "  x{p} [label=\"{p}\", shape={shape}];");
        let parent = match tree.parent(p) {
            Node::Root => "root".to_string(),
            Node::Point(q) => format!("x{q}"),
        };
        let _ = writeln!(s, "  {parent} -> x{p};");
    }
    s.push_str("}\n");
    s
}
