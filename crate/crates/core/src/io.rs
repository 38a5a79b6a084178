//! Topology JSON files and the built-in example topologies.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::topology::{Edge, FixedEdge, Topology};

/// On-disk form of a topology. Unknown keys are rejected.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TopologyFile {
    pub name: String,
    pub vertices: Vec<String>,
    pub edges: Vec<Edge>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fixed: Option<FixedFile>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixedFile {
    pub edge: usize,
    pub value: u8,
}

impl TopologyFile {
    pub fn into_topology(self) -> Result<Topology, Error> {
        let fixed = match self.fixed {
            None => None,
            Some(FixedFile { edge, value: 0 }) => Some(FixedEdge::new(edge, false)),
            Some(FixedFile { edge, value: 1 }) => Some(FixedEdge::new(edge, true)),
            Some(FixedFile { value, .. }) => {
                return Err(Error::Format(format!("fixed.value must be 0 or 1, got {value}")))
            }
        };
        Ok(Topology::new(self.name, self.vertices, self.edges, fixed)?)
    }

    pub fn from_topology(topology: &Topology) -> Self {
        Self {
            name: topology.name().to_string(),
            vertices: topology.vertices().to_vec(),
            edges: topology.edges().to_vec(),
            fixed: topology
                .fixed()
                .map(|f| FixedFile { edge: f.edge, value: u8::from(f.value) }),
        }
    }
}

pub fn parse_topology(json: &str) -> Result<Topology, Error> {
    let file: TopologyFile =
        serde_json::from_str(json).map_err(|e| Error::Format(e.to_string()))?;
    file.into_topology()
}

pub fn load_topology(path: impl AsRef<Path>) -> Result<Topology, Error> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Format(format!("{}: {e}", path.display())))?;
    parse_topology(&text)
}

pub const BUBBLE_JSON: &str = include_str!("../topologies/bubble.json");
pub const TRIANGLE_JSON: &str = include_str!("../topologies/triangle.json");
pub const FOUR_ELOOP_JSON: &str = include_str!("../topologies/four-eloop.json");

/// Built-in topology by name: `bubble`, `triangle` or `four-eloop`.
pub fn builtin(name: &str) -> Option<Topology> {
    let json = match name {
        "bubble" => BUBBLE_JSON,
        "triangle" => TRIANGLE_JSON,
        "four-eloop" => FOUR_ELOOP_JSON,
        _ => return None,
    };
    Some(parse_topology(json).expect("built-in topologies are valid"))
}
