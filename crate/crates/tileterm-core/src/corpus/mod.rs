//! Reading and writing systems, tiles and workspaces.

mod parse;
mod serialize;
mod workspace;

pub use parse::{
    build_rule, infer_morphism, parse_graph, parse_rule_graphs, parse_system, ParseError, Pos,
    RuleGraphs,
};
pub use serialize::{serialize_graph, serialize_system, serialize_tile};
pub use workspace::{
    display_name, LoadWarning, SystemFile, TileFile, Workspace, WorkspaceError, SYSTEM_EXTENSION,
};
