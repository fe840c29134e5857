//! Rendering analysis results as text and as serializable data.

pub mod dto;
mod text;

pub use text::render_report;
