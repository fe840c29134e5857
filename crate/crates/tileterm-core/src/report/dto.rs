//! Serializable views of analysis results, shared by the batch `--json`
//! output and the HTTP API.

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, MorphismClass};
use crate::pbpo::PbpoRule;
use crate::termination::{ProofState, RuleVerdict, SlideReport, Stage, Status, TileConfig};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexDto {
    pub id: String,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeDto {
    pub id: String,
    /// Vertex id.
    pub src: String,
    pub tgt: String,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDto {
    pub vertices: Vec<VertexDto>,
    pub edges: Vec<EdgeDto>,
}

impl From<&Graph> for GraphDto {
    fn from(g: &Graph) -> GraphDto {
        GraphDto {
            vertices: g.vertices().iter().map(|v| VertexDto { id: v.id.clone(), label: v.label.clone() }).collect(),
            edges: g
                .edges()
                .iter()
                .map(|e| EdgeDto {
                    id: e.id.clone(),
                    src: g.vertices()[e.src].id.clone(),
                    tgt: g.vertices()[e.tgt].id.clone(),
                    label: e.label.clone(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RuleDto {
    pub name: String,
    pub l: GraphDto,
    pub l_prime: GraphDto,
    pub k: GraphDto,
    pub k_prime: GraphDto,
    pub r: GraphDto,
    pub r_prime: GraphDto,
}

impl From<&PbpoRule> for RuleDto {
    fn from(r: &PbpoRule) -> RuleDto {
        RuleDto {
            name: r.name().to_string(),
            l: r.lhs().into(),
            l_prime: r.lhs_type().into(),
            k: r.interface().into(),
            k_prime: r.interface_type().into(),
            r: r.rhs().into(),
            r_prime: r.rhs_type().into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SlideReportDto {
    pub tile: String,
    pub weight: u64,
    pub class: MorphismClass,
    pub hom_into_r1: usize,
    pub valid: usize,
    pub iso_in_r: usize,
    pub noniso_in_r: usize,
    pub ways_to_slide: usize,
    pub ways_capped: bool,
    pub delta_size: usize,
    pub delta_weight: u64,
    pub r_weight: u64,
    pub slide_successful: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub slide_failure: Option<String>,
}

impl From<&SlideReport> for SlideReportDto {
    fn from(r: &SlideReport) -> SlideReportDto {
        SlideReportDto {
            tile: r.tile.clone(),
            weight: r.weight,
            class: r.class,
            hom_into_r1: r.hom_into_r1,
            valid: r.valid,
            iso_in_r: r.iso_in_r,
            noniso_in_r: r.noniso_in_r,
            ways_to_slide: r.ways_to_slide,
            ways_capped: r.ways_capped,
            delta_size: r.delta_size(),
            delta_weight: r.delta_weight(),
            r_weight: r.r_weight(),
            slide_successful: r.slide_successful(),
            slide_failure: r.slide_failure.as_ref().map(ToString::to_string),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RuleVerdictDto {
    pub rule: String,
    pub status: Status,
    pub slides_successful: bool,
    pub delta_weight: u64,
    pub r_weight: u64,
    pub notes: Vec<String>,
    pub reports: Vec<SlideReportDto>,
}

impl From<&RuleVerdict> for RuleVerdictDto {
    fn from(v: &RuleVerdict) -> RuleVerdictDto {
        RuleVerdictDto {
            rule: v.rule.clone(),
            status: v.status,
            slides_successful: v.slides_successful(),
            delta_weight: v.delta_weight(),
            r_weight: v.r_weight(),
            notes: v.notes.clone(),
            reports: v.reports.iter().map(Into::into).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TileEntryDto {
    pub tile_id: String,
    pub weight: u64,
    pub class: MorphismClass,
}

pub fn entries_dto(cfg: &TileConfig) -> Vec<TileEntryDto> {
    cfg.entries()
        .iter()
        .map(|e| TileEntryDto { tile_id: e.tile.name.clone(), weight: e.weight, class: e.class })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct StageDto {
    pub entries: Vec<TileEntryDto>,
    pub verdicts: Vec<RuleVerdictDto>,
    pub pruned: Vec<String>,
}

impl From<&Stage> for StageDto {
    fn from(s: &Stage) -> StageDto {
        StageDto {
            entries: entries_dto(&s.config),
            verdicts: s.verdicts.iter().map(Into::into).collect(),
            pruned: s.pruned.clone(),
        }
    }
}

/// The outcome of one analysis request.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct AnalysisDto {
    pub verdicts: Vec<RuleVerdictDto>,
    /// Whether a stage was recorded. False when some rule is unknown.
    pub pruned: bool,
    pub pruned_rules: Vec<String>,
    pub remaining_rules: Vec<String>,
    pub terminating: bool,
}

impl AnalysisDto {
    pub fn new(verdicts: &[RuleVerdict], before: &ProofState, after: &ProofState) -> AnalysisDto {
        let pruned = after.stages().len() > before.stages().len();
        AnalysisDto {
            verdicts: verdicts.iter().map(Into::into).collect(),
            pruned,
            pruned_rules: if pruned { after.stages().last().map(|s| s.pruned.clone()).unwrap_or_default() } else { Vec::new() },
            remaining_rules: after.remaining_names(),
            terminating: after.is_proven(),
        }
    }
}

/// A whole proof transcript.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TranscriptDto {
    pub system: String,
    pub rules: Vec<String>,
    pub remaining_rules: Vec<String>,
    pub terminating: bool,
    pub stages: Vec<StageDto>,
}

impl From<&ProofState> for TranscriptDto {
    fn from(s: &ProofState) -> TranscriptDto {
        TranscriptDto {
            system: s.system().to_string(),
            rules: s.original().iter().map(|r| r.name().to_string()).collect(),
            remaining_rules: s.remaining_names(),
            terminating: s.is_proven(),
            stages: s.stages().iter().map(Into::into).collect(),
        }
    }
}
