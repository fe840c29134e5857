use std::fmt::Write;

use crate::corpus::serialize_tile;
use crate::graph::MorphismClass;
use crate::termination::{ProofState, RuleVerdict, SlideReport, Status, TileConfig};

fn class_phrase(class: MorphismClass) -> &'static str {
    match class {
        MorphismClass::Mono => "counting MONOS only",
        MorphismClass::RegularMono => "counting REGULAR MONOS only",
        MorphismClass::Hom => "counting HOMOMORPHISMS",
    }
}

fn conclusion(status: Status) -> &'static str {
    match status {
        Status::Decreasing => "the rule is PROVABLY DECREASING",
        Status::NonIncreasing => "the rule is PROVABLY NONINCREASING (but not provably decreasing)",
        Status::Unknown => "the rule is POSSIBLY INCREASING",
    }
}

fn names<'a>(verdicts: impl Iterator<Item = &'a RuleVerdict>) -> String {
    verdicts.map(|v| v.rule.as_str()).collect::<Vec<_>>().join(", ")
}

/// The report printed after `use`. `before` is the state that was
/// analyzed and `after` the state returned by the analysis.
pub fn render_report(
    verdicts: &[RuleVerdict],
    cfg: &TileConfig,
    before: &ProofState,
    after: &ProofState,
) -> String {
    let mut s = String::new();
    let w = &mut s;
    let by = |st: Status| verdicts.iter().filter(move |v| v.status == st);
    let pruned = after.stages().len() > before.stages().len();

    writeln!(w).unwrap();
    writeln!(w, "=============== SYSTEM TERMINATION REPORT ===============").unwrap();
    writeln!(w, "---------------          SUMMARY          ---------------").unwrap();
    writeln!(w).unwrap();
    writeln!(w, "The system has {} rules, named: {}", verdicts.len(), names(verdicts.iter())).unwrap();
    let all_slid = verdicts.iter().all(RuleVerdict::slides_successful);
    writeln!(w, "Was the sliding successful for every rule? {}", if all_slid { "yes" } else { "no" }).unwrap();
    writeln!(w, "Provably decreasing rules: {}", names(by(Status::Decreasing))).unwrap();
    writeln!(w, "Provably nonincreasing (but not provably decreasing) rules: {}", names(by(Status::NonIncreasing)))
        .unwrap();
    writeln!(w, "Possibly increasing rules: {}", names(by(Status::Unknown))).unwrap();
    writeln!(w, "The pruned system contains rules: {}", after.remaining_names().join(", ")).unwrap();
    writeln!(w).unwrap();
    if after.is_proven() {
        writeln!(w, "The pruned system is empty, so the system is TERMINATING.").unwrap();
    } else if !pruned {
        writeln!(w, "Some rules are possibly increasing, so no rules were pruned.").unwrap();
    } else {
        writeln!(w, "The pruned system is not empty, so termination is not yet proven.").unwrap();
    }
    writeln!(w).unwrap();
    writeln!(w, "---------------   DETAILED RULE REPORTS   ---------------").unwrap();

    for v in verdicts {
        writeln!(w).unwrap();
        render_rule(w, v, cfg);
    }
    s
}

fn render_rule(w: &mut String, v: &RuleVerdict, cfg: &TileConfig) {
    writeln!(w, ">>>>>>>>>>>>>>> rule {} <<<<<<<<<<<<<<<", v.rule).unwrap();
    writeln!(w, "Summary:").unwrap();
    let ok = if v.slides_successful() { "SUCCESSFUL" } else { "UNSUCCESSFUL" };
    writeln!(w, "- The sliding is {ok}.").unwrap();
    writeln!(w, "- The weight of Delta is {}.", v.delta_weight()).unwrap();
    writeln!(w, "- The weight of R is {}.", v.r_weight()).unwrap();
    writeln!(w, "- Conclusion: {}.", conclusion(v.status)).unwrap();
    for note in &v.notes {
        writeln!(w, "- Note: {note}.").unwrap();
    }
    if v.reports.is_empty() {
        return;
    }
    writeln!(w).unwrap();
    writeln!(w, "The details per tile for this rule now follow.").unwrap();
    for r in &v.reports {
        writeln!(w).unwrap();
        render_tile(w, r, cfg);
    }
}

fn render_tile(w: &mut String, r: &SlideReport, cfg: &TileConfig) {
    writeln!(w, "~~~ Tile {} with weight {}, {}", r.tile, r.weight, class_phrase(r.class)).unwrap();
    if let Some(e) = cfg.entries().iter().find(|e| e.tile.name == r.tile) {
        write!(w, "{}", serialize_tile(&e.tile.graph)).unwrap();
    }
    writeln!(w).unwrap();
    let row = |w: &mut String, label: &str, value: String| writeln!(w, "{label:<40}{value}").unwrap();
    row(w, "- The tiling of R has size:", r.iso_in_r.to_string());
    row(w, "- Giving a weight of:", format!("{} * {} = {}", r.iso_in_r, r.weight, r.r_weight()));
    row(w, "- A largest valid tiling of L has size:", r.delta_size().to_string());
    row(w, "- Giving a weight of:", format!("{} * {} = {}", r.delta_size(), r.weight, r.delta_weight()));
    writeln!(w).unwrap();
    writeln!(w, "Slide data:").unwrap();
    writeln!(w).unwrap();
    let row = |w: &mut String, label: &str, value: String| writeln!(w, "{label:<31}{value}").unwrap();
    row(w, "# morphisms into R':", r.hom_into_r1.to_string());
    row(w, "# of which valid:", r.valid.to_string());
    row(w, "# iso in R:", r.iso_in_r.to_string());
    row(w, "# noniso in R:", r.noniso_in_r.to_string());
    let ways = if r.ways_capped { format!("{}+", r.ways_to_slide) } else { r.ways_to_slide.to_string() };
    row(w, "# number of ways to slide:", ways);
    if let Some(f) = &r.slide_failure {
        writeln!(w).unwrap();
        writeln!(w, "Sliding failed: {f}.").unwrap();
    }
}
