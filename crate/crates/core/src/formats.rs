//! JSON file formats: `interval-system/v1`, `pillar-assignment/v1`,
//! `coloring/v1`. Systems are rank-encoded on save, so a saved file is the
//! canonical form of the instance. Coloring files embed the pillar list,
//! which makes verification self-contained: a system file plus a coloring
//! file is enough to recompute the assignment and check every claim.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval_system::IntervalSystem;
use crate::perm_coloring::{ClassColoring, IntervalColorRecord};
use crate::pillar_assignment::{Pillar, PillarAssignmentState};

pub const SYSTEM_FORMAT: &str = "interval-system/v1";
pub const ASSIGNMENT_FORMAT: &str = "pillar-assignment/v1";
pub const COLORING_FORMAT: &str = "coloring/v1";

fn expect_format(found: &str, expected: &'static str) -> Result<()> {
    if found == expected {
        Ok(())
    } else {
        Err(Error::BadFormat { found: found.to_string(), expected: expected.to_string() })
    }
}

#[derive(Serialize, Deserialize)]
struct SystemFile {
    format: String,
    intervals: Vec<(i64, i64)>,
}

pub fn save_system(system: &IntervalSystem) -> String {
    let file = SystemFile { format: SYSTEM_FORMAT.to_string(), intervals: system.rank_pairs() };
    let mut s = serde_json::to_string_pretty(&file).expect("system serialization");
    s.push('\n');
    s
}

pub fn load_system(text: &str) -> Result<IntervalSystem> {
    let file: SystemFile = serde_json::from_str(text)?;
    expect_format(&file.format, SYSTEM_FORMAT)?;
    IntervalSystem::normalize(&file.intervals)
}

#[derive(Serialize, Deserialize)]
struct AssignmentFile {
    format: String,
    pillars: Vec<Pillar>,
    assignment: Vec<Option<usize>>,
}

pub fn save_assignment(state: &PillarAssignmentState) -> String {
    let file = AssignmentFile {
        format: ASSIGNMENT_FORMAT.to_string(),
        pillars: state.pillars().to_vec(),
        assignment: state.assignment().to_vec(),
    };
    let mut s = serde_json::to_string_pretty(&file).expect("assignment serialization");
    s.push('\n');
    s
}

/// Rebuilds the state over `system` and cross-checks the stored assignment
/// against the recomputed one, so edited files cannot smuggle in an
/// assignment that containment and pillar order do not actually produce.
pub fn load_assignment(text: &str, system: IntervalSystem) -> Result<PillarAssignmentState> {
    let file: AssignmentFile = serde_json::from_str(text)?;
    expect_format(&file.format, ASSIGNMENT_FORMAT)?;
    let state = PillarAssignmentState::with_pillars(system, file.pillars)?;
    if state.assignment() != file.assignment.as_slice() {
        return Err(Error::BadFormat {
            found: "assignment inconsistent with pillar containment".to_string(),
            expected: "assignment produced by the stored pillars".to_string(),
        });
    }
    Ok(state)
}

#[derive(Serialize, Deserialize)]
struct ColoringEntry {
    index: usize,
    pillar: usize,
    class_color: u32,
    fiber_color: u32,
    final_color: u32,
}

#[derive(Serialize, Deserialize)]
struct ColoringSummary {
    n: usize,
    num_classes: usize,
    num_final_colors: usize,
}

#[derive(Serialize, Deserialize)]
struct ColoringFile {
    format: String,
    pillars: Vec<Pillar>,
    intervals: Vec<ColoringEntry>,
    summary: ColoringSummary,
}

pub fn save_coloring(state: &PillarAssignmentState, coloring: &ClassColoring) -> String {
    let file = ColoringFile {
        format: COLORING_FORMAT.to_string(),
        pillars: state.pillars().to_vec(),
        intervals: coloring
            .records
            .iter()
            .enumerate()
            .map(|(index, r)| ColoringEntry {
                index,
                pillar: r.pillar,
                class_color: r.class_color,
                fiber_color: r.fiber_color,
                final_color: r.final_color,
            })
            .collect(),
        summary: ColoringSummary {
            n: coloring.records.len(),
            num_classes: coloring.num_classes,
            num_final_colors: coloring.num_final_colors,
        },
    };
    let mut s = serde_json::to_string_pretty(&file).expect("coloring serialization");
    s.push('\n');
    s
}

/// Loads a coloring against its system, reconstructing the assignment state
/// from the embedded pillars. Indices must be exactly `0..n` in order and the
/// summary must match the records; semantic problems (improper colors, broken
/// certificates) are left to the verifiers.
pub fn load_coloring(
    text: &str,
    system: IntervalSystem,
) -> Result<(PillarAssignmentState, ClassColoring)> {
    let file: ColoringFile = serde_json::from_str(text)?;
    expect_format(&file.format, COLORING_FORMAT)?;
    let n = system.n();
    if file.intervals.len() != n || file.summary.n != n {
        return Err(Error::BadFormat {
            found: format!(
                "{} interval entries, summary n = {}",
                file.intervals.len(),
                file.summary.n
            ),
            expected: format!("{n} entries matching the system"),
        });
    }
    for (i, e) in file.intervals.iter().enumerate() {
        if e.index != i {
            return Err(Error::BadFormat {
                found: format!("entry {i} carries index {}", e.index),
                expected: "entries ordered by index".to_string(),
            });
        }
    }
    let records: Vec<IntervalColorRecord> = file
        .intervals
        .iter()
        .map(|e| IntervalColorRecord {
            pillar: e.pillar,
            class_color: e.class_color,
            fiber_color: e.fiber_color,
            final_color: e.final_color,
        })
        .collect();
    let num_classes = records
        .iter()
        .map(|r| r.class_color)
        .collect::<std::collections::BTreeSet<_>>()
        .len();
    let num_final_colors = records
        .iter()
        .map(|r| r.final_color)
        .collect::<std::collections::BTreeSet<_>>()
        .len();
    if num_classes != file.summary.num_classes
        || num_final_colors != file.summary.num_final_colors
    {
        return Err(Error::BadFormat {
            found: format!(
                "summary ({}, {})",
                file.summary.num_classes, file.summary.num_final_colors
            ),
            expected: format!("summary matching records ({num_classes}, {num_final_colors})"),
        });
    }
    let state = PillarAssignmentState::with_pillars(system, file.pillars)?;
    let coloring = ClassColoring { records, num_classes, num_final_colors };
    Ok((state, coloring))
}
