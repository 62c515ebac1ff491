//! `G′` from certified exact sequences.

use super::{ClassModel, GroupPresentation};
use crate::catalog::{get_sequence, ModelDescriptor};
use crate::field::Field;
use crate::modres::is_sequence_exact;

/// A presentation together with what happened to each candidate sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GprimeBuild {
    pub group: GroupPresentation,
    /// `(sequence name, certified)` in catalog order.
    pub sequences: Vec<(String, bool)>,
    pub warnings: Vec<String>,
}

/// Certifies every relation sequence of the model through `cutoff` and keeps
/// the certified ones as relations `B + A - E = 0`, twists erased.
pub fn build_gprime<F: Field>(model: &ModelDescriptor<F>, cutoff: i64) -> GprimeBuild {
    let classes: &ClassModel = &model.classes;
    let mut group = GroupPresentation::free(classes);
    let mut sequences = Vec::new();
    let mut warnings = Vec::new();
    for name in &model.relation_sequences {
        let certified = match get_sequence::<F>(name, 1) {
            Ok(seq) => {
                let report = is_sequence_exact(&seq.first, &seq.second, cutoff);
                if report.pass() {
                    let rel = (|| -> Result<Vec<i64>, super::KgroupError> {
                        let a = classes.class_vector(&seq.classes[0])?;
                        let e = classes.class_vector(&seq.classes[1])?;
                        let b = classes.class_vector(&seq.classes[2])?;
                        Ok((0..a.len()).map(|k| a[k] + b[k] - e[k]).collect())
                    })();
                    match rel {
                        Ok(r) => {
                            group.relations.push((name.clone(), r));
                            true
                        }
                        Err(e) => {
                            warnings.push(format!("{name}: {e}"));
                            false
                        }
                    }
                } else {
                    let why = report.first_failure().map(|c| format!("{} at degree {}", c.condition, c.degree));
                    warnings.push(format!("{name}: not certified ({})", why.unwrap_or_default()));
                    false
                }
            }
            Err(e) => {
                warnings.push(format!("{name}: {e}"));
                false
            }
        };
        sequences.push((name.clone(), certified));
    }
    if group.relations.is_empty() {
        warnings.push(format!("{}: no certified sequences, G' is free", classes.name));
    }
    GprimeBuild { group, sequences, warnings }
}
