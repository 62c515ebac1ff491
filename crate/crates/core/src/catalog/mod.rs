//! The five geometric models with explicit coordinates, their rank one
//! modules, exact sequences, matrix factorizations and resolution patterns.
//!
//! All constructions are deterministic; the same objects are serialized to
//! the data directory (see [`files`]).

mod files;
mod mfs;
mod sequences;

pub use files::{
    catalog_files, manifest, reformat, sha256_hex, verify_data_dir, write_data_dir, DataError, MANIFEST_NAME,
};
pub use mfs::{gaussian_substitution, get_mf, r1_in_ab, takes_level, MF_NAMES};
pub use sequences::{
    get_extension, get_sequence, ExtensionTemplate, SequenceTemplate, EXTENSION_NAMES, SEQUENCE_NAMES,
};

use std::sync::Arc;

use thiserror::Error;

use crate::field::Field;
use crate::kgroup::{ClassModel, DivisorClass, KgroupError, SheafClassVector};
use crate::matfac::MfError;
use crate::matrix::PolyMatrix;
use crate::modres::{GradedModule, ModuleError};
use crate::poly::{Polynomial, RingError};
use crate::ring::GradedRing;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown catalog entry `{0}`")]
    UnknownName(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("this entry needs a field containing a square root of -1")]
    NeedsI,
    #[error(transparent)]
    Mf(#[from] MfError),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Classes(#[from] KgroupError),
}

pub const MODEL_NAMES: [&str; 5] =
    ["quadric-surface", "quadric-cone-p3", "quadric-threefold-cone", "cubic-scroll", "veronese"];

/// A model: its coordinate ring, named rank one modules (and higher rank
/// ones where the paper displays them), class data and catalog entries.
#[derive(Clone, Debug)]
pub struct ModelDescriptor<F: Field> {
    pub name: String,
    pub ring: Arc<GradedRing<F>>,
    /// `(label, module)`; labels match the class model, `O` first.
    pub modules: Vec<(String, Arc<GradedModule<F>>)>,
    pub classes: ClassModel,
    /// Sequences contributing relations to `G′`.
    pub relation_sequences: Vec<String>,
    /// Sequences certifying layerings of higher rank sheaves.
    pub layering_sequences: Vec<String>,
    pub extensions: Vec<String>,
    pub mf_templates: Vec<String>,
}

impl<F: Field> ModelDescriptor<F> {
    pub fn module(&self, label: &str) -> Option<&Arc<GradedModule<F>>> {
        self.modules.iter().find(|(l, _)| l == label).map(|(_, m)| m)
    }

    /// The labelled module twisted by `a`.
    pub fn twisted(&self, label: &str, a: i64) -> Result<Arc<GradedModule<F>>, CatalogError> {
        let m = self.module(label).ok_or_else(|| CatalogError::UnknownName(format!("{}/{label}", self.name)))?;
        Ok(Arc::new(m.twist(a)))
    }
}

fn class(v: &[i64]) -> DivisorClass {
    DivisorClass { coords: v.to_vec() }
}

fn class_model(name: &str, basis: &[&str], h: &[i64], gens: &[(&str, &[i64])], layered: &[(&str, &str)]) -> ClassModel {
    ClassModel {
        name: name.into(),
        basis: basis.iter().map(|s| s.to_string()).collect(),
        hyperplane: class(h),
        generators: gens.iter().map(|(l, c)| (l.to_string(), class(c))).collect(),
        layered: layered
            .iter()
            .map(|(l, v)| (l.to_string(), SheafClassVector::parse(v).expect("catalog vector")))
            .collect(),
    }
}

/// Class data alone, without building rings.
pub fn get_classes(name: &str) -> Result<ClassModel, CatalogError> {
    Ok(match name {
        "quadric-surface" => {
            class_model(name, &["L", "M"], &[1, 1], &[("O", &[0, 0]), ("I_L", &[-1, 0]), ("I_M", &[0, -1])], &[])
        }
        "quadric-cone-p3" => class_model(name, &["L"], &[2], &[("O", &[0]), ("I_L", &[-1])], &[]),
        "quadric-threefold-cone" => {
            class_model(name, &["D", "E"], &[1, 1], &[("O", &[0, 0]), ("I_D", &[-1, 0]), ("I_E", &[0, -1])], &[])
        }
        "cubic-scroll" => class_model(
            name,
            &["H", "F"],
            &[1, 0],
            &[("O", &[0, 0]), ("I_F", &[0, -1]), ("I_H-F", &[-1, 1]), ("I_H-2F", &[-1, 2])],
            &[("E0", "I_F(-1) + I_H-2F(-1)")],
        ),
        "veronese" => class_model(name, &["C"], &[2], &[("O", &[0]), ("I_C", &[-1])], &[]),
        _ => return Err(CatalogError::UnknownName(name.to_string())),
    })
}

fn quotient<F: Field>(names: &[&str], ideal: &[&str]) -> Arc<GradedRing<F>> {
    let w = vec![1; names.len()];
    Arc::new(GradedRing::from_strings(names, &w, ideal).expect("valid catalog ring"))
}

/// Coordinate ring of a model.
pub fn model_ring<F: Field>(name: &str) -> Result<Arc<GradedRing<F>>, CatalogError> {
    Ok(match name {
        "quadric-surface" => quotient(&["x", "y", "z", "w"], &["x*w - y*z"]),
        "quadric-cone-p3" => quotient(&["x", "u", "v", "t"], &["x^2 + u*v"]),
        "quadric-threefold-cone" => quotient(&["x", "y", "u", "v", "t"], &["x^2 + y^2 + u*v"]),
        "cubic-scroll" => {
            quotient(&["x0", "x1", "x2", "x3", "x4"], &["x0*x2 - x1^2", "x0*x4 - x1*x3", "x1*x4 - x2*x3"])
        }
        "veronese" => quotient(
            &["z00", "z01", "z02", "z11", "z12", "z22"],
            &[
                "z00*z11 - z01^2",
                "z00*z12 - z01*z02",
                "z00*z22 - z02^2",
                "z01*z12 - z02*z11",
                "z01*z22 - z02*z12",
                "z11*z22 - z12^2",
            ],
        ),
        _ => return Err(CatalogError::UnknownName(name.to_string())),
    })
}

fn ideal<F: Field>(r: &Arc<GradedRing<F>>, gens: &[Polynomial<F>]) -> Result<Arc<GradedModule<F>>, CatalogError> {
    Ok(Arc::new(GradedModule::ideal(r.clone(), gens, 0)?))
}

/// The scroll's rank two sheaf `E₀` as the submodule of `R(-1)³` spanned by
/// the six linear syzygies of `(x0, x1, x3)`.
pub fn scroll_e0<F: Field>(r: &Arc<GradedRing<F>>) -> Result<GradedModule<F>, CatalogError> {
    let cols = [
        ["x1", "-x0", "0"],
        ["x2", "-x1", "0"],
        ["x4", "-x3", "0"],
        ["x3", "0", "-x0"],
        ["0", "x3", "-x1"],
        ["0", "x4", "-x2"],
    ];
    let cols: Vec<Vec<Polynomial<F>>> = cols.iter().map(|c| c.iter().map(|s| r.p(s)).collect()).collect();
    let m = PolyMatrix::from_columns(cols, 3, r.nvars());
    Ok(crate::modres::submodule(r, &[1, 1, 1], &m)?)
}

pub fn get_model<F: Field>(name: &str) -> Result<ModelDescriptor<F>, CatalogError> {
    let r = model_ring::<F>(name)?;
    let classes = get_classes(name)?;
    let free = Arc::new(GradedModule::free(r.clone(), vec![0]));
    let mut modules = vec![("O".to_string(), free)];
    let strs = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    let (relation_sequences, layering_sequences, extensions, mf_templates) = match name {
        "quadric-surface" => {
            modules.push(("I_L".into(), ideal(&r, &[r.p("x"), r.p("y")])?));
            modules.push(("I_M".into(), ideal(&r, &[r.p("x"), r.p("z")])?));
            (strs(&["quadric-surface-C"]), vec![], vec![], vec![])
        }
        "quadric-cone-p3" => {
            modules.push(("I_L".into(), ideal(&r, &[r.p("x"), r.p("u")])?));
            (strs(&["cone-C"]), vec![], strs(&["cone-ext"]), strs(&["bgs-i", "bgs-ii", "bgs-iii", "cone-4x4"]))
        }
        "quadric-threefold-cone" => {
            let (a, _) = mfs::ab(&r)?;
            modules.push(("I_D".into(), ideal(&r, &[a.clone(), r.p("u")])?));
            modules.push(("I_E".into(), ideal(&r, &[a, r.p("v")])?));
            (
                strs(&["threefold-C"]),
                vec![],
                strs(&["threefold-ext-d", "threefold-ext-e"]),
                strs(&["r1-a", "r1-b", "r1-c", "r1-d", "r1-e", "r3-d", "r3-e", "r3-d-display"]),
            )
        }
        "cubic-scroll" => {
            modules.push(("I_F".into(), ideal(&r, &[r.p("x0"), r.p("x1"), r.p("x3")])?));
            modules.push(("I_H-F".into(), ideal(&r, &[r.p("x3"), r.p("x4")])?));
            modules.push(("I_H-2F".into(), ideal(&r, &[r.p("x0"), r.p("x1"), r.p("x2")])?));
            modules.push(("E0".into(), Arc::new(scroll_e0(&r)?)));
            (strs(&["scroll-2", "scroll-3"]), strs(&["scroll-1"]), vec![], vec![])
        }
        "veronese" => {
            let ic = ideal(&r, &[r.p("z00"), r.p("z01"), r.p("z02")])?;
            modules.push(("E0".into(), Arc::new(crate::modres::syzygy_module(&ic)?)));
            modules.insert(1, ("I_C".into(), ic));
            (vec![], vec![], vec![], vec![])
        }
        _ => unreachable!("ring lookup rejects unknown models"),
    };
    Ok(ModelDescriptor {
        name: name.to_string(),
        ring: r,
        modules,
        classes,
        relation_sequences,
        layering_sequences,
        extensions,
        mf_templates,
    })
}

pub const PATTERN_NAMES: [&str; 6] =
    ["point", "two-points", "three-general", "three-collinear", "six-points", "determinantal"];

/// `(E, N)` for a resolution `0 -> E -> N -> I_Z(a) -> 0` on the Veronese
/// surface. `n` is used only by `determinantal` and must be even and positive.
pub fn get_resolution_pattern(
    name: &str,
    n: Option<i64>,
) -> Result<(SheafClassVector, SheafClassVector), CatalogError> {
    let v = |s: &str| SheafClassVector::parse(s).expect("catalog vector");
    Ok(match name {
        "point" => (v("O(-1)"), v("2*I_C")),
        "two-points" => (v("I_C(-1)"), v("O(-1) + I_C")),
        "three-general" => (v("2*I_C"), v("3*O")),
        // line and cubic in the plane: O(-4) -> O(-1) + O(-3) on P^2
        "three-collinear" => (v("O(-2)"), v("I_C + I_C(-1)")),
        "six-points" => (v("3*O(-1)"), v("4*I_C")),
        "determinantal" => {
            let n = n.ok_or_else(|| CatalogError::InvalidParameter("determinantal needs n".into()))?;
            if n <= 0 || n % 2 != 0 {
                return Err(CatalogError::InvalidParameter(format!("n must be even and positive, got {n}")));
            }
            let h = n / 2;
            let e = SheafClassVector::new().with("I_C", -h, n as usize);
            let nn = SheafClassVector::new().with("O", -h, n as usize + 1);
            (e, nn)
        }
        _ => return Err(CatalogError::UnknownName(name.to_string())),
    })
}

/// `S₃/(x, y, u, v, t^d)` as a module over the threefold cone.
pub fn rao_module<F: Field>(d: u32) -> Result<GradedModule<F>, CatalogError> {
    if d < 1 {
        return Err(CatalogError::InvalidParameter("d must be at least 1".into()));
    }
    let r = model_ring::<F>("quadric-threefold-cone")?;
    let rels: Vec<Polynomial<F>> = ["x", "y", "u", "v"].iter().map(|s| r.var(s)).chain([r.var("t").pow(d)]).collect();
    let n = r.nvars();
    Ok(GradedModule::new(r, vec![0], PolyMatrix::from_rows(vec![rels], n))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Gaussian, Rational};
    use crate::matfac::verify_mf;

    #[test]
    fn every_template_verifies() {
        for name in MF_NAMES {
            for l in 1..=3 {
                let m = get_mf::<Gaussian>(name, l).unwrap();
                assert!(verify_mf(&m).pass(), "{name} l={l}: {:?}", verify_mf(&m).failure);
            }
        }
        assert!(matches!(get_mf::<Gaussian>("bgs-iii", 0), Err(CatalogError::InvalidParameter(_))));
        assert!(matches!(get_mf::<Rational>("r1-b", 1), Err(CatalogError::NeedsI)));
    }

    #[test]
    fn scroll_hilbert_numbers() {
        let m = get_model::<Rational>("cubic-scroll").unwrap();
        let e0 = m.module("E0").unwrap();
        assert_eq!(e0.num_gens(), 6);
        assert_eq!((e0.hilbert(1), e0.hilbert(2)), (0, 6));
        let at2 = |l: &str, a: i64| m.twisted(l, a).unwrap().hilbert(2);
        assert_eq!([at2("O", -2), at2("I_F", -1), at2("I_H-F", -1), at2("I_H-2F", -1)], [1, 3, 2, 3]);
    }

    #[test]
    fn rao_modules() {
        for d in 1..=4u32 {
            let m = rao_module::<Gaussian>(d).unwrap();
            let hf: Vec<usize> = (0..=d as i64 + 1).map(|k| m.hilbert(k)).collect();
            let mut want = vec![1; d as usize];
            want.extend([0, 0]);
            assert_eq!(hf, want);
        }
    }
}
