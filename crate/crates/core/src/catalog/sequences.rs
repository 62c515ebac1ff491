//! Short exact sequences and extensions with explicit maps.

use std::sync::Arc;

use super::{get_mf, get_model, CatalogError};
use crate::field::Field;
use crate::kgroup::SheafClassVector;
use crate::matfac::cokernel_module;
use crate::matrix::PolyMatrix;
use crate::modres::{GradedModule, ModuleMap};

pub const SEQUENCE_NAMES: [&str; 6] =
    ["quadric-surface-C", "scroll-1", "scroll-2", "scroll-3", "cone-C", "threefold-C"];

pub const EXTENSION_NAMES: [&str; 3] = ["cone-ext", "threefold-ext-d", "threefold-ext-e"];

/// `0 -> A -first-> E -second-> B -> 0` with the classes of `A`, `E`, `B`.
#[derive(Clone, Debug)]
pub struct SequenceTemplate<F: Field> {
    pub name: String,
    pub model: String,
    pub first: ModuleMap<F>,
    pub second: ModuleMap<F>,
    pub classes: [SheafClassVector; 3],
}

/// `E` with the expected sub and quotient of `0 -> A -> E -> B -> 0`.
#[derive(Clone, Debug)]
pub struct ExtensionTemplate<F: Field> {
    pub name: String,
    pub e: Arc<GradedModule<F>>,
    pub sub: Arc<GradedModule<F>>,
    pub quot: Arc<GradedModule<F>>,
}

fn vector(s: &str) -> SheafClassVector {
    SheafClassVector::parse(s).expect("catalog vector")
}

/// The sequence `name`. Sequences in this catalog take no parameter; `_l`
/// is accepted for a uniform interface.
pub fn get_sequence<F: Field>(name: &str, _l: u32) -> Result<SequenceTemplate<F>, CatalogError> {
    let model_name = match name {
        "quadric-surface-C" => "quadric-surface",
        "scroll-1" | "scroll-2" | "scroll-3" => "cubic-scroll",
        "cone-C" => "quadric-cone-p3",
        "threefold-C" => "quadric-threefold-cone",
        _ => return Err(CatalogError::UnknownName(name.to_string())),
    };
    let model = get_model::<F>(model_name)?;
    let r = model.ring.clone();
    let n = r.nvars();
    let mat = |rows: &[&[&str]]| {
        PolyMatrix::from_rows(rows.iter().map(|row| row.iter().map(|s| r.p(s)).collect()).collect(), n)
    };
    let o2 = Arc::new(GradedModule::free(r.clone(), vec![0, 0]));
    let id = |k: usize| PolyMatrix::identity(k, n);
    let (a, e, b, f, g, classes) = match name {
        "quadric-surface-C" => (
            model.twisted("I_L", 0)?,
            o2,
            model.twisted("I_M", 1)?,
            mat(&[&["z", "w"], &["-x", "-y"]]),
            id(2),
            ["I_L", "2*O", "I_M(1)"],
        ),
        "cone-C" => (
            model.twisted("I_L", 0)?,
            o2,
            model.twisted("I_L", 1)?,
            mat(&[&["x", "u"], &["v", "-x"]]),
            id(2),
            ["I_L", "2*O", "I_L(1)"],
        ),
        "threefold-C" => {
            let i = F::sqrt_minus_one().ok_or(CatalogError::NeedsI)?;
            let (x, y) = (r.var("x"), r.var("y"));
            let iy = y.scale(&i);
            let (a, b) = (&x + &iy, &x - &iy);
            let f = PolyMatrix::from_rows(vec![vec![r.var("v"), -&b], vec![-&a, -&r.var("u")]], n);
            (model.twisted("I_D", 0)?, o2, model.twisted("I_E", 1)?, f, id(2), ["I_D", "2*O", "I_E(1)"])
        }
        "scroll-2" => (
            model.twisted("I_F", 0)?,
            o2,
            model.twisted("I_H-F", 1)?,
            mat(&[&["x1", "x2", "x4"], &["-x0", "-x1", "-x3"]]),
            id(2),
            ["I_F", "2*O", "I_H-F(1)"],
        ),
        "scroll-3" => {
            let o = GradedModule::free(r.clone(), vec![0]);
            let e = Arc::new(o.direct_sum(&model.module("I_H-F").unwrap().twist(1))?);
            (
                model.twisted("I_F", 0)?,
                e,
                model.twisted("I_H-2F", 1)?,
                mat(&[&["x1", "x2", "x4"], &["-x0", "-x1", "-x3"], &["0", "0", "0"]]),
                id(3),
                ["I_F", "O + I_H-F(1)", "I_H-2F(1)"],
            )
        }
        "scroll-1" => {
            // E0 on its six generators: the first three are the image of I_F(-1)
            let mut f = PolyMatrix::zeros(6, 3, n);
            let mut g = PolyMatrix::zeros(3, 6, n);
            for k in 0..3 {
                f.set(k, k, r.one());
                g.set(k, k + 3, r.one());
            }
            (
                model.twisted("I_F", -1)?,
                model.twisted("E0", 0)?,
                model.twisted("I_H-2F", -1)?,
                f,
                g,
                ["I_F(-1)", "E0", "I_H-2F(-1)"],
            )
        }
        _ => unreachable!(),
    };
    Ok(SequenceTemplate {
        name: name.to_string(),
        model: model_name.to_string(),
        first: ModuleMap::new(a, e.clone(), f, 0)?,
        second: ModuleMap::new(e, b, g, 0)?,
        classes: classes.map(vector),
    })
}

/// The extension `name` at level `l`: the cokernel of the level `l`
/// factorization with its rank one sub and quotient.
pub fn get_extension<F: Field>(name: &str, l: u32) -> Result<ExtensionTemplate<F>, CatalogError> {
    let (model_name, mf_name, sub, quot) = match name {
        "cone-ext" => ("quadric-cone-p3", "cone-4x4", "I_L", "I_L"),
        "threefold-ext-d" => ("quadric-threefold-cone", "r3-d", "I_D", "I_E"),
        "threefold-ext-e" => ("quadric-threefold-cone", "r3-e", "I_E", "I_D"),
        _ => return Err(CatalogError::UnknownName(name.to_string())),
    };
    let model = get_model::<F>(model_name)?;
    let e = cokernel_module(&get_mf::<F>(mf_name, l)?);
    if e.ring() != &model.ring {
        return Err(CatalogError::InvalidParameter(format!("{mf_name} lives over another ring")));
    }
    Ok(ExtensionTemplate {
        name: name.to_string(),
        e: Arc::new(e),
        sub: model.twisted(sub, 0)?,
        quot: model.twisted(quot, 1 - l as i64)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Gaussian;
    use crate::modres::is_sequence_exact;

    #[test]
    fn sequences_are_exact_in_low_degrees() {
        for name in SEQUENCE_NAMES {
            let s = get_sequence::<Gaussian>(name, 1).unwrap();
            let r = is_sequence_exact(&s.first, &s.second, 5);
            assert!(r.pass(), "{name}: {:?}", r.first_failure());
        }
    }
}
