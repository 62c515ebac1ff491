//! Divisor classes, the twist-free Grothendieck group `G′` of layered ACM
//! sheaves, condition (C) and the Veronese invariant `m(Z)`.

mod gprime;
mod snf;

pub use gprime::{build_gprime, GprimeBuild};
pub use snf::{mat_mul, smith_normal_form, solve_integer, IntMatrix};

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KgroupError {
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("cannot parse class vector `{0}`")]
    Syntax(String),
    #[error("class vector is not orientable: c1 = {0}")]
    NotOrientable(String),
    #[error("{0}")]
    WrongModel(String),
}

/// Integer coordinates over a model's named divisor basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DivisorClass {
    pub coords: Vec<i64>,
}

impl DivisorClass {
    pub fn zero(n: usize) -> Self {
        DivisorClass { coords: vec![0; n] }
    }

    pub fn add_scaled(&mut self, other: &DivisorClass, k: i64) {
        for (a, b) in self.coords.iter_mut().zip(&other.coords) {
            *a += k * b;
        }
    }

    /// `F - 3H` style text; `0` for the zero class.
    pub fn format(&self, basis: &[String]) -> String {
        let mut out = String::new();
        for (c, name) in self.coords.iter().zip(basis).filter(|(c, _)| **c != 0) {
            let mag = if c.abs() == 1 { String::new() } else { c.abs().to_string() };
            match (out.is_empty(), *c < 0) {
                (true, false) => out = format!("{mag}{name}"),
                (true, true) => out = format!("-{mag}{name}"),
                (false, neg) => out = format!("{out} {} {mag}{name}", if neg { '-' } else { '+' }),
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// A direct sum of twisted rank one sheaves, written `2*I_C + O(-1)`.
/// Entries are `(label, twist)` with repetition; `O` is the structure sheaf.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SheafClassVector {
    pub entries: Vec<(String, i64)>,
}

impl SheafClassVector {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, label: &str, twist: i64, copies: usize) -> Self {
        for _ in 0..copies {
            self.entries.push((label.to_string(), twist));
        }
        self
    }

    pub fn rank(&self, model: &ClassModel) -> usize {
        self.entries.iter().map(|(l, _)| model.rank_of(l)).sum()
    }

    pub fn count(&self, label: &str) -> usize {
        self.entries.iter().filter(|(l, _)| l == label).count()
    }

    pub fn concat(&self, other: &SheafClassVector) -> SheafClassVector {
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        SheafClassVector { entries }
    }

    pub fn twisted(&self, a: i64) -> SheafClassVector {
        SheafClassVector { entries: self.entries.iter().map(|(l, t)| (l.clone(), t + a)).collect() }
    }

    /// Parses `2*I_C + O(-1) + I_F(2)`.
    pub fn parse(text: &str) -> Result<Self, KgroupError> {
        let err = || KgroupError::Syntax(text.to_string());
        let mut entries = Vec::new();
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Ok(Self::default());
        }
        for term in compact.split('+') {
            let (copies, rest) = match term.split_once('*') {
                Some((n, rest)) => (n.parse::<usize>().map_err(|_| err())?, rest),
                None => (1, term),
            };
            let (label, twist) = match rest.split_once('(') {
                Some((l, t)) => {
                    let t = t.strip_suffix(')').ok_or_else(err)?;
                    (l, t.parse::<i64>().map_err(|_| err())?)
                }
                None => (rest, 0),
            };
            let valid = !label.is_empty() && label.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '-');
            if !valid {
                return Err(err());
            }
            entries.extend(std::iter::repeat_n((label.to_string(), twist), copies));
        }
        Ok(SheafClassVector { entries })
    }
}

impl fmt::Display for SheafClassVector {
    /// Groups equal entries, keeping first-appearance order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return f.write_str("0");
        }
        let mut groups: Vec<((String, i64), usize)> = Vec::new();
        for e in &self.entries {
            match groups.iter_mut().find(|(k, _)| k == e) {
                Some((_, n)) => *n += 1,
                None => groups.push((e.clone(), 1)),
            }
        }
        let parts: Vec<String> = groups
            .iter()
            .map(|((l, t), n)| {
                let twist = if *t == 0 { String::new() } else { format!("({t})") };
                let mult = if *n == 1 { String::new() } else { format!("{n}*") };
                format!("{mult}{l}{twist}")
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// The class-level data of a model: divisor basis, hyperplane class, the
/// rank one generators with their first Chern classes and the layering
/// rules for higher rank indecomposables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassModel {
    pub name: String,
    pub basis: Vec<String>,
    pub hyperplane: DivisorClass,
    /// `(label, c1)` for each rank one generator, `O` first.
    pub generators: Vec<(String, DivisorClass)>,
    /// Higher rank sheaves replaced by their rank one layers in `G′`.
    pub layered: Vec<(String, SheafClassVector)>,
}

impl ClassModel {
    fn generator(&self, label: &str) -> Option<&DivisorClass> {
        self.generators.iter().find(|(l, _)| l == label).map(|(_, c)| c)
    }

    fn layers(&self, label: &str) -> Option<&SheafClassVector> {
        self.layered.iter().find(|(l, _)| l == label).map(|(_, v)| v)
    }

    pub fn rank_of(&self, label: &str) -> usize {
        match self.layers(label) {
            Some(v) => v.rank(self),
            None => 1,
        }
    }

    pub fn labels(&self) -> Vec<&str> {
        self.generators.iter().map(|(l, _)| l.as_str()).chain(self.layered.iter().map(|(l, _)| l.as_str())).collect()
    }

    /// Rewrites layered entries into rank one generators, recursively.
    pub fn expand(&self, v: &SheafClassVector) -> Result<SheafClassVector, KgroupError> {
        let mut out = SheafClassVector::new();
        for (label, twist) in &v.entries {
            if self.generator(label).is_some() {
                out.entries.push((label.clone(), *twist));
            } else if let Some(layers) = self.layers(label) {
                out = out.concat(&self.expand(&layers.twisted(*twist))?);
            } else {
                return Err(KgroupError::UnknownLabel(label.clone()));
            }
        }
        Ok(out)
    }

    /// Coordinates in `ℤ^generators` with twists erased.
    pub fn class_vector(&self, v: &SheafClassVector) -> Result<Vec<i64>, KgroupError> {
        let flat = self.expand(v)?;
        let mut out = vec![0i64; self.generators.len()];
        for (label, _) in &flat.entries {
            let k = self.generators.iter().position(|(l, _)| l == label).unwrap();
            out[k] += 1;
        }
        Ok(out)
    }
}

/// `c1 = Σ (c1 of label + twist · H)`.
pub fn c1_of_vector(model: &ClassModel, v: &SheafClassVector) -> Result<DivisorClass, KgroupError> {
    let flat = model.expand(v)?;
    let mut c = DivisorClass::zero(model.basis.len());
    for (label, twist) in &flat.entries {
        c.add_scaled(model.generator(label).unwrap(), 1);
        c.add_scaled(&model.hyperplane, *twist);
    }
    Ok(c)
}

/// Whether `d` is an integer multiple of the hyperplane class.
pub fn is_multiple_of_hyperplane(model: &ClassModel, d: &DivisorClass) -> bool {
    let h = &model.hyperplane.coords;
    let Some(k) = h.iter().position(|x| *x != 0) else {
        return d.coords.iter().all(|x| *x == 0);
    };
    if d.coords[k] % h[k] != 0 {
        return false;
    }
    let m = d.coords[k] / h[k];
    d.coords.iter().zip(h).all(|(a, b)| *a == m * b)
}

pub fn is_orientable(model: &ClassModel, v: &SheafClassVector) -> Result<bool, KgroupError> {
    Ok(is_multiple_of_hyperplane(model, &c1_of_vector(model, v)?))
}

/// Generators and relation vectors of `G′`; relation `k` is named `names[k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    pub generators: Vec<String>,
    pub relations: Vec<(String, Vec<i64>)>,
}

impl GroupPresentation {
    pub fn free(model: &ClassModel) -> Self {
        GroupPresentation {
            generators: model.generators.iter().map(|(l, _)| l.clone()).collect(),
            relations: Vec::new(),
        }
    }

    pub fn lines(&self) -> Vec<String> {
        let mut out = vec![format!("generators: {}", self.generators.join(", "))];
        for (name, r) in &self.relations {
            let terms: Vec<String> =
                r.iter().zip(&self.generators).filter(|(c, _)| **c != 0).map(|(c, g)| format!("{c:+}*{g}")).collect();
            out.push(format!("relation {name}: {} = 0", terms.join(" ")));
        }
        out
    }
}

/// Outcome of a condition (C) check. `witness` gives the multiplicity of
/// each relation when the class equals `rank · O`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionC {
    pub holds: bool,
    pub witness: Option<BTreeMap<String, i64>>,
}

/// Decides whether the class of `v` in `G′` equals `rank(v) · O`.
pub fn check_condition_c(
    model: &ClassModel,
    group: &GroupPresentation,
    v: &SheafClassVector,
) -> Result<ConditionC, KgroupError> {
    let c1 = c1_of_vector(model, v)?;
    if !is_multiple_of_hyperplane(model, &c1) {
        return Err(KgroupError::NotOrientable(c1.format(&model.basis)));
    }
    let mut target = model.class_vector(v)?;
    target[0] -= v.rank(model) as i64;
    let g = group.generators.len();
    let r = group.relations.len();
    let a: IntMatrix = (0..g).map(|i| group.relations.iter().map(|(_, rel)| rel[i]).collect()).collect();
    let sol = if r == 0 { target.iter().all(|x| *x == 0).then(Vec::new) } else { solve_integer(&a, r, &target) };
    Ok(match sol {
        Some(x) => ConditionC {
            holds: true,
            witness: Some(
                group.relations.iter().zip(x).filter(|(_, c)| *c != 0).map(|((n, _), c)| (n.clone(), c)).collect(),
            ),
        },
        None => ConditionC { holds: false, witness: None },
    })
}

/// `m(Z)`: copies of `I_C` in `N` minus copies in `E`, for a resolution
/// `0 -> E -> N -> I_Z(a) -> 0` on the Veronese surface. The difference
/// `N - E` must be orientable.
pub fn veronese_m_invariant(
    model: &ClassModel,
    e: &SheafClassVector,
    n: &SheafClassVector,
) -> Result<i64, KgroupError> {
    if model.generator("I_C").is_none() {
        return Err(KgroupError::WrongModel(format!("model `{}` has no conic class I_C", model.name)));
    }
    let mut c = c1_of_vector(model, n)?;
    c.add_scaled(&c1_of_vector(model, e)?, -1);
    if !is_multiple_of_hyperplane(model, &c) {
        return Err(KgroupError::NotOrientable(c.format(&model.basis)));
    }
    Ok(model.expand(n)?.count("I_C") as i64 - model.expand(e)?.count("I_C") as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quadric_surface() -> ClassModel {
        let d = |v: &[i64]| DivisorClass { coords: v.to_vec() };
        ClassModel {
            name: "quadric-surface".into(),
            basis: vec!["L".into(), "M".into()],
            hyperplane: d(&[1, 1]),
            generators: vec![("O".into(), d(&[0, 0])), ("I_L".into(), d(&[-1, 0])), ("I_M".into(), d(&[0, -1]))],
            layered: vec![],
        }
    }

    #[test]
    fn parse_and_print_vectors() {
        let v = SheafClassVector::parse("2*I_C + O(-1) + I_F(2)").unwrap();
        assert_eq!(v.entries.len(), 4);
        assert_eq!(v.to_string(), "2*I_C + O(-1) + I_F(2)");
        assert!(SheafClassVector::parse("I_C(").is_err());
        assert!(SheafClassVector::parse("x*I_C").is_err());
    }

    #[test]
    fn chern_classes_on_the_quadric() {
        let m = quadric_surface();
        let v = SheafClassVector::parse("I_L + I_M").unwrap();
        let c = c1_of_vector(&m, &v).unwrap();
        assert_eq!(c.coords, vec![-1, -1]);
        assert_eq!(c.format(&m.basis), "-L - M");
        assert!(is_orientable(&m, &v).unwrap());
        assert!(!is_orientable(&m, &SheafClassVector::parse("2*I_L").unwrap()).unwrap());
        assert_eq!(c1_of_vector(&m, &SheafClassVector::parse("O(5)").unwrap()).unwrap().coords, vec![5, 5]);
        assert!(c1_of_vector(&m, &SheafClassVector::parse("I_Q").unwrap()).is_err());
    }

    #[test]
    fn condition_c_with_and_without_relations() {
        let m = quadric_surface();
        let free = GroupPresentation::free(&m);
        let v = SheafClassVector::parse("I_L + I_M").unwrap();
        assert!(!check_condition_c(&m, &free, &v).unwrap().holds);
        let mut g = free.clone();
        g.relations.push(("seq".into(), vec![-2, 1, 1]));
        let c = check_condition_c(&m, &g, &v).unwrap();
        assert!(c.holds);
        assert_eq!(c.witness.unwrap().get("seq"), Some(&1));
        assert!(check_condition_c(&m, &g, &SheafClassVector::parse("O(1) + O(-3)").unwrap()).unwrap().holds);
    }
}
