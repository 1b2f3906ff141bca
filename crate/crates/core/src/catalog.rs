//! Built-in example structures.

use crate::algebra::Chart;
use crate::error::{Error, Result};
use crate::exterior::DiffForm;
use crate::structures::{CovariantPair, StructureClass};

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub chart: Chart,
    pub cov: CovariantPair,
    pub expected_class: StructureClass,
    pub notes: &'static str,
}

struct Spec {
    name: &'static str,
    coords: &'static [&'static str],
    omega: &'static [(usize, &'static str)],
    two_form: &'static [(usize, usize, &'static str)],
    class: StructureClass,
    notes: &'static str,
}

const SPECS: &[Spec] = &[
    Spec {
        name: "cosym3",
        coords: &["x", "y", "z"],
        omega: &[(2, "1")],
        two_form: &[(0, 1, "1")],
        class: StructureClass::Cosymplectic,
        notes: "omega = dz, Omega = dx^dy",
    },
    Spec {
        name: "contact3",
        coords: &["x", "y", "z"],
        omega: &[(0, "-y"), (2, "1")],
        two_form: &[(0, 1, "1")],
        class: StructureClass::Contact,
        notes: "omega = dz - y dx, Omega = d omega = dx^dy",
    },
    Spec {
        name: "contact5",
        coords: &["x1", "y1", "x2", "y2", "z"],
        omega: &[(0, "-y1"), (2, "-y2"), (4, "1")],
        two_form: &[(0, 1, "1"), (2, 3, "1")],
        class: StructureClass::Contact,
        notes: "omega = dz - y1 dx1 - y2 dx2, Omega = d omega",
    },
    Spec {
        name: "acc3",
        coords: &["x", "y", "z"],
        omega: &[(0, "-y"), (2, "1")],
        two_form: &[(0, 1, "1"), (1, 2, "-1")],
        class: StructureClass::AlmostCosymplecticContact,
        notes: "omega = dz - y dx, Omega = (dx+dz)^dy; d omega != 0, Omega != d omega, L_E omega != 0",
    },
    Spec {
        name: "singular3",
        coords: &["x", "y", "z"],
        omega: &[(2, "1")],
        two_form: &[(0, 2, "-1")],
        class: StructureClass::NotRegular,
        notes: "omega = dz, Omega = dz^dx; omega ^ Omega = 0",
    },
];

pub fn names() -> Vec<&'static str> {
    SPECS.iter().map(|s| s.name).collect()
}

fn build(spec: &Spec) -> Result<CatalogEntry> {
    let chart = Chart::new(spec.coords)?;
    let d = chart.dim();
    let omega = DiffForm::from_components(d, 1, spec.omega.iter().map(|&(i, t)| Ok((vec![i], chart.parse(t)?))).collect::<Result<Vec<_>>>()?)?;
    let two_form = DiffForm::from_components(
        d,
        2,
        spec.two_form.iter().map(|&(i, j, t)| Ok((vec![i, j], chart.parse(t)?))).collect::<Result<Vec<_>>>()?,
    )?;
    Ok(CatalogEntry {
        name: spec.name,
        chart,
        cov: CovariantPair::new(omega, two_form)?,
        expected_class: spec.class,
        notes: spec.notes,
    })
}

pub fn get_example(name: &str) -> Result<CatalogEntry> {
    let spec = SPECS.iter().find(|s| s.name == name).ok_or_else(|| Error::UnknownExample(name.to_string()))?;
    build(spec)
}

pub fn all() -> Vec<CatalogEntry> {
    SPECS.iter().map(|s| build(s).expect("catalog entries are well-formed")).collect()
}
