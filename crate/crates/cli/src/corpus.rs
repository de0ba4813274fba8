//! Bundled example documents.

use crate::document::{
    ComplexDocument, ComponentDoc, Document, FamilyDocument, GeneratorDoc, IncidenceDoc, MorseDocument, WordTermDoc,
};

pub const NAMES: [&str; 12] = [
    "circle_xi0",
    "circle_xi1",
    "torus_xi0",
    "torus_xi10",
    "sphere_complex",
    "sphere_morse",
    "torus_bott",
    "klein_like",
    "alexander_trefoil",
    "alexander_trefoil_companion",
    "circle_linear_family",
    "torus_linear_family",
];

/// `(morse, complex)` pairs describing the same manifold.
pub const PAIRS: [(&str, &str); 3] = [
    ("sphere_morse", "sphere_complex"),
    ("torus_bott", "torus_xi0"),
    ("torus_bott", "torus_xi10"),
];

pub fn describe(name: &str) -> Option<&'static str> {
    Some(match name {
        "circle_xi0" => "circle, trivial class",
        "circle_xi1" => "circle, class generating H^1; D^0 = x1 - 1",
        "torus_xi0" => "torus, trivial class",
        "torus_xi10" => "torus, class (1, 0)",
        "sphere_complex" => "2-sphere, one 0-cell and one 2-cell",
        "sphere_morse" => "height function on the 2-sphere",
        "torus_bott" => "Bott function on the torus: two critical circles",
        "klein_like" => "Klein bottle with the sign local system",
        "alexander_trefoil" => "trefoil complement, Wirtinger presentation",
        "alexander_trefoil_companion" => "trefoil with the companion block of t^2 - t + 1",
        "circle_linear_family" => "D(s) = s on the circle",
        "torus_linear_family" => "first-order deformation of the torus complex",
        _ => return None,
    })
}

pub fn get(name: &str) -> Option<Document> {
    Some(match name {
        "circle_xi0" => Document::Complex(circle(name, 0)),
        "circle_xi1" => Document::Complex(circle(name, 1)),
        "torus_xi0" => Document::Complex(torus(name, 0)),
        "torus_xi10" => Document::Complex(torus(name, 1)),
        "sphere_complex" => Document::Complex(sphere()),
        "sphere_morse" => Document::Morse(morse(
            name,
            2,
            vec![component("minimum", 0, vec![1]), component("maximum", 2, vec![1])],
        )),
        "torus_bott" => Document::Morse(morse(
            name,
            0,
            vec![component("bottom circle", 0, vec![1, 1]), component("top circle", 1, vec![1, 1])],
        )),
        "klein_like" => Document::Complex(klein()),
        "alexander_trefoil" => Document::Complex(trefoil(name, 1)),
        "alexander_trefoil_companion" => Document::Complex(trefoil(name, 2)),
        "circle_linear_family" => Document::Family(FamilyDocument {
            name: name.into(),
            base_point: "0".into(),
            order: 4,
            cochain_ranks: vec![1, 1],
            terms: vec![vec![m(&[&["0"]]), m(&[&["1"]])]],
        }),
        "torus_linear_family" => Document::Family(FamilyDocument {
            name: name.into(),
            base_point: "0".into(),
            order: 4,
            cochain_ranks: vec![1, 2, 1],
            terms: vec![
                vec![m(&[&["0"], &["0"]]), m(&[&["1"], &["0"]])],
                vec![m(&[&["0", "0"]]), m(&[&["0", "1"]])],
            ],
        }),
        _ => return None,
    })
}

pub fn all() -> Vec<Document> {
    NAMES.iter().map(|n| get(n).expect("bundled")).collect()
}

fn m(rows: &[&[&str]]) -> Vec<Vec<String>> {
    rows.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect()
}

fn gen(name: &str, matrix: Vec<Vec<String>>, exponents: Vec<i64>) -> GeneratorDoc {
    GeneratorDoc {
        name: name.into(),
        matrix,
        exponents,
    }
}

fn terms(list: &[(&str, &str)]) -> Vec<WordTermDoc> {
    list.iter()
        .map(|(c, w)| WordTermDoc {
            coeff: c.to_string(),
            word: w.to_string(),
        })
        .collect()
}

fn inc(degree: usize, cell: usize, face: usize, t: &[(&str, &str)]) -> IncidenceDoc {
    IncidenceDoc {
        degree,
        cell,
        face,
        terms: terms(t),
    }
}

fn complex(name: &str, fiber_dim: usize, num_vars: usize, cells: Vec<usize>) -> ComplexDocument {
    ComplexDocument {
        name: name.into(),
        top_degree: Some(cells.len() - 1),
        fiber_dim,
        num_vars,
        period_basis: vec![1.0; num_vars],
        field_degree: 1,
        cells: Some(cells),
        generators: vec![],
        incidences: vec![],
        raw: None,
    }
}

/// `exponent = 0` gives the untwisted circle with no variables.
fn circle(name: &str, exponent: i64) -> ComplexDocument {
    let nv = usize::from(exponent != 0);
    let exps = if nv == 0 { vec![] } else { vec![exponent] };
    ComplexDocument {
        generators: vec![gen("g", m(&[&["1"]]), exps)],
        incidences: vec![inc(0, 0, 0, &[("1", "g"), ("-1", "")])],
        ..complex(name, 1, nv, vec![1, 1])
    }
}

/// Fox derivatives of `a b a^-1 b^-1`; `a` carries the class when
/// `exponent = 1`.
fn torus(name: &str, exponent: i64) -> ComplexDocument {
    let nv = usize::from(exponent != 0);
    let (ea, eb) = if nv == 0 { (vec![], vec![]) } else { (vec![exponent], vec![0]) };
    ComplexDocument {
        generators: vec![gen("a", m(&[&["1"]]), ea), gen("b", m(&[&["1"]]), eb)],
        incidences: vec![
            inc(0, 0, 0, &[("1", "a"), ("-1", "")]),
            inc(0, 1, 0, &[("1", "b"), ("-1", "")]),
            inc(1, 0, 0, &[("1", ""), ("-1", "a b a^-1")]),
            inc(1, 0, 1, &[("1", "a"), ("-1", "a b a^-1 b^-1")]),
        ],
        ..complex(name, 1, nv, vec![1, 2, 1])
    }
}

fn sphere() -> ComplexDocument {
    complex("sphere_complex", 1, 0, vec![1, 0, 1])
}

/// `<a, b | a b a b^-1>` with `a ↦ -1` and `b ↦ x1`.
fn klein() -> ComplexDocument {
    ComplexDocument {
        generators: vec![gen("a", m(&[&["-1"]]), vec![0]), gen("b", m(&[&["1"]]), vec![1])],
        incidences: vec![
            inc(0, 0, 0, &[("1", "a"), ("-1", "")]),
            inc(0, 1, 0, &[("1", "b"), ("-1", "")]),
            inc(1, 0, 0, &[("1", ""), ("1", "a b")]),
            inc(1, 0, 1, &[("1", "a"), ("-1", "a b a b^-1")]),
        ],
        ..complex("klein_like", 1, 1, vec![1, 2, 1])
    }
}

/// Wirtinger presentation `<a, b | a b a = b a b>`, relator
/// `a b a b^-1 a^-1 b^-1`, both meridians mapping to `x1`. With
/// `fiber_dim = 2` the monodromy is the companion matrix of `t^2 - t + 1`.
fn trefoil(name: &str, fiber_dim: usize) -> ComplexDocument {
    let phi = if fiber_dim == 1 { m(&[&["1"]]) } else { m(&[&["0", "-1"], &["1", "1"]]) };
    ComplexDocument {
        field_degree: fiber_dim,
        generators: vec![gen("a", phi.clone(), vec![1]), gen("b", phi, vec![1])],
        incidences: vec![
            inc(0, 0, 0, &[("1", "a"), ("-1", "")]),
            inc(0, 1, 0, &[("1", "b"), ("-1", "")]),
            inc(1, 0, 0, &[("1", ""), ("1", "a b"), ("-1", "a b a b^-1 a^-1")]),
            inc(1, 0, 1, &[("1", "a"), ("-1", "a b a b^-1"), ("-1", "a b a b^-1 a^-1 b^-1")]),
        ],
        ..complex(name, fiber_dim, 1, vec![1, 2, 1])
    }
}

fn component(name: &str, index: usize, poincare: Vec<u64>) -> ComponentDoc {
    ComponentDoc {
        name: name.into(),
        index,
        poincare,
    }
}

fn morse(name: &str, chi: i64, components: Vec<ComponentDoc>) -> MorseDocument {
    MorseDocument {
        name: name.into(),
        fiber_dim: 1,
        euler_characteristic: chi,
        components,
    }
}
