#![allow(dead_code)]

use novikov_core::algebra::{rational, RationalMatrix};
use novikov_core::twisted::{build_complex, CellularData, Generator, Incidence, IncidenceTerm, TwistedComplex, Word};

pub fn term(c: i64, word: Word) -> IncidenceTerm {
    IncidenceTerm { coeff: rational(c), word }
}

fn scalar(sign: i64) -> RationalMatrix {
    RationalMatrix::from_i64(&[&[sign]])
}

/// One vertex and one edge with monodromy `sign · x^exponents`.
pub fn circle(exponents: Vec<i64>, sign: i64) -> TwistedComplex {
    let nv = exponents.len();
    build_complex(&CellularData {
        fiber_dim: 1,
        num_vars: nv,
        cell_counts: vec![1, 1],
        generators: vec![Generator { name: "g".into(), matrix: scalar(sign), exponents }],
        incidences: vec![Incidence {
            degree: 0,
            cell: 0,
            face: 0,
            terms: vec![term(1, vec![(0, 1)]), term(-1, vec![])],
        }],
        period_basis: vec![1.0; nv],
    })
    .unwrap()
}

/// Presentation complex of `<a, b | a b a^-1 b^-1>` with rank-one monodromy.
pub fn torus(a: (Vec<i64>, i64), b: (Vec<i64>, i64), periods: Vec<f64>) -> TwistedComplex {
    let nv = a.0.len();
    build_complex(&CellularData {
        fiber_dim: 1,
        num_vars: nv,
        cell_counts: vec![1, 2, 1],
        generators: vec![
            Generator { name: "a".into(), matrix: scalar(a.1), exponents: a.0 },
            Generator { name: "b".into(), matrix: scalar(b.1), exponents: b.0 },
        ],
        incidences: vec![
            Incidence { degree: 0, cell: 0, face: 0, terms: vec![term(1, vec![(0, 1)]), term(-1, vec![])] },
            Incidence { degree: 0, cell: 1, face: 0, terms: vec![term(1, vec![(1, 1)]), term(-1, vec![])] },
            Incidence {
                degree: 1,
                cell: 0,
                face: 0,
                terms: vec![term(1, vec![]), term(-1, vec![(0, 1), (1, 1), (0, -1)])],
            },
            Incidence {
                degree: 1,
                cell: 0,
                face: 1,
                terms: vec![term(1, vec![(0, 1)]), term(-1, vec![(0, 1), (1, 1), (0, -1), (1, -1)])],
            },
        ],
        period_basis: periods,
    })
    .unwrap()
}

/// The 3-cycle graph as an untwisted complex.
pub fn three_cycle() -> TwistedComplex {
    let edge = |cell, from, to| {
        [
            Incidence { degree: 0, cell, face: to, terms: vec![term(1, vec![])] },
            Incidence { degree: 0, cell, face: from, terms: vec![term(-1, vec![])] },
        ]
    };
    build_complex(&CellularData {
        fiber_dim: 1,
        num_vars: 0,
        cell_counts: vec![3, 3],
        generators: vec![],
        incidences: [edge(0, 0, 1), edge(1, 1, 2), edge(2, 2, 0)].concat(),
        period_basis: vec![],
    })
    .unwrap()
}
