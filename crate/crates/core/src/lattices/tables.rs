use std::fmt::Write;

use serde::Serialize;

use super::{abelianization, lattice_presentation_oscillator, AbelianGroup, OscillatorParams, QuarterTurn};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TableKind {
    /// `Λ_{k,π}`, classes of `ab` mod 2.
    HalfTurn,
    /// `Λ_{k,π/2}`, classes of `ab` mod 4.
    QuarterTurn,
}

impl TableKind {
    pub fn turn(self) -> QuarterTurn {
        match self {
            TableKind::HalfTurn => QuarterTurn::PI,
            TableKind::QuarterTurn => QuarterTurn::HALF_PI,
        }
    }
}

/// One residue row of a dim-6 table for a fixed `k`.
#[derive(Clone, Debug, Serialize)]
pub struct Dim6Row {
    pub kind: TableKind,
    pub class: &'static str,
    pub k: i64,
    /// The published value, `ℤ^r ⊕ ℤ_{2k} ⊕ ℤ_2^e`, as invariant factors.
    pub expected: AbelianGroup,
    /// `(a, b)` with gcd 1 and the group computed for each.
    pub computed: Vec<((i64, i64), AbelianGroup)>,
    pub agrees: bool,
}

impl Dim6Row {
    pub fn b1(&self) -> usize {
        self.expected.rank
    }
}

// (class label, representatives, free rank, number of Z_2 summands)
type Spec = (&'static str, &'static [(i64, i64)], usize, usize);

const HALF: &[Spec] = &[
    ("ab = 1 mod 2", &[(1, 1), (1, 3), (-1, 1), (3, 5)], 1, 4),
    ("ab = 0 mod 2", &[(1, 2), (0, 1), (2, 3), (1, 4)], 3, 2),
];

const QUARTER: &[Spec] = &[
    ("ab = +-1 mod 4", &[(1, 1), (1, 3), (-1, 1), (1, 5), (3, 7)], 1, 2),
    ("ab = 2 mod 4", &[(1, 2), (1, 6), (2, 3), (-1, 2)], 1, 3),
    ("ab = 0 mod 4", &[(1, 4), (0, 1), (1, 8), (3, 4)], 3, 1),
];

/// Rows of both tables for each `k`, every representative run through abelianization.
pub fn dim6_table_rows(ks: &[i64]) -> Vec<Dim6Row> {
    let mut rows = Vec::new();
    for (kind, specs) in [(TableKind::HalfTurn, HALF), (TableKind::QuarterTurn, QUARTER)] {
        for &k in ks {
            for &(class, reps, rank, twos) in specs {
                let mut orders = vec![2 * k];
                orders.extend(std::iter::repeat(2).take(twos));
                let expected = AbelianGroup::from_cyclic(rank, &orders);
                let computed: Vec<_> = reps
                    .iter()
                    .map(|&(a, b)| {
                        let p = OscillatorParams::new(&[a, b]).expect("representatives are nonzero");
                        let lp = lattice_presentation_oscillator(&p, k, kind.turn()).expect("k is positive");
                        ((a, b), abelianization(&lp))
                    })
                    .collect();
                let agrees = computed.iter().all(|(_, g)| *g == expected);
                rows.push(Dim6Row { kind, class, k, expected, computed, agrees });
            }
        }
    }
    rows
}

/// Plain-text rendering of both tables. Deterministic, so it can be compared byte for byte.
pub fn render_dim6_tables(ks: &[i64]) -> String {
    let rows = dim6_table_rows(ks);
    let mut out = String::new();
    for (kind, title) in [(TableKind::HalfTurn, "Lambda_{k,pi}"), (TableKind::QuarterTurn, "Lambda_{k,pi/2}")] {
        let _ = writeln!(out, "{title}");
        let _ = writeln!(out, "{:<16} {:>3}  {:<28} {:>3}  {}", "class", "k", "H_1", "b_1", "status");
        for r in rows.iter().filter(|r| r.kind == kind) {
            let status = if r.agrees {
                "ok".to_string()
            } else {
                let bad: Vec<String> = r
                    .computed
                    .iter()
                    .filter(|(_, g)| *g != r.expected)
                    .map(|((a, b), g)| format!("({a},{b}) gives {g}"))
                    .collect();
                format!("MISMATCH {}", bad.join("; "))
            };
            let _ = writeln!(out, "{:<16} {:>3}  {:<28} {:>3}  {}", r.class, r.k, r.expected.to_string(), r.b1(), status);
        }
        out.push('\n');
    }
    out
}
