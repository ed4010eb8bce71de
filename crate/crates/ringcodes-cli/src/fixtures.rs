//! Worked examples with their expected values embedded.
//!
//! `run_fixture` rebuilds each pair from scratch, recomputes every quantity
//! and compares it against the stored value. Dual enumerators are compared on
//! the dense prefix up to the largest stored degree.

use std::sync::Arc;

use num_bigint::BigInt;
use ringcodes::chaingap::{build_chain_pair, delta_singleton};
use ringcodes::chainring::ChainRing;
use ringcodes::codes::MatrixCode;
use ringcodes::enumerators::{truncated_dual_wwe, PartitionEnumerator, Wwe};
use ringcodes::matrixgap::{build_degenerate_pair, build_swap, singleton_deltas_full, Padding, SwapOptions};
use ringcodes::matrixring::{rank_kravchuk, MatrixSpace, OrbitOrdering};
use ringcodes::weights::WeightTable;
use serde_json::{json, Value};

use crate::render::{bigs, list, se_json, se_text, wwe_json};
use crate::CliError;

type Terms = &'static [(&'static [u32], i64)];
type Poly = &'static [(u64, i64)];

pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
}

impl Check {
    fn new(name: &str, expected: impl ToString, actual: impl ToString) -> Self {
        Check {
            name: name.into(),
            expected: expected.to_string(),
            actual: actual.to_string(),
        }
    }

    pub fn passed(&self) -> bool {
        self.expected == self.actual
    }
}

pub struct FixtureReport {
    pub id: &'static str,
    pub title: &'static str,
    pub checks: Vec<Check>,
    pub data: Value,
}

impl FixtureReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn json(&self) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| {
                json!({
                    "name": c.name,
                    "expected": c.expected,
                    "actual": c.actual,
                    "pass": c.passed(),
                })
            })
            .collect();
        json!({
            "fixture": self.id,
            "title": self.title,
            "pass": self.passed(),
            "checks": checks,
            "data": self.data,
        })
    }

    pub fn text(&self) -> String {
        let mut out = format!(
            "{} [{}] {}\n",
            if self.passed() { "PASS" } else { "FAIL" },
            self.id,
            self.title
        );
        for c in &self.checks {
            if c.passed() {
                out.push_str(&format!("  ok   {}: {}\n", c.name, c.actual));
            } else {
                out.push_str(&format!(
                    "  FAIL {}: expected {}, got {}\n",
                    c.name, c.expected, c.actual
                ));
            }
        }
        out
    }
}

struct ChainFixture {
    id: &'static str,
    title: &'static str,
    weights: [u64; 3],
    c_counts: &'static [u64],
    d_counts: &'static [u64],
    se_c: Terms,
    se_d: Terms,
    wwe: Poly,
    dual_c: Poly,
    dual_d: Poly,
    /// A_d(C⊥) − A_d(D⊥) at the smallest weight d where they differ.
    delta: (u64, i64),
}

const CHAIN: &[ChainFixture] = &[
    ChainFixture {
        id: "chain-z8-homog",
        title: "Z/8, homogeneous weight (1,1,2), k = 3",
        weights: [1, 1, 2],
        c_counts: &[0, 8, 8, 8],
        d_counts: &[0, 2, 2, 2, 2, 4, 4, 8],
        se_c: &[(&[8, 8, 8, 0], 4), (&[0, 8, 8, 8], 2), (&[0, 0, 8, 16], 1), (&[0, 0, 0, 24], 1)],
        se_d: &[(&[0, 0, 16, 8], 4), (&[0, 0, 12, 12], 2), (&[0, 0, 8, 16], 1), (&[0, 0, 0, 24], 1)],
        wwe: &[(0, 1), (16, 1), (24, 2), (32, 4)],
        dual_c: &[(0, 1), (1, 16), (2, 1848), (3, 60400)],
        dual_d: &[(0, 1), (1, 48), (2, 1832), (3, 64656)],
        delta: (1, -32),
    },
    ChainFixture {
        id: "chain-z8-122",
        title: "Z/8, weight (1,2,2), k = 3",
        weights: [1, 2, 2],
        c_counts: &[6, 8, 8, 8],
        d_counts: &[0, 2, 2, 2, 2, 6, 6, 10],
        se_c: &[(&[8, 8, 8, 6], 4), (&[0, 8, 8, 14], 2), (&[0, 0, 8, 22], 1), (&[0, 0, 0, 30], 1)],
        se_d: &[(&[0, 0, 20, 10], 4), (&[0, 0, 16, 14], 2), (&[0, 0, 8, 22], 1), (&[0, 0, 0, 30], 1)],
        wwe: &[(0, 1), (16, 1), (32, 2), (40, 4)],
        dual_c: &[(0, 1), (1, 24), (2, 1074), (3, 36584)],
        dual_d: &[(0, 1), (2, 1354), (3, 34304)],
        delta: (1, 24),
    },
    ChainFixture {
        id: "chain-z8-121",
        title: "Z/8, weight (1,2,1), k = 3",
        weights: [1, 2, 1],
        c_counts: &[11, 4, 4, 4],
        d_counts: &[0, 1, 1, 1, 1, 5, 5, 9],
        se_c: &[(&[4, 4, 4, 11], 4), (&[0, 4, 4, 15], 2), (&[0, 0, 4, 19], 1), (&[0, 0, 0, 23], 1)],
        se_d: &[(&[0, 0, 16, 7], 4), (&[0, 0, 12, 11], 2), (&[0, 0, 4, 19], 1), (&[0, 0, 0, 23], 1)],
        wwe: &[(0, 1), (4, 1), (12, 2), (16, 4)],
        dual_c: &[(0, 1), (1, 63), (2, 2111), (3, 51635)],
        dual_d: &[(0, 1), (1, 23), (2, 1195), (3, 38431)],
        delta: (1, 40),
    },
];

enum Construction {
    /// Swap pair with an explicit λ0 orbit index and the expected constants
    /// (σ, c, a, b, Δ, α1, α2).
    Swap {
        lambda0: usize,
        sigma: &'static [i64],
        consts: [i64; 6],
    },
    Degenerate,
    /// Multiplicities given directly.
    Explicit,
}

struct MatrixFixture {
    id: &'static str,
    title: &'static str,
    weights: [u64; 2],
    construction: Construction,
    /// Multiplicities of the first and second code, zero orbit first.
    eta: [&'static [u64]; 2],
    omega: [&'static [i64]; 2],
    length: u64,
    delta_bar: [i64; 3],
    singleton: [i64; 3],
    se: [Terms; 2],
    wwe: Poly,
    dual: [Poly; 2],
}

const MATRIX: &[MatrixFixture] = &[
    MatrixFixture {
        id: "mat-f2-deg23",
        title: "M2(F2), degenerate weight (2,3), j = 2",
        weights: [2, 3],
        construction: Construction::Degenerate,
        eta: [
            &[1, 1, 0, 0, 0, 0, 0, 0, 2, 0, 0, 0, 0, 0, 0],
            &[0, 1, 1, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0],
        ],
        omega: [
            &[0, 4, 4, 2, 4, 6, 6, 6, 8, 6, 6, 6, 8, 6, 8],
            &[0, 4, 4, 2, 4, 6, 6, 6, 8, 6, 6, 6, 8, 6, 8],
        ],
        length: 4,
        delta_bar: [-1, 3, -2],
        singleton: [0, 0, -6],
        se: [
            &[(&[4, 0, 0], 1), (&[3, 1, 0], 3), (&[2, 2, 0], 9), (&[1, 3, 0], 27), (&[2, 0, 2], 6), (&[1, 1, 2], 18)],
            &[(&[4, 0, 0], 1), (&[3, 1, 0], 3), (&[2, 2, 0], 9), (&[1, 3, 0], 33), (&[0, 4, 0], 18)],
        ],
        wwe: &[(0, 1), (2, 3), (4, 9), (6, 33), (8, 18)],
        dual: [
            &[(0, 1), (2, 12), (3, 6), (4, 36)],
            &[(0, 1), (2, 12), (4, 54)],
        ],
    },
    MatrixFixture {
        id: "mat-f2-w12",
        title: "M2(F2), weight (1,2), swap s = 1",
        weights: [1, 2],
        construction: Construction::Swap {
            lambda0: 4,
            sigma: &[0, -1, -1, -1, -1, -3, 1, -1, 0, 0, 0, 0, 0, 2, 2],
            consts: [2, 3, 0, -3, 10, 17],
        },
        eta: [
            &[0, 3, 3, 3, 26, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3],
            &[3, 2, 2, 2, 25, 0, 4, 2, 3, 3, 3, 3, 3, 5, 5],
        ],
        omega: [
            &[0, 30, 53, 53, 53, 30, 53, 30, 74, 74, 74, 74, 74, 74, 51],
            &[0, 30, 51, 51, 53, 30, 53, 30, 74, 74, 74, 74, 74, 74, 53],
        ],
        length: 65,
        delta_bar: [3, -7, 4],
        singleton: [0, 6, 18],
        se: [
            &[(&[65, 0, 0], 1), (&[35, 30, 0], 9), (&[12, 53, 0], 12), (&[26, 27, 12], 6), (&[3, 50, 12], 36)],
            &[
                (&[65, 0, 0], 1),
                (&[35, 30, 0], 9),
                (&[14, 51, 0], 6),
                (&[12, 53, 0], 6),
                (&[3, 50, 12], 6),
                (&[5, 46, 14], 24),
                (&[28, 21, 16], 6),
                (&[7, 42, 16], 6),
            ],
        ],
        wwe: &[(0, 1), (30, 9), (51, 6), (53, 12), (74, 36)],
        dual: [
            &[(0, 1), (1, 132), (2, 15762), (3, 1674894)],
            &[(0, 1), (1, 138), (2, 16176), (3, 1695210)],
        ],
    },
    MatrixFixture {
        id: "mat-f2-w45-swap",
        title: "M2(F2), weight (4,5), swap s = 1",
        weights: [4, 5],
        construction: Construction::Swap {
            lambda0: 4,
            sigma: &[0, 2, 2, 2, -1, 3, 1, 2, 0, 0, 0, 0, 0, -4, -4],
            consts: [2, 1, 0, 3, 40, 56],
        },
        eta: [
            &[3, 4, 4, 4, 22, 4, 4, 4, 4, 4, 4, 4, 4, 4, 4],
            &[0, 6, 6, 6, 21, 7, 5, 6, 4, 4, 4, 4, 4, 0, 0],
        ],
        omega: [
            &[0, 160, 232, 232, 232, 160, 232, 160, 296, 296, 296, 296, 296, 296, 224],
            &[0, 160, 224, 224, 232, 160, 232, 160, 296, 296, 296, 296, 296, 296, 232],
        ],
        length: 77,
        delta_bar: [-3, 11, -8],
        singleton: [0, 6, -18],
        se: [
            &[(&[77, 0, 0], 1), (&[37, 40, 0], 9), (&[19, 58, 0], 12), (&[25, 36, 16], 6), (&[7, 54, 16], 36)],
            &[
                (&[77, 0, 0], 1),
                (&[37, 40, 0], 9),
                (&[21, 56, 0], 6),
                (&[19, 58, 0], 6),
                (&[21, 48, 8], 6),
                (&[5, 64, 8], 6),
                (&[6, 59, 12], 24),
                (&[7, 54, 16], 6),
            ],
        ],
        wwe: &[(0, 1), (160, 9), (224, 6), (232, 12), (296, 36)],
        dual: [
            &[(0, 1), (4, 165), (5, 18), (8, 21186)],
            &[(0, 1), (4, 171), (8, 21918)],
        ],
    },
    MatrixFixture {
        id: "mat-f2-w45-lindep",
        title: "M2(F2), weight (4,5), pair with equal rank sums",
        weights: [4, 5],
        construction: Construction::Explicit,
        eta: [
            &[0, 2, 3, 3, 1, 2, 3, 2, 2, 6, 2, 6, 6, 2, 6],
            &[0, 2, 2, 4, 2, 2, 2, 2, 6, 6, 2, 2, 6, 2, 6],
        ],
        omega: [
            &[0, 136, 144, 144, 136, 136, 144, 136, 192, 192, 192, 192, 192, 192, 192],
            &[0, 136, 144, 136, 136, 136, 144, 144, 192, 192, 192, 192, 192, 192, 192],
        ],
        length: 46,
        delta_bar: [0, 0, 0],
        singleton: [0, 0, 0],
        se: [
            &[
                (&[46, 0, 0], 1),
                (&[12, 34, 0], 12),
                (&[10, 36, 0], 9),
                (&[1, 33, 12], 6),
                (&[2, 28, 16], 18),
                (&[3, 23, 20], 18),
            ],
            &[(&[46, 0, 0], 1), (&[12, 34, 0], 12), (&[10, 36, 0], 9), (&[2, 28, 16], 36), (&[4, 18, 24], 6)],
        ],
        wwe: &[(0, 1), (136, 12), (144, 9), (192, 42)],
        dual: [
            &[(0, 1), (4, 48), (8, 4059), (9, 1440), (10, 522), (12, 290160)],
            &[(0, 1), (4, 48), (8, 4059), (9, 1440), (10, 522), (12, 290112)],
        ],
    },
    MatrixFixture {
        id: "mat-f2-w37",
        title: "M2(F2), weight (3,7), swap s = 1",
        weights: [3, 7],
        construction: Construction::Swap {
            lambda0: 4,
            sigma: &[0, -3, -3, -3, -5, -11, 5, -3, 0, 0, 0, 0, 0, 6, 6],
            consts: [10, 4, 0, -11, 30, 55],
        },
        eta: [
            &[0, 12, 12, 12, 122, 12, 12, 12, 12, 12, 12, 12, 12, 12, 12],
            &[11, 9, 9, 9, 117, 1, 17, 9, 12, 12, 12, 12, 12, 18, 18],
        ],
        omega: [
            &[0, 360, 690, 690, 690, 360, 690, 360, 990, 990, 990, 990, 990, 990, 660],
            &[0, 360, 660, 660, 690, 360, 690, 360, 990, 990, 990, 990, 990, 990, 690],
        ],
        length: 278,
        delta_bar: [11, -23, 12],
        singleton: [0, 30, 66],
        se: [
            &[(&[278, 0, 0], 1), (&[158, 120, 0], 9), (&[48, 230, 0], 12), (&[122, 108, 48], 6), (&[12, 218, 48], 36)],
            &[
                (&[278, 0, 0], 1),
                (&[158, 120, 0], 9),
                (&[58, 220, 0], 6),
                (&[48, 230, 0], 6),
                (&[12, 218, 48], 6),
                (&[20, 204, 54], 24),
                (&[128, 90, 60], 6),
                (&[28, 190, 60], 6),
            ],
        ],
        wwe: &[(0, 1), (360, 9), (660, 6), (690, 12), (990, 36)],
        dual: [
            &[(0, 1), (3, 582), (6, 316947), (9, 152382900)],
            &[(0, 1), (3, 612), (6, 326649), (7, 66), (9, 154592448)],
        ],
    },
];

/// Fixture identifiers in a stable order.
pub fn fixture_ids() -> Vec<&'static str> {
    CHAIN.iter().map(|f| f.id).chain(MATRIX.iter().map(|f| f.id)).collect()
}

pub fn run_fixture(id: &str) -> Result<FixtureReport, CliError> {
    if let Some(f) = CHAIN.iter().find(|f| f.id == id) {
        return Ok(run_chain(f)?);
    }
    if let Some(f) = MATRIX.iter().find(|f| f.id == id) {
        return Ok(run_matrix(f)?);
    }
    Err(CliError::Usage(format!(
        "unknown fixture {id:?}; known: {}",
        fixture_ids().join(", ")
    )))
}

fn expected_se(classes: usize, length: u64, t: Terms) -> Result<PartitionEnumerator, ringcodes::Error> {
    PartitionEnumerator::from_terms(
        classes,
        length,
        t.iter().map(|(e, c)| (e.to_vec(), BigInt::from(*c))),
    )
}

fn max_deg(p: Poly) -> u64 {
    p.iter().map(|&(d, _)| d).max().unwrap_or(0)
}

fn run_chain(f: &ChainFixture) -> Result<FixtureReport, ringcodes::Error> {
    let ring = ChainRing::integers_mod(2, 3)?;
    let w = WeightTable::chain(2, &f.weights)?;
    let pair = build_chain_pair(&ring, &w, 3)?;
    let mut checks = vec![
        Check::new("C counts", list(f.c_counts), list(pair.c.counts())),
        Check::new("D counts", list(f.d_counts), list(pair.d.counts())),
    ];
    let len = pair.length();
    checks.push(Check::new("lengths agree", len, pair.d.length()));
    let (se_c, se_d) = (pair.c.se(), pair.d.se());
    checks.push(Check::new("se(C)", se_text(&expected_se(4, len, f.se_c)?), se_text(&se_c)));
    checks.push(Check::new("se(D)", se_text(&expected_se(4, len, f.se_d)?), se_text(&se_d)));
    let wwe = Wwe::from_i64(f.wwe).display(None);
    checks.push(Check::new("wwe(C)", &wwe, pair.c.wwe(&w).display(None)));
    checks.push(Check::new("wwe(D)", &wwe, pair.d.wwe(&w).display(None)));

    let kr = ring.generalized_kravchuk();
    let cw = w.by_class();
    let top = max_deg(f.dual_c).max(max_deg(f.dual_d));
    let dual_c = truncated_dual_wwe(&se_c, &kr, &se_c.total(), &cw, top)?;
    let dual_d = truncated_dual_wwe(&se_d, &kr, &se_d.total(), &cw, top)?;
    checks.push(Check::new("dual(C) prefix", Wwe::from_i64(f.dual_c).display(None), dual_c.display(None)));
    checks.push(Check::new("dual(D) prefix", Wwe::from_i64(f.dual_d).display(None), dual_d.display(None)));
    let (d, delta) = f.delta;
    let diff = dual_c.coeff(d) - dual_d.coeff(d);
    checks.push(Check::new(&format!("A_{d}(C dual) - A_{d}(D dual)"), delta, &diff));
    let formula = delta_singleton(&w, 3)?;
    checks.push(Check::new("closed-form delta", delta, &formula));

    let data = json!({
        "ring": "Z/8",
        "weights": f.weights,
        "k": 3,
        "length": len.to_string(),
        "a": bigs(&pair.a),
        "delta_cap": pair.delta_cap.to_string(),
        "se_c": se_json(&se_c),
        "se_d": se_json(&se_d),
        "wwe": wwe_json(&pair.c.wwe(&w)),
        "dual_c_prefix": wwe_json(&dual_c),
        "dual_d_prefix": wwe_json(&dual_d),
    });
    Ok(FixtureReport {
        id: f.id,
        title: f.title,
        checks,
        data,
    })
}

fn run_matrix(f: &MatrixFixture) -> Result<FixtureReport, ringcodes::Error> {
    let space = Arc::new(MatrixSpace::new(2, 2, 3, OrbitOrdering::PaperK2M3Q2)?);
    let w = WeightTable::matrix(2, &f.weights)?;
    let mut checks = Vec::new();
    let mut extra = serde_json::Map::new();
    let (first, second): (MatrixCode, MatrixCode) = match &f.construction {
        Construction::Swap { lambda0, sigma, consts } => {
            let p = build_swap(&space, &w, 1, SwapOptions { lambda0: Some(*lambda0) })?;
            // σ is stored with a leading zero for the zero orbit
            let mut got_sigma = vec![BigInt::from(0)];
            got_sigma.extend(p.sigma.iter().cloned());
            checks.push(Check::new("sigma", list(sigma), list(&got_sigma)));
            let got = [&p.c, &p.a, &p.b, &p.delta, &p.alpha1, &p.alpha2];
            for (name, (e, g)) in ["c", "a", "b", "Delta", "alpha1", "alpha2"]
                .iter()
                .zip(consts.iter().zip(got))
            {
                checks.push(Check::new(name, e, g));
            }
            extra.insert("sigma".into(), bigs(&got_sigma));
            extra.insert("varsigma".into(), bigs(&p.varsigma));
            (p.code_c, p.code_d)
        }
        Construction::Degenerate => {
            let p = build_degenerate_pair(&space, &w, 2, Padding::Minimal)?;
            extra.insert("gamma".into(), json!(p.gamma));
            (p.plus, p.minus)
        }
        Construction::Explicit => (
            MatrixCode::new(space.clone(), f.eta[0].to_vec())?,
            MatrixCode::new(space.clone(), f.eta[1].to_vec())?,
        ),
    };
    let codes = [&first, &second];
    for (i, code) in codes.iter().enumerate() {
        let tag = ["first", "second"][i];
        checks.push(Check::new(&format!("eta {tag}"), list(f.eta[i]), list(code.counts())));
        checks.push(Check::new(
            &format!("omega {tag}"),
            list(f.omega[i]),
            list(&code.orbit_weights(&w)),
        ));
        checks.push(Check::new(&format!("length {tag}"), f.length, code.length()));
    }
    let dbar: Vec<BigInt> = first
        .rank_sums()
        .iter()
        .zip(second.rank_sums())
        .map(|(a, b)| BigInt::from(b - a))
        .collect();
    checks.push(Check::new("rank-sum difference", list(&f.delta_bar), list(&dbar)));
    let sing = singleton_deltas_full(&dbar, 2, 2);
    checks.push(Check::new("singleton contributions", list(&f.singleton), list(&sing)));

    let kr = rank_kravchuk(2, 2);
    let cw = w.by_class();
    let top = max_deg(f.dual[0]).max(max_deg(f.dual[1]));
    let wwe = Wwe::from_i64(f.wwe).display(None);
    let mut out = Vec::new();
    for (i, code) in codes.iter().enumerate() {
        let tag = ["first", "second"][i];
        let se = code.se();
        checks.push(Check::new(
            &format!("se {tag}"),
            se_text(&expected_se(3, f.length, f.se[i])?),
            se_text(&se),
        ));
        checks.push(Check::new(&format!("wwe {tag}"), &wwe, code.wwe(&w).display(None)));
        let dual = truncated_dual_wwe(&se, &kr, &se.total(), &cw, top)?;
        checks.push(Check::new(
            &format!("dual {tag} prefix"),
            Wwe::from_i64(f.dual[i]).display(None),
            dual.display(None),
        ));
        out.push((se, dual));
    }

    let mut data = json!({
        "ring": "M2(F2)",
        "weights": f.weights,
        "m": 3,
        "length": f.length.to_string(),
        "eta_first": list(first.counts()),
        "eta_second": list(second.counts()),
        "rank_sum_difference": bigs(&dbar),
        "singleton_contributions": bigs(&sing),
        "se_first": se_json(&out[0].0),
        "se_second": se_json(&out[1].0),
        "wwe": wwe_json(&first.wwe(&w)),
        "dual_first_prefix": wwe_json(&out[0].1),
        "dual_second_prefix": wwe_json(&out[1].1),
    });
    if let Value::Object(m) = &mut data {
        m.extend(extra);
    }
    Ok(FixtureReport {
        id: f.id,
        title: f.title,
        checks,
        data,
    })
}
