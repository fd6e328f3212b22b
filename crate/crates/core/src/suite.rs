//! The tagged verification suite.
//!
//! Each tag expands into independent tasks (usually one per genus). Tasks run
//! on a worker pool and their rows are merged back in tag order, so the report
//! does not depend on the number of threads.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::cokernels::{
    coker_ker_compare, hard_lefschetz_coker, pair_free_check, pairfree_phi, shifted_filtration, touchard_conjugation,
};
use crate::error::{Error, Result};
use crate::floer::{
    cup_decomposition_check, f2_g4_structures, hc_hf_compare, nondegeneracy_search, noniso_certificate,
    sp_equivariance_check, torsion_report, transvection_fixed_points,
};
use crate::heisenberg::{filtration_subquotients, gysin_homology, lee_packer_formula};
use crate::lefschetz::{
    constants_table, contraction_formula_exhaustive, contraction_formula_random, divisibility_check,
    filtration_shift_check, graded_rank_check, obstruction_checks, split_across_midpoint, split_first_half,
    weighted_leibniz_exhaustive, weighted_leibniz_random,
};
use crate::linalg::AbelianInvariants;
use crate::report::{CheckReport, Status};
use crate::util::binomial;
use crate::CoefficientRing;

/// Monomials are `u64` bitmasks over `2g + 1` indices.
pub const G_HARD_CAP: usize = 8;
pub const DEFAULT_SEED: u64 = 20_240_901;
pub const DEFAULT_MAX_BYTES: u64 = 4 << 30;
pub const MAX_BYTES_ENV: &str = "LEFSCHETZ_MAX_BYTES";

/// Genus up to which the identities are checked on every basis element.
const EXHAUSTIVE_G: usize = 4;
const RANDOM_CASES: usize = 10_000;
const TOUCHARD_K: usize = 12;

pub const PER_PERIOD_NOTE: &str =
    "[U,U^-1]-modules are reported per U-period of the Z/2-graded module (omega*U -> omega)";

pub struct TagInfo {
    pub tag: &'static str,
    pub description: &'static str,
}

const fn tag(tag: &'static str, description: &'static str) -> TagInfo {
    TagInfo { tag, description }
}

pub const TAGS: &[TagInfo] = &[
    tag(
        "lemma2.1",
        "contraction of omega after wedge with omega: i(w^x) = w^i(x) + (k-g)x",
    ),
    tag("lemma2.2", "expansion of i_{w_m}(w_n ^ x) in divided powers"),
    tag(
        "lemma2.5",
        "membership in F_r is detected after wedging or contracting with w_j",
    ),
    tag(
        "thm2.9",
        "gr_r of the filtration is free of primitive rank; i_{w_r} is unimodular on it",
    ),
    tag(
        "cor2.10",
        "graded wedge and contraction maps are scalar multiples of the identity",
    ),
    tag(
        "lemma2.12",
        "divisibility of [w_r ^ x] in gr_r; w_k is C(g,k) times a generator",
    ),
    tag("lemma2.13", "i_w(w_g) = -w_{g-1} with w_{g-1} indivisible (g >= 2)"),
    tag(
        "prop2.14",
        "Z-splittings of the filtration compatible with i_w below the middle",
    ),
    tag("prop2.15", "Z-splittings across the middle compatible with i_{w_k}"),
    tag("thm3.1", "cokernels of wedge with w_k in the middle range"),
    tag(
        "thm3.2",
        "Heisenberg group homology: Gysin route against the closed formula",
    ),
    tag("thm3.3", "Heisenberg group homology from the graded filtration route"),
    tag("prop3.5a", "coker of i_w and i_{e^w-1} agree over Z; kernels are equal"),
    tag(
        "prop3.5b",
        "graded cokernels of the shifted filtration for both operators",
    ),
    tag("touchard", "Touchard change of basis conjugates E_k to D_k"),
    tag(
        "f2g4",
        "genus 4 modules over F_2 and the equivariant non-isomorphism certificate",
    ),
    tag("thm1.7", "cup homology equals the HF-infinity model as groups"),
    tag("cor1.8", "torsion of the HF-infinity model and its first appearance"),
    tag(
        "lemma5.10",
        "nondegeneracy of [a ^ f] and fixed points of the transvection action",
    ),
];

pub fn tag_names() -> impl Iterator<Item = &'static str> {
    TAGS.iter().map(|t| t.tag)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteConfig {
    pub g_max: usize,
    pub seed: u64,
    pub jobs: usize,
    pub timings: bool,
    /// Rings for the ring-dependent decompositions.
    pub rings: Vec<CoefficientRing>,
    pub max_bytes: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            g_max: 4,
            seed: DEFAULT_SEED,
            jobs: 1,
            timings: false,
            rings: vec![
                CoefficientRing::Integers,
                CoefficientRing::PrimeField(2),
                CoefficientRing::PrimeField(3),
            ],
            max_bytes: max_bytes_from_env(),
        }
    }
}

/// `LEFSCHETZ_MAX_BYTES`, or the default when unset or unparsable.
pub fn max_bytes_from_env() -> u64 {
    std::env::var(MAX_BYTES_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_BYTES)
}

/// Rough peak memory of the whole-algebra matrices at genus `g`.
pub fn estimated_bytes(g: usize) -> u64 {
    64u64.saturating_mul(16u64.saturating_pow(g as u32))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteOutcome {
    pub checks: Vec<CheckReport>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }
}

type Run = Box<dyn Fn(&mut ChaCha8Rng) -> Vec<CheckReport> + Send + Sync>;

struct Task {
    tag: &'static str,
    g: Option<usize>,
    run: Run,
}

fn task(
    tag: &'static str,
    g: Option<usize>,
    run: impl Fn(&mut ChaCha8Rng) -> Vec<CheckReport> + Send + Sync + 'static,
) -> Task {
    Task {
        tag,
        g,
        run: Box::new(run),
    }
}

fn gp(g: usize) -> String {
    format!("g={g}")
}

fn inv(a: &AbelianInvariants) -> String {
    a.invariant_factor_string()
}

fn from_result<T>(
    id: &str,
    params: String,
    expected: &str,
    r: Result<T>,
    ok: impl FnOnce(T) -> CheckReport,
) -> CheckReport {
    match r {
        Ok(v) => ok(v),
        Err(e) => CheckReport::error(id, params, &e, expected),
    }
}

/// A row for a check that returns a case count and errors on violation.
fn counted(id: &str, params: String, what: &str, r: Result<usize>) -> CheckReport {
    let expected = format!("{what} hold");
    from_result(id, params.clone(), &expected.clone(), r, |n| {
        CheckReport::new(id, params, true, format!("{n} {what} hold"), expected)
    })
}

fn genera(cfg: &SuiteConfig) -> std::ops::RangeInclusive<usize> {
    1..=cfg.g_max
}

fn lemma21(cfg: &SuiteConfig) -> Vec<Task> {
    genera(cfg)
        .map(|g| {
            task("lemma2.1", Some(g), move |rng| {
                vec![if g <= EXHAUSTIVE_G {
                    counted(
                        "lemma2.1",
                        format!("g={g} exhaustive"),
                        "basis cases",
                        weighted_leibniz_exhaustive(g),
                    )
                } else {
                    counted(
                        "lemma2.1",
                        format!("g={g} random"),
                        "random cases",
                        weighted_leibniz_random(g, RANDOM_CASES, rng),
                    )
                }]
            })
        })
        .collect()
}

fn lemma22(cfg: &SuiteConfig) -> Vec<Task> {
    genera(cfg)
        .map(|g| {
            task("lemma2.2", Some(g), move |rng| {
                vec![if g <= EXHAUSTIVE_G {
                    counted(
                        "lemma2.2",
                        format!("g={g} exhaustive"),
                        "(x, m, n) cases",
                        contraction_formula_exhaustive(g),
                    )
                } else {
                    counted(
                        "lemma2.2",
                        format!("g={g} random"),
                        "random cases",
                        contraction_formula_random(g, RANDOM_CASES, rng),
                    )
                }]
            })
        })
        .collect()
}

fn lemma25(cfg: &SuiteConfig) -> Vec<Task> {
    genera(cfg)
        .map(|g| {
            task("lemma2.5", Some(g), move |rng| {
                vec![counted(
                    "lemma2.5",
                    gp(g),
                    "membership cases",
                    filtration_shift_check(g, 200, rng),
                )]
            })
        })
        .collect()
}

fn thm29(cfg: &SuiteConfig) -> Vec<Task> {
    genera(cfg)
        .map(|g| {
            task("thm2.9", Some(g), move |_| {
                vec![counted("thm2.9", gp(g), "graded pieces", graded_rank_check(g))]
            })
        })
        .collect()
}

fn cor210(cfg: &SuiteConfig) -> Vec<Task> {
    genera(cfg)
        .map(|g| {
            task("cor2.10", Some(g), move |_| {
                let expected = "wedge (-1)^j C(g-k-r,j), contraction C(r+j,j)";
                vec![from_result("cor2.10", gp(g), expected, constants_table(g), |rows| {
                    let bad: Vec<String> = rows
                        .iter()
                        .filter(|r| !r.verified)
                        .map(|r| {
                            format!(
                                "{:?} k={} r={} j={} c={}",
                                r.direction, r.k, r.r, r.j, r.claimed_constant
                            )
                        })
                        .collect();
                    let computed = if bad.is_empty() {
                        format!("{} constants verified", rows.len())
                    } else {
                        format!("{} of {} constants wrong: {}", bad.len(), rows.len(), bad.join("; "))
                    };
                    CheckReport::new("cor2.10", gp(g), bad.is_empty(), computed, expected)
                })]
            })
        })
        .collect()
}

fn lemma212(cfg: &SuiteConfig) -> Vec<Task> {
    genera(cfg)
        .map(|g| {
            task("lemma2.12", Some(g), move |_| {
                let mut cases = 0;
                let mut r = Ok(());
                'outer: for k in 0..=g {
                    for rr in 0..=g - k {
                        r = divisibility_check(g, k, rr);
                        if r.is_err() {
                            break 'outer;
                        }
                        cases += 1;
                    }
                }
                let mut rows = vec![counted(
                    "lemma2.12",
                    format!("g={g} divisibility"),
                    "(k, r) cases",
                    r.map(|_| cases),
                )];
                if g >= 2 {
                    let expected = (1..g)
                        .map(|k| format!("+-{}", binomial(g as i64, k as i64)))
                        .collect::<Vec<_>>()
                        .join(",");
                    rows.push(from_result(
                        "lemma2.12",
                        format!("g={g} omega_k classes"),
                        &expected,
                        obstruction_checks(g),
                        |o| {
                            let computed = o
                                .omega_k_classes
                                .iter()
                                .map(|(_, c)| c.to_string())
                                .collect::<Vec<_>>()
                                .join(",");
                            CheckReport::new(
                                "lemma2.12",
                                format!("g={g} omega_k classes"),
                                true,
                                computed,
                                expected.clone(),
                            )
                        },
                    ));
                }
                rows
            })
        })
        .collect()
}

fn lemma213(cfg: &SuiteConfig) -> Vec<Task> {
    genera(cfg)
        .filter(|&g| g >= 2)
        .map(|g| {
            task("lemma2.13", Some(g), move |_| {
                let expected = "i_w(w_g) = -w_{g-1}, content 1";
                vec![from_result("lemma2.13", gp(g), expected, obstruction_checks(g), |o| {
                    CheckReport::new(
                        "lemma2.13",
                        gp(g),
                        o.contraction_of_top_form,
                        format!(
                            "i_w(w_g) = -w_{{g-1}}: {}, content {}",
                            o.contraction_of_top_form, o.content_of_omega_g_minus_1
                        ),
                        expected,
                    )
                })]
            })
        })
        .collect()
}

fn prop214(cfg: &SuiteConfig) -> Vec<Task> {
    genera(cfg)
        .map(|g| {
            task("prop2.14", Some(g), move |_| {
                vec![counted(
                    "prop2.14",
                    gp(g),
                    "compatible splittings of degrees 0..=g",
                    split_first_half(g).map(|v| v.len()),
                )]
            })
        })
        .collect()
}

fn prop215(cfg: &SuiteConfig) -> Vec<Task> {
    genera(cfg)
        .map(|g| {
            task("prop2.15", Some(g), move |_| {
                let r = split_first_half(g).and_then(|first| {
                    for k in 0..=g {
                        split_across_midpoint(g, k, &first[g - k])?;
                    }
                    Ok(g + 1)
                });
                vec![counted("prop2.15", gp(g), "splittings of degrees g..=2g", r)]
            })
        })
        .collect()
}

fn thm31(cfg: &SuiteConfig) -> Vec<Task> {
    genera(cfg)
        .map(|g| {
            task("thm3.1", Some(g), move |_| {
                (0..=g)
                    .map(|k| {
                        let params = format!("g={g} k={k}");
                        let expected = inv(&AbelianInvariants::sum_all(&crate::cokernels::expected_graded(g, k)));
                        from_result(
                            "thm3.1",
                            params.clone(),
                            &expected.clone(),
                            hard_lefschetz_coker(g, k, g <= 4),
                            |r| {
                                let mut c = CheckReport::new("thm3.1", params, true, inv(&r.wedge), expected);
                                if r.graded.is_some() {
                                    c = c.with_note("graded pieces match");
                                }
                                c
                            },
                        )
                    })
                    .collect()
            })
        })
        .collect()
}

fn degrees_string(d: &[AbelianInvariants]) -> String {
    d.iter().map(inv).collect::<Vec<_>>().join("; ")
}

fn thm32(cfg: &SuiteConfig) -> Vec<Task> {
    genera(cfg)
        .map(|g| {
            task("thm3.2", Some(g), move |_| {
                let formula = lee_packer_formula(g);
                let expected = degrees_string(&formula.degrees);
                vec![from_result(
                    "thm3.2",
                    gp(g),
                    &expected.clone(),
                    gysin_homology(g),
                    |h| {
                        let holds = h.degrees == formula.degrees && h.duality_holds() && h.euler_characteristic() == 0;
                        CheckReport::new("thm3.2", gp(g), holds, degrees_string(&h.degrees), expected)
                            .with_note(format!("duality {}", if h.duality_holds() { "holds" } else { "fails" }))
                    },
                )]
            })
        })
        .collect()
}

fn thm33(cfg: &SuiteConfig) -> Vec<Task> {
    genera(cfg)
        .map(|g| {
            task("thm3.3", Some(g), move |rng| {
                let seed = rand::Rng::gen(rng);
                let expected = gysin_homology(g)
                    .map(|h| degrees_string(&h.degrees))
                    .unwrap_or_default();
                vec![from_result(
                    "thm3.3",
                    gp(g),
                    &expected.clone(),
                    filtration_subquotients(g, 3, seed),
                    |f| {
                        let computed = degrees_string(&f.homology.degrees);
                        CheckReport::new("thm3.3", gp(g), computed == expected, computed, expected)
                    },
                )]
            })
        })
        .collect()
}

fn prop35a(cfg: &SuiteConfig) -> Vec<Task> {
    genera(cfg)
        .map(|g| {
            task("prop3.5a", Some(g), move |rng| {
                let mut rows = Vec::new();
                let expected = "SNF and transported cokernels agree; ker = sum of P^k";
                rows.push(from_result(
                    "prop3.5a",
                    format!("g={g} cokernels"),
                    expected,
                    coker_ker_compare(g),
                    |r| {
                        CheckReport::new(
                            "prop3.5a",
                            format!("g={g} cokernels"),
                            true,
                            format!("{} (kernel rank {})", inv(&r.omega_cokernel), r.kernel_rank),
                            expected,
                        )
                    },
                ));
                rows.push(from_result(
                    "prop3.5a",
                    format!("g={g} pair-free phi"),
                    "ring isomorphism",
                    pairfree_phi(g),
                    |r| {
                        CheckReport::new(
                            "prop3.5a",
                            format!("g={g} pair-free phi"),
                            r.passed(),
                            inv(&r.omega_cokernel),
                            inv(&r.exp_cokernel),
                        )
                    },
                ));
                rows.push(counted(
                    "prop3.5a",
                    format!("g={g} pair-free pieces"),
                    "monomials covered",
                    pair_free_check(g),
                ));
                if g <= 4 {
                    let seed = rand::Rng::gen(rng);
                    let params = format!("g={g} Sp-equivariance");
                    rows.push(from_result(
                        "prop3.5a",
                        params.clone(),
                        "commutes",
                        sp_equivariance_check(g, 20, seed),
                        |ok| {
                            CheckReport::new(
                                "prop3.5a",
                                params,
                                ok,
                                if ok { "commutes" } else { "does not commute" },
                                "commutes",
                            )
                            .with_note("20 random transvections")
                        },
                    ));
                }
                rows
            })
        })
        .collect()
}

fn prop35b(cfg: &SuiteConfig) -> Vec<Task> {
    genera(cfg)
        .map(|g| {
            task("prop3.5b", Some(g), move |_| match shifted_filtration(g) {
                Ok(rep) => rep
                    .rows
                    .iter()
                    .map(|r| {
                        let holds = r.omega == r.expected && r.exp == r.expected && r.preimage_stable;
                        let c = CheckReport::new(
                            "prop3.5b",
                            format!("g={g} k={}", r.k),
                            holds,
                            format!("{} / {}", inv(&r.omega), inv(&r.exp)),
                            format!("{} / {}", inv(&r.expected), inv(&r.expected)),
                        );
                        if r.preimage_equals_level {
                            c
                        } else {
                            c.with_note("preimage is level + kernel, strictly larger than the level")
                        }
                    })
                    .collect(),
                Err(e) => vec![CheckReport::error("prop3.5b", gp(g), &e, "graded cokernels match")],
            })
        })
        .collect()
}

fn touchard(_: &SuiteConfig) -> Vec<Task> {
    vec![task("touchard", None, |_| {
        (0..=TOUCHARD_K)
            .map(|k| {
                let params = format!("k={k}");
                from_result("touchard", params.clone(), "conjugate", touchard_conjugation(k), |m| {
                    CheckReport::new(
                        "touchard",
                        params,
                        m.conjugate && m.stirling_identity,
                        inv(&m.e_cokernel),
                        inv(&m.expected_cokernel),
                    )
                })
            })
            .collect()
    })]
}

fn f2g4(cfg: &SuiteConfig) -> Vec<Task> {
    if cfg.g_max < 4 {
        return Vec::new();
    }
    vec![task("f2g4", Some(4), |_| {
        let s = match f2_g4_structures() {
            Ok(s) => s,
            Err(e) => return vec![CheckReport::error("f2g4", "g=4", &e, "structures")],
        };
        let d = &s.dims;
        let dim = |name: &str, got: usize, want: usize| {
            CheckReport::new(
                "f2g4",
                format!("g=4 dim {name}"),
                got == want,
                got.to_string(),
                want.to_string(),
            )
        };
        let mut rows = vec![
            dim("C4", d.c4, 44),
            dim("i_w F2 L6", d.contracted_f2_lambda6, 26),
            dim("coker(w) total", d.total_omega, 136),
            dim("coker(e^w-1) total", d.total_exp, 136),
            dim("coker(w) odd", d.odd_omega, 64),
            dim("coker(w) even", d.even_omega, 72),
        ];
        rows.extend(
            s.checks
                .iter()
                .map(|c| CheckReport::new("f2g4", format!("g=4 {}", c.name), c.holds, c.detail.clone(), "holds")),
        );
        rows.push(from_result(
            "f2g4",
            "g=4 non-isomorphism".into(),
            "every map kills omega",
            noniso_certificate(&s),
            |c| {
                CheckReport::new(
                    "f2g4",
                    "g=4 non-isomorphism",
                    c.holds(),
                    format!(
                        "dim Hom(L2, C4') = {}, dim Hom(L2, L2/<w>) = {}, kills omega: {}",
                        c.hom_to_c4_prime.dim, c.hom_to_quotient.dim, c.kills_omega
                    ),
                    "every map kills omega",
                )
            },
        ));
        rows
    })]
}

fn thm17(cfg: &SuiteConfig) -> Vec<Task> {
    let rings = cfg.rings.clone();
    genera(cfg)
        .map(|g| {
            let rings = rings.clone();
            task("thm1.7", Some(g), move |_| {
                let mut rows = vec![from_result("thm1.7", gp(g), "HC = HF", hc_hf_compare(g, g <= 3), |r| {
                    CheckReport::new(
                        "thm1.7",
                        gp(g),
                        r.equal,
                        format!("{} | {}", inv(&r.hc.even), inv(&r.hc.odd)),
                        format!("{} | {}", inv(&r.hf.even), inv(&r.hf.odd)),
                    )
                    .with_note("even | odd")
                })];
                for &ring in &rings {
                    let params = format!("g={g} ring={ring}");
                    rows.push(from_result(
                        "thm1.7",
                        params.clone(),
                        "coker + e0 ker",
                        cup_decomposition_check(g, ring),
                        |r| {
                            CheckReport::new(
                                "thm1.7",
                                params,
                                r.agree,
                                format!("{} | {}", inv(&r.cup.even), inv(&r.cup.odd)),
                                format!("{} | {}", inv(&r.predicted.even), inv(&r.predicted.odd)),
                            )
                        },
                    ));
                }
                rows
            })
        })
        .collect()
}

fn cor18(cfg: &SuiteConfig) -> Vec<Task> {
    let g_max = cfg.g_max;
    if g_max == 0 {
        return Vec::new();
    }
    vec![task("cor1.8", Some(g_max), move |_| {
        let rep = match torsion_report(g_max) {
            Ok(r) => r,
            Err(e) => {
                return vec![CheckReport::error(
                    "cor1.8",
                    format!("g<={g_max}"),
                    &e,
                    "torsion report",
                )]
            }
        };
        let mut rows: Vec<CheckReport> = rep
            .rows
            .iter()
            .map(|r| {
                let derived = AbelianInvariants::free(r.derived_free_rank).direct_sum(&r.derived_torsion);
                let stated = AbelianInvariants::free(r.stated_free_rank).direct_sum(&r.stated_torsion);
                let c = CheckReport::new("cor1.8", gp(r.g), r.derived_matches, inv(&r.observed), inv(&derived));
                if stated == derived {
                    c
                } else {
                    c.with_note(format!("stated count {}", inv(&stated)))
                }
            })
            .collect();
        for t in &rep.thresholds {
            let params = format!("first Z/{} g<={g_max}", t.order);
            let expected = if t.predicted_first_g <= g_max {
                format!("g={}", t.predicted_first_g)
            } else {
                "none".into()
            };
            let computed = t.observed_first_g.map_or("none".to_string(), |g| format!("g={g}"));
            rows.push(CheckReport::new(
                "cor1.8",
                params,
                computed == expected,
                computed,
                expected,
            ));
        }
        rows
    })]
}

fn lemma510(cfg: &SuiteConfig) -> Vec<Task> {
    let mut out = Vec::new();
    for (ring, g_top) in [(CoefficientRing::Integers, 3), (CoefficientRing::PrimeField(2), 4)] {
        for g in 1..=cfg.g_max.min(g_top) {
            out.push(task("lemma5.10", Some(g), move |rng| {
                let seed = rand::Rng::gen(rng);
                let params = format!("g={g} ring={ring} witnesses");
                let mut rows = vec![from_result(
                    "lemma5.10",
                    params.clone(),
                    "0 unwitnessed",
                    nondegeneracy_search(g, ring, 20, seed),
                    |c| {
                        let mut r = CheckReport::new(
                            "lemma5.10",
                            params,
                            c.holds(),
                            format!("{} unwitnessed", c.unwitnessed.len()),
                            "0 unwitnessed",
                        );
                        if let Some(first) = c.unwitnessed.first() {
                            r = r.with_note(format!("e.g. {first}"));
                        }
                        r
                    },
                )];
                let params = format!("g={g} ring={ring} fixed points");
                rows.push(from_result(
                    "lemma5.10",
                    params.clone(),
                    "fixed = coker",
                    transvection_fixed_points(g, ring),
                    |f| CheckReport::new("lemma5.10", params, f.equals_cokernel, inv(&f.fixed), inv(&f.cokernel)),
                ));
                rows
            }));
        }
    }
    out
}

fn tasks_for(tag: &str, cfg: &SuiteConfig) -> Vec<Task> {
    match tag {
        "lemma2.1" => lemma21(cfg),
        "lemma2.2" => lemma22(cfg),
        "lemma2.5" => lemma25(cfg),
        "thm2.9" => thm29(cfg),
        "cor2.10" => cor210(cfg),
        "lemma2.12" => lemma212(cfg),
        "lemma2.13" => lemma213(cfg),
        "prop2.14" => prop214(cfg),
        "prop2.15" => prop215(cfg),
        "thm3.1" => thm31(cfg),
        "thm3.2" => thm32(cfg),
        "thm3.3" => thm33(cfg),
        "prop3.5a" => prop35a(cfg),
        "prop3.5b" => prop35b(cfg),
        "touchard" => touchard(cfg),
        "f2g4" => f2g4(cfg),
        "thm1.7" => thm17(cfg),
        "cor1.8" => cor18(cfg),
        "lemma5.10" => lemma510(cfg),
        _ => unreachable!("tags are validated first"),
    }
}

/// Resolve a selector to tags in suite order; `all` selects everything.
pub fn resolve_tags(selected: &[String]) -> Result<Vec<&'static str>> {
    for s in selected {
        if s != "all" && !tag_names().any(|t| t == s) {
            return Err(Error::InvalidArgument(format!(
                "unknown tag `{s}`; see `verify --list`"
            )));
        }
    }
    let all = selected.iter().any(|s| s == "all");
    Ok(tag_names().filter(|t| all || selected.iter().any(|s| s == t)).collect())
}

/// Deterministic per-task seed, independent of which other tasks were selected.
fn task_seed(seed: u64, tag: &str, g: Option<usize>) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in tag.bytes().chain(g.map_or(u64::MAX, |g| g as u64).to_le_bytes()) {
        h = (h ^ b as u64).wrapping_mul(0x0100_0000_01b3);
    }
    h ^ seed
}

pub fn run_suite(selected: &[String], cfg: &SuiteConfig) -> Result<SuiteOutcome> {
    if cfg.g_max > G_HARD_CAP {
        return Err(Error::InvalidArgument(format!(
            "g-max {} exceeds the hard cap {G_HARD_CAP}",
            cfg.g_max
        )));
    }
    let tags = resolve_tags(selected)?;
    let tasks: Vec<Task> = tags.iter().flat_map(|t| tasks_for(t, cfg)).collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs.max(1))
        .build()
        .map_err(|e| Error::Internal(e.to_string()))?;
    let results: Vec<Vec<CheckReport>> = pool.install(|| {
        tasks
            .par_iter()
            .map(|t| {
                if let Some(g) = t.g {
                    let need = estimated_bytes(g);
                    if need > cfg.max_bytes {
                        return vec![CheckReport::skipped(
                            t.tag,
                            gp(g),
                            format!("needs about {need} bytes, over {MAX_BYTES_ENV}={}", cfg.max_bytes),
                        )];
                    }
                }
                let mut rng = ChaCha8Rng::seed_from_u64(task_seed(cfg.seed, t.tag, t.g));
                let start = Instant::now();
                let mut rows = (t.run)(&mut rng);
                if cfg.timings {
                    let ms = start.elapsed().as_millis() as u64;
                    for r in &mut rows {
                        r.wall_ms = Some(ms);
                    }
                }
                rows
            })
            .collect()
    });
    Ok(SuiteOutcome {
        checks: results.into_iter().flatten().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(g_max: usize) -> SuiteConfig {
        SuiteConfig {
            g_max,
            ..SuiteConfig::default()
        }
    }

    #[test]
    fn tags_are_unique() {
        let mut t: Vec<_> = tag_names().collect();
        t.sort();
        t.dedup();
        assert_eq!(t.len(), TAGS.len());
    }

    #[test]
    fn unknown_tag() {
        assert!(matches!(
            run_suite(&["lemma9.9".into()], &cfg(2)),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn empty_range_passes() {
        let out = run_suite(&["lemma2.2".into()], &cfg(0)).unwrap();
        assert!(out.checks.is_empty() && out.passed());
    }

    #[test]
    fn hard_cap() {
        assert!(run_suite(&["thm2.9".into()], &cfg(9)).is_err());
    }

    #[test]
    fn memory_guard_skips() {
        let c = SuiteConfig {
            max_bytes: estimated_bytes(1),
            ..cfg(2)
        };
        let out = run_suite(&["thm2.9".into()], &c).unwrap();
        assert_eq!(out.checks[0].status, Status::Pass);
        assert_eq!(out.checks[1].status, Status::Skipped);
    }

    #[test]
    fn small_suite() {
        let tags: Vec<String> = ["lemma2.1", "cor2.10", "thm3.1", "prop3.5b", "thm1.7"]
            .map(String::from)
            .to_vec();
        let out = run_suite(&tags, &cfg(2)).unwrap();
        assert!(
            out.passed(),
            "{:?}",
            out.checks
                .iter()
                .filter(|c| c.status == Status::Fail)
                .collect::<Vec<_>>()
        );
        let out = run_suite(&["thm3.1".into()], &cfg(3)).unwrap();
        let spot = out.checks.iter().find(|c| c.params == "g=3 k=1").unwrap();
        assert_eq!((spot.status, spot.computed.as_str()), (Status::Pass, "Z/2"));
    }

    #[test]
    fn lemma510_fails_from_genus_two() {
        let out = run_suite(&["lemma5.10".into()], &cfg(2)).unwrap();
        for c in &out.checks {
            assert_eq!(c.status == Status::Pass, c.params.starts_with("g=1"), "{c:?}");
        }
    }

    #[test]
    fn thread_count_does_not_change_output() {
        let tags: Vec<String> = ["lemma2.5", "thm3.3", "prop3.5a"].map(String::from).to_vec();
        let one = run_suite(&tags, &cfg(3)).unwrap();
        let four = run_suite(&tags, &SuiteConfig { jobs: 4, ..cfg(3) }).unwrap();
        assert_eq!(one, four);
    }
}
