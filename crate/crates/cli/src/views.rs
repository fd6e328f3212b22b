//! Table builders for each subcommand.

use intlef::cokernels::{contraction_cokernel, hard_lefschetz_coker, shifted_filtration, touchard_conjugation};
use intlef::exterior::{Operator, Parity};
use intlef::floer::{
    cup_homology, f2_g4_structures, hc_hf_compare, hf_model, nondegeneracy_search, noniso_certificate, torsion_report,
    transvection_fixed_points, ParityInvariants,
};
use intlef::heisenberg::{filtration_subquotients, gysin_homology, lee_packer_formula};
use intlef::lefschetz::{self, constants_table};
use intlef::linalg::{AbelianInvariants, IntMatrix};
use intlef::report::{checks_table, Status, Table};
use intlef::suite::{run_suite, SuiteConfig, PER_PERIOD_NOTE, TAGS};
use intlef::CoefficientRing;

use crate::{Failure, Form, Output, RouteArg};

type Res = Result<Output, Failure>;

fn inv(a: &AbelianInvariants) -> String {
    a.invariant_factor_string()
}

fn ok(tables: Vec<Table>) -> Res {
    Ok(Output { tables, passed: true })
}

fn yes(b: bool) -> String {
    if b { "yes" } else { "no" }.into()
}

fn parity_rows(t: &mut Table, label: &str, p: &ParityInvariants) {
    t.push(vec![label.into(), "even".into(), inv(&p.even)]);
    t.push(vec![label.into(), "odd".into(), inv(&p.odd)]);
}

pub fn filtration(g: usize, k: usize) -> Res {
    if k > 2 * g {
        return Err(Failure::Usage(format!("--k must lie in 0..={}", 2 * g)));
    }
    let f = lefschetz::filtration(g, k);
    let mut t = Table::new(
        format!("filtration of Λ^{k}(Z^{})", 2 * g),
        &["r", "rank F_r", "rank gr_r", "expected"],
    );
    for (r, rank) in f.ranks().iter().enumerate() {
        t.push(vec![
            r.to_string(),
            rank.to_string(),
            f.graded_rank(r as i64).to_string(),
            f.expected_graded_rank(r as i64).to_string(),
        ]);
    }
    let passed = (0..f.ranks().len()).all(|r| f.graded_rank(r as i64) == f.expected_graded_rank(r as i64));
    Ok(Output {
        tables: vec![t],
        passed,
    })
}

pub fn constants(g: usize) -> Res {
    let rows = constants_table(g)?;
    let mut t = Table::new(
        format!("graded constants, g={g}"),
        &["k", "r", "j", "map", "constant", "verified"],
    );
    for r in &rows {
        t.push(vec![
            r.k.to_string(),
            r.r.to_string(),
            r.j.to_string(),
            format!("{:?}", r.direction).to_lowercase(),
            r.claimed_constant.to_string(),
            yes(r.verified),
        ]);
    }
    Ok(Output {
        tables: vec![t],
        passed: rows.iter().all(|r| r.verified),
    })
}

pub fn coker(g: usize, k: Option<usize>, form: Form, graded: bool) -> Res {
    match form {
        Form::Omega => {
            let k = k.ok_or_else(|| Failure::Usage("--k is required for --form omega".into()))?;
            let r = hard_lefschetz_coker(g, k, graded)?;
            let mut t = Table::new(
                format!("coker of wedge with omega_{k}: Λ^{} -> Λ^{}, g={g}", g - k, g + k),
                &["piece", "group"],
            );
            t.push(vec!["wedge".into(), inv(&r.wedge)]);
            t.push(vec!["contraction".into(), inv(&r.contraction)]);
            t.push(vec!["expected".into(), inv(&r.expected)]);
            for (i, e) in r.expected_graded.iter().enumerate() {
                t.push(vec![format!("expected gr_{i}"), inv(e)]);
            }
            if let Some(pieces) = &r.graded {
                for (i, p) in pieces.iter().enumerate() {
                    t.push(vec![format!("gr_{i}"), inv(p)]);
                }
            }
            ok(vec![t])
        }
        Form::Exp => {
            let mut t = Table::new(
                format!("cokernels of i_w and i_(e^w-1), g={g}"),
                &["operator", "parity", "group"],
            );
            for (name, op) in [
                ("i_w", Operator::ContractOmega(1)),
                ("i_(e^w-1)", Operator::ContractExp),
            ] {
                for (pname, parity) in [
                    ("even", Some(Parity::Even)),
                    ("odd", Some(Parity::Odd)),
                    ("total", None),
                ] {
                    t.push(vec![
                        name.into(),
                        pname.into(),
                        inv(&contraction_cokernel(g, &op, parity)?),
                    ]);
                }
            }
            let mut tables = vec![t];
            if graded {
                let rep = shifted_filtration(g)?;
                let mut s = Table::new(
                    format!("shifted filtration, g={g}"),
                    &["k", "i_w", "i_(e^w-1)", "expected", "preimage = level + ker"],
                );
                for r in rep.rows.iter().filter(|r| k.map_or(true, |k| k == r.k)) {
                    s.push(vec![
                        r.k.to_string(),
                        inv(&r.omega),
                        inv(&r.exp),
                        inv(&r.expected),
                        yes(r.preimage_stable),
                    ]);
                }
                tables.push(s);
            }
            ok(tables)
        }
    }
}

fn matrix_rows(t: &mut Table, name: &str, m: &IntMatrix) {
    for (i, row) in m.to_dense().iter().enumerate() {
        let entries: Vec<String> = row.iter().map(ToString::to_string).collect();
        t.push(vec![name.into(), i.to_string(), entries.join(" ")]);
    }
}

pub fn touchard(k: usize) -> Res {
    let m = touchard_conjugation(k)?;
    let mut s = Table::new(format!("Touchard conjugation, k={k}"), &["property", "value"]);
    s.push(vec!["E = phi^-1 D phi".into(), yes(m.conjugate)]);
    s.push(vec!["Stirling recursion".into(), yes(m.stirling_identity)]);
    s.push(vec!["coker D".into(), inv(&m.d_cokernel)]);
    s.push(vec!["coker E".into(), inv(&m.e_cokernel)]);
    s.push(vec!["expected".into(), inv(&m.expected_cokernel)]);
    let mut t = Table::new("matrices", &["matrix", "row", "entries"]);
    matrix_rows(&mut t, "D", &m.d);
    matrix_rows(&mut t, "E", &m.e);
    matrix_rows(&mut t, "phi", &m.phi);
    ok(vec![s, t])
}

pub fn heisenberg(g: usize, route: RouteArg, seed: u64) -> Res {
    let want = |r: RouteArg| route == RouteArg::All || route == r;
    let gysin = if want(RouteArg::Gysin) {
        Some(gysin_homology(g)?)
    } else {
        None
    };
    let formula = if want(RouteArg::Formula) {
        Some(lee_packer_formula(g))
    } else {
        None
    };
    let filt = if want(RouteArg::Filtration) {
        Some(filtration_subquotients(g, 2, seed)?.homology)
    } else {
        None
    };
    let routes: Vec<_> = [("gysin", &gysin), ("formula", &formula), ("filtration", &filt)]
        .into_iter()
        .filter_map(|(n, h)| h.as_ref().map(|h| (n, h)))
        .collect();
    let mut cols = vec!["k"];
    cols.extend(routes.iter().map(|(n, _)| *n));
    if routes.len() > 1 {
        cols.push("agree");
    }
    let mut t = Table::new(format!("H_k(N_{g}; Z)"), &cols);
    let mut passed = true;
    for k in 0..=2 * g + 1 {
        let mut row = vec![k.to_string()];
        row.extend(routes.iter().map(|(_, h)| inv(h.degree(k))));
        if routes.len() > 1 {
            let agree = routes.iter().all(|(_, h)| h.degree(k) == routes[0].1.degree(k));
            passed &= agree;
            row.push(yes(agree));
        }
        t.push(row);
    }
    let duality = routes.iter().all(|(_, h)| h.duality_holds());
    passed &= duality;
    Ok(Output {
        tables: vec![t.note(format!("Poincaré duality: {}", if duality { "holds" } else { "fails" }))],
        passed,
    })
}

pub fn hc(g: usize, ring: CoefficientRing) -> Res {
    let h = cup_homology(g, ring)?;
    let mut t = Table::new(
        format!("cup homology HC_*, g={g}, ring={ring}"),
        &["group", "parity", "value"],
    )
    .note(PER_PERIOD_NOTE);
    parity_rows(&mut t, "HC", &h);
    ok(vec![t])
}

pub fn hf(g: usize, ring: CoefficientRing) -> Res {
    let m = hf_model(g, ring)?;
    let mut t = Table::new(
        format!("HF-infinity model, g={g}, ring={ring}"),
        &["group", "parity", "value"],
    )
    .note(PER_PERIOD_NOTE);
    parity_rows(&mut t, "coker", &m.cokernel);
    parity_rows(&mut t, "ker", &m.kernel);
    parity_rows(&mut t, "total", &m.total);
    ok(vec![t])
}

pub fn compare(g: usize) -> Res {
    let r = hc_hf_compare(g, true)?;
    let mut t = Table::new(
        format!("HC_* against HF-infinity, g={g}"),
        &["group", "parity", "value"],
    )
    .note(PER_PERIOD_NOTE);
    parity_rows(&mut t, "HC", &r.hc);
    parity_rows(&mut t, "HF", &r.hf);
    t.push(vec!["top shifted piece".into(), "".into(), inv(&r.top_piece)]);
    let mut tables = vec![t];
    if let Some(rep) = &r.graded {
        let mut s = Table::new(
            "graded pieces of the shifted filtration",
            &["k", "i_w", "i_(e^w-1)", "expected"],
        );
        for row in &rep.rows {
            s.push(vec![
                row.k.to_string(),
                inv(&row.omega),
                inv(&row.exp),
                inv(&row.expected),
            ]);
        }
        tables.push(s);
    }
    Ok(Output {
        tables,
        passed: r.equal,
    })
}

pub fn noniso_g4() -> Res {
    let s = f2_g4_structures()?;
    let c = noniso_certificate(&s)?;
    let d = &s.dims;
    let mut dims = Table::new("genus 4 dimensions over F_2", &["space", "dim"]).note(PER_PERIOD_NOTE);
    for (n, v) in [
        ("C4", d.c4),
        ("i_w F2 Λ^6", d.contracted_f2_lambda6),
        ("T", d.t),
        ("C4'", d.c4_prime),
        ("Λ^2/<w>", d.lambda2_mod_omega),
        ("P^2", d.p2),
        ("coker(w) odd", d.odd_omega),
        ("coker(e^w-1) odd", d.odd_exp),
        ("coker(w) even", d.even_omega),
        ("coker(e^w-1) even", d.even_exp),
        ("coker(w) total", d.total_omega),
        ("coker(e^w-1) total", d.total_exp),
    ] {
        dims.push(vec![n.into(), v.to_string()]);
    }
    let mut checks = Table::new("structure checks", &["check", "holds", "detail"]);
    for n in &s.checks {
        checks.push(vec![n.name.clone(), yes(n.holds), n.detail.clone()]);
    }
    let mut cert = Table::new(
        "equivariant hom spaces from Λ^2",
        &["target", "dim", "generators used", "verified"],
    );
    for h in [&c.hom_to_c4_prime, &c.hom_to_quotient, &c.hom_to_sum, &c.hom_to_trivial] {
        cert.push(vec![
            h.target.clone(),
            h.dim.to_string(),
            h.generators_used.to_string(),
            yes(h.verified),
        ]);
    }
    let cert = cert
        .note(format!(
            "every map to C4' + Λ^2/<w> kills omega: {}",
            yes(c.kills_omega)
        ))
        .note(format!("every map to C4' kills P^2: {}", yes(c.c4_prime_kills_p2)))
        .note(format!("omega_2 nonzero in C4': {}", yes(c.omega2_nonzero)))
        .note(format!(
            "i_w(w_2) = {} w, i_(w_2)(w_2) = {}",
            s.contract_omega_omega2, s.contract_omega2_omega2
        ))
        .note(format!("certificate: {}", if c.holds() { "holds" } else { "fails" }));
    Ok(Output {
        tables: vec![dims, checks, cert],
        passed: c.holds(),
    })
}

pub fn torsion(g_max: usize) -> Res {
    let rep = torsion_report(g_max)?;
    let mut t = Table::new(
        "torsion of the HF-infinity model over Z",
        &["g", "observed", "derived", "stated", "derived matches"],
    )
    .note(PER_PERIOD_NOTE);
    for r in &rep.rows {
        t.push(vec![
            r.g.to_string(),
            inv(&r.observed),
            inv(&AbelianInvariants::free(r.derived_free_rank).direct_sum(&r.derived_torsion)),
            inv(&AbelianInvariants::free(r.stated_free_rank).direct_sum(&r.stated_torsion)),
            yes(r.derived_matches),
        ]);
    }
    let mut th = Table::new("first appearance of Z/q torsion", &["q", "predicted g", "observed g"]);
    for r in &rep.thresholds {
        th.push(vec![
            r.order.to_string(),
            r.predicted_first_g.to_string(),
            r.observed_first_g.map_or("none".into(), |g| g.to_string()),
        ]);
    }
    let passed = rep.rows.iter().all(|r| r.derived_matches);
    Ok(Output {
        tables: vec![t, th],
        passed,
    })
}

pub fn fixed_points(g: usize, ring: CoefficientRing, seed: u64) -> Res {
    let f = transvection_fixed_points(g, ring)?;
    let c = nondegeneracy_search(g, ring, 20, seed)?;
    let mut t = Table::new(
        format!("transvection fixed points, g={g}, ring={ring}"),
        &["quantity", "value"],
    )
    .note(PER_PERIOD_NOTE);
    t.push(vec!["coker(w)".into(), inv(&f.cokernel)]);
    t.push(vec!["fixed points".into(), inv(&f.fixed)]);
    t.push(vec!["extra kernel part".into(), f.extra.to_string()]);
    t.push(vec!["kernel rank".into(), c.kernel_rank.to_string()]);
    t.push(vec!["witnessed elements".into(), c.witnesses.len().to_string()]);
    t.push(vec!["unwitnessed elements".into(), c.unwitnessed.len().to_string()]);
    let mut u = Table::new("kernel elements with [a ^ f] = 0 for every f", &["element"]);
    for x in &c.unwitnessed {
        u.push(vec![x.clone()]);
    }
    Ok(Output {
        tables: vec![t, u],
        passed: f.equals_cokernel && c.holds(),
    })
}

pub fn tag_list() -> Output {
    let mut t = Table::new("verification tags", &["tag", "description"]);
    for tag in TAGS {
        t.push(vec![tag.tag.into(), tag.description.into()]);
    }
    Output {
        tables: vec![t],
        passed: true,
    }
}

pub fn verify(selected: &[String], cfg: &SuiteConfig) -> Res {
    let out = run_suite(selected, cfg)?;
    let rings: Vec<String> = cfg.rings.iter().map(ToString::to_string).collect();
    let checks = checks_table("verification report", &out.checks)
        .note(format!(
            "g-max {}, seed {}, rings {}",
            cfg.g_max,
            cfg.seed,
            rings.join(",")
        ))
        .note(PER_PERIOD_NOTE);
    let mut summary = Table::new("summary", &["status", "count"]);
    for s in [Status::Pass, Status::Fail, Status::Skipped] {
        summary.push(vec![s.name().into(), out.count(s).to_string()]);
    }
    Ok(Output {
        tables: vec![checks, summary],
        passed: out.passed(),
    })
}
