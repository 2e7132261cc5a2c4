use std::collections::{BTreeMap, HashSet};
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use nilcoh_core::cecohomology::build_ce_complex_capped;
use nilcoh_core::specseq::{pages_as_table, stabilization_page, FilteredComplexSpec};
use nilcoh_core::unipotent::{
    augmentation_powers_capped, lower_central_series_capped, make_group_with_slots, pbw_independence_check_capped,
    UnitriangularOracle,
};
use nilcoh_core::weyl::enumerate_weyl_group_capped;
use nilcoh_core::{
    chevalley_structure_constants, cohomology, collapse_certificate, corollary_report, coxeter_number, dot_action,
    e_infinity, galois_invariants_oracle, gr_bracket_check, gr_of_cohomology, inversion_set, jacobi_check,
    kostant_predict, pages, poincare_polynomial, verify_kostant, weil_restrict, CartanType, CohomologyResult, Error,
    FilteredComplex, NilpotentLieAlgebra, PermutationGroup, RootSystem, Weight, WeylGroup,
};

use crate::config::{Caps, RunConfig};
use crate::report::{cell, Report, Table};

fn root_system(ty: CartanType) -> Result<RootSystem> {
    Ok(RootSystem::from_type(ty)?)
}

fn weyl_group(rs: &RootSystem, caps: &Caps) -> Result<WeylGroup> {
    Ok(enumerate_weyl_group_capped(rs, caps.weyl)?)
}

fn algebra(rs: &RootSystem, d: usize) -> NilpotentLieAlgebra {
    weil_restrict(&chevalley_structure_constants(rs), d)
}

fn compute_cohomology(l: &NilpotentLieAlgebra, caps: &Caps) -> Result<CohomologyResult> {
    Ok(cohomology(&build_ce_complex_capped(l, caps.dim)?))
}

fn poly_pow(p: &[i128], d: usize) -> Vec<i128> {
    let mut acc = vec![1i128];
    for _ in 0..d {
        let mut next = vec![0i128; acc.len() + p.len() - 1];
        for (i, a) in acc.iter().enumerate() {
            for (j, b) in p.iter().enumerate() {
                next[i + j] += a * b;
            }
        }
        acc = next;
    }
    acc
}

fn typed(cfg: &mut RunConfig, ty: CartanType) {
    cfg.type_label = Some(ty.to_string());
    cfg.rank = Some(ty.rank);
}

pub fn roots(mut cfg: RunConfig, ty: CartanType) -> Result<Report> {
    typed(&mut cfg, ty);
    let rs = root_system(ty)?;
    let mut rep = Report::new(cfg);
    rep.uses("rootsystem::build");
    rep.uses("rootsystem::coxeter_number");
    let roots: Vec<_> = rs
        .positive_roots
        .iter()
        .enumerate()
        .map(|(i, r)| {
            json!({
                "index": i,
                "coords": r.coords,
                "height": r.height,
                "coroot_height": rs.coroot_pairing_rho(i),
                "weight": rs.root_weight(i),
            })
        })
        .collect();
    rep.set("type", ty.to_string());
    rep.set("rank", rs.rank());
    rep.set("cartan", &rs.cartan_matrix);
    rep.set("positive_roots", roots);
    rep.set("rho", &rs.rho);
    rep.set("coxeter", coxeter_number(&rs));
    rep.set("min_valid_prime", rs.min_valid_prime());

    let mut t = Table::new("roots", "rootsystem::build", vec!["index", "coords", "height", "coroot_height"]);
    for (i, r) in rs.positive_roots.iter().enumerate() {
        t.push(vec![i.to_string(), cell(&r.coords), r.height.to_string(), rs.coroot_pairing_rho(i).to_string()]);
    }
    rep.tables.push(t);
    let mut t = Table::new("cartan", "rootsystem::build", vec!["row", "entries"]);
    for (i, row) in rs.cartan_matrix.iter().enumerate() {
        t.push(vec![i.to_string(), cell(row)]);
    }
    rep.tables.push(t);
    let mut t = Table::new("summary", "rootsystem::coxeter_number", vec!["rho", "coxeter", "min_valid_prime"]);
    t.push(vec![cell(&rs.rho), coxeter_number(&rs).to_string(), rs.min_valid_prime().to_string()]);
    rep.tables.push(t);
    Ok(rep)
}

pub fn weyl(mut cfg: RunConfig, ty: CartanType) -> Result<Report> {
    typed(&mut cfg, ty);
    let rs = root_system(ty)?;
    let w = weyl_group(&rs, &cfg.caps)?;
    let mut rep = Report::new(cfg);
    for op in ["weyl::enumerate_weyl_group", "weyl::dot_action", "weyl::inversion_set", "weyl::poincare_polynomial"] {
        rep.uses(op);
    }
    let zero = Weight::zero(rs.rank());
    let mut seen = HashSet::new();
    let mut lemma_failures = Vec::new();
    let mut elements = Vec::new();
    let mut t =
        Table::new("elements", "weyl::enumerate_weyl_group", vec!["index", "word", "length", "dot_zero", "inversions"]);
    for (i, e) in w.elements.iter().enumerate() {
        let inv = inversion_set(&rs, e);
        let dot = dot_action(&rs, e, &zero);
        if inv.len() != e.length || dot != rs.sum_of_subset(&inv).neg() || !seen.insert(inv.clone()) {
            lemma_failures.push(i);
        }
        t.push(vec![i.to_string(), cell(&e.reduced_word), e.length.to_string(), cell(&dot), cell(&inv)]);
        elements.push(json!({
            "word": e.reduced_word,
            "length": e.length,
            "dot_zero": dot,
            "inversions": inv,
        }));
    }
    let poincare = poincare_polynomial(&w);
    rep.check(lemma_failures.is_empty());
    rep.set("order", w.order());
    rep.set("max_length", w.max_length());
    rep.set("poincare", &poincare);
    rep.set("inversion_lemma", json!({ "passed": lemma_failures.is_empty(), "failures": lemma_failures }));
    rep.set("elements", elements);
    rep.tables.push(t);
    let mut t = Table::new("poincare", "weyl::poincare_polynomial", vec!["degree", "coefficient"]);
    for (n, c) in poincare.iter().enumerate() {
        t.push(vec![n.to_string(), c.to_string()]);
    }
    rep.tables.push(t);
    Ok(rep)
}

pub fn nilpotent(mut cfg: RunConfig, ty: CartanType, d: usize) -> Result<Report> {
    typed(&mut cfg, ty);
    cfg.d = Some(d);
    let rs = root_system(ty)?;
    let l = algebra(&rs, d);
    let jacobi = jacobi_check(&l);
    let mut rep = Report::new(cfg);
    rep.uses("nilpotent::chevalley_structure_constants");
    rep.uses("nilpotent::weil_restrict");
    rep.uses("nilpotent::jacobi_check");
    rep.check(jacobi.passed);
    let dump = l.to_json();
    if let serde_json::Value::Object(map) = &dump {
        for (k, v) in map {
            rep.body.insert(k.clone(), v.clone());
        }
    }
    rep.set("jacobi", &jacobi);

    let mut t = Table::new("basis", "nilpotent::weil_restrict", vec!["index", "root", "slot", "height"]);
    for (i, b) in l.basis.iter().enumerate() {
        t.push(vec![
            i.to_string(),
            cell(&rs.positive_roots[b.root].coords),
            b.slot.to_string(),
            l.grading[i].to_string(),
        ]);
    }
    rep.tables.push(t);
    let mut t = Table::new("brackets", "nilpotent::chevalley_structure_constants", vec!["i", "j", "value"]);
    for i in 0..l.dim() {
        for j in i + 1..l.dim() {
            let c = l.bracket(i, j);
            if !c.is_empty() {
                t.push(vec![i.to_string(), j.to_string(), cell(c)]);
            }
        }
    }
    rep.tables.push(t);
    let mut t = Table::new("jacobi", "nilpotent::jacobi_check", vec!["passed", "triples_checked", "violation"]);
    t.push(vec![jacobi.passed.to_string(), jacobi.triples_checked.to_string(), cell(&jacobi.violation)]);
    rep.tables.push(t);
    Ok(rep)
}

pub fn cohomology_cmd(mut cfg: RunConfig, ty: CartanType, d: usize) -> Result<Report> {
    typed(&mut cfg, ty);
    cfg.d = Some(d);
    let rs = root_system(ty)?;
    let w = weyl_group(&rs, &cfg.caps)?;
    let l = algebra(&rs, d);
    let complex = build_ce_complex_capped(&l, cfg.caps.dim)?;
    let coh = cohomology(&complex);
    let d_squared = complex.d_squared_is_zero();
    let law = poly_pow(&poincare_polynomial(&w), d);
    let ranks = coh.free_ranks();
    let law_holds = (0..law.len().max(ranks.len()))
        .all(|n| law.get(n).copied().unwrap_or(0) == ranks.get(n).copied().unwrap_or(0) as i128);
    let mut rep = Report::new(cfg);
    for op in ["cecohomology::build_ce_complex", "cecohomology::cohomology", "weyl::poincare_polynomial"] {
        rep.uses(op);
    }
    rep.check(d_squared && law_holds);
    let mut degrees = serde_json::Map::new();
    let mut t =
        Table::new("degrees", "cecohomology::cohomology", vec!["degree", "free_rank", "torsion", "poincare_power"]);
    let mut tw = Table::new("weights", "cecohomology::cohomology", vec!["degree", "weight", "rank"]);
    for deg in &coh.degrees {
        degrees.insert(
            deg.degree.to_string(),
            json!({ "free_rank": deg.free_rank, "torsion": deg.torsion, "weights": deg.weights }),
        );
        t.push(vec![
            deg.degree.to_string(),
            deg.free_rank.to_string(),
            cell(&deg.torsion),
            law.get(deg.degree).copied().unwrap_or(0).to_string(),
        ]);
        for wr in &deg.weights {
            tw.push(vec![deg.degree.to_string(), cell(&wr.weight), wr.rank.to_string()]);
        }
    }
    rep.set("d_squared_zero", d_squared);
    rep.set("torsion_primes", coh.torsion_primes());
    rep.set("poincare_power", &law);
    rep.set("rank_law_holds", law_holds);
    rep.set("degrees", degrees);
    rep.tables.push(t);
    rep.tables.push(tw);
    Ok(rep)
}

pub fn kostant(mut cfg: RunConfig, ty: CartanType) -> Result<Report> {
    typed(&mut cfg, ty);
    cfg.d = Some(1);
    let rs = root_system(ty)?;
    let w = weyl_group(&rs, &cfg.caps)?;
    let coh = compute_cohomology(&algebra(&rs, 1), &cfg.caps)?;
    let h = coxeter_number(&rs);
    let report = verify_kostant(&kostant_predict(&rs, &w), &coh, h);
    let mut rep = Report::new(cfg);
    for op in ["kostantcheck::kostant_predict", "cecohomology::cohomology", "kostantcheck::verify_kostant"] {
        rep.uses(op);
    }
    rep.check(report.passed);
    let mut degrees = serde_json::Map::new();
    let mut t = Table::new(
        "degrees",
        "kostantcheck::verify_kostant",
        vec!["degree", "passed", "predicted", "free_rank", "torsion", "mismatches"],
    );
    for deg in &report.degrees {
        degrees.insert(
            deg.degree.to_string(),
            json!({
                "passed": deg.passed,
                "predicted": deg.predicted,
                "free_rank": deg.free_rank,
                "torsion": deg.torsion,
                "mismatches": deg.mismatches,
            }),
        );
        t.push(vec![
            deg.degree.to_string(),
            deg.passed.to_string(),
            cell(&deg.predicted),
            deg.free_rank.to_string(),
            cell(&deg.torsion),
            deg.mismatches.join("; "),
        ]);
    }
    rep.set("coxeter_number", h);
    rep.set("torsion_primes", coh.torsion_primes());
    rep.set("degrees", degrees);
    rep.tables.push(t);
    Ok(rep)
}

pub struct MultiplicityArgs {
    pub ty: CartanType,
    pub d: usize,
    pub degree: Option<usize>,
    pub galois: String,
    pub oracle: Option<u64>,
}

pub fn multiplicity(mut cfg: RunConfig, a: MultiplicityArgs) -> Result<Report> {
    typed(&mut cfg, a.ty);
    cfg.d = Some(a.d);
    cfg.degree = a.degree;
    cfg.galois = Some(a.galois.clone());
    cfg.oracle = a.oracle;
    let rs = root_system(a.ty)?;
    let w = weyl_group(&rs, &cfg.caps)?;
    let galois = PermutationGroup::parse(&a.galois, a.d)?;
    let l = algebra(&rs, a.d);
    let coh = match compute_cohomology(&l, &cfg.caps) {
        Ok(c) => Some(c),
        Err(e) if matches!(e.downcast_ref::<Error>(), Some(Error::DimensionCap { .. })) => None,
        Err(e) => return Err(e),
    };
    let top = a.d * rs.num_positive();
    let degrees: Vec<usize> = match a.degree {
        Some(n) if n > top => bail!("degree {n} exceeds the top degree {top}"),
        Some(n) => vec![n],
        None => (0..=top).collect(),
    };
    let mut rep = Report::new(cfg);
    rep.uses("kostantcheck::enumerate_multisets");
    rep.uses("kostantcheck::orbit_count");
    rep.uses("kostantcheck::corollary_report");
    if coh.is_some() {
        rep.uses("cecohomology::cohomology");
    }
    if a.oracle.is_some() {
        rep.uses("kostantcheck::galois_invariants_oracle");
    }

    let mut out = serde_json::Map::new();
    let mut tc = Table::new(
        "characters",
        "kostantcheck::corollary_report",
        vec!["degree", "character", "multisets", "arrangements", "multiplicity", "computed_rank"],
    );
    let mut tm = Table::new(
        "multisets",
        "kostantcheck::orbit_count",
        vec![
            "degree",
            "character",
            "entries",
            "words",
            "arrangements",
            "orbits",
            "burnside_orbits",
            "orbit_sizes",
            "all_free",
        ],
    );
    let mut to = Table::new(
        "oracle",
        "kostantcheck::galois_invariants_oracle",
        vec!["degree", "character", "arrangements", "orbits", "d_times_orbits", "fixed_rank", "all_free"],
    );
    for n in degrees {
        let report = corollary_report(&rs, &w, a.d, n, &galois, coh.as_ref());
        rep.check(report.consistent);
        for c in &report.characters {
            tc.push(vec![
                n.to_string(),
                cell(&c.character),
                c.multisets.len().to_string(),
                c.arrangements.to_string(),
                c.multiplicity.to_string(),
                c.computed_rank.map_or_else(|| "-".into(), |r| r.to_string()),
            ]);
            for m in &c.multisets {
                tm.push(vec![
                    n.to_string(),
                    cell(&c.character),
                    cell(&m.entries),
                    cell(&m.words),
                    m.orbit.arrangements.to_string(),
                    m.orbit.orbits.to_string(),
                    m.orbit.burnside_orbits.to_string(),
                    cell(&m.orbit.stabilizer_profile),
                    m.orbit.all_free.to_string(),
                ]);
            }
        }
        let mut entry = serde_json::to_value(&report)?;
        if let Some(m) = a.oracle {
            let oracle = galois_invariants_oracle(&rs, &w, a.d, n, m)?;
            rep.check(oracle.free_cases_agree);
            for c in &oracle.characters {
                to.push(vec![
                    n.to_string(),
                    cell(&c.character),
                    c.arrangements.to_string(),
                    c.orbits.to_string(),
                    c.d_times_orbits.to_string(),
                    c.fixed_rank.to_string(),
                    c.all_free.to_string(),
                ]);
            }
            entry["oracle"] = serde_json::to_value(&oracle)?;
        }
        out.insert(n.to_string(), entry);
    }
    rep.set("cohomology_computed", coh.is_some());
    rep.set("galois_order", galois.order());
    rep.set("degrees", out);
    rep.tables.push(tc);
    rep.tables.push(tm);
    if a.oracle.is_some() {
        rep.tables.push(to);
    }
    Ok(rep)
}

pub enum SpecseqSource {
    WeightFiltration { ty: CartanType, d: usize },
    Input(PathBuf),
}

pub fn specseq(
    mut cfg: RunConfig,
    source: SpecseqSource,
    p: Option<u32>,
    up_to: Option<usize>,
    target: Option<Vec<usize>>,
) -> Result<Report> {
    cfg.target = target.clone();
    let mut provenance = Vec::new();
    let complex = match &source {
        SpecseqSource::WeightFiltration { ty, d } => {
            typed(&mut cfg, *ty);
            cfg.d = Some(*d);
            let p = p.unwrap_or(5);
            cfg.p = Some(p as u64);
            let rs = root_system(*ty)?;
            let l = algebra(&rs, *d);
            let c = build_ce_complex_capped(&l, cfg.caps.dim)?;
            provenance.push("cecohomology::build_ce_complex");
            provenance.push("specseq::weight_height");
            FilteredComplex::weight_height(&l, &c, p)?
        }
        SpecseqSource::Input(path) => {
            cfg.input = Some(path.display().to_string());
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let mut spec: FilteredComplexSpec =
                serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
            if let Some(p) = p {
                spec.p = p;
            }
            cfg.p = Some(spec.p as u64);
            provenance.push("specseq::from_spec");
            FilteredComplex::from_spec(&spec)?
        }
    };
    let up_to = up_to.unwrap_or(complex.filtration_length() + 1).max(1);
    cfg.pages = Some(up_to);
    let ps = pages(&complex, up_to);
    let inf = e_infinity(&complex);
    let gr = gr_of_cohomology(&complex);
    let h = complex.cohomology_dims();
    let converges = inf.totals == h && gr == pages_as_table(&inf, &complex);
    let e1 = &ps[0].totals;
    let certificate = collapse_certificate(e1, target.as_deref().unwrap_or(&h));

    let mut rep = Report::new(cfg);
    for op in provenance {
        rep.uses(op);
    }
    for op in ["specseq::pages", "specseq::e_infinity", "specseq::gr_of_cohomology", "specseq::collapse_certificate"] {
        rep.uses(op);
    }
    rep.check(converges);
    if target.is_some() {
        rep.check(certificate.certified);
    }
    rep.set("p", complex.p);
    rep.set("dims", &complex.dims);
    rep.set("filtration_length", complex.filtration_length());
    rep.set("cohomology_dims", &h);
    rep.set("pages", &ps);
    rep.set("e_infinity", &inf);
    rep.set("stabilization_page", stabilization_page(&complex));
    rep.set("gr_of_cohomology", &gr);
    rep.set("converges", converges);
    rep.set("collapse_certificate", &certificate);

    let mut t = Table::new("pages", "specseq::pages", vec!["page", "degree", "level", "complement", "dim"]);
    for page in ps.iter().chain(std::iter::once(&inf)) {
        let label = page.r.map_or_else(|| "inf".to_string(), |r| r.to_string());
        for e in &page.entries {
            t.push(vec![
                label.clone(),
                e.degree.to_string(),
                e.level.to_string(),
                e.complement.to_string(),
                e.dim.to_string(),
            ]);
        }
    }
    rep.tables.push(t);
    let mut t = Table::new("totals", "specseq::pages", vec!["page", "totals", "stable"]);
    for page in ps.iter().chain(std::iter::once(&inf)) {
        let label = page.r.map_or_else(|| "inf".to_string(), |r| r.to_string());
        t.push(vec![label, cell(&page.totals), page.stable.to_string()]);
    }
    rep.tables.push(t);
    let mut t = Table::new("gr_cohomology", "specseq::gr_of_cohomology", vec!["degree", "levels"]);
    for (q, row) in gr.iter().enumerate() {
        t.push(vec![q.to_string(), cell(row)]);
    }
    rep.tables.push(t);
    let mut t = Table::new(
        "collapse",
        "specseq::collapse_certificate",
        vec!["e1_totals", "target", "certified", "first_mismatch"],
    );
    t.push(vec![
        cell(e1),
        cell(target.as_deref().unwrap_or(&h)),
        certificate.certified.to_string(),
        cell(certificate.first_mismatch),
    ]);
    rep.tables.push(t);
    Ok(rep)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Verify {
    Lcs,
    Gr,
    Pbw,
    Augmentation,
    Matrix,
}

impl Verify {
    pub fn parse_list(s: &str) -> Result<Vec<Verify>, String> {
        let mut out: Vec<Verify> = s
            .split(',')
            .map(str::trim)
            .filter(|x| !x.is_empty())
            .map(|x| match x {
                "lcs" => Ok(Verify::Lcs),
                "gr" => Ok(Verify::Gr),
                "pbw" => Ok(Verify::Pbw),
                "augmentation" => Ok(Verify::Augmentation),
                "matrix" => Ok(Verify::Matrix),
                other => Err(format!("unknown check {other:?}; expected lcs, gr, pbw, augmentation or matrix")),
            })
            .collect::<Result<_, _>>()?;
        out.sort();
        out.dedup();
        Ok(out)
    }

    pub fn name(self) -> &'static str {
        match self {
            Verify::Lcs => "lcs",
            Verify::Gr => "gr",
            Verify::Pbw => "pbw",
            Verify::Augmentation => "augmentation",
            Verify::Matrix => "matrix",
        }
    }
}

pub struct UnipotentArgs {
    pub ty: CartanType,
    pub p: u64,
    pub k: u32,
    pub d: usize,
    pub verify: Vec<Verify>,
    pub nmax: usize,
}

const MATRIX_SAMPLES: usize = 10_000;
const EXHAUSTIVE_PAIRS: u128 = 1 << 14;
const MATRIX_SEED: u64 = 0x6e69_6c63_6f68;

pub fn unipotent(mut cfg: RunConfig, a: UnipotentArgs) -> Result<Report> {
    typed(&mut cfg, a.ty);
    cfg.p = Some(a.p);
    cfg.k = Some(a.k);
    cfg.d = Some(a.d);
    cfg.nmax = Some(a.nmax);
    cfg.verify = a.verify.iter().map(|v| v.name().to_string()).collect();
    let caps = cfg.caps;
    let rs = root_system(a.ty)?;
    let g = make_group_with_slots(&rs, a.p, a.k, a.d)?;
    let mut rep = Report::new(cfg);
    rep.uses("unipotent::make_group");
    rep.set(
        "group",
        json!({
            "type": a.ty.to_string(),
            "p": g.p,
            "k": g.k,
            "d": g.slots,
            "modulus": g.modulus,
            "coordinates": g.num_coordinates(),
            "order": g.order().to_string(),
        }),
    );
    rep.set("commutator_table", &g.commutator_table);
    let mut summary = Table::new("checks", "unipotent::make_group", vec!["check", "passed", "detail"]);
    let mut checks = BTreeMap::new();
    for v in &a.verify {
        match v {
            Verify::Lcs => {
                rep.uses("unipotent::lower_central_series");
                let lcs = lower_central_series_capped(&g, caps.group)?;
                let mut t = Table::new(
                    "lcs",
                    "unipotent::lower_central_series",
                    vec!["n", "order", "support", "predicted_support", "matches"],
                );
                for l in &lcs.levels {
                    t.push(vec![
                        l.n.to_string(),
                        l.order.to_string(),
                        cell(&l.support),
                        cell(&l.predicted_support),
                        l.matches_prediction.to_string(),
                    ]);
                }
                let orders: Vec<String> = lcs.levels.iter().map(|l| l.order.to_string()).collect();
                summary.push(vec!["lcs".into(), lcs.all_match.to_string(), format!("orders {}", orders.join(","))]);
                rep.tables.push(t);
                checks.insert("lcs", lcs.all_match);
                rep.set("lcs", &lcs);
            }
            Verify::Gr => {
                rep.uses("unipotent::gr_bracket_check");
                let gr = gr_bracket_check(&g);
                let failures: Vec<_> = gr.entries.iter().filter(|e| !e.passed).collect();
                let mut t = Table::new(
                    "gr",
                    "unipotent::gr_bracket_check",
                    vec!["a", "b", "group", "lie", "lower_terms_vanish", "passed"],
                );
                for e in &gr.entries {
                    t.push(vec![
                        e.a.to_string(),
                        e.b.to_string(),
                        cell(&e.group),
                        cell(&e.lie),
                        e.lower_terms_vanish.to_string(),
                        e.passed.to_string(),
                    ]);
                }
                summary.push(vec![
                    "gr".into(),
                    gr.passed.to_string(),
                    format!("{} pairs, {} failing", gr.entries.len(), failures.len()),
                ]);
                rep.tables.push(t);
                checks.insert("gr", gr.passed);
                rep.set("gr", json!({ "passed": gr.passed, "pairs": gr.entries.len(), "failures": failures }));
            }
            Verify::Pbw => {
                rep.uses("unipotent::pbw_independence_check");
                let pbw = pbw_independence_check_capped(&g, a.nmax, caps.augmentation)?;
                let mut t = Table::new(
                    "pbw",
                    "unipotent::pbw_independence_check",
                    vec!["n", "pbw_count", "monomials", "rank", "independent", "quotient_dim", "dim_equals_count"],
                );
                for d in &pbw.degrees {
                    t.push(vec![
                        d.n.to_string(),
                        d.pbw_count.to_string(),
                        d.monomials.to_string(),
                        d.rank.to_string(),
                        d.independent.to_string(),
                        d.quotient_dim.to_string(),
                        d.dim_equals_count.to_string(),
                    ]);
                }
                let dims: Vec<String> = pbw.degrees.iter().map(|d| d.quotient_dim.to_string()).collect();
                summary.push(vec![
                    "pbw".into(),
                    pbw.independent.to_string(),
                    format!("quotient dims {}", dims.join(",")),
                ]);
                rep.tables.push(t);
                checks.insert("pbw", pbw.independent);
                rep.set("pbw", &pbw);
            }
            Verify::Augmentation => {
                rep.uses("unipotent::augmentation_powers");
                let aug = augmentation_powers_capped(&g, a.nmax, caps.augmentation)?;
                let mut t = Table::new("augmentation", "unipotent::augmentation_powers", vec!["n", "dim"]);
                for (n, dim) in aug.dims.iter().enumerate() {
                    t.push(vec![n.to_string(), dim.to_string()]);
                }
                summary.push(vec![
                    "augmentation".into(),
                    aug.frattini_agrees.to_string(),
                    format!("frattini rank {}", aug.frattini_rank),
                ]);
                rep.tables.push(t);
                checks.insert("augmentation", aug.frattini_agrees);
                rep.set("augmentation", &aug);
            }
            Verify::Matrix => {
                rep.uses("unipotent::unitriangular_oracle");
                let oracle = UnitriangularOracle::new(&g)?;
                let order = g.order() as u64;
                let exhaustive = g.order() * g.order() <= EXHAUSTIVE_PAIRS;
                let pairs: Vec<(u64, u64)> = if exhaustive {
                    (0..order).flat_map(|i| (0..order).map(move |j| (i, j))).collect()
                } else {
                    let mut rng = ChaCha8Rng::seed_from_u64(MATRIX_SEED);
                    (0..MATRIX_SAMPLES).map(|_| (rng.gen_range(0..order), rng.gen_range(0..order))).collect()
                };
                let mismatches = pairs
                    .iter()
                    .filter(|&&(i, j)| {
                        let (x, y) = (g.decode(i), g.decode(j));
                        oracle.matrix(&g.mul(&x, &y)) != oracle.mul(&oracle.matrix(&x), &oracle.matrix(&y))
                    })
                    .count();
                let passed = mismatches == 0;
                summary.push(vec![
                    "matrix".into(),
                    passed.to_string(),
                    format!("{} pairs, {mismatches} mismatches", pairs.len()),
                ]);
                checks.insert("matrix", passed);
                rep.set(
                    "matrix",
                    json!({ "passed": passed, "pairs": pairs.len(), "exhaustive": exhaustive, "mismatches": mismatches }),
                );
            }
        }
    }
    for &passed in checks.values() {
        rep.check(passed);
    }
    rep.set("checks", &checks);
    rep.tables.insert(0, summary);
    Ok(rep)
}
