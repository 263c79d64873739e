//! The ten acceptance checks, each returning one `CheckResult`.

use std::time::Instant;

use anyhow::Context;
use continuation::quadrature::verify_residues;
use continuation::{annihilation_check, ResidueKind};
use correspondence::{build_u, check_main_identity, check_symplectic, small_slice_rank};
use cy_state::{cr_basis, enumerate_sectors, global_pairing_constant, mu_is_bijective, mu_preserves_degree, CySector};
use exact_kernel::rational::{int, rat};
use exact_kernel::Rational;
use fjrw_series::lists::{permuted_cases, tabulated_cases};
use fjrw_series::sd::s_series;
use fjrw_series::{
    component, cross_check_explicit_lists, delta_factor, g_function, i_fjrw, i_h_series, j1, j2, j_un_brute_force,
    j_un_laurent, small_j_function, verify_sd_specialization, Assignment, SDFormal,
};
use gw_series::{derive_recurrence, i_gw, supported_sectors, transport_operator};
use lg_state::{low_degree_labels, narrow_sectors, FjrwLabel, GroupElement};
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use crate::config::Config;
use crate::report::{CheckResult, Status};

pub struct CheckInfo {
    pub criterion: u8,
    pub name: &'static str,
    pub provenance: &'static str,
}

pub const CHECKS: [CheckInfo; 10] = [
    CheckInfo { criterion: 1, name: "state-spaces", provenance: "narrow FJRW state space, Chen-Ruan inertia components, mirror map mu" },
    CheckInfo { criterion: 2, name: "j-shape", provenance: "mirror theorem for the small FJRW J-function" },
    CheckInfo { criterion: 3, name: "explicit-lists", provenance: "closed forms of I_h for the tabulated twisted cases" },
    CheckInfo { criterion: 4, name: "untwisted-oracle", provenance: "J^un coefficients against Grothendieck-Riemann-Roch correlator sums" },
    CheckInfo { criterion: 5, name: "delta-g", provenance: "Delta_h symplecticity and the G_y shift identities" },
    CheckInfo { criterion: 6, name: "picard-fuchs", provenance: "hypergeometric operators annihilating I_g on the CY side" },
    CheckInfo { criterion: 7, name: "residues", provenance: "Mellin-Barnes residues of the continued I_g" },
    CheckInfo { criterion: 8, name: "symplectic", provenance: "symplecticity of the block transformation U" },
    CheckInfo { criterion: 9, name: "main-identity", provenance: "U(c_h I_h) = I'_{mu^-1(h)}" },
    CheckInfo { criterion: 10, name: "small-slice-rank", provenance: "linear independence of the small-slice generators" },
];

pub fn info_by_name(name: &str) -> Option<&'static CheckInfo> {
    CHECKS.iter().find(|c| c.name == name)
}

/// Outcome of a check body: status, worst error and free-form findings.
pub struct Outcome {
    pub status: Status,
    pub max_error_log10: Option<f64>,
    pub details: Vec<String>,
}

fn outcome(ok: bool, err: Option<f64>, details: Vec<String>) -> Outcome {
    Outcome { status: if ok { Status::Pass } else { Status::Fail }, max_error_log10: err, details }
}

pub fn run_check(name: &str, cfg: &Config, h: Option<&FjrwLabel>) -> anyhow::Result<CheckResult> {
    let info = info_by_name(name).with_context(|| format!("unknown check {name}"))?;
    let start = Instant::now();
    let out = match info.criterion {
        1 => state_spaces(),
        2 => j_shape(cfg),
        3 => explicit_lists(cfg),
        4 => untwisted_oracle(),
        5 => delta_g(),
        6 => picard_fuchs(cfg),
        7 => residues(cfg),
        8 => symplectic(cfg),
        9 => main_identity(cfg, h),
        _ => slice_rank(cfg),
    }
    .unwrap_or_else(|e| outcome(false, None, vec![format!("error: {e:#}")]));
    Ok(CheckResult {
        criterion: info.criterion,
        name: info.name.into(),
        status: out.status,
        max_error_log10: out.max_error_log10,
        runtime_seconds: start.elapsed().as_secs_f64(),
        provenance: info.provenance.into(),
        details: out.details,
    })
}

fn state_spaces() -> anyhow::Result<Outcome> {
    let (lg, cy, basis) = (narrow_sectors().len(), enumerate_sectors().len(), cr_basis().len());
    let (bij, deg) = (mu_is_bijective(), mu_preserves_degree());
    Ok(outcome(
        lg == 204 && cy == 161 && basis == 204 && bij && deg,
        None,
        vec![format!("narrow labels {lg}, CY sectors {cy}, basis labels {basis}, mu bijective {bij}, degree preserving {deg}")],
    ))
}

fn j_shape(cfg: &Config) -> anyhow::Result<Outcome> {
    let j = small_j_function(&i_fjrw(cfg.truncation_order))?;
    Ok(match fjrw_series::check_j_shape(&j) {
        Ok(()) => outcome(true, None, vec![format!("z phi_J + t phi_J2 + O(1/z) through t^{}", cfg.truncation_order)]),
        Err(e) => outcome(false, None, vec![e.to_string()]),
    })
}

fn explicit_lists(cfg: &Config) -> anyhow::Result<Outcome> {
    let order = cfg.truncation_order;
    let r = cross_check_explicit_lists(&i_fjrw(order), order)?;
    let mut details = vec![format!(
        "{} tabulated coefficients compared, {} mismatches, {} unpredicted terms",
        r.entries.len(),
        r.mismatches().len(),
        r.unexpected.len()
    )];
    let find = |case: &str, t: usize| r.entries.iter().find(|e| e.case == case && e.t_exp == t && e.h == e.label).map(|e| e.pipeline.clone());
    let iii = find("(iii)", 5);
    let ii = r.entries.iter().find(|e| e.case == "(ii)" && e.t_exp == 3).map(|e| e.pipeline.clone());
    let spot = iii == Some(rat(1, 15625)) && ii == Some(Rational::from(rat(2, 25) / 6));
    details.push(format!("(iii) l=1 coefficient {:?}, (ii) leading {:?}", iii.map(|x| x.to_string()), ii.map(|x| x.to_string())));
    let raw_diff = r.list_one.iter().filter(|e| e.pipeline_normalized != e.tabulated_normalized).count();
    details.push(format!("list (i): {}", r.list_one_note));
    let soft_ok = r.list_one_normalized_ok();
    details.push(format!("list (i) agrees after normalization: {soft_ok} ({raw_diff} normalized mismatches)"));
    let status = match (r.hard_ok() && spot, soft_ok) {
        (false, _) => Status::Fail,
        (true, true) => Status::Pass,
        (true, false) => Status::DiscrepancyRecorded,
    };
    Ok(Outcome { status, max_error_log10: None, details })
}

fn assignment(pairs: &[(FjrwLabel, u32)]) -> Assignment {
    pairs.iter().filter(|(_, m)| *m > 0).cloned().collect()
}

/// Exhaustive for `|n| <= 2`, every `t^m` and `t^m h` with `|n| <= 6`, and a seeded
/// random sample of general assignments with `|n| <= 6`.
fn untwisted_oracle() -> anyhow::Result<Outcome> {
    let labels: Vec<FjrwLabel> = low_degree_labels().into_iter().filter(|h| *h != j1()).collect();
    let mut cases: Vec<Assignment> = vec![Assignment::new()];
    for (a, h1) in labels.iter().enumerate() {
        cases.push(assignment(&[(*h1, 1)]));
        for h2 in &labels[a..] {
            cases.push(if h1 == h2 { assignment(&[(*h1, 2)]) } else { assignment(&[(*h1, 1), (*h2, 1)]) });
        }
        for m in 2..=5 {
            cases.push(assignment(&[(j2(), m), (*h1, 1)]));
        }
    }
    for m in 3..=6 {
        cases.push(assignment(&[(j2(), m)]));
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
    for _ in 0..300 {
        let size = rng.gen_range(3..=6);
        let mut n = Assignment::new();
        for _ in 0..size {
            *n.entry(labels[rng.gen_range(0..labels.len())]).or_insert(0) += 1;
        }
        cases.push(n);
    }
    let bad: Vec<String> = cases
        .par_iter()
        .filter(|n| j_un_laurent(n) != j_un_brute_force(n))
        .map(|n| format!("{n:?}"))
        .collect();
    let mut details = vec![format!("{} assignments compared, {} mismatches", cases.len(), bad.len())];
    details.extend(bad.into_iter().take(3));
    Ok(outcome(details.len() == 1, None, details))
}

fn delta_g() -> anyhow::Result<Outcome> {
    let cutoff = 6;
    let delta_bad = narrow_sectors()
        .par_iter()
        .filter(|h| delta_factor(h, cutoff).times(&delta_factor(&h.inverse(), cutoff).reflect_z()) != SDFormal::one(cutoff))
        .count();
    let g0 = g_function(&int(0), cutoff);
    let shifts = [rat(1, 5), rat(2, 5), rat(-3, 7), int(1)];
    let g_bad = shifts.iter().filter(|y| g_function(y, cutoff) != g0.shift_x(y)).count();
    let s_ok = g0.shift_x(&int(1)) == g0.plus(&s_series(cutoff));
    let h = FjrwLabel::extended("1,1,1,3,4".parse::<GroupElement>()?);
    let sd = [assignment(&[(j2(), 2)]), assignment(&[(j2(), 5)]), assignment(&[(j2(), 4), (h, 1)])];
    let sd_ok = sd.iter().all(|n| verify_sd_specialization(n, 8));
    Ok(outcome(
        delta_bad == 0 && g_bad == 0 && s_ok && sd_ok,
        None,
        vec![
            format!("Delta_h Delta_h^-1(-z) = 1 fails for {delta_bad} of 204 labels"),
            format!("G_y = G_0(x+yz) fails for {g_bad} of {} shifts; G_0(x+z) = G_0 + s: {s_ok}", shifts.len()),
            format!("s_d specialization to order 8 on three assignments: {sd_ok}"),
        ],
    ))
}

fn quintic_ok(op: &gw_series::ThetaOperator) -> bool {
    let mut p = vec![int(1)];
    for m in 1..=4 {
        let mut next = vec![Rational::new(); p.len() + 1];
        for (j, c) in p.iter().enumerate() {
            next[j + 1] += c.clone() * int(5);
            next[j] += c.clone() * int(m);
        }
        p = next;
    }
    op.order() == 4
        && op.coeff(0, 4) == 1
        && (0..4).all(|j| op.coeff(0, j) == 0)
        && p.iter().enumerate().all(|(j, c)| op.coeff(1, j as u32) == -(c.clone() * int(5)))
}

fn picard_fuchs(cfg: &Config) -> anyhow::Result<Outcome> {
    let order = cfg.truncation_order;
    let e = CySector::new(GroupElement::identity())?;
    let op = derive_recurrence(&i_gw(&e, 8)?)?;
    let quintic = quintic_ok(&op);
    let t_op = transport_operator(&op);
    let ij = i_h_series(&i_fjrw(order), &j1())?;
    let fjrw_ok = (1..=4i64).all(|k| {
        let s = component(&ij, 2 - k, &FjrwLabel::j_pow(k)).shift(1).truncate(order);
        let r = t_op.apply_series(&s);
        s.coeffs().iter().any(|c| *c != 0) && r.coeffs().iter().all(|c| *c == 0)
    });
    let sectors = supported_sectors();
    let bad: Vec<String> = sectors
        .par_iter()
        .filter(|g| !annihilation_check(g, order).unwrap_or(false))
        .map(|g| g.to_string())
        .collect();
    Ok(outcome(
        quintic && fjrw_ok && bad.is_empty(),
        None,
        vec![
            format!("sector e operator: {op}"),
            format!("equals theta^4 - 5q prod_(m=1..4)(5 theta + m): {quintic}"),
            format!("t-transport kills the four components of t I_J through t^{order}: {fjrw_ok}"),
            format!("continued residue classes annihilated for {} of {} supported sectors", sectors.len() - bad.len(), sectors.len()),
        ],
    ))
}

/// The five tabulated sector families.
pub fn tabulated_families() -> Vec<CySector> {
    ["0,0,0,0,0", "0,0,0,2,3", "0,0,0,1,4", "0,0,1,1,3", "0,0,2,2,1"]
        .iter()
        .map(|s| CySector::new(s.parse::<GroupElement>().expect("tabulated sector")).expect("CY sector"))
        .collect()
}

pub const RESIDUE_M_MAX: u32 = 10;
pub const RESIDUE_TOL_LOG10: f64 = -40.0;
pub const SCALING_TOL: f64 = 1e-4;

fn residues(cfg: &Config) -> anyhow::Result<Outcome> {
    let digits = cfg.precision_digits;
    let results: Vec<(CySector, Result<Vec<continuation::ResidueCheck>, _>)> =
        tabulated_families().into_par_iter().map(|g| (g, verify_residues(&g, RESIDUE_M_MAX, digits))).collect();
    let mut worst = f64::NEG_INFINITY;
    let mut ok = true;
    let mut details = Vec::new();
    for (g, r) in results {
        let checks = r?;
        let (mut included, mut vanishing, mut scaling) = (0, 0, 0);
        for c in &checks {
            match &c.kind {
                ResidueKind::IntegerPoleScaling { expected, measured } => {
                    scaling += 1;
                    ok &= (measured - f64::from(*expected)).abs() < SCALING_TOL;
                }
                k => {
                    if *k == ResidueKind::Included {
                        included += 1;
                    } else {
                        vanishing += 1;
                    }
                    ok &= c.error_log10 <= RESIDUE_TOL_LOG10 && c.doubling_log10 <= RESIDUE_TOL_LOG10;
                    worst = worst.max(c.error_log10);
                }
            }
        }
        details.push(format!("{g}: {included} residues matched, {vanishing} excluded classes vanish, {scaling} integer poles of order >= dim+1"));
    }
    Ok(outcome(ok, Some(worst), details))
}

pub const SYMPLECTIC_TOL_LOG10: f64 = -60.0;
pub const BLOCK_DET_TOL_LOG10: f64 = -10.0;

fn symplectic(cfg: &Config) -> anyhow::Result<Outcome> {
    let u = build_u(cfg.precision_digits);
    let r = check_symplectic(&u, -40.0)?;
    let e = CySector::new(GroupElement::identity())?;
    let kappa_e = r.table.kappa(&e).cloned();
    let kappa_ok = kappa_e == Some(rat(1, 25));
    let dets = u.block_determinants()?;
    let min_det = dets.iter().map(|d| d.log10_abs()).fold(f64::INFINITY, f64::min);
    let blocks_ok = min_det > BLOCK_DET_TOL_LOG10;
    let degree = u.degree_preserving();
    let global = global_pairing_constant(&r.table);
    let err_ok = r.max_error_log10 <= SYMPLECTIC_TOL_LOG10;
    Ok(outcome(
        err_ok && kappa_ok && blocks_ok && degree,
        Some(r.max_error_log10),
        vec![
            format!("{} label pairs, {} equations over z^a, a in [-3, 3]", r.pairs_checked, r.equations),
            format!("pairing constants solved for {} sectors; kappa_e = {}", r.table.iter().count(), kappa_e.map_or("missing".into(), |k| k.to_string())),
            format!("kappa_e = 1/25 reproduced: {kappa_ok}"),
            format!("single global pairing constant: {}", global.map_or("none".into(), |c| c.to_string())),
            format!("{} blocks, min log10|det| = {min_det:.2}; degree preserving: {degree}", dets.len()),
        ],
    ))
}

pub const MAIN_ORDER: usize = 25;
pub const MAIN_TOL_LOG10: f64 = -60.0;
pub const DOUBLING_GAIN: f64 = 40.0;

/// `J`, one label for each tabulated twisted case and one permuted copy of each.
pub fn main_identity_labels() -> Vec<FjrwLabel> {
    let mut out = vec![FjrwLabel::j_pow(1)];
    let tabulated = tabulated_cases();
    for case in &tabulated {
        out.push(FjrwLabel::extended(case.h));
        if let Some(p) = permuted_cases().into_iter().find(|p| p.name == case.name && p.h != case.h) {
            out.push(FjrwLabel::extended(p.h));
        }
    }
    out
}

fn main_identity(cfg: &Config, only: Option<&FjrwLabel>) -> anyhow::Result<Outcome> {
    let order = cfg.truncation_order.min(MAIN_ORDER);
    let labels = match only {
        Some(h) => vec![*h],
        None => main_identity_labels(),
    };
    let i = i_fjrw(order);
    let lo = cfg.precision_digits;
    let hi = 2 * lo;
    let (u_lo, u_hi) = (build_u(lo), build_u(hi));
    let rows: Vec<anyhow::Result<(FjrwLabel, u32, usize, usize, f64, f64)>> = labels
        .par_iter()
        .map(|h| {
            let a = check_main_identity(&i, &u_lo, h, order)?;
            let b = check_main_identity(&i, &u_hi, h, order)?;
            Ok((*h, a.c_h_power, a.compared, a.unmatched + b.unmatched, a.max_rel_error_log10, b.max_rel_error_log10))
        })
        .collect();
    let mut ok = true;
    let mut worst = f64::NEG_INFINITY;
    let mut details = vec![format!("through t^{order}; precision {lo} then {hi} digits")];
    for r in rows {
        let (h, j, n, unmatched, e_lo, e_hi) = r?;
        let good = unmatched == 0 && e_lo <= MAIN_TOL_LOG10 && e_lo - e_hi >= DOUBLING_GAIN;
        ok &= good;
        worst = worst.max(e_lo);
        let c = if j == 1 { "t/5".to_string() } else { format!("(t/5)^{j}") };
        details.push(format!("{h}: c_h = {c}, {n} coefficients, err 1e{e_lo:.1} -> 1e{e_hi:.1}{}", if good { "" } else { " FAILED" }));
    }
    Ok(outcome(ok, Some(worst), details))
}

fn slice_rank(cfg: &Config) -> anyhow::Result<Outcome> {
    let i = i_fjrw(cfg.truncation_order.min(10));
    let digits = cfg.precision_digits;
    let full = small_slice_rank(&i, digits, None)?;
    let dropped = small_slice_rank(&i, digits, Some(0))?;
    let ok = full.fjrw_rank == full.generators
        && full.cy_rank == full.generators
        && dropped.fjrw_rank + 1 == full.generators
        && dropped.cy_rank + 1 == full.generators;
    Ok(outcome(
        ok,
        None,
        vec![
            format!("{} generators; FJRW rank {}, CY rank {}", full.generators, full.fjrw_rank, full.cy_rank),
            format!("dropping one generator: FJRW rank {}, CY rank {}", dropped.fjrw_rank, dropped.cy_rank),
        ],
    ))
}
