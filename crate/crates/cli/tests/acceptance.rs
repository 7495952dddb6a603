//! Acceptance suite: one PASS/FAIL line per criterion.

use std::time::{Duration, Instant};

use bcsurf::complexes::{build_complex, euler_characteristic, exactness_in_degree, ext_dimensions, quotient_hilbert, verify_identities, GradedComplex};
use bcsurf::diamond::a_system;
use bcsurf::exact::Fp;
use bcsurf::fibercoh::{
    cech_h1_fatfiber, closed_r1p_total, filtration_pointmodules, leray_balance, mu_t_and_stabilization, pushforward_split_a, r1p_length_a,
    r1p_length_r, split_n0, FiberData,
};
use bcsurf::linsys::{a_h0_h1, a_monomial_basis, enumerate_products, h0_h1, sections_equal_ring};
use bcsurf::params::random_admissible_point;
use bcsurf::skew::{
    degree_two_kernel, expected_dim, graded_dims, non_noetherian_witness, relations_report, standard_syzygies, syzygy_kernel, unit, PieceTable,
    Side,
};
use bcsurf::surface::{base_locus_check, binom, critdens_determinant, orbit_points, points::orbit_reduces_mod_theta, CurveCache};
use bcsurf::{MPoly, Mode, Params, Rat, Sample};
use bcsurf_cli::config::{Format, RunConfig, Settings};
use bcsurf_cli::{execute, Command};

/// Exact equality is the tolerance everywhere; only wall-clock limits are inexact.
const GENERIC_DIMS_LIMIT: Duration = Duration::from_secs(600);
const SPECIAL_DIMS_LIMIT: Duration = Duration::from_secs(60);
const CRITDENS_LIMIT: Duration = Duration::from_secs(60);
const SEED: u64 = 1;
/// Degree bound shared by the generic and specialized runs being compared.
const COMPARE_DEGREE: usize = 5;
const SPECIALIZATION_SEEDS: [u64; 3] = [11, 22, 33];

type Verdict = Result<String, String>;

fn require(ok: bool, detail: String) -> Verdict {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    format!("error: {}", e)
}

fn specialized_modes() -> Vec<Mode> {
    SPECIALIZATION_SEEDS
        .iter()
        .map(|&s| {
            let (rho, theta) = random_admissible_point(s, 8);
            Mode::Specialized { rho, theta }
        })
        .collect()
}

fn dims_ok(mode: &Mode, max_n: usize) -> Result<bool, String> {
    let rows = graded_dims(mode, SEED, max_n).map_err(err)?;
    Ok(rows.len() == max_n && rows.iter().all(|r| r.pass()))
}

fn c1_graded_dimensions() -> Verdict {
    let start = Instant::now();
    let generic = dims_ok(&Mode::Generic, 5)?;
    let t_generic = start.elapsed();
    let start = Instant::now();
    let mut others = dims_ok(&Mode::TauOne, 8)?;
    for m in specialized_modes() {
        others &= dims_ok(&m, 8)?;
    }
    let t_other = start.elapsed();
    require(
        generic && others && t_generic <= GENERIC_DIMS_LIMIT && t_other <= SPECIAL_DIMS_LIMIT,
        format!("generic n<=5: {}, tau-one and specialized n<=8: {} ({:?}, {:?})", generic, others, t_generic, t_other),
    )
}

fn c2_presentation() -> Verdict {
    relations_report(&Mode::Generic).map_err(err)?;
    let k = degree_two_kernel();
    require(k.kernel_dim == 6 && k.spanned_by_relations, format!("relations vanish; degree-two kernel dim {}", k.kernel_dim))
}

fn c3_resolution() -> Verdict {
    let symbolic = Params::<MPoly>::symbolic();
    verify_identities(&symbolic, &GradedComplex::standard()).map_err(err)?;
    for mode in [Mode::Generic, Mode::TauOne] {
        build_complex(&mode).map_err(err)?;
        for n in 0..=5 {
            let r = exactness_in_degree(n, &mode, SEED).map_err(err)?;
            if !r.exact() {
                return Err(format!("{} degree {} homology {:?}", mode.name(), n, r.homology));
            }
        }
    }
    let euler: Vec<i64> = (0..=8).map(euler_characteristic).collect();
    require(euler[0] == 1 && euler[1..].iter().all(|&e| e == 0), format!("exact for n<=5 in both modes; Euler values {:?}", euler))
}

fn c4_ext() -> Verdict {
    let mut detail = Vec::new();
    for mode in [Mode::Generic, Mode::TauOne] {
        let rows = ext_dimensions(4, &mode, SEED).map_err(err)?;
        if rows.iter().any(|r| r.dims[0] != 0 || r.dims[1] != 0) {
            return Err(format!("{}: {:?}", mode.name(), rows));
        }
        let q = quotient_hilbert(4, &mode, SEED).map_err(err)?;
        let dims: Vec<usize> = q.iter().map(|r| r.dim).collect();
        let ok = q.iter().all(|r| r.exact() && r.dim > r.n) && dims[0] == 1 && dims[1] == 2;
        if !ok {
            return Err(format!("{}: quotient {:?}", mode.name(), q));
        }
        detail.push(format!("{} quotient {:?}", mode.name(), dims));
    }
    Ok(format!("Ext^0 = Ext^1 = 0; {}", detail.join(", ")))
}

fn c5_orbits() -> Verdict {
    let start = Instant::now();
    let reduces = orbit_reduces_mod_theta(13);
    let defined = orbit_points(13, &MPoly::rho(), &MPoly::theta()).map(|v| v.len()).map_err(err)?;
    let cases: [((usize, usize), Vec<usize>); 6] =
        [((1, 0), vec![0, 1]), ((1, 0), vec![0, 2]), ((0, 1), vec![0, 1]), ((0, 1), vec![1, 3]), ((1, 1), vec![0, 1, 2, 3]), ((1, 1), vec![0, 1, 2, 4])];
    let mut dets = true;
    for ((m, s), idx) in &cases {
        let r = critdens_determinant(*m, *s, idx).map_err(err)?;
        dets &= r.nonzero() && r.lowest_matches();
    }
    let t = start.elapsed();
    require(reduces && defined == 13 && dets && t <= CRITDENS_LIMIT, format!("reduction {}, {} orbit pairs, determinants nonzero {} ({:?})", reduces, defined, dets, t))
}

fn c6_base_loci() -> Verdict {
    for m in 1..=4 {
        let r = base_locus_check(m).map_err(err)?;
        if r.points != 2 * m || !r.all_transverse() || r.length != 2 * m {
            return Err(format!("m = {}: {:?}", m, r));
        }
    }
    Ok("m = 1..4: 2m distinct transverse points".into())
}

fn c7_fat_points() -> Verdict {
    let mut cells = 0;
    for n in 1..=5usize {
        for m in 0..=(5 - n) {
            let c = h0_h1(n, m, 0, 0, &Mode::Generic, SEED).map_err(err)?;
            let s = sections_equal_ring(n, m, &Mode::Generic, SEED).map_err(err)?;
            if !(c.independent() && c.h0 == expected_dim(n) && c.h1 == 0 && s.equal()) {
                return Err(format!("n = {}, m = {}: {:?} {:?}", n, m, c, s));
            }
            cells += 1;
        }
    }
    Ok(format!("rank = length, h0 = C(n+3,3), h1 = 0, sections = ring on {} cells", cells))
}

fn c8_monomial_sheaves() -> Verdict {
    for n in 0..=8usize {
        for m in 0..=4usize {
            if a_monomial_basis(n, m).monomials() != enumerate_products(n, m) {
                return Err(format!("region mismatch at n = {}, m = {}", n, m));
            }
            let h = a_h0_h1(n, m).map_err(err)?;
            if h != (expected_dim(n), 0) {
                return Err(format!("n = {}, m = {}: {:?}", n, m, h));
            }
        }
    }
    Ok("n <= 8, m <= 4".into())
}

fn c9_fat_fiber() -> Verdict {
    let s = Sample::random(SEED, 8);
    let mut cache: CurveCache<Fp> = CurveCache::new(&s.params());
    let mut cells = 0;
    for a in -4..=-1i64 {
        for d in 0..=1i64 {
            for ell in FiberData::ell0(a)..=4 {
                for n in FiberData::n0(a, d)..=5 {
                    let r = cech_h1_fatfiber(&mut cache, a, 0, d, ell, n).map_err(err)?;
                    if !r.matches_closed_form() {
                        return Err(format!("{:?}", r));
                    }
                    cells += 1;
                    if ell < 4 && n < 5 {
                        let st = mu_t_and_stabilization(&mut cache, a, 0, d, ell, n).map_err(err)?;
                        if !(st.t_bijective && st.restriction_bijective) {
                            return Err(format!("{:?}", st));
                        }
                    }
                }
            }
            let f = filtration_pointmodules(&mut cache, a, 0, d, FiberData::ell0(a).max(2), 2).map_err(err)?;
            if !f.point_modules() || f.subquotients.len() != FiberData::new(a, 0, d, 1, 1).closed_dim() {
                return Err(format!("filtration a = {}, d = {}: {:?}", a, d, f));
            }
        }
    }
    Ok(format!("{} cells match the closed form; t, stabilization and filtration hold", cells))
}

fn c10_pushforward_lengths() -> Verdict {
    let s = Sample::random(SEED, 8);
    let mut cache: CurveCache<Fp> = CurveCache::new(&s.params());
    let mut cells = 0;
    for a in -3..=-1i64 {
        for m in 0..=2usize {
            let lo = (-a - 1).max(0) as usize;
            for n in lo..=lo + 3 {
                let r = r1p_length_r(&mut cache, n, m, a, 0).map_err(err)?;
                let x = r1p_length_a(n, m, a).map_err(err)?;
                let closed = closed_r1p_total(m, a);
                if !(r.matches_closed_form() && x.matches_closed_form() && r.total == closed && x.total == closed) {
                    return Err(format!("{:?} {:?}", r, x));
                }
                if a == -1 && r.total != 0 {
                    return Err(format!("a = -1 gives {}", r.total));
                }
                cells += 1;
            }
        }
    }
    Ok(format!("both variants equal 2(m C(-a,2) + C(-a,3)) on {} cells", cells))
}

fn c11_direct_image() -> Verdict {
    let mut n0s = Vec::new();
    for a in -2..=1i64 {
        for b in -1..=1i64 {
            for m in 0..=1usize {
                let lo = if a <= -1 { (-a) as usize } else { a as usize + 1 };
                for n in lo..=10 {
                    let sp = pushforward_split_a(n, m, a, b).map_err(err)?;
                    if !sp.matches_closed_form() {
                        return Err(format!("{:?}", sp));
                    }
                }
                let n0 = split_n0(m, a, b, 10).map_err(err)?;
                if n0 >= 10 {
                    return Err(format!("no vanishing for a = {}, b = {}, m = {}", a, b, m));
                }
                for n in lo..=8 {
                    let r = leray_balance(n, m, a, b, &Mode::Generic, SEED).map_err(err)?;
                    if !r.a_balances() || !r.chain_holds() {
                        return Err(format!("{:?}", r));
                    }
                }
                n0s.push(n0);
            }
        }
    }
    Ok(format!("closed forms match, Leray balances; n0 values {:?}", n0s))
}

fn c12_witness() -> Verdict {
    let rows = non_noetherian_witness(4).map_err(err)?;
    require(rows.len() == 3 && rows.iter().all(|r| !r.in_ideal), format!("{:?}", rows))
}

fn c13_diamond() -> Verdict {
    let sys = a_system();
    let overlaps = sys.resolve_overlaps().map_err(err)?;
    let counts: Vec<u64> = (0..=10).map(|n| sys.irreducible_count(n)).collect();
    let want: Vec<u64> = (0..=10).map(|n| binom(n as i64 + 3, 3) as u64).collect();
    let mut table = PieceTable::new(Params::<Rat>::tau_one());
    let dims: Vec<u64> = (0..=8).map(|n| table.dim(n, 0) as u64).collect();
    require(counts == want && dims[..] == counts[..=8], format!("{} overlaps resolve; counts {:?}", overlaps.len(), counts))
}

fn c14_syzygies() -> Verdict {
    let mut table = PieceTable::new(Params::<Rat>::tau_one());
    for side in [Side::Right, Side::Left] {
        for ((a, b), expected) in standard_syzygies::<Rat>(side) {
            for n in 0..=4 {
                let r = syzygy_kernel(&mut table, (&unit(a), &unit(b)), n, side, &expected);
                if !r.matches() {
                    return Err(format!("{:?} pair ({}, {}) degree {}: {:?}", side, a + 1, b + 1, n, r));
                }
            }
        }
    }
    Ok("four pairs, both sides, n <= 4".into())
}

fn suite_config(mode: &str, rho: Option<String>, theta: Option<String>) -> RunConfig {
    let s = Settings { mode: Some(mode.into()), rho, theta, max_degree: Some(COMPARE_DEGREE), seed: Some(SEED), format: Some(Format::Json), ..Default::default() };
    RunConfig::from_settings(s).expect("valid configuration")
}

fn suite_json(cfg: &RunConfig) -> Result<(String, Vec<(String, String)>), String> {
    let report = execute(Command::Suite, cfg, false).map_err(err)?;
    if !report.passed() {
        return Err(format!("{} suite has failing checks", cfg.mode.name()));
    }
    let values = report.checks.iter().map(|c| (c.name.clone(), c.computed.clone())).collect();
    Ok((report.render(Format::Json).map_err(err)?, values))
}

fn c15_determinism() -> Verdict {
    let generic = suite_config("generic", None, None);
    let (first, values) = suite_json(&generic)?;
    let (second, _) = suite_json(&generic)?;
    if first != second {
        return Err("generic reports differ between runs".into());
    }
    for mode in specialized_modes() {
        let (rho, theta) = mode.rational_point().expect("specialized point");
        let cfg = suite_config("specialized", Some(rho.to_string()), Some(theta.to_string()));
        let (a, spec_values) = suite_json(&cfg)?;
        let (b, _) = suite_json(&cfg)?;
        if a != b {
            return Err(format!("reports at ({}, {}) differ between runs", rho, theta));
        }
        let spec: std::collections::BTreeMap<&String, &String> = spec_values.iter().map(|(n, c)| (n, c)).collect();
        for (name, computed) in &values {
            match spec.get(name) {
                Some(c) if *c == computed => {}
                other => return Err(format!("at ({}, {}): {} generic {:?}, specialized {:?}", rho, theta, name, computed, other)),
            }
        }
    }
    Ok(format!("all {} generic checks agree at 3 specialized points; reports byte-identical", values.len()))
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Verdict); 15] = [
        ("graded dimensions", c1_graded_dimensions),
        ("presentation", c2_presentation),
        ("resolution", c3_resolution),
        ("ext", c4_ext),
        ("orbits and critical density", c5_orbits),
        ("base loci", c6_base_loci),
        ("fat-point independence", c7_fat_points),
        ("monomial sheaf cohomology", c8_monomial_sheaves),
        ("fat-fiber cohomology", c9_fat_fiber),
        ("pushforward lengths", c10_pushforward_lengths),
        ("direct image vanishing", c11_direct_image),
        ("non-noetherian witness", c12_witness),
        ("diamond lemma", c13_diamond),
        ("syzygies", c14_syzygies),
        ("determinism and oracle agreement", c15_determinism),
    ];
    let mut failed = Vec::new();
    for (k, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(d) => println!("PASS {:>2} {}: {}", k + 1, name, d),
            Err(d) => {
                println!("FAIL {:>2} {}: {}", k + 1, name, d);
                failed.push(k + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failing criteria: {:?}", failed);
}
