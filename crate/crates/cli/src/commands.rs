use bcsurf::complexes::{build_complex, default_window, euler_characteristic, exactness_in_degree, ext_dimensions, quotient_hilbert};
use bcsurf::diamond::a_system;
use bcsurf::exact::{Fp, MPoly, Rat};
use bcsurf::fibercoh::{
    cech_h1_fatfiber, filtration_pointmodules, leray_balance, mu_t_and_stabilization, pushforward_split_a, r1p_length, split_n0,
    FiberData, Variant,
};
use bcsurf::linsys::{a_h0_h1, a_monomial_basis, enumerate_products, h0_h1, sections_equal_ring};
use bcsurf::params::{Mode, Params, Sample};
use bcsurf::skew::{
    default_bound, degree_two_kernel, expected_dim, graded_dims, non_noetherian_witness, opposite_dims, relations_report,
    standard_syzygies, syzygy_kernel, unit, z_relation_status, PieceTable, Side,
};
use bcsurf::surface::{
    base_locus_check, base_locus_tau_one, binom, check_base_locus, critdens_determinant, orbit_points, points::orbit_reduces_mod_theta,
    CurveCache,
};

use crate::config::RunConfig;
use crate::error::CliError;
use crate::report::{Recorder, Status};

type Outcome = Result<(), CliError>;

fn list<T: std::fmt::Debug>(v: &[T]) -> String {
    format!("{:?}", v)
}

/// Graded dimensions against C(n+3, 3), with the presentation upper bound.
pub fn dims(cfg: &RunConfig, rec: &mut Recorder, clamp: bool) -> Outcome {
    let max = cfg.degree(default_bound(&cfg.mode), clamp)?;
    if let Some((rows, ms)) = rec.attempt("dims", "graded-dimension", || graded_dims(&cfg.mode, cfg.seed, max))? {
        for r in rows {
            rec.push(
                format!("dims[n={}]", r.n),
                "graded-dimension",
                crate::report::status_of(r.pass()),
                format!("{} (upper bound {})", r.dim, r.upper),
                r.expected.to_string(),
                ms,
            );
        }
    }
    Ok(())
}

/// The defining relations, the degree-two kernel and the auxiliary relations.
pub fn relations(cfg: &RunConfig, rec: &mut Recorder) -> Outcome {
    rec.check("relations.quadratic", "quadratic-relations", || {
        relations_report(&cfg.mode)?;
        Ok((true, "all six vanish".into(), "all six vanish".into()))
    })?;
    rec.check("relations.degree-two-kernel", "degree-two-kernel", || {
        let k = degree_two_kernel();
        Ok((k.kernel_dim == 6 && k.spanned_by_relations, format!("dim {}, spanned by relations: {}", k.kernel_dim, k.spanned_by_relations), "dim 6, spanned by relations: true".into()))
    })?;
    for (k, ok) in z_relation_status(&cfg.mode).into_iter().enumerate() {
        // reference only: the resolution identities are checked directly
        let computed = if ok { "vanishes" } else { "does not vanish" };
        rec.push(format!("relations.auxiliary[{}]", k + 1), "auxiliary-relations", Status::Info, computed.into(), "vanishes".into(), 0);
    }
    Ok(())
}

/// Dimensions of the ring with inverted parameters.
pub fn opposite(cfg: &RunConfig, rec: &mut Recorder, clamp: bool) -> Outcome {
    let max = cfg.degree(default_bound(&cfg.mode), clamp)?;
    rec.check("opposite.dims", "opposite-ring", || {
        let rows = opposite_dims(&cfg.mode, cfg.seed, max)?;
        let pass = rows.iter().all(|r| r.certified && r.dim == r.dim_inverse);
        let a: Vec<usize> = rows.iter().map(|r| r.dim).collect();
        let b: Vec<usize> = rows.iter().map(|r| r.dim_inverse).collect();
        Ok((pass, format!("{} vs {}", list(&a), list(&b)), "equal and certified".into()))
    })
}

/// Syzygies of generator pairs at the degenerate value, both sides, degrees up to 4.
pub fn syzygies(rec: &mut Recorder) -> Outcome {
    let mut table = PieceTable::new(Params::<Rat>::tau_one());
    for (side, label) in [(Side::Right, "right"), (Side::Left, "left")] {
        for ((a, b), expected) in standard_syzygies::<Rat>(side) {
            let name = format!("syzygy[{},r{}r{}]", label, a + 1, b + 1);
            let reports: Vec<_> = (0..=4).map(|n| syzygy_kernel(&mut table, (&unit(a), &unit(b)), n, side, &expected)).collect();
            let pass = reports.iter().all(|r| r.matches());
            let got: Vec<usize> = reports.iter().map(|r| r.kernel_dim).collect();
            let want: Vec<usize> = reports.iter().map(|r| r.expected_dim).collect();
            rec.push(name, "syzygy-kernel", crate::report::status_of(pass), format!("kernel dims {}", list(&got)), format!("{}", list(&want)), 0);
        }
    }
    Ok(())
}

/// u v^(2n-1) t^n is not in the right ideal of the earlier witnesses, n = 2..=4.
pub fn witness(cfg: &RunConfig, rec: &mut Recorder, clamp: bool) -> Outcome {
    let max = cfg.degree(4, clamp)?.max(2);
    if let Some((rows, ms)) = rec.attempt("witness", "non-noetherian-witness", || non_noetherian_witness(max))? {
        for r in rows {
            let computed = if r.in_ideal { "in ideal" } else { "not in ideal" };
            rec.push(format!("witness[n={}]", r.n), "non-noetherian-witness", crate::report::status_of(!r.in_ideal), computed.into(), "not in ideal".into(), ms);
        }
    }
    Ok(())
}

/// Matrix identities, degreewise exactness and the Euler identity.
pub fn resolution(cfg: &RunConfig, rec: &mut Recorder, clamp: bool) -> Outcome {
    rec.check("resolution.identities", "resolution-identities", || {
        build_complex(&cfg.mode)?;
        Ok((true, "QP = PN = NM = 0".into(), "QP = PN = NM = 0".into()))
    })?;
    let max = cfg.degree(default_window(&cfg.mode).min(5), clamp)?;
    for n in 0..=max {
        rec.check(&format!("resolution.exact[n={}]", n), "resolution-exactness", || {
            let r = exactness_in_degree(n, &cfg.mode, cfg.seed)?;
            Ok((r.exact(), format!("homology {}", list(&r.homology)), "homology [0, 0, 0, 0, 0]".into()))
        })?;
    }
    for n in 0..=8usize {
        let e = euler_characteristic(n);
        let want = i64::from(n == 0);
        rec.push(format!("resolution.euler[n={}]", n), "euler-identity", crate::report::status_of(e == want), e.to_string(), want.to_string(), 0);
    }
    Ok(())
}

/// Ext^0 = Ext^1 = 0 and the Hilbert function of R / (R z9 + R z10).
pub fn ext(cfg: &RunConfig, rec: &mut Recorder, clamp: bool) -> Outcome {
    let max = cfg.degree(4, clamp)?;
    if let Some((rows, ms)) = rec.attempt("ext", "ext-vanishing", || ext_dimensions(max, &cfg.mode, cfg.seed))? {
        for r in rows {
            let pass = r.dims[0] == 0 && r.dims[1] == 0;
            rec.push(format!("ext.low[n={}]", r.n), "ext-vanishing", crate::report::status_of(pass), format!("Ext dims {}", list(&r.dims)), "Ext^0 = Ext^1 = 0".into(), ms);
        }
    }
    if let Some((rows, ms)) = rec.attempt("ext.quotient", "ext4-quotient", || quotient_hilbert(max, &cfg.mode, cfg.seed))? {
        for r in rows {
            let exact_value = match r.n {
                0 => Some(1),
                1 => Some(2),
                _ => None,
            };
            let pass = r.exact() && r.dim > r.n && exact_value.is_none_or(|v| v == r.dim);
            let expected = match exact_value {
                Some(v) => format!("{}", v),
                None => format!(">= {}", r.n + 1),
            };
            rec.push(format!("ext.quotient[n={}]", r.n), "ext4-quotient", crate::report::status_of(pass), format!("{} (lower bound {})", r.dim, r.lower), expected, ms);
        }
    }
    Ok(())
}

/// Orbit points up to index 12: reduction modulo theta and definedness.
pub fn orbit(cfg: &RunConfig, rec: &mut Recorder) -> Outcome {
    rec.check("orbit.reduction", "orbit-reduction", || {
        let ok = orbit_reduces_mod_theta(13);
        Ok((ok, format!("p_n = rho^n, q_n = -1 mod theta for n <= 12: {}", ok), "true".into()))
    })?;
    rec.check("orbit.defined", "orbit-defined", || {
        let count = match cfg.mode.rational_point() {
            Some((r, t)) if !cfg.mode.is_tau_one() => orbit_points(13, &r, &t)?.len(),
            _ => orbit_points(13, &MPoly::rho(), &MPoly::theta())?.len(),
        };
        Ok((count == 13, format!("{} pairs", count), "13 pairs".into()))
    })
}

/// Critical-density determinants over Z[rho, theta].
pub fn critdens(rec: &mut Recorder) -> Outcome {
    let cases: [((usize, usize), Vec<usize>); 6] = [
        ((1, 0), vec![0, 1]),
        ((1, 0), vec![0, 2]),
        ((0, 1), vec![0, 1]),
        ((0, 1), vec![1, 3]),
        ((1, 1), vec![0, 1, 2, 3]),
        ((1, 1), vec![0, 1, 2, 4]),
    ];
    for ((m, s), idx) in cases {
        rec.check(&format!("critdens[m={},s={},idx={:?}]", m, s, idx), "critical-density", || {
            let r = critdens_determinant(m, s, &idx)?;
            let pass = r.nonzero() && r.lowest_matches();
            Ok((pass, format!("nonzero: {}, lowest term certified: {}", r.nonzero(), r.lowest_matches()), "nonzero with certified lowest term".into()))
        })?;
    }
    Ok(())
}

/// Base loci of the m-th pulled back coordinate curves, m = 1..=4.
pub fn baselocus(cfg: &RunConfig, rec: &mut Recorder) -> Outcome {
    for m in 1..=4usize {
        rec.check(&format!("baselocus[m={}]", m), "base-locus", || {
            if cfg.mode.is_tau_one() {
                let r = base_locus_tau_one(m)?;
                let pass = r.local_exponent == Some(m) && r.length == 2 * m;
                return Ok((pass, format!("local ideal (a, b^{:?}), length {}", r.local_exponent, r.length), format!("local ideal (a, b^{}), length {}", m, 2 * m)));
            }
            let r = match cfg.mode.rational_point() {
                Some((rho, theta)) => check_base_locus(m, &rho, &theta)?,
                None => base_locus_check(m)?,
            };
            let pass = r.points == 2 * m && r.all_transverse() && r.length == 2 * m;
            Ok((pass, format!("{} points, transverse: {}, length {}", r.points, r.all_transverse(), r.length), format!("{} points, transverse: true, length {}", 2 * m, 2 * m)))
        })?;
    }
    Ok(())
}

/// Sheaf cohomology of the degree-n pieces: fat-point ranks for a general point,
/// the monomial description at the degenerate value.
pub fn sheaf(cfg: &RunConfig, rec: &mut Recorder) -> Outcome {
    if cfg.mode.is_tau_one() {
        for n in 0..=8usize {
            for m in 0..=4usize {
                let same = a_monomial_basis(n, m).monomials() == enumerate_products(n, m);
                rec.push(format!("sheaf.region[n={},m={}]", n, m), "monomial-region", crate::report::status_of(same), format!("closed form equals enumeration: {}", same), "true".into(), 0);
                rec.check(&format!("sheaf.cohomology[n={},m={}]", n, m), "monomial-cohomology", || {
                    let (h0, h1) = a_h0_h1(n, m)?;
                    let want = (expected_dim(n), 0);
                    Ok(((h0, h1) == want, format!("h0 = {}, h1 = {}", h0, h1), format!("h0 = {}, h1 = {}", want.0, want.1)))
                })?;
            }
        }
        return Ok(());
    }
    for n in 1..=5usize {
        for m in 0..=(5 - n) {
            rec.check(&format!("sheaf.cohomology[n={},m={}]", n, m), "fat-point-independence", || {
                let c = h0_h1(n, m, 0, 0, &cfg.mode, cfg.seed)?;
                let pass = c.independent() && c.h0 == expected_dim(n) && c.h1 == 0;
                Ok((pass, format!("rank {} of length {}, h0 = {}, h1 = {}", c.rank, c.length, c.h0, c.h1), format!("rank = length, h0 = {}, h1 = 0", expected_dim(n))))
            })?;
            rec.check(&format!("sheaf.sections[n={},m={}]", n, m), "sections-equal-ring", || {
                let r = sections_equal_ring(n, m, &cfg.mode, cfg.seed)?;
                Ok((r.equal(), format!("ring dim {}, h0 {}, basis satisfies conditions: {}", r.ring_dim, r.h0, r.all_vanish), "equal".into()))
            })?;
        }
    }
    Ok(())
}

/// Confluence of the rewriting system and its irreducible-word counts.
pub fn diamond(rec: &mut Recorder) -> Outcome {
    let sys = a_system();
    rec.check("diamond.confluence", "diamond-confluence", || {
        let resolved = sys.resolve_overlaps()?;
        Ok((true, format!("{} overlaps resolve", resolved.len()), "all overlaps resolve".into()))
    })?;
    let counts: Vec<u64> = (0..=10).map(|n| sys.irreducible_count(n)).collect();
    let want: Vec<u64> = (0..=10).map(|n| binom(n + 3, 3) as u64).collect();
    rec.push("diamond.count".into(), "irreducible-count", crate::report::status_of(counts == want), list(&counts), list(&want), 0);
    rec.check("diamond.ring-dims", "irreducible-count", || {
        let s = Sample::for_mode(&Mode::TauOne, 0, 8)?;
        let mut table = PieceTable::<Fp>::new(s.params());
        let dims: Vec<u64> = (0..=8).map(|n| table.dim(n, 0) as u64).collect();
        Ok((dims[..] == counts[..=8], list(&dims), list(&counts[..=8])))
    })
}

fn fiber_cache(cfg: &RunConfig) -> Result<CurveCache<Fp>, CliError> {
    let s = Sample::for_mode(&cfg.mode, cfg.seed, 8)?;
    Ok(CurveCache::new(&s.params()))
}

/// Fat-fiber cohomology on the grid a = -1..-4, d = 0, 1, l <= 4, n <= 5.
pub fn fibercoh(cfg: &RunConfig, rec: &mut Recorder) -> Outcome {
    let mut cache = fiber_cache(cfg)?;
    for a in (-4..=-1i64).rev() {
        for d in 0..=1i64 {
            let probe = FiberData::new(a, 0, d, 1, 1);
            let want = format!("dim {}, profile {:?}", probe.closed_dim(), probe.closed_profile());
            rec.check(&format!("fibercoh.cech[a={},d={}]", a, d), "fatfiber-cech", || {
                let mut cells = 0;
                let mut seen = Vec::new();
                let mut pass = true;
                for ell in FiberData::ell0(a)..=4 {
                    for n in FiberData::n0(a, d)..=5 {
                        let r = cech_h1_fatfiber(&mut cache, a, 0, d, ell, n)?;
                        pass &= r.matches_closed_form();
                        let item = format!("dim {}, profile {:?}", r.dim, r.profile);
                        if !seen.contains(&item) {
                            seen.push(item);
                        }
                        cells += 1;
                    }
                }
                Ok((pass, format!("{} on {} cells", seen.join("; "), cells), want.clone()))
            })?;
            rec.check(&format!("fibercoh.stabilization[a={},d={}]", a, d), "fatfiber-stabilization", || {
                let mut pass = true;
                let mut cells = 0;
                for ell in FiberData::ell0(a)..=3 {
                    for n in FiberData::n0(a, d)..=4 {
                        let r = mu_t_and_stabilization(&mut cache, a, 0, d, ell, n)?;
                        pass &= r.t_bijective && r.restriction_bijective;
                        cells += 1;
                    }
                }
                Ok((pass, format!("bijective on {} cells: {}", cells, pass), "bijective".into()))
            })?;
            rec.check(&format!("fibercoh.filtration[a={},d={}]", a, d), "point-module-filtration", || {
                let ell = FiberData::ell0(a).max(2);
                let r = filtration_pointmodules(&mut cache, a, 0, d, ell, 2)?;
                let count = r.subquotients.len();
                let pass = r.point_modules() && count == probe.closed_dim();
                Ok((pass, format!("{} subquotients, stable: {}, Hilbert function 1: {}", count, r.stable, r.point_modules()), format!("{} point modules", probe.closed_dim())))
            })?;
        }
    }
    Ok(())
}

fn ring_mode(cfg: &RunConfig) -> Mode {
    // the ring sheaves need a point with a non-degenerate orbit
    if cfg.mode.is_tau_one() {
        Mode::Generic
    } else {
        cfg.mode.clone()
    }
}

/// Pushforward lengths, the splitting of the direct image and the Leray count.
pub fn pushforward(cfg: &RunConfig, rec: &mut Recorder) -> Outcome {
    let mode = ring_mode(cfg);
    for a in (-3..=-1i64).rev() {
        for m in 0..=2usize {
            let lo = (-a - 1).max(0) as usize;
            rec.check(&format!("pushforward.r1p[a={},m={}]", a, m), "r1p-length", || {
                let mut pass = true;
                let mut totals = Vec::new();
                for n in lo..=lo + 3 {
                    let r = r1p_length(n, m, a, 0, Variant::R, &mode, cfg.seed)?;
                    let s = r1p_length(n, m, a, 0, Variant::A, &mode, cfg.seed)?;
                    pass &= r.matches_closed_form() && s.matches_closed_form() && r.total == s.total;
                    totals.push((r.total, s.total));
                }
                let closed = bcsurf::fibercoh::closed_r1p_total(m, a);
                Ok((pass, format!("(R, A) totals {}", list(&totals)), format!("{} in both variants", closed)))
            })?;
        }
    }
    for a in -2..=1i64 {
        for b in -1..=1i64 {
            for m in 0..=1usize {
                let lo = if a <= -1 { (-a) as usize } else { a as usize + 1 };
                let hi = 10usize;
                rec.check(&format!("pushforward.split[a={},b={},m={}]", a, b, m), "pushforward-split", || {
                    let mut pass = true;
                    for n in lo..=hi {
                        pass &= pushforward_split_a(n, m, a, b)?.matches_closed_form();
                    }
                    let n0 = split_n0(m, a, b, hi)?;
                    pass &= n0 < hi;
                    Ok((pass, format!("closed forms match: {}, h1 = 0 from n0 = {} through {}", pass, n0, hi), "closed forms match, h1 vanishes from n0".into()))
                })?;
                rec.check(&format!("pushforward.leray[a={},b={},m={}]", a, b, m), "leray-balance", || {
                    let mut pass = true;
                    let mut seen = Vec::new();
                    for n in lo..=8 {
                        let r = leray_balance(n, m, a, b, &mode, cfg.seed)?;
                        pass &= r.a_balances() && r.chain_holds();
                        seen.push((r.split.h1, r.h1_direct_image_r()));
                    }
                    let h1s: Vec<String> = seen.iter().map(|(x, y)| format!("{}/{}", x, y.map_or("-".to_string(), |v| v.to_string()))).collect();
                    Ok((pass, format!("h1 of direct images (monomial/ring) {}", h1s.join(" ")), "balanced, ring side bounded by monomial side".into()))
                })?;
            }
        }
    }
    Ok(())
}
