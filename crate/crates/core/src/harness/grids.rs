use num_traits::{Signed, Zero};
use rayon::prelude::*;

use super::report::Row;
use super::{Command, ExperimentConfig, DIM_ERROR_CONSTANT, FEJER_DECAY_TOL, ROOT_MODULUS_TOL};
use crate::error::{Error, Result};
use crate::global::{classical_dim_oracle, dim_main_term, fejer_hat, in_unit_interval, FejerMode, LevelData};
use crate::padic::{format_rational, int, p_power, vp, Rational, RootOfUnity};
use crate::rationality::{is_irreducible, small_rationality_ratio, weil_q_integers, weil_q_integers_with_margin};
use crate::spectrum::{mass_identity_from_slices, CentralCharacter, LocalSpectrum};
use crate::tree::{
    constant_term_central, constant_term_central_shell, constant_term_diagonal, diagonal_orbital_integral_by_segments,
    orbital_integral_gamma0, vol_gamma0, RationalMatrix, TreeContext,
};

pub(super) fn rows(cfg: &ExperimentConfig) -> Result<Vec<Row>> {
    match cfg.command {
        Command::Orbits => per_prime(cfg, orbit_rows),
        Command::MassCheck => per_prime(cfg, mass_rows),
        Command::TreeCheck => per_prime(cfg, tree_rows),
        Command::Ratios => per_prime(cfg, ratio_rows),
        Command::Weil => per_prime(cfg, weil_rows),
        Command::Dims => dim_rows(cfg),
        Command::Fejer => fejer_rows(cfg),
    }
}

fn per_prime(cfg: &ExperimentConfig, f: fn(&ExperimentConfig, u64) -> Result<Vec<Row>>) -> Result<Vec<Row>> {
    let chunks: Vec<Vec<Row>> = cfg.primes.par_iter().map(|&p| f(cfg, p)).collect::<Result<_>>()?;
    Ok(chunks.into_iter().flatten().collect())
}

fn chi_label(chi: &CentralCharacter) -> String {
    let r = chi.restriction();
    let mut s = format!("{}:{}", r.level(), r.exps().first().copied().unwrap_or(0));
    if !chi.uniformizer_value().is_one() {
        s.push_str(&format!("@{}", chi.uniformizer_value()));
    }
    s
}

fn chosen_chi(cfg: &ExperimentConfig, p: u64) -> Result<CentralCharacter> {
    match &cfg.chi {
        Some(spec) => spec.resolve(p),
        None => Ok(CentralCharacter::trivial(p)),
    }
}

fn orbit_rows(cfg: &ExperimentConfig, p: u64) -> Result<Vec<Row>> {
    let (lo, hi) = cfg.r_range;
    let spectrum = LocalSpectrum::new(p, hi)?;
    let chi = chosen_chi(cfg, p)?;
    let label = chi_label(&chi);
    Ok(spectrum
        .slices(&chi)?
        .into_iter()
        .filter(|s| s.conductor() >= lo)
        .map(|s| {
            let mass = s.total_mass();
            Row::new("orbit-slice")
                .param("p", p)
                .param("chi", label.as_str())
                .param("conductor", s.conductor())
                .param("type", s.orbit.type_tag())
                .param("parameters", s.orbit.parameters())
                .value("shape", s.shape.label())
                .pass(mass > Rational::zero())
                .value("mass", mass)
        })
        .collect())
}

fn mass_rows(cfg: &ExperimentConfig, p: u64) -> Result<Vec<Row>> {
    let (lo, hi) = cfg.r_range;
    let spectrum = LocalSpectrum::new(p, hi.max(1))?;
    let chis = match (&cfg.chi, cfg.all_chi) {
        (Some(spec), _) => vec![spec.resolve(p)?],
        (None, true) => {
            let mut out = Vec::new();
            for c in spectrum.central_characters() {
                if c.conductor()? > 2 {
                    continue;
                }
                for u in [RootOfUnity::one(), RootOfUnity::new(1, 2), RootOfUnity::new(1, 3)] {
                    out.push(CentralCharacter::new(c.restriction().clone(), u)?);
                }
            }
            out
        }
        (None, false) => vec![CentralCharacter::trivial(p)],
    };
    let mut rows = Vec::new();
    for chi in &chis {
        let slices = spectrum.slices(chi)?;
        let c = chi.conductor()?;
        for r in lo.max(c)..=hi {
            let m = mass_identity_from_slices(p, r, &slices);
            rows.push(
                Row::new("mass-identity")
                    .param("p", p)
                    .param("r", r)
                    .param("chi", chi_label(chi))
                    .value("slices", slices.iter().filter(|s| s.conductor() <= r).count() as u64)
                    .value("lhs", m.lhs)
                    .value("rhs", m.rhs)
                    .pass(m.equal),
            );
        }
    }
    Ok(rows)
}

const BALL_CAP: u64 = 300_000;

fn ball_size(p: u64, radius: u32) -> u64 {
    (1..=radius).fold((1u64, 1u64), |(total, shell), i| {
        let shell = if i == 1 { p + 1 } else { shell.saturating_mul(p) };
        (total.saturating_add(shell), shell)
    }).0
}

/// Retries `f` on growing balls until the radius suffices or the ball is too large.
fn with_radius<T>(p: u64, start: u32, f: impl Fn(&TreeContext) -> Result<T>) -> Result<T> {
    let mut radius = start.max(1);
    loop {
        let ctx = TreeContext::new(p, radius)?;
        match f(&ctx) {
            Err(Error::RadiusInsufficient { need, .. }) if ball_size(p, need.max(radius + 1)) <= BALL_CAP => {
                radius = need.max(radius + 1);
            }
            other => return other,
        }
    }
}

fn tree_rows(cfg: &ExperimentConfig, p: u64) -> Result<Vec<Row>> {
    let (lo, hi) = cfg.r_range;
    let q_inv_r = |r: u32| p_power(p, -(r as i64));
    let mut rows = Vec::new();
    for r in lo..=hi {
        let closed = constant_term_central(p, r);
        let shell = constant_term_central_shell(p, r);
        let base = |method: &'static str| Row::new("central-constant-term").param("p", p).param("r", r).param("gamma", "central").param("method", method);
        rows.push(
            base("closed-form")
                .value("value", closed.clone())
                .value("bound", q_inv_r(r))
                .value("relation", "value^2 <= bound")
                .pass(&closed * &closed <= q_inv_r(r)),
        );
        rows.push(
            base("shell-sum")
                .value("value", shell.clone())
                .value("bound", closed.clone())
                .value("relation", "value = bound")
                .pass(shell == closed),
        );
        if let Some(g) = &cfg.gamma {
            rows.extend(gamma_rows(p, r, g)?);
        }
    }
    Ok(rows)
}

fn gamma_rows(p: u64, r: u32, g: &RationalMatrix) -> Result<Vec<Row>> {
    g.require_regular_semisimple()?;
    let base = |check: &'static str, method: &'static str| {
        Row::new(check).param("p", p).param("r", r).param("gamma", g.to_string()).param("method", method)
    };
    if g.is_elliptic(p) {
        let o_k = with_radius(p, 2, |ctx| orbital_integral_gamma0(g, 0, ctx))?;
        let o_r = with_radius(p, r + 2, |ctx| orbital_integral_gamma0(g, r, ctx))?;
        let bound = int(2) * vol_gamma0(p, r) * &o_k * &o_k;
        return Ok(vec![base("elliptic-orbital-bound", "segments")
            .value("value", o_r.clone())
            .value("bound", bound.clone())
            .value("relation", "value <= bound")
            .pass(o_r <= bound)]);
    }
    if g.is_diagonal() {
        let v1 = vp(&g.a, p).finite().ok_or(Error::Singular)?;
        if vp(&g.d, p).finite() != Some(v1) {
            return Err(Error::Unsupported("diagonal entries of different valuation".into()));
        }
        let s = p_power(p, -v1);
        let t = RationalMatrix::diag(&g.a * &s, &g.d * &s)?;
        let v = vp(&(&t.a - &t.d), p).finite().expect("regular");
        let ct = constant_term_diagonal(&t, r, p)?;
        let seg = with_radius(p, v as u32 + r + 1, |ctx| diagonal_orbital_integral_by_segments(&t, r, ctx))?;
        let scaled = p_power(p, v) * &ct.value;
        return Ok(vec![
            base("diagonal-constant-term-bound", "coset")
                .value("value", ct.value.clone())
                .value("bound", ct.bound.clone())
                .value("relation", "value <= bound")
                .pass(ct.within_bound),
            base("diagonal-two-methods", "segments")
                .value("value", seg.clone())
                .value("bound", scaled.clone())
                .value("relation", "value = bound")
                .pass(seg == scaled),
        ]);
    }
    let o = with_radius(p, r + 2, |ctx| orbital_integral_gamma0(g, r, ctx))?;
    Ok(vec![base("orbital-integral", "orbital").value("value", o).value("relation", "none")])
}

fn ratio_rows(cfg: &ExperimentConfig, p: u64) -> Result<Vec<Row>> {
    let ratio = small_rationality_ratio(p, cfg.a, &CentralCharacter::trivial(p))?;
    Ok(vec![Row::new("small-rationality-ratio")
        .param("p", p)
        .param("A", cfg.a)
        .pass(in_unit_interval(&ratio))
        .value("ratio", ratio)])
}

fn weil_rows(cfg: &ExperimentConfig, q: u64) -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    for &w in &cfg.weights {
        let w = u32::try_from(w).map_err(|_| Error::Precondition(format!("weight {w} too large")))?;
        let list = weil_q_integers(q, w, cfg.max_degree)?;
        let wider = weil_q_integers_with_margin(q, w, cfg.max_degree, 1)?;
        let target = (q as f64).powf(w as f64 / 2.0);
        for x in &list {
            let dev = x.roots().iter().map(|(re, im)| (re.hypot(*im) - target).abs()).fold(0.0, f64::max);
            let coeffs: Vec<String> = x.min_poly.iter().map(i64::to_string).collect();
            rows.push(
                Row::new("weil-integer")
                    .param("q", q)
                    .param("weight", w)
                    .param("degree", x.degree() as u64)
                    .param("coefficients", coeffs.join(" "))
                    .value("trace", x.trace())
                    .value("root_modulus_dev", dev)
                    .pass(is_irreducible(&x.min_poly) && dev < ROOT_MODULUS_TOL),
            );
        }
        rows.push(
            Row::new("weil-completeness")
                .param("q", q)
                .param("weight", w)
                .param("degree", cfg.max_degree)
                .param("coefficients", "margin 1")
                .value("count", list.len() as u64)
                .value("margin_count", wider.len() as u64)
                .pass(wider == list),
        );
    }
    Ok(rows)
}

fn dim_rows(cfg: &ExperimentConfig) -> Result<Vec<Row>> {
    let grid: Vec<(u64, u64)> = (1..=cfg.n_max).flat_map(|n| cfg.weights.iter().map(move |&k| (n, k))).collect();
    grid.par_iter()
        .map(|&(n, k)| {
            let ld = LevelData::new(n, k as u32)?;
            let main = dim_main_term(&ld);
            let dim = classical_dim_oracle(&ld)?;
            let err = (&main - int(dim as i64)).abs();
            let ratio = crate::global::rational_to_f64(&err) / (n as f64).sqrt();
            Ok(Row::new("dimension-main-term")
                .param("N", n)
                .param("k", k)
                .value("main_term", main)
                .value("oracle_dim", dim)
                .value("abs_err", err)
                .value("err_over_sqrtN", ratio)
                .pass(ratio <= DIM_ERROR_CONSTANT))
        })
        .collect()
}

fn cyclotomic_text(v: &crate::global::CyclotomicValue) -> String {
    match v.as_rational() {
        Some(x) => format_rational(&x),
        None => {
            let terms: Vec<String> = v.coeffs.iter().map(format_rational).collect();
            format!("[{}] in Q(zeta_{})", terms.join(" "), v.n)
        }
    }
}

fn fejer_rows(cfg: &ExperimentConfig) -> Result<Vec<Row>> {
    let third = RootOfUnity::new(1, 3);
    let per_m: Vec<Vec<Row>> = cfg
        .m_values
        .par_iter()
        .map(|&m| {
            let mut modes: Vec<(String, FejerMode, Option<i64>)> = vec![
                ("ramified".into(), FejerMode::RamifiedTwist, Some(0)),
                ("z=0/1".into(), FejerMode::Unramified(RootOfUnity::one()), Some(1)),
            ];
            for k in 1..m {
                let z = RootOfUnity::new(k as i64, m);
                modes.push((format!("z={z}"), FejerMode::Unramified(z), Some(0)));
            }
            if m % 3 != 0 {
                modes.push((format!("z={third}"), FejerMode::Unramified(third), None));
            }
            modes
                .into_iter()
                .map(|(label, mode, expected)| {
                    let v = fejer_hat(m, mode)?;
                    let mag = v.magnitude();
                    let pass = match expected {
                        Some(e) => v.as_rational() == Some(int(e)),
                        None => mag <= 1.0,
                    };
                    Ok(Row::new("fejer-identity")
                        .param("M", m)
                        .param("mode", label)
                        .value("value", cyclotomic_text(&v))
                        .value("expected", expected.map(|e| e.to_string()).unwrap_or_else(|| "|value| <= 1".into()))
                        .value("magnitude", mag)
                        .pass(pass))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let mut rows: Vec<Row> = per_m.into_iter().flatten().collect();
    let mut ms: Vec<u64> = cfg.m_values.iter().copied().filter(|m| m % 3 != 0).collect();
    ms.sort_unstable();
    ms.dedup();
    for pair in ms.windows(2) {
        let a = fejer_hat(pair[0], FejerMode::Unramified(third))?.magnitude();
        let b = fejer_hat(pair[1], FejerMode::Unramified(third))?.magnitude();
        rows.push(
            Row::new("fejer-decay")
                .param("M", pair[1])
                .param("mode", format!("decay z={third} from M={}", pair[0]))
                .value("magnitude", b)
                .value("previous", a)
                .pass(b + FEJER_DECAY_TOL < a),
        );
    }
    Ok(rows)
}
